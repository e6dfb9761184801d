//! Pointwise alternating algebra over an `n`-dimensional chart: forms and
//! multivectors with components on strictly increasing indices, wedge
//! products, left/right contractions, and the degree-complementing
//! isomorphisms between `(n-p)`-forms and `Hom(p-forms, n-forms)`.
//!
//! Both contraction conventions are implemented,
//!
//! ```text
//! (eta ⌟ theta)(eta') = theta(eta ∧ eta')      left
//! (theta ⌞ eta)(eta') = theta(eta' ∧ eta)      right
//! ```
//!
//! so every sign-sensitive identity downstream can be cross-checked against
//! the relation `theta ⌞ eta = (-1)^{rp} eta ⌟ theta`.

use crate::error::{Error, Result};
use crate::multiindex::{merge_increasing, split_increasing, IncreasingIndex};
use crate::scalar::{from_sign, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// An alternating `p`-form with scalar components `ω_λ` on strictly
/// increasing `p`-indices. Missing components are zero; the zero form keeps
/// an empty component map.
#[derive(Debug, Clone, PartialEq)]
pub struct AltForm<S: Scalar> {
    n: usize,
    degree: usize,
    comps: BTreeMap<IncreasingIndex, S>,
}

/// A `p`-multivector, same storage as [`AltForm`].
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVector<S: Scalar> {
    n: usize,
    degree: usize,
    comps: BTreeMap<IncreasingIndex, S>,
}

fn validate_component(n: usize, degree: usize, idx: &IncreasingIndex) -> Result<()> {
    if idx.dimension() != n {
        return Err(Error::dimension(format!(
            "component index {idx} has dimension {}, expected {n}",
            idx.dimension()
        )));
    }
    if idx.len() != degree {
        return Err(Error::domain(format!(
            "component index {idx} has length {}, expected degree {degree}",
            idx.len()
        )));
    }
    Ok(())
}

macro_rules! graded_impl {
    ($ty:ident) => {
        impl<S: Scalar> $ty<S> {
            pub fn zero(n: usize, degree: usize) -> Self {
                $ty { n, degree, comps: BTreeMap::new() }
            }

            pub fn basis(n: usize, idx: IncreasingIndex) -> Result<Self> {
                let degree = idx.len();
                validate_component(n, degree, &idx)?;
                let mut comps = BTreeMap::new();
                comps.insert(idx, S::one());
                Ok($ty { n, degree, comps })
            }

            pub fn from_components(
                n: usize,
                degree: usize,
                comps: impl IntoIterator<Item = (IncreasingIndex, S)>,
            ) -> Result<Self> {
                let mut map = BTreeMap::new();
                for (idx, c) in comps {
                    validate_component(n, degree, &idx)?;
                    if !c.is_zero() {
                        map.insert(idx, c);
                    }
                }
                Ok($ty { n, degree, comps: map })
            }

            pub fn dimension(&self) -> usize {
                self.n
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn is_zero(&self) -> bool {
                self.comps.is_empty()
            }

            pub fn coefficient(&self, idx: &IncreasingIndex) -> S {
                self.comps.get(idx).cloned().unwrap_or_else(S::zero)
            }

            /// Components in lexicographic index order.
            pub fn components(&self) -> impl Iterator<Item = (&IncreasingIndex, &S)> {
                self.comps.iter()
            }

            pub fn scale(&self, c: &S) -> Self {
                if c.is_zero() {
                    return Self::zero(self.n, self.degree);
                }
                let comps = self
                    .comps
                    .iter()
                    .map(|(k, v)| (k.clone(), c.clone() * v.clone()))
                    .collect();
                $ty { n: self.n, degree: self.degree, comps }
            }

            pub fn neg(&self) -> Self {
                self.scale(&-S::one())
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                if self.n != other.n || self.degree != other.degree {
                    return Err(Error::dimension(format!(
                        "cannot add degree {} to degree {}",
                        self.degree, other.degree
                    )));
                }
                let mut comps = self.comps.clone();
                for (k, v) in &other.comps {
                    let entry = comps.entry(k.clone()).or_insert_with(S::zero);
                    *entry = entry.clone() + v.clone();
                }
                comps.retain(|_, v| !v.is_zero());
                Ok($ty { n: self.n, degree: self.degree, comps })
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.neg())
            }
        }

        impl<S: Scalar> fmt::Display for $ty<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (k, (idx, c)) in self.comps.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "({idx}, {c})")?;
                }
                write!(f, "]")
            }
        }
    };
}

graded_impl!(AltForm);
graded_impl!(MultiVector);

impl<S: Scalar> AltForm<S> {
    fn insert_acc(&mut self, idx: IncreasingIndex, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.comps.entry(idx).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.comps.retain(|_, v| !v.is_zero());
        }
    }
}

fn wedge_maps<S: Scalar>(
    n: usize,
    p: usize,
    q: usize,
    a: &BTreeMap<IncreasingIndex, S>,
    b: &BTreeMap<IncreasingIndex, S>,
) -> Result<BTreeMap<IncreasingIndex, S>> {
    if p + q > n {
        return Err(Error::domain(format!(
            "wedge degree {p} + {q} exceeds dimension {n}"
        )));
    }
    let mut out: BTreeMap<IncreasingIndex, S> = BTreeMap::new();
    for (la, ca) in a {
        for (mu, cb) in b {
            if let Some((idx, sign)) = merge_increasing(la, mu) {
                let term = from_sign::<S>(sign) * ca.clone() * cb.clone();
                let entry = out.entry(idx).or_insert_with(S::zero);
                *entry = entry.clone() + term;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `ω ∧ ψ`. Bilinear, associative, graded-anticommutative.
pub fn wedge<S: Scalar>(a: &AltForm<S>, b: &AltForm<S>) -> Result<AltForm<S>> {
    if a.n != b.n {
        return Err(Error::dimension("wedge operands live in different dimensions"));
    }
    Ok(AltForm {
        n: a.n,
        degree: a.degree + b.degree,
        comps: wedge_maps(a.n, a.degree, b.degree, &a.comps, &b.comps)?,
    })
}

/// `ξ ∧ η` for multivectors; same sign algebra as [`wedge`].
pub fn wedge_mv<S: Scalar>(a: &MultiVector<S>, b: &MultiVector<S>) -> Result<MultiVector<S>> {
    if a.n != b.n {
        return Err(Error::dimension("wedge operands live in different dimensions"));
    }
    Ok(MultiVector {
        n: a.n,
        degree: a.degree + b.degree,
        comps: wedge_maps(a.n, a.degree, b.degree, &a.comps, &b.comps)?,
    })
}

/// Canonical pairing `θ(η)` of a `p`-form with a `p`-vector:
/// `dX^λ(∂_μ) = δ^λ_μ`, extended bilinearly.
pub fn pair<S: Scalar>(theta: &AltForm<S>, eta: &MultiVector<S>) -> Result<S> {
    if theta.n != eta.n || theta.degree != eta.degree {
        return Err(Error::dimension(format!(
            "pairing a degree {} form with a degree {} vector",
            theta.degree, eta.degree
        )));
    }
    let mut acc = S::zero();
    for (idx, c) in &theta.comps {
        if let Some(d) = eta.comps.get(idx) {
            acc = acc + c.clone() * d.clone();
        }
    }
    Ok(acc)
}

/// Left contraction `η ⌟ θ`, defined by `(η ⌟ θ)(η') = θ(η ∧ η')`.
pub fn contract_left<S: Scalar>(eta: &MultiVector<S>, theta: &AltForm<S>) -> Result<AltForm<S>> {
    if eta.n != theta.n {
        return Err(Error::dimension("contraction operands live in different dimensions"));
    }
    if theta.degree < eta.degree {
        return Err(Error::domain(format!(
            "cannot contract a degree {} form by a degree {} vector",
            theta.degree, eta.degree
        )));
    }
    let mut out = AltForm::zero(theta.n, theta.degree - eta.degree);
    for (mu, cv) in &eta.comps {
        for (nu, cf) in &theta.comps {
            if let Some((rest, sign)) = split_increasing(nu, mu) {
                out.insert_acc(rest, from_sign::<S>(sign) * cv.clone() * cf.clone());
            }
        }
    }
    Ok(out)
}

/// Right contraction `θ ⌞ η`, defined by `(θ ⌞ η)(η') = θ(η' ∧ η)`.
pub fn contract_right<S: Scalar>(theta: &AltForm<S>, eta: &MultiVector<S>) -> Result<AltForm<S>> {
    if eta.n != theta.n {
        return Err(Error::dimension("contraction operands live in different dimensions"));
    }
    if theta.degree < eta.degree {
        return Err(Error::domain(format!(
            "cannot contract a degree {} form by a degree {} vector",
            theta.degree, eta.degree
        )));
    }
    let mut out = AltForm::zero(theta.n, theta.degree - eta.degree);
    for (mu, cv) in &eta.comps {
        for (nu, cf) in &theta.comps {
            if let Some((rest, _)) = split_increasing(nu, mu) {
                // sign of the permutation taking rest · mu to nu
                let sign = split_sign_rest_first(nu, &rest, mu);
                out.insert_acc(rest, from_sign::<S>(sign) * cv.clone() * cf.clone());
            }
        }
    }
    Ok(out)
}

fn split_sign_rest_first(nu: &IncreasingIndex, rest: &IncreasingIndex, mu: &IncreasingIndex) -> i8 {
    debug_assert_eq!(rest.len() + mu.len(), nu.len());
    match merge_increasing(rest, mu) {
        Some((merged, sign)) => {
            debug_assert_eq!(&merged, nu);
            sign
        }
        None => 0,
    }
}

/// A linear map from `p`-forms to `n`-forms represented by an `(n-p)`-form
/// wedging on a fixed side. `e_right(ω)(ψ) = ω ∧ ψ`, `e_left(ω)(ψ) = ψ ∧ ω`.
#[derive(Debug, Clone)]
pub struct FormToTopMap<S: Scalar> {
    omega: AltForm<S>,
    input_degree: usize,
    wedge_on_left: bool,
}

impl<S: Scalar> FormToTopMap<S> {
    pub fn apply(&self, psi: &AltForm<S>) -> Result<AltForm<S>> {
        if psi.degree != self.input_degree {
            return Err(Error::domain(format!(
                "map expects degree {} input, got {}",
                self.input_degree, psi.degree
            )));
        }
        if self.wedge_on_left {
            wedge(&self.omega, psi)
        } else {
            wedge(psi, &self.omega)
        }
    }
}

/// `e_⌟(ω)`: the map `ψ ↦ ω ∧ ψ` on `p`-forms, `ω` of degree `n-p`.
pub fn e_right<S: Scalar>(omega: &AltForm<S>) -> Result<FormToTopMap<S>> {
    if omega.degree > omega.n {
        return Err(Error::domain("degree exceeds dimension"));
    }
    Ok(FormToTopMap {
        omega: omega.clone(),
        input_degree: omega.n - omega.degree,
        wedge_on_left: true,
    })
}

/// `e_⌞(ω)`: the map `ψ ↦ ψ ∧ ω` on `p`-forms, `ω` of degree `n-p`.
pub fn e_left<S: Scalar>(omega: &AltForm<S>) -> Result<FormToTopMap<S>> {
    if omega.degree > omega.n {
        return Err(Error::domain("degree exceeds dimension"));
    }
    Ok(FormToTopMap {
        omega: omega.clone(),
        input_degree: omega.n - omega.degree,
        wedge_on_left: false,
    })
}

/// `C_⌞(ξ ⊗ θ) = θ ⌞ ξ` on a rank-one generator.
pub fn c_left<S: Scalar>(xi: &MultiVector<S>, theta: &AltForm<S>) -> Result<AltForm<S>> {
    contract_right(theta, xi)
}

/// `C_⌟(ξ ⊗ θ) = ξ ⌟ θ` on a rank-one generator.
pub fn c_right<S: Scalar>(xi: &MultiVector<S>, theta: &AltForm<S>) -> Result<AltForm<S>> {
    contract_left(xi, theta)
}
