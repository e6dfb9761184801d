//! Differential forms and multivector fields with polynomial components on
//! a box chart, the exterior derivative, and exact integration over the box
//! and over its oriented boundary.

use crate::error::{Error, Result};
use crate::exterior::AltForm;
use crate::fields::domain::{BoxDomain, Face};
use crate::fields::polynomial::Polynomial;
use crate::multiindex::{merge_increasing, IncreasingIndex};
use crate::scalar::{from_sign, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A `p`-form `ω = ω_λ dX^λ` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FormField<S: Scalar> {
    n: usize,
    degree: usize,
    comps: BTreeMap<IncreasingIndex, Polynomial<S>>,
}

impl<S: Scalar> FormField<S> {
    pub fn zero(n: usize, degree: usize) -> Self {
        FormField { n, degree, comps: BTreeMap::new() }
    }

    pub fn from_components(
        n: usize,
        degree: usize,
        comps: impl IntoIterator<Item = (IncreasingIndex, Polynomial<S>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, poly) in comps {
            if idx.dimension() != n || poly.dimension() != n {
                return Err(Error::dimension(format!(
                    "component {idx} does not live in dimension {n}"
                )));
            }
            if idx.len() != degree {
                return Err(Error::domain(format!(
                    "component index {idx} has length {}, expected {degree}",
                    idx.len()
                )));
            }
            if !poly.is_zero() {
                map.insert(idx, poly);
            }
        }
        Ok(FormField { n, degree, comps: map })
    }

    /// `u dX^λ` for a single index.
    pub fn monomial(n: usize, idx: IncreasingIndex, coef: Polynomial<S>) -> Result<Self> {
        let degree = idx.len();
        Self::from_components(n, degree, [(idx, coef)])
    }

    /// The constant volume form `dX` (degree `n`, coefficient 1).
    pub fn volume(n: usize) -> Self {
        let mut comps = BTreeMap::new();
        comps.insert(IncreasingIndex::full(n), Polynomial::one(n));
        FormField { n, degree: n, comps }
    }

    /// A 0-form from a scalar function.
    pub fn scalar(poly: Polynomial<S>) -> Self {
        let n = poly.dimension();
        let mut comps = BTreeMap::new();
        if !poly.is_zero() {
            comps.insert(IncreasingIndex::empty(n), poly);
        }
        FormField { n, degree: 0, comps }
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

    pub fn component(&self, idx: &IncreasingIndex) -> Polynomial<S> {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn components(&self) -> impl Iterator<Item = (&IncreasingIndex, &Polynomial<S>)> {
        self.comps.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.degree != other.degree {
            return Err(Error::dimension("form addition with mismatched degree"));
        }
        let mut comps = self.comps.clone();
        for (idx, p) in &other.comps {
            let entry = comps
                .entry(idx.clone())
                .or_insert_with(|| Polynomial::zero(self.n));
            *entry = entry.add(p);
        }
        comps.retain(|_, p| !p.is_zero());
        Ok(FormField { n: self.n, degree: self.degree, comps })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.degree);
        }
        FormField {
            n: self.n,
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(idx, p)| (idx.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn mul_scalar_field(&self, u: &Polynomial<S>) -> Self {
        let mut comps: BTreeMap<IncreasingIndex, Polynomial<S>> = self
            .comps
            .iter()
            .map(|(idx, p)| (idx.clone(), p.mul(u)))
            .collect();
        comps.retain(|_, p| !p.is_zero());
        FormField { n: self.n, degree: self.degree, comps }
    }

    /// `ω ∧ ψ` with polynomial coefficient products.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::dimension("wedge operands live in different dimensions"));
        }
        if self.degree + other.degree > self.n {
            return Err(Error::domain(format!(
                "wedge degree {} + {} exceeds dimension {}",
                self.degree, other.degree, self.n
            )));
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (la, pa) in &self.comps {
            for (mu, pb) in &other.comps {
                if let Some((idx, sign)) = merge_increasing(la, mu) {
                    let term = pa.mul(pb).scale(&from_sign::<S>(sign));
                    let entry = out
                        .comps
                        .entry(idx)
                        .or_insert_with(|| Polynomial::zero(self.n));
                    *entry = entry.add(&term);
                }
            }
        }
        out.comps.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Exterior derivative `dω = ∂_i ω_λ dX^i ∧ dX^λ`. The derivative of a
    /// top form is the zero form one degree up.
    pub fn ext_derivative(&self) -> Result<Self> {
        if self.degree > self.n {
            return Err(Error::domain("degree exceeds dimension"));
        }
        let mut out = Self::zero(self.n, self.degree + 1);
        if self.degree == self.n {
            return Ok(out);
        }
        for (lam, p) in &self.comps {
            for i in 1..=self.n {
                let dp = p.partial(i)?;
                if dp.is_zero() {
                    continue;
                }
                let single = IncreasingIndex::single(self.n, i)?;
                if let Some((idx, sign)) = merge_increasing(&single, lam) {
                    let term = dp.scale(&from_sign::<S>(sign));
                    let entry = out
                        .comps
                        .entry(idx)
                        .or_insert_with(|| Polynomial::zero(self.n));
                    *entry = entry.add(&term);
                }
            }
        }
        out.comps.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Pointwise value as an element of the alternating algebra.
    pub fn eval_at(&self, point: &[S]) -> Result<AltForm<S>> {
        AltForm::from_components(
            self.n,
            self.degree,
            self.comps
                .iter()
                .map(|(idx, p)| Ok((idx.clone(), p.eval(point)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Exact integral of an `n`-form over the box, standard orientation.
    pub fn integrate_box(&self, domain: &BoxDomain<S>) -> Result<S> {
        if self.degree != self.n {
            return Err(Error::domain(format!(
                "integrate_box needs a top-degree form, got degree {} in dimension {}",
                self.degree, self.n
            )));
        }
        self.component(&IncreasingIndex::full(self.n))
            .integrate_box(domain)
    }

    /// Pullback of an `(n-1)`-form to one face: keeps the component whose
    /// index avoids the face axis and freezes that coordinate.
    pub fn pull_to_face(&self, face: &Face<S>) -> Result<Polynomial<S>> {
        if self.degree + 1 != self.n {
            return Err(Error::domain(format!(
                "face pullback needs degree n-1, got {} in dimension {}",
                self.degree, self.n
            )));
        }
        let tangent = IncreasingIndex::single(self.n, face.axis)?.complement();
        self.component(&tangent).eliminate_axis(face.axis, &face.value)
    }

    /// Integral of the face pullback over one face, with the induced
    /// orientation (outward-normal-first).
    pub fn integrate_face(&self, domain: &BoxDomain<S>, face: &Face<S>) -> Result<S> {
        let restricted = self.pull_to_face(face)?;
        let face_box = domain.face_domain(face.axis)?;
        let raw = restricted.integrate_box(&face_box)?;
        Ok(from_sign::<S>(face.orientation_sign()) * raw)
    }

    /// Sum of oriented face integrals of an `(n-1)`-form over all `2n`
    /// faces. Satisfies Stokes exactly on polynomials:
    /// `integrate_boundary(ω) = integrate_box(dω)`.
    pub fn integrate_boundary(&self, domain: &BoxDomain<S>) -> Result<S> {
        let mut acc = S::zero();
        for face in domain.faces() {
            acc = acc + self.integrate_face(domain, &face)?;
        }
        Ok(acc)
    }
}

impl<S: Scalar> fmt::Display for FormField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, p)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{idx}: {p}")?;
        }
        Ok(())
    }
}

/// A multivector field with polynomial components; the wedge partner of
/// currents. Degree 0 recovers scalar functions.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVectorField<S: Scalar> {
    n: usize,
    degree: usize,
    comps: BTreeMap<IncreasingIndex, Polynomial<S>>,
}

impl<S: Scalar> MultiVectorField<S> {
    pub fn zero(n: usize, degree: usize) -> Self {
        MultiVectorField { n, degree, comps: BTreeMap::new() }
    }

    pub fn basis(n: usize, idx: IncreasingIndex) -> Result<Self> {
        if idx.dimension() != n {
            return Err(Error::dimension("basis index dimension mismatch"));
        }
        let degree = idx.len();
        let mut comps = BTreeMap::new();
        comps.insert(idx, Polynomial::one(n));
        Ok(MultiVectorField { n, degree, comps })
    }

    pub fn scalar_field(poly: Polynomial<S>) -> Self {
        let n = poly.dimension();
        let mut comps = BTreeMap::new();
        if !poly.is_zero() {
            comps.insert(IncreasingIndex::empty(n), poly);
        }
        MultiVectorField { n, degree: 0, comps }
    }

    pub fn from_components(
        n: usize,
        degree: usize,
        comps: impl IntoIterator<Item = (IncreasingIndex, Polynomial<S>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, poly) in comps {
            if idx.dimension() != n || idx.len() != degree || poly.dimension() != n {
                return Err(Error::dimension("multivector component mismatch"));
            }
            if !poly.is_zero() {
                map.insert(idx, poly);
            }
        }
        Ok(MultiVectorField { n, degree, comps: map })
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

    pub fn component(&self, idx: &IncreasingIndex) -> Polynomial<S> {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn components(&self) -> impl Iterator<Item = (&IncreasingIndex, &Polynomial<S>)> {
        self.comps.iter()
    }

    /// Left contraction `ξ ⌟ ψ` of a form field by this multivector field.
    pub fn contract_into(&self, psi: &FormField<S>) -> Result<FormField<S>> {
        if psi.degree() < self.degree {
            return Err(Error::domain(format!(
                "cannot contract a degree {} form by a degree {} multivector",
                psi.degree(),
                self.degree
            )));
        }
        let mut out = FormField::zero(self.n, psi.degree() - self.degree);
        for (mu, pv) in &self.comps {
            for (nu, pf) in psi.components() {
                if let Some((rest, sign)) = crate::multiindex::split_increasing(nu, mu) {
                    let term = pv.mul(pf).scale(&from_sign::<S>(sign));
                    let entry = out
                        .comps
                        .entry(rest)
                        .or_insert_with(|| Polynomial::zero(self.n));
                    *entry = entry.add(&term);
                }
            }
        }
        out.comps.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Right contraction `ψ ⌞ ξ`.
    pub fn contract_from(&self, psi: &FormField<S>) -> Result<FormField<S>> {
        if psi.degree() < self.degree {
            return Err(Error::domain(format!(
                "cannot contract a degree {} form by a degree {} multivector",
                psi.degree(),
                self.degree
            )));
        }
        let mut out = FormField::zero(self.n, psi.degree() - self.degree);
        for (mu, pv) in &self.comps {
            for (nu, pf) in psi.components() {
                if let Some((rest, _)) = crate::multiindex::split_increasing(nu, mu) {
                    let sign = match merge_increasing(&rest, mu) {
                        Some((_, s)) => s,
                        None => 0,
                    };
                    let term = pv.mul(pf).scale(&from_sign::<S>(sign));
                    let entry = out
                        .comps
                        .entry(rest)
                        .or_insert_with(|| Polynomial::zero(self.n));
                    *entry = entry.add(&term);
                }
            }
        }
        out.comps.retain(|_, p| !p.is_zero());
        Ok(out)
    }
}
