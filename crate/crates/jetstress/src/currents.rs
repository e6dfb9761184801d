//! Smooth de Rham currents on a box chart, represented by polynomial
//! density forms.
//!
//! A `p`-current is stored as an `(n-p)`-form density `ω` with a side tag:
//! a left density acts by `ψ ↦ ∫ ω ∧ ψ`, a right density by
//! `ψ ↦ ∫ ψ ∧ ω`. The two representations of one functional differ by
//! `(-1)^{p(n-p)}`.
//!
//! The boundary operator is defined through `∂T(ψ) = T(dψ)`. For density
//! currents this resolves to the density `dω` with the sign
//! `(-1)^{n-p+1}` against test forms whose faces contribute nothing; the
//! box introduces face terms, so [`SmoothCurrent::boundary_full`] returns
//! the smooth part and the face term separately and their sum equals
//! `T(dψ)` for arbitrary test forms.

use crate::error::{Error, Result};
use crate::fields::{BoxDomain, FormField, MultiVectorField, Polynomial};
use crate::multiindex::{concat_sign, split_increasing, IncreasingIndex};
use crate::scalar::{from_sign, sign_pow, Scalar};
use std::collections::BTreeMap;

/// Which side the density multiplies the test form on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensitySide {
    /// `T(ψ) = ∫ ω ∧ ψ`
    Left,
    /// `T(ψ) = ∫ ψ ∧ ω`
    Right,
}

/// A test `p`-form, optionally multiplied by the boundary bump
/// `B(X) = ∏ (X^i - a_i)(b_i - X^i)` so that it vanishes on every face.
#[derive(Debug, Clone, PartialEq)]
pub struct TestForm<S: Scalar> {
    form: FormField<S>,
    compact: bool,
}

impl<S: Scalar> TestForm<S> {
    pub fn plain(form: FormField<S>) -> Self {
        TestForm { form, compact: false }
    }

    /// Multiplies every component by the boundary bump of `domain`.
    pub fn compactified(form: FormField<S>, domain: &BoxDomain<S>) -> Result<Self> {
        let bump = boundary_bump(domain)?;
        Ok(TestForm { form: form.mul_scalar_field(&bump), compact: true })
    }

    pub fn form(&self) -> &FormField<S> {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// Exact check that every component vanishes on every face of the box.
    pub fn vanishes_on_boundary(&self, domain: &BoxDomain<S>) -> Result<bool> {
        for face in domain.faces() {
            for (_, poly) in self.form.components() {
                if !poly.substitute(face.axis, &face.value)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `∏_i (X^i - a_i)(b_i - X^i)`: vanishes to first order on every face.
pub fn boundary_bump<S: Scalar>(domain: &BoxDomain<S>) -> Result<Polynomial<S>> {
    let n = domain.dimension();
    let mut bump = Polynomial::one(n);
    for i in 1..=n {
        let (a, b) = domain.interval(i)?;
        let xi = Polynomial::var(n, i)?;
        let lo = xi.sub(&Polynomial::constant(n, a));
        let hi = Polynomial::constant(n, b).sub(&xi);
        bump = bump.mul(&lo).mul(&hi);
    }
    Ok(bump)
}

/// A smooth `p`-current with polynomial density.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothCurrent<S: Scalar> {
    p: usize,
    side: DensitySide,
    density: FormField<S>,
    domain: BoxDomain<S>,
}

impl<S: Scalar> SmoothCurrent<S> {
    fn checked(p: usize, side: DensitySide, density: FormField<S>, domain: BoxDomain<S>) -> Result<Self> {
        let n = domain.dimension();
        if p > n {
            return Err(Error::domain(format!("current dimension {p} exceeds {n}")));
        }
        if density.degree() != n - p {
            return Err(Error::domain(format!(
                "a {p}-current in dimension {n} needs a degree {} density, got {}",
                n - p,
                density.degree()
            )));
        }
        Ok(SmoothCurrent { p, side, density, domain })
    }

    /// `_ωT`, acting by `ψ ↦ ∫ ω ∧ ψ`.
    pub fn from_left_density(density: FormField<S>, domain: BoxDomain<S>) -> Result<Self> {
        let p = domain.dimension() - density.degree();
        Self::checked(p, DensitySide::Left, density, domain)
    }

    /// `T_ω`, acting by `ψ ↦ ∫ ψ ∧ ω`.
    pub fn from_right_density(density: FormField<S>, domain: BoxDomain<S>) -> Result<Self> {
        let p = domain.dimension() - density.degree();
        Self::checked(p, DensitySide::Right, density, domain)
    }

    /// The `n`-current of the box itself: `T(ψ) = ∫ ψ`.
    pub fn manifold(domain: BoxDomain<S>) -> Self {
        let n = domain.dimension();
        SmoothCurrent {
            p: n,
            side: DensitySide::Left,
            density: FormField::scalar(Polynomial::one(n)),
            domain,
        }
    }

    pub fn dimension_of_current(&self) -> usize {
        self.p
    }

    pub fn side(&self) -> DensitySide {
        self.side
    }

    pub fn density(&self) -> &FormField<S> {
        &self.density
    }

    pub fn domain(&self) -> &BoxDomain<S> {
        &self.domain
    }

    pub fn scale(&self, c: &S) -> Self {
        SmoothCurrent {
            p: self.p,
            side: self.side,
            density: self.density.scale(c),
            domain: self.domain.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || self.domain != other.domain {
            return Err(Error::dimension("currents of different shape"));
        }
        let other = other.with_side(self.side);
        Ok(SmoothCurrent {
            p: self.p,
            side: self.side,
            density: self.density.add(&other.density)?,
            domain: self.domain.clone(),
        })
    }

    /// The same functional represented on the other side; densities are
    /// related by `(-1)^{p(n-p)}`.
    pub fn with_side(&self, side: DensitySide) -> Self {
        if side == self.side {
            return self.clone();
        }
        let n = self.domain.dimension();
        let sign = sign_pow::<S>(self.p * (n - self.p));
        SmoothCurrent {
            p: self.p,
            side,
            density: self.density.scale(&sign),
            domain: self.domain.clone(),
        }
    }

    pub fn to_left(&self) -> Self {
        self.with_side(DensitySide::Left)
    }

    pub fn to_right(&self) -> Self {
        self.with_side(DensitySide::Right)
    }

    /// Applies the current to a raw form.
    pub fn act_form(&self, psi: &FormField<S>) -> Result<S> {
        if psi.degree() != self.p {
            return Err(Error::domain(format!(
                "a {}-current acts on {}-forms, got degree {}",
                self.p, self.p, psi.degree()
            )));
        }
        let product = match self.side {
            DensitySide::Left => self.density.wedge(psi)?,
            DensitySide::Right => psi.wedge(&self.density)?,
        };
        product.integrate_box(&self.domain)
    }

    /// Applies the current to a test form.
    pub fn act(&self, psi: &TestForm<S>) -> Result<S> {
        self.act_form(psi.form())
    }

    /// `ω ⌟ T`: `(ω ⌟ T)(ψ) = T(ω ∧ ψ)`.
    pub fn contract_form_left(&self, omega: &FormField<S>) -> Result<Self> {
        if omega.degree() > self.p {
            return Err(Error::domain(format!(
                "cannot contract a {}-current by a degree {} form",
                self.p,
                omega.degree()
            )));
        }
        let left = self.to_left();
        Self::from_left_density(left.density.wedge(omega)?, self.domain.clone())
    }

    /// `T ⌞ ω`: `(T ⌞ ω)(ψ) = T(ψ ∧ ω)`; equals `(-1)^{pq} ω ⌟ T` for the
    /// result dimension `p` and form degree `q`.
    pub fn contract_form_right(&self, omega: &FormField<S>) -> Result<Self> {
        let q = omega.degree();
        if q > self.p {
            return Err(Error::domain(format!(
                "cannot contract a {}-current by a degree {q} form",
                self.p
            )));
        }
        let left = self.to_left();
        let p_res = self.p - q;
        let density = left.density.wedge(omega)?.scale(&sign_pow::<S>(p_res * q));
        Self::from_left_density(density, self.domain.clone())
    }

    /// `ξ ∧ T`: `(ξ ∧ T)(ψ) = T(ξ ⌟ ψ)`.
    pub fn wedge_vector_left(&self, xi: &MultiVectorField<S>) -> Result<Self> {
        self.wedge_vector_impl(xi, true)
    }

    /// `T ∧ ξ`: `(T ∧ ξ)(ψ) = T(ψ ⌞ ξ)`; equals `(-1)^{pq} ξ ∧ T`.
    pub fn wedge_vector_right(&self, xi: &MultiVectorField<S>) -> Result<Self> {
        self.wedge_vector_impl(xi, false)
    }

    fn wedge_vector_impl(&self, xi: &MultiVectorField<S>, vector_first: bool) -> Result<Self> {
        let n = self.domain.dimension();
        let q = xi.degree();
        if self.p + q > n {
            return Err(Error::domain(format!(
                "wedge of a {}-current with a degree {q} multivector overflows dimension {n}",
                self.p
            )));
        }
        let left = self.to_left();
        let rho = &left.density;
        let p_out = self.p + q;
        let mut comps: BTreeMap<IncreasingIndex, Polynomial<S>> = BTreeMap::new();
        for nu in IncreasingIndex::enumerate(n, p_out)? {
            let mut acc = Polynomial::zero(n);
            for (mu, xi_mu) in xi.components() {
                let Some((rest, extract_sign)) = split_increasing(&nu, mu) else {
                    continue;
                };
                // sign of pulling mu out of nu on the chosen side
                let side_sign = if vector_first {
                    extract_sign
                } else {
                    let swaps = mu.len() * rest.len();
                    if swaps % 2 == 0 { extract_sign } else { -extract_sign }
                };
                let rho_comp = rho.component(&rest.complement());
                if rho_comp.is_zero() {
                    continue;
                }
                let eps_rest = concat_sign(&rest.complement(), &rest);
                let term = rho_comp
                    .mul(xi_mu)
                    .scale(&(from_sign::<S>(side_sign) * from_sign::<S>(eps_rest)));
                acc = acc.add(&term);
            }
            if acc.is_zero() {
                continue;
            }
            let eps_nu = concat_sign(&nu.complement(), &nu);
            comps.insert(nu.complement(), acc.scale(&from_sign::<S>(eps_nu)));
        }
        let density = FormField::from_components(n, n - p_out, comps)?;
        Self::from_left_density(density, self.domain.clone())
    }

    /// The boundary `∂T`, a `(p-1)`-current: left density `dω` scaled by
    /// `(-1)^{n-p+1}`. Satisfies `∂T(ψ) = T(dψ)` exactly on test forms
    /// vanishing on the faces; [`Self::boundary_full`] carries the face
    /// term for all others.
    pub fn boundary(&self) -> Result<Self> {
        if self.p == 0 {
            return Err(Error::domain("a 0-current has no boundary"));
        }
        let n = self.domain.dimension();
        let left = self.to_left();
        let density = left
            .density
            .ext_derivative()?
            .scale(&sign_pow::<S>(n - self.p + 1));
        Self::from_left_density(density, self.domain.clone())
    }

    /// Splits `T(dψ)` into the smooth boundary part and the Stokes face
    /// term: returns `(∂T(ψ), face)` with
    /// `T(dψ) = ∂T(ψ) + face`, `face = (-1)^{n-p} ∫_{∂} ω ∧ ψ`.
    pub fn boundary_full(&self, psi: &FormField<S>) -> Result<(S, S)> {
        if self.p == 0 {
            return Err(Error::domain("a 0-current has no boundary"));
        }
        let n = self.domain.dimension();
        let left = self.to_left();
        let smooth = self.boundary()?.act_form(psi)?;
        let face_form = left.density.wedge(psi)?;
        let face = sign_pow::<S>(n - self.p) * face_form.integrate_boundary(&self.domain)?;
        Ok((smooth, face))
    }

    /// The exterior derivative `dT = (-1)^{n-p+1} ∂T`; for a smooth
    /// current this is the density current of `dω`.
    pub fn ext_derivative(&self) -> Result<Self> {
        let n = self.domain.dimension();
        Ok(self.boundary()?.scale(&sign_pow::<S>(n - self.p + 1)))
    }

    /// Local representation by 0-currents: `R^λ = dX^λ ⌟ R` with exact
    /// reconstruction `R(ψ) = Σ_λ R^λ(ψ_λ)`.
    pub fn rep_zero_currents(&self) -> Result<ZeroCurrentRep<S>> {
        let n = self.domain.dimension();
        let mut comps = BTreeMap::new();
        for lam in IncreasingIndex::enumerate(n, self.p)? {
            let basis = FormField::monomial(n, lam.clone(), Polynomial::one(n))?;
            comps.insert(lam, self.contract_form_left(&basis)?);
        }
        Ok(ZeroCurrentRep { p: self.p, comps })
    }

    /// Local representation by `n`-currents `R_λ̂ = ∂_λ̂ ∧ R`
    /// (or primed `R'_λ̂ = R ∧ ∂_λ̂`), with reconstruction
    /// `R(ω) = Σ_λ ε^{λ̂λ} R_λ̂(ω_λ dX)` and `Σ_λ ε^{λλ̂} R'_λ̂(ω_λ dX)`.
    pub fn rep_n_currents(&self, primed: bool) -> Result<NCurrentRep<S>> {
        let n = self.domain.dimension();
        let mut comps = BTreeMap::new();
        for hat in IncreasingIndex::enumerate(n, n - self.p)? {
            let basis = MultiVectorField::basis(n, hat.clone())?;
            let current = if primed {
                self.wedge_vector_right(&basis)?
            } else {
                self.wedge_vector_left(&basis)?
            };
            comps.insert(hat, current);
        }
        Ok(NCurrentRep { p: self.p, primed, comps })
    }
}

impl<S: Scalar> std::fmt::Display for SmoothCurrent<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = match self.side {
            DensitySide::Left => "left",
            DensitySide::Right => "right",
        };
        write!(f, "{}-current ({side}) density: {}", self.p, self.density)
    }
}

/// The family `{R^λ}` of 0-currents representing a `p`-current locally.
#[derive(Debug, Clone)]
pub struct ZeroCurrentRep<S: Scalar> {
    p: usize,
    comps: BTreeMap<IncreasingIndex, SmoothCurrent<S>>,
}

impl<S: Scalar> ZeroCurrentRep<S> {
    pub fn component(&self, lam: &IncreasingIndex) -> Option<&SmoothCurrent<S>> {
        self.comps.get(lam)
    }

    pub fn components(&self) -> impl Iterator<Item = (&IncreasingIndex, &SmoothCurrent<S>)> {
        self.comps.iter()
    }

    /// `R(ψ) = R^λ(ψ_λ)`.
    pub fn reconstruct_act(&self, psi: &FormField<S>) -> Result<S> {
        if psi.degree() != self.p {
            return Err(Error::domain("test form degree mismatch"));
        }
        let mut acc = S::zero();
        for (lam, current) in &self.comps {
            let coef = FormField::scalar(psi.component(lam));
            acc = acc + current.act_form(&coef)?;
        }
        Ok(acc)
    }
}

/// The family `{R_λ̂}` of `n`-currents representing a `p`-current locally.
#[derive(Debug, Clone)]
pub struct NCurrentRep<S: Scalar> {
    p: usize,
    primed: bool,
    comps: BTreeMap<IncreasingIndex, SmoothCurrent<S>>,
}

impl<S: Scalar> NCurrentRep<S> {
    pub fn component(&self, hat: &IncreasingIndex) -> Option<&SmoothCurrent<S>> {
        self.comps.get(hat)
    }

    pub fn components(&self) -> impl Iterator<Item = (&IncreasingIndex, &SmoothCurrent<S>)> {
        self.comps.iter()
    }

    pub fn is_primed(&self) -> bool {
        self.primed
    }

    /// `R(ω) = Σ_λ ε^{λ̂λ} R_λ̂(ω_λ dX)`, with `ε^{λλ̂}` in the primed
    /// convention.
    pub fn reconstruct_act(&self, omega: &FormField<S>) -> Result<S> {
        if omega.degree() != self.p {
            return Err(Error::domain("test form degree mismatch"));
        }
        let n = omega.dimension();
        let mut acc = S::zero();
        for (hat, current) in &self.comps {
            let lam = hat.complement();
            let eps = if self.primed {
                concat_sign(&lam, hat)
            } else {
                concat_sign(hat, &lam)
            };
            let coef = omega.component(&lam);
            if coef.is_zero() || eps == 0 {
                continue;
            }
            let top = FormField::monomial(n, IncreasingIndex::full(n), coef)?;
            acc = acc + from_sign::<S>(eps) * current.act_form(&top)?;
        }
        Ok(acc)
    }
}
