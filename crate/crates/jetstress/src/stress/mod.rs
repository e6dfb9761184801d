//! Smooth stress densities and the simple-stress pipeline: virtual-work
//! force functionals, vertical projection, traction densities, the
//! generalized Cauchy formula on box faces, the generalized divergence,
//! the balance equation, force systems on sub-boxes, and constructive
//! witnesses for static indeterminacy.

pub mod nonholonomic;

pub use nonholonomic::{NonHolonomicStressDensity, ReducedStress};

use crate::error::{Error, Result};
use crate::fields::domain::{BoxDomain, Face};
use crate::fields::{FormField, Polynomial, SectionField};
use crate::multiindex::{IncreasingIndex, NonDecreasingIndex};
use crate::scalar::{from_sign, sign_pow, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// A smooth stress density of order `r`: polynomials `S_α` (empty index)
/// and `S^𝐈_α`, `1 ≤ |𝐈| ≤ r`, mirroring the symmetric slots of an
/// order-`r` jet field.
#[derive(Debug, Clone, PartialEq)]
pub struct StressDensity<S: Scalar> {
    order: usize,
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    comps: BTreeMap<(usize, NonDecreasingIndex), Polynomial<S>>,
}

impl<S: Scalar> StressDensity<S> {
    /// The zero stress with the full slot table allocated.
    pub fn zero(order: usize, m: usize, domain: BoxDomain<S>) -> Self {
        let n = domain.dimension();
        let mut comps = BTreeMap::new();
        for alpha in 1..=m {
            for idx in NonDecreasingIndex::enumerate_up_to(n, order) {
                comps.insert((alpha, idx), Polynomial::zero(n));
            }
        }
        StressDensity { order, n, m, domain, comps }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base_dimension(&self) -> usize {
        self.n
    }

    pub fn fiber_dimension(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> &BoxDomain<S> {
        &self.domain
    }

    pub fn set(&mut self, alpha: usize, idx: NonDecreasingIndex, poly: Polynomial<S>) -> Result<()> {
        if alpha == 0 || alpha > self.m {
            return Err(Error::dimension(format!("component {alpha} out of range 1..={}", self.m)));
        }
        if idx.len() > self.order {
            return Err(Error::domain(format!(
                "slot {idx} exceeds stress order {}",
                self.order
            )));
        }
        if poly.dimension() != self.n {
            return Err(Error::dimension("slot polynomial has wrong dimension"));
        }
        self.comps.insert((alpha, idx), poly);
        Ok(())
    }

    pub fn component(&self, alpha: usize, idx: &NonDecreasingIndex) -> Result<&Polynomial<S>> {
        self.comps
            .get(&(alpha, idx.clone()))
            .ok_or_else(|| Error::domain(format!("no stress slot (alpha={alpha}, I={idx})")))
    }

    /// `S_α`, the value slot.
    pub fn value_component(&self, alpha: usize) -> Result<&Polynomial<S>> {
        self.component(alpha, &NonDecreasingIndex::empty(self.n))
    }

    /// `S^i_α`, the first-derivative slot (order ≥ 1).
    pub fn gradient_component(&self, alpha: usize, i: usize) -> Result<&Polynomial<S>> {
        self.component(alpha, &NonDecreasingIndex::new(self.n, vec![i])?)
    }

    pub fn components(
        &self,
    ) -> impl Iterator<Item = (&(usize, NonDecreasingIndex), &Polynomial<S>)> {
        self.comps.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order || self.n != other.n || self.m != other.m || self.domain != other.domain {
            return Err(Error::dimension("stress densities of different shape"));
        }
        let comps = self
            .comps
            .iter()
            .map(|(k, p)| (k.clone(), p.add(&other.comps[k])))
            .collect();
        Ok(StressDensity { order: self.order, n: self.n, m: self.m, domain: self.domain.clone(), comps })
    }

    pub fn scale(&self, c: &S) -> Self {
        StressDensity {
            order: self.order,
            n: self.n,
            m: self.m,
            domain: self.domain.clone(),
            comps: self.comps.iter().map(|(k, p)| (k.clone(), p.scale(c))).collect(),
        }
    }

    fn check_section(&self, w: &SectionField<S>) -> Result<()> {
        if w.dimension() != self.n || w.fiber_dimension() != self.m {
            return Err(Error::dimension(format!(
                "section of shape ({}, {}) against stress of shape ({}, {})",
                w.dimension(),
                w.fiber_dimension(),
                self.n,
                self.m
            )));
        }
        Ok(())
    }

    fn require_order_one(&self) -> Result<()> {
        if self.order != 1 {
            return Err(Error::domain(format!(
                "operation needs a simple (order 1) stress, got order {}",
                self.order
            )));
        }
        Ok(())
    }

    /// The virtual-work integrand `Σ_{|𝐈|≤r} S^𝐈_α ∂_𝐈 w^α` as an `n`-form
    /// coefficient.
    pub fn power_integrand(&self, w: &SectionField<S>) -> Result<Polynomial<S>> {
        self.check_section(w)?;
        let mut acc = Polynomial::zero(self.n);
        for ((alpha, idx), slot) in &self.comps {
            if slot.is_zero() {
                continue;
            }
            let deriv = w.component(*alpha)?.partial_seq(idx.entries())?;
            acc = acc.add(&slot.mul(&deriv));
        }
        Ok(acc)
    }

    /// `F(w) = ∫ Σ S^𝐈_α ∂_𝐈 w^α dX`, the force represented by this
    /// stress through the principle of virtual work.
    pub fn force_of(&self, w: &SectionField<S>) -> Result<S> {
        self.power_integrand(w)?.integrate_box(&self.domain)
    }

    /// The induced force system: the same integrand restricted to a
    /// sub-box.
    pub fn restrict_force_system(&self, region: &BoxDomain<S>, w: &SectionField<S>) -> Result<S> {
        if !self.domain.contains_box(region) {
            return Err(Error::domain(format!(
                "sub-body {region} is not contained in {}",
                self.domain
            )));
        }
        self.power_integrand(w)?.integrate_box(region)
    }

    /// Drops the value slots, keeping the derivative part (order 1).
    pub fn vertical_projection(&self) -> Result<VerticalStress<S>> {
        self.require_order_one()?;
        let mut comps = BTreeMap::new();
        for alpha in 1..=self.m {
            for i in 1..=self.n {
                comps.insert((alpha, i), self.gradient_component(alpha, i)?.clone());
            }
        }
        Ok(VerticalStress { n: self.n, m: self.m, domain: self.domain.clone(), comps })
    }

    /// The traction density `s_{α,î} = (-1)^{n-i} S^i_α` with `î` the
    /// complement of `(i)`.
    pub fn traction_stress(&self) -> Result<TractionDensity<S>> {
        self.require_order_one()?;
        let mut comps = BTreeMap::new();
        for alpha in 1..=self.m {
            for i in 1..=self.n {
                let hat = IncreasingIndex::single(self.n, i)?.complement();
                let poly = self
                    .gradient_component(alpha, i)?
                    .scale(&sign_pow::<S>(self.n - i));
                comps.insert((alpha, hat), poly);
            }
        }
        Ok(TractionDensity { n: self.n, m: self.m, domain: self.domain.clone(), primed: false, comps })
    }

    /// The primed convention `s'_{α,î} = (-1)^{n-1} s_{α,î}`.
    pub fn traction_stress_primed(&self) -> Result<TractionDensity<S>> {
        Ok(self.traction_stress()?.primed())
    }

    /// `div S = (S^i_{α,i} - S_α) e^α ⊗ dX`, the generalized divergence.
    pub fn divergence(&self) -> Result<BodyForceDensity<S>> {
        self.require_order_one()?;
        let mut comps = Vec::with_capacity(self.m);
        for alpha in 1..=self.m {
            let mut acc = self.value_component(alpha)?.neg();
            for i in 1..=self.n {
                acc = acc.add(&self.gradient_component(alpha, i)?.partial(i)?);
            }
            comps.push(acc);
        }
        Ok(BodyForceDensity { n: self.n, m: self.m, domain: self.domain.clone(), comps })
    }

    /// The body force `b = -div S`.
    pub fn body_force(&self) -> Result<BodyForceDensity<S>> {
        Ok(self.divergence()?.neg())
    }

    /// Evaluates both sides of the balance equation
    /// `ς·j¹w = b·w + t·w` at unit test function: the stress power, the
    /// body term `∫ (S_α - S^i_{α,i}) w^α dX`, and the boundary term
    /// assembled from the surface tractions of all `2n` faces.
    pub fn balance_check(&self, w: &SectionField<S>) -> Result<BalanceReport<S>> {
        self.require_order_one()?;
        self.check_section(w)?;
        let lhs = self.force_of(w)?;
        let body = self.body_force()?.power(w)?;
        let traction = self.traction_stress()?;
        let mut boundary = S::zero();
        for face in self.domain.faces() {
            boundary = boundary + traction.surface_traction(&face)?.power(w)?;
        }
        let residual = lhs.clone() - body.clone() - boundary.clone();
        Ok(BalanceReport { lhs, body_term: body, boundary_term: boundary, residual })
    }

    /// Equality of the represented forces over a probe set; returns the
    /// verdict and the largest force gap seen.
    pub fn equivalent_on(&self, other: &Self, probes: &[SectionField<S>], tol: &S) -> Result<(bool, S)> {
        if self.order != other.order || self.n != other.n || self.m != other.m {
            return Err(Error::dimension("stress densities of different shape"));
        }
        let mut gap = S::zero();
        for w in probes {
            let d = (self.force_of(w)? - other.force_of(w)?).abs();
            gap = gap.max_with(d);
        }
        Ok((gap <= *tol, gap))
    }
}

/// The derivative-only part of a simple stress; acts on covector-valued
/// sections by `∫ S^i_α χ^α_i dX`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalStress<S: Scalar> {
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    comps: BTreeMap<(usize, usize), Polynomial<S>>,
}

impl<S: Scalar> VerticalStress<S> {
    pub fn component(&self, alpha: usize, i: usize) -> Result<&Polynomial<S>> {
        self.comps
            .get(&(alpha, i))
            .ok_or_else(|| Error::domain(format!("no vertical slot (alpha={alpha}, i={i})")))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_zero())
    }

    /// Re-projection is the identity: the stress is already vertical.
    pub fn vertical_projection(&self) -> VerticalStress<S> {
        self.clone()
    }

    /// Action on a field of covector-valued sections with components
    /// `χ^α_i`.
    pub fn act(&self, chi: &CovectorSectionField<S>) -> Result<S> {
        if chi.n != self.n || chi.m != self.m {
            return Err(Error::dimension("covector field shape mismatch"));
        }
        let mut acc = Polynomial::zero(self.n);
        for ((alpha, i), slot) in &self.comps {
            let c = chi.component(*alpha, *i)?;
            acc = acc.add(&slot.mul(c));
        }
        acc.integrate_box(&self.domain)
    }
}

/// Components `χ^α_i` of a section of `T*X ⊗ W`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovectorSectionField<S: Scalar> {
    n: usize,
    m: usize,
    comps: BTreeMap<(usize, usize), Polynomial<S>>,
}

impl<S: Scalar> CovectorSectionField<S> {
    pub fn new(n: usize, m: usize, comps: BTreeMap<(usize, usize), Polynomial<S>>) -> Self {
        CovectorSectionField { n, m, comps }
    }

    /// `du ⊗ w`, the rank-one field with components `u_{,i} w^α`.
    pub fn differential_tensor(u: &Polynomial<S>, w: &SectionField<S>) -> Result<Self> {
        let n = w.dimension();
        let m = w.fiber_dimension();
        let mut comps = BTreeMap::new();
        for alpha in 1..=m {
            for i in 1..=n {
                comps.insert((alpha, i), u.partial(i)?.mul(w.component(alpha)?));
            }
        }
        Ok(CovectorSectionField { n, m, comps })
    }

    pub fn component(&self, alpha: usize, i: usize) -> Result<&Polynomial<S>> {
        self.comps
            .get(&(alpha, i))
            .ok_or_else(|| Error::domain(format!("no covector slot (alpha={alpha}, i={i})")))
    }
}

/// The traction density `s = s_{α,î} e^α ⊗ dX^î`, with `î` strictly
/// increasing of length `n-1`; exactly `m·n` components.
#[derive(Debug, Clone, PartialEq)]
pub struct TractionDensity<S: Scalar> {
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    primed: bool,
    comps: BTreeMap<(usize, IncreasingIndex), Polynomial<S>>,
}

impl<S: Scalar> TractionDensity<S> {
    pub fn component(&self, alpha: usize, hat: &IncreasingIndex) -> Result<&Polynomial<S>> {
        self.comps
            .get(&(alpha, hat.clone()))
            .ok_or_else(|| Error::domain(format!("no traction slot (alpha={alpha}, î={hat})")))
    }

    pub fn is_primed(&self) -> bool {
        self.primed
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_zero())
    }

    pub fn component_count(&self) -> usize {
        self.comps.len()
    }

    /// Switches convention: `s'_{α,î} = (-1)^{n-1} s_{α,î}`.
    pub fn primed(&self) -> TractionDensity<S> {
        let sign = sign_pow::<S>(self.n - 1);
        TractionDensity {
            n: self.n,
            m: self.m,
            domain: self.domain.clone(),
            primed: !self.primed,
            comps: self
                .comps
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(&sign)))
                .collect(),
        }
    }

    /// `s·w = Σ_α s_{α,î} w^α dX^î`, an `(n-1)`-form field.
    pub fn dot_section(&self, w: &SectionField<S>) -> Result<FormField<S>> {
        if w.dimension() != self.n || w.fiber_dimension() != self.m {
            return Err(Error::dimension("section shape mismatch"));
        }
        let mut acc = FormField::zero(self.n, self.n - 1);
        for ((alpha, hat), poly) in &self.comps {
            let term = FormField::monomial(self.n, hat.clone(), poly.mul(w.component(*alpha)?))?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Cauchy formula on one box face: pulls back the matching component,
    /// applies the induced-orientation sign, and the factor `(-1)^{n-1}`
    /// in the unprimed convention (the primed density absorbs it).
    pub fn surface_traction(&self, face: &Face<S>) -> Result<SurfaceTraction<S>> {
        if face.axis == 0 || face.axis > self.n {
            return Err(Error::domain(format!("face axis {} out of range", face.axis)));
        }
        let expected = self.domain.face(face.axis, face.end)?;
        if expected != *face {
            return Err(Error::domain(format!("face {face} is not a face of {}", self.domain)));
        }
        let tangent = IncreasingIndex::single(self.n, face.axis)?.complement();
        let convention = if self.primed { S::one() } else { sign_pow::<S>(self.n - 1) };
        let orient = from_sign::<S>(face.orientation_sign());
        let factor = convention * orient;
        let comps = (1..=self.m)
            .map(|alpha| {
                self.component(alpha, &tangent)?
                    .eliminate_axis(face.axis, &face.value)
                    .map(|p| p.scale(&factor))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceTraction {
            face: face.clone(),
            face_domain: self.domain.face_domain(face.axis)?,
            comps,
        })
    }
}

/// The surface traction `𝐭` on one face: per-component `(n-1)`-form
/// densities in the face chart.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceTraction<S: Scalar> {
    face: Face<S>,
    face_domain: BoxDomain<S>,
    comps: Vec<Polynomial<S>>,
}

impl<S: Scalar> SurfaceTraction<S> {
    pub fn face(&self) -> &Face<S> {
        &self.face
    }

    pub fn component(&self, alpha: usize) -> Result<&Polynomial<S>> {
        self.comps
            .get(alpha - 1)
            .ok_or_else(|| Error::dimension(format!("component {alpha} out of range")))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    /// `∫_face 𝐭·w`: the boundary power contributed by this face.
    pub fn power(&self, w: &SectionField<S>) -> Result<S> {
        let mut acc = Polynomial::zero(self.face_domain.dimension());
        for (alpha, t) in self.comps.iter().enumerate() {
            let restricted = w
                .component(alpha + 1)?
                .eliminate_axis(self.face.axis, &self.face.value)?;
            acc = acc.add(&t.mul(&restricted));
        }
        acc.integrate_box(&self.face_domain)
    }
}

/// A `W*`-valued `n`-form density with components `b_α`; the shape of body
/// forces and divergences.
#[derive(Debug, Clone, PartialEq)]
pub struct BodyForceDensity<S: Scalar> {
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    comps: Vec<Polynomial<S>>,
}

impl<S: Scalar> BodyForceDensity<S> {
    pub fn component(&self, alpha: usize) -> Result<&Polynomial<S>> {
        self.comps
            .get(alpha - 1)
            .ok_or_else(|| Error::dimension(format!("component {alpha} out of range")))
    }

    pub fn components(&self) -> &[Polynomial<S>] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn neg(&self) -> Self {
        BodyForceDensity {
            n: self.n,
            m: self.m,
            domain: self.domain.clone(),
            comps: self.comps.iter().map(|p| p.neg()).collect(),
        }
    }

    /// `∫ Σ_α b_α w^α dX`.
    pub fn power(&self, w: &SectionField<S>) -> Result<S> {
        if w.dimension() != self.n || w.fiber_dimension() != self.m {
            return Err(Error::dimension("section shape mismatch"));
        }
        let mut acc = Polynomial::zero(self.n);
        for (alpha, b) in self.comps.iter().enumerate() {
            acc = acc.add(&b.mul(w.component(alpha + 1)?));
        }
        acc.integrate_box(&self.domain)
    }
}

/// The two sides of the balance equation and their difference.
#[derive(Debug, Clone, PartialEq)]
pub struct BalanceReport<S: Scalar> {
    pub lhs: S,
    pub body_term: S,
    pub boundary_term: S,
    pub residual: S,
}

impl<S: Scalar> BalanceReport<S> {
    pub fn is_balanced(&self, tol: &S) -> bool {
        self.residual.abs() <= *tol
    }

    /// Aligned plain-text block.
    pub fn render(&self) -> String {
        format!(
            "lhs (stress power) : {}\nbody term          : {}\nboundary term      : {}\nresidual           : {}\n",
            self.lhs, self.body_term, self.boundary_term, self.residual
        )
    }

    /// Machine-readable key-value block.
    pub fn render_kv(&self) -> String {
        format!(
            "balance.lhs = {}\nbalance.body = {}\nbalance.boundary = {}\nbalance.residual = {}\n",
            self.lhs, self.body_term, self.boundary_term, self.residual
        )
    }
}

impl<S: Scalar> fmt::Display for BalanceReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// All monomial probe sections `X^e e_α` with total degree at most
/// `max_degree`: complete for deciding equality of polynomial stresses of
/// matching degree, a documented heuristic beyond.
pub fn default_probes<S: Scalar>(
    domain: &BoxDomain<S>,
    m: usize,
    max_degree: u32,
) -> Result<Vec<SectionField<S>>> {
    let n = domain.dimension();
    let mut exps = vec![vec![0u32; n]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for e in &exps {
            for axis in 0..n {
                let mut e2 = e.clone();
                e2[axis] += 1;
                if !next.contains(&e2) {
                    next.push(e2);
                }
            }
        }
        exps.extend(next.iter().cloned());
    }
    exps.sort();
    exps.dedup();
    let mut probes = Vec::new();
    for alpha in 1..=m {
        for e in &exps {
            let mut comps = vec![Polynomial::zero(n); m];
            comps[alpha - 1] = Polynomial::monomial(n, e.clone(), S::one())?;
            probes.push(SectionField::new(domain.clone(), comps)?);
        }
    }
    Ok(probes)
}

/// A pure-gauge order-1 increment: `S^i_α += ∂_j φ`, `S^j_α -= ∂_i φ` for
/// one axis pair and one fiber component. Divergence-free by equality of
/// mixed partials; traction-free on the boundary when `∇φ` vanishes
/// there.
pub fn gauge_increment<S: Scalar>(
    domain: &BoxDomain<S>,
    m: usize,
    alpha: usize,
    axes: (usize, usize),
    potential: &Polynomial<S>,
) -> Result<StressDensity<S>> {
    let n = domain.dimension();
    let (i, j) = axes;
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::domain(format!("invalid axis pair ({i}, {j}) in dimension {n}")));
    }
    if n < 2 {
        return Err(Error::domain("gauge increments need dimension at least 2"));
    }
    let mut out = StressDensity::zero(1, m, domain.clone());
    out.set(alpha, NonDecreasingIndex::new(n, vec![i])?, potential.partial(j)?)?;
    out.set(alpha, NonDecreasingIndex::new(n, vec![j])?, potential.partial(i)?.neg())?;
    Ok(out)
}

/// The squared boundary bump `(∏ (X^i - a_i)(b_i - X^i))^2`: vanishes to
/// second order on every face, so its gradient vanishes on the boundary.
pub fn gauge_potential<S: Scalar>(domain: &BoxDomain<S>) -> Result<Polynomial<S>> {
    let bump = crate::currents::boundary_bump(domain)?;
    Ok(bump.mul(&bump))
}
