//! Non-holonomic stress densities dual to iterated jets, and the one-step
//! reduction that regroups an order-`r` non-holonomic stress as a simple
//! stress over the iterated-jet bundle fiber of order `r-1`: arrays of
//! generation at most `r-1` become value slots, generation-`r` arrays
//! become gradient slots, and the order-1 balance machinery then applies
//! verbatim.

use crate::error::{Error, Result};
use crate::fields::{BoxDomain, Polynomial, SectionField};
use crate::jets::{iterate_prolong, IteratedJetField};
use crate::multiindex::{BinaryNodeIndex, MultiIndex, NonDecreasingIndex};
use crate::scalar::Scalar;
use crate::stress::{BalanceReport, StressDensity};
use std::collections::BTreeMap;

/// Components `S^{p,I_p}_α` for every array `p` with `G_p ≤ r` and every
/// full multi-index of length `popcount(p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonHolonomicStressDensity<S: Scalar> {
    order: usize,
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    comps: BTreeMap<(BinaryNodeIndex, MultiIndex, usize), Polynomial<S>>,
}

impl<S: Scalar> NonHolonomicStressDensity<S> {
    pub fn zero(order: usize, m: usize, domain: BoxDomain<S>) -> Self {
        let n = domain.dimension();
        let mut comps = BTreeMap::new();
        for node in BinaryNodeIndex::enumerate(order) {
            for idx in MultiIndex::enumerate(n, node.arity()) {
                for alpha in 1..=m {
                    comps.insert((node, idx.clone(), alpha), Polynomial::zero(n));
                }
            }
        }
        NonHolonomicStressDensity { order, n, m, domain, comps }
    }

    /// Symmetric splitting of a simple (symmetric-slot) stress: each slot
    /// `S^𝐈_α` is distributed uniformly over all `(p, I)` pairs with
    /// `sort(I) = 𝐈`, so the represented force is unchanged.
    pub fn from_simple(stress: &StressDensity<S>) -> Result<Self> {
        let order = stress.order();
        let n = stress.base_dimension();
        let mut out = Self::zero(order, stress.fiber_dimension(), stress.domain().clone());
        // number of arrays holding popcount-k multi-indices
        let arrays_of_arity = |k: usize| -> u64 {
            BinaryNodeIndex::enumerate(order)
                .into_iter()
                .filter(|p| p.arity() == k)
                .count() as u64
        };
        for ((alpha, sym), poly) in stress.components() {
            if poly.is_zero() {
                continue;
            }
            let k = sym.len();
            let share = S::one()
                / S::from_int((arrays_of_arity(k) * sym.ordering_count()) as i64);
            let shared = poly.scale(&share);
            for node in BinaryNodeIndex::enumerate(order) {
                if node.arity() != k {
                    continue;
                }
                for idx in MultiIndex::enumerate(n, k) {
                    if &idx.sorted() == sym {
                        out.comps
                            .insert((node, idx, *alpha), shared.clone());
                    }
                }
            }
        }
        Ok(out)
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

    pub fn set(
        &mut self,
        node: BinaryNodeIndex,
        idx: MultiIndex,
        alpha: usize,
        poly: Polynomial<S>,
    ) -> Result<()> {
        if node.generation() > self.order {
            return Err(Error::domain(format!(
                "array {node} has generation {} beyond order {}",
                node.generation(),
                self.order
            )));
        }
        if idx.len() != node.arity() {
            return Err(Error::domain(format!(
                "index {idx} has length {}, array {node} expects {}",
                idx.len(),
                node.arity()
            )));
        }
        if alpha == 0 || alpha > self.m {
            return Err(Error::dimension(format!("component {alpha} out of range 1..={}", self.m)));
        }
        if poly.dimension() != self.n {
            return Err(Error::dimension("slot polynomial has wrong dimension"));
        }
        self.comps.insert((node, idx, alpha), poly);
        Ok(())
    }

    pub fn component(
        &self,
        node: BinaryNodeIndex,
        idx: &MultiIndex,
        alpha: usize,
    ) -> Result<&Polynomial<S>> {
        self.comps
            .get(&(node, idx.clone(), alpha))
            .ok_or_else(|| {
                Error::domain(format!("no non-holonomic slot (p={node}, I={idx}, alpha={alpha})"))
            })
    }

    /// `F(w) = ∫ Σ_{G_p ≤ r} S^{p,I_p}_α ∂_{I_p} w^α dX`.
    pub fn force_of(&self, w: &SectionField<S>) -> Result<S> {
        if w.dimension() != self.n || w.fiber_dimension() != self.m {
            return Err(Error::dimension("section shape mismatch"));
        }
        let mut acc = Polynomial::zero(self.n);
        for ((_, idx, alpha), slot) in &self.comps {
            if slot.is_zero() {
                continue;
            }
            let deriv = w.component(*alpha)?.partial_seq(idx.entries())?;
            acc = acc.add(&slot.mul(&deriv));
        }
        acc.integrate_box(&self.domain)
    }

    /// One reduction step: regroups this order-`r` stress (`r ≥ 2`) as a
    /// simple stress over the order-`r-1` iterated-jet fiber.
    pub fn reduce(&self) -> Result<ReducedStress<S>> {
        if self.order < 2 {
            return Err(Error::domain(format!(
                "reduction needs order >= 2, got {}",
                self.order
            )));
        }
        let layout = FiberLayout::new(self.n, self.m, self.order - 1);
        let mut stress = StressDensity::zero(1, layout.len(), self.domain.clone());
        let top_bit = BinaryNodeIndex(1 << (self.order - 1));
        for (slot, (node, idx, alpha)) in layout.entries().iter().enumerate() {
            let big_alpha = slot + 1;
            stress.set(
                big_alpha,
                NonDecreasingIndex::empty(self.n),
                self.component(*node, idx, *alpha)?.clone(),
            )?;
            let child = BinaryNodeIndex(top_bit.0 + node.0);
            for j in 1..=self.n {
                let extended = idx.appended(j)?;
                stress.set(
                    big_alpha,
                    NonDecreasingIndex::new(self.n, vec![j])?,
                    self.component(child, &extended, *alpha)?.clone(),
                )?;
            }
        }
        Ok(ReducedStress { stress, layout })
    }
}

/// Enumeration of the iterated-jet fiber of order `r`: one slot per
/// `(array, multi-index, fiber component)`, arrays ascending, indices
/// row-major, fiber components innermost.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberLayout {
    n: usize,
    m: usize,
    order: usize,
    entries: Vec<(BinaryNodeIndex, MultiIndex, usize)>,
}

impl FiberLayout {
    pub fn new(n: usize, m: usize, order: usize) -> Self {
        let mut entries = Vec::new();
        for node in BinaryNodeIndex::enumerate(order) {
            for idx in MultiIndex::enumerate(n, node.arity()) {
                for alpha in 1..=m {
                    entries.push((node, idx.clone(), alpha));
                }
            }
        }
        FiberLayout { n, m, order, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[(BinaryNodeIndex, MultiIndex, usize)] {
        &self.entries
    }

    /// Flattens an iterated jet field into a section over the big fiber.
    pub fn flatten<S: Scalar>(&self, jet: &IteratedJetField<S>) -> Result<SectionField<S>> {
        if jet.order() != self.order || jet.base_dimension() != self.n || jet.fiber_dimension() != self.m
        {
            return Err(Error::dimension("iterated jet does not match the fiber layout"));
        }
        let comps = self
            .entries
            .iter()
            .map(|(node, idx, alpha)| jet.entry(*node, *alpha, idx).cloned())
            .collect::<Result<Vec<_>>>()?;
        SectionField::new(jet.domain().clone(), comps)
    }
}

/// A non-holonomic stress regrouped as a simple stress over the
/// order-`r-1` iterated-jet fiber.
#[derive(Debug, Clone)]
pub struct ReducedStress<S: Scalar> {
    stress: StressDensity<S>,
    layout: FiberLayout,
}

impl<S: Scalar> ReducedStress<S> {
    pub fn stress(&self) -> &StressDensity<S> {
        &self.stress
    }

    pub fn layout(&self) -> &FiberLayout {
        &self.layout
    }

    /// The represented force: the simple-stress power of `ĵ^{r-1} w`.
    pub fn force_of(&self, w: &SectionField<S>) -> Result<S> {
        let jet = iterate_prolong(w, self.layout.order())?;
        self.stress.force_of(&self.layout.flatten(&jet)?)
    }

    /// The order-1 balance report evaluated on `ĵ^{r-1} w`: hyper body
    /// force and hyper traction against the prolonged section.
    pub fn balance_check(&self, w: &SectionField<S>) -> Result<BalanceReport<S>> {
        let jet = iterate_prolong(w, self.layout.order())?;
        self.stress.balance_check(&self.layout.flatten(&jet)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn x(n: usize, i: usize) -> Polynomial<Rat> {
        Polynomial::var(n, i).unwrap()
    }

    fn mi(n: usize, e: &[usize]) -> MultiIndex {
        MultiIndex::new(n, e.to_vec()).unwrap()
    }

    fn nd(n: usize, e: &[usize]) -> NonDecreasingIndex {
        NonDecreasingIndex::new(n, e.to_vec()).unwrap()
    }

    fn sample_nh(order: usize) -> NonHolonomicStressDensity<Rat> {
        let b = BoxDomain::unit(2);
        let mut s = NonHolonomicStressDensity::zero(order, 1, b);
        let mut tick = 0i64;
        for node in BinaryNodeIndex::enumerate(order) {
            for idx in MultiIndex::enumerate(2, node.arity()) {
                tick += 1;
                let poly = x(2, 1)
                    .pow((tick % 3) as u32)
                    .mul(&x(2, 2).pow((tick % 2) as u32))
                    .scale(&Rat::from_int(tick % 5 - 2));
                s.set(node, idx, 1, poly).unwrap();
            }
        }
        s
    }

    #[test]
    fn base_array_only_reduces_to_order_zero_case() {
        let b = BoxDomain::unit(2);
        let mut s = NonHolonomicStressDensity::zero(1, 1, b.clone());
        s.set(BinaryNodeIndex(0), mi(2, &[]), 1, x(2, 1)).unwrap();
        let w = SectionField::new(b, vec![x(2, 2).pow(2)]).unwrap();
        // only the value slot contributes: ∫ X1 X2^2 = 1/6
        assert_eq!(s.force_of(&w).unwrap(), Rat::from_ratio(1, 6));
    }

    #[test]
    fn zero_stress_zero_everything() {
        let b = BoxDomain::unit(2);
        let s = NonHolonomicStressDensity::<Rat>::zero(2, 1, b.clone());
        let w = SectionField::new(b, vec![x(2, 1)]).unwrap();
        assert_eq!(s.force_of(&w).unwrap(), Rat::from_int(0));
        let reduced = s.reduce().unwrap();
        assert_eq!(reduced.force_of(&w).unwrap(), Rat::from_int(0));
        let report = reduced.balance_check(&w).unwrap();
        assert_eq!(report.lhs, Rat::from_int(0));
        assert_eq!(report.residual, Rat::from_int(0));
    }

    #[test]
    fn symmetric_splitting_preserves_force() {
        let b = BoxDomain::unit(2);
        let mut simple = StressDensity::zero(2, 2, b.clone());
        simple.set(1, nd(2, &[]), x(2, 1)).unwrap();
        simple.set(1, nd(2, &[1, 2]), x(2, 2).pow(2)).unwrap();
        simple.set(2, nd(2, &[1, 1]), x(2, 1).mul(&x(2, 2))).unwrap();
        simple.set(2, nd(2, &[2]), Polynomial::one(2)).unwrap();
        let nh = NonHolonomicStressDensity::from_simple(&simple).unwrap();
        for seed in 0..4i64 {
            let w = SectionField::new(
                b.clone(),
                vec![
                    x(2, 1).pow((seed % 3) as u32 + 1).mul(&x(2, 2)),
                    x(2, 2).pow(3).scale(&Rat::from_int(seed % 3 - 1)),
                ],
            )
            .unwrap();
            assert_eq!(nh.force_of(&w).unwrap(), simple.force_of(&w).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn reduction_preserves_force_orders_two_and_three() {
        for order in [2usize, 3] {
            let s = sample_nh(order);
            let reduced = s.reduce().unwrap();
            let b = BoxDomain::unit(2);
            for seed in 0..4i64 {
                let w = SectionField::new(
                    b.clone(),
                    vec![x(2, 1)
                        .pow((seed % 2) as u32 + 1)
                        .mul(&x(2, 2).pow(2))
                        .add(&x(2, 2).scale(&Rat::from_int(seed)))],
                )
                .unwrap();
                assert_eq!(
                    reduced.force_of(&w).unwrap(),
                    s.force_of(&w).unwrap(),
                    "order {order} seed {seed}"
                );
            }
        }
    }

    #[test]
    fn reduced_balance_residual_vanishes() {
        for order in [2usize, 3] {
            let s = sample_nh(order);
            let reduced = s.reduce().unwrap();
            let w = SectionField::new(
                BoxDomain::unit(2),
                vec![x(2, 1).pow(2).mul(&x(2, 2)).add(&x(2, 1))],
            )
            .unwrap();
            let report = reduced.balance_check(&w).unwrap();
            assert_eq!(report.residual, Rat::from_int(0), "order {order}");
            assert_eq!(report.lhs, s.force_of(&w).unwrap(), "order {order}");
        }
    }

    #[test]
    fn reduction_rejects_low_order() {
        let s = NonHolonomicStressDensity::<Rat>::zero(1, 1, BoxDomain::unit(2));
        assert!(s.reduce().is_err());
    }

    #[test]
    fn identity_regrouping_for_first_generation_support() {
        // order 2 stress supported on arrays 0 and 1 only: regrouping is
        // the identity on those slots
        let b = BoxDomain::unit(2);
        let mut s = NonHolonomicStressDensity::zero(2, 1, b.clone());
        s.set(BinaryNodeIndex(0), mi(2, &[]), 1, x(2, 1)).unwrap();
        s.set(BinaryNodeIndex(1), mi(2, &[1]), 1, x(2, 2)).unwrap();
        s.set(BinaryNodeIndex(1), mi(2, &[2]), 1, Polynomial::one(2)).unwrap();
        let reduced = s.reduce().unwrap();
        // fiber layout of order 1 over (n=2, m=1): slots (0,()), (1,(1)), (1,(2))
        assert_eq!(reduced.layout().len(), 3);
        let w = SectionField::new(b, vec![x(2, 1).mul(&x(2, 2))]).unwrap();
        assert_eq!(reduced.force_of(&w).unwrap(), s.force_of(&w).unwrap());
    }
}
