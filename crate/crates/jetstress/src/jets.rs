//! Jet and iterated-jet prolongation of sections, the holonomic inclusion,
//! and the grid sup norms under which prolongation is an isometry.
//!
//! A jet field stores one polynomial per symmetric derivative slot
//! `(α, 𝐈)`, `|𝐈| ≤ r`. An iterated jet field stores `2^r` arrays indexed
//! by binary numbers; array `p` holds full (unordered-free) multi-indices
//! of length `popcount(p)`, row-major. Iterated prolongation is computed
//! inductively as repeated first prolongation, which keeps the inductive
//! definition and the closed-form derivative arrays independently
//! checkable.

use crate::error::{Error, Result};
use crate::fields::{BoxDomain, Polynomial, SamplingGrid, SectionField};
use crate::multiindex::{BinaryNodeIndex, MultiIndex, NonDecreasingIndex};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Coordinates `A^α_𝐈` of an order-`r` jet, symmetric storage.
#[derive(Debug, Clone, PartialEq)]
pub struct JetField<S: Scalar> {
    order: usize,
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    comps: BTreeMap<(usize, NonDecreasingIndex), Polynomial<S>>,
}

/// Arrays `y^{pα}_{I_p}` of an order-`r` iterated jet.
#[derive(Debug, Clone, PartialEq)]
pub struct IteratedJetField<S: Scalar> {
    order: usize,
    n: usize,
    m: usize,
    domain: BoxDomain<S>,
    arrays: BTreeMap<BinaryNodeIndex, BTreeMap<(usize, MultiIndex), Polynomial<S>>>,
}

impl<S: Scalar> JetField<S> {
    pub fn new(
        order: usize,
        n: usize,
        m: usize,
        domain: BoxDomain<S>,
        comps: BTreeMap<(usize, NonDecreasingIndex), Polynomial<S>>,
    ) -> Result<Self> {
        let expected: Vec<NonDecreasingIndex> = NonDecreasingIndex::enumerate_up_to(n, order);
        for alpha in 1..=m {
            for idx in &expected {
                if !comps.contains_key(&(alpha, idx.clone())) {
                    return Err(Error::domain(format!(
                        "jet field is missing slot (alpha={alpha}, I={idx})"
                    )));
                }
            }
        }
        if comps.len() != m * expected.len() {
            return Err(Error::domain("jet field carries extraneous slots"));
        }
        Ok(JetField { order, n, m, domain, comps })
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

    pub fn component(&self, alpha: usize, idx: &NonDecreasingIndex) -> Result<&Polynomial<S>> {
        self.comps
            .get(&(alpha, idx.clone()))
            .ok_or_else(|| Error::domain(format!("no jet slot (alpha={alpha}, I={idx})")))
    }

    pub fn components(
        &self,
    ) -> impl Iterator<Item = (&(usize, NonDecreasingIndex), &Polynomial<S>)> {
        self.comps.iter()
    }

    pub fn scale(&self, c: &S) -> Self {
        JetField {
            order: self.order,
            n: self.n,
            m: self.m,
            domain: self.domain.clone(),
            comps: self
                .comps
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order || self.n != other.n || self.m != other.m {
            return Err(Error::dimension("jet fields of different shapes"));
        }
        let comps = self
            .comps
            .iter()
            .map(|(k, p)| (k.clone(), p.add(&other.comps[k])))
            .collect();
        Ok(JetField {
            order: self.order,
            n: self.n,
            m: self.m,
            domain: self.domain.clone(),
            comps,
        })
    }

    /// Grid sup of all slot values: the `C^0` norm of the jet field.
    pub fn norm0(&self, grid: &SamplingGrid) -> Result<S> {
        let points = grid.points(&self.domain)?;
        let mut sup = S::zero();
        for poly in self.comps.values() {
            if poly.is_zero() {
                continue;
            }
            for pt in &points {
                sup = sup.max_with(poly.eval(pt)?.abs());
            }
        }
        Ok(sup)
    }

    /// Plain-text listing, one `(alpha, index) -> polynomial` line per slot.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for ((alpha, idx), poly) in &self.comps {
            let _ = writeln!(out, "({alpha}, {idx}) -> {poly}");
        }
        out
    }
}

impl<S: Scalar> IteratedJetField<S> {
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

    pub fn array_count(&self) -> usize {
        self.arrays.len()
    }

    pub fn array_indices(&self) -> impl Iterator<Item = &BinaryNodeIndex> {
        self.arrays.keys()
    }

    pub fn entry(&self, node: BinaryNodeIndex, alpha: usize, idx: &MultiIndex) -> Result<&Polynomial<S>> {
        self.arrays
            .get(&node)
            .and_then(|a| a.get(&(alpha, idx.clone())))
            .ok_or_else(|| {
                Error::domain(format!("no iterated-jet entry (p={node}, alpha={alpha}, I={idx})"))
            })
    }

    pub fn array(
        &self,
        node: BinaryNodeIndex,
    ) -> Result<&BTreeMap<(usize, MultiIndex), Polynomial<S>>> {
        self.arrays
            .get(&node)
            .ok_or_else(|| Error::domain(format!("no array {node}")))
    }

    /// Mutates one entry; used by tests to break holonomy deliberately.
    pub fn perturb_entry(
        &mut self,
        node: BinaryNodeIndex,
        alpha: usize,
        idx: &MultiIndex,
        delta: &S,
    ) -> Result<()> {
        let entry = self
            .arrays
            .get_mut(&node)
            .and_then(|a| a.get_mut(&(alpha, idx.clone())))
            .ok_or_else(|| Error::domain("no such iterated-jet entry"))?;
        *entry = entry.add(&Polynomial::constant(entry.dimension(), delta.clone()));
        Ok(())
    }

    /// Grid sup of all entries across all arrays.
    pub fn norm0(&self, grid: &SamplingGrid) -> Result<S> {
        let points = grid.points(&self.domain)?;
        let mut sup = S::zero();
        for array in self.arrays.values() {
            for poly in array.values() {
                if poly.is_zero() {
                    continue;
                }
                for pt in &points {
                    sup = sup.max_with(poly.eval(pt)?.abs());
                }
            }
        }
        Ok(sup)
    }

    /// True iff the arrays are the iterated derivatives of array 0:
    /// entries of equal popcount agree under index reordering and equal
    /// the corresponding derivative of the base array. Exact when `tol`
    /// is `None`, otherwise compared by grid sup.
    pub fn is_holonomic(&self, tol: Option<&S>, grid: &SamplingGrid) -> Result<bool> {
        let points = grid.points(&self.domain)?;
        let close = |diff: &Polynomial<S>| -> Result<bool> {
            match tol {
                None => Ok(diff.is_zero()),
                Some(t) => {
                    let mut sup = S::zero();
                    for pt in &points {
                        sup = sup.max_with(diff.eval(pt)?.abs());
                    }
                    Ok(sup <= *t)
                }
            }
        };
        for (node, array) in &self.arrays {
            if node.0 == 0 {
                continue;
            }
            for ((alpha, idx), poly) in array {
                let base = self.entry(BinaryNodeIndex(0), *alpha, &MultiIndex::empty(self.n))?;
                let expected = base.partial_seq(idx.entries())?;
                if !close(&poly.sub(&expected))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Plain-text listing grouped by binary array index.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (node, array) in &self.arrays {
            let _ = writeln!(out, "array {node} (generation {}):", node.generation());
            for ((alpha, idx), poly) in array {
                let _ = writeln!(out, "  ({alpha}, {idx}) -> {poly}");
            }
        }
        out
    }
}

/// `j^r w`: fills every symmetric slot with the exact derivative
/// `A^α_𝐈 = ∂_𝐈 w^α`.
pub fn prolong<S: Scalar>(w: &SectionField<S>, order: usize) -> Result<JetField<S>> {
    let n = w.dimension();
    let m = w.fiber_dimension();
    let mut comps = BTreeMap::new();
    for alpha in 1..=m {
        for idx in NonDecreasingIndex::enumerate_up_to(n, order) {
            let poly = w.component(alpha)?.partial_seq(idx.entries())?;
            comps.insert((alpha, idx), poly);
        }
    }
    JetField::new(order, n, m, w.domain().clone(), comps)
}

/// `ĵ^r w`, computed inductively as a first prolongation of `ĵ^{r-1} w`:
/// generation-`r` array `2^{r-1} + q` holds the first derivatives of
/// array `q`.
pub fn iterate_prolong<S: Scalar>(w: &SectionField<S>, order: usize) -> Result<IteratedJetField<S>> {
    let n = w.dimension();
    let m = w.fiber_dimension();
    let mut arrays: BTreeMap<BinaryNodeIndex, BTreeMap<(usize, MultiIndex), Polynomial<S>>> =
        BTreeMap::new();
    let mut base = BTreeMap::new();
    for alpha in 1..=m {
        base.insert((alpha, MultiIndex::empty(n)), w.component(alpha)?.clone());
    }
    arrays.insert(BinaryNodeIndex(0), base);
    for r in 1..=order {
        let previous: Vec<BinaryNodeIndex> = arrays.keys().cloned().collect();
        for q in previous {
            let child = q.child(r)?;
            let mut derived = BTreeMap::new();
            for ((alpha, idx), poly) in &arrays[&q] {
                for j in 1..=n {
                    derived.insert((*alpha, idx.appended(j)?), poly.partial(j)?);
                }
            }
            arrays.insert(child, derived);
        }
    }
    Ok(IteratedJetField { order, n, m, domain: w.domain().clone(), arrays })
}

/// The holonomic inclusion: fills every array of the iterated-jet shape
/// with the symmetric values `y^{pα}_I = A^α_{sort(I)}`.
pub fn include_holonomic<S: Scalar>(jet: &JetField<S>) -> Result<IteratedJetField<S>> {
    let mut arrays = BTreeMap::new();
    for node in BinaryNodeIndex::enumerate(jet.order) {
        let mut array = BTreeMap::new();
        for alpha in 1..=jet.m {
            for idx in MultiIndex::enumerate(jet.n, node.arity()) {
                let poly = jet.component(alpha, &idx.sorted())?.clone();
                array.insert((alpha, idx), poly);
            }
        }
        arrays.insert(node, array);
    }
    Ok(IteratedJetField {
        order: jet.order,
        n: jet.n,
        m: jet.m,
        domain: jet.domain.clone(),
        arrays,
    })
}
