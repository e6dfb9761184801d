//! Partitions of unity subordinate to chain covers of a box, built from
//! polynomial smoothsteps, and the Mayer-Vietoris style gluing of
//! compatible local sections.
//!
//! Weights are piecewise polynomial along a single chosen axis (constant
//! across the others): a weight ramps between 0 and 1 across each overlap
//! with a smoothstep of configurable smoothness order `k`, so the weights
//! are `C^k`, sum to one exactly, and are supported in their cover pieces.

use crate::error::{Error, Result};
use crate::fields::domain::BoxDomain;
use crate::fields::polynomial::Polynomial;
use crate::fields::sections::SectionField;
use crate::scalar::Scalar;

/// A univariate piecewise polynomial on consecutive intervals between
/// breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly<S: Scalar> {
    /// Strictly increasing breakpoints, at least two.
    breaks: Vec<S>,
    /// `pieces[k]` is the polynomial on `[breaks[k], breaks[k+1]]`.
    pieces: Vec<Polynomial<S>>,
}

impl<S: Scalar> PiecewisePoly<S> {
    pub fn new(breaks: Vec<S>, pieces: Vec<Polynomial<S>>) -> Result<Self> {
        if breaks.len() < 2 || pieces.len() + 1 != breaks.len() {
            return Err(Error::domain("piecewise polynomial needs k+1 breakpoints for k pieces"));
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        if pieces.iter().any(|p| p.dimension() != 1) {
            return Err(Error::dimension("pieces must be univariate"));
        }
        Ok(PiecewisePoly { breaks, pieces })
    }

    pub fn eval(&self, x: &S) -> Result<S> {
        if *x < self.breaks[0] || *x > self.breaks[self.breaks.len() - 1] {
            return Err(Error::domain("evaluation point outside the supporting interval"));
        }
        // points on a breakpoint may use either side; pieces agree there by
        // the C^k construction
        let mut k = 0;
        while k + 1 < self.pieces.len() && !(x < &self.breaks[k + 1]) {
            k += 1;
        }
        self.pieces[k].eval(std::slice::from_ref(x))
    }

    /// Pointwise sum over the common refinement of breakpoints.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let lo = &self.breaks[0];
        let hi = &self.breaks[self.breaks.len() - 1];
        if other.breaks[0] != *lo || other.breaks[other.breaks.len() - 1] != *hi {
            return Err(Error::domain("piecewise sum needs a shared supporting interval"));
        }
        let mut breaks: Vec<S> = self.breaks.clone();
        for b in &other.breaks {
            if !breaks.contains(b) {
                breaks.push(b.clone());
            }
        }
        breaks.sort_by(|a, b| a.partial_cmp(b).expect("ordered scalars"));
        let mut pieces = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let mid = (w[0].clone() + w[1].clone()) / S::from_int(2);
            let a = self.piece_at(&mid)?;
            let b = other.piece_at(&mid)?;
            pieces.push(a.add(b));
        }
        PiecewisePoly::new(breaks, pieces)
    }

    fn piece_at(&self, x: &S) -> Result<&Polynomial<S>> {
        if *x < self.breaks[0] || *x > self.breaks[self.breaks.len() - 1] {
            return Err(Error::domain("point outside the supporting interval"));
        }
        let mut k = 0;
        while k + 1 < self.pieces.len() && !(x < &self.breaks[k + 1]) {
            k += 1;
        }
        Ok(&self.pieces[k])
    }

    /// True iff every piece is the same constant.
    pub fn is_constant(&self, c: &S) -> bool {
        let constant = Polynomial::constant(1, c.clone());
        self.pieces.iter().all(|p| *p == constant)
    }

    /// True iff the function vanishes identically outside `[lo, hi]`.
    pub fn vanishes_outside(&self, lo: &S, hi: &S) -> bool {
        self.breaks
            .windows(2)
            .zip(&self.pieces)
            .all(|(w, p)| (&w[0] >= lo && &w[1] <= hi) || p.is_zero())
    }

    /// Checks that consecutive pieces agree to derivative order `k` at each
    /// interior breakpoint, i.e. the function is `C^k`.
    pub fn is_ck(&self, k: usize) -> Result<bool> {
        for (j, w) in self.breaks.windows(2).enumerate().skip(1) {
            let at = &w[0];
            let mut left = self.pieces[j - 1].clone();
            let mut right = self.pieces[j].clone();
            for _ in 0..=k {
                if left.eval(std::slice::from_ref(at))? != right.eval(std::slice::from_ref(at))? {
                    return Ok(false);
                }
                left = left.partial(1)?;
                right = right.partial(1)?;
            }
        }
        Ok(true)
    }
}

/// The degree `2k+1` polynomial smoothstep on `[0,1]`: value 0 at 0, 1 at
/// 1, first `k` derivatives vanishing at both ends.
pub fn smoothstep<S: Scalar>(k: usize) -> Polynomial<S> {
    // integrate t^k (1-t)^k and normalize by the value at 1
    let t = Polynomial::<S>::var(1, 1).expect("univariate");
    let kernel = t.pow(k as u32).mul(&Polynomial::one(1).sub(&t).pow(k as u32));
    let mut integral = Polynomial::zero(1);
    for (e, c) in kernel.terms() {
        let p = e[0] + 1;
        integral = integral.add(
            &Polynomial::monomial(1, vec![p], c.clone() / S::from_int(p as i64)).expect("monomial"),
        );
    }
    let total = integral.eval(&[S::one()]).expect("eval at 1");
    integral.scale(&(S::one() / total))
}

/// A partition of unity subordinate to a chain cover of the box along one
/// axis. Cover piece `a` is the box with the chosen axis clamped to
/// `[lo_a, hi_a]`; consecutive pieces overlap and non-consecutive pieces
/// do not.
#[derive(Debug, Clone)]
pub struct PartitionOfUnity<S: Scalar> {
    domain: BoxDomain<S>,
    axis: usize,
    covers: Vec<BoxDomain<S>>,
    weights: Vec<PiecewisePoly<S>>,
    order: usize,
}

impl<S: Scalar> PartitionOfUnity<S> {
    /// Builds the smoothstep partition for intervals `[lo_a, hi_a]` along
    /// `axis`. Requirements: the first interval starts at the box edge, the
    /// last ends at it, consecutive intervals overlap in nonempty open
    /// intervals, and overlaps are pairwise disjoint.
    pub fn chain(
        domain: &BoxDomain<S>,
        axis: usize,
        intervals: &[(S, S)],
        order: usize,
    ) -> Result<Self> {
        let (a, b) = domain.interval(axis)?;
        if intervals.is_empty() {
            return Err(Error::domain("a cover needs at least one piece"));
        }
        if intervals[0].0 != a || intervals[intervals.len() - 1].1 != b {
            return Err(Error::domain("chain cover must span the full axis interval"));
        }
        for w in intervals.windows(2) {
            let (_, hi_prev) = &w[0];
            let (lo_next, _) = &w[1];
            if !(lo_next < hi_prev) {
                return Err(Error::domain("consecutive cover pieces must overlap"));
            }
        }
        for k in 0..intervals.len().saturating_sub(2) {
            if !(intervals[k].1 <= intervals[k + 2].0) {
                return Err(Error::domain("overlaps of a chain cover must be pairwise disjoint"));
            }
        }

        let step = smoothstep::<S>(order);
        // ramp_a descends from 1 to 0 across the overlap between piece a
        // and piece a+1
        let ramps: Vec<(S, S, Polynomial<S>)> = intervals
            .windows(2)
            .map(|w| {
                let lo = w[1].0.clone();
                let hi = w[0].1.clone();
                // 1 - step((x - lo)/(hi - lo))
                let width = hi.clone() - lo.clone();
                let t = Polynomial::var(1, 1)
                    .expect("univariate")
                    .sub(&Polynomial::constant(1, lo.clone()))
                    .scale(&(S::one() / width));
                let mut composed = Polynomial::zero(1);
                for (e, c) in step.terms() {
                    composed = composed.add(&t.pow(e[0]).scale(c));
                }
                (lo, hi, Polynomial::one(1).sub(&composed))
            })
            .collect();

        let full_breaks = |pieces: Vec<(S, Polynomial<S>)>| -> Result<PiecewisePoly<S>> {
            // pieces: ascending (right endpoint, polynomial on segment)
            let mut breaks = vec![a.clone()];
            let mut polys = Vec::new();
            for (end, poly) in pieces {
                breaks.push(end);
                polys.push(poly);
            }
            PiecewisePoly::new(breaks, polys)
        };

        let mut weights = Vec::with_capacity(intervals.len());
        for idx in 0..intervals.len() {
            // weight = (ascending ramp into piece idx) * (descending ramp out)
            // realized segment-by-segment between consecutive overlap edges
            let mut segments: Vec<(S, Polynomial<S>)> = Vec::new();
            let mut cursor = a.clone();
            let one = Polynomial::one(1);
            let zero = Polynomial::zero(1);
            for (r, (lo, hi, ramp)) in ramps.iter().enumerate() {
                // plateau before overlap r: only piece r is active there
                if cursor < *lo {
                    let plateau = if idx == r { one.clone() } else { zero.clone() };
                    segments.push((lo.clone(), plateau));
                }
                // across overlap r, piece r carries ramp, piece r+1 carries
                // 1 - ramp, all others vanish
                let on_overlap = if idx == r {
                    ramp.clone()
                } else if idx == r + 1 {
                    one.sub(ramp)
                } else {
                    zero.clone()
                };
                segments.push((hi.clone(), on_overlap));
                cursor = hi.clone();
            }
            // final plateau after the last overlap
            if cursor < b {
                let plateau = if idx == intervals.len() - 1 {
                    one.clone()
                } else {
                    zero.clone()
                };
                segments.push((b.clone(), plateau));
            }
            weights.push(full_breaks(segments)?);
        }

        // a single-piece cover has the constant weight 1
        if intervals.len() == 1 {
            weights = vec![PiecewisePoly::new(
                vec![a.clone(), b.clone()],
                vec![Polynomial::one(1)],
            )?];
        }

        let covers = intervals
            .iter()
            .map(|(lo, hi)| {
                let mut ivs = domain.intervals().to_vec();
                ivs[axis - 1] = (lo.clone(), hi.clone());
                BoxDomain::new(ivs)
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(PartitionOfUnity { domain: domain.clone(), axis, covers, weights, order })
    }

    pub fn domain(&self) -> &BoxDomain<S> {
        &self.domain
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn cover(&self, a: usize) -> &BoxDomain<S> {
        &self.covers[a]
    }

    pub fn covers(&self) -> &[BoxDomain<S>] {
        &self.covers
    }

    pub fn smoothness_order(&self) -> usize {
        self.order
    }

    /// Weight of piece `a` at a point of the box.
    pub fn weight_at(&self, a: usize, point: &[S]) -> Result<S> {
        self.weights[a].eval(&point[self.axis - 1])
    }

    /// Exact check that the weights sum to one everywhere.
    pub fn sums_to_one(&self) -> Result<bool> {
        let mut total = self.weights[0].clone();
        for w in &self.weights[1..] {
            total = total.add(w)?;
        }
        Ok(total.is_constant(&S::one()))
    }

    /// Exact check that each weight vanishes outside its cover piece.
    pub fn supports_contained(&self) -> Result<bool> {
        for (w, cover) in self.weights.iter().zip(&self.covers) {
            let (lo, hi) = cover.interval(self.axis)?;
            if !w.vanishes_outside(&lo, &hi) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks `C^k` smoothness of all weights at the stated order.
    pub fn is_smooth(&self) -> Result<bool> {
        for w in &self.weights {
            if !w.is_ck(self.order)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Glues compatible local sections into a global one.
///
/// Pieces must pair the covers of `pou` in order. Compatibility is checked
/// on every overlapping pair: exactly (polynomial identity) for exact
/// scalars, and by a grid sup bounded by `tol` otherwise. On the
/// polynomial backend two compatible pieces coincide as polynomials, so
/// the glued section is their common value; the weights recombine it as
/// `Σ_a u_a χ_a` (verified pointwise in the tests).
pub fn glue_sections<S: Scalar>(
    pieces: &[(BoxDomain<S>, SectionField<S>)],
    pou: &PartitionOfUnity<S>,
    tol: &S,
) -> Result<SectionField<S>> {
    if pieces.len() != pou.len() {
        return Err(Error::dimension(format!(
            "{} pieces for a {}-piece cover",
            pieces.len(),
            pou.len()
        )));
    }
    for (k, (sub, section)) in pieces.iter().enumerate() {
        if sub != pou.cover(k) {
            return Err(Error::domain(format!(
                "piece {k} carries domain {sub}, cover expects {}",
                pou.cover(k)
            )));
        }
        if section.dimension() != pou.domain().dimension() {
            return Err(Error::dimension("piece dimension mismatch"));
        }
    }
    let m = pieces[0].1.fiber_dimension();
    if pieces.iter().any(|(_, s)| s.fiber_dimension() != m) {
        return Err(Error::dimension("pieces have different fiber dimensions"));
    }

    for a in 0..pieces.len() {
        for b in (a + 1)..pieces.len() {
            let Some(overlap) = pieces[a].0.intersect(&pieces[b].0) else {
                continue;
            };
            let grid = crate::fields::domain::SamplingGrid::uniform(overlap.dimension(), 3)?;
            let points = grid.points(&overlap)?;
            let mut deviation = S::zero();
            for alpha in 1..=m {
                let diff = pieces[a].1.component(alpha)?.sub(pieces[b].1.component(alpha)?);
                let incompatible = if S::EXACT {
                    !diff.is_zero()
                } else {
                    let mut sup = S::zero();
                    for pt in &points {
                        sup = sup.max_with(diff.eval(pt)?.abs());
                    }
                    sup > *tol
                };
                if incompatible {
                    for pt in &points {
                        deviation = deviation.max_with(diff.eval(pt)?.abs());
                    }
                    deviation = deviation.max_with(diff.coefficient_sup());
                    return Err(Error::Incompatible {
                        a: a + 1,
                        b: b + 1,
                        deviation: deviation.to_string(),
                    });
                }
            }
        }
    }

    // compatible polynomial pieces over a connected chain cover are one
    // global polynomial
    SectionField::new(pou.domain().clone(), pieces[0].1.components().to_vec())
}
