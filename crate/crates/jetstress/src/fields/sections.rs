//! Vector-bundle sections over a box chart: grid-sampled `C^r` norms,
//! norm-ball neighborhood membership, and the embedding diagnostics
//! (injectivity margin, immersion rank checks).

use crate::error::{Error, Result};
use crate::fields::domain::{BoxDomain, SamplingGrid};
use crate::fields::polynomial::Polynomial;
use crate::multiindex::NonDecreasingIndex;
use crate::scalar::Scalar;

/// A section with `m` polynomial components over a box.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionField<S: Scalar> {
    n: usize,
    m: usize,
    comps: Vec<Polynomial<S>>,
    domain: BoxDomain<S>,
}

impl<S: Scalar> SectionField<S> {
    pub fn new(domain: BoxDomain<S>, comps: Vec<Polynomial<S>>) -> Result<Self> {
        let n = domain.dimension();
        if comps.is_empty() {
            return Err(Error::dimension("a section needs at least one component"));
        }
        for p in &comps {
            if p.dimension() != n {
                return Err(Error::dimension(format!(
                    "component dimension {} does not match box dimension {n}",
                    p.dimension()
                )));
            }
        }
        Ok(SectionField { n, m: comps.len(), comps, domain })
    }

    pub fn zero(domain: BoxDomain<S>, m: usize) -> Result<Self> {
        let n = domain.dimension();
        Self::new(domain, vec![Polynomial::zero(n); m])
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn fiber_dimension(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> &BoxDomain<S> {
        &self.domain
    }

    /// Component `w^alpha`, 1-based.
    pub fn component(&self, alpha: usize) -> Result<&Polynomial<S>> {
        self.comps
            .get(alpha - 1)
            .ok_or_else(|| Error::dimension(format!("component {alpha} out of range 1..={}", self.m)))
    }

    pub fn components(&self) -> &[Polynomial<S>] {
        &self.comps
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(SectionField {
            n: self.n,
            m: self.m,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
            domain: self.domain.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        SectionField {
            n: self.n,
            m: self.m,
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
            domain: self.domain.clone(),
        }
    }

    /// The same polynomials viewed over a sub-box.
    pub fn restrict(&self, sub: &BoxDomain<S>) -> Result<Self> {
        if !self.domain.contains_box(sub) {
            return Err(Error::domain(format!(
                "restriction target {sub} is not contained in {}",
                self.domain
            )));
        }
        Ok(SectionField {
            n: self.n,
            m: self.m,
            comps: self.comps.clone(),
            domain: sub.clone(),
        })
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m || self.domain != other.domain {
            return Err(Error::dimension(
                "sections have different domains or fiber dimensions",
            ));
        }
        Ok(())
    }

    /// Grid-sampled `C^r` norm: the sup over grid points, components, and
    /// all derivative orders `|I| <= r` of `|∂_I w^α|`.
    pub fn cr_norm(&self, r: usize, grid: &SamplingGrid) -> Result<S> {
        let points = grid.points(&self.domain)?;
        let mut sup = S::zero();
        for idx in NonDecreasingIndex::enumerate_up_to(self.n, r) {
            for comp in &self.comps {
                let deriv = comp.partial_seq(idx.entries())?;
                if deriv.is_zero() {
                    continue;
                }
                for pt in &points {
                    sup = sup.max_with(deriv.eval(pt)?.abs());
                }
            }
        }
        Ok(sup)
    }

    /// Membership of `other` in the `C^r` norm ball of radius `eps` around
    /// `self`: true iff the grid sup of every derivative gap is strictly
    /// below `eps`.
    pub fn neighborhood_contains(
        &self,
        other: &Self,
        eps: &S,
        r: usize,
        grid: &SamplingGrid,
    ) -> Result<bool> {
        self.check_compatible(other)?;
        let gap = other.sub(self)?.cr_norm(r, grid)?;
        Ok(gap < *eps)
    }

    /// Jacobian entries `∂_j w^α` as an `m x n` matrix of polynomials.
    fn jacobian(&self) -> Result<Vec<Vec<Polynomial<S>>>> {
        self.comps
            .iter()
            .map(|p| (1..=self.n).map(|j| p.partial(j)).collect())
            .collect()
    }

    /// `min over grid points and unit-vector samples of |Dκ(X)(v)|` in the
    /// max norm. The sample set is the `2n` signed basis vectors plus all
    /// max-norm-one diagonal sign vectors.
    pub fn injectivity_margin(&self, grid: &SamplingGrid) -> Result<S> {
        if self.m < self.n {
            return Err(Error::dimension(format!(
                "injectivity margin needs fiber dim {} >= base dim {}",
                self.m, self.n
            )));
        }
        let jac = self.jacobian()?;
        let samples = unit_vector_samples::<S>(self.n);
        let points = grid.points(&self.domain)?;
        let mut min: Option<S> = None;
        for pt in &points {
            let values: Vec<Vec<S>> = jac
                .iter()
                .map(|row| row.iter().map(|p| p.eval(pt)).collect::<Result<Vec<S>>>())
                .collect::<Result<_>>()?;
            for v in &samples {
                // image max norm
                let mut image_norm = S::zero();
                for row in &values {
                    let mut acc = S::zero();
                    for (a, b) in row.iter().zip(v) {
                        acc = acc + a.clone() * b.clone();
                    }
                    image_norm = image_norm.max_with(acc.abs());
                }
                min = Some(match min.take() {
                    None => image_norm,
                    Some(cur) => {
                        if image_norm < cur {
                            image_norm
                        } else {
                            cur
                        }
                    }
                });
            }
        }
        Ok(min.unwrap_or_else(S::zero))
    }

    /// True iff the Jacobian has full rank `n` at every grid point.
    pub fn is_immersion_on_grid(&self, grid: &SamplingGrid) -> Result<bool> {
        if self.m < self.n {
            return Err(Error::dimension(format!(
                "immersion check needs fiber dim {} >= base dim {}",
                self.m, self.n
            )));
        }
        let jac = self.jacobian()?;
        let points = grid.points(&self.domain)?;
        for pt in &points {
            let values: Vec<Vec<S>> = jac
                .iter()
                .map(|row| row.iter().map(|p| p.eval(pt)).collect::<Result<Vec<S>>>())
                .collect::<Result<_>>()?;
            if matrix_rank(values) < self.n {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Signed basis vectors and diagonal sign vectors, all of max norm one.
fn unit_vector_samples<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    let mut out = Vec::new();
    for i in 0..n {
        for sgn in [S::one(), -S::one()] {
            let mut v = vec![S::zero(); n];
            v[i] = sgn;
            out.push(v);
        }
    }
    for mask in 0..(1u32 << n) {
        let v: Vec<S> = (0..n)
            .map(|i| if mask & (1 << i) == 0 { S::one() } else { -S::one() })
            .collect();
        out.push(v);
    }
    out
}

/// Row-echelon rank by Gaussian elimination, exact over exact scalars.
fn matrix_rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let pivot_floor = if S::EXACT {
        S::zero()
    } else {
        S::from_ratio(1, 1_000_000_000_000)
    };
    let mut rank = 0;
    for col in 0..ncols {
        // largest pivot keeps float elimination stable; any nonzero works
        // in exact arithmetic
        let mut best: Option<(usize, S)> = None;
        for (r, row) in rows.iter().enumerate().skip(rank) {
            let mag = row[col].abs();
            if mag > pivot_floor {
                match &best {
                    Some((_, cur)) if *cur >= mag => {}
                    _ => best = Some((r, mag)),
                }
            }
        }
        let Some((pivot_row, _)) = best else { continue };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in (rank + 1)..rows.len() {
            let factor = rows[r][col].clone() / pivot.clone();
            for c in col..ncols {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
