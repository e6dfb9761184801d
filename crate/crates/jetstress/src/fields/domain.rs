//! Axis-aligned box charts and sampling grids. A box is the desk-scale
//! model of a compact manifold with corners: its faces and corners are
//! exact, and polynomial integration over it is closed-form.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt;

/// Which end of an axis a face sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceEnd {
    Lo,
    Hi,
}

/// One of the `2n` faces of a box: the locus `X^axis = value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Face<S: Scalar> {
    pub axis: usize,
    pub end: FaceEnd,
    pub value: S,
}

impl<S: Scalar> Face<S> {
    /// Sign of the induced orientation relative to `dX^{axis-complement}`,
    /// outward-normal-first convention: `(-1)^{axis-1}` on the high face,
    /// `(-1)^{axis}` on the low face.
    pub fn orientation_sign(&self) -> i8 {
        let flips = match self.end {
            FaceEnd::Hi => self.axis - 1,
            FaceEnd::Lo => self.axis,
        };
        if flips % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl<S: Scalar> fmt::Display for Face<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = match self.end {
            FaceEnd::Lo => "lo",
            FaceEnd::Hi => "hi",
        };
        write!(f, "X{} = {} ({end})", self.axis, self.value)
    }
}

/// A product of closed intervals `[a_i, b_i]`, `a_i < b_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain<S: Scalar> {
    intervals: Vec<(S, S)>,
}

impl<S: Scalar> BoxDomain<S> {
    pub fn new(intervals: Vec<(S, S)>) -> Result<Self> {
        for (k, (a, b)) in intervals.iter().enumerate() {
            if !(a < b) {
                return Err(Error::domain(format!(
                    "interval {} of box is empty or reversed: [{a}, {b}]",
                    k + 1
                )));
            }
        }
        Ok(BoxDomain { intervals })
    }

    /// The unit cube `[0,1]^n`.
    pub fn unit(n: usize) -> Self {
        BoxDomain {
            intervals: (0..n).map(|_| (S::zero(), S::one())).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, axis: usize) -> Result<(S, S)> {
        self.intervals
            .get(axis - 1)
            .cloned()
            .ok_or_else(|| Error::domain(format!("axis {axis} out of range")))
    }

    pub fn intervals(&self) -> &[(S, S)] {
        &self.intervals
    }

    pub fn volume(&self) -> S {
        self.intervals
            .iter()
            .fold(S::one(), |acc, (a, b)| acc * (b.clone() - a.clone()))
    }

    pub fn face(&self, axis: usize, end: FaceEnd) -> Result<Face<S>> {
        let (a, b) = self.interval(axis)?;
        Ok(Face {
            axis,
            end,
            value: match end {
                FaceEnd::Lo => a,
                FaceEnd::Hi => b,
            },
        })
    }

    /// All `2n` faces, low before high per axis.
    pub fn faces(&self) -> Vec<Face<S>> {
        (1..=self.dimension())
            .flat_map(|axis| {
                [
                    self.face(axis, FaceEnd::Lo).unwrap(),
                    self.face(axis, FaceEnd::Hi).unwrap(),
                ]
            })
            .collect()
    }

    /// The `(n-1)`-box obtained by deleting one axis (the chart of a face).
    pub fn face_domain(&self, axis: usize) -> Result<BoxDomain<S>> {
        if axis == 0 || axis > self.dimension() {
            return Err(Error::domain(format!("axis {axis} out of range")));
        }
        let intervals = self
            .intervals
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != axis - 1)
            .map(|(_, iv)| iv.clone())
            .collect();
        Ok(BoxDomain { intervals })
    }

    pub fn contains_box(&self, other: &BoxDomain<S>) -> bool {
        self.dimension() == other.dimension()
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|((a, b), (c, d))| a <= c && d <= b)
    }

    /// Intersection, or `None` when the boxes do not overlap in a box with
    /// nonempty interior.
    pub fn intersect(&self, other: &BoxDomain<S>) -> Option<BoxDomain<S>> {
        if self.dimension() != other.dimension() {
            return None;
        }
        let mut intervals = Vec::with_capacity(self.dimension());
        for ((a, b), (c, d)) in self.intervals.iter().zip(&other.intervals) {
            let lo = if a < c { c.clone() } else { a.clone() };
            let hi = if b < d { b.clone() } else { d.clone() };
            if !(lo < hi) {
                return None;
            }
            intervals.push((lo, hi));
        }
        Some(BoxDomain { intervals })
    }
}

impl<S: Scalar> fmt::Display for BoxDomain<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b)) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "[{a},{b}]")?;
        }
        Ok(())
    }
}

/// Tensor lattice of evaluation points inside a box; at least two points
/// per axis, always including the corners.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    per_axis: Vec<usize>,
}

impl SamplingGrid {
    pub fn new(per_axis: Vec<usize>) -> Result<Self> {
        if per_axis.iter().any(|&c| c < 2) {
            return Err(Error::domain("sampling grid needs at least 2 points per axis"));
        }
        Ok(SamplingGrid { per_axis })
    }

    /// The same count on every axis.
    pub fn uniform(n: usize, count: usize) -> Result<Self> {
        Self::new(vec![count; n])
    }

    pub fn dimension(&self) -> usize {
        self.per_axis.len()
    }

    /// All lattice points of the box, row-major.
    pub fn points<S: Scalar>(&self, domain: &BoxDomain<S>) -> Result<Vec<Vec<S>>> {
        if domain.dimension() != self.dimension() {
            return Err(Error::dimension(format!(
                "grid dimension {} does not match box dimension {}",
                self.dimension(),
                domain.dimension()
            )));
        }
        let axes: Vec<Vec<S>> = domain
            .intervals()
            .iter()
            .zip(&self.per_axis)
            .map(|((a, b), &count)| {
                (0..count)
                    .map(|k| {
                        let t = S::from_ratio(k as i64, (count - 1) as i64);
                        a.clone() + (b.clone() - a.clone()) * t
                    })
                    .collect()
            })
            .collect();
        let mut out = vec![Vec::new()];
        for axis in axes {
            let mut next = Vec::with_capacity(out.len() * axis.len());
            for prefix in &out {
                for v in &axis {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn box_validation_and_volume() {
        assert!(BoxDomain::new(vec![(Rat::from_int(1), Rat::from_int(1))]).is_err());
        let b = BoxDomain::new(vec![
            (Rat::from_int(0), Rat::from_int(2)),
            (Rat::from_int(-1), Rat::from_int(1)),
        ])
        .unwrap();
        assert_eq!(b.volume(), Rat::from_int(4));
        assert_eq!(b.to_string(), "[0,2]x[-1,1]");
    }

    #[test]
    fn orientation_signs() {
        let b: BoxDomain<Rat> = BoxDomain::unit(2);
        assert_eq!(b.face(1, FaceEnd::Hi).unwrap().orientation_sign(), 1);
        assert_eq!(b.face(1, FaceEnd::Lo).unwrap().orientation_sign(), -1);
        assert_eq!(b.face(2, FaceEnd::Hi).unwrap().orientation_sign(), -1);
        assert_eq!(b.face(2, FaceEnd::Lo).unwrap().orientation_sign(), 1);
    }

    #[test]
    fn grid_includes_corners() {
        let b: BoxDomain<Rat> = BoxDomain::unit(2);
        let grid = SamplingGrid::uniform(2, 3).unwrap();
        let pts = grid.points(&b).unwrap();
        assert_eq!(pts.len(), 9);
        assert!(pts.contains(&vec![Rat::from_int(0), Rat::from_int(0)]));
        assert!(pts.contains(&vec![Rat::from_int(1), Rat::from_int(1)]));
        assert!(pts.contains(&vec![Rat::from_ratio(1, 2), Rat::from_int(1)]));
        assert!(SamplingGrid::uniform(2, 1).is_err());
    }

    #[test]
    fn containment_and_intersection() {
        let b: BoxDomain<Rat> = BoxDomain::unit(1);
        let half = BoxDomain::new(vec![(Rat::from_int(0), Rat::from_ratio(1, 2))]).unwrap();
        assert!(b.contains_box(&half));
        assert!(!half.contains_box(&b));
        let other = BoxDomain::new(vec![(Rat::from_ratio(1, 4), Rat::from_int(1))]).unwrap();
        let meet = half.intersect(&other).unwrap();
        assert_eq!(
            meet,
            BoxDomain::new(vec![(Rat::from_ratio(1, 4), Rat::from_ratio(1, 2))]).unwrap()
        );
        let disjoint = BoxDomain::new(vec![(Rat::from_ratio(1, 2), Rat::from_int(1))]).unwrap();
        assert!(half.intersect(&disjoint).is_none());
    }
}
