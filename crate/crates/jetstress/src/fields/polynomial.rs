//! Multivariate polynomials with exact closure under sum, product, partial
//! differentiation and definite integration over boxes.
//!
//! Text format: `+`-separated terms of the form `coef * X1^e1 X2^e2`, with
//! `p/q` rational coefficients, e.g. `3/4 * X1^2 X2 + -1 * X3`.

use crate::error::{Error, Result};
use crate::fields::domain::BoxDomain;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S: Scalar> {
    n: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; n], c);
        }
        Polynomial { n, terms }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    /// The coordinate function `X^i`, `i` 1-based.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::domain(format!("axis {i} out of range 1..={n}")));
        }
        let mut exps = vec![0u32; n];
        exps[i - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, S::one());
        Ok(Polynomial { n, terms })
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: S) -> Result<Self> {
        if exps.len() != n {
            return Err(Error::dimension(format!(
                "exponent vector has {} entries, expected {n}",
                exps.len()
            )));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Ok(Polynomial { n, terms })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert_acc(&mut self, exps: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_acc(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), c.clone() * v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_acc(exps, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative along axis `i` (1-based).
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::domain(format!("axis {i} out of range 1..={}", self.n)));
        }
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            if k == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i - 1] = k - 1;
            out.insert_acc(exps, S::from_int(k as i64) * c.clone());
        }
        Ok(out)
    }

    /// Iterated partial derivative along the axes listed in `index`.
    pub fn partial_seq(&self, index: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &i in index {
            out = out.partial(i)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[S]) -> Result<S> {
        if point.len() != self.n {
            return Err(Error::dimension(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.n
            )));
        }
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Exact iterated integral over the box.
    pub fn integrate_box(&self, domain: &BoxDomain<S>) -> Result<S> {
        if domain.dimension() != self.n {
            return Err(Error::dimension(format!(
                "box has dimension {}, polynomial has {}",
                domain.dimension(),
                self.n
            )));
        }
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (axis, &k) in e.iter().enumerate() {
                let (a, b) = domain.interval(axis + 1)?;
                // ∫_a^b x^k dx = (b^{k+1} - a^{k+1}) / (k+1)
                let p = k + 1;
                let mut bp = S::one();
                let mut ap = S::one();
                for _ in 0..p {
                    bp = bp * b.clone();
                    ap = ap * a.clone();
                }
                term = term * (bp - ap) / S::from_int(p as i64);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitutes `X^i = value`, keeping the ambient dimension.
    pub fn substitute(&self, i: usize, value: &S) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::domain(format!("axis {i} out of range 1..={}", self.n)));
        }
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[i - 1];
            let mut coef = c.clone();
            for _ in 0..k {
                coef = coef * value.clone();
            }
            let mut exps = e.clone();
            exps[i - 1] = 0;
            out.insert_acc(exps, coef);
        }
        Ok(out)
    }

    /// Substitutes `X^i = value` and drops the axis, yielding a polynomial
    /// in `n-1` variables (the face chart of a box).
    pub fn eliminate_axis(&self, i: usize, value: &S) -> Result<Polynomial<S>> {
        let fixed = self.substitute(i, value)?;
        let mut out = Polynomial::zero(self.n - 1);
        for (e, c) in &fixed.terms {
            let mut exps = e.clone();
            exps.remove(i - 1);
            out.insert_acc(exps, c.clone());
        }
        Ok(out)
    }

    /// Largest absolute coefficient; a cheap exact gauge of polynomial size.
    pub fn coefficient_sup(&self) -> S {
        self.terms
            .values()
            .fold(S::zero(), |acc, c| acc.max_with(c.abs()))
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exps, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            let mut factors = String::new();
            for (axis, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                factors.push(' ');
                factors.push_str(&format!("X{}", axis + 1));
                if e > 1 {
                    factors.push_str(&format!("^{e}"));
                }
            }
            if !factors.is_empty() {
                write!(f, " *{factors}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn unit_box(n: usize) -> BoxDomain<Rat> {
        BoxDomain::unit(n)
    }

    fn x(n: usize, i: usize) -> Polynomial<Rat> {
        Polynomial::var(n, i).unwrap()
    }

    #[test]
    fn partial_examples() {
        let p = x(2, 1).mul(&x(2, 2)); // X1 X2
        assert_eq!(p.partial(1).unwrap(), x(2, 2));
        let c = Polynomial::constant(2, Rat::from_int(5));
        assert!(c.partial(2).unwrap().is_zero());
        let cube = x(1, 1).pow(3);
        assert_eq!(
            cube.partial(1).unwrap(),
            x(1, 1).pow(2).scale(&Rat::from_int(3))
        );
        assert!(p.partial(3).is_err());
    }

    #[test]
    fn integrate_examples() {
        let one = Polynomial::one(2);
        assert_eq!(one.integrate_box(&unit_box(2)).unwrap(), Rat::from_int(1));
        let p = x(2, 1).mul(&x(2, 2));
        assert_eq!(p.integrate_box(&unit_box(2)).unwrap(), Rat::from_ratio(1, 4));
        let q = x(1, 1).mul(&Polynomial::one(1).sub(&x(1, 1))); // X(1-X)
        assert_eq!(q.integrate_box(&unit_box(1)).unwrap(), Rat::from_ratio(1, 6));
    }

    #[test]
    fn integrate_shifted_box() {
        // ∫_1^2 x^2 dx = 7/3
        let b = BoxDomain::new(vec![(Rat::from_int(1), Rat::from_int(2))]).unwrap();
        assert_eq!(x(1, 1).pow(2).integrate_box(&b).unwrap(), Rat::from_ratio(7, 3));
    }

    #[test]
    fn eval_and_substitute() {
        let p = x(2, 1).pow(2).add(&x(2, 2)); // X1^2 + X2
        let v = p
            .eval(&[Rat::from_ratio(1, 2), Rat::from_int(3)])
            .unwrap();
        assert_eq!(v, Rat::from_ratio(13, 4));
        let fixed = p.substitute(1, &Rat::from_int(2)).unwrap();
        assert_eq!(
            fixed,
            Polynomial::constant(2, Rat::from_int(4)).add(&x(2, 2))
        );
        let face = p.eliminate_axis(1, &Rat::from_int(2)).unwrap();
        assert_eq!(face.dimension(), 1);
        assert_eq!(face.eval(&[Rat::from_int(1)]).unwrap(), Rat::from_int(5));
    }

    #[test]
    fn display_round_shape() {
        let p = x(2, 1)
            .pow(2)
            .scale(&Rat::from_ratio(3, 4))
            .add(&x(2, 2).neg());
        // terms ordered by the exponent-vector map order
        assert_eq!(p.to_string(), "-1 * X2 + 3/4 * X1^2");
        assert_eq!(Polynomial::<Rat>::zero(2).to_string(), "0");
    }

    #[test]
    fn ring_laws_spot() {
        let a = x(3, 1).add(&x(3, 2).scale(&Rat::from_ratio(1, 3)));
        let b = x(3, 3).pow(2).sub(&Polynomial::one(3));
        let c = x(3, 2).mul(&x(3, 3));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // Leibniz rule
        let left = a.mul(&b).partial(3).unwrap();
        let right = a.partial(3).unwrap().mul(&b).add(&a.mul(&b.partial(3).unwrap()));
        assert_eq!(left, right);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(n: usize) -> impl Strategy<Value = Polynomial<Rat>> {
            proptest::collection::vec(
                (proptest::collection::vec(0u32..3, n), -4i64..=4),
                0..5,
            )
            .prop_map(move |terms| {
                terms.into_iter().fold(Polynomial::zero(n), |acc, (e, c)| {
                    acc.add(&Polynomial::monomial(n, e, Rat::from_int(c)).unwrap())
                })
            })
        }

        proptest! {
            #[test]
            fn mul_commutes_and_distributes(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            }

            #[test]
            fn leibniz_and_commuting_partials(a in arb_poly(2), b in arb_poly(2), i in 1usize..=2) {
                let left = a.mul(&b).partial(i).unwrap();
                let right = a.partial(i).unwrap().mul(&b).add(&a.mul(&b.partial(i).unwrap()));
                prop_assert_eq!(left, right);
                let xy = a.partial(1).unwrap().partial(2).unwrap();
                let yx = a.partial(2).unwrap().partial(1).unwrap();
                prop_assert_eq!(xy, yx);
            }

            #[test]
            fn integral_is_linear_and_matches_eval_on_constants(a in arb_poly(2), b in arb_poly(2), c in -3i64..=3) {
                let domain = BoxDomain::unit(2);
                let lhs = a.scale(&Rat::from_int(c)).add(&b).integrate_box(&domain).unwrap();
                let rhs = Rat::from_int(c) * a.integrate_box(&domain).unwrap()
                    + b.integrate_box(&domain).unwrap();
                prop_assert_eq!(lhs, rhs);
                let k = Polynomial::constant(2, Rat::from_int(c));
                prop_assert_eq!(k.integrate_box(&domain).unwrap(), Rat::from_int(c));
            }
        }
    }
}
