//! Seeded identity suites behind the `check` command. Each check
//! exercises one identity over exhaustive basis cases or seeded random
//! instances and records its largest residual; exact arithmetic demands
//! zero, float mode compares against the configured tolerance.

use crate::currents::{SmoothCurrent, TestForm};
use crate::error::{Error, Result};
use crate::exterior::{
    c_left, c_right, contract_left, contract_right, e_left, e_right, pair, wedge, wedge_mv,
    AltForm, MultiVector,
};
use crate::fields::{BoxDomain, FormField, MultiVectorField, Polynomial, SamplingGrid, SectionField};
use crate::jets::{include_holonomic, iterate_prolong, prolong};
use crate::multiindex::{concat_sign, BinaryNodeIndex, IncreasingIndex, MultiIndex, NonDecreasingIndex};
use crate::report::{CheckOutcome, SuiteReport};
use crate::scalar::{from_sign, sign_pow, Scalar};
use crate::stress::{
    default_probes, gauge_increment, gauge_potential, NonHolonomicStressDensity, StressDensity,
};
use rand::RngExt;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SuiteConfig<S: Scalar> {
    pub dim_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: S,
}

impl<S: Scalar> SuiteConfig<S> {
    pub fn new(dim_max: usize, trials: usize, seed: u64, tol: S) -> Self {
        SuiteConfig { dim_max, trials, seed, tol }
    }
}

/// Largest dimension each suite accepts.
pub fn suite_dim_limit(suite: &str) -> Option<usize> {
    match suite {
        "exterior" => Some(5),
        "currents" | "jets" | "stress" => Some(3),
        "all" => Some(5),
        _ => None,
    }
}

/// Runs one suite by name; `all` concatenates the four suites.
pub fn run_suite<S: Scalar>(name: &str, cfg: &SuiteConfig<S>) -> Result<Vec<SuiteReport>> {
    match name {
        "exterior" => Ok(vec![exterior_suite(cfg)?]),
        "jets" => Ok(vec![jets_suite(cfg)?]),
        "currents" => Ok(vec![currents_suite(cfg)?]),
        "stress" => Ok(vec![stress_suite(cfg)?]),
        "all" => {
            let clamp = |limit: usize| SuiteConfig {
                dim_max: cfg.dim_max.min(limit),
                trials: cfg.trials,
                seed: cfg.seed,
                tol: cfg.tol.clone(),
            };
            Ok(vec![
                exterior_suite(&clamp(5))?,
                jets_suite(&clamp(3))?,
                currents_suite(&clamp(3))?,
                stress_suite(&clamp(3))?,
            ])
        }
        other => Err(Error::domain(format!("unknown suite `{other}`"))),
    }
}

/// Residual accumulator for one check.
struct Checker<S: Scalar> {
    tol: S,
    max_residual: S,
    cases: usize,
}

impl<S: Scalar> Checker<S> {
    fn new(tol: &S) -> Self {
        Checker { tol: tol.clone(), max_residual: S::zero(), cases: 0 }
    }

    fn observe(&mut self, residual: S) {
        self.cases += 1;
        self.max_residual = self.max_residual.clone().max_with(residual.abs());
    }

    fn observe_flag(&mut self, ok: bool) {
        self.observe(if ok { S::zero() } else { S::one() });
    }

    fn outcome(self, tag: &str, description: &str) -> CheckOutcome {
        CheckOutcome {
            tag: tag.into(),
            description: description.into(),
            passed: self.max_residual <= self.tol,
            max_residual: self.max_residual.to_string(),
            cases: self.cases,
        }
    }
}

fn alt_residual<S: Scalar>(a: &AltForm<S>, b: &AltForm<S>) -> S {
    let diff = a.sub(b).expect("matched degrees");
    diff.components()
        .fold(S::zero(), |acc, (_, c)| acc.max_with(c.abs()))
}

fn rand_coef<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    S::from_ratio(rng.random_range(-3..=3), rng.random_range(1..=2))
}

fn rand_poly<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Polynomial<S> {
    let mut out = Polynomial::constant(n, rand_coef(rng));
    for _ in 0..4 {
        let mut exps = vec![0u32; n];
        let mut budget = max_deg;
        for e in exps.iter_mut() {
            let d = rng.random_range(0..=budget);
            *e = d;
            budget -= d;
        }
        out = out.add(&Polynomial::monomial(n, exps, rand_coef(rng)).expect("monomial"));
    }
    out
}

fn rand_alt<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, p: usize) -> AltForm<S> {
    let comps = IncreasingIndex::enumerate(n, p)
        .expect("degree in range")
        .into_iter()
        .map(|idx| (idx, rand_coef(rng)));
    AltForm::from_components(n, p, comps).expect("valid components")
}

fn rand_mv<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, p: usize) -> MultiVector<S> {
    let comps = IncreasingIndex::enumerate(n, p)
        .expect("degree in range")
        .into_iter()
        .map(|idx| (idx, rand_coef(rng)));
    MultiVector::from_components(n, p, comps).expect("valid components")
}

fn rand_form_field<S: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: usize,
    max_deg: u32,
) -> FormField<S> {
    let comps = IncreasingIndex::enumerate(n, p)
        .expect("degree in range")
        .into_iter()
        .map(|idx| (idx, rand_poly(rng, n, max_deg)))
        .collect::<Vec<_>>();
    FormField::from_components(n, p, comps).expect("valid components")
}

fn rand_mv_field<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, q: usize) -> MultiVectorField<S> {
    let comps = IncreasingIndex::enumerate(n, q)
        .expect("degree in range")
        .into_iter()
        .map(|idx| (idx, rand_poly(rng, n, 1)))
        .collect::<Vec<_>>();
    MultiVectorField::from_components(n, q, comps).expect("valid components")
}

fn trial_box<S: Scalar>(n: usize, trial: usize) -> BoxDomain<S> {
    if trial % 2 == 0 {
        BoxDomain::unit(n)
    } else {
        BoxDomain::new(
            (0..n)
                .map(|_| (S::from_ratio(-1, 2), S::one()))
                .collect(),
        )
        .expect("valid box")
    }
}

fn rand_section<S: Scalar>(
    rng: &mut ChaCha8Rng,
    domain: &BoxDomain<S>,
    m: usize,
    max_deg: u32,
) -> SectionField<S> {
    let n = domain.dimension();
    let comps = (0..m).map(|_| rand_poly(rng, n, max_deg)).collect();
    SectionField::new(domain.clone(), comps).expect("valid section")
}

fn rand_stress<S: Scalar>(
    rng: &mut ChaCha8Rng,
    domain: &BoxDomain<S>,
    m: usize,
    max_deg: u32,
) -> StressDensity<S> {
    let n = domain.dimension();
    let mut s = StressDensity::zero(1, m, domain.clone());
    for alpha in 1..=m {
        s.set(alpha, NonDecreasingIndex::empty(n), rand_poly(rng, n, max_deg))
            .expect("slot");
        for i in 1..=n {
            s.set(
                alpha,
                NonDecreasingIndex::new(n, vec![i]).expect("index"),
                rand_poly(rng, n, max_deg),
            )
            .expect("slot");
        }
    }
    s
}

fn rand_nh_stress<S: Scalar>(
    rng: &mut ChaCha8Rng,
    domain: &BoxDomain<S>,
    m: usize,
    order: usize,
    max_deg: u32,
) -> NonHolonomicStressDensity<S> {
    let n = domain.dimension();
    let mut s = NonHolonomicStressDensity::zero(order, m, domain.clone());
    for node in BinaryNodeIndex::enumerate(order) {
        for idx in MultiIndex::enumerate(n, node.arity()) {
            for alpha in 1..=m {
                s.set(node, idx.clone(), alpha, rand_poly(rng, n, max_deg))
                    .expect("slot");
            }
        }
    }
    s
}

pub fn exterior_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<SuiteReport> {
    let dims = 1..=cfg.dim_max.min(5);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut outcomes = Vec::new();

    // dX^λ ∧ dX^λ̂ = ε^{λλ̂} dX, exhaustive over basis indices
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        let top = AltForm::basis(n, IncreasingIndex::full(n))?;
        for p in 0..=n {
            for lam in IncreasingIndex::enumerate(n, p)? {
                let hat = lam.complement();
                let lhs = wedge(
                    &AltForm::<S>::basis(n, lam.clone())?,
                    &AltForm::basis(n, hat.clone())?,
                )?;
                let rhs = top.scale(&from_sign::<S>(concat_sign(&lam, &hat)));
                check.observe(alt_residual(&lhs, &rhs));
            }
        }
    }
    outcomes.push(check.outcome(
        "eps-wedge",
        "complementary basis wedge reproduces the permutation sign",
    ));

    // θ ⌞ η = (-1)^{rp} η ⌟ θ on random dense pairs
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for pe in 0..=n {
            for pt in pe..=n {
                for _ in 0..cfg.trials.max(1) {
                    let eta = rand_mv::<S>(&mut rng, n, pe);
                    let theta = rand_alt::<S>(&mut rng, n, pt);
                    let lhs = contract_right(&theta, &eta)?;
                    let rhs = contract_left(&eta, &theta)?.scale(&sign_pow::<S>((pt - pe) * pe));
                    check.observe(alt_residual(&lhs, &rhs));
                }
            }
        }
    }
    outcomes.push(check.outcome(
        "contraction-order-sign",
        "left and right contraction differ by (-1)^{rp}",
    ));

    // contraction definition against wedged basis probes
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for pe in 0..=n {
            for pt in pe..=n {
                let eta = rand_mv::<S>(&mut rng, n, pe);
                let theta = rand_alt::<S>(&mut rng, n, pt);
                let contracted = contract_left(&eta, &theta)?;
                for idx in IncreasingIndex::enumerate(n, pt - pe)? {
                    let probe = MultiVector::basis(n, idx)?;
                    let lhs = pair(&contracted, &probe)?;
                    let rhs = pair(&theta, &wedge_mv(&eta, &probe)?)?;
                    check.observe(lhs - rhs);
                }
            }
        }
    }
    outcomes.push(check.outcome(
        "contraction-adjoint",
        "(η ⌟ θ)(η') = θ(η ∧ η') on all basis probes",
    ));

    // e maps invert the contraction maps on rank-one generators
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone().filter(|n| *n <= 4) {
        let top = AltForm::<S>::basis(n, IncreasingIndex::full(n))?;
        for p in 0..=n {
            for mu in IncreasingIndex::enumerate(n, p)? {
                let xi = MultiVector::<S>::basis(n, mu)?;
                let right_map = e_right(&c_left(&xi, &top)?)?;
                let left_map = e_left(&c_right(&xi, &top)?)?;
                for nu in IncreasingIndex::enumerate(n, p)? {
                    let psi = AltForm::basis(n, nu)?;
                    let expect = top.scale(&pair(&psi, &xi)?);
                    check.observe(alt_residual(&right_map.apply(&psi)?, &expect));
                    check.observe(alt_residual(&left_map.apply(&psi)?, &expect));
                }
            }
        }
    }
    outcomes.push(check.outcome(
        "e-inverse",
        "e maps invert the contraction maps on rank-one generators",
    ));

    // Σ_λ̂ ∂_λ̂ ⌟ (dX^λ̂ ∧ ω) = ω
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 0..=n {
            for _ in 0..cfg.trials.max(1) {
                let omega = rand_alt::<S>(&mut rng, n, p);
                let mut total = AltForm::zero(n, p);
                for hat in IncreasingIndex::enumerate(n, n - p)? {
                    let w = wedge(&AltForm::basis(n, hat.clone())?, &omega)?;
                    total = total.add(&contract_left(&MultiVector::basis(n, hat)?, &w)?)?;
                }
                check.observe(alt_residual(&total, &omega));
            }
        }
    }
    outcomes.push(check.outcome(
        "contr_wedge_identity",
        "complementary contraction of the wedged form recovers the form",
    ));

    // associativity on random triples
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for _ in 0..cfg.trials.max(1) {
            let pa = rng.random_range(0..=n.min(2));
            let pb = rng.random_range(0..=(n - pa).min(2));
            let pc = rng.random_range(0..=(n - pa - pb).min(2));
            let a = rand_alt::<S>(&mut rng, n, pa);
            let b = rand_alt::<S>(&mut rng, n, pb);
            let c = rand_alt::<S>(&mut rng, n, pc);
            let lhs = wedge(&wedge(&a, &b)?, &c)?;
            let rhs = wedge(&a, &wedge(&b, &c)?)?;
            check.observe(alt_residual(&lhs, &rhs));
        }
    }
    outcomes.push(check.outcome("wedge-associativity", "wedge is associative"));

    Ok(SuiteReport { suite: "exterior".into(), outcomes })
}

pub fn jets_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<SuiteReport> {
    let dims = 1..=cfg.dim_max.min(3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut outcomes = Vec::new();

    // ‖ĵ^r w‖⁰ = ‖j^r w‖⁰ = ‖w‖^r on shared grids
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        let grid = SamplingGrid::uniform(n, 3)?;
        for m in 1..=3 {
            for r in 0..=3 {
                for trial in 0..cfg.trials.max(1) {
                    let domain = trial_box::<S>(n, trial);
                    let w = rand_section::<S>(&mut rng, &domain, m, 3);
                    let base = w.cr_norm(r, &grid)?;
                    let jet = prolong(&w, r)?.norm0(&grid)?;
                    let iterated = iterate_prolong(&w, r)?.norm0(&grid)?;
                    check.observe(jet - base.clone());
                    check.observe(iterated - base);
                }
            }
        }
    }
    outcomes.push(check.outcome(
        "Isometries",
        "jet and iterated-jet extensions preserve the C^r grid norm",
    ));

    // iterate_prolong = include_holonomic ∘ prolong
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for r in 0..=3 {
            for _ in 0..cfg.trials.max(1) {
                let domain = BoxDomain::unit(n);
                let w = rand_section::<S>(&mut rng, &domain, 2, 3);
                let via = include_holonomic(&prolong(&w, r)?)?;
                let direct = iterate_prolong(&w, r)?;
                let mut residual = S::zero();
                for node in BinaryNodeIndex::enumerate(r) {
                    for idx in MultiIndex::enumerate(n, node.arity()) {
                        for alpha in 1..=2 {
                            let d = via.entry(node, alpha, &idx)?.sub(direct.entry(node, alpha, &idx)?);
                            residual = residual.max_with(d.coefficient_sup());
                        }
                    }
                }
                check.observe(residual);
            }
        }
    }
    outcomes.push(check.outcome(
        "IterJetExt",
        "iterated prolongation factors through the holonomic inclusion",
    ));

    // arrays of equal popcount hold the plain derivatives
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for _ in 0..cfg.trials.max(1) {
            let domain = BoxDomain::unit(n);
            let w = rand_section::<S>(&mut rng, &domain, 2, 3);
            let h = iterate_prolong(&w, 3)?;
            let mut residual = S::zero();
            for node in BinaryNodeIndex::enumerate(3) {
                for idx in MultiIndex::enumerate(n, node.arity()) {
                    for alpha in 1..=2 {
                        let direct = w.component(alpha)?.partial_seq(idx.entries())?;
                        let d = h.entry(node, alpha, &idx)?.sub(&direct);
                        residual = residual.max_with(d.coefficient_sup());
                    }
                }
            }
            check.observe(residual);
        }
    }
    outcomes.push(check.outcome(
        "Rep_It_Jet_Ext-1",
        "iterated-jet arrays hold the derivatives independently of the array index",
    ));

    // binary enumeration structure at order 3
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        let domain = BoxDomain::unit(n);
        let w = rand_section::<S>(&mut rng, &domain, 2, 2);
        let h = iterate_prolong(&w, 3)?;
        check.observe_flag(h.array_count() == 8);
        let rendered: Vec<String> = h.array_indices().map(|i| i.to_string()).collect();
        check.observe_flag(
            rendered == ["0", "1", "10", "11", "100", "101", "110", "111"],
        );
        for node in h.array_indices() {
            check.observe_flag(h.array(*node)?.keys().all(|(_, i)| i.len() == node.arity()));
        }
    }
    outcomes.push(check.outcome(
        "Exmample_RepNH-3-1",
        "order-3 prolongation yields arrays 0..111 with index length = popcount",
    ));

    // linearity of prolongation
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for r in 0..=3 {
            for _ in 0..cfg.trials.max(1) {
                let domain = BoxDomain::unit(n);
                let w1 = rand_section::<S>(&mut rng, &domain, 2, 3);
                let w2 = rand_section::<S>(&mut rng, &domain, 2, 3);
                let a = rand_coef::<S>(&mut rng);
                let lhs = prolong(&w1.scale(&a).add(&w2)?, r)?;
                let rhs = prolong(&w1, r)?.scale(&a).add(&prolong(&w2, r)?)?;
                let mut residual = S::zero();
                for (key, poly) in lhs.components() {
                    let d = poly.sub(rhs.component(key.0, &key.1)?);
                    residual = residual.max_with(d.coefficient_sup());
                }
                check.observe(residual);
            }
        }
    }
    outcomes.push(check.outcome("prolong-linearity", "jet extension is linear"));

    Ok(SuiteReport { suite: "jets".into(), outcomes })
}

pub fn currents_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<SuiteReport> {
    let dims = 1..=cfg.dim_max.min(3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut outcomes = Vec::new();

    // ∂∂T = 0
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 2..=n {
            for _ in 0..cfg.trials.max(1) {
                let b = BoxDomain::unit(n);
                let t = SmoothCurrent::from_left_density(
                    rand_form_field::<S>(&mut rng, n, n - p, 3),
                    b.clone(),
                )?;
                let bb = t.boundary()?.boundary()?;
                for lam in IncreasingIndex::enumerate(n, p - 2)? {
                    let psi = TestForm::compactified(
                        FormField::monomial(n, lam, rand_poly(&mut rng, n, 2))?,
                        &b,
                    )?;
                    check.observe(bb.act(&psi)?);
                }
            }
        }
    }
    outcomes.push(check.outcome("boundary-boundary", "the boundary of a boundary vanishes"));

    // ∂ _ωT matches T(dψ) on bump test forms, density degree ≤ 4
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 1..=n {
            for trial in 0..cfg.trials.max(1) {
                let b = trial_box::<S>(n, trial);
                let t = SmoothCurrent::from_left_density(
                    rand_form_field::<S>(&mut rng, n, n - p, 4),
                    b.clone(),
                )?;
                let boundary = t.boundary()?;
                for lam in IncreasingIndex::enumerate(n, p - 1)? {
                    let psi = TestForm::compactified(
                        FormField::monomial(n, lam, rand_poly(&mut rng, n, 2))?,
                        &b,
                    )?;
                    let direct = t.act_form(&psi.form().ext_derivative()?)?;
                    check.observe(boundary.act(&psi)? - direct);
                }
            }
        }
    }
    outcomes.push(check.outcome(
        "Boundary_of_Smooth_Current",
        "the (-1)^{n-p+1} density formula reproduces T(dψ) on compact tests",
    ));

    // d _ωT is the density current of dω
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 1..=n {
            for _ in 0..cfg.trials.max(1) {
                let b = BoxDomain::unit(n);
                let omega = rand_form_field::<S>(&mut rng, n, n - p, 3);
                let t = SmoothCurrent::from_left_density(omega.clone(), b.clone())?;
                let dt = t.ext_derivative()?;
                let expect = SmoothCurrent::from_left_density(omega.ext_derivative()?, b.clone())?;
                for lam in IncreasingIndex::enumerate(n, p - 1)? {
                    let psi = TestForm::compactified(
                        FormField::monomial(n, lam, rand_poly(&mut rng, n, 2))?,
                        &b,
                    )?;
                    check.observe(dt.act(&psi)? - expect.act(&psi)?);
                }
            }
        }
    }
    outcomes.push(check.outcome(
        "Ext_Der_Smooth_Curr",
        "the exterior derivative of a smooth current differentiates its density",
    ));

    // representation by 0-currents round trip
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 0..=n {
            for _ in 0..cfg.trials.max(1) {
                let b = BoxDomain::unit(n);
                let t = SmoothCurrent::from_left_density(
                    rand_form_field::<S>(&mut rng, n, n - p, 3),
                    b,
                )?;
                let rep = t.rep_zero_currents()?;
                let psi = rand_form_field::<S>(&mut rng, n, p, 3);
                check.observe(rep.reconstruct_act(&psi)? - t.act_form(&psi)?);
            }
        }
    }
    outcomes.push(check.outcome(
        "Rep-Curr1c",
        "0-current components reconstruct the current exactly",
    ));

    // representation by n-currents round trip, both conventions
    let mut unprimed = Checker::new(&cfg.tol);
    let mut primed_rel = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 0..=n {
            for _ in 0..cfg.trials.max(1) {
                let b = BoxDomain::unit(n);
                let t = SmoothCurrent::from_left_density(
                    rand_form_field::<S>(&mut rng, n, n - p, 3),
                    b,
                )?;
                let rep = t.rep_n_currents(false)?;
                let rep_primed = t.rep_n_currents(true)?;
                let omega = rand_form_field::<S>(&mut rng, n, p, 3);
                unprimed.observe(rep.reconstruct_act(&omega)? - t.act_form(&omega)?);
                unprimed.observe(rep_primed.reconstruct_act(&omega)? - t.act_form(&omega)?);
                let top = FormField::monomial(
                    n,
                    IncreasingIndex::full(n),
                    rand_poly(&mut rng, n, 2),
                )?;
                for hat in IncreasingIndex::enumerate(n, n - p)? {
                    let a = rep_primed.component(&hat).expect("component").act_form(&top)?;
                    let bb = rep.component(&hat).expect("component").act_form(&top)?;
                    primed_rel.observe(a - sign_pow::<S>(p * (n - p)) * bb);
                }
            }
        }
    }
    outcomes.push(unprimed.outcome(
        "Rep_Curr2b",
        "n-current components reconstruct the current in both conventions",
    ));
    outcomes.push(primed_rel.outcome(
        "R'_gl VS R_gl",
        "primed components equal (-1)^{p(n-p)} times the unprimed ones",
    ));

    // contraction with forms: defining property and order sign
    let mut defining = Checker::new(&cfg.tol);
    let mut order_sign = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for pt in 0..=n {
            for q in 0..=pt {
                for _ in 0..cfg.trials.max(1) {
                    let b = BoxDomain::unit(n);
                    let t = SmoothCurrent::from_left_density(
                        rand_form_field::<S>(&mut rng, n, n - pt, 2),
                        b,
                    )?;
                    let omega = rand_form_field::<S>(&mut rng, n, q, 2);
                    let left = t.contract_form_left(&omega)?;
                    let right = t.contract_form_right(&omega)?;
                    let psi = rand_form_field::<S>(&mut rng, n, pt - q, 2);
                    defining.observe(left.act_form(&psi)? - t.act_form(&omega.wedge(&psi)?)?);
                    defining.observe(right.act_form(&psi)? - t.act_form(&psi.wedge(&omega)?)?);
                    order_sign.observe(
                        right.act_form(&psi)? - sign_pow::<S>((pt - q) * q) * left.act_form(&psi)?,
                    );
                }
            }
        }
    }
    outcomes.push(defining.outcome(
        "Contr_Form_Curr",
        "(T ⌞ ω)(ψ) = T(ψ ∧ ω) and (ω ⌟ T)(ψ) = T(ω ∧ ψ)",
    ));
    outcomes.push(order_sign.outcome(
        "T cotr omega VS omega fcontr T",
        "the two contraction orders differ by (-1)^{pq}",
    ));

    // wedge with multivector fields: defining property and order sign
    let mut defining = Checker::new(&cfg.tol);
    let mut order_sign = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for p in 0..=n {
            for q in 0..=(n - p) {
                for _ in 0..cfg.trials.max(1) {
                    let b = BoxDomain::unit(n);
                    let t = SmoothCurrent::from_left_density(
                        rand_form_field::<S>(&mut rng, n, n - p, 2),
                        b,
                    )?;
                    let xi = rand_mv_field::<S>(&mut rng, n, q);
                    let left = t.wedge_vector_left(&xi)?;
                    let right = t.wedge_vector_right(&xi)?;
                    let psi = rand_form_field::<S>(&mut rng, n, p + q, 2);
                    defining.observe(left.act_form(&psi)? - t.act_form(&xi.contract_into(&psi)?)?);
                    defining.observe(right.act_form(&psi)? - t.act_form(&xi.contract_from(&psi)?)?);
                    order_sign
                        .observe(left.act_form(&psi)? - sign_pow::<S>(p * q) * right.act_form(&psi)?);
                }
            }
        }
    }
    outcomes.push(defining.outcome(
        "eta_wedge_current",
        "(ξ ∧ T)(ψ) = T(ξ ⌟ ψ) and (T ∧ ξ)(ψ) = T(ψ ⌞ ξ)",
    ));
    outcomes.push(order_sign.outcome(
        "xi wedge T VS T wedge xi",
        "the two wedge orders differ by (-1)^{pq}",
    ));

    Ok(SuiteReport { suite: "currents".into(), outcomes })
}

pub fn stress_suite<S: Scalar>(cfg: &SuiteConfig<S>) -> Result<SuiteReport> {
    let dims = 1..=cfg.dim_max.min(3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut outcomes = Vec::new();

    // traction density signs against the integration-by-parts face oracle
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for trial in 0..cfg.trials.max(1) {
            let b = trial_box::<S>(n, trial);
            let m = 1 + trial % 3;
            let s = rand_stress::<S>(&mut rng, &b, m, 3);
            let w = rand_section::<S>(&mut rng, &b, m, 3);
            let traction = s.traction_stress()?;
            let mut from_traction = S::zero();
            for face in b.faces() {
                from_traction = from_traction + traction.surface_traction(&face)?.power(&w)?;
            }
            // independent oracle: per-axis high/low face integrals of
            // S^i_α w^α with plain Lebesgue face measure
            let mut oracle = S::zero();
            for i in 1..=n {
                let face_box = b.face_domain(i)?;
                let (lo, hi) = b.interval(i)?;
                for alpha in 1..=m {
                    let integrand = s.gradient_component(alpha, i)?.mul(w.component(alpha)?);
                    let hi_part = integrand.eliminate_axis(i, &hi)?.integrate_box(&face_box)?;
                    let lo_part = integrand.eliminate_axis(i, &lo)?.integrate_box(&face_box)?;
                    oracle = oracle + hi_part - lo_part;
                }
            }
            check.observe(from_traction - oracle);
        }
    }
    outcomes.push(check.outcome(
        "Tr_St_Dens_vs_St_Dens",
        "traction densities s = (-1)^{n-i} S^i reproduce the face power",
    ));

    // divergence formula against the integration-by-parts oracle
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for trial in 0..cfg.trials.max(1) {
            let b = trial_box::<S>(n, trial);
            let m = 1 + trial % 2;
            let s = rand_stress::<S>(&mut rng, &b, m, 3);
            let w = rand_section::<S>(&mut rng, &b, m, 2);
            let u = crate::currents::boundary_bump(&b)?;
            let div = s.divergence()?;
            // ∫ S^i_α ∂_i(u w^α) = -∫ (div S + S)_α u w^α for u|∂ = 0
            let mut lhs = S::zero();
            let mut rhs = S::zero();
            for alpha in 1..=m {
                let uw = u.mul(w.component(alpha)?);
                for i in 1..=n {
                    lhs = lhs
                        + s.gradient_component(alpha, i)?
                            .mul(&uw.partial(i)?)
                            .integrate_box(&b)?;
                }
                let derivative_part = div.component(alpha)?.add(s.value_component(alpha)?);
                rhs = rhs - derivative_part.mul(&uw).integrate_box(&b)?;
            }
            check.observe(lhs - rhs);
        }
    }
    outcomes.push(check.outcome(
        "def_diver_st-dens",
        "div S = (S^i_{α,i} - S_α) matches the integration-by-parts oracle",
    ));

    // balance equation: residual vanishes
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for trial in 0..cfg.trials.max(1) {
            let b = trial_box::<S>(n, trial);
            let m = 1 + trial % 3;
            let s = rand_stress::<S>(&mut rng, &b, m, 3);
            let w = rand_section::<S>(&mut rng, &b, m, 3);
            let report = s.balance_check(&w)?;
            check.observe(report.residual);
        }
    }
    outcomes.push(check.outcome(
        "Principle of VW",
        "stress power splits exactly into body and boundary terms",
    ));

    // Cauchy formula: boundary power face-by-face against the Stokes term
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for trial in 0..cfg.trials.max(1) {
            let b = trial_box::<S>(n, trial);
            let s = rand_stress::<S>(&mut rng, &b, 2, 3);
            let w = rand_section::<S>(&mut rng, &b, 2, 3);
            let traction = s.traction_stress()?;
            let primed = s.traction_stress_primed()?;
            let sw_primed = primed.dot_section(&w)?;
            for face in b.faces() {
                let direct = traction.surface_traction(&face)?.power(&w)?;
                let stokes = sw_primed.integrate_face(&b, &face)?;
                check.observe(direct - stokes);
            }
        }
    }
    outcomes.push(check.outcome(
        "Cauchy_Form_gen",
        "surface tractions equal the oriented face terms of the traction form",
    ));

    // both sign conventions produce identical surface tractions
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for trial in 0..cfg.trials.max(1) {
            let b = trial_box::<S>(n, trial);
            let s = rand_stress::<S>(&mut rng, &b, 2, 3);
            let traction = s.traction_stress()?;
            let primed = s.traction_stress_primed()?;
            for face in b.faces() {
                let a = traction.surface_traction(&face)?;
                let bb = primed.surface_traction(&face)?;
                check.observe_flag(a == bb);
            }
        }
    }
    outcomes.push(check.outcome(
        "factor_(-1)^n-1",
        "primed and unprimed traction conventions give the same surface traction",
    ));

    // force-system additivity over a disjoint-interior split
    let mut check = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for _trial in 0..cfg.trials.max(1) {
            let b = BoxDomain::<S>::unit(n);
            let s = rand_stress::<S>(&mut rng, &b, 2, 3);
            let w = rand_section::<S>(&mut rng, &b, 2, 3);
            let mut lower = b.intervals().to_vec();
            lower[0] = (S::zero(), S::from_ratio(1, 2));
            let mut upper = b.intervals().to_vec();
            upper[0] = (S::from_ratio(1, 2), S::one());
            let lower = BoxDomain::new(lower)?;
            let upper = BoxDomain::new(upper)?;
            let split = s.restrict_force_system(&lower, &w)? + s.restrict_force_system(&upper, &w)?;
            check.observe(split - s.force_of(&w)?);
        }
    }
    outcomes.push(check.outcome(
        "Induc_Force_Sys",
        "the induced force system is additive over sub-body splits",
    ));

    // static indeterminacy: gauge increments are invisible, others are not
    let mut gauge = Checker::new(&cfg.tol);
    let mut detect = Checker::new(&cfg.tol);
    for n in dims.clone().filter(|n| *n >= 2) {
        let b = BoxDomain::<S>::unit(n);
        let probes = default_probes(&b, 2, 3)?;
        for trial in 0..cfg.trials.max(1) {
            let s = rand_stress::<S>(&mut rng, &b, 2, 2);
            let phi = gauge_potential(&b)?.mul(&rand_poly(&mut rng, n, 1));
            let increment = gauge_increment(&b, 2, 1 + trial % 2, (1, 2), &phi)?;
            let shifted = s.add(&increment)?;
            let (_, gap) = s.equivalent_on(&shifted, &probes, &cfg.tol)?;
            gauge.observe(gap);
            // a constant value increment shifts the force at w = 1
            let mut biased = s.clone();
            biased.set(
                1,
                NonDecreasingIndex::empty(n),
                s.value_component(1)?.add(&Polynomial::one(n)),
            )?;
            let (same, gap) = s.equivalent_on(&biased, &probes, &cfg.tol)?;
            detect.observe_flag(!same && gap > cfg.tol);
        }
    }
    outcomes.push(gauge.outcome(
        "gauge-invariance",
        "divergence-free traction-free increments change no probe force",
    ));
    outcomes.push(detect.outcome(
        "gauge-detection",
        "a non-gauge increment is detected by the probe set",
    ));

    // non-holonomic representation and the one-step reduction
    let mut rep = Checker::new(&cfg.tol);
    let mut reduction = Checker::new(&cfg.tol);
    for n in dims.clone() {
        for order in [2usize, 3] {
            for trial in 0..cfg.trials.max(1).min(6) {
                let b = trial_box::<S>(n, trial);
                let nh = rand_nh_stress::<S>(&mut rng, &b, 2, order, 2);
                let w = rand_section::<S>(&mut rng, &b, 2, 3);
                let reduced = nh.reduce()?;
                reduction.observe(reduced.force_of(&w)? - nh.force_of(&w)?);
                let report = reduced.balance_check(&w)?;
                reduction.observe(report.residual);
            }
        }
        // symmetric splitting represents the same force
        for trial in 0..cfg.trials.max(1).min(6) {
            let b = trial_box::<S>(n, trial);
            let mut simple = StressDensity::zero(2, 2, b.clone());
            for alpha in 1..=2 {
                for idx in NonDecreasingIndex::enumerate_up_to(n, 2) {
                    simple.set(alpha, idx, rand_poly(&mut rng, n, 2))?;
                }
            }
            let nh = NonHolonomicStressDensity::from_simple(&simple)?;
            let w = rand_section::<S>(&mut rng, &b, 2, 3);
            rep.observe(nh.force_of(&w)? - simple.force_of(&w)?);
        }
    }
    outcomes.push(rep.outcome(
        "Gen_Equil_NHS",
        "symmetric splitting into a non-holonomic stress represents the same force",
    ));
    outcomes.push(reduction.outcome(
        "reduction-step",
        "one-step reduction preserves the force and balances exactly",
    ));

    Ok(SuiteReport { suite: "stress".into(), outcomes })
}
