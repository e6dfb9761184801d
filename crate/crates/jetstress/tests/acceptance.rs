//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Exact equality is demanded on rational coefficients; the single
//! float-mode clause uses the stated 1e-10 tolerance.

use jetstress::config::parse_polynomial;
use jetstress::currents::{SmoothCurrent, TestForm};
use jetstress::exterior::{
    c_left, contract_left, contract_right, e_right, pair, wedge, AltForm, MultiVector,
};
use jetstress::fields::{
    glue_sections, BoxDomain, FormField, MultiVectorField, PartitionOfUnity, Polynomial,
    SamplingGrid, SectionField,
};
use jetstress::jets::{include_holonomic, iterate_prolong, prolong};
use jetstress::multiindex::{
    concat_sign, BinaryNodeIndex, IncreasingIndex, MultiIndex, NonDecreasingIndex,
};
use jetstress::scalar::{sign_pow, Rat, Scalar};
use jetstress::stress::{
    default_probes, gauge_increment, gauge_potential, NonHolonomicStressDensity, StressDensity,
};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

fn criterion(number: usize, title: &str, body: impl FnOnce()) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed().as_secs_f64();
    match result {
        Ok(()) => println!("[PASS] criterion {number}: {title} ({elapsed:.2}s)"),
        Err(payload) => {
            println!("[FAIL] criterion {number}: {title} ({elapsed:.2}s)");
            std::panic::resume_unwind(payload);
        }
    }
}

fn rat(p: i64, q: i64) -> Rat {
    Rat::from_ratio(p, q)
}

fn x(n: usize, i: usize) -> Polynomial<Rat> {
    Polynomial::var(n, i).unwrap()
}

fn inc(n: usize, entries: &[usize]) -> IncreasingIndex {
    IncreasingIndex::new(n, entries.to_vec()).unwrap()
}

/// Deterministic dense form with small rational coefficients.
fn dense_alt(n: usize, p: usize, seed: i64) -> AltForm<Rat> {
    let comps = IncreasingIndex::enumerate(n, p)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(k, idx)| (idx, rat((seed + 3 * k as i64) % 7 - 3, 1 + (k as i64 % 2))));
    AltForm::from_components(n, p, comps).unwrap()
}

fn dense_mv(n: usize, p: usize, seed: i64) -> MultiVector<Rat> {
    let comps = IncreasingIndex::enumerate(n, p)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(k, idx)| (idx, rat((seed + 5 * k as i64) % 5 - 2, 1)));
    MultiVector::from_components(n, p, comps).unwrap()
}

fn dense_form_field(n: usize, p: usize, seed: i64, max_deg: u32) -> FormField<Rat> {
    let comps = IncreasingIndex::enumerate(n, p)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(k, idx)| {
            let mut poly = Polynomial::constant(n, rat((seed + k as i64) % 3 - 1, 1));
            for axis in 1..=n {
                let c = (seed * 3 + k as i64 + axis as i64) % 5 - 2;
                let e = ((seed + axis as i64 + k as i64) % (max_deg as i64 + 1)) as u32;
                poly = poly.add(&x(n, axis).pow(e).scale(&rat(c, 1)));
            }
            (idx, poly)
        })
        .collect::<Vec<_>>();
    FormField::from_components(n, p, comps).unwrap()
}

fn dense_poly(n: usize, seed: i64, max_deg: u32) -> Polynomial<Rat> {
    let mut poly = Polynomial::constant(n, rat(seed % 3 - 1, 1));
    let mut tick = seed;
    for axis in 1..=n {
        for deg in 1..=max_deg {
            tick += 1;
            poly = poly.add(&x(n, axis).pow(deg).scale(&rat(tick % 5 - 2, 1)));
        }
    }
    // one mixed term
    if n >= 2 && max_deg >= 2 {
        let mut exps = vec![0u32; n];
        exps[0] = 1;
        exps[1] = 1;
        poly = poly.add(&Polynomial::monomial(n, exps, rat(seed % 3, 1)).unwrap());
    }
    poly
}

fn dense_section(domain: &BoxDomain<Rat>, m: usize, seed: i64, max_deg: u32) -> SectionField<Rat> {
    let n = domain.dimension();
    let comps = (0..m)
        .map(|k| dense_poly(n, seed + 7 * k as i64, max_deg))
        .collect();
    SectionField::new(domain.clone(), comps).unwrap()
}

fn dense_stress(domain: &BoxDomain<Rat>, m: usize, seed: i64, max_deg: u32) -> StressDensity<Rat> {
    let n = domain.dimension();
    let mut s = StressDensity::zero(1, m, domain.clone());
    let mut tick = seed;
    for alpha in 1..=m {
        tick += 1;
        s.set(alpha, NonDecreasingIndex::empty(n), dense_poly(n, tick, max_deg))
            .unwrap();
        for i in 1..=n {
            tick += 1;
            s.set(
                alpha,
                NonDecreasingIndex::new(n, vec![i]).unwrap(),
                dense_poly(n, tick, max_deg),
            )
            .unwrap();
        }
    }
    s
}

#[test]
fn criterion_01_exterior_identity_suite() {
    criterion(1, "exterior identities exact for n <= 5, all degree pairs", || {
        let start = Instant::now();
        for n in 1..=5usize {
            let top = AltForm::<Rat>::basis(n, IncreasingIndex::full(n)).unwrap();
            // dX^λ ∧ dX^λ̂ = ε^{λλ̂} dX over every basis index
            for p in 0..=n {
                for lam in IncreasingIndex::enumerate(n, p).unwrap() {
                    let hat = lam.complement();
                    let lhs = wedge(
                        &AltForm::<Rat>::basis(n, lam.clone()).unwrap(),
                        &AltForm::basis(n, hat.clone()).unwrap(),
                    )
                    .unwrap();
                    let rhs = top.scale(&rat(concat_sign(&lam, &hat) as i64, 1));
                    assert_eq!(lhs, rhs, "eps-wedge n={n} lam={lam}");
                }
            }
            // θ ⌞ η = (-1)^{rp} η ⌟ θ for all degree pairs
            for pe in 0..=n {
                for pt in pe..=n {
                    for seed in 0..3 {
                        let eta = dense_mv(n, pe, seed);
                        let theta = dense_alt(n, pt, seed + 11);
                        let right = contract_right(&theta, &eta).unwrap();
                        let left = contract_left(&eta, &theta).unwrap();
                        assert_eq!(
                            right,
                            left.scale(&sign_pow::<Rat>((pt - pe) * pe)),
                            "order sign n={n} pe={pe} pt={pt}"
                        );
                    }
                }
            }
            // e_⌟ inverts C_⌞ on rank-one generators
            for p in 0..=n.min(4) {
                for mu in IncreasingIndex::enumerate(n, p).unwrap() {
                    let xi = MultiVector::<Rat>::basis(n, mu.clone()).unwrap();
                    let map = e_right(&c_left(&xi, &top).unwrap()).unwrap();
                    for nu in IncreasingIndex::enumerate(n, p).unwrap() {
                        let psi = AltForm::<Rat>::basis(n, nu).unwrap();
                        let got = map.apply(&psi).unwrap();
                        let expect = top.scale(&pair(&psi, &xi).unwrap());
                        assert_eq!(got, expect, "e-inverse n={n} mu={mu}");
                    }
                }
            }
            // Σ_λ̂ ∂_λ̂ ⌟ (dX^λ̂ ∧ ω) = ω
            for p in 0..=n {
                for seed in 0..3 {
                    let omega = dense_alt(n, p, seed + 2);
                    let mut total = AltForm::zero(n, p);
                    for hat in IncreasingIndex::enumerate(n, n - p).unwrap() {
                        let w = wedge(&AltForm::<Rat>::basis(n, hat.clone()).unwrap(), &omega).unwrap();
                        let c = contract_left(&MultiVector::<Rat>::basis(n, hat).unwrap(), &w).unwrap();
                        total = total.add(&c).unwrap();
                    }
                    assert_eq!(total, omega, "contr-wedge n={n} p={p}");
                }
            }
        }
        assert!(start.elapsed().as_secs() < 10, "exterior suite exceeded 10 s");
    });
}

#[test]
fn criterion_02_current_calculus() {
    criterion(2, "current calculus: boundary, derivative, local representations", || {
        for n in 1..=3usize {
            let b = BoxDomain::<Rat>::unit(n);
            for p in 0..=n {
                for seed in 0..3i64 {
                    // density degree up to 4
                    let t = SmoothCurrent::from_left_density(
                        dense_form_field(n, n - p, seed, 4),
                        b.clone(),
                    )
                    .unwrap();
                    // ∂∂T = 0 exactly
                    if p >= 2 {
                        let bb = t.boundary().unwrap().boundary().unwrap();
                        assert!(bb.density().is_zero(), "ddT n={n} p={p}");
                        for lam in IncreasingIndex::enumerate(n, p - 2).unwrap() {
                            let psi = TestForm::compactified(
                                FormField::monomial(n, lam, dense_poly(n, seed, 2)).unwrap(),
                                &b,
                            )
                            .unwrap();
                            assert_eq!(bb.act(&psi).unwrap(), rat(0, 1));
                        }
                    }
                    // boundary density formula against T(dψ) on bump tests
                    if p >= 1 {
                        let boundary = t.boundary().unwrap();
                        for lam in IncreasingIndex::enumerate(n, p - 1).unwrap() {
                            let psi = TestForm::compactified(
                                FormField::monomial(n, lam, dense_poly(n, seed + 5, 2)).unwrap(),
                                &b,
                            )
                            .unwrap();
                            assert!(psi.vanishes_on_boundary(&b).unwrap());
                            let direct = t
                                .act_form(&psi.form().ext_derivative().unwrap())
                                .unwrap();
                            assert_eq!(
                                boundary.act(&psi).unwrap(),
                                direct,
                                "boundary formula n={n} p={p} seed={seed}"
                            );
                        }
                    }
                    // both local representation round trips, exact
                    let rep0 = t.rep_zero_currents().unwrap();
                    let repn = t.rep_n_currents(false).unwrap();
                    let repn_primed = t.rep_n_currents(true).unwrap();
                    for lam in IncreasingIndex::enumerate(n, p).unwrap() {
                        let psi =
                            FormField::monomial(n, lam, dense_poly(n, seed + 9, 3)).unwrap();
                        let direct = t.act_form(&psi).unwrap();
                        assert_eq!(rep0.reconstruct_act(&psi).unwrap(), direct, "rep0");
                        assert_eq!(repn.reconstruct_act(&psi).unwrap(), direct, "repn");
                        assert_eq!(
                            repn_primed.reconstruct_act(&psi).unwrap(),
                            direct,
                            "repn primed"
                        );
                    }
                    // primed/unprimed relation (-1)^{p(n-p)}
                    let top =
                        FormField::monomial(n, IncreasingIndex::full(n), dense_poly(n, seed, 2))
                            .unwrap();
                    for hat in IncreasingIndex::enumerate(n, n - p).unwrap() {
                        let a = repn_primed.component(&hat).unwrap().act_form(&top).unwrap();
                        let bb = repn.component(&hat).unwrap().act_form(&top).unwrap();
                        assert_eq!(a, sign_pow::<Rat>(p * (n - p)) * bb, "primed relation");
                    }
                }
            }
        }
        // the worked boundary value: n=2, p=1, ω = X2 dX1, bump test
        let b = BoxDomain::<Rat>::unit(2);
        let omega = FormField::monomial(2, inc(2, &[1]), x(2, 2)).unwrap();
        let t = SmoothCurrent::from_left_density(omega, b.clone()).unwrap();
        let bump = TestForm::compactified(FormField::scalar(Polynomial::one(2)), &b).unwrap();
        assert_eq!(t.boundary().unwrap().act(&bump).unwrap(), rat(-1, 36));
    });
}

#[test]
fn criterion_03_jet_isometry() {
    criterion(3, "jet-extension norms equal the C^r norm on 50 random sections", || {
        let mut count = 0;
        let mut seed = 0i64;
        'outer: loop {
            for n in 1..=3usize {
                for m in 1..=3usize {
                    for r in 0..=3usize {
                        seed += 1;
                        let domain = if seed % 2 == 0 {
                            BoxDomain::<Rat>::unit(n)
                        } else {
                            BoxDomain::new((0..n).map(|_| (rat(-1, 2), rat(1, 1))).collect())
                                .unwrap()
                        };
                        let grid = SamplingGrid::uniform(n, 3).unwrap();
                        let w = dense_section(&domain, m, seed * 13, 3);
                        let base = w.cr_norm(r, &grid).unwrap();
                        assert_eq!(
                            prolong(&w, r).unwrap().norm0(&grid).unwrap(),
                            base,
                            "jet norm n={n} m={m} r={r}"
                        );
                        assert_eq!(
                            iterate_prolong(&w, r).unwrap().norm0(&grid).unwrap(),
                            base,
                            "iterated norm n={n} m={m} r={r}"
                        );
                        count += 1;
                        if count >= 50 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_04_iterated_jet_structure() {
    criterion(4, "order-3 prolongation has arrays 0..111 with |I_p| = popcount(p)", || {
        for n in 1..=3usize {
            let domain = BoxDomain::<Rat>::unit(n);
            let w = dense_section(&domain, 2, 17 + n as i64, 3);
            let h = iterate_prolong(&w, 3).unwrap();
            assert_eq!(h.array_count(), 8);
            let indices: Vec<String> = h.array_indices().map(|i| i.to_string()).collect();
            assert_eq!(indices, ["0", "1", "10", "11", "100", "101", "110", "111"]);
            for node in BinaryNodeIndex::enumerate(3) {
                let array = h.array(node).unwrap();
                assert!(array.keys().all(|(_, idx)| idx.len() == node.arity()));
                // equal-popcount arrays agree entrywise
                for other in BinaryNodeIndex::enumerate(3) {
                    if other.arity() != node.arity() {
                        continue;
                    }
                    for idx in MultiIndex::enumerate(n, node.arity()) {
                        for alpha in 1..=2 {
                            assert_eq!(
                                h.entry(node, alpha, &idx).unwrap(),
                                h.entry(other, alpha, &idx).unwrap(),
                                "arrays {node} and {other} disagree at {idx}"
                            );
                        }
                    }
                }
            }
            // and the diagram through the holonomic inclusion commutes
            assert_eq!(include_holonomic(&prolong(&w, 3).unwrap()).unwrap(), h);
        }
    });
}

#[test]
fn criterion_05_stress_pipeline() {
    criterion(5, "traction signs, divergence oracle, 100 exact balance residuals", || {
        let start = Instant::now();
        // s_{α,î} = (-1)^{n-i} S^i_α reproduced for n <= 3
        for n in 1..=3usize {
            let b = BoxDomain::<Rat>::unit(n);
            let s = dense_stress(&b, 2, 23 + n as i64, 3);
            let traction = s.traction_stress().unwrap();
            for alpha in 1..=2usize {
                for i in 1..=n {
                    let hat = IncreasingIndex::single(n, i).unwrap().complement();
                    assert_eq!(
                        traction.component(alpha, &hat).unwrap(),
                        &s.gradient_component(alpha, i)
                            .unwrap()
                            .scale(&sign_pow::<Rat>(n - i)),
                        "traction slot n={n} alpha={alpha} i={i}"
                    );
                }
            }
            // divergence against the integration-by-parts oracle
            let div = s.divergence().unwrap();
            let u = jetstress::currents::boundary_bump(&b).unwrap();
            let w = dense_section(&b, 2, 31 + n as i64, 2);
            for alpha in 1..=2usize {
                let uw = u.mul(w.component(alpha).unwrap());
                let mut lhs = rat(0, 1);
                for i in 1..=n {
                    lhs = lhs
                        + s.gradient_component(alpha, i)
                            .unwrap()
                            .mul(&uw.partial(i).unwrap())
                            .integrate_box(&b)
                            .unwrap();
                }
                let derivative_part = div
                    .component(alpha)
                    .unwrap()
                    .add(s.value_component(alpha).unwrap());
                let rhs = -derivative_part.mul(&uw).integrate_box(&b).unwrap();
                assert_eq!(lhs, rhs, "divergence oracle n={n} alpha={alpha}");
            }
        }
        // 100 random balance residuals, exactly zero
        let mut count = 0;
        let mut seed = 100i64;
        'outer: loop {
            for n in 1..=3usize {
                for m in 1..=3usize {
                    seed += 1;
                    let b = if seed % 2 == 0 {
                        BoxDomain::<Rat>::unit(n)
                    } else {
                        BoxDomain::new((0..n).map(|_| (rat(-1, 2), rat(1, 1))).collect()).unwrap()
                    };
                    let s = dense_stress(&b, m, seed * 3, 3);
                    let w = dense_section(&b, m, seed * 7 + 1, 3);
                    let report = s.balance_check(&w).unwrap();
                    assert_eq!(report.residual, rat(0, 1), "balance n={n} m={m} seed={seed}");
                    count += 1;
                    if count >= 100 {
                        break 'outer;
                    }
                }
            }
        }
        // float mode: residuals within 1e-10
        for seed in 0..10i64 {
            let n = 1 + (seed % 3) as usize;
            let b = BoxDomain::<f64>::unit(n);
            let mut s = StressDensity::<f64>::zero(1, 2, b.clone());
            let mut w_comps = Vec::new();
            for alpha in 1..=2usize {
                let text = format!("0.25 * X1^2 + -{}.5 * X1", (seed + alpha as i64) % 3);
                s.set(alpha, NonDecreasingIndex::empty(n), parse_polynomial(n, &text).unwrap())
                    .unwrap();
                for i in 1..=n {
                    let text = format!("{}.125 * X{i}^3 + 0.75", (seed + i as i64) % 2);
                    s.set(
                        alpha,
                        NonDecreasingIndex::new(n, vec![i]).unwrap(),
                        parse_polynomial(n, &text).unwrap(),
                    )
                    .unwrap();
                }
                w_comps.push(parse_polynomial(n, &format!("0.5 * X1^2 + {seed}.25")).unwrap());
            }
            let w = SectionField::new(b, w_comps).unwrap();
            let report = s.balance_check(&w).unwrap();
            assert!(
                report.residual.abs() <= 1e-10,
                "float balance residual {} at seed {seed}",
                report.residual
            );
        }
        assert!(start.elapsed().as_secs() < 60, "stress pipeline exceeded 60 s");
    });
}

#[test]
fn criterion_06_cauchy_stokes_cross_check() {
    criterion(6, "face-by-face Cauchy/Stokes agreement in both sign conventions", || {
        for n in 1..=3usize {
            let b = BoxDomain::<Rat>::unit(n);
            for seed in 0..4i64 {
                let s = dense_stress(&b, 2, 41 + seed, 3);
                let w = dense_section(&b, 2, 47 + seed, 3);
                let traction = s.traction_stress().unwrap();
                let primed = s.traction_stress_primed().unwrap();
                let sw_primed = primed.dot_section(&w).unwrap();
                for face in b.faces() {
                    // both conventions give the same surface traction
                    assert_eq!(
                        traction.surface_traction(&face).unwrap(),
                        primed.surface_traction(&face).unwrap(),
                        "conventions n={n} face {face}"
                    );
                    // and the face power equals the oriented Stokes face term
                    let direct = traction.surface_traction(&face).unwrap().power(&w).unwrap();
                    let stokes = sw_primed.integrate_face(&b, &face).unwrap();
                    assert_eq!(direct, stokes, "face term n={n} face {face} seed={seed}");
                }
            }
        }
    });
}

#[test]
fn criterion_07_static_indeterminacy() {
    criterion(7, "pure-gauge increments invisible, non-gauge increments detected", || {
        for n in 2..=3usize {
            let b = BoxDomain::<Rat>::unit(n);
            let probes = default_probes(&b, 2, 3).unwrap();
            for seed in 0..3i64 {
                let s = dense_stress(&b, 2, 53 + seed, 2);
                let phi = gauge_potential(&b)
                    .unwrap()
                    .mul(&dense_poly(n, seed, 1));
                let incr = gauge_increment(&b, 2, 1 + (seed as usize) % 2, (1, 2), &phi).unwrap();
                assert!(incr.divergence().unwrap().is_zero());
                let t = incr.traction_stress().unwrap();
                for face in b.faces() {
                    assert!(t.surface_traction(&face).unwrap().is_zero());
                }
                let shifted = s.add(&incr).unwrap();
                let (same, gap) = s.equivalent_on(&shifted, &probes, &rat(0, 1)).unwrap();
                assert!(same, "gauge increment changed a force, gap {gap}");
                assert_eq!(gap, rat(0, 1));
                // a non-gauge increment is detected
                let mut biased = s.clone();
                biased
                    .set(
                        1,
                        NonDecreasingIndex::empty(n),
                        s.value_component(1).unwrap().add(&Polynomial::one(n)),
                    )
                    .unwrap();
                let (same, gap) = s.equivalent_on(&biased, &probes, &rat(0, 1)).unwrap();
                assert!(!same && gap > rat(0, 1), "non-gauge increment missed");
            }
        }
    });
}

#[test]
fn criterion_08_localization() {
    criterion(8, "Mayer-Vietoris round trip and force-system additivity", || {
        // glue/restrict round trip over a three-piece chain cover
        let b = BoxDomain::<Rat>::unit(1);
        let pou = PartitionOfUnity::chain(
            &b,
            1,
            &[(rat(0, 1), rat(2, 5)), (rat(3, 10), rat(7, 10)), (rat(3, 5), rat(1, 1))],
            2,
        )
        .unwrap();
        assert!(pou.sums_to_one().unwrap());
        assert!(pou.supports_contained().unwrap());
        let global = SectionField::new(
            b.clone(),
            vec![x(1, 1).pow(3).sub(&x(1, 1).scale(&rat(1, 2))).add(&Polynomial::one(1))],
        )
        .unwrap();
        let pieces: Vec<_> = pou
            .covers()
            .iter()
            .map(|c| (c.clone(), global.restrict(c).unwrap()))
            .collect();
        let glued = glue_sections(&pieces, &pou, &rat(0, 1)).unwrap();
        assert_eq!(glued.components(), global.components());
        assert_eq!(glued.domain(), global.domain());
        // incompatible pieces are rejected with the offending overlap
        let mut broken = pieces.clone();
        broken[1].1 = SectionField::new(
            pou.cover(1).clone(),
            vec![global.component(1).unwrap().add(&Polynomial::one(1))],
        )
        .unwrap();
        assert!(glue_sections(&broken, &pou, &rat(0, 1)).is_err());

        // force-system additivity over a disjoint-interior split
        for n in 1..=3usize {
            let b = BoxDomain::<Rat>::unit(n);
            let s = dense_stress(&b, 2, 61 + n as i64, 3);
            let w = dense_section(&b, 2, 67 + n as i64, 3);
            let mut lower = b.intervals().to_vec();
            lower[0] = (rat(0, 1), rat(1, 2));
            let mut upper = b.intervals().to_vec();
            upper[0] = (rat(1, 2), rat(1, 1));
            let lower = BoxDomain::new(lower).unwrap();
            let upper = BoxDomain::new(upper).unwrap();
            let total = s.restrict_force_system(&lower, &w).unwrap()
                + s.restrict_force_system(&upper, &w).unwrap();
            assert_eq!(total, s.force_of(&w).unwrap(), "additivity n={n}");
        }
    });
}

#[test]
fn criterion_09_nonholonomic_reduction() {
    criterion(9, "one-step reduction preserves forces and balances, r = 2 and 3", || {
        for n in 1..=3usize {
            for order in [2usize, 3] {
                let b = BoxDomain::<Rat>::unit(n);
                let mut nh = NonHolonomicStressDensity::zero(order, 2, b.clone());
                let mut tick = 0i64;
                for node in BinaryNodeIndex::enumerate(order) {
                    for idx in MultiIndex::enumerate(n, node.arity()) {
                        for alpha in 1..=2usize {
                            tick += 1;
                            nh.set(node, idx.clone(), alpha, dense_poly(n, tick, 2)).unwrap();
                        }
                    }
                }
                let reduced = nh.reduce().unwrap();
                for seed in 0..3i64 {
                    let w = dense_section(&b, 2, 71 + seed, 3);
                    assert_eq!(
                        reduced.force_of(&w).unwrap(),
                        nh.force_of(&w).unwrap(),
                        "reduction force n={n} order={order}"
                    );
                    let report = reduced.balance_check(&w).unwrap();
                    assert_eq!(
                        report.residual,
                        rat(0, 1),
                        "reduced balance n={n} order={order}"
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_10_mutation_sensitivity() {
    criterion(10, "each flipped sign constant breaks a downstream check", || {
        // (-1)^{n-i} in the traction density: flipping it flips the
        // boundary term, so balance fails on the 1-d worked example
        let b = BoxDomain::<Rat>::unit(1);
        let mut s = StressDensity::zero(1, 1, b.clone());
        s.set(1, NonDecreasingIndex::new(1, vec![1]).unwrap(), Polynomial::one(1))
            .unwrap();
        let w = SectionField::new(b.clone(), vec![x(1, 1)]).unwrap();
        let report = s.balance_check(&w).unwrap();
        assert_eq!(report.residual, rat(0, 1));
        assert!(report.boundary_term != rat(0, 1));
        let flipped_residual =
            report.lhs.clone() - report.body_term.clone() + report.boundary_term.clone();
        assert!(flipped_residual != rat(0, 1), "flipping (-1)^(n-i) went unnoticed");

        // (-1)^{n-1} in the Cauchy formula: in even dimension the flipped
        // surface traction differs from the primed-convention one
        let b2 = BoxDomain::<Rat>::unit(2);
        let s2 = dense_stress(&b2, 1, 5, 2);
        let traction = s2.traction_stress().unwrap();
        let primed = s2.traction_stress_primed().unwrap();
        let w2 = dense_section(&b2, 1, 3, 2);
        let mut nonzero_face = false;
        for face in b2.faces() {
            let correct = traction.surface_traction(&face).unwrap();
            // flipping (-1)^{n-1} to (-1)^n negates every component
            let flipped_power = -correct.power(&w2).unwrap();
            let primed_power = primed.surface_traction(&face).unwrap().power(&w2).unwrap();
            if !correct.power(&w2).unwrap().is_zero() {
                nonzero_face = true;
                assert!(
                    flipped_power != primed_power,
                    "flipping (-1)^(n-1) went unnoticed on face {face}"
                );
            }
        }
        assert!(nonzero_face, "mutation witness had all-zero face powers");

        // (-1)^{n-p+1} in the smooth boundary formula: the flipped density
        // current disagrees with T(dψ) on the 1/36 witness
        let omega = FormField::monomial(2, inc(2, &[1]), x(2, 2)).unwrap();
        let t = SmoothCurrent::from_left_density(omega.clone(), b2.clone()).unwrap();
        let bump = TestForm::compactified(FormField::scalar(Polynomial::one(2)), &b2).unwrap();
        let direct = t.act_form(&bump.form().ext_derivative().unwrap()).unwrap();
        let flipped = t.boundary().unwrap().scale(&rat(-1, 1));
        assert!(direct != rat(0, 1));
        assert!(
            flipped.act(&bump).unwrap() != direct,
            "flipping (-1)^(n-p+1) went unnoticed"
        );

        // (-1)^{pq} in the contraction-order relation: a witness with both
        // sides nonzero and pq odd
        let theta = AltForm::<Rat>::basis(2, inc(2, &[1, 2])).unwrap();
        let eta = MultiVector::<Rat>::basis(2, inc(2, &[2])).unwrap();
        let right = contract_right(&theta, &eta).unwrap();
        let left = contract_left(&eta, &theta).unwrap();
        assert!(!right.is_zero());
        assert_eq!(right, left.scale(&rat(-1, 1)));
        assert!(right != left, "flipping (-1)^(pq) went unnoticed");

        // and the wedge counterpart (ξ ∧ T vs T ∧ ξ) on a 1-current
        let t1 = SmoothCurrent::from_left_density(
            FormField::monomial(2, inc(2, &[1]), Polynomial::one(2)).unwrap(),
            b2.clone(),
        )
        .unwrap();
        let xi = MultiVectorField::basis(2, inc(2, &[1])).unwrap();
        let lhs = t1.wedge_vector_left(&xi).unwrap();
        let rhs = t1.wedge_vector_right(&xi).unwrap();
        let probe = FormField::monomial(2, inc(2, &[1, 2]), Polynomial::one(2)).unwrap();
        assert!(lhs.act_form(&probe).unwrap() != rat(0, 1));
        assert_eq!(
            lhs.act_form(&probe).unwrap(),
            -rhs.act_form(&probe).unwrap()
        );
    });
}
