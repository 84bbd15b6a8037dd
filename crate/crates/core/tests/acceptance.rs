//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p discknot-core --test acceptance`. Criterion 8
//! is diagnostic and prints WARN instead of failing the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use discknot_core::invariants::{elimination_resultant, milnor, milnor_oracle, normal_form, sigma, ArnoldFamily, GermPQ};
use discknot_core::newton::XBranch;
use discknot_core::pipeline::{
    admissible_m, analyze, build_curve, classify, numeric_validate, select_perturbation, verify_family,
    AnalysisConfig, BundleStatus, Case, DiscriminantReport, NumericOptions, QChoice, Unfolding, VerdictStatus,
};
use discknot_core::poly::{int, rat, resultant_y_formal, BiPoly, Order, Rat, UniPoly, Var, YPoly};
use discknot_core::presenter::{
    abelianization, bp_diagram, hom_count, hom_count_exhaustive, presentation, squares, todd_coxeter, to_plain,
    RelatorKind, Word, DEFAULT_COSET_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_d15c;
const ELIMINATION_SAMPLES: usize = 64;
const ELIMINATION_MAX_DEGREE: u32 = 12;
const ELIMINATION_BUDGET: Duration = Duration::from_secs(5);
const SIGMA_UNITS_PER_CASE: usize = 10;
const SIGMA_BUDGET: Duration = Duration::from_secs(5);
const BRANCH_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_BUDGET: Duration = Duration::from_secs(300);
const PRESENTER_BUDGET: Duration = Duration::from_secs(30);
const SLOPE_TOLERANCE: f64 = 0.02;
const NU_RANGE: std::ops::RangeInclusive<u32> = 2..=12;
/// Order of the squares quotient for ν = 2, frozen from the enumerator.
const NU2_SQUARES_ORDER: usize = 192;

fn samples() -> [Rat; 3] {
    [int(0), rat(1, 10), rat(1, 100)]
}

fn x(e: u32) -> UniPoly {
    UniPoly::power_of_var(Var::X, e)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=6))
}

fn random_poly(rng: &mut ChaCha8Rng, min_ord: u32, max_deg: u32) -> UniPoly {
    let deg = rng.gen_range(min_ord..=max_deg);
    UniPoly::from_terms(Var::X, (min_ord..=deg).map(|e| (e, random_rat(rng))))
}

fn random_unit(rng: &mut ChaCha8Rng) -> UniPoly {
    let mut u = random_poly(rng, 1, 6);
    let mut c = random_rat(rng);
    while c == int(0) {
        c = random_rat(rng);
    }
    u.add_term(0, c);
    u
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn timed(budget: Duration, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = run();
    let elapsed = start.elapsed();
    if elapsed > budget {
        out.pass = false;
        out.detail.push_str(&format!("; over budget {budget:?}"));
    }
    out.detail.push_str(&format!(" [{:.2} s]", elapsed.as_secs_f64()));
    out
}

fn elimination_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for k in 0..ELIMINATION_SAMPLES {
        let p = random_poly(&mut rng, 0, ELIMINATION_MAX_DEGREE);
        let q = random_poly(&mut rng, 0, ELIMINATION_MAX_DEGREE);
        let dp = p.derivative();
        let dq = q.derivative();
        let closed = &BiPoly::from_uni(&dq.pow(2)).scale(&int(3)) - &BiPoly::from_uni(&(&p * &dp.pow(2)));
        let f_y = YPoly::new(vec![-BiPoly::from_uni(&p), BiPoly::zero(), BiPoly::constant(int(3))]);
        let f_x = YPoly::new(vec![BiPoly::from_uni(&dq), -BiPoly::from_uni(&dp)]);
        if resultant_y_formal(&f_y, &f_x, 2, 1) != closed {
            bad.push(k);
        }
        // the same identity through the germ API, constant terms dropped
        let vanishing = |f: &UniPoly| f - &UniPoly::constant(Var::X, f.coeff(0));
        if let Ok(g) = GermPQ::new(vanishing(&p), vanishing(&q)) {
            if milnor(&g) != milnor_oracle(&g) || elimination_resultant(&g) != BiPoly::from_uni(&g.milnor_polynomial()) {
                bad.push(k);
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{ELIMINATION_SAMPLES} random (P, Q), degree <= {ELIMINATION_MAX_DEGREE}, mismatches {bad:?}"),
    )
}

fn sigma_constancy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 2..=6 {
        for i in 1..=4 {
            for _ in 0..SIGMA_UNITS_PER_CASE {
                let fam = ArnoldFamily::Jki { k, i, unit: random_unit(&mut rng), truncation: 3 * k + i + 8 };
                let s = sigma(&normal_form(&fam).unwrap());
                checked += 1;
                if s != Order::Finite(2 * k) {
                    bad.push(format!("J({k},{i}) sigma {s}"));
                }
            }
        }
        for _ in 0..SIGMA_UNITS_PER_CASE {
            let fam = ArnoldFamily::E6k1 { k, unit: random_unit(&mut rng), truncation: 3 * k + 8 };
            let s = sigma(&normal_form(&fam).unwrap());
            checked += 1;
            if s != Order::Finite(2 * k + 1) {
                bad.push(format!("E({}) sigma {s}", 6 * k + 1));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} normal forms, failures {bad:?}"))
}

fn table_reproduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut bad = Vec::new();
    let mut checked = 0;
    for nu in NU_RANGE {
        for sig in 1..=nu + 2 {
            let mut s = random_rat(&mut rng);
            while s == int(0) {
                s = random_rat(&mut rng);
            }
            let p0 = x(sig).scale(&s);
            let q0 = x(nu + 1);
            let u = Unfolding::new(GermPQ::new(p0.clone(), q0.clone()).unwrap(), x(1), UniPoly::zero(Var::X), s.clone()).unwrap();
            let curve = build_curve(&u).unwrap();
            let dp0 = p0.derivative();
            let dq0 = q0.derivative();
            let rows = [
                &dq0.pow(2).scale(&int(3)) - &(&p0 * &dp0.pow(2)),
                &-&(&x(1) * &dp0.pow(2)) - &(&p0 * &dp0).scale(&int(2)),
                &-&p0 - &(&x(1) * &dp0).scale(&int(2)),
                -&x(1),
            ];
            let orders = [(2 * nu).min(3 * sig - 2), 2 * sig - 1, sig, 1].map(Order::Finite);
            checked += 1;
            for (i, row) in rows.iter().enumerate() {
                if &curve.t_coeff(i as u32) != row {
                    bad.push(format!("nu={nu} sigma={sig} row {i} differs"));
                }
                if row.ord() != orders[i] {
                    bad.push(format!("nu={nu} sigma={sig} s={s} row {i} order {} != {}", row.ord(), orders[i]));
                }
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} curves, failures {bad:?}"))
}

fn run_family(nu: u32, m: u32, choice: QChoice, s: &Rat) -> Result<DiscriminantReport, String> {
    let fam = select_perturbation(nu, m, choice).map_err(|e| e.to_string())?;
    let u = fam.at(s).map_err(|e| e.to_string())?;
    analyze(&u, AnalysisConfig::default()).map_err(|e| e.to_string())
}

fn branch_structure() -> Outcome {
    let mut bad = Vec::new();
    let mut runs = 0;
    for nu in NU_RANGE {
        let want = if classify(nu).case == Case::A { 2 } else { 4 };
        let lambda = rat(3, 2 * nu as i64 - 1);
        for m in admissible_m(nu) {
            let mut seen = Vec::new();
            for s in samples() {
                runs += 1;
                match run_family(nu, m, QChoice::Default, &s) {
                    Ok(r) => {
                        let lambdas: Vec<Rat> = r.faces.iter().map(|f| f.lambda.clone()).collect();
                        if r.branch_count() != want || lambdas != [lambda.clone()] {
                            bad.push(format!("nu={nu} m={m} s={s}: {} branches, lambdas {lambdas:?}", r.branch_count()));
                        }
                        seen.push((r.branch_count(), lambdas));
                    }
                    Err(e) => bad.push(format!("nu={nu} m={m} s={s}: {e}")),
                }
            }
            if seen.windows(2).any(|w| w[0] != w[1]) {
                bad.push(format!("nu={nu} m={m}: data vary with s"));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{runs} runs, failures {bad:?}"))
}

fn nonzero_pieces(r: &DiscriminantReport) -> impl Iterator<Item = &discknot_core::pipeline::BranchPiece> {
    r.pieces.iter().filter(|p| matches!(p.branch, XBranch::Puiseux(_)))
}

fn u_exponents() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for nu in NU_RANGE.chain([14]) {
        let label = classify(nu);
        let m = *admissible_m(nu).start();
        for s in samples() {
            let r = match run_family(nu, m, QChoice::Default, &s) {
                Ok(r) => r,
                Err(e) => {
                    bad.push(format!("nu={nu} s={s}: {e}"));
                    continue;
                }
            };
            checked += 1;
            let lead = rat(3 * nu as i64 + 3, 2 * nu as i64 - 1);
            match label.case {
                Case::A => {
                    for p in nonzero_pieces(&r) {
                        if p.u.leading_exponent.as_ref() != Some(&lead) {
                            bad.push(format!("A nu={nu} s={s}: leading {:?}", p.u.leading_exponent));
                        }
                    }
                }
                Case::B => {
                    let e = label.e.unwrap();
                    if lead.denom() != &e.into() {
                        bad.push(format!("B nu={nu}: exponent {lead} denominator != e = {e}"));
                    }
                    for p in nonzero_pieces(&r) {
                        if p.u.leading_exponent.as_ref() != Some(&lead) || p.u.denominator_cert != e {
                            bad.push(format!("B nu={nu} s={s}: cert {} leading {:?}", p.u.denominator_cert, p.u.leading_exponent));
                        }
                    }
                    let acc = &r.verdict.accounting;
                    if !(acc.holds && acc.total == 1 + 3 * e && acc.mu == Order::Finite(2 * nu)) {
                        bad.push(format!("B nu={nu} s={s}: accounting {} vs mu {}", acc.total, acc.mu));
                    }
                }
                Case::C => {
                    let d = 6 * label.rho.unwrap() as i64 + 3;
                    let pair = [rat(nu as i64 + 1, d), rat(nu as i64 + 2, d)];
                    for p in nonzero_pieces(&r) {
                        if p.u.essential_exponents != pair {
                            bad.push(format!("C nu={nu} s={s}: essential {:?}", p.u.essential_exponents));
                        }
                    }
                    if r.verdict.status != VerdictStatus::Reduced {
                        bad.push(format!("C nu={nu} s={s}: modified perturbation {:?}", r.verdict.status));
                    }
                    match run_family(nu, m, QChoice::Zero, &s) {
                        Ok(r) if r.verdict.status == VerdictStatus::NotReduced => {}
                        Ok(r) => bad.push(format!("C nu={nu} s={s}: unmodified {:?}", r.verdict.status)),
                        Err(e) => bad.push(format!("C nu={nu} s={s}: unmodified {e}")),
                    }
                }
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} reports, failures {bad:?}"))
}

fn family_sweep() -> Outcome {
    let s = samples();
    let mut failed = Vec::new();
    let mut families = 0;
    for nu in NU_RANGE {
        for m in admissible_m(nu) {
            families += 1;
            match verify_family(nu, m, &s, QChoice::Default, AnalysisConfig::default()) {
                Ok(b) if b.status == BundleStatus::Pass => {}
                Ok(b) => {
                    let first = b.failures.first().cloned().unwrap_or_default();
                    failed.push(format!("({nu},{m}) {:?} case {}: {first}", b.status, b.case()));
                }
                Err(e) => failed.push(format!("({nu},{m}): {e}")),
            }
        }
    }
    Outcome::new(
        failed.is_empty(),
        format!("{} of {families} families pass; failing {failed:?}", families - failed.len()),
    )
}

// Not a gate: the case-B families rerun with q = x^{(ν+4)/3}, which breaks
// the x ↦ ωx symmetry that makes the q = 0 discriminant non-reduced.
fn case_b_with_modified_q() -> Outcome {
    let s = samples();
    let mut failed = Vec::new();
    let mut families = 0;
    for nu in NU_RANGE.filter(|&nu| classify(nu).case == Case::B) {
        for m in admissible_m(nu) {
            families += 1;
            let k = (nu + 4) / 3;
            match verify_family(nu, m, &s, QChoice::Monomial(k), AnalysisConfig::default()) {
                Ok(b) if b.status == BundleStatus::Pass => {}
                Ok(b) => failed.push(format!("({nu},{m}) {:?}", b.failures)),
                Err(e) => failed.push(format!("({nu},{m}): {e}")),
            }
        }
    }
    Outcome::new(
        failed.is_empty(),
        format!("{} of {families} case-B families pass with q = x^((nu+4)/3); failing {failed:?}", families - failed.len()),
    )
}

fn presentation_oracles() -> Outcome {
    let mut bad = Vec::new();
    let p1 = presentation(&bp_diagram(1).unwrap());
    if to_plain(&p1) != "<t1,t2 | t1 t2 t1 = t2 t1 t2>" {
        bad.push(format!("nu=1 presentation {}", to_plain(&p1)));
    }
    let sq = |n: usize| -> Vec<Word> { squares(n).iter().map(|r| r.word()).collect() };
    let t = todd_coxeter(&p1, &sq(2), &[], DEFAULT_COSET_CAP).unwrap();
    if !t.is_complete() || t.coset_count() != 6 {
        bad.push(format!("nu=1 squares quotient {:?} {}", t.status, t.coset_count()));
    }
    let p2 = presentation(&bp_diagram(2).unwrap());
    let t2 = todd_coxeter(&p2, &sq(4), &[], DEFAULT_COSET_CAP).unwrap();
    if !t2.is_complete() || t2.coset_count() != NU2_SQUARES_ORDER {
        bad.push(format!("nu=2 squares quotient {:?} {}", t2.status, t2.coset_count()));
    }
    let no_tri = todd_coxeter(&p2.without_kind(RelatorKind::Triangle), &sq(4), &[], 4 * NU2_SQUARES_ORDER).unwrap();
    if no_tri.is_complete() && no_tri.coset_count() < t2.coset_count() {
        bad.push("dropping triangle relators shrank the quotient".into());
    }
    for n in [3, 4] {
        if hom_count(&p2, n).ok() != hom_count_exhaustive(&p2, n).ok() {
            bad.push(format!("hom counts into S{n} disagree"));
        }
    }
    for nu in 1..=10u32 {
        let d = bp_diagram(nu).unwrap();
        let p = presentation(&d);
        if !abelianization(&p).is_infinite_cyclic() {
            bad.push(format!("nu={nu} abelianization {:?}", abelianization(&p)));
        }
        let c = p.census();
        let n = 2 * nu as usize;
        let e = d.edges.len();
        let triangles = d.triangles().len();
        if e != 4 * nu as usize - 3 || triangles != 2 * (nu as usize - 1) {
            bad.push(format!("nu={nu}: {e} edges, {triangles} triangles"));
        }
        if (c.commute, c.braid, c.triangle) != (n * (n - 1) / 2 - e, e, triangles) {
            bad.push(format!("nu={nu} census {c:?}"));
        }
    }
    Outcome::new(bad.is_empty(), format!("failures {bad:?}"))
}

fn numeric_cross_check() -> Outcome {
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    let opts = NumericOptions {
        tolerance: SLOPE_TOLERANCE,
        ..NumericOptions::default()
    };
    for nu in [2u32, 3, 5] {
        let m = *admissible_m(nu).start();
        for s in [int(0), rat(1, 10)] {
            let u = select_perturbation(nu, m, QChoice::Default).unwrap().at(&s).unwrap();
            let r = match analyze(&u, AnalysisConfig::default()) {
                Ok(r) => r,
                Err(e) => {
                    bad.push(format!("nu={nu} s={s}: {e}"));
                    continue;
                }
            };
            match numeric_validate(&u, &r, &opts) {
                Ok(d) => {
                    worst = worst.max(d.worst_deviation());
                    if !d.all_within_tolerance() || !d.zero_branch_exact {
                        bad.push(format!("nu={nu} s={s}: deviation {:.4}", d.worst_deviation()));
                    }
                }
                Err(e) => bad.push(format!("nu={nu} s={s}: {e}")),
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("worst relative slope deviation {worst:.4}, failures {bad:?}"))
}

fn main() -> ExitCode {
    let gates: [(&str, Duration, fn() -> Outcome); 7] = [
        ("1 elimination identity", ELIMINATION_BUDGET, elimination_identity),
        ("2 sigma on J(k,i) and E(6k+1)", SIGMA_BUDGET, sigma_constancy),
        ("3 coefficient table", Duration::MAX, table_reproduction),
        ("4 branch structure", BRANCH_BUDGET, branch_structure),
        ("5 u-exponents", Duration::MAX, u_exponents),
        ("6 mu-constant sweep", SWEEP_BUDGET, family_sweep),
        ("7 presentation oracles", PRESENTER_BUDGET, presentation_oracles),
    ];
    let mut failures = 0;
    for (name, budget, run) in gates {
        let out = timed(budget, run);
        println!("criterion {name}: {} {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        failures += usize::from(!out.pass);
    }
    let out = timed(Duration::MAX, case_b_with_modified_q);
    println!("note case B with modified q: {} {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
    let out = timed(Duration::MAX, numeric_cross_check);
    println!("criterion 8 numeric slopes: {} {}", if out.pass { "PASS" } else { "WARN" }, out.detail);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
