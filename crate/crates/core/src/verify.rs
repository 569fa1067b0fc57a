//! The acceptance suite: ten numbered criteria replaying the worked
//! examples and law-level properties, each with an explicit tolerance
//! (exact) and a wall-clock budget. The CLI's verify-paper subcommand and
//! the acceptance test target both run through here.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{classify, revalidate_counterexample, ClassStatus, Counterexample, Guards, RingClass};
use crate::extend::companion::{evaluate_hom, universal_matrix, UniversalMatrix};
use crate::extend::ex11::ex11_certificate;
use crate::extend::lift::lift_det_zero;
use crate::extend::nu::nu_enumerate;
use crate::extend::pell::pell_simple_extendable;
use crate::extend::smith::simple_extension_snf;
use crate::extend::ExtWitness;
use crate::matrix::{theta, Mat2};
use crate::ring::{RElem, RingSpec};
use crate::statements::witnesses::{
    c14_witness, c9_extension, cr3_witness, th5_8_witness, EqInputs, EqWitness,
};
use crate::statements::{verify_th8_chain, ChainSample};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub wall_ms: u128,
    pub limit_ms: u128,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {:<22} {:>7} ms (limit {:>6}) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.wall_ms,
            self.limit_ms,
            self.detail
        )
    }
}

struct Runner {
    results: Vec<CriterionResult>,
}

impl Runner {
    fn run(
        &mut self,
        id: u8,
        name: &'static str,
        limit_ms: u128,
        f: impl FnOnce() -> Result<String, String>,
    ) {
        let start = Instant::now();
        let outcome = f();
        let wall_ms = start.elapsed().as_millis();
        let (mut passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if wall_ms > limit_ms {
            passed = false;
        }
        self.results.push(CriterionResult { id, name, passed, wall_ms, limit_ms, detail });
    }
}

/// Named subsets for `verify-paper --only`.
pub fn criterion_tag(id: u8) -> &'static str {
    match id {
        1 => "sec5",
        2 => "nu",
        3 => "snf",
        4 => "chain",
        5 => "lift",
        6 => "ex11",
        7 => "symbolic",
        8 => "witness",
        9 => "pell",
        10 => "classes",
        _ => "",
    }
}

pub fn run_acceptance(only: Option<&str>) -> Vec<CriterionResult> {
    let mut r = Runner { results: Vec::new() };
    let want = |id: u8| only.is_none_or(|tag| tag == criterion_tag(id));

    if want(1) {
        r.run(1, "sec5 regression", 1_000, criterion_sec5);
    }
    if want(2) {
        r.run(2, "nu-set laws", 5_000, criterion_nu);
    }
    if want(3) {
        r.run(3, "constructive SE2 on Z", 10_000, criterion_snf_random);
    }
    if want(4) {
        r.run(4, "TH8 chain suite", 60_000, criterion_chain);
    }
    if want(5) {
        r.run(5, "t-adic lifting", 5_000, criterion_lift);
    }
    if want(6) {
        r.run(6, "EX11 certificate", 10_000, criterion_ex11);
    }
    if want(7) {
        r.run(7, "symbolic identities", 2_000, criterion_symbolic);
    }
    if want(8) {
        r.run(8, "witness equations", 30_000, criterion_witness_eqs);
    }
    if want(9) {
        r.run(9, "Pell criterion", 10_000, criterion_pell);
    }
    if want(10) {
        r.run(10, "class-lab sanity", 120_000, criterion_classes);
    }
    r.results
}

fn z() -> RingSpec {
    RingSpec::Integers
}

fn fail(msg: impl Into<String>) -> Result<String, String> {
    Err(msg.into())
}

/// Criterion 1: the four displayed extensions have exact determinant 1,
/// theta recovers A, and the third has nu = 149; the second is the e = 1
/// family for (a, b) = (6, -10) with d = -15.
fn criterion_sec5() -> Result<String, String> {
    let zr = z();
    let cases: [([i64; 4], (i64, i64, i64, i64), [i64; 9]); 3] = [
        ([0, 3, 2, 6], (1, -1, 1, -1), [0, 3, -1, 2, 6, -1, 1, 1, 0]),
        ([15, 6, 10, 14], (-1, -2, -1, 1), [15, 6, -2, 10, 14, 1, -1, -1, 0]),
        ([30, 42, 70, 105], (-3, 1, 1, -1), [30, 42, 1, 70, 105, 3, 1, 1, 0]),
    ];
    for (entries, (e, f, s, t), displayed) in cases {
        let a = Mat2::from_ints(&zr, entries);
        let w = ExtWitness::from_parts(
            &a,
            zr.from_int(e),
            zr.from_int(f),
            zr.from_int(s),
            zr.from_int(t),
            zr.zero(),
        )
        .map_err(|e| format!("case {entries:?}: {e}"))?;
        if w.aplus != crate::matrix::Mat3::from_ints(&zr, displayed) {
            return fail(format!("assembled extension differs from the displayed one for {entries:?}"));
        }
        if theta(&w.aplus).map_err(|e| e.to_string())? != a {
            return fail(format!("theta mismatch for {entries:?}"));
        }
    }
    // (2): the e = 1 family, displayed border (-1, e=1, s=1, t=-1)
    let a2 = Mat2::from_ints(&zr, [6, -10, 0, -15]);
    let w2 = ExtWitness::from_parts(
        &a2,
        zr.from_int(1),
        zr.from_int(-1),
        zr.from_int(1),
        zr.from_int(-1),
        zr.zero(),
    )
    .map_err(|e| format!("sec5(2): {e}"))?;
    if !w2.simple {
        return fail("sec5(2) witness not simple");
    }
    let c9 = c9_extension(&a2, 25).map_err(|e| e.to_string())?;
    match c9 {
        Some(EqWitness::C9(w)) if w.e == zr.one() => {}
        other => return fail(format!("sec5(2) e=1 route failed: {other:?}")),
    }
    // (3): nu = 149
    let a3 = Mat2::from_ints(&zr, [15, 6, 10, 14]);
    let w3 = ExtWitness::from_parts(
        &a3,
        zr.from_int(-1),
        zr.from_int(-2),
        zr.from_int(-1),
        zr.from_int(1),
        zr.zero(),
    )
    .map_err(|e| e.to_string())?;
    let nu = w3.nu(&a3).map_err(|e| e.to_string())?;
    if nu != zr.from_int(149) {
        return fail(format!("nu of sec5(3) is {nu}, expected 149"));
    }
    Ok("4 displayed extensions verified, nu(3) = 149".into())
}

/// Criterion 2: nu laws for Diag(7,11) and Diag(1,5), including equality
/// with an independent brute-force oracle on the box.
fn criterion_nu() -> Result<String, String> {
    let zr = z();
    let a = Mat2::from_ints(&zr, [7, 0, 0, 11]);
    let bound = 40i64;
    let nus = nu_enumerate(&a, bound).map_err(|e| e.to_string())?;
    let four = BigInt::from(4);
    for v in &nus.values {
        if !v.is_multiple_of(&four) {
            return fail(format!("nu value {v} is not a multiple of 4"));
        }
    }
    // independent oracle: plain quadruple loop over the box
    let mut oracle = std::collections::BTreeSet::new();
    for e in -bound..=bound {
        for f in -bound..=bound {
            for s in -bound..=bound {
                for t in -bound..=bound {
                    if 7 * e * s + 11 * f * t == 1 {
                        oracle.insert(BigInt::from(77 + e * s + f * t));
                    }
                }
            }
        }
    }
    if nus.values != oracle {
        return fail("box channel disagrees with the brute-force oracle");
    }
    // the realizable members of {0, +-4, ..., +-40} are all present
    for k in -10i64..=10 {
        let v = BigInt::from(4 * k);
        if oracle.contains(&v) && !nus.values.contains(&v) {
            return fail(format!("missing realizable value {v}"));
        }
    }
    let p = nus.progression.ok_or("no progression channel for Diag(7,11)")?;
    if (p.offset.clone(), p.step.clone()) != (BigInt::zero(), four.clone()) {
        return fail(format!("Diag(7,11) progression is {}+{}Z, expected 4Z", p.offset, p.step));
    }
    let b = Mat2::from_ints(&zr, [1, 0, 0, 5]);
    let nus_b = nu_enumerate(&b, 20).map_err(|e| e.to_string())?;
    let p = nus_b.progression.ok_or("no progression channel for Diag(1,5)")?;
    if (p.offset.clone(), p.step.clone()) != (BigInt::from(2), four) {
        return fail(format!("Diag(1,5) progression is {}+{}Z, expected 2+4Z", p.offset, p.step));
    }
    Ok(format!("{} box values match the oracle; progressions 4Z and 2+4Z", nus.values.len()))
}

fn random_unimodular(rng: &mut ChaCha8Rng, span: i64) -> Mat2 {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-span..=span));
        let g = e
            .iter()
            .fold(BigInt::zero(), |acc, &v| acc.gcd(&BigInt::from(v)));
        if g.is_one() {
            return Mat2::from_ints(&z(), e);
        }
    }
}

/// Criterion 3: SNF route on 1000 random unimodular matrices with entries
/// up to 10^6.
fn criterion_snf_random() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EC5_0001);
    for i in 0..1000 {
        let a = random_unimodular(&mut rng, 1_000_000);
        let w = simple_extension_snf(&a).map_err(|e| format!("case {i}: {e}"))?;
        if !w.simple {
            return fail(format!("case {i}: witness not simple"));
        }
        // validate() already ran in the constructor; re-check theta
        if theta(&w.aplus).map_err(|e| e.to_string())? != a {
            return fail(format!("case {i}: theta mismatch"));
        }
    }
    Ok("1000 random matrices extended through the Smith route".into())
}

/// Criterion 4: exhaustive TH8 chain over Z/n for n in 2..=12.
fn criterion_chain() -> Result<String, String> {
    let mut checked = 0u64;
    for n in 2..=12u32 {
        let rep = verify_th8_chain(&RingSpec::mod_n(n).unwrap(), ChainSample::All)
            .map_err(|e| e.to_string())?;
        if !rep.violations.is_empty() {
            return fail(format!("Z/{n}: {} chain violations", rep.violations.len()));
        }
        if !rep.all_ten_hold_everywhere {
            return fail(format!("Z/{n}: some statement fails on a unimodular matrix"));
        }
        checked += rep.checked;
    }
    Ok(format!("{checked} unimodular matrices, zero violations"))
}

/// Criterion 5: 100 random unimodular matrices with 5 | det, five lifting
/// steps each, moduli doubling checked exactly.
fn criterion_lift() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11F7_0005);
    let mut produced = 0;
    while produced < 100 {
        let a = random_unimodular(&mut rng, 60);
        let det = match a.det().map_err(|e| e.to_string())? {
            RElem::Int(v) => v,
            _ => unreachable!(),
        };
        if !det.is_multiple_of(&BigInt::from(5)) {
            continue;
        }
        produced += 1;
        let seq = lift_det_zero(&a, 5, 5).map_err(|e| e.to_string())?;
        seq.validate().map_err(|e| e.to_string())?;
        // explicit modulus-doubling check
        let mut modulus = BigInt::from(5);
        for step in &seq.steps[1..] {
            modulus = &modulus * &modulus;
            let d = match step.det().map_err(|e| e.to_string())? {
                RElem::Int(v) => v,
                _ => unreachable!(),
            };
            if !d.is_multiple_of(&modulus) {
                return fail(format!("det {d} not divisible by {modulus}"));
            }
        }
    }
    Ok("100 lift sequences with exact modulus doubling".into())
}

/// Criterion 6: EX11 certificates for k in {1, 2, 3} with the box-10
/// consistency search finding nothing.
fn criterion_ex11() -> Result<String, String> {
    for k in 1..=3u64 {
        let cert = ex11_certificate(k, 10).map_err(|e| e.to_string())?;
        if !cert.conclusive() {
            return fail(format!("k = {k}: certificate inconclusive"));
        }
        if !cert.two_irreducible {
            return fail(format!("k = {k}: 2 not certified irreducible"));
        }
        if cert.divides_one_minus_w || cert.divides_one_plus_w {
            return fail(format!("k = {k}: 2 divides 1 -/+ w"));
        }
        if cert.search_found_witness {
            return fail(format!("k = {k}: box search found a witness"));
        }
    }
    Ok("k in {1,2,3}: det 0, 2 irreducible, 2 divides neither 1-w nor 1+w, empty box".into())
}

/// Criterion 7: the E = L D R identity, F specialized to E, and 100
/// random companion evaluations.
fn criterion_symbolic() -> Result<String, String> {
    let (l, rr) = crate::extend::companion::e_from_d_factors();
    let d = universal_matrix(UniversalMatrix::D);
    let e = universal_matrix(UniversalMatrix::E);
    let f = universal_matrix(UniversalMatrix::F);
    if l.mul(&d).map_err(|e| e.to_string())?.mul(&rr).map_err(|e| e.to_string())? != e {
        return fail("E != L D R in Z[x,y,z]");
    }
    let ring = RingSpec::PolyZ3;
    use crate::ring::poly::Poly3;
    let img_z = Poly3::constant(2)
        .mul(&Poly3::var_z())
        .sub(&Poly3::var_y().mul(&Poly3::var_z()).mul(&Poly3::var_z()));
    let images = [
        RElem::Poly(Poly3::var_x()),
        RElem::Poly(Poly3::var_y()),
        RElem::Poly(img_z),
    ];
    if evaluate_hom(&f, &ring, &images).map_err(|e| e.to_string())? != e {
        return fail("F under z -> 2z - yz^2 is not E");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x57B0_0007);
    for i in 0..100 {
        let a = random_unimodular(&mut rng, 100);
        // the constructor verifies D = UniversalMatrix::D at phi exactly
        crate::extend::companion::companion_test_matrix(&a)
            .map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok("symbolic identities exact; 100 companion evaluations agree".into())
}

/// Criterion 8: the three witness equations on 200 random small inputs
/// each, with exact residual checks.
fn criterion_witness_eqs() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE9_0008);
    let pick = |rng: &mut ChaCha8Rng| BigInt::from(rng.gen_range(-20i64..=20));
    let mut done = 0;
    while done < 200 {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let (c, d) = (pick(&mut rng), pick(&mut rng));
        if !crate::ring::egcd(&a, &b).0.is_one() || !crate::ring::egcd(&c, &d).0.is_one() {
            continue;
        }
        done += 1;
        let w = th5_8_witness(&a, &b, &c, &d, 25).map_err(|e| {
            format!("th5_8({a},{b},{c},{d}): {e}")
        })?;
        w.revalidate(&EqInputs::Th5_8 { a, b, c, d }).map_err(|e| e.to_string())?;
    }
    for i in 0..200 {
        let (a, b, s) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let w = cr3_witness(&a, &b, &s, 25)
            .map_err(|e| format!("cr3({a},{b},{s}) case {i}: {e}"))?;
        w.revalidate(&EqInputs::Cr3 { a, b, s }).map_err(|e| e.to_string())?;
    }
    let mut done = 0;
    while done < 200 {
        let (a, u, t) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if u.is_zero() {
            continue;
        }
        done += 1;
        let w = c14_witness(&a, &u, &t, 25).map_err(|e| format!("c14({a},{u},{t}): {e}"))?;
        w.revalidate(&EqInputs::C14 { a, u, t }).map_err(|e| e.to_string())?;
    }
    Ok("600 witness equations solved with zero residuals".into())
}

/// Criterion 9: Pell witnesses for 100 random symmetric det-0 unimodular
/// matrices u * (g,h)^T (g,h) with a unit among g, h (the shape the Pell
/// equation requires over Z).
fn criterion_pell() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9E11_0009);
    for i in 0..100 {
        let u: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut g: i64 = rng.gen_range(-50..=50);
        if g == 0 {
            g = 1;
        }
        let h: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let (g, h) = if rng.gen_bool(0.5) { (g, h) } else { (h, g) };
        let a = Mat2::from_ints(&z(), [u * g * g, u * g * h, u * g * h, u * h * h]);
        let w = pell_simple_extendable(&a, 64)
            .map_err(|e| format!("case {i}: {e}"))?
            .ok_or_else(|| format!("case {i}: no Pell witness for {a}"))?;
        w.witness.validate(&a).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok("100 Pell witnesses found and validated".into())
}

/// Criterion 10: classify Z/n for n in 2..=16 over the seven sanity
/// classes, confirm the TH3(1) containments, and exercise counterexample
/// revalidation with an injected fake.
fn criterion_classes() -> Result<String, String> {
    let classes = [
        RingClass::Pi2,
        RingClass::SE2,
        RingClass::E2,
        RingClass::Z2,
        RingClass::WZ2,
        RingClass::U2,
        RingClass::V2,
    ];
    for n in 2..=16u32 {
        let spec = RingSpec::mod_n(n).unwrap();
        let rep = classify(&spec, &classes, &Guards::default()).map_err(|e| e.to_string())?;
        for c in classes {
            if rep.statuses[&c] != ClassStatus::Member {
                return fail(format!("Z/{n} failed membership in {c:?}"));
            }
        }
        // TH3(1) containments on the computed verdicts
        let member = |c: RingClass| rep.statuses[&c] == ClassStatus::Member;
        if member(RingClass::E2) && !member(RingClass::WZ2) {
            return fail(format!("Z/{n}: E2 member but not WZ2"));
        }
        if member(RingClass::SE2) && !member(RingClass::Z2) {
            return fail(format!("Z/{n}: SE2 member but not Z2"));
        }
    }
    // negative control: a fabricated non-member verdict must be exposed
    let spec = RingSpec::mod_n(6).unwrap();
    let fake = Counterexample::Matrix(Mat2::from_ints(&spec, [1, 0, 0, 1]));
    let genuine = revalidate_counterexample(&spec, RingClass::SE2, &fake)
        .map_err(|e| e.to_string())?;
    if genuine {
        return fail("fake counterexample passed revalidation");
    }
    Ok("Z/2..Z/16 memberships, TH3(1) containments, fake counterexample rejected".into())
}
