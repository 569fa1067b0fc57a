//! Deciding the ten per-matrix statements with machine-checkable
//! witnesses, and verifying the implication chain
//! 1<=>2<=>3<=>4 => 5<=>6<=>7<=>8 => 9 => 10 over finite rings.

pub mod finite;
pub mod integers;
pub mod witnesses;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extend::{eq8_value, ExtWitness, FullnessCert};
use crate::matrix::Mat2;
use crate::ring::{RElem, RingSpec};

use finite::FiniteCtx;

/// Search budgets for the infinite-ring routes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget {
    /// Box bound for (e,f,s,t)/(x,y,z,w) scans.
    pub box_bound: i64,
    /// Cap on |det| for the residue searches of statements 7 and 10.
    pub residue_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { box_bound: 25, residue_cap: 10_000 }
    }
}

/// Witness payloads, by statement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// Statement 1: M A N = Diag(1, det A).
    Equivalence { m: Mat2, n: Mat2 },
    /// Statement 2.
    SimpleExt(ExtWitness),
    /// Statement 3: (ae+cf, be+df) unimodular with cofactors (s, t).
    BorderPair { e: RElem, f: RElem, s: RElem, t: RElem },
    /// Statement 4: relation tuple plus the column-row factorization.
    NonFullRelation {
        x: RElem,
        y: RElem,
        z: RElem,
        w: RElem,
        col: (RElem, RElem),
        row: (RElem, RElem),
    },
    /// Statements 5 and 9: the relation tuple.
    Relation { x: RElem, y: RElem, z: RElem, w: RElem },
    /// Statements 6 and 8: the companion matrix B.
    CompanionZero { b: Mat2 },
    /// Statements 7 and 10: the congruent matrix C.
    Congruent { c: Mat2 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FailCert {
    /// Finite ring: the whole quantifier space was enumerated.
    Exhausted { space: u64 },
    /// Quadratic ring: irreducibility obstruction (full matrix).
    Fullness(FullnessCert),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Status {
    Holds(Witness),
    Fails(FailCert),
    Unknown { budget: u64 },
}

impl Status {
    pub fn holds(&self) -> bool {
        matches!(self, Status::Holds(_))
    }
}

/// Verdicts for one matrix across the ten statements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatementReport {
    pub ring: RingSpec,
    pub matrix: Mat2,
    pub delta: RElem,
    pub budget: Budget,
    pub statements: BTreeMap<u8, Status>,
}

/// Decides one statement for a unimodular matrix.
pub fn check_statement(a: &Mat2, k: u8, budget: &Budget) -> Result<Status> {
    if !(1..=10).contains(&k) {
        return Err(Error::Precondition(format!("statement index {k} out of range")));
    }
    match &a.ring {
        RingSpec::Integers => integers::check_statement_z(a, k, budget),
        RingSpec::Quadratic(_) => integers::check_statement_quadratic(a, k, budget),
        spec if spec.is_finite() => {
            let ctx = FiniteCtx::new(spec)?;
            check_statement_finite(&ctx, a, k)
        }
        other => Err(Error::UnsupportedRing(format!("statements over {other}"))),
    }
}

/// Decides all ten statements.
pub fn check_all_statements(a: &Mat2, budget: &Budget) -> Result<StatementReport> {
    if !a.is_unimodular()? {
        return Err(Error::NotUnimodular);
    }
    let mut statements = BTreeMap::new();
    if a.ring.is_finite() {
        let ctx = FiniteCtx::new(&a.ring)?;
        for k in 1..=10 {
            statements.insert(k, check_statement_finite(&ctx, a, k)?);
        }
    } else {
        for k in 1..=10 {
            statements.insert(k, check_statement(a, k, budget)?);
        }
    }
    Ok(StatementReport {
        ring: a.ring.clone(),
        matrix: a.clone(),
        delta: a.det()?,
        budget: *budget,
        statements,
    })
}

fn check_statement_finite(ctx: &FiniteCtx, a: &Mat2, k: u8) -> Result<Status> {
    let r = &ctx.ring;
    let ids = r
        .mat2_to_ids(a)
        .ok_or_else(|| Error::RingMismatch(a.ring.to_string()))?;
    if !r.is_unimodular(&ids) {
        return Err(Error::NotUnimodular);
    }
    let exhausted = || {
        Status::Fails(FailCert::Exhausted { space: (r.size as u64).pow(4) })
    };
    let elem = |id: u32| r.elem(id).clone();
    let quad = |v: &[u32; 4]| (elem(v[0]), elem(v[1]), elem(v[2]), elem(v[3]));
    Ok(match k {
        1 => match ctx.s1(&ids) {
            Some((m, n)) => Status::Holds(Witness::Equivalence {
                m: r.mat_to_mat2(&m),
                n: r.mat_to_mat2(&n),
            }),
            None => exhausted(),
        },
        2 => match ctx.s2(&ids) {
            Some(w) => {
                let (e, f, s, t) = quad(&w);
                Status::Holds(Witness::SimpleExt(ExtWitness::from_parts(
                    a,
                    e,
                    f,
                    s,
                    t,
                    a.ring.zero(),
                )?))
            }
            None => exhausted(),
        },
        3 => match ctx.s3(&ids) {
            Some(w) => {
                let (e, f, s, t) = quad(&w);
                Status::Holds(Witness::BorderPair { e, f, s, t })
            }
            None => exhausted(),
        },
        4 => match ctx.s4(&ids) {
            Some((v, fac)) => {
                let (x, y, z, w) = quad(&v);
                Status::Holds(Witness::NonFullRelation {
                    x,
                    y,
                    z,
                    w,
                    col: (elem(fac[0]), elem(fac[1])),
                    row: (elem(fac[2]), elem(fac[3])),
                })
            }
            None => exhausted(),
        },
        5 => match ctx.s5(&ids) {
            Some(v) => {
                let (x, y, z, w) = quad(&v);
                Status::Holds(Witness::Relation { x, y, z, w })
            }
            None => exhausted(),
        },
        6 => match ctx.s6(&ids) {
            Some(b) => Status::Holds(Witness::CompanionZero { b: r.mat_to_mat2(&b) }),
            None => exhausted(),
        },
        7 => match ctx.s7(&ids) {
            Some(c) => Status::Holds(Witness::Congruent { c: r.mat_to_mat2(&c) }),
            None => exhausted(),
        },
        8 => match ctx.s8(&ids) {
            Some(b) => Status::Holds(Witness::CompanionZero { b: r.mat_to_mat2(&b) }),
            None => exhausted(),
        },
        9 => match ctx.s9(&ids) {
            Some(v) => {
                let (x, y, z, w) = quad(&v);
                Status::Holds(Witness::Relation { x, y, z, w })
            }
            None => exhausted(),
        },
        10 => match ctx.s10(&ids) {
            Some(c) => Status::Holds(Witness::Congruent { c: r.mat_to_mat2(&c) }),
            None => exhausted(),
        },
        _ => unreachable!(),
    })
}

impl StatementReport {
    /// Every holds-status replayed through independent ring and matrix
    /// operations.
    pub fn revalidate(&self) -> Result<()> {
        for (&k, status) in &self.statements {
            if let Status::Holds(w) = status {
                revalidate_witness(&self.matrix, k, w)?;
            }
        }
        Ok(())
    }
}

/// Replays one witness against the statement's defining conditions.
pub fn revalidate_witness(a: &Mat2, k: u8, w: &Witness) -> Result<()> {
    let ring = &a.ring;
    let delta = a.det()?;
    let err = |msg: &str| Err(Error::Precondition(format!("statement {k}: {msg}")));
    match (k, w) {
        (1, Witness::Equivalence { m, n }) => {
            if !ring.is_unit(&m.det()?)? || !ring.is_unit(&n.det()?)? {
                return err("transform determinant not a unit");
            }
            let prod = m.mul(a)?.mul(n)?;
            let d = Mat2::diag(ring, ring.one(), delta)?;
            if prod != d {
                return err("M A N is not Diag(1, det)");
            }
            Ok(())
        }
        (2, Witness::SimpleExt(wit)) => wit.validate(a),
        (3, Witness::BorderPair { e, f, s, t }) => {
            let p = ring.add(&ring.mul(a.a(), e)?, &ring.mul(a.c(), f)?)?;
            let q = ring.add(&ring.mul(a.b(), e)?, &ring.mul(a.d(), f)?)?;
            if !ring.is_unimodular_tuple(&[p.clone(), q.clone()])? {
                return err("border pair not unimodular");
            }
            let comb = ring.add(&ring.mul(&p, s)?, &ring.mul(&q, t)?)?;
            if !ring.is_zero(&ring.sub(&comb, &ring.one())?)? {
                return err("cofactors do not combine to 1");
            }
            Ok(())
        }
        (4, Witness::NonFullRelation { x, y, z, w, col, row }) => {
            let lin = lin_comb(a, x, y, z, w)?;
            if !ring.is_zero(&ring.sub(&lin, &ring.one())?)? {
                return err("relation is not 1");
            }
            let expect = [
                ring.mul(&col.0, &row.0)?,
                ring.mul(&col.0, &row.1)?,
                ring.mul(&col.1, &row.0)?,
                ring.mul(&col.1, &row.1)?,
            ];
            if expect != [x.clone(), y.clone(), z.clone(), w.clone()] {
                return err("factorization does not match the relation matrix");
            }
            Ok(())
        }
        (5, Witness::Relation { x, y, z, w }) => {
            let lin = lin_comb(a, x, y, z, w)?;
            if !ring.is_zero(&ring.sub(&lin, &ring.one())?)? {
                return err("relation is not 1");
            }
            if ring.mul(x, w)? != ring.mul(y, z)? {
                return err("xw != yz");
            }
            Ok(())
        }
        (6 | 8, Witness::CompanionZero { b }) => {
            if !ring.is_zero(&b.det()?)? {
                return err("det(B) != 0");
            }
            let c = a.add(&b.scale(&delta)?)?;
            if !ring.is_zero(&c.det()?)? {
                return err("det(A + delta B) != 0");
            }
            if k == 6 && !(b.is_unimodular()? && c.is_unimodular()?) {
                return err("unimodularity required for statement 6");
            }
            Ok(())
        }
        (7 | 10, Witness::Congruent { c }) => {
            if !ring.is_zero(&c.det()?)? {
                return err("det(C) != 0");
            }
            for i in 0..4 {
                let diff = ring.sub(&c.entries()[i], &a.entries()[i])?;
                if !in_principal(ring, &diff, &delta)? {
                    return err("C not congruent to A mod det");
                }
            }
            if k == 7 && !c.is_unimodular()? {
                return err("C must be unimodular for statement 7");
            }
            Ok(())
        }
        (9, Witness::Relation { x, y, z, w }) => {
            let lin = lin_comb(a, x, y, z, w)?;
            let quad = ring.mul(&delta, &ring.sub(&ring.mul(x, w)?, &ring.mul(y, z)?)?)?;
            let val = ring.sub(&lin, &quad)?;
            if !ring.is_zero(&ring.sub(&val, &ring.one())?)? {
                return err("relation minus delta(xw-yz) is not 1");
            }
            Ok(())
        }
        _ => err("witness shape does not match the statement"),
    }
}

fn lin_comb(a: &Mat2, x: &RElem, y: &RElem, z: &RElem, w: &RElem) -> Result<RElem> {
    let ring = &a.ring;
    let mut acc = ring.mul(a.a(), x)?;
    acc = ring.add(&acc, &ring.mul(a.b(), y)?)?;
    acc = ring.add(&acc, &ring.mul(a.c(), z)?)?;
    ring.add(&acc, &ring.mul(a.d(), w)?)
}

/// Membership of v in the principal ideal (m).
fn in_principal(ring: &RingSpec, v: &RElem, m: &RElem) -> Result<bool> {
    match ring {
        RingSpec::Integers | RingSpec::Quadratic(_) | RingSpec::PolyZ3 => {
            if ring.is_zero(m)? {
                return ring.is_zero(v);
            }
            Ok(ring.divides(m, v)?.is_some())
        }
        spec if spec.is_finite() => {
            let fr = crate::finite::FiniteRing::new(spec)?;
            let (vi, mi) = (fr.id_of(v).unwrap(), fr.id_of(m).unwrap());
            Ok(fr.in_principal_ideal(vi, mi))
        }
        other => Err(Error::UnsupportedRing(other.to_string())),
    }
}

/// How the chain verifier samples Um(M2(R)).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainSample {
    All,
    Random { count: u32, seed: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainViolation {
    pub matrix: Mat2,
    pub statuses: [bool; 10],
    pub broken: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainReport {
    pub ring: RingSpec,
    pub reduced: bool,
    pub checked: u64,
    pub all_ten_hold_everywhere: bool,
    pub violations: Vec<ChainViolation>,
}

/// Checks every implication of the chain on each sampled unimodular
/// matrix. The implication 10 => 9 is asserted only on reduced rings.
pub fn verify_th8_chain(spec: &RingSpec, sample: ChainSample) -> Result<ChainReport> {
    let ctx = FiniteCtx::new(spec)?;
    let reduced = ctx.ring.is_reduced();
    let ids: Vec<usize> = match sample {
        ChainSample::All => ctx.unimodular_matrix_ids(),
        ChainSample::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count as usize);
            let total = ctx.mat_count();
            while out.len() < count as usize {
                let id = rng.gen_range(0..total);
                if ctx.ring.is_unimodular(&ctx.ring.mat_of_id(id)) {
                    out.push(id);
                }
            }
            out
        }
    };
    let mut violations = Vec::new();
    let mut all_hold = true;
    for &id in &ids {
        let a = ctx.ring.mat_of_id(id);
        let st = ctx.statuses(&a);
        if st.iter().any(|&b| !b) {
            all_hold = false;
        }
        let broken = broken_chain_links(&st, reduced);
        if !broken.is_empty() {
            violations.push(ChainViolation {
                matrix: ctx.ring.mat_to_mat2(&a),
                statuses: st,
                broken: broken.join(", "),
            });
        }
    }
    Ok(ChainReport {
        ring: spec.clone(),
        reduced,
        checked: ids.len() as u64,
        all_ten_hold_everywhere: all_hold,
        violations,
    })
}

/// Every implication of the chain that a status vector breaks; the
/// 10 => 9 direction is asserted only on reduced rings.
pub fn broken_chain_links(st: &[bool; 10], reduced: bool) -> Vec<&'static str> {
    let mut broken = Vec::new();
    if !(st[0] == st[1] && st[1] == st[2] && st[2] == st[3]) {
        broken.push("1<=>2<=>3<=>4");
    }
    if st[3] && !st[4] {
        broken.push("4=>5");
    }
    if !(st[4] == st[5] && st[5] == st[6] && st[6] == st[7]) {
        broken.push("5<=>6<=>7<=>8");
    }
    if st[7] && !st[8] {
        broken.push("8=>9");
    }
    if st[8] && !st[9] {
        broken.push("9=>10");
    }
    if reduced && st[9] && !st[8] {
        broken.push("10=>9 (reduced)");
    }
    broken
}

/// The statement 3 => 1 construction: from a border pair witness, SL2
/// completions M (first row [e f]) and N (first column [s t]^T) reduce A
/// to Diag(1, det A).
pub fn th8_three_to_one(a: &Mat2, e: &RElem, f: &RElem) -> Result<(Mat2, Mat2)> {
    let ring = &a.ring;
    let p = ring.add(&ring.mul(a.a(), e)?, &ring.mul(a.c(), f)?)?;
    let q = ring.add(&ring.mul(a.b(), e)?, &ring.mul(a.d(), f)?)?;
    let st = ring
        .unimodular_certificate(&[p.clone(), q.clone()])?
        .ok_or_else(|| Error::Precondition("(ae+cf, be+df) not unimodular".into()))?;
    let (s, t) = (st[0].clone(), st[1].clone());
    let ef = ring
        .unimodular_certificate(&[e.clone(), f.clone()])?
        .ok_or_else(|| Error::Precondition("(e, f) not unimodular".into()))?;
    // M = [[e, f],[-beta, alpha]] with e alpha + f beta = 1, det(M) = 1
    let (alpha, beta) = (ef[0].clone(), ef[1].clone());
    let m = Mat2::new(
        ring.clone(),
        [e.clone(), f.clone(), ring.neg(&beta)?, alpha],
    )?;
    // N = [[s, -q],[t, p]], det = s p + t q = 1
    let n = Mat2::new(ring.clone(), [s.clone(), ring.neg(&q)?, t.clone(), p.clone()])?;
    // clear the off-diagonal entries of M A N (its (1,1) entry is 1)
    let man = m.mul(a)?.mul(&n)?;
    let e1 = Mat2::new(
        ring.clone(),
        [ring.one(), ring.zero(), ring.neg(man.c())?, ring.one()],
    )?;
    let f1 = Mat2::new(
        ring.clone(),
        [ring.one(), ring.neg(man.b())?, ring.zero(), ring.one()],
    )?;
    let m_final = e1.mul(&m)?;
    let n_final = n.mul(&f1)?;
    let check = m_final.mul(a)?.mul(&n_final)?;
    let d = Mat2::diag(ring, ring.one(), a.det()?)?;
    if check != d {
        return Err(Error::Precondition("3=>1 construction did not reach Diag(1, det)".into()));
    }
    Ok((m_final, n_final))
}

/// Statement 5 => 6 construction: B = [[-w, z],[y, -x]] from a
/// statement-5 tuple; det(B) = xw - yz = 0 and the determinant identity
/// det(A + delta B) = delta(1 - ax-by-cz-dw) + delta^2(xw - yz) forces 0.
pub fn th8_five_to_six(a: &Mat2, x: &RElem, y: &RElem, z: &RElem, w: &RElem) -> Result<Mat2> {
    let ring = &a.ring;
    let b = Mat2::new(
        ring.clone(),
        [ring.neg(w)?, z.clone(), y.clone(), ring.neg(x)?],
    )?;
    revalidate_witness(a, 6, &Witness::CompanionZero { b: b.clone() })?;
    Ok(b)
}

/// The border expansion value for a quadruple (used by tests as the
/// independent route).
pub fn eq8_expansion(a: &Mat2, e: &RElem, f: &RElem, s: &RElem, t: &RElem) -> Result<RElem> {
    eq8_value(a, e, f, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    #[test]
    fn full_report_over_z_revalidates() {
        let a = Mat2::from_ints(&z(), [15, 6, 10, 14]);
        let rep = check_all_statements(&a, &Budget::default()).unwrap();
        rep.revalidate().unwrap();
        assert!(rep.statements.values().all(|s| s.holds()));
    }

    #[test]
    fn full_report_over_finite_ring() {
        let m6 = RingSpec::mod_n(6).unwrap();
        let a = Mat2::from_ints(&m6, [2, 3, 1, 4]);
        let rep = check_all_statements(&a, &Budget::default()).unwrap();
        rep.revalidate().unwrap();
        assert!(rep.statements.values().all(|s| s.holds()));
    }

    #[test]
    fn chain_holds_on_z6() {
        let rep = verify_th8_chain(&RingSpec::mod_n(6).unwrap(), ChainSample::All).unwrap();
        assert!(rep.violations.is_empty());
        assert!(rep.all_ten_hold_everywhere);
        assert!(rep.reduced);
        // |Um(M2(Z/6))| = 15 * 80 by CRT: mod a prime only the zero tuple
        // fails, so the count is (2^4 - 1)(3^4 - 1)
        assert_eq!(rep.checked, 1200);
    }

    #[test]
    fn chain_on_product_matches_z6_count() {
        let p = RingSpec::product(RingSpec::mod_n(2).unwrap(), RingSpec::mod_n(3).unwrap())
            .unwrap();
        let rep = verify_th8_chain(&p, ChainSample::All).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.checked, 1200);
    }

    #[test]
    fn chain_link_detector_flags_corruption() {
        // all-true and all-false vectors break nothing
        assert!(broken_chain_links(&[true; 10], true).is_empty());
        assert!(broken_chain_links(&[false; 10], true).is_empty());
        // breaking the first equivalence block
        let mut st = [true; 10];
        st[2] = false;
        assert_eq!(broken_chain_links(&st, false), vec!["1<=>2<=>3<=>4"]);
        // a statement-9 failure under statement 8 breaks 8=>9
        let mut st = [true; 10];
        st[8] = false;
        assert_eq!(broken_chain_links(&st, false), vec!["8=>9"]);
        // 10 without 9 is flagged only on reduced rings
        let mut st = [false; 10];
        st[9] = true;
        assert!(broken_chain_links(&st, false).is_empty());
        assert_eq!(broken_chain_links(&st, true), vec!["10=>9 (reduced)"]);
    }

    #[test]
    fn three_to_one_construction() {
        let a = Mat2::from_ints(&z(), [15, 6, 10, 14]);
        let (e, f) = (RElem::Int((-1).into()), RElem::Int((-2).into()));
        let (m, n) = th8_three_to_one(&a, &e, &f).unwrap();
        let d = Mat2::from_ints(&z(), [1, 0, 0, 150]);
        assert_eq!(m.mul(&a).unwrap().mul(&n).unwrap(), d);
        assert_eq!(m.det().unwrap(), RElem::Int(1.into()));
        assert_eq!(n.det().unwrap(), RElem::Int(1.into()));
    }

    #[test]
    fn five_to_six_construction() {
        let a = Mat2::from_ints(&z(), [15, 6, 10, 14]);
        let st = check_statement(&a, 5, &Budget::default()).unwrap();
        let Status::Holds(Witness::Relation { x, y, z: zz, w }) = st else {
            panic!("statement 5 should hold");
        };
        let b = th8_five_to_six(&a, &x, &y, &zz, &w).unwrap();
        revalidate_witness(&a, 6, &Witness::CompanionZero { b }).unwrap();
    }
}
