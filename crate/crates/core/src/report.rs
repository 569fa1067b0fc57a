//! JSON views of witnesses and reports. Schema "1": every ring integer is
//! serialized as a decimal string so arbitrary-precision values survive
//! any consumer; matrices carry both the text form and row-major arrays.

use serde_json::{json, Value};

use crate::classes::{ClassReport, ClassStatus, Counterexample};
use crate::extend::companion::CompanionData;
use crate::extend::ex11::Ex11Certificate;
use crate::extend::lift::LiftSequence;
use crate::extend::nonfull::NonFullWitness;
use crate::extend::nu::NuSample;
use crate::extend::pell::PellWitness;
use crate::extend::{ExtWitness, FullnessCert};
use crate::matrix::{Mat2, Mat3};
use crate::ring::RElem;
use crate::statements::witnesses::EqWitness;
use crate::statements::{ChainReport, FailCert, StatementReport, Status, Witness};

pub const SCHEMA: &str = "1";

pub fn elem(e: &RElem) -> Value {
    Value::String(e.to_string())
}

pub fn mat2(m: &Mat2) -> Value {
    let e = m.entries();
    json!({
        "text": m.format_text(),
        "rows": [[elem(&e[0]), elem(&e[1])], [elem(&e[2]), elem(&e[3])]],
    })
}

pub fn mat3(m: &Mat3) -> Value {
    let rows: Vec<Value> = (0..3)
        .map(|i| Value::Array((0..3).map(|j| elem(m.entry(i, j))).collect()))
        .collect();
    json!({ "text": m.format_text(), "rows": rows })
}

pub fn ext_witness(w: &ExtWitness) -> Value {
    // nu = det(A) + es + ft, reconstructed from the top-left block
    let ring = &w.aplus.ring;
    let nu = (|| {
        let a = crate::matrix::theta(&w.aplus).ok()?;
        let es = ring.mul(&w.e, &w.s).ok()?;
        let ft = ring.mul(&w.f, &w.t).ok()?;
        let det = a.det().ok()?;
        ring.add(&det, &ring.add(&es, &ft).ok()?).ok()
    })();
    json!({
        "e": elem(&w.e),
        "f": elem(&w.f),
        "s": elem(&w.s),
        "t": elem(&w.t),
        "simple": w.simple,
        "nu": nu.map(|v| elem(&v)),
        "aplus": mat3(&w.aplus),
    })
}

pub fn nonfull(w: &NonFullWitness) -> Value {
    json!({
        "col": [elem(&w.col.0), elem(&w.col.1)],
        "row": [elem(&w.row.0), elem(&w.row.1)],
    })
}

pub fn fullness(c: &FullnessCert) -> Value {
    json!({
        "position": [c.position.0, c.position.1],
        "entry": elem(&c.entry),
        "row_partner": elem(&c.row_partner),
        "col_partner": elem(&c.col_partner),
        "norms_checked": c.norms_checked.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
    })
}

pub fn lift_sequence(s: &LiftSequence) -> Value {
    json!({
        "t": s.t.to_string(),
        "steps": s.steps.iter().map(mat2).collect::<Vec<_>>(),
        "moduli": (0..s.steps.len() as u32)
            .map(|n| (s.t.clone().pow(2u32.pow(n))).to_string())
            .collect::<Vec<_>>(),
    })
}

pub fn nu_sample(s: &NuSample) -> Value {
    let witnesses: Vec<Value> = s
        .witnesses
        .iter()
        .map(|(v, (e, f, ss, t))| {
            json!({
                "nu": v.to_string(),
                "e": e.to_string(),
                "f": f.to_string(),
                "s": ss.to_string(),
                "t": t.to_string(),
            })
        })
        .collect();
    json!({
        "bound": s.bound,
        "values": s.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "witnesses": witnesses,
        "progression": s.progression.as_ref().map(|p| json!({
            "offset": p.offset.to_string(),
            "step": p.step.to_string(),
        })),
    })
}

pub fn companion(c: &CompanionData) -> Value {
    json!({
        "triangularizer": mat2(&c.triangularizer),
        "g": c.g.to_string(),
        "u": c.u.to_string(),
        "h": c.h.to_string(),
        "cgcd": c.cgcd.to_string(),
        "aq": c.aq.to_string(),
        "bq": c.bq.to_string(),
        "bezout": {
            "aq2": c.aq2.to_string(),
            "bq2": c.bq2.to_string(),
            "c2": c.c2.to_string(),
            "u2": c.u2.to_string(),
        },
        "D": mat2(&c.d),
        "phi": [c.phi.0.to_string(), c.phi.1.to_string(), c.phi.2.to_string()],
    })
}

pub fn pell(w: &PellWitness) -> Value {
    json!({
        "e": elem(&w.e),
        "f": elem(&w.f),
        "unit": elem(&w.unit),
        "witness": ext_witness(&w.witness),
    })
}

pub fn ex11(c: &Ex11Certificate) -> Value {
    json!({
        "k": c.k,
        "q": c.q.to_string(),
        "ring": c.ring.to_string(),
        "matrix": mat2(&c.matrix),
        "det_is_zero": c.det_is_zero,
        "unimodular": c.unimodular,
        "two_irreducible": c.two_irreducible,
        "norms_checked": c.norms_checked.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "two_divides_one_minus_w": c.divides_one_minus_w,
        "two_divides_one_plus_w": c.divides_one_plus_w,
        "fullness": fullness(&c.fullness),
        "search_box": c.search_box,
        "search_found_witness": c.search_found_witness,
        "conclusive": c.conclusive(),
    })
}

pub fn eq_witness(w: &EqWitness) -> Value {
    match w {
        EqWitness::Th5_8 { t, d1, d2 } => json!({
            "tag": "TH5-8",
            "t": t.to_string(), "d1": d1.to_string(), "d2": d2.to_string(),
        }),
        EqWitness::Cr3_2 { q, r, y, t, u, v } => json!({
            "tag": "CR3-2",
            "q": q.to_string(), "r": r.to_string(),
            "y": y.to_string(), "t": t.to_string(),
            "u": u.to_string(), "v": v.to_string(),
        }),
        EqWitness::Cr3_3 { e, f } => json!({
            "tag": "CR3-3",
            "e": e.to_string(), "f": f.to_string(),
        }),
        EqWitness::C14 { s, l, z } => json!({
            "tag": "C14",
            "s": s.to_string(), "l": l.to_string(), "z": z.to_string(),
        }),
        EqWitness::C9(w) => json!({ "tag": "C9", "witness": ext_witness(w) }),
        EqWitness::Th2_2 { c } => json!({ "tag": "TH2-2", "C": mat2(c) }),
    }
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Equivalence { m, n } => json!({ "kind": "equivalence", "M": mat2(m), "N": mat2(n) }),
        Witness::SimpleExt(e) => json!({ "kind": "simple_extension", "witness": ext_witness(e) }),
        Witness::BorderPair { e, f, s, t } => json!({
            "kind": "border_pair",
            "e": elem(e), "f": elem(f), "s": elem(s), "t": elem(t),
        }),
        Witness::NonFullRelation { x, y, z, w, col, row } => json!({
            "kind": "nonfull_relation",
            "x": elem(x), "y": elem(y), "z": elem(z), "w": elem(w),
            "col": [elem(&col.0), elem(&col.1)],
            "row": [elem(&row.0), elem(&row.1)],
        }),
        Witness::Relation { x, y, z, w } => json!({
            "kind": "relation",
            "x": elem(x), "y": elem(y), "z": elem(z), "w": elem(w),
        }),
        Witness::CompanionZero { b } => json!({ "kind": "companion_zero", "B": mat2(b) }),
        Witness::Congruent { c } => json!({ "kind": "congruent", "C": mat2(c) }),
    }
}

pub fn status(s: &Status) -> Value {
    match s {
        Status::Holds(w) => json!({ "status": "holds", "witness": witness(w) }),
        Status::Fails(FailCert::Exhausted { space }) => json!({
            "status": "fails",
            "certificate": { "kind": "exhausted", "space": space },
        }),
        Status::Fails(FailCert::Fullness(c)) => json!({
            "status": "fails",
            "certificate": { "kind": "fullness", "data": fullness(c) },
        }),
        Status::Unknown { budget } => json!({ "status": "unknown", "budget": budget }),
    }
}

pub fn statement_report(rep: &StatementReport) -> Value {
    let statements: Vec<Value> = rep
        .statements
        .iter()
        .map(|(k, s)| {
            let mut obj = match status(s) {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            obj.insert("k".into(), json!(k));
            obj.insert("budget".into(), json!(rep.budget.box_bound));
            Value::Object(obj)
        })
        .collect();
    let holds: Vec<bool> = (1..=10)
        .map(|k| rep.statements.get(&k).map(|s| s.holds()).unwrap_or(false))
        .collect();
    let chain_ok = chain_consistent(&holds);
    json!({
        "schema": SCHEMA,
        "ring": rep.ring.to_string(),
        "matrix": mat2(&rep.matrix),
        "delta": elem(&rep.delta),
        "statements": statements,
        "chain_ok": chain_ok,
    })
}

/// Chain consistency of ten booleans (unknowns counted as not-holds make
/// this a weak sanity bit on partial data).
pub fn chain_consistent(s: &[bool]) -> bool {
    s[0] == s[1]
        && s[1] == s[2]
        && s[2] == s[3]
        && (!s[3] || s[4])
        && s[4] == s[5]
        && s[5] == s[6]
        && s[6] == s[7]
        && (!s[7] || s[8])
        && (!s[8] || s[9])
}

pub fn chain_report(rep: &ChainReport) -> Value {
    json!({
        "schema": SCHEMA,
        "ring": rep.ring.to_string(),
        "reduced": rep.reduced,
        "checked": rep.checked,
        "all_ten_hold": rep.all_ten_hold_everywhere,
        "violations": rep.violations.iter().map(|v| json!({
            "matrix": mat2(&v.matrix),
            "statuses": v.statuses,
            "broken": v.broken,
        })).collect::<Vec<_>>(),
    })
}

pub fn class_report(rep: &ClassReport) -> Value {
    let classes: Vec<Value> = rep
        .statuses
        .iter()
        .map(|(c, s)| {
            let status = match s {
                ClassStatus::Member => json!({ "status": "member" }),
                ClassStatus::NonMember(ce) => json!({
                    "status": "non-member",
                    "counterexample": counterexample(ce),
                }),
                ClassStatus::Skipped { size, guard } => json!({
                    "status": "skipped",
                    "size": size,
                    "guard": guard,
                }),
            };
            let mut obj = match status {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            obj.insert("class".into(), json!(c.name()));
            if let Some(t) = rep.timings_ms.get(c) {
                obj.insert("wall_ms".into(), json!(*t as u64));
            }
            if let Some(sp) = rep.search_spaces.get(c) {
                obj.insert("search_space".into(), json!(sp));
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "ring": rep.ring.to_string(),
        "size": rep.size,
        "classes": classes,
    })
}

fn counterexample(ce: &Counterexample) -> Value {
    match ce {
        Counterexample::Matrix(m) => json!({ "matrix": mat2(m) }),
        Counterexample::Triple(a, b, c) => json!({ "triple": [elem(a), elem(b), elem(c)] }),
        Counterexample::J21 { a, b, c, d, alpha, delta } => json!({
            "tuple": [elem(a), elem(b), elem(c), elem(d), elem(alpha), elem(delta)],
        }),
    }
}

/// CSV summary line set for classify sweeps: ring, class, status.
pub fn class_report_csv(rep: &ClassReport) -> String {
    let mut out = String::from("ring,class,status\n");
    for (c, s) in &rep.statuses {
        let status = match s {
            ClassStatus::Member => "member".to_string(),
            ClassStatus::NonMember(_) => "non-member".to_string(),
            ClassStatus::Skipped { .. } => "skipped".to_string(),
        };
        out.push_str(&format!("{},{},{}\n", rep.ring, c.name(), status));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn witness_json_round_trips_through_parse() {
        let z = RingSpec::Integers;
        let a = Mat2::from_ints(&z, [15, 6, 10, 14]);
        let w = crate::extend::smith::simple_extension_snf(&a).unwrap();
        let v = ext_witness(&w);
        // the matrix text re-parses to the same extension
        let text = v["aplus"]["text"].as_str().unwrap();
        let re = Mat3::parse(&z, text).unwrap();
        assert_eq!(re, w.aplus);
        // border entries re-parse and revalidate
        let e = crate::ring::parse::parse_elem(&z, v["e"].as_str().unwrap()).unwrap();
        assert_eq!(e, w.e);
    }

    #[test]
    fn integers_are_strings() {
        let z = RingSpec::Integers;
        let a = Mat2::from_ints(&z, [7, 0, 0, 11]);
        let nus = crate::extend::nu::nu_enumerate(&a, 10).unwrap();
        let v = nu_sample(&nus);
        assert!(v["values"][0].is_string());
    }

    #[test]
    fn chain_consistency_logic() {
        assert!(chain_consistent(&[true; 10]));
        assert!(chain_consistent(&[false; 10]));
        let mut s = [true; 10];
        s[1] = false; // breaks 1<=>2
        assert!(!chain_consistent(&s));
    }
}
