//! JSON report assembly. GF(2) vectors serialize as hex bitstrings,
//! matrices as row-major integer lists, polynomials as sorted
//! (exponent, coefficient) pairs.

use serde_json::{json, Value};

use regionum::diagram::{Diagram, Region};
use regionum::goeritz::GoeritzData;
use regionum::invariants::{Evidence, UnknotCertificate, Verdict};
use regionum::laurent::LaurentPoly;
use regionum::region_algebra::{Color, RegionSet, Shading};
use regionum::search::{BoundBracket, KnotRecord, SearchResult, TheoremReport};
use regionum::snf::{IntMat, SmithDecomposition};

pub const SCHEMA: &str = "regionum/1";

pub fn regions_json(d: &Diagram, regions: &[Region]) -> Value {
    json!({
        "schema": SCHEMA,
        "crossings": d.crossing_count(),
        "regions": regions.iter().map(|r| json!({
            "id": r.id,
            "cost": r.cost,
            "incident": r.incident.iter().collect::<Vec<_>>(),
            "corners": r.corners.iter().map(|(v, s)| json!([v, s])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn shading_json(d: &Diagram, sh: &Shading) -> Value {
    let black = sh.class(Color::Black);
    json!({
        "schema": SCHEMA,
        "crossings": d.crossing_count(),
        "outer": sh.outer,
        "black": black,
        "white": sh.class(Color::White),
        "black_vector_hex": sh.black_set().to_hex(),
    })
}

fn matrix_json(m: &IntMat) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "data": m.row_major().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn goeritz_json(data: &GoeritzData) -> Value {
    json!({
        "schema": SCHEMA,
        "zeta": data.zeta,
        "shaded_regions": data.shaded_regions,
        "pre_goeritz": matrix_json(&data.pre_goeritz),
        "goeritz": matrix_json(&data.goeritz),
        "det": data.det.to_string(),
    })
}

pub fn snf_json(s: &SmithDecomposition) -> Value {
    json!({
        "schema": SCHEMA,
        "diagonal": s.diagonal.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "left": matrix_json(&s.left),
        "right": matrix_json(&s.right),
    })
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    json!({
        "schema": SCHEMA,
        "variable": "A",
        "terms": p.terms().iter().map(|(e, c)| json!([e, c.to_string()])).collect::<Vec<_>>(),
        "is_one": p.is_one(),
    })
}

pub fn certificate_json(cert: &UnknotCertificate) -> Value {
    let verdict = match cert.verdict {
        Verdict::Unknot => "unknot",
        Verdict::Knotted => "knotted",
        Verdict::Indeterminate => "indeterminate",
    };
    let (evidence, det) = match &cert.evidence {
        Evidence::DeterminantNotOne(d) => ("determinant_not_one", Some(d.to_string())),
        Evidence::JonesNontrivial => ("jones_nontrivial", None),
        Evidence::JonesTrivial => ("jones_trivial", None),
    };
    let mut v = json!({
        "schema": SCHEMA,
        "verdict": verdict,
        "evidence": evidence,
        "crossings": cert.crossings,
    });
    if let Some(det) = det {
        v["det"] = Value::String(det);
    }
    v
}

pub fn search_json(d: &Diagram, sr: &SearchResult) -> Value {
    json!({
        "schema": SCHEMA,
        "crossings": d.crossing_count(),
        "mri": sr.mri,
        "mri_witness": sr.mri_witness,
        "reg": sr.reg,
        "reg_witness": sr.reg_witness,
        "targets_examined": sr.targets_examined,
        "certificates": sr.certificates.iter().map(|(t, c)| json!({
            "target": t.ids(),
            "target_hex": t.to_hex(),
            "certificate": certificate_json(c),
        })).collect::<Vec<_>>(),
    })
}

fn bound_json(value: usize, provenance: &[regionum::search::Provenance]) -> Value {
    json!({
        "value": value,
        "provenance": provenance.iter().map(|p| p.label()).collect::<Vec<_>>(),
    })
}

/// The per-knot batch report object.
pub fn knot_report(
    rec: &KnotRecord,
    d: &Diagram,
    sr: &SearchResult,
    mg2: usize,
    bb: &BoundBracket,
    tr: Option<&TheoremReport>,
) -> Value {
    let det = regionum::goeritz::determinant(d).map(|d| d.to_string()).unwrap_or_default();
    let mut v = json!({
        "schema": SCHEMA,
        "name": rec.name,
        "crossings": d.crossing_count(),
        "mri": sr.mri,
        "mri_witness": sr.mri_witness,
        "reg": sr.reg,
        "mg2": mg2,
        "det": det,
        "lower": bound_json(bb.lower.value, &bb.lower.provenance),
        "upper": bound_json(bb.upper.value, &bb.upper.provenance),
        "tight": bb.tight,
    });
    if let Some(tr) = tr {
        v["checks"] = json!({
            "thm1": tr.thm1,
            "thm2": tr.thm2,
            "ineq2": tr.ineq2,
            "ineq3": tr.ineq3,
        });
    }
    v
}

// Referenced by search_json through RegionSet/CrossingSet hex helpers.
#[allow(dead_code)]
fn _region_set_hex(s: RegionSet) -> String {
    s.to_hex()
}
