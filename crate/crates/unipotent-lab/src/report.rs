//! JSON report serialization and atomic persistence.
//!
//! All reports carry a `"schema": "unipotent-lab/v1"` field. Exact rationals
//! are serialized as `"num/den"` strings and matrices in sparse triplet form,
//! so reports are byte-identical across runs of the same input (object keys
//! are emitted in sorted order).

use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::analysis::{CDEvidenceReport, ScanKind, TorsionReport, TorsionVerdict};
use crate::crossed::DiagramReport;
use crate::linalg::{InvariantFactors, QMatrix};
use crate::series::{Coef, TruncatedSeries, ZassenhausIndex};
use crate::Result;

pub const SCHEMA: &str = "unipotent-lab/v1";

pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn coef_str(c: &Coef) -> String {
    match c {
        Coef::Rat(r) => rational_str(r),
        Coef::Mod(m) => m.to_string(),
    }
}

/// Sparse triplet form: entries [row, col, "num/den"], row-major order.
pub fn matrix_json(m: &QMatrix) -> Value {
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = &m[(i, j)];
            if !num_traits::Zero::is_zero(e) {
                entries.push(json!([i, j, rational_str(e)]));
            }
        }
    }
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn factors_json(f: &InvariantFactors) -> Value {
    Value::Array(
        f.factors
            .iter()
            .map(|d| Value::String(d.to_string()))
            .collect(),
    )
}

/// Series terms as [monomial letters, coefficient string], deglex order.
pub fn series_json(s: &TruncatedSeries, names: &[String]) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(m, c)| {
            let word: Vec<&str> = m
                .letters()
                .iter()
                .map(|&g| names[g as usize].as_str())
                .collect();
            json!([word, coef_str(c)])
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "kind": "series",
        "cutoff": s.ctx.cutoff,
        "terms": terms,
        "rendered": s.render(names),
    })
}

pub fn zindex_json(word: &str, p: u64, cutoff: u32, index: &ZassenhausIndex) -> Value {
    let (value, exact) = match index {
        ZassenhausIndex::Finite(n) => (*n, true),
        ZassenhausIndex::AtLeast(n) => (*n, false),
    };
    json!({
        "schema": SCHEMA,
        "kind": "zassenhaus_index",
        "word": word,
        "p": p,
        "cutoff": cutoff,
        "index": value,
        "exact": exact,
        "rendered": index.to_string(),
    })
}

pub fn dimsub_json(rank: usize, p: u64, n: u32, order_log_p: u32) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "dimension_quotient",
        "rank": rank,
        "p": p,
        "n": n,
        "order_log_p": order_log_p,
    })
}

pub fn diagram_json(r: &DiagramReport) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "diagram",
        "cutoff": r.cutoff,
        "p": r.prime,
        "generators": r.names_x,
        "relator_slots": r.names_y,
        "relator_weights": r.weights_y,
        "gu_dims": r.gu_dims,
        "cbar_dims": r.cbar_dims,
        "rbar_dims": r.rbar_dims,
        "top_row": {
            "note": "truncation model: same graded data as the bottom row with independently chosen bases",
            "cbar_dims": r.top_cbar_dims,
            "rbar_dims": r.top_rbar_dims,
        },
        "u2_dims": r.u2_dims,
        "pi2_dims": { "dims": r.pi2_dims, "note": "equal to u2 by the kernel identification; quasirationality-conditional" },
        "u2_basis": r.u2_basis.iter().map(|(d, s)| json!([d, s])).collect::<Vec<_>>(),
        "maps": {
            "mu": r.mu.iter().map(matrix_json).collect::<Vec<_>>(),
            "gamma": r.gamma.iter().map(matrix_json).collect::<Vec<_>>(),
            "kappa": r.kappa.iter().map(matrix_json).collect::<Vec<_>>(),
            "tau": r.tau.iter().map(matrix_json).collect::<Vec<_>>(),
        },
        "verdicts": {
            "commutative": r.commutative,
            "exact_rows": r.exact_rows,
            "freeness": r.freeness,
            "peiffer_agrees": r.peiffer_agrees,
        },
        "checks": { "cm1_samples": r.cm1_samples, "cm2_samples": r.cm2_samples },
        "warnings": r.frattini_warnings,
    })
}

pub fn torsion_json(r: &TorsionReport) -> Value {
    let kind = match r.kind {
        ScanKind::Coinvariants => "qr_graded_scan",
        ScanKind::GradedQuotient => "p_regularity_scan",
    };
    let verdict = match &r.verdict {
        TorsionVerdict::TorsionAt(d) => format!("torsion found at degree {d}"),
        TorsionVerdict::TorsionFreeUpTo(c) => match r.kind {
            ScanKind::Coinvariants => format!("torsion-free up to {c}"),
            ScanKind::GradedQuotient => format!("p-regular up to class {c}"),
        },
    };
    json!({
        "schema": SCHEMA,
        "kind": kind,
        "p": r.prime,
        "cutoff": r.cutoff,
        "invariant_factors": r.per_degree.iter().map(factors_json).collect::<Vec<_>>(),
        "verdict": verdict,
        "note": "graded certificate: torsion here is exact at the graded level; absence up to the cutoff is evidence only",
    })
}

pub fn cd2_json(r: &CDEvidenceReport) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "cd2_evidence",
        "cutoff": r.cutoff,
        "relator_weight": r.relator_weight,
        "checks": {
            "freeness_rank_one": r.freeness_rank_one,
            "kappa_bijective": r.kappa_bijective,
            "u2_vanishes": r.u2_vanishes,
            "p_regular": r.p_regular,
        },
        "obstruction_degree": r.obstruction_degree,
        "verdict": r.verdict,
        "diagram": diagram_json(&r.diagram),
        "p_regularity": torsion_json(&r.p_regularity),
    })
}

/// Serialize and write atomically: temp file in the same directory, then
/// rename over the destination.
pub fn write_atomic(path: &Path, value: &Value) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(value)?);
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "report".into())
    ));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rational_rendering() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_str(&half), "1/2");
        let three = BigRational::from_integer(BigInt::from(-3));
        assert_eq!(rational_str(&three), "-3/1");
    }

    #[test]
    fn matrix_sparse_triplets() {
        let m = QMatrix::from_int_fn(2, 2, |i, j| if i == j { (i + 1) as i64 } else { 0 });
        let v = matrix_json(&m);
        assert_eq!(v["rows"], 2);
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0][2], "1/1");
        assert_eq!(entries[1][2], "2/1");
    }

    #[test]
    fn atomic_write_roundtrip_and_determinism() {
        let dir = std::env::temp_dir().join("unipotent-lab-report-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.json");
        let v = json!({ "schema": SCHEMA, "b": 2, "a": 1 });
        write_atomic(&path, &v).unwrap();
        let first = std::fs::read(&path).unwrap();
        write_atomic(&path, &v).unwrap();
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second);
        let parsed: Value = serde_json::from_slice(&first).unwrap();
        assert_eq!(parsed["schema"], SCHEMA);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
