//! The per-family verification pipeline and aggregated run reports.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{check_axioms, AxiomReport, ClosureMode, SuperAlgebra};
use crate::error::{Error, Result};
use crate::family::{Family, FamilyKind};
use crate::generate::{candidate, search_fallback, Certificate};
use crate::weights::{standard_cartan, weight_table};

/// Largest dimension verified without an explicit override.
pub const DESK_SCALE_DIM: usize = 400;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: ClosureMode,
    /// Total certification attempts, including the base candidate.
    pub budget: usize,
    pub allow_large: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: ClosureMode::default(),
            budget: 8,
            allow_large: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Generated,
    NotGenerated,
    StructuralFailure,
    IngredientFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub selector: String,
    pub kind: FamilyKind,
    pub dim: Option<usize>,
    pub expected_dim: usize,
    pub axioms: Option<AxiomReport>,
    /// SHA-256 of the weight table JSON.
    pub weight_digest: Option<String>,
    pub certificate: Option<Certificate>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl FamilyReport {
    pub fn ok(&self) -> bool {
        self.status == Status::Generated
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub closure_mode: ClosureMode,
    pub budget: usize,
    pub families: Vec<FamilyReport>,
    pub all_generated: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// 0 when every family is generated, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_generated {
            0
        } else {
            1
        }
    }
}

/// Validates parameters and the size cap.
pub fn admit(f: &Family, opts: &VerifyOptions) -> Result<()> {
    f.validate()?;
    let d = f.expected_dim();
    if d > DESK_SCALE_DIM && !opts.allow_large {
        return Err(Error::Usage(format!(
            "{f} has dimension {d} > {DESK_SCALE_DIM}; pass --allow-large to run it"
        )));
    }
    Ok(())
}

/// SHA-256 digest of the algebra's weight table.
pub fn weight_digest(a: &SuperAlgebra) -> Result<String> {
    let frame = standard_cartan(a)?;
    let json = serde_json::to_string(&weight_table(a, &frame)).expect("weight table serializes");
    Ok(hex::encode(Sha256::digest(json.as_bytes())))
}

/// Builds, checks axioms, digests the weight table, constructs the
/// candidate and certifies it. Only usage errors are returned as `Err`;
/// every other failure is recorded in the report.
pub fn verify_family(f: &Family, opts: &VerifyOptions) -> Result<FamilyReport> {
    admit(f, opts)?;
    let mut r = FamilyReport {
        family: *f,
        selector: f.selector(),
        kind: f.kind(),
        dim: None,
        expected_dim: f.expected_dim(),
        axioms: None,
        weight_digest: None,
        certificate: None,
        status: Status::StructuralFailure,
        failure: None,
    };
    let fail = |mut r: FamilyReport, status, e: Error| match e {
        Error::Usage(_) => Err(e),
        e => {
            r.status = status;
            r.failure = Some(e.to_string());
            Ok(r)
        }
    };
    let a = match f.build() {
        Ok(a) => a,
        Err(e) => return fail(r, Status::StructuralFailure, e),
    };
    r.dim = Some(a.dim());
    let axioms = check_axioms(&a);
    let passed = axioms.passed();
    r.axioms = Some(axioms);
    if !passed {
        r.failure = Some("axiom check failed".into());
        return Ok(r);
    }
    match weight_digest(&a) {
        Ok(d) => r.weight_digest = Some(d),
        Err(e) => return fail(r, Status::StructuralFailure, e),
    }
    let c = match candidate(&a) {
        Ok(c) => c,
        Err(e @ Error::IngredientSearch(_)) => return fail(r, Status::IngredientFailure, e),
        Err(e) => return fail(r, Status::StructuralFailure, e),
    };
    let cert = match search_fallback(&a, &c, opts.budget.max(1), opts.mode) {
        Ok(c) => c,
        Err(e) => return fail(r, Status::StructuralFailure, e),
    };
    r.status = if cert.generated() {
        Status::Generated
    } else {
        Status::NotGenerated
    };
    r.certificate = Some(cert);
    Ok(r)
}

/// Verifies every family, in parallel, reporting them sorted by selector.
pub fn run_suite(families: &[Family], opts: &VerifyOptions) -> Result<RunReport> {
    for f in families {
        admit(f, opts)?;
    }
    let mut reports = families
        .par_iter()
        .map(|f| verify_family(f, opts))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.selector.cmp(&b.selector));
    Ok(RunReport {
        tool_version: TOOL_VERSION.to_string(),
        closure_mode: opts.mode,
        budget: opts.budget,
        all_generated: reports.iter().all(FamilyReport::ok),
        families: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_cap() {
        let big = Family::W { n: 9 };
        assert!(matches!(admit(&big, &VerifyOptions::default()), Err(Error::Usage(_))));
        let opts = VerifyOptions {
            allow_large: true,
            ..VerifyOptions::default()
        };
        assert!(admit(&big, &opts).is_ok());
    }

    #[test]
    fn a11_report() {
        let r = verify_family(&Family::A { m: 1, n: 1 }, &VerifyOptions::default()).unwrap();
        assert_eq!(r.status, Status::Generated);
        assert_eq!(r.dim, Some(14));
        assert_eq!(r.weight_digest.as_ref().map(String::len), Some(64));
    }
}
