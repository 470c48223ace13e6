//! Spec files, the check pipeline and the JSON report.

use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::{nontriviality_sample, verify_presentation, BraidReport, SampleReport};
use crate::dg::{build_dg, h0, Component};
use crate::error::{FieldError, SpecError};
use crate::field::Field;
use crate::fukaya::{
    build_fukaya_presentation, endomorphism_ring_check, verify_psi_iso, EndomorphismReport,
    PsiReport,
};
use crate::localization::{ring_consistency, torsion_orders, unit_ring_is_zero, TorsionReport};
use crate::poly::Dimension;
use crate::slope::{
    assumptions, coincident_factors, core_types, exceptional_curve_types, f_total, validate_spec,
    Assumptions, PlumbingSpec, SlopeDatum, Truncation,
};

pub const SCHEMA_VERSION: &str = "plumbing-report/1";
pub const DEFAULT_SEED: u64 = 1;

/// Largest `n + 1` for which braid relations are checked.
pub const BRAID_MAX_PUNCTURES: usize = 6;
pub const BRAID_SAMPLE: usize = 100;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("bad --field value {0:?}; expected rational or fp:<p>")]
    FieldFlag(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime {
        p: u64,
    },
}

impl FieldSpec {
    pub fn field(self) -> Result<Field, FieldError> {
        match self {
            FieldSpec::Rational => Ok(Field::Rational),
            FieldSpec::Prime { p } => Field::prime(p),
        }
    }
}

/// `rational` or `fp:<p>`.
pub fn parse_field_flag(s: &str) -> Result<FieldSpec, CliError> {
    if s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    s.strip_prefix("fp:")
        .and_then(|p| p.parse().ok())
        .map(|p| FieldSpec::Prime { p })
        .ok_or_else(|| CliError::FieldFlag(s.to_string()))
}

/// Checks in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Geometry,
    Fukaya,
    Psi,
    Contraction,
    Torsion,
    Braid,
}

pub const ALL_CHECKS: [Check; 6] = [
    Check::Geometry,
    Check::Fukaya,
    Check::Psi,
    Check::Contraction,
    Check::Torsion,
    Check::Braid,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub slopes: Vec<SlopeDatum>,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default)]
    pub truncation: Truncation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SpecFile {
    pub fn validate(&self) -> Result<PlumbingSpec, CliError> {
        let field = self.field.field()?;
        Ok(validate_spec(&self.slopes, field, self.truncation)?)
    }
}

pub fn parse_spec_str(text: &str) -> Result<SpecFile, CliError> {
    let spec: SpecFile = serde_json::from_str(text)?;
    spec.validate()?;
    Ok(spec)
}

pub fn parse_spec(path: &FsPath) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec_str(&text)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeometryResult {
    pub n: usize,
    pub slopes: Vec<String>,
    pub factors: Vec<String>,
    pub f_total: String,
    pub core_types: Vec<String>,
    pub curve_types: Vec<String>,
    pub assumptions: Assumptions,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FukayaResult {
    pub vertices: usize,
    pub arrows: usize,
    pub rules: Vec<String>,
    pub endomorphisms: Vec<EndomorphismReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ContractionResult {
    /// Equal end factors make the corner component infinite.
    pub coincident_factors: Vec<(usize, usize)>,
    pub dim_vector: Vec<Vec<Value>>,
    pub total_dimension: Value,
    pub components: Vec<Component>,
    pub transport_passes: usize,
    pub closure_failures: usize,
    pub associativity_checked: usize,
    pub associativity_failures: usize,
    pub d_squared_samples: usize,
    pub d_squared_failures: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TorsionResult {
    #[serde(flatten)]
    pub orders: TorsionReport,
    pub both_torsion: bool,
    pub unit_ring_zero: bool,
    pub groebner_consistent: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BraidResult {
    pub presentation: Option<BraidReport>,
    pub skipped: Option<String>,
    pub sample: Option<SampleReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub schema: &'static str,
    pub spec: SpecFile,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fukaya: Option<FukayaResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<PsiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<TorsionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braid: Option<BraidResult>,
    pub passed: bool,
}

impl Report {
    /// `0` when every requested check passed, `2` otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn dimension_value(d: Dimension) -> Value {
    match d {
        Dimension::Finite(k) => json!(k),
        Dimension::Infinite => json!("infinite"),
    }
}

pub fn geometry(spec: &PlumbingSpec) -> GeometryResult {
    GeometryResult {
        n: spec.n(),
        slopes: spec.slopes().iter().map(ToString::to_string).collect(),
        factors: spec.factors().iter().map(ToString::to_string).collect(),
        f_total: f_total(spec).to_string(),
        core_types: core_types(spec).iter().map(ToString::to_string).collect(),
        curve_types: exceptional_curve_types(spec)
            .iter()
            .map(ToString::to_string)
            .collect(),
        assumptions: assumptions(spec),
    }
}

fn fukaya(spec: &PlumbingSpec) -> FukayaResult {
    let fp = build_fukaya_presentation(spec).expect("cyclic quiver on valid spec");
    let q = fp.pres.quiver();
    let rules = fp
        .pres
        .rules()
        .iter()
        .map(|r| {
            let lhs: Vec<&str> = r.lhs.iter().map(|&a| q.arrows[a].name.as_str()).collect();
            format!("{} = ({}) theta_{}", lhs.join(" "), r.coeff, r.vertex)
        })
        .collect();
    let endomorphisms: Vec<EndomorphismReport> = (0..q.count)
        .map(|i| endomorphism_ring_check(&fp, i, spec.truncation.winding))
        .collect();
    FukayaResult {
        vertices: q.count,
        arrows: q.arrows.len(),
        rules,
        passed: endomorphisms.iter().all(|e| e.passed),
        endomorphisms,
    }
}

fn contraction(spec: &PlumbingSpec, seed: u64) -> ContractionResult {
    let a = h0(spec).expect("linear quiver on valid spec");
    let (checked, bad) = a.associativity_failures(12, 500, seed);
    let dg = build_dg(spec).expect("linear quiver on valid spec");
    let samples = 200;
    let d2 = dg.d_squared_failures(samples, 6, seed);
    let closure = a.closure_failures();
    ContractionResult {
        coincident_factors: coincident_factors(spec),
        dim_vector: a
            .dim_vector()
            .into_iter()
            .map(|row| row.into_iter().map(dimension_value).collect())
            .collect(),
        total_dimension: dimension_value(a.total_dimension()),
        components: a.components(),
        transport_passes: a.transport_passes,
        closure_failures: closure,
        associativity_checked: checked,
        associativity_failures: bad,
        d_squared_samples: samples,
        d_squared_failures: d2,
        passed: closure == 0 && bad == 0 && d2 == 0,
    }
}

fn torsion(spec: &PlumbingSpec) -> TorsionResult {
    let orders = torsion_orders(spec);
    let consistent = ring_consistency(spec, &orders);
    TorsionResult {
        both_torsion: orders.both_torsion(),
        unit_ring_zero: unit_ring_is_zero(spec),
        groebner_consistent: consistent,
        passed: consistent,
        orders,
    }
}

fn braid(spec: &PlumbingSpec, seed: u64) -> BraidResult {
    let n = spec.n();
    if n + 1 > BRAID_MAX_PUNCTURES {
        return BraidResult {
            presentation: None,
            skipped: Some(format!("n + 1 = {} exceeds {BRAID_MAX_PUNCTURES}", n + 1)),
            sample: None,
            passed: true,
        };
    }
    let pres = verify_presentation(n).expect("n >= 1");
    let sample = nontriviality_sample(n, 8, BRAID_SAMPLE, seed).expect("n >= 1");
    BraidResult {
        passed: pres.passed && sample.acting_nontrivially == sample.certified_nontrivial,
        presentation: Some(pres),
        skipped: None,
        sample: Some(sample),
    }
}

/// Runs the requested checks; geometry always runs first.
pub fn run(file: &SpecFile, requested: &[Check]) -> Result<Report, CliError> {
    let spec = file.validate()?;
    let seed = file.seed.unwrap_or(DEFAULT_SEED);
    let mut checks: Vec<Check> = requested.to_vec();
    checks.push(Check::Geometry);
    checks.sort();
    checks.dedup();
    let has = |c| checks.contains(&c);
    let geometry = Some(geometry(&spec));
    let fukaya = has(Check::Fukaya).then(|| fukaya(&spec));
    let psi = if has(Check::Psi) {
        let fp = build_fukaya_presentation(&spec).expect("cyclic quiver on valid spec");
        Some(
            verify_psi_iso(&fp, spec.truncation.winding, spec.truncation.poly_degree)
                .expect("cyclic quiver on valid spec"),
        )
    } else {
        None
    };
    let contraction = has(Check::Contraction).then(|| contraction(&spec, seed));
    let torsion = has(Check::Torsion).then(|| torsion(&spec));
    let braid = has(Check::Braid).then(|| braid(&spec, seed));
    let passed = fukaya.as_ref().is_none_or(|r| r.passed)
        && psi.as_ref().is_none_or(|r| r.passed)
        && contraction.as_ref().is_none_or(|r| r.passed)
        && torsion.as_ref().is_none_or(|r| r.passed)
        && braid.as_ref().is_none_or(|r| r.passed);
    Ok(Report {
        schema: SCHEMA_VERSION,
        spec: file.clone(),
        seed,
        checks,
        geometry,
        fukaya,
        psi,
        contraction,
        torsion,
        braid,
        passed,
    })
}
