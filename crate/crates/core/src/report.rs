//! Serializable reports grouped by the module that produced each value.

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::classify::{Check, CurveClass, DuPlessisWallBounds, MaximalTjurinaStatus, MaximizingStatus, NuFormulas};
use crate::error::Error;
use crate::jacobian::ReducedCertificate;
use crate::syzygy::{DefectSequence, ResolutionSummary, SplittingType, SyzygyProfile};

pub const SCHEMA_VERSION: &str = "freeness-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygySection {
    pub profile: SyzygyProfile,
    pub resolution: ResolutionSummary,
    /// `dim AR(f)_k` for `k = 0..=horizon + 4`.
    pub ar_dims: Vec<usize>,
    /// `[k, predicted, measured]` past the horizon.
    pub beyond_horizon: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianSection {
    pub reducedness: ReducedCertificate,
    pub t: usize,
    /// `dim M(f)_k`.
    pub milnor_hilbert: Vec<usize>,
    /// `dim (S/I)_k` for the saturation `I` of the Jacobian ideal.
    pub saturated_quotient: Vec<usize>,
    /// `dim N(f)_k` for `k = 0..=T`.
    pub n_values: Vec<usize>,
    pub tau: usize,
    pub nu: usize,
    pub sigma: Option<usize>,
    pub ct: Option<usize>,
    pub st: usize,
    pub ct_plus_st: Option<usize>,
    pub defects: DefectSequence,
    pub splitting: SplittingType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifySection {
    pub class: CurveClass,
    pub bounds: DuPlessisWallBounds,
    pub nu_formulas: NuFormulas,
    pub maximal_tjurina: MaximalTjurinaStatus,
    pub maximizing: MaximizingStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTime {
    pub stage: String,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub schema: String,
    pub input: String,
    pub degree: u32,
    pub seed: u64,
    pub jacobian: JacobianSection,
    pub syzygy: SyzygySection,
    pub classify: ClassifySection,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTime>>,
}

impl CurveReport {
    pub fn new(input: &str, seed: u64, a: &Analysis, with_timings: bool) -> Self {
        let sat = &a.saturation;
        CurveReport {
            schema: SCHEMA_VERSION.into(),
            input: input.into(),
            degree: a.degree(),
            seed,
            jacobian: JacobianSection {
                reducedness: a.reduced.clone(),
                t: a.t(),
                milnor_hilbert: a.milnor.clone(),
                saturated_quotient: (0..sat.dims.len()).map(|k| sat.quotient_dim(k)).collect(),
                n_values: a.module_table.n_values.clone(),
                tau: a.tau,
                nu: a.nu,
                sigma: a.module_table.sigma,
                ct: a.thresholds.ct,
                st: a.thresholds.st,
                ct_plus_st: a.ct_plus_st(),
                defects: a.defects.clone(),
                splitting: a.splitting,
            },
            syzygy: SyzygySection {
                profile: SyzygyProfile::from_scan(&a.scan),
                resolution: a.resolution.clone(),
                ar_dims: a.scan.ar_dims.clone(),
                beyond_horizon: a
                    .scan
                    .verification
                    .iter()
                    .map(|&(k, p, m)| [k as usize, p, m])
                    .collect(),
            },
            classify: ClassifySection {
                class: a.class.clone(),
                bounds: a.bounds.clone(),
                nu_formulas: a.nu_formulas.clone(),
                maximal_tjurina: a.maximal_tjurina.clone(),
                maximizing: a.maximizing.clone(),
            },
            checks: a.checks.clone(),
            timings: with_timings.then(|| {
                a.timings
                    .iter()
                    .map(|t| StageTime {
                        stage: t.stage.clone(),
                        micros: (t.millis * 1000.0).round() as u64,
                    })
                    .collect()
            }),
        }
    }
}

/// Report emitted instead of a [`CurveReport`] when the run fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema: String,
    pub input: String,
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl ErrorReport {
    pub fn new(input: &str, e: &Error) -> Self {
        let kind = match e {
            Error::Syntax { .. } => "syntax",
            Error::Inhomogeneous { .. } => "inhomogeneous",
            Error::DegreeTooSmall(_) => "degree_too_small",
            Error::NotReduced(_) => "not_reduced",
            Error::InvalidInput(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
            Error::HardFailure { .. } => "hard_failure",
            Error::HorizonTooSmall { .. } => "horizon_too_small",
            Error::Certification(_) => "certification",
        };
        ErrorReport {
            schema: SCHEMA_VERSION.into(),
            input: input.into(),
            kind: kind.into(),
            message: e.to_string(),
            exit_code: exit_code(e),
        }
    }
}

/// 2 for bad input, 1 for a failed analysis.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, AnalysisOptions};
    use crate::parse::parse_poly;

    #[test]
    fn json_round_trip_is_byte_identical() {
        for src in ["x*y*z", "x^2*y^2 + z^4", "x^3 + y^3 + z^3"] {
            let a = analyze(&parse_poly(src).unwrap(), &AnalysisOptions::default()).unwrap();
            for timings in [false, true] {
                let json = to_json(&CurveReport::new(src, 0, &a, timings));
                let back: CurveReport = serde_json::from_str(&json).unwrap();
                assert_eq!(to_json(&back), json);
            }
        }
    }

    #[test]
    fn deterministic_without_timings() {
        let f = parse_poly("x*y*(x+y)*z").unwrap();
        let r1 = CurveReport::new("f", 3, &analyze(&f, &AnalysisOptions { seed: 3, ..Default::default() }).unwrap(), false);
        let r2 = CurveReport::new("f", 3, &analyze(&f, &AnalysisOptions { seed: 3, ..Default::default() }).unwrap(), false);
        assert_eq!(to_json(&r1), to_json(&r2));
    }

    #[test]
    fn error_codes() {
        let e = parse_poly("x^2 + y").unwrap_err();
        assert_eq!(ErrorReport::new("x^2 + y", &e).exit_code, 2);
        assert_eq!(exit_code(&Error::hard("c", "d")), 1);
    }
}
