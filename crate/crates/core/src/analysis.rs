//! The full freeness profile of a curve.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{
    check_ct_lower_bound, check_dpw_bounds, check_nu_formulas, classify, ctst_relation, dpw_bounds,
    maximal_tjurina, maximizing_status, Check, CurveClass, DuPlessisWallBounds,
    MaximalTjurinaStatus, MaximizingStatus, NuFormulas, Verdict,
};
use crate::error::{Error, Result};
use crate::jacobian::{
    check_reduced, jacobian_module_table, saturation, tau_from_saturation, thresholds, Jacobian,
    JacobianModuleTable, ReducedCertificate, SaturationData, Thresholds,
};
use crate::linalg::PrimeStream;
use crate::poly::HomogeneousPoly;
use crate::syzygy::{
    default_horizon, defect_sequence, kr_dim, scan, splitting_type, DefectSequence,
    ResolutionSummary, SplittingType, SyzygyScan,
};

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Syzygy scan horizon; `3d - 4` when absent.
    pub horizon: Option<u32>,
    pub seed: u64,
    /// The curve is known to have only simple singularities.
    pub ade_asserted: bool,
}

/// Wall-clock time of one stage, in milliseconds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub millis: f64,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub jacobian: Jacobian,
    pub reduced: ReducedCertificate,
    pub scan: SyzygyScan,
    pub resolution: ResolutionSummary,
    /// `dim M(f)_k` for every `k` measured.
    pub milnor: Vec<usize>,
    pub saturation: SaturationData,
    pub module_table: JacobianModuleTable,
    pub tau: usize,
    pub nu: usize,
    pub thresholds: Thresholds,
    pub defects: DefectSequence,
    pub splitting: SplittingType,
    pub class: CurveClass,
    pub bounds: DuPlessisWallBounds,
    pub nu_formulas: NuFormulas,
    pub maximal_tjurina: MaximalTjurinaStatus,
    pub maximizing: MaximizingStatus,
    pub checks: Vec<Check>,
    pub timings: Vec<Timing>,
}

impl Analysis {
    pub fn degree(&self) -> u32 {
        self.jacobian.degree()
    }

    pub fn mdr(&self) -> u32 {
        self.scan.mdr()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.scan.exponents()
    }

    /// `T = 3(d - 2)`.
    pub fn t(&self) -> usize {
        self.jacobian.t()
    }

    /// `ct + st`, absent for smooth curves.
    pub fn ct_plus_st(&self) -> Option<usize> {
        self.thresholds.ct.map(|ct| ct + self.thresholds.st)
    }
}

struct Clock {
    timings: Vec<Timing>,
    last: Instant,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.timings.push(Timing {
            stage: stage.into(),
            millis: (now - self.last).as_secs_f64() * 1e3,
        });
        self.last = now;
    }
}

fn pass(name: &str, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        verdict: Verdict::Pass,
        detail: detail.into(),
    }
}

fn symmetric_unimodal(n: &[usize]) -> Result<()> {
    let t = n.len() - 1;
    for a in 0..=t {
        if n[a] != n[t - a] {
            return Err(Error::hard(
                "Jacobian module symmetry",
                format!("n_{a} = {} but n_{} = {}", n[a], t - a, n[t - a]),
            ));
        }
    }
    for a in 0..t / 2 {
        if n[a] > n[a + 1] {
            return Err(Error::hard(
                "Jacobian module unimodality",
                format!("n_{a} = {} > n_{} = {}", n[a], a + 1, n[a + 1]),
            ));
        }
    }
    Ok(())
}

/// Runs every stage and every consistency check on a reduced curve.
pub fn analyze(f: &HomogeneousPoly, opts: &AnalysisOptions) -> Result<Analysis> {
    let mut clock = Clock {
        timings: Vec::new(),
        last: Instant::now(),
    };
    let mut primes = PrimeStream::new(opts.seed);
    let mut checks = Vec::new();

    let jacobian = Jacobian::new(f)?;
    let reduced = check_reduced(jacobian.poly(), opts.seed)?;
    let d = jacobian.degree();
    let t = jacobian.t();
    clock.lap("reducedness");

    let horizon = opts.horizon.unwrap_or_else(|| default_horizon(d));
    let scan = scan(&jacobian, horizon, &mut primes)?;
    checks.push(pass(
        "resolution beyond the horizon",
        format!("dim AR_k matches the resolution for k = {}..={}", horizon + 1, horizon + 4),
    ));
    clock.lap("syzygies");

    let resolution = ResolutionSummary::new(d, &scan.exponents(), &scan.relation_degrees());
    if resolution.rank_alternating_sum() != 0 {
        return Err(Error::hard("resolution ranks", "alternating sum of ranks is not zero"));
    }
    let top = horizon + 4 + d - 1;
    let milnor = scan.milnor_hilbert(top);
    if let Some(k) = (0..=top).find(|&k| resolution.predicted_milnor_dim(k) != milnor[k as usize]) {
        return Err(Error::hard(
            "resolution Hilbert function",
            format!("resolution predicts {} for dim M_{k}, measured {}", resolution.predicted_milnor_dim(k), milnor[k as usize]),
        ));
    }
    let tau = milnor[t + 1];
    if milnor[t + 1..].iter().any(|&v| v != tau) {
        return Err(Error::hard(
            "Milnor algebra stabilization",
            format!("dim M_k is not constant from k = T + 1 = {}", t + 1),
        ));
    }
    checks.push(pass("resolution Hilbert function", format!("dim M_k agrees for k <= {top}")));

    for k in 0..=2 * d - 2 {
        kr_dim(&jacobian, k, &mut primes)?;
    }
    checks.push(pass("Koszul relations", format!("closed form equals rank for k <= {}", 2 * d - 2)));
    clock.lap("Hilbert function");

    let saturation = saturation(&jacobian, &milnor, &mut primes)?;
    let tau_sat = tau_from_saturation(&saturation)?;
    if tau_sat != tau {
        return Err(Error::hard(
            "tau",
            format!("dim M_(T+1) = {tau} but the saturation stabilizes at {tau_sat}"),
        ));
    }
    checks.push(pass("tau", format!("tau = {tau} from dim M_(T+1) and from the saturation")));
    let module_table = jacobian_module_table(&saturation, t);
    symmetric_unimodal(&module_table.n_values)?;
    checks.push(pass("Jacobian module symmetry and unimodality", format!("T = {t}")));
    let nu = module_table.nu;
    clock.lap("saturation");

    let thresholds = thresholds(d, &milnor, tau);
    let defects = defect_sequence(&scan, &saturation)?;
    for (k, &def) in defects.defects.iter().enumerate() {
        let via_module = tau as i64 - milnor[k] as i64 + module_table.n_values.get(k).copied().unwrap_or(0) as i64;
        if via_module != def as i64 {
            return Err(Error::hard(
                "defect identity",
                format!("defect_{k} = {def}, tau - dim M_k + n_k = {via_module}"),
            ));
        }
    }
    checks.push(pass("defect equality", "essential relations, saturation and Jacobian module agree"));

    let r = scan.mdr();
    let class = classify(&scan.exponents(), tau, nu, d)?;
    checks.push(pass("trichotomy", class.to_string()));
    checks.push(check_dpw_bounds(d, r, tau)?);
    let nu_formulas = crate::classify::nu_via_formulas(d, r, tau)?;
    checks.push(check_nu_formulas(d, r, tau, nu)?);
    let splitting = splitting_type(d, r, tau, nu)?;
    checks.push(pass("splitting identity", format!("({}, {})", splitting.d1, splitting.d2)));
    if class.is_free() && (splitting.d1, splitting.d2) != (r, d - 1 - r) {
        return Err(Error::hard("splitting type", "free curve whose splitting type is not its exponents"));
    }
    checks.push(check_ct_lower_bound(thresholds.ct, r, d)?);
    checks.push(ctst_relation(thresholds.ct, thresholds.st, &class, nu, t)?);
    let exps = scan.exponents();
    if exps.len() == 3 {
        let sigma = (3 * (d - 1)) as i64 - exps.iter().map(|&e| i64::from(e)).sum::<i64>();
        if module_table.sigma.map(|s| s as i64) != Some(sigma) {
            return Err(Error::hard(
                "initial degree of N(f)",
                format!("3(d-1) - (d1+d2+d3) = {sigma}, table gives {:?}", module_table.sigma),
            ));
        }
        checks.push(pass("initial degree of N(f)", format!("sigma = {sigma}")));
    }
    let bounds = dpw_bounds(d, r, tau);
    let maximal = maximal_tjurina(d, r, tau);
    let maximizing = maximizing_status(d, r, tau, &class, opts.ade_asserted)?;
    clock.lap("classification");

    Ok(Analysis {
        jacobian,
        reduced,
        scan,
        resolution,
        milnor,
        saturation,
        module_table,
        tau,
        nu,
        thresholds,
        defects,
        splitting,
        class,
        bounds,
        nu_formulas,
        maximal_tjurina: maximal,
        maximizing,
        checks,
        timings: clock.timings,
    })
}

/// Outcome of adding a line to a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineAdditionVerdict {
    pub original: CurveClass,
    pub extended: CurveClass,
    /// Whether the implication "extended free implies original free or plus-one
    /// generated" had to be tested.
    pub implication_tested: bool,
}

/// Analyzes `f` and `f * ell`; when the union is free, checks that `f` is
/// free or plus-one generated.
pub fn line_addition_check(
    f: &HomogeneousPoly,
    ell: &HomogeneousPoly,
    opts: &AnalysisOptions,
) -> Result<LineAdditionVerdict> {
    if ell.degree() != 1 || ell.is_zero() {
        return Err(Error::InvalidInput("the added curve must be a line".into()));
    }
    let g = f.mul(ell);
    if crate::jacobian::check_reduced(&g, opts.seed).is_err() {
        return Err(Error::InvalidInput("the line is a component of the curve".into()));
    }
    let sub = AnalysisOptions {
        horizon: None,
        ..opts.clone()
    };
    let original = analyze(f, &sub)?.class;
    let extended = analyze(&g, &sub)?.class;
    let implication_tested = extended.is_free();
    if implication_tested && !(original.is_free() || original.is_plus_one_generated()) {
        return Err(Error::hard(
            "line addition",
            format!("the union is free but the curve is {original}"),
        ));
    }
    Ok(LineAdditionVerdict {
        original,
        extended,
        implication_tested,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn run(src: &str) -> Analysis {
        analyze(&parse_poly(src).unwrap(), &AnalysisOptions::default()).unwrap()
    }

    #[test]
    fn xyz_profile() {
        let a = run("x*y*z");
        assert_eq!(a.class, CurveClass::Free { d1: 1, d2: 1 });
        assert_eq!(a.tau, 3);
        assert_eq!(a.ct_plus_st(), Some(3));
        assert_eq!(a.defects.defects, vec![2, 0]);
    }

    #[test]
    fn smooth_cubic_profile() {
        let a = run("x^3+y^3+z^3");
        assert_eq!(a.tau, 0);
        assert_eq!(a.nu, 3);
        assert_eq!(a.module_table.n_values, vec![1, 3, 3, 1]);
        assert_eq!(a.thresholds.ct, None);
    }

    #[test]
    fn thom_sebastiani_quartic() {
        let a = run("x^2*y^2+z^4");
        assert_eq!(a.tau, 6);
        assert_eq!(a.mdr(), 1);
        assert_eq!(a.nu, 1);
        assert_eq!(a.ct_plus_st(), Some(8));
    }

    #[test]
    fn adding_z_to_xy() {
        let v = line_addition_check(
            &parse_poly("x*y").unwrap(),
            &parse_poly("z").unwrap(),
            &AnalysisOptions::default(),
        )
        .unwrap();
        assert!(v.extended.is_free());
        assert!(v.implication_tested);
        assert!(line_addition_check(
            &parse_poly("x*y").unwrap(),
            &parse_poly("x").unwrap(),
            &AnalysisOptions::default()
        )
        .is_err());
    }
}
