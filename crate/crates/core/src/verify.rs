//! Theorem-level checks for the sub-Bergman inclusion and equality results,
//! each producing a self-contained JSON report.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::functions::{
    ratio_table, BlaschkeProduct, DiskPoint, NormalizedZeroKernel, SchurFunction,
};
use crate::kernels::{gram, GramMatrix, KernelExpr, PointSet};
use crate::modelspace::pointwise_bound_constant;
use crate::psd::{self, dominance_delta_min, PsdVerdict, DEFAULT_TOL};

/// Slack on analytic constants when comparing against grid measurements.
pub const REPORT_TOL: f64 = 1e-6;
/// Rings added near the boundary when estimating the Blaschke ratio supremum.
pub const BOUNDARY_RINGS: [f64; 3] = [0.99, 0.999, 0.9999];
pub const BOUNDARY_ANGLES: usize = 64;
/// Default radii and angle count for ratio tables.
pub const CONVERSE_RADII: [f64; 3] = [0.9, 0.99, 0.999];
pub const CONVERSE_ANGLES: usize = 64;
/// Radius whose ratio value anchors the "bounded" rule.
pub const REFERENCE_RADIUS: f64 = 0.5;
const DIVERGENCE_FACTOR: f64 = 2.0;
const BOUNDED_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Divergent,
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub b: String,
    pub alpha: Option<f64>,
    pub grid: Value,
    pub analytic_constant: Option<f64>,
    pub measured: f64,
    pub verdict: Verdict,
    pub details: Vec<Value>,
}

impl TheoremReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is plain data")
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidWeight(alpha))
    }
}

/// `(1 + |b(0)|) / (1 - |b(0)|)`, the constant in `A²_{alpha-1} ⊆ A_alpha(b)`.
pub fn inclusion_constant(b: &SchurFunction) -> Result<f64> {
    let f0 = NormalizedZeroKernel::new(b.clone())?;
    Ok(f0.inverse_bound().powi(2))
}

/// Dominance of `WeightedBergman(alpha - 1)` by `SubBergman(b, alpha)` on the
/// Gram-safe part of `points`, against `(1 + |b(0)|) / (1 - |b(0)|)`.
pub fn verify_inclusion(b: &SchurFunction, alpha: f64, points: &PointSet) -> Result<TheoremReport> {
    check_alpha(alpha)?;
    if b.is_constant() {
        return Err(Error::InvalidArgument(format!("{b} is constant")));
    }
    let constant = inclusion_constant(b)?;
    let points = points.gram_safe()?;
    let k1 = KernelExpr::weighted_bergman(alpha - 1.0)?;
    let k2 = KernelExpr::sub_bergman(b.clone(), alpha)?;
    let report = dominance_delta_min(&k1, &k2, &points)?;
    let pass = report.delta_min <= constant + REPORT_TOL * constant.max(1.0);
    Ok(TheoremReport {
        theorem: "sub".into(),
        b: b.to_string(),
        alpha: Some(alpha),
        grid: points.spec().to_json(),
        analytic_constant: Some(constant),
        measured: report.delta_min,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        details: vec![json!({"dominance": report.to_json()})],
    })
}

/// `points` together with rings at radii 0.99, 0.999, 0.9999.
pub fn boundary_refined(points: &PointSet) -> Result<PointSet> {
    let mut all: Vec<DiskPoint> = points.points().to_vec();
    for &r in &BOUNDARY_RINGS {
        for k in 0..BOUNDARY_ANGLES {
            let theta = std::f64::consts::TAU * k as f64 / BOUNDARY_ANGLES as f64;
            all.push(DiskPoint::from_polar(r, theta)?);
        }
    }
    all.sort_by(|a, b| {
        (a.value().re, a.value().im)
            .partial_cmp(&(b.value().re, b.value().im))
            .expect("finite points")
    });
    all.dedup_by(|a, b| (a.value() - b.value()).norm() <= crate::kernels::MIN_SEPARATION);
    PointSet::explicit(all)
}

/// `SubBergman(b, alpha) <= N C WeightedBergman(alpha - 1)` for a degree-N
/// Blaschke product, with `C` the grid maximum of the Blaschke ratio.
pub fn verify_equality_forward(
    b: &BlaschkeProduct,
    alpha: f64,
    points: &PointSet,
) -> Result<TheoremReport> {
    check_alpha(alpha)?;
    let refined = boundary_refined(points)?;
    let bound = pointwise_bound_constant(b, &refined)?;
    let degree = b.degree() as f64;
    let constant = degree * bound.constant;
    let symbol = SchurFunction::Blaschke(b.clone());
    let points = points.gram_safe()?;
    let k1 = KernelExpr::sub_bergman(symbol.clone(), alpha)?;
    let k2 = KernelExpr::weighted_bergman(alpha - 1.0)?;
    let report = dominance_delta_min(&k1, &k2, &points)?;
    let pass = report.delta_min <= constant * (1.0 + REPORT_TOL);
    Ok(TheoremReport {
        theorem: "sub2-forward".into(),
        b: symbol.to_string(),
        alpha: Some(alpha),
        grid: points.spec().to_json(),
        analytic_constant: Some(constant),
        measured: report.delta_min,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        details: vec![
            json!({
                "degree": b.degree(),
                "c_grid": bound.constant,
                "pointwise_identity_error": bound.identity_error,
                "boundary_rings": BOUNDARY_RINGS,
                "boundary_angles": BOUNDARY_ANGLES,
            }),
            json!({"dominance": report.to_json()}),
        ],
    })
}

/// Classifies a ratio table. Returns `(verdict, rule)`.
///
/// Divergent: the last three values each grow by a factor of at least 2.
/// Bounded: the maximum is reached before the last radius and the table does
/// not increase afterwards, or every value stays below 10 times `reference`.
/// Anything else is inconclusive and reported as `Fail`.
pub fn classify_ratio_table(table: &[f64], reference: f64) -> (Verdict, &'static str) {
    let n = table.len();
    if n >= 3
        && table[n - 2] >= DIVERGENCE_FACTOR * table[n - 3]
        && table[n - 1] >= DIVERGENCE_FACTOR * table[n - 2]
    {
        return (Verdict::Divergent, "last three values grow by factor >= 2");
    }
    let (argmax, max) =
        table
            .iter()
            .copied()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
            );
    if n > 0 && argmax + 1 < n && table[argmax..].windows(2).all(|w| w[1] <= w[0]) {
        return (Verdict::Bounded, "nonincreasing beyond the maximum");
    }
    if max <= BOUNDED_FACTOR * reference {
        return (Verdict::Bounded, "below 10x the value at r = 0.5");
    }
    (
        Verdict::Fail,
        "inconclusive: growth without the divergence pattern",
    )
}

/// Ratio table `r -> max_theta (1 - |b|^2) / (1 - |z|^2)` on circles of radius `r`.
pub fn verify_equality_converse(
    b: &SchurFunction,
    radii: &[f64],
    angles: usize,
) -> Result<TheoremReport> {
    if radii.is_empty() || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(
            "radii must be nonempty and strictly increasing".into(),
        ));
    }
    let table = ratio_table(b, radii, angles)?;
    let reference = ratio_table(b, &[REFERENCE_RADIUS], angles)?[0];
    let (verdict, rule) = classify_ratio_table(&table, reference);
    Ok(TheoremReport {
        theorem: "sub2-converse".into(),
        b: b.to_string(),
        alpha: None,
        grid: json!({"kind": "ratio", "radii": radii, "angles": angles}),
        analytic_constant: None,
        measured: *table.last().expect("nonempty"),
        verdict,
        details: vec![json!({
            "table": table,
            "reference_radius": REFERENCE_RADIUS,
            "reference_value": reference,
            "rule": rule,
        })],
    })
}

/// The alpha = 0 case: inclusion of H² in A(b), plus either the forward
/// bound (finite Blaschke b) or a divergent ratio table (anything else).
pub fn verify_m1(b: &SchurFunction, points: &PointSet, radii: &[f64]) -> Result<TheoremReport> {
    let inclusion = verify_inclusion(b, 0.0, points)?;
    let (second, second_ok) = match b.as_blaschke() {
        Some(blaschke) => {
            let forward = verify_equality_forward(blaschke, 0.0, points)?;
            let ok = forward.passed();
            (forward, ok)
        }
        None => {
            let converse = verify_equality_converse(b, radii, CONVERSE_ANGLES)?;
            let ok = converse.verdict == Verdict::Divergent;
            (converse, ok)
        }
    };
    let pass = inclusion.passed() && second_ok;
    Ok(TheoremReport {
        theorem: "m1-special-case".into(),
        b: b.to_string(),
        alpha: Some(0.0),
        grid: inclusion.grid.clone(),
        analytic_constant: inclusion.analytic_constant,
        measured: inclusion.measured,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        details: vec![inclusion.to_json(), second.to_json()],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCheck {
    /// Max deviation of the conjugate-scaled kernel from its closed form.
    pub pointwise_error: f64,
    /// PSD verdict for `gram(SubBergman(b, 0)) - gram(cscale(f0, Szego))`.
    pub difference: PsdVerdict,
}

/// `conj(f0(w)) f0(z) / (1 - conj(w) z) <= SubBergman(b, 0)` on the Gram-safe part of `points`.
pub fn zero_kernel_chain_check(b: &SchurFunction, points: &PointSet) -> Result<ChainCheck> {
    let f0 = NormalizedZeroKernel::new(b.clone())?;
    let points = points.gram_safe()?;
    let scaled = KernelExpr::conjugate_scale(
        crate::functions::AnalyticFunction::ZeroKernel(f0.clone()),
        KernelExpr::szego(),
    );
    let g_small = gram(&scaled, &points)?;
    let g_big = gram(&KernelExpr::sub_bergman(b.clone(), 0.0)?, &points)?;
    let values: Vec<Complex64> = points
        .points()
        .iter()
        .map(|&p| f0.eval(p))
        .collect::<Result<_>>()?;
    let mut pointwise_error = 0.0f64;
    for (i, &z) in points.points().iter().enumerate() {
        for (j, &w) in points.points().iter().enumerate() {
            let closed = values[j].conj() * values[i]
                / (Complex64::new(1.0, 0.0) - w.value().conj() * z.value());
            pointwise_error = pointwise_error.max((g_small.matrix()[(i, j)] - closed).norm());
        }
    }
    let diff = GramMatrix::from_matrix(g_big.matrix() - g_small.matrix())?;
    Ok(ChainCheck {
        pointwise_error,
        difference: psd::is_psd(&diff, DEFAULT_TOL)?,
    })
}
