//! The check registry: every identity the workbench verifies for a preset,
//! run independently and reported in a fixed order.

mod checks;
mod expected;

pub(crate) use checks::half_d_offset;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{Comparison, NumericStatus};
use crate::error::{Error, Result};
use crate::expr;
use crate::forms::{Calculus, GradedForm};
use crate::presets::{self, PresetId};

/// A preset built with its parameters.
#[derive(Clone, Debug)]
pub struct Session {
    pub id: PresetId,
    pub alpha: Option<BigRational>,
    pub calc: Calculus,
}

impl Session {
    pub fn new(id: PresetId, alpha: Option<BigRational>) -> Result<Self> {
        let alpha = presets::resolve_alpha(id, alpha)?;
        let calc = presets::build(id, alpha.clone())?;
        Ok(Session { id, alpha, calc })
    }

    /// Substitutes `alpha` for `{a}` in an expression template.
    pub(crate) fn fill(&self, template: &str) -> String {
        match &self.alpha {
            Some(a) => template.replace("{a}", &format!("({a})")),
            None => template.to_string(),
        }
    }

    /// Parses a template against the calculus as a form of degree `deg`.
    pub(crate) fn form(&self, template: &str, deg: usize) -> Result<GradedForm> {
        expr::parse_form(&self.fill(template), &self.calc, deg)
    }

    pub fn parameters(&self) -> Parameters {
        Parameters { alpha: self.alpha.as_ref().map(ToString::to_string) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Forms,
    Structure,
    Connection,
    Limit,
}

/// A registered check.
pub struct CheckDef {
    pub id: &'static str,
    pub group: Group,
    pub summary: &'static str,
    applies: fn(PresetId) -> bool,
    run: fn(&Session) -> Result<Vec<Comparison>>,
}

impl CheckDef {
    pub fn applies_to(&self, id: PresetId) -> bool {
        (self.applies)(id)
    }
}

fn all(_: PresetId) -> bool {
    true
}

fn inner(id: PresetId) -> bool {
    id.is_inner()
}

fn two_inner(id: PresetId) -> bool {
    matches!(id, PresetId::Calc2a | PresetId::Calc2b)
}

fn three(id: PresetId) -> bool {
    id.takes_alpha()
}

fn calc2a(id: PresetId) -> bool {
    id == PresetId::Calc2a
}

fn calc3b(id: PresetId) -> bool {
    id == PresetId::Calc3b
}

fn with_limit(id: PresetId) -> bool {
    !id.takes_alpha()
}

fn not_calc2(id: PresetId) -> bool {
    !two_inner(id)
}

macro_rules! check {
    ($id:literal, $group:ident, $applies:expr, $run:path, $summary:literal) => {
        CheckDef { id: $id, group: Group::$group, summary: $summary, applies: $applies, run: $run }
    };
}

/// All checks in report order.
pub static CHECKS: &[CheckDef] = &[
    check!("derivation-table", Forms, all, checks::derivation_table, "e_a x and e_a y"),
    check!(
        "coordinate-commutation",
        Forms,
        all,
        checks::coordinate_commutation,
        "commutation of x, y with the coordinate differentials"
    ),
    check!("coordinate-squares", Forms, all, checks::coordinate_squares, "quadratic relations of dx, dy"),
    check!("frame-differentials", Forms, all, checks::frame_differentials, "coordinate differentials on the frame"),
    check!("frame-inverse", Forms, all, checks::frame_inverse, "frame in coordinate differentials"),
    check!("frame-roundtrip", Forms, all, checks::frame_roundtrip, "coordinate and frame conversions are inverse"),
    check!("wedge-relations", Forms, all, checks::wedge_relations, "quadratic relations of the frame"),
    check!(
        "supplementary-relation",
        Forms,
        calc3b,
        checks::supplementary_relation,
        "t1 t2 + q t2 t1 = 0 and the quotient it defines"
    ),
    check!("completeness", Forms, all, checks::completeness, "A theta theta = 0 implies A - A C = 0"),
    check!("d-squared", Forms, all, checks::d_squared, "d d = 0 on generators, inverses and the frame"),
    check!(
        "d-well-defined",
        Forms,
        all,
        checks::d_well_defined,
        "d respects f theta = theta f and the frame relations"
    ),
    check!(
        "dtheta-coordinate-route",
        Forms,
        inner,
        checks::dtheta_routes,
        "d theta^a from structure data and from coordinates agree"
    ),
    check!("dtheta-table", Forms, not_calc2, checks::dtheta_table, "d theta^a in closed form"),
    check!("dtau", Structure, three, checks::dtau, "d tau on the frame and through d theta^3"),
    check!("structure-data", Structure, inner, checks::structure_data, "D and K"),
    check!(
        "structure-elements",
        Structure,
        inner,
        checks::structure_elements,
        "d theta^a = -1/2 C^a_bc theta^b theta^c"
    ),
    check!(
        "twisted-bracket",
        Structure,
        inner,
        checks::twisted_bracket,
        "[l_b, l_c]_C = l_a D^a_bc + K_bc and twisted antisymmetry"
    ),
    check!(
        "structure-consistency",
        Structure,
        inner,
        checks::structure_consistency,
        "C - D + l(b delta c) - l(d delta e) C = 0"
    ),
    check!("theta-form", Structure, inner, checks::theta_form, "theta = -l_a theta^a"),
    check!("theta-closed", Structure, two_inner, checks::theta_closed, "d theta = 0"),
    check!("theta-generates", Structure, inner, checks::theta_generates, "df = -[theta, f]"),
    check!("theta-square", Structure, inner, checks::theta_square, "theta^2 = 1/2 (l_a D^a_bc + K_bc) theta^b theta^c"),
    check!("curvature-of-theta", Structure, inner, checks::theta_curvature, "d theta + theta^2 = -1/2 K theta theta"),
    check!("dual-maurer-cartan", Structure, inner, checks::dual_maurer_cartan, "[e_b, e_c]_C f = e_a f C^a_bc"),
    check!("sigma", Connection, inner, checks::sigma, "(1 + S)(1 - C) = 0"),
    check!("leibniz-rules", Connection, inner, checks::leibniz_rules, "D(f theta^a) = D(theta^a f) for f = x, y"),
    check!(
        "d0-via-theta",
        Connection,
        inner,
        checks::d0_via_theta_check,
        "D theta^a = -theta (x) theta^a + sigma(theta^a (x) theta)"
    ),
    check!(
        "torsion",
        Connection,
        inner,
        checks::torsion_check,
        "torsion of the zero-offset connection is -1/2 D theta theta"
    ),
    check!("torsion-free", Connection, inner, checks::torsion_free, "offset 1/2 D gives zero torsion"),
    check!("metric", Connection, two_inner, checks::metric, "metric compatibility of sigma"),
    check!("metric-matrix", Connection, two_inner, checks::metric_matrix, "matrix form of the metric condition"),
    check!("metric-omega", Connection, two_inner, checks::metric_omega, "omega + omega S = 0 with lowered indices"),
    check!("c-not-metric", Connection, calc2a, checks::c_not_metric, "S = C is not metric compatible"),
    check!("sigma-not-symmetric", Connection, two_inner, checks::sigma_not_symmetric, "g is not sigma-symmetric"),
    check!("q1-regular", Connection, two_inner, checks::q1_regular, "omega of the regular solution is finite at q = 1"),
    check!(
        "singular-sigma",
        Connection,
        two_inner,
        checks::singular_sigma,
        "the second solution is metric but has a pole at q = 1"
    ),
    check!("sigma-parity", Connection, calc2a, checks::sigma_parity, "S(q) = -S(-1/q)"),
    check!("sigma-solutions", Connection, two_inner, checks::sigma_solutions, "solutions of the block ansatz"),
    check!("poisson", Limit, with_limit, checks::poisson_check, "{x, y} = xy by both routes"),
    check!("limit-frame", Limit, with_limit, checks::limit_frame, "p_a and the limit frame"),
    check!("frame-equation", Limit, two_inner, checks::frame_equation, "{p_c, x^a} theta^c_b = delta^a_b"),
    check!(
        "cartan-structure",
        Limit,
        with_limit,
        checks::cartan_structure,
        "first structure equations of the limit frame"
    ),
    check!("curvature", Limit, with_limit, checks::curvature, "Gaussian curvature of the limit metric"),
    check!(
        "connection-limit",
        Limit,
        two_inner,
        checks::connection_limit,
        "limit of omega against the Cartan connection"
    ),
];

pub fn find(id: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|c| c.id == id)
}

pub fn applicable(id: PresetId) -> impl Iterator<Item = &'static CheckDef> {
    CHECKS.iter().filter(move |c| c.applies_to(id))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub label: String,
    pub residual: String,
}

/// The numeric re-evaluation of a check at a rational `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericOutcome {
    pub q: String,
    pub status: NumericStatus,
    pub passed: usize,
    pub failed: usize,
    pub singular: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: String,
    pub summary: String,
    pub status: CheckStatus,
    pub comparisons: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<NumericOutcome>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

fn numeric_outcome(cmps: &[Comparison], q: &BigRational) -> NumericOutcome {
    let (mut passed, mut failed, mut singular) = (0, 0, 0);
    for c in cmps {
        match c.numeric(q) {
            NumericStatus::Pass => passed += 1,
            NumericStatus::Fail => failed += 1,
            NumericStatus::Singular => singular += 1,
        }
    }
    let status = if failed > 0 {
        NumericStatus::Fail
    } else if singular > 0 {
        NumericStatus::Singular
    } else {
        NumericStatus::Pass
    };
    NumericOutcome { q: q.to_string(), status, passed, failed, singular }
}

/// Runs one check and summarizes it.
pub fn run_check(def: &CheckDef, session: &Session, q: Option<&BigRational>) -> CheckOutcome {
    let mut out = CheckOutcome {
        id: def.id.to_string(),
        summary: def.summary.to_string(),
        status: CheckStatus::Pass,
        comparisons: 0,
        failures: Vec::new(),
        error: None,
        numeric: None,
    };
    match (def.run)(session) {
        Ok(cmps) => {
            out.comparisons = cmps.len();
            out.failures = cmps
                .iter()
                .filter(|c| !c.holds())
                .map(|c| Failure { label: c.label.clone(), residual: c.residual() })
                .collect();
            if !out.failures.is_empty() {
                out.status = CheckStatus::Fail;
            }
            out.numeric = q.map(|q| numeric_outcome(&cmps, q));
        }
        Err(e) => {
            out.status = CheckStatus::Error;
            out.error = Some(e.to_string());
        }
    }
    out
}

/// Runs every applicable check (or only `only`) in parallel; the result
/// follows registry order.
pub fn run_checks(session: &Session, only: Option<&str>, q: Option<&BigRational>) -> Result<Vec<CheckOutcome>> {
    let defs: Vec<&CheckDef> = match only {
        Some(name) => {
            let def = find(name).ok_or_else(|| Error::InvalidParameter(format!("unknown check '{name}'")))?;
            if !def.applies_to(session.id) {
                return Err(Error::InvalidParameter(format!("check '{name}' does not apply to {}", session.id)));
            }
            vec![def]
        }
        None => applicable(session.id).collect(),
    };
    Ok(defs.par_iter().map(|d| run_check(d, session, q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn every_preset_passes_its_checks() {
        for id in PresetId::ALL {
            let session = Session::new(id, None).unwrap();
            for outcome in run_checks(&session, None, None).unwrap() {
                assert!(outcome.passed(), "{id} {}: {:?} {:?}", outcome.id, outcome.error, outcome.failures);
            }
        }
    }

    #[test]
    fn calc3_passes_at_another_alpha() {
        let alpha = BigRational::new(2.into(), 3.into());
        for id in [PresetId::Calc3a, PresetId::Calc3b] {
            let session = Session::new(id, Some(alpha.clone())).unwrap();
            assert_eq!(session.fill("{a}*x"), "(2/3)*x");
            for outcome in run_checks(&session, None, None).unwrap() {
                assert!(outcome.passed(), "{id} {}: {:?} {:?}", outcome.id, outcome.error, outcome.failures);
            }
        }
    }

    #[test]
    fn single_check_selection() {
        let session = Session::new(PresetId::Calc2a, None).unwrap();
        let out = run_checks(&session, Some("wedge-relations"), None).unwrap();
        assert_eq!(out.len(), 1);
        assert!(run_checks(&session, Some("dtau"), None).is_err());
        assert!(run_checks(&session, Some("no-such-check"), None).is_err());
    }
}
