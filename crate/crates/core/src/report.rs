//! Report values emitted by the command line, with a JSON schema and a
//! plain-text rendering of the same content.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::climit::{self, CURVATURE_CONVENTION};
use crate::connection::{self, MetricTensor, SigmaTensor};
use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::forms::{index_key, word_string, Table, TableEntry};
use crate::presets::{self, PresetId};
use crate::scalars::QMatrix;
use crate::verify::{self, CheckOutcome, Parameters, Session};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub preset: Option<PresetId>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parameters: Option<Parameters>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub connection: Option<ConnectionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub limit: Option<LimitReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eval: Option<EvalReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub presets: Vec<PresetInfo>,
}

/// Structure data of a calculus. Entries are rendered in the expression
/// grammar and keyed by one-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    #[serde(rename = "C2")]
    pub c2: Vec<Vec<String>>,
    pub basis: Vec<String>,
    #[serde(rename = "Cabc", skip_serializing_if = "Option::is_none", default)]
    pub c_abc: Option<BTreeMap<String, String>>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none", default)]
    pub d: Option<BTreeMap<String, String>>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none", default)]
    pub k: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theta: Option<String>,
    pub dtheta: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionChecks {
    pub sigma: bool,
    pub metric: bool,
    pub torsion_free: bool,
    pub torsion_free_with_offset: bool,
    pub symmetric_metric: bool,
    pub q1_regular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionReport {
    #[serde(rename = "S")]
    pub sigma: Vec<Vec<String>>,
    pub g: Vec<Vec<String>>,
    pub omega: BTreeMap<String, String>,
    /// The central offset `chi = 1/2 D` used for the offset torsion check.
    pub offset: BTreeMap<String, String>,
    pub checks: ConnectionChecks,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pole: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solutions: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrosscheckStatus {
    Match,
    Mismatch,
    Unsupported,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub status: CrosscheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub candidate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<Vec<String>>,
    pub frame: Vec<String>,
    pub frame_equation: Option<bool>,
    pub cartan: String,
    #[serde(rename = "K")]
    pub k: String,
    pub crosscheck: Crosscheck,
    pub convention: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub input: String,
    pub degree: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetInfo {
    pub id: PresetId,
    pub n: usize,
    pub inner: bool,
    pub takes_alpha: bool,
    pub description: String,
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

fn table_strings<T: TableEntry + fmt::Display>(t: &Table<T>) -> BTreeMap<String, String> {
    t.entries().map(|(k, v)| (index_key(k), v.to_string())).collect()
}

fn base(command: &str, session: Option<&Session>) -> Report {
    Report {
        command: command.to_string(),
        preset: session.map(|s| s.id),
        parameters: session.map(Session::parameters),
        ..Report::default()
    }
}

pub fn presets_report() -> Report {
    Report {
        command: "list-presets".into(),
        presets: PresetId::ALL
            .into_iter()
            .map(|id| PresetInfo {
                id,
                n: id.n(),
                inner: id.is_inner(),
                takes_alpha: id.takes_alpha(),
                description: id.description().to_string(),
            })
            .collect(),
        ..Report::default()
    }
}

/// Parses and normalizes an expression, against the preset's calculus
/// when one is given.
pub fn eval_report(text: &str, session: Option<&Session>) -> Result<Report> {
    let value: Expr = expr::parse(text, session.map(|s| &s.calc))?;
    let mut out = base("eval", session);
    out.eval = Some(EvalReport { input: text.to_string(), degree: value.degree(), value: value.to_string() });
    Ok(out)
}

pub fn verify_report(session: &Session, only: Option<&str>, q: Option<&BigRational>) -> Result<Report> {
    let checks = verify::run_checks(session, only, q)?;
    let mut out = base("verify", Some(session));
    out.passed = Some(checks.iter().all(CheckOutcome::passed));
    out.checks = checks;
    Ok(out)
}

pub fn structure_report(session: &Session) -> Result<Report> {
    let calc = &session.calc;
    let (c_abc, d, k, theta) = match calc.structure() {
        Ok(s) => (
            Some(table_strings(&s.c_abc)),
            Some(table_strings(&s.d)),
            Some(table_strings(&s.k)),
            Some(s.theta.to_string()),
        ),
        Err(Error::OuterStructureUnavailable) => (None, None, None, None),
        Err(e) => return Err(e),
    };
    let structure = StructureReport {
        c2: matrix_strings(calc.c()),
        basis: calc.exterior().basis(2).iter().map(|w| word_string(w)).collect(),
        c_abc,
        d,
        k,
        theta,
        dtheta: calc.dtheta()?.iter().map(ToString::to_string).collect(),
        relations: calc.relation_report()?.iter().map(ToString::to_string).collect(),
    };
    let mut out = base("structure", Some(session));
    out.structure = Some(structure);
    Ok(out)
}

fn holds(cmps: Result<Vec<crate::check::Comparison>>) -> Result<bool> {
    Ok(cmps?.iter().all(|c| c.holds()))
}

/// The zero-offset connection built from the preset's `σ`, with every
/// structural check evaluated; `solve` adds the solutions of the block
/// ansatz where supported.
pub fn connection_report(session: &Session, solve: bool) -> Result<Report> {
    let calc = &session.calc;
    let sigma: SigmaTensor = presets::default_sigma(session.id);
    let g: MetricTensor = presets::default_metric(session.id);
    let conn = connection::omega0(calc, &sigma)?;
    let offset = verify::half_d_offset(session)?;
    let checks = ConnectionChecks {
        sigma: holds(connection::sigma_check(&sigma, calc.c()))?,
        metric: holds(connection::metric_check(&sigma, &g))?,
        torsion_free: holds(connection::torsionfree_check(calc, &conn))?,
        torsion_free_with_offset: holds(connection::torsionfree_check(calc, &offset))?,
        symmetric_metric: holds(connection::sigma_symmetry_check(&sigma, &g))?,
        q1_regular: conn.is_q1_regular(),
    };
    let pole = conn.first_pole().map(|(idx, mono, order)| {
        format!("order {order} pole in the {mono} coefficient of omega at ({})", index_key(&idx))
    });
    let solutions = if solve {
        let sols = connection::solve_sigma(calc.c(), &g)?;
        Some(sols.iter().map(|s| matrix_strings(s.matrix())).collect())
    } else {
        None
    };
    let mut out = base("connection", Some(session));
    out.connection = Some(ConnectionReport {
        sigma: matrix_strings(sigma.matrix()),
        g: matrix_strings(g.matrix()),
        omega: table_strings(&conn.omega),
        offset: table_strings(&offset.chi),
        checks,
        pole,
        solutions,
    });
    Ok(out)
}

pub fn limit_report(session: &Session) -> Result<Report> {
    let calc = &session.calc;
    let chart = climit::classical_chart(calc)?;
    let frame_equation = match &chart.p {
        Some(p) => Some(holds(climit::frame_equation_check(p, &chart.frame))?),
        None => None,
    };
    let cartan = climit::cartan_connection(&chart.frame)?;
    let k = climit::gauss_curvature(&chart.frame)?;
    let crosscheck = if session.id.is_inner() {
        match climit::connection_limit_crosscheck(calc, &presets::default_sigma(session.id)) {
            Ok(r) => Crosscheck {
                status: if r.matches() { CrosscheckStatus::Match } else { CrosscheckStatus::Mismatch },
                candidate: Some(r.candidate.to_string()),
                residual: Some(r.residual.to_string()),
                message: None,
            },
            Err(e) => Crosscheck {
                status: CrosscheckStatus::Error,
                candidate: None,
                residual: None,
                message: Some(e.to_string()),
            },
        }
    } else {
        Crosscheck {
            status: CrosscheckStatus::Unsupported,
            candidate: None,
            residual: None,
            message: Some("outer calculi carry no connection data".into()),
        }
    };
    let mut out = base("limit", Some(session));
    out.limit = Some(LimitReport {
        p: chart.p.as_ref().map(|p| p.iter().map(ToString::to_string).collect()),
        frame: chart.frame.iter().map(ToString::to_string).collect(),
        frame_equation,
        cartan: cartan.to_string(),
        k: k.to_string(),
        crosscheck,
        convention: CURVATURE_CONVENTION.to_string(),
    });
    Ok(out)
}

impl Report {
    /// Whether the command succeeded as far as its own checks go.
    pub fn succeeded(&self) -> bool {
        self.passed.unwrap_or(true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn write_matrix(out: &mut String, name: &str, m: &[Vec<String>]) {
    let _ = writeln!(out, "{name}:");
    for row in m {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
}

fn write_table(out: &mut String, name: &str, t: &BTreeMap<String, String>) {
    if t.is_empty() {
        let _ = writeln!(out, "{name}: 0");
        return;
    }
    let _ = writeln!(out, "{name}:");
    for (k, v) in t {
        let _ = writeln!(out, "  ({k}) = {v}");
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if let Some(p) = self.preset {
            let _ = write!(out, "{} {p}", self.command);
            if let Some(a) = self.parameters.as_ref().and_then(|p| p.alpha.as_ref()) {
                let _ = write!(out, " (alpha = {a})");
            }
            out.push('\n');
        }
        for info in &self.presets {
            let _ = writeln!(out, "{:<7} n = {}  {}", info.id.to_string(), info.n, info.description);
        }
        if let Some(e) = &self.eval {
            let _ = writeln!(out, "{}", e.value);
        }
        for c in &self.checks {
            let status = match c.status {
                verify::CheckStatus::Pass => "PASS",
                verify::CheckStatus::Fail => "FAIL",
                verify::CheckStatus::Error => "ERROR",
            };
            let _ = write!(out, "{status:<5} {:<24} {} ({} comparisons)", c.id, c.summary, c.comparisons);
            if let Some(n) = &c.numeric {
                let _ = write!(out, " [q = {}: {:?}]", n.q, n.status);
            }
            out.push('\n');
            for fail in &c.failures {
                let _ = writeln!(out, "      {}", fail.residual);
            }
            if let Some(e) = &c.error {
                let _ = writeln!(out, "      {e}");
            }
        }
        if let Some(passed) = self.passed {
            let failed = self.checks.iter().filter(|c| !c.passed()).count();
            if passed {
                let _ = writeln!(out, "all {} checks passed", self.checks.len());
            } else {
                let _ = writeln!(out, "{failed} of {} checks failed", self.checks.len());
            }
        }
        if let Some(s) = &self.structure {
            write_matrix(&mut out, "C", &s.c2);
            let _ = writeln!(out, "2-form basis: {}", s.basis.join(", "));
            for (name, t) in [("C^a_bc", &s.c_abc), ("D^a_bc", &s.d), ("K_bc", &s.k)] {
                if let Some(t) = t {
                    write_table(&mut out, name, t);
                }
            }
            if let Some(t) = &s.theta {
                let _ = writeln!(out, "theta = {t}");
            }
            for (a, d) in s.dtheta.iter().enumerate() {
                let _ = writeln!(out, "d t{} = {d}", a + 1);
            }
            for r in &s.relations {
                let _ = writeln!(out, "{r}");
            }
        }
        if let Some(c) = &self.connection {
            write_matrix(&mut out, "S", &c.sigma);
            write_matrix(&mut out, "g", &c.g);
            write_table(&mut out, "omega^a_bc", &c.omega);
            write_table(&mut out, "offset 1/2 D", &c.offset);
            let k = &c.checks;
            for (name, v) in [
                ("(1 + S)(1 - C) = 0", k.sigma),
                ("metric compatible", k.metric),
                ("torsion free", k.torsion_free),
                ("torsion free with offset", k.torsion_free_with_offset),
                ("g = S g", k.symmetric_metric),
                ("finite at q = 1", k.q1_regular),
            ] {
                let _ = writeln!(out, "{name}: {}", if v { "yes" } else { "no" });
            }
            if let Some(p) = &c.pole {
                let _ = writeln!(out, "{p}");
            }
            if let Some(sols) = &c.solutions {
                let _ = writeln!(out, "{} solutions", sols.len());
                for (i, s) in sols.iter().enumerate() {
                    write_matrix(&mut out, &format!("solution {}", i + 1), s);
                }
            }
        }
        if let Some(l) = &self.limit {
            if let Some(p) = &l.p {
                for (a, pa) in p.iter().enumerate() {
                    let _ = writeln!(out, "p{} = {pa}", a + 1);
                }
            }
            for (a, t) in l.frame.iter().enumerate() {
                let _ = writeln!(out, "t{} = {t}", a + 1);
            }
            if let Some(ok) = l.frame_equation {
                let _ = writeln!(out, "frame equation: {}", if ok { "holds" } else { "fails" });
            }
            let _ = writeln!(out, "omega^1_2 = {}", l.cartan);
            let _ = writeln!(out, "K = {}", l.k);
            let status = match l.crosscheck.status {
                CrosscheckStatus::Match => "match",
                CrosscheckStatus::Mismatch => "mismatch",
                CrosscheckStatus::Unsupported => "unsupported",
                CrosscheckStatus::Error => "error",
            };
            let _ = write!(out, "connection limit: {status}");
            if let Some(r) = &l.crosscheck.residual {
                let _ = write!(out, ", residual {r}");
            }
            if let Some(m) = &l.crosscheck.message {
                let _ = write!(out, " ({m})");
            }
            out.push('\n');
            let _ = writeln!(out, "convention: {}", l.convention);
        }
        f.write_str(out.trim_end())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_for_every_command() {
        let s = Session::new(PresetId::Calc2a, None).unwrap();
        let reports = vec![
            presets_report(),
            eval_report("x*dx", Some(&s)).unwrap(),
            verify_report(&s, Some("wedge-relations"), None).unwrap(),
            structure_report(&s).unwrap(),
            connection_report(&s, false).unwrap(),
            limit_report(&s).unwrap(),
        ];
        for r in reports {
            let back = Report::from_json(&r.to_json()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn calc3a_structure_shows_d() {
        let s = Session::new(PresetId::Calc3a, None).unwrap();
        let r = structure_report(&s).unwrap();
        let d = r.structure.unwrap().d.unwrap();
        assert_eq!(d["3,1,2"], "2*(q - 1)^-1");
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn calc2b_curvature() {
        let s = Session::new(PresetId::Calc2b, None).unwrap();
        let l = limit_report(&s).unwrap().limit.unwrap();
        assert_eq!(l.crosscheck.status, CrosscheckStatus::Match);
        assert_eq!(l.frame_equation, Some(true));
        assert_eq!(l.k, "x^-4 + x^-4*y^4");
    }

    #[test]
    fn outer_structure_has_no_structure_elements() {
        let s = Session::new(PresetId::Outer, None).unwrap();
        let st = structure_report(&s).unwrap().structure.unwrap();
        assert!(st.c_abc.is_none() && st.theta.is_none());
        assert!(connection_report(&s, false).is_err());
        assert_eq!(limit_report(&s).unwrap().limit.unwrap().crosscheck.status, CrosscheckStatus::Unsupported);
    }
}
