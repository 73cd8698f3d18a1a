use num_rational::BigRational;

use super::expected;
use super::Session;
use crate::algebra::{Laurent, PlaneElement};
use crate::check::Comparison;
use crate::climit::{
    cartan_connection, classical_chart, connection_limit_crosscheck, frame_equation_check, gauss_curvature, poisson,
    poisson_via_commutator, structure_equation_check, CForm, CRational,
};
use crate::connection::{
    d0_via_theta, metric_check, metric_matrix_check, metric_omega_check, omega0, sigma_check, sigma_symmetry_check,
    solve_sigma, torsion, torsionfree_check, ConnectionData, SigmaTensor,
};
use crate::error::{Error, Result};
use crate::expr;
use crate::forms::{all_indices, index_key, Coordinate, GradedForm, Table};
use crate::presets::{self, PresetId};
use crate::scalars::QScalar;

type Out = Result<Vec<Comparison>>;

fn half() -> QScalar {
    QScalar::from_ratio(&BigRational::new(1.into(), 2.into()))
}

fn all_hold(cmps: &[Comparison]) -> bool {
    cmps.iter().all(Comparison::holds)
}

fn element(s: &Session, template: &str) -> Result<PlaneElement> {
    expr::parse_element(&s.fill(template))
}

fn p_of(s: &Session) -> Result<QScalar> {
    presets::c_parameter(s.id).ok_or_else(|| Error::Unsupported(format!("{} has no two-index C parameter", s.id)))
}

fn conn0(s: &Session) -> Result<ConnectionData> {
    omega0(&s.calc, &presets::default_sigma(s.id))
}

fn generators() -> Vec<PlaneElement> {
    let (x, y) = (PlaneElement::x(), PlaneElement::y());
    vec![x.clone(), y.clone(), x.inverse().expect("unit"), y.inverse().expect("unit")]
}

pub(super) fn derivation_table(s: &Session) -> Out {
    let mut out = Vec::new();
    for (a, (ex, ey)) in expected::derivation_table(s.id).into_iter().enumerate() {
        let e = s.calc.derivation(a);
        out.push(Comparison::new(format!("e{} x", a + 1), e.apply(&PlaneElement::x()), element(s, ex)?));
        out.push(Comparison::new(format!("e{} y", a + 1), e.apply(&PlaneElement::y()), element(s, ey)?));
    }
    Ok(out)
}

fn vanishing(s: &Session, exprs: &[&str], deg: usize) -> Out {
    exprs.iter().map(|e| Ok(Comparison::new(s.fill(e), s.form(e, deg)?, GradedForm::zero(deg)))).collect()
}

pub(super) fn coordinate_commutation(s: &Session) -> Out {
    vanishing(s, &expected::coordinate_relations(s.id), 1)
}

pub(super) fn coordinate_squares(s: &Session) -> Out {
    vanishing(s, &expected::coordinate_squares(s.id), 2)
}

pub(super) fn frame_differentials(s: &Session) -> Out {
    expected::frame_differentials(s.id)
        .into_iter()
        .map(|(sym, e)| Ok(Comparison::new(sym, s.form(sym, 1)?, s.form(e, 1)?)))
        .collect()
}

pub(super) fn frame_inverse(s: &Session) -> Out {
    expected::frame_inverse(s.id)
        .into_iter()
        .enumerate()
        .map(|(a, e)| Ok(Comparison::new(format!("t{}", a + 1), s.calc.theta_form(a), s.form(e, 1)?)))
        .collect()
}

pub(super) fn frame_roundtrip(s: &Session) -> Out {
    s.calc.identity_frame_roundtrip()
}

fn basis_dimension(s: &Session, expect: i64) -> Comparison {
    let dim = s.calc.exterior().dimension(2) as i64;
    Comparison::new("dimension of 2-forms", QScalar::from_int(dim), QScalar::from_int(expect))
}

pub(super) fn wedge_relations(s: &Session) -> Out {
    let mut out = vanishing(s, &expected::wedge_relations(s.id), 2)?;
    if s.id == PresetId::Calc3a {
        out.push(basis_dimension(s, 4));
        let independent = s.calc.exterior().is_basis_word(&[1, 0]);
        out.push(Comparison::new("t2 t1 is independent of t1 t2", independent, true));
    }
    Ok(out)
}

pub(super) fn supplementary_relation(s: &Session) -> Out {
    let mut out = vanishing(s, &["t1*t2 + q*t2*t1"], 2)?;
    out.push(basis_dimension(s, 3));
    Ok(out)
}

pub(super) fn completeness(s: &Session) -> Out {
    Ok(s.calc.identity_completeness(None))
}

pub(super) fn d_squared(s: &Session) -> Out {
    let mut out = Vec::new();
    for f in generators() {
        out.extend(s.calc.identity_d_squared(&GradedForm::function(f))?);
    }
    for a in 0..s.calc.n() {
        out.extend(s.calc.identity_d_squared(&s.calc.theta_form(a))?);
    }
    Ok(out)
}

pub(super) fn d_well_defined(s: &Session) -> Out {
    let mut out = Vec::new();
    for f in generators() {
        out.extend(s.calc.identity_d_respects_bimodule(&f)?);
    }
    out.extend(s.calc.identity_d_respects_relations()?);
    Ok(out)
}

pub(super) fn dtheta_routes(s: &Session) -> Out {
    s.calc.identity_dtheta_routes()
}

pub(super) fn dtheta_table(s: &Session) -> Out {
    let table = expected::dtheta(s.id).ok_or_else(|| Error::Unsupported(format!("no closed form for {}", s.id)))?;
    let dtheta = s.calc.dtheta()?;
    table
        .into_iter()
        .enumerate()
        .map(|(a, e)| Ok(Comparison::new(format!("d t{}", a + 1), dtheta[a].clone(), s.form(e, 2)?)))
        .collect()
}

pub(super) fn dtau(s: &Session) -> Out {
    let calc = &s.calc;
    let tau = calc.differential(Coordinate::Tau);
    let direct = calc.d(&tau)?;
    let frame = s.form(expected::DTAU_FRAME, 2)?;
    let dtheta3 = calc.dtheta()?[2].clone();
    let xy = element(s, "x*y")?;
    let (a, b) = expected::DTAU_THETA3;
    let b = element(s, b)?;
    let sandwiched = dtheta3.left_mul(&(&b * &xy)).right_mul(&xy);
    let relation = s.form("t1*t2 + q*t2*t1", 2)?.left_mul(&(&element(s, a)? * &(&xy * &xy)));
    let mut out = vec![
        Comparison::new(
            "d tau = dx dy + q dy dx",
            direct.clone(),
            calc.coordinate_second_differential(Coordinate::Tau)?,
        ),
        Comparison::new("d tau on the frame", direct.clone(), frame),
        Comparison::new("d tau through d t3", direct.clone(), -(&relation + &sandwiched)),
    ];
    if s.id == PresetId::Calc3b {
        out.push(Comparison::new("d tau proportional to d t3", direct, -sandwiched));
    }
    Ok(out)
}

pub(super) fn structure_data(s: &Session) -> Out {
    let st = s.calc.structure()?;
    let n = s.calc.n();
    let mut d = Table::<QScalar>::zeros(n, 3);
    for (idx, e) in expected::d_entries(s.id) {
        let v =
            element(s, e)?.as_scalar().ok_or_else(|| Error::InvalidParameter(format!("D entry {e} is not central")))?;
        d.set(&[idx[0] - 1, idx[1] - 1, idx[2] - 1], v);
    }
    let mut out = Vec::new();
    for idx in all_indices(n, 3) {
        out.push(Comparison::new(format!("D at ({})", index_key(&idx)), st.d.get(&idx), d.get(&idx)));
    }
    for idx in all_indices(n, 2) {
        out.push(Comparison::new(format!("K at ({})", index_key(&idx)), st.k.get(&idx), QScalar::zero()));
    }
    Ok(out)
}

pub(super) fn structure_elements(s: &Session) -> Out {
    let mut out = s.calc.identity_structure_elements()?;
    if let Some(stated) = expected::structure_elements(s.id) {
        let st = s.calc.structure()?;
        let p = p_of(s)?;
        for (a, e) in stated.iter().enumerate() {
            let c12 = element(s, e)?;
            out.push(Comparison::new(format!("C^{}_12", a + 1), st.c_abc.get(&[a, 0, 1]), c12.clone()));
            out.push(Comparison::new(format!("C^{}_21", a + 1), st.c_abc.get(&[a, 1, 0]), -&c12.scale(&p)));
            for b in 0..2 {
                out.push(Comparison::new(
                    format!("C^{}_{}{}", a + 1, b + 1, b + 1),
                    st.c_abc.get(&[a, b, b]),
                    PlaneElement::zero(),
                ));
            }
        }
    }
    Ok(out)
}

pub(super) fn twisted_bracket(s: &Session) -> Out {
    let mut out = s.calc.identity_twisted_bracket()?;
    out.extend(s.calc.identity_twisted_antisymmetry()?);
    Ok(out)
}

pub(super) fn structure_consistency(s: &Session) -> Out {
    s.calc.identity_structure_consistency()
}

pub(super) fn theta_form(s: &Session) -> Out {
    let st = s.calc.structure()?;
    let e = expected::theta(s.id).ok_or(Error::OuterStructureUnavailable)?;
    let lambdas = s.calc.spec().lambdas().ok_or(Error::OuterStructureUnavailable)?;
    let minus: Vec<PlaneElement> = lambdas.iter().map(|l| -l).collect();
    Ok(vec![
        Comparison::new("theta", st.theta.clone(), s.form(e, 1)?),
        Comparison::new("theta = -l_a t^a", st.theta.clone(), s.calc.one_form(&minus)),
    ])
}

pub(super) fn theta_closed(s: &Session) -> Out {
    let st = s.calc.structure()?;
    Ok(vec![Comparison::new("d theta", s.calc.d(&st.theta)?, GradedForm::zero(2))])
}

pub(super) fn theta_generates(s: &Session) -> Out {
    let mut out = Vec::new();
    for f in generators() {
        out.extend(s.calc.identity_theta_generates(&f)?);
    }
    Ok(out)
}

pub(super) fn theta_square(s: &Session) -> Out {
    let mut out = Vec::new();
    for g in [PlaneElement::one(), PlaneElement::x(), PlaneElement::y()] {
        out.extend(s.calc.identity_theta_square(&g)?);
    }
    Ok(out)
}

pub(super) fn theta_curvature(s: &Session) -> Out {
    s.calc.identity_theta_curvature()
}

pub(super) fn dual_maurer_cartan(s: &Session) -> Out {
    let mut out = s.calc.identity_dual_maurer_cartan(&PlaneElement::x())?;
    out.extend(s.calc.identity_dual_maurer_cartan(&PlaneElement::y())?);
    Ok(out)
}

pub(super) fn sigma(s: &Session) -> Out {
    sigma_check(&presets::default_sigma(s.id), s.calc.c())
}

pub(super) fn leibniz_rules(s: &Session) -> Out {
    let conn = conn0(s)?;
    let mut out = Vec::new();
    for f in [PlaneElement::x(), PlaneElement::y()] {
        for a in 0..s.calc.n() {
            out.push(Comparison::new(
                format!("D(f t{0}) = D(t{0} f), f = {f}", a + 1),
                conn.apply_left(&s.calc, &f, a)?.project(&s.calc),
                conn.apply_right(&s.calc, &f, a)?.project(&s.calc),
            ));
        }
    }
    Ok(out)
}

pub(super) fn d0_via_theta_check(s: &Session) -> Out {
    let sigma = presets::default_sigma(s.id);
    let conn = omega0(&s.calc, &sigma)?;
    let mut out = Vec::new();
    for a in 0..s.calc.n() {
        let lhs = conn.covariant_derivative(a);
        let rhs = d0_via_theta(&s.calc, &sigma, a)?;
        let diff = &lhs - &rhs;
        out.push(Comparison::new(
            format!("D t{} - (sigma(t{0} (x) theta) - theta (x) t{0})", a + 1),
            diff.is_zero(),
            true,
        ));
    }
    Ok(out)
}

fn quadratic_from_d(s: &Session, d: &Table<QScalar>, a: usize, factor: &QScalar) -> GradedForm {
    s.calc.quadratic_form(|b, c| PlaneElement::scalar(&d.get(&[a, b, c]) * factor))
}

pub(super) fn torsion_check(s: &Session) -> Out {
    let st = s.calc.structure()?;
    let conn = conn0(s)?;
    let minus_half = -&half();
    Ok(torsion(&s.calc, &conn)?
        .into_iter()
        .enumerate()
        .map(|(a, t)| Comparison::new(format!("torsion^{}", a + 1), t, quadratic_from_d(s, &st.d, a, &minus_half)))
        .collect())
}

/// The connection with central offset `chi = 1/2 D`.
pub(crate) fn half_d_offset(s: &Session) -> Result<ConnectionData> {
    let st = s.calc.structure()?;
    let n = s.calc.n();
    let h = half();
    let chi = Table::from_fn(n, 3, |i| &st.d.get(i) * &h);
    Ok(conn0(s)?.with_offset(chi))
}

pub(super) fn torsion_free(s: &Session) -> Out {
    let conn = half_d_offset(s)?;
    let mut out = torsionfree_check(&s.calc, &conn)?;
    for (a, t) in torsion(&s.calc, &conn)?.into_iter().enumerate() {
        out.push(Comparison::new(format!("torsion^{} with offset", a + 1), t, GradedForm::zero(2)));
    }
    Ok(out)
}

pub(super) fn metric(s: &Session) -> Out {
    metric_check(&presets::default_sigma(s.id), &presets::default_metric(s.id))
}

pub(super) fn metric_matrix(s: &Session) -> Out {
    metric_matrix_check(&presets::default_sigma(s.id))
}

pub(super) fn metric_omega(s: &Session) -> Out {
    metric_omega_check(&conn0(s)?, &presets::default_metric(s.id))
}

pub(super) fn c_not_metric(s: &Session) -> Out {
    let sc = SigmaTensor::new(s.calc.c().clone())?;
    let holds = all_hold(&metric_matrix_check(&sc)?);
    Ok(vec![Comparison::new("S = C satisfies the matrix metric condition", holds, false)])
}

pub(super) fn sigma_not_symmetric(s: &Session) -> Out {
    let holds = all_hold(&sigma_symmetry_check(&presets::default_sigma(s.id), &presets::default_metric(s.id))?);
    Ok(vec![Comparison::new("g = S g", holds, false)])
}

pub(super) fn q1_regular(s: &Session) -> Out {
    Ok(vec![Comparison::new("omega finite at q = 1", conn0(s)?.is_q1_regular(), true)])
}

pub(super) fn singular_sigma(s: &Session) -> Out {
    let sigma = presets::sigma_singular(&p_of(s)?);
    let mut out = sigma_check(&sigma, s.calc.c())?;
    out.extend(metric_matrix_check(&sigma)?);
    out.extend(metric_check(&sigma, &presets::default_metric(s.id))?);
    let regular = omega0(&s.calc, &sigma)?.is_q1_regular();
    out.push(Comparison::new("omega finite at q = 1", regular, false));
    Ok(out)
}

pub(super) fn sigma_parity(s: &Session) -> Out {
    let sigma = presets::default_sigma(s.id);
    let r = -&QScalar::q_pow(-1);
    let flipped = sigma.substitute(&r)?;
    let m = sigma.matrix();
    let mut out = Vec::new();
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            out.push(Comparison::new(
                format!("S(q) + S(-1/q) at ({},{})", row + 1, col + 1),
                m.get(row, col).clone(),
                -flipped.matrix().get(row, col),
            ));
        }
    }
    Ok(out)
}

pub(super) fn sigma_solutions(s: &Session) -> Out {
    let g = presets::default_metric(s.id);
    let sols = solve_sigma(s.calc.c(), &g)?;
    let p = p_of(s)?;
    let mut out = vec![Comparison::new("regular solution found", sols.contains(&presets::sigma_regular(&p)), true)];
    match s.id {
        PresetId::Calc2a => {
            out.push(Comparison::new("singular solution found", sols.contains(&presets::sigma_singular(&p)), true));
        }
        _ => {
            let substituted = presets::sigma_regular(&QScalar::q()).substitute(&QScalar::q_pow(-4))?;
            out.push(Comparison::new(
                "q -> q^-4 image of the calc2a solution found",
                sols.contains(&substituted),
                true,
            ));
        }
    }
    for (i, sol) in sols.iter().enumerate() {
        let ok = all_hold(&sigma_check(sol, s.calc.c())?) && all_hold(&metric_check(sol, &g)?);
        out.push(Comparison::new(format!("solution {} satisfies both conditions", i + 1), ok, true));
    }
    Ok(out)
}

pub(super) fn poisson_check(_: &Session) -> Out {
    let (x, y) = (Laurent::x(), Laurent::y());
    let xy = &x * &y;
    let x2 = &x * &x;
    let two = BigRational::from_integer(2.into());
    Ok(vec![
        Comparison::new("{x, y}", poisson(&x, &y), xy.clone()),
        Comparison::new("{x, y} via commutator", poisson_via_commutator(&x, &y)?, xy),
        Comparison::new("{x, x}", poisson(&x, &x), Laurent::zero()),
        Comparison::new("{x^2, y} via commutator", poisson_via_commutator(&x2, &y)?, (&x2 * &y).scale(&two)),
    ])
}

fn limit_values(s: &Session) -> Result<expected::LimitValues> {
    expected::limit(s.id).ok_or_else(|| Error::Unsupported(format!("no limit data for {}", s.id)))
}

fn laurent(s: &Session, e: &str) -> Result<Laurent> {
    element(s, e)?.eval_q1()
}

fn rational(s: &Session, e: &str) -> Result<CRational> {
    Ok(CRational::from_laurent(laurent(s, e)?))
}

pub(super) fn limit_frame(s: &Session) -> Out {
    let chart = classical_chart(&s.calc)?;
    let lv = limit_values(s)?;
    let mut out = Vec::new();
    match (&chart.p, lv.p) {
        (Some(p), Some(ep)) => {
            for (a, (pa, e)) in p.iter().zip(ep).enumerate() {
                out.push(Comparison::new(format!("p{}", a + 1), pa.clone(), laurent(s, e)?));
            }
        }
        (None, None) => {}
        _ => return Err(Error::Unsupported("momenta present on only one side".into())),
    }
    for (a, row) in lv.frame.iter().enumerate() {
        for (mu, e) in row.iter().enumerate() {
            out.push(Comparison::new(
                format!("t{} on d{}", a + 1, ["x", "y"][mu]),
                chart.frame[a].coeff(mu).clone(),
                rational(s, e)?,
            ));
        }
    }
    Ok(out)
}

pub(super) fn frame_equation(s: &Session) -> Out {
    let chart = classical_chart(&s.calc)?;
    let p = chart.p.ok_or(Error::OuterStructureUnavailable)?;
    frame_equation_check(&p, &chart.frame)
}

fn form_comparisons(label: &str, lhs: &CForm, rhs: &CForm) -> Vec<Comparison> {
    (0..lhs.coeffs().len())
        .map(|i| Comparison::new(format!("{label} on d{}", ["x", "y"][i]), lhs.coeff(i).clone(), rhs.coeff(i).clone()))
        .collect()
}

fn calc2a_cartan(s: &Session) -> Result<CForm> {
    let [a, b] = expected::CALC2A_CARTAN;
    Ok(CForm::one_form(rational(s, a)?, rational(s, b)?))
}

pub(super) fn cartan_structure(s: &Session) -> Out {
    let chart = classical_chart(&s.calc)?;
    let omega = cartan_connection(&chart.frame)?;
    let mut out = structure_equation_check(&chart.frame, &omega)?;
    if s.id == PresetId::Calc2a {
        out.extend(form_comparisons("omega^1_2", &omega, &calc2a_cartan(s)?));
    }
    Ok(out)
}

pub(super) fn curvature(s: &Session) -> Out {
    let chart = classical_chart(&s.calc)?;
    let k = gauss_curvature(&chart.frame)?;
    Ok(vec![Comparison::new("K", k, rational(s, limit_values(s)?.curvature)?)])
}

pub(super) fn connection_limit(s: &Session) -> Out {
    let report = connection_limit_crosscheck(&s.calc, &presets::default_sigma(s.id))?;
    let mut out = form_comparisons("limit of omega against Cartan", &report.candidate, &report.cartan);
    if s.id == PresetId::Calc2a {
        out.extend(form_comparisons("limit of omega", &report.candidate, &calc2a_cartan(s)?));
    }
    Ok(out)
}
