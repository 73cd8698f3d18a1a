//! The named calculi: two calculi with two inner derivations, the
//! three-derivation extension with its two completions of `C`, and the
//! calculus of the two outer derivations.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Derivation, PlaneElement};
use crate::connection::{MetricTensor, SigmaTensor};
use crate::error::{Error, Result};
use crate::forms::{Calculus, CalculusSpec, Coordinate};
use crate::scalars::{QMatrix, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetId {
    Calc2a,
    Calc2b,
    Calc3a,
    Calc3b,
    Outer,
}

impl PresetId {
    pub const ALL: [PresetId; 5] =
        [PresetId::Calc2a, PresetId::Calc2b, PresetId::Calc3a, PresetId::Calc3b, PresetId::Outer];

    pub fn name(self) -> &'static str {
        match self {
            PresetId::Calc2a => "calc2a",
            PresetId::Calc2b => "calc2b",
            PresetId::Calc3a => "calc3a",
            PresetId::Calc3b => "calc3b",
            PresetId::Outer => "outer",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            PresetId::Calc2a => "lambda = q/(q-1) (y, x); theta^1 theta^2 + q theta^2 theta^1 = 0",
            PresetId::Calc2b => {
                "lambda = 1/(q^4-1) (x^-2 y^2, x^-2); the covariant calculus x dy = q dy x + (q^2-1) dx y"
            }
            PresetId::Calc3a => "calc2a plus lambda_3 = q/(q-1) alpha x y; theta^1 theta^2 left free",
            PresetId::Calc3b => "calc2a plus lambda_3 = q/(q-1) alpha x y; theta^1 theta^2 + q theta^2 theta^1 = 0",
            PresetId::Outer => "outer derivations x -> x and y -> y; flat limit",
        }
    }

    /// Whether the preset takes the parameter `alpha`.
    pub fn takes_alpha(self) -> bool {
        matches!(self, PresetId::Calc3a | PresetId::Calc3b)
    }

    pub fn is_inner(self) -> bool {
        self != PresetId::Outer
    }

    pub fn n(self) -> usize {
        if self.takes_alpha() {
            3
        } else {
            2
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetId::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Resolves the `alpha` argument: defaults to 1 for the three-derivation
/// presets and is rejected elsewhere.
pub fn resolve_alpha(id: PresetId, alpha: Option<BigRational>) -> Result<Option<BigRational>> {
    match (id.takes_alpha(), alpha) {
        (true, None) => Ok(Some(BigRational::one())),
        (true, Some(a)) if a.is_zero() => Err(Error::InvalidParameter("alpha must be nonzero".into())),
        (true, Some(a)) => Ok(Some(a)),
        (false, None) => Ok(None),
        (false, Some(_)) => Err(Error::InvalidParameter(format!("{id} takes no alpha parameter"))),
    }
}

fn q() -> QScalar {
    QScalar::q()
}

fn qp(k: i64) -> QScalar {
    QScalar::q_pow(k)
}

/// `((a, b), (c, d), value)` for the entry `C^{ab}_{cd}`.
type CEntry = ((usize, usize), (usize, usize), QScalar);

/// `C` from a list of off-diagonal entries `((a,b),(c,d)) -> value` with
/// one-based indices; unlisted diagonal entries are 1.
fn c_from_entries(n: usize, entries: &[CEntry]) -> QMatrix {
    let idx = |(a, b): (usize, usize)| (a - 1) * n + (b - 1);
    let mut c = QMatrix::identity(n * n);
    for (row, _, _) in entries {
        let r = idx(*row);
        c.set(r, r, QScalar::zero());
    }
    for (row, col, v) in entries {
        c.set(idx(*row), idx(*col), v.clone());
    }
    c
}

/// `C^{12}_{21} = p`, `C^{21}_{12} = p^{-1}`, diagonal 1.
pub fn c_two(p: &QScalar) -> QMatrix {
    c_from_entries(2, &[((1, 2), (2, 1), p.clone()), ((2, 1), (1, 2), p.inv().expect("nonzero parameter"))])
}

fn c_three(supplementary: bool) -> QMatrix {
    let mut entries =
        vec![((1, 3), (3, 1), q()), ((3, 1), (1, 3), qp(-1)), ((3, 2), (2, 3), q()), ((2, 3), (3, 2), qp(-1))];
    if supplementary {
        entries.push(((1, 2), (2, 1), q()));
        entries.push(((2, 1), (1, 2), qp(-1)));
    } else {
        entries.push(((1, 2), (1, 2), QScalar::from_int(-1)));
        entries.push(((2, 1), (2, 1), QScalar::from_int(-1)));
    }
    c_from_entries(3, &entries)
}

/// The `C` tensor of a preset.
pub fn c_matrix(id: PresetId) -> QMatrix {
    match id {
        PresetId::Calc2a => c_two(&q()),
        PresetId::Calc2b => c_two(&qp(-4)),
        PresetId::Calc3a => c_three(false),
        PresetId::Calc3b => c_three(true),
        PresetId::Outer => c_two(&QScalar::one()),
    }
}

/// The parameter `p = C^{12}_{21}` of a two-derivation preset.
pub fn c_parameter(id: PresetId) -> Option<QScalar> {
    match id {
        PresetId::Calc2a => Some(q()),
        PresetId::Calc2b => Some(qp(-4)),
        _ => None,
    }
}

fn ratio(num: &[i64], den: &[i64]) -> QScalar {
    use crate::scalars::ZPoly;
    QScalar::new(ZPoly::from_i64s(num), ZPoly::from_i64s(den)).expect("nonzero denominator")
}

/// The `λ_a` of an inner preset.
pub fn lambdas(id: PresetId, alpha: Option<&BigRational>) -> Result<Vec<PlaneElement>> {
    // q/(q-1)
    let k = ratio(&[0, 1], &[-1, 1]);
    match id {
        PresetId::Calc2a => Ok(vec![PlaneElement::monomial(0, 1, k.clone()), PlaneElement::monomial(1, 0, k)]),
        PresetId::Calc2b => {
            let k = ratio(&[1], &[-1, 0, 0, 0, 1]);
            Ok(vec![PlaneElement::monomial(-2, 2, k.clone()), PlaneElement::monomial(-2, 0, k)])
        }
        PresetId::Calc3a | PresetId::Calc3b => {
            let alpha = alpha.ok_or_else(|| Error::InvalidParameter("alpha is required".into()))?;
            let a = QScalar::from_ratio(alpha);
            Ok(vec![
                PlaneElement::monomial(0, 1, k.clone()),
                PlaneElement::monomial(1, 0, k.clone()),
                PlaneElement::monomial(1, 1, &k * &a),
            ])
        }
        PresetId::Outer => Err(Error::OuterStructureUnavailable),
    }
}

/// The specification of a preset; `alpha` defaults to 1 where it applies.
pub fn spec(id: PresetId, alpha: Option<BigRational>) -> Result<CalculusSpec> {
    let alpha = resolve_alpha(id, alpha)?;
    let c = c_matrix(id);
    let spec = match id {
        PresetId::Outer => {
            let ders = vec![
                Derivation::outer(PlaneElement::x(), PlaneElement::zero())?,
                Derivation::outer(PlaneElement::zero(), PlaneElement::y())?,
            ];
            CalculusSpec::new(ders, c, vec![Coordinate::Dx, Coordinate::Dy])
        }
        _ => {
            let ders = lambdas(id, alpha.as_ref())?.into_iter().map(Derivation::inner).collect();
            if id.takes_alpha() {
                CalculusSpec::new(ders, c, vec![Coordinate::Dx, Coordinate::Dy, Coordinate::Tau])
                    .with_basis_order(vec![0, 2, 1])
            } else {
                CalculusSpec::new(ders, c, vec![Coordinate::Dx, Coordinate::Dy])
            }
        }
    };
    Ok(spec)
}

/// Builds a preset calculus.
pub fn build(id: PresetId, alpha: Option<BigRational>) -> Result<Calculus> {
    Calculus::build(spec(id, alpha)?)
}

/// The metric-compatible `σ` regular at `q = 1`, written in the parameter
/// `p = C^{12}_{21}`:
/// `S = (1/(p^2+1)) [[2p,0,0,1-p^2],[0,1-p^2,2p,0],[0,2p,p^2-1,0],[p^2-1,0,0,2p]]`.
pub fn sigma_regular(p: &QScalar) -> SigmaTensor {
    sigma_block(p, false)
}

/// The second metric-compatible `σ`, with `-2p` in the corners; its
/// connection has a pole at `q = 1`.
pub fn sigma_singular(p: &QScalar) -> SigmaTensor {
    sigma_block(p, true)
}

fn sigma_block(p: &QScalar, negate_corners: bool) -> SigmaTensor {
    let one = QScalar::one();
    let p2 = p * p;
    let norm = (&p2 + &one).inv().expect("p^2 + 1 is nonzero");
    let two_p = &QScalar::from_int(2) * p;
    let corner = if negate_corners { -&two_p } else { two_p.clone() };
    let a = &one - &p2;
    let b = &p2 - &one;
    let z = QScalar::zero();
    let rows = vec![
        vec![corner.clone(), z.clone(), z.clone(), a.clone()],
        vec![z.clone(), a.clone(), two_p.clone(), z.clone()],
        vec![z.clone(), two_p, b.clone(), z.clone()],
        vec![b, z.clone(), z, corner],
    ];
    let m = QMatrix::from_rows(rows).expect("square rows").scale(&norm);
    SigmaTensor::new(m).expect("4x4")
}

/// The default `σ` of a preset: the regular metric solution for the
/// two-derivation calculi and `S = C` otherwise.
pub fn default_sigma(id: PresetId) -> SigmaTensor {
    match id {
        PresetId::Calc2a | PresetId::Calc2b => sigma_regular(&c_parameter(id).expect("two derivations")),
        _ => SigmaTensor::new(c_matrix(id)).expect("square"),
    }
}

pub fn default_metric(id: PresetId) -> MetricTensor {
    MetricTensor::euclidean(id.n())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_names() {
        for id in PresetId::ALL {
            assert_eq!(id.name().parse::<PresetId>().unwrap(), id);
        }
        assert!(matches!("calc4".parse::<PresetId>(), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn c_tensors_are_involutions() {
        for id in PresetId::ALL {
            let c = c_matrix(id);
            assert!(c.mul(&c).unwrap().is_identity(), "{id}");
        }
    }

    #[test]
    fn alpha_rules() {
        assert_eq!(resolve_alpha(PresetId::Calc3a, None).unwrap(), Some(BigRational::one()));
        assert!(resolve_alpha(PresetId::Calc3b, Some(BigRational::zero())).is_err());
        assert!(resolve_alpha(PresetId::Calc2a, Some(BigRational::one())).is_err());
    }

    #[test]
    fn all_presets_build() {
        for id in PresetId::ALL {
            let calc = build(id, None).unwrap();
            assert_eq!(calc.n(), id.n());
            assert_eq!(calc.structure().is_ok(), id.is_inner(), "{id}");
        }
    }

    #[test]
    fn calc2a_structure_is_trivial() {
        let calc = build(PresetId::Calc2a, None).unwrap();
        let s = calc.structure().unwrap();
        assert!(s.d.is_zero());
        assert!(s.k.is_zero());
        assert_eq!(s.c_abc.get(&[0, 0, 1]), PlaneElement::monomial(1, 0, QScalar::from_int(-1)));
        assert_eq!(s.c_abc.get(&[1, 0, 1]), PlaneElement::monomial(0, 1, QScalar::from_int(-1)));
    }

    #[test]
    fn calc3a_has_the_twisted_d() {
        for alpha in [BigRational::one(), BigRational::new(2.into(), 3.into())] {
            let calc = build(PresetId::Calc3a, Some(alpha.clone())).unwrap();
            let s = calc.structure().unwrap();
            // 2/(alpha (q-1))
            let d312 = &QScalar::from_ratio(&(BigRational::from_integer(2.into()) / &alpha)) * &ratio(&[1], &[-1, 1]);
            assert_eq!(s.d.get(&[2, 0, 1]), d312);
            assert_eq!(s.d.get(&[2, 1, 0]), &q() * &d312);
            let nonzero = s.d.entries().filter(|(_, v)| !v.is_zero()).count();
            assert_eq!(nonzero, 2);
            assert!(s.k.is_zero());
        }
    }

    #[test]
    fn calc3b_structure_is_trivial() {
        let calc = build(PresetId::Calc3b, None).unwrap();
        let s = calc.structure().unwrap();
        assert!(s.d.is_zero() && s.k.is_zero());
    }

    #[test]
    fn sigma_solutions_satisfy_the_linear_constraints() {
        for id in [PresetId::Calc2a, PresetId::Calc2b] {
            let p = c_parameter(id).unwrap();
            for s in [sigma_regular(&p), sigma_singular(&p)] {
                let checks = crate::connection::sigma_check(&s, &c_matrix(id)).unwrap();
                assert!(checks.iter().all(|c| c.holds()), "{id}");
            }
        }
    }
}
