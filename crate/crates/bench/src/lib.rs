//! Shared inputs for the benchmarks.

use qplane::presets::PresetId;
use qplane::verify::Session;
use qplane::PlaneElement;

/// Every preset built with its default parameters.
pub fn sessions() -> Vec<Session> {
    PresetId::ALL.into_iter().map(|id| Session::new(id, None).expect("presets build")).collect()
}

/// A dense element with every monomial `x^m y^n`, `-k <= m, n <= k`.
pub fn dense_element(k: i64) -> PlaneElement {
    let mut out = PlaneElement::zero();
    for m in -k..=k {
        for n in -k..=k {
            out = &out + &PlaneElement::monomial(m, n, qplane::QScalar::from_int(m - n + 1));
        }
    }
    out
}
