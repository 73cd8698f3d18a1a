//! Reference values for each preset, written in the expression grammar.
//! `{a}` stands for the parameter `alpha`.

use crate::presets::PresetId;

/// `(e_a x, e_a y)` for each derivation.
pub(super) fn derivation_table(id: PresetId) -> Vec<(&'static str, &'static str)> {
    match id {
        PresetId::Calc2a => vec![("-x*y", "0"), ("0", "x*y")],
        PresetId::Calc2b => {
            vec![("-(q^2*(q^2 + 1))^-1*x^-1*y^2", "-(q^2 + 1)^-1*x^-2*y^3"), ("0", "-(q^2 + 1)^-1*x^-2*y")]
        }
        PresetId::Calc3a | PresetId::Calc3b => {
            vec![("-x*y", "0"), ("0", "x*y"), ("-{a}*x^2*y", "{a}*x*y^2")]
        }
        PresetId::Outer => vec![("x", "0"), ("0", "y")],
    }
}

/// Expressions in `x`, `y` and the coordinate differentials that vanish.
pub(super) fn coordinate_relations(id: PresetId) -> Vec<&'static str> {
    match id {
        PresetId::Calc2a => vec!["x*dx - q*dx*x", "y*dx - q^-1*dx*y", "x*dy - q*dy*x", "y*dy - q^-1*dy*y"],
        PresetId::Calc2b => {
            vec!["x*dx - q^2*dx*x", "x*dy - q*dy*x - (q^2 - 1)*dx*y", "y*dx - q*dx*y", "y*dy - q^2*dy*y"]
        }
        PresetId::Calc3a | PresetId::Calc3b => {
            vec!["x*dx - q*dx*x", "y*dy - q^-1*dy*y", "tau - (x*dy - q*dy*x)", "y*dx - q^-1*dx*y - q^-1*tau"]
        }
        PresetId::Outer => vec!["x*dx - dx*x", "y*dx - q^-1*dx*y", "x*dy - q*dy*x", "y*dy - dy*y"],
    }
}

/// Quadratic relations among the coordinate differentials.
pub(super) fn coordinate_squares(id: PresetId) -> Vec<&'static str> {
    match id {
        PresetId::Calc2a | PresetId::Outer => vec!["dx*dx", "dy*dy", "dx*dy + q*dy*dx"],
        PresetId::Calc2b => vec!["dx*dx", "dy*dy", "dy*dx + q*dx*dy"],
        PresetId::Calc3a | PresetId::Calc3b => vec!["dx*dx", "dy*dy"],
    }
}

/// `(symbol, frame expression)` for each coordinate differential.
pub(super) fn frame_differentials(id: PresetId) -> Vec<(&'static str, &'static str)> {
    match id {
        PresetId::Calc2a => vec![("dx", "-x*y*t1"), ("dy", "x*y*t2")],
        PresetId::Calc2b => {
            vec![("dx", "-(q^2*(q^2 + 1))^-1*x^-1*y^2*t1"), ("dy", "-(q^2 + 1)^-1*x^-2*y*(y^2*t1 + t2)")]
        }
        PresetId::Calc3a | PresetId::Calc3b => vec![
            ("dx", "-x*y*t1 - {a}*x^2*y*t3"),
            ("dy", "x*y*t2 + {a}*x*y^2*t3"),
            ("tau", "{a}*q^-1*(q - 1)*x^2*y^2*t3"),
        ],
        PresetId::Outer => vec![("dx", "x*t1"), ("dy", "y*t2")],
    }
}

/// `θ^a` in terms of the coordinate differentials.
pub(super) fn frame_inverse(id: PresetId) -> Vec<&'static str> {
    match id {
        PresetId::Calc2a => vec!["-q^-1*x^-1*y^-1*dx", "q^-1*x^-1*y^-1*dy"],
        PresetId::Calc2b => vec!["-q^4*(q^2 + 1)*x*y^-2*dx", "-q^2*(q^2 + 1)*x*(x*y^-1*dy - dx)"],
        PresetId::Calc3a | PresetId::Calc3b => vec![
            "-q^-1*x^-1*y^-1*dx - (q^2*(q - 1))^-1*x^-1*y^-2*tau",
            "q^-1*x^-1*y^-1*dy - (q*(q - 1))^-1*x^-2*y^-1*tau",
            "({a}*q^3*(q - 1))^-1*x^-2*y^-2*tau",
        ],
        PresetId::Outer => vec!["x^-1*dx", "y^-1*dy"],
    }
}

/// Quadratic relations among the frame generators.
pub(super) fn wedge_relations(id: PresetId) -> Vec<&'static str> {
    let mut out = match id {
        PresetId::Calc2a => vec!["t1*t1", "t2*t2", "t1*t2 + q*t2*t1"],
        PresetId::Calc2b => vec!["t1*t1", "t2*t2", "q^4*t1*t2 + t2*t1"],
        PresetId::Calc3a | PresetId::Calc3b => vec![
            "q*t1*t1 + {a}*x*(t1*t3 + q*t3*t1) + {a}^2*x^2*t3*t3",
            "q*t2*t2 + {a}*y*(t3*t2 + q*t2*t3) + {a}^2*y^2*t3*t3",
            "t1*t1",
            "t2*t2",
            "t3*t3",
            "t1*t3 + q*t3*t1",
            "t3*t2 + q*t2*t3",
        ],
        PresetId::Outer => vec!["t1*t1", "t2*t2", "t1*t2 + t2*t1"],
    };
    if id == PresetId::Calc3b {
        out.push("t1*t2 + q*t2*t1");
    }
    out
}

/// The structure elements `C^a_{12}` of the two-derivation presets. For
/// calc2b the sign is the one forced by the frame: at `q = 1` the limit
/// frame gives `dθ^1 = -x^-2 θ^1 θ^2`.
pub(super) fn structure_elements(id: PresetId) -> Option<[&'static str; 2]> {
    match id {
        PresetId::Calc2a => Some(["-x", "-y"]),
        PresetId::Calc2b => Some(["x^-2", "x^-2*y^2"]),
        _ => None,
    }
}

/// Nonzero entries `(a, b, c) -> D^a_{bc}` (one-based).
pub(super) fn d_entries(id: PresetId) -> Vec<([usize; 3], &'static str)> {
    match id {
        PresetId::Calc3a => vec![([3, 1, 2], "2*({a}*(q - 1))^-1"), ([3, 2, 1], "2*q*({a}*(q - 1))^-1")],
        _ => vec![],
    }
}

pub(super) fn theta(id: PresetId) -> Option<&'static str> {
    match id {
        PresetId::Calc2a => Some("(q - 1)^-1*(q*x^-1*dx - y^-1*dy)"),
        PresetId::Calc2b => Some("q^2*(q^2 - 1)^-1*y^-1*dy"),
        PresetId::Calc3a | PresetId::Calc3b => Some("-q*(q - 1)^-1*(y*t1 + x*t2 + {a}*x*y*t3)"),
        PresetId::Outer => None,
    }
}

/// `dθ^a` where it is stated in closed form.
pub(super) fn dtheta(id: PresetId) -> Option<Vec<&'static str>> {
    match id {
        PresetId::Calc3a => Some(vec![
            "q*(q - 1)^-1*x*(t1*t2 + t2*t1) + {a}*x*y*t1*t3",
            "q*(q - 1)^-1*y*(t1*t2 + t2*t1) + {a}*x*y*t3*t2",
            "y*t1*t3 + x*t3*t2 - ({a}*(q - 1))^-1*(t1*t2 + q*t2*t1)",
        ]),
        PresetId::Calc3b => Some(vec!["x*t1*t2 + {a}*x*y*t1*t3", "y*t1*t2 + {a}*x*y*t3*t2", "y*t1*t3 + x*t3*t2"]),
        PresetId::Outer => Some(vec!["0", "0"]),
        _ => None,
    }
}

/// `dτ` written out on the frame, with the coefficients in the order the
/// product `dx dy + q dy dx` produces them.
pub(super) const DTAU_FRAME: &str =
    "-(x*y)^2*(t1*t2 + q*t2*t1) - {a}*x*(x*y)^2*(t2*t3 + t3*t2) - {a}*(x*y)^2*y*(t3*t1 + t1*t3)";

/// `dτ = -A (xy)^2 (θ^1θ^2 + qθ^2θ^1) - B xy dθ^3 xy` as `(A, B)`.
pub(super) const DTAU_THETA3: (&str, &str) = ("2", "{a}*(q - 1)");

/// Limit data: `p_a`, the frame coefficients on `(dx, dy)`, and `K`.
pub(super) struct LimitValues {
    pub p: Option<[&'static str; 2]>,
    pub frame: [[&'static str; 2]; 2],
    pub curvature: &'static str,
}

pub(super) fn limit(id: PresetId) -> Option<LimitValues> {
    match id {
        PresetId::Calc2a => Some(LimitValues {
            p: Some(["y", "x"]),
            frame: [["-x^-1*y^-1", "0"], ["0", "x^-1*y^-1"]],
            curvature: "x^2 + y^2",
        }),
        PresetId::Calc2b => Some(LimitValues {
            p: Some(["1/4*x^-2*y^2", "1/4*x^-2"]),
            frame: [["-2*x*y^-2", "0"], ["2*x", "-2*x^2*y^-1"]],
            curvature: "x^-4*(1 + y^4)",
        }),
        PresetId::Outer => Some(LimitValues { p: None, frame: [["x^-1", "0"], ["0", "y^-1"]], curvature: "0" }),
        _ => None,
    }
}

/// The Cartan connection form of the calc2a limit frame on `(dx, dy)`.
pub(super) const CALC2A_CARTAN: [&str; 2] = ["y^-1", "-x^-1"];
