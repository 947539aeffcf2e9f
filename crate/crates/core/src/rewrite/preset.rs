use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::poly::Var;
use super::RewriteError;

/// Which presentation of the Chow ring of the parameter space to reduce in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "param")]
pub enum Preset {
    /// Nodal plane curves of degree `d`.
    Plane(u32),
    /// Trigonal curves of genus `g` on a Hirzebruch surface.
    Trigonal(u32),
    /// Tetragonal curves of genus `g` in a rank-3 projective bundle.
    Tetragonal(u32),
}

impl Preset {
    /// Validates the parameter: the plane substitution divides by `d - 3`.
    pub fn checked(self) -> Result<Preset, RewriteError> {
        match self {
            Preset::Plane(3) => Err(RewriteError::DivisorZero),
            Preset::Plane(d) if d < 3 => Err(RewriteError::InvalidPreset(format!("plane curves need d >= 4, got {d}"))),
            other => Ok(other),
        }
    }

    /// Whether `v` is a symbol of this presentation, ignoring its index.
    pub fn admits(self, v: Var) -> bool {
        match (self, v) {
            (_, Var::Z(_) | Var::Psi(_) | Var::Kappa1 | Var::Kappa2 | Var::Lambda1) => true,
            (Preset::Plane(_), Var::ZetaPlain) => true,
            (Preset::Plane(_), _) => false,
            (_, Var::Zeta(_) | Var::C2) => true,
            (Preset::Trigonal(_), Var::CE(1 | 2)) => true,
            (Preset::Tetragonal(_), Var::A1 | Var::A2 | Var::A2p | Var::A3 | Var::A3p) => true,
            _ => false,
        }
    }

    /// All symbols available with `n` markings, largest first.
    pub fn universe(self, n: u32) -> Vec<Var> {
        let mut out = Vec::new();
        for i in 1..=n {
            out.extend([Var::Z(i), Var::Zeta(i), Var::Psi(i)]);
        }
        out.extend([
            Var::ZetaPlain,
            Var::Kappa1,
            Var::Kappa2,
            Var::Lambda1,
            Var::C2,
            Var::CE(1),
            Var::CE(2),
            Var::CE(3),
            Var::A1,
            Var::A2,
            Var::A2p,
            Var::A3,
            Var::A3p,
        ]);
        out.retain(|&v| self.admits(v));
        out.sort();
        out
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Plane(d) => write!(f, "plane:{d}"),
            Preset::Trigonal(g) => write!(f, "trig:{g}"),
            Preset::Tetragonal(g) => write!(f, "tetra:{g}"),
        }
    }
}

impl FromStr for Preset {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| RewriteError::InvalidPreset(format!("expected kind:param, got {s:?}")))?;
        let param: u32 = param
            .trim()
            .parse()
            .map_err(|_| RewriteError::InvalidPreset(format!("bad parameter in {s:?}")))?;
        let preset = match kind.trim() {
            "plane" => Preset::Plane(param),
            "trig" | "trigonal" => Preset::Trigonal(param),
            "tetra" | "tetragonal" => Preset::Tetragonal(param),
            other => return Err(RewriteError::InvalidPreset(format!("unknown preset {other:?}"))),
        };
        preset.checked()
    }
}
