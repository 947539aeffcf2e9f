//! Normal forms in the Chow rings of the parameter spaces used for plane,
//! trigonal and tetragonal curves with marked points.
//!
//! Each preset first eliminates the `z_i` by a linear identity, then reduces
//! modulo the remaining relations. Those relations are completed once, for
//! marking 1, to a reduced Groebner basis for a weighted graded reverse
//! lexicographic order; the basis for marking `i` is the relabelled copy.
//! Leading terms for different markings share no variable, so the union is
//! again a Groebner basis and reduction is confluent: the normal form is
//! independent of the order in which rules fire, which is what makes it a
//! ring map modulo the ideal.

mod groebner;
mod parse;
pub mod poly;
mod preset;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

pub use groebner::{groebner, reduce};
pub use parse::parse_poly;
pub use poly::{rational, Coeff, GradedPoly, Monomial, Var};
pub use preset::Preset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("symbol {symbol} is not part of the {preset} presentation")]
    NotInUniverse { symbol: String, preset: String },
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("division by zero")]
    DivisorZero,
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl RewriteError {
    pub fn name(&self) -> &'static str {
        match self {
            RewriteError::NotInUniverse { .. } => "NotInUniverse",
            RewriteError::UniverseMismatch(_) => "UniverseMismatch",
            RewriteError::DivisorZero => "DivisorZero",
            RewriteError::InvalidPreset(_) => "InvalidPreset",
            RewriteError::IndexOutOfRange { .. } => "IndexOutOfRange",
            RewriteError::Parse(_) => "ParseError",
        }
    }
}

fn var(v: Var) -> GradedPoly {
    GradedPoly::var(v)
}

fn half() -> Coeff {
    rational(1, 2)
}

/// A module generator: a square-free product of `zeta_i`, tagged in the
/// tetragonal case with one of the symbolic classes `T^0`, `T^1`, `T^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    #[serde(serialize_with = "ser_monomial")]
    pub zeta: Monomial,
    pub t: Option<u32>,
}

fn ser_monomial<S: serde::Serializer>(m: &Monomial, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.t {
            Some(c) => write!(f, "{} [T^{c}]", self.zeta),
            None => write!(f, "{}", self.zeta),
        }
    }
}

/// Generators of the pushforward module over the `psi`/`kappa`/base
/// subring, for `n` markings.
pub fn module_generators(preset: Preset, n: u32) -> Vec<Generator> {
    if let Preset::Plane(_) = preset {
        return vec![Generator { zeta: Monomial::one(), t: None }];
    }
    let mut zetas = Vec::new();
    for mask in 0u64..(1 << n) {
        zetas.push(Monomial::from_powers((1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).map(|i| (Var::Zeta(i), 1))));
    }
    match preset {
        Preset::Tetragonal(_) => {
            zetas.into_iter().flat_map(|zeta| (0..3).map(move |c| Generator { zeta: zeta.clone(), t: Some(c) })).collect()
        }
        _ => zetas.into_iter().map(|zeta| Generator { zeta, t: None }).collect(),
    }
}

/// Reduction engine for one preset and number of markings.
#[derive(Debug, Clone)]
pub struct Rewriter {
    preset: Preset,
    n: u32,
    basis: Vec<GradedPoly>,
}

impl Rewriter {
    pub fn new(preset: Preset, n: u32) -> Result<Self, RewriteError> {
        let preset = preset.checked()?;
        let template = Rewriter::template_basis(preset);
        let basis = (1..=n).flat_map(|i| template.iter().map(move |b| b.reindex(|_| i))).collect();
        Ok(Rewriter { preset, n, basis })
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The reduced Groebner basis in use (all markings).
    pub fn basis(&self) -> &[GradedPoly] {
        &self.basis
    }

    fn template_basis(preset: Preset) -> Vec<GradedPoly> {
        let gens: Vec<GradedPoly> = match preset {
            Preset::Plane(_) => return Vec::new(),
            Preset::Trigonal(_) => vec![Rewriter::zeta_quadric(1), Rewriter::z_relation_substituted(1)],
            Preset::Tetragonal(g) => vec![Rewriter::z_relation_substituted(1), Rewriter::tetragonal_cubic(g, 1)],
        };
        groebner(&gens)
    }

    /// `zeta_i^2 + cE1 zeta_i + cE2`.
    fn zeta_quadric(i: u32) -> GradedPoly {
        let z = var(Var::Zeta(i));
        &(&(&z * &z) + &(&var(Var::CE(1)) * &z)) + &var(Var::CE(2))
    }

    /// `z_i^2 + c2` with `z_i = (zeta_i - psi_i) / 2`.
    fn z_relation_substituted(i: u32) -> GradedPoly {
        let z = (&var(Var::Zeta(i)) - &var(Var::Psi(i))).scale(&half());
        &(&z * &z) + &var(Var::C2)
    }

    /// The cubic satisfied by `zeta_i` after substituting `z_i`:
    /// `zeta^3 - (a1 + (g+3)/2 (zeta - psi)) zeta^2 + 1/2 (a2 + a2p (zeta - psi)) zeta - (a3 + a3p (zeta - psi))`.
    pub fn tetragonal_cubic(g: u32, i: u32) -> GradedPoly {
        let zeta = var(Var::Zeta(i));
        let d = &zeta - &var(Var::Psi(i));
        let c2 = &var(Var::A1) + &d.scale(&rational(i64::from(g) + 3, 2));
        let c1 = (&var(Var::A2) + &(&var(Var::A2p) * &d)).scale(&half());
        let c0 = &var(Var::A3) + &(&var(Var::A3p) * &d);
        let zeta2 = &zeta * &zeta;
        &(&(&(&zeta2 * &zeta) - &(&c2 * &zeta2)) + &(&c1 * &zeta)) - &c0
    }

    /// Rejects symbols outside the preset or indices above `n`.
    pub fn check(&self, p: &GradedPoly) -> Result<(), RewriteError> {
        for v in p.vars() {
            if !self.preset.admits(v) {
                return Err(RewriteError::NotInUniverse { symbol: v.name(), preset: self.preset.to_string() });
            }
            if let Some(i) = v.index() {
                if i > self.n {
                    return Err(RewriteError::UniverseMismatch(format!("{v} with n = {}", self.n)));
                }
            }
        }
        Ok(())
    }

    /// Eliminates every `z_i` (and, for plane curves, `zeta` in favour of `lambda1`).
    pub fn substitute_z(&self, p: &GradedPoly) -> Result<GradedPoly, RewriteError> {
        self.check(p)?;
        Ok(match self.preset {
            Preset::Plane(d) => {
                let inv = rational(1, i64::from(d) - 3);
                p.substitute(|v| match v {
                    Var::Z(i) => Some((&var(Var::Psi(i)) - &var(Var::Lambda1)).scale(&inv)),
                    Var::ZetaPlain => Some(var(Var::Lambda1)),
                    _ => None,
                })
            }
            Preset::Trigonal(_) | Preset::Tetragonal(_) => p.substitute(|v| match v {
                Var::Z(i) => Some((&var(Var::Zeta(i)) - &var(Var::Psi(i))).scale(&half())),
                _ => None,
            }),
        })
    }

    pub fn normal_form(&self, p: &GradedPoly) -> Result<GradedPoly, RewriteError> {
        Ok(self.normal_form_traced(p)?.0)
    }

    /// Normal form together with the number of division steps used.
    pub fn normal_form_traced(&self, p: &GradedPoly) -> Result<(GradedPoly, usize), RewriteError> {
        let q = self.substitute_z(p)?;
        Ok(reduce(&q, &self.basis))
    }

    /// Upper bound on division steps for reducing `p`: the number of
    /// z-free monomials in the degrees of `p`.
    pub fn step_bound(&self, p: &GradedPoly) -> u128 {
        let vars: Vec<Var> = self.preset.universe(self.n).into_iter().filter(|v| !matches!(v, Var::Z(_))).collect();
        let top = p.degrees().last().copied().unwrap_or(0) as usize;
        // counts[d] = number of monomials of weighted degree d
        let mut counts = vec![0u128; top + 1];
        counts[0] = 1;
        for v in vars {
            let w = v.degree() as usize;
            for d in w..=top {
                counts[d] += counts[d - w];
            }
        }
        p.degrees().iter().map(|&d| counts[d as usize]).sum()
    }

    /// `[R_i] = zeta_i`.
    pub fn r_class(&self, i: u32) -> Result<GradedPoly, RewriteError> {
        if let Preset::Plane(_) = self.preset {
            return Err(RewriteError::NotInUniverse { symbol: format!("zeta{i}"), preset: self.preset.to_string() });
        }
        if i == 0 || i > self.n {
            return Err(RewriteError::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(var(Var::Zeta(i)))
    }

    /// The defining relations of the presentation, for every marking.
    pub fn relations(&self) -> Vec<GradedPoly> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            let (z, zeta, psi) = (var(Var::Z(i)), var(Var::Zeta(i)), var(Var::Psi(i)));
            let z_quadric = &(&z * &z) + &var(Var::C2);
            match self.preset {
                Preset::Plane(d) => {
                    let d3 = GradedPoly::constant(rational(i64::from(d) - 3, 1));
                    out.push(&(&psi - &(&d3 * &z)) - &var(Var::ZetaPlain));
                }
                Preset::Trigonal(_) => {
                    out.push(Rewriter::zeta_quadric(i));
                    out.push(z_quadric);
                    out.push(&(&psi - &zeta) + &z.scale(&rational(2, 1)));
                }
                Preset::Tetragonal(g) => {
                    out.push(Rewriter::tetragonal_cubic(g, i));
                    out.push(z_quadric);
                    out.push(&(&zeta - &psi) - &z.scale(&rational(2, 1)));
                    // zeta^2 - 2 zeta psi + psi^2 + 4 c2
                    let sq = &(&zeta * &zeta) - &(&zeta * &psi).scale(&rational(2, 1));
                    out.push(&(&sq + &(&psi * &psi)) + &var(Var::C2).scale(&rational(4, 1)));
                }
            }
        }
        if let Preset::Plane(_) = self.preset {
            out.push(&var(Var::Lambda1) - &var(Var::ZetaPlain));
        }
        out
    }

    /// Whether `p` is a combination of [`module_generators`] with
    /// coefficients free of `z` and `zeta`.
    pub fn in_generator_span(&self, p: &GradedPoly) -> bool {
        let gens: Vec<Monomial> = module_generators(self.preset, self.n).into_iter().map(|g| g.zeta).collect();
        p.terms().all(|(m, _)| {
            if m.vars().any(|v| matches!(v, Var::Z(_) | Var::ZetaPlain)) {
                return false;
            }
            let zeta_part = Monomial::from_powers(m.powers().iter().copied().filter(|(v, _)| matches!(v, Var::Zeta(_))));
            gens.contains(&zeta_part)
        })
    }

    /// Coefficients of `p` against the zeta part of each generator.
    pub fn decompose(&self, p: &GradedPoly) -> BTreeMap<String, GradedPoly> {
        let mut out: BTreeMap<String, GradedPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (zeta, rest): (Vec<(Var, u32)>, Vec<(Var, u32)>) =
                m.powers().iter().copied().partition(|(v, _)| matches!(v, Var::Zeta(_)));
            let key = Monomial::from_powers(zeta).to_string();
            out.entry(key).or_default().add_term(Monomial::from_powers(rest), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GradedPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn trigonal_examples() {
        let rw = Rewriter::new(Preset::Trigonal(4), 2).unwrap();
        assert_eq!(rw.substitute_z(&p("z1")).unwrap(), p("1/2*zeta1 - 1/2*psi1"));
        assert_eq!(rw.normal_form(&p("zeta1^2")).unwrap(), p("-cE1*zeta1 - cE2"));
        for rel in rw.relations() {
            assert!(rw.normal_form(&rel).unwrap().is_zero(), "{rel}");
        }
        assert_eq!(rw.check(&p("a1")).unwrap_err().name(), "NotInUniverse");
        assert_eq!(rw.check(&p("psi3")).unwrap_err().name(), "UniverseMismatch");
    }

    #[test]
    fn plane_examples() {
        let rw = Rewriter::new(Preset::Plane(4), 1).unwrap();
        assert_eq!(rw.substitute_z(&p("z1")).unwrap(), p("psi1 - lambda1"));
        assert_eq!(rw.substitute_z(&p("7/3")).unwrap(), p("7/3"));
        assert_eq!(Rewriter::new(Preset::Plane(3), 1).unwrap_err().name(), "DivisorZero");
        for rel in rw.relations() {
            assert!(rw.normal_form(&rel).unwrap().is_zero());
        }
    }

    #[test]
    fn tetragonal_examples() {
        let rw = Rewriter::new(Preset::Tetragonal(5), 1).unwrap();
        assert_eq!(rw.normal_form(&p("zeta1^2")).unwrap(), p("2*zeta1*psi1 - psi1^2 - 4*c2"));
        for rel in rw.relations() {
            assert!(rw.normal_form(&rel).unwrap().is_zero(), "{rel}");
        }
        let cubed = rw.normal_form(&p("zeta1^3")).unwrap();
        assert!(rw.in_generator_span(&cubed));
        assert_eq!(rw.check(&p("cE1")).unwrap_err().name(), "NotInUniverse");
    }

    #[test]
    fn generators() {
        assert_eq!(module_generators(Preset::Trigonal(4), 0).len(), 1);
        let two: Vec<String> = module_generators(Preset::Trigonal(4), 2).iter().map(|g| g.to_string()).collect();
        assert_eq!(two, ["1", "zeta1", "zeta2", "zeta1*zeta2"]);
        assert_eq!(module_generators(Preset::Tetragonal(5), 1).len(), 6);
    }

    #[test]
    fn r_classes() {
        let rw = Rewriter::new(Preset::Trigonal(4), 2).unwrap();
        assert_eq!(rw.r_class(1).unwrap(), p("zeta1"));
        assert_eq!(rw.r_class(3).unwrap_err().name(), "IndexOutOfRange");
        let sq = rw.normal_form(&(&rw.r_class(1).unwrap() * &rw.r_class(1).unwrap())).unwrap();
        assert!(rw.in_generator_span(&sq));
    }
}
