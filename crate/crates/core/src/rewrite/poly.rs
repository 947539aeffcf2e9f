//! Sparse graded polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::RewriteError;

/// A generator of the graded ring. The derived order lists variables from
/// largest to smallest in the monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z(u32),
    Zeta(u32),
    Psi(u32),
    /// The unindexed hyperplane class of the plane-curve presentation.
    ZetaPlain,
    Kappa1,
    Kappa2,
    Lambda1,
    C2,
    /// Chern classes of the dual rank-2 bundle: `CE(1)`, `CE(2)`, `CE(3)`.
    CE(u32),
    A1,
    A2,
    A2p,
    A3,
    A3p,
}

impl Var {
    pub fn degree(self) -> u32 {
        match self {
            Var::C2 | Var::Kappa2 | Var::A2 | Var::A3p => 2,
            Var::CE(j) => j,
            Var::A3 => 3,
            _ => 1,
        }
    }

    pub fn index(self) -> Option<u32> {
        match self {
            Var::Z(i) | Var::Zeta(i) | Var::Psi(i) => Some(i),
            _ => None,
        }
    }

    /// Same family with a different marking index.
    pub fn reindexed(self, i: u32) -> Var {
        match self {
            Var::Z(_) => Var::Z(i),
            Var::Zeta(_) => Var::Zeta(i),
            Var::Psi(_) => Var::Psi(i),
            other => other,
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::Z(i) => format!("z{i}"),
            Var::Zeta(i) => format!("zeta{i}"),
            Var::Psi(i) => format!("psi{i}"),
            Var::ZetaPlain => "zeta".into(),
            Var::Kappa1 => "kappa1".into(),
            Var::Kappa2 => "kappa2".into(),
            Var::Lambda1 => "lambda1".into(),
            Var::C2 => "c2".into(),
            Var::CE(j) => format!("cE{j}"),
            Var::A1 => "a1".into(),
            Var::A2 => "a2".into(),
            Var::A2p => "a2p".into(),
            Var::A3 => "a3".into(),
            Var::A3p => "a3p".into(),
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        let fixed = match name {
            "zeta" => Some(Var::ZetaPlain),
            "kappa1" => Some(Var::Kappa1),
            "kappa2" => Some(Var::Kappa2),
            "lambda1" => Some(Var::Lambda1),
            "c2" => Some(Var::C2),
            "cE1" => Some(Var::CE(1)),
            "cE2" => Some(Var::CE(2)),
            "cE3" => Some(Var::CE(3)),
            "a1" => Some(Var::A1),
            "a2" => Some(Var::A2),
            "a2p" => Some(Var::A2p),
            "a3" => Some(Var::A3),
            "a3p" => Some(Var::A3p),
            _ => None,
        };
        if fixed.is_some() {
            return fixed;
        }
        let indexed = |prefix: &str| -> Option<u32> {
            let rest = name.strip_prefix(prefix)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
                return None;
            }
            rest.parse().ok()
        };
        if let Some(i) = indexed("zeta") {
            return Some(Var::Zeta(i));
        }
        if let Some(i) = indexed("psi") {
            return Some(Var::Psi(i));
        }
        indexed("z").map(Var::Z)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A product of variables with positive exponents, sorted by variable.
///
/// Ordered by weighted degree first, then reverse lexicographically: of two
/// monomials of equal degree, the one with the smaller exponent at the
/// smallest variable where they differ is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(v, e)| v.degree() * e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(&other.0).copied())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut rest = other.0.iter().peekable();
        for &(v, e) in &self.0 {
            let mut d = 0;
            if let Some(&&(w, f)) = rest.peek() {
                match w.cmp(&v) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        d = f;
                        rest.next();
                    }
                    Ordering::Greater => {}
                }
            }
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if rest.next().is_some() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            let slot = map.entry(v).or_default();
            *slot = (*slot).max(e);
        }
        Monomial(map.into_iter().collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.vars().all(|v| other.exponent(v) == 0)
    }

    fn map_vars<F: Fn(Var) -> Var>(&self, f: F) -> Monomial {
        Monomial::from_powers(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        // walk from the smallest variable (largest in derived order) up
        let (mut i, mut j) = (self.0.len(), other.0.len());
        while i > 0 || j > 0 {
            let a = if i > 0 { Some(self.0[i - 1]) } else { None };
            let b = if j > 0 { Some(other.0[j - 1]) } else { None };
            let (ea, eb) = match (a, b) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                        (ea, eb)
                    }
                    Ordering::Greater => {
                        i -= 1;
                        (ea, 0)
                    }
                    Ordering::Less => {
                        j -= 1;
                        (0, eb)
                    }
                },
                (Some((_, ea)), None) => {
                    i -= 1;
                    (ea, 0)
                }
                (None, Some((_, eb))) => {
                    j -= 1;
                    (0, eb)
                }
                (None, None) => unreachable!(),
            };
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

pub type Coeff = BigRational;

pub fn rational(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact polynomial: nonzero coefficients keyed by monomial, stored in
/// increasing monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        GradedPoly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        GradedPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        GradedPoly::term(Coeff::one(), Monomial::var(v))
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let mut p = GradedPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut p = GradedPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Coeff) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> GradedPoly {
        GradedPoly::from_terms(self.terms.iter().map(|(n, x)| (n.mul(m), x * c)))
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut out = GradedPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The homogeneous slice of degree `k`.
    pub fn degree_part(&self, k: u32) -> GradedPoly {
        GradedPoly { terms: self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Degrees with a nonzero slice, increasing.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Replaces each variable `v` by `f(v)` (or leaves it when `f` returns `None`).
    pub fn substitute<F>(&self, f: F) -> GradedPoly
    where
        F: Fn(Var) -> Option<GradedPoly>,
    {
        let mut cache: BTreeMap<(Var, u32), GradedPoly> = BTreeMap::new();
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut prod = GradedPoly::constant(c.clone());
            for &(v, e) in m.powers() {
                match f(v) {
                    None => keep.push((v, e)),
                    Some(image) => {
                        let p = cache.entry((v, e)).or_insert_with(|| image.pow(e));
                        prod = &prod * p;
                    }
                }
            }
            let kept = Monomial::from_powers(keep);
            for (n, x) in prod.terms {
                out.add_term(n.mul(&kept), x);
            }
        }
        out
    }

    /// Renames the marking index of every indexed variable via `f`.
    pub fn reindex<F: Fn(u32) -> u32>(&self, f: F) -> GradedPoly {
        GradedPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (m.map_vars(|v| v.index().map_or(v, |i| v.reindexed(f(i)))), c.clone())
        }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, RewriteError> {
        let raw: PolyJson = serde_json::from_str(text).map_err(|e| RewriteError::Parse(e.to_string()))?;
        GradedPoly::try_from(raw)
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_coeff(s: &str) -> Result<Coeff, RewriteError> {
    let bad = || RewriteError::Parse(format!("bad coefficient {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.parse::<BigInt>().map_err(|_| bad())?, b.parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(RewriteError::DivisorZero);
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    vars: Vec<(String, u32)>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl From<&GradedPoly> for PolyJson {
    fn from(p: &GradedPoly) -> Self {
        PolyJson {
            terms: p
                .terms()
                .map(|(m, c)| TermJson { coeff: fmt_coeff(c), vars: m.powers().iter().map(|&(v, e)| (v.name(), e)).collect() })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for GradedPoly {
    type Error = RewriteError;

    fn try_from(raw: PolyJson) -> Result<Self, Self::Error> {
        let mut p = GradedPoly::zero();
        for t in raw.terms {
            let mut powers = Vec::new();
            for (name, e) in t.vars {
                let v = Var::from_name(&name).ok_or_else(|| RewriteError::Parse(format!("unknown symbol {name:?}")))?;
                powers.push((v, e));
            }
            p.add_term(Monomial::from_powers(powers), parse_coeff(&t.coeff)?);
        }
        Ok(p)
    }
}

impl Serialize for GradedPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        GradedPoly::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;

    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;

    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;

    fn neg(self) -> GradedPoly {
        self.scale(&-Coeff::one())
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;

    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for GradedPoly {
            type Output = GradedPoly;
            fn $f(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> GradedPoly {
        GradedPoly::var(x)
    }

    #[test]
    fn ring_identities() {
        let (z, p) = (v(Var::Zeta(1)), v(Var::Psi(1)));
        let lhs = &(&z + &p) * &(&z - &p);
        let rhs = &(&z * &z) - &(&p * &p);
        assert_eq!(lhs, rhs);
        assert_eq!(&lhs + &GradedPoly::zero(), lhs);
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn grading() {
        let m = Monomial::from_powers([(Var::Zeta(1), 1), (Var::Psi(2), 1), (Var::C2, 1)]);
        assert_eq!(m.degree(), 4);
        let p = &GradedPoly::term(Coeff::one(), m) + &v(Var::Kappa1);
        assert_eq!(p.degrees(), vec![1, 4]);
        assert_eq!(p.degree_part(1), v(Var::Kappa1));
    }

    #[test]
    fn order_is_graded_reverse_lex() {
        let m = |ps: &[(Var, u32)]| Monomial::from_powers(ps.iter().copied());
        let zeta2 = m(&[(Var::Zeta(1), 2)]);
        let zeta_psi = m(&[(Var::Zeta(1), 1), (Var::Psi(1), 1)]);
        let psi2 = m(&[(Var::Psi(1), 2)]);
        let c2 = m(&[(Var::C2, 1)]);
        assert!(zeta2 > zeta_psi && zeta_psi > psi2 && psi2 > c2);
        assert!(m(&[(Var::Z(1), 1)]) > m(&[(Var::Zeta(1), 1)]));
        assert!(m(&[(Var::A3, 1)]) > m(&[(Var::Kappa1, 2)]));
    }

    #[test]
    fn division() {
        let a = Monomial::from_powers([(Var::Zeta(1), 3), (Var::Psi(1), 1)]);
        let b = Monomial::from_powers([(Var::Zeta(1), 2)]);
        assert_eq!(a.div(&b).unwrap(), Monomial::from_powers([(Var::Zeta(1), 1), (Var::Psi(1), 1)]));
        assert!(b.div(&a).is_none());
        assert!(a.div(&Monomial::var(Var::C2)).is_none());
    }

    #[test]
    fn names_round_trip() {
        for name in ["z1", "zeta12", "psi3", "zeta", "kappa2", "cE3", "a2p", "a3p", "lambda1"] {
            assert_eq!(Var::from_name(name).unwrap().name(), name);
        }
        assert!(Var::from_name("zeta0").is_none());
        assert!(Var::from_name("q").is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = &(&v(Var::Zeta(1)) * &v(Var::Psi(2))).scale(&rational(-3, 4)) + &GradedPoly::constant(rational(5, 1));
        let text = p.to_json();
        assert_eq!(GradedPoly::from_json(&text).unwrap(), p);
        assert_eq!(GradedPoly::from_json(&text).unwrap().to_json(), text);
    }
}
