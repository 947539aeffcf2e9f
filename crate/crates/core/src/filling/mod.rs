//! Fixed-point inference over the `(g, n)` grid.
//!
//! Atoms are statements "the space of kind K at (g, n) has the Chow-Kunneth
//! generation property and all Chow classes are tautological". Base facts
//! come from a [`FactFile`]; four inductive rules plus two closure rules
//! (strength order and downward closure of `bar` in `n`) are applied until
//! nothing changes. Every derived atom records the rule instance and the
//! premises it consumed.

mod chart;
mod facts;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chart::{Chart, ColumnHeights};
pub use facts::{Fact, FactFile, FactKind, Negative};

use crate::graph::is_stable_pair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillError {
    #[error("fact at ({g}, {n}) has no citation")]
    MissingCitation { g: u32, n: u32 },
    #[error("{atom} collides with the negative fact at ({g}, {n}): {cite}", g = atom.g, n = atom.n)]
    InconsistentFacts { atom: Atom, cite: String },
    #[error("malformed fact file: {0}")]
    Malformed(String),
    #[error("({g}, {n}) lies outside the grid")]
    OutOfGrid { g: u32, n: u32 },
}

impl FillError {
    pub fn name(&self) -> &'static str {
        match self {
            FillError::MissingCitation { .. } => "MissingCitation",
            FillError::InconsistentFacts { .. } => "InconsistentFacts",
            FillError::Malformed(_) => "MalformedFacts",
            FillError::OutOfGrid { .. } => "OutOfGrid",
        }
    }
}

/// Kinds of statement, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Open,
    Rt,
    Ct,
    Bar,
}

impl Flag {
    pub const ALL: [Flag; 4] = [Flag::Open, Flag::Rt, Flag::Ct, Flag::Bar];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Open => "open",
            Flag::Rt => "rt",
            Flag::Ct => "ct",
            Flag::Bar => "bar",
        }
    }

    /// The next weaker flag implied by this one.
    pub fn weaker(self) -> Option<Flag> {
        match self {
            Flag::Open => None,
            Flag::Rt => Some(Flag::Open),
            Flag::Ct => Some(Flag::Rt),
            Flag::Bar => Some(Flag::Ct),
        }
    }
}

impl std::str::FromStr for Flag {
    type Err = FillError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Flag::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| FillError::Malformed(format!("unknown kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub flag: Flag,
    pub g: u32,
    pub n: u32,
}

impl Atom {
    pub fn new(flag: Flag, g: u32, n: u32) -> Self {
        Atom { flag, g, n }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.flag.as_str(), self.g, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Base,
    FillV1,
    FillV2,
    Thicken,
    RationalTails,
    Strength,
    Column,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Base => "base",
            Rule::FillV1 => "fill_v1",
            Rule::FillV2 => "fill_v2",
            Rule::Thicken => "thicken",
            Rule::RationalTails => "rational_tails",
            Rule::Strength => "strength",
            Rule::Column => "column",
        }
    }
}

/// Why an atom holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: Rule,
    /// The cell the rule was instantiated at (conclusions cover the column below it).
    pub at: (u32, u32),
    pub premises: Vec<Atom>,
    /// Citation of a base fact, or of the complement fact used by `fill_v2`.
    pub cite: Option<String>,
}

impl Derivation {
    fn base(at: (u32, u32), cite: &str) -> Self {
        Derivation { rule: Rule::Base, at, premises: Vec::new(), cite: Some(cite.to_string()) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBounds {
    pub max_g: u32,
    pub max_n: u32,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds { max_g: 8, max_n: 16 }
    }
}

impl GridBounds {
    pub fn contains(&self, g: u32, n: u32) -> bool {
        g <= self.max_g && n <= self.max_n
    }

    /// Stable cells in the grid, column by column.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..=self.max_g).flat_map(move |g| (0..=self.max_n).map(move |n| (g, n))).filter(|&(g, n)| is_stable_pair(g, n))
    }
}

/// The state of the grid: derived atoms with provenance, complement facts
/// and negative cells.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GridStatus {
    pub bounds: GridBounds,
    pub atoms: BTreeMap<Atom, Derivation>,
    pub dn_complement: BTreeMap<(u32, u32), String>,
    /// Negative cells with the citation of the fact they propagate from.
    pub negatives: BTreeMap<(u32, u32), String>,
}

type Conclusions = Vec<(Atom, Derivation)>;

impl GridStatus {
    pub fn new(bounds: GridBounds) -> Self {
        GridStatus { bounds, ..Default::default() }
    }

    /// Whether the atom holds. Cells outside the grid are unknown.
    pub fn holds(&self, flag: Flag, g: u32, n: u32) -> bool {
        self.atoms.contains_key(&Atom::new(flag, g, n))
    }

    pub fn is_negative(&self, g: u32, n: u32) -> bool {
        self.negatives.contains_key(&(g, n))
    }

    pub fn derivation(&self, atom: &Atom) -> Option<&Derivation> {
        self.atoms.get(atom)
    }

    /// `flag` at every stable `(g', n')` with `g' <= max_g`, `n' <= max_n`;
    /// pushes the atoms onto `premises`. Fails on any cell outside the grid.
    fn rectangle(&self, flag: Flag, max_g: u32, max_n: u32, premises: &mut Vec<Atom>) -> bool {
        for g in 0..=max_g {
            for n in 0..=max_n {
                if !is_stable_pair(g, n) {
                    continue;
                }
                if !self.holds(flag, g, n) {
                    return false;
                }
                premises.push(Atom::new(flag, g, n));
            }
        }
        true
    }

    fn column_below(&self, flag: Flag, g: u32, n: u32, premises: &mut Vec<Atom>) -> bool {
        for m in 0..=n {
            if !is_stable_pair(g, m) {
                continue;
            }
            if !self.holds(flag, g, m) {
                return false;
            }
            premises.push(Atom::new(flag, g, m));
        }
        true
    }

    fn conclude(&self, flag: Flag, g: u32, n: u32, derivation: Derivation) -> Conclusions {
        (0..=n)
            .filter(|&m| is_stable_pair(g, m))
            .map(|m| (Atom::new(flag, g, m), derivation.clone()))
            .collect()
    }

    /// Premises (1) open column and (2) `bar` on the rectangle of lower
    /// genera up to `n + 1` markings.
    fn fill_premises(&self, g: u32, n: u32) -> Option<Vec<Atom>> {
        if !is_stable_pair(g, n) || !self.bounds.contains(g, n) {
            return None;
        }
        let mut premises = Vec::new();
        if !self.column_below(Flag::Open, g, n, &mut premises) {
            return None;
        }
        if g > 0 && !self.rectangle(Flag::Bar, g - 1, n + 1, &mut premises) {
            return None;
        }
        Some(premises)
    }

    /// Filling criterion, first form: open column, `bar` for lower genera up
    /// to `n + 1` markings and `bar(g - 1, n + 2)` give `bar` on the column.
    pub fn rule_v1(&self, g: u32, n: u32) -> Option<Conclusions> {
        let mut premises = self.fill_premises(g, n)?;
        if g > 0 {
            if !self.holds(Flag::Bar, g - 1, n + 2) {
                return None;
            }
            premises.push(Atom::new(Flag::Bar, g - 1, n + 2));
        }
        let d = Derivation { rule: Rule::FillV1, at: (g, n), premises, cite: None };
        Some(self.conclude(Flag::Bar, g, n, d))
    }

    /// Filling criterion, second form: the third premise of
    /// [`rule_v1`](Self::rule_v1) is replaced by a cited statement about the
    /// complement of the disconnecting-node locus at `(g, n)`. With
    /// `extra = None` the complement fact recorded in the grid is used.
    pub fn rule_v2(&self, g: u32, n: u32, extra: Option<&Fact>) -> Result<Option<Conclusions>, FillError> {
        let cite = match extra {
            Some(fact) => {
                if fact.cite.trim().is_empty() {
                    return Err(FillError::MissingCitation { g: fact.g, n: fact.n });
                }
                if fact.kind != FactKind::DnComplement || (fact.g, fact.n) != (g, n) {
                    return Ok(None);
                }
                fact.cite.clone()
            }
            None => match self.dn_complement.get(&(g, n)) {
                Some(cite) => cite.clone(),
                None => return Ok(None),
            },
        };
        let Some(premises) = self.fill_premises(g, n) else {
            return Ok(None);
        };
        let d = Derivation { rule: Rule::FillV2, at: (g, n), premises, cite: Some(cite) };
        Ok(Some(self.conclude(Flag::Bar, g, n, d)))
    }

    /// Thickening criterion for compact type: open column plus `ct` for all
    /// lower genera up to `n + 1` markings.
    pub fn rule_thicken(&self, g: u32, n: u32) -> Option<Conclusions> {
        if !is_stable_pair(g, n) || !self.bounds.contains(g, n) {
            return None;
        }
        let mut premises = Vec::new();
        if !self.column_below(Flag::Open, g, n, &mut premises) {
            return None;
        }
        if g > 0 && !self.rectangle(Flag::Ct, g - 1, n + 1, &mut premises) {
            return None;
        }
        let d = Derivation { rule: Rule::Thicken, at: (g, n), premises, cite: None };
        Some(self.conclude(Flag::Ct, g, n, d))
    }

    /// An open column gives rational tails once the genus-0 column is
    /// filled up to `n + 1` markings.
    pub fn rule_rt(&self, g: u32, n: u32) -> Option<Conclusions> {
        if !is_stable_pair(g, n) || !self.bounds.contains(g, n) {
            return None;
        }
        let mut premises = Vec::new();
        if !self.column_below(Flag::Open, g, n, &mut premises) {
            return None;
        }
        if !self.column_below(Flag::Bar, 0, n + 1, &mut premises) {
            return None;
        }
        let d = Derivation { rule: Rule::RationalTails, at: (g, n), premises, cite: None };
        Some(self.conclude(Flag::Rt, g, n, d))
    }

    /// Strength order and downward closure of `bar` applied at one cell.
    fn closure(&self, g: u32, n: u32) -> Conclusions {
        let mut out = Vec::new();
        for flag in Flag::ALL {
            if !self.holds(flag, g, n) {
                continue;
            }
            if let Some(weaker) = flag.weaker() {
                let d = Derivation { rule: Rule::Strength, at: (g, n), premises: vec![Atom::new(flag, g, n)], cite: None };
                out.push((Atom::new(weaker, g, n), d));
            }
        }
        if self.holds(Flag::Bar, g, n) && n > 0 && is_stable_pair(g, n - 1) {
            let d = Derivation { rule: Rule::Column, at: (g, n), premises: vec![Atom::new(Flag::Bar, g, n)], cite: None };
            out.push((Atom::new(Flag::Bar, g, n - 1), d));
        }
        out
    }

    /// Conclusions of one rule instance against the current state.
    pub fn apply(&self, task: Task) -> Result<Conclusions, FillError> {
        let (g, n) = (task.g, task.n);
        Ok(match task.rule {
            Rule::FillV1 => self.rule_v1(g, n).unwrap_or_default(),
            Rule::FillV2 => self.rule_v2(g, n, None)?.unwrap_or_default(),
            Rule::Thicken => self.rule_thicken(g, n).unwrap_or_default(),
            Rule::RationalTails => self.rule_rt(g, n).unwrap_or_default(),
            Rule::Strength | Rule::Column => self.closure(g, n),
            Rule::Base => Vec::new(),
        })
    }

    fn insert(&mut self, atom: Atom, derivation: Derivation) -> Result<bool, FillError> {
        if !self.bounds.contains(atom.g, atom.n) || self.atoms.contains_key(&atom) {
            return Ok(false);
        }
        if atom.flag == Flag::Bar {
            if let Some(cite) = self.negatives.get(&(atom.g, atom.n)) {
                return Err(FillError::InconsistentFacts { atom, cite: cite.clone() });
            }
        }
        self.atoms.insert(atom, derivation);
        Ok(true)
    }

    /// Whether re-running the recorded rule instance on this state derives
    /// the atom again.
    pub fn replay(&self, atom: &Atom) -> bool {
        let Some(d) = self.atoms.get(atom) else {
            return false;
        };
        if d.rule == Rule::Base {
            return d.cite.as_deref().is_some_and(|c| !c.trim().is_empty());
        }
        if !d.premises.iter().all(|p| self.holds(p.flag, p.g, p.n)) {
            return false;
        }
        let task = Task { rule: d.rule, g: d.at.0, n: d.at.1 };
        self.apply(task).map(|c| c.iter().any(|(a, _)| a == atom)).unwrap_or(false)
    }

    /// The derivation tree of `atom`, one line per atom, children indented.
    /// Shared subtrees are printed once.
    pub fn explain(&self, atom: &Atom) -> Option<Vec<String>> {
        self.atoms.get(atom)?;
        let mut lines = Vec::new();
        let mut seen = BTreeSet::new();
        self.explain_into(atom, 0, &mut seen, &mut lines);
        Some(lines)
    }

    fn explain_into(&self, atom: &Atom, depth: usize, seen: &mut BTreeSet<Atom>, lines: &mut Vec<String>) {
        let pad = "  ".repeat(depth);
        let d = &self.atoms[atom];
        let first = seen.insert(*atom);
        let mut line = format!("{pad}{atom} <= {}", d.rule.as_str());
        if d.rule != Rule::Base {
            line.push_str(&format!(" at ({}, {})", d.at.0, d.at.1));
        }
        if let Some(cite) = &d.cite {
            line.push_str(&format!(" [{cite}]"));
        }
        if !first && !d.premises.is_empty() {
            line.push_str(" (see above)");
            lines.push(line);
            return;
        }
        lines.push(line);
        for p in &d.premises {
            self.explain_into(p, depth + 1, seen, lines);
        }
    }

    /// Every atom's chain of premises ends in base facts.
    pub fn chain_terminates(&self, atom: &Atom) -> bool {
        let mut stack = vec![*atom];
        let mut seen = BTreeSet::new();
        while let Some(a) = stack.pop() {
            if !seen.insert(a) {
                continue;
            }
            match self.atoms.get(&a) {
                None => return false,
                Some(d) if d.rule == Rule::Base => {}
                Some(d) if d.premises.is_empty() => return false,
                Some(d) => stack.extend(&d.premises),
            }
        }
        true
    }

    /// Largest `n` with `flag` at `(g, n)`.
    pub fn height(&self, flag: Flag, g: u32) -> Option<u32> {
        (0..=self.bounds.max_n).rev().find(|&n| self.holds(flag, g, n))
    }

    pub fn chart(&self) -> Chart {
        Chart::from_status(self)
    }
}

/// One rule instance to try during propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Task {
    pub rule: Rule,
    pub g: u32,
    pub n: u32,
}

/// Least fixed point of the rules over the base facts.
pub fn propagate(facts: &FactFile, bounds: GridBounds) -> Result<GridStatus, FillError> {
    propagate_scheduled(facts, bounds, |_| {})
}

/// [`propagate`] with a hook that may reorder the rule instances before
/// every round. The fixed point does not depend on the order.
pub fn propagate_scheduled<F>(facts: &FactFile, bounds: GridBounds, mut schedule: F) -> Result<GridStatus, FillError>
where
    F: FnMut(&mut [Task]),
{
    facts.validate()?;
    let mut status = GridStatus::new(bounds);
    for neg in &facts.negatives {
        for n in neg.n..=bounds.max_n {
            status.negatives.entry((neg.g, n)).or_insert_with(|| neg.cite.clone());
        }
    }
    for fact in &facts.facts {
        match fact.kind.flag() {
            Some(flag) => {
                status.insert(Atom::new(flag, fact.g, fact.n), Derivation::base((fact.g, fact.n), &fact.cite))?;
            }
            None => {
                status.dn_complement.entry((fact.g, fact.n)).or_insert_with(|| fact.cite.clone());
            }
        }
    }

    let mut tasks: Vec<Task> = Vec::new();
    for (g, n) in bounds.cells() {
        for rule in [Rule::FillV1, Rule::Thicken, Rule::RationalTails, Rule::Strength] {
            tasks.push(Task { rule, g, n });
        }
        if status.dn_complement.contains_key(&(g, n)) {
            tasks.push(Task { rule: Rule::FillV2, g, n });
        }
    }

    loop {
        schedule(&mut tasks);
        let mut changed = false;
        for &task in &tasks {
            for (atom, d) in status.apply(task)? {
                changed |= status.insert(atom, d)?;
            }
        }
        if !changed {
            return Ok(status);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(kind: FactKind, g: u32, n: u32) -> Fact {
        Fact { kind, g, n, cite: "test".into() }
    }

    #[test]
    fn empty_grid() {
        let status = propagate(&FactFile::default(), GridBounds::default()).unwrap();
        assert!(status.atoms.is_empty());
        assert!(status.rule_v1(2, 3).is_none());
        assert!(status.rule_thicken(2, 3).is_none());
        assert!(status.rule_rt(2, 3).is_none());
    }

    #[test]
    fn genus_zero_fills_by_induction() {
        let facts = FactFile { facts: (3..=16).map(|n| fact(FactKind::Open, 0, n)).collect(), negatives: vec![] };
        let status = propagate(&facts, GridBounds::default()).unwrap();
        for n in 3..=16 {
            assert!(status.holds(Flag::Bar, 0, n));
            assert!(status.replay(&Atom::new(Flag::Bar, 0, n)));
        }
    }

    #[test]
    fn v2_needs_citation() {
        let status = GridStatus::new(GridBounds::default());
        let mut extra = fact(FactKind::DnComplement, 2, 9);
        extra.cite.clear();
        assert_eq!(status.rule_v2(2, 9, Some(&extra)).unwrap_err().name(), "MissingCitation");
        assert_eq!(status.rule_v2(2, 9, None).unwrap(), None);
    }

    #[test]
    fn negative_collision() {
        let facts = FactFile {
            facts: vec![fact(FactKind::Bar, 1, 12)],
            negatives: vec![Negative { g: 1, n: 11, cite: "x".into() }],
        };
        assert_eq!(propagate(&facts, GridBounds::default()).unwrap_err().name(), "InconsistentFacts");
    }
}
