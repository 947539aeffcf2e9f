//! Ramification profiles of branched covers of the line: Riemann-Hurwitz
//! bookkeeping, the profiles cut out by ramification cycles, and the
//! components of their intersections.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("a + 2 = {} exceeds the degree k = {k}", .a + 2)]
    ProfileTooRamified { k: u32, a: u32 },
    #[error("invalid cycle spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse partition list: {0}")]
    Parse(String),
}

impl HurwitzError {
    pub fn name(&self) -> &'static str {
        match self {
            HurwitzError::DegenerateInput(_) => "DegenerateInput",
            HurwitzError::ProfileTooRamified { .. } => "ProfileTooRamified",
            HurwitzError::InvalidSpec(_) => "InvalidSpec",
            HurwitzError::Parse(_) => "ParseError",
        }
    }
}

/// All partitions of `total`, each weakly decreasing, in reverse
/// lexicographic order. `partitions(0)` is the single empty partition.
pub fn partitions(total: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            prefix.push(part);
            go(left - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, &mut Vec::new(), &mut out);
    out
}

/// `(j, 1, ..., 1)` as a partition of `k`.
fn hook(j: u32, k: u32) -> Vec<u32> {
    let mut parts = vec![j];
    parts.extend(std::iter::repeat(1).take((k - j) as usize));
    parts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub k: u32,
    pub g: u32,
    /// Weakly decreasing partitions of `k`, one per branch point.
    pub partitions: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub ok: bool,
    /// `2g - 2 + 2k - sum (k - len(mu))`; zero when Riemann-Hurwitz holds.
    pub deficit: i64,
    /// Indices of entries that are not partitions of `k`.
    pub bad_partitions: Vec<usize>,
    pub warnings: Vec<String>,
}

impl RamificationProfile {
    /// Builds a profile, sorting each partition into weakly decreasing order.
    pub fn new(k: u32, g: u32, mut partitions: Vec<Vec<u32>>) -> Self {
        for p in &mut partitions {
            p.sort_unstable_by(|a, b| b.cmp(a));
        }
        RamificationProfile { k, g, partitions }
    }

    /// Parses `"2,1;2,1;3"` style partition lists.
    pub fn parse(k: u32, g: u32, text: &str) -> Result<Self, HurwitzError> {
        let mut parts = Vec::new();
        for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let p = chunk
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|e| HurwitzError::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            parts.push(p);
        }
        Ok(RamificationProfile::new(k, g, parts))
    }

    pub fn branch_points(&self) -> usize {
        self.partitions.len()
    }

    /// `sum len(mu^i)`.
    pub fn total_length(&self) -> u64 {
        self.partitions.iter().map(|p| p.len() as u64).sum()
    }

    pub fn validate(&self) -> ProfileReport {
        let k = i64::from(self.k);
        let bad_partitions: Vec<usize> = self
            .partitions
            .iter()
            .enumerate()
            .filter(|(_, p)| p.contains(&0) || p.iter().map(|&x| i64::from(x)).sum::<i64>() != k)
            .map(|(i, _)| i)
            .collect();
        let ramification: i64 = self.partitions.iter().map(|p| k - p.len() as i64).sum();
        let deficit = 2 * i64::from(self.g) - 2 + 2 * k - ramification;
        let mut warnings = Vec::new();
        if self.k >= 5 {
            warnings.push(format!("degree {} requires characteristic 0 or greater than {}", self.k, self.k.max(5)));
        }
        ProfileReport { ok: deficit == 0 && bad_partitions.is_empty() && self.k >= 2, deficit, bad_partitions, warnings }
    }
}

/// Free-function form of [`RamificationProfile::validate`].
pub fn validate_profile(profile: &RamificationProfile) -> ProfileReport {
    profile.validate()
}

/// Simply branched covers: `2g - 2 + 2k` copies of `(2, 1, ..., 1)`.
pub fn simple_profile(k: u32, g: u32) -> Result<RamificationProfile, HurwitzError> {
    if k < 2 {
        return Err(HurwitzError::DegenerateInput(format!("degree {k} < 2")));
    }
    let m = 2 * g + 2 * k - 2;
    Ok(RamificationProfile::new(k, g, vec![hook(2, k); m as usize]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FphProfile {
    pub profile: RamificationProfile,
    /// Number of simple branch points.
    pub m: u32,
    /// Total number of preimages of branch points, `sum len(mu^i)`.
    pub n_total: u64,
}

/// Profile with one point of ramification order `a + 2` and otherwise simple
/// branching. For `a = 0` this is the simply branched profile.
pub fn fph_profile(k: u32, g: u32, a: u32) -> Result<FphProfile, HurwitzError> {
    if a + 2 > k {
        return Err(HurwitzError::ProfileTooRamified { k, a });
    }
    if a == 0 {
        let profile = simple_profile(k, g)?;
        let m = profile.branch_points() as u32;
        return Ok(FphProfile { n_total: profile.total_length(), profile, m });
    }
    let m = 2 * g + 2 * k - 2 - a - 1;
    let mut parts = vec![hook(a + 2, k)];
    parts.extend(std::iter::repeat(hook(2, k)).take(m as usize));
    let profile = RamificationProfile::new(k, g, parts);
    Ok(FphProfile { n_total: profile.total_length(), profile, m })
}

/// `R_{i_1} ... R_{i_j} T^a` on the Hurwitz space of degree-`k` covers with
/// `n` marked points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamCycleSpec {
    pub n: u32,
    pub indices: Vec<u32>,
    pub a: u32,
    pub k: u32,
}

impl RamCycleSpec {
    pub fn validate(&self) -> Result<(), HurwitzError> {
        if self.a + 2 > self.k {
            return Err(HurwitzError::InvalidSpec(format!("a + 2 = {} exceeds k = {}", self.a + 2, self.k)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &i in &self.indices {
            if i == 0 || i > self.n {
                return Err(HurwitzError::InvalidSpec(format!("index {i} outside 1..={}", self.n)));
            }
            if !seen.insert(i) {
                return Err(HurwitzError::InvalidSpec(format!("index {i} repeated")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    /// Marked point carrying ramification order `a + 2`, if any.
    pub special_marking: Option<u32>,
    pub description: String,
    /// How the component maps to `Y_0`'s parameter space, when it does.
    pub forget_recipe: Option<String>,
}

/// Components of `R_1 ... R_n T^a` (all markings ramified).
pub fn component_labels(spec: &RamCycleSpec) -> Result<Vec<Component>, HurwitzError> {
    spec.validate()?;
    let order = spec.a + 2;
    if spec.a == 0 {
        return Ok(vec![Component {
            label: "Y".into(),
            special_marking: None,
            description: "all marked points simply ramified".into(),
            forget_recipe: None,
        }]);
    }
    let mut out = vec![Component {
        label: "Y0".into(),
        special_marking: None,
        description: format!("an unmarked point p0 of ramification order {order}; all marked points simply ramified"),
        forget_recipe: None,
    }];
    for i in 1..=spec.n {
        out.push(Component {
            label: format!("Y{i}"),
            special_marking: Some(i),
            description: format!("p{i} ramified to order {order}; other marked points simply ramified"),
            forget_recipe: Some(format!("forget p{i}, then relabel p0 as p{i}")),
        });
    }
    Ok(out)
}

/// Codimension of `R_{i_1} ... R_{i_j} T^a`: each `R_i` is a divisor and
/// `T^a` has codimension `a`.
pub fn cycle_codim(spec: &RamCycleSpec) -> u32 {
    spec.indices.len() as u32 + spec.a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert!(RamificationProfile::new(2, 2, vec![vec![2]; 6]).validate().ok);
        assert!(RamificationProfile::new(3, 4, vec![vec![2, 1]; 12]).validate().ok);
        let short = RamificationProfile::new(3, 4, vec![vec![2, 1]; 11]).validate();
        assert!(!short.ok);
        assert_eq!(short.deficit, 1);
        let bad = RamificationProfile::new(3, 0, vec![vec![2, 2]; 4]).validate();
        assert_eq!(bad.bad_partitions, vec![0, 1, 2, 3]);
    }

    #[test]
    fn simple_profiles() {
        assert_eq!(simple_profile(3, 0).unwrap().branch_points(), 4);
        assert_eq!(simple_profile(4, 6).unwrap().branch_points(), 18);
        assert_eq!(simple_profile(2, 1).unwrap().branch_points(), 4);
        assert_eq!(simple_profile(1, 3).unwrap_err().name(), "DegenerateInput");
    }

    #[test]
    fn fph() {
        let p = fph_profile(4, 5, 1).unwrap();
        assert_eq!(p.m, 14);
        assert!(p.profile.validate().ok);
        assert_eq!(p.n_total, 14 * 3 + 2);
        let z = fph_profile(3, 2, 0).unwrap();
        assert_eq!(z.m, 2 * 2 + 3 + 1);
        assert_eq!(z.n_total, u64::from(z.m) * 2);
        assert_eq!(fph_profile(3, 1, 2).unwrap_err().name(), "ProfileTooRamified");
    }

    #[test]
    fn components() {
        let spec = |n, a, k| RamCycleSpec { n, indices: (1..=n).collect(), a, k };
        assert_eq!(component_labels(&spec(2, 1, 4)).unwrap().len(), 3);
        assert_eq!(component_labels(&spec(5, 0, 4)).unwrap().len(), 1);
        assert_eq!(component_labels(&spec(0, 2, 4)).unwrap().len(), 1);
        assert_eq!(component_labels(&spec(1, 3, 4)).unwrap_err().name(), "InvalidSpec");
        assert_eq!(cycle_codim(&RamCycleSpec { n: 3, indices: vec![1, 2, 3], a: 2, k: 5 }), 5);
    }
}
