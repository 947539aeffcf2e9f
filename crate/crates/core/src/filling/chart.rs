use std::fmt::Write as _;

use serde::Serialize;

use super::{Flag, GridStatus};
use crate::graph::is_stable_pair;

/// Largest `n` carrying each flag, per genus (`None` when the flag holds
/// nowhere in that column).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnHeights {
    pub bar: Vec<Option<u32>>,
    pub ct: Vec<Option<u32>>,
    pub rt: Vec<Option<u32>>,
    pub open: Vec<Option<u32>>,
}

impl ColumnHeights {
    pub fn get(&self, flag: Flag) -> &[Option<u32>] {
        match flag {
            Flag::Bar => &self.bar,
            Flag::Ct => &self.ct,
            Flag::Rt => &self.rt,
            Flag::Open => &self.open,
        }
    }
}

/// Text and JSON rendering of a grid: one character per cell, genus across
/// and markings up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub max_g: u32,
    pub max_n: u32,
    /// `rows[n]` is a string with one symbol per genus.
    pub rows: Vec<String>,
    pub heights: ColumnHeights,
}

/// `#` bar, `C` compact type, `R` rational tails, `o` open, `x` negative,
/// `.` unknown, blank unstable.
fn symbol(status: &GridStatus, g: u32, n: u32) -> char {
    if !is_stable_pair(g, n) {
        return ' ';
    }
    if status.holds(Flag::Bar, g, n) {
        '#'
    } else if status.holds(Flag::Ct, g, n) {
        'C'
    } else if status.holds(Flag::Rt, g, n) {
        'R'
    } else if status.holds(Flag::Open, g, n) {
        'o'
    } else if status.is_negative(g, n) {
        'x'
    } else {
        '.'
    }
}

impl Chart {
    pub fn from_status(status: &GridStatus) -> Chart {
        let b = status.bounds;
        let rows = (0..=b.max_n).map(|n| (0..=b.max_g).map(|g| symbol(status, g, n)).collect()).collect();
        let column = |flag| (0..=b.max_g).map(|g| status.height(flag, g)).collect();
        Chart {
            max_g: b.max_g,
            max_n: b.max_n,
            rows,
            heights: ColumnHeights {
                bar: column(Flag::Bar),
                ct: column(Flag::Ct),
                rt: column(Flag::Rt),
                open: column(Flag::Open),
            },
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in (0..=self.max_n).rev() {
            let cells: Vec<String> = self.rows[n as usize].chars().map(String::from).collect();
            let _ = writeln!(out, "{n:>3} | {}", cells.join(" "));
        }
        let _ = writeln!(out, "    +{}", "-".repeat(2 * (self.max_g as usize + 1)));
        let genera: Vec<String> = (0..=self.max_g).map(|g| g.to_string()).collect();
        let _ = writeln!(out, "g     {}", genera.join(" "));
        for flag in [Flag::Bar, Flag::Ct, Flag::Rt, Flag::Open] {
            let cells: Vec<String> = self
                .heights
                .get(flag)
                .iter()
                .map(|h| h.map_or_else(|| "-".to_string(), |n| n.to_string()))
                .collect();
            let _ = writeln!(out, "{:<5} {}", flag.as_str(), cells.join(","));
        }
        out
    }
}
