//! Graded Betti tables with per-entry provenance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exactalg::Provenance;

/// How rows of a rendered table are indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RowConvention {
    /// Row `r`, column `i` holds `β_{i,i+r}`.
    #[default]
    Row,
    /// One line per entry `β_{i,j}` with `j` the total degree.
    TotalDegree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    /// `None` when the rank computation was skipped (resource limit).
    pub value: Option<u64>,
    pub provenance: Provenance,
}

/// `β_{i,j}` for `0 <= i <= max_index` and row `j - i` in `rows`. Entries not
/// stored inside that window are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub nvars: usize,
    pub max_index: usize,
    pub row_min: i64,
    pub row_max: i64,
    /// The module has no Betti numbers outside the window.
    pub complete: bool,
    entries: BTreeMap<(usize, i64), BettiEntry>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    i: usize,
    j: i64,
    value: Option<u64>,
    #[serde(flatten)]
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    nvars: usize,
    max_index: usize,
    row_min: i64,
    row_max: i64,
    complete: bool,
    entries: Vec<EntryJson>,
}

impl BettiTable {
    pub fn new(nvars: usize, max_index: usize, row_min: i64, row_max: i64) -> Self {
        BettiTable {
            nvars,
            max_index,
            row_min,
            row_max,
            complete: false,
            entries: BTreeMap::new(),
        }
    }

    pub fn in_window(&self, i: usize, j: i64) -> bool {
        let r = j - i as i64;
        i <= self.max_index && r >= self.row_min && r <= self.row_max
    }

    pub fn set(&mut self, i: usize, j: i64, value: Option<u64>, provenance: Provenance) {
        assert!(self.in_window(i, j), "entry ({i}, {j}) outside the table window");
        if value == Some(0) {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), BettiEntry { value, provenance });
        }
    }

    /// `Some(β_{i,j})` when known; zero outside a complete window.
    pub fn get(&self, i: usize, j: i64) -> Option<u64> {
        if let Some(e) = self.entries.get(&(i, j)) {
            return e.value;
        }
        if self.in_window(i, j) || self.complete {
            Some(0)
        } else {
            None
        }
    }

    pub fn entry(&self, i: usize, j: i64) -> Option<&BettiEntry> {
        self.entries.get(&(i, j))
    }

    /// Stored entries: nonzero or unknown.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, &BettiEntry)> + '_ {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }

    pub fn has_unknown(&self) -> bool {
        self.entries.values().any(|e| e.value.is_none())
    }

    pub fn provenance(&self) -> Provenance {
        self.entries.values().fold(Provenance::Exact, |p, e| p.join(&e.provenance))
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> Option<u64> {
        let mut s = 0;
        for (&(ii, _), e) in &self.entries {
            if ii == i {
                s += e.value?;
            }
        }
        Some(s)
    }

    /// Entries of row `r` for `i = 0..=max_index`.
    pub fn row(&self, r: i64) -> Vec<Option<u64>> {
        (0..=self.max_index).map(|i| self.get(i, i as i64 + r)).collect()
    }

    /// Largest `i` with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        if self.has_unknown() {
            return None;
        }
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Largest `j - i` with a nonzero entry, when the table is complete and
    /// every entry is known.
    pub fn regularity(&self) -> Option<i64> {
        if !self.complete || self.has_unknown() {
            return None;
        }
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// Row `r` holds no nonzero and no unknown entry.
    pub fn row_vanishes(&self, r: i64) -> bool {
        self.row(r).iter().all(|v| *v == Some(0))
    }

    /// From the table of `S/I` to the table of `I`: `β_{i,j}(I) = β_{i+1,j}(S/I)`.
    pub fn quotient_to_ideal(&self) -> BettiTable {
        let mut out = BettiTable::new(self.nvars, self.max_index.saturating_sub(1), self.row_min + 1, self.row_max + 1);
        out.complete = self.complete;
        for (&(i, j), e) in &self.entries {
            if i >= 1 {
                out.entries.insert((i - 1, j), e.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t = TableJson {
            nvars: self.nvars,
            max_index: self.max_index,
            row_min: self.row_min,
            row_max: self.row_max,
            complete: self.complete,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), e)| EntryJson {
                    i,
                    j,
                    value: e.value,
                    provenance: e.provenance.clone(),
                })
                .collect(),
        };
        serde_json::to_value(t).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> crate::Result<Self> {
        let t: TableJson = serde_json::from_value(v.clone())?;
        let mut out = BettiTable::new(t.nvars, t.max_index, t.row_min, t.row_max);
        out.complete = t.complete;
        for e in t.entries {
            if !out.in_window(e.i, e.j) {
                return Err(crate::Error::Parse(format!("entry ({}, {}) outside the window", e.i, e.j)));
            }
            out.set(e.i, e.j, e.value, e.provenance);
        }
        Ok(out)
    }

    /// Plain-text table; `-` is zero and `?` is unknown.
    pub fn render(&self, convention: RowConvention) -> String {
        let mut s = String::new();
        match convention {
            RowConvention::Row => {
                let _ = writeln!(s, "# row r, column i: beta_(i,i+r); {} variables", self.nvars);
                let last = self
                    .entries
                    .keys()
                    .map(|&(i, _)| i)
                    .max()
                    .unwrap_or(0);
                let cells = |r: i64| -> Vec<String> {
                    (0..=last)
                        .map(|i| match self.get(i, i as i64 + r) {
                            Some(0) => "-".to_string(),
                            Some(v) => v.to_string(),
                            None => "?".to_string(),
                        })
                        .collect()
                };
                let rows: Vec<(i64, Vec<String>)> = (self.row_min..=self.row_max)
                    .map(|r| (r, cells(r)))
                    .filter(|(_, c)| c.iter().any(|x| x != "-"))
                    .collect();
                let width = rows
                    .iter()
                    .flat_map(|(_, c)| c.iter().map(String::len))
                    .chain((0..=last).map(|i| i.to_string().len()))
                    .max()
                    .unwrap_or(1);
                let lab = rows.iter().map(|(r, _)| r.to_string().len()).max().unwrap_or(1);
                let header: Vec<String> = (0..=last).map(|i| format!("{i:>width$}")).collect();
                let _ = writeln!(s, "{:lab$}  {}", "", header.join(" "));
                for (r, c) in rows {
                    let c: Vec<String> = c.iter().map(|x| format!("{x:>width$}")).collect();
                    let _ = writeln!(s, "{r:>lab$}: {}", c.join(" "));
                }
            }
            RowConvention::TotalDegree => {
                let _ = writeln!(s, "# beta_(i,j), j = total degree; {} variables", self.nvars);
                for (&(i, j), e) in &self.entries {
                    let v = e.value.map_or("?".to_string(), |v| v.to_string());
                    let _ = writeln!(s, "beta_({i},{j}) = {v}");
                }
            }
        }
        if !self.complete {
            let _ = writeln!(s, "# window rows {}..={}; entries outside it are not computed", self.row_min, self.row_max);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn koszul3() -> BettiTable {
        let mut t = BettiTable::new(3, 3, 0, 2);
        t.complete = true;
        for (i, v) in [1u64, 3, 3, 1].into_iter().enumerate() {
            t.set(i, i as i64, Some(v), Provenance::Exact);
        }
        t
    }

    #[test]
    fn ideal_shift_and_render() {
        let m = koszul3().quotient_to_ideal();
        assert_eq!(m.row(1), vec![Some(3), Some(3), Some(1)]);
        assert_eq!(m.regularity(), Some(1));
        let text = m.render(RowConvention::Row);
        assert!(text.lines().any(|l| l == "1: 3 3 1"), "{text}");
    }

    #[test]
    fn json_round_trip() {
        let mut t = koszul3();
        t.set(2, 4, None, Provenance::Modular { primes: vec![7, 11] });
        let back = BettiTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.regularity(), None);
        assert_eq!(back.total(2), None);
    }

    #[test]
    fn outside_incomplete_window_is_unknown() {
        let mut t = koszul3();
        t.complete = false;
        assert_eq!(t.get(0, 5), None);
        assert_eq!(t.get(1, 2), Some(0));
    }
}
