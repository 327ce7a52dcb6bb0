//! Linear game values as player × coalition coefficient matrices.
//!
//! A linear value is determined by what it does on the unanimity basis:
//! `φ(u_R)_i = a_{iR}`. The matrix `A = (a_{iR})` represents a quasi-value
//! exactly when `a_{iR} = 0` for `i ∉ R` (null players get nothing) and
//! every column sums to 1 (efficiency). `G`-symmetry means the entries are
//! constant on the `G`-orbits of pairs `(i, R)`.

use std::fmt::Write as _;

use crate::game::{Allocation, Coalition, Game};
use crate::perm::{PermGroup, Permutation};
use crate::scalar::{fraction, parse_rat, Rat, Scalar};
use crate::LineError;

/// A value matrix: one exact coefficient per (player, nonempty coalition)
/// pair, stored densely as `n × (2^n − 1)` in increasing mask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueMatrix<S = Rat> {
    n: usize,
    a: Vec<S>,
}

impl<S: Scalar> ValueMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1 && n <= 8, "value matrices support 1 <= n <= 8");
        ValueMatrix {
            n,
            a: vec![S::zero(); n * ((1 << n) - 1)],
        }
    }

    /// The Shapley value: `a_{iR} = 1/|R|` for `i ∈ R`, 0 otherwise.
    pub fn shapley(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for r in Coalition::nonempty(n) {
            let share = fraction::<S>(1, r.size() as i64);
            for i in r.members() {
                m.set_entry(i, r, share.clone());
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, r: Coalition) -> usize {
        assert!(i < self.n);
        assert_eq!(r.n(), self.n);
        assert!(!r.is_empty(), "value matrices have no empty-coalition column");
        i * ((1 << self.n) - 1) + (r.mask() as usize - 1)
    }

    pub fn entry(&self, i: usize, r: Coalition) -> &S {
        &self.a[self.index(i, r)]
    }

    pub fn set_entry(&mut self, i: usize, r: Coalition, value: S) {
        let idx = self.index(i, r);
        self.a[idx] = value;
    }

    /// Row-major flat view (player-by-player), used for rank computations.
    pub fn entries(&self) -> &[S] {
        &self.a
    }

    pub fn column_sum(&self, r: Coalition) -> S {
        let mut total = S::zero();
        for i in 0..self.n {
            total += self.entry(i, r).clone();
        }
        total
    }

    /// `self += c · other`, entrywise.
    pub fn scaled_add(&mut self, c: &S, other: &ValueMatrix<S>) {
        assert_eq!(self.n, other.n);
        for (x, y) in self.a.iter_mut().zip(&other.a) {
            *x += c.clone() * y.clone();
        }
    }

    /// Evaluates the represented value on a game: expand `v` in the
    /// unanimity basis (Harsanyi dividends), then `payoff_i = Σ_R a_{iR}·Δ_v(R)`.
    pub fn apply(&self, v: &Game<S>) -> Allocation<S> {
        assert_eq!(self.n, v.n(), "matrix and game must share n");
        let dividends = v.harsanyi_dividends();
        let mut payoff = vec![S::zero(); self.n];
        for r in Coalition::nonempty(self.n) {
            let d = &dividends[r.mask() as usize];
            if d.is_zero() {
                continue;
            }
            for (i, p) in payoff.iter_mut().enumerate() {
                *p += self.entry(i, r).clone() * d.clone();
            }
        }
        Allocation::new(payoff)
    }

    /// Checks the two quasi-value conditions; all violations are collected.
    pub fn check_quasivalue(&self) -> QuasivalueReport<S> {
        let mut violations = Vec::new();
        let mut null_player_ok = true;
        let mut efficiency_ok = true;
        for i in 0..self.n {
            for r in Coalition::nonempty(self.n) {
                if !r.contains(i) && !self.entry(i, r).is_zero() {
                    null_player_ok = false;
                    violations.push(QuasivalueViolation::NonmemberEntry { i, r });
                }
            }
        }
        for r in Coalition::nonempty(self.n) {
            let sum = self.column_sum(r);
            if !sum.is_one() {
                efficiency_ok = false;
                violations.push(QuasivalueViolation::ColumnSum { r, sum });
            }
        }
        QuasivalueReport {
            null_player_ok,
            efficiency_ok,
            violations,
        }
    }

    /// Checks `G`-symmetry over the generators only: entries must be
    /// constant on orbits of pairs, `a_{iR} = a_{g(i),g(R)}`. Sufficient
    /// because the symmetries of a matrix form a group. The first violation
    /// in (player, mask, generator) order is reported.
    pub fn check_symmetry(&self, group: &PermGroup) -> SymmetryReport {
        self.check_symmetry_over(group, group.generators())
    }

    /// Cross-validation variant of [`check_symmetry`](Self::check_symmetry)
    /// that scans every group element instead of just the generators.
    pub fn check_symmetry_exhaustive(&self, group: &PermGroup) -> SymmetryReport {
        self.check_symmetry_over(group, group.elements())
    }

    fn check_symmetry_over(&self, group: &PermGroup, perms: &[Permutation]) -> SymmetryReport {
        assert_eq!(self.n, group.degree(), "matrix and group must share n");
        for i in 0..self.n {
            for r in Coalition::nonempty(self.n) {
                for g in perms {
                    if self.entry(i, r) != self.entry(g.apply(i), g.apply_coalition(r)) {
                        return SymmetryReport {
                            witness: Some(SymmetryWitness { g: g.clone(), i, r }),
                        };
                    }
                }
            }
        }
        SymmetryReport { witness: None }
    }

    /// Serializes to the tab-separated matrix format: a header row listing
    /// coalitions as comma-lists, then one row per 1-indexed player.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("player");
        for r in Coalition::nonempty(self.n) {
            write!(out, "\t{}", r).unwrap();
        }
        out.push('\n');
        for i in 0..self.n {
            write!(out, "{}", i + 1).unwrap();
            for r in Coalition::nonempty(self.n) {
                write!(out, "\t{}", self.entry(i, r)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasivalueViolation<S = Rat> {
    /// `a_{iR} ≠ 0` although `i ∉ R`.
    NonmemberEntry { i: usize, r: Coalition },
    /// Column `R` sums to `sum ≠ 1`.
    ColumnSum { r: Coalition, sum: S },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasivalueReport<S = Rat> {
    pub null_player_ok: bool,
    pub efficiency_ok: bool,
    pub violations: Vec<QuasivalueViolation<S>>,
}

impl<S> QuasivalueReport<S> {
    pub fn ok(&self) -> bool {
        self.null_player_ok && self.efficiency_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub g: Permutation,
    pub i: usize,
    pub r: Coalition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub witness: Option<SymmetryWitness>,
}

impl SymmetryReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Parses the tab-separated matrix format produced by
/// [`ValueMatrix::to_tsv`]. Blank lines and `#` comment lines are skipped,
/// so checker summaries appended as comments round-trip cleanly.
pub fn parse_matrix_tsv(text: &str) -> Result<ValueMatrix<Rat>, LineError> {
    let mut n: Option<usize> = None;
    let mut matrix: Option<ValueMatrix<Rat>> = None;
    let mut rows_seen = 0usize;
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').collect();
        match n {
            None => {
                if cells[0] != "player" {
                    return Err(LineError {
                        line: line_no,
                        message: format!("header must start with `player`, found `{}`", cells[0]),
                    });
                }
                let columns = cells.len() - 1;
                let players = (columns + 1).trailing_zeros() as usize;
                if columns == 0 || (1usize << players) - 1 != columns || players > 8 {
                    return Err(LineError {
                        line: line_no,
                        message: format!(
                            "column count {} is not 2^n−1 for a supported n",
                            columns
                        ),
                    });
                }
                for (r, cell) in Coalition::nonempty(players).zip(&cells[1..]) {
                    if cell.trim() != r.to_string() {
                        return Err(LineError {
                            line: line_no,
                            message: format!(
                                "expected coalition `{}` in the header, found `{}`",
                                r, cell
                            ),
                        });
                    }
                }
                n = Some(players);
                matrix = Some(ValueMatrix::zeros(players));
            }
            Some(players) => {
                let m = matrix.as_mut().expect("allocated with n");
                if rows_seen == players {
                    return Err(LineError {
                        line: line_no,
                        message: format!("more than {} player rows", players),
                    });
                }
                let expected_label = (rows_seen + 1).to_string();
                if cells[0].trim() != expected_label {
                    return Err(LineError {
                        line: line_no,
                        message: format!(
                            "expected player row `{}`, found `{}`",
                            expected_label, cells[0]
                        ),
                    });
                }
                if cells.len() - 1 != (1usize << players) - 1 {
                    return Err(LineError {
                        line: line_no,
                        message: format!(
                            "expected {} entries, found {}",
                            (1usize << players) - 1,
                            cells.len() - 1
                        ),
                    });
                }
                for (r, cell) in Coalition::nonempty(players).zip(&cells[1..]) {
                    let value = parse_rat(cell).map_err(|m| LineError {
                        line: line_no,
                        message: m,
                    })?;
                    m.set_entry(rows_seen, r, value);
                }
                rows_seen += 1;
            }
        }
    }
    let Some(players) = n else {
        return Err(LineError {
            line: 1,
            message: "missing header row".into(),
        });
    };
    if rows_seen != players {
        return Err(LineError {
            line: last_line,
            message: format!("expected {} player rows, found {}", players, rows_seen),
        });
    }
    Ok(matrix.expect("allocated with n"))
}
