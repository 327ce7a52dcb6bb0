//! Coalitions as bitmasks and cooperative games as exact value tables.
//!
//! A coalition over `n` players is a mask with bit `i` set when player `i`
//! belongs to it (players 0-indexed internally, 1-indexed in all text I/O).
//! A game stores one rational per mask, `2^n` values in increasing mask
//! order — the single enumeration order used across the whole crate.

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;
use crate::scalar::{parse_rat, Rat, Scalar};
use crate::LineError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("expected {expected} values for n={n}, found {found}")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("the empty coalition must have value 0")]
    NonzeroEmpty,
}

/// A subset of the `n` players, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition {
    n: usize,
    mask: u32,
}

impl Coalition {
    pub fn new(n: usize, mask: u32) -> Self {
        assert!(n >= 1 && n <= 31, "player count must be in 1..=31");
        assert!(
            (mask as u64) < (1u64 << n),
            "mask {:#b} out of range for n={}",
            mask,
            n
        );
        Coalition { n, mask }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn full(n: usize) -> Self {
        Self::new(n, ((1u64 << n) - 1) as u32)
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        assert!(i < n);
        Self::new(n, 1 << i)
    }

    pub fn from_members(n: usize, members: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in members {
            assert!(i < n, "player {} out of range for n={}", i, n);
            mask |= 1 << i;
        }
        Self::new(n, mask)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.mask & (1 << i) != 0
    }

    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    /// Coalition with player `i` added.
    pub fn with(&self, i: usize) -> Self {
        assert!(i < self.n);
        Coalition {
            n: self.n,
            mask: self.mask | (1 << i),
        }
    }

    /// Coalition with player `i` removed.
    pub fn without(&self, i: usize) -> Self {
        assert!(i < self.n);
        Coalition {
            n: self.n,
            mask: self.mask & !(1 << i),
        }
    }

    /// Members in increasing order (0-indexed).
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..self.n).filter(move |i| mask & (1 << i) != 0)
    }

    pub fn min_member(&self) -> Option<usize> {
        if self.mask == 0 {
            None
        } else {
            Some(self.mask.trailing_zeros() as usize)
        }
    }

    /// All `2^n` coalitions in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        (0..(1u64 << n)).map(move |m| Coalition::new(n, m as u32))
    }

    /// All nonempty coalitions in increasing mask order.
    pub fn nonempty(n: usize) -> impl Iterator<Item = Coalition> {
        Coalition::all(n).skip(1)
    }

    /// Parses the textual form: a comma-separated 1-indexed member list, or
    /// `0` for the empty coalition.
    pub fn parse_members(text: &str, n: usize) -> Result<Self, String> {
        let text = text.trim();
        if text == "0" {
            return Ok(Coalition::empty(n));
        }
        let mut mask = 0u32;
        for piece in text.split(',') {
            let piece = piece.trim();
            let player: usize = piece
                .parse()
                .map_err(|_| format!("bad player `{}`", piece))?;
            if player < 1 || player > n {
                return Err(format!("player `{}` out of range 1..={}", player, n));
            }
            let bit = 1u32 << (player - 1);
            if mask & bit != 0 {
                return Err(format!("player `{}` repeated", player));
            }
            mask |= bit;
        }
        Ok(Coalition::new(n, mask))
    }
}

impl fmt::Display for Coalition {
    /// The file form: `0` for the empty coalition, otherwise a comma-joined
    /// 1-indexed member list like `1,3,4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in self.members() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// A cooperative game: one exact value per coalition, `v(∅) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game<S = Rat> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> Game<S> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1 && n <= 8, "full game tables support 1 <= n <= 8");
        Game {
            n,
            values: vec![S::zero(); 1 << n],
        }
    }

    pub fn from_values(n: usize, values: Vec<S>) -> Result<Self, GameError> {
        if values.len() != 1 << n {
            return Err(GameError::WrongLength {
                n,
                expected: 1 << n,
                found: values.len(),
            });
        }
        if !values[0].is_zero() {
            return Err(GameError::NonzeroEmpty);
        }
        Ok(Game { n, values })
    }

    /// The unanimity game `u_R`: 1 on supersets of `R`, 0 elsewhere.
    pub fn unanimity(r: Coalition) -> Self {
        assert!(!r.is_empty(), "unanimity game of the empty coalition");
        let mut v = Self::zeros(r.n());
        for c in Coalition::all(r.n()) {
            if r.is_subset_of(&c) {
                v.values[c.mask() as usize] = S::one();
            }
        }
        v
    }

    /// The additive game with the given singleton payoffs.
    pub fn additive(payoffs: &[S]) -> Self {
        let n = payoffs.len();
        let mut v = Self::zeros(n);
        for c in Coalition::all(n) {
            let mut total = S::zero();
            for i in c.members() {
                total += payoffs[i].clone();
            }
            v.values[c.mask() as usize] = total;
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, c: Coalition) -> &S {
        assert_eq!(c.n(), self.n);
        &self.values[c.mask() as usize]
    }

    pub fn set_value(&mut self, c: Coalition, value: S) {
        assert_eq!(c.n(), self.n);
        assert!(
            !c.is_empty() || value.is_zero(),
            "the empty coalition must keep value 0"
        );
        self.values[c.mask() as usize] = value;
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// Harsanyi dividends `Δ_v(R) = Σ_{T⊆R} (−1)^{|R|−|T|} v(T)` for every
    /// coalition, via the in-place subset Möbius transform in `O(n·2^n)`
    /// ring operations.
    pub fn harsanyi_dividends(&self) -> Vec<S> {
        let mut d = self.values.clone();
        for b in 0..self.n {
            let bit = 1usize << b;
            for mask in 0..d.len() {
                if mask & bit != 0 {
                    let lower = d[mask ^ bit].clone();
                    d[mask] -= lower;
                }
            }
        }
        d
    }

    /// Inverse of [`harsanyi_dividends`](Self::harsanyi_dividends): the game
    /// `Σ_R d[R]·u_R`, via the zeta transform.
    pub fn from_dividends(n: usize, dividends: Vec<S>) -> Result<Self, GameError> {
        let mut v = Game::from_values(n, dividends)?;
        for b in 0..n {
            let bit = 1usize << b;
            for mask in 0..v.values.len() {
                if mask & bit != 0 {
                    let lower = v.values[mask ^ bit].clone();
                    v.values[mask] += lower;
                }
            }
        }
        Ok(v)
    }

    /// The relabeled game `g·v` with `(g·v)(R) = v(g⁻¹R)`.
    pub fn act(&self, g: &Permutation) -> Self {
        assert_eq!(g.degree(), self.n, "permutation degree must match n");
        let g_inv = g.inverse();
        let values = Coalition::all(self.n)
            .map(|c| self.values[g_inv.apply_coalition(c).mask() as usize].clone())
            .collect();
        Game { n: self.n, values }
    }

    /// True iff `v(R) = Σ_{i∈R} v({i})` for every coalition.
    pub fn is_additive(&self) -> bool {
        Coalition::all(self.n).all(|c| {
            let mut total = S::zero();
            for i in c.members() {
                total += self.values[1 << i].clone();
            }
            total == self.values[c.mask() as usize]
        })
    }

    /// True iff adding player `i` never changes any coalition's worth.
    pub fn is_null_player(&self, i: usize) -> bool {
        assert!(i < self.n);
        Coalition::all(self.n)
            .filter(|c| !c.contains(i))
            .all(|c| self.values[c.with(i).mask() as usize] == self.values[c.mask() as usize])
    }
}

/// A payoff vector, one exact rational per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation<S = Rat> {
    payoff: Vec<S>,
}

impl<S: Scalar> Allocation<S> {
    pub fn new(payoff: Vec<S>) -> Self {
        Allocation { payoff }
    }

    pub fn n(&self) -> usize {
        self.payoff.len()
    }

    pub fn payoff(&self) -> &[S] {
        &self.payoff
    }

    pub fn total(&self) -> S {
        let mut t = S::zero();
        for p in &self.payoff {
            t += p.clone();
        }
        t
    }

    /// The relabeled allocation: player `g(i)` receives what `i` received.
    pub fn act(&self, g: &Permutation) -> Self {
        assert_eq!(g.degree(), self.n());
        let mut payoff = vec![S::zero(); self.n()];
        for (i, p) in self.payoff.iter().enumerate() {
            payoff[g.apply(i)] = p.clone();
        }
        Allocation { payoff }
    }
}

/// Reads the game file format: first significant line `n=<count>`, then one
/// `<members> <value>` pair per line, where members is a comma-separated
/// 1-indexed list (`0` for the empty coalition, whose value must be 0) and
/// value is an integer or `p/q`. Unlisted coalitions default to 0; listing
/// a coalition twice is an error.
pub fn parse_game_file(text: &str) -> Result<Game<Rat>, LineError> {
    let mut game: Option<Game<Rat>> = None;
    let mut seen = vec![];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match game.as_mut() {
            None => {
                let rest = line
                    .strip_prefix("n")
                    .map(str::trim_start)
                    .and_then(|r| r.strip_prefix('=').map(str::trim));
                let value = rest.ok_or_else(|| LineError {
                    line: line_no,
                    message: format!("expected `n=<count>`, found `{}`", line),
                })?;
                let count: usize = value.parse().map_err(|_| LineError {
                    line: line_no,
                    message: format!("invalid player count `{}`", value),
                })?;
                if count < 1 || count > 8 {
                    return Err(LineError {
                        line: line_no,
                        message: format!("player count {} outside the supported 1..=8", count),
                    });
                }
                game = Some(Game::zeros(count));
                seen = vec![false; 1 << count];
            }
            Some(v) => {
                let mut parts = line.split_whitespace();
                let members = parts.next().expect("nonempty line");
                let value_text = parts.next().ok_or_else(|| LineError {
                    line: line_no,
                    message: "expected `<members> <value>`".into(),
                })?;
                if let Some(extra) = parts.next() {
                    return Err(LineError {
                        line: line_no,
                        message: format!("unexpected trailing token `{}`", extra),
                    });
                }
                let c = Coalition::parse_members(members, v.n()).map_err(|m| LineError {
                    line: line_no,
                    message: m,
                })?;
                let value = parse_rat(value_text).map_err(|m| LineError {
                    line: line_no,
                    message: m,
                })?;
                if seen[c.mask() as usize] {
                    return Err(LineError {
                        line: line_no,
                        message: format!("coalition `{}` listed twice", c),
                    });
                }
                seen[c.mask() as usize] = true;
                if c.is_empty() && !num_traits::Zero::is_zero(&value) {
                    return Err(LineError {
                        line: line_no,
                        message: "the empty coalition must have value 0".into(),
                    });
                }
                v.set_value(c, value);
            }
        }
    }
    game.ok_or_else(|| LineError {
        line: 1,
        message: "missing `n=<count>` line".into(),
    })
}
