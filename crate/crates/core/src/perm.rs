//! Permutations of player indices and fully enumerated permutation groups.
//!
//! Players are 0-indexed internally; all notation read or printed (cycle
//! strings, reports) is 1-indexed. Groups store their complete element list
//! in lexicographic order, which keeps stabilizers, Burnside sums and
//! symmetry scans simple at the supported scale (degree at most 8 for
//! full-group work, so group order at most 8! = 40320).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::game::Coalition;
use crate::scalar::Rat;
use crate::LineError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image of length {found} is not a bijection of 0..{found}: {reason}")]
    NotABijection { found: usize, reason: String },
    #[error("cycle notation error: {0}")]
    Parse(String),
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("elements do not form a group: {0}")]
    NotAGroup(String),
}

/// A bijection of `{0, …, n−1}`; `image[i]` is where player `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(PermError::NotABijection {
                    found: n,
                    reason: format!("value {} out of range", v),
                });
            }
            if seen[v] {
                return Err(PermError::NotABijection {
                    found: n,
                    reason: format!("value {} repeated", v),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// Parses whitespace-tolerant disjoint-cycle notation with 1-indexed
    /// players, e.g. `"(1 2)(3 4)"`. The empty string is the identity.
    /// Points may be separated by spaces or commas.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut cycle: Option<Vec<usize>> = None;

        let close =
            |cycle: Vec<usize>, image: &mut Vec<usize>| {
                for (k, &p) in cycle.iter().enumerate() {
                    image[p] = cycle[(k + 1) % cycle.len()];
                }
            };

        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '(' => {
                    if cycle.is_some() {
                        return Err(PermError::Parse("nested `(`".into()));
                    }
                    cycle = Some(Vec::new());
                }
                ')' => match cycle.take() {
                    Some(points) => close(points, &mut image),
                    None => return Err(PermError::Parse("unmatched `)`".into())),
                },
                c if c.is_whitespace() || c == ',' => {}
                c if c.is_ascii_digit() => {
                    let mut token = String::new();
                    token.push(c);
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            token.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let point: usize = token
                        .parse()
                        .map_err(|_| PermError::Parse(format!("bad point `{}`", token)))?;
                    if point < 1 || point > n {
                        return Err(PermError::Parse(format!(
                            "point `{}` out of range 1..={}",
                            token, n
                        )));
                    }
                    let p = point - 1;
                    if used[p] {
                        return Err(PermError::Parse(format!("repeated point `{}`", token)));
                    }
                    used[p] = true;
                    match cycle.as_mut() {
                        Some(points) => points.push(p),
                        None => {
                            return Err(PermError::Parse(format!(
                                "point `{}` outside parentheses",
                                token
                            )))
                        }
                    }
                }
                other => {
                    return Err(PermError::Parse(format!("unexpected character `{}`", other)))
                }
            }
        }
        if cycle.is_some() {
            return Err(PermError::Parse("unclosed `(`".into()));
        }
        Ok(Permutation { image })
    }

    /// Number of points the permutation acts on.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Image of a coalition as a set: `{g(i) : i ∈ c}`.
    pub fn apply_coalition(&self, c: Coalition) -> Coalition {
        debug_assert_eq!(self.degree(), c.n());
        let mut mask = 0u32;
        for i in c.members() {
            mask |= 1 << self.image[i];
        }
        Coalition::new(c.n(), mask)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degree"
        );
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Nontrivial cycles, each starting at its minimal point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut counts = vec![0usize; n];
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image[x];
            }
            counts[len - 1] += 1;
        }
        CycleType { counts }
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().cycle_count()
    }

    pub fn fixed_points(&self) -> usize {
        self.image.iter().enumerate().filter(|(i, &v)| *i == v).count()
    }

    /// True for even permutations (parity of `degree − #cycles`).
    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()) % 2 == 0
    }

    /// All `n!` permutations of degree `n` in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!(n >= 1 && n <= 8, "full enumeration supports 1 <= n <= 8");
        (0..n)
            .permutations(n)
            .map(|image| Permutation { image })
            .collect()
    }

    /// Position of this permutation in the lexicographic order of all
    /// permutations of the same degree (the factorial number system rank).
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        let mut factorial = 1;
        for k in 1..n {
            factorial *= k;
        }
        let mut remaining = factorial; // (n-1)!
        for i in 0..n {
            let smaller_right = self.image[i + 1..]
                .iter()
                .filter(|&&v| v < self.image[i])
                .count();
            rank += smaller_right * remaining;
            if i + 1 < n {
                remaining /= n - 1 - i;
            }
        }
        rank
    }
}

impl fmt::Display for Permutation {
    /// Disjoint-cycle notation, 1-indexed; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "({})", cycle.iter().map(|p| p + 1).join(" "))?;
        }
        Ok(())
    }
}

/// Cycle-structure fingerprint: `counts[k−1]` is the number of k-cycles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn cycle_count(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn fixed_points(&self) -> usize {
        self.counts[0]
    }

    pub fn degree(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum()
    }
}

/// Cycle index of a group, stored as a finite map from cycle type to its
/// exact coefficient (count of elements with that type over the group
/// order). Coefficients are positive and sum to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleIndex {
    n: usize,
    terms: BTreeMap<CycleType, Rat>,
}

impl CycleIndex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<CycleType, Rat> {
        &self.terms
    }

    pub fn coefficient(&self, t: &CycleType) -> Rat {
        use num_traits::Zero;
        self.terms.get(t).cloned().unwrap_or_else(Rat::zero)
    }
}

/// A permutation group given by its full, lexicographically sorted element
/// list together with a generating set (used for orbit searches).
#[derive(Debug, Clone)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Smallest group containing all generators, with the element list fully
    /// enumerated. `n` fixes the degree (needed for an empty generating set).
    pub fn closure(n: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != n {
                return Err(PermError::DegreeMismatch(n, g.degree()));
            }
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let identity = Permutation::identity(n);
        seen.insert(identity.clone());
        let mut queue = vec![identity];
        while let Some(p) = queue.pop() {
            for g in &generators {
                let q = p.compose(g);
                if seen.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .unique()
            .collect();
        Ok(PermGroup {
            n,
            generators,
            elements,
        })
    }

    /// Builds a group from an explicit element list, verifying the group
    /// axioms (identity present, closed under composition). A small
    /// generating set is recovered greedily. Quadratic in the element count.
    pub fn from_elements(n: usize, elements: Vec<Permutation>) -> Result<Self, PermError> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            return Err(PermError::NotAGroup("empty element list".into()));
        }
        for e in &elements {
            if e.degree() != n {
                return Err(PermError::DegreeMismatch(n, e.degree()));
            }
        }
        if elements.binary_search(&Permutation::identity(n)).is_err() {
            return Err(PermError::NotAGroup("identity missing".into()));
        }
        for a in &elements {
            for b in &elements {
                let c = a.compose(b);
                if elements.binary_search(&c).is_err() {
                    return Err(PermError::NotAGroup(format!(
                        "{} ∘ {} = {} is not in the list",
                        a, b, c
                    )));
                }
            }
        }
        Ok(Self::from_sorted_unchecked(n, elements))
    }

    /// `elements` must be sorted, deduplicated, and an actual subgroup.
    fn from_sorted_unchecked(n: usize, elements: Vec<Permutation>) -> Self {
        let generators = greedy_generators(n, &elements);
        PermGroup {
            n,
            generators,
            elements,
        }
    }

    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        PermGroup {
            n,
            generators: Vec::new(),
            elements: vec![Permutation::identity(n)],
        }
    }

    /// Full symmetric group `S_n`, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        let elements = Permutation::all(n);
        let generators = (0..n.saturating_sub(1))
            .map(|i| transposition(n, i, i + 1))
            .collect();
        PermGroup {
            n,
            generators,
            elements,
        }
    }

    /// Alternating group `A_n` (even permutations), generated by consecutive
    /// 3-cycles.
    pub fn alternating(n: usize) -> Self {
        let elements: Vec<Permutation> = Permutation::all(n)
            .into_iter()
            .filter(|p| p.is_even())
            .collect();
        let generators = if n >= 3 {
            (0..n - 2)
                .map(|i| {
                    let mut image: Vec<usize> = (0..n).collect();
                    image[i] = i + 1;
                    image[i + 1] = i + 2;
                    image[i + 2] = i;
                    Permutation { image }
                })
                .collect()
        } else {
            Vec::new()
        };
        PermGroup {
            n,
            generators,
            elements,
        }
    }

    /// Cyclic group `C_n` generated by the n-cycle `(1 2 … n)`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1 && n <= 20, "cyclic group supports 1 <= n <= 20");
        let step: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let step = Permutation { image: step };
        let mut elements = Vec::with_capacity(n);
        let mut p = Permutation::identity(n);
        for _ in 0..n {
            elements.push(p.clone());
            p = p.compose(&step);
        }
        elements.sort();
        let generators = if n > 1 { vec![step] } else { Vec::new() };
        PermGroup {
            n,
            generators,
            elements,
        }
    }

    /// Direct product of symmetric groups on each block of a partition of
    /// `{0, …, n−1}`, embedded in `S_n`: all permutations preserving every
    /// block setwise.
    pub fn caste(blocks: &[Vec<usize>]) -> Result<Self, PermError> {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        if n == 0 {
            return Err(PermError::InvalidPartition("no blocks".into()));
        }
        if n > 8 {
            return Err(PermError::InvalidPartition(format!(
                "{} players exceeds the supported 8",
                n
            )));
        }
        let mut covered = vec![false; n];
        let mut sorted_blocks: Vec<Vec<usize>> = Vec::new();
        for block in blocks {
            if block.is_empty() {
                return Err(PermError::InvalidPartition("empty block".into()));
            }
            let mut b = block.clone();
            b.sort_unstable();
            b.dedup();
            if b.len() != block.len() {
                return Err(PermError::InvalidPartition("repeated player in a block".into()));
            }
            for &i in &b {
                if i >= n {
                    return Err(PermError::InvalidPartition(format!(
                        "player {} out of range (blocks must cover 0..{})",
                        i, n
                    )));
                }
                if covered[i] {
                    return Err(PermError::InvalidPartition(format!(
                        "player {} in two blocks",
                        i
                    )));
                }
                covered[i] = true;
            }
            sorted_blocks.push(b);
        }
        // total size matches n and no player repeats, so all are covered

        let per_block: Vec<Vec<Vec<usize>>> = sorted_blocks
            .iter()
            .map(|b| b.iter().cloned().permutations(b.len()).collect())
            .collect();
        let mut elements = Vec::new();
        for combo in per_block.iter().multi_cartesian_product() {
            let mut image: Vec<usize> = (0..n).collect();
            for (block, arrangement) in sorted_blocks.iter().zip(combo) {
                for (&from, &to) in block.iter().zip(arrangement.iter()) {
                    image[from] = to;
                }
            }
            elements.push(Permutation { image });
        }
        elements.sort();
        let mut generators = Vec::new();
        for b in &sorted_blocks {
            for w in b.windows(2) {
                generators.push(transposition(n, w[0], w[1]));
            }
        }
        Ok(PermGroup {
            n,
            generators,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.elements.iter().all(|e| other.contains(e))
    }

    /// Orbits of an abstract point set under the group action given by
    /// `act`, computed by breadth-first expansion over the generators only.
    /// Orbits are listed by their minimal point; each orbit is sorted.
    pub fn orbits_of<P, F>(&self, points: impl IntoIterator<Item = P>, act: F) -> Vec<Vec<P>>
    where
        P: Ord + Clone,
        F: Fn(&Permutation, &P) -> P,
    {
        let mut remaining: BTreeSet<P> = points.into_iter().collect();
        let mut orbits = Vec::new();
        while let Some(start) = remaining.iter().next().cloned() {
            let mut orbit: BTreeSet<P> = BTreeSet::new();
            orbit.insert(start.clone());
            let mut queue = vec![start];
            while let Some(p) = queue.pop() {
                for g in &self.generators {
                    let q = act(g, &p);
                    if orbit.insert(q.clone()) {
                        queue.push(q);
                    }
                }
            }
            for p in &orbit {
                remaining.remove(p);
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    /// Setwise stabilizer `{g ∈ G : g·A = A}`, by filtering the element list.
    pub fn stabilizer(&self, set: Coalition) -> PermGroup {
        assert_eq!(self.n, set.n(), "stabilizer of a coalition of wrong degree");
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.apply_coalition(set) == set)
            .cloned()
            .collect();
        Self::from_sorted_unchecked(self.n, elements)
    }

    /// The conjugate group `g G g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let g_inv = g.inverse();
        let mut elements: Vec<Permutation> = self
            .elements
            .iter()
            .map(|h| g.compose(h).compose(&g_inv))
            .collect();
        elements.sort();
        let generators = self
            .generators
            .iter()
            .map(|h| g.compose(h).compose(&g_inv))
            .collect();
        PermGroup {
            n: self.n,
            generators,
            elements,
        }
    }

    pub fn cycle_index(&self) -> CycleIndex {
        use num_traits::{One, Zero};
        let mut counts: BTreeMap<CycleType, usize> = BTreeMap::new();
        for e in &self.elements {
            *counts.entry(e.cycle_type()).or_insert(0) += 1;
        }
        let order = Rat::from_integer(self.order().into());
        let terms: BTreeMap<CycleType, Rat> = counts
            .into_iter()
            .map(|(t, c)| (t, Rat::from_integer(c.into()) / order.clone()))
            .collect();
        debug_assert!(terms.values().fold(Rat::zero(), |a, b| a + b) == Rat::one());
        CycleIndex { n: self.n, terms }
    }

    /// Lexicographically minimal element of the right coset `G·p`.
    pub fn right_coset_canonical(&self, p: &Permutation) -> Permutation {
        self.elements
            .iter()
            .map(|g| g.compose(p))
            .min()
            .expect("group is nonempty")
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.swap(a, b);
    Permutation { image }
}

/// Deterministic small generating set: walk the sorted element list, adding
/// each element not yet generated and re-closing the span.
fn greedy_generators(n: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::new();
    span.insert(Permutation::identity(n));
    for e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut queue: Vec<Permutation> = span.iter().cloned().collect();
        while let Some(p) = queue.pop() {
            for g in &gens {
                let q = p.compose(g);
                if span.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
    }
    gens
}

/// Reads the group file format: first significant line `n=<count>`, then one
/// generator per line in cycle notation. Blank lines and `#` comments are
/// skipped. The group is the closure of the listed generators.
pub fn parse_group_file(text: &str) -> Result<PermGroup, LineError> {
    let mut n: Option<usize> = None;
    let mut generators = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match n {
            None => {
                let rest = line.strip_prefix("n").map(str::trim_start).and_then(|r| {
                    r.strip_prefix('=').map(str::trim)
                });
                let value = rest.ok_or_else(|| LineError {
                    line: line_no,
                    message: format!("expected `n=<count>`, found `{}`", line),
                })?;
                let count: usize = value.parse().map_err(|_| LineError {
                    line: line_no,
                    message: format!("invalid player count `{}`", value),
                })?;
                if count < 1 || count > 10 {
                    return Err(LineError {
                        line: line_no,
                        message: format!("player count {} outside the supported 1..=10", count),
                    });
                }
                n = Some(count);
            }
            Some(count) => {
                let g = Permutation::parse_cycles(line, count).map_err(|e| LineError {
                    line: line_no,
                    message: e.to_string(),
                })?;
                generators.push(g);
            }
        }
    }
    let n = n.ok_or_else(|| LineError {
        line: 1,
        message: "missing `n=<count>` line".into(),
    })?;
    PermGroup::closure(n, generators).map_err(|e| LineError {
        line: 1,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn parse_cycles_examples() {
        assert_eq!(p("(1 2 3)", 3).image(), &[1, 2, 0]);
        assert_eq!(p("", 4), Permutation::identity(4));
        let inv = p("(1 2)(3 4)(5 6)", 6);
        assert_eq!(inv.compose(&inv), Permutation::identity(6));
        let t = inv.cycle_type();
        assert_eq!(t.counts(), &[0, 3, 0, 0, 0, 0]);
        assert_eq!(inv.fixed_points(), 0);
        // comma separators and padding are tolerated
        assert_eq!(p(" ( 1, 2 ) ", 2), p("(1 2)", 2));
    }

    #[test]
    fn parse_cycles_errors_name_the_token() {
        let err = Permutation::parse_cycles("(1 9)", 3).unwrap_err();
        assert!(err.to_string().contains("`9`"), "{}", err);
        let err = Permutation::parse_cycles("(1 2)(2 3)", 3).unwrap_err();
        assert!(err.to_string().contains("repeated point `2`"), "{}", err);
        let err = Permutation::parse_cycles("(1 2", 3).unwrap_err();
        assert!(err.to_string().contains("unclosed"), "{}", err);
        let err = Permutation::parse_cycles("1 2", 3).unwrap_err();
        assert!(err.to_string().contains("outside parentheses"), "{}", err);
        let err = Permutation::parse_cycles("(1 2))", 3).unwrap_err();
        assert!(err.to_string().contains("unmatched"), "{}", err);
        let err = Permutation::parse_cycles("(a b)", 3).unwrap_err();
        assert!(err.to_string().contains("`a`"), "{}", err);
        let err = Permutation::parse_cycles("(1 0)", 3).unwrap_err();
        assert!(err.to_string().contains("`0`"), "{}", err);
    }

    #[test]
    fn compose_laws() {
        let q = p("(2 3)", 3);
        assert_eq!(Permutation::identity(3).compose(&q), q);
        let r = p("(1 2 3)", 3);
        assert_eq!(r.compose(&r.inverse()), Permutation::identity(3));

        // (1 2) ∘ (2 3) evaluated point by point: x ↦ p(q(x))
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        let composed = a.compose(&b);
        let oracle: Vec<usize> = (0..3).map(|x| a.apply(b.apply(x))).collect();
        assert_eq!(composed.image(), &oracle[..]);
        assert_eq!(composed, p("(1 2 3)", 3));
    }

    #[test]
    fn cycle_display_round_trip() {
        for text in ["()", "(1 2)", "(1 2 3)(4 5)", "(1 3 5)(2 4)"] {
            let perm = p(text, 5);
            assert_eq!(perm.to_string(), if text == "()" { "()".into() } else { text.to_string() });
            assert_eq!(p(&perm.to_string().replace("()", ""), 5), perm);
        }
    }

    #[test]
    fn closure_examples() {
        let c3 = PermGroup::closure(3, vec![p("(1 2 3)", 3)]).unwrap();
        assert_eq!(c3.order(), 3);

        // ⟨(1 2), (1 2 3 4 5)⟩ is all of S₅: compare with full enumeration
        let g = PermGroup::closure(5, vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
        assert_eq!(g.order(), 120);
        assert_eq!(g.elements(), &Permutation::all(5)[..]);

        let trivial = PermGroup::closure(4, vec![]).unwrap();
        assert_eq!(trivial.order(), 1);

        // closure is idempotent on an already-closed element list
        let again = PermGroup::closure(3, c3.elements().to_vec()).unwrap();
        assert_eq!(again, c3);
    }

    #[test]
    fn closure_rejects_mixed_degrees() {
        let err = PermGroup::closure(3, vec![p("(1 2)", 4)]).unwrap_err();
        assert_eq!(err, PermError::DegreeMismatch(3, 4));
    }

    #[test]
    fn from_elements_validates() {
        let s3 = PermGroup::symmetric(3);
        let rebuilt = PermGroup::from_elements(3, s3.elements().to_vec()).unwrap();
        assert_eq!(rebuilt, s3);
        // a transposition alone is not closed (missing identity)
        let err = PermGroup::from_elements(3, vec![p("(1 2)", 3)]).unwrap_err();
        assert!(matches!(err, PermError::NotAGroup(_)));
        // identity plus a 3-cycle is not closed under composition
        let err = PermGroup::from_elements(
            3,
            vec![Permutation::identity(3), p("(1 2 3)", 3)],
        )
        .unwrap_err();
        assert!(matches!(err, PermError::NotAGroup(_)));
    }

    fn mask_orbits(g: &PermGroup) -> Vec<Vec<Coalition>> {
        g.orbits_of(Coalition::nonempty(g.degree()), |perm, c| {
            perm.apply_coalition(*c)
        })
    }

    /// Orbit partition computed the slow way: images under every group
    /// element, no generator walk.
    fn mask_orbits_brute(g: &PermGroup) -> Vec<Vec<Coalition>> {
        let mut remaining: BTreeSet<Coalition> = Coalition::nonempty(g.degree()).collect();
        let mut orbits = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let orbit: BTreeSet<Coalition> = g
                .elements()
                .iter()
                .map(|e| e.apply_coalition(start))
                .collect();
            for c in &orbit {
                remaining.remove(c);
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    #[test]
    fn orbit_examples() {
        let s3 = PermGroup::symmetric(3);
        let orbits = mask_orbits(&s3);
        assert_eq!(orbits.len(), 3);
        let sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
        assert_eq!(sizes, vec![3, 3, 1]); // singletons, pairs, grand coalition

        let trivial = PermGroup::trivial(4);
        assert_eq!(mask_orbits(&trivial).len(), 15);

        let c3 = PermGroup::cyclic(3);
        let orbits = mask_orbits(&c3);
        assert_eq!(orbits.len(), 3);
        assert_eq!(orbits[0], Coalition::nonempty(3).filter(|c| c.size() == 1).collect::<Vec<_>>());
        assert_eq!(orbits[1], Coalition::nonempty(3).filter(|c| c.size() == 2).collect::<Vec<_>>());
        assert_eq!(orbits[2], vec![Coalition::full(3)]);
    }

    #[test]
    fn generator_orbits_match_brute_force() {
        let groups = vec![
            PermGroup::symmetric(4),
            PermGroup::alternating(4),
            PermGroup::cyclic(6),
            PermGroup::caste(&[vec![0, 1], vec![2, 3, 4]]).unwrap(),
            PermGroup::closure(5, vec![p("(1 2 3 4 5)", 5), p("(2 3 5 4)", 5)]).unwrap(),
            PermGroup::symmetric(6),
        ];
        for g in groups {
            assert!(g.order() <= 720);
            assert_eq!(mask_orbits(&g), mask_orbits_brute(&g));
        }
    }

    #[test]
    fn stabilizer_examples() {
        let s3 = PermGroup::symmetric(3);
        let stab = s3.stabilizer(Coalition::from_members(3, &[0, 1]));
        assert_eq!(stab.order(), 2);
        assert!(stab.contains(&p("(1 2)", 3)));

        assert_eq!(s3.stabilizer(Coalition::full(3)), s3);

        let c3 = PermGroup::cyclic(3);
        let stab = c3.stabilizer(Coalition::from_members(3, &[0, 1]));
        assert_eq!(stab.order(), 1);
    }

    #[test]
    fn orbit_stabilizer_product() {
        for g in [
            PermGroup::symmetric(4),
            PermGroup::alternating(4),
            PermGroup::cyclic(5),
            PermGroup::caste(&[vec![0], vec![1, 2, 3]]).unwrap(),
        ] {
            for c in Coalition::nonempty(g.degree()) {
                let orbit_len = g
                    .elements()
                    .iter()
                    .map(|e| e.apply_coalition(c))
                    .collect::<BTreeSet<_>>()
                    .len();
                assert_eq!(orbit_len * g.stabilizer(c).order(), g.order());
            }
        }
    }

    #[test]
    fn stabilizer_conjugation_consistency() {
        let g = PermGroup::alternating(4);
        let a = Coalition::from_members(4, &[0, 1]);
        for t in g.elements() {
            let lhs = g.stabilizer(t.apply_coalition(a));
            let rhs = g.stabilizer(a).conjugate(t);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(5).cycle_type().counts(), &[5, 0, 0, 0, 0]);
        assert_eq!(p("(1 2 3 4 5)", 6).cycle_type().counts(), &[1, 0, 0, 0, 1, 0]);
        let t = p("(1 2 3 4 5)", 6).cycle_type();
        assert_eq!(t.degree(), 6);
        assert_eq!(t.cycle_count(), 2);
    }

    #[test]
    fn cycle_index_examples() {
        use num_traits::{One, Zero};

        let trivial = PermGroup::trivial(3);
        let z = trivial.cycle_index();
        assert_eq!(z.terms().len(), 1);
        assert_eq!(z.coefficient(&Permutation::identity(3).cycle_type()), Rat::one());

        let c3 = PermGroup::cyclic(3);
        let z = c3.cycle_index();
        assert_eq!(z.coefficient(&Permutation::identity(3).cycle_type()), rat(1, 3));
        assert_eq!(z.coefficient(&p("(1 2 3)", 3).cycle_type()), rat(2, 3));

        let s3 = PermGroup::symmetric(3);
        let z = s3.cycle_index();
        assert_eq!(z.coefficient(&Permutation::identity(3).cycle_type()), rat(1, 6));
        assert_eq!(z.coefficient(&p("(1 2)", 3).cycle_type()), rat(1, 2));
        assert_eq!(z.coefficient(&p("(1 2 3)", 3).cycle_type()), rat(1, 3));

        for g in [PermGroup::symmetric(4), PermGroup::cyclic(6)] {
            let z = g.cycle_index();
            let total = z.terms().values().fold(Rat::zero(), |a, b| a + b);
            assert_eq!(total, Rat::one());
            for t in z.terms().keys() {
                assert_eq!(t.degree(), g.degree());
            }
        }
    }

    #[test]
    fn named_group_orders() {
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::alternating(4).order(), 12);
        assert_eq!(PermGroup::cyclic(5).order(), 5);
        assert_eq!(
            PermGroup::caste(&[vec![0, 1], vec![2, 3, 4]]).unwrap().order(),
            12
        );
        assert_eq!(PermGroup::symmetric(1).order(), 1);
        assert_eq!(PermGroup::alternating(2).order(), 1);
    }

    #[test]
    fn named_group_generators_generate() {
        let groups = vec![
            PermGroup::trivial(3),
            PermGroup::symmetric(5),
            PermGroup::alternating(5),
            PermGroup::cyclic(6),
            PermGroup::caste(&[vec![0, 1], vec![2, 3, 4]]).unwrap(),
            PermGroup::caste(&[vec![0], vec![1], vec![2]]).unwrap(),
        ];
        for g in groups {
            let closed = PermGroup::closure(g.degree(), g.generators().to_vec()).unwrap();
            assert_eq!(closed.elements(), g.elements());
        }
    }

    #[test]
    fn caste_rejects_invalid_partitions() {
        assert!(PermGroup::caste(&[]).is_err());
        assert!(PermGroup::caste(&[vec![0, 1], vec![1, 2]]).is_err());
        assert!(PermGroup::caste(&[vec![0], vec![2]]).is_err());
        assert!(PermGroup::caste(&[vec![0, 0, 1]]).is_err());
        assert!(PermGroup::caste(&[vec![], vec![0]]).is_err());
    }

    #[test]
    fn lex_rank_matches_enumeration_order() {
        for (i, perm) in Permutation::all(5).iter().enumerate() {
            assert_eq!(perm.lex_rank(), i);
        }
    }

    #[test]
    fn group_order_divides_factorial() {
        let groups = vec![
            PermGroup::closure(4, vec![p("(1 2 3 4)", 4)]).unwrap(),
            PermGroup::closure(4, vec![p("(1 2)", 4), p("(3 4)", 4)]).unwrap(),
            PermGroup::closure(5, vec![p("(1 2 3 4 5)", 5), p("(2 3 5 4)", 5)]).unwrap(),
        ];
        let fact = [1usize, 1, 2, 6, 24, 120, 720];
        for g in groups {
            assert_eq!(fact[g.degree()] % g.order(), 0);
        }
    }

    #[test]
    fn group_file_parsing() {
        let g = parse_group_file("# cyclic\nn=3\n(1 2 3)\n").unwrap();
        assert_eq!(g, PermGroup::cyclic(3));

        let g = parse_group_file("n = 4\n\n# nothing else\n").unwrap();
        assert_eq!(g.order(), 1);

        let err = parse_group_file("(1 2)\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_group_file("n=3\n(1 4)\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("`4`"));
        let err = parse_group_file("n=0\n").unwrap_err();
        assert!(err.message.contains("supported"));
        let err = parse_group_file("").unwrap_err();
        assert!(err.message.contains("missing"));
    }
}
