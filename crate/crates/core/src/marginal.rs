//! Marginal operators and probabilistic mixtures of them.
//!
//! Under an arrival order `π`, each player's marginal contribution defines
//! the quasi-value `m_π` with `(m_π)_{iR} = 1` iff `i` is the member of `R`
//! arriving last. Averaging the `m_π` over a probability distribution on
//! `S_n` again gives a quasi-value; when the distribution is constant on
//! the cosets `{g·π : g ∈ G}` the average is `G`-symmetric, and the uniform
//! distribution recovers the Shapley value exactly.

use thiserror::Error;

use crate::game::Coalition;
use crate::linalg::rank_of_rows;
use crate::perm::{PermGroup, Permutation};
use crate::scalar::{fraction, Rat, Scalar};
use crate::value::ValueMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarginalError {
    #[error("expected {expected} weights for n={n}, found {found}")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("negative weight at permutation {0}")]
    NegativeWeight(Permutation),
    #[error("weights sum to {0}, expected 1")]
    TotalMass(String),
    #[error("representatives {0} and {1} lie in the same coset")]
    DuplicateCoset(Permutation, Permutation),
    #[error("{covered} of {total} permutations covered; representatives miss some cosets")]
    UncoveredCosets { covered: usize, total: usize },
    #[error("selector must choose a member: γ({r}) = {chosen} is outside")]
    ChoiceOutside { r: Coalition, chosen: usize },
    #[error("the family needs |Ω₀| > 3, got {0}")]
    FamilyTooSmall(usize),
    #[error("alpha must lie strictly between 0 and 2")]
    AlphaOutOfRange,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A probability distribution on `S_n`, stored densely over all `n!`
/// permutations in lexicographic order. Weights are nonnegative exact
/// scalars summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalDistribution<S = Rat> {
    n: usize,
    weights: Vec<S>,
}

impl<S: Scalar> MarginalDistribution<S> {
    /// Validates length, nonnegativity, and total mass.
    pub fn from_weights(n: usize, weights: Vec<S>) -> Result<Self, MarginalError> {
        assert!(n >= 1 && n <= 8, "distributions support 1 <= n <= 8");
        if weights.len() != factorial(n) {
            return Err(MarginalError::WrongLength {
                n,
                expected: factorial(n),
                found: weights.len(),
            });
        }
        let mut total = S::zero();
        for (idx, w) in weights.iter().enumerate() {
            if *w < S::zero() {
                return Err(MarginalError::NegativeWeight(
                    Permutation::all(n)[idx].clone(),
                ));
            }
            total += w.clone();
        }
        if !total.is_one() {
            return Err(MarginalError::TotalMass(total.to_string()));
        }
        Ok(MarginalDistribution { n, weights })
    }

    /// The uniform distribution, `1/n!` everywhere.
    pub fn uniform(n: usize) -> Self {
        let count = factorial(n);
        MarginalDistribution {
            n,
            weights: vec![fraction::<S>(1, count as i64); count],
        }
    }

    /// All mass on a single permutation.
    pub fn point_mass(p: &Permutation) -> Self {
        let n = p.degree();
        let mut weights = vec![S::zero(); factorial(n)];
        weights[p.lex_rank()] = S::one();
        MarginalDistribution { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, p: &Permutation) -> &S {
        assert_eq!(p.degree(), self.n);
        &self.weights[p.lex_rank()]
    }

    /// Weights in lexicographic permutation order.
    pub fn weights(&self) -> &[S] {
        &self.weights
    }
}

/// Index of the member of `mask` arriving last under `p`, for every
/// nonempty mask: `winner[R] = argmax_{i∈R} p⁻¹(i)`.
fn last_arrivals(p: &Permutation) -> Vec<usize> {
    let n = p.degree();
    let inv = p.inverse();
    let mut winner = vec![0usize; 1 << n];
    for mask in 1..(1usize << n) {
        let b = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        winner[mask] = if rest == 0 {
            b
        } else if inv.apply(b) > inv.apply(winner[rest]) {
            b
        } else {
            winner[rest]
        };
    }
    winner
}

/// The marginal operator `m_π`: in each column `R`, a single 1 at the
/// member arriving last under `π`.
pub fn marginal_matrix<S: Scalar>(p: &Permutation) -> ValueMatrix<S> {
    let n = p.degree();
    let winner = last_arrivals(p);
    let mut m = ValueMatrix::zeros(n);
    for r in Coalition::nonempty(n) {
        m.set_entry(winner[r.mask() as usize], r, S::one());
    }
    m
}

/// A selector `γ` picking one member of every nonempty coalition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector {
    n: usize,
    choice: Vec<usize>,
}

impl Selector {
    /// `choice[R.mask() − 1]` is `γ(R)`; each choice must be a member.
    pub fn new(n: usize, choice: Vec<usize>) -> Result<Self, MarginalError> {
        assert_eq!(choice.len(), (1 << n) - 1, "one choice per nonempty coalition");
        for (r, &chosen) in Coalition::nonempty(n).zip(&choice) {
            if !r.contains(chosen) {
                return Err(MarginalError::ChoiceOutside { r, chosen });
            }
        }
        Ok(Selector { n, choice })
    }

    pub fn from_fn(n: usize, f: impl Fn(Coalition) -> usize) -> Result<Self, MarginalError> {
        Self::new(n, Coalition::nonempty(n).map(f).collect())
    }

    /// The `γ(R) = max R` selector.
    pub fn max(n: usize) -> Self {
        Self::from_fn(n, |r| r.members().max().expect("nonempty"))
            .expect("maximum is always a member")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn choice(&self, r: Coalition) -> usize {
        assert!(!r.is_empty());
        self.choice[r.mask() as usize - 1]
    }
}

/// The δ-matrix of a selector: `a_{iR} = 1` iff `i = γ(R)`.
pub fn selector_matrix<S: Scalar>(s: &Selector) -> ValueMatrix<S> {
    let mut m = ValueMatrix::zeros(s.n());
    for r in Coalition::nonempty(s.n()) {
        m.set_entry(s.choice(r), r, S::one());
    }
    m
}

/// The mixture `Σ_π weight(π)·m_π`, computed column-by-column: each
/// permutation with positive weight contributes its weight to one entry
/// per column.
pub fn average<S: Scalar>(d: &MarginalDistribution<S>) -> ValueMatrix<S> {
    let n = d.n();
    let mut m: ValueMatrix<S> = ValueMatrix::zeros(n);
    for (p, w) in Permutation::all(n).iter().zip(d.weights()) {
        if w.is_zero() {
            continue;
        }
        let winner = last_arrivals(p);
        for r in Coalition::nonempty(n) {
            let i = winner[r.mask() as usize];
            let updated = m.entry(i, r).clone() + w.clone();
            m.set_entry(i, r, updated);
        }
    }
    m
}

/// Builds the distribution constant on the cosets `{g·π : g ∈ G}` from one
/// weight per coset representative: `weight(g∘π) = rep_weight(π)`.
///
/// The representatives must form a transversal (one per coset) and the
/// total mass `Σ rep_weight·|G|` must be 1.
pub fn coset_constant<S: Scalar>(
    group: &PermGroup,
    rep_weights: &[(Permutation, S)],
) -> Result<MarginalDistribution<S>, MarginalError> {
    let n = group.degree();
    let total = factorial(n);
    let mut weights: Vec<Option<S>> = vec![None; total];
    let mut owner: Vec<Option<&Permutation>> = vec![None; total];
    for (rep, w) in rep_weights {
        assert_eq!(rep.degree(), n, "representative degree must match the group");
        for g in group.elements() {
            let member = g.compose(rep);
            let slot = member.lex_rank();
            if let Some(previous) = owner[slot] {
                return Err(MarginalError::DuplicateCoset(previous.clone(), rep.clone()));
            }
            owner[slot] = Some(rep);
            weights[slot] = Some(w.clone());
        }
    }
    let covered = weights.iter().filter(|w| w.is_some()).count();
    if covered != total {
        return Err(MarginalError::UncoveredCosets { covered, total });
    }
    MarginalDistribution::from_weights(n, weights.into_iter().map(Option::unwrap).collect())
}

/// The Shapley-representing family `A^π(Ω₀)`: uniform weight `1/n!` on
/// permutations moving anything outside `Ω₀`, and `α/n!` (even) or
/// `(2−α)/n!` (odd) on the subgroup `S₀` of permutations fixing `Ω∖Ω₀`
/// pointwise. Requires `|Ω₀| > 3` and `0 < α < 2`.
pub fn shapley_family<S: Scalar>(
    omega0: Coalition,
    alpha: S,
) -> Result<MarginalDistribution<S>, MarginalError> {
    if omega0.size() <= 3 {
        return Err(MarginalError::FamilyTooSmall(omega0.size()));
    }
    if alpha <= S::zero() || alpha >= fraction::<S>(2, 1) {
        return Err(MarginalError::AlphaOutOfRange);
    }
    let n = omega0.n();
    let base = fraction::<S>(1, factorial(n) as i64);
    let weights = Permutation::all(n)
        .iter()
        .map(|p| {
            let in_s0 = (0..n).all(|i| omega0.contains(i) || p.apply(i) == i);
            if !in_s0 {
                base.clone()
            } else if p.is_even() {
                alpha.clone() * base.clone()
            } else {
                (fraction::<S>(2, 1) - alpha.clone()) * base.clone()
            }
        })
        .collect();
    MarginalDistribution::from_weights(n, weights)
}

/// Rank of the family after centering at the uniform distribution: the
/// rows are `weights − 1/n!`. The family together with the uniform
/// distribution is affinely independent iff this equals the family size.
pub fn affine_rank<S: Scalar>(ds: &[MarginalDistribution<S>]) -> usize {
    let Some(first) = ds.first() else {
        return 0;
    };
    let n = first.n();
    let u = fraction::<S>(1, factorial(n) as i64);
    let rows: Vec<Vec<S>> = ds
        .iter()
        .map(|d| {
            assert_eq!(d.n(), n, "distributions must share n");
            d.weights().iter().map(|w| w.clone() - u.clone()).collect()
        })
        .collect();
    rank_of_rows(rows)
}
