//! The affine space `A_G` of `G`-symmetric quasi-values.
//!
//! A `G`-symmetric quasi-value is a matrix constant on the orbits of the
//! `G`-action on pairs `X = {(i,R) : i ∈ R}`, supported on members, with
//! unit column sums. Writing `χ` for the nonempty coalitions, each χ-orbit
//! with representative `R_m` splits `R_m` into `k_m` stabilizer-orbit
//! blocks, one free coefficient per block, tied by one efficiency equation —
//! so `dim A_G = Σ_m (k_m − 1) = |X/G| − |χ/G|`. The same number falls out
//! of the group's cycle index evaluated at 2, which this module computes as
//! an independent cross-check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::game::Coalition;
use crate::perm::{PermGroup, Permutation};
use crate::scalar::{fraction, Rat, Scalar};
use crate::value::ValueMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymspaceError {
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("fixed-point sum {total} is not divisible by the group order {order}")]
    NotAnAction { total: u128, order: usize },
}

/// One orbit of nonempty coalitions, together with the block structure of
/// its representative under the setwise stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiOrbit {
    representative: Coalition,
    coalitions: Vec<Coalition>,
    blocks: Vec<Vec<usize>>,
}

impl ChiOrbit {
    /// Minimal-mask coalition of the orbit.
    pub fn representative(&self) -> Coalition {
        self.representative
    }

    /// Every coalition in the orbit, in increasing mask order.
    pub fn coalitions(&self) -> &[Coalition] {
        &self.coalitions
    }

    /// Orbits of the representative's members under its setwise stabilizer,
    /// each sorted, listed by minimal member.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `k_m`: the number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// `l_{m,1..k}`: the block sizes.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

/// The full orbit decomposition driving the dimension formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStructure {
    n: usize,
    chi_orbits: Vec<ChiOrbit>,
}

impl OrbitStructure {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi_orbits(&self) -> &[ChiOrbit] {
        &self.chi_orbits
    }

    /// `|χ/G|`: the number of coalition orbits.
    pub fn chi_orbit_count(&self) -> usize {
        self.chi_orbits.len()
    }

    /// `|X/G|`: the number of orbits of (member, coalition) pairs.
    pub fn x_orbit_count(&self) -> usize {
        self.chi_orbits.iter().map(ChiOrbit::k).sum()
    }

    /// `dim A_G = |X/G| − |χ/G| = Σ_m (k_m − 1)`.
    pub fn dimension(&self) -> usize {
        self.x_orbit_count() - self.chi_orbit_count()
    }
}

/// Decomposes the nonempty coalitions into `G`-orbits and, for each orbit
/// representative, its members into setwise-stabilizer orbits.
pub fn orbit_structure(group: &PermGroup) -> OrbitStructure {
    let n = group.degree();
    let chi_orbits = group
        .orbits_of(Coalition::nonempty(n), |g, c| g.apply_coalition(*c))
        .into_iter()
        .map(|coalitions| {
            let representative = coalitions[0];
            let stabilizer = group.stabilizer(representative);
            let blocks = stabilizer.orbits_of(representative.members(), |g, &i| g.apply(i));
            ChiOrbit {
                representative,
                coalitions,
                blocks,
            }
        })
        .collect();
    OrbitStructure { n, chi_orbits }
}

/// Dimension of `A_G` by orbit counting: `Σ_m (k_m − 1)`.
pub fn dimension_orbit(group: &PermGroup) -> usize {
    orbit_structure(group).dimension()
}

/// Dimension of `A_G` from the cycle index:
/// `(1/|G|)·[Σ_π fix(π)·2^{cycles(π)−1} − Σ_π 2^{cycles(π)}] + 1`,
/// which is `(∂Z_G/∂x₁ − Z_G)` at `x = (2,…,2)`, plus one.
///
/// The result of the rational evaluation is an orbit count difference, so a
/// non-integer or negative value can only mean an internal inconsistency;
/// that aborts rather than returning garbage.
pub fn dimension_cycle_index(group: &PermGroup) -> usize {
    let mut total = Rat::zero();
    for (t, coeff) in group.cycle_index().terms() {
        let cycles = t.cycle_count();
        let fix = BigInt::from(t.fixed_points());
        // fix(π)·2^{cycles−1} − 2^{cycles}
        let term = fix * (BigInt::one() << (cycles - 1)) - (BigInt::one() << cycles);
        total += coeff.clone() * Rat::from_integer(term);
    }
    total += Rat::one();
    assert!(
        total.is_integer() && !total.is_negative(),
        "cycle-index dimension evaluated to {}, not a nonnegative integer",
        total
    );
    let dim: BigInt = total.to_integer();
    usize::try_from(dim).expect("dimension fits a machine word")
}

/// A free direction of `A_G`: where it adds and subtracts, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionInfo {
    /// χ-orbit representative whose blocks this direction trades between.
    pub representative: Coalition,
    /// Block receiving `+1/l` (0-indexed players).
    pub plus_block: Vec<usize>,
    /// Pivot block receiving `−1/l` (0-indexed players).
    pub minus_block: Vec<usize>,
}

/// Affine chart of `A_G`: the Shapley matrix plus one difference matrix per
/// free coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization<S = Rat> {
    base: ValueMatrix<S>,
    directions: Vec<ValueMatrix<S>>,
    infos: Vec<DirectionInfo>,
}

impl<S: Scalar> Parametrization<S> {
    /// The base point (the Shapley matrix).
    pub fn base(&self) -> &ValueMatrix<S> {
        &self.base
    }

    pub fn directions(&self) -> &[ValueMatrix<S>] {
        &self.directions
    }

    pub fn infos(&self) -> &[DirectionInfo] {
        &self.infos
    }

    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// `base + Σ_j coefficients_j · directions_j`. Any coefficient vector of
    /// the right length yields a `G`-symmetric quasi-value.
    pub fn sample(&self, coefficients: &[S]) -> Result<ValueMatrix<S>, SymspaceError> {
        if coefficients.len() != self.directions.len() {
            return Err(SymspaceError::CoefficientCount {
                expected: self.directions.len(),
                found: coefficients.len(),
            });
        }
        let mut m = self.base.clone();
        for (c, d) in coefficients.iter().zip(&self.directions) {
            if !c.is_zero() {
                m.scaled_add(c, d);
            }
        }
        Ok(m)
    }
}

/// Builds the affine parametrization of `A_G` around the Shapley value.
///
/// For a χ-orbit with blocks `b_1, …, b_k` (ordered by minimal member), the
/// block coefficients satisfy one linear equation, leaving `k − 1` free
/// directions: direction `j` puts `+1/|b_j|` on the `X`-orbit through block
/// `j` and `−1/|b_k|` on the one through the last block, extended over the
/// whole orbit by the group action.
pub fn parametrize<S: Scalar>(group: &PermGroup) -> Parametrization<S> {
    let n = group.degree();
    let structure = orbit_structure(group);
    let base = ValueMatrix::shapley(n);
    let mut directions = Vec::new();
    let mut infos = Vec::new();
    for orbit in structure.chi_orbits() {
        let rep = orbit.representative();
        let blocks = orbit.blocks();
        let k = blocks.len();
        if k == 1 {
            continue;
        }
        // the full X-orbit through each block, traced from one seed pair
        let supports: Vec<Vec<(usize, Coalition)>> = blocks
            .iter()
            .map(|b| {
                let mut orbits = group.orbits_of([(b[0], rep)], |g, &(i, r)| {
                    (g.apply(i), g.apply_coalition(r))
                });
                debug_assert_eq!(orbits.len(), 1);
                let support = orbits.pop().expect("seeded with one pair");
                debug_assert_eq!(support.len(), orbit.coalitions().len() * b.len());
                support
            })
            .collect();
        let pivot = k - 1;
        for j in 0..pivot {
            let mut d = ValueMatrix::zeros(n);
            let plus = fraction::<S>(1, blocks[j].len() as i64);
            for &(i, r) in &supports[j] {
                d.set_entry(i, r, plus.clone());
            }
            let minus = fraction::<S>(-1, blocks[pivot].len() as i64);
            for &(i, r) in &supports[pivot] {
                d.set_entry(i, r, minus.clone());
            }
            directions.push(d);
            infos.push(DirectionInfo {
                representative: rep,
                plus_block: blocks[j].clone(),
                minus_block: blocks[pivot].clone(),
            });
        }
    }
    Parametrization {
        base,
        directions,
        infos,
    }
}

/// Orbit count of any action by Burnside's lemma: `(1/|G|)·Σ_g fix(g)`.
/// A sum that does not divide evenly means `fix` is not the fixed-point
/// counter of a genuine action on a finite set.
pub fn burnside_count(
    group: &PermGroup,
    fix: impl Fn(&Permutation) -> usize,
) -> Result<usize, SymspaceError> {
    let total: u128 = group.elements().iter().map(|g| fix(g) as u128).sum();
    let order = group.order();
    if total % order as u128 != 0 {
        return Err(SymspaceError::NotAnAction { total, order });
    }
    Ok((total / order as u128) as usize)
}
