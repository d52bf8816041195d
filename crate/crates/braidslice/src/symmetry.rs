//! The symmetric-group action on chambers: canonical forms, orbit and
//! stabilizer sizes, realizability classes, and the pattern counts
//! derived from them.
//!
//! A permutation of the objects permutes coordinates, hence maps
//! subset-sum hyperplanes to each other and chambers to chambers. On a
//! canonical sign vector the action permutes subset masks, flipping the
//! sign whenever the image mask falls on the non-canonical side of the
//! complement pair. Orbits are identified by the lexicographic minimum
//! over the group; stabilizers are found by direct search, which at
//! `m <= 8` is at most 40320 permutations.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{
    chambers_in_fundamental_cone, enumerate_chambers, ArrangementError, ArrangementSpec, Chamber,
    SignVector,
};
use crate::charpoly::{chamber_count, charpoly, literature_chamber_count, CharPolyError};
use crate::exact::{Rat, RatVec};
use crate::ranking::Ranking;

/// How a chamber relates to distance-model realizability. The class is
/// decided by the coordinate signs of any interior point (singleton
/// subsets are hyperplanes, so the signs are constant per chamber):
/// both sides realizable when at least two coordinates are positive and
/// at least two negative, realizable with exactly one positive, and
/// unrealizable with exactly one negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealizabilityClass {
    V2RealizableBothSigns,
    V1Realizable,
    V1NotRealizable,
}

/// One orbit of chambers under object relabeling.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub canonical_sign: SignVector,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub representative_witness: RatVec,
    pub realizability: RealizabilityClass,
}

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("orbit sizes sum to {got}, expected the chamber count {expected}")]
    OrbitSumMismatch { expected: u64, got: u64 },
    #[error("chamber count {count} is not divisible by {divisor}")]
    NotDivisible { count: u64, divisor: u64 },
    #[error("m = {0} is out of the supported range {1:?}")]
    UnsupportedM(usize, std::ops::RangeInclusive<usize>),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    CharPoly(#[from] CharPolyError),
}

pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// All permutations of `1..=m` as one-based image tables.
pub fn permutations(m: usize) -> Vec<Vec<u8>> {
    Ranking::all(m).into_iter().map(|r| r.objects().to_vec()).collect()
}

/// The order-reversing relabeling `i -> m + 1 - i`.
pub fn rho_permutation(m: usize) -> Vec<u8> {
    (1..=m).rev().map(|i| i as u8).collect()
}

/// Classifies a chamber of the subset arrangement by the coordinate
/// signs of its witness.
pub fn classify_realizability(chamber: &Chamber) -> RealizabilityClass {
    classify_direction(&chamber.witness)
}

/// Same classification for any generic direction.
pub fn classify_direction(v: &[Rat]) -> RealizabilityClass {
    let positives = v.iter().filter(|x| x.is_positive()).count();
    let negatives = v.iter().filter(|x| x.is_negative()).count();
    debug_assert_eq!(positives + negatives, v.len(), "direction has a zero coordinate");
    if positives == 1 {
        RealizabilityClass::V1Realizable
    } else if negatives == 1 {
        RealizabilityClass::V1NotRealizable
    } else {
        RealizabilityClass::V2RealizableBothSigns
    }
}

/// Precomputed action of every permutation on canonical sign vectors.
pub struct SignAction {
    /// Per permutation, per canonical mask index: source index and
    /// whether the sign flips (image mask fell on the complement side).
    tables: Vec<Vec<(u8, bool)>>,
}

impl SignAction {
    pub fn new(m: usize) -> Self {
        let full = (1u32 << m) - 1;
        let masks = (1usize << (m - 1)) - 1;
        let tables = permutations(m)
            .into_iter()
            .map(|sigma| {
                let mut inverse = vec![0u8; m];
                for (j, &image) in sigma.iter().enumerate() {
                    inverse[(image - 1) as usize] = (j + 1) as u8;
                }
                (0..masks)
                    .map(|k| {
                        let mask = (k + 1) as u32;
                        let mut image = 0u32;
                        for b in 0..m {
                            if mask & (1 << b) != 0 {
                                image |= 1 << (inverse[b] - 1);
                            }
                        }
                        if image & (1 << (m - 1)) != 0 {
                            (((full & !image) - 1) as u8, true)
                        } else {
                            ((image - 1) as u8, false)
                        }
                    })
                    .collect()
            })
            .collect();
        SignAction { tables }
    }

    pub fn group_order(&self) -> usize {
        self.tables.len()
    }

    /// Applies permutation `index` (in the order of [`permutations`]).
    pub fn apply(&self, index: usize, s: &SignVector) -> SignVector {
        let table = &self.tables[index];
        let signs: Vec<bool> =
            table.iter().map(|&(src, flip)| s.is_positive(src as usize) != flip).collect();
        SignVector::from_signs(&signs)
    }

    /// Lexicographic minimum over the whole group; constant on orbits.
    pub fn canonical(&self, s: &SignVector) -> SignVector {
        (0..self.tables.len()).map(|i| self.apply(i, s)).min().expect("group is nonempty")
    }

    pub fn stabilizer_order(&self, s: &SignVector) -> u64 {
        (0..self.tables.len()).filter(|&i| self.apply(i, s) == *s).count() as u64
    }

    /// Sign vector of the negated, order-reversed chamber.
    pub fn neg_rho(&self, s: &SignVector) -> SignVector {
        // rho is the last permutation in lexicographic order.
        self.apply(self.tables.len() - 1, s).negated()
    }
}

/// Applies a single permutation (one-based image table) to a canonical
/// sign vector over the subset hyperplanes of `m` objects.
pub fn permute_sign_vector(s: &SignVector, m: usize, sigma: &[u8]) -> SignVector {
    let full = (1u32 << m) - 1;
    let mut inverse = vec![0u8; m];
    for (j, &image) in sigma.iter().enumerate() {
        inverse[(image - 1) as usize] = (j + 1) as u8;
    }
    let masks = (1usize << (m - 1)) - 1;
    let signs: Vec<bool> = (0..masks)
        .map(|k| {
            let mask = (k + 1) as u32;
            let mut image = 0u32;
            for b in 0..m {
                if mask & (1 << b) != 0 {
                    image |= 1 << (inverse[b] - 1);
                }
            }
            if image & (1 << (m - 1)) != 0 {
                !s.is_positive(((full & !image) - 1) as usize)
            } else {
                s.is_positive((image - 1) as usize)
            }
        })
        .collect();
    SignVector::from_signs(&signs)
}

/// Lexicographically minimal representative of the orbit of `s`.
pub fn canonical_form(s: &SignVector, m: usize) -> SignVector {
    SignAction::new(m).canonical(s)
}

/// Number of distinct ranking patterns of codimension-one models:
/// the chamber count minus the `m` unrealizable chambers.
pub fn q_of_m(m: usize) -> Result<u64, SymmetryError> {
    if !(3..=8).contains(&m) {
        return Err(SymmetryError::UnsupportedM(m, 3..=8));
    }
    let chambers = if m == 8 {
        // Out of desk scope to recompute; published count.
        literature_chamber_count(8).expect("published value exists")
    } else {
        let poly = charpoly(&ArrangementSpec::subset_only(m))?;
        big_to_u64(&chamber_count(&poly))
    };
    Ok(chambers - m as u64)
}

fn big_to_u64(value: &BigInt) -> u64 {
    u64::try_from(value.clone()).expect("count fits in u64")
}

/// Orbit census through the fundamental cone: every orbit is hit there,
/// so the records cover all chambers; the table is sorted by canonical
/// sign vector. Fails with `OrbitSumMismatch` if the orbit sizes do not
/// add up to the independently computed chamber count.
pub fn orbit_table(m: usize, seed: u64) -> Result<Vec<OrbitRecord>, SymmetryError> {
    let cone = chambers_in_fundamental_cone(m, seed)?;
    let action = SignAction::new(m);
    let group = factorial(m);
    let mut records: Vec<OrbitRecord> = Vec::new();
    let mut seen: HashSet<SignVector> = HashSet::new();
    for chamber in &cone {
        let canonical = action.canonical(&chamber.sign);
        if !seen.insert(canonical) {
            continue;
        }
        let stabilizer_order = action.stabilizer_order(&chamber.sign);
        records.push(OrbitRecord {
            canonical_sign: canonical,
            orbit_size: group / stabilizer_order,
            stabilizer_order,
            representative_witness: chamber.witness.clone(),
            realizability: classify_realizability(chamber),
        });
    }
    let total: u64 = records.iter().map(|r| r.orbit_size).sum();
    let expected = big_to_u64(&chamber_count(&charpoly(&ArrangementSpec::subset_only(m))?));
    if total != expected {
        return Err(SymmetryError::OrbitSumMismatch { expected, got: total });
    }
    records.sort_by(|a, b| a.canonical_sign.cmp(&b.canonical_sign));
    Ok(records)
}

/// Number of chamber orbits under object relabeling, computed over the
/// full chamber list.
pub fn orbit_space_size(m: usize, seed: u64) -> Result<usize, SymmetryError> {
    let chambers = enumerate_chambers(&ArrangementSpec::subset_only(m), seed)?;
    let action = SignAction::new(m);
    let canon: HashSet<SignVector> =
        chambers.par_iter().map(|c| action.canonical(&c.sign)).collect();
    Ok(canon.len())
}

/// Number of inequivalent realizable patterns: all orbits except the
/// single unrealizable one.
pub fn inequivalent_pattern_count(m: usize, seed: u64) -> Result<usize, SymmetryError> {
    Ok(orbit_space_size(m, seed)? - 1)
}

/// Upper bound on the inequivalent pattern count from the augmented
/// arrangement: its chamber count divided by `m!`, minus one. The
/// relabeling action on augmented chambers is free, so divisibility is
/// a hard invariant.
pub fn upper_bound_via_quotient(m: usize) -> Result<u64, SymmetryError> {
    let poly = charpoly(&ArrangementSpec::augmented(m))?;
    let count = big_to_u64(&chamber_count(&poly));
    let divisor = factorial(m);
    if count % divisor != 0 {
        return Err(SymmetryError::NotDivisible { count, divisor });
    }
    Ok(count / divisor - 1)
}

/// Counts chambers per realizability class.
pub fn realizability_census(chambers: &[Chamber]) -> (usize, usize, usize) {
    let mut v2 = 0;
    let mut v1_yes = 0;
    let mut v1_no = 0;
    for c in chambers {
        match classify_realizability(c) {
            RealizabilityClass::V2RealizableBothSigns => v2 += 1,
            RealizabilityClass::V1Realizable => v1_yes += 1,
            RealizabilityClass::V1NotRealizable => v1_no += 1,
        }
    }
    (v2, v1_yes, v1_no)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_vec;
    use crate::ranking::ranking_pattern;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn realizability_from_witness_signs() {
        let sign = |v: &[i64]| {
            classify_direction(&rat_vec(v))
        };
        assert_eq!(sign(&[2, -1, -1]), RealizabilityClass::V1Realizable);
        assert_eq!(sign(&[-1, -1, 2]), RealizabilityClass::V1Realizable);
        assert_eq!(sign(&[1, 1, -2]), RealizabilityClass::V1NotRealizable);
        assert_eq!(sign(&[2, 2, -1, -3]), RealizabilityClass::V2RealizableBothSigns);
    }

    #[test]
    fn q_values() {
        assert_eq!(q_of_m(3).unwrap(), 3);
        assert_eq!(q_of_m(4).unwrap(), 28);
        assert_eq!(q_of_m(5).unwrap(), 365);
        assert_eq!(q_of_m(8).unwrap(), 347_326_344);
        assert!(q_of_m(9).is_err());
    }

    #[test]
    fn rho_behaves_as_reversal() {
        let rho = rho_permutation(3);
        let r = Ranking::new(&[1, 2, 3]).unwrap();
        assert_eq!(r.relabel(&rho).to_string(), "(321)");
        // Involution on sign vectors, and so is the negated variant.
        let spec = ArrangementSpec::subset_only(4);
        let chambers = enumerate_chambers(&spec, 5).unwrap();
        let rho4 = rho_permutation(4);
        for c in &chambers {
            let once = permute_sign_vector(&c.sign, 4, &rho4);
            assert_eq!(permute_sign_vector(&once, 4, &rho4), c.sign);
            let neg_once = once.negated();
            assert_eq!(permute_sign_vector(&neg_once.negated(), 4, &rho4), c.sign);
        }
    }

    #[test]
    fn permutation_action_matches_point_action() {
        // Permuting a witness and acting on the sign vector agree.
        let spec = ArrangementSpec::subset_only(4);
        let chambers = enumerate_chambers(&spec, 5).unwrap();
        for sigma in permutations(4) {
            for c in chambers.iter().step_by(7) {
                let mut moved = vec![Rat::from_integer(0.into()); 4];
                for j in 0..4 {
                    moved[(sigma[j] - 1) as usize] = c.witness[j].clone();
                }
                let expected = crate::arrangement::sign_of_point(&spec, &moved).unwrap();
                assert_eq!(permute_sign_vector(&c.sign, 4, &sigma), expected);
            }
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let spec = ArrangementSpec::subset_only(4);
        let chambers = enumerate_chambers(&spec, 5).unwrap();
        let action = SignAction::new(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let perms = permutations(4);
        for c in &chambers {
            let canon = action.canonical(&c.sign);
            assert_eq!(action.canonical(&canon), canon, "idempotent");
            for _ in 0..5 {
                let sigma = perms.choose(&mut rng).unwrap();
                let moved = permute_sign_vector(&c.sign, 4, sigma);
                assert_eq!(action.canonical(&moved), canon);
            }
        }
    }

    #[test]
    fn m3_has_two_orbits() {
        let spec = ArrangementSpec::subset_only(3);
        let chambers = enumerate_chambers(&spec, 5).unwrap();
        let action = SignAction::new(3);
        let canon: HashSet<SignVector> =
            chambers.iter().map(|c| action.canonical(&c.sign)).collect();
        assert_eq!(canon.len(), 2);
        assert_eq!(inequivalent_pattern_count(3, 5).unwrap(), 1);
    }

    #[test]
    fn orbit_table_m4() {
        let records = orbit_table(4, 5).unwrap();
        assert_eq!(records.len(), 4);
        let mut sizes: Vec<u64> = records.iter().map(|r| r.orbit_size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 4, 12, 12]);
        for r in &records {
            assert_eq!(r.orbit_size * r.stabilizer_order, 24);
        }
        let classes: Vec<RealizabilityClass> =
            records.iter().map(|r| r.realizability).collect();
        assert_eq!(
            classes.iter().filter(|c| **c == RealizabilityClass::V2RealizableBothSigns).count(),
            2
        );
        assert_eq!(
            classes.iter().filter(|c| **c == RealizabilityClass::V1Realizable).count(),
            1
        );
        assert_eq!(
            classes.iter().filter(|c| **c == RealizabilityClass::V1NotRealizable).count(),
            1
        );
    }

    #[test]
    fn orbit_table_m5_matches_known_sizes() {
        let records = orbit_table(5, 5).unwrap();
        assert_eq!(records.len(), 12);
        let total: u64 = records.iter().map(|r| r.orbit_size).sum();
        assert_eq!(total, 370);
        // The two one-sided orbits have size 5; the two-sided ones come
        // in mirror pairs with sizes {20, 60, 60, 30, 10}.
        let mut v2_sizes: Vec<u64> = records
            .iter()
            .filter(|r| r.realizability == RealizabilityClass::V2RealizableBothSigns)
            .map(|r| r.orbit_size)
            .collect();
        v2_sizes.sort_unstable();
        assert_eq!(v2_sizes, vec![10, 10, 20, 20, 30, 30, 60, 60, 60, 60]);
    }

    #[test]
    fn inequivalent_counts_small_m() {
        assert_eq!(inequivalent_pattern_count(4, 5).unwrap(), 3);
        assert_eq!(inequivalent_pattern_count(5, 5).unwrap(), 11);
    }

    #[test]
    fn quotient_upper_bounds() {
        assert_eq!(upper_bound_via_quotient(3).unwrap(), 1);
        assert_eq!(upper_bound_via_quotient(4).unwrap(), 3);
        assert_eq!(upper_bound_via_quotient(5).unwrap(), 11);
    }

    #[test]
    fn census_counts_unrealizable_chambers() {
        for m in 3..=5 {
            let chambers = enumerate_chambers(&ArrangementSpec::subset_only(m), 5).unwrap();
            let (_, _, v1_no) = realizability_census(&chambers);
            assert_eq!(v1_no, m, "m = {m}");
        }
    }

    #[test]
    fn free_action_certificate_small_m() {
        // Two-sided chambers through the cone are never equivalent to
        // their negated reversal.
        for m in [4usize, 5] {
            let action = SignAction::new(m);
            for c in chambers_in_fundamental_cone(m, 5).unwrap() {
                if classify_realizability(&c) == RealizabilityClass::V2RealizableBothSigns {
                    let partner = action.neg_rho(&c.sign);
                    assert_ne!(action.canonical(&c.sign), action.canonical(&partner));
                }
            }
        }
    }

    #[test]
    fn patterns_equivariant_and_injective_m4() {
        let chambers = enumerate_chambers(&ArrangementSpec::subset_only(4), 5).unwrap();
        let mut patterns = HashSet::new();
        for c in &chambers {
            patterns.insert(ranking_pattern(&c.witness).unwrap());
        }
        assert_eq!(patterns.len(), chambers.len(), "patterns identify chambers");
        let sigma = [2u8, 4, 1, 3];
        for c in chambers.iter().step_by(5) {
            let mut moved = vec![Rat::from_integer(0.into()); 4];
            for j in 0..4 {
                moved[(sigma[j] - 1) as usize] = c.witness[j].clone();
            }
            let lhs = ranking_pattern(&moved).unwrap();
            let rhs = ranking_pattern(&c.witness).unwrap().relabel(&sigma);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn neg_rho_uses_reversal_permutation() {
        let action = SignAction::new(4);
        let spec = ArrangementSpec::subset_only(4);
        let chambers = enumerate_chambers(&spec, 5).unwrap();
        let rho = rho_permutation(4);
        for c in chambers.iter().step_by(3) {
            let direct = permute_sign_vector(&c.sign, 4, &rho).negated();
            assert_eq!(action.neg_rho(&c.sign), direct);
        }
    }
}
