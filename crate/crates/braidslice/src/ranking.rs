//! Rankings, ranking patterns, and the prefix-sum rule classifying how
//! a generic braid slice meets each order cone.
//!
//! A direction `v` on the zero-sum hyperplane (with no vanishing proper
//! subset sum) determines the affine slice `{x : sum x = 0, v.x = 1}`.
//! For a ranking `(i1 ... im)` the slice meets the cone
//! `x_{i1} > ... > x_{im}` according to the signs of the proper prefix
//! sums `v_{i1}, v_{i1}+v_{i2}, ...`: all negative means the
//! intersection is empty, all positive means nonempty and bounded, and
//! mixed signs mean unbounded. A pattern is stored by its excluded set,
//! which for generic `v` always has `(m-1)!` elements.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{Rat, RatVec};

/// Upper bound on the number of ranked objects. Keeps rankings in a
/// fixed inline buffer; everything here is desk-scale.
pub const MAX_OBJECTS: usize = 8;

/// A total ranking `(i1 ... im)` of the objects `1..=m`, best first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking {
    len: u8,
    perm: [u8; MAX_OBJECTS],
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankingError {
    #[error("`{0:?}` is not a permutation of 1..={1}")]
    NotAPermutation(Vec<u8>, usize),
    #[error("m must be between 2 and {MAX_OBJECTS}, got {0}")]
    UnsupportedSize(usize),
    #[error("direction has {got} coordinates, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("direction is degenerate: {0}")]
    Degenerate(DegenerateDirection),
}

/// Why a direction fails the genericity needed by the prefix-sum rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegenerateDirection {
    /// Coordinates do not sum to zero.
    NotZeroSum,
    /// The subset sum over these (1-based) indices vanishes.
    VanishingSubsetSum(Vec<usize>),
}

impl fmt::Display for DegenerateDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerateDirection::NotZeroSum => write!(f, "coordinates do not sum to zero"),
            DegenerateDirection::VanishingSubsetSum(idx) => {
                write!(f, "subset sum over {{")?;
                for (k, i) in idx.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}")?;
                }
                write!(f, "}} vanishes")
            }
        }
    }
}

impl Ranking {
    /// Builds a ranking from 1-based object labels.
    pub fn new(perm: &[u8]) -> Result<Self, RankingError> {
        let m = perm.len();
        if !(2..=MAX_OBJECTS).contains(&m) {
            return Err(RankingError::UnsupportedSize(m));
        }
        let mut seen = [false; MAX_OBJECTS + 1];
        for &i in perm {
            if i == 0 || i as usize > m || seen[i as usize] {
                return Err(RankingError::NotAPermutation(perm.to_vec(), m));
            }
            seen[i as usize] = true;
        }
        let mut buf = [0u8; MAX_OBJECTS];
        buf[..m].copy_from_slice(perm);
        Ok(Ranking { len: m as u8, perm: buf })
    }

    pub fn identity(m: usize) -> Self {
        let mut buf = [0u8; MAX_OBJECTS];
        for (k, slot) in buf[..m].iter_mut().enumerate() {
            *slot = (k + 1) as u8;
        }
        Ranking { len: m as u8, perm: buf }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 1-based object labels, best first.
    pub fn objects(&self) -> &[u8] {
        &self.perm[..self.len as usize]
    }

    /// All `m!` rankings of `1..=m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Ranking> {
        assert!((2..=MAX_OBJECTS).contains(&m), "unsupported object count");
        let mut out = Vec::new();
        let mut current = Ranking::identity(m);
        loop {
            out.push(current);
            if !current.next_lex() {
                return out;
            }
        }
    }

    fn next_lex(&mut self) -> bool {
        let m = self.len as usize;
        let p = &mut self.perm[..m];
        let Some(i) = (0..m - 1).rev().find(|&i| p[i] < p[i + 1]) else {
            return false;
        };
        let j = (i + 1..m).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
        true
    }

    /// Relabels objects: entry `i` becomes `sigma(i)`, where `sigma` is
    /// given one-based as `sigma[i-1]`.
    pub fn relabel(&self, sigma: &[u8]) -> Ranking {
        let mut buf = [0u8; MAX_OBJECTS];
        for (k, &i) in self.objects().iter().enumerate() {
            buf[k] = sigma[(i - 1) as usize];
        }
        Ranking { len: self.len, perm: buf }
    }

    /// Reverses preference order: the best object becomes the worst.
    pub fn reversed(&self) -> Ranking {
        let mut buf = [0u8; MAX_OBJECTS];
        let m = self.len as usize;
        for k in 0..m {
            buf[k] = self.perm[m - 1 - k];
        }
        Ranking { len: self.len, perm: buf }
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for &i in self.objects() {
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How a generic slice meets one order cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceClass {
    Empty,
    Bounded,
    Unbounded,
}

/// A set of rankings realizable by a slice, stored via its complement.
/// The excluded set of a generic direction has exactly `(m-1)!`
/// elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankingPattern {
    m: usize,
    excluded: BTreeSet<Ranking>,
}

impl RankingPattern {
    pub fn from_excluded(m: usize, excluded: BTreeSet<Ranking>) -> Self {
        RankingPattern { m, excluded }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The rankings the slice cannot produce, in lexicographic order.
    pub fn excluded(&self) -> &BTreeSet<Ranking> {
        &self.excluded
    }

    pub fn contains(&self, r: &Ranking) -> bool {
        !self.excluded.contains(r)
    }

    /// Number of realizable rankings, `m! - |excluded|`.
    pub fn admissible_count(&self) -> usize {
        (1..=self.m).product::<usize>() - self.excluded.len()
    }

    /// Relabels every ranking by `sigma` (one-based table).
    pub fn relabel(&self, sigma: &[u8]) -> RankingPattern {
        RankingPattern {
            m: self.m,
            excluded: self.excluded.iter().map(|r| r.relabel(sigma)).collect(),
        }
    }
}

fn check_direction(v: &[Rat]) -> Result<usize, RankingError> {
    let m = v.len();
    if !(2..=MAX_OBJECTS).contains(&m) {
        return Err(RankingError::UnsupportedSize(m));
    }
    if !v.iter().sum::<Rat>().is_zero() {
        return Err(RankingError::Degenerate(DegenerateDirection::NotZeroSum));
    }
    Ok(m)
}

/// Identifies the first vanishing proper subset sum of `v`, if any.
/// `v` is generic exactly when none vanishes.
pub fn find_degeneracy(v: &[Rat]) -> Result<(), RankingError> {
    let m = check_direction(v)?;
    for mask in 1u32..((1 << m) - 1) {
        let mut sum = Rat::zero();
        for i in 0..m {
            if mask & (1 << i) != 0 {
                sum += &v[i];
            }
        }
        if sum.is_zero() {
            let idx = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            return Err(RankingError::Degenerate(DegenerateDirection::VanishingSubsetSum(idx)));
        }
    }
    Ok(())
}

/// Classifies the slice of direction `v` against the cone of ranking
/// `r` by the signs of the proper prefix sums.
pub fn classify_cell(v: &[Rat], r: &Ranking) -> Result<SliceClass, RankingError> {
    let m = check_direction(v)?;
    if r.len() != m {
        return Err(RankingError::WrongDimension { expected: m, got: r.len() });
    }
    let mut sum = Rat::zero();
    let mut positives = 0usize;
    let mut negatives = 0usize;
    for &i in &r.objects()[..m - 1] {
        sum += &v[(i - 1) as usize];
        if sum.is_positive() {
            positives += 1;
        } else if sum.is_negative() {
            negatives += 1;
        } else {
            let idx = r.objects()[..positives + negatives + 1]
                .iter()
                .map(|&j| j as usize)
                .collect();
            return Err(RankingError::Degenerate(DegenerateDirection::VanishingSubsetSum(idx)));
        }
    }
    Ok(if negatives == m - 1 {
        SliceClass::Empty
    } else if positives == m - 1 {
        SliceClass::Bounded
    } else {
        SliceClass::Unbounded
    })
}

/// The ranking pattern of the slice with direction `v`: every ranking
/// whose cone the slice meets, stored by the excluded complement.
pub fn ranking_pattern(v: &[Rat]) -> Result<RankingPattern, RankingError> {
    let m = check_direction(v)?;
    let mut excluded = BTreeSet::new();
    for r in Ranking::all(m) {
        if classify_cell(v, &r)? == SliceClass::Empty {
            excluded.insert(r);
        }
    }
    Ok(RankingPattern { m, excluded })
}

/// Rankings whose cone meets the slice in a nonempty bounded set.
pub fn bounded_cells(v: &[Rat]) -> Result<BTreeSet<Ranking>, RankingError> {
    let m = check_direction(v)?;
    let mut out = BTreeSet::new();
    for r in Ranking::all(m) {
        if classify_cell(v, &r)? == SliceClass::Bounded {
            out.insert(r);
        }
    }
    Ok(out)
}

/// Sorts objects by increasing squared distance from `y`, if the order
/// is strict. Used to sample rankings from distance models.
pub fn ranking_by_distance(points: &[RatVec], y: &[Rat]) -> Option<Ranking> {
    let mut keyed: Vec<(Rat, u8)> = points
        .iter()
        .enumerate()
        .map(|(j, mu)| {
            let d2 = mu
                .iter()
                .zip(y)
                .map(|(a, b)| {
                    let d = a - b;
                    &d * &d
                })
                .sum::<Rat>();
            (d2, (j + 1) as u8)
        })
        .collect();
    keyed.sort();
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 {
            return None;
        }
    }
    let perm: Vec<u8> = keyed.into_iter().map(|(_, j)| j).collect();
    Some(Ranking::new(&perm).expect("sorted labels form a permutation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_vec;

    fn rk(perm: &[u8]) -> Ranking {
        Ranking::new(perm).unwrap()
    }

    #[test]
    fn ranking_construction_and_order() {
        assert!(Ranking::new(&[1, 2, 2]).is_err());
        assert!(Ranking::new(&[0, 1, 2]).is_err());
        assert!(Ranking::new(&[1]).is_err());
        let all = Ranking::all(3);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], rk(&[1, 2, 3]));
        assert_eq!(all[5], rk(&[3, 2, 1]));
        assert_eq!(format!("{}", rk(&[2, 3, 1])), "(231)");
    }

    #[test]
    fn classify_single_positive_direction() {
        // v proportional to (2,-1,-1): prefix sums of (123) are 2, 1.
        let v = rat_vec(&[2, -1, -1]);
        assert_eq!(classify_cell(&v, &rk(&[1, 2, 3])).unwrap(), SliceClass::Bounded);
        assert_eq!(classify_cell(&v, &rk(&[2, 3, 1])).unwrap(), SliceClass::Empty);
        assert_eq!(classify_cell(&v, &rk(&[2, 1, 3])).unwrap(), SliceClass::Unbounded);
    }

    #[test]
    fn classify_all_negative_prefix() {
        // v proportional to (1,1,-2): any ranking starting 3 then 1.
        let v = rat_vec(&[1, 1, -2]);
        assert_eq!(classify_cell(&v, &rk(&[3, 1, 2])).unwrap(), SliceClass::Empty);
    }

    #[test]
    fn degenerate_directions_error() {
        let v = rat_vec(&[1, -1, 1]);
        assert!(matches!(
            classify_cell(&v, &rk(&[1, 2, 3])),
            Err(RankingError::Degenerate(DegenerateDirection::NotZeroSum))
        ));
        let v = rat_vec(&[1, -1, 0]);
        assert!(matches!(
            classify_cell(&v, &rk(&[1, 2, 3])),
            Err(RankingError::Degenerate(DegenerateDirection::VanishingSubsetSum(_)))
        ));
        assert!(find_degeneracy(&rat_vec(&[1, -1, 0])).is_err());
        assert!(find_degeneracy(&rat_vec(&[2, -1, -1])).is_ok());
    }

    #[test]
    fn pattern_of_single_positive_direction() {
        // One positive coordinate: exactly the rankings placing that
        // object last are excluded.
        let v = rat_vec(&[2, -1, -1]);
        let pattern = ranking_pattern(&v).unwrap();
        let expected: BTreeSet<Ranking> = [rk(&[2, 3, 1]), rk(&[3, 2, 1])].into();
        assert_eq!(pattern.excluded(), &expected);
        assert_eq!(pattern.admissible_count(), 4);
    }

    #[test]
    fn pattern_two_two_split_m4() {
        let v = rat_vec(&[2, 2, -1, -3]);
        let pattern = ranking_pattern(&v).unwrap();
        let expected: BTreeSet<Ranking> = [
            rk(&[3, 4, 1, 2]),
            rk(&[3, 4, 2, 1]),
            rk(&[4, 3, 1, 2]),
            rk(&[4, 3, 2, 1]),
            rk(&[4, 1, 3, 2]),
            rk(&[4, 2, 3, 1]),
        ]
        .into();
        assert_eq!(pattern.excluded(), &expected);
    }

    #[test]
    fn pattern_one_positive_m4() {
        let v = rat_vec(&[3, 1, 1, -5]);
        // Direction with exactly one negative coordinate behaves dually:
        // here (3,1,1,-5) has positives {1,2,3}, so excluded rankings
        // are exactly those starting with 4... no: excluded rankings
        // have every proper prefix sum negative, which forces starting
        // at 4 and never recovering. Enumerate and check the count.
        let pattern = ranking_pattern(&v).unwrap();
        assert_eq!(pattern.excluded().len(), 6);
        for r in pattern.excluded() {
            assert_eq!(r.objects()[0], 4);
        }
    }

    #[test]
    fn excluded_size_is_factorial_m_minus_one() {
        let v = rat_vec(&[2, 2, 2, -1, -5]);
        assert_eq!(ranking_pattern(&v).unwrap().excluded().len(), 24);
    }

    #[test]
    fn bounded_cells_small() {
        let v = rat_vec(&[2, -1, -1]);
        let expected: BTreeSet<Ranking> = [rk(&[1, 2, 3]), rk(&[1, 3, 2])].into();
        assert_eq!(bounded_cells(&v).unwrap(), expected);
    }

    #[test]
    fn bounded_cells_match_brute_force_m4() {
        // Independent oracle: evaluate the prefix sums directly per
        // ranking, without going through classify_cell.
        let coords = [2i64, 2, -1, -3];
        let v = rat_vec(&coords);
        let mut expected = BTreeSet::new();
        for r in Ranking::all(4) {
            let mut sum = 0i64;
            let mut all_pos = true;
            for &i in &r.objects()[..3] {
                sum += coords[(i - 1) as usize];
                all_pos &= sum > 0;
            }
            if all_pos {
                expected.insert(r);
            }
        }
        assert_eq!(bounded_cells(&v).unwrap(), expected);
    }

    #[test]
    fn negation_reversal_duality() {
        // Negating the direction flips every prefix-sum sign, and
        // reversing a ranking turns prefixes into negated suffixes (the
        // coordinates sum to zero), so each operation alone swaps
        // Empty and Bounded while both together give the class back.
        let v = rat_vec(&[3, -1, -2]);
        let neg: Vec<_> = v.iter().map(|x| -x).collect();
        for r in Ranking::all(3) {
            let empty = classify_cell(&v, &r).unwrap() == SliceClass::Empty;
            assert_eq!(empty, classify_cell(&neg, &r).unwrap() == SliceClass::Bounded);
            assert_eq!(empty, classify_cell(&v, &r.reversed()).unwrap() == SliceClass::Bounded);
            assert_eq!(empty, classify_cell(&neg, &r.reversed()).unwrap() == SliceClass::Empty);
        }
        let bounded = bounded_cells(&v).unwrap();
        assert_eq!(&bounded, ranking_pattern(&neg).unwrap().excluded());
        let reversed_excluded: BTreeSet<Ranking> =
            ranking_pattern(&v).unwrap().excluded().iter().map(Ranking::reversed).collect();
        assert_eq!(bounded, reversed_excluded);
    }

    #[test]
    fn relabel_acts_on_patterns() {
        let v = rat_vec(&[2, -1, -1]);
        // sigma = (1 2) swap.
        let sigma = [2u8, 1, 3];
        let permuted: Vec<Rat> = vec![v[1].clone(), v[0].clone(), v[2].clone()];
        let lhs = ranking_pattern(&permuted).unwrap();
        let rhs = ranking_pattern(&v).unwrap().relabel(&sigma);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn distance_ranking_orders_objects() {
        use crate::exact::{rat, ratio};
        let points = vec![vec![rat(-3)], vec![rat(1)], vec![rat(2)]];
        let r = ranking_by_distance(&points, &[ratio(7, 5)]).unwrap();
        assert_eq!(r, rk(&[2, 3, 1]));
        // Midpoints tie: between objects 2 and 3, and between 1 and 2.
        assert_eq!(ranking_by_distance(&points, &[ratio(3, 2)]), None);
        assert_eq!(ranking_by_distance(&points, &[rat(-1)]), None);
    }
}
