//! Characteristic polynomials by the finite-field method, and chamber
//! counts via Zaslavsky's theorem.
//!
//! For a good prime `q`, the number of points of the arrangement's
//! complement over the field with `q` elements equals the
//! characteristic polynomial evaluated at `q`. Counts at `m` primes
//! determine the monic degree-`m-1` polynomial by interpolation; extra
//! primes then validate it exactly. Primes are not certified good in
//! advance: a bad prime shows up as an inconsistent validation (or a
//! non-integral, non-monic, or `chi(1) != 0` interpolant), and the
//! prime window is shifted upward until the checks pass.
//!
//! Counting iterates over the free coordinates `x_1..x_{m-1}` (the last
//! coordinate is eliminated by the zero-sum constraint). All subset
//! sums over the first `m-2` coordinates are maintained incrementally
//! and zero sums prune whole subtrees; for the innermost coordinate
//! every remaining constraint forbids a single residue, so the inner
//! loop is a distinct-count over forbidden values rather than a scan of
//! the field.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::ArrangementSpec;
use crate::exact::Rat;

/// Monic integer polynomial, coefficients stored low-to-high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharPolyError {
    #[error(
        "interpolation stayed inconsistent after {0} prime windows; bad primes or a counting bug"
    )]
    InterpolationInconsistent(usize),
}

/// Complement point count over the field with `q` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldCount {
    pub q: u64,
    pub count: u64,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.last().map_or(false, BigInt::is_one), "polynomial must be monic");
        CharPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients low-to-high; the last is 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Signs alternate from the monic leading coefficient down.
    pub fn has_alternating_signs(&self) -> bool {
        self.coeffs
            .iter()
            .rev()
            .enumerate()
            .all(|(k, c)| if k % 2 == 0 { c.is_positive() } else { c.is_negative() })
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                write!(f, "t")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Number of chambers by Zaslavsky's theorem: `(-1)^deg * chi(-1)`.
pub fn chamber_count(p: &CharPoly) -> BigInt {
    let value = p.eval(&BigInt::from(-1));
    if p.degree() % 2 == 0 {
        value
    } else {
        -value
    }
}

/// Chamber counts published for the subset arrangement, `m = 2..=8`.
/// Used where a value is reported without being recomputed.
pub fn literature_chamber_count(m: usize) -> Option<u64> {
    match m {
        2 => Some(2),
        3 => Some(6),
        4 => Some(32),
        5 => Some(370),
        6 => Some(11292),
        7 => Some(1_066_044),
        8 => Some(347_326_352),
        _ => None,
    }
}

#[inline]
fn add_mod(a: u32, b: u32, q: u32) -> u32 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

/// Exact number of points over the field with `q` elements lying on the
/// zero-sum hyperplane and avoiding every hyperplane of `spec`.
///
/// `q` must be a prime larger than `m`.
pub fn count_points(spec: &ArrangementSpec, q: u64) -> FieldCount {
    assert!(!spec.cone_restrict, "counting applies to full arrangements");
    assert!(q > spec.m as u64, "prime must exceed m");
    assert!(is_prime(q), "field size must be prime");
    let m = spec.m;
    let qq = q as u32;
    // Free coordinates x_1..x_{m-1}; the innermost is x_{m-1}, the
    // outer ones are x_1..x_{m-2}.
    let outer = m - 2;
    if outer == 0 {
        // Only the subset {1}; the augmented pair constraints also just
        // forbid x_1 = 0 for odd q.
        return FieldCount { q, count: q - 1 };
    }
    let count = (0..qq)
        .into_par_iter()
        .map(|first| {
            let mut state = CountState::new(spec, qq);
            state.assign(0, first);
            state.run(1)
        })
        .sum();
    FieldCount { q, count }
}

/// Mutable recursion state for one counting branch.
struct CountState {
    m: usize,
    q: u32,
    augmented: bool,
    inv2: u32,
    /// Subset sums over outer coordinates, indexed by mask.
    sums: Vec<u32>,
    /// Assigned outer coordinate values.
    values: Vec<u32>,
    /// Scratch for distinct-forbidden-value counting, stamped per leaf.
    stamps: Vec<u64>,
    stamp: u64,
    /// Whether the prefix up to each level is still admissible.
    alive: Vec<bool>,
}

impl CountState {
    fn new(spec: &ArrangementSpec, q: u32) -> Self {
        let outer = spec.m - 2;
        CountState {
            m: spec.m,
            q,
            augmented: spec.augment_braid,
            inv2: mod_inverse(2, q),
            sums: vec![0; 1 << outer],
            values: vec![0; outer],
            stamps: vec![0; q as usize],
            stamp: 0,
            alive: vec![true; outer + 1],
        }
    }

    /// Installs outer coordinate `level` (0-based) with value `v`,
    /// updating subset sums and the liveness flag.
    fn assign(&mut self, level: usize, v: u32) {
        let bit = 1usize << level;
        let mut ok = true;
        for mask in 0..bit {
            let s = add_mod(self.sums[mask], v, self.q);
            self.sums[mask | bit] = s;
            ok &= s != 0;
        }
        if ok && self.augmented {
            for prev in 0..level {
                ok &= self.values[prev] != v;
            }
        }
        self.values[level] = v;
        self.alive[level + 1] = ok;
    }

    fn run(&mut self, level: usize) -> u64 {
        if !self.alive[level] {
            return 0;
        }
        if level == self.m - 2 {
            return self.count_inner();
        }
        let mut total = 0;
        for v in 0..self.q {
            self.assign(level, v);
            total += self.run(level + 1);
        }
        total
    }

    /// Counts admissible values of the innermost free coordinate. Every
    /// remaining constraint forbids exactly one residue.
    fn count_inner(&mut self) -> u64 {
        let q = self.q;
        let outer_masks = 1usize << (self.m - 2);
        self.stamp += 1;
        let stamp = self.stamp;
        let mut forbidden = 0u64;
        let mut forbid = |stamps: &mut [u64], value: u32| {
            let slot = &mut stamps[value as usize];
            if *slot != stamp {
                *slot = stamp;
                forbidden += 1;
            }
        };
        // Subsets containing the innermost coordinate: sum + x != 0.
        for mask in 0..outer_masks {
            let bad = (q - self.sums[mask]) % q;
            forbid(&mut self.stamps, bad);
        }
        if self.augmented {
            let total = self.sums[outer_masks - 1];
            for prev in 0..self.m - 2 {
                let v = self.values[prev];
                // x_{m-1} != x_i.
                forbid(&mut self.stamps, v);
                // x_m = -(total + x_{m-1}) != x_i.
                forbid(&mut self.stamps, (2 * q - total - v) % q);
            }
            // x_m != x_{m-1}: 2 x_{m-1} != -total.
            let bad = ((q - total) as u64 * self.inv2 as u64 % q as u64) as u32;
            forbid(&mut self.stamps, bad);
        }
        q as u64 - forbidden
    }
}

fn mod_inverse(a: u64, q: u32) -> u32 {
    // Fermat: a^(q-2) mod q.
    let mut base = a % q as u64;
    let mut exp = q as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn primes_above(mut floor: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        floor += 1;
        if is_prime(floor) {
            out.push(floor);
        }
    }
    out
}

const WINDOW_RETRIES: usize = 24;

/// Characteristic polynomial of the arrangement, monic of degree
/// `m - 1`, by finite-field counting and exact interpolation.
pub fn charpoly(spec: &ArrangementSpec) -> Result<CharPoly, CharPolyError> {
    // Primes just above m are almost always good here and keep the
    // counting fast; the validation primes catch the exceptions.
    charpoly_with_floor(spec, spec.m as u64)
}

/// Same as [`charpoly`] with an explicit prime floor: candidate primes
/// are chosen ascending above `floor`.
pub fn charpoly_with_floor(spec: &ArrangementSpec, floor: u64) -> Result<CharPoly, CharPolyError> {
    let m = spec.m;
    let floor = floor.max(m as u64);
    let window = m + 2;
    let mut primes = primes_above(floor, window);
    let mut counts: HashMap<u64, u64> = HashMap::new();

    for _ in 0..WINDOW_RETRIES {
        let missing: Vec<u64> =
            primes.iter().copied().filter(|q| !counts.contains_key(q)).collect();
        let fresh: Vec<(u64, u64)> =
            missing.into_par_iter().map(|q| (q, count_points(spec, q).count)).collect();
        counts.extend(fresh);

        let sample: Vec<(u64, u64)> = primes.iter().map(|&q| (q, counts[&q])).collect();
        if let Some(poly) = interpolate_and_validate(m, &sample) {
            return Ok(poly);
        }
        // Shift the window: drop the smallest prime, add the next one.
        let next = primes_above(*primes.last().unwrap(), 1)[0];
        primes.remove(0);
        primes.push(next);
    }
    Err(CharPolyError::InterpolationInconsistent(WINDOW_RETRIES))
}

/// Interpolates the first `m` samples and validates on the rest:
/// integral, monic of degree `m-1`, vanishing at 1, and matching every
/// extra sample exactly.
fn interpolate_and_validate(m: usize, sample: &[(u64, u64)]) -> Option<CharPoly> {
    let coeffs = lagrange(&sample[..m]);
    let mut ints = Vec::with_capacity(m);
    for c in coeffs {
        if !c.denom().is_one() {
            return None;
        }
        ints.push(c.numer().clone());
    }
    if ints.len() != m || !ints[m - 1].is_one() {
        return None;
    }
    let poly = CharPoly { coeffs: ints };
    if !poly.eval(&BigInt::one()).is_zero() {
        return None;
    }
    for &(q, count) in &sample[m..] {
        if poly.eval(&BigInt::from(q)) != BigInt::from(count) {
            return None;
        }
    }
    Some(poly)
}

/// Exact Lagrange interpolation; returns coefficients low-to-high.
fn lagrange(points: &[(u64, u64)]) -> Vec<Rat> {
    let n = points.len();
    let mut coeffs = vec![Rat::zero(); n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // Basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j).
        let mut basis = vec![Rat::zero(); n];
        basis[0] = Rat::one();
        let mut deg = 0;
        let mut denom = Rat::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let root = Rat::from_integer(BigInt::from(xj));
            // Multiply in place by (t - root), high to low.
            for k in (0..=deg).rev() {
                let bk = basis[k].clone();
                basis[k + 1] += &bk;
                basis[k] = -(&root * &bk);
            }
            deg += 1;
            denom *= Rat::from_integer(BigInt::from(xi) - BigInt::from(xj));
        }
        let weight = Rat::from_integer(BigInt::from(yi)) / denom;
        for k in 0..n {
            coeffs[k] += &basis[k] * &weight;
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(m: usize) -> ArrangementSpec {
        ArrangementSpec::subset_only(m)
    }

    /// Brute-force oracle: enumerate all points of the zero-sum plane
    /// over the field directly, checking every constraint per point.
    fn brute_count(spec: &ArrangementSpec, q: u64) -> u64 {
        let m = spec.m;
        let mut count = 0;
        let total = (q as usize).pow((m - 1) as u32);
        'point: for code in 0..total {
            let mut x = vec![0i64; m];
            let mut rest = code;
            let mut sum = 0i64;
            for slot in x.iter_mut().take(m - 1) {
                *slot = (rest % q as usize) as i64;
                rest /= q as usize;
                sum += *slot;
            }
            x[m - 1] = (q as i64 - sum.rem_euclid(q as i64)) % q as i64;
            for mask in 1u32..(1 << (m - 1)) {
                let s: i64 = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| x[i]).sum();
                if s % q as i64 == 0 {
                    continue 'point;
                }
            }
            if spec.augment_braid {
                for i in 0..m {
                    for j in (i + 1)..m {
                        if x[i] == x[j] {
                            continue 'point;
                        }
                    }
                }
            }
            count += 1;
        }
        count
    }

    #[test]
    fn count_m3_q5_matches_polynomial_and_brute_force() {
        // chi = (t-1)(t-2) evaluated at 5 is 12.
        let fc = count_points(&subset(3), 5);
        assert_eq!(fc.count, 12);
        assert_eq!(brute_count(&subset(3), 5), 12);
    }

    #[test]
    fn count_m4_q7_matches_polynomial_and_brute_force() {
        // chi = (t-1)(t-3)^2 evaluated at 7 is 6*16 = 96.
        let fc = count_points(&subset(4), 7);
        assert_eq!(fc.count, 96);
        assert_eq!(brute_count(&subset(4), 7), 96);
    }

    #[test]
    fn bad_prime_below_floor() {
        // Over the field with two elements every nonzero zero-sum point
        // for m = 3 lies on a subset hyperplane, so the complement
        // collapses; the counting API refuses primes this small.
        assert_eq!(brute_count(&subset(3), 2), 0);
        assert!(std::panic::catch_unwind(|| count_points(&subset(3), 2)).is_err());
    }

    #[test]
    fn counts_divisible_by_q_minus_one() {
        // Nonzero scaling acts freely on the central complement.
        for m in 2..=5 {
            for q in [7u64, 11, 13] {
                let fc = count_points(&subset(m), q);
                assert_eq!(fc.count % (q - 1), 0, "m={m} q={q}");
            }
        }
        let fc = count_points(&ArrangementSpec::augmented(4), 11);
        assert_eq!(fc.count % 10, 0);
    }

    #[test]
    fn augmented_counts_match_brute_force() {
        for q in [7u64, 11] {
            for m in [3usize, 4] {
                let spec = ArrangementSpec::augmented(m);
                assert_eq!(count_points(&spec, q).count, brute_count(&spec, q), "m={m} q={q}");
            }
        }
    }

    #[test]
    fn charpoly_small_m() {
        assert_eq!(charpoly(&subset(2)).unwrap(), CharPoly::from_i64(&[-1, 1]));
        assert_eq!(charpoly(&subset(3)).unwrap(), CharPoly::from_i64(&[2, -3, 1]));
        assert_eq!(charpoly(&subset(4)).unwrap(), CharPoly::from_i64(&[-9, 15, -7, 1]));
        assert_eq!(charpoly(&subset(5)).unwrap(), CharPoly::from_i64(&[104, -170, 80, -15, 1]));
    }

    #[test]
    fn charpoly_augmented_small_m() {
        assert_eq!(
            charpoly(&ArrangementSpec::augmented(3)).unwrap(),
            CharPoly::from_i64(&[5, -6, 1])
        );
        // (t-1)(t-5)(t-7) = t^3 - 13t^2 + 47t - 35.
        assert_eq!(
            charpoly(&ArrangementSpec::augmented(4)).unwrap(),
            CharPoly::from_i64(&[-35, 47, -13, 1])
        );
    }

    #[test]
    fn charpoly_with_large_floor_agrees() {
        let small = charpoly(&subset(4)).unwrap();
        let large = charpoly_with_floor(&subset(4), 64).unwrap();
        assert_eq!(small, large);
    }

    #[test]
    fn chamber_counts_via_zaslavsky() {
        assert_eq!(chamber_count(&CharPoly::from_i64(&[2, -3, 1])), BigInt::from(6));
        assert_eq!(chamber_count(&CharPoly::from_i64(&[-1, 1])), BigInt::from(2));
        let m7 = CharPoly::from_i64(&[371909, -510524, 159460, -22435, 1652, -63, 1]);
        assert_eq!(chamber_count(&m7), BigInt::from(1_066_044));
    }

    #[test]
    fn display_formatting() {
        let p = CharPoly::from_i64(&[-9, 15, -7, 1]);
        assert_eq!(p.to_string(), "t^3-7t^2+15t-9");
        let q = CharPoly::from_i64(&[-1, 1]);
        assert_eq!(q.to_string(), "t-1");
        assert!(p.has_alternating_signs());
    }

    #[test]
    fn alternating_signs_and_extra_prime_regression() {
        let p = charpoly(&subset(5)).unwrap();
        assert!(p.has_alternating_signs());
        assert!(p.eval(&BigInt::one()).is_zero());
        // A fresh count at another good prime matches the polynomial.
        let q = 31u64;
        assert_eq!(p.eval(&BigInt::from(q)), BigInt::from(count_points(&subset(5), q).count));
    }

    #[test]
    fn lagrange_recovers_polynomial() {
        // y = t^2 - 3t + 2 at t = 5, 7, 11.
        let pts = [(5u64, 12u64), (7, 30), (11, 90)];
        let coeffs = lagrange(&pts);
        assert_eq!(coeffs[0], crate::exact::rat(2));
        assert_eq!(coeffs[1], crate::exact::rat(-3));
        assert_eq!(coeffs[2], crate::exact::rat(1));
    }
}
