//! The restricted all-subset arrangement on the zero-sum hyperplane,
//! optionally augmented with the braid hyperplanes `x_i = x_j`, its
//! chambers, and their enumeration.
//!
//! Hyperplanes are the subset sums `sum_{i in I} x_i = 0`. On the
//! zero-sum hyperplane a subset and its complement cut out the same
//! hyperplane, so the canonical list keeps only subsets avoiding the
//! last object: `2^(m-1) - 1` of them, indexed by ascending bitmask. A
//! chamber is identified by one sign per hyperplane plus an exact
//! rational interior witness.
//!
//! Enumeration walks the chamber-adjacency graph: starting from the
//! chamber of a random generic seed point, every single-sign flip of a
//! known chamber is tested for nonemptiness with the exact LP oracle
//! (all signed hyperplane rows strict, the zero-sum constraint as an
//! explicit equality). Adjacent chambers differ in exactly one sign, so
//! the walk reaches everything; the final list is sorted to erase any
//! trace of scheduling.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact::{
    self, dot, feasible_affine_strict, format_rat, parse_rat, Rat, RatMat, RatVec,
};

/// One hyperplane `sum_{i in I} x_i = 0`, as a bitmask over objects
/// `1..=m` (bit `i-1` set means `i` is in `I`). Canonical masks never
/// contain the last object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetHyperplane(pub u32);

impl SubsetHyperplane {
    pub fn members(self, m: usize) -> Vec<usize> {
        (0..m).filter(|i| self.0 & (1 << i) != 0).map(|i| i + 1).collect()
    }

    /// Canonical representative on the zero-sum hyperplane: a mask and
    /// its complement define the same hyperplane, keep the one without
    /// the last object.
    pub fn canonical(self, m: usize) -> SubsetHyperplane {
        let full = (1u32 << m) - 1;
        if self.0 & (1 << (m - 1)) != 0 {
            SubsetHyperplane(full & !self.0)
        } else {
            self
        }
    }
}

/// Which family of hyperplanes to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrangementSpec {
    pub m: usize,
    /// Also include every braid hyperplane `x_i = x_j`.
    pub augment_braid: bool,
    /// Restrict to the open cone `x_1 > x_2 > ... > x_m`.
    pub cone_restrict: bool,
}

impl ArrangementSpec {
    pub fn subset_only(m: usize) -> Self {
        ArrangementSpec { m, augment_braid: false, cone_restrict: false }
    }

    pub fn augmented(m: usize) -> Self {
        ArrangementSpec { m, augment_braid: true, cone_restrict: false }
    }

    pub fn fundamental_cone(m: usize) -> Self {
        ArrangementSpec { m, augment_braid: false, cone_restrict: true }
    }

    /// Canonical subset masks in ascending order: `1 ..= 2^(m-1)-1`.
    pub fn subset_masks(&self) -> impl Iterator<Item = SubsetHyperplane> {
        (1u32..(1 << (self.m - 1))).map(SubsetHyperplane)
    }

    /// Braid pairs `(i, j)`, `1 <= i < j <= m`, lexicographic; empty
    /// unless augmented.
    pub fn braid_pairs(&self) -> Vec<(usize, usize)> {
        if !self.augment_braid {
            return Vec::new();
        }
        let mut pairs = Vec::new();
        for i in 1..=self.m {
            for j in (i + 1)..=self.m {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// Number of hyperplanes carrying a sign: canonical subsets first,
    /// then braid pairs when augmented.
    pub fn hyperplane_count(&self) -> usize {
        let subsets = (1usize << (self.m - 1)) - 1;
        if self.augment_braid {
            subsets + self.m * (self.m - 1) / 2
        } else {
            subsets
        }
    }

    /// Normal vector of hyperplane `index` in the sign-vector order.
    pub fn normal(&self, index: usize) -> RatVec {
        let subsets = (1usize << (self.m - 1)) - 1;
        let mut row = vec![Rat::zero(); self.m];
        if index < subsets {
            let mask = (index + 1) as u32;
            for i in 0..self.m {
                if mask & (1 << i) != 0 {
                    row[i] = Rat::one();
                }
            }
        } else {
            let (i, j) = self.braid_pairs()[index - subsets];
            row[i - 1] = Rat::one();
            row[j - 1] = -Rat::one();
        }
        row
    }
}

/// One sign per hyperplane of a spec, `+` or `-`, no zeros. Packed into
/// a bitset; ordering is lexicographic over the sign string.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    /// Bit `i` set means hyperplane `i` sees the chamber on its
    /// positive side.
    bits: u128,
}

impl SignVector {
    pub fn from_signs(signs: &[bool]) -> Self {
        assert!(signs.len() <= 128);
        let mut bits = 0u128;
        for (i, &s) in signs.iter().enumerate() {
            if s {
                bits |= 1 << i;
            }
        }
        SignVector { len: signs.len() as u8, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_positive(&self, index: usize) -> bool {
        self.bits & (1 << index) != 0
    }

    pub fn flipped(&self, index: usize) -> SignVector {
        SignVector { len: self.len, bits: self.bits ^ (1 << index) }
    }

    pub fn negated(&self) -> SignVector {
        let mask = if self.len == 128 { u128::MAX } else { (1u128 << self.len) - 1 };
        SignVector { len: self.len, bits: !self.bits & mask }
    }

    /// Restricts to the first `n` hyperplanes.
    pub fn truncated(&self, n: usize) -> SignVector {
        debug_assert!(n <= self.len());
        let mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        SignVector { len: n as u8, bits: self.bits & mask }
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.bits.reverse_bits().cmp(&other.bits.reverse_bits()))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", if self.is_positive(i) { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A chamber: its sign vector plus an exact interior point on the
/// zero-sum hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub sign: SignVector,
    pub witness: RatVec,
}

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("point lies on hyperplane {0}")]
    OnHyperplane(String),
    #[error("point is not on the zero-sum hyperplane")]
    OffZeroSum,
    #[error("could not draw a generic seed point after {0} attempts")]
    SeedDegenerate(usize),
    #[error("cache is corrupt: {0}")]
    CorruptCache(String),
    #[error("cache version mismatch: expected `{expected}`, found `{found}`")]
    VersionMismatch { expected: String, found: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Exact sign of `p` against every hyperplane of `spec`.
///
/// Fails with the offending hyperplane if `p` lies on one, or if `p`
/// is off the zero-sum hyperplane.
pub fn sign_of_point(spec: &ArrangementSpec, p: &[Rat]) -> Result<SignVector, ArrangementError> {
    assert_eq!(p.len(), spec.m, "dimension mismatch");
    if !p.iter().sum::<Rat>().is_zero() {
        return Err(ArrangementError::OffZeroSum);
    }
    let mut signs = Vec::with_capacity(spec.hyperplane_count());
    for h in spec.subset_masks() {
        let mut sum = Rat::zero();
        for i in 0..spec.m {
            if h.0 & (1 << i) != 0 {
                sum += &p[i];
            }
        }
        if sum.is_zero() {
            return Err(ArrangementError::OnHyperplane(format!(
                "subset {:?}",
                h.members(spec.m)
            )));
        }
        signs.push(sum.is_positive());
    }
    for (i, j) in spec.braid_pairs() {
        let diff = &p[i - 1] - &p[j - 1];
        if diff.is_zero() {
            return Err(ArrangementError::OnHyperplane(format!("pair ({i},{j})")));
        }
        signs.push(diff.is_positive());
    }
    Ok(SignVector::from_signs(&signs))
}

const SEED_ATTEMPTS: usize = 100;

/// Draws a generic integer seed point on the zero-sum hyperplane
/// (inside the order cone when requested).
fn seed_point(spec: &ArrangementSpec, rng: &mut ChaCha8Rng) -> Result<RatVec, ArrangementError> {
    let m = spec.m;
    for _ in 0..SEED_ATTEMPTS {
        let mut coords: Vec<i64> =
            (0..m).map(|_| rng.gen_range(-1_000_000i64..=1_000_000)).collect();
        if spec.cone_restrict {
            coords.sort_unstable_by(|a, b| b.cmp(a));
        }
        // Recenter without leaving the integers: scale by m first.
        let total: i64 = coords.iter().sum();
        let point: RatVec = coords
            .iter()
            .map(|&c| Rat::from_integer((c as i128 * m as i128 - total as i128).into()))
            .collect();
        if spec.cone_restrict && !point.windows(2).all(|w| w[0] > w[1]) {
            continue;
        }
        if sign_of_point(spec, &point).is_ok() {
            return Ok(point);
        }
    }
    Err(ArrangementError::SeedDegenerate(SEED_ATTEMPTS))
}

/// Constraint rows shared by every feasibility query for `spec`:
/// one row per hyperplane (to be sign-adjusted), plus cone rows.
struct FeasibilityContext {
    normals: Vec<RatVec>,
    cone_rows: Vec<RatVec>,
    zero_sum: RatMat,
    m: usize,
}

impl FeasibilityContext {
    fn new(spec: &ArrangementSpec) -> Self {
        let normals: Vec<RatVec> =
            (0..spec.hyperplane_count()).map(|i| spec.normal(i)).collect();
        let mut cone_rows = Vec::new();
        if spec.cone_restrict {
            for i in 0..spec.m - 1 {
                let mut row = vec![Rat::zero(); spec.m];
                row[i] = Rat::one();
                row[i + 1] = -Rat::one();
                cone_rows.push(row);
            }
        }
        let zero_sum = RatMat::from_rows(vec![vec![Rat::one(); spec.m]]);
        FeasibilityContext { normals, cone_rows, zero_sum, m: spec.m }
    }

    /// Interior witness for the candidate sign vector, or `None` when
    /// the region is empty.
    fn witness(&self, sign: &SignVector) -> Option<RatVec> {
        let mut rows = Vec::with_capacity(self.normals.len() + self.cone_rows.len());
        for (i, normal) in self.normals.iter().enumerate() {
            rows.push(if sign.is_positive(i) { normal.clone() } else { exact::neg(normal) });
        }
        rows.extend(self.cone_rows.iter().cloned());
        let k = rows.len();
        let a = RatMat::from_rows(rows);
        let b = vec![Rat::zero(); k];
        feasible_affine_strict(&a, &b, &self.zero_sum, &[Rat::zero()]).witness()
    }

    /// Cheap necessary condition on a candidate: extend the signs to
    /// every nonempty proper subset via complementation, then demand
    /// that disjoint subsets with equal signs keep that sign on their
    /// union. Catches most infeasible single-flip candidates without an
    /// LP. Applies to the subset hyperplanes only.
    fn plausible(&self, sign: &SignVector, m: usize) -> bool {
        let full = (1u32 << m) - 1;
        let ext = |mask: u32| -> bool {
            if mask & (1 << (m - 1)) == 0 {
                sign.is_positive(mask as usize - 1)
            } else {
                !sign.is_positive((full & !mask) as usize - 1)
            }
        };
        for union in 1..full {
            let union_sign = ext(union);
            // Proper nonempty submasks, each unordered pair once.
            let mut sub = (union - 1) & union;
            while sub != 0 {
                let other = union & !sub;
                if sub < other {
                    let s = ext(sub);
                    if s == ext(other) && s != union_sign {
                        return false;
                    }
                }
                sub = (sub - 1) & union;
            }
        }
        true
    }

    /// Tries to step from `from` (interior point) across hyperplane
    /// `index`: drop the perpendicular foot within the zero-sum
    /// hyperplane and move slightly beyond. Returns a verified witness
    /// for `target` when the step lands in it.
    fn step_across(
        &self,
        spec: &ArrangementSpec,
        from: &[Rat],
        index: usize,
        target: &SignVector,
    ) -> Option<RatVec> {
        let normal = &self.normals[index];
        // Project the normal into the zero-sum hyperplane so the step
        // stays on it.
        let ones_part = normal.iter().sum::<Rat>() / Rat::from_integer(self.m.into());
        let projected: RatVec = normal.iter().map(|v| v - &ones_part).collect();
        let denom = dot(&projected, &projected);
        if denom.is_zero() {
            return None;
        }
        let overshoot = dot(normal, from) / &denom * exact::ratio(129, 128);
        let candidate: RatVec =
            from.iter().zip(&projected).map(|(x, d)| x - &overshoot * d).collect();
        match sign_of_point(spec, &candidate) {
            Ok(s) if s == *target => {
                if self.cone_rows.iter().all(|row| dot(row, &candidate).is_positive()) {
                    Some(candidate)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// Enumerates every chamber of the arrangement (within the open order
/// cone when `spec.cone_restrict`), sorted by sign vector.
///
/// The seed point is drawn from a deterministic generator for the given
/// `seed`, and the output does not depend on thread scheduling.
pub fn enumerate_chambers(
    spec: &ArrangementSpec,
    seed: u64,
) -> Result<Vec<Chamber>, ArrangementError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = seed_point(spec, &mut rng)?;
    let start_sign = sign_of_point(spec, &start).expect("seed point is generic");
    let ctx = FeasibilityContext::new(spec);
    let nh = spec.hyperplane_count();

    let visited: Mutex<HashSet<SignVector>> = Mutex::new(HashSet::new());
    visited.lock().unwrap().insert(start_sign);
    let mut frontier = vec![Chamber { sign: start_sign, witness: start }];
    let mut chambers: Vec<Chamber> = Vec::new();

    while !frontier.is_empty() {
        let mut next: Vec<Chamber> = frontier
            .par_iter()
            .flat_map_iter(|chamber| {
                let mut found = Vec::new();
                for index in 0..nh {
                    let candidate = chamber.sign.flipped(index);
                    if visited.lock().unwrap().contains(&candidate) {
                        continue;
                    }
                    if !ctx.plausible(&candidate, spec.m) {
                        continue;
                    }
                    let witness = ctx
                        .step_across(spec, &chamber.witness, index, &candidate)
                        .or_else(|| ctx.witness(&candidate));
                    let Some(witness) = witness else {
                        continue;
                    };
                    if visited.lock().unwrap().insert(candidate) {
                        found.push(Chamber { sign: candidate, witness });
                    }
                }
                found
            })
            .collect();
        // insert() already guarantees uniqueness; sorting keeps the
        // traversal deterministic regardless of thread interleaving.
        next.sort_by(|a, b| a.sign.cmp(&b.sign));
        next.dedup_by(|a, b| a.sign == b.sign);
        chambers.append(&mut frontier);
        frontier = next;
    }
    chambers.sort_by(|a, b| a.sign.cmp(&b.sign));
    Ok(chambers)
}

/// Chambers of the subset arrangement whose intersection with the open
/// cone `x_1 > ... > x_m` is nonempty. Each such chamber meets the cone
/// in a single convex piece, so the cone regions are exactly these
/// chambers and no deduplication beyond sign equality is needed.
pub fn chambers_in_fundamental_cone(m: usize, seed: u64) -> Result<Vec<Chamber>, ArrangementError> {
    enumerate_chambers(&ArrangementSpec::fundamental_cone(m), seed)
}

const CACHE_MAGIC: &str = "braidslice-chambers";
const CACHE_VERSION: &str = "v1";

/// Writes chambers as text: a versioned header with a content checksum,
/// then one line per chamber (`sign string`, tab, comma-separated
/// `p/q` witness coordinates). ASCII, LF line endings.
pub fn save_cache(
    spec: &ArrangementSpec,
    chambers: &[Chamber],
    path: &Path,
) -> Result<(), ArrangementError> {
    let mut body = String::new();
    for chamber in chambers {
        body.push_str(&chamber.sign.to_string());
        body.push('\t');
        let coords: Vec<String> = chamber.witness.iter().map(format_rat).collect();
        body.push_str(&coords.join(","));
        body.push('\n');
    }
    let digest = hex_digest(body.as_bytes());
    let header = format!(
        "{CACHE_MAGIC} {CACHE_VERSION} m={} augmented={} cone={} count={} sha256={digest}\n",
        spec.m,
        u8::from(spec.augment_braid),
        u8::from(spec.cone_restrict),
        chambers.len(),
    );
    let mut file = std::fs::File::create(path)?;
    file.write_all(header.as_bytes())?;
    file.write_all(body.as_bytes())?;
    Ok(())
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads a cache written by [`save_cache`], re-deriving the spec from
/// the header and checking shape and checksum.
pub fn load_cache(path: &Path) -> Result<(ArrangementSpec, Vec<Chamber>), ArrangementError> {
    let corrupt = |msg: &str| ArrangementError::CorruptCache(msg.to_string());
    let file = std::fs::File::open(path)?;
    let mut reader = std::io::BufReader::new(file);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let header = header.trim_end_matches('\n');
    let mut parts = header.split(' ');
    let magic = parts.next().unwrap_or_default();
    let version = parts.next().unwrap_or_default();
    if magic != CACHE_MAGIC {
        return Err(corrupt("bad magic"));
    }
    if version != CACHE_VERSION {
        return Err(ArrangementError::VersionMismatch {
            expected: CACHE_VERSION.to_string(),
            found: version.to_string(),
        });
    }
    let mut m = None;
    let mut augmented = None;
    let mut cone = None;
    let mut count = None;
    let mut sha = None;
    for field in parts {
        let Some((key, value)) = field.split_once('=') else {
            return Err(corrupt("malformed header field"));
        };
        match key {
            "m" => m = value.parse::<usize>().ok(),
            "augmented" => augmented = value.parse::<u8>().ok(),
            "cone" => cone = value.parse::<u8>().ok(),
            "count" => count = value.parse::<usize>().ok(),
            "sha256" => sha = Some(value.to_string()),
            _ => return Err(corrupt("unknown header field")),
        }
    }
    let (Some(m), Some(augmented), Some(cone), Some(count), Some(sha)) =
        (m, augmented, cone, count, sha)
    else {
        return Err(corrupt("incomplete header"));
    };
    let spec = ArrangementSpec { m, augment_braid: augmented != 0, cone_restrict: cone != 0 };

    let mut body = String::new();
    std::io::Read::read_to_string(&mut reader, &mut body)?;
    if hex_digest(body.as_bytes()) != sha {
        return Err(corrupt("checksum mismatch"));
    }
    let nh = spec.hyperplane_count();
    let mut chambers = Vec::with_capacity(count);
    for line in body.lines() {
        let Some((sign_str, witness_str)) = line.split_once('\t') else {
            return Err(corrupt("missing tab separator"));
        };
        if sign_str.len() != nh {
            return Err(corrupt("sign string has wrong length"));
        }
        let signs: Vec<bool> = sign_str
            .chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' => Ok(false),
                _ => Err(corrupt("sign string has invalid character")),
            })
            .collect::<Result<_, _>>()?;
        let witness: RatVec = witness_str
            .split(',')
            .map(|tok| parse_rat(tok).map_err(|_| corrupt("bad witness coordinate")))
            .collect::<Result<_, _>>()?;
        if witness.len() != spec.m {
            return Err(corrupt("witness has wrong dimension"));
        }
        chambers.push(Chamber { sign: SignVector::from_signs(&signs), witness });
    }
    if chambers.len() != count {
        return Err(corrupt("chamber count mismatch"));
    }
    Ok((spec, chambers))
}

/// Re-validates a chamber list: every witness must reproduce its sign
/// vector exactly, and sign vectors must be pairwise distinct.
pub fn validate_chambers(
    spec: &ArrangementSpec,
    chambers: &[Chamber],
) -> Result<(), ArrangementError> {
    let mut seen = HashSet::new();
    for chamber in chambers {
        let sign = sign_of_point(spec, &chamber.witness)?;
        if sign != chamber.sign {
            return Err(ArrangementError::CorruptCache(format!(
                "witness of {} reproduces {}",
                chamber.sign, sign
            )));
        }
        if !seen.insert(chamber.sign) {
            return Err(ArrangementError::CorruptCache(format!(
                "duplicate sign vector {}",
                chamber.sign
            )));
        }
    }
    Ok(())
}
