//! Distance-ranking (unfolding / ideal-point) models in the
//! codimension-one regime: `m` objects placed in `m - 2` dimensions.
//!
//! An individual at point `y` ranks objects by increasing distance.
//! Expanding the squared distances turns the comparison into a linear
//! one: with `W` the matrix of object rows and `u` built from the
//! squared norms, `y` produces ranking `(i1 ... im)` exactly when
//! `W y + u` lies in the order cone `x_{i1} > ... > x_{im}`. The image
//! of `y -> W y + u` is an affine hyperplane of the zero-sum plane, cut
//! out by the direction `u` minus its projection onto the span of the
//! columns of `W` and the all-ones vector. The set of achievable
//! rankings is therefore the ranking pattern of that slice direction.
//!
//! Inputs are arbitrary exact-rational configurations: the centroid is
//! translated to zero on construction, and in place of the usual
//! unit-mean-square-norm scaling the offset `u` is recentered to sum
//! zero. Both leave every ranking comparison unchanged, and the
//! returned direction is unnormalized (all consumers are invariant
//! under positive scaling), so no square roots are ever needed.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{self, dot, feasible_affine_strict, rat, Feasibility, Rat, RatMat, RatVec};
use crate::ranking::{
    ranking_by_distance, ranking_pattern, Ranking, RankingError, RankingPattern, MAX_OBJECTS,
};

/// `m` object points in dimension `n = m - 2`, centroid at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectConfig {
    m: usize,
    n: usize,
    mu: Vec<RatVec>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnfoldingError {
    #[error("need between 3 and {MAX_OBJECTS} objects, got {0}")]
    UnsupportedObjectCount(usize),
    #[error("object {index} has dimension {got}, expected {expected}")]
    RaggedObject { index: usize, expected: usize, got: usize },
    #[error("{m} objects in dimension {n}: codimension one needs dimension {}", m - 2)]
    WrongCodimension { m: usize, n: usize },
    #[error("normal equations are singular; the objects are degenerate")]
    SingularNormalEquations,
    #[error("offset lies in the object span; the configuration is degenerate")]
    ZeroDirection,
    #[error("cannot scale a configuration by zero")]
    ZeroScale,
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("direction has a side no model can realize")]
    NotRealizable,
    #[error(transparent)]
    Ranking(#[from] RankingError),
}

impl ObjectConfig {
    /// Builds a codimension-one configuration, translating the centroid
    /// to the origin.
    pub fn new(points: Vec<RatVec>) -> Result<Self, UnfoldingError> {
        let m = points.len();
        if !(3..=MAX_OBJECTS).contains(&m) {
            return Err(UnfoldingError::UnsupportedObjectCount(m));
        }
        let n = points[0].len();
        for (index, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(UnfoldingError::RaggedObject {
                    index: index + 1,
                    expected: n,
                    got: p.len(),
                });
            }
        }
        if n != m - 2 {
            return Err(UnfoldingError::WrongCodimension { m, n });
        }
        let m_rat = rat(m as i64);
        let centroid: RatVec =
            (0..n).map(|c| points.iter().map(|p| &p[c]).sum::<Rat>() / &m_rat).collect();
        let mu = points.into_iter().map(|p| exact::sub(&p, &centroid)).collect();
        Ok(ObjectConfig { m, n, mu })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Centered object points.
    pub fn objects(&self) -> &[RatVec] {
        &self.mu
    }

    /// Mean squared norm of the centered objects.
    pub fn mean_square_norm(&self) -> Rat {
        self.mu.iter().map(|p| dot(p, p)).sum::<Rat>() / rat(self.m as i64)
    }

    /// The same configuration with every object shifted; rankings are
    /// translation invariant, so this is a no-op after recentring.
    pub fn translated(&self, shift: &[Rat]) -> Self {
        let points = self.mu.iter().map(|p| exact::add(p, shift)).collect();
        ObjectConfig::new(points).expect("translation preserves validity")
    }

    /// Every object scaled by a nonzero rational.
    pub fn scaled(&self, a: &Rat) -> Result<Self, UnfoldingError> {
        if a.is_zero() {
            return Err(UnfoldingError::ZeroScale);
        }
        Ok(ObjectConfig {
            m: self.m,
            n: self.n,
            mu: self.mu.iter().map(|p| exact::scale(p, a)).collect(),
        })
    }

    /// Relabels objects: object `j` becomes `sigma(j)` (one-based).
    pub fn permuted(&self, sigma: &[u8]) -> Self {
        let mut mu = vec![RatVec::new(); self.m];
        for (j, p) in self.mu.iter().enumerate() {
            mu[(sigma[j] - 1) as usize] = p.clone();
        }
        ObjectConfig { m: self.m, n: self.n, mu }
    }
}

/// One object per line, comma-separated rational (`p/q`) or decimal
/// coordinates; `#` starts a comment. Returns the raw points.
pub fn parse_object_points(text: &str) -> Result<Vec<RatVec>, UnfoldingError> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords: Result<RatVec, _> = line
            .split(',')
            .map(|tok| {
                exact::parse_rat(tok).map_err(|_| UnfoldingError::Parse {
                    line: lineno + 1,
                    message: format!("bad coordinate `{}`", tok.trim()),
                })
            })
            .collect();
        points.push(coords?);
    }
    Ok(points)
}

/// Which genericity condition failed, with the offending edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityViolation {
    pub condition: GenericityCondition,
    /// Edges (1-based object pairs) of the forest whose difference
    /// vectors are dependent.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenericityCondition {
    /// Forests of `m-2` edges over the raw objects.
    Differences,
    /// Spanning trees over the norm-lifted objects.
    LiftedDifferences,
}

impl fmt::Display for GenericityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let which = match self.condition {
            GenericityCondition::Differences => "difference vectors",
            GenericityCondition::LiftedDifferences => "lifted difference vectors",
        };
        write!(f, "dependent {which} on forest {:?}", self.edges)
    }
}

/// Outcome of the two genericity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub a1_holds: bool,
    pub a2_holds: bool,
    pub first_violation: Option<GenericityViolation>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.a1_holds && self.a2_holds
    }
}

/// Checks both genericity conditions: every forest of `m-2` object
/// pairs must have independent difference vectors, and every spanning
/// tree of the norm-lifted objects must too.
pub fn check_genericity(cfg: &ObjectConfig) -> GenericityReport {
    let lifted: Vec<RatVec> = cfg
        .mu
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(dot(p, p));
            q
        })
        .collect();
    let a1 = forest_violation(&cfg.mu, cfg.m - 2, GenericityCondition::Differences);
    let a2 = forest_violation(&lifted, cfg.m - 1, GenericityCondition::LiftedDifferences);
    GenericityReport { a1_holds: a1.is_none(), a2_holds: a2.is_none(), first_violation: a1.or(a2) }
}

/// Scans all acyclic sets of `size` edges for one whose difference
/// vectors are linearly dependent.
fn forest_violation(
    points: &[RatVec],
    size: usize,
    condition: GenericityCondition,
) -> Option<GenericityViolation> {
    let m = points.len();
    let edges: Vec<(usize, usize)> =
        (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect();
    for chosen in edges.iter().combinations(size) {
        if !is_forest(m, &chosen) {
            continue;
        }
        let rows: Vec<RatVec> =
            chosen.iter().map(|&&(i, j)| exact::sub(&points[i], &points[j])).collect();
        if RatMat::from_rows(rows).rank() < size {
            return Some(GenericityViolation {
                condition,
                edges: chosen.iter().map(|&&(i, j)| (i + 1, j + 1)).collect(),
            });
        }
    }
    None
}

fn is_forest(m: usize, edges: &[&(usize, usize)]) -> bool {
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut parent: Vec<usize> = (0..m).collect();
    for &&(i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            return false;
        }
        parent[ri] = rj;
    }
    true
}

/// The slice data of a configuration: object-row matrix `W`, recentered
/// offset `u`, and the unnormalized direction cutting out the image
/// hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionResult {
    pub v_unnormalized: RatVec,
    pub u: RatVec,
    pub w: RatMat,
}

/// Builds the object-row matrix `W` (rows are the centered objects) and
/// the offset `u`, recentered so its coordinates sum to zero.
pub fn build_wu(cfg: &ObjectConfig) -> (RatMat, RatVec) {
    let w = RatMat::from_rows(cfg.mu.clone());
    let s = cfg.mean_square_norm();
    let half = exact::ratio(1, 2);
    let u = cfg.mu.iter().map(|p| -(&half * (dot(p, p) - &s))).collect();
    (w, u)
}

/// The slice direction: `u` minus its projection onto the span of the
/// columns of `w` and the all-ones vector, computed exactly.
pub fn direction_from_wu(w: &RatMat, u: &[Rat]) -> Result<RatVec, UnfoldingError> {
    let m = w.rows();
    let n = w.cols();
    // Projection basis: columns of w plus the all-ones vector.
    let mut basis_rows: Vec<RatVec> =
        (0..n).map(|c| (0..m).map(|r| w.get(r, c).clone()).collect()).collect();
    basis_rows.push(vec![Rat::one(); m]);
    let p_t = RatMat::from_rows(basis_rows); // rows span the projection space
    let gram = p_t.matmul(&p_t.transpose());
    let rhs = p_t.mul_vec(u);
    let z = gram.solve(&rhs).ok_or(UnfoldingError::SingularNormalEquations)?;
    let projected = p_t.transpose().mul_vec(&z);
    let v = exact::sub(u, &projected);
    if exact::is_zero_vec(&v) {
        return Err(UnfoldingError::ZeroDirection);
    }
    Ok(v)
}

/// Full slice data for a configuration.
pub fn direction(cfg: &ObjectConfig) -> Result<DirectionResult, UnfoldingError> {
    let (w, u) = build_wu(cfg);
    let v = direction_from_wu(&w, &u)?;
    Ok(DirectionResult { v_unnormalized: v, u, w })
}

/// Ranking pattern of the model: the pattern of its slice direction.
pub fn ranking_pattern_uf(cfg: &ObjectConfig) -> Result<RankingPattern, UnfoldingError> {
    let d = direction(cfg)?;
    Ok(ranking_pattern(&d.v_unnormalized)?)
}

/// An ideal point realizing a ranking, or the verdict that none does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealPoint {
    Point(RatVec),
    NotAdmissible,
}

/// Finds an exact ideal point whose distance order realizes `r`, by
/// solving for an interior point of the slice inside the order cone
/// and pulling it back through the object map. The returned point's
/// strict distance chain is verified exactly.
pub fn witness_ideal_point(cfg: &ObjectConfig, r: &Ranking) -> Result<IdealPoint, UnfoldingError> {
    let d = direction(cfg)?;
    let m = cfg.m;
    assert_eq!(r.len(), m, "ranking size mismatch");
    // Order-cone rows for the candidate ranking.
    let mut rows = Vec::with_capacity(m - 1);
    for pair in r.objects().windows(2) {
        let mut row = vec![Rat::zero(); m];
        row[(pair[0] - 1) as usize] = Rat::one();
        row[(pair[1] - 1) as usize] = -Rat::one();
        rows.push(row);
    }
    let a = RatMat::from_rows(rows);
    let b = vec![Rat::zero(); m - 1];
    // The slice: zero-sum plane intersected with v.x = |v|^2.
    let eq = RatMat::from_rows(vec![vec![Rat::one(); m], d.v_unnormalized.clone()]);
    let f = vec![Rat::zero(), dot(&d.v_unnormalized, &d.v_unnormalized)];
    let x = match feasible_affine_strict(&a, &b, &eq, &f) {
        Feasibility::Infeasible => return Ok(IdealPoint::NotAdmissible),
        Feasibility::Feasible(x) => x,
    };
    // Pull back: x = W y + u, so solve the normal equations of W.
    let w_t = d.w.transpose();
    let gram = w_t.matmul(&d.w);
    let rhs = w_t.mul_vec(&exact::sub(&x, &d.u));
    let y = gram.solve(&rhs).ok_or(UnfoldingError::SingularNormalEquations)?;
    // Exact verification of the strict distance chain.
    let mut last: Option<Rat> = None;
    for &i in r.objects() {
        let diff = exact::sub(&y, &cfg.mu[(i - 1) as usize]);
        let d2 = dot(&diff, &diff);
        if let Some(prev) = last {
            assert!(prev < d2, "ideal point fails its distance chain");
        }
        last = Some(d2);
    }
    Ok(IdealPoint::Point(y))
}

/// Builds a generic configuration whose slice direction is a positive
/// multiple of `v`, when one exists. Directions with exactly one
/// negative coordinate have no such model; everything else does.
///
/// The object rows start as a basis of the orthogonal complement of
/// `v` and the all-ones vector; for a two-sided direction the basis is
/// then rescaled along a vector on which the form `W^T diag(v) W` is
/// negative, forcing the offset to land on the positive side.
pub fn model_realizing_direction(v: &[Rat]) -> Result<ObjectConfig, UnfoldingError> {
    let m = v.len();
    crate::ranking::find_degeneracy(v)?;
    let positives = v.iter().filter(|x| x.is_positive()).count();
    let negatives = m - positives;
    if negatives == 1 {
        return Err(UnfoldingError::NotRealizable);
    }
    let constraints = RatMat::from_rows(vec![vec![Rat::one(); m], v.to_vec()]);
    let columns = constraints.nullspace();
    debug_assert_eq!(columns.len(), m - 2);
    let mut w = RatMat::zero(m, m - 2);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..m {
            w.set(r, c, col[r].clone());
        }
    }
    if positives >= 2 {
        w = rescale_for_negative_trace(&w, v);
    }
    // With exactly one positive coordinate the form is already
    // non-positive with a negative eigenvalue, so the trace is fine.
    let cfg = ObjectConfig::new(w.row_iter().map(<[Rat]>::to_vec).collect())?;
    let u = build_wu(&cfg).1;
    debug_assert!(dot(&u, v).is_positive());
    Ok(cfg)
}

/// Returns `W B` for an invertible `B` chosen so that
/// `trace((WB)^T diag(v) (WB))` is negative.
fn rescale_for_negative_trace(w: &RatMat, v: &[Rat]) -> RatMat {
    let n = w.cols();
    let form = quadratic_form(w, v);
    let z = negative_form_vector(&form).expect("two-sided direction gives an indefinite form");
    // Complete z to a basis with standard vectors.
    let mut cols: Vec<RatVec> = vec![z];
    for k in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[k] = Rat::one();
        let mut candidate = cols.clone();
        candidate.push(e);
        if RatMat::from_rows(candidate.clone()).rank() == cols.len() + 1 {
            cols = candidate;
        }
        if cols.len() == n {
            break;
        }
    }
    let basis = RatMat::from_rows(cols).transpose();
    let mixed = w.matmul(&basis);
    // Scale the first column until its negative form value dominates.
    let form_mixed = quadratic_form(&mixed, v);
    let lead = form_mixed.get(0, 0).clone();
    debug_assert!(lead.is_negative());
    let rest: Rat = (1..n).map(|k| form_mixed.get(k, k).clone()).sum();
    let mut scale = Rat::one();
    while &(&scale * &scale) * &lead + &rest >= Rat::zero() {
        scale *= rat(2);
    }
    let mut out = mixed;
    for r in 0..out.rows() {
        let val = out.get(r, 0) * &scale;
        out.set(r, 0, val);
    }
    out
}

/// `W^T diag(v) W`.
fn quadratic_form(w: &RatMat, v: &[Rat]) -> RatMat {
    let mut scaled = w.clone();
    for r in 0..w.rows() {
        for c in 0..w.cols() {
            let val = w.get(r, c) * &v[r];
            scaled.set(r, c, val);
        }
    }
    w.transpose().matmul(&scaled)
}

/// Small integer vector with negative form value, if the search box
/// contains one. For the indefinite or negative-semidefinite forms of
/// the sizes used here an expanding box search succeeds quickly.
fn negative_form_vector(form: &RatMat) -> Option<RatVec> {
    let n = form.rows();
    for radius in 1..=8i64 {
        let mut z = vec![-radius; n];
        loop {
            let zr: RatVec = z.iter().map(|&c| rat(c)).collect();
            let value = dot(&form.mul_vec(&zr), &zr);
            if value.is_negative() {
                return Some(zr);
            }
            // Odometer step over the box.
            let mut k = 0;
            while k < n {
                z[k] += 1;
                if z[k] <= radius {
                    break;
                }
                z[k] = -radius;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    None
}

/// Rankings observed by sampling random ideal points; a Monte-Carlo
/// subset of the true pattern.
pub fn sample_rankings(cfg: &ObjectConfig, samples: usize, seed: u64) -> BTreeSet<Ranking> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    for _ in 0..samples {
        let y: RatVec = (0..cfg.n)
            .map(|_| Rat::new(BigInt::from(rng.gen_range(-4_000i64..=4_000)), BigInt::from(1000)))
            .collect();
        if let Some(r) = ranking_by_distance(&cfg.mu, &y) {
            seen.insert(r);
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_vec, ratio};

    fn example_config() -> ObjectConfig {
        // Three objects on the line at -3, 1, 2 (already centered).
        ObjectConfig::new(vec![rat_vec(&[-3]), rat_vec(&[1]), rat_vec(&[2])]).unwrap()
    }

    #[test]
    fn config_construction_normalizes_centroid() {
        let cfg = ObjectConfig::new(vec![rat_vec(&[-2]), rat_vec(&[2]), rat_vec(&[3])]).unwrap();
        let centroid: Rat = cfg.objects().iter().map(|p| p[0].clone()).sum();
        assert!(centroid.is_zero());
        assert!(matches!(
            ObjectConfig::new(vec![rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])]),
            Err(UnfoldingError::WrongCodimension { m: 3, n: 2 })
        ));
    }

    #[test]
    fn offset_matches_unit_normalization() {
        // With the mean-square norm scaled to one the offset becomes
        // (-13, 11, 2)/28; our recentered offset is exactly s times it.
        let cfg = example_config();
        let (_, u) = build_wu(&cfg);
        let s = cfg.mean_square_norm();
        assert_eq!(s, ratio(14, 3));
        let normalized: RatVec = u.iter().map(|x| x / &s).collect();
        assert_eq!(normalized, vec![ratio(-13, 28), ratio(11, 28), ratio(2, 28)]);
        assert!(u.iter().sum::<Rat>().is_zero());
    }

    #[test]
    fn offset_for_flat_config_is_zero() {
        // All objects equal: after centering, W = 0 and u = 0.
        let points = vec![rat_vec(&[5]), rat_vec(&[5]), rat_vec(&[5])];
        let cfg = ObjectConfig::new(points).unwrap();
        let (w, u) = build_wu(&cfg);
        assert_eq!(w.rank(), 0);
        assert!(exact::is_zero_vec(&u));
        assert!(!check_genericity(&cfg).a1_holds);
    }

    #[test]
    fn direction_of_line_example() {
        // The slice direction is a positive multiple of (-1, 5, -4);
        // under unit normalization it is exactly (5/98)(-1, 5, -4),
        // and projection scales linearly, so ours is s times that.
        let cfg = example_config();
        let d = direction(&cfg).unwrap();
        assert_eq!(exact::primitive_direction(&d.v_unnormalized), rat_vec(&[-1, 5, -4]));
        let s = cfg.mean_square_norm();
        let normalized: RatVec = d.v_unnormalized.iter().map(|x| x / &s).collect();
        let expected: RatVec = rat_vec(&[-1, 5, -4]).iter().map(|x| x * ratio(5, 98)).collect();
        assert_eq!(normalized, expected);
        // Structural identities.
        assert!(d.u.iter().sum::<Rat>().is_zero());
        assert!(exact::is_zero_vec(&d.w.transpose().mul_vec(&d.v_unnormalized)));
    }

    #[test]
    fn zero_direction_for_in_span_offset() {
        let cfg = example_config();
        let (w, _) = build_wu(&cfg);
        // An offset inside the projection span: a column of w.
        let fake_u: RatVec = (0..3).map(|r| w.get(r, 0).clone()).collect();
        assert_eq!(direction_from_wu(&w, &fake_u), Err(UnfoldingError::ZeroDirection));
    }

    #[test]
    fn genericity_detects_parallel_difference_forest() {
        // Four points in the plane where edges {1,2} and {3,4} form a
        // forest with parallel difference vectors.
        let cfg = ObjectConfig::new(vec![
            rat_vec(&[0, 0]),
            rat_vec(&[2, 0]),
            rat_vec(&[0, 1]),
            rat_vec(&[1, 1]),
        ])
        .unwrap();
        let report = check_genericity(&cfg);
        assert!(!report.a1_holds);
        let violation = report.first_violation.unwrap();
        assert_eq!(violation.condition, GenericityCondition::Differences);
        assert_eq!(violation.edges, vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn line_example_is_generic() {
        let report = check_genericity(&example_config());
        assert!(report.a1_holds && report.a2_holds, "{report:?}");
        assert!(report.first_violation.is_none());
    }

    #[test]
    fn pattern_of_line_example() {
        let pattern = ranking_pattern_uf(&example_config()).unwrap();
        let excluded: Vec<String> = pattern.excluded().iter().map(|r| r.to_string()).collect();
        assert_eq!(excluded, vec!["(132)", "(312)"]);
    }

    #[test]
    fn pattern_invariant_under_translation_and_scaling() {
        let cfg = example_config();
        let base = ranking_pattern_uf(&cfg).unwrap();
        let shifted = cfg.translated(&rat_vec(&[7]));
        assert_eq!(ranking_pattern_uf(&shifted).unwrap(), base);
        for a in [ratio(3, 2), ratio(-2, 5)] {
            let scaled = cfg.scaled(&a).unwrap();
            assert_eq!(ranking_pattern_uf(&scaled).unwrap(), base, "scale {a}");
        }
        assert!(cfg.scaled(&Rat::zero()).is_err());
    }

    #[test]
    fn direction_is_permutation_equivariant() {
        let cfg = example_config();
        let d = direction(&cfg).unwrap();
        let sigma = [3u8, 1, 2];
        let permuted = direction(&cfg.permuted(&sigma)).unwrap();
        let mut expected = vec![Rat::zero(); 3];
        for j in 0..3 {
            expected[(sigma[j] - 1) as usize] = d.v_unnormalized[j].clone();
        }
        assert!(exact::positively_proportional(&permuted.v_unnormalized, &expected));
    }

    #[test]
    fn ideal_points_for_line_example() {
        let cfg = example_config();
        let r = Ranking::new(&[2, 1, 3]).unwrap();
        match witness_ideal_point(&cfg, &r).unwrap() {
            IdealPoint::Point(y) => {
                assert_eq!(ranking_by_distance(cfg.objects(), &y), Some(r));
            }
            IdealPoint::NotAdmissible => panic!("(213) is admissible"),
        }
        let bad = Ranking::new(&[1, 3, 2]).unwrap();
        assert_eq!(witness_ideal_point(&cfg, &bad).unwrap(), IdealPoint::NotAdmissible);
    }

    #[test]
    fn model_for_two_sided_direction_m4() {
        let v = rat_vec(&[2, 2, -1, -3]);
        let cfg = model_realizing_direction(&v).unwrap();
        assert!(check_genericity(&cfg).is_generic());
        let d = direction(&cfg).unwrap();
        assert!(exact::positively_proportional(
            &exact::primitive_direction(&d.v_unnormalized),
            &v
        ));
        let pattern = ranking_pattern_uf(&cfg).unwrap();
        assert_eq!(pattern, ranking_pattern(&v).unwrap());
    }

    #[test]
    fn model_for_single_positive_direction() {
        let v = rat_vec(&[3, -1, -1, -1]);
        let cfg = model_realizing_direction(&v).unwrap();
        let d = direction(&cfg).unwrap();
        assert!(exact::positively_proportional(
            &exact::primitive_direction(&d.v_unnormalized),
            &v
        ));
        // Exactly one negative coordinate cannot be realized.
        let bad = rat_vec(&[-3, 1, 1, 1]);
        assert_eq!(model_realizing_direction(&bad), Err(UnfoldingError::NotRealizable));
    }

    #[test]
    fn sampled_rankings_lie_in_pattern() {
        let cfg = example_config();
        let pattern = ranking_pattern_uf(&cfg).unwrap();
        let seen = sample_rankings(&cfg, 2000, 42);
        assert!(!seen.is_empty());
        for r in &seen {
            assert!(pattern.contains(r), "sampled {r} outside pattern");
        }
        // The one-dimensional example realizes all four rankings.
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn parse_points_handles_comments_and_fractions() {
        let text = "# objects\n-3\n 1 # middle\n2\n";
        let pts = parse_object_points(text).unwrap();
        assert_eq!(pts, vec![rat_vec(&[-3]), rat_vec(&[1]), rat_vec(&[2])]);
        let text2 = "1/2,0.25\n-1,2\n0,0\n3,3";
        let pts2 = parse_object_points(text2).unwrap();
        assert_eq!(pts2[0], vec![ratio(1, 2), ratio(1, 4)]);
        assert!(parse_object_points("1,x\n2,3\n4,5").is_err());
    }
}
