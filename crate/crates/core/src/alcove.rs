//! Type A~1 alcove-path combinatorics: residues, lattice paths on the
//! Pascal triangle, walls and reflection orbits, singular/regular
//! classification, full path intervals, and reduced expressions in the
//! symmetric group computed by the area-shrinking path algorithm.

use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlcoveError {
    #[error("parameters require 1 < m < e - 1, got e = {0}, m = {1}")]
    BadParams(usize, usize),
    #[error("n = {0} is smaller than e - m = {1}: the path never reaches a wall")]
    TooSmallN(usize, usize),
    #[error("invalid path heights: {0}")]
    BadPath(String),
    #[error("tableaux have different shapes")]
    ShapeMismatch,
    #[error("tableau does not belong to the residue orbit")]
    NotInOrbit,
}

/// Ambient parameters: `n` points, quantum characteristic `e`, and the
/// blob weight `m` with `1 < m < e - 1` (so the bi-charge `(0, m)` is
/// adjacency-free). The weight is fixed to the one-column bipartition
/// `(1^n, 1^0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlobParams {
    pub n: usize,
    pub e: usize,
    pub m: usize,
}

/// Outcome of the integer division `n - (e - m) = K e + R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub k: usize,
    pub r: usize,
}

impl Classification {
    pub fn singular(&self) -> bool {
        self.r == 0
    }
}

impl BlobParams {
    pub fn new(n: usize, e: usize, m: usize) -> Result<Self, AlcoveError> {
        if m <= 1 || m + 1 >= e {
            return Err(AlcoveError::BadParams(e, m));
        }
        Ok(BlobParams { n, e, m })
    }

    /// `K` and `R` with `n - (e - m) = K e + R`; singular iff `R = 0`.
    pub fn classify(&self) -> Result<Classification, AlcoveError> {
        let gap = self.e - self.m;
        if self.n < gap {
            return Err(AlcoveError::TooSmallN(self.n, gap));
        }
        let d = self.n - gap;
        Ok(Classification { k: d / self.e, r: d % self.e })
    }

    /// Wall-contact step counts `f(j) = -m + j e`.
    pub fn f(&self, j: usize) -> usize {
        j * self.e - self.m
    }

    /// The full path intervals `B_1 .. B_K` and, in the regular case,
    /// the partial interval `B_last`.
    pub fn path_intervals(
        &self,
    ) -> Result<(Vec<(usize, usize)>, Option<(usize, usize)>), AlcoveError> {
        let cls = self.classify()?;
        let full = (1..=cls.k)
            .map(|i| (self.f(i) + 1, self.f(i) + self.e))
            .collect();
        let last = if cls.singular() {
            None
        } else {
            Some((self.f(cls.k + 1) + 1, self.n))
        };
        Ok((full, last))
    }

    /// Whether `x` lies on a wall `M_j = { (j-1) e + m }`.
    pub fn is_wall(&self, x: i64) -> bool {
        (x - self.m as i64).rem_euclid(self.e as i64) == 0
    }

    /// Residue sequence of the fixed weight: `(0, -1, -2, ...)` mod `e`.
    pub fn lambda_residues(&self) -> Vec<usize> {
        (0..self.n)
            .map(|k| (-(k as i64)).rem_euclid(self.e as i64) as usize)
            .collect()
    }
}

/// A standard one-column-bipartition tableau, stored as its lattice path
/// `p(0..=n)` with `p(0) = 0` and unit steps: a step up means the entry
/// sits in the second column.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct PathTableau {
    heights: Vec<i64>,
}

impl PathTableau {
    pub fn new(heights: Vec<i64>) -> Result<Self, AlcoveError> {
        if heights.first() != Some(&0) {
            return Err(AlcoveError::BadPath("path must start at 0".into()));
        }
        for w in heights.windows(2) {
            if (w[1] - w[0]).abs() != 1 {
                return Err(AlcoveError::BadPath("steps must be +-1".into()));
            }
        }
        Ok(PathTableau { heights })
    }

    /// The path of `t^lambda` for `lambda = (1^n, 1^0)`: straight down.
    pub fn lambda(n: usize) -> Self {
        PathTableau { heights: (0..=n as i64).map(|k| -k).collect() }
    }

    /// The path of the row-reading tableau `t^mu`: the maximal zigzag
    /// (odd entries in the first column, so it alternates 0, -1) followed
    /// by a straight run to the endpoint.
    pub fn row_reading(n: usize, endpoint: i64) -> Self {
        assert_eq!((n as i64 + endpoint).rem_euclid(2), 0, "parity mismatch");
        assert!(endpoint.unsigned_abs() as usize <= n);
        let zig = n - endpoint.unsigned_abs() as usize; // 2 * min(mu1, mu2)
        let dir = endpoint.signum();
        let mut heights = vec![0i64];
        for k in 1..=n {
            if k <= zig {
                heights.push(-((k % 2) as i64));
            } else {
                heights.push(dir * (k - zig) as i64);
            }
        }
        PathTableau { heights }
    }

    pub fn n(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn endpoint(&self) -> i64 {
        *self.heights.last().unwrap()
    }

    /// `(mu1, mu2)` with the endpoint equal to `mu2 - mu1`.
    pub fn shape(&self) -> (usize, usize) {
        let n = self.n() as i64;
        let p = self.endpoint();
        (((n - p) / 2) as usize, ((n + p) / 2) as usize)
    }

    /// +1 steps put `k` in the second column.
    pub fn step(&self, k: usize) -> i64 {
        self.heights[k] - self.heights[k - 1]
    }

    /// Residues `i^t` with `res(r, 1) = -(r-1)` and `res(r, 2) = m-(r-1)`.
    pub fn residue_sequence(&self, p: &BlobParams) -> Vec<usize> {
        let e = p.e as i64;
        (1..=self.n())
            .map(|k| {
                let h = self.heights[k];
                if self.step(k) > 0 {
                    let row = (k as i64 + h) / 2;
                    (p.m as i64 - (row - 1)).rem_euclid(e) as usize
                } else {
                    let row = (k as i64 - h) / 2;
                    (1 - row).rem_euclid(e) as usize
                }
            })
            .collect()
    }

    /// One-line permutation `d(t)` defined by `t = t^shape . d(t)`: entry
    /// `k` maps to the row-reading position of its box, so that flipping
    /// the path at `k` is right multiplication by `s_k`.
    pub fn permutation(&self) -> Perm {
        let n = self.n();
        let (mu1, mu2) = self.shape();
        // row-reading position of a box
        let pos = |row: usize, col: usize| -> usize {
            let before: usize = (1..row)
                .map(|r| usize::from(r <= mu1) + usize::from(r <= mu2))
                .sum();
            before + usize::from(col == 2 && row <= mu1)
        };
        let mut word = vec![0; n];
        for k in 1..=n {
            let h = self.heights[k];
            let (row, col) = if self.step(k) > 0 {
                (((k as i64 + h) / 2) as usize, 2usize)
            } else {
                (((k as i64 - h) / 2) as usize, 1usize)
            };
            word[k - 1] = pos(row, col);
        }
        Perm(word)
    }

    /// Reflects the tail after step `k` through the wall at `p(k)`.
    pub fn reflect_tail(&self, k: usize) -> PathTableau {
        let pivot = self.heights[k];
        let mut heights = self.heights.clone();
        for h in heights.iter_mut().skip(k + 1) {
            *h = 2 * pivot - *h;
        }
        PathTableau { heights }
    }

    /// Central paths stay within one wall of the fundamental strip: all
    /// interior direction changes happen at heights in `[m-2e, m+e]`.
    /// In the regular case centrality is inherited from the truncated
    /// path on the first `n - R` steps.
    pub fn is_central(&self, p: &BlobParams) -> Result<bool, AlcoveError> {
        let cls = p.classify()?;
        let t = if cls.singular() { self.clone() } else { self.truncate(p.n - cls.r) };
        let lo = p.m as i64 - 2 * p.e as i64;
        let hi = p.m as i64 + p.e as i64;
        for k in 1..t.n() {
            if t.step(k) != t.step(k + 1) {
                let h = t.heights[k];
                if h < lo || h > hi {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn truncate(&self, len: usize) -> PathTableau {
        PathTableau { heights: self.heights[..=len].to_vec() }
    }

    /// Regular-case kind of the final straight run: inner paths move
    /// toward the central axis over the last `R` steps.
    pub fn regular_kind(&self, p: &BlobParams) -> Result<RegularKind, AlcoveError> {
        let cls = p.classify()?;
        if cls.singular() {
            return Err(AlcoveError::BadPath("kind is only defined in the regular case".into()));
        }
        let nbar = p.n - cls.r;
        let at_wall = self.heights[nbar];
        Ok(if self.endpoint().abs() < at_wall.abs() {
            RegularKind::Inner
        } else {
            RegularKind::Outer
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegularKind {
    Inner,
    Outer,
}

/// The residue-orbit `Std(i^lambda)` grouped by shape in the dominance
/// enumeration `mu_0 = lambda, mu_1, ...`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub params: BlobParams,
    pub shapes: Vec<OrbitShape>,
}

#[derive(Clone, Debug)]
pub struct OrbitShape {
    pub endpoint: i64,
    pub mu: (usize, usize),
    pub tableaux: Vec<PathTableau>,
}

impl Orbit {
    pub fn all_tableaux(&self) -> impl Iterator<Item = &PathTableau> {
        self.shapes.iter().flat_map(|s| s.tableaux.iter())
    }

    pub fn shape_of(&self, t: &PathTableau) -> Option<usize> {
        self.shapes.iter().position(|s| s.tableaux.contains(t))
    }

    pub fn sum_of_squares(&self) -> usize {
        self.shapes.iter().map(|s| s.tableaux.len() * s.tableaux.len()).sum()
    }
}

/// Closure of the weight path under partial reflections at wall
/// contacts, grouped by endpoint.
pub fn enumerate_std(p: &BlobParams) -> Result<Orbit, AlcoveError> {
    p.classify()?;
    let start = PathTableau::lambda(p.n);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    seen.insert(start.heights.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for k in 1..=t.n() {
            if p.is_wall(t.heights[k]) {
                let r = t.reflect_tail(k);
                if seen.insert(r.heights.clone()) {
                    queue.push_back(r);
                }
            }
        }
    }
    // group by endpoint, ordered by decreasing |endpoint| with the
    // positive one first on ties
    let mut endpoints: Vec<i64> = seen.iter().map(|h| *h.last().unwrap()).collect();
    endpoints.sort_unstable();
    endpoints.dedup();
    endpoints.sort_by_key(|&x| (std::cmp::Reverse(x.abs()), std::cmp::Reverse(x)));
    let shapes = endpoints
        .into_iter()
        .map(|endpoint| {
            let tableaux: Vec<PathTableau> = seen
                .iter()
                .filter(|h| *h.last().unwrap() == endpoint)
                .map(|h| PathTableau { heights: h.clone() })
                .collect();
            let mu = tableaux[0].shape();
            OrbitShape { endpoint, mu, tableaux }
        })
        .collect();
    Ok(Orbit { params: *p, shapes })
}

/// Direct filter of all `2^n` paths by residue sequence; exponential,
/// used to cross-validate [`enumerate_std`] at small `n`.
pub fn std_by_residue_filter(p: &BlobParams) -> Vec<PathTableau> {
    let target = p.lambda_residues();
    let mut out = vec![];
    for mask in 0u64..(1 << p.n) {
        let mut heights = vec![0i64];
        for k in 0..p.n {
            let step = if mask >> k & 1 == 1 { 1 } else { -1 };
            heights.push(heights[k] + step);
        }
        let t = PathTableau { heights };
        if t.residue_sequence(p) == target {
            out.push(t);
        }
    }
    out.sort();
    out
}

/// A reduced expression for the permutation carrying `from` to `to`,
/// computed by repeatedly flipping the smallest admissible corner that
/// shrinks the enclosed area. The output length always equals the
/// inversion count of the connecting permutation.
pub fn reduced_expression(
    from: &PathTableau,
    to: &PathTableau,
) -> Result<Vec<usize>, AlcoveError> {
    if from.n() != to.n() || from.endpoint() != to.endpoint() {
        return Err(AlcoveError::ShapeMismatch);
    }
    let n = from.n();
    let mut cur = from.heights.clone();
    let mut word = vec![];
    loop {
        let mut flipped = false;
        for i in 1..n {
            if cur[i] != to.heights[i] && cur[i - 1] == cur[i + 1] {
                // flip the corner toward the target
                let flip_to = 2 * cur[i - 1] - cur[i];
                let toward = (cur[i] - to.heights[i]).abs() > (flip_to - to.heights[i]).abs();
                if toward {
                    cur[i] = flip_to;
                    word.push(i);
                    flipped = true;
                    break;
                }
            }
        }
        if !flipped {
            break;
        }
    }
    if cur != to.heights {
        return Err(AlcoveError::BadPath("no admissible flip found (bug)".into()));
    }
    Ok(word)
}
