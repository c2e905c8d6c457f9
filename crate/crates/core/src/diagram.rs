//! Blob diagrams: planar perfect matchings on `n` bottom and `n` top
//! boundary points where arcs exposed to the left side may carry a mark.
//!
//! Points live on a rectangle, bottom points `b1..bn` left to right and
//! top points `t1..tn` left to right. Internally every point is a single
//! linear position obtained by walking the boundary counterclockwise
//! starting at `b1`: positions `0..n` are `b1..bn`, positions `n..2n` are
//! `tn..t1`. The left edge of the rectangle sits between the last
//! position (`t1`) and position 0 (`b1`). Planarity and left-exposure are
//! interval conditions in this linear order.

use crate::scalar::binomial;
use num::BigInt;
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// A boundary point, 1-based on either edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Bottom(usize),
    Top(usize),
}

impl Point {
    pub fn position(self, n: usize) -> usize {
        match self {
            Point::Bottom(i) => i - 1,
            Point::Top(i) => 2 * n - i,
        }
    }

    pub fn from_position(pos: usize, n: usize) -> Point {
        if pos < n {
            Point::Bottom(pos + 1)
        } else {
            Point::Top(2 * n - pos)
        }
    }

    pub fn label(self) -> String {
        match self {
            Point::Bottom(i) => format!("b{i}"),
            Point::Top(i) => format!("t{i}"),
        }
    }

    pub fn parse(text: &str) -> Option<Point> {
        let (side, idx) = text.split_at(1);
        let i: usize = idx.parse().ok()?;
        if i == 0 {
            return None;
        }
        match side {
            "b" | "B" => Some(Point::Bottom(i)),
            "t" | "T" => Some(Point::Top(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("pairs do not form a perfect matching on the 2n boundary points")]
    NotPerfectMatching,
    #[error("matching is not planar: arcs {0:?} and {1:?} interleave")]
    NotPlanar((usize, usize), (usize, usize)),
    #[error("mark on arc {0:?} which is not left-exposed")]
    MarkNotLeftExposed((usize, usize)),
    #[error("duplicate mark on arc {0:?}")]
    DuplicateMark((usize, usize)),
    #[error("mark {0:?} is not an arc of the matching")]
    UnknownMarkArc((usize, usize)),
    #[error("point index out of range for n = {0}")]
    PointOutOfRange(usize),
    #[error("half-diagrams do not join: {0}")]
    BadJoin(String),
}

/// A marked planar perfect matching on `2n` boundary points. Instances
/// are canonical: pair lists sorted with sorted endpoints, marks sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BlobDiagram {
    n: usize,
    /// Arcs as `(lo, hi)` linear positions, sorted.
    pairs: Vec<(usize, usize)>,
    /// Marked arcs, a sorted subset of `pairs`.
    marks: Vec<(usize, usize)>,
}

impl BlobDiagram {
    /// Validates and canonicalizes. This is the only way to construct a
    /// diagram from raw data.
    pub fn new(
        n: usize,
        pairs: &[(Point, Point)],
        marks: &[(Point, Point)],
    ) -> Result<Self, DiagramError> {
        let in_range = |p: Point| match p {
            Point::Bottom(i) | Point::Top(i) => i >= 1 && i <= n,
        };
        for &(a, b) in pairs.iter().chain(marks) {
            if !in_range(a) || !in_range(b) {
                return Err(DiagramError::PointOutOfRange(n));
            }
        }
        let norm = |&(a, b): &(Point, Point)| {
            let (x, y) = (a.position(n), b.position(n));
            (x.min(y), x.max(y))
        };
        let mut ps: Vec<(usize, usize)> = pairs.iter().map(norm).collect();
        ps.sort_unstable();
        let mut ms: Vec<(usize, usize)> = marks.iter().map(norm).collect();
        ms.sort_unstable();
        Self::from_positions(n, ps, ms)
    }

    pub(crate) fn from_positions(
        n: usize,
        pairs: Vec<(usize, usize)>,
        marks: Vec<(usize, usize)>,
    ) -> Result<Self, DiagramError> {
        // perfect matching: every position exactly once
        let mut seen = vec![false; 2 * n];
        if pairs.len() != n {
            return Err(DiagramError::NotPerfectMatching);
        }
        for &(a, b) in &pairs {
            if a == b || b >= 2 * n || seen[a] || seen[b] {
                return Err(DiagramError::NotPerfectMatching);
            }
            seen[a] = true;
            seen[b] = true;
        }
        // planarity: no two arcs interleave in the linear order
        for (i, &(a1, b1)) in pairs.iter().enumerate() {
            for &(a2, b2) in &pairs[i + 1..] {
                if a1 < a2 && a2 < b1 && b1 < b2 {
                    return Err(DiagramError::NotPlanar((a1, b1), (a2, b2)));
                }
            }
        }
        // marks: distinct, on arcs, left-exposed
        for w in marks.windows(2) {
            if w[0] == w[1] {
                return Err(DiagramError::DuplicateMark(w[0]));
            }
        }
        let exposed = exposed_arcs(&pairs);
        for m in &marks {
            if !pairs.contains(m) {
                return Err(DiagramError::UnknownMarkArc(*m));
            }
            if !exposed.contains(m) {
                return Err(DiagramError::MarkNotLeftExposed(*m));
            }
        }
        Ok(BlobDiagram { n, pairs, marks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn marks(&self) -> &[(usize, usize)] {
        &self.marks
    }

    pub fn mark_count(&self) -> usize {
        self.marks.len()
    }

    pub fn pair_points(&self) -> Vec<(Point, Point)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (Point::from_position(a, self.n), Point::from_position(b, self.n)))
            .collect()
    }

    /// The identity diagram: `bi -- ti` for every `i`, no marks.
    pub fn identity(n: usize) -> Self {
        let pairs = (1..=n)
            .map(|i| {
                let (a, b) = (Point::Bottom(i).position(n), Point::Top(i).position(n));
                (a.min(b), a.max(b))
            })
            .collect::<Vec<_>>();
        let mut pairs = pairs;
        pairs.sort_unstable();
        BlobDiagram { n, pairs, marks: vec![] }
    }

    /// Image of the generator `U_i`: for `i = 0` the identity with a mark
    /// on the first through line, for `i >= 1` the cup/cap diagram at
    /// positions `i, i+1`.
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(i < n, "generator index {i} out of range for n = {n}");
        if i == 0 {
            let d = Self::identity(n);
            let first = (Point::Bottom(1).position(n), Point::Top(1).position(n));
            let arc = (first.0.min(first.1), first.0.max(first.1));
            BlobDiagram { marks: vec![arc], ..d }
        } else {
            let mut pairs = Vec::with_capacity(n);
            let pos = |p: Point| p.position(n);
            pairs.push((pos(Point::Bottom(i)), pos(Point::Bottom(i + 1))));
            let (a, b) = (pos(Point::Top(i)), pos(Point::Top(i + 1)));
            pairs.push((a.min(b), a.max(b)));
            for j in 1..=n {
                if j != i && j != i + 1 {
                    let (a, b) = (pos(Point::Bottom(j)), pos(Point::Top(j)));
                    pairs.push((a.min(b), a.max(b)));
                }
            }
            pairs.sort_unstable();
            BlobDiagram { n, pairs, marks: vec![] }
        }
    }

    pub fn is_through(&self, arc: (usize, usize)) -> bool {
        arc.0 < self.n && arc.1 >= self.n
    }

    pub fn through_arcs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().copied().filter(|&a| self.is_through(a)).collect()
    }

    /// Arcs bordering the leftmost face: exactly those not strictly
    /// enclosed by another arc in the linear order.
    pub fn left_exposed_arcs(&self) -> Vec<(usize, usize)> {
        exposed_arcs(&self.pairs)
    }

    /// Reflection along a horizontal axis; marks follow their arcs.
    pub fn involution(&self) -> Self {
        let flip = |p: usize| 2 * self.n - 1 - p;
        let map = |&(a, b): &(usize, usize)| {
            let (x, y) = (flip(a), flip(b));
            (x.min(y), x.max(y))
        };
        let mut pairs: Vec<_> = self.pairs.iter().map(map).collect();
        let mut marks: Vec<_> = self.marks.iter().map(map).collect();
        pairs.sort_unstable();
        marks.sort_unstable();
        BlobDiagram { n: self.n, pairs, marks }
    }

    /// Splits into top and bottom half-diagrams plus the signed through
    /// count `k`: negative iff the leftmost through arc is marked (the
    /// mark is removed before splitting).
    pub fn split_halves(&self) -> (HalfDiagram, HalfDiagram, isize) {
        let n = self.n;
        let through: Vec<_> = self.through_arcs();
        let t = through.len() as isize;
        let leftmost_through = through.iter().copied().min();
        let k = match leftmost_through {
            Some(arc) if self.marks.contains(&arc) => -t,
            _ => t,
        };
        let mut bot_arcs = vec![];
        let mut bot_marks = vec![];
        let mut top_arcs = vec![];
        let mut top_marks = vec![];
        for &(a, b) in &self.pairs {
            let marked = self.marks.contains(&(a, b));
            if b < n {
                // bottom-bottom: positions are indices - 1
                bot_arcs.push((a + 1, b + 1));
                if marked {
                    bot_marks.push((a + 1, b + 1));
                }
            } else if a >= n {
                // top-top: position p is point t_{2n-p}
                let (i, j) = (2 * n - b, 2 * n - a);
                top_arcs.push((i, j));
                if marked {
                    top_marks.push((i, j));
                }
            }
        }
        let mut bot_free: Vec<usize> =
            through.iter().map(|&(a, _)| a + 1).collect();
        let mut top_free: Vec<usize> =
            through.iter().map(|&(_, b)| 2 * n - b).collect();
        bot_free.sort_unstable();
        top_free.sort_unstable();
        bot_arcs.sort_unstable();
        top_arcs.sort_unstable();
        bot_marks.sort_unstable();
        top_marks.sort_unstable();
        let top = HalfDiagram { n, k, arcs: top_arcs, marks: top_marks, free_points: top_free };
        let bottom = HalfDiagram { n, k, arcs: bot_arcs, marks: bot_marks, free_points: bot_free };
        (top, bottom, k)
    }

    /// Inverse of [`split_halves`](Self::split_halves).
    pub fn join_halves(top: &HalfDiagram, bottom: &HalfDiagram) -> Result<Self, DiagramError> {
        if top.n != bottom.n || top.k != bottom.k {
            return Err(DiagramError::BadJoin("mismatched n or k".into()));
        }
        let n = top.n;
        if top.free_points.len() != bottom.free_points.len() {
            return Err(DiagramError::BadJoin("free point counts differ".into()));
        }
        let mut pairs = vec![];
        let mut marks = vec![];
        for (half, is_top) in [(bottom, false), (top, true)] {
            for &(i, j) in &half.arcs {
                let (a, b) = if is_top {
                    (Point::Top(i).position(n), Point::Top(j).position(n))
                } else {
                    (Point::Bottom(i).position(n), Point::Bottom(j).position(n))
                };
                let key = (a.min(b), a.max(b));
                pairs.push(key);
                if half.marks.contains(&(i, j)) {
                    marks.push(key);
                }
            }
        }
        let mut through_keys = vec![];
        for (&bi, &ti) in bottom.free_points.iter().zip(&top.free_points) {
            let (a, b) = (Point::Bottom(bi).position(n), Point::Top(ti).position(n));
            through_keys.push((a.min(b), a.max(b)));
        }
        if top.k < 0 {
            let leftmost = through_keys
                .iter()
                .copied()
                .min()
                .ok_or_else(|| DiagramError::BadJoin("k < 0 with no through arcs".into()))?;
            marks.push(leftmost);
        }
        pairs.extend(through_keys);
        pairs.sort_unstable();
        marks.sort_unstable();
        Self::from_positions(n, pairs, marks)
    }
}

fn exposed_arcs(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !pairs.iter().any(|&(a2, b2)| a2 < a && b < b2)
        })
        .collect()
}

/// One boundary line of a cut diagram: same-side arcs on points `1..=n`,
/// plus the former through-line feet as free points. The sign of `k`
/// records a removed mark on the leftmost through arc.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfDiagram {
    pub n: usize,
    pub k: isize,
    pub arcs: Vec<(usize, usize)>,
    pub marks: Vec<(usize, usize)>,
    pub free_points: Vec<usize>,
}

impl HalfDiagram {
    pub fn new(
        n: usize,
        k: isize,
        arcs: Vec<(usize, usize)>,
        marks: Vec<(usize, usize)>,
    ) -> Result<Self, DiagramError> {
        let mut covered = vec![false; n + 1];
        for &(a, b) in &arcs {
            if a == 0 || b > n || a >= b {
                return Err(DiagramError::NotPerfectMatching);
            }
            if covered[a] || covered[b] {
                return Err(DiagramError::NotPerfectMatching);
            }
            covered[a] = true;
            covered[b] = true;
        }
        for (i, &(a1, b1)) in arcs.iter().enumerate() {
            for &(a2, b2) in &arcs[i + 1..] {
                if a1 < a2 && a2 < b1 && b1 < b2 {
                    return Err(DiagramError::NotPlanar((a1, b1), (a2, b2)));
                }
            }
        }
        let free_points: Vec<usize> = (1..=n).filter(|&i| !covered[i]).collect();
        if free_points.len() != k.unsigned_abs() {
            return Err(DiagramError::BadJoin("free point count must equal |k|".into()));
        }
        for m in &marks {
            if !arcs.contains(m) {
                return Err(DiagramError::UnknownMarkArc(*m));
            }
        }
        let mut h = HalfDiagram { n, k, arcs, marks, free_points };
        h.arcs.sort_unstable();
        h.marks.sort_unstable();
        Ok(h)
    }

    /// The two-column-tableau walk of the half-diagram: heights
    /// `p(0..=n)` with a step down exactly at right endpoints of arcs.
    /// Marks are ignored.
    pub fn walk(&self) -> Vec<i64> {
        let mut right = vec![false; self.n + 1];
        for &(_, b) in &self.arcs {
            right[b] = true;
        }
        let mut heights = Vec::with_capacity(self.n + 1);
        let mut h = 0i64;
        heights.push(h);
        for i in 1..=self.n {
            h += if right[i] { -1 } else { 1 };
            heights.push(h);
        }
        heights
    }

    /// Contact points of the walk with the zero line, including 0.
    pub fn contacts(&self) -> Vec<usize> {
        self.walk()
            .iter()
            .enumerate()
            .filter(|&(_, &h)| h == 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// All valid blob diagrams on `n` points, canonically sorted. The count
/// is the central binomial coefficient `C(2n, n)`.
pub fn enumerate_diagrams(n: usize) -> Vec<BlobDiagram> {
    let mut matchings = vec![];
    let mut current = vec![];
    noncrossing_matchings(&(0..2 * n).collect::<Vec<_>>(), &mut current, &mut matchings);
    let mut out = vec![];
    for pairs in matchings {
        let mut pairs = pairs;
        pairs.sort_unstable();
        let exposed = exposed_arcs(&pairs);
        for subset in 0..(1u64 << exposed.len()) {
            let marks: Vec<_> = exposed
                .iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            let mut marks = marks;
            marks.sort_unstable();
            out.push(BlobDiagram { n, pairs: pairs.clone(), marks });
        }
    }
    out.sort_unstable();
    out
}

pub fn expected_diagram_count(n: usize) -> BigInt {
    binomial(2 * n as u64, n as u64)
}

fn noncrossing_matchings(
    points: &[usize],
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if points.is_empty() {
        out.push(current.clone());
        return;
    }
    let first = points[0];
    for j in (1..points.len()).step_by(2) {
        let partner = points[j];
        current.push((first, partner));
        let inside: Vec<usize> = points[1..j].to_vec();
        let outside: Vec<usize> = points[j + 1..].to_vec();
        // fully independent recursion on the two sides of the new arc
        let mut inner_results = vec![];
        let mut scratch = vec![];
        noncrossing_matchings(&inside, &mut scratch, &mut inner_results);
        for inner in inner_results {
            let mut cur2 = current.clone();
            cur2.extend(inner);
            noncrossing_matchings(&outside, &mut cur2, out);
        }
        current.pop();
    }
}

impl Serialize for BlobDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // endpoints ordered bottoms-then-tops by index for readability
        let key = |p: &Point| match *p {
            Point::Bottom(i) => (0, i),
            Point::Top(i) => (1, i),
        };
        let pair_labels = |list: &[(usize, usize)]| -> Vec<[String; 2]> {
            list.iter()
                .map(|&(a, b)| {
                    let (pa, pb) =
                        (Point::from_position(a, self.n), Point::from_position(b, self.n));
                    let (pa, pb) = if key(&pa) <= key(&pb) { (pa, pb) } else { (pb, pa) };
                    [pa.label(), pb.label()]
                })
                .collect()
        };
        let mut st = serializer.serialize_struct("BlobDiagram", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("pairs", &pair_labels(&self.pairs))?;
        st.serialize_field("marks", &pair_labels(&self.marks))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BlobDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            pairs: Vec<[String; 2]>,
            #[serde(default)]
            marks: Vec<[String; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let parse_list = |list: &[[String; 2]]| -> Result<Vec<(Point, Point)>, D::Error> {
            list.iter()
                .map(|[a, b]| {
                    let pa = Point::parse(a)
                        .ok_or_else(|| D::Error::custom(format!("bad point label {a:?}")))?;
                    let pb = Point::parse(b)
                        .ok_or_else(|| D::Error::custom(format!("bad point label {b:?}")))?;
                    Ok((pa, pb))
                })
                .collect()
        };
        let pairs = parse_list(&raw.pairs)?;
        let marks = parse_list(&raw.marks)?;
        BlobDiagram::new(raw.n, &pairs, &marks).map_err(D::Error::custom)
    }
}
