//! Linear combinations of blob diagrams over exact rationals, and the
//! nil-blob, classical blob, and extended nil-blob multiplication rules.
//!
//! Products of basis diagrams are always a scalar times a single
//! diagram, so an [`Engine`] memoizes the parameter-independent part of
//! each diagram-pair product (loop counts, mark collisions, resulting
//! diagram); the full memo table is the algebra's structure-constant
//! table.

use crate::diagram::{BlobDiagram, DiagramError};
use crate::scalar::{gaussian_int, int, pow, Scalar};
use num::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("operands live on different point counts")]
    SizeMismatch,
    #[error("multiplication produced a mark on a non-left-exposed arc: {0}")]
    MarkNotLeftExposed(String),
    #[error("singular blob parameter: {0}")]
    SingularParameter(String),
}

/// Raw concatenation of `d1` stacked on top of `d2`: the composite
/// matching with per-arc accumulated mark counts plus the internal
/// loops with their mark counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatResult {
    pub n: usize,
    /// Boundary-to-boundary strands as position pairs with mark counts.
    pub arcs: Vec<((usize, usize), u32)>,
    /// Mark count of every internal loop.
    pub loops: Vec<u32>,
}

pub fn concatenate(d1: &BlobDiagram, d2: &BlobDiagram) -> Result<ConcatResult, AlgebraError> {
    if d1.n() != d2.n() {
        return Err(AlgebraError::SizeMismatch);
    }
    let n = d1.n();
    // partner map per diagram: position -> (partner, marked)
    let partner_map = |d: &BlobDiagram| {
        let mut map = vec![(0usize, false); 2 * n];
        for &(a, b) in d.pairs() {
            let marked = d.marks().contains(&(a, b));
            map[a] = (b, marked);
            map[b] = (a, marked);
        }
        map
    };
    let partners = [partner_map(d1), partner_map(d2)];
    // node = (which diagram 0/1, position); d1 is stacked on top, so its
    // bottom points glue to d2's top points: (0, p) <-> (1, 2n-1-p)
    let is_outer = |(which, pos): (usize, usize)| if which == 0 { pos >= n } else { pos < n };
    let glue = |(which, pos): (usize, usize)| (1 - which, 2 * n - 1 - pos);
    let mut visited = vec![false; 4 * n];
    let idx = |(which, pos): (usize, usize)| which * 2 * n + pos;

    // walks a strand: pair edge, then glue edge while the endpoint is
    // interior; returns the last node reached and the mark count
    let walk = |start: (usize, usize), visited: &mut Vec<bool>| -> ((usize, usize), u32) {
        let mut marks = 0u32;
        let mut node = start;
        loop {
            visited[idx(node)] = true;
            let (partner, marked) = partners[node.0][node.1];
            if marked {
                marks += 1;
            }
            node = (node.0, partner);
            visited[idx(node)] = true;
            if is_outer(node) {
                return (node, marks);
            }
            node = glue(node);
            if node == start {
                return (node, marks);
            }
        }
    };

    let mut arcs = vec![];
    let outer_starts: Vec<(usize, usize)> =
        (n..2 * n).map(|p| (0, p)).chain((0..n).map(|p| (1, p))).collect();
    for start in outer_starts {
        if visited[idx(start)] {
            continue;
        }
        let (end, marks) = walk(start, &mut visited);
        debug_assert!(is_outer(end));
        let (a, b) = (start.1, end.1);
        arcs.push(((a.min(b), a.max(b)), marks));
    }
    // strands not reachable from the boundary are internal loops
    let mut loops = vec![];
    for which in 0..2 {
        for pos in 0..2 * n {
            let node = (which, pos);
            if visited[idx(node)] || is_outer(node) {
                continue;
            }
            let (_, marks) = walk(node, &mut visited);
            loops.push(marks);
        }
    }
    arcs.sort_unstable();
    loops.sort_unstable();
    Ok(ConcatResult { n, arcs, loops })
}

/// Parameter-independent collapse of a concatenation: loop counts, a
/// multi-marked-arc flag, and the composite diagram with marks already
/// collapsed to at most one per arc.
#[derive(Clone, Debug)]
pub struct PairProduct {
    pub unmarked_loops: u32,
    pub marked_loops: u32,
    pub multi_marked_arc: bool,
    pub diagram: BlobDiagram,
}

pub fn pair_product(d1: &BlobDiagram, d2: &BlobDiagram) -> Result<PairProduct, AlgebraError> {
    let cr = concatenate(d1, d2)?;
    let unmarked_loops = cr.loops.iter().filter(|&&m| m == 0).count() as u32;
    let marked_loops = cr.loops.len() as u32 - unmarked_loops;
    let multi_marked_arc = cr.arcs.iter().any(|&(_, m)| m > 1);
    let pairs: Vec<(usize, usize)> = cr.arcs.iter().map(|&(a, _)| a).collect();
    let marks: Vec<(usize, usize)> = cr
        .arcs
        .iter()
        .filter(|&&(_, m)| m > 0)
        .map(|&(a, _)| a)
        .collect();
    let diagram = BlobDiagram::from_positions(cr.n, pairs, marks).map_err(|e| match e {
        DiagramError::MarkNotLeftExposed(a) => AlgebraError::MarkNotLeftExposed(format!("{a:?}")),
        other => AlgebraError::MarkNotLeftExposed(other.to_string()),
    })?;
    Ok(PairProduct { unmarked_loops, marked_loops, multi_marked_arc, diagram })
}

/// Nil-blob product of two basis diagrams: `None` when the term dies
/// (marked loop or doubly marked arc), else `(-2)^loops` times a diagram.
pub fn mul_diagrams_nilblob(
    d1: &BlobDiagram,
    d2: &BlobDiagram,
) -> Result<Option<(Scalar, BlobDiagram)>, AlgebraError> {
    let p = pair_product(d1, d2)?;
    Ok(nilblob_term(&p))
}

fn nilblob_term(p: &PairProduct) -> Option<(Scalar, BlobDiagram)> {
    if p.marked_loops > 0 || p.multi_marked_arc {
        return None;
    }
    Some((pow(&int(-2), p.unmarked_loops as i64), p.diagram.clone()))
}

/// A finite formal linear combination of blob diagrams with nonzero
/// exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<BlobDiagram, Scalar>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_diagram(BlobDiagram::identity(n))
    }

    pub fn from_diagram(d: BlobDiagram) -> Self {
        let mut terms = BTreeMap::new();
        let n = d.n();
        terms.insert(d, Scalar::one());
        AlgebraElement { n, terms }
    }

    pub fn from_term(c: Scalar, d: BlobDiagram) -> Self {
        let mut e = AlgebraElement::zero(d.n());
        e.add_term(c, d);
        e
    }

    pub fn generator(n: usize, i: usize) -> Self {
        Self::from_diagram(BlobDiagram::generator(n, i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BlobDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, d: &BlobDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, c: Scalar, d: BlobDiagram) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(d.n(), self.n);
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let updated = o.get().clone() + c;
                if updated.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = updated;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(c.clone(), d.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.n);
        }
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(d, x)| (d.clone(), x.clone() * c)).collect(),
        }
    }

    pub fn add_scalar(&self, c: &Scalar) -> AlgebraElement {
        let mut out = self.clone();
        out.add_term(c.clone(), BlobDiagram::identity(self.n));
        out
    }

    /// Degree of a homogeneous element under `deg U_0 = 2`, which is
    /// twice the common mark count of its terms; `None` if mixed or zero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let first = it.next()?.mark_count();
        if it.all(|d| d.mark_count() == first) {
            Some(2 * first as i64)
        } else {
            None
        }
    }
}

/// Element of the extended nil-blob algebra, `a0 + a1 * J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtAlgebraElement {
    pub a0: AlgebraElement,
    pub a1: AlgebraElement,
}

impl ExtAlgebraElement {
    pub fn zero(n: usize) -> Self {
        ExtAlgebraElement { a0: AlgebraElement::zero(n), a1: AlgebraElement::zero(n) }
    }

    pub fn one(n: usize) -> Self {
        ExtAlgebraElement { a0: AlgebraElement::one(n), a1: AlgebraElement::zero(n) }
    }

    pub fn j(n: usize) -> Self {
        ExtAlgebraElement { a0: AlgebraElement::zero(n), a1: AlgebraElement::one(n) }
    }

    pub fn plain(a0: AlgebraElement) -> Self {
        let n = a0.n();
        ExtAlgebraElement { a0, a1: AlgebraElement::zero(n) }
    }

    pub fn n(&self) -> usize {
        self.a0.n()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExtAlgebraElement { a0: self.a0.add(&other.a0), a1: self.a1.add(&other.a1) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExtAlgebraElement { a0: self.a0.sub(&other.a0), a1: self.a1.sub(&other.a1) }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ExtAlgebraElement { a0: self.a0.scale(c), a1: self.a1.scale(c) }
    }
}

/// Classical blob parameters: `q` generic (not 0 or a unit collapse)
/// and `m` with `[m] != 0`.
#[derive(Clone, Debug)]
pub struct BlobWeights {
    /// factor for an unmarked internal loop: `-[2]`
    pub unmarked_loop: Scalar,
    /// factor for a marked internal loop: `-[m-1]/[m]`
    pub marked_loop: Scalar,
    /// `[m]`, kept for the `V_0 -> -[m] * marked line` scaling
    pub gauss_m: Scalar,
}

impl BlobWeights {
    pub fn new(q: &Scalar, m: i64) -> Result<Self, AlgebraError> {
        if q.is_zero() || q == &int(1) || q == &int(-1) {
            return Err(AlgebraError::SingularParameter(format!(
                "q = {} is excluded",
                q
            )));
        }
        let g2 = gaussian_int(2, q)
            .map_err(|e| AlgebraError::SingularParameter(e.to_string()))?;
        let gm = gaussian_int(m, q)
            .map_err(|e| AlgebraError::SingularParameter(e.to_string()))?;
        if gm.is_zero() {
            return Err(AlgebraError::SingularParameter(format!("[{m}] = 0 at q = {q}")));
        }
        let gm1 = gaussian_int(m - 1, q)
            .map_err(|e| AlgebraError::SingularParameter(e.to_string()))?;
        Ok(BlobWeights {
            unmarked_loop: -g2,
            marked_loop: -(gm1 / gm.clone()),
            gauss_m: gm,
        })
    }
}

/// Memoizing multiplication engine for a fixed point count. The memo
/// key is parameter independent, so one engine serves the nil-blob and
/// every `(q, m)` specialization of the blob algebra at once.
pub struct Engine {
    n: usize,
    ids: HashMap<BlobDiagram, u32>,
    diagrams: Vec<BlobDiagram>,
    memo: HashMap<(u32, u32), MemoEntry>,
}

#[derive(Clone, Copy)]
struct MemoEntry {
    unmarked_loops: u32,
    marked_loops: u32,
    multi_marked_arc: bool,
    result: u32,
}

impl Engine {
    pub fn new(n: usize) -> Self {
        Engine { n, ids: HashMap::new(), diagrams: vec![], memo: HashMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn intern(&mut self, d: &BlobDiagram) -> u32 {
        if let Some(&id) = self.ids.get(d) {
            return id;
        }
        let id = self.diagrams.len() as u32;
        self.diagrams.push(d.clone());
        self.ids.insert(d.clone(), id);
        id
    }

    fn product_entry(&mut self, a: u32, b: u32) -> Result<MemoEntry, AlgebraError> {
        if let Some(&e) = self.memo.get(&(a, b)) {
            return Ok(e);
        }
        let p = pair_product(
            &self.diagrams[a as usize].clone(),
            &self.diagrams[b as usize].clone(),
        )?;
        let result = self.intern(&p.diagram);
        let entry = MemoEntry {
            unmarked_loops: p.unmarked_loops,
            marked_loops: p.marked_loops,
            multi_marked_arc: p.multi_marked_arc,
            result,
        };
        self.memo.insert((a, b), entry);
        Ok(entry)
    }

    pub fn mul_nilblob(
        &mut self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        if x.n() != self.n || y.n() != self.n {
            return Err(AlgebraError::SizeMismatch);
        }
        let xs: Vec<(u32, Scalar)> = x.terms().map(|(d, c)| (self.intern(d), c.clone())).collect();
        let ys: Vec<(u32, Scalar)> = y.terms().map(|(d, c)| (self.intern(d), c.clone())).collect();
        let mut out = AlgebraElement::zero(self.n);
        for (a, ca) in &xs {
            for (b, cb) in &ys {
                let e = self.product_entry(*a, *b)?;
                if e.marked_loops > 0 || e.multi_marked_arc {
                    continue;
                }
                let coeff = ca.clone() * cb * pow(&int(-2), e.unmarked_loops as i64);
                out.add_term(coeff, self.diagrams[e.result as usize].clone());
            }
        }
        Ok(out)
    }

    pub fn mul_blob(
        &mut self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        w: &BlobWeights,
    ) -> Result<AlgebraElement, AlgebraError> {
        if x.n() != self.n || y.n() != self.n {
            return Err(AlgebraError::SizeMismatch);
        }
        let xs: Vec<(u32, Scalar)> = x.terms().map(|(d, c)| (self.intern(d), c.clone())).collect();
        let ys: Vec<(u32, Scalar)> = y.terms().map(|(d, c)| (self.intern(d), c.clone())).collect();
        let mut out = AlgebraElement::zero(self.n);
        for (a, ca) in &xs {
            for (b, cb) in &ys {
                let e = self.product_entry(*a, *b)?;
                let coeff = ca.clone()
                    * cb
                    * pow(&w.unmarked_loop, e.unmarked_loops as i64)
                    * pow(&w.marked_loop, e.marked_loops as i64);
                out.add_term(coeff, self.diagrams[e.result as usize].clone());
            }
        }
        Ok(out)
    }

    /// `(x0 + x1 J)(y0 + y1 J) = x0 y0 + (x0 y1 + x1 y0) J` with the
    /// nil-blob product componentwise.
    pub fn mul_extended(
        &mut self,
        x: &ExtAlgebraElement,
        y: &ExtAlgebraElement,
    ) -> Result<ExtAlgebraElement, AlgebraError> {
        let a0 = self.mul_nilblob(&x.a0, &y.a0)?;
        let a1 = self
            .mul_nilblob(&x.a0, &y.a1)?
            .add(&self.mul_nilblob(&x.a1, &y.a0)?);
        Ok(ExtAlgebraElement { a0, a1 })
    }
}

/// One-shot nil-blob product; use [`Engine`] for repeated products.
pub fn mul_nilblob(
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    Engine::new(x.n()).mul_nilblob(x, y)
}

/// One-shot classical blob product at parameters `(q, m)`.
pub fn mul_blob(
    x: &AlgebraElement,
    y: &AlgebraElement,
    q: &Scalar,
    m: i64,
) -> Result<AlgebraElement, AlgebraError> {
    let w = BlobWeights::new(q, m)?;
    Engine::new(x.n()).mul_blob(x, y, &w)
}

pub fn mul_extended(
    x: &ExtAlgebraElement,
    y: &ExtAlgebraElement,
) -> Result<ExtAlgebraElement, AlgebraError> {
    Engine::new(x.n()).mul_extended(x, y)
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    diagram: BlobDiagram,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(d, c)| TermRepr {
                coeff: crate::scalar::format_scalar(c),
                diagram: d.clone(),
            })
            .collect();
        reprs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(deserializer)?;
        let n = reprs
            .first()
            .map(|t| t.diagram.n())
            .ok_or_else(|| D::Error::custom("cannot infer n of an empty element"))?;
        let mut out = AlgebraElement::zero(n);
        for t in reprs {
            if t.diagram.n() != n {
                return Err(D::Error::custom("mixed point counts in element"));
            }
            let c = crate::scalar::parse_scalar(&t.coeff).map_err(D::Error::custom)?;
            out.add_term(c, t.diagram);
        }
        Ok(out)
    }
}

impl Serialize for ExtAlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ExtAlgebraElement", 2)?;
        st.serialize_field("a0", &self.a0)?;
        st.serialize_field("a1", &self.a1)?;
        st.end()
    }
}
