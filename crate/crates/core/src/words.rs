//! The presented algebras: words in the abstract generators, normal
//! monomials, the evaluation map onto diagrams, semantic normal forms,
//! and the factorization of a diagram into a generator word.

use crate::algebra::{mul_diagrams_nilblob, AlgebraElement, AlgebraError, ExtAlgebraElement};
use crate::diagram::{BlobDiagram, HalfDiagram};
use crate::scalar::{int, pow, Scalar};
use num::One;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    U(usize),
    J,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::U(i) => write!(f, "U{i}"),
            Letter::J => write!(f, "J"),
        }
    }
}

#[derive(Debug, Error)]
pub enum WordError {
    #[error("cannot parse token {0:?}")]
    BadToken(String),
    #[error("generator index {0} out of range for n = {1}")]
    IndexOutOfRange(usize, usize),
    #[error("J is only allowed in the extended algebra")]
    UnexpectedJ,
    #[error("evaluation hit a diagram missing from the normal-monomial table (bug)")]
    TableMiss,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A finite word in the generators `U0..U(n-1)` and optionally `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorWord {
    pub n: usize,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        for l in &letters {
            if let Letter::U(i) = l {
                if *i >= n {
                    return Err(WordError::IndexOutOfRange(*i, n));
                }
            }
        }
        Ok(GeneratorWord { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        GeneratorWord { n, letters: vec![] }
    }

    /// Parses whitespace-separated tokens `U<k>` / `J`, case-insensitive;
    /// `V<k>` is accepted as a synonym used by the classical blob CLI.
    pub fn parse(n: usize, text: &str) -> Result<Self, WordError> {
        let mut letters = vec![];
        for tok in text.split_whitespace() {
            let lower = tok.to_ascii_lowercase();
            if lower == "j" {
                letters.push(Letter::J);
            } else if let Some(rest) = lower.strip_prefix('u').or_else(|| lower.strip_prefix('v')) {
                let i: usize =
                    rest.parse().map_err(|_| WordError::BadToken(tok.to_string()))?;
                letters.push(Letter::U(i));
            } else {
                return Err(WordError::BadToken(tok.to_string()));
            }
        }
        GeneratorWord::new(n, letters)
    }

    pub fn has_j(&self) -> bool {
        self.letters.contains(&Letter::J)
    }

    /// Degree under `deg U_0 = deg J = 2`, `deg U_i = 0` otherwise.
    pub fn degree(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::U(0) | Letter::J => 2,
                _ => 0,
            })
            .sum()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Evaluates a `J`-free word to its diagram-algebra image. The result is
/// always a scalar times a single diagram or zero.
pub fn evaluate(word: &GeneratorWord) -> Result<AlgebraElement, WordError> {
    if word.has_j() {
        return Err(WordError::UnexpectedJ);
    }
    match evaluate_scalar_diagram(word)? {
        Some((c, d)) => Ok(AlgebraElement::from_term(c, d)),
        None => Ok(AlgebraElement::zero(word.n)),
    }
}

/// Single-strand evaluation used internally: `Some((c, d))` or `None`
/// for zero.
pub fn evaluate_scalar_diagram(
    word: &GeneratorWord,
) -> Result<Option<(Scalar, BlobDiagram)>, WordError> {
    let mut acc: (Scalar, BlobDiagram) = (Scalar::one(), BlobDiagram::identity(word.n));
    for l in &word.letters {
        let i = match l {
            Letter::U(i) => *i,
            Letter::J => return Err(WordError::UnexpectedJ),
        };
        let g = BlobDiagram::generator(word.n, i);
        match mul_diagrams_nilblob(&acc.1, &g)? {
            Some((c, d)) => acc = (acc.0 * c, d),
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Evaluates a word in the extended algebra: `J` is central with
/// `J^2 = 0`, so the image is `(U-part) + (U-part) J` bookkeeping.
pub fn evaluate_extended(word: &GeneratorWord) -> Result<ExtAlgebraElement, WordError> {
    let js = word.letters.iter().filter(|l| **l == Letter::J).count();
    if js >= 2 {
        return Ok(ExtAlgebraElement::zero(word.n));
    }
    let stripped = GeneratorWord {
        n: word.n,
        letters: word.letters.iter().copied().filter(|l| *l != Letter::J).collect(),
    };
    let plain = evaluate(&stripped)?;
    Ok(if js == 0 {
        ExtAlgebraElement::plain(plain)
    } else {
        ExtAlgebraElement { a0: AlgebraElement::zero(word.n), a1: plain }
    })
}

/// A normal monomial `U_{I,J} = U_{i1 j1} ... U_{ik jk}` where
/// `U_{ij} = U_i U_{i-1} ... U_j`. `I` is strictly increasing, `J` is
/// strictly increasing except that 0 may repeat, and `j_s <= i_s`.
/// The empty pair denotes the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NormalMonomial {
    pub i_seq: Vec<usize>,
    pub j_seq: Vec<usize>,
}

impl NormalMonomial {
    pub fn one() -> Self {
        NormalMonomial { i_seq: vec![], j_seq: vec![] }
    }

    pub fn word(&self, n: usize) -> GeneratorWord {
        let mut letters = vec![];
        for (&i, &j) in self.i_seq.iter().zip(&self.j_seq) {
            for k in (j..=i).rev() {
                letters.push(Letter::U(k));
            }
        }
        GeneratorWord { n, letters }
    }
}

/// All normal monomials for generator indices `0..n`, identity included;
/// there are `C(2n, n)` of them.
pub fn enumerate_normal(n: usize) -> Vec<NormalMonomial> {
    let mut out = vec![NormalMonomial::one()];
    let mut i_seq = vec![];
    let mut j_seq = vec![];
    extend_normal(n, &mut i_seq, &mut j_seq, &mut out);
    out
}

fn extend_normal(
    n: usize,
    i_seq: &mut Vec<usize>,
    j_seq: &mut Vec<usize>,
    out: &mut Vec<NormalMonomial>,
) {
    let i_min = i_seq.last().map_or(0, |&i| i + 1);
    for i in i_min..n {
        // j strictly increases along the monomial except that 0 repeats
        let prev_j = j_seq.last().copied();
        for j in 0..=i {
            let ok = match prev_j {
                None => true,
                Some(p) => j > p || (j == 0 && p == 0),
            };
            if !ok {
                continue;
            }
            i_seq.push(i);
            j_seq.push(j);
            out.push(NormalMonomial { i_seq: i_seq.clone(), j_seq: j_seq.clone() });
            extend_normal(n, i_seq, j_seq, out);
            i_seq.pop();
            j_seq.pop();
        }
    }
}

/// The bijection normal monomial -> (scalar, diagram) realizing the
/// normal basis; built once, then every normal form is a table lookup.
pub struct NormalTable {
    pub n: usize,
    pub monomials: Vec<NormalMonomial>,
    by_diagram: HashMap<BlobDiagram, (usize, Scalar)>,
}

impl NormalTable {
    pub fn new(n: usize) -> Result<Self, WordError> {
        let monomials = enumerate_normal(n);
        let mut by_diagram = HashMap::new();
        for (idx, nm) in monomials.iter().enumerate() {
            let (c, d) = evaluate_scalar_diagram(&nm.word(n))?
                .expect("normal monomials evaluate to nonzero elements");
            let previous = by_diagram.insert(d, (idx, c));
            assert!(previous.is_none(), "normal monomials must hit distinct diagrams");
        }
        Ok(NormalTable { n, monomials, by_diagram })
    }

    /// Writes `evaluate(word)` as `scalar * normal monomial`; `None`
    /// encodes the zero element.
    pub fn normal_form(
        &self,
        word: &GeneratorWord,
    ) -> Result<Option<(Scalar, &NormalMonomial)>, WordError> {
        let (c, d) = match evaluate_scalar_diagram(word)? {
            Some(x) => x,
            None => return Ok(None),
        };
        let (idx, base) = self.by_diagram.get(&d).ok_or(WordError::TableMiss)?;
        Ok(Some((c / base.clone(), &self.monomials[*idx])))
    }

    pub fn lookup_diagram(&self, d: &BlobDiagram) -> Option<(&NormalMonomial, &Scalar)> {
        self.by_diagram.get(d).map(|(idx, c)| (&self.monomials[*idx], c))
    }
}

/// Factorizes a valid diagram as a generator word: the returned pair
/// satisfies `evaluate(word) = scalar * d` with `scalar != 0`.
///
/// The construction follows the half-diagram walks: per contact interval
/// of each walk, processed from the last interval to the first, emit the
/// column-filling `U_i` letters that deform the minimal zigzag walk into
/// the target walk, then splice the marked-arc insertion word
/// `(U_1 U_3 .. U_{p-2}) U_0 (U_2 .. U_{p-1}) (U_1 .. U_{p-2})` whenever
/// the arc opening the interval carries a mark. The top half contributes
/// the reflected letters on the left of the `U_1 U_3 U_5 ...` core.
pub fn factorize_diagram(d: &BlobDiagram) -> Result<(GeneratorWord, Scalar), WordError> {
    let n = d.n();
    let (top, bottom, _k) = d.split_halves();
    let through_marked = d
        .through_arcs()
        .iter()
        .min()
        .map(|arc| d.marks().contains(arc))
        .unwrap_or(false);

    let mut scalar = Scalar::one();
    let bottom_seq = half_word(&bottom, through_marked, &mut scalar);
    let top_seq = half_word(&top, false, &mut scalar);

    // core T^lambda B^lambda = U_1 U_3 ... over the paired columns
    let arcs_per_side = bottom.arcs.len();
    let mut letters: Vec<Letter> = top_seq.iter().rev().copied().collect();
    letters.extend((0..arcs_per_side).map(|j| Letter::U(2 * j + 1)));
    letters.extend(bottom_seq);
    Ok((GeneratorWord::new(n, letters)?, scalar))
}

/// Letters that build one half, in application order (right
/// multiplications for the bottom half; the caller reverses them for the
/// top half). Accumulates the `(-2)^loops` unit produced by insertions.
fn half_word(half: &HalfDiagram, through_marked: bool, scalar: &mut Scalar) -> Vec<Letter> {
    let n = half.n;
    let target = half.walk();
    let contacts = half.contacts();
    let k = half.arcs.len();
    // walk of the minimal (row-reading) half-diagram: zigzag over the
    // paired columns, then a straight climb over the free points
    let mut cur: Vec<i64> = (0..=n)
        .map(|i| if i <= 2 * k { (i % 2) as i64 } else { (i - 2 * k) as i64 })
        .collect();

    // contact intervals [p, q]; the interval after the last contact is
    // open and holds the free points
    let mut intervals: Vec<(usize, usize)> =
        contacts.windows(2).map(|w| (w[0] + 1, w[1])).collect();
    if let Some(&last) = contacts.last() {
        if last < n {
            intervals.push((last + 1, n));
        }
    }

    let first_free = half.free_points.first().copied();
    let mut out = vec![];
    for &(p, q) in intervals.iter().rev() {
        // column fills: per pass, raise every valley sitting below the
        // target, left to right against the pass-start state
        loop {
            let snapshot = cur.clone();
            let mut flips = vec![];
            for i in p..q {
                if snapshot[i] < target[i]
                    && snapshot[i - 1] == snapshot[i + 1]
                    && snapshot[i] == snapshot[i - 1] - 1
                {
                    flips.push(i);
                }
            }
            if flips.is_empty() {
                break;
            }
            for &i in &flips {
                cur[i] += 2;
                out.push(Letter::U(i));
            }
        }
        debug_assert_eq!(&cur[p - 1..=q], &target[p - 1..=q]);
        // mark insertion for this interval: the strand opening at p
        let marked = if first_free == Some(p) {
            through_marked
        } else {
            half.marks.iter().any(|&(a, _)| a == p)
        };
        if marked {
            out.extend(insertion_word(p));
            *scalar *= pow(&int(-2), ((p - 1) / 2) as i64);
        }
    }
    debug_assert_eq!(cur, target);
    out
}

/// The marked-arc insertion word at odd position `p`: the image equals,
/// up to a unit, the diagram whose first `p - 1` strands are closed off
/// and whose `p`-th strand carries the mark.
fn insertion_word(p: usize) -> Vec<Letter> {
    let mut w = vec![];
    let push_range = |from: usize, to: usize, out: &mut Vec<Letter>| {
        let mut i = from;
        while i <= to {
            out.push(Letter::U(i));
            i += 2;
        }
    };
    if p >= 3 {
        push_range(1, p - 2, &mut w);
    }
    w.push(Letter::U(0));
    if p >= 3 {
        push_range(2, p - 1, &mut w);
        push_range(1, p - 2, &mut w);
    }
    w
}
