//! Small permutation utilities for reduced-expression bookkeeping.
//!
//! Permutations are stored in one-line notation, 0-based: `w[i]` is the
//! image of `i`. Words multiply on the right, so `w * s_k` swaps the
//! entries at positions `k-1` and `k` of the one-line word.

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Right-multiplies by the simple transposition `s_k` (1-based `k`).
    pub fn apply_simple(&mut self, k: usize) {
        self.0.swap(k - 1, k);
    }

    /// Product of simple transpositions `s_{word[0]} s_{word[1]} ...`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut p = Perm::identity(n);
        for &k in word {
            p.apply_simple(k);
        }
        p
    }

    /// Coxeter length: the number of inversions of the one-line word.
    pub fn inversions(&self) -> usize {
        let w = &self.0;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v] = i;
        }
        Perm(out)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_inversions() {
        let p = Perm::from_word(3, &[1]);
        assert_eq!(p.0, vec![1, 0, 2]);
        assert_eq!(p.inversions(), 1);
        let q = Perm::from_word(4, &[1, 2, 3]);
        assert_eq!(q.0, vec![1, 2, 3, 0]);
        assert_eq!(q.inversions(), 3);
        assert_eq!(q.compose(&q.inverse()), Perm::identity(4));
    }
}
