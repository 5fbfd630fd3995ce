//! Dense square Boolean matrices with bit-packed rows.
//!
//! Every matrix the compiler manipulates is square and indexed by qubit:
//! the biadjacency matrix `B` (row = root, column = terminal), the candidate
//! matrix `C` (row = terminal, column = root) and an edge selection `F`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    /// The zero matrix `O_n`.
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        BoolMatrix { n, words, bits: vec![0; n * words] }
    }

    /// The identity `I_n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        Ok(m)
    }

    /// Parses the textual dump produced by `Display` (rows of `0`/`1`).
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u8>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(Error::Parse(format!("unexpected character {other:?} in matrix"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.n && j < self.n);
        let w = &mut self.bits[i * self.words + j / WORD];
        let mask = 1u64 << (j % WORD);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(w, &word)| BitIter { word, base: w * WORD })
    }

    /// Row indices of the ones in column `j`, ascending.
    pub fn col_ones(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.get(i, j))
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.get(i, j)).count()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.row_sum(i)).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.n];
        for i in 0..self.n {
            for j in self.row_ones(i) {
                sums[j] += 1;
            }
        }
        sums
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// True for `J_n`.
    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.n * self.n
    }

    /// Entrywise `self ≤ other`.
    pub fn le(&self, other: &BoolMatrix) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Entrywise OR.
    pub fn or(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(out)
    }

    /// Boolean product `(A ⊙ B)_{ij} = OR_l (A_{il} AND B_{lj})`.
    pub fn bool_product(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for l in self.row_ones(i) {
                let src = other.row_words(l).to_vec();
                for (d, s) in out.row_words_mut(i).iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        Ok(out)
    }

    /// Replaces every listed column by the OR of all listed columns.
    ///
    /// Equivalent to right-multiplying by the biadjacency matrix of a single
    /// gate acting on `qubits`.
    pub fn gate_update(&mut self, qubits: &[usize]) -> Result<()> {
        for (k, &q) in qubits.iter().enumerate() {
            if q >= self.n {
                return Err(Error::InvalidUpdate(format!("index {q} out of range for n = {}", self.n)));
            }
            if qubits[..k].contains(&q) {
                return Err(Error::InvalidUpdate(format!("duplicate index {q}")));
            }
        }
        if qubits.len() < 2 {
            return Ok(());
        }
        for i in 0..self.n {
            if qubits.iter().any(|&q| self.get(i, q)) {
                for &q in qubits {
                    self.set(i, q, true);
                }
            }
        }
        Ok(())
    }

    /// Non-mutating form of [`gate_update`](Self::gate_update).
    pub fn gate_updated(&self, qubits: &[usize]) -> Result<BoolMatrix> {
        let mut m = self.clone();
        m.gate_update(qubits)?;
        Ok(m)
    }

    /// Whether some Boolean power vanishes, decided as acyclicity of the
    /// digraph with an edge `i → j` for every one at `(i, j)`.
    pub fn is_nilpotent(&self) -> bool {
        let mut indeg = self.col_sums();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for w in self.row_ones(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == self.n
    }

    /// The candidate matrix `C = ¬(Bᵀ)`, i.e. `C_{tr} = 1 − B_{rt}`.
    pub fn candidate_matrix(&self) -> BoolMatrix {
        let mut c = self.transpose();
        c.complement_in_place();
        c
    }

    fn complement_in_place(&mut self) {
        let tail = self.n % WORD;
        for i in 0..self.n {
            let words = self.words;
            let row = self.row_words_mut(i);
            for w in row.iter_mut() {
                *w = !*w;
            }
            if tail != 0 {
                row[words - 1] &= (1u64 << tail) - 1;
            }
        }
    }

    /// The `2n × 2n` block matrix `[[O, B], [F, O]]`.
    pub fn block_adjacency(b: &BoolMatrix, f: &BoolMatrix) -> Result<BoolMatrix> {
        if b.n != f.n {
            return Err(Error::DimensionMismatch(b.n, f.n));
        }
        let n = b.n;
        let mut m = Self::zeros(2 * n);
        for i in 0..n {
            for j in b.row_ones(i) {
                m.set(i, n + j, true);
            }
            for j in f.row_ones(i) {
                m.set(n + i, j, true);
            }
        }
        Ok(m)
    }

    /// Clears row `i`.
    pub fn clear_row(&mut self, i: usize) {
        self.row_words_mut(i).fill(0);
    }

    /// Clears column `j`.
    pub fn clear_col(&mut self, j: usize) {
        for i in 0..self.n {
            self.set(i, j, false);
        }
    }

    /// Commits candidate edge `(t, r)` in a candidate matrix.
    ///
    /// `R` is the set of zero columns of row `t` and `T` the set of zero rows
    /// of column `r`; every entry of `T × R` is cleared, then row `t` and
    /// column `r`. Read on the transpose, the same rule serves the role-swapped
    /// variant with `(r, t)`.
    pub fn candidate_update(&mut self, t: usize, r: usize) {
        let rmask = self.zero_mask_of_row(t);
        let t_rows: Vec<usize> = (0..self.n).filter(|&u| !self.get(u, r)).collect();
        for u in t_rows {
            for (d, m) in self.row_words_mut(u).iter_mut().zip(&rmask) {
                *d &= !m;
            }
        }
        self.clear_row(t);
        self.clear_col(r);
    }

    /// Number of ones that would survive [`candidate_update`](Self::candidate_update)
    /// at `(t, r)`, computed without copying the matrix.
    pub fn count_after_update(&self, t: usize, r: usize) -> usize {
        let rmask = self.zero_mask_of_row(t);
        let (rw, rb) = (r / WORD, 1u64 << (r % WORD));
        let mut total = 0;
        for u in 0..self.n {
            if u == t {
                continue;
            }
            let in_t = !self.get(u, r);
            for (w, (&word, &m)) in self.row_words(u).iter().zip(&rmask).enumerate() {
                let mut x = if in_t { word & !m } else { word };
                if w == rw {
                    x &= !rb;
                }
                total += x.count_ones() as usize;
            }
        }
        total
    }

    fn zero_mask_of_row(&self, t: usize) -> Vec<u64> {
        let tail = self.n % WORD;
        let mut mask: Vec<u64> = self.row_words(t).iter().map(|w| !w).collect();
        if tail != 0 {
            let last = mask.len() - 1;
            mask[last] &= (1u64 << tail) - 1;
        }
        mask
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix({})", self.n)?;
        fmt::Display::fmt(self, f)
    }
}
