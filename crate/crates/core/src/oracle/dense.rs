//! A set of lattice points in `[-B, B]^n` stored as one bit row per
//! `(x_1, ..., x_{n-1})`, with bits indexed by `x_0`.

use std::collections::{BTreeSet, VecDeque};

use crate::geometry::ExponentVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DenseSet {
    dim: usize,
    radius: i64,
    width: usize,
    words: usize,
    rows: usize,
    bits: Vec<u64>,
    /// `(x_1, ..., x_{n-1})` of every row, flattened.
    tails: Vec<i64>,
}

impl DenseSet {
    pub fn new(dim: usize, radius: i64) -> Self {
        let width = (2 * radius + 1) as usize;
        let words = width.div_ceil(64);
        let rows = width.pow(dim.saturating_sub(1) as u32);
        let mut set = Self { dim, radius, width, words, rows, bits: vec![0; rows * words], tails: Vec::new() };
        set.tails = (0..rows).flat_map(|r| set.tuple_of(r)).collect();
        set
    }

    fn tail(&self, row: usize) -> &[i64] {
        let k = self.dim.saturating_sub(1);
        &self.tails[row * k..(row + 1) * k]
    }

    fn in_box(&self, p: &[i64]) -> bool {
        p.iter().all(|&x| -self.radius <= x && x <= self.radius)
    }

    fn row_of(&self, p: &[i64]) -> usize {
        p[1..]
            .iter()
            .rev()
            .fold(0, |acc, &x| acc * self.width + (x + self.radius) as usize)
    }

    fn tuple_of(&self, mut row: usize) -> Vec<i64> {
        let mut t = Vec::with_capacity(self.dim.saturating_sub(1));
        for _ in 1..self.dim {
            t.push((row % self.width) as i64 - self.radius);
            row /= self.width;
        }
        t
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if !self.in_box(p) {
            return false;
        }
        let bit = (p[0] + self.radius) as usize;
        let w = self.row_of(p) * self.words + bit / 64;
        self.bits[w] >> (bit % 64) & 1 == 1
    }

    pub fn insert(&mut self, p: &[i64]) -> bool {
        if !self.in_box(p) {
            return false;
        }
        let bit = (p[0] + self.radius) as usize;
        let w = self.row_of(p) * self.words + bit / 64;
        let before = self.bits[w];
        self.bits[w] |= 1 << (bit % 64);
        before != self.bits[w]
    }

    pub fn points(&self) -> BTreeSet<ExponentVector> {
        let mut out = BTreeSet::new();
        for row in 0..self.rows {
            let tail = self.tail(row);
            for bit in 0..self.width {
                if self.bits[row * self.words + bit / 64] >> (bit % 64) & 1 == 1 {
                    let mut p = vec![bit as i64 - self.radius];
                    p.extend_from_slice(tail);
                    out.insert(p);
                }
            }
        }
        out
    }

    fn mask_last(&self, row: &mut [u64]) {
        let extra = self.words * 64 - self.width;
        if extra > 0 {
            row[self.words - 1] &= u64::MAX >> extra;
        }
    }

    /// `out = row shifted by s bits` (toward larger `x_0` when `s > 0`).
    fn shifted(&self, row: &[u64], s: i64, out: &mut [u64]) {
        out.fill(0);
        let len = self.words;
        let (ws, bs) = ((s.unsigned_abs() / 64) as usize, (s.unsigned_abs() % 64) as u32);
        if ws >= len {
            return;
        }
        if s >= 0 {
            for i in 0..len - ws {
                out[i + ws] |= row[i] << bs;
                if bs > 0 && i + ws + 1 < len {
                    out[i + ws + 1] |= row[i] >> (64 - bs);
                }
            }
        } else {
            for i in ws..len {
                out[i - ws] |= row[i] >> bs;
                if bs > 0 && i > ws {
                    out[i - ws - 1] |= row[i] << (64 - bs);
                }
            }
        }
        self.mask_last(out);
    }

    /// Closes one row under `x_0 -> x_0 + s` for each pure shift `s`.
    fn close_row(&mut self, row: usize, shifts: &[i64], buf: &mut [u64], src: &mut [u64]) -> bool {
        let range = row * self.words..(row + 1) * self.words;
        let mut changed = false;
        loop {
            let mut round = false;
            for &s in shifts {
                let mut step = s;
                while step.unsigned_abs() < self.width as u64 {
                    src.copy_from_slice(&self.bits[range.clone()]);
                    self.shifted(src, step, buf);
                    for (x, y) in self.bits[range.clone()].iter_mut().zip(buf.iter()) {
                        let before = *x;
                        *x |= y;
                        round |= before != *x;
                    }
                    step *= 2;
                }
            }
            if !round {
                return changed;
            }
            changed = true;
        }
    }

    /// Fixpoint of `S -> S ∪ (S + g)` over all generators, inside the box.
    ///
    /// Rows are processed from a worklist: a row is first closed under the
    /// generators that stay in it, then pushed along every other generator,
    /// and any row that grows is queued again.
    pub fn saturate(&mut self, generators: &[ExponentVector]) {
        let shifts: Vec<i64> = generators
            .iter()
            .filter(|g| g[1..].iter().all(|&x| x == 0) && g[0] != 0)
            .map(|g| g[0])
            .collect();
        let moves: Vec<(&[i64], i64, i64)> = generators
            .iter()
            .filter(|g| g[1..].iter().any(|&x| x != 0))
            .map(|g| {
                let offset = g[1..].iter().rev().fold(0i64, |acc, &x| acc * self.width as i64 + x);
                (&g[1..], offset, g[0])
            })
            .collect();
        let mut buf = vec![0u64; self.words];
        let mut src = vec![0u64; self.words];
        let mut queued = vec![false; self.rows];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for row in 0..self.rows {
            if self.bits[row * self.words..(row + 1) * self.words].iter().any(|&w| w != 0) {
                queued[row] = true;
                queue.push_back(row);
            }
        }
        while let Some(row) = queue.pop_front() {
            queued[row] = false;
            self.close_row(row, &shifts, &mut buf, &mut src);
            for &(tail, offset, g0) in &moves {
                let outside = self
                    .tail(row)
                    .iter()
                    .zip(tail)
                    .any(|(a, b)| (a + b).abs() > self.radius);
                if outside {
                    continue;
                }
                let target = (row as i64 + offset) as usize;
                src.copy_from_slice(&self.bits[row * self.words..(row + 1) * self.words]);
                self.shifted(&src, g0, &mut buf);
                let mut grew = false;
                for (x, y) in self.bits[target * self.words..(target + 1) * self.words].iter_mut().zip(&buf) {
                    let before = *x;
                    *x |= y;
                    grew |= before != *x;
                }
                if grew && !queued[target] {
                    queued[target] = true;
                    queue.push_back(target);
                }
            }
        }
    }
}
