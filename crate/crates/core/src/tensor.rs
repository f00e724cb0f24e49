//! Dense rank-4 tensor with equal extents on every axis.

use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor4<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Copy + Default> Tensor4<E> {
    pub fn zeros(n: usize) -> Self {
        Tensor4 { n, data: vec![E::default(); n * n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> E) -> Self {
        let mut t = Self::zeros(n);
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    for u in 0..n {
                        t[(p, q, s, u)] = f(p, q, s, u);
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn map<F: Copy + Default>(&self, f: impl Fn(E) -> F) -> Tensor4<F> {
        Tensor4 { n: self.n, data: self.data.iter().map(|&e| f(e)).collect() }
    }

    #[inline]
    fn offset(&self, (p, q, s, t): (usize, usize, usize, usize)) -> usize {
        debug_assert!(p < self.n && q < self.n && s < self.n && t < self.n);
        ((p * self.n + q) * self.n + s) * self.n + t
    }
}

impl<E: Copy + Default> Index<(usize, usize, usize, usize)> for Tensor4<E> {
    type Output = E;
    #[inline]
    fn index(&self, i: (usize, usize, usize, usize)) -> &E {
        &self.data[self.offset(i)]
    }
}

impl<E: Copy + Default> IndexMut<(usize, usize, usize, usize)> for Tensor4<E> {
    #[inline]
    fn index_mut(&mut self, i: (usize, usize, usize, usize)) -> &mut E {
        let o = self.offset(i);
        &mut self.data[o]
    }
}

/// Ordered pairs `p < q` over `n` indices, in row-major order.
pub fn folded_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for p in 0..n {
        for q in p + 1..n {
            out.push((p, q));
        }
    }
    out
}
