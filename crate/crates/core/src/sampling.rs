//! Seeded random inputs for the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{vec_norm, CMatrix, C64};

/// Deterministic source of complex test data; real and imaginary parts are
/// uniform on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for a named purpose, so adding samples to one
    /// check does not shift the inputs of another.
    pub fn derived(seed: u64, purpose: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in purpose.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Sampler::new(seed ^ h)
    }

    pub fn real(&mut self) -> f64 {
        self.rng.gen_range(-1.0..=1.0)
    }

    pub fn c64(&mut self) -> C64 {
        C64::new(self.real(), self.real())
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn vector(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.c64()).collect()
    }

    pub fn unit_vector(&mut self, n: usize) -> Vec<C64> {
        loop {
            let v = self.vector(n);
            let r = vec_norm(&v);
            if r > 1e-3 {
                return v.into_iter().map(|z| z / r).collect();
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| self.c64())
    }

    /// Random unitary from Gram–Schmidt on random columns.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
        while cols.len() < n {
            let mut v = self.vector(n);
            for _ in 0..2 {
                for q in &cols {
                    let h: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= h * qi;
                    }
                }
            }
            let r = vec_norm(&v);
            if r > 1e-3 {
                cols.push(v.into_iter().map(|z| z / r).collect());
            }
        }
        CMatrix::from_fn(n, n, |i, j| cols[j][i])
    }

    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        let m = self.matrix(n, n);
        (&m + &m.adjoint()).scale_real(0.5)
    }
}
