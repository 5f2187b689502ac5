//! Closed walks of even length on paths and odd cycles.
//!
//! The adjacency spectrum of the path on `n-1` vertices is `2 cos(l pi/n)`,
//! `l = 1..n-1`, and that of the `n`-cycle is `2 cos(2 l pi/n)`. The number of
//! closed walks of length `2m` is the sum of `2m`-th powers of the eigenvalues,
//! hence `4^m (C(m,n) - 1)` and (odd `n`) `4^m C(m,n)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exact::{binom, pow2, tail_sum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `n - 1` vertices
    Path,
    /// `n` vertices
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub n: u32,
}

impl GraphSpec {
    pub fn path(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!(
                "path parameter n must be at least 2, got {n}"
            )));
        }
        Ok(GraphSpec {
            kind: GraphKind::Path,
            n,
        })
    }

    /// Any cycle with at least three vertices; the closed form itself is limited to odd `n`.
    pub fn cycle(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Ok(GraphSpec {
            kind: GraphKind::Cycle,
            n,
        })
    }

    pub fn vertices(&self) -> usize {
        match self.kind {
            GraphKind::Path => self.n as usize - 1,
            GraphKind::Cycle => self.n as usize,
        }
    }

    fn adjacency(&self) -> Matrix {
        let size = self.vertices();
        let mut a = Matrix::zero(size);
        for i in 0..size.saturating_sub(1) {
            a.set(i, i + 1, 1);
            a.set(i + 1, i, 1);
        }
        if self.kind == GraphKind::Cycle {
            a.set(0, size - 1, 1);
            a.set(size - 1, 0, 1);
        }
        a
    }
}

/// `2n (C(2m-1,m-1) + sum_{p=1}^{floor(m/n)} C(2m, m-pn))`, the closed-walk
/// count shared by both graphs before the path's `-4^m` correction.
fn spectral_core(n: u32, m: u32) -> BigInt {
    let (n, m) = (n as u64, m as u64);
    (binom(2 * m - 1, m as i64 - 1) + tail_sum(m, n, |_| 1)) * (2 * n)
}

/// Closed walks of length `2m` on the path with `n - 1` vertices.
pub fn path_closed_walks(n: u32, m: u32) -> Result<BigInt> {
    GraphSpec::path(n)?;
    if m == 0 {
        return Ok(BigInt::from(n - 1));
    }
    Ok(spectral_core(n, m) - pow2(2 * m as u64))
}

/// Closed walks of length `2m` on the cycle with `n` vertices, `n` odd.
pub fn cycle_closed_walks(n: u32, m: u32) -> Result<BigInt> {
    GraphSpec::cycle(n)?;
    if n.is_multiple_of(2) {
        return Err(invalid(format!(
            "closed form holds for odd cycles only, got n = {n}"
        )));
    }
    if m == 0 {
        return Ok(BigInt::from(n));
    }
    Ok(spectral_core(n, m))
}

/// Square matrix of exact integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Matrix {
    size: usize,
    cells: Vec<BigInt>,
}

impl Matrix {
    fn zero(size: usize) -> Self {
        Matrix {
            size,
            cells: vec![BigInt::zero(); size * size],
        }
    }

    fn identity(size: usize) -> Self {
        let mut m = Matrix::zero(size);
        for i in 0..size {
            m.cells[i * size + i] = BigInt::one();
        }
        m
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.cells[i * self.size + j] = BigInt::from(v);
    }

    fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.cells[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.cells[k * n + j];
                    if !b.is_zero() {
                        out.cells[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn pow(&self, mut e: u64) -> Matrix {
        let mut result = Matrix::identity(self.size);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn trace(&self) -> BigInt {
        (0..self.size).map(|i| &self.cells[i * self.size + i]).sum()
    }
}

/// `trace(A^length)` for the graph's adjacency matrix, by exact repeated squaring.
/// Any length is accepted; odd lengths give 0 on bipartite graphs.
pub fn trace_oracle(graph: GraphSpec, length: u64) -> BigInt {
    graph.adjacency().pow(length).trace()
}
