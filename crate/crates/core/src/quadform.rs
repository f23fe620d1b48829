//! The quadratic forms `Q_{u,v}(x) = Tr(u x^2 + v x^(p^k + 1))` over F_p.
//!
//! A form is stored as the symmetric Gram matrix `A` with `Q(x) = X A X^T`
//! in polynomial-basis coordinates. Congruence diagonalization yields the
//! rank and the Legendre class of the discriminant, which together fix the
//! value of every Gauss sum of the form.

use crate::arith::{inv_mod, legendre};
use crate::cycint::CycInt;
use crate::gf::{FieldCtx, GfElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadForm {
    dim: usize,
    p: u32,
    /// Row-major symmetric matrix.
    matrix: Vec<u32>,
    pub u: GfElem,
    pub v: GfElem,
}

impl QuadForm {
    /// Wraps a symmetric matrix given row-major. Panics if it is not square
    /// and symmetric.
    pub fn from_matrix(p: u32, dim: usize, matrix: Vec<u32>) -> QuadForm {
        assert_eq!(matrix.len(), dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                assert_eq!(
                    matrix[i * dim + j],
                    matrix[j * dim + i],
                    "matrix is not symmetric"
                );
            }
        }
        QuadForm {
            dim,
            p,
            matrix: matrix.into_iter().map(|c| c % p).collect(),
            u: GfElem::ZERO,
            v: GfElem::ZERO,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.matrix[i * self.dim + j]
    }

    pub fn matrix(&self) -> &[u32] {
        &self.matrix
    }

    /// `X A X^T` for a coordinate vector `X`.
    pub fn eval(&self, x: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            let row: u64 = (0..self.dim)
                .map(|j| self.entry(i, j) as u64 * x[j] as u64 % p)
                .sum();
            acc = (acc + x[i] as u64 * (row % p)) % p;
        }
        acc as u32
    }

    /// `M A M^T`.
    pub fn congruent(&self, m: &[u32]) -> QuadForm {
        let n = self.dim;
        let p = self.p as u64;
        let mul = |a: &[u32], b: &[u32], bt: bool| -> Vec<u32> {
            let mut out = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let s: u64 = (0..n)
                        .map(|l| {
                            let rhs = if bt { b[j * n + l] } else { b[l * n + j] };
                            a[i * n + l] as u64 * rhs as u64 % p
                        })
                        .sum();
                    out[i * n + j] = (s % p) as u32;
                }
            }
            out
        };
        let ma = mul(m, &self.matrix, false);
        let mut q = QuadForm::from_matrix(self.p, n, mul(&ma, m, true));
        q.u = self.u;
        q.v = self.v;
        q
    }
}

/// Rank and discriminant class of a quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagResult {
    pub rank: u32,
    /// Legendre symbol of the product of the nonzero diagonal entries; 0 iff
    /// the rank is 0.
    pub disc_class: i8,
}

/// `Q_{u,v}(x)` evaluated directly through the field.
pub fn eval_q(ctx: &FieldCtx, u: GfElem, v: GfElem, x: GfElem) -> u32 {
    let x2 = ctx.mul(x, x);
    let xq = ctx.pow(x, ctx.frob_k_exponent() as u128 + 1);
    ctx.trace(ctx.add(ctx.mul(u, x2), ctx.mul(v, xq)))
}

/// Gram matrix of `Q_{u,v}` from values of the form on basis vectors and
/// their pairwise sums.
pub fn build_form(ctx: &FieldCtx, u: GfElem, v: GfElem) -> QuadForm {
    let p = ctx.p();
    let m = ctx.m() as usize;
    let basis: Vec<GfElem> = (0..m).map(|i| ctx.pi_pow(i as i64)).collect();
    let q = |x: GfElem| eval_q(ctx, u, v, x);
    let diag: Vec<u32> = basis.iter().map(|&e| q(e)).collect();
    let half = inv_mod(2, p) as u64;
    let mut matrix = vec![0u32; m * m];
    for i in 0..m {
        matrix[i * m + i] = diag[i];
        for j in i + 1..m {
            let b = (q(ctx.add(basis[i], basis[j])) + 2 * p - diag[i] - diag[j]) % p;
            let a = (b as u64 * half % p as u64) as u32;
            matrix[i * m + j] = a;
            matrix[j * m + i] = a;
        }
    }
    QuadForm {
        dim: m,
        p,
        matrix,
        u,
        v,
    }
}

/// Builds Gram matrices of `Q_{u,v}` as linear combinations of fixed
/// matrices: `A = sum_l u_l E_l + sum_l v_l F_l`, where `E_l[i][j] =
/// Tr(x^l e_i e_j)` and `F_l[i][j] = Tr(x^l (e_i^q e_j + e_i e_j^q) / 2)`.
#[derive(Debug, Clone)]
pub struct FormBuilder {
    p: u32,
    m: usize,
    u_basis: Vec<Vec<u32>>,
    v_basis: Vec<Vec<u32>>,
}

impl FormBuilder {
    pub fn new(ctx: &FieldCtx) -> FormBuilder {
        let p = ctx.p();
        let m = ctx.m() as usize;
        let q = ctx.frob_k_exponent() as u128;
        let basis: Vec<GfElem> = (0..m).map(|i| ctx.pi_pow(i as i64)).collect();
        let half = ctx.scalar(inv_mod(2, p));
        let mut u_basis = vec![vec![0u32; m * m]; m];
        let mut v_basis = vec![vec![0u32; m * m]; m];
        for i in 0..m {
            for j in 0..m {
                let prod = ctx.mul(basis[i], basis[j]);
                let cross = ctx.add(
                    ctx.mul(ctx.pow(basis[i], q), basis[j]),
                    ctx.mul(basis[i], ctx.pow(basis[j], q)),
                );
                let cross = ctx.mul(half, cross);
                for l in 0..m {
                    let xl = basis[l];
                    u_basis[l][i * m + j] = ctx.trace(ctx.mul(xl, prod));
                    v_basis[l][i * m + j] = ctx.trace(ctx.mul(xl, cross));
                }
            }
        }
        FormBuilder {
            p,
            m,
            u_basis,
            v_basis,
        }
    }

    /// The part of the Gram matrix contributed by `v`.
    pub fn v_part(&self, ctx: &FieldCtx, v: GfElem) -> Vec<u32> {
        self.combine(&ctx.coords(v), &self.v_basis, vec![0; self.m * self.m])
    }

    /// Completes a `v` part with the contribution of `u`.
    pub fn with_u(&self, ctx: &FieldCtx, v_part: &[u32], u: GfElem, v: GfElem) -> QuadForm {
        let matrix = self.combine(&ctx.coords(u), &self.u_basis, v_part.to_vec());
        QuadForm {
            dim: self.m,
            p: self.p,
            matrix,
            u,
            v,
        }
    }

    pub fn form(&self, ctx: &FieldCtx, u: GfElem, v: GfElem) -> QuadForm {
        let vp = self.v_part(ctx, v);
        self.with_u(ctx, &vp, u, v)
    }

    fn combine(&self, coords: &[u32], basis: &[Vec<u32>], mut acc: Vec<u32>) -> Vec<u32> {
        for (l, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(&basis[l]) {
                *a = (*a + c * b) % self.p;
            }
        }
        acc
    }
}

/// Symmetric congruence reduction to diagonal form.
pub fn diagonalize(q: &QuadForm) -> DiagResult {
    let n = q.dim;
    let p = q.p as u64;
    let mut a: Vec<u64> = q.matrix.iter().map(|&c| c as u64).collect();
    let at = |a: &Vec<u64>, i: usize, j: usize| a[i * n + j];

    let mut rank = 0u32;
    let mut disc = 1u64;
    for i in 0..n {
        if at(&a, i, i) == 0 {
            if let Some(j) = (i + 1..n).find(|&j| at(&a, j, j) != 0) {
                // swap row and column i <-> j
                for c in 0..n {
                    a.swap(i * n + c, j * n + c);
                }
                for r in 0..n {
                    a.swap(r * n + i, r * n + j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| at(&a, i, j) != 0) {
                // row_i += row_j, col_i += col_j; new A[i][i] = 2 A[i][j]
                for c in 0..n {
                    a[i * n + c] = (a[i * n + c] + a[j * n + c]) % p;
                }
                for r in 0..n {
                    a[r * n + i] = (a[r * n + i] + a[r * n + j]) % p;
                }
            } else {
                continue;
            }
        }
        let pivot = at(&a, i, i);
        debug_assert_ne!(pivot, 0);
        let pivot_inv = inv_mod(pivot as u32, q.p) as u64;
        for j in i + 1..n {
            let f = at(&a, j, i) * pivot_inv % p;
            if f == 0 {
                continue;
            }
            for c in 0..n {
                a[j * n + c] = (a[j * n + c] + p - f * a[i * n + c] % p) % p;
            }
            for r in 0..n {
                a[r * n + j] = (a[r * n + j] + p - f * a[r * n + i] % p) % p;
            }
        }
        rank += 1;
        disc = disc * pivot % p;
    }
    let disc_class = if rank == 0 {
        0
    } else {
        legendre(disc as u32, q.p)
    };
    DiagResult { rank, disc_class }
}

/// `sum_x zeta^F(x)` over `F_p^m` for a form of the given rank and
/// discriminant class, as `(Delta/p) p^(m-r) g^r` with `g` the quadratic
/// Gauss sum, so no branch of a square root is ever chosen.
pub fn gauss_sum_closed_form(ctx: &FieldCtx, d: DiagResult) -> CycInt {
    let p = ctx.p();
    let m = ctx.m();
    let scale = (p as i128).pow(m - d.rank);
    if d.rank == 0 {
        return CycInt::from_int(p, scale);
    }
    CycInt::quadratic_gauss_sum(p)
        .pow(d.rank)
        .scale(scale * d.disc_class as i128)
}

/// `sum_{y != 0} sum_x zeta^(y F(x))`: zero for odd rank, otherwise
/// `eps (p-1) p^(m - r/2)` with `eps = (Delta/p) (-1/p)^(r/2)`.
pub fn y_summed_gauss(ctx: &FieldCtx, d: DiagResult) -> i128 {
    let p = ctx.p() as i128;
    let m = ctx.m();
    if d.rank % 2 == 1 {
        return 0;
    }
    let half = d.rank / 2;
    let minus_one = if p % 4 == 1 { 1 } else { -1 };
    let sign = if d.rank == 0 {
        1
    } else {
        d.disc_class as i128 * (minus_one as i128).pow(half)
    };
    sign * (p - 1) * p.pow(m - half)
}
