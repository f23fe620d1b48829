//! The cyclic code `C(p, m, k)` and its weight distribution.
//!
//! The parity-check polynomial is `h = h0 h1 h2`, the minimal polynomials of
//! `pi^-1`, `(-pi)^-1` and `pi^(-(p^k+1)/2)`. Codewords are realized through
//! the trace representation
//! `c_t = Tr(a pi^t + b (-pi)^t + c pi^((p^k+1) t / 2))`, `0 <= t < p^m - 1`.

use std::collections::BTreeMap;

use crate::charsum::{s_distribution_with, DEvaluator, Engine, SumKind};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::{FieldCtx, GfElem};
use crate::poly::FpPoly;
use crate::weights::WeightDist;

/// Upper bound on the number of codewords [`weight_dist_bruteforce`] visits.
pub const BRUTEFORCE_LIMIT: u128 = 1 << 26;

#[derive(Debug, Clone)]
pub struct CyclicCode {
    ctx: FieldCtx,
    pub h0: FpPoly,
    pub h1: FpPoly,
    pub h2: FpPoly,
    pub h: FpPoly,
    pub n: u64,
    pub dim: u32,
    /// `(p^k + 1) / 2 mod (p^m - 1)`.
    half_exp: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<u32>,
    pub label: (GfElem, GfElem, GfElem),
}

impl Codeword {
    pub fn weight(&self) -> u64 {
        self.symbols.iter().filter(|&&s| s != 0).count() as u64
    }
}

pub fn build_code(ctx: FieldCtx) -> Result<CyclicCode> {
    let m = ctx.m() as usize;
    let half_exp = ctx.half_exponent();
    let pi_inv = ctx.inv(ctx.pi()).expect("pi is a unit");
    let neg_pi_inv = ctx.inv(ctx.neg(ctx.pi())).expect("-pi is a unit");
    let third = ctx.pi_pow(-(half_exp as i64));
    let h0 = ctx.minimal_poly(pi_inv)?;
    let h1 = ctx.minimal_poly(neg_pi_inv)?;
    let h2 = ctx.minimal_poly(third)?;
    for (name, h) in [("h0", &h0), ("h1", &h1), ("h2", &h2)] {
        if h.degree() != Some(m) {
            return Err(Error::DegenerateCosets(format!(
                "deg {name} = {:?}, expected {m}",
                h.degree()
            )));
        }
    }
    if h0 == h1 || h0 == h2 || h1 == h2 {
        return Err(Error::DegenerateCosets(
            "minimal polynomials are not pairwise distinct".into(),
        ));
    }
    let h = h0.mul(&h1).mul(&h2);
    let n = ctx.order() as u64;
    let p = ctx.p();
    let x_n_minus_1 = FpPoly::monomial(p, n as usize).sub(&FpPoly::one(p));
    if !x_n_minus_1.rem(&h).is_zero() {
        return Err(Error::InternalInconsistency(
            "h(x) does not divide x^n - 1".into(),
        ));
    }
    let dim = h.degree().unwrap_or(0) as u32;
    Ok(CyclicCode {
        ctx,
        h0,
        h1,
        h2,
        h,
        n,
        dim,
        half_exp,
    })
}

impl CyclicCode {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn sum_kind(&self) -> SumKind {
        SumKind::for_k(self.ctx.k())
    }

    /// All `n` symbols of the codeword labelled `(a, b, c)`.
    pub fn codeword(&self, a: GfElem, b: GfElem, c: GfElem) -> Codeword {
        let ctx = &self.ctx;
        let symbols = (0..self.n)
            .map(|t| {
                let pt = ctx.pi_pow(t as i64);
                let bt = if t % 2 == 0 { b } else { ctx.neg(b) };
                let third =
                    ctx.pi_pow(((self.half_exp as u128 * t as u128) % self.n as u128) as i64);
                let sum = ctx.add(ctx.mul(ctx.add(a, bt), pt), ctx.mul(c, third));
                ctx.trace(sum)
            })
            .collect();
        Codeword {
            symbols,
            label: (a, b, c),
        }
    }

    /// Hamming weight by direct count.
    pub fn weight_of(&self, w: &Codeword) -> u64 {
        w.weight()
    }

    /// Weight of the codeword `(a, b, c)` from the exponential-sum identity
    /// `p^m - p^(m-1) - V / (2p)` with `V = S(a,b,c)` or `T(a,b,c)`.
    pub fn weight_by_charsum(
        &self,
        eval: &DEvaluator<'_>,
        a: GfElem,
        b: GfElem,
        c: GfElem,
    ) -> Result<u64> {
        let value = eval.sum_value(self.sum_kind(), a, b, c)?;
        weight_from_sum(self.ctx.p(), self.ctx.m(), value)
    }

    /// Generator rows: the codewords of the labels `(x^j, 0, 0)`,
    /// `(0, x^j, 0)`, `(0, 0, x^j)` for `j < m`.
    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        let m = self.ctx.m() as i64;
        let z = GfElem::ZERO;
        let mut rows = Vec::with_capacity(3 * m as usize);
        for slot in 0..3 {
            for j in 0..m {
                let e = self.ctx.pi_pow(j);
                let label = match slot {
                    0 => (e, z, z),
                    1 => (z, e, z),
                    _ => (z, z, e),
                };
                rows.push(self.codeword(label.0, label.1, label.2).symbols);
            }
        }
        rows
    }

    /// Parity-check membership: `c(x) h(x) = 0 mod x^n - 1`.
    pub fn is_member(&self, word: &[u32]) -> bool {
        let n = self.n as usize;
        assert_eq!(word.len(), n);
        let p = self.ctx.p() as u64;
        let mut prod = vec![0u64; n];
        for (t, &c) in word.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &h) in self.h.coeffs().iter().enumerate() {
                let idx = (t + i) % n;
                prod[idx] = (prod[idx] + c as u64 * h as u64) % p;
            }
        }
        prod.iter().all(|&x| x == 0)
    }
}

/// `(c_0, ..., c_{n-1}) -> (c_{n-1}, c_0, ..., c_{n-2})`.
pub fn cyclic_shift(word: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(word.len());
    if let Some(&last) = word.last() {
        out.push(last);
        out.extend_from_slice(&word[..word.len() - 1]);
    }
    out
}

/// Converts a value of `S`/`T` to the codeword weight it determines.
pub fn weight_from_sum(p: u32, m: u32, value: i128) -> Result<u64> {
    let modulus = 2 * p as i128;
    if value % modulus != 0 {
        return Err(Error::NonDivisibleValue { value, modulus });
    }
    let base = (p as i128).pow(m) - (p as i128).pow(m - 1);
    let w = base - value / modulus;
    u64::try_from(w).map_err(|_| {
        Error::InternalInconsistency(format!("negative weight {w} from value {value}"))
    })
}

/// Weight distribution by enumerating all `p^(3m)` codewords.
pub fn weight_dist_bruteforce(code: &CyclicCode, exec: Exec) -> Result<WeightDist> {
    let ctx = code.ctx();
    let p = ctx.p();
    let m = ctx.m() as usize;
    let count = (p as u128).pow(3 * m as u32);
    if count > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { count });
    }
    let n = code.n as usize;
    let rows = code.generator_rows();
    // rows[0..2m] are driven by the odometer, rows[2m..3m] pick the chunk
    let (inner, outer) = rows.split_at(2 * m);
    let add_row = |word: &mut [u32], row: &[u32]| {
        for (w, &r) in word.iter_mut().zip(row) {
            *w += r;
            if *w >= p {
                *w -= p;
            }
        }
    };
    let chunks = (p as usize).pow(m as u32);
    let hist = exec.map_reduce(
        0..chunks,
        |chunk| {
            let mut word = vec![0u32; n];
            let mut rest = chunk;
            for row in outer {
                for _ in 0..rest % p as usize {
                    add_row(&mut word, row);
                }
                rest /= p as usize;
            }
            let mut hist = vec![0u128; n + 1];
            let mut digits = vec![0u32; inner.len()];
            loop {
                hist[word.iter().filter(|&&s| s != 0).count()] += 1;
                // odometer step; p additions of a row bring it back to zero
                let mut j = 0;
                loop {
                    if j == inner.len() {
                        return hist;
                    }
                    add_row(&mut word, &inner[j]);
                    digits[j] += 1;
                    if digits[j] < p {
                        break;
                    }
                    digits[j] = 0;
                    j += 1;
                }
            }
        },
        || vec![0u128; n + 1],
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let counts: BTreeMap<u64, u128> = hist
        .into_iter()
        .enumerate()
        .map(|(w, f)| (w as u64, f))
        .collect();
    Ok(WeightDist::from_counts(code.n, code.dim, counts))
}

/// Weight distribution from the exact value distribution of `S`/`T`.
pub fn weight_dist_charsum(code: &CyclicCode, engine: Engine, exec: Exec) -> Result<WeightDist> {
    let ctx = code.ctx();
    let values = s_distribution_with(ctx, engine, exec)?;
    let mut counts = BTreeMap::new();
    for (&value, &freq) in &values.freqs {
        *counts
            .entry(weight_from_sum(ctx.p(), ctx.m(), value)?)
            .or_insert(0) += freq;
    }
    Ok(WeightDist::from_counts(code.n, code.dim, counts))
}

/// Weight distribution from the closed-form table.
pub fn weight_dist_closed_form(code: &CyclicCode) -> Result<WeightDist> {
    closed_form_distribution(code.ctx().p(), code.ctx().m())
}

/// Closed-form weight distribution of `C(p, m, k)`; independent of `k`.
pub fn closed_form_distribution(p: u32, m: u32) -> Result<WeightDist> {
    let pu = p as u128;
    let q = pu.pow(m);
    let a = pu.pow(m - 1);
    let b = pu.pow((m - 1) / 2);
    let half = (pu - 1) / 2;
    let rows: [(u128, u128); 7] = [
        (0, 1),
        (half * a, 2 * (q - 1)),
        (half * (2 * a - b), (q - 1) * (q - a) * (a + b)),
        (half * (2 * a + b), (q - 1) * (q - a) * (a - b)),
        ((pu - 1) * (a - b), (q - 1) * (a + b) * (a + b) / 4),
        ((pu - 1) * (a + b), (q - 1) * (a - b) * (a - b) / 4),
        (
            (pu - 1) * a,
            // (q-1)(p^2m + 3/2 p^(2m-2) - 2p^(2m-1) + p^m - 1/2 p^(m-1) - 1)
            (q - 1) * (2 * q * q + 3 * a * a + 2 * q - 4 * q * a - a - 2) / 2,
        ),
    ];
    let mut counts = BTreeMap::new();
    for (w, f) in rows {
        *counts.entry(w as u64).or_insert(0) += f;
    }
    let dist = WeightDist::from_counts((q - 1) as u64, 3 * m, counts);
    if dist.total() != pu.pow(3 * m) {
        return Err(Error::InternalInconsistency(format!(
            "closed-form frequencies sum to {}, expected {}",
            dist.total(),
            pu.pow(3 * m)
        )));
    }
    Ok(dist)
}

/// Expected first moment `sum_w w A_w = (p-1) p^(3m-1) (p^m - 1)`.
pub fn expected_first_moment(p: u32, m: u32) -> u128 {
    let pu = p as u128;
    (pu - 1) * pu.pow(3 * m - 1) * (pu.pow(m) - 1)
}
