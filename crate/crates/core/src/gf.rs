//! Arithmetic in F_p and F_{p^m}.
//!
//! Elements of F_{p^m} are polynomial-basis coordinate vectors over
//! `{1, x, ..., x^(m-1)}` modulo a primitive polynomial, packed into a single
//! integer index `sum coords[i] * p^i`. The residue class of `x` is the
//! primitive element; multiplication goes through full log/antilog tables and
//! addition through a Zech logarithm table, so every field operation is a
//! handful of table lookups.

use std::fmt;

use crate::arith::{self, gcd, is_prime};
use crate::error::{Error, Result};
use crate::poly::FpPoly;

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

/// Parameters `(p, m, k)` plus an optional primitive polynomial
/// (constant term first, monic, length `m + 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub k: u32,
    pub prim_poly: Option<Vec<u32>>,
}

impl FieldParams {
    pub fn new(p: u32, m: u32, k: u32) -> Self {
        FieldParams {
            p,
            m,
            k,
            prim_poly: None,
        }
    }

    pub fn with_prim_poly(mut self, coeffs: Vec<u32>) -> Self {
        self.prim_poly = Some(coeffs);
        self
    }

    /// Checks the standing assumptions on `(p, m, k)`.
    pub fn validate(&self) -> Result<()> {
        if self.p < 3 || !is_prime(self.p as u64) {
            return Err(Error::NotPrime(self.p as u64));
        }
        if self.m < 3 || self.m.is_multiple_of(2) {
            return Err(Error::BadDegree(self.m));
        }
        if self.k == 0 {
            return Err(Error::BadExponent);
        }
        let g = gcd(self.m as u64, self.k as u64) as u32;
        if g != 1 {
            return Err(Error::GcdViolation {
                m: self.m,
                k: self.k,
                gcd: g,
            });
        }
        let size = (self.p as u64).checked_pow(self.m).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::TableTooLarge { size });
        }
        Ok(())
    }
}

/// An element of F_{p^m}, stored as its packed coordinate index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GfElem(u32);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);
    pub const ONE: GfElem = GfElem(1);

    /// Packed index in `[0, p^m)`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Immutable description of F_p and F_{p^m}.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    k: u32,
    size: u32,
    prim_poly: FpPoly,
    lambda: u32,
    /// `antilog[e] = pi^e` for `e` in `[0, size - 1)`.
    antilog: Vec<u32>,
    /// `log[a]` for nonzero `a`; `NO_LOG` at zero.
    log: Vec<u32>,
    /// `zech[n] = log(1 + pi^n)`, `NO_LOG` when `1 + pi^n = 0`.
    zech: Vec<u32>,
    trace: Vec<u8>,
}

impl FieldCtx {
    /// Builds the field context, searching for a primitive polynomial when
    /// none is supplied.
    pub fn new(params: &FieldParams) -> Result<FieldCtx> {
        params.validate()?;
        let (p, m) = (params.p, params.m);
        let prim_poly = match &params.prim_poly {
            Some(coeffs) => {
                let f = FpPoly::new(p, coeffs.iter().copied());
                let well_formed = coeffs.len() == m as usize + 1
                    && coeffs.iter().all(|&c| c < p)
                    && f.degree() == Some(m as usize)
                    && f.is_monic();
                if !well_formed {
                    return Err(Error::BadPolynomial(format!("{coeffs:?}")));
                }
                if !f.is_primitive() {
                    return Err(Error::NotPrimitive(f.to_string()));
                }
                f
            }
            None => find_primitive_poly(p, m)?,
        };
        Ok(Self::from_primitive(p, m, params.k, prim_poly))
    }

    fn from_primitive(p: u32, m: u32, k: u32, prim_poly: FpPoly) -> FieldCtx {
        let size = p.pow(m);
        let order = (size - 1) as usize;
        let mut antilog = Vec::with_capacity(order);
        let mut log = vec![NO_LOG; size as usize];
        // multiply by x repeatedly, reducing with x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        let mut coords = vec![0u32; m as usize];
        coords[0] = 1;
        let low: Vec<u32> = prim_poly.coeffs()[..m as usize].to_vec();
        for e in 0..order {
            let idx = pack(&coords, p);
            debug_assert_eq!(log[idx as usize], NO_LOG, "x is not primitive");
            log[idx as usize] = e as u32;
            antilog.push(idx);
            let top = coords[m as usize - 1];
            for i in (1..m as usize).rev() {
                coords[i] = coords[i - 1];
            }
            coords[0] = 0;
            if top != 0 {
                for i in 0..m as usize {
                    coords[i] = (coords[i] + (p - top) * low[i]) % p;
                }
            }
        }

        let mut zech = vec![NO_LOG; order];
        for (n, z) in zech.iter_mut().enumerate() {
            let sum = digit_add(1, antilog[n], p, m);
            if sum != 0 {
                *z = log[sum as usize];
            }
        }

        let lambda = (2..p)
            .find(|&a| arith::legendre(a, p) == -1)
            .expect("odd prime has a nonsquare");

        let mut ctx = FieldCtx {
            p,
            m,
            k,
            size,
            prim_poly,
            lambda,
            antilog,
            log,
            zech,
            trace: Vec::new(),
        };
        let basis_traces: Vec<u32> = (0..m)
            .map(|i| ctx.trace_by_definition(ctx.pi_pow(i as i64)))
            .collect();
        ctx.trace = (0..size)
            .map(|idx| {
                let mut rest = idx;
                let mut t = 0u64;
                for &bt in &basis_traces {
                    t += (rest % p) as u64 * bt as u64;
                    rest /= p;
                }
                (t % p as u64) as u8
            })
            .collect();
        ctx
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn params(&self) -> FieldParams {
        FieldParams::new(self.p, self.m, self.k).with_prim_poly(self.prim_poly.coeffs().to_vec())
    }

    /// Same field, different `k`. The tables do not depend on `k`.
    pub fn with_k(&self, k: u32) -> Result<FieldCtx> {
        FieldParams::new(self.p, self.m, k).validate()?;
        let mut ctx = self.clone();
        ctx.k = k;
        Ok(ctx)
    }

    /// Same field with a different choice of fixed nonsquare.
    pub fn with_lambda(&self, lambda: u32) -> Result<FieldCtx> {
        if arith::legendre(lambda, self.p) != -1 {
            return Err(Error::InternalInconsistency(format!(
                "{lambda} is not a nonsquare mod {}",
                self.p
            )));
        }
        let mut ctx = self.clone();
        ctx.lambda = lambda % self.p;
        Ok(ctx)
    }

    /// Field size `p^m`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Multiplicative group order `p^m - 1`.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn prim_poly(&self) -> &FpPoly {
        &self.prim_poly
    }

    /// The fixed nonsquare of F_p (smallest positive representative).
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn pi(&self) -> GfElem {
        self.pi_pow(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (0..self.size).map(GfElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        (1..self.size).map(GfElem)
    }

    /// Element with the given packed index. Panics if out of range.
    pub fn elem(&self, index: u32) -> GfElem {
        assert!(index < self.size, "index {index} outside F_{}", self.size);
        GfElem(index)
    }

    pub fn from_coords(&self, coords: &[u32]) -> GfElem {
        assert_eq!(coords.len(), self.m as usize);
        GfElem(pack(coords, self.p))
    }

    pub fn coords(&self, a: GfElem) -> Vec<u32> {
        let mut rest = a.0;
        (0..self.m)
            .map(|_| {
                let d = rest % self.p;
                rest /= self.p;
                d
            })
            .collect()
    }

    /// Embeds a residue of F_p.
    pub fn scalar(&self, c: u32) -> GfElem {
        GfElem(c % self.p)
    }

    /// The F_p value of an element lying in the prime field.
    pub fn as_scalar(&self, a: GfElem) -> Option<u32> {
        (a.0 < self.p).then_some(a.0)
    }

    pub fn log(&self, a: GfElem) -> Option<u32> {
        let l = self.log[a.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    /// `pi^e` for any integer exponent, reduced modulo `p^m - 1`.
    pub fn pi_pow(&self, e: i64) -> GfElem {
        let e = e.rem_euclid(self.order() as i64) as usize;
        GfElem(self.antilog[e])
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.order();
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let n = if lb >= la { lb - la } else { lb + order - la };
        match self.zech[n as usize] {
            NO_LOG => GfElem::ZERO,
            z => {
                let e = la as u64 + z as u64;
                GfElem(self.antilog[(e % order as u64) as usize])
            }
        }
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        if a.0 == 0 {
            return a;
        }
        // -1 = pi^((p^m - 1) / 2)
        let order = self.order() as u64;
        let e = self.log[a.0 as usize] as u64 + order / 2;
        GfElem(self.antilog[(e % order) as usize])
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        if a.0 == 0 || b.0 == 0 {
            return GfElem::ZERO;
        }
        let e = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        GfElem(self.antilog[(e % self.order() as u64) as usize])
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn inv(&self, a: GfElem) -> Option<GfElem> {
        self.log(a).map(|l| self.pi_pow(-(l as i64)))
    }

    pub fn pow(&self, a: GfElem, e: u128) -> GfElem {
        if a.0 == 0 {
            return if e == 0 { GfElem::ONE } else { GfElem::ZERO };
        }
        let order = self.order() as u128;
        let l = self.log[a.0 as usize] as u128;
        GfElem(self.antilog[(l * (e % order) % order) as usize])
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: GfElem, i: u32) -> GfElem {
        self.pow(a, (self.p as u128).pow(i % self.m))
    }

    /// Absolute trace to F_p, read from the precomputed table.
    pub fn trace(&self, a: GfElem) -> u32 {
        self.trace[a.0 as usize] as u32
    }

    /// Trace computed as `a + a^p + ... + a^(p^(m-1))`.
    pub fn trace_by_definition(&self, a: GfElem) -> u32 {
        let mut acc = GfElem::ZERO;
        let mut conj = a;
        for _ in 0..self.m {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj, 1);
        }
        self.as_scalar(acc).expect("trace must lie in F_p")
    }

    /// Legendre symbol of a residue modulo p.
    pub fn legendre(&self, a: u32) -> i8 {
        arith::legendre(a, self.p)
    }

    /// Nonzero squares of F_{p^m} are exactly the even powers of `pi`.
    pub fn is_square(&self, a: GfElem) -> bool {
        self.log(a).is_some_and(|l| l % 2 == 0)
    }

    /// `p^k mod (p^m - 1)`: the exponent `x -> x^(p^k)` acts by.
    pub fn frob_k_exponent(&self) -> u64 {
        (self.p as u64).pow(self.k % self.m) % self.order() as u64
    }

    /// `(p^k + 1) / 2 mod (p^m - 1)`.
    pub fn half_exponent(&self) -> u64 {
        let modulus = 2 * self.order() as u128;
        let mut pk = 1u128;
        for _ in 0..self.k {
            pk = pk * self.p as u128 % modulus;
        }
        (((pk + 1) % modulus) / 2) as u64
    }

    /// Sign `s` with `lambda^((1 + p^k) / 2) = s * lambda`.
    pub fn lambda_power_check(&self) -> Result<i8> {
        let lambda = self.scalar(self.lambda);
        let lhs = self.pow(lambda, self.half_exponent() as u128);
        if lhs == lambda {
            Ok(1)
        } else if lhs == self.neg(lambda) {
            Ok(-1)
        } else {
            Err(Error::InternalInconsistency(format!(
                "lambda^((1+p^k)/2) = {lhs} is neither lambda nor -lambda"
            )))
        }
    }

    /// Cyclotomic coset `{a, a^p, a^(p^2), ...}` of a nonzero element.
    pub fn conjugates(&self, a: GfElem) -> Vec<GfElem> {
        let mut out = vec![a];
        let mut c = self.frobenius(a, 1);
        while c != a {
            out.push(c);
            c = self.frobenius(c, 1);
        }
        out
    }

    /// Monic minimal polynomial of `a` over F_p.
    pub fn minimal_poly(&self, a: GfElem) -> Result<FpPoly> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        // coefficients over F_{p^m}, constant first
        let mut acc: Vec<GfElem> = vec![GfElem::ONE];
        for root in self.conjugates(a) {
            let neg_root = self.neg(root);
            let mut next = vec![GfElem::ZERO; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.add(next[i], self.mul(neg_root, c));
            }
            acc = next;
        }
        let coeffs = acc
            .iter()
            .map(|&c| {
                self.as_scalar(c).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "minimal polynomial coefficient {c} outside F_p"
                    ))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(FpPoly::new(self.p, coeffs))
    }

    /// Evaluates an F_p polynomial at a field element.
    pub fn eval_poly(&self, f: &FpPoly, a: GfElem) -> GfElem {
        f.coeffs().iter().rev().fold(GfElem::ZERO, |acc, &c| {
            self.add(self.mul(acc, a), self.scalar(c))
        })
    }
}

fn pack(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Coordinate-wise addition of packed indices.
fn digit_add(mut a: u32, mut b: u32, p: u32, m: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

/// First primitive polynomial in ascending order of `sum c_i p^i` over the
/// non-leading coefficients `(c_0, ..., c_{m-1})`.
pub fn find_primitive_poly(p: u32, m: u32) -> Result<FpPoly> {
    primitive_polys(p, m)
        .next()
        .ok_or(Error::NoPrimitivePolynomial { p, m })
}

/// All monic primitive polynomials of degree `m`, in search order.
pub fn primitive_polys(p: u32, m: u32) -> impl Iterator<Item = FpPoly> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(move |idx| {
            let mut rest = idx;
            let mut coeffs: Vec<u32> = (0..m)
                .map(|_| {
                    let d = (rest % p as u64) as u32;
                    rest /= p as u64;
                    d
                })
                .collect();
            coeffs.push(1);
            FpPoly::new(p, coeffs)
        })
        .filter(|f| f.coeff(0) != 0 && f.is_primitive())
}
