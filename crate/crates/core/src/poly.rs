//! Dense univariate polynomials over a prime field F_p.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::arith::{inv_mod, prime_factors};

/// Polynomial over F_p with coefficients stored constant term first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = u32>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn zero(p: u32) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u32) -> Self {
        FpPoly::new(p, [1])
    }

    /// The monomial `x^n`.
    pub fn monomial(p: u32, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        FpPoly { p, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.p),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n).map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u32))
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let p = self.p as u64;
        let lead_inv = inv_mod(divisor.leading(), self.p) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        if rem.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * lead_inv % p;
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - c * d as u64 % p) % p;
            }
        }
        rem.truncate(dd);
        (
            FpPoly::new(self.p, quot.into_iter().map(|c| c as u32)),
            FpPoly::new(self.p, rem.into_iter().map(|c| c as u32)),
        )
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    pub fn make_monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p) as u64;
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| (c as u64 * inv % self.p as u64) as u32),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u128, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Reciprocal polynomial `x^deg f(1/x)`.
    pub fn reciprocal(&self) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().rev().copied())
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.make_monic();
        let x = FpPoly::monomial(self.p, 1);
        let p = self.p as u128;
        // x^(p^e) mod f
        let frob = |e: usize| x.pow_mod(p.pow(e as u32), &f);
        if frob(n).sub(&x).rem(&f) != FpPoly::zero(self.p) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|q| {
            let h = frob(n / q as usize).sub(&x).rem(&f);
            f.gcd(&h).degree() == Some(0)
        })
    }

    /// True when `x` has multiplicative order exactly `p^n - 1` modulo this
    /// degree-n polynomial, i.e. the polynomial is primitive.
    pub fn is_primitive(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 && self.is_monic() => n,
            _ => return false,
        };
        if self.coeff(0) == 0 || !self.is_irreducible() {
            return false;
        }
        let order = (self.p as u128).pow(n as u32) - 1;
        let x = FpPoly::monomial(self.p, 1);
        let one = FpPoly::one(self.p);
        if x.pow_mod(order, self) != one {
            return false;
        }
        prime_factors(order as u64)
            .into_iter()
            .all(|q| x.pow_mod(order / q as u128, self) != one)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serializes as a JSON array of coefficients, constant term first.
impl Serialize for FpPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_json() {
        let f = FpPoly::new(3, [1, 2, 0, 1]);
        assert_eq!(f.to_string(), "x^3 + 2x + 1");
        assert_eq!(serde_json::to_string(&f).unwrap(), "[1,2,0,1]");
        assert_eq!(FpPoly::new(3, [0, 0, 0]).degree(), None);
    }

    #[test]
    fn irreducibility_small() {
        // x^3 + 2x + 1 over F_3 has no roots, degree 3 => irreducible
        assert!(FpPoly::new(3, [1, 2, 0, 1]).is_irreducible());
        // x^3 + 1 = (x + 1)^3 over F_3
        assert!(!FpPoly::new(3, [1, 0, 0, 1]).is_irreducible());
        // x^2 + 1 irreducible over F_3, reducible over F_5
        assert!(FpPoly::new(3, [1, 0, 1]).is_irreducible());
        assert!(!FpPoly::new(5, [1, 0, 1]).is_irreducible());
        // (x^2 + 1)^2 over F_3 has no roots but is reducible
        let sq = FpPoly::new(3, [1, 0, 1]).mul(&FpPoly::new(3, [1, 0, 1]));
        assert!(!sq.is_irreducible());
    }

    #[test]
    fn primitivity_small() {
        assert!(FpPoly::new(3, [1, 2, 0, 1]).is_primitive());
        // x^2 + 1 over F_3: x has order 4, not 8
        assert!(!FpPoly::new(3, [1, 0, 1]).is_primitive());
        // count primitive cubics over F_3: phi(26)/3 = 4
        let count = (0..27u32)
            .filter(|&i| FpPoly::new(3, [i % 3, i / 3 % 3, i / 9, 1]).is_primitive())
            .count();
        assert_eq!(count, 4);
    }

    fn poly_strategy() -> impl Strategy<Value = FpPoly> {
        prop::collection::vec(0u32..5, 0..8).prop_map(|c| FpPoly::new(5, c))
    }

    proptest! {
        #[test]
        fn division_identity(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.rem(&g).is_zero());
            prop_assert!(b.rem(&g).is_zero());
        }
    }
}
