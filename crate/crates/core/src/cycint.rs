//! Exact elements of Z[zeta_p].

use std::fmt;

use crate::error::{Error, Result};

/// `sum counts[j] * zeta^j` for a primitive p-th root of unity `zeta`.
///
/// The representation is not unique because `1 + zeta + ... + zeta^(p-1) = 0`;
/// [`CycInt::canonical`] picks the representative with `counts[p-1] = 0`.
#[derive(Debug, Clone)]
pub struct CycInt {
    counts: Vec<i128>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt {
            counts: vec![0; p as usize],
        }
    }

    pub fn from_int(p: u32, n: i128) -> Self {
        let mut z = CycInt::zero(p);
        z.counts[0] = n;
        z
    }

    /// `zeta^e`.
    pub fn zeta_pow(p: u32, e: u64) -> Self {
        let mut z = CycInt::zero(p);
        z.counts[(e % p as u64) as usize] = 1;
        z
    }

    pub fn from_counts(counts: Vec<i128>) -> Self {
        assert!(counts.len() >= 2, "need a modulus p >= 2");
        CycInt { counts }
    }

    /// The quadratic Gauss sum `sum_{t mod p} zeta^(t^2)`.
    pub fn quadratic_gauss_sum(p: u32) -> Self {
        let mut g = CycInt::zero(p);
        for t in 0..p as u64 {
            g.counts[(t * t % p as u64) as usize] += 1;
        }
        g
    }

    pub fn modulus(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn counts(&self) -> &[i128] {
        &self.counts
    }

    /// Adds `n` to the coefficient of `zeta^e`.
    pub fn add_term(&mut self, e: u32, n: i128) {
        let p = self.counts.len();
        self.counts[e as usize % p] += n;
    }

    pub fn canonical(&self) -> CycInt {
        let top = *self.counts.last().unwrap();
        CycInt {
            counts: self.counts.iter().map(|&c| c - top).collect(),
        }
    }

    pub fn is_rational_integer(&self) -> bool {
        let c = self.canonical();
        c.counts[1..].iter().all(|&x| x == 0)
    }

    /// The integer value, if this element lies in Z.
    pub fn to_integer(&self) -> Option<i128> {
        let c = self.canonical();
        c.counts[1..].iter().all(|&x| x == 0).then_some(c.counts[0])
    }

    /// Like [`CycInt::to_integer`] but reports a non-integral sum as an error.
    pub fn expect_integer(&self) -> Result<i128> {
        self.to_integer()
            .ok_or_else(|| Error::NonIntegerSum(format!("{self}")))
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.modulus(), other.modulus());
        CycInt {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, n: i128) -> CycInt {
        CycInt {
            counts: self.counts.iter().map(|&c| c * n).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.modulus(), other.modulus());
        let p = self.counts.len();
        let mut out = vec![0i128; p];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CycInt { counts: out }
    }

    pub fn pow(&self, e: u32) -> CycInt {
        (0..e).fold(CycInt::from_int(self.modulus(), 1), |acc, _| acc.mul(self))
    }

    /// Galois action `zeta -> zeta^s` for `s` prime to p.
    pub fn galois(&self, s: u32) -> CycInt {
        let p = self.counts.len();
        let mut out = vec![0i128; p];
        for (j, &c) in self.counts.iter().enumerate() {
            out[j * s as usize % p] += c;
        }
        CycInt { counts: out }
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.canonical().counts == other.canonical().counts
    }
}

impl Eq for CycInt {}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let mut first = true;
        for (j, &n) in c.counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{n}")?,
                _ => write!(f, "{n}z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
