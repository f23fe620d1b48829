//! Six-weight cyclic codes `C(p, m, k)` over F_p whose duals have three zeros.
//!
//! The code of length `p^m - 1` and dimension `3m` consists of the words
//! `(Tr(a pi^t + b (-pi)^t + c pi^((p^k+1) t / 2)))_t` for `a, b, c` in
//! F_{p^m}. Its weight distribution is computed three ways:
//!
//! * [`codes::weight_dist_bruteforce`] enumerates every codeword,
//! * [`codes::weight_dist_charsum`] evaluates the exponential sums exactly
//!   through ranks of quadratic forms,
//! * [`codes::weight_dist_closed_form`] evaluates the closed-form table.
//!
//! Sweeps run on rayon when the `parallel` feature is enabled (the default);
//! see [`Exec`].

pub mod arith;
pub mod charsum;
pub mod codes;
pub mod cycint;
mod error;
mod exec;
pub mod gf;
pub mod poly;
pub mod quadform;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gf::{FieldCtx, FieldParams, GfElem};
pub use poly::FpPoly;
pub use weights::WeightDist;
