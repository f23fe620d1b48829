//! Exact exponential sums `D(u,v)`, `S(a,b,c)`, `T(a,b,c)` and their value
//! distributions.
//!
//! `D(u,v) = sum_{y in F_p^*} sum_{x in F_{p^m}} zeta^(y Q_{u,v}(x))` is
//! evaluated either by tallying the exponents into a [`CycInt`] (the direct
//! oracle) or from the rank and discriminant of `Q_{u,v}` (the fast path).
//! For even `k`, `S(a,b,c) = D(a+b,c) + D(a-b,c)`; for odd `k`,
//! `T(a,b,c) = D(a+b,c) + D(a-b,-c)`.

use std::collections::BTreeMap;

use crate::cycint::CycInt;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gf::{FieldCtx, GfElem};
use crate::quadform::{build_form, diagonalize, eval_q, y_summed_gauss, FormBuilder};

/// Largest field on which [`Engine::Auto`] uses the direct oracle.
pub const DIRECT_ENGINE_LIMIT: u32 = 243;

/// How `D(u,v)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Direct below [`DIRECT_ENGINE_LIMIT`], fast above.
    #[default]
    Auto,
    Direct,
    Fast,
}

/// Which of the two sums a parameter set's weights depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// `S`, used when `k` is even.
    S,
    /// `T`, used when `k` is odd.
    T,
}

impl SumKind {
    pub fn for_k(k: u32) -> SumKind {
        if k.is_multiple_of(2) {
            SumKind::S
        } else {
            SumKind::T
        }
    }
}

/// `(p - 1) p^((m+1)/2)`, the nonzero magnitude of `D(u,v)` for `v != 0`.
pub fn d_magnitude(p: u32, m: u32) -> i128 {
    (p as i128 - 1) * (p as i128).pow(m.div_ceil(2))
}

/// Tallies `y Q_{u,v}(x)` into `Z[zeta_p]` and reads off the integer.
pub fn d_direct(ctx: &FieldCtx, u: GfElem, v: GfElem) -> Result<i128> {
    let p = ctx.p();
    let mut hist = vec![0i128; p as usize];
    for x in ctx.elements() {
        hist[eval_q(ctx, u, v, x) as usize] += 1;
    }
    let mut z = CycInt::zero(p);
    for (val, &count) in hist.iter().enumerate() {
        for y in 1..p as u64 {
            z.add_term((y * val as u64 % p as u64) as u32, count);
        }
    }
    z.expect_integer()
}

/// `D(u,v)` from the rank and discriminant class of `Q_{u,v}`.
pub fn d_fast(ctx: &FieldCtx, u: GfElem, v: GfElem) -> i128 {
    y_summed_gauss(ctx, diagonalize(&build_form(ctx, u, v)))
}

/// Reusable evaluator of `D` with precomputed form bases.
#[derive(Debug, Clone)]
pub struct DEvaluator<'a> {
    ctx: &'a FieldCtx,
    builder: FormBuilder,
    direct: bool,
}

impl<'a> DEvaluator<'a> {
    pub fn new(ctx: &'a FieldCtx, engine: Engine) -> Self {
        let direct = match engine {
            Engine::Auto => ctx.size() <= DIRECT_ENGINE_LIMIT,
            Engine::Direct => true,
            Engine::Fast => false,
        };
        DEvaluator {
            ctx,
            builder: FormBuilder::new(ctx),
            direct,
        }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn d(&self, u: GfElem, v: GfElem) -> Result<i128> {
        if self.direct {
            d_direct(self.ctx, u, v)
        } else {
            Ok(y_summed_gauss(
                self.ctx,
                diagonalize(&self.builder.form(self.ctx, u, v)),
            ))
        }
    }

    /// `D(u, v)` for every `u`, indexed by `u`.
    pub fn d_row(&self, v: GfElem) -> Result<Vec<i128>> {
        if self.direct {
            return self
                .ctx
                .elements()
                .map(|u| d_direct(self.ctx, u, v))
                .collect();
        }
        let vp = self.builder.v_part(self.ctx, v);
        Ok(self
            .ctx
            .elements()
            .map(|u| {
                y_summed_gauss(
                    self.ctx,
                    diagonalize(&self.builder.with_u(self.ctx, &vp, u, v)),
                )
            })
            .collect())
    }

    /// Multiset of `D(u, v)` values as `u` runs over the field.
    pub fn value_tally(&self, v: GfElem) -> Result<BTreeMap<i128, u128>> {
        let mut tally = BTreeMap::new();
        for d in self.d_row(v)? {
            *tally.entry(d).or_insert(0) += 1;
        }
        Ok(tally)
    }

    /// `S(a,b,c)` or `T(a,b,c)` according to `kind`.
    pub fn sum_value(&self, kind: SumKind, a: GfElem, b: GfElem, c: GfElem) -> Result<i128> {
        let ctx = self.ctx;
        let partner = match kind {
            SumKind::S => c,
            SumKind::T => ctx.neg(c),
        };
        Ok(self.d(ctx.add(a, b), c)? + self.d(ctx.sub(a, b), partner)?)
    }
}

/// `D(u, v)` over all `u` for a fixed `v != 0`, with the tallies of the three
/// possible values `0, +M, -M`, `M = (p-1) p^((m+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DTable {
    pub v: GfElem,
    pub values: Vec<i128>,
    pub n_zero: u128,
    pub n_plus: u128,
    pub n_minus: u128,
}

impl DTable {
    pub fn sum(&self) -> i128 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.values.iter().map(|d| d * d).sum()
    }

    pub fn tallies(&self) -> (u128, u128, u128) {
        (self.n_zero, self.n_plus, self.n_minus)
    }
}

pub fn d_table(ctx: &FieldCtx, v: GfElem) -> Result<DTable> {
    d_table_with(ctx, v, Engine::Auto)
}

pub fn d_table_with(ctx: &FieldCtx, v: GfElem, engine: Engine) -> Result<DTable> {
    if v.is_zero() {
        return Err(Error::ZeroV);
    }
    let values = DEvaluator::new(ctx, engine).d_row(v)?;
    let mag = d_magnitude(ctx.p(), ctx.m());
    let (mut n_zero, mut n_plus, mut n_minus) = (0, 0, 0);
    for &d in &values {
        match d {
            0 => n_zero += 1,
            d if d == mag => n_plus += 1,
            d if d == -mag => n_minus += 1,
            d => {
                return Err(Error::InternalInconsistency(format!(
                    "D(u, {v}) = {d} outside {{0, +-{mag}}}"
                )))
            }
        }
    }
    Ok(DTable {
        v,
        values,
        n_zero,
        n_plus,
        n_minus,
    })
}

/// `(n_0, n_+, n_-)` predicted for every `v != 0`.
pub fn d_tallies_closed_form(p: u32, m: u32) -> (u128, u128, u128) {
    let p = p as u128;
    let a = p.pow(m - 1);
    let b = p.pow((m - 1) / 2);
    (p.pow(m) - a, (a + b) / 2, (a - b) / 2)
}

fn require_parity(ctx: &FieldCtx, kind: SumKind, op: &'static str) -> Result<()> {
    if SumKind::for_k(ctx.k()) != kind {
        let expected = if kind == SumKind::S { "even" } else { "odd" };
        return Err(Error::WrongParity {
            op,
            expected,
            k: ctx.k(),
        });
    }
    Ok(())
}

/// `S(a,b,c) = D(a+b,c) + D(a-b,c)`; requires even `k`.
pub fn s_value(ctx: &FieldCtx, a: GfElem, b: GfElem, c: GfElem) -> Result<i128> {
    require_parity(ctx, SumKind::S, "s_value")?;
    DEvaluator::new(ctx, Engine::Auto).sum_value(SumKind::S, a, b, c)
}

/// `T(a,b,c) = D(a+b,c) + D(a-b,-c)`; requires odd `k`.
pub fn t_value(ctx: &FieldCtx, a: GfElem, b: GfElem, c: GfElem) -> Result<i128> {
    require_parity(ctx, SumKind::T, "t_value")?;
    DEvaluator::new(ctx, Engine::Auto).sum_value(SumKind::T, a, b, c)
}

/// The defining double sum of `S` (even `k`) or `T` (odd `k`), with the
/// second quadratic form scaled by the fixed nonsquare `lambda`:
/// `sum_y sum_x zeta^(y Tr((a+b) x^2 + c x^(q+1))) +
///  zeta^(y Tr((a-b) lambda x^2 +- c lambda x^(q+1)))`.
pub fn sum_by_definition(ctx: &FieldCtx, a: GfElem, b: GfElem, c: GfElem) -> Result<i128> {
    let p = ctx.p();
    let lambda = ctx.scalar(ctx.lambda());
    let u1 = ctx.add(a, b);
    let u2 = ctx.mul(lambda, ctx.sub(a, b));
    let v2 = match SumKind::for_k(ctx.k()) {
        SumKind::S => ctx.mul(lambda, c),
        SumKind::T => ctx.neg(ctx.mul(lambda, c)),
    };
    let mut z = CycInt::zero(p);
    for x in ctx.elements() {
        let q1 = eval_q(ctx, u1, c, x) as u64;
        let q2 = eval_q(ctx, u2, v2, x) as u64;
        for y in 1..p as u64 {
            z.add_term((y * q1 % p as u64) as u32, 1);
            z.add_term((y * q2 % p as u64) as u32, 1);
        }
    }
    z.expect_integer()
}

/// Frequencies of the values of `S` (or `T`) over all `p^(3m)` triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SValueDist {
    pub kind: SumKind,
    pub freqs: BTreeMap<i128, u128>,
}

impl SValueDist {
    pub fn total(&self) -> u128 {
        self.freqs.values().sum()
    }

    pub fn freq(&self, value: i128) -> u128 {
        self.freqs.get(&value).copied().unwrap_or(0)
    }

    /// Sum of `value * frequency`.
    pub fn value_sum(&self) -> i128 {
        self.freqs.iter().map(|(&v, &f)| v * f as i128).sum()
    }
}

fn merge_tallies(mut a: BTreeMap<i128, u128>, b: BTreeMap<i128, u128>) -> BTreeMap<i128, u128> {
    for (v, f) in b {
        *a.entry(v).or_insert(0) += f;
    }
    a
}

pub fn s_distribution(ctx: &FieldCtx) -> Result<SValueDist> {
    s_distribution_with(ctx, Engine::Auto, Exec::default())
}

/// Value distribution of `S`/`T` without enumerating triples.
///
/// Since `(a, b) -> (a+b, a-b)` is a bijection of F_{p^m}^2 for odd p, the
/// number of triples with value `V` is
/// `sum_c #{(u1, u2) : D(u1, c) + D(u2, +-c) = V}`, a convolution of the
/// per-`c` value tallies of `D`.
pub fn s_distribution_with(ctx: &FieldCtx, engine: Engine, exec: Exec) -> Result<SValueDist> {
    let kind = SumKind::for_k(ctx.k());
    let eval = DEvaluator::new(ctx, engine);
    let tallies: Vec<Result<BTreeMap<i128, u128>>> = exec
        .map_collect(0..ctx.size() as usize, |c| {
            eval.value_tally(ctx.elem(c as u32))
        });
    let tallies = tallies.into_iter().collect::<Result<Vec<_>>>()?;
    let freqs = exec.map_reduce(
        0..ctx.size() as usize,
        |c| {
            let partner = match kind {
                SumKind::S => c,
                SumKind::T => ctx.neg(ctx.elem(c as u32)).index() as usize,
            };
            let mut out = BTreeMap::new();
            for (&v1, &f1) in &tallies[c] {
                for (&v2, &f2) in &tallies[partner] {
                    *out.entry(v1 + v2).or_insert(0) += f1 * f2;
                }
            }
            out
        },
        BTreeMap::new,
        merge_tallies,
    );
    Ok(SValueDist { kind, freqs })
}

/// How a triple's sum is evaluated during exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleEval {
    /// `D(a+b, c) + D(a-b, +-c)`.
    DSum,
    /// The defining double sum, see [`sum_by_definition`].
    Definition,
}

/// Value distribution of `S`/`T` by evaluating every triple `(a, b, c)`.
pub fn s_distribution_exhaustive(
    ctx: &FieldCtx,
    how: TripleEval,
    exec: Exec,
) -> Result<SValueDist> {
    let kind = SumKind::for_k(ctx.k());
    let eval = DEvaluator::new(ctx, Engine::Auto);
    let freqs = exec.map_reduce(
        0..ctx.size() as usize,
        |c| -> Result<BTreeMap<i128, u128>> {
            let c = ctx.elem(c as u32);
            let mut out = BTreeMap::new();
            for a in ctx.elements() {
                for b in ctx.elements() {
                    let value = match how {
                        TripleEval::DSum => eval.sum_value(kind, a, b, c)?,
                        TripleEval::Definition => sum_by_definition(ctx, a, b, c)?,
                    };
                    *out.entry(value).or_insert(0) += 1;
                }
            }
            Ok(out)
        },
        || Ok(BTreeMap::new()),
        |a, b| Ok(merge_tallies(a?, b?)),
    )?;
    Ok(SValueDist { kind, freqs })
}

/// Reading of the frequency of the value `-2M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinusTwoCount {
    /// `n_-^2 (p^m - 1)`, consistent with the frequency total.
    MinusTallySquared,
    /// `n_+^2 (p^m - 1)`.
    PlusTallySquared,
}

/// Closed-form value distribution of `S`/`T`.
pub fn s_distribution_closed_form(p: u32, m: u32, kind: SumKind) -> SValueDist {
    s_distribution_closed_form_reading(p, m, kind, MinusTwoCount::MinusTallySquared)
}

pub fn s_distribution_closed_form_reading(
    p: u32,
    m: u32,
    kind: SumKind,
    reading: MinusTwoCount,
) -> SValueDist {
    let (n0, n1, nm1) = d_tallies_closed_form(p, m);
    let q = (p as u128).pow(m);
    let mag = d_magnitude(p, m);
    let big = (p as i128 - 1) * q as i128;
    let n_minus2 = match reading {
        MinusTwoCount::MinusTallySquared => nm1 * nm1,
        MinusTwoCount::PlusTallySquared => n1 * n1,
    } * (q - 1);
    let mut freqs = BTreeMap::new();
    freqs.insert(2 * big, 1);
    freqs.insert(big, 2 * (q - 1));
    freqs.insert(mag, 2 * n0 * n1 * (q - 1));
    freqs.insert(-mag, 2 * n0 * nm1 * (q - 1));
    freqs.insert(2 * mag, n1 * n1 * (q - 1));
    freqs.insert(-2 * mag, n_minus2);
    // (q - 1)(p^2m + 3/2 p^(2m-2) - 2 p^(2m-1) + p^m - 1/2 p^(m-1) - 1)
    let pu = p as u128;
    let twice = 2 * pu.pow(2 * m) + 3 * pu.pow(2 * m - 2) + 2 * q
        - 4 * pu.pow(2 * m - 1)
        - pu.pow(m - 1)
        - 2;
    debug_assert_eq!(twice % 2, 0);
    freqs.insert(0, (q - 1) * (twice / 2));
    SValueDist { kind, freqs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, m: u32, k: u32) -> FieldCtx {
        FieldCtx::new(&FieldParams::new(p, m, k)).unwrap()
    }

    /// `D(u,v)` straight from its definition, one exponent at a time.
    fn d_oracle(ctx: &FieldCtx, u: GfElem, v: GfElem) -> i128 {
        let mut z = CycInt::zero(ctx.p());
        let q = ctx.p().pow(ctx.k() % ctx.m()) as u128;
        for x in ctx.elements() {
            let inner = ctx.add(ctx.mul(u, ctx.pow(x, 2)), ctx.mul(v, ctx.pow(x, q + 1)));
            for y in 1..ctx.p() {
                z.add_term(ctx.trace_by_definition(ctx.mul(ctx.scalar(y), inner)), 1);
            }
        }
        z.to_integer().unwrap()
    }

    #[test]
    fn d_at_v_zero_dichotomy() {
        for (p, m) in [(3, 3), (5, 3)] {
            let ctx = field(p, m, 1);
            let q = ctx.size() as i128;
            assert_eq!(
                d_direct(&ctx, GfElem::ZERO, GfElem::ZERO).unwrap(),
                (p as i128 - 1) * q
            );
            assert_eq!(
                d_fast(&ctx, GfElem::ZERO, GfElem::ZERO),
                (p as i128 - 1) * q
            );
            for u in ctx.nonzero_elements() {
                assert_eq!(d_direct(&ctx, u, GfElem::ZERO).unwrap(), 0);
                assert_eq!(d_fast(&ctx, u, GfElem::ZERO), 0);
            }
        }
    }

    #[test]
    fn fast_equals_direct_exhaustive() {
        let ctx = field(3, 3, 1);
        for u in ctx.elements() {
            for v in ctx.elements() {
                let d = d_direct(&ctx, u, v).unwrap();
                assert_eq!(d, d_fast(&ctx, u, v));
                assert_eq!(d, d_oracle(&ctx, u, v));
            }
        }
    }

    #[test]
    fn table_small() {
        let ctx = field(3, 3, 1);
        let t = d_table(&ctx, ctx.pi()).unwrap();
        assert_eq!(t.tallies(), (18, 6, 3));
        assert!(t.values.iter().all(|d| [0, 18, -18].contains(d)));
        assert_eq!(d_table(&ctx, GfElem::ZERO).unwrap_err(), Error::ZeroV);
        assert_eq!(d_tallies_closed_form(3, 5), (162, 45, 36));
        assert_eq!(d_tallies_closed_form(5, 3), (100, 15, 10));
        let ctx = field(5, 3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let v = ctx.elem(rng.gen_range(1..ctx.size()));
            let fast = d_table_with(&ctx, v, Engine::Fast).unwrap();
            assert_eq!(fast.tallies(), (100, 15, 10));
            assert_eq!(fast.sum(), 4 * 125);
            // (n_+ + n_-) M^2 = 25 * 100^2
            assert_eq!(fast.sum_of_squares(), 16 * 125 * 125);
        }
    }

    #[test]
    fn parity_guards() {
        let odd = field(3, 3, 1);
        let even = field(3, 3, 2);
        let z = GfElem::ZERO;
        assert!(matches!(
            s_value(&odd, z, z, z),
            Err(Error::WrongParity { .. })
        ));
        assert!(matches!(
            t_value(&even, z, z, z),
            Err(Error::WrongParity { .. })
        ));
        assert_eq!(s_value(&even, z, z, z).unwrap(), 108);
        assert_eq!(t_value(&odd, z, z, z).unwrap(), 108);
        let a = even.pi();
        assert_eq!(s_value(&even, a, a, z).unwrap(), 54);
        assert_eq!(s_value(&even, a, even.neg(a), z).unwrap(), 54);
    }

    #[test]
    fn identity_matches_definition() {
        for (p, m, k) in [(3, 3, 1), (3, 3, 2), (5, 3, 1), (5, 3, 2)] {
            let ctx = field(p, m, k);
            let eval = DEvaluator::new(&ctx, Engine::Fast);
            let kind = SumKind::for_k(k);
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..40 {
                let [a, b, c] = [0; 3].map(|_| ctx.elem(rng.gen_range(0..ctx.size())));
                assert_eq!(
                    eval.sum_value(kind, a, b, c).unwrap(),
                    sum_by_definition(&ctx, a, b, c).unwrap()
                );
            }
        }
    }

    #[test]
    fn convolution_matches_exhaustive_small() {
        for k in [1, 2] {
            let ctx = field(3, 3, k);
            let fast = s_distribution_with(&ctx, Engine::Fast, Exec::Sequential).unwrap();
            let direct = s_distribution_with(&ctx, Engine::Direct, Exec::Parallel).unwrap();
            let brute = s_distribution_exhaustive(&ctx, TripleEval::DSum, Exec::Parallel).unwrap();
            assert_eq!(fast, direct);
            assert_eq!(fast, brute);
            assert_eq!(fast, s_distribution_closed_form(3, 3, SumKind::for_k(k)));
            assert_eq!(fast.total(), 3u128.pow(9));
        }
    }

    #[test]
    fn closed_form_totals() {
        for (p, m) in [(3, 3), (3, 5), (3, 7), (5, 3), (5, 5), (7, 3), (11, 3)] {
            let d = s_distribution_closed_form(p, m, SumKind::S);
            assert_eq!(d.total(), (p as u128).pow(3 * m));
            let alt = s_distribution_closed_form_reading(
                p,
                m,
                SumKind::S,
                MinusTwoCount::PlusTallySquared,
            );
            assert_ne!(alt.total(), (p as u128).pow(3 * m));
        }
        let d = s_distribution_closed_form(3, 3, SumKind::S);
        assert_eq!(d.freq(18), 26 * 18 * 12);
        assert_eq!(d.freq(108), 1);
        assert_eq!(d.freq(54), 52);
    }
}
