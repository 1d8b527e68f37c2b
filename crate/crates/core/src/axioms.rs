//! Seeded randomized verification of the ℚ-vector-space structure of `L0^×`
//! and of the torsion-freeness and root bijectivity of `R^×`.
//!
//! Each check draws its inputs from the per-sample stream
//! [`sample_rng(seed, index)`](crate::random::sample_rng), evaluates the
//! samples in parallel, and reports for every law how many comparisons were
//! made, how many were skipped and the lowest-indexed counterexample.
//! Comparisons are exact on canonical forms truncated to the common
//! precision; there is no statistical tolerance.
//!
//! The arithmetic under test is abstracted by [`Arithmetic`] so that the
//! harness can be pointed at deliberately broken implementations
//! ([`FaultyArithmetic`]) and shown to catch them.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::puiseux::{compose, decompose, Context, L0Element, PuiseuxUnit, Rational, RawSeries};
use crate::random::{random_element, random_scalar, random_unit, sample_rng};
use crate::text::{format_element, format_unit};

/// The primitive group operations the harness exercises. Everything else
/// (scalar action, element operations) is derived from these, so a fault in
/// one primitive propagates the way it would in real code.
pub trait Arithmetic: Sync {
    fn context(&self) -> &Context;

    fn unit_mul(&self, u: &PuiseuxUnit, v: &PuiseuxUnit) -> Result<PuiseuxUnit> {
        self.context().unit_mul(u, v)
    }

    fn unit_root(&self, u: &PuiseuxUnit, k: u64) -> Result<PuiseuxUnit> {
        self.context().unit_root(u, k)
    }

    fn unit_pow(&self, u: &PuiseuxUnit, e: &BigInt) -> PuiseuxUnit {
        u.pow(e)
    }

    fn decompose(&self, raw: &RawSeries) -> Result<(Rational, PuiseuxUnit)> {
        decompose(raw)
    }

    fn scalar_mul_unit(&self, r: &Rational, u: &PuiseuxUnit) -> Result<PuiseuxUnit> {
        let k = r.denom().to_u64().ok_or_else(|| Error::ScalarTooLarge(r.to_string()))?;
        self.unit_root(&self.unit_pow(u, r.numer()), k)
    }

    fn element_mul(&self, a: &L0Element, b: &L0Element) -> Result<L0Element> {
        Ok(compose(a.val() + b.val(), self.unit_mul(a.unit(), b.unit())?))
    }

    fn element_scalar_mul(&self, r: &Rational, a: &L0Element) -> Result<L0Element> {
        Ok(compose(r * a.val(), self.scalar_mul_unit(r, a.unit())?))
    }
}

impl Arithmetic for Context {
    fn context(&self) -> &Context {
        self
    }
}

/// Faults that [`FaultyArithmetic`] can inject.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// `unit_mul` zeroes the highest known coefficient of its result.
    MulDropsTop,
    /// `unit_root` zeroes the highest known coefficient of its result.
    RootDropsTop,
    /// `decompose` zeroes the highest known coefficient of the unit part.
    DecomposeDropsTop,
    /// `decompose` reports a valuation one grid step too high.
    DecomposeShiftsValuation,
}

impl Fault {
    pub const ALL: [Fault; 4] =
        [Fault::MulDropsTop, Fault::RootDropsTop, Fault::DecomposeDropsTop, Fault::DecomposeShiftsValuation];
}

/// Correct arithmetic with exactly one [`Fault`] injected.
#[derive(Debug, Clone, Copy)]
pub struct FaultyArithmetic {
    pub ctx: Context,
    pub fault: Fault,
}

fn drop_top(u: PuiseuxUnit) -> PuiseuxUnit {
    let mut body = u.body().clone();
    let top = body.prec() - 1;
    if top > 0 && body.bit(top) {
        body.flip_bit(top);
    }
    PuiseuxUnit::normalize(u.den(), body).expect("constant term untouched")
}

impl Arithmetic for FaultyArithmetic {
    fn context(&self) -> &Context {
        &self.ctx
    }

    fn unit_mul(&self, u: &PuiseuxUnit, v: &PuiseuxUnit) -> Result<PuiseuxUnit> {
        let w = self.ctx.unit_mul(u, v)?;
        Ok(if self.fault == Fault::MulDropsTop { drop_top(w) } else { w })
    }

    fn unit_root(&self, u: &PuiseuxUnit, k: u64) -> Result<PuiseuxUnit> {
        let w = self.ctx.unit_root(u, k)?;
        Ok(if self.fault == Fault::RootDropsTop { drop_top(w) } else { w })
    }

    fn decompose(&self, raw: &RawSeries) -> Result<(Rational, PuiseuxUnit)> {
        let (val, unit) = decompose(raw)?;
        Ok(match self.fault {
            Fault::DecomposeDropsTop => (val, drop_top(unit)),
            Fault::DecomposeShiftsValuation => (val + Rational::new(BigInt::one(), BigInt::from(raw.den())), unit),
            _ => (val, unit),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub sample: u64,
    /// `name = value` pairs in the text format.
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Not decidable for a resource or precision reason; not a failure.
    Skip,
    Fail(Counterexample),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub checked: u64,
    pub skipped: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub check: &'static str,
    pub seed: u64,
    pub samples: u64,
    pub aprec: String,
    pub results: Vec<LawResult>,
}

impl AxiomReport {
    pub fn failures(&self) -> u64 {
        self.results.iter().map(|r| r.failures).sum()
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} check: seed {}, {} samples, precision x^({})",
            self.check, self.seed, self.samples, self.aprec
        )?;
        for r in &self.results {
            let status = if r.failures == 0 { "ok" } else { "FAIL" };
            writeln!(
                f,
                "  {:<20} {:>4}  checked {:>7}  skipped {:>6}  failures {:>6}",
                r.law, status, r.checked, r.skipped, r.failures
            )?;
            if let Some(c) = &r.counterexample {
                writeln!(f, "    first counterexample: sample {} (seed {})", c.sample, self.seed)?;
                for input in &c.inputs {
                    writeln!(f, "      {input}")?;
                }
                writeln!(f, "      expected {}", c.expected)?;
                writeln!(f, "      actual   {}", c.actual)?;
            }
        }
        write!(f, "total failures: {}", self.failures())
    }
}

/// Accumulates per-law outcomes in sample order.
fn tally(laws: &[&'static str], per_sample: Vec<Vec<Outcome>>) -> Vec<LawResult> {
    let mut results: Vec<LawResult> =
        laws.iter().map(|&law| LawResult { law, checked: 0, skipped: 0, failures: 0, counterexample: None }).collect();
    for outcomes in per_sample {
        for (res, outcome) in results.iter_mut().zip(outcomes) {
            match outcome {
                Outcome::Pass => res.checked += 1,
                Outcome::Skip => res.skipped += 1,
                Outcome::Fail(c) => {
                    res.checked += 1;
                    res.failures += 1;
                    res.counterexample.get_or_insert(c);
                }
            }
        }
    }
    results
}

fn judge<T: fmt::Display>(
    sample: u64,
    inputs: &[String],
    lhs: Result<T>,
    rhs: Result<T>,
    equal: impl FnOnce(&T, &T) -> bool,
) -> Outcome {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if equal(&l, &r) => Outcome::Pass,
        (Ok(l), Ok(r)) => Outcome::Fail(Counterexample {
            sample,
            inputs: inputs.to_vec(),
            expected: r.to_string(),
            actual: l.to_string(),
        }),
        (Err(Error::DenominatorOverflow { .. }), _) | (_, Err(Error::DenominatorOverflow { .. })) => Outcome::Skip,
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(Counterexample {
            sample,
            inputs: inputs.to_vec(),
            expected: "a value".into(),
            actual: format!("error: {e}"),
        }),
    }
}

pub const VECTOR_SPACE_LAWS: [&str; 6] =
    ["(r+s)a = ra*sa", "r(ab) = ra*rb", "(rs)a = r(sa)", "1a = a", "0a = 1", "decompose(ab)"];

/// Pair of a valuation and unit, printable for counterexamples.
struct Decomposed(Rational, PuiseuxUnit);

impl fmt::Display for Decomposed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, format_unit(&self.1))
    }
}

/// Evaluates every vector-space law on one sample.
pub fn vector_space_laws_on<A: Arithmetic + ?Sized>(
    arith: &A,
    sample: u64,
    a: &L0Element,
    b: &L0Element,
    r: &Rational,
    s: &Rational,
) -> Vec<Outcome> {
    let inputs = vec![
        format!("a = {}", format_element(a)),
        format!("b = {}", format_element(b)),
        format!("r = {r}"),
        format!("s = {s}"),
    ];
    let same = |x: &L0Element, y: &L0Element| x.agrees_with(y);
    let smul = |r: &Rational, a: &L0Element| arith.element_scalar_mul(r, a);
    let mul = |a: &Result<L0Element>, b: &Result<L0Element>| -> Result<L0Element> {
        arith.element_mul(a.as_ref().map_err(Clone::clone)?, b.as_ref().map_err(Clone::clone)?)
    };

    let add_scalars = judge(sample, &inputs, smul(&(r + s), a), mul(&smul(r, a), &smul(s, a)), same);
    let distribute = judge(
        sample,
        &inputs,
        arith.element_mul(a, b).and_then(|ab| smul(r, &ab)),
        mul(&smul(r, a), &smul(r, b)),
        same,
    );
    let compose_scalars = judge(sample, &inputs, smul(&(r * s), a), smul(s, a).and_then(|sa| smul(r, &sa)), same);
    let identity = judge(sample, &inputs, smul(&Rational::one(), a), Ok(a.clone()), same);
    let zero = judge(sample, &inputs, smul(&Rational::zero(), a), L0Element::one(&a.unit().aprec()), same);

    let decomposed = |raw: &RawSeries| arith.decompose(raw).map(|(v, u)| Decomposed(v, u));
    let same_pair = |x: &Decomposed, y: &Decomposed| x.0 == y.0 && x.1.agrees_with(&y.1);
    let homomorphism = judge(
        sample,
        &inputs,
        decomposed(&a.expand().mul(&b.expand())),
        decomposed(&a.expand()).and_then(|da| {
            let db = decomposed(&b.expand())?;
            Ok(Decomposed(da.0 + db.0, arith.unit_mul(&da.1, &db.1)?))
        }),
        same_pair,
    );
    let round_trip =
        judge(sample, &inputs, decomposed(&a.expand()), Ok(Decomposed(a.val().clone(), a.unit().clone())), same_pair);
    let decompose_law = match (homomorphism, round_trip) {
        (Outcome::Pass, other) | (other, Outcome::Pass) => other,
        (fail @ Outcome::Fail(_), _) | (_, fail @ Outcome::Fail(_)) => fail,
        (Outcome::Skip, Outcome::Skip) => Outcome::Skip,
    };

    vec![add_scalars, distribute, compose_scalars, identity, zero, decompose_law]
}

/// The five ℚ-vector-space laws on random elements of `L0^×` plus the
/// homomorphism and round-trip property of the decomposition.
pub fn check_vector_space_axioms<A: Arithmetic + ?Sized>(
    arith: &A,
    samples: u64,
    aprec: &Rational,
    seed: u64,
    scalar_bound: i64,
) -> AxiomReport {
    assert!(samples >= 1 && scalar_bound >= 1);
    let per_sample: Vec<Vec<Outcome>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (a, b, r, s) = axiom_sample(seed, i, aprec, scalar_bound);
            vector_space_laws_on(arith, i, &a, &b, &r, &s)
        })
        .collect();
    AxiomReport {
        check: "axioms",
        seed,
        samples,
        aprec: aprec.to_string(),
        results: tally(&VECTOR_SPACE_LAWS, per_sample),
    }
}

/// `u^n` must differ from 1 for every `1 <= n <= n_max`.
///
/// With `u = 1 + e` and `n = 2^a m`, `m` odd, one has
/// `u^n - 1 = e^(2^a) (m + ...)`, whose leading exponent is
/// `2^a val(e)`. When that exponent is below the working precision the
/// computed power must show exactly that term; when it is not, the power is
/// indistinguishable from 1 at this precision and the comparison is skipped.
/// Returns `None` when `u` is itself indistinguishable from 1.
pub fn torsion_laws_on<A: Arithmetic + ?Sized>(
    arith: &A,
    sample: u64,
    u: &PuiseuxUnit,
    n_max: u64,
) -> Option<Vec<Outcome>> {
    let lead = u.exponents().nth(1)?;
    let aprec = u.aprec();
    let outcomes = (1..=n_max)
        .map(|n| {
            let power = arith.unit_pow(u, &BigInt::from(n));
            let predicted = &lead * Rational::from_integer(BigInt::from(1u64 << n.trailing_zeros()));
            if predicted >= aprec {
                return Outcome::Skip;
            }
            let seen = power.exponents().nth(1);
            match seen {
                Some(e) if e == predicted => Outcome::Pass,
                seen => Outcome::Fail(Counterexample {
                    sample,
                    inputs: vec![format!("u = {}", format_unit(u)), format!("n = {n}")],
                    expected: format!("u^n - 1 with leading term x^({predicted})"),
                    actual: match seen {
                        None => format!("u^n = {} (torsion)", format_unit(&power)),
                        Some(e) => format!("u^n - 1 with leading term x^({e})"),
                    },
                }),
            }
        })
        .collect();
    Some(outcomes)
}

pub fn check_torsion_free<A: Arithmetic + ?Sized>(
    arith: &A,
    samples: u64,
    n_max: u64,
    aprec: &Rational,
    seed: u64,
) -> AxiomReport {
    assert!(samples >= 1 && n_max >= 2);
    let per_sample: Vec<Vec<Outcome>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            loop {
                let u = random_unit(&mut rng, aprec);
                if let Some(outcomes) = torsion_laws_on(arith, i, &u, n_max) {
                    break outcomes;
                }
            }
        })
        .collect();
    let flat: Vec<Vec<Outcome>> = per_sample.into_iter().flatten().map(|o| vec![o]).collect();
    AxiomReport { check: "torsion", seed, samples, aprec: aprec.to_string(), results: tally(&["u^n != 1"], flat) }
}

pub const BIJECTIVITY_LAWS: [&str; 3] = ["root(u^k) = u", "root(u)^k = u", "(uv)^k = u^k v^k"];

pub fn bijectivity_laws_on<A: Arithmetic + ?Sized>(
    arith: &A,
    sample: u64,
    u: &PuiseuxUnit,
    v: &PuiseuxUnit,
    k: u64,
) -> Vec<Outcome> {
    let inputs = vec![format!("u = {}", format_unit(u)), format!("v = {}", format_unit(v)), format!("k = {k}")];
    let e = BigInt::from(k);
    let same = |x: &PuiseuxUnit, y: &PuiseuxUnit| x.agrees_with(y);
    let root_of_power = judge(sample, &inputs, arith.unit_root(&arith.unit_pow(u, &e), k), Ok(u.clone()), same);
    let power_of_root =
        judge(sample, &inputs, arith.unit_root(u, k).map(|r| arith.unit_pow(&r, &e)), Ok(u.clone()), same);
    let homomorphism = judge(
        sample,
        &inputs,
        arith.unit_mul(u, v).map(|uv| arith.unit_pow(&uv, &e)),
        arith.unit_mul(&arith.unit_pow(u, &e), &arith.unit_pow(v, &e)),
        same,
    );
    vec![root_of_power, power_of_root, homomorphism]
}

pub fn check_root_bijectivity<A: Arithmetic + ?Sized>(
    arith: &A,
    samples: u64,
    k_max: u64,
    aprec: &Rational,
    seed: u64,
) -> AxiomReport {
    assert!(samples >= 1 && k_max >= 1);
    let per_sample: Vec<Vec<Vec<Outcome>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let u = random_unit(&mut rng, aprec);
            let v = random_unit(&mut rng, aprec);
            (1..=k_max).map(|k| bijectivity_laws_on(arith, i, &u, &v, k)).collect()
        })
        .collect();
    AxiomReport {
        check: "bijectivity",
        seed,
        samples,
        aprec: aprec.to_string(),
        results: tally(&BIJECTIVITY_LAWS, per_sample.into_iter().flatten().collect()),
    }
}

/// Draws a scalar and an element the way the axiom check does; handy for
/// reproducing a reported counterexample.
pub fn axiom_sample(
    seed: u64,
    index: u64,
    aprec: &Rational,
    scalar_bound: i64,
) -> (L0Element, L0Element, Rational, Rational) {
    let mut rng = sample_rng(seed, index);
    let a = random_element(&mut rng, aprec);
    let b = random_element(&mut rng, aprec);
    let r = random_scalar(&mut rng, scalar_bound);
    let s = random_scalar(&mut rng, scalar_bound);
    (a, b, r, s)
}

/// Renders every counterexample of a report, for diagnostics.
pub fn counterexamples(report: &AxiomReport) -> String {
    let mut out = String::new();
    for r in &report.results {
        if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "{}: {}", r.law, c.inputs.join(", "));
        }
    }
    out
}
