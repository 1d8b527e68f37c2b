//! Units of `R = ∪ₙ F2[[x^(1/n)]]` and elements of the fraction field
//! `L0 = ∪ₙ F2((x^(1/n)))`.
//!
//! A [`PuiseuxUnit`] is a series in `s = x^(1/den)` with constant term 1,
//! known modulo `s^prec`, i.e. modulo `x^aprec` with `aprec = prec / den`.
//! Units are kept in normal form: `den` is the least denominator for which
//! both the support and `aprec` lie on the grid `(1/den)ℤ`. That makes the
//! representation of a given truncated element unique, so structural
//! equality is equality of elements.
//!
//! An [`L0Element`] is a nonzero element `x^val · unit`; every such element
//! has exactly one such form, which is what [`decompose`] and [`compose`]
//! exchange.
//!
//! Operations that can grow the denominator go through a [`Context`] that
//! carries the denominator cap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::f2series::F2Series;

/// Exact rational numbers, used for exponents, precisions and scalars.
pub type Rational = BigRational;

pub const DEFAULT_DEN_CAP: u64 = 1 << 16;

/// Shorthand for a small rational literal.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn den_of(r: &Rational) -> u128 {
    r.denom().to_u128().expect("denominator fits in u128")
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / a.gcd(&b) * b
}

/// Resource limits shared by the group operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    den_cap: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context { den_cap: DEFAULT_DEN_CAP }
    }
}

impl Context {
    pub fn new(den_cap: u64) -> Context {
        assert!(den_cap >= 1, "denominator cap must be positive");
        Context { den_cap }
    }

    pub fn den_cap(&self) -> u64 {
        self.den_cap
    }

    fn check_den(&self, den: u128) -> Result<u64> {
        if den > self.den_cap as u128 {
            return Err(Error::DenominatorOverflow { requested: den, cap: self.den_cap });
        }
        Ok(den as u64)
    }

    fn check_unit(&self, u: PuiseuxUnit) -> Result<PuiseuxUnit> {
        self.check_den(u.den as u128)?;
        Ok(u)
    }

    /// Product on the common grid `lcm(u.den, v.den)`, at the smaller precision.
    pub fn unit_mul(&self, u: &PuiseuxUnit, v: &PuiseuxUnit) -> Result<PuiseuxUnit> {
        let den = self.check_den(lcm_u128(u.den as u128, v.den as u128))?;
        let a = u.body.spread((den / u.den) as usize);
        let b = v.body.spread((den / v.den) as usize);
        PuiseuxUnit::normalize(den, a.mul(&b))
    }

    /// Inverse of the Frobenius map on `R^×`: the same coefficients read on
    /// the grid `1/(2 den)`. Always defined; halves the precision.
    pub fn unit_sqrt(&self, u: &PuiseuxUnit) -> Result<PuiseuxUnit> {
        let doubled = u.den as u128 * 2;
        let den =
            u64::try_from(doubled).map_err(|_| Error::DenominatorOverflow { requested: doubled, cap: self.den_cap })?;
        self.check_unit(PuiseuxUnit::normalize(den, u.body.clone())?)
    }

    /// The unique `k`-th root with residue 1. With `k = 2^s m`, `m` odd, the
    /// odd part is lifted on the body and the result is then square-rooted
    /// `s` times, so the precision shrinks by `2^s`.
    pub fn unit_root(&self, u: &PuiseuxUnit, k: u64) -> Result<PuiseuxUnit> {
        assert!(k >= 1, "root index must be positive");
        let s = k.trailing_zeros();
        let odd = k >> s;
        let odd = reduce_odd_exponent(odd, u.body.prec());
        let mut r = PuiseuxUnit::normalize(u.den, u.body.kth_root_odd(odd)?)?;
        for _ in 0..s {
            r = self.unit_sqrt(&r)?;
        }
        Ok(r)
    }

    /// The ℚ-linear action `r · u = u^r = (u^num)^(1/den)`.
    pub fn scalar_mul_unit(&self, r: &Rational, u: &PuiseuxUnit) -> Result<PuiseuxUnit> {
        let k = r.denom().to_u64().ok_or_else(|| Error::ScalarTooLarge(r.to_string()))?;
        self.unit_root(&u.pow(r.numer()), k)
    }

    pub fn element_mul(&self, a: &L0Element, b: &L0Element) -> Result<L0Element> {
        Ok(compose(&a.val + &b.val, self.unit_mul(&a.unit, &b.unit)?))
    }

    pub fn element_scalar_mul(&self, r: &Rational, a: &L0Element) -> Result<L0Element> {
        Ok(compose(r * &a.val, self.scalar_mul_unit(r, &a.unit)?))
    }

    /// `k`-th root in `L0^×`: the valuation is divided by `k`.
    pub fn element_root(&self, a: &L0Element, k: u64) -> Result<L0Element> {
        Ok(compose(&a.val / int(k), self.unit_root(&a.unit, k)?))
    }
}

/// For a unit known modulo `s^prec`, `b -> b^k` only depends on `k` modulo
/// `2^M` with `2^M >= prec`, because `(1 + e)^(2^M) = 1 + e^(2^M)`.
fn exponent_period_bits(prec: usize) -> u32 {
    usize::BITS - (prec.max(1) - 1).leading_zeros()
}

fn reduce_odd_exponent(k: u64, prec: usize) -> u64 {
    let bits = exponent_period_bits(prec);
    if bits >= 64 {
        return k;
    }
    k & ((1u64 << bits) - 1)
}

fn reduce_exponent(e: &BigInt, prec: usize) -> u64 {
    let modulus = BigInt::one() << exponent_period_bits(prec);
    e.mod_floor(&modulus).to_u64().expect("reduced exponent fits in u64")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PuiseuxUnit {
    den: u64,
    body: F2Series,
}

impl PuiseuxUnit {
    /// Canonical unit for the series `body` read in `s = x^(1/den)`.
    pub fn normalize(den: u64, body: F2Series) -> Result<PuiseuxUnit> {
        assert!(den >= 1, "grid denominator must be positive");
        if !body.is_unit() {
            return Err(Error::NotAUnit);
        }
        let mut g = den.gcd(&(body.prec() as u64));
        for j in body.ones() {
            if g == 1 {
                break;
            }
            g = g.gcd(&(j as u64));
        }
        Ok(PuiseuxUnit { den: den / g, body: body.compress(g as usize) })
    }

    /// `1 + O(x^aprec)`.
    pub fn one(aprec: &Rational) -> Result<PuiseuxUnit> {
        PuiseuxUnit::from_exponents(&[Rational::zero()], aprec)
    }

    /// The unit `Σ x^e` over the given exponents, known modulo `x^aprec`.
    /// Exponent 0 must be present; the others must lie in `(0, aprec)`.
    pub fn from_exponents(exponents: &[Rational], aprec: &Rational) -> Result<PuiseuxUnit> {
        if !aprec.is_positive() {
            return Err(Error::NonpositivePrecision(aprec.to_string()));
        }
        let mut grid = den_of(aprec);
        for e in exponents {
            if e.is_negative() || e >= aprec {
                return Err(Error::TermBeyondPrecision { exponent: e.to_string(), precision: aprec.to_string() });
            }
            grid = lcm_u128(grid, den_of(e));
        }
        let grid = u64::try_from(grid).map_err(|_| Error::DenominatorOverflow { requested: grid, cap: u64::MAX })?;
        let scale = |r: &Rational| (r * int(grid)).to_integer().to_usize().expect("index fits in usize");
        let body = F2Series::from_exponents(exponents.iter().map(scale), scale(aprec))?;
        PuiseuxUnit::normalize(grid, body)
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// The series in `s = x^(1/den)`.
    pub fn body(&self) -> &F2Series {
        &self.body
    }

    pub fn aprec(&self) -> Rational {
        Rational::new(BigInt::from(self.body.prec()), BigInt::from(self.den))
    }

    /// Exponents of the nonzero coefficients, increasing, starting with 0.
    pub fn exponents(&self) -> impl Iterator<Item = Rational> + '_ {
        self.body.ones().map(|j| Rational::new(BigInt::from(j), BigInt::from(self.den)))
    }

    pub fn is_one(&self) -> bool {
        self.body.is_one()
    }

    /// The same element read on the finer grid `1/(m den)`. Not normalized.
    pub fn regrid(&self, m: u64) -> (u64, F2Series) {
        (self.den * m, self.body.spread(m as usize))
    }

    /// Forgets everything at and above `x^aprec`.
    pub fn truncated(&self, aprec: &Rational) -> Result<PuiseuxUnit> {
        if !aprec.is_positive() {
            return Err(Error::NonpositivePrecision(aprec.to_string()));
        }
        assert!(*aprec <= self.aprec(), "cannot raise precision {} to {aprec}", self.aprec());
        let grid = lcm_u128(self.den as u128, den_of(aprec));
        let m = (grid / self.den as u128) as usize;
        let prec = (aprec * Rational::from_integer(BigInt::from(grid))).to_integer();
        let body = self.body.spread(m).truncate(prec.to_usize().expect("precision fits in usize"))?;
        PuiseuxUnit::normalize(grid as u64, body)
    }

    /// Equality after truncating both sides to the smaller precision.
    pub fn agrees_with(&self, other: &PuiseuxUnit) -> bool {
        let (pa, pb) = (self.aprec(), other.aprec());
        match pa.cmp(&pb) {
            std::cmp::Ordering::Equal => self == other,
            std::cmp::Ordering::Less => *self == other.truncated(&pa).expect("positive precision"),
            std::cmp::Ordering::Greater => self.truncated(&pb).expect("positive precision") == *other,
        }
    }

    /// Inverse at the same grid and precision.
    pub fn inv(&self) -> PuiseuxUnit {
        let body = self.body.inv().expect("units are invertible");
        PuiseuxUnit::normalize(self.den, body).expect("inverse of a unit is a unit")
    }

    /// `u^e` for any integer `e`; negative powers go through the inverse.
    pub fn pow(&self, e: &BigInt) -> PuiseuxUnit {
        let reduced = reduce_exponent(e, self.body.prec());
        PuiseuxUnit::normalize(self.den, self.body.pow_int(reduced)).expect("powers of units are units")
    }

    pub fn pow_i64(&self, e: i64) -> PuiseuxUnit {
        self.pow(&BigInt::from(e))
    }
}

/// A nonzero element `x^val · unit` of `L0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct L0Element {
    val: Rational,
    unit: PuiseuxUnit,
}

impl L0Element {
    pub fn val(&self) -> &Rational {
        &self.val
    }

    pub fn unit(&self) -> &PuiseuxUnit {
        &self.unit
    }

    pub fn one(aprec: &Rational) -> Result<L0Element> {
        Ok(compose(Rational::zero(), PuiseuxUnit::one(aprec)?))
    }

    pub fn inv(&self) -> L0Element {
        compose(-&self.val, self.unit.inv())
    }

    pub fn pow(&self, e: &BigInt) -> L0Element {
        compose(&self.val * Rational::from_integer(e.clone()), self.unit.pow(e))
    }

    /// Same valuation and units that agree at the smaller precision.
    pub fn agrees_with(&self, other: &L0Element) -> bool {
        self.val == other.val && self.unit.agrees_with(&other.unit)
    }

    /// Expands `x^val · unit` into a plain series on a common grid.
    pub fn expand(&self) -> RawSeries {
        let den = lcm_u128(self.unit.den as u128, den_of(&self.val)) as u64;
        let (_, body) = self.unit.regrid(den / self.unit.den);
        let offset = (&self.val * int(den)).to_integer();
        RawSeries { den, offset, body }
    }
}

/// `x^alpha · u`.
pub fn compose(alpha: Rational, unit: PuiseuxUnit) -> L0Element {
    L0Element { val: alpha, unit }
}

/// Splits a series into its valuation and its unit part.
pub fn decompose(raw: &RawSeries) -> Result<(Rational, PuiseuxUnit)> {
    let v = raw.body.valuation().ok_or(Error::Indistinguishable)?;
    let val = Rational::new(&raw.offset + BigInt::from(v), BigInt::from(raw.den));
    let unit = PuiseuxUnit::normalize(raw.den, raw.body.shift_down(v)?)?;
    Ok((val, unit))
}

/// A truncated Puiseux series that need not start with its leading term:
/// `Σ_j body_j x^((offset + j)/den) + O(x^((offset + prec)/den))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSeries {
    den: u64,
    offset: BigInt,
    body: F2Series,
}

impl RawSeries {
    pub fn new(den: u64, offset: BigInt, body: F2Series) -> RawSeries {
        assert!(den >= 1, "grid denominator must be positive");
        RawSeries { den, offset, body }
    }

    /// `Σ x^e + O(x^precision)` over strictly increasing exponents that are
    /// all below `precision`. At least one term is required.
    pub fn from_terms(exponents: &[Rational], precision: &Rational) -> Result<RawSeries> {
        let Some(first) = exponents.first() else {
            return Err(Error::Indistinguishable);
        };
        if first >= precision {
            return Err(Error::NonpositivePrecision((precision - first).to_string()));
        }
        let mut grid = den_of(precision);
        for e in exponents {
            if e >= precision {
                return Err(Error::TermBeyondPrecision { exponent: e.to_string(), precision: precision.to_string() });
            }
            grid = lcm_u128(grid, den_of(e));
        }
        let grid = u64::try_from(grid).map_err(|_| Error::DenominatorOverflow { requested: grid, cap: u64::MAX })?;
        let offset = (first * int(grid)).to_integer();
        let index = |r: &Rational| ((r * int(grid)).to_integer() - &offset).to_usize().expect("index fits in usize");
        let body = F2Series::from_exponents(exponents.iter().map(index), index(precision))?;
        Ok(RawSeries { den: grid, offset, body })
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    pub fn body(&self) -> &F2Series {
        &self.body
    }

    /// The exponent of the `O(·)` term.
    pub fn absolute_precision(&self) -> Rational {
        Rational::new(&self.offset + BigInt::from(self.body.prec()), BigInt::from(self.den))
    }

    /// Product of plain series, keeping every coefficient the inputs determine:
    /// if `a = s^va (u + O(s^pa))` and `b = s^vb (w + O(s^pb))` then the product
    /// is known up to `s^min(va + pb', vb + pa')` in absolute terms.
    pub fn mul(&self, other: &RawSeries) -> RawSeries {
        let den = lcm_u128(self.den as u128, other.den as u128) as u64;
        let (ma, mb) = (den / self.den, den / other.den);
        let a = self.body.spread(ma as usize);
        let b = other.body.spread(mb as usize);
        let va = a.valuation().unwrap_or(a.prec());
        let vb = b.valuation().unwrap_or(b.prec());
        let prec = (va + b.prec()).min(vb + a.prec());
        let offset = &self.offset * BigInt::from(ma) + &other.offset * BigInt::from(mb);
        RawSeries { den, offset, body: a.mul_to(&b, prec) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(exps: &[(i64, i64)], aprec: (i64, i64)) -> PuiseuxUnit {
        let exps: Vec<_> = exps.iter().map(|&(n, d)| ratio(n, d)).collect();
        PuiseuxUnit::from_exponents(&exps, &ratio(aprec.0, aprec.1)).unwrap()
    }

    fn series(exps: &[usize], prec: usize) -> F2Series {
        F2Series::from_exponents(exps.iter().copied(), prec).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let u = PuiseuxUnit::normalize(2, series(&[0, 2], 6)).unwrap();
        assert_eq!((u.den(), u.body().clone()), (1, series(&[0, 1], 3)));
        let u = PuiseuxUnit::normalize(2, series(&[0, 1], 6)).unwrap();
        assert_eq!(u.den(), 2);
        let u = PuiseuxUnit::normalize(6, series(&[0, 2, 4], 12)).unwrap();
        assert_eq!((u.den(), u.body().clone()), (3, series(&[0, 1, 2], 6)));
        // normalizing is idempotent
        assert_eq!(PuiseuxUnit::normalize(u.den(), u.body().clone()).unwrap(), u);
        assert_eq!(PuiseuxUnit::normalize(3, series(&[1], 4)), Err(Error::NotAUnit));
    }

    #[test]
    fn precision_constrains_the_grid() {
        // 1 + x known modulo x^(3/2) cannot live on the integer grid
        let u = PuiseuxUnit::normalize(2, series(&[0, 2], 3)).unwrap();
        assert_eq!(u.den(), 2);
        assert_eq!(u.aprec(), ratio(3, 2));
    }

    #[test]
    fn tower_compatibility() {
        let u = unit(&[(0, 1), (1, 3), (5, 6)], (7, 2));
        for m in 1..7 {
            let (den, body) = u.regrid(m);
            assert_eq!(PuiseuxUnit::normalize(den, body).unwrap(), u);
        }
    }

    #[test]
    fn unit_mul_examples() {
        let ctx = Context::default();
        let p = ctx.unit_mul(&unit(&[(0, 1), (1, 1)], (2, 1)), &unit(&[(0, 1), (1, 2)], (2, 1))).unwrap();
        assert_eq!(p, unit(&[(0, 1), (1, 2), (1, 1), (3, 2)], (2, 1)));
        assert_eq!(p.den(), 2);
        let u = unit(&[(0, 1), (1, 3), (1, 2)], (4, 1));
        assert_eq!(ctx.unit_mul(&u, &PuiseuxUnit::one(&ratio(9, 1)).unwrap()).unwrap(), u);
        assert!(ctx.unit_mul(&u, &u.inv()).unwrap().is_one());
    }

    #[test]
    fn unit_inv_examples() {
        let one = PuiseuxUnit::one(&ratio(3, 1)).unwrap();
        assert_eq!(one.inv(), one);
        let u = unit(&[(0, 1), (1, 2)], (2, 1));
        assert_eq!(u.inv(), unit(&[(0, 1), (1, 2), (1, 1), (3, 2)], (2, 1)));
    }

    #[test]
    fn unit_sqrt_examples() {
        let ctx = Context::default();
        let s = ctx.unit_sqrt(&unit(&[(0, 1), (1, 1)], (4, 1))).unwrap();
        assert_eq!(s, unit(&[(0, 1), (1, 2)], (2, 1)));
        let one = PuiseuxUnit::one(&ratio(4, 1)).unwrap();
        assert_eq!(ctx.unit_sqrt(&one).unwrap(), PuiseuxUnit::one(&ratio(2, 1)).unwrap());
        let s = ctx.unit_sqrt(&unit(&[(0, 1), (1, 2), (1, 1)], (3, 1))).unwrap();
        assert_eq!(s, unit(&[(0, 1), (1, 4), (1, 2)], (3, 2)));
        assert_eq!(s.den(), 4);
        assert!(s.pow_i64(2).agrees_with(&unit(&[(0, 1), (1, 2), (1, 1)], (3, 1))));
    }

    #[test]
    fn unit_root_examples() {
        let ctx = Context::default();
        let u = unit(&[(0, 1), (2, 3)], (5, 1));
        assert_eq!(ctx.unit_root(&u, 1).unwrap(), u);
        let one_plus_x = unit(&[(0, 1), (1, 1)], (3, 1));
        assert_eq!(ctx.unit_root(&one_plus_x, 3).unwrap(), unit(&[(0, 1), (1, 1), (2, 1)], (3, 1)));
        let r = ctx.unit_root(&one_plus_x, 6).unwrap();
        assert_eq!(r, unit(&[(0, 1), (1, 2), (1, 1)], (3, 2)));
        assert!(r.pow_i64(6).agrees_with(&one_plus_x));
    }

    #[test]
    fn unit_pow_examples() {
        let u = unit(&[(0, 1), (1, 2)], (2, 1));
        assert!(u.pow_i64(0).is_one());
        assert_eq!(u.pow_i64(2), unit(&[(0, 1), (1, 1)], (2, 1)));
        assert_eq!(u.pow_i64(-1), u.inv());
        // exponent reduction is invisible
        let v = unit(&[(0, 1), (1, 5), (3, 5), (4, 1)], (7, 1));
        let naive = PuiseuxUnit::normalize(v.den(), v.body().pow_int(1000 + 3)).unwrap();
        assert_eq!(v.pow_i64(1003), naive);
        assert_eq!(v.pow_i64(-5), v.inv().pow_i64(5));
    }

    #[test]
    fn scalar_mul_examples() {
        let ctx = Context::default();
        let one_plus_x = unit(&[(0, 1), (1, 1)], (3, 1));
        let r = ctx.scalar_mul_unit(&ratio(2, 3), &one_plus_x).unwrap();
        assert_eq!(r, unit(&[(0, 1), (2, 1)], (3, 1)));
        assert_eq!(ctx.scalar_mul_unit(&ratio(1, 1), &one_plus_x).unwrap(), one_plus_x);
        assert!(ctx.scalar_mul_unit(&ratio(0, 1), &one_plus_x).unwrap().is_one());
        let half = ctx.scalar_mul_unit(&ratio(1, 2), &one_plus_x).unwrap();
        assert_eq!(half, unit(&[(0, 1), (1, 2)], (3, 2)));
    }

    #[test]
    fn denominator_cap() {
        let ctx = Context::new(8);
        let u = unit(&[(0, 1), (1, 4)], (2, 1));
        assert!(ctx.unit_sqrt(&u).is_ok());
        assert!(matches!(ctx.unit_root(&u, 4), Err(Error::DenominatorOverflow { requested: 16, cap: 8 })));
        let v = unit(&[(0, 1), (1, 3)], (2, 1));
        assert!(matches!(ctx.unit_mul(&u, &v), Err(Error::DenominatorOverflow { requested: 12, .. })));
    }

    #[test]
    fn element_examples() {
        let ctx = Context::default();
        let one = PuiseuxUnit::one(&ratio(4, 1)).unwrap();
        let a = compose(ratio(1, 2), one.clone());
        let b = compose(ratio(1, 3), one.clone());
        assert_eq!(ctx.element_mul(&a, &b).unwrap(), compose(ratio(5, 6), one.clone()));

        let u = unit(&[(0, 1), (1, 3), (1, 1)], (4, 1));
        let c = compose(ratio(-7, 4), u.clone());
        let prod = ctx.element_mul(&c, &c.inv()).unwrap();
        assert_eq!(prod.val(), &ratio(0, 1));
        assert!(prod.unit().is_one());

        let x = compose(ratio(1, 1), one.clone());
        assert_eq!(ctx.element_scalar_mul(&ratio(3, 2), &x).unwrap().val(), &ratio(3, 2));
        let zero = ctx.element_scalar_mul(&ratio(0, 1), &c).unwrap();
        assert_eq!(zero.val(), &ratio(0, 1));
        assert!(zero.unit().is_one());

        let d = compose(ratio(1, 2), unit(&[(0, 1), (1, 1)], (3, 1)));
        let e = ctx.element_scalar_mul(&ratio(2, 3), &d).unwrap();
        assert_eq!(e, compose(ratio(1, 3), unit(&[(0, 1), (2, 1)], (3, 1))));
    }

    #[test]
    fn decompose_examples() {
        let raw = RawSeries::from_terms(&[ratio(-5, 3), ratio(-4, 3)], &ratio(1, 3)).unwrap();
        let (val, u) = decompose(&raw).unwrap();
        assert_eq!(val, ratio(-5, 3));
        assert_eq!(u, unit(&[(0, 1), (1, 3)], (2, 1)));

        let (val, u) = decompose(&L0Element::one(&ratio(2, 1)).unwrap().expand()).unwrap();
        assert_eq!(val, ratio(0, 1));
        assert!(u.is_one());

        let raw = RawSeries::from_terms(&[ratio(1, 2), ratio(1, 1), ratio(3, 2)], &ratio(2, 1)).unwrap();
        let (val, u) = decompose(&raw).unwrap();
        assert_eq!(val, ratio(1, 2));
        assert_eq!(u, unit(&[(0, 1), (1, 2), (1, 1)], (3, 2)));
        // re-expansion reproduces the input
        assert_eq!(compose(val, u).expand(), raw);
    }

    #[test]
    fn decompose_needs_a_visible_term() {
        let raw = RawSeries::new(3, BigInt::from(-2), F2Series::zero(5).unwrap());
        assert_eq!(decompose(&raw), Err(Error::Indistinguishable));
        assert!(matches!(RawSeries::from_terms(&[ratio(1, 2)], &ratio(1, 4)), Err(Error::NonpositivePrecision(_))));
    }

    #[test]
    fn raw_mul_keeps_relative_precision() {
        let a = compose(ratio(1, 2), unit(&[(0, 1), (1, 3)], (2, 1))).expand();
        let b = compose(ratio(-2, 1), unit(&[(0, 1), (1, 2)], (3, 1))).expand();
        let (val, u) = decompose(&a.mul(&b)).unwrap();
        assert_eq!(val, ratio(-3, 2));
        assert_eq!(u.aprec(), ratio(2, 1));
        let expect =
            Context::default().unit_mul(&unit(&[(0, 1), (1, 3)], (2, 1)), &unit(&[(0, 1), (1, 2)], (3, 1))).unwrap();
        assert_eq!(u, expect);
    }
}
