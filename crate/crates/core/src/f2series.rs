//! Truncated power series over F2 in one variable `t`.
//!
//! A [`F2Series`] stores the coefficients of `t^0 .. t^(prec-1)` packed 64 per
//! word, little-endian in the exponent, and stands for the class of that
//! polynomial modulo `t^prec`. Binary operations return the minimum of the
//! operand precisions.
//!
//! Two facts about characteristic 2 drive the algorithms here:
//!
//! * squaring is the Frobenius map, so it only spreads bits (`t^j -> t^2j`),
//!   and its inverse on series with even support just gathers them back;
//! * `(1 + e)^2 = 1 + e^2`, so the Newton iterations for inverses and odd
//!   roots double the number of correct coefficients at every step.

use std::fmt;
use std::ops::{Add, Mul};

use crate::clmul;
use crate::error::{Error, Result};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Series {
    /// Exactly `prec.div_ceil(64)` words; bits at positions `>= prec` are zero.
    words: Vec<u64>,
    prec: usize,
}

impl F2Series {
    /// The zero series `O(t^prec)`.
    pub fn zero(prec: usize) -> Result<F2Series> {
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(F2Series { words: vec![0; prec.div_ceil(64)], prec })
    }

    /// The series `1 + O(t^prec)`.
    pub fn one(prec: usize) -> Result<F2Series> {
        let mut s = F2Series::zero(prec)?;
        s.words[0] = 1;
        Ok(s)
    }

    /// Builds a series from packed words, discarding everything at or above `prec`.
    pub fn from_words(mut words: Vec<u64>, prec: usize) -> Result<F2Series> {
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        words.resize(prec.div_ceil(64), 0);
        let mut s = F2Series { words, prec };
        s.mask_top();
        Ok(s)
    }

    /// Builds the series with a 1 at each listed exponent. Repeated exponents
    /// cancel, as they would in a sum over F2. Exponents `>= prec` are dropped.
    pub fn from_exponents<I>(exponents: I, prec: usize) -> Result<F2Series>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = F2Series::zero(prec)?;
        for j in exponents {
            if j < prec {
                s.words[j / 64] ^= 1 << (j % 64);
            }
        }
        Ok(s)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Coefficient of `t^j`; `false` at and above the precision.
    pub fn bit(&self, j: usize) -> bool {
        j < self.prec && self.words[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn flip_bit(&mut self, j: usize) {
        assert!(j < self.prec, "bit {j} is beyond precision {}", self.prec);
        self.words[j / 64] ^= 1 << (j % 64);
    }

    /// Exponents with coefficient 1, in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when this is `1 + O(t^prec)`.
    pub fn is_one(&self) -> bool {
        self.words[0] == 1 && self.words[1..].iter().all(|&w| w == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.words[0] & 1 == 1
    }

    /// Least exponent with a nonzero coefficient, if any is visible.
    pub fn valuation(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Index of the highest set coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Reduces to a lower precision. Asking for more precision than is known
    /// is a logic error.
    pub fn truncate(&self, prec: usize) -> Result<F2Series> {
        assert!(prec <= self.prec, "cannot raise precision {} to {prec}", self.prec);
        F2Series::from_words(self.words[..prec.div_ceil(64).min(self.words.len())].to_vec(), prec)
    }

    /// Reinterprets the stored bits at another precision, padding with zeros.
    /// Only meaningful when the caller knows the extra coefficients.
    pub(crate) fn with_prec(&self, prec: usize) -> Result<F2Series> {
        F2Series::from_words(self.words.clone(), prec)
    }

    /// Equality after truncating both sides to the smaller precision.
    pub fn agrees_with(&self, other: &F2Series) -> bool {
        let prec = self.prec.min(other.prec);
        let full = prec / 64;
        if self.words[..full] != other.words[..full] {
            return false;
        }
        let rem = prec % 64;
        rem == 0 || (self.words[full] ^ other.words[full]) & ((1u64 << rem) - 1) == 0
    }

    fn mask_top(&mut self) {
        let rem = self.prec % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Coefficientwise XOR at the smaller precision.
    pub fn add(&self, other: &F2Series) -> F2Series {
        let prec = self.prec.min(other.prec);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        F2Series::from_words(words, prec).expect("positive precision")
    }

    /// Product truncated to the smaller precision.
    pub fn mul(&self, other: &F2Series) -> F2Series {
        self.mul_to(other, self.prec.min(other.prec))
    }

    /// Product of the stored polynomials truncated to `prec`, which may
    /// exceed either operand's precision when the caller can vouch for it.
    pub(crate) fn mul_to(&self, other: &F2Series, prec: usize) -> F2Series {
        let n = prec.div_ceil(64);
        let a = &self.words[..self.words.len().min(n)];
        let b = &other.words[..other.words.len().min(n)];
        let product = clmul::mul(a, b);
        F2Series::from_words(product, prec).expect("positive precision")
    }

    /// Frobenius: `t^j -> t^2j`, at the same precision.
    pub fn square(&self) -> F2Series {
        let mut words = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            words.push(spread32(w as u32));
            words.push(spread32((w >> 32) as u32));
        }
        F2Series::from_words(words, self.prec).expect("positive precision")
    }

    /// `self^e` by square-and-multiply; `e = 0` gives 1.
    pub fn pow_int(&self, e: u64) -> F2Series {
        let mut acc = F2Series::one(self.prec).expect("positive precision");
        if e == 0 {
            return acc;
        }
        for i in (0..64 - e.leading_zeros()).rev() {
            acc = acc.square();
            if e >> i & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Multiplicative inverse of a unit, by `y <- a y^2` from `y = 1`.
    pub fn inv(&self) -> Result<F2Series> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        // a y = 1 + e  implies  a (a y^2) = (1 + e)^2 = 1 + e^2
        let mut y = F2Series::one(1)?;
        let mut known = 1;
        while known < self.prec {
            known = (2 * known).min(self.prec);
            let y2 = y.with_prec(known)?.square();
            y = self.truncate(known)?.mul(&y2);
        }
        y.with_prec(self.prec)
    }

    /// Inverse of the Frobenius map. Needs every odd coefficient to be 0;
    /// the result has precision `ceil(prec / 2)`.
    pub fn sqrt(&self) -> Result<F2Series> {
        for (i, &w) in self.words.iter().enumerate() {
            let odd = w & !EVEN_BITS;
            if odd != 0 {
                return Err(Error::OddSupport(i * 64 + odd.trailing_zeros() as usize));
            }
        }
        let words = self
            .words
            .chunks(2)
            .map(|pair| {
                let lo = gather_even(pair[0]) as u64;
                let hi = pair.get(1).map_or(0, |&w| gather_even(w) as u64);
                lo | hi << 32
            })
            .collect();
        F2Series::from_words(words, self.prec.div_ceil(2))
    }

    /// The unique `b` with `b(0) = 1` and `b^k = self`, for odd `k`.
    ///
    /// Newton's step for `T^k - a` is `b + (b^k + a) / b^(k-1)`; in
    /// characteristic 2 with `k` odd it collapses to `a / b^(k-1)`. The
    /// derivative `k b^(k-1) = b^(k-1)` is a unit, so each step doubles the
    /// number of correct coefficients.
    pub fn kth_root_odd(&self, k: u64) -> Result<F2Series> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        if k.is_multiple_of(2) {
            return Err(Error::EvenK(k));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let mut b = F2Series::one(1)?;
        let mut known = 1;
        while known < self.prec {
            known = (2 * known).min(self.prec);
            let denom = b.with_prec(known)?.pow_int(k - 1).inv()?;
            b = self.truncate(known)?.mul(&denom);
        }
        b.with_prec(self.prec)
    }

    /// Divides by `t^v`. The coefficients below `t^v` must be zero.
    pub fn shift_down(&self, v: usize) -> Result<F2Series> {
        debug_assert!(self.ones().next().is_none_or(|j| j >= v));
        if v >= self.prec {
            return Err(Error::ZeroPrecision);
        }
        let (q, r) = (v / 64, v % 64);
        let words = (q..self.words.len())
            .map(|i| {
                let lo = self.words[i] >> r;
                let hi = match (r, self.words.get(i + 1)) {
                    (0, _) | (_, None) => 0,
                    (_, Some(&next)) => next << (64 - r),
                };
                lo | hi
            })
            .collect();
        F2Series::from_words(words, self.prec - v)
    }

    /// Multiplies by `t^v`; the new low coefficients are known zeros.
    pub fn shift_up(&self, v: usize) -> F2Series {
        F2Series::from_exponents(self.ones().map(|j| j + v), self.prec + v).expect("positive precision")
    }

    /// Substitutes `t -> t^m`: bit `j` moves to `j m`, precision scales by `m`.
    pub fn spread(&self, m: usize) -> F2Series {
        assert!(m >= 1);
        if m == 1 {
            return self.clone();
        }
        F2Series::from_exponents(self.ones().map(|j| j * m), self.prec * m).expect("positive precision")
    }

    /// Inverse of [`spread`](Self::spread). Every set exponent and the
    /// precision must be divisible by `g`.
    pub(crate) fn compress(&self, g: usize) -> F2Series {
        debug_assert!(self.prec.is_multiple_of(g) && self.ones().all(|j| j % g == 0));
        if g == 1 {
            return self.clone();
        }
        F2Series::from_exponents(self.ones().map(|j| j / g), self.prec / g).expect("positive precision")
    }
}

fn spread32(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | x << 16) & 0x0000_FFFF_0000_FFFF;
    x = (x | x << 8) & 0x00FF_00FF_00FF_00FF;
    x = (x | x << 4) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | x << 2) & 0x3333_3333_3333_3333;
    (x | x << 1) & EVEN_BITS
}

fn gather_even(x: u64) -> u32 {
    let mut x = x & EVEN_BITS;
    x = (x | x >> 1) & 0x3333_3333_3333_3333;
    x = (x | x >> 2) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | x >> 4) & 0x00FF_00FF_00FF_00FF;
    x = (x | x >> 8) & 0x0000_FFFF_0000_FFFF;
    x = (x | x >> 16) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

impl Add for &F2Series {
    type Output = F2Series;
    fn add(self, rhs: &F2Series) -> F2Series {
        F2Series::add(self, rhs)
    }
}

impl Mul for &F2Series {
    type Output = F2Series;
    fn mul(self, rhs: &F2Series) -> F2Series {
        F2Series::mul(self, rhs)
    }
}

impl Add<&F2Series> for F2Series {
    type Output = F2Series;
    fn add(self, rhs: &F2Series) -> F2Series {
        F2Series::add(&self, rhs)
    }
}

impl Mul<&F2Series> for F2Series {
    type Output = F2Series;
    fn mul(self, rhs: &F2Series) -> F2Series {
        F2Series::mul(&self, rhs)
    }
}

impl fmt::Display for F2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in self.ones() {
            match j {
                0 => write!(f, "1 + ")?,
                1 => write!(f, "t + ")?,
                _ => write!(f, "t^{j} + ")?,
            }
        }
        write!(f, "O(t^{})", self.prec)
    }
}

impl fmt::Debug for F2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
