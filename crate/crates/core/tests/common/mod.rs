//! Reference arithmetic that shares no code path with the library kernel:
//! plain shift-and-xor products on bit vectors and one-coefficient-at-a-time
//! root lifting.

#![allow(dead_code)]

use std::collections::BTreeSet;

use divfield_core::{ratio, F2Series, PuiseuxUnit, Rational};

/// Truncated polynomial over F2 as a little-endian bit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naive {
    pub bits: Vec<bool>,
}

impl Naive {
    pub fn from_exponents(exps: &[usize], prec: usize) -> Naive {
        let mut bits = vec![false; prec];
        for &e in exps {
            if e < prec {
                bits[e] ^= true;
            }
        }
        Naive { bits }
    }

    pub fn from_series(s: &F2Series) -> Naive {
        Naive { bits: (0..s.prec()).map(|j| s.bit(j)).collect() }
    }

    pub fn to_series(&self) -> F2Series {
        let ones = self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j);
        F2Series::from_exponents(ones, self.bits.len()).unwrap()
    }

    pub fn prec(&self) -> usize {
        self.bits.len()
    }

    pub fn one(prec: usize) -> Naive {
        Naive::from_exponents(&[0], prec)
    }

    /// Schoolbook product, truncated to the smaller length.
    pub fn mul(&self, other: &Naive) -> Naive {
        let prec = self.prec().min(other.prec());
        let mut bits = vec![false; prec];
        for (i, &a) in self.bits.iter().enumerate().take(prec) {
            if !a {
                continue;
            }
            for (j, &b) in other.bits.iter().enumerate().take(prec - i) {
                bits[i + j] ^= b;
            }
        }
        Naive { bits }
    }

    /// Repeated multiplication, no squaring shortcut.
    pub fn pow(&self, e: u64) -> Naive {
        let mut acc = Naive::one(self.prec());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect()
    }
}

/// Word-packed shift-and-xor arithmetic, for oracles that need more speed
/// than [`Naive`] but must still avoid the library's carry-less kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packed {
    pub words: Vec<u64>,
    pub prec: usize,
}

impl Packed {
    pub fn from_series(s: &F2Series) -> Packed {
        Packed { words: s.words().to_vec(), prec: s.prec() }
    }

    pub fn to_series(&self) -> F2Series {
        F2Series::from_words(self.words.clone(), self.prec).unwrap()
    }

    fn bit(&self, j: usize) -> bool {
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    fn mask(&mut self) {
        let rem = self.prec % 64;
        if rem != 0 {
            *self.words.last_mut().unwrap() &= (1u64 << rem) - 1;
        }
    }

    pub fn mul(&self, other: &Packed) -> Packed {
        let prec = self.prec.min(other.prec);
        let n = prec.div_ceil(64);
        let mut out = vec![0u64; n];
        for i in 0..prec {
            if !self.bit(i) {
                continue;
            }
            // out ^= other << i
            let (q, r) = (i / 64, i % 64);
            for w in 0..n - q {
                let mut v = other.words.get(w).copied().unwrap_or(0) << r;
                if r > 0 && w > 0 {
                    v |= other.words[w - 1] >> (64 - r);
                }
                out[w + q] ^= v;
            }
        }
        let mut p = Packed { words: out, prec };
        p.mask();
        p
    }

    pub fn pow(&self, e: u64) -> Packed {
        let mut acc = Packed { words: vec![0; self.prec.div_ceil(64)], prec: self.prec };
        acc.words[0] = 1;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// The odd root found one coefficient at a time: if `b` is right modulo
/// `t^j`, then `(b + c t^j)^k = b^k + c t^j (mod t^(j+1))` for odd `k` and
/// `b(0) = 1`, so `c` is the coefficient of `t^j` in `a + b^k`.
pub fn linear_lift_root(a: &F2Series, k: u64) -> F2Series {
    assert!(k % 2 == 1 && a.bit(0));
    let prec = a.prec();
    let mut b = Packed { words: vec![0; prec.div_ceil(64)], prec };
    b.words[0] = 1;
    for j in 1..prec {
        let bk = b.pow(k);
        if bk.bit(j) != a.bit(j) {
            b.words[j / 64] ^= 1 << (j % 64);
        }
    }
    b.to_series()
}

/// A truncated Puiseux series as an explicit set of rational exponents,
/// known below `aprec`. Products are pairwise exponent sums counted mod 2,
/// with no common grid involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terms {
    pub exps: BTreeSet<Rational>,
    pub aprec: Rational,
}

impl Terms {
    pub fn new(exps: impl IntoIterator<Item = Rational>, aprec: Rational) -> Terms {
        let mut set = BTreeSet::new();
        for e in exps {
            if e < aprec && !set.remove(&e) {
                set.insert(e);
            }
        }
        Terms { exps: set, aprec }
    }

    pub fn of_unit(u: &PuiseuxUnit) -> Terms {
        Terms::new(u.exponents(), u.aprec())
    }

    /// Product of two series known to relative precision; the result is
    /// known up to `min(val a + aprec b, val b + aprec a)`.
    pub fn mul(&self, other: &Terms) -> Terms {
        let lead = |t: &Terms| t.exps.iter().next().cloned().unwrap_or_else(|| t.aprec.clone());
        let aprec = (lead(self) + &other.aprec).min(lead(other) + &self.aprec);
        let sums = self.exps.iter().flat_map(|a| other.exps.iter().map(move |b| a + b));
        Terms::new(sums, aprec)
    }

    pub fn pow(&self, k: u64) -> Terms {
        let mut acc = Terms::new([ratio(0, 1)], self.aprec.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn truncated(&self, aprec: &Rational) -> Terms {
        assert!(aprec <= &self.aprec);
        Terms::new(self.exps.iter().cloned(), aprec.clone())
    }
}
