//! Carry-less multiplication of bit-packed polynomials over F2.
//!
//! Polynomials are little-endian slices of `u64` words: bit `i` of word `w`
//! is the coefficient of `t^(64 w + i)`. Products are computed by Karatsuba
//! recursion down to a schoolbook base case, which uses `pclmulqdq` when the
//! CPU has it and a portable shift-and-xor loop otherwise.

/// Below this many words in the shorter operand the schoolbook base case wins.
pub const KARATSUBA_THRESHOLD: usize = 24;

/// Selects the 64x64 carry-less multiply used by the base case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Portable,
    #[cfg(target_arch = "x86_64")]
    Pclmul,
}

impl Kernel {
    /// The fastest kernel available on this machine.
    pub fn detect() -> Kernel {
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("pclmulqdq") {
                return Kernel::Pclmul;
            }
        }
        Kernel::Portable
    }
}

/// Portable 64x64 -> 128 carry-less product.
#[inline]
pub fn clmul64_portable(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut acc = 0u128;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

/// 64x64 -> 128 carry-less product with the detected kernel.
pub fn clmul64(a: u64, b: u64) -> u128 {
    match Kernel::detect() {
        Kernel::Portable => clmul64_portable(a, b),
        #[cfg(target_arch = "x86_64")]
        Kernel::Pclmul => unsafe { pclmul::clmul64(a, b) },
    }
}

/// Full product `a * b` with `a.len() + b.len()` words, by schoolbook only.
pub fn mul_schoolbook(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    schoolbook_acc(a, b, &mut out, Kernel::detect());
    out
}

/// Full product `a * b` with `a.len() + b.len()` words.
pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    mul_with(a, b, Kernel::detect())
}

/// Full product using an explicit base-case kernel.
pub fn mul_with(a: &[u64], b: &[u64], kernel: Kernel) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    mul_acc(a, b, &mut out, kernel);
    out
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// `out ^= a * b`. `out` must hold at least `a.len() + b.len()` words.
fn mul_acc(a: &[u64], b: &[u64], out: &mut [u64], kernel: Kernel) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() < KARATSUBA_THRESHOLD {
        schoolbook_acc(a, b, out, kernel);
        return;
    }
    if a.len() >= 2 * b.len() {
        // unbalanced: slice the long operand into pieces the size of the short one
        let step = b.len();
        for (i, chunk) in a.chunks(step).enumerate() {
            mul_acc(chunk, b, &mut out[i * step..], kernel);
        }
        return;
    }

    // here b.len() >= h, so b1 may be empty but never negative
    let h = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);

    let mut z0 = vec![0u64; 2 * h];
    mul_acc(a0, b0, &mut z0, kernel);
    let mut z2 = vec![0u64; a1.len() + b1.len()];
    mul_acc(a1, b1, &mut z2, kernel);

    let mut sa = a0.to_vec();
    xor_into(&mut sa, a1);
    let mut sb = b0.to_vec();
    xor_into(&mut sb, b1);
    let mut z1 = vec![0u64; 2 * h];
    mul_acc(&sa, &sb, &mut z1, kernel);
    xor_into(&mut z1, &z0);
    xor_into(&mut z1, &z2);

    // words of z1 past the end of `out` are zero: a0*b1 + a1*b0 fits in a.len() words
    xor_into(out, &z0);
    xor_into(&mut out[h..], &z1);
    xor_into(&mut out[2 * h..], &z2);
}

fn schoolbook_acc(a: &[u64], b: &[u64], out: &mut [u64], kernel: Kernel) {
    match kernel {
        Kernel::Portable => {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    let p = clmul64_portable(x, y);
                    out[i + j] ^= p as u64;
                    out[i + j + 1] ^= (p >> 64) as u64;
                }
            }
        }
        #[cfg(target_arch = "x86_64")]
        Kernel::Pclmul => unsafe { pclmul::schoolbook_acc(a, b, out) },
    }
}

#[cfg(target_arch = "x86_64")]
mod pclmul {
    use core::arch::x86_64::*;

    #[target_feature(enable = "pclmulqdq")]
    pub(super) unsafe fn clmul64(a: u64, b: u64) -> u128 {
        let p = _mm_clmulepi64_si128(_mm_set_epi64x(0, a as i64), _mm_set_epi64x(0, b as i64), 0x00);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)) as u64;
        (lo as u128) | ((hi as u128) << 64)
    }

    #[target_feature(enable = "pclmulqdq")]
    pub(super) unsafe fn schoolbook_acc(a: &[u64], b: &[u64], out: &mut [u64]) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let xv = _mm_set_epi64x(0, x as i64);
            let row = &mut out[i..i + b.len() + 1];
            for (j, &y) in b.iter().enumerate() {
                let p = _mm_clmulepi64_si128(xv, _mm_set_epi64x(0, y as i64), 0x00);
                row[j] ^= _mm_cvtsi128_si64(p) as u64;
                row[j + 1] ^= _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)) as u64;
            }
        }
    }
}
