//! Exact arithmetic in Z[ω, 1/√2], ω = e^{iπ/4}.
//!
//! A value is stored as `(a + bω + cω² + dω³) / √2^k` with ω⁴ = −1. Every
//! value is kept in reduced form: either `k = 0` or the numerator is not
//! divisible by √2 in Z[ω]. Reduced forms are unique, so the derived `Eq`,
//! `Hash` and `Ord` coincide with equality of the complex numbers denoted.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::ParseError;

/// An exact element of Z[ω, 1/√2].
///
/// Field order matters: the derived `Ord` is lexicographic over
/// `(a, b, c, d, k)`, which is the total order used for canonical
/// representatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycloNum {
    coeffs: [i32; 4],
    k: u32,
}

#[inline]
fn ck_add(x: i32, y: i32) -> i32 {
    x.checked_add(y).expect("cyclotomic coefficient overflow")
}

#[inline]
fn ck_sub(x: i32, y: i32) -> i32 {
    x.checked_sub(y).expect("cyclotomic coefficient overflow")
}

#[inline]
fn ck_mul(x: i32, y: i32) -> i32 {
    x.checked_mul(y).expect("cyclotomic coefficient overflow")
}

/// Multiplies a numerator by √2 = ω − ω³.
#[inline]
fn push_down([a, b, c, d]: [i32; 4]) -> [i32; 4] {
    [ck_sub(b, d), ck_add(a, c), ck_add(b, d), ck_sub(c, a)]
}

impl CycloNum {
    pub const ZERO: CycloNum = CycloNum { coeffs: [0; 4], k: 0 };
    pub const ONE: CycloNum = CycloNum { coeffs: [1, 0, 0, 0], k: 0 };
    pub const OMEGA: CycloNum = CycloNum { coeffs: [0, 1, 0, 0], k: 0 };
    pub const I: CycloNum = CycloNum { coeffs: [0, 0, 1, 0], k: 0 };
    /// 1/√2
    pub const INV_SQRT2: CycloNum = CycloNum { coeffs: [1, 0, 0, 0], k: 1 };
    /// √2 = ω − ω³
    pub const SQRT2: CycloNum = CycloNum { coeffs: [0, 1, 0, -1], k: 0 };

    /// Builds a value from raw (possibly unreduced) coefficients.
    pub fn new(a: i32, b: i32, c: i32, d: i32, k: u32) -> Self {
        Self::reduce([a, b, c, d], k)
    }

    pub fn from_int(n: i32) -> Self {
        Self::new(n, 0, 0, 0, 0)
    }

    /// `ω^n`, any integer `n`.
    pub fn omega_pow(n: i32) -> Self {
        let n = n.rem_euclid(8) as usize;
        let mut coeffs = [0; 4];
        coeffs[n % 4] = if n < 4 { 1 } else { -1 };
        CycloNum { coeffs, k: 0 }
    }

    /// Brings raw coefficients into reduced form by dividing out √2 while
    /// `k > 0` and the numerator is divisible.
    pub fn reduce(mut coeffs: [i32; 4], mut k: u32) -> Self {
        if coeffs == [0; 4] {
            return Self::ZERO;
        }
        while k > 0 && Self::divisible_by_sqrt2(coeffs) {
            let [a, b, c, d] = coeffs;
            coeffs = [ck_sub(b, d) / 2, ck_add(a, c) / 2, ck_add(b, d) / 2, ck_sub(c, a) / 2];
            k -= 1;
        }
        CycloNum { coeffs, k }
    }

    #[inline]
    fn divisible_by_sqrt2([a, b, c, d]: [i32; 4]) -> bool {
        (a ^ c) & 1 == 0 && (b ^ d) & 1 == 0
    }

    pub fn coeffs(&self) -> [i32; 4] {
        self.coeffs
    }

    /// Denominator exponent: the value carries a factor `1/√2^k`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0; 4]
    }

    pub fn is_reduced(&self) -> bool {
        if self.is_zero() {
            return self.k == 0;
        }
        self.k == 0 || !Self::divisible_by_sqrt2(self.coeffs)
    }

    /// Complex conjugate: ω ↦ ω⁷ = −ω³.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.coeffs;
        CycloNum { coeffs: [a, -d, -c, -b], k: self.k }
    }

    /// Numerator rescaled to denominator exponent `target >= self.k`.
    fn numerator_at(&self, target: u32) -> [i32; 4] {
        let mut coeffs = self.coeffs;
        for _ in self.k..target {
            coeffs = push_down(coeffs);
        }
        coeffs
    }

    /// Double-precision lift. Only used for numeric cross-checks.
    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a, b, c, d] = self.coeffs.map(f64::from);
        let num = Complex64::new(a + (b - d) * h, c + (b + d) * h);
        num * h.powi(self.k as i32)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;

    fn add(self, rhs: CycloNum) -> CycloNum {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let k = self.k.max(rhs.k);
        let x = self.numerator_at(k);
        let y = rhs.numerator_at(k);
        CycloNum::reduce(
            [
                ck_add(x[0], y[0]),
                ck_add(x[1], y[1]),
                ck_add(x[2], y[2]),
                ck_add(x[3], y[3]),
            ],
            k,
        )
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        CycloNum { coeffs: self.coeffs.map(|c| -c), k: self.k }
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;

    fn sub(self, rhs: CycloNum) -> CycloNum {
        self + (-rhs)
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;

    fn mul(self, rhs: CycloNum) -> CycloNum {
        if self.is_zero() || rhs.is_zero() {
            return CycloNum::ZERO;
        }
        let x = self.coeffs;
        let y = rhs.coeffs;
        let mut out = [0i32; 4];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let p = ck_mul(xi, yj);
                let e = i + j;
                // ω⁴ = −1
                if e < 4 {
                    out[e] = ck_add(out[e], p);
                } else {
                    out[e - 4] = ck_sub(out[e - 4], p);
                }
            }
        }
        CycloNum::reduce(out, self.k + rhs.k)
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text form `a,b,c,d/k`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coeffs;
        write!(f, "{a},{b},{c},{d}/{}", self.k)
    }
}

impl FromStr for CycloNum {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Entry(s.to_string());
        let (num, k) = s.trim().split_once('/').ok_or_else(bad)?;
        let k: u32 = k.parse().map_err(|_| bad())?;
        let parts: Vec<i32> = num
            .split(',')
            .map(|p| p.parse::<i32>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        let coeffs: [i32; 4] = parts.try_into().map_err(|_| bad())?;
        // keep reduction far away from i32 limits
        if coeffs.iter().any(|c| c.unsigned_abs() > 1 << 20) || k > 64 {
            return Err(bad());
        }
        Ok(CycloNum::reduce(coeffs, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i32, b: i32, cc: i32, d: i32, k: u32) -> CycloNum {
        CycloNum::new(a, b, cc, d, k)
    }

    fn raw(x: CycloNum) -> ([i32; 4], u32) {
        (x.coeffs(), x.k())
    }

    #[test]
    fn add_examples() {
        assert_eq!(raw(c(1, 0, 0, 0, 0) + c(-1, 0, 0, 0, 0)), ([0; 4], 0));
        let s = c(1, 0, 0, 0, 1) + c(1, 0, 0, 0, 1);
        assert_eq!(raw(s), ([0, 1, 0, -1], 0));
        assert!((s.to_complex() - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-12);
        assert_eq!(raw(c(0, 1, 0, -1, 0) + c(0, -1, 0, 1, 0)), ([0; 4], 0));
    }

    #[test]
    fn mul_examples() {
        let r2 = c(0, 1, 0, -1, 0);
        assert_eq!(raw(r2 * r2), ([2, 0, 0, 0], 0));
        let mut p = CycloNum::ONE;
        for _ in 0..8 {
            p = p * CycloNum::OMEGA;
        }
        assert_eq!(p, CycloNum::ONE);
        let half = c(1, 0, 0, 0, 1) * c(1, 0, 0, 0, 1);
        assert_eq!(raw(half), ([1, 0, 0, 0], 2));
        assert!((half.to_complex() - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(raw(CycloNum::I.conj()), ([0, 0, -1, 0], 0));
        assert_eq!(CycloNum::INV_SQRT2.conj(), CycloNum::INV_SQRT2);
        let w = CycloNum::OMEGA.conj();
        assert_eq!(raw(w), ([0, 0, 0, -1], 0));
        assert!((w.to_complex() - CycloNum::OMEGA.to_complex().conj()).norm() < 1e-12);
        assert_eq!(w, CycloNum::omega_pow(7));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(raw(CycloNum::reduce([2, 0, 2, 0], 2)), ([1, 0, 1, 0], 0));
        let one = CycloNum::reduce([0, 1, 0, -1], 1);
        assert_eq!(raw(one), ([1, 0, 0, 0], 0));
        // multiplying back by √2 gives the original numerator
        assert_eq!(one * CycloNum::SQRT2, CycloNum::SQRT2);
        assert_eq!(raw(CycloNum::reduce([0; 4], 5)), ([0; 4], 0));
    }

    #[test]
    fn to_complex_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((CycloNum::INV_SQRT2.to_complex() - Complex64::new(h, 0.0)).norm() < 1e-15);
        assert!((CycloNum::I.to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((CycloNum::OMEGA.to_complex() - Complex64::new(h, h)).norm() < 1e-15);
    }

    #[test]
    fn text_form() {
        let x = c(3, -1, 0, 2, 1);
        assert_eq!(x.to_string(), "3,-1,0,2/1");
        assert_eq!("3,-1,0,2/1".parse::<CycloNum>().unwrap(), x);
        // unreduced input is normalized
        assert_eq!("2,0,2,0/2".parse::<CycloNum>().unwrap(), c(1, 0, 1, 0, 0));
        for bad in ["", "1,2,3/0", "1,2,3,4", "0.5,0,0,0/0", "1,0,0,0/-1", "a,b,c,d/0"] {
            assert!(bad.parse::<CycloNum>().is_err(), "{bad}");
        }
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_fatal() {
        let big = CycloNum::from_int(i32::MAX);
        let _ = big + CycloNum::ONE;
    }
}
