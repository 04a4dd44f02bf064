//! The cyclotomic field `Q(zeta_N)`, stored as residues modulo `Phi_N`.
//!
//! Elements keep integer numerators over one positive common denominator, which
//! keeps products cheap; the rational coefficient view is available through
//! [`CycNum::coeffs`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith;
use crate::error::{Error, Result};

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut x_n_minus_1 = vec![BigInt::zero(); n + 1];
    x_n_minus_1[0] = BigInt::from(-1);
    x_n_minus_1[n] = BigInt::one();
    let mut quotient = x_n_minus_1;
    for d in arith::divisors(n as u64) {
        let d = d as usize;
        if d < n {
            quotient = exact_div_monic(&quotient, &cyclotomic_polynomial(d));
        }
    }
    quotient
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// Context for one conductor: `Phi_N` plus lazily cached inverses of `zeta^k - 1`.
pub struct CycField {
    n: usize,
    phi: Vec<i64>,
    powers: Vec<OnceLock<Vec<BigInt>>>,
    root_minus_one_inv: Vec<OnceLock<(Vec<BigInt>, BigInt)>>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

impl CycField {
    pub fn new(n: usize) -> Arc<CycField> {
        let phi = cyclotomic_polynomial(n)
            .into_iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient overflows i64"))
            .collect();
        Arc::new(CycField {
            n,
            phi,
            powers: (0..n).map(|_| OnceLock::new()).collect(),
            root_minus_one_inv: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduce an integer polynomial of any degree modulo `Phi_N`, in place.
    fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        for k in (deg..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[k]);
            let base = k - deg;
            for (j, &f) in self.phi[..deg].iter().enumerate() {
                match f {
                    0 => {}
                    1 => p[base + j] -= &c,
                    -1 => p[base + j] += &c,
                    _ => p[base + j] -= &c * f,
                }
            }
        }
        p.truncate(deg);
        p.resize(deg, BigInt::zero());
        p
    }

    fn root_power_poly(&self, k: usize) -> &[BigInt] {
        let k = k % self.n;
        self.powers[k].get_or_init(|| {
            let mut p = vec![BigInt::zero(); k + 1];
            p[k] = BigInt::one();
            self.reduce(p)
        })
    }

    fn elem(self: &Arc<Self>, num: Vec<BigInt>, den: BigInt) -> CycNum {
        CycNum::normalized(self.clone(), num, den)
    }

    pub fn zero(self: &Arc<Self>) -> CycNum {
        self.elem(vec![BigInt::zero(); self.degree()], BigInt::one())
    }

    pub fn one(self: &Arc<Self>) -> CycNum {
        self.from_rational(&BigRational::one())
    }

    pub fn from_rational(self: &Arc<Self>, r: &BigRational) -> CycNum {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        self.elem(num, r.denom().clone())
    }

    pub fn from_int(self: &Arc<Self>, k: i64) -> CycNum {
        self.from_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    /// `zeta_N^k`, with `k` taken modulo `N`.
    pub fn root_power(self: &Arc<Self>, k: i64) -> CycNum {
        let k = k.rem_euclid(self.n as i64) as usize;
        self.elem(self.root_power_poly(k).to_vec(), BigInt::one())
    }

    /// Element with rational coefficients `c_0 + c_1 zeta + ...` (any length).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[BigRational]) -> CycNum {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        self.elem(self.reduce(num), den)
    }

    /// `zeta_N^k - 1`.
    pub fn root_power_minus_one(self: &Arc<Self>, k: i64) -> CycNum {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut num = self.root_power_poly(k).to_vec();
        num[0] -= 1;
        self.elem(num, BigInt::one())
    }

    /// `1 / (zeta_N^k - 1)` from the closed form `(1/m) * sum_{j<m} j * zeta^{kj}`,
    /// `m` the order of `zeta^k`. Cached per `k`.
    pub fn inv_root_power_minus_one(self: &Arc<Self>, k: i64) -> Result<CycNum> {
        let k = k.rem_euclid(self.n as i64) as usize;
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = self.root_minus_one_inv[k].get_or_init(|| {
            let m = self.n / arith::gcd(k as u64, self.n as u64) as usize;
            let mut p = vec![BigInt::zero(); self.n];
            for j in 1..m {
                p[(k * j) % self.n] += BigInt::from(j);
            }
            (self.reduce(p), BigInt::from(m))
        });
        Ok(CycNum {
            field: self.clone(),
            num: num.clone(),
            den: den.clone(),
        }
        .renormalize())
    }
}

/// An element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn normalized(field: Arc<CycField>, num: Vec<BigInt>, den: BigInt) -> CycNum {
        debug_assert_eq!(num.len(), field.degree());
        CycNum { field, num, den }.renormalize()
    }

    fn renormalize(mut self) -> CycNum {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        self
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> usize {
        self.field.n
    }

    /// Coefficients in the power basis `1, zeta, ..., zeta^{phi(N)-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &CycNum) -> Result<()> {
        if self.field.n != other.field.n {
            Err(Error::ConductorMismatch(self.field.n, other.field.n))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &CycNum, subtract: bool) -> CycNum {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let b = b * &fb;
                if subtract {
                    a * &fa - b
                } else {
                    a * &fa + b
                }
            })
            .collect();
        CycNum::normalized(self.field.clone(), num, den)
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        let prod = poly_mul(&self.num, &other.num);
        let num = self.field.reduce(prod);
        Ok(CycNum::normalized(
            self.field.clone(),
            num,
            &self.den * &other.den,
        ))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Phi_N`.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .field
            .phi
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul_rat(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].recip();
        let coeffs: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(self.field.from_coeffs(&coeffs))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycNum::normalized(self.field.clone(), num, &self.den * r.denom())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// The rational value, if this element is rational.
    pub fn as_rational(&self) -> Result<BigRational> {
        if self.num[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Field trace down to the rationals.
    pub fn trace(&self) -> BigRational {
        let n = self.field.n as u64;
        let t: BigInt = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * arith::root_trace(n, i as u64))
            .sum();
        BigRational::new(t, self.den.clone())
    }

    /// Numerical value under the embedding `zeta_N -> exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let n = self.field.n as f64;
        self.num
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, a)
            })
            .sum()
    }
}

pub fn cyc_as_rational(z: &CycNum) -> Result<BigRational> {
    z.as_rational()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " in Q(z_{})", self.field.n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            /// Panics on a conductor mismatch; use the `try_` form to get an error.
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                self.$try(rhs).expect("cyclotomic operands with different conductors")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

/// Integer polynomial product, through `i128` when the inputs are small.
pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if let Some(v) = poly_mul_small(a, b) {
        return v;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_mul_small(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a: Vec<i64> = a.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let b: Vec<i64> = b.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = out[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    Some(out.into_iter().map(BigInt::from).collect())
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], trim(r));
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

fn poly_mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn poly(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), poly(&[1, -1, 1]));
    }

    #[test]
    fn i_squared() {
        let f = CycField::new(4);
        let i = f.root_power(1);
        assert_eq!(&i * &i, f.from_int(-1));
    }

    #[test]
    fn zeta3_relations() {
        let f = CycField::new(3);
        let z = f.root_power(1);
        let s = &z + &f.root_power(2);
        assert_eq!(s.as_rational(), Ok(rat(-1, 1)));
        let w = &z - &f.one();
        assert_eq!(&w.inv().unwrap() * &w, f.one());
        assert_eq!(z.as_rational(), Err(Error::NotRational));
    }

    #[test]
    fn golden_ratio_in_zeta5() {
        let f = CycField::new(5);
        let x = &f.root_power(1) + &f.root_power(4);
        assert_eq!(&(&x * &x) + &x, f.one());
    }

    #[test]
    fn closed_form_inverse_matches_euclid() {
        for n in 2..20 {
            let f = CycField::new(n);
            for k in 1..n as i64 {
                let w = &f.root_power(k) - &f.one();
                assert_eq!(f.inv_root_power_minus_one(k).unwrap(), w.inv().unwrap());
            }
        }
    }

    #[test]
    fn mismatched_conductors() {
        let a = CycField::new(3).one();
        let b = CycField::new(4).one();
        assert_eq!(a.try_add(&b), Err(Error::ConductorMismatch(3, 4)));
        assert_eq!(CycField::new(7).zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn trace_of_roots() {
        let f = CycField::new(12);
        assert_eq!(f.one().trace(), rat(4, 1));
        assert_eq!(f.root_power(1).trace(), rat(0, 1));
        assert_eq!(f.root_power(4).trace(), rat(-2, 1));
    }
}
