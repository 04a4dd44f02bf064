//! Dedekind-Rademacher sums
//! `s(h,k;x,y) = sum_{mu=0}^{k-1} (((mu+y)/k)) (((h(mu+y))/k + x))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{frac, int, is_integer, rat};
use crate::exact::CycField;

/// Arguments of a Dedekind-Rademacher sum; shifts only matter modulo one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindArgs {
    pub h: BigInt,
    pub k: BigInt,
    pub x: BigRational,
    pub y: BigRational,
}

impl DedekindArgs {
    pub fn new(h: impl Into<BigInt>, k: impl Into<BigInt>, x: BigRational, y: BigRational) -> Result<Self> {
        let (h, k) = (h.into(), k.into());
        if k < BigInt::one() {
            return Err(Error::InvalidArgument(format!("k = {k} must be positive")));
        }
        if !h.gcd(&k).is_one() {
            return Err(Error::InvalidArgument(format!("gcd({h}, {k}) != 1")));
        }
        Ok(DedekindArgs { h, k, x, y })
    }

    /// The classical sum `s(h,k)`, both shifts zero.
    pub fn classical(h: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Self> {
        Self::new(h, k, BigRational::zero(), BigRational::zero())
    }
}

/// `((x))`: `{x} - 1/2` off the integers, zero on them.
pub fn dedekind_symbol(x: &BigRational) -> BigRational {
    if is_integer(x) {
        BigRational::zero()
    } else {
        frac(x) - rat(1, 2)
    }
}

/// `B_2({x}) = {x}^2 - {x} + 1/6`.
pub fn psi2(x: &BigRational) -> BigRational {
    let f = frac(x);
    &f * &f - &f + rat(1, 6)
}

/// A Dedekind-Rademacher evaluator; closed-form routes take one so that a
/// faulty implementation can be substituted and detected.
pub type DedekindFn = fn(&DedekindArgs) -> BigRational;

/// Shorthand for `dr(s(h, k; x, y))` with small integer arguments.
pub fn eval_with(dr: DedekindFn, h: i64, k: i64, x: BigRational, y: BigRational) -> BigRational {
    dr(&DedekindArgs::new(h, k, x, y).expect("coprime arguments"))
}

/// The classical sum through an evaluator.
pub fn classical_with(dr: DedekindFn, h: i64, k: i64) -> BigRational {
    eval_with(dr, h, k, BigRational::zero(), BigRational::zero())
}

/// Value by Euclid-style descent through the reciprocity laws.
pub fn dr_sum(a: &DedekindArgs) -> BigRational {
    descend(a.h.clone(), a.k.clone(), frac(&a.x), frac(&a.y))
}

pub fn dedekind_sum(h: i64, k: i64) -> BigRational {
    dr_sum(&DedekindArgs::classical(h, k).expect("coprime arguments"))
}

fn descend(h: BigInt, k: BigInt, x: BigRational, y: BigRational) -> BigRational {
    if k.is_one() {
        return dedekind_symbol(&y) * dedekind_symbol(&(&y * &h + &x));
    }
    let (m, h0) = h.div_mod_floor(&k);
    let x = frac(&(x + &y * &m));
    debug_assert!(!h0.is_zero(), "coprimality lost");
    reciprocity(&h0, &k, &x, &y) - descend(k, h0, y, x)
}

/// `s(h,k;x,y) + s(k,h;y,x)` for positive coprime `h`, `k`.
fn reciprocity(h: &BigInt, k: &BigInt, x: &BigRational, y: &BigRational) -> BigRational {
    let hk = BigRational::from_integer(h * k);
    if is_integer(x) && is_integer(y) {
        let s = BigRational::from_integer(h * h + k * k + 1);
        return s / (hk * int(12)) - rat(1, 4);
    }
    let (hq, kq) = (
        BigRational::from_integer(h.clone()),
        BigRational::from_integer(k.clone()),
    );
    let num = &hq * &hq * psi2(y) + psi2(&(&hq * y + &kq * x)) + &kq * &kq * psi2(x);
    dedekind_symbol(x) * dedekind_symbol(y) + num / (hk * int(2))
}

/// Direct summation straight from the definition.
pub fn dr_sum_direct(a: &DedekindArgs) -> BigRational {
    let k = BigRational::from_integer(a.k.clone());
    let h = BigRational::from_integer(a.h.clone());
    let mut s = BigRational::zero();
    let mut mu = BigInt::zero();
    while mu < a.k {
        let t = (BigRational::from_integer(mu.clone()) + &a.y) / &k;
        s += dedekind_symbol(&t) * dedekind_symbol(&(&h * &t + &a.x));
        mu += 1;
    }
    s
}

/// One side-by-side evaluation: character sum over `p`-th roots, and the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Finite Fourier identities relating character sums over nontrivial `p`-th
/// roots of unity `zeta` to Dedekind symbols and sums.
pub fn fourier_identity_suite(p: i64, q: i64, t: i64) -> Result<Vec<IdentityCheck>> {
    fourier_identity_suite_with(dr_sum, p, q, t)
}

pub fn fourier_identity_suite_with(dr: DedekindFn, p: i64, q: i64, t: i64) -> Result<Vec<IdentityCheck>> {
    if p < 2 || num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidArgument(format!("need p > 1 and gcd(p, q) = 1, got ({p}, {q})")));
    }
    let f = CycField::new(p as usize);
    let pr = int(p);
    let mut sum6 = f.zero();
    let mut sum7 = f.zero();
    let mut sum8 = f.zero();
    let mut sum9 = f.zero();
    let mut sum10 = f.zero();
    let one = f.one();
    for j in 1..p {
        let z = f.root_power(j);
        let zt = f.root_power(j * t);
        let inv1 = f.inv_root_power_minus_one(j)?;
        let invq = f.inv_root_power_minus_one(j * q)?;
        let invbar = f.inv_root_power_minus_one(-j)?;
        sum6 = &sum6 - &(&zt * &inv1);
        let both = &inv1 * &invq;
        sum7 = &sum7 + &(&zt * &both);
        sum8 = &sum8 + &both;
        sum9 = &sum9 + &(&inv1 * &invbar);
        let a = &(&z + &one) * &inv1;
        let b = &(&f.root_power(j * q) + &one) * &invq;
        sum10 = &sum10 + &(&a * &b);
    }
    let avg = |s: &crate::exact::CycNum| -> Result<BigRational> { Ok(s.as_rational()? / &pr) };
    let classical = dr(&DedekindArgs::classical(q, p)?);
    let shifted = dr(&DedekindArgs::new(
        q,
        p,
        BigRational::new(BigInt::from(q + 1 - 2 * t), BigInt::from(2 * p)),
        rat(-1, 2),
    )?);
    Ok(vec![
        IdentityCheck {
            name: "zeta^t/(1-zeta)",
            lhs: avg(&sum6)?,
            rhs: dedekind_symbol(&rat(2 * t - 1, 2 * p)),
        },
        IdentityCheck {
            name: "zeta^t/((zeta-1)(zeta^q-1))",
            lhs: avg(&sum7)?,
            rhs: -shifted,
        },
        IdentityCheck {
            name: "1/((zeta-1)(zeta^q-1))",
            lhs: avg(&sum8)?,
            rhs: -&classical + rat(p - 1, 4 * p),
        },
        IdentityCheck {
            name: "1/|zeta-1|^2",
            lhs: avg(&sum9)?,
            rhs: rat(p, 12) - rat(1, 12 * p),
        },
        IdentityCheck {
            name: "cot-cot",
            lhs: avg(&sum10)?,
            rhs: -classical * int(4),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_values() {
        assert_eq!(dedekind_symbol(&rat(1, 2)), rat(0, 1));
        assert_eq!(dedekind_symbol(&rat(3, 1)), rat(0, 1));
        assert_eq!(dedekind_symbol(&rat(7, 4)), rat(1, 4));
        assert_eq!(dedekind_symbol(&rat(-1, 4)), rat(1, 4));
    }

    #[test]
    fn classical_values() {
        assert_eq!(dedekind_sum(1, 5), rat(1, 5));
        assert_eq!(dedekind_sum(2, 3), rat(-1, 18));
        assert_eq!(dedekind_sum(2, 5), rat(0, 1));
        for k in 1..40 {
            assert_eq!(dedekind_sum(1, k), rat((k - 1) * (k - 2), 12 * k));
        }
    }

    #[test]
    fn shifted_value() {
        let a = DedekindArgs::new(1, 2, rat(0, 1), rat(1, 2)).unwrap();
        assert_eq!(dr_sum(&a), rat(1, 8));
        assert_eq!(dr_sum_direct(&a), rat(1, 8));
    }

    #[test]
    fn fast_path_matches_definition() {
        for k in 1..25i64 {
            for h in -30..30i64 {
                if num_integer::gcd(h, k) != 1 {
                    continue;
                }
                for (x, y) in [(rat(0, 1), rat(0, 1)), (rat(1, 3), rat(-1, 2)), (rat(5, 7), rat(2, 9))] {
                    let a = DedekindArgs::new(h, k, x, y).unwrap();
                    assert_eq!(dr_sum(&a), dr_sum_direct(&a), "{a:?}");
                }
            }
        }
    }

    #[test]
    fn worked_identity_values() {
        let c = fourier_identity_suite(5, 1, 0).unwrap();
        assert_eq!(c[3].lhs, rat(2, 5));
        let c = fourier_identity_suite(3, 2, 0).unwrap();
        assert_eq!(c[2].lhs, rat(2, 9));
        let c = fourier_identity_suite(5, 2, 0).unwrap();
        assert_eq!(c[4].lhs, rat(0, 1));
        assert!(c.iter().all(IdentityCheck::holds), "{c:?}");
    }
}
