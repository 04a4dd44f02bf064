//! Brieskorn-Hamm complete intersections `Sigma(a_1, ..., a_n)`: Seifert
//! invariants, the rational homology sphere classification, and closed forms
//! for the torsion, the Casson-Walker invariant and the Milnor fibre signature.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dedekind::{classical_with, DedekindFn};
use crate::error::{Error, Result};
use crate::exact::rational::{int, mod_inverse, rat};
use crate::seifert::SeifertData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornSpec {
    pub exponents: Vec<i64>,
}

/// Which of the two rational homology sphere families an exponent vector belongs to.
/// `order` lists original indices in the normal form's order and `b` the
/// corresponding `b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `(d b_1, d b_2, b_3, ..., b_n)`.
    CaseI { d: i64, order: Vec<usize>, b: Vec<i64> },
    /// `(2^c b_1, 2 b_2, 2 b_3, b_4, ..., b_n)`.
    CaseII { c: u32, order: Vec<usize>, b: Vec<i64> },
    NotQhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornReport {
    pub order_h: BigInt,
    pub torsion_closed: BigRational,
    pub lambda_closed: BigRational,
    pub sigma_f: BigRational,
    pub sw0: BigRational,
    pub gorenstein_check: bool,
}

impl BrieskornSpec {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() < 3 || exponents.iter().any(|&a| a < 2) {
            return Err(Error::InvalidArgument(format!(
                "need at least three exponents, each >= 2, got {exponents:?}"
            )));
        }
        Ok(BrieskornSpec { exponents })
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// `lcm(a_i)`.
    pub fn a(&self) -> i64 {
        self.exponents.iter().fold(1, |acc, &x| acc.lcm(&x))
    }

    /// `prod a_i`.
    pub fn big_a(&self) -> BigInt {
        self.exponents.iter().map(|&x| BigInt::from(x)).product()
    }

    /// `a / a_i`.
    pub fn qs(&self) -> Vec<i64> {
        let a = self.a();
        self.exponents.iter().map(|&x| a / x).collect()
    }

    fn lcm_without(&self, i: usize) -> i64 {
        self.exponents
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1, |acc, (_, &x)| acc.lcm(&x))
    }

    /// `alpha_i = a / lcm(a_j; j != i)`.
    pub fn alphas(&self) -> Vec<i64> {
        let a = self.a();
        (0..self.n()).map(|i| a / self.lcm_without(i)).collect()
    }

    /// `s_i = prod_{j != i} a_j / lcm(a_j; j != i)`, the number of arms of type `i`.
    pub fn multiplicities(&self) -> Vec<i64> {
        (0..self.n())
            .map(|i| {
                let p: BigInt = self
                    .exponents
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| BigInt::from(x))
                    .product();
                let (s, r) = p.div_rem(&BigInt::from(self.lcm_without(i)));
                assert!(r.is_zero());
                i64::try_from(s).expect("arm count fits")
            })
            .collect()
    }

    /// Genus of the base orbifold.
    pub fn genus(&self) -> BigInt {
        let n = self.n() as i64;
        let s: i64 = self.multiplicities().iter().sum();
        let twice = BigInt::from(2) + BigInt::from(n - 2) * (self.big_a() / self.a()) - s;
        assert!(twice.is_even());
        twice / 2
    }

    /// `e = -A / a^2`.
    pub fn e(&self) -> BigRational {
        let a = BigInt::from(self.a());
        -BigRational::new(self.big_a(), &a * &a)
    }

    /// `beta_j = q_j^{-1} mod alpha_j`, so `sum_j q_j beta_j = 1` modulo every `alpha_j`.
    pub fn betas(&self) -> Vec<i64> {
        self.qs()
            .iter()
            .zip(self.alphas())
            .map(|(&q, al)| {
                let inv = mod_inverse(&BigInt::from(q), &BigInt::from(al)).expect("q_j invertible");
                i64::try_from(inv).expect("fits")
            })
            .collect()
    }
}

fn pairwise_coprime(xs: &[i64]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| xs[i].gcd(&xs[j]) == 1))
}

pub fn classify(spec: &BrieskornSpec) -> Result<Classification> {
    if !spec.genus().is_zero() {
        return Ok(Classification::NotQhs);
    }
    let a = &spec.exponents;
    let n = a.len();
    let evens: Vec<usize> = (0..n).filter(|&i| a[i] % 2 == 0).collect();
    let triple_shared = (0..n).any(|i| {
        (i + 1..n).any(|j| (j + 1..n).any(|k| a[i].gcd(&a[j]).gcd(&a[k]) != 1))
    });
    let found = if triple_shared {
        let mut ev = evens.clone();
        ev.sort_by_key(|&i| std::cmp::Reverse(a[i].trailing_zeros()));
        let c = a[ev[0]].trailing_zeros();
        let mut order = ev.clone();
        order.extend((0..n).filter(|i| !ev.contains(i)));
        let b: Vec<i64> = order.iter().map(|&i| a[i] >> a[i].trailing_zeros()).collect();
        let ok = ev.len() == 3
            && ev[1..].iter().all(|&i| a[i].trailing_zeros() == 1)
            && pairwise_coprime(&b);
        ok.then_some(Classification::CaseII { c, order, b })
    } else {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i].gcd(&a[j]) != 1)
            .collect();
        let (i, j) = match pairs.as_slice() {
            [] => (0, 1),
            [p] => *p,
            _ => return Err(Error::InternalInvariantViolated(format!(
                "{a:?} has genus 0 but several pairs share factors"
            ))),
        };
        let d = a[i].gcd(&a[j]);
        let mut order = vec![i, j];
        order.extend((0..n).filter(|&k| k != i && k != j));
        let b: Vec<i64> = order
            .iter()
            .enumerate()
            .map(|(pos, &k)| if pos < 2 { a[k] / d } else { a[k] })
            .collect();
        let ok = pairwise_coprime(&b) && b[2..].iter().all(|x| x.gcd(&d) == 1);
        ok.then_some(Classification::CaseI { d, order, b })
    };
    found.ok_or_else(|| {
        Error::InternalInvariantViolated(format!("{a:?} has genus 0 but fits neither family"))
    })
}

/// `|H|` from the closed forms of the two families.
pub fn order_of_h(spec: &BrieskornSpec) -> Result<BigInt> {
    match classify(spec)? {
        Classification::CaseI { d, b, .. } => Ok(b[2..]
            .iter()
            .map(|&x| num_traits::pow(BigInt::from(x), (d - 1) as usize))
            .product()),
        Classification::CaseII { c, b, .. } => {
            let big_b: BigInt = b.iter().map(|&x| BigInt::from(x)).product();
            let b123 = BigInt::from(b[0] * b[1] * b[2]);
            Ok((BigInt::one() << c) * num_traits::pow(big_b, 3) / (&b123 * &b123))
        }
        Classification::NotQhs => Err(not_qhs(spec)),
    }
}

fn not_qhs(spec: &BrieskornSpec) -> Error {
    Error::NotQHS(format!(
        "Sigma{:?} has base genus {}",
        spec.exponents,
        spec.genus()
    ))
}

/// Normalized Seifert invariants: arm `(alpha_i, omega_i)` repeated `s_i` times,
/// `omega_i = -beta_i mod alpha_i`, arms with `alpha_i = 1` dropped.
pub fn brieskorn_seifert(spec: &BrieskornSpec) -> Result<SeifertData> {
    if classify(spec)? == Classification::NotQhs {
        return Err(not_qhs(spec));
    }
    let mut arms = Vec::new();
    let mut rest = BigRational::zero();
    for ((al, s), beta) in spec.alphas().into_iter().zip(spec.multiplicities()).zip(spec.betas()) {
        if al == 1 {
            continue;
        }
        let w = (-beta).rem_euclid(al);
        rest += rat(s * w, al);
        arms.extend(std::iter::repeat_n((al, w), s as usize));
    }
    let b = spec.e() - rest;
    if !b.is_integer() {
        return Err(Error::InternalInvariantViolated(format!(
            "central Euler number {b} is not an integer"
        )));
    }
    let b = i64::try_from(b.to_integer()).expect("central Euler number fits");
    SeifertData::new(b, arms)
}

pub fn closed_form_invariants(spec: &BrieskornSpec) -> Result<BrieskornReport> {
    closed_form_invariants_with(spec, crate::dedekind::dr_sum)
}

/// The sums `s(q_j, alpha_j)` and `s(beta_j, alpha_j)` coincide since
/// `beta_j q_j = 1 mod alpha_j`; both are evaluated and compared.
pub fn closed_form_invariants_with(spec: &BrieskornSpec, dr: DedekindFn) -> Result<BrieskornReport> {
    let class = classify(spec)?;
    let (order, b) = match &class {
        Classification::CaseI { order, b, .. } | Classification::CaseII { order, b, .. } => {
            (order.clone(), b.clone())
        }
        Classification::NotQhs => return Err(not_qhs(spec)),
    };
    let n = spec.n() as i64;
    let alphas_raw = spec.alphas();
    let s_raw = spec.multiplicities();
    let al: Vec<i64> = order.iter().map(|&i| alphas_raw[i]).collect();
    let s: Vec<i64> = order.iter().map(|&i| s_raw[i]).collect();
    let qs_raw = spec.qs();
    let betas_raw = spec.betas();
    let mut ded_beta = BigRational::zero();
    for &i in &order {
        let by_beta = classical_with(dr, betas_raw[i], alphas_raw[i]);
        let by_q = classical_with(dr, qs_raw[i], alphas_raw[i]);
        if by_beta != by_q {
            return Err(Error::InternalInvariantViolated(format!(
                "s(q, alpha) != s(beta, alpha) at exponent {}",
                spec.exponents[i]
            )));
        }
        ded_beta += by_beta * int(s_raw[i]);
    }
    let big_b = b.iter().fold(BigInt::one(), |acc, &x| acc * x);
    let bb = BigRational::from_integer(big_b.clone());
    let order_h = order_of_h(spec)?;
    let sum_s_over_a2 = s
        .iter()
        .zip(&al)
        .fold(BigRational::zero(), |acc, (&sj, &aj)| acc + rat(sj, aj * aj));
    let sum_s2_over_a2 = s
        .iter()
        .zip(&al)
        .fold(BigRational::zero(), |acc, (&sj, &aj)| acc + rat(sj * sj, aj * aj));
    let (torsion, minus_lambda_over_h, sigma) = match class {
        Classification::CaseI { d, .. } => {
            let tail = b[2..]
                .iter()
                .fold(BigRational::zero(), |acc, &x| acc + int(1) - rat(1, x * x));
            let torsion = &bb * int(d * (d - 1)) / int(24) * tail;
            let ml = -(&bb / int(24)) * (int(-d * (n - 2)) + &sum_s_over_a2)
                - (&bb * int(24)).recip()
                + rat(1, 8)
                + &ded_beta / int(2);
            let sigma = int(-1)
                + (int(1) - int((n - 2) * d * d) * &bb * &bb + &bb * &bb * &sum_s2_over_a2)
                    / (&bb * int(3))
                - &ded_beta * int(4);
            (torsion, ml, sigma)
        }
        Classification::CaseII { c, .. } => {
            let two = |k: i32| -> BigRational {
                if k >= 0 {
                    int(BigInt::one() << k)
                } else {
                    BigRational::new(BigInt::one(), BigInt::one() << (-k))
                }
            };
            let c = c as i32;
            let pairs = s.iter().zip(&al).fold(BigRational::zero(), |acc, (&sj, &aj)| {
                acc + rat(sj * (sj - 1), 2) * (int(1) - rat(1, aj * aj))
            });
            let torsion = two(c - 1) * &bb / int(8) + two(c - 1) * &bb / int(24) * pairs;
            let ml = -(two(c - 2) * &bb / int(24)) * (int(-4 * (n - 2)) + &sum_s_over_a2)
                - (int(3) * two(c + 1) * &bb).recip()
                + rat(1, 8)
                + &ded_beta / int(2);
            let sigma = int(-1)
                + (int(1) - int(n - 2) * two(2 * c) * &bb * &bb
                    + two(2 * c - 4) * &bb * &bb * &sum_s2_over_a2)
                    / (int(3) * two(c - 2) * &bb)
                - &ded_beta * int(4);
            (torsion, ml, sigma)
        }
        Classification::NotQhs => unreachable!(),
    };
    let lambda = -&minus_lambda_over_h * BigRational::from_integer(order_h.clone());
    let sw0 = &torsion + &minus_lambda_over_h;
    let gorenstein_check = -&sw0 == &sigma / int(8);
    Ok(BrieskornReport {
        order_h,
        torsion_closed: torsion,
        lambda_closed: lambda,
        sigma_f: sigma,
        sw0,
        gorenstein_check,
    })
}

/// Whether every four exponents are jointly coprime.
pub fn quadruples_coprime(spec: &BrieskornSpec) -> bool {
    let a = &spec.exponents;
    let n = a.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            (j + 1..n).all(|k| (k + 1..n).all(|l| a[i].gcd(&a[j]).gcd(&a[k]).gcd(&a[l]) == 1))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: &[i64]) -> BrieskornSpec {
        BrieskornSpec::new(a.to_vec()).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert!(matches!(classify(&spec(&[2, 3, 5])).unwrap(), Classification::CaseI { d: 1, .. }));
        match classify(&spec(&[4, 2, 2, 3])).unwrap() {
            Classification::CaseII { c, b, .. } => {
                assert_eq!(c, 2);
                assert_eq!(b, vec![1, 1, 1, 3]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify(&spec(&[2, 2, 2, 2])).unwrap(), Classification::NotQhs);
        assert!(matches!(order_of_h(&spec(&[2, 2, 2, 2])), Err(Error::NotQHS(_))));
    }

    #[test]
    fn orders() {
        assert_eq!(order_of_h(&spec(&[2, 3, 5])).unwrap(), BigInt::from(1));
        assert_eq!(order_of_h(&spec(&[4, 6, 5])).unwrap(), BigInt::from(5));
        assert_eq!(order_of_h(&spec(&[4, 2, 2, 3])).unwrap(), BigInt::from(108));
    }

    #[test]
    fn seifert_data() {
        let s = brieskorn_seifert(&spec(&[2, 3, 5])).unwrap();
        assert_eq!(s.e(), rat(-1, 30));
        assert_eq!(s, SeifertData::new(-2, vec![(2, 1), (3, 2), (5, 4)]).unwrap());
        assert_eq!(brieskorn_seifert(&spec(&[2, 3, 7])).unwrap().e(), rat(-1, 42));
        assert_eq!(brieskorn_seifert(&spec(&[4, 6, 5])).unwrap().e(), rat(-1, 30));
        assert_eq!(brieskorn_seifert(&spec(&[4, 2, 2, 3])).unwrap().b % 2, 0);
    }

    #[test]
    fn e8_closed_forms() {
        let r = closed_form_invariants(&spec(&[2, 3, 5])).unwrap();
        assert_eq!(r.torsion_closed, int(0));
        assert_eq!(r.sw0, int(1));
        assert_eq!(r.lambda_closed, int(-1));
        assert_eq!(r.sigma_f, int(-8));
        assert!(r.gorenstein_check);
        let r = closed_form_invariants(&spec(&[4, 6, 5])).unwrap();
        assert_eq!(r.torsion_closed, rat(30 * 2, 24) * (int(1) - rat(1, 25)));
        assert!(r.gorenstein_check);
    }
}
