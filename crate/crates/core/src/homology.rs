//! `H = coker(I)`, its characters, the linking form and the canonical quadratic
//! function.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{int, mod_one, rat};
use crate::exact::{smith_normal_form, CycField, CycNum};
use crate::plumbing::LatticeData;

pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// An element of `H` in invariant-factor coordinates, each reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

/// A character of `H`, given by its exponent tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<u64>);

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

#[derive(Clone, Debug)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    order: u64,
    generators: Vec<GroupElement>,
    /// Rows of `U` with nontrivial factor: class of an integer vector.
    class_rows: Vec<Vec<BigInt>>,
    /// Matching columns of `U^{-1}`: lifts of the basis elements.
    lifts: Vec<Vec<BigInt>>,
    /// `(l_i, l_j)` in the rational extension of the form, on basis lifts.
    gram: Vec<Vec<BigRational>>,
    /// `(z, l_i)` with `z = (e_v + 2)_v`.
    z_pairing: Vec<BigRational>,
    canonical: GroupElement,
    field: Arc<CycField>,
}

pub fn homology_from_lattice(l: &LatticeData) -> Result<FinAbGroup> {
    let s = smith_normal_form(l.matrix());
    let n = l.len();
    let diag = s.diagonal();
    let mut factors = Vec::new();
    let mut class_rows = Vec::new();
    let mut lifts = Vec::new();
    let mut order: u64 = 1;
    for (i, d) in diag.iter().enumerate() {
        if *d == BigInt::from(1) {
            continue;
        }
        let d = d.to_u64().filter(|&d| d >= 2).ok_or_else(|| {
            Error::InternalInvariantViolated(format!("invariant factor {d} out of range"))
        })?;
        order = order.checked_mul(d).ok_or_else(|| Error::OrderCapExceeded {
            order: l.order(),
            cap: u64::MAX,
        })?;
        factors.push(d);
        class_rows.push(s.u.row(i).to_vec());
        lifts.push(s.u_inv.column(i));
    }
    if BigInt::from(order) != l.order() {
        return Err(Error::InternalInvariantViolated(format!(
            "Smith form gives order {order}, determinant gives {}",
            l.order()
        )));
    }
    let inv = l.inverse();
    let pair = |x: &[BigInt], y: &[BigInt]| -> BigRational {
        let mut s = BigRational::zero();
        for v in 0..n {
            if x[v].is_zero() {
                continue;
            }
            for w in 0..n {
                if !y[w].is_zero() {
                    s += &inv[(v, w)] * (&x[v] * &y[w]);
                }
            }
        }
        s
    };
    let gram: Vec<Vec<BigRational>> = lifts
        .iter()
        .map(|a| lifts.iter().map(|b| pair(a, b)).collect())
        .collect();
    let z = l.anticanonical_vec();
    let z_pairing = lifts.iter().map(|a| pair(&z, a)).collect();
    let exponent = factors.last().copied().unwrap_or(1);
    let mut h = FinAbGroup {
        factors,
        order,
        generators: vec![],
        class_rows,
        lifts,
        gram,
        z_pairing,
        canonical: GroupElement(vec![]),
        field: CycField::new(exponent as usize),
    };
    h.generators = (0..n)
        .map(|v| {
            let mut e = vec![BigInt::zero(); n];
            e[v] = BigInt::from(1);
            h.class_of(&e)
        })
        .collect();
    h.canonical = h.class_of(&z);
    Ok(h)
}

impl FinAbGroup {
    /// Invariant factors `d_1 | d_2 | ...`, all at least two.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Largest invariant factor, or one for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The cyclotomic field holding all character values.
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// `g_v`, the class of the dual basis vector of vertex `v`.
    pub fn generator(&self, v: usize) -> &GroupElement {
        &self.generators[v]
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// `c(sigma_can)`: the class of `(e_v + 2)_v`.
    pub fn canonical_class(&self) -> &GroupElement {
        &self.canonical
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn class_of(&self, x: &[BigInt]) -> GroupElement {
        GroupElement(
            self.class_rows
                .iter()
                .zip(&self.factors)
                .map(|(row, &d)| {
                    let s: BigInt = row.iter().zip(x).map(|(a, b)| a * b).sum();
                    s.mod_floor(&BigInt::from(d)).to_u64().expect("reduced residue")
                })
                .collect(),
        )
    }

    /// An integer vector in dual coordinates whose class is `h`.
    pub fn lift(&self, h: &GroupElement) -> Vec<BigInt> {
        let n = self.generators.len();
        let mut out = vec![BigInt::zero(); n];
        for (hi, col) in h.0.iter().zip(&self.lifts) {
            if *hi == 0 {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * *hi;
            }
        }
        out
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| {
                    let d = d as i128;
                    ((k as i128 * x as i128).rem_euclid(d)) as u64
                })
                .collect(),
        )
    }

    /// Index of `h` in the lexicographic enumeration of elements.
    pub fn index_of(&self, h: &GroupElement) -> usize {
        h.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.factors[i] as usize;
            v[i] = (idx % d) as u64;
            idx /= d;
        }
        GroupElement(v)
    }

    /// All elements in lexicographic order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(|i| self.element_at(i))
    }

    /// `OrderCapExceeded` when `|H| > cap`.
    pub fn check_cap(&self, cap: u64) -> Result<()> {
        if self.order > cap {
            Err(Error::OrderCapExceeded {
                order: BigInt::from(self.order),
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// All characters in lexicographic order of exponent tuples, trivial first.
    pub fn characters(&self, cap: u64) -> Result<impl Iterator<Item = Character> + '_> {
        self.check_cap(cap)?;
        Ok((0..self.order as usize).map(|i| self.character_at(i)))
    }

    pub fn character_at(&self, idx: usize) -> Character {
        Character(self.element_at(idx).0)
    }

    pub fn conj(&self, chi: &Character) -> Character {
        Character(self.neg(&GroupElement(chi.0.clone())).0)
    }

    /// `m` with `chi(h) = zeta_N^m`.
    pub fn pairing_exponent(&self, chi: &Character, h: &GroupElement) -> u64 {
        let n = self.exponent() as u128;
        let mut s: u128 = 0;
        for ((&k, &x), &d) in chi.0.iter().zip(&h.0).zip(&self.factors) {
            s = (s + (n / d as u128) * (k as u128 * x as u128 % d as u128)) % n;
        }
        s as u64
    }

    pub fn evaluate(&self, chi: &Character, h: &GroupElement) -> CycNum {
        self.field.root_power(self.pairing_exponent(chi, h) as i64)
    }

    /// `b_M(a, b)` in `[0, 1)`.
    pub fn linking_form(&self, a: &GroupElement, b: &GroupElement) -> BigRational {
        let mut s = BigRational::zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    s -= &self.gram[i][j] * (BigInt::from(x) * y);
                }
            }
        }
        mod_one(&s)
    }

    /// `(d, d)` and `(z, d)` for the standard lift `d` of `h`.
    fn lift_pairings(&self, h: &GroupElement) -> (BigRational, BigRational) {
        let mut dd = BigRational::zero();
        let mut zd = BigRational::zero();
        for (i, &x) in h.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            zd += &self.z_pairing[i] * BigInt::from(x);
            for (j, &y) in h.0.iter().enumerate() {
                if y != 0 {
                    dd += &self.gram[i][j] * (BigInt::from(x) * y);
                }
            }
        }
        (dd, zd)
    }

    /// `q_can(h) = -(1/2) (d - z, d) mod 1` for any lift `d` of `h`.
    pub fn q_can(&self, h: &GroupElement) -> BigRational {
        let (dd, zd) = self.lift_pairings(h);
        mod_one(&((zd - dd) / int(2)))
    }

    /// The quadratic function attached to the spin^c structure `h_sigma . sigma_can`:
    /// `h -> -(1/2)(d + z + 2 l, d) mod 1` with `l` a lift of `h_sigma`.
    pub fn spinc_quadratic(&self, h_sigma: &GroupElement, h: &GroupElement) -> BigRational {
        let shift = self.add(&self.canonical, h_sigma);
        mod_one(&(self.q_can(h) + self.linking_form(&shift, h)))
    }

    /// Offset of the conjugate spin^c structure: `-h_sigma - c(sigma_can)`.
    pub fn spinc_conjugate(&self, h_sigma: &GroupElement) -> GroupElement {
        self.neg(&self.add(h_sigma, &self.canonical))
    }
}

pub fn characters(h: &FinAbGroup, cap: u64) -> Result<impl Iterator<Item = Character> + '_> {
    h.characters(cap)
}

pub fn linking_form(h: &FinAbGroup, a: &GroupElement, b: &GroupElement) -> BigRational {
    h.linking_form(a, b)
}

pub fn q_can(h: &FinAbGroup, x: &GroupElement) -> BigRational {
    h.q_can(x)
}

/// `q_can` evaluated through an explicit lift in dual coordinates.
pub fn q_can_of_lift(l: &LatticeData, d: &[BigInt]) -> BigRational {
    let z = l.anticanonical_vec();
    let n = l.len();
    let inv = l.inverse();
    let mut s = BigRational::zero();
    for v in 0..n {
        let a = &d[v] - &z[v];
        if a.is_zero() {
            continue;
        }
        for w in 0..n {
            if !d[w].is_zero() {
                s += &inv[(v, w)] * (&a * &d[w]);
            }
        }
    }
    mod_one(&(-s / int(2)))
}

pub fn spinc_canonical_class(h: &FinAbGroup) -> GroupElement {
    h.canonical_class().clone()
}

pub fn spinc_conjugate(h: &FinAbGroup, h_sigma: &GroupElement) -> GroupElement {
    h.spinc_conjugate(h_sigma)
}

/// Both sides of the van der Blij formula for `q(d) = (1/2)(d + k, d)`:
/// `|H|^{-1/2} sum_x exp(2 pi i q(x))` and `exp(pi i (sigma - (k,k)) / 4)`.
pub fn gauss_sum_check(l: &LatticeData, h: &FinAbGroup, cap: u64) -> Result<(Complex64, Complex64)> {
    h.check_cap(cap)?;
    let tau = 2.0 * std::f64::consts::PI;
    let mut sum = Complex64::new(0.0, 0.0);
    for x in h.elements() {
        let q = -h.q_can(&x);
        let q = mod_one(&q);
        sum += Complex64::from_polar(1.0, tau * q.to_f64().unwrap_or(f64::NAN));
    }
    let computed = sum / (h.order() as f64).sqrt();
    let sigma = -(l.len() as i64);
    let k2 = l.k2();
    let phase = (int(sigma) - k2) * rat(1, 8);
    let predicted = Complex64::from_polar(1.0, tau * phase.to_f64().unwrap_or(f64::NAN));
    Ok((computed, predicted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::{build_lattice, PlumbingGraph};

    fn group(eulers: &[i64]) -> (LatticeData, FinAbGroup) {
        let l = build_lattice(&PlumbingGraph::chain(eulers)).unwrap();
        let h = homology_from_lattice(&l).unwrap();
        (l, h)
    }

    #[test]
    fn a1() {
        let (_, h) = group(&[-2]);
        assert_eq!(h.factors(), &[2]);
        assert_eq!(h.generator(0), &GroupElement(vec![1]));
        assert_eq!(h.linking_form(h.generator(0), h.generator(0)), rat(1, 2));
        assert_eq!(h.q_can(h.generator(0)), rat(1, 4));
    }

    #[test]
    fn a2_relations() {
        let (l, h) = group(&[-2, -2]);
        assert_eq!(h.factors(), &[3]);
        for v in 0..2 {
            let mut acc = h.zero();
            for w in 0..2 {
                let c = l.matrix()[(v, w)].to_i64().unwrap();
                acc = h.add(&acc, &h.scale(c, h.generator(w)));
            }
            assert_eq!(acc, h.zero());
        }
        assert_eq!(h.linking_form(h.generator(0), h.generator(0)), rat(2, 3));
    }

    #[test]
    fn lens_4_1_canonical_class() {
        let (_, h) = group(&[-4]);
        assert_eq!(h.canonical_class(), &GroupElement(vec![2]));
        assert_eq!(h.spinc_conjugate(&GroupElement(vec![1])), GroupElement(vec![1]));
        for a in h.elements() {
            for b in h.elements() {
                let lhs = mod_one(&(h.q_can(&h.add(&a, &b)) - h.q_can(&a) - h.q_can(&b)));
                assert_eq!(lhs, h.linking_form(&a, &b));
            }
        }
    }

    #[test]
    fn character_values() {
        let (_, h) = group(&[-3]);
        let vals: Vec<CycNum> = h
            .characters(DEFAULT_ORDER_CAP)
            .unwrap()
            .map(|c| h.evaluate(&c, h.generator(0)))
            .collect();
        assert_eq!(vals.len(), 3);
        assert_eq!(vals[0], h.field().one());
        assert!(h.characters(2).is_err());
    }

    #[test]
    fn gauss_sums_small() {
        for e in [vec![-2], vec![-2, -2], vec![-5, -2]] {
            let (l, h) = group(&e);
            let (a, b) = gauss_sum_check(&l, &h, DEFAULT_ORDER_CAP).unwrap();
            assert!((a - b).norm() < 1e-9, "{e:?}: {a} vs {b}");
        }
    }
}
