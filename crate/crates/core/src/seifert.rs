//! Seifert fibered rational homology spheres over the sphere: invariants,
//! star-shaped plumbings, closed forms for the Casson-Walker invariant and
//! `K^2 + #V`, the Kreck-Stolz route to `sw0`, and the torsion restricted to
//! the central and arm-end vertices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dedekind::{classical_with, dedekind_symbol, eval_with, DedekindFn};
use crate::error::{Error, Result};
use crate::exact::rational::{floor, frac, int, rat};
use crate::exact::CycNum;
use crate::homology::{FinAbGroup, GroupElement};
use crate::plumbing::PlumbingGraph;

/// Normalized Seifert invariants `(b; (alpha_i, omega_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub b: i64,
    pub arms: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(b: i64, arms: Vec<(i64, i64)>) -> Result<Self> {
        if arms.len() < 3 {
            return Err(Error::InvalidSeifert(format!(
                "need at least three arms, got {}",
                arms.len()
            )));
        }
        for &(a, w) in &arms {
            if a < 2 || w < 0 || w >= a || num_integer::gcd(a, w) != 1 {
                return Err(Error::InvalidSeifert(format!(
                    "arm {a}/{w}: need alpha >= 2, 0 <= omega < alpha, coprime"
                )));
            }
        }
        let s = SeifertData { b, arms };
        if !s.e().is_negative() {
            return Err(Error::InvalidSeifert(format!("e = {} is not negative", s.e())));
        }
        Ok(s)
    }

    pub fn nu(&self) -> usize {
        self.arms.len()
    }

    pub fn alphas(&self) -> impl Iterator<Item = i64> + '_ {
        self.arms.iter().map(|&(a, _)| a)
    }

    /// Orbifold Euler number `e = b + sum omega_i / alpha_i`; also the rational degree `l`.
    pub fn e(&self) -> BigRational {
        self.arms
            .iter()
            .fold(int(self.b), |acc, &(a, w)| acc + rat(w, a))
    }

    /// `lcm(alpha_i)`.
    pub fn alpha(&self) -> i64 {
        self.alphas().fold(1, num_integer::lcm)
    }

    /// Unnormalized invariants with `beta_1` absorbing `b`, so `-sum beta_i/alpha_i = e`.
    pub fn betas(&self) -> Vec<i64> {
        self.betas_absorbed_at(0)
    }

    /// The same with `b` absorbed by arm `k` instead.
    pub fn betas_absorbed_at(&self, k: usize) -> Vec<i64> {
        self.arms
            .iter()
            .enumerate()
            .map(|(i, &(a, w))| if i == k { -w - self.b * a } else { -w })
            .collect()
    }

    /// `|H| = alpha_1 ... alpha_nu |e|`.
    pub fn order_h(&self) -> BigInt {
        let p = self.alphas().fold(BigInt::one(), |acc, a| acc * a);
        let h = BigRational::from_integer(p) * self.e().abs();
        assert!(h.is_integer(), "|H| = {h} is not an integer");
        h.to_integer()
    }

    /// `kappa = -2 + sum (1 - 1/alpha_i)`, the degree of the canonical orbibundle.
    pub fn kappa(&self) -> BigRational {
        self.alphas()
            .fold(int(-2), |acc, a| acc + int(1) - rat(1, a))
    }

    fn kappa_over_2l(&self) -> BigRational {
        self.kappa() / (self.e() * int(2))
    }

    pub fn rho0(&self) -> BigRational {
        frac(&self.kappa_over_2l())
    }

    pub fn n0(&self) -> BigInt {
        floor(&self.kappa_over_2l())
    }

    /// `gamma_i` with `gamma_i / alpha_i = {n0 omega_i / alpha_i}`.
    pub fn gammas(&self) -> Vec<i64> {
        let n0 = self.n0();
        self.arms
            .iter()
            .map(|&(a, w)| {
                let g: BigInt = (&n0 * w).mod_floor(&BigInt::from(a));
                i64::try_from(g).expect("gamma fits")
            })
            .collect()
    }

    /// `r_i` with `r_i omega_i = 1 mod alpha_i`, in `[0, alpha_i)`.
    pub fn rs(&self) -> Vec<i64> {
        self.arms
            .iter()
            .map(|&(a, w)| {
                let e = w.extended_gcd(&a);
                e.x.mod_floor(&a)
            })
            .collect()
    }
}

/// Negative continued fraction `alpha/omega = b_1 - 1/(b_2 - ...)`, all `b_j >= 2`.
pub fn hj_expand(alpha: i64, omega: i64) -> Result<Vec<i64>> {
    if omega <= 0 || omega >= alpha || num_integer::gcd(alpha, omega) != 1 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < omega < alpha coprime, got {alpha}/{omega}"
        )));
    }
    let (mut p, mut q) = (alpha, omega);
    let mut out = Vec::new();
    while q > 0 {
        let b = (p + q - 1) / q;
        out.push(b);
        (p, q) = (q, b * q - p);
    }
    debug_assert_eq!(hj_value(&out), rat(alpha, omega));
    Ok(out)
}

/// `[[b_1, ..., b_s]]` evaluated exactly.
pub fn hj_value(bs: &[i64]) -> BigRational {
    let mut it = bs.iter().rev();
    let mut acc = int(*it.next().expect("nonempty expansion"));
    for &b in it {
        acc = int(b) - acc.recip();
    }
    acc
}

/// A star-shaped plumbing together with its distinguished vertices.
#[derive(Clone, Debug)]
pub struct StarGraph {
    pub graph: PlumbingGraph,
    pub centre: usize,
    /// Vertices of each arm, starting next to the centre.
    pub arms: Vec<Vec<usize>>,
}

impl StarGraph {
    /// The leaf of each arm.
    pub fn arm_ends(&self) -> Vec<usize> {
        self.arms.iter().map(|a| *a.last().expect("nonempty arm")).collect()
    }
}

pub fn star_graph(s: &SeifertData) -> StarGraph {
    let mut graph = PlumbingGraph::new();
    let centre = graph.add_vertex(s.b);
    let mut arms = Vec::new();
    for &(a, w) in &s.arms {
        let mut prev = centre;
        let mut arm = Vec::new();
        for b in hj_expand(a, w).expect("validated arm") {
            let v = graph.add_vertex(-b);
            graph.add_edge(prev, v);
            arm.push(v);
            prev = v;
        }
        arms.push(arm);
    }
    StarGraph {
        graph,
        centre,
        arms,
    }
}

/// Linear plumbing of the lens space `L(p, q)`.
pub fn lens_chain(p: i64, q: i64) -> Result<PlumbingGraph> {
    if !(0 < q && q < p) || num_integer::gcd(p, q) != 1 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < q < p coprime, got ({p}, {q})"
        )));
    }
    let bs: Vec<i64> = hj_expand(p, q)?.iter().map(|b| -b).collect();
    Ok(PlumbingGraph::chain(&bs))
}

fn dedekind_total(s: &SeifertData, betas: &[i64], dr: DedekindFn) -> BigRational {
    s.alphas()
        .zip(betas)
        .fold(BigRational::zero(), |acc, (a, &b)| acc + classical_with(dr, b, a))
}

fn casson_walker_from(s: &SeifertData, betas: &[i64], dr: DedekindFn) -> BigRational {
    let e = s.e();
    let nu = s.nu() as i64;
    let inner = s.alphas().fold(int(2 - nu), |acc, a| acc + rat(1, a * a));
    let bracket = inner / &e + &e + int(3) + dedekind_total(s, betas, dr) * int(12);
    -bracket * BigRational::from_integer(s.order_h()) / int(24)
}

/// Casson-Walker invariant from the closed Seifert formula.
pub fn seifert_casson_walker(s: &SeifertData) -> BigRational {
    seifert_casson_walker_with(s, crate::dedekind::dr_sum)
}

pub fn seifert_casson_walker_with(s: &SeifertData, dr: DedekindFn) -> BigRational {
    let value = casson_walker_from(s, &s.betas(), dr);
    let alt = casson_walker_from(s, &s.betas_absorbed_at(s.nu() - 1), dr);
    assert_eq!(value, alt, "Casson-Walker depends on the choice of unnormalized invariants");
    value
}

/// `K^2 + #V` from the closed Seifert formula.
pub fn seifert_k2nv(s: &SeifertData) -> BigRational {
    seifert_k2nv_with(s, crate::dedekind::dr_sum)
}

pub fn seifert_k2nv_with(s: &SeifertData, dr: DedekindFn) -> BigRational {
    let e = s.e();
    let nu = s.nu() as i64;
    let inner = s.alphas().fold(int(2 - nu), |acc, a| acc + rat(1, a));
    &inner * &inner / &e + &e + int(5) + dedekind_total(s, &s.betas(), dr) * int(12)
}

/// Kreck-Stolz invariant of the canonical spin^c structure and the monopole count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsReport {
    pub ks: BigRational,
    pub s0_plus: usize,
    pub s0_minus: usize,
    pub applicable: bool,
    pub sw0_ks: Option<BigRational>,
}

pub fn ks_invariant(s: &SeifertData, dr: DedekindFn) -> BigRational {
    let l = s.e();
    let rho = s.rho0();
    let kappa = s.kappa();
    let nu = s.nu() as i64;
    let gammas = s.gammas();
    let rs = s.rs();
    let one = int(1);
    let mut ks = &l + &one - int(4) * &l * &rho * (&one - &rho) + int(4 * nu) * &rho;
    for (i, &(a, w)) in s.arms.iter().enumerate() {
        let x = (int(gammas[i]) + &rho * int(w)) / int(a);
        ks -= classical_with(dr, w, a) * int(4);
        ks -= eval_with(dr, w, a, x, -rho.clone()) * int(8);
    }
    let tail = if rho.is_zero() {
        s.arms.iter().enumerate().fold(BigRational::zero(), |acc, (i, &(a, _))| {
            acc - dedekind_symbol(&rat(rs[i] * gammas[i], a))
        })
    } else {
        s.arms.iter().enumerate().fold(
            (int(2) + &kappa) / int(2) * (&one - &rho * int(2)),
            |acc, (i, &(a, _))| acc - frac(&((int(rs[i] * gammas[i]) + &rho) / int(a))),
        )
    };
    ks + tail * int(4)
}

/// Degree of the smooth line bundle under the orbibundle `N L_0`.
fn deg_smooth_multiple(s: &SeifertData, n: &BigInt) -> BigRational {
    s.arms.iter().fold(BigRational::from_integer(n.clone()) * s.e(), |acc, &(a, w)| {
        acc - frac(&(BigRational::from_integer(n * w) / int(a)))
    })
}

/// Degree of the smooth line bundle under `K - N L_0`.
fn deg_smooth_canonical_minus(s: &SeifertData, n: &BigInt) -> BigRational {
    s.arms.iter().fold(
        s.kappa() - BigRational::from_integer(n.clone()) * s.e(),
        |acc, &(a, w)| acc - frac(&(BigRational::from_integer(BigInt::from(a - 1) - n * w) / int(a))),
    )
}

pub fn ks_route(s: &SeifertData) -> KsReport {
    ks_route_with(s, crate::dedekind::dr_sum)
}

/// Inapplicability is reported, never worked around.
/// The monopole window is `E = N L_0` with `0 < |N l - kappa/2| <= kappa/2`,
/// that is `kappa/l <= N <= 0` and `2 N l != kappa`.
pub fn ks_route_with(s: &SeifertData, dr: DedekindFn) -> KsReport {
    let ks = ks_invariant(s, dr);
    let l = s.e();
    let kappa = s.kappa();
    let half = &kappa / int(2);
    let (mut plus, mut minus, mut all_points) = (0usize, 0usize, true);
    if !kappa.is_negative() {
        let lo = -floor(&(-(&kappa / &l)));
        let mut n = lo;
        while !n.is_positive() {
            let nu_e = BigRational::from_integer(n.clone()) * &l - &half;
            if nu_e.is_negative() {
                let d = deg_smooth_multiple(s, &n);
                if !d.is_negative() {
                    plus += 1;
                    all_points &= d.is_zero();
                }
            } else if nu_e.is_positive() {
                let d = deg_smooth_canonical_minus(s, &n);
                if !d.is_negative() {
                    minus += 1;
                    all_points &= d.is_zero();
                }
            }
            n += 1;
        }
    }
    // With rho0 = 0 only the positive scalar curvature case (kappa < 0) is covered.
    let applicable = all_points && (!s.rho0().is_zero() || kappa.is_negative());
    let sw0_ks = applicable.then(|| &ks / int(8) + int((plus + minus) as i64));
    KsReport {
        ks,
        s0_plus: plus,
        s0_minus: minus,
        applicable,
        sw0_ks,
    }
}

/// Torsion at 1 from the central vertex and the arm ends only, with weights
/// `alpha` and `alpha / alpha_i`. `h` must come from [`star_graph`] of `s`.
pub fn seifert_torsion_shortcut(
    s: &SeifertData,
    star: &StarGraph,
    h: &FinAbGroup,
    h_sigma: &GroupElement,
    cap: u64,
) -> Result<BigRational> {
    h.check_cap(cap)?;
    let field = h.field().clone();
    let alpha = s.alpha();
    let nu = s.nu() as i64;
    let ends = star.arm_ends();
    let weights: Vec<i64> = s.alphas().map(|a| alpha / a).collect();
    let n = h.order() as usize;
    let total = (1..n)
        .into_par_iter()
        .map(|i| -> Result<CycNum> {
            let chi = h.character_at(i);
            let c = h.pairing_exponent(&chi, h.generator(star.centre)) as i64;
            let mut order = 0i64;
            let mut unit = BigRational::one();
            let mut acc = field.one();
            if c == 0 {
                order += nu - 2;
                unit *= num_traits::pow(int(alpha), (nu - 2) as usize);
            } else {
                for _ in 0..nu - 2 {
                    acc = &acc * &field.root_power_minus_one(c);
                }
            }
            for (k, &v) in ends.iter().enumerate() {
                let a = h.pairing_exponent(&chi, h.generator(v)) as i64;
                if a == 0 {
                    order -= 1;
                    unit /= int(weights[k]);
                } else {
                    acc = &acc * &field.inv_root_power_minus_one(a)?;
                }
            }
            if order > 0 {
                return Ok(field.zero());
            }
            if order < 0 {
                return Err(Error::InternalInvariantViolated(format!(
                    "pole of order {} at t = 1",
                    -order
                )));
            }
            let twist = h.pairing_exponent(&chi, h_sigma) as i64;
            let value = acc.scale(&unit);
            Ok(if twist == 0 { value } else { &value * &field.root_power(-twist) })
        })
        .try_reduce(|| field.zero(), |a, b| Ok(&a + &b))?;
    Ok(total.as_rational()? / int(h.order() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::dr_sum;
    use crate::homology::{homology_from_lattice, DEFAULT_ORDER_CAP};
    use crate::plumbing::build_lattice;
    use crate::torsion;

    fn d4() -> SeifertData {
        SeifertData::new(-2, vec![(2, 1); 3]).unwrap()
    }

    fn e7() -> SeifertData {
        SeifertData::new(-2, vec![(2, 1), (3, 2), (4, 3)]).unwrap()
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hj_expand(2, 1).unwrap(), vec![2]);
        assert_eq!(hj_expand(3, 2).unwrap(), vec![2, 2]);
        assert_eq!(hj_expand(5, 3).unwrap(), vec![2, 3]);
        assert!(hj_expand(4, 2).is_err());
    }

    #[test]
    fn lens_chains() {
        assert_eq!(lens_chain(3, 2).unwrap(), PlumbingGraph::chain(&[-2, -2]));
        assert_eq!(lens_chain(4, 1).unwrap(), PlumbingGraph::chain(&[-4]));
    }

    #[test]
    fn star_graphs() {
        let g = star_graph(&d4());
        assert_eq!(g.graph.len(), 4);
        assert!(g.graph.vertices.iter().all(|v| v.euler == -2));
        let g = star_graph(&e7());
        assert_eq!(g.graph.len(), 7);
        assert_eq!(g.arm_ends().len(), 3);
        let l = build_lattice(&g.graph).unwrap();
        assert_eq!(l.order(), e7().order_h());
    }

    #[test]
    fn derived_invariants() {
        let s = e7();
        assert_eq!(s.e(), rat(-1, 12));
        assert_eq!(s.rho0(), rat(1, 2));
        assert_eq!(s.kappa(), rat(-1, 12));
        let s = SeifertData::new(-3, vec![(4, 3); 3]).unwrap();
        assert_eq!(s.rho0(), rat(5, 6));
        assert_eq!(s.n0(), BigInt::from(-1));
        assert!(SeifertData::new(-1, vec![(2, 1); 3]).is_err());
    }

    #[test]
    fn closed_forms_match_plumbing() {
        for s in [d4(), e7(), SeifertData::new(-3, vec![(3, 2); 3]).unwrap()] {
            let l = build_lattice(&star_graph(&s).graph).unwrap();
            assert_eq!(seifert_casson_walker(&s), l.casson_walker(), "{s:?}");
            assert_eq!(seifert_k2nv(&s), l.k2_plus_nv(), "{s:?}");
        }
        let s = SeifertData::new(-3, vec![(2, 1); 3]).unwrap();
        assert_eq!(seifert_k2nv(&s), rat(10, 3));
    }

    #[test]
    fn ks_examples() {
        let r = ks_route(&e7());
        assert_eq!(r.ks, int(7));
        assert_eq!(r.sw0_ks, Some(rat(7, 8)));
        let r = ks_route(&d4());
        assert_eq!(r.sw0_ks, Some(rat(4, 8)));
        for m in [2i64, 4, 5, 7, 8] {
            let s = SeifertData::new(-3, vec![(m, m - 1); 3]).unwrap();
            let r = ks_route(&s);
            assert_eq!(r.s0_plus as i64, (m - 3).div_euclid(6) + 1);
            assert_eq!(r.sw0_ks.unwrap() * int(8), int(3 * m - 2) - rat(m, 3), "m = {m}");
        }
        let s = SeifertData::new(-3, vec![(3, 2); 3]).unwrap();
        assert!(!ks_route(&s).applicable);
        let _ = dr_sum;
    }

    #[test]
    fn shortcut_matches_generic() {
        for s in [d4(), e7(), SeifertData::new(-3, vec![(3, 2); 3]).unwrap()] {
            let star = star_graph(&s);
            let l = build_lattice(&star.graph).unwrap();
            let h = homology_from_lattice(&l).unwrap();
            let engine = torsion::TorsionEngine::new(&l, &h).unwrap();
            let generic = engine.torsion_at_one(&h.zero(), DEFAULT_ORDER_CAP).unwrap();
            let short =
                seifert_torsion_shortcut(&s, &star, &h, &h.zero(), DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(generic, short, "{s:?}");
        }
    }
}
