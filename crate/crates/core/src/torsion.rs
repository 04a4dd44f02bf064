//! Fourier transform of the sign-refined Reidemeister-Turaev torsion of a
//! plumbed rational homology sphere, and the invariants built on it.
//!
//! For a nontrivial character `chi` the transform at `chi.conj()` is
//! `chi.conj()(h_sigma) * lim_{t->1} prod_v (t^{w_v} chi(g_v) - 1)^{deg(v)-2}`,
//! where `w` is the weight vector of an admissible base vertex. The limit is
//! evaluated by counting orders of vanishing at `t = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::arith;
use crate::exact::rational::{int, mod_one};
use crate::exact::CycNum;
use crate::homology::{Character, FinAbGroup, GroupElement};
use crate::plumbing::LatticeData;

/// Group orders up to which the quadratic-function identities are checked exhaustively.
pub const EXHAUSTIVE_CAP: u64 = 500;

/// `I w = -m e_{v0}` with `m` minimal and `w` primitive and positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub base: usize,
    pub m: BigInt,
    pub w: Vec<BigInt>,
}

impl WeightVector {
    /// The same solution scaled by `c`; no longer minimal, still valid for limits.
    pub fn scaled(&self, c: i64) -> WeightVector {
        WeightVector {
            base: self.base,
            m: &self.m * c,
            w: self.w.iter().map(|x| x * c).collect(),
        }
    }
}

pub fn weight_vector(l: &LatticeData, v0: usize) -> Result<WeightVector> {
    let col = l.inverse().column(v0);
    let m = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mr = BigRational::from_integer(m.clone());
    let w: Vec<BigInt> = col.iter().map(|x| (-(x * &mr)).to_integer()).collect();
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_one() || w.iter().any(|x| !x.is_positive()) {
        return Err(Error::InternalInvariantViolated(format!(
            "weight vector at vertex {v0} is not primitive and positive: {w:?}"
        )));
    }
    let iw = l.matrix().mul_vec(&w);
    for (v, x) in iw.iter().enumerate() {
        let expect = if v == v0 { -&m } else { BigInt::zero() };
        if *x != expect {
            return Err(Error::InternalInvariantViolated(format!(
                "I w != -m e_{v0} at row {v}"
            )));
        }
    }
    Ok(WeightVector { base: v0, m, w })
}

/// Precomputed data for evaluating the regularized products of one graph.
pub struct TorsionEngine<'a> {
    l: &'a LatticeData,
    h: &'a FinAbGroup,
    /// `(v, deg(v) - 2)` for vertices of degree other than two.
    special: Vec<(usize, i64)>,
    weights: Vec<WeightVector>,
}

impl<'a> TorsionEngine<'a> {
    pub fn new(l: &'a LatticeData, h: &'a FinAbGroup) -> Result<Self> {
        let special = (0..l.len())
            .map(|v| (v, l.degree(v) as i64 - 2))
            .filter(|&(_, e)| e != 0)
            .collect();
        let weights = (0..l.len())
            .map(|v| weight_vector(l, v))
            .collect::<Result<_>>()?;
        Ok(TorsionEngine {
            l,
            h,
            special,
            weights,
        })
    }

    pub fn lattice(&self) -> &LatticeData {
        self.l
    }

    pub fn group(&self) -> &FinAbGroup {
        self.h
    }

    pub fn weights(&self, v: usize) -> &WeightVector {
        &self.weights[v]
    }

    /// `a_v` with `chi(g_v) = zeta_N^{a_v}`, for every vertex.
    pub fn exponents(&self, chi: &Character) -> Vec<u64> {
        self.h
            .generators()
            .iter()
            .map(|g| self.h.pairing_exponent(chi, g))
            .collect()
    }

    /// Whether `v0` may serve as base vertex for `chi`: `chi(g_{v0}) != 1` or
    /// the same holds at a neighbour.
    pub fn admissible(&self, exps: &[u64], v0: usize) -> bool {
        exps[v0] != 0 || self.l.neighbors(v0).iter().any(|&u| exps[u] != 0)
    }

    pub fn regularized_product(&self, chi: &Character, w: &WeightVector) -> Result<CycNum> {
        let exps = self.exponents(chi);
        if !self.admissible(&exps, w.base) {
            return Err(Error::InvalidBaseVertex(w.base));
        }
        self.product_from_exponents(&exps, w)
    }

    /// The product with the lowest-index vertex carrying a nontrivial value as base.
    pub fn canonical_product(&self, chi: &Character) -> Result<CycNum> {
        let exps = self.exponents(chi);
        let Some(base) = exps.iter().position(|&a| a != 0) else {
            return Err(Error::InvalidArgument("trivial character".into()));
        };
        self.product_from_exponents(&exps, &self.weights[base])
    }

    fn product_from_exponents(&self, exps: &[u64], w: &WeightVector) -> Result<CycNum> {
        let field = self.h.field();
        let mut order = 0i64;
        let mut unit_num = BigInt::one();
        let mut unit_den = BigInt::one();
        for &(v, e) in &self.special {
            if exps[v] == 0 {
                order += e;
                let p = num_traits::pow(w.w[v].clone(), e.unsigned_abs() as usize);
                if e > 0 {
                    unit_num *= p;
                } else {
                    unit_den *= p;
                }
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
        let mut acc = field.from_rational(&BigRational::new(unit_num, unit_den));
        for &(v, e) in &self.special {
            let a = exps[v] as i64;
            if a == 0 {
                continue;
            }
            let f = if e > 0 {
                field.root_power_minus_one(a)
            } else {
                field.inv_root_power_minus_one(a)?
            };
            for _ in 0..e.abs() {
                acc = &acc * &f;
            }
        }
        Ok(acc)
    }

    /// The products for all characters in enumeration order; zero at the trivial one.
    pub fn all_products(&self, cap: u64) -> Result<Vec<CycNum>> {
        self.h.check_cap(cap)?;
        (0..self.h.order() as usize)
            .into_par_iter()
            .map(|i| {
                let chi = self.h.character_at(i);
                if chi.is_trivial() {
                    Ok(self.h.field().zero())
                } else {
                    self.canonical_product(&chi)
                }
            })
            .collect()
    }

    /// `(1/|H|) sum_chi chi.conj()(h_sigma) * product(chi)`, summed without storing entries.
    pub fn torsion_at_one(&self, h_sigma: &GroupElement, cap: u64) -> Result<BigRational> {
        self.h.check_cap(cap)?;
        let field = self.h.field().clone();
        let n = self.h.order() as usize;
        let total = (1..n)
            .into_par_iter()
            .map(|i| -> Result<CycNum> {
                let chi = self.h.character_at(i);
                let p = self.canonical_product(&chi)?;
                let twist = self.h.pairing_exponent(&chi, h_sigma) as i64;
                Ok(if twist == 0 { p } else { &p * &field.root_power(-twist) })
            })
            .try_reduce(|| field.zero(), |a, b| Ok(&a + &b))?;
        Ok(total.as_rational()? / int(self.h.order() as i64))
    }
}

/// Entries are indexed like [`FinAbGroup::characters`]; the entry at `chi` is
/// the transform evaluated at `chi.conj()`.
#[derive(Clone, Debug)]
pub struct TorsionTable {
    pub h_sigma: GroupElement,
    pub entries: Vec<CycNum>,
    pub t_at_1: BigRational,
}

impl TorsionTable {
    pub fn entry(&self, h: &FinAbGroup, chi: &Character) -> &CycNum {
        &self.entries[h.index_of(&GroupElement(chi.0.clone()))]
    }

    /// The transform itself at `chi`, that is the entry stored at `chi.conj()`.
    pub fn transform(&self, h: &FinAbGroup, chi: &Character) -> &CycNum {
        self.entry(h, &h.conj(chi))
    }
}

pub fn torsion_table(
    l: &LatticeData,
    h: &FinAbGroup,
    h_sigma: &GroupElement,
    cap: u64,
) -> Result<TorsionTable> {
    let engine = TorsionEngine::new(l, h)?;
    let products = engine.all_products(cap)?;
    table_from_products(h, &products, h_sigma)
}

/// The table for `h_sigma` from precomputed [`TorsionEngine::all_products`].
pub fn table_from_products(
    h: &FinAbGroup,
    products: &[CycNum],
    h_sigma: &GroupElement,
) -> Result<TorsionTable> {
    let field = h.field();
    let entries: Vec<CycNum> = products
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let twist = h.pairing_exponent(&h.character_at(i), h_sigma) as i64;
            if twist == 0 {
                p.clone()
            } else {
                p * &field.root_power(-twist)
            }
        })
        .collect();
    let sum = entries.iter().fold(field.zero(), |acc, e| &acc + e);
    let t_at_1 = sum.as_rational()? / int(h.order() as i64);
    Ok(TorsionTable {
        h_sigma: h_sigma.clone(),
        entries,
        t_at_1,
    })
}

/// `F(x) = (1/|H|) sum_chi product(chi) chi(x)` for every `x`, in element order.
///
/// The torsion of the spin^c structure `h_sigma . sigma_can` at `h` is
/// `F(-h_sigma - h)`. Values are obtained through field traces, which are
/// exact for the rational results.
pub fn torsion_function(h: &FinAbGroup, products: &[CycNum]) -> Vec<BigRational> {
    let n = h.exponent();
    let deg = h.field().degree();
    let traces: Vec<i64> = (0..n).map(|k| arith::root_trace(n, k)).collect();
    let den = products
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(p.denominator()));
    let scaled: Vec<Vec<BigInt>> = products
        .iter()
        .map(|p| {
            let f = &den / p.denominator();
            p.numerators().iter().map(|c| c * &f).collect()
        })
        .collect();
    let small: Option<Vec<Vec<i64>>> = scaled
        .iter()
        .map(|v| v.iter().map(ToPrimitive::to_i64).collect())
        .collect();
    let order = h.order() as usize;
    let chars: Vec<Character> = (0..order).map(|i| h.character_at(i)).collect();
    let total_den = BigRational::from_integer(&den * BigInt::from(h.order()) * BigInt::from(deg));
    (0..order)
        .into_par_iter()
        .map(|xi| {
            let x = h.element_at(xi);
            let fast = small.as_ref().and_then(|small| {
                let mut acc: i128 = 0;
                for (ci, chi) in chars.iter().enumerate() {
                    let j = h.pairing_exponent(chi, &x) as usize;
                    for (i, &c) in small[ci].iter().enumerate() {
                        if c != 0 {
                            let t = traces[(i + j) % n as usize] as i128;
                            acc = acc.checked_add((c as i128).checked_mul(t)?)?;
                        }
                    }
                }
                Some(BigInt::from(acc))
            });
            let s = fast.unwrap_or_else(|| {
                let mut acc = BigInt::zero();
                for (ci, chi) in chars.iter().enumerate() {
                    let j = h.pairing_exponent(chi, &x) as usize;
                    for (i, c) in scaled[ci].iter().enumerate() {
                        if !c.is_zero() {
                            acc += c * traces[(i + j) % n as usize];
                        }
                    }
                }
                acc
            });
            BigRational::from_integer(s) / &total_den
        })
        .collect()
}

pub fn sw0(l: &LatticeData, h: &FinAbGroup, h_sigma: &GroupElement, cap: u64) -> Result<BigRational> {
    let engine = TorsionEngine::new(l, h)?;
    Ok(engine.torsion_at_one(h_sigma, cap)? - l.casson_walker_over_order())
}

pub fn conjecture_gap(l: &LatticeData, h: &FinAbGroup, cap: u64) -> Result<BigRational> {
    Ok(sw0(l, h, &h.zero(), cap)? - l.k2_plus_nv() / int(8))
}

/// Checks, modulo one and for all `g`, `h` in the group,
/// `(1/|H|) sum_chi T(chi)(chi(h)-1)(chi(g)-1) = -b(g,h)` and
/// `(1/|H|) sum_chi T(chi)(chi(h)-1) = -q_sigma(h)`, where `T` is the transform
/// for `h_sigma . sigma_can` and `q_sigma` its quadratic function.
pub fn swiden_consistency(
    l: &LatticeData,
    h: &FinAbGroup,
    h_sigma: &GroupElement,
    cap: u64,
) -> Result<bool> {
    let engine = TorsionEngine::new(l, h)?;
    let products = engine.all_products(cap.min(EXHAUSTIVE_CAP))?;
    let f = torsion_function(h, &products);
    Ok(swiden_from_function(h, &f, h_sigma))
}

pub(crate) fn swiden_from_function(h: &FinAbGroup, f: &[BigRational], h_sigma: &GroupElement) -> bool {
    // G(x) = (1/|H|) sum_chi T(chi) chi(x) = F(-h_sigma - x)
    let base = h.neg(h_sigma);
    let g_of = |x: &GroupElement| &f[h.index_of(&h.sub(&base, x))];
    let elements: Vec<GroupElement> = h.elements().collect();
    let g0 = g_of(&h.zero());
    for a in &elements {
        let ga = g_of(a);
        if mod_one(&(ga - g0 + h.spinc_quadratic(h_sigma, a))) != BigRational::zero() {
            return false;
        }
        for b in &elements {
            let lhs = g_of(&h.add(a, b)) - ga - g_of(b) + g0;
            if mod_one(&(lhs + h.linking_form(a, b))) != BigRational::zero() {
                return false;
            }
        }
    }
    true
}

/// Both identities for every spin^c structure at once. The bilinear identity
/// is checked at `h_sigma = 0` over all pairs; by the cocycle property it then
/// holds at every base point. The quadratic one is checked for all `h_sigma`.
pub fn quadratic_identities_all(h: &FinAbGroup, f: &[BigRational]) -> bool {
    let elements: Vec<GroupElement> = h.elements().collect();
    let g_of = |x: &GroupElement| &f[h.index_of(&h.neg(x))];
    let g0 = &f[0];
    for a in &elements {
        let ga = g_of(a);
        for b in &elements {
            let lhs = g_of(&h.add(a, b)) - ga - g_of(b) + g0;
            if mod_one(&(lhs + h.linking_form(a, b))) != BigRational::zero() {
                return false;
            }
        }
    }
    elements.iter().all(|hs| {
        let base = h.neg(hs);
        let at = |x: &GroupElement| &f[h.index_of(&h.sub(&base, x))];
        let t0 = at(&h.zero());
        elements
            .iter()
            .all(|x| mod_one(&(at(x) - t0 + h.spinc_quadratic(hs, x))) == BigRational::zero())
    })
}

/// With the base degree raised by one, `prod_v w_v^{deg(v)-2}` equals `|H|/m`.
pub fn delta_at_one_check(l: &LatticeData, v0: usize) -> Result<bool> {
    let w = weight_vector(l, v0)?;
    let mut value = BigRational::one();
    let mut order = 1i64;
    for v in 0..l.len() {
        let e = l.degree(v) as i64 + i64::from(v == v0) - 2;
        order += e;
        let p = BigRational::from_integer(w.w[v].clone());
        value *= num_traits::pow(if e < 0 { p.recip() } else { p }, e.unsigned_abs() as usize);
    }
    Ok(order == 0 && value == BigRational::new(l.order(), w.m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::homology::{homology_from_lattice, DEFAULT_ORDER_CAP};
    use crate::plumbing::{build_lattice, PlumbingGraph};

    fn setup(g: &PlumbingGraph) -> (LatticeData, FinAbGroup) {
        let l = build_lattice(g).unwrap();
        let h = homology_from_lattice(&l).unwrap();
        (l, h)
    }

    #[test]
    fn weights() {
        let (l, _) = setup(&PlumbingGraph::chain(&[-2]));
        let w = weight_vector(&l, 0).unwrap();
        assert_eq!((w.m, w.w), (BigInt::from(2), vec![BigInt::from(1)]));
        let (l, _) = setup(&PlumbingGraph::chain(&[-2, -2]));
        let w = weight_vector(&l, 0).unwrap();
        assert_eq!((w.m, w.w), (BigInt::from(3), vec![BigInt::from(2), BigInt::from(1)]));
        assert!(delta_at_one_check(&l, 0).unwrap());
    }

    #[test]
    fn a1_a2_torsion() {
        let (l, h) = setup(&PlumbingGraph::chain(&[-2]));
        let t = torsion_table(&l, &h, &h.zero(), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(t.entries[1].as_rational(), Ok(rat(1, 4)));
        assert_eq!(t.t_at_1, rat(1, 8));
        assert_eq!(sw0(&l, &h, &h.zero(), DEFAULT_ORDER_CAP).unwrap(), rat(1, 8));
        let (l, h) = setup(&PlumbingGraph::chain(&[-2, -2]));
        assert_eq!(sw0(&l, &h, &h.zero(), DEFAULT_ORDER_CAP).unwrap(), rat(1, 4));
        assert_eq!(conjecture_gap(&l, &h, DEFAULT_ORDER_CAP).unwrap(), rat(0, 1));
    }

    #[test]
    fn lens_4_1_identities() {
        let (l, h) = setup(&PlumbingGraph::chain(&[-4]));
        for hs in h.elements() {
            assert!(swiden_consistency(&l, &h, &hs, DEFAULT_ORDER_CAP).unwrap(), "{hs:?}");
        }
    }

    #[test]
    fn inadmissible_base_is_rejected() {
        // D4: a character trivial on the centre and on one leaf.
        let mut g = PlumbingGraph::chain(&[-2]);
        for _ in 0..3 {
            let v = g.add_vertex(-2);
            g.add_edge(0, v);
        }
        let (l, h) = setup(&g);
        let e = TorsionEngine::new(&l, &h).unwrap();
        let mut seen = false;
        for chi in h.characters(DEFAULT_ORDER_CAP).unwrap().skip(1) {
            let exps = e.exponents(&chi);
            for v in 0..l.len() {
                let r = e.regularized_product(&chi, e.weights(v));
                if e.admissible(&exps, v) {
                    assert_eq!(r.unwrap(), e.canonical_product(&chi).unwrap());
                } else {
                    seen = true;
                    assert_eq!(r, Err(Error::InvalidBaseVertex(v)));
                }
            }
        }
        assert!(seen);
    }
}
