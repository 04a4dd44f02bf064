//! Fixture harness: every acceptance criterion as a named, independently
//! runnable family of exact checks.

use std::fmt::Debug;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;

use crate::brieskorn::{
    brieskorn_seifert, classify, closed_form_invariants_with, order_of_h, quadruples_coprime,
    BrieskornSpec, Classification,
};
use crate::corpus;
use crate::dedekind::{
    classical_with, dedekind_symbol, dr_sum, dr_sum_direct, fourier_identity_suite_with, psi2,
    DedekindArgs, DedekindFn,
};
use crate::error::Result;
use crate::exact::rational::{frac, int, rat};
use crate::exact::{invert_rational_matrix, smith_normal_form, CycField, IntMatrix};
use crate::homology::{gauss_sum_check, homology_from_lattice, q_can_of_lift, FinAbGroup};
use crate::plumbing::{blowup_edge, blowup_vertex, build_lattice, LatticeData, PlumbingGraph};
use crate::report::{analyze, AnalysisOptions, InvariantReport};
use crate::seifert::{
    ks_route_with, lens_chain, seifert_casson_walker_with, seifert_k2nv_with,
    seifert_torsion_shortcut, star_graph, SeifertData,
};
use crate::torsion::{
    delta_at_one_check, quadratic_identities_all, swiden_consistency, table_from_products,
    torsion_function, TorsionEngine,
};

/// Largest group on which the closed Brieskorn forms are compared with the pipeline.
pub const PIPELINE_CAP: u64 = 10_000;
/// Largest group on which the symmetry and base-independence sweeps run.
pub const SWEEP_CAP: u64 = 200;
/// Largest group on which quadratic identities and Gauss sums are checked.
pub const IDENTITY_CAP: u64 = 500;
/// Largest group on which random Seifert data go through the full pipeline.
pub const ROUTE_CAP: u64 = 500;
/// Minimum number of random Seifert data compared against the pipeline.
pub const ROUTE_MIN_COMPARISONS: usize = 12;

/// Inputs shared by all fixtures.
#[derive(Clone, Copy)]
pub struct Ctx {
    /// Evaluator used wherever a closed form needs a Dedekind-Rademacher sum.
    pub dedekind: DedekindFn,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { dedekind: dr_sum }
    }
}

/// A deliberately wrong fast path: off by `1/k^2` whenever `k > 2`.
pub fn mutant_dedekind(a: &DedekindArgs) -> BigRational {
    let v = dr_sum(a);
    if a.k > BigInt::from(2) {
        v + BigRational::new(BigInt::from(1), &a.k * &a.k)
    } else {
        v
    }
}

#[derive(Debug, Default)]
pub struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    pub fn truth(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn eq<T: PartialEq + Debug>(&mut self, what: impl std::fmt::Display, got: &T, want: &T) {
        self.truth(got == want, || format!("{what}: got {got:?}, want {want:?}"));
    }

    pub fn ok<T>(&mut self, what: impl std::fmt::Display, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn merge(mut self, other: Checker) -> Checker {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }
}

pub struct Fixture {
    pub name: &'static str,
    pub criterion: u8,
    pub summary: &'static str,
    run: fn(&Ctx, &mut Checker),
}

impl Fixture {
    pub fn run(&self, ctx: &Ctx) -> Outcome {
        let mut c = Checker::default();
        let res = catch_unwind(AssertUnwindSafe(|| (self.run)(ctx, &mut c)));
        if let Err(p) = res {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            c.failures.push(format!("panicked: {msg}"));
        }
        Outcome {
            checks: c.checks,
            failures: c.failures,
        }
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "lens-spaces", criterion: 1, summary: "L(p,q), q < p <= 50: torsion, Casson-Walker, K^2+#V, gap 0", run: lens_spaces },
        Fixture { name: "a-chains", criterion: 2, summary: "A_{p-1}, p <= 30: sw0 = (p-1)/8", run: a_chains },
        Fixture { name: "d-series", criterion: 3, summary: "D_n, 4 <= n <= 12: 8 sw0 = n by torsion and KS", run: d_series },
        Fixture { name: "e-series", criterion: 4, summary: "E6, E7, E8: sw0 = 6/8, 7/8, 1", run: e_series },
        Fixture { name: "rational-family", criterion: 5, summary: "(-3; (m,m-1)^3), m in {2,4,5,7,8}: both routes, gap 0", run: rational_family },
        Fixture { name: "rational-m3", criterion: 6, summary: "(-3; (3,2)^3): T(1) = 5/9, lambda/|H| = -7/36, sw0 = 3/4", run: rational_m3 },
        Fixture { name: "polygonal", criterion: 7, summary: "polygonal graphs: 8 sw0 = 17 + nu - sum a_i, gap 1", run: polygonal },
        Fixture { name: "non-star", criterion: 8, summary: "triple cover of (x^2+y^3)(x^3+y^2): |H| = 3, gap 1", run: non_star },
        Fixture { name: "brieskorn", criterion: 9, summary: "Brieskorn-Hamm corpus: closed forms vs pipeline, Gorenstein check", run: brieskorn },
        Fixture { name: "exact-oracles", criterion: 10, summary: "Smith form and rational inverse against oracles", run: exact_oracles },
        Fixture { name: "cyclotomic-field", criterion: 10, summary: "field axioms in Q(zeta_N)", run: cyclotomic_field },
        Fixture { name: "dedekind-identities", criterion: 10, summary: "reciprocity, shift invariance, Kubert and Fourier identities", run: dedekind_identities },
        Fixture { name: "torsion-independence", criterion: 10, summary: "base vertex and weight scale do not change the limit", run: torsion_independence },
        Fixture { name: "torsion-symmetry", criterion: 10, summary: "transform at chi for sigma equals transform at chi-bar for sigma-bar", run: torsion_symmetry },
        Fixture { name: "quadratic-identities", criterion: 10, summary: "torsion recovers the linking form and the spin^c quadratic function", run: quadratic_identities },
        Fixture { name: "alexander-at-one", criterion: 10, summary: "Delta(1) = |H|/m for every base vertex", run: alexander_at_one },
        Fixture { name: "blowup-stability", criterion: 10, summary: "blowups leave all invariants unchanged", run: blowup_stability },
        Fixture { name: "quadratic-function", criterion: 10, summary: "linking form and q_can laws, lift independence", run: quadratic_function },
        Fixture { name: "gauss-sum", criterion: 10, summary: "van der Blij formula in floating point", run: gauss_sum },
        Fixture { name: "seifert-routes", criterion: 10, summary: "random Seifert data: closed forms, KS and shortcut vs pipeline", run: seifert_routes },
        Fixture { name: "nonnegativity", criterion: 11, summary: "conjecture gap >= 0 on the corpus", run: nonnegativity },
    ]
}

pub struct FixtureResult {
    pub name: &'static str,
    pub criterion: u8,
    pub outcome: Outcome,
}

/// Runs all fixtures in parallel; results come back in fixture order.
pub fn run_all(ctx: &Ctx) -> Vec<FixtureResult> {
    fixtures()
        .par_iter()
        .map(|f| FixtureResult {
            name: f.name,
            criterion: f.criterion,
            outcome: f.run(ctx),
        })
        .collect()
}

fn report(c: &mut Checker, label: &str, g: &PlumbingGraph) -> Option<InvariantReport> {
    c.ok(label, analyze(g, &AnalysisOptions::default()))
}

fn lattice_and_group(c: &mut Checker, label: &str, g: &PlumbingGraph) -> Option<(LatticeData, FinAbGroup)> {
    let l = c.ok(label, build_lattice(g))?;
    let h = c.ok(label, homology_from_lattice(&l))?;
    Some((l, h))
}

fn over_h(x: &BigRational, r: &InvariantReport) -> BigRational {
    x / BigRational::from_integer(r.order_h.clone())
}

fn par_check<T: Sync>(items: &[T], f: impl Fn(&T, &mut Checker) + Sync) -> Checker {
    items
        .par_iter()
        .map(|x| {
            let mut c = Checker::default();
            f(x, &mut c);
            c
        })
        .reduce(Checker::default, Checker::merge)
}

fn lens_spaces(ctx: &Ctx, c: &mut Checker) {
    let pairs: Vec<(i64, i64)> = (2..=50)
        .flat_map(|p| (1..p).filter(move |&q| num_integer::gcd(p, q) == 1).map(move |q| (p, q)))
        .collect();
    let sub = par_check(&pairs, |&(p, q), c| {
        let label = format!("L({p},{q})");
        let Some(g) = c.ok(&label, lens_chain(p, q)) else { return };
        let Some(r) = report(c, &label, &g) else { return };
        let s = classical_with(ctx.dedekind, q, p);
        c.eq(format!("{label} T(1)"), &r.torsion_at_1, &(rat(p - 1, 4 * p) - &s));
        c.eq(format!("{label} lambda"), &r.casson_walker, &(int(p) * &s / int(2)));
        c.eq(format!("{label} K^2+#V"), &r.k2_plus_nv, &(rat(2 * (p - 1), p) - &s * int(12)));
        c.eq(format!("{label} gap"), &r.conjecture_gap, &BigRational::zero());
    });
    *c = std::mem::take(c).merge(sub);
}

fn a_chains(_: &Ctx, c: &mut Checker) {
    for p in 2..=30usize {
        if let Some(r) = report(c, &format!("A{}", p - 1), &corpus::a_chain(p)) {
            c.eq(format!("A{} sw0", p - 1), &r.sw0, &rat(p as i64 - 1, 8));
        }
    }
}

fn d_series(ctx: &Ctx, c: &mut Checker) {
    for n in 4..=12 {
        let s = corpus::d_seifert(n);
        let star = star_graph(&s);
        c.eq(format!("D{n} vertices"), &star.graph.len(), &(n as usize));
        c.truth(star.graph.vertices.iter().all(|v| v.euler == -2), || format!("D{n} not all -2"));
        if let Some(r) = report(c, &format!("D{n}"), &star.graph) {
            c.eq(format!("D{n} 8 sw0 torsion"), &(&r.sw0 * int(8)), &int(n));
        }
        let ks = ks_route_with(&s, ctx.dedekind);
        c.truth(ks.applicable, || format!("D{n} KS route not applicable"));
        c.eq(format!("D{n} 8 sw0 KS"), &ks.sw0_ks.map(|x| x * int(8)), &Some(int(n)));
    }
}

fn e_series(ctx: &Ctx, c: &mut Checker) {
    let cases = [
        ("E6", corpus::e6_seifert(), 6, Some(vec![2, 3, 4])),
        ("E7", corpus::e7_seifert(), 7, None),
        ("E8", corpus::e8_seifert(), 8, Some(vec![2, 3, 5])),
    ];
    for (name, s, n, spec) in cases {
        let star = star_graph(&s);
        c.eq(format!("{name} vertices"), &star.graph.len(), &(n as usize));
        c.truth(star.graph.vertices.iter().all(|v| v.euler == -2), || format!("{name} not all -2"));
        let Some(r) = report(c, name, &star.graph) else { continue };
        c.eq(format!("{name} sw0"), &r.sw0, &rat(n, 8));
        if let Some(spec) = spec {
            let spec = BrieskornSpec::new(spec).expect("valid exponents");
            if let Some(b) = c.ok(name, closed_form_invariants_with(&spec, ctx.dedekind)) {
                c.truth(b.gorenstein_check, || format!("{name} Gorenstein check fails"));
                c.eq(format!("{name} closed sw0"), &b.sw0, &r.sw0);
                c.eq(format!("{name} sigma(F)"), &b.sigma_f, &int(-n));
            }
        } else {
            let ks = ks_route_with(&s, ctx.dedekind);
            c.eq(format!("{name} KS"), &ks.ks, &int(7));
            c.eq(format!("{name} KS sw0"), &ks.sw0_ks, &Some(rat(7, 8)));
        }
        if r.order_h == BigInt::from(1) {
            c.eq(format!("{name} unimodular sw0 = -lambda"), &r.sw0, &-r.casson_walker.clone());
        }
    }
}

fn rational_family(ctx: &Ctx, c: &mut Checker) {
    for m in [2i64, 4, 5, 7, 8] {
        let label = format!("m={m}");
        let s = corpus::rational_family(m);
        let want = int(3 * m - 2) - rat(m, 3);
        let ks = ks_route_with(&s, ctx.dedekind);
        c.truth(ks.applicable, || format!("{label}: KS route not applicable"));
        c.eq(format!("{label} |S0+|"), &(ks.s0_plus as i64), &((m - 3).div_euclid(6) + 1));
        c.eq(format!("{label} |S0-|"), &ks.s0_minus, &0);
        c.eq(format!("{label} 8 sw0 KS"), &ks.sw0_ks.map(|x| x * int(8)), &Some(want.clone()));
        c.eq(format!("{label} closed K^2+#V"), &seifert_k2nv_with(&s, ctx.dedekind), &want);
        let Some(r) = report(c, &label, &star_graph(&s).graph) else { continue };
        c.eq(format!("{label} 8 sw0 torsion"), &(&r.sw0 * int(8)), &want);
        c.eq(format!("{label} K^2+#V"), &r.k2_plus_nv, &want);
        c.eq(format!("{label} gap"), &r.conjecture_gap, &BigRational::zero());
        if m == 2 {
            c.truth(!r.numerically_gorenstein, || "m=2 reported numerically Gorenstein".into());
        }
    }
}

fn rational_m3(ctx: &Ctx, c: &mut Checker) {
    let s = corpus::rational_family(3);
    let star = star_graph(&s);
    let Some(r) = report(c, "m=3", &star.graph) else { return };
    c.eq("m=3 |H|", &r.order_h, &BigInt::from(27));
    c.eq("m=3 T(1)", &r.torsion_at_1, &rat(5, 9));
    c.eq("m=3 lambda/|H|", &over_h(&r.casson_walker, &r), &rat(-7, 36));
    c.eq("m=3 sw0", &r.sw0, &rat(3, 4));
    c.eq("m=3 gap", &r.conjecture_gap, &BigRational::zero());
    let closed = seifert_casson_walker_with(&s, ctx.dedekind);
    c.eq("m=3 closed lambda/|H|", &over_h(&closed, &r), &rat(-7, 36));
    c.truth(!ks_route_with(&s, ctx.dedekind).applicable, || "m=3 KS route claims applicability".into());
    if let Some((_, h)) = lattice_and_group(c, "m=3", &star.graph) {
        let short = seifert_torsion_shortcut(&s, &star, &h, &h.zero(), u64::MAX);
        if let Some(t) = c.ok("m=3 shortcut", short) {
            c.eq("m=3 shortcut T(1)", &t, &rat(5, 9));
        }
    }
}

fn polygonal(ctx: &Ctx, c: &mut Checker) {
    for a in corpus::POLYGONAL_SETS {
        let label = format!("polygonal {a:?}");
        let nu = a.len() as i64;
        let sum: i64 = a.iter().sum();
        let s = corpus::polygonal(a);
        let want = int(17 + nu - sum);
        let Some(r) = report(c, &label, &star_graph(&s).graph) else { continue };
        c.eq(format!("{label} 8 sw0"), &(&r.sw0 * int(8)), &want);
        c.eq(format!("{label} gap"), &r.conjecture_gap, &int(1));
        c.eq(format!("{label} K^2+#V"), &r.k2_plus_nv, &int(8 - sum + nu + 1));
        let ks = ks_route_with(&s, ctx.dedekind);
        c.eq(format!("{label} |S0+| |S0-|"), &(ks.s0_plus, ks.s0_minus), &(1, 1));
        c.eq(format!("{label} 8 sw0 KS"), &ks.sw0_ks.map(|x| x * int(8)), &Some(want));
    }
}

fn non_star(_: &Ctx, c: &mut Checker) {
    let g = corpus::non_star_graph();
    c.eq("vertex count", &g.len(), &13);
    let Some(r) = report(c, "non-star", &g) else { return };
    c.eq("|H| gate", &r.order_h, &BigInt::from(3));
    if r.order_h != BigInt::from(3) {
        return;
    }
    c.eq("lambda/|H|", &over_h(&r.casson_walker, &r), &rat(-49, 36));
    c.eq("T(1)", &r.torsion_at_1, &rat(8, 9));
    c.eq("sw0", &r.sw0, &rat(9, 4));
    c.eq("K^2+#V", &r.k2_plus_nv, &int(10));
    c.eq("sw0 = p_g + (K^2+#V)/8", &r.sw0, &(int(1) + &r.k2_plus_nv / int(8)));
    c.eq("gap", &r.conjecture_gap, &int(1));
}

fn brieskorn(ctx: &Ctx, c: &mut Checker) {
    for a in corpus::BRIESKORN_SPECS {
        let label = format!("Sigma{a:?}");
        let spec = BrieskornSpec::new(a.to_vec()).expect("valid exponents");
        let Some(class) = c.ok(&label, classify(&spec)) else { continue };
        c.truth(class != Classification::NotQhs, || format!("{label} not a QHS"));
        c.truth(quadruples_coprime(&spec), || format!("{label} has four exponents sharing a factor"));
        let Some(s) = c.ok(&label, brieskorn_seifert(&spec)) else { continue };
        if matches!(class, Classification::CaseII { .. }) {
            c.truth(s.b % 2 == 0, || format!("{label} central b = {} is odd", s.b));
        }
        c.eq(format!("{label} e"), &s.e(), &spec.e());
        let Some(closed) = c.ok(&label, closed_form_invariants_with(&spec, ctx.dedekind)) else { continue };
        c.truth(closed.gorenstein_check, || format!("{label} Gorenstein check fails"));
        c.eq(format!("{label} |H| closed vs Seifert"), &closed.order_h, &s.order_h());
        if let Some(o) = c.ok(&label, order_of_h(&spec)) {
            c.eq(format!("{label} |H|"), &o, &closed.order_h);
        }
        c.eq(format!("{label} lambda closed vs Seifert"), &closed.lambda_closed, &seifert_casson_walker_with(&s, ctx.dedekind));
        let star = star_graph(&s);
        let Some(l) = c.ok(&label, build_lattice(&star.graph)) else { continue };
        c.eq(format!("{label} |det I|"), &l.order(), &closed.order_h);
        if closed.order_h > BigInt::from(PIPELINE_CAP) {
            continue;
        }
        let Some(r) = report(c, &label, &star.graph) else { continue };
        c.eq(format!("{label} T(1)"), &r.torsion_at_1, &closed.torsion_closed);
        c.eq(format!("{label} lambda"), &r.casson_walker, &closed.lambda_closed);
        c.eq(format!("{label} sw0"), &r.sw0, &closed.sw0);
    }
}

fn adjugate_inverse(a: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = a.rows();
    let det = a.determinant();
    if det.is_zero() {
        return None;
    }
    let minor = |r: usize, col: usize| -> BigInt {
        if n == 1 {
            return BigInt::from(1);
        }
        IntMatrix::from_fn(n - 1, n - 1, |i, j| {
            a[(if i < r { i } else { i + 1 }, if j < col { j } else { j + 1 })].clone()
        })
        .determinant()
    };
    Some(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        BigRational::new(minor(j, i) * sign, det.clone())
                    })
                    .collect()
            })
            .collect(),
    )
}

fn exact_oracles(_: &Ctx, c: &mut Checker) {
    let mut rng = StdRng::seed_from_u64(11);
    for trial in 0..60 {
        let (r, k) = (rng.random_range(1..=5usize), rng.random_range(1..=5usize));
        let a = IntMatrix::from_fn(r, k, |_, _| BigInt::from(rng.random_range(-5..=5i64)));
        let s = smith_normal_form(&a);
        c.eq(format!("trial {trial}: U A V = D"), &s.u.mul(&a).mul(&s.v), &s.d);
        c.truth(s.u.determinant().abs() == BigInt::from(1), || format!("trial {trial}: U not unimodular"));
        c.truth(s.v.determinant().abs() == BigInt::from(1), || format!("trial {trial}: V not unimodular"));
        let diag: Vec<BigInt> = s.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
        c.truth(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || format!("trial {trial}: divisibility {diag:?}"));
        c.eq(format!("trial {trial}: U U^-1"), &s.u.mul(&s.u_inv), &IntMatrix::identity(r));
        if r == k {
            let det = a.determinant().abs();
            if !det.is_zero() {
                c.eq(format!("trial {trial}: |det| = prod d"), &s.diagonal().iter().product::<BigInt>(), &det);
            }
        }
    }
    for trial in 0..60 {
        let n = rng.random_range(1..=6usize);
        let a = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-5..=5i64)));
        match (invert_rational_matrix(&a), adjugate_inverse(&a)) {
            (Ok(inv), Some(oracle)) => {
                let got: Vec<Vec<BigRational>> = (0..n).map(|i| inv.row(i).to_vec()).collect();
                c.eq(format!("inverse trial {trial}"), &got, &oracle);
            }
            (Err(_), None) => c.truth(true, String::new),
            (got, oracle) => c.truth(false, || format!("inverse trial {trial}: {:?} vs oracle {:?}", got.is_ok(), oracle.is_some())),
        }
    }
}

fn cyclotomic_field(_: &Ctx, c: &mut Checker) {
    for n in 2..=24usize {
        let f = CycField::new(n);
        let total = (0..n as i64).fold(f.zero(), |acc, k| &acc + &f.root_power(k));
        c.truth(total.is_zero(), || format!("sum of {n}-th roots is not zero"));
    }
    let mut rng = StdRng::seed_from_u64(12);
    for trial in 0..80 {
        let n = rng.random_range(2..=30usize);
        let f = CycField::new(n);
        let mut random = || {
            let coeffs: Vec<BigRational> = (0..f.degree())
                .map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=4)))
                .collect();
            f.from_coeffs(&coeffs)
        };
        let (x, y, z) = (random(), random(), random());
        c.eq(format!("trial {trial} assoc"), &(&(&x * &y) * &z), &(&x * &(&y * &z)));
        c.eq(format!("trial {trial} comm"), &(&x * &y), &(&y * &x));
        c.eq(format!("trial {trial} distrib"), &(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z)));
        if !x.is_zero() {
            if let Some(inv) = c.ok(format!("trial {trial} inverse"), x.inv()) {
                c.eq(format!("trial {trial} x x^-1"), &(&x * &inv), &f.one());
            }
        }
    }
}

fn dedekind_identities(ctx: &Ctx, c: &mut Checker) {
    let dr = ctx.dedekind;
    for k in 2..=60i64 {
        for h in 1..k {
            if num_integer::gcd(h, k) != 1 {
                continue;
            }
            let lhs = classical_with(dr, h, k) + classical_with(dr, k, h);
            let rhs = rat(-1, 4) + rat(h * h + k * k + 1, 12 * h * k);
            c.eq(format!("reciprocity ({h},{k})"), &lhs, &rhs);
        }
    }
    let mut rng = StdRng::seed_from_u64(13);
    for trial in 0..200 {
        let k = rng.random_range(1..=500i64);
        let h = loop {
            let h = rng.random_range(-600..=600i64);
            if num_integer::gcd(h, k) == 1 {
                break h;
            }
        };
        let x = rat(rng.random_range(-40..=40), rng.random_range(1..=12));
        let y = rat(rng.random_range(-40..=40), rng.random_range(1..=12));
        let a = DedekindArgs::new(h, k, x.clone(), y.clone()).expect("coprime");
        let fast = dr(&a);
        c.eq(format!("oracle trial {trial} {a:?}"), &fast, &dr_sum_direct(&a));
        let shifted = DedekindArgs::new(h, k, x.clone() + int(3), y.clone() - int(2)).expect("coprime");
        c.eq(format!("shift trial {trial}"), &dr(&shifted), &fast);
        if h > 0 && !(x.is_integer() && y.is_integer()) {
            let back = DedekindArgs::new(k, h, y.clone(), x.clone()).expect("coprime");
            let (hq, kq) = (int(h), int(k));
            let rhs = dedekind_symbol(&x) * dedekind_symbol(&y)
                + (&hq * &hq * psi2(&y) + psi2(&(&hq * &y + &kq * &x)) + &kq * &kq * psi2(&x)) / (int(2) * &hq * &kq);
            c.eq(format!("shifted reciprocity trial {trial}"), &(&fast + dr(&back)), &rhs);
        }
    }
    for k in 1..=30i64 {
        for _ in 0..10 {
            let w = rat(rng.random_range(-50..=50), rng.random_range(1..=9));
            let lhs = (0..k).fold(BigRational::zero(), |acc, mu| acc + dedekind_symbol(&((int(mu) + &w) / int(k))));
            c.eq(format!("Kubert k={k} w={w}"), &lhs, &dedekind_symbol(&w));
        }
    }
    for p in 2..=40i64 {
        for q in 1..p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            for t in [0, 1, p / 2] {
                if let Some(checks) = c.ok(format!("Fourier ({p},{q},{t})"), fourier_identity_suite_with(dr, p, q, t)) {
                    for id in checks {
                        c.eq(format!("Fourier {} ({p},{q},{t})", id.name), &id.lhs, &id.rhs);
                    }
                }
            }
        }
    }
}

/// Corpus entries with `|H| <= cap`, already resolved.
fn small_corpus(c: &mut Checker, cap: u64) -> Vec<(String, LatticeData, FinAbGroup)> {
    corpus::graph_corpus()
        .into_iter()
        .filter_map(|(name, g)| {
            let (l, h) = lattice_and_group(c, &name, &g)?;
            (h.order() <= cap).then_some((name, l, h))
        })
        .collect()
}

fn torsion_independence(_: &Ctx, c: &mut Checker) {
    for (name, l, h) in small_corpus(c, SWEEP_CAP) {
        let Some(engine) = c.ok(&name, TorsionEngine::new(&l, &h)) else { continue };
        for chi in h.characters(SWEEP_CAP).expect("within cap").skip(1) {
            let Some(reference) = c.ok(&name, engine.canonical_product(&chi)) else { continue };
            let exps = engine.exponents(&chi);
            for v in (0..l.len()).filter(|&v| engine.admissible(&exps, v)) {
                for scale in [1, 2, 3] {
                    let w = engine.weights(v).scaled(scale);
                    if let Some(p) = c.ok(&name, engine.regularized_product(&chi, &w)) {
                        c.truth(p == reference, || format!("{name}: {chi:?} base {v} scale {scale} differs"));
                    }
                }
            }
        }
    }
}

fn torsion_symmetry(_: &Ctx, c: &mut Checker) {
    for (name, l, h) in small_corpus(c, SWEEP_CAP) {
        let Some(engine) = c.ok(&name, TorsionEngine::new(&l, &h)) else { continue };
        let Some(products) = c.ok(&name, engine.all_products(SWEEP_CAP)) else { continue };
        let tables: Vec<_> = h
            .elements()
            .filter_map(|hs| c.ok(&name, table_from_products(&h, &products, &hs)))
            .collect();
        for (i, t) in tables.iter().enumerate() {
            let conj = &tables[h.index_of(&h.spinc_conjugate(&t.h_sigma))];
            for chi in h.characters(SWEEP_CAP).expect("within cap") {
                let ok = t.entry(&h, &chi) == conj.entry(&h, &h.conj(&chi));
                c.truth(ok, || format!("{name}: h_sigma #{i}, {chi:?}"));
            }
        }
    }
}

fn quadratic_identities(_: &Ctx, c: &mut Checker) {
    for (name, l, h) in small_corpus(c, IDENTITY_CAP) {
        let Some(engine) = c.ok(&name, TorsionEngine::new(&l, &h)) else { continue };
        let Some(products) = c.ok(&name, engine.all_products(IDENTITY_CAP)) else { continue };
        let f = torsion_function(&h, &products);
        c.truth(quadratic_identities_all(&h, &f), || format!("{name}: identities fail"));
    }
    let mut d4 = PlumbingGraph::chain(&[-2]);
    for _ in 0..3 {
        let v = d4.add_vertex(-2);
        d4.add_edge(0, v);
    }
    for (name, g) in [("A1", PlumbingGraph::chain(&[-2])), ("L(4,1)", PlumbingGraph::chain(&[-4])), ("D4", d4)] {
        let Some((l, h)) = lattice_and_group(c, name, &g) else { continue };
        let spincs: Vec<_> = if name == "L(4,1)" { h.elements().collect() } else { vec![h.zero()] };
        for hs in spincs {
            if let Some(ok) = c.ok(name, swiden_consistency(&l, &h, &hs, IDENTITY_CAP)) {
                c.truth(ok, || format!("{name}: identities fail at {hs:?}"));
            }
        }
    }
}

fn alexander_at_one(_: &Ctx, c: &mut Checker) {
    for (name, g) in corpus::graph_corpus() {
        let Some(l) = c.ok(&name, build_lattice(&g)) else { continue };
        for v in 0..l.len() {
            if let Some(ok) = c.ok(&name, delta_at_one_check(&l, v)) {
                c.truth(ok, || format!("{name}: Delta(1) != |H|/m at vertex {v}"));
            }
        }
    }
}

fn blowup_stability(_: &Ctx, c: &mut Checker) {
    let key = |r: &InvariantReport| {
        (r.order_h.clone(), r.k2_plus_nv.clone(), r.casson_walker.clone(), r.torsion_at_1.clone(), r.sw0.clone())
    };
    for (name, g) in corpus::graph_corpus() {
        let Some(base) = report(c, &name, &g) else { continue };
        if base.order_h > BigInt::from(SWEEP_CAP) {
            continue;
        }
        let mut variants = vec![blowup_vertex(&g, 0), blowup_vertex(&g, g.len() - 1)];
        if !g.edges.is_empty() {
            variants.push(blowup_edge(&g, 0));
            variants.push(blowup_edge(&g, g.edges.len() - 1));
        }
        for (i, b) in variants.iter().enumerate() {
            if let Some(r) = report(c, &format!("{name} blowup {i}"), b) {
                c.eq(format!("{name} blowup {i}"), &key(&r), &key(&base));
            }
        }
    }
}

fn quadratic_function(_: &Ctx, c: &mut Checker) {
    let mut rng = StdRng::seed_from_u64(14);
    for (name, l, h) in small_corpus(c, SWEEP_CAP) {
        c.eq(format!("{name} |H| = |det I|"), &BigInt::from(h.order()), &l.order());
        for v in 0..l.len() {
            let rel = (0..l.len()).fold(h.zero(), |acc, w| h.add(&acc, &h.scale(l.matrix()[(v, w)].clone().try_into().expect("small entry"), h.generator(w))));
            c.eq(format!("{name} relation at {v}"), &rel, &h.zero());
        }
        let elements: Vec<_> = h.elements().collect();
        for a in &elements {
            let nondegenerate = *a == h.zero() || elements.iter().any(|b| !h.linking_form(a, b).is_zero());
            c.truth(nondegenerate, || format!("{name}: b(a, .) vanishes for {a:?}"));
            c.eq(format!("{name} conjugation involution"), &h.spinc_conjugate(&h.spinc_conjugate(a)), a);
            for b in &elements {
                c.eq(format!("{name} b symmetric"), &h.linking_form(a, b), &h.linking_form(b, a));
                let law = frac(&(h.q_can(&h.add(a, b)) - h.q_can(a) - h.q_can(b) - h.linking_form(a, b)));
                c.truth(law.is_zero(), || format!("{name}: quadratic law fails at {a:?}, {b:?}"));
            }
            let mut d = h.lift(a);
            for _ in 0..2 {
                let v = rng.random_range(0..l.len());
                let k = rng.random_range(-3..=3i64);
                for (w, x) in d.iter_mut().enumerate() {
                    *x += &l.matrix()[(w, v)] * k;
                }
            }
            c.eq(format!("{name} lift class"), &h.class_of(&d), a);
            c.eq(format!("{name} lift independence"), &q_can_of_lift(&l, &d), &h.q_can(a));
            if l.numerically_gorenstein() {
                for n in 2..=3i64 {
                    let lhs = h.q_can(&h.scale(n, a));
                    c.truth(frac(&(lhs - h.q_can(a) * int(n * n))).is_zero(), || format!("{name}: q(nh) != n^2 q(h)"));
                }
            }
        }
    }
}

fn gauss_sum(_: &Ctx, c: &mut Checker) {
    for (name, l, h) in small_corpus(c, IDENTITY_CAP) {
        if let Some((got, want)) = c.ok(&name, gauss_sum_check(&l, &h, IDENTITY_CAP)) {
            c.truth((got - want).norm() < 1e-9, || format!("{name}: {got} vs {want}"));
        }
    }
}

/// Random valid Seifert data with `alpha_i <= 12` and three to five arms.
pub fn random_seifert(rng: &mut StdRng) -> SeifertData {
    loop {
        let nu = rng.random_range(3..=5usize);
        let arms: Vec<(i64, i64)> = (0..nu)
            .map(|_| loop {
                let a = rng.random_range(2..=12i64);
                let w = rng.random_range(1..a);
                if num_integer::gcd(a, w) == 1 {
                    break (a, w);
                }
            })
            .collect();
        let b = -rng.random_range(1..=nu as i64);
        if let Ok(s) = SeifertData::new(b, arms) {
            return s;
        }
    }
}

fn seifert_routes(ctx: &Ctx, c: &mut Checker) {
    let mut rng = StdRng::seed_from_u64(15);
    let data: Vec<SeifertData> = (0..40).map(|_| random_seifert(&mut rng)).collect();
    let compared = std::sync::atomic::AtomicUsize::new(0);
    let sub = par_check(&data, |s, c| {
        let label = format!("{s:?}");
        let star = star_graph(s);
        let Some((l, h)) = lattice_and_group(c, &label, &star.graph) else { return };
        c.eq(format!("{label} |H|"), &l.order(), &s.order_h());
        c.truth(int(s.b) <= s.e(), || format!("{label}: b > e"));
        c.eq(format!("{label} lambda"), &seifert_casson_walker_with(s, ctx.dedekind), &l.casson_walker());
        c.eq(format!("{label} K^2+#V"), &seifert_k2nv_with(s, ctx.dedekind), &l.k2_plus_nv());
        if h.order() > ROUTE_CAP {
            return;
        }
        let Some(engine) = c.ok(&label, TorsionEngine::new(&l, &h)) else { return };
        let Some(t) = c.ok(&label, engine.torsion_at_one(&h.zero(), u64::MAX)) else { return };
        if let Some(short) = c.ok(&label, seifert_torsion_shortcut(s, &star, &h, &h.zero(), u64::MAX)) {
            c.eq(format!("{label} shortcut"), &short, &t);
        }
        let ks = ks_route_with(s, ctx.dedekind);
        if let Some(sw) = ks.sw0_ks {
            c.eq(format!("{label} KS sw0"), &sw, &(&t - l.casson_walker_over_order()));
            compared.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
    });
    *c = std::mem::take(c).merge(sub);
    let n = compared.into_inner();
    c.truth(n >= ROUTE_MIN_COMPARISONS, || format!("only {n} KS comparisons against the pipeline"));
}

fn nonnegativity(_: &Ctx, c: &mut Checker) {
    let mut graphs = corpus::graph_corpus();
    for a in corpus::POLYGONAL_SETS {
        graphs.push((format!("polygonal {a:?}"), star_graph(&corpus::polygonal(a)).graph));
    }
    for m in [5, 7, 8] {
        graphs.push((format!("rational m={m}"), star_graph(&corpus::rational_family(m)).graph));
    }
    let sub = par_check(&graphs, |(name, g), c| {
        if let Some(r) = report(c, name, g) {
            c.truth(!r.conjecture_gap.is_negative(), || format!("{name}: gap {}", r.conjecture_gap));
        }
    });
    *c = std::mem::take(c).merge(sub);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_names_are_unique_and_cover_all_criteria() {
        let f = fixtures();
        let mut names: Vec<_> = f.iter().map(|x| x.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), f.len());
        assert!(f.len() >= 12);
        for k in 1..=11 {
            assert!(f.iter().any(|x| x.criterion == k), "criterion {k}");
        }
    }

    #[test]
    fn mutant_is_caught() {
        let ctx = Ctx { dedekind: mutant_dedekind };
        let f = fixtures().into_iter().find(|f| f.name == "dedekind-identities").unwrap();
        assert!(!f.run(&ctx).passed());
    }
}
