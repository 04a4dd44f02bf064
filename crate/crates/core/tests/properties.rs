//! Property tests for the structural invariants of each layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use plumbsw::dedekind::{dedekind_sum, dr_sum, dr_sum_direct, DedekindArgs};
use plumbsw::exact::rational::rat;
use plumbsw::exact::{smith_normal_form, CycField, IntMatrix};
use plumbsw::homology::homology_from_lattice;
use plumbsw::plumbing::{blowup_edge, blowup_vertex, build_lattice, PlumbingGraph};
use plumbsw::report::{analyze, AnalysisOptions, InvariantReport};
use plumbsw::seifert::{
    lens_chain, seifert_casson_walker_with, seifert_k2nv_with, star_graph, SeifertData,
};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i64..=6, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

fn coprime_pair(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |&(p, q)| num_integer::gcd(p, q) == 1)
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-60i64..=60, 1i64..=15).prop_map(|(n, d)| rat(n, d))
}

fn seifert_data() -> impl Strategy<Value = SeifertData> {
    let arm = (2i64..=12)
        .prop_flat_map(|a| (Just(a), 1..a))
        .prop_filter("coprime", |&(a, w)| num_integer::gcd(a, w) == 1);
    (proptest::collection::vec(arm, 3..=5), 1i64..=5)
        .prop_filter_map("e < 0", |(arms, b)| SeifertData::new(-b, arms).ok())
}

fn key(r: &InvariantReport) -> [BigRational; 5] {
    [
        BigRational::from_integer(r.order_h.clone()),
        r.k2_plus_nv.clone(),
        r.casson_walker.clone(),
        r.torsion_at_1.clone(),
        r.sw0.clone(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_valid_decomposition(a in small_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        let diag: Vec<BigInt> = s.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
        prop_assert!(diag.iter().all(|d| d.is_positive()));
        prop_assert!(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn cyclotomic_ring_laws(n in 2usize..=24, c in proptest::collection::vec(-5i64..=5, 72)) {
        let f = CycField::new(n);
        let d = f.degree();
        let elt = |k: usize| f.from_coeffs(&c[k * d..(k + 1) * d].iter().map(|&x| rat(x, 1)).collect::<Vec<_>>());
        let (x, y, z) = (elt(0), elt(1), elt(2));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn dedekind_fast_path_matches_direct_sum(
        (h, k) in (1i64..=200).prop_flat_map(|k| (-300i64..=300, Just(k)))
            .prop_filter("coprime", |&(h, k)| num_integer::gcd(h, k) == 1),
        x in small_rational(),
        y in small_rational(),
    ) {
        let a = DedekindArgs::new(h, k, x, y).unwrap();
        prop_assert_eq!(dr_sum(&a), dr_sum_direct(&a));
    }

    #[test]
    fn dedekind_sum_depends_on_shifts_mod_one(
        (q, p) in coprime_pair(80).prop_map(|(p, q)| (q, p)),
        x in small_rational(),
        y in small_rational(),
        dx in -4i64..=4,
        dy in -4i64..=4,
    ) {
        let a = DedekindArgs::new(q, p, x.clone(), y.clone()).unwrap();
        let b = DedekindArgs::new(q, p, x + rat(dx, 1), y + rat(dy, 1)).unwrap();
        prop_assert_eq!(dr_sum(&a), dr_sum(&b));
    }

    #[test]
    fn classical_reciprocity((k, h) in coprime_pair(500)) {
        let lhs = dedekind_sum(h, k) + dedekind_sum(k, h);
        prop_assert_eq!(lhs, rat(-1, 4) + rat(h * h + k * k + 1, 12 * h * k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seifert_closed_forms_match_plumbing(s in seifert_data()) {
        let star = star_graph(&s);
        let l = build_lattice(&star.graph).unwrap();
        prop_assert_eq!(l.order(), s.order_h());
        prop_assert!(BigRational::from_integer(BigInt::from(s.b)) <= s.e());
        prop_assert!(s.e().is_negative());
        prop_assert_eq!(seifert_casson_walker_with(&s, dr_sum), l.casson_walker());
        prop_assert_eq!(seifert_k2nv_with(&s, dr_sum), l.k2_plus_nv());
        prop_assert_eq!(l.k2_plus_nv(), l.k2_plus_nv_naive());
    }

    #[test]
    fn lens_report_identities_and_blowup_stability((p, q) in coprime_pair(40), v in 0usize..8) {
        let g = lens_chain(p, q).unwrap();
        let r = analyze(&g, &AnalysisOptions::default()).unwrap();
        let order = BigRational::from_integer(r.order_h.clone());
        prop_assert_eq!(&r.sw0, &(&r.torsion_at_1 - &r.casson_walker / &order));
        prop_assert_eq!(&r.conjecture_gap, &(&r.sw0 - &r.k2_plus_nv / rat(8, 1)));
        prop_assert_eq!(r.casson_walker.clone(), rat(p, 1) * dedekind_sum(q, p) / rat(2, 1));
        let at = v % g.len();
        let blown = analyze(&blowup_vertex(&g, at), &AnalysisOptions::default()).unwrap();
        prop_assert_eq!(key(&blown), key(&r));
        if !g.edges.is_empty() {
            let e = analyze(&blowup_edge(&g, v % g.edges.len()), &AnalysisOptions::default()).unwrap();
            prop_assert_eq!(key(&e), key(&r));
        }
    }

    #[test]
    fn report_json_round_trips((p, q) in coprime_pair(30)) {
        let opts = AnalysisOptions { all_spinc: true, ..Default::default() };
        let r = analyze(&lens_chain(p, q).unwrap(), &opts).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: InvariantReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn group_order_is_determinant((p, q) in coprime_pair(60)) {
        let l = build_lattice(&lens_chain(p, q).unwrap()).unwrap();
        let h = homology_from_lattice(&l).unwrap();
        prop_assert_eq!(BigInt::from(h.order()), l.order());
        prop_assert_eq!(l.order(), BigInt::from(p));
    }
}

#[test]
fn graph_json_round_trips() {
    let g = PlumbingGraph::chain(&[-2, -3, -5]);
    let back = PlumbingGraph::from_json(&g.to_json()).unwrap();
    assert_eq!(back.to_json(), g.to_json());
}
