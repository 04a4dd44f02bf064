//! The full invariant report of one plumbed manifold, with a JSON form in
//! which every rational is a `{"num": .., "den": ..}` pair of exact integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::exact::rational::int;
use crate::homology::{homology_from_lattice, DEFAULT_ORDER_CAP};
use crate::plumbing::{build_lattice, PlumbingGraph};
use crate::torsion::{torsion_function, TorsionEngine};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpincEntry {
    /// Offset `h_sigma` with `sigma = h_sigma . sigma_can`, in invariant-factor coordinates.
    pub h_sigma: Vec<u64>,
    #[serde(with = "json_rational")]
    pub torsion_at_1: BigRational,
    #[serde(with = "json_rational")]
    pub sw0: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    #[serde(with = "json_integer")]
    pub order_h: BigInt,
    pub invariant_factors: Vec<u64>,
    #[serde(with = "json_rational")]
    pub k2_plus_nv: BigRational,
    #[serde(with = "json_rational")]
    pub casson_walker: BigRational,
    #[serde(with = "json_rational")]
    pub torsion_at_1: BigRational,
    #[serde(with = "json_rational")]
    pub sw0: BigRational,
    #[serde(with = "json_rational")]
    pub conjecture_gap: BigRational,
    pub numerically_gorenstein: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spinc_table: Option<Vec<SpincEntry>>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub max_order: u64,
    pub all_spinc: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_order: DEFAULT_ORDER_CAP,
            all_spinc: false,
        }
    }
}

pub fn analyze(g: &PlumbingGraph, opts: &AnalysisOptions) -> Result<InvariantReport> {
    let l = build_lattice(g)?;
    let h = homology_from_lattice(&l)?;
    let engine = TorsionEngine::new(&l, &h)?;
    let torsion_at_1 = engine.torsion_at_one(&h.zero(), opts.max_order)?;
    let cw_over_h = l.casson_walker_over_order();
    let sw0 = &torsion_at_1 - &cw_over_h;
    let k2 = l.k2_plus_nv();
    let conjecture_gap = &sw0 - &k2 / int(8);
    let spinc_table = if opts.all_spinc {
        let products = engine.all_products(opts.max_order)?;
        let f = torsion_function(&h, &products);
        let table: Vec<SpincEntry> = h
            .elements()
            .map(|hs| {
                let t = f[h.index_of(&h.neg(&hs))].clone();
                SpincEntry {
                    h_sigma: hs.0,
                    sw0: &t - &cw_over_h,
                    torsion_at_1: t,
                }
            })
            .collect();
        assert_eq!(table[0].torsion_at_1, torsion_at_1, "two torsion evaluations disagree");
        Some(table)
    } else {
        None
    };
    Ok(InvariantReport {
        order_h: l.order(),
        invariant_factors: h.factors().to_vec(),
        k2_plus_nv: k2,
        casson_walker: l.casson_walker(),
        torsion_at_1,
        sw0,
        conjecture_gap,
        numerically_gorenstein: l.numerically_gorenstein(),
        spinc_table,
    })
}

fn number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integers are JSON numbers")
}

fn parse_integer<E: serde::de::Error>(n: &serde_json::Number) -> std::result::Result<BigInt, E> {
    n.to_string()
        .parse()
        .map_err(|_| E::custom(format!("{n} is not an integer")))
}

pub mod json_integer {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        number(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        parse_integer(&serde_json::Number::deserialize(d)?)
    }
}

pub mod json_rational {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Pair {
        num: serde_json::Number,
        den: serde_json::Number,
    }

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        Pair {
            num: number(x.numer()),
            den: number(x.denom()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let p = Pair::deserialize(d)?;
        let num = parse_integer(&p.num)?;
        let den: BigInt = parse_integer(&p.den)?;
        if den <= BigInt::from(0) {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(BigRational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn a1_report_round_trips() {
        let opts = AnalysisOptions {
            all_spinc: true,
            ..Default::default()
        };
        let r = analyze(&PlumbingGraph::chain(&[-2]), &opts).unwrap();
        assert_eq!(r.sw0, rat(1, 8));
        assert_eq!(r.conjecture_gap, rat(0, 1));
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains(r#""sw0":{"num":1,"den":8}"#), "{text}");
        let back: InvariantReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
