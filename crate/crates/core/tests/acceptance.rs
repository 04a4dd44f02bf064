//! One pass/fail line per acceptance criterion. Exits non-zero on any failure.

use std::collections::BTreeMap;

use plumbsw::verify::{run_all, Ctx};

const CRITERIA: [&str; 11] = [
    "lens spaces: torsion, Casson-Walker and K^2+#V closed forms",
    "A_n chains: sw0 = (p-1)/8",
    "D_n: 8 sw0 = n by torsion and KS routes",
    "E6, E7, E8 values and Gorenstein identity",
    "rational family m in {2,4,5,7,8}",
    "rational family m = 3",
    "polygonal graphs",
    "non-star triple cover",
    "Brieskorn-Hamm closed forms",
    "internal consistency suites",
    "nonnegativity of the conjecture gap",
];

fn main() {
    let results = run_all(&Ctx::default());
    let mut by_criterion: BTreeMap<u8, Vec<_>> = BTreeMap::new();
    for r in &results {
        by_criterion.entry(r.criterion).or_default().push(r);
    }
    let mut all_pass = true;
    for (i, title) in CRITERIA.iter().enumerate() {
        let k = i as u8 + 1;
        let group = by_criterion.get(&k).map(Vec::as_slice).unwrap_or(&[]);
        let pass = !group.is_empty() && group.iter().all(|r| r.outcome.passed());
        let checks: usize = group.iter().map(|r| r.outcome.checks).sum();
        all_pass &= pass;
        println!(
            "criterion {k:>2} {}  {title} ({checks} checks)",
            if pass { "PASS" } else { "FAIL" }
        );
        for r in group {
            for f in r.outcome.failures.iter().take(5) {
                println!("      {}: {f}", r.name);
            }
        }
    }
    if !all_pass {
        std::process::exit(1);
    }
}
