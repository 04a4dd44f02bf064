//! Table and JSON rendering. Rationals are printed exactly, never as floats.

use std::fmt::Write;

use num_rational::BigRational;
use serde_json::{json, Value};

use plumbsw::dedekind::DedekindArgs;
use plumbsw::report::InvariantReport;
use plumbsw::seifert::SeifertData;
use plumbsw::verify::{Fixture, FixtureResult};

use crate::Format;

/// One route cross-check. `matches` is `None` when the route does not apply.
pub struct Check {
    pub name: String,
    pub matches: Option<bool>,
    pub detail: String,
}

impl Check {
    pub fn equal<T: PartialEq + std::fmt::Display>(name: &str, got: &T, want: &T) -> Check {
        Check {
            name: name.into(),
            matches: Some(got == want),
            detail: if got == want { got.to_string() } else { format!("{got} vs {want}") },
        }
    }

    pub fn not_applicable(name: &str, why: &str) -> Check {
        Check {
            name: name.into(),
            matches: None,
            detail: why.into(),
        }
    }

    fn status(&self) -> &'static str {
        match self.matches {
            Some(true) => "MATCH",
            Some(false) => "MISMATCH",
            None => "NOT APPLICABLE",
        }
    }

    fn line(&self) -> String {
        format!("{:<15}{:<36}{}\n", self.status(), self.name, self.detail)
    }

    fn json(&self) -> Value {
        json!({ "name": self.name, "status": self.status(), "detail": self.detail })
    }
}

pub struct Output {
    pub report: InvariantReport,
    pub extras: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Output {
    pub fn new(report: InvariantReport) -> Output {
        Output {
            report,
            extras: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let extras: serde_json::Map<String, Value> =
                    self.extras.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                let doc = json!({
                    "report": self.report,
                    "extras": extras,
                    "checks": self.checks.iter().map(Check::json).collect::<Vec<_>>(),
                });
                pretty(&doc)
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        let mut row = |k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k:<28}{v}").unwrap();
        row("|H|", &r.order_h);
        row("invariant factors", &format!("{:?}", r.invariant_factors));
        row("K^2+#V", &r.k2_plus_nv);
        row("Casson-Walker lambda", &r.casson_walker);
        row("T(1)", &r.torsion_at_1);
        row("sw0(sigma_can)", &r.sw0);
        row("conjecture gap", &r.conjecture_gap);
        row("numerically Gorenstein", &if r.numerically_gorenstein { "yes" } else { "no" });
        for (k, v) in &self.extras {
            row(k, v);
        }
        if let Some(table) = &r.spinc_table {
            writeln!(out, "\n{:<20}{:<24}sw0", "h_sigma", "T(1)").unwrap();
            for e in table {
                let hs = format!("{:?}", e.h_sigma);
                writeln!(out, "{hs:<20}{:<24}{}", e.torsion_at_1.to_string(), e.sw0).unwrap();
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for c in &self.checks {
                out += &c.line();
            }
        }
        out
    }
}

pub fn seifert_text(s: &SeifertData) -> String {
    let arms: Vec<String> = s.arms.iter().map(|(a, w)| format!("({a},{w})")).collect();
    format!("({}; {})", s.b, arms.join(", "))
}

pub fn dedekind(format: Format, a: &DedekindArgs, value: &BigRational, direct: Option<Check>) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "h": a.h.to_string(),
                "k": a.k.to_string(),
                "x": a.x.to_string(),
                "y": a.y.to_string(),
                "value": { "num": number(value.numer()), "den": number(value.denom()) },
                "checks": direct.iter().map(Check::json).collect::<Vec<_>>(),
            });
            pretty(&doc)
        }
        Format::Table => {
            let mut out = format!("s({}, {}; {}, {}) = {value}\n", a.h, a.k, a.x, a.y);
            if let Some(c) = direct {
                out += &c.line();
            }
            out
        }
    }
}

fn pretty(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("serializable") + "\n"
}

fn number(x: &num_bigint::BigInt) -> serde_json::Number {
    x.to_string().parse().expect("integers are JSON numbers")
}

pub fn fixture_list(format: Format, fixtures: &[Fixture]) -> String {
    match format {
        Format::Json => {
            let doc = Value::Array(fixtures
                .iter()
                .map(|f| json!({ "name": f.name, "criterion": f.criterion, "summary": f.summary }))
                .collect());
            pretty(&doc)
        }
        Format::Table => fixtures
            .iter()
            .map(|f| format!("{:<24}{:>3}  {}\n", f.name, f.criterion, f.summary))
            .collect(),
    }
}

/// One line per fixture, plus whether all passed.
pub fn verify(format: Format, results: &[FixtureResult]) -> (String, bool) {
    let passed = results.iter().filter(|r| r.outcome.passed()).count();
    let text = match format {
        Format::Json => {
            let doc = Value::Array(results
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "criterion": r.criterion,
                        "passed": r.outcome.passed(),
                        "checks": r.outcome.checks,
                        "failures": r.outcome.failures,
                    })
                })
                .collect());
            pretty(&doc)
        }
        Format::Table => {
            let mut out = String::new();
            for r in results {
                let status = if r.outcome.passed() { "PASS" } else { "FAIL" };
                let (name, k, n) = (r.name, r.criterion, r.outcome.checks);
                writeln!(out, "{status}  {name:<24}criterion {k:>2}  {n} checks").unwrap();
                for f in r.outcome.failures.iter().take(10) {
                    writeln!(out, "      {f}").unwrap();
                }
            }
            writeln!(out, "{passed}/{} fixture families passed", results.len()).unwrap();
            out
        }
    };
    (text, passed == results.len())
}
