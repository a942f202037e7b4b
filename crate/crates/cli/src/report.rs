//! Run reports: every subcommand produces one value tree that renders
//! either as indented json (keys sorted by the serializer) or as flat
//! `path: value` text lines. Exact numbers are carried as canonical
//! strings — integers as decimal, rationals as `p/q` — never as floats.

use std::fmt::Write as _;

use concordance_core::laurent::LaurentPolynomial;
use concordance_core::matrix::{Dominance, Inertia};
use concordance_core::scalar::{format_rational, Int, Rational};
use serde_json::{json, Map, Value};

pub fn int_value(v: &Int) -> Value {
    Value::String(v.to_string())
}

pub fn rational_value(v: &Rational) -> Value {
    Value::String(format_rational(v))
}

pub fn poly_value(p: &LaurentPolynomial) -> Value {
    Value::String(p.to_string())
}

pub fn inertia_value(v: &Inertia) -> Value {
    json!({
        "positive": v.positive,
        "negative": v.negative,
        "zero": v.zero,
    })
}

pub fn dominance_value(v: &Dominance) -> Value {
    Value::String(v.to_string())
}

/// Report of one CLI run; rendered to stdout in text or json mode.
#[derive(Debug, Clone)]
pub struct RunReport {
    subcommand: String,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
}

impl RunReport {
    pub fn new(subcommand: impl Into<String>) -> Self {
        RunReport {
            subcommand: subcommand.into(),
            inputs: Map::new(),
            results: Map::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn result(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.results.insert(key.to_owned(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "subcommand": self.subcommand,
            "inputs": Value::Object(self.inputs.clone()),
            "results": Value::Object(self.results.clone()),
            "status": "ok",
        })
    }

    pub fn render(&self, json_mode: bool) -> String {
        if json_mode {
            let mut out =
                serde_json::to_string_pretty(&self.to_value()).expect("serializable value tree");
            out.push('\n');
            return out;
        }
        let mut out = String::new();
        writeln!(out, "subcommand: {}", self.subcommand).expect("write to string");
        flatten("inputs", &Value::Object(self.inputs.clone()), &mut out);
        flatten("results", &Value::Object(self.results.clone()), &mut out);
        writeln!(out, "status: ok").expect("write to string");
        out
    }
}

/// `path.key: value` / `path[i]: value` lines for the text mode.
fn flatten(path: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                flatten(&format!("{path}.{key}"), inner, out);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), inner, out);
            }
        }
        Value::String(s) => {
            writeln!(out, "{path}: {s}").expect("write to string");
        }
        scalar => {
            writeln!(out, "{path}: {scalar}").expect("write to string");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use concordance_core::laurent::Var;
    use concordance_core::scalar::rat;

    #[test]
    fn text_mode_flattens_deterministically() {
        let report = RunReport::new("demo")
            .input("n", 5)
            .result("det", int_value(&Int::from(121)))
            .result(
                "pair",
                json!({"b": rational_value(&rat(-1, 2)), "a": [1, 2]}),
            );
        let text = report.render(false);
        let expected = "subcommand: demo\ninputs.n: 5\nresults.det: 121\n\
                        results.pair.a[0]: 1\nresults.pair.a[1]: 2\n\
                        results.pair.b: -1/2\nstatus: ok\n";
        assert_eq!(text, expected);
        assert_eq!(report.render(false), text);
    }

    #[test]
    fn json_mode_sorts_keys_and_is_stable() {
        let report = RunReport::new("demo")
            .result("zeta", 1)
            .result("alpha", true);
        let json = report.render(true);
        let alpha = json.find("\"alpha\"").unwrap();
        let zeta = json.find("\"zeta\"").unwrap();
        assert!(alpha < zeta);
        assert!(json.ends_with('\n'));
        assert_eq!(report.render(true), json);
    }

    #[test]
    fn value_helpers_use_canonical_strings() {
        assert_eq!(int_value(&Int::from(-7)), Value::String("-7".into()));
        assert_eq!(rational_value(&rat(99, 2)), Value::String("99/2".into()));
        assert_eq!(
            poly_value(&LaurentPolynomial::from_int_terms(
                Var::T,
                &[(-1, -1), (0, 3), (1, -1)]
            )),
            Value::String("-t^-1 + 3 - t".into())
        );
    }
}
