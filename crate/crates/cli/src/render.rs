//! Text and JSON renderings of reports.

use std::fmt::Write as _;
use std::io::Write as _;

use groupinv_core::chain::MuTable;
use groupinv_core::{format_rational, AxiomVerdict, ClassViolation, Error, MatchingFamily, RMatrix, Rational, StructureReport};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Method;

pub const SCHEMA_VERSION: u32 = 1;

/// Writes to stdout, ignoring a closed pipe so `groupinv ... | head` exits quietly.
pub fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

pub fn emit_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("serializable") + "\n"));
}

/// Emits a report object with a `schema_version` field added.
pub fn emit_versioned<T: Serialize>(value: &T) {
    let mut obj = serde_json::Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    if let Value::Object(fields) = serde_json::to_value(value).expect("serializable") {
        obj.extend(fields);
    }
    emit_json(&obj);
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "error": e.kind(), "message": e.to_string() });
    match e {
        Error::ClassViolation(reason) => v["reason"] = json!(reason),
        Error::NoGroupInverse { vanishing } => v["vanishing_hubs"] = json!(vanishing),
        _ => {}
    }
    v
}

fn list(vs: &[usize]) -> String {
    let items: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

pub fn structure_text(r: &StructureReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "simple_symmetric: {}", r.simple_symmetric);
    let _ = writeln!(s, "strongly_connected: {}", r.strongly_connected);
    let _ = writeln!(s, "two_cycles: {}", r.two_cycles);
    let _ = writeln!(s, "pendant_set: {}", list(&r.pendant_set));
    let _ = writeln!(s, "nonpendant_set: {}", list(&r.nonpendant_set));
    for g in &r.pendant_neighbors {
        let _ = writeln!(s, "  pendants of {}: {}", g.vertex, list(&g.pendants));
    }
    let _ = writeln!(s, "in_class_d: {}", r.in_class_d);
    let _ = writeln!(s, "is_corona: {}", r.is_corona);
    let _ = writeln!(s, "is_star: {}", r.is_star);
    s
}

pub fn matchings_text(fam: &MatchingFamily) -> String {
    let mut s = String::new();
    for m in &fam.matchings {
        let _ = writeln!(s, "{}", m.describe());
    }
    let _ = writeln!(s, "Delta={}", format_rational(&fam.delta));
    s
}

pub fn axioms_json(v: &AxiomVerdict) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "axa_eq_a": v.axa_eq_a,
        "xax_eq_x": v.xax_eq_x,
        "ax_eq_xa": v.ax_eq_xa,
        "all_hold": v.all_hold(),
    })
}

pub fn axioms_text(v: &AxiomVerdict) -> String {
    format!(
        "AXA=A: {}\nXAX=X: {}\nAX=XA: {}\nall_hold: {}\n",
        v.axa_eq_a,
        v.xax_eq_x,
        v.ax_eq_xa,
        v.all_hold()
    )
}

#[derive(Serialize)]
pub struct MuEntryJson {
    i: usize,
    j: usize,
    chain: Vec<usize>,
    length: usize,
    path_product: String,
    beta: String,
    outside_sum: String,
    mu: String,
    /// 1-based positions in the matching list.
    matchings: Vec<usize>,
}

#[derive(Serialize)]
pub struct GinvReport {
    schema_version: u32,
    method: &'static str,
    methods_run: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula_skipped: Option<ClassViolation>,
    pub agree: bool,
    delta: Option<String>,
    group_inverse: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<Vec<MuEntryJson>>,
    #[serde(skip)]
    matrix: RMatrix,
}

impl GinvReport {
    pub fn new(
        method: Method,
        results: Vec<(&'static str, RMatrix)>,
        skipped: Option<ClassViolation>,
        delta: Option<Rational>,
        mu: Option<MuTable>,
    ) -> Self {
        let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
        let matrix = results[0].1.clone();
        let mu = mu.map(|t| {
            t.chains
                .iter()
                .map(|e| MuEntryJson {
                    i: e.i,
                    j: e.j,
                    chain: e.chain.vertices.clone(),
                    length: e.chain.length,
                    path_product: format_rational(&e.chain.path_product),
                    beta: format_rational(&e.beta),
                    outside_sum: format_rational(&e.outside_sum),
                    mu: format_rational(&e.mu),
                    matchings: e.matchings.iter().map(|k| k + 1).collect(),
                })
                .collect()
        });
        GinvReport {
            schema_version: SCHEMA_VERSION,
            method: match method {
                Method::Graph => "graph",
                Method::Block => "block",
                Method::Oracle => "oracle",
                Method::All => "all",
            },
            methods_run: results.iter().map(|(name, _)| *name).collect(),
            formula_skipped: skipped,
            agree,
            delta: delta.as_ref().map(format_rational),
            group_inverse: matrix.to_string_rows(),
            mu,
            matrix,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# methods: {}", self.methods_run.join(", "));
        if let Some(v) = self.formula_skipped {
            let _ = writeln!(s, "# formula skipped: {v}");
        }
        if self.methods_run.len() > 1 {
            let _ = writeln!(s, "# agree: {}", self.agree);
        }
        if let Some(d) = &self.delta {
            let _ = writeln!(s, "# Delta={d}");
        }
        if let Some(mu) = &self.mu {
            for e in mu {
                let chain: Vec<String> = e.chain.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    s,
                    "# mu({},{})={} chain={} P={} beta={} outside_sum={} matchings={}",
                    e.i,
                    e.j,
                    e.mu,
                    chain.join("-"),
                    e.path_product,
                    e.beta,
                    e.outside_sum,
                    list(&e.matchings)
                );
            }
        }
        s.push_str(&self.matrix.to_text());
        s
    }
}
