//! Batch verification over generated instances.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chain::{blockwise_group_inverse, graph_group_inverse, mu_table, mu_table_with, ChainSearch};
use crate::classify::{check_symmetric_closure, classify_closure, DigraphClass};
use crate::digraph::{analyze_structure, build_digraph};
use crate::error::{Error, Result};
use crate::generate::{generate, Family, GenParams, Instance};
use crate::identities::{matching_structure_violations, verify_formula_identities};
use crate::matching::maximum_matchings_class_d;
use crate::matrix::RMatrix;
use crate::oracle::{group_inverse_oracle, verify_group_axioms};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub family: Family,
    pub count: u64,
    pub seed: u64,
    pub params: GenParams,
    /// Also walk every simple path looking for alternating chains.
    pub exhaustive_chains: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub index: u64,
    pub check: String,
    pub detail: String,
    /// Reproducer in the matrix text format, provenance line included.
    pub matrix: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub config: SweepConfig,
    pub instances: u64,
    pub checks: BTreeMap<String, Tally>,
    pub input_classes: BTreeMap<String, u64>,
    pub output_classes: BTreeMap<String, u64>,
    pub failures: Vec<FailureRecord>,
}

impl SweepReport {
    pub fn failure_count(&self) -> u64 {
        self.checks.values().map(|t| t.failed).sum()
    }
}

/// Named check results for one instance; `Err` carries a description.
#[derive(Debug, Clone, Default)]
pub struct InstanceOutcome {
    pub checks: Vec<(&'static str, std::result::Result<(), String>)>,
    pub input_class: Option<DigraphClass>,
    pub output_class: Option<DigraphClass>,
}

impl InstanceOutcome {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks.push((name, if ok { Ok(()) } else { Err(detail()) }));
    }

    fn record_result<T>(&mut self, name: &'static str, r: &Result<T>) {
        self.checks.push((name, r.as_ref().map(|_| ()).map_err(|e| e.to_string())));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, r)| r.is_ok())
    }
}

/// Every check for an instance with `Δ_A ≠ 0`.
pub fn check_invertible_instance(a: &RMatrix, exhaustive_chains: bool) -> InstanceOutcome {
    let mut out = InstanceOutcome::default();
    let input = build_digraph(a).map(|d| analyze_structure(&d));
    out.input_class = input.as_ref().ok().map(DigraphClass::of);

    let graph = graph_group_inverse(a);
    let block = blockwise_group_inverse(a);
    let oracle = group_inverse_oracle(a);
    out.record_result("graph_formula", &graph);
    out.record_result("blockwise", &block);
    out.record_result("oracle", &oracle);
    let (Ok(graph), Ok(block), Ok(oracle)) = (graph, block, oracle) else {
        return out;
    };
    out.record("triple_agreement", graph == block && block == oracle, || {
        format!("graph==block: {}, block==oracle: {}", graph == block, block == oracle)
    });

    match verify_group_axioms(a, &graph) {
        Ok(v) => out.record("group_axioms", v.all_hold(), || format!("{v:?}")),
        Err(e) => out.record("group_axioms", false, || e.to_string()),
    }
    match verify_formula_identities(a) {
        Ok(r) => out.record("formula_identities", r.all_hold(), || format!("{r:?}")),
        Err(e) => out.record("formula_identities", false, || e.to_string()),
    }
    match matching_structure_violations(a) {
        Ok(v) => out.record("matching_structure", v.is_empty(), || v.join("; ")),
        Err(e) => out.record("matching_structure", false, || e.to_string()),
    }
    if exhaustive_chains {
        let exhaustive = maximum_matchings_class_d(a)
            .and_then(|fam| mu_table_with(a, &fam, ChainSearch::Exhaustive));
        match (exhaustive, mu_table(a)) {
            (Ok(x), Ok(r)) => out.record("chain_structure", x == r, || "exhaustive and restricted μ tables differ".into()),
            (Err(e), _) | (_, Err(e)) => out.record("chain_structure", false, || e.to_string()),
        }
    }

    match classify_closure(a) {
        Ok(v) => {
            out.output_class = Some(v.actual_output_class);
            out.record("closure_prediction", v.prediction_holds(), || format!("{v:?}"));
            match v.input_class {
                DigraphClass::Star => out.record(
                    "star_preserved",
                    v.actual_output_class == DigraphClass::Star
                        && v.output_star_center == v.input_star_center
                        && v.same_pattern,
                    || format!("{v:?}"),
                ),
                DigraphClass::Corona => {
                    let inverse = a.inverse().ok().flatten();
                    out.record(
                        "corona_preserved",
                        v.actual_output_class == DigraphClass::Corona && inverse.as_ref() == Some(&graph),
                        || format!("{v:?}, nonsingular: {}", inverse.is_some()),
                    )
                }
                _ => {}
            }
        }
        Err(e) => out.record("closure_prediction", false, || e.to_string()),
    }
    match check_symmetric_closure(a) {
        Ok(ok) => out.record("symmetric_closure", ok, || "D(A#) not strongly connected simple symmetric".into()),
        Err(e) => out.record("symmetric_closure", false, || e.to_string()),
    }
    out
}

/// Checks for an instance built with `Δ_A = 0`: no group inverse by rank,
/// by the oracle and by both formula routes.
pub fn check_singular_instance(a: &RMatrix) -> InstanceOutcome {
    let mut out = InstanceOutcome {
        input_class: build_digraph(a).ok().map(|d| DigraphClass::of(&analyze_structure(&d))),
        ..Default::default()
    };
    let sq = a.mul(a).expect("square");
    out.record("rank_drop", a.rank() != sq.rank(), || format!("rank(A) = rank(A²) = {}", a.rank()));
    let refused = |r: Result<RMatrix>, need_hub: bool| match r {
        Err(Error::NoGroupInverse { vanishing }) => !need_hub || !vanishing.is_empty(),
        _ => false,
    };
    out.record("oracle_refuses", refused(group_inverse_oracle(a), false), || "oracle returned a matrix".into());
    out.record("graph_formula_refuses", refused(graph_group_inverse(a), true), || {
        "graph formula did not report a vanishing hub".into()
    });
    out.record("blockwise_refuses", refused(blockwise_group_inverse(a), true), || {
        "blockwise formula did not report a vanishing hub".into()
    });
    out
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut report = SweepReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        instances: 0,
        checks: BTreeMap::new(),
        input_classes: BTreeMap::new(),
        output_classes: BTreeMap::new(),
        failures: Vec::new(),
    };
    for index in 0..config.count {
        let inst: Instance = generate(config.family, config.seed, index, &config.params)?;
        let outcome = if config.family == Family::ZeroDelta {
            check_singular_instance(&inst.matrix)
        } else {
            check_invertible_instance(&inst.matrix, config.exhaustive_chains)
        };
        report.instances += 1;
        if let Some(c) = outcome.input_class {
            *report.input_classes.entry(c.as_str().to_string()).or_default() += 1;
        }
        if let Some(c) = outcome.output_class {
            *report.output_classes.entry(c.as_str().to_string()).or_default() += 1;
        }
        for (name, result) in outcome.checks {
            let tally = report.checks.entry(name.to_string()).or_default();
            match result {
                Ok(()) => tally.passed += 1,
                Err(detail) => {
                    tally.failed += 1;
                    report.failures.push(FailureRecord {
                        index,
                        check: name.to_string(),
                        detail,
                        matrix: inst.to_text(),
                    });
                }
            }
        }
    }
    Ok(report)
}
