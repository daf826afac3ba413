//! Full invariant report for one graph file; also drives the corpus runner.

use serde_json::{json, Value};

use orbsplice_core::graphs::{validate, DecoratedGraph, ValidationReport};
use orbsplice_core::homology::{
    discriminant_group, kernel_type, orbifold_homology, projection_hom,
};
use orbsplice_core::reps::{orbifold_diagonal_rep, DiagonalRepresentation};
use orbsplice_core::splice::{
    congruence_check, semigroup_check, splice_diagram, CongruenceReport, SemigroupReport,
    SpliceError, DEFAULT_MONOMIAL_CAP,
};
use orbsplice_core::AbelianGroupPresentation;

use crate::output::*;

pub struct InvariantReport {
    pub name: String,
    pub validation: ValidationReport,
    pub discriminant: Option<AbelianGroupPresentation>,
    pub orbifold: Option<AbelianGroupPresentation>,
    pub kernel: Option<AbelianGroupPresentation>,
    pub rep: Option<DiagonalRepresentation>,
    pub semigroup: Option<SemigroupReport>,
    pub congruence: Option<CongruenceReport>,
    /// Why the splice checks were skipped, when they were.
    pub splice_note: Option<String>,
}

pub fn build(name: &str, d: &DecoratedGraph) -> Result<InvariantReport, String> {
    let validation = validate(d);
    let mut r = InvariantReport {
        name: name.to_string(),
        validation,
        discriminant: None,
        orbifold: None,
        kernel: None,
        rep: None,
        semigroup: None,
        congruence: None,
        splice_note: None,
    };
    if !r.validation.is_tree || !r.validation.is_negative_definite {
        r.splice_note = Some("invariants skipped: graph fails validation".to_string());
        return Ok(r);
    }
    r.discriminant = Some(discriminant_group(d.graph()).map_err(|e| e.to_string())?);
    r.orbifold = Some(orbifold_homology(d).map_err(|e| e.to_string())?);
    let hom = projection_hom(d).map_err(|e| e.to_string())?;
    r.kernel = Some(kernel_type(&hom));
    r.rep = Some(orbifold_diagonal_rep(d).map_err(|e| e.to_string())?);
    match splice_diagram(d) {
        Ok(sd) => {
            r.semigroup = Some(semigroup_check(&sd));
            r.congruence =
                Some(congruence_check(d, &sd, DEFAULT_MONOMIAL_CAP).map_err(|e| e.to_string())?);
        }
        Err(SpliceError::NoNodes) => {
            r.splice_note = Some("splice checks skipped: no nodes".to_string());
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(r)
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.validation.all_ok()
            && self.semigroup.as_ref().map_or(true, |s| s.pass)
            && self.congruence.as_ref().map_or(true, |c| c.pass)
    }

    pub fn summary_line(&self) -> String {
        let mut bits = vec![format!("validate {}", pass(self.validation.all_ok()))];
        if let Some(g) = &self.orbifold {
            bits.push(format!("orbifold {}", factors_text(g)));
        }
        if let Some(s) = &self.semigroup {
            bits.push(format!("semigroup {}", pass(s.pass)));
        }
        if let Some(c) = &self.congruence {
            bits.push(format!("congruence {}", pass(c.pass)));
        }
        if let Some(note) = &self.splice_note {
            bits.push(note.clone());
        }
        bits.join(", ")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        writeln!(out, "report: {}", self.name).unwrap();
        writeln!(out, "determinant: {}", self.validation.determinant).unwrap();
        writeln!(out, "tree: {}", pass(self.validation.is_tree)).unwrap();
        writeln!(
            out,
            "negative definite: {}",
            pass(self.validation.is_negative_definite)
        )
        .unwrap();
        writeln!(
            out,
            "quasi-minimal: {}",
            pass(self.validation.is_quasi_minimal)
        )
        .unwrap();
        for v in &self.validation.violations {
            writeln!(out, "  - {v}").unwrap();
        }
        if let Some(g) = &self.discriminant {
            writeln!(out, "link homology: {}", factors_text(g)).unwrap();
        }
        if let Some(g) = &self.orbifold {
            writeln!(out, "orbifold homology: {}", factors_text(g)).unwrap();
        }
        if let Some(g) = &self.kernel {
            writeln!(out, "projection kernel: {}", factors_text(g)).unwrap();
        }
        if let Some(rep) = &self.rep {
            writeln!(out, "leaf order: {}", rep.leaf_order.join(" ")).unwrap();
            for id in rep.leaf_order.iter() {
                writeln!(out, "  {id} -> {}", rep.image_of_vertex(id).unwrap()).unwrap();
            }
        }
        if let Some(s) = &self.semigroup {
            writeln!(out, "semigroup: {}", pass(s.pass)).unwrap();
            for c in s.checks.iter().filter(|c| !c.pass) {
                writeln!(
                    out,
                    "  - {} -> {}: {} is not a combination of <{}>",
                    c.node,
                    c.toward,
                    c.target,
                    join_bigints(&c.generators)
                )
                .unwrap();
            }
        }
        if let Some(c) = &self.congruence {
            writeln!(out, "congruence: {}", pass(c.pass)).unwrap();
            for n in c.nodes.iter().filter(|n| !n.pass) {
                writeln!(out, "  - no common character at node {}", n.node).unwrap();
            }
        }
        if let Some(note) = &self.splice_note {
            writeln!(out, "note: {note}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut checks = serde_json::Map::new();
        checks.insert(
            "validate".into(),
            check_json(self.validation.all_ok(), &self.validation.violations),
        );
        if let Some(s) = &self.semigroup {
            let witnesses: Vec<String> = s
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| {
                    format!(
                        "{} -> {}: {} not in <{}>",
                        c.node,
                        c.toward,
                        c.target,
                        join_bigints(&c.generators)
                    )
                })
                .collect();
            checks.insert("semigroup".into(), check_json(s.pass, &witnesses));
        }
        if let Some(c) = &self.congruence {
            let witnesses: Vec<String> = c
                .nodes
                .iter()
                .filter(|n| !n.pass)
                .map(|n| format!("no common character at node {}", n.node))
                .collect();
            checks.insert("congruence".into(), check_json(c.pass, &witnesses));
        }
        let rep_json = self.rep.as_ref().map(|rep| {
            let images: serde_json::Map<String, Value> = rep
                .leaf_order
                .iter()
                .map(|id| (id.clone(), qmodz_json(rep.image_of_vertex(id).unwrap())))
                .collect();
            json!({ "leaf_order": rep.leaf_order, "images": images })
        });
        json!({
            "name": self.name,
            "determinant": self.validation.determinant.to_string(),
            "checks": checks,
            "link_homology": self.discriminant.as_ref().map(group_json),
            "orbifold_homology": self.orbifold.as_ref().map(group_json),
            "projection_kernel": self.kernel.as_ref().map(group_json),
            "representation": rep_json,
            "note": self.splice_note,
        })
    }
}
