//! One function per CLI subcommand, each producing both renderings.

use jetforge_core::hs::{bijet_presentation, functoriality_check, induced_morphism, jet_presentation};
use jetforge_core::module::{
    cotangent_theorem_check, hs_module_presentation, kaehler_of_jets, kaehler_presentation, sym_presentation,
    sym_theorem_check, KaehlerPresentation,
};
use jetforge_core::p1::{cocycle_check, global_sections, p1_transition, ChartMode};
use jetforge_core::{JetVar, Poly};
use serde_json::{json, Map, Value};

use crate::check::{self, CheckConfig, CheckError, Instance, Params, Suite};
use crate::dsl::{Document, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] jetforge_core::Error),
    #[error("{0}")]
    Check(#[from] CheckError),
    #[error("{0}")]
    Usage(String),
}

/// A command result. `ok` is false when a check the command ran failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Output {
        Output { text, json, ok: true }
    }

    /// Pretty JSON with a trailing newline; stable for equal inputs.
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|t| t.to_string()).collect()
}

fn matrix_json(m: &[Vec<Poly>]) -> Value {
    Value::Array(m.iter().map(|row| json!(strings(row))).collect())
}

fn matrix_text(out: &mut String, labels: &[String], m: &[Vec<Poly>]) {
    for (label, row) in labels.iter().zip(m) {
        out.push_str(&format!("{label}: [{}]\n", strings(row).join(", ")));
    }
}

fn ring_line(doc: &Document) -> String {
    format!("{}[{}]", doc.field, doc.vars.join(", "))
}

/// `name_i` labels in `(relation, order)` order.
fn jet_labels(doc: &Document, n: u32) -> Vec<String> {
    doc.ideal.iter().flat_map(|(name, _)| (0..=n).map(move |i| format!("{name}_{i}"))).collect()
}

pub fn jet(doc: &Document, n: u32) -> Result<Output, CommandError> {
    let a = doc.algebra()?;
    let j = jet_presentation(&a, n);
    let labels = jet_labels(doc, n);
    let mut structural = Map::new();
    let mut induced = Map::new();
    for (idx, label) in labels.iter().enumerate() {
        let (k, i) = (idx / (n as usize + 1), (idx % (n as usize + 1)) as u32);
        structural.insert(label.clone(), json!(i));
        if a.grading().is_some() {
            induced.insert(label.clone(), json!(a.relation_degree(k)?));
        }
    }
    let mut text = format!("level {n} jets of {}\nvars: {}\n", ring_line(doc), strings(j.vars()).join(", "));
    for (label, r) in labels.iter().zip(j.relations()) {
        text.push_str(&format!("{label} = {r}\n"));
    }
    let value = json!({
        "level": n,
        "vars": strings(j.vars()),
        "relations": strings(j.relations()),
        "structural_degrees": structural,
        "induced_degrees": induced,
    });
    Ok(Output::new(text, value))
}

pub fn jet2(doc: &Document, n: u32, m: u32) -> Result<Output, CommandError> {
    let b = bijet_presentation(&doc.algebra()?, n, m);
    let labels: Vec<String> = doc
        .ideal
        .iter()
        .flat_map(|(name, _)| (0..=n).flat_map(move |i| (0..=m).map(move |j| format!("{name}_{i}_{j}"))))
        .collect();
    let mut text =
        format!("level ({n}, {m}) bivariate jets of {}\nvars: {}\n", ring_line(doc), strings(b.vars()).join(", "));
    for (label, r) in labels.iter().zip(b.relations()) {
        text.push_str(&format!("{label} = {r}\n"));
    }
    let value = json!({ "n": n, "m": m, "vars": strings(b.vars()), "relations": strings(b.relations()) });
    Ok(Output::new(text, value))
}

pub fn module(doc: &Document, n: u32) -> Result<Output, CommandError> {
    let decl = doc.module.as_ref().ok_or_else(|| CommandError::Usage("the input declares no module".into()))?;
    let hs = hs_module_presentation(&doc.module_presentation()?, n);
    let basis = hs.basis_labels();
    let rows: Vec<String> =
        decl.relations.iter().flat_map(|(name, _)| (0..=n).map(move |i| format!("{name}_{i}"))).collect();
    let mut text = format!("level {n} Hasse-Schmidt module over {}\nbasis: {}\n", ring_line(doc), basis.join(", "));
    matrix_text(&mut text, &rows, hs.matrix());
    let value = json!({ "level": n, "basis": basis, "rows": rows, "matrix": matrix_json(hs.matrix()) });
    Ok(Output::new(text, value))
}

fn differential_labels(k: &KaehlerPresentation) -> Vec<String> {
    k.vars().iter().map(|v| format!("d{v}")).collect()
}

pub fn omega(doc: &Document, n: Option<u32>) -> Result<Output, CommandError> {
    let a = doc.algebra()?;
    let (k, rows) = match n {
        None => (kaehler_presentation(&a), doc.ideal.iter().map(|(name, _)| name.clone()).collect()),
        Some(n) => (kaehler_of_jets(&jet_presentation(&a, n)), jet_labels(doc, n)),
    };
    let basis = differential_labels(&k);
    let mut text = match n {
        None => format!("Kaehler differentials of {}\n", ring_line(doc)),
        Some(n) => format!("Kaehler differentials of the level {n} jets of {}\n", ring_line(doc)),
    };
    text.push_str(&format!("basis: {}\n", basis.join(", ")));
    matrix_text(&mut text, &rows, k.matrix());
    let mut value = json!({ "level": n, "basis": basis, "rows": rows, "matrix": matrix_json(k.matrix()) });
    let mut ok = true;
    if let Some(n) = n {
        let report = cotangent_theorem_check(&a, n);
        ok = report.holds;
        value["cotangent_ok"] = json!(report.holds);
        text.push_str(&format!("matches the Hasse-Schmidt module of the base Jacobian: {}\n", report.holds));
    }
    Ok(Output { text, json: value, ok })
}

pub fn sym(doc: &Document, n: Option<u32>) -> Result<Output, CommandError> {
    let m = doc.module_presentation()?;
    let s = sym_presentation(&m);
    let alg = s.algebra();
    let grading: Map<String, Value> = alg
        .vars()
        .iter()
        .map(|v| (v.name().to_string(), json!(alg.grading().and_then(|g| g.get(v)).copied())))
        .collect();
    let gens = strings(s.generators().iter().map(|g| g.name()));
    let mut text = format!("Sym over {} on {}\n", ring_line(doc), gens.join(", "));
    for (idx, r) in alg.relations().iter().enumerate() {
        let deg = if idx < s.base_relations() { 0 } else { 1 };
        text.push_str(&format!("[{deg}] {r}\n"));
    }
    let mut value = json!({
        "generators": gens,
        "grading": grading,
        "relations": strings(alg.relations()),
        "base_relations": s.base_relations(),
    });
    let mut ok = true;
    if let Some(n) = n {
        let j = jet_presentation(alg, n);
        let report = sym_theorem_check(&m, n);
        ok = report.holds;
        value["level"] = json!(n);
        value["jet_relations"] = json!(strings(j.relations()));
        value["degree0_ok"] = json!(report.degree0_ok);
        value["degree1_ok"] = json!(report.degree1_ok);
        text.push_str(&format!("level {n} jets:\n"));
        for r in j.relations() {
            text.push_str(&format!("  {r}\n"));
        }
        text.push_str(&format!(
            "degree 0 matches the jet algebra: {}\ndegree 1 matches the Hasse-Schmidt module: {}\n",
            report.degree0_ok, report.degree1_ok
        ));
    }
    Ok(Output { text, json: value, ok })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct P1Flags {
    pub cocycle: bool,
    pub sections: bool,
    pub overlap: bool,
}

pub fn p1(d: i64, n: u32, flags: P1Flags) -> Result<Output, CommandError> {
    let mode = if flags.overlap { ChartMode::Overlap } else { ChartMode::Chart1 };
    let t = p1_transition(d, n, mode);
    let cocycle = cocycle_check(d, n).holds;
    let sections = if flags.sections { Some(global_sections(d, n)?) } else { None };
    let section_labels: Vec<String> = match &sections {
        Some(s) => s.iter().map(|g| g.label.clone()).collect(),
        None if d == 1 => global_sections(d, n)?.into_iter().map(|g| g.label).collect(),
        None => Vec::new(),
    };
    let coords = if flags.overlap { "overlap (t0 jets)" } else { "chart 1 (t1 jets)" };
    let mut text = format!("O({d}) on level {n} jets of P^1, {coords}\n");
    text.push_str(&format!("columns {} over rows {}\n", t.basis_from().join(", "), t.basis_to().join(", ")));
    for row in t.rows() {
        text.push_str(&format!("[{}]\n", strings(row).join(", ")));
    }
    let mut ok = true;
    if flags.cocycle {
        ok &= cocycle;
        text.push_str(&format!("cocycle: {}\n", if cocycle { "ok" } else { "FAILED" }));
    }
    if let Some(s) = &sections {
        ok &= s.iter().all(|g| g.global);
        text.push_str(&format!("{} global sections:\n", s.len()));
        for g in s {
            let other = if g.chart == 0 { "e1" } else { "e0" };
            let coords: Vec<String> = g.in_other_chart.iter().map(ToString::to_string).collect();
            text.push_str(&format!("  {} = [{}] in the {other} frame\n", g.label, coords.join(", ")));
        }
    }
    let value = json!({
        "d": d,
        "n": n,
        "transition": t.rows().iter().map(strings).collect::<Vec<_>>(),
        "cocycle_ok": cocycle,
        "global_sections": section_labels,
    });
    Ok(Output { text, json: value, ok })
}

pub fn morphism(doc: &Document, n: u32) -> Result<Output, CommandError> {
    let phi = doc.algebra_morphism().ok_or_else(|| CommandError::Usage("the input declares no morphism".into()))??;
    let f = induced_morphism(&phi, n);
    let mut images = Map::new();
    let mut text = format!(
        "level {n} jets of {} -> {}\n",
        ring_line(doc),
        doc.morphism.as_ref().map_or(String::new(), |m| { format!("{}[{}]", doc.field, m.target_vars.join(", ")) })
    );
    for s in phi.source().vars() {
        for i in 0..=n {
            let v = JetVar::jet(s, i);
            let img = f.image(&v).expect("every jet variable has an image");
            text.push_str(&format!("{v} -> {img}\n"));
            images.insert(v.to_string(), json!(img.to_string()));
        }
    }
    let mut functorial = true;
    for (_, g) in &doc.ideal {
        functorial &= functoriality_check(&phi, g, n)?;
    }
    text.push_str(&format!("commutes with d_i on the ideal: {functorial}\n"));
    let value = json!({ "level": n, "images": images, "functorial": functorial });
    Ok(Output { text, json: value, ok: functorial })
}

pub fn check(cfg: &CheckConfig) -> Result<Output, CommandError> {
    let report = check::run_suite(cfg)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(Output { text: format!("{report}\n"), json: value, ok: report.passed })
}

/// Runs one suite's identity on a given document and levels.
pub fn replay(
    suite: Suite,
    document: Option<Document>,
    params: Params,
    cfg: &CheckConfig,
) -> Result<Output, CommandError> {
    let v = check::replay(suite, &Instance { document, params }, cfg)?;
    let text = format!(
        "{suite} ({}): {}{}\n",
        params.args(),
        if v.passed { "holds" } else { "FAILS" },
        if v.detail.is_empty() { String::new() } else { format!(" ({})", v.detail) }
    );
    let value = json!({
        "suite": suite.name(),
        "params": params,
        "passed": v.passed,
        "oracle": v.oracle,
        "detail": v.detail,
    });
    let ok = v.passed && !v.disagrees();
    Ok(Output { text, json: value, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_document;
    use jetforge_core::Field;

    fn doc(s: &str) -> Document {
        parse_document(s, Field::Rational).unwrap()
    }

    #[test]
    fn cusp_level_one() {
        let out = jet(&doc("ring Q[x,y]\nideal f = y^2 - x^3"), 1).unwrap();
        assert_eq!(out.json["vars"], json!(["x_0", "x_1", "y_0", "y_1"]));
        assert_eq!(out.json["relations"], json!(["-x_0^3 + y_0^2", "-3*x_0^2*x_1 + 2*y_0*y_1"]));
        assert_eq!(out.json["structural_degrees"], json!({"f_0": 0, "f_1": 1}));
    }

    #[test]
    fn graded_cusp_degrees() {
        let out = jet(&doc("ring Q[x,y]\ngrade x = 2\ngrade y = 3\nideal f = y^2 - x^3"), 2).unwrap();
        assert_eq!(out.json["induced_degrees"], json!({"f_0": 6, "f_1": 6, "f_2": 6}));
    }

    #[test]
    fn p1_sections() {
        let out = p1(1, 2, P1Flags { sections: true, ..P1Flags::default() }).unwrap();
        assert_eq!(out.json["global_sections"].as_array().unwrap().len(), 6);
        assert!(out.ok);
        assert!(p1(2, 1, P1Flags { sections: true, ..P1Flags::default() }).is_err());
        let out = p1(1, 1, P1Flags { overlap: true, cocycle: true, ..P1Flags::default() }).unwrap();
        assert_eq!(out.json["transition"], json!([["1/t0_0", "-t0_1/t0_0^2"], ["0", "1/t0_0"]]));
        assert_eq!(out.json["cocycle_ok"], json!(true));
    }

    #[test]
    fn module_rows() {
        let d = doc("ring Q[x,y]\nmodule rank 2\nrelation r = [x, y]");
        let out = module(&d, 1).unwrap();
        assert_eq!(out.json["basis"], json!(["e1_0", "e1_1", "e2_0", "e2_1"]));
        assert_eq!(out.json["matrix"], json!([["x_0", "0", "y_0", "0"], ["x_1", "x_0", "y_1", "y_0"]]));
    }

    #[test]
    fn omega_and_sym() {
        let d = doc("ring Q[x,y]\nideal f = y^2 - x^3\nmodule rank 2\nrelation r = [x, y]");
        let out = omega(&d, Some(1)).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["basis"], json!(["dx_0", "dx_1", "dy_0", "dy_1"]));
        let out = sym(&d, Some(1)).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["relations"][1], json!("x_0*e1_0 + y_0*e2_0"));
    }

    #[test]
    fn morphism_images() {
        let d = doc("ring Q[x]\nideal f = x^2\ntarget Q[u]\nmap x = u^2");
        let out = morphism(&d, 1).unwrap();
        assert_eq!(out.json["images"], json!({"x_0": "u_0^2", "x_1": "2*u_0*u_1"}));
        assert_eq!(out.json["functorial"], json!(true));
    }
}
