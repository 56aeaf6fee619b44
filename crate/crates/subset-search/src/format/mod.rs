//! Text forms of instances, variant sections and quantified formulas.
//!
//! ```text
//! ssp vertex_cover v1
//! vertices 3
//! edge 0 1
//! k 1
//! variant comb-interdiction
//! blockable v:0 v:1
//! threshold 1
//! ```

mod body;
mod lex;

use std::fmt::Write;

use lex::{fail, lex, Fields, Line};

use crate::catalog::{Instance, ProblemKind};
use crate::element::{ElementId, Lit};
use crate::error::Result;
use crate::game::qbf::{MatrixForm, QuantifiedFormula};
use crate::variant::{
    aligned, CombInterdictionInstance, CombTwoStageInstance, InterdictionInstance, RegretInstance,
    RestrictedRegretInstance, TwoStageInstance, Variant, VariantKind,
};

/// A parsed instance file: a bare instance or one carrying a variant section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Instance(Instance),
    Variant(Variant),
}

impl Document {
    pub fn base(&self) -> &Instance {
        match self {
            Document::Instance(x) => x,
            Document::Variant(v) => v.base(),
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let lines = lex(text);
    let header = lines.first().ok_or_else(|| fail(1, 1, "empty file; expected `ssp <kind> v1`"))?;
    if header.keyword() != "ssp" {
        return Err(header.err("expected header `ssp <kind> v1`"));
    }
    header.expect_args(2)?;
    let kind: ProblemKind = header.args()[0]
        .text
        .parse()
        .map_err(|e: crate::Error| fail(header.no, header.args()[0].col, e.to_string()))?;
    if header.args()[1].text != "v1" {
        return Err(fail(header.no, header.args()[1].col, "unsupported format version; expected `v1`"));
    }
    let rest = &lines[1..];
    let split = rest.iter().position(|l| l.keyword() == "variant");
    let (body_lines, section) = match split {
        Some(i) => (&rest[..i], Some(&rest[i..])),
        None => (rest, None),
    };
    let payload = body::parse(kind, body_lines, header.no)?;
    let base = Instance::new(payload)?;
    match section {
        None => Ok(Document::Instance(base)),
        Some(section) => parse_variant(base, &section[0], &section[1..]).map(Document::Variant),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    Ok(parse_document(text)?.base().clone())
}

fn parse_variant(base: Instance, intro: &Line, lines: &[Line]) -> Result<Variant> {
    intro.expect_args(1)?;
    let kind: VariantKind = intro.args()[0]
        .text
        .parse()
        .map_err(|e: crate::Error| fail(intro.no, intro.args()[0].col, e.to_string()))?;
    let ctx = intro.no;
    let u = base.universe().clone();
    let values = |f: &Fields, keyword: &str, width: usize| -> Result<Vec<Vec<i64>>> {
        let mut cols = vec![Vec::new(); width];
        for l in f.many(keyword) {
            l.expect_args(width + 1)?;
            let e = l.element_at(1)?;
            if !u.contains(&e) {
                return Err(fail(l.no, l.toks[1].col, format!("element {e} is not part of the universe")));
            }
            for (j, col) in cols.iter_mut().enumerate() {
                col.push((e, l.parse_at::<i64>(j + 2, "a number")?));
            }
        }
        cols.into_iter()
            .map(|c| aligned(&u, c))
            .collect()
    };
    let pair = |v: Vec<Vec<i64>>| -> (Vec<i64>, Vec<i64>) {
        let mut it = v.into_iter();
        (it.next().unwrap_or_default(), it.next().unwrap_or_default())
    };
    Ok(match kind {
        VariantKind::Interdiction => {
            let f = Fields::new(lines, ctx, &["threshold", "cost"])?;
            let cost = values(&f, "cost", 1)?.remove(0);
            Variant::Interdiction(InterdictionInstance::new(base, cost, f.one("threshold")?.value()?)?)
        }
        VariantKind::CombInterdiction => {
            let f = Fields::new(lines, ctx, &["threshold", "blockable"])?;
            let blockable = f.subset("blockable")?;
            Variant::CombInterdiction(CombInterdictionInstance::new(base, blockable, f.one("threshold")?.value()?)?)
        }
        VariantKind::Regret | VariantKind::RestrictedRegret => {
            let f = Fields::new(lines, ctx, &["threshold", "interval"])?;
            let (lower, upper) = pair(values(&f, "interval", 2)?);
            let t = f.one("threshold")?.value()?;
            if kind == VariantKind::Regret {
                Variant::Regret(RegretInstance::new(base, lower, upper, t)?)
            } else {
                Variant::RestrictedRegret(RestrictedRegretInstance::new(base, lower, upper, t)?)
            }
        }
        VariantKind::TwoStage => {
            let f = Fields::new(lines, ctx, &["threshold", "gamma", "first", "second"])?;
            let first = values(&f, "first", 1)?.remove(0);
            let (lower, upper) = pair(values(&f, "second", 2)?);
            Variant::TwoStage(TwoStageInstance::new(
                base,
                first,
                lower,
                upper,
                f.one("threshold")?.value()?,
                f.one("gamma")?.value()?,
            )?)
        }
        VariantKind::CombTwoStage => {
            let f = Fields::new(lines, ctx, &["gamma", "first-stage", "blockable"])?;
            Variant::CombTwoStage(CombTwoStageInstance::new(
                base,
                f.subset("first-stage")?,
                f.subset("blockable")?,
                f.one("gamma")?.value()?,
            )?)
        }
    })
}

pub fn write_instance(x: &Instance) -> String {
    let mut out = format!("ssp {} v1\n", x.kind().id());
    body::write(x.payload(), &mut out);
    out
}

fn elements_line(out: &mut String, keyword: &str, elements: &[ElementId]) {
    if elements.is_empty() {
        return;
    }
    out.push_str(keyword);
    for e in elements {
        let _ = write!(out, " {e}");
    }
    out.push('\n');
}

fn value_lines(out: &mut String, keyword: &str, x: &Instance, columns: &[&[i64]]) {
    for (i, e) in x.universe().iter().enumerate() {
        if columns.iter().all(|c| c[i] == 0) {
            continue;
        }
        let _ = write!(out, "{keyword} {e}");
        for c in columns {
            let _ = write!(out, " {}", c[i]);
        }
        out.push('\n');
    }
}

pub fn write_variant(v: &Variant) -> String {
    let base = v.base();
    let mut out = write_instance(base);
    let _ = writeln!(out, "variant {}", v.kind().id());
    match v {
        Variant::Interdiction(i) => {
            let _ = writeln!(out, "threshold {}", i.threshold());
            value_lines(&mut out, "cost", base, &[i.cost()]);
        }
        Variant::CombInterdiction(i) => {
            let _ = writeln!(out, "threshold {}", i.threshold());
            elements_line(&mut out, "blockable", i.blockable().as_slice());
        }
        Variant::Regret(r) => {
            let _ = writeln!(out, "threshold {}", r.threshold());
            value_lines(&mut out, "interval", base, &[r.lower(), r.upper()]);
        }
        Variant::RestrictedRegret(r) => {
            let _ = writeln!(out, "threshold {}", r.threshold());
            value_lines(&mut out, "interval", base, &[r.lower(), r.upper()]);
        }
        Variant::TwoStage(t) => {
            let _ = writeln!(out, "threshold {}\ngamma {}", t.threshold(), t.requested_gamma());
            value_lines(&mut out, "first", base, &[t.first()]);
            value_lines(&mut out, "second", base, &[t.lower(), t.upper()]);
        }
        Variant::CombTwoStage(t) => {
            let _ = writeln!(out, "gamma {}", t.gamma());
            elements_line(&mut out, "first-stage", t.first_stage().as_slice());
            elements_line(&mut out, "blockable", t.blockable().as_slice());
        }
    }
    out
}

pub fn write_document(d: &Document) -> String {
    match d {
        Document::Instance(x) => write_instance(x),
        Document::Variant(v) => write_variant(v),
    }
}

/// `p cnf|dnf V M`, then `e`/`a` prefix lines ending in `0`, then `M`
/// matrix rows ending in `0` (clauses for cnf, terms for dnf).
pub fn parse_qbf(text: &str) -> Result<QuantifiedFormula> {
    let lines: Vec<Line> = lex(text).into_iter().filter(|l| l.keyword() != "c").collect();
    let header = lines.first().ok_or_else(|| fail(1, 1, "empty file; expected `p cnf|dnf <vars> <rows>`"))?;
    if header.keyword() != "p" {
        return Err(header.err("expected `p cnf|dnf <vars> <rows>`"));
    }
    header.expect_args(3)?;
    let form = match header.args()[0].text {
        "cnf" => MatrixForm::Cnf,
        "dnf" => MatrixForm::Dnf,
        other => return Err(fail(header.no, header.args()[0].col, format!("expected cnf or dnf, found `{other}`"))),
    };
    let num_vars: u32 = header.parse_at(2, "a variable count")?;
    let rows: usize = header.parse_at(3, "a row count")?;
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut expected = "e";
    let mut i = 1;
    while let Some(l) = lines.get(i).filter(|l| matches!(l.keyword(), "e" | "a")) {
        if l.keyword() != expected {
            return Err(l.err(format!("prefix must alternate starting with `e`; expected `{expected}`")));
        }
        let vars: Vec<i64> = l.numbers()?;
        if vars.last() != Some(&0) {
            return Err(l.err("prefix line is not terminated by 0"));
        }
        let mut block = Vec::new();
        for (j, &v) in vars[..vars.len() - 1].iter().enumerate() {
            match u32::try_from(v) {
                Ok(v) if v >= 1 => block.push(v),
                _ => return Err(fail(l.no, l.toks[j + 1].col, format!("expected a variable, found `{v}`"))),
            }
        }
        blocks.push(block);
        expected = if expected == "e" { "a" } else { "e" };
        i += 1;
    }
    let mut matrix = Vec::new();
    let mut open = Vec::new();
    for l in &lines[i..] {
        for j in 0..l.toks.len() {
            let code: i32 = l.parse_at(j, "a literal")?;
            if code == 0 {
                matrix.push(std::mem::take(&mut open));
            } else {
                open.push(Lit::from_dimacs(code).expect("nonzero"));
            }
        }
    }
    if !open.is_empty() {
        return Err(lines.last().expect("nonempty").err("last row is not terminated by 0"));
    }
    if matrix.len() != rows {
        return Err(header.err(format!("header announces {rows} rows, found {}", matrix.len())));
    }
    QuantifiedFormula::new(num_vars, blocks, form, matrix)
}

pub fn write_qbf(phi: &QuantifiedFormula) -> String {
    let mut out = format!("p {} {} {}\n", phi.form(), phi.num_vars(), phi.matrix().len());
    for (b, vars) in phi.blocks().iter().enumerate() {
        out.push_str(if b % 2 == 0 { "e" } else { "a" });
        for v in vars {
            let _ = write!(out, " {v}");
        }
        out.push_str(" 0\n");
    }
    for row in phi.matrix() {
        for l in row {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests;
