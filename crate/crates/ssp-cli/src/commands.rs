use std::sync::Arc;

use subset_search::acceptance::{self, CRITERIA};
use subset_search::format::{parse_document, parse_qbf, write_instance, write_variant, Document};
use subset_search::game::{GameValue, Solvers, SOLVER_BUDGET};
use subset_search::lift::{lift, verify_lifted, Families, LiftedReduction};
use subset_search::reduction::{compose, verify_ssp, Reduction, Registry, Side, Verdict, VerificationReport};
use subset_search::{Error, ProblemKind, Subset, Variant, DEFAULT_BUDGET};

use crate::failure::Failure;
use crate::report::{Report, Status};
use crate::{Cli, Command};

type Outcome = Result<(), Failure>;

fn read(path: &str, report: &mut Report) -> Result<String, Failure> {
    let bytes = std::fs::read(path).map_err(|source| Failure::Read {
        path: path.to_string(),
        source,
    })?;
    report.file("input", path, &bytes);
    String::from_utf8(bytes).map_err(|_| Failure::Usage(format!("{path} is not UTF-8 text")))
}

fn write(path: &str, role: &'static str, text: &str, report: &mut Report) -> Outcome {
    std::fs::write(path, text).map_err(|source| Failure::Write {
        path: path.to_string(),
        source,
    })?;
    report.file(role, path, text.as_bytes());
    Ok(())
}

fn kind(id: &str) -> Result<ProblemKind, Failure> {
    Ok(id.parse()?)
}

fn subset_text(s: &Option<Subset>) -> String {
    s.as_ref().map_or_else(|| "none".to_string(), Subset::to_string)
}

pub fn run(cli: &Cli, report: &mut Report) -> Outcome {
    let budget = cli.global.budget;
    match &cli.command {
        Command::Reduce {
            from,
            to,
            via,
            input,
            out,
            emit_embedding,
        } => reduce(report, from.as_deref(), to.as_deref(), via.as_deref(), input, out, emit_embedding.as_deref()),
        Command::Verify { reduction, input } => verify(report, reduction, input, budget.unwrap_or(DEFAULT_BUDGET)),
        Command::Solve { game, input } => solve(report, game, input, budget.unwrap_or(SOLVER_BUDGET)),
        Command::Gadget { family, input, out } => gadget(report, family, input, out),
        Command::Lift {
            reduction,
            family,
            input,
            out,
        } => lift_cmd(report, reduction, family, input, out),
        Command::Selftest { only } => selftest(report, cli.global.seed, only),
    }
}

/// The reduction named by `--via`, or the catalog path between `--from` and `--to`.
fn resolve_reduce(from: Option<ProblemKind>, to: Option<ProblemKind>, via: Option<&str>) -> Result<Arc<dyn Reduction>, Failure> {
    let reg = Registry::catalog();
    let r = match (via, from, to) {
        (Some(ids), _, _) => reg.chain(ids)?,
        (None, Some(from), Some(to)) => {
            let path = reg
                .path(from, to)
                .filter(|p| !p.is_empty())
                .ok_or_else(|| Failure::KindGap(format!("no catalog path from {from} to {to}")))?;
            let mut steps = path.into_iter();
            let first = steps.next().expect("nonempty path");
            steps.try_fold(first, compose)?
        }
        _ => return Err(Failure::Usage("give --via, or both --from and --to".into())),
    };
    for (expected, found) in [(from, r.source()), (to, r.target())] {
        if let Some(expected) = expected.filter(|&k| k != found) {
            return Err(Error::KindMismatch {
                expected: expected.id().into(),
                found: found.id().into(),
            }
            .into());
        }
    }
    Ok(r)
}

fn reduce(
    report: &mut Report,
    from: Option<&str>,
    to: Option<&str>,
    via: Option<&str>,
    input: &str,
    out: &str,
    embedding_path: Option<&str>,
) -> Outcome {
    let from = from.map(kind).transpose()?;
    let to = to.map(kind).transpose()?;
    let r = resolve_reduce(from, to, via)?;
    let doc = parse_document(&read(input, report)?)?;
    if matches!(doc, Document::Variant(_)) {
        report.set("note", "variant section ignored; use lift to carry it");
    }
    let x = doc.base();
    let reduced = r.apply(x)?;
    write(out, "output", &write_instance(&reduced.target), report)?;
    if let Some(path) = embedding_path {
        write(path, "embedding", &reduced.embedding.to_string(), report)?;
    }
    report.set("reduction", r.id());
    report.set("source-kind", x.kind().id());
    report.set("target-kind", reduced.target.kind().id());
    report.set("source-universe", x.universe().len());
    report.set("target-universe", reduced.target.universe().len());
    report.set("embedding-pairs", reduced.embedding.len());
    report.finish(Status::Ok, 0);
    Ok(())
}

fn lifted_reduction(id: &str) -> Result<LiftedReduction, Failure> {
    let (base, family) = id.split_once('@').expect("caller checked for @");
    Ok(lift(Registry::catalog().chain(base)?, Families::standard().get(family)?))
}

fn record_verification(report: &mut Report, v: &VerificationReport) {
    let verdict = match v.verdict {
        Verdict::Pass => "pass",
        Verdict::Mismatch => "mismatch",
        Verdict::Inconclusive => "inconclusive",
    };
    report.set("verdict", verdict);
    report.set("equal", v.equal);
    report.set("yes-agree", v.yes_agree);
    report.set("source-solutions", v.source_solutions);
    report.set("target-solutions", v.target_solutions);
    report.set("images", v.images.len());
    report.set("restrictions", v.restrictions.len());
    let witness = v.witness.as_ref().map_or_else(
        || "none".to_string(),
        |(s, side)| {
            let side = match side {
                Side::ImageOnly => "image-only",
                Side::RestrictionOnly => "restriction-only",
            };
            format!("{s} {side}")
        },
    );
    report.set("witness", witness);
    let (status, exit) = match v.verdict {
        Verdict::Pass => (Status::Ok, 0),
        Verdict::Mismatch => (Status::Ok, 1),
        Verdict::Inconclusive => (Status::BudgetExceeded, 5),
    };
    report.finish(status, exit);
}

fn verify(report: &mut Report, id: &str, input: &str, budget: u64) -> Outcome {
    let doc = parse_document(&read(input, report)?)?;
    report.set("reduction", id);
    report.set("budget", budget);
    let verification = if id.contains('@') {
        let r = lifted_reduction(id)?;
        let Document::Variant(v) = doc else {
            return Err(Error::FamilyMismatch {
                expected: r.family().kind().id().into(),
                found: doc.base().kind().id().into(),
            }
            .into());
        };
        report.set("provenance", r.provenance().tag());
        verify_lifted(&r, &v, budget)?.1
    } else {
        let r = Registry::with_controls().chain(id)?;
        report.set("provenance", r.provenance().tag());
        verify_ssp(r.as_ref(), doc.base(), budget)?.1
    };
    record_verification(report, &verification);
    Ok(())
}

fn variant_of(doc: Document, expected: &str) -> Result<Variant, Failure> {
    match doc {
        Document::Variant(v) => Ok(v),
        Document::Instance(x) => Err(Error::FamilyMismatch {
            expected: expected.into(),
            found: format!("plain {} instance", x.kind()),
        }
        .into()),
    }
}

fn record_value(report: &mut Report, value: &GameValue) {
    report.set("decision", if value.decision { "yes" } else { "no" });
    report.set("value", value.value.map_or(serde_json::Value::Null, Into::into));
    report.set("witness", subset_text(&value.witness));
}

fn solve(report: &mut Report, game: &str, input: &str, budget: u64) -> Outcome {
    let solver = Solvers::standard().get(game)?;
    let v = variant_of(parse_document(&read(input, report)?)?, game)?;
    report.set("game", solver.id());
    report.set("variant", v.kind().id());
    report.set("base-kind", v.base().kind().id());
    report.set("budget", budget);
    if let Variant::TwoStage(t) = &v {
        if let Some(note) = t.clamp_note() {
            report.set("note", note);
        }
    }
    let value = solver.solve(&v, budget)?;
    record_value(report, &value);
    report.finish(Status::Ok, 0);
    Ok(())
}

fn gadget(report: &mut Report, family: &str, input: &str, out: &str) -> Outcome {
    let family = Families::standard().get(family)?;
    let phi = parse_qbf(&read(input, report)?)?;
    let v = family.gadget(&phi)?;
    write(out, "output", &write_variant(&v), report)?;
    report.set("family", family.id());
    report.set("formula", phi.shape());
    report.set("formula-vars", phi.num_vars());
    report.set("variant", v.kind().id());
    report.set("base-kind", v.base().kind().id());
    report.set("universe", v.base().universe().len());
    report.finish(Status::Ok, 0);
    Ok(())
}

fn lift_cmd(report: &mut Report, reduction: &str, family: &str, input: &str, out: &str) -> Outcome {
    let r = lift(Registry::catalog().chain(reduction)?, Families::standard().get(family)?);
    let v = variant_of(parse_document(&read(input, report)?)?, r.family().kind().id())?;
    let lifted = r.apply(&v)?;
    write(out, "output", &write_variant(&lifted.target), report)?;
    report.set("reduction", r.id());
    report.set("provenance", r.provenance().tag());
    report.set("variant", lifted.target.kind().id());
    report.set("source-kind", v.base().kind().id());
    report.set("target-kind", lifted.target.base().kind().id());
    report.set("source-universe", v.base().universe().len());
    report.set("target-universe", lifted.target.base().universe().len());
    report.finish(Status::Ok, 0);
    Ok(())
}

fn selftest(report: &mut Report, seed: u64, only: &[u8]) -> Outcome {
    if let Some(bad) = only.iter().find(|n| !(1..=CRITERIA.len() as u8).contains(n)) {
        return Err(Failure::Usage(format!("no criterion {bad}; criteria are 1-{}", CRITERIA.len())));
    }
    report.set("seed", seed);
    let mut all_pass = true;
    for &(n, _) in CRITERIA.iter().filter(|(n, _)| only.is_empty() || only.contains(n)) {
        let outcome = acceptance::run(n, seed);
        eprintln!("criterion {n}: {:.1}s", outcome.elapsed.as_secs_f64());
        let verdict = if outcome.passed() { "pass" } else { "fail" };
        report.set(
            format!("criterion-{n}"),
            format!("{verdict} {}/{} {}", outcome.checks - outcome.failures.len(), outcome.checks, outcome.title),
        );
        for (i, msg) in outcome.failures.iter().enumerate() {
            report.set(format!("criterion-{n}-failure-{}", i + 1), msg.clone());
        }
        all_pass &= outcome.passed();
    }
    report.finish(Status::Ok, if all_pass { 0 } else { 1 });
    Ok(())
}
