use std::fmt::Write as _;
use std::path::Path;

use rz_core::asp::{self, ProgramShape, VerificationReport};
use rz_core::cp::{self, CpConfig};
use rz_core::fca::{self, DEFAULT_MAX_ATTRIBUTES};
use rz_core::generate::seeded_rng;
use rz_core::logic::{self, closed_contains};
use rz_core::program::{self, AnswerKind};
use rz_core::syntax::{self, ContextFormat};
use rz_core::{fixtures, ClassicalProgram, Clause, Domain, ElementId, ElementSet, Error, FormalContext, Program};
use serde_json::{json, Value};

use crate::{Format, Opts};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Error,
    Bound,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Bound => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error | Status::Bound => "error",
        }
    }
}

pub struct Report {
    pub status: Status,
    result: Value,
    text: String,
    pub error: Option<String>,
}

impl Report {
    fn done(status: Status, result: Value, text: String) -> Self {
        Report { status, result, text, error: None }
    }

    pub fn render(&self, verb: &str, opts: &Opts) -> String {
        if !opts.json {
            return self.text.clone();
        }
        let mut out = json!({ "status": self.status.label(), "verb": verb });
        if let Some(e) = &self.error {
            out["error"] = json!(e);
        } else {
            out["result"] = self.result.clone();
        }
        if let Some(seed) = opts.seed {
            out["seed"] = json!(seed);
        }
        serde_json::to_string_pretty(&out).expect("json values serialise") + "\n"
    }
}

/// A run that stopped before producing a result.
struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { status: if e.is_bound() { Status::Bound } else { Status::Error }, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { status: Status::Error, message: message.into() }
}

type Outcome = std::result::Result<Report, Failure>;

pub fn run(verb: &str, opts: &Opts) -> Report {
    let outcome = match verb {
        "check-domain" => check_domain(opts),
        "entail" => entail(opts),
        "models" => models(opts),
        "answer-models" => answer_models(opts),
        "min-answer-models" => min_answer_models(opts),
        "fixpoint" => fixpoint(opts),
        "asp-solve" => asp_solve(opts),
        "verify-thm1" => verify_classical(opts, false),
        "verify-thm2" => verify_classical(opts, true),
        "fca-concepts" => fca_concepts(opts),
        "fca-aoc" => fca_aoc(opts),
        "fca-domain" => fca_domain(opts),
        "fca-verify-thm3" => fca_verify(opts),
        other => Err(usage(format!("unknown verb `{other}`"))),
    };
    outcome.unwrap_or_else(|f| Report { status: f.status, result: Value::Null, text: String::new(), error: Some(f.message) })
}

// ------------------------------------------------------------------ inputs

fn load(arg: &str, bundled: fn(&str) -> Option<&'static str>) -> std::result::Result<String, Failure> {
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")));
    }
    bundled(arg).map(str::to_string).ok_or_else(|| usage(format!("{arg}: no such file or bundled fixture")))
}

fn located(arg: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| match e {
        Error::Syntax { .. } => usage(format!("{arg}:{e}")),
        other => other.into(),
    }
}

fn required<'a>(value: &'a Option<String>, flag: &str) -> std::result::Result<&'a str, Failure> {
    value.as_deref().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn domain(opts: &Opts) -> std::result::Result<Domain, Failure> {
    let arg = required(&opts.domain, "domain")?;
    let d = syntax::parse_poset(&load(arg, fixtures::domain)?, !opts.strict_bottom).map_err(located(arg))?;
    if let Some(limit) = opts.max_domain
        && d.len() > limit
    {
        return Err(Error::BoundExceeded { what: "domain size", limit, actual: d.len() }.into());
    }
    Ok(d)
}

fn program(opts: &Opts, d: &Domain) -> std::result::Result<Program, Failure> {
    let arg = required(&opts.program, "program")?;
    syntax::parse_program(&load(arg, fixtures::program)?, d).map_err(located(arg))
}

fn classical(arg: &str) -> std::result::Result<ClassicalProgram, Failure> {
    syntax::parse_classical(&load(arg, |_| None)?).map_err(located(arg))
}

/// Inline clause text, or a file holding it.
fn text_or_file(arg: &str) -> std::result::Result<String, Failure> {
    if arg.trim_start().starts_with('{') { Ok(arg.to_string()) } else { load(arg, |_| None) }
}

fn context(opts: &Opts) -> std::result::Result<FormalContext, Failure> {
    let arg = required(&opts.context, "context")?;
    let format = match opts.format {
        Some(Format::Csv) => ContextFormat::Csv,
        Some(Format::Cxt) => ContextFormat::Cxt,
        None if arg.ends_with(".csv") => ContextFormat::Csv,
        None => ContextFormat::Cxt,
    };
    syntax::parse_context(&load(arg, fixtures::context)?, format).map_err(located(arg))
}

fn names(d: &Domain, ids: impl IntoIterator<Item = ElementId>) -> Vec<String> {
    ids.into_iter().map(|i| d.name(i).to_string()).collect()
}

fn line(d: &Domain, ids: &ElementSet) -> String {
    d.format_set(ids)
}

fn passed_status(r: &VerificationReport) -> Status {
    if r.passed() { Status::Ok } else { Status::Fail }
}

fn checks_json(r: &VerificationReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "counterexample": c.counterexample }))
            .collect(),
    )
}

// ------------------------------------------------------------------- verbs

fn check_domain(opts: &Opts) -> Outcome {
    let d = domain(opts)?;
    let covers: Vec<(String, String)> =
        d.covers().into_iter().map(|(a, b)| (d.name(a).to_string(), d.name(b).to_string())).collect();
    let mut text = String::new();
    writeln!(text, "elements: {}", d.len()).unwrap();
    writeln!(text, "bottom: {}{}", d.name(d.bottom()), if d.has_synthetic_bottom() { " (inserted)" } else { "" }).unwrap();
    writeln!(text, "covers: {}", covers.len()).unwrap();
    let result = json!({
        "bottom": d.name(d.bottom()),
        "covers": covers,
        "elements": d.names(),
        "inserted_bottom": d.has_synthetic_bottom(),
    });
    Ok(Report::done(Status::Ok, result, text))
}

fn entail(opts: &Opts) -> Outcome {
    let d = domain(opts)?;
    let theory_arg = required(&opts.theory, "theory")?;
    let t = syntax::parse_theory(&text_or_file(theory_arg)?, &d).map_err(located("theory"))?;
    let q = syntax::parse_clause(required(&opts.query, "query")?, &d).map_err(located("query"))?;
    let holds = logic::entails(&d, &t, &q);
    let minimal = d.minimal_elements(&logic::model_set(&d, &t));
    let result = json!({ "entails": holds, "minimal_models": names(&d, minimal.iter()) });
    Ok(Report::done(Status::Ok, result, format!("{holds}\n")))
}

fn models(opts: &Opts) -> Outcome {
    let d = domain(opts)?;
    let (all, extra) = match (&opts.theory, &opts.program) {
        (Some(arg), None) => {
            let t = syntax::parse_theory(&text_or_file(arg)?, &d).map_err(located("theory"))?;
            (logic::model_set(&d, &t), None)
        }
        (None, Some(_)) => {
            let p = program(opts, &d)?;
            let cons = program::cons_program(&d, &p)?;
            (program::program_models(&d, &p)?, Some(cons.model_set().clone()))
        }
        _ => return Err(usage("give exactly one of --theory and --program")),
    };
    let minimal = d.minimal_elements(&all);
    let mut text = format!("models: {}\nminimal: {}\n", line(&d, &all), line(&d, &minimal));
    let mut result = json!({ "models": names(&d, all.iter()), "minimal_models": names(&d, minimal.iter()) });
    if let Some(cons) = extra {
        writeln!(text, "cons: {}", line(&d, &cons)).unwrap();
        result["cons_models"] = json!(names(&d, cons.iter()));
    }
    Ok(Report::done(Status::Ok, result, text))
}

fn kind_label(k: AnswerKind) -> &'static str {
    match k {
        AnswerKind::MinAnswer => "min-answer",
        AnswerKind::Answer => "answer",
        AnswerKind::None => "none",
    }
}

fn answer_models(opts: &Opts) -> Outcome {
    let d = domain(opts)?;
    let p = program(opts, &d)?;
    let found = program::enumerate_answer_models(&d, &p);
    let reports: Vec<Value> = found
        .iter()
        .map(|&w| {
            let r = program::report(&d, &p, w);
            json!({
                "element": d.name(w),
                "kind": kind_label(r.kind),
                "reduct_size": r.reduct_size,
                "witness": r.witness.map(|x| d.name(x)),
            })
        })
        .collect();
    let result = json!({ "answer_models": names(&d, found.iter().copied()), "reports": reports });
    Ok(Report::done(Status::Ok, result, format!("{}\n", names(&d, found).join(" "))))
}

fn min_answer_models(opts: &Opts) -> Outcome {
    let d = domain(opts)?;
    let p = program(opts, &d)?;
    let found = program::enumerate_min_answer_models(&d, &p);
    let reducts: Vec<Value> = found
        .iter()
        .map(|&w| json!({ "element": d.name(w), "reduct_size": program::reduct(&d, &p, w).len() }))
        .collect();
    let result = json!({ "min_answer_models": names(&d, found.iter().copied()), "reducts": reducts });
    Ok(Report::done(Status::Ok, result, format!("{}\n", names(&d, found).join(" "))))
}

fn fixpoint(opts: &Opts) -> Outcome {
    let d = domain(opts)?;
    let p = program(opts, &d)?;
    let cfg = CpConfig { max_domain: opts.max_domain.unwrap_or(cp::DEFAULT_MAX_DOMAIN), ..CpConfig::default() };
    let fix = cp::tp_fixpoint(&d, &p, &cfg)?;
    let cons = program::cons_program(&d, &p)?;
    let disagreement = (0u64..(1 << d.len())).find_map(|mask| {
        let c = Clause::of(&d, d.ids().filter(|e| mask & (1 << e.index()) != 0));
        (fix.theory.contains(&c) != closed_contains(&d, &cons, &c)).then(|| c.display(&d))
    });
    let agrees = disagreement.is_none();
    let mut text = format!("iterations: {}\nclauses: {}\nagrees with cons: {agrees}\n", fix.iterations, fix.theory.len());
    if let Some(c) = &disagreement {
        writeln!(text, "first disagreement: {c}").unwrap();
    }
    let result = json!({
        "agrees_with_cons": agrees,
        "clauses": fix.theory.len(),
        "disagreement": disagreement,
        "iterations": fix.iterations,
    });
    Ok(Report::done(if agrees { Status::Ok } else { Status::Fail }, result, text))
}

fn asp_solve(opts: &Opts) -> Outcome {
    let p = classical(required(&opts.program, "program")?)?;
    let sets = asp::answer_sets(&p)?;
    let shown: Vec<String> = sets.iter().map(|s| s.display(&p.vocabulary)).collect();
    let text = shown.iter().map(|s| format!("{s}\n")).collect();
    Ok(Report::done(Status::Ok, json!({ "answer_sets": shown }), text))
}

fn verify_classical(opts: &Opts, negation_free: bool) -> Outcome {
    let check = |p: &ClassicalProgram| -> rz_core::Result<VerificationReport> {
        if negation_free { Ok(asp::verify_theorem2(p)?.report) } else { Ok(asp::verify_theorem1(p)?.report) }
    };
    let (instances, failure) = match (&opts.program, opts.seed) {
        (Some(arg), _) => {
            let p = classical(arg)?;
            let r = check(&p)?;
            (1, (!r.passed()).then_some((p, r)))
        }
        (None, seed) => {
            let mut rng = seeded_rng(seed.unwrap_or(0));
            let shape = if negation_free { ProgramShape::default().negation_free() } else { ProgramShape::default() };
            let mut failure = None;
            for _ in 0..opts.count {
                let p = asp::random_classical_program(&mut rng, &shape);
                let r = check(&p)?;
                if !r.passed() {
                    failure = Some((p, r));
                    break;
                }
            }
            (opts.count, failure)
        }
    };
    let passed = failure.is_none();
    let mut text = format!("instances: {instances}\nresult: {}\n", if passed { "pass" } else { "FAIL" });
    let mut result = json!({ "instances": instances, "passed": passed });
    if let Some((p, r)) = failure {
        let program_text = syntax::emit_classical(&p);
        write!(text, "counterexample:\n{program_text}{r}").unwrap();
        result["counterexample"] = json!({ "program": program_text, "checks": checks_json(&r) });
    }
    Ok(Report::done(if passed { Status::Ok } else { Status::Fail }, result, text))
}

fn set_names(names: Vec<&str>) -> String {
    format!("{{{}}}", names.join(", "))
}

fn fca_concepts(opts: &Opts) -> Outcome {
    let ctx = context(opts)?;
    let concepts = fca::all_concepts(&ctx, DEFAULT_MAX_ATTRIBUTES)?;
    let mut text = String::new();
    let list: Vec<Value> = concepts
        .iter()
        .map(|c| {
            writeln!(text, "{} {}", set_names(ctx.object_names(&c.extent)), set_names(ctx.attribute_names(&c.intent))).unwrap();
            json!({ "extent": ctx.object_names(&c.extent), "intent": ctx.attribute_names(&c.intent) })
        })
        .collect();
    Ok(Report::done(Status::Ok, json!({ "concepts": list, "count": concepts.len() }), text))
}

fn fca_aoc(opts: &Opts) -> Outcome {
    let ctx = context(opts)?;
    let aoc = fca::aoc_poset(&ctx);
    let mut text = String::new();
    let nodes: Vec<Value> = aoc
        .nodes
        .iter()
        .map(|n| {
            writeln!(text, "{}: {}", n.label(), set_names(ctx.object_names(&n.concept.extent))).unwrap();
            json!({
                "extent": ctx.object_names(&n.concept.extent),
                "intent": ctx.attribute_names(&n.concept.intent),
                "labels": n.labels,
            })
        })
        .collect();
    let mut order = Vec::new();
    for i in 0..aoc.len() {
        for j in 0..aoc.len() {
            if i != j && aoc.leq(i, j) {
                order.push((aoc.nodes[i].label(), aoc.nodes[j].label()));
            }
        }
    }
    Ok(Report::done(Status::Ok, json!({ "nodes": nodes, "order": order }), text))
}

fn fca_domain(opts: &Opts) -> Outcome {
    let ctx = context(opts)?;
    let (d, _) = fca::to_domain(&fca::aoc_poset(&ctx))?;
    let poset = syntax::emit_poset(&d);
    let result = json!({ "elements": d.len(), "poset": poset });
    Ok(Report::done(Status::Ok, result, poset))
}

fn fca_verify(opts: &Opts) -> Outcome {
    let ctx = context(opts)?;
    let mut rng = seeded_rng(opts.seed.unwrap_or(0));
    let r = fca::verify_theorem3(&ctx, opts.exhaustive, opts.count.max(1) * 10, &mut rng)?;
    let text = format!(
        "subsets: {}{}\n{}result: {}\n",
        r.subsets_checked,
        if r.exhaustive { " (exhaustive)" } else { " (sampled)" },
        r.report,
        if r.report.passed() { "pass" } else { "FAIL" }
    );
    let result = json!({
        "checks": checks_json(&r.report),
        "exhaustive": r.exhaustive,
        "passed": r.report.passed(),
        "subsets_checked": r.subsets_checked,
    });
    Ok(Report::done(passed_status(&r.report), result, text))
}
