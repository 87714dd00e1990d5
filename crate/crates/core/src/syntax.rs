//! Text formats: posets, clauses and theories, domain programs, classical
//! programs, and formal contexts (Burmeister `.cxt` and CSV).
//!
//! Every parser reports failures as [`Error::Syntax`] with a 1-based line
//! and column. Emitters produce text their parser reads back to an equal
//! value.
//!
//! ```text
//! # poset
//! elements: a b t
//! le: a t
//! le: b t
//! bottom: _bot_        # optional; makes the element least
//!
//! # domain program, `#` comments
//! {d} <- {_bot_}.
//! {rw} <- {_bot_}, ~{ww}.
//!
//! % classical program, `%` comments
//! p, q :- r, -s, not t.
//! -p.
//! :- p, q.
//! :- .                 % no set satisfies this
//! ```

use std::fmt::Write as _;

use crate::asp::{ClassicalProgram, ClassicalRule, Literal, Vocabulary};
use crate::error::{Error, Result};
use crate::fca::FormalContext;
use crate::logic::{Clause, Theory};
use crate::poset::{is_valid_name, Domain, ElementId};
use crate::program::{ExtendedRule, Program};

// ---------------------------------------------------------------- posets

pub fn parse_poset(text: &str, auto_bottom: bool) -> Result<Domain> {
    let mut elements: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut bottom: Option<(String, usize, usize)> = None;
    let mut refs: Vec<(String, usize, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let key_col = content.len() - content.trim_start().len() + 1;
        let Some((key, rest)) = content.split_once(':') else {
            return Err(Error::syntax(line, key_col, "expected `elements:`, `le:` or `bottom:`"));
        };
        let rest_offset = key.len() + 1;
        let tokens = tokens_with_columns(rest, rest_offset);
        match key.trim() {
            "elements" => {
                for (tok, col) in tokens {
                    if !tok.split('=').all(is_valid_name) {
                        return Err(Error::syntax(line, col, format!("invalid element name `{tok}`")));
                    }
                    elements.push(tok.to_string());
                }
            }
            "le" => {
                if tokens.len() != 2 {
                    return Err(Error::syntax(line, key_col, format!("`le:` takes two names, found {}", tokens.len())));
                }
                for (tok, col) in &tokens {
                    refs.push((tok.to_string(), line, *col));
                }
                pairs.push((tokens[0].0.to_string(), tokens[1].0.to_string()));
            }
            "bottom" => {
                if tokens.len() != 1 {
                    return Err(Error::syntax(line, key_col, "`bottom:` takes one name"));
                }
                if bottom.is_some() {
                    return Err(Error::syntax(line, key_col, "bottom declared twice"));
                }
                bottom = Some((tokens[0].0.to_string(), line, tokens[0].1));
            }
            other => return Err(Error::syntax(line, key_col, format!("unknown key `{other}`"))),
        }
    }

    let known = |name: &str| elements.iter().any(|e| e == name || e.split('=').any(|a| a == name));
    for (name, line, col) in refs.iter().chain(bottom.iter()) {
        if !known(name) {
            return Err(Error::syntax(*line, *col, format!("unknown element `{name}`")));
        }
    }
    if let Some((b, _, _)) = &bottom {
        for e in &elements {
            pairs.push((b.clone(), e.clone()));
        }
    }
    Domain::build(&elements, &pairs, auto_bottom)
}

fn tokens_with_columns(s: &str, offset: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((&s[st..i], offset + st + 1));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((&s[st..], offset + st + 1));
    }
    out
}

/// Element list, one `le:` line per covering pair, and the bottom.
pub fn emit_poset(d: &Domain) -> String {
    let mut out = String::new();
    writeln!(out, "elements: {}", d.names().join(" ")).unwrap();
    for (lo, hi) in d.covers() {
        if lo != d.bottom() {
            writeln!(out, "le: {} {}", d.name(lo), d.name(hi)).unwrap();
        }
    }
    writeln!(out, "bottom: {}", d.name(d.bottom())).unwrap();
    out
}

// ------------------------------------------------------- cursor utilities

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
    comment: char,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, comment: char) -> Self {
        Cursor { src, pos: 0, line: 1, col: 1, comment }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == self.comment {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::syntax(self.line, self.col, msg)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) { Ok(()) } else { Err(self.err(format!("expected `{s}`, found {}", self.found()))) }
    }

    /// A run of characters accepted by `ok`, with its position.
    fn word(&mut self, ok: impl Fn(char) -> bool) -> (&'a str, usize, usize) {
        self.skip_ws();
        let (start, line, col) = (self.pos, self.line, self.col);
        while self.peek().is_some_and(&ok) {
            self.bump();
        }
        (&self.src[start..self.pos], line, col)
    }
}

// ------------------------------------------------------ clauses, programs

fn name_char(c: char) -> bool {
    !c.is_whitespace() && !"{},#~".contains(c)
}

fn parse_clause_at(cur: &mut Cursor<'_>, d: &Domain) -> Result<Clause> {
    cur.expect("{")?;
    let mut members = Vec::new();
    if cur.eat("}") {
        return Ok(Clause::of(d, members));
    }
    loop {
        let (name, line, col) = cur.word(name_char);
        if name.is_empty() {
            return Err(cur.err(format!("expected element name, found {}", cur.found())));
        }
        let id = d.id(name).ok_or_else(|| Error::syntax(line, col, format!("unknown element `{name}`")))?;
        members.push(id);
        if cur.eat("}") {
            return Ok(Clause::of(d, members));
        }
        cur.expect(",")?;
    }
}

/// A single clause such as `{a, b}` or `{}`.
pub fn parse_clause(text: &str, d: &Domain) -> Result<Clause> {
    let mut cur = Cursor::new(text, '#');
    let c = parse_clause_at(&mut cur, d)?;
    if !cur.at_end() {
        return Err(cur.err(format!("unexpected {} after clause", cur.found())));
    }
    Ok(c)
}

/// A theory: clauses separated by whitespace, conventionally one per line.
pub fn parse_theory(text: &str, d: &Domain) -> Result<Theory> {
    let mut cur = Cursor::new(text, '#');
    let mut clauses = Vec::new();
    while !cur.at_end() {
        clauses.push(parse_clause_at(&mut cur, d)?);
    }
    Ok(Theory::new(clauses))
}

pub fn emit_clause(d: &Domain, c: &Clause) -> String {
    c.display(d)
}

pub fn emit_theory(d: &Domain, t: &Theory) -> String {
    t.clauses.iter().map(|c| c.display(d) + "\n").collect()
}

/// Rules `head <- body.` or `head <- body, ~neg.`.
pub fn parse_program(text: &str, d: &Domain) -> Result<Program> {
    let mut cur = Cursor::new(text, '#');
    let mut rules = Vec::new();
    while !cur.at_end() {
        let head = parse_clause_at(&mut cur, d)?;
        cur.expect("<-")?;
        let body = parse_clause_at(&mut cur, d)?;
        let neg = if cur.eat(",") {
            cur.expect("~")?;
            parse_clause_at(&mut cur, d)?
        } else {
            Clause::empty(d)
        };
        cur.expect(".")?;
        rules.push(ExtendedRule::new(head, body, neg));
    }
    Ok(Program::new(rules))
}

pub fn emit_program(d: &Domain, p: &Program) -> String {
    let mut out = String::new();
    for r in &p.rules {
        write!(out, "{} <- {}", r.head.display(d), r.pos_body.display(d)).unwrap();
        if !r.neg_body.is_empty() {
            write!(out, ", ~{}", r.neg_body.display(d)).unwrap();
        }
        out.push_str(".\n");
    }
    out
}

// ------------------------------------------------------ classical programs

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn parse_literal(cur: &mut Cursor<'_>, vocab: &mut Vocabulary) -> Result<Literal> {
    let negated = cur.eat("-");
    let (name, line, col) = cur.word(ident_char);
    if name.is_empty() {
        return Err(cur.err(format!("expected a literal, found {}", cur.found())));
    }
    if name == "not" {
        return Err(Error::syntax(line, col, "`not` is reserved"));
    }
    let var = vocab.intern(name);
    Ok(Literal { var, negated })
}

/// Peeks for the keyword `not` followed by a separator.
fn eat_not(cur: &mut Cursor<'_>) -> bool {
    cur.skip_ws();
    let rest = &cur.src[cur.pos..];
    if rest.starts_with("not") && rest[3..].chars().next().is_some_and(|c| c.is_whitespace()) {
        cur.eat("not");
        true
    } else {
        false
    }
}

/// Classical extended disjunctive rules; the vocabulary is collected in
/// order of first occurrence.
pub fn parse_classical(text: &str) -> Result<ClassicalProgram> {
    let mut cur = Cursor::new(text, '%');
    let mut vocab = Vocabulary::default();
    let mut rules = Vec::new();
    while !cur.at_end() {
        let mut rule = ClassicalRule::default();
        if !cur.eat(":-") {
            loop {
                rule.head.push(parse_literal(&mut cur, &mut vocab)?);
                if !cur.eat(",") {
                    break;
                }
            }
            if !cur.eat(":-") {
                cur.expect(".")?;
                rules.push(rule);
                continue;
            }
        }
        if rule.head.is_empty() && cur.eat(".") {
            // `:- .` is the constraint that no set satisfies.
            rules.push(rule);
            continue;
        }
        loop {
            if eat_not(&mut cur) {
                rule.neg.push(parse_literal(&mut cur, &mut vocab)?);
            } else {
                rule.pos.push(parse_literal(&mut cur, &mut vocab)?);
            }
            if !cur.eat(",") {
                break;
            }
        }
        cur.expect(".")?;
        rules.push(rule);
    }
    Ok(ClassicalProgram { vocabulary: vocab, rules })
}

pub fn emit_classical(p: &ClassicalProgram) -> String {
    let v = &p.vocabulary;
    let mut out = String::new();
    for r in &p.rules {
        let head: Vec<String> = r.head.iter().map(|&l| v.literal_name(l)).collect();
        let body: Vec<String> = r
            .pos
            .iter()
            .map(|&l| v.literal_name(l))
            .chain(r.neg.iter().map(|&l| format!("not {}", v.literal_name(l))))
            .collect();
        out.push_str(&head.join(", "));
        if head.is_empty() && body.is_empty() {
            out.push_str(":- ");
        }
        if !body.is_empty() {
            if !head.is_empty() {
                out.push(' ');
            }
            write!(out, ":- {}", body.join(", ")).unwrap();
        }
        out.push_str(".\n");
    }
    out
}

// --------------------------------------------------------------- contexts

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContextFormat {
    Cxt,
    Csv,
}

pub fn parse_context(text: &str, format: ContextFormat) -> Result<FormalContext> {
    match format {
        ContextFormat::Cxt => parse_cxt(text),
        ContextFormat::Csv => parse_context_csv(text),
    }
}

/// Burmeister format: `B`, optional blank line, `|G|`, `|M|`, optional blank
/// line, object names, attribute names, then one `.`/`X` row per object.
pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let mut i = 0;
    let at = |i: usize| lines.get(i).copied();
    let eof = |i: usize| Error::syntax(i + 1, 1, "unexpected end of file");

    if at(i) != Some("B") {
        return Err(Error::syntax(1, 1, "expected `B` on the first line"));
    }
    i += 1;
    if at(i).is_some_and(|l| l.trim().is_empty()) {
        i += 1;
    }
    let count = |i: &mut usize, what: &str| -> Result<usize> {
        let l = at(*i).ok_or_else(|| eof(*i))?;
        let n = l.trim().parse().map_err(|_| Error::syntax(*i + 1, 1, format!("expected the {what} count, found `{l}`")))?;
        *i += 1;
        Ok(n)
    };
    let g = count(&mut i, "object")?;
    let m = count(&mut i, "attribute")?;
    if at(i).is_some_and(|l| l.trim().is_empty()) && g + m > 0 {
        i += 1;
    }
    let names = |i: &mut usize, k: usize| -> Result<Vec<String>> {
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let l = at(*i).ok_or_else(|| eof(*i))?;
            out.push(l.to_string());
            *i += 1;
        }
        Ok(out)
    };
    let objects = names(&mut i, g)?;
    let attributes = names(&mut i, m)?;
    let mut incidence = Vec::with_capacity(g);
    for row in 0..g {
        let l = at(i).ok_or_else(|| eof(i))?;
        let width = l.chars().count();
        if width != m {
            return Err(Error::syntax(i + 1, 1, format!("row {} has {width} cells, expected {m}", row + 1)));
        }
        let mut cells = Vec::with_capacity(m);
        for (c, ch) in l.chars().enumerate() {
            match ch {
                'X' => cells.push(true),
                '.' => cells.push(false),
                other => return Err(Error::syntax(i + 1, c + 1, format!("expected `.` or `X`, found `{other}`"))),
            }
        }
        incidence.push(cells);
        i += 1;
    }
    if let Some(extra) = lines[i.min(lines.len())..].iter().position(|l| !l.trim().is_empty()) {
        return Err(Error::syntax(i + extra + 1, 1, "unexpected content after the incidence rows"));
    }
    FormalContext::new(objects, attributes, &incidence)
}

pub fn emit_cxt(ctx: &FormalContext) -> String {
    let mut out = String::from("B\n\n");
    writeln!(out, "{}\n{}\n", ctx.objects().len(), ctx.attributes().len()).unwrap();
    for n in ctx.objects().iter().chain(ctx.attributes()) {
        writeln!(out, "{n}").unwrap();
    }
    for g in 0..ctx.objects().len() {
        let row: String = (0..ctx.attributes().len()).map(|m| if ctx.incident(g, m) { 'X' } else { '.' }).collect();
        writeln!(out, "{row}").unwrap();
    }
    out
}

/// Header row of attribute names after one leading cell, then one row per
/// object: its name and a `1`/`0` cell per attribute.
pub fn parse_context_csv(text: &str) -> Result<FormalContext> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(text.as_bytes());
    let mut records = reader.records();
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line() as usize);
        Error::syntax(line, 1, e.to_string())
    };
    let header = match records.next() {
        Some(r) => r.map_err(csv_err)?,
        None => return Err(Error::syntax(1, 1, "missing header row")),
    };
    let attributes: Vec<String> = header.iter().skip(1).map(|s| s.trim().to_string()).collect();
    let mut objects = Vec::new();
    let mut incidence = Vec::new();
    for rec in records {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != attributes.len() + 1 {
            return Err(Error::syntax(line, 1, format!("expected {} fields, found {}", attributes.len() + 1, rec.len())));
        }
        objects.push(rec[0].trim().to_string());
        let mut cells = Vec::with_capacity(attributes.len());
        for (j, cell) in rec.iter().skip(1).enumerate() {
            match cell.trim() {
                "1" => cells.push(true),
                "0" => cells.push(false),
                other => {
                    return Err(Error::syntax(line, j + 2, format!("expected `1` or `0`, found `{other}`")));
                }
            }
        }
        incidence.push(cells);
    }
    FormalContext::new(objects, attributes, &incidence)
}

pub fn emit_context_csv(ctx: &FormalContext) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(ctx.attributes().iter().cloned());
    w.write_record(&header).expect("in-memory write");
    for (g, name) in ctx.objects().iter().enumerate() {
        let mut row = vec![name.clone()];
        row.extend((0..ctx.attributes().len()).map(|m| if ctx.incident(g, m) { "1" } else { "0" }.to_string()));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Names of the elements in a set, space separated.
pub fn element_list(d: &Domain, ids: &[ElementId]) -> String {
    ids.iter().map(|&i| d.name(i)).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "elements: a b t\nle: a t\nle: b t\n";

    #[test]
    fn poset_round_trip() {
        let d = parse_poset(DIAMOND, true).unwrap();
        assert_eq!(d.len(), 4);
        let text = emit_poset(&d);
        assert_eq!(parse_poset(&text, false).unwrap(), d);
    }

    #[test]
    fn poset_errors_carry_positions() {
        let e = parse_poset("elements: a b\nle: a c\n", true).unwrap_err();
        assert_eq!(e, Error::syntax(2, 7, "unknown element `c`"));
        let e = parse_poset("elements: a\nfoo: a\n", true).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, column: 1, .. }));
        assert!(matches!(parse_poset("le: a\n", true), Err(Error::Syntax { line: 1, .. })));
        assert_eq!(parse_poset("elements: a b\nle: a b\nle: b a\n", true).unwrap_err(), Error::Cycle("a".into(), "b".into()));
        assert_eq!(parse_poset("elements: a b\n", false).unwrap_err(), Error::NoLeastElement);
    }

    #[test]
    fn poset_declared_bottom() {
        let d = parse_poset("elements: z a b # z least\nbottom: z\n", false).unwrap();
        assert_eq!(d.name(d.bottom()), "z");
    }

    #[test]
    fn clause_and_theory() {
        let d = parse_poset(DIAMOND, true).unwrap();
        assert_eq!(parse_clause("{a, b}", &d).unwrap(), Clause::new(d.set_named(&["a", "b"]).unwrap()));
        assert!(parse_clause(" {} ", &d).unwrap().is_empty());
        assert_eq!(parse_clause("{a,\n q}", &d).unwrap_err(), Error::syntax(2, 2, "unknown element `q`"));
        let t = parse_theory("# wishes\n{a}\n{b, t}\n", &d).unwrap();
        assert_eq!(t.clauses.len(), 2);
        assert_eq!(parse_theory(&emit_theory(&d, &t), &d).unwrap(), t);
    }

    #[test]
    fn domain_program_round_trip() {
        let d = parse_poset(DIAMOND, true).unwrap();
        let p = parse_program("{t} <- {a}.\n{a, b} <- {_bot_}, ~{t}. # comment\n{} <- {b}.", &d).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.rules[2].head.is_empty());
        assert_eq!(parse_program(&emit_program(&d, &p), &d).unwrap(), p);
        let e = parse_program("{t} <- {a}", &d).unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, column: 11, .. }), "{e}");
    }

    #[test]
    fn classical_programs() {
        let p = parse_classical("p :- not q.").unwrap();
        assert_eq!(p.rules.len(), 1);
        assert_eq!(p.rules[0].neg, vec![Literal::pos(1)]);
        let p = parse_classical("% choice\np, -q :- r, not -s.\n-p.\n:- p, q.\n").unwrap();
        assert_eq!(p.vocabulary.len(), 4);
        assert_eq!(p.rules[1].head, vec![Literal::neg(0)]);
        assert!(p.rules[2].head.is_empty());
        assert_eq!(parse_classical(&emit_classical(&p)).unwrap(), p);
        assert!(matches!(parse_classical("p :- q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_classical("p :- not."), Err(Error::Syntax { .. })));
        let absurd = parse_classical(":- .").unwrap();
        assert_eq!(absurd.rules, vec![ClassicalRule::default()]);
        assert_eq!(emit_classical(&absurd), ":- .\n");
        let notable = parse_classical("nothing :- notice.").unwrap();
        assert_eq!(notable.vocabulary.len(), 2);
    }

    #[test]
    fn cxt_parse_and_errors() {
        let text = "B\n\n2\n2\n\ng\nh\nm\nn\nX.\n.X\n";
        let ctx = parse_cxt(text).unwrap();
        assert!(ctx.incident(0, 0) && !ctx.incident(0, 1));
        assert_eq!(emit_cxt(&ctx), text);
        let e = parse_cxt("B\n\n2\n2\n\ng\nh\nm\nn\nX.\nX\n").unwrap_err();
        assert_eq!(e, Error::syntax(11, 1, "row 2 has 1 cells, expected 2"));
        assert!(matches!(parse_cxt("B\n2\n1\ng\nh\nm\nX\nx\n"), Err(Error::Syntax { line: 8, column: 1, .. })));
        assert!(parse_cxt("B\n1\n1\ng\nm\nX\n").is_ok());
    }

    #[test]
    fn csv_context() {
        let ctx = parse_context_csv(",m,n\ng,1,0\nh,0,1\n").unwrap();
        assert_eq!(ctx.attributes(), ["m", "n"]);
        assert_eq!(parse_context_csv(&emit_context_csv(&ctx)).unwrap(), ctx);
        assert!(matches!(parse_context_csv(",m\ng,2\n"), Err(Error::Syntax { line: 2, column: 2, .. })));
    }
}
