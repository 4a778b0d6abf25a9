//! Plain-text formats for graphs, quantum graphs, polynomials, expressions,
//! graphons, certificates and proofs.
//!
//! All formats ignore whitespace and `#` comments. A partially labeled graph
//! is written `[n: a-b c-d | label=vertex ...]` with 0-based vertices, e.g.
//! `[3: 0-1 1-2 | 1=1]` is a path with its middle vertex labeled 1.

mod cursor;
mod poly;

use std::collections::BTreeSet;
use std::fmt::Write as _;

pub use cursor::ParseError;
use cursor::Cursor;
pub use poly::parse_polynomial;

use crate::algebra::{QExpr, QuantumGraph};
use crate::certificates::{CsProof, Justification, ProofLine, SosCertificate};
use crate::density::StepGraphon;
use crate::graphs::{Graph, Label, Plg};
use crate::Rational;

fn parse_all<T>(s: &str, f: impl FnOnce(&mut Cursor) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let mut c = Cursor::new(s);
    let v = f(&mut c)?;
    c.expect_end()?;
    Ok(v)
}

fn plg(c: &mut Cursor) -> Result<Plg, ParseError> {
    c.expect("[")?;
    let n = c.uint()? as usize;
    c.expect(":")?;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    loop {
        if c.eat("]") {
            break;
        }
        if c.eat("|") {
            while !c.eat("]") {
                let at = c.pos();
                let l = c.uint()?;
                c.expect("=")?;
                let v = c.uint()? as usize;
                labels.push((Label::try_from(l).map_err(|_| at.error("label too large"))?, v));
            }
            break;
        }
        let a = c.uint()? as usize;
        c.expect("-")?;
        let b = c.uint()? as usize;
        edges.push((a, b));
    }
    let at = c.pos();
    let g = Graph::new(n, &edges).map_err(|e| at.error(e.to_string()))?;
    Plg::new(g, labels).map_err(|e| at.error(e.to_string()))
}

fn label_set(c: &mut Cursor, open: &str, close: &str) -> Result<BTreeSet<Label>, ParseError> {
    c.expect(open)?;
    let mut t = BTreeSet::new();
    while !c.eat(close) {
        let at = c.pos();
        let l = c.uint()?;
        t.insert(Label::try_from(l).map_err(|_| at.error("label too large"))?);
        c.eat(",");
    }
    Ok(t)
}

fn qexpr(c: &mut Cursor) -> Result<QExpr, ParseError> {
    if c.peek_rational_start() {
        return Ok(QExpr::Const(c.rational()?));
    }
    c.expect("(")?;
    let at = c.pos();
    let head = c.word()?;
    let e = match head.as_str() {
        "const" => QExpr::Const(c.rational()?),
        "atom" => QExpr::Atom(plg(c)?),
        "ind" => QExpr::IndAtom(plg(c)?),
        "sum" | "prod" => {
            let mut xs = Vec::new();
            while !c.peek(")") {
                xs.push(qexpr(c)?);
            }
            if head == "sum" {
                QExpr::Sum(xs)
            } else {
                QExpr::Product(xs)
            }
        }
        "pow" => {
            let x = qexpr(c)?;
            let k = c.uint()?;
            QExpr::Pow(Box::new(x), u32::try_from(k).map_err(|_| at.error("exponent too large"))?)
        }
        "unlabel" => {
            let t = label_set(c, "(", ")")?;
            QExpr::Unlabel(t, Box::new(qexpr(c)?))
        }
        other => return Err(at.error(format!("unknown expression head `{other}`"))),
    };
    c.expect(")")?;
    Ok(e)
}

fn quantum_terms(c: &mut Cursor) -> Result<QuantumGraph, ParseError> {
    let mut q = QuantumGraph::zero();
    while c.peek_rational_start() {
        let r = c.rational()?;
        let p = plg(c)?;
        q = &q + &QuantumGraph::term(&p, r);
    }
    Ok(q)
}

pub fn parse_plg(s: &str) -> Result<Plg, ParseError> {
    parse_all(s, plg)
}

/// A graph, optionally followed by `weights r1 r2 ...`.
pub fn parse_target(s: &str) -> Result<(Graph, Option<Vec<Rational>>), ParseError> {
    parse_all(s, |c| {
        let at = c.pos();
        let p = plg(c)?;
        if !p.labels().is_empty() {
            return Err(at.error("a target graph cannot carry labels"));
        }
        let w = if c.eat_word("weights") {
            let mut w = Vec::new();
            while c.peek_rational_start() {
                w.push(c.rational()?);
            }
            Some(w)
        } else {
            None
        };
        Ok((p.graph().clone(), w))
    })
}

/// Terms `coefficient [plg]`, optionally after a `qg` header.
pub fn parse_quantum(s: &str) -> Result<QuantumGraph, ParseError> {
    parse_all(s, |c| {
        c.eat_word("qg");
        quantum_terms(c)
    })
}

pub fn parse_qexpr(s: &str) -> Result<QExpr, ParseError> {
    parse_all(s, qexpr)
}

/// `graphon measures m1 .. mk values v11 v12 .. vkk` (row-major).
pub fn parse_graphon(s: &str) -> Result<StepGraphon, ParseError> {
    parse_all(s, |c| {
        c.expect_word("graphon")?;
        c.expect_word("measures")?;
        let mut m = Vec::new();
        while c.peek_rational_start() {
            m.push(c.rational()?);
        }
        c.expect_word("values")?;
        let at = c.pos();
        let k = m.len();
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let mut row = Vec::with_capacity(k);
            for _ in 0..k {
                row.push(c.rational()?);
            }
            rows.push(row);
        }
        StepGraphon::new(m, rows).map_err(|e| at.error(e.to_string()))
    })
}

fn record(c: &mut Cursor) -> Result<QExpr, ParseError> {
    if c.peek("(") {
        qexpr(c)
    } else {
        Ok(QExpr::from(&quantum_terms(c)?))
    }
}

/// `sos:` followed by records, each `square` and then either quantum-graph
/// terms or an expression.
pub fn parse_sos(s: &str) -> Result<SosCertificate, ParseError> {
    parse_all(s, |c| {
        c.expect_word("sos")?;
        c.expect(":")?;
        let at = c.pos();
        let mut squares = Vec::new();
        while c.eat_word("square") {
            squares.push(record(c)?);
        }
        SosCertificate::new(squares).map_err(|e| at.error(e.to_string()))
    })
}

/// Proof lines `n: <statement> ; by <rule>`, numbered from 1. A statement is
/// an expression, quantum-graph terms in braces `{ 1 [2: 0-1] }`, or `@path`,
/// which `resolve` turns into an expression.
pub fn parse_proof(s: &str, resolve: &dyn Fn(&str) -> Result<QExpr, String>) -> Result<CsProof, ParseError> {
    parse_all(s, |c| {
        let mut lines = Vec::new();
        while !c.at_end() {
            let at = c.pos();
            let n = c.uint()? as usize;
            if n != lines.len() + 1 {
                return Err(at.error(format!("expected line number {}, found {n}", lines.len() + 1)));
            }
            c.expect(":")?;
            let statement = if c.eat("@") {
                let at = c.pos();
                let path = c.until(&[';'])?;
                resolve(path.trim()).map_err(|e| at.error(e))?
            } else if c.eat("{") {
                let q = quantum_terms(c)?;
                c.expect("}")?;
                QExpr::from(&q)
            } else {
                qexpr(c)?
            };
            c.expect(";")?;
            c.expect_word("by")?;
            let at = c.pos();
            let rule = c.word()?;
            c.expect("(")?;
            let by = match rule.as_str() {
                "A1" => Justification::A1(qexpr(c)?),
                "A2" => {
                    let f1 = qexpr(c)?;
                    c.expect(",")?;
                    let f2 = qexpr(c)?;
                    c.expect(",")?;
                    c.expect_word("T")?;
                    c.expect("=")?;
                    Justification::A2(f1, f2, label_set(c, "{", "}")?)
                }
                "R1" => {
                    let i = c.uint()? as usize;
                    c.expect(",")?;
                    let j = c.uint()? as usize;
                    c.expect(",")?;
                    let a = c.rational()?;
                    c.expect(",")?;
                    let b = c.rational()?;
                    Justification::R1 { i, j, a, b }
                }
                "R2" => {
                    let i = c.uint()? as usize;
                    c.expect(",")?;
                    Justification::R2 { i, j: c.uint()? as usize }
                }
                "R3" => {
                    let i = c.uint()? as usize;
                    c.expect(",")?;
                    c.expect_word("T")?;
                    c.expect("=")?;
                    Justification::R3 { i, t: label_set(c, "{", "}")? }
                }
                other => return Err(at.error(format!("unknown rule `{other}`"))),
            };
            c.expect(")")?;
            lines.push(ProofLine { statement, by });
        }
        Ok(CsProof { lines })
    })
}

/// `[n: edges | labels]`.
pub fn format_plg(p: &Plg) -> String {
    let mut s = format!("[{}:", p.order());
    for (a, b) in p.graph().edges() {
        let _ = write!(s, " {a}-{b}");
    }
    if !p.labels().is_empty() {
        s.push_str(" |");
        for (l, v) in p.labels() {
            let _ = write!(s, " {l}={v}");
        }
    }
    s.push(']');
    s
}

pub fn format_graph(g: &Graph) -> String {
    format_plg(&Plg::unlabeled(g.clone()))
}

pub fn format_target(g: &Graph, weights: Option<&[Rational]>) -> String {
    let mut s = format_graph(g);
    if let Some(w) = weights {
        s.push_str("\nweights");
        for x in w {
            let _ = write!(s, " {x}");
        }
    }
    s.push('\n');
    s
}

/// `qg` header, then one `coefficient [plg]` line per term in normal form.
pub fn format_quantum(q: &QuantumGraph) -> String {
    let mut s = String::from("qg\n");
    for (p, c) in q.terms() {
        let _ = writeln!(s, "{c} {}", format_plg(p));
    }
    s
}

fn write_qexpr(e: &QExpr, s: &mut String) {
    match e {
        QExpr::Const(c) => {
            let _ = write!(s, "{c}");
        }
        QExpr::Atom(p) => {
            let _ = write!(s, "(atom {})", format_plg(p));
        }
        QExpr::IndAtom(p) => {
            let _ = write!(s, "(ind {})", format_plg(p));
        }
        QExpr::Sum(xs) | QExpr::Product(xs) => {
            s.push_str(if matches!(e, QExpr::Sum(_)) { "(sum" } else { "(prod" });
            for x in xs {
                s.push(' ');
                write_qexpr(x, s);
            }
            s.push(')');
        }
        QExpr::Pow(x, k) => {
            s.push_str("(pow ");
            write_qexpr(x, s);
            let _ = write!(s, " {k})");
        }
        QExpr::Unlabel(t, x) => {
            s.push_str("(unlabel (");
            let ls: Vec<String> = t.iter().map(|l| l.to_string()).collect();
            s.push_str(&ls.join(" "));
            s.push_str(") ");
            write_qexpr(x, s);
            s.push(')');
        }
    }
}

pub fn format_qexpr(e: &QExpr) -> String {
    let mut s = String::new();
    write_qexpr(e, &mut s);
    s
}

pub fn format_graphon(w: &StepGraphon) -> String {
    let mut s = String::from("graphon\nmeasures");
    for m in w.measures() {
        let _ = write!(s, " {m}");
    }
    s.push_str("\nvalues\n");
    for row in w.values() {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", r.join(" "));
    }
    s
}

pub fn format_sos(cert: &SosCertificate) -> String {
    let mut s = String::from("sos:\n");
    for g in cert.squares() {
        // a bare rational would read back as the start of a term list
        let body = match g {
            QExpr::Const(c) => format!("(const {c})"),
            _ => format_qexpr(g),
        };
        let _ = writeln!(s, "square {body}");
    }
    s
}

fn format_labels(t: &BTreeSet<Label>) -> String {
    let ls: Vec<String> = t.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", ls.join(","))
}

pub fn format_proof(p: &CsProof) -> String {
    let mut s = String::new();
    for (i, line) in p.lines.iter().enumerate() {
        let by = match &line.by {
            Justification::A1(f) => format!("A1({})", format_qexpr(f)),
            Justification::A2(f1, f2, t) => format!("A2({}, {}, T={})", format_qexpr(f1), format_qexpr(f2), format_labels(t)),
            Justification::R1 { i, j, a, b } => format!("R1({i}, {j}, {a}, {b})"),
            Justification::R2 { i, j } => format!("R2({i}, {j})"),
            Justification::R3 { i, t } => format!("R3({i}, T={})", format_labels(t)),
        };
        let _ = writeln!(s, "{}: {} ; by {by}", i + 1, format_qexpr(&line.statement));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate_plgs;
    use crate::rat;

    #[test]
    fn plg_round_trip() {
        for p in enumerate_plgs(&[1, 3], 2).unwrap() {
            assert_eq!(parse_plg(&format_plg(&p)).unwrap(), p);
        }
        let p = parse_plg(" [3: 0-1 1-2 # path\n | 1=1 ]").unwrap();
        assert_eq!(p.vertex_of(1), Some(1));
        assert_eq!(parse_plg("[0:]").unwrap(), Plg::empty());
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_plg("[3: 0-1\n 1-7]").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_qexpr("(sum (foo))").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        assert!(parse_quantum("1 [2: 0-1] extra").is_err());
    }

    #[test]
    fn expression_round_trip() {
        let src = "(unlabel () (sum (prod -3/2 (ind [2: 0-1 | 1=0 2=1])) (pow (atom [2: 0-1 | 1=0]) 2) 1))";
        let e = parse_qexpr(src).unwrap();
        assert_eq!(format_qexpr(&e), src);
        let q = parse_quantum("qg\n1/2 [3: 0-1 1-2]\n-1 [2: 0-1]").unwrap();
        assert_eq!(parse_quantum(&format_quantum(&q)).unwrap(), q);
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn target_and_graphon() {
        let (g, w) = parse_target("[3: 0-1 0-2 1-2] weights 1/2 1/4 1/4").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
        assert_eq!(w.unwrap()[0], rat(1, 2));
        assert!(parse_target("[2: 0-1 | 1=0]").is_err());
        let w = StepGraphon::from_graph(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(parse_graphon(&format_graphon(&w)).unwrap(), w);
    }

    #[test]
    fn certificate_and_proof() {
        let cert = parse_sos("sos:\nsquare 1 [2: 0-1 | 1=0]\nsquare (atom [1: | 1=0])").unwrap();
        assert_eq!(cert.squares().len(), 2);
        assert_eq!(parse_sos(&format_sos(&cert)).unwrap(), cert);
        let src = "1: (pow (atom [2: 0-1 | 1=0]) 2) ; by A1((atom [2: 0-1 | 1=0]))\n2: { 1 [3: 0-1 1-2] } ; by R3(1, T={})\n";
        let none = |_: &str| -> Result<QExpr, String> { Err("no files".into()) };
        let p = parse_proof(src, &none).unwrap();
        assert_eq!(p.lines.len(), 2);
        assert_eq!(parse_proof(&format_proof(&p), &none).unwrap(), p);
        assert!(parse_proof("2: 1 ; by R2(1, 1)", &none).is_err());
        assert!(parse_proof("1: @x.qg ; by R2(1, 1)", &none).is_err());
    }
}
