use super::cursor::{Cursor, ParseError};
use crate::polynomials::Polynomial;
use crate::Rational;

enum Ast {
    Num(Rational),
    Var(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

fn expr(c: &mut Cursor) -> Result<Ast, ParseError> {
    let mut acc = term(c)?;
    loop {
        if c.eat("+") {
            acc = Ast::Add(Box::new(acc), Box::new(term(c)?));
        } else if c.eat("-") {
            acc = Ast::Sub(Box::new(acc), Box::new(term(c)?));
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor) -> Result<Ast, ParseError> {
    let mut acc = unary(c)?;
    while c.eat("*") {
        acc = Ast::Mul(Box::new(acc), Box::new(unary(c)?));
    }
    Ok(acc)
}

fn unary(c: &mut Cursor) -> Result<Ast, ParseError> {
    if c.eat("-") {
        return Ok(Ast::Neg(Box::new(unary(c)?)));
    }
    let base = atom(c)?;
    if c.eat("^") {
        let at = c.pos();
        let k = c.uint()?;
        return Ok(Ast::Pow(Box::new(base), u32::try_from(k).map_err(|_| at.error("exponent too large"))?));
    }
    Ok(base)
}

fn atom(c: &mut Cursor) -> Result<Ast, ParseError> {
    if c.eat("(") {
        let e = expr(c)?;
        c.expect(")")?;
        return Ok(e);
    }
    if c.peek_rational_start() {
        return Ok(Ast::Num(c.rational()?));
    }
    Ok(Ast::Var(c.word()?))
}

fn collect<'a>(a: &'a Ast, out: &mut Vec<&'a str>) {
    match a {
        Ast::Num(_) => {}
        Ast::Var(v) => out.push(v),
        Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) => {
            collect(x, out);
            collect(y, out);
        }
        Ast::Neg(x) | Ast::Pow(x, _) => collect(x, out),
    }
}

fn build(a: &Ast, vars: &[String]) -> Polynomial {
    match a {
        Ast::Num(r) => Polynomial::constant(vars.to_vec(), r.clone()),
        Ast::Var(v) => Polynomial::named(vars.to_vec(), v),
        Ast::Add(x, y) => &build(x, vars) + &build(y, vars),
        Ast::Sub(x, y) => &build(x, vars) - &build(y, vars),
        Ast::Mul(x, y) => &build(x, vars) * &build(y, vars),
        Ast::Neg(x) => -&build(x, vars),
        Ast::Pow(x, k) => build(x, vars).pow(*k),
    }
}

// x2 before x10
fn natural_key(v: &str) -> (String, u64, String) {
    let split = v.trim_end_matches(|ch: char| ch.is_ascii_digit()).len();
    (v[..split].to_string(), v[split..].parse().unwrap_or(0), v.to_string())
}

/// Parses `+ - * ^`, parentheses, rational literals `a/b` and variable
/// names. Variables are sorted by name, numeric suffixes compared as numbers.
pub fn parse_polynomial(s: &str) -> Result<Polynomial, ParseError> {
    let mut c = Cursor::new(s);
    let ast = expr(&mut c)?;
    c.expect_end()?;
    let mut names = Vec::new();
    collect(&ast, &mut names);
    let mut vars: Vec<String> = names.into_iter().map(String::from).collect();
    vars.sort_by_key(|v| natural_key(v));
    vars.dedup();
    Ok(build(&ast, &vars))
}
