use num::{One, Zero};

use super::{PolyError, Polynomial};
use crate::Rational;

/// An unexpanded polynomial: products of powers stay factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Leaf(Polynomial),
    Sum(Vec<PolyExpr>),
    Product(Vec<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn expand(&self) -> Polynomial {
        match self {
            PolyExpr::Leaf(p) => p.clone(),
            PolyExpr::Sum(xs) => xs.iter().fold(Polynomial::zero(Vec::new()), |acc, x| &acc + &x.expand()),
            PolyExpr::Product(xs) => xs.iter().fold(Polynomial::one(Vec::new()), |acc, x| &acc * &x.expand()),
            PolyExpr::Pow(x, k) => x.expand().pow(*k),
        }
    }

    /// Variable names in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            PolyExpr::Leaf(p) => {
                for v in p.vars() {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            }
            PolyExpr::Sum(xs) | PolyExpr::Product(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            PolyExpr::Pow(x, _) => x.collect_vars(out),
        }
    }

    pub fn evaluate_by(&self, value: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational, PolyError> {
        Ok(match self {
            PolyExpr::Leaf(p) => p.evaluate_by(value)?,
            PolyExpr::Sum(xs) => {
                let mut s = Rational::zero();
                for x in xs {
                    s += x.evaluate_by(value)?;
                }
                s
            }
            PolyExpr::Product(xs) => {
                let mut s = Rational::one();
                for x in xs {
                    s *= x.evaluate_by(value)?;
                }
                s
            }
            PolyExpr::Pow(x, k) => num::pow(x.evaluate_by(value)?, *k as usize),
        })
    }

    pub fn is_zero(&self) -> bool {
        !self.degree_info().1
    }

    /// Exact total degree (the zero polynomial has degree 0). Expands only
    /// when the leading parts of a sum might cancel.
    pub fn degree(&self) -> u32 {
        self.degree_info().0
    }

    // (degree, known nonzero)
    fn degree_info(&self) -> (u32, bool) {
        match self {
            PolyExpr::Leaf(p) => (p.degree(), !p.is_zero()),
            PolyExpr::Product(xs) => {
                let mut d = 0;
                for x in xs {
                    let (dx, nz) = x.degree_info();
                    if !nz {
                        return (0, false);
                    }
                    d += dx;
                }
                (d, true)
            }
            PolyExpr::Pow(x, k) => {
                let (d, nz) = x.degree_info();
                if !nz {
                    return if *k == 0 { (0, true) } else { (0, false) };
                }
                (d * k, true)
            }
            PolyExpr::Sum(xs) => {
                let infos: Vec<_> = xs.iter().map(|x| x.degree_info()).filter(|i| i.1).collect();
                let top = infos.iter().map(|i| i.0).max();
                match top {
                    None => (0, false),
                    Some(t) if infos.iter().filter(|i| i.0 == t).count() == 1 => (t, true),
                    Some(_) => {
                        let p = self.expand();
                        (p.degree(), !p.is_zero())
                    }
                }
            }
        }
    }
}

impl From<Polynomial> for PolyExpr {
    fn from(p: Polynomial) -> Self {
        PolyExpr::Leaf(p)
    }
}
