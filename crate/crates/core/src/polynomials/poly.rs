use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::PolyError;
use crate::Rational;

/// Names `prefix1, ..., prefixk`.
pub fn indexed_vars(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// Sparse multivariate polynomial with rational coefficients over named variables.
///
/// Exponent vectors are aligned with `vars`. Binary operations on polynomials
/// over different variable lists first merge the lists (left operand's order,
/// then new names from the right).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            let z = vec![0; p.vars.len()];
            p.terms.insert(z, c);
        }
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Polynomial::constant(vars, Rational::one())
    }

    /// The variable `vars[i]`.
    pub fn variable(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Polynomial::monomial(vars, e, Rational::one())
    }

    /// The variable called `name`, appended to `vars` if absent.
    pub fn named(mut vars: Vec<String>, name: &str) -> Self {
        let i = match vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                vars.push(name.to_string());
                vars.len() - 1
            }
        };
        Polynomial::variable(vars, i)
    }

    pub fn monomial(vars: Vec<String>, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn sum_abs_coefficients(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |s, c| s + c.abs())
    }

    /// Max exponent of variable `i` over all monomials.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Re-expresses over `vars`, which must contain every variable that occurs.
    pub fn with_vars(&self, vars: &[String]) -> Result<Polynomial, PolyError> {
        let mut pos = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => pos.push(Some(j)),
                None => {
                    if self.degree_in(i) > 0 {
                        return Err(PolyError::UnknownVariable(v.clone()));
                    }
                    pos.push(None);
                }
            }
        }
        let mut out = Polynomial::zero(vars.to_vec());
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = pos[i] {
                    f[j] = x;
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    fn unify(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (self.with_vars(&vars).expect("superset"), other.with_vars(&vars).expect("superset"))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates at `point`, indexed like `vars()`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::Arity { expected: self.vars.len(), got: point.len() });
        }
        let mut total = Rational::zero();
        let mut cache: HashMap<(usize, u32), Rational> = HashMap::new();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    let p = cache.entry((i, x)).or_insert_with(|| num::pow(point[i].clone(), x as usize));
                    m *= &*p;
                }
            }
            total += m;
        }
        Ok(total)
    }

    /// Evaluates with values looked up by variable name.
    pub fn evaluate_by(&self, value: impl Fn(&str) -> Option<Rational>) -> Result<Rational, PolyError> {
        let mut point = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match value(v) {
                Some(x) => point.push(x),
                None if self.degree_in(i) == 0 => point.push(Rational::zero()),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        self.evaluate(&point)
    }

    /// Substitutes the constant `value` for variable `i` (the variable stays in `vars`).
    pub fn substitute_value(&self, i: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let x = f[i];
            f[i] = 0;
            out.add_term(f, c * num::pow(value.clone(), x as usize));
        }
        out
    }

    /// Substitutes `num / den` for variable `i` and multiplies by `den^clear`,
    /// i.e. each monomial with exponent `a` in variable `i` becomes
    /// `num^a * den^(clear - a) * rest`.
    pub fn substitute_rational(&self, i: usize, numer: &Polynomial, denom: &Polynomial, clear: u32) -> Result<Polynomial, PolyError> {
        if denom.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let need = self.degree_in(i);
        if need > clear {
            return Err(PolyError::ClearingTooSmall { needed: need, given: clear });
        }
        let (mut base, _) = self.unify(&(numer + denom));
        let vi = &self.vars[i];
        base = base.with_vars(&base.vars.clone()).expect("same vars");
        let i = base.var_index(vi).expect("present");
        let (nu, _) = numer.unify(&base);
        let (de, _) = denom.unify(&base);
        let nu = nu.with_vars(&base.vars).expect("vars");
        let de = de.with_vars(&base.vars).expect("vars");
        let num_pows: Vec<Polynomial> = power_table(&nu, need);
        let den_pows: Vec<Polynomial> = power_table(&de, clear);
        let mut out = Polynomial::zero(base.vars.clone());
        for (e, c) in &base.terms {
            let a = e[i];
            let mut f = e.clone();
            f[i] = 0;
            let rest = Polynomial::monomial(base.vars.clone(), f, c.clone());
            out = &out + &(&(&rest * &num_pows[a as usize]) * &den_pows[(clear - a) as usize]);
        }
        Ok(out)
    }
}

fn power_table(p: &Polynomial, max: u32) -> Vec<Polynomial> {
    let mut t = vec![Polynomial::one(p.vars.clone())];
    for k in 1..=max as usize {
        let next = &t[k - 1] * p;
        t.push(next);
    }
    t
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut a, b) = self.unify(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (a, b) = self.unify(rhs);
        let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Polynomial::from_terms(a.vars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Terms by descending degree, then descending exponent vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if is_const || !mag.is_one() {
                parts.push(mag.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], x)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.vars.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn x() -> Polynomial {
        Polynomial::named(vec!["x".into(), "y".into()], "x")
    }
    fn y() -> Polynomial {
        Polynomial::named(vec!["x".into(), "y".into()], "y")
    }

    #[test]
    fn arithmetic_identities() {
        let one = Polynomial::one(vec!["x".into(), "y".into()]);
        let sq = (&one - &x()).pow(2);
        assert_eq!(sq.evaluate(&[rat(1, 2), rat(0, 1)]).unwrap(), rat(1, 4));
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &x().pow(2) - &y().pow(2));
        assert!((&x() - &x()).is_zero());
    }

    #[test]
    fn clearing_substitution() {
        let vars = vec!["x".to_string(), "e".to_string(), "v".to_string()];
        let x2 = Polynomial::variable(vars.clone(), 0).pow(2);
        let e = Polynomial::variable(vars.clone(), 1);
        let v2 = Polynomial::variable(vars.clone(), 2).pow(2);
        let out = x2.substitute_rational(0, &e, &v2, 2).unwrap();
        assert_eq!(out, e.pow(2));
        assert!(x2.substitute_rational(0, &e, &v2, 1).is_err());
        assert_eq!(x2.substitute_rational(0, &e, &Polynomial::zero(vars), 2), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn mixed_variable_lists_merge() {
        let a = Polynomial::named(vec!["a".into()], "a");
        let b = Polynomial::named(vec!["b".into()], "b");
        let s = &a + &b;
        assert_eq!(s.vars(), &["a".to_string(), "b".to_string()]);
        assert_eq!(s.evaluate(&[rat(1, 1), rat(2, 1)]).unwrap(), rat(3, 1));
    }

    #[test]
    fn display_orders_terms() {
        let p = &(&x().pow(2).scale(&rat(3, 2)) - &y()) + &Polynomial::constant(vec!["x".into(), "y".into()], rat(-1, 1));
        assert_eq!(p.to_string(), "3/2*x^2 - y - 1");
    }
}
