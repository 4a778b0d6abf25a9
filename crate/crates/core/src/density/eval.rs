use std::collections::BTreeSet;

use num::{BigInt, BigUint, One, Zero};

use super::count::{count_extensions, BigWeights, IntWeights, SymbolicWeights};
use super::{DensityError, RootMap, WeightedGraph};
use crate::algebra::{QExpr, QuantumGraph};
use crate::graphs::{bits, Graph, Label, Plg};
use crate::polynomials::{indexed_vars, Polynomial};
use crate::Rational;

/// Default cap on labels summed over by one unlabeling node.
pub const DEFAULT_FREE_LABEL_CAP: usize = 8;

/// Density polynomial in `y1..yn`, one variable per target vertex.
pub type DensityPolynomial = Polynomial;

fn roots_for(p: &Plg, phi: &RootMap) -> Result<Vec<usize>, DensityError> {
    p.labels().iter().map(|&(l, _)| phi.get(l).ok_or(DensityError::LabelNotCovered(l))).collect()
}

fn rational(n: BigUint, d: BigUint) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Probability that the `y`-random extension of the roots is a homomorphism
/// (`exact = false`) or preserves adjacency and non-adjacency (`exact = true`).
pub(crate) fn pattern_value(p: &Plg, g: &WeightedGraph, roots: &[usize], exact: bool) -> Result<Rational, DensityError> {
    let u = (p.order() - p.labels().len()) as u32;
    let (ints, denom) = g.integer_weights();
    if let Some(small) = g.small_weights() {
        match count_extensions(p, g.graph(), roots, exact, &IntWeights::new(small)) {
            Ok(c) => return Ok(rational(BigUint::from(c), num::pow(denom.clone(), u as usize))),
            Err(DensityError::CountOverflow) => {}
            Err(e) => return Err(e),
        }
    }
    let big = BigWeights { w: ints.to_vec(), support: g.support() };
    let c = count_extensions(p, g.graph(), roots, exact, &big)?;
    Ok(rational(c, num::pow(denom.clone(), u as usize)))
}

/// Number of homomorphisms from `h` to `g`.
pub fn hom_count(h: &Graph, g: &Graph) -> Result<u128, DensityError> {
    let ones = vec![1u128; g.order()];
    count_extensions(&Plg::unlabeled(h.clone()), g, &[], false, &IntWeights::new(&ones))
}

fn uniform_or_trivial(h: &Graph, g: &Graph) -> Result<Option<WeightedGraph>, DensityError> {
    if h.order() == 0 {
        return Ok(None);
    }
    Ok(Some(WeightedGraph::uniform(g.clone())?))
}

/// Homomorphism density. `t(∅; g) = 1`; a nonempty `h` into the empty graph is an error.
pub fn t(h: &Graph, g: &Graph) -> Result<Rational, DensityError> {
    match uniform_or_trivial(h, g)? {
        None => Ok(Rational::one()),
        Some(w) => pattern_value(&Plg::unlabeled(h.clone()), &w, &[], false),
    }
}

/// Probability that a uniformly random map preserves both adjacency and
/// non-adjacency (images of non-adjacent vertices may coincide).
pub fn t_ind(h: &Graph, g: &Graph) -> Result<Rational, DensityError> {
    match uniform_or_trivial(h, g)? {
        None => Ok(Rational::one()),
        Some(w) => pattern_value(&Plg::unlabeled(h.clone()), &w, &[], true),
    }
}

/// Injective homomorphism density; 0 when `g` has fewer vertices than `h`.
pub fn t_inj(h: &Graph, g: &Graph) -> Result<Rational, DensityError> {
    let (k, n) = (h.order(), g.order());
    if k == 0 {
        return Ok(Rational::one());
    }
    if n < k {
        return Ok(Rational::zero());
    }
    fn rec(h: &Graph, g: &Graph, i: usize, img: &mut Vec<usize>, used: u128, out: &mut u128) -> Result<(), DensityError> {
        if i == h.order() {
            *out = out.checked_add(1).ok_or(DensityError::CountOverflow)?;
            return Ok(());
        }
        let mut cand = crate::graphs::full_mask(g.order()) & !used;
        for j in 0..i {
            if h.has_edge(i, j) {
                cand &= g.row(img[j]);
            }
        }
        for v in bits(cand) {
            img[i] = v;
            rec(h, g, i + 1, img, used | (1u128 << v), out)?;
        }
        Ok(())
    }
    let mut count = 0u128;
    rec(h, g, 0, &mut vec![0; k], 0, &mut count)?;
    let falling: BigUint = (0..k).fold(BigUint::one(), |a, i| a * BigUint::from((n - i) as u64));
    Ok(rational(BigUint::from(count), falling))
}

/// `|t(h;g) − t_inj(h;g)| ≤ C(|V(h)|, 2) / |V(g)|`.
pub fn check_tasym(h: &Graph, g: &Graph) -> Result<bool, DensityError> {
    let k = h.order() as i64;
    if k == 0 {
        return Ok(true);
    }
    let diff = t(h, g)? - t_inj(h, g)?;
    let bound = Rational::new((k * (k - 1) / 2).into(), (g.order() as i64).into());
    Ok(num::abs(diff) <= bound)
}

/// `t(h; G, y, φ)`: the labels of `h` go to their `φ` images, every other
/// vertex to an independent `y`-random vertex.
pub fn t_rooted(h: &Plg, g: &WeightedGraph, phi: &RootMap) -> Result<Rational, DensityError> {
    let labels = h.label_set();
    if phi.domain() != labels {
        return Err(DensityError::RootDomain { expected: labels.into_iter().collect(), got: phi.domain().into_iter().collect() });
    }
    phi.check_range(g.order())?;
    pattern_value(h, g, &roots_for(h, phi)?, false)
}

/// Linear extension to quantum graphs; each term sees `φ` restricted to its labels.
pub fn t_quantum(f: &QuantumGraph, g: &WeightedGraph, phi: &RootMap) -> Result<Rational, DensityError> {
    phi.check_range(g.order())?;
    let mut total = Rational::zero();
    for (p, c) in f.terms() {
        total += c * pattern_value(p, g, &roots_for(p, phi)?, false)?;
    }
    Ok(total)
}

/// `t(f; g)` for an unlabeled quantum graph and the uniform distribution.
pub fn t_graph(f: &QuantumGraph, g: &Graph) -> Result<Rational, DensityError> {
    if g.order() == 0 {
        let mut total = Rational::zero();
        for (p, c) in f.terms() {
            if p.order() > 0 {
                return Err(DensityError::EmptyTarget);
            }
            total += c;
        }
        return Ok(total);
    }
    t_quantum(f, &WeightedGraph::uniform(g.clone())?, &RootMap::empty())
}

/// Value domain for structural evaluation.
trait Domain {
    type V: Clone;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    fn constant(&self, c: &Rational) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn is_zero(&self, a: &Self::V) -> bool;
    fn atom(&self, p: &Plg, roots: &[usize], exact: bool) -> Result<Self::V, DensityError>;
    /// The weight `y_v` of a resampled root.
    fn vertex_weight(&self, v: usize) -> Self::V;
    fn graph(&self) -> &Graph;
    fn support(&self) -> u128;
    fn pow(&self, a: &Self::V, k: u32) -> Self::V {
        let mut out = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }
}

struct Numeric<'a> {
    g: &'a WeightedGraph,
}

impl Domain for Numeric<'_> {
    type V = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn constant(&self, c: &Rational) -> Rational {
        c.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn atom(&self, p: &Plg, roots: &[usize], exact: bool) -> Result<Rational, DensityError> {
        pattern_value(p, self.g, roots, exact)
    }
    fn vertex_weight(&self, v: usize) -> Rational {
        self.g.weights()[v].clone()
    }
    fn graph(&self) -> &Graph {
        self.g.graph()
    }
    fn support(&self) -> u128 {
        self.g.support()
    }
}

struct Symbolic<'a> {
    g: &'a Graph,
    vars: Vec<String>,
}

impl Domain for Symbolic<'_> {
    type V = Polynomial;
    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.vars.clone())
    }
    fn one(&self) -> Polynomial {
        Polynomial::one(self.vars.clone())
    }
    fn constant(&self, c: &Rational) -> Polynomial {
        Polynomial::constant(self.vars.clone(), c.clone())
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a + b
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a * b
    }
    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }
    fn atom(&self, p: &Plg, roots: &[usize], exact: bool) -> Result<Polynomial, DensityError> {
        let m = count_extensions(p, self.g, roots, exact, &SymbolicWeights { n: self.g.order() })?;
        Ok(Polynomial::from_terms(
            self.vars.clone(),
            m.into_iter().map(|(e, c)| (e.into_iter().map(u32::from).collect(), Rational::from_integer(BigInt::from(c)))),
        ))
    }
    fn vertex_weight(&self, v: usize) -> Polynomial {
        Polynomial::variable(self.vars.clone(), v)
    }
    fn graph(&self) -> &Graph {
        self.g
    }
    fn support(&self) -> u128 {
        crate::graphs::full_mask(self.g.order())
    }
}

fn eval<D: Domain>(d: &D, e: &QExpr, phi: &RootMap, cap: usize) -> Result<D::V, DensityError> {
    match e {
        QExpr::Const(c) => Ok(d.constant(c)),
        QExpr::Atom(p) => d.atom(p, &roots_for(p, phi)?, false),
        QExpr::IndAtom(p) => d.atom(p, &roots_for(p, phi)?, true),
        QExpr::Sum(xs) => {
            let mut acc = d.zero();
            for x in xs {
                acc = d.add(&acc, &eval(d, x, phi, cap)?);
            }
            Ok(acc)
        }
        QExpr::Product(xs) => {
            let mut acc = d.one();
            for x in xs {
                let v = eval(d, x, phi, cap)?;
                if d.is_zero(&v) {
                    return Ok(d.zero());
                }
                acc = d.mul(&acc, &v);
            }
            Ok(acc)
        }
        QExpr::Pow(x, k) => {
            if *k == 0 {
                return Ok(d.one());
            }
            Ok(d.pow(&eval(d, x, phi, cap)?, *k))
        }
        QExpr::Unlabel(keep, x) => eval_unlabel(d, keep, x, phi, cap),
    }
}

fn eval_unlabel<D: Domain>(d: &D, keep: &BTreeSet<Label>, x: &QExpr, phi: &RootMap, cap: usize) -> Result<D::V, DensityError> {
    let inner = x.labels();
    let fixed: BTreeSet<Label> = inner.intersection(keep).copied().collect();
    let free: Vec<Label> = inner.difference(keep).copied().collect();
    if free.len() > cap {
        return Err(DensityError::FreeLabelCap { free: free.len(), cap });
    }
    let mut psi = phi.restrict(&fixed);
    for &l in &fixed {
        if psi.get(l).is_none() {
            return Err(DensityError::LabelNotCovered(l));
        }
    }
    let constraint = x.exact_constraint();
    let g = d.graph();
    let adjacent = |a: usize, b: usize| a != b && g.has_edge(a, b);
    for (&(a, b), &want) in &constraint.pairs {
        if let (Some(u), Some(v)) = (psi.get(a), psi.get(b)) {
            if adjacent(u, v) != want {
                return Ok(d.zero());
            }
        }
    }
    // constraint pairs linking each free label to fixed or earlier free labels
    let checks: Vec<Vec<(Label, bool)>> = free
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            constraint
                .pairs
                .iter()
                .filter_map(|(&(a, b), &want)| {
                    let other = if a == l { b } else if b == l { a } else { return None };
                    let known = fixed.contains(&other) || free[..i].contains(&other);
                    known.then_some((other, want))
                })
                .collect()
        })
        .collect();
    let mut acc = d.zero();
    unlabel_rec(d, x, &free, &checks, 0, &mut psi, &d.one(), &mut acc, cap)?;
    Ok(acc)
}

#[allow(clippy::too_many_arguments)]
fn unlabel_rec<D: Domain>(
    d: &D,
    x: &QExpr,
    free: &[Label],
    checks: &[Vec<(Label, bool)>],
    i: usize,
    psi: &mut RootMap,
    weight: &D::V,
    acc: &mut D::V,
    cap: usize,
) -> Result<(), DensityError> {
    if i == free.len() {
        let v = eval(d, x, psi, cap)?;
        if !d.is_zero(&v) {
            *acc = d.add(acc, &d.mul(weight, &v));
        }
        return Ok(());
    }
    let g = d.graph();
    let mut cand = d.support();
    for &(other, want) in &checks[i] {
        let u = psi.get(other).expect("assigned");
        if want {
            cand &= g.row(u);
        } else {
            cand &= !g.row(u);
        }
    }
    for v in bits(cand) {
        psi.insert(free[i], v);
        let w = d.mul(weight, &d.vertex_weight(v));
        unlabel_rec(d, x, free, checks, i + 1, psi, &w, acc, cap)?;
    }
    psi.0.remove(&free[i]);
    Ok(())
}

fn covered(e_labels: &BTreeSet<Label>, phi: &RootMap) -> Result<(), DensityError> {
    match e_labels.iter().find(|l| phi.get(**l).is_none()) {
        Some(&l) => Err(DensityError::LabelNotCovered(l)),
        None => Ok(()),
    }
}

/// Structural evaluation of an expression: products multiply, unlabeling
/// nodes average over `y`-random images of the forgotten labels, and
/// `IndAtom(H)` is the probability that the random extension is exact.
pub fn t_expr(e: &QExpr, g: &WeightedGraph, phi: &RootMap) -> Result<Rational, DensityError> {
    t_expr_with_cap(e, g, phi, DEFAULT_FREE_LABEL_CAP)
}

pub fn t_expr_with_cap(e: &QExpr, g: &WeightedGraph, phi: &RootMap, cap: usize) -> Result<Rational, DensityError> {
    covered(&e.labels(), phi)?;
    phi.check_range(g.order())?;
    eval(&Numeric { g }, e, phi, cap)
}

/// `t_expr` with the uniform distribution and no roots.
pub fn t_expr_graph(e: &QExpr, g: &Graph) -> Result<Rational, DensityError> {
    t_expr(e, &WeightedGraph::uniform(g.clone())?, &RootMap::empty())
}

/// The density as a polynomial in the vertex weights `y1..yn` of `g`.
pub fn density_polynomial(f: &QuantumGraph, g: &Graph, phi: &RootMap) -> Result<DensityPolynomial, DensityError> {
    phi.check_range(g.order())?;
    let d = Symbolic { g, vars: indexed_vars("y", g.order()) };
    let mut acc = d.zero();
    for (p, c) in f.terms() {
        let v = d.atom(p, &roots_for(p, phi)?, false)?;
        acc = &acc + &v.scale(c);
    }
    Ok(acc)
}

pub fn density_polynomial_expr(e: &QExpr, g: &Graph, phi: &RootMap) -> Result<DensityPolynomial, DensityError> {
    covered(&e.labels(), phi)?;
    phi.check_range(g.order())?;
    eval(&Symbolic { g, vars: indexed_vars("y", g.order()) }, e, phi, DEFAULT_FREE_LABEL_CAP)
}
