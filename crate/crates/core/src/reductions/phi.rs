use num::Zero;

use super::ReductionError;
use crate::algebra::{ind, QExpr, QuantumGraph};
use crate::density::{RootMap, WeightedGraph};
use crate::graphs::{bits, full_mask, stringent_graph, Graph, Label, Plg};
use crate::polynomials::{counterexample_poly, Polynomial};
use crate::Rational;

/// All maps `V(h) → V(g)` preserving adjacency and non-adjacency, as root
/// maps sending label `i + 1` to the image of vertex `i`. Maps need not be
/// injective (twins of `h` may share an image).
pub fn exact_embeddings(h: &Graph, g: &Graph) -> Vec<RootMap> {
    fn rec(h: &Graph, g: &Graph, i: usize, img: &mut Vec<usize>, out: &mut Vec<RootMap>) {
        if i == h.order() {
            out.push(RootMap::new(img.iter().enumerate().map(|(v, &w)| (v as Label + 1, w))));
            return;
        }
        let mut cand = full_mask(g.order());
        for j in 0..i {
            if h.has_edge(i, j) {
                cand &= g.row(img[j]);
            } else {
                cand &= !g.row(img[j]);
            }
        }
        for v in bits(cand) {
            img[i] = v;
            rec(h, g, i + 1, img, out);
        }
    }
    let mut out = Vec::new();
    rec(h, g, 0, &mut vec![0; h.order()], &mut out);
    out
}

pub(crate) fn is_exact(h: &Graph, g: &Graph, img: &[usize]) -> bool {
    (0..h.order()).all(|a| (a + 1..h.order()).all(|b| h.has_edge(a, b) == (img[a] != img[b] && g.has_edge(img[a], img[b]))))
}

/// `h` fully labeled with an extra unlabeled vertex adjacent to `N(j)`, plus
/// the edge to `j` itself when `joined`.
pub fn clone_graph(h: &Graph, j: usize, joined: bool) -> Plg {
    let k = h.order();
    let mut edges = h.edges();
    edges.extend(h.neighbors(j).map(|u| (u, k)));
    if joined {
        edges.push((j, k));
    }
    let g = Graph::new(k + 1, &edges).expect("within limits");
    Plg::new(g, (0..k).map(|i| (i as Label + 1, i))).expect("valid labels")
}

/// Image of the polynomial generator `x_j` (0-based `j`): `ind(H_j) + ind(H_j')`.
pub fn phi_generator(h: &Graph, j: usize) -> QExpr {
    QExpr::Sum(vec![QExpr::IndAtom(clone_graph(h, j, false)), QExpr::IndAtom(clone_graph(h, j, true))])
}

/// The identity of the `h`-rooted part: `ind` of `h` fully labeled.
pub fn rooted_unit(h: &Graph) -> QExpr {
    QExpr::IndAtom(Plg::fully_labeled(h.clone()))
}

/// Maps each monomial `c·∏x^a` to `c·∏ gen_j^{a_j}`; constants go to `c·unit`.
pub(crate) fn monomial_image(c: &Rational, exps: &[u32], gens: &[QExpr], unit: &QExpr) -> QExpr {
    let mut factors = vec![QExpr::Const(c.clone())];
    let mut any = false;
    for (j, &a) in exps.iter().enumerate() {
        match a {
            0 => {}
            1 => factors.push(gens[j].clone()),
            _ => factors.push(QExpr::Pow(Box::new(gens[j].clone()), a)),
        }
        any |= a > 0;
    }
    if !any {
        factors.push(unit.clone());
    }
    QExpr::Product(factors)
}

/// The clone construction `φ_H(p)` for `p` over `k = |V(h)|` variables
/// (variable `i` of `p` standing for vertex `i`), as an unexpanded expression.
pub fn phi(h: &Graph, p: &Polynomial) -> Result<QExpr, ReductionError> {
    if p.nvars() != h.order() {
        return Err(ReductionError::VariableCount { expected: h.order(), got: p.nvars() });
    }
    let gens: Vec<QExpr> = (0..h.order()).map(|j| phi_generator(h, j)).collect();
    let unit = rooted_unit(h);
    Ok(QExpr::Sum(p.terms().map(|(e, c)| monomial_image(c, e, &gens, &unit)).collect()))
}

/// The `y`-probability that moving `φ(j)` to a random vertex keeps `φ` exact.
pub fn alpha(h: &Graph, g: &WeightedGraph, phi: &RootMap, j: usize) -> Result<Rational, ReductionError> {
    let mut img: Vec<usize> = Vec::with_capacity(h.order());
    for i in 0..h.order() {
        img.push(phi.get(i as Label + 1).ok_or(ReductionError::NotExact)?);
    }
    if !is_exact(h, g.graph(), &img) {
        return Err(ReductionError::NotExact);
    }
    let mut total = Rational::zero();
    for v in 0..g.order() {
        img[j] = v;
        if is_exact(h, g.graph(), &img) {
            total += &g.weights()[v];
        }
    }
    Ok(total)
}

fn expanded_generator(h: &Graph, j: usize) -> Result<QuantumGraph, ReductionError> {
    Ok(&ind(&clone_graph(h, j, false))? + &ind(&clone_graph(h, j, true))?)
}

/// `⟦φ_H(p)⟧` with `H` the stringent graph on `k = 6` vertices and `p` the
/// counterexample polynomial, fully expanded.
pub fn build_counterexample(k: usize) -> Result<QuantumGraph, ReductionError> {
    if k != 6 {
        return Err(ReductionError::UnsupportedK(k));
    }
    let h = stringent_graph(k)?;
    let p = counterexample_poly(k)?;
    let gens: Vec<QuantumGraph> = (0..k).map(|j| expanded_generator(&h, j)).collect::<Result<_, _>>()?;
    let mut total = QuantumGraph::zero();
    for (e, c) in p.terms() {
        let mut m = QuantumGraph::one();
        // multiply the largest factors last so intermediate results stay small
        let mut factors: Vec<usize> = e.iter().enumerate().flat_map(|(j, &a)| std::iter::repeat_n(j, a as usize)).collect();
        factors.sort_by_key(|&j| gens[j].len());
        for j in factors {
            m = m.product(&gens[j])?;
        }
        total = &total + &m.scale(c);
    }
    Ok(total.unlabel_all())
}

/// The same quantum graph as [`build_counterexample`], unexpanded.
pub fn counterexample_expr(k: usize) -> Result<QExpr, ReductionError> {
    if k != 6 {
        return Err(ReductionError::UnsupportedK(k));
    }
    let h = stringent_graph(k)?;
    Ok(QExpr::unlabel_all(phi(&h, &counterexample_poly(k)?)?))
}

/// The clone generators of `h` as `(ind(H_j), ind(H_j'))` pairs.
#[derive(Clone, Debug)]
pub struct PhiImage {
    pub h: Graph,
    pub generators: Vec<(Plg, Plg)>,
    pub expr: QExpr,
}

impl PhiImage {
    pub fn new(h: &Graph, p: &Polynomial) -> Result<Self, ReductionError> {
        let generators = (0..h.order()).map(|j| (clone_graph(h, j, false), clone_graph(h, j, true))).collect();
        Ok(PhiImage { h: h.clone(), generators, expr: phi(h, p)? })
    }
}
