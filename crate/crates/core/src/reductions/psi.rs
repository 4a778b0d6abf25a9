use num::{One, Signed, Zero};
use rayon::prelude::*;

use super::phi::{exact_embeddings, is_exact, monomial_image, rooted_unit};
use super::ReductionError;
use crate::algebra::QExpr;
use crate::density::hom_count;
use crate::graphs::{clique_blowup, stringent_graph, Graph, Label, Plg};
use crate::polynomials::{calculus_q_expr, grid_point, indexed_vars, tau_expr, tau_vars, xy_vars, PolyExpr, Polynomial};
use crate::Rational;

/// `h` fully labeled plus an unlabeled `m`-clique joined to `N(j)`, with the
/// clique vertices in `subset` (a bitmask over the clique) also joined to `j`.
pub fn clique_graph(h: &Graph, j: usize, m: usize, subset: u32) -> Plg {
    let k = h.order();
    let mut edges = h.edges();
    for a in 0..m {
        for b in a + 1..m {
            edges.push((k + a, k + b));
        }
        edges.extend(h.neighbors(j).map(|u| (u, k + a)));
        if subset >> a & 1 == 1 {
            edges.push((j, k + a));
        }
    }
    let g = Graph::new(k + m, &edges).expect("within limits");
    Plg::new(g, (0..k).map(|i| (i as Label + 1, i))).expect("valid labels")
}

/// `V_j`, `E_j`, `T_j` for `m = 1, 2, 3`: the sum of `ind(H_{j,m} + S)` over all
/// `2^m` sets `S` of clique-to-`j` edges. `j` is 0-based.
pub fn psi_generators(h: &Graph, j: usize, m: usize) -> QExpr {
    QExpr::Sum((0..1u32 << m).map(|s| QExpr::IndAtom(clique_graph(h, j, m, s))).collect())
}

/// `ψ_H` of a polynomial over [`tau_vars`]`(k)`: `v_j, e_j, t_j ↦ V_j, E_j, T_j`.
pub fn psi(h: &Graph, p: &Polynomial) -> Result<QExpr, ReductionError> {
    let k = h.order();
    let vars = tau_vars(k);
    let p = p.with_vars(&vars)?;
    let gens: Vec<QExpr> = (1..=3).flat_map(|m| (0..k).map(move |j| (j, m))).map(|(j, m)| psi_generators(h, j, m)).collect();
    let unit = rooted_unit(h);
    Ok(QExpr::Sum(p.terms().map(|(e, c)| monomial_image(c, e, &gens, &unit)).collect()))
}

/// [`psi`] applied leafwise, keeping the shape of `e`.
pub fn psi_expr(h: &Graph, e: &PolyExpr) -> Result<QExpr, ReductionError> {
    Ok(match e {
        PolyExpr::Leaf(p) => psi(h, p)?,
        PolyExpr::Sum(xs) => QExpr::Sum(xs.iter().map(|x| psi_expr(h, x)).collect::<Result<_, _>>()?),
        PolyExpr::Product(xs) => QExpr::Product(xs.iter().map(|x| psi_expr(h, x)).collect::<Result<_, _>>()?),
        PolyExpr::Pow(x, m) => QExpr::Pow(Box::new(psi_expr(h, x)?), *m),
    })
}

/// A reduction instance `⟦ψ_H(τ(q))⟧` together with its ingredients.
#[derive(Clone, Debug)]
pub struct PsiImage {
    pub h: Graph,
    /// Source polynomial over [`xy_vars`]`(k)`.
    pub q: PolyExpr,
    pub expr: QExpr,
}

impl PsiImage {
    /// The instance for an arbitrary base `h` on `k` vertices and `q` over `xy_vars(k)`.
    pub fn new(h: &Graph, q: PolyExpr) -> Result<Self, ReductionError> {
        let k = h.order();
        let t = tau_expr(&q, k)?;
        let expr = QExpr::unlabel_all(psi_expr(h, &t)?);
        Ok(PsiImage { h: h.clone(), q, expr })
    }

    pub fn k(&self) -> usize {
        self.h.order()
    }

    /// The generators `(V_j, E_j, T_j)` for each `j`.
    pub fn generators(&self) -> Vec<[QExpr; 3]> {
        (0..self.k())
            .map(|j| [1, 2, 3].map(|m| psi_generators(&self.h, j, m)))
            .collect()
    }
}

fn check_source(p: &Polynomial, k: usize) -> Result<Polynomial, ReductionError> {
    if p.degree() == 0 {
        return Err(ReductionError::ConstantPolynomial);
    }
    if !p.has_integer_coefficients() {
        return Err(ReductionError::NonIntegerCoefficients);
    }
    p.with_vars(&indexed_vars("x", k)).map_err(|_| ReductionError::TooManyVariables { k })
}

/// `⟦ψ_H(τ(q))⟧` for `q = calculus_q(p)` and `H = stringent_graph(k)`, unexpanded.
/// `p` must have integer coefficients, positive degree and variables among `x1..xk`.
pub fn build_instance(p: &Polynomial, k: usize) -> Result<PsiImage, ReductionError> {
    let p = check_source(p, k)?;
    let h = stringent_graph(k)?;
    PsiImage::new(&h, calculus_q_expr(&p)?)
}

/// The clique blow-up of `H = stringent_graph(sizes.len())` by `sizes`, after
/// checking that `p` is negative at the grid point `x_i = 1 − 1/n_i`.
pub fn witness_graph(p: &Polynomial, sizes: &[usize]) -> Result<Graph, ReductionError> {
    let k = sizes.len();
    let p = check_source(p, k)?;
    if sizes.contains(&0) {
        return Err(ReductionError::NotNegative);
    }
    let x = grid_point(&sizes.iter().map(|&n| n as u64).collect::<Vec<_>>());
    if !p.evaluate(&x)?.is_negative() {
        return Err(ReductionError::NotNegative);
    }
    Ok(clique_blowup(&stringent_graph(k)?, sizes)?)
}

fn ratio(a: u128, b: usize) -> Rational {
    Rational::new(a.into(), (b as u128).into())
}

/// `t(instance; g)` by summing over exact embeddings of `H` with the induced
/// resampling sets `U_j`, without touching the quantum graph itself.
pub fn witness_eval(instance: &PsiImage, g: &Graph) -> Result<Rational, ReductionError> {
    let h = &instance.h;
    let k = h.order();
    let n = g.order();
    if n == 0 {
        return Err(crate::density::DensityError::EmptyTarget.into());
    }
    let d = instance.q.degree();
    let names = xy_vars(k);
    let k2 = Graph::complete(2)?;
    let k3 = Graph::complete(3)?;
    let maps = exact_embeddings(h, g);
    let terms: Vec<Rational> = maps
        .par_iter()
        .map(|phi| {
            let mut x = vec![Rational::zero(); 2 * k];
            let mut weight = Rational::one();
            let img: Vec<usize> = phi.0.values().copied().collect();
            for j in 0..k {
                let u: Vec<usize> = (0..n)
                    .filter(|&v| {
                        let mut moved = img.clone();
                        moved[j] = v;
                        is_exact(h, g, &moved)
                    })
                    .collect();
                let sub = g.induced(&u);
                let s = u.len();
                x[j] = ratio(hom_count(&k2, &sub)?, s * s);
                x[k + j] = ratio(hom_count(&k3, &sub)?, s * s * s);
                weight *= num::pow(ratio(s as u128, n), 3 * d as usize);
            }
            let value = instance.q.evaluate_by(&|name| names.iter().position(|v| v == name).map(|i| x[i].clone()))?;
            Ok(value * weight)
        })
        .collect::<Result<_, ReductionError>>()?;
    let total = terms.into_iter().fold(Rational::zero(), |a, b| a + b);
    Ok(total / num::pow(ratio(n as u128, 1), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{t_expr, t_expr_graph, t_graph, RootMap, WeightedGraph};
    use crate::rat;

    fn k2() -> Graph {
        Graph::complete(2).unwrap()
    }

    #[test]
    fn generators_on_triangle() {
        let g = WeightedGraph::uniform(Graph::complete(3).unwrap()).unwrap();
        let r = RootMap::new([(1, 0), (2, 1)]);
        assert_eq!(t_expr(&psi_generators(&k2(), 0, 1), &g, &r).unwrap(), rat(2, 3));
        assert_eq!(t_expr(&psi_generators(&k2(), 0, 2), &g, &r).unwrap(), rat(2, 9));
        let off = RootMap::new([(1, 0), (2, 0)]);
        for m in 1..=3 {
            assert_eq!(t_expr(&psi_generators(&k2(), 0, m), &g, &off).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn formula_matches_expansion_small() {
        let q = PolyExpr::Leaf(Polynomial::variable(xy_vars(2), 0));
        let inst = PsiImage::new(&k2(), q).unwrap();
        let g = Graph::complete(3).unwrap();
        let formula = witness_eval(&inst, &g).unwrap();
        let expanded = t_graph(&inst.expr.expand(1 << 20).unwrap(), &g).unwrap();
        assert_eq!(formula, expanded);
        assert_eq!(t_expr_graph(&inst.expr, &g).unwrap(), formula);
        assert!(formula.is_positive());
    }

    #[test]
    fn witness_pipeline() {
        let vars = indexed_vars("x", 6);
        let p = &Polynomial::one(vars.clone()) - &Polynomial::variable(vars.clone(), 0).scale(&rat(2, 1));
        let g = witness_graph(&p, &[3, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(g.order(), 8);
        let x1 = Polynomial::variable(vars.clone(), 0);
        let shifted = &x1 - &Polynomial::one(vars);
        assert_eq!(witness_graph(&shifted, &[1; 6]).unwrap(), stringent_graph(6).unwrap());
        assert!(matches!(witness_graph(&x1, &[2; 6]), Err(ReductionError::NotNegative)));
        let inst = build_instance(&p, 6).unwrap();
        assert!(witness_eval(&inst, &g).unwrap().is_negative());
        assert!(witness_eval(&inst, &Graph::empty(1).unwrap()).unwrap().is_zero());
    }
}
