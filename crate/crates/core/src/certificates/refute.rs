use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CertError;
use crate::algebra::QExpr;
use crate::density::{t_expr, t_expr_graph, RootMap, WeightedGraph};
use crate::graphs::{enumerate_graphs, independent_blowup, Graph};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefuteOptions {
    /// Exhaustive scan over all graphs with at most this many vertices.
    pub max_n: usize,
    /// Random weighted graphs tried after the scan.
    pub samples: usize,
    /// Order bound for sampled graphs.
    pub sample_max_n: usize,
    /// Sampled vertex weights are integers in `1..=max_weight`.
    pub max_weight: u64,
    pub seed: u64,
}

impl Default for RefuteOptions {
    fn default() -> Self {
        RefuteOptions { max_n: 5, samples: 100, sample_max_n: 6, max_weight: 4, seed: 0 }
    }
}

/// A graph (possibly weighted) on which the target is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub graph: Graph,
    /// Integer vertex weights, `None` for uniform.
    pub weights: Option<Vec<u64>>,
    pub value: Rational,
    /// For weighted witnesses: the graph with vertex `v` replaced by
    /// `weights[v]` independent copies, which has the same (negative) value.
    pub blowup: Option<Graph>,
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("small");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// Exhaustive scan up to `max_n` vertices (lowest order, then enumeration
/// order, wins), then seeded random weighted samples.
pub fn refute(target: &QExpr, opts: &RefuteOptions) -> Result<Option<Witness>, CertError> {
    for n in 1..=opts.max_n {
        let graphs = enumerate_graphs(n)?;
        let values: Vec<Result<Rational, CertError>> =
            graphs.par_iter().map(|g| Ok(t_expr_graph(target, g)?)).collect();
        for (g, v) in graphs.into_iter().zip(values) {
            let v = v?;
            if v.is_negative() {
                return Ok(Some(Witness { graph: g, weights: None, value: v, blowup: None }));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let n = rng.gen_range(1..=opts.sample_max_n.max(1));
        let g = random_graph(&mut rng, n);
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=opts.max_weight.max(1))).collect();
        let wg = WeightedGraph::from_counts(g.clone(), &w)?;
        let v = t_expr(target, &wg, &RootMap::empty())?;
        if v.is_negative() {
            let counts: Vec<usize> = w.iter().map(|&x| x as usize).collect();
            let blow = independent_blowup(&g, &counts)?;
            return Ok(Some(Witness { graph: g, weights: Some(w), value: v, blowup: Some(blow) }));
        }
    }
    Ok(None)
}

impl Witness {
    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuantumGraph;
    use crate::graphs::Plg;
    use crate::rat;

    fn un(g: Graph) -> QuantumGraph {
        QuantumGraph::from_plg(&Plg::unlabeled(g))
    }

    #[test]
    fn finds_edge() {
        let neg = un(Graph::complete(2).unwrap()).scale(&rat(-1, 1));
        let w = refute(&QExpr::from(&neg), &RefuteOptions::default()).unwrap().unwrap();
        assert_eq!(w.graph, Graph::complete(2).unwrap());
        assert_eq!(w.value, rat(-1, 2));
        let diff = &un(Graph::complete(3).unwrap()) - &un(Graph::complete(2).unwrap());
        let w = refute(&QExpr::from(&diff), &RefuteOptions::default()).unwrap().unwrap();
        assert_eq!(w.graph, Graph::complete(2).unwrap());
    }

    #[test]
    fn goodman_has_no_witness() {
        let two = un(Graph::new(4, &[(0, 1), (2, 3)]).unwrap());
        let f = &(&un(Graph::complete(3).unwrap()) - &two.scale(&rat(2, 1))) + &un(Graph::complete(2).unwrap());
        let opts = RefuteOptions { max_n: 6, samples: 50, seed: 7, ..Default::default() };
        assert_eq!(refute(&QExpr::from(&f), &opts).unwrap(), None);
    }
}
