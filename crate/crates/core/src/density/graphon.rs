use num::{One, Signed, Zero};

use super::DensityError;
use crate::graphs::Graph;
use crate::Rational;

/// A symmetric step function on `[0,1]²`: block `i` is an interval of length
/// `measures[i]`, and the value on block pair `(i, j)` is `values[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepGraphon {
    measures: Vec<Rational>,
    values: Vec<Vec<Rational>>,
}

impl StepGraphon {
    pub fn new(measures: Vec<Rational>, values: Vec<Vec<Rational>>) -> Result<Self, DensityError> {
        let k = measures.len();
        let bad = |m: String| Err(DensityError::InvalidGraphon(m));
        if k == 0 {
            return bad("no blocks".into());
        }
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return bad(format!("value matrix is not {k}x{k}"));
        }
        if measures.iter().any(|m| m.is_negative()) {
            return bad("negative block measure".into());
        }
        if measures.iter().fold(Rational::zero(), |s, m| s + m) != Rational::one() {
            return bad("block measures do not sum to 1".into());
        }
        for i in 0..k {
            for j in 0..k {
                let v = &values[i][j];
                if v.is_negative() || *v > Rational::one() {
                    return bad(format!("value {v} outside [0,1]"));
                }
                if *v != values[j][i] {
                    return bad("value matrix is not symmetric".into());
                }
            }
        }
        Ok(StepGraphon { measures, values })
    }

    /// The constant graphon `c`.
    pub fn constant(c: Rational) -> Result<Self, DensityError> {
        StepGraphon::new(vec![Rational::one()], vec![vec![c]])
    }

    /// `w_G`: `n` equal blocks with the adjacency matrix as values.
    pub fn from_graph(g: &Graph) -> Result<Self, DensityError> {
        let n = g.order();
        if n == 0 {
            return Err(DensityError::EmptyTarget);
        }
        let m = Rational::new(1.into(), (n as i64).into());
        let values = (0..n)
            .map(|i| (0..n).map(|j| if g.has_edge(i, j) { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        StepGraphon::new(vec![m; n], values)
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn blocks(&self) -> usize {
        self.measures.len()
    }

    // (start, end, block) intervals covering [0,1]
    fn intervals(&self) -> Vec<(Rational, Rational, usize)> {
        let mut start = Rational::zero();
        let mut out = Vec::new();
        for (i, m) in self.measures.iter().enumerate() {
            let end = &start + m;
            if !m.is_zero() {
                out.push((start.clone(), end.clone(), i));
            }
            start = end;
        }
        out
    }

    /// `(1 − α)·self + α·other` on the common refinement of the two block partitions.
    pub fn mix(&self, other: &StepGraphon, alpha: &Rational) -> Result<StepGraphon, DensityError> {
        if alpha.is_negative() || *alpha > Rational::one() {
            return Err(DensityError::InvalidGraphon(format!("mixing weight {alpha} outside [0,1]")));
        }
        let a = self.intervals();
        let b = other.intervals();
        let mut cells: Vec<(Rational, usize, usize)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut pos = Rational::zero();
        while i < a.len() && j < b.len() {
            let end = if a[i].1 < b[j].1 { a[i].1.clone() } else { b[j].1.clone() };
            if end > pos {
                cells.push((&end - &pos, a[i].2, b[j].2));
            }
            pos = end;
            if a[i].1 == pos {
                i += 1;
            }
            if j < b.len() && b[j].1 == pos {
                j += 1;
            }
        }
        let keep = Rational::one() - alpha;
        let values = cells
            .iter()
            .map(|&(_, pi, pj)| {
                cells.iter().map(|&(_, qi, qj)| &keep * &self.values[pi][qi] + alpha * &other.values[pj][qj]).collect()
            })
            .collect();
        StepGraphon::new(cells.into_iter().map(|c| c.0).collect(), values)
    }
}

/// Mixing shorthand for [`StepGraphon::mix`].
pub fn mix(w: &StepGraphon, w2: &StepGraphon, alpha: &Rational) -> Result<StepGraphon, DensityError> {
    w.mix(w2, alpha)
}

pub fn w_from_graph(g: &Graph) -> Result<StepGraphon, DensityError> {
    StepGraphon::from_graph(g)
}

/// `t(h; w) = Σ over block assignments of ∏ block measures · ∏ edge values`.
pub fn t_graphon(h: &Graph, w: &StepGraphon) -> Rational {
    fn rec(h: &Graph, w: &StepGraphon, v: usize, blocks: &mut Vec<usize>, weight: Rational, total: &mut Rational) {
        if weight.is_zero() {
            return;
        }
        if v == h.order() {
            *total += weight;
            return;
        }
        for b in 0..w.blocks() {
            let mut x = &weight * &w.measures[b];
            for u in h.neighbors(v).filter(|&u| u < v) {
                x *= &w.values[b][blocks[u]];
            }
            blocks[v] = b;
            rec(h, w, v + 1, blocks, x, total);
        }
    }
    let mut total = Rational::zero();
    rec(h, w, 0, &mut vec![0; h.order()], Rational::one(), &mut total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::t;
    use crate::rat;

    #[test]
    fn constant_graphon() {
        let w = StepGraphon::constant(rat(1, 2)).unwrap();
        assert_eq!(t_graphon(&Graph::complete(2).unwrap(), &w), rat(1, 2));
        assert_eq!(t_graphon(&Graph::complete(4).unwrap(), &w), num::pow(rat(1, 2), 6));
    }

    #[test]
    fn graph_graphon_matches_graph() {
        let k2 = Graph::complete(2).unwrap();
        let w = w_from_graph(&k2).unwrap();
        assert_eq!(t_graphon(&Graph::path(3).unwrap(), &w), rat(1, 4));
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let wg = w_from_graph(&g).unwrap();
        for h in [Graph::complete(3).unwrap(), Graph::path(4).unwrap(), Graph::cycle(4).unwrap()] {
            assert_eq!(t_graphon(&h, &wg), t(&h, &g).unwrap());
        }
    }

    #[test]
    fn mixing() {
        let w = w_from_graph(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(w.mix(&w, &rat(1, 3)).unwrap().values().len(), 3);
        let alpha = rat(1, 3);
        let m = w.mix(&w, &alpha).unwrap();
        let h = Graph::complete(3).unwrap();
        assert_eq!(t_graphon(&h, &m), t_graphon(&h, &w));
        let c = StepGraphon::constant(rat(1, 1)).unwrap();
        let m2 = w.mix(&c, &rat(1, 1)).unwrap();
        assert_eq!(t_graphon(&h, &m2), rat(1, 1));
        assert!(w.mix(&c, &rat(2, 1)).is_err());
    }
}
