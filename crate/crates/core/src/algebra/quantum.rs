use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use rayon::prelude::*;

use super::AlgebraError;
use crate::graphs::{bits, Graph, Label, Plg};
use crate::Rational;

/// Default cap on the number of non-edges expanded by [`ind`].
pub const DEFAULT_IND_CAP: usize = 20;

/// Representative of the class of `p` modulo isolated vertices.
pub fn normal_plg(p: &Plg) -> Plg {
    if p.has_isolated_vertex() {
        p.without_isolated().canonical()
    } else {
        p.canonical()
    }
}

/// A finite rational combination of partially labeled graphs, kept in
/// normal form: canonical, isolated-vertex-free keys with nonzero coefficients.
///
/// Because of the normal form, `==` is equality in the quotient algebra.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuantumGraph {
    terms: BTreeMap<Plg, Rational>,
}

impl QuantumGraph {
    pub fn zero() -> Self {
        QuantumGraph::default()
    }

    /// The empty graph.
    pub fn one() -> Self {
        QuantumGraph::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QuantumGraph::term(&Plg::empty(), c)
    }

    pub fn term(p: &Plg, c: Rational) -> Self {
        let mut q = QuantumGraph::zero();
        q.add_normalized(normal_plg(p), c);
        q
    }

    pub fn from_plg(p: &Plg) -> Self {
        QuantumGraph::term(p, Rational::one())
    }

    /// Normalizes a raw combination.
    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a Plg, Rational)>) -> Self {
        let mut q = QuantumGraph::zero();
        for (p, c) in terms {
            q.add_normalized(normal_plg(p), c);
        }
        q
    }

    fn add_normalized(&mut self, p: Plg, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Plg, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Plg) -> Rational {
        self.terms.get(&normal_plg(p)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Union of the label sets of all terms.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.terms.keys().flat_map(|p| p.labels().iter().map(|&(l, _)| l)).collect()
    }

    pub fn max_order(&self) -> usize {
        self.terms.keys().map(Plg::order).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QuantumGraph::zero();
        }
        QuantumGraph { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Gluing product, extended bilinearly.
    pub fn product(&self, other: &QuantumGraph) -> Result<QuantumGraph, AlgebraError> {
        let (a, b) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let right: Vec<(&Plg, &Rational)> = b.terms.iter().collect();
        let left: Vec<(&Plg, &Rational)> = a.terms.iter().collect();
        let parts: Vec<HashMap<Plg, Rational>> = left
            .par_chunks(64.max(left.len() / 64))
            .map(|chunk| {
                let mut acc: HashMap<Plg, Rational> = HashMap::new();
                for &(p, c) in chunk {
                    for &(q, d) in &right {
                        let g = p.glue(q)?;
                        *acc.entry(normal_plg(&g)).or_insert_with(Rational::zero) += c * d;
                    }
                }
                Ok(acc)
            })
            .collect::<Result<_, AlgebraError>>()?;
        let mut out = QuantumGraph::zero();
        for part in parts {
            for (p, c) in part {
                out.add_normalized(p, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<QuantumGraph, AlgebraError> {
        let mut out = QuantumGraph::one();
        for _ in 0..k {
            out = out.product(self)?;
        }
        Ok(out)
    }

    /// Forgets every label outside `keep`.
    pub fn unlabel(&self, keep: &BTreeSet<Label>) -> QuantumGraph {
        let mut out = QuantumGraph::zero();
        for (p, c) in &self.terms {
            out.add_normalized(p.unlabel(keep).canonical(), c.clone());
        }
        out
    }

    /// Forgets all labels.
    pub fn unlabel_all(&self) -> QuantumGraph {
        self.unlabel(&BTreeSet::new())
    }

    /// Writes `self = Σ_H f_H` over fully labeled graphs `H` on `[l]`, each
    /// `f_H` a combination of graphs whose labeled vertices induce exactly
    /// `H` once `ind` is expanded on the labeled part.
    /// Keys are graphs on `l` vertices, vertex `i` carrying label `i + 1`.
    pub fn rooted_decomposition(&self, l: usize) -> Result<BTreeMap<Graph, QuantumGraph>, AlgebraError> {
        let mut raw: BTreeMap<Graph, Vec<(Plg, Rational)>> = BTreeMap::new();
        for (p, c) in &self.terms {
            let mut lifted = p.clone();
            for &(lab, _) in p.labels() {
                if lab == 0 || lab as usize > l {
                    return Err(AlgebraError::LabelOutOfRange { label: lab, l });
                }
            }
            for lab in 1..=l as Label {
                if lifted.vertex_of(lab).is_none() {
                    lifted = lifted.with_isolated_label(lab)?;
                }
            }
            let core = lifted.labeled_core();
            let missing = core.non_edges();
            if missing.len() > 12 {
                return Err(AlgebraError::IndCapExceeded { non_edges: missing.len(), cap: 12 });
            }
            let m = missing.len();
            for cmask in 0u32..(1 << m) {
                let mut cg = core.clone();
                for i in bits(cmask as u128) {
                    cg.set_edge_unchecked(missing[i].0, missing[i].1);
                }
                let rest = ((1u32 << m) - 1) & !cmask;
                // all D ⊇ C: add subsets of the remaining non-edges
                let mut sub = rest;
                loop {
                    let mut dg = cg.clone();
                    for i in bits(sub as u128) {
                        dg.set_edge_unchecked(missing[i].0, missing[i].1);
                    }
                    let sign = if sub.count_ones().is_multiple_of(2) { c.clone() } else { -c.clone() };
                    raw.entry(cg.clone()).or_default().push((lifted.with_core(&dg), sign));
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
            }
        }
        let mut out = BTreeMap::new();
        for (core, terms) in raw {
            let q = QuantumGraph::from_terms(terms.iter().map(|(p, c)| (p, c.clone())));
            if !q.is_zero() {
                out.insert(core, q);
            }
        }
        Ok(out)
    }
}

/// `Σ_{F ⊇ h, V(F) = V(h)} (−1)^{|E(F) ∖ E(h)|} F`, normalized.
pub fn ind(h: &Plg) -> Result<QuantumGraph, AlgebraError> {
    ind_with_cap(h, DEFAULT_IND_CAP)
}

pub fn ind_with_cap(h: &Plg, cap: usize) -> Result<QuantumGraph, AlgebraError> {
    let missing = h.graph().non_edges();
    if missing.len() > cap {
        return Err(AlgebraError::IndCapExceeded { non_edges: missing.len(), cap });
    }
    let mut acc: HashMap<Plg, Rational> = HashMap::new();
    for mask in 0u64..(1u64 << missing.len()) {
        let mut g = h.graph().clone();
        for i in bits(mask as u128) {
            g.set_edge_unchecked(missing[i].0, missing[i].1);
        }
        let f = Plg::from_parts_unchecked(g, h.labels().to_vec());
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *acc.entry(normal_plg(&f)).or_insert_with(Rational::zero) += Rational::from_integer(sign.into());
    }
    let mut out = QuantumGraph::zero();
    for (p, c) in acc {
        out.add_normalized(p, c);
    }
    Ok(out)
}

/// Equality in the quotient by isolated vertices.
pub fn equal_mod_k(f: &QuantumGraph, g: &QuantumGraph) -> bool {
    f == g
}

impl Add for &QuantumGraph {
    type Output = QuantumGraph;
    fn add(self, rhs: &QuantumGraph) -> QuantumGraph {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_normalized(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QuantumGraph {
    type Output = QuantumGraph;
    fn sub(self, rhs: &QuantumGraph) -> QuantumGraph {
        self + &(-rhs)
    }
}

impl Neg for &QuantumGraph {
    type Output = QuantumGraph;
    fn neg(self) -> QuantumGraph {
        QuantumGraph { terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect() }
    }
}

/// Panics only if a product exceeds the vertex limit; use
/// [`QuantumGraph::product`] to handle that case.
impl Mul for &QuantumGraph {
    type Output = QuantumGraph;
    fn mul(self, rhs: &QuantumGraph) -> QuantumGraph {
        self.product(rhs).expect("product within the vertex limit")
    }
}

impl fmt::Debug for QuantumGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(p, c)| (p, c.to_string()))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn pendant() -> Plg {
        Plg::new(Graph::complete(2).unwrap(), [(1, 0)]).unwrap()
    }
    fn unl(g: Graph) -> QuantumGraph {
        QuantumGraph::from_plg(&Plg::unlabeled(g))
    }

    #[test]
    fn products() {
        let e = QuantumGraph::from_plg(&pendant());
        let sq = &e * &e;
        let p3 = Plg::new(Graph::path(3).unwrap(), [(1, 1)]).unwrap();
        assert_eq!(sq, QuantumGraph::from_plg(&p3));
        let full = QuantumGraph::from_plg(&Plg::fully_labeled(Graph::complete(2).unwrap()));
        assert_eq!(&full * &full, full);
        let k2 = unl(Graph::complete(2).unwrap());
        let two = Graph::complete(2).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(&k2 * &k2, unl(two));
    }

    #[test]
    fn unlabelling() {
        let full = QuantumGraph::from_plg(&Plg::fully_labeled(Graph::complete(2).unwrap()));
        assert_eq!(full.unlabel_all(), unl(Graph::complete(2).unwrap()));
        let keep: BTreeSet<Label> = [1, 2].into();
        assert_eq!(full.unlabel(&keep), full);
        let sq = QuantumGraph::from_plg(&pendant()).pow(2).unwrap();
        assert_eq!(sq.unlabel_all(), unl(Graph::path(3).unwrap()));
    }

    #[test]
    fn normalization() {
        let k2k1 = Graph::complete(2).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        assert_eq!(unl(k2k1.clone()), unl(Graph::complete(2).unwrap()));
        let half = QuantumGraph::term(&Plg::unlabeled(Graph::complete(2).unwrap()), rat(1, 2));
        assert_eq!(&half + &half, unl(Graph::complete(2).unwrap()));
        let k2 = unl(Graph::complete(2).unwrap());
        assert!((&k2 - &k2).is_zero());
        assert!(equal_mod_k(&unl(k2k1), &k2));
        assert!(!equal_mod_k(&k2, &unl(Graph::path(3).unwrap())));
        // labelled isolated vertices go too
        let lab_iso = Plg::new(Graph::empty(1).unwrap(), [(3, 0)]).unwrap();
        assert_eq!(QuantumGraph::from_plg(&lab_iso), QuantumGraph::one());
    }

    #[test]
    fn ind_examples() {
        let full = Plg::fully_labeled(Graph::complete(2).unwrap());
        assert_eq!(ind(&full).unwrap(), QuantumGraph::from_plg(&full));
        let non = Plg::fully_labeled(Graph::empty(2).unwrap());
        assert_eq!(ind(&non).unwrap(), &QuantumGraph::from_plg(&non) - &QuantumGraph::from_plg(&full));
        assert_eq!(ind(&Plg::empty()).unwrap(), QuantumGraph::one());
        assert!(ind(&Plg::unlabeled(Graph::empty(7).unwrap())).is_err());
    }

    #[test]
    fn rooted_decomposition_examples() {
        let full = QuantumGraph::from_plg(&Plg::fully_labeled(Graph::complete(2).unwrap()));
        let d = full.rooted_decomposition(2).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&Graph::complete(2).unwrap()], full);
        // edge + non-edge on {1,2}: the non-edge splits as ind(non-edge) + edge
        let non = QuantumGraph::from_plg(&Plg::fully_labeled(Graph::empty(2).unwrap()));
        let f = &full + &non;
        let d = f.rooted_decomposition(2).unwrap();
        assert_eq!(d.len(), 2);
        let total = d.values().fold(QuantumGraph::zero(), |a, b| &a + b);
        assert_eq!(total, f);
        assert_eq!(d[&Graph::complete(2).unwrap()], full.scale(&rat(2, 1)));
    }
}
