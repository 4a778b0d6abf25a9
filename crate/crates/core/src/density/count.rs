//! Weighted counting of root-preserving extensions.
//!
//! For a partially labeled pattern `F` with its labeled vertices pinned to
//! target vertices, sums `∏_{u unlabeled} w(ψ(u))` over all maps `ψ` of the
//! unlabeled vertices that are homomorphisms (or, in exact mode, preserve both
//! adjacency and non-adjacency). Maps need not be injective.
//!
//! In homomorphism mode connected components of the unlabeled part are
//! counted separately, and within a component an independent set of vertices
//! is summed out in closed form once the rest is placed.

use std::collections::HashMap;

use num::BigUint;
use num::Zero;

use super::DensityError;
use crate::graphs::{bits, full_mask, Graph, Plg};

/// A commutative semiring of extension weights.
pub(crate) trait Weights {
    type V: Clone;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    /// Multiplies by the weight of target vertex `v`.
    fn scale_vertex(&self, a: &Self::V, v: usize) -> Result<Self::V, DensityError>;
    /// Total weight of the vertices in `mask`.
    fn mask_sum(&self, mask: u128) -> Self::V;
    fn add_assign(&self, a: &mut Self::V, b: &Self::V) -> Result<(), DensityError>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, DensityError>;
    fn is_zero(&self, a: &Self::V) -> bool;
    /// Vertices of positive weight.
    fn support(&self) -> u128;
}

/// Integer vertex weights, checked `u128` arithmetic.
pub(crate) struct IntWeights<'a> {
    pub w: &'a [u128],
    pub support: u128,
    pub unit: bool,
}

impl<'a> IntWeights<'a> {
    pub fn new(w: &'a [u128]) -> Self {
        let support = w.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u128, |m, (i, _)| m | (1u128 << i));
        let unit = w.iter().all(|&x| x == 1);
        IntWeights { w, support, unit }
    }
}

impl Weights for IntWeights<'_> {
    type V = u128;
    fn zero(&self) -> u128 {
        0
    }
    fn one(&self) -> u128 {
        1
    }
    fn scale_vertex(&self, a: &u128, v: usize) -> Result<u128, DensityError> {
        a.checked_mul(self.w[v]).ok_or(DensityError::CountOverflow)
    }
    fn mask_sum(&self, mask: u128) -> u128 {
        if self.unit {
            mask.count_ones() as u128
        } else {
            bits(mask).map(|v| self.w[v]).sum()
        }
    }
    fn add_assign(&self, a: &mut u128, b: &u128) -> Result<(), DensityError> {
        *a = a.checked_add(*b).ok_or(DensityError::CountOverflow)?;
        Ok(())
    }
    fn mul(&self, a: &u128, b: &u128) -> Result<u128, DensityError> {
        a.checked_mul(*b).ok_or(DensityError::CountOverflow)
    }
    fn is_zero(&self, a: &u128) -> bool {
        *a == 0
    }
    fn support(&self) -> u128 {
        self.support
    }
}

/// Arbitrary-precision fallback.
pub(crate) struct BigWeights {
    pub w: Vec<BigUint>,
    pub support: u128,
}

impl Weights for BigWeights {
    type V = BigUint;
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::from(1u8)
    }
    fn scale_vertex(&self, a: &BigUint, v: usize) -> Result<BigUint, DensityError> {
        Ok(a * &self.w[v])
    }
    fn mask_sum(&self, mask: u128) -> BigUint {
        bits(mask).fold(BigUint::zero(), |s, v| s + &self.w[v])
    }
    fn add_assign(&self, a: &mut BigUint, b: &BigUint) -> Result<(), DensityError> {
        *a += b;
        Ok(())
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> Result<BigUint, DensityError> {
        Ok(a * b)
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn support(&self) -> u128 {
        self.support
    }
}

/// Formal weights: the value is a polynomial in one variable per target vertex,
/// stored as exponent vector to count.
pub(crate) struct SymbolicWeights {
    pub n: usize,
}

pub(crate) type MonoPoly = HashMap<Vec<u8>, u128>;

impl Weights for SymbolicWeights {
    type V = MonoPoly;
    fn zero(&self) -> MonoPoly {
        HashMap::new()
    }
    fn one(&self) -> MonoPoly {
        HashMap::from([(vec![0u8; self.n], 1)])
    }
    fn scale_vertex(&self, a: &MonoPoly, v: usize) -> Result<MonoPoly, DensityError> {
        a.iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e[v] = e[v].checked_add(1).ok_or(DensityError::CountOverflow)?;
                Ok((e, c))
            })
            .collect()
    }
    fn mask_sum(&self, mask: u128) -> MonoPoly {
        bits(mask)
            .map(|v| {
                let mut e = vec![0u8; self.n];
                e[v] = 1;
                (e, 1)
            })
            .collect()
    }
    fn add_assign(&self, a: &mut MonoPoly, b: &MonoPoly) -> Result<(), DensityError> {
        for (e, &c) in b {
            let slot = a.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or(DensityError::CountOverflow)?;
        }
        Ok(())
    }
    fn mul(&self, a: &MonoPoly, b: &MonoPoly) -> Result<MonoPoly, DensityError> {
        let mut out: MonoPoly = HashMap::with_capacity(a.len() * b.len());
        for (ea, &ca) in a {
            for (eb, &cb) in b {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.checked_mul(cb).ok_or(DensityError::CountOverflow)?;
                let slot = out.entry(e).or_insert(0);
                *slot = slot.checked_add(c).ok_or(DensityError::CountOverflow)?;
            }
        }
        Ok(out)
    }
    fn is_zero(&self, a: &MonoPoly) -> bool {
        a.is_empty()
    }
    fn support(&self) -> u128 {
        full_mask(self.n)
    }
}

/// One independently countable block of unlabeled pattern vertices.
struct Block {
    /// Vertices placed by backtracking, in placement order.
    core: Vec<usize>,
    /// Vertices summed out after the core is placed.
    elim: Vec<usize>,
}

fn plan_blocks(f: &Graph, unl: &[usize], exact: bool) -> Vec<Block> {
    if unl.is_empty() {
        return Vec::new();
    }
    let unl_mask = unl.iter().fold(0u128, |m, &v| m | (1u128 << v));
    let comps: Vec<u128> = if exact {
        vec![unl_mask]
    } else {
        let mut seen = 0u128;
        let mut out = Vec::new();
        for &s in unl {
            if (seen >> s) & 1 == 1 {
                continue;
            }
            let mut comp = 1u128 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u128;
                for v in bits(frontier) {
                    next |= f.row(v) & unl_mask;
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    };
    comps
        .into_iter()
        .map(|comp| {
            let members: Vec<usize> = bits(comp).collect();
            let elim: Vec<usize> = if exact {
                // pairs inside the eliminated set would be constrained too
                vec![*members.iter().min_by_key(|&&v| (f.row(v) & comp).count_ones()).expect("nonempty")]
            } else {
                let mut chosen = 0u128;
                let mut blocked = 0u128;
                let mut order = members.clone();
                order.sort_by_key(|&v| ((f.row(v) & comp).count_ones(), v));
                for v in order {
                    if (blocked >> v) & 1 == 0 {
                        chosen |= 1u128 << v;
                        blocked |= (1u128 << v) | f.row(v);
                    }
                }
                bits(chosen).collect()
            };
            let elim_mask = elim.iter().fold(0u128, |m, &v| m | (1u128 << v));
            // place high-degree vertices first, then grow along edges
            let mut rest = comp & !elim_mask;
            let mut core = Vec::new();
            let mut placed = 0u128;
            while rest != 0 {
                let pick = bits(rest)
                    .max_by_key(|&v| ((f.row(v) & placed).count_ones(), (f.row(v) & comp).count_ones(), usize::MAX - v))
                    .expect("nonempty");
                core.push(pick);
                placed |= 1u128 << pick;
                rest &= !(1u128 << pick);
            }
            Block { core, elim }
        })
        .collect()
}

/// Weighted count of extensions of `f` with `roots[i]` the image of the
/// vertex carrying the `i`-th smallest label.
pub(crate) fn count_extensions<W: Weights>(
    f: &Plg,
    g: &Graph,
    roots: &[usize],
    exact: bool,
    w: &W,
) -> Result<W::V, DensityError> {
    let fg = f.graph();
    let labs = f.labels();
    debug_assert_eq!(labs.len(), roots.len());
    let n = g.order();
    // labeled pairs must already be consistent
    for (i, &(_, u)) in labs.iter().enumerate() {
        for (j, &(_, v)) in labs.iter().enumerate().skip(i + 1) {
            let want = fg.has_edge(u, v);
            let have = roots[i] != roots[j] && g.has_edge(roots[i], roots[j]);
            if (want && !have) || (exact && !want && have) {
                return Ok(w.zero());
            }
        }
    }
    let mut image: Vec<Option<usize>> = vec![None; f.order()];
    for (i, &(_, v)) in labs.iter().enumerate() {
        image[v] = Some(roots[i]);
    }
    let unl = f.unlabeled_vertices();
    if unl.is_empty() {
        return Ok(w.one());
    }
    let all = full_mask(n) & w.support();
    let mut base = vec![0u128; f.order()];
    for &u in &unl {
        let mut m = all;
        for (i, &(_, v)) in labs.iter().enumerate() {
            if fg.has_edge(u, v) {
                m &= g.row(roots[i]);
            } else if exact {
                m &= !g.row(roots[i]);
            }
        }
        if m == 0 {
            return Ok(w.zero());
        }
        base[u] = m;
    }
    let mut total = w.one();
    for block in plan_blocks(fg, &unl, exact) {
        let v = count_block(fg, g, &block, &base, exact, w)?;
        if w.is_zero(&v) {
            return Ok(w.zero());
        }
        total = w.mul(&total, &v)?;
    }
    Ok(total)
}

fn count_block<W: Weights>(
    fg: &Graph,
    g: &Graph,
    block: &Block,
    base: &[u128],
    exact: bool,
    w: &W,
) -> Result<W::V, DensityError> {
    // for each core position, earlier core positions that are adjacent / non-adjacent
    let k = block.core.len();
    let mut adj_prev: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut non_prev: Vec<Vec<usize>> = Vec::with_capacity(k);
    for i in 0..k {
        let u = block.core[i];
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (j, &v) in block.core[..i].iter().enumerate() {
            if fg.has_edge(u, v) {
                a.push(j);
            } else if exact {
                b.push(j);
            }
        }
        adj_prev.push(a);
        non_prev.push(b);
    }
    let elim: Vec<(u128, Vec<usize>, Vec<usize>)> = block
        .elim
        .iter()
        .map(|&x| {
            let a = (0..k).filter(|&j| fg.has_edge(x, block.core[j])).collect();
            let b = if exact { (0..k).filter(|&j| !fg.has_edge(x, block.core[j])).collect() } else { Vec::new() };
            (base[x], a, b)
        })
        .collect();
    let core_base: Vec<u128> = block.core.iter().map(|&u| base[u]).collect();
    let mut img = vec![0usize; k];
    rec(g, w, 0, &core_base, &adj_prev, &non_prev, &elim, &mut img)
}

#[allow(clippy::too_many_arguments)]
fn rec<W: Weights>(
    g: &Graph,
    w: &W,
    i: usize,
    core_base: &[u128],
    adj_prev: &[Vec<usize>],
    non_prev: &[Vec<usize>],
    elim: &[(u128, Vec<usize>, Vec<usize>)],
    img: &mut [usize],
) -> Result<W::V, DensityError> {
    if i == core_base.len() {
        let mut out = w.one();
        for (m0, a, b) in elim {
            let mut m = *m0;
            for &j in a {
                m &= g.row(img[j]);
            }
            for &j in b {
                m &= !g.row(img[j]);
            }
            if m == 0 {
                return Ok(w.zero());
            }
            out = w.mul(&out, &w.mask_sum(m))?;
        }
        return Ok(out);
    }
    let mut cand = core_base[i];
    for &j in &adj_prev[i] {
        cand &= g.row(img[j]);
    }
    for &j in &non_prev[i] {
        cand &= !g.row(img[j]);
    }
    let mut total = w.zero();
    for v in bits(cand) {
        img[i] = v;
        let sub = rec(g, w, i + 1, core_base, adj_prev, non_prev, elim, img)?;
        if !w.is_zero(&sub) {
            let s = w.scale_vertex(&sub, v)?;
            w.add_assign(&mut total, &s)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(f: &Plg, g: &Graph, roots: &[usize], exact: bool, wts: &[u128]) -> u128 {
        let unl = f.unlabeled_vertices();
        let n = g.order();
        let mut img = vec![0usize; f.order()];
        for (i, &(_, v)) in f.labels().iter().enumerate() {
            img[v] = roots[i];
        }
        let mut total = 0u128;
        let count = n.pow(unl.len() as u32);
        for code in 0..count {
            let mut c = code;
            let mut weight = 1u128;
            for &u in &unl {
                img[u] = c % n;
                c /= n;
                weight *= wts[img[u]];
            }
            let ok = (0..f.order()).all(|a| {
                (a + 1..f.order()).all(|b| {
                    let have = img[a] != img[b] && g.has_edge(img[a], img[b]);
                    let want = f.graph().has_edge(a, b);
                    if exact {
                        want == have
                    } else {
                        !want || have
                    }
                })
            });
            if ok {
                total += weight;
            }
        }
        total
    }

    #[test]
    fn agrees_with_brute_force() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let wts = [1u128, 2, 3, 1, 2];
        let patterns = [
            Plg::new(Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), [(1, 1)]).unwrap(),
            Plg::new(Graph::new(4, &[(0, 1), (0, 2), (0, 3), (2, 3)]).unwrap(), [(1, 0), (2, 3)]).unwrap(),
            Plg::unlabeled(Graph::new(4, &[(0, 1), (2, 3)]).unwrap()),
            Plg::unlabeled(Graph::empty(3).unwrap()),
            Plg::new(Graph::cycle(4).unwrap(), [(1, 0)]).unwrap(),
        ];
        for f in &patterns {
            let l = f.labels().len();
            let n = g.order();
            for code in 0..n.pow(l as u32) {
                let roots: Vec<usize> = (0..l).map(|i| (code / n.pow(i as u32)) % n).collect();
                for exact in [false, true] {
                    let got = count_extensions(f, &g, &roots, exact, &IntWeights::new(&wts)).unwrap();
                    assert_eq!(got, brute(f, &g, &roots, exact, &wts), "{f:?} {roots:?} exact={exact}");
                }
            }
        }
    }
}
