use num::{BigInt, Integer, One, Signed, Zero};

use super::CertError;
use crate::algebra::QuantumGraph;
use crate::density::t_graph;
use crate::graphs::{Graph, Plg};
use crate::Rational;

/// `t(⟦H_i·H_j⟧; g)` over a basis of partially labeled graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMatrix {
    pub basis: Vec<Plg>,
    pub target: Graph,
    pub entries: Vec<Vec<Rational>>,
}

pub fn moment_matrix(g: &Graph, basis: &[Plg]) -> Result<MomentMatrix, CertError> {
    let n = basis.len();
    let mut entries = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = QuantumGraph::from_plg(&basis[i]).product(&QuantumGraph::from_plg(&basis[j]))?;
            let v = t_graph(&prod.unlabel_all(), g)?;
            entries[j][i] = v.clone();
            entries[i][j] = v;
        }
    }
    Ok(MomentMatrix { basis: basis.to_vec(), target: g.clone(), entries })
}

impl MomentMatrix {
    pub fn is_psd(&self) -> bool {
        is_psd(&self.entries)
    }
}

/// Exact positive semidefiniteness of a symmetric rational matrix.
///
/// The matrix is scaled to integers, then diagonal pivots are eliminated
/// fraction-free: `a_ij ← a_kk·a_ij − a_ik·a_kj`, which multiplies the Schur
/// complement by the positive pivot. A negative diagonal, or a zero diagonal
/// with a nonzero entry in its row, rules out PSD. Non-symmetric input is
/// reported as not PSD.
pub fn is_psd(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    if (0..n).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
        return false;
    }
    let l = m.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| x.numer() * (&l / x.denom())).collect()).collect();
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        if live.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        let Some(pos) = live.iter().position(|&i| a[i][i].is_positive()) else {
            return live.iter().all(|&i| live.iter().all(|&j| a[i][j].is_zero()));
        };
        let k = live.remove(pos);
        let mut content = BigInt::zero();
        for &i in &live {
            for &j in &live {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                content = content.gcd(&v);
                a[i][j] = v;
            }
        }
        if content > BigInt::one() {
            for &i in &live {
                for &j in &live {
                    a[i][j] = &a[i][j] / &content;
                }
            }
        }
    }
    true
}
