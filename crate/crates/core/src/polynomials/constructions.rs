use num::One;

use super::{indexed_vars, PolyError, PolyExpr, Polynomial};
use crate::Rational;

fn int(c: i64) -> Rational {
    Rational::from_integer(c.into())
}

/// `S(x, y, z) = x⁴y² + y⁴z² + z⁴x² − 3x²y²z²`.
pub fn motzkin_s() -> Polynomial {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    Polynomial::from_terms(
        vars,
        [(vec![4, 2, 0], int(1)), (vec![0, 4, 2], int(1)), (vec![2, 0, 4], int(1)), (vec![2, 2, 2], int(-3))],
    )
}

/// `y2²y3 + y3²y4 + y4²y2 − 3y2y3y4` over `y1..yk`: the form `S` with squared
/// arguments rewritten in the squares.
pub fn counterexample_poly(k: usize) -> Result<Polynomial, PolyError> {
    if k < 4 {
        return Err(PolyError::TooFewVariables { k, min: 4 });
    }
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0; k];
        for &(i, x) in pairs {
            e[i - 1] = x;
        }
        e
    };
    Ok(Polynomial::from_terms(
        indexed_vars("y", k),
        [
            (mono(&[(2, 2), (3, 1)]), int(1)),
            (mono(&[(3, 2), (4, 1)]), int(1)),
            (mono(&[(4, 2), (2, 1)]), int(1)),
            (mono(&[(2, 1), (3, 1), (4, 1)]), int(-3)),
        ],
    ))
}

/// `∏(1 − x_i)^{deg q} · q(1/(1−x_1), …)`, with the `i`-th variable of `q`
/// becoming `x_{i}` (1-based).
pub fn hilbert10_transform(q: &Polynomial) -> Result<Polynomial, PolyError> {
    if !q.has_integer_coefficients() {
        return Err(PolyError::NonIntegerCoefficients);
    }
    let k = q.nvars();
    let vars = indexed_vars("x", k);
    let d = q.degree();
    let one = Polynomial::one(vars.clone());
    let tables: Vec<Vec<Polynomial>> = (0..k)
        .map(|i| {
            let base = &one - &Polynomial::variable(vars.clone(), i);
            let mut t = vec![one.clone()];
            for j in 1..=d as usize {
                let next = &t[j - 1] * &base;
                t.push(next);
            }
            t
        })
        .collect();
    let mut out = Polynomial::zero(vars.clone());
    for (e, c) in q.terms() {
        let mut m = Polynomial::constant(vars.clone(), c.clone());
        for (i, &a) in e.iter().enumerate() {
            m = &m * &tables[i][(d - a) as usize];
        }
        out = &out + &m;
    }
    Ok(out)
}

/// Sum of absolute coefficient values times `100 · deg p`.
pub fn m_constant(p: &Polynomial) -> Result<Rational, PolyError> {
    let d = p.degree();
    if d == 0 {
        return Err(PolyError::Constant);
    }
    Ok(p.sum_abs_coefficients() * int(100 * d as i64))
}

fn parse_indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

/// Number of `x` variables: the largest index among names `x1, x2, …`.
fn x_arity(p: &Polynomial) -> Result<usize, PolyError> {
    let mut k = 0;
    for v in p.vars() {
        match parse_indexed(v, 'x') {
            Some(i) => k = k.max(i),
            None => return Err(PolyError::UnknownVariable(v.clone())),
        }
    }
    Ok(k)
}

/// `x1..xk, y1..yk`.
pub fn xy_vars(k: usize) -> Vec<String> {
    let mut v = indexed_vars("x", k);
    v.extend(indexed_vars("y", k));
    v
}

/// `v1..vk, e1..ek, t1..tk`.
pub fn tau_vars(k: usize) -> Vec<String> {
    let mut v = indexed_vars("v", k);
    v.extend(indexed_vars("e", k));
    v.extend(indexed_vars("t", k));
    v
}

/// `p · ∏(1 − x_i)⁶ + M · Σ (y_i − g(x_i))` kept factored. `p` must be over
/// variables named `x1..xk`; `k` is the largest index used in its variable list.
pub fn calculus_q_expr(p: &Polynomial) -> Result<PolyExpr, PolyError> {
    let k = x_arity(p)?;
    let m = m_constant(p)?;
    let vars = xy_vars(k);
    let one = Polynomial::one(vars.clone());
    let mut factors = vec![PolyExpr::Leaf(p.with_vars(&vars)?)];
    for i in 0..k {
        let f = &one - &Polynomial::variable(vars.clone(), i);
        factors.push(PolyExpr::Pow(Box::new(PolyExpr::Leaf(f)), 6));
    }
    let mut penalty = Polynomial::zero(vars.clone());
    for i in 0..k {
        let x = Polynomial::variable(vars.clone(), i);
        let y = Polynomial::variable(vars.clone(), k + i);
        penalty = &penalty + &(&(&y - &x.pow(2).scale(&int(2))) + &x);
    }
    Ok(PolyExpr::Sum(vec![PolyExpr::Product(factors), PolyExpr::Leaf(penalty.scale(&m))]))
}

pub fn calculus_q(p: &Polynomial) -> Result<Polynomial, PolyError> {
    let k = x_arity(p)?;
    calculus_q_expr(p)?.expand().with_vars(&xy_vars(k))
}

/// For each variable of `q`, `(is_y, index)` with index 0-based.
fn xy_positions(vars: &[String], k: usize) -> Result<Vec<(bool, usize)>, PolyError> {
    vars.iter()
        .map(|v| {
            let pos = parse_indexed(v, 'x').map(|i| (false, i)).or_else(|| parse_indexed(v, 'y').map(|i| (true, i)));
            match pos {
                Some((y, i)) if i <= k => Ok((y, i - 1)),
                _ => Err(PolyError::UnknownVariable(v.clone())),
            }
        })
        .collect()
}

/// Rewrites each monomial of `p` (over `x`/`y` variables) as `e^a t^b ∏ v^{δ − 2a − 3b}`.
/// `delta[i]` must dominate `2a_i + 3b_i` on every monomial.
fn substitute_cleared(p: &Polynomial, k: usize, delta: &[u32]) -> Result<Polynomial, PolyError> {
    let pos = xy_positions(p.vars(), k)?;
    let mut out = Polynomial::zero(tau_vars(k));
    for (e, c) in p.terms() {
        let mut f = vec![0u32; 3 * k];
        let mut need = vec![0u32; k];
        for (j, &x) in e.iter().enumerate() {
            let (is_y, i) = pos[j];
            if is_y {
                f[2 * k + i] += x;
                need[i] += 3 * x;
            } else {
                f[k + i] += x;
                need[i] += 2 * x;
            }
        }
        for i in 0..k {
            if need[i] > delta[i] {
                return Err(PolyError::ClearingTooSmall { needed: need[i], given: delta[i] });
            }
            f[i] = delta[i] - need[i];
        }
        out.add_term(f, c.clone());
    }
    Ok(out)
}

/// `τ(q)`: substitute `x_i ↦ e_i/v_i²`, `y_i ↦ t_i/v_i³` and multiply by
/// `∏ v_i^{3 deg q}`. The result lives over [`tau_vars`]`(k)`.
pub fn tau(q: &Polynomial, k: usize) -> Result<Polynomial, PolyError> {
    let d = q.degree();
    substitute_cleared(q, k, &vec![3 * d; k])
}

fn v_power(k: usize, exps: &[u32]) -> Polynomial {
    let mut e = vec![0; 3 * k];
    e[..k].copy_from_slice(exps);
    Polynomial::monomial(tau_vars(k), e, Rational::one())
}

// Returns (expr, delta): expr = node(e/v², t/v³) · ∏ v_i^{delta_i}.
fn tau_node(q: &PolyExpr, k: usize) -> Result<(PolyExpr, Vec<u32>), PolyError> {
    match q {
        PolyExpr::Leaf(p) => {
            let pos = xy_positions(p.vars(), k)?;
            let mut delta = vec![0u32; k];
            for (e, _) in p.terms() {
                let mut need = vec![0u32; k];
                for (j, &x) in e.iter().enumerate() {
                    let (is_y, i) = pos[j];
                    need[i] += if is_y { 3 * x } else { 2 * x };
                }
                for i in 0..k {
                    delta[i] = delta[i].max(need[i]);
                }
            }
            Ok((PolyExpr::Leaf(substitute_cleared(p, k, &delta)?), delta))
        }
        PolyExpr::Product(xs) => {
            let mut delta = vec![0u32; k];
            let mut parts = Vec::with_capacity(xs.len());
            for x in xs {
                let (e, d) = tau_node(x, k)?;
                delta.iter_mut().zip(&d).for_each(|(a, b)| *a += b);
                parts.push(e);
            }
            Ok((PolyExpr::Product(parts), delta))
        }
        PolyExpr::Pow(x, m) => {
            let (e, d) = tau_node(x, k)?;
            Ok((PolyExpr::Pow(Box::new(e), *m), d.iter().map(|a| a * m).collect()))
        }
        PolyExpr::Sum(xs) => {
            let children: Vec<_> = xs.iter().map(|x| tau_node(x, k)).collect::<Result<_, _>>()?;
            let mut delta = vec![0u32; k];
            for (_, d) in &children {
                delta.iter_mut().zip(d).for_each(|(a, b)| *a = (*a).max(*b));
            }
            let parts = children
                .into_iter()
                .map(|(e, d)| {
                    let pad: Vec<u32> = delta.iter().zip(&d).map(|(a, b)| a - b).collect();
                    if pad.iter().all(|&p| p == 0) {
                        e
                    } else {
                        PolyExpr::Product(vec![e, PolyExpr::Leaf(v_power(k, &pad))])
                    }
                })
                .collect();
            Ok((PolyExpr::Sum(parts), delta))
        }
    }
}

/// `τ(q)` for a factored `q`, staying factored. Expands to [`tau`] of the expansion.
pub fn tau_expr(q: &PolyExpr, k: usize) -> Result<PolyExpr, PolyError> {
    let d = q.degree();
    let (e, delta) = tau_node(q, k)?;
    let mut rest = Vec::with_capacity(k);
    for &di in &delta {
        if di > 3 * d {
            return Err(PolyError::ClearingTooSmall { needed: di, given: 3 * d });
        }
        rest.push(3 * d - di);
    }
    if rest.iter().all(|&r| r == 0) {
        return Ok(e);
    }
    Ok(PolyExpr::Product(vec![e, PolyExpr::Leaf(v_power(k, &rest))]))
}

/// The grid point `x_i = 1 − 1/n_i`.
pub fn grid_point(sizes: &[u64]) -> Vec<Rational> {
    sizes.iter().map(|&n| Rational::one() - Rational::new(1.into(), (n as i64).into())).collect()
}
