//! The Temperley-Lieb and Hecke actions on the link-pattern module V_n(v):
//! generator surgery e_i, rotation rho, lifted T_i / Y_j / Yhat_j operators,
//! the weight vectors D_J and Q_n, intertwiners I_w, and the pairing closure.

use crate::pattern::{enumerate, least_nested, ModuleVector, Pattern};
use crate::perm::Perm;
use crate::ring::{Mode, Scalar};
use std::collections::BTreeSet;

/// e_i surgery on a basis pattern: returns (coefficient, new pattern).
pub fn e_apply(i: usize, l: &Pattern, mode: &Mode) -> (Scalar, Pattern) {
    let n = l.n;
    assert!(n >= 2 && (1..n).contains(&i), "invalid e_{i} on size {n}");
    let ip = i + 1;
    let one = mode.one();

    if l.partner1(i) == Some(ip) {
        // little arch at (i, i+1)
        if l.is_even() && l.gstar == Some(i) {
            // puncture sits under the arch: non-contractible loop, weight u;
            // it moves to the face just outside, which touches gap i-1 mod n
            let outside = (i + n - 1) % n;
            let g = *l.face_of_gap(outside).iter().next().unwrap();
            let mut out = l.clone();
            out.gstar = Some(g);
            return (mode.u(), out);
        }
        return (mode.delta(), l.clone());
    }

    if l.defect == Some(i) {
        // defect at i: its neighbour's arch opens, defect jumps to the far
        // end; an arch wrapping past the n->1 cut drags the defect across it
        let q = l.partner1(ip).unwrap();
        let mut pairs: Vec<(usize, usize)> = l
            .arches()
            .into_iter()
            .filter(|&(a, b)| (a, b) != (ip.min(q), ip.max(q)))
            .collect();
        pairs.push((i, ip));
        let c = if q < i { mode.v_pow(1) } else { one };
        return (c, Pattern::odd(n, q, &pairs));
    }
    if l.defect == Some(ip) {
        let p = l.partner1(i).unwrap();
        let mut pairs: Vec<(usize, usize)> = l
            .arches()
            .into_iter()
            .filter(|&(a, b)| (a, b) != (p.min(i), p.max(i)))
            .collect();
        pairs.push((i, ip));
        let c = if p > ip { mode.v_pow(-1) } else { one };
        return (c, Pattern::odd(n, p, &pairs));
    }

    // distinct arches (i,p) and (i+1,q): rewire
    let p = l.partner1(i).unwrap();
    let q = l.partner1(ip).unwrap();
    let old_ip = (i.min(p), i.max(p));
    let old_iq = (ip.min(q), ip.max(q));
    let new_pq = (p.min(q), p.max(q));
    let mut pairs: Vec<(usize, usize)> = l
        .arches()
        .into_iter()
        .filter(|&a| a != old_ip && a != old_iq)
        .collect();
    pairs.push((i, ip));
    pairs.push(new_pq);

    if !l.is_even() {
        return (one, Pattern::odd(n, l.defect.unwrap(), &pairs));
    }

    // even: the new arch (p,q) is flagged iff exactly one of the old arches was
    let flags = l.flags();
    let mut new_flags: BTreeSet<(usize, usize)> = flags
        .iter()
        .copied()
        .filter(|&a| a != old_ip && a != old_iq)
        .collect();
    if flags.contains(&old_ip) != flags.contains(&old_iq) {
        new_flags.insert(new_pq);
    }
    let probe = Pattern::even(n, &pairs, 0);
    for g in 0..n {
        if probe.cover(g) == new_flags {
            return (one, Pattern::even(n, &pairs, g));
        }
    }
    panic!("e_apply: no face realizes the rewired flag chain");
}

/// rho rotation: +1 shifts labels up (n -> 1), -1 is the inverse.
pub fn rho_apply(l: &Pattern, dir: i32, mode: &Mode) -> (Scalar, Pattern) {
    let n = l.n;
    if n == 0 {
        return (mode.one(), l.clone());
    }
    let shift = |x: usize| -> usize {
        if dir > 0 {
            x % n + 1
        } else {
            (x + n - 2) % n + 1
        }
    };
    let pairs: Vec<(usize, usize)> = l
        .arches()
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (shift(a), shift(b));
            (a.min(b), a.max(b))
        })
        .collect();
    if l.is_even() {
        let g = l.gstar.unwrap();
        let ng = if dir > 0 { (g + 1) % n } else { (g + n - 1) % n };
        (mode.one(), Pattern::even(n, &pairs, ng))
    } else {
        let d = l.defect.unwrap();
        let nd = shift(d);
        let c = if dir > 0 && d == n {
            mode.v_pow(1)
        } else if dir < 0 && d == 1 {
            mode.v_pow(-1)
        } else {
            mode.one()
        };
        (c, Pattern::odd(n, nd, &pairs))
    }
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    E(usize),
    Rho,
    RhoInv,
}

/// Word in the TL generators with a scalar prefactor.
#[derive(Clone, Debug)]
pub struct OpWord {
    pub n: usize,
    pub letters: Vec<Letter>,
    pub prefactor: Scalar,
}

impl OpWord {
    pub fn identity(n: usize, mode: &Mode) -> Self {
        OpWord {
            n,
            letters: Vec::new(),
            prefactor: mode.one(),
        }
    }
}

pub fn letter_apply(letter: Letter, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let mut r = ModuleVector::zero(x.n);
    for (l, c) in &x.terms {
        let (s, nl) = match letter {
            Letter::E(i) => e_apply(i, l, mode),
            Letter::Rho => rho_apply(l, 1, mode),
            Letter::RhoInv => rho_apply(l, -1, mode),
        };
        r.add_term(nl, c.mul(&s));
    }
    r
}

/// Letters are applied right-to-left, as operator products read.
pub fn word_apply(w: &OpWord, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    assert_eq!(w.n, x.n, "word/vector size mismatch");
    let mut cur = x.clone();
    for &letter in w.letters.iter().rev() {
        cur = letter_apply(letter, &cur, mode);
    }
    cur.scalar_mul(&w.prefactor)
}

/// e_i with the index taken mod n (e_0 = e_n = rho e_{n-1} rho^{-1}).
pub fn e_cyclic_apply(i: usize, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let n = x.n;
    let i = i % n;
    if i != 0 {
        return letter_apply(Letter::E(i), x, mode);
    }
    let y = letter_apply(Letter::RhoInv, x, mode);
    let y = letter_apply(Letter::E(n - 1), &y, mode);
    letter_apply(Letter::Rho, &y, mode)
}

// ---------------------------------------------------------------------------
// Hecke lifts
// ---------------------------------------------------------------------------

/// psi(T_i) = e_i + t^{-1/2}; psi(T_i^{-1}) = e_i + t^{1/2}. i is cyclic.
pub fn t_apply(i: usize, inv: bool, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let shift = if inv { mode.s_pow(2) } else { mode.s_pow(-2) };
    e_cyclic_apply(i, x, mode).add(&x.scalar_mul(&shift))
}

/// T_w (or T_w^{-1}) along a reduced word of w.
pub fn t_w_apply(w: &Perm, inv: bool, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let word = w.reduced_word();
    let mut cur = x.clone();
    if inv {
        // (T_{j1}...T_{jr})^{-1} = T_{jr}^{-1}...T_{j1}^{-1}
        for &j in word.iter() {
            cur = t_apply(j, true, &cur, mode);
        }
    } else {
        for &j in word.iter().rev() {
            cur = t_apply(j, false, &cur, mode);
        }
    }
    cur
}

/// psi(Y_j^{+-1}) as the Bernstein word.
pub fn y_apply(j: usize, inv: bool, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let n = x.n;
    assert!((1..=n).contains(&j));
    let mut cur = x.clone();
    if !inv {
        // Y_j = T_{j-1}^{-1}..T_1^{-1} rho T_{n-1}..T_j
        for i in j..n {
            cur = t_apply(i, false, &cur, mode);
        }
        cur = letter_apply(Letter::Rho, &cur, mode);
        for i in 1..j {
            cur = t_apply(i, true, &cur, mode);
        }
    } else {
        // Y_j^{-1} = T_j^{-1}..T_{n-1}^{-1} rho^{-1} T_1..T_{j-1}
        for i in (1..j).rev() {
            cur = t_apply(i, false, &cur, mode);
        }
        cur = letter_apply(Letter::RhoInv, &cur, mode);
        for i in (j..n).rev() {
            cur = t_apply(i, true, &cur, mode);
        }
    }
    cur
}

/// Yhat_j = t^{-(2j-n-1)/4} psi(Y_j).
pub fn yhat_apply(j: usize, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let n = x.n as i64;
    let scale = mode.s_pow(n + 1 - 2 * j as i64);
    y_apply(j, false, x, mode).scalar_mul(&scale)
}

// ---------------------------------------------------------------------------
// Weight vectors D_J, Q_n and their spectrum
// ---------------------------------------------------------------------------

fn eps(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// D_J, built by the operator recursion
/// D_{J u {i}} = t^{-1/4} (Yhat_{2i} - v^{eps} - t^{-1/2} v^{-eps}) D_J.
pub fn build_dj(n: usize, j_set: &BTreeSet<usize>, mode: &Mode) -> ModuleVector {
    let mut cur = ModuleVector::basis(&least_nested(n), mode.one());
    let e = eps(n);
    for &i in j_set {
        let y = yhat_apply(2 * i, &cur, mode);
        let drop = mode.v_pow(e).add(&mode.s_pow(-2).mul(&mode.v_pow(-e)));
        cur = y.sub(&cur.scalar_mul(&drop)).scalar_mul(&mode.s_pow(-1));
    }
    cur
}

/// Q_n = sum_J t^{#J/4} v^{-eps #J} D_J over J subsets of {1..floor(n/2)}.
pub fn build_qn(n: usize, mode: &Mode) -> ModuleVector {
    let k = n / 2;
    let e = eps(n);
    let mut acc = ModuleVector::zero(n);
    for mask in 0u32..(1 << k) {
        let j_set: BTreeSet<usize> = (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let m = j_set.len() as i64;
        let coeff = mode.s_pow(m).mul(&mode.v_pow(-e * m));
        acc = acc.add(&build_dj(n, &j_set, mode).scalar_mul(&coeff));
    }
    acc
}

/// Yhat-eigenvalue of Q_n: xi_hat_j = v^{(-1)^{n-j}}.
pub fn xi_hat(n: usize, j: usize, mode: &Mode) -> Scalar {
    let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
    mode.v_pow(sign)
}

/// Y-weight of Q_n: xi_j = t^{(2j-n-1)/4} xi_hat_j.
pub fn xi(n: usize, j: usize, mode: &Mode) -> Scalar {
    mode.s_pow(2 * j as i64 - n as i64 - 1).mul(&xi_hat(n, j, mode))
}

/// The highest weight gamma = w_n . xi (gamma_{w_n(j)} = xi_j).
pub fn gamma(n: usize, mode: &Mode) -> Vec<Scalar> {
    let w = crate::perm::w_n(n);
    let mut g = vec![mode.one(); n];
    for j in 1..=n {
        g[w.map(j) - 1] = xi(n, j, mode);
    }
    g
}

// ---------------------------------------------------------------------------
// Intertwiners
// ---------------------------------------------------------------------------

/// Y^{alpha_i} = Y_i Y_{i+1}^{-1} on the module.
pub fn y_alpha_apply(i: usize, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    y_apply(i, false, &y_apply(i + 1, true, x, mode), mode)
}

/// I_i = T_i (1 - Y^{alpha_i}) + (t^{-1/2} - t^{1/2}) Y^{alpha_i}.
pub fn intertwiner_i_apply(i: usize, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let ya = y_alpha_apply(i, x, mode);
    let first = t_apply(i, false, &x.sub(&ya), mode);
    first.add(&ya.scalar_mul(&mode.s_pow(-2).sub(&mode.s_pow(2))))
}

/// I_w along any reduced word (result is word-independent).
pub fn intertwiner_apply(w: &Perm, x: &ModuleVector, mode: &Mode) -> ModuleVector {
    let mut cur = x.clone();
    for &j in w.reduced_word().iter().rev() {
        cur = intertwiner_i_apply(j, &cur, mode);
    }
    cur
}

/// e_w(mu) = prod over inversions (a,b) of w of
/// (t^{1/2} - t^{-1/2} mu_a/mu_b)(t^{1/2} - t^{-1/2} mu_b/mu_a).
pub fn e_w_eval(w: &Perm, mu: &[Scalar], mode: &Mode) -> Scalar {
    let mut acc = mode.one();
    for (a, b) in w.inversions() {
        let r = mu[a - 1].div(&mu[b - 1]).unwrap();
        let f1 = mode.s_pow(2).sub(&mode.s_pow(-2).mul(&r));
        let f2 = mode.s_pow(2).sub(&mode.s_pow(-2).mul(&r.inv().unwrap()));
        acc = acc.mul(&f1).mul(&f2);
    }
    acc
}

// ---------------------------------------------------------------------------
// Pairing closure Z_n
// ---------------------------------------------------------------------------

/// Close with caps (2i-1, 2i); contractible loops weigh delta, loops around
/// the puncture weigh u. Odd patterns route the defect out through point n
/// (evaluated at v = 1 upstream).
pub fn pair_close(x: &ModuleVector, mode: &Mode) -> Scalar {
    let n = x.n;
    let mut acc = mode.zero();
    for (l, c) in &x.terms {
        let cap = |p: usize| -> Option<usize> {
            // cap partner of point p, or None if p exits (odd n, p = n)
            if p % 2 == 1 {
                if p == n {
                    None
                } else {
                    Some(p + 1)
                }
            } else {
                Some(p - 1)
            }
        };
        let mut seen = vec![false; n + 1];
        let mut weight = mode.one();
        // the defect component is traced first so its points are consumed
        if let Some(d) = l.defect {
            let mut p = d;
            seen[p] = true;
            loop {
                match cap(p) {
                    None => break,
                    Some(q) => {
                        seen[q] = true;
                        let r = l.partner1(q).expect("defect path hit the defect twice");
                        seen[r] = true;
                        p = r;
                    }
                }
            }
        }
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            // trace the loop through alternating pattern arcs and caps
            let mut p = start;
            let mut crossings = 0usize;
            loop {
                seen[p] = true;
                let q = l.partner1(p).unwrap();
                seen[q] = true;
                let r = cap(q).expect("closed loop escaped through the defect exit");
                // the ray through gap g* crosses cap (2i-1, 2i) iff g* = 2i-1
                if let Some(g) = l.gstar {
                    if g == q.min(r) && q.max(r) == q.min(r) + 1 {
                        crossings += 1;
                    }
                }
                p = r;
                if p == start {
                    break;
                }
            }
            let w = if crossings % 2 == 1 {
                mode.u()
            } else {
                mode.delta()
            };
            weight = weight.mul(&w);
        }
        acc = acc.add(&c.mul(&weight));
    }
    acc
}

/// Matrix of a linear operator in the canonical pattern basis:
/// rows[r][c] = coefficient of basis[r] in op(basis[c]).
pub fn op_matrix(
    n: usize,
    mode: &Mode,
    op: impl Fn(&ModuleVector) -> ModuleVector,
) -> Vec<Vec<Scalar>> {
    let basis = enumerate(n);
    let mut rows = vec![vec![mode.zero(); basis.len()]; basis.len()];
    for (c, l) in basis.iter().enumerate() {
        let img = op(&ModuleVector::basis(l, mode.one()));
        for (lp, s) in &img.terms {
            let r = basis.iter().position(|b| b == lp).unwrap();
            rows[r][c] = s.clone();
        }
    }
    rows
}
