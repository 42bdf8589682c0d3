//! Brute-force reference computations used to check the fast paths.
//!
//! Everything here works degree by degree on explicit spanning sets, so it is
//! slow but has no moving parts.
#![allow(dead_code)]

use modcoh::gf2::{rank, BitMatrix, BitVec};
use modcoh::poly::{Monomial, Poly, PolyRing};

/// Rows of `I_d` written in the monomial basis of `S_d`.
fn ideal_rows(ring: &PolyRing, rels: &[Poly], d: u32, basis: &[Monomial]) -> Vec<BitVec> {
    let mut rows = Vec::new();
    for r in rels {
        let Some(rd) = r.degree() else { continue };
        if rd > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - rd) {
            rows.push(coords(&r.mul_monomial(&m), basis));
        }
    }
    rows
}

fn coords(p: &Poly, basis: &[Monomial]) -> BitVec {
    let mut v = BitVec::zeros(basis.len());
    for t in p.terms() {
        let i = basis.iter().position(|b| b == t).expect("term of the wrong degree");
        v.flip(i);
    }
    v
}

fn rank_of(rows: &[BitVec], width: usize) -> usize {
    if rows.is_empty() || width == 0 {
        return 0;
    }
    rank(&BitMatrix::from_rows(width, rows))
}

/// `dim (S/I)_d` for `d = 0..=upto`.
pub fn quotient_dims(ring: &PolyRing, rels: &[Poly], upto: u32) -> Vec<i64> {
    (0..=upto)
        .map(|d| {
            let basis = ring.monomials_of_degree(d);
            let rows = ideal_rows(ring, rels, d, &basis);
            (basis.len() - rank_of(&rows, basis.len())) as i64
        })
        .collect()
}

/// `dim {a ∈ (S/I)_d : a·h = 0}` for `d = 0..=upto`.
pub fn annihilator_dims(ring: &PolyRing, rels: &[Poly], h: &Poly, upto: u32) -> Vec<i64> {
    let e = h.degree().expect("nonzero h");
    (0..=upto)
        .map(|d| {
            let src = ring.monomials_of_degree(d);
            let dst = ring.monomials_of_degree(d + e);
            let idst = ideal_rows(ring, rels, d + e, &dst);
            let base = rank_of(&idst, dst.len());
            let mut all = idst.clone();
            all.extend(src.iter().map(|m| coords(&h.mul_monomial(m), &dst)));
            let image = rank_of(&all, dst.len()) - base;
            let kernel = src.len() - image;
            let isrc = rank_of(&ideal_rows(ring, rels, d, &src), src.len());
            (kernel - isrc) as i64
        })
        .collect()
}

/// Small graded rings with known structure.
pub fn fixture_rings() -> Vec<(PolyRing, Vec<Poly>)> {
    type Spec<'a> = (&'a [(&'a str, u32)], &'a [&'a str]);
    let specs: &[Spec] = &[
        (&[("x", 1), ("y", 1), ("w", 2)], &["x*y"]),
        (&[("x", 1), ("y", 2)], &["x^2"]),
        (&[("x", 1), ("y", 1), ("z", 4)], &["x^2 + x*y + y^2", "x^2*y + x*y^2"]),
        (&[("x", 1), ("y", 1)], &[]),
        (&[("a", 1), ("b", 2), ("c", 3)], &["a^2*b + c*a", "b^3 + a*c*b + a^6"]),
        (&[("u", 1), ("v", 1), ("w", 1)], &["u*v + v*w", "u^3", "w^2*v"]),
        (&[("x", 2), ("y", 3)], &["x^3 + y^2"]),
    ];
    specs
        .iter()
        .map(|(vars, rels)| {
            let ring = PolyRing::new(vars.iter().map(|&(n, w)| (n, w)));
            let rels = rels.iter().map(|r| ring.parse(r).unwrap()).collect();
            (ring, rels)
        })
        .collect()
}

/// Every monomial of degree `1..=max_deg` plus the sum of each consecutive
/// pair of monomials of the same degree.
pub fn sample_elements(ring: &PolyRing, max_deg: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        let ms = ring.monomials_of_degree(d);
        for m in &ms {
            out.push(Poly::from_monomial(m.clone()));
        }
        for w in ms.windows(2) {
            out.push(Poly::from_terms(w.to_vec()));
        }
    }
    out
}

/// The truncated ideal `I_{≤d}` contains `p`.
pub fn in_ideal(ring: &PolyRing, rels: &[Poly], p: &Poly) -> bool {
    if p.is_zero() {
        return true;
    }
    let d = p.degree().unwrap();
    let basis = ring.monomials_of_degree(d);
    let mut rows = ideal_rows(ring, rels, d, &basis);
    let r0 = rank_of(&rows, basis.len());
    rows.push(coords(p, &basis));
    rank_of(&rows, basis.len()) == r0
}

/// `dim H^n(G; F₂)` for `n = 0..=upto` from the inhomogeneous bar complex.
/// Exponential in `n`; only for tiny groups.
pub fn bar_cohomology_dims(g: &modcoh::group::Group, upto: usize) -> Vec<usize> {
    let q = g.order();
    // δ_n : C^n → C^{n+1} as a |G|^{n+1} × |G|^n matrix (rows = tuples of length n+1)
    let delta = |n: usize| -> BitMatrix {
        let rows = q.pow(n as u32 + 1);
        let cols = q.pow(n as u32);
        let mut m = BitMatrix::zeros(rows, cols);
        let mut tuple = vec![0u32; n + 1];
        for r in 0..rows {
            let mut x = r;
            for t in tuple.iter_mut() {
                *t = (x % q) as u32;
                x /= q;
            }
            let index = |t: &[u32]| t.iter().rev().fold(0usize, |acc, &e| acc * q + e as usize);
            let mut hit = |c: usize| {
                let cur = m.get(r, c);
                m.set(r, c, !cur);
            };
            hit(index(&tuple[1..]));
            for i in 0..n {
                let mut t: Vec<u32> = tuple[..i].to_vec();
                t.push(g.mul(tuple[i], tuple[i + 1]));
                t.extend_from_slice(&tuple[i + 2..]);
                hit(index(&t));
            }
            hit(index(&tuple[..n]));
        }
        m
    };
    let ranks: Vec<usize> = (0..=upto).map(|n| rank(&delta(n))).collect();
    (0..=upto)
        .map(|n| {
            let cols = q.pow(n as u32);
            cols - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }
        })
        .collect()
}

/// Rank of the largest elementary abelian subgroup, by exhaustive search over
/// increasing sequences of commuting involutions.
pub fn prank_brute(g: &modcoh::group::Group) -> usize {
    fn extend(g: &modcoh::group::Group, gens: &mut Vec<u32>, members: &[bool], start: u32) -> usize {
        let mut best = gens.len();
        for x in start..g.order() as u32 {
            if members[x as usize] || !g.is_involution(x) || !gens.iter().all(|&y| g.commute(x, y)) {
                continue;
            }
            let mut next = members.to_vec();
            for (y, &m) in members.iter().enumerate() {
                if m {
                    next[g.mul(x, y as u32) as usize] = true;
                }
            }
            gens.push(x);
            best = best.max(extend(g, gens, &next, x + 1));
            gens.pop();
        }
        best
    }
    let mut members = vec![false; g.order()];
    members[0] = true;
    extend(g, &mut Vec::new(), &members, 1)
}

/// Rank of the subgroup of central involutions, counted directly.
pub fn centre_rank_brute(g: &modcoh::group::Group) -> usize {
    let n = g.order() as u32;
    let central = (0..n).filter(|&x| (x == 0 || g.is_involution(x)) && (0..n).all(|y| g.commute(x, y))).count();
    central.trailing_zeros() as usize
}
