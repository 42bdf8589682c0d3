//! Gröbner bases, normal forms and Hilbert series for homogeneous ideals
//! over F₂ with weighted variables.
//!
//! The basis is built by Buchberger's algorithm with the Gebauer–Möller
//! pair criteria, processing pairs in order of degree. Because all input is
//! homogeneous the computation can stop at any degree bound and resume
//! later; the result is then a Gröbner basis through that degree.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, PolyRing};

/// Top degree of a graded vector space, `None` meaning −∞ (the zero space).
pub type TopDegree = Option<i64>;

pub fn fmt_top(t: TopDegree) -> String {
    match t {
        Some(d) => d.to_string(),
        None => "-inf".into(),
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Incremental Gröbner basis engine.
#[derive(Clone, Debug)]
pub struct Groebner {
    weights: Vec<u32>,
    polys: Vec<Poly>,
    masks: Vec<u64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Groebner {
    pub fn new(weights: &[u32]) -> Self {
        Self { weights: weights.to_vec(), polys: Vec::new(), masks: Vec::new(), active: Vec::new(), pairs: Vec::new() }
    }

    /// Registers new variables; existing data stays valid.
    pub fn extend_weights(&mut self, weights: &[u32]) {
        assert!(weights.len() >= self.weights.len() && weights[..self.weights.len()] == self.weights[..]);
        self.weights = weights.to_vec();
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Adds ideal generators. They are reduced and inserted immediately; the
    /// S-pairs they create are processed by [`Groebner::run`].
    pub fn add(&mut self, polys: impl IntoIterator<Item = Poly>) {
        let mut input: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        input.sort_by(|a, b| a.leading().cmp(&b.leading()));
        for p in input {
            let h = self.normal_form(&p);
            if !h.is_zero() {
                self.insert(h);
            }
        }
    }

    /// Processes pending pairs of degree at most `limit` (all if `None`).
    pub fn run(&mut self, limit: Option<u32>) {
        while let Some(pos) = self.next_pair(limit) {
            let pair = self.pairs.swap_remove(pos);
            let s = self.spoly(&pair);
            let h = self.normal_form(&s);
            if !h.is_zero() {
                self.insert(h);
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Lowest degree among pending pairs.
    pub fn pending_degree(&self) -> Option<u32> {
        self.pairs.iter().map(|p| p.lcm.degree()).min()
    }

    fn next_pair(&self, limit: Option<u32>) -> Option<usize> {
        let mut best: Option<(usize, (u32, usize, usize))> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            let d = p.lcm.degree();
            if limit.is_some_and(|l| d > l) {
                continue;
            }
            let key = (d, p.j, p.i);
            if best.as_ref().is_none_or(|(_, b)| key < *b) {
                best = Some((k, key));
            }
        }
        best.map(|(k, _)| k)
    }

    fn spoly(&self, p: &Pair) -> Poly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let (lf, lg) = (f.leading().unwrap(), g.leading().unwrap());
        let mf = lf.div(&p.lcm);
        let mg = lg.div(&p.lcm);
        f.mul_monomial(&mf).add(&g.mul_monomial(&mg))
    }

    fn insert(&mut self, h: Poly) {
        let idx = self.polys.len();
        let lh = h.leading().unwrap().clone();
        self.masks.push(lh.support_mask());
        self.polys.push(h);
        let weights = self.weights.clone();

        // Gebauer–Möller update
        let new: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair { i: g, j: idx, lcm: self.lm(g).lcm(&lh, &weights) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        for (a, p) in new.iter().enumerate() {
            let coprime = self.lm(p.i).coprime(&lh);
            let dominated = new.iter().enumerate().any(|(b, q)| {
                b != a && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || b < a)
            });
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !self.lm(p.i).coprime(&lh));
        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading().unwrap();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lm(p.i).lcm(&lh, &weights) != p.lcm && lm(p.j).lcm(&lh, &weights) != p.lcm)
        });
        self.pairs.extend(kept);
        self.active.retain(|&g| !lh.divides(polys[g].leading().unwrap()));
        self.active.push(idx);
    }

    #[inline]
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading().unwrap()
    }

    fn divisor_of(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.active.iter().copied().find(|&g| self.masks[g] & !mask == 0 && self.lm(g).divides(m))
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.divisor_of(m).is_some()
    }

    /// Fully reduced remainder of `f`.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let mut rest: Vec<Monomial> = f.terms().to_vec();
        rest.reverse(); // ascending; the largest term is at the end
        let mut out: Vec<Monomial> = Vec::new();
        while let Some(t) = rest.pop() {
            match self.divisor_of(&t) {
                None => out.push(t),
                Some(g) => {
                    let q = self.lm(g).div(&t);
                    // add q·tail(g) into `rest`, which is ascending
                    let mut add: Vec<Monomial> = self.polys[g].terms()[1..].iter().map(|m| m.mul(&q)).collect();
                    add.reverse();
                    rest = merge_ascending(&rest, &add);
                }
            }
        }
        Poly::from_sorted_unchecked(out)
    }

    /// Leading monomials of the current basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.active.iter().map(|&g| self.lm(g).clone()).collect();
        v.sort();
        v
    }

    /// Reduced basis, sorted by leading monomial.
    pub fn reduced_basis(&self) -> Vec<Poly> {
        let mut order: Vec<usize> = self.active.clone();
        order.sort_by(|&a, &b| self.lm(a).cmp(self.lm(b)));
        order
            .iter()
            .map(|&g| {
                let p = &self.polys[g];
                let tail = Poly::from_sorted_unchecked(p.terms()[1..].to_vec());
                let lead = Poly::from_monomial(p.leading().unwrap().clone());
                lead.add(&self.normal_form(&tail))
            })
            .collect()
    }

    /// Standard monomials in degrees `0..=max_deg`, each degree in descending order.
    pub fn standard_monomials_upto(&self, nvars: usize, max_deg: u32) -> Vec<Vec<Monomial>> {
        let mut by_deg: Vec<Vec<Monomial>> = vec![Vec::new(); max_deg as usize + 1];
        by_deg[0].push(Monomial::one());
        for d in 1..=max_deg {
            let mut level: Vec<Monomial> = Vec::new();
            for i in 0..nvars {
                let w = self.weights[i];
                if w > d {
                    continue;
                }
                let x = Monomial::var(i, w);
                for m in &by_deg[(d - w) as usize] {
                    if m.exps().len() > i + 1 {
                        continue;
                    }
                    let xm = m.mul(&x);
                    if !self.is_reducible(&xm) {
                        level.push(xm);
                    }
                }
            }
            level.sort_unstable_by(|a, b| b.cmp(a));
            by_deg[d as usize] = level;
        }
        by_deg
    }
}

fn merge_ascending(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Reduced Gröbner basis of the ideal generated by `polys`.
pub fn groebner(ring: &PolyRing, polys: &[Poly]) -> Result<Vec<Poly>> {
    check_homogeneous(ring, polys)?;
    let mut gb = Groebner::new(ring.weights());
    gb.add(polys.iter().cloned());
    gb.run(None);
    Ok(gb.reduced_basis())
}

fn check_homogeneous(ring: &PolyRing, polys: &[Poly]) -> Result<()> {
    for p in polys {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous(ring.format(p)));
        }
    }
    Ok(())
}

/// Hilbert series `numerator(t) / ∏ (1 − t^{d_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<u32>,
}

impl HilbertSeries {
    /// Expanded coefficients `dim A_0 .. dim A_upto`.
    pub fn coefficients(&self, upto: usize) -> Vec<i64> {
        let mut c = vec![0i64; upto + 1];
        for (k, &a) in self.numerator.iter().enumerate().take(upto + 1) {
            c[k] = a;
        }
        for &d in &self.denominator {
            let d = d as usize;
            for k in d..=upto {
                c[k] += c[k - d];
            }
        }
        c
    }

    /// The series as a polynomial when the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<Vec<i64>> {
        divide_by_denominator(&self.numerator, &self.denominator)
    }

    /// Order of the pole at t = 1, i.e. the Krull dimension.
    pub fn pole_order(&self) -> usize {
        let mut num = trim(self.numerator.clone());
        let mut mult = 0;
        while !num.is_empty() && num.iter().sum::<i64>() == 0 {
            num = divide_exact(&num, 1).expect("root at 1 implies divisibility");
            mult += 1;
        }
        self.denominator.len() - mult
    }

    /// Top nonzero degree when the series is a polynomial.
    pub fn top_degree(&self) -> Option<TopDegree> {
        let p = self.as_polynomial()?;
        Some(p.iter().rposition(|&c| c != 0).map(|d| d as i64))
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Divides by `1 − t^d` exactly, or returns `None`.
fn divide_exact(num: &[i64], d: usize) -> Option<Vec<i64>> {
    let num = trim(num.to_vec());
    if num.is_empty() {
        return Some(Vec::new());
    }
    if num.len() <= d {
        return None;
    }
    let qlen = num.len() - d;
    let mut q = vec![0i64; qlen];
    for k in 0..qlen {
        q[k] = num[k] + if k >= d { q[k - d] } else { 0 };
    }
    // remainder check: coefficients k >= qlen of num must equal -(−q[k−d]) terms
    for k in qlen..num.len() {
        let expect = if k >= d && k - d < qlen { -q[k - d] } else { 0 };
        if num[k] != expect {
            return None;
        }
    }
    Some(trim(q))
}

fn divide_by_denominator(num: &[i64], den: &[u32]) -> Option<Vec<i64>> {
    let mut cur = trim(num.to_vec());
    for &d in den {
        cur = divide_exact(&cur, d as usize)?;
    }
    Some(cur)
}

fn poly_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n).map(|k| a.get(k).copied().unwrap_or(0) - b.get(k).copied().unwrap_or(0)).collect()
}

fn poly_shift(a: &[i64], s: usize) -> Vec<i64> {
    let mut v = vec![0i64; s];
    v.extend_from_slice(a);
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Hilbert series numerator of `S / (gens)` for a monomial ideal.
pub fn hilbert_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    numerator_rec(minimalize(gens.to_vec()), weights)
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(a, g)| {
        let ma = g.support_mask();
        gens[a + 1..].iter().all(|h| ma & h.support_mask() == 0 && g.coprime(h))
    });
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_t_pow(g.degree())));
    }
    // pivot on the variable occurring in the most generators
    let nv = gens.iter().map(|g| g.exps().len()).max().unwrap_or(0);
    let mut counts = vec![0usize; nv];
    for g in &gens {
        for i in g.support() {
            counts[i] += 1;
        }
    }
    let var = (0..nv).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let e = gens.iter().map(|g| g.exp(var)).filter(|&e| e > 0).min().unwrap();
    let mut pe = vec![0u8; var + 1];
    pe[var] = e;
    let pivot = Monomial::new(&pe, weights);

    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).cloned().collect();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let gcd = g.gcd(&pivot, weights);
            gcd.div(g)
        })
        .collect();
    let a = numerator_rec(minimalize(plus), weights);
    let b = numerator_rec(minimalize(colon), weights);
    let shifted = poly_shift(&b, pivot.degree() as usize);
    trim(poly_sub(&a, &poly_sub(&[], &shifted)))
}

/// Krull dimension of `S / (gens)` as the largest set of variables
/// containing no generator's support.
pub fn monomial_ideal_dim(gens: &[Monomial], nvars: usize) -> usize {
    let mut supports: Vec<u64> = gens.iter().map(|g| g.support_mask()).collect();
    assert!(nvars <= 64, "dimension search supports at most 64 variables");
    supports.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|&m| m & !s == 0) {
            minimal.push(s);
        }
    }
    nvars - min_hitting_set(&minimal, 0, nvars)
}

fn min_hitting_set(edges: &[u64], chosen: u64, bound: usize) -> usize {
    let Some(&edge) = edges.iter().filter(|&&e| e & chosen == 0).min_by_key(|e| e.count_ones()) else {
        return chosen.count_ones() as usize;
    };
    if chosen.count_ones() as usize + 1 > bound {
        return bound;
    }
    let mut best = bound;
    let mut bits = edge;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits &= bits - 1;
        best = best.min(min_hitting_set(edges, chosen | b, best));
    }
    best
}

/// A quotient `F₂[x₁,…,xₙ] / I` of a weighted polynomial ring by a
/// homogeneous ideal, with its Gröbner basis computed.
#[derive(Clone, Debug)]
pub struct GradedRing {
    ring: PolyRing,
    relations: Vec<Poly>,
    gb: Groebner,
}

impl GradedRing {
    pub fn new(ring: PolyRing, relations: Vec<Poly>) -> Result<Self> {
        check_homogeneous(&ring, &relations)?;
        let mut gb = Groebner::new(ring.weights());
        gb.add(relations.iter().cloned());
        gb.run(None);
        Ok(Self { ring, relations, gb })
    }

    pub fn polynomial_ring(ring: PolyRing) -> Self {
        let gb = Groebner::new(ring.weights());
        Self { ring, relations: Vec::new(), gb }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> Vec<Poly> {
        self.gb.reduced_basis()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb.leading_monomials()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.gb.normal_form(f)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        self.ring.parse(s)
    }

    pub fn format(&self, p: &Poly) -> String {
        self.ring.format(p)
    }

    /// The quotient by additional homogeneous elements, reusing this basis.
    pub fn quotient(&self, extra: &[Poly]) -> Result<GradedRing> {
        check_homogeneous(&self.ring, extra)?;
        let mut gb = self.gb.clone();
        gb.add(extra.iter().cloned());
        gb.run(None);
        let mut relations = self.relations.clone();
        relations.extend(extra.iter().cloned());
        Ok(GradedRing { ring: self.ring.clone(), relations, gb })
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries {
            numerator: hilbert_numerator(&self.gb.leading_monomials(), self.ring.weights()),
            denominator: self.ring.weights().to_vec(),
        }
    }

    pub fn krull_dim(&self) -> usize {
        monomial_ideal_dim(&self.gb.leading_monomials(), self.ring.nvars())
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.krull_dim() == 0
    }

    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.gb.standard_monomials_upto(self.ring.nvars(), d).pop().unwrap_or_default()
    }

    pub fn standard_monomials_upto(&self, d: u32) -> Vec<Vec<Monomial>> {
        self.gb.standard_monomials_upto(self.ring.nvars(), d)
    }

    /// Boundedness and top degree of `Ann(h)` in `A / (mod_ideal)`.
    ///
    /// Uses the exact sequence
    /// `0 → Ann(h)(−|h|) → (A/J)(−|h|) → A/J → A/(J + h) → 0`, so only the
    /// Hilbert series of `A/J` and `A/(J + h)` are needed. `h = 0` gives the
    /// whole quotient.
    pub fn annihilator_top_degree(&self, mod_ideal: &[Poly], h: &Poly) -> Result<(bool, TopDegree)> {
        check_homogeneous(&self.ring, std::slice::from_ref(h))?;
        let quotient = self.quotient(mod_ideal)?;
        quotient.annihilator_top(h)
    }

    /// As [`GradedRing::annihilator_top_degree`] with no extra ideal.
    pub fn annihilator_top(&self, h: &Poly) -> Result<(bool, TopDegree)> {
        let hs = self.hilbert_series();
        if h.is_zero() {
            return Ok(match hs.top_degree() {
                Some(top) => (true, top),
                None => (false, None),
            });
        }
        let hd = h.degree().unwrap() as usize;
        let with_h = self.quotient(std::slice::from_ref(h))?;
        self.annihilator_given_quotient(hd, &with_h)
    }

    /// `Ann(h)` from an already computed `A/(h)`, with `|h| = hd > 0`.
    pub fn annihilator_given_quotient(&self, hd: usize, with_h: &GradedRing) -> Result<(bool, TopDegree)> {
        let hs = self.hilbert_series();
        let with_h = with_h.hilbert_series();
        // t^{|h|} N_J − N_J + N_{J+h}
        let m = poly_sub(&poly_shift(&hs.numerator, hd), &poly_sub(&hs.numerator, &with_h.numerator));
        let m = trim(m);
        if m.iter().take(hd).any(|&c| c != 0) {
            return Err(Error::Invariant("annihilator series has negative-degree terms".into()));
        }
        let shifted: Vec<i64> = m.iter().skip(hd).copied().collect();
        match divide_by_denominator(&shifted, &hs.denominator) {
            None => Ok((false, None)),
            Some(p) => Ok((true, p.iter().rposition(|&c| c != 0).map(|d| d as i64))),
        }
    }

    /// Whether the ring is a finite module over the subalgebra generated by
    /// its degree-`d` part.
    pub fn finite_over_degree_d(&self, d: u32) -> bool {
        if d == 0 {
            return false;
        }
        let gens: Vec<Poly> = self.standard_monomials(d).into_iter().map(Poly::from_monomial).collect();
        if gens.is_empty() {
            return self.is_finite_dimensional();
        }
        self.quotient(&gens).map(|q| q.is_finite_dimensional()).unwrap_or(false)
    }

    /// Whether `f` is nilpotent, decided by stabilisation of `J : f^k`.
    pub fn is_nilpotent(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        check_homogeneous(&self.ring, std::slice::from_ref(f))?;
        if !f.leading().is_some_and(|m| m.degree() > 0) {
            return Ok(false);
        }
        let base = self.hilbert_series();
        let mut prev: Option<Vec<i64>> = None;
        let mut power = self.normal_form(f);
        let mut k = 1u32;
        loop {
            if power.is_zero() {
                return Ok(true);
            }
            // numerator of A/(J : f^k) up to the shift t^{k|f|}
            let q = self.quotient(std::slice::from_ref(&power))?.hilbert_series();
            let diff = trim(poly_sub(&base.numerator, &q.numerator));
            let shift = (k * f.degree().unwrap()) as usize;
            let cur: Vec<i64> = diff.iter().skip(shift).copied().collect();
            if prev.as_ref() == Some(&cur) {
                return Ok(false);
            }
            prev = Some(cur);
            power = self.normal_form(&power.mul(f));
            k += 1;
            if k > 512 {
                return Err(Error::Invariant("nilpotency test did not stabilise".into()));
            }
        }
    }
}

/// Distinct leading monomials, for callers that want the monomial ideal.
pub fn leading_set(polys: &[Poly]) -> HashSet<Monomial> {
    polys.iter().filter_map(|p| p.leading().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn xy() -> PolyRing {
        PolyRing::new([("x", 1), ("y", 1)])
    }

    fn xyw() -> PolyRing {
        PolyRing::new([("x", 1), ("y", 1), ("w", 2)])
    }

    #[test]
    fn monomial_ideal_gb() {
        let r = xy();
        let gb = groebner(&r, &[r.parse("x*y").unwrap()]).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(r.format(&gb[0]), "x*y");
        assert!(groebner(&r, &[]).unwrap().is_empty());
    }

    #[test]
    fn quaternion_relations_gb() {
        let r = xy();
        let rels = [r.parse("x^2 + x*y + y^2").unwrap(), r.parse("x^2*y + x*y^2").unwrap()];
        let gb = groebner(&r, &rels).unwrap();
        let ring = GradedRing::new(r.clone(), rels.to_vec()).unwrap();
        assert!(ring.contains(&r.parse("y^3").unwrap()));
        assert!(ring.contains(&r.parse("x^3").unwrap()));
        // oracle: degreewise quotient dimensions 1,2,2,1,0
        let dims = oracle::quotient_dims(&r, &rels, 5);
        assert_eq!(dims, vec![1, 2, 2, 1, 0, 0]);
        assert_eq!(ring.hilbert_series().coefficients(5), vec![1, 2, 2, 1, 0, 0]);
        assert!(gb.iter().any(|p| r.format(p) == "y^3"));
        assert!(gb.iter().any(|p| p.degree() == Some(2)));
    }

    #[test]
    fn normal_form_examples() {
        let r = xy();
        let ring = GradedRing::new(r.clone(), vec![r.parse("x*y").unwrap()]).unwrap();
        assert_eq!(r.format(&ring.normal_form(&r.parse("x*y + y^2").unwrap())), "y^2");
        assert!(ring.normal_form(&r.parse("x*y").unwrap()).is_zero());
        assert_eq!(ring.normal_form(&Poly::one()), Poly::one());
    }

    #[test]
    fn hilbert_examples() {
        let x = PolyRing::new([("x", 1)]);
        let hs = GradedRing::polynomial_ring(x.clone()).hilbert_series();
        assert_eq!(hs.coefficients(4), vec![1, 1, 1, 1, 1]);
        let r = xyw();
        let ring = GradedRing::new(r.clone(), vec![r.parse("x*y").unwrap()]).unwrap();
        assert_eq!(ring.hilbert_series().coefficients(6), vec![1, 2, 3, 4, 5, 6, 7]);
        let cube = GradedRing::new(x.clone(), vec![x.parse("x^3").unwrap()]).unwrap();
        assert_eq!(cube.hilbert_series().as_polynomial(), Some(vec![1, 1, 1]));
    }

    #[test]
    fn krull_examples() {
        assert_eq!(GradedRing::polynomial_ring(xy()).krull_dim(), 2);
        let r = xyw();
        let ring = GradedRing::new(r.clone(), vec![r.parse("x*y").unwrap()]).unwrap();
        assert_eq!(ring.krull_dim(), 2);
        assert_eq!(ring.hilbert_series().pole_order(), 2);
        let x = PolyRing::new([("x", 1)]);
        assert_eq!(GradedRing::new(x.clone(), vec![x.parse("x^2").unwrap()]).unwrap().krull_dim(), 0);
    }

    #[test]
    fn annihilator_examples() {
        let x = PolyRing::new([("x", 1)]);
        let a = GradedRing::polynomial_ring(x.clone());
        assert_eq!(a.annihilator_top_degree(&[], &x.var(0)).unwrap(), (true, None));
        assert_eq!(a.annihilator_top_degree(&[x.var(0)], &Poly::zero()).unwrap(), (true, Some(0)));
        let r = xy();
        let b = GradedRing::new(r.clone(), vec![r.parse("x*y").unwrap()]).unwrap();
        assert!(!b.annihilator_top_degree(&[], &r.var(0)).unwrap().0);
        assert_eq!(b.annihilator_top_degree(&[], &r.parse("x + y").unwrap()).unwrap(), (true, None));
        assert!(matches!(
            b.annihilator_top_degree(&[], &r.parse("x + y^2").unwrap()),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn finite_over_examples() {
        let x = PolyRing::new([("x", 1)]);
        let a = GradedRing::polynomial_ring(x);
        assert!(a.finite_over_degree_d(1));
        assert!(!a.finite_over_degree_d(0));
        let r = xyw();
        let b = GradedRing::new(r.clone(), vec![r.parse("x*y").unwrap()]).unwrap();
        assert!(!b.finite_over_degree_d(1));
        assert!(b.finite_over_degree_d(2));
    }

    #[test]
    fn nilpotency() {
        let r = xyw();
        let b = GradedRing::new(r.clone(), vec![r.parse("x^3").unwrap(), r.parse("x*y").unwrap()]).unwrap();
        assert!(b.is_nilpotent(&r.parse("x").unwrap()).unwrap());
        assert!(!b.is_nilpotent(&r.parse("y").unwrap()).unwrap());
        assert!(!b.is_nilpotent(&r.parse("x + y").unwrap()).unwrap());
        assert!(b.is_nilpotent(&r.parse("x^2").unwrap()).unwrap());
    }

    #[test]
    fn hilbert_matches_monomial_oracle_on_fixture_rings() {
        for (ring, rels) in oracle::fixture_rings() {
            let g = GradedRing::new(ring.clone(), rels.clone()).unwrap();
            let expect = oracle::quotient_dims(&ring, &rels, 12);
            let got = g.hilbert_series().coefficients(12);
            assert_eq!(got, expect, "{:?}", rels.iter().map(|p| ring.format(p)).collect::<Vec<_>>());
            assert_eq!(g.krull_dim(), g.hilbert_series().pole_order());
        }
    }

    #[test]
    fn annihilator_matches_oracle_on_fixture_rings() {
        for (ring, rels) in oracle::fixture_rings() {
            let g = GradedRing::new(ring.clone(), rels.clone()).unwrap();
            for h in oracle::sample_elements(&ring, 3) {
                let (bounded, top) = g.annihilator_top(&h).unwrap();
                let dims = oracle::annihilator_dims(&ring, &rels, &h, 12);
                if bounded {
                    let brute_top = dims.iter().rposition(|&d| d != 0).map(|d| d as i64);
                    assert_eq!(top, brute_top, "h = {}", ring.format(&h));
                    if let Some(t) = top {
                        assert!(t <= 12 - h.degree().unwrap() as i64 || dims[t as usize] > 0);
                    }
                } else {
                    // unbounded annihilators are nonzero in the tail of the window
                    assert!(dims[8..].iter().any(|&d| d > 0), "h = {}", ring.format(&h));
                }
            }
        }
    }

    #[test]
    fn colon_contains_ideal() {
        // (J : h) ⊇ J with equality iff Ann(h) = 0, read through Hilbert series:
        // HS(A/(J+h)) = (1 − t^{|h|}) HS(A/J) exactly when h is regular.
        for (ring, rels) in oracle::fixture_rings() {
            let g = GradedRing::new(ring.clone(), rels.clone()).unwrap();
            for h in oracle::sample_elements(&ring, 2) {
                let (bounded, top) = g.annihilator_top(&h).unwrap();
                let hs = g.hilbert_series().coefficients(12);
                let hq = g.quotient(std::slice::from_ref(&h)).unwrap().hilbert_series().coefficients(12);
                let d = h.degree().unwrap() as usize;
                let regular = (0..=12).all(|k| hq[k] == hs[k] - if k >= d { hs[k - d] } else { 0 });
                assert_eq!(regular, bounded && top.is_none());
            }
        }
    }
}
