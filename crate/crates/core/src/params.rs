//! Filter-regular systems of parameters in a presented cohomology ring.
//!
//! A sequence `h₁,…,h_r` is filter-regular when each `Ann(hᵢ)` in
//! `A/(h₁,…,h_{i−1})` is finite-dimensional. The top degrees of these
//! annihilators (plus the top of the final quotient) determine the type
//! `(d₀,…,d_r)` consumed by the completion test.

use std::collections::HashMap;

use crate::cohomring::{dickson, DicksonSet, Presentation, SubgroupRestriction};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::grobner::{fmt_top, GradedRing, TopDegree};
use crate::poly::{Monomial, Poly};

/// Candidates tried per search before giving up.
pub const SEARCH_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSystem {
    pub elements: Vec<Poly>,
    pub degrees: Vec<u32>,
    /// Top degree of `Ann(h_{i+1})` in `A/(h₁,…,hᵢ)`; one extra trailing
    /// entry (the whole final quotient) when the system is an hsop.
    pub ann_tops: Vec<TopDegree>,
    pub filter_regular: bool,
    /// `A/(h₁,…,h_r)` is finite-dimensional.
    pub hsop: bool,
    pub filter_type: Option<Vec<i64>>,
}

impl ParamSystem {
    pub fn analyse(ring: &GradedRing, elements: Vec<Poly>) -> Result<Self> {
        let (filter_regular, ann_tops) = is_filter_regular(ring, &elements)?;
        let degrees: Vec<u32> = elements.iter().map(|e| e.degree().unwrap_or(0)).collect();
        let hsop = filter_regular && ann_tops.len() == elements.len() + 1;
        let filter_type = hsop.then(|| filter_degree_type(&degrees, &ann_tops));
        Ok(Self { elements, degrees, ann_tops, filter_regular, hsop, filter_type })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// A filter-regular homogeneous system of parameters.
    pub fn is_good(&self) -> bool {
        self.filter_regular && self.hsop
    }

    /// `param` lines for the presentation file.
    pub fn to_lines(&self, ring: &GradedRing) -> Vec<String> {
        let mut out: Vec<String> = self.elements.iter().map(|e| format!("param {}", ring.format(e))).collect();
        let tops: Vec<String> = self.ann_tops.iter().map(|&t| fmt_top(t)).collect();
        out.push(format!("ann_tops {}", tops.join(" ")));
        if let Some(t) = &self.filter_type {
            out.push(format!("type {}", join(t)));
        }
        out
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_param(h: &Poly) -> Result<u32> {
    if !h.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{h:?}")));
    }
    match h.degree() {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::Invariant("parameters must have positive degree".into())),
    }
}

/// Whether `seq` is filter-regular, with the annihilator tops found so far.
/// The trailing `h_{r+1} = 0` term is appended when `seq` is an hsop.
pub fn is_filter_regular(ring: &GradedRing, seq: &[Poly]) -> Result<(bool, Vec<TopDegree>)> {
    let mut q = ring.clone();
    let mut tops = Vec::with_capacity(seq.len() + 1);
    for h in seq {
        let hd = check_param(h)?;
        let next = q.quotient(std::slice::from_ref(h))?;
        let (bounded, top) = q.annihilator_given_quotient(hd as usize, &next)?;
        if !bounded {
            return Ok((false, tops));
        }
        tops.push(top);
        q = next;
    }
    if q.is_finite_dimensional() {
        tops.push(q.annihilator_top(&Poly::zero())?.1);
    }
    Ok((true, tops))
}

/// `e_i = top(Ann(h_{i+1}) in A/(h₁..hᵢ)) − Σ_{j≤i}|h_j|`, or `None` for −∞.
pub fn shifted_tops(degrees: &[u32], tops: &[TopDegree]) -> Vec<TopDegree> {
    let mut sum = 0i64;
    tops.iter()
        .enumerate()
        .map(|(i, t)| {
            if i > 0 {
                sum += degrees[i - 1] as i64;
            }
            t.map(|t| t - sum)
        })
        .collect()
}

/// The least `(d₀,…,d_r)` with `d₀ ≥ −1`, `d_{i−1} − 1 ≤ dᵢ ≤ d_{i−1}` and
/// `dᵢ ≥ eᵢ`.
pub fn filter_degree_type(degrees: &[u32], tops: &[TopDegree]) -> Vec<i64> {
    let e = shifted_tops(degrees, tops);
    let mut suffix_max = vec![None; e.len() + 1];
    for i in (0..e.len()).rev() {
        suffix_max[i] = suffix_max[i + 1].max(e[i]);
    }
    let mut d = Vec::with_capacity(e.len());
    for i in 0..e.len() {
        let floor = if i == 0 { -1 } else { d[i - 1] - 1 };
        d.push(suffix_max[i].map_or(floor, |m: i64| m.max(floor)));
    }
    d
}

/// The type of a filter-regular hsop.
pub fn filter_type(ring: &GradedRing, seq: &[Poly]) -> Result<Vec<i64>> {
    let sys = ParamSystem::analyse(ring, seq.to_vec())?;
    sys.filter_type.ok_or(Error::NotFilterRegular)
}

fn rank_of(p: &Presentation) -> usize {
    p.restrictions.iter().map(|r| r.rank).max().unwrap_or(0)
}

fn finite_in_t(rank: usize, images: Vec<Poly>) -> bool {
    let ring = crate::cohomring::t_ring(rank);
    GradedRing::new(ring, images).map(|q| q.is_finite_dimensional()).unwrap_or(false)
}

/// Combinations of `k` indices out of `n` in lexicographic order.
fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `ζ₁,…,ζ_r` (`r` the rank of Ω₁(Z(G))): elements whose restrictions to
/// Ω₁(Z(G)) form an hsop there. Generators first, then standard monomials.
fn centre_parameters(p: &Presentation, ring: &GradedRing) -> Result<Vec<Poly>> {
    let r = p.centre_rank;
    if r == 0 {
        return Ok(Vec::new());
    }
    let c = p.centre_restriction().ok_or_else(|| Error::Invariant("missing centre restriction".into()))?;
    let mut gens: Vec<(usize, usize)> = p.generators.iter().enumerate().map(|(i, g)| (g.degree, i)).collect();
    gens.sort_unstable();
    let mut pools: Vec<Vec<Poly>> = vec![gens.iter().map(|&(_, i)| ring.ring().var(i)).collect()];
    let mut monos = Vec::new();
    for layer in ring.standard_monomials_upto(p.truncation as u32).into_iter().skip(1) {
        monos.extend(layer.into_iter().filter(|m| m.degree() > 0).map(Poly::from_monomial));
        if monos.len() >= SEARCH_BUDGET {
            break;
        }
    }
    monos.truncate(SEARCH_BUDGET);
    pools.push(monos);
    for pool in pools {
        let cands: Vec<(Poly, Poly)> = pool
            .into_iter()
            .map(|f| {
                let img = c.restrict(&f);
                (f, img)
            })
            .filter(|(_, img)| !img.is_zero())
            .collect();
        let mut found = None;
        combinations(cands.len(), r, |idx| {
            let images = idx.iter().map(|&i| cands[i].1.clone()).collect();
            if finite_in_t(c.rank, images) {
                found = Some(idx.iter().map(|&i| cands[i].0.clone()).collect());
                true
            } else {
                false
            }
        });
        if let Some(f) = found {
            return Ok(f);
        }
    }
    Err(Error::TruncationTooLow(p.truncation))
}

/// The Dickson invariant `c_{s−r,i}` of `V/C`, raised to `2^e`, inside
/// `H*(V)`; zero when `i` exceeds the rank of `V/C`.
fn dickson_target(v: &SubgroupRestriction, cache: &mut HashMap<usize, DicksonSet>, i: usize, e: u32) -> Poly {
    let k = v.quotient_forms.len();
    if i > k {
        return Poly::zero();
    }
    let set = cache.entry(k).or_insert_with(|| dickson(k));
    let t = v.ring();
    let images: Vec<Poly> = v.quotient_forms.iter().map(|&j| t.var(j)).collect();
    set.polynomials[i - 1].substitute(&images).pow(1 << e)
}

/// Degree-`deg` elements of the ring whose restrictions equal `targets`.
fn match_restrictions(
    ring: &GradedRing,
    subgroups: &[&SubgroupRestriction],
    targets: &[Poly],
    deg: u32,
) -> Option<Poly> {
    let basis = ring.standard_monomials(deg);
    if basis.is_empty() {
        return None;
    }
    let mut cols: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut col = |v: usize, m: &Monomial| {
        let n = cols.len();
        *cols.entry((v, m.clone())).or_insert(n)
    };
    let target_cols: Vec<usize> =
        targets.iter().enumerate().flat_map(|(v, t)| t.terms().iter().map(move |m| (v, m))).map(|(v, m)| col(v, m)).collect();
    let rows: Vec<Vec<usize>> = basis
        .iter()
        .map(|m| {
            let mp = Poly::from_monomial(m.clone());
            subgroups
                .iter()
                .enumerate()
                .flat_map(|(v, s)| s.restrict(&mp).terms().iter().map(|t| (v, t.clone())).collect::<Vec<_>>())
                .map(|(v, t)| col(v, &t))
                .collect()
        })
        .collect();
    let width = cols.len();
    let mut ech = Echelon::new(width, basis.len());
    for (j, r) in rows.iter().enumerate() {
        let mut v = BitVec::zeros(width);
        for &c in r {
            v.set(c, true);
        }
        let _ = ech.insert_tagged(&v, BitVec::unit(basis.len(), j));
    }
    let mut target = BitVec::zeros(width);
    for &c in &target_cols {
        target.set(c, true);
    }
    let tag = ech.preimage(&target)?;
    let f = Poly::from_terms(tag.iter_ones().map(|j| basis[j].clone()).collect());
    (!f.is_zero()).then_some(f)
}

/// Builds `ζ₁,…,ζ_K` with `K = prank(G)`: the first `r` restrict to an hsop
/// of `H*(C)`, `C = Ω₁(Z(G))`; `ζ_{r+i}` restricts on each `V ≥ C` to
/// the `i`-th Dickson invariant of `V/C` raised to a 2-power (zero if
/// `i > rank V/C`). Any such system is filter-regular.
pub fn construct_parameters(p: &Presentation, ring: &GradedRing) -> Result<ParamSystem> {
    let r = p.centre_rank;
    let k = rank_of(p);
    let mut elements = centre_parameters(p, ring)?;
    let subgroups: Vec<&SubgroupRestriction> = p.restrictions.iter().collect();
    let mut cache = HashMap::new();
    let cap = 2 * p.truncation.max(1) as u32;
    for i in 1..=k - r {
        let base = (1u32 << (k - r)) - (1u32 << (k - r - i));
        let mut found = None;
        let mut e = 0u32;
        while base << e <= cap {
            let deg = base << e;
            let targets: Vec<Poly> = subgroups
                .iter()
                .map(|v| dickson_target(v, &mut cache, i, e + (k - v.rank) as u32))
                .collect();
            if let Some(f) = match_restrictions(ring, &subgroups, &targets, deg) {
                found = Some(f);
                break;
            }
            e += 1;
        }
        elements.push(found.ok_or(Error::TruncationTooLow(p.truncation))?);
    }
    let sys = ParamSystem::analyse(ring, elements)?;
    log::debug!("constructed {:?}, tops {:?}", sys.elements.iter().map(|e| ring.format(e)).collect::<Vec<_>>(), sys.ann_tops);
    if !sys.is_good() {
        return Err(Error::NotFilterRegular);
    }
    Ok(sys)
}

/// Homogeneous candidates of degree in `1..max_deg`: generators first
/// within each degree, then other standard monomials.
fn small_candidates(ring: &GradedRing, min_deg: u32, max_deg: u32, budget: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    if max_deg < min_deg {
        return out;
    }
    let layers = ring.standard_monomials_upto(max_deg);
    for (d, layer) in layers.into_iter().enumerate().skip(min_deg.max(1) as usize) {
        let (vars, rest): (Vec<Monomial>, Vec<Monomial>) =
            layer.into_iter().partition(|m| m.support().count() == 1 && m.exps().iter().sum::<u8>() == 1);
        debug_assert!(vars.iter().chain(&rest).all(|m| m.degree() as usize == d));
        out.extend(vars.into_iter().chain(rest).map(Poly::from_monomial));
        if out.len() >= budget {
            out.truncate(budget);
            break;
        }
    }
    out
}

/// Replaces parameters by proper divisors. `f` is accepted in place of
/// `ζ` when `ζ^{2^k} ∈ (f)` for some `k ≤ 2`: powers and divisors of a
/// filter-regular system stay filter-regular. The result is re-verified;
/// on any doubt the input is returned.
pub fn factor_improve(ring: &GradedRing, sys: &ParamSystem) -> Result<ParamSystem> {
    if !sys.is_good() {
        return Ok(sys.clone());
    }
    let mut elements = sys.elements.clone();
    for slot in elements.iter_mut() {
        let z = slot.clone();
        let zd = z.degree().unwrap_or(0);
        'cand: for f in small_candidates(ring, 1, zd.saturating_sub(1), SEARCH_BUDGET) {
            let q = ring.quotient(std::slice::from_ref(&f))?;
            let mut pw = z.clone();
            for _ in 0..3 {
                if q.contains(&pw) {
                    *slot = f;
                    break 'cand;
                }
                pw = pw.square();
            }
        }
    }
    if elements == sys.elements {
        return Ok(sys.clone());
    }
    let out = ParamSystem::analyse(ring, elements)?;
    Ok(if out.is_good() { out } else { sys.clone() })
}

/// Substitutes `alternatives[i]` for `elements[i]`; each difference must be
/// nilpotent, in which case filter-regularity is preserved.
pub fn nilpotent_replace(ring: &GradedRing, sys: &ParamSystem, alternatives: &[Poly]) -> Result<ParamSystem> {
    if alternatives.len() != sys.len() {
        return Err(Error::Invariant("alternative list has the wrong length".into()));
    }
    for (i, (a, z)) in alternatives.iter().zip(&sys.elements).enumerate() {
        let diff = a.add(z);
        if !diff.is_zero() && (a.degree() != z.degree() || !ring.is_nilpotent(&diff)?) {
            return Err(Error::NotNilpotent(i));
        }
    }
    let out = ParamSystem::analyse(ring, alternatives.to_vec())?;
    debug_assert_eq!(out.filter_regular, sys.filter_regular);
    Ok(out)
}

/// Raises `elements[i]` to the `2^{exponents[i]}`-th power.
pub fn power_adjust(ring: &GradedRing, sys: &ParamSystem, exponents: &[u32]) -> Result<ParamSystem> {
    let elements = sys.elements.iter().zip(exponents).map(|(z, &e)| z.pow(1 << e)).collect();
    ParamSystem::analyse(ring, elements)
}

/// Replaces the last parameter by the lowest-degree element completing the
/// others to an hsop. In dimension one every parameter is filter-regular.
pub fn replace_last_parameter(ring: &GradedRing, sys: &ParamSystem) -> Result<ParamSystem> {
    let Some(last) = sys.elements.last() else { return Ok(sys.clone()) };
    if !sys.is_good() {
        return Ok(sys.clone());
    }
    let prefix = &sys.elements[..sys.len() - 1];
    let q = ring.quotient(prefix)?;
    let ld = last.degree().unwrap_or(0);
    for f in small_candidates(ring, 1, ld.saturating_sub(1), SEARCH_BUDGET) {
        if q.quotient(std::slice::from_ref(&f))?.is_finite_dimensional() {
            let mut elements = prefix.to_vec();
            elements.push(f);
            let out = ParamSystem::analyse(ring, elements)?;
            if out.is_good() {
                return Ok(out);
            }
        }
    }
    Ok(sys.clone())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degrees of a filter-regular hsop (over some finite extension field)
/// beginning with `prefix`: the prefix degrees, then the least `d` for which
/// `A/(prefix)` is finite over its degree-`d` part, repeated.
pub fn existence_degrees(ring: &GradedRing, prefix: &[Poly]) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(ring.ring().nvars());
    for h in prefix {
        out.push(check_param(h)?);
    }
    let q = ring.quotient(prefix)?;
    let dim = q.krull_dim();
    if dim == 0 {
        return Ok(out);
    }
    // every generator has a power in degree lcm, so the search terminates
    let lcm = ring.ring().weights().iter().fold(1u32, |l, &w| l / gcd(l, w) * w);
    for d in 1..=lcm {
        if q.finite_over_degree_d(d) {
            out.extend(std::iter::repeat_n(d, dim));
            return Ok(out);
        }
    }
    Err(Error::Invariant("no degree makes the quotient finite".into()))
}
