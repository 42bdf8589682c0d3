//! Presentations of H*(G; F₂) truncated at a degree, Dickson invariants and
//! restriction to elementary abelian subgroups.

use std::collections::HashMap;
use std::fmt::Write as _;

use log::debug;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon, Solver};
use crate::grobner::{GradedRing, Groebner};
use crate::group::{ElabSubgroup, Group};
use crate::poly::{Monomial, Poly, PolyRing};
use crate::resolution::{ChainMapLift, Resolution, RestrictionMap};

/// Evaluates monomials in chosen cohomology classes as cocycles, using one
/// chain-map lift per class.
#[derive(Clone, Debug)]
pub struct Evaluator {
    degrees: Vec<usize>,
    lifts: Vec<ChainMapLift>,
    products: HashMap<(usize, usize), BitMatrix>,
    memo: HashMap<Monomial, BitVec>,
}

impl Evaluator {
    pub fn new() -> Self {
        let mut memo = HashMap::new();
        memo.insert(Monomial::one(), BitVec::unit(1, 0));
        Self { degrees: Vec::new(), lifts: Vec::new(), products: HashMap::new(), memo }
    }

    pub fn push(&mut self, res: &Resolution, degree: usize, cocycle: &BitVec) -> Result<()> {
        let lift = res.cocycle_lift(degree, cocycle, res.top_degree().max(degree))?;
        self.degrees.push(degree);
        self.lifts.push(lift);
        self.memo.insert(Monomial::var(self.degrees.len() - 1, degree as u32), cocycle.clone());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    fn product_matrix(&mut self, res: &Resolution, i: usize, d: usize) -> Result<&BitMatrix> {
        if !self.products.contains_key(&(i, d)) {
            let need = self.degrees[i] + d;
            if self.lifts[i].top() < need {
                res.extend_lift(&mut self.lifts[i], need)?;
            }
            let m = self.lifts[i].product_matrix(res.algebra(), d, res.rank(d));
            self.products.insert((i, d), m);
        }
        Ok(&self.products[&(i, d)])
    }

    /// The cocycle of a monomial, peeling off its last variable.
    pub fn eval(&mut self, res: &Resolution, m: &Monomial) -> Result<BitVec> {
        if let Some(v) = self.memo.get(m) {
            return Ok(v.clone());
        }
        let i = m.exps().len() - 1;
        let x = Monomial::var(i, self.degrees[i] as u32);
        let rest = x.div(m);
        let inner = self.eval(res, &rest)?;
        let out = self.product_matrix(res, i, rest.degree() as usize)?.mul_vec(&inner);
        self.memo.insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn eval_poly(&mut self, res: &Resolution, p: &Poly, degree: usize) -> Result<BitVec> {
        let mut acc = BitVec::zeros(res.rank(degree));
        for t in p.terms() {
            acc.xor_assign(&self.eval(res, t)?);
        }
        Ok(acc)
    }
}

impl Default for Evaluator {
    fn default() -> Self {
        Self::new()
    }
}

/// A generator of the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// An elementary abelian subgroup above Ω₁(Z(G)) together with the images
/// of the generators in `H*(V) = F₂[t₁,…,t_s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRestriction {
    pub id: usize,
    pub rank: usize,
    pub maximal: bool,
    /// Indices of the `t`-variables vanishing on Ω₁(Z(G)); they generate
    /// `H*(V/C)` inside `H*(V)`.
    pub quotient_forms: Vec<usize>,
    pub images: Vec<Poly>,
}

impl SubgroupRestriction {
    pub fn ring(&self) -> PolyRing {
        t_ring(self.rank)
    }

    /// Image of a polynomial in the generators.
    pub fn restrict(&self, p: &Poly) -> Poly {
        p.substitute(&self.images)
    }
}

pub fn t_ring(s: usize) -> PolyRing {
    PolyRing::new((1..=s).map(|i| (format!("t{i}"), 1)))
}

/// τ_N H*(G): generators and relations through degree N.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group_hash: String,
    pub group_name: String,
    pub truncation: usize,
    /// `dim H^n(G)` for `n ≤ N`.
    pub ranks: Vec<usize>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Poly>,
    pub ring: PolyRing,
    /// Rank of Ω₁(Z(G)).
    pub centre_rank: usize,
    pub restrictions: Vec<SubgroupRestriction>,
}

impl Presentation {
    pub fn graded_ring(&self) -> Result<GradedRing> {
        GradedRing::new(self.ring.clone(), self.relations.clone())
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn relation_degrees(&self) -> Vec<usize> {
        self.relations.iter().map(|r| r.degree().unwrap_or(0) as usize).collect()
    }

    /// The restriction to Ω₁(Z(G)) itself.
    pub fn centre_restriction(&self) -> Option<&SubgroupRestriction> {
        self.restrictions.iter().find(|r| r.rank == self.centre_rank)
    }

    pub fn summary(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}({})", g.name, g.degree)).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| self.ring.format(r)).collect();
        format!(
            "{} through degree {}: generators [{}], relations [{}]",
            self.group_name,
            self.truncation,
            gens.join(", "),
            rels.join(", ")
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group {}", self.group_hash);
        let _ = writeln!(s, "name {}", self.group_name);
        let _ = writeln!(s, "truncation {}", self.truncation);
        let _ = writeln!(s, "ranks {}", join(&self.ranks));
        let _ = writeln!(s, "centre_rank {}", self.centre_rank);
        for g in &self.generators {
            let _ = writeln!(s, "gen {} {}", g.name, g.degree);
        }
        for r in &self.relations {
            let _ = writeln!(s, "rel {}", self.ring.format(r));
        }
        for v in &self.restrictions {
            let _ = writeln!(
                s,
                "subgroup {} rank {} maximal {} quotient_forms {}",
                v.id,
                v.rank,
                v.maximal as u8,
                v.quotient_forms.iter().map(|i| format!("t{}", i + 1)).collect::<Vec<_>>().join(" ")
            );
            let tr = v.ring();
            for (g, img) in self.generators.iter().zip(&v.images) {
                let _ = writeln!(s, "restriction {} {} -> {}", v.id, g.name, tr.format(img));
            }
        }
        s
    }

    /// Parses the presentation lines of `text`, returning the lines it did
    /// not recognise (with their line numbers) for the caller.
    pub fn from_text(text: &str) -> Result<(Presentation, Vec<(usize, String)>)> {
        let mut p = Presentation {
            group_hash: String::new(),
            group_name: String::new(),
            truncation: 0,
            ranks: Vec::new(),
            generators: Vec::new(),
            relations: Vec::new(),
            ring: PolyRing::default(),
            centre_rank: 0,
            restrictions: Vec::new(),
        };
        let mut rest = Vec::new();
        let mut pending_rel: Vec<(usize, String)> = Vec::new();
        let mut pending_res: Vec<(usize, usize, String, String)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse { line, msg: format!("{msg}: '{l}'") };
            let (key, val) = l.split_once(' ').unwrap_or((l, ""));
            match key {
                "group" => p.group_hash = val.trim().to_string(),
                "name" => p.group_name = val.trim().to_string(),
                "truncation" => p.truncation = val.trim().parse().map_err(|_| bad("bad truncation"))?,
                "centre_rank" => p.centre_rank = val.trim().parse().map_err(|_| bad("bad rank"))?,
                "ranks" => {
                    p.ranks = val.split_whitespace().map(|x| x.parse()).collect::<std::result::Result<_, _>>().map_err(|_| bad("bad ranks"))?
                }
                "gen" => {
                    let mut it = val.split_whitespace();
                    let (Some(name), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                        return Err(bad("expected 'gen <name> <degree>'"));
                    };
                    let degree: usize = deg.parse().map_err(|_| bad("bad degree"))?;
                    if degree == 0 || p.ring.index_of(name).is_some() {
                        return Err(bad("bad or duplicate generator"));
                    }
                    p.ring.push_var(name, degree as u32);
                    p.generators.push(Generator { name: name.to_string(), degree });
                }
                "rel" => pending_rel.push((line, val.to_string())),
                "subgroup" => {
                    let f: Vec<&str> = val.split_whitespace().collect();
                    if f.len() < 6 || f[1] != "rank" || f[3] != "maximal" || f[5] != "quotient_forms" {
                        return Err(bad("expected 'subgroup <id> rank <s> maximal <0|1> quotient_forms ...'"));
                    }
                    let id = f[0].parse().map_err(|_| bad("bad id"))?;
                    let rank = f[2].parse().map_err(|_| bad("bad rank"))?;
                    let maximal = f[4] == "1";
                    let quotient_forms = f[6..]
                        .iter()
                        .map(|t| t.strip_prefix('t').and_then(|i| i.parse::<usize>().ok()).filter(|&i| i >= 1 && i <= rank).map(|i| i - 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| bad("bad quotient form"))?;
                    p.restrictions.push(SubgroupRestriction { id, rank, maximal, quotient_forms, images: Vec::new() });
                }
                "restriction" => {
                    let (head, poly) = val.split_once("->").ok_or_else(|| bad("expected '->'"))?;
                    let mut it = head.split_whitespace();
                    let (Some(id), Some(gen)) = (it.next(), it.next()) else {
                        return Err(bad("expected 'restriction <id> <gen> -> <poly>'"));
                    };
                    let id = id.parse().map_err(|_| bad("bad id"))?;
                    pending_res.push((line, id, gen.to_string(), poly.to_string()));
                }
                _ => rest.push((line, l.to_string())),
            }
        }
        for (line, r) in pending_rel {
            let poly = p.ring.parse(&r).map_err(|e| reline(e, line))?;
            if !poly.is_homogeneous() {
                return Err(Error::NotHomogeneous(r));
            }
            p.relations.push(poly);
        }
        for v in p.restrictions.iter_mut() {
            v.images = vec![Poly::zero(); p.generators.len()];
        }
        let mut seen = vec![vec![false; p.generators.len()]; p.restrictions.len()];
        for (line, id, gen, poly) in pending_res {
            let bad = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            let vi = p.restrictions.iter().position(|v| v.id == id).ok_or_else(|| bad("unknown subgroup"))?;
            let gi = p.ring.index_of(&gen).ok_or_else(|| bad("unknown generator"))?;
            let v = &mut p.restrictions[vi];
            v.images[gi] = t_ring(v.rank).parse(&poly).map_err(|e| reline(e, line))?;
            seen[vi][gi] = true;
        }
        if seen.iter().any(|s| s.iter().any(|&b| !b)) {
            return Err(Error::Parse { line: 0, msg: "restriction table incomplete".into() });
        }
        Ok((p, rest))
    }
}

fn reline(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Restriction to one maximal elementary abelian subgroup, with what is
/// needed to express images as polynomials.
#[derive(Debug)]
struct MaximalTarget {
    subgroup: ElabSubgroup,
    res: Resolution,
    map: Option<RestrictionMap>,
    eval: Evaluator,
    /// Per degree, monomials of that degree in the `t`s and a solver
    /// expressing cocycles in them.
    bases: Vec<(Vec<Monomial>, Solver)>,
    /// Images of the generators as polynomials.
    images: Vec<Poly>,
}

impl MaximalTarget {
    fn new(subgroup: ElabSubgroup) -> Result<Self> {
        let s = subgroup.rank;
        let mut res = Resolution::for_group(&Group::elementary_abelian(s));
        res.extend(1)?;
        // t_i is dual to the i-th basis element of the subgroup
        let basis: Vec<u32> = (0..s).map(|i| 1u32 << i).collect();
        let values = res.degree_one_values(&basis)?;
        let mut eval = Evaluator::new();
        let mut e = Echelon::new(s, s);
        for j in 0..s {
            // column j of `values` is the form of cocycle e_j on the basis
            let col = BitVec::from_bits(&(0..s).map(|i| values.get(i, j)).collect::<Vec<_>>());
            let _ = e.insert_tagged(&col, BitVec::unit(s, j));
        }
        let solver = e.into_solver();
        for i in 0..s {
            let cocycle = solver.preimage(&BitVec::unit(s, i)).ok_or_else(|| Error::Invariant("H^1(V) is not dual to V".into()))?;
            eval.push(&res, 1, &cocycle)?;
        }
        Ok(Self {
            subgroup,
            map: None,
            res,
            eval,
            bases: Vec::new(),
            images: Vec::new(),
        })
    }

    fn ensure_degree(&mut self, gres: &Resolution, n: usize) -> Result<()> {
        if self.res.top_degree() < n {
            self.res.extend(n)?;
        }
        match self.map.as_mut() {
            None => self.map = Some(gres.restriction_map(&self.subgroup, &self.res, n)?),
            Some(m) if m.top() < n => gres.extend_restriction(m, &self.res, n)?,
            Some(_) => {}
        }
        let ring = t_ring(self.subgroup.rank);
        while self.bases.len() <= n {
            let d = self.bases.len();
            let monos = ring.monomials_of_degree(d as u32);
            let width = self.res.rank(d);
            if monos.len() != width {
                return Err(Error::Invariant(format!("H^{d}(V) has dimension {width}, expected {}", monos.len())));
            }
            let mut e = Echelon::new(width, monos.len());
            for (k, m) in monos.iter().enumerate() {
                let v = if d == 0 { BitVec::unit(1, 0) } else { self.eval.eval(&self.res, m)? };
                if e.insert_tagged(&v, BitVec::unit(monos.len(), k)).is_err() {
                    return Err(Error::Invariant("monomials of H*(V) are dependent".into()));
                }
            }
            self.bases.push((monos, e.into_solver()));
        }
        Ok(())
    }

    fn as_poly(&self, n: usize, cocycle: &BitVec) -> Result<Poly> {
        let (monos, solver) = &self.bases[n];
        let coords = solver.preimage(cocycle).ok_or_else(|| Error::Invariant("restriction outside H*(V)".into()))?;
        Ok(Poly::from_terms(coords.iter_ones().map(|k| monos[k].clone()).collect()))
    }

    fn restrict_generator(&mut self, gres: &Resolution, degree: usize, cocycle: &BitVec) -> Result<()> {
        self.ensure_degree(gres, degree)?;
        let img = self.map.as_ref().expect("restriction computed").restrict(degree, cocycle);
        let p = self.as_poly(degree, &img)?;
        self.images.push(p);
        Ok(())
    }
}

/// Builds τ_N H*(G) degree by degree.
#[derive(Debug)]
pub struct CohomologyBuilder {
    res: Resolution,
    ring: PolyRing,
    generators: Vec<Generator>,
    cocycles: Vec<BitVec>,
    eval: Evaluator,
    gb: Groebner,
    relations: Vec<Poly>,
    /// Standard monomials per degree, final for all degrees `≤ truncation`.
    standard: Vec<Vec<Monomial>>,
    truncation: usize,
    centre_rank: usize,
    subgroups: Vec<ElabSubgroup>,
    targets: Vec<MaximalTarget>,
}

impl CohomologyBuilder {
    pub fn new(group: &Group) -> Self {
        Self::from_resolution(Resolution::for_group(group)).expect("degree-0 setup cannot fail")
    }

    pub fn from_resolution(res: Resolution) -> Result<Self> {
        let g = res.group().clone();
        let subgroups = g.elab_above_c();
        let maximal = g.maximal_elab();
        let mut targets = Vec::new();
        for v in maximal {
            targets.push(MaximalTarget::new(v)?);
        }
        Ok(Self {
            res,
            ring: PolyRing::default(),
            generators: Vec::new(),
            cocycles: Vec::new(),
            eval: Evaluator::new(),
            gb: Groebner::new(&[]),
            relations: Vec::new(),
            standard: vec![vec![Monomial::one()]],
            truncation: 0,
            centre_rank: g.omega1_centre().rank,
            subgroups,
            targets,
        })
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Cocycles representing the generators.
    pub fn cocycles(&self) -> &[BitVec] {
        &self.cocycles
    }

    /// Computes generators and relations through degree `n`.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        if self.res.top_degree() < n {
            self.res.extend(n)?;
        }
        while self.truncation < n {
            self.step()?;
        }
        Ok(())
    }

    fn step(&mut self) -> Result<()> {
        let n = self.truncation + 1;
        self.gb.run(Some(n as u32));
        let b = self.res.rank(n);

        // standard monomials x_i·m with m standard and i ≥ every variable of m
        let mut monos: Vec<Monomial> = Vec::new();
        for i in 0..self.ring.nvars() {
            let w = self.ring.weights()[i] as usize;
            if w > n {
                continue;
            }
            let x = Monomial::var(i, w as u32);
            for m in &self.standard[n - w] {
                if m.exps().len() > i + 1 {
                    continue;
                }
                let xm = m.mul(&x);
                if !self.gb.is_reducible(&xm) {
                    monos.push(xm);
                }
            }
        }
        monos.sort();
        // smallest first, so each relation leads with its dependent monomial
        let mut e = Echelon::new(b, monos.len());
        let mut deps: Vec<BitVec> = Vec::new();
        for (k, m) in monos.iter().enumerate() {
            let v = self.eval.eval(&self.res, m)?;
            if let Err(rel) = e.insert_tagged(&v, BitVec::unit(monos.len(), k)) {
                deps.push(rel);
            }
        }
        let relations = reduce_relations(&monos, &deps);

        // new generators: unit cocycles outside the decomposables
        let mut new_gens = Vec::new();
        for j in 0..b {
            if e.insert(&BitVec::unit(b, j)).is_some() {
                new_gens.push(BitVec::unit(b, j));
            }
        }
        debug!("degree {n}: {} products, {} relations, {} new generators", monos.len(), relations.len(), new_gens.len());

        self.gb.add(relations.iter().cloned());
        let mut standard: Vec<Monomial> = monos.into_iter().filter(|m| !self.gb.is_reducible(m)).collect();
        for (k, c) in new_gens.into_iter().enumerate() {
            let name = format!("a_{n}_{k}");
            let i = self.ring.push_var(name.clone(), n as u32);
            self.gb.extend_weights(self.ring.weights());
            self.eval.push(&self.res, n, &c)?;
            self.generators.push(Generator { name, degree: n });
            for t in self.targets.iter_mut() {
                t.restrict_generator(&self.res, n, &c)?;
            }
            self.cocycles.push(c);
            standard.push(Monomial::var(i, n as u32));
        }
        if standard.len() != b {
            return Err(Error::Invariant(format!("degree {n}: {} standard monomials but b_{n} = {b}", standard.len())));
        }
        standard.sort_unstable_by(|a, b| b.cmp(a));
        self.relations.extend(relations);
        self.standard.push(standard);
        self.truncation = n;
        Ok(())
    }

    /// Snapshot of τ_N for the current N.
    pub fn presentation(&self) -> Presentation {
        let g = self.res.group();
        let restrictions = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(id, v)| self.subgroup_restriction(id, v))
            .collect();
        Presentation {
            group_hash: g.content_hash.clone(),
            group_name: g.name.clone(),
            truncation: self.truncation,
            ranks: self.res.ranks()[..=self.truncation].to_vec(),
            generators: self.generators.clone(),
            relations: self.relations.clone(),
            ring: self.ring.clone(),
            centre_rank: self.centre_rank,
            restrictions,
        }
    }

    /// Images in `H*(V)` for any `V ≥ Ω₁(Z(G))`, obtained from a maximal
    /// subgroup containing it by restricting linear forms.
    fn subgroup_restriction(&self, id: usize, v: &ElabSubgroup) -> SubgroupRestriction {
        let g = self.res.group();
        let target = self
            .targets
            .iter()
            .find(|t| v.elements.iter().all(|x| t.subgroup.contains(*x)))
            .expect("every elementary abelian subgroup lies in a maximal one");
        let big = &target.subgroup;
        // t_i of the big subgroup restricts to Σ_a [coordinate i of w_a] u_a
        let subst: Vec<Poly> = (0..big.rank)
            .map(|i| {
                let terms: Vec<Monomial> = v
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| big.coordinates(g, w).unwrap() >> i & 1 == 1)
                    .map(|(a, _)| Monomial::var(a, 1))
                    .collect();
                Poly::from_terms(terms)
            })
            .collect();
        let images = target.images.iter().map(|p| p.substitute(&subst)).collect();
        SubgroupRestriction {
            id,
            rank: v.rank,
            maximal: v.rank == big.rank,
            quotient_forms: (self.centre_rank..v.rank).collect(),
            images,
        }
    }
}

/// Reduced relation polynomials from kernel vectors over `monos`.
fn reduce_relations(monos: &[Monomial], deps: &[BitVec]) -> Vec<Poly> {
    if deps.is_empty() {
        return Vec::new();
    }
    // columns in descending monomial order so pivots are leading terms
    let n = monos.len();
    let mut m = BitMatrix::zeros(deps.len(), n);
    for (r, d) in deps.iter().enumerate() {
        for k in d.iter_ones() {
            m.set(r, n - 1 - k, true);
        }
    }
    let red = crate::gf2::rref(&m);
    (0..red.rank)
        .map(|r| Poly::from_terms(red.reduced.row(r).iter_ones().map(|c| monos[n - 1 - c].clone()).collect()))
        .collect()
}

/// τ_N H*(G) from a resolution through degree `n`.
pub fn tau_presentation(res: &Resolution, n: usize) -> Result<Presentation> {
    let mut b = CohomologyBuilder::from_resolution(res.clone())?;
    b.extend_to(n)?;
    Ok(b.presentation())
}

/// Restriction images of the generators in `H*(V)`.
pub fn restriction_hom(p: &Presentation, v_id: usize) -> Option<&[Poly]> {
    p.restrictions.iter().find(|r| r.id == v_id).map(|r| r.images.as_slice())
}

/// The Dickson invariants of rank `s`.
#[derive(Clone, Debug)]
pub struct DicksonSet {
    pub rank: usize,
    pub ring: PolyRing,
    /// `c_{s,1}, …, c_{s,s}` of degrees `2^s − 2^{s−i}`.
    pub polynomials: Vec<Poly>,
}

impl DicksonSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.polynomials.iter().map(|p| p.degree().unwrap()).collect()
    }
}

/// Coefficients of `∏_{v ∈ span(x₁,…,x_s)} (X + v) = Σ_j a_j X^{2^j}`, built
/// one variable at a time from `f_k(X) = f_{k−1}(X)² + f_{k−1}(x_k) f_{k−1}(X)`.
pub fn dickson(s: usize) -> DicksonSet {
    assert!((1..=7).contains(&s), "Dickson rank out of range");
    let ring = t_ring(s);
    let mut a: Vec<Poly> = vec![Poly::one()];
    for k in 0..s {
        let xk = ring.var(k);
        let mut c = Poly::zero();
        for (j, aj) in a.iter().enumerate() {
            c.add_assign(&aj.mul(&xk.pow(1 << j)));
        }
        let mut next = vec![Poly::zero(); a.len() + 1];
        for (j, aj) in a.iter().enumerate() {
            next[j + 1].add_assign(&aj.square());
            next[j].add_assign(&c.mul(aj));
        }
        a = next;
    }
    // a_s = 1; c_{s,i} is the coefficient of X^{2^{s−i}}
    let polynomials = (1..=s).map(|i| a[s - i].clone()).collect();
    DicksonSet { rank: s, ring, polynomials }
}
