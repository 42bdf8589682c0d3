//! Finite 2-groups given by power-commutator presentations.
//!
//! An element is stored as its normal word `g1^e1 ... gn^en` with every
//! `ei ∈ {0,1}`, packed into an index whose bit `i-1` is `ei`. The identity is
//! index 0. Multiplication is carried out once by collection and cached in a
//! full table.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest supported number of pc generators (order 2^10).
pub const MAX_GENS: usize = 10;

/// Parsed power-commutator presentation at the prime 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub ngens: usize,
    /// `power[i]` is the normal word of `g_{i+1}^2`.
    pub power: Vec<u32>,
    /// `comm[j][i]` (j > i) is the normal word of `[g_{j+1}, g_{i+1}]`.
    pub comm: Vec<Vec<u32>>,
    /// `name` / `smallgroup` metadata picked up from `#` comments.
    pub name: Option<String>,
    pub small_group: Option<(u32, u32)>,
}

impl PcPresentation {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ngens: Option<usize> = None;
        let mut saw_prime = false;
        let mut power = Vec::new();
        let mut comm: Vec<Vec<u32>> = Vec::new();
        let mut name = None;
        let mut small_group = None;
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("name:") {
                    name = Some(v.trim().to_string());
                } else if let Some(v) = comment.strip_prefix("smallgroup:") {
                    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
                    if let [o, i] = parts.as_slice() {
                        if let (Ok(o), Ok(i)) = (o.parse(), i.parse()) {
                            small_group = Some((o, i));
                        }
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line: lineno, msg: msg.to_string() };
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("prime") => {
                    if toks.next() != Some("2") {
                        return Err(perr("only the prime 2 is supported"));
                    }
                    saw_prime = true;
                }
                Some("ngens") => {
                    let n: usize =
                        toks.next().and_then(|t| t.parse().ok()).ok_or_else(|| perr("bad ngens"))?;
                    if n > MAX_GENS {
                        return Err(perr("too many generators"));
                    }
                    ngens = Some(n);
                    power = vec![0; n];
                    comm = vec![vec![0; n]; n];
                }
                Some("pow") => {
                    let n = ngens.ok_or_else(|| perr("pow before ngens"))?;
                    let i = parse_index(toks.next(), n).ok_or_else(|| perr("bad generator index"))?;
                    if toks.next() != Some("=") {
                        return Err(perr("expected '='"));
                    }
                    let rest: Vec<&str> = toks.collect();
                    let w = parse_word(&rest, n).map_err(|m| perr(&m))?;
                    if w & ((1u32 << (i + 1)) - 1) != 0 {
                        return Err(perr("power word must involve later generators only"));
                    }
                    power[i] = w;
                }
                Some("comm") => {
                    let n = ngens.ok_or_else(|| perr("comm before ngens"))?;
                    let j = parse_index(toks.next(), n).ok_or_else(|| perr("bad generator index"))?;
                    let i = parse_index(toks.next(), n).ok_or_else(|| perr("bad generator index"))?;
                    if j <= i {
                        return Err(perr("commutator indices must satisfy j > i"));
                    }
                    if toks.next() != Some("=") {
                        return Err(perr("expected '='"));
                    }
                    let rest: Vec<&str> = toks.collect();
                    let w = parse_word(&rest, n).map_err(|m| perr(&m))?;
                    if w & ((1u32 << (j + 1)) - 1) != 0 {
                        return Err(perr("commutator word must involve later generators only"));
                    }
                    comm[j][i] = w;
                }
                Some(other) => return Err(perr(&format!("unknown directive '{other}'"))),
                None => {}
            }
        }
        if !saw_prime {
            return Err(Error::Parse { line: 0, msg: "missing 'prime 2'".into() });
        }
        let ngens = ngens.ok_or(Error::Parse { line: 0, msg: "missing 'ngens'".into() })?;
        Ok(Self { ngens, power, comm, name, small_group })
    }
}

fn parse_index(tok: Option<&str>, n: usize) -> Option<usize> {
    let i: usize = tok?.parse().ok()?;
    (1..=n).contains(&i).then_some(i - 1)
}

/// Parses `g1^e1 g3 ...`, `g1*g2`, or `1`, requiring a normal word.
fn parse_word(toks: &[&str], n: usize) -> std::result::Result<u32, String> {
    let mut word = 0u32;
    let mut last: Option<usize> = None;
    for tok in toks.iter().flat_map(|t| t.split('*')).filter(|t| !t.is_empty()) {
        if tok == "1" {
            continue;
        }
        let (g, e) = match tok.split_once('^') {
            Some((g, e)) => (g, e.parse::<u32>().map_err(|_| format!("bad exponent in '{tok}'"))?),
            None => (tok, 1),
        };
        let idx = g
            .strip_prefix('g')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&k| (1..=n).contains(&k))
            .ok_or_else(|| format!("bad generator '{g}'"))?
            - 1;
        if e > 1 {
            return Err(format!("exponent of '{tok}' must be 0 or 1"));
        }
        if last.is_some_and(|l| l >= idx) {
            return Err("word is not in normal form".into());
        }
        last = Some(idx);
        if e == 1 {
            word |= 1 << idx;
        }
    }
    Ok(word)
}

/// A finite 2-group with its full multiplication table.
#[derive(Clone)]
pub struct Group {
    order: usize,
    ngens: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    pub name: String,
    pub small_group: Option<(u32, u32)>,
    /// SHA-256 of the defining text, used as a cache key.
    pub content_hash: String,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("name", &self.name).field("order", &self.order).finish()
    }
}

struct Collector<'a> {
    pc: &'a PcPresentation,
    memo: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl Collector<'_> {
    fn mul_gen(&mut self, x: u32, i: usize) -> u32 {
        let n = self.pc.ngens;
        let key = x as usize * n + i;
        if self.memo[key] != UNSET {
            return self.memo[key];
        }
        let head_mask = (1u32 << (i + 1)) - 1;
        let head = x & head_mask;
        let tail = x & !head_mask;
        // tail · g_i = g_i · tail^{g_i}, with g_j^{g_i} = g_j [g_j, g_i]
        let mut conj_tail = 0u32;
        for j in (i + 1)..n {
            if tail >> j & 1 == 1 {
                let conj = (1u32 << j) | self.pc.comm[j][i];
                conj_tail = self.mul(conj_tail, conj);
            }
        }
        let head_times_gen = if head >> i & 1 == 0 {
            head | (1 << i)
        } else {
            (head & !(1 << i)) | self.pc.power[i]
        };
        let out = self.mul(head_times_gen, conj_tail);
        self.memo[key] = out;
        out
    }

    fn mul(&mut self, x: u32, y: u32) -> u32 {
        let mut acc = x;
        for k in 0..self.pc.ngens {
            if y >> k & 1 == 1 {
                acc = self.mul_gen(acc, k);
            }
        }
        acc
    }
}

impl Group {
    pub fn from_presentation(pc: &PcPresentation, content_hash: String) -> Result<Self> {
        let n = pc.ngens;
        let order = 1usize << n;
        let mut col = Collector { pc, memo: vec![UNSET; order * n.max(1)] };
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                mul[x * order + y] = col.mul(x as u32, y as u32);
            }
        }
        let mut g = Group {
            order,
            ngens: n,
            mul,
            inv: vec![0; order],
            name: pc.name.clone().unwrap_or_else(|| format!("pc group of order {order}")),
            small_group: pc.small_group,
            content_hash,
        };
        g.verify(pc)?;
        for x in 0..order {
            g.inv[x] = (0..order as u32).find(|&y| g.mul(x as u32, y) == 0).expect("latin square");
        }
        Ok(g)
    }

    fn verify(&self, pc: &PcPresentation) -> Result<()> {
        let o = self.order;
        let mut seen = vec![0u32; o];
        for (stamp, x) in (1u32..).zip(0..o) {
            for y in 0..o {
                let z = self.mul[x * o + y] as usize;
                if z >= o || seen[z] == stamp {
                    return Err(Error::Inconsistent("multiplication table is not a Latin square".into()));
                }
                seen[z] = stamp;
            }
        }
        for (stamp, y) in (o as u32 + 1..).zip(0..o) {
            for x in 0..o {
                let z = self.mul[x * o + y] as usize;
                if seen[z] == stamp {
                    return Err(Error::Inconsistent("multiplication table is not a Latin square".into()));
                }
                seen[z] = stamp;
            }
        }
        if o <= 128 {
            for x in 0..o as u32 {
                for y in 0..o as u32 {
                    let xy = self.mul(x, y);
                    for z in 0..o as u32 {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(Error::Inconsistent(format!(
                                "associativity fails at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        } else {
            // spanning set: generators on both sides of arbitrary elements
            for x in 0..o as u32 {
                for y in 0..o as u32 {
                    for k in 0..self.ngens {
                        let z = 1u32 << k;
                        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                            return Err(Error::Inconsistent("associativity fails".into()));
                        }
                    }
                }
            }
        }
        for i in 0..pc.ngens {
            let gi = 1u32 << i;
            if self.mul(gi, gi) != pc.power[i] {
                return Err(Error::Inconsistent(format!("power relation of g{} not satisfied", i + 1)));
            }
            for j in (i + 1)..pc.ngens {
                let gj = 1u32 << j;
                if self.commutator(gj, gi) != pc.comm[j][i] {
                    return Err(Error::Inconsistent(format!(
                        "commutator relation [g{}, g{}] not satisfied",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let pc = PcPresentation::parse(text)?;
        Self::from_presentation(&pc, content_hash(text))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut g = Self::from_text(&text)?;
        if g.name.starts_with("pc group") {
            if let Some(stem) = path.file_stem() {
                g.name = stem.to_string_lossy().into_owned();
            }
        }
        Ok(g)
    }

    /// Elementary abelian group of rank `s` with the standard pc presentation.
    pub fn elementary_abelian(s: usize) -> Self {
        let text = format!("# name: C2^{s}\nprime 2\nngens {s}\n");
        Self::from_text(&text).expect("elementary abelian presentation is consistent")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Element indices of the pc generators.
    pub fn generators(&self) -> Vec<u32> {
        (0..self.ngens).map(|i| 1u32 << i).collect()
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    /// `x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let xi = (0..self.order as u32).find(|&z| self.mul(x, z) == 0).unwrap_or(0);
        let yi = (0..self.order as u32).find(|&z| self.mul(y, z) == 0).unwrap_or(0);
        self.mul(self.mul(xi, yi), self.mul(x, y))
    }

    pub fn commute(&self, x: u32, y: u32) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn element_name(&self, x: u32) -> String {
        if x == 0 {
            return "1".into();
        }
        (0..self.ngens).filter(|&i| x >> i & 1 == 1).map(|i| format!("g{}", i + 1)).collect::<Vec<_>>().join("*")
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.commute(a, b)))
    }

    pub fn is_involution(&self, x: u32) -> bool {
        x != 0 && self.mul(x, x) == 0
    }

    pub fn centre(&self) -> Vec<u32> {
        let gens = self.generators();
        (0..self.order as u32).filter(|&z| gens.iter().all(|&g| self.commute(z, g))).collect()
    }

    /// Ω₁(Z(G)): central elements of order dividing two.
    pub fn omega1_centre(&self) -> ElabSubgroup {
        let elems: Vec<u32> = self.centre().into_iter().filter(|&z| self.mul(z, z) == 0).collect();
        ElabSubgroup::from_elements(self, elems, true)
    }

    /// All elementary abelian subgroups containing Ω₁(Z(G)), sorted by rank
    /// and then by element list.
    pub fn elab_above_c(&self) -> Vec<ElabSubgroup> {
        let c = self.omega1_centre();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(element_set(self.order, &c.elements));
        queue.push_back(c.elements.clone());
        while let Some(v) = queue.pop_front() {
            let members = element_set(self.order, &v);
            for x in 0..self.order as u32 {
                if members[x as usize / 64] >> (x % 64) & 1 == 1 || !self.is_involution(x) {
                    continue;
                }
                if !v.iter().all(|&y| self.commute(x, y)) {
                    continue;
                }
                let mut w = v.clone();
                w.extend(v.iter().map(|&y| self.mul(x, y)));
                w.sort_unstable();
                if seen.insert(element_set(self.order, &w)) {
                    queue.push_back(w);
                }
            }
            out.push(v);
        }
        let mut subs: Vec<ElabSubgroup> =
            out.into_iter().map(|e| ElabSubgroup::with_basis_over(self, e, &c)).collect();
        subs.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.elements.cmp(&b.elements)));
        subs
    }

    /// The maximal members of [`Group::elab_above_c`]; every maximal
    /// elementary abelian subgroup contains Ω₁(Z(G)).
    pub fn maximal_elab(&self) -> Vec<ElabSubgroup> {
        let all = self.elab_above_c();
        let mut out = Vec::new();
        for v in &all {
            let maximal = !all.iter().any(|w| w.rank > v.rank && v.elements.iter().all(|x| w.elements.binary_search(x).is_ok()));
            if maximal {
                out.push(v.clone());
            }
        }
        out
    }

    /// Largest rank of an elementary abelian subgroup.
    pub fn prank(&self) -> usize {
        self.elab_above_c().iter().map(|v| v.rank).max().unwrap_or(0)
    }

    /// prank(G) − prank(Z(G)) for a 2-group.
    pub fn delta0(&self) -> usize {
        self.prank() - self.omega1_centre().rank
    }
}

fn element_set(order: usize, elems: &[u32]) -> Vec<u64> {
    let mut s = vec![0u64; order.div_ceil(64)];
    for &x in elems {
        s[x as usize / 64] |= 1 << (x % 64);
    }
    s
}

pub fn content_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// An elementary abelian subgroup, with a basis that extends a basis of
/// Ω₁(Z(G)) when the subgroup contains it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElabSubgroup {
    pub rank: usize,
    pub elements: Vec<u32>,
    pub basis: Vec<u32>,
    pub contains_c: bool,
}

impl ElabSubgroup {
    fn from_elements(g: &Group, mut elements: Vec<u32>, contains_c: bool) -> Self {
        elements.sort_unstable();
        let basis = greedy_basis(g, &elements, &[]);
        let rank = basis.len();
        debug_assert_eq!(1usize << rank, elements.len());
        Self { rank, elements, basis, contains_c }
    }

    fn with_basis_over(g: &Group, elements: Vec<u32>, c: &ElabSubgroup) -> Self {
        let basis = greedy_basis(g, &elements, &c.basis);
        Self { rank: basis.len(), elements, basis, contains_c: true }
    }

    /// Element of the subgroup with coordinates `bits` in the basis.
    pub fn element(&self, g: &Group, bits: u32) -> u32 {
        self.basis.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).fold(0, |acc, (_, &b)| g.mul(acc, b))
    }

    /// Coordinates of a member element in the basis.
    pub fn coordinates(&self, g: &Group, x: u32) -> Option<u32> {
        (0..1u32 << self.rank).find(|&bits| self.element(g, bits) == x)
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

fn greedy_basis(g: &Group, elements: &[u32], start: &[u32]) -> Vec<u32> {
    let mut basis = start.to_vec();
    let mut span: Vec<u32> = vec![0];
    for &b in &basis {
        let ext: Vec<u32> = span.iter().map(|&y| g.mul(b, y)).collect();
        span.extend(ext);
    }
    for &x in elements {
        if !span.contains(&x) {
            let ext: Vec<u32> = span.iter().map(|&y| g.mul(x, y)).collect();
            span.extend(ext);
            basis.push(x);
        }
    }
    basis
}
