//! Minimal free resolutions of F₂ over F₂G, chain-map lifts and restriction
//! to elementary abelian subgroups.
//!
//! An element of the free module `(F₂G)^b` is a bit vector made of `b`
//! blocks, one per free generator. Each block is a whole number of words and
//! bit `h` of a block is the coefficient of group element `h`; padding bits
//! stay zero. The boundary `d_n` is stored as the images `d_n(e_k)` of the
//! free generators, one row per generator.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use log::debug;

use crate::error::{Error, Result};
use crate::gf2::{words_for, BitMatrix, BitVec, Echelon, Solver, WORD_BITS};
use crate::group::{ElabSubgroup, Group};

/// Left multiplication data for F₂G.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    order: usize,
    block_bits: usize,
    left: Vec<u32>,
    generators: Vec<u32>,
}

impl GroupAlgebra {
    pub fn new(g: &Group) -> Self {
        let order = g.order();
        let mut left = vec![0u32; order * order];
        for x in 0..order as u32 {
            for y in 0..order as u32 {
                left[x as usize * order + y as usize] = g.mul(x, y);
            }
        }
        Self { order, block_bits: words_for(order) * WORD_BITS, left, generators: minimal_generators(g) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Bits per free-module block (the group order rounded up to words).
    pub fn block_bits(&self) -> usize {
        self.block_bits
    }

    /// A minimal generating set chosen greedily from the pc generators.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    #[inline]
    fn left_mul(&self, x: u32, y: u32) -> u32 {
        self.left[x as usize * self.order + y as usize]
    }

    /// `dst += x · src` for single blocks.
    fn left_mul_block_into(&self, x: u32, src: &[u64], dst: &mut [u64]) {
        for (wi, &w) in src.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let h = (wi * WORD_BITS) as u32 + w.trailing_zeros();
                w &= w - 1;
                let y = self.left_mul(x, h) as usize;
                dst[y / WORD_BITS] ^= 1 << (y % WORD_BITS);
            }
        }
    }

    /// `x · v` for an element of a free module.
    pub fn left_mul_vec(&self, x: u32, v: &BitVec) -> BitVec {
        let bw = self.block_bits / WORD_BITS;
        let mut out = vec![0u64; v.words().len()];
        for (src, dst) in v.words().chunks(bw).zip(out.chunks_mut(bw)) {
            self.left_mul_block_into(x, src, dst);
        }
        BitVec::from_words(out, v.len())
    }

    /// Augmentation of each block.
    pub fn augmentations(&self, v: &[u64], blocks: usize) -> BitVec {
        let bw = self.block_bits / WORD_BITS;
        let mut out = BitVec::zeros(blocks);
        for j in 0..blocks {
            let ones: u32 = v[j * bw..(j + 1) * bw].iter().map(|w| w.count_ones()).sum();
            if ones & 1 == 1 {
                out.set(j, true);
            }
        }
        out
    }
}

fn minimal_generators(g: &Group) -> Vec<u32> {
    let mut chosen = Vec::new();
    let mut closure = vec![false; g.order()];
    closure[0] = true;
    for x in g.generators() {
        if closure[x as usize] {
            continue;
        }
        chosen.push(x);
        let mut members: Vec<u32> = (0..g.order() as u32).filter(|&y| closure[y as usize]).collect();
        let mut i = 0;
        while i < members.len() {
            for &s in &chosen {
                let y = g.mul(members[i], s);
                if !closure[y as usize] {
                    closure[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    chosen
}

/// The module map `(F₂H)^{rows} → (F₂G)^{b}` determined by generator images,
/// written out on the F₂-basis `h · e_j` of the source. `embed` sends
/// elements of `H` to `G`.
fn expand(alg: &GroupAlgebra, images: &BitMatrix, src_order: usize, src_block: usize, embed: &dyn Fn(u32) -> u32) -> BitMatrix {
    let mut out = BitMatrix::zeros(images.rows() * src_block, images.cols());
    let bw = alg.block_bits / WORD_BITS;
    for j in 0..images.rows() {
        let img = images.row_words(j);
        for h in 0..src_order as u32 {
            let x = embed(h);
            let dst = out.row_words_mut(j * src_block + h as usize);
            for (s, d) in img.chunks(bw).zip(dst.chunks_mut(bw)) {
                alg.left_mul_block_into(x, s, d);
            }
        }
    }
    out
}

/// Data kept per degree beyond the boundary itself.
#[derive(Debug, Default)]
struct Stage {
    /// Reduced form of the rows `g · d_n(e_k)` tagged by `(k, g)`.
    solver: OnceLock<Solver>,
}

/// A minimal free resolution `P_N → … → P_0 → F₂` over F₂G.
#[derive(Debug)]
pub struct Resolution {
    group: Arc<Group>,
    alg: GroupAlgebra,
    ranks: Vec<usize>,
    /// `boundaries[n]` for `n ≥ 1` holds the rows `d_n(e_k)`; index 0 is empty.
    boundaries: Vec<BitMatrix>,
    stages: Vec<Stage>,
    /// Basis of `ker d_N`, the input for the next extension.
    kernel: Vec<BitVec>,
}

impl Clone for Resolution {
    fn clone(&self) -> Self {
        Self {
            group: self.group.clone(),
            alg: self.alg.clone(),
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.clone(),
            stages: self.stages.iter().map(|_| Stage::default()).collect(),
            kernel: self.kernel.clone(),
        }
    }
}

impl Resolution {
    /// The resolution through degree 0: `P_0 = F₂G` with the augmentation.
    pub fn new(group: Arc<Group>) -> Self {
        let alg = GroupAlgebra::new(&group);
        let n = alg.order;
        let kernel = (1..n)
            .map(|g| {
                let mut v = BitVec::zeros(alg.block_bits);
                v.set(0, true);
                v.set(g, true);
                v
            })
            .collect();
        Self {
            group,
            alg,
            ranks: vec![1],
            boundaries: vec![BitMatrix::zeros(0, 0)],
            stages: vec![Stage::default()],
            kernel,
        }
    }

    pub fn for_group(group: &Group) -> Self {
        Self::new(Arc::new(group.clone()))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `b_0, …, b_N`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    /// Rows `d_n(e_k)`, each of `b_{n−1}` blocks.
    pub fn boundary(&self, n: usize) -> &BitMatrix {
        assert!(n >= 1 && n <= self.top_degree());
        &self.boundaries[n]
    }

    /// `d_n` as a matrix on group-element bases, `b_n|G| × b_{n−1}|G|`.
    pub fn boundary_matrix(&self, n: usize) -> BitMatrix {
        let e = self.expanded(n);
        let (g, bb) = (self.alg.order, self.alg.block_bits);
        let mut out = BitMatrix::zeros(self.ranks[n] * g, self.ranks[n - 1] * g);
        for k in 0..self.ranks[n] {
            for h in 0..g {
                for c in e.row(k * bb + h).iter_ones() {
                    out.set(k * g + h, (c / bb) * g + c % bb, true);
                }
            }
        }
        out
    }

    fn module_bits(&self, n: usize) -> usize {
        self.ranks[n] * self.alg.block_bits
    }

    /// The rows `h · d_n(e_k)` indexed by `k·block + h`.
    fn expanded(&self, n: usize) -> BitMatrix {
        expand(&self.alg, &self.boundaries[n], self.alg.order, self.alg.block_bits, &|h| h)
    }

    /// Extends through degree `to`.
    pub fn extend(&mut self, to: usize) -> Result<()> {
        while self.top_degree() < to {
            self.extend_one()?;
        }
        Ok(())
    }

    /// Returns a copy extended through degree `to`.
    pub fn extended(&self, to: usize) -> Result<Self> {
        let mut r = self.clone();
        r.extend(to)?;
        Ok(r)
    }

    fn extend_one(&mut self) -> Result<()> {
        let n = self.top_degree();
        let width = self.module_bits(n);
        let dim_k = self.kernel.len();

        // Generators of K modulo rad K = Σ (s + 1) K over a generating set.
        let mut e = Echelon::new(width, 0);
        for v in &self.kernel {
            for &s in &self.alg.generators {
                let mut w = self.alg.left_mul_vec(s, v);
                w.xor_assign(v);
                e.insert(&w);
            }
        }
        let rad = e.rank();
        let mut chosen: Vec<BitVec> = Vec::new();
        for v in &self.kernel {
            if e.insert(v).is_some() {
                chosen.push(v.clone());
            }
        }
        if e.rank() != dim_k {
            return Err(Error::Invariant(format!("radical of ker d_{n} not contained in it")));
        }
        let b = chosen.len();
        debug_assert_eq!(b, dim_k - rad);
        let images = BitMatrix::from_rows(width, &chosen);
        self.ranks.push(b);
        self.boundaries.push(images);
        self.stages.push(Stage::default());
        let m = n + 1;

        // Minimality: every entry of d_{n+1} lies in the augmentation ideal.
        for k in 0..b {
            if !self.alg.augmentations(self.boundaries[m].row_words(k), self.ranks[n]).is_zero() {
                return Err(Error::Invariant(format!("d_{m} is not minimal")));
            }
        }
        // d_n ∘ d_{n+1} = 0
        if n >= 1 && !self.boundaries[m].mul(&self.expanded(n)).is_zero() {
            return Err(Error::Invariant(format!("d_{n} d_{m} != 0")));
        }

        // ker d_{n+1} and the solver for d_{n+1}.
        let (solver, kernel) = self.eliminate(m);
        if solver.rank() != dim_k {
            return Err(Error::Invariant(format!("resolution not exact at degree {n}")));
        }
        debug!("{}: b_{m} = {b}, dim ker d_{m} = {}", self.group.name, kernel.len());
        let _ = self.stages[m].solver.set(solver);
        self.kernel = kernel;
        Ok(())
    }

    fn eliminate(&self, n: usize) -> (Solver, Vec<BitVec>) {
        let exp = self.expanded(n);
        let (g, bb) = (self.alg.order, self.alg.block_bits);
        let tag_width = self.module_bits(n);
        let mut e = Echelon::new(exp.cols(), tag_width);
        let mut kernel = Vec::new();
        for k in 0..self.ranks[n] {
            for h in 0..g {
                let idx = k * bb + h;
                if let Err(rel) = e.insert_tagged(&exp.row(idx), BitVec::unit(tag_width, idx)) {
                    kernel.push(rel);
                }
            }
        }
        (e.into_solver(), kernel)
    }

    fn solver(&self, n: usize) -> &Solver {
        self.stages[n].solver.get_or_init(|| self.eliminate(n).0)
    }

    /// Checks that `cocycle` is a cocycle of degree `m` (with the minimal
    /// resolution every cochain is one, so this checks the length and the
    /// vanishing on `d_{m+1}`).
    fn check_cocycle(&self, m: usize, cocycle: &BitVec) -> Result<()> {
        if m > self.top_degree() || cocycle.len() != self.ranks[m] {
            return Err(Error::NotACocycle(m));
        }
        if m < self.top_degree() {
            for k in 0..self.ranks[m + 1] {
                let aug = self.alg.augmentations(self.boundaries[m + 1].row_words(k), self.ranks[m]);
                if aug.dot(cocycle) {
                    return Err(Error::NotACocycle(m));
                }
            }
        }
        Ok(())
    }

    /// Lifts a degree-`m` cocycle to a chain map `P_{m+i} → P_i` for all
    /// `m + i ≤ upto`.
    pub fn cocycle_lift(&self, m: usize, cocycle: &BitVec, upto: usize) -> Result<ChainMapLift> {
        self.check_cocycle(m, cocycle)?;
        let mut u0 = BitMatrix::zeros(self.ranks[m], self.alg.block_bits);
        for k in cocycle.iter_ones() {
            u0.set(k, 0, true);
        }
        let mut lift = ChainMapLift { source_degree: m, maps: vec![u0] };
        self.extend_lift(&mut lift, upto)?;
        Ok(lift)
    }

    /// Extends a lift so that it covers all source degrees `≤ upto`.
    pub fn extend_lift(&self, lift: &mut ChainMapLift, upto: usize) -> Result<()> {
        let m = lift.source_degree;
        if upto > self.top_degree() {
            return Err(Error::Invariant(format!("lift to {upto} beyond resolution degree {}", self.top_degree())));
        }
        while m + lift.maps.len() <= upto {
            let i = lift.maps.len();
            let prev = expand(&self.alg, &lift.maps[i - 1], self.alg.order, self.alg.block_bits, &|h| h);
            let z = self.boundaries[m + i].mul(&prev);
            let y = self.solver(i).preimages(&z).ok_or(Error::NotACocycle(m))?;
            lift.maps.push(y);
        }
        Ok(())
    }

    /// Applies `d_n` to the rows of `x` (elements of `P_n`).
    pub fn apply_boundary(&self, n: usize, x: &BitMatrix) -> BitMatrix {
        x.mul(&self.expanded(n))
    }

    /// Restriction to an elementary abelian subgroup through degree `through`,
    /// using an independently computed resolution of the subgroup.
    pub fn restriction_map(&self, v: &ElabSubgroup, target: &Resolution, through: usize) -> Result<RestrictionMap> {
        let mut r = RestrictionMap {
            subgroup: v.clone(),
            embedding: (0..1u32 << v.rank).map(|bits| v.element(&self.group, bits)).collect(),
            chain: Vec::new(),
            matrices: Vec::new(),
        };
        self.extend_restriction(&mut r, target, through)?;
        Ok(r)
    }

    pub fn extend_restriction(&self, r: &mut RestrictionMap, target: &Resolution, through: usize) -> Result<()> {
        if through > self.top_degree() || through > target.top_degree() {
            return Err(Error::Invariant("restriction beyond computed degree".into()));
        }
        if r.chain.is_empty() {
            let mut phi0 = BitMatrix::zeros(1, self.alg.block_bits);
            phi0.set(0, 0, true);
            r.matrices.push(self.restriction_matrix(&phi0, 0));
            r.chain.push(phi0);
        }
        let (vo, vb) = (target.alg.order, target.alg.block_bits);
        while r.chain.len() <= through {
            let i = r.chain.len();
            let emb = r.embedding.clone();
            let prev = expand(&self.alg, &r.chain[i - 1], vo, vb, &|h| emb[h as usize]);
            let z = target.boundaries[i].mul(&prev);
            let y = self.solver(i).preimages(&z).ok_or_else(|| Error::Invariant("restriction lift failed".into()))?;
            r.matrices.push(self.restriction_matrix(&y, i));
            r.chain.push(y);
        }
        Ok(())
    }

    fn restriction_matrix(&self, phi: &BitMatrix, n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(phi.rows(), self.ranks[n]);
        for k in 0..phi.rows() {
            let aug = self.alg.augmentations(phi.row_words(k), self.ranks[n]);
            for j in aug.iter_ones() {
                m.set(k, j, true);
            }
        }
        m
    }

    /// Solves `d_1 x = s + 1` for each listed element and returns the
    /// augmentation vector of `x`, i.e. the value of every degree-1 class on
    /// `s` under `H¹ = Hom(G, F₂)`.
    pub fn degree_one_values(&self, elements: &[u32]) -> Result<BitMatrix> {
        let bits = self.module_bits(0);
        let mut z = BitMatrix::zeros(elements.len(), bits);
        for (i, &s) in elements.iter().enumerate() {
            if s != 0 {
                z.set(i, 0, true);
                z.set(i, s as usize, true);
            }
        }
        let x = self.solver(1).preimages(&z).ok_or_else(|| Error::Invariant("s + 1 outside the image of d_1".into()))?;
        let mut out = BitMatrix::zeros(elements.len(), self.ranks[1]);
        for i in 0..elements.len() {
            for j in self.alg.augmentations(x.row_words(i), self.ranks[1]).iter_ones() {
                out.set(i, j, true);
            }
        }
        Ok(out)
    }
}

/// Chain map `u_i : P_{m+i} → P_i` over the identity of F₂, lifting a
/// degree-`m` cocycle.
#[derive(Clone, Debug)]
pub struct ChainMapLift {
    pub source_degree: usize,
    /// `maps[i]` holds the rows `u_i(e_k)` for `k < b_{m+i}`.
    pub maps: Vec<BitMatrix>,
}

impl ChainMapLift {
    /// Highest source degree covered.
    pub fn top(&self) -> usize {
        self.source_degree + self.maps.len() - 1
    }

    /// Matrix of multiplication by the lifted class `H^i → H^{m+i}`:
    /// entry `(k, j)` is the augmentation of block `j` of `u_i(e_k)`.
    pub fn product_matrix(&self, alg: &GroupAlgebra, i: usize, rank_i: usize) -> BitMatrix {
        let u = &self.maps[i];
        let mut m = BitMatrix::zeros(u.rows(), rank_i);
        for k in 0..u.rows() {
            for j in alg.augmentations(u.row_words(k), rank_i).iter_ones() {
                m.set(k, j, true);
            }
        }
        m
    }

    /// The cup product of the lifted class with `beta ∈ H^i`.
    pub fn product(&self, alg: &GroupAlgebra, i: usize, beta: &BitVec) -> BitVec {
        self.product_matrix(alg, i, beta.len()).mul_vec(beta)
    }
}

/// Restriction from G to an elementary abelian subgroup V.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub subgroup: ElabSubgroup,
    /// Elements of G indexed by coordinates in the subgroup basis.
    pub embedding: Vec<u32>,
    /// Chain map `Q_i → P_i` from the resolution of V.
    chain: Vec<BitMatrix>,
    /// `matrices[n]` sends `H^n(G)` to `H^n(V)`: rows indexed by the
    /// generators of `Q_n`, columns by those of `P_n`.
    matrices: Vec<BitMatrix>,
}

impl RestrictionMap {
    pub fn top(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn matrix(&self, n: usize) -> &BitMatrix {
        &self.matrices[n]
    }

    pub fn restrict(&self, n: usize, cocycle: &BitVec) -> BitVec {
        self.matrices[n].mul_vec(cocycle)
    }
}

const CACHE_MAGIC: &[u8; 8] = b"MODCOHRS";
const CACHE_VERSION: u32 = 1;

/// Directory cache of resolutions keyed by the group's content hash.
#[derive(Clone, Debug)]
pub struct ResolutionCache {
    root: PathBuf,
}

impl ResolutionCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.root.join(format!("{hash}.res"))
    }

    pub fn store(&self, r: &Resolution) -> Result<()> {
        fs::create_dir_all(&self.root)?;
        let mut buf = Vec::new();
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        let hash = r.group.content_hash.as_bytes();
        buf.extend_from_slice(&(hash.len() as u32).to_le_bytes());
        buf.extend_from_slice(hash);
        buf.extend_from_slice(&(r.top_degree() as u32).to_le_bytes());
        for &b in &r.ranks {
            buf.extend_from_slice(&(b as u32).to_le_bytes());
        }
        for n in 1..=r.top_degree() {
            for &w in r.boundaries[n].raw_words() {
                buf.extend_from_slice(&w.to_le_bytes());
            }
        }
        for v in &r.kernel {
            for &w in v.words() {
                buf.extend_from_slice(&w.to_le_bytes());
            }
        }
        buf.extend_from_slice(&(r.kernel.len() as u32).to_le_bytes());
        let tmp = self.path(&r.group.content_hash).with_extension("tmp");
        fs::File::create(&tmp)?.write_all(&buf)?;
        fs::rename(tmp, self.path(&r.group.content_hash))?;
        Ok(())
    }

    /// Ranks recorded in the cache entry for a group hash, without loading
    /// the boundary maps.
    pub fn stored_ranks(&self, hash: &str) -> Result<Option<Vec<usize>>> {
        let path = self.path(hash);
        if !path.exists() {
            return Ok(None);
        }
        let mut data = Vec::new();
        fs::File::open(&path)?.read_to_end(&mut data)?;
        let corrupt = || Error::Corrupt(format!("{}: bad header", path.display()));
        let mut cur = Cursor { data: &data, pos: 0 };
        if cur.take(8).ok_or_else(corrupt)? != CACHE_MAGIC || cur.u32() != Some(CACHE_VERSION) {
            return Err(corrupt());
        }
        let hlen = cur.u32().ok_or_else(corrupt)? as usize;
        if cur.take(hlen).ok_or_else(corrupt)? != hash.as_bytes() {
            return Err(corrupt());
        }
        let top = cur.u32().ok_or_else(corrupt)? as usize;
        (0..=top).map(|_| cur.u32().map(|b| b as usize).ok_or_else(corrupt)).collect::<Result<Vec<_>>>().map(Some)
    }

    /// The cached resolution of `group`, if any.
    pub fn load(&self, group: &Arc<Group>) -> Result<Option<Resolution>> {
        let path = self.path(&group.content_hash);
        if !path.exists() {
            return Ok(None);
        }
        let mut data = Vec::new();
        fs::File::open(&path)?.read_to_end(&mut data)?;
        let corrupt = |m: &str| Error::Corrupt(format!("{}: {m}", path.display()));
        let mut cur = Cursor { data: &data, pos: 0 };
        if cur.take(8).ok_or_else(|| corrupt("short header"))? != CACHE_MAGIC {
            return Err(corrupt("bad magic"));
        }
        if cur.u32().ok_or_else(|| corrupt("short header"))? != CACHE_VERSION {
            return Ok(None);
        }
        let hlen = cur.u32().ok_or_else(|| corrupt("short header"))? as usize;
        if cur.take(hlen).ok_or_else(|| corrupt("short header"))? != group.content_hash.as_bytes() {
            return Err(corrupt("hash mismatch"));
        }
        let top = cur.u32().ok_or_else(|| corrupt("short header"))? as usize;
        let mut res = Resolution::new(group.clone());
        let mut ranks = Vec::with_capacity(top + 1);
        for _ in 0..=top {
            ranks.push(cur.u32().ok_or_else(|| corrupt("short ranks"))? as usize);
        }
        if ranks[0] != 1 {
            return Err(corrupt("b_0 != 1"));
        }
        let bb = res.alg.block_bits;
        let mut boundaries = vec![BitMatrix::zeros(0, 0)];
        for n in 1..=top {
            let cols = ranks[n - 1] * bb;
            let words = ranks[n] * words_for(cols);
            let mut raw = Vec::with_capacity(words);
            for _ in 0..words {
                raw.push(cur.u64().ok_or_else(|| corrupt("short boundary"))?);
            }
            boundaries.push(BitMatrix::from_raw(ranks[n], cols, raw));
        }
        let kwords = words_for(ranks[top] * bb);
        let rest = (data.len() - cur.pos).checked_sub(4).ok_or_else(|| corrupt("missing kernel"))?;
        if kwords == 0 || rest % (8 * kwords) != 0 {
            return Err(corrupt("kernel size"));
        }
        let mut kernel = Vec::new();
        for _ in 0..rest / (8 * kwords) {
            let mut w = Vec::with_capacity(kwords);
            for _ in 0..kwords {
                w.push(cur.u64().ok_or_else(|| corrupt("short kernel"))?);
            }
            kernel.push(BitVec::from_words(w, ranks[top] * bb));
        }
        if cur.u32() != Some(kernel.len() as u32) {
            return Err(corrupt("kernel count"));
        }
        res.ranks = ranks;
        res.boundaries = boundaries;
        res.stages = (0..=top).map(|_| Stage::default()).collect();
        res.kernel = kernel;
        // cheap structural check: the top boundary composes to zero
        if top >= 2 && !res.boundaries[top].mul(&res.expanded(top - 1)).is_zero() {
            return Err(corrupt("d∘d != 0"));
        }
        Ok(Some(res))
    }

    /// Loads the cached resolution, extends it if needed and stores it back.
    pub fn resolve(&self, group: &Arc<Group>, degree: usize) -> Result<Resolution> {
        let mut r = match self.load(group)? {
            Some(r) => r,
            None => Resolution::new(group.clone()),
        };
        if r.top_degree() < degree {
            r.extend(degree)?;
            self.store(&r)?;
        }
        Ok(r)
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.data.get(self.pos..self.pos + n)?;
        self.pos += n;
        Some(s)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_le_bytes(b.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_le_bytes(b.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle;

    fn resolve(name: &str, n: usize) -> Resolution {
        let mut r = Resolution::for_group(&fixtures::group(name).unwrap());
        r.extend(n).unwrap();
        r
    }

    #[test]
    fn cyclic_ranks() {
        assert_eq!(resolve("c2", 5).ranks(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(resolve("c4", 5).ranks(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(resolve("c8", 4).ranks(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn small_ranks() {
        assert_eq!(resolve("d8", 4).ranks(), &[1, 2, 3, 4, 5]);
        assert_eq!(resolve("q8", 8).ranks(), &[1, 2, 2, 1, 1, 2, 2, 1, 1]);
        assert_eq!(resolve("c2xc2", 4).ranks(), &[1, 2, 3, 4, 5]);
        assert_eq!(resolve("c2xc2xc2", 4).ranks(), &[1, 3, 6, 10, 15]);
    }

    #[test]
    fn ranks_match_bar_complex() {
        for (name, n) in [("c2", 5), ("c4", 4), ("c2xc2", 3), ("d8", 3), ("q8", 3)] {
            let r = resolve(name, n);
            let g = fixtures::group(name).unwrap();
            assert_eq!(r.ranks(), &oracle::bar_cohomology_dims(&g, n)[..], "{name}");
        }
    }

    #[test]
    fn boundaries_compose_to_zero_and_are_minimal() {
        let r = resolve("d8xc2", 4);
        for n in 2..=4 {
            let dn = r.boundary_matrix(n);
            let dm = r.boundary_matrix(n - 1);
            assert!(dn.mul(&dm).is_zero());
        }
        let alg = r.algebra();
        for n in 1..=4 {
            for k in 0..r.rank(n) {
                assert!(alg.augmentations(r.boundary(n).row_words(k), r.rank(n - 1)).is_zero());
            }
        }
    }

    fn check_commutes(r: &Resolution, lift: &ChainMapLift) {
        let m = lift.source_degree;
        for i in 1..lift.maps.len() {
            let lhs = r.apply_boundary(i, &lift.maps[i]);
            let prev = expand(r.algebra(), &lift.maps[i - 1], r.alg.order, r.alg.block_bits, &|h| h);
            let rhs = r.boundary(m + i).mul(&prev);
            assert_eq!(lhs, rhs, "square {i} of lift from degree {m}");
        }
    }

    #[test]
    fn lifts_commute_with_boundaries() {
        let r = resolve("d8", 5);
        for m in 1..=2 {
            for k in 0..r.rank(m) {
                let lift = r.cocycle_lift(m, &BitVec::unit(r.rank(m), k), 5).unwrap();
                check_commutes(&r, &lift);
            }
        }
    }

    #[test]
    fn zero_cocycle_lifts_to_zero() {
        let r = resolve("q8", 4);
        let lift = r.cocycle_lift(1, &BitVec::zeros(2), 4).unwrap();
        assert!(lift.maps.iter().all(BitMatrix::is_zero));
    }

    #[test]
    fn c2_generator_squares_nontrivially() {
        let r = resolve("c2", 4);
        let x = BitVec::unit(1, 0);
        let lift = r.cocycle_lift(1, &x, 4).unwrap();
        let x2 = lift.product(r.algebra(), 1, &x);
        assert!(!x2.is_zero());
        let lift2 = r.cocycle_lift(2, &x2, 4).unwrap();
        assert!(!lift2.product(r.algebra(), 2, &x2).is_zero());
    }

    #[test]
    fn cocycle_checks() {
        let r = resolve("d8", 3);
        assert!(matches!(r.cocycle_lift(1, &BitVec::zeros(3), 3), Err(Error::NotACocycle(1))));
    }

    #[test]
    fn d8_degree_one_products_span_two_dimensions() {
        let r = resolve("d8", 3);
        let alg = r.algebra();
        let mut e = Echelon::new(r.rank(2), 0);
        for a in 0..2 {
            let lift = r.cocycle_lift(1, &BitVec::unit(2, a), 3).unwrap();
            for b in 0..2 {
                e.insert(&lift.product(alg, 1, &BitVec::unit(2, b)));
            }
        }
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn products_commute() {
        for name in ["d8", "q8", "d8xc2"] {
            let r = resolve(name, 4);
            let alg = r.algebra();
            for (p, q) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
                for a in 0..r.rank(p) {
                    let la = r.cocycle_lift(p, &BitVec::unit(r.rank(p), a), 4).unwrap();
                    for b in 0..r.rank(q) {
                        let lb = r.cocycle_lift(q, &BitVec::unit(r.rank(q), b), 4).unwrap();
                        let ab = la.product(alg, q, &BitVec::unit(r.rank(q), b));
                        let ba = lb.product(alg, p, &BitVec::unit(r.rank(p), a));
                        assert_eq!(ab, ba, "{name}: degrees {p},{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_to_whole_elementary_abelian_is_identity() {
        let g = fixtures::group("c2xc2").unwrap();
        let r = resolve("c2xc2", 4);
        let v = g.maximal_elab().into_iter().next().unwrap();
        assert_eq!(v.rank, 2);
        let rv = Resolution::for_group(&Group::elementary_abelian(2)).extended(4).unwrap();
        let res = r.restriction_map(&v, &rv, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(rank(&res.matrix(n).clone()), r.rank(n));
        }
    }

    fn rank(m: &BitMatrix) -> usize {
        crate::gf2::rank(m)
    }

    #[test]
    fn c4_restricts_to_c2() {
        let g = fixtures::group("c4").unwrap();
        let r = resolve("c4", 4);
        let c = g.omega1_centre();
        assert_eq!(c.rank, 1);
        let rv = Resolution::for_group(&Group::elementary_abelian(1)).extended(4).unwrap();
        let res = r.restriction_map(&c, &rv, 4).unwrap();
        assert!(res.matrix(1).is_zero());
        assert!(!res.matrix(2).is_zero());
        assert!(res.matrix(3).is_zero());
        assert!(!res.matrix(4).is_zero());
    }

    #[test]
    fn degree_one_values_are_homomorphisms() {
        let g = fixtures::group("d8").unwrap();
        let r = resolve("d8", 2);
        let all: Vec<u32> = (0..g.order() as u32).collect();
        let vals = r.degree_one_values(&all).unwrap();
        for x in 0..g.order() as u32 {
            for y in 0..g.order() as u32 {
                let mut s = vals.row(x as usize);
                s.xor_assign(&vals.row(y as usize));
                assert_eq!(s, vals.row(g.mul(x, y) as usize));
            }
        }
        assert_eq!(rank(&vals), 2);
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResolutionCache::new(dir.path());
        let g = Arc::new(fixtures::group("d8").unwrap());
        let r = cache.resolve(&g, 3).unwrap();
        let back = cache.load(&g).unwrap().unwrap();
        assert_eq!(back.ranks(), r.ranks());
        assert_eq!(cache.stored_ranks(&g.content_hash).unwrap().unwrap(), r.ranks());
        assert!(cache.stored_ranks("missing").unwrap().is_none());
        for n in 1..=3 {
            assert_eq!(back.boundary(n), r.boundary(n));
        }
        let mut more = back.clone();
        more.extend(5).unwrap();
        assert_eq!(more.ranks(), resolve("d8", 5).ranks());
        // a corrupted file is reported, not silently used
        let path = dir.path().join(format!("{}.res", g.content_hash));
        let mut bytes = std::fs::read(&path).unwrap();
        bytes.truncate(bytes.len() / 2);
        std::fs::write(&path, bytes).unwrap();
        assert!(cache.load(&g).is_err());
    }
}
