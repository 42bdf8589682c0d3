//! Commutative polynomials over F₂ in weighted variables.
//!
//! Monomials are compared by weighted degree first and then reverse
//! lexicographically, with variables ordered by index. Exponent vectors are
//! stored with trailing zeros trimmed, so a monomial of a ring is also a
//! monomial of any ring obtained by appending variables, and the order on old
//! monomials does not change when variables are added.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exps = SmallVec<[u8; 24]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one() -> Self {
        Self { deg: 0, exps: Exps::new() }
    }

    pub fn new(exps: &[u8], weights: &[u32]) -> Self {
        let mut e: Exps = exps.iter().copied().collect();
        while e.last() == Some(&0) {
            e.pop();
        }
        let deg = e.iter().zip(weights).map(|(&a, &w)| a as u32 * w).sum();
        Self { deg, exps: e }
    }

    pub fn var(i: usize, weight: u32) -> Self {
        let mut exps = Exps::from_elem(0, i + 1);
        exps[i] = 1;
        Self { deg: weight, exps }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |m, i| m | (1u64 << (i % 64)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Exps::with_capacity(n);
        for i in 0..n {
            let s = self.exp(i) as u16 + other.exp(i) as u16;
            assert!(s <= u8::MAX as u16, "exponent overflow");
            exps.push(s as u8);
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps: Exps = other.exps.clone();
        for (i, &a) in self.exps.iter().enumerate() {
            exps[i] -= a;
        }
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { deg: other.deg - self.deg, exps }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let e: Vec<u8> = (0..n).map(|i| self.exp(i).max(other.exp(i))).collect();
        Monomial::new(&e, weights)
    }

    pub fn gcd(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let n = self.exps.len().min(other.exps.len());
        let e: Vec<u8> = (0..n).map(|i| self.exp(i).min(other.exp(i))).collect();
        Monomial::new(&e, weights)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&e| {
                let v = e as u32 * k;
                assert!(v <= u8::MAX as u32, "exponent overflow");
                v as u8
            })
            .collect();
        Monomial { deg: self.deg * k, exps }
    }

    /// Lowest-index variable that occurs.
    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in (0..n).rev() {
                let (a, b) = (self.exp(i), other.exp(i));
                if a != b {
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.exps.as_slice())
    }
}

/// A polynomial over F₂: a set of monomials sorted from largest to smallest.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<Monomial>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self { terms: vec![Monomial::one()] }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self { terms: vec![m] }
    }

    /// Builds from arbitrary terms, cancelling repeated monomials in pairs.
    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        Self { terms: out }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Self { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    /// Weighted degree of a homogeneous polynomial (its leading term).
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].degree() == w[1].degree())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        *self = self.add(other);
    }

    /// `self + m·other`.
    pub fn add_mul_monomial(&self, m: &Monomial, other: &Poly) -> Poly {
        self.add(&other.mul_monomial(m))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut counts: HashMap<Monomial, bool> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let e = counts.entry(a.mul(b)).or_insert(false);
                *e = !*e;
            }
        }
        let mut terms: Vec<Monomial> = counts.into_iter().filter(|(_, odd)| *odd).map(|(m, _)| m).collect();
        terms.sort_unstable_by(|a, b| b.cmp(a));
        Poly { terms }
    }

    /// Squaring is additive over F₂.
    pub fn square(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|t| t.pow(2)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut cache: HashMap<(usize, u8), Poly> = HashMap::new();
        let mut acc: HashMap<Monomial, bool> = HashMap::new();
        for t in &self.terms {
            let mut p = Poly::one();
            for (i, &e) in t.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let f = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32)).clone();
                p = p.mul(&f);
                if p.is_zero() {
                    break;
                }
            }
            for m in p.terms {
                let e = acc.entry(m).or_insert(false);
                *e = !*e;
            }
        }
        let mut terms: Vec<Monomial> = acc.into_iter().filter(|(_, odd)| *odd).map(|(m, _)| m).collect();
        terms.sort_unstable_by(|a, b| b.cmp(a));
        Poly { terms }
    }

    /// Number of variables referenced (one past the largest index used).
    pub fn var_span(&self) -> usize {
        self.terms.iter().map(|t| t.exps().len()).max().unwrap_or(0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{t:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Names and weights of the variables of a polynomial ring over F₂.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut r = Self::default();
        for (n, w) in vars {
            r.push_var(n, w);
        }
        r
    }

    pub fn push_var(&mut self, name: impl Into<String>, weight: u32) -> usize {
        assert!(weight > 0, "variables must have positive degree");
        self.names.push(name.into());
        self.weights.push(weight);
        self.names.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::from_monomial(Monomial::var(i, self.weights[i]))
    }

    pub fn monomial(&self, exps: &[u8]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    /// All monomials of weighted degree exactly `d`, in descending order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u8; self.nvars()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if remaining == 0 {
                out.push(self.monomial(exps));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0u32;
        while e * w <= remaining {
            exps[i] = e as u8;
            self.enumerate(i + 1, remaining - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms().iter().map(|m| self.format_monomial(m)).collect::<Vec<_>>().join(" + ")
    }

    /// Parses `x^2*y + z + 1`; `0` is the zero polynomial.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Poly::zero());
        }
        let mut terms = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad(format!("empty term in '{s}'")));
            }
            let mut exps = vec![0u8; self.nvars()];
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor == "1" {
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => {
                        (n.trim(), e.trim().parse::<u8>().map_err(|_| bad(format!("bad exponent '{factor}'")))?)
                    }
                    None => (factor, 1),
                };
                let i = self.index_of(name).ok_or_else(|| bad(format!("unknown variable '{name}'")))?;
                exps[i] = exps[i].checked_add(e).ok_or_else(|| bad("exponent overflow".into()))?;
            }
            terms.push(self.monomial(&exps));
        }
        Ok(Poly::from_terms(terms))
    }
}
