//! Randomised checks of the parameter lemmas over the fixture rings.
//!
//! Each suite draws seeds through proptest, builds random homogeneous
//! sequences from them, and compares the engine against the brute-force
//! annihilator oracle in degrees ≤ 12.

use std::cell::Cell;

use modcoh::grobner::{GradedRing, TopDegree};
use modcoh::params::{is_filter_regular, ParamSystem};
use modcoh::poly::{Monomial, Poly, PolyRing};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle;

pub const ORACLE_DEGREE: u32 = 12;

pub struct Fixture {
    pub ring: PolyRing,
    pub rels: Vec<Poly>,
    pub graded: GradedRing,
    /// Nilpotent standard monomials by degree, up to degree 3.
    pub nilpotent: Vec<Vec<Monomial>>,
}

pub fn fixtures() -> Vec<Fixture> {
    oracle::fixture_rings()
        .into_iter()
        .map(|(ring, rels)| {
            let graded = GradedRing::new(ring.clone(), rels.clone()).unwrap();
            let nilpotent = (0..=3)
                .map(|d| {
                    let ms = graded.standard_monomials(d);
                    ms.into_iter().filter(|m| graded.is_nilpotent(&Poly::from_monomial(m.clone())).unwrap()).collect()
                })
                .collect();
            Fixture { ring, rels, graded, nilpotent }
        })
        .collect()
}

/// A random nonzero homogeneous element of degree `d`, if the ring has one.
pub fn random_element(f: &Fixture, d: u32, rng: &mut ChaCha8Rng) -> Option<Poly> {
    let basis = f.graded.standard_monomials(d);
    if basis.is_empty() {
        return None;
    }
    loop {
        let terms: Vec<_> = basis.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !terms.is_empty() {
            return Some(Poly::from_terms(terms));
        }
    }
}

/// `len` random elements of degrees in `1..=max_deg`.
pub fn random_sequence(f: &Fixture, len: usize, max_deg: u32, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let d = rng.gen_range(1..=max_deg);
        if let Some(e) = random_element(f, d, rng) {
            out.push(e);
        }
    }
    out
}

/// A random filter-regular hsop, trying up to `attempts` draws.
pub fn random_good_hsop(f: &Fixture, rng: &mut ChaCha8Rng, attempts: usize) -> Option<ParamSystem> {
    let r = f.graded.krull_dim();
    for _ in 0..attempts {
        let seq = random_sequence(f, r, 3, rng);
        let sys = ParamSystem::analyse(&f.graded, seq).unwrap();
        if sys.is_good() {
            return Some(sys);
        }
    }
    None
}

/// Checks the engine's annihilator tops for `seq` against the oracle.
pub fn oracle_agrees(f: &Fixture, seq: &[Poly], tops: &[TopDegree], regular: bool) -> Result<(), String> {
    let mut rels = f.rels.clone();
    for (i, h) in seq.iter().enumerate() {
        let dims = oracle::annihilator_dims(&f.ring, &rels, h, ORACLE_DEGREE);
        let last = dims.iter().rposition(|&x| x != 0).map(|d| d as i64);
        match tops.get(i) {
            Some(&t) => {
                let within = t.is_none_or(|t| t <= ORACLE_DEGREE as i64);
                if within && last != t {
                    return Err(format!("element {i}: engine top {t:?}, oracle {last:?} ({dims:?})"));
                }
            }
            None => {
                // the first unbounded annihilator: it must show up
                if regular || i != tops.len() || last.is_none() {
                    return Err(format!("element {i}: engine unbounded, oracle {dims:?}"));
                }
                return Ok(());
            }
        }
        rels.push(h.clone());
    }
    if let Some(&t) = tops.get(seq.len()) {
        let dims = oracle::quotient_dims(&f.ring, &rels, ORACLE_DEGREE);
        let last = dims.iter().rposition(|&x| x != 0).map(|d| d as i64);
        if t.is_some_and(|t| t < ORACLE_DEGREE as i64) && last != t {
            return Err(format!("final quotient: engine top {t:?}, oracle {last:?}"));
        }
    }
    Ok(())
}

/// Outcome of one suite: cases run and cases where the lemma applied.
#[derive(Debug, Clone, Copy)]
pub struct SuiteStats {
    pub cases: usize,
    pub applicable: usize,
}

fn run_suite(cases: u32, body: impl Fn(&[Fixture], &mut ChaCha8Rng) -> Result<bool, String>) -> Result<SuiteStats, String> {
    let fx = fixtures();
    let applicable = Cell::new(0usize);
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let result = runner.run(&any::<u64>(), |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match body(&fx, &mut rng) {
            Ok(true) => {
                applicable.set(applicable.get() + 1);
                Ok(())
            }
            Ok(false) => Ok(()),
            Err(e) => Err(TestCaseError::fail(e)),
        }
    });
    result.map_err(|e| e.to_string())?;
    Ok(SuiteStats { cases: cases as usize, applicable: applicable.get() })
}

fn pick<'a>(fx: &'a [Fixture], rng: &mut ChaCha8Rng) -> &'a Fixture {
    &fx[rng.gen_range(0..fx.len())]
}

/// Divisors of a filter-regular system are filter-regular.
pub fn divisor_suite(cases: u32) -> Result<SuiteStats, String> {
    run_suite(cases, |fx, rng| {
        let f = pick(fx, rng);
        let r = f.graded.krull_dim();
        let divisors = random_sequence(f, r, 2, rng);
        let products: Vec<Poly> = divisors
            .iter()
            .map(|d| {
                let deg = rng.gen_range(1..=2);
                random_element(f, deg, rng).map_or(d.clone(), |q| d.mul(&q))
            })
            .collect();
        if products.iter().any(|p| f.graded.normal_form(p).is_zero()) {
            return Ok(false);
        }
        let p = ParamSystem::analyse(&f.graded, products).unwrap();
        if !p.is_good() {
            return Ok(false);
        }
        let d = ParamSystem::analyse(&f.graded, divisors.clone()).unwrap();
        if !d.filter_regular {
            return Err(format!("divisors {divisors:?} of a filter-regular system are not filter-regular"));
        }
        oracle_agrees(f, &divisors, &d.ann_tops, d.filter_regular)?;
        Ok(true)
    })
}

/// Raising elements to 2-powers neither creates nor destroys filter-regularity.
pub fn power_suite(cases: u32) -> Result<SuiteStats, String> {
    run_suite(cases, |fx, rng| {
        let f = pick(fx, rng);
        let r = f.graded.krull_dim();
        let seq = random_sequence(f, r, 3, rng);
        let powered: Vec<Poly> = seq.iter().map(|h| h.pow(1 << rng.gen_range(0..=2u32))).collect();
        if powered.iter().any(|p| p.degree().unwrap_or(0) > 12) {
            return Ok(false);
        }
        let a = is_filter_regular(&f.graded, &seq).unwrap();
        let b = is_filter_regular(&f.graded, &powered).unwrap();
        if a.0 != b.0 {
            return Err(format!("{seq:?}: filter-regular {} but powers {}", a.0, b.0));
        }
        oracle_agrees(f, &seq, &a.1, a.0)?;
        Ok(true)
    })
}

/// A random nonzero sum of nilpotent monomials of degree `d`.
fn random_nilpotent(f: &Fixture, d: u32, rng: &mut ChaCha8Rng) -> Option<Poly> {
    let ms = f.nilpotent.get(d as usize).filter(|ms| !ms.is_empty())?;
    loop {
        let terms: Vec<_> = ms.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !terms.is_empty() {
            return Some(Poly::from_terms(terms));
        }
    }
}

/// Nilpotent perturbations leave filter-regularity unchanged.
pub fn nilpotent_suite(cases: u32) -> Result<SuiteStats, String> {
    run_suite(cases, |fx, rng| {
        let with_nil: Vec<&Fixture> = fx.iter().filter(|f| f.nilpotent.iter().any(|m| !m.is_empty())).collect();
        let f = with_nil[rng.gen_range(0..with_nil.len())];
        let r = f.graded.krull_dim();
        let nil_degrees: Vec<u32> = (1..=3).filter(|&d| !f.nilpotent[d as usize].is_empty()).collect();
        let mut seq = random_sequence(f, r, 3, rng);
        // make sure at least one entry has a degree where nilpotents live
        let k = rng.gen_range(0..r);
        let d = nil_degrees[rng.gen_range(0..nil_degrees.len())];
        seq[k] = random_element(f, d, rng).unwrap();
        let mut alt = Vec::with_capacity(seq.len());
        for (i, h) in seq.iter().enumerate() {
            let d = h.degree().unwrap();
            match random_nilpotent(f, d, rng) {
                Some(n) if i == k || rng.gen_bool(0.5) => {
                    // confirm nilpotency independently: n^(2^j) lies in the ideal
                    let mut pw = n.clone();
                    while !oracle::in_ideal(&f.ring, &f.rels, &pw) {
                        pw = pw.square();
                        if pw.degree().unwrap_or(0) > 24 {
                            return Err(format!("{n:?} reported nilpotent"));
                        }
                    }
                    alt.push(h.add(&n));
                }
                _ => alt.push(h.clone()),
            }
        }
        if alt.iter().any(|a| f.graded.normal_form(a).is_zero()) {
            return Ok(false);
        }
        let a = is_filter_regular(&f.graded, &seq).unwrap();
        let b = is_filter_regular(&f.graded, &alt).unwrap();
        if a.0 != b.0 {
            return Err(format!("{seq:?} vs {alt:?}: {} / {}", a.0, b.0));
        }
        oracle_agrees(f, &alt, &b.1, b.0)?;
        Ok(true)
    })
}

/// `h` is a filter-regular hsop iff `h, 0` is a filter-regular sequence.
pub fn hsop_suite(cases: u32) -> Result<SuiteStats, String> {
    run_suite(cases, |fx, rng| {
        let f = pick(fx, rng);
        let r = f.graded.krull_dim();
        let seq = random_sequence(f, r, 3, rng);
        let sys = ParamSystem::analyse(&f.graded, seq.clone()).unwrap();
        let (fr, _) = is_filter_regular(&f.graded, &seq).unwrap();
        let zero_ok = fr && f.graded.quotient(&seq).unwrap().annihilator_top(&Poly::zero()).unwrap().0;
        if sys.is_good() != zero_ok {
            return Err(format!("{seq:?}: hsop {} but appended zero {}", sys.is_good(), zero_ok));
        }
        oracle_agrees(f, &seq, &sys.ann_tops, sys.filter_regular)?;
        if fr && !sys.hsop {
            // an infinite quotient has nonzero elements in high degrees
            let mut rels = f.rels.clone();
            rels.extend(seq.iter().cloned());
            let dims = oracle::quotient_dims(&f.ring, &rels, ORACLE_DEGREE);
            if dims[7..].iter().all(|&x| x == 0) {
                return Err(format!("{seq:?}: not an hsop, but the quotient vanishes in degrees 7..=12"));
            }
        }
        Ok(true)
    })
}

/// Two independently drawn filter-regular hsops have the same type.
pub fn type_suite(cases: u32) -> Result<SuiteStats, String> {
    run_suite(cases, |fx, rng| {
        let f = pick(fx, rng);
        let (Some(a), Some(b)) = (random_good_hsop(f, rng, 20), random_good_hsop(f, rng, 20)) else {
            return Ok(false);
        };
        if a.filter_type != b.filter_type {
            return Err(format!("{:?} has type {:?}, {:?} has {:?}", a.elements, a.filter_type, b.elements, b.filter_type));
        }
        oracle_agrees(f, &a.elements, &a.ann_tops, true)?;
        Ok(true)
    })
}
