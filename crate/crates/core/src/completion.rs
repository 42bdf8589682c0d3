//! Deciding when τ_N H*(G) is the whole cohomology ring.
//!
//! For `prank ≥ 2` this is the improved Benson test: given a filter-regular
//! hsop ζ of τ_N with type `(d₀,…,d_r)` whose images are an hsop of H*(G),
//! and a filter-regular system κ of degrees `nᵢ ≥ 2`, τ_N is complete once
//! `N > max(α′, 0) + Σ(nⱼ − 1)` with `α′ = max_{i ≤ r−2}(dᵢ + i)`. When
//! Ω₁(Z(G)) has rank at least two, `≥` suffices.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use log::{debug, info};

use crate::cohomring::{t_ring, CohomologyBuilder, Presentation};
use crate::error::{Error, Result};
use crate::grobner::GradedRing;
use crate::group::Group;
use crate::params::{self, ParamSystem, SEARCH_BUDGET};
use crate::poly::Poly;
use crate::resolution::{Resolution, ResolutionCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Trivial group.
    Trivial,
    /// Rank one: a regular parameter ζ with `top(τ_N/ζ) < |ζ| ≤ N`.
    Periodic,
    Benson,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Trivial => "trivial",
            CertificateKind::Periodic => "periodic",
            CertificateKind::Benson => "benson",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionCertificate {
    pub kind: CertificateKind,
    pub n: usize,
    pub zeta_degrees: Vec<u32>,
    pub zeta_type: Vec<i64>,
    pub kappa_degrees: Vec<u32>,
    pub alpha_prime: i64,
    /// Right-hand side of the test inequality.
    pub bound: i64,
    pub relaxed: bool,
    pub verdict: bool,
    pub quillen_check: bool,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl CompletionCertificate {
    pub fn incomplete(n: usize) -> Self {
        Self {
            kind: CertificateKind::Benson,
            n,
            zeta_degrees: Vec::new(),
            zeta_type: Vec::new(),
            kappa_degrees: Vec::new(),
            alpha_prime: 0,
            bound: i64::MAX,
            relaxed: false,
            verdict: false,
            quillen_check: false,
        }
    }

    /// Lines appended to the presentation file.
    pub fn to_lines(&self) -> Vec<String> {
        let head = if self.verdict { "completed_at" } else { "incomplete_at" };
        vec![
            format!("{head} {}", self.n),
            format!("certificate {}", self.kind),
            format!("zeta_degrees {}", join(&self.zeta_degrees)),
            format!("type {}", join(&self.zeta_type)),
            format!("kappa_degrees {}", join(&self.kappa_degrees)),
            format!("alpha_prime {}", self.alpha_prime),
            format!("bound {}", self.bound),
            format!("relaxed {}", self.relaxed as u8),
            format!("quillen {}", self.quillen_check as u8),
        ]
    }

    /// Parses the lines written by [`CompletionCertificate::to_lines`];
    /// unrelated lines are ignored.
    pub fn from_lines<'a>(lines: impl IntoIterator<Item = &'a str>) -> Option<Self> {
        let mut c = Self::incomplete(0);
        let mut seen = false;
        for line in lines {
            let (key, rest) = line.trim().split_once(' ').unwrap_or((line.trim(), ""));
            let ints = || rest.split_whitespace().map(|x| x.parse::<i64>()).collect::<std::result::Result<Vec<_>, _>>();
            match key {
                "completed_at" | "incomplete_at" => {
                    c.n = rest.trim().parse().ok()?;
                    c.verdict = key == "completed_at";
                    seen = true;
                }
                "certificate" => {
                    c.kind = match rest.trim() {
                        "trivial" => CertificateKind::Trivial,
                        "periodic" => CertificateKind::Periodic,
                        "benson" => CertificateKind::Benson,
                        _ => return None,
                    }
                }
                "zeta_degrees" => c.zeta_degrees = ints().ok()?.into_iter().map(|x| x as u32).collect(),
                "type" => c.zeta_type = ints().ok()?,
                "kappa_degrees" => c.kappa_degrees = ints().ok()?.into_iter().map(|x| x as u32).collect(),
                "alpha_prime" => c.alpha_prime = rest.trim().parse().ok()?,
                "bound" => c.bound = rest.trim().parse().ok()?,
                "relaxed" => c.relaxed = rest.trim() == "1",
                "quillen" => c.quillen_check = rest.trim() == "1",
                _ => {}
            }
        }
        seen.then_some(c)
    }
}

/// `max_{0 ≤ i ≤ r−2}(dᵢ + i)`.
pub fn alpha_prime(zeta_type: &[i64], r: usize) -> i64 {
    (0..r.saturating_sub(1)).filter_map(|i| zeta_type.get(i).map(|d| d + i as i64)).max().unwrap_or(i64::MIN)
}

/// `max(α′, 0) + Σ(nⱼ − 1)`.
pub fn benson_bound(zeta_type: &[i64], kappa_degrees: &[u32], r: usize) -> i64 {
    alpha_prime(zeta_type, r).max(0) + kappa_degrees.iter().map(|&n| n as i64 - 1).sum::<i64>()
}

/// Evaluates the completion inequality at truncation `n`.
pub fn benson_test(
    n: usize,
    zeta_type: &[i64],
    kappa_degrees: &[u32],
    r: usize,
    relaxed: bool,
) -> Result<CompletionCertificate> {
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    if let Some(&d) = kappa_degrees.iter().find(|&&d| d < 2) {
        return Err(Error::DegreeTooSmall(d as i64));
    }
    if zeta_type.len() != r + 1 || kappa_degrees.len() != r {
        return Err(Error::Invariant(format!("type and degree lists do not match rank {r}")));
    }
    let bound = benson_bound(zeta_type, kappa_degrees, r);
    let n_ = n as i64;
    Ok(CompletionCertificate {
        kind: CertificateKind::Benson,
        n,
        zeta_degrees: Vec::new(),
        zeta_type: zeta_type.to_vec(),
        kappa_degrees: kappa_degrees.to_vec(),
        alpha_prime: alpha_prime(zeta_type, r),
        bound,
        relaxed,
        verdict: if relaxed { n_ >= bound } else { n_ > bound },
        quillen_check: false,
    })
}

/// Whether the restrictions of `sys` to every maximal elementary abelian
/// subgroup form an hsop there. By Quillen's theorem this makes `sys` an
/// hsop of the untruncated ring.
pub fn quillen_hsop_check(p: &Presentation, sys: &[Poly]) -> bool {
    p.restrictions.iter().filter(|v| v.maximal).all(|v| {
        let images: Vec<Poly> = sys.iter().map(|z| v.restrict(z)).collect();
        GradedRing::new(t_ring(v.rank), images).map(|q| q.is_finite_dimensional()).unwrap_or(false)
    })
}

/// The smallest bound over κ-systems: for each prefix of ζ, its degrees
/// followed by existence degrees; degree-1 entries are squared.
pub fn best_kappa(ring: &GradedRing, sys: &ParamSystem, zeta_type: &[i64]) -> Result<Vec<u32>> {
    let r = sys.len();
    let mut best: Option<(i64, Vec<u32>)> = None;
    for k in (0..=r).rev() {
        let mut degs = params::existence_degrees(ring, &sys.elements[..k])?;
        for d in degs.iter_mut() {
            *d = (*d).max(2);
        }
        if degs.len() != r {
            continue;
        }
        let b = benson_bound(zeta_type, &degs, r);
        if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
            best = Some((b, degs));
        }
    }
    best.map(|(_, d)| d).ok_or(Error::NotFilterRegular)
}

#[derive(Clone, Debug)]
pub struct DriverConfig {
    pub max_degree: usize,
    /// Directory for cached resolutions.
    pub cache: Option<PathBuf>,
    /// Run parameter improvement (divisors, last-parameter replacement).
    pub improve: bool,
}

impl Default for DriverConfig {
    fn default() -> Self {
        Self { max_degree: 24, cache: None, improve: true }
    }
}

/// Result of the driver: the presentation reached, its certificate (with
/// `verdict = false` if no test passed) and the parameters used.
#[derive(Clone, Debug)]
pub struct Completion {
    pub presentation: Presentation,
    pub certificate: CompletionCertificate,
    pub params: Option<ParamSystem>,
}

impl Completion {
    pub fn is_complete(&self) -> bool {
        self.certificate.verdict
    }

    pub fn into_complete(self) -> Result<Self> {
        if self.is_complete() {
            Ok(self)
        } else {
            Err(Error::Incomplete(self.certificate.n))
        }
    }

    /// Presentation file text with parameters and certificate appended.
    pub fn to_text(&self) -> Result<String> {
        let mut s = self.presentation.to_text();
        if let Some(sys) = &self.params {
            let ring = self.presentation.graded_ring()?;
            for line in sys.to_lines(&ring) {
                if !line.starts_with("type ") {
                    s.push_str(&line);
                    s.push('\n');
                }
            }
        }
        for line in self.certificate.to_lines() {
            s.push_str(&line);
            s.push('\n');
        }
        Ok(s)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (presentation, rest) = Presentation::from_text(text)?;
        let certificate = CompletionCertificate::from_lines(rest.iter().map(|(_, l)| l.as_str()))
            .ok_or_else(|| Error::Parse { line: 0, msg: "missing certificate".into() })?;
        let mut elements = Vec::new();
        for (line, l) in &rest {
            if let Some(p) = l.strip_prefix("param ") {
                elements.push(presentation.ring.parse(p).map_err(|_| Error::Parse { line: *line, msg: l.clone() })?);
            }
        }
        let params = if elements.is_empty() {
            None
        } else {
            Some(ParamSystem::analyse(&presentation.graded_ring()?, elements)?)
        };
        Ok(Self { presentation, certificate, params })
    }
}

/// Rank one: a parameter ζ regular in τ_N with `top(τ_N/ζ) < |ζ| ≤ N`.
/// τ_N is then free over `F₂[ζ]` on a basis in degrees `< |ζ|`; H*(G) has
/// the same shape since ζ restricts non-trivially to the unique subgroup of
/// order 2 (so is a periodicity generator), and the two agree through N.
fn periodic_attempt(p: &Presentation, ring: &GradedRing) -> Result<Option<(CompletionCertificate, ParamSystem)>> {
    let Some(c) = p.centre_restriction() else { return Ok(None) };
    let n = p.truncation as u32;
    let mut tried = 0;
    for layer in ring.standard_monomials_upto(n).into_iter().skip(1) {
        for m in layer {
            let z = Poly::from_monomial(m);
            if c.restrict(&z).is_zero() {
                continue;
            }
            tried += 1;
            if tried > SEARCH_BUDGET {
                return Ok(None);
            }
            let sys = ParamSystem::analyse(ring, vec![z])?;
            let zd = sys.degrees[0] as i64;
            if !sys.is_good() || sys.ann_tops[0].is_some() {
                continue;
            }
            let top = sys.ann_tops[1].unwrap_or(i64::MIN);
            if top < zd && zd <= n as i64 {
                let cert = CompletionCertificate {
                    kind: CertificateKind::Periodic,
                    n: p.truncation,
                    zeta_degrees: sys.degrees.clone(),
                    zeta_type: sys.filter_type.clone().unwrap_or_default(),
                    kappa_degrees: sys.degrees.clone(),
                    alpha_prime: 0,
                    bound: zd,
                    relaxed: false,
                    verdict: true,
                    quillen_check: true,
                };
                return Ok(Some((cert, sys)));
            }
        }
    }
    Ok(None)
}

/// One attempt of the rank ≥ 2 test on the current presentation.
pub fn benson_attempt(p: &Presentation, ring: &GradedRing, improve: bool) -> Result<(CompletionCertificate, ParamSystem)> {
    let mut sys = params::construct_parameters(p, ring)?;
    if improve {
        sys = params::factor_improve(ring, &sys)?;
        sys = params::replace_last_parameter(ring, &sys)?;
    }
    let zeta_type = sys.filter_type.clone().ok_or(Error::NotFilterRegular)?;
    let r = sys.len();
    let kappa = best_kappa(ring, &sys, &zeta_type)?;
    let mut cert = benson_test(p.truncation, &zeta_type, &kappa, r, p.centre_rank >= 2)?;
    cert.zeta_degrees = sys.degrees.clone();
    cert.quillen_check = quillen_hsop_check(p, &sys.elements);
    cert.verdict &= cert.quillen_check;
    Ok((cert, sys))
}

fn load_resolution(group: &Arc<Group>, cache: Option<&ResolutionCache>) -> Result<Resolution> {
    if let Some(c) = cache {
        if let Some(r) = c.load(group)? {
            info!("{}: cached resolution through degree {}", group.name, r.top_degree());
            return Ok(r);
        }
    }
    Ok(Resolution::new(group.clone()))
}

/// Extends τ_N one degree at a time until a completion test passes or
/// `config.max_degree` is reached.
pub fn drive_to_completion(group: &Group, config: &DriverConfig) -> Result<Completion> {
    let group = Arc::new(group.clone());
    let cache = config.cache.as_ref().map(ResolutionCache::new);
    let res = load_resolution(&group, cache.as_ref())?;
    let cached_top = res.top_degree();
    let mut builder = CohomologyBuilder::from_resolution(res)?;
    let rank = group.prank();
    let mut last = None;
    let outcome = loop {
        let p = builder.presentation();
        let n = p.truncation;
        if rank == 0 {
            let mut cert = CompletionCertificate::incomplete(n);
            cert.kind = CertificateKind::Trivial;
            cert.verdict = true;
            cert.quillen_check = true;
            cert.bound = 0;
            break Completion { presentation: p, certificate: cert, params: None };
        }
        if n >= 1 {
            let ring = p.graded_ring()?;
            let attempt = if rank == 1 {
                periodic_attempt(&p, &ring)?.ok_or(Error::Incomplete(n))
            } else {
                benson_attempt(&p, &ring, config.improve)
            };
            match attempt {
                Ok((cert, sys)) => {
                    debug!("{} N={n}: bound {} verdict {}", group.name, cert.bound, cert.verdict);
                    if cert.verdict {
                        break Completion { presentation: p, certificate: cert, params: Some(sys) };
                    }
                    last = Some((cert, sys));
                }
                Err(e) => debug!("{} N={n}: {e}", group.name),
            }
        }
        if n >= config.max_degree {
            let (mut cert, sys) = match last.take() {
                Some((c, s)) => (c, Some(s)),
                None => (CompletionCertificate::incomplete(n), None),
            };
            cert.n = n;
            cert.verdict = false;
            break Completion { presentation: p, certificate: cert, params: sys };
        }
        builder.extend_to(n + 1)?;
    };
    if let Some(c) = &cache {
        if builder.resolution().top_degree() > cached_top {
            c.store(builder.resolution())?;
        }
    }
    info!(
        "{}: {} at N = {}",
        group.name,
        if outcome.is_complete() { "complete" } else { "incomplete" },
        outcome.certificate.n
    );
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn formula_cases() {
        let c = benson_test(3, &[0, -1, -2], &[2, 2], 2, false).unwrap();
        assert!(c.verdict);
        assert_eq!(c.bound, 2);
        assert!(!benson_test(2, &[0, -1, -2], &[2, 2], 2, false).unwrap().verdict);
        assert!(benson_test(2, &[0, -1, -2], &[2, 2], 2, true).unwrap().verdict);
        assert_eq!(benson_bound(&[2, 1, 0, -1, -2], &[8, 4, 2, 2], 4), 14);
        assert!(benson_test(15, &[2, 1, 0, -1, -2], &[8, 4, 2, 2], 4, false).unwrap().verdict);
    }

    #[test]
    fn formula_errors() {
        assert!(matches!(benson_test(5, &[-1, -1], &[2], 1, false), Err(Error::RankTooSmall(1))));
        assert!(matches!(benson_test(5, &[0, -1, -2], &[1, 2], 2, false), Err(Error::DegreeTooSmall(1))));
    }

    #[test]
    fn certificate_lines_roundtrip() {
        let mut c = benson_test(3, &[0, -1, -2], &[2, 2], 2, false).unwrap();
        c.zeta_degrees = vec![2, 1];
        let lines = c.to_lines();
        let back = CompletionCertificate::from_lines(lines.iter().map(|s| s.as_str())).unwrap();
        assert_eq!(back, c);
    }

    fn drive(name: &str) -> Completion {
        let g = fixtures::group(name).unwrap();
        drive_to_completion(&g, &DriverConfig { max_degree: 10, ..Default::default() }).unwrap()
    }

    #[test]
    fn small_groups_complete() {
        for (name, n) in [("c2", 1), ("c4", 2), ("q8", 4), ("c2xc2", 2), ("d8", 3)] {
            let c = drive(name);
            assert!(c.is_complete(), "{name}");
            assert_eq!(c.certificate.n, n, "{name}");
        }
    }

    #[test]
    fn dihedral_certificate() {
        let c = drive("d8");
        assert_eq!(c.presentation.generator_degrees(), vec![1, 1, 2]);
        assert_eq!(c.certificate.zeta_type, vec![-1, -2, -2]);
        assert!(!c.certificate.relaxed);
        assert!(c.certificate.quillen_check);
    }

    #[test]
    fn quillen_check_detects_failure() {
        let c = drive("d8");
        let p = &c.presentation;
        let ring = p.graded_ring().unwrap();
        let good = c.params.unwrap();
        assert!(quillen_hsop_check(p, &good.elements));
        // a degree-1 class vanishing on one Klein subgroup, with w
        let w = ring.ring().var(2);
        let fails = (0..2).map(|i| ring.ring().var(i)).any(|x| !quillen_hsop_check(p, &[x, w.clone()]));
        assert!(fails);
    }

    #[test]
    fn text_roundtrip() {
        let c = drive("d8");
        let text = c.to_text().unwrap();
        let back = Completion::from_text(&text).unwrap();
        assert_eq!(back.certificate, c.certificate);
        assert_eq!(back.params.unwrap().elements, c.params.unwrap().elements);
    }
}
