//! Depth, defect, excess, a-invariants and regularity of a completed ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::cohomring::Presentation;
use crate::error::{Error, Result};
use crate::grobner::{fmt_top, GradedRing, TopDegree};
use crate::group::Group;
use crate::params::{shifted_tops, ParamSystem};

/// `aⁱ = top(Ann(h_{i+1}) in A/(h₁..hᵢ)) − Σ_{j≤i}|h_j|` for a filter-regular
/// hsop, `None` standing for −∞.
pub fn a_invariants(sys: &ParamSystem) -> Result<Vec<TopDegree>> {
    if !sys.is_good() {
        return Err(Error::NotFilterRegular);
    }
    Ok(shifted_tops(&sys.degrees, &sys.ann_tops))
}

/// Weakly increasing, with −∞ below every integer.
pub fn is_monotone(a: &[TopDegree]) -> bool {
    a.windows(2).all(|w| w[0] <= w[1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub group_name: String,
    pub order: usize,
    pub small_group: Option<(u32, u32)>,
    pub a_invariants: Vec<TopDegree>,
    pub zeta_type: Vec<i64>,
    pub dim: usize,
    pub depth: usize,
    pub delta: usize,
    pub excess: usize,
    pub delta0: usize,
    pub regularity: i64,
    pub sqr: bool,
    pub vsqr: bool,
    pub monotone: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureStatus {
    /// δ ≤ 2 settles it without a witness.
    HoldsByDelta,
    /// A very strongly quasi-regular system was exhibited.
    HoldsByVsqrWitness,
    Open,
}

impl fmt::Display for ConjectureStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureStatus::HoldsByDelta => "holds-by-delta<=2",
            ConjectureStatus::HoldsByVsqrWitness => "holds-by-vsqr-witness",
            ConjectureStatus::Open => "open",
        })
    }
}

pub fn conjecture_status(rep: &InvariantReport) -> ConjectureStatus {
    if rep.delta <= 2 {
        ConjectureStatus::HoldsByDelta
    } else if rep.vsqr {
        ConjectureStatus::HoldsByVsqrWitness
    } else {
        ConjectureStatus::Open
    }
}

fn is_sqr(t: &[i64]) -> bool {
    t.iter().enumerate().all(|(i, &d)| d == -(i as i64))
}

fn is_vsqr(t: &[i64]) -> bool {
    let r = t.len().saturating_sub(1);
    r >= 1 && t.iter().enumerate().all(|(i, &d)| d == if i < r { -(i as i64) - 1 } else { -(r as i64) })
}

/// Full report from a completed presentation and a filter-regular hsop of it.
pub fn report(g: &Group, p: &Presentation, ring: &GradedRing, sys: &ParamSystem) -> Result<InvariantReport> {
    let a = a_invariants(sys)?;
    let dim = ring.krull_dim();
    if dim != g.prank() || dim != sys.len() {
        return Err(Error::Invariant(format!(
            "Krull dimension {dim}, prank {}, {} parameters",
            g.prank(),
            sys.len()
        )));
    }
    let depth = a.iter().position(|x| x.is_some()).unwrap_or(a.len());
    let centre = p.centre_rank;
    if depth < centre || depth > dim {
        return Err(Error::Invariant(format!("depth {depth} outside [{centre}, {dim}]")));
    }
    let regularity = a.iter().enumerate().filter_map(|(i, x)| x.map(|v| v + i as i64)).max().unwrap_or(i64::MIN);
    let zeta_type = sys.filter_type.clone().unwrap_or_default();
    Ok(InvariantReport {
        group_name: g.name.clone(),
        order: g.order(),
        small_group: g.small_group,
        monotone: is_monotone(&a),
        a_invariants: a,
        sqr: is_sqr(&zeta_type),
        vsqr: is_vsqr(&zeta_type),
        zeta_type,
        dim,
        depth,
        delta: dim - depth,
        excess: depth - centre,
        delta0: g.delta0(),
        regularity,
    })
}

fn fmt_list(a: &[TopDegree]) -> String {
    a.iter().map(|&t| fmt_top(t)).collect::<Vec<_>>().join(" ")
}

fn parse_top(s: &str) -> Option<TopDegree> {
    if s == "-inf" {
        Some(None)
    } else {
        s.parse().ok().map(Some)
    }
}

impl InvariantReport {
    pub const CSV_HEADER: &'static str =
        "order,id,dim,depth,delta,excess,delta0,a_invariants,regularity,sqr,vsqr,monotone";

    pub fn csv_row(&self) -> String {
        let id = self.small_group.map_or_else(|| self.group_name.replace(',', ";"), |(_, i)| i.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.order,
            id,
            self.dim,
            self.depth,
            self.delta,
            self.excess,
            self.delta0,
            fmt_list(&self.a_invariants),
            self.regularity,
            self.sqr as u8,
            self.vsqr as u8,
            self.monotone as u8
        )
    }

    /// `a-invariants (−∞,−∞,−3,−5,−4)` style.
    pub fn a_display(&self) -> String {
        let parts: Vec<String> = self.a_invariants.iter().map(|t| t.map_or("−∞".into(), |v| v.to_string().replace('-', "−"))).collect();
        format!("({})", parts.join(","))
    }

    /// Lines appended to the presentation file.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![format!("order {}", self.order)];
        if let Some((o, i)) = self.small_group {
            out.push(format!("small_group {o} {i}"));
        }
        out.extend([
            format!("a_invariants {}", fmt_list(&self.a_invariants)),
            format!("dim {}", self.dim),
            format!("depth {}", self.depth),
            format!("delta {}", self.delta),
            format!("excess {}", self.excess),
            format!("delta0 {}", self.delta0),
            format!("regularity {}", self.regularity),
            format!("sqr {}", self.sqr as u8),
            format!("vsqr {}", self.vsqr as u8),
            format!("monotone {}", self.monotone as u8),
            format!("conjecture {}", conjecture_status(self)),
        ]);
        out
    }

    /// Reads back the fields of [`InvariantReport::to_lines`].
    pub fn from_lines<'a>(group_name: &str, lines: impl IntoIterator<Item = &'a str>) -> Option<Self> {
        let mut r = InvariantReport {
            group_name: group_name.to_string(),
            order: 0,
            small_group: None,
            a_invariants: Vec::new(),
            zeta_type: Vec::new(),
            dim: 0,
            depth: 0,
            delta: 0,
            excess: 0,
            delta0: 0,
            regularity: 0,
            sqr: false,
            vsqr: false,
            monotone: false,
        };
        let mut seen = false;
        for line in lines {
            let (k, v) = line.trim().split_once(' ').unwrap_or((line.trim(), ""));
            let v = v.trim();
            match k {
                "a_invariants" => {
                    r.a_invariants = v.split_whitespace().map(parse_top).collect::<Option<_>>()?;
                    seen = true;
                }
                "type" => r.zeta_type = v.split_whitespace().map(|x| x.parse().ok()).collect::<Option<_>>()?,
                "order" => r.order = v.parse().ok()?,
                "small_group" => {
                    let (o, i) = v.split_once(' ')?;
                    r.small_group = Some((o.parse().ok()?, i.trim().parse().ok()?));
                }
                "dim" => r.dim = v.parse().ok()?,
                "depth" => r.depth = v.parse().ok()?,
                "delta" => r.delta = v.parse().ok()?,
                "excess" => r.excess = v.parse().ok()?,
                "delta0" => r.delta0 = v.parse().ok()?,
                "regularity" => r.regularity = v.parse().ok()?,
                "sqr" => r.sqr = v == "1",
                "vsqr" => r.vsqr = v == "1",
                "monotone" => r.monotone = v == "1",
                _ => {}
            }
        }
        seen.then_some(r)
    }
}

/// Number of groups per `(δ, e)` cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefectTable {
    pub counts: BTreeMap<(usize, usize), usize>,
}

impl DefectTable {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a InvariantReport>) -> Self {
        let mut counts = BTreeMap::new();
        for r in reports {
            *counts.entry((r.delta, r.excess)).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn get(&self, delta: usize, excess: usize) -> usize {
        self.counts.get(&(delta, excess)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Grid with `e` rows descending and `δ` columns ascending.
    pub fn render(&self) -> String {
        let max_d = self.counts.keys().map(|k| k.0).max().unwrap_or(0);
        let max_e = self.counts.keys().map(|k| k.1).max().unwrap_or(0);
        let mut s = String::from("e\\δ");
        for d in 0..=max_d {
            s.push_str(&format!(" {d:>5}"));
        }
        s.push('\n');
        for e in (0..=max_e).rev() {
            s.push_str(&format!("{e:>3}"));
            for d in 0..=max_d {
                let c = self.get(d, e);
                if c == 0 {
                    s.push_str(&format!(" {:>5}", "·"));
                } else {
                    s.push_str(&format!(" {c:>5}"));
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Groups whose a-invariants are not weakly increasing, one line each:
/// `order | id | a-invariants | name`.
pub fn monotonicity_exceptions(reports: &[InvariantReport]) -> String {
    let mut s = String::new();
    for r in reports.iter().filter(|r| !r.monotone) {
        let id = r.small_group.map_or_else(|| "-".to_string(), |(_, i)| format!("{i:04}"));
        s.push_str(&format!("{:>4} | {} | {} | {}\n", r.order, id, r.a_display(), r.group_name));
    }
    s
}
