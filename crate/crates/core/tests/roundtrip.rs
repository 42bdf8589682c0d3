//! Result files survive a write/parse cycle and pass re-verification.

use modcoh::batch::{self, check_stored, parse_stored, result_text};
use modcoh::completion::{benson_bound, best_kappa, CertificateKind, DriverConfig};
use modcoh::fixtures;

const COMPLETED: &[&str] = &["c2", "c4", "c8", "c2xc2", "c2xc2xc2", "d8", "q8", "d8xc2", "extraspecial_plus_32"];

#[test]
fn every_fixture_round_trips_and_checks() {
    for name in COMPLETED {
        let g = fixtures::group(name).unwrap();
        let (c, rep) = batch::analyse_group(&g, &DriverConfig::default()).unwrap();
        assert!(c.is_complete(), "{name}");
        let text = result_text(&c, rep.as_ref()).unwrap();
        let stored = parse_stored(&text).unwrap();
        assert_eq!(stored.completion.certificate, c.certificate, "{name}");
        assert_eq!(stored.report, rep, "{name}");
        let p = &stored.completion.presentation;
        assert_eq!(p.generator_degrees(), c.presentation.generator_degrees(), "{name}");
        assert_eq!(p.relations, c.presentation.relations, "{name}");
        assert_eq!(p.ranks, c.presentation.ranks, "{name}");
        assert_eq!(result_text(&stored.completion, stored.report.as_ref()).unwrap(), text, "{name}");
        assert_eq!(check_stored(&text, None).unwrap(), Ok(()), "{name}");
    }
}

#[test]
fn existence_degrees_never_beat_explicit_bound() {
    let mut benson = 0;
    for name in COMPLETED {
        let g = fixtures::group(name).unwrap();
        let (c, _) = batch::analyse_group(&g, &DriverConfig::default()).unwrap();
        if c.certificate.kind != CertificateKind::Benson {
            continue;
        }
        benson += 1;
        let ring = c.presentation.graded_ring().unwrap();
        let sys = c.params.as_ref().unwrap();
        let ty = &c.certificate.zeta_type;
        let r = sys.len();
        // κ = ζ itself, with degree-1 entries squared
        let explicit: Vec<u32> = sys.degrees.iter().map(|&d| if d == 1 { 2 } else { d }).collect();
        let kappa = best_kappa(&ring, sys, ty).unwrap();
        let existence = benson_bound(ty, &kappa, r);
        assert!(existence <= benson_bound(ty, &explicit, r), "{name}: {kappa:?} against {explicit:?}");
        assert_eq!(existence, c.certificate.bound, "{name}");
    }
    assert!(benson >= 3, "only {benson} Benson certificates among the fixtures");
}
