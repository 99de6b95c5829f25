mod common;

use std::f64::consts::PI;

use common::model;
use ladderlab::factorize::{
    factorize, iterated_integrals, verify_certificate, FactorizeConfig, FunctionFamily,
};
use ladderlab::numerics::integrate_adaptive;
use ladderlab::Error;

fn cfg() -> FactorizeConfig {
    FactorizeConfig::default()
}

#[test]
fn unit_family_gives_identity_certificate() {
    let m = model();
    for k in 1..=3 {
        let ints = iterated_integrals(&FunctionFamily::Unit, 100, 0.5, k, m, &cfg()).unwrap();
        assert_eq!(ints.j, ints.k);
        let cert = factorize(&FunctionFamily::Unit, 100, 0.5, k, m, &cfg()).unwrap();
        assert_eq!(cert.alphas, cert.betas);
        assert_eq!(cert.zeta_ratio_product(m).unwrap(), 1.0);
        assert!(verify_certificate(&cert, m).unwrap() <= 1e-12);
    }
}

#[test]
fn order_zero_needs_no_zeta_data() {
    let ints = iterated_integrals(&FunctionFamily::F1, 100, 0.5, 0, model(), &cfg()).unwrap();
    let mean = FunctionFamily::F1.closed_form_mean(100, 0.5).unwrap();
    assert_eq!(ints.k, vec![0.5]);
    assert_eq!(ints.j, vec![0.5 * mean]);
    assert!(ints.transported.is_empty());
}

#[test]
fn first_iterated_integral_two_ways() {
    let m = model();
    let ints = iterated_integrals(&FunctionFamily::F1, 100, 0.5, 2, m, &cfg()).unwrap();
    let s1 = &ints.segments[1];
    let direct = integrate_adaptive(
        |t| FunctionFamily::F1.eval(m.phi1(t).unwrap()),
        s1.left,
        s1.right,
        1e-12,
    )
    .unwrap();
    assert!((direct - ints.j[1]).abs() <= 1e-7 * ints.j[1]);
    assert!((ints.transported[0] - ints.j[0]).abs() <= 1e-7 * ints.j[0]);
    assert!((ints.transported[1] - ints.j[1]).abs() <= 1e-7 * ints.j[1]);
}

#[test]
fn reference_certificate_at_l100() {
    let m = model();
    let cert = factorize(&FunctionFamily::F1, 100, 0.5, 1, m, &cfg()).unwrap();
    assert!(cert.residual <= 1e-7);
    assert!(cert.alpha0 > 100.0 * PI && cert.alpha0 < 100.0 * PI + 0.5);
    assert!(verify_certificate(&cert, m).unwrap() <= 1e-7);
    assert_eq!(cert.record().len(), 5 + 2 + 1);
}

#[test]
fn power_family_solves_for_u() {
    let m = model();
    for delta in [0.5, 1.0, 2.0] {
        for k in 1..=3 {
            let family = FunctionFamily::power(delta, 100).unwrap();
            let cert = factorize(&family, 100, 0.5, k, m, &cfg()).unwrap();
            let prod = cert.zeta_ratio_product(m).unwrap();
            let side = (1.0 + delta).powf(1.0 / delta)
                * (cert.alpha0 - 100.0 * PI)
                * prod.powf(1.0 / delta);
            assert!(
                (side - 0.5).abs() <= 1e-6 * 0.5,
                "delta {delta}, k {k}: {side}"
            );
        }
    }
}

#[test]
fn tampered_alpha_is_detected() {
    let m = model();
    for family in [FunctionFamily::F1, FunctionFamily::F2, FunctionFamily::F3] {
        let mut cert = factorize(&family, 100, 0.5, 1, m, &cfg()).unwrap();
        cert.alphas[0] += 0.05;
        let r = verify_certificate(&cert, m).unwrap();
        assert!(r > 1e-3, "{}: tampered residual {r}", family.id());
    }
}

#[test]
fn betas_do_not_depend_on_the_family() {
    let m = model();
    for (l, u, k) in [(100, 0.5, 3), (200, 0.2, 2), (1000, 0.7, 1)] {
        let betas: Vec<Vec<f64>> = [FunctionFamily::F1, FunctionFamily::F2, FunctionFamily::F3]
            .iter()
            .map(|f| factorize(f, l, u, k, m, &cfg()).unwrap().betas)
            .collect();
        assert_eq!(betas[0], betas[1]);
        assert_eq!(betas[1], betas[2]);
    }
}

#[test]
fn every_point_is_interior() {
    let m = model();
    let families = [
        FunctionFamily::F1,
        FunctionFamily::F2,
        FunctionFamily::F3,
        FunctionFamily::Unit,
    ];
    for l in [100u64, 200, 1000] {
        for u in [0.2, 0.5, 0.7] {
            for family in families
                .iter()
                .copied()
                .chain([FunctionFamily::power(2.0, l).unwrap()])
            {
                let cert = factorize(&family, l, u, 3, m, &cfg()).unwrap();
                assert!(cert.segments[0].contains_open(cert.alpha0));
                for r in 1..=3 {
                    assert!(cert.segments[r].contains_open(cert.alphas[r - 1]));
                    assert!(cert.segments[r].contains_open(cert.betas[r - 1]));
                }
                assert!(
                    cert.residual <= 1e-7,
                    "{} L={l} U={u}: {}",
                    family.id(),
                    cert.residual
                );
            }
        }
    }
}

#[test]
fn invalid_requests_are_rejected() {
    let m = model();
    assert!(matches!(
        factorize(&FunctionFamily::F1, 100, 0.5, 0, m, &cfg()),
        Err(Error::BadK { .. })
    ));
    assert!(matches!(
        factorize(&FunctionFamily::F1, 100, 0.5, 4, m, &cfg()),
        Err(Error::BadK { .. })
    ));
    assert!(matches!(
        factorize(&FunctionFamily::F1, 100, 0.9, 1, m, &cfg()),
        Err(Error::BadU(_))
    ));
    assert!(matches!(
        factorize(&FunctionFamily::F1, 10, 0.5, 1, m, &cfg()),
        Err(Error::LTooSmall { .. })
    ));
    // L = 1900 needs iterates beyond the cached range.
    assert!(factorize(&FunctionFamily::F1, 1900, 0.5, 3, m, &cfg()).is_err());
}

#[test]
fn certificates_are_deterministic_across_threads() {
    let m = model();
    let families = [FunctionFamily::F1, FunctionFamily::F2, FunctionFamily::F3];
    let serial: Vec<_> = families
        .iter()
        .map(|f| factorize(f, 200, 0.5, 2, m, &cfg()).unwrap())
        .collect();
    let parallel: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = families
            .iter()
            .map(|f| s.spawn(move || factorize(f, 200, 0.5, 2, m, &cfg()).unwrap()))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(serial, parallel);
}
