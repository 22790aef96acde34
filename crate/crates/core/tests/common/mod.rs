//! Shared structural checks: every named pipeline stage is compared against
//! its expected term table (amplitude tuples per mode label, coefficient
//! ratios, and absolute coefficients where the expected form is exact).

use num_complex::Complex64;

use ghz_ecp::{ProtocolConfig, StateSuperposition};
use ghz_ecp::protocol::{run_protocol_1, run_protocol_2};

pub const TOL: f64 = 1e-12;

/// One expected term: coefficient and per-label amplitudes.
pub struct ExpectedTerm {
    pub coeff: f64,
    pub amps: Vec<(&'static str, f64)>,
}

fn term_matches(state: &StateSuperposition, term_idx: usize, expected: &ExpectedTerm) -> bool {
    let t = &state.terms()[term_idx];
    expected.amps.iter().all(|(label, value)| {
        let idx = state
            .mode_index(&ghz_ecp::ModeLabel::from(*label))
            .unwrap_or_else(|_| panic!("mode '{label}' missing"));
        let a = t.amps[idx].value();
        (a.re - value).abs() <= TOL && a.im.abs() <= TOL
    })
}

/// Assert the state consists of exactly the expected terms (matched by
/// amplitude tuple, order-free), with both absolute coefficients and
/// coefficient ratios within `TOL`.
pub fn assert_stage(name: &str, state: &StateSuperposition, expected: &[ExpectedTerm]) {
    assert_eq!(
        state.terms().len(),
        expected.len(),
        "{name}: term count {} != expected {}",
        state.terms().len(),
        expected.len()
    );
    let mut matched = vec![usize::MAX; expected.len()];
    for (k, e) in expected.iter().enumerate() {
        let hit = (0..state.terms().len())
            .filter(|i| !matched.contains(i))
            .find(|&i| term_matches(state, i, e))
            .unwrap_or_else(|| panic!("{name}: no term matches expected tuple #{k}"));
        matched[k] = hit;
    }
    let c0 = state.terms()[matched[0]].coeff;
    let e0 = expected[0].coeff;
    for (k, e) in expected.iter().enumerate() {
        let c = state.terms()[matched[k]].coeff;
        assert!(
            (c - Complex64::new(e.coeff, 0.0)).norm() <= TOL,
            "{name}: coeff #{k} = {c} != {}",
            e.coeff
        );
        let ratio = c / c0;
        let expected_ratio = e.coeff / e0;
        assert!(
            (ratio - Complex64::new(expected_ratio, 0.0)).norm() <= TOL,
            "{name}: coeff ratio #{k} off"
        );
    }
}

pub fn check_protocol_1_stages(alpha: f64, beta: f64) {
    let gamma = (1.0 - beta * beta).sqrt();
    let a2 = alpha * alpha;
    let n1 = 1.0 / (beta * beta + gamma * gamma + 2.0 * beta * gamma * (-6.0 * a2).exp()).sqrt();
    let n2 = 1.0 / (beta * beta + gamma * gamma + 2.0 * beta * gamma * (-2.0 * a2).exp()).sqrt();
    let s2a = std::f64::consts::SQRT_2 * alpha;

    let cfg = ProtocolConfig::new(alpha, beta, Some(gamma)).unwrap();
    let report = run_protocol_1(&cfg).unwrap();
    let stage = |i: usize| &report.stages[i].1;

    // combined input state
    assert_stage(
        "combined",
        stage(0),
        &[
            ExpectedTerm {
                coeff: n1 * n2 * beta * gamma,
                amps: vec![("a", alpha), ("b", alpha), ("c", alpha), ("d", alpha)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * beta * beta,
                amps: vec![("a", alpha), ("b", alpha), ("c", alpha), ("d", -alpha)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * gamma * gamma,
                amps: vec![("a", -alpha), ("b", -alpha), ("c", -alpha), ("d", alpha)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * gamma * beta,
                amps: vec![("a", -alpha), ("b", -alpha), ("c", -alpha), ("d", -alpha)],
            },
        ],
    );

    // after BS1
    assert_stage(
        "after BS1",
        stage(1),
        &[
            ExpectedTerm {
                coeff: n1 * n2 * beta * gamma,
                amps: vec![("a", alpha), ("b", alpha), ("e", s2a), ("f", 0.0)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * beta * beta,
                amps: vec![("a", alpha), ("b", alpha), ("e", 0.0), ("f", s2a)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * gamma * gamma,
                amps: vec![("a", -alpha), ("b", -alpha), ("e", 0.0), ("f", -s2a)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * gamma * beta,
                amps: vec![("a", -alpha), ("b", -alpha), ("e", -s2a), ("f", 0.0)],
            },
        ],
    );

    // after post-selection on f, unnormalized
    assert_stage(
        "after post-selection",
        stage(2),
        &[
            ExpectedTerm {
                coeff: n1 * n2 * beta * gamma,
                amps: vec![("a", alpha), ("b", alpha), ("e", s2a)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * beta * gamma,
                amps: vec![("a", -alpha), ("b", -alpha), ("e", -s2a)],
            },
        ],
    );

    // after splitting mode e
    assert_stage(
        "after splitting",
        stage(3),
        &[
            ExpectedTerm {
                coeff: n1 * n2 * beta * gamma,
                amps: vec![("a", alpha), ("b", alpha), ("e1", alpha), ("e2", alpha)],
            },
            ExpectedTerm {
                coeff: n1 * n2 * beta * gamma,
                amps: vec![("a", -alpha), ("b", -alpha), ("e1", -alpha), ("e2", -alpha)],
            },
        ],
    );

    // final maximally entangled state
    let n0 = 1.0 / (2.0 + 2.0 * (-6.0 * a2).exp()).sqrt();
    assert_stage(
        "final",
        stage(4),
        &[
            ExpectedTerm {
                coeff: n0,
                amps: vec![("a", alpha), ("b", alpha), ("e2", alpha)],
            },
            ExpectedTerm {
                coeff: n0,
                amps: vec![("a", -alpha), ("b", -alpha), ("e2", -alpha)],
            },
        ],
    );
}

pub fn check_protocol_2_stages(alpha: f64, delta: f64) {
    let eta = (1.0 - delta * delta).sqrt();
    let a2 = alpha * alpha;
    let n = 1.0 / (delta * delta + eta * eta + 2.0 * delta * eta * (-6.0 * a2).exp()).sqrt();
    let n_sq = n * n;
    let s2a = std::f64::consts::SQRT_2 * alpha;
    let al = alpha;

    let cfg = ProtocolConfig::new(alpha, delta, Some(eta)).unwrap();
    let report = run_protocol_2(&cfg).unwrap();
    let stage = |i: usize| &report.stages[i].1;

    let copy1 = ["a1", "b1", "c1"];
    let copy2 = ["a2", "b2", "c2"];
    let tuple6 = |v1: f64, v2: f64| -> Vec<(&'static str, f64)> {
        copy1
            .iter()
            .map(|m| (*m, v1))
            .chain(copy2.iter().map(|m| (*m, v2)))
            .collect()
    };

    // combined two copies, phase shifts folded in
    assert_stage(
        "combined copies",
        stage(0),
        &[
            ExpectedTerm { coeff: n_sq * delta * eta, amps: tuple6(al, al) },
            ExpectedTerm { coeff: n_sq * delta * delta, amps: tuple6(al, -al) },
            ExpectedTerm { coeff: n_sq * eta * eta, amps: tuple6(-al, al) },
            ExpectedTerm { coeff: n_sq * delta * eta, amps: tuple6(-al, -al) },
        ],
    );

    // after BS1-BS3
    let sum_ports = ["d1", "e1", "f1"];
    let diff_ports = ["d2", "e2", "f2"];
    let bs_tuple = |sum: f64, diff: f64| -> Vec<(&'static str, f64)> {
        sum_ports
            .iter()
            .map(|m| (*m, sum))
            .chain(diff_ports.iter().map(|m| (*m, diff)))
            .collect()
    };
    assert_stage(
        "after BS1-BS3",
        stage(1),
        &[
            ExpectedTerm { coeff: n_sq * delta * eta, amps: bs_tuple(s2a, 0.0) },
            ExpectedTerm { coeff: n_sq * delta * delta, amps: bs_tuple(0.0, s2a) },
            ExpectedTerm { coeff: n_sq * eta * eta, amps: bs_tuple(0.0, -s2a) },
            ExpectedTerm { coeff: n_sq * delta * eta, amps: bs_tuple(-s2a, 0.0) },
        ],
    );

    // after post-selection on d2,e2,f2, unnormalized
    let triple = |v: f64| -> Vec<(&'static str, f64)> {
        sum_ports.iter().map(|m| (*m, v)).collect()
    };
    assert_stage(
        "after post-selection",
        stage(2),
        &[
            ExpectedTerm { coeff: n_sq * delta * eta, amps: triple(s2a) },
            ExpectedTerm { coeff: n_sq * delta * eta, amps: triple(-s2a) },
        ],
    );

    // after splitting d1,e1,f1
    let split_modes = ["d1'", "d1''", "e1'", "e1''", "f1'", "f1''"];
    let sextuple = |v: f64| -> Vec<(&'static str, f64)> {
        split_modes.iter().map(|m| (*m, v)).collect()
    };
    assert_stage(
        "after splitting",
        stage(3),
        &[
            ExpectedTerm { coeff: n_sq * delta * eta, amps: sextuple(al) },
            ExpectedTerm { coeff: n_sq * delta * eta, amps: sextuple(-al) },
        ],
    );

    // final maximally entangled state
    let n0 = 1.0 / (2.0 + 2.0 * (-6.0 * a2).exp()).sqrt();
    let final_modes = ["d1'", "e1'", "f1'"];
    let final_triple = |v: f64| -> Vec<(&'static str, f64)> {
        final_modes.iter().map(|m| (*m, v)).collect()
    };
    assert_stage(
        "final",
        stage(4),
        &[
            ExpectedTerm { coeff: n0, amps: final_triple(al) },
            ExpectedTerm { coeff: n0, amps: final_triple(-al) },
        ],
    );
}
