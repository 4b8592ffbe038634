//! Exercises the C ABI surface through the exported extern "C" functions,
//! checking values against the core library and the documented status codes.

use cavity_lqu::entanglement::concurrence;
use cavity_lqu::lqu::lqu_multiqubit;
use cavity_lqu::states::{werner_state, WernerParam};
use cavity_lqu_ffi::*;

#[test]
fn pure_state_lqu_through_the_c_abi() {
    let state = cavity_lqu_state_pure((2.0_f64 / 3.0).sqrt());
    assert!(!state.is_null());
    unsafe {
        assert_eq!(cavity_lqu_state_n_qubits(state), 2);
        let mut value = f64::NAN;
        let status = cavity_lqu_bipartite(state, 0, &mut value);
        assert_eq!(status, CavityLquStatus::Ok);
        assert!((value - 8.0 / 9.0).abs() < 1e-9);
        cavity_lqu_state_free(state);
    }
}

#[test]
fn constructors_reject_bad_parameters() {
    assert!(cavity_lqu_state_pure(1.5).is_null());
    assert!(cavity_lqu_state_pure(-0.1).is_null());
    assert!(cavity_lqu_state_werner(1.01).is_null());
}

#[test]
fn evolve_reduce_and_measure() {
    let initial = cavity_lqu_state_werner(0.6);
    assert!(!initial.is_null());
    unsafe {
        let mut joint = std::ptr::null_mut();
        assert_eq!(
            cavity_lqu_evolve(initial, 0.7, &mut joint),
            CavityLquStatus::Ok
        );
        assert_eq!(cavity_lqu_state_n_qubits(joint), 4);

        // keep c1, c2 (bits 0 and 1)
        let mut cavity_pair = std::ptr::null_mut();
        assert_eq!(
            cavity_lqu_reduce(joint, 0b0011, &mut cavity_pair),
            CavityLquStatus::Ok
        );
        assert_eq!(cavity_lqu_state_n_qubits(cavity_pair), 2);

        let mut conc = f64::NAN;
        let mut pre_max = f64::NAN;
        assert_eq!(
            cavity_lqu_concurrence(cavity_pair, &mut conc, &mut pre_max),
            CavityLquStatus::Ok
        );
        assert!((0.0..=1.0).contains(&conc));
        assert!(pre_max <= conc + 1e-15);

        // combined four-qubit LQU matches the core library
        let mut combined = f64::NAN;
        let mut per_qubit = [f64::NAN; 4];
        assert_eq!(
            cavity_lqu_multiqubit(joint, &mut combined, per_qubit.as_mut_ptr(), 4),
            CavityLquStatus::Ok
        );
        let core_joint =
            cavity_lqu::channel::evolve(&werner_state(&WernerParam::new(0.6).unwrap()), 0.7)
                .unwrap();
        let expected = lqu_multiqubit(core_joint.rho()).unwrap();
        assert!((combined - expected.combined).abs() < 1e-12);
        for (got, &(_, want)) in per_qubit.iter().zip(&expected.per_qubit) {
            assert!((got - want).abs() < 1e-12);
        }

        cavity_lqu_state_free(cavity_pair);
        cavity_lqu_state_free(joint);
        cavity_lqu_state_free(initial);
    }
}

#[test]
fn concurrence_matches_core_for_werner() {
    let state = cavity_lqu_state_werner(0.6);
    unsafe {
        let mut value = f64::NAN;
        assert_eq!(
            cavity_lqu_concurrence(state, &mut value, std::ptr::null_mut()),
            CavityLquStatus::Ok
        );
        let expected = concurrence(&werner_state(&WernerParam::new(0.6).unwrap()))
            .unwrap()
            .value;
        assert!((value - expected).abs() < 1e-12);
        assert!((value - 0.4).abs() < 1e-9);
        cavity_lqu_state_free(state);
    }
}

#[test]
fn status_codes_for_misuse() {
    let state = cavity_lqu_state_pure(0.5);
    unsafe {
        let mut value = f64::NAN;
        assert_eq!(
            cavity_lqu_bipartite(std::ptr::null(), 0, &mut value),
            CavityLquStatus::NullArgument
        );
        assert_eq!(
            cavity_lqu_bipartite(state, 0, std::ptr::null_mut()),
            CavityLquStatus::NullArgument
        );
        assert_eq!(
            cavity_lqu_bipartite(state, 7, &mut value),
            CavityLquStatus::BadIndex
        );

        let mut out = std::ptr::null_mut();
        // reducing a 2-qubit state is a dimension error
        assert_eq!(
            cavity_lqu_reduce(state, 0b0011, &mut out),
            CavityLquStatus::BadDimension
        );

        let mut joint = std::ptr::null_mut();
        assert_eq!(cavity_lqu_evolve(state, 1.0, &mut joint), CavityLquStatus::Ok);
        assert_eq!(
            cavity_lqu_reduce(joint, 0, &mut out),
            CavityLquStatus::BadIndex
        );
        assert_eq!(
            cavity_lqu_evolve(state, -1.0, &mut joint),
            CavityLquStatus::InvalidArgument
        );
        assert_eq!(
            cavity_lqu_bruteforce(state, 0, 10, &mut value),
            CavityLquStatus::InvalidArgument
        );

        let mut re = 0.0;
        let mut im = 0.0;
        assert_eq!(
            cavity_lqu_state_element(state, 4, 0, &mut re, &mut im),
            CavityLquStatus::BadIndex
        );
        assert_eq!(
            cavity_lqu_state_element(state, 0, 0, &mut re, &mut im),
            CavityLquStatus::Ok
        );
        assert!((re - 0.25).abs() < 1e-12);
        assert_eq!(im, 0.0);

        cavity_lqu_state_free(joint);
        cavity_lqu_state_free(state);
        // freeing null is a no-op
        cavity_lqu_state_free(std::ptr::null_mut());
    }
}

#[test]
fn bruteforce_agrees_with_closed_form_over_ffi() {
    let state = cavity_lqu_state_werner(0.6);
    unsafe {
        let mut closed = f64::NAN;
        let mut brute = f64::NAN;
        assert_eq!(
            cavity_lqu_bipartite(state, 0, &mut closed),
            CavityLquStatus::Ok
        );
        assert_eq!(
            cavity_lqu_bruteforce(state, 0, 20_000, &mut brute),
            CavityLquStatus::Ok
        );
        assert!((closed - brute).abs() < 1e-4);
        cavity_lqu_state_free(state);
    }
}

#[test]
fn amplitudes_and_mirror_time() {
    let mut xi = f64::NAN;
    let mut chi = f64::NAN;
    unsafe {
        assert_eq!(
            cavity_lqu_amplitudes(std::f64::consts::LN_2, &mut xi, &mut chi),
            CavityLquStatus::Ok
        );
    }
    assert!((xi * xi - 0.5).abs() < 1e-12);
    assert!((chi * chi - 0.5).abs() < 1e-12);
    // ln 2 is its own mirror time
    assert!((cavity_lqu_mirror_time(std::f64::consts::LN_2) - std::f64::consts::LN_2).abs() < 1e-12);
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("cavity_lqu.h");
    let text = std::fs::read_to_string(&header)
        .unwrap_or_else(|e| panic!("missing generated header {}: {}", header.display(), e));
    for symbol in [
        "cavity_lqu_state_pure",
        "cavity_lqu_state_werner",
        "cavity_lqu_state_free",
        "cavity_lqu_evolve",
        "cavity_lqu_reduce",
        "cavity_lqu_bipartite",
        "cavity_lqu_multiqubit",
        "cavity_lqu_skew_information",
        "cavity_lqu_bruteforce",
        "cavity_lqu_concurrence",
        "cavity_lqu_amplitudes",
        "cavity_lqu_mirror_time",
        "CavityLquStatus",
        "CavityLquState",
    ] {
        assert!(text.contains(symbol), "header lacks {}", symbol);
    }
}
