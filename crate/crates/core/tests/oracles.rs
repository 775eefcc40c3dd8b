mod common;

use std::f64::consts::PI;

use cayleywalk::classical::{factorwise_generator, generator, stationarity_gap, ClassicalWalk};
use cayleywalk::closedforms::{charter_classical, cycle_classical, ClosedFormFamily};
use cayleywalk::graphs::build;
use cayleywalk::linalg::{
    circulant_eigenvalues, circulant_matrix, expm_action, hermitian_eigendecomposition,
};
use cayleywalk::mixing::{balanced_property_check, instantaneous_mixing_search, tv_to_uniform};
use cayleywalk::quantum::{average_distribution, hamiltonian};
use cayleywalk::{
    AmplitudeVector, GeneratorConvention, GraphSpec, HamiltonianConvention, ProbabilityVector,
};
use common::{c, from_library, max_diff, quadrature_average, taylor_expm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis(n: usize, k: usize) -> Vec<cayleywalk::Complex64> {
    (0..n)
        .map(|j| c(if j == k { 1.0 } else { 0.0 }, 0.0))
        .collect()
}

#[test]
fn taylor_oracle_reproduces_pauli_rotation() {
    let sx = vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ];
    for t in [0.0, 0.4, 3.0, 25.0] {
        let u = taylor_expm(&sx, c(0.0, -t));
        assert!((u[0][0] - c(f64::cos(t), 0.0)).norm() < 1e-13);
        assert!((u[1][0] - c(0.0, -f64::sin(t))).norm() < 1e-13);
    }
}

#[test]
fn expm_action_matches_taylor_on_random_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for dim in 1..=10 {
        let h = common::random_hermitian(&mut rng, dim, 1.5);
        let v = common::random_state(&mut rng, dim);
        let lib = hermitian_eigendecomposition(&common::to_library(&h)).unwrap();
        for scale in [c(0.0, -0.7), c(0.0, 4.0), c(-0.3, 0.0), c(0.2, -1.1)] {
            let oracle = common::matvec(&taylor_expm(&h, scale), &v);
            let got = expm_action(&lib, scale, &v).unwrap();
            assert!(max_diff(&oracle, &got) < 1e-9, "dim {dim} scale {scale}");
        }
    }
}

#[test]
fn classical_closed_forms_match_taylor() {
    for n in 3..=7 {
        let g = build(&GraphSpec::cycle(n)).unwrap();
        let h = from_library(&generator(&g, GeneratorConvention::NormalizedLaplacian).unwrap());
        for t in [0.25, 2.0, 9.0] {
            let p = common::matvec(&taylor_expm(&h, c(t, 0.0)), &basis(n, 0));
            for (k, pk) in p.iter().enumerate() {
                assert!((cycle_classical(n, k, t).unwrap() - pk.re).abs() < 1e-12);
            }
        }
    }
    let g = build(&GraphSpec::charter(4)).unwrap();
    let h =
        from_library(&factorwise_generator(&g, GeneratorConvention::NormalizedLaplacian).unwrap());
    for t in [0.5, 3.0] {
        let p = common::matvec(&taylor_expm(&h, c(t, 0.0)), &basis(8, 0));
        for (k, pk) in p.iter().enumerate() {
            assert!((charter_classical(4, k, t).unwrap() - pk.re).abs() < 1e-12);
        }
    }
}

#[test]
fn quantum_closed_forms_match_taylor() {
    let families = [
        ClosedFormFamily::CycleQuantum { n: 5, d: 2 },
        ClosedFormFamily::CompleteQuantum { n: 4, d: 2 },
        ClosedFormFamily::CharterQuantum { n: 3 },
        ClosedFormFamily::HypercubeQuantum { n: 3 },
    ];
    for family in families {
        let g = build(&family.graph_spec()).unwrap();
        let h = from_library(&hamiltonian(&g, HamiltonianConvention::ProductAveraged).unwrap());
        for t in [0.3, 4.4, 13.0] {
            let oracle = common::matvec(&taylor_expm(&h, c(0.0, -t)), &basis(g.vertex_count(), 0));
            let analytic = family.amplitudes(t).unwrap();
            assert!(
                max_diff(&oracle, &analytic) < 1e-11,
                "{} at {t}",
                family.name()
            );
        }
    }
}

#[test]
fn average_distribution_matches_quadrature() {
    let cases = [
        (GraphSpec::complete(2), vec![0.5, 0.5]),
        (GraphSpec::cycle(3), vec![5.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0]),
    ];
    for (spec, exact) in cases {
        let g = build(&spec).unwrap();
        let h = hamiltonian(&g, HamiltonianConvention::NormalizedAdjacency).unwrap();
        let n = g.vertex_count();
        let avg = average_distribution(&h, &AmplitudeVector::basis(n, 0).unwrap()).unwrap();
        let quad = quadrature_average(&from_library(&h), &basis(n, 0), 2000.0, 0.01);
        for j in 0..n {
            assert!((avg[j] - exact[j]).abs() < 1e-12);
            assert!((avg[j] - quad[j]).abs() < 2e-3, "{spec:?} vertex {j}");
        }
    }
}

#[test]
fn charter_average_is_frozen() {
    let g = build(&GraphSpec::charter(3)).unwrap();
    let h = hamiltonian(&g, HamiltonianConvention::ProductAveraged).unwrap();
    let avg = average_distribution(&h, &AmplitudeVector::basis(6, 0).unwrap()).unwrap();
    let expected = [
        5.0 / 18.0,
        1.0 / 9.0,
        1.0 / 9.0,
        5.0 / 18.0,
        1.0 / 9.0,
        1.0 / 9.0,
    ];
    for (a, b) in avg.as_slice().iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
    let quad = quadrature_average(&from_library(&h), &basis(6, 0), 2000.0, 0.01);
    for (a, b) in avg.as_slice().iter().zip(&quad) {
        assert!((a - b).abs() < 2e-3);
    }
    assert!((tv_to_uniform(avg.as_slice()) - 4.0 / 9.0).abs() < 1e-12);
}

#[test]
fn charter_balanced_values() {
    let plus = balanced_property_check(3, 16.0 * PI / 3.0 + 8.0 * PI / 9.0).unwrap();
    assert_eq!(plus.sizes(), vec![3, 3]);
    assert!((plus.values[0] - 0.294_340_740_519_83).abs() < 1e-12);
    assert!((plus.values[1] - 0.038_992_592_813_503).abs() < 1e-12);

    let minus = balanced_property_check(3, 16.0 * PI / 3.0 - 8.0 * PI / 9.0).unwrap();
    assert_eq!(minus.sizes(), vec![3, 3]);
    assert!((minus.values[0] - 0.195_608_029_611_155).abs() < 1e-12);
    assert!((minus.values[1] - 0.137_725_303_722_178).abs() < 1e-12);

    let four = balanced_property_check(4, 3.0 * PI).unwrap();
    assert_eq!(four.sizes(), vec![4, 4]);
    assert!((four.values[0] - 0.25).abs() < 1e-12);
    assert!(four.values[1].abs() < 1e-12);
}

#[test]
fn c5_search_minimum_is_frozen() {
    let g = build(&GraphSpec::cycle(5)).unwrap();
    let h = hamiltonian(&g, HamiltonianConvention::NormalizedAdjacency).unwrap();
    let r = instantaneous_mixing_search(
        &h,
        &AmplitudeVector::basis(5, 0).unwrap(),
        200.0,
        20_000,
        1e-3,
    )
    .unwrap();
    // dense scan at spacing 5e-5 bottoms out at 0.0095869 near t = 138.2357
    assert!((r.best_time - 138.2357).abs() < 1e-3, "{}", r.best_time);
    assert!(
        r.best_tv > 0.00958 && r.best_tv < 0.0095870,
        "{}",
        r.best_tv
    );

    let psi = common::matvec(
        &taylor_expm(&from_library(&h), c(0.0, -r.best_time)),
        &basis(5, 0),
    );
    let p: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
    assert!((tv_to_uniform(&p) - r.best_tv).abs() < 1e-10);
}

#[test]
fn stationarity_gap_on_k2() {
    let g = build(&GraphSpec::complete(2)).unwrap();
    let h = generator(&g, GeneratorConvention::NormalizedLaplacian).unwrap();
    let p0 = ProbabilityVector::point_mass(2, 0).unwrap();
    // |P_0 - 1/2| + |P_1 - 1/2| = e^{-2t}
    assert!((stationarity_gap(&h, &p0, 1.0).unwrap() - (-2.0f64).exp()).abs() < 1e-14);
}

#[test]
fn product_spectrum_is_sum_of_factor_spectra() {
    let factors = [
        GraphSpec::cycle(5),
        GraphSpec::complete(3),
        GraphSpec::cycle(4),
    ];
    let mut sums = vec![0.0];
    for f in &factors {
        let spec = hermitian_eigendecomposition(build(f).unwrap().adjacency()).unwrap();
        sums = sums
            .iter()
            .flat_map(|s| spec.eigenvalues().iter().map(move |l| s + l))
            .collect();
    }
    sums.sort_by(f64::total_cmp);
    let g = build(&GraphSpec::product(factors.to_vec())).unwrap();
    let full = hermitian_eigendecomposition(g.adjacency()).unwrap();
    for (a, b) in full.eigenvalues().iter().zip(&sums) {
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn circulant_spectrum_matches_brute_force_eigensolver() {
    let coeffs = [0.0, 1.0, 0.5, 0.0, 0.5, 1.0];
    let mut fourier: Vec<f64> = circulant_eigenvalues(&coeffs)
        .unwrap()
        .iter()
        .map(|z| z.re)
        .collect();
    fourier.sort_by(f64::total_cmp);
    let dense = hermitian_eigendecomposition(&circulant_matrix(&coeffs).unwrap()).unwrap();
    for (a, b) in fourier.iter().zip(dense.eigenvalues()) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn hypercube_adjacency_is_hamming_distance_one() {
    for n in 1..=5 {
        let g = build(&GraphSpec::hypercube(n)).unwrap();
        let a = g.adjacency();
        for u in 0..1usize << n {
            for v in 0..1usize << n {
                let hamming = (u ^ v).count_ones();
                assert_eq!(a[(u, v)].re == 1.0, hamming == 1, "n={n} {u} {v}");
            }
        }
    }
}

#[test]
fn hypercube_classical_marginal_brute_force() {
    // the probability of Hamming weight w summed over all vertices is binomial
    let n = 4;
    let g = build(&GraphSpec::hypercube(n)).unwrap();
    let walk = ClassicalWalk::new(
        factorwise_generator(&g, GeneratorConvention::NormalizedLaplacian).unwrap(),
    )
    .unwrap();
    let t = 0.6;
    let p = walk
        .evolve(&ProbabilityVector::point_mass(16, 0).unwrap(), t)
        .unwrap();
    let flip = (1.0 - (-2.0 * t).exp()) / 2.0;
    let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
    for (w, b) in binom.iter().enumerate() {
        let mass: f64 = (0..16usize)
            .filter(|v| v.count_ones() as usize == w)
            .map(|v| p[v])
            .sum();
        let expected = b * flip.powi(w as i32) * (1.0 - flip).powi((n - w) as i32);
        assert!((mass - expected).abs() < 1e-12);
    }
}
