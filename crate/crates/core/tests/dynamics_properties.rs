mod common;

use bath_entanglement::dynamics::system_hamiltonian;
use bath_entanglement::linalg::{
    hermiticity_defect, max_abs, min_hermitian_eigenvalue, vectorize, Mat4, C64,
};
use bath_entanglement::{
    build_kossakowski_closed, build_superoperator, dissipator_apply, evolve, evolve_traj, tau,
    DensityMatrix, ModelParams, Superoperator,
};
use rand::Rng;

fn generator(p: &ModelParams, include_hs: bool) -> Superoperator {
    build_superoperator(&build_kossakowski_closed(p).unwrap(), include_hs, p)
}

#[test]
fn superoperator_reproduces_dissipator() {
    let mut rng = common::rng(21);
    for _ in 0..100 {
        let p = common::params(&mut rng);
        let k = build_kossakowski_closed(&p).unwrap();
        let m = build_superoperator(&k, false, &p);
        let rho = common::density_matrix(&mut rng);
        let want = dissipator_apply(&k, rho.matrix());
        let scale = k.spectral_norm().max(1e-300);
        assert!(max_abs(&(m.apply(rho.matrix()) - want)) < 1e-13 * scale);

        // The optional commutator adds exactly -i[H_S, rho].
        let mh = build_superoperator(&k, true, &p);
        let h = system_hamiltonian(&p);
        let comm = (h * rho.matrix() - rho.matrix() * h) * C64::new(0.0, -1.0);
        assert!(max_abs(&(mh.apply(rho.matrix()) - want - comm)) < 1e-13 * (scale + p.omega));
    }
}

#[test]
fn generator_preserves_trace_and_hermiticity() {
    let mut rng = common::rng(22);
    for _ in 0..100 {
        let p = common::params(&mut rng);
        let m = generator(&p, rng.random());
        let rho = common::density_matrix(&mut rng);
        let d = m.apply(rho.matrix());
        let scale = max_abs(m.matrix());
        assert!(d.trace().norm() < 1e-13 * scale);
        assert!(hermiticity_defect(&d) < 1e-13 * scale);
    }
}

#[test]
fn propagator_is_a_semigroup() {
    let mut rng = common::rng(23);
    for _ in 0..30 {
        let p = common::params(&mut rng);
        let m = generator(&p, rng.random());
        let (t, s) = (5.0 * rng.random::<f64>(), 5.0 * rng.random::<f64>());
        let lhs = m.propagator(t + s);
        let rhs = m.propagator(t) * m.propagator(s);
        assert!(max_abs(&(lhs - rhs)) < 1e-10, "t={t} s={s} params={p:?}");
        assert!(
            max_abs(&(m.propagator(0.0) - nalgebra::SMatrix::<C64, 16, 16>::identity())) == 0.0
        );
    }
}

#[test]
fn evolution_keeps_states_physical() {
    let mut rng = common::rng(24);
    let times: Vec<f64> = (0..=50).map(f64::from).collect();
    for _ in 0..20 {
        let p = common::params(&mut rng);
        let m = generator(&p, rng.random());
        let rho0 = common::density_matrix(&mut rng);
        let scaled: Vec<f64> = times.iter().map(|t| t / p.omega).collect();
        let traj = evolve_traj(&m, &rho0, &scaled).unwrap();
        assert!(
            traj.rk_deviation < 1e-8,
            "rk deviation {}",
            traj.rk_deviation
        );
        for (_, rho) in traj.iter() {
            assert!((rho.trace() - 1.0).abs() < 1e-12);
            assert!(rho.min_eigenvalue() > -1e-10);
        }
        // The unnormalized map agrees with the stored states.
        let raw = m.propagator(scaled[50]) * vectorize(rho0.matrix());
        let last = traj.states.last().unwrap();
        assert!((raw - vectorize(last.matrix())).camax() < 1e-10);
    }
}

#[test]
fn choi_matrices_are_positive() {
    let mut rng = common::rng(25);
    for _ in 0..50 {
        let p = common::params(&mut rng);
        let m = generator(&p, rng.random());
        let t = 10f64.powf(-2.0 + 3.0 * rng.random::<f64>());
        let choi = m.choi_matrix(t);
        assert!(hermiticity_defect(&choi) < 1e-12);
        let lo = min_hermitian_eigenvalue(&choi);
        assert!(lo > -1e-10, "choi eigenvalue {lo} at t={t}");
    }
}

#[test]
fn coincident_atoms_conserve_tau() {
    let mut rng = common::rng(26);
    for _ in 0..30 {
        let mut p = common::params(&mut rng);
        p.ell = 0.0;
        let m = generator(&p, rng.random());
        let rho0 = common::density_matrix(&mut rng);
        let t0 = tau(&rho0);
        for t in [0.5, 3.0, 20.0] {
            let rho = evolve(&m, &rho0, t / p.omega).unwrap();
            assert!((tau(&rho) - t0).abs() < 1e-9);
        }
    }
}

#[test]
fn separated_atoms_do_not_conserve_tau() {
    let p = ModelParams::from_groups(1.0, Some(1.0), 2.0, nalgebra::Vector3::z()).unwrap();
    let m = generator(&p, false);
    let rho0 = DensityMatrix::singlet();
    let rho = evolve(&m, &rho0, 50.0).unwrap();
    assert!((tau(&rho) - tau(&rho0)).abs() > 1e-2);
}

#[test]
fn evolution_rejects_negative_time() {
    let p = ModelParams::from_groups(1.0, Some(1.0), 1.0, nalgebra::Vector3::z()).unwrap();
    let m = generator(&p, false);
    assert!(evolve(&m, &DensityMatrix::maximally_mixed(), -1.0).is_err());
    assert!(evolve_traj(&m, &DensityMatrix::maximally_mixed(), &[0.0, -1.0]).is_err());
}

#[test]
fn density_matrix_validation() {
    let mut bad = Mat4::identity() * C64::from(0.25);
    bad[(0, 1)] = C64::new(0.0, 0.5);
    assert!(DensityMatrix::new(bad).is_err());
    assert!(DensityMatrix::new(Mat4::identity()).is_err());
    let mut neg = Mat4::zeros();
    neg[(0, 0)] = C64::from(1.5);
    neg[(1, 1)] = C64::from(-0.5);
    assert!(DensityMatrix::new(neg).is_err());
}
