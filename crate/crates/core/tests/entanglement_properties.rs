mod common;

use bath_entanglement::linalg::{hermitian_eigh, Mat4, C64};
use bath_entanglement::{
    build_kossakowski_closed, build_superoperator, concurrence, dissipator_apply, generation_test,
    is_entangled, min_eig_pt, min_q_rate, partial_transpose, q_rate, small_time_ppt_oracle,
    uv_vectors, DensityMatrix, KossakowskiMatrix, ModelParams, ProductState, Verdict,
};
use nalgebra::{DMatrix, DVector, Vector3, Vector4};
use rand::Rng;

#[test]
fn peres_horodecki_matches_concurrence() {
    let mut rng = common::rng(31);
    let (mut checked, mut entangled) = (0, 0);
    for _ in 0..1000 {
        let rho = common::density_matrix(&mut rng);
        let lo = min_eig_pt(&rho);
        let c = concurrence(&rho);
        // Skip draws too close to the separable boundary to decide either way.
        if lo.abs() < 1e-9 && c < 1e-9 {
            continue;
        }
        checked += 1;
        let by_pt = lo < -1e-12;
        assert_eq!(by_pt, c > 1e-12, "min_eig_pt={lo:e} concurrence={c:e}");
        assert_eq!(by_pt, is_entangled(&rho, 1e-12));
        entangled += usize::from(by_pt);
    }
    assert!(checked > 950);
    assert!(entangled > 100 && entangled < checked);
}

#[test]
fn concurrence_reference_values() {
    assert!((concurrence(&DensityMatrix::singlet()) - 1.0).abs() < 1e-12);
    assert!(concurrence(&DensityMatrix::maximally_mixed()).abs() < 1e-12);
    let mut rng = common::rng(32);
    for _ in 0..100 {
        let s = common::product_state(&mut rng);
        assert!(concurrence(&s.density_matrix()) < 1e-7);
        assert!(min_eig_pt(&s.density_matrix()) > -1e-12);
    }
    // Werner states: p|singlet><singlet| + (1-p)/4, entangled iff p > 1/3.
    for p in [0.0, 0.2, 0.5, 0.8, 1.0] {
        let m = DensityMatrix::singlet().matrix() * C64::from(p)
            + Mat4::identity() * C64::from((1.0 - p) / 4.0);
        let rho = DensityMatrix::new(m).unwrap();
        let want = (1.5 * p - 0.5_f64).max(0.0);
        assert!((concurrence(&rho) - want).abs() < 1e-12, "p={p}");
    }
}

#[test]
fn uv_vectors_have_norm_two() {
    let mut rng = common::rng(33);
    for _ in 0..200 {
        let s = common::product_state(&mut rng);
        let uv = uv_vectors(&s).unwrap();
        assert!((uv.u.norm_squared() - 2.0).abs() < 1e-12);
        assert!((uv.v.norm_squared() - 2.0).abs() < 1e-12);
    }
    let canonical = ProductState::canonical(&Vector3::z()).unwrap();
    let uv = uv_vectors(&canonical).unwrap();
    let want = Vector3::new(C64::from(1.0), C64::new(0.0, -1.0), C64::from(0.0));
    assert!((uv.u - want).norm() < 1e-14 && (uv.v - want).norm() < 1e-14);
}

#[test]
fn margin_is_rotation_invariant() {
    let mut rng = common::rng(34);
    for _ in 0..100 {
        let p = common::params(&mut rng);
        let s = common::product_state(&mut rng);
        let o = common::rotation(&mut rng);
        let pr = ModelParams::new(p.omega, p.beta, p.ell, o * p.n).unwrap();
        let sr = ProductState::new(o * s.bloch1, o * s.bloch2).unwrap();
        let a = generation_test(&s, &build_kossakowski_closed(&p).unwrap()).unwrap();
        let b = generation_test(&sr, &build_kossakowski_closed(&pr).unwrap()).unwrap();
        assert!(
            (a.margin - b.margin).abs() < 1e-12 * a.scale.max(1e-300),
            "{a:?} {b:?}"
        );
    }
}

#[test]
fn canonical_margin_matches_closed_expression() {
    let mut rng = common::rng(35);
    for _ in 0..100 {
        let p = common::params(&mut rng);
        let k = build_kossakowski_closed(&p).unwrap();
        let v = generation_test(&ProductState::canonical(&p.n).unwrap(), &k).unwrap();
        let rs = v.rs.expect("canonical state carries R and S");
        let a = bath_entanglement::kossakowski_coefficients(&p).unwrap().a;
        let want = 4.0 * a * a * rs.rs_margin;
        assert!(
            (v.margin - want).abs() < 1e-12 * v.scale,
            "{} vs {want}",
            v.margin
        );
    }
}

/// Probe form and the kernel of the partial-transposed initial state, built
/// directly from their definitions.
fn probe_problem(state: &ProductState, k: &KossakowskiMatrix) -> (DMatrix<C64>, Vec<Vector4<C64>>) {
    let rho0 = state.density_matrix();
    let d = partial_transpose(&dissipator_apply(k, rho0.matrix()));
    let (vals, vecs) = hermitian_eigh(&partial_transpose(rho0.matrix()));
    let kernel: Vec<_> = vals
        .iter()
        .zip(vecs)
        .filter(|(l, _)| l.abs() < 1e-10)
        .map(|(_, v)| v)
        .collect();
    assert_eq!(kernel.len(), 3);
    let h = DMatrix::from_fn(3, 3, |i, j| (kernel[i].adjoint() * d * kernel[j])[(0, 0)]);
    (h, kernel)
}

/// Minimize the Rayleigh quotient by steepest descent with exact line
/// search, from many random starting points.
fn gradient_minimum(h: &DMatrix<C64>, rng: &mut impl Rng) -> f64 {
    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let mut best = f64::INFINITY;
    for _ in 0..50 {
        let mut x = DVector::from_fn(3, |_, _| common::complex_gaussian(rng));
        x /= C64::from(x.norm());
        let mut f = x.dotc(&(h * &x)).re;
        for _ in 0..500 {
            let hx = h * &x;
            f = x.dotc(&hx).re;
            let g = hx - &x * C64::from(f);
            let gn = g.norm();
            if gn < 1e-16 * scale {
                break;
            }
            let g = g / C64::from(gn);
            // Lowest Ritz pair of H on span{x, g}.
            let d = g.dotc(&(h * &g)).re;
            let b = x.dotc(&(h * &g));
            let half = 0.5 * (f - d);
            let lam = 0.5 * (f + d) - (half * half + b.norm_sqr()).sqrt();
            let (cx, cg) = (b, C64::from(lam - f));
            let norm = (cx.norm_sqr() + cg.norm_sqr()).sqrt();
            if norm == 0.0 {
                break;
            }
            x = (&x * cx + &g * cg) / C64::from(norm);
            x /= C64::from(x.norm());
        }
        best = best.min(f);
    }
    best
}

#[test]
fn probe_minimum_is_optimal() {
    let mut rng = common::rng(36);
    for trial in 0..60 {
        let p = common::params(&mut rng);
        let k = build_kossakowski_closed(&p).unwrap();
        let state = if trial % 3 == 0 {
            ProductState::canonical(&p.n).unwrap()
        } else {
            common::product_state(&mut rng)
        };
        let (h, _) = probe_problem(&state, &k);
        let exact = min_q_rate(&state, &k);
        let numeric = gradient_minimum(&h, &mut rng);
        let tol = 1e-9 * k.spectral_norm();
        assert!(
            (exact.rate - numeric).abs() < tol,
            "exact {} numeric {numeric}",
            exact.rate
        );

        // The reported minimizer is admissible and attains the reported rate.
        let rho0 = state.density_matrix();
        let q0 = (exact.chi.adjoint() * partial_transpose(rho0.matrix()) * exact.chi)[(0, 0)].re;
        assert!(q0.abs() < 1e-12);
        assert!((q_rate(&exact.chi, &rho0, &k).unwrap() - exact.rate).abs() < tol);

        // Generation at the onset means a negative attainable rate.
        let v = generation_test(&state, &k).unwrap();
        match v.verdict {
            Verdict::Generated => assert!(exact.rate < 0.0, "{v:?} rate {}", exact.rate),
            Verdict::NotGenerated => assert!(exact.rate > -tol, "{v:?} rate {}", exact.rate),
            Verdict::Boundary => {}
        }
    }
}

#[test]
fn generic_product_states_agree_with_short_time_evolution() {
    let mut rng = common::rng(37);
    let mut decided = 0;
    for _ in 0..150 {
        let p = common::params(&mut rng);
        let k = build_kossakowski_closed(&p).unwrap();
        let m = build_superoperator(&k, false, &p);
        let s = common::product_state(&mut rng);
        let v = generation_test(&s, &k).unwrap();
        // Far enough from the boundary for a finite step to resolve the sign.
        if v.margin.abs() < 1e-3 * v.scale {
            continue;
        }
        decided += 1;
        let dt = 1e-4 / k.spectral_norm();
        let oracle = small_time_ppt_oracle(&m, &s.density_matrix(), dt).unwrap();
        assert_eq!(v.generated(), oracle, "{v:?} params {p:?} state {s:?}");
    }
    assert!(decided > 50);
}
