use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use urfock::fock::{FockSpace, ModeBasis, StateVector};
use urfock::internal::*;
use urfock::linalg::C64;
use urfock::modeops::{build_quadratures, total_number};
use urfock::sparse::CsrMatrix;

fn rand_ur(rng: &mut impl Rng) -> UrSpinor {
    UrSpinor::new(
        rng.random::<f64>() * 2.0 - 1.0,
        rng.random::<f64>() * 2.0 - 1.0,
        rng.random::<f64>() * 2.0 - 1.0,
        rng.random::<f64>() * 2.0 - 1.0,
    )
}

#[test]
fn single_ur_vectors_are_null() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let u = rand_ur(&mut rng).normalized().unwrap();
        for chi in [MajoranaSpinor::pair(&u, &UrSpinor::zero()), MajoranaSpinor::single(&u)] {
            let (v, im) = spinor_to_vector(&chi);
            assert!(im < 1e-14);
            assert!(v[0] >= 0.0);
            worst = worst.max(minkowski_dot(&v, &v).abs());
        }
        // (V⁰)² − (V³)² = 4(a²+b²)(c²+d²) = (V¹)² + (V²)²
        let [a, b, c, d] = u.real_parts();
        let v = printed_vector_components(&u, &UrSpinor::zero());
        let lhs = v[0] * v[0] - v[3] * v[3];
        assert!((lhs - 4.0 * (a * a + b * b) * (c * c + d * d)).abs() < 1e-12);
        assert!((lhs - v[1] * v[1] - v[2] * v[2]).abs() < 1e-12);
    }
    assert!(worst <= 1e-12, "{worst}");
}

#[test]
fn bilinear_matches_component_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let (u, v) = (rand_ur(&mut rng), rand_ur(&mut rng));
        let (vec, _) = spinor_to_vector(&MajoranaSpinor::pair(&u, &v));
        let printed = printed_vector_components(&u, &v);
        for mu in 0..4 {
            assert!((vec[mu] - printed[mu]).abs() < 1e-12);
        }
        // causal, future-directed
        assert!(minkowski_dot(&vec, &vec) >= -1e-12);
        assert!(vec[0] >= 0.0);
    }
}

#[test]
fn unit_up_spinor_points_along_z() {
    let u = UrSpinor::new(1.0, 0.0, 0.0, 0.0);
    let (v, _) = spinor_to_vector(&MajoranaSpinor::pair(&u, &UrSpinor::zero()));
    assert_eq!(v, [1.0, 0.0, 0.0, 1.0]);
}

proptest! {
    #[test]
    fn vector_is_quadratic(a in -1.0..1.0f64, b in -1.0..1.0f64, c in -1.0..1.0f64, d in -1.0..1.0f64,
                           lam in -3.0..3.0f64) {
        let u = UrSpinor::new(a, b, c, d);
        let v = UrSpinor::new(d, -c, b, a);
        let chi = MajoranaSpinor::pair(&u, &v);
        let (v1, _) = spinor_to_vector(&chi);
        let (v2, _) = spinor_to_vector(&chi.scaled(lam));
        for mu in 0..4 {
            prop_assert!((v2[mu] - lam * lam * v1[mu]).abs() < 1e-12);
        }
    }
}

#[test]
fn internal_state_construction() {
    let om = UrSpinor::new(1.0, 0.0, 0.0, 0.0);
    let u = UrSpinor::new(1.0, 0.0, 0.0, 0.0);
    let z = UrSpinor::zero();
    let g = build_internal(&om, &u, &z, SpinSlot::SpinFirst).unwrap();
    assert_eq!(g.gamma[0], C64::new(1.0, 0.0));
    assert!(g.gamma[1..].iter().all(|x| x.norm() == 0.0));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let om = rand_ur(&mut rng);
        let (u, v) = (rand_ur(&mut rng), rand_ur(&mut rng));
        let n = (u.norm().powi(2) + v.norm().powi(2)).sqrt();
        let (u, v) = (UrSpinor(u.0.map(|x| x / n)), UrSpinor(v.0.map(|x| x / n)));
        let g = build_internal(&om, &u, &v, SpinSlot::IsospinFirst).unwrap();
        assert!((g.norm() - om.norm()).abs() < 1e-12);
    }
    assert!(build_internal(&om, &u, &u, SpinSlot::SpinFirst).is_err());
}

#[test]
fn dirac_hamiltonian_squares_to_e2_on_interior() {
    let space = FockSpace::new(6).unwrap();
    let q = build_quadratures(&space).unwrap();
    for slot in [SpinSlot::SpinFirst, SpinSlot::IsospinFirst] {
        let h = dirac_hamiltonian(&q, ModeBasis::Upper, slot);
        assert!(h.hermitian_defect() <= 1e-12);
        let h2 = h.matmul(&h);
        let e2 = q.e2_in(ModeBasis::Upper).matrix().kron(&CsrMatrix::identity(8));
        let keep: Vec<bool> = space.interior(1).iter().flat_map(|&k| [k; 8]).collect();
        let d = h2.restrict(|r| keep[r], |c| keep[c]).max_abs_diff(&e2.restrict(|r| keep[r], |c| keep[c]));
        assert!(d <= 1e-10, "interior defect {d}");
        // the top shell carries the truncated [P_i, P_j]
        assert!(h2.max_abs_diff(&e2) > 1e-3);
    }
}

#[test]
fn isospin_is_a_spectator_and_slot_matters() {
    let space = FockSpace::new(3).unwrap();
    let q = build_quadratures(&space).unwrap();
    for slot in [SpinSlot::SpinFirst, SpinSlot::IsospinFirst] {
        let h = dirac_hamiltonian(&q, ModeBasis::Upper, slot);
        let n = space.dim() * 8;
        for r in 0..n {
            let (dr, tr) = InternalState::split(slot, r % 8);
            for (cc, v) in h.row(r) {
                let (dc, tc) = InternalState::split(slot, cc % 8);
                assert!(tr == tc || v.norm() < 1e-15);
                // same value for the other isospin
                let g = |d: usize, t: usize| (0..8).find(|&g| InternalState::split(slot, g) == (d, t)).unwrap();
                let r2 = 8 * (r / 8) + g(dr, 1 - tr);
                let c2 = 8 * (cc / 8) + g(dc, 1 - tc);
                assert!((h.get(r2, c2) - v).norm() < 1e-15);
            }
        }
    }
    let a = dirac_hamiltonian(&q, ModeBasis::Upper, SpinSlot::SpinFirst);
    let b = dirac_hamiltonian(&q, ModeBasis::Upper, SpinSlot::IsospinFirst);
    assert!(a.max_abs_diff(&b) > 0.1);
}

#[test]
fn dirac_hamiltonian_number_commutator_is_measured() {
    let space = FockSpace::new(4).unwrap();
    let q = build_quadratures(&space).unwrap();
    let (n, _) = total_number(&q);
    let n8 = n.matrix().kron(&CsrMatrix::identity(8));
    let h = dirac_hamiltonian(&q, ModeBasis::Upper, SpinSlot::SpinFirst);
    let keep: Vec<bool> = space.interior(1).iter().flat_map(|&k| [k; 8]).collect();
    let comm = h.commutator(&n8).restrict(|r| keep[r], |c| keep[c]);
    // P_i contains A A and A†A† pieces, so total number is not conserved
    assert!(comm.max_abs() > 0.1);
}

#[test]
fn evolution_under_dirac_hamiltonian_is_unitary() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let h = dirac_hamiltonian(&q, ModeBasis::Upper, SpinSlot::SpinFirst).to_dense();
    let (vals, vecs) = urfock::linalg::eigh(&h);
    let t = 0.7;
    let ph = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&e| C64::from_polar(1.0, -e * t)),
    ));
    let u = &vecs * ph * vecs.adjoint();
    assert!(urfock::linalg::unitarity_defect(&u) < 1e-12);
}

#[test]
fn kernel_vectors_are_null_and_basis_independent() {
    for n_max in [1, 2, 3] {
        let space = FockSpace::new(n_max).unwrap();
        let q = build_quadratures(&space).unwrap();
        let tol = 1e-8;
        let k = dirac_kernel(&q, tol).unwrap();
        assert!(k.max_residual <= tol * k.largest_singular);
        assert_eq!(k.states.len(), 2 * k.dirac_dim);
        for s in &k.states {
            assert!((s.norm() - 1.0).abs() < 1e-10);
        }
        for i in 0..k.states.len() {
            for j in 0..i {
                let ov: C64 = k.states[i].amp.iter().zip(&k.states[j].amp).map(|(a, b)| a.conj() * b).sum();
                assert!(ov.norm() < 1e-10);
            }
        }
        let up = dirac_singular_values(&q, ModeBasis::Upper).unwrap();
        let xy = dirac_singular_values(&q, ModeBasis::Xyzn).unwrap();
        let count = |s: &[f64]| s.iter().filter(|&&x| x <= tol * s[0]).count();
        assert_eq!(count(&up), k.dirac_dim);
        assert_eq!(count(&xy), k.dirac_dim);
        assert!((up[0] - k.largest_singular).abs() < 1e-9);
        let smin = up.last().unwrap();
        assert!((smin - k.smallest_singular).abs() < 1e-9);
    }
}

#[test]
fn extended_product_state_roundtrips_basis() {
    let space = FockSpace::new(3).unwrap();
    let psi = StateVector::vacuum(&space, ModeBasis::Upper);
    let om = UrSpinor::new(0.6, 0.0, 0.0, 0.8);
    let u = UrSpinor::new(0.0, 1.0, 0.0, 0.0);
    let g = build_internal(&om, &u, &UrSpinor::zero(), SpinSlot::SpinFirst).unwrap();
    let e = ExtendedState::product(&psi, &g);
    assert!(e.is_normalized(1e-12));
    let back = e.to_basis(ModeBasis::Xyzn).to_basis(ModeBasis::Upper);
    let d = e.amp.iter().zip(&back.amp).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(d < 1e-12);
}
