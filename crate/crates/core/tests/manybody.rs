use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use urfock::fock::{mode_transform, FockSpace, LadderKind, ModeBasis, Occupation, StateVector};
use urfock::internal::{build_internal, lambda_extended, ExtendedState, MajoranaSpinor, SpinSlot, UrSpinor};
use urfock::linalg::{c, C64};
use urfock::manybody::*;
use urfock::modeops::{apply_four_momentum, build_quadratures};
use urfock::sparse::CsrMatrix;
use urfock::spatial::{hermite_fn, Grid3};

fn occ(n: [u16; 4]) -> Occupation {
    Occupation::new(n)
}

fn random_state(space: &Arc<FockSpace>, basis: ModeBasis, rng: &mut impl Rng) -> StateVector {
    let amp = (0..space.dim())
        .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    StateVector::from_amplitudes(space, basis, amp).unwrap().normalized().unwrap()
}

fn restrict(m: &CsrMatrix, keep: &[bool]) -> CsrMatrix {
    m.restrict(|r| keep[r], |c| keep[c])
}

#[test]
fn single_object_gives_plain_ladders() {
    let space = FockSpace::new(2).unwrap();
    let reg = ObjectRegistry::new(1, &space).unwrap();
    let g = build_green_components(&reg).unwrap();
    for r in 0..4 {
        let a = urfock::fock::ladder_in(&space, ModeBasis::Upper, r, LadderKind::Annihilate).unwrap();
        assert_eq!(g[0][r].0.mat.max_abs_diff(a.matrix()), 0.0);
    }
}

#[test]
fn green_components_obey_the_parabose_algebra() {
    let space = FockSpace::new(2).unwrap();
    let reg = ObjectRegistry::new(2, &space).unwrap();
    let g = build_green_components(&reg).unwrap();
    let mut worst_cross: f64 = 0.0;
    for r in 0..4 {
        for s in 0..4 {
            let (br, brd) = (&g[0][r].0.mat, &g[0][r].1.mat);
            let (bs, bsd) = (&g[1][s].0.mat, &g[1][s].1.mat);
            worst_cross = worst_cross
                .max(br.anticommutator(bsd).max_abs())
                .max(br.anticommutator(bs).max_abs())
                .max(brd.anticommutator(bsd).max_abs());
        }
    }
    assert!(worst_cross <= 1e-12, "{worst_cross}");

    let keep = reg.interior(1);
    for alpha in 0..2 {
        for r in 0..4 {
            for s in 0..4 {
                let comm = g[alpha][r].0.mat.commutator(&g[alpha][s].1.mat);
                let target = if r == s { CsrMatrix::identity(reg.dim()) } else { CsrMatrix::zeros(reg.dim(), reg.dim()) };
                assert!(restrict(&comm, &keep).max_abs_diff(&restrict(&target, &keep)) < 1e-12);
                assert!(g[alpha][r].0.mat.commutator(&g[alpha][s].0.mat).max_abs() < 1e-12);
            }
        }
    }
}

#[test]
fn trilinear_relations_hold_on_interior() {
    let space = FockSpace::new(2).unwrap();
    let reg = ObjectRegistry::new(2, &space).unwrap();
    let g = build_green_components(&reg).unwrap();
    let sum = |r: usize, create: bool| {
        let mut acc = CsrMatrix::zeros(reg.dim(), reg.dim());
        for comp in &g {
            acc = acc.add(if create { &comp[r].1.mat } else { &comp[r].0.mat });
        }
        acc
    };
    let a: Vec<_> = (0..4).map(|r| sum(r, false)).collect();
    let ad: Vec<_> = (0..4).map(|r| sum(r, true)).collect();
    // a_t and a_s† move one excitation each; two steps stay inside from depth 2
    let keep = reg.interior(2);
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for s in 0..4 {
            let half = a[r].anticommutator(&ad[s]).scale(c(0.5));
            let rr = a[r].anticommutator(&a[s]);
            let cc = ad[r].anticommutator(&ad[s]);
            for t in 0..4 {
                let lhs = half.commutator(&a[t]);
                let rhs = if s == t { a[r].scale(c(-1.0)) } else { CsrMatrix::zeros(reg.dim(), reg.dim()) };
                worst = worst.max(restrict(&lhs, &keep).max_abs_diff(&restrict(&rhs, &keep)));
                worst = worst.max(restrict(&rr.commutator(&a[t]), &keep).max_abs());
                worst = worst.max(restrict(&cc.commutator(&ad[t]), &keep).max_abs());
            }
        }
    }
    assert!(worst <= 1e-10, "{worst}");
}

#[test]
fn exchange_signs_follow_object_membership() {
    let space = FockSpace::new(2).unwrap();
    let reg = ObjectRegistry::new(2, &space).unwrap();
    for r in 0..4 {
        for s in 0..4 {
            assert_eq!(exchange_sign(&reg, (r, 0), (s, 0)).unwrap(), Some(1.0));
            assert_eq!(exchange_sign(&reg, (r, 1), (s, 1)).unwrap(), Some(1.0));
            assert_eq!(exchange_sign(&reg, (r, 0), (s, 1)).unwrap(), Some(-1.0));
        }
    }
}

#[test]
fn registry_respects_cap() {
    let space = FockSpace::new(4).unwrap();
    assert!(ObjectRegistry::new(3, &space).is_err());
    assert!(ObjectRegistry::new(0, &space).is_err());
}

#[test]
fn interaction_keeps_only_equal_labels() {
    let space = FockSpace::new(2).unwrap();
    let (al, be, ga, de) = (C64::new(0.6, 0.1), c(0.3), C64::new(0.0, 0.8), c(-0.2));
    let p1 = StateVector::from_terms(&space, ModeBasis::Upper, &[(occ([1, 0, 0, 0]), al), (occ([0, 1, 0, 0]), be)]).unwrap();
    let p2 = StateVector::from_terms(&space, ModeBasis::Upper, &[(occ([1, 0, 0, 0]), ga), (occ([0, 0, 1, 0]), de)]).unwrap();
    let out = interaction_apply(&Weight::Constant(c(1.0)), &[p1.clone(), p2.clone()]).unwrap();
    let i = space.rank(occ([1, 0, 0, 0])).unwrap();
    let idx = out.reg.index(&[i, i]);
    for (k, z) in out.amp.iter().enumerate() {
        if k == idx {
            assert!((z - al * ga).norm() < 1e-15);
        } else {
            assert_eq!(z.norm(), 0.0);
        }
    }
    let zero = interaction_apply(&Weight::Constant(c(0.0)), &[p1.clone(), p2]).unwrap();
    assert_eq!(zero.norm(), 0.0);

    let w: Vec<C64> = (0..space.dim()).map(|k| c(k as f64)).collect();
    let one = interaction_apply(&Weight::Diagonal(w.clone()), std::slice::from_ref(&p1)).unwrap();
    for (k, z) in one.amp.iter().enumerate() {
        assert_eq!(*z, w[k] * p1.amplitudes()[k]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn interaction_never_grows_support(seed in any::<u64>()) {
        let space = FockSpace::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut states = Vec::new();
        for _ in 0..2 {
            let mut s = random_state(&space, ModeBasis::Upper, &mut rng);
            for a in s.amplitudes_mut() {
                if rng.random::<f64>() < 0.5 { *a = c(0.0); }
            }
            states.push(s);
        }
        let out = interaction_apply(&Weight::Constant(c(1.3)), &states).unwrap();
        for (k, z) in out.amp.iter().enumerate() {
            if z.norm() > 0.0 {
                let l = out.reg.labels(k);
                for (m, &lm) in l.iter().enumerate() {
                    prop_assert!(states[m].amplitudes()[lm].norm() > 0.0);
                }
            }
        }
    }
}

#[test]
fn decoupled_evolution_is_a_product() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s1 = random_state(&space, ModeBasis::Upper, &mut rng);
    let s2 = random_state(&space, ModeBasis::Upper, &mut rng);
    let prod = MultiObjectState::product(&[s1.clone(), s2.clone()]).unwrap();
    let t = 0.9;
    let ev = evolve_interacting(&q, &Weight::Constant(c(0.0)), &prod, t).unwrap();
    let e = q.energy().unwrap();
    let want = MultiObjectState::product(&[e.evolve(&s1, t).unwrap(), e.evolve(&s2, t).unwrap()]).unwrap();
    assert!(ev.max_abs_diff(&want) < 1e-12);
}

#[test]
fn interaction_entangles_and_conserves_norm() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s1 = random_state(&space, ModeBasis::Upper, &mut rng);
    let s2 = random_state(&space, ModeBasis::Upper, &mut rng);
    let prod = MultiObjectState::product(&[s1, s2]).unwrap();
    assert!(prod.entanglement_entropy(1).unwrap() < 1e-12);
    let w: Vec<C64> = (0..space.dim()).map(|k| c(0.5 + 0.1 * k as f64)).collect();
    let ev = evolve_interacting(&q, &Weight::Diagonal(w), &prod, 1.0).unwrap();
    assert!((ev.norm() - 1.0).abs() <= 1e-10);
    assert!(ev.entanglement_entropy(1).unwrap() > 1e-3);
    assert!(evolve_interacting(&q, &Weight::Constant(C64::new(0.0, 1.0)), &prod, 1.0).is_err());
}

#[test]
fn free_multibody_relation_vanishes() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s1 = random_state(&space, ModeBasis::Upper, &mut rng);
    let s2 = random_state(&space, ModeBasis::Upper, &mut rng);
    let prod = MultiObjectState::product(&[s1.clone(), s2]).unwrap();
    assert!(free_multibody_check(&q, &prod).unwrap() <= 1e-10);
    let ent = evolve_interacting(&q, &Weight::Constant(c(2.0)), &prod, 0.7).unwrap();
    assert!(ent.entanglement_entropy(1).unwrap() > 1e-3);
    assert!(free_multibody_check(&q, &ent).unwrap() <= 1e-10);
    let single = MultiObjectState::product(&[s1]).unwrap();
    assert!(free_multibody_check(&q, &single).unwrap() <= 1e-10);
}

#[test]
fn layer_two_fields_are_canonical_on_interior() {
    let one = FockSpace::new(2).unwrap();
    let l2 = LayerTwoSpace::new(&one, 3).unwrap();
    assert_eq!(l2.dim(), 816);
    let keep = l2.space().interior(1);
    let ops: Vec<_> = (0..one.dim())
        .map(|n| (l2.field(n, LadderKind::Annihilate).unwrap(), l2.field(n, LadderKind::Create).unwrap()))
        .collect();
    for a in 0..one.dim() {
        for b in 0..one.dim() {
            let comm = ops[a].0.commutator(&ops[b].1);
            let target = if a == b { CsrMatrix::identity(l2.dim()) } else { CsrMatrix::zeros(l2.dim(), l2.dim()) };
            assert!(restrict(&comm, &keep).max_abs_diff(&restrict(&target, &keep)) < 1e-12);
        }
    }
    assert!(LayerTwoSpace::new(&one, 4).is_err());
    assert!(LayerTwoSpace::new(&FockSpace::new(3).unwrap(), 2).is_err());
}

#[test]
fn propagator_is_causal_and_positive_on_the_diagonal() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let (a, b) = ([0.3, -0.2, 0.1], [-0.5, 0.4, 0.0]);
    assert_eq!(propagator(&q, a, b, 0.2, 0.5).unwrap(), c(0.0));
    assert!(propagator(&q, a, b, 0.5, 0.5).unwrap().norm() > 0.0);
    for x in [a, b, [1.0, 1.0, -1.0]] {
        let d = propagator(&q, x, x, 0.4, 0.4).unwrap();
        assert_eq!(d.im, 0.0);
        assert!(d.re >= 0.0);
    }
}

#[test]
fn equal_time_propagator_reproduces_basis_functions() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let p = Propagator::new(&q, 0.0).unwrap();
    let grid = Grid3::new(8.0, 0.2).unwrap();
    let (ax, w) = (grid.axis(), grid.weights());
    let xps = [[0.2, -0.3, 0.5], [1.0, 0.0, -0.7]];
    let mut worst: f64 = 0.0;
    for lab in p.labels().to_vec() {
        let f = |x: &[f64; 3]| hermite_fn(lab[0], x[0]) * hermite_fn(lab[1], x[1]) * hermite_fn(lab[2], x[2]);
        for xp in &xps {
            let mut acc = c(0.0);
            for (i, &x0) in ax.iter().enumerate() {
                for (j, &x1) in ax.iter().enumerate() {
                    for (k, &x2) in ax.iter().enumerate() {
                        let x = [x0, x1, x2];
                        acc += p.eval(xp, &x) * (f(&x) * w[i] * w[j] * w[k]);
                    }
                }
            }
            worst = worst.max((acc - c(f(xp))).norm());
        }
    }
    assert!(worst <= 2e-3, "{worst}");
}

#[test]
fn propagator_matches_second_quantized_evolution() {
    // ⟨0|ψ̂(N′) e^{−iHτ} ψ̂†(N)|0⟩ with H = Σ E_{N′N} ψ̂†(N′)ψ̂(N)
    let one = FockSpace::new(1).unwrap();
    let q = build_quadratures(&one).unwrap();
    let l2 = LayerTwoSpace::new(&one, 2).unwrap();
    let e = q.energy().unwrap().dense_in(ModeBasis::Xyzn);
    let h = l2.second_quantize(&e).unwrap().to_dense();
    let (vals, vecs) = urfock::linalg::eigh(&h);
    let tau = 0.8;
    let ph = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&l| C64::new(0.0, -l * tau).exp()),
    ));
    let u2 = &vecs * ph * vecs.adjoint();
    let p = Propagator::new(&q, tau).unwrap();
    let sector: Vec<usize> = (0..one.dim()).filter(|&i| one.occ(i)[3] == 0).collect();
    let mut vac = vec![c(0.0); l2.dim()];
    vac[0] = c(1.0);
    let vac = nalgebra::DVector::from_vec(vac);
    let m = p.matrix().unwrap();
    for (r, &np) in sector.iter().enumerate() {
        let bra = l2.field(np, LadderKind::Create).unwrap().to_dense() * &vac;
        for (s, &n) in sector.iter().enumerate() {
            let ket = l2.field(n, LadderKind::Create).unwrap().to_dense() * &vac;
            let amp = (bra.adjoint() * &u2 * ket)[(0, 0)];
            assert!((amp - m[(r, s)]).norm() < 1e-10);
        }
    }
}

#[test]
fn quantizer_rules() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let s1 = random_state(&space, ModeBasis::Upper, &mut rng);
    let s2 = random_state(&space, ModeBasis::Upper, &mut rng);

    let id = quantize_expression("psi").unwrap().evaluate(&q, std::slice::from_ref(&s1)).unwrap();
    assert_eq!(id.amp, s1.amplitudes());

    for mu in 0..4 {
        let ev = quantize_expression(&format!("d{mu}(psi)")).unwrap().evaluate(&q, std::slice::from_ref(&s1)).unwrap();
        let want = apply_four_momentum(&q, &s1, mu).unwrap().scaled(C64::new(0.0, 1.0));
        assert!(ev.amp.iter().zip(want.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-14));
    }

    let pr = quantize_expression("psi * psi").unwrap().evaluate(&q, &[s1.clone(), s2.clone()]).unwrap();
    let want = interaction_apply(&Weight::Constant(c(1.0)), &[s1.clone(), s2.clone()]).unwrap();
    assert!(pr.max_abs_diff(&want) < 1e-15);

    // second derivatives compose: (i𝒫)(i𝒫) = −𝒫𝒫
    let dd = quantize_expression("d1(d2(psi))").unwrap().evaluate(&q, std::slice::from_ref(&s1)).unwrap();
    let want = apply_four_momentum(&q, &apply_four_momentum(&q, &s1, 2).unwrap(), 1).unwrap().scaled(c(-1.0));
    assert!(dd.amp.iter().zip(want.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-13));

    assert!(quantize_expression("d1(d2(d3(psi)))").is_err());
    assert!(quantize_expression("phi").is_err());
    assert!(quantize_expression("psi + psi*psi").is_err());
    assert!(quantize_expression("2*psi*d1(psi) - 0.5*d0(psi)*psi").is_ok());
}

#[test]
fn quantizer_is_multilinear() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let ev = quantize_expression("2*d1(psi)*psi - d0(psi)*d3(psi)").unwrap();
    let (a, b, c2) = (
        random_state(&space, ModeBasis::Upper, &mut rng),
        random_state(&space, ModeBasis::Upper, &mut rng),
        random_state(&space, ModeBasis::Upper, &mut rng),
    );
    let (x, y) = (C64::new(0.3, -1.1), C64::new(-0.7, 0.2));
    let mix = a.lincomb(x, &b, y).unwrap();
    let lhs = ev.evaluate(&q, &[mix, c2.clone()]).unwrap();
    let ra = ev.evaluate(&q, &[a, c2.clone()]).unwrap();
    let rb = ev.evaluate(&q, &[b, c2]).unwrap();
    for k in 0..lhs.amp.len() {
        assert!((lhs.amp[k] - (x * ra.amp[k] + y * rb.amp[k])).norm() < 1e-12);
    }
}

#[test]
fn equal_label_product_commutes_with_mode_permutations() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let s1 = random_state(&space, ModeBasis::Raw, &mut rng);
    let s2 = random_state(&space, ModeBasis::Raw, &mut rng);
    let perm = DMatrix::from_fn(4, 4, |r, cc| if cc == (r + 1) % 4 { c(1.0) } else { c(0.0) });
    let g = mode_transform(&space, &perm).unwrap();
    let ev = quantize_expression("psi*psi").unwrap();
    let out = ev.evaluate(&q, &[s1.clone(), s2.clone()]).unwrap();
    let moved = ev.evaluate(&q, &[g.apply(&s1).unwrap(), g.apply(&s2).unwrap()]).unwrap();
    let gg = g.matrix().kron(g.matrix());
    let want = gg.matvec(&out.amp);
    assert!(moved.amp.iter().zip(&want).all(|(a, b)| (a - b).norm() < 1e-12));
}

fn fermion(space: &Arc<FockSpace>, rng: &mut impl Rng) -> ExtendedState {
    let psi = random_state(space, ModeBasis::Upper, rng);
    let om = UrSpinor::new(0.6, 0.0, 0.0, 0.8);
    let (u, v) = (UrSpinor::new(0.6, 0.0, 0.0, 0.0), UrSpinor::new(0.0, 0.0, 0.0, 0.8));
    let g = build_internal(&om, &u, &v, SpinSlot::SpinFirst).unwrap();
    ExtendedState::product(&psi, &g)
}

#[test]
fn em_term_without_photon_is_minus_lambda() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = fermion(&space, &mut rng);
    let chi = MajoranaSpinor::pair(&UrSpinor::new(1.0, 0.0, 0.0, 0.0), &UrSpinor::new(0.0, 0.5, 0.5, 0.0));
    let photon = StateVector::zeros(&space, ModeBasis::Upper);
    let r = em_demo(&q, &photon, &chi, &f).unwrap();
    assert_eq!(r.coupling.norm(), 0.0);
    let lam = lambda_extended(&q, ModeBasis::Upper, SpinSlot::SpinFirst).unwrap();
    let want = lam.matvec(&f.amp);
    assert!(r.free.amp.iter().zip(&want).all(|(a, b)| (a + b).norm() < 1e-12));
}

#[test]
fn em_coupling_is_linear_and_diagonal() {
    let space = FockSpace::new(2).unwrap();
    let q = build_quadratures(&space).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let f = fermion(&space, &mut rng);
    let chi = MajoranaSpinor::pair(&UrSpinor::new(0.3, 0.1, -0.4, 0.2), &UrSpinor::new(0.0, 0.5, 0.5, 0.0));
    let (p1, p2) = (
        random_state(&space, ModeBasis::Upper, &mut rng),
        random_state(&space, ModeBasis::Upper, &mut rng),
    );
    let (x, y) = (C64::new(0.4, 0.2), C64::new(-1.0, 0.5));
    let r1 = em_demo(&q, &p1, &chi, &f).unwrap();
    let r2 = em_demo(&q, &p2, &chi, &f).unwrap();
    let r12 = em_demo(&q, &p1.lincomb(x, &p2, y).unwrap(), &chi, &f).unwrap();
    for k in 0..r12.coupling.amp.len() {
        assert!((r12.coupling.amp[k] - (x * r1.coupling.amp[k] + y * r2.coupling.amp[k])).norm() < 1e-12);
    }
    assert!(r1.coupling.norm() > 1e-3);
    let d = space.dim();
    for (k, z) in r1.coupling_full().iter().enumerate() {
        let (na, nd) = ((k / 8) / d, (k / 8) % d);
        if na != nd {
            assert_eq!(z.norm(), 0.0);
        }
    }
}
