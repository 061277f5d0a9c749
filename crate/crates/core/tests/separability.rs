use gdis_core::{
    direct_sum, disentangle, linalg::min_eigenvalue, ppt_test, quantum_condition_check,
    random_covariance, random_orthosymplectic, random_symplectic, rotate_state,
    symplectic_eigenvalues, werner_wolf_check, CovarianceMatrix, GaussianState, Matrix,
    ModePartition, PptVerdict, DEFAULT_TOL,
};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = ModePartition> {
    (1usize..=3, 1usize..=3).prop_map(|(a, b)| ModePartition::new(a, b).unwrap())
}

fn hbar() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.5), Just(1.0), Just(2.0)]
}

fn state() -> impl Strategy<Value = CovarianceMatrix> {
    (partition(), hbar(), any::<u64>(), 0.0f64..1.5, 0.0f64..2.0)
        .prop_map(|(p, h, seed, r, mix)| random_covariance(p, h, seed, r, mix).unwrap())
}

fn pure_state() -> impl Strategy<Value = CovarianceMatrix> {
    (partition(), hbar(), any::<u64>(), 0.0f64..1.5).prop_map(|(p, h, seed, r)| {
        let s = random_symplectic(p.modes(), r, seed);
        CovarianceMatrix::new(&s * s.transpose() * (h / 2.0), h, p).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotated_state_is_certified(cov in state()) {
        let res = disentangle(&cov, DEFAULT_TOL).unwrap();
        let again = werner_wolf_check(&res.sigma_u, &res.witness, DEFAULT_TOL).unwrap();
        prop_assert!(again.pass, "{again}");
        prop_assert!(res.residual("rotation_u_symplectic").unwrap() < 1e-10);
        prop_assert!(res.residual("rotation_u_orthogonal").unwrap() < 1e-10);
    }

    #[test]
    fn rotated_state_dominates_the_squeezing_bound(cov in state()) {
        let res = disentangle(&cov, DEFAULT_TOL).unwrap();
        let gap = res.sigma_u.sigma() - res.witness.joined();
        prop_assert!(min_eigenvalue(&gap) >= -1e-10 * cov.norm());
    }

    #[test]
    fn witness_is_a_pure_product(cov in state()) {
        let res = disentangle(&cov, DEFAULT_TOL).unwrap();
        let h = cov.hbar();
        let joined = CovarianceMatrix::new(res.witness.joined(), h, cov.partition()).unwrap();
        for nu in symplectic_eigenvalues(&joined).unwrap() {
            prop_assert!((nu - h / 2.0).abs() < 1e-9 * (1.0 + nu));
        }
        prop_assert_eq!(res.witness.sigma_a.nrows(), 2 * cov.partition().n_a());
        prop_assert_eq!(res.witness.sigma_b.nrows(), 2 * cov.partition().n_b());
    }

    #[test]
    fn pure_states_rotate_onto_their_witness(cov in pure_state()) {
        let res = disentangle(&cov, DEFAULT_TOL).unwrap();
        let diff = (res.sigma_u.sigma() - res.witness.joined()).norm();
        prop_assert!(diff < 1e-9 * cov.norm(), "diff {diff:e}");
    }

    #[test]
    fn rotation_preserves_the_quantum_margin(cov in state(), seed in any::<u64>()) {
        let u = random_orthosymplectic(cov.modes(), seed);
        let state = GaussianState::centered(cov.clone()).unwrap();
        let rotated = rotate_state(&state, &u, DEFAULT_TOL).unwrap();
        let before = quantum_condition_check(&cov, DEFAULT_TOL);
        let after = quantum_condition_check(rotated.cov(), DEFAULT_TOL);
        prop_assert!(before.pass && after.pass);
        prop_assert!((before.margin - after.margin).abs() < 1e-9 * cov.norm());
    }

    #[test]
    fn rotated_state_passes_ppt(cov in state()) {
        let res = disentangle(&cov, DEFAULT_TOL).unwrap();
        let report = ppt_test(&res.sigma_u, DEFAULT_TOL);
        prop_assert_ne!(report.verdict, PptVerdict::Entangled);
    }

    #[test]
    fn separable_inputs_are_not_flagged(p in partition(), h in hbar(), sa in any::<u64>(), sb in any::<u64>()) {
        let a = random_covariance(ModePartition::new(p.n_a(), 1).unwrap(), h, sa, 1.0, 1.0).unwrap();
        let b = random_covariance(ModePartition::new(p.n_b(), 1).unwrap(), h, sb, 1.0, 1.0).unwrap();
        let take = |c: &CovarianceMatrix, n: usize| c.sigma().view((0, 0), (2 * n, 2 * n)).into_owned();
        let product = CovarianceMatrix::new(direct_sum(&take(&a, p.n_a()), &take(&b, p.n_b())), h, p).unwrap();
        prop_assert_ne!(ppt_test(&product, DEFAULT_TOL).verdict, PptVerdict::Entangled);
    }
}

#[test]
fn squeezed_pairs_become_products() {
    let h = 1.0;
    let p = ModePartition::new(1, 1).unwrap();
    for r in [0.25, 0.5, 1.0, 2.0] {
        let (c, s) = ((2.0f64 * r).cosh() * h / 2.0, (2.0f64 * r).sinh() * h / 2.0);
        let sigma = Matrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, s, 0.0, 0.0, c, 0.0, -s, s, 0.0, c, 0.0, 0.0, -s, 0.0, c,
            ],
        );
        let cov = CovarianceMatrix::new(sigma, h, p).unwrap();
        assert_eq!(ppt_test(&cov, DEFAULT_TOL).verdict, PptVerdict::Entangled);
        let res = disentangle(&cov, DEFAULT_TOL).unwrap();
        for l in &res.lambdas {
            assert!((l - r.exp()).abs() < 1e-9 * r.exp(), "r = {r}: {l}");
        }
        let off = res.sigma_u.sigma().view((0, 2), (2, 2)).norm();
        assert!(off < 1e-9 * cov.norm(), "r = {r}: cross block {off:e}");
    }
}
