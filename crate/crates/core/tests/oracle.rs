use permrdm::exact::{integer, is_positive_semidefinite, rational, rational_rank};
use permrdm::oracle::{
    asymm_pair_matrix, brute_rdm, decomposition_rhs, decomposition_term_check, partial_trace, sigma_checks,
    sigma_matrix, subset_rdm, young_state, OracleCaps,
};
use permrdm::rdm::{assemble_matrix, AssemblyCaps, RdmQuery, SystemSpec};
use permrdm::spectrum::eigenvalue;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;

/// The whole-system mixture is permutation invariant, so its marginal on any
/// fixed ordered subset equals the subset-averaged trace.
#[test]
fn single_subset_matches_average() {
    let spec = SystemSpec::new(8, 4, 2);
    let caps = OracleCaps {
        sigma_sites: 8,
        ..OracleCaps::default()
    };
    let averaged = brute_rdm(&RdmQuery::new(spec.clone(), 3).unwrap(), &caps).unwrap();
    let sigma = sigma_matrix(&spec, &caps).unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let sites = sample(&mut rng, 8, 3).into_vec();
        assert_eq!(partial_trace(&sigma, 8, &sites).unwrap(), averaged, "{sites:?}");
    }
}

/// A single representative state is not permutation invariant once it holds
/// singlets; only its symmetric-sector members have subset-independent marginals.
#[test]
fn representative_state_marginals() {
    let caps = OracleCaps::default();
    let dicke = young_state(&SystemSpec::new(8, 3, 0), 16).unwrap();
    let averaged = brute_rdm(&RdmQuery::of(8, 3, 0, 3).unwrap(), &caps).unwrap();
    assert_eq!(subset_rdm(&dicke, &[0, 4, 7]).unwrap(), averaged);

    let paired = young_state(&SystemSpec::new(8, 4, 2), 16).unwrap();
    assert_ne!(
        subset_rdm(&paired, &[0, 1, 4]).unwrap(),
        subset_rdm(&paired, &[0, 2, 4]).unwrap()
    );
}

#[test]
fn brute_force_rdm_is_a_density_matrix() {
    let caps = OracleCaps::default();
    for spec in SystemSpec::enumerate(8) {
        for n in 1..=spec.sites.min(4) {
            let m = brute_rdm(&RdmQuery::new(spec.clone(), n).unwrap(), &caps).unwrap();
            assert!(m.is_symmetric(), "{spec:?} n={n}");
            assert_eq!(m.trace(), integer(1));
            assert!(m.obeys_ice_rule());
            for k in 0..=n {
                assert!(
                    is_positive_semidefinite(&m.block(k).unwrap().matrix),
                    "{spec:?} n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn closed_form_equals_brute_force_small() {
    let caps = OracleCaps::default();
    for spec in SystemSpec::enumerate(7) {
        for n in 1..=spec.sites.min(4) {
            let q = RdmQuery::new(spec.clone(), n).unwrap();
            assert_eq!(
                assemble_matrix(&q, AssemblyCaps::default()).unwrap(),
                brute_rdm(&q, &caps).unwrap(),
                "{spec:?} n={n}"
            );
        }
    }
}

#[test]
fn asymm_pair_is_singlet_projector() {
    let a = asymm_pair_matrix();
    let singlet = brute_rdm(&RdmQuery::of(2, 1, 1, 2).unwrap(), &OracleCaps::default()).unwrap();
    assert_eq!(singlet.matrix(), &a);
}

#[test]
fn decomposition_examples() {
    let caps = OracleCaps::default();
    for (l, n_up, r, n) in [(4, 2, 1, 2), (6, 3, 1, 2), (8, 4, 2, 3), (10, 5, 3, 4)] {
        let report = decomposition_term_check(&SystemSpec::new(l, n_up, r), n, &caps).unwrap();
        assert!(report.passed(), "{report:?}");
    }
    let (_, terms) = decomposition_rhs(&RdmQuery::of(8, 3, 0, 4).unwrap()).unwrap();
    assert_eq!(terms.len(), 1);
}

#[test]
fn sigma_ranks() {
    let caps = OracleCaps::default();
    for (l, n_up, r, rank) in [(2, 1, 1, 1), (4, 2, 1, 3), (4, 2, 2, 2), (6, 3, 2, 9), (5, 2, 0, 1)] {
        let report = sigma_checks(&SystemSpec::new(l, n_up, r), &caps).unwrap();
        assert!(report.passed(), "{report:?}");
        let detail = &report.get("rank_equals_degeneracy").unwrap().detail;
        assert!(detail.starts_with(&format!("rank = {rank},")), "{detail}");
    }
}

#[test]
fn last_block_eigenspace_at_half_filling() {
    let q = RdmQuery::of(12, 6, 3, 6).unwrap();
    let block = permrdm::rdm::assemble_block(&q, 1).unwrap();
    let lambda = eigenvalue(&q, 1, 1).unwrap();
    assert_eq!(lambda, rational(5, 924));
    // nullity 5 in a 6-dimensional block
    assert_eq!(rational_rank(&block.matrix.shift_diagonal(&lambda)), 1);
}
