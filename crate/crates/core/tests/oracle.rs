//! Library kernels against the slow reference implementations in `support`.

#[path = "support/naive.rs"]
mod naive;

use moonlab_core::{
    canonical_form, cycle_counts, cycle_counts_through, diameter, hamiltonian_path_count,
    is_strong, strong_sub_counts, Tournament,
};

fn all_labeled(n: usize) -> impl Iterator<Item = Tournament> {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).map(move |code| naive::labeled(n, code))
}

#[test]
fn circuit_counts_match_dfs_on_every_labeled_tournament_up_to_order_6() {
    for n in 1..=6 {
        for t in all_labeled(n) {
            assert_eq!(cycle_counts(&t).unwrap().c, naive::cycle_counts(&t), "{t:?}");
        }
    }
}

#[test]
fn circuit_counts_match_dfs_on_random_tournaments() {
    for n in 7..=11 {
        for seed in 0..200 {
            let t = naive::random(n, seed * 31 + n as u64);
            assert_eq!(cycle_counts(&t).unwrap().c, naive::cycle_counts(&t));
        }
    }
}

#[test]
fn per_vertex_counts_match_dfs() {
    for seed in 0..100 {
        let t = naive::random(8, seed);
        for w in 0..8 {
            assert_eq!(cycle_counts_through(&t, w).unwrap(), naive::cycles_through(&t, w));
        }
    }
}

#[test]
fn hamiltonian_paths_match_permutation_count() {
    for n in 1..=5 {
        for t in all_labeled(n) {
            assert_eq!(hamiltonian_path_count(&t).unwrap(), naive::hamiltonian_paths(&t));
        }
    }
    for seed in 0..30 {
        let t = naive::random(7, seed);
        assert_eq!(hamiltonian_path_count(&t).unwrap(), naive::hamiltonian_paths(&t));
    }
}

#[test]
fn strong_subsets_match_closure_scan() {
    for t in all_labeled(5) {
        assert_eq!(strong_sub_counts(&t).unwrap(), naive::strong_subsets(&t));
    }
    for seed in 0..50 {
        let t = naive::random(9, seed);
        assert_eq!(strong_sub_counts(&t).unwrap(), naive::strong_subsets(&t));
    }
}

#[test]
fn strong_and_diameter_match_bfs() {
    for n in 1..=6 {
        for t in all_labeled(n) {
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(is_strong(&t), naive::is_strong_on(&t, &all));
            assert_eq!(diameter(&t), naive::diameter(&t));
        }
    }
}

#[test]
fn canonical_form_matches_permutation_minimum() {
    for n in 1..=5 {
        for t in all_labeled(n) {
            assert_eq!(canonical_form(&t).unwrap().bit_string(), naive::canonical_string(&t));
        }
    }
    for seed in 0..40 {
        let t = naive::random(7, seed);
        assert_eq!(canonical_form(&t).unwrap().bit_string(), naive::canonical_string(&t));
    }
}
