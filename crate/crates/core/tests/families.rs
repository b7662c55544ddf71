//! Named constructions and their documented structure.

#[path = "support/naive.rs"]
mod naive;

use moonlab_core::{
    analyze, are_isomorphic, build_extremal, build_extremal_minus, build_hatted,
    build_path_extremal, build_transitive, cycle_counts, cycle_counts_through, cyclic_triple,
    diameter, distance, hamiltonian_path_count, is_strong, is_vertex_pancyclic,
    strong_components, Distance, HatKind, Tournament, VertexSet,
};

fn iso(a: &Tournament, b: &Tournament) -> bool {
    are_isomorphic(a, b).unwrap()
}

fn delta_of(parts: [Tournament; 3]) -> Tournament {
    cyclic_triple().compose(&parts).unwrap()
}

fn single() -> Tournament {
    build_transitive(1).unwrap()
}

#[test]
fn transitive_tournaments() {
    assert_eq!(build_transitive(1).unwrap().arc_count(), 0);
    assert_eq!(build_transitive(4).unwrap().out_degrees(), vec![3, 2, 1, 0]);
    assert!(cycle_counts(&build_transitive(5).unwrap()).unwrap().is_acyclic());
    assert!(!is_strong(&build_transitive(3).unwrap()));
    let tt = build_transitive(6).unwrap();
    assert_eq!(hamiltonian_path_count(&tt).unwrap(), 1);
    assert!(iso(&tt.converse(), &tt));
    let comps = strong_components(&tt);
    assert_eq!(comps, (0..6).map(VertexSet::singleton).collect::<Vec<_>>());
}

#[test]
fn path_extremal_shape() {
    assert_eq!(build_path_extremal(3).unwrap(), cyclic_triple());
    assert_eq!(build_path_extremal(2).unwrap(), build_transitive(2).unwrap());
    assert_eq!(build_path_extremal(1).unwrap(), build_transitive(1).unwrap());
    assert_eq!(build_path_extremal(6).unwrap().out_degrees(), vec![1, 1, 2, 3, 4, 4]);
    for n in 4..=12 {
        let t = build_path_extremal(n).unwrap();
        let r = analyze(&t);
        assert_eq!(r.diameter, Some(n - 1));
        assert_eq!(r.non_critical.to_vec(), vec![0, n - 1]);
        assert_eq!(distance(&t, 0, n - 1), Distance::Finite(n - 1));
        let reduced = t.delete_vertex(0).unwrap();
        assert!(iso(&reduced, &build_path_extremal(n - 1).unwrap()));
        assert!(iso(&t.delete_vertex(n - 1).unwrap(), &reduced));
        for w in [0, n - 1] {
            let through = cycle_counts_through(&t, w).unwrap();
            assert!(through[3..].iter().all(|&x| x == 1), "order {n}");
        }
    }
    let c = cycle_counts(&build_path_extremal(6).unwrap()).unwrap();
    assert_eq!(&c.c[3..], &[4, 3, 2, 1]);
    assert!(is_vertex_pancyclic(&build_path_extremal(6).unwrap()).unwrap());
}

#[test]
fn composition_examples() {
    let tt2 = build_transitive(2).unwrap();
    let t = delta_of([single(), single(), tt2]);
    assert_eq!(t.order(), 4);
    assert!(is_strong(&t));
    assert_eq!(analyze(&t).non_critical.to_vec(), vec![2, 3]);
    assert_eq!(delta_of([single(), single(), single()]), cyclic_triple());
    let t = build_path_extremal(7).unwrap();
    assert_eq!(single().compose(std::slice::from_ref(&t)).unwrap(), t);
    assert!(cyclic_triple().compose(&[single()]).is_err());

    // Two blocks under a transitive outer tournament stay separate components.
    let a = cyclic_triple();
    let b = build_path_extremal(4).unwrap();
    let joined = build_transitive(2).unwrap().compose(&[a, b]).unwrap();
    let comps = strong_components(&joined);
    assert_eq!(comps, vec![VertexSet(0b111), VertexSet(0b1111000)]);
}

#[test]
fn diameter_three_extremal_is_a_blown_up_triple() {
    for n in 5..=9 {
        let blown = delta_of([single(), single(), build_transitive(n - 2).unwrap()]);
        assert!(iso(&build_extremal(3, n).unwrap(), &blown));
        assert!(iso(&build_extremal_minus(3, n).unwrap(), &blown));
    }
    // Three-circuits of T_{3,6}, counted directly over vertex triples.
    let t = build_extremal(3, 6).unwrap();
    let mut triples = 0;
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let cyc = (t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a))
                    || (t.has_arc(a, c) && t.has_arc(c, b) && t.has_arc(b, a));
                triples += cyc as u64;
            }
        }
    }
    assert_eq!(triples, 4);
    assert_eq!(cycle_counts(&t).unwrap().c(3), 4);
}

#[test]
fn extremal_family_structure() {
    for n in 4..=12 {
        for d in 3..n {
            let t = build_extremal(d, n).unwrap();
            let minus = build_extremal_minus(d, n).unwrap();
            assert_eq!(t.order(), n);
            assert_eq!(diameter(&t), Some(d), "T_{{{d},{n}}}");
            assert_eq!(diameter(&minus), Some(d));
            assert!(iso(&minus, &t.converse()));
            let m = n - d + 1;
            if m % 2 == 0 {
                assert_eq!(minus, t);
            } else if d > 3 {
                assert!(!iso(&minus, &t), "d={d} n={n}");
            }
        }
        assert_eq!(build_extremal(n - 1, n).unwrap(), build_path_extremal(n).unwrap());
    }
    assert!(build_extremal(2, 5).is_err());
    assert!(build_extremal(5, 5).is_err());
    assert!(iso(&build_extremal(5, 8).unwrap(), &build_extremal(5, 8).unwrap().converse()));
    assert!(!iso(&build_extremal(4, 8).unwrap(), &build_extremal(4, 8).unwrap().converse()));
}

#[test]
fn extremal_six_nine_counts() {
    let c = cycle_counts(&build_extremal(6, 9).unwrap()).unwrap();
    assert_eq!((c.c(6), c.c(7), c.c(8), c.c(9)), (6, 6, 4, 1));
    assert_eq!(c.c, naive::cycle_counts(&build_extremal(6, 9).unwrap()));
}

#[test]
fn hatted_tournaments() {
    for n in 5..=11 {
        let right = build_hatted(HatKind::Right, n).unwrap();
        let left = build_hatted(HatKind::Left, n).unwrap();
        assert_eq!(right, build_path_extremal(n).unwrap().flip_arc(n - 1, n - 3).unwrap());
        assert!(iso(&right, &build_extremal(n - 2, n).unwrap()));
        assert!(iso(&left, &build_extremal_minus(n - 2, n).unwrap()));
        assert!(iso(&left, &right.converse()));
        if n >= 6 {
            let both = build_hatted(HatKind::Both, n).unwrap();
            assert!(iso(&both, &build_extremal(n - 3, n).unwrap()));
        }
        // Exactly one vertex sits at distance n-2 from two others.
        let r = analyze(&right);
        let far: Vec<usize> = (0..n)
            .filter(|&x| r.dist[x].iter().filter(|d| **d == Distance::Finite(n - 2)).count() == 2)
            .collect();
        assert_eq!(far.len(), 1, "order {n}");
    }
    assert!(build_hatted(HatKind::Right, 4).is_err());
    assert!(build_hatted(HatKind::Both, 5).is_err());
}

#[test]
fn reversing_the_closing_arc_keeps_both_deletions() {
    for n in 5..=10 {
        let t = build_path_extremal(n).unwrap().flip_arc(n - 1, 0).unwrap();
        let target = build_path_extremal(n - 1).unwrap();
        assert!(iso(&t.delete_vertex(0).unwrap(), &target));
        assert!(iso(&t.delete_vertex(n - 1).unwrap(), &target));
    }
}

#[test]
fn converse_and_flip_basics() {
    let t = build_extremal(6, 9).unwrap();
    assert_eq!(t.converse().converse(), t);
    assert_eq!(t.flip_arc(2, 5).unwrap().flip_arc(2, 5).unwrap(), t);
    assert!(t.flip_arc(3, 3).is_err());
    assert!(t.flip_arc(3, 9).is_err());
    assert_eq!(t.induced(VertexSet::all(9)).unwrap(), t);
    assert_eq!(t.induced(VertexSet::singleton(4)).unwrap().order(), 1);
    assert!(t.induced(VertexSet::EMPTY).is_err());
    assert!(iso(&t.converse(), &build_extremal_minus(6, 9).unwrap()));
}

#[test]
fn small_hamiltonian_path_counts() {
    assert_eq!(hamiltonian_path_count(&cyclic_triple()).unwrap(), 3);
    assert_eq!(naive::hamiltonian_paths(&cyclic_triple()), 3);
    assert!(is_vertex_pancyclic(&cyclic_triple()).unwrap());
    assert!(is_vertex_pancyclic(&build_transitive(4).unwrap()).is_err());
}
