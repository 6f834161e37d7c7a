//! Property tests for the structural laws the engine is built on:
//! functoriality of the normal-form action, representability of simplices,
//! the skeleton/coskeleton adjunction, and homotopy being an equivalence
//! relation on maps into a Kan target.

use proptest::prelude::*;
use skan_core::invariants::{homotopic, pi0};
use skan_core::sset::homs::hom_set;
use skan_core::sset::standard::{boundary_simplex, circle_min, simplex, skeleton};
use skan_core::sset::trunc::coskeleton;
use skan_core::sset::{Cell, GenId, Ss};

/// A weakly monotone map [m] -> [n] built from m+1 raw picks.
fn monotone_from(picks: &[prop::sample::Index], m: usize, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..=m).map(|i| picks[i].index(n + 1)).collect();
    v.sort_unstable();
    v
}

fn test_complexes() -> Vec<Ss> {
    vec![simplex(2), boundary_simplex(2), circle_min(), simplex(3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// X(alpha . beta) = X(beta) . X(alpha): the contravariant action of
    /// monotone maps on cells composes in the reversed order.
    #[test]
    fn monotone_action_is_contravariant(
        which in 0usize..4,
        dims in (0usize..=3, 0usize..=3, 0usize..=3),
        alpha_picks in prop::collection::vec(any::<prop::sample::Index>(), 4),
        beta_picks in prop::collection::vec(any::<prop::sample::Index>(), 4),
        z_pick in any::<prop::sample::Index>(),
    ) {
        let x = &test_complexes()[which];
        let (a, b, c) = dims;
        let alpha = monotone_from(&alpha_picks, b, c);
        let beta = monotone_from(&beta_picks, a, b);
        let cells = x.cells(c).unwrap();
        let z = cells[z_pick.index(cells.len())].clone();
        let composite: Vec<usize> = beta.iter().map(|&i| alpha[i]).collect();
        let lhs = x.apply_monotone(&z, &composite);
        let rhs = x.apply_monotone(&x.apply_monotone(&z, &alpha), &beta);
        prop_assert_eq!(lhs, rhs);
    }

    /// Simplices represent cells: |hom(Delta[n], X)| = |X_n|.
    #[test]
    fn simplices_represent_cells(which in 0usize..4, n in 0usize..=3) {
        let x = &test_complexes()[which];
        let maps = hom_set(&simplex(n), x).unwrap();
        prop_assert_eq!(maps.len(), x.cell_count(n).unwrap());
        // And the maps are exactly "evaluate at the top cell", bijectively.
        let mut images: Vec<Cell> = maps
            .iter()
            .map(|f| f.eval(&Cell::of_gen(GenId { dim: n, idx: 0 })))
            .collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), maps.len());
    }

    /// Skeleton is left adjoint to coskeleton on hom-counts:
    /// |hom(sk_n K, X)| = |hom(K, cosk_n X)|.
    #[test]
    fn skeleton_coskeleton_adjunction(
        which in 0usize..3,
        n in 1usize..=2,
        k in 1usize..=3,
    ) {
        let x = &test_complexes()[which];
        let key = simplex(k);
        let (sk, _) = skeleton(&key, n).unwrap();
        let lhs = hom_set(&sk, x).unwrap().len();
        let cosk = coskeleton(x, n, k).unwrap();
        let rhs = hom_set(&key, &cosk).unwrap().len();
        prop_assert_eq!(lhs, rhs);
    }

    /// Faces of a degenerate cell follow the simplicial identities: pushing
    /// d_i through s_j agrees with the identity-by-identity expansion.
    #[test]
    fn faces_commute_with_degeneracies(
        which in 0usize..4,
        dim in 0usize..=2,
        j_pick in any::<prop::sample::Index>(),
        i_pick in any::<prop::sample::Index>(),
        z_pick in any::<prop::sample::Index>(),
    ) {
        let x = &test_complexes()[which];
        let cells = x.cells(dim).unwrap();
        let z = cells[z_pick.index(cells.len())].clone();
        let j = j_pick.index(dim + 1);
        let i = i_pick.index(dim + 2);
        let sz = z.degenerate(j);
        let lhs = x.face(&sz, i);
        let rhs = if i < j {
            x.face(&z, i).degenerate(j - 1)
        } else if i == j || i == j + 1 {
            z.clone()
        } else {
            x.face(&z, i - 1).degenerate(j)
        };
        prop_assert_eq!(lhs, rhs);
    }
}

/// Homotopy of maps into a Kan target is symmetric and transitive on a
/// concrete sample: vertices of a 2-coskeletal point-like target.
#[test]
fn homotopy_is_an_equivalence_on_a_sample() {
    let pt = simplex(0);
    let d2 = simplex(2);
    let maps = hom_set(&pt, &d2).unwrap();
    assert_eq!(maps.len(), 3);
    for f in &maps {
        assert!(homotopic(&pt, &d2, f, f).unwrap());
        for g in &maps {
            let fg = homotopic(&pt, &d2, f, g).unwrap();
            let gf = homotopic(&pt, &d2, g, f).unwrap();
            assert_eq!(fg, gf);
            for h in &maps {
                let gh = homotopic(&pt, &d2, g, h).unwrap();
                let fh = homotopic(&pt, &d2, f, h).unwrap();
                if fg && gh {
                    assert!(fh);
                }
            }
        }
    }
    // Sanity: all three vertices of a simplex are connected.
    assert_eq!(pi0(&d2).unwrap().count(), 1);
}
