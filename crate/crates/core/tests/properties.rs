mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::*;
use vkh::code::random::{random_diagram, random_r1, random_r2, rng};
use vkh::homology::{homology, homology_over_field, invariant_factors, rank_mod_p, smith_normal_form, Field, SparseMatrix};
use vkh::khovanov::{build_complex_with, BuildOptions};
use vkh::{bracket, build_complex, Atom, Ring, VirtualLinkDiagram};

fn diagram(seed: u64, max_n: usize) -> VirtualLinkDiagram {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    random_diagram(&mut r, n, 2)
}

/// Fraction-free determinant.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_decomposition_holds(rows in small_matrix()) {
        let cols = rows.first().map_or(0, Vec::len);
        let a = SparseMatrix::from_triplets(rows.len(), cols, rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))));
        let s = smith_normal_form(&a);
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let uav = matmul(&matmul(&s.u, &big, rows.len(), cols), &s.v, cols, cols);
        prop_assert_eq!(uav, s.d_matrix());
        prop_assert!(det(&s.u).abs().is_one());
        prop_assert!(det(&s.v).abs().is_one());
        for w in s.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        // the sparse path and the dense oracle agree
        let fast = invariant_factors(&a);
        prop_assert_eq!(fast.rank, s.rank());
        let oracle: Vec<BigInt> = common::invariant_factors(rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect())
            .into_iter().map(BigInt::from).collect();
        prop_assert_eq!(&s.diagonal, &oracle);
        prop_assert_eq!(rank_mod_p(&a, 2), rank_mod2(&rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect::<Vec<_>>()));
    }

    #[test]
    fn boundary_squares_to_zero_and_counts_the_bracket(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        let c = build_complex_with(&d, &BuildOptions { check: false, ..BuildOptions::default() }).unwrap();
        prop_assert!(c.d_squared_defects().is_empty());
        let hat = bracket::jones_hat(&d).unwrap();
        prop_assert_eq!(c.euler_characteristic().unwrap(), hat.clone());
        let t = homology(&c).unwrap();
        prop_assert_eq!(t.euler_characteristic().unwrap(), hat);
    }

    #[test]
    fn universal_coefficients(seed in any::<u64>()) {
        let d = diagram(seed, 5);
        let c = build_complex(&d, Ring::Z).unwrap();
        let t = homology(&c).unwrap();
        for p in [2, 3, 5] {
            prop_assert_eq!(homology_over_field(&c, Field::Gf(p)).unwrap().betti(), t.predicted_mod_p(p));
        }
        prop_assert_eq!(homology_over_field(&c, Field::Q).unwrap().betti(), t.betti());
    }

    #[test]
    fn invariance_under_moves_and_virtualization(seed in any::<u64>()) {
        let d = diagram(seed, 4);
        let t = homology(&build_complex(&d, Ring::Z).unwrap()).unwrap();
        let mut r = rng(seed ^ 0x5eed);
        for e in [random_r1(&mut r, &d), random_r2(&mut r, &d)] {
            prop_assert!(homology(&build_complex(&e, Ring::Z).unwrap()).unwrap().same_groups(&t));
        }
        let c = r.gen_range(0..d.crossing_count());
        let v = d.virtualize(c).unwrap();
        prop_assert!(homology(&build_complex(&v, Ring::Z).unwrap()).unwrap().same_groups(&t));
        prop_assert_eq!(Atom::build(&v).unwrap(), Atom::build(&d).unwrap());
        prop_assert!(v.virtualize(c).unwrap().canonically_equal(&d));
    }

    #[test]
    fn codes_round_trip(seed in any::<u64>()) {
        let d = diagram(seed, 8);
        let back = VirtualLinkDiagram::parse(&d.serialize()).unwrap();
        prop_assert!(back.canonically_equal(&d));
        prop_assert_eq!(VirtualLinkDiagram::parse(&back.serialize()).unwrap().serialize(), back.serialize());
        prop_assert_eq!(poly_of(&bracket::kauffman_bracket(&d).unwrap()), poly_of(&bracket::bracket_by_skein(&d)));
    }

    #[test]
    fn orientable_atoms_have_no_one_to_one_edges(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        let n = d.crossing_count();
        let single = (0..1u64 << n).any(|s| (0..n).filter(|&k| s >> k & 1 == 0).any(|k| {
            vkh::state::cube_edge(&d, vkh::State(s), k).unwrap().kind == vkh::state::BifurcationKind::Single11
        }));
        prop_assert_eq!(Atom::build(&d).unwrap().orientable(), !single);
    }
}
