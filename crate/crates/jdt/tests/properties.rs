//! Property tests for the algebraic core: contraction is an R-module action,
//! arithmetic is exact, printing round-trips, Hilbert functions are
//! symmetric, annihilator dimensions are complementary, the ideal and dual
//! paths agree, ranks are invariant under invertible scaling, and the
//! rank-matrix/JDT correspondence is a bijection.

use jdt::apolarity::{
    ann_graded_basis, catalecticant, hilbert_function, ideal_graded_basis, quotient_hilbert,
    ExactMatrix, GradedIdeal,
};
use jdt::combinatorics::{conjugate, symmetrize};
use jdt::field::{Field, FieldElem};
use jdt::jordan::{jdt_of_rank_matrix, rank_matrix_from_jdt, Jdt};
use jdt::poly::{contract, monomial_basis, parse_poly, Monomial, Poly, Side};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> Field {
    Field::Q
}

fn arb_monomial(deg: u32) -> impl Strategy<Value = Monomial> {
    (0..=deg)
        .prop_flat_map(move |a| (0..=deg - a).prop_map(move |b| Monomial::new(a, b, deg - a - b)))
}

fn arb_poly(side: Side, deg: u32) -> impl Strategy<Value = Poly> {
    proptest::collection::vec((arb_monomial(deg), -4i64..=4), 1..5)
        .prop_map(move |terms| {
            Poly::from_terms(
                q(),
                side,
                terms.into_iter().map(|(m, c)| (m, q().from_i64(c))),
            )
            .unwrap()
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #[test]
    fn contraction_is_a_module_action(
        h1 in arb_poly(Side::Ring, 2),
        h2 in arb_poly(Side::Ring, 1),
        f in arb_poly(Side::Dual, 5),
    ) {
        let lhs = contract(&h1.mul(&h2), &f);
        let rhs = contract(&h1, &contract(&h2, &f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_is_bilinear(
        h1 in arb_poly(Side::Ring, 2),
        h2 in arb_poly(Side::Ring, 2),
        f in arb_poly(Side::Dual, 6),
        g in arb_poly(Side::Dual, 6),
    ) {
        let sum_left = contract(&h1.add(&h2).unwrap(), &f);
        let split_left = contract(&h1, &f).add(&contract(&h2, &f)).unwrap();
        prop_assert_eq!(sum_left, split_left);
        let sum_right = contract(&h1, &f.add(&g).unwrap());
        let split_right = contract(&h1, &f).add(&contract(&h1, &g)).unwrap();
        prop_assert_eq!(sum_right, split_right);
    }

    #[test]
    fn rational_arithmetic_is_exact(
        n1 in -50i64..50, d1 in 1i64..20,
        n2 in -50i64..50, d2 in 1i64..20,
    ) {
        let k = q();
        let a = k.from_ratio(n1, d1);
        let b = k.from_ratio(n2, d2);
        prop_assert_eq!(k.sub(&k.add(&a, &b), &b), a);
    }

    #[test]
    fn parse_print_round_trip(f in arb_poly(Side::Dual, 6)) {
        let text = f.to_string();
        let back = parse_poly(&text, Side::Dual, q()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn hilbert_function_is_symmetric(f in arb_poly(Side::Dual, 6)) {
        let h = hilbert_function(&f).unwrap();
        let j = h.len() - 1;
        for d in 0..=j {
            prop_assert_eq!(h[d], h[j - d]);
        }
        prop_assert_eq!(h[0], 1);
    }

    #[test]
    fn annihilator_dimensions_complement(f in arb_poly(Side::Dual, 5)) {
        let h = hilbert_function(&f).unwrap();
        for d in 0..=5u32 {
            let ann = ann_graded_basis(&f, d).unwrap();
            prop_assert_eq!(ann.len() + h[d as usize], monomial_basis(d).len());
        }
    }

    #[test]
    fn symmetrize_and_conjugate(h0 in 1usize..5, h1 in 0usize..6, j in 2usize..8) {
        let h = vec![h0, h1, h0 + h1, h1, h0, h1, h0, h1, h0];
        let s = symmetrize(&h, j);
        for i in 0..=j {
            prop_assert_eq!(s[i], s[j - i]);
        }
        let s2 = symmetrize(&s, j);
        prop_assert_eq!(s2, s);

        let p: Vec<usize> = {
            let mut v = vec![h0 + h1 + 1, h0 + 1, 1];
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        prop_assert_eq!(conjugate(&conjugate(&p)), p);
    }
}

/// The ideal assembled from the graded annihilator pieces defines the same
/// Hilbert function as the dual path.
#[test]
fn ideal_path_matches_dual_path_on_random_duals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0A11);
    for _ in 0..12 {
        let deg = rng.gen_range(2..=6u32);
        let f = loop {
            let terms: Vec<(Monomial, FieldElem)> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let a = rng.gen_range(0..=deg);
                    let b = rng.gen_range(0..=deg - a);
                    (
                        Monomial::new(a, b, deg - a - b),
                        q().from_i64(rng.gen_range(-2..=2)),
                    )
                })
                .collect();
            let f = Poly::from_terms(q(), Side::Dual, terms).unwrap();
            if !f.is_zero() {
                break f;
            }
        };
        let mut gens = Vec::new();
        for d in 1..=deg + 1 {
            gens.extend(ann_graded_basis(&f, d).unwrap());
        }
        let ideal = GradedIdeal::new(gens, deg + 1).unwrap();
        assert_eq!(
            quotient_hilbert(&ideal, deg),
            hilbert_function(&f).unwrap(),
            "F = {}",
            f
        );
    }
}

/// Rank by fraction-free elimination is invariant under random invertible
/// row/column scaling (elimination-order independence).
#[test]
fn rank_invariant_under_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5CA1E);
    let f = parse_poly("X^4+X^2Z^2+XY^3", Side::Dual, q()).unwrap();
    for d in 0..=4u32 {
        let m = catalecticant(&f, d).unwrap();
        let mut scaled = ExactMatrix::zeros(q(), m.rows(), m.cols());
        let row_scales: Vec<i64> = (0..m.rows()).map(|_| rng.gen_range(1..=7)).collect();
        let col_scales: Vec<i64> = (0..m.cols()).map(|_| rng.gen_range(1..=7)).collect();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let s = q().from_ratio(row_scales[r], col_scales[c]);
                scaled.set(r, c, q().mul(m.get(r, c), &s));
            }
        }
        assert_eq!(m.rank(), scaled.rank());
        assert_eq!(m.rank(), m.rref().rank());
    }
}

/// 200 random JDTs round-trip through the rank matrix and back.
#[test]
fn rank_matrix_jdt_round_trip_on_random_jdts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2D7);
    for _ in 0..200 {
        let j = rng.gen_range(2..=9usize);
        let n_parts = rng.gen_range(1..=6usize);
        let parts: Vec<(usize, usize)> = (0..n_parts)
            .map(|_| {
                let nu = rng.gen_range(0..=j);
                let p = rng.gen_range(1..=j + 1 - nu);
                (p, nu)
            })
            .collect();
        let jdt = Jdt::new(parts);
        let m = rank_matrix_from_jdt(&jdt, j);
        assert_eq!(jdt_of_rank_matrix(&m).unwrap(), jdt);
    }
}

/// Echelonized ideal pieces are genuinely inside the ideal: every basis
/// element of a product degree reduces to zero against the next piece's
/// spanning set.
#[test]
fn ideal_pieces_are_nested() {
    let gens = vec![
        parse_poly("xy-yz", Side::Ring, q()).unwrap(),
        parse_poly("x^3-z^3", Side::Ring, q()).unwrap(),
    ];
    let ideal = GradedIdeal::new(gens, 6).unwrap();
    for d in 2..=5u32 {
        let lower = ideal_graded_basis(&ideal, d);
        let upper = ideal.piece(d + 1);
        for b in &lower {
            for v in ["x", "y", "z"] {
                let prod = b.mul(&parse_poly(v, Side::Ring, q()).unwrap());
                assert!(upper.contains(&prod.coeff_vector(d + 1)));
            }
        }
    }
}
