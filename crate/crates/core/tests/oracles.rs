use peterson::oracle::{
    classical_product, quantum_product_fl, quantum_product_gr, quantum_product_gr_pieri, FlTable, GrTable,
};
use peterson::perms::{all_permutations, DegreeVector, Permutation};
use peterson::shapes::{part, Partition, RectContext};
use peterson::verify::contexts_up_to;

#[test]
fn rim_hook_and_pieri_agree() {
    for ctx in contexts_up_to(6) {
        let shapes = ctx.partitions();
        for a in &shapes {
            for b in &shapes {
                let rim = quantum_product_gr(a, b, ctx).unwrap();
                assert_eq!(rim, quantum_product_gr_pieri(a, b, ctx).unwrap(), "{ctx}: {a} * {b}");
                assert!(rim.iter().all(|(_, &c)| c > 0), "{ctx}: {a} * {b} has a negative term");
                for ((nu, d), _) in rim.iter() {
                    assert_eq!(a.size() + b.size(), nu.size() + d * ctx.n());
                }
            }
        }
    }
}

#[test]
fn empty_shape_is_the_unit() {
    for ctx in contexts_up_to(7) {
        for a in ctx.partitions() {
            let expected = GrTable::singleton((a.clone(), 0), 1);
            assert_eq!(quantum_product_gr(&Partition::empty(), &a, ctx).unwrap(), expected);
        }
    }
}

#[test]
fn classical_products_match_hand_computations() {
    // s_1^2 = s_2 + s_11 and s_21 * s_1 = s_31 + s_22 + s_211
    let sq = classical_product(&part(&[1]), &part(&[1]), 2);
    assert_eq!(sq.get(&part(&[2])), 1);
    assert_eq!(sq.get(&part(&[1, 1])), 1);
    let p = classical_product(&part(&[2, 1]), &part(&[1]), 3);
    assert_eq!(p.len(), 3);
    assert_eq!(p.get(&part(&[2, 2])), 1);
}

#[test]
fn point_class_squares_to_q_in_projective_space() {
    // P^2 = Gr(1,3): sigma_2 * sigma_2 = q sigma_1
    let ctx = RectContext::new(1, 2).unwrap();
    let t = quantum_product_gr(&part(&[2]), &part(&[2]), ctx).unwrap();
    assert_eq!(t, GrTable::singleton((part(&[1]), 1), 1));
}

#[test]
fn flag_identity_is_the_unit() {
    for n in 1..=4 {
        for w in all_permutations(n) {
            let expected = FlTable::singleton((w.clone(), DegreeVector::zero(n - 1)), 1);
            assert_eq!(quantum_product_fl(&Permutation::identity(n), &w).unwrap(), expected);
        }
    }
}
