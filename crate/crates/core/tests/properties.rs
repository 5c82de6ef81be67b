use proptest::prelude::*;

use peterson::maps::{gamma_sd, gamma_t, pentagon, FlIndex, GrIndex, IndexRecord};
use peterson::perms::{
    compose, conjugate, descent_vector, grassmann_from_partition, inv_sequence, partition_from_grassmann, tilde_d, w0,
    DegreeVector, Permutation,
};
use peterson::shapes::{
    add_rim_hooks_closed, add_rim_hooks_direct, complement, cycle, cycle_partition, cycled_closed_form, from_bits,
    peel_rim_hooks, to_bits, Partition, RectContext,
};

fn ctx_and_shape(max_n: usize) -> impl Strategy<Value = (RectContext, Partition)> {
    (1..max_n, 1..max_n).prop_filter("n within bound", move |(m, r)| m + r <= max_n).prop_flat_map(|(m, r)| {
        let ctx = RectContext::new(m, r).unwrap();
        proptest::collection::vec(0..=r, m).prop_map(move |parts| (ctx, Partition::from_unsorted(parts)))
    })
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

fn permutation_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let ids = (1..=n).collect::<Vec<_>>();
        (Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
            .prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
    })
}

fn gr_index(max_n: usize) -> impl Strategy<Value = GrIndex> {
    (ctx_and_shape(max_n), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_filter_map(
        "needs a balanced third shape",
        |((ctx, lambda), mu_pick, nu_pick)| {
            let shapes = ctx.partitions();
            let mu = mu_pick.get(&shapes).clone();
            let total = lambda.size() + mu.size();
            let candidates: Vec<(Partition, usize)> = shapes
                .iter()
                .filter(|nu| nu.size() <= total && (total - nu.size()) % ctx.n() == 0)
                .map(|nu| (nu.clone(), (total - nu.size()) / ctx.n()))
                .filter(|(_, d)| *d <= ctx.m().min(ctx.r()))
                .collect();
            if candidates.is_empty() {
                return None;
            }
            let (nu, d) = nu_pick.get(&candidates).clone();
            GrIndex::new(lambda, mu, nu, d, ctx).ok()
        },
    )
}

proptest! {
    #[test]
    fn bits_round_trip((ctx, lambda) in ctx_and_shape(16)) {
        let b = to_bits(&lambda, ctx).unwrap();
        prop_assert_eq!(b.zeros(), ctx.m());
        prop_assert_eq!(from_bits(&b, ctx).unwrap(), lambda);
    }

    #[test]
    fn cycling_by_n_is_identity((ctx, lambda) in ctx_and_shape(16), a in 0usize..16) {
        let b = to_bits(&lambda, ctx).unwrap();
        prop_assert_eq!(cycle(&cycle(&b, a % ctx.n()), ctx.n() - a % ctx.n()), b);
        prop_assert_eq!(cycle_partition(&lambda, ctx.r(), ctx).unwrap(), cycled_closed_form(&lambda, ctx).unwrap());
    }

    #[test]
    fn complement_and_transpose_are_involutions((ctx, lambda) in ctx_and_shape(16)) {
        let c = complement(&lambda, ctx).unwrap();
        prop_assert_eq!(c.size() + lambda.size(), ctx.m() * ctx.r());
        prop_assert_eq!(complement(&c, ctx).unwrap(), lambda.clone());
        prop_assert_eq!(lambda.transpose().transpose(), lambda);
    }

    #[test]
    fn rim_hooks_agree_and_peel((ctx, nu) in ctx_and_shape(14), d in 0usize..6) {
        let d = d.min(ctx.r());
        let eta = add_rim_hooks_direct(&nu, d, ctx).unwrap();
        prop_assert_eq!(&eta, &add_rim_hooks_closed(&nu, d, ctx).unwrap());
        prop_assert_eq!(eta.size(), nu.size() + d * ctx.n());
        prop_assert!(eta.width() <= ctx.r());
        prop_assert_eq!(peel_rim_hooks(&eta, ctx).unwrap(), (nu, d));
    }

    #[test]
    fn grassmann_bijection((ctx, lambda) in ctx_and_shape(12)) {
        let w = grassmann_from_partition(&lambda, ctx).unwrap();
        prop_assert_eq!(w.length(), lambda.size());
        prop_assert_eq!(partition_from_grassmann(&w, ctx.m()).unwrap(), lambda);
    }

    #[test]
    fn group_laws((u, v) in permutation_pair(9)) {
        let id = Permutation::identity(u.n());
        prop_assert_eq!(compose(&u, &u.inverse()).unwrap(), id.clone());
        prop_assert_eq!(compose(&u, &id).unwrap(), u.clone());
        let uv = compose(&u, &v).unwrap();
        prop_assert_eq!(uv.inverse(), compose(&v.inverse(), &u.inverse()).unwrap());
        prop_assert_eq!(conjugate(&conjugate(&u)), u.clone());
        prop_assert_eq!(conjugate(&uv), compose(&conjugate(&u), &conjugate(&v)).unwrap());
    }

    #[test]
    fn length_counts_inversions(w in permutation(9)) {
        prop_assert_eq!(inv_sequence(&w).iter().sum::<usize>(), w.length());
        let top = compose(&w0(w.n()), &w).unwrap();
        prop_assert_eq!(top.length() + w.length(), w.n() * (w.n() - 1) / 2);
    }

    #[test]
    fn tilde_is_linear(a in proptest::collection::vec(-5i64..5, 1..10), b in proptest::collection::vec(-5i64..5, 1..10)) {
        let len = a.len().min(b.len());
        let a = DegreeVector::new(a[..len].to_vec());
        let b = DegreeVector::new(b[..len].to_vec());
        prop_assert_eq!(tilde_d(&a.add(&b)), tilde_d(&a).add(&tilde_d(&b)));
    }

    #[test]
    fn strange_duality_is_an_involution(x in gr_index(8)) {
        prop_assume!(x.t() >= 0);
        let y = gamma_sd(&x).unwrap();
        prop_assert_eq!(gamma_sd(&y).unwrap(), x);
    }

    #[test]
    fn pentagon_commutes(x in gr_index(9)) {
        prop_assume!(x.t() >= 0);
        let p = pentagon(&x).unwrap();
        prop_assert!(p.commutes(), "{} gives {} and {}", x, p.left, p.right);
        let r = x.ctx.r();
        let expected = DegreeVector::palindrome(r, x.t() as usize, x.ctx.n() - 1);
        prop_assert_eq!(&p.right.d, &expected);
        let desc = descent_vector(&p.right.w);
        prop_assert!(desc.entries().iter().enumerate().all(|(i, &e)| e == 0 || i + 1 == r - x.t() as usize || i + 1 == r + x.t() as usize));
    }

    #[test]
    fn flag_transpose_is_an_involution((u, v) in permutation_pair(8), w in any::<prop::sample::Index>()) {
        let n = u.n();
        let d = DegreeVector::zero(n.saturating_sub(1));
        prop_assume!(u.length() + v.length() <= n * (n - 1) / 2);
        let target = peterson::perms::all_permutations(n)
            .into_iter()
            .filter(|p| p.length() == u.length() + v.length())
            .collect::<Vec<_>>();
        let w = w.get(&target).clone();
        let x = FlIndex::new(u, v, w, d).unwrap();
        prop_assert_eq!(gamma_t(&gamma_t(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn records_round_trip(x in gr_index(10)) {
        let rec = IndexRecord::from(&x);
        let text = serde_json::to_string(&rec).unwrap();
        let back: IndexRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_gr().unwrap(), x.clone());
        if x.t() >= 0 {
            let fl = pentagon(&x).unwrap().left;
            let rec = IndexRecord::from(&fl);
            let back: IndexRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
            prop_assert_eq!(back.to_fl().unwrap(), fl);
        }
    }
}
