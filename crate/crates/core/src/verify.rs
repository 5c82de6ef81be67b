//! Exhaustive verification suites.
//!
//! Each suite enumerates every index in range, counts what it checked and
//! reports failures through a callback as soon as they are found. Suites fan
//! out over rayon's current thread pool.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::maps::{gamma_sd, gr_indices, pentagon, psi_pc, verify_peterson_lift, GrIndex};
use crate::oracle::{quantum_product_fl, quantum_product_gr, FlTable, GrTable};
use crate::perms::{
    all_permutations, compose, conjugate, descents, factor_two_descents, grassmann_from_partition, inv_sequence,
    lambda_tilde_down, partition_from_grassmann, varphi, w0, w0_p, w0_p_prime, Permutation,
};
use crate::shapes::{
    add_rim_hooks_closed, add_rim_hooks_direct, complement, cycle, cycle_partition, cycled_closed_form, from_bits,
    is_irreducible, partitions_in_box, peel_rim_hooks, reduce_irreducible, rho_split, split_eta, t_of, to_bits,
    Partition, RectContext,
};

/// Counts from one suite run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Shared counters for a suite; failures go to the sink immediately.
struct Tally<'a> {
    checked: AtomicU64,
    failures: Mutex<Vec<String>>,
    sink: &'a (dyn Fn(&str) + Sync),
}

impl<'a> Tally<'a> {
    fn new(sink: &'a (dyn Fn(&str) + Sync)) -> Self {
        Tally { checked: AtomicU64::new(0), failures: Mutex::new(Vec::new()), sink }
    }

    fn check(&self, ok: bool, what: impl FnOnce() -> String) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        if !ok {
            let msg = what();
            (self.sink)(&msg);
            self.failures.lock().expect("failure list").push(msg);
        }
    }

    fn finish(self) -> Report {
        let mut failures = self.failures.into_inner().expect("failure list");
        failures.sort();
        Report { checked: self.checked.into_inner(), failures }
    }
}

/// Every rectangle `(m, r)` with `m + r = n`.
pub fn contexts(n: usize) -> Vec<RectContext> {
    (1..n).map(|m| RectContext::new(m, n - m).expect("positive sides")).collect()
}

/// Every rectangle with `m + r ≤ n`.
pub fn contexts_up_to(n: usize) -> Vec<RectContext> {
    (2..=n).flat_map(contexts).collect()
}

/// Both pentagon routes agree on every index with `t ≥ 0` in `Gr(m, n)`.
pub fn pentagon_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    for ctx in contexts(n) {
        gr_indices(ctx).par_iter().filter(|x| x.t() >= 0).for_each(|x| match pentagon(x) {
            Ok(p) => tally.check(p.commutes(), || format!("pentagon {x}: left {} right {}", p.left, p.right)),
            Err(e) => tally.check(false, || format!("pentagon {x}: {e}")),
        });
    }
    tally.finish()
}

fn gr_tables(ctx: RectContext) -> HashMap<(Partition, Partition), GrTable> {
    let shapes = ctx.partitions();
    let pairs: Vec<(Partition, Partition)> =
        shapes.iter().flat_map(|a| shapes.iter().map(move |b| (a.clone(), b.clone()))).collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| {
            let t = quantum_product_gr(&a, &b, ctx).expect("shapes fit");
            ((a, b), t)
        })
        .collect()
}

fn gr_coeff(tables: &HashMap<(Partition, Partition), GrTable>, x: &GrIndex) -> i64 {
    tables[&(x.lambda.clone(), x.mu.clone())].get(&(x.nu.clone(), x.d))
}

/// `c_{λ,μ}^{ν,d}` (rim-hook oracle) equals the flag coefficient at the `Ψ_PC` key.
pub fn pc_numeric_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    for ctx in contexts(n) {
        let gr = gr_tables(ctx);
        let grassmann: Vec<Permutation> =
            ctx.partitions().iter().map(|p| grassmann_from_partition(p, ctx).expect("fits")).collect();
        let pairs: Vec<(Permutation, Permutation)> =
            grassmann.iter().flat_map(|u| grassmann.iter().map(move |v| (u.clone(), v.clone()))).collect();
        let fl: HashMap<(Permutation, Permutation), FlTable> = pairs
            .into_par_iter()
            .map(|(u, v)| {
                let t = quantum_product_fl(&u, &v).expect("same size");
                ((u, v), t)
            })
            .collect();
        gr_indices(ctx).par_iter().for_each(|x| match psi_pc(x) {
            Ok(y) => {
                let lhs = gr_coeff(&gr, x);
                let rhs = fl[&(y.u.clone(), y.v.clone())].get(&(y.w.clone(), y.d.clone()));
                tally.check(lhs == rhs, || format!("psi_pc {x}: Gr coefficient {lhs}, flag coefficient {rhs} at {y}"));
            }
            Err(e) => tally.check(false, || format!("psi_pc {x}: {e}")),
        });
    }
    tally.finish()
}

/// `c_{λ,μ}^{ν,d} = c_{λ^∨,μ^∨}^{φ^r(ν)^∨,t}` when `t ≥ 0`, and the coefficient
/// vanishes when `t < 0`.
pub fn sd_numeric_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    for ctx in contexts(n) {
        let gr = gr_tables(ctx);
        gr_indices(ctx).par_iter().for_each(|x| {
            let c = gr_coeff(&gr, x);
            if x.t() < 0 {
                tally.check(c == 0, || format!("vanishing {x}: coefficient {c} with t = {}", x.t()));
                return;
            }
            match gamma_sd(x) {
                Ok(y) => {
                    let c2 = gr_coeff(&gr, &y);
                    tally.check(c == c2, || format!("gamma_sd {x}: {c} vs {c2} at {y}"));
                }
                Err(e) => tally.check(false, || format!("gamma_sd {x}: {e}")),
            }
        });
    }
    tally.finish()
}

/// `c_{u,v}^{w,𝐝} = c_{u',v'}^{w',𝐝'}` for all `u, v ∈ S_n`.
pub fn t_numeric_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    let perms = all_permutations(n);
    let pairs: Vec<(Permutation, Permutation)> =
        perms.iter().flat_map(|u| perms.iter().map(move |v| (u.clone(), v.clone()))).collect();
    pairs.par_iter().for_each(|(u, v)| {
        let table = quantum_product_fl(u, v).expect("same size");
        let mut mapped = FlTable::new();
        for ((w, d), &c) in table.iter() {
            mapped.add((conjugate(w), d.reversed()), c);
        }
        let other = quantum_product_fl(&conjugate(u), &conjugate(v)).expect("same size");
        tally.check(mapped == other, || format!("gamma_t [{u}] * [{v}]: conjugated expansion differs"));
    });
    tally.finish()
}

/// Peterson lift table for every `1 ≤ m < n' ≤ n` and `0 ≤ d ≤ min(m, n' − m)`.
pub fn lift_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    for ctx in contexts_up_to(n) {
        let (m, nn) = (ctx.m(), ctx.n());
        for d in 0..=m.min(ctx.r()) {
            match verify_peterson_lift(m, nn, d) {
                Ok(report) => {
                    tally.check(report.passed(), || format!("lift Gr({m},{nn}) d={d}: {:?}", report.violations))
                }
                Err(e) => tally.check(false, || format!("lift Gr({m},{nn}) d={d}: {e}")),
            }
        }
    }
    tally.finish()
}

/// Bit-string round trips, reversal under complement, cycling and the
/// closed form of `φ^r`, for all rectangles with `m + r ≤ n`.
pub fn bits_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    contexts_up_to(n).par_iter().for_each(|&ctx| {
        let size = ctx.n();
        for lambda in ctx.partitions() {
            let b = to_bits(&lambda, ctx).expect("fits");
            let back = from_bits(&b, ctx);
            tally.check(back.as_ref() == Ok(&lambda), || format!("bits {ctx} {lambda:?}: round trip gives {back:?}"));
            let dual = complement(&lambda, ctx).expect("fits");
            tally.check(complement(&dual, ctx).as_ref() == Ok(&lambda), || format!("complement {ctx} {lambda:?}"));
            let db = to_bits(&dual, ctx).expect("fits");
            tally.check(db == b.reversed(), || format!("reversal {ctx} {lambda:?}: {db} vs {b}"));
            for a in 0..=size {
                let there_and_back = cycle(&cycle(&b, a), size - a);
                tally.check(there_and_back == b, || format!("cycle {ctx} {lambda:?} a={a}"));
            }
            let rho = cycle_partition(&lambda, ctx.r(), ctx).expect("fits");
            let closed = cycled_closed_form(&lambda, ctx);
            tally.check(closed.as_ref() == Ok(&rho), || format!("phi^r {ctx} {lambda:?}: {rho:?} vs {closed:?}"));
            tally.check(rho.diag0() == dual.diag0(), || format!("diag0 of phi^r {ctx} {lambda:?}"));
        }
    });
    tally.finish()
}

/// `ν ⊕ d` by insertion equals the closed form, `δ = d + t` for `d ≤ δ`, and
/// peeling inverts insertion.
pub fn rim_hook_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    contexts_up_to(n).par_iter().for_each(|&ctx| {
        for nu in ctx.partitions() {
            let delta = complement(&nu, ctx).expect("fits").diag0();
            for d in 0..=ctx.r() {
                let direct = add_rim_hooks_direct(&nu, d, ctx);
                let closed = add_rim_hooks_closed(&nu, d, ctx);
                tally.check(direct == closed, || format!("nu+d {ctx} {nu:?} d={d}: {direct:?} vs {closed:?}"));
                let Ok(eta) = direct else { continue };
                let peeled = peel_rim_hooks(&eta, ctx);
                tally.check(peeled == Ok((nu.clone(), d)), || format!("peel {ctx} {eta:?}: {peeled:?}"));
                if d <= delta {
                    let t = t_of(&nu, d, ctx);
                    tally.check(t == Ok(delta - d), || format!("delta = d + t {ctx} {nu:?} d={d}: t = {t:?}"));
                }
            }
        }
    });
    tally.finish()
}

/// Row description of `(ρ^{L^t}, ρ^{R^t})`: rows below the `t × t` square cut
/// to `t` columns, and every row shortened by `t`.
fn rho_split_rows(rho: &Partition, t: usize) -> (Partition, Partition) {
    let left = rho.parts().iter().skip(t).map(|&p| p.min(t)).collect();
    let right = rho.parts().iter().map(|&p| p.saturating_sub(t)).collect();
    (Partition::new(left).expect("decreasing"), Partition::new(right).expect("decreasing"))
}

/// The `η`-split against the `ρ`-split, and
/// `φ_{r−t}(η²) φ_{r+t}(η¹) = w_ρ w₀^{P'_t} w₀`.
pub fn split_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    contexts_up_to(n).par_iter().for_each(|&ctx| {
        let (m, r, size) = (ctx.m(), ctx.r(), ctx.n());
        for nu in ctx.partitions() {
            let delta = complement(&nu, ctx).expect("fits").diag0();
            let rho = cycle_partition(&nu, r, ctx).expect("fits");
            for d in 0..=delta {
                let t = delta - d;
                let eta = add_rim_hooks_direct(&nu, d, ctx).expect("d ≤ δ ≤ r");
                let (eta1, eta2) = split_eta(&eta, t, ctx).expect("t ≤ m");
                let (left, right) = rho_split(&rho, t).expect("(t^t) ⊆ ρ");
                tally.check(rho_split_rows(&rho, t) == (left.clone(), right.clone()), || {
                    format!("rho split rows {ctx} {rho:?} t={t}")
                });
                let shifted = left.add(&Partition::new(vec![r - t; m - t]).expect("rectangle"));
                tally.check((eta1.clone(), eta2.clone()) == (shifted.clone(), right.clone()), || {
                    format!("eta split {ctx} {nu:?} d={d}: ({eta1:?},{eta2:?}) vs ({shifted:?},{right:?})")
                });
                let lhs = varphi_degenerate(&eta2, r - t, size)
                    .and_then(|a| varphi_degenerate(&eta1, r + t, size).and_then(|b| compose(&a, &b)));
                let w_rho = grassmann_from_partition(&rho, ctx).expect("fits");
                let rhs = w0_p_prime(m, size, t).and_then(|p| compose(&w_rho, &p)).and_then(|x| compose(&x, &w0(size)));
                tally.check(lhs.is_ok() && lhs == rhs, || {
                    format!("w_rho identity {ctx} {nu:?} d={d}: {lhs:?} vs {rhs:?}")
                });
            }
        }
    });
    tally.finish()
}

fn varphi_degenerate(eta: &Partition, j: usize, n: usize) -> crate::Result<Permutation> {
    if (j == 0 || j == n) && eta.is_empty() {
        return Ok(Permutation::identity(n));
    }
    varphi(eta, j, n)
}

/// Transpose formula for `λ̃↓` on Grassmann permutations, the `φ_j`/`λ̃↓`
/// round trips, two-descent factorization and inversion additivity, for `S_n`.
pub fn grassmann_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    all_permutations(n).par_iter().for_each(|w| {
        let found = descents(w);
        let inv = inv_sequence(w);
        if w.is_identity() {
            // the identity lies in every S_n^j; its formula value is the k-rectangle R_j, which reduces away
            let down = lambda_tilde_down(w);
            tally.check(down.is_empty(), || format!("lambda_down(id) = {down:?}"));
        } else if found.len() == 1 {
            for j in found.clone() {
                let down = lambda_tilde_down(w);
                let formula =
                    Partition::new((1..=j).map(|i| n - j - inv[i - 1]).collect()).expect("Inv decreasing on S_n^j");
                tally.check(down.transpose() == formula, || format!("transpose formula [{w}] j={j}: {down:?}"));
                let back = varphi(&down, j, n);
                tally.check(back.as_ref() == Ok(w), || format!("varphi(lambda_down) [{w}] j={j}: {back:?}"));
            }
        }
        if found.len() == 2 {
            let (a, b) = (found[0], found[1]);
            match factor_two_descents(w) {
                Ok((w2, w1)) => {
                    let shape_ok = descents(&w2) == vec![a]
                        && descents(&w1) == vec![b]
                        && (1..=a).all(|i| w1.at(i) == i)
                        && compose(&w2, &w1).as_ref() == Ok(w);
                    tally.check(shape_ok, || format!("factorization [{w}]: ([{w2}], [{w1}])"));
                    let sum = lambda_tilde_down(&w2).transpose().add(&lambda_tilde_down(&w1).transpose());
                    let total = lambda_tilde_down(w).transpose();
                    tally.check(sum == total, || format!("inversion additivity [{w}]: {total:?} vs {sum:?}"));
                }
                Err(e) => tally.check(false, || format!("factorization [{w}]: {e}")),
            }
        }
    });
    for j in 1..n {
        for eta in partitions_in_box(n - j, j) {
            let w = varphi(&eta, j, n);
            let back = w.as_ref().map(lambda_tilde_down);
            // the full rectangle (j^{n−j}) is itself a k-rectangle
            let expected = if eta.len() == n - j && eta.parts().iter().all(|&p| p == j) {
                Partition::empty()
            } else {
                eta.clone()
            };
            tally.check(back.as_ref() == Ok(&expected), || format!("lambda_down(varphi) {eta:?} j={j}: {back:?}"));
        }
    }
    tally.finish()
}

/// Part multiplicities of `λ̃↓_w` against `Inv(w₀ w)` for all `w ∈ S_n`.
pub fn multiplicity_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    let k = n - 1;
    all_permutations(n).par_iter().for_each(|w| {
        let big_i: Vec<i64> = inv_sequence(&compose(&w0(n), w).expect("same size")).iter().map(|&x| x as i64).collect();
        let down = lambda_tilde_down(w);
        tally.check(is_irreducible(&down, k), || format!("irreducible [{w}]: {down:?}"));
        let found = descents(w);
        for i in 1..k {
            let count = down.parts().iter().filter(|&&p| p == i).count() as i64;
            let expected =
                if found.contains(&i) { (k - i) as i64 + big_i[i - 1] - big_i[i] } else { big_i[i - 1] - big_i[i] - 1 };
            tally.check(count == expected, || format!("multiplicity [{w}] i={i}: {count} vs {expected}"));
        }
    });
    tally.finish()
}

/// `w_{λ^∨} = w₀ w_λ w₀^P`, `w_{λ'} = w_λ'`, and both
/// transpose-dual windows, for all `λ ⊆ R_{n−j}`.
pub fn window_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    contexts_up_to(n).par_iter().for_each(|&ctx| {
        let (j, size) = (ctx.m(), ctx.n());
        let flipped = RectContext::new(ctx.r(), ctx.m()).expect("positive sides");
        for lambda in ctx.partitions() {
            let w = grassmann_from_partition(&lambda, ctx).expect("fits");
            let back = partition_from_grassmann(&w, j);
            tally.check(back.as_ref() == Ok(&lambda), || format!("lambda_w {ctx} {lambda:?}: {back:?}"));
            let dual = grassmann_from_partition(&complement(&lambda, ctx).expect("fits"), ctx).expect("fits");
            let rhs = compose(&w0(size), &w).and_then(|x| compose(&x, &w0_p(j, size).expect("m < n")));
            tally.check(rhs.as_ref() == Ok(&dual), || format!("duality {ctx} {lambda:?}"));
            let lt = lambda.transpose();
            let wt = grassmann_from_partition(&lt, flipped).expect("transpose fits");
            tally.check(wt == conjugate(&w), || format!("conjugate window {ctx} {lambda:?}"));
            // [λ_j+1 ⋯ λ_1+j | j+1−λ'_1 ⋯ n−λ'_{n−j}]
            let head: Vec<usize> = (1..=j).map(|i| lambda.part(j - i + 1) + i).collect();
            let tail: Vec<usize> = (1..=size - j).map(|i| j + i - lt.part(i)).collect();
            let expected: Vec<usize> = head.iter().chain(&tail).copied().collect();
            tally.check(w.window() == expected.as_slice(), || format!("window {ctx} {lambda:?}: [{w}]"));
            let td = complement(&lambda, ctx).expect("fits").transpose();
            let wtd = grassmann_from_partition(&td, flipped).expect("fits");
            let expected: Vec<usize> = tail.iter().chain(&head).copied().collect();
            tally.check(wtd.window() == expected.as_slice(), || format!("dual window {ctx} {lambda:?}: [{wtd}]"));
        }
    });
    tally.finish()
}

/// k-rectangle reduction leaves an irreducible shape and removes whole rectangles.
pub fn reduction_suite(n: usize, sink: &(dyn Fn(&str) + Sync)) -> Report {
    let tally = Tally::new(sink);
    let k = n - 1;
    all_permutations(n).par_iter().for_each(|w| {
        let full = crate::perms::lambda_tilde(w);
        let (down, removed) = reduce_irreducible(&full, k).expect("k-bounded");
        let mut rebuilt = down.clone();
        for &i in &removed {
            rebuilt = rebuilt.union(&Partition::new(vec![i; n - i]).expect("rectangle"));
        }
        tally.check(is_irreducible(&down, k) && rebuilt == full, || format!("reduction [{w}]: {full:?}"));
    });
    tally.finish()
}

/// Property bounds used by [`props_suite`] when run at scale `n`.
pub struct PropBounds {
    pub bits: usize,
    pub rim_hooks: usize,
    pub splits: usize,
    pub grassmann: usize,
    pub multiplicity: usize,
    pub windows: usize,
    pub lift: usize,
}

impl PropBounds {
    /// The same bound `n` for every suite.
    pub fn uniform(n: usize) -> Self {
        PropBounds { bits: n, rim_hooks: n, splits: n, grassmann: n, multiplicity: n, windows: n, lift: n }
    }
}

/// All shape and permutation property suites, labelled.
pub fn props_suite(bounds: &PropBounds, sink: &(dyn Fn(&str) + Sync)) -> Vec<(&'static str, Report)> {
    vec![
        ("bits", bits_suite(bounds.bits, sink)),
        ("rim-hooks", rim_hook_suite(bounds.rim_hooks, sink)),
        ("splits", split_suite(bounds.splits, sink)),
        ("grassmann", grassmann_suite(bounds.grassmann, sink)),
        ("reduction", reduction_suite(bounds.grassmann, sink)),
        ("multiplicity", multiplicity_suite(bounds.multiplicity, sink)),
        ("windows", window_suite(bounds.windows, sink)),
        ("lift", lift_suite(bounds.lift, sink)),
    ]
}
