//! Independent coefficient oracles.
//!
//! Grassmannian products come from two routes: classical Littlewood–Richardson
//! numbers followed by rim-hook reduction, and iterated quantum Pieri through
//! the Giambelli determinant. Flag products come from quantum Schubert
//! polynomials and the quantum Monk rule; a classical divided-difference
//! computation provides the `q = 0` reference.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::{FlIndex, GrIndex};
use crate::perms::{all_permutations, DegreeVector, Permutation};
use crate::shapes::{Partition, RectContext};

/// A finitely supported map from keys to nonzero integers, iterated in key order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for CoeffTable<K> {
    fn default() -> Self {
        CoeffTable { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> CoeffTable<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(key: K, c: i64) -> Self {
        let mut t = Self::new();
        t.add(key, c);
        t
    }

    /// Adds `c` to the coefficient of `key`, dropping it if the sum is zero.
    pub fn add(&mut self, key: K, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// Adds `factor · other`.
    pub fn add_scaled(&mut self, other: &CoeffTable<K>, factor: i64) {
        for (k, &c) in &other.terms {
            self.add(k.clone(), c.checked_mul(factor).expect("coefficient overflow"));
        }
    }

    pub fn get(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &i64)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&K) -> bool) -> Self {
        CoeffTable { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, &c)| (k.clone(), c)).collect() }
    }
}

/// Expansion in `QH*(Gr(m, n))`, keyed by `(ν, d)` for `q^d σ_ν`.
pub type GrTable = CoeffTable<(Partition, usize)>;

/// Expansion in `QH*(Fl_n)`, keyed by `(w, 𝐝)` for `𝐪^𝐝 σ_w`.
pub type FlTable = CoeffTable<(Permutation, DegreeVector)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrTerm {
    pub nu: String,
    pub d: usize,
    pub c: i64,
}

/// Text form of a [`GrTable`]:
/// `{"ring":"QH_Gr","m":…,"n":…,"terms":[{"nu":…,"d":…,"c":…},…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrTableRecord {
    pub ring: &'static str,
    pub m: usize,
    pub n: usize,
    pub terms: Vec<GrTerm>,
}

impl GrTableRecord {
    pub fn new(table: &GrTable, ctx: RectContext) -> Self {
        let terms = table.iter().map(|((nu, d), &c)| GrTerm { nu: nu.to_string(), d: *d, c }).collect();
        GrTableRecord { ring: "QH_Gr", m: ctx.m(), n: ctx.n(), terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlTerm {
    pub w: String,
    pub deg: String,
    pub c: i64,
}

/// Text form of a [`FlTable`]:
/// `{"ring":"QH_Fl","n":…,"terms":[{"w":…,"deg":…,"c":…},…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlTableRecord {
    pub ring: &'static str,
    pub n: usize,
    pub terms: Vec<FlTerm>,
}

impl FlTableRecord {
    pub fn new(table: &FlTable, n: usize) -> Self {
        let terms = table.iter().map(|((w, d), &c)| FlTerm { w: w.to_string(), deg: d.to_string(), c }).collect();
        FlTableRecord { ring: "QH_Fl", n, terms }
    }
}

// ---------------------------------------------------------------------------
// Grassmannian

/// Number of Littlewood–Richardson tableaux of shape `ν/λ` and content `μ`.
pub fn classical_lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    struct Search<'a> {
        lambda: &'a Partition,
        nu: &'a Partition,
        mu: &'a Partition,
        cells: Vec<(usize, usize)>,
        fill: Vec<Vec<usize>>,
        counts: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, idx: usize) -> i64 {
            let Some(&(i, j)) = self.cells.get(idx) else {
                return 1;
            };
            let right = (j + 1 < self.nu.part(i + 1)).then(|| self.fill[i][j + 1]);
            let above = (i > 0 && j >= self.lambda.part(i)).then(|| self.fill[i - 1][j]);
            let max_entry = (i + 1).min(self.mu.len());
            let mut total = 0;
            for c in 1..=max_entry {
                if right.is_some_and(|x| c > x) || above.is_some_and(|x| c <= x) {
                    continue;
                }
                if self.counts[c] >= self.mu.part(c) || (c > 1 && self.counts[c] >= self.counts[c - 1]) {
                    continue;
                }
                self.counts[c] += 1;
                self.fill[i][j] = c;
                total += self.run(idx + 1);
                self.counts[c] -= 1;
            }
            total
        }
    }
    // reading order: rows top to bottom, each row right to left
    let mut cells = Vec::new();
    for i in 0..nu.len() {
        for j in (lambda.part(i + 1)..nu.part(i + 1)).rev() {
            cells.push((i, j));
        }
    }
    let fill = (0..nu.len()).map(|i| vec![0; nu.part(i + 1)]).collect();
    let mut search = Search { lambda, nu, mu, cells, fill, counts: vec![0; mu.len() + 1] };
    search.run(0)
}

/// Partitions of `size` with at most `rows` parts, each at most `max_part`,
/// containing `inner`.
fn partitions_between(size: usize, rows: usize, max_part: usize, inner: &Partition) -> Vec<Partition> {
    fn go(
        i: usize,
        left: usize,
        cap: usize,
        rows: usize,
        inner: &Partition,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if left == 0 {
            if (i..rows).all(|r| inner.part(r + 1) == 0) {
                out.push(Partition::new(cur.clone()).expect("decreasing"));
            }
            return;
        }
        if i == rows {
            return;
        }
        let lo = inner.part(i + 1).max(1);
        for p in (lo..=cap.min(left)).rev() {
            cur.push(p);
            go(i + 1, left - p, p, rows, inner, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, size, max_part, rows, inner, &mut Vec::new(), &mut out);
    out
}

/// Classical product `s_λ s_μ` restricted to at most `rows` rows.
pub fn classical_product(lambda: &Partition, mu: &Partition, rows: usize) -> CoeffTable<Partition> {
    let mut table = CoeffTable::new();
    let size = lambda.size() + mu.size();
    for gamma in partitions_between(size, rows, lambda.width() + mu.width(), lambda) {
        table.add(gamma.clone(), classical_lr(lambda, mu, &gamma));
    }
    table
}

/// Removes `n`-rim hooks from `γ` (at most `m` rows) until it fits in `R_r`.
/// Returns `(ν, d, sign)`, or `None` when the class vanishes.
pub fn rim_hook_reduce(gamma: &Partition, ctx: RectContext) -> Option<(Partition, usize, i64)> {
    let (m, n) = (ctx.m(), ctx.n());
    if gamma.len() > m {
        return None;
    }
    // bead of row i (1-based) sits at γ_i + m − i
    let mut beads: Vec<usize> = (1..=m).map(|i| gamma.part(i) + m - i).collect();
    let (mut d, mut sign) = (0, 1i64);
    while beads[0] >= n {
        let q = beads[0];
        let target = q - n;
        if beads.contains(&target) {
            return None;
        }
        let between = beads.iter().filter(|&&b| target < b && b < q).count();
        let height = between + 1;
        if (m - height) % 2 == 1 {
            sign = -sign;
        }
        beads[0] = target;
        beads.sort_unstable_by(|a, b| b.cmp(a));
        d += 1;
    }
    let parts = (1..=m).map(|i| beads[i - 1] + i - m).collect();
    Some((Partition::new(parts).expect("beads give a partition"), d, sign))
}

/// `σ_λ * σ_μ` in `QH*(Gr(m, n))` by rim-hook reduction of the classical product.
pub fn quantum_product_gr(lambda: &Partition, mu: &Partition, ctx: RectContext) -> Result<GrTable> {
    ctx.check(lambda)?;
    ctx.check(mu)?;
    let mut table = GrTable::new();
    for (gamma, &c) in classical_product(lambda, mu, ctx.m()).iter() {
        if let Some((nu, d, sign)) = rim_hook_reduce(gamma, ctx) {
            table.add((nu, d), sign * c);
        }
    }
    Ok(table)
}

/// `c_{λ,μ}^{ν,d}` from [`quantum_product_gr`].
pub fn quantum_lr_gr(x: &GrIndex) -> i64 {
    quantum_product_gr(&x.lambda, &x.mu, x.ctx).expect("validated index").get(&(x.nu.clone(), x.d))
}

/// Bounded compositions: vectors with `lo_i ≤ v_i ≤ hi_i` summing to `total`.
fn bounded_vectors(lo: &[usize], hi: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, lo: &[usize], hi: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == lo.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest_min: usize = lo[i + 1..].iter().sum();
        for v in lo[i]..=hi[i] {
            if v + rest_min > left {
                break;
            }
            cur.push(v);
            go(i + 1, lo, hi, left - v, cur, out);
            cur.pop();
        }
    }
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(0, lo, hi, total, &mut Vec::new(), &mut out);
    out
}

/// Quantum Pieri: `σ_(p) * σ_λ` in `QH*(Gr(m, n))`.
pub fn quantum_pieri_gr(p: usize, lambda: &Partition, ctx: RectContext) -> Result<GrTable> {
    ctx.check(lambda)?;
    if p == 0 || p > ctx.r() {
        return Err(Error::Range { arg: "p", value: p as i64, range: format!("1..={}", ctx.r()) });
    }
    let (m, r, n) = (ctx.m(), ctx.r(), ctx.n());
    let mut table = GrTable::new();
    // horizontal strips inside the rectangle
    let lo: Vec<usize> = (1..=m).map(|i| lambda.part(i)).collect();
    let hi: Vec<usize> = (1..=m).map(|i| if i == 1 { r } else { lambda.part(i - 1).min(r) }).collect();
    for parts in bounded_vectors(&lo, &hi, lambda.size() + p) {
        table.add((Partition::new(parts).expect("strip"), 0), 1);
    }
    // λ_1 − 1 ≥ ν_1 ≥ λ_2 − 1 ≥ ⋯ ≥ λ_m − 1 ≥ ν_m ≥ 0
    if lambda.size() + p >= n && lambda.len() == m {
        let lo: Vec<usize> = (1..=m).map(|i| lambda.part(i + 1).saturating_sub(1)).collect();
        let hi: Vec<usize> = (1..=m).map(|i| lambda.part(i) - 1).collect();
        for parts in bounded_vectors(&lo, &hi, lambda.size() + p - n) {
            table.add((Partition::new(parts).expect("interlacing"), 1), 1);
        }
    }
    Ok(table)
}

fn pieri_on_table(p: i64, table: &GrTable, ctx: RectContext) -> GrTable {
    if p == 0 {
        return table.clone();
    }
    let mut out = GrTable::new();
    if p < 0 || p as usize > ctx.r() {
        return out;
    }
    for ((lambda, d), &c) in table.iter() {
        let step = quantum_pieri_gr(p as usize, lambda, ctx).expect("valid Pieri input");
        for ((nu, e), &c2) in step.iter() {
            out.add((nu.clone(), d + e), c * c2);
        }
    }
    out
}

/// `σ_λ * σ_μ` by expanding `σ_μ = det(σ_{μ_i + j − i})` and applying Pieri
/// once per factor.
pub fn quantum_product_gr_pieri(lambda: &Partition, mu: &Partition, ctx: RectContext) -> Result<GrTable> {
    ctx.check(lambda)?;
    ctx.check(mu)?;
    let start = GrTable::singleton((lambda.clone(), 0), 1);
    let len = mu.len();
    if len == 0 {
        return Ok(start);
    }
    let mut out = GrTable::new();
    for pi in all_permutations(len) {
        let sign = if pi.length() % 2 == 0 { 1 } else { -1 };
        let mut table = start.clone();
        for i in 1..=len {
            let p = mu.part(i) as i64 + pi.at(i) as i64 - i as i64;
            table = pieri_on_table(p, &table, ctx);
            if table.is_empty() {
                break;
            }
        }
        out.add_scaled(&table, sign);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Flag varieties

/// A polynomial in `x_1, …, x_n` and `q_1, …, q_{n−1}` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly {
    n: usize,
    terms: BTreeMap<(Vec<u8>, Vec<u8>), i64>,
}

impl QPoly {
    pub fn zero(n: usize) -> Self {
        QPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut p = QPoly::zero(n);
        p.add_term(vec![0; n], vec![0; n.saturating_sub(1)], 1);
        p
    }

    /// The monomial `x_i` (1-based).
    pub fn x(i: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        let mut p = QPoly::zero(n);
        p.add_term(e, vec![0; n - 1], 1);
        p
    }

    /// The monomial `q_i` (1-based).
    pub fn q(i: usize, n: usize) -> Self {
        let mut e = vec![0; n - 1];
        e[i - 1] = 1;
        let mut p = QPoly::zero(n);
        p.add_term(vec![0; n], e, 1);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, x: Vec<u8>, q: Vec<u8>, c: i64) {
        if c == 0 {
            return;
        }
        let key = (x, q);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Vec<u8>, i64)> {
        self.terms.iter().map(|((x, q), &c)| (x, q, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (x, q, c) in other.terms() {
            out.add_term(x.clone(), q.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> QPoly {
        let mut out = QPoly::zero(self.n);
        for (x, q, d) in self.terms() {
            out.add_term(x.clone(), q.clone(), d.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero(self.n);
        for (x1, q1, c1) in self.terms() {
            for (x2, q2, c2) in other.terms() {
                let x = x1.iter().zip(x2).map(|(a, b)| a + b).collect();
                let q = q1.iter().zip(q2).map(|(a, b)| a + b).collect();
                out.add_term(x, q, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    /// Sets every `q_i = 0`.
    pub fn at_q_zero(&self) -> QPoly {
        let mut out = QPoly::zero(self.n);
        for (x, q, c) in self.terms() {
            if q.iter().all(|&e| e == 0) {
                out.add_term(x.clone(), q.clone(), c);
            }
        }
        out
    }

    /// Divided difference `∂_i f = (f − s_i f) / (x_i − x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> QPoly {
        let (a, b) = (i - 1, i);
        let mut out = QPoly::zero(self.n);
        for (x, q, c) in self.terms() {
            let (ea, eb) = (x[a], x[b]);
            if ea == eb {
                continue;
            }
            // (x_a^p x_b^s − x_a^s x_b^p)/(x_a − x_b) = Σ_{j} x_a^{s+j} x_b^{p−1−j} for p > s
            let (hi, lo, sign) = if ea > eb { (ea, eb, 1) } else { (eb, ea, -1) };
            for j in 0..hi - lo {
                let mut y = x.clone();
                y[a] = lo + j;
                y[b] = hi - 1 - j;
                out.add_term(y, q.clone(), sign * c);
            }
        }
        out
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> i64 {
        self.terms.iter().filter(|((x, q), _)| x.iter().chain(q).all(|&e| e == 0)).map(|(_, &c)| c).sum()
    }
}

struct FlagData {
    classical: HashMap<Permutation, QPoly>,
    quantum: HashMap<Permutation, QPoly>,
}

fn flag_data(n: usize) -> Arc<FlagData> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FlagData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(data) = cache.lock().expect("cache lock").get(&n) {
        return data.clone();
    }
    // built outside the lock; concurrent builders produce identical data
    let data = Arc::new(build_flag_data(n));
    cache.lock().expect("cache lock").entry(n).or_insert(data).clone()
}

fn classical_schubert_all(n: usize) -> HashMap<Permutation, QPoly> {
    let mut polys = HashMap::new();
    let top = crate::perms::w0(n);
    let mut staircase = QPoly::zero(n);
    let exps: Vec<u8> = (0..n).map(|i| (n - 1 - i) as u8).collect();
    staircase.add_term(exps, vec![0; n.saturating_sub(1)], 1);
    polys.insert(top.clone(), staircase);
    let mut frontier = vec![top];
    while let Some(w) = frontier.pop() {
        let poly = polys[&w].clone();
        for i in 1..n {
            if w.at(i) > w.at(i + 1) {
                let ws = w.swap_positions(i, i + 1);
                if !polys.contains_key(&ws) {
                    polys.insert(ws.clone(), poly.divided_difference(i));
                    frontier.push(ws);
                }
            }
        }
    }
    polys
}

/// Elementary symmetric polynomial `e_i(x_1, …, x_k)` in `n` variables.
fn elementary(i: usize, k: usize, n: usize) -> QPoly {
    let mut out = QPoly::zero(n);
    fn go(start: usize, left: usize, k: usize, cur: &mut Vec<u8>, out: &mut QPoly) {
        if left == 0 {
            out.add_term(cur.clone(), vec![0; cur.len() - 1], 1);
            return;
        }
        for v in start..k {
            cur[v] = 1;
            go(v + 1, left - 1, k, cur, out);
            cur[v] = 0;
        }
    }
    go(0, i, k, &mut vec![0; n], &mut out);
    out
}

/// Quantum elementary polynomials `E_i^k` for `0 ≤ k ≤ n−1`, via
/// `E_i^k = E_i^{k−1} + x_k E_{i−1}^{k−1} + q_{k−1} E_{i−2}^{k−2}`.
fn quantum_elementary(n: usize) -> Vec<Vec<QPoly>> {
    let mut e: Vec<Vec<QPoly>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let get = |e: &Vec<Vec<QPoly>>, k: i64, i: i64| -> QPoly {
                if k < 0 || i < 0 || i > k {
                    QPoly::zero(n)
                } else {
                    e[k as usize][i as usize].clone()
                }
            };
            let poly = if i == 0 {
                QPoly::one(n)
            } else {
                let (ki, ii) = (k as i64, i as i64);
                let mut p = get(&e, ki - 1, ii).add(&QPoly::x(k, n).mul(&get(&e, ki - 1, ii - 1)));
                if k >= 2 {
                    p = p.add(&QPoly::q(k - 1, n).mul(&get(&e, ki - 2, ii - 2)));
                }
                p
            };
            row.push(poly);
        }
        e.push(row);
    }
    e
}

/// Index vectors `I = (i_1, …, i_{n−1})` with `0 ≤ i_k ≤ k`.
fn elementary_indices(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 1..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=k).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Expresses each classical Schubert polynomial in the standard elementary
/// monomials `e_I = Π_k e_{i_k}(x_1, …, x_k)`, degree by degree, by exact
/// elimination.
fn elementary_expansions(
    n: usize,
    classical: &HashMap<Permutation, QPoly>,
) -> HashMap<Permutation, Vec<(Vec<usize>, i64)>> {
    let indices = elementary_indices(n);
    let monomial_of = |idx: &Vec<usize>| -> QPoly {
        let mut p = QPoly::one(n);
        for (k0, &i) in idx.iter().enumerate() {
            if i > 0 {
                p = p.mul(&elementary(i, k0 + 1, n));
            }
        }
        p
    };
    let mut by_degree: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for idx in indices {
        by_degree.entry(idx.iter().sum()).or_default().push(idx);
    }
    let mut perms_by_degree: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for w in classical.keys() {
        perms_by_degree.entry(w.length()).or_default().push(w.clone());
    }
    let mut out = HashMap::new();
    for (degree, block) in by_degree {
        let columns: Vec<QPoly> = block.iter().map(monomial_of).collect();
        let targets = perms_by_degree.remove(&degree).unwrap_or_default();
        // rows: every x-monomial appearing in the block
        let mut rows: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
        for p in columns.iter().chain(targets.iter().map(|w| &classical[w])) {
            for (x, _, _) in p.terms() {
                let next = rows.len();
                rows.entry(x.clone()).or_insert(next);
            }
        }
        let (nr, nc, nt) = (rows.len(), columns.len(), targets.len());
        let mut mat = vec![vec![BigRational::zero(); nc + nt]; nr];
        for (j, p) in columns.iter().chain(targets.iter().map(|w| &classical[w])).enumerate() {
            for (x, _, c) in p.terms() {
                mat[rows[x]][j] = BigRational::from_integer(BigInt::from(c));
            }
        }
        let solution = solve(mat, nc, nt);
        for (t, w) in targets.iter().enumerate() {
            let coeffs = (0..nc)
                .filter(|&j| !solution[j][t].is_zero())
                .map(|j| {
                    let value = &solution[j][t];
                    assert!(value.is_integer(), "non-integral elementary coefficient for {w:?}");
                    (block[j].clone(), value.to_integer().to_i64().expect("coefficient fits in i64"))
                })
                .collect();
            out.insert(w.clone(), coeffs);
        }
    }
    out
}

/// Gauss–Jordan on `[A | B]` with `A` of full column rank `nc`; returns the
/// `nc × nt` solution `X` of `A X = B`.
fn solve(mut mat: Vec<Vec<BigRational>>, nc: usize, nt: usize) -> Vec<Vec<BigRational>> {
    let nr = mat.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(nc);
    for col in 0..nc {
        let found = (pivot_row..nr).find(|&r| !mat[r][col].is_zero()).expect("elementary monomials are independent");
        mat.swap(pivot_row, found);
        let inv = mat[pivot_row][col].recip();
        for x in mat[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..nr {
            if r != pivot_row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                let pivot = mat[pivot_row].clone();
                for (x, p) in mat[r].iter_mut().zip(&pivot) {
                    *x = &*x - &factor * p;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    for row in mat.iter().skip(pivot_row) {
        assert!(row[nc..].iter().all(|x| x.is_zero()), "Schubert polynomial outside the elementary span");
    }
    pivots.iter().map(|&r| mat[r][nc..nc + nt].to_vec()).collect()
}

fn build_flag_data(n: usize) -> FlagData {
    let classical = classical_schubert_all(n);
    let expansions = elementary_expansions(n, &classical);
    let big_e = quantum_elementary(n);
    let mut products: HashMap<Vec<usize>, QPoly> = HashMap::new();
    let mut quantum = HashMap::new();
    for (w, coeffs) in &expansions {
        let mut poly = QPoly::zero(n);
        for (idx, c) in coeffs {
            let term = products.entry(idx.clone()).or_insert_with(|| {
                let mut p = QPoly::one(n);
                for (k0, &i) in idx.iter().enumerate() {
                    p = p.mul(&big_e[k0 + 1][i]);
                }
                p
            });
            poly = poly.add(&term.scale(*c));
        }
        quantum.insert(w.clone(), poly);
    }
    FlagData { classical, quantum }
}

/// The Schubert polynomial `𝔖_w`.
pub fn schubert_poly(w: &Permutation) -> QPoly {
    flag_data(w.n()).classical[w].clone()
}

/// The quantum Schubert polynomial `𝔖^q_w`.
pub fn quantum_schubert_poly(w: &Permutation) -> QPoly {
    flag_data(w.n()).quantum[w].clone()
}

/// Quantum Monk: `σ_{s_i} * σ_w` in `QH*(Fl_n)`. Returns zero for `i = 0`.
pub fn quantum_monk_fl(i: usize, w: &Permutation) -> FlTable {
    let n = w.n();
    let mut table = FlTable::new();
    if i == 0 {
        return table;
    }
    let len = w.length() as i64;
    for a in 1..=i {
        for b in i + 1..=n {
            let wt = w.swap_positions(a, b);
            let lt = wt.length() as i64;
            if lt == len + 1 {
                table.add((wt, DegreeVector::zero(n - 1)), 1);
            } else if lt == len - 2 * (b - a) as i64 + 1 {
                let mut deg = DegreeVector::zero(n - 1);
                for j in a..b {
                    deg = deg.add(&DegreeVector::unit(j, n - 1));
                }
                table.add((wt, deg), 1);
            }
        }
    }
    table
}

/// `x_i * table`, using `x_i = σ_{s_i} − σ_{s_{i−1}}`.
fn multiply_by_x(i: usize, table: &FlTable) -> FlTable {
    let mut out = FlTable::new();
    for ((w, d), &c) in table.iter() {
        for (sign, j) in [(1, i), (-1, i - 1)] {
            if j == 0 || j >= w.n() {
                continue;
            }
            for ((w2, d2), &c2) in quantum_monk_fl(j, w).iter() {
                out.add((w2.clone(), d.add(d2)), sign * c * c2);
            }
        }
    }
    out
}

/// `σ_u * σ_v` in `QH*(Fl_n)`.
pub fn quantum_product_fl(u: &Permutation, v: &Permutation) -> Result<FlTable> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::SizeMismatch(n, v.n()));
    }
    let data = flag_data(n);
    let poly = &data.quantum[v];
    let mut memo: HashMap<Vec<u8>, FlTable> = HashMap::new();
    fn monomial_action(x: &[u8], u: &Permutation, memo: &mut HashMap<Vec<u8>, FlTable>) -> FlTable {
        if let Some(t) = memo.get(x) {
            return t.clone();
        }
        let table = match x.iter().rposition(|&e| e > 0) {
            None => FlTable::singleton((u.clone(), DegreeVector::zero(u.n() - 1)), 1),
            Some(i) => {
                let mut lower = x.to_vec();
                lower[i] -= 1;
                multiply_by_x(i + 1, &monomial_action(&lower, u, memo))
            }
        };
        memo.insert(x.to_vec(), table.clone());
        table
    }
    let mut out = FlTable::new();
    for (x, q, c) in poly.terms() {
        let shift = DegreeVector::new(q.iter().map(|&e| e as i64).collect());
        for ((w, d), &c2) in monomial_action(x, u, &mut memo).iter() {
            out.add((w.clone(), d.add(&shift)), c * c2);
        }
    }
    Ok(out)
}

/// `c_{u,v}^{w,𝐝}` from [`quantum_product_fl`].
pub fn quantum_lr_fl(x: &FlIndex) -> i64 {
    quantum_product_fl(&x.u, &x.v).expect("validated index").get(&(x.w.clone(), x.d.clone()))
}

/// Classical `σ_u · σ_v` in `H*(Fl_n)`: the coefficient of `σ_w` is the
/// constant term of `∂_w(𝔖_u 𝔖_v)`.
pub fn classical_product_fl(u: &Permutation, v: &Permutation) -> Result<FlTable> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::SizeMismatch(n, v.n()));
    }
    let data = flag_data(n);
    let product = data.classical[u].mul(&data.classical[v]);
    let target = u.length() + v.length();
    let mut table = FlTable::new();
    for w in all_permutations(n).into_iter().filter(|w| w.length() == target) {
        let mut poly = product.clone();
        let mut cur = w.clone();
        while let Some(i) = (1..n).find(|&i| cur.at(i) > cur.at(i + 1)) {
            poly = poly.divided_difference(i);
            cur = cur.swap_positions(i, i + 1);
        }
        table.add((w, DegreeVector::zero(n - 1)), poly.constant_term());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perms::perm;
    use crate::shapes::part;

    fn ctx(m: usize, r: usize) -> RectContext {
        RectContext::new(m, r).unwrap()
    }

    #[test]
    fn lr_small() {
        assert_eq!(classical_lr(&part(&[1]), &part(&[1]), &part(&[2])), 1);
        assert_eq!(classical_lr(&part(&[1]), &part(&[1]), &part(&[1, 1])), 1);
        assert_eq!(classical_lr(&part(&[2, 1]), &part(&[]), &part(&[2, 1])), 1);
        assert_eq!(classical_lr(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 2, 1])), 2);
        assert_eq!(classical_lr(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 3])), 1);
        assert_eq!(classical_lr(&part(&[2]), &part(&[1]), &part(&[2, 2])), 0);
    }

    #[test]
    fn running_example_product() {
        let expected = {
            let mut t = GrTable::new();
            t.add((part(&[1, 1]), 1), 1);
            t.add((part(&[2]), 1), 1);
            t
        };
        let c = ctx(3, 2);
        assert_eq!(quantum_product_gr(&part(&[2, 2, 1]), &part(&[1, 1]), c).unwrap(), expected);
        assert_eq!(quantum_product_gr_pieri(&part(&[2, 2, 1]), &part(&[1, 1]), c).unwrap(), expected);
    }

    #[test]
    fn small_grassmannians() {
        let g12 = ctx(1, 1);
        let expected = GrTable::singleton((Partition::empty(), 1), 1);
        assert_eq!(quantum_product_gr(&part(&[1]), &part(&[1]), g12).unwrap(), expected);
        assert_eq!(quantum_pieri_gr(1, &part(&[1]), g12).unwrap(), expected);
        let g24 = ctx(2, 2);
        let mut t = GrTable::new();
        t.add((part(&[2, 2]), 0), 1);
        t.add((Partition::empty(), 1), 1);
        assert_eq!(quantum_product_gr(&part(&[1]), &part(&[2, 1]), g24).unwrap(), t);
        assert_eq!(quantum_product_gr_pieri(&part(&[1]), &part(&[2, 1]), g24).unwrap(), t);
    }

    #[test]
    fn monk_small() {
        let s1 = perm(&[2, 1]);
        let table = quantum_monk_fl(1, &s1);
        assert_eq!(table, FlTable::singleton((Permutation::identity(2), DegreeVector::new(vec![1])), 1));
        let id = Permutation::identity(4);
        assert_eq!(quantum_monk_fl(2, &id), FlTable::singleton((perm(&[1, 3, 2, 4]), DegreeVector::zero(3)), 1));
    }

    #[test]
    fn schubert_polys_small() {
        let s = schubert_poly(&perm(&[1, 3, 2]));
        // x_1 + x_2
        assert_eq!(s.terms().count(), 2);
        let q = quantum_schubert_poly(&perm(&[3, 2, 1]));
        assert_eq!(q.at_q_zero(), schubert_poly(&perm(&[3, 2, 1])));
        assert!(q != q.at_q_zero());
    }

    #[test]
    fn running_example_flag_coefficient() {
        let table = quantum_product_fl(&perm(&[1, 3, 2, 4, 5]), &perm(&[2, 5, 1, 3, 4])).unwrap();
        assert_eq!(table.get(&(perm(&[2, 1, 5, 3, 4]), DegreeVector::new(vec![0, 1, 0, 0]))), 1);
        let table = quantum_product_fl(&perm(&[1, 2, 4, 3, 5]), &perm(&[2, 3, 5, 1, 4])).unwrap();
        assert_eq!(table.get(&(perm(&[2, 3, 1, 5, 4]), DegreeVector::new(vec![0, 0, 1, 0]))), 1);
    }

    #[test]
    fn unit_and_q_zero() {
        for u in all_permutations(3) {
            let id = Permutation::identity(3);
            let t = quantum_product_fl(&id, &u).unwrap();
            assert_eq!(t, FlTable::singleton((u.clone(), DegreeVector::zero(2)), 1));
            for v in all_permutations(3) {
                let q = quantum_product_fl(&u, &v).unwrap();
                let classical = classical_product_fl(&u, &v).unwrap();
                assert_eq!(q.filtered(|(_, d)| d.is_zero()), classical, "{u:?} * {v:?}");
            }
        }
    }

    #[test]
    fn json_tables() {
        let c = ctx(3, 2);
        let t = quantum_product_gr(&part(&[2, 2, 1]), &part(&[1, 1]), c).unwrap();
        assert_eq!(
            serde_json::to_string(&GrTableRecord::new(&t, c)).unwrap(),
            r#"{"ring":"QH_Gr","m":3,"n":5,"terms":[{"nu":"1,1","d":1,"c":1},{"nu":"2","d":1,"c":1}]}"#
        );
    }
}
