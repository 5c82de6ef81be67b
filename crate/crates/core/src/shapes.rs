//! Partitions, rectangles, boundary bit strings, cycling, rim-hook addition
//! and k-rectangle reduction.
//!
//! Partitions are stored largest part first with trailing zeros stripped.
//! Row indices in doc comments are 1-based, with row 1 the longest row
//! (the bottom row when drawn in French notation).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted parts form a partition")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn width(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// The first `len` parts, zero padded.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        (1..=len).map(|i| self.part(i)).collect()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.width() <= cols
    }

    /// Column lengths.
    pub fn transpose(&self) -> Partition {
        let parts = (1..=self.width()).map(|j| self.parts.iter().take_while(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// Number of boxes on the main diagonal, `#{i : λ_i ≥ i}`.
    pub fn diag0(&self) -> usize {
        self.parts.iter().enumerate().take_while(|&(i, &p)| p > i).count()
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// Coordinatewise sum.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        let parts = (1..=len).map(|i| self.part(i) + other.part(i)).collect();
        Partition { parts }
    }

    fn shape_error(&self, rows: usize, cols: usize) -> Error {
        Error::NotContained { shape: self.to_string(), rows, cols }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; the empty string (or "0") is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// Shorthand for building a partition in tests and examples.
///
/// Panics if the parts are not weakly decreasing.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("weakly decreasing parts")
}

/// The ambient `m × r` rectangle of a Grassmannian `Gr(m, m + r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectContext {
    m: usize,
    r: usize,
}

impl RectContext {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        if m == 0 || r == 0 {
            return Err(Error::InvalidRect { m, r });
        }
        Ok(RectContext { m, r })
    }

    /// Context for `Gr(m, n)`.
    pub fn from_mn(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::Range { arg: "m", value: m as i64, range: format!("1..{n}") });
        }
        RectContext::new(m, n - m)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.m + self.r
    }

    pub fn k(&self) -> usize {
        self.n() - 1
    }

    /// The full rectangle `(r^m)`.
    pub fn rect(&self) -> Partition {
        Partition { parts: vec![self.r; self.m] }
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.fits_in(self.m, self.r)
    }

    pub fn check(&self, lambda: &Partition) -> Result<()> {
        if self.contains(lambda) {
            Ok(())
        } else {
            Err(lambda.shape_error(self.m, self.r))
        }
    }

    /// All partitions inside the rectangle, in lexicographic order of parts.
    pub fn partitions(&self) -> Vec<Partition> {
        partitions_in_box(self.m, self.r)
    }
}

impl fmt::Display for RectContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.m, self.n())
    }
}

/// Every partition with at most `rows` parts, each at most `cols`.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    fn go(rows: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).expect("decreasing prefix"));
        if prefix.len() == rows {
            return;
        }
        for p in 1..=max {
            prefix.push(p);
            go(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `λ^∨ = (r − λ_m, …, r − λ_1)`.
pub fn complement(lambda: &Partition, ctx: RectContext) -> Result<Partition> {
    ctx.check(lambda)?;
    let parts = (1..=ctx.m()).rev().map(|i| ctx.r() - lambda.part(i)).collect();
    Partition::new(parts)
}

pub fn transpose(lambda: &Partition) -> Partition {
    lambda.transpose()
}

pub fn diag0(lambda: &Partition) -> usize {
    lambda.diag0()
}

/// Boundary path of a partition inside its rectangle: 0 for a vertical step,
/// 1 for a horizontal step.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parse(format!("bit value {b}")));
        }
        Ok(BitString { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    pub fn ones(&self) -> usize {
        self.len() - self.zeros()
    }

    pub fn reversed(&self) -> BitString {
        BitString { bits: self.bits.iter().rev().copied().collect() }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("bit {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BitString { bits })
    }
}

/// Traces the boundary of `λ` from the upper-left corner of the rectangle.
pub fn to_bits(lambda: &Partition, ctx: RectContext) -> Result<BitString> {
    ctx.check(lambda)?;
    let mut bits = Vec::with_capacity(ctx.n());
    let mut x = 0;
    for i in (1..=ctx.m()).rev() {
        let p = lambda.part(i);
        bits.extend(std::iter::repeat_n(1, p - x));
        bits.push(0);
        x = p;
    }
    bits.extend(std::iter::repeat_n(1, ctx.r() - x));
    Ok(BitString { bits })
}

pub fn from_bits(b: &BitString, ctx: RectContext) -> Result<Partition> {
    let (zeros, ones) = (b.zeros(), b.ones());
    if zeros != ctx.m() || ones != ctx.r() {
        return Err(Error::BitCount { zeros, ones, m: ctx.m(), r: ctx.r() });
    }
    let mut x = 0;
    let mut rows_top_down = Vec::with_capacity(ctx.m());
    for &bit in b.bits() {
        if bit == 1 {
            x += 1;
        } else {
            rows_top_down.push(x);
        }
    }
    rows_top_down.reverse();
    Partition::new(rows_top_down)
}

/// Moves the first `a` bits (taken mod `n`) to the end.
pub fn cycle(b: &BitString, a: usize) -> BitString {
    let mut bits = b.bits.clone();
    if !bits.is_empty() {
        let shift = a % bits.len();
        bits.rotate_left(shift);
    }
    BitString { bits }
}

/// `φ^a(λ)`: the partition whose bit string is the `a`-fold cycle of `b_λ`.
pub fn cycle_partition(lambda: &Partition, a: usize, ctx: RectContext) -> Result<Partition> {
    from_bits(&cycle(&to_bits(lambda, ctx)?, a), ctx)
}

/// Closed form for `φ^r(ν)`: with `δ = diag₀(ν^∨)`,
/// `(ν_{m−δ+1}+δ, …, ν_m+δ, ν_1−r+δ, …, ν_{m−δ}−r+δ)`.
pub fn cycled_closed_form(nu: &Partition, ctx: RectContext) -> Result<Partition> {
    let (m, r) = (ctx.m(), ctx.r());
    let delta = complement(nu, ctx)?.diag0();
    let mut parts: Vec<usize> = (m - delta + 1..=m).map(|i| nu.part(i) + delta).collect();
    for i in 1..=m - delta {
        // ν_i ≥ r − δ for i ≤ m − δ
        parts.push(nu.part(i) + delta - r);
    }
    Partition::new(parts)
}

fn check_hook_degree(d: usize, ctx: RectContext) -> Result<()> {
    if d > ctx.r() {
        return Err(Error::Range { arg: "d", value: d as i64, range: format!("0..={}", ctx.r()) });
    }
    Ok(())
}

/// Adds one `n`-rim hook whose head (its cell in the longest affected row)
/// lies in column `r`, walking the outer rim cell by cell.
///
/// Returns `None` when no such hook exists.
fn insert_one_hook(parts: &[usize], r: usize, n: usize) -> Option<Vec<usize>> {
    let get = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    // Rows before the head row must already be full; rows are 0-based here.
    let head = parts.iter().take_while(|&&p| p >= r).count();
    if get(parts, head) >= r || parts.iter().any(|&p| p > r) {
        return None;
    }
    let mut out = parts.to_vec();
    let mut placed = 0;
    let mut row = head;
    loop {
        let old = get(parts, row);
        // The head row reaches column r; later rows overlap the previous row by one column.
        let new = if row == head { r } else { get(parts, row - 1) + 1 };
        placed += new - old;
        if row >= out.len() {
            out.resize(row + 1, 0);
        }
        out[row] = new;
        if placed >= n {
            return (placed == n).then_some(out);
        }
        row += 1;
    }
}

/// `ν ⊕ d` by inserting `d` rim hooks of length `n` one at a time.
pub fn add_rim_hooks_direct(nu: &Partition, d: usize, ctx: RectContext) -> Result<Partition> {
    ctx.check(nu)?;
    check_hook_degree(d, ctx)?;
    let mut parts = nu.parts().to_vec();
    for step in 0..d {
        parts = insert_one_hook(&parts, ctx.r(), ctx.n()).ok_or_else(|| {
            Error::OutOfDomain(format!("no {}-rim hook with head in column {} at step {step}", ctx.n(), ctx.r()))
        })?;
    }
    Partition::new(parts)
}

/// `ν ⊕ d` from the closed form
/// `(r^{d+a}, ν_{a+1}+d, …, ν_m+d, ν_1−r+d, …, ν_a−r+d)` with `a = ν'_{r−d}`
/// and `ν'_0 := m`.
pub fn add_rim_hooks_closed(nu: &Partition, d: usize, ctx: RectContext) -> Result<Partition> {
    ctx.check(nu)?;
    check_hook_degree(d, ctx)?;
    if d == 0 {
        return Ok(nu.clone());
    }
    let (m, r) = (ctx.m(), ctx.r());
    let a = if d == r { m } else { nu.transpose().part(r - d) };
    let mut parts = vec![r; d + a];
    parts.extend((a + 1..=m).map(|i| nu.part(i) + d));
    // ν_i ≥ r − d for i ≤ a
    parts.extend((1..=a).map(|i| nu.part(i) + d - r));
    Partition::new(parts)
}

/// `ν ⊕ d`, computed by direct insertion and checked against the closed form.
pub fn add_rim_hooks(nu: &Partition, d: usize, ctx: RectContext) -> Result<Partition> {
    let direct = add_rim_hooks_direct(nu, d, ctx)?;
    let closed = add_rim_hooks_closed(nu, d, ctx)?;
    assert_eq!(direct, closed, "rim-hook insertion disagrees with the closed form for {nu:?}, d = {d}, {ctx}");
    Ok(direct)
}

/// Inverts [`add_rim_hooks`]: finds `(ν, d)` with `ν ⊆ R_r` and `ν ⊕ d = η`.
///
/// Hooks are removed from full rows through the bead picture; every candidate
/// is confirmed by inserting the hooks back.
pub fn peel_rim_hooks(eta: &Partition, ctx: RectContext) -> Result<(Partition, usize)> {
    fn search(beads: &mut Vec<usize>, eta: &Partition, ctx: RectContext, d: usize) -> Option<(Partition, usize)> {
        let rows = beads.len();
        // bead i (0-based, decreasing) sits at part_i + rows - 1 - i
        let parts: Vec<usize> = beads.iter().enumerate().map(|(i, &b)| b + i + 1 - rows).collect();
        let nu = Partition::new(parts.clone()).ok()?;
        if d <= ctx.r() && ctx.contains(&nu) && add_rim_hooks_direct(&nu, d, ctx).ok().as_ref() == Some(eta) {
            return Some((nu, d));
        }
        if d >= ctx.r() {
            return None;
        }
        for i in 0..rows {
            if parts[i] != ctx.r() {
                break;
            }
            let q = beads[i];
            if q < ctx.n() || beads.contains(&(q - ctx.n())) {
                continue;
            }
            let saved = beads.clone();
            beads[i] = q - ctx.n();
            beads.sort_unstable_by(|a, b| b.cmp(a));
            if let Some(found) = search(beads, eta, ctx, d + 1) {
                return Some(found);
            }
            *beads = saved;
        }
        None
    }
    let domain = || Error::OutOfDomain(format!("{eta} is not of the form ν ⊕ d in {ctx}"));
    if eta.width() > ctx.r() {
        return Err(domain());
    }
    let rows = eta.len() + 1;
    let mut beads: Vec<usize> = (0..rows).map(|i| eta.part(i + 1) + rows - 1 - i).collect();
    search(&mut beads, eta, ctx, 0).ok_or_else(domain)
}

/// `diag₀` of the complement of the part of `η` inside `R_r`: the first `m`
/// parts, each capped at `r`.
pub fn t_of_shape(eta: &Partition, ctx: RectContext) -> usize {
    let inside = Partition::new(eta.padded(ctx.m()).into_iter().map(|p| p.min(ctx.r())).collect())
        .expect("capping keeps parts decreasing");
    complement(&inside, ctx).expect("capped shape fits").diag0()
}

/// `t` for `ν ⊕ d`.
pub fn t_of(nu: &Partition, d: usize, ctx: RectContext) -> Result<usize> {
    Ok(t_of_shape(&add_rim_hooks(nu, d, ctx)?, ctx))
}

/// Splits `ν ⊕ d` into its `m − t` largest parts and the rest.
pub fn split_eta(nu_plus_d: &Partition, t: usize, ctx: RectContext) -> Result<(Partition, Partition)> {
    if t > ctx.m() {
        return Err(Error::Range { arg: "t", value: t as i64, range: format!("0..={}", ctx.m()) });
    }
    let cut = (ctx.m() - t).min(nu_plus_d.len());
    let (low, high) = nu_plus_d.parts().split_at(cut);
    Ok((Partition::new(low.to_vec())?, Partition::new(high.to_vec())?))
}

/// `(ρ^{L^t}, ρ^{R^t})`: the columns of `ρ` above the `t × t` square, lowered
/// by `t`, and the columns to its right.
pub fn rho_split(rho: &Partition, t: usize) -> Result<(Partition, Partition)> {
    if t > 0 && rho.part(t) < t {
        return Err(Error::NotContained { shape: format!("({t}^{t})"), rows: rho.len(), cols: rho.width() });
    }
    let cols = rho.transpose();
    let left = Partition::new((1..=t).map(|j| cols.part(j) - t).collect())?.transpose();
    let right = Partition::new(cols.parts().iter().skip(t).copied().collect())?.transpose();
    Ok((left, right))
}

/// The k-rectangle `R_i = (i^{n−i})`.
pub fn k_rectangle(i: usize, n: usize) -> Result<Partition> {
    if i == 0 || i >= n {
        return Err(Error::Range { arg: "i", value: i as i64, range: format!("1..={}", n.saturating_sub(1)) });
    }
    Ok(Partition { parts: vec![i; n - i] })
}

/// Removes every removable k-rectangle. Returns the irreducible remainder and
/// the removed rectangle indices, largest first.
pub fn reduce_irreducible(mu: &Partition, k: usize) -> Result<(Partition, Vec<usize>)> {
    if mu.width() > k {
        return Err(Error::NotKBounded(mu.to_string(), k));
    }
    let n = k + 1;
    let mut kept = Vec::with_capacity(mu.len());
    let mut removed = Vec::new();
    for i in (1..=k).rev() {
        let mult = mu.parts().iter().filter(|&&p| p == i).count();
        let height = n - i;
        removed.extend(std::iter::repeat_n(i, mult / height));
        kept.extend(std::iter::repeat_n(i, mult % height));
    }
    Ok((Partition::new(kept)?, removed))
}

/// True if no k-rectangle can be removed.
pub fn is_irreducible(mu: &Partition, k: usize) -> bool {
    (1..=k).all(|i| mu.parts().iter().filter(|&&p| p == i).count() < k + 1 - i)
}
