//! Permutations in one-line notation, inversion and descent statistics,
//! Grassmann permutations, parabolic longest elements, the `ζ`/`λ̃`/`λ̃↓`
//! maps and their partial inverse `φ_j`.
//!
//! Positions and values are 1-based, as in window notation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{complement, reduce_irreducible, Partition, RectContext};

/// A permutation of `1..=n` stored as its window `[w(1), …, w(n)]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    window: Vec<usize>,
}

impl Permutation {
    pub fn new(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &x in &window {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotPermutation { window, n });
            }
            seen[x] = true;
        }
        Ok(Permutation { window })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { window: (1..=n).collect() }
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        inv_sequence(self).iter().sum()
    }

    pub fn inverse(&self) -> Permutation {
        let mut window = vec![0; self.n()];
        for (i, &x) in self.window.iter().enumerate() {
            window[x - 1] = i + 1;
        }
        Permutation { window }
    }

    /// `w · (a b)`: swaps the entries in positions `a` and `b`.
    pub fn swap_positions(&self, a: usize, b: usize) -> Permutation {
        let mut window = self.window.clone();
        window.swap(a - 1, b - 1);
        Permutation { window }
    }

    /// Compact form without separators; only used when every entry is a single digit.
    pub fn to_digits(&self) -> Option<String> {
        (self.n() <= 9).then(|| self.window.iter().map(|x| x.to_string()).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.window.iter().map(|x| x.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts "2,3,5,1,4" or, for `n ≤ 9`, the digit form "23514".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        let window = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("digit {c:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        if !s.contains(',') && window.len() > 9 {
            return Err(Error::Parse("digit form is only accepted for n ≤ 9".into()));
        }
        Permutation::new(window)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

/// Shorthand for tests and examples. Panics on invalid input.
pub fn perm(window: &[usize]) -> Permutation {
    Permutation::new(window.to_vec()).expect("valid permutation window")
}

/// An integer vector indexed by `1..=n−1`: a degree, a descent vector or `𝐝̃`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DegreeVector {
    entries: Vec<i64>,
}

impl DegreeVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DegreeVector { entries }
    }

    pub fn zero(len: usize) -> Self {
        DegreeVector { entries: vec![0; len] }
    }

    /// `ε_i` of length `len`; `ε_0` and `ε_{len+1}` are zero.
    pub fn unit(i: usize, len: usize) -> Self {
        let mut v = DegreeVector::zero(len);
        if (1..=len).contains(&i) {
            v.entries[i - 1] = 1;
        }
        v
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `i` (1-based), zero outside `1..=len`.
    pub fn get(&self, i: i64) -> i64 {
        if i < 1 {
            return 0;
        }
        self.entries.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// `|𝐝|`.
    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn reversed(&self) -> DegreeVector {
        DegreeVector { entries: self.entries.iter().rev().copied().collect() }
    }

    pub fn add(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &DegreeVector) -> DegreeVector {
        DegreeVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    /// The palindromic vector `(0^{c−d}, 1, …, d−1, d, d−1, …, 1, 0^{len−c−d+1})`
    /// peaking at position `c`.
    pub fn palindrome(center: usize, d: usize, len: usize) -> DegreeVector {
        let entries = (1..=len).map(|i| (d as i64 - (i as i64 - center as i64).abs()).max(0)).collect();
        DegreeVector { entries }
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl fmt::Debug for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for DegreeVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(DegreeVector::default());
        }
        let entries = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(DegreeVector { entries })
    }
}

impl TryFrom<String> for DegreeVector {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DegreeVector> for String {
    fn from(d: DegreeVector) -> String {
        d.to_string()
    }
}

/// `Inv_i(w) = #{j > i : w_i > w_j}` for `i = 1..=n`.
pub fn inv_sequence(w: &Permutation) -> Vec<usize> {
    let win = w.window();
    (0..win.len()).map(|i| win[i + 1..].iter().filter(|&&x| x < win[i]).count()).collect()
}

/// Descent positions `i ∈ [n−1]` with `w_i > w_{i+1}`, increasing.
pub fn descents(w: &Permutation) -> Vec<usize> {
    w.window().windows(2).enumerate().filter(|(_, p)| p[0] > p[1]).map(|(i, _)| i + 1).collect()
}

/// `𝒟(w) = Σ_{i ∈ D(w)} ε_i`.
pub fn descent_vector(w: &Permutation) -> DegreeVector {
    let len = w.n().saturating_sub(1);
    let mut entries = vec![0; len];
    for i in descents(w) {
        entries[i - 1] = 1;
    }
    DegreeVector::new(entries)
}

/// `(uv)(i) = u(v(i))`.
pub fn compose(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch(u.n(), v.n()));
    }
    Ok(Permutation { window: v.window().iter().map(|&x| u.at(x)).collect() })
}

/// `w' = w₀ w w₀`, i.e. `w'(n+1−i) = n+1−w(i)`.
pub fn conjugate(w: &Permutation) -> Permutation {
    let n = w.n();
    Permutation { window: w.window().iter().rev().map(|&x| n + 1 - x).collect() }
}

/// The longest element `[n, …, 1]`.
pub fn w0(n: usize) -> Permutation {
    Permutation { window: (1..=n).rev().collect() }
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::Range { arg: "m", value: m as i64, range: format!("1..{n}") });
    }
    Ok(())
}

/// `w₀^P = [m ⋯ 1 | n ⋯ m+1]`.
pub fn w0_p(m: usize, n: usize) -> Result<Permutation> {
    check_mn(m, n)?;
    let window = (1..=m).rev().chain((m + 1..=n).rev()).collect();
    Ok(Permutation { window })
}

/// Reverses positions `i..=j+1`; the identity when `i > j`.
fn reversal(i: i64, j: i64, n: usize) -> Permutation {
    let mut w = Permutation::identity(n);
    if i <= j {
        let (lo, hi) = (i as usize - 1, j as usize);
        w.window[lo..=hi].reverse();
    }
    w
}

/// `w₀^{P_{ij}} = [1 ⋯ i−1 | j+1 ⋯ i | j+2 ⋯ n]`; the identity when `i > j`.
pub fn w0_interval(i: usize, j: usize, n: usize) -> Result<Permutation> {
    if i <= j && (i == 0 || j >= n) {
        return Err(Error::Range { arg: "j", value: j as i64, range: format!("i..{n} with i ≥ 1") });
    }
    Ok(reversal(i as i64, j as i64, n))
}

/// `w₀^{P'_d} = [m−d ⋯ 1 | m ⋯ m−d+1 | m+d ⋯ m+1 | n ⋯ m+d+1]`, built as the
/// product of four interval reversals.
pub fn w0_p_prime(m: usize, n: usize, d: usize) -> Result<Permutation> {
    check_mn(m, n)?;
    if d > m.min(n - m) {
        return Err(Error::Range { arg: "d", value: d as i64, range: format!("0..={}", m.min(n - m)) });
    }
    let (m, d, k) = (m as i64, d as i64, n as i64 - 1);
    let factors = [
        reversal(1, m - d - 1, n),
        reversal(m - d + 1, m - 1, n),
        reversal(m + 1, m + d - 1, n),
        reversal(m + d + 1, k, n),
    ];
    let mut w = Permutation::identity(n);
    for f in &factors {
        w = compose(&w, f)?;
    }
    Ok(w)
}

/// `w_λ(i) = λ_{m−i+1} + i` for `i ≤ m`, remaining values increasing.
pub fn grassmann_from_partition(lambda: &Partition, ctx: RectContext) -> Result<Permutation> {
    ctx.check(lambda)?;
    let (m, n) = (ctx.m(), ctx.n());
    let mut window: Vec<usize> = (1..=m).map(|i| lambda.part(m - i + 1) + i).collect();
    let mut used = vec![false; n + 1];
    for &x in &window {
        used[x] = true;
    }
    window.extend((1..=n).filter(|&x| !used[x]));
    Ok(Permutation { window })
}

/// `λ_w = (w(m)−m, …, w(1)−1)` for `w` with descents contained in `{m}`.
pub fn partition_from_grassmann(w: &Permutation, m: usize) -> Result<Partition> {
    let n = w.n();
    if m > n {
        return Err(Error::Range { arg: "m", value: m as i64, range: format!("0..={n}") });
    }
    let found = descents(w);
    if found.iter().any(|&i| i != m) {
        return Err(Error::Descents { window: w.to_string(), found, expected: format!("a subset of {{{m}}}") });
    }
    Partition::new((1..=m).rev().map(|i| w.at(i) - i).collect())
}

/// `ζ_i = Inv_i(w₀ w) + C(n−i, 2)` for `i = 1..=n−1`, returned raw (exactly `k` entries).
pub fn zeta(w: &Permutation) -> Vec<usize> {
    let n = w.n();
    let inv = inv_sequence(&compose(&w0(n), w).expect("same size"));
    (1..n).map(|i| inv[i - 1] + (n - i) * (n - i - 1) / 2).collect()
}

/// `λ̃_w = ζ(w)′`.
pub fn lambda_tilde(w: &Permutation) -> Partition {
    Partition::new(zeta(w)).expect("ζ is weakly decreasing").transpose()
}

/// `λ̃↓_w`: `λ̃_w` with every k-rectangle removed.
pub fn lambda_tilde_down(w: &Permutation) -> Partition {
    let k = w.n().saturating_sub(1);
    reduce_irreducible(&lambda_tilde(w), k).expect("λ̃ is k-bounded").0
}

/// `φ_j(η) = w_{(η^{∨_j})′} ∈ S_n^j` for `η ⊆ (j^{n−j})`.
pub fn varphi(eta: &Partition, j: usize, n: usize) -> Result<Permutation> {
    check_mn(j, n)?;
    if let Some(row) = eta.parts().iter().position(|&p| p > j) {
        return Err(Error::OutOfDomain(format!(
            "row {} of {eta} has length {} > {j}, so it is not contained in ({j}^{})",
            row + 1,
            eta.part(row + 1),
            n - j
        )));
    }
    if eta.len() > n - j {
        return Err(Error::OutOfDomain(format!(
            "row {} of {eta} lies outside ({j}^{}), which has {} rows",
            n - j + 1,
            n - j,
            n - j
        )));
    }
    let inner = RectContext::new(n - j, j)?;
    let dual = complement(eta, inner)?.transpose();
    grassmann_from_partition(&dual, RectContext::new(j, n - j)?)
}

/// Splits `w` with `D(w) = {a, b}` into `(w², w¹)` with `w² ∈ S_n^a`,
/// `w¹ ∈ S_n^b`, `w¹` fixing `[a]` and `w = w² w¹`.
pub fn factor_two_descents(w: &Permutation) -> Result<(Permutation, Permutation)> {
    let found = descents(w);
    if found.len() != 2 {
        return Err(Error::Descents { window: w.to_string(), found, expected: "exactly two descents".into() });
    }
    let a = found[0];
    let win = w.window();
    let mut tail: Vec<usize> = win[a..].to_vec();
    tail.sort_unstable();
    let w2: Vec<usize> = win[..a].iter().copied().chain(tail.iter().copied()).collect();
    let mut w1: Vec<usize> = (1..=a).collect();
    w1.extend(win[a..].iter().map(|x| a + 1 + tail.binary_search(x).expect("entry of tail")));
    Ok((Permutation { window: w2 }, Permutation { window: w1 }))
}

/// `𝐝̃ = Σ d_i (ε_{i−1} − 2ε_i + ε_{i+1})`.
pub fn tilde_d(d: &DegreeVector) -> DegreeVector {
    let entries = (1..=d.len() as i64).map(|j| d.get(j - 1) - 2 * d.get(j) + d.get(j + 1)).collect();
    DegreeVector::new(entries)
}

/// Every permutation of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut window: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { window: window.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| window[i - 1] < window[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| window[j] > window[i - 1]).expect("pivot has a successor");
        window.swap(i - 1, j);
        window[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::part;

    fn ctx(m: usize, r: usize) -> RectContext {
        RectContext::new(m, r).unwrap()
    }

    #[test]
    fn inversions() {
        assert_eq!(inv_sequence(&perm(&[2, 5, 1, 3, 4])), vec![1, 3, 0, 0, 0]);
        assert_eq!(inv_sequence(&perm(&[4, 5, 1, 3, 2])), vec![3, 3, 0, 1, 0]);
        assert_eq!(inv_sequence(&Permutation::identity(4)), vec![0; 4]);
        assert_eq!(w0(6).length(), 15);
    }

    #[test]
    fn descent_sets() {
        assert_eq!(descents(&perm(&[2, 1, 5, 3, 4])), vec![1, 3]);
        assert_eq!(descent_vector(&perm(&[2, 1, 5, 3, 4])), DegreeVector::new(vec![1, 0, 1, 0]));
        assert_eq!(descents(&perm(&[2, 3, 5, 1, 4])), vec![3]);
        assert!(descent_vector(&Permutation::identity(5)).is_zero());
    }

    #[test]
    fn longest_elements() {
        assert_eq!(w0_p(3, 5).unwrap(), perm(&[3, 2, 1, 5, 4]));
        assert_eq!(w0_p_prime(3, 5, 1).unwrap(), perm(&[2, 1, 3, 4, 5]));
        assert_eq!(w0_p_prime(4, 9, 2).unwrap(), perm(&[2, 1, 4, 3, 6, 5, 9, 8, 7]));
        for m in 1..6 {
            assert_eq!(w0_p_prime(m, 6, 0).unwrap(), w0_p(m, 6).unwrap());
        }
        assert_eq!(w0_interval(2, 3, 5).unwrap(), perm(&[1, 4, 3, 2, 5]));
        assert!(w0_interval(4, 2, 5).unwrap().is_identity());
        assert!(w0_p_prime(2, 5, 3).is_err());
    }

    #[test]
    fn grassmann_bijection() {
        assert_eq!(grassmann_from_partition(&part(&[2, 1, 1]), ctx(3, 2)).unwrap(), perm(&[2, 3, 5, 1, 4]));
        assert_eq!(grassmann_from_partition(&part(&[1]), ctx(3, 2)).unwrap(), perm(&[1, 2, 4, 3, 5]));
        assert!(grassmann_from_partition(&Partition::empty(), ctx(3, 2)).unwrap().is_identity());
        assert_eq!(partition_from_grassmann(&perm(&[2, 3, 5, 1, 4]), 3).unwrap(), part(&[2, 1, 1]));
        assert!(partition_from_grassmann(&perm(&[2, 1, 5, 3, 4]), 3).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(conjugate(&perm(&[2, 3, 1, 5, 4])), perm(&[2, 1, 5, 3, 4]));
        assert_eq!(conjugate(&perm(&[1, 2, 4, 3, 5])), perm(&[1, 3, 2, 4, 5]));
        assert!(conjugate(&Permutation::identity(4)).is_identity());
    }

    #[test]
    fn composition() {
        let w2 = perm(&[5, 9, 1, 2, 3, 4, 6, 7, 8]);
        let w1 = perm(&[1, 2, 4, 6, 7, 8, 9, 3, 5]);
        assert_eq!(compose(&w2, &w1).unwrap(), perm(&[5, 9, 2, 4, 6, 7, 8, 1, 3]));
        assert_eq!(compose(&perm(&[2, 1, 3, 4, 5]), &perm(&[1, 2, 5, 3, 4])).unwrap(), perm(&[2, 1, 5, 3, 4]));
        assert!(compose(&w2, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn zeta_and_reduction() {
        let w = perm(&[2, 1, 5, 3, 4]);
        assert_eq!(zeta(&w), vec![9, 6, 1, 1]);
        assert_eq!(lambda_tilde_down(&w), part(&[2, 2, 1, 1, 1]));
        let v = perm(&[2, 5, 1, 3, 4]);
        assert_eq!(zeta(&v), vec![9, 3, 3, 1]);
        assert_eq!(lambda_tilde(&v), part(&[4, 3, 3, 1, 1, 1, 1, 1, 1]));
        assert_eq!(lambda_tilde_down(&v), part(&[1, 1]));
        let n = 6;
        let expected: Vec<usize> = (1..n).map(|i| (n - i) + (n - i) * (n - i - 1) / 2).collect();
        assert_eq!(zeta(&Permutation::identity(n)), expected);
    }

    #[test]
    fn varphi_examples() {
        assert_eq!(varphi(&part(&[1, 1]), 2, 5).unwrap(), perm(&[2, 5, 1, 3, 4]));
        assert_eq!(varphi(&part(&[2, 2]), 3, 5).unwrap(), perm(&[1, 2, 5, 3, 4]));
        assert_eq!(varphi(&part(&[1, 1, 1]), 1, 5).unwrap(), perm(&[2, 1, 3, 4, 5]));
        let err = varphi(&part(&[3, 1]), 2, 5).unwrap_err();
        assert!(err.to_string().contains("row 1"), "{err}");
        let err = varphi(&part(&[1, 1, 1, 1]), 2, 5).unwrap_err();
        assert!(err.to_string().contains("row 4"), "{err}");
    }

    #[test]
    fn two_descent_factorization() {
        let (w2, w1) = factor_two_descents(&perm(&[5, 9, 2, 4, 6, 7, 8, 1, 3])).unwrap();
        assert_eq!(w2, perm(&[5, 9, 1, 2, 3, 4, 6, 7, 8]));
        assert_eq!(w1, perm(&[1, 2, 4, 6, 7, 8, 9, 3, 5]));
        let (w2, w1) = factor_two_descents(&perm(&[2, 1, 5, 3, 4])).unwrap();
        assert_eq!((w2, w1), (perm(&[2, 1, 3, 4, 5]), perm(&[1, 2, 5, 3, 4])));
        assert!(factor_two_descents(&perm(&[2, 3, 5, 1, 4])).is_err());
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde_d(&DegreeVector::new(vec![0, 1, 0, 0])), DegreeVector::new(vec![1, -2, 1, 0]));
        assert!(tilde_d(&DegreeVector::zero(4)).is_zero());
        // palindromic t-vector centered at r: ε_{r−t} − 2ε_r + ε_{r+t}
        let (r, t, k) = (4, 2, 8);
        let expected = DegreeVector::unit(r - t, k)
            .add(&DegreeVector::unit(r + t, k))
            .sub(&DegreeVector::unit(r, k).add(&DegreeVector::unit(r, k)));
        assert_eq!(tilde_d(&DegreeVector::palindrome(r, t, k)), expected);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("23514".parse::<Permutation>().unwrap(), perm(&[2, 3, 5, 1, 4]));
        assert_eq!("2,3,5,1,4".parse::<Permutation>().unwrap(), perm(&[2, 3, 5, 1, 4]));
        assert!("2235".parse::<Permutation>().is_err());
        assert_eq!(all_permutations(4).len(), 24);
    }
}
