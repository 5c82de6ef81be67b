//! Index correspondences between quantum Littlewood–Richardson coefficients
//! of Grassmannians, complete flag varieties and the affine Grassmannian.
//!
//! Everything here rewrites index tuples; coefficient values live in
//! [`crate::oracle`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perms::{
    compose, conjugate, descent_vector, grassmann_from_partition, lambda_tilde_down, tilde_d, varphi, w0_p, w0_p_prime,
    DegreeVector, Permutation,
};
use crate::shapes::{
    add_rim_hooks, complement, cycle_partition, peel_rim_hooks, split_eta, t_of_shape, Partition, RectContext,
};

/// Index of `c_{λ,μ}^{ν,d}` in `QH*(Gr(m, n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrIndex {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub d: usize,
    pub ctx: RectContext,
}

impl GrIndex {
    /// Checks containment in `R_r` and `|λ| + |μ| = |ν| + n·d`.
    pub fn new(lambda: Partition, mu: Partition, nu: Partition, d: usize, ctx: RectContext) -> Result<Self> {
        for p in [&lambda, &mu, &nu] {
            ctx.check(p)?;
        }
        let lhs = (lambda.size() + mu.size()) as i64;
        let rhs = (nu.size() + ctx.n() * d) as i64;
        if lhs != rhs {
            return Err(Error::DegreeBalance { lhs, rhs });
        }
        Ok(GrIndex { lambda, mu, nu, d, ctx })
    }

    /// `diag₀(ν^∨) − d`; negative values lie outside the strange-duality domain.
    pub fn t(&self) -> i64 {
        let delta = complement(&self.nu, self.ctx).expect("ν fits").diag0();
        delta as i64 - self.d as i64
    }
}

impl fmt::Display for GrIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({:?}, {:?}, {:?}, d={})", self.ctx, self.lambda, self.mu, self.nu, self.d)
    }
}

/// Index of `c_{u,v}^{w,𝐝}` in `QH*(Fl_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlIndex {
    pub u: Permutation,
    pub v: Permutation,
    pub w: Permutation,
    pub d: DegreeVector,
}

impl FlIndex {
    /// Checks sizes, `𝐝 ≥ 0` and `ℓ(u) + ℓ(v) = ℓ(w) + 2|𝐝|`.
    pub fn new(u: Permutation, v: Permutation, w: Permutation, d: DegreeVector) -> Result<Self> {
        let n = u.n();
        for p in [&v, &w] {
            if p.n() != n {
                return Err(Error::SizeMismatch(n, p.n()));
            }
        }
        if d.len() + 1 != n {
            return Err(Error::SizeMismatch(d.len() + 1, n));
        }
        if !d.is_nonnegative() {
            return Err(Error::OutOfDomain(format!("degree {d} has a negative entry")));
        }
        let lhs = (u.length() + v.length()) as i64;
        let rhs = w.length() as i64 + 2 * d.total();
        if lhs != rhs {
            return Err(Error::DegreeBalance { lhs, rhs });
        }
        Ok(FlIndex { u, v, w, d })
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }
}

impl fmt::Display for FlIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?}, {:?})", self.u, self.v, self.w, self.d)
    }
}

/// Index of `C_{λ,μ}^{η,(k)}` for k-Schur functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffIndex {
    pub lambda: Partition,
    pub mu: Partition,
    pub eta: Partition,
    pub k: usize,
}

impl AffIndex {
    /// Checks that all three shapes are k-bounded and `|λ| + |μ| = |η|`.
    pub fn new(lambda: Partition, mu: Partition, eta: Partition, k: usize) -> Result<Self> {
        for p in [&lambda, &mu, &eta] {
            if p.width() > k {
                return Err(Error::NotKBounded(p.to_string(), k));
            }
        }
        let lhs = (lambda.size() + mu.size()) as i64;
        let rhs = eta.size() as i64;
        if lhs != rhs {
            return Err(Error::DegreeBalance { lhs, rhs });
        }
        Ok(AffIndex { lambda, mu, eta, k })
    }
}

impl fmt::Display for AffIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}: ({:?}, {:?}, {:?})", self.k, self.lambda, self.mu, self.eta)
    }
}

/// `Γ_SD`: `(λ, μ, ν, d) ↦ (λ^∨, μ^∨, φ^r(ν)^∨, t)` with `t = diag₀(ν^∨) − d`.
pub fn gamma_sd(x: &GrIndex) -> Result<GrIndex> {
    let t = x.t();
    if t < 0 {
        return Err(Error::OutOfDomain(format!("t = diag0(nu^vee) - d = {t} < 0 for {x}")));
    }
    let ctx = x.ctx;
    let rho = cycle_partition(&x.nu, ctx.r(), ctx)?;
    GrIndex::new(complement(&x.lambda, ctx)?, complement(&x.mu, ctx)?, complement(&rho, ctx)?, t as usize, ctx)
}

/// `𝐝_B = (0^{m−d}, 1, …, d, …, 1, 0^{r−d})`.
pub fn d_b(m: usize, n: usize, d: usize) -> DegreeVector {
    DegreeVector::palindrome(m, d, n - 1)
}

/// `Ψ_PC`: `(w_λ, w_μ, w_ν w₀^P w₀^{P'_d}, 𝐝_B)`.
pub fn psi_pc(x: &GrIndex) -> Result<FlIndex> {
    let ctx = x.ctx;
    let (m, n) = (ctx.m(), ctx.n());
    if x.d > m.min(ctx.r()) {
        return Err(Error::Range { arg: "d", value: x.d as i64, range: format!("0..={}", m.min(ctx.r())) });
    }
    let u = grassmann_from_partition(&x.lambda, ctx)?;
    let v = grassmann_from_partition(&x.mu, ctx)?;
    let w_nu = grassmann_from_partition(&x.nu, ctx)?;
    let w = compose(&compose(&w_nu, &w0_p(m, n)?)?, &w0_p_prime(m, n, x.d)?)?;
    FlIndex::new(u, v, w, d_b(m, n, x.d))
}

/// `Γ_T`: conjugate every permutation by `w₀` and reverse the degree.
pub fn gamma_t(x: &FlIndex) -> Result<FlIndex> {
    FlIndex::new(conjugate(&x.u), conjugate(&x.v), conjugate(&x.w), x.d.reversed())
}

/// `Φ_Gr`: `(λ, μ, ν, d) ↦ (λ, μ, ν ⊕ d)` with `k = n − 1`.
pub fn phi_gr(x: &GrIndex) -> Result<AffIndex> {
    let eta = add_rim_hooks(&x.nu, x.d, x.ctx)?;
    AffIndex::new(x.lambda.clone(), x.mu.clone(), eta, x.ctx.k())
}

/// `φ_j` extended to the degenerate rectangles `j = 0` and `j = n`, where
/// only the empty shape fits and the permutation is the identity.
fn varphi_ext(eta: &Partition, j: usize, n: usize) -> Result<Permutation> {
    if (j == 0 || j == n) && eta.is_empty() {
        return Ok(Permutation::identity(n));
    }
    varphi(eta, j, n)
}

/// `Φ_Fl`: recovers `(ν, d)` from `η = ν ⊕ d` and returns
/// `(φ_r(λ), φ_r(μ), φ_{r−t}(η²) φ_{r+t}(η¹), 𝐭)`.
pub fn phi_fl(x: &AffIndex, ctx: RectContext) -> Result<FlIndex> {
    if x.k != ctx.k() {
        return Err(Error::SizeMismatch(x.k, ctx.k()));
    }
    let (r, n) = (ctx.r(), ctx.n());
    for p in [&x.lambda, &x.mu] {
        ctx.check(p)?;
    }
    // rejects η outside the image of Φ_Gr
    peel_rim_hooks(&x.eta, ctx)?;
    let t = t_of_shape(&x.eta, ctx);
    let (eta1, eta2) = split_eta(&x.eta, t, ctx)?;
    let u = varphi(&x.lambda, r, n)?;
    let v = varphi(&x.mu, r, n)?;
    let w = compose(&varphi_ext(&eta2, r - t, n)?, &varphi_ext(&eta1, r + t, n)?)?;
    FlIndex::new(u, v, w, DegreeVector::palindrome(r, t, n - 1))
}

/// `Φ_Fl⁻¹`: `(λ̃↓_u, λ̃↓_v, λ̃↓_w)`, defined when `𝐝̃ = 𝒟(w) − 𝒟(u) − 𝒟(v)`.
pub fn phi_fl_inv(x: &FlIndex) -> Result<AffIndex> {
    let tilde = tilde_d(&x.d);
    let descent = descent_vector(&x.w).sub(&descent_vector(&x.u)).sub(&descent_vector(&x.v));
    if tilde != descent {
        return Err(Error::TildeMismatch { tilde: tilde.entries().to_vec(), descent: descent.entries().to_vec() });
    }
    AffIndex::new(lambda_tilde_down(&x.u), lambda_tilde_down(&x.v), lambda_tilde_down(&x.w), x.n() - 1)
}

/// Both routes around the commuting pentagon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pentagon {
    /// `Γ_T ∘ Ψ_PC ∘ Γ_SD`.
    pub left: FlIndex,
    /// `Φ_Fl ∘ Φ_Gr`.
    pub right: FlIndex,
}

impl Pentagon {
    pub fn commutes(&self) -> bool {
        self.left == self.right
    }
}

pub fn pentagon(x: &GrIndex) -> Result<Pentagon> {
    let left = gamma_t(&psi_pc(&gamma_sd(x)?)?)?;
    let right = phi_fl(&phi_gr(x)?, x.ctx)?;
    Ok(Pentagon { left, right })
}

/// Every Grassmannian index with degree balance and `d ≤ min(m, r)`.
pub fn gr_indices(ctx: RectContext) -> Vec<GrIndex> {
    let shapes = ctx.partitions();
    let n = ctx.n();
    let mut out = Vec::new();
    for lambda in &shapes {
        for mu in &shapes {
            let total = lambda.size() + mu.size();
            for nu in &shapes {
                if nu.size() > total || (total - nu.size()) % n != 0 {
                    continue;
                }
                let d = (total - nu.size()) / n;
                if d <= ctx.m().min(ctx.r()) {
                    out.push(GrIndex { lambda: lambda.clone(), mu: mu.clone(), nu: nu.clone(), d, ctx });
                }
            }
        }
    }
    out
}

/// A coroot `γ = Σ c_i α_i^∨` of type `A_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coroot {
    pub coeffs: Vec<i64>,
}

impl Coroot {
    pub fn from_degree(d: &DegreeVector) -> Self {
        Coroot { coeffs: d.entries().to_vec() }
    }

    fn coeff(&self, p: usize) -> i64 {
        if p == 0 {
            return 0;
        }
        self.coeffs.get(p - 1).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i + 1).collect()
    }

    /// Coordinates in `ℝⁿ`: `α_p^∨ = e_p − e_{p+1}`.
    pub fn euclidean(&self) -> Vec<i64> {
        let n = self.coeffs.len() + 1;
        (1..=n).map(|i| self.coeff(i) - self.coeff(i - 1)).collect()
    }
}

/// `⟨γ, α_{ij}⟩` for `α_{ij} = α_i + ⋯ + α_{j−1} = e_i − e_j`, via the
/// Cartan matrix `⟨α_p^∨, α_q⟩ = 2, −1, 0`.
pub fn pairing(gamma: &Coroot, i: usize, j: usize) -> i64 {
    let cartan = |p: usize, q: usize| match p.abs_diff(q) {
        0 => 2,
        1 => -1,
        _ => 0,
    };
    (i..j).map(|q| (1..=gamma.coeffs.len()).map(|p| gamma.coeff(p) * cartan(p, q)).sum::<i64>()).sum()
}

/// Outcome of checking that `𝐝_B` is the Peterson lift of degree `d` in `Gr(m, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_peterson_lift(m: usize, n: usize, d: usize) -> Result<LiftReport> {
    if m == 0 || m >= n || d > m.min(n - m) {
        return Err(Error::Range { arg: "d", value: d as i64, range: format!("m in 1..{n}, d ≤ min(m, n−m)") });
    }
    let gamma = Coroot::from_degree(&d_b(m, n, d));
    let mut report = LiftReport::default();
    let mut check = |ok: bool, what: String| {
        report.checks += 1;
        if !ok {
            report.violations.push(what);
        }
    };
    check(gamma.coeff(m) == d as i64, format!("coefficient of alpha_{m}^vee is {} != {d}", gamma.coeff(m)));
    let k = n - 1;
    for j in 1..=k {
        let expected = if d == 0 {
            0
        } else if j == m {
            2
        } else if j + d == m || j == m + d {
            -1
        } else {
            0
        };
        let got = pairing(&gamma, j, j + 1);
        check(got == expected, format!("<gamma_B, alpha_{j}> = {got}, expected {expected}"));
    }
    let blocks = [(1, m), (m + 1, n)];
    for (lo, hi) in blocks {
        for i in lo..=hi {
            for j in i + 1..=hi {
                let got = pairing(&gamma, i, j);
                check(matches!(got, 0 | -1), format!("<gamma_B, e_{i} - e_{j}> = {got} not in {{0, -1}}"));
            }
        }
    }
    Ok(report)
}

/// Text records for index tuples, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IndexRecord {
    Gr {
        m: usize,
        n: usize,
        lambda: Partition,
        mu: Partition,
        nu: Partition,
        d: usize,
    },
    Fl {
        n: usize,
        u: Permutation,
        v: Permutation,
        w: Permutation,
        d: DegreeVector,
    },
    Aff {
        k: usize,
        lambda: Partition,
        mu: Partition,
        eta: Partition,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
}

impl From<&GrIndex> for IndexRecord {
    fn from(x: &GrIndex) -> Self {
        IndexRecord::Gr {
            m: x.ctx.m(),
            n: x.ctx.n(),
            lambda: x.lambda.clone(),
            mu: x.mu.clone(),
            nu: x.nu.clone(),
            d: x.d,
        }
    }
}

impl From<&FlIndex> for IndexRecord {
    fn from(x: &FlIndex) -> Self {
        IndexRecord::Fl { n: x.n(), u: x.u.clone(), v: x.v.clone(), w: x.w.clone(), d: x.d.clone() }
    }
}

impl IndexRecord {
    pub fn from_aff(x: &AffIndex, m: Option<usize>) -> Self {
        IndexRecord::Aff { k: x.k, lambda: x.lambda.clone(), mu: x.mu.clone(), eta: x.eta.clone(), m }
    }

    pub fn to_gr(&self) -> Result<GrIndex> {
        match self {
            IndexRecord::Gr { m, n, lambda, mu, nu, d } => {
                GrIndex::new(lambda.clone(), mu.clone(), nu.clone(), *d, RectContext::from_mn(*m, *n)?)
            }
            other => Err(Error::Parse(format!("expected a gr record, got {}", other.kind()))),
        }
    }

    pub fn to_fl(&self) -> Result<FlIndex> {
        match self {
            IndexRecord::Fl { n, u, v, w, d } => {
                if u.n() != *n {
                    return Err(Error::SizeMismatch(*n, u.n()));
                }
                FlIndex::new(u.clone(), v.clone(), w.clone(), d.clone())
            }
            other => Err(Error::Parse(format!("expected a fl record, got {}", other.kind()))),
        }
    }

    /// The affine index and the row count `m`, if the record carries one.
    pub fn to_aff(&self) -> Result<(AffIndex, Option<usize>)> {
        match self {
            IndexRecord::Aff { k, lambda, mu, eta, m } => {
                Ok((AffIndex::new(lambda.clone(), mu.clone(), eta.clone(), *k)?, *m))
            }
            other => Err(Error::Parse(format!("expected an aff record, got {}", other.kind()))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            IndexRecord::Gr { .. } => "gr",
            IndexRecord::Fl { .. } => "fl",
            IndexRecord::Aff { .. } => "aff",
        }
    }
}
