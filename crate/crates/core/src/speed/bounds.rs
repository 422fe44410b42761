use serde::Serialize;

use crate::geometry::{centered_in_eigenbasis, geometry_report, same_level, tangent_in_eigenbasis, TangentOperator};
use crate::monotone::{clamped_mean, MeanProvider, MonotoneFunction};
use crate::operator::{check_dims, trace_of_product, DensityMatrix, HermitianOperator};
use crate::{Error, Result};

/// Below this the SLD coherent product is treated as zero.
pub const DEGENERATE_COHERENT: f64 = 1e-300;

/// Speed, both bounds and diagnostics for one `(ρ, ρ̇, A, f_β)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    /// `|ȧ|`
    pub speed: f64,
    /// `Δ^f A √I^f`
    pub bound_nonsplit: f64,
    /// `Δ^f A_C √I^f_C + ΔA_I √I_I`
    pub bound_split: f64,
    pub coherent_term: f64,
    pub incoherent_term: f64,
    /// `ξ^f`; absent when the SLD coherent product vanishes.
    pub xi: Option<f64>,
    /// `1 - speed / bound_split`, or 0 when the bound vanishes.
    pub saturation_gap: f64,
    pub beta: f64,
}

/// `ȧ = Tr[A ρ̇]`, signed.
pub fn observable_speed(rdot: &TangentOperator, a: &HermitianOperator) -> Result<f64> {
    check_dims(a.dim(), rdot.dim())?;
    Ok(trace_of_product(a.as_dmatrix(), rdot.as_dmatrix()).re)
}

/// `Δ^f A · √I^f`.
pub fn bound_nonsplit(
    rho: &DensityMatrix,
    rdot: &TangentOperator,
    a: &HermitianOperator,
    f: &MonotoneFunction,
) -> Result<f64> {
    let g = geometry_report(rho, rdot, a, f)?;
    Ok(g.var_f.sqrt() * g.qfi_f.sqrt())
}

/// Full report built around the split bound.
pub fn bound_split(
    rho: &DensityMatrix,
    rdot: &TangentOperator,
    a: &HermitianOperator,
    f: &MonotoneFunction,
) -> Result<BoundReport> {
    let speed = observable_speed(rdot, a)?.abs();
    let g = geometry_report(rho, rdot, a, f)?;
    let coherent_term = g.var_f_coherent.sqrt() * g.qfi_f_coherent.sqrt();
    let incoherent_term = g.var_incoherent.sqrt() * g.fisher_incoherent.sqrt();
    let bound_split = coherent_term + incoherent_term;
    let xi = CoherentProblem::new(rho, rdot, a)?.xi(f).ok();
    let saturation_gap = if bound_split > 0.0 { (1.0 - speed / bound_split).clamp(0.0, 1.0) } else { 0.0 };
    Ok(BoundReport {
        speed,
        bound_nonsplit: g.var_f.sqrt() * g.qfi_f.sqrt(),
        bound_split,
        coherent_term,
        incoherent_term,
        xi,
        saturation_gap,
        beta: f.beta(),
    })
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    p_i: f64,
    p_j: f64,
    // 2|(A_0)_ij|² and 2|ρ̇_ij|², i < j
    weight_a: f64,
    weight_r: f64,
}

/// The coherent data of `(ρ, ρ̇, A)` reduced to eigenvalue pairs, so the
/// coherent product `(Δ^f A_C)² I^f_C` costs `O(d²)` per metric.
#[derive(Clone, Debug)]
pub struct CoherentProblem {
    pairs: Vec<Pair>,
    sld_product: f64,
}

impl CoherentProblem {
    pub fn new(rho: &DensityMatrix, rdot: &TangentOperator, a: &HermitianOperator) -> Result<Self> {
        let a0 = centered_in_eigenbasis(rho, a)?;
        let r = tangent_in_eigenbasis(rho, rdot)?;
        let p = rho.eigenvalues();
        let mut pairs = Vec::new();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if same_level(p[i], p[j]) {
                    continue;
                }
                let weight_a = a0[(i, j)].norm_sqr() + a0[(j, i)].norm_sqr();
                let weight_r = r[(i, j)].norm_sqr() + r[(j, i)].norm_sqr();
                if weight_a > 0.0 || weight_r > 0.0 {
                    pairs.push(Pair { p_i: p[i], p_j: p[j], weight_a, weight_r });
                }
            }
        }
        let mut problem = CoherentProblem { pairs, sld_product: 0.0 };
        problem.sld_product = problem.product(&MonotoneFunction::SLD);
        Ok(problem)
    }

    /// `(Δ^f A_C)² · I^f_C`.
    pub fn product(&self, f: &dyn MeanProvider) -> f64 {
        let mut var = 0.0;
        let mut fisher = 0.0;
        for pair in &self.pairs {
            let m = clamped_mean(f, pair.p_i, pair.p_j);
            var += pair.weight_a * m;
            fisher += pair.weight_r / m;
        }
        var * fisher
    }

    pub fn sld_product(&self) -> f64 {
        self.sld_product
    }

    /// `ξ^f`.
    pub fn xi(&self, f: &dyn MeanProvider) -> Result<f64> {
        if !(self.sld_product >= DEGENERATE_COHERENT) {
            return Err(Error::DegenerateCoherentTerm(self.sld_product));
        }
        Ok(self.product(f) / self.sld_product)
    }
}

/// `ξ^f = (Δ^f A_C)² I^f_C / ((Δ^SLD A_C)² I^SLD_C)`.
pub fn coherent_ratio_xi(
    rho: &DensityMatrix,
    rdot: &TangentOperator,
    a: &HermitianOperator,
    f: &MonotoneFunction,
) -> Result<f64> {
    CoherentProblem::new(rho, rdot, a)?.xi(f)
}

/// Closed form of `ξ^f` for a qutrit whose observable only couples levels 0
/// and 1 in the eigenbasis, with `v_ij = 2|ρ̇_ij|²`.
pub fn xi_qutrit_closed_form(p: [f64; 3], v01: f64, v02: f64, v12: f64, f: &dyn MeanProvider) -> Result<f64> {
    if p.iter().any(|&x| !(x > 0.0)) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidDistribution(format!("{p:?} is not a strictly positive distribution")));
    }
    if [v01, v02, v12].iter().any(|&v| !(v >= 0.0)) {
        return Err(Error::InvalidParameter("v_ij must be non-negative".into()));
    }
    let weighted = |g: &dyn MeanProvider| {
        let m01 = clamped_mean(g, p[0], p[1]);
        let m02 = clamped_mean(g, p[0], p[2]);
        let m12 = clamped_mean(g, p[1], p[2]);
        v01 + v02 * (m01 / m02) + v12 * (m01 / m12)
    };
    let den = weighted(&MonotoneFunction::SLD);
    if !(den >= DEGENERATE_COHERENT) {
        return Err(Error::DegenerateCoherentTerm(den));
    }
    Ok(weighted(f) / den)
}

/// Normalized distance of `A_0` from the line through `L^f`:
/// `‖A_0 - γL^f‖_F / ‖A_0‖_F` with the least-squares real `γ`.
pub fn saturation_residual(
    rho: &DensityMatrix,
    rdot: &TangentOperator,
    a: &HermitianOperator,
    f: &MonotoneFunction,
) -> Result<f64> {
    let a0 = centered_in_eigenbasis(rho, a)?;
    let r = tangent_in_eigenbasis(rho, rdot)?;
    let p = rho.eigenvalues();
    let d = p.len();
    let mut ll = 0.0;
    let mut la = 0.0;
    let mut aa = 0.0;
    for i in 0..d {
        for j in 0..d {
            let l = r[(i, j)] / clamped_mean(f, p[i], p[j]);
            ll += l.norm_sqr();
            la += (l.conj() * a0[(i, j)]).re;
            aa += a0[(i, j)].norm_sqr();
        }
    }
    if aa == 0.0 {
        return Err(Error::ZeroObservable);
    }
    if ll == 0.0 {
        return Err(Error::ZeroTangent);
    }
    let gamma = la / ll;
    let mut res = 0.0;
    for i in 0..d {
        for j in 0..d {
            let l = r[(i, j)] / clamped_mean(f, p[i], p[j]);
            res += (a0[(i, j)] - l * gamma).norm_sqr();
        }
    }
    Ok((res / aa).sqrt())
}
