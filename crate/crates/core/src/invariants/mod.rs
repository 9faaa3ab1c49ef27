//! Numerical invariants of elliptic surfaces and the Picard-number squeeze
//! under unramified base change.

use serde::Serialize;
use thiserror::Error;

use crate::kodaira::FiberData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("chi = {0} must be positive")]
    NonPositiveChi(i64),
    #[error("base change degree must be at least 1")]
    ZeroDegree,
}

/// Invariants of an elliptic surface with a section and a singular fiber
/// over a base of genus `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub genus: i64,
    pub e: i64,
    pub b1: i64,
    pub b2: i64,
    pub h11: i64,
    pub pg: i64,
    pub irregularity: i64,
    /// Rows `h^{0,0}`, `h^{1,0} h^{0,1}`, `h^{2,0} h^{1,1} h^{0,2}`, ...
    pub hodge: Vec<Vec<i64>>,
}

impl SurfaceInvariants {
    /// `sum (-1)^{p+q} h^{p,q}`.
    pub fn hodge_euler(&self) -> i64 {
        self.hodge
            .iter()
            .enumerate()
            .map(|(k, row)| if k % 2 == 0 { 1 } else { -1 } * row.iter().sum::<i64>())
            .sum()
    }

    pub fn diamond(&self) -> String {
        let width = self.hodge.iter().map(Vec::len).max().unwrap_or(1);
        self.hodge
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let pad = " ".repeat((width - row.len()) * 2);
                format!("{pad}{}", cells.join("   "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `e = 12 chi`, `q = g`, `p_g = chi + g - 1`, `b2 = e - 2 + 4q`,
/// `h11 = b2 - 2 p_g`.
pub fn invariants_for(chi: i64, genus: i64) -> Result<SurfaceInvariants, InvariantError> {
    if chi <= 0 {
        return Err(InvariantError::NonPositiveChi(chi));
    }
    let e = 12 * chi;
    let q = genus;
    let pg = chi + genus - 1;
    let b1 = 2 * q;
    let b2 = e - 2 + 2 * b1;
    let h11 = b2 - 2 * pg;
    Ok(SurfaceInvariants {
        chi,
        genus,
        e,
        b1,
        b2,
        h11,
        pg,
        irregularity: q,
        hodge: vec![vec![1], vec![q, q], vec![pg, h11, pg], vec![q, q], vec![1]],
    })
}

/// `rho = r + 2 + sum_v (m_v - 1)`.
pub fn picard_number(mw_rank: i64, fibers: &[FiberData]) -> i64 {
    mw_rank + 2 + fiber_excess(fibers)
}

pub fn fiber_excess(fibers: &[FiberData]) -> i64 {
    fibers.iter().map(|f| f.components as i64 - 1).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Characteristic {
    Zero,
    Positive,
}

/// Pullback of a surface over an elliptic curve `C` along `n: C -> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeSpec {
    pub n: i64,
    pub chi: i64,
    pub fibers: Vec<FiberData>,
    /// Mordell-Weil rank of the source.
    pub mw_rank: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankVerdict {
    /// `r^{(n)} = 0`.
    Zero,
    /// The source is not extremal, so the squeeze says nothing.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub n: i64,
    pub source_extremal: bool,
    pub invariants: SurfaceInvariants,
    pub fiber_count: usize,
    /// `2 + n^2 sum (m_v - 1)`.
    pub rho_lower: i64,
    /// `h11` in characteristic 0 (Lefschetz), `b2` in characteristic p (Igusa).
    pub bound_name: &'static str,
    pub rho_upper: i64,
    pub verdict: RankVerdict,
}

/// Extremal means `r = 0` and `rho` equal to its upper bound. The map `n`
/// is unramified, so each fiber appears `n^2` times and `chi` scales by `n^2`.
pub fn pullback_invariants(
    spec: &BaseChangeSpec,
    characteristic: Characteristic,
) -> Result<PullbackReport, InvariantError> {
    if spec.n < 1 {
        return Err(InvariantError::ZeroDegree);
    }
    let bound = |inv: &SurfaceInvariants| match characteristic {
        Characteristic::Zero => ("h11", inv.h11),
        Characteristic::Positive => ("b2", inv.b2),
    };
    let src = invariants_for(spec.chi, 1)?;
    let excess = fiber_excess(&spec.fibers);
    let source_extremal = spec.mw_rank == 0 && picard_number(0, &spec.fibers) == bound(&src).1;

    let n2 = spec.n * spec.n;
    let inv = invariants_for(n2 * spec.chi, 1)?;
    let (bound_name, rho_upper) = bound(&inv);
    let rho_lower = 2 + n2 * excess;
    let verdict = if source_extremal && rho_lower == rho_upper {
        RankVerdict::Zero
    } else {
        RankVerdict::Inconclusive
    };
    Ok(PullbackReport {
        n: spec.n,
        source_extremal,
        invariants: inv,
        fiber_count: spec.fibers.len() * n2 as usize,
        rho_lower,
        bound_name,
        rho_upper,
        verdict,
    })
}
