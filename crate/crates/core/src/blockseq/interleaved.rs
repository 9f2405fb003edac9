use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{C64, ONE, ZERO};

use super::{within, FrameClass, Side, SymbolProfile, METADATA_PREFIX, PROFILE_SPOT_CHECK};

/// Finitely supported vector in `l^2`, keyed by coordinate.
pub type SparseVector = BTreeMap<usize, C64>;

/// Hard cap on summed recurrent terms.
const MAX_TERMS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InterleaveGenerator {
    /// Recurrent term `k >= 0` is `phi = a^k e_0`, `psi = b^k e_0`,
    /// `m = c^k`; fresh term `k` is `e_{k+1}` on both sides with weight 1.
    GeometricInterleave {
        phi_ratio: C64,
        psi_ratio: C64,
        symbol_ratio: C64,
    },
}

/// Sequences alternating a recurrent direction `e_0` with fresh unit
/// directions `e_1, e_2, ...`. Even indices are recurrent terms, odd indices
/// fresh ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterleavedSystem {
    pub generator: InterleaveGenerator,
    /// Declared bound `r` on `|p_{k+1} / p_k|` for recurrent products
    /// `p_k = m_k phi_k conj(psi_k)`, valid from `k = ratio_from` on.
    pub ratio_bound: f64,
    #[serde(default)]
    pub ratio_from: usize,
}

/// One term of an interleaved system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub direction: usize,
    pub phi: C64,
    pub psi: C64,
    pub weight: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterleavedApply {
    pub value: SparseVector,
    /// Bound on the omitted recurrent tail, in the `e_0` coordinate.
    pub error_bound: f64,
    /// Number of recurrent terms summed.
    pub terms: usize,
}

impl InterleavedSystem {
    pub fn geometric(phi_ratio: C64, psi_ratio: C64, symbol_ratio: C64, ratio_bound: f64) -> Self {
        InterleavedSystem {
            generator: InterleaveGenerator::GeometricInterleave {
                phi_ratio,
                psi_ratio,
                symbol_ratio,
            },
            ratio_bound,
            ratio_from: 0,
        }
    }

    fn ratios(&self) -> (C64, C64, C64) {
        let InterleaveGenerator::GeometricInterleave {
            phi_ratio,
            psi_ratio,
            symbol_ratio,
        } = self.generator;
        (phi_ratio, psi_ratio, symbol_ratio)
    }

    /// Term `n` of the interleaved sequence.
    pub fn term(&self, n: usize) -> Term {
        let k = n / 2;
        if n % 2 == 1 {
            return Term {
                direction: k + 1,
                phi: ONE,
                psi: ONE,
                weight: ONE,
            };
        }
        let (a, b, c) = self.ratios();
        Term {
            direction: 0,
            phi: a.powu(k as u32),
            psi: b.powu(k as u32),
            weight: c.powu(k as u32),
        }
    }

    /// Recurrent products `p_0, ..., p_{count-1}`, built by repeated multiplication.
    pub fn recurrent_products(&self, count: usize) -> Vec<C64> {
        let (a, b, c) = self.ratios();
        let step = c * a * b.conj();
        let mut p = ONE;
        (0..count)
            .map(|_| {
                let cur = p;
                p *= step;
                cur
            })
            .collect()
    }

    /// Checks the declared ratio bound against the first generated products.
    pub fn certify_ratio(&self) -> Result<f64> {
        let r = self.ratio_bound;
        if !(r.is_finite() && (0.0..1.0).contains(&r)) {
            return Err(Error::RatioNotCertified(format!(
                "declared ratio bound {r} is not in [0, 1)"
            )));
        }
        let p = self.recurrent_products(self.ratio_from + METADATA_PREFIX + 1);
        for k in self.ratio_from..p.len() - 1 {
            let (cur, next) = (p[k].norm(), p[k + 1].norm());
            if next > r * cur * (1.0 + 1e-12) {
                return Err(Error::RatioNotCertified(format!(
                    "|p_{}| / |p_{k}| = {} exceeds declared bound {r}",
                    k + 1,
                    next / cur
                )));
            }
        }
        Ok(r)
    }

    /// Frame class of one side: the frame operator is diagonal with entry
    /// `sum_k rho^{2k}` on `e_0` and 1 on every fresh direction.
    pub fn frame_class(&self, side: Side) -> FrameClass {
        let (a, b, c) = self.ratios();
        let rho = match side {
            Side::Phi => a.norm(),
            Side::Psi => b.norm(),
            Side::MPhi => (c * a).norm(),
            Side::MBarPsi => (c.conj() * b).norm(),
        };
        if rho >= 1.0 {
            return FrameClass::NotBessel;
        }
        let recurrent = 1.0 / (1.0 - rho * rho);
        FrameClass::from_limits(recurrent.min(1.0), Some(recurrent.max(1.0)))
    }

    pub fn symbol_profile(&self) -> Result<SymbolProfile> {
        let s = self.ratios().2.norm();
        // recurrent weights s^k (k >= 0) next to fresh weights 1
        let profile = if s > 1.0 {
            SymbolProfile { inf_modulus: 1.0, sup_modulus: None, all_nonzero: true }
        } else if s == 1.0 {
            SymbolProfile { inf_modulus: 1.0, sup_modulus: Some(1.0), all_nonzero: true }
        } else {
            SymbolProfile { inf_modulus: 0.0, sup_modulus: Some(1.0), all_nonzero: s > 0.0 }
        };
        for n in 0..PROFILE_SPOT_CHECK {
            let r = self.term(n).weight.norm();
            let below = r < profile.inf_modulus && !within(r, profile.inf_modulus, 1e-12);
            let above = profile.sup_modulus.is_some_and(|u| r > u && !within(r, u, 1e-12));
            if below || above || (r == 0.0 && profile.all_nonzero) {
                return Err(Error::MetadataInconsistent(format!(
                    "|m_{n}| = {r} lies outside the closed-form range"
                )));
            }
        }
        Ok(profile)
    }

    /// Multiplier applied to `f` with exactly `terms` recurrent terms summed.
    pub fn apply_truncated(&self, f: &SparseVector, terms: usize) -> SparseVector {
        let mut out = SparseVector::new();
        let f0 = f.get(&0).copied().unwrap_or(ZERO);
        let coeff: C64 = self.recurrent_products(terms).iter().sum();
        if f0 != ZERO {
            out.insert(0, f0 * coeff);
        }
        for (&j, &v) in f.range(1..) {
            out.insert(j, v);
        }
        out
    }
}

/// `M f` for an interleaved system, with a certified bound on the truncation
/// error in the recurrent coordinate.
pub fn interleaved_apply(sys: &InterleavedSystem, f: &SparseVector, tol: f64) -> Result<InterleavedApply> {
    let r = sys.certify_ratio()?;
    let f0 = f.get(&0).copied().unwrap_or(ZERO).norm();
    let tail = |last: C64| f0 * last.norm() * r / (1.0 - r);

    let mut acc = ZERO;
    let mut p = ONE;
    let (a, b, c) = sys.ratios();
    let step = c * a * b.conj();
    let mut terms = 0;
    loop {
        acc += p;
        terms += 1;
        if terms > sys.ratio_from && (tail(p) <= tol || p == ZERO) {
            break;
        }
        if terms >= MAX_TERMS {
            return Err(Error::RatioNotCertified(format!(
                "tail bound {} still above {tol} after {terms} terms",
                tail(p)
            )));
        }
        p *= step;
    }
    let error_bound = tail(p);

    let mut value = SparseVector::new();
    if let Some(&v0) = f.get(&0) {
        value.insert(0, v0 * acc);
    }
    for (&j, &v) in f.range(1..) {
        value.insert(j, v);
    }
    Ok(InterleavedApply {
        value,
        error_bound,
        terms,
    })
}
