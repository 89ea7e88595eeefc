//! Regularity: a mono is regular when it is the equalizer of its cokernel pair, an epi
//! when it is the coequalizer of its kernel pair.

use serde_json::{json, Value};

use crate::error::{CatError, Result};
use crate::limits::{Limits, ToJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularVerdict<O, M> {
    pub regular: bool,
    /// Apex of the (co)equalizer of the (co)kernel pair.
    pub apex: O,
    /// The comparison isomorphism, when there is one.
    pub comparison: Option<M>,
}

impl<C: Limits> ToJson<C> for RegularVerdict<C::Obj, C::Mor> {
    fn to_json(&self, cat: &C) -> Value {
        json!({
            "regular": self.regular,
            "apex": cat.obj_json(&self.apex),
            "comparison": self.comparison.as_ref().map(|f| cat.mor_json(f)),
        })
    }
}

/// `m` is compared with the equalizer `e` of its cokernel pair: regular iff `m = e ∘ φ`
/// for an isomorphism `φ`. A missing cokernel pair or equalizer is an error, not a
/// negative verdict.
pub fn check_regular_mono<C: Limits>(cat: &C, m: &C::Mor, bound: u64) -> Result<RegularVerdict<C::Obj, C::Mor>> {
    let pair = cat
        .cokernel_pair(m, bound)?
        .witness
        .ok_or_else(|| CatError::Missing(format!("cokernel pair of {} within bound {bound}", cat.mor_json(m))))?;
    let eq = cat
        .equalizer(&pair.k1, &pair.k2, bound)?
        .witness
        .ok_or_else(|| CatError::Missing("equalizer of the cokernel pair".into()))?;
    let phi = cat.solve_left_factor(&eq.map, m)?;
    let comparison = match phi {
        Some(phi) if cat.is_iso(&phi)? => Some(phi),
        _ => None,
    };
    Ok(RegularVerdict { regular: comparison.is_some(), apex: eq.apex, comparison })
}

/// Dual: `p` against the coequalizer `q` of its kernel pair, regular iff `p = ψ ∘ q` for
/// an isomorphism `ψ`.
pub fn check_regular_epi<C: Limits>(cat: &C, p: &C::Mor, bound: u64) -> Result<RegularVerdict<C::Obj, C::Mor>> {
    let pair = cat
        .kernel_pair(p, bound)?
        .witness
        .ok_or_else(|| CatError::Missing(format!("kernel pair of {} within bound {bound}", cat.mor_json(p))))?;
    let coeq = cat
        .coequalizer(&pair.k1, &pair.k2, bound)?
        .witness
        .ok_or_else(|| CatError::Missing("coequalizer of the kernel pair".into()))?;
    let psi = cat.solve_right_factor(&coeq.map, p)?;
    let comparison = match psi {
        Some(psi) if cat.is_iso(&psi)? => Some(psi),
        _ => None,
    };
    Ok(RegularVerdict { regular: comparison.is_some(), apex: coeq.apex, comparison })
}
