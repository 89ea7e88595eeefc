//! Pushouts of strongly pure monos and pullbacks of strongly pure epis, swept over every
//! span (cospan) within a bound.

use serde::Serialize;
use serde_json::{json, Value};

use super::{is_strongly_pure_epi, is_strongly_pure_mono, TestSuite};
use crate::error::{CatError, Result};
use crate::limits::{Limits, ToJson};
use crate::orbits::Action;

#[derive(Clone, Debug, Default, Serialize)]
pub struct StabilityReport {
    pub bound: u64,
    pub suite_bound: u64,
    /// Strongly pure monos (epis) used as the first leg, one per isomorphism orbit.
    pub sources: u64,
    pub spans_checked: u64,
    pub squares_checked: u64,
    pub violations: Vec<Value>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `m: C -> D` strongly pure and any `f: C -> C'`, the pushout `m': C' -> D'` must be
/// strongly pure. `m` runs over orbit representatives under `Aut(D) × Aut(C)` and `f`
/// over representatives under `Aut(C')`; both moves preserve the verdict.
pub fn stability_suite_pushout_pure_monos<C: Limits>(
    cat: &C,
    tests: &TestSuite<C>,
    bound: u64,
) -> Result<StabilityReport> {
    let objs = cat.objects(bound)?;
    let orbits = tests.orbits();
    let mut rep = StabilityReport { bound, suite_bound: tests.bound(), ..Default::default() };
    for c in &objs {
        for d in &objs {
            for m in orbits.reps(c, d, Action::Both)?.iter().map(|r| &r.mor) {
                if !cat.is_mono(m)? || !is_strongly_pure_mono(m, tests)?.pure {
                    continue;
                }
                rep.sources += 1;
                for c2 in &objs {
                    for f in orbits.reps(c, c2, Action::Left)?.iter().map(|r| &r.mor) {
                        rep.spans_checked += 1;
                        let po = cat.pushout(f, m, bound)?.witness.ok_or_else(|| {
                            CatError::Missing(format!("pushout of {} along {}", cat.mor_json(m), cat.mor_json(f)))
                        })?;
                        let v = is_strongly_pure_mono(&po.m_prime, tests)?;
                        rep.squares_checked += v.squares_checked;
                        if let Some(w) = v.witness {
                            rep.violations.push(json!({
                                "m": cat.mor_json(m),
                                "f": cat.mor_json(f),
                                "pushout": po.to_json(cat),
                                "square": w.to_json(cat),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Dual sweep: `p: D -> E` strongly pure epi, `f: E' -> E`, pullback `p': P -> E'`.
pub fn stability_suite_pullback_pure_epis<C: Limits>(
    cat: &C,
    tests: &TestSuite<C>,
    bound: u64,
) -> Result<StabilityReport> {
    let objs = cat.objects(bound)?;
    let orbits = tests.orbits();
    let mut rep = StabilityReport { bound, suite_bound: tests.bound(), ..Default::default() };
    for d in &objs {
        for e in &objs {
            for p in orbits.reps(d, e, Action::Both)?.iter().map(|r| &r.mor) {
                if !cat.is_epi(p)? || !is_strongly_pure_epi(p, tests)?.pure {
                    continue;
                }
                rep.sources += 1;
                for e2 in &objs {
                    for f in orbits.reps(e2, e, Action::Right)?.iter().map(|r| &r.mor) {
                        rep.spans_checked += 1;
                        let pb = cat.pullback(p, f, bound)?.witness.ok_or_else(|| {
                            CatError::Missing(format!("pullback of {} along {}", cat.mor_json(p), cat.mor_json(f)))
                        })?;
                        let v = is_strongly_pure_epi(&pb.p_prime, tests)?;
                        rep.squares_checked += v.squares_checked;
                        if let Some(w) = v.witness {
                            rep.violations.push(json!({
                                "p": cat.mor_json(p),
                                "f": cat.mor_json(f),
                                "pullback": pb.to_json(cat),
                                "square": w.to_json(cat),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}
