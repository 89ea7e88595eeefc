//! Formula constructions in module categories against the exhaustive search, instance by
//! instance, matched up to a comparison isomorphism.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::{search, Limits, ToJson};
use crate::category::Category;
use crate::concrete::ModCategory;
use crate::error::{CatError, Result};

#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    /// Size bound on the objects of the diagrams.
    pub bound: u64,
    /// Size bound handed to the search; must cover every formula apex.
    pub search_bound: u64,
    pub instances: BTreeMap<String, u64>,
    pub discrepancies: Vec<Value>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.instances.values().sum()
    }
}

fn bump(rep: &mut OracleReport, kind: &str) {
    *rep.instances.entry(kind.to_string()).or_default() += 1;
}

/// Whether some isomorphism `φ: a -> b` satisfies `ok(φ)`.
fn comparison(cat: &ModCategory, a: &crate::ModObject, b: &crate::ModObject, ok: impl Fn(&crate::ModMorphism) -> bool) -> Result<bool> {
    if cat.size(a) != cat.size(b) {
        return Ok(false);
    }
    for phi in cat.hom(a, b)?.iter() {
        if ok(phi) && phi.is_iso() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sweeps every pushout, pullback, equalizer and coequalizer diagram on objects of size
/// at most `bound`, comparing the formula path with [`search`].
pub fn compare_formula_with_search(cat: &ModCategory, bound: u64, search_bound: u64) -> Result<OracleReport> {
    if cat.is_capped() {
        return Err(CatError::Unsupported("capped categories have no formula path".into()));
    }
    let objs = cat.objects(bound)?;
    let mut rep = OracleReport { bound, search_bound, ..Default::default() };

    for c in &objs {
        for c1 in &objs {
            for d in &objs {
                for f in cat.hom(c, c1)?.iter() {
                    for m in cat.hom(c, d)?.iter() {
                        bump(&mut rep, "pushout");
                        let fast = cat.pushout_raw(f, m, bound)?.witness.expect("formula pushout");
                        let slow = search::pushout(cat, f, m, search_bound)?.witness;
                        let agree = match &slow {
                            Some(s) => comparison(cat, &fast.apex, &s.apex, |phi| {
                                phi.compose_unchecked(&fast.m_prime) == s.m_prime
                                    && phi.compose_unchecked(&fast.f_prime) == s.f_prime
                            })?,
                            None => false,
                        };
                        if !agree {
                            rep.discrepancies.push(json!({
                                "kind": "pushout", "f": cat.mor_json(f), "m": cat.mor_json(m),
                                "formula": fast.to_json(cat), "search": slow.map(|s| s.to_json(cat)),
                            }));
                        }
                    }
                }
            }
        }
    }

    for d in &objs {
        for e in &objs {
            for e1 in &objs {
                for p in cat.hom(d, e)?.iter() {
                    for f in cat.hom(e1, e)?.iter() {
                        bump(&mut rep, "pullback");
                        let fast = cat.pullback_raw(p, f, bound)?.witness.expect("formula pullback");
                        let slow = search::pullback(cat, p, f, search_bound)?.witness;
                        let agree = match &slow {
                            Some(s) => comparison(cat, &s.apex, &fast.apex, |phi| {
                                fast.p_prime.compose_unchecked(phi) == s.p_prime
                                    && fast.f_prime.compose_unchecked(phi) == s.f_prime
                            })?,
                            None => false,
                        };
                        if !agree {
                            rep.discrepancies.push(json!({
                                "kind": "pullback", "p": cat.mor_json(p), "f": cat.mor_json(f),
                                "formula": fast.to_json(cat), "search": slow.map(|s| s.to_json(cat)),
                            }));
                        }
                    }
                }
            }
        }
    }

    for b in &objs {
        for c in &objs {
            let hs = cat.hom(b, c)?;
            for k1 in hs.iter() {
                for k2 in hs.iter() {
                    bump(&mut rep, "equalizer");
                    let fast = cat.equalizer_raw(k1, k2, bound)?.witness.expect("formula equalizer");
                    let slow = search::equalizer(cat, k1, k2, search_bound)?.witness;
                    let agree = match &slow {
                        Some(s) => comparison(cat, &s.apex, &fast.apex, |phi| fast.map.compose_unchecked(phi) == s.map)?,
                        None => false,
                    };
                    if !agree {
                        rep.discrepancies.push(json!({
                            "kind": "equalizer", "k1": cat.mor_json(k1), "k2": cat.mor_json(k2),
                            "formula": fast.to_json(cat), "search": slow.map(|s| s.to_json(cat)),
                        }));
                    }

                    bump(&mut rep, "coequalizer");
                    let fast = cat.coequalizer_raw(k1, k2, bound)?.witness.expect("formula coequalizer");
                    let slow = search::coequalizer(cat, k1, k2, search_bound)?.witness;
                    let agree = match &slow {
                        Some(s) => comparison(cat, &fast.apex, &s.apex, |phi| phi.compose_unchecked(&fast.map) == s.map)?,
                        None => false,
                    };
                    if !agree {
                        rep.discrepancies.push(json!({
                            "kind": "coequalizer", "k1": cat.mor_json(k1), "k2": cat.mor_json(k2),
                            "formula": fast.to_json(cat), "search": slow.map(|s| s.to_json(cat)),
                        }));
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agree_on_lines() {
        let cat = ModCategory::finvect(2, 2);
        let rep = compare_formula_with_search(&cat, 2, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.discrepancies);
        // spans over {0, F2}: Σ_C Σ_{C',D} |hom(C,C')||hom(C,D)| = 4 + 9
        assert_eq!(rep.instances["pushout"], 13);
        assert_eq!(rep.instances["equalizer"], rep.instances["coequalizer"]);
    }

    #[test]
    fn too_small_search_bound_is_reported() {
        let cat = ModCategory::finvect(2, 2);
        let rep = compare_formula_with_search(&cat, 2, 2).unwrap();
        assert!(!rep.passed());
        assert!(rep.discrepancies.iter().all(|d| d["search"].is_null()));
    }
}
