//! The enumerable-category contract and the generic searches built on it.

pub mod table;

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{CatError, Result};

pub use table::{AxiomsReport, FiniteCategory, MorId, ObjId, Violation};

/// Default enumeration cap, overridable through `CATPURE_DEFAULT_BOUND`.
pub const DEFAULT_CAP: usize = 1_000_000;

pub fn default_cap() -> usize {
    std::env::var("CATPURE_DEFAULT_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Chosen biproduct data `A ⊕ B` in an additive category.
#[derive(Clone, Debug)]
pub struct Biprod<O, M> {
    pub apex: O,
    pub inj: [M; 2],
    pub proj: [M; 2],
}

/// A category whose objects up to a size bound and whose hom-sets can be listed exhaustively.
///
/// Listings are canonical: objects by size then by their own order, morphisms in a fixed
/// order per hom-set. Every search reports the first witness in that order.
pub trait Category: Sync {
    type Obj: Clone + Eq + Hash + Ord + Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync;

    fn label(&self) -> String;
    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn id(&self, a: &Self::Obj) -> Self::Mor;

    /// `g ∘ f`; the caller guarantees `cod f == dom g`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if self.cod(f) != self.dom(g) {
            return Err(CatError::NotComposable(format!(
                "{} then {}",
                self.mor_json(f),
                self.mor_json(g)
            )));
        }
        Ok(self.compose(g, f))
    }

    /// Objects of size at most `bound`, canonical order.
    fn objects(&self, bound: u64) -> Result<Vec<Self::Obj>>;
    fn size(&self, a: &Self::Obj) -> u64;
    fn hom_size(&self, a: &Self::Obj, b: &Self::Obj) -> u128;
    /// The full hom-set; fails rather than truncating when it exceeds [`Category::cap`].
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Arc<Vec<Self::Mor>>>;
    fn cap(&self) -> usize;

    fn obj_json(&self, a: &Self::Obj) -> Value;
    fn mor_json(&self, f: &Self::Mor) -> Value;

    fn is_identity(&self, f: &Self::Mor) -> bool {
        let a = self.dom(f);
        self.cod(f) == a && *f == self.id(&a)
    }

    /// First `r` in `hom(cod m, dom m)` with `r ∘ m = id`.
    fn find_retraction(&self, m: &Self::Mor) -> Result<Option<Self::Mor>> {
        let (a, b) = (self.dom(m), self.cod(m));
        let ida = self.id(&a);
        Ok(self.hom(&b, &a)?.iter().find(|r| self.compose(r, m) == ida).cloned())
    }

    /// First `s` in `hom(cod p, dom p)` with `p ∘ s = id`.
    fn find_section(&self, p: &Self::Mor) -> Result<Option<Self::Mor>> {
        let (a, b) = (self.dom(p), self.cod(p));
        let idb = self.id(&b);
        Ok(self.hom(&b, &a)?.iter().find(|s| self.compose(p, s) == idb).cloned())
    }

    fn inverse(&self, f: &Self::Mor) -> Result<Option<Self::Mor>> {
        let (a, b) = (self.dom(f), self.cod(f));
        let (ida, idb) = (self.id(&a), self.id(&b));
        Ok(self
            .hom(&b, &a)?
            .iter()
            .find(|g| self.compose(g, f) == ida && self.compose(f, g) == idb)
            .cloned())
    }

    fn is_iso(&self, f: &Self::Mor) -> Result<bool> {
        Ok(self.inverse(f)?.is_some())
    }

    /// First `e` with `e ∘ t = c`.
    fn solve_right_factor(&self, t: &Self::Mor, c: &Self::Mor) -> Result<Option<Self::Mor>> {
        Ok(self.hom(&self.cod(t), &self.cod(c))?.iter().find(|e| self.compose(e, t) == *c).cloned())
    }

    /// First `l` with `p ∘ l = e`.
    fn solve_left_factor(&self, p: &Self::Mor, e: &Self::Mor) -> Result<Option<Self::Mor>> {
        Ok(self.hom(&self.dom(e), &self.dom(p))?.iter().find(|l| self.compose(p, l) == *e).cloned())
    }

    /// Left-cancellable, tested against every object of the category (the listing must be finite).
    fn is_mono(&self, f: &Self::Mor) -> Result<bool> {
        let a = self.dom(f);
        for x in self.objects(u64::MAX)? {
            let hs = self.hom(&x, &a)?;
            let mut seen = std::collections::HashSet::with_capacity(hs.len());
            for g in hs.iter() {
                if !seen.insert(self.compose(f, g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn is_epi(&self, f: &Self::Mor) -> Result<bool> {
        let b = self.cod(f);
        for x in self.objects(u64::MAX)? {
            let hs = self.hom(&b, &x)?;
            let mut seen = std::collections::HashSet::with_capacity(hs.len());
            for g in hs.iter() {
                if !seen.insert(self.compose(g, f)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Additive structure, when the category has it.
    fn add(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    fn neg(&self, _f: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    fn biproduct(&self, _a: &Self::Obj, _b: &Self::Obj) -> Option<Result<Biprod<Self::Obj, Self::Mor>>> {
        None
    }

    fn cokernel(&self, _f: &Self::Mor) -> Option<Result<Self::Mor>> {
        None
    }

    /// Whether the additive hooks may build objects outside the enumerated listing.
    fn closed_under_biproducts(&self) -> bool {
        false
    }

    /// Length of the kernel and cokernel of `f`, in concrete categories.
    fn kernel_length(&self, _f: &Self::Mor) -> Option<usize> {
        None
    }

    fn cokernel_length(&self, _f: &Self::Mor) -> Option<usize> {
        None
    }
}

/// Checked cap: errors with context when `needed` exceeds the category cap.
pub fn check_cap(what: impl FnOnce() -> String, needed: u128, cap: usize) -> Result<()> {
    if needed > cap as u128 {
        return Err(CatError::CapExceeded { what: what(), needed, cap });
    }
    Ok(())
}

/// All automorphisms of `a`.
pub fn automorphisms<C: Category>(cat: &C, a: &C::Obj) -> Result<Vec<C::Mor>> {
    let mut out = Vec::new();
    for f in cat.hom(a, a)?.iter() {
        if cat.is_iso(f)? {
            out.push(f.clone());
        }
    }
    Ok(out)
}

/// First isomorphism `a -> b`, if any.
pub fn find_iso<C: Category>(cat: &C, a: &C::Obj, b: &C::Obj) -> Result<Option<C::Mor>> {
    if cat.size(a) != cat.size(b) {
        return Ok(None);
    }
    for f in cat.hom(a, b)?.iter() {
        if cat.is_iso(f)? {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}
