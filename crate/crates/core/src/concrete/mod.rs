//! Concrete categories of finite modules: `FinVect(F_p)`, its dimension-capped full
//! subcategories, and finite `Z/m`-modules.

pub mod lattice;
pub mod ops;
pub mod snf;
pub mod solve;
pub mod zmod;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::{check_cap, default_cap, Biprod, Category};
use crate::error::{CatError, Result};
pub use snf::{smith_normal_form, SnfResult};
pub use zmod::{ModMorphism, ModObject, MorphismLiteral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConcreteDescriptor {
    Finvect { p: u32, max_dim: u32 },
    Capped { p: u32, n: u32 },
    Finmod { m: u32, max_size: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModKind {
    FinVect { p: u32, max_dim: u32 },
    Capped { p: u32, n: u32 },
    FinMod { m: u32, max_size: u64 },
}

pub struct ModCategory {
    kind: ModKind,
    cap: usize,
    homs: RwLock<HashMap<(ModObject, ModObject), Arc<Vec<ModMorphism>>>>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl ModCategory {
    pub fn from_descriptor(d: ConcreteDescriptor) -> Result<Self> {
        let kind = match d {
            ConcreteDescriptor::Finvect { p, max_dim } => {
                if !is_prime(p) {
                    return Err(CatError::Descriptor(format!("finvect needs a prime p, got {p}")));
                }
                ModKind::FinVect { p, max_dim }
            }
            ConcreteDescriptor::Capped { p, n } => {
                if !is_prime(p) {
                    return Err(CatError::Descriptor(format!("capped needs a prime p, got {p}")));
                }
                ModKind::Capped { p, n }
            }
            ConcreteDescriptor::Finmod { m, max_size } => {
                if m < 2 || m > 1 << 16 {
                    return Err(CatError::Descriptor(format!("finmod needs 2 <= m <= 65536, got {m}")));
                }
                ModKind::FinMod { m, max_size }
            }
        };
        Ok(ModCategory { kind, cap: default_cap(), homs: RwLock::new(HashMap::new()) })
    }

    pub fn finvect(p: u32, max_dim: u32) -> Self {
        Self::from_descriptor(ConcreteDescriptor::Finvect { p, max_dim }).expect("prime p")
    }

    /// Full subcategory of `FinVect(F_p)` on spaces of dimension at most `n`.
    pub fn capped(p: u32, n: u32) -> Self {
        Self::from_descriptor(ConcreteDescriptor::Capped { p, n }).expect("prime p")
    }

    pub fn finmod(m: u32, max_size: u64) -> Self {
        Self::from_descriptor(ConcreteDescriptor::Finmod { m, max_size }).expect("valid modulus")
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn kind(&self) -> ModKind {
        self.kind
    }

    pub fn modulus(&self) -> u32 {
        match self.kind {
            ModKind::FinVect { p, .. } | ModKind::Capped { p, .. } => p,
            ModKind::FinMod { m, .. } => m,
        }
    }

    /// Largest object size listed by `objects`.
    pub fn horizon(&self) -> u64 {
        match self.kind {
            ModKind::FinVect { p, max_dim } => (p as u64).saturating_pow(max_dim),
            ModKind::Capped { p, n } => (p as u64).saturating_pow(n),
            ModKind::FinMod { max_size, .. } => max_size,
        }
    }

    /// Whether limits must be searched for inside the category rather than computed.
    pub fn is_capped(&self) -> bool {
        matches!(self.kind, ModKind::Capped { .. })
    }

    /// Membership of an arbitrary module (relevant for the capped subcategories).
    pub fn contains(&self, a: &ModObject) -> bool {
        a.modulus() == self.modulus()
            && match self.kind {
                ModKind::Capped { n, .. } => a.rank() as u32 <= n,
                _ => true,
            }
    }

    pub fn object(&self, factors: &[u32]) -> Result<ModObject> {
        let a = ModObject::new(self.modulus(), factors)?;
        if !self.contains(&a) {
            return Err(CatError::InvalidObject(format!("{a} is not an object of {}", self.label())));
        }
        Ok(a)
    }

    pub fn morphism(&self, dom: &[u32], cod: &[u32], rows: &[Vec<i64>]) -> Result<ModMorphism> {
        ModMorphism::new(self.object(dom)?, self.object(cod)?, rows)
    }

    pub fn parse_morphism(&self, v: &Value) -> Result<ModMorphism> {
        let lit: MorphismLiteral = serde_path_to_error::deserialize(v)
            .map_err(|e| CatError::InvalidMorphism(format!("{}: {}", e.path(), e.inner())))?;
        let f = ModMorphism::from_literal(self.modulus(), &lit)?;
        if !self.contains(f.dom()) || !self.contains(f.cod()) {
            return Err(CatError::InvalidMorphism(format!("{f} lies outside {}", self.label())));
        }
        Ok(f)
    }

    fn divisors(&self) -> Vec<u32> {
        let m = self.modulus();
        (2..=m).filter(|d| m % d == 0).collect()
    }
}

impl Category for ModCategory {
    type Obj = ModObject;
    type Mor = ModMorphism;

    fn label(&self) -> String {
        match self.kind {
            ModKind::FinVect { p, .. } => format!("FinVect(F_{p})"),
            ModKind::Capped { p, n } => format!("FinVect(F_{p})_<={n}"),
            ModKind::FinMod { m, .. } => format!("FinMod(Z/{m})"),
        }
    }

    fn dom(&self, f: &ModMorphism) -> ModObject {
        f.dom().clone()
    }

    fn cod(&self, f: &ModMorphism) -> ModObject {
        f.cod().clone()
    }

    fn id(&self, a: &ModObject) -> ModMorphism {
        ModMorphism::identity(a)
    }

    fn compose(&self, g: &ModMorphism, f: &ModMorphism) -> ModMorphism {
        assert_eq!(f.cod(), g.dom(), "composing non-composable module maps");
        g.compose_unchecked(f)
    }

    fn objects(&self, bound: u64) -> Result<Vec<ModObject>> {
        let limit = bound.min(self.horizon());
        let divs = self.divisors();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<u32>, u64)> = vec![(Vec::new(), 1)];
        while let Some((chain, size)) = stack.pop() {
            if size <= limit {
                out.push(ModObject::new(self.modulus(), &chain)?);
            }
            for &d in &divs {
                if chain.last().is_some_and(|&l| d % l != 0) {
                    continue;
                }
                let s = size.saturating_mul(d as u64);
                if s <= limit {
                    let mut c = chain.clone();
                    c.push(d);
                    stack.push((c, s));
                }
            }
        }
        out.retain(|a| self.contains(a));
        out.sort();
        Ok(out)
    }

    fn size(&self, a: &ModObject) -> u64 {
        a.size()
    }

    fn hom_size(&self, a: &ModObject, b: &ModObject) -> u128 {
        ModMorphism::hom_size(a, b)
    }

    fn hom(&self, a: &ModObject, b: &ModObject) -> Result<Arc<Vec<ModMorphism>>> {
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.read().expect("hom cache").get(&key) {
            return Ok(h.clone());
        }
        check_cap(|| format!("hom({a}, {b})"), ModMorphism::hom_size(a, b), self.cap)?;
        let h = Arc::new(ModMorphism::enumerate(a, b));
        self.homs.write().expect("hom cache").insert(key, h.clone());
        Ok(h)
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn obj_json(&self, a: &ModObject) -> Value {
        json!(a.factors())
    }

    fn mor_json(&self, f: &ModMorphism) -> Value {
        serde_json::to_value(f).expect("serializable")
    }

    fn is_identity(&self, f: &ModMorphism) -> bool {
        f.is_identity()
    }

    fn find_retraction(&self, m: &ModMorphism) -> Result<Option<ModMorphism>> {
        solve::retraction(m)
    }

    fn find_section(&self, p: &ModMorphism) -> Result<Option<ModMorphism>> {
        solve::section(p)
    }

    fn inverse(&self, f: &ModMorphism) -> Result<Option<ModMorphism>> {
        solve::inverse(f)
    }

    fn is_iso(&self, f: &ModMorphism) -> Result<bool> {
        Ok(f.is_iso())
    }

    fn solve_right_factor(&self, t: &ModMorphism, c: &ModMorphism) -> Result<Option<ModMorphism>> {
        solve::solve_right_factor(t, c)
    }

    fn solve_left_factor(&self, p: &ModMorphism, e: &ModMorphism) -> Result<Option<ModMorphism>> {
        solve::solve_left_factor(p, e)
    }

    fn is_mono(&self, f: &ModMorphism) -> Result<bool> {
        Ok(f.is_injective())
    }

    fn is_epi(&self, f: &ModMorphism) -> Result<bool> {
        Ok(f.is_surjective())
    }

    fn add(&self, f: &ModMorphism, g: &ModMorphism) -> Option<ModMorphism> {
        f.add(g).ok()
    }

    fn neg(&self, f: &ModMorphism) -> Option<ModMorphism> {
        Some(f.neg())
    }

    fn biproduct(&self, a: &ModObject, b: &ModObject) -> Option<Result<Biprod<ModObject, ModMorphism>>> {
        let bp = match ops::biproduct(&[a.clone(), b.clone()]) {
            Ok(bp) => bp,
            Err(e) => return Some(Err(e)),
        };
        if !self.contains(&bp.apex) {
            return None;
        }
        let [i0, i1]: [ModMorphism; 2] = bp.inj.try_into().expect("two summands");
        let [p0, p1]: [ModMorphism; 2] = bp.proj.try_into().expect("two summands");
        Some(Ok(Biprod { apex: bp.apex, inj: [i0, i1], proj: [p0, p1] }))
    }

    fn cokernel(&self, f: &ModMorphism) -> Option<Result<ModMorphism>> {
        Some(ops::cokernel(f))
    }

    fn closed_under_biproducts(&self) -> bool {
        !self.is_capped()
    }

    fn kernel_length(&self, f: &ModMorphism) -> Option<usize> {
        Some(length_of(f.kernel_size()))
    }

    fn cokernel_length(&self, f: &ModMorphism) -> Option<usize> {
        Some(length_of(f.cod().size() / f.image_size()))
    }
}

use zmod::length_of;
