//! Categories given by an explicit composition table.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{check_cap, default_cap, Category};
use crate::error::{CatError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct MorId(pub u32);

#[derive(Deserialize, Serialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    #[serde(default)]
    pub name: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: HashMap<String, String>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Deserialize, Serialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug)]
pub struct FiniteCategory {
    name: String,
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<ObjId>,
    cod: Vec<ObjId>,
    ident: Vec<MorId>,
    /// `table[g * n + f] = g ∘ f`
    table: Vec<Option<MorId>>,
    homs: Vec<Arc<Vec<MorId>>>,
    cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: String,
    pub morphisms: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomsReport {
    pub valid: bool,
    pub objects: usize,
    pub morphisms: usize,
    pub violations: Vec<Violation>,
}

const MAX_REPORTED: usize = 32;

impl FiniteCategory {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let t: TableJson = serde_path_to_error::deserialize(de)
            .map_err(|e| CatError::Table(format!("{}: {}", e.path(), e.inner())))?;
        Self::from_table(&t)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let t: TableJson = serde_path_to_error::deserialize(v)
            .map_err(|e| CatError::Table(format!("{}: {}", e.path(), e.inner())))?;
        Self::from_table(&t)
    }

    pub fn from_table(t: &TableJson) -> Result<Self> {
        let err = |msg: String| Err(CatError::Table(msg));
        let mut obj_idx = HashMap::new();
        for (i, o) in t.objects.iter().enumerate() {
            if obj_idx.insert(o.clone(), ObjId(i as u32)).is_some() {
                return err(format!("objects[{i}]: duplicate object '{o}'"));
            }
        }
        let mut mor_idx = HashMap::new();
        let (mut dom, mut cod) = (Vec::new(), Vec::new());
        for (i, m) in t.morphisms.iter().enumerate() {
            if mor_idx.insert(m.id.clone(), MorId(i as u32)).is_some() {
                return err(format!("morphisms[{i}].id: duplicate morphism '{}'", m.id));
            }
            let Some(&d) = obj_idx.get(&m.dom) else {
                return err(format!("morphisms[{i}].dom: unknown object '{}'", m.dom));
            };
            let Some(&c) = obj_idx.get(&m.cod) else {
                return err(format!("morphisms[{i}].cod: unknown object '{}'", m.cod));
            };
            dom.push(d);
            cod.push(c);
        }
        let mut ident = vec![MorId(u32::MAX); t.objects.len()];
        let mut keys: Vec<&String> = t.identities.keys().collect();
        keys.sort();
        for o in keys {
            let m = &t.identities[o];
            let Some(&ObjId(a)) = obj_idx.get(o) else {
                return err(format!("identities.{o}: unknown object '{o}'"));
            };
            let Some(&mid) = mor_idx.get(m) else {
                return err(format!("identities.{o}: unknown morphism '{m}'"));
            };
            if dom[mid.0 as usize] != ObjId(a) || cod[mid.0 as usize] != ObjId(a) {
                return err(format!("identities.{o}: '{m}' is not an endomorphism of '{o}'"));
            }
            ident[a as usize] = mid;
        }
        if let Some(a) = ident.iter().position(|m| m.0 == u32::MAX) {
            return err(format!("identities: object '{}' has no identity", t.objects[a]));
        }
        let n = t.morphisms.len();
        let mut table = vec![None; n * n];
        for (i, [g, f, gf]) in t.compose.iter().enumerate() {
            let lookup = |name: &String, slot: usize| {
                mor_idx
                    .get(name)
                    .copied()
                    .ok_or_else(|| CatError::Table(format!("compose[{i}][{slot}]: unknown morphism '{name}'")))
            };
            let (g, f, gf) = (lookup(g, 0)?, lookup(f, 1)?, lookup(gf, 2)?);
            let (gi, fi, hi) = (g.0 as usize, f.0 as usize, gf.0 as usize);
            if cod[fi] != dom[gi] {
                return err(format!("compose[{i}]: '{}' and '{}' are not composable", t.morphisms[gi].id, t.morphisms[fi].id));
            }
            if dom[hi] != dom[fi] || cod[hi] != cod[gi] {
                return err(format!("compose[{i}][2]: '{}' has the wrong domain or codomain", t.morphisms[hi].id));
            }
            match table[gi * n + fi] {
                Some(prev) if prev != gf => {
                    return err(format!("compose[{i}]: conflicting entry for ({}, {})", t.morphisms[gi].id, t.morphisms[fi].id))
                }
                _ => table[gi * n + fi] = Some(gf),
            }
        }
        // composites with identities may be left implicit
        for f in 0..n {
            let (d, c) = (dom[f].0 as usize, cod[f].0 as usize);
            let idc = ident[c].0 as usize;
            let idd = ident[d].0 as usize;
            if table[idc * n + f].is_none() {
                table[idc * n + f] = Some(MorId(f as u32));
            }
            if table[f * n + idd].is_none() {
                table[f * n + idd] = Some(MorId(f as u32));
            }
        }
        let mut cat = FiniteCategory {
            name: t.name.clone().unwrap_or_else(|| "table".into()),
            obj_names: t.objects.clone(),
            mor_names: t.morphisms.iter().map(|m| m.id.clone()).collect(),
            dom,
            cod,
            ident,
            table,
            homs: Vec::new(),
            cap: default_cap(),
        };
        cat.build_homs();
        Ok(cat)
    }

    fn build_homs(&mut self) {
        let k = self.obj_names.len();
        let mut homs = vec![Vec::new(); k * k];
        for f in 0..self.mor_names.len() {
            homs[self.dom[f].0 as usize * k + self.cod[f].0 as usize].push(MorId(f as u32));
        }
        self.homs = homs.into_iter().map(Arc::new).collect();
    }

    /// Loads and rejects tables that fail the category axioms.
    pub fn load_validated(s: &str) -> Result<Self> {
        let cat = Self::from_json_str(s)?;
        let rep = cat.validate();
        if let Some(v) = rep.violations.first() {
            return Err(CatError::Table(format!("{} violation at {:?}: {}", v.kind, v.morphisms, v.detail)));
        }
        Ok(cat)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn obj(&self, name: &str) -> Option<ObjId> {
        self.obj_names.iter().position(|o| o == name).map(|i| ObjId(i as u32))
    }

    pub fn mor(&self, name: &str) -> Option<MorId> {
        self.mor_names.iter().position(|o| o == name).map(|i| MorId(i as u32))
    }

    pub fn obj_name(&self, a: ObjId) -> &str {
        &self.obj_names[a.0 as usize]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f.0 as usize]
    }

    pub fn all_morphisms(&self) -> Vec<MorId> {
        (0..self.mor_names.len() as u32).map(MorId).collect()
    }

    pub fn lookup(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table[g.0 as usize * self.mor_names.len() + f.0 as usize]
    }

    /// Identity laws, totality of composition on composable pairs, associativity.
    pub fn validate(&self) -> AxiomsReport {
        let n = self.mor_names.len();
        let mut v = Vec::new();
        let push = |kind: &str, ms: &[MorId], detail: String, v: &mut Vec<Violation>| {
            if v.len() < MAX_REPORTED {
                v.push(Violation {
                    kind: kind.into(),
                    morphisms: ms.iter().map(|&m| self.mor_name(m).to_string()).collect(),
                    detail,
                });
            }
        };
        for f in 0..n {
            let fm = MorId(f as u32);
            let idc = self.ident[self.cod[f].0 as usize];
            let idd = self.ident[self.dom[f].0 as usize];
            if self.lookup(idc, fm) != Some(fm) {
                push("identity", &[idc, fm], "left identity law fails".into(), &mut v);
            }
            if self.lookup(fm, idd) != Some(fm) {
                push("identity", &[fm, idd], "right identity law fails".into(), &mut v);
            }
        }
        for g in 0..n {
            for f in 0..n {
                if self.cod[f] == self.dom[g] && self.table[g * n + f].is_none() {
                    push("totality", &[MorId(g as u32), MorId(f as u32)], "composable pair has no composite".into(), &mut v);
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                if self.cod[g] != self.dom[h] {
                    continue;
                }
                for f in 0..n {
                    if self.cod[f] != self.dom[g] {
                        continue;
                    }
                    let (hm, gm, fm) = (MorId(h as u32), MorId(g as u32), MorId(f as u32));
                    let left = self.lookup(hm, gm).and_then(|hg| self.lookup(hg, fm));
                    let right = self.lookup(gm, fm).and_then(|gf| self.lookup(hm, gf));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            push(
                                "associativity",
                                &[hm, gm, fm],
                                format!("(h∘g)∘f = {} but h∘(g∘f) = {}", self.mor_name(l), self.mor_name(r)),
                                &mut v,
                            );
                        }
                    }
                }
            }
        }
        AxiomsReport { valid: v.is_empty(), objects: self.num_objects(), morphisms: n, violations: v }
    }

    /// The opposite category, with the same names.
    pub fn dual(&self) -> FiniteCategory {
        let n = self.mor_names.len();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        let mut d = FiniteCategory {
            name: format!("{}^op", self.name),
            obj_names: self.obj_names.clone(),
            mor_names: self.mor_names.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            ident: self.ident.clone(),
            table,
            homs: Vec::new(),
            cap: self.cap,
        };
        d.build_homs();
        d
    }

    pub fn to_json(&self) -> TableJson {
        let n = self.mor_names.len();
        let mut compose = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = self.table[g * n + f] {
                    compose.push([
                        self.mor_names[g].clone(),
                        self.mor_names[f].clone(),
                        self.mor_names[h.0 as usize].clone(),
                    ]);
                }
            }
        }
        TableJson {
            name: Some(self.name.clone()),
            objects: self.obj_names.clone(),
            morphisms: (0..n)
                .map(|f| MorphismJson {
                    id: self.mor_names[f].clone(),
                    dom: self.obj_names[self.dom[f].0 as usize].clone(),
                    cod: self.obj_names[self.cod[f].0 as usize].clone(),
                })
                .collect(),
            identities: (0..self.obj_names.len())
                .map(|a| (self.obj_names[a].clone(), self.mor_names[self.ident[a].0 as usize].clone()))
                .collect(),
            compose,
        }
    }

    /// Full subcategory on the objects of size at most `bound`, as an explicit table.
    pub fn from_category<C: Category>(cat: &C, bound: u64) -> Result<(FiniteCategory, Vec<C::Obj>, Vec<C::Mor>)> {
        let objs = cat.objects(bound)?;
        let mut mors: Vec<C::Mor> = Vec::new();
        for a in &objs {
            for b in &objs {
                mors.extend(cat.hom(a, b)?.iter().cloned());
            }
        }
        let n = mors.len();
        check_cap(|| "composition table".into(), (n as u128) * (n as u128), cat.cap())?;
        let index: HashMap<&C::Mor, usize> = mors.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let oname = |i: usize| format!("o{i}");
        let obj_index: HashMap<&C::Obj, usize> = objs.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut t = TableJson {
            name: Some(cat.label()),
            objects: (0..objs.len()).map(oname).collect(),
            morphisms: mors
                .iter()
                .enumerate()
                .map(|(i, m)| MorphismJson {
                    id: format!("m{i}"),
                    dom: oname(obj_index[&cat.dom(m)]),
                    cod: oname(obj_index[&cat.cod(m)]),
                })
                .collect(),
            identities: objs.iter().enumerate().map(|(i, o)| (oname(i), format!("m{}", index[&cat.id(o)]))).collect(),
            compose: Vec::new(),
        };
        for g in &mors {
            for f in &mors {
                if cat.cod(f) == cat.dom(g) {
                    let h = cat.compose(g, f);
                    t.compose.push([format!("m{}", index[g]), format!("m{}", index[f]), format!("m{}", index[&h])]);
                }
            }
        }
        Ok((FiniteCategory::from_table(&t)?, objs, mors))
    }
}

impl Category for FiniteCategory {
    type Obj = ObjId;
    type Mor = MorId;

    fn label(&self) -> String {
        self.name.clone()
    }

    fn dom(&self, f: &MorId) -> ObjId {
        self.dom[f.0 as usize]
    }

    fn cod(&self, f: &MorId) -> ObjId {
        self.cod[f.0 as usize]
    }

    fn id(&self, a: &ObjId) -> MorId {
        self.ident[a.0 as usize]
    }

    fn compose(&self, g: &MorId, f: &MorId) -> MorId {
        self.lookup(*g, *f).unwrap_or_else(|| {
            panic!("no composite recorded for ({}, {})", self.mor_name(*g), self.mor_name(*f))
        })
    }

    fn try_compose(&self, g: &MorId, f: &MorId) -> Result<MorId> {
        if self.cod(f) != self.dom(g) {
            return Err(CatError::NotComposable(format!(
                "cod({}) != dom({})",
                self.mor_name(*f),
                self.mor_name(*g)
            )));
        }
        self.lookup(*g, *f).ok_or_else(|| {
            CatError::Table(format!("no composite for ({}, {})", self.mor_name(*g), self.mor_name(*f)))
        })
    }

    fn objects(&self, bound: u64) -> Result<Vec<ObjId>> {
        if bound == 0 {
            return Ok(Vec::new());
        }
        Ok((0..self.obj_names.len() as u32).map(ObjId).collect())
    }

    fn size(&self, _a: &ObjId) -> u64 {
        1
    }

    fn hom_size(&self, a: &ObjId, b: &ObjId) -> u128 {
        self.homs[a.0 as usize * self.obj_names.len() + b.0 as usize].len() as u128
    }

    fn hom(&self, a: &ObjId, b: &ObjId) -> Result<Arc<Vec<MorId>>> {
        let h = &self.homs[a.0 as usize * self.obj_names.len() + b.0 as usize];
        check_cap(|| format!("hom({}, {})", self.obj_name(*a), self.obj_name(*b)), h.len() as u128, self.cap)?;
        Ok(h.clone())
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn obj_json(&self, a: &ObjId) -> Value {
        json!(self.obj_name(*a))
    }

    fn mor_json(&self, f: &MorId) -> Value {
        json!(self.mor_name(*f))
    }
}
