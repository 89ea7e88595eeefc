//! Morphism classes and exhaustive validators for the QE-mono / QE-epi axioms.

mod axioms;
mod membership;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CatError, Result};
use crate::limits::Limits;
use crate::orbits::{Action, Orbits};
use crate::purity::{check_regular_epi, check_regular_mono};

pub use axioms::{
    check_retract_closed, check_strong_characterization, validate_qe_epi, validate_qe_mono, validate_strong_qe_epi,
    Characterization, RetractDiagram, RetractVerdict,
};
pub use membership::{extract_m_sequence, extract_p_sequence, limclass_membership, MSequence, Orientation, PSequence};

/// Serializable description of a class. Table members are matched against the category's
/// own JSON rendering of a morphism, so names work for table categories and matrix
/// literals for module categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ClassDescriptor {
    All,
    Identities,
    Mono,
    Epi,
    SplitMono,
    SplitEpi,
    RegularMono,
    RegularEpi,
    CokerDiv { q: u32 },
    KerDiv { n: u32 },
    Table { members: Vec<Value> },
}

impl ClassDescriptor {
    /// Parses `{"kind": ...}` JSON, naming the offending field on failure.
    pub fn from_json(v: &Value) -> Result<Self> {
        let d: ClassDescriptor = serde_path_to_error::deserialize(v)
            .map_err(|e| CatError::Descriptor(format!("class at `{}`: {}", e.path(), e.inner())))?;
        d.validate()?;
        Ok(d)
    }

    /// Command-line shorthand: `split-mono`, `coker-div:2`, `ker-div:3`, `table:f,g`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<u32> {
            a.ok_or_else(|| CatError::Descriptor(format!("class `{kind}` needs a modulus, e.g. `{kind}:2`")))?
                .parse()
                .map_err(|_| CatError::Descriptor(format!("bad modulus in `{s}`")))
        };
        let d = match kind {
            "all" => ClassDescriptor::All,
            "identities" => ClassDescriptor::Identities,
            "mono" => ClassDescriptor::Mono,
            "epi" => ClassDescriptor::Epi,
            "split-mono" => ClassDescriptor::SplitMono,
            "split-epi" => ClassDescriptor::SplitEpi,
            "regular-mono" => ClassDescriptor::RegularMono,
            "regular-epi" => ClassDescriptor::RegularEpi,
            "coker-div" => ClassDescriptor::CokerDiv { q: num(arg)? },
            "ker-div" => ClassDescriptor::KerDiv { n: num(arg)? },
            "table" => ClassDescriptor::Table {
                members: arg
                    .unwrap_or("")
                    .split(',')
                    .map(str::trim)
                    .filter(|m| !m.is_empty())
                    .map(|m| Value::String(m.to_string()))
                    .collect(),
            },
            other => return Err(CatError::Descriptor(format!("unknown class kind `{other}`"))),
        };
        if arg.is_some() && !matches!(d, ClassDescriptor::CokerDiv { .. } | ClassDescriptor::KerDiv { .. } | ClassDescriptor::Table { .. }) {
            return Err(CatError::Descriptor(format!("class `{kind}` takes no argument")));
        }
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        match self {
            ClassDescriptor::CokerDiv { q } if *q < 2 => Err(CatError::Descriptor(format!("coker-div needs q >= 2, got {q}"))),
            ClassDescriptor::KerDiv { n } if *n < 2 => Err(CatError::Descriptor(format!("ker-div needs n >= 2, got {n}"))),
            _ => Ok(()),
        }
    }

    /// The class of opposite morphisms, read in the opposite category.
    pub fn dual(&self) -> Self {
        use ClassDescriptor::*;
        match self {
            Mono => Epi,
            Epi => Mono,
            SplitMono => SplitEpi,
            SplitEpi => SplitMono,
            RegularMono => RegularEpi,
            RegularEpi => RegularMono,
            CokerDiv { q } => KerDiv { n: *q },
            KerDiv { n } => CokerDiv { q: *n },
            other => other.clone(),
        }
    }

    /// Closed under composing with isomorphisms on either side, which licenses orbit
    /// reduction in every sweep.
    pub fn iso_invariant(&self) -> bool {
        !matches!(self, ClassDescriptor::Identities | ClassDescriptor::Table { .. })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("descriptor serializes")
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClassDescriptor::*;
        match self {
            All => write!(f, "all"),
            Identities => write!(f, "identities"),
            Mono => write!(f, "mono"),
            Epi => write!(f, "epi"),
            SplitMono => write!(f, "split-mono"),
            SplitEpi => write!(f, "split-epi"),
            RegularMono => write!(f, "regular-mono"),
            RegularEpi => write!(f, "regular-epi"),
            CokerDiv { q } => write!(f, "coker-div:{q}"),
            KerDiv { n } => write!(f, "ker-div:{n}"),
            Table { members } => {
                let names: Vec<String> =
                    members.iter().map(|m| m.as_str().map(str::to_string).unwrap_or_else(|| m.to_string())).collect();
                write!(f, "table:{}", names.join(","))
            }
        }
    }
}

/// A class bound to a category: a memoized membership predicate.
///
/// `bound` limits the (co)limit searches behind the regular classes.
pub struct MorphismClass<'c, C: Limits> {
    cat: &'c C,
    desc: ClassDescriptor,
    bound: u64,
    memo: Mutex<HashMap<C::Mor, bool>>,
}

impl<'c, C: Limits> MorphismClass<'c, C> {
    pub fn new(cat: &'c C, desc: ClassDescriptor, bound: u64) -> Self {
        MorphismClass { cat, desc, bound, memo: Mutex::new(HashMap::new()) }
    }

    pub fn category(&self) -> &'c C {
        self.cat
    }

    pub fn descriptor(&self) -> &ClassDescriptor {
        &self.desc
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, f: &C::Mor) -> Result<bool> {
        if let Some(&v) = self.memo.lock().expect("class memo").get(f) {
            return Ok(v);
        }
        let v = self.evaluate(f)?;
        self.memo.lock().expect("class memo").insert(f.clone(), v);
        Ok(v)
    }

    fn evaluate(&self, f: &C::Mor) -> Result<bool> {
        let cat = self.cat;
        let unsupported = |what: &str| CatError::Unsupported(format!("{what} needs a concrete category"));
        Ok(match &self.desc {
            ClassDescriptor::All => true,
            ClassDescriptor::Identities => cat.is_identity(f),
            ClassDescriptor::Mono => cat.is_mono(f)?,
            ClassDescriptor::Epi => cat.is_epi(f)?,
            ClassDescriptor::SplitMono => cat.find_retraction(f)?.is_some(),
            ClassDescriptor::SplitEpi => cat.find_section(f)?.is_some(),
            ClassDescriptor::RegularMono => match check_regular_mono(cat, f, self.bound) {
                Ok(v) => v.regular,
                Err(CatError::Missing(_)) => false,
                Err(e) => return Err(e),
            },
            ClassDescriptor::RegularEpi => match check_regular_epi(cat, f, self.bound) {
                Ok(v) => v.regular,
                Err(CatError::Missing(_)) => false,
                Err(e) => return Err(e),
            },
            ClassDescriptor::CokerDiv { q } => {
                cat.is_mono(f)? && cat.cokernel_length(f).ok_or_else(|| unsupported("coker-div"))? % *q as usize == 0
            }
            ClassDescriptor::KerDiv { n } => {
                cat.is_epi(f)? && cat.kernel_length(f).ok_or_else(|| unsupported("ker-div"))? % *n as usize == 0
            }
            ClassDescriptor::Table { members } => {
                let name = cat.mor_json(f);
                members.iter().any(|m| *m == name)
            }
        })
    }
}

/// One axiom's outcome. `checked` counts the diagrams examined (orbit representatives
/// when the class is isomorphism invariant).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomVerdict {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<Value>,
}

impl AxiomVerdict {
    fn new(name: &str) -> Self {
        AxiomVerdict { name: name.to_string(), passed: true, checked: 0, witness: None }
    }

    fn fail(&mut self, witness: Value) {
        self.passed = false;
        self.witness = Some(witness);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QeReport {
    pub category: String,
    pub class: String,
    pub orientation: String,
    pub bound: u64,
    pub axioms: Vec<AxiomVerdict>,
}

impl QeReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = json!(self.passed());
        v
    }
}

/// Hom-set sweep that falls back to the full hom-set when the class is not iso invariant.
pub(crate) struct Sweep<'a, C: Limits> {
    orbits: Orbits<'a, C>,
    reduce: bool,
}

impl<'a, C: Limits> Sweep<'a, C> {
    pub(crate) fn new(cat: &'a C, reduce: bool) -> Self {
        Sweep { orbits: Orbits::new(cat), reduce }
    }

    pub(crate) fn list(&self, a: &C::Obj, b: &C::Obj, action: Action) -> Result<Vec<C::Mor>> {
        let reps = self.orbits.reps_or_all(a, b, self.reduce.then_some(action))?;
        Ok(reps.iter().map(|r| r.mor.clone()).collect())
    }
}

#[cfg(test)]
mod tests;
