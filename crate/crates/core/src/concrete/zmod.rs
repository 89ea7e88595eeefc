//! Finite modules over Z/m in invariant-factor form and the matrices between them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::lattice::{gcd, smith, IMat};
use crate::error::{CatError, Result};

pub type Factors = SmallVec<[u32; 4]>;
pub type Entries = SmallVec<[u32; 16]>;

/// `Z/f_1 ⊕ … ⊕ Z/f_k` with `1 < f_1 | f_2 | … | f_k | modulus`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModObject {
    modulus: u32,
    factors: Factors,
}

impl ModObject {
    pub fn new(modulus: u32, factors: &[u32]) -> Result<Self> {
        if modulus < 2 {
            return Err(CatError::InvalidObject(format!("modulus {modulus} must be at least 2")));
        }
        for (i, &f) in factors.iter().enumerate() {
            if f < 2 || modulus % f != 0 {
                return Err(CatError::InvalidObject(format!(
                    "factor {f} at index {i} must be > 1 and divide {modulus}"
                )));
            }
            if i > 0 && f % factors[i - 1] != 0 {
                return Err(CatError::InvalidObject(format!(
                    "factors {:?} do not form a divisibility chain",
                    factors
                )));
            }
        }
        Ok(ModObject { modulus, factors: factors.iter().copied().collect() })
    }

    pub fn zero(modulus: u32) -> Self {
        ModObject { modulus, factors: Factors::new() }
    }

    pub fn vector_space(p: u32, dim: usize) -> Self {
        ModObject { modulus: p, factors: std::iter::repeat_n(p, dim).collect() }
    }

    /// Normal form of `Z/r_1 ⊕ … ⊕ Z/r_k` for arbitrary divisors `r_i` of the modulus.
    pub fn normalize(modulus: u32, raw: &[u32]) -> Result<Self> {
        Ok(Normalization::of(modulus, raw)?.object)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn size(&self) -> u64 {
        self.factors.iter().map(|&f| f as u64).product()
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    /// Length of a composition series (number of prime factors of the order, with multiplicity).
    pub fn length(&self) -> usize {
        length_of(self.size())
    }

    /// All elements as coordinate vectors, in lexicographic order.
    pub fn elements(&self) -> Vec<Factors> {
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut cur: Factors = std::iter::repeat_n(0, self.rank()).collect();
        loop {
            out.push(cur.clone());
            if !advance(&mut cur, |i| self.factors[i]) {
                return out;
            }
        }
    }
}

impl Ord for ModObject {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then(self.size().cmp(&other.size()))
            .then(self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for ModObject {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("Z/{x}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl Serialize for ModObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

/// Number of prime factors of `n`, with multiplicity.
pub fn length_of(mut n: u64) -> usize {
    let mut len = 0;
    let mut p = 2;
    while n > 1 {
        while n % p == 0 {
            n /= p;
            len += 1;
        }
        p += 1;
    }
    len
}

/// Odometer step over a mixed-radix counter; the last digit moves fastest.
fn advance(cur: &mut [u32], radix: impl Fn(usize) -> u32) -> bool {
    for i in (0..cur.len()).rev() {
        cur[i] += 1;
        if cur[i] < radix(i) {
            return true;
        }
        cur[i] = 0;
    }
    false
}

/// A homomorphism given by its matrix; entry `(i, j)` is the image of generator `j`
/// of the domain in coordinate `i` of the codomain, reduced mod `cod.factors[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModMorphism {
    dom: ModObject,
    cod: ModObject,
    entries: Entries,
}

#[derive(Deserialize)]
pub struct MorphismLiteral {
    pub dom: Vec<u32>,
    pub cod: Vec<u32>,
    pub mat: Vec<Vec<i64>>,
}

impl ModMorphism {
    pub fn new(dom: ModObject, cod: ModObject, rows: &[Vec<i64>]) -> Result<Self> {
        if dom.modulus != cod.modulus {
            return Err(CatError::InvalidMorphism("domain and codomain over different rings".into()));
        }
        if rows.len() != cod.rank() || rows.iter().any(|r| r.len() != dom.rank()) {
            return Err(CatError::InvalidMorphism(format!(
                "matrix shape must be {}x{}",
                cod.rank(),
                dom.rank()
            )));
        }
        let mut entries = Entries::new();
        for (i, row) in rows.iter().enumerate() {
            let c = cod.factors[i] as i64;
            for (j, &x) in row.iter().enumerate() {
                let v = x.rem_euclid(c);
                if (dom.factors[j] as i64 * v) % c != 0 {
                    return Err(CatError::InvalidMorphism(format!(
                        "entry ({i},{j}) = {x} does not give a well-defined map Z/{} -> Z/{}",
                        dom.factors[j], c
                    )));
                }
                entries.push(v as u32);
            }
        }
        Ok(ModMorphism { dom, cod, entries })
    }

    pub fn from_literal(modulus: u32, lit: &MorphismLiteral) -> Result<Self> {
        let dom = ModObject::new(modulus, &lit.dom)?;
        let cod = ModObject::new(modulus, &lit.cod)?;
        let rows = if cod.rank() == 0 { vec![] } else { lit.mat.clone() };
        ModMorphism::new(dom, cod, &rows)
    }

    /// Entries already reduced and checked by the caller.
    pub(crate) fn from_raw(dom: ModObject, cod: ModObject, entries: Entries) -> Self {
        debug_assert_eq!(entries.len(), dom.rank() * cod.rank());
        ModMorphism { dom, cod, entries }
    }

    /// Reduces an integer matrix (codomain rows by domain columns) mod the codomain factors.
    pub(crate) fn from_imat(dom: &ModObject, cod: &ModObject, m: &IMat) -> Self {
        debug_assert_eq!((m.rows, m.cols), (cod.rank(), dom.rank()));
        let mut entries = Entries::with_capacity(m.rows * m.cols);
        for i in 0..m.rows {
            let c = cod.factors[i] as i128;
            for j in 0..m.cols {
                entries.push(m.get(i, j).rem_euclid(c) as u32);
            }
        }
        let out = ModMorphism { dom: dom.clone(), cod: cod.clone(), entries };
        debug_assert!(out.is_well_defined());
        out
    }

    pub fn identity(x: &ModObject) -> Self {
        let n = x.rank();
        let mut entries = Entries::from_elem(0, n * n);
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ModMorphism { dom: x.clone(), cod: x.clone(), entries }
    }

    pub fn zero(dom: &ModObject, cod: &ModObject) -> Self {
        ModMorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            entries: Entries::from_elem(0, dom.rank() * cod.rank()),
        }
    }

    pub fn dom(&self) -> &ModObject {
        &self.dom
    }

    pub fn cod(&self) -> &ModObject {
        &self.cod
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dom.rank() + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.cod.rank())
            .map(|i| (0..self.dom.rank()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn to_imat(&self) -> IMat {
        let mut m = IMat::zeros(self.cod.rank(), self.dom.rank());
        for i in 0..self.cod.rank() {
            for j in 0..self.dom.rank() {
                m.set(i, j, self.get(i, j) as i128);
            }
        }
        m
    }

    pub fn is_well_defined(&self) -> bool {
        (0..self.cod.rank()).all(|i| {
            let c = self.cod.factors[i];
            (0..self.dom.rank()).all(|j| {
                let v = self.get(i, j);
                v < c && (self.dom.factors[j] as u64 * v as u64) % c as u64 == 0
            })
        })
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ModMorphism) -> Result<ModMorphism> {
        if f.cod != self.dom {
            return Err(CatError::NotComposable(format!("{} -> {} then {} -> {}", f.dom, f.cod, self.dom, self.cod)));
        }
        Ok(self.compose_unchecked(f))
    }

    #[inline]
    pub fn compose_unchecked(&self, f: &ModMorphism) -> ModMorphism {
        debug_assert_eq!(f.cod, self.dom);
        let (r, k, c) = (self.cod.rank(), self.dom.rank(), f.dom.rank());
        let mut entries = Entries::from_elem(0, r * c);
        for i in 0..r {
            let m = self.cod.factors[i];
            for j in 0..c {
                let mut acc: u64 = 0;
                for l in 0..k {
                    acc += self.entries[i * k + l] as u64 * f.entries[l * c + j] as u64;
                }
                entries[i * c + j] = (acc % m as u64) as u32;
            }
        }
        ModMorphism { dom: f.dom.clone(), cod: self.cod.clone(), entries }
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b, m| (a + b) % m))
    }

    pub fn sub(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b, m| (a + m - b) % m))
    }

    pub fn neg(&self) -> ModMorphism {
        self.zip(self, |a, _, m| (m - a) % m)
    }

    fn same_shape(&self, other: &ModMorphism) -> Result<()> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(CatError::InvalidMorphism("operands have different domain or codomain".into()));
        }
        Ok(())
    }

    fn zip(&self, other: &ModMorphism, op: impl Fn(u32, u32, u32) -> u32) -> ModMorphism {
        let k = self.dom.rank();
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .enumerate()
            .map(|(idx, (&a, &b))| op(a, b, self.cod.factors[idx / k.max(1)]))
            .collect();
        ModMorphism { dom: self.dom.clone(), cod: self.cod.clone(), entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && *self == ModMorphism::identity(&self.dom)
    }

    pub fn apply(&self, x: &[u32]) -> Factors {
        let k = self.dom.rank();
        (0..self.cod.rank())
            .map(|i| {
                let mut acc: u64 = 0;
                for j in 0..k {
                    acc += self.entries[i * k + j] as u64 * x[j] as u64;
                }
                (acc % self.cod.factors[i] as u64) as u32
            })
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        if self.dom.size() > self.cod.size() {
            return false;
        }
        let mut cur: Factors = std::iter::repeat_n(0, self.dom.rank()).collect();
        // only the nonzero elements need to be checked
        while advance(&mut cur, |i| self.dom.factors[i]) {
            if self.apply(&cur).iter().all(|&v| v == 0) {
                return false;
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() == self.cod.size()
    }

    pub fn image_size(&self) -> u64 {
        self.dom.size() / self.kernel_size()
    }

    pub fn kernel_size(&self) -> u64 {
        let mut cur: Factors = std::iter::repeat_n(0, self.dom.rank()).collect();
        let mut n = 1;
        while advance(&mut cur, |i| self.dom.factors[i]) {
            if self.apply(&cur).iter().all(|&v| v == 0) {
                n += 1;
            }
        }
        n
    }

    pub fn is_iso(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    /// Number of morphisms `dom -> cod`.
    pub fn hom_size(dom: &ModObject, cod: &ModObject) -> u128 {
        let mut n: u128 = 1;
        for &c in cod.factors() {
            for &d in dom.factors() {
                n = n.saturating_mul(gcd(c as i128, d as i128) as u128);
            }
        }
        n
    }

    /// All morphisms `dom -> cod` in row-major lexicographic order of their matrices.
    pub fn enumerate(dom: &ModObject, cod: &ModObject) -> Vec<ModMorphism> {
        let (r, k) = (cod.rank(), dom.rank());
        let steps: Vec<u32> = (0..r * k)
            .map(|idx| {
                let c = cod.factors[idx / k];
                c / gcd(c as i128, dom.factors[idx % k] as i128) as u32
            })
            .collect();
        let counts: Vec<u32> = (0..r * k).map(|idx| cod.factors[idx / k] / steps[idx]).collect();
        let total = Self::hom_size(dom, cod) as usize;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0u32; r * k];
        loop {
            let entries: Entries = digits.iter().zip(&steps).map(|(&d, &s)| d * s).collect();
            out.push(ModMorphism { dom: dom.clone(), cod: cod.clone(), entries });
            if !advance(&mut digits, |i| counts[i]) {
                return out;
            }
        }
    }
}

impl fmt::Display for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.dom, self.cod, self.rows())
    }
}

impl Serialize for ModMorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ModMorphism", 3)?;
        st.serialize_field("dom", &self.dom)?;
        st.serialize_field("cod", &self.cod)?;
        st.serialize_field("mat", &self.rows())?;
        st.end()
    }
}

/// Isomorphism between `Z^k / diag(raw)` and its invariant-factor normal form.
pub(crate) struct Normalization {
    pub object: ModObject,
    /// raw coordinates -> normal-form coordinates (rows: normal factors, cols: raw)
    pub to_norm: IMat,
    /// normal generators -> raw coordinates (rows: raw, cols: normal factors)
    pub from_norm: IMat,
}

impl Normalization {
    pub fn of(modulus: u32, raw: &[u32]) -> Result<Self> {
        if let Some(&bad) = raw.iter().find(|&&r| r == 0 || modulus % r != 0) {
            return Err(CatError::InvalidObject(format!("cyclic factor {bad} does not divide {modulus}")));
        }
        let diag: Vec<i128> = raw.iter().map(|&r| r as i128).collect();
        let s = smith(&IMat::diag(&diag));
        let d = s.diagonal();
        let keep: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 1).collect();
        let factors: Vec<u32> = keep.iter().map(|&i| d[i] as u32).collect();
        let object = ModObject::new(modulus, &factors)?;
        let mut to_norm = IMat::zeros(keep.len(), raw.len());
        let mut from_norm = IMat::zeros(raw.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for j in 0..raw.len() {
                to_norm.set(a, j, s.u.get(i, j));
                from_norm.set(j, a, s.u_inv.get(j, i));
            }
        }
        Ok(Normalization { object, to_norm, from_norm })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(m: u32, f: &[u32]) -> ModObject {
        ModObject::new(m, f).unwrap()
    }

    #[test]
    fn object_validation() {
        assert!(ModObject::new(4, &[2, 4]).is_ok());
        assert!(ModObject::new(4, &[4, 2]).is_err());
        assert!(ModObject::new(4, &[3]).is_err());
        assert!(ModObject::new(4, &[1]).is_err());
    }

    #[test]
    fn normalize_crt() {
        assert_eq!(ModObject::normalize(12, &[4, 3]).unwrap(), obj(12, &[12]));
        assert_eq!(ModObject::normalize(4, &[4, 2, 1]).unwrap(), obj(4, &[2, 4]));
    }

    #[test]
    fn hom_counts_match_enumeration() {
        // |hom(Z/2+Z/4, Z/4)| = gcd(4,2)*gcd(4,4) = 8
        let a = obj(4, &[2, 4]);
        let b = obj(4, &[4]);
        assert_eq!(ModMorphism::hom_size(&a, &b), 8);
        let all = ModMorphism::enumerate(&a, &b);
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|f| f.is_well_defined()));
        assert_eq!(all[0], ModMorphism::zero(&a, &b));
        // strictly increasing in row-major order
        for w in all.windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
    }

    #[test]
    fn hom_of_zero_objects_is_singleton() {
        let z = ModObject::zero(2);
        let v = ModObject::vector_space(2, 2);
        assert_eq!(ModMorphism::enumerate(&z, &v).len(), 1);
        assert_eq!(ModMorphism::enumerate(&v, &z).len(), 1);
    }

    #[test]
    fn literal_rejects_ill_defined_entries() {
        let lit = MorphismLiteral { dom: vec![2], cod: vec![4], mat: vec![vec![1]] };
        assert!(ModMorphism::from_literal(4, &lit).is_err());
        let lit = MorphismLiteral { dom: vec![2], cod: vec![4], mat: vec![vec![2]] };
        let f = ModMorphism::from_literal(4, &lit).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_surjective());
    }

    #[test]
    fn composition_and_injectivity() {
        let z2 = obj(4, &[2]);
        let z4 = obj(4, &[4]);
        let i = ModMorphism::new(z2.clone(), z4.clone(), &[vec![2]]).unwrap();
        let p = ModMorphism::new(z4.clone(), z2.clone(), &[vec![1]]).unwrap();
        assert!(p.after(&i).unwrap().is_zero());
        assert_eq!(i.after(&p).unwrap().rows(), vec![vec![2]]);
        assert_eq!(z4.length(), 2);
        assert_eq!(i.kernel_size(), 1);
        assert_eq!(p.kernel_size(), 2);
    }
}
