//! Linear congruence systems and the factorization problems they answer.
//!
//! Solutions are returned lexicographically least in the same order used for hom
//! enumeration, so the solver agrees with "first match in a scan".

use super::lattice::{gcd, lcm, smith, IMat};
use super::zmod::{Entries, ModMorphism};
use crate::error::{CatError, Result};

/// `Σ_j a_ij y_j ≡ b_i (mod n_i)` with `y_j ∈ [0, range_j)`.
/// Each column must be periodic: `a_ij * range_j ≡ 0 (mod n_i)`.
#[derive(Clone, Debug)]
pub struct Congruences {
    pub ranges: Vec<u32>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<i128>,
    pub rhs: i128,
    pub modulus: i128,
}

impl Congruences {
    /// Solvable over the integers with columns `from..` free and the rest fixed to zero.
    fn solvable_from(&self, from: usize, rhs: &[i128]) -> bool {
        let n = self.rows.iter().fold(1, |acc, r| lcm(acc, r.modulus));
        let k = self.rows.len();
        let free = self.ranges.len() - from;
        let mut a = IMat::zeros(k, free + k);
        let mut b = IMat::zeros(k, 1);
        for (i, row) in self.rows.iter().enumerate() {
            let scale = n / row.modulus;
            for j in 0..free {
                a.set(i, j, (row.coeffs[from + j] * scale).rem_euclid(n));
            }
            a.set(i, free + i, n);
            b.set(i, 0, (rhs[i] * scale).rem_euclid(n));
        }
        let s = smith(&a);
        let ub = s.u.mul(&b);
        (0..k).all(|i| {
            let d = s.d.get(i, i);
            let x = ub.get(i, 0);
            if d == 0 {
                x == 0
            } else {
                x % d == 0
            }
        })
    }

    pub fn solvable(&self) -> bool {
        let rhs: Vec<i128> = self.rows.iter().map(|r| r.rhs).collect();
        self.solvable_from(0, &rhs)
    }

    pub fn lexmin(&self) -> Option<Vec<u32>> {
        let mut rhs: Vec<i128> = self.rows.iter().map(|r| r.rhs).collect();
        if !self.solvable_from(0, &rhs) {
            return None;
        }
        let mut sol = Vec::with_capacity(self.ranges.len());
        for j in 0..self.ranges.len() {
            let mut chosen = None;
            for v in 0..self.ranges[j] {
                let trial: Vec<i128> = self
                    .rows
                    .iter()
                    .zip(&rhs)
                    .map(|(r, &b)| b - r.coeffs[j] * v as i128)
                    .collect();
                if self.solvable_from(j + 1, &trial) {
                    chosen = Some((v, trial));
                    break;
                }
            }
            let (v, trial) = chosen.expect("solvable system has a feasible next coordinate");
            sol.push(v);
            rhs = trial;
        }
        Some(sol)
    }
}

fn step(c: u32, d: u32) -> (u32, u32) {
    let g = gcd(c as i128, d as i128) as u32;
    (c / g, g)
}

/// Least `e: T -> C` with `e ∘ t = c`, if any.
pub fn solve_right_factor(t: &ModMorphism, c: &ModMorphism) -> Result<Option<ModMorphism>> {
    if t.dom() != c.dom() {
        return Err(CatError::NotComposable("right factor needs a common domain".into()));
    }
    let (tt, cc, s) = (t.cod(), c.cod(), t.dom());
    let mut entries = Entries::with_capacity(cc.rank() * tt.rank());
    for i in 0..cc.rank() {
        let ci = cc.factors()[i];
        let steps: Vec<(u32, u32)> = tt.factors().iter().map(|&d| step(ci, d)).collect();
        let rows = (0..s.rank())
            .map(|k| Row {
                coeffs: (0..tt.rank()).map(|j| steps[j].0 as i128 * t.get(j, k) as i128).collect(),
                rhs: c.get(i, k) as i128,
                modulus: ci as i128,
            })
            .collect();
        let sys = Congruences { ranges: steps.iter().map(|s| s.1).collect(), rows };
        match sys.lexmin() {
            Some(y) => entries.extend(y.iter().zip(&steps).map(|(&v, s)| v * s.0)),
            None => return Ok(None),
        }
    }
    Ok(Some(ModMorphism::from_raw(tt.clone(), cc.clone(), entries)))
}

/// Least `l: S -> D` with `p ∘ l = e`, if any.
pub fn solve_left_factor(p: &ModMorphism, e: &ModMorphism) -> Result<Option<ModMorphism>> {
    if p.cod() != e.cod() {
        return Err(CatError::NotComposable("left factor needs a common codomain".into()));
    }
    let (d, ee, s) = (p.dom(), p.cod(), e.dom());
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(s.rank());
    for k in 0..s.rank() {
        let sk = s.factors()[k];
        let steps: Vec<(u32, u32)> = d.factors().iter().map(|&dj| step(dj, sk)).collect();
        let rows = (0..ee.rank())
            .map(|i| Row {
                coeffs: (0..d.rank()).map(|j| p.get(i, j) as i128 * steps[j].0 as i128).collect(),
                rhs: e.get(i, k) as i128,
                modulus: ee.factors()[i] as i128,
            })
            .collect();
        let sys = Congruences { ranges: steps.iter().map(|s| s.1).collect(), rows };
        match sys.lexmin() {
            Some(y) => cols.push(y.iter().zip(&steps).map(|(&v, s)| v * s.0).collect()),
            None => return Ok(None),
        }
    }
    let mut entries = Entries::with_capacity(d.rank() * s.rank());
    for j in 0..d.rank() {
        for col in &cols {
            entries.push(col[j]);
        }
    }
    Ok(Some(ModMorphism::from_raw(s.clone(), d.clone(), entries)))
}

pub fn retraction(m: &ModMorphism) -> Result<Option<ModMorphism>> {
    solve_right_factor(m, &ModMorphism::identity(m.dom()))
}

pub fn section(p: &ModMorphism) -> Result<Option<ModMorphism>> {
    solve_left_factor(p, &ModMorphism::identity(p.cod()))
}

pub fn inverse(f: &ModMorphism) -> Result<Option<ModMorphism>> {
    if f.dom().size() != f.cod().size() {
        return Ok(None);
    }
    // a one-sided inverse between finite modules of equal size is two-sided
    retraction(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::zmod::ModObject;
    use proptest::prelude::*;

    fn obj(m: u32, f: &[u32]) -> ModObject {
        ModObject::new(m, f).unwrap()
    }

    fn scan_right(t: &ModMorphism, c: &ModMorphism) -> Option<ModMorphism> {
        ModMorphism::enumerate(t.cod(), c.cod())
            .into_iter()
            .find(|e| e.compose_unchecked(t) == *c)
    }

    fn scan_left(p: &ModMorphism, e: &ModMorphism) -> Option<ModMorphism> {
        ModMorphism::enumerate(e.dom(), p.dom())
            .into_iter()
            .find(|l| p.compose_unchecked(l) == *e)
    }

    fn small_objects() -> Vec<ModObject> {
        vec![
            obj(4, &[]),
            obj(4, &[2]),
            obj(4, &[4]),
            obj(4, &[2, 2]),
            obj(4, &[2, 4]),
            obj(4, &[4, 4]),
        ]
    }

    #[test]
    fn retraction_of_z2_into_z4_does_not_exist() {
        let i = ModMorphism::new(obj(4, &[2]), obj(4, &[4]), &[vec![2]]).unwrap();
        assert!(retraction(&i).unwrap().is_none());
        let j = ModMorphism::new(obj(4, &[2]), obj(4, &[2, 4]), &[vec![1], vec![0]]).unwrap();
        let r = retraction(&j).unwrap().unwrap();
        assert!(r.compose_unchecked(&j).is_identity());
    }

    #[test]
    fn solvers_agree_with_scan_exhaustively_on_small_objects() {
        let objs = small_objects();
        let mut checked = 0;
        for s in &objs {
            for t in &objs {
                for c in &objs {
                    let ts = ModMorphism::enumerate(s, t);
                    let cs = ModMorphism::enumerate(s, c);
                    if ts.len() * cs.len() > 4096 {
                        continue;
                    }
                    for tm in ts.iter().step_by(3) {
                        for cm in cs.iter().step_by(5) {
                            assert_eq!(solve_right_factor(tm, cm).unwrap(), scan_right(tm, cm));
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn left_solver_agrees_with_scan() {
        let objs = small_objects();
        for s in &objs {
            for d in &objs {
                for e in &objs {
                    let ps = ModMorphism::enumerate(d, e);
                    let es = ModMorphism::enumerate(s, e);
                    if ps.len() * es.len() > 4096 {
                        continue;
                    }
                    for p in ps.iter().step_by(3) {
                        for em in es.iter().step_by(5) {
                            assert_eq!(solve_left_factor(p, em).unwrap(), scan_left(p, em));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(a in 0u32..2, b in 0u32..2, c in 0u32..2, d in 0u32..2) {
            let v = ModObject::vector_space(2, 2);
            let f = ModMorphism::new(v.clone(), v.clone(), &[vec![a as i64, b as i64], vec![c as i64, d as i64]]).unwrap();
            let inv = inverse(&f).unwrap();
            prop_assert_eq!(inv.is_some(), (a * d + b * c) % 2 == 1);
            if let Some(g) = inv {
                prop_assert!(g.compose_unchecked(&f).is_identity());
                prop_assert!(f.compose_unchecked(&g).is_identity());
            }
        }
    }
}
