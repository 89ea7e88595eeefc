//! Smith normal form of a module map's entry matrix, read over `Z/m`.

use serde::Serialize;

use super::lattice::{gcd, smith, IMat};
use super::zmod::ModMorphism;

/// `u · a · v = d (mod m)` with `u`, `v` invertible over `Z/m` and `d` diagonal. Diagonal
/// entries are divisors of `m` in a divisibility chain, with `0` standing for `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub modulus: u32,
    pub d: Vec<Vec<u32>>,
    pub u: Vec<Vec<u32>>,
    pub u_inv: Vec<Vec<u32>>,
    pub v: Vec<Vec<u32>>,
    pub v_inv: Vec<Vec<u32>>,
}

fn reduce(a: &IMat, m: i128) -> IMat {
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, a.get(i, j).rem_euclid(m));
        }
    }
    out
}

fn to_rows(a: &IMat) -> Vec<Vec<u32>> {
    (0..a.rows).map(|i| a.row(i).into_iter().map(|x| x as u32).collect()).collect()
}

fn from_rows(rows: &[Vec<u32>], cols: usize) -> IMat {
    let mut a = IMat::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            a.set(i, j, x as i128);
        }
    }
    a
}

impl SnfResult {
    pub fn invariant_factors(&self) -> Vec<u32> {
        (0..self.d.len().min(self.v.len())).map(|i| self.d[i][i]).collect()
    }

    /// Re-checks `u · a · v = d` and both inverse pairs modulo `m`.
    pub fn reconstructs(&self, a: &ModMorphism) -> bool {
        let m = self.modulus as i128;
        let (r, c) = (self.u.len(), self.v.len());
        let (u, ui) = (from_rows(&self.u, r), from_rows(&self.u_inv, r));
        let (v, vi) = (from_rows(&self.v, c), from_rows(&self.v_inv, c));
        reduce(&u.mul(&a.to_imat()).mul(&v), m) == from_rows(&self.d, c)
            && reduce(&u.mul(&ui), m) == IMat::identity(r)
            && reduce(&v.mul(&vi), m) == IMat::identity(c)
    }
}

pub fn smith_normal_form(a: &ModMorphism) -> SnfResult {
    let m = a.dom().modulus() as i128;
    let s = smith(&a.to_imat());
    let mut u = reduce(&s.u, m);
    let mut u_inv = reduce(&s.u_inv, m);
    let mut d = reduce(&s.d, m);
    for i in 0..d.rows.min(d.cols) {
        let x = d.get(i, i);
        if x == 0 {
            continue;
        }
        let g = gcd(x, m);
        if g != x {
            // x = g·w for a unit w; scaling row i of u by w⁻¹ leaves g on the diagonal
            let w = (1..m).find(|&w| gcd(w, m) == 1 && (w * g) % m == x).expect("unit multiple");
            let w_inv = (1..m).find(|&y| (w * y) % m == 1).expect("unit inverse");
            for j in 0..u.cols {
                u.set(i, j, (u.get(i, j) * w_inv).rem_euclid(m));
                u_inv.set(j, i, (u_inv.get(j, i) * w).rem_euclid(m));
            }
            d.set(i, i, g);
        }
    }
    SnfResult {
        modulus: m as u32,
        d: to_rows(&d),
        u: to_rows(&u),
        u_inv: to_rows(&u_inv),
        v: to_rows(&reduce(&s.v, m)),
        v_inv: to_rows(&reduce(&s.v_inv, m)),
    }
}
