//! Integer matrices and Smith normal form with unimodular transforms.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diag(d: &[i128]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IMat {
        let mut out = IMat::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<i128> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i128) {
        if q != 0 {
            for j in 0..self.cols {
                let v = self.get(dst, j) + q * self.get(src, j);
                self.set(dst, j, v);
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i128) {
        if q != 0 {
            for i in 0..self.rows {
                let v = self.get(i, dst) + q * self.get(i, src);
                self.set(i, dst, v);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// `u * a * v == d` with `d` diagonal, nonnegative, each diagonal entry dividing the next
/// (zeros trailing). `u_inv`, `v_inv` are the exact inverses.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IMat,
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub v_inv: IMat,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }
}

pub fn smith(a: &IMat) -> Snf {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IMat::identity(r);
    let mut u_inv = IMat::identity(r);
    let mut v = IMat::identity(c);
    let mut v_inv = IMat::identity(c);

    // Each elementary op is mirrored on the transforms so that u*a*v == d throughout.
    macro_rules! row_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let (dst, src, q) = ($dst, $src, $q);
            d.add_row(dst, src, q);
            u.add_row(dst, src, q);
            u_inv.add_col(src, dst, -q);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let (dst, src, q) = ($dst, $src, $q);
            d.add_col(dst, src, q);
            v.add_col(dst, src, q);
            v_inv.add_row(src, dst, -q);
        }};
    }
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }

    let n = r.min(c);
    for t in 0..n {
        loop {
            // smallest nonzero |entry| in the trailing block; first one in row-major order on ties
            let mut best: Option<(usize, usize, i128)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j).abs();
                    if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            row_swap!(t, pi);
            col_swap!(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                let x = d.get(i, t);
                if x != 0 {
                    let q = x.div_euclid(d.get(t, t));
                    row_add!(i, t, -q);
                    if d.get(i, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..c {
                let x = d.get(t, j);
                if x != 0 {
                    let q = x.div_euclid(d.get(t, t));
                    col_add!(j, t, -q);
                    if d.get(t, j) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let p = d.get(t, t);
            let mut fixed = true;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if d.get(i, j) % p != 0 {
                        row_add!(t, i, 1);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
            let cols = u_inv.rows;
            for i in 0..cols {
                let x = -u_inv.get(i, t);
                u_inv.set(i, t, x);
            }
        }
    }
    Snf { d, u, u_inv, v, v_inv }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IMat) {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IMat::identity(a.rows));
        assert_eq!(s.v.mul(&s.v_inv), IMat::identity(a.cols));
        let diag = s.diagonal();
        for i in 0..a.rows {
            for j in 0..a.cols {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        for w in diag.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn diag_of_known_matrix() {
        // classic example: invariant factors 2, 6, 12
        let a = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&a);
        assert_eq!(smith(&a).diagonal(), vec![2, 6, 12]);
    }

    #[test]
    fn normalized_chain_keeps_identity_transforms() {
        let a = IMat::diag(&[2, 2, 4]);
        let s = smith(&a);
        assert_eq!(s.u, IMat::identity(3));
        assert_eq!(s.v, IMat::identity(3));
    }

    #[test]
    fn unsorted_diag_sorts() {
        let s = smith(&IMat::diag(&[4, 6]));
        assert_eq!(s.diagonal(), vec![2, 12]);
    }

    proptest! {
        #[test]
        fn smith_is_valid(r in 1usize..5, c in 1usize..5, seed in proptest::collection::vec(-9i128..10, 16)) {
            let mut a = IMat::zeros(r, c);
            for i in 0..r { for j in 0..c { a.set(i, j, seed[i * 4 + j]); } }
            check(&a);
        }
    }
}
