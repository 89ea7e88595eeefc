//! Kernels, cokernels, images and biproducts of module maps, computed through Smith forms.

use super::lattice::{smith, IMat};
use super::zmod::{ModMorphism, ModObject, Normalization};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biproduct {
    pub apex: ModObject,
    pub inj: Vec<ModMorphism>,
    pub proj: Vec<ModMorphism>,
}

impl Biproduct {
    /// `[f_1, …, f_n]: ⊕ X_i -> Y`.
    pub fn copair(&self, maps: &[ModMorphism]) -> Result<ModMorphism> {
        let mut acc = ModMorphism::zero(&self.apex, maps[0].cod());
        for (f, p) in maps.iter().zip(&self.proj) {
            acc = acc.add(&f.after(p)?)?;
        }
        Ok(acc)
    }

    /// `⟨g_1, …, g_n⟩: Y -> ⊕ X_i`.
    pub fn pair(&self, maps: &[ModMorphism]) -> Result<ModMorphism> {
        let mut acc = ModMorphism::zero(maps[0].dom(), &self.apex);
        for (g, i) in maps.iter().zip(&self.inj) {
            acc = acc.add(&i.after(g)?)?;
        }
        Ok(acc)
    }
}

pub fn biproduct(parts: &[ModObject]) -> Result<Biproduct> {
    let modulus = parts[0].modulus();
    let raw: Vec<u32> = parts.iter().flat_map(|p| p.factors().iter().copied()).collect();
    let n = Normalization::of(modulus, &raw)?;
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut offset = 0;
    for p in parts {
        let k = p.rank();
        let cols = n.to_norm.submatrix(0..n.to_norm.rows, offset..offset + k);
        inj.push(ModMorphism::from_imat(p, &n.object, &cols));
        let rows = n.from_norm.submatrix(offset..offset + k, 0..n.from_norm.cols);
        proj.push(ModMorphism::from_imat(&n.object, p, &rows));
        offset += k;
    }
    Ok(Biproduct { apex: n.object, inj, proj })
}

fn diag_of(x: &ModObject) -> IMat {
    IMat::diag(&x.factors().iter().map(|&f| f as i128).collect::<Vec<_>>())
}

/// The canonical projection `cod(phi) -> cod(phi)/im(phi)`.
pub fn cokernel(phi: &ModMorphism) -> Result<ModMorphism> {
    let y = phi.cod();
    let r = diag_of(y).hcat(&phi.to_imat());
    let s = smith(&r);
    let keep: Vec<usize> = (0..y.rank()).filter(|&i| s.d.get(i, i) != 1).collect();
    let factors: Vec<u32> = keep.iter().map(|&i| s.d.get(i, i) as u32).collect();
    let q = ModObject::new(y.modulus(), &factors)?;
    let mut m = IMat::zeros(keep.len(), y.rank());
    for (a, &i) in keep.iter().enumerate() {
        for j in 0..y.rank() {
            m.set(a, j, s.u.get(i, j));
        }
    }
    Ok(ModMorphism::from_imat(y, &q, &m))
}

/// The inclusion `ker(phi) -> dom(phi)`.
pub fn kernel(phi: &ModMorphism) -> Result<ModMorphism> {
    let (x, y) = (phi.dom(), phi.cod());
    let k = x.rank();
    if k == 0 {
        return Ok(ModMorphism::identity(x));
    }
    // integer solutions of Φ v ∈ diag(y) Z^l, projected to the first k coordinates
    let a = phi.to_imat().hcat(&diag_of(y));
    let s = smith(&a);
    let rank = s.rank();
    let b = s.v.submatrix(0..k, rank..k + y.rank());
    debug_assert_eq!(b.cols, k);
    // relations of L/dx·Z^k in the basis b: M = b⁻¹·diag(x)
    let sb = smith(&b);
    let mut m = sb.u.mul(&diag_of(x));
    for i in 0..k {
        let dii = sb.d.get(i, i);
        for j in 0..k {
            let v = m.get(i, j);
            debug_assert_eq!(v % dii, 0);
            m.set(i, j, v / dii);
        }
    }
    let m = sb.v.mul(&m);
    let sm = smith(&m);
    let keep: Vec<usize> = (0..k).filter(|&i| sm.d.get(i, i) != 1).collect();
    let factors: Vec<u32> = keep.iter().map(|&i| sm.d.get(i, i) as u32).collect();
    let kobj = ModObject::new(x.modulus(), &factors)?;
    let gens = b.mul(&sm.u_inv);
    let mut incl = IMat::zeros(k, keep.len());
    for (a, &i) in keep.iter().enumerate() {
        for r in 0..k {
            incl.set(r, a, gens.get(r, i));
        }
    }
    Ok(ModMorphism::from_imat(&kobj, x, &incl))
}

/// `(I, x -> I surjective, I -> y injective)` with the composite equal to `phi`.
pub fn image(phi: &ModMorphism) -> Result<(ModMorphism, ModMorphism)> {
    let q = cokernel(phi)?;
    let incl = kernel(&q)?;
    let corestriction = super::solve::solve_left_factor(&incl, phi)?
        .expect("a map factors through the kernel of its cokernel");
    Ok((corestriction, incl))
}

/// Pushout of the span `C' <-f- C -m-> D`: returns `(D', m': C' -> D', f': D -> D')`.
pub fn pushout(f: &ModMorphism, m: &ModMorphism) -> Result<(ModObject, ModMorphism, ModMorphism)> {
    if m.is_identity() {
        return Ok((f.cod().clone(), ModMorphism::identity(f.cod()), f.clone()));
    }
    if f.is_identity() {
        return Ok((m.cod().clone(), m.clone(), ModMorphism::identity(m.cod())));
    }
    let bp = biproduct(&[f.cod().clone(), m.cod().clone()])?;
    let psi = bp.inj[0].after(f)?.sub(&bp.inj[1].after(m)?)?;
    let q = cokernel(&psi)?;
    let m2 = q.after(&bp.inj[0])?;
    let f2 = q.after(&bp.inj[1])?;
    Ok((q.cod().clone(), m2, f2))
}

/// Pullback of the cospan `D -p-> E <-f- E'`: returns `(D', p': D' -> E', f': D' -> D)`.
pub fn pullback(p: &ModMorphism, f: &ModMorphism) -> Result<(ModObject, ModMorphism, ModMorphism)> {
    if p.is_identity() {
        return Ok((f.dom().clone(), ModMorphism::identity(f.dom()), f.clone()));
    }
    if f.is_identity() {
        return Ok((p.dom().clone(), p.clone(), ModMorphism::identity(p.dom())));
    }
    let bp = biproduct(&[p.dom().clone(), f.dom().clone()])?;
    let psi = p.after(&bp.proj[0])?.sub(&f.after(&bp.proj[1])?)?;
    let k = kernel(&psi)?;
    let p2 = bp.proj[1].after(&k)?;
    let f2 = bp.proj[0].after(&k)?;
    Ok((k.dom().clone(), p2, f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn obj(m: u32, f: &[u32]) -> ModObject {
        ModObject::new(m, f).unwrap()
    }

    fn objs4() -> Vec<ModObject> {
        vec![obj(4, &[]), obj(4, &[2]), obj(4, &[4]), obj(4, &[2, 2]), obj(4, &[2, 4])]
    }

    #[test]
    fn biproduct_identities() {
        for a in objs4() {
            for b in objs4() {
                let bp = biproduct(&[a.clone(), b.clone()]).unwrap();
                assert_eq!(bp.apex.size(), a.size() * b.size());
                assert!(bp.proj[0].after(&bp.inj[0]).unwrap().is_identity());
                assert!(bp.proj[1].after(&bp.inj[1]).unwrap().is_identity());
                assert!(bp.proj[0].after(&bp.inj[1]).unwrap().is_zero());
                let sum = bp.inj[0]
                    .after(&bp.proj[0])
                    .unwrap()
                    .add(&bp.inj[1].after(&bp.proj[1]).unwrap())
                    .unwrap();
                assert!(sum.is_identity());
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_sizes_match_element_counts() {
        for a in objs4() {
            for b in objs4() {
                for phi in ModMorphism::enumerate(&a, &b) {
                    let k = kernel(&phi).unwrap();
                    let q = cokernel(&phi).unwrap();
                    assert!(k.is_injective());
                    assert!(phi.after(&k).unwrap().is_zero());
                    assert_eq!(k.dom().size(), phi.kernel_size());
                    assert!(q.is_surjective());
                    assert!(q.after(&phi).unwrap().is_zero());
                    assert_eq!(q.cod().size() * phi.image_size(), b.size());
                }
            }
        }
    }

    #[test]
    fn cokernel_of_doubling_on_z4() {
        let d = ModMorphism::new(obj(4, &[4]), obj(4, &[4]), &[vec![2]]).unwrap();
        let q = cokernel(&d).unwrap();
        assert_eq!(q.cod(), &obj(4, &[2]));
        let k = kernel(&d).unwrap();
        assert_eq!(k.dom(), &obj(4, &[2]));
        assert_eq!(k.rows(), vec![vec![2]]);
    }

    proptest! {
        #[test]
        fn pushout_square_commutes(fi in 0usize..64, mi in 0usize..64) {
            let c = obj(4, &[2, 4]);
            let targets = objs4();
            let fs: Vec<_> = targets.iter().flat_map(|t| ModMorphism::enumerate(&c, t)).collect();
            let f = &fs[fi % fs.len()];
            let m = &fs[mi % fs.len()];
            let (apex, m2, f2) = pushout(f, m).unwrap();
            prop_assert_eq!(m2.after(f).unwrap(), f2.after(m).unwrap());
            // |D'| = |C'|·|D| / |im(f - m)| computed independently by counting
            let bp = biproduct(&[f.cod().clone(), m.cod().clone()]).unwrap();
            let psi = bp.pair(&[f.clone(), m.neg()]).unwrap();
            prop_assert_eq!(apex.size() * psi.image_size(), f.cod().size() * m.cod().size());
        }

        #[test]
        fn pullback_square_commutes(pi in 0usize..64, fi in 0usize..64) {
            let e = obj(4, &[2, 4]);
            let sources = objs4();
            let ps: Vec<_> = sources.iter().flat_map(|s| ModMorphism::enumerate(s, &e)).collect();
            let p = &ps[pi % ps.len()];
            let f = &ps[fi % ps.len()];
            let (apex, p2, f2) = pullback(p, f).unwrap();
            prop_assert_eq!(p.after(&f2).unwrap(), f.after(&p2).unwrap());
            // count pairs (d, e') with p d = f e'
            let mut count = 0u64;
            for d in p.dom().elements() {
                for x in f.dom().elements() {
                    if p.apply(&d) == f.apply(&x) { count += 1; }
                }
            }
            prop_assert_eq!(apex.size(), count);
        }
    }
}
