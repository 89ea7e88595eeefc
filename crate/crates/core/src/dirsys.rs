//! Eventually periodic ω-chains of finite modules
//! `X_0 -> X_1 -> … -> X_r -g-> X_r -g-> X_r -> …`, their colimits, and colimits of
//! chain morphisms.
//!
//! The colimit of the periodic tail is the eventual image `E = g^N(X_r)`, on which `g`
//! restricts to an automorphism `h`. The canonical map from the first tail copy is
//! `π = h^{-N} g^N`, and the copy `k` steps later maps by `h^{-k} π`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::category::Category;
use crate::concrete::{ops, solve, ModCategory, ModMorphism, ModObject};
use crate::error::{CatError, Result};
use crate::purity::{is_pure_epi, is_pure_mono, TestSuite};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSystem {
    pub prefix: Vec<ModObject>,
    /// `maps[i]: prefix[i] -> prefix[i + 1]`
    pub maps: Vec<ModMorphism>,
    /// endomorphism of the last prefix object, repeated forever
    pub tail: ModMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMorphism {
    pub source: ChainSystem,
    pub target: ChainSystem,
    pub levels: Vec<ModMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainColimit {
    pub object: ModObject,
    /// canonical map from each prefix level; the last one is `π`
    pub canonical: Vec<ModMorphism>,
    /// `g` restricted to the eventual image
    pub h: ModMorphism,
    pub h_inv: ModMorphism,
    /// stabilization exponent
    pub n: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainJson {
    prefix: Vec<Vec<u32>>,
    maps: Vec<Vec<Vec<i64>>>,
    tail: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainMorphismJson {
    source: Value,
    target: Value,
    levels: Vec<Vec<Vec<i64>>>,
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| CatError::Descriptor(format!("{}: {}", e.path(), e.inner())))
}

impl ChainSystem {
    pub fn new(prefix: Vec<ModObject>, maps: Vec<ModMorphism>, tail: ModMorphism) -> Result<Self> {
        let c = ChainSystem { prefix, maps, tail };
        c.check()?;
        Ok(c)
    }

    /// The constant chain at `x` with identity transitions.
    pub fn constant(x: &ModObject) -> Self {
        ChainSystem { prefix: vec![x.clone()], maps: vec![], tail: ModMorphism::identity(x) }
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(CatError::Precondition(msg));
        if self.prefix.is_empty() {
            return bad("a chain needs at least one object".into());
        }
        if self.maps.len() + 1 != self.prefix.len() {
            return bad(format!("{} objects need {} maps", self.prefix.len(), self.prefix.len() - 1));
        }
        for (i, f) in self.maps.iter().enumerate() {
            if *f.dom() != self.prefix[i] || *f.cod() != self.prefix[i + 1] {
                return bad(format!("maps[{i}] is not a map X_{i} -> X_{}", i + 1));
            }
        }
        let last = self.last();
        if self.tail.dom() != last || self.tail.cod() != last {
            return bad("tail must be an endomorphism of the last object".into());
        }
        Ok(())
    }

    pub fn last(&self) -> &ModObject {
        self.prefix.last().expect("non-empty prefix")
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn from_json(cat: &ModCategory, v: &Value) -> Result<Self> {
        let j: ChainJson = parse(v)?;
        let prefix = j
            .prefix
            .iter()
            .enumerate()
            .map(|(i, f)| cat.object(f).map_err(|e| CatError::Descriptor(format!("prefix[{i}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if j.maps.len() + 1 != prefix.len() {
            return Err(CatError::Descriptor(format!("maps: expected {} matrices", prefix.len() - 1)));
        }
        let maps = j
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                ModMorphism::new(prefix[i].clone(), prefix[i + 1].clone(), m)
                    .map_err(|e| CatError::Descriptor(format!("maps[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let last = prefix.last().expect("non-empty").clone();
        let tail = ModMorphism::new(last.clone(), last, &j.tail).map_err(|e| CatError::Descriptor(format!("tail: {e}")))?;
        ChainSystem::new(prefix, maps, tail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prefix": self.prefix.iter().map(|x| x.factors().to_vec()).collect::<Vec<_>>(),
            "maps": self.maps.iter().map(ModMorphism::rows).collect::<Vec<_>>(),
            "tail": self.tail.rows(),
        })
    }
}

impl ChainMorphism {
    pub fn new(source: ChainSystem, target: ChainSystem, levels: Vec<ModMorphism>) -> Result<Self> {
        let cm = ChainMorphism { source, target, levels };
        cm.check()?;
        Ok(cm)
    }

    fn check(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        if x.len() != y.len() || self.levels.len() != x.len() {
            return Err(CatError::Precondition("chain morphism needs chains and levels of equal length".into()));
        }
        for (i, m) in self.levels.iter().enumerate() {
            if *m.dom() != x.prefix[i] || *m.cod() != y.prefix[i] {
                return Err(CatError::Precondition(format!("levels[{i}] is not a map X_{i} -> Y_{i}")));
            }
        }
        for i in 0..x.maps.len() {
            if self.levels[i + 1].compose_unchecked(&x.maps[i]) != y.maps[i].compose_unchecked(&self.levels[i]) {
                return Err(CatError::Precondition(format!("naturality square {i} does not commute")));
            }
        }
        let r = self.levels.last().expect("non-empty");
        if r.compose_unchecked(&x.tail) != y.tail.compose_unchecked(r) {
            return Err(CatError::Precondition("tail square does not commute".into()));
        }
        Ok(())
    }

    pub fn from_json(cat: &ModCategory, v: &Value) -> Result<Self> {
        let j: ChainMorphismJson = parse(v)?;
        let source = ChainSystem::from_json(cat, &j.source)?;
        let target = ChainSystem::from_json(cat, &j.target)?;
        if j.levels.len() != source.len() {
            return Err(CatError::Descriptor(format!("levels: expected {} matrices", source.len())));
        }
        let levels = j
            .levels
            .iter()
            .enumerate()
            .map(|(i, m)| {
                ModMorphism::new(source.prefix[i].clone(), target.prefix[i].clone(), m)
                    .map_err(|e| CatError::Descriptor(format!("levels[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ChainMorphism::new(source, target, levels)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "levels": self.levels.iter().map(ModMorphism::rows).collect::<Vec<_>>(),
        })
    }
}

fn bit_length(n: u64) -> u32 {
    64 - n.leading_zeros()
}

fn power(g: &ModMorphism, n: u32) -> ModMorphism {
    (0..n).fold(ModMorphism::identity(g.dom()), |acc, _| g.compose_unchecked(&acc))
}

pub fn chain_colimit(chain: &ChainSystem) -> Result<ChainColimit> {
    chain.check()?;
    let x = chain.last();
    let g = &chain.tail;
    let n = bit_length(x.size());
    let (object, pi, h, h_inv) = if g.is_iso() {
        let h_inv = solve::inverse(g)?.ok_or_else(|| CatError::Internal("iso without inverse".into()))?;
        (x.clone(), ModMorphism::identity(x), g.clone(), h_inv)
    } else {
        let gn = power(g, n);
        let (cores, incl) = ops::image(&gn)?;
        let e = incl.dom().clone();
        let h = solve::solve_left_factor(&incl, &g.compose_unchecked(&incl))?
            .ok_or_else(|| CatError::Internal("g does not preserve its eventual image".into()))?;
        let h_inv = solve::inverse(&h)?
            .ok_or_else(|| CatError::Internal(format!("g is not invertible on g^{n}(X_r)")))?;
        let pi = power(&h_inv, n).compose_unchecked(&cores);
        (e, pi, h, h_inv)
    };
    let mut canonical = vec![pi];
    for f in chain.maps.iter().rev() {
        let next = canonical.last().expect("non-empty").compose_unchecked(f);
        canonical.push(next);
    }
    canonical.reverse();
    let out = ChainColimit { object, canonical, h, h_inv, n };
    if !cocone_consistent(chain, &out) {
        return Err(CatError::Internal("computed colimit cocone does not commute".into()));
    }
    Ok(out)
}

/// `canonical[i+1] ∘ f_i = canonical[i]` and `h^{-1} π g = π`.
pub fn cocone_consistent(chain: &ChainSystem, colim: &ChainColimit) -> bool {
    let prefix_ok = chain
        .maps
        .iter()
        .enumerate()
        .all(|(i, f)| colim.canonical[i + 1].compose_unchecked(f) == colim.canonical[i]);
    let pi = colim.canonical.last().expect("non-empty");
    prefix_ok && colim.h_inv.compose_unchecked(pi).compose_unchecked(&chain.tail) == *pi
}

/// Universality against every cocone into objects of size at most `bound`.
///
/// Cocones on the periodic tail with vertex `Y` are the compatible sequences under
/// `G = (- ∘ g)` on `hom(X_r, Y)`; those are in bijection with the stable image of `G`,
/// and the prefix legs are determined by the first tail leg. The colimit is universal
/// when `u ↦ u ∘ π` is a bijection from `hom(L, Y)` onto that stable image.
pub fn verify_colimit(cat: &ModCategory, chain: &ChainSystem, colim: &ChainColimit, bound: u64) -> Result<bool> {
    let x = chain.last();
    let pi = colim.canonical.last().expect("non-empty");
    for y in cat.objects(bound)? {
        let homs = cat.hom(x, &y)?;
        let mut stable: std::collections::HashSet<ModMorphism> = homs.iter().cloned().collect();
        loop {
            let next: std::collections::HashSet<ModMorphism> =
                stable.iter().map(|c| c.compose_unchecked(&chain.tail)).collect();
            if next.len() == stable.len() {
                break;
            }
            stable = next;
        }
        let ls = cat.hom(&colim.object, &y)?;
        if ls.len() != stable.len() {
            return Ok(false);
        }
        let mut seen = std::collections::HashSet::new();
        for u in ls.iter() {
            let c = u.compose_unchecked(pi);
            if !stable.contains(&c) || !seen.insert(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The morphism `μ: L_X -> L_Y` with `μ π_X = π_Y m_r`; unique because `π_X` is onto.
pub fn colimit_of_chain_morphism(cm: &ChainMorphism) -> Result<ModMorphism> {
    cm.check()?;
    let (lx, ly) = (chain_colimit(&cm.source)?, chain_colimit(&cm.target)?);
    let px = lx.canonical.last().expect("non-empty");
    let py = ly.canonical.last().expect("non-empty");
    if !px.is_surjective() {
        return Err(CatError::Internal("canonical map onto the colimit is not surjective".into()));
    }
    let target = py.compose_unchecked(cm.levels.last().expect("non-empty"));
    let mu = solve::solve_right_factor(px, &target)?
        .ok_or_else(|| CatError::Internal("no induced morphism between colimits".into()))?;
    for (i, m) in cm.levels.iter().enumerate() {
        if mu.compose_unchecked(&lx.canonical[i]) != ly.canonical[i].compose_unchecked(m) {
            return Err(CatError::Internal(format!("induced morphism fails to commute at level {i}")));
        }
    }
    Ok(mu)
}

/// Colimit of levelwise split monos, checked for purity against `tests`.
pub fn verify_colimit_purity(cm: &ChainMorphism, tests: &TestSuite<ModCategory>) -> Result<bool> {
    for (i, m) in cm.levels.iter().enumerate() {
        if solve::retraction(m)?.is_none() {
            return Err(CatError::Precondition(format!("level {i} is not a split mono")));
        }
    }
    let mu = colimit_of_chain_morphism(cm)?;
    Ok(is_pure_mono(&mu, tests)?.pure)
}

/// Dual: colimit of levelwise split epis, checked for pure-epi lifting.
pub fn verify_colimit_purity_epi(cm: &ChainMorphism, tests: &TestSuite<ModCategory>) -> Result<bool> {
    for (i, p) in cm.levels.iter().enumerate() {
        if solve::section(p)?.is_none() {
            return Err(CatError::Precondition(format!("level {i} is not a split epi")));
        }
    }
    let mu = colimit_of_chain_morphism(cm)?;
    Ok(is_pure_epi(&mu, tests)?.pure)
}

fn random_morphism(rng: &mut ChaCha8Rng, dom: &ModObject, cod: &ModObject) -> ModMorphism {
    let rows: Vec<Vec<i64>> = cod
        .factors()
        .iter()
        .map(|&c| {
            dom.factors()
                .iter()
                .map(|&d| {
                    let g = crate::concrete::lattice::gcd(c as i128, d as i128) as i64;
                    (c as i64 / g) * rng.gen_range(0..g)
                })
                .collect()
        })
        .collect();
    ModMorphism::new(dom.clone(), cod.clone(), &rows).expect("entries are multiples of c / gcd(c, d)")
}

fn random_chain(rng: &mut ChaCha8Rng, objs: &[ModObject], len: usize) -> ChainSystem {
    let prefix: Vec<ModObject> = (0..len).map(|_| objs.choose(rng).expect("objects").clone()).collect();
    let maps = prefix.windows(2).map(|w| random_morphism(rng, &w[0], &w[1])).collect();
    let last = prefix.last().expect("len >= 1").clone();
    let tail = random_morphism(rng, &last, &last);
    ChainSystem { prefix, maps, tail }
}

/// Block transition `[[f, b], [0, z]]` on `X ⊕ Z`, so that the summand inclusions commute.
fn upper_block(bx: &ops::Biproduct, by: &ops::Biproduct, f: &ModMorphism, b: &ModMorphism, z: &ModMorphism) -> Result<ModMorphism> {
    let xx = by.inj[0].compose_unchecked(f).compose_unchecked(&bx.proj[0]);
    let xz = by.inj[0].compose_unchecked(b).compose_unchecked(&bx.proj[1]);
    let zz = by.inj[1].compose_unchecked(z).compose_unchecked(&bx.proj[1]);
    xx.add(&xz)?.add(&zz)
}

/// Block transition `[[f, 0], [b, z]]` on `X ⊕ Z`, so that the summand projections commute.
fn lower_block(bx: &ops::Biproduct, by: &ops::Biproduct, f: &ModMorphism, b: &ModMorphism, z: &ModMorphism) -> Result<ModMorphism> {
    let xx = by.inj[0].compose_unchecked(f).compose_unchecked(&bx.proj[0]);
    let zx = by.inj[1].compose_unchecked(b).compose_unchecked(&bx.proj[0]);
    let zz = by.inj[1].compose_unchecked(z).compose_unchecked(&bx.proj[1]);
    xx.add(&zx)?.add(&zz)
}

/// Levelwise split chain morphisms `X_i -> X_i ⊕ Z_i` (`epi = false`, summand inclusions)
/// or `X_i ⊕ Z_i -> X_i` (`epi = true`, projections), with random transitions mixing the
/// summands. Summands are drawn from objects of `cat` up to `summand_bound`.
pub fn generate_split_corpus(
    cat: &ModCategory,
    summand_bound: u64,
    count: usize,
    seed: u64,
    epi: bool,
) -> Result<Vec<ChainMorphism>> {
    let objs = cat.objects(summand_bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(1..=3);
        let x = random_chain(&mut rng, &objs, len);
        let zs: Vec<ModObject> = (0..len).map(|_| objs.choose(&mut rng).expect("objects").clone()).collect();
        let bps = zs
            .iter()
            .zip(&x.prefix)
            .map(|(z, xi)| ops::biproduct(&[xi.clone(), z.clone()]))
            .collect::<Result<Vec<_>>>()?;
        let block = |rng: &mut ChaCha8Rng, i: usize, j: usize, f: &ModMorphism| -> Result<ModMorphism> {
            let z = random_morphism(rng, &zs[i], &zs[j]);
            if epi {
                let b = random_morphism(rng, &x.prefix[i], &zs[j]);
                lower_block(&bps[i], &bps[j], f, &b, &z)
            } else {
                let b = random_morphism(rng, &zs[i], &x.prefix[j]);
                upper_block(&bps[i], &bps[j], f, &b, &z)
            }
        };
        let mut maps = Vec::new();
        for (i, f) in x.maps.iter().enumerate() {
            maps.push(block(&mut rng, i, i + 1, f)?);
        }
        let tail = block(&mut rng, len - 1, len - 1, &x.tail)?;
        let y = ChainSystem::new(bps.iter().map(|b| b.apex.clone()).collect(), maps, tail)?;
        let cm = if epi {
            let levels = bps.iter().map(|b| b.proj[0].clone()).collect();
            ChainMorphism::new(y, x, levels)?
        } else {
            let levels = bps.iter().map(|b| b.inj[0].clone()).collect();
            ChainMorphism::new(x, y, levels)?
        };
        out.push(cm);
    }
    Ok(out)
}
