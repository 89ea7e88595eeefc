//! Orbit reduction of hom-sets under automorphism groups.
//!
//! Purity, splitness and the class predicates used in sweeps are invariant under
//! pre- and post-composition with isomorphisms, so a sweep only needs one
//! representative per orbit. Representatives are the first orbit member in canonical
//! hom order.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::category::Category;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// `Aut(b)` acting on `hom(a, b)` by post-composition.
    Left,
    /// `Aut(a)` acting by pre-composition.
    Right,
    /// `Aut(b) × Aut(a)`.
    Both,
}

/// A representative with the size of its orbit.
#[derive(Clone, Debug)]
pub struct Rep<M> {
    pub mor: M,
    pub orbit_size: usize,
}

type RepKey<O> = (O, O, Action);

pub struct Orbits<'a, C: Category> {
    cat: &'a C,
    gens: Mutex<HashMap<C::Obj, Arc<Vec<C::Mor>>>>,
    reps: Mutex<HashMap<RepKey<C::Obj>, Arc<Vec<Rep<C::Mor>>>>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Keeps the smaller index as root so roots are canonical-first.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl<'a, C: Category> Orbits<'a, C> {
    pub fn new(cat: &'a C) -> Self {
        Orbits { cat, gens: Mutex::new(HashMap::new()), reps: Mutex::new(HashMap::new()) }
    }

    pub fn category(&self) -> &'a C {
        self.cat
    }

    /// A generating set of `Aut(x)`, chosen greedily in canonical order.
    pub fn aut_generators(&self, x: &C::Obj) -> Result<Arc<Vec<C::Mor>>> {
        if let Some(g) = self.gens.lock().expect("orbit cache").get(x) {
            return Ok(g.clone());
        }
        let cat = self.cat;
        let mut gens: Vec<C::Mor> = Vec::new();
        let mut closure: HashSet<C::Mor> = HashSet::from([cat.id(x)]);
        for f in cat.hom(x, x)?.iter() {
            if closure.contains(f) || !cat.is_iso(f)? {
                continue;
            }
            gens.push(f.clone());
            let mut frontier: Vec<C::Mor> = closure.iter().cloned().collect();
            while let Some(a) = frontier.pop() {
                for g in &gens {
                    let b = cat.compose(g, &a);
                    if closure.insert(b.clone()) {
                        frontier.push(b);
                    }
                }
            }
        }
        let gens = Arc::new(gens);
        self.gens.lock().expect("orbit cache").insert(x.clone(), gens.clone());
        Ok(gens)
    }

    pub fn reps(&self, a: &C::Obj, b: &C::Obj, action: Action) -> Result<Arc<Vec<Rep<C::Mor>>>> {
        let key = (a.clone(), b.clone(), action);
        if let Some(r) = self.reps.lock().expect("orbit cache").get(&key) {
            return Ok(r.clone());
        }
        let cat = self.cat;
        let hom = cat.hom(a, b)?;
        let index: HashMap<&C::Mor, usize> = hom.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut uf = UnionFind((0..hom.len()).collect());
        let left = if action != Action::Right { self.aut_generators(b)? } else { Arc::new(Vec::new()) };
        let right = if action != Action::Left { self.aut_generators(a)? } else { Arc::new(Vec::new()) };
        for (i, f) in hom.iter().enumerate() {
            for g in left.iter() {
                uf.union(i, index[&cat.compose(g, f)]);
            }
            for h in right.iter() {
                uf.union(i, index[&cat.compose(f, h)]);
            }
        }
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for i in 0..hom.len() {
            *sizes.entry(uf.find(i)).or_default() += 1;
        }
        let mut roots: Vec<usize> = sizes.keys().copied().collect();
        roots.sort_unstable();
        let reps = Arc::new(
            roots.into_iter().map(|r| Rep { mor: hom[r].clone(), orbit_size: sizes[&r] }).collect::<Vec<_>>(),
        );
        self.reps.lock().expect("orbit cache").insert(key, reps.clone());
        Ok(reps)
    }

    /// Representatives of `hom(a, b)`, or every morphism when reduction is switched off.
    pub fn reps_or_all(&self, a: &C::Obj, b: &C::Obj, action: Option<Action>) -> Result<Arc<Vec<Rep<C::Mor>>>> {
        match action {
            Some(act) => self.reps(a, b, act),
            None => Ok(Arc::new(self.cat.hom(a, b)?.iter().map(|f| Rep { mor: f.clone(), orbit_size: 1 }).collect())),
        }
    }
}
