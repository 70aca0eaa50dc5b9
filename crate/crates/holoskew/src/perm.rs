//! Permutations of the element set, regular representations, and the
//! full automorphism group.
//!
//! Convention: permutations act on the right (exponent notation), and
//! composition reads left to right, so `apply(compose(p, q), x) =
//! apply(q, apply(p, x))`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{generating_set, subgroup_closure, FiniteGroup, Subgroup};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Mismatch(format!(
                    "not a bijection on 0..{}: image list {:?}",
                    n, images
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Left-to-right: first self, then other.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degree"
        );
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn checked_compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::Mismatch(format!(
                "degree {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// rho(g): x -> x*g, the right regular representation.
pub fn rho(g: &FiniteGroup, y: usize) -> Permutation {
    Permutation {
        images: (0..g.order()).map(|x| g.mul(x, y)).collect(),
    }
}

/// lambda(g): x -> g^-1 * x. With left-to-right composition this makes
/// lambda a homomorphism, and rho(G)^inv = lambda(G) setwise.
pub fn lambda_rep(g: &FiniteGroup, y: usize) -> Permutation {
    let yi = g.inv(y);
    Permutation {
        images: (0..g.order()).map(|x| g.mul(yi, x)).collect(),
    }
}

/// inv: x -> x^-1.
pub fn inv_map(g: &FiniteGroup) -> Permutation {
    Permutation {
        images: (0..g.order()).map(|x| g.inv(x)).collect(),
    }
}

pub fn is_automorphism(g: &FiniteGroup, p: &Permutation) -> bool {
    let n = g.order();
    if p.degree() != n || p.apply(0) != 0 {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| p.apply(g.mul(i, j)) == g.mul(p.apply(i), p.apply(j))))
}

/// inner(y): x -> y^-1 x y, verified to be an automorphism.
pub fn inner(g: &FiniteGroup, y: usize) -> Permutation {
    let p = Permutation {
        images: (0..g.order()).map(|x| g.conj(x, y)).collect(),
    };
    debug_assert!(is_automorphism(g, &p));
    p
}

/// The full automorphism group, materialized with a composition table.
/// Automorphisms are sorted lexicographically by image arrays, so index 0
/// need not be the identity; use `identity` for that.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub perms: Vec<Permutation>,
    pub identity: usize,
    /// Dense composition table, materialized only for small Aut groups;
    /// larger ones compose permutations and look the result up.
    comp: Option<Vec<usize>>,
    inv: Vec<usize>,
    index_of: HashMap<Vec<usize>, usize>,
}

/// Above this many automorphisms the dense m*m composition table is
/// skipped.
const COMP_TABLE_LIMIT: usize = 4096;

impl AutGroup {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        match &self.comp {
            Some(t) => t[a * self.perms.len() + b],
            None => {
                let c = self.perms[a].compose(&self.perms[b]);
                *self
                    .index_of
                    .get(c.images())
                    .expect("automorphism group closed under composition")
            }
        }
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index_of.get(p.images()).copied()
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.perms[a].apply(x)
    }

    /// Conjugate a^b = b^-1 a b (left-to-right).
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.compose(self.compose(self.inv[b], a), b)
    }

    /// Enumerate Aut(G) by backtracking over images of a small generating
    /// set, pruning by element order.
    pub fn compute(g: &FiniteGroup) -> AutGroup {
        let n = g.order();
        let gens = generating_set(g);
        let mut perms: Vec<Permutation> = Vec::new();
        if gens.is_empty() {
            perms.push(Permutation::identity(1));
        } else {
            let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
            let mut images = vec![0usize; gens.len()];
            collect_autos(g, &gens, &orders, &mut images, 0, &mut perms);
        }
        perms.sort();
        let m = perms.len();
        let index_of: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        let identity = index_of[&(0..n).collect::<Vec<_>>()];
        let comp = if m <= COMP_TABLE_LIMIT {
            let mut t = vec![0usize; m * m];
            for a in 0..m {
                for b in 0..m {
                    let c = perms[a].compose(&perms[b]);
                    t[a * m + b] = *index_of
                        .get(c.images())
                        .expect("automorphism group closed under composition");
                }
            }
            Some(t)
        } else {
            None
        };
        let mut inv = vec![0usize; m];
        for a in 0..m {
            inv[a] = index_of[perms[a].inverse().images()];
        }
        AutGroup {
            perms,
            identity,
            comp,
            inv,
            index_of,
        }
    }
}

fn collect_autos(
    g: &FiniteGroup,
    gens: &[usize],
    orders: &[usize],
    images: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Permutation>,
) {
    if depth == gens.len() {
        if let Some(map) = extend_images(g, gens, images, None) {
            let p = Permutation { images: map };
            if is_automorphism(g, &p) {
                out.push(p);
            }
        }
        return;
    }
    let partial = subgroup_closure(g, &gens[..=depth]);
    for cand in 0..g.order() {
        if g.element_order(cand) != orders[depth] {
            continue;
        }
        images[depth] = cand;
        if extend_images(g, &gens[..=depth], &images[..=depth], Some(&partial)).is_some() {
            collect_autos(g, gens, orders, images, depth + 1, out);
        }
    }
}

/// Extend generator images over products. With a domain, only checks
/// consistency and injectivity on that subgroup; without, requires the
/// map to be total.
fn extend_images(
    g: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    domain: Option<&Subgroup>,
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut known = vec![0usize];
    let mut head = 0;
    while head < known.len() {
        let x = known[head];
        head += 1;
        for (&gen, &img) in gens.iter().zip(images) {
            let y = g.mul(x, gen);
            let fy = g.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                known.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    match domain {
        Some(d) => {
            let mut seen = vec![false; n];
            for &x in &d.members {
                let v = map[x];
                if v == usize::MAX || seen[v] {
                    return None;
                }
                seen[v] = true;
            }
            Some(map)
        }
        None => {
            if known.len() < n {
                return None;
            }
            let mut seen = vec![false; n];
            for &v in &map {
                if seen[v] {
                    return None;
                }
                seen[v] = true;
            }
            Some(map)
        }
    }
}
