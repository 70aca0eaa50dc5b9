//! The holomorph Aut(G)·rho(G) as a concrete permutation group, regular
//! subgroup enumeration, normality tests, and the multiple holomorph T(G).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_isomorphic, FiniteGroup};
use crate::perm::{AutGroup, Permutation};

/// A holomorph element (alpha, g) acting as x -> (x^alpha)*g.
/// `alpha` indexes into the automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HolElement {
    pub alpha: usize,
    pub g: usize,
}

/// A group together with its materialized automorphism group; all
/// holomorph arithmetic lives here.
#[derive(Clone, Debug)]
pub struct Holomorph {
    pub group: FiniteGroup,
    pub aut: AutGroup,
}

impl Holomorph {
    pub fn build(group: FiniteGroup) -> Holomorph {
        let aut = AutGroup::compute(&group);
        Holomorph { group, aut }
    }

    pub fn order(&self) -> usize {
        self.aut.len() * self.group.order()
    }

    pub fn identity(&self) -> HolElement {
        HolElement {
            alpha: self.aut.identity,
            g: 0,
        }
    }

    /// (alpha, g)(beta, h) = (alpha beta, g^beta * h).
    pub fn compose(&self, a: HolElement, b: HolElement) -> HolElement {
        HolElement {
            alpha: self.aut.compose(a.alpha, b.alpha),
            g: self.group.mul(self.aut.apply(b.alpha, a.g), b.g),
        }
    }

    pub fn inverse(&self, a: HolElement) -> HolElement {
        let alpha = self.aut.inverse(a.alpha);
        HolElement {
            alpha,
            g: self.group.inv(self.aut.apply(alpha, a.g)),
        }
    }

    #[inline]
    pub fn apply(&self, a: HolElement, x: usize) -> usize {
        self.group.mul(self.aut.apply(a.alpha, x), a.g)
    }

    pub fn conj(&self, a: HolElement, by: HolElement) -> HolElement {
        self.compose(self.compose(self.inverse(by), a), by)
    }

    pub fn to_permutation(&self, a: HolElement) -> Permutation {
        Permutation::new((0..self.group.order()).map(|x| self.apply(a, x)).collect())
            .expect("holomorph elements act bijectively")
    }

    /// Membership of an arbitrary permutation: q = alpha rho(g) with
    /// g = 0^q, provided the residual map is an automorphism.
    pub fn element_from_permutation(&self, q: &Permutation) -> Option<HolElement> {
        if q.degree() != self.group.order() {
            return None;
        }
        let g = q.apply(0);
        let gi = self.group.inv(g);
        let images: Vec<usize> = (0..self.group.order())
            .map(|x| self.group.mul(q.apply(x), gi))
            .collect();
        let p = Permutation::new(images).ok()?;
        let alpha = self.aut.index_of(&p)?;
        Some(HolElement { alpha, g })
    }

    pub fn rho_element(&self, g: usize) -> HolElement {
        HolElement {
            alpha: self.aut.identity,
            g,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = HolElement> + '_ {
        (0..self.aut.len()).flat_map(move |alpha| {
            (0..self.group.order()).map(move |g| HolElement { alpha, g })
        })
    }
}

/// A regular subgroup of the holomorph. Regularity forces exactly one
/// element per g-component, so the subgroup is stored as the map
/// `gamma[g]` = automorphism index of the unique element over g.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RegularSubgroup {
    pub gamma: Vec<usize>,
}

impl RegularSubgroup {
    /// nu(g): the unique element with 0^nu(g) = g.
    pub fn nu(&self, g: usize) -> HolElement {
        HolElement {
            alpha: self.gamma[g],
            g,
        }
    }

    /// Sorted element set, the deduplication identity.
    pub fn elements(&self) -> Vec<HolElement> {
        let mut v: Vec<HolElement> = (0..self.gamma.len()).map(|g| self.nu(g)).collect();
        v.sort();
        v
    }

    pub fn element_set(&self) -> BTreeSet<HolElement> {
        (0..self.gamma.len()).map(|g| self.nu(g)).collect()
    }

    pub fn contains(&self, e: HolElement) -> bool {
        self.gamma[e.g] == e.alpha
    }

    /// Cayley table of the circle operation x o y = x^nu(y).
    pub fn circle_table(&self, hol: &Holomorph) -> Vec<Vec<usize>> {
        let n = self.gamma.len();
        (0..n)
            .map(|x| (0..n).map(|y| hol.apply(self.nu(y), x)).collect())
            .collect()
    }

    pub fn circle_group(&self, hol: &Holomorph) -> FiniteGroup {
        FiniteGroup::from_table(
            format!("circle({})", hol.group.name),
            self.circle_table(hol),
        )
        .expect("circle table of a regular subgroup is a group table")
    }
}

/// Complete, duplicate-free, deterministically ordered list of regular
/// subgroups of Hol(G), found by incremental closure search over gamma
/// values: each partial N = {gamma(g) rho(g)} must stay closed.
pub fn enumerate_regular_subgroups(hol: &Holomorph) -> Vec<RegularSubgroup> {
    let n = hol.group.order();
    let mut gamma: Vec<Option<usize>> = vec![None; n];
    gamma[0] = Some(hol.aut.identity);
    let mut assigned: Vec<usize> = vec![0];
    let mut out: Vec<RegularSubgroup> = Vec::new();
    search(hol, &mut gamma, &mut assigned, &mut out);
    out.sort();
    out
}

fn search(
    hol: &Holomorph,
    gamma: &mut Vec<Option<usize>>,
    assigned: &mut Vec<usize>,
    out: &mut Vec<RegularSubgroup>,
) {
    let n = hol.group.order();
    let next = (0..n).find(|&y| gamma[y].is_none());
    let y = match next {
        None => {
            out.push(RegularSubgroup {
                gamma: gamma.iter().map(|v| v.unwrap()).collect(),
            });
            return;
        }
        Some(y) => y,
    };
    let mark = assigned.len();
    for alpha in 0..hol.aut.len() {
        if close_with(hol, gamma, assigned, y, alpha) {
            search(hol, gamma, assigned, out);
        }
        for &z in &assigned[mark..] {
            gamma[z] = None;
        }
        assigned.truncate(mark);
    }
}

/// Assign gamma[y] = alpha and propagate closure under the holomorph
/// product; false on conflict (partial assignments are rolled back by the
/// caller via the trail in `assigned`).
fn close_with(
    hol: &Holomorph,
    gamma: &mut Vec<Option<usize>>,
    assigned: &mut Vec<usize>,
    y: usize,
    alpha: usize,
) -> bool {
    gamma[y] = Some(alpha);
    assigned.push(y);
    let mut head = assigned.len() - 1;
    while head < assigned.len() {
        let a = assigned[head];
        head += 1;
        let ga = gamma[a].unwrap();
        // Products (a, b) and (b, a) against every determined element.
        for i in 0..assigned.len() {
            let b = assigned[i];
            let gb = gamma[b].unwrap();
            for (x, gx, z, gz) in [(a, ga, b, gb), (b, gb, a, ga)] {
                // (gamma(x), x)(gamma(z), z) = (gamma(x)gamma(z), x^gamma(z) * z)
                let target = hol.group.mul(hol.aut.apply(gz, x), z);
                let req = hol.aut.compose(gx, gz);
                match gamma[target] {
                    None => {
                        gamma[target] = Some(req);
                        assigned.push(target);
                    }
                    Some(have) => {
                        if have != req {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Conjugate the regular subgroup elementwise by a holomorph element.
pub fn conjugate_subgroup(hol: &Holomorph, n: &RegularSubgroup, by: HolElement) -> BTreeSet<HolElement> {
    (0..n.gamma.len()).map(|g| hol.conj(n.nu(g), by)).collect()
}

pub fn is_normalized_by(hol: &Holomorph, n: &RegularSubgroup, by: HolElement) -> bool {
    (0..n.gamma.len()).all(|g| n.contains(hol.conj(n.nu(g), by)))
}

pub fn is_normalized_by_rho(hol: &Holomorph, n: &RegularSubgroup) -> bool {
    (0..hol.group.order()).all(|g| is_normalized_by(hol, n, hol.rho_element(g)))
}

pub fn is_normalized_by_aut(hol: &Holomorph, n: &RegularSubgroup) -> bool {
    (0..hol.aut.len()).all(|alpha| {
        is_normalized_by(
            hol,
            n,
            HolElement { alpha, g: 0 },
        )
    })
}

/// N is normal in Hol(G) iff it is normalized by both rho(G) and Aut(G),
/// since Hol = Aut(G) rho(G).
pub fn is_normal_in_hol(hol: &Holomorph, n: &RegularSubgroup) -> bool {
    is_normalized_by_rho(hol, n) && is_normalized_by_aut(hol, n)
}

/// The normalizer of N in Hol(G) and its index.
pub fn normalizer_in_hol(hol: &Holomorph, n: &RegularSubgroup) -> (Vec<HolElement>, usize) {
    let members: Vec<HolElement> = hol
        .elements()
        .filter(|&h| is_normalized_by(hol, n, h))
        .collect();
    let index = hol.order() / members.len();
    (members, index)
}

/// Conjugate N by an automorphism beta: {(alpha^beta, g^beta)}.
pub fn conjugate_by_aut(hol: &Holomorph, n: &RegularSubgroup, beta: usize) -> RegularSubgroup {
    let mut gamma = vec![0usize; n.gamma.len()];
    for g in 0..n.gamma.len() {
        gamma[hol.aut.apply(beta, g)] = hol.aut.conj(n.gamma[g], beta);
    }
    RegularSubgroup { gamma }
}

/// A small generating set of Hol(G): abstract generators of Aut(G) as
/// (beta, 0) plus group generators as (id, g).
pub fn hol_generating_set(hol: &Holomorph) -> Vec<HolElement> {
    let mut gens: Vec<HolElement> = aut_generating_set(&hol.aut)
        .into_iter()
        .map(|alpha| HolElement { alpha, g: 0 })
        .collect();
    gens.extend(
        crate::group::generating_set(&hol.group)
            .into_iter()
            .map(|g| hol.rho_element(g)),
    );
    gens
}

fn aut_generating_set(aut: &AutGroup) -> Vec<usize> {
    let m = aut.len();
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = close_indices(aut, &gens);
    while closure.len() < m {
        let x = (0..m).find(|x| !closure.contains(x)).unwrap();
        gens.push(x);
        closure = close_indices(aut, &gens);
    }
    gens
}

fn close_indices(aut: &AutGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::new();
    set.insert(aut.identity);
    let mut queue: Vec<usize> = vec![aut.identity];
    for &g in gens {
        if set.insert(g) {
            queue.push(g);
        }
    }
    while let Some(x) = queue.pop() {
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for y in snapshot {
            for z in [aut.compose(x, y), aut.compose(y, x)] {
                if set.insert(z) {
                    queue.push(z);
                }
            }
        }
    }
    set
}

/// |T(G)| by brute search over S(G) for the normalizer of Hol(G).
/// Refused above degree 8.
pub fn t_direct(hol: &Holomorph) -> Result<usize> {
    let n = hol.group.order();
    if n > 8 {
        return Err(Error::Bound(format!(
            "direct T(G) method allowed only for |G| <= 8, got {}",
            n
        )));
    }
    let gens = hol_generating_set(hol);
    let gen_perms: Vec<Permutation> = gens.iter().map(|&h| hol.to_permutation(h)).collect();
    let mut count = 0usize;
    let mut images: Vec<usize> = (0..n).collect();
    permute_all(&mut images, 0, &mut |tau_images| {
        let tau = Permutation::new(tau_images.to_vec()).unwrap();
        let tau_inv = tau.inverse();
        let normalizes = gen_perms
            .iter()
            .all(|p| hol.element_from_permutation(&tau_inv.compose(p).compose(&tau)).is_some());
        if normalizes {
            count += 1;
        }
    });
    Ok(count / hol.order())
}

fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_all(v, k + 1, f);
        v.swap(k, i);
    }
}

/// The Miller set H(G): regular subgroups with N isomorphic to G and
/// N normal in Hol(G). Returns indices into `regulars`.
pub fn miller_set(hol: &Holomorph, regulars: &[RegularSubgroup]) -> Vec<usize> {
    regulars
        .iter()
        .enumerate()
        .filter(|(_, n)| {
            is_normal_in_hol(hol, n)
                && is_isomorphic(&n.circle_group(hol), &hol.group).is_some()
        })
        .map(|(i, _)| i)
        .collect()
}

/// |T(G)| as |H(G)|.
pub fn t_miller(hol: &Holomorph, regulars: &[RegularSubgroup]) -> usize {
    miller_set(hol, regulars).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, is_isomorphic};

    #[test]
    fn hol_c4_is_dihedral_8() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        assert_eq!(hol.order(), 8);
        // Materialize Hol(C4) as an abstract group and compare with D4.
        let elems: Vec<HolElement> = hol.elements().collect();
        let index = |e: HolElement| elems.iter().position(|&x| x == e).unwrap();
        // Re-root so the identity is at 0.
        let id_pos = index(hol.identity());
        let reorder: Vec<HolElement> = std::iter::once(elems[id_pos])
            .chain(elems.iter().copied().filter(|&e| e != elems[id_pos]))
            .collect();
        let table: Vec<Vec<usize>> = reorder
            .iter()
            .map(|&a| {
                reorder
                    .iter()
                    .map(|&b| reorder.iter().position(|&x| x == hol.compose(a, b)).unwrap())
                    .collect()
            })
            .collect();
        let hol_abstract = FiniteGroup::from_table("hol(c4)", table).unwrap();
        assert!(is_isomorphic(&hol_abstract, &dihedral(4).unwrap()).is_some());
    }

    #[test]
    fn hol_d3_order_36() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        assert_eq!(hol.order(), 36);
    }

    #[test]
    fn hol_trivial_group() {
        let hol = Holomorph::build(cyclic(1).unwrap());
        assert_eq!(hol.order(), 1);
        assert_eq!(enumerate_regular_subgroups(&hol).len(), 1);
    }

    #[test]
    fn hol_composition_matches_permutation_composition() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        for a in hol.elements() {
            for b in hol.elements() {
                let lhs = hol.to_permutation(hol.compose(a, b));
                let rhs = hol.to_permutation(a).compose(&hol.to_permutation(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hol_action_is_faithful() {
        let hol = Holomorph::build(cyclic(6).unwrap());
        let mut seen = std::collections::BTreeSet::new();
        for e in hol.elements() {
            assert!(seen.insert(hol.to_permutation(e)));
        }
    }

    #[test]
    fn regular_subgroups_of_c4() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        let regs = enumerate_regular_subgroups(&hol);
        assert_eq!(regs.len(), 2);
        // One is rho(G) (trivial gamma), isomorphic to C4; the other Klein.
        let types: Vec<String> = regs
            .iter()
            .map(|n| {
                let c = n.circle_group(&hol);
                if is_isomorphic(&c, &cyclic(4).unwrap()).is_some() {
                    "c4".into()
                } else {
                    "klein".into()
                }
            })
            .collect();
        assert!(types.contains(&"c4".to_string()));
        assert!(types.contains(&"klein".to_string()));
    }

    #[test]
    fn cyclic_prime_has_single_regular_subgroup() {
        for p in [3usize, 5] {
            let hol = Holomorph::build(cyclic(p).unwrap());
            assert_eq!(enumerate_regular_subgroups(&hol).len(), 1);
        }
    }

    #[test]
    fn rho_is_normal_with_trivial_index() {
        for g in [cyclic(4).unwrap(), dihedral(3).unwrap()] {
            let hol = Holomorph::build(g);
            let regs = enumerate_regular_subgroups(&hol);
            let rho_n = regs
                .iter()
                .find(|n| n.gamma.iter().all(|&a| a == hol.aut.identity))
                .expect("rho(G) is always regular");
            assert!(is_normal_in_hol(&hol, rho_n));
            let (_, index) = normalizer_in_hol(&hol, rho_n);
            assert_eq!(index, 1);
        }
    }

    #[test]
    fn both_regular_subgroups_of_hol_c4_are_normal() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        for n in enumerate_regular_subgroups(&hol) {
            assert!(is_normal_in_hol(&hol, &n));
            assert_eq!(normalizer_in_hol(&hol, &n).1, 1);
        }
    }

    #[test]
    fn normal_iff_normalized_by_rho_and_aut() {
        for g in [cyclic(8).unwrap(), dihedral(4).unwrap()] {
            let hol = Holomorph::build(g);
            for n in enumerate_regular_subgroups(&hol) {
                let full = hol.elements().all(|h| is_normalized_by(&hol, &n, h));
                assert_eq!(full, is_normal_in_hol(&hol, &n));
                assert_eq!(
                    is_normal_in_hol(&hol, &n),
                    is_normalized_by_rho(&hol, &n) && is_normalized_by_aut(&hol, &n)
                );
            }
        }
    }

    #[test]
    fn t_of_c4_is_one() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        let regs = enumerate_regular_subgroups(&hol);
        assert_eq!(t_miller(&hol, &regs), 1);
        assert_eq!(t_direct(&hol).unwrap(), 1);
    }

    #[test]
    fn t_of_d3_even_and_at_least_two() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let regs = enumerate_regular_subgroups(&hol);
        let t = t_miller(&hol, &regs);
        assert!(t >= 2 && t % 2 == 0, "t = {}", t);
        assert_eq!(t_direct(&hol).unwrap(), t);
    }

    #[test]
    fn t_direct_refused_above_bound() {
        let hol = Holomorph::build(cyclic(9).unwrap());
        assert!(t_direct(&hol).is_err());
    }
}
