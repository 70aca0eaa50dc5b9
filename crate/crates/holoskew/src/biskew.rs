//! The seven-way characterization of bi-skew braces, the six-way
//! characterization of regular subgroups normal in the holomorph, the
//! two-of-three lemmas, and classification of braces up to isomorphism.
//!
//! Each criterion is evaluated by its own route (swapping the operations,
//! conjugating in the holomorph, checking identities pointwise, closing
//! commutator subgroups), so that their agreement is a genuine
//! cross-check rather than a tautology.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{circle_from_gamma, opposite_gamma, regular_from_gamma, GammaFunction};
use crate::group::subgroup_closure;
use crate::holomorph::{
    conjugate_by_aut, is_normalized_by, is_normalized_by_aut, Holomorph, RegularSubgroup,
};
use crate::perm::{is_automorphism, Permutation};

/// One flag per bi-skew criterion; the seven are equivalent, so any
/// disagreement is an internal error. `witnesses` records, per failed
/// criterion, a pair of elements exhibiting the failure.
#[derive(Clone, Debug, Serialize)]
pub struct BiskewReport {
    /// (G, o, .) is again a skew brace, checked on the swapped pair.
    pub swap_is_brace: bool,
    /// N = {gamma(y) rho(y)} is normalized by rho(G) in Hol(G).
    pub rho_normalizes: bool,
    /// gamma(x y) = gamma(y) gamma(x).
    pub anti_homomorphism: bool,
    /// gamma(x^gamma(y)) = gamma(x)^gamma(y).
    pub gamma_equivariant: bool,
    /// Both identities above, evaluated on the raw permutations without
    /// assuming gamma is a GF.
    pub function_pair: bool,
    /// gamma([G, gammabar(G)]) = 1.
    pub bar_commutator_kernel: bool,
    /// gamma(x^-1 y^-1 x^gamma(y) y) = 1.
    pub commutator_word: bool,
    pub witnesses: BTreeMap<&'static str, (usize, usize)>,
}

impl BiskewReport {
    pub fn flags(&self) -> [bool; 7] {
        [
            self.swap_is_brace,
            self.rho_normalizes,
            self.anti_homomorphism,
            self.gamma_equivariant,
            self.function_pair,
            self.bar_commutator_kernel,
            self.commutator_word,
        ]
    }

    /// All seven criteria gave the same verdict.
    pub fn agreement(&self) -> bool {
        let f = self.flags();
        f.iter().all(|&b| b == f[0])
    }

    pub fn is_biskew(&self) -> bool {
        self.flags().iter().all(|&b| b)
    }
}

pub fn biskew_report(hol: &Holomorph, gamma: &GammaFunction) -> Result<BiskewReport> {
    let g = &hol.group;
    let n = g.order();
    let mut witnesses: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();

    // (1) Swap the operations: gamma'(y) = gamma(y)^-1 must be a GF on
    // (G, o) whose circle recovers the dot operation. Validated directly
    // on the circle table: each gamma'(y) must be an automorphism of
    // (G, o) and the GFE must hold with respect to o.
    let brace = circle_from_gamma(hol, gamma)?;
    let circle = &brace.circle;
    let mut swap_is_brace = true;
    'swap: for y in 0..n {
        let prime = hol.aut.inverse(gamma.values[y]);
        if !is_automorphism(circle, &hol.aut.perms[prime]) {
            swap_is_brace = false;
            witnesses.insert("swap_is_brace", (y, y));
            break 'swap;
        }
        for x in 0..n {
            let target = circle.mul(hol.aut.apply(prime, x), y);
            let lhs = hol.aut.inverse(gamma.values[target]);
            let rhs = hol.aut.compose(
                hol.aut.inverse(gamma.values[x]),
                hol.aut.inverse(gamma.values[y]),
            );
            if lhs != rhs {
                swap_is_brace = false;
                witnesses.insert("swap_is_brace", (x, y));
                break 'swap;
            }
        }
    }

    // (2) N normalized by rho(G), by actual conjugation in Hol(G).
    let reg = regular_from_gamma(hol, gamma);
    let mut rho_normalizes = true;
    for y in 0..n {
        if !is_normalized_by(hol, &reg, hol.rho_element(y)) {
            rho_normalizes = false;
            witnesses.insert("rho_normalizes", (y, 0));
            break;
        }
    }

    // (3) Anti-homomorphism, in automorphism indices.
    let mut anti_homomorphism = true;
    'anti: for x in 0..n {
        for y in 0..n {
            if gamma.values[g.mul(x, y)] != hol.aut.compose(gamma.values[y], gamma.values[x]) {
                anti_homomorphism = false;
                witnesses.insert("anti_homomorphism", (x, y));
                break 'anti;
            }
        }
    }

    // (4) Equivariance gamma(x^gamma(y)) = gamma(x)^gamma(y).
    let mut gamma_equivariant = true;
    'equiv: for x in 0..n {
        for y in 0..n {
            let lhs = gamma.values[hol.aut.apply(gamma.values[y], x)];
            if lhs != hol.aut.conj(gamma.values[x], gamma.values[y]) {
                gamma_equivariant = false;
                witnesses.insert("gamma_equivariant", (x, y));
                break 'equiv;
            }
        }
    }

    // (5) Both identities on the raw permutations; no GF assumption and
    // no automorphism-index arithmetic.
    let raw: Vec<&Permutation> = (0..n).map(|y| &hol.aut.perms[gamma.values[y]]).collect();
    let mut function_pair = true;
    'pair: for x in 0..n {
        for y in 0..n {
            // gamma(y) gamma(x): first gamma(y), then gamma(x).
            let prod = raw[y].compose(raw[x]);
            if *raw[g.mul(x, y)] != prod {
                function_pair = false;
                witnesses.insert("function_pair", (x, y));
                break 'pair;
            }
            let conj = raw[y].inverse().compose(raw[x]).compose(raw[y]);
            if *raw[raw[y].apply(x)] != conj {
                function_pair = false;
                witnesses.insert("function_pair", (x, y));
                break 'pair;
            }
        }
    }

    // (6) gamma kills [G, gammabar(G)], the closure of the displacements
    // x^-1 x^gammabar(y).
    let bar = opposite_gamma(hol, gamma)?;
    let mut gens: BTreeSet<usize> = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            gens.insert(g.mul(g.inv(x), hol.aut.apply(bar.values[y], x)));
        }
    }
    let gen_vec: Vec<usize> = gens.into_iter().collect();
    let commutator = subgroup_closure(g, &gen_vec);
    let mut bar_commutator_kernel = true;
    for &s in &commutator.members {
        if gamma.values[s] != hol.aut.identity {
            bar_commutator_kernel = false;
            witnesses.insert("bar_commutator_kernel", (s, s));
            break;
        }
    }

    // (7) The commutator-like word x^-1 y^-1 x^gamma(y) y lies in
    // ker(gamma) for all pairs.
    let mut commutator_word = true;
    'word: for x in 0..n {
        for y in 0..n {
            let w = g.mul(
                g.mul(g.inv(x), g.inv(y)),
                g.mul(hol.aut.apply(gamma.values[y], x), y),
            );
            if gamma.values[w] != hol.aut.identity {
                commutator_word = false;
                witnesses.insert("commutator_word", (x, y));
                break 'word;
            }
        }
    }

    Ok(BiskewReport {
        swap_is_brace,
        rho_normalizes,
        anti_homomorphism,
        gamma_equivariant,
        function_pair,
        bar_commutator_kernel,
        commutator_word,
        witnesses,
    })
}

/// One flag per criterion for N normal in Hol(G); the six are
/// equivalent, and each implies the brace is bi-skew.
#[derive(Clone, Debug, Serialize)]
pub struct BetaReport {
    /// Every automorphism of (G, .) is an automorphism of (G, o).
    pub aut_preserved: bool,
    /// N is alone in its Aut(G)-conjugation orbit, i.e. the brace is
    /// unique of its isomorphism type over this additive group.
    pub unique_iso_type: bool,
    /// N normal in Hol(G), by conjugating with every holomorph element.
    pub n_normal_in_hol: bool,
    /// N normalized by Aut(G) alone.
    pub n_normalized_by_aut: bool,
    /// gamma(x^beta) = gamma(x)^beta for all beta in Aut(G).
    pub beta_equivariant: bool,
    /// Anti-homomorphism plus beta-equivariance on the raw function.
    pub function_pair_beta: bool,
    pub witnesses: BTreeMap<&'static str, (usize, usize)>,
}

impl BetaReport {
    pub fn flags(&self) -> [bool; 6] {
        [
            self.aut_preserved,
            self.unique_iso_type,
            self.n_normal_in_hol,
            self.n_normalized_by_aut,
            self.beta_equivariant,
            self.function_pair_beta,
        ]
    }

    pub fn agreement(&self) -> bool {
        let f = self.flags();
        f.iter().all(|&b| b == f[0])
    }

    pub fn holds(&self) -> bool {
        self.flags().iter().all(|&b| b)
    }
}

/// `regulars` must be the complete enumeration for this holomorph; the
/// Aut-orbit of N is located inside it as a sanity check.
pub fn beta_report(
    hol: &Holomorph,
    gamma: &GammaFunction,
    regulars: &[RegularSubgroup],
) -> Result<BetaReport> {
    let g = &hol.group;
    let n = g.order();
    let m = hol.aut.len();
    let mut witnesses: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();

    // (1) Aut(G, .) <= Aut(G, o).
    let brace = circle_from_gamma(hol, gamma)?;
    let mut aut_preserved = true;
    for beta in 0..m {
        if !is_automorphism(&brace.circle, &hol.aut.perms[beta]) {
            aut_preserved = false;
            witnesses.insert("aut_preserved", (beta, 0));
            break;
        }
    }

    // (2) Orbit of N under Aut-conjugation, located among the enumerated
    // regular subgroups.
    let reg = regular_from_gamma(hol, gamma);
    let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
    for beta in 0..m {
        let conj = conjugate_by_aut(hol, &reg, beta);
        if !regulars.iter().any(|r| r.gamma == conj.gamma) {
            return Err(Error::Internal(
                "Aut-conjugate of a regular subgroup missing from the enumeration".into(),
            ));
        }
        orbit.insert(conj.gamma);
    }
    let unique_iso_type = orbit.len() == 1;
    if !unique_iso_type {
        witnesses.insert("unique_iso_type", (orbit.len(), 0));
    }

    // (3) Full normality, conjugating by every element of Hol(G).
    let mut n_normal_in_hol = true;
    for h in hol.elements() {
        if !is_normalized_by(hol, &reg, h) {
            n_normal_in_hol = false;
            witnesses.insert("n_normal_in_hol", (h.alpha, h.g));
            break;
        }
    }

    // (4) Normalized by the stabilizer Aut(G) alone.
    let n_normalized_by_aut = is_normalized_by_aut(hol, &reg);
    if !n_normalized_by_aut {
        witnesses.insert("n_normalized_by_aut", (0, 0));
    }

    // (5) Equivariance under every beta, in automorphism indices.
    let mut beta_equivariant = true;
    'bequiv: for beta in 0..m {
        for x in 0..n {
            if gamma.values[hol.aut.apply(beta, x)] != hol.aut.conj(gamma.values[x], beta) {
                beta_equivariant = false;
                witnesses.insert("beta_equivariant", (x, beta));
                break 'bequiv;
            }
        }
    }

    // (6) Raw function pair: anti-homomorphism and beta-equivariance as
    // permutation identities.
    let raw: Vec<&Permutation> = (0..n).map(|y| &hol.aut.perms[gamma.values[y]]).collect();
    let mut function_pair_beta = true;
    'bpair: for x in 0..n {
        for y in 0..n {
            if *raw[g.mul(x, y)] != raw[y].compose(raw[x]) {
                function_pair_beta = false;
                witnesses.insert("function_pair_beta", (x, y));
                break 'bpair;
            }
        }
    }
    if function_pair_beta {
        'bpair2: for beta in 0..m {
            let b = &hol.aut.perms[beta];
            for x in 0..n {
                if *raw[b.apply(x)] != b.inverse().compose(raw[x]).compose(b) {
                    function_pair_beta = false;
                    witnesses.insert("function_pair_beta", (x, beta));
                    break 'bpair2;
                }
            }
        }
    }

    Ok(BetaReport {
        aut_preserved,
        unique_iso_type,
        n_normal_in_hol,
        n_normalized_by_aut,
        beta_equivariant,
        function_pair_beta,
        witnesses,
    })
}

/// Flags for the two-of-three lemma on a raw map G -> Aut(G): among
/// {GFE, anti-homomorphism, equivariance}, any two imply the third, so
/// exactly two can never hold. Asserted here.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TwoOfThreeGf {
    pub gfe: bool,
    pub anti_homomorphism: bool,
    pub equivariant: bool,
}

/// `values` are automorphism indices, one per group element; no GF
/// assumption is made.
pub fn two_of_three_gf(hol: &Holomorph, values: &[usize]) -> TwoOfThreeGf {
    let g = &hol.group;
    let n = g.order();
    assert_eq!(values.len(), n, "one automorphism per group element");
    let gfe = crate::gamma::gfe_violation(hol, values).is_none();
    let anti_homomorphism = (0..n).all(|x| {
        (0..n).all(|y| values[g.mul(x, y)] == hol.aut.compose(values[y], values[x]))
    });
    let equivariant = (0..n).all(|x| {
        (0..n).all(|y| {
            values[hol.aut.apply(values[y], x)] == hol.aut.conj(values[x], values[y])
        })
    });
    let count = [gfe, anti_homomorphism, equivariant]
        .iter()
        .filter(|&&b| b)
        .count();
    assert_ne!(count, 2, "two-of-three lemma breached");
    TwoOfThreeGf {
        gfe,
        anti_homomorphism,
        equivariant,
    }
}

/// The abelian variant: for a GF on an abelian-image situation, among
/// {homomorphism, abelian image, anti-homomorphism} of gamma, if two hold
/// then so does the third.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TwoOfThreeAbelian {
    pub homomorphism: bool,
    pub abelian_image: bool,
    pub anti_homomorphism: bool,
}

pub fn two_of_three_abelian(hol: &Holomorph, gamma: &GammaFunction) -> TwoOfThreeAbelian {
    let g = &hol.group;
    let n = g.order();
    let homomorphism = (0..n).all(|x| {
        (0..n).all(|y| {
            gamma.values[g.mul(x, y)] == hol.aut.compose(gamma.values[x], gamma.values[y])
        })
    });
    let anti_homomorphism = (0..n).all(|x| {
        (0..n).all(|y| {
            gamma.values[g.mul(x, y)] == hol.aut.compose(gamma.values[y], gamma.values[x])
        })
    });
    // The image of gamma is an abelian subgroup of Aut(G).
    let image: BTreeSet<usize> = gamma.values.iter().copied().collect();
    let abelian_image = image
        .iter()
        .all(|&a| image.iter().all(|&b| hol.aut.compose(a, b) == hol.aut.compose(b, a)));
    let count = [homomorphism, abelian_image, anti_homomorphism]
        .iter()
        .filter(|&&b| b)
        .count();
    assert_ne!(count, 2, "abelian two-of-three lemma breached");
    TwoOfThreeAbelian {
        homomorphism,
        abelian_image,
        anti_homomorphism,
    }
}

/// Partition the enumerated regular subgroups into brace isomorphism
/// classes, i.e. orbits under Aut(G)-conjugation. Returns sorted index
/// lists; the first index of each class is its representative.
pub fn brace_iso_classes(hol: &Holomorph, regulars: &[RegularSubgroup]) -> Vec<Vec<usize>> {
    let index_of: BTreeMap<&[usize], usize> = regulars
        .iter()
        .enumerate()
        .map(|(i, r)| (r.gamma.as_slice(), i))
        .collect();
    let mut seen = vec![false; regulars.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..regulars.len() {
        if seen[i] {
            continue;
        }
        let mut class: BTreeSet<usize> = BTreeSet::new();
        for beta in 0..hol.aut.len() {
            let conj = conjugate_by_aut(hol, &regulars[i], beta);
            let j = *index_of
                .get(conj.gamma.as_slice())
                .expect("Aut-conjugate of a regular subgroup is regular and enumerated");
            class.insert(j);
        }
        for &j in &class {
            seen[j] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{enumerate_gammas, gamma_from_circle, kernel_gamma};
    use crate::group::{abelian, cyclic, dihedral, is_normal, quaternion, Subgroup};

    #[test]
    fn trivial_gamma_is_bi_gf() {
        for g in [cyclic(6).unwrap(), dihedral(4).unwrap()] {
            let hol = Holomorph::build(g);
            let gamma = GammaFunction::trivial(&hol);
            let r = biskew_report(&hol, &gamma).unwrap();
            assert!(r.agreement());
            assert!(r.is_biskew());
        }
    }

    #[test]
    fn seven_criteria_agree_on_enumeration() {
        for g in [
            cyclic(8).unwrap(),
            abelian(&[2, 4]).unwrap(),
            dihedral(3).unwrap(),
            quaternion(8).unwrap(),
        ] {
            let hol = Holomorph::build(g);
            for gamma in enumerate_gammas(&hol) {
                let r = biskew_report(&hol, &gamma).unwrap();
                assert!(r.agreement(), "criteria disagree: {:?}", r);
            }
        }
    }

    #[test]
    fn order_8_sweep_has_both_polarities() {
        let mut any_biskew = false;
        let mut any_not = false;
        for g in crate::catalog::groups_of_order(8).unwrap() {
            let hol = Holomorph::build(g);
            for gamma in enumerate_gammas(&hol) {
                let r = biskew_report(&hol, &gamma).unwrap();
                assert!(r.agreement());
                if r.is_biskew() {
                    any_biskew = true;
                } else {
                    any_not = true;
                    assert!(!r.witnesses.is_empty());
                }
            }
        }
        assert!(any_biskew);
        assert!(any_not);
    }

    #[test]
    fn swap_of_biskew_recovers_inverse_gamma() {
        // When the swap succeeds, reading gamma back off the swapped pair
        // gives pointwise inverses.
        for g in [cyclic(4).unwrap(), dihedral(3).unwrap()] {
            let hol = Holomorph::build(g);
            for gamma in enumerate_gammas(&hol) {
                let r = biskew_report(&hol, &gamma).unwrap();
                if !r.is_biskew() {
                    continue;
                }
                let brace = circle_from_gamma(&hol, &gamma).unwrap();
                let circle_hol = Holomorph::build(brace.circle.clone());
                let back = gamma_from_circle(&circle_hol, hol.group.table()).unwrap();
                for y in 0..hol.group.order() {
                    assert_eq!(
                        circle_hol.aut.perms[back.values[y]],
                        hol.aut.perms[gamma.values[y]].inverse()
                    );
                }
            }
        }
    }

    #[test]
    fn biskew_kernels_coincide_and_are_normal() {
        for g in [cyclic(8).unwrap(), dihedral(3).unwrap()] {
            let hol = Holomorph::build(g);
            for gamma in enumerate_gammas(&hol) {
                let r = biskew_report(&hol, &gamma).unwrap();
                if !r.is_biskew() {
                    continue;
                }
                let ker = kernel_gamma(&hol, &gamma);
                // gamma' = gamma^-1 has the same kernel, and it is normal
                // in the additive group as well.
                let ker_prime: Vec<usize> = (0..hol.group.order())
                    .filter(|&y| hol.aut.inverse(gamma.values[y]) == hol.aut.identity)
                    .collect();
                assert_eq!(ker.members, ker_prime);
                assert!(is_normal(&hol.group, &Subgroup::new(ker.members.clone())));
            }
        }
    }

    #[test]
    fn biskew_gamma_values_are_circle_automorphisms() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        for gamma in enumerate_gammas(&hol) {
            let r = biskew_report(&hol, &gamma).unwrap();
            if !r.is_biskew() {
                continue;
            }
            let brace = circle_from_gamma(&hol, &gamma).unwrap();
            for y in 0..hol.group.order() {
                assert!(is_automorphism(&brace.circle, &hol.aut.perms[gamma.values[y]]));
            }
        }
    }

    #[test]
    fn beta_criteria_agree_and_imply_biskew() {
        for g in [cyclic(8).unwrap(), dihedral(4).unwrap(), quaternion(8).unwrap()] {
            let hol = Holomorph::build(g);
            let regs = crate::holomorph::enumerate_regular_subgroups(&hol);
            for gamma in enumerate_gammas(&hol) {
                let b = beta_report(&hol, &gamma, &regs).unwrap();
                assert!(b.agreement(), "beta criteria disagree: {:?}", b);
                if b.holds() {
                    assert!(biskew_report(&hol, &gamma).unwrap().is_biskew());
                }
            }
        }
    }

    #[test]
    fn beta_holds_for_trivial_gamma() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let regs = crate::holomorph::enumerate_regular_subgroups(&hol);
        let gamma = GammaFunction::trivial(&hol);
        assert!(beta_report(&hol, &gamma, &regs).unwrap().holds());
    }

    #[test]
    fn two_of_three_never_exactly_two() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        for gamma in enumerate_gammas(&hol) {
            let t = two_of_three_gf(&hol, &gamma.values);
            assert!(t.gfe);
            let a = two_of_three_abelian(&hol, &gamma);
            let count = [a.homomorphism, a.abelian_image, a.anti_homomorphism]
                .iter()
                .filter(|&&b| b)
                .count();
            assert_ne!(count, 2);
        }
        // A raw non-GF map: constant nontrivial value.
        let nontrivial = (0..hol.aut.len()).find(|&a| a != hol.aut.identity).unwrap();
        let raw = vec![nontrivial; 6];
        let t = two_of_three_gf(&hol, &raw);
        assert!(!t.gfe);
    }

    #[test]
    fn iso_classes_partition_enumeration() {
        for g in [cyclic(4).unwrap(), dihedral(3).unwrap(), cyclic(8).unwrap()] {
            let hol = Holomorph::build(g);
            let regs = crate::holomorph::enumerate_regular_subgroups(&hol);
            let classes = brace_iso_classes(&hol, &regs);
            let total: usize = classes.iter().map(|c| c.len()).sum();
            assert_eq!(total, regs.len());
            let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..regs.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unique_iso_type_matches_singleton_classes() {
        let hol = Holomorph::build(dihedral(4).unwrap());
        let regs = crate::holomorph::enumerate_regular_subgroups(&hol);
        let classes = brace_iso_classes(&hol, &regs);
        for class in &classes {
            let gamma = crate::gamma::gamma_from_regular(&hol, &regs[class[0]]);
            let b = beta_report(&hol, &gamma, &regs).unwrap();
            assert_eq!(b.unique_iso_type, class.len() == 1);
        }
    }
}
