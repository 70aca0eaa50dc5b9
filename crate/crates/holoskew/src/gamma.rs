//! Gamma functions, the circle operation, skew-brace validation, and the
//! conversions of the three-way correspondence between circle operations,
//! gamma functions, and regular subgroups of the holomorph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::holomorph::{enumerate_regular_subgroups, HolElement, Holomorph, RegularSubgroup};
use crate::perm::{inner, inv_map, Permutation};

/// A map G -> Aut(G) satisfying the gamma functional equation
/// gamma(x^gamma(y) y) = gamma(x) gamma(y). `values[y]` indexes into the
/// automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaFunction {
    pub values: Vec<usize>,
}

impl GammaFunction {
    /// Validate the GFE (and gamma(0) = id, which it forces).
    pub fn new(hol: &Holomorph, values: Vec<usize>) -> Result<GammaFunction> {
        let n = hol.group.order();
        if values.len() != n {
            return Err(Error::Mismatch(format!(
                "gamma has {} values, group has order {}",
                values.len(),
                n
            )));
        }
        if let Some((x, y)) = gfe_violation(hol, &values) {
            return Err(Error::GfeViolation { x, y });
        }
        Ok(GammaFunction { values })
    }

    pub fn trivial(hol: &Holomorph) -> GammaFunction {
        GammaFunction {
            values: vec![hol.aut.identity; hol.group.order()],
        }
    }

    /// Build gamma from explicit automorphism permutations, which must all
    /// be members of Aut(G).
    pub fn from_permutations(hol: &Holomorph, perms: &[Permutation]) -> Result<GammaFunction> {
        let mut values = Vec::with_capacity(perms.len());
        for (y, p) in perms.iter().enumerate() {
            let idx = hol.aut.index_of(p).ok_or_else(|| Error::NotAutomorphism {
                elem: y,
                msg: "value is not in Aut(G)".into(),
            })?;
            values.push(idx);
        }
        GammaFunction::new(hol, values)
    }

    #[inline]
    pub fn apply(&self, hol: &Holomorph, y: usize, x: usize) -> usize {
        hol.aut.apply(self.values[y], x)
    }

    /// x o y = x^gamma(y) * y.
    #[inline]
    pub fn circle(&self, hol: &Holomorph, x: usize, y: usize) -> usize {
        hol.group.mul(self.apply(hol, y, x), y)
    }
}

/// First (x, y) with gamma(x^gamma(y) y) != gamma(x) gamma(y), if any.
pub fn gfe_violation(hol: &Holomorph, values: &[usize]) -> Option<(usize, usize)> {
    let n = hol.group.order();
    for x in 0..n {
        for y in 0..n {
            let target = hol.group.mul(hol.aut.apply(values[y], x), y);
            if values[target] != hol.aut.compose(values[x], values[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// A skew brace on a fixed additive group: the circle group together with
/// the gamma function encoding it.
#[derive(Clone, Debug)]
pub struct SkewBrace {
    pub circle: FiniteGroup,
    pub gamma: GammaFunction,
}

/// Build the circle group from gamma and validate the brace axiom.
pub fn circle_from_gamma(hol: &Holomorph, gamma: &GammaFunction) -> Result<SkewBrace> {
    let n = hol.group.order();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| gamma.circle(hol, x, y)).collect())
        .collect();
    let circle = FiniteGroup::from_table(format!("circle({})", hol.group.name), table)
        .map_err(|e| Error::NotABrace(format!("circle operation is not a group: {}", e)))?;
    // Brace axiom (x y) o z = (x o z) z^-1 (y o z), over all triples.
    let g = &hol.group;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = gamma.circle(hol, g.mul(x, y), z);
                let rhs = g.mul(
                    g.mul(gamma.circle(hol, x, z), g.inv(z)),
                    gamma.circle(hol, y, z),
                );
                if lhs != rhs {
                    return Err(Error::NotABrace(format!(
                        "brace axiom fails at ({}, {}, {})",
                        x, y, z
                    )));
                }
            }
        }
    }
    Ok(SkewBrace {
        circle,
        gamma: gamma.clone(),
    })
}

/// Recover gamma from a circle table via x^gamma(y) = (x o y) y^-1.
/// Rejects, naming the violated Table 1 row, if (G, ., o) is not a skew
/// brace.
pub fn gamma_from_circle(hol: &Holomorph, circle_table: &[Vec<usize>]) -> Result<GammaFunction> {
    let n = hol.group.order();
    if circle_table.len() != n {
        return Err(Error::Mismatch("circle table size".into()));
    }
    let g = &hol.group;
    let mut values = Vec::with_capacity(n);
    for y in 0..n {
        let images: Vec<usize> = (0..n).map(|x| g.mul(circle_table[x][y], g.inv(y))).collect();
        let p = Permutation::new(images).map_err(|_| {
            Error::NotABrace(format!(
                "Table 1 row 3: gamma({}) is not bijective",
                y
            ))
        })?;
        let idx = hol.aut.index_of(&p).ok_or_else(|| {
            Error::NotABrace(format!(
                "Table 1 row 1: gamma({}) is not an endomorphism of (G, .)",
                y
            ))
        })?;
        values.push(idx);
    }
    if let Some((x, y)) = gfe_violation(hol, &values) {
        return Err(Error::NotABrace(format!(
            "Table 1 row 2: gamma functional equation fails at ({}, {})",
            x, y
        )));
    }
    Ok(GammaFunction { values })
}

/// gamma from a regular subgroup: nu(g) = gamma(g) rho(g).
pub fn gamma_from_regular(hol: &Holomorph, n: &RegularSubgroup) -> GammaFunction {
    let gamma = GammaFunction {
        values: n.gamma.clone(),
    };
    debug_assert!(gfe_violation(hol, &gamma.values).is_none());
    gamma
}

/// The regular subgroup N = {gamma(y) rho(y) : y in G}.
pub fn regular_from_gamma(_hol: &Holomorph, gamma: &GammaFunction) -> RegularSubgroup {
    RegularSubgroup {
        gamma: gamma.values.clone(),
    }
}

/// Row-by-row diagnostic of Table 1 for a raw family of maps G -> G.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Report {
    /// Row 1: every gamma(g) is an endomorphism of (G, .).
    pub endomorphisms: bool,
    /// Row 2: the gamma functional equation holds.
    pub gfe: bool,
    /// Row 3: every gamma(g) is bijective.
    pub bijective: bool,
    /// Rows 2 and 3 are only meaningful as circle properties under row 1;
    /// this restates that caveat in the report.
    pub caveat: &'static str,
}

pub fn validate_table1(hol: &Holomorph, raw: &[Vec<usize>]) -> Table1Report {
    let n = hol.group.order();
    let g = &hol.group;
    let endomorphisms = raw.iter().all(|m| {
        m.len() == n && (0..n).all(|i| (0..n).all(|j| m[g.mul(i, j)] == g.mul(m[i], m[j])))
    });
    let bijective = raw
        .iter()
        .all(|m| Permutation::new(m.clone()).is_ok());
    // Evaluate the GFE on the raw maps directly.
    let mut gfe = true;
    'outer: for x in 0..n {
        for y in 0..n {
            let target = g.mul(raw[y][x], y);
            let lhs = &raw[target];
            // gamma(x) gamma(y) pointwise, left-to-right.
            if (0..n).any(|t| lhs[t] != raw[y][raw[x][t]]) {
                gfe = false;
                break 'outer;
            }
        }
    }
    Table1Report {
        endomorphisms,
        gfe,
        bijective,
        caveat: "row 2 and row 3 correspond to circle properties under the assumption that row 1 holds",
    }
}

/// A gamma function defined only on a subgroup A, with A invariant under
/// its own values.
#[derive(Clone, Debug)]
pub struct RelativeGammaFunction {
    pub domain: Subgroup,
    /// element of A -> automorphism index (of the ambient group).
    pub values: BTreeMap<usize, usize>,
}

impl RelativeGammaFunction {
    pub fn get(&self, a: usize) -> usize {
        self.values[&a]
    }
}

/// Check both RGF conditions exhaustively on A; returns a witness message
/// on failure.
pub fn validate_rgf(
    hol: &Holomorph,
    a: &Subgroup,
    values: &BTreeMap<usize, usize>,
) -> std::result::Result<(), String> {
    for &x in &a.members {
        if !values.contains_key(&x) {
            return Err(format!("no value assigned at {}", x));
        }
    }
    // A is gamma(A)-invariant.
    for &y in &a.members {
        for &x in &a.members {
            if !a.contains(hol.aut.apply(values[&y], x)) {
                return Err(format!(
                    "A is not gamma(A)-invariant: {}^gamma({}) leaves A",
                    x, y
                ));
            }
        }
    }
    // GFE on A.
    for &x in &a.members {
        for &y in &a.members {
            let target = hol.group.mul(hol.aut.apply(values[&y], x), y);
            if values[&target] != hol.aut.compose(values[&x], values[&y]) {
                return Err(format!("GFE fails on A at ({}, {})", x, y));
            }
        }
    }
    Ok(())
}

/// ker(gamma) = {g : gamma(g) = 1}; asserts it is normal in (G, o) and
/// closed under the dot product.
pub fn kernel_gamma(hol: &Holomorph, gamma: &GammaFunction) -> Subgroup {
    let n = hol.group.order();
    let kernel = Subgroup::new(
        (0..n)
            .filter(|&g| gamma.values[g] == hol.aut.identity)
            .collect(),
    );
    // Subgroup of (G, .).
    assert!(
        crate::group::is_subgroup(&hol.group, &kernel),
        "kernel is not a subgroup of the additive group"
    );
    // Normal subgroup of (G, o): closed under circle conjugation.
    for &k in &kernel.members {
        for y in 0..n {
            // y^o-inverse o k o y, computed in the circle group.
            let yo_inv = (0..n)
                .find(|&z| gamma.circle(hol, z, y) == 0)
                .expect("circle inverses exist");
            let c = gamma.circle(hol, gamma.circle(hol, yo_inv, k), y);
            assert!(
                kernel.contains(c),
                "kernel is not normal in the circle group"
            );
        }
    }
    kernel
}

/// The opposite gamma: the GF of the inv-conjugate regular subgroup,
/// realized as gammabar(y) = gamma(y^-1) inner(y^-1) so that it stays
/// automorphism-valued. Cross-checked against N^inv as permutation sets.
pub fn opposite_gamma(hol: &Holomorph, gamma: &GammaFunction) -> Result<GammaFunction> {
    let n = hol.group.order();
    let g = &hol.group;
    let mut values = Vec::with_capacity(n);
    for y in 0..n {
        let yi = g.inv(y);
        let inner_yi = inner(g, yi);
        let inner_idx = hol
            .aut
            .index_of(&inner_yi)
            .expect("inner automorphisms are in Aut(G)");
        values.push(hol.aut.compose(gamma.values[yi], inner_idx));
    }
    let bar = GammaFunction::new(hol, values)
        .map_err(|e| Error::Internal(format!("opposite gamma is not a GF: {}", e)))?;
    // Oracle: N^inv as permutation sets.
    let inv = inv_map(g);
    let n_sub = regular_from_gamma(hol, gamma);
    let conjugated: std::collections::BTreeSet<Permutation> = (0..n)
        .map(|y| {
            inv.compose(&hol.to_permutation(n_sub.nu(y))).compose(&inv)
        })
        .collect();
    let bar_sub = regular_from_gamma(hol, &bar);
    let bar_perms: std::collections::BTreeSet<Permutation> =
        (0..n).map(|y| hol.to_permutation(bar_sub.nu(y))).collect();
    if conjugated != bar_perms {
        return Err(Error::Internal(
            "opposite gamma does not match N^inv".into(),
        ));
    }
    Ok(bar)
}

/// All gamma functions on G, via the regular-subgroup enumerator.
pub fn enumerate_gammas(hol: &Holomorph) -> Vec<GammaFunction> {
    enumerate_regular_subgroups(hol)
        .iter()
        .map(|n| gamma_from_regular(hol, n))
        .collect()
}

/// nu as a map (G, o) -> N; used by tests to certify the isomorphism.
pub fn nu_of(hol: &Holomorph, gamma: &GammaFunction, g: usize) -> HolElement {
    let _ = hol;
    HolElement {
        alpha: gamma.values[g],
        g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, is_isomorphic, abelian};
    use crate::perm::rho;

    fn klein_gamma(hol: &Holomorph) -> GammaFunction {
        // On C4: gamma(1) = gamma(3) = (x -> -x), gamma(0) = gamma(2) = id.
        let neg = Permutation::new(vec![0, 3, 2, 1]).unwrap();
        let neg_idx = hol.aut.index_of(&neg).unwrap();
        GammaFunction::new(hol, vec![hol.aut.identity, neg_idx, hol.aut.identity, neg_idx])
            .unwrap()
    }

    #[test]
    fn trivial_gamma_gives_cayley_circle() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let gamma = GammaFunction::trivial(&hol);
        let brace = circle_from_gamma(&hol, &gamma).unwrap();
        assert_eq!(brace.circle.table(), hol.group.table());
    }

    #[test]
    fn opposite_group_gamma_is_inner_of_inverse() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let g = &hol.group;
        let perms: Vec<Permutation> = (0..6).map(|y| inner(g, g.inv(y))).collect();
        let gamma = GammaFunction::from_permutations(&hol, &perms).unwrap();
        let brace = circle_from_gamma(&hol, &gamma).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(brace.circle.mul(x, y), g.mul(y, x));
            }
        }
    }

    #[test]
    fn klein_gamma_on_c4() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        let gamma = klein_gamma(&hol);
        let brace = circle_from_gamma(&hol, &gamma).unwrap();
        // 1 o 1 = 1^gamma(1) * 1 = 3 + 1 = 0; all squares vanish.
        assert_eq!(brace.circle.mul(1, 1), 0);
        assert!(is_isomorphic(&brace.circle, &abelian(&[2, 2]).unwrap()).is_some());
    }

    #[test]
    fn gamma_from_circle_roundtrips() {
        for g in [cyclic(4).unwrap(), dihedral(3).unwrap()] {
            let hol = Holomorph::build(g);
            for gamma in enumerate_gammas(&hol) {
                let brace = circle_from_gamma(&hol, &gamma).unwrap();
                let back = gamma_from_circle(&hol, brace.circle.table()).unwrap();
                assert_eq!(back, gamma);
            }
        }
    }

    #[test]
    fn gamma_from_circle_of_cayley_table_is_trivial() {
        let hol = Holomorph::build(dihedral(4).unwrap());
        let gamma = gamma_from_circle(&hol, hol.group.table()).unwrap();
        assert_eq!(gamma, GammaFunction::trivial(&hol));
    }

    #[test]
    fn lambda_regular_subgroup_has_inner_inverse_gamma() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let g = &hol.group;
        // gamma(y) = inner(y^-1) corresponds to N = lambda(G).
        let perms: Vec<Permutation> = (0..6).map(|y| inner(g, g.inv(y))).collect();
        let gamma = GammaFunction::from_permutations(&hol, &perms).unwrap();
        let n = regular_from_gamma(&hol, &gamma);
        for y in 0..6 {
            // nu(y) acts as x -> y x.
            for x in 0..6 {
                assert_eq!(hol.apply(n.nu(y), x), g.mul(y, x));
            }
        }
    }

    #[test]
    fn nu_is_isomorphism_of_circle_onto_n() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        for gamma in enumerate_gammas(&hol) {
            let n = regular_from_gamma(&hol, &gamma);
            for x in 0..6 {
                for y in 0..6 {
                    let xy = gamma.circle(&hol, x, y);
                    assert_eq!(hol.compose(n.nu(x), n.nu(y)), n.nu(xy));
                }
                assert_eq!(hol.apply(n.nu(x), 0), x);
            }
        }
    }

    #[test]
    fn rho_has_trivial_gamma() {
        let hol = Holomorph::build(cyclic(6).unwrap());
        let n = RegularSubgroup {
            gamma: vec![hol.aut.identity; 6],
        };
        for y in 0..6 {
            assert_eq!(hol.to_permutation(n.nu(y)), rho(&hol.group, y));
        }
        assert_eq!(gamma_from_regular(&hol, &n), GammaFunction::trivial(&hol));
    }

    #[test]
    fn table1_all_pass_for_identity_gamma() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        let raw: Vec<Vec<usize>> = (0..4).map(|_| (0..4).collect()).collect();
        let r = validate_table1(&hol, &raw);
        assert!(r.endomorphisms && r.gfe && r.bijective);
    }

    #[test]
    fn table1_constant_nonidentity_fails_gfe() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        // Constant x -> -x map.
        let neg: Vec<usize> = vec![0, 3, 2, 1];
        let raw: Vec<Vec<usize>> = (0..4).map(|_| neg.clone()).collect();
        let r = validate_table1(&hol, &raw);
        assert!(r.endomorphisms);
        assert!(!r.gfe);
    }

    #[test]
    fn table1_klein_gamma_all_pass() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        let gamma = klein_gamma(&hol);
        let raw: Vec<Vec<usize>> = (0..4)
            .map(|y| (0..4).map(|x| gamma.apply(&hol, y, x)).collect())
            .collect();
        let r = validate_table1(&hol, &raw);
        assert!(r.endomorphisms && r.gfe && r.bijective);
    }

    #[test]
    fn rgf_identity_valid_on_any_subgroup() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let a = crate::group::subgroup_closure(&hol.group, &[3]);
        let values: BTreeMap<usize, usize> =
            a.members.iter().map(|&x| (x, hol.aut.identity)).collect();
        assert!(validate_rgf(&hol, &a, &values).is_ok());
    }

    #[test]
    fn rgf_invalid_when_a_not_invariant() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        // A = a non-normal C2; send its generator to an automorphism
        // moving A.
        let a = crate::group::subgroup_closure(&hol.group, &[3]);
        // Find an automorphism not fixing A setwise.
        let moving = (0..hol.aut.len())
            .find(|&b| !a.contains(hol.aut.apply(b, 3)))
            .unwrap();
        let mut values = BTreeMap::new();
        values.insert(0usize, hol.aut.identity);
        values.insert(3usize, moving);
        assert!(validate_rgf(&hol, &a, &values).is_err());
    }

    #[test]
    fn kernel_of_trivial_gamma_is_everything() {
        let hol = Holomorph::build(cyclic(6).unwrap());
        let gamma = GammaFunction::trivial(&hol);
        assert_eq!(kernel_gamma(&hol, &gamma).order(), 6);
    }

    #[test]
    fn kernel_of_opposite_gamma_on_d3_is_center() {
        let hol = Holomorph::build(dihedral(3).unwrap());
        let g = &hol.group;
        let perms: Vec<Permutation> = (0..6).map(|y| inner(g, g.inv(y))).collect();
        let gamma = GammaFunction::from_permutations(&hol, &perms).unwrap();
        assert_eq!(kernel_gamma(&hol, &gamma).members, vec![0]);
    }

    #[test]
    fn opposite_of_trivial_gamma() {
        // On abelian G, gammabar of the trivial gamma is again trivial.
        let hol = Holomorph::build(cyclic(6).unwrap());
        let gamma = GammaFunction::trivial(&hol);
        let bar = opposite_gamma(&hol, &gamma).unwrap();
        assert_eq!(bar, gamma);
        // On non-abelian G it is the opposite-brace gamma inner(y^-1).
        let hol = Holomorph::build(dihedral(3).unwrap());
        let gamma = GammaFunction::trivial(&hol);
        let bar = opposite_gamma(&hol, &gamma).unwrap();
        let g = &hol.group;
        for y in 0..6 {
            assert_eq!(hol.aut.perms[bar.values[y]], inner(g, g.inv(y)));
        }
    }

    #[test]
    fn opposite_is_involution_on_enumeration() {
        for g in [cyclic(4).unwrap(), dihedral(3).unwrap(), cyclic(8).unwrap()] {
            let hol = Holomorph::build(g);
            for gamma in enumerate_gammas(&hol) {
                let bar = opposite_gamma(&hol, &gamma).unwrap();
                let barbar = opposite_gamma(&hol, &bar).unwrap();
                assert_eq!(barbar, gamma);
            }
        }
    }

    #[test]
    fn klein_gamma_is_self_opposite() {
        let hol = Holomorph::build(cyclic(4).unwrap());
        let gamma = klein_gamma(&hol);
        assert_eq!(opposite_gamma(&hol, &gamma).unwrap(), gamma);
    }

    #[test]
    fn gamma_is_homomorphism_from_circle_to_aut() {
        for g in [cyclic(8).unwrap(), dihedral(4).unwrap()] {
            let hol = Holomorph::build(g);
            let n = hol.group.order();
            for gamma in enumerate_gammas(&hol) {
                for x in 0..n {
                    for y in 0..n {
                        let xy = gamma.circle(&hol, x, y);
                        assert_eq!(
                            gamma.values[xy],
                            hol.aut.compose(gamma.values[x], gamma.values[y])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_gammas(&Holomorph::build(cyclic(2).unwrap())).len(), 1);
        assert_eq!(enumerate_gammas(&Holomorph::build(cyclic(3).unwrap())).len(), 1);
        assert_eq!(enumerate_gammas(&Holomorph::build(cyclic(5).unwrap())).len(), 1);
        assert_eq!(enumerate_gammas(&Holomorph::build(cyclic(4).unwrap())).len(), 2);
    }
}
