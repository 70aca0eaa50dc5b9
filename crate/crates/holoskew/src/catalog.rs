//! The group catalog used by the enumeration sweeps and for naming
//! isomorphism types in reports.

use crate::error::{Error, Result};
use crate::group::{
    abelian, cyclic, dihedral, heisenberg, is_isomorphic, modular_ext, quaternion, semidirect,
    Action, FiniteGroup, GroupSpec,
};
use crate::perm::Permutation;

/// The alternating group on four letters, as C2^2 semidirect C3 with the
/// 3-cycle action on the involutions.
pub fn alternating_4() -> FiniteGroup {
    let k = abelian(&[2, 2]).unwrap();
    let h = cyclic(3).unwrap();
    // Cycle the three involutions 2 -> 1 -> 3 -> 2 (indices (1,0),(0,1),(1,1)).
    let alpha = Permutation::new(vec![0, 3, 1, 2]).unwrap();
    let phi = vec![
        Permutation::identity(4),
        alpha.clone(),
        alpha.compose(&alpha),
    ];
    let mut g = semidirect(&k, &h, &phi).unwrap();
    g.name = "a4".into();
    g
}

/// Dicyclic group of order 12 (C3 semidirect C4, H inverting K).
pub fn dicyclic_3() -> FiniteGroup {
    let spec = GroupSpec::Semidirect {
        k: Box::new(GroupSpec::Cyclic(3)),
        h: Box::new(GroupSpec::Cyclic(4)),
        action: Action::Inv,
    };
    let mut g = crate::group::make_group(&spec).unwrap();
    g.name = "dic3".into();
    g
}

/// The non-abelian group of order p^2 q with cyclic Sylow p-subgroup
/// inverted by the q-part: C_{p^2} semidirect C_q. At (3, 2) this is the
/// dihedral group of order 18.
pub fn p2q_group(p: usize, q: usize) -> Result<FiniteGroup> {
    let spec = GroupSpec::Semidirect {
        k: Box::new(GroupSpec::Cyclic(p * p)),
        h: Box::new(GroupSpec::Cyclic(q)),
        action: Action::Inv,
    };
    crate::group::make_group(&spec)
}

/// C7 semidirect C9, the generator of C9 acting as x -> x^2 (order 3).
pub fn order_63_group() -> FiniteGroup {
    let spec = GroupSpec::Semidirect {
        k: Box::new(GroupSpec::Cyclic(7)),
        h: Box::new(GroupSpec::Cyclic(9)),
        action: Action::Pow(2),
    };
    crate::group::make_group(&spec).unwrap()
}

/// Every isomorphism type of order <= 12 that the constructors cover;
/// this is complete for orders up to 12.
pub fn catalog_up_to_12() -> Vec<FiniteGroup> {
    let mut v = Vec::new();
    for n in 1..=12usize {
        v.extend(groups_of_order(n).unwrap());
    }
    v
}

/// All isomorphism types of groups of the given order, complete for
/// n <= 12.
pub fn groups_of_order(n: usize) -> Result<Vec<FiniteGroup>> {
    let g = |r: Result<FiniteGroup>| r.unwrap();
    Ok(match n {
        1 => vec![g(cyclic(1))],
        2 => vec![g(cyclic(2))],
        3 => vec![g(cyclic(3))],
        4 => vec![g(cyclic(4)), g(abelian(&[2, 2]))],
        5 => vec![g(cyclic(5))],
        6 => vec![g(cyclic(6)), g(dihedral(3))],
        7 => vec![g(cyclic(7))],
        8 => vec![
            g(cyclic(8)),
            g(abelian(&[2, 4])),
            g(abelian(&[2, 2, 2])),
            g(dihedral(4)),
            g(quaternion(8)),
        ],
        9 => vec![g(cyclic(9)), g(abelian(&[3, 3]))],
        10 => vec![g(cyclic(10)), g(dihedral(5))],
        11 => vec![g(cyclic(11))],
        12 => vec![
            g(cyclic(12)),
            g(abelian(&[2, 6])),
            g(dihedral(6)),
            alternating_4(),
            dicyclic_3(),
        ],
        _ => {
            return Err(Error::Bound(format!(
                "complete catalog available only up to order 12, requested {}",
                n
            )))
        }
    })
}

/// Name of the isomorphism type of an abelian group, from its primary
/// decomposition (recovered from the counts of elements of p-power order).
pub fn identify_abelian(g: &FiniteGroup) -> Option<String> {
    if !g.is_abelian() {
        return None;
    }
    let n = g.order();
    if n == 1 {
        return Some("c1".into());
    }
    if (0..n).any(|x| g.element_order(x) == n) {
        return Some(format!("c{}", n));
    }
    // Primary decomposition per prime: the number of cyclic factors of
    // order >= p^k is log_p(c_k) - log_p(c_{k-1}), where c_k counts the
    // elements of order dividing p^k.
    let mut factors: Vec<usize> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            let total = (0..n).filter(|&x| is_p_power(g.element_order(x), p)).count();
            let mut counts: Vec<usize> = vec![1];
            let mut k = 1u32;
            while *counts.last().unwrap() < total {
                let pk = p.pow(k);
                counts.push(
                    (0..n)
                        .filter(|&x| is_p_power_dividing(g.element_order(x), p, pk))
                        .count(),
                );
                k += 1;
            }
            let logs: Vec<u32> = counts.iter().map(|&c| ilog(c, p)).collect();
            let heights: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
            let rank = heights.first().copied().unwrap_or(0);
            for i in 0..rank {
                let exp = heights.iter().filter(|&&h| h > i).count() as u32;
                factors.push(p.pow(exp));
            }
        }
        p += 1;
    }
    factors.sort_unstable();
    Some(format!(
        "ab{}",
        factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("x")
    ))
}

fn is_p_power(o: usize, p: usize) -> bool {
    let mut o = o;
    while o % p == 0 {
        o /= p;
    }
    o == 1
}

fn is_p_power_dividing(o: usize, p: usize, pk: usize) -> bool {
    is_p_power(o, p) && pk % o == 0
}

fn ilog(mut c: usize, p: usize) -> u32 {
    let mut l = 0;
    while c > 1 {
        c /= p;
        l += 1;
    }
    l
}

/// Best-effort isomorphism type name: abelian types are decomposed,
/// non-abelian groups are matched against the small catalog plus a few
/// named larger groups.
pub fn identify(g: &FiniteGroup) -> String {
    if let Some(name) = identify_abelian(g) {
        return name;
    }
    let mut candidates: Vec<FiniteGroup> = Vec::new();
    if g.order() <= 12 {
        if let Ok(c) = groups_of_order(g.order()) {
            candidates.extend(c);
        }
    }
    if g.order() % 2 == 0 {
        if let Ok(d) = dihedral(g.order() / 2) {
            candidates.push(d);
        }
    }
    if g.order() == 27 {
        candidates.push(heisenberg(3).unwrap());
        candidates.push(modular_ext(3, 2).unwrap());
    }
    if g.order() == 63 {
        candidates.push(order_63_group());
    }
    if g.order() == 125 {
        candidates.push(heisenberg(5).unwrap());
    }
    for c in &candidates {
        if is_isomorphic(g, c).is_some() {
            return c.name.clone();
        }
    }
    format!("nonabelian-order{}", g.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_duplicate_free() {
        let cat = catalog_up_to_12();
        assert_eq!(cat.len(), 24);
        for i in 0..cat.len() {
            for j in (i + 1)..cat.len() {
                assert!(
                    is_isomorphic(&cat[i], &cat[j]).is_none(),
                    "{} and {} are isomorphic",
                    cat[i].name,
                    cat[j].name
                );
            }
        }
    }

    #[test]
    fn identify_abelian_types() {
        assert_eq!(identify(&cyclic(12).unwrap()), "c12");
        assert_eq!(identify(&abelian(&[2, 2]).unwrap()), "ab2x2");
        assert_eq!(identify(&abelian(&[2, 4]).unwrap()), "ab2x4");
        assert_eq!(identify(&abelian(&[6, 2]).unwrap()), "ab2x2x3");
        assert_eq!(identify(&abelian(&[3, 3, 3]).unwrap()), "ab3x3x3");
        assert_eq!(identify(&abelian(&[3, 9]).unwrap()), "ab3x9");
    }

    #[test]
    fn identify_nonabelian_types() {
        assert_eq!(identify(&dihedral(3).unwrap()), "d3");
        assert_eq!(identify(&quaternion(8).unwrap()), "q8");
        assert_eq!(identify(&alternating_4()), "a4");
        assert_eq!(identify(&heisenberg(3).unwrap()), "heis3");
        assert_eq!(identify(&modular_ext(3, 2).unwrap()), "modext(3,2)");
    }

    #[test]
    fn p2q_at_3_2_is_dihedral_9() {
        let g = p2q_group(3, 2).unwrap();
        assert_eq!(g.order(), 18);
        assert!(is_isomorphic(&g, &dihedral(9).unwrap()).is_some());
    }

    #[test]
    fn order_63_group_is_nonabelian_order_63() {
        let g = order_63_group();
        assert_eq!(g.order(), 63);
        assert!(!g.is_abelian());
    }
}
