//! Independent brute-force oracle: every skew-brace circle table on a
//! small group, found without going through gamma functions or the
//! holomorph. Exists purely to certify the main enumerator.

use std::collections::BTreeSet;

use crate::catalog::groups_of_order;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// All circle tables o on the element set of `g` such that (G, ., o) is a
/// skew brace. Complete for |G| <= 8: every group operation with identity
/// 0 is a relabeling, fixing 0, of one of the catalog tables of that
/// order; the brace axiom is then checked over all triples.
pub fn brute_force_circle_tables(g: &FiniteGroup) -> Result<BTreeSet<Vec<Vec<usize>>>> {
    let n = g.order();
    if n > 8 {
        return Err(Error::Bound(format!(
            "brute-force oracle limited to order <= 8, got {}",
            n
        )));
    }
    let types = groups_of_order(n)?;
    let mut tables: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for t in &types {
        // All bijections of 0..n fixing 0.
        let mut points: Vec<usize> = (1..n).collect();
        relabelings(&mut points, 0, &mut |tail| {
            let mut sigma = vec![0usize; n];
            for (i, &v) in tail.iter().enumerate() {
                sigma[i + 1] = v;
            }
            let mut sigma_inv = vec![0usize; n];
            for (i, &v) in sigma.iter().enumerate() {
                sigma_inv[v] = i;
            }
            let relabeled: Vec<Vec<usize>> = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| sigma[t.table()[sigma_inv[x]][sigma_inv[y]]])
                        .collect()
                })
                .collect();
            if satisfies_brace_axiom(g, &relabeled) {
                tables.insert(relabeled);
            }
        });
    }
    Ok(tables)
}

fn relabelings(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        relabelings(v, k + 1, f);
        v.swap(k, i);
    }
}

/// (x y) o z = (x o z) z^-1 (y o z) over all triples.
pub fn satisfies_brace_axiom(g: &FiniteGroup, circle: &[Vec<usize>]) -> bool {
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            for z in 0..n {
                let rhs = g.mul(g.mul(circle[x][z], g.inv(z)), circle[y][z]);
                if circle[xy][z] != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{circle_from_gamma, enumerate_gammas};
    use crate::group::cyclic;
    use crate::holomorph::Holomorph;

    #[test]
    fn oracle_agrees_on_c4() {
        let g = cyclic(4).unwrap();
        let oracle = brute_force_circle_tables(&g).unwrap();
        assert_eq!(oracle.len(), 2);
        let hol = Holomorph::build(g);
        let enumerated: BTreeSet<Vec<Vec<usize>>> = enumerate_gammas(&hol)
            .iter()
            .map(|gm| circle_from_gamma(&hol, gm).unwrap().circle.table().clone())
            .collect();
        assert_eq!(oracle, enumerated);
    }

    #[test]
    fn oracle_refuses_large_groups() {
        let g = cyclic(9).unwrap();
        assert!(brute_force_circle_tables(&g).is_err());
    }
}
