//! Commutative radical rings on a finite abelian group, the gamma
//! function x^gamma(y) = x + x*y they induce, and the cube condition
//! G*G*G = {0} characterizing when that gamma is a bi-GF.

use crate::biskew::biskew_report;
use crate::construct::{abelian_basis, basis_exponents};
use crate::error::{Error, Result};
use crate::gamma::{circle_from_gamma, GammaFunction};
use crate::group::FiniteGroup;
use crate::holomorph::Holomorph;
use crate::perm::Permutation;

/// An abelian group written additively, together with an associative,
/// commutative, distributive multiplication * that is quasi-regular:
/// x o y = x + y + x*y is again a group operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalRing {
    pub additive: FiniteGroup,
    pub star: Vec<Vec<usize>>,
}

impl RadicalRing {
    #[inline]
    pub fn star(&self, x: usize, y: usize) -> usize {
        self.star[x][y]
    }

    pub fn circle_table(&self) -> Vec<Vec<usize>> {
        let g = &self.additive;
        let n = g.order();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| g.mul(g.mul(x, y), self.star[x][y]))
                    .collect()
            })
            .collect()
    }
}

/// Validate all ring axioms; the error names the first failed axiom.
pub fn radical_ring(additive: FiniteGroup, star: Vec<Vec<usize>>) -> Result<RadicalRing> {
    let n = additive.order();
    if !additive.is_abelian() {
        return Err(Error::Hypothesis("additive group is not abelian".into()));
    }
    if star.len() != n || star.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err(Error::Mismatch("star table size".into()));
    }
    let g = &additive;
    for x in 0..n {
        for y in 0..n {
            if star[x][y] != star[y][x] {
                return Err(Error::Hypothesis(format!(
                    "commutativity fails at ({}, {})",
                    x, y
                )));
            }
            for z in 0..n {
                if star[star[x][y]][z] != star[x][star[y][z]] {
                    return Err(Error::Hypothesis(format!(
                        "associativity fails at ({}, {}, {})",
                        x, y, z
                    )));
                }
                if star[g.mul(x, y)][z] != g.mul(star[x][z], star[y][z]) {
                    return Err(Error::Hypothesis(format!(
                        "distributivity fails at (({} + {}) * {})",
                        x, y, z
                    )));
                }
            }
        }
    }
    let ring = RadicalRing { additive, star };
    FiniteGroup::from_table("circle(ring)", ring.circle_table()).map_err(|e| {
        Error::Hypothesis(format!("quasi-regularity fails: {}", e))
    })?;
    Ok(ring)
}

/// The GF of the ring: x^gamma(y) = x + x*y. Its brace is the
/// ring brace, with abelian circle group.
pub fn ring_to_gamma(hol: &Holomorph, r: &RadicalRing) -> Result<GammaFunction> {
    let g = &hol.group;
    if g.table() != r.additive.table() {
        return Err(Error::Mismatch(
            "ring additive group differs from the holomorph's group".into(),
        ));
    }
    let n = g.order();
    let perms: Result<Vec<Permutation>> = (0..n)
        .map(|y| {
            Permutation::new((0..n).map(|x| g.mul(x, r.star[x][y])).collect())
                .map_err(|e| Error::Internal(format!("gamma({}) is not bijective: {}", y, e)))
        })
        .collect();
    let gamma = GammaFunction::from_permutations(hol, &perms?)
        .map_err(|e| Error::Internal(format!("ring gamma is not a GF: {}", e)))?;
    // The ring circle x + y + x*y is commutative, so the regular
    // subgroup N isomorphic to it is abelian.
    let brace = circle_from_gamma(hol, &gamma)?;
    if !brace.circle.is_abelian() {
        return Err(Error::Internal("ring circle group is not abelian".into()));
    }
    Ok(gamma)
}

/// (x*y)*z = 0 over all triples.
pub fn cube_condition(r: &RadicalRing) -> bool {
    let n = r.additive.order();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| r.star[r.star[x][y]][z] == 0)))
}

/// Everything the CLI and the sweeps need about one ring: its gamma, the
/// cube flag, the bi-skew report, and the asserted equivalence between
/// the two.
#[derive(Clone, Debug)]
pub struct RingReport {
    pub gamma: GammaFunction,
    pub cube: bool,
    pub biskew: crate::biskew::BiskewReport,
}

pub fn ring_report(hol: &Holomorph, r: &RadicalRing) -> Result<RingReport> {
    let gamma = ring_to_gamma(hol, r)?;
    let cube = cube_condition(r);
    let report = biskew_report(hol, &gamma)?;
    if report.is_biskew() != cube {
        return Err(Error::Internal(
            "cube condition disagrees with the bi-skew report".into(),
        ));
    }
    Ok(RingReport {
        gamma,
        cube,
        biskew: report,
    })
}

/// All commutative radical-ring multiplications on a small abelian group.
/// Any distributive * is determined by its values on basis generator
/// pairs, so those are enumerated (respecting generator orders) and the
/// remaining axioms filter the candidates. Bounded to order <= 9.
pub fn enumerate_commutative_radical_rings(g: &FiniteGroup) -> Result<Vec<RadicalRing>> {
    let n = g.order();
    if n > 9 {
        return Err(Error::Bound(format!(
            "radical-ring enumeration limited to order <= 9, got {}",
            n
        )));
    }
    let basis = abelian_basis(g)?;
    let exps = basis_exponents(g, &basis)?;
    let b = basis.len();
    // Candidates per unordered generator pair: elements killed by both
    // generator orders.
    let pair_candidates = |i: usize, j: usize| -> Vec<usize> {
        (0..n)
            .filter(|&v| {
                g.pow(v, basis[i].1 as i64) == 0 && g.pow(v, basis[j].1 as i64) == 0
            })
            .collect()
    };
    let pairs: Vec<(usize, usize)> = (0..b)
        .flat_map(|i| (i..b).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<RadicalRing> = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    enumerate_rec(g, &basis, &exps, &pairs, &pair_candidates, &mut choice, 0, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    g: &FiniteGroup,
    basis: &[(usize, usize)],
    exps: &[Vec<usize>],
    pairs: &[(usize, usize)],
    candidates: &dyn Fn(usize, usize) -> Vec<usize>,
    choice: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<RadicalRing>,
) {
    if depth == pairs.len() {
        let b = basis.len();
        let mut v = vec![vec![0usize; b]; b];
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            v[i][j] = choice[idx];
            v[j][i] = choice[idx];
        }
        let n = g.order();
        let star: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let mut acc = 0usize;
                        for i in 0..b {
                            for j in 0..b {
                                acc = g.mul(
                                    acc,
                                    g.pow(v[i][j], (exps[x][i] * exps[y][j]) as i64),
                                );
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        if let Ok(ring) = radical_ring(g.clone(), star) {
            out.push(ring);
        }
        return;
    }
    let (i, j) = pairs[depth];
    for cand in candidates(i, j) {
        choice[depth] = cand;
        enumerate_rec(g, basis, exps, pairs, candidates, choice, depth + 1, out);
    }
}
