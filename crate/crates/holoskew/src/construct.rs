//! Constructions of bi-gamma-functions: Childs's semidirect-product map,
//! lifting of relative gamma functions, central intersections, compatible
//! automorphism pairs of semidirect products, bi-homomorphisms into the
//! centre, and the Ault-Watters commutator construction.
//!
//! Every constructor validates its hypotheses exhaustively and then
//! certifies the result through `biskew_report`; a certified theorem
//! failing on validated input is reported as an internal error, never
//! silently accepted.

use std::collections::BTreeMap;

use crate::biskew::{biskew_report, two_of_three_abelian};
use crate::error::{Error, Result};
use crate::gamma::{
    opposite_gamma, validate_rgf, GammaFunction, RelativeGammaFunction,
};
use crate::group::{
    center, derived_subgroup, factorizes, is_normal, is_subgroup, quotient, subgroup_closure,
    FiniteGroup, Subgroup,
};
use crate::holomorph::Holomorph;
use crate::perm::inner;

fn inner_index(hol: &Holomorph, h: usize) -> usize {
    hol.aut
        .index_of(&inner(&hol.group, h))
        .expect("inner automorphisms lie in Aut(G)")
}

/// All ways of writing each group element as h*k with h in H, k in K;
/// `value_of` assigns the candidate gamma value to the h-part. All
/// factorizations of an element must agree.
fn lift_values(
    hol: &Holomorph,
    h: &Subgroup,
    k: &Subgroup,
    value_of: &dyn Fn(usize) -> usize,
) -> Result<Vec<usize>> {
    let g = &hol.group;
    let n = g.order();
    let mut values: Vec<Option<usize>> = vec![None; n];
    for &hh in &h.members {
        let hi = g.inv(hh);
        for x in 0..n {
            let kk = g.mul(hi, x);
            if !k.contains(kk) {
                continue;
            }
            let v = value_of(hh);
            match values[x] {
                None => values[x] = Some(v),
                Some(w) if w == v => {}
                Some(_) => {
                    return Err(Error::Hypothesis(format!(
                        "gamma is ill-defined: element {} has factorizations with different values",
                        x
                    )))
                }
            }
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(x, v)| {
            v.ok_or_else(|| {
                Error::Hypothesis(format!("element {} is not a product h k", x))
            })
        })
        .collect()
}

fn require_semidirect(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Result<()> {
    if !is_subgroup(g, k) || !is_subgroup(g, h) {
        return Err(Error::Hypothesis("H and K must be subgroups".into()));
    }
    if !is_normal(g, k) {
        return Err(Error::Hypothesis("K is not normal in G".into()));
    }
    if !factorizes(g, h, k) {
        return Err(Error::Hypothesis("G is not H K".into()));
    }
    let meet: Vec<usize> = h.members.iter().copied().filter(|&x| k.contains(x)).collect();
    if meet != vec![0] {
        return Err(Error::Hypothesis(format!(
            "H and K intersect non-trivially: {:?}",
            meet
        )));
    }
    Ok(())
}

/// Childs's bi-GF on a semidirect product: gamma(h k) = inner(h^-1).
pub fn childs_gamma(hol: &Holomorph, k: &Subgroup, h: &Subgroup) -> Result<GammaFunction> {
    require_semidirect(&hol.group, k, h)?;
    let g = &hol.group;
    let values = lift_values(hol, h, k, &|hh| inner_index(hol, g.inv(hh)))?;
    let gamma = GammaFunction::new(hol, values)
        .map_err(|e| Error::Internal(format!("Childs gamma is not a GF: {}", e)))?;
    let report = biskew_report(hol, &gamma)?;
    if !report.is_biskew() {
        return Err(Error::Internal("Childs gamma is not a bi-GF".into()));
    }
    Ok(gamma)
}

/// Lift a relative gamma function from H to G = H K: gamma(h k) = gamma'(h).
/// Requires gamma'(H ∩ K) = 1 and K invariant under every gamma'(h) inner(h).
pub fn lift_rgf(
    hol: &Holomorph,
    h: &Subgroup,
    k: &Subgroup,
    gp: &RelativeGammaFunction,
) -> Result<GammaFunction> {
    let g = &hol.group;
    if !is_subgroup(g, h) || !is_subgroup(g, k) {
        return Err(Error::Hypothesis("H and K must be subgroups".into()));
    }
    if !factorizes(g, h, k) {
        return Err(Error::Hypothesis("G is not H K".into()));
    }
    if gp.domain.members != h.members {
        return Err(Error::Hypothesis("gamma' is not defined on H".into()));
    }
    validate_rgf(hol, h, &gp.values).map_err(Error::Hypothesis)?;
    // gamma'(H ∩ K) = 1.
    for &x in &h.members {
        if k.contains(x) && gp.get(x) != hol.aut.identity {
            return Err(Error::Hypothesis(format!(
                "gamma'({}) != 1 on H ∩ K",
                x
            )));
        }
    }
    // K invariant under gamma'(h) inner(h).
    for &hh in &h.members {
        let m = hol.aut.compose(gp.get(hh), inner_index(hol, hh));
        for &x in &k.members {
            if !k.contains(hol.aut.apply(m, x)) {
                return Err(Error::Hypothesis(format!(
                    "K is not invariant under gamma'({}) inner({}): moves {}",
                    hh, hh, x
                )));
            }
        }
    }
    let values = lift_values(hol, h, k, &|hh| gp.get(hh))?;
    let gamma = GammaFunction::new(hol, values)
        .map_err(|e| Error::Internal(format!("lifted map is not a GF: {}", e)))?;
    // ker(gamma) = ker(gamma') K.
    let mut prod: Vec<usize> = Vec::new();
    for &a in &h.members {
        if gp.get(a) != hol.aut.identity {
            continue;
        }
        for &b in &k.members {
            prod.push(g.mul(a, b));
        }
    }
    prod.sort_unstable();
    prod.dedup();
    let kernel: Vec<usize> = (0..g.order())
        .filter(|&x| gamma.values[x] == hol.aut.identity)
        .collect();
    if prod != kernel {
        return Err(Error::Internal(
            "ker(gamma) differs from ker(gamma') K".into(),
        ));
    }
    Ok(gamma)
}

/// Result of the central-intersection construction, carrying both sides
/// of the biconditional "gammabar is a bi-GF iff H is normal".
#[derive(Clone, Debug)]
pub struct CentralOutcome {
    pub gamma: GammaFunction,
    pub bar_is_bigf: bool,
    pub h_normal: bool,
}

/// Childs's construction with H ∩ K allowed to be central: K normal,
/// G = H K, H ∩ K ≤ Z(G); gamma(h k) = inner(h^-1) is a bi-GF.
pub fn central_gamma(hol: &Holomorph, k: &Subgroup, h: &Subgroup) -> Result<CentralOutcome> {
    let g = &hol.group;
    if !is_subgroup(g, k) || !is_subgroup(g, h) {
        return Err(Error::Hypothesis("H and K must be subgroups".into()));
    }
    if !is_normal(g, k) {
        return Err(Error::Hypothesis("K is not normal in G".into()));
    }
    if !factorizes(g, h, k) {
        return Err(Error::Hypothesis("G is not H K".into()));
    }
    let z = center(g);
    for &x in &h.members {
        if k.contains(x) && !z.contains(x) {
            return Err(Error::Hypothesis(format!(
                "H ∩ K contains the non-central element {}",
                x
            )));
        }
    }
    let values = lift_values(hol, h, k, &|hh| inner_index(hol, g.inv(hh)))
        .map_err(|e| Error::Internal(format!("central gamma should be well defined: {}", e)))?;
    let gamma = GammaFunction::new(hol, values)
        .map_err(|e| Error::Internal(format!("central gamma is not a GF: {}", e)))?;
    if !biskew_report(hol, &gamma)?.is_biskew() {
        return Err(Error::Internal("central gamma is not a bi-GF".into()));
    }
    let bar = opposite_gamma(hol, &gamma)?;
    let bar_is_bigf = biskew_report(hol, &bar)?.is_biskew();
    let h_normal = is_normal(g, h);
    if bar_is_bigf != h_normal {
        return Err(Error::Internal(
            "biconditional breach: gammabar bi-GF does not match H normal".into(),
        ));
    }
    Ok(CentralOutcome {
        gamma,
        bar_is_bigf,
        h_normal,
    })
}

/// An automorphism of G leaving H and K invariant, with its restrictions
/// d to H and a to K.
#[derive(Clone, Debug)]
pub struct CompatiblePair {
    /// Index into Aut(G).
    pub aut: usize,
    pub d: BTreeMap<usize, usize>,
    pub a: BTreeMap<usize, usize>,
}

/// The subgroup P of Aut(G) of automorphisms compatible with the
/// semidirect decomposition G = K ⋊ H.
#[derive(Clone, Debug)]
pub struct CompatiblePairGroup {
    pub k: Subgroup,
    pub h: Subgroup,
    pub members: Vec<CompatiblePair>,
}

impl CompatiblePairGroup {
    pub fn contains_aut(&self, idx: usize) -> bool {
        self.members.iter().any(|m| m.aut == idx)
    }
}

/// Filter Aut(G) for automorphisms leaving H and K invariant; each is
/// tagged with its restriction pair (d, a), and the compatibility
/// relation inner(h)^a = inner(h^d) on K plus closure under composition
/// are asserted.
pub fn compatible_pair_group(
    hol: &Holomorph,
    k: &Subgroup,
    h: &Subgroup,
) -> Result<CompatiblePairGroup> {
    require_semidirect(&hol.group, k, h)?;
    let g = &hol.group;
    let mut members: Vec<CompatiblePair> = Vec::new();
    for beta in 0..hol.aut.len() {
        let fixes_h = h.members.iter().all(|&x| h.contains(hol.aut.apply(beta, x)));
        let fixes_k = k.members.iter().all(|&x| k.contains(hol.aut.apply(beta, x)));
        if !fixes_h || !fixes_k {
            continue;
        }
        let d: BTreeMap<usize, usize> = h
            .members
            .iter()
            .map(|&x| (x, hol.aut.apply(beta, x)))
            .collect();
        let a: BTreeMap<usize, usize> = k
            .members
            .iter()
            .map(|&x| (x, hol.aut.apply(beta, x)))
            .collect();
        // inner(h)^a = inner(h^d) on K: a(x^h) = a(x)^{d(h)}.
        for &hh in &h.members {
            for &x in &k.members {
                if a[&g.conj(x, hh)] != g.conj(a[&x], d[&hh]) {
                    return Err(Error::Internal(format!(
                        "compatibility relation fails for automorphism {} at (h={}, x={})",
                        beta, hh, x
                    )));
                }
            }
        }
        members.push(CompatiblePair { aut: beta, d, a });
    }
    // Closure under composition.
    let set: std::collections::BTreeSet<usize> = members.iter().map(|m| m.aut).collect();
    for &a in &set {
        for &b in &set {
            if !set.contains(&hol.aut.compose(a, b)) {
                return Err(Error::Internal(
                    "compatible pairs are not closed under composition".into(),
                ));
            }
        }
    }
    Ok(CompatiblePairGroup {
        k: k.clone(),
        h: h.clone(),
        members,
    })
}

/// Lift an anti-homomorphic RGF with values in the compatible-pair group
/// to a bi-GF on the whole semidirect product.
pub fn semi_gamma(
    hol: &Holomorph,
    k: &Subgroup,
    h: &Subgroup,
    gp: &RelativeGammaFunction,
) -> Result<GammaFunction> {
    let g = &hol.group;
    require_semidirect(g, k, h)?;
    if gp.domain.members != h.members {
        return Err(Error::Hypothesis("gamma' is not defined on H".into()));
    }
    validate_rgf(hol, h, &gp.values).map_err(Error::Hypothesis)?;
    let p = compatible_pair_group(hol, k, h)?;
    for &hh in &h.members {
        if !p.contains_aut(gp.get(hh)) {
            return Err(Error::Hypothesis(format!(
                "gamma'({}) is not a compatible pair",
                hh
            )));
        }
    }
    // Anti-homomorphism on H.
    for &h1 in &h.members {
        for &h2 in &h.members {
            if gp.get(g.mul(h1, h2)) != hol.aut.compose(gp.get(h2), gp.get(h1)) {
                return Err(Error::Hypothesis(format!(
                    "gamma' is not an anti-homomorphism at ({}, {})",
                    h1, h2
                )));
            }
        }
    }
    let gamma = lift_rgf(hol, h, k, gp)?;
    if !biskew_report(hol, &gamma)?.is_biskew() {
        return Err(Error::Internal("semidirect lift is not a bi-GF".into()));
    }
    Ok(gamma)
}

/// A bi-homomorphism Delta : G/K x G/K -> K with K central.
#[derive(Clone, Debug)]
pub struct BiHom {
    pub k: Subgroup,
    pub quotient: FiniteGroup,
    /// Projection G -> G/K by element index.
    pub proj: Vec<usize>,
    /// table[q1][q2] in K (as an element of G).
    pub table: Vec<Vec<usize>>,
}

pub fn validate_bihom(g: &FiniteGroup, d: &BiHom) -> Result<()> {
    let z = center(g);
    for &x in &d.k.members {
        if !z.contains(x) {
            return Err(Error::Hypothesis(format!(
                "K contains the non-central element {}",
                x
            )));
        }
    }
    if !is_subgroup(g, &d.k) {
        return Err(Error::Hypothesis("K is not a subgroup".into()));
    }
    let q = d.quotient.order();
    if d.proj.len() != g.order() || d.table.len() != q {
        return Err(Error::Mismatch("bi-homomorphism table size".into()));
    }
    // proj is the quotient map with kernel K.
    for x in 0..g.order() {
        for y in 0..g.order() {
            if d.proj[g.mul(x, y)] != d.quotient.mul(d.proj[x], d.proj[y]) {
                return Err(Error::Hypothesis(
                    "projection is not a homomorphism onto G/K".into(),
                ));
            }
        }
        if (d.proj[x] == 0) != d.k.contains(x) {
            return Err(Error::Hypothesis("projection kernel is not K".into()));
        }
    }
    for row in &d.table {
        if row.len() != q {
            return Err(Error::Mismatch("bi-homomorphism table size".into()));
        }
        for &v in row {
            if !d.k.contains(v) {
                return Err(Error::Hypothesis(format!(
                    "Delta value {} lies outside K",
                    v
                )));
            }
        }
    }
    // Homomorphism in each variable.
    for q1 in 0..q {
        for q2 in 0..q {
            for q3 in 0..q {
                let left = d.table[d.quotient.mul(q1, q2)][q3];
                if left != g.mul(d.table[q1][q3], d.table[q2][q3]) {
                    return Err(Error::Hypothesis(format!(
                        "Delta is not a homomorphism in the first variable at ({}, {}, {})",
                        q1, q2, q3
                    )));
                }
                let right = d.table[q3][d.quotient.mul(q1, q2)];
                if right != g.mul(d.table[q3][q1], d.table[q3][q2]) {
                    return Err(Error::Hypothesis(format!(
                        "Delta is not a homomorphism in the second variable at ({}, {}, {})",
                        q1, q2, q3
                    )));
                }
            }
        }
        if d.table[q1][0] != 0 || d.table[0][q1] != 0 {
            return Err(Error::Hypothesis(
                "Delta does not vanish on the identity coset".into(),
            ));
        }
    }
    Ok(())
}

/// The everywhere-trivial bi-homomorphism for a central subgroup K.
pub fn trivial_bihom(g: &FiniteGroup, k: &Subgroup) -> Result<BiHom> {
    let (q, proj) = quotient(g, k)?;
    let m = q.order();
    let d = BiHom {
        k: k.clone(),
        quotient: q,
        proj,
        table: vec![vec![0; m]; m],
    };
    validate_bihom(g, &d)?;
    Ok(d)
}

/// The bi-GF x^gamma(y) = Delta(xK, yK) x. The output is certified
/// against the abelian-image lemma (gamma is simultaneously a
/// homomorphism and an anti-homomorphism with abelian image) and the
/// full bi-skew report.
pub fn delta_gamma(hol: &Holomorph, d: &BiHom) -> Result<GammaFunction> {
    let g = &hol.group;
    validate_bihom(g, d)?;
    let n = g.order();
    let perms: Result<Vec<crate::perm::Permutation>> = (0..n)
        .map(|y| {
            crate::perm::Permutation::new(
                (0..n)
                    .map(|x| g.mul(d.table[d.proj[x]][d.proj[y]], x))
                    .collect(),
            )
            .map_err(|e| Error::Internal(format!("gamma({}) is not bijective: {}", y, e)))
        })
        .collect();
    let gamma = GammaFunction::from_permutations(hol, &perms?)
        .map_err(|e| Error::Internal(format!("Delta does not give a GF: {}", e)))?;
    let lemma = two_of_three_abelian(hol, &gamma);
    if !(lemma.homomorphism && lemma.abelian_image && lemma.anti_homomorphism) {
        return Err(Error::Internal(
            "Delta gamma misses an abelian-image lemma condition".into(),
        ));
    }
    if !biskew_report(hol, &gamma)?.is_biskew() {
        return Err(Error::Internal("Delta gamma is not a bi-GF".into()));
    }
    Ok(gamma)
}

/// A generating tuple for a finite abelian group realizing it as a
/// direct sum: (element, order) pairs whose power products hit every
/// element exactly once.
pub fn abelian_basis(g: &FiniteGroup) -> Result<Vec<(usize, usize)>> {
    if !g.is_abelian() {
        return Err(Error::Hypothesis("group is not abelian".into()));
    }
    let n = g.order();
    let mut order: Vec<(usize, usize)> = (1..n).map(|x| (g.element_order(x), x)).collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut basis: Vec<(usize, usize)> = Vec::new();
    let mut gens: Vec<usize> = Vec::new();
    let mut product = 1usize;
    for &(o, x) in &order {
        if product == n {
            break;
        }
        let mut trial = gens.clone();
        trial.push(x);
        if subgroup_closure(g, &trial).order() == product * o {
            gens.push(x);
            basis.push((x, o));
            product *= o;
        }
    }
    if product != n {
        return Err(Error::Internal(
            "greedy basis extraction failed to span the group".into(),
        ));
    }
    Ok(basis)
}

/// Exponent decomposition of every element relative to an abelian basis;
/// verifies the power-product map is a bijection.
pub fn basis_exponents(g: &FiniteGroup, basis: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let mut exps: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut tuple = vec![0usize; basis.len()];
    loop {
        let mut elem = 0usize;
        for (i, &(b, _)) in basis.iter().enumerate() {
            elem = g.mul(elem, g.pow(b, tuple[i] as i64));
        }
        if exps[elem].is_some() {
            return Err(Error::Internal("basis power products collide".into()));
        }
        exps[elem] = Some(tuple.clone());
        // Increment mixed-radix.
        let mut i = 0;
        loop {
            if i == basis.len() {
                let all: Option<Vec<Vec<usize>>> = exps.into_iter().collect();
                return all.ok_or_else(|| {
                    Error::Internal("basis power products do not span".into())
                });
            }
            tuple[i] += 1;
            if tuple[i] < basis[i].1 {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// Extend a form on basis generators of A = G/(G'K) to a bi-homomorphism
/// G/K x G/K -> K. `form[i][j]` must be an element of K killed by the
/// orders of the i-th and j-th basis generators.
pub fn bilinear_delta(g: &FiniteGroup, k: &Subgroup, form: &[Vec<usize>]) -> Result<BiHom> {
    let z = center(g);
    for &x in &k.members {
        if !z.contains(x) {
            return Err(Error::Hypothesis(format!(
                "K contains the non-central element {}",
                x
            )));
        }
    }
    // A = G / (G' K), the largest quotient on which any such form can
    // live.
    let mut seed: Vec<usize> = derived_subgroup(g).members.clone();
    seed.extend(&k.members);
    let gk = subgroup_closure(g, &seed);
    let (a, proj_a) = quotient(g, &gk)?;
    let basis = abelian_basis(&a)?;
    if form.len() != basis.len() || form.iter().any(|r| r.len() != basis.len()) {
        return Err(Error::Mismatch(format!(
            "form must be {} x {} for this quotient",
            basis.len(),
            basis.len()
        )));
    }
    for (i, row) in form.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !k.contains(v) {
                return Err(Error::Hypothesis(format!(
                    "form[{}][{}] = {} lies outside K",
                    i, j, v
                )));
            }
            if g.pow(v, basis[i].1 as i64) != 0 || g.pow(v, basis[j].1 as i64) != 0 {
                return Err(Error::Hypothesis(format!(
                    "form[{}][{}] is not killed by the generator orders",
                    i, j
                )));
            }
        }
    }
    let exps = basis_exponents(&a, &basis)?;
    let (q, proj) = quotient(g, k)?;
    let m = q.order();
    // Representative in G of each K-coset, to read off its exponents in A.
    let mut rep = vec![usize::MAX; m];
    for x in 0..g.order() {
        if rep[proj[x]] == usize::MAX {
            rep[proj[x]] = x;
        }
    }
    let mut table = vec![vec![0usize; m]; m];
    for q1 in 0..m {
        for q2 in 0..m {
            let e1 = &exps[proj_a[rep[q1]]];
            let e2 = &exps[proj_a[rep[q2]]];
            let mut v = 0usize;
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    v = g.mul(v, g.pow(form[i][j], (e1[i] * e2[j]) as i64));
                }
            }
            table[q1][q2] = v;
        }
    }
    let d = BiHom {
        k: k.clone(),
        quotient: q,
        proj,
        table,
    };
    validate_bihom(g, &d)?;
    Ok(d)
}

/// The RGF family gamma'(h^i) = inner(hgen)^(-s i)|_K psi^(t i), where H
/// is cyclic of order p^2 generated by hgen and psi : x -> x^(1+p) on H.
/// Each value is built as an explicit permutation of G and must land in
/// Aut(G); otherwise the parameters are rejected.
pub fn power_family_rgf(
    hol: &Holomorph,
    k: &Subgroup,
    h: &Subgroup,
    s: i64,
    t: i64,
) -> Result<RelativeGammaFunction> {
    let g = &hol.group;
    let m = h.order();
    let hgen = h
        .members
        .iter()
        .copied()
        .find(|&x| g.element_order(x) == m)
        .ok_or_else(|| Error::Hypothesis("H is not cyclic".into()))?;
    let p = (1..=m).find(|&p| p * p == m);
    if t != 0 && p.is_none() {
        return Err(Error::Hypothesis(
            "psi requires |H| to be a perfect square".into(),
        ));
    }
    let psi_base = p.map(|p| 1 + p).unwrap_or(1);
    let mut values: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cur = 0usize;
    for i in 0..m as i64 {
        // (1 + p)^(t i) mod m.
        let mut psi_exp: usize = 1;
        for _ in 0..(t * i).rem_euclid(m as i64) {
            psi_exp = psi_exp * psi_base % m;
        }
        let conj_by = g.pow(hgen, -s * i);
        let images: Result<Vec<usize>> = (0..g.order())
            .map(|x| {
                let (kk, hh) = split_kh(g, k, h, x)?;
                Ok(g.mul(g.conj(kk, conj_by), g.pow(hh, psi_exp as i64)))
            })
            .collect();
        let perm = crate::perm::Permutation::new(images?)
            .map_err(|_| Error::Hypothesis("power family value is not bijective".into()))?;
        let idx = hol.aut.index_of(&perm).ok_or_else(|| {
            Error::Hypothesis(format!(
                "power family value at i = {} is not an automorphism",
                i
            ))
        })?;
        values.insert(cur, idx);
        cur = g.mul(cur, hgen);
    }
    Ok(RelativeGammaFunction {
        domain: h.clone(),
        values,
    })
}

fn split_kh(g: &FiniteGroup, k: &Subgroup, h: &Subgroup, x: usize) -> Result<(usize, usize)> {
    for &kk in &k.members {
        let hh = g.mul(g.inv(kk), x);
        if h.contains(hh) {
            return Ok((kk, hh));
        }
    }
    Err(Error::Hypothesis(format!(
        "element {} is not a product k h",
        x
    )))
}

fn subgroup_exponent(g: &FiniteGroup, s: &Subgroup) -> usize {
    s.members.iter().fold(1usize, |acc, &x| {
        let o = g.element_order(x);
        acc / gcd(acc, o) * o
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Ault-Watters: for odd-order G of nilpotence class at most 2, the
/// bi-homomorphism Delta(xZ, yZ) = [x, y]^(-1/2) into K = Z(G) gives a
/// bi-GF with abelian circle group. Returns the gamma together with the
/// isomorphism type name of the (certified abelian) circle group.
pub fn ault_watters_gamma(hol: &Holomorph) -> Result<(GammaFunction, String)> {
    let g = &hol.group;
    if g.order() % 2 == 0 {
        return Err(Error::Hypothesis(
            "group order must be odd for unique square roots".into(),
        ));
    }
    let z = center(g);
    let der = derived_subgroup(g);
    if !der.members.iter().all(|&x| z.contains(x)) {
        return Err(Error::Hypothesis("nilpotence class exceeds 2".into()));
    }
    // k -> k^m inverts-and-halves on the centre: 2m = -1 mod exp(Z).
    let e = subgroup_exponent(g, &z);
    let m = (0..e).find(|&m| (2 * m + 1) % e == 0).ok_or_else(|| {
        Error::Hypothesis("centre has even exponent".into())
    })?;
    let (q, proj) = quotient(g, &z)?;
    let nq = q.order();
    let mut table = vec![vec![usize::MAX; nq]; nq];
    for x in 0..g.order() {
        for y in 0..g.order() {
            let v = g.pow(g.comm(x, y), m as i64);
            let slot = &mut table[proj[x]][proj[y]];
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(Error::Internal(
                    "[x, y]^(-1/2) is not constant on centre cosets".into(),
                ));
            }
        }
    }
    let d = BiHom {
        k: z,
        quotient: q,
        proj,
        table,
    };
    validate_bihom(g, &d)
        .map_err(|e| Error::Internal(format!("Ault-Watters Delta invalid: {}", e)))?;
    let gamma = delta_gamma(hol, &d)?;
    // The circle is abelian: x o y = [x,y]^(-1/2) x y is symmetric.
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            if gamma.circle(hol, x, y) != gamma.circle(hol, y, x) {
                return Err(Error::Internal(format!(
                    "Ault-Watters circle not commutative at ({}, {})",
                    x, y
                )));
            }
        }
    }
    let brace = crate::gamma::circle_from_gamma(hol, &gamma)?;
    let name = crate::catalog::identify_abelian(&brace.circle)
        .ok_or_else(|| Error::Internal("commutative circle not recognized as abelian".into()))?;
    Ok((gamma, name))
}
