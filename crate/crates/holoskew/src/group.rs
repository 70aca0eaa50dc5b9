//! Finite groups as Cayley tables, with the identity pinned at index 0.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite group given by its full Cayley table. `table[i][j]` is the
/// product `i * j`. Index 0 is always the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Validates the three table invariants (identity at 0, Latin square,
    /// associativity) and precomputes inverses.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable {
                    row: i,
                    col: row.len(),
                    msg: format!("row has {} entries, expected {}", row.len(), n),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidTable {
                        row: i,
                        col: j,
                        msg: format!("entry {} out of range", v),
                    });
                }
            }
        }
        for j in 0..n {
            if table[0][j] != j {
                return Err(Error::InvalidTable {
                    row: 0,
                    col: j,
                    msg: "index 0 is not a left identity".into(),
                });
            }
        }
        for i in 0..n {
            if table[i][0] != i {
                return Err(Error::InvalidTable {
                    row: i,
                    col: 0,
                    msg: "index 0 is not a right identity".into(),
                });
            }
        }
        // Latin square: each row and column is a permutation.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if seen_row[table[i][j]] {
                    return Err(Error::InvalidTable {
                        row: i,
                        col: j,
                        msg: "repeated entry in row".into(),
                    });
                }
                seen_row[table[i][j]] = true;
                if seen_col[table[j][i]] {
                    return Err(Error::InvalidTable {
                        row: j,
                        col: i,
                        msg: "repeated entry in column".into(),
                    });
                }
                seen_col[table[j][i]] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::InvalidTable {
                            row: i,
                            col: j,
                            msg: format!("associativity fails at ({}, {}, {})", i, j, k),
                        });
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if table[i][j] == 0 {
                    inverse[i] = j;
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// `x^y = y^-1 x y`.
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.inv(x), self.conj(x, y))
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let mut base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Multiset of element orders, as (order, count) sorted by order.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for x in 0..self.order() {
            *counts.entry(self.element_order(x)).or_insert(0) += 1;
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort();
        v
    }

    /// Minimal exponent e with x^e = 1 for all x.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1usize, |acc, x| lcm(acc, self.element_order(x)))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A subgroup as a sorted member list. Operations take the parent explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn new(members: Vec<usize>) -> Self {
        let mut m = members;
        m.sort_unstable();
        m.dedup();
        Subgroup { members: m }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn full(g: &FiniteGroup) -> Self {
        Subgroup {
            members: (0..g.order()).collect(),
        }
    }
}

/// Smallest subgroup containing the seed.
pub fn subgroup_closure(g: &FiniteGroup, seed: &[usize]) -> Subgroup {
    let mut in_set = vec![false; g.order()];
    in_set[0] = true;
    let mut members = vec![0usize];
    let mut queue = vec![0usize];
    for &s in seed {
        if !in_set[s] {
            in_set[s] = true;
            members.push(s);
            queue.push(s);
        }
    }
    while let Some(x) = queue.pop() {
        let snapshot = members.clone();
        for &y in &snapshot {
            for z in [g.mul(x, y), g.mul(y, x)] {
                if !in_set[z] {
                    in_set[z] = true;
                    members.push(z);
                    queue.push(z);
                }
            }
        }
    }
    Subgroup::new(members)
}

pub fn is_subgroup(g: &FiniteGroup, s: &Subgroup) -> bool {
    s.contains(0)
        && s.members
            .iter()
            .all(|&x| s.contains(g.inv(x)) && s.members.iter().all(|&y| s.contains(g.mul(x, y))))
}

pub fn is_normal(g: &FiniteGroup, s: &Subgroup) -> bool {
    (0..g.order()).all(|y| s.members.iter().all(|&x| s.contains(g.conj(x, y))))
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    Subgroup::new(
        (0..n)
            .filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z)))
            .collect(),
    )
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    let mut comms = Vec::new();
    for x in 0..n {
        for y in 0..n {
            comms.push(g.comm(x, y));
        }
    }
    subgroup_closure(g, &comms)
}

/// All subgroups, by repeated one-element extension of known subgroups.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(s) = frontier.pop() {
        for x in 1..n {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let ext = subgroup_closure(g, &seed).members;
            if found.insert(ext.clone()) {
                frontier.push(ext);
            }
        }
    }
    found.into_iter().map(|m| Subgroup { members: m }).collect()
}

/// Proper subgroups maximal under inclusion.
pub fn maximal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let subs = all_subgroups(g);
    let n = g.order();
    let proper: Vec<&Subgroup> = subs.iter().filter(|s| s.order() < n).collect();
    proper
        .iter()
        .filter(|s| {
            !proper.iter().any(|t| {
                t.order() > s.order() && s.members.iter().all(|x| t.contains(*x))
            })
        })
        .map(|s| (*s).clone())
        .collect()
}

/// Intersection of all maximal subgroups; the whole group when none exist.
pub fn frattini(g: &FiniteGroup) -> Subgroup {
    let maximals = maximal_subgroups(g);
    if maximals.is_empty() {
        return Subgroup::full(g);
    }
    let members = (0..g.order())
        .filter(|&x| maximals.iter().all(|m| m.contains(x)))
        .collect();
    Subgroup::new(members)
}

/// Does G = HK as a set product?
pub fn factorizes(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    let mut covered = vec![false; g.order()];
    for &x in &h.members {
        for &y in &k.members {
            covered[g.mul(x, y)] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// The quotient group and the projection map G -> G/N.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    if !is_subgroup(g, n) {
        return Err(Error::InvalidSpec("quotient by a non-subgroup".into()));
    }
    if !is_normal(g, n) {
        return Err(Error::InvalidSpec("quotient by a non-normal subgroup".into()));
    }
    let order = g.order();
    // Cosets, with the coset of the identity first.
    let mut coset_of = vec![usize::MAX; order];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in &n.members {
            coset_of[g.mul(m, x)] = idx;
        }
    }
    let q = reps.len();
    let mut table = vec![vec![0; q]; q];
    for i in 0..q {
        for j in 0..q {
            table[i][j] = coset_of[g.mul(reps[i], reps[j])];
        }
    }
    let quo = FiniteGroup::from_table(format!("{}/N{}", g.name, n.order()), table)?;
    Ok((quo, coset_of))
}

/// Constructor descriptors for the group catalog.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Quaternion(usize),
    /// K, H, and a homomorphism H -> Aut(K) given elementwise.
    Semidirect {
        k: Box<GroupSpec>,
        h: Box<GroupSpec>,
        action: Action,
    },
    Heisenberg(usize),
    ModularExt {
        p: usize,
        n: usize,
    },
    Raw {
        name: String,
        table: Vec<Vec<usize>>,
    },
}

/// How H acts on K in a semidirect product.
#[derive(Clone, Debug)]
pub enum Action {
    /// Generator of a cyclic H inverts K.
    Inv,
    /// Generator of a cyclic H maps x to x^e on K.
    Pow(usize),
    /// Explicit map from each element of H to a permutation of K.
    Explicit(Vec<Permutation>),
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Abelian(factors) => abelian(factors),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Quaternion(m) => quaternion(*m),
        GroupSpec::Semidirect { k, h, action } => {
            let kg = make_group(k)?;
            let hg = make_group(h)?;
            let phi = resolve_action(&kg, &hg, action)?;
            semidirect(&kg, &hg, &phi)
        }
        GroupSpec::Heisenberg(p) => heisenberg(*p),
        GroupSpec::ModularExt { p, n } => modular_ext(*p, *n),
        GroupSpec::Raw { name, table } => FiniteGroup::from_table(name.clone(), table.clone()),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("cyclic(0)".into()));
    }
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    FiniteGroup::from_table(format!("c{}", n), table)
}

/// Direct product of cyclic groups with the given factor orders.
pub fn abelian(factors: &[usize]) -> Result<FiniteGroup> {
    if factors.is_empty() || factors.iter().any(|&f| f == 0) {
        return Err(Error::InvalidSpec(format!("abelian({:?})", factors)));
    }
    let n: usize = factors.iter().product();
    let k = factors.len();
    let decode = |mut x: usize| -> Vec<usize> {
        let mut v = vec![0; k];
        for i in (0..k).rev() {
            v[i] = x % factors[i];
            x /= factors[i];
        }
        v
    };
    let encode = |v: &[usize]| -> usize {
        v.iter().zip(factors).fold(0, |acc, (&d, &f)| acc * f + d)
    };
    let mut table = vec![vec![0; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        let a = decode(i);
        for (j, cell) in row.iter_mut().enumerate() {
            let b = decode(j);
            let sum: Vec<usize> = a
                .iter()
                .zip(&b)
                .zip(factors)
                .map(|((&x, &y), &f)| (x + y) % f)
                .collect();
            *cell = encode(&sum);
        }
    }
    let name = format!(
        "ab{}",
        factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x")
    );
    FiniteGroup::from_table(name, table)
}

/// Dihedral group of order 2n: r^i s^e with s r s = r^-1. Index = e*n + i.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidSpec("dihedral(0)".into()));
    }
    let order = 2 * n;
    let mut table = vec![vec![0; order]; order];
    for e1 in 0..2usize {
        for i in 0..n {
            for e2 in 0..2usize {
                for j in 0..n {
                    // (r^i s^e1)(r^j s^e2) = r^(i + j*(-1)^e1) s^(e1+e2)
                    let ii = if e1 == 0 { (i + j) % n } else { (i + n - j % n) % n };
                    let ee = (e1 + e2) % 2;
                    table[e1 * n + i][e2 * n + j] = ee * n + ii;
                }
            }
        }
    }
    FiniteGroup::from_table(format!("d{}", n), table)
}

/// Generalized quaternion group of order m = 2^k >= 8.
pub fn quaternion(m: usize) -> Result<FiniteGroup> {
    if m < 8 || !m.is_power_of_two() {
        return Err(Error::InvalidSpec(format!(
            "quaternion({}): order must be a power of two, at least 8",
            m
        )));
    }
    let half = m / 2;
    let quarter = m / 4;
    // a^i b^e with a^half = 1, b^2 = a^quarter, b^-1 a b = a^-1.
    let mut table = vec![vec![0; m]; m];
    for e1 in 0..2usize {
        for i in 0..half {
            for e2 in 0..2usize {
                for j in 0..half {
                    let mut ii = if e1 == 0 {
                        (i + j) % half
                    } else {
                        (i + half - j % half) % half
                    };
                    if e1 == 1 && e2 == 1 {
                        ii = (ii + quarter) % half;
                    }
                    let ee = (e1 + e2) % 2;
                    table[e1 * half + i][e2 * half + j] = ee * half + ii;
                }
            }
        }
    }
    FiniteGroup::from_table(format!("q{}", m), table)
}

fn resolve_action(kg: &FiniteGroup, hg: &FiniteGroup, action: &Action) -> Result<Vec<Permutation>> {
    match action {
        Action::Explicit(phi) => Ok(phi.clone()),
        Action::Inv | Action::Pow(_) => {
            // H must be cyclic; its generator acts by the named power map.
            let h_ord = hg.order();
            let gen = (0..h_ord)
                .find(|&x| hg.element_order(x) == h_ord)
                .ok_or_else(|| Error::InvalidSpec("named action requires cyclic H".into()))?;
            let base = match action {
                Action::Inv => Permutation::new((0..kg.order()).map(|x| kg.inv(x)).collect())?,
                Action::Pow(e) => {
                    Permutation::new((0..kg.order()).map(|x| kg.pow(x, *e as i64)).collect())?
                }
                Action::Explicit(_) => unreachable!(),
            };
            // phi[h] for h = gen^t is base^t; fill by discrete log over the cyclic H.
            let mut phi = vec![Permutation::identity(kg.order()); h_ord];
            let mut h = 0usize;
            let mut p = Permutation::identity(kg.order());
            for _ in 0..h_ord {
                phi[h] = p.clone();
                h = hg.mul(h, gen);
                p = p.compose(&base);
            }
            Ok(phi)
        }
    }
}

/// Semidirect product of K (normal) by H, with H acting through phi:
/// conjugation by h in H acts on K as phi[h]. Elements are h*k pairs,
/// index = h*|K| + k.
pub fn semidirect(kg: &FiniteGroup, hg: &FiniteGroup, phi: &[Permutation]) -> Result<FiniteGroup> {
    let nk = kg.order();
    let nh = hg.order();
    if phi.len() != nh {
        return Err(Error::InvalidSpec(format!(
            "action has {} entries, expected {}",
            phi.len(),
            nh
        )));
    }
    for (h, p) in phi.iter().enumerate() {
        if p.degree() != nk {
            return Err(Error::InvalidSpec("action degree mismatch".into()));
        }
        if !crate::perm::is_automorphism(kg, p) {
            return Err(Error::InvalidSpec(format!(
                "action image of H-element {} is not an automorphism of K",
                h
            )));
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            if phi[hg.mul(h1, h2)] != phi[h1].compose(&phi[h2]) {
                return Err(Error::InvalidSpec(format!(
                    "action is not a homomorphism at ({}, {})",
                    h1, h2
                )));
            }
        }
    }
    let n = nk * nh;
    let mut table = vec![vec![0; n]; n];
    for h1 in 0..nh {
        for k1 in 0..nk {
            for h2 in 0..nh {
                for k2 in 0..nk {
                    // (h1 k1)(h2 k2) = (h1 h2)(k1^phi(h2) k2)
                    let h = hg.mul(h1, h2);
                    let k = kg.mul(phi[h2].apply(k1), k2);
                    table[h1 * nk + k1][h2 * nk + k2] = h * nk + k;
                }
            }
        }
    }
    FiniteGroup::from_table(format!("sd({},{})", kg.name, hg.name), table)
}

/// Heisenberg group of order p^3 for odd prime p: upper unitriangular
/// 3x3 matrices over the p-element field. Free of class 2 and exponent p
/// on two generators. Element (a, b, c) has index a*p^2 + b*p + c.
pub fn heisenberg(p: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidSpec(format!(
            "heisenberg({}): p must be an odd prime",
            p
        )));
    }
    let n = p * p * p;
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        let (a1, b1, c1) = (i / (p * p), (i / p) % p, i % p);
        for j in 0..n {
            let (a2, b2, c2) = (j / (p * p), (j / p) % p, j % p);
            let a = (a1 + a2) % p;
            let b = (b1 + b2) % p;
            let c = (c1 + c2 + a1 * b2) % p;
            table[i][j] = a * p * p + b * p + c;
        }
    }
    FiniteGroup::from_table(format!("heis{}", p), table)
}

/// The non-split extension of K = C_p^n (generators a_0..a_{n-1}) by b with
/// b^p = a_{n-1} and b^-1 a_i b = a_i a_{i+1} (a_n = 1). Requires p prime
/// and p > n >= 2. Order p^(n+1). Element (e, f) = a^e b^f has index
/// (base-p value of e)*p + f.
pub fn modular_ext(p: usize, n: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || n < 2 || p <= n {
        return Err(Error::InvalidSpec(format!(
            "modular_ext({}, {}): need p prime and p > n >= 2",
            p, n
        )));
    }
    let kn = p.pow(n as u32);
    let decode = |mut x: usize| -> Vec<usize> {
        let mut v = vec![0; n];
        for i in (0..n).rev() {
            v[i] = x % p;
            x /= p;
        }
        v
    };
    let encode = |v: &[usize]| -> usize { v.iter().fold(0, |acc, &d| acc * p + d) };
    // beta: a_i -> a_i a_{i+1}, i.e. on exponent vectors e'_j = e_j + e_{j-1}.
    let beta = |e: &[usize]| -> Vec<usize> {
        (0..n)
            .map(|j| (e[j] + if j > 0 { e[j - 1] } else { 0 }) % p)
            .collect()
    };
    // Powers of beta on K indices; beta has order p since p > n.
    let mut beta_pow: Vec<Vec<usize>> = Vec::with_capacity(p);
    let identity: Vec<usize> = (0..kn).collect();
    beta_pow.push(identity);
    for f in 1..p {
        let prev = &beta_pow[f - 1];
        let next: Vec<usize> = (0..kn).map(|k| encode(&beta(&decode(prev[k])))).collect();
        beta_pow.push(next);
    }
    let a_last = encode(
        &(0..n)
            .map(|i| if i == n - 1 { 1 } else { 0 })
            .collect::<Vec<_>>(),
    );
    let k_mul = |x: usize, y: usize| -> usize {
        let (a, b) = (decode(x), decode(y));
        encode(&(0..n).map(|i| (a[i] + b[i]) % p).collect::<Vec<_>>())
    };
    let order = kn * p;
    let mut table = vec![vec![0; order]; order];
    for k1 in 0..kn {
        for f1 in 0..p {
            for k2 in 0..kn {
                for f2 in 0..p {
                    // (k1 b^f1)(k2 b^f2) = k1 k2^(beta^-f1) b^(f1+f2),
                    // with b^p = a_{n-1} central.
                    let k2c = beta_pow[(p - f1) % p][k2];
                    let mut k = k_mul(k1, k2c);
                    let mut f = f1 + f2;
                    if f >= p {
                        f -= p;
                        k = k_mul(k, a_last);
                    }
                    table[k1 * p + f1][k2 * p + f2] = k * p + f;
                }
            }
        }
    }
    FiniteGroup::from_table(format!("modext({},{})", p, n), table)
}

/// Parse the raw group file format: line 1 is n, then n rows of n indices.
pub fn parse_group_file(name: &str, text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or(Error::Parse { line: 1, col: 1, msg: "empty file".into() })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("expected group order, found {:?}", first.trim()),
    })?;
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let (lineno, line) = lines.next().ok_or(Error::Parse {
            line: i + 2,
            col: 1,
            msg: "missing table row".into(),
        })?;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in line.split_whitespace().enumerate() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                col: col + 1,
                msg: format!("bad index {:?}", tok),
            })?;
            row.push(v);
        }
        if row.len() != n {
            return Err(Error::Parse {
                line: lineno + 1,
                col: row.len() + 1,
                msg: format!("row has {} entries, expected {}", row.len(), n),
            });
        }
        table.push(row);
    }
    FiniteGroup::from_table(name, table)
}

/// Greedy small generating set: repeatedly add the element whose closure
/// with the current generators grows fastest.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![];
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = Subgroup::trivial();
    while closure.order() < n {
        let mut best: Option<(usize, usize)> = None;
        for x in 1..n {
            if closure.contains(x) {
                continue;
            }
            let mut seed = gens.clone();
            seed.push(x);
            let size = subgroup_closure(g, &seed).order();
            if best.map_or(true, |(bs, _)| size > bs) {
                best = Some((size, x));
            }
        }
        let (_, x) = best.expect("proper closure must have an outside element");
        gens.push(x);
        closure = subgroup_closure(g, &gens);
    }
    gens
}

/// Extend generator images to a map on all of G by closing over products.
/// Returns the map if consistent on the closure of `gens`, which must
/// generate G for the result to be total. The homomorphism property is
/// NOT fully verified here.
fn extend_by_generators(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = g1.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut known = vec![0usize];
    let mut head = 0;
    while head < known.len() {
        let x = known[head];
        head += 1;
        for (&gen, &img) in gens.iter().zip(images) {
            let y = g1.mul(x, gen);
            let fy = g2.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                known.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    if known.len() < n {
        return None;
    }
    Some(map)
}

fn is_homomorphism(g1: &FiniteGroup, g2: &FiniteGroup, map: &[usize]) -> bool {
    let n = g1.order();
    (0..n).all(|x| (0..n).all(|y| map[g1.mul(x, y)] == g2.mul(map[x], map[y])))
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.iter().all(|&v| {
        if v >= n || seen[v] {
            false
        } else {
            seen[v] = true;
            true
        }
    })
}

/// Backtracking isomorphism search over images of a small generating set,
/// pruning by element order. Deterministic: candidates tried in index order.
pub fn is_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Vec<usize>> {
    if g1.order() != g2.order() {
        return None;
    }
    if g1.order_statistics() != g2.order_statistics() {
        return None;
    }
    let gens = generating_set(g1);
    if gens.is_empty() {
        return Some(vec![0]);
    }
    let orders: Vec<usize> = gens.iter().map(|&x| g1.element_order(x)).collect();
    let mut images = vec![0usize; gens.len()];
    fn search(
        g1: &FiniteGroup,
        g2: &FiniteGroup,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let map = extend_by_generators(g1, g2, gens, images)?;
            if is_bijection(&map, g2.order()) && is_homomorphism(g1, g2, &map) {
                return Some(map);
            }
            return None;
        }
        for cand in 0..g2.order() {
            if g2.element_order(cand) != orders[depth] {
                continue;
            }
            images[depth] = cand;
            // Partial consistency: the assigned prefix must extend on its closure.
            let partial = subgroup_closure(g1, &gens[..=depth]);
            let ext = extend_partial(g1, g2, &gens[..=depth], &images[..=depth], &partial);
            if ext.is_none() {
                continue;
            }
            if let Some(found) = search(g1, g2, gens, orders, images, depth + 1) {
                return Some(found);
            }
        }
        None
    }
    // Like extend_by_generators but only on the subgroup generated so far,
    // also requiring injectivity there.
    fn extend_partial(
        g1: &FiniteGroup,
        g2: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
        domain: &Subgroup,
    ) -> Option<()> {
        let n = g1.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut known = vec![0usize];
        let mut head = 0;
        while head < known.len() {
            let x = known[head];
            head += 1;
            for (&gen, &img) in gens.iter().zip(images) {
                let y = g1.mul(x, gen);
                let fy = g2.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    known.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        // Injectivity and the homomorphism property on the generated subgroup.
        let mut seen = vec![false; n];
        for &x in &domain.members {
            let v = map[x];
            if v == usize::MAX || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        for &x in &domain.members {
            for &y in &domain.members {
                if map[g1.mul(x, y)] != g2.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(())
    }
    search(g1, g2, &gens, &orders, &mut images, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let g = cyclic(1).unwrap();
        assert_eq!(g.table(), &vec![vec![0]]);
    }

    #[test]
    fn cyclic_four_table() {
        let g = cyclic(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.mul(i, j), (i + j) % 4);
            }
        }
        assert_eq!(g.mul(2, 3), 1);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        for g in [cyclic(6).unwrap(), dihedral(4).unwrap(), quaternion(8).unwrap()] {
            for x in 0..g.order() {
                assert_eq!(g.comm(x, x), 0);
            }
        }
    }

    #[test]
    fn dihedral_conjugation_inverts_rotations() {
        let g = dihedral(3).unwrap();
        let r = 1; // a rotation
        let s = 3; // a reflection
        assert_eq!(g.conj(r, s), g.inv(r));
    }

    #[test]
    fn semidirect_c3_c2_inv_is_dihedral_3() {
        let spec = GroupSpec::Semidirect {
            k: Box::new(GroupSpec::Cyclic(3)),
            h: Box::new(GroupSpec::Cyclic(2)),
            action: Action::Inv,
        };
        let g = make_group(&spec).unwrap();
        let d3 = dihedral(3).unwrap();
        assert!(is_isomorphic(&g, &d3).is_some());
    }

    #[test]
    fn semidirect_rejects_non_automorphism_action() {
        let kg = cyclic(4).unwrap();
        let hg = cyclic(2).unwrap();
        // x -> 2x is not bijective on C4, so not even a permutation;
        // use a bijection that is not an automorphism instead.
        let bad = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        let phi = vec![Permutation::identity(4), bad];
        assert!(semidirect(&kg, &hg, &phi).is_err());
    }

    #[test]
    fn modular_ext_3_2_has_order_9_outside_k() {
        let g = modular_ext(3, 2).unwrap();
        assert_eq!(g.order(), 27);
        // K = elements with b-part 0, i.e. indices divisible by 3.
        for x in 0..27 {
            if x % 3 != 0 {
                assert_eq!(g.element_order(x), 9, "element {} outside K", x);
            }
        }
    }

    #[test]
    fn modular_ext_3_2_does_not_split_over_k() {
        // No complement of order 3 meets K trivially.
        let g = modular_ext(3, 2).unwrap();
        let k = Subgroup::new((0..27).filter(|x| x % 3 == 0).collect());
        assert!(is_normal(&g, &k));
        let mut found = false;
        for x in 1..27 {
            let c = subgroup_closure(&g, &[x]);
            if c.order() == 3 && c.members.iter().filter(|m| k.contains(**m)).count() == 1 {
                found = true;
            }
        }
        assert!(!found, "a complement of order 3 exists");
    }

    #[test]
    fn center_of_cyclic_is_everything() {
        let g = cyclic(6).unwrap();
        assert_eq!(center(&g).order(), 6);
    }

    #[test]
    fn heisenberg_center_equals_derived() {
        let g = heisenberg(3).unwrap();
        let z = center(&g);
        let d = derived_subgroup(&g);
        assert_eq!(z.order(), 3);
        assert_eq!(z, d);
    }

    #[test]
    fn frattini_of_c4() {
        let g = cyclic(4).unwrap();
        assert_eq!(frattini(&g).members, vec![0, 2]);
    }

    #[test]
    fn closure_of_empty_seed_is_trivial() {
        let g = dihedral(4).unwrap();
        assert_eq!(subgroup_closure(&g, &[]).members, vec![0]);
    }

    #[test]
    fn quotient_c4_by_c2() {
        let g = cyclic(4).unwrap();
        let n = Subgroup::new(vec![0, 2]);
        let (q, proj) = quotient(&g, &n).unwrap();
        assert_eq!(q.order(), 2);
        let c2 = cyclic(2).unwrap();
        assert!(is_isomorphic(&q, &c2).is_some());
        // Projection is a homomorphism.
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(proj[g.mul(x, y)], q.mul(proj[x], proj[y]));
            }
        }
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = dihedral(3).unwrap();
        let h = subgroup_closure(&g, &[3]); // a reflection
        assert_eq!(h.order(), 2);
        assert!(!is_normal(&g, &h));
        assert!(quotient(&g, &h).is_err());
    }

    #[test]
    fn dihedral_factorizes_as_rotations_times_reflection() {
        let g = dihedral(3).unwrap();
        let rot = Subgroup::new(vec![0, 1, 2]);
        let refl = subgroup_closure(&g, &[3]);
        assert!(factorizes(&g, &rot, &refl));
    }

    #[test]
    fn c4_not_isomorphic_to_klein() {
        let g1 = cyclic(4).unwrap();
        let g2 = abelian(&[2, 2]).unwrap();
        assert!(is_isomorphic(&g1, &g2).is_none());
    }

    #[test]
    fn isomorphism_is_reflexive() {
        for g in [cyclic(8).unwrap(), dihedral(5).unwrap(), heisenberg(3).unwrap()] {
            let iso = is_isomorphic(&g, &g).unwrap();
            assert!(is_homomorphism(&g, &g, &iso));
        }
    }

    #[test]
    fn parse_rejects_bad_identity() {
        let text = "2\n1 0\n0 1\n";
        let err = parse_group_file("bad", text).unwrap_err();
        let msg = format!("{}", err);
        assert!(msg.contains("identity"), "{}", msg);
    }

    #[test]
    fn parse_roundtrip_c3() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n";
        let g = parse_group_file("c3file", text).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn constructed_groups_pass_invariants() {
        // from_table checks everything; just make sure the catalog builds.
        for spec in [
            GroupSpec::Cyclic(12),
            GroupSpec::Abelian(vec![2, 4]),
            GroupSpec::Dihedral(6),
            GroupSpec::Quaternion(16),
            GroupSpec::Heisenberg(3),
            GroupSpec::ModularExt { p: 5, n: 2 },
        ] {
            make_group(&spec).unwrap();
        }
    }
}
