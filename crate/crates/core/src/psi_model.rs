//! Finite abelian groups with an action of `(Z/nZ)^x`, the operators
//! `Xi_k(c) = c + Psi_k(c)` and `Xi'_k(c) = -c + Psi_k(c)`, and the
//! subgroups `ker Xi_{-1}` and `im Xi'_2` they cut out.
//!
//! An action is stored as one automorphism table per unit residue. Matrices
//! follow the column convention: column `j` is the image of the `j`-th
//! canonical generator.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{Config, FinAbGroup, GroupElement, Subgroup};

type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PsiModuleData {
    invariant_factors: FinAbGroup,
    n: i64,
    action: BTreeMap<i64, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PsiModuleData", into = "PsiModuleData")]
pub struct PsiModule {
    group: FinAbGroup,
    n: i64,
    /// unit residue in `[0, n)` -> image index of every element
    tables: BTreeMap<i64, Vec<usize>>,
}

impl TryFrom<PsiModuleData> for PsiModule {
    type Error = Error;

    fn try_from(d: PsiModuleData) -> Result<Self> {
        PsiModule::new(d.invariant_factors, d.n, &d.action, &Config::default())
    }
}

impl From<PsiModule> for PsiModuleData {
    fn from(m: PsiModule) -> Self {
        let action = m.tables.keys().map(|&k| (k, m.matrix(k))).collect();
        PsiModuleData {
            invariant_factors: m.group,
            n: m.n,
            action,
        }
    }
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

fn is_bijection(table: &[usize]) -> bool {
    let mut seen = vec![false; table.len()];
    for &i in table {
        if seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Image table of the endomorphism sending `e_j` to `columns[j]`.
fn table_from_columns(g: &FinAbGroup, columns: &[GroupElement]) -> Vec<usize> {
    (0..g.order() as usize)
        .map(|idx| {
            let x = g.element_at(idx);
            let image = x
                .coords
                .iter()
                .zip(columns)
                .fold(g.identity(), |acc, (&c, col)| g.add(&acc, &g.scale(col, c)));
            g.index_of(&image)
        })
        .collect()
}

fn columns_from_matrix(g: &FinAbGroup, m: &Matrix) -> Result<Vec<GroupElement>> {
    let r = g.rank();
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(Error::input(format!("action matrices must be {r}x{r}")));
    }
    let mut cols = Vec::with_capacity(r);
    for (j, &d) in g.invariant_factors().iter().enumerate() {
        let col = g.element(&m.iter().map(|row| row[j]).collect::<Vec<_>>())?;
        if d % g.order_of(&col) != 0 {
            return Err(Error::input(format!(
                "column {j} has order {} not dividing {d}",
                g.order_of(&col)
            )));
        }
        cols.push(col);
    }
    Ok(cols)
}

impl PsiModule {
    /// Builds a module from automorphisms given on a generating set of
    /// `(Z/nZ)^x`, closing under composition and checking consistency.
    pub fn new(group: FinAbGroup, n: i64, generators: &BTreeMap<i64, Matrix>, cfg: &Config) -> Result<Self> {
        if n < 1 {
            return Err(Error::input(format!("n must be positive, got {n}")));
        }
        group.check_enumerable(cfg)?;
        let mut given: Vec<(i64, Vec<usize>)> = Vec::new();
        for (&k, m) in generators {
            if k.gcd(&n) != 1 && n != 1 {
                return Err(Error::input(format!("{k} is not a unit mod {n}")));
            }
            let table = table_from_columns(&group, &columns_from_matrix(&group, m)?);
            if !is_bijection(&table) {
                return Err(Error::input(format!("action of {k} is not bijective")));
            }
            given.push((k.rem_euclid(n), table));
        }
        let one = 1 % n;
        let identity: Vec<usize> = (0..group.order() as usize).collect();
        let mut tables: BTreeMap<i64, Vec<usize>> = BTreeMap::from([(one, identity)]);
        let mut frontier = vec![one];
        while let Some(k) = frontier.pop() {
            let current = tables[&k].clone();
            for (gk, gt) in &given {
                let key = arith::mod_mul(k, *gk, n);
                let value = compose(gt, &current);
                match tables.get(&key) {
                    Some(existing) if *existing != value => {
                        return Err(Error::input(format!("action is not multiplicative at {key}")));
                    }
                    Some(_) => {}
                    None => {
                        tables.insert(key, value);
                        frontier.push(key);
                    }
                }
            }
        }
        for (gk, gt) in &given {
            if tables[gk] != *gt {
                return Err(Error::input(format!("action is not multiplicative at {gk}")));
            }
        }
        let units = arith::units_mod(n);
        if tables.len() != units.len() {
            return Err(Error::input(format!(
                "the given residues do not generate (Z/{n}Z)^x"
            )));
        }
        let module = PsiModule { group, n, tables };
        for &k in &units {
            for &l in &units {
                let kl = arith::mod_mul(k, l, n);
                if compose(&module.tables[&k], &module.tables[&l]) != module.tables[&kl] {
                    return Err(Error::input(format!("action is not multiplicative at {k}*{l}")));
                }
            }
        }
        Ok(module)
    }

    /// Every `Psi_k` acts as the identity.
    pub fn trivial(group: FinAbGroup, n: i64, cfg: &Config) -> Result<Self> {
        let gens = arith::units_mod(n)
            .into_iter()
            .map(|k| (k, scalar_matrix(group.rank(), 1)))
            .collect();
        PsiModule::new(group, n, &gens, cfg)
    }

    /// `Psi_k` acting by multiplication by an integer for each listed `k`.
    pub fn from_scalars(group: FinAbGroup, n: i64, scalars: &[(i64, i64)], cfg: &Config) -> Result<Self> {
        let gens = scalars
            .iter()
            .map(|&(k, m)| (k, scalar_matrix(group.rank(), m)))
            .collect();
        PsiModule::new(group, n, &gens, cfg)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn key(&self, k: i64) -> Result<i64> {
        if k.gcd(&self.n) != 1 && self.n != 1 {
            return Err(Error::input(format!("gcd({k}, {}) != 1", self.n)));
        }
        Ok(k.rem_euclid(self.n))
    }

    /// Matrix of `Psi_k`.
    pub fn matrix(&self, k: i64) -> Matrix {
        let g = &self.group;
        let table = &self.tables[&k.rem_euclid(self.n)];
        let cols: Vec<GroupElement> = g
            .generators()
            .iter()
            .map(|e| g.element_at(table[g.index_of(e)]))
            .collect();
        (0..g.rank())
            .map(|i| cols.iter().map(|c| c.coords[i]).collect())
            .collect()
    }

    fn psi_idx(&self, key: i64, idx: usize) -> usize {
        self.tables[&key][idx]
    }

    pub fn psi(&self, k: i64, c: &GroupElement) -> Result<GroupElement> {
        self.group.check_element(c)?;
        let key = self.key(k)?;
        Ok(self.group.element_at(self.psi_idx(key, self.group.index_of(c))))
    }

    /// `Psi_k` restricted to `R` is `R`.
    fn is_stable(&self, members: &[usize]) -> bool {
        self.tables
            .values()
            .all(|t| members.iter().all(|&i| members.binary_search(&t[i]).is_ok()))
    }
}

fn scalar_matrix(r: usize, m: i64) -> Matrix {
    (0..r)
        .map(|i| (0..r).map(|j| if i == j { m } else { 0 }).collect())
        .collect()
}

/// A subgroup stable under every `Psi_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiSubgroup {
    /// Sorted element indices.
    pub members: Vec<usize>,
}

impl PsiSubgroup {
    pub fn new(module: &PsiModule, sub: &Subgroup) -> Result<Self> {
        if !module.is_stable(&sub.members) {
            return Err(Error::domain("subgroup is not stable under the action"));
        }
        Ok(PsiSubgroup {
            members: sub.members.clone(),
        })
    }

    pub fn whole(module: &PsiModule) -> Self {
        PsiSubgroup {
            members: (0..module.group.order() as usize).collect(),
        }
    }

    /// Smallest stable subgroup containing `gens`.
    pub fn closure(module: &PsiModule, gens: &[GroupElement]) -> Result<Self> {
        let g = &module.group;
        let mut all = Vec::new();
        for x in gens {
            g.check_element(x)?;
            for t in module.tables.values() {
                all.push(g.element_at(t[g.index_of(x)]));
            }
        }
        let sub = Subgroup::generated_by(g, &all);
        debug_assert!(module.is_stable(&sub.members));
        Ok(PsiSubgroup { members: sub.members })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn is_subset_of(&self, other: &PsiSubgroup) -> bool {
        self.members.iter().all(|&i| other.contains_index(i))
    }

    pub fn elements(&self, module: &PsiModule) -> Vec<GroupElement> {
        self.members.iter().map(|&i| module.group.element_at(i)).collect()
    }
}

/// `Xi_k(c) = c + Psi_k(c)`.
pub fn xi(module: &PsiModule, k: i64, c: &GroupElement) -> Result<GroupElement> {
    let p = module.psi(k, c)?;
    Ok(module.group.add(c, &p))
}

/// `Xi'_k(c) = -c + Psi_k(c)`.
pub fn xi_prime(module: &PsiModule, k: i64, c: &GroupElement) -> Result<GroupElement> {
    let p = module.psi(k, c)?;
    Ok(module.group.add(&module.group.neg(c), &p))
}

fn from_indices(module: &PsiModule, set: BTreeSet<usize>) -> Result<PsiSubgroup> {
    let members: Vec<usize> = set.into_iter().collect();
    if !module.is_stable(&members) {
        return Err(Error::domain("result is not stable under the action"));
    }
    Ok(PsiSubgroup { members })
}

/// `ker Xi_{-1}` inside `R`.
pub fn sd_kernel(module: &PsiModule, r: &PsiSubgroup) -> Result<PsiSubgroup> {
    let g = &module.group;
    let zero = g.index_of(&g.identity());
    let mut set = BTreeSet::new();
    for c in r.elements(module) {
        if g.index_of(&xi(module, -1, &c)?) == zero {
            set.insert(g.index_of(&c));
        }
    }
    from_indices(module, set)
}

fn require_odd(module: &PsiModule) -> Result<()> {
    if module.n % 2 == 0 {
        return Err(Error::domain(format!("n = {} is even", module.n)));
    }
    Ok(())
}

/// `Xi'_2(R)`; needs `n` odd.
pub fn at_image(module: &PsiModule, r: &PsiSubgroup) -> Result<PsiSubgroup> {
    require_odd(module)?;
    let g = &module.group;
    let mut set = BTreeSet::new();
    for d in r.elements(module) {
        set.insert(g.index_of(&xi_prime(module, 2, &d)?));
    }
    from_indices(module, set)
}

/// `im Xi'_2 <= ker Xi_{-1} <= R`.
pub fn check_chain(module: &PsiModule, r: &PsiSubgroup) -> Result<bool> {
    let sd = sd_kernel(module, r)?;
    let at = at_image(module, r)?;
    Ok(at.is_subset_of(&sd) && sd.is_subset_of(r))
}

/// For `c` fixed by `Psi_{-1}`: whether `Xi_{-1}(c) = 0`, which is checked
/// to agree with `2c = 0`.
pub fn check_criteria_a(module: &PsiModule, c: &GroupElement) -> Result<bool> {
    let g = &module.group;
    if module.psi(-1, c)? != *c {
        return Err(Error::domain("c is not fixed by Psi_{-1}"));
    }
    let in_kernel = xi(module, -1, c)? == g.identity();
    let divides_two = g.scale(c, 2) == g.identity();
    assert_eq!(in_kernel, divides_two);
    Ok(in_kernel)
}

/// `sum_{j < n(2)} Psi_{2^j}(c) = 0` for every `c` in `Xi'_2(R)`, where
/// `n(2)` is the order of 2 mod `n`.
pub fn telescoping_identity(module: &PsiModule, r: &PsiSubgroup) -> Result<bool> {
    require_odd(module)?;
    let g = &module.group;
    let n2 = arith::mult_order(2, module.n)?;
    for c in at_image(module, r)?.elements(module) {
        let mut total = g.identity();
        let mut k = 1;
        for _ in 0..n2 {
            total = g.add(&total, &module.psi(k, &c)?);
            k = arith::mod_mul(k, 2, module.n);
        }
        if total != g.identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every `c` in `Xi'_2(R)` fixed by `Psi_2` satisfies `n(2) c = 0`, and the
/// telescoping identity holds.
pub fn check_criteria_b(module: &PsiModule, r: &PsiSubgroup) -> Result<bool> {
    require_odd(module)?;
    let g = &module.group;
    let n2 = arith::mult_order(2, module.n)?;
    for c in at_image(module, r)?.elements(module) {
        if module.psi(2, &c)? == c && g.scale(&c, n2) != g.identity() {
            return Ok(false);
        }
    }
    telescoping_identity(module, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeClassification {
    #[serde(rename = "in R \\ R_sd")]
    InRNotSd,
    #[serde(rename = "in R_sd \\ A^t")]
    InSdNotAt,
    #[serde(rename = "no conclusion")]
    NoConclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaPrimeReport {
    pub p: i64,
    pub c_order: i64,
    pub classification: PrimeClassification,
    /// Order of 2 modulo `p`.
    pub n2: i64,
    pub n2_odd: bool,
}

/// Which conclusion applies to an invariant class of order `c_order` for `C_p`.
pub fn criteria_prime_report(p: i64, c_order: i64) -> Result<CriteriaPrimeReport> {
    if p < 3 || !arith::is_prime(p) {
        return Err(Error::input(format!("{p} is not an odd prime")));
    }
    if c_order < 1 {
        return Err(Error::input(format!("class order must be positive, got {c_order}")));
    }
    let n2 = arith::mult_order(2, p)?;
    let classification = if (p - 1) % c_order != 0 {
        PrimeClassification::InRNotSd
    } else if c_order == 2 && p % 8 == 7 {
        assert!(n2 % 2 == 1, "order of 2 mod {p} must be odd");
        PrimeClassification::InSdNotAt
    } else {
        PrimeClassification::NoConclusion
    };
    Ok(CriteriaPrimeReport {
        p,
        c_order,
        classification,
        n2,
        n2_odd: n2 % 2 == 1,
    })
}

/// A generator of `(Z/nZ)^x` when that group is cyclic.
pub fn cyclic_unit_generator(n: i64) -> Option<i64> {
    let phi = arith::euler_phi(n);
    arith::units_mod(n)
        .into_iter()
        .find(|&u| arith::mult_order(u, n).ok() == Some(phi))
}

/// Automorphisms of `A` whose order divides `m`, as image tables.
fn automorphisms_of_order_dividing(g: &FinAbGroup, m: i64) -> Vec<Vec<GroupElement>> {
    let choices: Vec<Vec<GroupElement>> = g
        .invariant_factors()
        .iter()
        .map(|&d| g.torsion(d))
        .collect();
    let identity: Vec<usize> = (0..g.order() as usize).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let cols: Vec<GroupElement> = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let table = table_from_columns(g, &cols);
        if is_bijection(&table) {
            let mut power = table.clone();
            for _ in 1..m {
                power = compose(&table, &power);
            }
            if power == identity {
                out.push(cols);
            }
        }
        // odometer over the column choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Every action of `(Z/nZ)^x` on `A`, for `n` with cyclic unit group.
pub fn enumerate_actions(group: &FinAbGroup, n: i64, cfg: &Config) -> Result<Vec<PsiModule>> {
    group.check_enumerable(cfg)?;
    let Some(u) = cyclic_unit_generator(n) else {
        return Err(Error::domain(format!("(Z/{n}Z)^x is not cyclic")));
    };
    let phi = arith::euler_phi(n);
    let mut out = Vec::new();
    for cols in automorphisms_of_order_dividing(group, phi) {
        let m: Matrix = (0..group.rank())
            .map(|i| cols.iter().map(|c| c.coords[i]).collect())
            .collect();
        out.push(PsiModule::new(group.clone(), n, &BTreeMap::from([(u, m)]), cfg)?);
    }
    Ok(out)
}

/// `R = A` together with the stable closure of each single element.
pub fn test_subgroups(module: &PsiModule) -> Result<Vec<PsiSubgroup>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let whole = PsiSubgroup::whole(module);
    seen.insert(whole.members.clone());
    out.push(whole);
    for x in module.group.elements_unchecked() {
        let r = PsiSubgroup::closure(module, &[x])?;
        if seen.insert(r.members.clone()) {
            out.push(r);
        }
    }
    Ok(out)
}
