//! Finite abelian groups in invariant-factor form.
//!
//! Groups are written additively. An element is a coordinate vector with
//! `coords[i]` reduced modulo the `i`-th invariant factor; elements are
//! enumerated in lexicographic order of their coordinates, which is also the
//! order of [`FinAbGroup::index_of`].

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice;

/// Knobs for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest group order for which elements may be enumerated.
    pub enumeration_bound: i64,
    /// Largest odd prime for which residue rings are enumerated.
    pub residue_prime_bound: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            enumeration_bound: 10_000,
            residue_prime_bound: 500,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct FinAbGroup {
    factors: Vec<i64>,
}

impl TryFrom<Vec<i64>> for FinAbGroup {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        FinAbGroup::new(v)
    }
}

impl From<FinAbGroup> for Vec<i64> {
    fn from(g: FinAbGroup) -> Self {
        g.factors
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement { coords }
    }
}

impl FinAbGroup {
    /// Builds a group from invariant factors `d_1 | d_2 | ... | d_k`, each `>= 2`.
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        for (i, &d) in factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::input(format!("invariant factor {d} must be at least 2")));
            }
            if i + 1 < factors.len() && factors[i + 1] % d != 0 {
                return Err(Error::input(format!(
                    "invariant factors must form a divisor chain, {d} does not divide {}",
                    factors[i + 1]
                )));
            }
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        match n {
            1 => Ok(FinAbGroup::trivial()),
            n if n >= 2 => FinAbGroup::new(vec![n]),
            _ => Err(Error::input(format!("cyclic group order must be positive, got {n}"))),
        }
    }

    /// The group `C_{n_1} x ... x C_{n_k}` for arbitrary positive orders,
    /// normalized to invariant factors.
    pub fn from_cyclic_orders(orders: &[i64]) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n < 1) {
            return Err(Error::input(format!("cyclic orders must be positive, got {bad}")));
        }
        let k = orders.len();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect())
            .collect();
        FinAbGroup::new(lattice::quotient_structure(&rows, k).0)
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> i64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0; self.rank()])
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn check_element(&self, s: &GroupElement) -> Result<()> {
        if s.coords.len() != self.rank() {
            return Err(Error::input(format!(
                "element {:?} has {} coordinates, group has {} factors",
                s.coords,
                s.coords.len(),
                self.rank()
            )));
        }
        for (&c, &d) in s.coords.iter().zip(&self.factors) {
            if !(0..d).contains(&c) {
                return Err(Error::input(format!("coordinate {c} not reduced mod {d}")));
            }
        }
        Ok(())
    }

    /// Reduces arbitrary integer coordinates into canonical form.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::input(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(GroupElement::new(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| c.rem_euclid(d))
                .collect(),
        ))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(a, -1)
    }

    /// `k * a`.
    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &d)| arith::mod_mul(x, k, d))
                .collect(),
        )
    }

    /// Least `n >= 1` with `n * s = 0`.
    pub fn elem_order(&self, s: &GroupElement) -> Result<i64> {
        self.check_element(s)?;
        Ok(self.order_of(s))
    }

    pub(crate) fn order_of(&self, s: &GroupElement) -> i64 {
        s.coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d / x.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Position of `s` in lexicographic enumeration.
    pub fn index_of(&self, s: &GroupElement) -> usize {
        s.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.factors[i] as usize;
            coords[i] = (idx % d) as i64;
            idx /= d;
        }
        GroupElement::new(coords)
    }

    pub fn check_enumerable(&self, cfg: &Config) -> Result<()> {
        if self.order() > cfg.enumeration_bound {
            return Err(Error::resource(format!(
                "group of order {} exceeds enumeration bound {}",
                self.order(),
                cfg.enumeration_bound
            )));
        }
        Ok(())
    }

    /// All elements, lexicographically.
    pub fn elements(&self, cfg: &Config) -> Result<Vec<GroupElement>> {
        self.check_enumerable(cfg)?;
        Ok(self.elements_unchecked())
    }

    pub(crate) fn elements_unchecked(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    /// Elements killed by `n`.
    pub(crate) fn torsion(&self, n: i64) -> Vec<GroupElement> {
        self.elements_unchecked()
            .into_iter()
            .filter(|s| n % self.order_of(s) == 0)
            .collect()
    }

    /// Canonical generators `e_i` of the cyclic factors.
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = 1;
                GroupElement::new(c)
            })
            .collect()
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Table of `s -> k s`, indexed like [`FinAbGroup::index_of`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerMap {
    pub k: i64,
    pub images: Vec<GroupElement>,
    pub automorphism: bool,
}

pub fn power_map(g: &FinAbGroup, k: i64, cfg: &Config) -> Result<PowerMap> {
    let images: Vec<GroupElement> = g.elements(cfg)?.iter().map(|s| g.scale(s, k)).collect();
    Ok(PowerMap {
        k,
        images,
        automorphism: k.gcd(&g.order()) == 1,
    })
}

/// Multiplicative order of `k` mod `n`; see [`arith::mult_order`].
pub fn mult_order(k: i64, n: i64) -> Result<i64> {
    arith::mult_order(k, n)
}

/// A subgroup given by its member indices (sorted) and a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    pub generators: Vec<GroupElement>,
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> i64 {
        self.members.len() as i64
    }

    pub fn contains(&self, g: &FinAbGroup, s: &GroupElement) -> bool {
        self.members.binary_search(&g.index_of(s)).is_ok()
    }

    pub fn elements(&self, g: &FinAbGroup) -> Vec<GroupElement> {
        self.members.iter().map(|&i| g.element_at(i)).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(g: &FinAbGroup, gens: &[GroupElement]) -> Self {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(g.index_of(&g.identity()));
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for h in gens {
                let y = g.add(&x, h);
                if members.insert(g.index_of(&y)) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            generators: gens.to_vec(),
            members: members.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicSubgroup {
    pub generator: GroupElement,
    pub order: i64,
}

impl CyclicSubgroup {
    pub fn new(g: &FinAbGroup, generator: GroupElement) -> Result<Self> {
        let order = g.elem_order(&generator)?;
        Ok(CyclicSubgroup { generator, order })
    }

    pub fn to_subgroup(&self, g: &FinAbGroup) -> Subgroup {
        Subgroup::generated_by(g, std::slice::from_ref(&self.generator))
    }
}

/// One entry per cyclic subgroup, with the lexicographically least generator.
pub fn cyclic_subgroups(g: &FinAbGroup, cfg: &Config) -> Result<Vec<CyclicSubgroup>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for s in g.elements(cfg)? {
        let sub = Subgroup::generated_by(g, std::slice::from_ref(&s));
        if seen.insert(sub.members) {
            out.push(CyclicSubgroup {
                order: g.order_of(&s),
                generator: s,
            });
        }
    }
    Ok(out)
}

/// Every subgroup, ordered by size then member list.
pub fn all_subgroups(g: &FinAbGroup, cfg: &Config) -> Result<Vec<Subgroup>> {
    let cyclic = cyclic_subgroups(g, cfg)?;
    let mut found: std::collections::BTreeMap<Vec<usize>, Subgroup> = Default::default();
    for c in &cyclic {
        let s = c.to_subgroup(g);
        found.insert(s.members.clone(), s);
    }
    // close under joins with cyclic subgroups
    let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            if s.members.binary_search(&g.index_of(&c.generator)).is_ok() {
                continue;
            }
            let mut gens = s.generators.clone();
            gens.push(c.generator.clone());
            let joined = Subgroup::generated_by(g, &gens);
            if !found.contains_key(&joined.members) {
                found.insert(joined.members.clone(), joined.clone());
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_values().collect();
    out.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then(a.members.cmp(&b.members)));
    Ok(out)
}

/// Structure of `C_n^k / <x>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicQuotient {
    pub invariant_factors: Vec<i64>,
    /// Whether `C_n^k / <x>` surjects onto `C_n^(k-1)`.
    pub surjects: bool,
}

pub fn quotient_by_cyclic(n: i64, k: usize, x: &GroupElement) -> Result<CyclicQuotient> {
    if n < 1 {
        return Err(Error::input(format!("n must be positive, got {n}")));
    }
    if x.coords.len() != k {
        return Err(Error::input(format!("element has {} coordinates, expected {k}", x.coords.len())));
    }
    let mut rows = vec![x.coords.clone()];
    for i in 0..k {
        let mut r = vec![0; k];
        r[i] = n;
        rows.push(r);
    }
    let (factors, _free) = lattice::quotient_structure(&rows, k);
    let divisible = factors.iter().filter(|&&d| d % n == 0).count();
    Ok(CyclicQuotient {
        surjects: divisible + 1 >= k,
        invariant_factors: factors,
    })
}

/// All divisor chains `d_1 | ... | d_k` with product `n`, each `d_i >= 2`.
pub fn abelian_groups_of_order(n: i64) -> Vec<FinAbGroup> {
    // built from the largest factor down; each new factor divides the previous
    fn extend(remaining: i64, last: i64, acc: &mut Vec<i64>, out: &mut Vec<FinAbGroup>) {
        if remaining == 1 {
            let factors: Vec<i64> = acc.iter().rev().copied().collect();
            out.push(FinAbGroup { factors });
            return;
        }
        for d in 2..=remaining.min(last) {
            if remaining % d == 0 && last % d == 0 {
                acc.push(d);
                extend(remaining / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Every abelian group of order at most `max_order` (trivial group included).
pub fn abelian_groups_up_to(max_order: i64) -> Vec<FinAbGroup> {
    (1..=max_order).flat_map(abelian_groups_of_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[i64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    fn brute_order(grp: &FinAbGroup, s: &GroupElement) -> i64 {
        let mut x = s.clone();
        let mut n = 1;
        while x != grp.identity() {
            x = grp.add(&x, s);
            n += 1;
        }
        n
    }

    #[test]
    fn validates_invariant_factors() {
        assert!(FinAbGroup::new(vec![2, 4]).is_ok());
        assert!(matches!(FinAbGroup::new(vec![4, 2]), Err(Error::Input(_))));
        assert!(matches!(FinAbGroup::new(vec![1]), Err(Error::Input(_))));
        assert_eq!(FinAbGroup::from_cyclic_orders(&[2, 3]).unwrap(), g(&[6]));
        assert_eq!(FinAbGroup::from_cyclic_orders(&[4, 2, 1]).unwrap(), g(&[2, 4]));
        assert_eq!(FinAbGroup::trivial().exponent(), 1);
        assert_eq!(g(&[2, 4]).exponent(), 4);
    }

    #[test]
    fn element_orders() {
        assert_eq!(g(&[6]).elem_order(&GroupElement::new(vec![3])).unwrap(), 2);
        assert_eq!(g(&[2, 4]).elem_order(&GroupElement::new(vec![0, 0])).unwrap(), 1);
        let c24 = g(&[2, 4]);
        let s = GroupElement::new(vec![1, 2]);
        assert_eq!(c24.elem_order(&s).unwrap(), brute_order(&c24, &s));
        assert_eq!(c24.elem_order(&s).unwrap(), 2);
        assert!(matches!(c24.elem_order(&GroupElement::new(vec![2, 0])), Err(Error::Input(_))));
        assert!(matches!(c24.elem_order(&GroupElement::new(vec![0])), Err(Error::Input(_))));
    }

    #[test]
    fn power_maps() {
        let cfg = Config::default();
        let c5 = g(&[5]);
        assert_eq!(power_map(&c5, 2, &cfg).unwrap().images[1], GroupElement::new(vec![2]));
        let c3 = g(&[3]);
        assert_eq!(power_map(&c3, -1, &cfg).unwrap().images[1], GroupElement::new(vec![2]));
        let c24 = g(&[2, 4]);
        let pm = power_map(&c24, 3, &cfg).unwrap();
        let image: BTreeSet<_> = pm.images.iter().collect();
        assert!(pm.automorphism);
        assert_eq!(image.len(), 8);
        assert!(!power_map(&c24, 2, &cfg).unwrap().automorphism);
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let cfg = Config::default();
        let count = |f: &[i64]| cyclic_subgroups(&g(f), &cfg).unwrap().len();
        assert_eq!(count(&[4]), 3);
        assert_eq!(count(&[2, 2]), 4);
        // brute force: trivial, three of order 2, <(0,1)> and <(1,1)>
        assert_eq!(count(&[2, 4]), 6);
        let c4 = cyclic_subgroups(&g(&[4]), &cfg).unwrap();
        let orders: Vec<i64> = c4.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 4, 2]);
        // lexicographically least generator of C_4 itself is 1
        assert_eq!(c4[1].generator, GroupElement::new(vec![1]));
    }

    #[test]
    fn cyclic_subgroups_bounded() {
        let cfg = Config { enumeration_bound: 10, ..Config::default() };
        assert!(matches!(cyclic_subgroups(&g(&[12]), &cfg), Err(Error::Resource(_))));
    }

    #[test]
    fn all_subgroups_of_small_groups() {
        let cfg = Config::default();
        // C_2 x C_2: 1, three of order 2, whole group
        assert_eq!(all_subgroups(&g(&[2, 2]), &cfg).unwrap().len(), 5);
        // C_2 x C_4 has 8 subgroups
        assert_eq!(all_subgroups(&g(&[2, 4]), &cfg).unwrap().len(), 8);
        // C_12 has one per divisor
        assert_eq!(all_subgroups(&g(&[12]), &cfg).unwrap().len(), 6);
        // C_2^3 has 16 subgroups
        assert_eq!(all_subgroups(&g(&[2, 2, 2]), &cfg).unwrap().len(), 16);
    }

    #[test]
    fn quotients_by_cyclic() {
        let q = quotient_by_cyclic(3, 2, &GroupElement::new(vec![1, 0])).unwrap();
        assert_eq!(q.invariant_factors, vec![3]);
        assert!(q.surjects);
        let q = quotient_by_cyclic(4, 2, &GroupElement::new(vec![1, 1])).unwrap();
        assert_eq!(q.invariant_factors, vec![4]);
        assert!(q.surjects);
        let q = quotient_by_cyclic(6, 3, &GroupElement::new(vec![0, 0, 0])).unwrap();
        assert_eq!(q.invariant_factors, vec![6, 6, 6]);
        assert!(q.surjects);
    }

    #[test]
    fn group_enumeration_counts() {
        // number of abelian groups of order n: 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(abelian_groups_of_order(24).len(), 3);
        assert_eq!(abelian_groups_of_order(64).len(), 11);
    }
}
