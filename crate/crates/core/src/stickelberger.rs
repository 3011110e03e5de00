//! Characters, the Stickelberger pairing and map, the lattice
//! `A = Theta^{-1}(ZG)`, the transpose, and the cyclotomic Galois model.
//!
//! Roots of unity never appear as complex numbers. A character is stored by
//! the exponents `v_i` with `chi(g_i) = zeta_e^{v_i}`, `e = exp(G)`, so
//! `chi(s) = zeta_e^{sum v_i s_i}` and the pairing is that exponent divided
//! by `e`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{Config, FinAbGroup, GroupElement};
use crate::homs::{DomainKind, MonomialHom};
use crate::lattice;
use crate::{IntLattice, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    /// `chi(g_i) = zeta_e^{exponents[i]}`, reduced mod `e = exp(G)`.
    pub exponents: Vec<i64>,
}

impl Character {
    pub fn trivial(g: &FinAbGroup) -> Self {
        Character {
            exponents: vec![0; g.rank()],
        }
    }

    pub fn validate(&self, g: &FinAbGroup) -> Result<()> {
        let e = g.exponent();
        if self.exponents.len() != g.rank() {
            return Err(Error::input("character has the wrong number of exponents"));
        }
        for (&v, &d) in self.exponents.iter().zip(g.invariant_factors()) {
            if !(0..e).contains(&v) || (d * v) % e != 0 {
                return Err(Error::input(format!(
                    "exponent {v} is not a {d}-th root of unity exponent mod {e}"
                )));
            }
        }
        Ok(())
    }

    /// Exponent `a` (mod `e`) with `chi(s) = zeta_e^a`.
    pub fn value_exponent(&self, g: &FinAbGroup, s: &GroupElement) -> i64 {
        let e = g.exponent();
        self.exponents
            .iter()
            .zip(&s.coords)
            .fold(0, |acc, (&v, &x)| (acc + arith::mod_mul(v, x, e)) % e)
    }

    pub fn is_trivial_on(&self, g: &FinAbGroup, s: &GroupElement) -> bool {
        self.value_exponent(g, s) == 0
    }

    /// `chi^k`.
    pub fn pow(&self, g: &FinAbGroup, k: i64) -> Character {
        let e = g.exponent();
        Character {
            exponents: self.exponents.iter().map(|&v| arith::mod_mul(v, k, e)).collect(),
        }
    }

    pub fn mul(&self, g: &FinAbGroup, other: &Character) -> Character {
        let e = g.exponent();
        Character {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| (a + b) % e)
                .collect(),
        }
    }

    pub fn inverse(&self, g: &FinAbGroup) -> Character {
        self.pow(g, -1)
    }

    /// Order of the character in the dual group.
    pub fn order(&self, g: &FinAbGroup) -> i64 {
        let e = g.exponent();
        self.exponents
            .iter()
            .map(|&v| e / v.gcd(&e))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Position in the canonical (lexicographic) listing of the dual group.
    pub fn index(&self, g: &FinAbGroup) -> usize {
        let e = g.exponent();
        let dual_coords: Vec<i64> = self
            .exponents
            .iter()
            .zip(g.invariant_factors())
            .map(|(&v, &d)| v / (e / d))
            .collect();
        g.index_of(&GroupElement::new(dual_coords))
    }
}

/// All `|G|` characters, trivial first, lexicographic in their exponents.
pub fn character_group(g: &FinAbGroup, cfg: &Config) -> Result<Vec<Character>> {
    let e = g.exponent();
    Ok(g.elements(cfg)?
        .into_iter()
        .map(|j| Character {
            exponents: j
                .coords
                .iter()
                .zip(g.invariant_factors())
                .map(|(&x, &d)| x * (e / d))
                .collect(),
        })
        .collect())
}

/// `<chi, s>`, the rational `a/|s|` in `[0, 1)` with `chi(s) = zeta_{|s|}^a`.
pub fn pairing(g: &FinAbGroup, chi: &Character, s: &GroupElement) -> Rational {
    Rational::new(chi.value_exponent(g, s), g.exponent())
}

/// A rational vector indexed by the elements of `G` or of its dual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalGroupVector {
    pub coefficients: Vec<Rational>,
}

impl RationalGroupVector {
    pub fn zero(len: usize) -> Self {
        RationalGroupVector {
            coefficients: vec![Rational::zero(); len],
        }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        RationalGroupVector {
            coefficients: v.iter().map(|&x| Rational::from_integer(x)).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }
}

/// Precomputed pairing data for one group.
///
/// `table[chi][s] = e * <chi, s>`, an integer in `[0, e)`.
#[derive(Clone, Debug)]
pub struct Stickelberger {
    group: FinAbGroup,
    characters: Vec<Character>,
    elements: Vec<GroupElement>,
    table: Vec<Vec<i64>>,
    a_hat: IntLattice,
}

impl Stickelberger {
    pub fn new(g: &FinAbGroup, cfg: &Config) -> Result<Self> {
        let characters = character_group(g, cfg)?;
        let elements = g.elements(cfg)?;
        let table: Vec<Vec<i64>> = characters
            .iter()
            .map(|chi| elements.iter().map(|s| chi.value_exponent(g, s)).collect())
            .collect();
        let a_hat = a_hat_from_table(&table, g.exponent());
        Ok(Stickelberger {
            group: g.clone(),
            characters,
            elements,
            table,
            a_hat,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn exponent(&self) -> i64 {
        self.group.exponent()
    }

    /// `e * <chi_i, s_j>`.
    pub fn pairing_numerator(&self, chi: usize, s: usize) -> i64 {
        self.table[chi][s]
    }

    pub fn pairing_at(&self, chi: usize, s: usize) -> Rational {
        Rational::new(self.table[chi][s], self.exponent())
    }

    pub fn a_hat(&self) -> &IntLattice {
        &self.a_hat
    }

    /// `Theta(psi) = sum_s <psi, s> s`.
    pub fn theta(&self, psi: &RationalGroupVector) -> Result<RationalGroupVector> {
        if psi.coefficients.len() != self.characters.len() {
            return Err(Error::input("vector is not indexed by the character group"));
        }
        let e = self.exponent();
        let coefficients = (0..self.elements.len())
            .map(|s| {
                psi.coefficients
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (chi, c)| {
                        acc + c * Rational::new(self.table[chi][s], e)
                    })
            })
            .collect();
        Ok(RationalGroupVector { coefficients })
    }

    /// Whether `Theta(psi)` is integral, evaluated directly.
    pub fn in_a_hat(&self, psi: &[i64]) -> bool {
        let e = self.exponent() as i128;
        (0..self.elements.len()).all(|s| {
            let total: i128 = psi
                .iter()
                .enumerate()
                .map(|(chi, &x)| x as i128 * self.table[chi][s] as i128)
                .sum();
            total % e == 0
        })
    }

    /// `Theta^t(g)(psi) = sum_s g(s) <psi, s>` for `psi` in `A`.
    pub fn theta_transpose(&self, g: &MonomialHom, psi: &[i64]) -> Result<i64> {
        if g.domain_kind != DomainKind::GroupElements || g.exponents.len() != self.elements.len() {
            return Err(Error::input("theta transpose needs a hom on G(-1)"));
        }
        if psi.len() != self.characters.len() {
            return Err(Error::input("psi is not indexed by the character group"));
        }
        if !self.in_a_hat(psi) {
            return Err(Error::domain(format!("{psi:?} is not in A_hat")));
        }
        let e = self.exponent() as i128;
        let mut total: i128 = 0;
        for (s, &gs) in g.exponents.iter().enumerate() {
            if gs == 0 {
                continue;
            }
            let pair: i128 = psi
                .iter()
                .enumerate()
                .map(|(chi, &x)| x as i128 * self.table[chi][s] as i128)
                .sum();
            total += gs as i128 * pair;
        }
        // each inner pairing sum is already divisible by e
        debug_assert_eq!(total % e, 0);
        i64::try_from(total / e).map_err(|_| Error::resource("transpose exponent overflows i64"))
    }
}

fn a_hat_from_table(table: &[Vec<i64>], e: i64) -> IntLattice {
    let n = table.len();
    let cols = table.first().map_or(0, Vec::len);
    // psi * M + e * lambda = 0
    let mut rows: Vec<Vec<i64>> = table.to_vec();
    for s in 0..cols {
        let mut r = vec![0; cols];
        r[s] = e;
        rows.push(r);
    }
    let kernel = lattice::left_kernel_exact(&rows, cols);
    let projected: Vec<Vec<i64>> = kernel.iter().map(|r| r[..n].to_vec()).collect();
    IntLattice::from_generators(n, &projected)
}

/// `A = Theta^{-1}(ZG)` with its Hermite basis.
pub fn a_hat_lattice(g: &FinAbGroup, cfg: &Config) -> Result<IntLattice> {
    Ok(Stickelberger::new(g, cfg)?.a_hat)
}

/// Image of the Galois group in `(Z/mZ)^x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisModel {
    pub modulus: i64,
    pub generators: Vec<i64>,
    /// Closure of the generators, ascending residues in `[0, modulus)`.
    pub elements: Vec<i64>,
}

impl GaloisModel {
    pub fn new(modulus: i64, generators: &[i64]) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::input(format!("modulus must be positive, got {modulus}")));
        }
        let mut gens = Vec::new();
        for &d in generators {
            if d.gcd(&modulus) != 1 && modulus != 1 {
                return Err(Error::input(format!("{d} is not a unit mod {modulus}")));
            }
            gens.push(d.rem_euclid(modulus));
        }
        let one = 1 % modulus;
        let mut seen = BTreeSet::from([one]);
        let mut frontier = vec![one];
        while let Some(x) = frontier.pop() {
            for &d in &gens {
                let y = arith::mod_mul(x, d, modulus);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(GaloisModel {
            modulus,
            generators: gens,
            elements: seen.into_iter().collect(),
        })
    }

    pub fn trivial(modulus: i64) -> Result<Self> {
        GaloisModel::new(modulus, &[])
    }

    /// All of `(Z/mZ)^x`.
    pub fn full(modulus: i64) -> Result<Self> {
        GaloisModel::new(modulus, &arith::units_mod(modulus))
    }

    pub fn order(&self) -> i64 {
        self.elements.len() as i64
    }

    pub fn contains(&self, d: i64) -> bool {
        self.elements.binary_search(&d.rem_euclid(self.modulus)).is_ok()
    }

    /// Full preimage of this subgroup in `(Z/MZ)^x` for a multiple `M` of the modulus.
    pub fn lift(&self, modulus: i64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::input(format!(
                "{modulus} is not a multiple of {}",
                self.modulus
            )));
        }
        let gens: Vec<i64> = arith::units_mod(modulus)
            .into_iter()
            .filter(|&d| self.contains(d))
            .collect();
        GaloisModel::new(modulus, &gens)
    }

    /// Every subgroup of `(Z/mZ)^x`.
    pub fn all_subgroups(modulus: i64) -> Result<Vec<GaloisModel>> {
        let units = arith::units_mod(modulus);
        let mut found: std::collections::BTreeMap<Vec<i64>, GaloisModel> = Default::default();
        let trivial = GaloisModel::trivial(modulus)?;
        found.insert(trivial.elements.clone(), trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(d) = frontier.pop() {
            for &u in &units {
                if d.contains(u) {
                    continue;
                }
                let mut gens = d.generators.clone();
                gens.push(u);
                let joined = GaloisModel::new(modulus, &gens)?;
                if !found.contains_key(&joined.elements) {
                    found.insert(joined.elements.clone(), joined.clone());
                    frontier.push(joined);
                }
            }
        }
        Ok(found.into_values().collect())
    }
}

/// Whether the exponents of `h` are constant on the orbits of the model.
///
/// The model acts on characters by `chi -> chi^d` and on `G(-1)` by
/// `s -> d s`. A model over a modulus other than `exp(G)` is first lifted to
/// `lcm(modulus, exp(G))`.
pub fn is_equivariant(st: &Stickelberger, h: &MonomialHom, model: &GaloisModel) -> Result<bool> {
    let g = st.group();
    let e = g.exponent();
    let size = st.elements().len();
    if h.exponents.len() != size {
        return Err(Error::input("hom is not indexed by the full domain"));
    }
    let lifted = model.lift(model.modulus.lcm(&e))?;
    for idx in 0..size {
        for &d in &lifted.elements {
            let image = match h.domain_kind {
                DomainKind::Characters => st.characters()[idx].pow(g, d).index(g),
                DomainKind::GroupElements => g.index_of(&g.scale(&st.elements()[idx], d)),
            };
            if h.exponents[image] != h.exponents[idx] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `d_n` of a model over `n`: `|D|/2` when inversion is a nontrivial
/// element of `D`, else `|D|`.
///
/// For `n <= 2` inversion is the identity and the value is `|D| = 1`.
pub fn d_n_of_model(model: &GaloisModel) -> i64 {
    let n = model.modulus;
    let minus_one = (n - 1).rem_euclid(n);
    if n > 2 && model.contains(minus_one) {
        model.order() / 2
    } else {
        model.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[i64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn character_groups() {
        let c3 = character_group(&g(&[3]), &cfg()).unwrap();
        let exps: Vec<i64> = c3.iter().map(|c| c.exponents[0]).collect();
        assert_eq!(exps, vec![0, 1, 2]);
        assert_eq!(character_group(&g(&[2, 2]), &cfg()).unwrap().len(), 4);
        let grp = g(&[6]);
        let c6 = character_group(&grp, &cfg()).unwrap();
        assert_eq!(c6.len(), 6);
        let of_order_2 = c6.iter().find(|c| c.order(&grp) == 2).unwrap();
        let of_order_3 = c6.iter().find(|c| c.order(&grp) == 3).unwrap();
        assert_eq!(of_order_2.mul(&grp, of_order_3).order(&grp), 6);
        for (i, chi) in c6.iter().enumerate() {
            assert_eq!(chi.index(&grp), i);
            chi.validate(&grp).unwrap();
        }
    }

    #[test]
    fn character_validation() {
        let grp = g(&[2, 4]);
        assert!(Character { exponents: vec![2, 1] }.validate(&grp).is_ok());
        assert!(Character { exponents: vec![1, 1] }.validate(&grp).is_err());
    }

    #[test]
    fn pairing_examples() {
        let c3 = g(&[3]);
        let chi = Character { exponents: vec![1] };
        assert_eq!(pairing(&c3, &chi, &GroupElement::new(vec![1])), q(1, 3));
        assert_eq!(pairing(&c3, &Character::trivial(&c3), &GroupElement::new(vec![2])), q(0, 1));
        let c6 = g(&[6]);
        assert_eq!(
            pairing(&c6, &Character { exponents: vec![1] }, &GroupElement::new(vec![3])),
            q(1, 2)
        );
    }

    #[test]
    fn theta_examples() {
        let st = Stickelberger::new(&g(&[3]), &cfg()).unwrap();
        let chi = RationalGroupVector::from_integers(&[0, 1, 0]);
        assert_eq!(st.theta(&chi).unwrap().coefficients, vec![q(0, 1), q(1, 3), q(2, 3)]);
        let triv = RationalGroupVector::from_integers(&[1, 0, 0]);
        assert_eq!(st.theta(&triv).unwrap(), RationalGroupVector::zero(3));
        let both = RationalGroupVector::from_integers(&[0, 1, 1]);
        assert_eq!(st.theta(&both).unwrap().coefficients, vec![q(0, 1), q(1, 1), q(1, 1)]);
    }

    #[test]
    fn a_hat_small_cases() {
        let l3 = a_hat_lattice(&g(&[3]), &cfg()).unwrap();
        assert_eq!(l3.index(), Some(3));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(l3.contains(&[a, b, c]), (b + 2 * c) % 3 == 0);
                }
            }
        }
        let l2 = a_hat_lattice(&g(&[2]), &cfg()).unwrap();
        assert_eq!(l2.index(), Some(2));
        assert!(l2.contains(&[1, 2]));
        assert!(!l2.contains(&[0, 1]));
        let l1 = a_hat_lattice(&FinAbGroup::trivial(), &cfg()).unwrap();
        assert_eq!(l1.index(), Some(1));
    }

    fn hom(kind: DomainKind, exps: Vec<i64>) -> MonomialHom {
        MonomialHom {
            domain_kind: kind,
            base_tag: "x".into(),
            exponents: exps,
        }
    }

    #[test]
    fn theta_transpose_examples() {
        let st = Stickelberger::new(&g(&[3]), &cfg()).unwrap();
        let gt = hom(DomainKind::GroupElements, vec![0, 2, -1]);
        assert_eq!(st.theta_transpose(&gt, &[0, 3, 0]).unwrap(), 0);
        let zero = hom(DomainKind::GroupElements, vec![0, 0, 0]);
        for psi in st.a_hat().basis() {
            assert_eq!(st.theta_transpose(&zero, psi).unwrap(), 0);
        }
        assert!(matches!(st.theta_transpose(&gt, &[0, 1, 0]), Err(Error::Domain(_))));

        let st2 = Stickelberger::new(&g(&[2]), &cfg()).unwrap();
        let g2 = hom(DomainKind::GroupElements, vec![0, 2]);
        assert_eq!(st2.theta_transpose(&g2, &[0, 2]).unwrap(), 2);
    }

    #[test]
    fn equivariance_examples() {
        let st = Stickelberger::new(&g(&[5]), &cfg()).unwrap();
        let at_t = hom(DomainKind::GroupElements, vec![0, 1, 0, 0, 0]);
        assert!(is_equivariant(&st, &at_t, &GaloisModel::trivial(5).unwrap()).unwrap());
        assert!(!is_equivariant(&st, &at_t, &GaloisModel::full(5).unwrap()).unwrap());
        let pm = hom(DomainKind::GroupElements, vec![0, 1, 0, 0, 1]);
        assert!(is_equivariant(&st, &pm, &GaloisModel::new(5, &[4]).unwrap()).unwrap());
    }

    #[test]
    fn d_n_examples() {
        assert_eq!(d_n_of_model(&GaloisModel::full(5).unwrap()), 2);
        assert_eq!(d_n_of_model(&GaloisModel::trivial(5).unwrap()), 1);
        assert_eq!(d_n_of_model(&GaloisModel::full(7).unwrap()), 3);
        assert_eq!(d_n_of_model(&GaloisModel::full(2).unwrap()), 1);
    }

    #[test]
    fn unit_group_subgroups() {
        // (Z/8)^x = C2 x C2 has 5 subgroups, (Z/7)^x = C6 has 4
        assert_eq!(GaloisModel::all_subgroups(8).unwrap().len(), 5);
        assert_eq!(GaloisModel::all_subgroups(7).unwrap().len(), 4);
        assert_eq!(GaloisModel::all_subgroups(1).unwrap().len(), 1);
        let lifted = GaloisModel::new(3, &[1]).unwrap().lift(12).unwrap();
        assert_eq!(lifted.elements, vec![1, 7]);
    }
}
