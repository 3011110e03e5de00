//! Swan ideals `(r, Sigma_H)` in `ZG`, local generators, and the fiber
//! product description `(ZG)(eta)` with its map onto the ideal.

use std::ops::{Add, Mul, Sub};

use num_integer::Integer;
use num_traits::{Num, One};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{Config, FinAbGroup, GroupElement, Subgroup};
use crate::stickelberger::Stickelberger;
use crate::{IntGroupRingElement, IntLattice, RatGroupRingElement, Rational};

/// An element of `TG`, coefficients indexed like the group's element list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingElement<T> {
    pub coefficients: Vec<T>,
}

impl<T: Num + Clone> GroupRingElement<T> {
    pub fn zero(g: &FinAbGroup) -> Self {
        GroupRingElement {
            coefficients: vec![T::zero(); g.order() as usize],
        }
    }

    /// The group element `s` itself.
    pub fn basis(g: &FinAbGroup, s: &GroupElement) -> Self {
        let mut out = Self::zero(g);
        out.coefficients[g.index_of(s)] = T::one();
        out
    }

    pub fn one(g: &FinAbGroup) -> Self {
        Self::basis(g, &g.identity())
    }

    pub fn scalar(g: &FinAbGroup, a: T) -> Self {
        let mut out = Self::zero(g);
        out.coefficients[g.index_of(&g.identity())] = a;
        out
    }

    /// `Sigma_H`.
    pub fn trace(g: &FinAbGroup, h: &Subgroup) -> Self {
        let mut out = Self::zero(g);
        for &i in &h.members {
            out.coefficients[i] = T::one();
        }
        out
    }

    pub fn scale(&self, a: &T) -> Self {
        GroupRingElement {
            coefficients: self.coefficients.iter().map(|c| c.clone() * a.clone()).collect(),
        }
    }

    /// `self * s`.
    pub fn shift(&self, g: &FinAbGroup, s: &GroupElement) -> Self {
        let mut out = Self::zero(g);
        for (i, c) in self.coefficients.iter().enumerate() {
            let j = g.index_of(&g.add(&g.element_at(i), s));
            out.coefficients[j] = c.clone();
        }
        out
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> GroupRingElement<U> {
        GroupRingElement {
            coefficients: self.coefficients.iter().map(f).collect(),
        }
    }
}

impl<T: Num + Clone> Add for &GroupRingElement<T> {
    type Output = GroupRingElement<T>;

    fn add(self, other: Self) -> GroupRingElement<T> {
        GroupRingElement {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Num + Clone> Sub for &GroupRingElement<T> {
    type Output = GroupRingElement<T>;

    fn sub(self, other: Self) -> GroupRingElement<T> {
        GroupRingElement {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

/// Convolution product in `TG`.
pub fn group_ring_mul<T>(g: &FinAbGroup, a: &GroupRingElement<T>, b: &GroupRingElement<T>) -> Result<GroupRingElement<T>>
where
    T: Num + Clone,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let n = g.order() as usize;
    if a.coefficients.len() != n || b.coefficients.len() != n {
        return Err(Error::input("group ring elements are not indexed by G"));
    }
    let elements = g.elements_unchecked();
    let mut out = GroupRingElement::<T>::zero(g);
    for (i, x) in a.coefficients.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coefficients.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = g.index_of(&g.add(&elements[i], &elements[j]));
            out.coefficients[k] = out.coefficients[k].clone() + x * y;
        }
    }
    Ok(out)
}

fn check_r(h: &Subgroup, r: i64) -> Result<()> {
    if r == 0 || r.gcd(&h.order()) != 1 {
        return Err(Error::domain(format!("gcd({r}, |H| = {}) != 1", h.order())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwanIdeal {
    pub group: FinAbGroup,
    pub subgroup_gen: Vec<GroupElement>,
    pub subgroup_order: i64,
    pub r: i64,
    pub lattice: IntLattice,
    pub index: i64,
}

/// `(r, Sigma_H) = ZG r + ZG Sigma_H`.
pub fn swan_ideal(g: &FinAbGroup, h: &Subgroup, r: i64, cfg: &Config) -> Result<SwanIdeal> {
    check_r(h, r)?;
    let elements = g.elements(cfg)?;
    let n = elements.len();
    let sigma = IntGroupRingElement::trace(g, h);
    let mut gens = Vec::with_capacity(2 * n);
    for s in &elements {
        gens.push(IntGroupRingElement::basis(g, s).scale(&r).coefficients);
        gens.push(sigma.shift(g, s).coefficients);
    }
    let lattice = IntLattice::from_generators_exact(n, &gens);
    let index = lattice.index().expect("r ZG has full rank");
    Ok(SwanIdeal {
        group: g.clone(),
        subgroup_gen: h.generators.clone(),
        subgroup_order: h.order(),
        r,
        lattice,
        index,
    })
}

/// `c = r + (1 - r) |H|^{-1} Sigma_H` with coefficients reduced into `[0, p^N)`.
pub fn local_generator(g: &FinAbGroup, h: &Subgroup, r: i64, p: i64, precision: u32) -> Result<IntGroupRingElement> {
    if !arith::is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if r % p != 0 {
        return Err(Error::domain(format!("{p} does not divide r = {r}")));
    }
    if h.order() % p == 0 {
        return Err(Error::domain(format!("{p} divides |H| = {}", h.order())));
    }
    let modulus = p
        .checked_pow(precision)
        .ok_or_else(|| Error::resource(format!("{p}^{precision} overflows i64")))?;
    let inv = arith::mod_inv(h.order(), modulus).expect("|H| is a unit mod p^N");
    let coeff = arith::mod_mul(1 - r, inv, modulus);
    let c = &IntGroupRingElement::scalar(g, r) + &IntGroupRingElement::trace(g, h).scale(&coeff);
    Ok(c.map(|x| x.rem_euclid(modulus)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub p: i64,
    #[serde(rename = "N")]
    pub n: u32,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocallyFreeCertificate {
    pub index: i64,
    pub per_prime: Vec<PrimeCheck>,
    /// Every prime factor of the index divides `r`.
    pub index_primes_divide_r: bool,
    /// `r = (1 + (r-1)/|H| Sigma_H) c` and `Sigma_H = Sigma_H c` over `QG`.
    pub identities_pass: bool,
    pub pass: bool,
}

/// Smallest `N` with `p^N > bound`.
fn precision_above(p: i64, bound: i64) -> u32 {
    let mut n = 1;
    let mut q = p;
    while q <= bound {
        q *= p;
        n += 1;
    }
    n
}

fn full_plus(gens: &[Vec<i64>], n: usize, m: i64) -> IntLattice {
    let mut all = gens.to_vec();
    for i in 0..n {
        let mut row = vec![0; n];
        row[i] = m;
        all.push(row);
    }
    IntLattice::from_generators_exact(n, &all)
}

fn rational_identities(g: &FinAbGroup, h: &Subgroup, r: i64) -> Result<bool> {
    let order = Rational::from_integer(h.order());
    let sigma = RatGroupRingElement::trace(g, h);
    let rq = Rational::from_integer(r);
    let one = RatGroupRingElement::one(g);
    let c = &RatGroupRingElement::scalar(g, rq) + &sigma.scale(&((Rational::one() - rq) / order));
    let u = &one + &sigma.scale(&((rq - Rational::one()) / order));
    let r_ok = group_ring_mul(g, &u, &c)? == RatGroupRingElement::scalar(g, rq);
    let sigma_ok = group_ring_mul(g, &sigma, &c)? == sigma;
    Ok(r_ok && sigma_ok)
}

/// Local freeness of `(r, Sigma_H)`: at each prime `p | r` the ideal agrees
/// with `ZG c` modulo `p^N` for `p^N` above the index.
pub fn verify_locally_free(g: &FinAbGroup, h: &Subgroup, r: i64, cfg: &Config) -> Result<LocallyFreeCertificate> {
    let ideal = swan_ideal(g, h, r, cfg)?;
    let elements = g.elements(cfg)?;
    let n = elements.len();
    let mut per_prime = Vec::new();
    for p in arith::prime_divisors(r) {
        let precision = precision_above(p, ideal.index);
        let modulus = p.pow(precision);
        let c = local_generator(g, h, r, p, precision)?;
        let translates: Vec<Vec<i64>> = elements.iter().map(|s| c.shift(g, s).coefficients).collect();
        let local = full_plus(&translates, n, modulus);
        let target = full_plus(ideal.lattice.basis(), n, modulus);
        per_prime.push(PrimeCheck {
            p,
            n: precision,
            pass: local == target,
        });
    }
    let index_primes_divide_r = arith::prime_divisors(ideal.index).iter().all(|p| r % p == 0);
    let identities_pass = rational_identities(g, h, r)?;
    let pass = index_primes_divide_r && identities_pass && per_prime.iter().all(|c| c.pass);
    Ok(LocallyFreeCertificate {
        index: ideal.index,
        per_prime,
        index_primes_divide_r,
        identities_pass,
        pass,
    })
}

/// The fiber product `(ZG)(eta)`, `eta = r` in `(Z/|H|)Q`, in coordinates
/// `(x, y)`: `x` over the cosets of `H` and `y` over the non-representative
/// elements, which form a basis of `ZG / (Sigma_H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberModule {
    pub group: FinAbGroup,
    pub r: i64,
    pub subgroup_order: i64,
    /// Element index of each coset representative (the least element).
    pub reps: Vec<usize>,
    /// Coset number of every element.
    pub coset_of: Vec<usize>,
    /// Element indices spanning the `y` coordinates, ascending.
    pub non_reps: Vec<usize>,
    pub eta: i64,
    /// Rows `(x | y)` of a basis.
    pub basis: Vec<Vec<i64>>,
}

pub fn fiber_module(g: &FinAbGroup, h: &Subgroup, r: i64, cfg: &Config) -> Result<FiberModule> {
    check_r(h, r)?;
    let elements = g.elements(cfg)?;
    let n = elements.len();
    let order = h.order();
    let subgroup = h.elements(g);
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut non_reps = Vec::new();
    for (i, s) in elements.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            non_reps.push(i);
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for t in &subgroup {
            coset_of[g.index_of(&g.add(s, t))] = c;
        }
    }
    let q = reps.len();
    let width = q + non_reps.len();
    let mut basis = Vec::with_capacity(n);
    for (k, &u) in non_reps.iter().enumerate() {
        let mut row = vec![0; width];
        row[coset_of[u]] = r;
        row[q + k] = 1;
        basis.push(row);
    }
    for i in 0..q {
        let mut row = vec![0; width];
        row[i] = order;
        basis.push(row);
    }
    Ok(FiberModule {
        group: g.clone(),
        r,
        subgroup_order: order,
        reps,
        coset_of,
        non_reps,
        eta: r.rem_euclid(order),
        basis,
    })
}

impl FiberModule {
    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    /// Lift of `y` to `ZG`, supported on the non-representatives.
    pub fn lift(&self, y: &[i64]) -> IntGroupRingElement {
        let mut out = IntGroupRingElement::zero(&self.group);
        for (&u, &c) in self.non_reps.iter().zip(y) {
            out.coefficients[u] = c;
        }
        out
    }

    /// Coordinates of the image of `a` in `ZG / (Sigma_H)`.
    pub fn gamma_coords(&self, a: &IntGroupRingElement) -> Vec<i64> {
        // rep = -(rest of its coset) modulo Sigma_H
        let mut y: Vec<i64> = self.non_reps.iter().map(|&u| a.coefficients[u]).collect();
        for (k, &u) in self.non_reps.iter().enumerate() {
            let rep = self.reps[self.coset_of[u]];
            y[k] -= a.coefficients[rep];
        }
        y
    }

    /// Coset augmentation `ZG -> ZQ`.
    pub fn augment(&self, a: &IntGroupRingElement) -> Vec<i64> {
        let mut x = vec![0; self.coset_count()];
        for (i, &c) in a.coefficients.iter().enumerate() {
            x[self.coset_of[i]] += c;
        }
        x
    }

    pub fn in_fiber(&self, x: &[i64], y: &[i64]) -> bool {
        let e = self.augment(&self.lift(y));
        let h = self.subgroup_order;
        x.iter().zip(&e).all(|(&xi, &ei)| (xi - ei * self.eta).rem_euclid(h) == 0)
    }

    /// `phi(x, y) = y~ r + sum_i ((x_i - y~_i r) / |H|) s_i Sigma_H`.
    pub fn phi(&self, x: &[i64], y: &[i64]) -> Result<IntGroupRingElement> {
        let q = self.coset_count();
        if x.len() != q || y.len() != self.non_reps.len() {
            return Err(Error::input("fiber coordinates have the wrong length"));
        }
        let lifted = self.lift(y);
        let e = self.augment(&lifted);
        let h = self.subgroup_order;
        let mut out = lifted.scale(&self.r);
        for i in 0..q {
            let num = x[i] - e[i] * self.r;
            if num % h != 0 {
                return Err(Error::domain(format!(
                    "coset {i}: {num} is not divisible by |H| = {h}"
                )));
            }
            let coeff = num / h;
            for (j, &c) in self.coset_of.iter().enumerate() {
                if c == i {
                    out.coefficients[j] += coeff;
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCertificate {
    pub integrality: bool,
    pub image_matches_ideal: bool,
    pub injective: bool,
    /// `phi(rH, 1) = r` and `phi(|H| H, Sigma_H) = Sigma_H`.
    pub witnesses: bool,
    pub pass: bool,
}

pub fn phi_certificate(g: &FinAbGroup, h: &Subgroup, r: i64, cfg: &Config) -> Result<PhiCertificate> {
    let fm = fiber_module(g, h, r, cfg)?;
    let ideal = swan_ideal(g, h, r, cfg)?;
    let q = fm.coset_count();
    let n = g.order() as usize;
    let mut images = Vec::with_capacity(n);
    let mut integrality = true;
    for row in &fm.basis {
        let (x, y) = row.split_at(q);
        debug_assert!(fm.in_fiber(x, y));
        match fm.phi(x, y) {
            Ok(v) => images.push(v.coefficients),
            Err(Error::Domain(_)) => integrality = false,
            Err(e) => return Err(e),
        }
    }
    let (image_matches_ideal, injective) = if integrality {
        let image = IntLattice::from_generators_exact(n, &images);
        (image == ideal.lattice, image.rank() == n)
    } else {
        (false, false)
    };

    let identity_coset = fm.coset_of[g.index_of(&g.identity())];
    let one = IntGroupRingElement::one(g);
    let sigma = IntGroupRingElement::trace(g, h);
    let mut x_r = vec![0; q];
    x_r[identity_coset] = r;
    let mut x_h = vec![0; q];
    x_h[identity_coset] = h.order();
    let w1 = fm.in_fiber(&x_r, &fm.gamma_coords(&one))
        && fm.phi(&x_r, &fm.gamma_coords(&one))? == IntGroupRingElement::scalar(g, r);
    let w2 = fm.in_fiber(&x_h, &fm.gamma_coords(&sigma)) && fm.phi(&x_h, &fm.gamma_coords(&sigma))? == sigma;
    let witnesses = w1 && w2;
    Ok(PhiCertificate {
        integrality,
        image_matches_ideal,
        injective,
        witnesses,
        pass: integrality && image_matches_ideal && injective && witnesses,
    })
}

/// The exponents of `c_{H,r}` are fixed by `chi -> chi^k` for every `k`
/// prime to `|G|`.
pub fn psi_invariance_check(g: &FinAbGroup, h: &Subgroup, r: i64, cfg: &Config) -> Result<bool> {
    check_r(h, r)?;
    let st = Stickelberger::new(g, cfg)?;
    let exps: Vec<bool> = st
        .characters()
        .iter()
        .map(|chi| h.generators.iter().any(|t| !chi.is_trivial_on(g, t)))
        .collect();
    for k in arith::units_mod(g.order()) {
        for (i, chi) in st.characters().iter().enumerate() {
            if exps[chi.pow(g, k).index(g)] != exps[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwanCertificate {
    pub group: FinAbGroup,
    pub subgroup_gen: Vec<GroupElement>,
    pub r: i64,
    pub index: i64,
    pub per_prime: Vec<PrimeCheck>,
    pub locally_free_pass: bool,
    pub phi_pass: bool,
    pub psi_invariant: bool,
    pub pass: bool,
}

/// Both certificates for one `(G, H, r)`.
pub fn swan_certificate(g: &FinAbGroup, h: &Subgroup, r: i64, cfg: &Config) -> Result<SwanCertificate> {
    let lf = verify_locally_free(g, h, r, cfg)?;
    let phi = phi_certificate(g, h, r, cfg)?;
    let psi_invariant = psi_invariance_check(g, h, r, cfg)?;
    Ok(SwanCertificate {
        group: g.clone(),
        subgroup_gen: h.generators.clone(),
        r,
        index: lf.index,
        per_prime: lf.per_prime,
        locally_free_pass: lf.pass,
        phi_pass: phi.pass,
        psi_invariant,
        pass: lf.pass && phi.pass && psi_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[i64]) -> FinAbGroup {
        FinAbGroup::new(f.to_vec()).unwrap()
    }

    fn sub(g: &FinAbGroup, gens: &[&[i64]]) -> Subgroup {
        let gens: Vec<GroupElement> = gens.iter().map(|c| GroupElement::new(c.to_vec())).collect();
        Subgroup::generated_by(g, &gens)
    }

    fn cfg() -> Config {
        Config::default()
    }

    fn int(v: &[i64]) -> IntGroupRingElement {
        GroupRingElement { coefficients: v.to_vec() }
    }

    #[test]
    fn multiplication_examples() {
        let c2 = grp(&[2]);
        let a = int(&[2, -1]);
        assert_eq!(group_ring_mul(&c2, &a, &a).unwrap(), int(&[5, -4]));
        let g = grp(&[2, 4]);
        let h = sub(&g, &[&[0, 2]]);
        let sigma = IntGroupRingElement::trace(&g, &h);
        assert_eq!(group_ring_mul(&g, &sigma, &sigma).unwrap(), sigma.scale(&2));
        let x = GroupRingElement {
            coefficients: (0..8).collect::<Vec<i64>>(),
        };
        assert_eq!(group_ring_mul(&g, &IntGroupRingElement::one(&g), &x).unwrap(), x);
    }

    #[test]
    fn swan_ideal_examples() {
        let c2 = grp(&[2]);
        let h = sub(&c2, &[&[1]]);
        let ideal = swan_ideal(&c2, &h, 3, &cfg()).unwrap();
        assert_eq!(ideal.lattice.basis(), &[vec![1, 1], vec![0, 3]]);
        assert_eq!(ideal.index, 3);
        assert_eq!(swan_ideal(&c2, &h, 1, &cfg()).unwrap().index, 1);
        let c3 = grp(&[3]);
        assert_eq!(swan_ideal(&c3, &sub(&c3, &[&[1]]), 2, &cfg()).unwrap().index, 4);
        assert!(matches!(swan_ideal(&c2, &h, 2, &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn local_generator_examples() {
        let c2 = grp(&[2]);
        let h = sub(&c2, &[&[1]]);
        let c = local_generator(&c2, &h, 3, 3, 2).unwrap();
        assert_eq!(c, int(&[2, 8]));
        let triv = sub(&c2, &[]);
        assert_eq!(local_generator(&c2, &triv, 3, 3, 2).unwrap(), int(&[1, 0]));
        let c3 = grp(&[3]);
        let c = local_generator(&c3, &sub(&c3, &[&[1]]), 2, 2, 4).unwrap();
        assert_eq!(c, int(&[7, 5, 5]));
        assert!(matches!(local_generator(&c2, &h, 3, 5, 2), Err(Error::Domain(_))));
        assert!(matches!(local_generator(&c3, &sub(&c3, &[&[1]]), 3, 3, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn locally_free_examples() {
        let c2 = grp(&[2]);
        let h = sub(&c2, &[&[1]]);
        let cert = verify_locally_free(&c2, &h, 3, &cfg()).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.per_prime, vec![PrimeCheck { p: 3, n: 2, pass: true }]);
        // over Z the ideal is already ZG (2 - s)
        let ideal = swan_ideal(&c2, &h, 3, &cfg()).unwrap();
        let span = IntLattice::from_generators(2, &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(span, ideal.lattice);
        assert!(verify_locally_free(&c2, &h, 1, &cfg()).unwrap().pass);
        let c6 = grp(&[6]);
        assert!(verify_locally_free(&c6, &sub(&c6, &[&[2]]), 5, &cfg()).unwrap().pass);
    }

    #[test]
    fn phi_examples() {
        let c2 = grp(&[2]);
        let h = sub(&c2, &[&[1]]);
        assert!(phi_certificate(&c2, &h, 3, &cfg()).unwrap().pass);
        assert!(phi_certificate(&c2, &h, 1, &cfg()).unwrap().pass);
        let c6 = grp(&[6]);
        let cert = phi_certificate(&c6, &sub(&c6, &[&[3]]), 5, &cfg()).unwrap();
        assert!(cert.pass, "{cert:?}");
        let fm = fiber_module(&c6, &sub(&c6, &[&[3]]), 5, &cfg()).unwrap();
        assert_eq!(fm.reps, vec![0, 1, 2]);
        assert_eq!(fm.non_reps, vec![3, 4, 5]);
    }

    #[test]
    fn psi_invariance_examples() {
        let c4 = grp(&[4]);
        assert!(psi_invariance_check(&c4, &sub(&c4, &[&[2]]), 3, &cfg()).unwrap());
        assert!(psi_invariance_check(&c4, &sub(&c4, &[]), 3, &cfg()).unwrap());
        let c15 = grp(&[15]);
        assert!(psi_invariance_check(&c15, &sub(&c15, &[&[5]]), 2, &cfg()).unwrap());
    }

    #[test]
    fn certificate_json_shape() {
        let c2 = grp(&[2]);
        let cert = swan_certificate(&c2, &sub(&c2, &[&[1]]), 3, &cfg()).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["index"], 3);
        assert_eq!(v["per_prime"][0]["N"], 2);
        assert_eq!(v["phi_pass"], true);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem(len: usize) -> impl Strategy<Value = IntGroupRingElement> {
            proptest::collection::vec(-20i64..20, len).prop_map(|coefficients| GroupRingElement { coefficients })
        }

        proptest! {
            #[test]
            fn mul_commutes_and_associates(
                (a, b, c) in (elem(12), elem(12), elem(12))
            ) {
                let g = grp(&[2, 6]);
                let ab = group_ring_mul(&g, &a, &b).unwrap();
                prop_assert_eq!(&ab, &group_ring_mul(&g, &b, &a).unwrap());
                let left = group_ring_mul(&g, &ab, &c).unwrap();
                let right = group_ring_mul(&g, &a, &group_ring_mul(&g, &b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}
