//! Quadratic fields: Legendre symbols, fundamental units, the groups
//! `V_p(O_K) = (O_K/pO_K)^x / image of O_K^x`, the ambiguous class number
//! formula, and the prime searches built on them.
//!
//! Elements of `O_K` are written `a + b w` with `w = (1 + sqrt D)/2` when
//! `D = 1 mod 4` and `w = sqrt D` otherwise. Only odd primes are handled.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::Config;
use crate::lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadField {
    pub d: i64,
    pub disc: i64,
    /// Whether `w = (1 + sqrt D)/2`.
    pub half_integral: bool,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !arith::is_squarefree(d) {
            return Err(Error::input(format!("D = {d} must be squarefree and not 0 or 1")));
        }
        let half = d.rem_euclid(4) == 1;
        Ok(QuadField {
            d,
            disc: if half { d } else { 4 * d },
            half_integral: half,
        })
    }

    /// Conductor of `K/Q`, i.e. `|disc|`.
    pub fn conductor(&self) -> i64 {
        self.disc.abs()
    }

    /// `w^2 = trace_part * w + const_part`.
    fn omega_square(&self) -> (i64, i64) {
        if self.half_integral {
            (1, (self.d - 1) / 4)
        } else {
            (0, self.d)
        }
    }
}

fn check_odd_prime(p: i64) -> Result<()> {
    if p < 3 || !arith::is_prime(p) {
        return Err(Error::input(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i64> {
    check_odd_prime(p)?;
    let r = arith::mod_pow(a, ((p - 1) / 2) as u64, p);
    Ok(match r {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

fn sign_pow(e: i64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Both supplementary laws at `p`, and the reciprocity law for `(p, q)` when `p != q`.
pub fn reciprocity_laws(p: i64, q: i64) -> Result<bool> {
    let first = legendre(-1, p)? == sign_pow((p - 1) / 2);
    let second = legendre(2, p)? == sign_pow((p * p - 1) / 8);
    let main = p == q || {
        check_odd_prime(q)?;
        legendre(p, q)? * legendre(q, p)? == sign_pow((p - 1) / 2 * ((q - 1) / 2))
    };
    Ok(first && second && main)
}

/// `p = -1 mod 8`, checked against `(-1/p) = -1` and `(2/p) = 1`.
pub fn p_mod8_criterion(p: i64) -> Result<bool> {
    let by_symbols = legendre(-1, p)? == -1 && legendre(2, p)? == 1;
    let by_residue = p % 8 == 7;
    assert_eq!(by_symbols, by_residue);
    Ok(by_residue)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

pub fn splitting_type(k: &QuadField, p: i64) -> Result<Splitting> {
    if p == 2 {
        return Err(Error::domain("p = 2 is not supported"));
    }
    check_odd_prime(p)?;
    Ok(if k.disc % p == 0 {
        Splitting::Ramified
    } else if legendre(k.disc, p)? == 1 {
        Splitting::Split
    } else {
        Splitting::Inert
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalUnit {
    /// The unit is `a + b w`.
    pub a: i128,
    pub b: i128,
    pub norm: i64,
}

impl FundamentalUnit {
    pub fn display(&self, k: &QuadField) -> String {
        if k.half_integral {
            // a + b(1 + sqrt D)/2 = (2a + b + b sqrt D)/2
            format!("({} + {}*sqrt({}))/2", 2 * self.a + self.b, self.b, k.d)
        } else {
            format!("{} + {}*sqrt({})", self.a, self.b, k.d)
        }
    }
}

fn norm_of(k: &QuadField, a: i128, b: i128) -> Option<i128> {
    // N(a + b w) = a^2 + ab Tr(w) + b^2 N(w)
    let (tr, c) = k.omega_square();
    let nw = -(c as i128);
    a.checked_mul(a)?
        .checked_add(a.checked_mul(b)?.checked_mul(tr as i128)?)?
        .checked_add(b.checked_mul(b)?.checked_mul(nw)?)
}

/// Fundamental unit `> 1` of a real quadratic field, from the continued
/// fraction of `w`.
pub fn fundamental_unit(k: &QuadField) -> Result<FundamentalUnit> {
    if k.d <= 0 {
        return Err(Error::domain(format!("D = {} is not positive", k.d)));
    }
    let overflow = || Error::resource(format!("fundamental unit of Q(sqrt {}) overflows i128", k.d));
    let d = k.d as i128;
    let root = arith::isqrt(d);
    // w = (P + sqrt d)/Q
    let (mut pp, mut qq): (i128, i128) = if k.half_integral { (1, 2) } else { (0, 1) };
    let (mut h_prev, mut h): (i128, i128) = (0, 1);
    let (mut k_prev, mut kk): (i128, i128) = (1, 0);
    loop {
        let a = (pp + root).div_euclid(qq);
        let h_next = a.checked_mul(h).and_then(|x| x.checked_add(h_prev)).ok_or_else(overflow)?;
        let k_next = a.checked_mul(kk).and_then(|x| x.checked_add(k_prev)).ok_or_else(overflow)?;
        (h_prev, h, k_prev, kk) = (h, h_next, kk, k_next);
        // h/k approximates w, so h - k w' = (h - k Tr w) + k w is the unit candidate
        let (ua, ub) = if k.half_integral { (h - kk, kk) } else { (h, kk) };
        let n = norm_of(k, ua, ub).ok_or_else(overflow)?;
        if n == 1 || n == -1 {
            return Ok(FundamentalUnit {
                a: ua,
                b: ub,
                norm: n as i64,
            });
        }
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
}

/// `O_K / p O_K` with elements `(a, b) = a + b w`.
#[derive(Clone, Copy, Debug)]
struct ResidueRing {
    p: i64,
    tr: i64,
    c: i64,
}

type Res = (i64, i64);

impl ResidueRing {
    fn new(k: &QuadField, p: i64) -> Self {
        let (tr, c) = k.omega_square();
        ResidueRing {
            p,
            tr: tr.rem_euclid(p),
            c: c.rem_euclid(p),
        }
    }

    fn reduce(&self, a: i128, b: i128) -> Res {
        let p = self.p as i128;
        (a.rem_euclid(p) as i64, b.rem_euclid(p) as i64)
    }

    fn mul(&self, x: Res, y: Res) -> Res {
        let p = self.p;
        let bd = arith::mod_mul(x.1, y.1, p);
        let a = (arith::mod_mul(x.0, y.0, p) + arith::mod_mul(bd, self.c, p)) % p;
        let b = (arith::mod_mul(x.0, y.1, p) + arith::mod_mul(x.1, y.0, p) + arith::mod_mul(bd, self.tr, p)) % p;
        (a, b)
    }

    fn pow(&self, x: Res, mut e: u64) -> Res {
        let mut result = (1 % self.p, 0);
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn order(&self, x: Res, group_order: i64) -> i64 {
        let one = (1 % self.p, 0);
        let mut order = group_order;
        for (q, _) in arith::factorize(group_order) {
            while order % q == 0 && self.pow(x, (order / q) as u64) == one {
                order /= q;
            }
        }
        order
    }
}

/// Discrete logarithms in the unit group of the residue ring, as a vector
/// in `Z^k` modulo `moduli`.
enum DlogCoords {
    Split {
        roots: [i64; 2],
        table: HashMap<i64, i64>,
    },
    Inert {
        table: HashMap<Res, i64>,
    },
    Ramified {
        /// `a + b w = u + v eps` with `u = a + b * shift`, `v = b * scale`
        shift: i64,
        scale: i64,
        table: HashMap<i64, i64>,
    },
}

fn prime_field_dlogs(p: i64) -> HashMap<i64, i64> {
    let g = (2..p)
        .find(|&g| arith::mult_order(g, p).ok() == Some(p - 1))
        .unwrap_or(1);
    let mut table = HashMap::with_capacity(p as usize);
    let mut x = 1 % p;
    for k in 0..p - 1 {
        table.insert(x, k);
        x = arith::mod_mul(x, g, p);
    }
    table
}

impl DlogCoords {
    fn new(k: &QuadField, ring: &ResidueRing, splitting: Splitting) -> Self {
        let p = ring.p;
        match splitting {
            Splitting::Split => {
                let roots: Vec<i64> = (0..p)
                    .filter(|&x| {
                        (arith::mod_mul(x, x, p) - arith::mod_mul(ring.tr, x, p) - ring.c).rem_euclid(p) == 0
                    })
                    .collect();
                DlogCoords::Split {
                    roots: [roots[0], roots[1]],
                    table: prime_field_dlogs(p),
                }
            }
            Splitting::Inert => {
                let n = p * p - 1;
                let gen = (0..p)
                    .flat_map(|b| (0..p).map(move |a| (a, b)))
                    .find(|&x| x != (0, 0) && ring.order(x, n) == n)
                    .expect("F_{p^2}^x is cyclic");
                let mut table = HashMap::with_capacity(n as usize);
                let mut x = (1, 0);
                for e in 0..n {
                    table.insert(x, e);
                    x = ring.mul(x, gen);
                }
                DlogCoords::Inert { table }
            }
            Splitting::Ramified => {
                let inv2 = arith::mod_inv(2, p).expect("p is odd");
                // eps = 2w - 1 (half-integral case) or eps = w
                let (shift, scale) = if k.half_integral { (inv2, inv2) } else { (0, 1) };
                DlogCoords::Ramified {
                    shift,
                    scale,
                    table: prime_field_dlogs(p),
                }
            }
        }
    }

    fn moduli(&self, p: i64) -> Vec<i64> {
        match self {
            DlogCoords::Split { .. } => vec![p - 1, p - 1],
            DlogCoords::Inert { .. } => vec![p * p - 1],
            DlogCoords::Ramified { .. } => vec![p - 1, p],
        }
    }

    fn coords(&self, p: i64, x: Res) -> Vec<i64> {
        match self {
            DlogCoords::Split { roots, table } => roots
                .iter()
                .map(|&r| table[&((x.0 + arith::mod_mul(x.1, r, p)) % p)])
                .collect(),
            DlogCoords::Inert { table } => vec![table[&x]],
            DlogCoords::Ramified { shift, scale, table } => {
                let u = (x.0 + arith::mod_mul(x.1, *shift, p)) % p;
                let v = arith::mod_mul(x.1, *scale, p);
                let ratio = arith::mod_mul(v, arith::mod_inv(u, p).expect("x is a unit"), p);
                vec![table[&u], ratio]
            }
        }
    }
}

/// Generators of `O_K^x` modulo `p`.
fn unit_generators(k: &QuadField, ring: &ResidueRing) -> Result<Vec<Res>> {
    let minus_one = ring.reduce(-1, 0);
    Ok(match k.d {
        // i = w and zeta_6 = w
        -1 | -3 => vec![(0, 1)],
        d if d < 0 => vec![minus_one],
        _ => {
            let eps = fundamental_unit(k)?;
            vec![minus_one, ring.reduce(eps.a, eps.b)]
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VpResult {
    pub p: i64,
    pub splitting: Splitting,
    /// Invariant factors of `(O_K/pO_K)^x`.
    pub full_group: Vec<i64>,
    pub unit_image_order: i64,
    /// Invariant factors of `V_p(O_K)`.
    pub vp_factors: Vec<i64>,
    pub vp_order: i64,
    pub has_order_four: bool,
}

/// Structure of `V_p(O_K)` via discrete logarithms and Smith form.
pub fn vp_structure(k: &QuadField, p: i64, cfg: &Config) -> Result<VpResult> {
    let splitting = splitting_type(k, p)?;
    if p > cfg.residue_prime_bound {
        return Err(Error::resource(format!(
            "p = {p} exceeds the residue prime bound {}",
            cfg.residue_prime_bound
        )));
    }
    let ring = ResidueRing::new(k, p);
    let dlog = DlogCoords::new(k, &ring, splitting);
    let moduli = dlog.moduli(p);
    let dim = moduli.len();
    let mut rows: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { moduli[i] } else { 0 }).collect())
        .collect();
    let (full_group, _) = lattice::quotient_structure(&rows, dim);
    for u in unit_generators(k, &ring)? {
        rows.push(dlog.coords(p, u));
    }
    let (vp_factors, free) = lattice::quotient_structure(&rows, dim);
    debug_assert_eq!(free, 0);
    let full_order: i64 = moduli.iter().product();
    let vp_order: i64 = vp_factors.iter().product();
    Ok(VpResult {
        p,
        splitting,
        full_group,
        unit_image_order: full_order / vp_order,
        has_order_four: vp_factors.iter().any(|d| d % 4 == 0),
        vp_factors,
        vp_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub d: i64,
    pub p: i64,
    /// `eps^{p+1} = -1 mod p O_K`.
    pub power_is_minus_one: bool,
    /// Order of `eps` in `(O_K/pO_K)^x`.
    pub n_p: i64,
    /// `2(p+1)/n_p` when integral.
    pub quotient: Option<i64>,
    pub quotient_odd: bool,
    pub vp_order: i64,
    pub vp_order_odd: bool,
    pub pass: bool,
}

/// For `eps` of norm -1 and `p = 3 mod 4` inert: `eps^{p+1} = -1`,
/// `2(p+1)/n_p(eps)` odd and `|V_p| = (p^2-1)/n_p(eps)` odd.
pub fn remark_check(k: &QuadField, p: i64, cfg: &Config) -> Result<RemarkReport> {
    let eps = fundamental_unit(k)?;
    if eps.norm != -1 {
        return Err(Error::domain(format!("the fundamental unit of Q(sqrt {}) has norm +1", k.d)));
    }
    if p % 4 != 3 {
        return Err(Error::domain(format!("p = {p} is not 3 mod 4")));
    }
    if splitting_type(k, p)? != Splitting::Inert {
        return Err(Error::domain(format!("p = {p} is not inert")));
    }
    let ring = ResidueRing::new(k, p);
    let e = ring.reduce(eps.a, eps.b);
    let power_is_minus_one = ring.pow(e, (p + 1) as u64) == ring.reduce(-1, 0);
    let n_p = ring.order(e, p * p - 1);
    let quotient = (2 * (p + 1) % n_p == 0).then(|| 2 * (p + 1) / n_p);
    let quotient_odd = quotient.is_some_and(|q| q % 2 == 1);
    let vp = vp_structure(k, p, cfg)?;
    let vp_order_odd = vp.vp_order % 2 == 1 && vp.vp_order * n_p == p * p - 1;
    Ok(RemarkReport {
        d: k.d,
        p,
        power_is_minus_one,
        n_p,
        quotient,
        quotient_odd,
        vp_order: vp.vp_order,
        vp_order_odd,
        pass: power_is_minus_one && quotient_odd && vp_order_odd,
    })
}

fn ratio_as_string<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChevalleyInput {
    pub h_k: u64,
    pub r: u32,
    pub e_list: Vec<u64>,
    pub norm_index: u64,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChevalleyOutput {
    #[serde(serialize_with = "ratio_as_string")]
    pub value: BigRational,
    /// A non-integral value means the inputs are inconsistent.
    pub integral: bool,
}

/// `h_K 2^r prod(e) / (norm_index * degree)`.
pub fn chevalley(input: &ChevalleyInput) -> Result<ChevalleyOutput> {
    if input.degree == 0 || input.norm_index == 0 {
        return Err(Error::input("degree and norm index must be positive"));
    }
    if input.h_k == 0 || input.e_list.contains(&0) {
        return Err(Error::input("class number and ramification indices must be positive"));
    }
    let num = input
        .e_list
        .iter()
        .fold(BigInt::from(input.h_k) << input.r, |acc, &e| acc * BigInt::from(e));
    let den = BigInt::from(input.norm_index) * BigInt::from(input.degree);
    let value = BigRational::new(num, den);
    Ok(ChevalleyOutput {
        integral: value.is_integer(),
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lem3Bound {
    #[serde(serialize_with = "ratio_as_string")]
    pub value: BigRational,
    pub integral: bool,
    pub even: bool,
    /// `r1 >= 1`, and `r1 >= 2` with `n0 = 2` when `r2 = 0`.
    pub hypothesis_ok: bool,
}

/// `2^{r1} (p-1)^{r2} / n0`.
pub fn lem3_bound(r1: u32, r2: u32, n0: i64, p: i64) -> Result<Lem3Bound> {
    check_odd_prime(p)?;
    if n0 < 1 || (p - 1) % n0 != 0 {
        return Err(Error::input(format!("n0 = {n0} does not divide p - 1 = {}", p - 1)));
    }
    let num = (BigInt::one() << r1) * num_traits::pow(BigInt::from(p - 1), r2 as usize);
    let value = BigRational::new(num, BigInt::from(n0));
    let integral = value.is_integer();
    let even = integral && (value.to_integer() % 2u32).is_zero();
    let hypothesis_ok = r1 >= 1 && (r2 > 0 || (r1 >= 2 && n0 == 2));
    Ok(Lem3Bound {
        value,
        integral,
        even,
        hypothesis_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KobayashiResult {
    pub d: i64,
    pub p: i64,
    pub symbol: i64,
    /// Orders of the two cyclic candidates; which one occurs is left open.
    pub candidates: [i64; 2],
}

pub fn kobayashi_swan(d: i64, p: i64) -> Result<KobayashiResult> {
    if d == -1 || d == -3 {
        return Err(Error::domain(format!("D = {d} is not supported")));
    }
    if d >= 0 || !arith::is_squarefree(d) {
        return Err(Error::input(format!("D = {d} must be negative and squarefree")));
    }
    check_odd_prime(p)?;
    if d % p == 0 {
        return Err(Error::input(format!("p = {p} divides D = {d}")));
    }
    let symbol = legendre(d, p)?;
    let big = if symbol == -1 { p + 1 } else { p - 1 };
    Ok(KobayashiResult {
        d,
        p,
        symbol,
        candidates: [big / 2, big],
    })
}

/// Primes `p <= bound` with `p = -1 mod 8` and `p = -1 mod 2m`, ascending.
pub fn explicit_prime_search(m: i64, bound: i64) -> Result<Vec<i64>> {
    if m < 3 {
        return Err(Error::input(format!("conductor must be at least 3, got {m}")));
    }
    Ok(arith::odd_primes_up_to(bound)
        .into_iter()
        .filter(|&p| p % 8 == 7 && (p + 1) % (2 * m) == 0)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWitness {
    pub p: i64,
    pub vp_factors: Vec<i64>,
    pub has_order_four: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub d: i64,
    pub m: i64,
    /// Whether `m` is the conductor of `Q(sqrt D)`.
    pub conductor_matches: bool,
    pub witnesses: Vec<SearchWitness>,
    pub all_have_order_four: bool,
}

/// The search for conductor `m`, with `V_p` of `Q(sqrt D)` at each prime found.
pub fn explicit_prime_witness(d: i64, m: i64, bound: i64, cfg: &Config) -> Result<WitnessReport> {
    let k = QuadField::new(d)?;
    if d >= 0 {
        return Err(Error::domain(format!("D = {d} is not negative")));
    }
    let mut witnesses = Vec::new();
    for p in explicit_prime_search(m, bound)? {
        if k.disc % p == 0 {
            continue;
        }
        let vp = vp_structure(&k, p, cfg)?;
        witnesses.push(SearchWitness {
            p,
            vp_factors: vp.vp_factors,
            has_order_four: vp.has_order_four,
        });
    }
    Ok(WitnessReport {
        d,
        m,
        conductor_matches: k.conductor() == m,
        all_have_order_four: witnesses.iter().all(|w| w.has_order_four),
        witnesses,
    })
}

/// Every prime `q | D` is a square mod `p`, hence `(D/p) = -1`, for `p`
/// from the search at the conductor of `Q(sqrt D)`.
pub fn example_deduction(d: i64, p: i64) -> Result<bool> {
    if d == -1 {
        return Err(Error::domain("D = -1 is handled separately"));
    }
    let k = QuadField::new(d)?;
    if d >= 0 {
        return Err(Error::domain(format!("D = {d} is not negative")));
    }
    check_odd_prime(p)?;
    let m = k.conductor();
    if p % 8 != 7 || (p + 1) % (2 * m) != 0 {
        return Err(Error::domain(format!("p = {p} is not -1 mod 8 and -1 mod {}", 2 * m)));
    }
    let mut all_squares = true;
    for q in arith::prime_divisors(d) {
        all_squares &= legendre(q, p)? == 1;
    }
    let minus_one = legendre(-1, p)?;
    let symbol = legendre(d, p)?;
    if all_squares {
        assert_eq!(symbol, minus_one);
    }
    Ok(all_squares && symbol == -1)
}
