//! Exhaustive verification suites over small groups, modules and primes.
//!
//! Each suite counts the cases it checked and keeps the first few
//! counterexamples as readable strings.

use std::time::Instant;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{self, Config, CyclicSubgroup, FinAbGroup, GroupElement};
use crate::homs;
use crate::psi_model;
use crate::quad_arith::{self, ChevalleyInput, QuadField, Splitting};
use crate::stickelberger::{self, GaloisModel, Stickelberger};
use crate::swan_lattice;

const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
    pub pass: bool,
    pub millis: u128,
}

struct Tally {
    name: &'static str,
    start: Instant,
    cases: u64,
    failures: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            start: Instant::now(),
            cases: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(describe());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            counterexamples: self.counterexamples,
            pass: self.failures == 0,
            millis: self.start.elapsed().as_millis(),
        }
    }
}

fn groups_up_to(bound: i64) -> Vec<FinAbGroup> {
    groups::abelian_groups_up_to(bound)
}

fn non_identity(g: &FinAbGroup) -> Vec<GroupElement> {
    g.elements_unchecked().into_iter().skip(1).collect()
}

/// `<chi,s> + <chi,-s>` is 0 or 1 according as `chi(s) = 1`, plus the
/// Galois equivariance `<chi^d, s> = <chi, d s>` and nondegeneracy.
pub fn pairing_sum_law(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("pairing_sum_law");
    for g in groups_up_to(bound) {
        let chars = stickelberger::character_group(&g, cfg)?;
        let elements = g.elements(cfg)?;
        let units = arith::units_mod(g.exponent());
        for chi in &chars {
            let mut nonzero = chi.exponents.iter().all(|&v| v == 0);
            for s in &elements {
                let total = stickelberger::pairing(&g, chi, s) + stickelberger::pairing(&g, chi, &g.neg(s));
                let expected = if chi.is_trivial_on(&g, s) { 0 } else { 1 };
                t.check(total == expected.into(), || format!("{g}: chi={:?} s={:?}", chi.exponents, s.coords));
                nonzero |= !chi.is_trivial_on(&g, s);
                for &d in &units {
                    let ok = stickelberger::pairing(&g, &chi.pow(&g, d), s) == stickelberger::pairing(&g, chi, &g.scale(s, d));
                    t.check(ok, || format!("{g}: equivariance d={d} chi={:?} s={:?}", chi.exponents, s.coords));
                }
            }
            t.check(nonzero, || format!("{g}: chi={:?} pairs trivially", chi.exponents));
        }
    }
    Ok(t.finish())
}

/// `A` membership against direct evaluation on all vectors with entries
/// in `[0, e)`, and integrality of the transpose on the Hermite basis.
pub fn a_hat_oracle(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("a_hat_oracle");
    for g in groups_up_to(bound) {
        let st = Stickelberger::new(&g, cfg)?;
        let n = st.characters().len();
        let e = g.exponent();
        let total = (e as u64).pow(n as u32);
        // exhaustive when small, otherwise a fixed stride through the box
        let step = (total / 20_000).max(1);
        let mut code = 0u64;
        while code < total {
            let mut psi = vec![0; n];
            let mut c = code;
            for x in psi.iter_mut() {
                *x = (c % e as u64) as i64;
                c /= e as u64;
            }
            t.check(st.a_hat().contains(&psi) == st.in_a_hat(&psi), || format!("{g}: psi={psi:?}"));
            code += step;
        }
        for s in non_identity(&g) {
            let h = homs::g_family(&st, &s, 1, "x")?;
            for psi in st.a_hat().basis() {
                t.check(st.theta_transpose(&h, psi).is_ok(), || format!("{g}: transpose leaks at {psi:?}"));
            }
        }
    }
    Ok(t.finish())
}

/// `rag(c_{t,i}) = Theta^t(g_{t,i})` for every `t != 1` and admissible `i`.
pub fn rag_theta_identity(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("rag_theta_identity");
    for g in groups_up_to(bound) {
        let st = Stickelberger::new(&g, cfg)?;
        for s in non_identity(&g) {
            let odd = g.elem_order(&s)? % 2 == 1;
            for variant in [1u8, 2] {
                if variant == 2 && !odd {
                    continue;
                }
                let c = homs::c_family(&st, &s, variant, "x")?;
                let h = homs::g_family(&st, &s, variant, "x")?;
                let ok = homs::verify_rag_equals_theta_t(&st, &c, &h)?;
                t.check(ok, || format!("{g}: t={:?} variant {variant}", s.coords));
            }
        }
    }
    Ok(t.finish())
}

/// Equivariance of the constructed homs: `c_swan` for every `D`, the
/// families for `D = 1 mod |t|`, and `c_{t,1}` for every `D`.
pub fn hom_equivariance(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("hom_equivariance");
    for g in groups_up_to(bound) {
        let st = Stickelberger::new(&g, cfg)?;
        let models = GaloisModel::all_subgroups(g.exponent())?;
        for s in g.elements(cfg)? {
            let order = g.elem_order(&s)?;
            let h = CyclicSubgroup::new(&g, s.clone())?;
            let swan = homs::c_swan(&st, &h, "r");
            for d in &models {
                t.check(stickelberger::is_equivariant(&st, &swan, d)?, || {
                    format!("{g}: c_swan at {:?} for D={:?}", s.coords, d.elements)
                });
            }
            if order == 1 {
                continue;
            }
            for variant in [1u8, 2] {
                if variant == 2 && order % 2 == 0 {
                    continue;
                }
                let c = homs::c_family(&st, &s, variant, "x")?;
                let gf = homs::g_family(&st, &s, variant, "x")?;
                for d in &models {
                    let fixes_zeta = d.elements.iter().all(|&x| x % order == 1 % order);
                    if fixes_zeta || variant == 1 {
                        t.check(stickelberger::is_equivariant(&st, &c, d)?, || {
                            format!("{g}: c_family({:?},{variant}) D={:?}", s.coords, d.elements)
                        });
                    }
                    if fixes_zeta {
                        t.check(stickelberger::is_equivariant(&st, &gf, d)?, || {
                            format!("{g}: g_family({:?},{variant}) D={:?}", s.coords, d.elements)
                        });
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

/// `rag(c_H^{d_n}) = Theta^t(g_v)` on `C_n` for every `D <= (Z/n)^x`.
pub fn swan1a(max_n: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("swan1a");
    for n in 1..=max_n {
        let g = FinAbGroup::cyclic(n)?;
        let st = Stickelberger::new(&g, cfg)?;
        let gen = if n == 1 { g.identity() } else { g.element(&[1])? };
        let h = CyclicSubgroup::new(&g, gen)?;
        for d in GaloisModel::all_subgroups(n)? {
            let ok = homs::verify_swan1a(&st, &h, &d)?
                && stickelberger::is_equivariant(&st, &homs::swan1a_g(&st, &h, &d, "r")?, &d)?;
            t.check(ok, || format!("C{n}: D={:?}", d.elements));
        }
    }
    Ok(t.finish())
}

/// `c_H(chi) = c_{t,2}(chi) + c_{t,2}(chi^{-1})` for every odd-order cyclic
/// `H = <t>` of every group in the list.
pub fn ccc(groups: &[FinAbGroup], cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("ccc");
    for g in groups {
        let st = Stickelberger::new(g, cfg)?;
        for h in groups::cyclic_subgroups(g, cfg)? {
            if h.order % 2 == 1 {
                t.check(homs::verify_ccc(&st, &h)?, || format!("{g}: H=<{:?}>", h.generator.coords));
            }
        }
    }
    Ok(t.finish())
}

/// `c(chi) + c(chi^{-1}) = delta(G)` for every admissible `(G, t, chi)`.
pub fn swan2b(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("swan2b");
    for g in groups_up_to(bound).into_iter().filter(|g| !g.is_trivial()) {
        let st = Stickelberger::new(&g, cfg)?;
        let delta = homs::delta_of_group(&g)?;
        for s in non_identity(&g) {
            if delta == 1 && g.elem_order(&s)? % 2 == 0 {
                continue;
            }
            for chi in st.characters() {
                if chi.is_trivial_on(&g, &s) {
                    continue;
                }
                let got = homs::verify_swan2b_exponent(&st, &s, chi)?;
                t.check(got == delta, || format!("{g}: t={:?} chi={:?} gave {got}", s.coords, chi.exponents));
            }
        }
    }
    Ok(t.finish())
}

pub const SWAN_R_VALUES: [i64; 6] = [2, -2, 3, -3, 5, 7];

/// Local-freeness and fiber certificates for every subgroup `H` and every
/// listed `r` prime to `|H|`, plus the worked `C_2`, `r = 3` values.
pub fn swan_certificates(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("swan_certificates");
    for g in groups_up_to(bound) {
        for h in groups::all_subgroups(&g, cfg)? {
            for r in SWAN_R_VALUES {
                if num_integer::gcd(r, h.order()) != 1 {
                    continue;
                }
                let cert = swan_lattice::swan_certificate(&g, &h, r, cfg)?;
                t.check(cert.pass, || format!("{g}: H={:?} r={r}: {cert:?}", h.members));
            }
        }
    }
    if bound >= 2 {
        let c2 = FinAbGroup::cyclic(2)?;
        let h = groups::Subgroup::generated_by(&c2, &[c2.element(&[1])?]);
        let ideal = swan_lattice::swan_ideal(&c2, &h, 3, cfg)?;
        let c = swan_lattice::local_generator(&c2, &h, 3, 3, 2)?;
        t.check(ideal.index == 3 && c.coefficients == vec![2, 8], || {
            format!("C2, r=3: index {} generator {:?}", ideal.index, c.coefficients)
        });
    }
    Ok(t.finish())
}

pub const PSI_MODULI: [i64; 4] = [3, 5, 7, 9];

/// Criteria (a) and (b) with the telescoping identity, over every action
/// of `(Z/nZ)^x` on every `A` with `|A| <= bound`.
pub fn psi_criteria(bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("psi_criteria");
    for a in groups_up_to(bound) {
        for n in PSI_MODULI {
            for m in psi_model::enumerate_actions(&a, n, cfg)? {
                for c in a.elements(cfg)? {
                    if m.psi(-1, &c)? == c {
                        let in_kernel = psi_model::check_criteria_a(&m, &c)?;
                        let divides_two = a.scale(&c, 2) == a.identity();
                        t.check(in_kernel == divides_two, || format!("{a}, n={n}: c={:?}", c.coords));
                    }
                }
                for r in psi_model::test_subgroups(&m)? {
                    let ok = psi_model::check_criteria_b(&m, &r)? && psi_model::telescoping_identity(&m, &r)?;
                    t.check(ok, || format!("{a}, n={n}, action {:?}: R={:?}", m.matrix(2), r.members));
                }
            }
        }
    }
    Ok(t.finish())
}

/// `im Xi'_2 <= ker Xi_{-1} <= R` over every action, or only over actions
/// where `Psi_{-1}` is inversion.
pub fn psi_chain(bound: i64, only_dual: bool, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new(if only_dual { "psi_chain_dual" } else { "psi_chain" });
    for a in groups_up_to(bound) {
        let elements = a.elements(cfg)?;
        for n in PSI_MODULI {
            for m in psi_model::enumerate_actions(&a, n, cfg)? {
                if only_dual {
                    let mut inverts = true;
                    for x in &elements {
                        inverts &= m.psi(-1, x)? == a.neg(x);
                    }
                    if !inverts {
                        continue;
                    }
                }
                for r in psi_model::test_subgroups(&m)? {
                    let ok = psi_model::check_chain(&m, &r)?;
                    t.check(ok, || {
                        let sd = psi_model::sd_kernel(&m, &r).map(|s| s.members).unwrap_or_default();
                        let at = psi_model::at_image(&m, &r).map(|s| s.members).unwrap_or_default();
                        format!(
                            "{a}, n={n}, Psi_2={:?}, Psi_-1={:?}: R={:?} sd={sd:?} at={at:?}",
                            m.matrix(2),
                            m.matrix(-1),
                            r.members
                        )
                    });
                }
            }
        }
    }
    Ok(t.finish())
}

/// `V_p` has an element of order four for the primes of the explicit
/// search, for each listed imaginary field at its own conductor.
pub fn vp_explicit(fields: &[i64], bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("vp_explicit");
    for &d in fields {
        let k = QuadField::new(d)?;
        let report = quad_arith::explicit_prime_witness(d, k.conductor(), bound, cfg)?;
        for w in &report.witnesses {
            t.check(w.has_order_four, || format!("D={d}, p={}: V_p={:?}", w.p, w.vp_factors));
        }
    }
    if fields.contains(&-1) && bound >= 7 {
        let v = quad_arith::vp_structure(&QuadField::new(-1)?, 7, cfg)?;
        t.check(v.vp_factors == vec![12], || format!("V_7(Z[i]) = {:?}", v.vp_factors));
    }
    Ok(t.finish())
}

/// The real-quadratic remark for every inert `p = 3 mod 4` up to `bound`.
pub fn remark(fields: &[i64], bound: i64, cfg: &Config) -> Result<SuiteReport> {
    let mut t = Tally::new("remark");
    for &d in fields {
        let k = QuadField::new(d)?;
        for p in arith::odd_primes_up_to(bound) {
            if p % 4 != 3 || quad_arith::splitting_type(&k, p)? != Splitting::Inert {
                continue;
            }
            let r = quad_arith::remark_check(&k, p, cfg)?;
            t.check(r.pass, || format!("D={d}, p={p}: {r:?}"));
        }
    }
    Ok(t.finish())
}

/// The three reciprocity laws for every pair of odd primes up to `bound`.
pub fn reciprocity(bound: i64) -> Result<SuiteReport> {
    let mut t = Tally::new("reciprocity");
    let primes = arith::odd_primes_up_to(bound);
    for &p in &primes {
        t.check(quad_arith::p_mod8_criterion(p)? == (p % 8 == 7), || format!("p={p}: mod 8 criterion"));
        for &q in &primes {
            t.check(quad_arith::reciprocity_laws(p, q)?, || format!("p={p}, q={q}"));
        }
    }
    Ok(t.finish())
}

/// The class number formula on the ramified tower scenario agrees with the closed
/// form, which is even whenever its hypotheses hold.
pub fn chevalley_grid(max_p: i64) -> Result<SuiteReport> {
    let mut t = Tally::new("chevalley_grid");
    for p in arith::odd_primes_up_to(max_p) {
        for r1 in 0..=3u32 {
            for r2 in 0..=2u32 {
                if r1 + r2 == 0 {
                    continue;
                }
                for n0 in [2, p - 1] {
                    let input = ChevalleyInput {
                        h_k: 1,
                        r: r1,
                        e_list: vec![(p - 1) as u64; (r1 + 2 * r2) as usize],
                        norm_index: (n0 * (p - 1).pow(r1 + r2 - 1)) as u64,
                        degree: (p - 1) as u64,
                    };
                    let value = quad_arith::chevalley(&input)?.value;
                    let bound = quad_arith::lem3_bound(r1, r2, n0, p)?;
                    let ok = value == bound.value && (!bound.hypothesis_ok || bound.even);
                    t.check(ok, || format!("p={p}, r1={r1}, r2={r2}, n0={n0}: {value} vs {}", bound.value));
                }
            }
        }
    }
    Ok(t.finish())
}

/// Every `C_n^k / <x>` surjects onto `C_n^{k-1}`.
pub fn group2_flag(max_n: i64, max_k: usize) -> Result<SuiteReport> {
    let mut t = Tally::new("group2_flag");
    for n in 2..=max_n {
        for k in 1..=max_k {
            let g = FinAbGroup::from_cyclic_orders(&vec![n; k])?;
            for x in g.elements_unchecked() {
                let q = groups::quotient_by_cyclic(n, k, &x)?;
                t.check(q.surjects, || format!("n={n}, k={k}, x={:?}: {:?}", x.coords, q.invariant_factors));
            }
        }
    }
    Ok(t.finish())
}

/// Largest `size_bound` accepted by [`verify_all`].
pub const MAX_SIZE_BOUND: i64 = 32;

/// Every suite, with group sizes capped by `size_bound` and by each suite's
/// own ceiling.
pub fn verify_all(size_bound: i64, cfg: &Config) -> Result<Vec<SuiteReport>> {
    if size_bound > MAX_SIZE_BOUND {
        return Err(Error::resource(format!(
            "size bound {size_bound} exceeds {MAX_SIZE_BOUND}"
        )));
    }
    let b = size_bound.max(1);
    let ccc_groups: Vec<FinAbGroup> = groups_up_to(b.min(30));
    Ok(vec![
        pairing_sum_law(b.min(24), cfg)?,
        a_hat_oracle(b.min(8), cfg)?,
        rag_theta_identity(b.min(16), cfg)?,
        hom_equivariance(b.min(12), cfg)?,
        swan1a(b.min(12), cfg)?,
        ccc(&ccc_groups, cfg)?,
        swan2b(b.min(16), cfg)?,
        swan_certificates(b.min(12), cfg)?,
        psi_criteria(b.min(16), cfg)?,
        psi_chain(b.min(16), true, cfg)?,
        psi_chain(b.min(16), false, cfg)?,
        vp_explicit(&[-1, -2, -3, -5, -7], 200, cfg)?,
        remark(&[2, 5, 13], 100, cfg)?,
        reciprocity(200)?,
        chevalley_grid(50)?,
        group2_flag(6, 3)?,
    ])
}
