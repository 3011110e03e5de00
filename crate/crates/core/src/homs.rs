//! Monomial homomorphisms on the dual group or on `G(-1)`, recorded by
//! their integer exponents in one symbolic base, and the exponent
//! identities relating resolvents to the Stickelberger transpose.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{CyclicSubgroup, FinAbGroup, GroupElement};
use crate::stickelberger::{d_n_of_model, Character, GaloisModel, Stickelberger};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Characters,
    GroupElements,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialHom {
    pub domain_kind: DomainKind,
    pub base_tag: String,
    pub exponents: Vec<i64>,
}

impl MonomialHom {
    pub fn zero(kind: DomainKind, base: &str, len: usize) -> Self {
        MonomialHom {
            domain_kind: kind,
            base_tag: base.to_string(),
            exponents: vec![0; len],
        }
    }

    /// Indices with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exponents.len())
            .filter(|&i| self.exponents[i] != 0)
            .collect()
    }

    fn from_rationals(kind: DomainKind, base: &str, exps: Vec<Rational>) -> Result<Self> {
        let exponents = exps
            .into_iter()
            .map(|q| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(Error::domain(format!("exponent {q} is not integral")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialHom {
            domain_kind: kind,
            base_tag: base.to_string(),
            exponents,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationDatum {
    pub place_label: String,
    pub s_v: GroupElement,
}

fn check_nonidentity(g: &FinAbGroup, t: &GroupElement) -> Result<()> {
    g.check_element(t)?;
    if *t == g.identity() {
        return Err(Error::domain("t must not be the identity"));
    }
    Ok(())
}

/// `c_{H,r}`: exponent 0 where `chi(H) = 1`, 1 elsewhere.
pub fn c_swan(st: &Stickelberger, h: &CyclicSubgroup, base: &str) -> MonomialHom {
    let g = st.group();
    MonomialHom {
        domain_kind: DomainKind::Characters,
        base_tag: base.to_string(),
        exponents: st
            .characters()
            .iter()
            .map(|chi| i64::from(!chi.is_trivial_on(g, &h.generator)))
            .collect(),
    }
}

/// `c_{t,x,1}(chi) = <chi,t> + <chi,-t>`, `c_{t,x,2}(chi) = 2<chi,t> - <chi,2t>`.
pub fn c_family(st: &Stickelberger, t: &GroupElement, variant: u8, base: &str) -> Result<MonomialHom> {
    let g = st.group();
    check_nonidentity(g, t)?;
    let t_idx = g.index_of(t);
    let other = match variant {
        1 => g.index_of(&g.neg(t)),
        2 => g.index_of(&g.scale(t, 2)),
        _ => return Err(Error::input(format!("variant must be 1 or 2, got {variant}"))),
    };
    let exps = (0..st.characters().len())
        .map(|chi| {
            let a = st.pairing_at(chi, t_idx);
            let b = st.pairing_at(chi, other);
            if variant == 1 {
                a + b
            } else {
                a * Rational::from_integer(2) - b
            }
        })
        .collect();
    MonomialHom::from_rationals(DomainKind::Characters, base, exps)
}

/// `g_{t,x,i}` on `G(-1)`.
pub fn g_family(st: &Stickelberger, t: &GroupElement, variant: u8, base: &str) -> Result<MonomialHom> {
    let g = st.group();
    check_nonidentity(g, t)?;
    let order = g.elem_order(t)?;
    let mut h = MonomialHom::zero(DomainKind::GroupElements, base, st.elements().len());
    match variant {
        1 if order == 2 => h.exponents[g.index_of(t)] = 2,
        1 => {
            h.exponents[g.index_of(t)] = 1;
            h.exponents[g.index_of(&g.neg(t))] = 1;
        }
        2 if order % 2 == 1 => {
            h.exponents[g.index_of(t)] = 2;
            h.exponents[g.index_of(&g.scale(t, 2))] = -1;
        }
        2 => return Err(Error::domain(format!("variant 2 needs |t| odd, got {order}"))),
        _ => return Err(Error::input(format!("variant must be 1 or 2, got {variant}"))),
    }
    Ok(h)
}

/// `rag(c)(psi) = sum_chi c(chi) psi(chi)`.
pub fn rag_exponent(c: &MonomialHom, psi: &[i64]) -> i64 {
    c.exponents.iter().zip(psi).map(|(a, b)| a * b).sum()
}

/// Whether `rag(c) = Theta^t(g)` on every Hermite basis vector of `A`.
pub fn verify_rag_equals_theta_t(st: &Stickelberger, c: &MonomialHom, g: &MonomialHom) -> Result<bool> {
    if c.domain_kind != DomainKind::Characters || g.domain_kind != DomainKind::GroupElements {
        return Err(Error::input("expected c on characters and g on group elements"));
    }
    if c.base_tag != g.base_tag {
        return Err(Error::input(format!(
            "base tags differ: {} vs {}",
            c.base_tag, g.base_tag
        )));
    }
    for psi in st.a_hat().basis() {
        if rag_exponent(c, psi) != st.theta_transpose(g, psi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_model(h: &CyclicSubgroup, model: &GaloisModel) -> Result<()> {
    if model.modulus != h.order {
        return Err(Error::input(format!(
            "model modulus {} differs from |H| = {}",
            model.modulus, h.order
        )));
    }
    Ok(())
}

/// `g_v` supported on `{i t, -i t : i in D}`.
///
/// For `|t| = 2` the two points coincide and the exponent at `t` is 2.
pub fn swan1a_g(st: &Stickelberger, h: &CyclicSubgroup, model: &GaloisModel, base: &str) -> Result<MonomialHom> {
    check_model(h, model)?;
    let g = st.group();
    let mut out = MonomialHom::zero(DomainKind::GroupElements, base, st.elements().len());
    let value = if h.order == 2 { 2 } else { 1 };
    for &i in &model.elements {
        let s = g.scale(&h.generator, i);
        out.exponents[g.index_of(&s)] = value;
        out.exponents[g.index_of(&g.neg(&s))] = value;
    }
    Ok(out)
}

/// `rag(c_H^{d_n}) = Theta^t(g_v)` together with the character sum
/// `sum_{i in D} (<chi,it> + <chi,-it>) = |D| [chi(t) != 1]`.
pub fn verify_swan1a(st: &Stickelberger, h: &CyclicSubgroup, model: &GaloisModel) -> Result<bool> {
    let gv = swan1a_g(st, h, model, "r")?;
    let mut c = c_swan(st, h, "r");
    let d = d_n_of_model(model);
    for x in c.exponents.iter_mut() {
        *x *= d;
    }
    if !verify_rag_equals_theta_t(st, &c, &gv)? {
        return Ok(false);
    }
    let g = st.group();
    let size = Rational::from_integer(model.order());
    for (chi_idx, chi) in st.characters().iter().enumerate() {
        let mut total = Rational::from_integer(0);
        for &i in &model.elements {
            let s = g.scale(&h.generator, i);
            total += st.pairing_at(chi_idx, g.index_of(&s));
            total += st.pairing_at(chi_idx, g.index_of(&g.neg(&s)));
        }
        let expected = if chi.is_trivial_on(g, &h.generator) {
            Rational::from_integer(0)
        } else {
            size
        };
        if total != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c_H(chi) = c_{t,2}(chi) + c_{t,2}(chi^{-1})` for `|t|` odd.
pub fn verify_ccc(st: &Stickelberger, h: &CyclicSubgroup) -> Result<bool> {
    if h.order % 2 == 0 {
        return Err(Error::domain(format!("|t| = {} is even", h.order)));
    }
    let swan = c_swan(st, h, "x");
    if h.order == 1 {
        return Ok(swan.exponents.iter().all(|&x| x == 0));
    }
    let c = c_family(st, &h.generator, 2, "x")?;
    let g = st.group();
    Ok(st.characters().iter().enumerate().all(|(i, chi)| {
        let inv = chi.inverse(g).index(g);
        c.exponents[i] + c.exponents[inv] == swan.exponents[i]
    }))
}

/// `delta(G)`: 2 when `|G|` is a power of two, else 1.
pub fn delta_of_group(g: &FinAbGroup) -> Result<i64> {
    if g.is_trivial() {
        return Err(Error::domain("delta is defined only for nontrivial G"));
    }
    Ok(if crate::arith::is_power_of_two(g.order()) { 2 } else { 1 })
}

/// `c(chi) + c(chi^{-1})` for the family element used at the distinguished place.
pub fn verify_swan2b_exponent(st: &Stickelberger, t: &GroupElement, chi: &Character) -> Result<i64> {
    let g = st.group();
    check_nonidentity(g, t)?;
    chi.validate(g)?;
    if chi.is_trivial_on(g, t) {
        return Err(Error::domain("chi(t) = 1"));
    }
    let delta = delta_of_group(g)?;
    let variant = if delta == 2 {
        1
    } else {
        if g.elem_order(t)? % 2 == 0 {
            return Err(Error::domain("|t| must be odd when delta(G) = 1"));
        }
        2
    };
    let c = c_family(st, t, variant, "pi")?;
    Ok(c.exponents[chi.index(g)] + c.exponents[chi.inverse(g).index(g)])
}

/// Per place, `chi -> <chi,s_v> + <chi,-s_v>`.
///
/// Each result is checked against `c_swan(<s_v>)`.
pub fn resolvent_exponents(st: &Stickelberger, data: &[RamificationDatum]) -> Result<Vec<MonomialHom>> {
    let g = st.group();
    let mut out = Vec::with_capacity(data.len());
    for d in data {
        g.check_element(&d.s_v)?;
        let s = g.index_of(&d.s_v);
        let minus = g.index_of(&g.neg(&d.s_v));
        let exps = (0..st.characters().len())
            .map(|chi| st.pairing_at(chi, s) + st.pairing_at(chi, minus))
            .collect();
        let hom = MonomialHom::from_rationals(DomainKind::Characters, &d.place_label, exps)?;
        let h = CyclicSubgroup::new(g, d.s_v.clone())?;
        assert_eq!(hom.exponents, c_swan(st, &h, &d.place_label).exponents);
        out.push(hom);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Config;
    use crate::stickelberger::is_equivariant;

    fn st(f: &[i64]) -> Stickelberger {
        Stickelberger::new(&FinAbGroup::new(f.to_vec()).unwrap(), &Config::default()).unwrap()
    }

    fn el(c: &[i64]) -> GroupElement {
        GroupElement::new(c.to_vec())
    }

    fn cyc(s: &Stickelberger, c: &[i64]) -> CyclicSubgroup {
        CyclicSubgroup::new(s.group(), el(c)).unwrap()
    }

    #[test]
    fn c_swan_examples() {
        let c2 = st(&[2]);
        assert_eq!(c_swan(&c2, &cyc(&c2, &[1]), "r").exponents, vec![0, 1]);
        assert_eq!(c_swan(&c2, &cyc(&c2, &[0]), "r").exponents, vec![0, 0]);
        let c4 = st(&[4]);
        assert_eq!(c_swan(&c4, &cyc(&c4, &[2]), "r").exponents, vec![0, 1, 0, 1]);
    }

    #[test]
    fn c_family_examples() {
        let c3 = st(&[3]);
        assert_eq!(c_family(&c3, &el(&[1]), 2, "x").unwrap().exponents, vec![0, 0, 1]);
        let c4 = st(&[4]);
        let c = c_family(&c4, &el(&[1]), 1, "x").unwrap();
        assert_eq!(c.exponents, vec![0, 1, 1, 1]);
        let c4b = c_family(&c4, &el(&[2]), 1, "x").unwrap();
        // chi(t^2) = 1 exactly for even j
        assert_eq!(c4b.exponents[0], 0);
        assert_eq!(c4b.exponents[2], 0);
        assert!(matches!(c_family(&c4, &el(&[0]), 1, "x"), Err(Error::Domain(_))));
    }

    #[test]
    fn g_family_examples() {
        let c2 = st(&[2]);
        assert_eq!(g_family(&c2, &el(&[1]), 1, "x").unwrap().exponents, vec![0, 2]);
        let c5 = st(&[5]);
        assert_eq!(g_family(&c5, &el(&[1]), 1, "x").unwrap().exponents, vec![0, 1, 0, 0, 1]);
        let c3 = st(&[3]);
        assert_eq!(g_family(&c3, &el(&[1]), 2, "x").unwrap().exponents, vec![0, 2, -1]);
        let c4 = st(&[4]);
        assert!(matches!(g_family(&c4, &el(&[1]), 2, "x"), Err(Error::Domain(_))));
    }

    #[test]
    fn rag_examples() {
        let c3 = st(&[3]);
        let t = el(&[1]);
        let c = c_family(&c3, &t, 2, "x").unwrap();
        let g = g_family(&c3, &t, 2, "x").unwrap();
        assert!(verify_rag_equals_theta_t(&c3, &c, &g).unwrap());
        let c2 = st(&[2]);
        let c = c_family(&c2, &el(&[1]), 1, "x").unwrap();
        let g = g_family(&c2, &el(&[1]), 1, "x").unwrap();
        assert!(verify_rag_equals_theta_t(&c2, &c, &g).unwrap());
        let swan = c_swan(&c3, &cyc(&c3, &[1]), "x");
        let zero = MonomialHom::zero(DomainKind::GroupElements, "x", 3);
        assert!(!verify_rag_equals_theta_t(&c3, &swan, &zero).unwrap());
    }

    #[test]
    fn swan1a_examples() {
        let c5 = st(&[5]);
        let h = cyc(&c5, &[1]);
        let half = GaloisModel::new(5, &[4]).unwrap();
        assert_eq!(swan1a_g(&c5, &h, &half, "r").unwrap().support(), vec![1, 4]);
        let full = GaloisModel::full(5).unwrap();
        assert_eq!(swan1a_g(&c5, &h, &full, "r").unwrap().support(), vec![1, 2, 3, 4]);
        let c3 = st(&[3]);
        let h3 = cyc(&c3, &[1]);
        let triv = GaloisModel::trivial(3).unwrap();
        assert_eq!(swan1a_g(&c3, &h3, &triv, "r").unwrap().support(), vec![1, 2]);
        assert!(verify_swan1a(&c5, &h, &half).unwrap());
        assert!(verify_swan1a(&c3, &h3, &GaloisModel::full(3).unwrap()).unwrap());
        let g = swan1a_g(&c5, &h, &half, "r").unwrap();
        assert!(is_equivariant(&c5, &g, &half).unwrap());
    }

    #[test]
    fn swan1a_order_two() {
        let c2 = st(&[2]);
        let h = cyc(&c2, &[1]);
        let model = GaloisModel::full(2).unwrap();
        assert_eq!(swan1a_g(&c2, &h, &model, "r").unwrap().exponents, vec![0, 2]);
        assert!(verify_swan1a(&c2, &h, &model).unwrap());
    }

    #[test]
    fn ccc_examples() {
        let c3 = st(&[3]);
        assert!(verify_ccc(&c3, &cyc(&c3, &[1])).unwrap());
        let c9 = st(&[9]);
        assert!(verify_ccc(&c9, &cyc(&c9, &[1])).unwrap());
        let c4 = st(&[4]);
        assert!(matches!(verify_ccc(&c4, &cyc(&c4, &[1])), Err(Error::Domain(_))));
    }

    #[test]
    fn delta_examples() {
        let grp = |f: &[i64]| FinAbGroup::new(f.to_vec()).unwrap();
        assert_eq!(delta_of_group(&grp(&[4])).unwrap(), 2);
        assert_eq!(delta_of_group(&grp(&[6])).unwrap(), 1);
        assert_eq!(delta_of_group(&grp(&[2, 2])).unwrap(), 2);
        assert!(delta_of_group(&FinAbGroup::trivial()).is_err());
    }

    #[test]
    fn swan2b_examples() {
        let faithful = Character { exponents: vec![1] };
        assert_eq!(verify_swan2b_exponent(&st(&[3]), &el(&[1]), &faithful).unwrap(), 1);
        assert_eq!(verify_swan2b_exponent(&st(&[4]), &el(&[1]), &faithful).unwrap(), 2);
        assert_eq!(verify_swan2b_exponent(&st(&[2]), &el(&[1]), &faithful).unwrap(), 2);
        let trivial = Character { exponents: vec![0] };
        assert!(verify_swan2b_exponent(&st(&[3]), &el(&[1]), &trivial).is_err());
    }

    #[test]
    fn resolvent_examples() {
        let c3 = st(&[3]);
        let data = vec![
            RamificationDatum { place_label: "v1".into(), s_v: el(&[0]) },
            RamificationDatum { place_label: "v2".into(), s_v: el(&[1]) },
        ];
        let out = resolvent_exponents(&c3, &data).unwrap();
        assert_eq!(out[0].exponents, vec![0, 0, 0]);
        assert_eq!(out[1].exponents, vec![0, 1, 1]);
        let c4 = st(&[4]);
        let out = resolvent_exponents(&c4, &[RamificationDatum { place_label: "v".into(), s_v: el(&[2]) }]).unwrap();
        assert_eq!(out[0].exponents, vec![0, 1, 0, 1]);
    }

    #[test]
    fn hom_json_shape() {
        let h = MonomialHom::zero(DomainKind::GroupElements, "x", 2);
        let v = serde_json::to_value(&h).unwrap();
        assert_eq!(v["domain_kind"], "group_elements");
        assert_eq!(v["exponents"], serde_json::json!([0, 0]));
    }
}
