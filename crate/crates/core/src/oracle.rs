//! Brute-force ring-closure decision and witness handling.
//!
//! For a single minimal polynomial class every `f ∈ Int(S,R)` has a linear
//! remainder `γx + c`, and `γ` ranges over the `γ` with `γδ ∈ R` for every
//! difference `δ`. Such `γ` satisfy `Γγ ∈ R`, so enumerating `(1/Γ)R / R`
//! covers every candidate; `S` is a ringset iff each candidate also keeps
//! `γ(uα - αu)` inside `R` for the unit generators `u`.

use crate::classify::{self, delta_and_gamma, is_reduced, QuatSet};
use crate::error::{Error, Result};
use crate::qpoly::{order_denominator, QPoly};
use crate::quat::{min_poly, unit_generators, MinPoly, Quat, RingTag};
use crate::residue::{self, ResidueRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partner {
    Unit(Quat),
    Poly(QPoly),
}

impl Partner {
    pub fn as_poly(&self) -> QPoly {
        match self {
            Partner::Unit(u) => QPoly::constant(*u),
            Partner::Poly(g) => g.clone(),
        }
    }
}

/// Two integer-valued polynomials whose product leaves the order at
/// `fail_at`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub ring: RingTag,
    pub f: QPoly,
    pub partner: Partner,
    pub fail_at: Quat,
    pub fail_value: Quat,
    /// Common denominator of `f` times that of the partner.
    pub modulus: i64,
}

fn poly_order_den(p: &QPoly, ring: RingTag) -> i64 {
    p.coeffs()
        .iter()
        .fold(1i64, |n, c| num_integer::lcm(n, order_denominator(c, ring)))
}

impl Witness {
    /// Fills in the failing value and the modulus.
    pub fn new(ring: RingTag, f: QPoly, partner: Partner, fail_at: Quat) -> Result<Witness> {
        let pp = partner.as_poly();
        let fail_value = f.checked_mul(&pp)?.eval_right(&fail_at)?;
        let modulus = poly_order_den(&f, ring)
            .checked_mul(poly_order_den(&pp, ring))
            .ok_or(Error::Overflow)?;
        Ok(Witness {
            ring,
            f,
            partner,
            fail_at,
            fail_value,
            modulus,
        })
    }

    pub fn product(&self) -> Result<QPoly> {
        self.f.checked_mul(&self.partner.as_poly())
    }
}

/// A representative `(Σ tₖ bₖ)/Γ` of `(1/Γ)R / R` in the lattice basis `bₖ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetRep {
    pub numerators: [i64; 4],
    pub modulus: i64,
}

impl CosetRep {
    pub fn gamma(&self, ring: RingTag) -> Result<Quat> {
        residue::from_coordinates(&self.numerators, ring)?.div_int(self.modulus)
    }
}

/// All `Γ⁴` representatives, first numerator varying fastest.
pub fn cosets(modulus: i64) -> impl Iterator<Item = CosetRep> {
    let m = modulus.max(1);
    (0..m).flat_map(move |t3| {
        (0..m).flat_map(move |t2| {
            (0..m).flat_map(move |t1| {
                (0..m).map(move |t0| CosetRep {
                    numerators: [t0, t1, t2, t3],
                    modulus: m,
                })
            })
        })
    })
}

#[derive(Debug, Clone)]
pub struct BruteForce {
    pub is_ringset: bool,
    pub witness: Option<Witness>,
    /// Coset representatives scanned.
    pub cosets: u64,
    /// Representatives passing the admissibility test.
    pub admissible: u64,
}

/// Lattice coordinates of `bₖ·c` for each basis element `bₖ`.
fn left_mul_matrix(c: &Quat, ring: RingTag) -> Result<[[i64; 4]; 4]> {
    let b = residue::basis(ring);
    let mut out = [[0; 4]; 4];
    for k in 0..4 {
        out[k] = residue::coordinates(&b[k].checked_mul(c)?, ring)?;
    }
    Ok(out)
}

/// Whether `(Σ tₖ bₖ)·c / m` lies in the order.
fn lands_in_order(t: &[i64; 4], mat: &[[i64; 4]; 4], m: i64) -> bool {
    (0..4).all(|col| {
        let s: i128 = (0..4)
            .map(|k| i128::from(t[k]) * i128::from(mat[k][col]))
            .sum();
        s % i128::from(m) == 0
    })
}

fn require_class(s: &QuatSet) -> Result<MinPoly> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = min_poly(&s.elems()[0])?;
    if s.elems().iter().any(|q| min_poly(q).ok() != Some(m)) {
        return Err(Error::MixedClasses);
    }
    if m.is_linear() {
        return Err(Error::CentralSet);
    }
    Ok(m)
}

pub fn brute_force_ringset_class(s: &QuatSet, gamma_cap: i64) -> Result<BruteForce> {
    require_class(s)?;
    if s.len() < 2 {
        return Err(Error::precondition(
            "singleton classes are handled by witness_singleton",
        ));
    }
    let ring = s.ring();
    let gamma = delta_and_gamma(s)?.gamma;
    if gamma > gamma_cap {
        return Err(Error::GammaCap {
            gamma,
            cap: gamma_cap,
        });
    }
    // α - β = (α - s₀) - (β - s₀), so differences from s₀ generate Δ(S)
    let base = s.elems()[0];
    let mut admissibility = Vec::new();
    for alpha in &s.elems()[1..] {
        admissibility.push(left_mul_matrix(&alpha.checked_sub(&base)?, ring)?);
    }
    let mut tests = Vec::new();
    for alpha in s.elems() {
        for u in unit_generators(ring) {
            let c = u.commutator(alpha)?;
            if !c.is_zero() {
                tests.push((*alpha, u, left_mul_matrix(&c, ring)?));
            }
        }
    }
    let mut out = BruteForce {
        is_ringset: true,
        witness: None,
        cosets: 0,
        admissible: 0,
    };
    for rep in cosets(gamma) {
        out.cosets += 1;
        let t = &rep.numerators;
        if !admissibility.iter().all(|m| lands_in_order(t, m, gamma)) {
            continue;
        }
        out.admissible += 1;
        if let Some((alpha, u, _)) = tests.iter().find(|(_, _, m)| !lands_in_order(t, m, gamma)) {
            let g = rep.gamma(ring)?;
            let f = QPoly::linear(g, g.checked_mul(&base)?.checked_neg()?);
            out.is_ringset = false;
            out.witness = Some(Witness::new(ring, f, Partner::Unit(*u), *alpha)?);
            return Ok(out);
        }
    }
    Ok(out)
}

/// Per-class brute force over an arbitrary finite set; a failing class's
/// witness is lifted to the whole set.
pub fn brute_force_ringset(s: &QuatSet, gamma_cap: i64) -> Result<BruteForce> {
    let mut out = BruteForce {
        is_ringset: true,
        witness: None,
        cosets: 0,
        admissible: 0,
    };
    let mut failure: Option<(Witness, QuatSet)> = None;
    for (m, part) in classify::partition_by_min_poly(s)? {
        if m.is_linear() {
            continue;
        }
        let w = if part.len() == 1 {
            Some(witness_singleton(&part.elems()[0], s.ring())?)
        } else {
            let r = brute_force_ringset_class(&part, gamma_cap)?;
            out.cosets += r.cosets;
            out.admissible += r.admissible;
            r.witness
        };
        if let Some(w) = w {
            out.is_ringset = false;
            if failure.is_none() {
                failure = Some((w, part));
            }
        }
    }
    out.witness = match failure {
        None => None,
        Some((w, part)) if part.len() == s.len() => Some(w),
        Some((w, part)) => {
            let f = classify::separator(&s.without(&part), &part)?;
            Some(lift_witness(&w, &f, s)?)
        }
    };
    Ok(out)
}

fn divisible(q: &Quat, n: i64, ring: RingTag) -> Result<bool> {
    Ok(q.div_int(n)?.in_ring(ring))
}

/// Smallest power of two `d` with `c ∉ dR`.
fn two_adic_escape(c: &Quat, ring: RingTag) -> Result<i64> {
    let mut d: i64 = 2;
    while divisible(c, d, ring)? {
        d = d.checked_mul(2).ok_or(Error::Overflow)?;
    }
    Ok(d)
}

/// `f = (x-α)/d`, `g = x-β`: `(fg)(α) = (αβ-βα)/d ∉ R`.
pub fn witness_singleton(alpha: &Quat, ring: RingTag) -> Result<Witness> {
    alpha.ensure_in(ring)?;
    if alpha.is_rational() {
        return Err(Error::CentralSet);
    }
    let mut best: Option<(i64, Quat)> = None;
    for beta in unit_generators(ring) {
        let c = alpha.commutator(&beta)?;
        if c.is_zero() {
            continue;
        }
        let d = two_adic_escape(&c, ring)?;
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, beta));
        }
    }
    let (d, beta) = best.ok_or_else(|| Error::precondition("no non-commuting generator"))?;
    let f = QPoly::x_minus(alpha)?.div_int(d)?;
    Witness::new(ring, f, Partner::Poly(QPoly::x_minus(&beta)?), *alpha)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// First unit generator `u` with `(fu)(β) ∉ R`.
fn failing_unit(f: &QPoly, beta: &Quat, ring: RingTag) -> Result<Quat> {
    for u in unit_generators(ring) {
        if !f.scale_right(&u)?.eval_right(beta)?.in_ring(ring) {
            return Ok(u);
        }
    }
    Err(Error::precondition(format!(
        "no unit generator fails for {f} at {beta}"
    )))
}

fn require_reduced_pair(s: &QuatSet) -> Result<i64> {
    require_class(s)?;
    if s.len() < 2 {
        return Err(Error::precondition("need at least two elements"));
    }
    if !is_reduced(s)? {
        return Err(Error::NotReduced);
    }
    Ok(delta_and_gamma(s)?.gamma)
}

/// `f = γ(x-β)/p` for an odd prime `p | Γ(S)`.
pub fn witness_odd_prime(s: &QuatSet, p: i64) -> Result<Witness> {
    let gamma = require_reduced_pair(s)?;
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not an odd prime")));
    }
    if gamma % p != 0 {
        return Err(Error::precondition(format!(
            "{p} does not divide Γ = {gamma}"
        )));
    }
    let ring = s.ring();
    let beta = *s
        .elems()
        .iter()
        .find(|b| b.numerators()[1..].iter().any(|c| c % p != 0))
        .ok_or_else(|| {
            Error::precondition(format!("every imaginary coefficient is divisible by {p}"))
        })?;
    let mut delta_beta = Vec::new();
    for a in s.elems().iter().filter(|a| **a != beta) {
        delta_beta.push(a.checked_sub(&beta)?);
    }
    delta_beta.sort();
    let mut lead = None;
    if delta_beta
        .iter()
        .all(|d| divisible(d, p, ring).unwrap_or(false))
    {
        lead = Some(Quat::ONE);
    } else {
        for g in &delta_beta {
            if divisible(g, p, ring)? {
                continue;
            }
            let mut kills = true;
            for d in &delta_beta {
                kills &= divisible(&g.checked_mul(d)?, p, ring)?;
            }
            if kills {
                lead = Some(*g);
                break;
            }
        }
    }
    let g = lead.ok_or_else(|| Error::precondition("no nilpotent leading coefficient found"))?;
    let f = QPoly::linear(g, g.checked_mul(&beta)?.checked_neg()?).div_int(p)?;
    let u = failing_unit(&f, &beta, ring)?;
    Witness::new(ring, f, Partner::Unit(u), beta)
}

/// Leading factor, denominator, and the condition on `β` for the three
/// power-of-two constructions.
struct TwoPlan {
    lead: Quat,
    den: i64,
    qualifies: fn(&Quat) -> bool,
}

fn has_odd_imag(b: &Quat) -> bool {
    b.numerators()[1..].iter().any(|c| c % 2 != 0)
}

fn mixed_imag_parity(b: &Quat) -> bool {
    let n = b.numerators();
    has_odd_imag(b) && n[1..].iter().any(|c| c % 2 == 0)
}

fn two_plan(s: &QuatSet) -> Result<TwoPlan> {
    let gamma = require_reduced_pair(s)?;
    let lipschitz = s.elems()[0].is_lipschitz();
    match s.ring() {
        RingTag::L if gamma % 16 == 0 => Ok(TwoPlan {
            lead: Quat::ONE,
            den: 4,
            qualifies: has_odd_imag,
        }),
        RingTag::H if gamma % 4 == 0 && lipschitz => Ok(TwoPlan {
            lead: Quat::ONE,
            den: 2,
            qualifies: mixed_imag_parity,
        }),
        RingTag::H if gamma % 4 == 0 => Ok(TwoPlan {
            lead: Quat::ONE,
            den: 2,
            qualifies: |_| true,
        }),
        RingTag::L if gamma == 8 => {
            let rs = classify::gamma8_residues(&delta_and_gamma(s)?)?;
            let [r] = rs.as_slice() else {
                return Err(Error::precondition("Δ mod 4 meets more than one residue"));
            };
            // 2i+2j pairs with k, 2i+2k with j, 2j+2k with i
            let w = match r.numerators() {
                [0, 2, 2, 0] => Quat::K,
                [0, 2, 0, 2] => Quat::J,
                _ => Quat::I,
            };
            Ok(TwoPlan {
                lead: Quat::ONE.checked_add(&w)?,
                den: 4,
                qualifies: has_odd_imag,
            })
        }
        _ => Err(Error::precondition(format!(
            "no power-of-two obstruction at Γ = {gamma}"
        ))),
    }
}

/// The power-of-two obstruction, with `β` the first qualifying element.
pub fn witness_power_two(s: &QuatSet) -> Result<Witness> {
    let plan = two_plan(s)?;
    let beta = *s
        .elems()
        .iter()
        .find(|b| (plan.qualifies)(b))
        .ok_or_else(|| Error::precondition("no qualifying base point"))?;
    power_two_from(s, &plan, &beta)
}

/// As [`witness_power_two`] but anchored at a chosen `β ∈ S`.
pub fn witness_power_two_at(s: &QuatSet, beta: &Quat) -> Result<Witness> {
    let plan = two_plan(s)?;
    if !s.contains(beta) || !(plan.qualifies)(beta) {
        return Err(Error::precondition(format!(
            "{beta} cannot anchor the obstruction"
        )));
    }
    power_two_from(s, &plan, beta)
}

fn power_two_from(s: &QuatSet, plan: &TwoPlan, beta: &Quat) -> Result<Witness> {
    let f = QPoly::x_minus(beta)?
        .scale_left(&plan.lead)?
        .div_int(plan.den)?;
    let u = failing_unit(&f, beta, s.ring())?;
    Witness::new(s.ring(), f, Partner::Unit(u), *beta)
}

/// Re-checks a witness in `R/nR`, `n` the witness modulus.
pub fn verify_witness(w: &Witness, s: &QuatSet) -> bool {
    verify_inner(w, s).unwrap_or(false)
}

fn verify_inner(w: &Witness, s: &QuatSet) -> Result<bool> {
    let ring = s.ring();
    if w.ring != ring || !s.contains(&w.fail_at) {
        return Ok(false);
    }
    let pp = w.partner.as_poly();
    let (gf, nf) = w.f.over_order(ring)?;
    let (gp, np) = pp.over_order(ring)?;
    let modulus = nf.checked_mul(np).ok_or(Error::Overflow)?;
    if modulus != w.modulus {
        return Ok(false);
    }
    let rr = ResidueRing::new(ring, modulus)?;
    let lift = |cs: &[Quat], k: i64| -> Result<Vec<residue::Residue>> {
        cs.iter().map(|c| rr.reduce(&c.scale(k)?)).collect()
    };
    // f = gf·np / M and partner = gp·nf / M
    let f_num = lift(&gf, np)?;
    let p_num = lift(&gp, nf)?;
    for a in s.elems() {
        let at = rr.reduce(a)?;
        if !rr.is_zero(&rr.poly_eval(&f_num, &at)) || !rr.is_zero(&rr.poly_eval(&p_num, &at)) {
            return Ok(false);
        }
    }
    // f·partner = gf·gp / M
    let prod = rr.poly_mul(&lift(&gf, 1)?, &lift(&gp, 1)?);
    if rr.is_zero(&rr.poly_eval(&prod, &rr.reduce(&w.fail_at)?)) {
        return Ok(false);
    }
    let exact = w.product()?.eval_right(&w.fail_at)?;
    Ok(exact == w.fail_value && !exact.in_ring(ring))
}

/// Moves a witness for `T` to `S = a + nT` by substituting `x ↦ (x-a)/n`.
pub fn transport_witness(w: &Witness, a: i64, n: i64) -> Result<Witness> {
    if n < 1 {
        return Err(Error::precondition("scale must be positive"));
    }
    let inner = QPoly::linear(Quat::integer(1), Quat::integer(-a)).div_int(n)?;
    let f = w.f.compose_central(&inner)?;
    let partner = match &w.partner {
        Partner::Unit(u) => Partner::Unit(*u),
        Partner::Poly(g) => Partner::Poly(g.compose_central(&inner)?),
    };
    let at = w.fail_at.scale(n)?.checked_add(&Quat::integer(a))?;
    let out = Witness::new(w.ring, f, partner, at)?;
    if out.fail_value != w.fail_value {
        return Err(Error::InvalidWitness(
            "transport changed the failing value".into(),
        ));
    }
    Ok(out)
}

/// `(fF, partner·F)` for a separator `F` that is 1 on the witness's class.
pub fn lift_witness(w: &Witness, sep: &QPoly, u: &QuatSet) -> Result<Witness> {
    if !sep.has_rational_coefficients() {
        return Err(Error::precondition(
            "separator must have rational coefficients",
        ));
    }
    let m = min_poly(&w.fail_at)?;
    let mut class = Vec::new();
    for a in u.elems() {
        let expect = if min_poly(a)? == m {
            class.push(*a);
            Quat::ONE
        } else {
            Quat::ZERO
        };
        if sep.eval_right(a)? != expect {
            return Err(Error::precondition(format!(
                "{sep} does not separate at {a}"
            )));
        }
    }
    if !verify_witness(w, &QuatSet::new(u.ring(), class)?) {
        return Err(Error::InvalidWitness(
            "cannot lift a witness that does not verify".into(),
        ));
    }
    let f = w.f.checked_mul(sep)?;
    let partner = Partner::Poly(w.partner.as_poly().checked_mul(sep)?);
    let out = Witness::new(w.ring, f, partner, w.fail_at)?;
    if out.fail_value != w.fail_value || !verify_witness(&out, u) {
        return Err(Error::InvalidWitness(
            "lifted witness does not verify".into(),
        ));
    }
    Ok(out)
}

fn min_polys_agree_mod(a: &MinPoly, b: &MinPoly, n: i64) -> bool {
    let ca = a.coefficients();
    let cb = b.coefficients();
    ca.len() == cb.len()
        && ca.iter().zip(&cb).all(|(x, y)| {
            let d = x - y;
            d.is_integer() && d.to_integer() % n == 0
        })
}

/// For every `2 ≤ n ≤ n_max` and `α ∈ S`, looks for `β ∈ S` with matching
/// minimal polynomial mod `n` and `α - β ≡ ±(i - j) (mod n)`.
pub fn check_prop56_hypothesis(s: &QuatSet, n_max: i64) -> Result<bool> {
    if n_max < 2 {
        return Err(Error::precondition("n_max must be at least 2"));
    }
    let ring = s.ring();
    let imj = Quat::from_ints([0, 1, -1, 0]);
    let mins = s.elems().iter().map(min_poly).collect::<Result<Vec<_>>>()?;
    for n in 2..=n_max {
        for (a, ma) in s.elems().iter().zip(&mins) {
            let mut found = false;
            for (b, mb) in s.elems().iter().zip(&mins) {
                if !min_polys_agree_mod(ma, mb, n) {
                    continue;
                }
                let d = a.checked_sub(b)?;
                if divisible(&d.checked_sub(&imj)?, n, ring)?
                    || divisible(&d.checked_add(&imj)?, n, ring)?
                {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{a+i : n²-n ≤ a ≤ n²-1} ∪ {a+j : n² ≤ a ≤ n²+n-1}`.
pub fn tn_example(n: i64) -> Result<Vec<Quat>> {
    if n < 2 {
        return Err(Error::precondition("n must be at least 2"));
    }
    let sq = n.checked_mul(n).ok_or(Error::Overflow)?;
    let mut out: Vec<Quat> = (sq - n..sq)
        .map(|a| Quat::from_ints([a, 1, 0, 0]))
        .collect();
    out.extend((sq..sq + n).map(|a| Quat::from_ints([a, 0, 1, 0])));
    Ok(out)
}
