//! The decision pipeline: partition by minimal polynomial, reduce each class
//! to `a + nT`, and read the verdict off `Γ(T)`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{self, Witness};
use crate::qpoly::QPoly;
use crate::quat::{min_poly, parse_literal, MinPoly, Quat, RingTag};

/// A finite subset of one order, sorted and without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuatSet {
    ring: RingTag,
    elems: Vec<Quat>,
}

impl QuatSet {
    pub fn new(ring: RingTag, elems: impl IntoIterator<Item = Quat>) -> Result<QuatSet> {
        let mut elems: Vec<Quat> = elems.into_iter().collect();
        for q in &elems {
            q.ensure_in(ring)?;
        }
        elems.sort();
        elems.dedup();
        Ok(QuatSet { ring, elems })
    }

    /// Comma- or newline-separated literals.
    pub fn parse(ring: RingTag, text: &str) -> Result<QuatSet> {
        QuatSet::new(ring, parse_elements(text)?)
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn elems(&self) -> &[Quat] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, q: &Quat) -> bool {
        self.elems.binary_search(q).is_ok()
    }

    pub fn union(&self, other: &QuatSet) -> Result<QuatSet> {
        if self.ring != other.ring {
            return Err(Error::precondition("union of sets over different orders"));
        }
        QuatSet::new(self.ring, self.elems.iter().chain(&other.elems).copied())
    }

    /// `{a + n·α : α ∈ S}`.
    pub fn translate_scale(&self, a: i64, n: i64) -> Result<QuatSet> {
        let shift = Quat::integer(a);
        let out = self
            .elems
            .iter()
            .map(|q| q.scale(n)?.checked_add(&shift))
            .collect::<Result<Vec<_>>>()?;
        QuatSet::new(self.ring, out)
    }

    pub fn without(&self, other: &QuatSet) -> QuatSet {
        QuatSet {
            ring: self.ring,
            elems: self
                .elems
                .iter()
                .filter(|q| !other.contains(q))
                .copied()
                .collect(),
        }
    }
}

impl fmt::Display for QuatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, q) in self.elems.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

/// Splits on commas and newlines; parse errors name the 1-based token.
pub fn parse_elements(text: &str) -> Result<Vec<Quat>> {
    let body = text.trim_end();
    let mut out = Vec::new();
    if body.trim().is_empty() {
        return Ok(out);
    }
    for (idx, tok) in body.split([',', '\n']).enumerate() {
        let q = parse_literal(tok).map_err(|(column, message)| Error::Parse {
            token: idx + 1,
            column,
            message,
        })?;
        out.push(q);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaStats {
    /// `Δ(S)`, including 0, sorted.
    pub deltas: Vec<Quat>,
    /// gcd of the norms of `Δ(S)`; 0 for a singleton.
    pub gamma: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub a: i64,
    pub n: i64,
    pub t: QuatSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    IntegerClass,
    SingletonNonCentral,
    GammaRule,
    Gamma8Residues,
    OddPrime,
    PowerOfTwo,
}

#[derive(Debug, Clone)]
pub struct ClassVerdict {
    pub min_poly: MinPoly,
    /// The class itself, as a subset of the input.
    pub set: QuatSet,
    pub reduced: Option<ReducedForm>,
    pub gamma: Option<i64>,
    pub rule: Rule,
    pub detail: String,
    pub is_ringset: bool,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub ring: RingTag,
    pub is_ringset: bool,
    pub classes: Vec<ClassVerdict>,
    pub witness: Option<Witness>,
}

pub fn partition_by_min_poly(s: &QuatSet) -> Result<Vec<(MinPoly, QuatSet)>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut groups: BTreeMap<MinPoly, Vec<Quat>> = BTreeMap::new();
    for q in s.elems() {
        groups.entry(min_poly(q)?).or_default().push(*q);
    }
    groups
        .into_iter()
        .map(|(m, v)| Ok((m, QuatSet::new(s.ring(), v)?)))
        .collect()
}

pub fn delta_and_gamma(s: &QuatSet) -> Result<DeltaStats> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut deltas = Vec::with_capacity(s.len() * s.len());
    let mut gamma: i64 = 0;
    for a in s.elems() {
        for b in s.elems() {
            let d = a.checked_sub(b)?;
            gamma = gamma.gcd(&d.norm_int()?);
            deltas.push(d);
        }
    }
    deltas.sort();
    deltas.dedup();
    Ok(DeltaStats { deltas, gamma })
}

/// Integers `cᵢ` and differences `δᵢ` with `Σ cᵢ N(δᵢ) = Γ`.
pub fn gamma_combination(stats: &DeltaStats) -> Result<Vec<(i64, Quat)>> {
    if stats.gamma == 0 {
        return Err(Error::precondition("Γ = 0 has no combination"));
    }
    let mut normed = Vec::new();
    for d in stats.deltas.iter().filter(|d| !d.is_zero()) {
        normed.push((d.norm_int()?, *d));
    }
    normed.sort_by_key(|&(n, _)| n);
    if let Some(&(_, d)) = normed.iter().find(|&&(n, _)| n == stats.gamma) {
        return Ok(vec![(1, d)]);
    }
    let mut terms: Vec<(i64, Quat)> = Vec::new();
    let mut g: i64 = 0;
    for (n, d) in normed {
        if g != 0 && n % g == 0 {
            continue;
        }
        if g == 0 {
            g = n;
            terms.push((1, d));
            continue;
        }
        let e = g.extended_gcd(&n);
        for t in &mut terms {
            t.0 = t.0.checked_mul(e.x).ok_or(Error::Overflow)?;
        }
        terms.push((e.y, d));
        g = e.gcd;
    }
    terms.retain(|t| t.0 != 0);
    Ok(terms)
}

fn single_quadratic_class(s: &QuatSet) -> Result<MinPoly> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = min_poly(&s.elems()[0])?;
    for q in &s.elems()[1..] {
        if min_poly(q)? != m {
            return Err(Error::MixedClasses);
        }
    }
    if m.is_linear() {
        return Err(Error::CentralSet);
    }
    Ok(m)
}

/// gcd of all doubled imaginary coordinates.
fn imaginary_gcd(s: &QuatSet) -> i64 {
    let mut g = 0i64;
    for q in s.elems() {
        let d = q
            .doubled()
            .expect("order elements have denominator at most 2");
        for c in &d[1..] {
            g = g.gcd(c);
        }
    }
    g
}

fn all_imaginary_odd(s: &QuatSet) -> bool {
    s.elems()
        .iter()
        .all(|q| q.numerators()[1..].iter().all(|c| c % 2 != 0))
}

pub fn is_reduced(s: &QuatSet) -> Result<bool> {
    single_quadratic_class(s)?;
    let g = imaginary_gcd(s);
    let lipschitz = s.elems()[0].is_lipschitz();
    Ok(match (s.ring(), lipschitz) {
        // doubled coordinates: gcd 2 means the true gcd is 1
        (RingTag::L, _) => g == 2,
        (RingTag::H, true) => g == 2 && !all_imaginary_odd(s),
        (RingTag::H, false) => g == 1,
    })
}

pub fn reduce_set(s: &QuatSet) -> Result<ReducedForm> {
    single_quadratic_class(s)?;
    let ring = s.ring();
    let first = s.elems()[0];
    let form = if first.is_lipschitz() {
        let a0 = first.numerators()[0];
        let g = imaginary_gcd(s) / 2;
        let shift = Quat::integer(a0);
        let t1 = s
            .elems()
            .iter()
            .map(|q| q.checked_sub(&shift)?.div_int(g))
            .collect::<Result<Vec<_>>>()?;
        let t1 = QuatSet::new(ring, t1)?;
        if ring == RingTag::H && all_imaginary_odd(&t1) {
            let t = t1
                .elems()
                .iter()
                .map(|q| q.checked_add(&Quat::ONE)?.div_int(2))
                .collect::<Result<Vec<_>>>()?;
            ReducedForm {
                a: a0 - g,
                n: 2 * g,
                t: QuatSet::new(ring, t)?,
            }
        } else {
            ReducedForm { a: a0, n: g, t: t1 }
        }
    } else {
        let b0 = first.numerators()[0];
        let g = imaginary_gcd(s);
        let a = (g - b0) / 2;
        let t = s
            .elems()
            .iter()
            .map(|q| q.checked_add(&Quat::integer(a))?.div_int(g))
            .collect::<Result<Vec<_>>>()?;
        ReducedForm {
            a: -a,
            n: g,
            t: QuatSet::new(ring, t)?,
        }
    };
    debug_assert!(is_reduced(&form.t).unwrap_or(false));
    Ok(form)
}

fn smallest_odd_prime(mut g: i64) -> Option<i64> {
    while g % 2 == 0 && g != 0 {
        g /= 2;
    }
    let mut p = 3;
    while p * p <= g {
        if g % p == 0 {
            return Some(p);
        }
        p += 2;
    }
    (g > 1).then_some(g)
}

/// The residues `2i+2j`, `2i+2k`, `2j+2k` met by `Δ(S) mod 4`.
pub fn gamma8_residues(stats: &DeltaStats) -> Result<Vec<Quat>> {
    let mut out = Vec::new();
    for d in &stats.deltas {
        let r = d.rem_euclid(4)?;
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort();
    let allowed = [[0, 2, 2, 0], [0, 2, 0, 2], [0, 0, 2, 2]].map(Quat::from_ints);
    if let Some(bad) = out.iter().find(|r| !allowed.contains(r)) {
        return Err(Error::precondition(format!(
            "Δ mod 4 contains {bad}, outside {{2i+2j, 2i+2k, 2j+2k}}"
        )));
    }
    Ok(out)
}

fn fmt_residues(rs: &[Quat]) -> String {
    rs.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Verdict for a reduced set; the witness, if any, is valid for `t` itself.
pub fn classify_reduced(t: &QuatSet) -> Result<Verdict> {
    let m = single_quadratic_class(t)?;
    if !is_reduced(t)? {
        return Err(Error::NotReduced);
    }
    let ring = t.ring();
    let class = |gamma, rule, detail: String, ok| ClassVerdict {
        min_poly: m,
        set: t.clone(),
        reduced: Some(ReducedForm {
            a: 0,
            n: 1,
            t: t.clone(),
        }),
        gamma,
        rule,
        detail,
        is_ringset: ok,
    };
    let verdict = |c: ClassVerdict, w: Option<Witness>| Verdict {
        ring,
        is_ringset: c.is_ringset,
        classes: vec![c],
        witness: w,
    };
    if t.len() == 1 {
        let w = oracle::witness_singleton(&t.elems()[0], ring)?;
        let c = class(
            Some(0),
            Rule::SingletonNonCentral,
            "non-central singleton".into(),
            false,
        );
        return Ok(verdict(c, Some(w)));
    }
    let stats = delta_and_gamma(t)?;
    let g = stats.gamma;
    if let Some(p) = smallest_odd_prime(g) {
        let w = oracle::witness_odd_prime(t, p)?;
        let c = class(
            Some(g),
            Rule::OddPrime,
            format!("{p} divides Γ = {g}"),
            false,
        );
        return Ok(verdict(c, Some(w)));
    }
    let two_power_fails = match ring {
        RingTag::L => g % 16 == 0,
        RingTag::H => g % 4 == 0,
    };
    if two_power_fails {
        let w = oracle::witness_power_two(t)?;
        let bound = if ring == RingTag::L { 16 } else { 4 };
        let c = class(
            Some(g),
            Rule::PowerOfTwo,
            format!("{bound} divides Γ = {g}"),
            false,
        );
        return Ok(verdict(c, Some(w)));
    }
    match (ring, g) {
        (RingTag::L, 8) => {
            let rs = gamma8_residues(&stats)?;
            let ok = rs.len() >= 2;
            let detail = format!("Γ = 8, Δ mod 4 meets {{{}}}", fmt_residues(&rs));
            let w = if ok {
                None
            } else {
                Some(oracle::witness_power_two(t)?)
            };
            Ok(verdict(class(Some(g), Rule::Gamma8Residues, detail, ok), w))
        }
        (RingTag::L, 2 | 4) | (RingTag::H, 1 | 2) => Ok(verdict(
            class(Some(g), Rule::GammaRule, format!("Γ = {g}"), true),
            None,
        )),
        _ => Err(Error::precondition(format!(
            "Γ = {g} is impossible for a reduced {ring} set"
        ))),
    }
}

/// Rational-coefficient `F` with `F(S) = {0}` and `F(T) = {1}`.
pub fn separator(s: &QuatSet, t: &QuatSet) -> Result<QPoly> {
    if t.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = min_poly(&t.elems()[0])?;
    if t.elems().iter().any(|q| min_poly(q).ok() != Some(m)) {
        return Err(Error::MixedClasses);
    }
    let mut mins: Vec<MinPoly> = Vec::new();
    for q in s.elems() {
        let mq = min_poly(q)?;
        if mq == m {
            return Err(Error::precondition(format!(
                "{q} shares the class {m} of T"
            )));
        }
        if !mins.contains(&mq) {
            mins.push(mq);
        }
    }
    mins.sort();
    let mut big_m = QPoly::one();
    for mq in &mins {
        big_m = big_m.checked_mul(&QPoly::from_min_poly(mq))?;
    }
    match m {
        MinPoly::Linear(r) => {
            let at = big_m.eval_right(&Quat::rational(r))?;
            big_m.mul_rational_inverse(&at)
        }
        MinPoly::Quadratic { trace, norm } => {
            let (_, rem) = big_m.divmod_central(&m)?;
            let c1 = rem.coeff(1).real();
            let c0 = rem.coeff(0).real();
            let (t, n) = (
                Rational64::from_integer(trace),
                Rational64::from_integer(norm),
            );
            let d = c0 * c0 + c0 * c1 * t + c1 * c1 * n;
            // s(x) = c1·t + c0 - c1·x is the conjugate of r on the class
            let s_poly = QPoly::from_rationals(&[c1 * t + c0, -c1]);
            let num = big_m.checked_mul(&s_poly)?;
            num.mul_rational_inverse(&Quat::rational(d))
        }
    }
}

impl QPoly {
    fn mul_rational_inverse(&self, r: &Quat) -> Result<QPoly> {
        if !r.is_rational() || r.is_zero() {
            return Err(Error::precondition(format!("cannot divide by {r}")));
        }
        let inv = r.inv()?.real();
        self.coeffs()
            .iter()
            .map(|c| c.mul_rational(inv))
            .collect::<Result<Vec<_>>>()
            .and_then(QPoly::new)
    }
}

/// Decides the whole set, attaching a verified witness when it fails.
pub fn decide_ringset(s: &QuatSet) -> Result<Verdict> {
    let parts = partition_by_min_poly(s)?;
    let ring = s.ring();
    let mut classes = Vec::with_capacity(parts.len());
    let mut witness: Option<(Witness, QuatSet)> = None;
    for (m, part) in parts {
        if m.is_linear() {
            classes.push(ClassVerdict {
                min_poly: m,
                set: part,
                reduced: None,
                gamma: None,
                rule: Rule::IntegerClass,
                detail: "integer class".into(),
                is_ringset: true,
            });
            continue;
        }
        let form = reduce_set(&part)?;
        let (mut cv, w) = if part.len() == 1 {
            let w = oracle::witness_singleton(&part.elems()[0], ring)?;
            let cv = ClassVerdict {
                min_poly: m,
                set: part.clone(),
                reduced: None,
                gamma: Some(0),
                rule: Rule::SingletonNonCentral,
                detail: "non-central singleton".into(),
                is_ringset: false,
            };
            (cv, Some(w))
        } else {
            let mut v = classify_reduced(&form.t)?;
            let w = match v.witness.take() {
                Some(w) => Some(oracle::transport_witness(&w, form.a, form.n)?),
                None => None,
            };
            (v.classes.remove(0), w)
        };
        cv.min_poly = m;
        cv.set = part.clone();
        cv.reduced = Some(form);
        if witness.is_none() {
            if let Some(w) = w {
                witness = Some((w, part));
            }
        }
        classes.push(cv);
    }
    let witness = match witness {
        None => None,
        Some((w, part)) if part.len() == s.len() => Some(w),
        Some((w, part)) => {
            let f = separator(&s.without(&part), &part)?;
            Some(oracle::lift_witness(&w, &f, s)?)
        }
    };
    if let Some(w) = &witness {
        if !oracle::verify_witness(w, s) {
            return Err(Error::InvalidWitness(format!(
                "pipeline witness failed for {s}"
            )));
        }
    }
    Ok(Verdict {
        ring,
        is_ringset: classes.iter().all(|c| c.is_ringset),
        classes,
        witness,
    })
}
