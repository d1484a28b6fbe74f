#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use ringset::classify::{delta_and_gamma, reduce_set};
use ringset::oracle::{verify_witness, Witness};
use ringset::quat::enumerate_class;
use ringset::{MinPoly, Quat, QuatSet, Result, RingTag};

/// Nonempty quadratic classes with |trace| <= 2 and norm <= 30.
pub fn catalog(ring: RingTag) -> Vec<(MinPoly, Vec<Quat>)> {
    let mut out = Vec::new();
    for trace in -2..=2i64 {
        for norm in 1..=30i64 {
            if trace * trace >= 4 * norm {
                continue;
            }
            let m = MinPoly::Quadratic { trace, norm };
            let class = enumerate_class(&m, ring).expect("enumerable class");
            if !class.is_empty() {
                out.push((m, class));
            }
        }
    }
    out
}

/// A subset of one catalog class with `lo..=hi` elements (fewer if the class is small).
pub fn random_subset<R: Rng>(
    rng: &mut R,
    classes: &[(MinPoly, Vec<Quat>)],
    ring: RingTag,
    lo: usize,
    hi: usize,
) -> QuatSet {
    let (_, class) = classes.choose(rng).expect("nonempty catalog");
    let k = rng.gen_range(lo..=hi).min(class.len());
    QuatSet::new(ring, class.choose_multiple(rng, k).copied()).expect("class members")
}

/// The set the oracle should run on: `s` itself if `Γ(s)` fits the cap,
/// else its reduced form `T` (same verdict by translation and scaling).
pub fn oracle_target(s: &QuatSet, cap: i64) -> Result<Option<QuatSet>> {
    if delta_and_gamma(s)?.gamma <= cap {
        return Ok(Some(s.clone()));
    }
    let t = reduce_set(s)?.t;
    if t.len() >= 2 && delta_and_gamma(&t)?.gamma <= cap {
        Ok(Some(t))
    } else {
        Ok(None)
    }
}

/// Exact-arithmetic re-check, independent of the residue-ring path:
/// f and the partner are integer-valued on `s`, and `(f·g)(fail_at)` is the
/// recorded value and lies outside the order.
pub fn exact_witness_check(w: &Witness, s: &QuatSet) -> bool {
    let ring = s.ring();
    let g = w.partner.as_poly();
    let run = || -> Result<bool> {
        if !w.f.is_integer_valued(s.elems(), ring)? || !g.is_integer_valued(s.elems(), ring)? {
            return Ok(false);
        }
        let v = w.f.checked_mul(&g)?.eval_right(&w.fail_at)?;
        Ok(s.contains(&w.fail_at) && v == w.fail_value && !v.in_ring(ring))
    };
    run().unwrap_or(false)
}

/// Both verification paths agree that `w` certifies `s` is not a ringset.
pub fn witness_ok(w: &Witness, s: &QuatSet) -> bool {
    verify_witness(w, s) && exact_witness_check(w, s)
}

pub fn q(text: &str) -> Quat {
    text.parse().expect("quaternion literal")
}

pub fn set(ring: RingTag, text: &str) -> QuatSet {
    QuatSet::parse(ring, text).expect("set literal")
}
