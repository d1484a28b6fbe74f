//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::cell::Cell;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{catalog, oracle_target, q, random_subset, set, witness_ok};
use ringset::classify::{
    decide_ringset, delta_and_gamma, gamma8_residues, is_reduced, partition_by_min_poly,
    reduce_set, separator, Rule,
};
use ringset::oracle::{
    brute_force_ringset_class, check_prop56_hypothesis, lift_witness, tn_example,
    witness_power_two_at, witness_singleton, Partner, Witness,
};
use ringset::quat::{conjugacy_class, in_ideal_1pi, units};
use ringset::{QPoly, Quat, QuatSet, Result, RingTag, Verdict};

// pinned limits
const GOLDEN_TIME: Duration = Duration::from_secs(1);
const AGREEMENT_TIME: Duration = Duration::from_secs(300);
const PROP56_TIME: Duration = Duration::from_secs(1);
const ORACLE_CAP: i64 = 32;
const RANDOM_SUBSETS_PER_RING: usize = 500;
const SEPARATOR_PAIRS: usize = 100;
const INVARIANCE_SETS: usize = 200;
const RANDOM_ELEMENTS: usize = 1000;
const GAMMA8_RANDOM: usize = 2000;
const PROP56_N: i64 = 10;
const SEED: u64 = 0x5eed_0001;

const RINGS: [RingTag; 2] = [RingTag::L, RingTag::H];

/// Negative verdicts seen in criteria 1-6 and whether their witnesses held up.
#[derive(Default)]
struct Tally {
    negatives: usize,
    bad: Vec<String>,
}

impl Tally {
    fn verdict(&mut self, v: &Verdict, s: &QuatSet) {
        if v.is_ringset {
            return;
        }
        match &v.witness {
            Some(w) => self.witness(w, s),
            None => {
                self.negatives += 1;
                self.bad.push(format!("{} {s}: no witness", s.ring()));
            }
        }
    }

    fn witness(&mut self, w: &Witness, s: &QuatSet) {
        self.negatives += 1;
        if !witness_ok(w, s) {
            self.bad.push(format!("{} {s}: witness rejected", s.ring()));
        }
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

/// Collects named boolean checks; the first few failures go into the detail.
#[derive(Default)]
struct Checks {
    total: usize,
    failed: Vec<String>,
}

impl Checks {
    fn check(&mut self, label: impl Into<String>, cond: bool) {
        self.total += 1;
        if !cond {
            self.failed.push(label.into());
        }
    }

    fn outcome(self, summary: String) -> Outcome {
        let ok = self.failed.is_empty();
        let mut detail = format!(
            "{summary}; {}/{} checks",
            self.total - self.failed.len(),
            self.total
        );
        if !ok {
            let shown: Vec<_> = self.failed.iter().take(5).cloned().collect();
            detail += &format!("; failed: {}", shown.join(" | "));
        }
        Outcome { ok, detail }
    }
}

fn golden(tally: &mut Tally) -> Result<Outcome> {
    let mut c = Checks::default();
    let slowest = Cell::new(Duration::ZERO);
    let time = |f: &dyn Fn() -> Result<Verdict>| -> Result<Verdict> {
        let start = Instant::now();
        let v = f();
        slowest.set(slowest.get().max(start.elapsed()));
        v
    };
    let decide = |ring: RingTag, text: &str, tally: &mut Tally| -> Result<Verdict> {
        let s = set(ring, text);
        let v = time(&|| decide_ringset(&s))?;
        tally.verdict(&v, &s);
        Ok(v)
    };

    c.check(
        "{±i} ringset in L",
        decide(RingTag::L, "i,-i", tally)?.is_ringset,
    );
    let pm_i = set(RingTag::H, "i,-i");
    let v = decide(RingTag::H, "i,-i", tally)?;
    c.check(
        "{±i} not a ringset in H",
        !v.is_ringset && v.witness.is_some(),
    );
    // the example's own witness: f = (x-i)/2 with partner h, failing at i
    let w = witness_power_two_at(&pm_i, &q("i"))?;
    c.check(
        "{±i} witness f = (x-i)/2",
        w.f == QPoly::x_minus(&q("i"))?.div_int(2)?,
    );
    c.check(
        "{±i} witness partner h",
        w.partner == Partner::Unit(Quat::H),
    );
    c.check("{±i} witness value (j-k)/2", w.fail_value == q("(j-k)/2"));
    c.check("{±i} example witness verifies", witness_ok(&w, &pm_i));
    tally.witness(&w, &pm_i);

    for ring in RINGS {
        let v = decide(ring, "i", tally)?;
        c.check(format!("{{i}} not a ringset in {ring}"), !v.is_ringset);
        c.check(
            format!("{{4+5i, 4+5j}} ringset in {ring}"),
            decide(ring, "4+5i,4+5j", tally)?.is_ringset,
        );
    }

    let class = QuatSet::new(RingTag::L, conjugacy_class(&q("i+j+k"), RingTag::L)?)?;
    c.check("class of i+j+k has 4 elements", class.len() == 4);
    c.check(
        "class of i+j+k has Γ = 8",
        delta_and_gamma(&class)?.gamma == 8,
    );
    let v = time(&|| decide_ringset(&class))?;
    c.check("class of i+j+k ringset in L", v.is_ringset);

    let t_text = "2i+3j+4k,-2i+3j+4k,-5j-2k";
    let t = set(RingTag::L, t_text);
    let v = decide(RingTag::L, t_text, tally)?;
    c.check("T not a ringset in L", !v.is_ringset && v.witness.is_some());
    let beta = q("-5j-2k");
    let w = witness_power_two_at(&t, &beta)?;
    let expected_f = QPoly::x_minus(&beta)?.scale_left(&q("1+j"))?.div_int(4)?;
    c.check("T witness f = (1+j)(x-β)/4", w.f == expected_f);
    c.check("T witness partner i", w.partner == Partner::Unit(Quat::I));
    c.check(
        "T witness value (-4-10i+4j-10k)/4",
        w.fail_value == q("(-4-10i+4j-10k)/4"),
    );
    c.check("T example witness verifies", witness_ok(&w, &t));
    tally.witness(&w, &t);

    c.check(
        "{i+j+k, i-j-k} not a ringset in L",
        !decide(RingTag::L, "i+j+k,i-j-k", tally)?.is_ringset,
    );
    c.check(
        "{i+j+k, i-j-k} ringset in H",
        decide(RingTag::H, "i+j+k,i-j-k", tally)?.is_ringset,
    );
    let slowest = slowest.get();
    c.check(
        format!("each verdict under {GOLDEN_TIME:?}"),
        slowest < GOLDEN_TIME,
    );
    Ok(c.outcome(format!("slowest verdict {slowest:.2?}")))
}

fn reduced_examples() -> Result<Outcome> {
    let mut c = Checks::default();
    let l = RingTag::L;
    let h = RingTag::H;
    c.check(
        "{4+5i, 4+5j} not reduced",
        !is_reduced(&set(l, "4+5i,4+5j"))?,
    );
    c.check("{i, j} reduced", is_reduced(&set(l, "i,j"))?);
    let r = reduce_set(&set(l, "4+5i,4+5j"))?;
    c.check(
        "{4+5i, 4+5j} = 4 + 5{i, j}",
        r.a == 4 && r.n == 5 && r.t == set(l, "i,j"),
    );

    c.check(
        "{3i, 3j, 3k} not reduced",
        !is_reduced(&set(l, "3i,3j,3k"))?,
    );
    c.check(
        "{3i, 3j, i+2j+2k} reduced",
        is_reduced(&set(l, "3i,3j,i+2j+2k"))?,
    );

    let s = set(h, "(1+5i+15j+25k)/2,(1-5i-15j-25k)/2");
    let t = set(h, "(1+i+3j+5k)/2,(1-i-3j-5k)/2");
    c.check("H: S not reduced", !is_reduced(&s)?);
    c.check("H: T reduced", is_reduced(&t)?);
    c.check(
        "H: S + 2 = 5T",
        s.translate_scale(2, 1)? == t.translate_scale(0, 5)?,
    );
    let r = reduce_set(&s)?;
    c.check(
        "H: reduce_set(S) = -2 + 5T",
        r.a == -2 && r.n == 5 && r.t == t,
    );

    c.check(
        "{i+j+k, i-j-k} reduced in L",
        is_reduced(&set(l, "i+j+k,i-j-k"))?,
    );
    c.check(
        "{i+j+k, i-j-k} not reduced in H",
        !is_reduced(&set(h, "i+j+k,i-j-k"))?,
    );

    // all-odd imaginary parts inside L: S or S+1 lies in 2H by the parity of the real part
    let mut sets = 0;
    for (_, class) in catalog(h) {
        let odd: Vec<Quat> = class
            .into_iter()
            .filter(|a| a.is_lipschitz() && (1..4).all(|i| a.numerators()[i] % 2 != 0))
            .collect();
        for (x, a) in odd.iter().enumerate() {
            for b in &odd[x + 1..] {
                let s = QuatSet::new(h, [*a, *b])?;
                let shift = if a.numerators()[0] % 2 != 0 { 0 } else { 1 };
                let halved = s.translate_scale(shift, 1)?;
                let in_2h = halved
                    .elems()
                    .iter()
                    .all(|e| e.div_int(2).map(|d| d.in_ring(h)).unwrap_or(false));
                c.check(format!("all-odd {s} not reduced in H"), !is_reduced(&s)?);
                c.check(format!("all-odd {s} + {shift} in 2H"), in_2h);
                sets += 1;
            }
        }
    }
    Ok(c.outcome(format!("{sets} all-odd pairs")))
}

fn agreement(tally: &mut Tally) -> Result<Outcome> {
    let start = Instant::now();
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut counts = Vec::new();
    for ring in RINGS {
        let classes = catalog(ring);
        let (mut full, mut random) = (0usize, 0usize);
        let (mut full_skipped, mut skipped) = (0usize, 0usize);
        let compare = |s: &QuatSet, tally: &mut Tally, c: &mut Checks| -> Result<bool> {
            let v = decide_ringset(s)?;
            tally.verdict(&v, s);
            let Some(target) = oracle_target(s, ORACLE_CAP)? else {
                return Ok(false);
            };
            let r = brute_force_ringset_class(&target, ORACLE_CAP)?;
            if let Some(w) = &r.witness {
                tally.witness(w, &target);
            }
            c.check(
                format!(
                    "{ring} {s}: oracle {} classifier {}",
                    r.is_ringset, v.is_ringset
                ),
                r.is_ringset == v.is_ringset,
            );
            Ok(true)
        };
        for (_, class) in &classes {
            if class.len() < 2 {
                continue;
            }
            let s = QuatSet::new(ring, class.iter().copied())?;
            if compare(&s, tally, &mut c)? {
                full += 1;
            } else {
                full_skipped += 1;
            }
        }
        let mut attempts = 0;
        while random < RANDOM_SUBSETS_PER_RING && attempts < 4 * RANDOM_SUBSETS_PER_RING {
            attempts += 1;
            let s = random_subset(&mut rng, &classes, ring, 2, 5);
            if s.len() < 2 {
                continue;
            }
            if compare(&s, tally, &mut c)? {
                random += 1;
            } else {
                skipped += 1;
            }
        }
        c.check(
            format!("{ring}: {RANDOM_SUBSETS_PER_RING} random subsets evaluated"),
            random >= RANDOM_SUBSETS_PER_RING,
        );
        c.check(
            format!("{ring}: every class within the oracle cap"),
            full_skipped == 0,
        );
        counts.push(format!(
            "{ring}: {full} classes + {random} subsets, {skipped} subsets over cap"
        ));
    }
    let elapsed = start.elapsed();
    c.check(
        format!("runtime under {AGREEMENT_TIME:?}"),
        elapsed < AGREEMENT_TIME,
    );
    Ok(c.outcome(format!("{}; {elapsed:.1?}", counts.join("; "))))
}

/// A subset of one class, sometimes a small integer singleton.
fn separator_side<R: Rng>(
    rng: &mut R,
    classes: &[(ringset::MinPoly, Vec<Quat>)],
    ring: RingTag,
) -> QuatSet {
    if rng.gen_ratio(1, 6) {
        QuatSet::new(ring, [Quat::integer(rng.gen_range(-5..=5))]).expect("integer")
    } else {
        random_subset(rng, classes, ring, 1, 4)
    }
}

fn separators(tally: &mut Tally) -> Result<Outcome> {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut lifted = 0;
    let mut pairs = 0;
    while pairs < SEPARATOR_PAIRS {
        let ring = *RINGS.choose(&mut rng).expect("rings");
        let classes = catalog(ring);
        let mut s = separator_side(&mut rng, &classes, ring);
        if rng.gen_bool(0.5) {
            s = s.union(&separator_side(&mut rng, &classes, ring))?;
        }
        let t = separator_side(&mut rng, &classes, ring);
        let t_class = ringset::quat::min_poly(&t.elems()[0])?;
        if s.elems()
            .iter()
            .any(|a| ringset::quat::min_poly(a).ok() == Some(t_class))
        {
            continue;
        }
        pairs += 1;
        let f = separator(&s, &t)?;
        let zero_on_s = s
            .elems()
            .iter()
            .all(|a| f.eval_right(a).map(|v| v.is_zero()).unwrap_or(false));
        let one_on_t = t.elems().iter().all(|a| f.eval_right(a) == Ok(Quat::ONE));
        c.check(
            format!("F rational for {s} | {t}"),
            f.has_rational_coefficients(),
        );
        c.check(format!("F(S) = 0 for {s} | {t}"), zero_on_s);
        c.check(format!("F(T) = 1 for {s} | {t}"), one_on_t);

        // lift a witness for the non-central side across the matching separator
        let (inner, rest) = if t_class.is_linear() {
            (first_quadratic_class(&s)?, None)
        } else {
            (Some(t.clone()), Some(s.clone()))
        };
        let Some(inner) = inner else { continue };
        let u = match rest {
            Some(rest) => rest.union(&inner)?,
            None => s.union(&t)?,
        };
        let (class, w) = match decide_ringset(&inner)?.witness {
            Some(w) => (inner.clone(), w),
            None => {
                let a = inner.elems()[0];
                (QuatSet::new(ring, [a])?, witness_singleton(&a, ring)?)
            }
        };
        let u = u.without(&inner).union(&class)?;
        let sep = separator(&u.without(&class), &class)?;
        let lw = lift_witness(&w, &sep, &u)?;
        c.check(format!("lifted witness for {u}"), witness_ok(&lw, &u));
        c.check(
            format!("lift keeps fail value for {u}"),
            lw.fail_value == w.fail_value,
        );
        tally.witness(&lw, &u);
        lifted += 1;
    }
    Ok(c.outcome(format!("{pairs} pairs, {lifted} lifts")))
}

fn first_quadratic_class(s: &QuatSet) -> Result<Option<QuatSet>> {
    Ok(partition_by_min_poly(s)?
        .into_iter()
        .find(|(m, _)| !m.is_linear())
        .map(|(_, p)| p))
}

fn random_element<R: Rng>(rng: &mut R, ring: RingTag) -> Quat {
    if ring == RingTag::H && rng.gen_bool(0.5) {
        let mut c = [0i64; 4];
        for x in &mut c {
            *x = 2 * rng.gen_range(-20..=20) + 1;
        }
        Quat::new(c, 2).expect("half-integer")
    } else {
        let mut c = [0i64; 4];
        for x in &mut c {
            *x = rng.gen_range(-20..=20);
        }
        Quat::from_ints(c)
    }
}

/// `uβ - βu` from the coefficients of β alone.
fn commutator_closed_form(u: &Quat, beta: &Quat) -> Result<Quat> {
    let b = beta.coeffs();
    let two = num_rational::Rational64::from_integer(2);
    let make = |c: [num_rational::Rational64; 3]| -> Result<Quat> {
        let den = c.iter().fold(1i64, |d, x| num_integer::lcm(d, *x.denom()));
        let n = |x: num_rational::Rational64| (x * den).to_integer();
        Quat::new([0, n(c[0]), n(c[1]), n(c[2])], den)
    };
    let zero = num_rational::Rational64::from_integer(0);
    if *u == Quat::I {
        make([zero, -two * b[3], two * b[2]])
    } else if *u == Quat::J {
        make([two * b[3], zero, -two * b[1]])
    } else if *u == Quat::K {
        make([-two * b[2], two * b[1], zero])
    } else {
        make([b[3] - b[2], b[1] - b[3], b[2] - b[1]])
    }
}

fn invariance(tally: &mut Tally) -> Result<Outcome> {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let catalogs: Vec<_> = RINGS.iter().map(|r| (*r, catalog(*r))).collect();
    let mut reduced_l = 0;
    for k in 0..INVARIANCE_SETS {
        let (ring, classes) = &catalogs[k % 2];
        let mut s = random_subset(&mut rng, classes, *ring, 1, 5);
        if rng.gen_ratio(1, 4) {
            s = s.union(&random_subset(&mut rng, classes, *ring, 1, 3))?;
        }
        let a = rng.gen_range(-5..=5);
        let n = rng.gen_range(1..=5);
        let moved = s.translate_scale(a, n)?;
        let v = decide_ringset(&s)?;
        let vm = decide_ringset(&moved)?;
        tally.verdict(&v, &s);
        tally.verdict(&vm, &moved);
        c.check(
            format!("{ring} {s} vs {a} + {n}S"),
            v.is_ringset == vm.is_ringset,
        );
        for (m, part) in partition_by_min_poly(&s)? {
            if m.is_linear() || part.len() < 2 {
                continue;
            }
            let g = delta_and_gamma(&part)?.gamma;
            let gm = delta_and_gamma(&part.translate_scale(a, n)?)?.gamma;
            c.check(format!("Γ({a} + {n}·{part}) = n²Γ"), gm == n * n * g);
            if *ring == RingTag::L {
                let t = reduce_set(&part)?.t;
                if t.len() >= 2 {
                    c.check(
                        format!("Γ of reduced {t} even"),
                        delta_and_gamma(&t)?.gamma % 2 == 0,
                    );
                    reduced_l += 1;
                }
            }
        }
    }

    for ring in RINGS {
        let us = units(ring);
        for _ in 0..RANDOM_ELEMENTS {
            let alpha = random_element(&mut rng, ring);
            for u in &us {
                let d = alpha.checked_sub(&u.checked_mul(&alpha)?.checked_mul(&u.inv()?)?)?;
                let ok = match ring {
                    RingTag::L => d.div_int(2)?.is_lipschitz(),
                    RingTag::H => in_ideal_1pi(&d)?,
                };
                c.check(format!("{alpha} - {u}·{alpha}·{u}⁻¹ in the ideal"), ok);
            }
            for u in [Quat::I, Quat::J, Quat::K, Quat::H] {
                c.check(
                    format!("[{u}, {alpha}] closed form"),
                    u.commutator(&alpha)? == commutator_closed_form(&u, &alpha)?,
                );
            }
        }
    }
    Ok(c.outcome(format!("{INVARIANCE_SETS} sets, {reduced_l} reduced L-classes, {RANDOM_ELEMENTS} elements per ring")))
}

fn gamma8(tally: &mut Tally) -> Result<Outcome> {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let allowed = [q("2i+2j"), q("2i+2k"), q("2j+2k")];
    let classes = catalog(RingTag::L);
    let mut candidates: Vec<QuatSet> = Vec::new();
    // exhaustive 2- and 3-subsets where every imaginary coefficient can be odd
    for (m, class) in &classes {
        let ringset::MinPoly::Quadratic { trace, norm } = *m else {
            continue;
        };
        if (4 * norm - trace * trace) / 4 % 8 != 3 {
            continue;
        }
        for x in 0..class.len() {
            for y in x + 1..class.len() {
                candidates.push(QuatSet::new(RingTag::L, [class[x], class[y]])?);
                for z in y + 1..class.len() {
                    candidates.push(QuatSet::new(RingTag::L, [class[x], class[y], class[z]])?);
                }
            }
        }
    }
    for _ in 0..GAMMA8_RANDOM {
        candidates.push(random_subset(&mut rng, &classes, RingTag::L, 2, 5));
    }
    let (mut sampled, mut positive) = (0, 0);
    for s in &candidates {
        if s.len() < 2 || !is_reduced(s)? {
            continue;
        }
        let stats = delta_and_gamma(s)?;
        if stats.gamma != 8 {
            continue;
        }
        sampled += 1;
        let residues: Vec<Quat> = stats
            .deltas
            .iter()
            .map(|d| d.rem_euclid(4))
            .collect::<Result<_>>()?;
        c.check(
            format!("Δ({s}) mod 4 allowed"),
            residues.iter().all(|r| r.is_zero() || allowed.contains(r)),
        );
        let distinct = gamma8_residues(&stats)?.len();
        let v = decide_ringset(s)?;
        tally.verdict(&v, s);
        c.check(
            format!("{s} decided by residues"),
            v.classes[0].rule == Rule::Gamma8Residues,
        );
        let r = brute_force_ringset_class(s, ORACLE_CAP)?;
        if let Some(w) = &r.witness {
            tally.witness(w, s);
        }
        c.check(
            format!("{s}: {distinct} residues, oracle {}", r.is_ringset),
            r.is_ringset == (distinct >= 2),
        );
        positive += usize::from(r.is_ringset);
    }
    c.check("some Γ = 8 sets sampled", sampled > 0);
    c.check("both verdicts occur", positive > 0 && positive < sampled);
    Ok(c.outcome(format!("{sampled} reduced Γ = 8 sets, {positive} ringsets")))
}

fn infinite_hypothesis() -> Result<Outcome> {
    let mut c = Checks::default();
    let start = Instant::now();
    let mut elems = Vec::new();
    for n in 2..=PROP56_N {
        elems.extend(tn_example(n)?);
    }
    let s = QuatSet::new(RingTag::L, elems)?;
    let holds = check_prop56_hypothesis(&s, PROP56_N)?;
    let elapsed = start.elapsed();
    c.check("hypothesis holds", holds);
    c.check(format!("under {PROP56_TIME:?}"), elapsed < PROP56_TIME);
    Ok(c.outcome(format!(
        "{} elements, n_max = {PROP56_N}, {elapsed:.2?}",
        s.len()
    )))
}

fn report(n: usize, name: &str, r: Result<Outcome>) -> bool {
    let (ok, detail) = match r {
        Ok(o) => (o.ok, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!(
        "{} criterion {n} ({name}): {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn main() {
    let mut tally = Tally::default();
    let mut all = true;
    all &= report(1, "golden verdicts", golden(&mut tally));
    all &= report(2, "reduced sets", reduced_examples());
    all &= report(3, "oracle agreement", agreement(&mut tally));
    all &= report(4, "separators", separators(&mut tally));
    all &= report(5, "invariance", invariance(&mut tally));
    all &= report(6, "gamma 8 structure", gamma8(&mut tally));
    let witnesses = Ok(Outcome {
        ok: tally.negatives > 0 && tally.bad.is_empty(),
        detail: format!(
            "{} negative results, {} bad witnesses{}",
            tally.negatives,
            tally.bad.len(),
            tally
                .bad
                .first()
                .map(|b| format!("; first: {b}"))
                .unwrap_or_default()
        ),
    });
    all &= report(7, "witness validity", witnesses);
    all &= report(8, "infinite ringset hypothesis", infinite_hypothesis());
    if !all {
        std::process::exit(1);
    }
}
