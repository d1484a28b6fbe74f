//! Exact rational quaternions and the Lipschitz / Hurwitz orders.
//!
//! A [`Quat`] stores its four coordinates as integer numerators over one
//! positive common denominator, kept in lowest terms. Lipschitz elements have
//! denominator 1; Hurwitz elements outside the Lipschitz order have
//! denominator 2 with four odd numerators. All arithmetic is checked: an
//! intermediate that leaves the 64-bit range is reported as
//! [`Error::Overflow`], never wrapped.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute coordinate accepted by the text parser.
pub const MAX_INPUT_COORD: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RingTag {
    /// Lipschitz quaternions: all four coordinates integral.
    L,
    /// Hurwitz quaternions: all coordinates integral or all in `Z + 1/2`.
    H,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingTag::L => "L",
            RingTag::H => "H",
        })
    }
}

impl FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l" | "lipschitz" => Ok(RingTag::L),
            "h" | "hurwitz" => Ok(RingTag::H),
            _ => Err(Error::Parse {
                token: 1,
                column: 1,
                message: format!("unknown ring {s:?}, expected L or H"),
            }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quat {
    num: [i64; 4],
    den: i64,
}

impl Quat {
    pub const ZERO: Quat = Quat {
        num: [0, 0, 0, 0],
        den: 1,
    };
    pub const ONE: Quat = Quat {
        num: [1, 0, 0, 0],
        den: 1,
    };
    pub const I: Quat = Quat {
        num: [0, 1, 0, 0],
        den: 1,
    };
    pub const J: Quat = Quat {
        num: [0, 0, 1, 0],
        den: 1,
    };
    pub const K: Quat = Quat {
        num: [0, 0, 0, 1],
        den: 1,
    };
    /// The Hurwitz unit `(1+i+j+k)/2`.
    pub const H: Quat = Quat {
        num: [1, 1, 1, 1],
        den: 2,
    };

    /// `(n0 + n1 i + n2 j + n3 k) / den`, reduced to lowest terms.
    pub fn new(num: [i64; 4], den: i64) -> Result<Quat> {
        Quat::from_wide(num.map(i128::from), i128::from(den))
    }

    pub const fn from_ints(coords: [i64; 4]) -> Quat {
        Quat {
            num: coords,
            den: 1,
        }
    }

    pub const fn integer(n: i64) -> Quat {
        Quat {
            num: [n, 0, 0, 0],
            den: 1,
        }
    }

    pub fn rational(r: Rational64) -> Quat {
        Quat {
            num: [*r.numer(), 0, 0, 0],
            den: *r.denom(),
        }
    }

    pub(crate) fn from_wide(num: [i128; 4], den: i128) -> Result<Quat> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let sign = if den < 0 { -1 } else { 1 };
        let g = num.iter().fold(den, |g, &n| g.gcd(&n));
        let conv = |v: i128| i64::try_from(sign * (v / g)).map_err(|_| Error::Overflow);
        Ok(Quat {
            num: [conv(num[0])?, conv(num[1])?, conv(num[2])?, conv(num[3])?],
            den: conv(den)?,
        })
    }

    pub fn numerators(&self) -> [i64; 4] {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Coordinate `idx` (0 = real part, 1..=3 = coefficients of i, j, k).
    pub fn coeff(&self, idx: usize) -> Rational64 {
        Rational64::new(self.num[idx], self.den)
    }

    pub fn coeffs(&self) -> [Rational64; 4] {
        [0, 1, 2, 3].map(|k| self.coeff(k))
    }

    pub fn real(&self) -> Rational64 {
        self.coeff(0)
    }

    /// The pure quaternion `self - real(self)`.
    pub fn imag(&self) -> Quat {
        Quat {
            num: [0, self.num[1], self.num[2], self.num[3]],
            den: self.den,
        }
        .normalized()
    }

    fn normalized(self) -> Quat {
        // Dropping a coordinate can only shrink the gcd's constraints, so this
        // never overflows.
        Quat::new(self.num, self.den).expect("re-reduction of a valid quaternion")
    }

    pub fn is_zero(&self) -> bool {
        self.num == [0; 4]
    }

    /// True when all imaginary coefficients vanish.
    pub fn is_rational(&self) -> bool {
        self.num[1..] == [0, 0, 0]
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.den == 1
    }

    pub fn is_lipschitz(&self) -> bool {
        self.den == 1
    }

    pub fn is_hurwitz(&self) -> bool {
        self.den == 1 || (self.den == 2 && self.num.iter().all(|n| n % 2 != 0))
    }

    pub fn in_ring(&self, ring: RingTag) -> bool {
        match ring {
            RingTag::L => self.is_lipschitz(),
            RingTag::H => self.is_hurwitz(),
        }
    }

    pub(crate) fn ensure_in(&self, ring: RingTag) -> Result<()> {
        if self.in_ring(ring) {
            Ok(())
        } else {
            Err(Error::NotInRing {
                elem: self.to_string(),
                ring,
            })
        }
    }

    /// Twice each coordinate, when all of them are half-integers or integers.
    pub(crate) fn doubled(&self) -> Option<[i64; 4]> {
        match self.den {
            1 => Some(self.num.map(|n| 2 * n)),
            2 => Some(self.num),
            _ => None,
        }
    }

    pub fn checked_add(&self, rhs: &Quat) -> Result<Quat> {
        self.combine(rhs, 1)
    }

    pub fn checked_sub(&self, rhs: &Quat) -> Result<Quat> {
        self.combine(rhs, -1)
    }

    fn combine(&self, rhs: &Quat, sign: i128) -> Result<Quat> {
        let (d1, d2) = (i128::from(self.den), i128::from(rhs.den));
        let l = d1.lcm(&d2);
        let (s1, s2) = (l / d1, l / d2);
        let mut out = [0i128; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = i128::from(self.num[k]) * s1 + sign * i128::from(rhs.num[k]) * s2;
        }
        Quat::from_wide(out, l)
    }

    pub fn checked_mul(&self, rhs: &Quat) -> Result<Quat> {
        let a = self.num.map(i128::from);
        let b = rhs.num.map(i128::from);
        let prod = hamilton_wide(&a, &b).ok_or(Error::Overflow)?;
        let den = i128::from(self.den) * i128::from(rhs.den);
        Quat::from_wide(prod, den)
    }

    pub fn checked_neg(&self) -> Result<Quat> {
        let mut num = [0; 4];
        for (k, slot) in num.iter_mut().enumerate() {
            *slot = self.num[k].checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Quat { num, den: self.den })
    }

    pub fn conj(&self) -> Quat {
        // Numerators are bounded away from i64::MIN by construction of every
        // public constructor except `from_ints`; fall back to checked negation.
        let mut num = self.num;
        for n in &mut num[1..] {
            *n = n.checked_neg().expect("conjugate of i64::MIN coordinate");
        }
        Quat { num, den: self.den }
    }

    /// `N(q) = q * conj(q) = sum of squared coordinates`.
    pub fn norm(&self) -> Result<Rational64> {
        let mut acc: i128 = 0;
        for &n in &self.num {
            let n = i128::from(n);
            acc = acc.checked_add(n * n).ok_or(Error::Overflow)?;
        }
        let den = i128::from(self.den) * i128::from(self.den);
        ratio_from_wide(acc, den)
    }

    /// The norm, required to be an integer (true for every order element).
    pub fn norm_int(&self) -> Result<i64> {
        let n = self.norm()?;
        if n.is_integer() {
            Ok(n.to_integer())
        } else {
            Err(Error::NonIntegral(self.to_string()))
        }
    }

    /// `2 * real(q)`, the reduced trace.
    pub fn trace(&self) -> Rational64 {
        Rational64::new(self.num[0], self.den) * 2
    }

    pub fn inv(&self) -> Result<Quat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm()?;
        let c = self.conj();
        // conj(q) / N(q) = conj_num * n.den / (den * n.num)
        let scale = i128::from(*n.denom());
        let num = c.num.map(|v| i128::from(v) * scale);
        Quat::from_wide(num, i128::from(self.den) * i128::from(*n.numer()))
    }

    pub fn scale(&self, k: i64) -> Result<Quat> {
        self.mul_rational(Rational64::from_integer(k))
    }

    pub fn div_int(&self, k: i64) -> Result<Quat> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        Quat::from_wide(
            self.num.map(i128::from),
            i128::from(self.den) * i128::from(k),
        )
    }

    pub fn mul_rational(&self, r: Rational64) -> Result<Quat> {
        let s = i128::from(*r.numer());
        Quat::from_wide(
            self.num.map(|v| i128::from(v) * s),
            i128::from(self.den) * i128::from(*r.denom()),
        )
    }

    pub fn add_rational(&self, r: Rational64) -> Result<Quat> {
        self.checked_add(&Quat::rational(r))
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Quat) -> Result<Quat> {
        self.checked_mul(rhs)?.checked_sub(&rhs.checked_mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<Quat> {
        let mut acc = Quat::ONE;
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Each coordinate reduced into `[0, m)`; meaningful for Lipschitz elements.
    pub fn rem_euclid(&self, m: i64) -> Result<Quat> {
        if !self.is_lipschitz() {
            return Err(Error::NotInRing {
                elem: self.to_string(),
                ring: RingTag::L,
            });
        }
        Ok(Quat::from_ints(self.num.map(|n| n.rem_euclid(m))))
    }
}

/// Hamilton product on integer coordinate vectors.
pub(crate) fn hamilton_wide(a: &[i128; 4], b: &[i128; 4]) -> Option<[i128; 4]> {
    let m = |x: i128, y: i128| x.checked_mul(y);
    let sum4 = |t: [Option<i128>; 4]| -> Option<i128> {
        let mut acc: i128 = 0;
        for v in t {
            acc = acc.checked_add(v?)?;
        }
        Some(acc)
    };
    let neg = |v: Option<i128>| v.and_then(|x| x.checked_neg());
    Some([
        sum4([
            m(a[0], b[0]),
            neg(m(a[1], b[1])),
            neg(m(a[2], b[2])),
            neg(m(a[3], b[3])),
        ])?,
        sum4([
            m(a[0], b[1]),
            m(a[1], b[0]),
            m(a[2], b[3]),
            neg(m(a[3], b[2])),
        ])?,
        sum4([
            m(a[0], b[2]),
            neg(m(a[1], b[3])),
            m(a[2], b[0]),
            m(a[3], b[1]),
        ])?,
        sum4([
            m(a[0], b[3]),
            m(a[1], b[2]),
            neg(m(a[2], b[1])),
            m(a[3], b[0]),
        ])?,
    ])
}

pub(crate) fn ratio_from_wide(num: i128, den: i128) -> Result<Rational64> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    let g = num.gcd(&den) * den.signum();
    let n = i64::try_from(num / g).map_err(|_| Error::Overflow)?;
    let d = i64::try_from(den / g).map_err(|_| Error::Overflow)?;
    Ok(Rational64::new_raw(n, d))
}

impl PartialOrd for Quat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the rational coordinates `(c0, c1, c2, c3)`.
impl Ord for Quat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (d1, d2) = (i128::from(self.den), i128::from(other.den));
        for k in 0..4 {
            let lhs = i128::from(self.num[k]) * d2;
            let rhs = i128::from(other.num[k]) * d1;
            match lhs.cmp(&rhs) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics on overflow; library code uses the `checked_*` form.
        impl std::ops::$tr for Quat {
            type Output = Quat;
            fn $method(self, rhs: Quat) -> Quat {
                self.$checked(&rhs).expect("quaternion arithmetic overflow")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl std::ops::Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        self.checked_neg().expect("quaternion arithmetic overflow")
    }
}

impl From<i64> for Quat {
    fn from(n: i64) -> Quat {
        Quat::integer(n)
    }
}

fn fmt_integer_form(num: &[i64; 4]) -> String {
    const UNITS: [&str; 4] = ["", "i", "j", "k"];
    let mut out = String::new();
    for (k, &c) in num.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.unsigned_abs();
        if k == 0 || mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(UNITS[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text form: `1+2i-3j+k`, `-i`, `(1+i+j+k)/2`.
impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            f.write_str(&fmt_integer_form(&self.num))
        } else {
            write!(f, "({})/{}", fmt_integer_form(&self.num), self.den)
        }
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quat({self})")
    }
}

impl Serialize for Quat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Quat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct LiteralParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

type LitResult<T> = std::result::Result<T, (usize, String)>;

impl LiteralParser {
    fn new(s: &str) -> Self {
        let chars: Vec<(usize, char)> = s
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        LiteralParser {
            len: s.chars().count(),
            chars,
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len + 1, |&(c, _)| c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> LitResult<T> {
        Err((self.col(), msg.into()))
    }

    fn digits(&mut self) -> LitResult<Option<i128>> {
        let mut val: Option<i128> = None;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            let d = i128::from(c.to_digit(10).unwrap_or(0));
            let next = val.unwrap_or(0) * 10 + d;
            if next > i128::from(i64::MAX) {
                return self.err("integer literal out of range");
            }
            val = Some(next);
            self.pos += 1;
        }
        Ok(val)
    }

    /// `term (('+'|'-') term)*` with an optional sign on the first term.
    fn integer_form(&mut self) -> LitResult<[i128; 4]> {
        let mut acc = [0i128; 4];
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                Some(c) => return self.err(format!("unexpected {c:?}")),
                None => return self.err("unexpected end of literal"),
            };
            let mag = self.digits()?;
            let unit = match self.peek() {
                Some('i') => Some(1),
                Some('j') => Some(2),
                Some('k') => Some(3),
                _ => None,
            };
            if unit.is_some() {
                self.pos += 1;
            }
            if mag.is_none() && unit.is_none() {
                return self.err("expected an integer or one of i, j, k");
            }
            let slot = &mut acc[unit.unwrap_or(0)];
            *slot += sign * mag.unwrap_or(1);
            if slot.unsigned_abs() > i64::MAX as u128 {
                return self.err("integer literal out of range");
            }
            first = false;
            if matches!(self.peek(), None | Some(')')) {
                return Ok(acc);
            }
        }
    }

    fn literal(&mut self) -> LitResult<([i128; 4], i128)> {
        if self.chars.is_empty() {
            return self.err("empty literal");
        }
        let outer = match (self.peek(), self.chars.get(self.pos + 1).map(|&(_, c)| c)) {
            (Some('-'), Some('(')) => {
                self.pos += 1;
                -1
            }
            (Some('+'), Some('(')) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        if self.peek() == Some('(') {
            self.pos += 1;
            let num = self.integer_form()?;
            if self.peek() != Some(')') {
                return self.err("expected ')'");
            }
            self.pos += 1;
            if self.peek() != Some('/') {
                return self.err("expected '/' after parenthesized form");
            }
            self.pos += 1;
            let den = match self.digits()? {
                Some(0) => return self.err("zero denominator"),
                Some(d) => d,
                None => return self.err("expected a denominator"),
            };
            if self.peek().is_some() {
                return self.err("trailing characters");
            }
            Ok((num.map(|v| outer * v), den))
        } else {
            let num = self.integer_form()?;
            if self.peek().is_some() {
                return self.err("unbalanced ')'");
            }
            Ok((num, 1))
        }
    }
}

/// Parses one literal; errors carry a 1-based column.
pub(crate) fn parse_literal(s: &str) -> LitResult<Quat> {
    let mut p = LiteralParser::new(s);
    let (num, den) = p.literal()?;
    let q = Quat::from_wide(num, den).map_err(|e| (1, e.to_string()))?;
    let bound = i128::from(MAX_INPUT_COORD) * i128::from(q.den);
    if q.num.iter().any(|&n| i128::from(n).abs() > bound) {
        return Err((1, Error::CoordinateRange(q.to_string()).to_string()));
    }
    Ok(q)
}

impl FromStr for Quat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quat> {
        parse_literal(s).map_err(|(column, message)| Error::Parse {
            token: 1,
            column,
            message,
        })
    }
}

/// Monic minimal polynomial over the rationals: `x - root` or
/// `x^2 - trace*x + norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MinPoly {
    Linear(Rational64),
    Quadratic { trace: i64, norm: i64 },
}

impl MinPoly {
    pub fn is_linear(&self) -> bool {
        matches!(self, MinPoly::Linear(_))
    }

    /// Coefficients from degree 0 upward.
    pub fn coefficients(&self) -> Vec<Rational64> {
        match *self {
            MinPoly::Linear(r) => vec![-r, Rational64::from_integer(1)],
            MinPoly::Quadratic { trace, norm } => vec![
                Rational64::from_integer(norm),
                Rational64::from_integer(-trace),
                Rational64::from_integer(1),
            ],
        }
    }

    pub fn degree(&self) -> usize {
        if self.is_linear() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for MinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MinPoly::Linear(r) if *r.numer() == 0 => write!(f, "x"),
            MinPoly::Linear(r) if r < Rational64::from_integer(0) => write!(f, "x+{}", -r),
            MinPoly::Linear(r) => write!(f, "x-{r}"),
            MinPoly::Quadratic { trace, norm } => {
                f.write_str("x^2")?;
                match trace {
                    0 => {}
                    1 => f.write_str("-x")?,
                    -1 => f.write_str("+x")?,
                    t if t > 0 => write!(f, "-{t}x")?,
                    t => write!(f, "+{}x", -t)?,
                }
                write!(f, "+{norm}")
            }
        }
    }
}

/// `x - a` for rational `a`, else `x^2 - 2 a0 x + N(a)`.
pub fn min_poly(q: &Quat) -> Result<MinPoly> {
    if q.is_rational() {
        return Ok(MinPoly::Linear(q.real()));
    }
    let t = q.trace();
    let n = q.norm()?;
    if !t.is_integer() || !n.is_integer() {
        return Err(Error::NonIntegral(q.to_string()));
    }
    Ok(MinPoly::Quadratic {
        trace: t.to_integer(),
        norm: n.to_integer(),
    })
}

/// The unit group, sorted.
pub fn units(ring: RingTag) -> Vec<Quat> {
    let mut out = Vec::with_capacity(24);
    for k in 0..4 {
        for s in [1, -1] {
            let mut c = [0; 4];
            c[k] = s;
            out.push(Quat::from_ints(c));
        }
    }
    if ring == RingTag::H {
        for signs in 0..16u32 {
            let c = [0, 1, 2, 3].map(|b| if signs >> b & 1 == 1 { -1 } else { 1 });
            out.push(Quat { num: c, den: 2 });
        }
    }
    out.sort();
    out
}

/// Generators used to test closure under right multiplication by units.
pub fn unit_generators(ring: RingTag) -> Vec<Quat> {
    match ring {
        RingTag::L => vec![Quat::I, Quat::J, Quat::K],
        RingTag::H => vec![Quat::I, Quat::J, Quat::K, Quat::H],
    }
}

/// `{ u q u^-1 : u a unit }`, sorted.
pub fn conjugacy_class(q: &Quat, ring: RingTag) -> Result<Vec<Quat>> {
    q.ensure_in(ring)?;
    let mut out = Vec::new();
    for u in units(ring) {
        // u^-1 = conj(u) for units of norm 1
        out.push(u.checked_mul(q)?.checked_mul(&u.conj())?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every element of `ring` whose minimal polynomial is `m`, sorted.
pub fn enumerate_class(m: &MinPoly, ring: RingTag) -> Result<Vec<Quat>> {
    let (trace, norm) = match *m {
        MinPoly::Linear(r) => {
            return Ok(if r.is_integer() {
                vec![Quat::integer(r.to_integer())]
            } else {
                vec![]
            });
        }
        MinPoly::Quadratic { trace, norm } => (trace, norm),
    };
    // Doubled imaginary coordinates b satisfy b1^2 + b2^2 + b3^2 = 4n - t^2.
    let target = 4i128 * i128::from(norm) - i128::from(trace) * i128::from(trace);
    if target <= 0 {
        return Ok(vec![]);
    }
    let target = i64::try_from(target).map_err(|_| Error::Overflow)?;
    let odd_trace = trace.rem_euclid(2) == 1;
    if odd_trace && ring == RingTag::L {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for (b1, b2, b3) in canonical_triples(target) {
        let parity_ok = if odd_trace {
            b1 % 2 == 1 && b2 % 2 == 1 && b3 % 2 == 1
        } else {
            b1 % 2 == 0 && b2 % 2 == 0 && b3 % 2 == 0
        };
        if !parity_ok {
            continue;
        }
        for perm in permutations([b1, b2, b3]) {
            for signs in 0..8u32 {
                let s = |bit: u32, v: i64| if signs >> bit & 1 == 1 { -v } else { v };
                let (c1, c2, c3) = (s(0, perm[0]), s(1, perm[1]), s(2, perm[2]));
                let q = Quat::new([trace, c1, c2, c3], 2)?;
                out.push(q);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Triples `b1 >= b2 >= b3 >= 0` with `b1^2 + b2^2 + b3^2 = target`.
fn canonical_triples(target: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut b1 = target.isqrt();
    while b1 >= 0 && 3 * b1 * b1 >= target {
        let rest1 = target - b1 * b1;
        let mut b2 = rest1.isqrt().min(b1);
        while b2 >= 0 && 2 * b2 * b2 >= rest1 {
            let rest2 = rest1 - b2 * b2;
            let b3 = rest2.isqrt();
            if b3 * b3 == rest2 && b3 <= b2 {
                out.push((b1, b2, b3));
            }
            b2 -= 1;
        }
        b1 -= 1;
    }
    out
}

fn permutations(t: [i64; 3]) -> [[i64; 3]; 6] {
    let [a, b, c] = t;
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

/// Membership in the two-sided Hurwitz ideal generated by `1+i`.
pub fn in_ideal_1pi(beta: &Quat) -> Result<bool> {
    beta.ensure_in(RingTag::H)?;
    let one_minus_i = Quat::from_ints([1, -1, 0, 0]);
    Ok(one_minus_i.checked_mul(beta)?.div_int(2)?.is_hurwitz())
}
