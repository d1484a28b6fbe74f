//! JSON shapes for verdicts and witnesses, with conversions both ways.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::classify::{ClassVerdict, QuatSet, ReducedForm, Rule, Verdict};
use crate::error::{Error, Result};
use crate::oracle::{verify_witness, Partner, Witness};
use crate::qpoly::QPoly;
use crate::quat::{MinPoly, Quat, RingTag};

/// `f = (Σ numᵢ xⁱ) / den` with every numerator in the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    pub num: Vec<Quat>,
    pub den: i64,
}

impl PolyReport {
    pub fn from_poly(p: &QPoly, ring: RingTag) -> Result<PolyReport> {
        let (num, den) = p.over_order(ring)?;
        Ok(PolyReport { num, den })
    }

    pub fn to_poly(&self) -> Result<QPoly> {
        QPoly::new(self.num.clone())?.div_int(self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartnerReport {
    Unit(Quat),
    Poly(PolyReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionReport {
    pub num: Quat,
    pub den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub ring: RingTag,
    pub f: PolyReport,
    pub partner: PartnerReport,
    pub fail_at: Quat,
    pub fail_value: FractionReport,
    pub modulus: i64,
    pub verified: bool,
}

impl WitnessReport {
    /// `verified` records [`verify_witness`] against `s`.
    pub fn new(w: &Witness, s: &QuatSet) -> Result<WitnessReport> {
        let partner = match &w.partner {
            Partner::Unit(u) => PartnerReport::Unit(*u),
            Partner::Poly(g) => PartnerReport::Poly(PolyReport::from_poly(g, w.ring)?),
        };
        Ok(WitnessReport {
            ring: w.ring,
            f: PolyReport::from_poly(&w.f, w.ring)?,
            partner,
            fail_at: w.fail_at,
            fail_value: FractionReport {
                num: w.fail_value.scale(w.modulus)?,
                den: w.modulus,
            },
            modulus: w.modulus,
            verified: verify_witness(w, s),
        })
    }

    /// Rebuilds the witness exactly as written, without recomputation.
    pub fn to_witness(&self) -> Result<Witness> {
        let partner = match &self.partner {
            PartnerReport::Unit(u) => Partner::Unit(*u),
            PartnerReport::Poly(p) => Partner::Poly(p.to_poly()?),
        };
        Ok(Witness {
            ring: self.ring,
            f: self.f.to_poly()?,
            partner,
            fail_at: self.fail_at,
            fail_value: self.fail_value.num.div_int(self.fail_value.den)?,
            modulus: self.modulus,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MinPolyReport {
    Quadratic { trace: i64, norm: i64 },
    Linear { root: String },
}

impl From<&MinPoly> for MinPolyReport {
    fn from(m: &MinPoly) -> Self {
        match *m {
            MinPoly::Quadratic { trace, norm } => MinPolyReport::Quadratic { trace, norm },
            MinPoly::Linear(r) => MinPolyReport::Linear {
                root: r.to_string(),
            },
        }
    }
}

impl MinPolyReport {
    pub fn to_min_poly(&self) -> Result<MinPoly> {
        match self {
            MinPolyReport::Quadratic { trace, norm } => Ok(MinPoly::Quadratic {
                trace: *trace,
                norm: *norm,
            }),
            MinPolyReport::Linear { root } => root
                .parse::<Rational64>()
                .map(MinPoly::Linear)
                .map_err(|e| Error::Parse {
                    token: 1,
                    column: 1,
                    message: e.to_string(),
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedReport {
    pub a: i64,
    pub n: i64,
    #[serde(rename = "T")]
    pub t: Vec<Quat>,
}

impl From<&ReducedForm> for ReducedReport {
    fn from(r: &ReducedForm) -> Self {
        ReducedReport {
            a: r.a,
            n: r.n,
            t: r.t.elems().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub min_poly: MinPolyReport,
    pub elems: Vec<Quat>,
    pub reduced: Option<ReducedReport>,
    pub gamma: Option<i64>,
    pub rule: Rule,
    pub detail: String,
    pub is_ringset: bool,
}

impl From<&ClassVerdict> for ClassReport {
    fn from(c: &ClassVerdict) -> Self {
        ClassReport {
            min_poly: (&c.min_poly).into(),
            elems: c.set.elems().to_vec(),
            reduced: c.reduced.as_ref().map(Into::into),
            gamma: c.gamma,
            rule: c.rule,
            detail: c.detail.clone(),
            is_ringset: c.is_ringset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub ring: RingTag,
    pub is_ringset: bool,
    pub classes: Vec<ClassReport>,
    pub witness: Option<WitnessReport>,
}

impl VerdictReport {
    pub fn new(v: &Verdict, s: &QuatSet) -> Result<VerdictReport> {
        Ok(VerdictReport {
            ring: v.ring,
            is_ringset: v.is_ringset,
            classes: v.classes.iter().map(Into::into).collect(),
            witness: v
                .witness
                .as_ref()
                .map(|w| WitnessReport::new(w, s))
                .transpose()?,
        })
    }

    /// Reconstructs the verdict; reduced forms are re-validated as sets.
    pub fn to_verdict(&self) -> Result<Verdict> {
        let classes = self
            .classes
            .iter()
            .map(|c| {
                Ok(ClassVerdict {
                    min_poly: c.min_poly.to_min_poly()?,
                    set: QuatSet::new(self.ring, c.elems.iter().copied())?,
                    reduced: c
                        .reduced
                        .as_ref()
                        .map(|r| {
                            Ok::<_, Error>(ReducedForm {
                                a: r.a,
                                n: r.n,
                                t: QuatSet::new(self.ring, r.t.iter().copied())?,
                            })
                        })
                        .transpose()?,
                    gamma: c.gamma,
                    rule: c.rule,
                    detail: c.detail.clone(),
                    is_ringset: c.is_ringset,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Verdict {
            ring: self.ring,
            is_ringset: self.is_ringset,
            classes,
            witness: self
                .witness
                .as_ref()
                .map(WitnessReport::to_witness)
                .transpose()?,
        })
    }
}
