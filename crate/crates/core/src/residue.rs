//! Arithmetic in `R/nR` on lattice coordinates.
//!
//! `L` uses the basis `{1, i, j, k}` and `H` the basis `{1, i, j, h}` with
//! `h = (1+i+j+k)/2`. Products of basis elements are computed once from exact
//! quaternion arithmetic and stored as structure constants.

use crate::error::{Error, Result};
use crate::quat::{Quat, RingTag};

/// Coordinates in the lattice basis, each in `[0, n)`.
pub type Residue = [i64; 4];

pub fn basis(ring: RingTag) -> [Quat; 4] {
    match ring {
        RingTag::L => [Quat::ONE, Quat::I, Quat::J, Quat::K],
        RingTag::H => [Quat::ONE, Quat::I, Quat::J, Quat::H],
    }
}

/// Integer coordinates of an order element in the lattice basis.
pub fn coordinates(q: &Quat, ring: RingTag) -> Result<[i64; 4]> {
    q.ensure_in(ring)?;
    match ring {
        RingTag::L => Ok(q.numerators()),
        RingTag::H => {
            let d = q.doubled().ok_or(Error::Overflow)?;
            // q = a + b i + c j + e h with e = 2 c3 and a = c0 - c3, etc.
            let e = d[3];
            Ok([(d[0] - e) / 2, (d[1] - e) / 2, (d[2] - e) / 2, e])
        }
    }
}

pub fn from_coordinates(c: &[i64; 4], ring: RingTag) -> Result<Quat> {
    let b = basis(ring);
    let mut acc = Quat::ZERO;
    for (k, &ck) in c.iter().enumerate() {
        acc = acc.checked_add(&b[k].scale(ck)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct ResidueRing {
    ring: RingTag,
    modulus: i64,
    table: [[[i64; 4]; 4]; 4],
}

impl ResidueRing {
    pub fn new(ring: RingTag, modulus: i64) -> Result<ResidueRing> {
        if modulus < 1 {
            return Err(Error::precondition(format!(
                "modulus {modulus} must be positive"
            )));
        }
        let b = basis(ring);
        let mut table = [[[0; 4]; 4]; 4];
        for (x, bx) in b.iter().enumerate() {
            for (y, by) in b.iter().enumerate() {
                table[x][y] = coordinates(&bx.checked_mul(by)?, ring)?;
            }
        }
        Ok(ResidueRing {
            ring,
            modulus,
            table,
        })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn reduce(&self, q: &Quat) -> Result<Residue> {
        Ok(coordinates(q, self.ring)?.map(|c| c.rem_euclid(self.modulus)))
    }

    pub fn lift(&self, r: &Residue) -> Result<Quat> {
        from_coordinates(r, self.ring)
    }

    pub fn is_zero(&self, r: &Residue) -> bool {
        r.iter().all(|&c| c.rem_euclid(self.modulus) == 0)
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        let m = i128::from(self.modulus);
        [0, 1, 2, 3].map(|k| narrow((i128::from(a[k]) + i128::from(b[k])).rem_euclid(m)))
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        let m = i128::from(self.modulus);
        let mut out = [0i128; 4];
        for (ax, row) in a.iter().zip(&self.table) {
            for (by, prod) in b.iter().zip(row) {
                let s = i128::from(*ax) * i128::from(*by) % m;
                for (slot, t) in out.iter_mut().zip(prod) {
                    *slot = (*slot + s * i128::from(*t)).rem_euclid(m);
                }
            }
        }
        out.map(narrow)
    }

    /// Right evaluation `Σ cᵢ αⁱ` in `R/nR`.
    pub fn poly_eval(&self, coeffs: &[Residue], at: &Residue) -> Residue {
        let mut acc = [0; 4];
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, at), c);
        }
        acc
    }

    pub fn poly_mul(&self, a: &[Residue], b: &[Residue]) -> Vec<Residue> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![[0; 4]; a.len() + b.len() - 1];
        for (x, ca) in a.iter().enumerate() {
            for (y, cb) in b.iter().enumerate() {
                out[x + y] = self.add(&out[x + y], &self.mul(ca, cb));
            }
        }
        out
    }
}

fn narrow(v: i128) -> i64 {
    // Values are reduced modulo an i64 modulus.
    i64::try_from(v).expect("residue fits the modulus")
}
