//! Upper unitriangular matrices over `F_p`; `U_m(F_p)` is nilpotent of
//! class `m - 1`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupOps, PolycyclicError};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitriangularMatrix {
    size: usize,
    modulus: u64,
    // row-major, size * size
    entries: Vec<u64>,
}

impl UnitriangularMatrix {
    pub fn identity(size: usize, modulus: u64) -> Self {
        let mut entries = vec![0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1;
        }
        Self {
            size,
            modulus,
            entries,
        }
    }

    /// `I + Σ c·E_ij` from a list of strictly-upper entries (0-based).
    pub fn from_upper(
        size: usize,
        modulus: u64,
        upper: &[(usize, usize, u64)],
    ) -> Result<Self, PolycyclicError> {
        let mut m = Self::identity(size, modulus);
        for &(i, j, c) in upper {
            if i >= j || j >= size {
                return Err(PolycyclicError::NotUnitriangular);
            }
            m.entries[i * size + j] = (m.entries[i * size + j] + c % modulus) % modulus;
        }
        Ok(m)
    }

    /// Checks shape: ones on the diagonal, zeros below, entries reduced.
    pub fn from_rows(modulus: u64, rows: Vec<Vec<u64>>) -> Result<Self, PolycyclicError> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(PolycyclicError::NotUnitriangular);
            }
            for (j, &c) in row.iter().enumerate() {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => c == 1,
                    std::cmp::Ordering::Greater => c == 0,
                    std::cmp::Ordering::Less => c < modulus,
                };
                if !ok {
                    return Err(PolycyclicError::NotUnitriangular);
                }
                entries.push(c);
            }
        }
        Ok(Self {
            size,
            modulus,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size, self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.size, self.modulus), (other.size, other.modulus));
        let (n, p) = (self.size, self.modulus as u128);
        let mut out = Self::identity(n, self.modulus);
        for i in 0..n {
            for j in i + 1..n {
                let mut acc: u128 = 0;
                for k in i..=j {
                    acc = (acc + self.get(i, k) as u128 * other.get(k, j) as u128) % p;
                }
                out.entries[i * n + j] = (acc % p) as u64;
            }
        }
        out
    }

    /// Back-substitution for `X` with `self · X = I`.
    pub fn inv(&self) -> Self {
        let (n, p) = (self.size, self.modulus as u128);
        let mut out = Self::identity(n, self.modulus);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc: u128 = 0;
                for k in i + 1..=j {
                    acc = (acc + self.get(i, k) as u128 * out.get(k, j) as u128) % p;
                }
                out.entries[i * n + j] = ((p - acc % p) % p) as u64;
            }
        }
        out
    }
}

impl fmt::Debug for UnitriangularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}(F{}){:?}", self.size, self.modulus, self.rows())
    }
}

/// The group `U_m(F_p)` as a platform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitriangularGroup {
    pub size: usize,
    pub modulus: u64,
}

impl UnitriangularGroup {
    pub fn new(size: usize, modulus: u64) -> Result<Self, PolycyclicError> {
        if size < 1 || !is_prime(modulus) {
            return Err(PolycyclicError::BadPlatform(format!(
                "U_{size}(F_{modulus}) needs size >= 1 and a prime modulus"
            )));
        }
        Ok(Self { size, modulus })
    }

    /// `I + E_{i,i+1}` (0-based `i`).
    pub fn elementary(&self, i: usize) -> UnitriangularMatrix {
        UnitriangularMatrix::from_upper(self.size, self.modulus, &[(i, i + 1, 1)])
            .expect("superdiagonal entry")
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitriangularMatrix {
        let mut m = UnitriangularMatrix::identity(self.size, self.modulus);
        for i in 0..self.size {
            for j in i + 1..self.size {
                m.entries[i * self.size + j] = rng.gen_range(0..self.modulus);
            }
        }
        m
    }

    pub fn order(&self) -> Option<u128> {
        let free = (self.size * (self.size - 1) / 2) as u32;
        (self.modulus as u128).checked_pow(free)
    }
}

impl GroupOps for UnitriangularGroup {
    type Element = UnitriangularMatrix;

    fn identity(&self) -> UnitriangularMatrix {
        UnitriangularMatrix::identity(self.size, self.modulus)
    }

    fn mul(&self, a: &UnitriangularMatrix, b: &UnitriangularMatrix) -> UnitriangularMatrix {
        a.mul(b)
    }

    fn inv(&self, a: &UnitriangularMatrix) -> UnitriangularMatrix {
        a.inv()
    }
}

impl FiniteGroup for UnitriangularGroup {
    fn order(&self) -> Option<u128> {
        UnitriangularGroup::order(self)
    }

    fn elements(&self) -> Vec<UnitriangularMatrix> {
        let slots: Vec<(usize, usize)> = (0..self.size)
            .flat_map(|i| (i + 1..self.size).map(move |j| (i, j)))
            .collect();
        let total = self.order().expect("caller checked the order") as usize;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0u64; slots.len()];
        loop {
            let mut m = UnitriangularMatrix::identity(self.size, self.modulus);
            for (&(i, j), &d) in slots.iter().zip(&digits) {
                m.entries[i * self.size + j] = d;
            }
            out.push(m);
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return out;
                }
                digits[k] += 1;
                if digits[k] < self.modulus {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycyclic::commutator;

    #[test]
    fn inverse_round_trip() {
        let g = UnitriangularGroup::new(5, 7).unwrap();
        let mut rng = rand::thread_rng();
        for _ in 0..50 {
            let x = g.random(&mut rng);
            assert!(x.mul(&x.inv()).is_identity());
            assert!(x.inv().mul(&x).is_identity());
        }
    }

    #[test]
    fn heisenberg_commutator() {
        // [I+E12, I+E23] = I+E13 in U_3(F_5), computed by hand
        let g = UnitriangularGroup::new(3, 5).unwrap();
        let c = commutator(&g, &[g.elementary(0), g.elementary(1)]);
        assert_eq!(c.rows(), vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn enumeration_size() {
        let g = UnitriangularGroup::new(3, 2).unwrap();
        let els = g.elements();
        assert_eq!(els.len(), 8);
        let distinct: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn shape_checks() {
        assert!(UnitriangularMatrix::from_rows(5, vec![vec![1, 2], vec![0, 1]]).is_ok());
        assert!(UnitriangularMatrix::from_rows(5, vec![vec![1, 2], vec![1, 1]]).is_err());
        assert!(UnitriangularMatrix::from_rows(5, vec![vec![2, 0], vec![0, 1]]).is_err());
        assert!(UnitriangularGroup::new(3, 6).is_err());
    }
}
