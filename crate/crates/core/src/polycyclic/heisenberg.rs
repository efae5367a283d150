//! The metabelian platform `Z² ⋊_M Z`: pairs `(a, k)` with
//! `(a, k)(b, l) = (a + M^k b, k + l)` for a fixed `M ∈ GL_2(Z)`.
//!
//! Entries of `M^k` grow exponentially in `k`, so everything is
//! arbitrary precision. Powers `M^{±2^i}` are cached once per platform.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GroupOps, PolycyclicError};
use crate::serde_big;

pub type Vec2 = [BigInt; 2];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2(#[serde(with = "serde_big::mat2")] pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Self(m.map(|row| row.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0], [0, 1]])
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ])
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.0;
        [
            &m[0][0] * &v[0] + &m[0][1] * &v[1],
            &m[1][0] * &v[0] + &m[1][1] * &v[1],
        ]
    }

    /// Inverse over `Z`; requires `det = ±1`.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if !d.abs().is_one() {
            return None;
        }
        let m = &self.0;
        // adj / det, and 1/det = det when det = ±1
        Some(Mat2([
            [&m[1][1] * &d, -&m[0][1] * &d],
            [-&m[1][0] * &d, &m[0][0] * &d],
        ]))
    }
}

/// An element `(vec, shift)` of `Z² ⋊_M Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergLikeElement {
    #[serde(with = "serde_big::vec2")]
    pub vec: Vec2,
    #[serde(with = "serde_big::int")]
    pub shift: BigInt,
}

impl HeisenbergLikeElement {
    pub fn new(vec: Vec2, shift: BigInt) -> Self {
        Self { vec, shift }
    }

    pub fn from_i64(a: i64, b: i64, k: i64) -> Self {
        Self::new([a.into(), b.into()], k.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(0, 0, 0)
    }

    /// Canonical byte encoding: three length-prefixed signed big-endian integers.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for x in [&self.vec[0], &self.vec[1], &self.shift] {
            let b = x.to_signed_bytes_be();
            out.extend_from_slice(&(b.len() as u32).to_be_bytes());
            out.extend_from_slice(&b);
        }
        out
    }
}

pub struct HeisenbergPlatform {
    matrix: Mat2,
    // powers M^(2^i) and M^(-2^i), grown on demand
    pos_table: RwLock<Vec<Mat2>>,
    neg_table: RwLock<Vec<Mat2>>,
}

impl std::fmt::Debug for HeisenbergPlatform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HeisenbergPlatform").field("matrix", &self.matrix).finish()
    }
}

impl Clone for HeisenbergPlatform {
    fn clone(&self) -> Self {
        Self::new(self.matrix.clone()).expect("matrix already validated")
    }
}

/// The hyperbolic matrix used by the signature platform.
pub fn signature_matrix() -> Mat2 {
    Mat2::from_i64([[2, 1], [1, 1]])
}

impl HeisenbergPlatform {
    pub fn new(matrix: Mat2) -> Result<Self, PolycyclicError> {
        let inverse = matrix
            .inverse()
            .ok_or_else(|| PolycyclicError::BadPlatform("matrix must have determinant ±1".into()))?;
        Ok(Self {
            pos_table: RwLock::new(vec![matrix.clone()]),
            neg_table: RwLock::new(vec![inverse]),
            matrix,
        })
    }

    /// `Z² ⋊ Z` with `M = [[2,1],[1,1]]`.
    pub fn standard() -> Self {
        Self::new(signature_matrix()).expect("det 1")
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    fn table_entry(&self, negative: bool, i: usize) -> Mat2 {
        let lock = if negative { &self.neg_table } else { &self.pos_table };
        if let Some(m) = lock.read().unwrap().get(i) {
            return m.clone();
        }
        let mut t = lock.write().unwrap();
        while t.len() <= i {
            let last = t.last().unwrap();
            let sq = last.mul(last);
            t.push(sq);
        }
        t[i].clone()
    }

    /// `M^k v`.
    pub fn act(&self, k: &BigInt, v: &Vec2) -> Vec2 {
        let negative = k.is_negative();
        let mag = k.magnitude();
        let mut out = v.clone();
        for i in 0..mag.bits() {
            if mag.bit(i) {
                out = self.table_entry(negative, i as usize).apply(&out);
            }
        }
        out
    }

    pub fn matrix_power(&self, k: &BigInt) -> Mat2 {
        let negative = k.is_negative();
        let mag = k.magnitude();
        let mut out = Mat2::identity();
        for i in 0..mag.bits() {
            if mag.bit(i) {
                out = out.mul(&self.table_entry(negative, i as usize));
            }
        }
        out
    }

    pub fn heis_mul(&self, x: &HeisenbergLikeElement, y: &HeisenbergLikeElement) -> HeisenbergLikeElement {
        let moved = self.act(&x.shift, &y.vec);
        HeisenbergLikeElement {
            vec: [&x.vec[0] + &moved[0], &x.vec[1] + &moved[1]],
            shift: &x.shift + &y.shift,
        }
    }

    /// `(a, k)⁻¹ = (-M^{-k} a, -k)`.
    pub fn heis_inv(&self, x: &HeisenbergLikeElement) -> HeisenbergLikeElement {
        let neg_k = -&x.shift;
        let v = self.act(&neg_k, &x.vec);
        HeisenbergLikeElement {
            vec: [-&v[0], -&v[1]],
            shift: neg_k,
        }
    }

    pub fn heis_pow(&self, x: &HeisenbergLikeElement, k: &BigInt) -> HeisenbergLikeElement {
        self.pow(x, k)
    }

    /// `c⁻¹ x c`.
    pub fn heis_conj(&self, x: &HeisenbergLikeElement, c: &HeisenbergLikeElement) -> HeisenbergLikeElement {
        self.heis_mul(&self.heis_mul(&self.heis_inv(c), x), c)
    }

    /// Vector entries uniform below `2^bits` in absolute value, shift nonzero
    /// with `|shift| <= max_shift`.
    pub fn random_element<R: Rng + ?Sized>(&self, bits: u32, max_shift: u64, rng: &mut R) -> HeisenbergLikeElement {
        let mut coord = || {
            let mag = random_below_pow2(bits, rng);
            if rng.gen_bool(0.5) {
                -mag
            } else {
                mag
            }
        };
        let vec = [coord(), coord()];
        let shift = loop {
            let s = rng.gen_range(-(max_shift as i64)..=max_shift as i64);
            if s != 0 {
                break s;
            }
        };
        HeisenbergLikeElement::new(vec, shift.into())
    }
}

fn random_below_pow2<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> BigInt {
    let mut x = BigInt::zero();
    let mut left = bits;
    while left > 0 {
        let take = left.min(32);
        let chunk: u64 = rng.gen::<u32>() as u64 & ((1u64 << take) - 1);
        x = (x << take) + chunk;
        left -= take;
    }
    x
}

impl GroupOps for HeisenbergPlatform {
    type Element = HeisenbergLikeElement;

    fn identity(&self) -> HeisenbergLikeElement {
        HeisenbergLikeElement::identity()
    }

    fn mul(&self, a: &HeisenbergLikeElement, b: &HeisenbergLikeElement) -> HeisenbergLikeElement {
        self.heis_mul(a, b)
    }

    fn inv(&self, a: &HeisenbergLikeElement) -> HeisenbergLikeElement {
        self.heis_inv(a)
    }
}
