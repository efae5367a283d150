//! Conjugacy-based signatures over `Z² ⋊_M Z`.
//!
//! Keys: `g = ((0,0),1)`, private `s` and `n`, public `x = s⁻¹ gⁿ s`.
//! A signature on `m` is `⟨y, α, n_j⟩` with `y = t⁻¹ g^{n_i} t`,
//! `h = H(m ‖ f(y))` and `α = t⁻¹ s h y`, where `n = n_i n_j`. It verifies
//! when `α⁻¹ y^{n_j} α = (h y)⁻¹ x (h y)`.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{length_prefixed, HashAlg, ProtocolError};
use crate::polycyclic::{HeisenbergLikeElement, HeisenbergPlatform};
use crate::serde_big;

/// The first twenty primes; `n` is a product of several of them.
pub const SMALL_PRIMES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Entries of `M^k` have about `0.7·k` bits, so `n` (and with it every shift
/// that occurs) is kept below this bound.
pub const MAX_N: u64 = 1 << 16;

/// Shifts of the random conjugators `s` and `t` are nonzero with absolute value at most this.
pub const MAX_CONJUGATOR_SHIFT: u64 = 1 << 12;

pub const DEFAULT_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicKey {
    pub g: HeisenbergLikeElement,
    pub x: HeisenbergLikeElement,
    pub hash: HashAlg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureKeys {
    pub public: PublicKey,
    pub s: HeisenbergLikeElement,
    pub n: u64,
    /// Prime factors of `n` with multiplicity.
    pub factors: Vec<u64>,
    /// Bit size of the vector entries of `s` and `t`.
    pub bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureValue {
    pub y: HeisenbergLikeElement,
    pub alpha: HeisenbergLikeElement,
    #[serde(with = "serde_big::int")]
    pub n_j: BigInt,
}

/// The public generator `((0,0),1)`.
pub fn generator() -> HeisenbergLikeElement {
    HeisenbergLikeElement::from_i64(0, 0, 1)
}

/// `f`: the canonical byte encoding of a group element.
pub fn encode_element(e: &HeisenbergLikeElement) -> Vec<u8> {
    e.to_bytes()
}

/// `H`: digest bytes 0..8 and 8..16 give the vector (as unsigned 64-bit
/// integers), bytes 16..18 give the shift minus one.
pub fn hash_to_group(alg: HashAlg, data: &[u8]) -> HeisenbergLikeElement {
    let d = alg.digest(&[data]);
    let a = u64::from_be_bytes(d[0..8].try_into().unwrap());
    let b = u64::from_be_bytes(d[8..16].try_into().unwrap());
    let k = u16::from_be_bytes(d[16..18].try_into().unwrap()) as u64 + 1;
    HeisenbergLikeElement::new([a.into(), b.into()], k.into())
}

/// `H(m ‖ f(y))` with `m` length-prefixed.
pub fn message_hash(alg: HashAlg, message: &[u8], y: &HeisenbergLikeElement) -> HeisenbergLikeElement {
    let mut data = length_prefixed(message);
    data.extend_from_slice(&encode_element(y));
    hash_to_group(alg, &data)
}

/// Product of 4 to 8 primes from [`SMALL_PRIMES`], resampled until at most [`MAX_N`].
pub fn sample_composite<R: Rng + ?Sized>(rng: &mut R) -> Vec<u64> {
    loop {
        let count = rng.gen_range(4..=8);
        let mut factors: Vec<u64> = (0..count)
            .map(|_| *SMALL_PRIMES.choose(rng).unwrap())
            .collect();
        if factors.iter().product::<u64>() <= MAX_N {
            factors.sort_unstable();
            return factors;
        }
    }
}

/// Uniform choice of `(n_i, n_j)` with `n_i n_j = n` and both above 1.
pub fn random_factorization<R: Rng + ?Sized>(n: u64, rng: &mut R) -> (u64, u64) {
    let divisors: Vec<u64> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    let d = *divisors.choose(rng).expect("n is composite");
    (d, n / d)
}

fn random_conjugator<R: Rng + ?Sized>(
    platform: &HeisenbergPlatform,
    bits: u32,
    rng: &mut R,
) -> HeisenbergLikeElement {
    platform.random_element(bits, MAX_CONJUGATOR_SHIFT, rng)
}

pub fn sig_keygen<R: Rng + ?Sized>(
    platform: &HeisenbergPlatform,
    bits: u32,
    hash: HashAlg,
    rng: &mut R,
) -> SignatureKeys {
    let factors = sample_composite(rng);
    let s = random_conjugator(platform, bits, rng);
    keys_from_parts(platform, s, factors, bits, hash)
}

/// Builds keys from a chosen private conjugator and factorization of `n`.
pub fn keys_from_parts(
    platform: &HeisenbergPlatform,
    s: HeisenbergLikeElement,
    factors: Vec<u64>,
    bits: u32,
    hash: HashAlg,
) -> SignatureKeys {
    let n: u64 = factors.iter().product();
    let g = generator();
    let x = platform.heis_conj(&platform.heis_pow(&g, &BigInt::from(n)), &s);
    SignatureKeys {
        public: PublicKey { g, x, hash },
        s,
        n,
        factors,
        bits,
    }
}

pub fn sig_sign<R: Rng + ?Sized>(
    platform: &HeisenbergPlatform,
    keys: &SignatureKeys,
    message: &[u8],
    rng: &mut R,
) -> SignatureValue {
    let (n_i, n_j) = random_factorization(keys.n, rng);
    let t = random_conjugator(platform, keys.bits, rng);
    let g = &keys.public.g;
    let y = platform.heis_conj(&platform.heis_pow(g, &BigInt::from(n_i)), &t);
    let h = message_hash(keys.public.hash, message, &y);
    let t_inv = platform.heis_inv(&t);
    let alpha = platform.heis_mul(&platform.heis_mul(&platform.heis_mul(&t_inv, &keys.s), &h), &y);
    SignatureValue {
        y,
        alpha,
        n_j: n_j.into(),
    }
}

/// `Ok(true)` iff the verification equation holds.
pub fn sig_verify(
    platform: &HeisenbergPlatform,
    public: &PublicKey,
    message: &[u8],
    sig: &SignatureValue,
) -> Result<bool, ProtocolError> {
    if !sig.n_j.is_positive() {
        return Err(ProtocolError::MalformedSignature("n_j must be positive".into()));
    }
    if sig.n_j > BigInt::from(MAX_N) {
        return Err(ProtocolError::MalformedSignature(format!("n_j exceeds {MAX_N}")));
    }
    let h = message_hash(public.hash, message, &sig.y);
    let lhs = platform.heis_conj(&platform.heis_pow(&sig.y, &sig.n_j), &sig.alpha);
    let rhs = platform.heis_conj(&public.x, &platform.heis_mul(&h, &sig.y));
    Ok(lhs == rhs)
}
