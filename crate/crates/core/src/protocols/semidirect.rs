//! Key exchange over the semidirect product of a (semi)group with a cyclic
//! group of endomorphisms. Pairs `(a, φ^r)` are stored as `(a, r)` and
//! multiply as `(a, r)(b, s) = (φ^s(a)·b, r + s)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ProtocolError, Role, Transcript};

pub trait SemidirectPlatform {
    type Element: Clone + PartialEq + std::fmt::Debug + Serialize;

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    /// `φ^k(a)`.
    fn phi_pow(&self, a: &Self::Element, k: u64) -> Self::Element;
    fn base(&self) -> Self::Element;
    fn random_element(&self, rng: &mut dyn rand::RngCore) -> Self::Element;

    fn phi(&self, a: &Self::Element) -> Self::Element {
        self.phi_pow(a, 1)
    }
}

fn pair_mul<P: SemidirectPlatform>(
    p: &P,
    (a, r): &(P::Element, u64),
    (b, s): &(P::Element, u64),
) -> (P::Element, u64) {
    (p.mul(&p.phi_pow(a, *s), b), r + s)
}

/// `(g, φ)^m` by square-and-multiply on pairs; returns the first component.
pub fn pair_power<P: SemidirectPlatform>(p: &P, g: &P::Element, m: u64) -> P::Element {
    assert!(m >= 1);
    let base = (g.clone(), 1u64);
    let mut acc = base.clone();
    for i in (0..63 - m.leading_zeros()).rev() {
        acc = pair_mul(p, &acc, &acc);
        if (m >> i) & 1 == 1 {
            acc = pair_mul(p, &acc, &base);
        }
    }
    acc.0
}

/// Samples the endomorphism and associativity laws on random elements.
pub fn check_platform_laws<P: SemidirectPlatform>(
    p: &P,
    samples: usize,
    rng: &mut dyn rand::RngCore,
) -> Result<(), ProtocolError> {
    for _ in 0..samples {
        let (a, b, c) = (p.random_element(rng), p.random_element(rng), p.random_element(rng));
        if p.phi(&p.mul(&a, &b)) != p.mul(&p.phi(&a), &p.phi(&b)) {
            return Err(ProtocolError::PlatformLawViolation("φ is not multiplicative".into()));
        }
        let (r, s, t) = (rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5));
        let (x, y, z) = ((a, r), (b, s), (c, t));
        let left = pair_mul(p, &pair_mul(p, &x, &y), &z);
        let right = pair_mul(p, &x, &pair_mul(p, &y, &z));
        if left != right {
            return Err(ProtocolError::PlatformLawViolation("pair product is not associative".into()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct KexOutcome<E> {
    pub alice_key: E,
    pub bob_key: E,
    pub transcript: Transcript,
}

/// Alice holds `m`, Bob holds `n`; each sends only the first component of
/// `(g, φ)^m` resp. `(g, φ)^n`.
pub fn semidirect_kex<P: SemidirectPlatform>(
    p: &P,
    m: u64,
    n: u64,
    rng: &mut dyn rand::RngCore,
) -> Result<KexOutcome<P::Element>, ProtocolError> {
    if m == 0 || n == 0 {
        return Err(ProtocolError::InvalidParameter("private exponents must be at least 1".into()));
    }
    check_platform_laws(p, 4, rng)?;
    let g = p.base();
    let mut transcript = Transcript::new();
    let a = pair_power(p, &g, m);
    transcript.push_json(Role::Alice, "a", &a);
    let b = pair_power(p, &g, n);
    transcript.push_json(Role::Bob, "b", &b);
    let alice_key = p.mul(&p.phi_pow(&b, m), &a);
    let bob_key = p.mul(&p.phi_pow(&a, n), &b);
    Ok(KexOutcome {
        alice_key,
        bob_key,
        transcript,
    })
}

/// Square matrix over `Z_q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModMatrix {
    pub size: usize,
    pub modulus: u64,
    pub entries: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(size: usize, modulus: u64) -> Self {
        let mut entries = vec![0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1 % modulus;
        }
        Self {
            size,
            modulus,
            entries,
        }
    }

    pub fn random<R: Rng + ?Sized>(size: usize, modulus: u64, rng: &mut R) -> Self {
        Self {
            size,
            modulus,
            entries: (0..size * size).map(|_| rng.gen_range(0..modulus)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (n, q) = (self.size, self.modulus as u128);
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u128;
                for k in 0..n {
                    acc = (acc + self.entries[i * n + k] as u128 * o.entries[k * n + j] as u128) % q;
                }
                entries[i * n + j] = acc as u64;
            }
        }
        Self {
            size: n,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut out = Self::identity(self.size, self.modulus);
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        out
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.size;
        let entries = (0..n)
            .filter(|&i| i != row)
            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.entries[i * n + j])
            .collect();
        Self {
            size: n - 1,
            modulus: self.modulus,
            entries,
        }
    }

    /// Determinant by cofactor expansion; meant for small sizes.
    pub fn det(&self) -> u64 {
        let (n, q) = (self.size, self.modulus);
        match n {
            0 => 1 % q,
            1 => self.entries[0] % q,
            _ => (0..n).fold(0, |acc, j| {
                let term = mulmod(self.entries[j], self.minor(0, j).det(), q);
                if j % 2 == 0 {
                    (acc + term) % q
                } else {
                    (acc + q - term) % q
                }
            }),
        }
    }

    /// `adj(A) · det(A)⁻¹`; `None` when the determinant is not a unit.
    pub fn inverse(&self) -> Option<Self> {
        let (n, q) = (self.size, self.modulus);
        let d_inv = mod_inverse(self.det(), q)?;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                let c = if (i + j) % 2 == 0 { c } else { (q - c) % q };
                entries[i * n + j] = mulmod(c, d_inv, q);
            }
        }
        Some(Self {
            size: n,
            modulus: q,
            entries,
        })
    }
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (t0, t1) = (t1, t0 - quo * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(q as i128) as u64)
}

/// Matrices under multiplication with `φ(a) = H⁻¹ a H`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixConjugationPlatform {
    pub g: ModMatrix,
    pub h: ModMatrix,
    pub h_inv: ModMatrix,
}

impl MatrixConjugationPlatform {
    pub fn new(g: ModMatrix, h: ModMatrix) -> Result<Self, ProtocolError> {
        let h_inv = h
            .inverse()
            .ok_or_else(|| ProtocolError::InvalidParameter("H is not invertible".into()))?;
        Ok(Self { g, h, h_inv })
    }

    /// Random `g` and random invertible `H` over `Z_q`.
    pub fn random<R: Rng + ?Sized>(size: usize, modulus: u64, rng: &mut R) -> Self {
        let g = ModMatrix::random(size, modulus, rng);
        loop {
            let h = ModMatrix::random(size, modulus, rng);
            if let Ok(p) = Self::new(g.clone(), h) {
                return p;
            }
        }
    }
}

impl SemidirectPlatform for MatrixConjugationPlatform {
    type Element = ModMatrix;

    fn mul(&self, a: &ModMatrix, b: &ModMatrix) -> ModMatrix {
        a.mul(b)
    }

    fn phi_pow(&self, a: &ModMatrix, k: u64) -> ModMatrix {
        self.h_inv.pow(k).mul(a).mul(&self.h.pow(k))
    }

    fn base(&self) -> ModMatrix {
        self.g.clone()
    }

    fn random_element(&self, rng: &mut dyn rand::RngCore) -> ModMatrix {
        ModMatrix::random(self.g.size, self.g.modulus, rng)
    }
}

/// `(Z_q, ×)` with `φ` the identity; the exchange degenerates to
/// Diffie-Hellman-style `g^{m+n}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CommutativePlatform {
    pub modulus: u64,
    pub g: u64,
}

impl SemidirectPlatform for CommutativePlatform {
    type Element = u64;

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.modulus)
    }

    fn phi_pow(&self, a: &u64, _k: u64) -> u64 {
        *a
    }

    fn base(&self) -> u64 {
        self.g
    }

    fn random_element(&self, rng: &mut dyn rand::RngCore) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}

pub fn mod_pow(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut out = 1 % q;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            out = mulmod(out, base, q);
        }
        base = mulmod(base, base, q);
        e >>= 1;
    }
    out
}
