//! Private-key "retract" homomorphic encryption: plaintexts live in a ring
//! `R`, ciphertexts in a larger public ring `S ⊃ R` with a private ideal `I`
//! and a retraction `ρ: S → R` that kills `I`. Encryption adds a random
//! element of `I`.
//!
//! The concrete scheme here is `S = Z_N[t]/(t^d)`, `I = (t)`, `ρ` = evaluation
//! at `t = 0`. It is NOT SECURE: with the standard basis the plaintext is the
//! constant coefficient. An optional secret unimodular basis change hides that
//! coordinate from a casual reader but not from any real adversary.

mod encoding;

pub use encoding::{
    centered_lift, decode_db, encode_db, read_csv_column, read_csv_column_from, to_residue,
};

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SECURITY_NOTICE: &str = "NOT SECURE: toy retract scheme for demonstration only";

pub const DEFAULT_DEGREE: usize = 4;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FheError {
    #[error("value {value} needs a modulus above {needed}, have {modulus}")]
    OverflowRisk { value: i128, needed: u128, modulus: u64 },
    #[error("csv row {row}, column {column:?}: {msg}")]
    Csv { row: usize, column: String, msg: String },
    #[error("parameters do not match: {0}")]
    Mismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io: {0}")]
    Io(String),
}

/// The abstract framework: `R → S → R' → R`.
pub trait RetractScheme {
    type Plain: Clone + PartialEq;
    type Cipher: Clone + PartialEq;

    fn embed(&self, u: &Self::Plain) -> Self::Cipher;
    /// `ρ: S → R'`.
    fn retract(&self, c: &Self::Cipher) -> Self::Plain;
    /// `φ: R' → R`; the identity for a retract.
    fn iso(&self, r: &Self::Plain) -> Self::Plain {
        r.clone()
    }
    /// A random element of the private ideal `I`.
    fn sample_noise(&self, rng: &mut dyn rand::RngCore) -> Self::Cipher;
    fn s_add(&self, a: &Self::Cipher, b: &Self::Cipher) -> Self::Cipher;
    fn s_mul(&self, a: &Self::Cipher, b: &Self::Cipher) -> Self::Cipher;

    fn encrypt(&self, u: &Self::Plain, rng: &mut dyn rand::RngCore) -> Self::Cipher {
        self.s_add(&self.embed(u), &self.sample_noise(rng))
    }

    fn decrypt(&self, c: &Self::Cipher) -> Self::Plain {
        self.iso(&self.retract(c))
    }

    fn ct_add(&self, a: &Self::Cipher, b: &Self::Cipher) -> Self::Cipher {
        self.s_add(a, b)
    }

    fn ct_mul(&self, a: &Self::Cipher, b: &Self::Cipher) -> Self::Cipher {
        self.s_mul(a, b)
    }
}

/// An element of `S` in public coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ciphertext {
    #[serde(with = "decimal_vec")]
    pub coeffs: Vec<u64>,
}

mod decimal_vec {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[u64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(|_| D::Error::custom(format!("bad coefficient {s:?}"))))
            .collect()
    }
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

fn addmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

/// What the public gets: `Z_N`-module of rank `d` plus the multiplication
/// table of its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicRing {
    pub modulus: u64,
    pub degree: usize,
    /// `table[i][j]` is `e_i · e_j` in public coordinates.
    pub table: Vec<Vec<Vec<u64>>>,
}

impl PublicRing {
    pub fn add(&self, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
        Ciphertext {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| addmod(x, y, self.modulus))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
        let (n, d) = (self.modulus, self.degree);
        let mut out = vec![0u64; d];
        for i in 0..d {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..d {
                let c = mulmod(a.coeffs[i], b.coeffs[j], n);
                if c == 0 {
                    continue;
                }
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = addmod(*o, mulmod(c, t, n), n);
                }
            }
        }
        Ciphertext { coeffs: out }
    }

    /// Identifies the public basis in ciphertext file headers.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("serializable");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn check(&self, c: &Ciphertext) -> Result<(), FheError> {
        if c.coeffs.len() != self.degree || c.coeffs.iter().any(|&x| x >= self.modulus) {
            return Err(FheError::Mismatch(format!(
                "ciphertext is not a reduced vector of length {}",
                self.degree
            )));
        }
        Ok(())
    }
}

/// Square matrix over `Z_N`, row-major.
fn mat_vec(m: &[Vec<u64>], v: &[u64], n: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| addmod(acc, mulmod(a, b, n), n)))
        .collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], n: u64) -> Vec<Vec<u64>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(0, |acc, k| addmod(acc, mulmod(a[i][k], b[k][j], n), n)))
                .collect()
        })
        .collect()
}

fn identity(d: usize) -> Vec<Vec<u64>> {
    (0..d).map(|i| (0..d).map(|j| (i == j) as u64).collect()).collect()
}

/// Inverse of a unit lower (`lower = true`) or upper triangular matrix.
#[allow(clippy::needless_range_loop)]
fn unit_triangular_inverse(m: &[Vec<u64>], lower: bool, n: u64) -> Vec<Vec<u64>> {
    let d = m.len();
    let mut inv = identity(d);
    // solve m · X = I column by column
    for col in 0..d {
        let rows: Vec<usize> = if lower { (0..d).collect() } else { (0..d).rev().collect() };
        for &i in &rows {
            let mut acc = (i == col) as u64 % n;
            let range: Vec<usize> = if lower { (0..i).collect() } else { (i + 1..d).collect() };
            for k in range {
                acc = (acc + n - mulmod(m[i][k], inv[k][col], n)) % n;
            }
            inv[i][col] = acc;
        }
    }
    inv
}

/// The key holder's view of `Z_N[t]/(t^d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedPolyScheme {
    pub public: PublicRing,
    /// Public coordinates to polynomial coefficients.
    to_poly: Vec<Vec<u64>>,
    /// Polynomial coefficients to public coordinates.
    from_poly: Vec<Vec<u64>>,
}

impl TruncatedPolyScheme {
    /// Standard basis `1, t, …, t^{d-1}`.
    pub fn new(modulus: u64, degree: usize) -> Result<Self, FheError> {
        Self::with_basis(modulus, degree, identity(degree), identity(degree))
    }

    /// Basis mixed by a secret `L·U` with unit triangular factors.
    pub fn with_random_basis<R: Rng + ?Sized>(modulus: u64, degree: usize, rng: &mut R) -> Result<Self, FheError> {
        let mut l = identity(degree);
        let mut u = identity(degree);
        for i in 0..degree {
            for j in 0..i {
                l[i][j] = rng.gen_range(0..modulus.max(1));
                u[j][i] = rng.gen_range(0..modulus.max(1));
            }
        }
        let p = mat_mul(&l, &u, modulus);
        let p_inv = mat_mul(
            &unit_triangular_inverse(&u, false, modulus),
            &unit_triangular_inverse(&l, true, modulus),
            modulus,
        );
        Self::with_basis(modulus, degree, p, p_inv)
    }

    fn with_basis(
        modulus: u64,
        degree: usize,
        to_poly: Vec<Vec<u64>>,
        from_poly: Vec<Vec<u64>>,
    ) -> Result<Self, FheError> {
        if modulus < 2 || degree < 2 {
            return Err(FheError::InvalidParameter("need N >= 2 and d >= 2".into()));
        }
        if mat_mul(&to_poly, &from_poly, modulus) != identity(degree) {
            return Err(FheError::InvalidParameter("basis change is not invertible".into()));
        }
        let mut scheme = Self {
            public: PublicRing {
                modulus,
                degree,
                table: Vec::new(),
            },
            to_poly,
            from_poly,
        };
        let columns: Vec<Vec<u64>> = (0..degree)
            .map(|i| (0..degree).map(|k| scheme.to_poly[k][i]).collect())
            .collect();
        scheme.public.table = (0..degree)
            .map(|i| {
                (0..degree)
                    .map(|j| {
                        let prod = poly_mul(&columns[i], &columns[j], modulus);
                        mat_vec(&scheme.from_poly, &prod, modulus)
                    })
                    .collect()
            })
            .collect();
        Ok(scheme)
    }

    pub fn modulus(&self) -> u64 {
        self.public.modulus
    }

    pub fn degree(&self) -> usize {
        self.public.degree
    }

    /// Polynomial coefficients of a ciphertext (private view).
    pub fn poly_coeffs(&self, c: &Ciphertext) -> Vec<u64> {
        mat_vec(&self.to_poly, &c.coeffs, self.modulus())
    }

    /// Public coordinates of a polynomial.
    pub fn from_poly_coeffs(&self, poly: &[u64]) -> Ciphertext {
        let n = self.modulus();
        let reduced: Vec<u64> = poly.iter().map(|&x| x % n).collect();
        Ciphertext {
            coeffs: mat_vec(&self.from_poly, &reduced, n),
        }
    }

    /// Encryption with the zero-noise sampler.
    pub fn encrypt_noiseless(&self, u: &u64) -> Ciphertext {
        self.embed(u)
    }
}

/// Product in `Z_N[t]/(t^d)` on coefficient vectors.
fn poly_mul(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    let d = a.len();
    let mut out = vec![0u64; d];
    for i in 0..d {
        for j in 0..d - i {
            out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], n), n);
        }
    }
    out
}

impl RetractScheme for TruncatedPolyScheme {
    type Plain = u64;
    type Cipher = Ciphertext;

    fn embed(&self, u: &u64) -> Ciphertext {
        let mut poly = vec![0u64; self.degree()];
        poly[0] = u % self.modulus();
        self.from_poly_coeffs(&poly)
    }

    fn retract(&self, c: &Ciphertext) -> u64 {
        // constant coefficient
        self.to_poly[0]
            .iter()
            .zip(&c.coeffs)
            .fold(0, |acc, (&a, &b)| addmod(acc, mulmod(a, b, self.modulus()), self.modulus()))
    }

    fn sample_noise(&self, rng: &mut dyn rand::RngCore) -> Ciphertext {
        let mut poly: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..self.modulus())).collect();
        poly[0] = 0;
        self.from_poly_coeffs(&poly)
    }

    fn s_add(&self, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
        self.public.add(a, b)
    }

    fn s_mul(&self, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
        self.public.mul(a, b)
    }
}

/// Ciphertexts with the parameters needed to operate on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiphertextFile {
    pub notice: String,
    pub modulus: u64,
    pub degree: usize,
    pub basis_digest: String,
    pub ciphertexts: Vec<Ciphertext>,
}

impl CiphertextFile {
    pub fn new(ring: &PublicRing, ciphertexts: Vec<Ciphertext>) -> Self {
        Self {
            notice: SECURITY_NOTICE.into(),
            modulus: ring.modulus,
            degree: ring.degree,
            basis_digest: ring.digest(),
            ciphertexts,
        }
    }

    pub fn check(&self, ring: &PublicRing) -> Result<(), FheError> {
        if self.modulus != ring.modulus || self.degree != ring.degree || self.basis_digest != ring.digest() {
            return Err(FheError::Mismatch("ciphertext header does not match the ring".into()));
        }
        self.ciphertexts.iter().try_for_each(|c| ring.check(c))
    }
}

/// Homomorphic sum of a nonempty list.
pub fn encrypted_sum(ring: &PublicRing, cts: &[Ciphertext]) -> Option<Ciphertext> {
    let (first, rest) = cts.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, c| ring.add(&acc, c)))
}

/// An exact mean `numerator / denominator` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMean {
    pub numerator: i128,
    pub denominator: u64,
}

impl ExactMean {
    pub fn new(sum: i128, count: u64) -> Self {
        let g = gcd(sum.unsigned_abs(), count as u128).max(1);
        Self {
            numerator: sum / g as i128,
            denominator: (count as u128 / g) as u64,
        }
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Decrypts an encrypted column sum and divides by the count.
pub fn decrypt_mean(scheme: &TruncatedPolyScheme, sum: &Ciphertext, count: u64) -> ExactMean {
    ExactMean::new(centered_lift(scheme.decrypt(sum), scheme.modulus()), count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn decrypt_is_constant_term() {
        let s = TruncatedPolyScheme::new(5, 3).unwrap();
        let c = s.from_poly_coeffs(&[2, 3, 1]);
        assert_eq!(s.decrypt(&c), 2);
    }

    #[test]
    fn z5_round_trip_and_product() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let s = TruncatedPolyScheme::new(5, 3).unwrap();
        for u in 0..5 {
            assert_eq!(s.decrypt(&s.encrypt(&u, &mut rng)), u);
            assert_eq!(s.decrypt(&s.embed(&u)), u);
        }
        let c = s.ct_mul(&s.encrypt(&2, &mut rng), &s.encrypt(&3, &mut rng));
        assert_eq!(s.decrypt(&c), 1);
        assert_eq!(s.encrypt_noiseless(&4), s.embed(&4));
    }

    #[test]
    fn zero_encryptions_differ() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let s = TruncatedPolyScheme::new(101, 4).unwrap();
        let (a, b) = (s.encrypt(&0, &mut rng), s.encrypt(&0, &mut rng));
        assert_ne!(a, b);
        assert_eq!(s.decrypt(&a), 0);
        assert_eq!(s.decrypt(&s.sample_noise(&mut rng)), 0);
    }

    #[test]
    fn mixed_basis_behaves_the_same() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let s = TruncatedPolyScheme::with_random_basis(97, 4, &mut rng).unwrap();
        assert_ne!(s.public, TruncatedPolyScheme::new(97, 4).unwrap().public);
        for _ in 0..200 {
            let (u, v, w) = (rng.gen_range(0..97), rng.gen_range(0..97), rng.gen_range(0..97));
            let e = |x: u64, rng: &mut ChaCha20Rng| s.encrypt(&x, rng);
            let c = s.ct_mul(&s.ct_add(&e(u, &mut rng), &e(v, &mut rng)), &e(w, &mut rng));
            assert_eq!(s.decrypt(&c), (u + v) * w % 97);
        }
    }

    #[test]
    fn deep_products_still_decrypt() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let s = TruncatedPolyScheme::new(1_000_003, 4).unwrap();
        let mut c = s.encrypt(&1, &mut rng);
        let mut expect = 1u64;
        for k in 2..20u64 {
            c = s.ct_mul(&c, &s.encrypt(&k, &mut rng));
            expect = expect * k % 1_000_003;
            assert_eq!(s.decrypt(&c), expect);
        }
    }

    #[test]
    fn ciphertext_file_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let s = TruncatedPolyScheme::with_random_basis(101, 4, &mut rng).unwrap();
        let f = CiphertextFile::new(&s.public, vec![s.encrypt(&7, &mut rng)]);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("NOT SECURE"));
        let back: CiphertextFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        back.check(&s.public).unwrap();
        let other = TruncatedPolyScheme::new(101, 4).unwrap();
        assert!(back.check(&other.public).is_err());
    }

    #[test]
    fn exact_mean_reduces() {
        assert_eq!(ExactMean::new(20, 3), ExactMean { numerator: 20, denominator: 3 });
        assert_eq!(ExactMean::new(-6, 4), ExactMean { numerator: -3, denominator: 2 });
        assert_eq!(ExactMean::new(0, 5), ExactMean { numerator: 0, denominator: 1 });
    }
}
