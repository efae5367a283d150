mod common;

use std::path::PathBuf;

use groupcrypt::fhe::{
    centered_lift, decode_db, decrypt_mean, encode_db, encrypted_sum, read_csv_column, Ciphertext,
    CiphertextFile, ExactMean, RetractScheme, TruncatedPolyScheme,
};
use proptest::prelude::*;
use rand::{Rng, RngCore};

/// Always samples the zero element of the ideal.
struct ZeroNoise<'a>(&'a TruncatedPolyScheme);

impl RetractScheme for ZeroNoise<'_> {
    type Plain = u64;
    type Cipher = Ciphertext;
    fn embed(&self, u: &u64) -> Ciphertext {
        self.0.embed(u)
    }
    fn retract(&self, c: &Ciphertext) -> u64 {
        self.0.retract(c)
    }
    fn sample_noise(&self, _rng: &mut dyn RngCore) -> Ciphertext {
        self.0.from_poly_coeffs(&vec![0; self.0.degree()])
    }
    fn s_add(&self, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
        self.0.s_add(a, b)
    }
    fn s_mul(&self, a: &Ciphertext, b: &Ciphertext) -> Ciphertext {
        self.0.s_mul(a, b)
    }
}

fn schemes(n: u64, d: usize, seed: u64) -> [TruncatedPolyScheme; 2] {
    [
        TruncatedPolyScheme::new(n, d).unwrap(),
        TruncatedPolyScheme::with_random_basis(n, d, &mut common::rng(seed)).unwrap(),
    ]
}

#[test]
fn exhaustive_small_rings() {
    let mut rng = common::rng(0);
    for n in 2..=11u64 {
        for d in 2..=4 {
            for s in schemes(n, d, n * 10 + d as u64) {
                for u in 0..n {
                    for v in 0..n {
                        let (cu, cv) = (s.encrypt(&u, &mut rng), s.encrypt(&v, &mut rng));
                        assert_eq!(s.decrypt(&s.ct_add(&cu, &cv)), (u + v) % n);
                        assert_eq!(s.decrypt(&s.ct_mul(&cu, &cv)), u * v % n);
                    }
                }
            }
        }
    }
}

#[test]
fn zero_noise_gives_the_embedding() {
    let mut rng = common::rng(1);
    for s in schemes(101, 4, 3) {
        let z = ZeroNoise(&s);
        for u in 0..101 {
            assert_eq!(z.encrypt(&u, &mut rng), s.embed(&u));
            assert_eq!(z.decrypt(&z.encrypt(&u, &mut rng)), u);
        }
    }
}

fn random_element(s: &TruncatedPolyScheme, rng: &mut impl Rng) -> Ciphertext {
    let poly: Vec<u64> = (0..s.degree()).map(|_| rng.gen_range(0..s.modulus())).collect();
    s.from_poly_coeffs(&poly)
}

#[test]
fn retraction_is_a_ring_homomorphism() {
    let mut rng = common::rng(2);
    for s in schemes(1_000_003, 4, 9) {
        let n = s.modulus();
        for _ in 0..10_000 {
            let (a, b) = (random_element(&s, &mut rng), random_element(&s, &mut rng));
            let (ra, rb) = (s.retract(&a), s.retract(&b));
            assert_eq!(s.retract(&s.s_add(&a, &b)), (ra + rb) % n);
            assert_eq!(s.retract(&s.s_mul(&a, &b)), (ra as u128 * rb as u128 % n as u128) as u64);
        }
    }
}

#[test]
fn long_products_decrypt() {
    let mut rng = common::rng(3);
    for d in 2..=6 {
        for s in schemes(65_537, d, d as u64) {
            for _ in 0..50 {
                let us: Vec<u64> = (0..d).map(|_| rng.gen_range(0..65_537)).collect();
                let c = us.iter().map(|u| s.encrypt(u, &mut rng)).reduce(|a, b| s.ct_mul(&a, &b)).unwrap();
                let expect = us.iter().fold(1u64, |acc, &u| acc * u % 65_537);
                assert_eq!(s.decrypt(&c), expect);
            }
        }
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn bundled_datasets_have_exact_encrypted_means() {
    let mut rng = common::rng(4);
    let s = TruncatedPolyScheme::with_random_basis(1_000_000_007, 4, &mut rng).unwrap();
    for (file, columns) in [
        ("blood_pressure.csv", &["systolic", "diastolic"][..]),
        ("temperatures.csv", &["min_c", "max_c"][..]),
        ("ledger.csv", &["amount_cents"][..]),
    ] {
        for col in columns {
            let values = read_csv_column(&data(file), col).unwrap();
            let residues = encode_db(&values, s.modulus(), values.len() as u64).unwrap();
            assert_eq!(decode_db(&residues, s.modulus()), values.iter().map(|&v| v as i128).collect::<Vec<_>>());
            let cts: Vec<_> = residues.iter().map(|u| s.encrypt(u, &mut rng)).collect();
            let sum = encrypted_sum(&s.public, &cts).unwrap();
            let mean = decrypt_mean(&s, &sum, values.len() as u64);
            let plain: i128 = values.iter().map(|&v| v as i128).sum();
            assert_eq!(mean, ExactMean::new(plain, values.len() as u64), "{file}:{col}");
        }
    }
}

proptest! {
    #[test]
    fn encoding_round_trips(values in prop::collection::vec(-1_000_000i64..1_000_000, 1..50)) {
        let n = 1_000_000_007;
        let r = encode_db(&values, n, values.len() as u64).unwrap();
        let back = decode_db(&r, n);
        prop_assert_eq!(back, values.iter().map(|&v| v as i128).collect::<Vec<_>>());
    }

    #[test]
    fn encrypted_mean_is_exact(values in prop::collection::vec(-10_000i64..10_000, 1..40), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = TruncatedPolyScheme::with_random_basis(1_000_003, 4, &mut rng).unwrap();
        let r = encode_db(&values, s.modulus(), values.len() as u64).unwrap();
        let cts: Vec<_> = r.iter().map(|u| s.encrypt(u, &mut rng)).collect();
        let sum = encrypted_sum(&s.public, &cts).unwrap();
        prop_assert_eq!(centered_lift(s.decrypt(&sum), s.modulus()), values.iter().map(|&v| v as i128).sum::<i128>());
    }

    #[test]
    fn ciphertext_files_round_trip(seed in any::<u64>(), us in prop::collection::vec(0u64..97, 0..8)) {
        let mut rng = common::rng(seed);
        let s = TruncatedPolyScheme::with_random_basis(97, 4, &mut rng).unwrap();
        let f = CiphertextFile::new(&s.public, us.iter().map(|u| s.encrypt(u, &mut rng)).collect());
        let back: CiphertextFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(&back, &f);
        back.check(&s.public).unwrap();
    }
}
