//! Multiparty key agreement from commutator identities in unitriangular
//! groups: the interactive exchange on `U_{n+2}(F_p)` built from Engel words,
//! and the non-interactive exchange on `U_{n+1}(F_p)`.

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ProtocolError, Role, Transcript};
use crate::polycyclic::{commutator, engel_word, GroupOps, UnitriangularGroup, UnitriangularMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PublicChoice {
    /// Elementary matrices.
    #[default]
    Standard,
    /// Uniform random elements, resampled while degenerate.
    Random,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultipartyOutcome {
    pub public: Vec<UnitriangularMatrix>,
    /// Key computed by each user, in user order.
    pub keys: Vec<UnitriangularMatrix>,
    /// The bracket power predicted by multilinearity.
    pub closed_form: UnitriangularMatrix,
    pub transcript: Transcript,
}

impl MultipartyOutcome {
    pub fn agreed(&self) -> bool {
        self.keys.iter().all(|k| *k == self.closed_form)
    }
}

fn pow(g: &UnitriangularGroup, x: &UnitriangularMatrix, a: u64) -> UnitriangularMatrix {
    g.pow(x, &BigInt::from(a))
}

fn product_mod(xs: &[u64], p: u64) -> u64 {
    xs.iter().fold(1u64, |acc, &a| ((acc as u128 * a as u128) % p as u128) as u64)
}

fn check_users(n: usize, exps: &[u64], min_n: usize) -> Result<(), ProtocolError> {
    if n < min_n {
        return Err(ProtocolError::InvalidParameter(format!("need n >= {min_n}")));
    }
    if exps.len() != n + 1 {
        return Err(ProtocolError::InvalidParameter(format!(
            "{} private exponents for {} users",
            exps.len(),
            n + 1
        )));
    }
    if exps.contains(&0) {
        return Err(ProtocolError::InvalidParameter("private exponents must be nonzero".into()));
    }
    Ok(())
}

/// Nonzero private exponents for `users` users, below `p` so that keys are
/// nontrivial.
pub fn random_exponents<R: Rng + ?Sized>(users: usize, p: u64, rng: &mut R) -> Vec<u64> {
    (0..users).map(|_| rng.gen_range(1..p)).collect()
}

/// Public `(x, g)` in `U_{n+2}(F_p)` with `[x, _n g] ≠ 1`.
pub fn ktt_public<R: Rng + ?Sized>(
    group: &UnitriangularGroup,
    n: usize,
    choice: PublicChoice,
    rng: &mut R,
) -> (UnitriangularMatrix, UnitriangularMatrix) {
    match choice {
        PublicChoice::Standard => {
            let upper: Vec<_> = (1..group.size - 1).map(|i| (i, i + 1, 1)).collect();
            let g = UnitriangularMatrix::from_upper(group.size, group.modulus, &upper).unwrap();
            (group.elementary(0), g)
        }
        PublicChoice::Random => loop {
            let (x, g) = (group.random(rng), group.random(rng));
            if !engel_word(group, &x, &g, n).is_identity() {
                return (x, g);
            }
        },
    }
}

/// `n + 1` users with private exponents `exps` (user `j` holds `exps[j-1]`).
pub fn ktt_exchange(
    p: u64,
    n: usize,
    x: &UnitriangularMatrix,
    g: &UnitriangularMatrix,
    exps: &[u64],
) -> Result<MultipartyOutcome, ProtocolError> {
    check_users(n, exps, 1)?;
    let group = UnitriangularGroup::new(n + 2, p)?;
    let base = engel_word(&group, x, g, n);
    if base.is_identity() {
        return Err(ProtocolError::DegeneratePlatform("[x, _n g] is trivial".into()));
    }
    let mut transcript = Transcript::new();
    let published: Vec<UnitriangularMatrix> = exps.iter().map(|&a| pow(&group, g, a)).collect();
    for (j, m) in published.iter().enumerate() {
        transcript.push_json(Role::User(j + 1), "g^a", m);
    }
    let keys = (0..=n)
        .map(|j| {
            let mut entries = vec![pow(&group, x, exps[j])];
            entries.extend((0..=n).filter(|&i| i != j).map(|i| published[i].clone()));
            commutator(&group, &entries)
        })
        .collect();
    let closed_form = pow(&group, &base, product_mod(exps, p));
    Ok(MultipartyOutcome {
        public: vec![x.clone(), g.clone()],
        keys,
        closed_form,
        transcript,
    })
}

/// Public `g_1 … g_n` in `U_{n+1}(F_p)` with `[g_1, …, g_n] ≠ 1`.
pub fn ks_public<R: Rng + ?Sized>(
    group: &UnitriangularGroup,
    n: usize,
    choice: PublicChoice,
    rng: &mut R,
) -> Vec<UnitriangularMatrix> {
    match choice {
        PublicChoice::Standard => (0..n).map(|i| group.elementary(i)).collect(),
        PublicChoice::Random => loop {
            let gs: Vec<_> = (0..n).map(|_| group.random(rng)).collect();
            if !commutator(group, &gs).is_identity() {
                return gs;
            }
        },
    }
}

/// Non-interactive exchange among `n + 1` users. Everyone publishes
/// `g_i^{a_j}` once; user 1 evaluates `[g_1^{a_{n+1}}, g_2^{a_2}, …, g_n^{a_n}]^{a_1}`
/// and user `j ≥ 2` fills the slots with the other users in increasing order.
pub fn ks_nike(
    p: u64,
    n: usize,
    gs: &[UnitriangularMatrix],
    exps: &[u64],
) -> Result<MultipartyOutcome, ProtocolError> {
    check_users(n, exps, 2)?;
    if gs.len() != n {
        return Err(ProtocolError::InvalidParameter(format!("need {n} public elements")));
    }
    let group = UnitriangularGroup::new(n + 1, p)?;
    let base = commutator(&group, gs);
    if base.is_identity() {
        return Err(ProtocolError::DegeneratePlatform("[g_1, …, g_n] is trivial".into()));
    }
    let mut transcript = Transcript::new();
    // published[j][i] = g_i^{a_j}
    let published: Vec<Vec<UnitriangularMatrix>> = exps
        .iter()
        .map(|&a| gs.iter().map(|g| pow(&group, g, a)).collect())
        .collect();
    for (j, row) in published.iter().enumerate() {
        transcript.push_json(Role::User(j + 1), "g_i^a", row);
    }
    let keys = (0..=n)
        .map(|j| {
            let slots: Vec<usize> = if j == 0 {
                std::iter::once(n).chain(1..n).collect()
            } else {
                (0..=n).filter(|&i| i != j).collect()
            };
            let entries: Vec<_> = slots
                .iter()
                .enumerate()
                .map(|(i, &user)| published[user][i].clone())
                .collect();
            pow(&group, &commutator(&group, &entries), exps[j])
        })
        .collect();
    let closed_form = pow(&group, &base, product_mod(exps, p));
    Ok(MultipartyOutcome {
        public: gs.to_vec(),
        keys,
        closed_form,
        transcript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn ktt_unit_exponents_give_engel_word() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for n in 1..=4 {
            let group = UnitriangularGroup::new(n + 2, 5).unwrap();
            let (x, g) = ktt_public(&group, n, PublicChoice::Standard, &mut rng);
            let out = ktt_exchange(5, n, &x, &g, &vec![1; n + 1]).unwrap();
            assert!(out.agreed());
            assert_eq!(out.closed_form, engel_word(&group, &x, &g, n));
        }
    }

    #[test]
    fn ktt_key_is_central_and_agreed() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let group = UnitriangularGroup::new(4, 5).unwrap();
        let (x, g) = ktt_public(&group, 2, PublicChoice::Random, &mut rng);
        let exps = random_exponents(3, 5, &mut rng);
        let out = ktt_exchange(5, 2, &x, &g, &exps).unwrap();
        assert!(out.agreed());
        let k = &out.keys[0];
        assert_eq!(k.mul(&x), x.mul(k));
        assert_eq!(k.mul(&g), g.mul(k));
        assert_eq!(out.transcript.len(), 3);
    }

    #[test]
    fn ks_heisenberg_closed_form() {
        let group = UnitriangularGroup::new(3, 7).unwrap();
        let gs = ks_public(&group, 2, PublicChoice::Standard, &mut ChaCha20Rng::seed_from_u64(0));
        let exps = [2, 3, 4];
        let out = ks_nike(7, 2, &gs, &exps).unwrap();
        assert!(out.agreed());
        let e13 = UnitriangularMatrix::from_upper(3, 7, &[(0, 2, 24 % 7)]).unwrap();
        assert_eq!(out.closed_form, e13);
        let unit = ks_nike(7, 2, &gs, &[1, 1, 1]).unwrap();
        assert_eq!(unit.keys[0], commutator(&group, &gs));
    }

    #[test]
    fn ks_middle_permutation_invariant() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let group = UnitriangularGroup::new(5, 5).unwrap();
        let gs = ks_public(&group, 4, PublicChoice::Random, &mut rng);
        let a = random_exponents(5, 5, &mut rng);
        let out = ks_nike(5, 4, &gs, &a).unwrap();
        assert!(out.agreed());
        let e = |i: usize, u: usize| group.pow(&gs[i], &BigInt::from(a[u]));
        let one = commutator(&group, &[e(0, 4), e(1, 1), e(2, 2), e(3, 3)]);
        let two = commutator(&group, &[e(0, 4), e(1, 3), e(2, 1), e(3, 2)]);
        assert_eq!(one, two);
    }

    #[test]
    fn degenerate_public_data() {
        let group = UnitriangularGroup::new(4, 3).unwrap();
        let x = group.elementary(0);
        assert!(matches!(
            ktt_exchange(3, 2, &x, &x, &[1, 1, 1]),
            Err(ProtocolError::DegeneratePlatform(_))
        ));
    }
}
