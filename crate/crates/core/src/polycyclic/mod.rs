//! Polycyclic groups: pc-presentations with collection, plus two concrete
//! platforms (`Z² ⋊_M Z` and `U_m(F_p)`) and commutator calculus over any
//! [`GroupOps`] implementation.

mod heisenberg;
mod pc;
mod unitriangular;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use heisenberg::{signature_matrix, HeisenbergLikeElement, HeisenbergPlatform, Mat2, Vec2};
pub use pc::{PcElement, PcPresentation, RelOrder, Syllable, DEFAULT_COLLECTION_BUDGET};
pub use unitriangular::{is_prime, UnitriangularGroup, UnitriangularMatrix};

/// Largest group [`is_n_engel`] will enumerate exhaustively.
pub const EXHAUSTIVE_ENGEL_LIMIT: u128 = 1_000_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PolycyclicError {
    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,
    #[error("bad platform: {0}")]
    BadPlatform(String),
    #[error("collection did not terminate within {steps} steps")]
    InconsistentPresentation { steps: u64 },
    #[error("relation {0} does not hold in the collected group")]
    RelationFails(String),
    #[error("group of order {order:?} exceeds the enumeration limit {limit}")]
    SizeLimit { order: Option<u128>, limit: u128 },
    #[error("malformed presentation, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("exponent vector has length {got}, presentation has {expected} generators")]
    Length { got: usize, expected: usize },
}

/// Group arithmetic on a platform whose elements are plain values.
pub trait GroupOps {
    type Element: Clone + PartialEq;

    fn identity(&self) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inv(&self, a: &Self::Element) -> Self::Element;

    fn is_identity(&self, a: &Self::Element) -> bool {
        *a == self.identity()
    }

    /// Square-and-multiply; negative exponents invert first.
    fn pow(&self, a: &Self::Element, k: &BigInt) -> Self::Element {
        let base = if k.is_negative() { self.inv(a) } else { a.clone() };
        let mag = k.magnitude();
        let mut out = self.identity();
        for i in (0..mag.bits()).rev() {
            out = self.mul(&out, &out);
            if mag.bit(i) {
                out = self.mul(&out, &base);
            }
        }
        out
    }

    fn pow_i64(&self, a: &Self::Element, k: i64) -> Self::Element {
        self.pow(a, &BigInt::from(k))
    }

    /// `c⁻¹ a c`.
    fn conj(&self, a: &Self::Element, c: &Self::Element) -> Self::Element {
        self.mul(&self.mul(&self.inv(c), a), c)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn commutator2(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }
}

/// A platform that can list all of its elements.
pub trait FiniteGroup: GroupOps {
    /// `None` when the order does not fit in a `u128`.
    fn order(&self) -> Option<u128>;
    fn elements(&self) -> Vec<Self::Element>;
}

/// Left-normed `[x_1, …, x_n] = [[x_1, …, x_{n-1}], x_n]`; a single element
/// is returned unchanged.
///
/// # Panics
/// On an empty list.
pub fn commutator<G: GroupOps>(g: &G, xs: &[G::Element]) -> G::Element {
    let (first, rest) = xs.split_first().expect("commutator of an empty list");
    rest.iter()
        .fold(first.clone(), |acc, x| g.commutator2(&acc, x))
}

/// `[x, _n y] = [x, y, …, y]` with `n` copies of `y`.
pub fn engel_word<G: GroupOps>(g: &G, x: &G::Element, y: &G::Element, n: usize) -> G::Element {
    assert!(n >= 1, "Engel words need n >= 1");
    (0..n).fold(x.clone(), |acc, _| g.commutator2(&acc, y))
}

/// Which pairs [`is_n_engel`] checks.
#[derive(Clone, Debug)]
pub enum EngelMode<'a, E> {
    /// Every pair; a decision procedure.
    Exhaustive,
    /// Only pairs drawn from the sample; can only refute.
    Sample(&'a [E]),
}

pub fn is_n_engel<G: FiniteGroup>(
    g: &G,
    n: usize,
    mode: EngelMode<'_, G::Element>,
) -> Result<bool, PolycyclicError> {
    let owned;
    let elements: &[G::Element] = match mode {
        EngelMode::Sample(s) => s,
        EngelMode::Exhaustive => {
            let order = g.order();
            match order {
                Some(o) if o <= EXHAUSTIVE_ENGEL_LIMIT => {}
                _ => {
                    return Err(PolycyclicError::SizeLimit {
                        order,
                        limit: EXHAUSTIVE_ENGEL_LIMIT,
                    })
                }
            }
            owned = g.elements();
            &owned
        }
    };
    Ok(elements
        .iter()
        .all(|x| elements.iter().all(|y| g.is_identity(&engel_word(g, x, y, n)))))
}

/// `Z` under addition, mostly for tests and the commutative key exchange.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerGroup;

impl GroupOps for IntegerGroup {
    type Element = BigInt;

    fn identity(&self) -> BigInt {
        BigInt::zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        -a
    }
}

/// `Z/m` under addition, enumerable.
#[derive(Clone, Copy, Debug)]
pub struct CyclicGroup(pub u64);

impl GroupOps for CyclicGroup {
    type Element = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
}

impl FiniteGroup for CyclicGroup {
    fn order(&self) -> Option<u128> {
        Some(self.0 as u128)
    }

    fn elements(&self) -> Vec<u64> {
        (0..self.0).collect()
    }
}
