//! Polycyclic presentations and collection.
//!
//! Generators are `g_0 … g_{n-1}`. Relations:
//! `g_i⁻¹ g_j g_i = u_ij`, `g_i g_j g_i⁻¹ = v_ij` (both words in `g_{i+1}…`),
//! and `g_i^{r_i} = w_i` for finite relative orders. A missing conjugation
//! relation means the generators commute; a missing power relation means
//! `g_i^{r_i} = 1`. For finite `i` the `v_ij` are derived from `u_ij` and `w_i`.
//!
//! Multiplying a collected element `x = p · g_k^e · t` by `g_k^f` gives
//! `p · g_k^{(e+f) mod r} · w_k^q · φ_k^f(t)` where `φ_k(y) = g_k⁻¹ y g_k`
//! acts on `⟨g_{k+1}, …⟩`. The right-hand factor lives strictly deeper, so the
//! recursion bottoms out; the step budget only bounds the total work.

use std::cell::Cell;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GroupOps, PolycyclicError};
use crate::raag::GroupWord;
use crate::serde_big;

pub const DEFAULT_COLLECTION_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelOrder {
    Finite(u64),
    Infinite,
}

impl RelOrder {
    pub fn is_finite(self) -> bool {
        matches!(self, RelOrder::Finite(_))
    }
}

/// `g_generator ^ exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: usize,
    #[serde(with = "serde_big::int")]
    pub exponent: BigInt,
}

impl Syllable {
    pub fn new(generator: usize, exponent: impl Into<BigInt>) -> Self {
        Self {
            generator,
            exponent: exponent.into(),
        }
    }
}

fn fmt_word(w: &[Syllable]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|s| {
            if s.exponent.is_one() {
                format!("a{}", s.generator)
            } else {
                format!("a{}^{}", s.generator, s.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_word(s: &str) -> Result<Vec<Syllable>, String> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<BigInt>()
                    .map_err(|_| format!("bad exponent in {tok:?}"))?,
            ),
            None => (tok, BigInt::one()),
        };
        let (sign, digits) = if let Some(d) = base.strip_prefix('a') {
            (1, d)
        } else if let Some(d) = base.strip_prefix('A') {
            (-1, d)
        } else {
            return Err(format!("bad token {tok:?}"));
        };
        let generator: usize = digits.parse().map_err(|_| format!("bad token {tok:?}"))?;
        out.push(Syllable::new(generator, exp * sign));
    }
    Ok(out)
}

/// Collected form `g_0^{e_0} … g_{n-1}^{e_{n-1}}`, finite coordinates in `[0, r_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PcElement {
    #[serde(with = "serde_big::vec")]
    pub exponents: Vec<BigInt>,
}

impl PcElement {
    pub fn identity(n: usize) -> Self {
        Self {
            exponents: vec![BigInt::zero(); n],
        }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = Self::identity(n);
        e.exponents[i] = BigInt::one();
        e
    }

    pub fn from_i64(exps: &[i64]) -> Self {
        Self {
            exponents: exps.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn syllables(&self) -> impl Iterator<Item = Syllable> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| Syllable::new(i, e.clone()))
    }

    pub fn to_word_syllables(&self) -> Vec<Syllable> {
        self.syllables().collect()
    }
}

// images of g_j (j > k) under an automorphism of <g_{k+1}, ...>
type ImageTable = Vec<PcElement>;

#[derive(Clone, Debug)]
pub struct PcPresentation {
    n: usize,
    rel_orders: Vec<RelOrder>,
    conj_up: BTreeMap<(usize, usize), Vec<Syllable>>,
    conj_down: BTreeMap<(usize, usize), Vec<Syllable>>,
    powers: BTreeMap<usize, Vec<Syllable>>,
    budget: u64,
    // collected caches, indexed by the acting generator k
    up: Vec<ImageTable>,
    down: Vec<ImageTable>,
    power_elems: Vec<PcElement>,
}

impl PartialEq for PcPresentation {
    fn eq(&self, o: &Self) -> bool {
        (self.n, &self.rel_orders, &self.conj_up, &self.conj_down, &self.powers)
            == (o.n, &o.rel_orders, &o.conj_up, &o.conj_down, &o.powers)
    }
}

impl PcPresentation {
    /// Builds a presentation and precomputes the collected relation images.
    pub fn new(
        rel_orders: Vec<RelOrder>,
        conj_up: BTreeMap<(usize, usize), Vec<Syllable>>,
        conj_down: BTreeMap<(usize, usize), Vec<Syllable>>,
        powers: BTreeMap<usize, Vec<Syllable>>,
    ) -> Result<Self, PolycyclicError> {
        let n = rel_orders.len();
        let invalid = |m: String| Err(PolycyclicError::Invalid(m));
        for (i, r) in rel_orders.iter().enumerate() {
            if let RelOrder::Finite(r) = r {
                if *r < 2 {
                    return invalid(format!("relative order of g{i} must be at least 2"));
                }
            }
        }
        for (label, map) in [("conj", &conj_up), ("conjinv", &conj_down)] {
            for (&(i, j), w) in map {
                if !(i < j && j < n) {
                    return invalid(format!("{label} {i} {j}: need i < j < n"));
                }
                if w.iter().any(|s| s.generator <= i || s.generator >= n) {
                    return invalid(format!("{label} {i} {j}: word must use generators above {i}"));
                }
            }
        }
        for (&i, w) in &powers {
            if i >= n || !rel_orders[i].is_finite() {
                return invalid(format!("pow {i}: generator must exist and have finite order"));
            }
            if w.iter().any(|s| s.generator <= i || s.generator >= n) {
                return invalid(format!("pow {i}: word must use generators above {i}"));
            }
        }
        for &(i, j) in conj_down.keys() {
            if rel_orders[i].is_finite() {
                return invalid(format!("conjinv {i} {j}: derived automatically for finite g{i}"));
            }
        }
        let mut pres = Self {
            n,
            rel_orders,
            conj_up,
            conj_down,
            powers,
            budget: DEFAULT_COLLECTION_BUDGET,
            up: vec![Vec::new(); n],
            down: vec![Vec::new(); n],
            power_elems: vec![PcElement::identity(n); n],
        };
        for k in (0..n).rev() {
            let c = Collector::new(&pres);
            let w = match pres.powers.get(&k) {
                Some(word) => c.collect_syllables(word)?,
                None => PcElement::identity(n),
            };
            let mut up = vec![PcElement::identity(n); n];
            for (j, slot) in up.iter_mut().enumerate().skip(k + 1) {
                *slot = match pres.conj_up.get(&(k, j)) {
                    Some(word) => c.collect_syllables(word)?,
                    None => PcElement::generator(n, j),
                };
            }
            pres.up[k] = up;
            pres.power_elems[k] = w;

            let c = Collector::new(&pres);
            let mut down = vec![PcElement::identity(n); n];
            for (j, slot) in down.iter_mut().enumerate().skip(k + 1) {
                let gj = PcElement::generator(n, j);
                *slot = match pres.rel_orders[k] {
                    RelOrder::Finite(r) => {
                        // g_k g_j g_k⁻¹ = w · φ_k^{r-1}(g_j) · w⁻¹
                        let w = &pres.power_elems[k];
                        let img = c.apply_table(&c.aut_power(k, &BigInt::from(r - 1))?, k, &gj)?;
                        c.mul(&c.mul(w, &img)?, &c.inv(w)?)?
                    }
                    RelOrder::Infinite => match pres.conj_down.get(&(k, j)) {
                        Some(word) => c.collect_syllables(word)?,
                        None if pres.up[k][j] == gj => gj,
                        None => {
                            return invalid(format!(
                                "conjinv {k} {j} is required: g{k} has infinite order and moves g{j}"
                            ))
                        }
                    },
                };
            }
            pres.down[k] = down;
        }
        Ok(pres)
    }

    /// Collection step budget per top-level operation.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rel_orders(&self) -> &[RelOrder] {
        &self.rel_orders
    }

    pub fn conj_up(&self) -> &BTreeMap<(usize, usize), Vec<Syllable>> {
        &self.conj_up
    }

    pub fn conj_down(&self) -> &BTreeMap<(usize, usize), Vec<Syllable>> {
        &self.conj_down
    }

    pub fn powers(&self) -> &BTreeMap<usize, Vec<Syllable>> {
        &self.powers
    }

    pub fn hirsch_length(&self) -> usize {
        self.rel_orders.iter().filter(|r| !r.is_finite()).count()
    }

    /// Product of the relative orders when all are finite.
    pub fn finite_order(&self) -> Option<u128> {
        self.rel_orders.iter().try_fold(1u128, |acc, r| match r {
            RelOrder::Finite(r) => acc.checked_mul(*r as u128),
            RelOrder::Infinite => None,
        })
    }

    pub fn identity(&self) -> PcElement {
        PcElement::identity(self.n)
    }

    pub fn generator(&self, i: usize) -> PcElement {
        PcElement::generator(self.n, i)
    }

    pub fn collect(&self, w: &GroupWord) -> Result<PcElement, PolycyclicError> {
        for l in w.letters() {
            if l.generator >= self.n {
                return Err(PolycyclicError::Invalid(format!(
                    "letter {l} outside {} generators",
                    self.n
                )));
            }
        }
        let syl: Vec<Syllable> = w
            .letters()
            .iter()
            .map(|l| Syllable::new(l.generator, if l.inverse { -1 } else { 1 }))
            .collect();
        Collector::new(self).collect_syllables(&syl)
    }

    pub fn collect_syllables(&self, w: &[Syllable]) -> Result<PcElement, PolycyclicError> {
        if let Some(s) = w.iter().find(|s| s.generator >= self.n) {
            return Err(PolycyclicError::Invalid(format!(
                "generator {} outside {} generators",
                s.generator, self.n
            )));
        }
        Collector::new(self).collect_syllables(w)
    }

    /// Collects an arbitrary exponent vector, read as a product of powers.
    pub fn normalize(&self, x: &PcElement) -> Result<PcElement, PolycyclicError> {
        self.check_len(x)?;
        self.collect_syllables(&x.to_word_syllables())
    }

    fn check_len(&self, x: &PcElement) -> Result<(), PolycyclicError> {
        if x.len() == self.n {
            Ok(())
        } else {
            Err(PolycyclicError::Length {
                got: x.len(),
                expected: self.n,
            })
        }
    }

    pub fn pc_mul(&self, x: &PcElement, y: &PcElement) -> Result<PcElement, PolycyclicError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Collector::new(self).mul(x, y)
    }

    pub fn pc_inv(&self, x: &PcElement) -> Result<PcElement, PolycyclicError> {
        self.check_len(x)?;
        Collector::new(self).inv(x)
    }

    pub fn pc_pow(&self, x: &PcElement, k: &BigInt) -> Result<PcElement, PolycyclicError> {
        self.check_len(x)?;
        Collector::new(self).pow(x, k)
    }

    /// `c⁻¹ x c`.
    pub fn pc_conj(&self, x: &PcElement, c: &PcElement) -> Result<PcElement, PolycyclicError> {
        let col = Collector::new(self);
        col.mul(&col.mul(&col.inv(c)?, x)?, c)
    }

    /// Exhaustive consistency check for finite presentations of order at most
    /// `limit`: right multiplication by each generator must permute the
    /// collected forms, every relation must hold as a permutation, and the
    /// generated permutation group must be transitive.
    pub fn check_consistency(&self, limit: u128) -> Result<(), PolycyclicError> {
        let order = self.finite_order();
        let total = match order {
            Some(o) if o <= limit => o as usize,
            _ => return Err(PolycyclicError::SizeLimit { order, limit }),
        };
        let elements = self.enumerate_collected();
        debug_assert_eq!(elements.len(), total);
        let index: HashMap<&PcElement, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let c = Collector::new(self);
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(self.n);
        let mut inv_perms: Vec<Vec<usize>> = Vec::with_capacity(self.n);
        for g in 0..self.n {
            let mut perm = Vec::with_capacity(total);
            for x in &elements {
                let y = c.mul_syllable(x, g, &BigInt::one())?;
                let idx = index.get(&y).copied().ok_or_else(|| {
                    PolycyclicError::RelationFails(format!("product by g{g} is not collected"))
                })?;
                perm.push(idx);
            }
            let mut inv = vec![usize::MAX; total];
            for (i, &p) in perm.iter().enumerate() {
                if inv[p] != usize::MAX {
                    return Err(PolycyclicError::RelationFails(format!(
                        "right multiplication by g{g} is not a bijection"
                    )));
                }
                inv[p] = i;
            }
            perms.push(perm);
            inv_perms.push(inv);
        }
        let act = |pt: usize, w: &[Syllable]| -> usize {
            let mut p = pt;
            for s in w {
                let table = if s.exponent.is_negative() {
                    &inv_perms[s.generator]
                } else {
                    &perms[s.generator]
                };
                for _ in 0..s.exponent.magnitude().to_u64().unwrap() {
                    p = table[p];
                }
            }
            p
        };
        let check = |label: String, lhs: &[Syllable], rhs: &[Syllable]| {
            if (0..total).all(|p| act(p, lhs) == act(p, rhs)) {
                Ok(())
            } else {
                Err(PolycyclicError::RelationFails(label))
            }
        };
        for i in 0..self.n {
            let r = match self.rel_orders[i] {
                RelOrder::Finite(r) => r,
                RelOrder::Infinite => unreachable!(),
            };
            let w = self.powers.get(&i).cloned().unwrap_or_default();
            check(format!("pow {i}"), &[Syllable::new(i, r)], &w)?;
            for j in i + 1..self.n {
                let u = self
                    .conj_up
                    .get(&(i, j))
                    .cloned()
                    .unwrap_or_else(|| vec![Syllable::new(j, 1)]);
                check(
                    format!("conj {i} {j}"),
                    &[Syllable::new(i, -1), Syllable::new(j, 1), Syllable::new(i, 1)],
                    &u,
                )?;
            }
        }
        // transitivity: the orbit of the identity covers every collected form
        let mut seen = HashSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            for g in 0..self.n {
                for q in [perms[g][p], inv_perms[g][p]] {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
        if seen.len() != total {
            return Err(PolycyclicError::RelationFails("generators are not transitive".into()));
        }
        Ok(())
    }

    /// All collected forms of a finite presentation, identity first.
    pub fn enumerate_collected(&self) -> Vec<PcElement> {
        let radices: Vec<u64> = self
            .rel_orders
            .iter()
            .map(|r| match r {
                RelOrder::Finite(r) => *r,
                RelOrder::Infinite => panic!("enumeration needs finite relative orders"),
            })
            .collect();
        let mut out = Vec::new();
        let mut digits = vec![0u64; self.n];
        loop {
            out.push(PcElement {
                exponents: digits.iter().map(|&d| BigInt::from(d)).collect(),
            });
            let mut k = self.n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < radices[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    // ---- standard examples ----

    /// `S_3 = ⟨a, b | a² = b³ = 1, b^a = b²⟩`.
    pub fn symmetric3() -> Self {
        "2\norder 2\norder 3\nconj 0 1 -> a1^2\n"
            .parse()
            .expect("valid presentation")
    }

    /// Dihedral group of order 8: `a, b, c` of order 2 with `b² = c`,
    /// `b^a = bc`, `c` central.
    pub fn dihedral8() -> Self {
        "3\norder 2\norder 2\norder 2\nconj 0 1 -> a1 a2\npow 1 -> a2\n"
            .parse()
            .expect("valid presentation")
    }

    pub fn free_abelian(n: usize) -> Self {
        Self::new(
            vec![RelOrder::Infinite; n],
            BTreeMap::new(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .expect("valid presentation")
    }

    /// `Z² ⋊_M Z` for `M = [[2,1],[1,1]]` with generators `t, x, y`; the
    /// collected form `t^k x^a y^b` is the pair `(M^k (a, b), k)`.
    pub fn z2_semidirect_z() -> Self {
        "3\norder inf\norder inf\norder inf\n\
         conj 0 1 -> a1 a2^-1\nconj 0 2 -> a1^-1 a2^2\n\
         conjinv 0 1 -> a1^2 a2\nconjinv 0 2 -> a1 a2\n"
            .parse()
            .expect("valid presentation")
    }

    /// `U_3(F_p)` on `I+E12, I+E23, I+E13`.
    pub fn unitriangular3(p: u64) -> Self {
        format!("3\norder {p}\norder {p}\norder {p}\nconj 0 1 -> a1 a2^{}\n", p - 1)
            .parse()
            .expect("valid presentation")
    }
}

struct Collector<'a> {
    pres: &'a PcPresentation,
    steps: Cell<u64>,
}

impl<'a> Collector<'a> {
    fn new(pres: &'a PcPresentation) -> Self {
        Self {
            pres,
            steps: Cell::new(0),
        }
    }

    fn tick(&self) -> Result<(), PolycyclicError> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if s > self.pres.budget {
            Err(PolycyclicError::InconsistentPresentation { steps: s })
        } else {
            Ok(())
        }
    }

    fn collect_syllables(&self, w: &[Syllable]) -> Result<PcElement, PolycyclicError> {
        let mut x = self.pres.identity();
        for s in w {
            x = self.mul_syllable(&x, s.generator, &s.exponent)?;
        }
        Ok(x)
    }

    fn mul_syllable(&self, x: &PcElement, k: usize, f: &BigInt) -> Result<PcElement, PolycyclicError> {
        if f.is_zero() {
            return Ok(x.clone());
        }
        self.tick()?;
        let n = self.pres.n;
        let mut tail = PcElement::identity(n);
        tail.exponents[k + 1..].clone_from_slice(&x.exponents[k + 1..]);
        let total = &x.exponents[k] + f;
        let (rem, lower) = match self.pres.rel_orders[k] {
            RelOrder::Finite(r) => {
                let (q, rem) = total.div_mod_floor(&BigInt::from(r));
                let w = if q.is_zero() {
                    PcElement::identity(n)
                } else {
                    self.pow(&self.pres.power_elems[k], &q)?
                };
                (rem, w)
            }
            RelOrder::Infinite => (total, PcElement::identity(n)),
        };
        let moved = if tail.is_identity() {
            tail
        } else if f.magnitude() <= &2u32.into() {
            let table = if f.is_positive() {
                &self.pres.up[k]
            } else {
                &self.pres.down[k]
            };
            let mut t = tail;
            for _ in 0..f.magnitude().to_u32().unwrap() {
                t = self.apply_table(table, k, &t)?;
            }
            t
        } else {
            self.apply_table(&self.aut_power(k, f)?, k, &tail)?
        };
        let deep = self.mul(&lower, &moved)?;
        let mut out = x.clone();
        out.exponents[k] = rem;
        out.exponents[k + 1..].clone_from_slice(&deep.exponents[k + 1..]);
        Ok(out)
    }

    /// `∏_{j>k} table[j]^{y_j}` for `y` in `⟨g_{k+1}, …⟩`.
    fn apply_table(&self, table: &ImageTable, k: usize, y: &PcElement) -> Result<PcElement, PolycyclicError> {
        let mut out = self.pres.identity();
        for (j, e) in y.exponents.iter().enumerate().skip(k + 1) {
            if e.is_zero() {
                continue;
            }
            let img = if e.is_one() {
                table[j].clone()
            } else {
                self.pow(&table[j], e)?
            };
            out = self.mul(&out, &img)?;
        }
        Ok(out)
    }

    /// Image table of `φ_k^f` on `⟨g_{k+1}, …⟩`.
    fn aut_power(&self, k: usize, f: &BigInt) -> Result<ImageTable, PolycyclicError> {
        let n = self.pres.n;
        let mut base = if f.is_negative() {
            self.pres.down[k].clone()
        } else {
            self.pres.up[k].clone()
        };
        let mut acc: ImageTable = (0..n).map(|j| PcElement::generator(n, j)).collect();
        let mag = f.magnitude();
        let bits = mag.bits();
        for i in 0..bits {
            if mag.bit(i) {
                let mut next = acc.clone();
                for j in k + 1..n {
                    next[j] = self.apply_table(&base, k, &acc[j])?;
                }
                acc = next;
            }
            if i + 1 < bits {
                let mut sq = base.clone();
                for j in k + 1..n {
                    sq[j] = self.apply_table(&base, k, &base[j])?;
                }
                base = sq;
            }
        }
        Ok(acc)
    }

    fn mul(&self, x: &PcElement, y: &PcElement) -> Result<PcElement, PolycyclicError> {
        let mut out = x.clone();
        for (j, e) in y.exponents.iter().enumerate() {
            if !e.is_zero() {
                out = self.mul_syllable(&out, j, e)?;
            }
        }
        Ok(out)
    }

    fn inv(&self, x: &PcElement) -> Result<PcElement, PolycyclicError> {
        let mut out = self.pres.identity();
        for (j, e) in x.exponents.iter().enumerate().rev() {
            if !e.is_zero() {
                out = self.mul_syllable(&out, j, &-e)?;
            }
        }
        Ok(out)
    }

    /// `x^k` directly when the support of `x` generates a free abelian
    /// subgroup.
    fn abelian_pow(&self, x: &PcElement, k: &BigInt) -> Option<PcElement> {
        let support: Vec<usize> = (0..self.pres.n).filter(|&i| !x.exponents[i].is_zero()).collect();
        for (a, &i) in support.iter().enumerate() {
            if self.pres.rel_orders[i].is_finite() {
                return None;
            }
            for &j in &support[a + 1..] {
                if self.pres.up[i][j] != PcElement::generator(self.pres.n, j) {
                    return None;
                }
            }
        }
        Some(PcElement {
            exponents: x.exponents.iter().map(|e| e * k).collect(),
        })
    }

    fn pow(&self, x: &PcElement, k: &BigInt) -> Result<PcElement, PolycyclicError> {
        if let Some(y) = self.abelian_pow(x, k) {
            self.tick()?;
            return Ok(y);
        }
        let base = if k.is_negative() { self.inv(x)? } else { x.clone() };
        let mag = k.magnitude();
        let mut out = self.pres.identity();
        for i in (0..mag.bits()).rev() {
            out = self.mul(&out, &out)?;
            if mag.bit(i) {
                out = self.mul(&out, &base)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for r in &self.rel_orders {
            match r {
                RelOrder::Finite(r) => writeln!(f, "order {r}")?,
                RelOrder::Infinite => writeln!(f, "order inf")?,
            }
        }
        for (&(i, j), w) in &self.conj_up {
            writeln!(f, "conj {i} {j} -> {}", fmt_word(w))?;
        }
        for (&(i, j), w) in &self.conj_down {
            writeln!(f, "conjinv {i} {j} -> {}", fmt_word(w))?;
        }
        for (&i, w) in &self.powers {
            writeln!(f, "pow {i} -> {}", fmt_word(w))?;
        }
        Ok(())
    }
}

impl FromStr for PcPresentation {
    type Err = PolycyclicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, msg: &str| PolycyclicError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, head) = lines.next().ok_or_else(|| err(1, "missing generator count"))?;
        let n: usize = head.parse().map_err(|_| err(ln, "generator count"))?;
        let mut rel_orders = Vec::with_capacity(n);
        let mut conj_up = BTreeMap::new();
        let mut conj_down = BTreeMap::new();
        let mut powers = BTreeMap::new();
        for (ln, line) in lines {
            let (lhs, rhs) = match line.split_once("->") {
                Some((l, r)) => (l.trim(), Some(r.trim())),
                None => (line, None),
            };
            let parts: Vec<&str> = lhs.split_whitespace().collect();
            let idx = |t: &str| t.parse::<usize>().map_err(|_| err(ln, "bad generator index"));
            let word = || {
                parse_word(rhs.ok_or_else(|| err(ln, "missing '->'"))?).map_err(|m| err(ln, &m))
            };
            match parts.as_slice() {
                ["order", r] => {
                    if rhs.is_some() {
                        return Err(err(ln, "unexpected '->'"));
                    }
                    rel_orders.push(if *r == "inf" {
                        RelOrder::Infinite
                    } else {
                        RelOrder::Finite(r.parse().map_err(|_| err(ln, "bad order"))?)
                    });
                }
                ["conj", i, j] => {
                    if conj_up.insert((idx(i)?, idx(j)?), word()?).is_some() {
                        return Err(err(ln, "duplicate relation"));
                    }
                }
                ["conjinv", i, j] => {
                    if conj_down.insert((idx(i)?, idx(j)?), word()?).is_some() {
                        return Err(err(ln, "duplicate relation"));
                    }
                }
                ["pow", i] => {
                    if powers.insert(idx(i)?, word()?).is_some() {
                        return Err(err(ln, "duplicate relation"));
                    }
                }
                _ => return Err(err(ln, "unrecognised line")),
            }
        }
        if rel_orders.len() != n {
            return Err(err(0, "need one 'order' line per generator"));
        }
        PcPresentation::new(rel_orders, conj_up, conj_down, powers)
    }
}

impl Serialize for PcPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PcPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Arithmetic through [`GroupOps`]; panics if collection fails.
impl GroupOps for PcPresentation {
    type Element = PcElement;

    fn identity(&self) -> PcElement {
        PcPresentation::identity(self)
    }

    fn mul(&self, a: &PcElement, b: &PcElement) -> PcElement {
        self.pc_mul(a, b).expect("collection within budget")
    }

    fn inv(&self, a: &PcElement) -> PcElement {
        self.pc_inv(a).expect("collection within budget")
    }
}
