mod common;

use groupcrypt::polycyclic::{
    commutator, CyclicGroup, GroupOps, HeisenbergLikeElement, HeisenbergPlatform, IntegerGroup,
    PcElement, PcPresentation, RelOrder, Syllable, UnitriangularGroup,
};
use groupcrypt::raag::{GroupWord, Letter};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// A concrete matrix or permutation group used as an independent model.
trait Model: Clone + PartialEq + std::fmt::Debug {
    fn one(&self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn inverse(&self) -> Self;

    fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(self.one(), |acc, _| acc.times(&base))
    }
}

#[derive(Clone, PartialEq, Debug)]
struct Perm(Vec<usize>);

impl Model for Perm {
    fn one(&self) -> Self {
        Perm((0..self.0.len()).collect())
    }
    /// Apply `self` first.
    fn times(&self, o: &Self) -> Self {
        Perm(self.0.iter().map(|&i| o.0[i]).collect())
    }
    fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = i;
        }
        Perm(out)
    }
}

/// 3×3 integer matrix acting on column vectors `(x, y, 1)`.
#[derive(Clone, PartialEq, Debug)]
struct Affine([[i128; 3]; 3]);

impl Model for Affine {
    fn one(&self) -> Self {
        Affine([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }
    fn times(&self, o: &Self) -> Self {
        let mut m = [[0i128; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Affine(m)
    }
    fn inverse(&self) -> Self {
        // unimodular linear part
        let [[a, b, tx], [c, d, ty], _] = self.0;
        let det = a * d - b * c;
        assert!(det == 1 || det == -1);
        let (ia, ib, ic, id) = (d * det, -b * det, -c * det, a * det);
        Affine([
            [ia, ib, -(ia * tx + ib * ty)],
            [ic, id, -(ic * tx + id * ty)],
            [0, 0, 1],
        ])
    }
}

fn eval_syllables<M: Model>(images: &[M], w: &[Syllable]) -> M {
    w.iter().fold(images[0].one(), |acc, s| {
        let k: i64 = (&s.exponent).try_into().unwrap();
        acc.times(&images[s.generator].power(k))
    })
}

fn eval_collected<M: Model>(images: &[M], e: &PcElement) -> M {
    eval_syllables(images, &e.to_word_syllables())
}

fn eval_word<M: Model>(images: &[M], w: &GroupWord) -> M {
    w.letters().iter().fold(images[0].one(), |acc, l| {
        let x = &images[l.generator];
        acc.times(&if l.inverse { x.inverse() } else { x.clone() })
    })
}

/// Checks the defining relations of `pres` on the images.
fn satisfies<M: Model>(pres: &PcPresentation, images: &[M]) -> bool {
    let n = pres.n();
    for i in 0..n {
        if let RelOrder::Finite(r) = pres.rel_orders()[i] {
            let rhs = pres.powers().get(&i).map_or(images[0].one(), |w| eval_syllables(images, w));
            if images[i].power(r as i64) != rhs {
                return false;
            }
        }
        for j in i + 1..n {
            let lhs = images[i].inverse().times(&images[j]).times(&images[i]);
            let rhs = pres.conj_up().get(&(i, j)).map_or(images[j].clone(), |w| eval_syllables(images, w));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn closure_size(gens: &[Perm]) -> usize {
    let mut seen = vec![gens[0].one()];
    let mut i = 0;
    while i < seen.len() {
        for g in gens {
            let x = seen[i].times(g);
            if !seen.contains(&x) {
                seen.push(x);
            }
        }
        i += 1;
    }
    seen.len()
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm(p.clone())];
    while common::next_permutation(&mut p) {
        out.push(Perm(p.clone()));
    }
    out
}

/// A faithful permutation model of a finite presentation, found by search.
fn faithful_perm_model(pres: &PcPresentation, degree: usize) -> Vec<Perm> {
    let order = pres.finite_order().unwrap() as usize;
    let perms = all_perms(degree);
    let mut choice = vec![0usize; pres.n()];
    loop {
        let images: Vec<Perm> = choice.iter().map(|&c| perms[c].clone()).collect();
        if satisfies(pres, &images) && closure_size(&images) == order {
            return images;
        }
        let mut k = 0;
        loop {
            assert!(k < choice.len(), "no faithful model in S_{degree}");
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn words_up_to(n: usize, len: usize) -> Vec<GroupWord> {
    let letters: Vec<Letter> = (0..n).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut layer = vec![Vec::new()];
    let mut out = vec![GroupWord::identity()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(GroupWord));
    }
    out
}

fn check_collection<M: Model>(pres: &PcPresentation, images: &[M]) {
    assert!(satisfies(pres, images));
    for w in words_up_to(pres.n(), 5) {
        let e = pres.collect(&w).unwrap();
        assert_eq!(eval_collected(images, &e), eval_word(images, &w), "word {w}");
    }
}

#[test]
fn collection_matches_permutation_models() {
    let s3 = PcPresentation::symmetric3();
    check_collection(&s3, &faithful_perm_model(&s3, 3));
    let d8 = PcPresentation::dihedral8();
    check_collection(&d8, &faithful_perm_model(&d8, 4));
}

#[test]
fn collection_matches_affine_model() {
    let pres = PcPresentation::z2_semidirect_z();
    // t acts linearly by [[2,1],[1,1]]; x, y translate
    let images = [
        Affine([[2, 1, 0], [1, 1, 0], [0, 0, 1]]),
        Affine([[1, 0, 1], [0, 1, 0], [0, 0, 1]]),
        Affine([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
    ];
    check_collection(&pres, &images);
}

#[test]
fn collection_matches_unitriangular_matrices() {
    for p in [2u64, 3, 5] {
        let pres = PcPresentation::unitriangular3(p);
        let u = UnitriangularGroup::new(3, p).unwrap();
        let gens = [u.elementary(0), u.elementary(1), {
            let e = u.elementary(0);
            let f = u.elementary(1);
            u.commutator2(&e, &f)
        }];
        let to_matrix = |e: &PcElement| {
            e.to_word_syllables().iter().fold(u.identity(), |acc, s| u.mul(&acc, &u.pow(&gens[s.generator], &s.exponent)))
        };
        for w in words_up_to(2, 5) {
            let e = pres.collect(&w).unwrap();
            let direct = w.letters().iter().fold(u.identity(), |acc, l| {
                let g = &gens[l.generator];
                u.mul(&acc, &if l.inverse { u.inv(g) } else { g.clone() })
            });
            assert_eq!(to_matrix(&e), direct, "p = {p}, word {w}");
        }
    }
}

fn random_pc<R: Rng>(pres: &PcPresentation, bound: i64, rng: &mut R) -> PcElement {
    let exps: Vec<i64> = (0..pres.n()).map(|_| rng.gen_range(-bound..=bound)).collect();
    pres.normalize(&PcElement::from_i64(&exps)).unwrap()
}

fn axioms<G: GroupOps>(g: &G, sample: impl Fn(&mut rand_chacha::ChaCha20Rng) -> G::Element, trials: usize)
where
    G::Element: std::fmt::Debug,
{
    let mut rng = common::rng(17);
    for _ in 0..trials {
        let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        assert_eq!(g.mul(&a, &g.identity()), a);
        assert_eq!(g.mul(&g.identity(), &a), a);
        assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
        assert!(g.is_identity(&g.mul(&g.inv(&a), &a)));
    }
}

#[test]
fn group_axioms_hold_on_every_platform() {
    for pres in [
        PcPresentation::symmetric3(),
        PcPresentation::dihedral8(),
        PcPresentation::unitriangular3(7),
        PcPresentation::free_abelian(4),
    ] {
        axioms(&pres, |r| random_pc(&pres, 20, r), 1000);
    }
    let z = PcPresentation::z2_semidirect_z();
    axioms(&z, |r| random_pc(&z, 6, r), 1000);
    let h = HeisenbergPlatform::standard();
    axioms(&h, |r| h.random_element(64, 40, r), 1000);
    for (m, p) in [(3, 3), (4, 5), (6, 2)] {
        let u = UnitriangularGroup::new(m, p).unwrap();
        axioms(&u, |r| u.random(r), 1000);
    }
    axioms(&IntegerGroup, |r| BigInt::from(r.gen::<i64>()), 1000);
    axioms(&CyclicGroup(97), |r| r.gen_range(0..97), 1000);
}

#[test]
fn commutator_power_identity() {
    let mut rng = common::rng(5);
    for m in [3usize, 4, 5] {
        for p in [3u64, 5] {
            let u = UnitriangularGroup::new(m, p).unwrap();
            for _ in 0..200 {
                let gs: Vec<_> = (0..m - 1).map(|_| u.random(&mut rng)).collect();
                let exps: Vec<u64> = (0..m - 1).map(|_| rng.gen_range(1..=p * p)).collect();
                let powered: Vec<_> = gs.iter().zip(&exps).map(|(g, &a)| u.pow(g, &BigInt::from(a))).collect();
                let prod: u64 = exps.iter().product();
                assert_eq!(
                    commutator(&u, &powered),
                    u.pow(&commutator(&u, &gs), &BigInt::from(prod)),
                    "m = {m}, p = {p}"
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn powers_add_on_finite_and_abelian(a in any::<u64>(), b in any::<u64>(), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        for pres in [
            PcPresentation::symmetric3(),
            PcPresentation::dihedral8(),
            PcPresentation::unitriangular3(5),
            PcPresentation::free_abelian(3),
        ] {
            let x = random_pc(&pres, 9, &mut rng);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let lhs = pres.pc_pow(&x, &(&a + &b)).unwrap();
            let rhs = pres.pc_mul(&pres.pc_pow(&x, &a).unwrap(), &pres.pc_pow(&x, &b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// Inside `Z² ⋊ Z` the translation subgroup takes full 64-bit exponents;
    /// elements involving `t` have exponentially growing entries, so their
    /// exponents stay small.
    #[test]
    fn powers_add_on_semidirect(
        a in any::<u64>(), b in any::<u64>(),
        v in (-50i64..50, -50i64..50),
        k in -3i64..=3, c in 0u64..200, d in 0u64..200,
    ) {
        let pres = PcPresentation::z2_semidirect_z();
        let x = PcElement::from_i64(&[0, v.0, v.1]);
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = pres.pc_pow(&x, &(&a + &b)).unwrap();
        let rhs = pres.pc_mul(&pres.pc_pow(&x, &a).unwrap(), &pres.pc_pow(&x, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);

        let y = PcElement::from_i64(&[k, v.0, v.1]);
        let (c, d) = (BigInt::from(c), BigInt::from(d));
        let lhs = pres.pc_pow(&y, &(&c + &d)).unwrap();
        let rhs = pres.pc_mul(&pres.pc_pow(&y, &c).unwrap(), &pres.pc_pow(&y, &d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_automorphism(
        a in -1000i64..1000, b in -1000i64..1000, k in -20i64..20,
        n in -500i64..500, seed in any::<u64>(),
    ) {
        let h = HeisenbergPlatform::standard();
        let g = HeisenbergLikeElement::from_i64(a, b, k);
        let s = h.random_element(64, 30, &mut common::rng(seed));
        let n = BigInt::from(n);
        prop_assert_eq!(h.heis_conj(&h.heis_pow(&g, &n), &s), h.heis_pow(&h.heis_conj(&g, &s), &n));
        let g2 = HeisenbergLikeElement::from_i64(b, a, -k);
        prop_assert_eq!(
            h.heis_conj(&h.heis_mul(&g, &g2), &s),
            h.heis_mul(&h.heis_conj(&g, &s), &h.heis_conj(&g2, &s))
        );
    }

    #[test]
    fn presentation_text_round_trips(p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        for pres in [PcPresentation::unitriangular3(p), PcPresentation::z2_semidirect_z(), PcPresentation::dihedral8()] {
            let back: PcPresentation = pres.to_string().parse().unwrap();
            prop_assert_eq!(&back, &pres);
            prop_assert_eq!(back.to_string(), pres.to_string());
        }
    }
}

#[test]
fn heisenberg_platform_matches_presentation() {
    // the collected form t^k x^a y^b corresponds to ((M^k (a, b)), k)
    let h = HeisenbergPlatform::standard();
    let pres = PcPresentation::z2_semidirect_z();
    let to_platform = |e: &PcElement| {
        let k = e.exponents[0].clone();
        let v = h.act(&k, &[e.exponents[1].clone(), e.exponents[2].clone()]);
        HeisenbergLikeElement::new(v, k)
    };
    let mut rng = common::rng(8);
    for _ in 0..500 {
        let x = random_pc(&pres, 5, &mut rng);
        let y = random_pc(&pres, 5, &mut rng);
        let prod = pres.pc_mul(&x, &y).unwrap();
        assert_eq!(to_platform(&prod), h.heis_mul(&to_platform(&x), &to_platform(&y)));
    }
}
