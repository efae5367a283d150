//! End-to-end acceptance run. Prints one verdict line per criterion and
//! exits nonzero if any of them fails.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use groupcrypt::fhe::{decrypt_mean, encode_db, encrypted_sum, read_csv_column, ExactMean, RetractScheme, TruncatedPolyScheme};
use groupcrypt::graph::{hamiltonian_cycle, join_decompose, SimplicialGraph};
use groupcrypt::oracles::{word_oracle, OracleBudget, WordVerdict};
use groupcrypt::polycyclic::{commutator, engel_word, GroupOps, HeisenbergPlatform, UnitriangularGroup};
use groupcrypt::protocols::auth::{auth_keygen, auth_protocol, AuthParams, Prover};
use groupcrypt::protocols::multilinear::{ks_nike, ks_public, ktt_exchange, ktt_public, random_exponents, PublicChoice};
use groupcrypt::protocols::semidirect::{semidirect_kex, CommutativePlatform, MatrixConjugationPlatform};
use groupcrypt::protocols::sharing::{
    monic_interpolation_at_zero, scheme2_bits, ss_scheme1_deal, ss_scheme1_recover, ss_scheme2_deal,
    ss_scheme2_recover, Scheme1Params,
};
use groupcrypt::protocols::signature::{sig_keygen, sig_sign, sig_verify, DEFAULT_BITS};
use groupcrypt::protocols::zkp::{unique_hamiltonian_graph, zkp_hamiltonicity, zkp_setup, ZkpProver};
use groupcrypt::protocols::HashAlg;
use groupcrypt::raag::{is_hamiltonian_triple, GroupWord, RaagGroup};
use num_bigint::{BigInt, BigUint};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn signatures() -> Outcome {
    let start = Instant::now();
    let h = HeisenbergPlatform::standard();
    let mut rng = common::rng(1);
    let mut rejected = 0;
    for run in 0..1000 {
        let keys = sig_keygen(&h, DEFAULT_BITS, HashAlg::Sha256, &mut rng);
        let msg: Vec<u8> = (0..rng.gen_range(1..64)).map(|_| rng.gen()).collect();
        let sig = sig_sign(&h, &keys, &msg, &mut rng);
        ensure(sig_verify(&h, &keys.public, &msg, &sig).map_err(|e| e.to_string())?, format!("run {run} rejected"))?;
        let mut bad = msg.clone();
        let i = rng.gen_range(0..bad.len());
        bad[i] ^= rng.gen_range(1..=255u8);
        rejected += usize::from(!sig_verify(&h, &keys.public, &bad, &sig).map_err(|e| e.to_string())?);
    }
    ensure(rejected == 1000, format!("{rejected}/1000 tampers rejected"))?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("1000 verified, 1000 tampers rejected in {:.1?}", start.elapsed()))
}

fn commutator_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(2);
    let mut tuples = 0;
    for m in [3usize, 4, 5] {
        for p in [3u64, 5] {
            let u = UnitriangularGroup::new(m, p).map_err(|e| e.to_string())?;
            let count = if m == 5 && p == 5 { 170 } else { 166 };
            for _ in 0..count {
                let gs: Vec<_> = (0..m - 1).map(|_| u.random(&mut rng)).collect();
                let exps: Vec<u64> = (0..m - 1).map(|_| rng.gen_range(1..1000)).collect();
                let powered: Vec<_> = gs.iter().zip(&exps).map(|(g, &a)| u.pow(g, &BigInt::from(a))).collect();
                let prod: BigInt = exps.iter().map(|&a| BigInt::from(a)).product();
                ensure(
                    commutator(&u, &powered) == u.pow(&commutator(&u, &gs), &prod),
                    format!("identity fails in U_{m}(F_{p})"),
                )?;
                tuples += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{tuples} tuples, zero failures in {:.1?}", start.elapsed()))
}

fn key_exchange() -> Outcome {
    let mut rng = common::rng(3);
    for i in 0..1000 {
        let (m, n) = if i < 10 {
            (1 << 20, (1 << 20) - i)
        } else {
            (rng.gen_range(1..=1 << 20), rng.gen_range(1..=1 << 20))
        };
        let p = MatrixConjugationPlatform::random(3, 1_000_003, &mut rng);
        let out = semidirect_kex(&p, m, n, &mut rng).map_err(|e| e.to_string())?;
        ensure(out.alice_key == out.bob_key, format!("instance {i} disagrees"))?;
    }
    let q = 1_000_000_007u64;
    for _ in 0..100 {
        let g = rng.gen_range(2..q);
        let (m, n) = (rng.gen_range(1..=1 << 20), rng.gen_range(1..=1 << 20));
        let out = semidirect_kex(&CommutativePlatform { modulus: q, g }, m, n, &mut rng).map_err(|e| e.to_string())?;
        let expect = BigUint::from(g).modpow(&BigUint::from(m + n), &BigUint::from(q));
        ensure(out.alice_key == out.bob_key && BigUint::from(out.alice_key) == expect, "identity action is not g^(m+n)")?;
    }
    Ok("1000 matrix instances agree; identity action gives g^(m+n) in 100 cases".into())
}

fn multiparty() -> Outcome {
    let mut rng = common::rng(4);
    for n in [2usize, 3, 4] {
        for trial in 0..100 {
            let p = [3u64, 5, 7][trial % 3];
            let choice = if trial % 2 == 0 { PublicChoice::Standard } else { PublicChoice::Random };
            let exps = random_exponents(n + 1, p, &mut rng);
            let prod: BigInt = exps.iter().map(|&a| BigInt::from(a)).product();

            let u = UnitriangularGroup::new(n + 2, p).map_err(|e| e.to_string())?;
            let (x, g) = ktt_public(&u, n, choice, &mut rng);
            let out = ktt_exchange(p, n, &x, &g, &exps).map_err(|e| e.to_string())?;
            let expect = u.pow(&engel_word(&u, &x, &g, n), &prod);
            ensure(out.keys.len() == n + 1 && out.keys.iter().all(|k| *k == expect), format!("KTT n = {n} trial {trial}"))?;

            let u = UnitriangularGroup::new(n + 1, p).map_err(|e| e.to_string())?;
            let gs = ks_public(&u, n, choice, &mut rng);
            let out = ks_nike(p, n, &gs, &exps).map_err(|e| e.to_string())?;
            let expect = u.pow(&commutator(&u, &gs), &prod);
            ensure(out.keys.len() == n + 1 && out.keys.iter().all(|k| *k == expect), format!("KS n = {n} trial {trial}"))?;
        }
    }
    Ok("n = 2, 3, 4: 100 trials each, every user matches the closed form".into())
}

/// Swaps a few adjacent commuting letters.
fn scramble(group: &RaagGroup, w: &GroupWord, rng: &mut ChaCha20Rng) -> GroupWord {
    let mut letters = w.0.clone();
    for _ in 0..letters.len() * 2 {
        if letters.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..letters.len() - 1);
        if group.commute(letters[i], letters[i + 1]) {
            letters.swap(i, i + 1);
        }
    }
    GroupWord(letters)
}

fn fitted_exponent(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = points.iter().map(|(x, y)| (x.ln() - mx) * (y.ln() - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x.ln() - mx).powi(2)).sum();
    num / den
}

fn word_problem() -> Outcome {
    let mut rng = common::rng(5);
    let budget = OracleBudget::default();
    let mut trivial = 0;
    for i in 0..10_000 {
        let n = rng.gen_range(1..=5);
        let g = common::graph_from_mask(n, rng.gen_range(0..1u64 << (n * (n - 1) / 2)));
        let group = RaagGroup::new(g.clone());
        let w = if i % 2 == 0 {
            GroupWord::random(n, rng.gen_range(0..=12), &mut rng)
        } else {
            let half = GroupWord::random(n, rng.gen_range(0..=6), &mut rng);
            half.concat(&scramble(&group, &half, &mut rng).inverse())
        };
        let fast = group.is_trivial(&w).map_err(|e| e.to_string())?;
        let slow = word_oracle(&g, &w, &budget).map_err(|e| e.to_string())? == WordVerdict::Trivial;
        ensure(fast == slow, format!("disagreement on {w}"))?;
        trivial += usize::from(fast);
    }

    let group = RaagGroup::new(SimplicialGraph::random(6, 0.5, &mut common::rng(50)));
    let mut points = Vec::new();
    for len in [1_000usize, 10_000, 100_000, 1_000_000] {
        // distinct words per repetition so short inputs are not memorised
        let reps = (2_000_000 / len).clamp(2, 200);
        let words: Vec<_> = (0..reps).map(|_| GroupWord::random(6, len, &mut rng)).collect();
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let t = Instant::now();
            for w in &words {
                std::hint::black_box(group.is_trivial(w).map_err(|e| e.to_string())?);
            }
            best = best.min(t.elapsed().as_secs_f64() / reps as f64);
        }
        points.push((len as f64, best));
    }
    let slope = fitted_exponent(&points);
    ensure(slope < 1.15, format!("runtime exponent {slope:.3}"))?;
    Ok(format!("10000 words agree ({trivial} trivial); runtime exponent {slope:.3}"))
}

fn hamiltonicity() -> Outcome {
    let corpus = common::corpus(5, 8, 100, 6);
    ensure(corpus.len() >= 1000, "corpus too small")?;
    let mut hamiltonian = 0;
    for g in &corpus {
        let direct = hamiltonian_cycle(g).map_err(|e| e.to_string())?.is_some();
        let triple = is_hamiltonian_triple(&RaagGroup::new(g.clone()).cohomology_triple()).map_err(|e| e.to_string())?;
        ensure(direct == triple, format!("mismatch on {}", g.to_text().replace('\n', " ")))?;
        hamiltonian += usize::from(direct);
    }
    Ok(format!("{} graphs ({hamiltonian} Hamiltonian) agree", corpus.len()))
}

fn joins() -> Outcome {
    let corpus = common::corpus(5, 10, 150, 7);
    for g in &corpus {
        let d = join_decompose(g);
        let parts: Vec<_> = d.factors.iter().map(|f| g.induced_subgraph(f)).collect();
        let order: Vec<usize> = d.factors.iter().flatten().copied().collect();
        let mut perm = vec![0; g.n()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        ensure(SimplicialGraph::join(&parts) == g.relabel(&perm), "rejoin differs")?;
        ensure(parts.iter().all(|p| p.complement().is_connected()), "factor with disconnected complement")?;
    }
    let p3 = RaagGroup::new(SimplicialGraph::path(3)).direct_product_decomposition();
    ensure(p3.len() == 2, format!("P3 gives {} factors", p3.len()))?;
    let mut ranks: Vec<usize> = p3.iter().map(|f| f.rank()).collect();
    ranks.sort();
    ensure(ranks == [1, 2] && p3.iter().all(|f| f.graph().edge_count() == 0), "P3 factors are not F2 and Z")?;
    Ok(format!("{} graphs rejoin; P3 splits as F2 x Z", corpus.len()))
}

fn sharing() -> Outcome {
    let mut rng = common::rng(8);
    let (mut broken, mut drops) = (0, 0);
    for trial in 0..1000 {
        let secret: Vec<bool> = (0..rng.gen_range(8..=24)).map(|_| rng.gen()).collect();
        let k = rng.gen_range(2..=5);
        let deal = ss_scheme1_deal(&secret, k, Scheme1Params::default(), &mut rng).map_err(|e| e.to_string())?;
        ensure(ss_scheme1_recover(&deal.bundles).map_err(|e| e.to_string())? == secret, format!("scheme 1 trial {trial}"))?;
        for drop in 0..k {
            let rest: Vec<_> = deal.bundles.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, b)| b.clone()).collect();
            broken += usize::from(ss_scheme1_recover(&rest).map_err(|e| e.to_string())? != secret);
            drops += 1;
        }
    }
    ensure(broken * 100 >= drops * 99, format!("only {broken}/{drops} drops broke recovery"))?;
    for trial in 0..100 {
        let p = [11u64, 101, 65_537][trial % 3];
        let deal = ss_scheme2_deal(rng.gen_range(1..=8), p, 6, &mut rng).map_err(|e| e.to_string())?;
        let values: Vec<u64> = scheme2_bits(&deal.graphs).iter().map(|&b| u64::from(b)).collect();
        let f0 = monic_interpolation_at_zero(&values, p);
        ensure(ss_scheme2_recover(&deal.graphs, p) == deal.secret && deal.secret == f0, format!("scheme 2 trial {trial}"))?;
    }
    Ok(format!("1000 + 100 recoveries exact; {broken}/{drops} drops broke recovery"))
}

fn rate_in_band(rate: f64, who: &str) -> Result<(), String> {
    ensure((0.45..=0.55).contains(&rate), format!("{who} cheater rate {rate:.3}"))
}

fn interactive() -> Outcome {
    let mut rng = common::rng(9);
    let params = AuthParams::default();
    for rep in 0..100 {
        let keys = auth_keygen(&params, &mut rng);
        let out = auth_protocol(&keys, Prover::Honest, &params, 128, false, &mut rng).map_err(|e| e.to_string())?;
        ensure(out.outcomes.iter().all(|&b| b), format!("auth repetition {rep} rejected"))?;
        let (g, cycle) = unique_hamiltonian_graph(8, &mut rng).map_err(|e| e.to_string())?;
        let st = zkp_setup(&g, cycle, HashAlg::Sha256, &mut rng).map_err(|e| e.to_string())?;
        let out = zkp_hamiltonicity(&st, ZkpProver::Honest, 128, false, &mut rng).map_err(|e| e.to_string())?;
        ensure(out.outcomes.iter().all(|&b| b), format!("zkp repetition {rep} rejected"))?;
    }
    let keys = auth_keygen(&params, &mut rng);
    let auth_rate = auth_protocol(&keys, Prover::Cheater, &params, 1000, false, &mut rng)
        .map_err(|e| e.to_string())?
        .acceptance_rate();
    rate_in_band(auth_rate, "auth")?;
    let (g, cycle) = unique_hamiltonian_graph(8, &mut rng).map_err(|e| e.to_string())?;
    let st = zkp_setup(&g, cycle, HashAlg::Sha256, &mut rng).map_err(|e| e.to_string())?;
    let zkp_rate = zkp_hamiltonicity(&st, ZkpProver::Cheater, 1000, false, &mut rng)
        .map_err(|e| e.to_string())?
        .acceptance_rate();
    rate_in_band(zkp_rate, "zkp")?;
    Ok(format!("honest 100 x 128 rounds accepted; cheater rates auth {auth_rate:.3}, zkp {zkp_rate:.3}"))
}

fn fhe() -> Outcome {
    let mut rng = common::rng(10);
    let mut checks = 0;
    for n in 2..=11u64 {
        for mixed in [false, true] {
            let s = if mixed {
                TruncatedPolyScheme::with_random_basis(n, 4, &mut rng)
            } else {
                TruncatedPolyScheme::new(n, 4)
            }
            .map_err(|e| e.to_string())?;
            for u in 0..n {
                for v in 0..n {
                    let (cu, cv) = (s.encrypt(&u, &mut rng), s.encrypt(&v, &mut rng));
                    ensure(s.decrypt(&s.ct_add(&cu, &cv)) == (u + v) % n, format!("{u} + {v} mod {n}"))?;
                    ensure(s.decrypt(&s.ct_mul(&cu, &cv)) == u * v % n, format!("{u} * {v} mod {n}"))?;
                    checks += 2;
                }
            }
        }
    }
    let s = TruncatedPolyScheme::with_random_basis(1_000_000_007, 4, &mut rng).map_err(|e| e.to_string())?;
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut means = Vec::new();
    for (file, col) in [("blood_pressure.csv", "systolic"), ("temperatures.csv", "min_c"), ("ledger.csv", "amount_cents")] {
        let values = read_csv_column(&data.join(file), col).map_err(|e| e.to_string())?;
        let count = values.len() as u64;
        let residues = encode_db(&values, s.modulus(), count).map_err(|e| e.to_string())?;
        let cts: Vec<_> = residues.iter().map(|u| s.encrypt(u, &mut rng)).collect();
        let sum = encrypted_sum(&s.public, &cts).ok_or("empty column")?;
        let mean = decrypt_mean(&s, &sum, count);
        let plain = ExactMean::new(values.iter().map(|&v| v as i128).sum(), count);
        ensure(mean == plain, format!("{file}: {} vs {}", mean.value(), plain.value()))?;
        means.push(format!("{file} {:.3}", mean.value()));
    }
    Ok(format!("{checks} exhaustive checks; means {}", means.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("signature verification and tampering", signatures),
        ("commutator power identity", commutator_identity),
        ("semidirect key exchange", key_exchange),
        ("multiparty exchanges", multiparty),
        ("word problem and linear scaling", word_problem),
        ("Hamiltonicity equivalence", hamiltonicity),
        ("join decomposition", joins),
        ("secret sharing", sharing),
        ("authentication and zero knowledge", interactive),
        ("retract scheme homomorphism and means", fhe),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
