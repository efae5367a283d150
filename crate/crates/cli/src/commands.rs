use std::path::{Path, PathBuf};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use groupcrypt::fhe::{
    self, decode_db, encode_db, encrypted_sum, read_csv_column, CiphertextFile, RetractScheme,
    TruncatedPolyScheme,
};
use groupcrypt::graph::{self, SimplicialGraph};
use groupcrypt::oracles::{self, OracleBudget};
use groupcrypt::polycyclic::{CyclicGroup, PcPresentation, RelOrder, UnitriangularGroup};
use groupcrypt::protocols::auth::{auth_keygen, auth_protocol, AuthParams, Prover};
use groupcrypt::protocols::multilinear::{
    ks_nike, ks_public, ktt_exchange, ktt_public, random_exponents, PublicChoice,
};
use groupcrypt::protocols::semidirect::{
    semidirect_kex, CommutativePlatform, MatrixConjugationPlatform,
};
use groupcrypt::protocols::sharing::{
    decode_share, ss_scheme1_deal, ss_scheme1_recover, ss_scheme2_deal, ss_scheme2_recover,
    Scheme1Deal, Scheme1Params, Scheme2Deal,
};
use groupcrypt::protocols::signature::{sig_keygen, sig_sign, sig_verify, PublicKey, SignatureKeys, SignatureValue};
use groupcrypt::protocols::zkp::{unique_hamiltonian_graph, zkp_hamiltonicity, zkp_setup, ZkpProver};
use groupcrypt::protocols::{HashAlg, ProtocolError};
use groupcrypt::polycyclic::HeisenbergPlatform;
use groupcrypt::raag::{GroupWord, RaagGroup};

use crate::args::*;
use crate::{CliError, Report};

type Out = Result<(Report, Option<PathBuf>), CliError>;

fn rng(c: &Common) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(c.seed)
}

fn done(report: Report, c: &Common) -> Out {
    Ok((report, c.out.clone()))
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read_text(flag: &str, path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(flag, format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(flag: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_text(flag, path)?)
        .map_err(|e| CliError::input(flag, format!("{}: {e}", path.display())))
}

fn read_graph(flag: &str, path: &Path) -> Result<SimplicialGraph, CliError> {
    read_text(flag, path)?
        .parse()
        .map_err(|e| CliError::input(flag, format!("{}: {e}", path.display())))
}

fn parse_word(flag: &str, s: &str) -> Result<GroupWord, CliError> {
    s.parse().map_err(|e| CliError::input(flag, e))
}

fn protocol(e: ProtocolError) -> CliError {
    match e {
        ProtocolError::InvalidParameter(m) => CliError::failed(format!("invalid parameter: {m}")),
        other => CliError::failed(other),
    }
}

pub fn run(cmd: Command) -> Out {
    match cmd {
        Command::Graph(c) => graph_cmd(c),
        Command::Raag(c) => raag_cmd(c),
        Command::Pc(c) => pc_cmd(c),
        Command::Sig(c) => sig_cmd(c),
        Command::Kex(c) => kex_cmd(c),
        Command::Nike(c) => nike_cmd(c),
        Command::Share(c) => share_cmd(c),
        Command::Auth(AuthCmd::Run { s }) => auth_cmd(s),
        Command::Zkp(ZkpCmd::Run { graph, vertices, s }) => zkp_cmd(graph, vertices, s),
        Command::Fhe(c) => fhe_cmd(c),
        Command::Oracle(c) => oracle_cmd(c),
    }
}

fn graph_cmd(cmd: GraphCmd) -> Out {
    match cmd {
        GraphCmd::Join { g, common } => {
            let gr = read_graph("--graph", &g.graph)?;
            let d = graph::join_decompose(&gr);
            done(
                Report::ok(json!({"factors": d.factors, "nontrivial": d.is_nontrivial()})),
                &common,
            )
        }
        GraphCmd::Ham { g, common } => {
            let gr = read_graph("--graph", &g.graph)?;
            let cycle = graph::hamiltonian_cycle(&gr).map_err(CliError::failed)?;
            done(
                Report::ok(json!({"hamiltonian": cycle.is_some(), "cycle": cycle})),
                &common,
            )
        }
        GraphCmd::Hom {
            g,
            target,
            induced,
            common,
        } => {
            let src = read_graph("--graph", &g.graph)?;
            let dst = read_graph("--target", &target)?;
            let found = if induced {
                graph::find_induced_embedding(&src, &dst)
            } else {
                graph::find_graph_homomorphism(&src, &dst)
            }
            .map_err(CliError::failed)?;
            done(
                Report::ok(json!({"found": found.is_some(), "image": found.map(|m| m.image)})),
                &common,
            )
        }
    }
}

fn word_group(w: &WordArgs) -> Result<(RaagGroup, GroupWord), CliError> {
    let group = RaagGroup::new(read_graph("--graph", &w.g.graph)?);
    let word = parse_word("--word", &w.word)?;
    group.check_word(&word).map_err(|e| CliError::input("--word", e))?;
    Ok((group, word))
}

fn raag_cmd(cmd: RaagCmd) -> Out {
    match cmd {
        RaagCmd::Nf { w, common } => {
            let (g, word) = word_group(&w)?;
            let nf = g.normal_form(&word).map_err(CliError::failed)?;
            done(
                Report::ok(json!({"normal_form": nf.to_string(), "length": nf.len()})),
                &common,
            )
        }
        RaagCmd::Trivial { w, common } => {
            let (g, word) = word_group(&w)?;
            let t = g.is_trivial(&word).map_err(CliError::failed)?;
            done(Report::ok(json!({ "trivial": t })), &common)
        }
        RaagCmd::Conj { w, word2, common } => {
            let (g, word) = word_group(&w)?;
            let other = parse_word("--word2", &word2)?;
            g.check_word(&other).map_err(|e| CliError::input("--word2", e))?;
            let c = g.are_conjugate(&word, &other).map_err(CliError::failed)?;
            done(Report::ok(json!({ "conjugate": c })), &common)
        }
        RaagCmd::Geodesic { w, common } => {
            let (g, word) = word_group(&w)?;
            let l = g.geodesic_length(&word).map_err(CliError::failed)?;
            done(Report::ok(json!({ "geodesic_length": l })), &common)
        }
        RaagCmd::Decompose { g, common } => {
            let gr = read_graph("--graph", &g.graph)?;
            let factors = graph::join_decompose(&gr).factors;
            let parts: Vec<Value> = factors
                .iter()
                .map(|f| json!({"vertices": f, "graph": gr.induced_subgraph(f).to_text()}))
                .collect();
            done(Report::ok(json!({ "factors": parts })), &common)
        }
    }
}

fn presentation(p: &PresentationArgs) -> Result<PcPresentation, CliError> {
    match (&p.presentation, p.builtin) {
        (Some(path), _) => read_text("--presentation", path)?
            .parse()
            .map_err(|e| CliError::input("--presentation", format!("{}: {e}", path.display()))),
        (None, Some(Builtin::S3)) => Ok(PcPresentation::symmetric3()),
        (None, Some(Builtin::D8)) => Ok(PcPresentation::dihedral8()),
        (None, Some(Builtin::Z2SemidirectZ)) => Ok(PcPresentation::z2_semidirect_z()),
        (None, Some(Builtin::U3)) => {
            if !groupcrypt::polycyclic::is_prime(p.prime) {
                return Err(CliError::input("--prime", "not a prime"));
            }
            Ok(PcPresentation::unitriangular3(p.prime))
        }
        (None, None) => Err(CliError::input("--presentation", "missing")),
    }
}

fn pc_cmd(cmd: PcCmd) -> Out {
    match cmd {
        PcCmd::Collect { p, word, common } => {
            let pres = presentation(&p)?;
            let w = parse_word("--word", &word)?;
            let e = pres.collect(&w).map_err(CliError::failed)?;
            done(Report::ok(json!({ "collected": e })), &common)
        }
        PcCmd::Hirsch { p, common } => {
            let pres = presentation(&p)?;
            done(
                Report::ok(json!({
                    "hirsch_length": pres.hirsch_length(),
                    "finite_order": pres.finite_order().map(|o| o.to_string()),
                    "presentation": pres.to_string(),
                })),
                &common,
            )
        }
    }
}

fn sig_cmd(cmd: SigCmd) -> Out {
    let platform = HeisenbergPlatform::standard();
    match cmd {
        SigCmd::Keygen { bits, common } => {
            if bits == 0 {
                return Err(CliError::input("--bits", "must be positive"));
            }
            let keys = sig_keygen(&platform, bits, HashAlg::Sha256, &mut rng(&common));
            done(Report::ok(to_json(&keys)), &common)
        }
        SigCmd::Sign { key, message, common } => {
            let keys: SignatureKeys = read_json("--key", &key)?;
            let sig = sig_sign(&platform, &keys, message.as_bytes(), &mut rng(&common));
            done(Report::ok(to_json(&sig)), &common)
        }
        SigCmd::Verify {
            key,
            message,
            sig,
            common,
        } => {
            let text = read_text("--key", &key)?;
            let public: PublicKey = serde_json::from_str::<SignatureKeys>(&text)
                .map(|k| k.public)
                .or_else(|_| serde_json::from_str::<PublicKey>(&text))
                .map_err(|e| CliError::input("--key", format!("{}: {e}", key.display())))?;
            let sig: SignatureValue = read_json("--sig", &sig)?;
            let report = match sig_verify(&platform, &public, message.as_bytes(), &sig) {
                Ok(valid) => Report::verdict(json!({ "valid": valid }), valid),
                Err(e @ ProtocolError::MalformedSignature(_)) => {
                    Report::verdict(json!({"valid": false, "reason": e.to_string()}), false)
                }
                Err(e) => return Err(protocol(e)),
            };
            done(report, &common)
        }
    }
}

fn kex_cmd(cmd: KexCmd) -> Out {
    let KexCmd::Semidirect {
        platform,
        size,
        modulus,
        max_exponent,
        common,
    } = cmd;
    if modulus < 2 {
        return Err(CliError::input("--modulus", "must be at least 2"));
    }
    if max_exponent == 0 {
        return Err(CliError::input("--max-exponent", "must be positive"));
    }
    let mut r = rng(&common);
    let (m, n) = (r.gen_range(1..=max_exponent), r.gen_range(1..=max_exponent));
    let (json, agreed) = match platform {
        KexPlatform::Matrix => {
            if size == 0 {
                return Err(CliError::input("--size", "must be positive"));
            }
            let p = MatrixConjugationPlatform::random(size, modulus, &mut r);
            let out = semidirect_kex(&p, m, n, &mut r).map_err(protocol)?;
            let agreed = out.alice_key == out.bob_key;
            (json!({"platform": p, "agreed": agreed, "outcome": out}), agreed)
        }
        KexPlatform::Commutative => {
            let p = CommutativePlatform {
                modulus,
                g: r.gen_range(1..modulus),
            };
            let out = semidirect_kex(&p, m, n, &mut r).map_err(protocol)?;
            let agreed = out.alice_key == out.bob_key;
            (json!({"platform": p, "agreed": agreed, "outcome": out}), agreed)
        }
    };
    done(Report::verdict(json, agreed), &common)
}

fn nike_cmd(cmd: NikeCmd) -> Out {
    let (ktt, a) = match cmd {
        NikeCmd::Ktt(a) => (true, a),
        NikeCmd::Ks(a) => (false, a),
    };
    if !groupcrypt::polycyclic::is_prime(a.prime) {
        return Err(CliError::input("--prime", "not a prime"));
    }
    let choice = if a.random_public {
        PublicChoice::Random
    } else {
        PublicChoice::Standard
    };
    let mut r = rng(&a.common);
    let exps = random_exponents(a.n + 1, a.prime, &mut r);
    let out = if ktt {
        let group = UnitriangularGroup::new(a.n + 2, a.prime).map_err(|e| CliError::input("--n", e))?;
        let (x, g) = ktt_public(&group, a.n, choice, &mut r);
        ktt_exchange(a.prime, a.n, &x, &g, &exps)
    } else {
        if a.n < 2 {
            return Err(CliError::input("--n", "must be at least 2"));
        }
        let group = UnitriangularGroup::new(a.n + 1, a.prime).map_err(|e| CliError::input("--n", e))?;
        let gs = ks_public(&group, a.n, choice, &mut r);
        ks_nike(a.prime, a.n, &gs, &exps)
    }
    .map_err(protocol)?;
    let agreed = out.agreed();
    done(
        Report::verdict(json!({"agreed": agreed, "exponents": exps, "outcome": out}), agreed),
        &a.common,
    )
}

fn parse_bits(s: &str) -> Result<Vec<bool>, CliError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::input("--secret", format!("expected 0/1, found {c:?}"))),
        })
        .collect()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn share_cmd(cmd: ShareCmd) -> Out {
    match cmd {
        ShareCmd::Deal1 {
            secret,
            participants,
            generators,
            common,
        } => {
            let bits = parse_bits(&secret)?;
            let params = Scheme1Params {
                generators,
                ..Scheme1Params::default()
            };
            let deal = ss_scheme1_deal(&bits, participants, params, &mut rng(&common)).map_err(protocol)?;
            done(Report::ok(to_json(&deal)), &common)
        }
        ShareCmd::Recover1 { input, drop, common } => {
            let deal: Scheme1Deal = read_json("--in", &input)?;
            let bundles: Vec<_> = deal
                .bundles
                .iter()
                .filter(|b| Some(b.participant) != drop)
                .cloned()
                .collect();
            if bundles.len() == deal.bundles.len() && drop.is_some() {
                return Err(CliError::input("--drop", "no such participant"));
            }
            let shares = bundles
                .iter()
                .map(|b| decode_share(b).map(|s| bit_string(&s)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(protocol)?;
            let secret = ss_scheme1_recover(&bundles).map_err(protocol)?;
            done(
                Report::ok(json!({"secret": bit_string(&secret), "shares": shares})),
                &common,
            )
        }
        ShareCmd::Deal2 {
            participants,
            prime,
            vertices,
            common,
        } => {
            let deal = ss_scheme2_deal(participants, prime, vertices, &mut rng(&common)).map_err(protocol)?;
            done(Report::ok(to_json(&deal)), &common)
        }
        ShareCmd::Recover2 { input, common } => {
            let deal: Scheme2Deal = read_json("--in", &input)?;
            let secret = ss_scheme2_recover(&deal.graphs, deal.modulus);
            let matches = secret == deal.secret;
            done(
                Report::verdict(json!({"secret": secret, "matches_dealer": matches}), matches),
                &common,
            )
        }
    }
}

fn session_json(out: &groupcrypt::protocols::SessionOutcome) -> Value {
    json!({
        "accepted": out.accepted,
        "failed_round": out.failed_round,
        "reason": out.reason,
        "rounds_run": out.outcomes.len(),
        "acceptance_rate": out.acceptance_rate(),
        "transcript": out.transcript,
    })
}

fn auth_cmd(s: SessionArgs) -> Out {
    if s.rounds == 0 {
        return Err(CliError::input("--rounds", "must be positive"));
    }
    let mut r = rng(&s.common);
    let params = AuthParams::default();
    let keys = auth_keygen(&params, &mut r);
    let prover = if s.cheat { Prover::Cheater } else { Prover::Honest };
    let out = auth_protocol(&keys, prover, &params, s.rounds, !s.all_rounds, &mut r).map_err(protocol)?;
    let mut json = session_json(&out);
    json["public_key"] = to_json(&keys.public);
    done(Report::verdict(json, out.accepted), &s.common)
}

fn zkp_cmd(graph_path: Option<PathBuf>, vertices: usize, s: SessionArgs) -> Out {
    if s.rounds == 0 {
        return Err(CliError::input("--rounds", "must be positive"));
    }
    let mut r = rng(&s.common);
    let (g, cycle) = match graph_path {
        Some(path) => {
            let g = read_graph("--graph", &path)?;
            let cycle = graph::hamiltonian_cycle(&g)
                .map_err(CliError::failed)?
                .ok_or_else(|| CliError::input("--graph", "graph is not Hamiltonian"))?;
            (g, cycle)
        }
        None => unique_hamiltonian_graph(vertices, &mut r).map_err(|e| CliError::input("--vertices", e))?,
    };
    let state = zkp_setup(&g, cycle, HashAlg::Sha256, &mut r).map_err(protocol)?;
    let prover = if s.cheat { ZkpProver::Cheater } else { ZkpProver::Honest };
    let out = zkp_hamiltonicity(&state, prover, s.rounds, !s.all_rounds, &mut r).map_err(protocol)?;
    let mut json = session_json(&out);
    json["statement"] = to_json(&state.statement);
    done(Report::verdict(json, out.accepted), &s.common)
}

#[derive(Serialize, Deserialize)]
struct FheKeyFile {
    notice: String,
    scheme: TruncatedPolyScheme,
}

fn fhe_key(k: &KeyArg) -> Result<TruncatedPolyScheme, CliError> {
    Ok(read_json::<FheKeyFile>("--key", &k.key)?.scheme)
}

fn ct_file(flag: &str, path: &Path, scheme: &TruncatedPolyScheme) -> Result<CiphertextFile, CliError> {
    let f: CiphertextFile = read_json(flag, path)?;
    f.check(&scheme.public).map_err(|e| CliError::input(flag, e))?;
    Ok(f)
}

fn elementwise(
    k: &KeyArg,
    a: &Path,
    b: &Path,
    op: impl Fn(&fhe::PublicRing, &fhe::Ciphertext, &fhe::Ciphertext) -> fhe::Ciphertext,
) -> Result<Report, CliError> {
    let scheme = fhe_key(k)?;
    let (fa, fb) = (ct_file("--in", a, &scheme)?, ct_file("--in2", b, &scheme)?);
    if fa.ciphertexts.len() != fb.ciphertexts.len() {
        return Err(CliError::input("--in2", "ciphertext counts differ"));
    }
    let cts = fa
        .ciphertexts
        .iter()
        .zip(&fb.ciphertexts)
        .map(|(x, y)| op(&scheme.public, x, y))
        .collect();
    Ok(Report::ok(to_json(&CiphertextFile::new(&scheme.public, cts))))
}

fn parse_values(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::input("--values", format!("not an integer: {t:?}"))))
        .collect()
}

fn fhe_cmd(cmd: FheCmd) -> Out {
    match cmd {
        FheCmd::Keygen {
            modulus,
            degree,
            no_mix,
            common,
        } => {
            let scheme = if no_mix {
                TruncatedPolyScheme::new(modulus, degree)
            } else {
                TruncatedPolyScheme::with_random_basis(modulus, degree, &mut rng(&common))
            }
            .map_err(|e| CliError::input("--modulus", e))?;
            let file = FheKeyFile {
                notice: fhe::SECURITY_NOTICE.into(),
                scheme,
            };
            done(Report::ok(to_json(&file)), &common)
        }
        FheCmd::Encrypt {
            k,
            csv,
            column,
            values,
            growth,
            common,
        } => {
            let scheme = fhe_key(&k)?;
            let data = match (csv, values) {
                (Some(path), _) => {
                    let col = column.ok_or_else(|| CliError::input("--column", "required with --csv"))?;
                    read_csv_column(&path, &col).map_err(|e| CliError::input("--csv", e))?
                }
                (None, Some(v)) => parse_values(&v)?,
                (None, None) => return Err(CliError::input("--csv", "missing input")),
            };
            let growth = growth.unwrap_or(data.len() as u64);
            let residues =
                encode_db(&data, scheme.modulus(), growth).map_err(|e| CliError::input("--modulus", e))?;
            let mut r = rng(&common);
            let cts = residues.iter().map(|u| scheme.encrypt(u, &mut r)).collect();
            done(Report::ok(to_json(&CiphertextFile::new(&scheme.public, cts))), &common)
        }
        FheCmd::Add { k, input, input2, common } => {
            done(elementwise(&k, &input, &input2, |r, a, b| r.add(a, b))?, &common)
        }
        FheCmd::Mul { k, input, input2, common } => {
            done(elementwise(&k, &input, &input2, |r, a, b| r.mul(a, b))?, &common)
        }
        FheCmd::Mean { k, input, common } => {
            let scheme = fhe_key(&k)?;
            let f = ct_file("--in", &input, &scheme)?;
            let sum = encrypted_sum(&scheme.public, &f.ciphertexts)
                .ok_or_else(|| CliError::input("--in", "no ciphertexts"))?;
            let count = f.ciphertexts.len() as u64;
            let mean = fhe::decrypt_mean(&scheme, &sum, count);
            done(
                Report::ok(json!({
                    "notice": fhe::SECURITY_NOTICE,
                    "count": count,
                    "sum": mean.numerator * count as i128 / mean.denominator as i128,
                    "mean": mean,
                    "mean_value": mean.value(),
                    "encrypted_sum": CiphertextFile::new(&scheme.public, vec![sum]),
                })),
                &common,
            )
        }
        FheCmd::Decrypt { k, input, common } => {
            let scheme = fhe_key(&k)?;
            let f = ct_file("--in", &input, &scheme)?;
            let residues: Vec<u64> = f.ciphertexts.iter().map(|c| scheme.decrypt(c)).collect();
            let values = decode_db(&residues, scheme.modulus());
            done(
                Report::ok(json!({"notice": fhe::SECURITY_NOTICE, "values": values})),
                &common,
            )
        }
    }
}

fn oracle_cmd(cmd: OracleCmd) -> Out {
    let budget = OracleBudget::default();
    match cmd {
        OracleCmd::Word { w, common } => {
            let (g, word) = word_group(&w)?;
            let v = oracles::word_oracle(g.graph(), &word, &budget).map_err(CliError::failed)?;
            done(Report::ok(json!({ "verdict": v })), &common)
        }
        OracleCmd::Conj {
            w,
            word2,
            max_conj_len,
            common,
        } => {
            let (g, word) = word_group(&w)?;
            let other = parse_word("--word2", &word2)?;
            let v = oracles::conjugacy_oracle(g.graph(), &word, &other, max_conj_len, &budget)
                .map_err(CliError::failed)?;
            done(Report::ok(json!({ "verdict": v })), &common)
        }
        OracleCmd::Gdlp {
            cyclic,
            x,
            presentation: pres_path,
            y,
            common,
        } => {
            let solution = match (cyclic, pres_path) {
                (Some(n), _) => {
                    if n == 0 {
                        return Err(CliError::input("--cyclic", "must be positive"));
                    }
                    let group = CyclicGroup(n);
                    let xs = x.ok_or_else(|| CliError::input("--x", "required with --cyclic"))?;
                    let xs: Vec<(u64, u64)> = xs
                        .split(',')
                        .map(|t| {
                            let v: u64 = t.trim().parse().map_err(|_| CliError::input("--x", format!("bad element {t:?}")))?;
                            Ok((v % n, n / (v % n).gcd(&n)))
                        })
                        .collect::<Result<_, CliError>>()?;
                    let y: u64 = y.trim().parse().map_err(|_| CliError::input("--y", "bad element"))?;
                    oracles::gdlp_bruteforce(&group, &xs, &(y % n), &budget)
                }
                (None, Some(path)) => {
                    let pres: PcPresentation = read_text("--presentation", &path)?
                        .parse()
                        .map_err(|e| CliError::input("--presentation", e))?;
                    let xs = (0..pres.n())
                        .map(|i| match pres.rel_orders()[i] {
                            RelOrder::Finite(r) => Ok((pres.generator(i), r)),
                            RelOrder::Infinite => Err(CliError::input("--presentation", "needs finite relative orders")),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let target = pres
                        .collect(&parse_word("--y", &y)?)
                        .map_err(|e| CliError::input("--y", e))?;
                    oracles::gdlp_bruteforce(&pres, &xs, &target, &budget)
                }
                (None, None) => return Err(CliError::input("--cyclic", "missing group")),
            }
            .map_err(CliError::failed)?;
            done(
                Report::ok(json!({
                    "found": solution.is_some(),
                    "exponents": solution,
                })),
                &common,
            )
        }
    }
}
