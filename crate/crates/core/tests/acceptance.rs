//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use bimodal_core::graph::{memory, merge_states, Memory};
use bimodal_core::spectra::{
    anticipation_lower_bound, coding_ratio, franaszek_joint, joint_ae_exists, min_infnorm_ae, perron, rate_region,
};
use bimodal_core::synth::{
    assign_block_tags, block_width, merge_split_pair, split_one_round, Method, Tag, TaggedEncoder,
};
use bimodal_core::verify::{
    anticipation, anticipation_with_certificate, check_encoder, decode_stream, encode_stream, encode_tags, is_definite,
    losslessness, max_block_disparity, sliding_block_decodable, witness_ae, Anticipation, Policy, VerifyOptions,
};
use bimodal_core::{presets, ApproxEigenvector, Error, Matrix};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn dvd_pair() -> (Matrix, Matrix) {
    (matrix(&DVD_A0), matrix(&DVD_A1))
}

fn criterion_1() -> Outcome {
    let (a0, a1) = dvd_pair();
    let g = presets::dvd().adjacency_pair();
    ensure!(
        g.a0 == a0 && g.a1 == a1,
        "generated (2,10)-RLL matrices differ from the transcription"
    );
    let xi = vec![2; 11];
    let x = franaszek_joint(&a0, &a1, 173, 178, &xi).map_err(|e| e.to_string())?;
    ensure!(x == DVD_X, "vector at (173,178) is {x:?}");
    for (n0, n1) in [(174, 178), (173, 179)] {
        let z = franaszek_joint(&a0, &a1, n0, n1, &xi).map_err(|e| e.to_string())?;
        ensure!(z.iter().all(|&v| v == 0), "({n0},{n1}) gave {z:?}");
    }
    let sum = &a0 + &a1;
    let single = franaszek_joint(&sum, &sum, 351, 351, &xi).map_err(|e| e.to_string())?;
    ensure!(single == DVD_X, "single-matrix run at 351 gave {single:?}");
    Ok(format!("x = {x:?}; 174/179 give zero"))
}

fn criterion_2() -> Outcome {
    let g = presets::dvd();
    let merged = merge_states(&g, Some(&DVD_X)).map_err(|e| e.to_string())?;
    ensure!(merged.kept == [0, 1, 5, 9], "kept states {:?}", merged.kept);
    let p = merged.graph.adjacency_pair();
    ensure!(p.a0 == matrix(&DVD_MERGED_A0), "merged even matrix\n{}", p.a0);
    ensure!(p.a1 == matrix(&DVD_MERGED_A1), "merged odd matrix\n{}", p.a1);
    let x = franaszek_joint(&p.a0, &p.a1, 173, 178, &[2; 4]).map_err(|e| e.to_string())?;
    ensure!(x == [1, 1, 2, 1], "merged vector {x:?}");
    let e0 = split_one_round(&merged.graph.parity_subgraph(0), &x, 173).map_err(|e| e.to_string())?;
    let e1 = split_one_round(&merged.graph.parity_subgraph(1), &x, 178).map_err(|e| e.to_string())?;
    let e = merge_split_pair(&e0, &e1, None).map_err(|e| e.to_string())?;
    let r = check_encoder(&e, &g, 173, 178, VerifyOptions::default());
    ensure!(r.is_encoder(), "report:\n{r}");
    ensure!(
        r.anticipation == Anticipation::Finite(1),
        "anticipation {}",
        r.anticipation
    );
    Ok(format!("{} encoder states, anticipation 1", e.graph.num_states()))
}

fn criterion_3() -> Outcome {
    let g = presets::example5();
    let region = rate_region(&g, 2, 64);
    for (n0, n1) in [(20, 26), (39, 13)] {
        ensure!(
            region.iter().any(|p| p.n0 == n0 && p.n1 == n1),
            "({n0},{n1}) missing from region"
        );
    }
    let sq = g.power(2);
    let p = sq.adjacency_pair();
    let (l, l0, l1) = (
        perron(&sq.adjacency(), 1e-12),
        perron(&p.a0, 1e-12),
        perron(&p.a1, 1e-12),
    );
    ensure!((l - 64.0).abs() <= 1e-6, "lambda = {l}");
    ensure!((l0 - 39.5).abs() <= 0.1, "lambda0 = {l0}");
    ensure!((l1 - 26.1).abs() <= 0.1, "lambda1 = {l1}");
    Ok(format!("(20,26), (39,13) present; lambda {l:.6}, {l0:.3}, {l1:.3}"))
}

fn criterion_4() -> Outcome {
    let g = presets::example3();
    for t in 1..=8usize {
        let cr = coding_ratio(&g, t, 64);
        let want = (1u64 << (t - 1)) - 1;
        ensure!(cr.n_max == want, "t={t}: n_max {} want {want}", cr.n_max);
        let rho = ((1u64 << t) as f64 - 2.0).log2() / t as f64;
        if t == 1 {
            ensure!(cr.rho == f64::NEG_INFINITY, "t=1: rho {}", cr.rho);
        } else {
            ensure!((cr.rho - rho).abs() <= 1e-9, "t={t}: rho {} want {rho}", cr.rho);
        }
        let p = g.power(t).adjacency_pair();
        let half = 1u64 << (t - 1);
        ensure!(
            joint_ae_exists(&p.a0, &p.a1, half, half, 64) == Err(Error::NotFoundWithin(64)),
            "t={t}: vector exists at ({half},{half})"
        );
    }
    Ok("n_max = 2^(t-1)-1 for t=1..8".into())
}

fn criterion_5() -> Outcome {
    let g = presets::example4();
    for t in 3..=8usize {
        let s: i64 = if t % 2 == 0 { 1 } else { -1 };
        let p2 = 1i64 << t;
        let third = |v: i64| (v / 3) as u64;
        let want0 = matrix(&[[third(2 * p2 + s), 0], [0, third(p2 + 2 * s)]]);
        let want1 = matrix(&[[0, third(2 * p2 - 2 * s)], [third(p2 - s), 0]]);
        let p = g.power(t).adjacency_pair();
        ensure!(p.a0 == want0 && p.a1 == want1, "t={t}: power matrices differ");
        let n = third(p2 + 2 * s);
        let cr = coding_ratio(&g, t, 64);
        ensure!(cr.n_max == n, "t={t}: n_max {} want {n}", cr.n_max);
        ensure!(
            ApproxEigenvector::new(&p, vec![3, 2], n, n).is_ok(),
            "t={t}: (3,2) rejected at {n}"
        );
    }
    Ok("closed forms and n_max hold for t=3..8".into())
}

fn criterion_6() -> Outcome {
    let g = presets::example7();
    let x = [1u64, 2, 3];
    let p = g.adjacency_pair();
    for b in 0..2u8 {
        let ax = p.get(b).mul_vec(&x);
        ensure!(ax == [2, 4, 6], "class {b}: A x = {ax:?}");
    }
    match split_one_round(&g.parity_subgraph(1), &x, 2) {
        Err(Error::SplitInfeasible { state }) => Ok(format!("odd part: state {state} cannot be split")),
        other => Err(format!("expected SplitInfeasible, got {other:?}")),
    }
}

fn criterion_7() -> Outcome {
    let g = presets::appendix();
    let x = [1u64, 2, 3, 3];
    let p = g.adjacency_pair();
    for b in 0..2u8 {
        ensure!(p.get(b).mul_vec(&x) == [2, 4, 6, 6], "class {b}: not an eigenvector");
    }
    let (s0, s1) = appendix_splits();
    for (b, s) in [(0, &s0), (1, &s1)] {
        let a = anticipation(&s.graph, 32);
        ensure!(a == Anticipation::Finite(3), "class-{b} split anticipation {a}");
    }
    let all = appendix_matchings();
    ensure!(all.len() == 36, "{} matchings", all.len());
    for (phi0, phi1, e) in &all {
        let (a, cert) = anticipation_with_certificate(&e.graph, 32);
        ensure!(
            a == Anticipation::Infinite,
            "matching {phi0:?}/{phi1:?}: anticipation {a}"
        );
        let cert = cert.ok_or_else(|| format!("matching {phi0:?}/{phi1:?}: no certificate"))?;
        ensure!(
            cert.cycle.nodes.len() >= 2 && cert.cycle.nodes.first() == cert.cycle.nodes.last(),
            "malformed certificate {cert}"
        );
        let r = check_encoder(e, &g, 2, 2, VerifyOptions::default());
        ensure!(
            r.out_degree_ok == [true, true],
            "matching {phi0:?}/{phi1:?}: out-degrees"
        );
    }
    Ok("splits have anticipation 3; all 36 matchings infinite with certificates".into())
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    for f in fixture_encoders() {
        let name = &f.name;
        let e = &f.encoder;
        let r = check_encoder(e, &f.graph, f.n0, f.n1, VerifyOptions::default());
        ensure!(r.is_encoder(), "{name}:\n{r}");
        let p = f.graph.adjacency_pair();
        let (v, _) = min_infnorm_ae(&p.a0, &p.a1, f.n0, f.n1, 64).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            e.graph.num_states() as u64 >= v,
            "{name}: {} states < {v}",
            e.graph.num_states()
        );
        let w = witness_ae(&e.graph, &f.graph, f.n0, f.n1).map_err(|err| format!("{name}: witness {err}"))?;
        ensure!(w.max_entry() >= 1, "{name}: zero witness");
        if let Anticipation::Finite(a) = r.anticipation {
            let lb = anticipation_lower_bound(&p.a0, &p.a1, f.n0, f.n1, 64).map_err(|e| e.to_string())?;
            ensure!(a as f64 >= lb - 1e-9, "{name}: anticipation {a} below bound {lb}");
        }
        if f.method == Method::Punctured {
            let xp = f.x_plus.as_ref().expect("punctured fixtures record x+");
            let n = f.n0.min(f.n1) + 1;
            let norm = *xp.iter().max().unwrap();
            let mut log = 0;
            while n.pow(log) < norm {
                log += 1;
            }
            let bound = 1 + log as usize;
            let Anticipation::Finite(a) = r.anticipation else {
                return Err(format!("{name}: anticipation {}", r.anticipation));
            };
            ensure!(a <= bound, "{name}: anticipation {a} above {bound}");
            if let Memory::Finite(mu) = memory(&f.graph, 16) {
                ensure!(is_definite(&e.graph, mu, bound), "{name}: not ({mu},{bound})-definite");
                ensure!(
                    sliding_block_decodable(e, mu, bound),
                    "{name}: not ({mu},{bound})-sliding-block decodable"
                );
            }
            notes.push(format!("{name}: a={a}<={bound}"));
        }
    }
    Ok(notes.join("; "))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let k = rng.gen_range(1..=4);
        let (a0, a1) = (random_matrix(&mut rng, k, 3), random_matrix(&mut rng, k, 3));
        let (n0, n1) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let xi = rng.gen_range(1..=3);
        let got = franaszek_joint(&a0, &a1, n0, n1, &vec![xi; k]).map_err(|e| e.to_string())?;
        let want = brute_franaszek(&a0, &a1, n0, n1, xi);
        ensure!(got == want, "instance {i}: franaszek {got:?} brute force {want:?}");
    }
    for i in 0..200 {
        let g = random_graph(&mut rng);
        ensure!(
            losslessness(&g) == brute_lossless(&g),
            "graph {i}: losslessness disagrees\n{}",
            bimodal_core::format::serialize_graph(&g)
        );
        let (a, b) = (anticipation(&g, 64), brute_anticipation(&g));
        ensure!(a == b, "graph {i}: anticipation {a} vs brute force {b}");
    }
    Ok("200 Franaszek instances, 200 graphs: no disagreement".into())
}

fn round_trip(e: &TaggedEncoder, rng: &mut ChaCha8Rng, policy: Policy) -> Result<(), String> {
    let start = rng.gen_range(0..e.graph.num_states());
    let enc = match block_width(e) {
        Some(p) => {
            let bt = assign_block_tags(e, p).map_err(|e| e.to_string())?;
            let blocks: Vec<u64> = (0..1000).map(|_| rng.gen_range(0..1u64 << p)).collect();
            encode_stream(e, &bt, &blocks, start, policy).map_err(|e| e.to_string())?
        }
        None => {
            let slots = e.n0.min(e.n1);
            let tags: Vec<Tag> = (0..1000)
                .map(|_| {
                    let class = rng.gen_range(0..2u8);
                    let limit = if policy == Policy::AsTagged { e.n(class) } else { slots };
                    Tag {
                        class,
                        slot: rng.gen_range(0..limit),
                    }
                })
                .collect();
            encode_tags(e, &tags, start, policy).map_err(|e| e.to_string())?
        }
    };
    let sent: Vec<Tag> = enc.edges.iter().map(|&i| e.tags[i]).collect();
    let closed = decode_stream(e, &enc.word, start, Some(enc.end_state)).map_err(|e| e.to_string())?;
    ensure!(closed.tags == sent, "decode with end state differs");
    let open = decode_stream(e, &enc.word, start, None).map_err(|e| e.to_string())?;
    for (k, (t, prov)) in open.tags.iter().zip(&open.provisional).enumerate() {
        ensure!(*prov || *t == sent[k], "firm tag {k} differs");
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut count = 0;
    for f in fixture_encoders() {
        if !matches!(anticipation(&f.encoder.graph, 32), Anticipation::Finite(_)) {
            continue;
        }
        for policy in [Policy::AsTagged, Policy::FixedParity, Policy::RdsMin] {
            round_trip(&f.encoder, &mut rng, policy).map_err(|e| format!("{} {policy:?}: {e}", f.name))?;
        }
        count += 1;
    }
    let f = &fixture_encoders()[1];
    let e = &f.encoder;
    let bt = assign_block_tags(e, 1).map_err(|e| e.to_string())?;
    let blocks: Vec<u64> = (0..1000).map(|_| rng.gen_range(0..2)).collect();
    let out = encode_stream(e, &bt, &blocks, 0, Policy::RdsMin).map_err(|e| e.to_string())?;
    let d = max_block_disparity(&e.graph);
    let worst = out.rds_trace.iter().map(|r| r.abs()).max().unwrap_or(0);
    ensure!(worst <= d, "|RDS| reached {worst} > {d}");
    Ok(format!(
        "{count} encoders x 3 policies x 1000 blocks; max |RDS| {worst} <= {d}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Franaszek golden", criterion_1),
        ("merge golden", criterion_2),
        ("rate-region golden", criterion_3),
        ("coding-ratio law", criterion_4),
        ("power closed forms", criterion_5),
        ("split failure", criterion_6),
        ("appendix limitation", criterion_7),
        ("encoder bounds", criterion_8),
        ("oracle suites", criterion_9),
        ("round trip", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
