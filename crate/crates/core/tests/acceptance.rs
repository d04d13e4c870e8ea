use std::process::ExitCode;
use std::time::{Duration, Instant};

use equivar::verify::{run, Outcome};

const CRITERIA: &[(usize, &str, &str, Option<u64>)] = &[
    (1, "qqmaps", "stable Hom(Q_{s,n}, Q_{s,m}) counts injections", Some(60)),
    (2, "qpmaps", "Q->P maps land in Q", None),
    (3, "filtration", "P_{s,n} filtered by copies of Q_{s,n}", None),
    (4, "phi", "Phi_s(P_n) = Q_{s,n}, Phi_s(T_n) = Q_{s-1,n}", None),
    (5, "tor", "Tor_r(Q_{s,1}, Q_{s,1}) = Q_{s,1}", Some(120)),
    (6, "ext_self", "stable Ext^i(Q_{s,1}, Q_{s,1}) = k", None),
    (7, "ext_vanish", "Ext^i(Q_{s,n}, P_{s,d}) = 0 at truncation", None),
    (8, "torsion_vanish", "stable Hom(Q_{s-1,m}, P_{s,n}) = 0", None),
    (9, "kgroup", "mu_n invertible, P/Q round trips, [P_{1,(2)}]", None),
    (10, "rank", "rank_expand injective", None),
    (11, "tensor", "tensor decomposition identities", None),
    (12, "cas", "C(A_s) associativity, Hom dims, socles", None),
];

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn line(id: usize, desc: &str, outcomes: &[Outcome], elapsed: Duration, limit: Option<u64>) -> bool {
    let failed: Vec<&Outcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let in_time = limit.is_none_or(|s| elapsed.as_secs() < s);
    let ok = failed.is_empty() && !outcomes.is_empty() && in_time;
    println!(
        "criterion {id:>2} {}: {desc} ({} checks, {} failed, {:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        outcomes.len(),
        failed.len(),
        elapsed.as_secs_f64()
    );
    for o in failed.iter().take(8) {
        println!("    {}: expected {} got {}", o.name, o.expected, o.got);
    }
    if !in_time {
        println!("    over the {}s budget", limit.unwrap_or(0));
    }
    ok
}

fn main() -> ExitCode {
    let mut all_ok = true;
    for &(id, suite, desc, limit) in CRITERIA {
        let t = Instant::now();
        let outcomes = match run(suite, None, jobs()) {
            Ok(o) => o,
            Err(e) => {
                println!("criterion {id:>2} FAIL: {desc} ({e})");
                all_ok = false;
                continue;
            }
        };
        all_ok &= line(id, desc, &outcomes, t.elapsed(), limit);
    }
    let t = Instant::now();
    let outcomes = run("all", Some(3), jobs()).unwrap_or_default();
    all_ok &= line(13, "verify --suite all --max-N 3", &outcomes, t.elapsed(), Some(600));
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
