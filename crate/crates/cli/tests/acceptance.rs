//! Acceptance suite: runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use gengamma::family::psi_k;
use gengamma::inequality::{
    check_sandwich, lemma_expr_k, lemma_expr_p, lemma_expr_q, prior_bounds_k, prior_bounds_p,
    prior_bounds_q, sandwich_bounds, scan_monotone, Auxiliary, GenParams, DEFAULT_TOL_REPORT,
};
use gengamma::oracle::{cross_validate, gamma_k_quad, psi_hp, psi_k_hp, psi_p_hp, psi_q_hp};
use gengamma::{
    gamma, gamma_k, gamma_p, gamma_q, psi_p, psi_q, psi_series, FamilyParam, SeriesControl,
};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ (stream << 32))
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}

/// Counts the cases for which `check` is false or errors, in parallel.
fn violations<C: Sync>(
    cases: &[C],
    check: impl Fn(&C) -> Result<bool, String> + Sync,
) -> Vec<String> {
    cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, c)| match check(c) {
            Ok(true) => None,
            Ok(false) => Some(format!("case {i}")),
            Err(e) => Some(format!("case {i}: {e}")),
        })
        .collect()
}

fn summarize(label: &str, total: usize, bad: &[String]) -> String {
    match bad.first() {
        None => format!("{label} {total}/{total}"),
        Some(first) => format!("{label} {}/{total} (first: {first})", total - bad.len()),
    }
}

fn series_correctness() -> Outcome {
    let start = Instant::now();
    let ctrl = SeriesControl::default();
    let tol = 1e-10;
    let mut r = rng(1);
    let n = 200;
    let mut parts = Vec::new();
    let mut pass = true;

    let ts: Vec<f64> = (0..n).map(|_| log_uniform(&mut r, 1e-3, 100.0)).collect();
    let bad = violations(&ts, |&t| {
        let fast = psi_series(t, &ctrl)
            .and_then(|v| v.require(&ctrl))
            .map_err(|e| e.to_string())?;
        Ok(cross_validate(
            fast,
            &psi_hp(t).map_err(|e| e.to_string())?,
            tol,
        ))
    });
    pass &= bad.is_empty();
    parts.push(summarize("psi", n, &bad));

    let cases: Vec<(f64, u64)> = (0..n)
        .map(|_| (log_uniform(&mut r, 1e-3, 100.0), r.gen_range(1..=5000)))
        .collect();
    let bad = violations(&cases, |&(t, p)| {
        let fast = psi_p(t, p).map_err(|e| e.to_string())?;
        Ok(cross_validate(
            fast,
            &psi_p_hp(t, p).map_err(|e| e.to_string())?,
            tol,
        ))
    });
    pass &= bad.is_empty();
    parts.push(summarize("psi_p", n, &bad));

    let cases: Vec<(f64, f64)> = (0..n)
        .map(|_| (log_uniform(&mut r, 1e-3, 100.0), r.gen_range(0.001..0.99)))
        .collect();
    let bad = violations(&cases, |&(t, q)| {
        let fast = psi_q(t, q, &ctrl)
            .and_then(|v| v.require(&ctrl))
            .map_err(|e| e.to_string())?;
        Ok(cross_validate(
            fast,
            &psi_q_hp(t, q).map_err(|e| e.to_string())?,
            tol,
        ))
    });
    pass &= bad.is_empty();
    parts.push(summarize("psi_q", n, &bad));

    let cases: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            (
                log_uniform(&mut r, 1e-3, 100.0),
                log_uniform(&mut r, 0.1, 20.0),
            )
        })
        .collect();
    let bad = violations(&cases, |&(t, k)| {
        let fast = psi_k(t, k, &ctrl)
            .and_then(|v| v.require(&ctrl))
            .map_err(|e| e.to_string())?;
        Ok(cross_validate(
            fast,
            &psi_k_hp(t, k).map_err(|e| e.to_string())?,
            tol,
        ))
    });
    pass &= bad.is_empty();
    parts.push(summarize("psi_k", n, &bad));

    let elapsed = start.elapsed();
    let fast_enough = elapsed < Duration::from_secs(5);
    parts.push(format!("{:.2}s", elapsed.as_secs_f64()));
    Outcome::new(pass && fast_enough, parts.join(", "))
}

fn k_gamma_identity() -> Outcome {
    let mut r = rng(2);
    let cases: Vec<(f64, f64)> = (0..50)
        .map(|_| {
            let t = 20.0 - r.gen_range(0.0..20.0); // (0, 20]
            (t, r.gen_range(1.0..=10.0))
        })
        .collect();
    let bad = violations(&cases, |&(t, k)| {
        let fast = gamma_k(t, k).map_err(|e| e.to_string())?;
        let quad = gamma_k_quad(t, k).map_err(|e| e.to_string())?.to_f64();
        Ok(rel_close(fast, quad, 1e-12))
    });
    Outcome::new(
        bad.is_empty(),
        summarize("gamma_k vs quadrature", cases.len(), &bad),
    )
}

fn functional_equations() -> Outcome {
    let ctrl = SeriesControl::default();
    let mut r = rng(3);
    let n = 500;
    let p_cases: Vec<(f64, u64)> = (0..n)
        .map(|_| (r.gen_range(0.01..30.0), r.gen_range(1..=10_000)))
        .collect();
    let bad_p = violations(&p_cases, |&(t, p)| {
        let pf = p as f64;
        let lhs = gamma_p(t + 1.0, p).map_err(|e| e.to_string())?;
        let rhs = pf * t / (t + pf + 1.0) * gamma_p(t, p).map_err(|e| e.to_string())?;
        Ok(rel_close(lhs, rhs, 1e-10))
    });
    let q_cases: Vec<(f64, f64)> = (0..n)
        .map(|_| (r.gen_range(0.01..30.0), r.gen_range(0.01..0.99)))
        .collect();
    let bad_q = violations(&q_cases, |&(t, q)| {
        let g = |x: f64| {
            gamma_q(x, q, &ctrl)
                .and_then(|v| v.require(&ctrl))
                .map_err(|e| e.to_string())
        };
        let factor = -(t * q.ln()).exp_m1() / (1.0 - q);
        Ok(rel_close(g(t + 1.0)?, factor * g(t)?, 1e-10))
    });
    let k_cases: Vec<(f64, f64)> = (0..n)
        .map(|_| (r.gen_range(0.01..30.0), r.gen_range(0.1..10.0)))
        .collect();
    let bad_k = violations(&k_cases, |&(t, k)| {
        let lhs = gamma_k(t + k, k).map_err(|e| e.to_string())?;
        let rhs = t * gamma_k(t, k).map_err(|e| e.to_string())?;
        Ok(rel_close(lhs, rhs, 1e-10))
    });
    Outcome::new(
        bad_p.is_empty() && bad_q.is_empty() && bad_k.is_empty(),
        [
            summarize("p", n, &bad_p),
            summarize("q", n, &bad_q),
            summarize("k", n, &bad_k),
        ]
        .join(", "),
    )
}

fn lemma_positivity() -> Outcome {
    let mut r = rng(4);
    let n = 10_000;
    let p_cases: Vec<(f64, f64, f64, u64)> = (0..n)
        .map(|_| {
            (
                log_uniform(&mut r, 0.01, 100.0),
                log_uniform(&mut r, 0.01, 100.0),
                1.0 + log_uniform(&mut r, 1e-6, 100.0),
                r.gen_range(1..=10_000),
            )
        })
        .collect();
    let bad_p = violations(&p_cases, |&(a, b, t, p)| {
        Ok(lemma_expr_p(a, b, t, p).map_err(|e| e.to_string())? > 0.0)
    });
    let q_cases: Vec<(f64, f64, f64, f64)> = (0..n)
        .map(|_| {
            (
                log_uniform(&mut r, 0.01, 100.0),
                log_uniform(&mut r, 0.01, 100.0),
                1.0 + log_uniform(&mut r, 1e-6, 100.0),
                r.gen_range(0.001..0.995),
            )
        })
        .collect();
    let bad_q = violations(&q_cases, |&(a, b, t, q)| {
        Ok(lemma_expr_q(a, b, t, q).map_err(|e| e.to_string())? > 0.0)
    });
    let k_cases: Vec<(f64, f64, f64, f64)> = (0..n)
        .map(|_| {
            let b = log_uniform(&mut r, 0.01, 100.0);
            // Include the equality case a = b about one time in ten.
            let a = if r.gen_bool(0.1) {
                b
            } else {
                b + log_uniform(&mut r, 1e-6, 100.0)
            };
            (
                a,
                b,
                log_uniform(&mut r, 1e-4, 100.0),
                1.0 + log_uniform(&mut r, 1e-6, 50.0),
            )
        })
        .collect();
    let bad_k = violations(&k_cases, |&(a, b, t, k)| {
        Ok(lemma_expr_k(a, b, t, k).map_err(|e| e.to_string())? >= -1e-12)
    });
    Outcome::new(
        bad_p.is_empty() && bad_q.is_empty() && bad_k.is_empty(),
        [
            summarize("p", n, &bad_p),
            summarize("q", n, &bad_q),
            summarize("k", n, &bad_k),
        ]
        .join(", "),
    )
}

/// Random admissible parameters for the family: `α ≥ 1` for p and q,
/// `a ≥ b` and `k ≥ 1` for k.
fn random_aux(r: &mut ChaCha8Rng, family: char) -> Auxiliary {
    let beta = r.gen_range(0.1..3.0);
    let b = r.gen_range(0.1..5.0);
    let (a, alpha, fam) = match family {
        'p' => (
            r.gen_range(0.1..5.0),
            r.gen_range(1.0..4.0),
            FamilyParam::P(r.gen_range(1..=1000)),
        ),
        'q' => (
            r.gen_range(0.1..5.0),
            r.gen_range(1.0..4.0),
            FamilyParam::Q(r.gen_range(0.01..0.95)),
        ),
        _ => (
            b + r.gen_range(0.0..3.0),
            r.gen_range(0.2..4.0),
            FamilyParam::K(r.gen_range(1.0..10.0)),
        ),
    };
    Auxiliary::new(GenParams::new(a, b, alpha, beta).unwrap(), fam).unwrap()
}

fn derivative_coherence() -> Outcome {
    let mut r = rng(5);
    let h = 1e-5;
    let mut parts = Vec::new();
    let mut pass = true;
    for (family, name) in [('p', "omega"), ('q', "phi"), ('k', "theta")] {
        let cases: Vec<(Auxiliary, f64)> = (0..100)
            .map(|_| (random_aux(&mut r, family), r.gen_range(0.01..5.0)))
            .collect();
        let bad = violations(&cases, |(aux, t)| {
            let ln = |x: f64| aux.ln_value(x).map_err(|e| e.to_string());
            let fd = (ln(t + h)? - ln(t - h)?) / (2.0 * h);
            let d = aux.log_deriv(*t).map_err(|e| e.to_string())?;
            Ok((fd - d).abs() <= 1e-6 * d.abs().max(1.0))
        });
        pass &= bad.is_empty();
        parts.push(summarize(name, 100, &bad));
    }
    Outcome::new(pass, parts.join(", "))
}

fn monotonicity() -> Outcome {
    let mut r = rng(6);
    let grid: Vec<f64> = (1..=500).map(|i| i as f64 * 0.01).collect();
    let mut parts = Vec::new();
    let mut pass = true;
    for (family, name) in [('p', "omega"), ('q', "phi"), ('k', "theta")] {
        let sets: Vec<Auxiliary> = (0..20).map(|_| random_aux(&mut r, family)).collect();
        let strict = family != 'k';
        let bad = violations(&sets, |aux| {
            let s = scan_monotone(aux, &grid).map_err(|e| e.to_string())?;
            Ok(if strict {
                s.min_forward_diff > 0.0 && s.derivative_min > 0.0
            } else {
                s.min_forward_diff >= -1e-12 && s.derivative_min >= -1e-12
            })
        });
        pass &= bad.is_empty();
        parts.push(summarize(name, 20, &bad));
    }
    Outcome::new(pass, parts.join(", "))
}

fn sandwich() -> Outcome {
    let mut r = rng(7);
    let grid: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
    let mut parts = Vec::new();
    let mut pass = true;
    for family in ['p', 'q', 'k'] {
        let mut sets: Vec<Auxiliary> = (0..20).map(|_| random_aux(&mut r, family)).collect();
        if family == 'k' {
            // Equality case a = b, k = 1.
            let gp =
                GenParams::new(1.3, 1.3, r.gen_range(0.2..4.0), r.gen_range(0.1..3.0)).unwrap();
            sets[0] = Auxiliary::theta(gp, 1.0).unwrap();
        }
        let bad = violations(&sets, |aux| {
            let rows = check_sandwich(aux, &grid, DEFAULT_TOL_REPORT).map_err(|e| e.to_string())?;
            let equality = aux.gp.a == aux.gp.b && aux.family == FamilyParam::K(1.0);
            Ok(rows.iter().all(|row| {
                let margins = [row.lower_margin, row.upper_margin];
                let ok = if family == 'k' {
                    margins.iter().all(|&m| m >= -1e-12)
                } else {
                    margins.iter().all(|&m| m > 0.0)
                };
                ok && row.pass && (!equality || margins.iter().all(|m| m.abs() <= 1e-12))
            }))
        });
        pass &= bad.is_empty();
        parts.push(summarize(&family.to_string(), 20, &bad));
    }
    Outcome::new(pass, parts.join(", "))
}

fn reductions() -> Outcome {
    let ctrl = SeriesControl::default();
    let mut r = rng(8);
    let mut parts = Vec::new();
    let mut pass = true;
    for family in ['p', 'q', 'k'] {
        let cases: Vec<(FamilyParam, f64, f64)> = (0..10)
            .map(|_| {
                let fam = match family {
                    'p' => FamilyParam::P(r.gen_range(1..=1000)),
                    'q' => FamilyParam::Q(r.gen_range(0.01..0.95)),
                    _ => FamilyParam::K(r.gen_range(1.0..10.0)),
                };
                (fam, r.gen_range(1.0..5.0), r.gen_range(0.01..0.99))
            })
            .collect();
        let bad = violations(&cases, |&(fam, alpha, t)| {
            let gp = GenParams::new(1.0, 1.0, alpha, 1.0).unwrap();
            let aux = Auxiliary::new(gp, fam).map_err(|e| e.to_string())?;
            let b = sandwich_bounds(&aux, t).map_err(|e| e.to_string())?;
            let prior = match fam {
                FamilyParam::P(p) => prior_bounds_p(alpha, p, t),
                FamilyParam::Q(q) => prior_bounds_q(alpha, q, t, &ctrl),
                FamilyParam::K(k) => prior_bounds_k(alpha, k, t),
            }
            .map_err(|e| e.to_string())?;
            Ok(rel_close(b.ln_lower.exp(), prior.0, 1e-12)
                && rel_close(b.ln_middle.exp(), prior.1, 1e-12)
                && rel_close(b.ln_upper.exp(), prior.2, 1e-12))
        });
        pass &= bad.is_empty();
        parts.push(summarize(&family.to_string(), 10, &bad));
    }
    Outcome::new(pass, parts.join(", "))
}

fn convergence_sanity() -> Outcome {
    let ctrl = SeriesControl::default();
    let g = gamma(2.5).unwrap();
    let p_err: Vec<f64> = [10, 100, 1000]
        .iter()
        .map(|&p| (gamma_p(2.5, p).unwrap() - g).abs())
        .collect();
    let q_err: Vec<f64> = [0.5, 0.9, 0.99]
        .iter()
        .map(|&q| (gamma_q(2.5, q, &ctrl).unwrap().require(&ctrl).unwrap() - g).abs())
        .collect();
    let decreasing = |e: &[f64]| e.windows(2).all(|w| w[1] < w[0]);
    Outcome::new(
        decreasing(&p_err) && decreasing(&q_err),
        format!("p errors {p_err:.3?}, q errors {q_err:.3?}"),
    )
}

fn gengamma(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gengamma"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("failed to launch gengamma")
}

fn cli_contract() -> Outcome {
    let mut problems = Vec::new();

    let selftest = gengamma(&["selftest"], &[]);
    if selftest.status.code() != Some(0) {
        problems.push(format!("selftest exited {:?}", selftest.status.code()));
    }

    let dir = std::env::temp_dir().join(format!("gengamma-acceptance-{}", std::process::id()));
    let _ = std::fs::create_dir_all(&dir);
    for format in ["csv", "json"] {
        let mut outputs = Vec::new();
        for (i, threads) in ["1", "4", "4"].iter().enumerate() {
            let path = dir.join(format!("verify-{format}-{i}"));
            let path_str = path.to_string_lossy().into_owned();
            let out = gengamma(
                &[
                    "verify",
                    "--family",
                    "q",
                    "--a",
                    "1.5",
                    "--b",
                    "0.7",
                    "--alpha",
                    "1.2",
                    "--beta",
                    "0.8",
                    "--q",
                    "0.6",
                    "--samples",
                    "64",
                    "--seed",
                    "11",
                    "--format",
                    format,
                    "--out",
                    &path_str,
                ],
                &[("RAYON_NUM_THREADS", threads)],
            );
            if out.status.code() != Some(0) {
                problems.push(format!("verify ({format}) exited {:?}", out.status.code()));
            }
            outputs.push(std::fs::read(&path).unwrap_or_default());
        }
        if outputs[0].is_empty() || outputs.iter().any(|o| o != &outputs[0]) {
            problems.push(format!("verify ({format}) output differs between runs"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);

    let domain_cases: [(&[&str], &str); 4] = [
        (
            &[
                "verify",
                "--family",
                "k",
                "--a",
                "1",
                "--b",
                "2",
                "--k",
                "2",
                "--grid",
                "0.1:0.9:0.1",
            ],
            "a ≥ b",
        ),
        (&["eval", "gamma_q", "--t", "1", "--q", "1.5"], "q ∈ (0,1)"),
        (
            &[
                "scan",
                "--family",
                "q",
                "--q",
                "0.5",
                "--alpha",
                "0.5",
                "--grid",
                "0.1:2:0.1",
            ],
            "α + β·t > 1",
        ),
        (
            &[
                "verify",
                "--family",
                "p",
                "--p",
                "3",
                "--alpha",
                "0.5",
                "--grid",
                "0.1:0.9:0.1",
            ],
            "α ≥ 1",
        ),
    ];
    for (args, needle) in domain_cases {
        let out = gengamma(args, &[]);
        let stderr = String::from_utf8_lossy(&out.stderr);
        if out.status.code() != Some(2) || !stderr.contains(needle) {
            problems.push(format!(
                "`{}` gave exit {:?} / {}",
                args.join(" "),
                out.status.code(),
                stderr.trim()
            ));
        }
    }

    if problems.is_empty() {
        Outcome::new(
            true,
            "selftest exit 0, verify byte-identical, domain errors exit 2",
        )
    } else {
        Outcome::new(false, problems.join("; "))
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("series correctness", series_correctness),
        ("k-Gamma identity", k_gamma_identity),
        ("functional equations", functional_equations),
        ("lemma positivity", lemma_positivity),
        ("derivative coherence", derivative_coherence),
        ("monotonicity", monotonicity),
        ("sandwich inequalities", sandwich),
        ("reduction regressions", reductions),
        ("convergence sanity", convergence_sanity),
        ("CLI contract", cli_contract),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.2}s]",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
