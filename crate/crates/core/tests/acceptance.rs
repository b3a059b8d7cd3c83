//! Acceptance gate: one line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chevnet::chevalg::StructureConstants;
use chevnet::grp::{Chevalley, Mat2};
use chevnet::ringkit::{Elem, FiniteRing};
use chevnet::rootsys::parse_root_system;
use chevnet::verify::{run_file, run_scenario, Report, RunOptions, Status};

use common::{all_scenario_paths, group, with_checks, zmod};

type Verdict = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matmul(a: &[i64], b: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x != 0 {
                for j in 0..d {
                    out[i * d + j] += x * b[k * d + j];
                }
            }
        }
    }
    out
}

fn algebra_kernel() -> Verdict {
    let mut pairs = 0;
    for name in ["A2", "A3", "B2"] {
        let rs = parse_root_system(name).unwrap();
        let sc = std::sync::Arc::new(StructureConstants::new(&rs));
        if let Some((x, y, z)) = sc.jacobi_violation() {
            return Err(format!("{name}: Jacobi fails on basis triple ({x}, {y}, {z})"));
        }
        for a in rs.roots() {
            for b in rs.roots() {
                if rs.sum(a, b).is_none() {
                    continue;
                }
                // p = largest k with b − k a a root
                let p = (1..)
                    .take_while(|&k| {
                        let c: Vec<i32> = rs.coords(b).iter().zip(rs.coords(a)).map(|(&y, &x)| y - k * x).collect();
                        rs.root_of(&c).is_some()
                    })
                    .count() as i32;
                ensure(sc.get(a, b).abs() == p + 1, || {
                    format!("{name}: |N({}, {})| = {} but p + 1 = {}", rs.root_name(a), rs.root_name(b), sc.get(a, b), p + 1)
                })?;
                pairs += 1;
            }
            let d = sc.dim();
            let ad = sc.ad_basis(sc.e(a));
            let template = sc.template(a);
            let mut power = ad.clone();
            for k in 1..=template.degree() {
                let fact: i64 = (1..=k as i64).product();
                let scaled: Vec<i64> = template.term(k).iter().map(|v| v * fact).collect();
                ensure(scaled == power, || format!("{name}: divided power {k} of {} is wrong", rs.root_name(a)))?;
                power = matmul(&ad, &power, d);
            }
            ensure(power.iter().all(|&v| v == 0), || format!("{name}: ad e_α not nilpotent at the template degree"))?;
        }
    }
    Ok(format!("{pairs} summable pairs"))
}

fn commutator_oracle() -> Verdict {
    let mut identities = 0usize;
    for system in ["A2", "B2"] {
        for n in [4, 3] {
            let g = group(system, zmod(n));
            let r = g.ring().clone();
            let rs = g.rs().clone();
            let sc = g.sc().clone();
            for a in rs.roots() {
                for xi in r.elements() {
                    for zeta in r.elements() {
                        ensure(g.mul(&g.x(a, xi), &g.x(a, zeta)) == g.x(a, r.add(xi, zeta)), || {
                            format!("{system}/Z{n}: x_{}({}) not additive", rs.root_name(a), r.name(xi))
                        })?;
                        identities += 1;
                    }
                }
                for b in rs.roots() {
                    if b == a || b == rs.neg(a) {
                        continue;
                    }
                    let terms = sc.commutator_terms(a, b);
                    for xi in r.elements() {
                        for zeta in r.elements() {
                            let lhs = g.commutator(&g.x(a, xi), &g.x(b, zeta));
                            let factors: Vec<_> = terms
                                .iter()
                                .map(|t| {
                                    let v = r.mul(
                                        r.int(t.coeff),
                                        r.mul(r.pow(zeta, t.i as i64).unwrap(), r.pow(xi, t.j as i64).unwrap()),
                                    );
                                    g.x(t.root, v)
                                })
                                .collect();
                            ensure(lhs == g.product(&factors), || {
                                format!("{system}/Z{n}: commutator formula fails for {}, {}", rs.root_name(a), rs.root_name(b))
                            })?;
                            identities += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{identities} matrix identities"))
}

fn mat2_mul(r: &FiniteRing, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Elem::ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = r.add(r.mul(a[i][0], b[0][j]), r.mul(a[i][1], b[1][j]));
        }
    }
    out
}

/// Distinct products of at most `len` elementary generators `e12(±1)`, `e21(±1)`.
fn sl2_words(r: &FiniteRing, len: usize) -> Vec<Mat2> {
    let (o, z, m) = (r.one(), r.zero(), r.neg(r.one()));
    let gens = [[[o, o], [z, o]], [[o, m], [z, o]], [[o, z], [o, o]], [[o, z], [m, o]]];
    let mut all = vec![[[o, z], [z, o]]];
    let mut layer = all.clone();
    for _ in 0..len {
        layer = layer.iter().flat_map(|w| gens.iter().map(move |s| mat2_mul(r, w, s))).collect();
        all.extend(layer.iter().copied());
    }
    all.sort();
    all.dedup();
    all
}

fn transvection_conjugation() -> Verdict {
    let mut count = 0usize;
    for n in [2, 4] {
        for system in ["A1", "A2"] {
            let g: std::sync::Arc<Chevalley> = group(system, zmod(n));
            let r = g.ring().clone();
            let words = sl2_words(&r, 4);
            for alpha in g.rs().roots() {
                for m in &words {
                    let phi = g.phi_alpha(alpha, *m).map_err(|e| e.to_string())?;
                    let phi_inv = g.inverse(&phi);
                    for zeta in r.elements() {
                        for eta in r.elements() {
                            let zeta1 = r.add(r.mul(m[0][0], zeta), r.mul(m[0][1], eta));
                            let eta1 = r.add(r.mul(m[1][0], zeta), r.mul(m[1][1], eta));
                            for xi in r.elements() {
                                let lhs = g.conjugate(&phi, &phi_inv, &g.transvection(alpha, zeta, eta, xi));
                                ensure(lhs == g.transvection(alpha, zeta1, eta1, xi), || {
                                    format!("{system}/Z{n}: conjugation identity fails at {:?}", m)
                                })?;
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{count} conjugations"))
}

fn scenario_check(names: &[&str], check: &str) -> Result<Vec<Report>, String> {
    names
        .iter()
        .map(|name| {
            let report = run_scenario(&with_checks(name, &[check]), RunOptions::default()).map_err(|e| e.to_string())?;
            let entry = report.entry(check).ok_or_else(|| format!("{name}: no {check} entry"))?;
            if entry.status != Status::Pass {
                return Err(format!("{name}: {check} is {:?}: {:?} {:?}", entry.status, entry.reason, entry.witness));
            }
            Ok(report)
        })
        .collect()
}

fn jacobson() -> Verdict {
    let reports = scenario_check(&["s1", "s5"], "jacobson")?;
    let sizes: Vec<String> = reports.iter().map(|r| format!("{}: {}", r.scenario, r.sizes["S(σ)∩G(R,J)"])).collect();
    Ok(format!("|S(σ)∩G(R,J)| {}", sizes.join(", ")))
}

fn local() -> Verdict {
    let reports = scenario_check(&["s1", "s3", "s5"], "local")?;
    let w3 = reports[1].sizes.get("W̄(Φ,σ)").copied().unwrap_or(0);
    ensure(w3 > 1, || format!("S3: |W̄(Φ,σ)| = {w3}, expected a nontrivial Weyl part"))?;
    Ok(format!("S(σ) = T·E(σ)·W̄(Φ,σ); |W̄(Φ,σ)| on S3 = {w3}"))
}

fn normal() -> Verdict {
    scenario_check(&["s1", "s3", "s5", "full_f2", "full_f3"], "normal")?;
    Ok("Ê(σ) ⊴ S(σ) on 5 scenarios".into())
}

fn finite_index() -> Verdict {
    let reports = scenario_check(&["s2", "s3"], "finite_index")?;
    Ok(format!(
        "S2 index {}, S3 index {}",
        reports[0].sizes["S(σ)/G(σ)"], reports[1].sizes["S(σ)/G(σ)"]
    ))
}

fn semilocal() -> Verdict {
    scenario_check(&["s1", "s2", "s5"], "semilocal_g")?;
    Ok("G(σ) = T·E(σ) on S1, S2, S5".into())
}

fn relative() -> Verdict {
    let mut notes = Vec::new();
    for name in ["s4", "s4_prime"] {
        let reports = scenario_check(&[name], "standard_commutator")?;
        let entry = reports[0].entry("standard_commutator").unwrap();
        if let Some(n) = entry.coverage.strip_prefix("sampled(").and_then(|s| s.strip_suffix(')')) {
            let n: usize = n.parse().map_err(|_| "bad coverage".to_string())?;
            ensure(n >= 10_000, || format!("{name}: only {n} sampled instances"))?;
        }
        scenario_check(&[name], "nilpotent_by_abelian")?;
        notes.push(format!("{name}: {} ({})", entry.coverage, entry.reason.clone().unwrap_or_default()));
    }
    Ok(notes.join("; "))
}

fn gauss() -> Verdict {
    scenario_check(&["s1", "s5"], "gauss_rewrite")?;
    Ok("100 seeded words each on S1, S5".into())
}

fn determinism() -> Verdict {
    let mut runs = Vec::new();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let mut texts = Vec::new();
        for path in all_scenario_paths() {
            let reports = pool.install(|| run_file(&path, RunOptions::default())).map_err(|e| e.to_string())?;
            for r in reports {
                texts.push(serde_json::to_string(&r.without_timing()).unwrap());
            }
        }
        runs.push(texts);
    }
    ensure(runs[0] == runs[1], || "reports differ between 1 and 4 workers".into())?;
    Ok(format!("{} reports identical across worker counts", runs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "algebra kernel", Duration::from_secs(5), algebra_kernel),
        (2, "one-parameter and commutator oracle", Duration::from_secs(30), commutator_oracle),
        (3, "transvection conjugation", Duration::from_secs(30), transvection_conjugation),
        (4, "radical intersection", Duration::from_secs(240), jacobson),
        (5, "local structure", Duration::from_secs(360), local),
        (6, "normality", Duration::from_secs(600), normal),
        (7, "finite-index embedding", Duration::from_secs(120), finite_index),
        (8, "semilocal G(σ)", Duration::from_secs(360), semilocal),
        (9, "standard commutator and abelian quotient", Duration::from_secs(600), relative),
        (10, "Gauss rewriting", Duration::from_secs(60), gauss),
        (11, "determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(note) if elapsed <= limit => Ok(note),
            Ok(_) => Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs())),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(note) => println!("criterion {id:>2} PASS  {title} ({:.2}s): {note}", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title} ({:.2}s): {e}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
