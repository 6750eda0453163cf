//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line for
//! each and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use uniperm::cli;
use uniperm::correspondence::{check_containment_transfer, phi, phi_inverse};
use uniperm::graph::{
    find_induced_embedding, graph_from_json, is_induced_embedding, isomorphism_where,
    permutation_graph, Graph,
};
use uniperm::perm::{
    contains_labelled_pattern, contains_pattern, enumerate_321_avoiders,
    enumerate_labelled_321_avoiders, is_321_avoiding, Permutation,
};
use uniperm::split::{
    dilworth_number, find_four_partition, is_split, symmetric_extension, SymmetricWitness,
};
use uniperm::universal_graph::{
    avoider_graphs, optimality_report, same_classes, split_permutation_graphs,
    universal_split_graph, verify_universal_graph, DEFAULT_SAMPLE, DEFAULT_SEED,
};
use uniperm::universal_perm::{rho, shortest_universal_prefix, verify_universal_permutation};

type Check = std::result::Result<String, String>;

fn criterion(id: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(Ok(detail)) => match limit {
            Some(limit) if elapsed > limit => {
                (false, format!("{detail}; over the {limit:?} limit"))
            }
            _ => (true, detail),
        },
        Ok(Err(why)) => (false, why),
        Err(_) => (false, "panicked".to_string()),
    };
    println!(
        "{id} {} [{elapsed:.2?}] {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).unwrap())
}

fn catalan(n: u128) -> u128 {
    let mut binom: u128 = 1;
    for k in 0..n {
        binom = binom * (2 * n - k) / (k + 1);
    }
    binom / (n + 1)
}

fn cli_output(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = cli::run(
        std::iter::once("uniperm").chain(args.iter().copied()),
        &mut out,
    );
    (code, String::from_utf8(out).unwrap())
}

fn ac1() -> Check {
    let table = [
        "1",
        "3142",
        "517293468",
        "6182(10)3(12)4(13)5(14)7(15)9(16)(11)",
        "7192(11)3(13)4(15)5(17)6(19)8(21)(10)(23)(12)(25)(14)(16)(18)(20)(22)(24)",
    ];
    for (n, row) in (1..).zip(table) {
        let (code, out) =
            cli_output(&["rho", "--n", &n.to_string(), "--format", "text", "--paren"]);
        ensure(code == 0 && out.trim_end() == row, || {
            format!("n={n}: got {out:?}")
        })?;
    }
    for n in 1..=12 {
        let p = rho(n).map_err(|e| e.to_string())?.perm;
        ensure(p.len() == n * n && is_321_avoiding(&p), || {
            format!("n={n}: bad shape")
        })?;
    }
    Ok("table rows n=1..5 match; length n² and 321-avoiding for n ≤ 12".into())
}

fn ac2() -> Check {
    for n in 1..=7 {
        let r = verify_universal_permutation(n).map_err(|e| e.to_string())?;
        ensure(r.universe_size as u128 == catalan(n as u128), || {
            format!("n={n}: universe {}", r.universe_size)
        })?;
        ensure(r.passed(), || {
            format!(
                "n={n}: misses {:?} labelled misses {:?}",
                r.misses, r.labelled_misses
            )
        })?;
        for w in &r.witnesses {
            let sigma: Permutation = w.pattern.parse().unwrap();
            let host: Permutation = r.host.parse().unwrap();
            let vals: Vec<usize> = w.positions.iter().map(|&p| host.at(p - 1)).collect();
            ensure(Permutation::standardize(&vals) == sigma, || {
                format!("n={n}: bad witness for {sigma}")
            })?;
        }
    }
    Ok("rho(n) contains S_n(321) and u(n) all labelled avoiders, n=1..7".into())
}

fn ac3() -> Check {
    for n in 0..=12 {
        let count = enumerate_321_avoiders(n).len() as u128;
        ensure(count == catalan(n as u128), || format!("n={n}: {count}"))?;
    }
    Ok("|S_n(321)| = Catalan(n) for n ≤ 12".into())
}

fn ac4() -> Check {
    let lengths = [1, 3, 5, 11, 15];
    let prefixes = [
        "1",
        "314",
        "51729",
        "6182(10)3(12)4(13)5(14)7",
        "7192(11)3(13)4(15)5(17)6(19)8(21)(10)",
    ];
    let mut wrong = Vec::new();
    for n in 1..=5 {
        let p = shortest_universal_prefix(n).map_err(|e| e.to_string())?;
        if p.len() != lengths[n - 1] {
            wrong.push(format!(
                "n={n}: length {} expected {}",
                p.len(),
                lengths[n - 1]
            ));
        }
        if p.raw_compact() != prefixes[n - 1] {
            wrong.push(format!(
                "n={n}: prefix {} expected {}",
                p.raw_compact(),
                prefixes[n - 1]
            ));
        }
    }
    ensure(wrong.is_empty(), || wrong.join("; "))?;
    Ok("lengths and prefixes match for n=1..5".into())
}

fn ac5() -> Check {
    for n in 1..=5 {
        let all = enumerate_labelled_321_avoiders(n);
        let images: Vec<_> = all
            .iter()
            .map(|l| phi(l).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        for (l, img) in all.iter().zip(&images) {
            let back = phi_inverse(&img.graph).map_err(|e| e.to_string())?;
            ensure(&back == l, || format!("{l} came back as {back}"))?;
        }
        if n <= 4 {
            for (a, b) in (0..images.len()).tuple_combinations() {
                let (ga, gb) = (&images[a].graph, &images[b].graph);
                let iso = isomorphism_where(&ga.graph, &gb.graph, |x, y| {
                    ga.class_of(x) == gb.class_of(y)
                });
                ensure(iso.is_none(), || {
                    format!("{} and {} have isomorphic images", all[a], all[b])
                })?;
            }
        }
    }
    Ok("round trip for length ≤ 5, injective for length ≤ 4".into())
}

fn ac6() -> Check {
    let hosts: Vec<_> = (1..=5).flat_map(enumerate_labelled_321_avoiders).collect();
    let patterns: Vec<_> = (1..=3).flat_map(enumerate_labelled_321_avoiders).collect();
    let mut bad = Vec::new();
    for h in &hosts {
        for p in &patterns {
            if !check_containment_transfer(h, p) {
                bad.push((h, p));
            }
        }
    }
    let total = hosts.len() * patterns.len();
    ensure(bad.is_empty(), || {
        let forward = bad
            .iter()
            .filter(|(h, p)| contains_labelled_pattern(h, p).is_some())
            .count();
        format!(
            "{} of {total} pairs disagree ({forward} with the pattern present); first: host {} pattern {}",
            bad.len(),
            bad[0].0,
            bad[0].1
        )
    })?;
    Ok(format!("all {total} pairs agree"))
}

fn ac7() -> Check {
    let mut count = 0;
    for k in 1..=5 {
        for p in all_permutations(k) {
            let g = permutation_graph(&p);
            if is_split(&g).is_none() || dilworth_number(&g) > 2 {
                continue;
            }
            count += 1;
            let lg = find_four_partition(&g).ok_or_else(|| format!("{p}: no four-partition"))?;
            let (witness, map) = symmetric_extension(&lg).map_err(|e| format!("{p}: {e}"))?;
            let ext = &witness.labelled;
            ensure(ext.graph.order() == 2 * k, || {
                format!("{p}: {} vertices", ext.graph.order())
            })?;
            ensure(
                SymmetricWitness::find(ext).is_ok() && ext.check_conditions().is_ok(),
                || format!("{p}: extension not symmetric"),
            )?;
            ensure(
                is_split(&ext.graph).is_some() && dilworth_number(&ext.graph) <= 2,
                || format!("{p}: extension is not a split permutation graph"),
            )?;
            ensure(map.validate(&g, &ext.graph), || {
                format!("{p}: returned map not induced")
            })?;
            ensure(find_induced_embedding(&ext.graph, &g).is_some(), || {
                format!("{p}: input not induced")
            })?;
        }
    }
    Ok(format!(
        "{count} split permutation graphs on ≤ 5 vertices extended"
    ))
}

fn ac8() -> Check {
    for n in 1..=8 {
        let order = universal_split_graph(n)
            .map_err(|e| e.to_string())?
            .graph()
            .graph
            .order();
        ensure(order == 4 * n * n * n, || {
            format!("n={n}: {order} vertices")
        })?;
    }
    let mut summary = Vec::new();
    for n in 1..=5 {
        let sample = (n == 5).then_some(DEFAULT_SAMPLE);
        let r = verify_universal_graph(n, sample, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(r.all_embedded, || format!("n={n}: {:?}", r.failures))?;
        ensure(
            r.classes_checked == r.classes_total.min(DEFAULT_SAMPLE),
            || format!("n={n}: classes skipped"),
        )?;
        let host = universal_split_graph(n).map_err(|e| e.to_string())?;
        for w in &r.witnesses {
            let (g, _) = graph_from_json(&w.graph.to_string()).map_err(|e| e.to_string())?;
            let idx = w
                .map
                .resolve(&g, &host.graph().graph)
                .map_err(|e| e.to_string())?;
            ensure(is_induced_embedding(&g, &host.graph().graph, &idx), || {
                format!("n={n}: witness invalid")
            })?;
        }
        summary.push(format!("n={n}: {}/{}", r.classes_checked, r.classes_total));
    }
    Ok(format!(
        "4n³ vertices for n ≤ 8; embedded classes {}",
        summary.join(", ")
    ))
}

fn ac9() -> Check {
    for n in 1..=5 {
        let (a, b) = (split_permutation_graphs(n), avoider_graphs(n));
        ensure(same_classes(&a, &b), || {
            format!("n={n}: {} vs {} classes", a.len(), b.len())
        })?;
    }
    Ok("identical class sets for n ≤ 5".into())
}

fn ac10() -> Check {
    let texts: Vec<Permutation> = (1..=5).flat_map(all_permutations).collect();
    let patterns: Vec<Permutation> = (1..=3).flat_map(all_permutations).collect();
    let mut pairs = 0;
    for pi in &texts {
        let host: Graph = permutation_graph(pi);
        for sigma in &patterns {
            let Some(w) = contains_pattern(pi, sigma) else {
                continue;
            };
            pairs += 1;
            let pattern = permutation_graph(sigma);
            let map: Vec<usize> = (0..sigma.len())
                .map(|k| {
                    let pos = w.positions[sigma.values().iter().position(|&v| v == k + 1).unwrap()];
                    pi.at(pos - 1) - 1
                })
                .collect();
            ensure(is_induced_embedding(&pattern, &host, &map), || {
                format!("{pi} ⊇ {sigma}: transfer fails")
            })?;
            ensure(find_induced_embedding(&host, &pattern).is_some(), || {
                format!("{pi} ⊇ {sigma}: no embedding")
            })?;
        }
    }
    Ok(format!(
        "{pairs} containing pairs carry over to induced subgraphs"
    ))
}

fn optimality() -> Check {
    let reports: Vec<_> = (2..=8)
        .map(|n| optimality_report(n).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for r in &reports {
        ensure(r.ratio.is_finite() && r.ratio <= 5.0 + 1e-9, || {
            format!("n={}: ratio {}", r.n, r.ratio)
        })?;
        if r.class_count.is_some() {
            ensure(r.ratio >= 1.0, || {
                format!("n={}: ratio {} < 1", r.n, r.ratio)
            })?;
        }
    }
    ensure(
        reports.windows(2).all(|w| w[1].ratio <= w[0].ratio + 1e-9),
        || "ratio increases".into(),
    )?;
    let ratios = reports.iter().map(|r| format!("{:.3}", r.ratio)).join(" ");
    Ok(format!("ratios n=2..8: {ratios}"))
}

fn main() -> ExitCode {
    let minutes = |m: u64| Some(Duration::from_secs(60 * m));
    let results = [
        criterion("AC1", Some(Duration::from_secs(1)), ac1),
        criterion("AC2", Some(Duration::from_secs(60)), ac2),
        criterion("AC3", Some(Duration::from_secs(30)), ac3),
        criterion("AC4", minutes(2), ac4),
        criterion("AC5", minutes(2), ac5),
        criterion("AC6", minutes(5), ac6),
        criterion("AC7", None, ac7),
        criterion("AC8", minutes(10), ac8),
        criterion("AC9", None, ac9),
        criterion("AC10", None, ac10),
        criterion("OPTIMALITY", None, optimality),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
