//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use oat::generators::{self, Family, ThirdOpCase};
use oat::graph::adjacency_square;
use oat::oracle::{brute_chi, brute_is_oat, brute_omega, build_reconfig, reconfig_stats};
use oat::recognition::recognize_traced;
use oat::recolouring::{default_order, to_canonical_traced};
use oat::{find_path, recognize, verify_sequence, BuildTree, Graph, Outcome, Palette};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!("criterion {id} [{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

/// Graphs accepted along the way, kept for the certificate and χ = ω checks.
#[derive(Default)]
struct Accepted {
    pairs: Vec<(Graph, BuildTree)>,
}

fn criteria_1_2(report: &mut Report, accepted: &mut Accepted) {
    let start = Instant::now();
    let mut bad_paths = Vec::new();
    let mut worst_ratio = 0.0f64;
    let mut worst_half = 0usize;
    let mut worst_rename = 0usize;
    let mut half_violations = 0usize;
    let mut rename_violations = 0usize;
    let mut runs = 0usize;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let n = rng.gen_range(1..=12);
        let tree = generators::random_oat(n, seed).unwrap();
        let g = tree.replay().unwrap();
        let palette = Palette::first(tree.chi() + 1);
        let order = default_order(&tree, &palette);
        for _ in 0..5 {
            let alpha = common::random_colouring(&g, &tree, &palette, &mut rng);
            let beta = common::random_colouring(&g, &tree, &palette, &mut rng);
            runs += 1;
            let seq = find_path(&tree, &alpha, &beta, &palette).unwrap();
            let rep = verify_sequence(&g, &seq);
            let ends = seq.final_assignment() == beta.assignment();
            if !rep.valid || !ends || seq.len() > 4 * n * n {
                bad_paths.push((seed, rep.reason.clone(), ends, seq.len()));
            }
            worst_ratio = worst_ratio.max(seq.len() as f64 / (4 * n * n) as f64);
            for c in [&alpha, &beta] {
                let (half, trace) = to_canonical_traced(&tree, c, &palette, &order).unwrap();
                let m = half.max_per_vertex();
                worst_half = worst_half.max(m);
                if m > 2 * n {
                    half_violations += 1;
                }
                let r = trace.rename_max.iter().copied().max().unwrap_or(0);
                worst_rename = worst_rename.max(r);
                if r > 2 {
                    rename_violations += 1;
                }
            }
        }
        accepted.pairs.push((g, tree));
    }
    let elapsed = start.elapsed();
    report.line(
        1,
        "diameter bound",
        bad_paths.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "{runs} pairs, {} bad, max length/4n^2 = {worst_ratio:.3}, {:.2}s (limit 60s){}",
            bad_paths.len(),
            elapsed.as_secs_f64(),
            bad_paths
                .first()
                .map(|b| format!(", first bad: {b:?}"))
                .unwrap_or_default()
        ),
    );
    report.line(
        2,
        "per-vertex budgets",
        half_violations == 0 && rename_violations == 0,
        format!(
            "max per vertex in a canonical half = {worst_half} (<= 2n), max in a renaming = {worst_rename} (<= 2); \
             {half_violations} half and {rename_violations} rename violations"
        ),
    );
}

fn criterion_3(report: &mut Report, accepted: &mut Accepted) {
    let start = Instant::now();
    let mut disagree = Vec::new();
    let mut yes = 0;
    for mask in 0..1u64 << 15 {
        let g = common::graph_from_mask(6, mask);
        let ours = recognize(&g);
        let brute = brute_is_oat(&g).unwrap();
        if ours.is_oat() != brute {
            disagree.push(mask);
        }
        if let Outcome::Oat(t) = ours {
            yes += 1;
            accepted.pairs.push((g, t));
        }
    }
    let elapsed = start.elapsed();
    report.line(
        3,
        "recognition vs oracle",
        disagree.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "32768 graphs on 6 vertices, {yes} OAT, {} disagreements{}, {:.2}s (limit 120s)",
            disagree.len(),
            disagree
                .first()
                .map(|m| format!(" (first mask {m})"))
                .unwrap_or_default(),
            elapsed.as_secs_f64()
        ),
    );
}

fn criterion_4(report: &mut Report, accepted: &Accepted) {
    let bad = accepted.pairs.iter().filter(|(g, t)| !t.validate(g)).count();
    report.line(
        4,
        "certificate soundness",
        bad == 0,
        format!("{} certificates checked, {bad} invalid", accepted.pairs.len()),
    );
}

fn criterion_5(report: &mut Report) {
    let mut wrong = Vec::new();
    let mut checked = 0;
    for (name, want) in [
        ("fig2_imperfect", true),
        ("domino", true),
        ("house", true),
        ("gem", true),
        ("fig4_dh_not_oat", false),
    ] {
        checked += 1;
        let f = generators::fixture(name).unwrap();
        if recognize(&f.graph).is_oat() != want || f.expected_oat != want {
            wrong.push(name.to_string());
        }
    }
    checked += 1;
    if recognize(&generators::classic(Family::Cycle(6)).unwrap()).is_oat() {
        wrong.push("C6".into());
    }
    let mut rs: Vec<Option<Graph>> = vec![None];
    for seed in 0..20 {
        let t = generators::random_oat(1 + seed as usize % 5, seed).unwrap();
        rs.push(Some(t.replay().unwrap()));
    }
    for size in 1..=4 {
        for case in [ThirdOpCase::Pendant, ThirdOpCase::Anti] {
            for r in &rs {
                checked += 1;
                let g = generators::p4_sparse_third_op(size, r.as_ref(), case).unwrap();
                if !recognize(&g).is_oat() {
                    wrong.push(format!("p4-sparse |V1|={size} {case:?}"));
                }
            }
        }
    }
    report.line(
        5,
        "fixtures",
        wrong.is_empty(),
        format!(
            "{checked} graphs, {} wrong{}",
            wrong.len(),
            wrong.first().map(|w| format!(" (first {w})")).unwrap_or_default()
        ),
    );
}

fn criterion_6(report: &mut Report, accepted: &Accepted) {
    let mut checked = 0;
    let mut bad = 0;
    for (g, t) in accepted.pairs.iter().filter(|(g, _)| g.n() <= 10) {
        checked += 1;
        let (chi, omega) = t.chi_omega();
        if chi != omega || chi != brute_chi(g).unwrap() || omega != brute_omega(g).unwrap() {
            bad += 1;
        }
    }
    report.line(
        6,
        "chi equals omega",
        bad == 0,
        format!("{checked} recognized graphs with n <= 10, {bad} mismatches"),
    );
}

fn criterion_7(report: &mut Report) {
    let mut steps = 0usize;
    let mut bad = 0usize;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + seed);
        let n = rng.gen_range(1..=50);
        // alternate certified OAT graphs with dense and sparse random graphs
        let g = match seed % 3 {
            0 => generators::random_oat(n, seed).unwrap().replay().unwrap(),
            1 => common::gnp(n, 0.15, &mut rng),
            _ => common::gnp(n, 0.7, &mut rng),
        };
        recognize_traced(&g, &mut |h, a2| {
            steps += 1;
            if *a2 != adjacency_square(h) {
                bad += 1;
            }
        });
    }
    report.line(
        7,
        "incremental adjacency square",
        bad == 0 && steps > 100,
        format!("100 graphs, {steps} intermediate graphs checked, {bad} mismatches"),
    );
}

fn criterion_8(report: &mut Report) {
    let p2 = generators::classic(Family::Path(2)).unwrap();
    let s = reconfig_stats(&build_reconfig(&p2, &Palette::first(3)).unwrap());
    let p2_ok = s.connected && s.diameter == Some(3) && s.nodes == 6;
    let k3 = generators::classic(Family::Complete(3)).unwrap();
    let s = reconfig_stats(&build_reconfig(&k3, &Palette::first(3)).unwrap());
    let k3_ok = s.frozen.len() == 6;
    let mut diams = Vec::new();
    for n in 2..=6 {
        let p = generators::classic(Family::Path(n)).unwrap();
        diams.push(reconfig_stats(&build_reconfig(&p, &Palette::first(3)).unwrap()).diameter);
    }
    let increasing = diams.iter().all(Option::is_some) && diams.windows(2).all(|w| w[0] < w[1]);
    report.line(
        8,
        "oracle spot values",
        p2_ok && k3_ok && increasing,
        format!(
            "R_3(P2) connected diameter 3: {p2_ok}; R_3(K3) frozen = 6: {k3_ok}; R_3(P_n) diameters n=2..6: {:?}",
            diams.iter().map(|d| d.unwrap_or(usize::MAX)).collect::<Vec<_>>()
        ),
    );
}

fn time_recognize(n: usize, reps: u64) -> f64 {
    (0..reps)
        .map(|seed| {
            let g = generators::random_oat(n, 9000 + seed).unwrap().replay().unwrap();
            let start = Instant::now();
            assert!(recognize(&g).is_oat());
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_9(report: &mut Report) {
    let t500 = time_recognize(500, 1);
    let ts: Vec<f64> = [100, 200, 400].iter().map(|&n| time_recognize(n, 5)).collect();
    // doubling n may cost at most 8 times as much, with slack factor 3
    let ratios = [ts[1] / ts[0], ts[2] / ts[1]];
    let ok = t500 < 30.0 && ratios.iter().all(|&r| r <= 24.0);
    report.line(
        9,
        "performance",
        ok,
        format!(
            "n=500: {t500:.3}s (limit 30s); n=100/200/400: {:.4}s/{:.4}s/{:.4}s, doubling ratios {:.2}, {:.2} (limit 24)",
            ts[0], ts[1], ts[2], ratios[0], ratios[1]
        ),
    );
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let mut accepted = Accepted::default();
    criteria_1_2(&mut report, &mut accepted);
    criterion_3(&mut report, &mut accepted);
    criterion_4(&mut report, &accepted);
    criterion_5(&mut report);
    criterion_6(&mut report, &accepted);
    criterion_7(&mut report);
    criterion_8(&mut report);
    criterion_9(&mut report);
    println!("acceptance: {} of 9 criteria failed", report.failures);
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
