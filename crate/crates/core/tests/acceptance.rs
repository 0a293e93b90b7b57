//! Acceptance run: the full verification grid once, then one pass/fail line per criterion.

use std::time::{Duration, Instant};

use sasaki_core::catalog::build_ei;
use sasaki_core::dim7::scalar_curvature;
use sasaki_core::homogeneous::{h_killing_solutions, HomogeneousModel};
use sasaki_core::sasaki::SasakiFrame;
use sasaki_core::scalar::int;
use sasaki_core::spin::{rank, verify_clifford_relations};
use sasaki_core::verifier::{default_grid, run_suite, Report, ReportEntry, Status, ALL_DIMS};

struct Outcome {
    ok: bool,
    detail: String,
    time: Duration,
}

/// Entries for the given check ids; fails if any failed or if fewer than `min_points`
/// (grid point, dim) pairs were actually run.
fn gate(entries: &[ReportEntry], ids: &[&str], min_points: usize) -> (bool, String, Duration) {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut time = Duration::ZERO;
    for id in ids {
        let hits: Vec<&ReportEntry> = entries.iter().filter(|e| e.check_id == *id).collect();
        let run: Vec<&&ReportEntry> = hits.iter().filter(|e| e.status != Status::Skipped).collect();
        let failed: Vec<&&&ReportEntry> = run.iter().filter(|e| e.status == Status::Fail).collect();
        time += run.iter().map(|e| e.wall_time).sum::<Duration>();
        if run.len() < min_points || !failed.is_empty() {
            ok = false;
        }
        let mut note = format!("{id}: {}/{} pass", run.len() - failed.len(), run.len());
        if let Some(f) = failed.first() {
            note.push_str(&format!(" [first failure α={} δ={} dim={}: {}]", f.alpha, f.delta, f.dim, f.witness.join("; ")));
        }
        notes.push(note);
    }
    (ok, notes.join(", "), time)
}

fn within(limit_s: u64, t: Duration) -> bool {
    t <= Duration::from_secs(limit_s)
}

fn criterion(entries: &[ReportEntry], ids: &[&str], min_points: usize, limit_s: u64, extra: impl FnOnce() -> (bool, String)) -> Outcome {
    let (ok, detail, t0) = gate(entries, ids, min_points);
    let start = Instant::now();
    let (extra_ok, extra_detail) = extra();
    let time = t0 + start.elapsed();
    let mut detail = [detail, extra_detail].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("; ");
    let timely = within(limit_s, time);
    if !timely {
        detail = format!("{detail}; over the {limit_s}s target");
    }
    Outcome { ok: ok && extra_ok && timely, detail, time }
}

fn none() -> (bool, String) {
    (true, String::new())
}

fn at(entries: &[ReportEntry], alpha: &str, deltas: &[&str]) -> Vec<ReportEntry> {
    entries.iter().filter(|e| e.alpha == alpha && deltas.contains(&e.delta.as_str())).cloned().collect()
}

fn main() {
    let grid = default_grid();
    let start = Instant::now();
    let first = run_suite("*", &grid, &ALL_DIMS).expect("suite runs");
    let suite_time = start.elapsed();
    let json_a = Report::new(first.clone()).to_json();
    let e = &first;
    let nonzero_delta = grid.iter().filter(|(_, d)| d != &int(0)).count();
    let mut results: Vec<(&str, Outcome)> = Vec::new();

    results.push((
        "Clifford relations in dims 7, 11, 15",
        criterion(e, &[], 0, 5, || {
            let bad: Vec<usize> = (2..=4).filter(|&n| !verify_clifford_relations(n).ok()).collect();
            let grid_ok = e.iter().filter(|x| x.check_id == "eq.cliffordmultONB.clifford_relations").all(|x| x.status == Status::Pass);
            (bad.is_empty() && grid_ok, format!("direct run n=2..4 failures: {bad:?}; grid entries all pass: {grid_ok}"))
        }),
    ));

    results.push((
        "E_i fibers have rank 2 and are spanned by the catalog spinors",
        criterion(e, &["thm2.13.catalog_spans"], grid.len() * 3, 30, || {
            let mut dims = Vec::new();
            for n in 2..=4 {
                let f = SasakiFrame::build(n, int(1), int(1)).expect("frame");
                dims.push((1..=3).map(|i| build_ei(&f, i).dim()).collect::<Vec<_>>());
            }
            (dims.iter().flatten().all(|&d| d == 2), format!("fiber ranks {dims:?}"))
        }),
    ));

    results.push((
        "pointwise E_i lemma suite on the full grid",
        criterion(e, &["lemma4.4.degree_three_products", "lemma4.5.friedrich_kath", "lemma4.12.projection"], nonzero_delta * 3, 180, none),
    ));

    results.push((
        "S⁷ model calibration at ≥ 25 points with αδ > 0",
        criterion(e, &["def5.1.calibration.s7"], 25, 10, none),
    ));

    results.push((
        "connection cross-checks, curvature difference and twisted traces",
        criterion(
            e,
            &[
                "prop2.6.nomizu_lc.s7",
                "prop2.7.nomizu_canonical.s7",
                "eq.curvdifference.s7",
                "prop4.9.twisted_curvature_trace.s7",
                "prop4.10.twisted_torsion_traces.s7",
            ],
            nonzero_delta,
            120,
            none,
        ),
    ));

    results.push((
        "H-Killing equation on the E fiber of the model",
        criterion(e, &["thm4.1.h_killing.s7"], nonzero_delta, 30, || {
            let m = HomogeneousModel::build_s7(&int(1), &int(4)).expect("model");
            let r = rank(&h_killing_solutions(&m));
            (r >= 2, format!("invariant H-Killing solutions at (1,4): {r}"))
        }),
    ));

    results.push((
        "deformed Killing spinors and deformation lemmas",
        criterion(e, &["thm3.6.deformed_killing.s7", "lemma3.5.difference_tensor", "eq.small_j_def.sigma_isometry"], 3, 60, || {
            let needed = [("1", "4"), ("4", "1"), ("1", "1")];
            let hit = needed.iter().all(|(a, d)| {
                e.iter().any(|x| x.check_id == "thm3.6.deformed_killing.s7" && x.alpha == *a && x.delta == *d && x.status == Status::Pass)
            });
            (hit, format!("(1,4), (4,1), (1,1) pass: {hit}"))
        }),
    ));

    results.push(("flatness of the modified connection on E", criterion(e, &["prop4.13.flatness.s7"], nonzero_delta, 60, none)));

    let pairs = at(e, "1", &["1", "2"]);
    results.push((
        "duality on the (1,±1) and (1,±2) pairs",
        criterion(&pairs, &["thm5.11.dual_spinors.s7", "prop5.8.dual_lc.s7", "prop5.12.dual_canonical.s7"], 2, 60, none),
    ));

    results.push((
        "dimension-7 suite",
        criterion(
            e,
            &[
                "eq.G2form.canonical_spinor",
                "lemma6.3.phi_on_canonical",
                "lemma6.3.phi_on_own_auxiliary",
                "lemma6.3.phi_on_other_auxiliary",
                "lemma6.3.canonical_relation",
                "thm6.4.equation_equivalence",
                "thm6.1.generalized_killing.s7",
                "remark6.dirac_friedrich.s7",
            ],
            nonzero_delta,
            60,
            || {
                let r0 = scalar_curvature(&int(1), &int(1));
                (r0 == int(42), format!("R₀(1,1) = {r0}"))
            },
        ),
    ));

    results.push(("parallel spinor count at δ = 2α", criterion(e, &["frag.parallel_count.s7"], 1, 30, none)));

    let start = Instant::now();
    let second = run_suite("*", &grid, &ALL_DIMS).expect("suite runs");
    let json_b = Report::new(second).to_json();
    let det_time = start.elapsed();
    results.push((
        "byte-identical JSON across two full runs",
        Outcome { ok: json_a == json_b, detail: format!("{} bytes", json_a.len()), time: det_time },
    ));

    println!("full suite: {} entries in {:.1}s", first.len(), suite_time.as_secs_f64());
    let mut all = true;
    for (k, (name, out)) in results.iter().enumerate() {
        all &= out.ok;
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} {:>2}. {name} ({:.1}s): {}", k + 1, out.time.as_secs_f64(), out.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
