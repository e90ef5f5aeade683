//! Acceptance run over the generated corpus. Prints one line per criterion
//! and exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use recolour::connect::{connect_colourings_with, ConnectBudget};
use recolour::degenerate::{reduce_one_colour_degenerate_with_report, DegenerateReport};
use recolour::generate::*;
use recolour::graph::{degeneracy_ordering, induced_subgraph, is_independent, Colour, Colouring, Graph};
use recolour::io::{emit_partition, emit_sequence};
use recolour::mad::{reduce_one_colour_mad_with_report, MadLevel, MadReport};
use recolour::moves::{verify_sequence, Sequence};
use recolour::oracle::shortest_sequence;
use recolour::partition::{corollary_partition, mihok_wood_partition, PartitionMethod, PartitionSearchConfig};
use recolour::pipeline::{seven_colour_path_with, PipelineConfig, PipelineDetails, PipelineReport};
use recolour::planar::PlanarReport;

const PAIRS: u64 = 20;
const ORACLE_MAX_N: usize = 6;
const BUDGET_FACTOR: f64 = 50.0;
const SPECIAL_LOW_RATIO: f64 = 1.0 / 7.0;
const SPECIAL_CHOSEN_RATIO: f64 = 1.0 / 49.0;
const RUNTIME_TARGET_SECS: f64 = 300.0;

struct Instance {
    name: String,
    graph: Graph,
    pairs: Vec<(Colouring, Colouring)>,
}

fn corpus() -> Vec<Instance> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 10, 25, 50] {
        graphs.push((format!("path{n}"), path(n)));
    }
    for n in [3, 4, 5, 6, 10, 25, 50] {
        graphs.push((format!("cycle{n}"), cycle(n).unwrap()));
    }
    for (r, c) in [(2, 2), (2, 3), (3, 3), (4, 4), (5, 5), (7, 7), (10, 10)] {
        graphs.push((format!("grid{r}x{c}"), grid(r, c)));
    }
    for rim in [3, 4, 5, 8, 12, 20] {
        graphs.push((format!("wheel{rim}"), wheel(rim).unwrap()));
    }
    for steps in [0, 1, 2, 3, 10, 22, 47, 97, 197] {
        graphs.push((
            format!("apollonian{}", steps + 3),
            apollonian(steps, 1000 + steps as u64),
        ));
    }
    graphs.push(("octahedron".into(), octahedron()));
    graphs.push(("icosahedron".into(), icosahedron()));

    graphs
        .into_iter()
        .enumerate()
        .map(|(gi, (name, graph))| {
            let pairs = (0..PAIRS)
                .map(|p| {
                    let seed = (gi as u64) << 16 | p << 1;
                    (
                        random_proper_colouring(&graph, 7, seed).unwrap(),
                        random_proper_colouring(&graph, 7, seed | 1).unwrap(),
                    )
                })
                .collect();
            Instance { name, graph, pairs }
        })
        .collect()
}

struct Run {
    instance: usize,
    pair: usize,
    seq: Sequence,
    report: PipelineReport,
    details: PipelineDetails,
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Outcome {
            pass: false,
            detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")),
        }
    }
}

fn run_pipelines(corpus: &[Instance], cfg: &PipelineConfig) -> (Vec<Run>, Vec<String>) {
    let mut runs = Vec::new();
    let mut errors = Vec::new();
    for (i, inst) in corpus.iter().enumerate() {
        for (p, (a, b)) in inst.pairs.iter().enumerate() {
            match seven_colour_path_with(&inst.graph, a, b, cfg) {
                Ok((seq, report, details)) => runs.push(Run {
                    instance: i,
                    pair: p,
                    seq,
                    report,
                    details,
                }),
                Err(e) => errors.push(format!("{} pair {p}: {e}", inst.name)),
            }
        }
    }
    (runs, errors)
}

/// Colouring with palette `width + 2` for the degenerate reduction.
fn degenerate_input(g: &Graph, seed: u64) -> (usize, Colouring) {
    let k = degeneracy_ordering(g).width.max(1);
    (k, random_proper_colouring(g, k as Colour + 2, seed).unwrap())
}

fn verify_into(g: &Graph, s: &Sequence, end: Option<&Colouring>, what: &str, failures: &mut Vec<String>) -> usize {
    let r = verify_sequence(g, s, end);
    if !r.is_ok() {
        failures.push(format!("{what}: {:?}", r.failure));
    }
    1
}

fn criterion_1(corpus: &[Instance], runs: &[Run], pipeline_errors: &[String]) -> Outcome {
    let mut failures = pipeline_errors.to_vec();
    let mut checked = 0usize;
    for run in runs {
        let inst = &corpus[run.instance];
        let g = &inst.graph;
        let (a, b) = &inst.pairs[run.pair];
        if run.seq.start() != a {
            failures.push(format!("{} pipeline starts away from alpha", inst.name));
        }
        checked += verify_into(g, &run.seq, Some(b), &format!("{} pipeline", inst.name), &mut failures);
        if run.report.total != run.seq.len() || run.report.total_raw != run.report.total + run.report.coalesced {
            failures.push(format!("{} report totals disagree with the sequence", inst.name));
        }
        let rest = run.details.partition.part(2);
        let sub = induced_subgraph(g, rest).unwrap();
        let mut at = run.seq.start().clone();
        for (i, phase) in run.details.phases.iter().enumerate() {
            if phase.start() != &at {
                failures.push(format!("{} phase {i} starts elsewhere", inst.name));
            }
            let end = phase.end();
            if i == 3 {
                // connect's own output lives on G[A] with palette 5
                let own = Sequence::from_moves(
                    phase.start().restrict(rest).with_palette(5).unwrap(),
                    phase.moves().to_vec(),
                );
                checked += verify_into(&sub, &own, None, &format!("{} connect", inst.name), &mut failures);
            }
            checked += verify_into(g, phase, Some(&end), &format!("{} phase {i}", inst.name), &mut failures);
            at = end;
        }
        if &at != b {
            failures.push(format!("{} phases end away from beta", inst.name));
        }
    }
    for inst in corpus {
        let g = &inst.graph;
        let ord = degeneracy_ordering(g);
        for p in 0..PAIRS {
            let (k, a) = degenerate_input(g, 7000 + p);
            match reduce_one_colour_degenerate_with_report(g, k, &a, &ord) {
                Ok((s, _)) => {
                    checked += verify_into(g, &s, None, &format!("{} degenerate", inst.name), &mut failures);
                    if s.end().max_colour() > k as Colour + 1 {
                        failures.push(format!("{} degenerate keeps colour {}", inst.name, k + 2));
                    }
                }
                Err(e) => failures.push(format!("{} degenerate: {e}", inst.name)),
            }
        }
        if ord.width <= 2 {
            for p in 0..PAIRS {
                let a = random_proper_colouring(g, 5, 9000 + 2 * p).unwrap();
                let b = random_proper_colouring(g, 5, 9001 + 2 * p).unwrap();
                match connect_colourings_with(g, 2, 5, &a, &b, &ConnectBudget::default()) {
                    Ok((s, _)) => {
                        checked += verify_into(g, &s, Some(&b), &format!("{} connect", inst.name), &mut failures)
                    }
                    Err(e) => failures.push(format!("{} connect: {e}", inst.name)),
                }
            }
        }
    }
    outcome(
        &failures,
        format!("{checked} sequences verified over {} graphs", corpus.len()),
    )
}

fn criterion_2(corpus: &[Instance], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    let mut gap_total = 0usize;
    for run in runs {
        let inst = &corpus[run.instance];
        if inst.graph.n() > ORACLE_MAX_N {
            continue;
        }
        let g = &inst.graph;
        let b = run.seq.end();
        match shortest_sequence(g, 7, run.seq.start(), &b) {
            Ok(Some(geo)) => {
                compared += 1;
                gap_total += run.seq.len() - geo.len().min(run.seq.len());
                if run.seq.len() < geo.len() {
                    failures.push(format!(
                        "{} pipeline {} < geodesic {}",
                        inst.name,
                        run.seq.len(),
                        geo.len()
                    ));
                }
            }
            Ok(None) => failures.push(format!("{} pipeline endpoints unreachable per oracle", inst.name)),
            Err(e) => failures.push(format!("{} oracle: {e}", inst.name)),
        }
    }
    for inst in corpus {
        let g = &inst.graph;
        if g.n() > ORACLE_MAX_N || degeneracy_ordering(g).width > 2 {
            continue;
        }
        for p in 0..PAIRS {
            let a = random_proper_colouring(g, 5, 9000 + 2 * p).unwrap();
            let b = random_proper_colouring(g, 5, 9001 + 2 * p).unwrap();
            let (s, _) = connect_colourings_with(g, 2, 5, &a, &b, &ConnectBudget::default()).unwrap();
            match shortest_sequence(g, 5, &a, &b) {
                Ok(Some(geo)) => {
                    compared += 1;
                    if s.len() < geo.len() {
                        failures.push(format!("{} connect {} < geodesic {}", inst.name, s.len(), geo.len()));
                    }
                }
                Ok(None) => failures.push(format!("{} connect endpoints unreachable per oracle", inst.name)),
                Err(e) => failures.push(format!("{} oracle: {e}", inst.name)),
            }
        }
    }
    if compared == 0 {
        failures.push("no instances compared".into());
    }
    outcome(
        &failures,
        format!("{compared} outputs on graphs with n <= {ORACLE_MAX_N} are at least as long as the BFS geodesic (total slack {gap_total} moves on pipeline runs)"),
    )
}

fn check_degenerate_report(g: &Graph, s: &Sequence, rep: &DegenerateReport, ord: &[u32], what: &str) -> Vec<String> {
    let mut failures = Vec::new();
    let pos: BTreeMap<u32, usize> = ord.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut offset = 0;
    for call in &rep.calls {
        let seg = &s.moves()[offset..offset + call.moves];
        offset += call.moves;
        if let Some(m) = seg.iter().find(|m| pos[&m.vertex()] < call.position) {
            failures.push(format!(
                "{what}: vertex {} before position {} moved",
                m.vertex(),
                call.position
            ));
        }
        let target_moves = seg.iter().filter(|m| m.vertex() == call.target).count();
        if target_moves != 1 {
            failures.push(format!("{what}: target {} moved {target_moves} times", call.target));
        }
    }
    if offset != s.len() {
        failures.push(format!("{what}: calls cover {offset} of {} moves", s.len()));
    }
    let n = g.n() as f64;
    let log2_prod: f64 = g
        .vertices()
        .map(|v| g.degree(v))
        .filter(|&d| d >= rep.k + 2)
        .map(|d| (d as f64).log2())
        .sum();
    let bound = 2.0 + 2.0 * n.log2() + log2_prod;
    if !s.is_empty() && (s.len() as f64).log2() > bound + 1e-9 {
        failures.push(format!("{what}: length {} above 4n^2 prod deg", s.len()));
    }
    failures
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for inst in corpus {
        let g = &inst.graph;
        let ord = degeneracy_ordering(g);
        for p in 0..PAIRS {
            let (k, a) = degenerate_input(g, 7000 + p);
            match reduce_one_colour_degenerate_with_report(g, k, &a, &ord) {
                Ok((s, rep)) => {
                    runs += 1;
                    failures.extend(check_degenerate_report(g, &s, &rep, &ord.order, &inst.name));
                }
                Err(e) => failures.push(format!("{}: {e}", inst.name)),
            }
        }
    }
    let p3 = path(3);
    let a = Colouring::from_slice(&p3, 3, &[1, 2, 3]).unwrap();
    let ord = degeneracy_ordering(&p3);
    match reduce_one_colour_degenerate_with_report(&p3, 1, &a, &ord) {
        Ok((s, _)) if s.len() == 1 => {}
        Ok((s, _)) => failures.push(format!("P3 example gave {} moves", s.len())),
        Err(e) => failures.push(format!("P3 example: {e}")),
    }
    outcome(
        &failures,
        format!("{runs} runs: each top-level target moved once, no earlier vertex moved, length within 4n^2 prod deg; P3 example is 1 move"),
    )
}

fn criterion_4(corpus: &[Instance], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let (mut components, mut peels) = (0, 0);
    let k = 5.0f64;
    let mut reports: Vec<(String, MadReport)> = Vec::new();
    for run in runs {
        let name = &corpus[run.instance].name;
        reports.push((name.clone(), run.details.alpha_mad.clone()));
        reports.push((name.clone(), run.details.beta_mad.clone()));
    }
    // large enough for the low-degree count to exceed the base-case threshold
    for (name, g) in [("grid30x30", grid(30, 30)), ("apollonian1000", apollonian(997, 5))] {
        for seed in 0..3 {
            let a = random_proper_colouring(&g, 7, 300 + seed).unwrap();
            match reduce_one_colour_mad_with_report(&g, 5, &a) {
                Ok((s, rep)) => {
                    verify_into(&g, &s, None, name, &mut failures);
                    if s.end().uses(7) {
                        failures.push(format!("{name}: colour 7 survives"));
                    }
                    reports.push((name.to_string(), rep));
                }
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    }
    for (name, rep) in &reports {
        for level in &rep.levels {
            match level {
                MadLevel::Base { components: cs, .. } => {
                    for c in cs {
                        components += 1;
                        let root = (c.h as f64).sqrt();
                        let s_bound = k * (k + 1.0) * 2.0 * root;
                        let sum_bound = 4.0 * k * (k + 1.0).powi(2) * root;
                        if (c.s as f64) >= s_bound {
                            failures.push(format!("{name}: s = {} not below {s_bound}", c.s));
                        }
                        if (c.high_degree_sum as f64) >= sum_bound {
                            failures.push(format!(
                                "{name}: degree sum {} not below {sum_bound}",
                                c.high_degree_sum
                            ));
                        }
                    }
                }
                MadLevel::Peel { n, peeled, .. } => {
                    peels += 1;
                    let need = (2.0 * (*n as f64).sqrt()).ceil() as usize;
                    if *peeled < need {
                        failures.push(format!("{name}: peeled {peeled} < {need}"));
                    }
                }
                MadLevel::Done { .. } => {}
            }
        }
    }
    outcome(
        &failures,
        format!("{components} base components satisfy s < k(k+1)2sqrt(h) and sum deg < 4k(k+1)^2 sqrt(h); {peels} peeled sets have |S| >= ceil(2 sqrt(h))"),
    )
}

fn check_planar(rep: &PlanarReport, seq: &Sequence, name: &str, failures: &mut Vec<String>) -> usize {
    for level in &rep.levels {
        let s = &level.special;
        let h = s.h as f64;
        if (s.low_degree.len() as f64) < h * SPECIAL_LOW_RATIO - 1e-9 {
            failures.push(format!(
                "{name}: {} low-degree vertices for h = {}",
                s.low_degree.len(),
                s.h
            ));
        }
        if (s.chosen.len() as f64) < h * SPECIAL_CHOSEN_RATIO - 1e-9 {
            failures.push(format!("{name}: special set of {} for h = {}", s.chosen.len(), s.h));
        }
    }
    if seq.end().max_colour() > 5 {
        failures.push(format!("{name}: planar end uses colour {}", seq.end().max_colour()));
    }
    // colour 7 is only ever a stopover: every vertex that enters it leaves
    // it again, and the start and end colourings avoid it
    let mut on_seven = 0i64;
    for m in seq.moves() {
        on_seven += (m.to() == 7) as i64 - (m.from() == 7) as i64;
    }
    if on_seven != 0 || seq.start().uses(7) {
        failures.push(format!("{name}: colour 7 left occupied"));
    }
    rep.levels.len()
}

fn criterion_5(corpus: &[Instance], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let mut levels = 0;
    let mut boundaries = 0;
    let mut kempe = 0;
    for run in runs {
        let name = &corpus[run.instance].name;
        let d = &run.details;
        levels += check_planar(&d.alpha_planar, &d.phases[1], name, &mut failures);
        let beta_planar = recolour::moves::reverse(&d.phases[5]);
        levels += check_planar(&d.beta_planar, &beta_planar, name, &mut failures);
        for rep in [&d.alpha_planar, &d.beta_planar] {
            boundaries += rep.swap_boundaries_checked;
            kempe += rep.levels.iter().map(|l| l.kempe_fixes.len()).sum::<usize>();
        }
    }
    outcome(
        &failures,
        format!("{levels} levels with 7|S| >= h and 49|I| >= h; ends use colours 1..5; {boundaries} swap boundaries free of colour 7; {kempe} Kempe fixes, none exhausted"),
    )
}

fn criterion_6(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let cfg = PartitionSearchConfig::default();
    for inst in corpus {
        let g = &inst.graph;
        match corollary_partition(g, &cfg) {
            Ok(p) => {
                let (i1, i2, a) = (p.part(0), p.part(1), p.part(2));
                if !is_independent(g, i1) || !is_independent(g, i2) {
                    failures.push(format!("{}: I1 or I2 not independent", inst.name));
                }
                let width = degeneracy_ordering(&induced_subgraph(g, a).unwrap()).width;
                if width > 2 {
                    failures.push(format!("{}: G[A] has degeneracy {width}", inst.name));
                }
                if i1.len() + i2.len() + a.len() != g.n() {
                    failures.push(format!("{}: parts do not cover the graph", inst.name));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", inst.name)),
        }
    }
    let mut random = 0;
    for k in [2u32, 3, 4] {
        for seed in 0..34u64 {
            if random == 100 {
                break;
            }
            random += 1;
            let n = 10 + (seed as u32 * 7) % 60;
            let g = random_degenerate(n, k, 500 + seed);
            match mihok_wood_partition(&g, k as usize) {
                Ok(p) => {
                    if p.method != PartitionMethod::DegeneracyGreedy {
                        failures.push(format!("degenerate k={k} seed {seed}: fallback {:?}", p.method));
                    }
                    let f = degeneracy_ordering(&induced_subgraph(&g, p.part(1)).unwrap()).width;
                    if !is_independent(&g, p.part(0)) || f + 1 > k as usize {
                        failures.push(format!("degenerate k={k} seed {seed}: bad certificate"));
                    }
                }
                Err(e) => failures.push(format!("degenerate k={k} seed {seed}: {e}")),
            }
        }
    }
    outcome(
        &failures,
        format!("{} corpus graphs split into I1, I2 independent and G[A] 2-degenerate; {random} random k-degenerate graphs split with (k-1)-degenerate F and no fallback", corpus.len()),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for n in [25u32, 50, 100, 200] {
        let g = apollonian(n - 3, 77);
        let a = random_proper_colouring(&g, 7, 1).unwrap();
        let b = random_proper_colouring(&g, 7, 2).unwrap();
        match seven_colour_path_with(&g, &a, &b, &PipelineConfig::default()) {
            Ok((_, rep, _)) => rows.push(serde_json::json!({
                "family": "apollonian",
                "n": n,
                "total": rep.total,
                "fitted_exponent": rep.fitted_exponent,
                "report": rep,
            })),
            Err(e) => failures.push(format!("apollonian {n}: {e}")),
        }
    }
    let budget = ConnectBudget::new(BUDGET_FACTOR, ConnectBudget::default().hard_cap()).unwrap();
    let mut grid_rows = Vec::new();
    for side in [3u32, 4, 5, 6, 7, 8, 9, 10] {
        let g = grid(side, side);
        let a = random_proper_colouring(&g, 5, 3).unwrap();
        let b = random_proper_colouring(&g, 5, 4).unwrap();
        match connect_colourings_with(&g, 2, 5, &a, &b, &budget) {
            Ok((_, rep)) => grid_rows.push(serde_json::json!({
                "family": "grid",
                "n": rep.n,
                "length": rep.length,
                "soft_bound": rep.soft_bound,
                "within_soft_bound": rep.within_soft_bound,
            })),
            Err(e) => failures.push(format!("grid {side}x{side}: {e}")),
        }
    }
    let doc = serde_json::json!({ "pipeline": rows, "connect": grid_rows });
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("growth.json");
    if let Err(e) = std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()) {
        failures.push(format!("writing {}: {e}", path.display()));
    }
    let exps: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "n={} len={} exp={:.3}",
                r["n"],
                r["total"],
                r["fitted_exponent"].as_f64().unwrap()
            )
        })
        .collect();
    let grids: Vec<String> = grid_rows
        .iter()
        .map(|r| format!("n={} len={}/{}", r["n"], r["length"], r["soft_bound"]))
        .collect();
    outcome(
        &failures,
        format!(
            "apollonian [{}]; grid connect vs {BUDGET_FACTOR}n^2 [{}], no hard-cap aborts; stats in {}",
            exps.join(", "),
            grids.join(", "),
            path.display()
        ),
    )
}

fn fingerprint(corpus: &[Instance], cfg: &PipelineConfig) -> Vec<String> {
    let (runs, errors) = run_pipelines(corpus, cfg);
    let mut out: Vec<String> = runs.iter().map(|r| emit_sequence(&r.seq)).collect();
    out.extend(errors);
    for inst in corpus {
        let g = &inst.graph;
        let ord = degeneracy_ordering(g);
        let (k, a) = degenerate_input(g, 7000);
        if let Ok((s, _)) = reduce_one_colour_degenerate_with_report(g, k, &a, &ord) {
            out.push(emit_sequence(&s));
        }
        if let Ok(p) = corollary_partition(g, &cfg.partition) {
            out.push(emit_partition(&p.partition.parts));
        }
    }
    out
}

fn criterion_8(instances: &[Instance], runs: &[Run]) -> Outcome {
    let mut failures = Vec::new();
    let first: Vec<String> = runs.iter().map(|r| emit_sequence(&r.seq)).collect();
    let again = fingerprint(&corpus(), &PipelineConfig::default());
    let serial = fingerprint(
        instances,
        &PipelineConfig {
            parallel: false,
            ..PipelineConfig::default()
        },
    );
    if again != serial {
        failures.push("parallel and sequential runs differ".into());
    }
    if first[..] != again[..first.len().min(again.len())] {
        failures.push("repeated pipeline runs differ".into());
    }
    outcome(
        &failures,
        format!(
            "{} sequence and partition files identical across repeated and single-threaded runs",
            again.len()
        ),
    )
}

fn main() {
    let started = Instant::now();
    let corpus = corpus();
    let (runs, errors) = run_pipelines(&corpus, &PipelineConfig::default());
    let results = [
        ("verifier gate", criterion_1(&corpus, &runs, &errors)),
        ("oracle cross-check", criterion_2(&corpus, &runs)),
        ("one-colour reduction on degenerate graphs", criterion_3(&corpus)),
        ("mad reduction inequalities", criterion_4(&corpus, &runs)),
        ("planar 6-to-5 constants", criterion_5(&corpus, &runs)),
        ("partition certificates", criterion_6(&corpus)),
        ("growth report", criterion_7()),
        ("determinism", criterion_8(&corpus, &runs)),
    ];
    let elapsed = started.elapsed().as_secs_f64();
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!(
            "criterion {} {name}: {}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let in_time = elapsed < RUNTIME_TARGET_SECS;
    println!(
        "runtime: {} ({elapsed:.1}s, target under {RUNTIME_TARGET_SECS}s)",
        if in_time { "PASS" } else { "FAIL" }
    );
    if !all || !in_time {
        std::process::exit(1);
    }
}
