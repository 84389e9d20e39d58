//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line to
//! stderr, uncaptured, so the summary shows up in a normal `cargo test` run.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use rtc_core::graph::{parse_graph_text, ProblemFormulation};
use rtc_core::harness::{
    check_answer, evaluate, generate_instances, CheckerKind, EvalConfig, EvalReport, HarnessConfig, BackendKind,
    HarnessError, ProblemInstance, SolverMode, TaskKind, TaskSpec, VerdictReason,
};
use rtc_core::llm::{LiveBackend, LiveConfig, LlmError, Stage};
use rtc_core::oracle::{
    exact_mis, exact_mvc, hamilton_path, max_clique, max_flow, mst_weight, pagerank, shortest_path, subgraph_match,
    tsp_held_karp, MatchMode, OracleAnswer, OracleError, Witness,
};
use rtc_core::pipeline::{prompts, ArtifactCache};
use rtc_core::verify;
use rtc_core::Graph;

/// Criteria run one at a time so CPU-heavy ones do not skew the timed ones.
static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(number: u32, name: &str, body: impl FnOnce()) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let result = catch_unwind(AssertUnwindSafe(body));
    let status = if result.is_ok() { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {number}: {status} - {name}");
    if let Err(panic) = result {
        resume_unwind(panic);
    }
}

const SUITE_TASKS: [TaskKind; 6] = [
    TaskKind::ShortestPath,
    TaskKind::Connectivity,
    TaskKind::TopologicalSort,
    TaskKind::MaxFlow,
    TaskKind::Mis,
    TaskKind::Tsp,
];

fn suite() -> Vec<ProblemInstance> {
    SUITE_TASKS
        .iter()
        .enumerate()
        .flat_map(|(i, &kind)| generate_instances(&TaskSpec::new(kind), 20, 100 + i as u64).unwrap())
        .collect()
}

fn path_witness(answer: &OracleAnswer) -> Option<Vec<usize>> {
    match answer {
        OracleAnswer::Boolean { witness: Some(Witness::Path(p)), .. } => Some(p.clone()),
        _ => None,
    }
}

fn is_true(answer: &OracleAnswer) -> bool {
    matches!(answer, OracleAnswer::Boolean { value: true, .. })
}

#[test]
fn criterion_1_oracles_match_exhaustive_search() {
    criterion(1, "oracles agree with exhaustive search on 200 random graphs each", || {
        let mut r = rng(1);
        for _ in 0..200 {
            let n = r.gen_range(2..=9);
            let directed = r.gen_bool(0.5);
            let p = r.gen_range(0.15..0.8);
            let g = bernoulli_graph(&mut r, n, p, directed, Some((1, 20)));
            let (s, t) = (r.gen_range(0..n), r.gen_range(0..n));
            let got = shortest_path(&g, s, t).unwrap();
            assert_eq!(got.distance, bf_shortest_path(&g, s, t), "shortest_path {s}->{t} on {g:?}");
            if let Some(p) = got.path {
                assert_eq!(verify::path_cost(&g, &p, s, t).unwrap(), got.distance);
            }
        }

        let mut r = rng(2);
        for _ in 0..200 {
            let n = r.gen_range(2..=12);
            let p = r.gen_range(0.15..0.7);
            let g = bernoulli_graph(&mut r, n, p, true, Some((1, 30)));
            let s = r.gen_range(0..n);
            let t = (s + r.gen_range(1..n)) % n;
            assert_eq!(max_flow(&g, s, t).unwrap(), bf_max_flow(&g, s, t), "max_flow {s}->{t} on {g:?}");
        }

        let mut r = rng(3);
        for _ in 0..200 {
            let n = r.gen_range(2..=7);
            let p = r.gen_range(0.3..0.9);
            let g = bernoulli_graph(&mut r, n, p, false, Some((1, 15)));
            match (mst_weight(&g), bf_mst(&g)) {
                (Ok(tree), Some(w)) => assert_eq!(tree.weight, w, "mst on {g:?}"),
                (Err(OracleError::Disconnected { .. }), None) => {}
                (got, want) => panic!("mst mismatch on {g:?}: {got:?} vs {want:?}"),
            }
        }

        let mut r = rng(4);
        for _ in 0..200 {
            let n = r.gen_range(1..=15);
            let p = r.gen_range(0.1..0.8);
            let g = bernoulli_graph(&mut r, n, p, false, None);
            let mis = exact_mis(&g).unwrap();
            verify::check_independent_set(&g, &mis).unwrap();
            assert_eq!(mis.len(), bf_mis_size(&g), "mis on {g:?}");
            let mvc = exact_mvc(&g).unwrap();
            assert!(g.edges().iter().all(|e| mvc.contains(&e.u) || mvc.contains(&e.v)));
            assert_eq!(mvc.len(), bf_mvc_size(&g), "mvc on {g:?}");
            let clique = max_clique(&g).unwrap();
            assert!(clique.iter().all(|&u| clique.iter().all(|&v| u == v || g.has_edge(u, v))));
            assert_eq!(clique.len(), bf_clique_size(&g), "clique on {g:?}");
        }

        let mut r = rng(5);
        for _ in 0..200 {
            let n = r.gen_range(2..=9);
            let p = if r.gen_bool(0.5) { 1.0 } else { r.gen_range(0.4..0.9) };
            let g = bernoulli_graph(&mut r, n, p, false, Some((1, 50)));
            let got = tsp_held_karp(&g).unwrap();
            assert_eq!(got.cost, bf_tsp(&g), "tsp on {g:?}");
            if let Some(tour) = got.tour {
                assert_eq!(verify::tour_cost(&g, &tour).unwrap(), got.cost);
            }
        }

        let mut r = rng(6);
        for _ in 0..200 {
            let directed = r.gen_bool(0.3);
            let host_n = r.gen_range(1..=8);
            let pat_n = r.gen_range(1..=4);
            let host_p = r.gen_range(0.2..0.8);
            let host = bernoulli_graph(&mut r, host_n, host_p, directed, None);
            let pattern_p = r.gen_range(0.2..0.8);
            let pattern = bernoulli_graph(&mut r, pat_n, pattern_p, directed, None);
            for (mode, induced) in [(MatchMode::InducedIsomorphism, true), (MatchMode::Monomorphism, false)] {
                let got = subgraph_match(&pattern, &host, mode).unwrap();
                assert_eq!(is_true(&got), bf_subgraph(&pattern, &host, induced), "{mode:?} {pattern:?} in {host:?}");
                if let OracleAnswer::Boolean { witness: Some(Witness::Mapping(m)), .. } = got {
                    let image = |p: usize| m.iter().find(|&&(a, _)| a == p).unwrap().1;
                    for a in 0..pat_n {
                        for b in 0..pat_n {
                            if a != b && (pattern.has_edge(a, b) || induced) {
                                assert_eq!(pattern.has_edge(a, b), host.has_edge(image(a), image(b)));
                            }
                        }
                    }
                }
            }
        }

        let mut r = rng(7);
        for _ in 0..200 {
            let n = r.gen_range(1..=8);
            let p = r.gen_range(0.15..0.6);
            let directed = r.gen_bool(0.5);
            let g = bernoulli_graph(&mut r, n, p, directed, None);
            let got = hamilton_path(&g);
            assert_eq!(is_true(&got), bf_hamilton(&g), "hamilton on {g:?}");
            if let Some(p) = path_witness(&got) {
                verify::check_hamilton_path(&g, &p).unwrap();
            }
        }
    });
}

/// Synchronous PageRank in exact arithmetic, with mass from nodes lacking
/// out-arcs spread evenly.
fn exact_pagerank(n: usize, arcs: &[(usize, usize)], damping: BigRational, iterations: usize) -> Vec<BigRational> {
    let nn = BigRational::from_integer(BigInt::from(n));
    let out: Vec<usize> = (0..n).map(|u| arcs.iter().filter(|a| a.0 == u).count()).collect();
    let mut pr = vec![BigRational::one() / nn.clone(); n];
    for _ in 0..iterations {
        let dangling: BigRational =
            (0..n).filter(|&u| out[u] == 0).fold(BigRational::zero(), |acc, u| acc + pr[u].clone());
        let mut next = vec![BigRational::zero(); n];
        for (v, slot) in next.iter_mut().enumerate() {
            let mut inflow = dangling.clone() / nn.clone();
            for &(a, b) in arcs {
                if b == v {
                    inflow += pr[a].clone() / BigRational::from_integer(BigInt::from(out[a]));
                }
            }
            *slot = (BigRational::one() - damping.clone()) / nn.clone() + damping.clone() * inflow;
        }
        pr = next;
    }
    pr
}

#[test]
fn criterion_2_worked_examples() {
    criterion(2, "pagerank, hamilton, shortest path and unreachable examples", || {
        let arcs = [(3, 2), (3, 1), (2, 0), (2, 1), (2, 4), (1, 3), (1, 0), (0, 2)];
        let g = Graph::from_pairs(true, 5, &arcs).unwrap();
        let got = pagerank(&g, 0.85, 3).unwrap();
        assert_eq!(got.argmax, 2);
        let d = BigRational::new(BigInt::from(17), BigInt::from(20));
        let exact = exact_pagerank(5, &arcs, d, 3);
        for (f, e) in got.scores.iter().zip(&exact) {
            assert!((f - e.to_f64().unwrap()).abs() < 1e-12, "{f} vs {e}");
        }
        let best = (0..5).max_by(|&a, &b| exact[a].cmp(&exact[b]).then(b.cmp(&a))).unwrap();
        assert_eq!(best, 2);

        let text = "The nodes are numbered from 0 to 4, and the edges are: (0, 1) (0, 3) (0, 4) (0, 2) (1, 3) (3, 4).";
        let g = parse_graph_text(text, false, false).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (5, 6));
        let answer = hamilton_path(&g);
        assert!(is_true(&answer));
        verify::check_hamilton_path(&g, &path_witness(&answer).unwrap()).unwrap();
        verify::check_hamilton_path(&g, &[2, 0, 1, 3, 4]).unwrap();

        let inputs = golden_inputs();
        let g = parse_graph_text(inputs["problem"].as_str().unwrap(), false, true).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (10, 12));
        let sp = shortest_path(&g, 8, 5).unwrap();
        assert_eq!(sp.distance, 4);
        assert_eq!(bf_shortest_path(&g, 8, 5), 4);
        assert_eq!(verify::path_cost(&g, sp.path.as_ref().unwrap(), 8, 5).unwrap(), 4);

        let g = Graph::from_triples(false, 4, &[(0, 1, 3), (2, 3, 1)]).unwrap();
        assert_eq!(shortest_path(&g, 0, 3).unwrap().distance, -1);
        let g = Graph::from_triples(true, 3, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        assert_eq!(shortest_path(&g, 0, 2).unwrap().distance, -1);
    });
}

#[test]
fn criterion_3_held_karp_scale() {
    criterion(3, "held-karp matches permutations for n <= 9 and finishes n = 20 within 60 s", || {
        let mut r = rng(30);
        for n in 1..=9 {
            for _ in 0..15 {
                let p = if r.gen_bool(0.5) { 1.0 } else { r.gen_range(0.5..0.95) };
                let g = bernoulli_graph(&mut r, n, p, false, Some((1, 100)));
                assert_eq!(tsp_held_karp(&g).unwrap().cost, bf_tsp(&g), "n = {n}: {g:?}");
            }
        }
        let g = bernoulli_graph(&mut r, 20, 1.0, false, Some((1, 100)));
        let started = Instant::now();
        let answer = tsp_held_karp(&g).unwrap();
        let elapsed = started.elapsed();
        let tour = answer.tour.unwrap();
        assert_eq!(verify::tour_cost(&g, &tour).unwrap(), answer.cost);
        eprintln!("held-karp n=20: {elapsed:?}, cost {}", answer.cost);
        assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    });
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join("prompts")
}

fn golden_inputs() -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(golden_dir().join("inputs.json")).unwrap()).unwrap()
}

fn assert_golden_prompts() {
    let v = golden_inputs();
    let s = |k: &str| v[k].as_str().unwrap().to_string();
    let f = ProblemFormulation::new(s("pure_problem"), s("input_description"), s("output_description")).unwrap();
    let built = [
        ("formatting", prompts::formatting(&s("problem"))),
        ("pure_problem", prompts::pure_problem(&s("problem"), &f.input_description, &f.output_description)),
        ("extracting", prompts::extracting(&s("problem"), &f.input_description)),
        ("reasoning", prompts::reasoning(&f)),
        ("coding", prompts::coding(&f, &s("pseudocode"))),
    ];
    for (name, prompt) in built {
        let want = std::fs::read_to_string(golden_dir().join(format!("{name}.txt"))).unwrap();
        assert_eq!(prompt, want, "{name} prompt differs from its golden file");
    }
}

#[test]
fn criterion_4_offline_pipeline_suite() {
    criterion(4, "scripted 6 x 20 suite scores 1.000 with no failures; prompts match golden files", || {
        assert_golden_prompts();
        let pipeline = pipeline_with(scripted(Duration::ZERO), Arc::new(ArtifactCache::in_memory()));
        let report = evaluate(&suite(), &pipeline, &EvalConfig::default()).unwrap();
        for inst in report.instances.iter().filter(|i| !i.correct()) {
            eprintln!("{} #{}: {:?} {:?} {:?}", inst.task_id, inst.index, inst.predicted, inst.verdict, inst.error);
        }
        assert_eq!(report.count, 120);
        assert_eq!(report.rows.len(), 6);
        assert_eq!(report.failure_count(), 0);
        assert_eq!(report.micro_accuracy, 1.0);
    });
}

fn tokens(report: &EvalReport) -> u64 {
    report.usage.prompt_tokens + report.usage.completion_tokens
}

fn stage_calls(report: &EvalReport, stage: Stage) -> usize {
    report.calls_by_stage.get(&stage).copied().unwrap_or(0)
}

#[test]
fn criterion_5_warm_cache_reuse() {
    criterion(5, "warm cache skips generation and is at least 10x faster per problem", || {
        let data = suite();
        let latency = Duration::from_millis(100);
        let serial = |reuse| EvalConfig { mode: SolverMode::Pipeline, workers: 1, reuse };

        let cold = evaluate(&data, &pipeline_with(scripted(latency), Arc::new(ArtifactCache::in_memory())), &serial(false))
            .unwrap();

        let cache = Arc::new(ArtifactCache::in_memory());
        evaluate(&data, &pipeline_with(scripted(Duration::ZERO), cache.clone()), &serial(true)).unwrap();
        let warm = evaluate(&data, &pipeline_with(scripted(latency), cache), &serial(true)).unwrap();

        eprintln!(
            "cold {:.3} s/problem, warm {:.3} s/problem, tokens {} -> {}",
            cold.time_per_problem,
            warm.time_per_problem,
            tokens(&cold),
            tokens(&warm)
        );
        assert_eq!(cold.micro_accuracy, 1.0);
        assert_eq!(warm.micro_accuracy, cold.micro_accuracy);
        for stage in [Stage::Extracting, Stage::Reasoning, Stage::Coding, Stage::Repair] {
            assert_eq!(stage_calls(&warm, stage), 0, "{stage} calls on the warm run");
        }
        assert!(stage_calls(&cold, Stage::Coding) >= 120);
        assert!(tokens(&warm) < tokens(&cold));
        assert!(warm.usage.cost <= cold.usage.cost);
        assert!(
            cold.time_per_problem >= 10.0 * warm.time_per_problem,
            "cold {} vs warm {}",
            cold.time_per_problem,
            warm.time_per_problem
        );
    });
}

/// All-pairs distances by Floyd-Warshall; `None` for unreachable.
fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<i64>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for e in g.edges() {
        let w = e.weight.unwrap_or(1);
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if a != b && (b == e.v || !g.is_directed()) {
                d[a][b] = Some(d[a][b].map_or(w, |x: i64| x.min(w)));
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            let via: Vec<Option<i64>> = d[k].iter().map(|kj| kj.map(|kj| ik + kj)).collect();
            for (slot, alt) in d[i].iter_mut().zip(via) {
                if let Some(alt) = alt {
                    if slot.is_none_or(|x| alt < x) {
                        *slot = Some(alt);
                    }
                }
            }
        }
    }
    d
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

#[test]
fn criterion_6_shortest_path_scaling() {
    criterion(6, "shortest path at n = 50/100/200 solved 60/60, oracle time at most quadratic", || {
        let sizes = [50, 100, 200];
        let mut data = Vec::new();
        for (i, &n) in sizes.iter().enumerate() {
            let spec = TaskSpec::new(TaskKind::ShortestPath).with_n(n).with_density(0.3).with_weights(1, 100);
            data.extend(generate_instances(&spec, 20, 600 + i as u64).unwrap());
        }

        let mut per_size = Vec::new();
        for chunk in data.chunks(20) {
            let mut times = Vec::new();
            for inst in chunk {
                let g = parse_graph_text(&inst.problem_text, false, true).unwrap();
                let q = inst.meta_nodes("query").unwrap();
                let dist = floyd_warshall(&g)[q[0]][q[1]].unwrap_or(-1);
                assert_eq!(inst.gold_answer.as_deref(), Some(dist.to_string().as_str()));
                        let reps = 50;
                let mut samples = Vec::with_capacity(reps);
                for _ in 0..reps {
                    let started = Instant::now();
                    let answer = shortest_path(&g, q[0], q[1]).unwrap();
                    samples.push(started.elapsed().as_secs_f64());
                    assert_eq!(answer.distance, dist);
                }
                times.push(median(samples));
            }
            per_size.push(times.iter().sum::<f64>() / times.len() as f64);
        }
        let ratio = per_size[2] / per_size[0];
        eprintln!("oracle seconds per instance at n = {sizes:?}: {per_size:?} (200/50 ratio {ratio:.2})");
        assert!(ratio <= 16.0, "oracle time grew by {ratio:.2} from n = 50 to n = 200");

        let pipeline = pipeline_with(scripted(Duration::ZERO), Arc::new(ArtifactCache::in_memory()));
        let report = evaluate(&data, &pipeline, &EvalConfig::default()).unwrap();
        assert_eq!(report.failure_count(), 0);
        assert_eq!(report.correct, 60);
    });
}

fn mutate(gold: &str, delta: i64) -> String {
    match gold.parse::<i64>() {
        Ok(v) => (v + delta).to_string(),
        Err(_) => format!("{:.6}", gold.parse::<f64>().unwrap() + delta as f64),
    }
}

#[test]
fn criterion_7_checker_properties() {
    criterion(7, "gold accepted 1000/1000, +-1 mutations rejected 1000/1000, suboptimal tours rejected", || {
        let mut golds = Vec::new();
        let mut seed = 700;
        while golds.len() < 1000 {
            for kind in TaskKind::ALL {
                let spec = TaskSpec::new(kind);
                golds.extend(generate_instances(&spec, 4, seed).unwrap().into_iter().map(|i| (spec.clone(), i)));
                seed += 1;
            }
        }
        golds.truncate(1000);
        let accepted = golds
            .iter()
            .filter(|(spec, inst)| check_answer(spec, inst.gold_answer.as_deref().unwrap(), inst).correct)
            .count();
        assert_eq!(accepted, 1000);

        let numeric: Vec<TaskKind> = TaskKind::ALL
            .into_iter()
            .filter(|k| matches!(k.checker(), CheckerKind::ExactInt | CheckerKind::NumericTol))
            .collect();
        let mut rejected = 0;
        let mut tried = 0;
        let mut r = rng(77);
        while tried < 1000 {
            let kind = numeric[tried % numeric.len()];
            let spec = TaskSpec::new(kind);
            let inst = generate_instances(&spec, 1, 7000 + tried as u64).unwrap().remove(0);
            let delta = if r.gen_bool(0.5) { 1 } else { -1 };
            let bad = mutate(inst.gold_answer.as_deref().unwrap(), delta);
            let v = check_answer(&spec, &bad, &inst);
            if !v.correct {
                rejected += 1;
            } else {
                eprintln!("{kind}: mutation {bad} of {:?} accepted", inst.gold_answer);
            }
            tried += 1;
        }
        assert_eq!(rejected, 1000);

        let spec = TaskSpec::new(TaskKind::Tsp).with_n(8).with_density(1.0).with_weights(1, 100);
        let mut suboptimal = 0;
        for inst in generate_instances(&spec, 20, 70).unwrap() {
            let g = parse_graph_text(&inst.problem_text, false, true).unwrap();
            let best = tsp_held_karp(&g).unwrap().cost;
            let mut tour: Vec<usize> = (0..8).collect();
            loop {
                tour[1..].shuffle(&mut r);
                if verify::tour_cost(&g, &tour).unwrap() > best {
                    break;
                }
            }
            let text = tour.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let v = check_answer(&spec, &text, &inst);
            assert!(!v.correct && v.reason == VerdictReason::Suboptimal, "tour {text}: {v:?}");
            suboptimal += 1;
        }
        assert_eq!(suboptimal, 20);
    });
}

#[test]
fn criterion_8_live_mode_is_gated() {
    criterion(8, "live backend needs an explicit credential and never prints it", || {
        let config = LiveConfig { api_key_env: "RTC_ACCEPTANCE_UNSET_KEY".into(), ..LiveConfig::default() };
        assert!(matches!(LiveBackend::from_env(config.clone()), Err(LlmError::MissingCredential(_))));

        let harness = HarnessConfig { backend: BackendKind::Live, live: config.clone(), ..HarnessConfig::default() };
        assert!(matches!(harness.build_backend(), Err(HarnessError::Config(_))));

        let secret = "sk-acceptance-0123456789";
        let backend = LiveBackend::with_key(config, secret.into());
        assert!(!format!("{backend:?}").contains(secret));

        let default = HarnessConfig::default();
        assert_eq!(default.backend, BackendKind::Scripted);
    });
}

/// One live instance per task family. Needs `RTC_API_KEY` and network
/// access; run with `cargo test --test acceptance -- --ignored`.
#[test]
#[ignore]
fn live_smoke() {
    let config = HarnessConfig { backend: BackendKind::Live, ..HarnessConfig::default() };
    if std::env::var(&config.live.api_key_env).is_err() {
        eprintln!("{} is not set; skipping", config.live.api_key_env);
        return;
    }
    let data: Vec<ProblemInstance> = TaskKind::ALL
        .into_iter()
        .enumerate()
        .map(|(i, kind)| generate_instances(&TaskSpec::new(kind), 1, i as u64).unwrap().remove(0))
        .collect();
    let pipeline = config.build_pipeline(Arc::new(ArtifactCache::in_memory())).unwrap();
    let report = evaluate(&data, &pipeline, &EvalConfig::default()).unwrap();
    eprint!("{}", rtc_core::harness::render_report(&report, rtc_core::harness::ReportFormat::Table));
    assert_eq!(report.count, TaskKind::ALL.len());
}
