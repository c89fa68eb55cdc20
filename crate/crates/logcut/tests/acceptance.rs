//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use logcut_core::baselines::default_rank;
use logcut_core::pauli::sampling_std_error;
use logcut_core::statevector::prepare;
use logcut_core::{
    decompose, exact_maxcut, expectation_exact, expectation_sampled, gate_count_estimate, gw_maxcut, landscape, n_cuts,
    r_f, reconstruct, solve, x0, EvalMode, GaConfig, Graph, Laplacian, PauliString, PhaseVector, SolveOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($fmt)+));
        }
    };
}

fn cubic(vertices: usize, seed: u64) -> Graph {
    Graph::random_regular(vertices, 3, seed).unwrap()
}

/// Edge-by-edge cut weight for a sign vector over at least the graph's vertices.
fn edge_cut(g: &Graph, signs: &[i8]) -> f64 {
    g.edges()
        .iter()
        .filter(|e| signs[e.u] != signs[e.v])
        .map(|e| e.weight)
        .sum()
}

/// MaxCut by plain enumeration of every subset containing vertex 0's complement.
fn brute_force_maxcut(g: &Graph) -> f64 {
    let n = g.num_vertices();
    (0u64..1 << (n - 1))
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|e| ((mask >> e.u) ^ (mask >> e.v)) & 1 == 1)
                .map(|e| e.weight)
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

fn quadratic_over_four(l: &Laplacian, v: &[i8]) -> f64 {
    let m = l.matrix();
    let mut acc = 0.0;
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            acc += f64::from(v[i]) * m[(i, j)] * f64::from(v[j]);
        }
    }
    acc / 4.0
}

fn signs_of(bits: u64, len: usize) -> Vec<i8> {
    (0..len).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()
}

fn check_equivalence(g: &Graph, signs: &[i8]) -> Result<(), String> {
    let l = g.laplacian().unwrap();
    let quantum = n_cuts(&l, &PhaseVector::from_signs(signs), EvalMode::Dense).unwrap();
    let quad = quadratic_over_four(&l, signs);
    let count = edge_cut(g, signs);
    ensure!(
        (quantum - quad).abs() <= 1e-9 && (quad - count).abs() <= 1e-9,
        "|V|={} signs={signs:?}: n_cuts {quantum} quadratic {quad} edges {count}",
        g.num_vertices()
    );
    Ok(())
}

fn equivalence() -> Outcome {
    let mut battery = vec![
        Graph::cycle(4).unwrap(),
        Graph::complete(4).unwrap(),
        Graph::unweighted(4, [(0, 1), (1, 2), (2, 3)]).unwrap(),
        Graph::unweighted(4, [(0, 1), (0, 2), (0, 3)]).unwrap(),
        Graph::new(4, [(0, 1, 0.5), (1, 2, 2.0), (0, 3, 1.25)]).unwrap(),
        Graph::cycle(8).unwrap(),
        Graph::complete(8).unwrap(),
        Graph::new(8, [(0, 7, 3.0), (1, 6, 0.25), (2, 5, 1.0), (3, 4, 2.5), (0, 4, 1.5)]).unwrap(),
    ];
    battery.extend((0..5).map(|s| cubic(8, s)));
    let mut exhaustive = 0;
    for g in &battery {
        let n = g.num_vertices();
        for bits in 0u64..1 << n {
            check_equivalence(g, &signs_of(bits, n))?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut sampled = 0;
    for qubits in 5..=8u32 {
        let g = cubic(1 << qubits, u64::from(qubits));
        for _ in 0..1000 {
            let signs: Vec<i8> = (0..1usize << qubits).map(|_| if rng.gen() { 1 } else { -1 }).collect();
            check_equivalence(&g, &signs)?;
            sampled += 1;
        }
    }
    Ok(format!(
        "{} graphs, {exhaustive} exhaustive + {sampled} random vectors",
        battery.len()
    ))
}

/// `tr(P·L) / 2^n` straight from the matrix, using P|k⟩ = i^{#Y} (−1)^{|k∧z|} |k⊕x⟩.
fn trace_coefficient(l: &Laplacian, p: &PauliString) -> (f64, f64) {
    let m = l.matrix();
    let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
    let (mut re, mut im) = (0.0, 0.0);
    for k in 0..l.dim() {
        // ⟨k|P L|k⟩ = Σ_j P_{kj} L_{jk}; the only nonzero P_{kj} has j = k⊕x
        // and equals i^{#Y}(−1)^{|j∧z|}.
        let j = k ^ x;
        let sign = if (j & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let v = sign * m[(j, k)];
        match p.y_count() % 4 {
            0 => re += v,
            1 => im += v,
            2 => re -= v,
            _ => im -= v,
        }
    }
    let d = l.dim() as f64;
    (re / d, im / d)
}

fn pauli_round_trip() -> Outcome {
    let sizes = [4, 6, 8, 10, 12, 14, 16];
    let mut worst = 0.0f64;
    let mut strings = 0usize;
    for i in 0..50u64 {
        let g = cubic(sizes[i as usize % sizes.len()], 100 + i).pad_to_power_of_two();
        let l = g.laplacian().unwrap();
        let sum = decompose(&l);
        let err = reconstruct(&sum).max_abs_diff(l.matrix());
        ensure!(err <= 1e-10, "graph {i}: reconstruction error {err:e}");
        worst = worst.max(err);
        ensure!(
            sum.terms().iter().all(|t| t.string.y_count() % 2 == 0),
            "graph {i}: decomposition has an odd-Y term"
        );
        let n = l.qubits();
        for x in 0..1u64 << n {
            for z in 0..1u64 << n {
                let p = PauliString::from_masks(n, x, z).unwrap();
                let (re, im) = trace_coefficient(&l, &p);
                ensure!(im.abs() <= 1e-12, "graph {i}: {p} has imaginary trace {im}");
                if p.y_count() % 2 == 1 {
                    ensure!(re.abs() <= 1e-12, "graph {i}: odd-Y {p} has coefficient {re}");
                }
                let got = sum.coefficient(&p);
                ensure!((got - re).abs() <= 1e-12, "graph {i}: {p} decomposed {got}, trace {re}");
                strings += 1;
            }
        }
    }
    Ok(format!(
        "50 Laplacians, {strings} strings checked by trace, max error {worst:.1e}"
    ))
}

fn relaxation() -> Outcome {
    let mut centred = 0;
    for q in 0..=20u32 {
        for m in (q..=q + 40).chain([100, 500, 1000, 1030].into_iter().filter(|&m| m >= q)) {
            let v = r_f(0.0, q, m);
            ensure!((v - 0.5).abs() <= 1e-9, "R_f(0, {q}, {m}) = {v}");
            centred += 1;
        }
    }
    for q in 0..=10u32 {
        let m = q + 3;
        let shift = -x0(q, m).unwrap() / f64::from(1u32 << q);
        let width = PI / f64::from(1u32 << q);
        for j in 0..(2u32 << q) {
            for frac in [0.3, 0.5, 0.7] {
                let x = (f64::from(j) + frac) * width + shift;
                let v = r_f(x, q, m);
                ensure!(
                    (v - f64::from(j % 2)).abs() < 0.5,
                    "q={q} cell {j}: R_f = {v}, expected bit {}",
                    j % 2
                );
            }
        }
    }
    let mut probes = 0;
    for q in 0..=10u32 {
        for m in [q, q + 64, 512, 1023, 1030] {
            for k in 0..=256 {
                let x = 2.0 * PI * f64::from(k) / 256.0;
                let v = r_f(x, q, m);
                ensure!(v.is_finite() && (0.0..=1.0).contains(&v), "R_f({x}, {q}, {m}) = {v}");
                probes += 1;
            }
        }
    }
    Ok(format!(
        "{centred} centring cases, counter bits for q ≤ 10, {probes} large-m probes"
    ))
}

fn landscape_c4() -> Outcome {
    let g = Graph::cycle(4).unwrap();
    let l = g.laplacian().unwrap();
    let best = brute_force_maxcut(&g);
    let dense = landscape(&l, 100, EvalMode::Dense).unwrap();
    ensure!(dense.len() == 100, "{} points", dense.len());
    let hits = dense.iter().filter(|p| p.decoded_cut == best).count();
    ensure!(hits > 0, "no point decodes to the maximum cut {best}");

    let shots = 8192;
    let sampled = landscape(&l, 100, EvalMode::PauliSampled { shots, seed: 0 }).unwrap();
    let sum = decompose(&l);
    let layout = logcut_core::AnsatzLayout::new(2, 1).unwrap();
    let scale = 2f64.powi(l.qubits() as i32 - 2);
    let mut worst = 0.0f64;
    for (d, s) in dense.iter().zip(&sampled) {
        ensure!(d.x == s.x, "grids differ");
        let state = prepare(&logcut_core::encode_phases(&[d.x], &layout).unwrap()).unwrap();
        let sigma = scale * sampling_std_error(&sum, &state, shots).unwrap();
        let dev = (s.n_cuts - d.n_cuts).abs();
        if sigma == 0.0 {
            ensure!(dev <= 1e-9, "x={}: zero-variance point differs by {dev}", d.x);
        } else {
            ensure!(
                dev <= 3.0 * sigma,
                "x={}: |sampled − dense| = {dev} > 3σ = {}",
                d.x,
                3.0 * sigma
            );
            worst = worst.max(dev / sigma);
        }
    }
    Ok(format!(
        "{hits}/100 points decode to cut {best}; sampled within {worst:.2}σ of dense"
    ))
}

/// Best decoded cut over `seeds` with default search settings, dense mode.
fn best_quantum_cut(g: &Graph, vars: usize, seeds: &[u64]) -> f64 {
    seeds
        .iter()
        .map(|&s| {
            let sol = solve(
                g,
                &SolveOptions::new(vars, EvalMode::Dense),
                &GaConfig::new(vars).with_seed(s),
            )
            .unwrap();
            edge_cut(g, sol.partition.as_slice())
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn gw_cut(g: &Graph) -> f64 {
    gw_maxcut(g, default_rank(g.num_vertices()), 200, 0).unwrap().cut
}

fn benchmark_32() -> Outcome {
    let mut ratios = Vec::new();
    for seed in 0..5 {
        let g = cubic(32, seed);
        let cut = best_quantum_cut(&g, 8, &[0, 1, 2]);
        let gw = gw_cut(&g);
        let ratio = cut / gw;
        ensure!(cut > 24.0, "graph {seed}: cut {cut} not above the random mean 24");
        ensure!(ratio >= 0.75, "graph {seed}: ratio {cut}/{gw} = {ratio:.3} < 0.75");
        ratios.push(ratio);
    }
    let mut sorted = ratios.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[2];
    ensure!(median >= 0.80, "median ratio {median:.3} < 0.80 ({ratios:.3?})");
    Ok(format!("ratios {ratios:.3?}, median {median:.3}"))
}

fn benchmark_128() -> Outcome {
    let mut ratios = Vec::new();
    for seed in 0..3 {
        let g = cubic(128, seed);
        let cut = best_quantum_cut(&g, 16, &[0]);
        let gw = gw_cut(&g);
        let ratio = cut / gw;
        ensure!(cut > 96.0, "graph {seed}: cut {cut} not above the random mean 96");
        ensure!(ratio >= 0.65, "graph {seed}: ratio {cut}/{gw} = {ratio:.3} < 0.65");
        ratios.push(ratio);
    }
    Ok(format!("ratios {ratios:.3?}"))
}

fn gw_quality() -> Outcome {
    let mut good = 0;
    let mut worst = f64::INFINITY;
    for graph_seed in 0..20 {
        let g = cubic(16, graph_seed);
        let exact = brute_force_maxcut(&g);
        for gw_seed in 0..5 {
            let sol = gw_maxcut(&g, default_rank(16), 200, gw_seed).unwrap();
            ensure!(
                sol.cut <= exact,
                "graph {graph_seed} seed {gw_seed}: gw {} exceeds exact {exact}",
                sol.cut
            );
            ensure!(
                sol.cut == edge_cut(&g, sol.partition.as_slice()),
                "gw cut does not match its partition"
            );
            if sol.cut >= 0.878 * exact {
                good += 1;
            }
            worst = worst.min(sol.cut / exact);
        }
    }
    ensure!(good >= 95, "only {good}/100 pairs reach 0.878 × exact");
    Ok(format!("{good}/100 pairs ≥ 0.878 × exact, worst ratio {worst:.3}"))
}

fn ga_properties() -> Outcome {
    let mut detail = Vec::new();
    for graph_seed in 0..3 {
        let g = cubic(16, graph_seed);
        let exact = brute_force_maxcut(&g);
        ensure!(
            exact == exact_maxcut(&g).unwrap().cut,
            "exact_maxcut disagrees with enumeration"
        );
        let mut good = 0;
        for seed in 0..10 {
            let config = GaConfig::new(8).with_seed(seed);
            let options = SolveOptions::new(8, EvalMode::Dense);
            let a = solve(&g, &options, &config).unwrap();
            let b = solve(&g, &options, &config).unwrap();
            ensure!(a.run == b.run, "graph {graph_seed} seed {seed}: reruns differ");
            ensure!(
                a.run
                    .best_xs
                    .iter()
                    .zip(&b.run.best_xs)
                    .all(|(x, y)| x.to_bits() == y.to_bits()),
                "graph {graph_seed} seed {seed}: best_xs not bitwise equal"
            );
            ensure!(
                a.run.history.windows(2).all(|w| w[0] <= w[1]),
                "graph {graph_seed} seed {seed}: history decreases"
            );
            let budget = config.population * (config.max_iterations + 1);
            ensure!(
                a.run.evaluations <= budget && a.objective_calls as usize == a.run.evaluations,
                "graph {graph_seed} seed {seed}: {} evaluations over budget {budget}",
                a.run.evaluations
            );
            if edge_cut(&g, a.partition.as_slice()) >= 0.9 * exact {
                good += 1;
            }
        }
        ensure!(
            good >= 8,
            "graph {graph_seed}: only {good}/10 seeds reach 0.9 × {exact}"
        );
        detail.push(format!("{good}/10"));
    }
    Ok(format!(
        "deterministic, monotone, in budget; ≥0.9×exact on {}",
        detail.join(", ")
    ))
}

fn shot_noise() -> Outcome {
    let g = cubic(16, 3);
    let l = g.laplacian().unwrap();
    let sum = decompose(&l);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let turns: Vec<f64> = (0..16).map(|_| rng.gen_range(0.0..2.0)).collect();
    let state = prepare(&PhaseVector::from_turns(&turns)).unwrap();
    let exact = expectation_exact(&sum, &state).unwrap();

    let runs = 100;
    let mut points = Vec::new();
    let mut bias_worst = 0.0f64;
    for k in 6..=13u32 {
        let shots = 1u32 << k;
        let values: Vec<f64> = (0..runs)
            .map(|seed| {
                expectation_sampled(&sum, &state, shots, 1000 * u64::from(k) + seed)
                    .unwrap()
                    .value
            })
            .collect();
        let mean = values.iter().sum::<f64>() / runs as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
        let se = sampling_std_error(&sum, &state, shots).unwrap() / (runs as f64).sqrt();
        let z = (mean - exact).abs() / se;
        ensure!(z <= 3.0, "shots {shots}: mean {mean} is {z:.2} SE from exact {exact}");
        bias_worst = bias_worst.max(z);
        points.push((f64::from(shots).ln(), var.ln()));
    }
    let n = points.len() as f64;
    let (mx, my) = (
        points.iter().map(|p| p.0).sum::<f64>() / n,
        points.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    ensure!((slope + 1.0).abs() <= 0.2, "log-log variance slope {slope:.3}");
    Ok(format!("means within {bias_worst:.2} SE, variance slope {slope:.3}"))
}

fn gate_counts() -> Outcome {
    for n in 1..=20u32 {
        let c = gate_count_estimate(n).unwrap();
        let p = 1i128 << n;
        let n = i128::from(n);
        ensure!(i128::from(c.cnot) == p - 2, "n={n}: cnot {}", c.cnot);
        ensure!(i128::from(c.single) == p - 2 * n + 5, "n={n}: single {}", c.single);
        ensure!(i128::from(c.total) == 2 * p - 2 * n + 3, "n={n}: total {}", c.total);
        ensure!(c.total == c.cnot + c.single, "n={n}: total is not cnot + single");
    }
    Ok("n = 1..20".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // `cargo test -- --list` and similar probes pass flags; nothing to list.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "quantum/classical cut equivalence",
            budget: secs(30),
            run: equivalence,
        },
        Criterion {
            id: 2,
            name: "Pauli round trip and odd-Y vanishing",
            budget: secs(30),
            run: pauli_round_trip,
        },
        Criterion {
            id: 3,
            name: "relaxation function contract",
            budget: secs(5),
            run: relaxation,
        },
        Criterion {
            id: 4,
            name: "C4 landscape, dense and 8192-shot",
            budget: secs(60),
            run: landscape_c4,
        },
        Criterion {
            id: 5,
            name: "32-node benchmark against GW",
            budget: secs(600),
            run: benchmark_32,
        },
        Criterion {
            id: 6,
            name: "128-node benchmark against GW",
            budget: secs(1800),
            run: benchmark_128,
        },
        Criterion {
            id: 7,
            name: "GW quality on 16-node graphs",
            budget: secs(300),
            run: gw_quality,
        },
        Criterion {
            id: 8,
            name: "genetic search properties",
            budget: secs(300),
            run: ga_properties,
        },
        Criterion {
            id: 9,
            name: "shot-noise statistics",
            budget: secs(300),
            run: shot_noise,
        },
        Criterion {
            id: 10,
            name: "gate-count formulas",
            budget: secs(1),
            run: gate_counts,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; took {elapsed:.1?}, budget {:?}", c.budget)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2}  {}: {detail} [{elapsed:.2?}]", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {}: {why} [{elapsed:.2?}]", c.id, c.name);
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
