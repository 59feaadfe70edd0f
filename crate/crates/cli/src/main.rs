//! `qtsp` — drive the simulator from the command line.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qtsp_core::grover::{
    benchmark_complexity_report, build_encoding, complexity_report, run_fixed, Capacity, ComplexityRow, MinSearch,
    MinSearchOutcome, SearchConfig,
};
use qtsp_core::hcg::{build_hcg, HcgLayout};
use qtsp_core::statevec::{total_gates, StateVector};
use qtsp_core::tsp::fixtures::{benchmark_graph, default_value_bits};
use qtsp_core::tsp::{enumerate_hcs, is_hamiltonian_cycle, optimal_tours, EncodingParams, Graph};

const MAX_QUBITS_ENV: &str = "QTSP_MAX_QUBITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Prepare the cycle superposition, verify it, and sample the index registers.
    HcgOnly,
    /// Also write tour weights into the value register and verify them.
    Encode,
    /// Encoding plus a fixed number of searching modules.
    Fixed,
    /// Threshold-descent minimum search.
    Minsearch,
    /// Qubit and gate counts, without simulation.
    Report,
}

#[derive(Debug, Parser)]
#[command(name = "qtsp", version, about = "Grover-based travelling-salesman search on an exact statevector")]
struct Args {
    #[arg(long, value_enum)]
    mode: Mode,

    /// Graph file: node count, then one row of weights per node.
    #[arg(long, conflicts_with = "instance")]
    graph: Option<PathBuf>,

    /// Bundled benchmark instance (1-7) instead of a file.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
    instance: Option<u8>,

    /// Value-register width M (default: 5, or 6 for 8 nodes).
    #[arg(long)]
    value_bits: Option<usize>,

    /// Threshold C_T; tours strictly cheaper are marked (default: optimum + 1).
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<i64>,

    /// Searching modules applied in fixed mode.
    #[arg(long, default_value_t = 0)]
    iterations: usize,

    #[arg(long, default_value_t = 1000)]
    shots: u64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Permit simulations of 24 qubits or more.
    #[arg(long)]
    allow_large: bool,

    /// Independent minimum-search runs (seeds seed, seed+1, ...); the best result wins.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    repeat: u32,

    /// Write CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(args: &Args) -> AnyResult<()> {
    let capacity = capacity(args)?;
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    if args.mode == Mode::Report {
        let rows = match load_graph(args)? {
            Some(graph) => {
                let params = params_for(args, &graph)?;
                complexity_report(&[(graph, params.value_bits(), params.threshold())])?
            }
            None => benchmark_complexity_report(4..=8)?,
        };
        write_report(&mut out, &rows)?;
        return Ok(out.flush()?);
    }

    let graph = load_graph(args)?.ok_or("--graph or --instance is required for this mode")?;
    let params = params_for(args, &graph)?;
    capacity.check(params.total_qubits())?;
    let config = SearchConfig {
        iterations: args.iterations,
        shots: args.shots,
        seed: args.seed,
        capacity,
        ..SearchConfig::default()
    };
    config.validate()?;
    eprintln!(
        "{} nodes, {} qubits (M = {}, C_T = {})",
        graph.n(),
        params.total_qubits(),
        params.value_bits(),
        params.threshold()
    );

    match args.mode {
        Mode::HcgOnly | Mode::Encode => {
            let state = prepare_and_verify(&graph, &params, args.mode == Mode::Encode)?;
            let raw = state.sample(args.shots, args.seed)?;
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for (basis, n) in raw {
                *counts.entry(basis & params.index_mask()).or_default() += n;
            }
            write_histogram(&mut out, &graph, &params, &counts)?;
        }
        Mode::Fixed => {
            let report = run_fixed(&graph, &params, &config)?;
            let counts: BTreeMap<usize, u64> =
                report.histogram.iter().map(|(regs, &n)| (params.encode_registers(regs), n)).collect();
            write_histogram(&mut out, &graph, &params, &counts)?;
            eprintln!(
                "iterations {}, gates {}, optimal weight {}, invalid shots {}",
                report.iterations_used,
                total_gates(&report.gate_counts),
                report.optimal_weight,
                report.invalid_shots
            );
            eprintln!("optimal_fraction {:.3}", report.optimal_fraction);
            if report.invalid_shots > 0 {
                return Err(format!("{} shots decoded to non-cycles", report.invalid_shots).into());
            }
        }
        Mode::Minsearch => {
            let mut search = MinSearch::new(&graph, params.value_bits(), config)?;
            let mut outcomes = Vec::new();
            for r in 0..u64::from(args.repeat) {
                let seed = args.seed.wrapping_add(r);
                outcomes.push((seed, search.run(seed)?));
            }
            write_minsearch(&mut out, &outcomes)?;
            let (seed, best) = outcomes.iter().min_by_key(|(_, o)| o.best.weight).expect("at least one run");
            eprintln!("best tour {} weight {} (seed {seed})", best.best.tour, best.best.weight);
            let invalid: usize = outcomes.iter().map(|(_, o)| o.invalid_measurements).sum();
            if invalid > 0 {
                return Err(format!("{invalid} measurements decoded to non-cycles").into());
            }
        }
        Mode::Report => unreachable!("handled above"),
    }
    Ok(out.flush()?)
}

fn capacity(args: &Args) -> AnyResult<Capacity> {
    let mut cap = Capacity::default().allow_large(args.allow_large);
    if let Ok(raw) = std::env::var(MAX_QUBITS_ENV) {
        let limit: usize = raw.trim().parse().map_err(|_| format!("{MAX_QUBITS_ENV}={raw:?} is not a qubit count"))?;
        cap = cap.lower_ceiling(limit);
    }
    Ok(cap)
}

fn load_graph(args: &Args) -> AnyResult<Option<Graph>> {
    Ok(match (&args.graph, args.instance) {
        (Some(path), _) => Some(Graph::from_file(path)?),
        (None, Some(k)) => Some(benchmark_graph(usize::from(k))),
        (None, None) => None,
    })
}

fn params_for(args: &Args, graph: &Graph) -> AnyResult<EncodingParams> {
    let bits = args.value_bits.unwrap_or_else(|| default_value_bits(graph.n()));
    let threshold = match args.threshold {
        Some(c) => c,
        None => optimal_tours(graph)?.0 + 1,
    };
    Ok(EncodingParams::new(graph, bits, threshold)?)
}

/// Simulates HCg (and the value encoding when `encode`), then checks the
/// result against the classical enumeration.
fn prepare_and_verify(graph: &Graph, params: &EncodingParams, encode: bool) -> AnyResult<StateVector> {
    let mut state = StateVector::new(params.total_qubits())?;
    let layout = HcgLayout::borrowed(params)?;
    state.apply_circuit(&build_hcg(&layout)?)?;
    let tours = enumerate_hcs(graph.n())?;
    let expected_amp = 1.0 / (tours.len() as f64).sqrt();

    let support: BTreeSet<usize> = tours.iter().map(|t| params.encode_tour(t)).collect::<Result<_, _>>()?;
    let outside = state.probability_where(|i| !support.contains(&i));
    if outside > 1e-9 {
        return Err(format!("cycle superposition leaks probability {outside:e} onto non-cycles").into());
    }
    if let Some(&i) = support.iter().find(|&&i| (state.amplitude(i).norm() - expected_amp).abs() > 1e-7) {
        return Err(format!("basis state {i} has amplitude {} (expected {expected_amp})", state.amplitude(i)).into());
    }
    if !encode {
        return Ok(state);
    }

    let mut encoded = StateVector::new(params.total_qubits())?;
    encoded.apply_circuit(&build_encoding(graph, params)?)?;
    for t in &tours {
        let src = state.amplitude(params.encode_tour(t)?);
        let dst = encoded.amplitude(params.encode_with_value(t.successor(), t.weight(graph) - params.threshold()));
        let fidelity = (src.conj() * dst).norm_sqr() / src.norm_sqr().powi(2);
        if (fidelity - 1.0).abs() > 1e-9 {
            return Err(format!("tour {t}: value register fidelity {fidelity}").into());
        }
    }
    eprintln!("verified {} cycles and their weight differences", tours.len());
    Ok(encoded)
}

fn write_histogram(
    out: &mut dyn Write,
    graph: &Graph,
    params: &EncodingParams,
    counts: &BTreeMap<usize, u64>,
) -> AnyResult<()> {
    let mut rows: Vec<(usize, u64)> = counts.iter().map(|(&b, &n)| (b, n)).collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["basis_index", "successor_array", "is_hc", "weight", "count"])?;
    for (basis, count) in rows {
        let (regs, _) = params.decode_basis(basis);
        let hc = is_hamiltonian_cycle(&regs);
        let weight = if hc {
            regs.iter().enumerate().map(|(i, &j)| i64::from(graph.weight(i, j))).sum::<i64>().to_string()
        } else {
            String::new()
        };
        let succ = regs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        w.write_record([basis.to_string(), succ, hc.to_string(), weight, count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn write_minsearch(out: &mut dyn Write, outcomes: &[(u64, MinSearchOutcome)]) -> AnyResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["seed", "best_tour", "best_weight", "thresholds", "modules", "rounds", "invalid"])?;
    for (seed, o) in outcomes {
        let succ = o.best.tour.successor().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        let thresholds = o.thresholds.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
        w.write_record([
            seed.to_string(),
            succ,
            o.best.weight.to_string(),
            thresholds,
            o.modules_executed.to_string(),
            o.rounds.to_string(),
            o.invalid_measurements.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_report(out: &mut dyn Write, rows: &[ComplexityRow]) -> AnyResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n",
        "m",
        "value_bits",
        "qubits",
        "hcg_gates",
        "encoding_gates",
        "searching_gates",
        "weight_blocks",
        "threshold",
        "marked",
        "total_cycles",
    ])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.m.to_string(),
            r.value_bits.to_string(),
            r.qubits.to_string(),
            r.hcg_gates.to_string(),
            r.encoding_gates.to_string(),
            r.searching_gates.to_string(),
            r.weight_blocks.to_string(),
            r.threshold.to_string(),
            r.marked.to_string(),
            r.total_cycles.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
