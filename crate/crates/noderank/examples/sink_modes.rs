//! The two sink-handling modes side by side on the worked example.
//!
//! `UniformTeleport` treats a sink as linking uniformly to every node and
//! conserves rank mass; `PaperLiteral` applies the sink term to sink rows
//! exactly as typeset and relies on per-step normalization. The rounded
//! fatigued matrix below reproduces the published r1/r10 trajectory under
//! the literal mode.

use noderank::centrality::{power_iterate, RankingConfig, SinkMode, TransitionMatrix};

fn main() -> noderank::Result<()> {
    let rounded_fatigued = TransitionMatrix::from_dense(&[
        vec![0.00, 0.0, 0.0, 0.0, 0.0],
        vec![0.71, 0.0, 0.0, 0.0, 0.0],
        vec![0.29, 1.0, 0.0, 1.0, 0.0],
        vec![0.00, 0.0, 0.0, 0.0, 0.0],
        vec![0.00, 0.0, 1.0, 0.0, 0.0],
    ])?;

    for mode in [SinkMode::PaperLiteral, SinkMode::UniformTeleport] {
        println!("sink mode: {mode:?}");
        println!("  r0  = [0.200 0.200 0.200 0.200 0.200]");
        for iterations in [1usize, 2, 5, 10] {
            let cfg = RankingConfig {
                sink_mode: mode,
                epsilon: 1e-300, // run exactly `iterations` steps
                max_iterations: iterations,
                ..RankingConfig::default()
            };
            let (r, _) = power_iterate(&rounded_fatigued, &cfg, 1)?;
            let cells: Vec<String> = r.iter().map(|v| format!("{v:.3}")).collect();
            println!("  r{iterations:<3}= [{}]", cells.join(" "));
        }
        let cfg = RankingConfig {
            sink_mode: mode,
            epsilon: 1e-12,
            max_iterations: 10_000,
            ..RankingConfig::default()
        };
        let (stationary, report) = power_iterate(&rounded_fatigued, &cfg, 1)?;
        let cells: Vec<String> = stationary.iter().map(|v| format!("{v:.3}")).collect();
        println!(
            "  stationary after {} iterations: [{}]\n",
            report.iterations_used,
            cells.join(" ")
        );
    }
    Ok(())
}
