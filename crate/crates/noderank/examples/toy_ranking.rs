//! Every ranking metric on the five-node worked-example graph: two source
//! nodes (1, 4), one sink (5), and a heavily linked hub (3).

use noderank::centrality::{
    fatigue_vector, fatigued_pagerank, fatigued_transition_matrix, hits, indegree_score, pagerank,
    reverse_pagerank, transition_matrix, RankingConfig,
};
use noderank::graph::build_graph;

fn main() -> noderank::Result<()> {
    let graph = build_graph([
        ("1", "2", None),
        ("1", "3", None),
        ("2", "3", None),
        ("3", "5", None),
        ("4", "3", None),
    ])?;
    let labels: Vec<&str> = ["1", "2", "3", "4", "5"].to_vec();
    let id = |l: &str| graph.node_id(l).unwrap();

    println!("transition matrix H (rows/columns in label order):");
    let h = transition_matrix(&graph);
    for i in &labels {
        let row: Vec<String> = labels
            .iter()
            .map(|j| format!("{:5.2}", h.get(id(i), id(j))))
            .collect();
        println!("  [{}]", row.join(" "));
    }
    let sinks: Vec<u8> = labels.iter().map(|l| h.is_sink(id(l)) as u8).collect();
    println!("  sink mask a = {sinks:?}");

    let k = fatigue_vector(&graph, 0.1)?;
    let kv: Vec<String> = labels.iter().map(|l| format!("{:.4}", k.get(id(l)))).collect();
    println!("\nfatigue vector k* (beta = 0.1): [{}]", kv.join(", "));

    println!("\nfatigued H' (columns renormalized after the k* reweighting):");
    let hp = fatigued_transition_matrix(&graph, 0.1)?;
    for i in &labels {
        let row: Vec<String> = labels
            .iter()
            .map(|j| format!("{:5.2}", hp.get(id(i), id(j))))
            .collect();
        println!("  [{}]", row.join(" "));
    }

    let cfg = RankingConfig {
        epsilon: 1e-12,
        ..RankingConfig::default()
    };
    let (pr, _) = pagerank(&graph, &cfg)?;
    let (rpr, _) = reverse_pagerank(&graph, &cfg)?;
    let (fpr, _) = fatigued_pagerank(&graph, &cfg)?;
    let (auth, hub, _) = hits(&graph, 1e-12, 10_000)?;
    let deg = indegree_score(&graph);

    println!("\nnode  indegree  pagerank  reverse-pr  fatigued-pr  authority  hub");
    for l in &labels {
        println!(
            "  {l}   {:7}  {:8.4}  {:10.4}  {:11.4}  {:9.4}  {:5.3}",
            deg.get(id(l)) as u64,
            pr.get(id(l)),
            rpr.get(id(l)),
            fpr.get(id(l)),
            auth.get(id(l)),
            hub.get(id(l)),
        );
    }
    println!(
        "\nfatigue shifts rank mass off the hub (node 3): {:.4} -> {:.4}",
        pr.get(id("3")),
        fpr.get(id("3"))
    );
    Ok(())
}
