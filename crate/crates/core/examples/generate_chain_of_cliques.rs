//! Builds a chain of cliques and prints its planted-partition modularity.
//!
//! ```text
//! cargo run --example generate_chain_of_cliques -- "{100,50,25,15,10}"
//! ```

use ucd::metrics::modularity;
use ucd::synthgen::{apply_adjustment, generate_chain_of_cliques, AdjustmentOp, CommunitySpec};

fn main() -> ucd::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "{100,50,25,15,10}".into());
    let spec: CommunitySpec = arg.parse()?;
    let (g, planted) = generate_chain_of_cliques(&spec);
    println!(
        "{spec}: {} nodes, {} links, planted Q = {:.4}",
        g.node_count(),
        g.edge_count(),
        modularity(&g, &planted)?
    );
    for op in AdjustmentOp::ALL {
        match apply_adjustment(&spec, op) {
            Ok(adj) => println!(
                "  {:<28} sizes {:?}, Q of the new planted partition = {:.4}",
                op.label(),
                adj.sizes,
                modularity(&adj.graph, &adj.new_partition)?
            ),
            Err(e) => println!("  {:<28} not applicable: {e}", op.label()),
        }
    }
    Ok(())
}
