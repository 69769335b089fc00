//! Reading graphs from edge lists and graph6, and enumerating connected
//! induced subgraphs.

use blowup_spectra::graph::{encode_graph6, enumerate_connected_subsets, parse_edge_list, parse_graph6, Graph};

fn main() -> blowup_spectra::Result<()> {
    let text = "\
# the path 0 - 1 - 2 - 3
n 4
0 1
1 2
2 3
";
    let p4 = parse_edge_list(text)?;
    println!("edge list -> {} vertices, edges {:?}", p4.n(), p4.edges());
    println!("graph6 of P4: {}", encode_graph6(&p4));

    let petersen = Graph::petersen();
    let g6 = encode_graph6(&petersen);
    assert_eq!(parse_graph6(&g6)?, petersen);
    println!("graph6 of the Petersen graph: {g6}");

    let subsets: Vec<_> = enumerate_connected_subsets(&p4).map(|s| s.vertices()).collect();
    println!("{} connected induced subgraphs of P4:", subsets.len());
    for s in subsets {
        println!("  {s:?}");
    }
    let count = enumerate_connected_subsets(&petersen).count();
    println!("the Petersen graph has {count} connected vertex subsets");

    if let Err(e) = parse_graph6("B!") {
        println!("rejected bad input: {e}");
    }
    Ok(())
}
