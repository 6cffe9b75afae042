use maghom::fixtures;
use maghom::graph::{parse_graph6_line, Graph};
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::graph6::{FromGraph6, ToGraph6};
use proptest::prelude::*;

fn to_petgraph(g: &Graph) -> UnGraph<(), ()> {
    let mut p = UnGraph::with_capacity(g.vertex_count(), g.edge_count());
    for _ in g.vertices() {
        p.add_node(());
    }
    for &(u, v) in g.edges() {
        p.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
    }
    p
}

fn edge_set(p: &UnGraph<(), ()>) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = p
        .edge_indices()
        .map(|e| {
            let (a, b) = p.edge_endpoints(e).unwrap();
            (a.index().min(b.index()), a.index().max(b.index()))
        })
        .collect();
    e.sort();
    e
}

fn sorted_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = g
        .edges()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    e.sort();
    e
}

fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..70)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (
                Just(n),
                parents,
                prop::collection::vec(any::<(u16, u16)>(), 0..3 * n),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            for (a, b) in extra {
                let (u, v) = (a as usize % n, b as usize % n);
                let e = (u.min(v), u.max(v));
                if u != v && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                    edges.push(e);
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

#[test]
fn fixtures_agree_with_petgraph() {
    for g in [
        fixtures::g1(),
        fixtures::g2(),
        fixtures::g3(),
        fixtures::complete(5),
    ] {
        let ours = g.to_graph6();
        assert_eq!(ours, to_petgraph(&g).graph6_string());
        let back = UnGraph::<(), ()>::from_graph6_string(ours);
        assert_eq!(edge_set(&back), sorted_edges(&g));
    }
}

#[test]
fn shipped_stream() {
    let text = include_str!("../../../fixtures/examples.g6");
    let graphs: Vec<Graph> = text
        .lines()
        .map(|l| parse_graph6_line(l).unwrap())
        .collect();
    assert_eq!(sorted_edges(&graphs[0]), sorted_edges(&fixtures::g1()));
    assert_eq!(sorted_edges(&graphs[1]), sorted_edges(&fixtures::g2()));
    assert_eq!(sorted_edges(&graphs[2]), sorted_edges(&fixtures::g3()));
}

proptest! {
    #[test]
    fn encoder_matches_petgraph(g in connected_graph()) {
        prop_assert_eq!(g.to_graph6(), to_petgraph(&g).graph6_string());
    }

    #[test]
    fn decoder_matches_petgraph(g in connected_graph()) {
        let s = to_petgraph(&g).graph6_string();
        let ours = parse_graph6_line(&s).unwrap();
        let theirs = UnGraph::<(), ()>::from_graph6_string(s);
        prop_assert_eq!(sorted_edges(&ours), edge_set(&theirs));
    }
}
