use maghom::ai_complex::verify_ai_correspondence;
use maghom::graph::{diameter, is_pawful, Graph};
use maghom::mag_homology::{is_diagonal_up_to, magnitude_chain_complex, HomologyOptions};
use maghom::magnitude::{euler_check, magnitude_rational, magnitude_series};
use maghom::matching::{
    build_matching, build_pawful_s, check_star_property, default_selectors, parse_s,
    search_s_structure, serialize_s, verify_s_structure, Precedence, SStructure, SearchOutcome,
    StarProperty,
};
use maghom::morse::{is_acyclic, morse_rank_check, verify_matching};
use maghom::snf::{smith, SparseMatrix};
use proptest::prelude::*;

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            let extra = prop::collection::vec(any::<bool>(), n * (n - 1) / 2);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i + 1))
                .collect();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if extra[k] && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
}

fn opts() -> HomologyOptions {
    HomologyOptions::default()
}

fn matchings_are_acyclic(g: &Graph, s: &SStructure, ell: usize) -> Result<(), TestCaseError> {
    for a in g.vertices() {
        for b in g.vertices() {
            let built = build_matching(g, a, b, ell, s, Precedence::TripleFirst).unwrap();
            prop_assert!(verify_matching(&built.poset, &built.matching).is_ok());
            prop_assert!(is_acyclic(&built.poset, &built.matching));
            prop_assert!(morse_rank_check(g, a, b, ell, &built.matching).holds(ell));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_matches_rational_function(g in connected_graph(7)) {
        let f = magnitude_rational(&g).unwrap();
        let taylor = f.taylor(8).unwrap();
        prop_assert_eq!(taylor, magnitude_series(&g, 8).coeffs);
    }

    #[test]
    fn euler_characteristic(g in connected_graph(6)) {
        for row in euler_check(&g, 3, &opts()).unwrap() {
            prop_assert!(row.holds(), "{:?}", row);
        }
    }

    #[test]
    fn boundary_squares_to_zero(g in connected_graph(6), ell in 0usize..=4) {
        let c = magnitude_chain_complex(&g, ell, None, &opts()).unwrap();
        prop_assert_eq!(c.complex.squares_to_zero(), Some(true));
    }

    #[test]
    fn correspondence_on_random_graphs(g in connected_graph(5), ell in 3usize..=4) {
        for a in g.vertices() {
            for b in g.vertices() {
                let r = verify_ai_correspondence(&g, a, b, ell, &opts()).unwrap();
                prop_assert!(r.holds(), "({}, {}): {:?}", a, b, r.rows);
            }
        }
    }

    #[test]
    fn pawful_graphs_carry_certificates(g in connected_graph(6)) {
        prop_assume!(is_pawful(&g).verdict);
        prop_assert_eq!(check_star_property(&g).unwrap(), StarProperty::Holds);
        let s = build_pawful_s(&g, &default_selectors(&g).unwrap());
        prop_assert_eq!(verify_s_structure(&g, &s), Ok(()));
        prop_assert!(matches!(search_s_structure(&g, 1_000_000).unwrap(), SearchOutcome::Found(_)));
        matchings_are_acyclic(&g, &s, 3)?;
        matchings_are_acyclic(&g, &s, 4)?;
    }

    #[test]
    fn found_certificates_give_acyclic_matchings(g in connected_graph(6)) {
        prop_assume!(diameter(&g) <= 2);
        if let SearchOutcome::Found(s) = search_s_structure(&g, 1_000_000).unwrap() {
            prop_assert_eq!(verify_s_structure(&g, &s), Ok(()));
            let back = parse_s(&serialize_s(&s), &g).unwrap();
            prop_assert_eq!(&back.quads, &s.quads);
            prop_assert_eq!(&back.triples, &s.triples);
            matchings_are_acyclic(&g, &s, 3)?;
            prop_assert!(is_diagonal_up_to(&g, 4, &opts()).unwrap());
        }
    }

    #[test]
    fn rank_is_transpose_invariant(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 6), 1..8)) {
        let t: Vec<Vec<i64>> = (0..6).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        let a = smith(&SparseMatrix::from_dense(&rows));
        let b = smith(&SparseMatrix::from_dense(&t));
        prop_assert_eq!(a, b);
    }
}
