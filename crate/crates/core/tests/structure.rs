mod common;

use common::{
    apsp, is_caterpillar_oracle, is_lobster_oracle, is_tree_oracle, radius_oracle,
    random_caterpillar, random_forest, random_graph, random_lobster, random_tree, rng,
};
use rand::Rng;
use starpcg::structure::{classify_tree, radius_and_centers, TreeTag};
use starpcg::Graph;

#[test]
fn radius_and_centers_match_all_pairs_distances() {
    let mut r = rng(41);
    for _ in 0..300 {
        let n = r.gen_range(1..=14);
        let g = match r.gen_range(0..3) {
            0 => random_graph(&mut r, n, 0.3),
            1 => random_tree(&mut r, n),
            _ => random_forest(&mut r, n),
        };
        let info = radius_and_centers(&g);
        assert_eq!(info.radius, radius_oracle(&g), "{g:?}");
        let d = apsp(&g);
        for comp in &info.centers {
            let ecc = |u: usize| (0..n).filter_map(|v| d[u][v]).max().unwrap_or(0);
            let best = comp.iter().map(|&c| ecc(c)).min().unwrap();
            assert!(comp.iter().all(|&c| ecc(c) == best));
            // Every vertex of the component with that eccentricity is a center.
            let members: Vec<usize> = (0..n).filter(|&v| d[comp[0]][v].is_some()).collect();
            let expected: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&v| ecc(v) == best)
                .collect();
            assert_eq!(comp, &expected);
        }
    }
}

#[test]
fn classification_matches_leaf_deletion() {
    let mut r = rng(42);
    for _ in 0..600 {
        let n = r.gen_range(1..=16);
        let g = match r.gen_range(0..5) {
            0 => random_caterpillar(&mut r, n),
            1 => random_lobster(&mut r, n),
            2 => random_tree(&mut r, n),
            3 => random_forest(&mut r, n),
            _ => random_graph(&mut r, n, 0.2),
        };
        let tag = classify_tree(&g).tag;
        let tree = is_tree_oracle(&g) && g.n() >= 2;
        assert_eq!(tag.is_tree(), tree, "{g:?} {tag:?}");
        if tree {
            assert_eq!(tag.is_caterpillar(), is_caterpillar_oracle(&g), "{g:?}");
            assert_eq!(tag.is_lobster(), is_lobster_oracle(&g), "{g:?}");
            let path = (0..g.n()).all(|v| g.degree(v) <= 2);
            assert_eq!(tag == TreeTag::Path, path);
        }
        assert_eq!(
            tag == TreeTag::NotAcyclic,
            g.edge_count() + g.components().len() != g.n()
        );
    }
}

#[test]
fn named_examples() {
    assert_eq!(
        classify_tree(&Graph::cycle(5).unwrap()).tag,
        TreeTag::NotAcyclic
    );
    assert_eq!(
        classify_tree(&Graph::spider(&[2, 2, 2]).unwrap()).tag,
        TreeTag::Lobster
    );
    assert_eq!(
        classify_tree(&Graph::spider(&[3, 3, 3]).unwrap()).tag,
        TreeTag::Tree
    );
    assert_eq!(
        classify_tree(&Graph::star(4).unwrap()).tag,
        TreeTag::Caterpillar
    );
    assert_eq!(radius_and_centers(&Graph::path(7).unwrap()).radius, 3);
}
