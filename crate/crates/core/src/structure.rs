//! Structural queries: eccentricity, radius, centers and tree-family
//! classification.

use crate::graph::{Graph, Vertex};

/// Radius and per-component centers of a graph.
///
/// For a disconnected graph the radius is the maximum over components of
/// each component's radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusInfo {
    pub radius: usize,
    /// Centers (minimum-eccentricity vertices) of each component, components
    /// ordered by smallest vertex.
    pub centers: Vec<Vec<Vertex>>,
}

pub fn radius_and_centers(g: &Graph) -> RadiusInfo {
    let mut radius = 0;
    let mut centers = Vec::new();
    for comp in g.components() {
        let ecc: Vec<usize> = comp
            .iter()
            .map(|&v| g.bfs_distances(v).into_iter().flatten().max().unwrap_or(0))
            .collect();
        let min = *ecc.iter().min().expect("components are non-empty");
        radius = radius.max(min);
        centers.push(
            comp.iter()
                .zip(&ecc)
                .filter(|(_, &e)| e == min)
                .map(|(&v, _)| v)
                .collect(),
        );
    }
    RadiusInfo { radius, centers }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeTag {
    Path,
    Caterpillar,
    Lobster,
    Tree,
    Forest,
    NotAcyclic,
}

impl TreeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TreeTag::Path => "path",
            TreeTag::Caterpillar => "caterpillar",
            TreeTag::Lobster => "lobster",
            TreeTag::Tree => "tree",
            TreeTag::Forest => "forest",
            TreeTag::NotAcyclic => "not_acyclic",
        }
    }

    /// Whether a graph with this tag is also a caterpillar.
    pub fn is_caterpillar(self) -> bool {
        matches!(self, TreeTag::Path | TreeTag::Caterpillar)
    }

    pub fn is_lobster(self) -> bool {
        self.is_caterpillar() || self == TreeTag::Lobster
    }

    pub fn is_tree(self) -> bool {
        self.is_lobster() || self == TreeTag::Tree
    }

    pub fn is_forest(self) -> bool {
        self != TreeTag::NotAcyclic
    }
}

/// Most specific tree family of a graph; `spine` is set for paths,
/// caterpillars and lobsters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeClass {
    pub tag: TreeTag,
    pub spine: Option<Vec<Vertex>>,
}

pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + g.components().len() == g.n()
}

pub fn classify_tree(g: &Graph) -> TreeClass {
    let plain = |tag| TreeClass { tag, spine: None };
    if !is_forest(g) {
        return plain(TreeTag::NotAcyclic);
    }
    // Edgeless graphs (including K1) are reported as forests.
    if g.components().len() != 1 || g.n() < 2 {
        return plain(TreeTag::Forest);
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    if let Some(order) = path_order(g, &all) {
        return TreeClass {
            tag: TreeTag::Path,
            spine: Some(order),
        };
    }
    if let Some(spine) = caterpillar_spine(g, &all) {
        return TreeClass {
            tag: TreeTag::Caterpillar,
            spine: Some(spine),
        };
    }
    let core: Vec<Vertex> = all.iter().copied().filter(|&v| g.degree(v) > 1).collect();
    if let Some(spine) = caterpillar_spine(g, &core) {
        return TreeClass {
            tag: TreeTag::Lobster,
            spine: Some(spine),
        };
    }
    plain(TreeTag::Tree)
}

/// Degree of `v` inside the vertex subset `within`.
fn degree_in(g: &Graph, v: Vertex, within: u64) -> usize {
    (g.neighbor_mask(v) & within).count_ones() as usize
}

fn mask_of(vertices: &[Vertex]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

/// If the subgraph induced by `vertices` (assumed a tree) is a path, returns
/// its vertices in path order starting from the smaller-index endpoint.
fn path_order(g: &Graph, vertices: &[Vertex]) -> Option<Vec<Vertex>> {
    let within = mask_of(vertices);
    if vertices.len() == 1 {
        return Some(vertices.to_vec());
    }
    if vertices.iter().any(|&v| degree_in(g, v, within) > 2) {
        return None;
    }
    let start = *vertices.iter().find(|&&v| degree_in(g, v, within) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .find(|&u| within >> u & 1 == 1 && u != prev);
        match next {
            Some(u) => {
                order.push(u);
                prev = cur;
                cur = u;
            }
            None => break,
        }
    }
    (order.len() == vertices.len()).then_some(order)
}

/// If the tree induced by `vertices` is a caterpillar, returns its spine: the
/// vertices of degree at least 2 (within the subset) in path order. Trees
/// without such vertices (K1, K2) use all their vertices as the spine.
fn caterpillar_spine(g: &Graph, vertices: &[Vertex]) -> Option<Vec<Vertex>> {
    if vertices.is_empty() {
        return None;
    }
    let within = mask_of(vertices);
    let inner: Vec<Vertex> = vertices
        .iter()
        .copied()
        .filter(|&v| degree_in(g, v, within) >= 2)
        .collect();
    if inner.is_empty() {
        return path_order(g, vertices);
    }
    path_order(g, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        let p5 = Graph::path(5).unwrap();
        assert_eq!(
            radius_and_centers(&p5),
            RadiusInfo {
                radius: 2,
                centers: vec![vec![2]]
            }
        );
        let spider = Graph::spider(&[2, 2, 2]).unwrap();
        let r = radius_and_centers(&spider);
        assert_eq!(r.radius, 2);
        assert_eq!(r.centers, vec![vec![0]]);
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(
            radius_and_centers(&k1),
            RadiusInfo {
                radius: 0,
                centers: vec![vec![0]]
            }
        );
    }

    #[test]
    fn radius_of_disconnected_is_max_over_components() {
        // P2 + P5
        let g = Graph::from_edges(7, [(0, 1), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        let r = radius_and_centers(&g);
        assert_eq!(r.radius, 2);
        assert_eq!(r.centers, vec![vec![0, 1], vec![4]]);
    }

    #[test]
    fn classify_examples() {
        let p6 = Graph::path(6).unwrap();
        let c = classify_tree(&p6);
        assert_eq!(c.tag, TreeTag::Path);
        assert_eq!(c.spine, Some(vec![0, 1, 2, 3, 4, 5]));

        let spider = Graph::spider(&[2, 2, 2]).unwrap();
        let c = classify_tree(&spider);
        assert_eq!(c.tag, TreeTag::Lobster);
        assert_eq!(c.spine, Some(vec![0]));

        assert_eq!(
            classify_tree(&Graph::cycle(5).unwrap()).tag,
            TreeTag::NotAcyclic
        );
        assert_eq!(
            classify_tree(&Graph::empty(3).unwrap()).tag,
            TreeTag::Forest
        );
        assert_eq!(
            classify_tree(&Graph::empty(1).unwrap()).tag,
            TreeTag::Forest
        );
        assert_eq!(
            classify_tree(&Graph::star(4).unwrap()).tag,
            TreeTag::Caterpillar
        );
        assert_eq!(classify_tree(&Graph::star(4).unwrap()).spine, Some(vec![0]));
    }

    #[test]
    fn caterpillar_spine_is_ordered() {
        // spine 1-2-3 with leaves 0 (on 1), 4 (on 3), 5 (on 2), 6 (on 2)
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (2, 6)]).unwrap();
        let c = classify_tree(&g);
        assert_eq!(c.tag, TreeTag::Caterpillar);
        assert_eq!(c.spine, Some(vec![1, 2, 3]));
    }

    #[test]
    fn non_lobster_tree() {
        // spider with three legs of length 3: deleting leaves gives S(2,2,2),
        // which is not a caterpillar
        let g = Graph::spider(&[3, 3, 3]).unwrap();
        assert_eq!(classify_tree(&g).tag, TreeTag::Tree);
        let forest = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(classify_tree(&forest).tag, TreeTag::Forest);
    }
}
