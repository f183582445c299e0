//! Builtin verification catalog: pinned graph families, an exhaustive list
//! of small connected graphs, seeded random graphs, and the case list that
//! pits every formula against the numeric oracle.
//!
//! Case construction is deterministic for a fixed seed, so reruns are
//! bit-identical.

use crate::formulas;
use crate::graph::{Graph, MultipartiteSpec};
use crate::oracle::{self, Method, QecResult};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default seed for the random slice of the builtin catalog.
pub const DEFAULT_SEED: u64 = 42;

/// Regular graphs used as the first join operand: the edgeless graphs on
/// one to three vertices, small cycles, small complete graphs, and K_{2,2}.
pub fn regular_join_lefts() -> Vec<Graph> {
    let mut out = vec![
        Graph::empty(1).unwrap(),
        Graph::empty(2).unwrap(),
        Graph::empty(3).unwrap(),
    ];
    out.extend((3..=6).map(|n| Graph::cycle(n).unwrap()));
    out.extend((2..=4).map(|n| Graph::complete(n).unwrap()));
    out.push(Graph::complete_bipartite(2, 2).unwrap());
    out
}

/// Every connected labeled graph on up to `max_n` vertices, enumerated by
/// edge mask in a fixed order.
pub fn all_connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            if g.is_connected() {
                out.push(g.with_label(format!("conn{n}#{mask}")));
            }
        }
    }
    out
}

/// Seeded random graphs on four to seven vertices with edge probability
/// one half; connectivity is not forced, since join operands may be
/// disconnected.
pub fn seeded_random_graphs(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = 4 + i % 4;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edge_list(n, &edges)
                .unwrap()
                .with_label(format!("rand{n}#{i}"))
        })
        .collect()
}

/// Second join operands: every connected graph on up to five vertices,
/// twenty seeded random graphs on up to seven, and the small edgeless
/// graphs to exercise disconnected operands.
pub fn join_rights(seed: u64) -> Vec<Graph> {
    let mut out = all_connected_graphs(5);
    out.extend(seeded_random_graphs(seed, 20));
    out.extend((1..=3).map(|n| Graph::empty(n).unwrap()));
    out
}

/// All multipartite specs with two or three parts of size at most three.
pub fn small_multipartite_specs() -> Vec<MultipartiteSpec> {
    let mut out = Vec::new();
    for a in 1..=3usize {
        for b in 1..=a {
            out.push(MultipartiteSpec::new(vec![a, b]).unwrap());
            for c in 1..=b {
                out.push(MultipartiteSpec::new(vec![a, b, c]).unwrap());
            }
        }
    }
    out
}

/// Pinned connected graphs of order at most five used for product tests.
pub fn product_factors() -> Vec<Graph> {
    let mut out: Vec<Graph> = (2..=5).map(|n| Graph::complete(n).unwrap()).collect();
    out.extend((3..=5).map(|n| Graph::path(n).unwrap()));
    out.extend((3..=5).map(|n| Graph::cycle(n).unwrap()));
    out.push(Graph::complete_bipartite(1, 3).unwrap());
    out.push(Graph::complete_bipartite(1, 4).unwrap());
    out.push(Graph::complete_bipartite(2, 2).unwrap());
    out.push(Graph::complete_bipartite(2, 3).unwrap());
    out
}

/// Unordered pairs of product factors.
pub fn product_pairs() -> Vec<(Graph, Graph)> {
    let factors = product_factors();
    let mut out = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// Connected graphs of QE class used by embedding and product-of-QE tests:
/// paths, stars, a non-star tree, K_{2,2}, small complete graphs, and the
/// boundary case K_{2,2,2} whose constant is exactly zero.
pub fn qe_class_gallery() -> Vec<Graph> {
    let mut out: Vec<Graph> = (2..=5).map(|n| Graph::path(n).unwrap()).collect();
    out.push(Graph::complete_bipartite(1, 3).unwrap());
    out.push(Graph::complete_bipartite(1, 4).unwrap());
    out.push(
        Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)])
            .unwrap()
            .with_label("T6"),
    );
    out.push(Graph::complete_bipartite(2, 2).unwrap());
    out.extend((2..=5).map(|n| Graph::complete(n).unwrap()));
    out.push(Graph::cycle(5).unwrap());
    out.push(Graph::complete_multipartite(
        &MultipartiteSpec::new(vec![2, 2, 2]).unwrap(),
    ));
    out
}

/// Connected graphs outside the QE class.
pub fn non_qe_gallery() -> Vec<Graph> {
    vec![
        Graph::complete_bipartite(3, 3).unwrap(),
        Graph::complete_bipartite(2, 3).unwrap(),
        Graph::complete_bipartite(3, 4).unwrap(),
        Graph::complete_bipartite(2, 4).unwrap(),
    ]
}

/// One formula-versus-oracle verification case.
#[derive(Clone, Debug)]
pub enum VerifyCase {
    JoinRegular {
        left: Graph,
        right: Graph,
    },
    JoinMultipartite {
        spec: MultipartiteSpec,
        right: Graph,
    },
    CartComplete {
        m: usize,
        right: Graph,
    },
    CartBipartite {
        m: usize,
        n: usize,
        right: Graph,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        m: usize,
        n: usize,
    },
}

impl VerifyCase {
    /// Human-readable expression for reports.
    pub fn label(&self) -> String {
        match self {
            VerifyCase::JoinRegular { left, right } => {
                format!("join({},{})", left.name(), right.name())
            }
            VerifyCase::JoinMultipartite { spec, right } => {
                format!("join({},{})", spec.to_graph().name(), right.name())
            }
            VerifyCase::CartComplete { m, right } => format!("cart(K{m},{})", right.name()),
            VerifyCase::CartBipartite { m, n, right } => {
                format!("cart(Kb({m},{n}),{})", right.name())
            }
            VerifyCase::Complete { n } => format!("K{n}"),
            VerifyCase::CompleteBipartite { m, n } => format!("Kb({m},{n})"),
        }
    }

    /// The graph both routes are talking about.
    pub fn graph(&self) -> Graph {
        match self {
            VerifyCase::JoinRegular { left, right } => left.join(right),
            VerifyCase::JoinMultipartite { spec, right } => spec.to_graph().join(right),
            VerifyCase::CartComplete { m, right } => Graph::complete(*m).unwrap().cartesian(right),
            VerifyCase::CartBipartite { m, n, right } => {
                Graph::complete_bipartite(*m, *n).unwrap().cartesian(right)
            }
            VerifyCase::Complete { n } => Graph::complete(*n).unwrap(),
            VerifyCase::CompleteBipartite { m, n } => Graph::complete_bipartite(*m, *n).unwrap(),
        }
    }

    /// Formula route.
    pub fn formula(&self) -> Result<QecResult> {
        match self {
            VerifyCase::JoinRegular { left, right } => formulas::qec_join_regular(left, right),
            VerifyCase::JoinMultipartite { spec, right } => {
                formulas::qec_join_multipartite(spec, right)
            }
            VerifyCase::CartComplete { m, right } => formulas::qec_cart_complete(*m, right),
            VerifyCase::CartBipartite { m, n, right } => {
                formulas::qec_cart_bipartite(*m, *n, right)
            }
            VerifyCase::Complete { n } => {
                formulas::qec_complete(*n).map(|v| QecResult::plain(v, Method::ClosedFormComplete))
            }
            VerifyCase::CompleteBipartite { m, n } => formulas::qec_complete_bipartite(*m, *n)
                .map(|v| QecResult::plain(v, Method::ClosedFormBipartite)),
        }
    }

    /// Oracle route.
    pub fn oracle(&self) -> Result<QecResult> {
        oracle::qec_oracle(&self.graph())
    }
}

/// The full builtin catalog. Products stay at or below sixty vertices.
pub fn builtin_catalog(seed: u64) -> Vec<VerifyCase> {
    let mut cases = Vec::new();

    let rights = join_rights(seed);
    for left in regular_join_lefts() {
        for right in &rights {
            cases.push(VerifyCase::JoinRegular {
                left: left.clone(),
                right: right.clone(),
            });
        }
    }
    for spec in small_multipartite_specs() {
        for right in &rights {
            cases.push(VerifyCase::JoinMultipartite {
                spec: spec.clone(),
                right: right.clone(),
            });
        }
    }

    let mut cart_rights = non_qe_gallery();
    cart_rights.extend(qe_class_gallery());
    for m in 2..=3usize {
        for right in &cart_rights {
            if m * right.order() <= 60 {
                cases.push(VerifyCase::CartComplete {
                    m,
                    right: right.clone(),
                });
            }
        }
    }
    for (m, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (3, 2), (3, 3)] {
        for right in &cart_rights {
            if (m + n) * right.order() <= 60 {
                cases.push(VerifyCase::CartBipartite {
                    m,
                    n,
                    right: right.clone(),
                });
            }
        }
    }

    cases.extend((2..=8).map(|n| VerifyCase::Complete { n }));
    for m in 1..=6usize {
        for n in 1..=m {
            cases.push(VerifyCase::CompleteBipartite { m, n });
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_enumeration_counts() {
        // 1, 1, 4, 38, 728 connected labeled graphs on 1..=5 vertices.
        let counts: Vec<usize> = (1..=5)
            .map(|n| {
                all_connected_graphs(n)
                    .iter()
                    .filter(|g| g.order() == n)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn random_graphs_are_seed_stable() {
        let a = seeded_random_graphs(7, 10);
        let b = seeded_random_graphs(7, 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
        let c = seeded_random_graphs(8, 10);
        assert!(a.iter().zip(&c).any(|(x, y)| x != y));
    }

    #[test]
    fn catalog_is_reasonably_large() {
        let cases = builtin_catalog(DEFAULT_SEED);
        let regular = cases
            .iter()
            .filter(|c| matches!(c, VerifyCase::JoinRegular { .. }))
            .count();
        assert!(regular >= 200, "only {regular} regular join cases");
        assert!(cases.len() > 1000);
    }

    #[test]
    fn galleries_have_expected_class() {
        for g in qe_class_gallery() {
            assert!(
                oracle::is_qe_class(&g, oracle::QE_CLASS_TOL).unwrap(),
                "{} should be of QE class",
                g.name()
            );
        }
        for g in non_qe_gallery() {
            assert!(
                !oracle::is_qe_class(&g, oracle::QE_CLASS_TOL).unwrap(),
                "{} should not be of QE class",
                g.name()
            );
        }
    }
}
