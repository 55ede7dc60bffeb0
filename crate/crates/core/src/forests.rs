//! Rooted spanning forests through the minor pairing `det(Id + zᵀy)`.
//!
//! With `B` the signed incidence matrix of a graph, `det(Id + BᵀB)` sums the
//! squared minors of `B`. A square minor of `B` is `±1` exactly when its
//! columns form a forest and its deleted rows pick one root per tree, so the
//! determinant counts rooted spanning forests.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{determinant, Matrix};
use crate::error::Error;
use crate::rational::{int, Rational};

/// Default ceiling on `|E|` for [`brute_force_forests`].
pub const FOREST_BRUTE_CAP: usize = 20;

/// Ceiling on `min(k, ℓ)`-sized subset enumeration in
/// [`minor_pairing_expansion`].
pub const MINOR_EXPANSION_CAP: usize = 12;

/// Undirected multigraph with a fixed orientation on each edge
/// (`(tail, head)`). Self-loops are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= vertices.len() {
                    return Err(Error::IndexOutOfRange {
                        index: w,
                        n: vertices.len(),
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(vertices[u].clone()));
            }
        }
        Ok(SimpleGraph { vertices, edges })
    }

    /// Vertices named `0..n`.
    pub fn unnamed(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        SimpleGraph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).tuple_combinations().collect();
        SimpleGraph::unnamed(n, edges).expect("no loops in a complete graph")
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// `|V| × |E|` matrix with `+1` at the tail and `-1` at the head of each edge.
pub fn incidence_matrix(g: &SimpleGraph) -> Matrix {
    let mut b = Matrix::zeros(g.vertex_count(), g.edge_count());
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        b.set(u, e, int(1));
        b.set(v, e, int(-1));
    }
    b
}

/// `(det(Id + BᵀB), det(Id + BBᵀ))`. The two always agree.
pub fn forest_determinants(g: &SimpleGraph) -> (Rational, Rational) {
    let b = incidence_matrix(g);
    let bt = b.transpose();
    let edge_form = Matrix::identity(g.edge_count())
        .try_add(&bt.mul(&b).expect("shapes agree"))
        .expect("shapes agree");
    let vertex_form = Matrix::identity(g.vertex_count())
        .try_add(&b.mul(&bt).expect("shapes agree"))
        .expect("shapes agree");
    (
        determinant(&edge_form).expect("square"),
        determinant(&vertex_form).expect("square"),
    )
}

/// Number of rooted spanning forests, evaluated as a determinant of
/// dimension `min(|V|, |E|)`.
pub fn count_rooted_spanning_forests(g: &SimpleGraph) -> BigInt {
    let b = incidence_matrix(g);
    let bt = b.transpose();
    let m = if g.edge_count() <= g.vertex_count() {
        Matrix::identity(g.edge_count()).try_add(&bt.mul(&b).expect("shapes agree"))
    } else {
        Matrix::identity(g.vertex_count()).try_add(&b.mul(&bt).expect("shapes agree"))
    }
    .expect("shapes agree");
    let det = determinant(&m).expect("square");
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Enumerates acyclic edge subsets; each contributes the product of its
/// component sizes (one root choice per tree).
pub fn brute_force_forests(g: &SimpleGraph) -> Result<BigInt, Error> {
    brute_force_forests_capped(g, FOREST_BRUTE_CAP)
}

pub fn brute_force_forests_capped(g: &SimpleGraph, cap: usize) -> Result<BigInt, Error> {
    let m = g.edge_count();
    if m > cap {
        return Err(Error::OverCap {
            what: "forest enumeration edge count",
            size: m,
            cap,
        });
    }
    let n = g.vertex_count();
    let mut total = BigInt::zero();
    let mut parent = vec![0usize; n];
    let mut size = vec![0u64; n];
    'subsets: for mask in 0u64..1 << m {
        for v in 0..n {
            parent[v] = v;
            size[v] = 1;
        }
        for (e, &(u, v)) in g.edges.iter().enumerate() {
            if mask >> e & 1 == 0 {
                continue;
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                continue 'subsets;
            }
            parent[rv] = ru;
            size[ru] += size[rv];
        }
        let mut roots = BigInt::one();
        for v in 0..n {
            if parent[v] == v {
                roots *= size[v];
            }
        }
        total += roots;
    }
    Ok(total)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `det(Id_ℓ + zᵀy)` for two `k × ℓ` matrices.
pub fn minor_pairing(z: &Matrix, y: &Matrix) -> Result<Rational, Error> {
    if z.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            left: z.shape(),
            right: y.shape(),
        });
    }
    let m = Matrix::identity(z.cols()).try_add(&z.transpose().mul(y)?)?;
    determinant(&m)
}

/// `Σ Δ_{W,F}(z)·Δ_{W,F}(y)` over all row sets `W` and column sets `F` of
/// equal size, the empty minor counting as `1`.
pub fn minor_pairing_expansion(z: &Matrix, y: &Matrix) -> Result<Rational, Error> {
    if z.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            left: z.shape(),
            right: y.shape(),
        });
    }
    let (k, l) = z.shape();
    if k.max(l) > MINOR_EXPANSION_CAP {
        return Err(Error::OverCap {
            what: "minor expansion dimension",
            size: k.max(l),
            cap: MINOR_EXPANSION_CAP,
        });
    }
    let mut total = Rational::one();
    for size in 1..=k.min(l) {
        for rows in (0..k).combinations(size) {
            for cols in (0..l).combinations(size) {
                let a = determinant(&z.select(&rows, &cols))?;
                if a.is_zero() {
                    continue;
                }
                total += a * determinant(&y.select(&rows, &cols))?;
            }
        }
    }
    Ok(total)
}
