//! Seeded generators for random planar instances and graphs.
//!
//! Instances start from a random cubic plane multigraph on the clauses
//! (grown from the theta graph by joining two edges across a face), place a
//! degree-2 variable on every edge, and then merge random pairs of variables
//! that share a face. Every step inserts or contracts an edge inside a face,
//! so the rotation system stays planar.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{spf_vector, SkewMatrix};
use crate::error::Error;
use crate::forests::SimpleGraph;
use crate::planar::{Instance, InstanceBuilder, VertexId};
use crate::rational::{frac, Rational};
use crate::signature::{pattern_to_mask, Signature};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Clause,
    Variable,
}

/// Plane multigraph given by a rotation system. Edges are stored once; the
/// rotation of a vertex lists edge ids clockwise.
#[derive(Clone, Debug)]
struct PlaneMap {
    kinds: Vec<Kind>,
    ends: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
}

/// Corner `(vertex, slot)`: between `rot[vertex][slot]` and the next edge.
type Corner = (usize, usize);

impl PlaneMap {
    fn theta() -> Self {
        PlaneMap {
            kinds: vec![Kind::Clause, Kind::Clause],
            ends: vec![[0, 1]; 3],
            rot: vec![vec![0, 1, 2], vec![0, 2, 1]],
        }
    }

    fn slot(&self, v: usize, e: usize) -> usize {
        self.rot[v]
            .iter()
            .position(|&f| f == e)
            .expect("edge in rotation")
    }

    /// Face walks as lists of corners. A dart is `(edge, head)`.
    fn faces(&self) -> Vec<Vec<Corner>> {
        let mut seen = vec![[false; 2]; self.ends.len()];
        let mut out = Vec::new();
        for e in 0..self.ends.len() {
            for side in 0..2 {
                if seen[e][side] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut edge, mut head_side) = (e, side);
                while !seen[edge][head_side] {
                    seen[edge][head_side] = true;
                    let head = self.ends[edge][head_side];
                    let slot = self.slot(head, edge);
                    face.push((head, slot));
                    let next = self.rot[head][(slot + 1) % self.rot[head].len()];
                    // The next dart leaves `head`, so it points at the far end.
                    head_side = if self.ends[next][0] == head { 1 } else { 0 };
                    edge = next;
                }
                out.push(face);
            }
        }
        out
    }

    /// Splits edge `e` with a new degree-2 vertex; returns it.
    fn subdivide(&mut self, e: usize, kind: Kind) -> usize {
        let [a, b] = self.ends[e];
        let p = self.kinds.len();
        let f = self.ends.len();
        self.kinds.push(kind);
        self.ends[e] = [a, p];
        self.ends.push([p, b]);
        let sb = self.slot(b, e);
        self.rot[b][sb] = f;
        self.rot.push(vec![e, f]);
        p
    }

    /// Adds an edge between two corners of one face.
    fn join(&mut self, (u, su): Corner, (v, sv): Corner) -> usize {
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.rot[u].insert(su + 1, e);
        let sv = if u == v && sv > su { sv + 1 } else { sv };
        self.rot[v].insert(sv + 1, e);
        e
    }

    /// Contracts edge `e` between distinct `u` and `v`, keeping `u`.
    fn contract(&mut self, e: usize) {
        let [u, v] = self.ends[e];
        let su = self.slot(u, e);
        let sv = self.slot(v, e);
        let dv = self.rot[v].len();
        let spliced: Vec<usize> = (1..dv).map(|k| self.rot[v][(sv + k) % dv]).collect();
        let mut rot = self.rot[u][..su].to_vec();
        rot.extend(&spliced);
        rot.extend(&self.rot[u][su + 1..]);
        self.rot[u] = rot;
        for &f in &spliced {
            for end in &mut self.ends[f] {
                if *end == v {
                    *end = u;
                }
            }
        }
        self.remove_edge(e);
        self.remove_vertex(v);
    }

    fn remove_edge(&mut self, e: usize) {
        let last = self.ends.len() - 1;
        self.ends.swap_remove(e);
        for r in &mut self.rot {
            r.retain(|&f| f != e);
            for f in r.iter_mut() {
                if *f == last {
                    *f = e;
                }
            }
        }
    }

    fn remove_vertex(&mut self, v: usize) {
        let last = self.kinds.len() - 1;
        self.kinds.swap_remove(v);
        self.rot.swap_remove(v);
        for ends in &mut self.ends {
            for end in ends.iter_mut() {
                if *end == last {
                    *end = v;
                }
            }
        }
    }
}

/// Random cubic plane multigraph with `2 + 2k` vertices.
fn cubic_map<R: Rng>(rng: &mut R, steps: usize) -> PlaneMap {
    let mut m = PlaneMap::theta();
    for _ in 0..steps {
        let faces = m.faces();
        let face = faces.choose(rng).expect("a face exists");
        // Pick two distinct edges on the face, each by the corner that ends it.
        let mut picks: Vec<usize> = (0..face.len()).collect();
        picks.shuffle(rng);
        let edge_at = |i: usize| {
            let (v, s) = face[i];
            m.rot[v][s]
        };
        let (i, j) = match picks
            .iter()
            .skip(1)
            .find(|&&j| edge_at(j) != edge_at(picks[0]))
        {
            Some(&j) => (picks[0], j),
            None => continue,
        };
        let (e1, e2) = (edge_at(i), edge_at(j));
        let p = m.subdivide(e1, Kind::Clause);
        let q = m.subdivide(e2, Kind::Clause);
        join_in_common_face(&mut m, rng, p, q);
    }
    m
}

fn join_in_common_face<R: Rng>(m: &mut PlaneMap, rng: &mut R, p: usize, q: usize) -> bool {
    let faces = m.faces();
    let shared: Vec<(Corner, Corner)> = faces
        .iter()
        .filter_map(|f| {
            let cp = f.iter().find(|c| c.0 == p)?;
            let cq = f.iter().find(|c| c.0 == q)?;
            Some((*cp, *cq))
        })
        .collect();
    match shared.choose(rng) {
        Some(&(cp, cq)) => {
            m.join(cp, cq);
            true
        }
        None => false,
    }
}

fn to_instance(m: &PlaneMap) -> Instance {
    let mut b = InstanceBuilder::new();
    let mut index = vec![0usize; m.kinds.len()];
    let (mut nv, mut nc) = (0, 0);
    for (v, kind) in m.kinds.iter().enumerate() {
        let d = m.rot[v].len();
        index[v] = match kind {
            Kind::Variable => {
                nv += 1;
                b.generator(&format!("x{nv}"), "EQ", Signature::equality(d))
            }
            Kind::Clause => {
                nc += 1;
                b.recognizer(&format!("c{nc}"), "NAE", Signature::not_all_equal(d))
            }
        };
    }
    for (e, &[a, c]) in m.ends.iter().enumerate() {
        let (var, clause) = if m.kinds[a] == Kind::Variable {
            (a, c)
        } else {
            (c, a)
        };
        b.edge(&(e + 1).to_string(), index[var], index[clause]);
    }
    for (v, kind) in m.kinds.iter().enumerate() {
        let id = match kind {
            Kind::Variable => VertexId::Generator(index[v]),
            Kind::Clause => VertexId::Recognizer(index[v]),
        };
        b.rotation(id, m.rot[v].clone());
    }
    b.build().expect("generated rotation systems are planar")
}

/// Random planar monotone NAE-3 instance with `|E| = 6 · clause_pairs`,
/// EQ variables of even degree (2, 4, …) and NAE clauses of size 3.
/// `merges` caps how many variable pairs get fused.
pub fn random_nae_instance<R: Rng>(rng: &mut R, clause_pairs: usize, merges: usize) -> Instance {
    assert!(clause_pairs >= 1);
    let mut m = cubic_map(rng, clause_pairs - 1);
    for e in 0..m.ends.len() {
        m.subdivide(e, Kind::Variable);
    }
    for _ in 0..merges {
        let faces = m.faces();
        let face = faces.choose(rng).expect("a face exists");
        let vars: Vec<usize> = face
            .iter()
            .map(|c| c.0)
            .filter(|&v| m.kinds[v] == Kind::Variable)
            .collect();
        let distinct: Vec<usize> = {
            let mut d = vars.clone();
            d.sort_unstable();
            d.dedup();
            d
        };
        if distinct.len() < 2 {
            continue;
        }
        let pair: Vec<usize> = distinct.choose_multiple(rng, 2).copied().collect();
        let (cu, cv) = (
            *face.iter().find(|c| c.0 == pair[0]).expect("on face"),
            *face.iter().find(|c| c.0 == pair[1]).expect("on face"),
        );
        let e = m.join(cu, cv);
        m.contract(e);
    }
    to_instance(&m)
}

/// Edge counts the NAE generator can produce up to `max_edges`.
pub fn clause_pairs_up_to(max_edges: usize) -> usize {
    max_edges / 6
}

/// Random nonzero rational with small numerator and denominator.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p = rng.gen_range(-5i64..=5);
        if p != 0 {
            return frac(p, rng.gen_range(1i64..=4));
        }
    }
}

/// Random skew matrix with small rational entries (zero with probability
/// one in four).
pub fn random_skew<R: Rng>(rng: &mut R, n: usize) -> SkewMatrix {
    SkewMatrix::from_upper(n, |_, _| {
        if rng.gen_bool(0.25) {
            Rational::from_integer(0.into())
        } else {
            small_rational(rng)
        }
    })
}

/// `scale · Pf(m on supp ε)` (or on the zeros of `ε` when `reversed`), in
/// rotation order. Such signatures are realizable under the identity basis.
pub fn sub_pfaffian_signature(m: &SkewMatrix, scale: &Rational, reversed: bool) -> Signature {
    let d = m.dim();
    let spf = spf_vector(m).expect("small arity");
    let full = (1u64 << d) - 1;
    let coeffs = (0..1u64 << d)
        .map(|i| {
            let mask = pattern_to_mask(i, d);
            scale * spf.get_mask(if reversed { full & !mask } else { mask })
        })
        .collect();
    Signature::new(d, coeffs).expect("length 2^d")
}

/// Replaces every signature by a random realizable one: generators plain,
/// recognizers reversed. Intended for the identity basis.
pub fn with_random_realizable_signatures<R: Rng>(
    rng: &mut R,
    inst: &Instance,
) -> Result<Instance, Error> {
    let mut out = inst.clone();
    for (side, n) in [
        (true, inst.generators().len()),
        (false, inst.recognizers().len()),
    ] {
        for i in 0..n {
            let (id, d) = if side {
                (VertexId::Generator(i), inst.generators()[i].degree())
            } else {
                (VertexId::Recognizer(i), inst.recognizers()[i].degree())
            };
            let m = random_skew(rng, d);
            let sig = sub_pfaffian_signature(&m, &small_rational(rng), !side);
            out =
                out.with_signature(id, &format!("R{}{}", if side { "G" } else { "S" }, i), sig)?;
        }
    }
    Ok(out)
}

/// Random multigraph without self-loops.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> SimpleGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = if n < 2 {
        0
    } else {
        rng.gen_range(0..=max_edges)
    };
    let edges = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    SimpleGraph::unnamed(n, edges).expect("no self-loops by construction")
}
