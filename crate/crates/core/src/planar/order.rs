//! Linear edge orders and the crossing numbers of pairings under them.
//! Also holds the brute-force certificate that an order is valid.

use std::fmt;

use super::instance::{EdgeId, Instance, Side, VertexId};
use crate::algebra::Permutation;
use crate::error::Error;

/// Default ceiling on `|E|` for [`validate_order`].
pub const VALIDATE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Curve,
    Generator,
    Recognizer,
    User,
}

/// A linear order on all edges of an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    sequence: Vec<EdgeId>,
    kind: OrderKind,
}

impl EdgeOrder {
    /// Checks that `sequence` is a permutation of the instance's edges and,
    /// for grouped kinds, that each vertex's edges are consecutive.
    pub fn new(inst: &Instance, sequence: Vec<EdgeId>, kind: OrderKind) -> Result<Self, Error> {
        let n = inst.edge_count();
        if sequence.len() != n {
            return Err(Error::InvalidOrder(format!(
                "lists {} edges, instance has {n}",
                sequence.len()
            )));
        }
        let mut seen = vec![false; n];
        for &e in &sequence {
            if e >= n {
                return Err(Error::UnknownEdge(e.to_string()));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidOrder(format!(
                    "edge `{}` repeated",
                    inst.edges()[e].name
                )));
            }
        }
        let order = EdgeOrder { sequence, kind };
        let side = match kind {
            OrderKind::Generator => Some(Side::Generator),
            OrderKind::Recognizer => Some(Side::Recognizer),
            _ => None,
        };
        if let Some(side) = side {
            if !order.is_grouped(inst, side) {
                return Err(Error::InvalidOrder(format!(
                    "edges of each {side} are not consecutive"
                )));
            }
        }
        Ok(order)
    }

    pub(crate) fn new_unchecked(sequence: Vec<EdgeId>, kind: OrderKind) -> Self {
        EdgeOrder { sequence, kind }
    }

    pub fn sequence(&self) -> &[EdgeId] {
        &self.sequence
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// `positions()[e]` is the 0-based position of edge `e`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.sequence.len()];
        for (i, &e) in self.sequence.iter().enumerate() {
            pos[e] = i;
        }
        pos
    }

    pub fn is_grouped(&self, inst: &Instance, side: Side) -> bool {
        let mut finished = vec![false; inst.vertices(side).len()];
        let mut current: Option<VertexId> = None;
        for &e in &self.sequence {
            let v = inst.endpoint(e, side);
            if Some(v) != current {
                let idx = match v {
                    VertexId::Generator(i) | VertexId::Recognizer(i) => i,
                };
                if finished[idx] {
                    return false;
                }
                if let Some(VertexId::Generator(p) | VertexId::Recognizer(p)) = current {
                    finished[p] = true;
                }
                current = Some(v);
            }
        }
        true
    }

    /// Edge names, space separated.
    pub fn display_names(&self, inst: &Instance) -> String {
        self.sequence
            .iter()
            .map(|&e| inst.edges()[e].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The grouped order derived from `order` for one side, with the permutation
/// `π` sending positions in the grouped order to positions in `order`.
///
/// Groups appear in order of their earliest edge in `order` and keep their
/// internal order, which makes the image sequence of `π` lexicographically
/// minimal among grouped orders.
pub fn grouped_order(inst: &Instance, order: &EdgeOrder, side: Side) -> (EdgeOrder, Permutation) {
    let pos = order.positions();
    let mut groups: Vec<(usize, Vec<EdgeId>)> = inst
        .vertices(side)
        .iter()
        .map(|v| {
            let mut edges = v.rotation.clone();
            edges.sort_by_key(|&e| pos[e]);
            (pos[edges[0]], edges)
        })
        .collect();
    groups.sort_by_key(|g| g.0);
    let sequence: Vec<EdgeId> = groups.into_iter().flat_map(|g| g.1).collect();
    let images = sequence.iter().map(|&e| pos[e]).collect();
    let kind = match side {
        Side::Generator => OrderKind::Generator,
        Side::Recognizer => OrderKind::Recognizer,
    };
    (
        EdgeOrder::new_unchecked(sequence, kind),
        Permutation::new(images).expect("positions form a permutation"),
    )
}

pub fn generator_order(inst: &Instance, order: &EdgeOrder) -> (EdgeOrder, Permutation) {
    grouped_order(inst, order, Side::Generator)
}

pub fn recognizer_order(inst: &Instance, order: &EdgeOrder) -> (EdgeOrder, Permutation) {
    grouped_order(inst, order, Side::Recognizer)
}

/// Partition of a set of edges into unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pairing(Vec<(EdgeId, EdgeId)>);

impl Pairing {
    pub fn new(pairs: Vec<(EdgeId, EdgeId)>) -> Result<Self, Error> {
        let mut all: Vec<EdgeId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidOrder("pairing uses an element twice".into()));
        }
        Ok(Pairing(pairs))
    }

    pub fn pairs(&self) -> &[(EdgeId, EdgeId)] {
        &self.0
    }

    pub fn elements(&self) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self.0.iter().flat_map(|&(a, b)| [a, b]).collect();
        all.sort_unstable();
        all
    }

    /// Pairs whose edges both meet vertex `v`.
    pub fn restrict(&self, inst: &Instance, v: VertexId) -> Pairing {
        let side = match v {
            VertexId::Generator(_) => Side::Generator,
            VertexId::Recognizer(_) => Side::Recognizer,
        };
        Pairing(
            self.0
                .iter()
                .copied()
                .filter(|&(a, b)| inst.endpoint(a, side) == v && inst.endpoint(b, side) == v)
                .collect(),
        )
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("({a},{b})")).collect();
        f.write_str(&parts.join(""))
    }
}

/// Number of interleaved pairs `a_r < a_s < b_r < b_s` under `order`.
pub fn crossing_number(pairing: &Pairing, order: &EdgeOrder) -> Result<usize, Error> {
    let pos = order.positions();
    let lookup = |e: EdgeId| {
        pos.get(e)
            .copied()
            .filter(|&p| p != usize::MAX)
            .ok_or(Error::UnknownEdge(e.to_string()))
    };
    let mut chords = Vec::with_capacity(pairing.0.len());
    for &(a, b) in &pairing.0 {
        let (pa, pb) = (lookup(a)?, lookup(b)?);
        chords.push((pa.min(pb), pa.max(pb)));
    }
    Ok(count_crossings(&chords))
}

fn count_crossings(chords: &[(usize, usize)]) -> usize {
    let mut count = 0;
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                count += 1;
            }
        }
    }
    count
}

/// All ways to pick disjoint pairs among `items` (including picking none).
fn partial_matchings(items: &[EdgeId]) -> Vec<Vec<(EdgeId, EdgeId)>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = partial_matchings(rest);
    for (i, &other) in rest.iter().enumerate() {
        let remaining: Vec<EdgeId> = rest
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        for mut m in partial_matchings(&remaining) {
            m.insert(0, (first, other));
            out.push(m);
        }
    }
    out
}

/// Perfect matchings of `items`.
fn perfect_matchings(items: &[EdgeId]) -> Vec<Vec<(EdgeId, EdgeId)>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for (i, &other) in rest.iter().enumerate() {
        let remaining: Vec<EdgeId> = rest
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        for mut m in perfect_matchings(&remaining) {
            m.insert(0, (first, other));
            out.push(m);
        }
    }
    out
}

fn cartesian<T: Clone>(factors: &[Vec<Vec<T>>]) -> Vec<Vec<T>> {
    factors.iter().fold(vec![Vec::new()], |acc, options| {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for opt in options {
                let mut v = prefix.clone();
                v.extend(opt.iter().cloned());
                next.push(v);
            }
        }
        next
    })
}

/// Pairings of `set` in which both edges of every pair meet the same vertex
/// on `side`.
pub fn local_pairings(inst: &Instance, set: &[EdgeId], side: Side) -> Vec<Pairing> {
    let factors: Vec<Vec<Vec<(EdgeId, EdgeId)>>> = inst
        .vertices(side)
        .iter()
        .map(|v| {
            let local: Vec<EdgeId> = v
                .rotation
                .iter()
                .copied()
                .filter(|e| set.contains(e))
                .collect();
            perfect_matchings(&local)
        })
        .collect();
    cartesian(&factors).into_iter().map(Pairing).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Counterexample {
        side: Side,
        /// The edge set `I`, sorted.
        set: Vec<EdgeId>,
        pairing: Pairing,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

pub fn validate_order(inst: &Instance, order: &EdgeOrder) -> Result<Validity, Error> {
    validate_order_capped(inst, order, VALIDATE_CAP)
}

/// For every local pairing `S` (on either side) checks
/// `(-1)^cr(S, order) = Π_x (-1)^cr(S|x, grouped order)`; returns the first
/// violation found.
pub fn validate_order_capped(
    inst: &Instance,
    order: &EdgeOrder,
    cap: usize,
) -> Result<Validity, Error> {
    if inst.edge_count() > cap {
        return Err(Error::OverCap {
            what: "order validation edge count",
            size: inst.edge_count(),
            cap,
        });
    }
    EdgeOrder::new(inst, order.sequence.clone(), OrderKind::User)?;
    for side in [Side::Generator, Side::Recognizer] {
        let (grouped, _) = grouped_order(inst, order, side);
        let per_vertex: Vec<Vec<Vec<(EdgeId, EdgeId)>>> = inst
            .vertices(side)
            .iter()
            .map(|v| partial_matchings(&v.rotation))
            .collect();
        let vertex_ids: Vec<VertexId> = (0..per_vertex.len())
            .map(|i| match side {
                Side::Generator => VertexId::Generator(i),
                Side::Recognizer => VertexId::Recognizer(i),
            })
            .collect();
        // Odometer over one partial matching per vertex.
        let mut digits = vec![0usize; per_vertex.len()];
        loop {
            let mut pairs = Vec::new();
            let mut local_parity = 0;
            for (x, &d) in digits.iter().enumerate() {
                let chosen = &per_vertex[x][d];
                if !chosen.is_empty() {
                    let local = Pairing(chosen.clone());
                    debug_assert_eq!(local, Pairing(chosen.clone()).restrict(inst, vertex_ids[x]));
                    local_parity += crossing_number(&local, &grouped)?;
                    pairs.extend(chosen.iter().copied());
                }
            }
            let pairing = Pairing(pairs);
            if crossing_number(&pairing, order)? % 2 != local_parity % 2 {
                return Ok(Validity::Counterexample {
                    side,
                    set: pairing.elements(),
                    pairing,
                });
            }
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < per_vertex[k].len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    Ok(Validity::Valid)
}
