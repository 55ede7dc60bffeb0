//! A closed curve that crosses every edge exactly once and separates the
//! generators from the recognizers.
//!
//! Start from a small circle around every recognizer. Circles that share a
//! face are joined by a band running through that face; choosing the bands
//! along a spanning tree of the recognizer–face incidence graph merges all
//! circles into the boundary of one thickened tree, which is a simple closed
//! curve. Its crossing sequence is read off by walking around that tree.

use std::fmt;

use super::faces::faces;
use super::instance::{EdgeId, Instance, VertexId};
use super::order::{EdgeOrder, OrderKind};
use crate::error::Error;

/// Cyclic sequence of edges in the order the curve crosses them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    crossings: Vec<EdgeId>,
    merges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Curve {
    pub fn crossings(&self) -> &[EdgeId] {
        &self.crossings
    }

    /// Number of pairwise circle merges performed (one less than the number
    /// of recognizers).
    pub fn merges(&self) -> usize {
        self.merges
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Crossing(EdgeId),
    Link(usize),
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

pub fn build_curve(inst: &Instance) -> Curve {
    let nu = inst.recognizers().len();
    let faces = faces(inst);
    // Nodes 0..nu are recognizers, nu.. are faces.
    let mut uf = UnionFind((0..nu + faces.len()).collect());
    // linked[s][slot]: band leaving recognizer s at that corner, if any.
    let mut linked: Vec<Vec<Option<usize>>> = inst
        .recognizers()
        .iter()
        .map(|r| vec![None; r.degree()])
        .collect();
    // Per face: the links it hosts, in boundary-walk order.
    let mut hub_links: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    let mut links: Vec<(usize, usize)> = Vec::new(); // (recognizer, face)
    for (fi, face) in faces.iter().enumerate() {
        for corner in &face.corners {
            let VertexId::Recognizer(s) = corner.vertex else {
                continue;
            };
            if uf.union(s, nu + fi) {
                let id = links.len();
                links.push((s, fi));
                linked[s][corner.slot] = Some(id);
                hub_links[fi].push(id);
            }
        }
    }

    // Rotation of the thickened tree: around a recognizer, its crossings with
    // the bands slotted into their corners; around a face hub, the bands in
    // reverse boundary order.
    let mut items: Vec<Vec<Item>> = Vec::with_capacity(nu + faces.len());
    let mut link_pos = vec![(0usize, 0usize); links.len()];
    for (s, r) in inst.recognizers().iter().enumerate() {
        let mut row = Vec::new();
        for (slot, &e) in r.rotation.iter().enumerate() {
            row.push(Item::Crossing(e));
            if let Some(id) = linked[s][slot] {
                link_pos[id].0 = row.len();
                row.push(Item::Link(id));
            }
        }
        items.push(row);
    }
    for hub in &hub_links {
        let row: Vec<Item> = hub.iter().rev().map(|&id| Item::Link(id)).collect();
        for (pos, item) in row.iter().enumerate() {
            if let Item::Link(id) = *item {
                link_pos[id].1 = pos;
            }
        }
        items.push(row);
    }

    let mut crossings = Vec::with_capacity(inst.edge_count());
    let (mut node, mut idx) = (0usize, 0usize);
    let budget = inst.edge_count() + 2 * links.len() + 1;
    for _ in 0..budget {
        if crossings.len() == inst.edge_count() {
            break;
        }
        match items[node][idx] {
            Item::Crossing(e) => {
                crossings.push(e);
                idx = (idx + 1) % items[node].len();
            }
            Item::Link(id) => {
                let (s, f) = links[id];
                let (next, pos) = if node == s {
                    (nu + f, link_pos[id].1)
                } else {
                    (s, link_pos[id].0)
                };
                node = next;
                idx = (pos + 1) % items[node].len();
            }
        }
    }
    debug_assert_eq!(crossings.len(), inst.edge_count());
    Curve {
        crossings,
        merges: nu.saturating_sub(1),
    }
}

/// Cuts the cyclic crossing sequence at `start` and reads it in the given
/// direction.
pub fn c_order(curve: &Curve, start: EdgeId, orientation: Orientation) -> Result<EdgeOrder, Error> {
    let n = curve.len();
    let pos = curve
        .crossings
        .iter()
        .position(|&e| e == start)
        .ok_or_else(|| Error::UnknownEdge(start.to_string()))?;
    let sequence = (0..n)
        .map(|k| match orientation {
            Orientation::Forward => curve.crossings[(pos + k) % n],
            Orientation::Reverse => curve.crossings[(pos + n - k) % n],
        })
        .collect();
    Ok(EdgeOrder::new_unchecked(sequence, OrderKind::Curve))
}

/// Canonical cut: smallest edge id first, then whichever direction makes the
/// second edge id smaller.
pub fn default_c_order(curve: &Curve) -> EdgeOrder {
    let start = *curve
        .crossings
        .iter()
        .min()
        .expect("curve crosses at least one edge");
    let fwd = c_order(curve, start, Orientation::Forward).expect("start is on the curve");
    if curve.len() < 3 {
        return fwd;
    }
    let rev = c_order(curve, start, Orientation::Reverse).expect("start is on the curve");
    if rev.sequence()[1] < fwd.sequence()[1] {
        rev
    } else {
        fwd
    }
}

/// The curve order of `inst` cut at `start`. Without a start edge the
/// canonical cut is used, read backwards for [`Orientation::Reverse`].
pub fn curve_order(
    inst: &Instance,
    start: Option<EdgeId>,
    orientation: Orientation,
) -> Result<EdgeOrder, Error> {
    let curve = build_curve(inst);
    match (start, orientation) {
        (Some(s), _) => c_order(&curve, s, orientation),
        (None, Orientation::Forward) => Ok(default_c_order(&curve)),
        (None, Orientation::Reverse) => {
            let mut seq = default_c_order(&curve).sequence().to_vec();
            seq[1..].reverse();
            Ok(EdgeOrder::new_unchecked(seq, OrderKind::Curve))
        }
    }
}
