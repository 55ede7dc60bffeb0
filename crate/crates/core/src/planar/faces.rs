use super::instance::{EdgeId, Instance, Side, VertexId};

/// One side of an edge, traversed from one endpoint to the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    /// Side of the endpoint the dart points at.
    pub head: Side,
}

impl Dart {
    fn index(self) -> usize {
        2 * self.edge + usize::from(self.head == Side::Generator)
    }

    fn tail(self) -> Side {
        match self.head {
            Side::Generator => Side::Recognizer,
            Side::Recognizer => Side::Generator,
        }
    }
}

/// A corner of a face: the angle at `vertex` between `rotation[slot]` and
/// `rotation[slot + 1]` (cyclically).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    pub vertex: VertexId,
    pub slot: usize,
}

/// Closed boundary walk of a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    /// `corners[i]` is the corner entered at the head of `darts[i]`.
    pub corners: Vec<Corner>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// Successor of a dart on its face: at the head, turn to the edge following
/// the arrival edge in the rotation. Returns the next dart and the corner
/// passed through.
fn successor(inst: &Instance, dart: Dart) -> (Dart, Corner) {
    let v = inst.endpoint(dart.edge, dart.head);
    let rot = inst.rotation(v);
    let slot = inst.slot(dart.edge, dart.head);
    let next_edge = rot[(slot + 1) % rot.len()];
    (
        Dart {
            edge: next_edge,
            head: dart.tail(),
        },
        Corner { vertex: v, slot },
    )
}

/// Traces every face of the embedding given by the rotation system.
///
/// Faces are numbered by their first dart in the order
/// `edge 0 → recognizer, edge 0 → generator, edge 1 → recognizer, …`.
pub(crate) fn trace_faces(inst: &Instance) -> Vec<Face> {
    let mut seen = vec![false; 2 * inst.edge_count()];
    let mut faces = Vec::new();
    for e in 0..inst.edge_count() {
        for head in [Side::Recognizer, Side::Generator] {
            let start = Dart { edge: e, head };
            if seen[start.index()] {
                continue;
            }
            let mut face = Face {
                darts: Vec::new(),
                corners: Vec::new(),
            };
            let mut d = start;
            loop {
                seen[d.index()] = true;
                let (next, corner) = successor(inst, d);
                face.darts.push(d);
                face.corners.push(corner);
                d = next;
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// Face boundary walks. Connectivity and Euler's formula were checked when
/// the [`Instance`] was built.
pub fn faces(inst: &Instance) -> Vec<Face> {
    trace_faces(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{InstanceBuilder, VertexId};
    use crate::signature::Signature;

    #[test]
    fn single_edge_has_one_face() {
        let mut b = InstanceBuilder::new();
        let x = b.generator("x", "EQ", Signature::equality(1));
        let c = b.recognizer("c", "EQ", Signature::equality(1));
        let e = b.edge("1", x, c);
        b.rotation(VertexId::Generator(x), vec![e]);
        b.rotation(VertexId::Recognizer(c), vec![e]);
        let inst = b.build().unwrap();
        let f = faces(&inst);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].len(), 2);
    }

    #[test]
    fn three_paths_between_two_recognizers() {
        let mut b = InstanceBuilder::new();
        let r0 = b.recognizer("r0", "NAE", Signature::not_all_equal(3));
        let r1 = b.recognizer("r1", "NAE", Signature::not_all_equal(3));
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..3 {
            let x = b.generator(&format!("x{i}"), "EQ", Signature::equality(2));
            let a = b.edge(&format!("a{i}"), x, r0);
            let c = b.edge(&format!("b{i}"), x, r1);
            b.rotation(VertexId::Generator(x), vec![a, c]);
            left.push(a);
            right.push(c);
        }
        right.reverse();
        b.rotation(VertexId::Recognizer(r0), left);
        b.rotation(VertexId::Recognizer(r1), right);
        let inst = b.build().unwrap();
        let f = faces(&inst);
        assert_eq!(f.len(), 3);
        assert_eq!(
            f.iter().map(Face::len).sum::<usize>(),
            2 * inst.edge_count()
        );
        assert!(f.iter().all(|face| face.len() % 2 == 0));
    }

    #[test]
    fn non_planar_rotation_rejected() {
        // Same graph, but both recognizers list their edges the same way
        // round, which embeds it on a torus.
        let mut b = InstanceBuilder::new();
        let r0 = b.recognizer("r0", "NAE", Signature::not_all_equal(3));
        let r1 = b.recognizer("r1", "NAE", Signature::not_all_equal(3));
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for i in 0..3 {
            let x = b.generator(&format!("x{i}"), "EQ", Signature::equality(2));
            let a = b.edge(&format!("a{i}"), x, r0);
            let c = b.edge(&format!("b{i}"), x, r1);
            b.rotation(VertexId::Generator(x), vec![a, c]);
            left.push(a);
            right.push(c);
        }
        b.rotation(VertexId::Recognizer(r0), left);
        b.rotation(VertexId::Recognizer(r1), right);
        assert!(matches!(
            b.build(),
            Err(crate::Error::NotPlanar { faces: 1, .. })
        ));
    }
}
