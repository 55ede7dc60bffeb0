use std::collections::VecDeque;
use std::fmt;

use crate::error::Error;
use crate::signature::Signature;

pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Generator(usize),
    Recognizer(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Generator,
    Recognizer,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Generator => "generator",
            Side::Recognizer => "recognizer",
        })
    }
}

/// A generator or recognizer together with its local tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    /// Name the signature was declared under (`EQ`, `NAE` or a custom `sig`).
    pub label: String,
    pub signature: Signature,
    /// Incident edges in clockwise order. Bit `k` of the signature belongs to
    /// `rotation[k]`.
    pub rotation: Vec<EdgeId>,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.rotation.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub generator: usize,
    pub recognizer: usize,
}

/// Planar bipartite instance with a rotation system.
///
/// Construction checks that every rotation lists exactly the incident edges,
/// that signature arities match degrees, that the graph is connected, and
/// that the rotation system satisfies Euler's formula for the sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    generators: Vec<Vertex>,
    recognizers: Vec<Vertex>,
    edges: Vec<Edge>,
    /// `(position in generator rotation, position in recognizer rotation)`.
    slots: Vec<(usize, usize)>,
}

impl Instance {
    pub fn new(
        generators: Vec<Vertex>,
        recognizers: Vec<Vertex>,
        edges: Vec<Edge>,
    ) -> Result<Self, Error> {
        if edges.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let mut slots = vec![(usize::MAX, usize::MAX); edges.len()];
        for (side, list) in [
            (Side::Generator, &generators),
            (Side::Recognizer, &recognizers),
        ] {
            for (vi, v) in list.iter().enumerate() {
                let mismatch = |detail: String| Error::RotationMismatch {
                    vertex: v.name.clone(),
                    detail,
                };
                for (pos, &e) in v.rotation.iter().enumerate() {
                    let edge = edges
                        .get(e)
                        .ok_or_else(|| mismatch(format!("unknown edge index {e}")))?;
                    let (owner, slot) = match side {
                        Side::Generator => (edge.generator, &mut slots[e].0),
                        Side::Recognizer => (edge.recognizer, &mut slots[e].1),
                    };
                    if owner != vi {
                        return Err(mismatch(format!("edge `{}` is not incident", edge.name)));
                    }
                    if *slot != usize::MAX {
                        return Err(mismatch(format!("edge `{}` listed twice", edge.name)));
                    }
                    *slot = pos;
                }
                if v.signature.arity() != v.degree() {
                    return Err(mismatch(format!(
                        "signature `{}` has arity {} but the vertex has degree {}",
                        v.label,
                        v.signature.arity(),
                        v.degree()
                    )));
                }
            }
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.generator >= generators.len() || edge.recognizer >= recognizers.len() {
                return Err(Error::UnknownEdge(edge.name.clone()));
            }
            let (g, r) = slots[e];
            if g == usize::MAX {
                return Err(Error::RotationMismatch {
                    vertex: generators[edge.generator].name.clone(),
                    detail: format!("rotation omits incident edge `{}`", edge.name),
                });
            }
            if r == usize::MAX {
                return Err(Error::RotationMismatch {
                    vertex: recognizers[edge.recognizer].name.clone(),
                    detail: format!("rotation omits incident edge `{}`", edge.name),
                });
            }
        }
        let inst = Instance {
            generators,
            recognizers,
            edges,
            slots,
        };
        inst.check_connected()?;
        let faces = super::faces::trace_faces(&inst).len();
        let vertices = inst.generators.len() + inst.recognizers.len();
        if vertices + faces != inst.edges.len() + 2 {
            return Err(Error::NotPlanar {
                vertices,
                edges: inst.edges.len(),
                faces,
            });
        }
        Ok(inst)
    }

    fn check_connected(&self) -> Result<(), Error> {
        let ng = self.generators.len();
        let total = ng + self.recognizers.len();
        let index = |v: VertexId| match v {
            VertexId::Generator(i) => i,
            VertexId::Recognizer(i) => ng + i,
        };
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([VertexId::Generator(0)]);
        if ng == 0 {
            return Err(Error::Disconnected);
        }
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in self.rotation(v) {
                let w = self.other_end(e, v);
                if !std::mem::replace(&mut seen[index(w)], true) {
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn generators(&self) -> &[Vertex] {
        &self.generators
    }

    pub fn recognizers(&self) -> &[Vertex] {
        &self.recognizers
    }

    pub fn vertices(&self, side: Side) -> &[Vertex] {
        match side {
            Side::Generator => &self.generators,
            Side::Recognizer => &self.recognizers,
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        match v {
            VertexId::Generator(i) => &self.generators[i],
            VertexId::Recognizer(i) => &self.recognizers[i],
        }
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.vertex(v).rotation
    }

    /// Position of edge `e` in the rotation of its endpoint on `side`.
    pub fn slot(&self, e: EdgeId, side: Side) -> usize {
        match side {
            Side::Generator => self.slots[e].0,
            Side::Recognizer => self.slots[e].1,
        }
    }

    pub fn endpoint(&self, e: EdgeId, side: Side) -> VertexId {
        match side {
            Side::Generator => VertexId::Generator(self.edges[e].generator),
            Side::Recognizer => VertexId::Recognizer(self.edges[e].recognizer),
        }
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        match v {
            VertexId::Generator(_) => self.endpoint(e, Side::Recognizer),
            VertexId::Recognizer(_) => self.endpoint(e, Side::Generator),
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Copy with one vertex's signature replaced.
    pub fn with_signature(
        &self,
        v: VertexId,
        label: &str,
        signature: Signature,
    ) -> Result<Instance, Error> {
        let mut out = self.clone();
        let vertex = match v {
            VertexId::Generator(i) => &mut out.generators[i],
            VertexId::Recognizer(i) => &mut out.recognizers[i],
        };
        if signature.arity() != vertex.degree() {
            return Err(Error::RotationMismatch {
                vertex: vertex.name.clone(),
                detail: format!(
                    "signature arity {} != degree {}",
                    signature.arity(),
                    vertex.degree()
                ),
            });
        }
        vertex.label = label.to_string();
        vertex.signature = signature;
        Ok(out)
    }
}

/// Incremental builder used by the parser, the random generator and tests.
#[derive(Default)]
pub struct InstanceBuilder {
    generators: Vec<Vertex>,
    recognizers: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(&mut self, name: &str, label: &str, signature: Signature) -> usize {
        self.generators.push(Vertex {
            name: name.to_string(),
            label: label.to_string(),
            signature,
            rotation: Vec::new(),
        });
        self.generators.len() - 1
    }

    pub fn recognizer(&mut self, name: &str, label: &str, signature: Signature) -> usize {
        self.recognizers.push(Vertex {
            name: name.to_string(),
            label: label.to_string(),
            signature,
            rotation: Vec::new(),
        });
        self.recognizers.len() - 1
    }

    pub fn edge(&mut self, name: &str, generator: usize, recognizer: usize) -> EdgeId {
        self.edges.push(Edge {
            name: name.to_string(),
            generator,
            recognizer,
        });
        self.edges.len() - 1
    }

    pub fn rotation(&mut self, v: VertexId, rotation: Vec<EdgeId>) {
        match v {
            VertexId::Generator(i) => self.generators[i].rotation = rotation,
            VertexId::Recognizer(i) => self.recognizers[i].rotation = rotation,
        }
    }

    pub fn set_signature(&mut self, v: VertexId, label: &str, signature: Signature) {
        let vertex = match v {
            VertexId::Generator(i) => &mut self.generators[i],
            VertexId::Recognizer(i) => &mut self.recognizers[i],
        };
        vertex.label = label.to_string();
        vertex.signature = signature;
    }

    pub fn build(self) -> Result<Instance, Error> {
        Instance::new(self.generators, self.recognizers, self.edges)
    }
}
