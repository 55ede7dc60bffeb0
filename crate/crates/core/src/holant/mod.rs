//! The counting engine: realize every local signature as a scaled vector of
//! sub-Pfaffians, stack the blocks, move them into a common curve order and
//! evaluate `αβ·Pf(z̃ + y)`.
//!
//! The pairing `Σ_ε G(ε)·R(ε)` is a single Pfaffian only when one side is
//! indexed by supports and the other by complements. So either the
//! generators use the plain identification and the recognizers the reversed
//! one, or the other way round. Since `Pf(z̃ + y) = Pf(ỹ + z)`, the generator
//! matrix is the one tilded in both cases.

mod oracle;

use serde_json::{json, Value};

use crate::algebra::{conjugate_by_permutation, pfaffian, tilde, Permutation, SkewMatrix};
use crate::error::Error;
use crate::planar::{
    curve_order, grouped_order, EdgeId, EdgeOrder, Instance, Orientation, Side, VertexId,
};
use crate::rational::{format_rational, Rational};
use crate::signature::{
    realize_as, transform_generator, transform_recognizer, BasisChange, Identification,
    LocalRealization, Unrealizable,
};

pub use oracle::{
    brute_force_contraction, brute_force_contraction_capped, brute_force_sat,
    brute_force_sat_capped, CONTRACTION_CAP, SAT_CAP,
};

/// Realized local blocks in edge order, ready for one Pfaffian evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    /// Block diagonal over generators, indexed by the generator order.
    pub z: SkewMatrix,
    /// Block diagonal over recognizers, indexed by the recognizer order.
    pub y: SkewMatrix,
    /// Generator-order position to curve-order position.
    pub pi: Permutation,
    /// Recognizer-order position to curve-order position.
    pub tau: Permutation,
    pub alpha: Rational,
    pub beta: Rational,
    pub order: EdgeOrder,
    pub generator_order: EdgeOrder,
    pub recognizer_order: EdgeOrder,
    /// Identification used on the generator side; recognizers use the
    /// opposite one.
    pub generator_identification: Identification,
}

impl Assembly {
    /// `z` conjugated into the curve order.
    pub fn z_in_order(&self) -> SkewMatrix {
        conjugate_by_permutation(&self.z, &self.pi).expect("dimensions agree")
    }

    /// `y` conjugated into the curve order.
    pub fn y_in_order(&self) -> SkewMatrix {
        conjugate_by_permutation(&self.y, &self.tau).expect("dimensions agree")
    }

    /// `z̃ + y` in the curve order.
    pub fn combined(&self) -> SkewMatrix {
        &tilde(&self.z_in_order()) + &self.y_in_order()
    }
}

/// Vertices of `side` in the order their groups appear in `grouped`, each
/// with its edges as they appear there.
fn groups(inst: &Instance, grouped: &EdgeOrder, side: Side) -> Vec<(VertexId, Vec<EdgeId>)> {
    let mut out: Vec<(VertexId, Vec<EdgeId>)> = Vec::new();
    for &e in grouped.sequence() {
        let v = inst.endpoint(e, side);
        match out.last_mut() {
            Some((w, edges)) if *w == v => edges.push(e),
            _ => out.push((v, vec![e])),
        }
    }
    out
}

struct Candidate {
    name: String,
    plain: Result<LocalRealization, Unrealizable>,
    reversed: Result<LocalRealization, Unrealizable>,
}

impl Candidate {
    fn get(&self, id: Identification) -> Result<&LocalRealization, &Unrealizable> {
        match id {
            Identification::Plain => self.plain.as_ref(),
            Identification::Reversed => self.reversed.as_ref(),
        }
    }
}

fn candidates(
    inst: &Instance,
    basis: &BasisChange,
    grouped: &EdgeOrder,
    side: Side,
) -> Vec<Candidate> {
    groups(inst, grouped, side)
        .into_iter()
        .map(|(v, local)| {
            let vertex = inst.vertex(v);
            let transformed = match side {
                Side::Generator => transform_generator(&vertex.signature, basis),
                Side::Recognizer => transform_recognizer(&vertex.signature, basis),
            };
            // Re-index from rotation order to the order the edges appear in
            // the curve order.
            let slots: Vec<usize> = local.iter().map(|&e| inst.slot(e, side)).collect();
            let sig = transformed.permute_edges(&slots);
            Candidate {
                name: vertex.name.clone(),
                plain: realize_as(&sig, Identification::Plain),
                reversed: realize_as(&sig, Identification::Reversed),
            }
        })
        .collect()
}

fn first_blocker(side: &[Candidate], id: Identification) -> Option<(&Candidate, &Unrealizable)> {
    side.iter().find_map(|c| c.get(id).err().map(|e| (c, e)))
}

fn stack(side: &[Candidate], id: Identification) -> (SkewMatrix, Rational) {
    let mut scale = Rational::from_integer(1.into());
    let blocks: Vec<SkewMatrix> = side
        .iter()
        .map(|c| {
            let r = c.get(id).expect("checked realizable");
            scale *= &r.scale;
            r.matrix.clone()
        })
        .collect();
    (SkewMatrix::block_diagonal(&blocks), scale)
}

/// Realizes and stacks every local signature for the given curve order.
///
/// `order` must be valid for `inst` (a curve order, or an order accepted by
/// [`crate::planar::validate_order`]); the signs of the result rest on it.
pub fn assemble(
    inst: &Instance,
    basis: &BasisChange,
    order: &EdgeOrder,
) -> Result<Assembly, Error> {
    let n = inst.edge_count();
    if n % 2 == 1 {
        return Err(Error::OddEdgeCount(n));
    }
    if order.len() != n {
        return Err(Error::InvalidOrder(format!(
            "order lists {} edges, instance has {n}",
            order.len()
        )));
    }
    let (generator_order, pi) = grouped_order(inst, order, Side::Generator);
    let (recognizer_order, tau) = grouped_order(inst, order, Side::Recognizer);
    let gens = candidates(inst, basis, &generator_order, Side::Generator);
    let recs = candidates(inst, basis, &recognizer_order, Side::Recognizer);

    // Prefer plain generators; fall back to reversed generators.
    let options = [Identification::Plain, Identification::Reversed];
    let chosen = options.into_iter().find(|&g| {
        first_blocker(&gens, g).is_none() && first_blocker(&recs, g.opposite()).is_none()
    });
    let Some(g_id) = chosen else {
        for c in gens.iter().chain(&recs) {
            if let (Err(e), Err(_)) = (&c.plain, &c.reversed) {
                let e = if c.plain.as_ref().err()
                    == Some(&Unrealizable::ZeroNormalizer(Identification::Plain))
                {
                    c.reversed.as_ref().err().unwrap_or(e)
                } else {
                    e
                };
                return Err(e.clone().at(&c.name));
            }
        }
        // Every vertex has some realization, but not a consistent one.
        let (side_name, c, _) = [
            (
                Side::Generator,
                first_blocker(&gens, Identification::Reversed),
            ),
            (
                Side::Recognizer,
                first_blocker(&recs, Identification::Plain),
            ),
            (Side::Generator, first_blocker(&gens, Identification::Plain)),
            (
                Side::Recognizer,
                first_blocker(&recs, Identification::Reversed),
            ),
        ]
        .into_iter()
        .find_map(|(s, b)| b.map(|(c, e)| (s, c, e)))
        .expect("some vertex blocks each option");
        let id = if c.plain.is_ok() {
            Identification::Plain
        } else {
            Identification::Reversed
        };
        return Err(Error::ParityMismatch {
            vertex: c.name.clone(),
            reason: format!(
                "this {side_name} only admits the {id} identification, which leaves no complementary \
                 choice for the other side"
            ),
        });
    };
    let (z, alpha) = stack(&gens, g_id);
    let (y, beta) = stack(&recs, g_id.opposite());
    Ok(Assembly {
        z,
        y,
        pi,
        tau,
        alpha,
        beta,
        order: order.clone(),
        generator_order,
        recognizer_order,
        generator_identification: g_id,
    })
}

/// Result of one evaluation. `count = alpha · beta · pfaffian`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub count: Rational,
    pub pfaffian: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    /// Edge names in the order used.
    pub order: Vec<String>,
    pub generator_identification: Identification,
    pub matrix: Option<SkewMatrix>,
}

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

impl CountReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": REPORT_SCHEMA,
            "count": format_rational(&self.count),
            "pfaffian": format_rational(&self.pfaffian),
            "alpha": format_rational(&self.alpha),
            "beta": format_rational(&self.beta),
            "order": self.order,
            "generator_identification": self.generator_identification.to_string(),
        });
        if let Some(m) = &self.matrix {
            let rows: Vec<Vec<String>> = (0..m.dim())
                .map(|i| {
                    (0..m.dim())
                        .map(|j| format_rational(&m.get(i, j)))
                        .collect()
                })
                .collect();
            v["matrix"] = json!(rows);
        }
        v
    }
}

/// Evaluates an assembly. The combined matrix is kept when `keep_matrix`.
pub fn evaluate(inst: &Instance, asm: &Assembly, keep_matrix: bool) -> CountReport {
    let m = asm.combined();
    let pf = pfaffian(&m);
    CountReport {
        count: &asm.alpha * &asm.beta * &pf,
        pfaffian: pf,
        alpha: asm.alpha.clone(),
        beta: asm.beta.clone(),
        order: asm
            .order
            .sequence()
            .iter()
            .map(|&e| inst.edges()[e].name.clone())
            .collect(),
        generator_identification: asm.generator_identification,
        matrix: keep_matrix.then_some(m),
    }
}

/// Counts using the canonical curve order.
pub fn count(inst: &Instance, basis: &BasisChange) -> Result<CountReport, Error> {
    let order = curve_order(inst, None, Orientation::Forward)?;
    count_with_order(inst, basis, &order)
}

/// Counts using `order`, which must be valid for `inst`.
pub fn count_with_order(
    inst: &Instance,
    basis: &BasisChange,
    order: &EdgeOrder,
) -> Result<CountReport, Error> {
    let asm = assemble(inst, basis, order)?;
    Ok(evaluate(inst, &asm, false))
}

/// `z̃ + y` in the curve order, one tab-separated row per line.
pub fn emit_matrix(asm: &Assembly) -> String {
    asm.combined().to_string()
}
