//! The line-oriented instance format.
//!
//! ```text
//! # comment
//! basis b2                      # identity | b2 | custom a b c d
//! sig HALF 2 1/2 0 0 1/2        # custom signature, coefficients in ε order
//! var x1                        # generator, defaults to EQ
//! var x2 HALF
//! clause c1                     # recognizer, defaults to NAE
//! edge 1 x1 c1
//! rot x1 1 2                    # clockwise incident edges
//! order 1 2 3                   # optional linear edge order
//! ```
//!
//! A file holding `fvertex`/`fedge` lines describes a plain graph for
//! forest counting instead.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::Error;
use crate::forests::SimpleGraph;
use crate::planar::{EdgeId, Instance, InstanceBuilder, VertexId};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::signature::{BasisChange, Signature};

pub const EQ: &str = "EQ";
pub const NAE: &str = "NAE";

/// A parsed counting instance with its basis and optional edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub basis: BasisChange,
    pub order: Option<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Parsed {
    Instance(InstanceFile),
    Graph(SimpleGraph),
}

impl Parsed {
    pub fn into_instance(self) -> Result<InstanceFile, Error> {
        match self {
            Parsed::Instance(f) => Ok(f),
            Parsed::Graph(_) => Err(Error::parse(
                0,
                "expected a counting instance, found a forest graph",
            )),
        }
    }

    pub fn into_graph(self) -> Result<SimpleGraph, Error> {
        match self {
            Parsed::Graph(g) => Ok(g),
            Parsed::Instance(_) => Err(Error::parse(
                0,
                "expected a forest graph, found a counting instance",
            )),
        }
    }
}

struct Declared {
    name: String,
    sig: String,
    line: usize,
    rotation: Option<Vec<String>>,
}

#[derive(Default)]
struct Collected {
    basis: Option<BasisChange>,
    sigs: HashMap<String, Signature>,
    vars: Vec<Declared>,
    clauses: Vec<Declared>,
    edges: Vec<(String, String, String, usize)>,
    order: Option<(Vec<String>, usize)>,
    fvertices: Vec<String>,
    fedges: Vec<(String, String, usize)>,
}

pub fn parse(text: &str) -> Result<Parsed, Error> {
    let mut c = Collected::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = words.split_first() else {
            continue;
        };
        parse_directive(&mut c, line, directive, args)?;
    }
    let counting = !(c.vars.is_empty() && c.clauses.is_empty() && c.edges.is_empty());
    let graph = !(c.fvertices.is_empty() && c.fedges.is_empty());
    match (counting, graph) {
        (true, true) => Err(Error::parse(
            0,
            "file mixes counting directives with fvertex/fedge",
        )),
        (false, true) => build_graph(c).map(Parsed::Graph),
        (_, false) => build_instance(c).map(Parsed::Instance),
    }
}

fn parse_directive(
    c: &mut Collected,
    line: usize,
    directive: &str,
    args: &[&str],
) -> Result<(), Error> {
    let err = |msg: String| Error::parse(line, msg);
    let rational =
        |s: &str| parse_rational(s).map_err(|_| err(format!("`{s}` is not a rational number")));
    match directive {
        "basis" => {
            if c.basis.is_some() {
                return Err(err("second `basis` directive".into()));
            }
            let basis = match args {
                ["identity"] => BasisChange::identity(),
                ["b2"] => BasisChange::b2(),
                ["custom", a, b, cc, d] => {
                    BasisChange::from_columns(rational(a)?, rational(b)?, rational(cc)?, rational(d)?)
                        .map_err(|e| err(e.to_string()))?
                }
                ["edge", ..] => {
                    return Err(err("per-edge basis changes are reserved syntax and not supported; use one global basis".into()))
                }
                _ => return Err(err("expected `basis identity`, `basis b2` or `basis custom a b c d`".into())),
            };
            c.basis = Some(basis);
        }
        "sig" => {
            let [name, arity, coeffs @ ..] = args else {
                return Err(err("expected `sig NAME d c_0 … c_{2^d-1}`".into()));
            };
            if *name == EQ || *name == NAE {
                return Err(err(format!("`{name}` is a builtin signature name")));
            }
            if c.sigs.contains_key(*name) {
                return Err(err(format!("signature `{name}` declared twice")));
            }
            let d: usize = arity
                .parse()
                .map_err(|_| err(format!("bad arity `{arity}`")))?;
            let coeffs = coeffs
                .iter()
                .map(|s| rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let sig = Signature::new(d, coeffs).map_err(|e| err(e.to_string()))?;
            c.sigs.insert(name.to_string(), sig);
        }
        "var" | "clause" => {
            let (name, sig) = match args {
                [name] => (*name, if directive == "var" { EQ } else { NAE }),
                [name, sig] => (*name, *sig),
                _ => return Err(err(format!("expected `{directive} NAME [SIG]`"))),
            };
            let taken = c.vars.iter().chain(&c.clauses).any(|v| v.name == name);
            if taken {
                return Err(err(format!("vertex `{name}` declared twice")));
            }
            let decl = Declared {
                name: name.to_string(),
                sig: sig.to_string(),
                line,
                rotation: None,
            };
            if directive == "var" {
                c.vars.push(decl);
            } else {
                c.clauses.push(decl);
            }
        }
        "edge" => {
            let [id, var, clause] = args else {
                return Err(err("expected `edge ID VAR CLAUSE`".into()));
            };
            if c.edges.iter().any(|e| e.0 == *id) {
                return Err(err(format!("edge `{id}` declared twice")));
            }
            c.edges
                .push((id.to_string(), var.to_string(), clause.to_string(), line));
        }
        "rot" => {
            let [vertex, edges @ ..] = args else {
                return Err(err("expected `rot VERTEX e_1 … e_d`".into()));
            };
            let decl = c
                .vars
                .iter_mut()
                .chain(c.clauses.iter_mut())
                .find(|v| v.name == *vertex)
                .ok_or_else(|| err(format!("`rot` for undeclared vertex `{vertex}`")))?;
            if decl.rotation.is_some() {
                return Err(err(format!("second `rot` line for `{vertex}`")));
            }
            decl.rotation = Some(edges.iter().map(|s| s.to_string()).collect());
        }
        "order" => {
            if c.order.is_some() {
                return Err(err("second `order` directive".into()));
            }
            c.order = Some((args.iter().map(|s| s.to_string()).collect(), line));
        }
        "fvertex" => {
            let [name] = args else {
                return Err(err("expected `fvertex NAME`".into()));
            };
            if c.fvertices.iter().any(|v| v == name) {
                return Err(err(format!("vertex `{name}` declared twice")));
            }
            c.fvertices.push(name.to_string());
        }
        "fedge" => {
            let [u, v] = args else {
                return Err(err("expected `fedge U V`".into()));
            };
            c.fedges.push((u.to_string(), v.to_string(), line));
        }
        other => return Err(err(format!("unknown directive `{other}`"))),
    }
    Ok(())
}

fn build_graph(c: Collected) -> Result<SimpleGraph, Error> {
    let lookup = |name: &str, line: usize| {
        c.fvertices.iter().position(|v| v == name).ok_or_else(|| {
            Error::parse(
                line,
                format!("`fedge` references undeclared vertex `{name}`"),
            )
        })
    };
    let mut edges = Vec::with_capacity(c.fedges.len());
    for (u, v, line) in &c.fedges {
        let (a, b) = (lookup(u, *line)?, lookup(v, *line)?);
        if a == b {
            return Err(Error::parse(*line, format!("self-loop at `{u}`")));
        }
        edges.push((a, b));
    }
    SimpleGraph::new(c.fvertices, edges)
}

fn build_instance(c: Collected) -> Result<InstanceFile, Error> {
    if c.edges.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let mut b = InstanceBuilder::new();
    let placeholder = Signature::equality(1);
    let mut var_index = HashMap::new();
    for v in &c.vars {
        var_index.insert(
            v.name.as_str(),
            b.generator(&v.name, &v.sig, placeholder.clone()),
        );
    }
    let mut clause_index = HashMap::new();
    for v in &c.clauses {
        clause_index.insert(
            v.name.as_str(),
            b.recognizer(&v.name, &v.sig, placeholder.clone()),
        );
    }
    let mut edge_index = HashMap::new();
    for (id, var, clause, line) in &c.edges {
        let g = *var_index.get(var.as_str()).ok_or_else(|| {
            Error::parse(
                *line,
                format!("edge `{id}` references undeclared variable `{var}`"),
            )
        })?;
        let r = *clause_index.get(clause.as_str()).ok_or_else(|| {
            Error::parse(
                *line,
                format!("edge `{id}` references undeclared clause `{clause}`"),
            )
        })?;
        edge_index.insert(id.as_str(), b.edge(id, g, r));
    }
    let resolve_edges = |names: &[String], line: usize| -> Result<Vec<EdgeId>, Error> {
        names
            .iter()
            .map(|n| {
                edge_index
                    .get(n.as_str())
                    .copied()
                    .ok_or_else(|| Error::parse(line, format!("unknown edge `{n}`")))
            })
            .collect()
    };
    let sides = [(&c.vars, true), (&c.clauses, false)];
    for (list, is_var) in sides {
        for (i, v) in list.iter().enumerate() {
            let rotation = v.rotation.as_ref().ok_or_else(|| {
                Error::parse(v.line, format!("vertex `{}` has no `rot` line", v.name))
            })?;
            let rotation = resolve_edges(rotation, v.line)?;
            let d = rotation.len();
            let sig =
                match v.sig.as_str() {
                    EQ => Signature::equality(d),
                    NAE => Signature::not_all_equal(d),
                    custom => c.sigs.get(custom).cloned().ok_or_else(|| {
                        Error::parse(v.line, format!("unknown signature `{custom}`"))
                    })?,
                };
            let id = if is_var {
                VertexId::Generator(i)
            } else {
                VertexId::Recognizer(i)
            };
            b.rotation(id, rotation);
            b.set_signature(id, &v.sig, sig);
        }
    }
    let instance = b.build()?;
    let order = match &c.order {
        Some((names, line)) => Some(resolve_edges(names, *line)?),
        None => None,
    };
    Ok(InstanceFile {
        instance,
        basis: c.basis.unwrap_or_else(BasisChange::b2),
        order,
    })
}

fn builtin(label: &str, arity: usize) -> Option<Signature> {
    match label {
        EQ => Some(Signature::equality(arity)),
        NAE => Some(Signature::not_all_equal(arity)),
        _ => None,
    }
}

/// Writes a file that parses back to an equal [`InstanceFile`].
///
/// Vertices whose label does not name one consistent signature get a fresh
/// `sig` declaration of their own.
pub fn serialize(file: &InstanceFile) -> String {
    let inst = &file.instance;
    let all: Vec<_> = inst.generators().iter().chain(inst.recognizers()).collect();
    let mut by_label: BTreeMap<&str, Vec<&Signature>> = BTreeMap::new();
    for v in &all {
        by_label
            .entry(v.label.as_str())
            .or_default()
            .push(&v.signature);
    }
    let reserved = |s: &str| s == EQ || s == NAE;
    let mut sigs: BTreeMap<String, Signature> = BTreeMap::new();
    let mut names: Vec<String> = Vec::with_capacity(all.len());
    for v in &all {
        let label = v.label.as_str();
        let consistent = by_label[label].iter().all(|s| **s == v.signature);
        let name = if builtin(label, v.degree()).as_ref() == Some(&v.signature)
            || (consistent && !reserved(label) && is_token(label))
        {
            label.to_string()
        } else {
            let mut fresh = format!("{}_{}", label, v.name);
            while by_label.contains_key(fresh.as_str())
                || sigs.contains_key(&fresh) && sigs[&fresh] != v.signature
            {
                fresh.push('_');
            }
            fresh
        };
        if builtin(&name, v.degree()).is_none() {
            sigs.insert(name.clone(), v.signature.clone());
        }
        names.push(name);
    }

    let mut out = String::new();
    let r = |x: &Rational| format_rational(x);
    let basis = &file.basis;
    if *basis == BasisChange::b2() {
        out.push_str("basis b2\n");
    } else if basis.is_identity() {
        out.push_str("basis identity\n");
    } else {
        let _ = writeln!(
            out,
            "basis custom {} {} {} {}",
            r(basis.entry(0, 0)),
            r(basis.entry(1, 0)),
            r(basis.entry(0, 1)),
            r(basis.entry(1, 1))
        );
    }
    for (name, sig) in &sigs {
        let coeffs: Vec<String> = sig.coefficients().iter().map(r).collect();
        let _ = writeln!(out, "sig {} {} {}", name, sig.arity(), coeffs.join(" "));
    }
    let ng = inst.generators().len();
    for (i, v) in inst.generators().iter().enumerate() {
        let _ = writeln!(out, "var {} {}", v.name, names[i]);
    }
    for (i, v) in inst.recognizers().iter().enumerate() {
        let _ = writeln!(out, "clause {} {}", v.name, names[ng + i]);
    }
    for e in inst.edges() {
        let _ = writeln!(
            out,
            "edge {} {} {}",
            e.name,
            inst.generators()[e.generator].name,
            inst.recognizers()[e.recognizer].name
        );
    }
    let edge_names = |ids: &[EdgeId]| {
        ids.iter()
            .map(|&e| inst.edges()[e].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for v in &all {
        let _ = writeln!(out, "rot {} {}", v.name, edge_names(&v.rotation));
    }
    if let Some(order) = &file.order {
        let _ = writeln!(out, "order {}", edge_names(order));
    }
    out
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('#')
}

/// Writes a forest graph in `fvertex`/`fedge` form.
pub fn serialize_graph(g: &SimpleGraph) -> String {
    let mut out = String::new();
    for v in g.vertex_names() {
        let _ = writeln!(out, "fvertex {v}");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "fedge {} {}", g.vertex_names()[u], g.vertex_names()[v]);
    }
    out
}
