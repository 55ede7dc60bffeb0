//! Exponential ground-truth evaluators, used to check the Pfaffian count.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::planar::{Instance, Side};
use crate::rational::Rational;

/// Default ceiling on `|E|` for [`brute_force_contraction`].
pub const CONTRACTION_CAP: usize = 24;
/// Default ceiling on the number of variables for [`brute_force_sat`].
pub const SAT_CAP: usize = 30;

struct Contraction<'a> {
    inst: &'a Instance,
    /// Recognizers whose last generator (by index) is `g`.
    completes_at: Vec<Vec<usize>>,
}

impl Contraction<'_> {
    fn recognizer_value(&self, s: usize, bits: &[u8]) -> &Rational {
        let r = &self.inst.recognizers()[s];
        let pattern = r
            .rotation
            .iter()
            .fold(0usize, |p, &e| p << 1 | bits[e] as usize);
        &r.signature.coefficients()[pattern]
    }

    /// Sum over all patterns of generators `g..`, given `bits` fixed on the
    /// edges of earlier generators.
    fn descend(&self, g: usize, bits: &mut [u8]) -> Rational {
        let Some(x) = self.inst.generators().get(g) else {
            return Rational::one();
        };
        let mut total = Rational::zero();
        for pattern in 0..x.signature.coefficients().len() {
            if let Some(w) = self.branch(g, pattern, bits) {
                total += w;
            }
        }
        total
    }

    fn branch(&self, g: usize, pattern: usize, bits: &mut [u8]) -> Option<Rational> {
        let x = &self.inst.generators()[g];
        let coeff = &x.signature.coefficients()[pattern];
        if coeff.is_zero() {
            return None;
        }
        let d = x.degree();
        for (k, &e) in x.rotation.iter().enumerate() {
            bits[e] = (pattern >> (d - 1 - k) & 1) as u8;
        }
        let mut w = coeff.clone();
        for &s in &self.completes_at[g] {
            let r = self.recognizer_value(s, bits);
            if r.is_zero() {
                return None;
            }
            w *= r;
        }
        let rest = self.descend(g + 1, bits);
        Some(w * rest)
    }
}

/// `Σ_ε Π_i G_i(ε|E_i) Π_s R_s(ε|E_s)` over all edge assignments, on the
/// signatures as given (no basis change).
pub fn brute_force_contraction(inst: &Instance) -> Result<Rational, Error> {
    brute_force_contraction_capped(inst, CONTRACTION_CAP, false)
}

/// As [`brute_force_contraction`]; with `parallel` the patterns of the first
/// generator are summed on separate workers. Exact addition makes the result
/// identical either way.
pub fn brute_force_contraction_capped(
    inst: &Instance,
    cap: usize,
    parallel: bool,
) -> Result<Rational, Error> {
    let n = inst.edge_count();
    if n > cap {
        return Err(Error::OverCap {
            what: "contraction edge count",
            size: n,
            cap,
        });
    }
    let mut completes_at = vec![Vec::new(); inst.generators().len()];
    for (s, r) in inst.recognizers().iter().enumerate() {
        let last = r.rotation.iter().map(|&e| inst.edges()[e].generator).max();
        if let Some(g) = last {
            completes_at[g].push(s);
        }
    }
    let c = Contraction { inst, completes_at };
    if !parallel {
        return Ok(c.descend(0, &mut vec![0u8; n]));
    }
    let patterns = inst.generators()[0].signature.coefficients().len();
    Ok((0..patterns)
        .into_par_iter()
        .filter_map(|p| c.branch(0, p, &mut vec![0u8; n]))
        .reduce(Rational::zero, |a, b| a + b))
}

fn check_boolean(inst: &Instance) -> Result<(), Error> {
    for x in inst.generators() {
        if !x.signature.is_equality() {
            return Err(Error::NonBoolean(x.name.clone()));
        }
    }
    for r in inst.recognizers() {
        if !r.signature.is_boolean() {
            return Err(Error::NonBoolean(r.name.clone()));
        }
    }
    Ok(())
}

/// Counts truth assignments to the variables that satisfy every clause.
/// Requires equality generators and 0/1 recognizers.
pub fn brute_force_sat(inst: &Instance) -> Result<u64, Error> {
    brute_force_sat_capped(inst, SAT_CAP, false)
}

pub fn brute_force_sat_capped(inst: &Instance, cap: usize, parallel: bool) -> Result<u64, Error> {
    check_boolean(inst)?;
    let nv = inst.generators().len();
    if nv > cap {
        return Err(Error::OverCap {
            what: "variable count",
            size: nv,
            cap,
        });
    }
    let clauses: Vec<(Vec<usize>, Vec<bool>)> = inst
        .recognizers()
        .iter()
        .map(|r| {
            let vars = r
                .rotation
                .iter()
                .map(|&e| match inst.endpoint(e, Side::Generator) {
                    crate::planar::VertexId::Generator(g) => g,
                    crate::planar::VertexId::Recognizer(_) => unreachable!("generator endpoint"),
                })
                .collect();
            let accepts = r
                .signature
                .coefficients()
                .iter()
                .map(|c| c.is_one())
                .collect();
            (vars, accepts)
        })
        .collect();
    let satisfied = |mask: u64| {
        clauses.iter().all(|(vars, accepts)| {
            let pattern = vars
                .iter()
                .fold(0usize, |p, &g| p << 1 | (mask >> g & 1) as usize);
            accepts[pattern]
        })
    };
    let total = 1u64 << nv;
    Ok(if parallel {
        (0..total).into_par_iter().filter(|&m| satisfied(m)).count() as u64
    } else {
        (0..total).filter(|&m| satisfied(m)).count() as u64
    })
}
