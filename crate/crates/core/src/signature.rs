//! Local signatures, the change of basis applied to them, and their
//! realization as vectors of sub-Pfaffians.
//!
//! A signature of arity `d` has `2^d` coefficients. Coefficient `i` belongs to
//! the bit pattern `ε` whose most significant bit is the first incident edge
//! (in rotation order), so `i` enumerates `ε` in ascending binary order.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{spf_vector_capped, SkewMatrix};
use crate::error::Error;
use crate::rational::{format_rational, Rational};

/// Largest arity a signature may have.
pub const MAX_ARITY: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    arity: usize,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Signature {
    pub fn new(arity: usize, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if arity > MAX_ARITY {
            return Err(Error::OverCap {
                what: "signature arity",
                size: arity,
                cap: MAX_ARITY,
            });
        }
        let expected = 1usize << arity;
        if coeffs.len() != expected {
            return Err(Error::SignatureLength {
                arity,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(Signature { arity, coeffs })
    }

    pub fn from_i64(arity: usize, coeffs: &[i64]) -> Result<Self, Error> {
        Signature::new(
            arity,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `1` on the all-zero and all-one patterns.
    pub fn equality(arity: usize) -> Self {
        Signature::from_fn(arity, |mask| mask == 0 || mask == full_mask(arity))
    }

    /// `1` everywhere except the all-zero and all-one patterns.
    pub fn not_all_equal(arity: usize) -> Self {
        Signature::from_fn(arity, |mask| mask != 0 && mask != full_mask(arity))
    }

    fn from_fn(arity: usize, f: impl Fn(u64) -> bool) -> Self {
        assert!(arity <= MAX_ARITY);
        let coeffs = (0..1u64 << arity)
            .map(|i| {
                if f(pattern_to_mask(i, arity)) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Signature { arity, coeffs }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Coefficients in ascending-pattern order.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of the pattern given as a bit string, first edge first.
    pub fn at_bits(&self, bits: &[u8]) -> &Rational {
        assert_eq!(bits.len(), self.arity);
        let i = bits
            .iter()
            .fold(0usize, |acc, &b| acc << 1 | (b & 1) as usize);
        &self.coeffs[i]
    }

    /// Coefficient of the pattern whose support is `mask` (bit `k` = edge `k`).
    pub fn at_mask(&self, mask: u64) -> &Rational {
        &self.coeffs[mask_to_pattern(mask, self.arity) as usize]
    }

    pub fn scaled(&self, factor: &Rational) -> Signature {
        Signature {
            arity: self.arity,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Re-indexes the edges: edge `j` of the result is edge `order[j]` of `self`.
    pub fn permute_edges(&self, order: &[usize]) -> Signature {
        assert_eq!(order.len(), self.arity);
        let coeffs = (0..1u64 << self.arity)
            .map(|i| {
                let new_mask = pattern_to_mask(i, self.arity);
                let old_mask = order
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| new_mask >> j & 1 == 1)
                    .fold(0u64, |m, (_, &k)| m | 1 << k);
                self.at_mask(old_mask).clone()
            })
            .collect();
        Signature {
            arity: self.arity,
            coeffs,
        }
    }

    /// The signature read through `ε ↦ complement(ε)`.
    pub fn complemented(&self) -> Signature {
        Signature {
            arity: self.arity,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when each coefficient depends only on the weight of its pattern.
    pub fn is_symmetric(&self) -> bool {
        let mut by_weight: Vec<Option<&Rational>> = vec![None; self.arity + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let w = i.count_ones() as usize;
            match by_weight[w] {
                None => by_weight[w] = Some(c),
                Some(prev) if prev != c => return false,
                _ => {}
            }
        }
        true
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i.count_ones() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// True for the 0/1 signature `1` exactly on the two constant patterns.
    pub fn is_equality(&self) -> bool {
        *self == Signature::equality(self.arity)
    }

    pub fn is_boolean(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn full_mask(arity: usize) -> u64 {
    (1u64 << arity) - 1
}

/// Pattern index (first edge = most significant bit) to support mask
/// (edge `k` = bit `k`). The map is a bit reversal, hence an involution.
pub fn pattern_to_mask(pattern: u64, arity: usize) -> u64 {
    if arity == 0 {
        return 0;
    }
    pattern.reverse_bits() >> (64 - arity)
}

pub fn mask_to_pattern(mask: u64, arity: usize) -> u64 {
    pattern_to_mask(mask, arity)
}

/// Invertible 2×2 change of basis applied identically on every edge.
///
/// Column `b` of `t` is the image of basis vector `a_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    t: [[Rational; 2]; 2],
}

impl BasisChange {
    /// Column-major: `a_0 ↦ (c00, c10)`, `a_1 ↦ (c01, c11)`.
    pub fn from_columns(
        c00: Rational,
        c10: Rational,
        c01: Rational,
        c11: Rational,
    ) -> Result<Self, Error> {
        let b = BasisChange {
            t: [[c00, c01], [c10, c11]],
        };
        if b.determinant().is_zero() {
            return Err(Error::SingularBasis);
        }
        Ok(b)
    }

    pub fn identity() -> Self {
        BasisChange {
            t: [
                [Rational::one(), Rational::zero()],
                [Rational::zero(), Rational::one()],
            ],
        }
    }

    /// `a_0 ↦ a_0 + a_1`, `a_1 ↦ a_0 - a_1`.
    pub fn b2() -> Self {
        let one = Rational::one();
        BasisChange {
            t: [[one.clone(), one.clone()], [one.clone(), -one]],
        }
    }

    pub fn determinant(&self) -> Rational {
        &self.t[0][0] * &self.t[1][1] - &self.t[0][1] * &self.t[1][0]
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.t[row][col]
    }

    pub fn is_identity(&self) -> bool {
        *self == BasisChange::identity()
    }

    /// Inverse transpose: the change the dual basis undergoes.
    pub fn dual(&self) -> BasisChange {
        let det = self.determinant();
        let t = &self.t;
        // (T^{-1})^T = adj(T)^T / det
        BasisChange {
            t: [
                [&t[1][1] / &det, -&t[1][0] / &det],
                [-&t[0][1] / &det, &t[0][0] / &det],
            ],
        }
    }

    fn apply(&self, sig: &Signature) -> Signature {
        let d = sig.arity;
        let mut v = sig.coeffs.clone();
        for axis in 0..d {
            let bit = 1usize << (d - 1 - axis);
            for i in 0..v.len() {
                if i & bit != 0 {
                    continue;
                }
                let (v0, v1) = (&v[i], &v[i | bit]);
                let n0 = &self.t[0][0] * v0 + &self.t[0][1] * v1;
                let n1 = &self.t[1][0] * v0 + &self.t[1][1] * v1;
                v[i] = n0;
                v[i | bit] = n1;
            }
        }
        Signature {
            arity: d,
            coeffs: v,
        }
    }
}

/// Applies `T` to every tensor factor of a generator.
pub fn transform_generator(sig: &Signature, basis: &BasisChange) -> Signature {
    basis.apply(sig)
}

/// Applies the inverse transpose of `T` to every factor of a recognizer, so
/// that the generator–recognizer contraction is unchanged.
pub fn transform_recognizer(sig: &Signature, basis: &BasisChange) -> Signature {
    basis.dual().apply(sig)
}

/// Which coefficient a realization is normalized at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identification {
    /// `sig(ε) = scale · Pf(m on supp ε)`, normalized at `ε = 0…0`.
    Plain,
    /// `sig(ε) = scale · Pf(m on the zeros of ε)`, normalized at `ε = 1…1`.
    Reversed,
}

impl Identification {
    pub fn opposite(self) -> Self {
        match self {
            Identification::Plain => Identification::Reversed,
            Identification::Reversed => Identification::Plain,
        }
    }
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identification::Plain => "plain",
            Identification::Reversed => "reversed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRealization {
    pub matrix: SkewMatrix,
    pub scale: Rational,
    pub identification: Identification,
}

impl LocalRealization {
    pub fn is_reversed(&self) -> bool {
        self.identification == Identification::Reversed
    }

    /// Rebuilds the signature this realization stands for.
    pub fn to_signature(&self) -> Signature {
        let d = self.matrix.dim();
        let spf = spf_vector_capped(&self.matrix, MAX_ARITY).expect("arity within cap");
        let full = full_mask(d);
        let coeffs = (0..1u64 << d)
            .map(|i| {
                let mask = pattern_to_mask(i, d);
                let slot = match self.identification {
                    Identification::Plain => mask,
                    Identification::Reversed => full & !mask,
                };
                &self.scale * spf.get_mask(slot)
            })
            .collect();
        Signature { arity: d, coeffs }
    }
}

/// Why a signature is not a scaled sub-Pfaffian vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unrealizable {
    /// The coefficient used for normalization is zero.
    ZeroNormalizer(Identification),
    /// Both extreme coefficients vanish.
    BothExtremesZero,
    /// A coefficient on an odd-size support is nonzero.
    OddSupport { pattern: String },
    /// A coefficient disagrees with the sub-Pfaffian it should equal.
    Mismatch {
        pattern: String,
        expected: Rational,
        found: Rational,
    },
}

impl fmt::Display for Unrealizable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unrealizable::ZeroNormalizer(id) => write!(
                f,
                "normalizing coefficient for the {id} identification is zero"
            ),
            Unrealizable::BothExtremesZero => write!(f, "coefficients at 0…0 and 1…1 both vanish"),
            Unrealizable::OddSupport { pattern } => {
                write!(f, "nonzero coefficient at odd-support pattern {pattern}")
            }
            Unrealizable::Mismatch {
                pattern,
                expected,
                found,
            } => write!(
                f,
                "coefficient at {pattern} is {} but the sub-Pfaffian gives {}",
                format_rational(found),
                format_rational(expected)
            ),
        }
    }
}

impl Unrealizable {
    pub fn at(self, vertex: &str) -> Error {
        Error::NotRealizable {
            vertex: vertex.to_string(),
            reason: self.to_string(),
        }
    }
}

fn pattern_string(pattern: u64, arity: usize) -> String {
    (0..arity)
        .map(|k| {
            if pattern >> (arity - 1 - k) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Realizes `sig` in the requested identification, or explains why not.
///
/// The matrix is read off the weight-2 coefficients; every other
/// coefficient is then compared against its sub-Pfaffian. That exhaustive
/// comparison is exactly the Grassmann–Plücker test at this arity.
#[allow(clippy::result_large_err)]
pub fn realize_as(
    sig: &Signature,
    identification: Identification,
) -> Result<LocalRealization, Unrealizable> {
    let d = sig.arity;
    let oriented = match identification {
        Identification::Plain => sig.clone(),
        Identification::Reversed => sig.complemented(),
    };
    let scale = oriented.coeffs[0].clone();
    if scale.is_zero() {
        return Err(Unrealizable::ZeroNormalizer(identification));
    }
    let matrix = SkewMatrix::from_upper(d, |k, l| oriented.at_mask(1 << k | 1 << l) / &scale);
    let spf = spf_vector_capped(&matrix, MAX_ARITY).expect("arity within cap");
    for i in 0..1u64 << d {
        let mask = pattern_to_mask(i, d);
        let found = &oriented.coeffs[i as usize] / &scale;
        let expected = spf.get_mask(mask);
        if found != *expected {
            // Report in terms of the caller's pattern, not the complemented one.
            let caller_pattern = match identification {
                Identification::Plain => i,
                Identification::Reversed => full_mask(d) & !i,
            };
            let pattern = pattern_string(caller_pattern, d);
            return Err(if mask.count_ones() % 2 == 1 {
                Unrealizable::OddSupport { pattern }
            } else {
                Unrealizable::Mismatch {
                    pattern,
                    expected: expected * &scale,
                    found: found * &scale,
                }
            });
        }
    }
    Ok(LocalRealization {
        matrix,
        scale,
        identification,
    })
}

/// Plain identification when the first coefficient is nonzero, otherwise
/// the reversed one when the last coefficient is nonzero.
pub fn realize(sig: &Signature) -> Result<LocalRealization, Error> {
    let first = &sig.coeffs[0];
    let last = &sig.coeffs[sig.coeffs.len() - 1];
    let attempt = if !first.is_zero() {
        realize_as(sig, Identification::Plain)
    } else if !last.is_zero() {
        realize_as(sig, Identification::Reversed)
    } else {
        Err(Unrealizable::BothExtremesZero)
    };
    attempt.map_err(|e| e.at("signature"))
}
