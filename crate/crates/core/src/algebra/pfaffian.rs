//! Pfaffians, sub-Pfaffian vectors and the sign bookkeeping that turns a
//! complementary sub-Pfaffian pairing into a single Pfaffian.

use num_traits::{One, Zero};

use super::index::{sign_of_set, IndexSet, Permutation};
use super::matrix::SkewMatrix;
use crate::error::Error;
use crate::rational::Rational;

/// Default ceiling on `n` for operations that materialise all `2^n` subsets.
pub const EXPONENTIAL_CAP: usize = 20;

/// Pfaffian by skew-symmetric elimination.
///
/// Each step pivots row `k` onto its first nonzero entry, records
/// `z[k][k+1]` and replaces the trailing block by its Schur complement, which
/// is again skew-symmetric. `O(n^3)` rational operations.
#[allow(clippy::needless_range_loop)]
pub fn pfaffian(z: &SkewMatrix) -> Rational {
    let n = z.dim();
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| z.get(i, j)).collect())
        .collect();
    let mut pf = Rational::one();
    for k in (0..n).step_by(2) {
        let Some(piv) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Rational::zero();
        };
        if piv != k + 1 {
            a.swap(k + 1, piv);
            for row in a.iter_mut() {
                row.swap(k + 1, piv);
            }
            pf = -pf;
        }
        let p = a[k][k + 1].clone();
        pf *= &p;
        for i in k + 2..n {
            let (ci0, ci1) = (a[k][i].clone(), a[k + 1][i].clone());
            for j in i + 1..n {
                let (cj0, cj1) = (&a[k][j], &a[k + 1][j]);
                if (ci1.is_zero() || cj0.is_zero()) && (ci0.is_zero() || cj1.is_zero()) {
                    continue;
                }
                let delta = (&ci1 * cj0 - &ci0 * cj1) / &p;
                let v = &a[i][j] + delta;
                a[j][i] = -v.clone();
                a[i][j] = v;
            }
        }
    }
    pf
}

/// Pfaffian of the principal submatrix on `set`.
pub fn sub_pfaffian(z: &SkewMatrix, set: &IndexSet) -> Result<Rational, Error> {
    set.check_range(z.dim())?;
    if set.len() % 2 == 1 {
        return Ok(Rational::zero());
    }
    Ok(pfaffian(&z.principal(set.as_slice())))
}

/// All `2^n` sub-Pfaffians of a matrix, addressed by [`IndexSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPfaffians {
    n: usize,
    values: Vec<Rational>,
}

impl SubPfaffians {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, set: &IndexSet) -> &Rational {
        &self.values[set.mask() as usize]
    }

    pub fn get_mask(&self, mask: u64) -> &Rational {
        &self.values[mask as usize]
    }

    /// Entries ordered by subset size, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = (IndexSet, &Rational)> + '_ {
        let mut sets: Vec<IndexSet> = (0..self.values.len() as u64)
            .map(IndexSet::from_mask)
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.into_iter().map(move |s| {
            let v = &self.values[s.mask() as usize];
            (s, v)
        })
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.iter().map(|(_, v)| v.clone()).collect()
    }
}

pub fn spf_vector(z: &SkewMatrix) -> Result<SubPfaffians, Error> {
    spf_vector_capped(z, EXPONENTIAL_CAP)
}

/// Every sub-Pfaffian via expansion along the smallest index:
/// `Pf_I = Σ_t (-1)^(t+1) z[i_0][i_t] Pf_{I \ {i_0, i_t}}`, filled in order of
/// increasing mask so each right-hand side is already known.
pub fn spf_vector_capped(z: &SkewMatrix, cap: usize) -> Result<SubPfaffians, Error> {
    let n = z.dim();
    if n > cap || n >= 64 {
        return Err(Error::OverCap {
            what: "sub-Pfaffian vector dimension",
            size: n,
            cap,
        });
    }
    let size = 1usize << n;
    let mut values = vec![Rational::zero(); size];
    values[0] = Rational::one();
    for mask in 1..size {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = Rational::zero();
        let mut t = 0;
        for j in first + 1..n {
            if rest >> j & 1 == 0 {
                continue;
            }
            t += 1;
            let zij = z.upper(first, j);
            let sub = &values[rest & !(1 << j)];
            if zij.is_zero() || sub.is_zero() {
                continue;
            }
            if t % 2 == 1 {
                acc += zij * sub;
            } else {
                acc -= zij * sub;
            }
        }
        values[mask] = acc;
    }
    Ok(SubPfaffians { n, values })
}

/// `z̃[i][j] = (-1)^(i+j+1) z[i][j]` (1-based `i, j`): a checkerboard sign
/// flip whose diagonal-adjacent entries are left alone.
pub fn tilde(z: &SkewMatrix) -> SkewMatrix {
    // 0-based i + j has the same parity as the 1-based i + j.
    SkewMatrix::from_upper(z.dim(), |i, j| {
        let v = z.upper(i, j).clone();
        if (i + j) % 2 == 0 {
            -v
        } else {
            v
        }
    })
}

/// The matrix `w` with `w[p(i)][p(j)] = z[i][j]`.
pub fn conjugate_by_permutation(z: &SkewMatrix, p: &Permutation) -> Result<SkewMatrix, Error> {
    if p.len() != z.dim() {
        return Err(Error::DimensionMismatch {
            left: (z.dim(), z.dim()),
            right: (p.len(), p.len()),
        });
    }
    let mut w = SkewMatrix::zeros(z.dim());
    for i in 0..z.dim() {
        for j in i + 1..z.dim() {
            w.set(p.apply(i), p.apply(j), z.upper(i, j).clone());
        }
    }
    Ok(w)
}

fn check_pair(z: &SkewMatrix, y: &SkewMatrix, cap: usize) -> Result<(), Error> {
    if z.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: (z.dim(), z.dim()),
            right: (y.dim(), y.dim()),
        });
    }
    if z.dim() > cap {
        return Err(Error::OverCap {
            what: "pairing expansion dimension",
            size: z.dim(),
            cap,
        });
    }
    Ok(())
}

/// `Σ_{|I| even} sgn(I) Pf_I(z) Pf_{I^C}(y)`, which equals `Pf(z + y)`.
/// Exponential; for cross-checks only.
pub fn pfaffian_sum_expansion(z: &SkewMatrix, y: &SkewMatrix) -> Result<Rational, Error> {
    pfaffian_sum_expansion_capped(z, y, EXPONENTIAL_CAP)
}

pub fn pfaffian_sum_expansion_capped(
    z: &SkewMatrix,
    y: &SkewMatrix,
    cap: usize,
) -> Result<Rational, Error> {
    check_pair(z, y, cap)?;
    let (sz, sy) = (spf_vector_capped(z, cap)?, spf_vector_capped(y, cap)?);
    let full = (1u64 << z.dim()) - 1;
    let mut acc = Rational::zero();
    for mask in 0..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let term = sz.get_mask(mask) * sy.get_mask(full & !mask);
        if term.is_zero() {
            continue;
        }
        if sign_of_set(&IndexSet::from_mask(mask))? == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `⟨sPf(z), sPf∨(y)⟩ = Σ_I Pf_I(z) Pf_{I^C}(y)` evaluated term by term.
/// Equal to `Pf(tilde(z) + y)`; exponential, for cross-checks only.
pub fn complementary_pairing(z: &SkewMatrix, y: &SkewMatrix) -> Result<Rational, Error> {
    check_pair(z, y, EXPONENTIAL_CAP)?;
    let (sz, sy) = (spf_vector(z)?, spf_vector(y)?);
    let full = (1u64 << z.dim()) - 1;
    Ok((0..=full)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| sz.get_mask(m) * sy.get_mask(full & !m))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn set1(one_based: &[usize]) -> IndexSet {
        IndexSet::new(one_based.iter().map(|i| i - 1).collect()).unwrap()
    }

    /// Pfaffian straight from the perfect-matching expansion along row 0.
    fn pfaffian_by_expansion(z: &SkewMatrix) -> Rational {
        let n = z.dim();
        if n == 0 {
            return int(1);
        }
        if n % 2 == 1 {
            return int(0);
        }
        let mut acc = int(0);
        for j in 1..n {
            let rest: Vec<usize> = (1..n).filter(|&k| k != j).collect();
            let term = z.get(0, j) * pfaffian_by_expansion(&z.principal(&rest));
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn empty_and_two_by_two() {
        assert_eq!(pfaffian(&SkewMatrix::zeros(0)), int(1));
        let z = SkewMatrix::from_upper(2, |_, _| frac(7, 3));
        assert_eq!(pfaffian(&z), frac(7, 3));
        assert_eq!(pfaffian(&SkewMatrix::constant_upper(3, int(1))), int(0));
    }

    #[test]
    fn ones_above_diagonal() {
        // z12 z34 - z13 z24 + z14 z23 = 1 - 1 + 1
        assert_eq!(pfaffian(&SkewMatrix::constant_upper(4, int(1))), int(1));
        for n in [2, 6, 8, 10] {
            assert_eq!(pfaffian(&SkewMatrix::constant_upper(n, int(1))), int(1));
        }
    }

    #[test]
    fn pivoting_handles_zero_leading_entries() {
        let z =
            SkewMatrix::from_i64(&[&[0, 0, 2, 0], &[0, 0, 0, 3], &[-2, 0, 0, 0], &[0, -3, 0, 0]])
                .unwrap();
        // Only the matching {13}{24} survives, with sign -1.
        assert_eq!(pfaffian(&z), int(-6));
        assert_eq!(pfaffian(&z), pfaffian_by_expansion(&z));
        let zero_row =
            SkewMatrix::from_upper(4, |i, j| if i == 0 { int(0) } else { int((i + j) as i64) });
        assert_eq!(pfaffian(&zero_row), int(0));
    }

    #[test]
    fn elimination_matches_expansion() {
        let z = SkewMatrix::from_upper(6, |i, j| {
            frac((i * 7 + j * 3) as i64 % 11 - 5, (j - i) as i64)
        });
        assert_eq!(pfaffian(&z), pfaffian_by_expansion(&z));
    }

    #[test]
    fn sub_pfaffian_cases() {
        let z = SkewMatrix::constant_upper(3, frac(-1, 3));
        assert_eq!(sub_pfaffian(&z, &IndexSet::empty()).unwrap(), int(1));
        assert_eq!(sub_pfaffian(&z, &set1(&[2])).unwrap(), int(0));
        assert_eq!(sub_pfaffian(&z, &set1(&[1, 2, 3])).unwrap(), int(0));
        assert_eq!(sub_pfaffian(&z, &set1(&[2, 3])).unwrap(), frac(-1, 3));
        assert!(matches!(
            sub_pfaffian(&z, &set1(&[1, 4])),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
    }

    #[test]
    fn spf_vector_examples() {
        let z = SkewMatrix::from_i64(&[&[0, 1], &[-1, 0]]).unwrap();
        let v = spf_vector(&z).unwrap().to_vec();
        assert_eq!(v, vec![int(1), int(0), int(0), int(1)]);

        let z = SkewMatrix::constant_upper(3, frac(-1, 3));
        let t = frac(-1, 3);
        assert_eq!(
            spf_vector(&z).unwrap().to_vec(),
            vec![
                int(1),
                int(0),
                int(0),
                int(0),
                t.clone(),
                t.clone(),
                t,
                int(0)
            ]
        );
        let order: Vec<String> = spf_vector(&z)
            .unwrap()
            .iter()
            .map(|(s, _)| s.to_string())
            .collect();
        assert_eq!(
            order,
            ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
    }

    #[test]
    fn spf_vector_cap() {
        let z = SkewMatrix::zeros(5);
        assert!(matches!(
            spf_vector_capped(&z, 4),
            Err(Error::OverCap { .. })
        ));
        assert!(spf_vector_capped(&z, 5).is_ok());
    }

    #[test]
    fn tilde_signs() {
        let z = SkewMatrix::constant_upper(4, int(1));
        let t = tilde(&z);
        assert_eq!(t.get(0, 1), int(1));
        assert_eq!(t.get(0, 2), int(-1));
        assert_eq!(t.get(0, 3), int(1));
        assert_eq!(t.get(1, 2), int(1));
        assert_eq!(t.get(1, 3), int(-1));
        assert_eq!(t.get(2, 3), int(1));
        let flipped = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && t.get(i, j) != z.get(i, j))
            .count();
        assert_eq!(flipped, 4);
        assert_eq!(tilde(&t), z);
    }

    #[test]
    fn conjugation_examples() {
        let z = SkewMatrix::from_upper(2, |_, _| int(5));
        assert_eq!(
            conjugate_by_permutation(&z, &Permutation::identity(2)).unwrap(),
            z
        );
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let w = conjugate_by_permutation(&z, &swap).unwrap();
        assert_eq!(w.get(0, 1), int(-5));
        assert!(conjugate_by_permutation(&z, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn sum_expansion_small() {
        let z = SkewMatrix::from_upper(2, |_, _| int(3));
        let y = SkewMatrix::from_upper(2, |_, _| int(4));
        assert_eq!(pfaffian_sum_expansion(&z, &y).unwrap(), int(7));
        let z = SkewMatrix::from_upper(4, |i, j| int((i + 2 * j) as i64));
        assert_eq!(
            pfaffian_sum_expansion(&z, &SkewMatrix::zeros(4)).unwrap(),
            pfaffian(&z)
        );
        assert!(pfaffian_sum_expansion(&z, &SkewMatrix::zeros(2)).is_err());
    }
}
