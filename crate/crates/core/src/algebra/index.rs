use std::fmt;

use crate::error::Error;

/// Strictly increasing set of 0-based indices.
///
/// Displayed 1-based, matching the usual `{1..n}` labelling of rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn new(elements: Vec<usize>) -> Result<Self, Error> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet);
        }
        Ok(IndexSet(elements))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IndexSet(elements)
    }

    pub fn from_mask(mask: u64) -> Self {
        IndexSet((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    /// Bit `i` set iff `i` is in the set. Requires all elements `< 64`.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn check_range(&self, n: usize) -> Result<(), Error> {
        match self.0.last() {
            Some(&last) if last >= n => Err(Error::IndexOutOfRange { index: last, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `(-1)^(σ(I) + |I|/2)` with `σ(I)` the sum of the 1-based elements.
pub fn sign_of_set(set: &IndexSet) -> Result<i32, Error> {
    if !set.len().is_multiple_of(2) {
        return Err(Error::OddIndexSet(set.len()));
    }
    let sigma: usize = set.as_slice().iter().map(|i| i + 1).sum();
    Ok(if (sigma + set.len() / 2).is_multiple_of(2) {
        1
    } else {
        -1
    })
}

/// Bijection on `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotPermutation(n));
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Permutation) -> Permutation {
        Permutation(first.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Sign of the permutation restricted to `set`: the parity of the
    /// sequence `p(j_1), …, p(j_k)` for `j_1 < … < j_k`.
    pub fn restricted_sign(&self, set: &IndexSet) -> i32 {
        let images: Vec<usize> = set.as_slice().iter().map(|&j| self.0[j]).collect();
        sequence_sign(&images)
    }

    pub fn sign(&self) -> i32 {
        sequence_sign(&self.0)
    }
}

/// Parity of the inversion count of a sequence of distinct values.
pub fn sequence_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set1(one_based: &[usize]) -> IndexSet {
        IndexSet::new(one_based.iter().map(|i| i - 1).collect()).unwrap()
    }

    #[test]
    fn set_signs() {
        assert_eq!(sign_of_set(&IndexSet::empty()).unwrap(), 1);
        assert_eq!(sign_of_set(&set1(&[1, 2])).unwrap(), 1);
        assert_eq!(sign_of_set(&set1(&[1, 3])).unwrap(), -1);
        assert_eq!(sign_of_set(&set1(&[1, 2, 3, 4])).unwrap(), 1);
        assert!(matches!(
            sign_of_set(&set1(&[2])),
            Err(Error::OddIndexSet(1))
        ));
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![0, 2, 1]).is_err());
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert!(set1(&[1, 4]).check_range(3).is_err());
        assert_eq!(set1(&[1, 3]).complement(4), set1(&[2, 4]));
        assert_eq!(IndexSet::from_mask(0b1010), set1(&[2, 4]));
        assert_eq!(set1(&[2, 4]).mask(), 0b1010);
        assert_eq!(set1(&[1, 3]).to_string(), "{1,3}");
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.sign(), 1);
        assert!(p.compose(&p.inverse()).is_identity());
        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(swap.sign(), -1);
        assert_eq!(swap.restricted_sign(&IndexSet::full(2)), -1);
        assert_eq!(swap.restricted_sign(&set1(&[1, 3])), 1);
        // (q ∘ p)(i) = q(p(i))
        let q = Permutation::new(vec![2, 1, 0]).unwrap();
        assert_eq!(q.compose(&p).images(), &[1, 0, 2]);
    }
}
