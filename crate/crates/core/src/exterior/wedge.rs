use std::fmt;

/// A strictly increasing list of 0-based variable indices.
///
/// Labels the basis element `dx_{i1} ^ .. ^ dx_{ip}` of forms and
/// `d/dx_{i1} ^ .. ^ d/dx_{ip}` of multivectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Wedge(Vec<usize>);

/// Sign of a permutation, as `1` or `-1`.
pub type Sign = i8;

impl Wedge {
    pub fn empty() -> Self {
        Wedge(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        Wedge(vec![i])
    }

    pub fn full(n: usize) -> Self {
        Wedge((0..n).collect())
    }

    /// Panics unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "wedge indices must be strictly increasing"
        );
        Wedge(indices)
    }

    /// Sorts `indices`, returning the sign of the sorting permutation, or
    /// `None` when an index repeats (the wedge vanishes).
    pub fn from_unsorted(mut indices: Vec<usize>) -> Option<(Wedge, Sign)> {
        let mut sign: Sign = 1;
        // insertion sort, counting transpositions
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
            if j > 0 && indices[j - 1] == indices[j] {
                return None;
            }
        }
        Some((Wedge(indices), sign))
    }

    /// `self ^ other`, sorted, with the sign of the sort.
    pub fn concat(&self, other: &Wedge) -> Option<(Wedge, Sign)> {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let mut inversions = 0usize;
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            if b == other.0.len() || (a < self.0.len() && self.0[a] < other.0[b]) {
                merged.push(self.0[a]);
                a += 1;
            } else if a < self.0.len() && self.0[a] == other.0[b] {
                return None;
            } else {
                // other[b] jumps over the remaining elements of self
                inversions += self.0.len() - a;
                merged.push(other.0[b]);
                b += 1;
            }
        }
        Some((Wedge(merged), if inversions.is_multiple_of(2) { 1 } else { -1 }))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    /// Drops the entry at `pos` (not the index value `pos`).
    pub fn remove_at(&self, pos: usize) -> Wedge {
        let mut v = self.0.clone();
        v.remove(pos);
        Wedge(v)
    }

    /// Removes the index values in `other`, which must be a subset.
    pub fn minus(&self, other: &Wedge) -> Wedge {
        Wedge(self.0.iter().copied().filter(|i| !other.contains(*i)).collect())
    }

    pub fn is_subset_of(&self, other: &Wedge) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self, n: usize) -> Wedge {
        Wedge((0..n).filter(|&i| !self.contains(i)).collect())
    }

    /// Sum of the weights of the indices.
    pub fn weight(&self, weights: &[u32]) -> i64 {
        self.0.iter().map(|&i| weights[i] as i64).sum()
    }

    /// All `p`-subsets of `0..n` in lexicographic order.
    pub fn subsets(n: usize, p: usize) -> Vec<Wedge> {
        Shuffles::new(n, p).map(|s| Wedge(s.head)).collect()
    }

    pub fn display(&self, names: &[String], symbol: &str) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&i| format!("{symbol}{}", names[i]))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// One `(p, k-p)`-shuffle of the positions `0..k`: `head` holds the images of
/// the first `p` slots, `tail` the rest, both increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub head: Vec<usize>,
    pub tail: Vec<usize>,
    pub sign: Sign,
}

/// Lazy lexicographic enumeration of the `(p, k-p)`-shuffles.
///
/// The sign is `(-1)^(sum_i head[i] - i)`: each head entry passes over exactly
/// `head[i] - i` tail entries.
pub struct Shuffles {
    k: usize,
    head: Option<Vec<usize>>,
}

impl Shuffles {
    pub fn new(k: usize, p: usize) -> Self {
        Shuffles {
            k,
            head: (p <= k).then(|| (0..p).collect()),
        }
    }
}

impl Iterator for Shuffles {
    type Item = Shuffle;

    fn next(&mut self) -> Option<Shuffle> {
        let head = self.head.as_mut()?;
        let current = head.clone();
        let p = head.len();
        // advance to the next combination
        let mut i = p;
        loop {
            if i == 0 {
                self.head = None;
                break;
            }
            i -= 1;
            if head[i] < self.k - p + i {
                head[i] += 1;
                for j in i + 1..p {
                    head[j] = head[j - 1] + 1;
                }
                break;
            }
        }
        let displaced: usize = current.iter().enumerate().map(|(i, &h)| h - i).sum();
        let tail = (0..self.k).filter(|x| !current.contains(x)).collect();
        Some(Shuffle {
            head: current,
            tail,
            sign: if displaced.is_multiple_of(2) { 1 } else { -1 },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sign(perm: &[usize]) -> Sign {
        let mut inv = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn shuffle_count_and_signs() {
        for k in 0..=6 {
            for p in 0..=k {
                let all: Vec<_> = Shuffles::new(k, p).collect();
                let binom = (1..=p).fold(1usize, |acc, i| acc * (k + 1 - i) / i);
                assert_eq!(all.len(), binom);
                for s in &all {
                    let perm: Vec<usize> = s.head.iter().chain(&s.tail).copied().collect();
                    assert_eq!(s.sign, brute_sign(&perm));
                }
            }
        }
        assert_eq!(Shuffles::new(2, 3).count(), 0);
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(Wedge::from_unsorted(vec![1, 0]), Some((Wedge::new(vec![0, 1]), -1)));
        assert_eq!(Wedge::from_unsorted(vec![2, 0, 1]), Some((Wedge::new(vec![0, 1, 2]), 1)));
        assert_eq!(Wedge::from_unsorted(vec![0, 1, 0]), None);
        let a = Wedge::new(vec![1, 3]);
        let b = Wedge::new(vec![0, 2]);
        assert_eq!(a.concat(&b), Some((Wedge::new(vec![0, 1, 2, 3]), -1)));
        assert_eq!(a.concat(&Wedge::single(3)), None);
    }
}
