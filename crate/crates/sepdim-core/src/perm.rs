//! Permutations of `[n]` and ordered multisets of them.
//!
//! A permutation is stored both as its image sequence `a_1..a_n` and as the
//! inverse position table, so that "value at position i" and "position of
//! value v" are both O(1). Vertices and positions are 1-based throughout the
//! public interface; this keeps constructed sequences directly comparable to
//! the fixtures.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: u32,
    v: u32,
}

impl Edge {
    pub fn new(a: u32, b: u32) -> Result<Edge, Error> {
        if a == b {
            return Err(Error::DegeneratePair { vertex: a });
        }
        if a == 0 || b == 0 {
            return Err(Error::VertexOutOfRange { vertex: 0, n: 0 });
        }
        Ok(Edge { u: a.min(b), v: a.max(b) })
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn contains(&self, w: u32) -> bool {
        self.u == w || self.v == w
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        !self.contains(other.u) && !self.contains(other.v)
    }

    pub(crate) fn check_in_range(&self, n: usize) -> Result<(), Error> {
        for w in [self.u, self.v] {
            if w as usize > n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// A total order of `[n]` as an image sequence plus its inverse table.
///
/// `Ord` compares image sequences lexicographically, which is also the
/// enumeration order used by the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<u32>,
    inv: Vec<u32>,
}

impl Permutation {
    /// The identity order `(1, 2, ..., n)`.
    pub fn identity(n: usize) -> Permutation {
        let image: Vec<u32> = (1..=n as u32).collect();
        let inv = image.clone();
        Permutation { image, inv }
    }

    /// Builds a permutation from its image sequence, validating that the
    /// sequence is a bijection on `[n]`.
    pub fn from_image(image: Vec<u32>) -> Result<Permutation, Error> {
        let n = image.len();
        let mut inv = vec![0u32; n];
        for (i, &a) in image.iter().enumerate() {
            if a == 0 || a as usize > n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            if inv[a as usize - 1] != 0 {
                return Err(Error::NotABijection);
            }
            inv[a as usize - 1] = i as u32 + 1;
        }
        Ok(Permutation { image, inv })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// The value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.image[i - 1]
    }

    /// The 1-based position of value `v`.
    pub fn position(&self, v: u32) -> usize {
        self.inv[v as usize - 1] as usize
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub(crate) fn positions(&self) -> &[u32] {
        &self.inv
    }

    /// Group product: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: other.n() });
        }
        let image: Vec<u32> = other.image.iter().map(|&a| self.image[a as usize - 1]).collect();
        Permutation::from_image(image)
    }

    /// The image sequence in reverse order.
    pub fn reversed(&self) -> Permutation {
        let mut image = self.image.clone();
        image.reverse();
        Permutation::from_image(image).expect("reversal of a bijection is a bijection")
    }

    /// The group inverse.
    pub fn inverse(&self) -> Permutation {
        let image = self.inv.clone();
        let inv = self.image.clone();
        Permutation { image, inv }
    }

    fn check_vertex(&self, v: u32) -> Result<(), Error> {
        if v == 0 || v as usize > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// True iff all vertices of one edge precede all vertices of the other.
    pub fn separates(&self, e: Edge, f: Edge) -> Result<bool, Error> {
        e.check_in_range(self.n())?;
        f.check_in_range(self.n())?;
        if !e.is_disjoint(&f) {
            return Err(Error::PairsNotDisjoint);
        }
        let (e_min, e_max) = self.span(e);
        let (f_min, f_max) = self.span(f);
        Ok(e_max < f_min || f_max < e_min)
    }

    fn span(&self, e: Edge) -> (usize, usize) {
        let a = self.position(e.u);
        let b = self.position(e.v);
        (a.min(b), a.max(b))
    }

    /// True iff `seq` appears in this order, i.e. positions strictly increase.
    pub fn is_subsequence(&self, seq: &[u32]) -> Result<bool, Error> {
        let mut seen = vec![false; self.n()];
        for &v in seq {
            self.check_vertex(v)?;
            if seen[v as usize - 1] {
                return Err(Error::RepeatedElement { element: v });
            }
            seen[v as usize - 1] = true;
        }
        Ok(seq.windows(2).all(|w| self.position(w[0]) < self.position(w[1])))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// An ordered multiset of permutations of a common ground set `[n]`.
///
/// Order and duplicates are preserved; all verification is order-insensitive
/// but output files and reports are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermFamily {
    n: usize,
    members: Vec<Permutation>,
}

impl PermFamily {
    /// An empty family over ground set `[n]`, `n >= 1`.
    pub fn new(n: usize) -> PermFamily {
        PermFamily { n, members: Vec::new() }
    }

    pub fn from_members(n: usize, members: Vec<Permutation>) -> Result<PermFamily, Error> {
        for m in &members {
            if m.n() != n {
                return Err(Error::SizeMismatch { expected: n, found: m.n() });
            }
        }
        Ok(PermFamily { n, members })
    }

    pub fn push(&mut self, p: Permutation) -> Result<(), Error> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: p.n() });
        }
        self.members.push(p);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Permutation> {
        self.members.iter()
    }

    /// Left relabeling: every member `σ` is replaced by `pi ∘ σ`.
    /// Order and multiplicities are preserved.
    pub fn relabeled(&self, pi: &Permutation) -> Result<PermFamily, Error> {
        if pi.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: pi.n() });
        }
        let members = self
            .members
            .iter()
            .map(|m| pi.compose(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermFamily { n: self.n, members })
    }

    /// Keeps only the values `<= m` in each member, preserving relative
    /// order, yielding a family over `[m]` of the same size.
    pub fn restricted(&self, m: usize) -> Result<PermFamily, Error> {
        if m < 1 {
            return Err(Error::Domain("restriction ground set must be non-empty"));
        }
        if m > self.n {
            return Err(Error::Domain("restriction ground set exceeds the family's"));
        }
        let members = self
            .members
            .iter()
            .map(|p| {
                let image: Vec<u32> =
                    p.image().iter().copied().filter(|&a| a as usize <= m).collect();
                Permutation::from_image(image)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermFamily { n: m, members })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn perm(image: &[u32]) -> Permutation {
        Permutation::from_image(image.to_vec()).unwrap()
    }

    #[test]
    fn compose_follows_right_then_left() {
        let sigma = perm(&[2, 1, 3]);
        let pi = perm(&[3, 2, 1]);
        assert_eq!(sigma.compose(&pi).unwrap(), perm(&[3, 1, 2]));
    }

    #[test]
    fn compose_with_identity() {
        let sigma = perm(&[2, 4, 1, 3]);
        let id = Permutation::identity(4);
        assert_eq!(sigma.compose(&id).unwrap(), sigma);
        assert_eq!(id.compose(&sigma).unwrap(), sigma);
    }

    #[test]
    fn compose_size_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b), Err(Error::SizeMismatch { expected: 3, found: 4 }));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(perm(&[1, 2, 3, 4]).reversed(), perm(&[4, 3, 2, 1]));
        let sigma = perm(&[2, 4, 1, 3]);
        assert_eq!(sigma.reversed().reversed(), sigma);
    }

    #[test]
    fn inverse_roundtrip() {
        let sigma = perm(&[3, 1, 4, 2]);
        assert_eq!(sigma.compose(&sigma.inverse()).unwrap(), Permutation::identity(4));
        assert_eq!(sigma.inverse().compose(&sigma).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn from_image_rejects_non_bijections() {
        assert_eq!(
            Permutation::from_image(vec![1, 1, 2]),
            Err(Error::NotABijection)
        );
        assert_eq!(
            Permutation::from_image(vec![1, 2, 4]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
    }

    #[test]
    fn separates_sorted_interleaved_nested() {
        let sigma = perm(&[1, 2, 3, 4]);
        let e12 = Edge::new(1, 2).unwrap();
        let e34 = Edge::new(3, 4).unwrap();
        let e13 = Edge::new(1, 3).unwrap();
        let e24 = Edge::new(2, 4).unwrap();
        let e14 = Edge::new(1, 4).unwrap();
        let e23 = Edge::new(2, 3).unwrap();
        assert!(sigma.separates(e12, e34).unwrap());
        assert!(!sigma.separates(e13, e24).unwrap());
        assert!(!sigma.separates(e14, e23).unwrap());
    }

    #[test]
    fn separates_rejects_bad_input() {
        let sigma = perm(&[1, 2, 3, 4]);
        let e12 = Edge::new(1, 2).unwrap();
        let e25 = Edge::new(2, 5);
        assert!(e25.is_ok());
        assert_eq!(
            sigma.separates(e12, e25.unwrap()),
            Err(Error::VertexOutOfRange { vertex: 5, n: 4 })
        );
        let e23 = Edge::new(2, 3).unwrap();
        assert_eq!(sigma.separates(e12, e23), Err(Error::PairsNotDisjoint));
        assert!(Edge::new(2, 2).is_err());
    }

    #[test]
    fn subsequence_on_a_worked_block_order() {
        let sigma = perm(&[4, 13, 10, 5, 3, 14, 11, 7, 2, 15, 9, 8, 1, 16, 12, 6]);
        assert!(sigma.is_subsequence(&[4, 10, 5]).unwrap());
        assert!(!perm(&[1, 2, 3, 4]).is_subsequence(&[3, 2]).unwrap());
        assert!(perm(&[1, 2, 3, 4]).is_subsequence(&[3]).unwrap());
    }

    #[test]
    fn subsequence_rejects_bad_input() {
        let sigma = perm(&[1, 2, 3]);
        assert_eq!(
            sigma.is_subsequence(&[1, 1]),
            Err(Error::RepeatedElement { element: 1 })
        );
        assert_eq!(
            sigma.is_subsequence(&[1, 4]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
    }

    #[test]
    fn relabel_by_identity_is_noop() {
        let fam = PermFamily::from_members(
            3,
            vec![perm(&[2, 1, 3]), perm(&[3, 2, 1]), perm(&[2, 1, 3])],
        )
        .unwrap();
        let out = fam.relabeled(&Permutation::identity(3)).unwrap();
        assert_eq!(out, fam);
    }

    #[test]
    fn restrict_keeps_relative_order() {
        let sigma = perm(&[4, 13, 10, 5, 3, 14, 11, 7, 2, 15, 9, 8, 1, 16, 12, 6]);
        let fam = PermFamily::from_members(16, vec![sigma]).unwrap();
        let cut = fam.restricted(5).unwrap();
        assert_eq!(cut.members()[0], perm(&[4, 5, 3, 2, 1]));
        assert_eq!(cut.n(), 5);
        assert_eq!(cut.len(), 1);
    }

    #[test]
    fn restrict_full_and_invalid() {
        let fam =
            PermFamily::from_members(3, vec![perm(&[2, 1, 3]), perm(&[1, 3, 2])]).unwrap();
        assert_eq!(fam.restricted(3).unwrap(), fam);
        assert!(fam.restricted(0).is_err());
        assert!(fam.restricted(4).is_err());
    }

    #[test]
    fn family_rejects_mixed_sizes() {
        assert!(PermFamily::from_members(3, vec![Permutation::identity(4)]).is_err());
        let mut fam = PermFamily::new(4);
        assert!(fam.push(Permutation::identity(3)).is_err());
    }
}
