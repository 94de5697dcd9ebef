//! Exact verification: separation profiles, k-sequence coverage profiles,
//! balance, and the s-statistics.
//!
//! Separation counts are gathered by iterating 4-subsets once and
//! classifying, per member, which of the three pairings of the subset is
//! separated; each member separates exactly one, so the conservation law
//! c({ab},{cd}) + c({ac},{bd}) + c({ad},{bc}) = |F| holds by construction.
//! The 4-subset index space can be partitioned by stride so callers may
//! spread the scan over workers and merge the histograms by addition.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::perm::{Edge, PermFamily};

pub type Histogram = BTreeMap<u64, u64>;

/// Which pairing of the 4-set {a < b < c < d} the positions separate:
/// 0 = {ab, cd}, 1 = {ac, bd}, 2 = {ad, bc}.
#[inline]
pub(crate) fn pairing_index(pa: u32, pb: u32, pc: u32, pd: u32) -> usize {
    let ra = (pb < pa) as u8 + (pc < pa) as u8 + (pd < pa) as u8;
    let rb = (pa < pb) as u8 + (pc < pb) as u8 + (pd < pb) as u8;
    let rc = (pa < pc) as u8 + (pb < pc) as u8 + (pd < pc) as u8;
    let rd = 6 - ra - rb - rc;
    // bottom-two positions form one side of the separated pairing
    let mut mask = ((ra <= 1) as u8)
        | (((rb <= 1) as u8) << 1)
        | (((rc <= 1) as u8) << 2)
        | (((rd <= 1) as u8) << 3);
    if mask & 1 == 0 {
        mask ^= 0b1111;
    }
    match mask {
        0b0011 => 0,
        0b0101 => 1,
        _ => 2,
    }
}

/// Number of members separating e from f.
pub fn c_count(fam: &PermFamily, e: Edge, f: Edge) -> Result<u64, Error> {
    e.check_in_range(fam.n())?;
    f.check_in_range(fam.n())?;
    if !e.is_disjoint(&f) {
        return Err(Error::PairsNotDisjoint);
    }
    let mut count = 0;
    for p in fam.iter() {
        let (eu, ev) = (p.position(e.u()), p.position(e.v()));
        let (fu, fv) = (p.position(f.u()), p.position(f.v()));
        if eu.max(ev) < fu.min(fv) || fu.max(fv) < eu.min(ev) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationProfile {
    /// Number of disjoint edge pairs examined: n(n-1)(n-2)(n-3)/8 when
    /// exhaustive over K_n.
    pub pair_count: u64,
    pub min_c: Option<u64>,
    pub max_c: Option<u64>,
    /// separation count -> number of pairs with that count
    pub histogram: Histogram,
    /// Present iff the count is constant and at least 1.
    pub lambda: Option<u64>,
}

impl SeparationProfile {
    pub fn from_histogram(histogram: Histogram) -> SeparationProfile {
        let pair_count = histogram.values().sum();
        let min_c = histogram.keys().next().copied();
        let max_c = histogram.keys().next_back().copied();
        let lambda = match (min_c, max_c) {
            (Some(lo), Some(hi)) if lo == hi && lo >= 1 => Some(lo),
            _ => None,
        };
        SeparationProfile { pair_count, min_c, max_c, histogram, lambda }
    }

    /// No disjoint edge pairs at all (n <= 3).
    pub fn is_vacuous(&self) -> bool {
        self.pair_count == 0
    }

    /// Perfect means a constant positive count, or vacuously no pairs.
    pub fn is_perfect(&self) -> bool {
        self.lambda.is_some() || self.is_vacuous()
    }

    pub fn is_separating(&self) -> bool {
        self.min_c.map(|lo| lo >= 1).unwrap_or(true)
    }

    pub fn delta(&self) -> u64 {
        match (self.min_c, self.max_c) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }
}

/// Separation histogram over the 4-subsets whose enumeration index is
/// congruent to `offset` modulo `stride`. Merge the maps of a full residue
/// system to recover the exhaustive histogram.
pub fn separation_histogram_strided(
    fam: &PermFamily,
    offset: usize,
    stride: usize,
) -> Histogram {
    let n = fam.n();
    let positions: Vec<&[u32]> = fam.iter().map(|p| p.positions()).collect();
    let mut hist = Histogram::new();
    if n < 4 || stride == 0 {
        return hist;
    }
    let mut idx = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let take = idx % stride == offset;
                    idx += 1;
                    if !take {
                        continue;
                    }
                    let mut counts = [0u64; 3];
                    for pos in &positions {
                        counts[pairing_index(pos[a], pos[b], pos[c], pos[d])] += 1;
                    }
                    for &cnt in &counts {
                        *hist.entry(cnt).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    hist
}

/// Exhaustive separation profile over all disjoint edge pairs of K_n.
pub fn separation_profile(fam: &PermFamily) -> SeparationProfile {
    SeparationProfile::from_histogram(separation_histogram_strided(fam, 0, 1))
}

/// Separation histogram over `samples` uniformly drawn 4-subsets (seeded,
/// with replacement across draws).
pub fn separation_histogram_sampled(fam: &PermFamily, samples: u64, seed: u64) -> Histogram {
    let n = fam.n();
    let positions: Vec<&[u32]> = fam.iter().map(|p| p.positions()).collect();
    let mut hist = Histogram::new();
    if n < 4 {
        return hist;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut picks = [0usize; 4];
        let mut got = 0;
        while got < 4 {
            let v = rng.gen_range(0..n);
            if !picks[..got].contains(&v) {
                picks[got] = v;
                got += 1;
            }
        }
        picks.sort_unstable();
        let mut counts = [0u64; 3];
        for pos in &positions {
            counts[pairing_index(
                pos[picks[0]],
                pos[picks[1]],
                pos[picks[2]],
                pos[picks[3]],
            )] += 1;
        }
        for &cnt in &counts {
            *hist.entry(cnt).or_insert(0) += 1;
        }
    }
    hist
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageProfile {
    pub k: usize,
    /// n(n-1)...(n-k+1) when exhaustive.
    pub sequence_count: u64,
    pub min_t: Option<u64>,
    pub max_t: Option<u64>,
    /// coverage count -> number of ordered k-sequences with that count
    pub histogram: Histogram,
    /// Present iff the coverage is constant and at least 1.
    pub t: Option<u64>,
}

impl CoverageProfile {
    pub fn from_histogram(k: usize, histogram: Histogram) -> CoverageProfile {
        let sequence_count = histogram.values().sum();
        let min_t = histogram.keys().next().copied();
        let max_t = histogram.keys().next_back().copied();
        let t = match (min_t, max_t) {
            (Some(lo), Some(hi)) if lo == hi && lo >= 1 => Some(lo),
            _ => None,
        };
        CoverageProfile { k, sequence_count, min_t, max_t, histogram, t }
    }

    pub fn is_perfect(&self) -> bool {
        self.t.is_some()
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// Lexicographic rank of the order pattern induced by `pos` (k <= 4).
#[inline]
fn pattern_rank(pos: &[u32]) -> usize {
    let k = pos.len();
    let mut rank = 0;
    for i in 0..k {
        let smaller = pos[i + 1..].iter().filter(|&&q| q < pos[i]).count();
        rank = rank * (k - i) + smaller;
    }
    rank
}

fn subset_patterns(
    positions: &[&[u32]],
    subset: &[usize],
    k: usize,
    counts: &mut [u64; 24],
) {
    counts[..factorial(k)].fill(0);
    let mut pos = [0u32; 4];
    for member in positions {
        for (slot, &v) in pos.iter_mut().zip(subset.iter()) {
            *slot = member[v];
        }
        counts[pattern_rank(&pos[..k])] += 1;
    }
}

/// Exhaustive coverage profile over all ordered k-sequences of distinct
/// elements, for k in 2..=4.
pub fn ksca_profile(fam: &PermFamily, k: usize) -> Result<CoverageProfile, Error> {
    if !(2..=4).contains(&k) {
        return Err(Error::Domain("sequence length k must be 2, 3 or 4"));
    }
    if k > fam.n() {
        return Err(Error::Domain("sequence length k exceeds the ground-set size"));
    }
    let n = fam.n();
    let positions: Vec<&[u32]> = fam.iter().map(|p| p.positions()).collect();
    let mut hist = Histogram::new();
    let mut counts = [0u64; 24];
    let mut subset = [0usize; 4];
    // iterate unordered k-subsets; each contributes one coverage count per
    // order pattern, including the patterns covered zero times
    iterate_subsets(n, k, &mut subset, 0, 0, &mut |sub| {
        subset_patterns(&positions, sub, k, &mut counts);
        for &cnt in &counts[..factorial(k)] {
            *hist.entry(cnt).or_insert(0) += 1;
        }
    });
    Ok(CoverageProfile::from_histogram(k, hist))
}

fn iterate_subsets(
    n: usize,
    k: usize,
    subset: &mut [usize; 4],
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(&subset[..k]);
        return;
    }
    for v in start..n {
        subset[depth] = v;
        iterate_subsets(n, k, subset, depth + 1, v + 1, f);
    }
}

/// Coverage histogram over `samples` uniformly drawn k-subsets (seeded).
pub fn coverage_histogram_sampled(
    fam: &PermFamily,
    k: usize,
    samples: u64,
    seed: u64,
) -> Result<Histogram, Error> {
    if !(2..=4).contains(&k) {
        return Err(Error::Domain("sequence length k must be 2, 3 or 4"));
    }
    if k > fam.n() {
        return Err(Error::Domain("sequence length k exceeds the ground-set size"));
    }
    let n = fam.n();
    let positions: Vec<&[u32]> = fam.iter().map(|p| p.positions()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = Histogram::new();
    let mut counts = [0u64; 24];
    for _ in 0..samples {
        let mut picks = [0usize; 4];
        let mut got = 0;
        while got < k {
            let v = rng.gen_range(0..n);
            if !picks[..got].contains(&v) {
                picks[got] = v;
                got += 1;
            }
        }
        picks[..k].sort_unstable();
        subset_patterns(&positions, &picks[..k], k, &mut counts);
        for &cnt in &counts[..factorial(k)] {
            *hist.entry(cnt).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaBalance {
    /// max_c - min_c over all disjoint edge pairs (0 when there are none).
    pub delta: u64,
    /// Every disjoint edge pair is separated at least once (vacuously true
    /// when there are none).
    pub separating: bool,
}

pub fn delta_balance(fam: &PermFamily) -> DeltaBalance {
    let profile = separation_profile(fam);
    DeltaBalance { delta: profile.delta(), separating: profile.is_separating() }
}

/// s(u,v) = sum over w of the number of members placing w strictly outside
/// the span of u and v.
pub fn s_stat(fam: &PermFamily, u: u32, v: u32) -> Result<u64, Error> {
    if u == v {
        return Err(Error::DegeneratePair { vertex: u });
    }
    let e = Edge::new(u, v)?;
    e.check_in_range(fam.n())?;
    let n = fam.n() as u64;
    let mut total = 0u64;
    for p in fam.iter() {
        let pu = p.position(u) as u64;
        let pv = p.position(v) as u64;
        let (lo, hi) = (pu.min(pv), pu.max(pv));
        total += (lo - 1) + (n - hi);
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BestSPair {
    pub u: u32,
    pub v: u32,
    pub value: u64,
    pub family_size: u64,
    pub n: usize,
    /// Set when the family is empty; the value is trivially 0.
    pub degenerate: bool,
}

impl BestSPair {
    /// The averaging guarantee value >= (2/3)|F|(n-2), compared exactly via
    /// cross-multiplication.
    pub fn meets_averaging_bound(&self) -> bool {
        3 * self.value >= 2 * self.family_size * (self.n as u64 - 2)
    }
}

/// The lexicographically first pair maximizing s(u,v).
pub fn best_s_pair(fam: &PermFamily) -> Result<BestSPair, Error> {
    let n = fam.n();
    if n < 2 {
        return Err(Error::Domain("ground set has no vertex pairs"));
    }
    let mut best = BestSPair {
        u: 1,
        v: 2,
        value: 0,
        family_size: fam.len() as u64,
        n,
        degenerate: fam.is_empty(),
    };
    let mut first = true;
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            let value = s_stat(fam, u, v)?;
            if first || value > best.value {
                best.u = u;
                best.v = v;
                best.value = value;
                first = false;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::base_family;
    use crate::perm::Permutation;
    use alloc::vec;
    use alloc::vec::Vec;

    fn perm(image: &[u32]) -> Permutation {
        Permutation::from_image(image.to_vec()).unwrap()
    }

    fn edge(a: u32, b: u32) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn c_count_on_base_families() {
        let f4 = base_family(4).unwrap();
        assert_eq!(c_count(&f4, edge(1, 2), edge(3, 4)).unwrap(), 2);

        let small = PermFamily::from_members(
            4,
            vec![perm(&[1, 2, 3, 4]), perm(&[1, 4, 3, 2]), perm(&[4, 2, 1, 3])],
        )
        .unwrap();
        for (e, f) in [
            (edge(1, 2), edge(3, 4)),
            (edge(1, 3), edge(2, 4)),
            (edge(1, 4), edge(2, 3)),
        ] {
            assert_eq!(c_count(&small, e, f).unwrap(), 1, "{e} {f}");
        }

        let id = PermFamily::from_members(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(c_count(&id, edge(1, 3), edge(2, 4)).unwrap(), 0);
        assert!(c_count(&id, edge(1, 3), edge(3, 4)).is_err());
    }

    #[test]
    fn profile_of_a_single_permutation() {
        let fam = PermFamily::from_members(4, vec![perm(&[2, 4, 1, 3])]).unwrap();
        let profile = separation_profile(&fam);
        assert_eq!(profile.pair_count, 3);
        assert_eq!(profile.histogram, Histogram::from_iter([(0, 2), (1, 1)]));
        assert_eq!(profile.lambda, None);
        assert_eq!(profile.min_c, Some(0));
        assert_eq!(profile.max_c, Some(1));
    }

    #[test]
    fn base_family_4_is_perfect_with_multiplicity_2() {
        let fam = base_family(4).unwrap();
        let profile = separation_profile(&fam);
        assert_eq!(profile.lambda, Some(2));
        assert_eq!(profile.pair_count, 3);

        // dropping a member destroys perfection
        let broken =
            PermFamily::from_members(4, fam.members()[..5].to_vec()).unwrap();
        assert_eq!(separation_profile(&broken).lambda, None);
    }

    #[test]
    fn vacuous_profile_for_k3() {
        let fam = base_family(3).unwrap();
        let profile = separation_profile(&fam);
        assert!(profile.is_vacuous());
        assert!(profile.is_perfect());
        assert_eq!(profile.lambda, None);
        assert_eq!(profile.pair_count, 0);
    }

    #[test]
    fn strided_histograms_merge_to_the_exhaustive_one() {
        let fam = base_family(4).unwrap();
        let full = separation_histogram_strided(&fam, 0, 1);
        let mut merged = Histogram::new();
        for offset in 0..3 {
            for (count, freq) in separation_histogram_strided(&fam, offset, 3) {
                *merged.entry(count).or_insert(0) += freq;
            }
        }
        assert_eq!(full, merged);
    }

    #[test]
    fn ksca_of_the_base_families() {
        let f4 = base_family(4).unwrap();
        let p3 = ksca_profile(&f4, 3).unwrap();
        assert_eq!(p3.t, Some(1));
        assert_eq!(p3.sequence_count, 24);

        let f3 = base_family(3).unwrap();
        let p = ksca_profile(&f3, 3).unwrap();
        assert_eq!(p.t, Some(1));
        assert_eq!(p.sequence_count, 6);

        // a perfect 3-SCA is trivially a perfect 2-SCA with t = |F|/2
        let p2 = ksca_profile(&f4, 2).unwrap();
        assert_eq!(p2.t, Some(3));
        assert!(ksca_profile(&f3, 4).is_err());
        assert!(ksca_profile(&f4, 5).is_err());
        assert!(ksca_profile(&f4, 1).is_err());
    }

    #[test]
    fn all_of_s4_is_a_perfect_4sca_and_a_perfect_separating_family() {
        let mut members = Vec::new();
        let mut image = vec![1u32, 2, 3, 4];
        loop {
            members.push(Permutation::from_image(image.clone()).unwrap());
            if !next_lex(&mut image) {
                break;
            }
        }
        let fam = PermFamily::from_members(4, members).unwrap();
        assert_eq!(fam.len(), 24);
        let cov = ksca_profile(&fam, 4).unwrap();
        assert_eq!(cov.t, Some(1));
        assert_eq!(separation_profile(&fam).lambda, Some(8));
    }

    fn next_lex(arr: &mut [u32]) -> bool {
        let n = arr.len();
        let Some(i) = (0..n - 1).rev().find(|&i| arr[i] < arr[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| arr[j] > arr[i]).unwrap();
        arr.swap(i, j);
        arr[i + 1..].reverse();
        true
    }

    #[test]
    fn delta_balance_examples() {
        let fam = base_family(4).unwrap();
        let db = delta_balance(&fam);
        assert_eq!(db, DeltaBalance { delta: 0, separating: true });

        let id = PermFamily::from_members(4, vec![Permutation::identity(4)]).unwrap();
        assert_eq!(delta_balance(&id), DeltaBalance { delta: 1, separating: false });
    }

    #[test]
    fn s_stat_hand_counts() {
        let fam = PermFamily::from_members(4, vec![perm(&[1, 2, 3, 4])]).unwrap();
        assert_eq!(s_stat(&fam, 1, 2).unwrap(), 2);
        assert_eq!(s_stat(&fam, 1, 4).unwrap(), 0);
        assert!(s_stat(&fam, 2, 2).is_err());
        assert!(s_stat(&fam, 1, 5).is_err());
    }

    #[test]
    fn best_s_pair_on_a_single_order_and_empty_family() {
        let fam = PermFamily::from_members(4, vec![perm(&[1, 2, 3, 4])]).unwrap();
        let best = best_s_pair(&fam).unwrap();
        assert_eq!(best.value, 2);
        assert!(!best.degenerate);
        assert!(best.meets_averaging_bound()); // 3*2 >= 2*1*2

        let empty = PermFamily::new(5);
        let best = best_s_pair(&empty).unwrap();
        assert_eq!(best.value, 0);
        assert!(best.degenerate);
        assert!(best.meets_averaging_bound());
    }

    #[test]
    fn conservation_over_every_4set_of_random_families() {
        use rand::RngCore;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = 4 + (rng.next_u32() % 4) as usize;
            let size = 1 + (rng.next_u32() % 8) as usize;
            let mut fam = PermFamily::new(n);
            for _ in 0..size {
                fam.push(crate::search::random_permutation(n, &mut rng)).unwrap();
            }
            for a in 1..=n as u32 {
                for b in a + 1..=n as u32 {
                    for c in b + 1..=n as u32 {
                        for d in c + 1..=n as u32 {
                            let sum = c_count(&fam, edge(a, b), edge(c, d)).unwrap()
                                + c_count(&fam, edge(a, c), edge(b, d)).unwrap()
                                + c_count(&fam, edge(a, d), edge(b, c)).unwrap();
                            assert_eq!(sum, fam.len() as u64);
                        }
                    }
                }
            }
        }
    }
}
