//! Classification of disjoint edge pairs against a plane's parallel classes.
//!
//! Given two disjoint edges e = {a,b}, f = {c,d}, a parallel class splits
//! the four endpoints among its lines in one of seven ways (the class
//! *type*). Counting the types across all r+1 classes of a plane yields the
//! pair's 7-coordinate *case profile*; realizable profiles fall into eight
//! known cases whose rows (parameterized by r) are tabulated here.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::perm::Edge;
use crate::plane::{AffinePlane, ParallelClass};

/// How one parallel class distributes the endpoints of two disjoint edges
/// among its lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassType {
    /// All four endpoints on one line.
    AllInOneLine = 1,
    /// Three endpoints on one line, the fourth elsewhere.
    TripleAndSingle = 2,
    /// e within one line and f within another.
    EdgesInTwoLines = 3,
    /// Exactly one of e, f within a line; the other two endpoints on two
    /// further lines.
    EdgeAndSingles = 4,
    /// Two cross pairs (one endpoint of each edge) within two lines.
    CrossPairsInTwoLines = 5,
    /// One cross pair within a line; the other two endpoints separate.
    CrossPairAndSingles = 6,
    /// All four endpoints on distinct lines.
    AllSeparate = 7,
}

impl ClassType {
    pub const ALL: [ClassType; 7] = [
        ClassType::AllInOneLine,
        ClassType::TripleAndSingle,
        ClassType::EdgesInTwoLines,
        ClassType::EdgeAndSingles,
        ClassType::CrossPairsInTwoLines,
        ClassType::CrossPairAndSingles,
        ClassType::AllSeparate,
    ];

    /// 1-based index matching the tabulated rows.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<ClassType> {
        ClassType::ALL.get(i.checked_sub(1)?).copied()
    }

    /// Number of members of a class family W separating the pair, in units
    /// of |fam|/3: (2, 2, 6, 4, 0, 1, 2) for types 1..7.
    pub fn separation_weight(self) -> u64 {
        [2, 2, 6, 4, 0, 1, 2][self.index() - 1]
    }
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Per-type class counts for one disjoint edge pair; coordinates sum to r+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseProfile(pub [u64; 7]);

impl CaseProfile {
    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Dot product with the per-type separation weights; equals 2(r+1) for
    /// every disjoint pair of a valid plane.
    pub fn weight_dot(&self) -> u64 {
        self.0
            .iter()
            .zip(ClassType::ALL)
            .map(|(&count, ty)| count * ty.separation_weight())
            .sum()
    }

    /// The matching tabulated case id (1..=8) for a plane of order r, if any.
    pub fn case_id(&self, r: usize) -> Option<usize> {
        case_rows(r)
            .iter()
            .position(|row| {
                row.iter()
                    .zip(self.0.iter())
                    .all(|(&want, &have)| want >= 0 && want as u64 == have)
            })
            .map(|i| i + 1)
    }
}

impl fmt::Display for CaseProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{},{})",
            self.0[0], self.0[1], self.0[2], self.0[3], self.0[4], self.0[5], self.0[6]
        )
    }
}

/// The eight tabulated case rows for order r. Entries may be negative, in
/// which case the row is unrealizable at that order.
pub fn case_rows(r: usize) -> [[i64; 7]; 8] {
    let r = r as i64;
    [
        [1, 0, 0, 0, 0, 0, r],
        [0, 1, 0, 1, 0, 2, r - 3],
        [0, 0, 1, 0, 2, 0, r - 2],
        [0, 0, 1, 0, 1, 2, r - 3],
        [0, 0, 1, 0, 0, 4, r - 4],
        [0, 0, 0, 2, 2, 0, r - 3],
        [0, 0, 0, 2, 1, 2, r - 4],
        [0, 0, 0, 2, 0, 4, r - 5],
    ]
}

fn line_of(class: &ParallelClass, point: u32) -> Result<usize, Error> {
    class
        .iter()
        .position(|line| line.contains(&point))
        .ok_or(Error::PointNotOnLine { point })
}

/// The type of one parallel class with respect to the disjoint edges e, f.
pub fn classify_type(class: &ParallelClass, e: Edge, f: Edge) -> Result<ClassType, Error> {
    if !e.is_disjoint(&f) {
        return Err(Error::PairsNotDisjoint);
    }
    let la = line_of(class, e.u())?;
    let lb = line_of(class, e.v())?;
    let lc = line_of(class, f.u())?;
    let ld = line_of(class, f.v())?;

    let lines = [la, lb, lc, ld];
    let mut distinct: Vec<usize> = lines.to_vec();
    distinct.sort_unstable();
    distinct.dedup();

    Ok(match distinct.len() {
        1 => ClassType::AllInOneLine,
        2 => {
            let first_count = lines.iter().filter(|&&l| l == distinct[0]).count();
            if first_count == 1 || first_count == 3 {
                ClassType::TripleAndSingle
            } else if la == lb {
                // then lc == ld as well
                ClassType::EdgesInTwoLines
            } else {
                ClassType::CrossPairsInTwoLines
            }
        }
        3 => {
            if la == lb || lc == ld {
                ClassType::EdgeAndSingles
            } else {
                ClassType::CrossPairAndSingles
            }
        }
        _ => ClassType::AllSeparate,
    })
}

/// Full classification of a disjoint edge pair against every class of the
/// plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseClassification {
    /// Type of class P_i at position i-1.
    pub per_class: Vec<ClassType>,
    pub profile: CaseProfile,
    /// Matching tabulated case id, absent for anomalous profiles.
    pub case_id: Option<usize>,
}

pub fn classify_case(plane: &AffinePlane, e: Edge, f: Edge) -> Result<CaseClassification, Error> {
    let per_class = plane
        .classes()
        .iter()
        .map(|class| classify_type(class, e, f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts = [0u64; 7];
    for ty in &per_class {
        counts[ty.index() - 1] += 1;
    }
    let profile = CaseProfile(counts);
    let case_id = profile.case_id(plane.order());
    Ok(CaseClassification { per_class, profile, case_id })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: u32, b: u32) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn all_case_rows_hit_the_weight_identity() {
        for r in [3usize, 4, 5, 7, 8, 9] {
            for row in case_rows(r) {
                if row.iter().any(|&x| x < 0) {
                    continue;
                }
                let profile = CaseProfile(core::array::from_fn(|i| row[i] as u64));
                assert_eq!(profile.sum(), r as u64 + 1);
                assert_eq!(profile.weight_dot(), 2 * (r as u64 + 1));
            }
        }
    }

    #[test]
    fn non_disjoint_pairs_are_rejected() {
        let plane = AffinePlane::canonical(3).unwrap();
        assert_eq!(
            classify_type(plane.class(0), edge(1, 2), edge(2, 4)),
            Err(Error::PairsNotDisjoint)
        );
    }

    #[test]
    fn every_profile_of_small_canonical_planes_matches_a_case_row() {
        for r in [3usize, 4, 5] {
            let plane = AffinePlane::canonical(r).unwrap();
            let n2 = plane.point_count() as u32;
            for a in 1..=n2 {
                for b in a + 1..=n2 {
                    for c in 1..=n2 {
                        if c == a || c == b {
                            continue;
                        }
                        for d in c + 1..=n2 {
                            if d == a || d == b {
                                continue;
                            }
                            let e = edge(a, b);
                            let f = edge(c, d);
                            let cls = classify_case(&plane, e, f).unwrap();
                            assert_eq!(cls.profile.sum(), r as u64 + 1);
                            assert_eq!(cls.profile.weight_dot(), 2 * (r as u64 + 1));
                            assert!(
                                cls.case_id.is_some(),
                                "order {r}: profile {} of {e},{f} matches no case row",
                                cls.profile
                            );
                        }
                    }
                }
            }
        }
    }
}
