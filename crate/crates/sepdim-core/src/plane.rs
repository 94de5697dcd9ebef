//! Finite affine planes of prime-power order.
//!
//! A plane of order r is stored as r+1 parallel classes; each class is a
//! list of r ordered lines of r point labels from `[r^2]`. The canonical
//! construction takes points (x, y) in GF(r)^2 with label
//! `index(x)*r + index(y) + 1`; classes 1..r hold the lines `y = m*x + b`
//! for each slope m, and the last class holds the vertical lines `x = c`.
//! Lines are listed by smallest label and points within a line ascend by
//! label, so the output is deterministic.

use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::error::Error;
use crate::field::{is_prime_power, prime_power_decompose, FieldSpec};

pub type Line = Vec<u32>;
pub type ParallelClass = Vec<Line>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePlane {
    r: usize,
    classes: Vec<ParallelClass>,
}

impl AffinePlane {
    /// The canonical plane of prime-power order r built from GF(r)^2.
    pub fn canonical(r: usize) -> Result<AffinePlane, Error> {
        if r < 2 {
            return Err(Error::NotPrimePower(r as u64));
        }
        let (p, k) = prime_power_decompose(r as u64).ok_or(Error::NotPrimePower(r as u64))?;
        let field = FieldSpec::new(p as u32, k)?;
        let label = |x: u32, y: u32| -> u32 { x * r as u32 + y + 1 };

        let mut classes: Vec<ParallelClass> = Vec::with_capacity(r + 1);
        for m in field.elements() {
            let mut class: ParallelClass = Vec::with_capacity(r);
            for b in field.elements() {
                let mut line: Line = field
                    .elements()
                    .map(|x| {
                        let y = field.add(field.mul(m, x), b);
                        label(x.index(), y.index())
                    })
                    .collect();
                line.sort_unstable();
                class.push(line);
            }
            class.sort_unstable_by_key(|line| line[0]);
            classes.push(class);
        }
        let mut vertical: ParallelClass = Vec::with_capacity(r);
        for c in field.elements() {
            let line: Line = field.elements().map(|y| label(c.index(), y.index())).collect();
            vertical.push(line);
        }
        vertical.sort_unstable_by_key(|line| line[0]);
        classes.push(vertical);

        Ok(AffinePlane { r, classes })
    }

    /// Wraps raw class data with shape checks only; the plane axioms are the
    /// validator's business.
    pub fn from_classes(r: usize, classes: Vec<ParallelClass>) -> Result<AffinePlane, Error> {
        if r < 2 {
            return Err(Error::Domain("plane order must be at least 2"));
        }
        if classes.len() != r + 1 {
            return Err(Error::Domain("a plane of order r has r+1 parallel classes"));
        }
        for class in &classes {
            if class.len() != r || class.iter().any(|line| line.len() != r) {
                return Err(Error::Domain("each class must hold r lines of r points"));
            }
        }
        Ok(AffinePlane { r, classes })
    }

    pub fn order(&self) -> usize {
        self.r
    }

    pub fn point_count(&self) -> usize {
        self.r * self.r
    }

    pub fn classes(&self) -> &[ParallelClass] {
        &self.classes
    }

    /// Parallel class by 0-based index.
    pub fn class(&self, i: usize) -> &ParallelClass {
        &self.classes[i]
    }

    /// Checks the two plane axioms and reports every violation found.
    pub fn validate(&self) -> PlaneReport {
        let mut violations = Vec::new();
        let n2 = self.point_count() as u32;

        for (ci, class) in self.classes.iter().enumerate() {
            let mut seen = vec![0u32; n2 as usize];
            let mut out_of_range = false;
            for line in class {
                for &pt in line {
                    if pt == 0 || pt > n2 {
                        out_of_range = true;
                    } else {
                        seen[pt as usize - 1] += 1;
                    }
                }
            }
            if out_of_range {
                violations.push(PlaneViolation::PointOutOfRange { class: ci + 1 });
            }
            let missing: Vec<u32> = (1..=n2).filter(|&p| seen[p as usize - 1] == 0).collect();
            let repeated: Vec<u32> = (1..=n2).filter(|&p| seen[p as usize - 1] > 1).collect();
            if !missing.is_empty() || !repeated.is_empty() {
                violations.push(PlaneViolation::NotAPartition {
                    class: ci + 1,
                    missing,
                    repeated,
                });
            }
        }

        // Unique-pair axiom: every point pair co-lines in exactly one class.
        for a in 1..=n2 {
            for b in a + 1..=n2 {
                let mut hosting: Vec<usize> = Vec::new();
                for (ci, class) in self.classes.iter().enumerate() {
                    if class
                        .iter()
                        .any(|line| line.contains(&a) && line.contains(&b))
                    {
                        hosting.push(ci + 1);
                    }
                }
                if hosting.len() != 1 {
                    violations.push(PlaneViolation::PairCoverage { a, b, classes: hosting });
                }
            }
        }

        PlaneReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneViolation {
    PointOutOfRange { class: usize },
    NotAPartition { class: usize, missing: Vec<u32>, repeated: Vec<u32> },
    /// The pair {a, b} shares a line in the listed classes (must be one).
    PairCoverage { a: u32, b: u32, classes: Vec<usize> },
}

impl fmt::Display for PlaneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneViolation::PointOutOfRange { class } => {
                write!(f, "class P_{class} holds a point outside [r^2]")
            }
            PlaneViolation::NotAPartition { class, missing, repeated } => {
                write!(
                    f,
                    "class P_{class} is not a partition (missing {:?}, repeated {:?})",
                    missing, repeated
                )
            }
            PlaneViolation::PairCoverage { a, b, classes } => {
                if classes.is_empty() {
                    write!(f, "pair {{{a},{b}}} shares a line in no class")
                } else {
                    write!(
                        f,
                        "pair {{{a},{b}}} shares a line in {} classes: {:?}",
                        classes.len(),
                        classes
                    )
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneReport {
    pub violations: Vec<PlaneViolation>,
}

impl PlaneReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn lines(&self) -> Vec<alloc::string::String> {
        self.violations.iter().map(|v| format!("{v}")).collect()
    }
}

/// The smallest prime power r with r^2 >= n.
pub fn smallest_construction_order(n: usize) -> Result<usize, Error> {
    if n < 3 {
        return Err(Error::Domain("ground-set size must be at least 3"));
    }
    let mut r = 2usize;
    while r * r < n {
        r += 1;
    }
    while !is_prime_power(r as u64) {
        r += 1;
    }
    Ok(r)
}
