//! The recursive perfect-family construction.
//!
//! Base families exist for ground sets of size 3 and 4. For larger n, take
//! the smallest prime power r with r^2 >= n, recursively build the family
//! over [r], and blow it up through the canonical affine plane of order r:
//! each parallel class contributes one block permutation per member (blocks
//! ordered by the member) plus one with the block order reversed. Restrict
//! to [n] at the end when n < r^2.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::perm::{PermFamily, Permutation};
use crate::plane::{smallest_construction_order, AffinePlane, ParallelClass};

/// Size of the constructed family: 6 for n = 3, 4 and otherwise
/// 2(1+r)·g(r) with r the smallest prime power satisfying r^2 >= n.
pub fn g(n: u64) -> Result<u64, Error> {
    if n < 3 {
        return Err(Error::Domain("ground-set size must be at least 3"));
    }
    if n <= 4 {
        return Ok(6);
    }
    let r = smallest_construction_order(n as usize)? as u64;
    Ok(2 * (1 + r) * g(r)?)
}

/// The hand-picked starting families: all of S_3, and six members of S_4
/// forming a perfect separating family of multiplicity 2 that is also a
/// perfect 3-sequence covering array of multiplicity 1.
pub fn base_family(n: usize) -> Result<PermFamily, Error> {
    let images: &[&[u32]] = match n {
        3 => &[
            &[1, 2, 3],
            &[1, 3, 2],
            &[2, 1, 3],
            &[2, 3, 1],
            &[3, 1, 2],
            &[3, 2, 1],
        ],
        4 => &[
            &[1, 2, 3, 4],
            &[1, 4, 3, 2],
            &[4, 2, 3, 1],
            &[2, 4, 1, 3],
            &[3, 4, 1, 2],
            &[3, 2, 1, 4],
        ],
        _ => return Err(Error::Domain("base families exist only for n = 3 and n = 4")),
    };
    let members = images
        .iter()
        .map(|img| Permutation::from_image(img.to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    PermFamily::from_members(n, members)
}

/// Reorders one line by sigma: block[k] = line[sigma(k)].
pub fn permute_line(line: &[u32], sigma: &Permutation) -> Result<Vec<u32>, Error> {
    if line.len() != sigma.n() {
        return Err(Error::SizeMismatch { expected: line.len(), found: sigma.n() });
    }
    Ok((1..=line.len()).map(|k| line[sigma.at(k) as usize - 1]).collect())
}

fn concat_blocks(
    class: &ParallelClass,
    sigma: &Permutation,
    reversed: bool,
) -> Result<Permutation, Error> {
    let r = sigma.n();
    if class.len() != r {
        return Err(Error::SizeMismatch { expected: r, found: class.len() });
    }
    let mut image: Vec<u32> = Vec::with_capacity(r * r);
    let block_ids: Vec<usize> = if reversed {
        (1..=r).rev().collect()
    } else {
        (1..=r).collect()
    };
    for k in block_ids {
        let line = &class[sigma.at(k) as usize - 1];
        image.extend(permute_line(line, sigma)?);
    }
    Permutation::from_image(image)
}

/// Concatenation of the class's lines as blocks: block k is line
/// sigma(k) reordered by sigma.
pub fn class_concat(class: &ParallelClass, sigma: &Permutation) -> Result<Permutation, Error> {
    concat_blocks(class, sigma, false)
}

/// Same blocks as [`class_concat`] but concatenated in reverse block order;
/// the order within each block is unchanged.
pub fn class_concat_reversed(
    class: &ParallelClass,
    sigma: &Permutation,
) -> Result<Permutation, Error> {
    concat_blocks(class, sigma, true)
}

/// The class family W: forward concatenations for every member, followed by
/// the reversed ones, each in family order. |W| = 2 |fam|.
pub fn build_class_family(class: &ParallelClass, fam: &PermFamily) -> Result<PermFamily, Error> {
    let n2 = fam.n() * fam.n();
    let mut out = PermFamily::new(n2);
    for sigma in fam.iter() {
        out.push(class_concat(class, sigma)?)?;
    }
    for sigma in fam.iter() {
        out.push(class_concat_reversed(class, sigma)?)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    BaseFamily,
    PlaneRecursion { plane_order: usize, restricted: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLevel {
    pub n: usize,
    pub step: TraceStep,
    pub family_size: usize,
}

/// Audit record of one construction run: the chain of ground-set sizes from
/// the target down to a base family, with the plane order and family size
/// used at each level.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstructionTrace {
    pub levels: Vec<TraceLevel>,
}

/// Memoizing builder; orders shared by several targets are constructed once.
#[derive(Debug, Default)]
pub struct FamilyBuilder {
    cache: BTreeMap<usize, PermFamily>,
}

impl FamilyBuilder {
    pub fn new() -> FamilyBuilder {
        FamilyBuilder::default()
    }

    pub fn build(&mut self, n: usize) -> Result<(PermFamily, ConstructionTrace), Error> {
        let fam = self.family(n)?;
        // after family(n) the whole recursion chain sits in the cache
        let mut levels = Vec::new();
        let mut m = n;
        loop {
            let family_size = self.cache[&m].len();
            if m <= 4 {
                levels.push(TraceLevel { n: m, step: TraceStep::BaseFamily, family_size });
                break;
            }
            let r = smallest_construction_order(m)?;
            levels.push(TraceLevel {
                n: m,
                step: TraceStep::PlaneRecursion { plane_order: r, restricted: m < r * r },
                family_size,
            });
            m = r;
        }
        Ok((fam, ConstructionTrace { levels }))
    }

    fn family(&mut self, n: usize) -> Result<PermFamily, Error> {
        if n < 3 {
            return Err(Error::Domain("ground-set size must be at least 3"));
        }
        if let Some(fam) = self.cache.get(&n) {
            return Ok(fam.clone());
        }
        let fam = if n <= 4 {
            base_family(n)?
        } else {
            let r = smallest_construction_order(n)?;
            let sub = self.family(r)?;
            let plane = AffinePlane::canonical(r)?;
            let mut full = PermFamily::new(r * r);
            for class in plane.classes() {
                let w = build_class_family(class, &sub)?;
                for member in w.iter() {
                    full.push(member.clone())?;
                }
            }
            if n < r * r {
                full.restricted(n)?
            } else {
                full
            }
        };
        self.cache.insert(n, fam.clone());
        Ok(fam)
    }
}

/// One-shot construction of the perfect family for K_n.
pub fn build_perfect_family(n: usize) -> Result<(PermFamily, ConstructionTrace), Error> {
    FamilyBuilder::new().build(n)
}
