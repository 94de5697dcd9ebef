//! Shipped fixture files: a hand-checked plane of order 4 and the small
//! reference families.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// An affine plane of order 4 with every line listed ascending.
pub const PLANE_ORDER_4: &str = include_str!("../fixtures/plane-order-4.txt");

/// All six orders of [3]; a perfect 3-sequence covering array of
/// multiplicity 1.
pub const FAMILY_S3: &str = include_str!("../fixtures/family-s3.txt");

/// The six-member starting family over [4]: multiplicity 2, also a perfect
/// 3-sequence covering array of multiplicity 1.
pub const FAMILY_BASE_4: &str = include_str!("../fixtures/family-base-4.txt");

/// A three-member perfect separating family of K_4 with multiplicity 1.
pub const FAMILY_K4_MULTIPLICITY_1: &str = include_str!("../fixtures/family-k4-multiplicity-1.txt");

pub const ALL: [(&str, &str); 4] = [
    ("plane-order-4.txt", PLANE_ORDER_4),
    ("family-s3.txt", FAMILY_S3),
    ("family-base-4.txt", FAMILY_BASE_4),
    ("family-k4-multiplicity-1.txt", FAMILY_K4_MULTIPLICITY_1),
];

/// Writes every fixture into `dir`, returning the written paths.
pub fn write_all(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, content) in ALL {
        let path = dir.join(name);
        fs::write(&path, content)?;
        written.push(path);
    }
    Ok(written)
}
