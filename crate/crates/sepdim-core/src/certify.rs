//! Machine-checkable lower-bound certificates.
//!
//! For a perfect separating family F of K_n with multiplicity lambda, pick a
//! vertex pair {u,v} that is extremal in fewer than lambda members. The 0/1
//! matrices A (vertex before both u and v) and B (vertex after both) give
//! C = AA^T + BB^T, whose off-diagonal entries all equal lambda and whose
//! diagonal entries strictly exceed it. Such a matrix has full rank n-2,
//! and rank(C) <= rank(AA^T) + rank(BB^T) <= 2|F| forces |F| >= (n-2)/2.
//! The certificate stores C so a checker can revalidate the audit, the rank
//! and the bound without rerunning the construction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::Error;
use crate::perm::{Edge, PermFamily};
use crate::verify::separation_profile;

/// A dense matrix of exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<IntMatrix, Error> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Domain("matrix rows must all have the same length"));
        }
        Ok(IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination on
/// arbitrary-precision integers. No floating point is involved.
pub fn integer_rank(m: &IntMatrix) -> usize {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| a[i][col] != zero) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev; // exact by the Sylvester identity
            }
            a[i][col] = zero.clone();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// For every unordered vertex pair, the number of members in which the pair
/// occupies the first two or last two positions. Counts sum to 2|F|.
pub fn extremal_counts(fam: &PermFamily) -> BTreeMap<Edge, u64> {
    let n = fam.n();
    let mut counts: BTreeMap<Edge, u64> = BTreeMap::new();
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            counts.insert(Edge::new(u, v).expect("distinct by construction"), 0);
        }
    }
    if n < 2 {
        return counts;
    }
    for p in fam.iter() {
        for (x, y) in [(p.at(1), p.at(2)), (p.at(n - 1), p.at(n))] {
            let pair = Edge::new(x, y).expect("positions hold distinct values");
            *counts.get_mut(&pair).unwrap() += 1;
        }
    }
    counts
}

/// Generalized window counts: a pair is k-extremal in a member when both
/// positions are <= k or both are >= n-k+1.
pub fn k_extremal_counts(fam: &PermFamily, k: usize) -> Result<BTreeMap<Edge, u64>, Error> {
    let n = fam.n();
    if k < 1 || 2 * k > n {
        return Err(Error::Domain("window size k must satisfy 1 <= k <= n/2"));
    }
    let mut counts: BTreeMap<Edge, u64> = BTreeMap::new();
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            counts.insert(Edge::new(u, v)?, 0);
        }
    }
    for p in fam.iter() {
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                let pu = p.position(u);
                let pv = p.position(v);
                if pu.max(pv) <= k || pu.min(pv) >= n - k + 1 {
                    *counts.get_mut(&Edge::new(u, v)?).unwrap() += 1;
                }
            }
        }
    }
    Ok(counts)
}

/// The lexicographically smallest pair whose extremal count falls below
/// lambda = |F|/3. At most six pairs can reach lambda, so such a pair exists
/// whenever n >= 5.
pub fn find_non_extremal_pair(fam: &PermFamily) -> Result<Edge, Error> {
    if fam.len() % 3 != 0 {
        return Err(Error::NotPerfect);
    }
    let lambda = fam.len() as u64 / 3;
    let counts = extremal_counts(fam);
    counts
        .into_iter()
        .find(|&(_, count)| count < lambda)
        .map(|(pair, _)| pair)
        .ok_or(Error::NoNonExtremalPair)
}

/// The 0/1 matrices A, B over rows [n] \ {u,v} (increasing label order) and
/// columns in family order, plus C = AA^T + BB^T.
pub fn build_abc(
    fam: &PermFamily,
    u: u32,
    v: u32,
) -> Result<(IntMatrix, IntMatrix, IntMatrix), Error> {
    if u == v {
        return Err(Error::DegeneratePair { vertex: u });
    }
    let pair = Edge::new(u, v)?;
    pair.check_in_range(fam.n())?;
    let n = fam.n();
    let labels: Vec<u32> = (1..=n as u32).filter(|&w| !pair.contains(w)).collect();
    let dim = labels.len();
    let cols = fam.len();

    let mut a = IntMatrix::zeros(dim, cols);
    let mut b = IntMatrix::zeros(dim, cols);
    let mut c = IntMatrix::zeros(dim, dim);
    let mut before: Vec<usize> = Vec::with_capacity(dim);
    let mut after: Vec<usize> = Vec::with_capacity(dim);
    for (col, p) in fam.iter().enumerate() {
        let lo = p.position(u).min(p.position(v));
        let hi = p.position(u).max(p.position(v));
        before.clear();
        after.clear();
        for (row, &w) in labels.iter().enumerate() {
            let pw = p.position(w);
            if pw < lo {
                a.set(row, col, 1);
                before.push(row);
            } else if pw > hi {
                b.set(row, col, 1);
                after.push(row);
            }
        }
        for side in [&before, &after] {
            for &x in side.iter() {
                for &y in side.iter() {
                    let cur = c.get(x, y);
                    c.set(x, y, cur + 1);
                }
            }
        }
    }
    Ok((a, b, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    NotCertified,
}

/// An executable record of the lower-bound argument for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub family_size: u64,
    pub lambda: u64,
    /// The chosen non-extremal pair.
    pub pair: Edge,
    /// Row labels of C: [n] \ {u,v} in increasing order.
    pub row_labels: Vec<u32>,
    pub off_diagonal_uniform: bool,
    pub diagonal_strict: bool,
    pub rank: usize,
    /// C = AA^T + BB^T.
    pub matrix: IntMatrix,
    pub verdict: Verdict,
}

impl Certificate {
    /// Assembles a certificate from stored parts (e.g. a parsed file),
    /// recomputing the row labels and the entry audits from the matrix.
    pub fn from_parts(
        n: usize,
        family_size: u64,
        lambda: u64,
        pair: Edge,
        rank: usize,
        matrix: IntMatrix,
        verdict: Verdict,
    ) -> Certificate {
        let mut off_diagonal_uniform = true;
        let mut diagonal_strict = true;
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                let entry = matrix.get(i, j);
                if i == j {
                    diagonal_strict &= entry > lambda as i64;
                } else {
                    off_diagonal_uniform &= entry == lambda as i64;
                }
            }
        }
        Certificate {
            n,
            family_size,
            lambda,
            pair,
            row_labels: (1..=n as u32).filter(|&w| !pair.contains(w)).collect(),
            off_diagonal_uniform,
            diagonal_strict,
            rank,
            matrix,
            verdict,
        }
    }

    /// The certified inequality 2|F| >= n-2, i.e. |F| >= (n-2)/2.
    pub fn bound_holds(&self) -> bool {
        2 * self.family_size >= self.n as u64 - 2
    }

    /// Re-audits the stored matrix: entry structure, rank and bound chain.
    /// This uses only the certificate contents, not the family.
    pub fn reaudit(&self) -> CertificateAudit {
        let dim = self.n.saturating_sub(2);
        let shape_ok = self.matrix.rows() == dim
            && self.matrix.cols() == dim
            && self.row_labels.len() == dim
            && self
                .row_labels
                .iter()
                .zip((1..=self.n as u32).filter(|&w| !self.pair.contains(w)))
                .all(|(&a, b)| a == b);
        let lambda = self.lambda as i64;
        let mut off_diagonal_uniform = true;
        let mut diagonal_strict = true;
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                let entry = self.matrix.get(i, j);
                if i == j {
                    diagonal_strict &= entry > lambda;
                } else {
                    off_diagonal_uniform &= entry == lambda;
                }
            }
        }
        let rank = integer_rank(&self.matrix);
        let rank_ok = rank == self.rank && rank == dim;
        let chain_ok = (rank as u64) <= 2 * self.family_size;
        let certified =
            shape_ok && off_diagonal_uniform && diagonal_strict && rank_ok && chain_ok;
        CertificateAudit {
            shape_ok,
            off_diagonal_uniform,
            diagonal_strict,
            rank,
            rank_ok,
            chain_ok,
            verdict_consistent: certified == (self.verdict == Verdict::Certified),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateAudit {
    pub shape_ok: bool,
    pub off_diagonal_uniform: bool,
    pub diagonal_strict: bool,
    pub rank: usize,
    pub rank_ok: bool,
    pub chain_ok: bool,
    pub verdict_consistent: bool,
}

impl CertificateAudit {
    pub fn ok(&self) -> bool {
        self.shape_ok
            && self.off_diagonal_uniform
            && self.diagonal_strict
            && self.rank_ok
            && self.chain_ok
            && self.verdict_consistent
    }
}

/// Revalidation of a stored certificate against a family: the matrix-only
/// reaudit plus an independent recomputation of lambda and C from the
/// family itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateCheck {
    pub audit: CertificateAudit,
    pub family_matches_n: bool,
    pub family_matches_size: bool,
    pub lambda_matches: bool,
    pub matrix_matches: bool,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.audit.ok()
            && self.family_matches_n
            && self.family_matches_size
            && self.lambda_matches
            && self.matrix_matches
    }
}

/// Checks a certificate independently: reaudits the stored C alone, then
/// recomputes lambda and C from the family and compares.
pub fn check_certificate(cert: &Certificate, fam: &PermFamily) -> CertificateCheck {
    let audit = cert.reaudit();
    let family_matches_n = fam.n() == cert.n;
    let family_matches_size = fam.len() as u64 == cert.family_size;
    let lambda_matches = family_matches_n
        && separation_profile(fam).lambda == Some(cert.lambda);
    let matrix_matches = family_matches_n
        && match build_abc(fam, cert.pair.u(), cert.pair.v()) {
            Ok((_, _, c)) => c == cert.matrix,
            Err(_) => false,
        };
    CertificateCheck {
        audit,
        family_matches_n,
        family_matches_size,
        lambda_matches,
        matrix_matches,
    }
}

/// Runs the whole pipeline: verify perfection, choose a non-extremal pair,
/// build C, audit its structure, compute the exact rank and record the
/// verdict that |F| >= (n-2)/2 is certified.
pub fn certify_lower_bound(fam: &PermFamily) -> Result<Certificate, Error> {
    let profile = separation_profile(fam);
    if profile.is_vacuous() {
        return Err(Error::Domain("no disjoint edge pairs; nothing to certify"));
    }
    let Some(lambda) = profile.lambda else {
        return Err(Error::NotPerfect);
    };
    let pair = find_non_extremal_pair(fam)?;
    let (_, _, c) = build_abc(fam, pair.u(), pair.v())?;

    let n = fam.n();
    let rank = integer_rank(&c);
    let mut cert = Certificate::from_parts(
        n,
        fam.len() as u64,
        lambda,
        pair,
        rank,
        c,
        Verdict::NotCertified,
    );
    let chain_ok = (rank as u64) <= 2 * fam.len() as u64;
    if cert.off_diagonal_uniform && cert.diagonal_strict && rank == n - 2 && chain_ok {
        cert.verdict = Verdict::Certified;
    }
    Ok(cert)
}
