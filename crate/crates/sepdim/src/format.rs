//! Plain-text file formats.
//!
//! Family file: line 1 is "n m"; the next m lines each hold one member's
//! image sequence as space-separated 1-based integers. Plane file: line 1
//! is "r"; then r+1 blocks of r lines, each line r space-separated point
//! labels from [r^2]. Certificate file: a key/value header followed by the
//! C matrix in row-major integers. Lines starting with '#' and blank lines
//! are ignored everywhere; writers emit none, so written files reparse and
//! re-serialize byte-identically.

use std::fs;
use std::path::Path;

use sepdim_core::certify::{Certificate, IntMatrix, Verdict};
use sepdim_core::construct::{ConstructionTrace, TraceStep};
use sepdim_core::perm::{Edge, PermFamily, Permutation};
use sepdim_core::plane::AffinePlane;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] sepdim_core::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

/// (1-based line number, content) for every non-comment, non-blank line.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_ints(line_no: usize, line: &str) -> Result<Vec<u64>, FormatError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("expected an integer, found {tok:?}")))
        })
        .collect()
}

pub fn parse_family(text: &str) -> Result<PermFamily, FormatError> {
    let lines = data_lines(text);
    let Some(&(header_no, header)) = lines.first() else {
        return Err(parse_err(1, "missing \"n m\" header"));
    };
    let nums = parse_ints(header_no, header)?;
    let [n, m] = nums[..] else {
        return Err(parse_err(header_no, "header must be \"n m\""));
    };
    if n < 1 {
        return Err(parse_err(header_no, "ground-set size must be positive"));
    }
    let rows = &lines[1..];
    if rows.len() != m as usize {
        return Err(parse_err(
            header_no,
            format!("header announces {m} members, file holds {}", rows.len()),
        ));
    }
    let mut fam = PermFamily::new(n as usize);
    for &(line_no, row) in rows {
        let values = parse_ints(line_no, row)?;
        if values.len() != n as usize {
            return Err(parse_err(
                line_no,
                format!("expected {n} values, found {}", values.len()),
            ));
        }
        let image: Vec<u32> = values.iter().map(|&v| v as u32).collect();
        let perm = Permutation::from_image(image)
            .map_err(|e| parse_err(line_no, e.to_string()))?;
        fam.push(perm).map_err(|e| parse_err(line_no, e.to_string()))?;
    }
    Ok(fam)
}

pub fn family_to_string(fam: &PermFamily) -> String {
    let mut out = format!("{} {}\n", fam.n(), fam.len());
    for member in fam.iter() {
        out.push_str(&member.to_string());
        out.push('\n');
    }
    out
}

pub fn read_family(path: &Path) -> Result<PermFamily, FormatError> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn write_family(path: &Path, fam: &PermFamily) -> Result<(), FormatError> {
    Ok(fs::write(path, family_to_string(fam))?)
}

pub fn parse_plane(text: &str) -> Result<AffinePlane, FormatError> {
    let lines = data_lines(text);
    let Some(&(header_no, header)) = lines.first() else {
        return Err(parse_err(1, "missing order header"));
    };
    let nums = parse_ints(header_no, header)?;
    let [r] = nums[..] else {
        return Err(parse_err(header_no, "header must be the plane order r"));
    };
    let r = r as usize;
    if r < 2 {
        return Err(parse_err(header_no, "plane order must be at least 2"));
    }
    let rows = &lines[1..];
    if rows.len() != (r + 1) * r {
        return Err(parse_err(
            header_no,
            format!(
                "a plane of order {r} needs {} lines, file holds {}",
                (r + 1) * r,
                rows.len()
            ),
        ));
    }
    let mut classes = Vec::with_capacity(r + 1);
    for block in rows.chunks(r) {
        let mut class = Vec::with_capacity(r);
        for &(line_no, row) in block {
            let values = parse_ints(line_no, row)?;
            if values.len() != r {
                return Err(parse_err(
                    line_no,
                    format!("expected {r} labels, found {}", values.len()),
                ));
            }
            class.push(values.iter().map(|&v| v as u32).collect::<Vec<u32>>());
        }
        classes.push(class);
    }
    AffinePlane::from_classes(r, classes)
        .map_err(|e| parse_err(header_no, e.to_string()))
}

pub fn plane_to_string(plane: &AffinePlane) -> String {
    let mut out = format!("{}\n", plane.order());
    for class in plane.classes() {
        for line in class {
            let row: Vec<String> = line.iter().map(|p| p.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn read_plane(path: &Path) -> Result<AffinePlane, FormatError> {
    parse_plane(&fs::read_to_string(path)?)
}

pub fn write_plane(path: &Path, plane: &AffinePlane) -> Result<(), FormatError> {
    Ok(fs::write(path, plane_to_string(plane))?)
}

pub fn certificate_to_string(cert: &Certificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", cert.n));
    out.push_str(&format!("members {}\n", cert.family_size));
    out.push_str(&format!("lambda {}\n", cert.lambda));
    out.push_str(&format!("pair {} {}\n", cert.pair.u(), cert.pair.v()));
    out.push_str(&format!("rank {}\n", cert.rank));
    let verdict = match cert.verdict {
        Verdict::Certified => "certified",
        Verdict::NotCertified => "not-certified",
    };
    out.push_str(&format!("verdict {verdict}\n"));
    out.push_str(&format!("matrix {} {}\n", cert.matrix.rows(), cert.matrix.cols()));
    for i in 0..cert.matrix.rows() {
        let row: Vec<String> = cert.matrix.row(i).iter().map(|e| e.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate, FormatError> {
    let lines = data_lines(text);
    let mut n: Option<u64> = None;
    let mut members: Option<u64> = None;
    let mut lambda: Option<u64> = None;
    let mut pair: Option<(u64, u64)> = None;
    let mut rank: Option<u64> = None;
    let mut verdict: Option<Verdict> = None;
    let mut matrix_at: Option<(usize, usize, usize)> = None; // (line index, rows, cols)

    for (idx, &(line_no, line)) in lines.iter().enumerate() {
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or("");
        let rest: Vec<&str> = parts.collect();
        let one = |rest: &[&str]| -> Result<u64, FormatError> {
            match rest {
                [tok] => tok
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("expected an integer, found {tok:?}"))),
                _ => Err(parse_err(line_no, "expected exactly one value")),
            }
        };
        match key {
            "n" => n = Some(one(&rest)?),
            "members" => members = Some(one(&rest)?),
            "lambda" => lambda = Some(one(&rest)?),
            "rank" => rank = Some(one(&rest)?),
            "pair" => match rest[..] {
                [a, b] => {
                    let a = a.parse().map_err(|_| parse_err(line_no, "bad pair"))?;
                    let b = b.parse().map_err(|_| parse_err(line_no, "bad pair"))?;
                    pair = Some((a, b));
                }
                _ => return Err(parse_err(line_no, "pair must hold two vertices")),
            },
            "verdict" => {
                verdict = Some(match rest[..] {
                    ["certified"] => Verdict::Certified,
                    ["not-certified"] => Verdict::NotCertified,
                    _ => return Err(parse_err(line_no, "verdict must be certified or not-certified")),
                })
            }
            "matrix" => {
                match rest[..] {
                    [rs, cs] => {
                        let rs = rs.parse().map_err(|_| parse_err(line_no, "bad matrix shape"))?;
                        let cs = cs.parse().map_err(|_| parse_err(line_no, "bad matrix shape"))?;
                        matrix_at = Some((idx + 1, rs, cs));
                    }
                    _ => return Err(parse_err(line_no, "matrix header must be \"matrix rows cols\"")),
                }
                break;
            }
            other => return Err(parse_err(line_no, format!("unknown key {other:?}"))),
        }
    }

    let missing = |what: &str| parse_err(1, format!("missing {what} header"));
    let n = n.ok_or_else(|| missing("n"))? as usize;
    let members = members.ok_or_else(|| missing("members"))?;
    let lambda = lambda.ok_or_else(|| missing("lambda"))?;
    let (pu, pv) = pair.ok_or_else(|| missing("pair"))?;
    let rank = rank.ok_or_else(|| missing("rank"))? as usize;
    let verdict = verdict.ok_or_else(|| missing("verdict"))?;
    let (start, rows, cols) = matrix_at.ok_or_else(|| missing("matrix"))?;

    let matrix_lines = &lines[start..];
    if matrix_lines.len() != rows {
        return Err(parse_err(
            lines.get(start - 1).map(|&(l, _)| l).unwrap_or(1),
            format!("matrix announces {rows} rows, file holds {}", matrix_lines.len()),
        ));
    }
    let mut matrix_rows: Vec<Vec<i64>> = Vec::with_capacity(rows);
    for &(line_no, row) in matrix_lines {
        let values: Vec<i64> = row
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| parse_err(line_no, format!("expected an integer, found {tok:?}")))
            })
            .collect::<Result<_, _>>()?;
        if values.len() != cols {
            return Err(parse_err(
                line_no,
                format!("expected {cols} entries, found {}", values.len()),
            ));
        }
        matrix_rows.push(values);
    }
    let matrix = IntMatrix::from_rows(matrix_rows)?;
    let pair = Edge::new(pu as u32, pv as u32)?;
    Ok(Certificate::from_parts(n, members, lambda, pair, rank, matrix, verdict))
}

pub fn read_certificate(path: &Path) -> Result<Certificate, FormatError> {
    parse_certificate(&fs::read_to_string(path)?)
}

pub fn write_certificate(path: &Path, cert: &Certificate) -> Result<(), FormatError> {
    Ok(fs::write(path, certificate_to_string(cert))?)
}

pub fn trace_to_string(trace: &ConstructionTrace) -> String {
    let mut out = String::new();
    for level in &trace.levels {
        match level.step {
            TraceStep::BaseFamily => {
                out.push_str(&format!(
                    "n={} base family, size {}\n",
                    level.n, level.family_size
                ));
            }
            TraceStep::PlaneRecursion { plane_order, restricted } => {
                out.push_str(&format!(
                    "n={} via plane of order {}{}, size {}\n",
                    level.n,
                    plane_order,
                    if restricted { format!(" restricted from {}", plane_order * plane_order) } else { String::new() },
                    level.family_size
                ));
            }
        }
    }
    out
}
