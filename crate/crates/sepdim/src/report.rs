//! Report rendering: a short human-readable summary followed by a stable
//! key=value machine block. Exit statuses, not the prose, are the machine
//! contract; the block is a convenience for log scrapers.

use sepdim_core::certify::{Certificate, CertificateCheck, Verdict};
use sepdim_core::classify::CaseClassification;
use sepdim_core::plane::PlaneReport;
use sepdim_core::search::SearchResult;
use sepdim_core::verify::{CoverageProfile, DeltaBalance, SeparationProfile};

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

pub fn separation_report(profile: &SeparationProfile, sampled: Option<u64>) -> String {
    let mut out = String::new();
    let scope = match sampled {
        Some(s) => format!("{s} sampled 4-subsets ({} pairs)", profile.pair_count),
        None => format!("all {} disjoint edge pairs", profile.pair_count),
    };
    out.push_str(&format!("separation profile over {scope}\n"));
    if profile.is_vacuous() {
        out.push_str("status: vacuously perfect (no disjoint edge pairs)\n");
    } else if let Some(lambda) = profile.lambda {
        out.push_str(&format!("status: perfect, lambda = {lambda}\n"));
    } else {
        out.push_str(&format!(
            "status: not perfect (min {}, max {}, separating: {})\n",
            opt(profile.min_c),
            opt(profile.max_c),
            profile.is_separating()
        ));
    }
    out.push('\n');
    out.push_str(&format!("pair_count={}\n", profile.pair_count));
    if let Some(s) = sampled {
        out.push_str(&format!("sampled_subsets={s}\n"));
    }
    out.push_str(&format!("min_c={}\n", opt(profile.min_c)));
    out.push_str(&format!("max_c={}\n", opt(profile.max_c)));
    if let Some(lambda) = profile.lambda {
        out.push_str(&format!("lambda={lambda}\n"));
    }
    for (count, freq) in &profile.histogram {
        out.push_str(&format!("hist_{count}={freq}\n"));
    }
    out
}

pub fn coverage_report(profile: &CoverageProfile, sampled: Option<u64>) -> String {
    let mut out = String::new();
    let scope = match sampled {
        Some(s) => format!("{s} sampled {}-subsets", profile.k),
        None => format!("all {} ordered {}-sequences", profile.sequence_count, profile.k),
    };
    out.push_str(&format!("coverage profile over {scope}\n"));
    match profile.t {
        Some(t) => out.push_str(&format!("status: perfect, t = {t}\n")),
        None => out.push_str(&format!(
            "status: not perfect (min {}, max {})\n",
            opt(profile.min_t),
            opt(profile.max_t)
        )),
    }
    out.push('\n');
    out.push_str(&format!("k={}\n", profile.k));
    out.push_str(&format!("sequence_count={}\n", profile.sequence_count));
    if let Some(s) = sampled {
        out.push_str(&format!("sampled_subsets={s}\n"));
    }
    out.push_str(&format!("min_t={}\n", opt(profile.min_t)));
    out.push_str(&format!("max_t={}\n", opt(profile.max_t)));
    if let Some(t) = profile.t {
        out.push_str(&format!("t={t}\n"));
    }
    for (count, freq) in &profile.histogram {
        out.push_str(&format!("hist_{count}={freq}\n"));
    }
    out
}

pub fn delta_report(
    balance: &DeltaBalance,
    bound: u64,
    pair_count: u64,
    sampled: Option<u64>,
) -> String {
    let holds = balance.delta <= bound && balance.separating;
    let scope = match sampled {
        Some(s) => format!("{s} sampled 4-subsets ({pair_count} pairs)"),
        None => format!("all {pair_count} disjoint edge pairs"),
    };
    let mut out = format!(
        "balance over {scope}\n\
         delta = {}, separating = {}; bound {} {}\n\n",
        balance.delta,
        balance.separating,
        bound,
        if holds { "holds" } else { "violated" }
    );
    out.push_str(&format!("delta={}\n", balance.delta));
    if let Some(s) = sampled {
        out.push_str(&format!("sampled_subsets={s}\n"));
    }
    out.push_str(&format!("separating={}\n", balance.separating as u8));
    out.push_str(&format!("bound={bound}\n"));
    out.push_str(&format!("holds={}\n", holds as u8));
    out
}

pub fn certificate_report(cert: &Certificate) -> String {
    let verdict = match cert.verdict {
        Verdict::Certified => "certified",
        Verdict::NotCertified => "not-certified",
    };
    let mut out = format!(
        "lower-bound certificate: n = {}, |F| = {}, lambda = {}\n\
         chosen pair {} (extremal fewer than lambda times)\n\
         off-diagonals all equal lambda: {}\n\
         diagonals all exceed lambda: {}\n\
         rank(C) = {} (n-2 = {}), rank(C) <= 2|F| = {}\n\
         verdict: {verdict}; certified bound: 2|F| >= n-2 ({} >= {})\n\n",
        cert.n,
        cert.family_size,
        cert.lambda,
        cert.pair,
        cert.off_diagonal_uniform,
        cert.diagonal_strict,
        cert.rank,
        cert.n - 2,
        2 * cert.family_size,
        2 * cert.family_size,
        cert.n - 2,
    );
    out.push_str(&format!("n={}\n", cert.n));
    out.push_str(&format!("members={}\n", cert.family_size));
    out.push_str(&format!("lambda={}\n", cert.lambda));
    out.push_str(&format!("u={}\n", cert.pair.u()));
    out.push_str(&format!("v={}\n", cert.pair.v()));
    out.push_str(&format!("rank={}\n", cert.rank));
    out.push_str(&format!("verdict={verdict}\n"));
    out
}

pub fn check_report(check: &CertificateCheck) -> String {
    let yes = |b: bool| if b { "ok" } else { "FAIL" };
    let mut out = format!(
        "certificate check\n\
         matrix shape and row order: {}\n\
         off-diagonals equal lambda: {}\n\
         diagonals exceed lambda: {}\n\
         stored rank matches recomputed full rank: {}\n\
         rank chain rank(C) <= 2|F|: {}\n\
         verdict consistent with audits: {}\n\
         family ground set matches: {}\n\
         family size matches: {}\n\
         family lambda matches: {}\n\
         matrix rebuilt from family matches: {}\n\n",
        yes(check.audit.shape_ok),
        yes(check.audit.off_diagonal_uniform),
        yes(check.audit.diagonal_strict),
        yes(check.audit.rank_ok),
        yes(check.audit.chain_ok),
        yes(check.audit.verdict_consistent),
        yes(check.family_matches_n),
        yes(check.family_matches_size),
        yes(check.lambda_matches),
        yes(check.matrix_matches),
    );
    out.push_str(&format!("check={}\n", if check.ok() { "pass" } else { "fail" }));
    out
}

pub fn classification_report(cls: &CaseClassification) -> String {
    let mut out = String::new();
    out.push_str("class types: ");
    let types: Vec<String> = cls
        .per_class
        .iter()
        .enumerate()
        .map(|(i, t)| format!("P_{}={}", i + 1, t))
        .collect();
    out.push_str(&types.join(" "));
    out.push('\n');
    out.push_str(&format!("profile: {}\n", cls.profile));
    match cls.case_id {
        Some(id) => out.push_str(&format!("case: {id}\n")),
        None => out.push_str("case: anomaly (profile matches no tabulated row)\n"),
    }
    out.push('\n');
    for (i, t) in cls.per_class.iter().enumerate() {
        out.push_str(&format!("class_{}={}\n", i + 1, t));
    }
    let coords: Vec<String> = cls.profile.0.iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("profile={}\n", coords.join(",")));
    out.push_str(&format!(
        "case={}\n",
        cls.case_id.map(|i| i.to_string()).unwrap_or_else(|| "anomaly".into())
    ));
    out
}

pub fn plane_validation_report(report: &PlaneReport) -> String {
    let mut out = String::new();
    if report.is_valid() {
        out.push_str("plane is valid\n");
    } else {
        out.push_str(&format!("plane is invalid ({} violations)\n", report.violations.len()));
        for line in report.lines() {
            out.push_str(&format!("  {line}\n"));
        }
    }
    out.push('\n');
    out.push_str(&format!("valid={}\n", report.is_valid() as u8));
    out.push_str(&format!("violations={}\n", report.violations.len()));
    out
}

pub fn search_report(result: &SearchResult) -> String {
    let mut out = format!("search over n = {}\n", result.n);
    let sizes: Vec<String> = result.sizes_examined.iter().map(|s| s.to_string()).collect();
    out.push_str(&format!("sizes examined: {}\n", sizes.join(", ")));
    match result.minimum {
        Some(min) => out.push_str(&format!("minimum: {min} (witness found)\n")),
        None => out.push_str("minimum: none up to the bound\n"),
    }
    out.push_str(&format!(
        "candidates visited: {}, nodes expanded: {}\n",
        result.candidates_visited, result.nodes_expanded
    ));
    if let Some(elapsed) = result.elapsed {
        out.push_str(&format!("elapsed: {elapsed:?}\n"));
    }
    out.push('\n');
    out.push_str(&format!("n={}\n", result.n));
    out.push_str(&format!(
        "minimum={}\n",
        result.minimum.map(|m| m.to_string()).unwrap_or_else(|| "-".into())
    ));
    out.push_str(&format!("candidates={}\n", result.candidates_visited));
    out.push_str(&format!("nodes={}\n", result.nodes_expanded));
    out
}
