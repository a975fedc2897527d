//! The eight acceptance criteria, one line each. Every comparison is exact.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use qtrin_core::suite::{run_suite, SuiteName, SuiteOptions, SuiteReport};

type Criterion = fn() -> Result<Outcome, String>;

struct Outcome {
    ok: bool,
    note: String,
}

fn suite(name: SuiteName) -> Result<SuiteReport, String> {
    run_suite(name, &SuiteOptions::default()).map_err(|e| e.to_string())
}

/// Every case passes, and every id in `required` is present.
fn judge(report: &SuiteReport, required: &[String]) -> Outcome {
    let ids: BTreeSet<&str> = report.cases.iter().map(|c| c.id.as_str()).collect();
    let missing: Vec<&String> = required.iter().filter(|r| !ids.contains(r.as_str())).collect();
    let failing: Vec<String> = report
        .cases
        .iter()
        .filter(|c| c.status != qtrin_core::suite::Status::Pass)
        .take(3)
        .map(|c| format!("{} [{}]", c.id, c.detail))
        .collect();
    let s = report.summary;
    let mut note = format!("{} cases: {} pass, {} fail, {} error", report.cases.len(), s.pass, s.fail, s.error);
    if !missing.is_empty() {
        note.push_str(&format!("; missing {missing:?}"));
    }
    if !failing.is_empty() {
        note.push_str(&format!("; e.g. {}", failing.join(", ")));
    }
    Outcome { ok: report.all_pass() && missing.is_empty(), note }
}

fn count(report: &SuiteReport, prefix: &str) -> usize {
    report.cases.iter().filter(|c| c.id.starts_with(prefix)).count()
}

fn connection() -> Result<Outcome, String> {
    let r = suite(SuiteName::Connect)?;
    let mut req = Vec::new();
    for f in ["C", "D"] {
        for l in 0..=20i64 {
            for a in -l..=l {
                req.push(format!("connect/ortho/{f}/L={l:02}/a={a:+03}"));
            }
        }
    }
    for n in 0..=1 {
        for l in 0..=20 {
            req.push(format!("connect/expand/T{n}-in-binomials/L={l:02}"));
            req.push(format!("connect/expand/binomials-in-T{n}/L={l:02}"));
        }
    }
    Ok(judge(&r, &req))
}

fn appendix() -> Result<Outcome, String> {
    let r = suite(SuiteName::Appendix)?;
    let mut req = Vec::new();
    for id in ["qcv1", "qcv2", "qcv3", "qS"] {
        for l in 0..=8 {
            for a in 0..=8 {
                req.push(format!("appendix/box/{id}/L={l:02}/a={a:02}"));
            }
        }
    }
    for l in 0..=30 {
        for what in ["recurrence", "duality", "newton"] {
            req.push(format!("appendix/binom/{what}/L={l:02}"));
        }
    }
    Ok(judge(&r, &req))
}

fn fermi_bose() -> Result<Outcome, String> {
    let r = suite(SuiteName::Virasoro)?;
    let pairs = [(3, 4), (4, 5), (5, 6), (5, 7), (5, 8), (7, 10), (7, 12)];
    let mut req = Vec::new();
    for (p, pp) in pairs {
        for l in 0..=14 {
            req.push(format!("virasoro/F=B/p={p:02}/pp={pp:02}/L={l:02}"));
            if pp - p >= 2 {
                req.push(format!("virasoro/duality/p={p:02}/pp={pp:02}/L={l:02}"));
            }
        }
    }
    Ok(judge(&r, &req))
}

fn propositions() -> Result<Outcome, String> {
    let r = suite(SuiteName::Props)?;
    let mut req = Vec::new();
    let lists: [(u8, &[(i64, i64)]); 4] = [
        (1, &[(4, 5), (5, 7), (7, 10)]),
        (2, &[(4, 7), (5, 8), (7, 12)]),
        (3, &[(3, 4), (4, 5), (5, 7)]),
        (4, &[(5, 7), (7, 10), (7, 9)]),
    ];
    for (num, pairs) in lists {
        for &(p, pp) in pairs {
            for l in 0..=12 {
                req.push(format!("props/prop{num}/p={p:02}/pp={pp:02}/L={l:02}"));
                if num >= 3 {
                    req.push(format!("props/prop{num}-composed/p={p:02}/pp={pp:02}/L={l:02}"));
                }
            }
        }
    }
    for n in 1..=5 {
        for l in 0..=12 {
            req.push(format!("props/prop5/n={n}/L={l:02}"));
        }
    }
    for l in 0..=20 {
        req.push(format!("props/prop5-rr/L={l:02}"));
    }
    Ok(judge(&r, &req))
}

fn section3() -> Result<Outcome, String> {
    let r = suite(SuiteName::Section3)?;
    let mut req: Vec<String> = (0..=30).map(|l| format!("section3/rr/L={l:02}")).collect();
    for l in 0..=12 {
        req.push(format!("section3/bmo/L={l:02}"));
        req.push(format!("section3/bmo-companion/L={l:02}"));
    }
    req.push("section3/gg".into());
    req.push("section3/jtp".into());
    let mut out = judge(&r, &req);
    let orders: Vec<_> = ["section3/gg", "section3/jtp"]
        .iter()
        .map(|id| r.cases.iter().find(|c| c.id == *id).map(|c| c.params["order"].clone()))
        .collect();
    if orders != [Some(80.into()), Some(40.into())] {
        out.ok = false;
        out.note.push_str(&format!("; wrong orders {orders:?}"));
    }
    Ok(out)
}

fn limits() -> Result<Outcome, String> {
    let r = suite(SuiteName::Limits)?;
    let mut req: Vec<String> = Vec::new();
    for a in 0..=2 {
        req.push(format!("limits/t0/even/a={a}"));
        req.push(format!("limits/t0/odd/a={a}"));
        req.push(format!("limits/trinomial/a={a}"));
    }
    for a in 0..=4 {
        req.push(format!("limits/qbin/a={a}"));
    }
    for n in 1..=4 {
        req.push(format!("limits/tainf/n={n}"));
    }
    req.push("limits/character/p=2/pp=3".into());
    Ok(judge(&r, &req))
}

fn bailey() -> Result<Outcome, String> {
    let r = suite(SuiteName::Bailey)?;
    let mut req: Vec<String> = (1..=16).map(|l| format!("bailey/tbl/L={l:02}")).collect();
    for n in 0..=1 {
        for input in ["unit", "random", "q^(r^2/2)"] {
            req.push(format!("bailey/trinomial-bailey-lemma/n={n}/{input}"));
        }
    }
    let mut out = judge(&r, &req);
    let (specs, pairs) = (count(&r, "bailey/bailey-lemma/"), count(&r, "bailey/transforms/pair="));
    if specs < 4 || pairs < 20 {
        out.ok = false;
    }
    out.note.push_str(&format!("; {specs} lemma specialisations, {pairs} random pairs"));
    Ok(out)
}

fn determinism() -> Result<Outcome, String> {
    let dir = std::env::temp_dir().join(format!("qtrin-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut docs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("run{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_qtrin"))
            .args(["verify", "all", "--lmax", "6", "--order", "20", "--seed", "17", "--json"])
            .arg(&path)
            .stdout(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        if status.code() != Some(0) {
            return Ok(Outcome { ok: false, note: format!("run {run} exited with {status}") });
        }
        docs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    let same = docs[0] == docs[1];
    Ok(Outcome {
        ok: same && !docs[0].is_empty(),
        note: format!("two `verify all` runs, {} bytes, identical: {same}", docs[0].len()),
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("connection coefficients", connection),
        ("appendix identities", appendix),
        ("fermionic = bosonic", fermi_bose),
        ("proposition sweeps", propositions),
        ("rogers-ramanujan family", section3),
        ("limits", limits),
        ("bailey pairs", bailey),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome { ok: false, note: format!("error: {e}") });
        all &= outcome.ok;
        println!(
            "criterion {} ({name}): {} in {:.1}s; {}",
            i + 1,
            if outcome.ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            outcome.note
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
