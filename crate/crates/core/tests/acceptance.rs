//! Acceptance run: one PASS/FAIL line per criterion on stdout.
//!
//! Exits nonzero only when an exact criterion fails or a trend case breaks
//! the hard part of its rule (zero cases exactly zero, raw defects falling,
//! rescaled defects bounded above). A trend case whose rescaled defect falls
//! faster than the claimed rate is reported as FAIL but does not abort.

mod common;

use std::time::Instant;

use dmpl::suite::trend::{default_trends, DEFAULT_LADDER, RATIO_BOUND};
use dmpl::suite::{run_campaign, stirling_pi4_sides, Campaign, Report, Status, Tag, DIFF_CASES};

struct Line {
    n: u8,
    pass: bool,
    hard: bool,
    detail: String,
}

fn campaign(tag: Tag) -> Report {
    run_campaign(&Campaign::default_for(tag)).expect("default campaign runs")
}

fn summary(r: &Report) -> String {
    let s = &r.summary;
    format!("{} cases, {} passed, {} failed, {} skipped", s.run, s.passed, s.failed, s.skipped)
}

fn first_failures(r: &Report) -> String {
    r.cases
        .iter()
        .filter(|c| c.status == Status::Fail)
        .take(3)
        .map(|c| c.id.clone())
        .collect::<Vec<_>>()
        .join(", ")
}

fn exact(n: u8, r: &Report, extra: &[(bool, String)]) -> Line {
    let mut pass = r.summary.failed == 0;
    let mut detail = summary(r);
    if !pass {
        detail += &format!("; first failures: {}", first_failures(r));
    }
    for (ok, what) in extra {
        if !ok {
            pass = false;
            detail += &format!("; {what}");
        }
    }
    Line { n, pass, hard: !pass, detail }
}

fn has(r: &Report, needle: &str) -> bool {
    r.cases.iter().any(|c| c.id.contains(needle))
}

fn skip_rate(r: &Report) -> f64 {
    r.summary.skipped as f64 / r.summary.run.max(1) as f64
}

fn criterion_main() -> Line {
    let r = campaign(Tag::Main);
    let extra = [
        (skip_rate(&r) < 0.05, format!("skip rate {:.3}", skip_rate(&r))),
        (has(&r, "/g"), "no Gaussian points".to_string()),
    ];
    exact(1, &r, &extra)
}

fn criterion_modified() -> Line {
    let r = campaign(Tag::Modified);
    let extra = [(skip_rate(&r) < 0.05, format!("skip rate {:.3}", skip_rate(&r)))];
    exact(2, &r, &extra)
}

fn criterion_diff() -> Line {
    let r = campaign(Tag::Diff);
    let mut extra = Vec::new();
    for label in DIFF_CASES {
        for side in ["I", "L"] {
            let id = format!("diff/{label}/{side}/");
            let passed = r.cases.iter().filter(|c| c.id.starts_with(&id) && c.status == Status::Pass).count();
            extra.push((passed >= 3, format!("case {label} side {side} has {passed} passing points")));
        }
    }
    exact(3, &r, &extra)
}

fn criterion_transport() -> Line {
    let r = campaign(Tag::Transport);
    let extra = [
        (has(&r, "transport/chain/"), "no chain cases".to_string()),
        (has(&r, "transport/connector-2/"), "no connector-2 cases".to_string()),
        (has(&r, "transport/connector-3/"), "no connector-3 cases".to_string()),
        (has(&r, "transport/connector-4/"), "no connector-4 cases".to_string()),
        (has(&r, "transport/telescope/"), "no telescope cases".to_string()),
    ];
    exact(4, &r, &extra)
}

fn criterion_oracle() -> Line {
    let t = common::oracle_sweep(1, 50);
    let pass = t.mismatches.is_empty() && t.checked > 0;
    let mut detail = format!("{} comparisons, {} skipped, {} mismatches", t.checked, t.skipped, t.mismatches.len());
    if let Some(m) = t.mismatches.first() {
        detail += &format!("; first: {m}");
    }
    Line { n: 5, pass, hard: !pass, detail }
}

fn criterion_fmzv() -> Line {
    let r = campaign(Tag::Fmzv);
    let extra = [
        (has(&r, "fmzv/hoffman/"), "no Hoffman cases".to_string()),
        (has(&r, "fmzv/cleared/"), "no cleared-polynomial cases".to_string()),
        (has(&r, "fmzv/underline/"), "no underlined cases".to_string()),
    ];
    exact(6, &r, &extra)
}

fn criterion_misc() -> Line {
    let r = campaign(Tag::Misc);
    let (a, b) = stirling_pi4_sides(2);
    let spot = common::q(2, 5);
    let extra = [(a == spot && b == spot, format!("spot value at N=2 is ({a}, {b})"))];
    exact(7, &r, &extra)
}

fn criterion_words() -> Line {
    let r = campaign(Tag::Words);
    let extra = [
        (has(&r, "/harmonic-associates"), "no associativity cases".to_string()),
        (has(&r, "words/harmonic-product/"), "no evaluation cases".to_string()),
        (has(&r, "words/underline/"), "no underlined cases".to_string()),
    ];
    exact(8, &r, &extra)
}

fn criterion_trends() -> (Line, Vec<String>) {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut hard = false;
    let cases = default_trends();
    for case in &cases {
        let r = match case.run(&DEFAULT_LADDER) {
            Ok(r) => r,
            Err(e) => {
                notes.push(format!("  error: {e}"));
                pass = false;
                hard = true;
                continue;
            }
        };
        let ratio = r.ratio().map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        let verdict = if r.holds() { "ok" } else { "FAIL" };
        notes.push(format!(
            "  {verdict:4} {} {} ratio={ratio} decreasing={} zero={}",
            r.kind, r.label, r.raw_decreasing, r.exact_zero
        ));
        if !r.holds() {
            pass = false;
            for (name, values) in &r.alternates {
                let v: Vec<String> = values.iter().map(approx).collect();
                notes.push(format!("       rescaled by {name}: {}", v.join(" ")));
            }
        }
        if case.expect_zero() && !r.exact_zero {
            notes.push("       self-dual or unit case with a nonzero defect".to_string());
            hard = true;
        }
        if !r.exact_zero && !(r.raw_decreasing && r.upper_bounded) {
            notes.push("       raw defect not decreasing or rescaled defect grows".to_string());
            hard = true;
        }
    }
    let failing = notes.iter().filter(|n| n.trim_start().starts_with("FAIL")).count();
    let detail = format!(
        "{} cases on N={:?}, {} outside max/min < {RATIO_BOUND}{}",
        cases.len(),
        DEFAULT_LADDER,
        failing,
        if failing > 0 && !hard { " (defect decays faster than the bound; see below)" } else { "" }
    );
    (Line { n: 9, pass, hard, detail }, notes)
}

fn approx(s: &dmpl::ExactScalar) -> String {
    s.approx_f64().map(|v| format!("{v:.3e}")).unwrap_or_else(|| s.to_string())
}

fn reduced(tag: Tag, seed: u64) -> Campaign {
    let c = Campaign::default_for(tag);
    Campaign {
        seed,
        max_weight: c.max_weight.min(3),
        n_max: c.n_max.min(8),
        p_max: c.p_max.min(23),
        trials: 2,
        ..c
    }
}

fn criterion_determinism() -> Line {
    let mut bad = Vec::new();
    for tag in Tag::ALL {
        let c = reduced(tag, 17);
        let a = run_campaign(&c).expect("campaign").to_json();
        let b = run_campaign(&c).expect("campaign").to_json();
        if a != b {
            bad.push(tag.name().to_string());
        }
    }
    // a different seed must move the sampled points
    let a = run_campaign(&reduced(Tag::Main, 17)).expect("campaign").to_json();
    let b = run_campaign(&reduced(Tag::Main, 18)).expect("campaign").to_json();
    if a == b {
        bad.push("main ignores its seed".into());
    }
    for case in default_trends().iter().take(4) {
        let a = case.run(&[20, 40]).map(|r| r.to_json()).ok();
        let b = case.run(&[20, 40]).map(|r| r.to_json()).ok();
        if a.is_none() || a != b {
            bad.push("trend report".into());
        }
    }
    let pass = bad.is_empty();
    let detail = if pass {
        format!("{} suites and 4 trend reports byte-identical on rerun", Tag::ALL.len())
    } else {
        format!("differs: {}", bad.join(", "))
    };
    Line { n: 10, pass, hard: !pass, detail }
}

fn main() {
    let start = Instant::now();
    let mut hard = false;
    let mut emit = |line: Line, notes: &[String]| {
        println!(
            "criterion {:2}: {} ({})",
            line.n,
            if line.pass { "PASS" } else { "FAIL" },
            line.detail
        );
        for n in notes {
            println!("{n}");
        }
        hard |= line.hard;
    };
    emit(criterion_main(), &[]);
    emit(criterion_modified(), &[]);
    emit(criterion_diff(), &[]);
    emit(criterion_transport(), &[]);
    emit(criterion_oracle(), &[]);
    emit(criterion_fmzv(), &[]);
    emit(criterion_misc(), &[]);
    emit(criterion_words(), &[]);
    let (line, notes) = criterion_trends();
    emit(line, &notes);
    emit(criterion_determinism(), &[]);
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if hard {
        std::process::exit(1);
    }
}
