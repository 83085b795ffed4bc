//! One PASS/FAIL line per acceptance criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use pgonal::format::to_canonical_string;
use pgonal::selftest::{self, Collected, Criterion};

fn report(c: &Criterion, elapsed: Duration, limit: Option<Duration>) -> bool {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = c.passed && in_time;
    let timing = match limit {
        Some(l) => format!("{:.2}s (limit {}s)", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", elapsed.as_secs_f64()),
    };
    // straight to the handle so the lines survive test output capture
    let _ = writeln!(
        std::io::stdout().lock(),
        "{} criterion {}: {} [{}] {}",
        if ok { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        timing,
        c.detail
    );
    ok
}

fn timed<F: FnOnce() -> Criterion>(f: F) -> (Criterion, Duration) {
    let start = Instant::now();
    let c = f();
    (c, start.elapsed())
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut all = true;
    let mut collected = Collected::default();

    let (c, t) = timed(selftest::genus_consistency);
    all &= report(&c, t, Some(secs(1)));
    let (c, t) = timed(selftest::exceptional_fixtures);
    all &= report(&c, t, Some(secs(1)));
    let (c, t) = timed(|| selftest::worked_descent(0, &mut collected));
    all &= report(&c, t, Some(secs(5)));
    let (c, t) = timed(|| selftest::hyperelliptic_bound(0, &mut collected));
    all &= report(&c, t, Some(secs(60)));
    let (c, t) = timed(|| selftest::nontrivial_character(0, &mut collected));
    all &= report(&c, t, Some(secs(30)));
    let (c, t) = timed(|| selftest::cocycle_suite(&collected));
    all &= report(&c, t, None);
    let (c, t) = timed(|| selftest::equal_multiplicity_bound(0, &mut collected));
    all &= report(&c, t, Some(secs(30)));
    let (c, t) = timed(|| selftest::tamper_suite(&collected));
    all &= report(&c, t, None);

    let start = Instant::now();
    let first = to_canonical_string(&selftest::run(0));
    let second = to_canonical_string(&selftest::run(0));
    let same = first == second;
    let c = Criterion {
        id: 9,
        name: "determinism",
        passed: same,
        detail: format!("two selftest runs, {} bytes each, identical: {same}", first.len()),
    };
    all &= report(&c, start.elapsed(), None);

    assert!(all, "acceptance criteria failed");
}
