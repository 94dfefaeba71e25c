//! Acceptance suite: one test per headline criterion, each printing a
//! pass/fail line and enforcing its wall-clock limit.

use igusa_core::groebner::Budget;
use igusa_core::report::{CheckStatus, SuiteReport};
use igusa_core::suites::{run_suite, SuiteOptions};
use std::time::{Duration, Instant};

fn options() -> SuiteOptions {
    SuiteOptions::default()
}

fn suite(name: &str) -> SuiteReport {
    run_suite(name, &options()).expect("suite runs")
}

fn assert_criterion(report: &SuiteReport, ids: &[&str], elapsed: Duration, limit: Duration, label: &str) {
    let mut ok = true;
    for id in ids {
        let check = report
            .checks
            .iter()
            .find(|c| c.id == *id)
            .unwrap_or_else(|| panic!("missing check {id}"));
        if check.status != CheckStatus::Pass {
            ok = false;
            eprintln!("criterion {label}: check {id} is {:?}: {}", check.status, check.witness);
        }
    }
    let within = elapsed <= limit;
    println!(
        "criterion {label}: {} ({} ms, limit {} s)",
        if ok && within { "pass" } else { "FAIL" },
        elapsed.as_millis(),
        limit.as_secs()
    );
    assert!(ok, "criterion {label}: some checks failed");
    assert!(
        within,
        "criterion {label}: took {:?}, limit {:?}",
        elapsed, limit
    );
}

#[test]
fn criterion_01_igusa_quartic_configuration() {
    let t = Instant::now();
    let report = suite("igusa");
    assert_criterion(
        &report,
        &[
            "igusa.invariance",
            "igusa.singular_lines",
            "igusa.cremona_richmond",
            "igusa.lines_s6_stable",
        ],
        t.elapsed(),
        Duration::from_secs(30),
        "1 (Igusa quartic: invariance, 15 lines, Cremona-Richmond)",
    );
}

#[test]
fn criterion_02_sing_b_dimension() {
    let t = Instant::now();
    let report = suite("igusa");
    assert_criterion(
        &report,
        &["igusa.sing_b_dimension"],
        t.elapsed(),
        Duration::from_secs(300),
        "2 (Jacobian ideal of the quartic has cone dimension 2)",
    );
}

#[test]
fn criterion_03_segre_cubic_configuration() {
    let t = Instant::now();
    let report = suite("segre");
    assert_criterion(
        &report,
        &["segre.configuration"],
        t.elapsed(),
        Duration::from_secs(30),
        "3 (Segre cubic: 10 ordinary nodes, 15 planes, (15_4, 10_6))",
    );
}

#[test]
fn criterion_04_duality() {
    let t = Instant::now();
    let report = suite("segre");
    assert_criterion(
        &report,
        &[
            "segre.dual_contraction",
            "segre.dual_pullback",
            "segre.dual_pullback_points",
        ],
        t.elapsed(),
        Duration::from_secs(600),
        "4 (dual contraction of the 15 planes; pullback membership)",
    );
}

#[test]
fn criterion_05_congruence_model() {
    let t = Instant::now();
    let report = suite("congruence");
    assert_criterion(
        &report,
        &[
            "congruence.sections_11",
            "congruence.fiber_degree",
            "congruence.order",
            "congruence.sections_22",
            "congruence.matrix_bijection",
        ],
        t.elapsed(),
        Duration::from_secs(300),
        "5 (congruence model: 5 sections, degree 2, order 2, 16-space, bijection)",
    );
}

#[test]
fn criterion_06_focal_property() {
    let t = Instant::now();
    let report = suite("congruence");
    assert_criterion(
        &report,
        &["congruence.focal"],
        t.elapsed(),
        Duration::from_secs(600),
        "6 (focal double-conic property on 10 seeded draws)",
    );
}

#[test]
fn criterion_07_conic_bundles() {
    let t = Instant::now();
    let report = suite("conicbundle");
    assert_criterion(
        &report,
        &["conicbundle.samples"],
        t.elapsed(),
        Duration::from_secs(600),
        "7 (conic bundles: 4-nodal sextics, rank floor, Steiner, genus)",
    );
}

#[test]
fn criterion_08_igusa_pencils() {
    let t = Instant::now();
    let report = suite("pencil");
    assert_criterion(
        &report,
        &[
            "pencil.nodes30",
            "pencil.no_quadric_through_sing_b",
            "pencil.quadrics_through_nodes",
            "pencil.smoothness",
        ],
        t.elapsed(),
        Duration::from_secs(300),
        "8 (pencils: 30 ordinary nodes, quadric dimensions 0 and 1, smoothness)",
    );
}

#[test]
fn criterion_09_schlaefli() {
    let t = Instant::now();
    let report = suite("schlaefli");
    assert_criterion(
        &report,
        &[
            "schlaefli.neighborhood",
            "schlaefli.double_sixes",
            "schlaefli.trios",
            "schlaefli.theorem_d_lemmas",
            "schlaefli.weyl_group",
            "schlaefli.bookkeeping",
        ],
        t.elapsed(),
        Duration::from_secs(120),
        "9 (27 lines: 36/16, 45/5, unique double six, W(E6) = 51840, identities)",
    );
}

#[test]
fn criterion_10_slow_kummer_and_invariant_pencil() {
    use igusa_core::igusa::{build, kummer_section_count, singular_lines};
    use igusa_core::pencil::invariant_pencil_check;
    use igusa_core::rational::{rat, ratio};
    use rand::SeedableRng;

    let budget = Budget::with_seconds(900);
    let t = Instant::now();
    let (iq, _) = build();
    let lines = singular_lines(&iq).expect("lines");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let kummer = kummer_section_count(&iq, &lines, &budget, &mut rng).expect("kummer");
    let kummer_ok = kummer.singular_count == 16 && kummer.line_hits_distinct;
    let kummer_elapsed = t.elapsed();

    let t2 = Instant::now();
    let generic = invariant_pencil_check(&rat(1), &rat(1), &budget).expect("pencil member");
    let igusa_member =
        invariant_pencil_check(&ratio(-1, 4), &rat(1), &budget).expect("igusa member");
    let pencil_ok = generic && !igusa_member;
    let pencil_elapsed = t2.elapsed();

    let ok = kummer_ok
        && pencil_ok
        && kummer_elapsed <= Duration::from_secs(900)
        && pencil_elapsed <= Duration::from_secs(900);
    println!(
        "criterion 10 (slow: Kummer section = 16; invariant pencil isolated): {} \
         (kummer {} ms, pencil {} ms, limit 900 s each)",
        if ok { "pass" } else { "FAIL" },
        kummer_elapsed.as_millis(),
        pencil_elapsed.as_millis()
    );
    assert!(kummer_ok, "Kummer count: {kummer:?}");
    assert!(pencil_ok, "invariant pencil: generic {generic}, igusa member {igusa_member}");
    assert!(kummer_elapsed <= Duration::from_secs(900));
    assert!(pencil_elapsed <= Duration::from_secs(900));
}
