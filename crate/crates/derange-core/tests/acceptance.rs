//! Acceptance suite: every exit criterion as an exact check, one pass/fail
//! line printed per criterion (visible with `--nocapture`).
//!
//! Tolerances are zero throughout; every comparison is integer or exact
//! rational.

use derange_core::catalog::{self, CatalogEntry};
use derange_core::group::cyclic_quotient_generator;
use derange_core::orbits::minimal_degree;
use derange_core::perm::parse_cycles;
use derange_core::report::{analyze_triple, scan_group, Budgets, ScanItem};
use derange_core::spectrum::spectrum;
use derange_core::verify::{
    self, check_l2, run_suite, LemmaFilter, LemmaId, Status, SuiteVerdict,
};
use derange_core::{CaseLabel, Permutation, Rational};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

struct ScanData {
    entries: Vec<CatalogEntry>,
    items: Vec<ScanItem>,
    verdicts: Vec<SuiteVerdict>,
    scan_seconds: f64,
}

/// The default scan (catalog, degree <= 10, |A| <= 10^5), built once and
/// shared by the criteria.
fn default_scan() -> &'static ScanData {
    static DATA: OnceLock<ScanData> = OnceLock::new();
    DATA.get_or_init(|| {
        let t0 = Instant::now();
        let (entries, _skipped) = catalog::default_catalog(10, 100_000);
        let budgets = Budgets::default();
        let mut items = Vec::new();
        for e in &entries {
            items.extend(
                scan_group(&e.group, &e.spec.name, "catalog", &budgets)
                    .expect("catalog scan succeeds"),
            );
        }
        let scan_seconds = t0.elapsed().as_secs_f64();
        let inventory = catalog::default_regular_inventory();
        let verdicts =
            run_suite(&items, &entries, &inventory, &LemmaFilter::default()).expect("suite runs");
        ScanData {
            entries,
            items,
            verdicts,
            scan_seconds,
        }
    })
}

fn statuses<'a>(data: &'a ScanData, lemma: LemmaId) -> impl Iterator<Item = &'a SuiteVerdict> {
    data.verdicts.iter().filter(move |v| v.lemma == lemma)
}

fn assert_no_failures(data: &ScanData, lemma: LemmaId) {
    for v in statuses(data, lemma) {
        assert_ne!(
            v.status,
            Status::Fail,
            "{lemma} failed on {}: {}",
            v.subject,
            v.witness.clone().unwrap_or_default()
        );
    }
}

fn pass_count(data: &ScanData, lemma: LemmaId) -> usize {
    statuses(data, lemma)
        .filter(|v| v.status == Status::Pass)
        .count()
}

#[test]
fn criterion_1_paper_equalities() {
    let t0 = Instant::now();

    // S4 over A4, transposition coset: s0 = 1/2
    let a4 = catalog::standard("alt", 4).unwrap().group;
    let x = parse_cycles("(1 2)", 4).unwrap();
    assert_eq!(spectrum(&x, &a4).s0(), Rational::new(1, 2));

    // identity coset of AGL(1,q): s0 = 1/q
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        let g = catalog::agl1(q).unwrap().group;
        let s0 = spectrum(&Permutation::identity(q as usize), &g).s0();
        assert_eq!(s0, Rational::new(1, q as i64), "agl1:{q}");
    }

    // identity coset of the index-2 subgroup: s0 = 2/q
    for q in [5u64, 7, 9, 11, 13] {
        let g = catalog::agl1_half(q).unwrap().group;
        let s0 = spectrum(&Permutation::identity(q as usize), &g).s0();
        assert_eq!(s0, Rational::new(2, q as i64), "agl1half:{q}");
    }

    // regular C3: s0 = 2/3
    let c3 = catalog::standard("cyclic", 3).unwrap().group;
    assert_eq!(
        spectrum(&Permutation::identity(3), &c3).s0(),
        Rational::new(2, 3)
    );

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "criterion 1 took {elapsed:.2}s, limit 5s");
    println!("ACCEPTANCE 1: PASS (paper equalities exact, {elapsed:.2}s)");
}

#[test]
fn criterion_2_common_orbit_counts_both_routes() {
    let data = default_scan();
    assert!(!data.items.is_empty());
    // both routes, exactly, for k = 1, 2, 3 on every scanned triple
    for item in &data.items {
        let rep = &item.report;
        for (k, orbit_route) in [(1usize, rep.r1), (2, rep.r2), (3, rep.r3)] {
            if k > rep.degree {
                continue;
            }
            let spectrum_route = derange_core::spectrum::r_k_from_spectrum(&rep.spectrum, k)
                .unwrap_or_else(|e| panic!("{}: {e}", rep.triple_id));
            assert_eq!(
                spectrum_route, orbit_route,
                "{}: r_{k} disagrees between routes",
                rep.triple_id
            );
        }
    }
    assert_no_failures(data, LemmaId::L2);
    assert!(
        data.scan_seconds < 120.0,
        "default scan took {:.1}s, limit 120s",
        data.scan_seconds
    );
    println!(
        "ACCEPTANCE 2: PASS (r_k identical in both routes on {} triples, scan {:.1}s)",
        data.items.len(),
        data.scan_seconds
    );
}

#[test]
fn criterion_3_exceptionality_equivalence() {
    let data = default_scan();
    assert_no_failures(data, LemmaId::L3);
    assert!(pass_count(data, LemmaId::L3) > 0);

    // the S3/A3 transposition triple is reported exceptional
    let s3 = catalog::standard("sym", 3).unwrap().group;
    let a3 = catalog::standard("alt", 3).unwrap().group;
    let x = parse_cycles("(1 2)", 3).unwrap();
    let rep = analyze_triple(&s3, &a3, &x, &Budgets::default()).unwrap();
    assert!(rep.exceptionality.unwrap().exceptional);
    assert_eq!(rep.label, Some(CaseLabel::Exceptional));

    // and the scan contains it
    let found = data.items.iter().any(|i| {
        i.report.a_name == "sym:3"
            && i.report.g_order == 3
            && i.report.label == Some(CaseLabel::Exceptional)
    });
    assert!(found, "scan misses the exceptional sym:3 row");
    println!("ACCEPTANCE 3: PASS (five-way equivalence on every triple; S3/A3 exceptional)");
}

#[test]
fn criterion_4_identity_chain() {
    let data = default_scan();
    for lemma in [LemmaId::E1, LemmaId::E2, LemmaId::E3, LemmaId::E4, LemmaId::E5] {
        assert_no_failures(data, lemma);
    }
    assert_no_failures(data, LemmaId::E6);
    assert_no_failures(data, LemmaId::E7);

    // the inequalities are actually exercised (not vacuous) on every triple
    // with r2 >= 1 and mu < n
    let by_subject: BTreeMap<&str, Vec<&SuiteVerdict>> = {
        let mut m: BTreeMap<&str, Vec<&SuiteVerdict>> = BTreeMap::new();
        for v in &data.verdicts {
            m.entry(v.subject.as_str()).or_default().push(v);
        }
        m
    };
    let mut exercised = 0usize;
    for item in &data.items {
        let rep = &item.report;
        let mu = rep.mu.unwrap_or(rep.degree);
        if rep.r2 >= 1 && mu < rep.degree {
            // r2 >= 1 forces G transitive for transitive A, hence r1 = 1
            assert_eq!(rep.r1, 1, "{}", rep.triple_id);
            let verdicts = &by_subject[rep.triple_id.as_str()];
            for lemma in [LemmaId::E4, LemmaId::E5, LemmaId::E6] {
                let v = verdicts.iter().find(|v| v.lemma == lemma).unwrap();
                assert_eq!(v.status, Status::Pass, "{} {lemma}", rep.triple_id);
            }
            exercised += 1;
        }
        if rep.r2 == 1 {
            let v = by_subject[rep.triple_id.as_str()]
                .iter()
                .find(|v| v.lemma == LemmaId::E7)
                .unwrap();
            assert_eq!(v.status, Status::Pass, "{} E7", rep.triple_id);
        }
    }
    assert!(exercised >= 20, "only {exercised} triples exercised the bounds");
    println!("ACCEPTANCE 4: PASS (identity chain exact; bounds exercised on {exercised} triples)");
}

#[test]
fn criterion_5_stabilizer_chain() {
    let data = default_scan();
    for lemma in [LemmaId::P5, LemmaId::L4, LemmaId::L6] {
        assert_no_failures(data, lemma);
        assert!(pass_count(data, lemma) > 0, "{lemma} never exercised");
    }
    // the escape clause fires non-vacuously somewhere in the scan:
    // mu = 2n/3, s0 <= 2/n, and the two-point stabilizer has order exactly 2
    let witness = data.items.iter().find(|item| {
        let rep = &item.report;
        rep.primitive_a
            && rep.r2 == 1
            && rep.mu == Some(2 * rep.degree / 3)
            && 3 * rep.mu.unwrap() == 2 * rep.degree
            && rep.s0 <= Rational::new(2, rep.degree as i64)
            && rep
                .two_point
                .as_ref()
                .map(|t| t.stabilizer_order == 2)
                .unwrap_or(false)
    });
    let witness = witness.expect("no triple exercises the mu = 2n/3 escape clause");
    println!(
        "ACCEPTANCE 5: PASS (P5/L4/L6 hold; escape clause witnessed by {})",
        witness.report.triple_id
    );
}

#[test]
fn criterion_6_minimal_degree_facts() {
    // exact equality mu = q - 1 for prime q (q >= 3: the order-2 group
    // AGL(1,2) has mu = 2 by the moved-point convention)
    for q in [3u64, 5, 7, 11, 13] {
        let g = catalog::agl1(q).unwrap().group;
        assert_eq!(
            minimal_degree(&g).unwrap() as u64,
            q - 1,
            "agl1:{q} minimal degree"
        );
    }
    // subfield bound mu >= q - q0 for prime powers
    for (q, q0) in [(4u64, 2u64), (8, 2), (9, 3), (16, 4), (25, 5), (27, 3)] {
        let g = catalog::agl1(q).unwrap().group;
        assert!(
            minimal_degree(&g).unwrap() as u64 >= q - q0,
            "agl1:{q} subfield bound"
        );
    }
    // affine bound mu >= (q-1)n/q over the prime field
    for (d, p) in [(2u32, 2u64), (3, 2), (2, 3)] {
        let g = catalog::agl_dp(d, p).unwrap().group;
        let n = p.pow(d);
        let mu = minimal_degree(&g).unwrap() as u64;
        assert!(mu * p >= (p - 1) * n, "agl:{d},{p} affine bound");
    }
    // the suite's L7 verdicts agree on the scanned families
    let data = default_scan();
    assert_no_failures(data, LemmaId::L7);
    assert!(pass_count(data, LemmaId::L7) > 0);
    println!("ACCEPTANCE 6: PASS (minimal-degree facts exact)");
}

#[test]
fn criterion_7_affine_classification_totality() {
    let t0 = Instant::now();
    let budgets = Budgets::default();
    let mut histogram: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut rows = 0usize;

    let mut affine_entries: Vec<CatalogEntry> = Vec::new();
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16] {
        affine_entries.push(catalog::agl1(q).unwrap());
    }
    for q in [5u64, 7, 9, 11, 13] {
        affine_entries.push(catalog::agl1_half(q).unwrap());
    }
    for (d, p) in [(2u32, 2u64), (3, 2), (2, 3)] {
        affine_entries.push(catalog::agl_dp(d, p).unwrap());
    }

    let mut check_item = |item: &ScanItem| {
        let rep = &item.report;
        if rep.affine.is_none() || !rep.primitive_a || rep.label.is_none() {
            return;
        }
        rows += 1;
        let label = rep.label.as_ref().unwrap();
        assert!(
            !matches!(label, CaseLabel::Unclassified(_)),
            "unclassified affine row {}: {label:?}",
            rep.triple_id
        );
        *histogram.entry(label.token()).or_default() += 1;
        // exactly one case predicate matches
        let verdict = verify::check_t8(rep);
        assert_eq!(
            verdict.status,
            Status::Pass,
            "{}: {:?}",
            rep.triple_id,
            verdict.witness
        );
    };

    for entry in &affine_entries {
        for item in scan_group(&entry.group, &entry.spec.name, "affine", &budgets).unwrap() {
            check_item(&item);
        }
    }

    // the two field-automorphism coset triples
    for q in [8u64, 9] {
        let big = catalog::agammal1(q).unwrap();
        let small = catalog::agl1(q).unwrap();
        let coset = cyclic_quotient_generator(&big.group, &small.group)
            .unwrap()
            .expect("field-automorphism quotient is cyclic");
        let rep = analyze_triple(&big.group, &small.group, &coset.representative, &budgets)
            .unwrap();
        assert!(rep.affine.is_some() && rep.primitive_a);
        let label = rep.label.clone().unwrap();
        assert!(
            !matches!(label, CaseLabel::Unclassified(_)),
            "agammal1:{q} coset unclassified"
        );
        *histogram.entry(label.token()).or_default() += 1;
        rows += 1;
        let verdict = verify::check_t8(&rep);
        assert_eq!(verdict.status, Status::Pass, "agammal1:{q} coset: {:?}", verdict.witness);
    }

    for token in ["a", "b", "c", "d", "e"] {
        assert!(
            histogram.get(token).copied().unwrap_or(0) > 0,
            "label {token} missing from histogram {histogram:?}"
        );
    }
    println!(
        "ACCEPTANCE 7: PASS ({rows} affine rows, histogram {histogram:?}, {:.1}s)",
        t0.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_8_regular_normal_ingredients() {
    let t0 = Instant::now();

    // (i) fixed points equal centralizer order in the named holomorphs and
    // the degree-8 affine group
    for selector in [
        "hol:sym:3",
        "hol:dihedral:4",
        "hol:alt:4",
        "hol:elemab:2,3",
        "agl:3,2",
    ] {
        let entry = catalog::resolve(selector).unwrap();
        let regulars =
            derange_core::structure::regular_normal_subgroups(&entry.group).unwrap();
        assert!(!regulars.is_empty(), "{selector} has no regular normal subgroup");
        let outcome = verify::check_l10_group(&entry.group, &regulars);
        assert_eq!(
            outcome.status,
            Status::Pass,
            "{selector}: {:?}",
            outcome.witness
        );
    }

    // (ii) every automorphism of A5 has a nontrivial fixed subgroup
    let a5 = catalog::resolve("reg:alt:5").unwrap();
    let auts = catalog::automorphisms(&a5.group, catalog::DEFAULT_AUT_BUDGET).unwrap();
    assert_eq!(auts.len(), 120);
    for aut in &auts {
        let fixed = derange_core::group::centralizer_in(&a5.group, aut).unwrap();
        assert!(fixed.len() > 1, "automorphism with trivial fixed subgroup");
    }

    // (iii) difference-map bijection and solvability for every
    // fixed-point-free automorphism over the regular inventory
    let mut fpf_pairs = 0usize;
    for entry in catalog::default_regular_inventory() {
        let auts = catalog::automorphisms(&entry.group, catalog::DEFAULT_AUT_BUDGET).unwrap();
        for aut in &auts {
            let fixed = derange_core::group::centralizer_in(&entry.group, aut).unwrap();
            if fixed.len() == 1 {
                fpf_pairs += 1;
                assert!(
                    derange_core::group::difference_map_is_bijection(&entry.group, aut).unwrap(),
                    "difference map not bijective on {}",
                    entry.spec.name
                );
                assert!(
                    derange_core::group::is_solvable(&entry.group).unwrap(),
                    "{} admits a fixed-point-free automorphism but is not solvable",
                    entry.spec.name
                );
            }
        }
    }
    assert!(fpf_pairs >= 3, "only {fpf_pairs} fixed-point-free pairs found");

    // (iv) the derangement-proportion bound with its equality case
    let data = default_scan();
    assert_no_failures(data, LemmaId::L9);
    let mut applicable = 0usize;
    let mut equality_rows = 0usize;
    for item in &data.items {
        let rep = &item.report;
        if !(rep.transitive_a && rep.transitive_g) {
            continue;
        }
        let spec = &rep.spectrum;
        match spec.min_nonzero_fix() {
            Some(s) if s >= 2 => {
                applicable += 1;
                let bound = Rational::integer(1) - Rational::new(1, s as i64);
                assert!(rep.s0 >= bound, "{}", rep.triple_id);
                if rep.s0 == Rational::new(1, 2) {
                    equality_rows += 1;
                    assert_eq!(
                        spec.proportion(2),
                        Rational::new(1, 2),
                        "{}: equality case must have s2 = 1/2",
                        rep.triple_id
                    );
                }
            }
            _ => {}
        }
    }
    assert!(applicable >= 5, "bound applicable on only {applicable} rows");
    assert!(equality_rows >= 1, "equality case never exercised");

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "criterion 8 took {elapsed:.0}s, limit 300s");
    println!(
        "ACCEPTANCE 8: PASS (centralizer equalities, {fpf_pairs} fixed-point-free pairs, \
         {applicable} bound rows with {equality_rows} equality rows, {elapsed:.1}s)"
    );
}

#[test]
fn criterion_9_suite_green_and_fault_injection() {
    let data = default_scan();
    let failures: Vec<_> = data
        .verdicts
        .iter()
        .filter(|v| v.status == Status::Fail)
        .collect();
    assert!(failures.is_empty(), "suite failures: {failures:?}");
    // every check id passes somewhere (coverage, not just absence of failure)
    for lemma in LemmaId::ALL {
        assert!(
            pass_count(data, lemma) > 0,
            "{lemma} has no passing instance in the default scan"
        );
    }

    // fault injection: an off-by-one in the spectrum makes L2 fail with a
    // counterexample that replays identically
    let item = data
        .items
        .iter()
        .find(|i| i.report.a_name == "sym:4" && i.report.g_order == 12)
        .expect("S4/A4 row present");
    let mut corrupted = item.report.spectrum.clone();
    corrupted.counts[0] += 1;
    corrupted.counts[2] -= 1;
    let outcome = check_l2(
        &item.g,
        item.report.transitive_g,
        &corrupted,
        [item.report.r1, item.report.r2, item.report.r3],
    );
    assert_eq!(outcome.status, Status::Fail);
    let witness = outcome.witness.expect("failure carries a counterexample");
    let replay = check_l2(
        &item.g,
        item.report.transitive_g,
        &corrupted,
        [item.report.r1, item.report.r2, item.report.r3],
    );
    assert_eq!(replay.status, Status::Fail);
    assert_eq!(replay.witness.unwrap(), witness);

    println!(
        "ACCEPTANCE 9: PASS (suite green over {} verdicts on {} triples / {} groups; \
         fault injection fails L2 reproducibly)",
        data.verdicts.len(),
        data.items.len(),
        data.entries.len()
    );
}

#[test]
fn suite_is_deterministic() {
    // same inputs, two runs, identical verdicts
    let data = default_scan();
    let inventory = catalog::default_regular_inventory();
    let again = run_suite(&data.items, &data.entries, &inventory, &LemmaFilter::default())
        .unwrap();
    assert_eq!(data.verdicts.len(), again.len());
    for (a, b) in data.verdicts.iter().zip(again.iter()) {
        assert_eq!(a.subject, b.subject);
        assert_eq!(a.lemma, b.lemma);
        assert_eq!(a.status, b.status);
        assert_eq!(a.witness, b.witness);
    }
}
