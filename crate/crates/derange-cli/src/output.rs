//! Rendering: the human-readable analyze view, TSV rows, and structured
//! (JSON) output. Fractions are printed exactly as `p/q`; human tables add
//! a decimal approximation in parentheses.

use derange_core::report::ScanItem;
use derange_core::verify::SuiteVerdict;
use derange_core::{Rational, TripleReport};
use std::collections::BTreeMap;
use std::io::Write;

fn approx(r: Rational) -> f64 {
    r.numerator() as f64 / r.denominator() as f64
}

pub fn print_human_report(report: &TripleReport, names: &(String, String)) {
    let (a_name, g_name) = names;
    println!("triple: A = {a_name}, G = {g_name}, x = {}", report.x_cycles);
    println!(
        "degree n = {}, |A| = {}, |G| = {}, |A/G| = {}",
        report.degree, report.a_order, report.g_order, report.quotient_order
    );
    println!(
        "A transitive: {}, primitive: {}, Frobenius: {}; G transitive: {}",
        report.transitive_a, report.primitive_a, report.frobenius_a, report.transitive_g
    );
    match report.affine {
        Some((p, d)) => println!("affine structure: elementary abelian regular normal subgroup, n = {p}^{d}"),
        None => println!("affine structure: none detected"),
    }
    if report.has_regular_nonabelian_normal {
        println!("regular nonabelian normal subgroup present");
    }
    match report.mu {
        Some(mu) => println!("minimal degree mu = {mu}"),
        None => println!("minimal degree: undefined (trivial group)"),
    }
    println!("common orbit counts: r1 = {}, r2 = {}, r3 = {}", report.r1, report.r2, report.r3);
    if let Some(tp) = &report.two_point {
        println!(
            "two-point stabilizer at ({}, {}): order {}, orbit count r = {}",
            tp.pair.0 + 1,
            tp.pair.1 + 1,
            tp.stabilizer_order,
            tp.orbit_count
        );
    }
    let counts: Vec<String> = report
        .spectrum
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| format!("N_{i}={c}"))
        .collect();
    println!("spectrum: {}", counts.join(" "));
    println!(
        "s0 = {}/{} ({:.4})",
        report.s0.numerator(),
        report.s0.denominator(),
        approx(report.s0)
    );
    if let Some(exc) = &report.exceptionality {
        println!("exceptional: {}", exc.exceptional);
    }
    match &report.label {
        Some(label) => println!("case: {label}"),
        None => println!("case: - (classification preconditions unmet)"),
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}

/// Fixed column order:
/// source, A_name, A_order, G_order, quotient_order, degree, mu, r1, r2,
/// r3, s0_num, s0_den, case, verdicts.
pub fn write_tsv(
    out: &mut impl Write,
    items: &[ScanItem],
    verdicts: &[SuiteVerdict],
) -> std::io::Result<()> {
    let by_subject = verdicts_by_subject(verdicts);
    writeln!(
        out,
        "source\tA_name\tA_order\tG_order\tquotient_order\tdegree\tmu\tr1\tr2\tr3\ts0_num\ts0_den\tcase\tverdicts"
    )?;
    for item in items {
        let r = &item.report;
        let mu = r.mu.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
        let case = r
            .label
            .as_ref()
            .map(|l| l.token().to_string())
            .unwrap_or_else(|| "-".into());
        let verdict_cell = by_subject
            .get(r.triple_id.as_str())
            .map(|vs| {
                vs.iter()
                    .map(|v| format!("{}={}", v.lemma, v.status))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.source,
            r.a_name,
            r.a_order,
            r.g_order,
            r.quotient_order,
            r.degree,
            mu,
            r.r1,
            r.r2,
            r.r3,
            r.s0.numerator(),
            r.s0.denominator(),
            case,
            verdict_cell
        )?;
    }
    // full verdict export, one record per line: subject, check id, status,
    // witness
    if !verdicts.is_empty() {
        writeln!(out, "# verdicts")?;
        for v in verdicts {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                v.subject,
                v.lemma,
                v.status,
                v.witness.clone().unwrap_or_default()
            )?;
        }
    }
    Ok(())
}

pub fn write_structured(
    out: &mut impl Write,
    items: &[ScanItem],
    verdicts: &[SuiteVerdict],
) -> std::io::Result<()> {
    let reports: Vec<&TripleReport> = items.iter().map(|i| &i.report).collect();
    let doc = serde_json::json!({
        "rows": reports,
        "verdicts": verdicts,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
}

fn verdicts_by_subject(verdicts: &[SuiteVerdict]) -> BTreeMap<&str, Vec<&SuiteVerdict>> {
    let mut map: BTreeMap<&str, Vec<&SuiteVerdict>> = BTreeMap::new();
    for v in verdicts {
        map.entry(v.subject.as_str()).or_default().push(v);
    }
    map
}
