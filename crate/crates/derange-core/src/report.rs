//! Triple analysis: orchestrates orbit counts, spectrum, structure flags,
//! bound reports, and the case label into one record per `(A, G, x)`.

use crate::group::{generator_cosets, PermGroup};
use crate::orbits::{
    self, common_orbit_ids, is_primitive, is_transitive, minimal_degree, minimal_degree_of_set,
    tuple_orbits_on, TupleDomain, DEFAULT_TUPLE_BUDGET,
};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::spectrum::{
    bounds_report, exceptionality_from_parts, spectrum, BoundsReport, CosetSpectrum,
    ExceptionalityReport,
};
use crate::structure::{classify, CaseLabel, ClassifyInput, StructureFlags};
use crate::{Error, Result};
use serde::Serialize;
use std::sync::Arc;

/// Budgets shared by scans and single-triple analysis.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub tuple_budget: u64,
    /// Highest tuple arity analyzed (common-orbit counts r_1..r_k).
    pub max_k: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tuple_budget: DEFAULT_TUPLE_BUDGET,
            max_k: 3,
        }
    }
}

/// Per-ambient-group analysis shared by all of its triples.
pub struct GroupAnalysis {
    pub flags_a_only: AFlags,
    pub normal_subgroups: Vec<Arc<PermGroup>>,
}

/// Flags depending on `A` alone.
pub struct AFlags {
    pub transitive: bool,
    pub primitive: bool,
    pub frobenius: bool,
    pub mu: Option<usize>,
    pub regular_normals: Vec<crate::structure::RegularNormalSubgroup>,
    pub affine_params: Option<(u64, u32)>,
}

/// Analyzes the ambient group once: transitivity, primitivity, minimal
/// degree, Frobenius flag, normal subgroups, regular normal subgroups.
pub fn analyze_group(a: &Arc<PermGroup>) -> Result<GroupAnalysis> {
    let transitive = is_transitive(a);
    let primitive = transitive && is_primitive(a)?;
    let frobenius = transitive && crate::structure::is_frobenius(a)?;
    let mu = if a.is_trivial() {
        None
    } else {
        Some(minimal_degree(a)?)
    };
    let normal_subgroups = crate::structure::normal_subgroups(a)?;
    let regular_normals = crate::structure::regular_normal_subgroups(a)?;
    let affine_params = regular_normals.iter().find_map(|r| {
        r.elementary_abelian.map(|p| {
            let d = crate::field::prime_power(a.degree() as u64)
                .map(|(_, d)| d)
                .unwrap_or(1);
            (p, d)
        })
    });
    Ok(GroupAnalysis {
        flags_a_only: AFlags {
            transitive,
            primitive,
            frobenius,
            mu,
            regular_normals,
            affine_params,
        },
        normal_subgroups,
    })
}

/// One `(G, x)` case drawn from an ambient group: a normal subgroup with
/// cyclic quotient and a generating-coset representative.
pub struct TripleCase {
    pub g: Arc<PermGroup>,
    pub g_label: String,
    pub x: Permutation,
    pub coset_index: usize,
}

/// Enumerates every normal subgroup of `A` with cyclic quotient and every
/// generating coset, in deterministic order.
pub fn enumerate_triples(a: &Arc<PermGroup>, analysis: &GroupAnalysis) -> Result<Vec<TripleCase>> {
    let mut out = Vec::new();
    for (gi, g) in analysis.normal_subgroups.iter().enumerate() {
        let cosets = generator_cosets(a, g)?;
        let g_label = format!("N{}.{}", g.order(), gi);
        for (ci, coset) in cosets.into_iter().enumerate() {
            out.push(TripleCase {
                g: Arc::clone(g),
                g_label: g_label.clone(),
                x: coset.representative,
                coset_index: ci,
            });
        }
    }
    Ok(out)
}

/// Two-point stabilizer summary for the chosen common pair-orbit
/// representative.
#[derive(Clone, Debug, Serialize)]
pub struct TwoPointInfo {
    /// 0-based representative pair, lexicographically least in the least
    /// common pair-orbit.
    pub pair: (usize, usize),
    pub stabilizer_order: u64,
    pub orbit_count: usize,
    /// Minimal degree of the stabilizer, when it is nontrivial.
    pub stabilizer_mu: Option<usize>,
    /// Orbit count recomputed at a second representative of the same orbit,
    /// when the orbit has one.
    pub orbit_count_second_rep: Option<usize>,
}

/// Everything measured about one triple.
#[derive(Clone, Serialize)]
pub struct TripleReport {
    pub triple_id: String,
    pub source: String,
    pub a_name: String,
    pub a_order: u64,
    pub g_label: String,
    pub g_order: u64,
    pub quotient_order: u64,
    pub degree: usize,
    pub x_cycles: String,
    pub x_in_g: bool,
    pub transitive_a: bool,
    pub transitive_g: bool,
    pub primitive_a: bool,
    pub frobenius_a: bool,
    pub affine: Option<(u64, u32)>,
    pub has_regular_nonabelian_normal: bool,
    pub mu: Option<usize>,
    /// Common-orbit counts from the orbit machinery (independent of the
    /// spectrum formulas).
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
    pub two_point: Option<TwoPointInfo>,
    pub spectrum: CosetSpectrum,
    pub s0: Rational,
    pub exceptionality: Option<ExceptionalityReport>,
    pub bounds: Option<BoundsReport>,
    pub label: Option<CaseLabel>,
    pub notes: Vec<String>,
}

/// Analyzes one triple from scratch. Scan paths share the per-A analysis
/// via [`analyze_triple_with`].
pub fn analyze_triple(
    a: &Arc<PermGroup>,
    g: &Arc<PermGroup>,
    x: &Permutation,
    budgets: &Budgets,
) -> Result<TripleReport> {
    let analysis = analyze_group(a)?;
    let g_label = format!("N{}", g.order());
    analyze_triple_with(a, &analysis, g, &g_label, x, 0, "adhoc", "A", budgets)
}

/// Analyzes one triple using a precomputed per-A analysis.
#[allow(clippy::too_many_arguments)]
pub fn analyze_triple_with(
    a: &Arc<PermGroup>,
    analysis: &GroupAnalysis,
    g: &Arc<PermGroup>,
    g_label: &str,
    x: &Permutation,
    coset_index: usize,
    source: &str,
    a_name: &str,
    budgets: &Budgets,
) -> Result<TripleReport> {
    if !crate::group::is_normal(a, g)? {
        return Err(Error::NotNormal);
    }
    let degree = a.degree();
    let transitive_g = is_transitive(g);
    let spec = spectrum(x, g);
    let s0 = spec.s0();

    // Orbit-route common-orbit counts r_1..r_3; the spectrum route is
    // recomputed independently by the verification suite.
    let mut r = [0u64; 3];
    let mut pair_data: Option<(TupleDomain, crate::orbits::OrbitPartition, Vec<u32>)> = None;
    for k in 1..=budgets.max_k.min(3) {
        if k > degree {
            break;
        }
        let domain = TupleDomain::new(degree, k, budgets.tuple_budget)?;
        let g_orbits = tuple_orbits_on(g, &domain);
        let common = common_orbit_ids(a, &g_orbits, &domain);
        r[k - 1] = common.len() as u64;
        if k == 2 {
            pair_data = Some((domain, g_orbits, common));
        }
    }
    let (r1, r2, r3) = (r[0], r[1], r[2]);

    let two_point = match &pair_data {
        Some((domain, g_orbits, common)) if !common.is_empty() => {
            // representatives are lex-least per orbit and orbits are rooted
            // in lex order, so the first common orbit id gives the lex-least
            // common representative
            let orbit_id = common[0];
            let rep_idx = g_orbits.representatives[orbit_id as usize];
            let rep = domain.tuple_at(rep_idx);
            let (pa, pb) = (rep[0], rep[1]);
            let stab = orbits::two_point_stabilizer(a, pa, pb)?;
            let orbit_count = orbits::orbit_count_of_set(&stab, degree);
            let second = (0..domain.len())
                .filter(|&i| g_orbits.orbit_ids[i] == orbit_id && i != rep_idx)
                .map(|i| {
                    let t = domain.tuple_at(i);
                    orbits::two_point_stabilizer_orbit_count(a, t[0], t[1])
                })
                .next()
                .transpose()?;
            Some(TwoPointInfo {
                pair: (pa, pb),
                stabilizer_order: stab.len() as u64,
                orbit_count,
                stabilizer_mu: minimal_degree_of_set(&stab),
                orbit_count_second_rep: second,
            })
        }
        _ => None,
    };

    let exceptionality = if analysis.flags_a_only.transitive && transitive_g {
        Some(exceptionality_from_parts(r2, &spec)?)
    } else {
        None
    };

    let bounds = match (analysis.flags_a_only.transitive && transitive_g, analysis.flags_a_only.mu)
    {
        (true, Some(mu)) => Some(bounds_report(&spec, r2, r3, mu)),
        _ => None,
    };

    let quotient_order = a.order() / g.order();
    let flags = StructureFlags {
        transitive_a: analysis.flags_a_only.transitive,
        transitive_g,
        primitive_a: analysis.flags_a_only.primitive,
        frobenius_a: analysis.flags_a_only.frobenius,
        regular_normal_subgroups: analysis.flags_a_only.regular_normals.clone(),
        affine_params: analysis.flags_a_only.affine_params,
    };

    let label = if flags.transitive_a && flags.primitive_a && transitive_g {
        let input = ClassifyInput {
            degree,
            a_order: a.order(),
            g_order: g.order(),
            quotient_order,
            r2,
            s0,
            frobenius_a: flags.frobenius_a,
            flags: &flags,
        };
        Some(classify(&input))
    } else {
        None
    };

    let mut notes = Vec::new();
    if let Some(CaseLabel::Unclassified(reason)) = &label {
        if flags.is_affine() {
            notes.push(format!("finding: affine primitive triple unclassified ({reason})"));
        }
    }
    if degree == 9 && flags.is_affine() && flags.primitive_a {
        notes.push("degree-9 affine case: flagged for inspection".into());
    }

    let triple_id = format!("{a_name}|{g_label}|x{coset_index}");
    Ok(TripleReport {
        triple_id,
        source: source.to_string(),
        a_name: a_name.to_string(),
        a_order: a.order(),
        g_label: g_label.to_string(),
        g_order: g.order(),
        quotient_order,
        degree,
        x_cycles: x.print_cycles(),
        x_in_g: g.contains(x),
        transitive_a: analysis.flags_a_only.transitive,
        transitive_g,
        primitive_a: analysis.flags_a_only.primitive,
        frobenius_a: analysis.flags_a_only.frobenius,
        affine: analysis.flags_a_only.affine_params,
        has_regular_nonabelian_normal: flags.has_regular_nonabelian(),
        mu: analysis.flags_a_only.mu,
        r1,
        r2,
        r3,
        two_point,
        spectrum: spec,
        s0,
        exceptionality,
        bounds,
        label,
        notes,
    })
}

/// A fully analyzed scan item: the report plus the live groups, so the
/// verification suite can re-derive everything independently.
pub struct ScanItem {
    pub a: Arc<PermGroup>,
    pub g: Arc<PermGroup>,
    pub x: Permutation,
    pub report: TripleReport,
}

/// Scans one ambient group: analyzes it, enumerates its triples, and
/// produces a report per triple.
pub fn scan_group(
    a: &Arc<PermGroup>,
    a_name: &str,
    source: &str,
    budgets: &Budgets,
) -> Result<Vec<ScanItem>> {
    let analysis = analyze_group(a)?;
    let mut out = Vec::new();
    for case in enumerate_triples(a, &analysis)? {
        let report = analyze_triple_with(
            a,
            &analysis,
            &case.g,
            &case.g_label,
            &case.x,
            case.coset_index,
            source,
            a_name,
            budgets,
        )?;
        out.push(ScanItem {
            a: Arc::clone(a),
            g: case.g,
            x: case.x,
            report,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::DEFAULT_CLOSURE_CAP;
    use crate::perm::parse_cycles;

    fn grp(degree: usize, gens: &[&str]) -> Arc<PermGroup> {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|s| parse_cycles(s, degree).unwrap())
            .collect();
        Arc::new(PermGroup::closure(gens, DEFAULT_CLOSURE_CAP).unwrap())
    }

    #[test]
    fn analyze_s4_a4_transposition() {
        let s4 = grp(4, &["(1 2)", "(1 2 3 4)"]);
        let a4 = grp(4, &["(1 2 3)", "(1 2 4)"]);
        let x = parse_cycles("(1 2)", 4).unwrap();
        let rep = analyze_triple(&s4, &a4, &x, &Budgets::default()).unwrap();
        assert_eq!(rep.degree, 4);
        assert_eq!(rep.mu, Some(2));
        assert_eq!((rep.r1, rep.r2, rep.r3), (1, 1, 0));
        assert_eq!(rep.s0, Rational::new(1, 2));
        assert_eq!(rep.label, Some(CaseLabel::SpecialS4));
        let tp = rep.two_point.unwrap();
        assert_eq!(tp.pair, (0, 1));
        assert_eq!(tp.stabilizer_order, 2);
        assert_eq!(tp.orbit_count, 3);
        assert_eq!(tp.orbit_count_second_rep, Some(3));
    }

    #[test]
    fn analyze_s3_a3_is_exceptional() {
        let s3 = grp(3, &["(1 2)", "(1 2 3)"]);
        let a3 = grp(3, &["(1 2 3)"]);
        let x = parse_cycles("(1 2)", 3).unwrap();
        let rep = analyze_triple(&s3, &a3, &x, &Budgets::default()).unwrap();
        assert_eq!(rep.r2, 0);
        assert!(rep.s0.is_zero());
        assert!(rep.exceptionality.unwrap().exceptional);
        assert_eq!(rep.label, Some(CaseLabel::Exceptional));
    }

    #[test]
    fn analyze_c3_with_itself() {
        let c3 = grp(3, &["(1 2 3)"]);
        let rep =
            analyze_triple(&c3, &c3, &Permutation::identity(3), &Budgets::default()).unwrap();
        // all G-orbits on pairs are A-orbits when A = G
        assert_eq!(rep.r2, 2);
        assert_eq!(rep.s0, Rational::new(2, 3));
        // s0 = 2/3 >= 2/n = 2/3 with equality
        assert_eq!(rep.bounds.unwrap().two_over_n_holds(), Some(true));
        assert_eq!(rep.label, Some(CaseLabel::SpecialS4));
    }

    #[test]
    fn enumerate_triples_of_s4() {
        let s4 = grp(4, &["(1 2)", "(1 2 3 4)"]);
        let analysis = analyze_group(&s4).unwrap();
        let cases = enumerate_triples(&s4, &analysis).unwrap();
        // S4/S4 (identity coset) and S4/A4 (transposition coset); the V4 and
        // trivial quotients are not cyclic
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].g.order(), 12);
        assert_eq!(cases[1].g.order(), 24);
    }

    #[test]
    fn scan_agl15_rows() {
        let e = catalog::agl1(5).unwrap();
        let items = scan_group(&e.group, &e.spec.name, "catalog", &Budgets::default()).unwrap();
        // G ranges over V5·H for H <= C4: orders 5, 10, 20; quotients C4,
        // C2, C1 are all cyclic; generator cosets: 2, 1, 1
        assert_eq!(items.len(), 4);
        let labels: Vec<&str> = items
            .iter()
            .map(|i| i.report.label.as_ref().unwrap().token())
            .collect();
        assert_eq!(labels, vec!["a", "a", "a", "b"]);
    }

    #[test]
    fn intransitive_g_rows_have_no_label() {
        // D4 has an intransitive normal Klein subgroup with cyclic quotient
        let d4 = grp(4, &["(1 2 3 4)", "(2 4)"]);
        let analysis = analyze_group(&d4).unwrap();
        let cases = enumerate_triples(&d4, &analysis).unwrap();
        let intransitive: Vec<_> = cases
            .iter()
            .filter(|c| !is_transitive(&c.g))
            .collect();
        assert!(!intransitive.is_empty());
        for case in intransitive {
            let rep = analyze_triple_with(
                &d4,
                &analysis,
                &case.g,
                &case.g_label,
                &case.x,
                case.coset_index,
                "t",
                "d4",
                &Budgets::default(),
            )
            .unwrap();
            assert!(rep.label.is_none());
            assert!(rep.exceptionality.is_none());
            // the common-orbit count still matches the coset average exactly
            let avg = crate::spectrum::average_fixed_points(&rep.spectrum);
            assert_eq!(avg, Rational::integer(rep.r1 as i64));
        }
    }
}
