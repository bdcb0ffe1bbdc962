//! Structural predicates and the case classification of a triple:
//! Frobenius detection, normal-subgroup enumeration, regular normal
//! subgroups with abelian/elementary-abelian tags, and the five-case label.

use crate::field::prime_power;
use crate::group::{conjugacy_class_reps, is_normal, PermGroup};
use crate::orbits::is_transitive;
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

/// Is `A` a Frobenius group: transitive, no non-identity element fixes two
/// or more points, and some point stabilizer is nontrivial?
pub fn is_frobenius(a: &PermGroup) -> Result<bool> {
    if !is_transitive(a) {
        return Err(Error::Intransitive);
    }
    let mut stabilizer_nontrivial = false;
    for e in a.elements() {
        if e.is_identity() {
            continue;
        }
        match e.count_fixed() {
            0 => {}
            1 => stabilizer_nontrivial = true,
            _ => return Ok(false),
        }
    }
    Ok(stabilizer_nontrivial)
}

/// Normal closure of a single element inside `a`: the subgroup generated by
/// its conjugacy class, built from a greedily reduced generating subset.
pub fn normal_closure(a: &PermGroup, seed: &Permutation) -> Result<PermGroup> {
    if seed.is_identity() {
        return Ok(PermGroup::trivial(a.degree()));
    }
    // conjugation orbit of the seed under A's generators
    let mut class: Vec<Permutation> = vec![seed.clone()];
    let mut seen: HashSet<Permutation> = class.iter().cloned().collect();
    let mut head = 0;
    while head < class.len() {
        let current = class[head].clone();
        head += 1;
        for g in a.generators() {
            let image = current.conjugate_by(g);
            if seen.insert(image.clone()) {
                class.push(image);
            }
        }
    }
    // greedy generating subset of the class
    let cap = a.elements().len();
    let mut gens = vec![class[0].clone()];
    let mut closure = PermGroup::closure(gens.clone(), cap)?;
    for c in &class[1..] {
        if !closure.contains(c) {
            gens.push(c.clone());
            closure = PermGroup::closure(gens.clone(), cap)?;
        }
    }
    Ok(closure)
}

/// Sorted element-index key of a subgroup inside `a`, for deduplication.
fn subgroup_key(a: &PermGroup, sub: &PermGroup) -> Vec<u32> {
    let mut key: Vec<u32> = sub
        .elements()
        .iter()
        .map(|e| a.index_of(e).expect("subgroup element lies in A") as u32)
        .collect();
    key.sort_unstable();
    key
}

/// Every normal subgroup of `a`, including the trivial group and `a` itself.
///
/// Normal closures of one representative per conjugacy class are closed
/// under pairwise joins until no new subgroup appears; every normal subgroup
/// is a join of the closures of its own elements, so the enumeration is
/// exact for any fully materialized group. Results are sorted by (order,
/// element-index key).
pub fn normal_subgroups(a: &PermGroup) -> Result<Vec<Arc<PermGroup>>> {
    let cap = a.elements().len();
    let mut subs: Vec<(Vec<u32>, Arc<PermGroup>)> = Vec::new();
    let mut keys: HashSet<Vec<u32>> = HashSet::new();

    let push = |sub: PermGroup, subs: &mut Vec<(Vec<u32>, Arc<PermGroup>)>,
                keys: &mut HashSet<Vec<u32>>| {
        let key = subgroup_key(a, &sub);
        if keys.insert(key.clone()) {
            subs.push((key, Arc::new(sub)));
            true
        } else {
            false
        }
    };

    for rep in conjugacy_class_reps(a) {
        let closure = normal_closure(a, &a.elements()[rep])?;
        push(closure, &mut subs, &mut keys);
    }

    // close under pairwise joins
    let mut i = 0;
    while i < subs.len() {
        let mut j = 0;
        while j < i {
            let (a_sub, b_sub) = (&subs[i].1, &subs[j].1);
            if a_sub.order() % b_sub.order() == 0
                && b_sub.generators().iter().all(|g| a_sub.contains(g))
            {
                j += 1;
                continue; // b ≤ a, join is a
            }
            let mut gens: Vec<Permutation> = a_sub.generators().to_vec();
            gens.extend(b_sub.generators().iter().cloned());
            let join = PermGroup::closure(gens, cap)?;
            push(join, &mut subs, &mut keys);
            j += 1;
        }
        i += 1;
    }

    let mut out: Vec<(Vec<u32>, Arc<PermGroup>)> = subs;
    out.sort_by(|(ka, ga), (kb, gb)| ga.order().cmp(&gb.order()).then_with(|| ka.cmp(kb)));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// A regular normal subgroup with its abelian-structure tags.
#[derive(Clone)]
pub struct RegularNormalSubgroup {
    pub subgroup: Arc<PermGroup>,
    pub abelian: bool,
    /// `Some(p)` when the subgroup is elementary abelian of exponent `p`.
    pub elementary_abelian: Option<u64>,
}

impl RegularNormalSubgroup {
    pub fn nonabelian(&self) -> bool {
        !self.abelian
    }
}

fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.compose(b) != b.compose(a) {
                return false;
            }
        }
    }
    true
}

fn elementary_abelian_exponent(g: &PermGroup) -> Option<u64> {
    if !is_abelian(g) {
        return None;
    }
    let (p, _) = prime_power(g.order())?;
    if g.generators().iter().all(|x| x.pow(p).is_identity()) {
        Some(p)
    } else {
        None
    }
}

/// Normal subgroups of `a` of order equal to the degree that act regularly,
/// tagged abelian / elementary abelian.
pub fn regular_normal_subgroups(a: &PermGroup) -> Result<Vec<RegularNormalSubgroup>> {
    let n = a.degree() as u64;
    let mut out = Vec::new();
    for sub in normal_subgroups(a)? {
        if sub.order() != n || !is_transitive(&sub) {
            continue;
        }
        let abelian = is_abelian(&sub);
        let elementary_abelian = elementary_abelian_exponent(&sub);
        out.push(RegularNormalSubgroup {
            subgroup: sub,
            abelian,
            elementary_abelian,
        });
    }
    Ok(out)
}

/// Does `|Fix(g)| = |C_N(g)|` for a fixed-point-bearing `g` and a regular
/// normal subgroup `N` of `a`?
pub fn fixed_points_equal_centralizer(
    a: &PermGroup,
    n: &PermGroup,
    g: &Permutation,
) -> Result<bool> {
    if n.order() != a.degree() as u64 || !is_transitive(n) {
        return Err(Error::NotRegular);
    }
    if !is_normal(a, n)? {
        return Err(Error::NotNormal);
    }
    if g.count_fixed() == 0 {
        return Err(Error::Precondition(
            "element must have at least one fixed point".into(),
        ));
    }
    let centralizer = crate::group::centralizer_in(n, g)?;
    Ok(g.count_fixed() == centralizer.len())
}

/// Structural flags of a triple's ambient group and subgroup.
#[derive(Clone, Serialize)]
pub struct StructureFlags {
    pub transitive_a: bool,
    pub transitive_g: bool,
    pub primitive_a: bool,
    pub frobenius_a: bool,
    #[serde(skip)]
    pub regular_normal_subgroups: Vec<RegularNormalSubgroup>,
    /// `(p, d)` with degree `p^d` when some regular normal subgroup is
    /// elementary abelian of exponent `p`.
    pub affine_params: Option<(u64, u32)>,
}

impl StructureFlags {
    pub fn compute(a: &PermGroup, g: &PermGroup) -> Result<Self> {
        let transitive_a = is_transitive(a);
        let transitive_g = is_transitive(g);
        let primitive_a = transitive_a && crate::orbits::is_primitive(a)?;
        let frobenius_a = transitive_a && is_frobenius(a)?;
        let regular = regular_normal_subgroups(a)?;
        let affine_params = regular.iter().find_map(|r| {
            r.elementary_abelian.map(|p| {
                let d = prime_power(a.degree() as u64)
                    .map(|(_, d)| d)
                    .unwrap_or(1);
                (p, d)
            })
        });
        Ok(StructureFlags {
            transitive_a,
            transitive_g,
            primitive_a,
            frobenius_a,
            regular_normal_subgroups: regular,
            affine_params,
        })
    }

    pub fn has_regular_nonabelian(&self) -> bool {
        self.regular_normal_subgroups.iter().any(|r| r.nonabelian())
    }

    pub fn is_affine(&self) -> bool {
        self.affine_params.is_some()
    }
}

/// The classification label of a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// (a) `r₂ = 0` and `s₀ = 0`.
    Exceptional,
    /// (b) `r₂ = 1`, `s₀ = 1/n`, `A = G` Frobenius of order `n(n-1)`,
    /// `n` a prime power.
    FrobeniusFull,
    /// (c) `r₂ = 2`, `s₀ = 2/n`, `A = G` Frobenius of order `n(n-1)/2`,
    /// `n` an odd prime power.
    FrobeniusHalf,
    /// (d) `s₀ > 2/n`.
    LargeS0,
    /// (e) either the degree-4 index-2 configuration (`n = 4`, `|A/G| = 2`,
    /// `s₀ = 1/2`, `|A| = 24`, `|G| = 12`) or the small-degree residual
    /// `n ≤ 6`, `A = G`, `1/n ≤ s₀ ≤ 2/n` not already covered by (a)-(c).
    SpecialS4,
    /// A regular nonabelian normal subgroup exists; records whether the
    /// measured `s₀` is at least `1/2`.
    RegularNonabelian { s0_at_least_half: bool },
    /// No case matched; the reason is carried for scan findings.
    Unclassified(String),
}

impl CaseLabel {
    /// Short token used in tabular output.
    pub fn token(&self) -> &'static str {
        match self {
            CaseLabel::Exceptional => "a",
            CaseLabel::FrobeniusFull => "b",
            CaseLabel::FrobeniusHalf => "c",
            CaseLabel::LargeS0 => "d",
            CaseLabel::SpecialS4 => "e",
            CaseLabel::RegularNonabelian { .. } => "rnn",
            CaseLabel::Unclassified(_) => "un",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Everything the classifier needs, all measured quantities.
#[derive(Clone, Copy)]
pub struct ClassifyInput<'a> {
    pub degree: usize,
    pub a_order: u64,
    pub g_order: u64,
    pub quotient_order: u64,
    pub r2: u64,
    pub s0: Rational,
    pub frobenius_a: bool,
    pub flags: &'a StructureFlags,
}

impl ClassifyInput<'_> {
    fn n(&self) -> i64 {
        self.degree as i64
    }

    fn same_group(&self) -> bool {
        self.quotient_order == 1
    }

    pub fn case_a(&self) -> bool {
        self.r2 == 0 && self.s0.is_zero()
    }

    pub fn case_b(&self) -> bool {
        self.r2 == 1
            && self.s0 == Rational::new(1, self.n())
            && self.same_group()
            && self.frobenius_a
            && self.a_order == (self.degree as u64) * (self.degree as u64 - 1)
            && prime_power(self.degree as u64).is_some()
    }

    pub fn case_c(&self) -> bool {
        self.r2 == 2
            && self.s0 == Rational::new(2, self.n())
            && self.same_group()
            && self.frobenius_a
            && 2 * self.a_order == (self.degree as u64) * (self.degree as u64 - 1)
            && prime_power(self.degree as u64).map(|(p, _)| p % 2 == 1) == Some(true)
    }

    pub fn case_d(&self) -> bool {
        self.s0 > Rational::new(2, self.n())
    }

    pub fn case_e(&self) -> bool {
        let narrow = self.degree == 4
            && self.quotient_order == 2
            && self.s0 == Rational::new(1, 2)
            && self.a_order == 24
            && self.g_order == 12;
        // Small-degree A = G residual with s₀ between 1/n and 2/n; guarded
        // by the equality cases so the five predicates stay disjoint.
        let small_residual = self.degree <= 6
            && self.same_group()
            && self.s0 >= Rational::new(1, self.n())
            && self.s0 <= Rational::new(2, self.n())
            && !self.case_a()
            && !self.case_b()
            && !self.case_c();
        narrow || small_residual
    }

    /// The five case predicates, evaluated independently (for totality
    /// checks: exactly one must hold on classified affine triples).
    pub fn predicates(&self) -> [bool; 5] {
        [
            self.case_a(),
            self.case_b(),
            self.case_c(),
            self.case_d(),
            self.case_e(),
        ]
    }
}

/// Classifies a triple. Preconditions (checked by the caller): `A` primitive
/// and transitive, `G` transitive, cyclic quotient generated by the coset.
pub fn classify(input: &ClassifyInput) -> CaseLabel {
    if input.flags.has_regular_nonabelian() {
        return CaseLabel::RegularNonabelian {
            s0_at_least_half: input.s0 >= Rational::new(1, 2),
        };
    }
    if input.case_a() {
        CaseLabel::Exceptional
    } else if input.case_b() {
        CaseLabel::FrobeniusFull
    } else if input.case_c() {
        CaseLabel::FrobeniusHalf
    } else if input.case_e() {
        CaseLabel::SpecialS4
    } else if input.case_d() {
        CaseLabel::LargeS0
    } else {
        CaseLabel::Unclassified(format!(
            "no case matched: n={}, |A|={}, |G|={}, r2={}, s0={}",
            input.degree, input.a_order, input.g_order, input.r2, input.s0
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{centralizer_in, DEFAULT_CLOSURE_CAP};
    use crate::perm::parse_cycles;

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|s| parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::closure(gens, DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn s4() -> PermGroup {
        grp(4, &["(1 2)", "(1 2 3 4)"])
    }

    #[test]
    fn frobenius_examples() {
        let agl15 = grp(5, &["(1 2 3 4 5)", "(2 3 5 4)"]);
        assert!(is_frobenius(&agl15).unwrap());
        let d5 = grp(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]);
        assert!(is_frobenius(&d5).unwrap());
        assert!(!is_frobenius(&s4()).unwrap());
        // regular groups have trivial stabilizers, hence are not Frobenius
        let c5 = grp(5, &["(1 2 3 4 5)"]);
        assert!(!is_frobenius(&c5).unwrap());
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let subs = normal_subgroups(&s4()).unwrap();
        let orders: Vec<u64> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn normal_subgroups_of_elementary_abelian() {
        // every subgroup of C2 x C2 is normal: orders 1, 2, 2, 2, 4
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let orders: Vec<u64> = normal_subgroups(&v4).unwrap().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4]);
    }

    #[test]
    fn regular_normals_of_s4() {
        let regs = regular_normal_subgroups(&s4()).unwrap();
        assert_eq!(regs.len(), 1);
        assert_eq!(regs[0].subgroup.order(), 4);
        assert!(regs[0].abelian);
        assert_eq!(regs[0].elementary_abelian, Some(2));
    }

    #[test]
    fn regular_normals_of_agl17() {
        let agl17 = grp(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]);
        assert_eq!(agl17.order(), 42);
        let regs = regular_normal_subgroups(&agl17).unwrap();
        assert_eq!(regs.len(), 1);
        assert_eq!(regs[0].elementary_abelian, Some(7));
    }

    #[test]
    fn lemma10_shape_on_s4() {
        let a = s4();
        let v4 = grp(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let t = parse_cycles("(1 2)", 4).unwrap();
        assert!(fixed_points_equal_centralizer(&a, &v4, &t).unwrap());
        assert_eq!(centralizer_in(&v4, &t).unwrap().len(), 2);
        let id = Permutation::identity(4);
        assert!(fixed_points_equal_centralizer(&a, &v4, &id).unwrap());
    }

    #[test]
    fn classify_cases() {
        // case (b): AGL(1,5) with itself
        let agl15 = grp(5, &["(1 2 3 4 5)", "(2 3 5 4)"]);
        let flags = StructureFlags::compute(&agl15, &agl15).unwrap();
        let input = ClassifyInput {
            degree: 5,
            a_order: 20,
            g_order: 20,
            quotient_order: 1,
            r2: 1,
            s0: Rational::new(1, 5),
            frobenius_a: flags.frobenius_a,
            flags: &flags,
        };
        assert_eq!(classify(&input), CaseLabel::FrobeniusFull);

        // case (c): D5 with itself
        let d5 = grp(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]);
        let flags = StructureFlags::compute(&d5, &d5).unwrap();
        let input = ClassifyInput {
            degree: 5,
            a_order: 10,
            g_order: 10,
            quotient_order: 1,
            r2: 2,
            s0: Rational::new(2, 5),
            frobenius_a: flags.frobenius_a,
            flags: &flags,
        };
        assert_eq!(classify(&input), CaseLabel::FrobeniusHalf);

        // case (e): S4 over A4
        let a = s4();
        let a4 = grp(4, &["(1 2 3)", "(1 2 4)"]);
        let flags = StructureFlags::compute(&a, &a4).unwrap();
        let input = ClassifyInput {
            degree: 4,
            a_order: 24,
            g_order: 12,
            quotient_order: 2,
            r2: 1,
            s0: Rational::new(1, 2),
            frobenius_a: flags.frobenius_a,
            flags: &flags,
        };
        assert_eq!(classify(&input), CaseLabel::SpecialS4);
        let preds = input.predicates();
        assert_eq!(preds.iter().filter(|&&p| p).count(), 1);
    }

    #[test]
    fn classify_small_residual_covers_s4_with_itself() {
        let a = s4();
        let flags = StructureFlags::compute(&a, &a).unwrap();
        let input = ClassifyInput {
            degree: 4,
            a_order: 24,
            g_order: 24,
            quotient_order: 1,
            r2: 1,
            s0: Rational::new(3, 8),
            frobenius_a: flags.frobenius_a,
            flags: &flags,
        };
        assert_eq!(classify(&input), CaseLabel::SpecialS4);
        assert_eq!(input.predicates().iter().filter(|&&p| p).count(), 1);
    }
}
