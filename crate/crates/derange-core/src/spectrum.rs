//! Exact fixed-point spectrum of a coset `xG` and the statistics built on
//! it: derangement proportion `s₀`, the identities tying spectrum sums to
//! common-orbit counts, the five-way exceptionality equivalence, and the
//! lower/upper bound chain on `s₀`.

use crate::group::PermGroup;
use crate::orbits::{common_orbit_count, falling_factorial, is_transitive};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::{Error, Result};
use serde::Serialize;

/// Exact counts `N_i = |{g ∈ xG : |Fix(g)| = i}|` for `i = 0..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetSpectrum {
    pub degree: usize,
    /// `|G|`, which is also the coset size.
    pub coset_order: u64,
    /// `counts[i] = N_i`, length `degree + 1`.
    pub counts: Vec<u64>,
}

impl CosetSpectrum {
    /// Proportion of derangements `N₀ / |G|`.
    pub fn s0(&self) -> Rational {
        Rational::new(self.counts[0] as i64, self.coset_order as i64)
    }

    /// `s_i = N_i / |G|`.
    pub fn proportion(&self, i: usize) -> Rational {
        Rational::new(self.counts[i] as i64, self.coset_order as i64)
    }

    /// Least fixed-point count among non-derangements, if any.
    pub fn min_nonzero_fix(&self) -> Option<usize> {
        (1..=self.degree).find(|&i| self.counts[i] > 0)
    }

    /// Are `N_i = 0` for all `i` in the given inclusive range?
    pub fn zero_on(&self, from: usize, to: usize) -> bool {
        (from..=to.min(self.degree)).all(|i| self.counts[i] == 0)
    }
}

/// Enumerates all `x·g` for `g ∈ G` and tallies their fixed-point counts.
///
/// This is the hot loop of every scan: fixed points are counted straight off
/// the image arrays, with no per-element allocation.
pub fn spectrum(x: &Permutation, g: &PermGroup) -> CosetSpectrum {
    debug_assert_eq!(x.degree(), g.degree());
    let n = g.degree();
    let mut counts = vec![0u64; n + 1];
    let xi = x.images();
    for h in g.elements() {
        let hi = h.images();
        let mut fixed = 0usize;
        for (i, &mid) in hi.iter().enumerate() {
            if xi[mid] == i {
                fixed += 1;
            }
        }
        counts[fixed] += 1;
    }
    CosetSpectrum {
        degree: n,
        coset_order: g.order(),
        counts,
    }
}

/// `r_k` from the spectrum alone: `Σᵢ N_i · i·(i-1)···(i-k+1) / |G|`.
///
/// The division must be exact; a remainder means the spectrum is
/// inconsistent and is reported as a hard error.
pub fn r_k_from_spectrum(spec: &CosetSpectrum, k: usize) -> Result<u64> {
    let mut total: u128 = 0;
    for (i, &n_i) in spec.counts.iter().enumerate() {
        if n_i == 0 || i < k {
            continue;
        }
        total += n_i as u128 * falling_factorial(i as u64, k as u32);
    }
    let m = spec.coset_order as u128;
    if total % m != 0 {
        return Err(Error::NonIntegralRk {
            k,
            numerator: total,
            order: spec.coset_order,
        });
    }
    Ok((total / m) as u64)
}

/// Average number of fixed points over the coset, as an exact rational.
pub fn average_fixed_points(spec: &CosetSpectrum) -> Rational {
    let total: i64 = spec
        .counts
        .iter()
        .enumerate()
        .map(|(i, &n_i)| i as i64 * n_i as i64)
        .sum();
    Rational::new(total, spec.coset_order as i64)
}

/// The five equivalent formulations of exceptionality, evaluated
/// independently.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExceptionalityReport {
    /// (a) no common (A,G)-orbit on distinct pairs.
    pub r2_is_zero: bool,
    /// (b) the coset contains no derangement.
    pub s0_is_zero: bool,
    /// (c) every coset element fixes exactly one point.
    pub all_fix_exactly_one: bool,
    /// (d) every coset element fixes at most one point.
    pub all_fix_at_most_one: bool,
    /// (e) every coset element fixes at least one point.
    pub all_fix_at_least_one: bool,
    pub exceptional: bool,
}

/// Evaluates the five conditions and checks they agree; disagreement is a
/// hard inconsistency (it would falsify a theorem, i.e. reveal a bug).
///
/// Preconditions: `A`, `G` transitive, `G ⊴ A`.
pub fn exceptionality_report(
    a: &PermGroup,
    g: &PermGroup,
    x: &Permutation,
    tuple_budget: u64,
) -> Result<ExceptionalityReport> {
    if !is_transitive(a) || !is_transitive(g) {
        return Err(Error::Precondition(
            "exceptionality needs A and G transitive".into(),
        ));
    }
    let r2 = common_orbit_count(a, g, 2, tuple_budget)?;
    let spec = spectrum(x, g);
    exceptionality_from_parts(r2, &spec)
}

pub(crate) fn exceptionality_from_parts(
    r2: u64,
    spec: &CosetSpectrum,
) -> Result<ExceptionalityReport> {
    let m = spec.coset_order;
    let report = ExceptionalityReport {
        r2_is_zero: r2 == 0,
        s0_is_zero: spec.counts[0] == 0,
        all_fix_exactly_one: spec.counts[1] == m,
        all_fix_at_most_one: spec.zero_on(2, spec.degree),
        all_fix_at_least_one: spec.counts[0] == 0,
        exceptional: false,
    };
    let flags = [
        report.r2_is_zero,
        report.s0_is_zero,
        report.all_fix_exactly_one,
        report.all_fix_at_most_one,
        report.all_fix_at_least_one,
    ];
    if flags.iter().any(|&f| f != flags[0]) {
        return Err(Error::EquivalenceViolation(format!(
            "exceptionality conditions disagree: r2=0:{} s0=0:{} exactly-one:{} at-most-one:{} at-least-one:{} (spectrum {:?})",
            flags[0], flags[1], flags[2], flags[3], flags[4], spec.counts
        )));
    }
    Ok(ExceptionalityReport {
        exceptional: flags[0],
        ..report
    })
}

/// Raw inputs for the `s₀` bound chain. Satisfied/equality answers are
/// always recomputed from these fields, never stored.
///
/// Valid in the transitive setting (`r₁ = 1`); callers gate on that.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundsReport {
    pub degree: usize,
    pub coset_order: u64,
    pub r2: u64,
    pub r3: u64,
    pub mu: usize,
    pub s0: Rational,
    /// `N_i = 0` for `2 ≤ i ≤ n-1` (the equality condition of the first
    /// lower bound; `N_n` is exempt because its coefficient vanishes).
    pub middle_counts_zero: bool,
    /// `N_i = 0` for `3 ≤ i ≤ n` (the equality condition of the `1/2`
    /// upper bound).
    pub high_counts_zero: bool,
}

impl BoundsReport {
    pub fn new(spec: &CosetSpectrum, r2: u64, r3: u64, mu: usize) -> Self {
        let n = spec.degree;
        BoundsReport {
            degree: n,
            coset_order: spec.coset_order,
            r2,
            r3,
            mu,
            s0: spec.s0(),
            middle_counts_zero: spec.zero_on(2, n.saturating_sub(1)),
            high_counts_zero: spec.zero_on(3, n),
        }
    }

    /// Lower bound `r₂/n`; meaningful when `r₂ ≥ 1`.
    pub fn lower_bound_r2_over_n(&self) -> Rational {
        Rational::new(self.r2 as i64, self.degree as i64)
    }

    pub fn lower_r2_applicable(&self) -> bool {
        self.r2 >= 1
    }

    pub fn lower_r2_holds(&self) -> bool {
        self.s0 >= self.lower_bound_r2_over_n()
    }

    pub fn lower_r2_equality(&self) -> bool {
        self.s0 == self.lower_bound_r2_over_n()
    }

    /// `(n-2)·r₂ - r₃`, which equals a nonnegative weighted spectrum sum.
    pub fn weighted_gap(&self) -> i64 {
        (self.degree as i64 - 2) * self.r2 as i64 - self.r3 as i64
    }

    pub fn weighted_gap_nonnegative(&self) -> bool {
        self.weighted_gap() >= 0
    }

    /// The refined lower bound `r₂/n + ((n-2)r₂ - r₃)/(n(n-μ))`;
    /// inapplicable when `μ = n` (every non-identity element deranges).
    pub fn refined_lower_bound(&self) -> Option<Rational> {
        if self.mu >= self.degree {
            return None;
        }
        let n = self.degree as i64;
        Some(
            self.lower_bound_r2_over_n()
                + Rational::new(self.weighted_gap(), n * (n - self.mu as i64)),
        )
    }

    pub fn refined_lower_holds(&self) -> Option<bool> {
        self.refined_lower_bound().map(|b| self.s0 >= b)
    }

    /// `s₀ ≥ 2/n` whenever `r₂ ≥ 2`.
    pub fn two_over_n_holds(&self) -> Option<bool> {
        if self.r2 >= 2 {
            Some(self.s0 >= Rational::new(2, self.degree as i64))
        } else {
            None
        }
    }

    /// `s₀ ≤ 1/2` whenever `r₂ = 1`.
    pub fn upper_half_applicable(&self) -> bool {
        self.r2 == 1
    }

    pub fn upper_half_holds(&self) -> Option<bool> {
        if self.upper_half_applicable() {
            Some(self.s0 <= Rational::new(1, 2))
        } else {
            None
        }
    }

    pub fn upper_half_equality(&self) -> bool {
        self.s0 == Rational::new(1, 2)
    }
}

/// Builds the bound report; callers ensure the transitive setting.
pub fn bounds_report(spec: &CosetSpectrum, r2: u64, r3: u64, mu: usize) -> BoundsReport {
    BoundsReport::new(spec, r2, r3, mu)
}
