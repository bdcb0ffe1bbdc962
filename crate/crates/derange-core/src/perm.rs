//! Permutations of `{0..n-1}` with cycle-notation parsing and printing.
//!
//! Points are 0-based internally and 1-based in every text format.

use crate::{Error, Result};
use std::fmt;

/// A permutation of `{0..n-1}`, stored as its image array:
/// `images[i]` is where point `i` goes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} out of range for degree {n}"
                )));
            }
            if seen[img] {
                return Err(Error::InvalidPermutation(format!("image {img} repeated")));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other.images.iter().map(|&i| self.images[i]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// Conjugate `self` by `by`: `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Permutation) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[by.images[i]] = by.images[img];
        }
        Permutation { images }
    }

    /// The set of points fixed by this permutation, in increasing order.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i == img)
            .map(|(i, _)| i)
            .collect()
    }

    #[inline]
    pub fn count_fixed(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i == img)
            .count()
    }

    #[inline]
    pub fn count_moved(&self) -> usize {
        self.degree() - self.count_fixed()
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical disjoint-cycle form, 1-based, fixed points omitted;
    /// the identity prints as `()`.
    pub fn print_cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.images[p];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.print_cycles())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print_cycles())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parses 1-based cycle notation (`"(1 2 3)(4 5)"`, `"()"`) or a bracketed
/// 1-based image list (`"[2,1,3]"`) into a permutation of the given degree.
///
/// Points not mentioned in cycle notation are fixed. A point repeated
/// anywhere in the expression is an error, so the cycles are disjoint.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    if degree < 2 {
        return Err(Error::Parse(format!("degree must be at least 2, got {degree}")));
    }
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if trimmed.starts_with('[') {
        return parse_image_list(trimmed, degree);
    }

    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut chars = trimmed.chars().peekable();
    let mut any_cycle = false;

    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(Error::Parse(format!("expected '(', found {c:?}")));
        }
        chars.next();
        any_cycle = true;

        let mut cycle: Vec<usize> = Vec::new();
        let mut cur = String::new();
        loop {
            match chars.next() {
                Some(d) if d.is_ascii_digit() => cur.push(d),
                Some(d) if d.is_whitespace() || d == ')' => {
                    if !cur.is_empty() {
                        let v: usize = cur
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad integer {cur:?}")))?;
                        if v == 0 || v > degree {
                            return Err(Error::Parse(format!(
                                "point {v} exceeds degree {degree}"
                            )));
                        }
                        let p = v - 1;
                        if used[p] {
                            return Err(Error::Parse(format!("point {v} repeated")));
                        }
                        used[p] = true;
                        cycle.push(p);
                        cur.clear();
                    }
                    if d == ')' {
                        break;
                    }
                }
                Some(d) => return Err(Error::Parse(format!("unexpected character {d:?}"))),
                None => return Err(Error::Parse("unclosed cycle".into())),
            }
        }
        for i in 0..cycle.len() {
            images[cycle[i]] = cycle[(i + 1) % cycle.len()];
        }
    }

    if !any_cycle {
        return Err(Error::Parse("no cycles found".into()));
    }
    Permutation::from_images(images)
}

fn parse_image_list(text: &str, degree: usize) -> Result<Permutation> {
    let inner = text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("unterminated image list".into()))?;
    let mut images = Vec::with_capacity(degree);
    for part in inner.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {:?}", part.trim())))?;
        if v == 0 || v > degree {
            return Err(Error::Parse(format!("point {v} exceeds degree {degree}")));
        }
        images.push(v - 1);
    }
    if images.len() != degree {
        return Err(Error::Parse(format!(
            "image list has {} entries, expected {degree}",
            images.len()
        )));
    }
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_three_cycle() {
        let p = parse_cycles("(1 2 3)", 4).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 3]);
    }

    #[test]
    fn parse_empty_cycle_is_identity() {
        let p = parse_cycles("()", 3).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn parse_disjoint_transpositions() {
        // hand oracle: 1->2, 2->1, 3->4, 4->3
        let p = parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
    }

    #[test]
    fn parse_image_notation() {
        let p = parse_cycles("[2,1,3]", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert!(parse_cycles("(1 5)", 3).is_err());
    }

    #[test]
    fn parse_rejects_repeated_point() {
        assert!(parse_cycles("(1 2)(2 3)", 4).is_err());
        assert!(parse_cycles("(1 1)", 3).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_cycles("1 2 3", 4).is_err());
        assert!(parse_cycles("(1 2", 4).is_err());
        assert!(parse_cycles("", 4).is_err());
    }

    #[test]
    fn fixed_points_examples() {
        assert_eq!(
            Permutation::identity(5).fixed_points(),
            vec![0, 1, 2, 3, 4]
        );
        let p = parse_cycles("(1 2 3)", 4).unwrap();
        assert_eq!(p.fixed_points(), vec![3]);
        let q = parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert!(q.fixed_points().is_empty());
        assert_eq!(q.count_fixed() + q.count_moved(), q.degree());
    }

    #[test]
    fn compose_inverse_is_identity() {
        let p = parse_cycles("(1 4 2)(3 5)", 6).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(2 3)", 3).unwrap();
        // (a ∘ b)(1): b sends 1->1, a sends 1->2.
        assert_eq!(a.compose(&b).apply(0), 1);
        // (a ∘ b)(2): b sends 2->3, a fixes 3.
        assert_eq!(a.compose(&b).apply(1), 2);
    }

    #[test]
    fn order_and_pow() {
        let p = parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
    }

    #[test]
    fn print_identity() {
        assert_eq!(Permutation::identity(4).print_cycles(), "()");
    }

    #[test]
    fn print_is_canonical() {
        let p = parse_cycles("(3 4)(1 2)", 4).unwrap();
        assert_eq!(p.print_cycles(), "(1 2)(3 4)");
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (2..=max_degree).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|images| Permutation::from_images(images).unwrap())
        })
    }

    proptest! {
        #[test]
        fn cycle_roundtrip(p in arb_perm(12)) {
            let printed = p.print_cycles();
            let back = parse_cycles(&printed, p.degree()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn inverse_roundtrip(p in arb_perm(12)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
        }

        #[test]
        fn conjugation_matches_definition(p in arb_perm(8), q in arb_perm(8)) {
            if p.degree() == q.degree() {
                let direct = p.conjugate_by(&q);
                let composed = q.compose(&p).compose(&q.inverse());
                prop_assert_eq!(direct, composed);
            }
        }
    }
}
