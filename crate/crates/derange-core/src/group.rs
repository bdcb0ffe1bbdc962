//! Fully enumerated permutation groups: closure, membership, normality,
//! cosets, centralizers, solvability, and regular representations.
//!
//! Enumeration order is the contract: elements are discovered breadth-first
//! from the identity with generators applied in list order, so "smallest
//! element" always means "earliest in that order" and every downstream
//! choice (coset representatives, subgroup naming) is reproducible.

use crate::perm::Permutation;
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Default cap on the number of elements materialized by [`PermGroup::closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A permutation group with its element set fully materialized.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermGroup {
    /// Breadth-first closure of the generators under composition.
    ///
    /// Errors with [`Error::ClosureCapExceeded`] (reporting the partial
    /// count) if more than `cap` elements are found.
    pub fn closure(generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let degree = generators[0].degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &generators {
                let next = current.compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCapExceeded {
                            cap,
                            reached: elements.len() + 1,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup::closure(vec![Permutation::identity(degree)], 1).expect("trivial closure")
    }

    /// Rebuilds a group from a closed element set, choosing a small
    /// generating set greedily in the order given.
    pub fn from_elements(degree: usize, elements: &[Permutation]) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut have: Option<PermGroup> = None;
        for e in elements {
            let known = match &have {
                Some(g) => g.contains(e),
                None => e.is_identity(),
            };
            if !known {
                gens.push(e.clone());
                have = Some(PermGroup::closure(gens.clone(), elements.len())?);
            }
        }
        match have {
            Some(g) => {
                debug_assert_eq!(g.order() as usize, elements.len());
                Ok(g)
            }
            None => Ok(PermGroup::trivial(degree)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in breadth-first enumeration order; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={}, generators={})",
            self.degree,
            self.order(),
            self.generators
                .iter()
                .map(|g| g.print_cycles())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

/// A left coset `xG`, with `x` normalizing `G` in every use in this crate.
#[derive(Clone, Debug)]
pub struct Coset {
    pub representative: Permutation,
    pub subgroup: Arc<PermGroup>,
}

impl Coset {
    pub fn len(&self) -> u64 {
        self.subgroup.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Iterates the coset elements `x·g` in the subgroup's enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.subgroup
            .elements()
            .iter()
            .map(move |g| self.representative.compose(g))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.subgroup
            .contains(&self.representative.inverse().compose(p))
    }
}

/// Checks that `G ⊴ A`, verifying first that `G`'s generators lie in `A`.
///
/// Conjugating each generator of `G` by each generator of `A` suffices:
/// conjugation by a fixed element is a homomorphism, so generator images
/// inside `G` force `aGa⁻¹ ⊆ G`, and finiteness upgrades that to equality.
pub fn is_normal(a: &PermGroup, g: &PermGroup) -> Result<bool> {
    if a.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: g.degree(),
        });
    }
    if g.generators().iter().any(|x| !a.contains(x)) {
        return Err(Error::NotSubgroup);
    }
    for conj in a.generators() {
        for gen in g.generators() {
            if !g.contains(&gen.conjugate_by(conj)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `t ≥ 1` with `x^t ∈ G`.
fn coset_order(x: &Permutation, g: &PermGroup) -> u64 {
    let mut power = x.clone();
    let mut t = 1u64;
    while !g.contains(&power) {
        power = power.compose(x);
        t += 1;
    }
    t
}

/// All cosets of `G` in `A` whose image generates `A/G`, assuming the
/// quotient is cyclic; empty when it is not. Each coset is represented by
/// its earliest element in `A`'s enumeration order, and cosets are listed
/// in that order.
pub fn generator_cosets(a: &Arc<PermGroup>, g: &Arc<PermGroup>) -> Result<Vec<Coset>> {
    if !is_normal(a, g)? {
        return Err(Error::NotNormal);
    }
    let quotient = a.order() / g.order();
    let mut assigned = vec![false; a.elements().len()];
    let mut out = Vec::new();
    for (i, x) in a.elements().iter().enumerate() {
        if assigned[i] {
            continue;
        }
        // x is the minimal element of a fresh coset
        for h in g.elements() {
            let member = x.compose(h);
            let idx = a.index_of(&member).ok_or(Error::NotSubgroup)?;
            assigned[idx] = true;
        }
        if coset_order(x, g) == quotient {
            out.push(Coset {
                representative: x.clone(),
                subgroup: Arc::clone(g),
            });
        }
    }
    Ok(out)
}

/// If `A/G` is cyclic, the coset generating it whose representative comes
/// earliest in `A`'s enumeration order; `None` otherwise. `A = G` yields the
/// identity coset.
pub fn cyclic_quotient_generator(
    a: &Arc<PermGroup>,
    g: &Arc<PermGroup>,
) -> Result<Option<Coset>> {
    let cosets = generator_cosets(a, g)?;
    Ok(cosets.into_iter().next())
}

/// Elements of `N` commuting with `g` (`g` need not lie in `N`), in `N`'s
/// enumeration order. Always contains the identity.
pub fn centralizer_in(n: &PermGroup, g: &Permutation) -> Result<Vec<Permutation>> {
    if n.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: n.degree(),
            found: g.degree(),
        });
    }
    Ok(n.elements()
        .iter()
        .filter(|h| h.compose(g) == g.compose(h))
        .cloned()
        .collect())
}

/// Does `x · N · x⁻¹ = N`? Generator images suffice, by finiteness.
pub fn normalizes(n: &PermGroup, x: &Permutation) -> bool {
    n.generators()
        .iter()
        .all(|g| n.contains(&g.conjugate_by(x)))
}

/// Is the map `g ↦ g⁻¹·(x⁻¹gx)` on `N` a bijection?
///
/// Errors if `x` does not normalize `N`.
pub fn difference_map_is_bijection(n: &PermGroup, x: &Permutation) -> Result<bool> {
    if !normalizes(n, x) {
        return Err(Error::DoesNotNormalize);
    }
    let x_inv = x.inverse();
    let mut seen = vec![false; n.elements().len()];
    let mut count = 0usize;
    for g in n.elements() {
        let value = g.inverse().compose(&x_inv.compose(g).compose(x));
        let idx = n
            .index_of(&value)
            .expect("difference value stays in N when x normalizes N");
        if !seen[idx] {
            seen[idx] = true;
            count += 1;
        }
    }
    Ok(count == n.elements().len())
}

/// Pair budget below which the commutator subgroup is generated from all
/// element pairs; above it, from generator pairs plus normal closure.
const COMMUTATOR_PAIR_LIMIT: u64 = 10_000;

/// The derived subgroup `[N, N]`.
///
/// For small groups every commutator is enumerated. For larger ones the
/// derived subgroup equals the normal closure of the generator commutators,
/// which is what gets computed; the result is verified normal either way.
pub fn commutator_subgroup(n: &PermGroup) -> Result<PermGroup> {
    let mut seeds: Vec<Permutation> = Vec::new();
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut push = |p: Permutation, seeds: &mut Vec<Permutation>| {
        if !p.is_identity() && !seen.contains_key(&p) {
            seen.insert(p.clone(), ());
            seeds.push(p);
        }
    };
    if n.order() <= COMMUTATOR_PAIR_LIMIT {
        let inverses: Vec<Permutation> = n.elements().iter().map(|e| e.inverse()).collect();
        for (i, a) in n.elements().iter().enumerate() {
            for (j, b) in n.elements().iter().enumerate() {
                let comm = inverses[i].compose(&inverses[j]).compose(a).compose(b);
                push(comm, &mut seeds);
            }
        }
    } else {
        for a in n.generators() {
            for b in n.generators() {
                let comm = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                push(comm, &mut seeds);
            }
        }
    }
    if seeds.is_empty() {
        return Ok(PermGroup::trivial(n.degree()));
    }
    let mut derived = PermGroup::closure(seeds.clone(), n.elements().len())?;
    // Close under conjugation by N's generators until normal.
    loop {
        let mut grew = false;
        for conj in n.generators() {
            for gen in derived.generators().to_vec() {
                let c = gen.conjugate_by(conj);
                if !derived.contains(&c) {
                    seeds.push(c);
                    derived = PermGroup::closure(seeds.clone(), n.elements().len())?;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(derived)
}

/// True iff the derived series reaches the trivial group.
pub fn is_solvable(n: &PermGroup) -> Result<bool> {
    let mut current = n.clone();
    loop {
        if current.is_trivial() {
            return Ok(true);
        }
        let next = commutator_subgroup(&current)?;
        if next.order() == current.order() {
            return Ok(false);
        }
        current = next;
    }
}

/// The right regular representation: points are element indices of `G`, and
/// each generator `g` acts by `i ↦ index(elements[i] ∘ g)`.
pub fn regular_rep(g: &PermGroup) -> Result<PermGroup> {
    let n = g.elements().len();
    let mut gens = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let mut images = vec![0usize; n];
        for (i, e) in g.elements().iter().enumerate() {
            let target = e.compose(gen);
            images[i] = g.index_of(&target).expect("closed under composition");
        }
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::closure(gens, n)
}

/// Conjugacy class representatives, each the earliest class member in
/// enumeration order, listed in that order.
pub fn conjugacy_class_reps(g: &PermGroup) -> Vec<usize> {
    let m = g.elements().len();
    let mut seen = vec![false; m];
    let mut reps = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        reps.push(start);
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(i) = queue.pop() {
            for conj in g.generators() {
                let image = g.elements()[i].conjugate_by(conj);
                let idx = g.index_of(&image).expect("class stays inside the group");
                if !seen[idx] {
                    seen[idx] = true;
                    queue.push(idx);
                }
            }
        }
    }
    reps
}
