//! Orbit machinery: point orbits, orbits on distinct k-tuples, minimal
//! degree, primitivity, common (A,G)-orbit counts, and two-point stabilizers.

use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::{Error, Result};
use std::collections::HashMap;

/// Default budget on the size of a tuple domain (falling factorial of the
/// degree by the arity).
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;

/// A partition of a finite domain into orbits.
///
/// Orbit ids are assigned in order of first appearance when sweeping the
/// domain in index order, so each orbit's representative is its least member.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub domain_size: usize,
    pub orbit_ids: Vec<u32>,
    pub orbit_count: usize,
    pub representatives: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbit_size(&self, id: u32) -> usize {
        self.orbit_ids.iter().filter(|&&x| x == id).count()
    }
}

/// Orbits of the natural action on points.
pub fn point_orbits(h: &PermGroup) -> OrbitPartition {
    let n = h.degree();
    let mut ids = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut count = 0u32;
    for start in 0..n {
        if ids[start] != u32::MAX {
            continue;
        }
        reps.push(start);
        ids[start] = count;
        let mut queue = vec![start];
        while let Some(p) = queue.pop() {
            for g in h.generators() {
                let q = g.apply(p);
                if ids[q] == u32::MAX {
                    ids[q] = count;
                    queue.push(q);
                }
            }
        }
        count += 1;
    }
    OrbitPartition {
        domain_size: n,
        orbit_ids: ids,
        orbit_count: count as usize,
        representatives: reps,
    }
}

pub fn is_transitive(h: &PermGroup) -> bool {
    point_orbits(h).orbit_count == 1
}

/// Minimal degree: the least number of points moved by a non-identity
/// element. Errors on the trivial group.
pub fn minimal_degree(h: &PermGroup) -> Result<usize> {
    h.elements()
        .iter()
        .filter(|e| !e.is_identity())
        .map(|e| e.count_moved())
        .min()
        .ok_or(Error::TrivialGroup)
}

/// Minimal degree of a plain element set (used for stabilizer subgroups).
pub fn minimal_degree_of_set(elements: &[Permutation]) -> Option<usize> {
    elements
        .iter()
        .filter(|e| !e.is_identity())
        .map(|e| e.count_moved())
        .min()
}

/// All ordered k-tuples of distinct points of `{0..n-1}` in lexicographic
/// order, with O(1) membership lookup via a dense mixed-radix encoding.
pub struct TupleDomain {
    pub degree: usize,
    pub arity: usize,
    /// Flattened tuples, `arity` entries each, lexicographic order.
    tuples: Vec<usize>,
    position: HashMap<u64, usize>,
}

pub fn falling_factorial(n: u64, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u64 {
        acc *= (n - i) as u128;
    }
    acc
}

impl TupleDomain {
    /// Builds the domain, rejecting sizes beyond `budget`.
    pub fn new(degree: usize, arity: usize, budget: u64) -> Result<Self> {
        if arity == 0 || arity > degree {
            return Ok(TupleDomain {
                degree,
                arity,
                tuples: Vec::new(),
                position: HashMap::new(),
            });
        }
        let size = falling_factorial(degree as u64, arity as u32);
        if size > budget as u128 {
            return Err(Error::TupleBudgetExceeded {
                required: size,
                budget,
            });
        }
        let size = size as usize;
        let mut tuples = Vec::with_capacity(size * arity);
        let mut position = HashMap::with_capacity(size);
        let mut current = vec![0usize; arity];
        let mut used = vec![false; degree];
        let mut count = 0usize;
        // depth-first lexicographic generation of distinct tuples
        fn rec(
            depth: usize,
            arity: usize,
            degree: usize,
            current: &mut Vec<usize>,
            used: &mut Vec<bool>,
            tuples: &mut Vec<usize>,
            position: &mut HashMap<u64, usize>,
            count: &mut usize,
        ) {
            if depth == arity {
                let enc = encode(current, degree);
                position.insert(enc, *count);
                tuples.extend_from_slice(current);
                *count += 1;
                return;
            }
            for p in 0..degree {
                if !used[p] {
                    used[p] = true;
                    current[depth] = p;
                    rec(depth + 1, arity, degree, current, used, tuples, position, count);
                    used[p] = false;
                }
            }
        }
        rec(
            0,
            arity,
            degree,
            &mut current,
            &mut used,
            &mut tuples,
            &mut position,
            &mut count,
        );
        debug_assert_eq!(count, size);
        Ok(TupleDomain {
            degree,
            arity,
            tuples,
            position,
        })
    }

    pub fn len(&self) -> usize {
        if self.arity == 0 {
            0
        } else {
            self.tuples.len() / self.arity
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tuple_at(&self, idx: usize) -> &[usize] {
        &self.tuples[idx * self.arity..(idx + 1) * self.arity]
    }

    pub fn position_of(&self, tuple: &[usize]) -> Option<usize> {
        self.position.get(&encode(tuple, self.degree)).copied()
    }
}

fn encode(tuple: &[usize], degree: usize) -> u64 {
    let mut acc: u64 = 0;
    for &t in tuple {
        acc = acc * degree as u64 + t as u64;
    }
    acc
}

/// Orbits of the componentwise action of `h` on a tuple domain.
pub fn tuple_orbits_on(h: &PermGroup, domain: &TupleDomain) -> OrbitPartition {
    let size = domain.len();
    let mut ids = vec![u32::MAX; size];
    let mut reps = Vec::new();
    let mut count = 0u32;
    let mut image = vec![0usize; domain.arity];
    for start in 0..size {
        if ids[start] != u32::MAX {
            continue;
        }
        reps.push(start);
        ids[start] = count;
        let mut queue = vec![start];
        while let Some(idx) = queue.pop() {
            for g in h.generators() {
                let t = domain.tuple_at(idx);
                for (slot, &p) in image.iter_mut().zip(t.iter()) {
                    *slot = g.apply(p);
                }
                let j = domain
                    .position_of(&image)
                    .expect("image of a distinct tuple is a distinct tuple");
                if ids[j] == u32::MAX {
                    ids[j] = count;
                    queue.push(j);
                }
            }
        }
        count += 1;
    }
    OrbitPartition {
        domain_size: size,
        orbit_ids: ids,
        orbit_count: count as usize,
        representatives: reps,
    }
}

/// Convenience wrapper building the domain first.
pub fn tuple_orbits(h: &PermGroup, arity: usize, budget: u64) -> Result<(TupleDomain, OrbitPartition)> {
    let domain = TupleDomain::new(h.degree(), arity, budget)?;
    let orbits = tuple_orbits_on(h, &domain);
    Ok((domain, orbits))
}

/// Indices (into `g_orbits.representatives`) of the G-orbits that are also
/// A-orbits: a G-orbit is common iff every A-generator maps its
/// representative back into the same G-orbit.
pub fn common_orbit_ids(
    a: &PermGroup,
    g_orbits: &OrbitPartition,
    domain: &TupleDomain,
) -> Vec<u32> {
    let mut common = Vec::new();
    let mut image = vec![0usize; domain.arity];
    'orbit: for (id, &rep) in g_orbits.representatives.iter().enumerate() {
        let t = domain.tuple_at(rep);
        for gen in a.generators() {
            for (slot, &p) in image.iter_mut().zip(t.iter()) {
                *slot = gen.apply(p);
            }
            let j = domain.position_of(&image).expect("distinct tuple image");
            if g_orbits.orbit_ids[j] != id as u32 {
                continue 'orbit;
            }
        }
        common.push(id as u32);
    }
    common
}

/// `r_k`: the number of common (A,G)-orbits on distinct k-tuples.
///
/// Requires `G ⊴ A`; then A permutes the G-orbits, so checking generator
/// images of one representative per orbit is exact.
pub fn common_orbit_count(a: &PermGroup, g: &PermGroup, k: usize, budget: u64) -> Result<u64> {
    if a.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: g.degree(),
        });
    }
    if !crate::group::is_normal(a, g)? {
        return Err(Error::NotNormal);
    }
    if k > a.degree() {
        return Ok(0);
    }
    let domain = TupleDomain::new(a.degree(), k, budget)?;
    let g_orbits = tuple_orbits_on(g, &domain);
    Ok(common_orbit_ids(a, &g_orbits, &domain).len() as u64)
}

/// Primitivity via minimal block systems: for each `β ≠ 0`, grow the
/// smallest A-congruence identifying `0` and `β`; `A` is primitive iff every
/// such congruence is the universal one.
pub fn is_primitive(a: &PermGroup) -> Result<bool> {
    if !is_transitive(a) {
        return Err(Error::Intransitive);
    }
    let n = a.degree();
    if n <= 2 {
        return Ok(true);
    }
    for beta in 1..n {
        let mut uf = UnionFind::new(n);
        let mut stack = vec![(0usize, beta)];
        uf.union(0, beta);
        while let Some((u, v)) = stack.pop() {
            for g in a.generators() {
                let (gu, gv) = (g.apply(u), g.apply(v));
                if uf.union(gu, gv) {
                    stack.push((gu, gv));
                }
            }
        }
        let root = uf.find(0);
        let block_size = (0..n).filter(|&p| uf.find(p) == root).count();
        if block_size != n {
            return Ok(false);
        }
    }
    Ok(true)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns true when the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}

/// The pointwise stabilizer `A_{a,b}` as an element list, in enumeration
/// order. Errors when `a == b`.
pub fn two_point_stabilizer(a: &PermGroup, p: usize, q: usize) -> Result<Vec<Permutation>> {
    if p == q {
        return Err(Error::SamePoint);
    }
    Ok(a.elements()
        .iter()
        .filter(|e| e.apply(p) == p && e.apply(q) == q)
        .cloned()
        .collect())
}

/// Number of orbits of an element set acting on the points.
pub fn orbit_count_of_set(elements: &[Permutation], degree: usize) -> usize {
    let mut ids = vec![false; degree];
    let mut count = 0usize;
    for start in 0..degree {
        if ids[start] {
            continue;
        }
        count += 1;
        let mut queue = vec![start];
        ids[start] = true;
        while let Some(pt) = queue.pop() {
            for e in elements {
                let img = e.apply(pt);
                if !ids[img] {
                    ids[img] = true;
                    queue.push(img);
                }
            }
        }
    }
    count
}

/// Orbit count of `A_{a,b}` on all points.
pub fn two_point_stabilizer_orbit_count(a: &PermGroup, p: usize, q: usize) -> Result<usize> {
    let stab = two_point_stabilizer(a, p, q)?;
    Ok(orbit_count_of_set(&stab, a.degree()))
}
