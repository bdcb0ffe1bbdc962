//! Constructors for the group families the statistics live on: symmetric,
//! alternating, cyclic, dihedral families, affine groups over constructed
//! finite fields, holomorphs of small regular groups, and ingestion of
//! external generator files.
//!
//! Affine point encoding: the field element / vector `(c₀..c_{d-1})` is the
//! point `Σ cᵢ·pⁱ`. This fixes every permutation bit-exactly.

use crate::field::{is_prime, prime_power, FiniteField};
use crate::group::{regular_rep, PermGroup, DEFAULT_CLOSURE_CAP};
use crate::orbits::is_transitive;
use crate::perm::{parse_cycles, Permutation};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Read;
use std::sync::Arc;

/// Default budget on candidate generator-image tuples in the automorphism
/// search.
pub const DEFAULT_AUT_BUDGET: u64 = 1_000_000;

/// A serialized description of a group: name, degree, generators in cycle
/// notation, optional metadata.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
    #[serde(skip)]
    pub ingested: bool,
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<Arc<PermGroup>> {
        let gens: Result<Vec<Permutation>> = self
            .gens
            .iter()
            .map(|s| parse_cycles(s, self.degree))
            .collect();
        Ok(Arc::new(PermGroup::closure(gens?, cap)?))
    }
}

/// A constructed catalog entry: the spec plus the built group.
#[derive(Clone)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub group: Arc<PermGroup>,
}

fn entry(name: String, group: PermGroup, meta: BTreeMap<String, String>) -> CatalogEntry {
    let spec = GroupSpec {
        name,
        degree: group.degree(),
        gens: group.generators().iter().map(|g| g.print_cycles()).collect(),
        meta,
        ingested: false,
    };
    CatalogEntry {
        spec,
        group: Arc::new(group),
    }
}

fn meta(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Standard families: `sym`, `alt`, `cyclic`, `dihedral`.
pub fn standard(family: &str, n: usize) -> Result<CatalogEntry> {
    let name = format!("{family}:{n}");
    let group = match family {
        "sym" => {
            if n < 2 {
                return Err(Error::Precondition("sym needs n >= 2".into()));
            }
            let mut gens = vec![transposition(n, 0, 1)];
            gens.push(full_cycle(n, 0, n));
            PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?
        }
        "alt" => {
            if n < 3 {
                return Err(Error::Precondition("alt needs n >= 3".into()));
            }
            let three = three_cycle(n);
            let long = if n % 2 == 1 {
                full_cycle(n, 0, n)
            } else {
                full_cycle(n, 1, n - 1)
            };
            PermGroup::closure(vec![three, long], DEFAULT_CLOSURE_CAP)?
        }
        "cyclic" => {
            if n < 2 {
                return Err(Error::Precondition("cyclic needs n >= 2".into()));
            }
            PermGroup::closure(vec![full_cycle(n, 0, n)], DEFAULT_CLOSURE_CAP)?
        }
        "dihedral" => {
            if n < 3 {
                return Err(Error::Precondition("dihedral needs n >= 3".into()));
            }
            let rotation = full_cycle(n, 0, n);
            let mut images: Vec<usize> = (0..n).collect();
            for i in 1..n {
                images[i] = n - i;
            }
            let reflection = Permutation::from_images(images)?;
            PermGroup::closure(vec![rotation, reflection], DEFAULT_CLOSURE_CAP)?
        }
        other => {
            return Err(Error::Precondition(format!("unknown family {other:?}")));
        }
    };
    Ok(entry(name, group, meta(&[("family", family.to_string())])))
}

fn transposition(degree: usize, a: usize, b: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images.swap(a, b);
    Permutation::from_images(images).expect("valid transposition")
}

/// Cycle on `start..start+len`, identity elsewhere.
fn full_cycle(degree: usize, start: usize, len: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    for i in 0..len {
        images[start + i] = start + (i + 1) % len;
    }
    Permutation::from_images(images).expect("valid cycle")
}

fn three_cycle(degree: usize) -> Permutation {
    let mut images: Vec<usize> = (0..degree).collect();
    images[0] = 1;
    images[1] = 2;
    images[2] = 0;
    Permutation::from_images(images).expect("valid 3-cycle")
}

fn field_for(q: u64) -> Result<FiniteField> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    FiniteField::new(p, e)
}

fn perm_of_field_map(f: &FiniteField, map: impl Fn(u64) -> u64) -> Result<Permutation> {
    let images: Vec<usize> = (0..f.order()).map(|v| map(v) as usize).collect();
    Permutation::from_images(images)
}

/// Generators of the one-dimensional affine maps `v ↦ a·v + b`:
/// basis translations `v ↦ v + γⁱ` for `i < e`, plus `v ↦ m·v`.
fn affine1_generators(f: &FiniteField, multiplier: u64) -> Result<Vec<Permutation>> {
    let gamma = f.primitive_element();
    let mut gens = Vec::new();
    for i in 0..f.extension_degree() {
        let basis = f.pow(gamma, i as u64);
        gens.push(perm_of_field_map(f, |v| f.add(v, basis))?);
    }
    gens.push(perm_of_field_map(f, |v| f.mul(multiplier, v))?);
    Ok(gens)
}

/// `AGL(1,q)`: all maps `v ↦ a·v + b` with `a ≠ 0`, order `q(q-1)`.
pub fn agl1(q: u64) -> Result<CatalogEntry> {
    if q > 64 {
        return Err(Error::FieldTooLarge(q));
    }
    let f = field_for(q)?;
    let gens = affine1_generators(&f, f.primitive_element())?;
    let group = PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?;
    debug_assert_eq!(group.order(), q * (q - 1));
    Ok(entry(
        format!("agl1:{q}"),
        group,
        meta(&[
            ("family", "agl1".into()),
            ("q", q.to_string()),
            ("p", f.characteristic().to_string()),
            ("e", f.extension_degree().to_string()),
        ]),
    ))
}

/// Index-2 subgroup of `AGL(1,q)` with square multipliers, order `q(q-1)/2`;
/// `q` must be odd.
pub fn agl1_half(q: u64) -> Result<CatalogEntry> {
    if q > 64 {
        return Err(Error::FieldTooLarge(q));
    }
    if q % 2 == 0 {
        return Err(Error::Precondition("agl1half needs odd q".into()));
    }
    let f = field_for(q)?;
    let gamma = f.primitive_element();
    let gens = affine1_generators(&f, f.mul(gamma, gamma))?;
    let group = PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?;
    debug_assert_eq!(group.order(), q * (q - 1) / 2);
    Ok(entry(
        format!("agl1half:{q}"),
        group,
        meta(&[
            ("family", "agl1half".into()),
            ("q", q.to_string()),
            ("p", f.characteristic().to_string()),
            ("e", f.extension_degree().to_string()),
        ]),
    ))
}

/// `AΓL(1,q)`: `AGL(1,q)` extended by the field automorphism `v ↦ v^p`.
pub fn agammal1(q: u64) -> Result<CatalogEntry> {
    if q > 64 {
        return Err(Error::FieldTooLarge(q));
    }
    let f = field_for(q)?;
    if f.extension_degree() == 1 {
        return Err(Error::Precondition(
            "agammal1 needs a proper extension field".into(),
        ));
    }
    let mut gens = affine1_generators(&f, f.primitive_element())?;
    let p = f.characteristic();
    gens.push(perm_of_field_map(&f, |v| f.pow(v, p))?);
    let group = PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?;
    debug_assert_eq!(group.order(), q * (q - 1) * f.extension_degree() as u64);
    Ok(entry(
        format!("agammal1:{q}"),
        group,
        meta(&[
            ("family", "agammal1".into()),
            ("q", q.to_string()),
            ("p", f.characteristic().to_string()),
            ("e", f.extension_degree().to_string()),
        ]),
    ))
}

/// Elementary abelian group `C_p^k` acting regularly by translations on
/// `p^k` points in mixed-radix encoding.
pub fn elementary_abelian(p: u64, k: u32) -> Result<CatalogEntry> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let degree = p
        .checked_pow(k)
        .filter(|&d| d <= 1 << 16)
        .ok_or(Error::FieldTooLarge(p.saturating_pow(k)))? as usize;
    let mut gens = Vec::new();
    for i in 0..k {
        let stride = p.pow(i) as usize;
        let images: Vec<usize> = (0..degree)
            .map(|v| {
                let digit = v / stride % p as usize;
                if digit + 1 == p as usize {
                    v - stride * digit // wrap the digit to 0
                } else {
                    v + stride
                }
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?;
    Ok(entry(
        format!("elemab:{p},{k}"),
        group,
        meta(&[
            ("family", "elemab".into()),
            ("p", p.to_string()),
            ("k", k.to_string()),
        ]),
    ))
}

/// The full affine group `AGL(d,p)`: translations together with `GL_d(p)`,
/// acting on vectors of `F_p^d` in mixed-radix encoding. Order is asserted
/// against `p^d · Π(p^d - p^i)`.
pub fn agl_dp(d: u32, p: u64) -> Result<CatalogEntry> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p
        .checked_pow(d)
        .filter(|&n| n <= 512)
        .ok_or(Error::FieldTooLarge(p.saturating_pow(d)))?;
    let dim = d as usize;
    let degree = n as usize;
    let decode = |v: usize| -> Vec<u64> {
        let mut out = vec![0u64; dim];
        let mut v = v as u64;
        for slot in out.iter_mut() {
            *slot = v % p;
            v /= p;
        }
        out
    };
    let encode = |coords: &[u64]| -> usize {
        coords.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize
    };

    let mut gens = Vec::new();
    // translations by each basis vector
    for i in 0..dim {
        let images: Vec<usize> = (0..degree)
            .map(|v| {
                let mut c = decode(v);
                c[i] = (c[i] + 1) % p;
                encode(&c)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    // diag(γ, 1, .., 1) when p > 2
    let f = FiniteField::new(p, 1)?;
    let gamma = f.primitive_element();
    if gamma != 1 {
        let images: Vec<usize> = (0..degree)
            .map(|v| {
                let mut c = decode(v);
                c[0] = c[0] * gamma % p;
                encode(&c)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    if dim >= 2 {
        // coordinate cycle and the transvection (c0, c1) -> (c0 + c1, c1)
        let images: Vec<usize> = (0..degree)
            .map(|v| {
                let c = decode(v);
                let mut rotated = c.clone();
                rotated.rotate_left(1);
                encode(&rotated)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
        let images: Vec<usize> = (0..degree)
            .map(|v| {
                let mut c = decode(v);
                c[0] = (c[0] + c[1]) % p;
                encode(&c)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?;
    let mut expected: u64 = n;
    for i in 0..d {
        expected *= n - p.pow(i);
    }
    assert_eq!(group.order(), expected, "affine group order check");
    Ok(entry(
        format!("agl:{d},{p}"),
        group,
        meta(&[
            ("family", "agl".into()),
            ("d", d.to_string()),
            ("p", p.to_string()),
        ]),
    ))
}

/// All automorphisms of a regular group, as permutations of its points.
///
/// Candidate images for each generator are the elements of equal order;
/// each surviving tuple is validated as a bijective homomorphism against
/// the full multiplication table.
pub fn automorphisms(n: &PermGroup, aut_budget: u64) -> Result<Vec<Permutation>> {
    if n.order() != n.degree() as u64 || !is_transitive(n) {
        return Err(Error::NotRegular);
    }
    let size = n.elements().len();

    // identify point i with the unique element sending the base point 0 to i
    let mut elem_of_point = vec![usize::MAX; size];
    for (idx, e) in n.elements().iter().enumerate() {
        elem_of_point[e.apply(0)] = idx;
    }

    // greedily drop redundant generators to shrink the candidate space
    let mut kept: Vec<usize> = Vec::new();
    {
        let mut closure: Option<PermGroup> = None;
        for (gi, g) in n.generators().iter().enumerate() {
            let known = match &closure {
                Some(c) => c.contains(g),
                None => g.is_identity(),
            };
            if !known {
                kept.push(gi);
                let gens: Vec<Permutation> =
                    kept.iter().map(|&i| n.generators()[i].clone()).collect();
                closure = Some(PermGroup::closure(gens, size)?);
            }
        }
    }

    let orders: Vec<u64> = n.elements().iter().map(|e| e.order()).collect();
    let candidate_sets: Vec<Vec<usize>> = kept
        .iter()
        .map(|&gi| {
            let target = n.generators()[gi].order();
            (0..size).filter(|&i| orders[i] == target).collect()
        })
        .collect();
    let total: u128 = candidate_sets.iter().map(|s| s.len() as u128).product();
    if total > aut_budget as u128 {
        return Err(Error::AutBudgetExceeded {
            candidates: total,
            budget: aut_budget,
        });
    }

    let mut results = Vec::new();
    let mut choice = vec![0usize; kept.len()];
    'outer: loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(candidate_sets.iter())
            .map(|(&c, set)| set[c])
            .collect();
        if let Some(table) = build_automorphism(n, &kept, &images) {
            // point permutation induced by the element map
            let mut point_images = vec![0usize; size];
            for pt in 0..size {
                let idx = elem_of_point[pt];
                point_images[pt] = n.elements()[table[idx]].apply(0);
            }
            results.push(Permutation::from_images(point_images)?);
        }
        // odometer increment
        for slot in 0..choice.len() {
            choice[slot] += 1;
            if choice[slot] < candidate_sets[slot].len() {
                continue 'outer;
            }
            choice[slot] = 0;
        }
        break;
    }
    Ok(results)
}

/// Tries to extend generator images to a full automorphism; `None` when the
/// extension is not a well-defined bijective homomorphism.
fn build_automorphism(n: &PermGroup, kept: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let size = n.elements().len();
    let mut gen_image = vec![usize::MAX; n.generators().len()];
    for (&gi, &img) in kept.iter().zip(images.iter()) {
        gen_image[gi] = img;
    }
    // fill the element-image table by a BFS over words in the kept
    // generators; identity maps to identity
    let mut table = vec![usize::MAX; size];
    table[0] = 0;
    let mut order: Vec<usize> = vec![0];
    let mut seen = vec![false; size];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let cur = order[head];
        head += 1;
        for &gi in kept {
            let next = n.elements()[cur].compose(&n.generators()[gi]);
            let idx = n.index_of(&next).expect("closed");
            if !seen[idx] {
                seen[idx] = true;
                let img_cur = table[cur];
                let img = n.elements()[img_cur].compose(&n.elements()[gen_image[gi]]);
                table[idx] = n.index_of(&img).expect("closed");
                order.push(idx);
            }
        }
    }
    debug_assert!(table.iter().all(|&t| t != usize::MAX));

    // bijectivity
    let mut hit = vec![false; size];
    for &t in &table {
        if hit[t] {
            return None;
        }
        hit[t] = true;
    }
    // edge validation rejects non-homomorphic tables cheaply before the
    // quadratic multiplication-table pass
    for (i, e) in n.elements().iter().enumerate() {
        for &gi in kept {
            let lhs = e.compose(&n.generators()[gi]);
            let lhs_idx = n.index_of(&lhs).expect("closed");
            let rhs = n.elements()[table[i]].compose(&n.elements()[gen_image[gi]]);
            if n.index_of(&rhs) != Some(table[lhs_idx]) {
                return None;
            }
        }
    }
    // full multiplication-table validation
    for (i, a) in n.elements().iter().enumerate() {
        for (j, b) in n.elements().iter().enumerate() {
            let prod = a.compose(b);
            let prod_idx = n.index_of(&prod).expect("closed");
            let img = n.elements()[table[i]].compose(&n.elements()[table[j]]);
            if n.index_of(&img) != Some(table[prod_idx]) {
                return None;
            }
        }
    }
    Some(table)
}

/// The holomorph of a regular group: the group generated by `N` together
/// with all of its automorphisms acting as point permutations.
pub fn holomorph(n: &Arc<PermGroup>, aut_budget: u64) -> Result<CatalogEntry> {
    if n.order() != n.degree() as u64 || !is_transitive(n) {
        return Err(Error::NotRegular);
    }
    if n.order() > 60 {
        return Err(Error::Precondition(
            "holomorph construction is limited to |N| <= 60".into(),
        ));
    }
    let auts = automorphisms(n, aut_budget)?;
    let mut gens: Vec<Permutation> = n.generators().to_vec();
    gens.extend(auts.iter().cloned());
    let group = PermGroup::closure(gens, DEFAULT_CLOSURE_CAP)?;
    debug_assert_eq!(group.order(), n.order() * auts.len() as u64);
    Ok(entry(
        format!("hol(deg {})", n.degree()),
        group,
        meta(&[("family", "hol".into())]),
    ))
}

/// Parses a group file: a JSON document holding an array of records with
/// fields `name`, `degree`, `gens`, and optional `meta`.
pub fn ingest<R: Read>(reader: R) -> Result<Vec<GroupSpec>> {
    let mut specs: Vec<GroupSpec> = serde_json::from_reader(reader)?;
    for (i, spec) in specs.iter_mut().enumerate() {
        spec.ingested = true;
        if spec.degree < 2 {
            return Err(Error::Ingest {
                record: Some(i),
                msg: format!("group {:?}: degree must be at least 2", spec.name),
            });
        }
        if spec.gens.is_empty() {
            return Err(Error::Ingest {
                record: Some(i),
                msg: format!("group {:?}: no generators", spec.name),
            });
        }
        for gen in &spec.gens {
            if let Err(e) = parse_cycles(gen, spec.degree) {
                return Err(Error::Ingest {
                    record: Some(i),
                    msg: format!("group {:?}, generator {gen:?}: {e}", spec.name),
                });
            }
        }
    }
    Ok(specs)
}

pub fn ingest_path(path: &std::path::Path) -> Result<Vec<GroupSpec>> {
    let file = std::fs::File::open(path)?;
    ingest(std::io::BufReader::new(file))
}

/// Resolves a selector like `sym:5`, `agl1:9`, `agl:3,2`, `elemab:2,3`,
/// `hol:sym:3`, or `reg:alt:5` into a constructed entry.
pub fn resolve(selector: &str) -> Result<CatalogEntry> {
    let (family, rest) = selector
        .split_once(':')
        .ok_or_else(|| Error::Precondition(format!("bad selector {selector:?}")))?;
    let parse_u64 = |s: &str| -> Result<u64> {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Error::Precondition(format!("bad number {s:?} in {selector:?}")))
    };
    match family {
        "sym" | "alt" | "cyclic" | "dihedral" => standard(family, parse_u64(rest)? as usize),
        "agl1" => agl1(parse_u64(rest)?),
        "agl1half" => agl1_half(parse_u64(rest)?),
        "agammal1" => agammal1(parse_u64(rest)?),
        "elemab" => {
            let (p, k) = rest
                .split_once(',')
                .ok_or_else(|| Error::Precondition(format!("elemab needs p,k in {selector:?}")))?;
            elementary_abelian(parse_u64(p)?, parse_u64(k)? as u32)
        }
        "agl" => {
            let (d, p) = rest
                .split_once(',')
                .ok_or_else(|| Error::Precondition(format!("agl needs d,p in {selector:?}")))?;
            agl_dp(parse_u64(d)? as u32, parse_u64(p)?)
        }
        "reg" => {
            let inner = resolve(rest)?;
            let group = regular_rep(&inner.group)?;
            Ok(entry(
                format!("reg:{}", inner.spec.name),
                group,
                meta(&[("family", "reg".into()), ("inner", inner.spec.name.clone())]),
            ))
        }
        "hol" => {
            let inner = resolve(rest)?;
            let base = if inner.group.order() == inner.group.degree() as u64
                && is_transitive(&inner.group)
            {
                inner.group
            } else {
                Arc::new(regular_rep(&inner.group)?)
            };
            let mut e = holomorph(&base, DEFAULT_AUT_BUDGET)?;
            e.spec.name = format!("hol:{}", inner.spec.name);
            e.spec
                .meta
                .insert("inner".into(), inner.spec.name.clone());
            Ok(e)
        }
        other => Err(Error::Precondition(format!("unknown family {other:?}"))),
    }
}

/// The default scan catalog: every family instance with degree at most
/// `max_degree`. Groups whose closure would exceed `order_cap` are returned
/// in the skip list with the reason.
pub fn default_catalog(
    max_degree: usize,
    order_cap: usize,
) -> (Vec<CatalogEntry>, Vec<(String, String)>) {
    let mut selectors: Vec<String> = Vec::new();
    for n in 2..=10usize {
        selectors.push(format!("sym:{n}"));
    }
    for n in 3..=10usize {
        selectors.push(format!("alt:{n}"));
    }
    for n in 2..=10usize {
        selectors.push(format!("cyclic:{n}"));
    }
    for n in 3..=10usize {
        selectors.push(format!("dihedral:{n}"));
    }
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16] {
        selectors.push(format!("agl1:{q}"));
    }
    for q in [5u64, 7, 9, 11, 13] {
        selectors.push(format!("agl1half:{q}"));
    }
    for q in [4u64, 8, 9, 16] {
        selectors.push(format!("agammal1:{q}"));
    }
    for (d, p) in [(2u32, 2u64), (3, 2), (2, 3)] {
        selectors.push(format!("agl:{d},{p}"));
    }
    for (p, k) in [(2u64, 2u32), (2, 3), (3, 2)] {
        selectors.push(format!("elemab:{p},{k}"));
    }
    for inner in ["sym:3", "dihedral:4", "cyclic:5", "elemab:2,3", "alt:4"] {
        selectors.push(format!("hol:{inner}"));
    }
    selectors.push("reg:sym:3".into());
    selectors.push("reg:dihedral:5".into());

    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for sel in selectors {
        if let Some(order) = predicted_order(&sel) {
            if order > order_cap as u64 {
                skipped.push((sel, format!("order {order} above cap {order_cap}")));
                continue;
            }
        }
        match resolve(&sel) {
            Ok(e) => {
                if e.group.order() as usize > order_cap {
                    skipped.push((
                        sel,
                        format!("order {} above cap {order_cap}", e.group.order()),
                    ));
                } else if e.spec.degree <= max_degree {
                    entries.push(e);
                }
            }
            Err(err) => skipped.push((sel, err.to_string())),
        }
    }
    (entries, skipped)
}

/// Known order, for the families where it is predictable, so oversized
/// instances are skipped without being enumerated.
fn predicted_order(selector: &str) -> Option<u64> {
    let (family, rest) = selector.split_once(':')?;
    let n: u64 = rest.parse().ok()?;
    match family {
        "sym" => Some((1..=n).product()),
        "alt" => Some((1..=n).product::<u64>() / 2),
        "cyclic" => Some(n),
        "dihedral" => Some(2 * n),
        _ => None,
    }
}

/// The regular-group inventory used by the automorphism-driven checks:
/// every entry acts regularly and has order at most 60.
pub fn default_regular_inventory() -> Vec<CatalogEntry> {
    let selectors = [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:5",
        "cyclic:6",
        "cyclic:7",
        "cyclic:9",
        "elemab:2,2",
        "elemab:2,3",
        "elemab:3,2",
        "reg:sym:3",
        "reg:dihedral:4",
        "reg:alt:4",
        "reg:dihedral:5",
        "reg:sym:4",
        "reg:alt:5",
    ];
    selectors
        .iter()
        .map(|s| resolve(s).expect("inventory selectors are valid"))
        .collect()
}

/// Names of the families `default_catalog` draws from.
pub fn family_names() -> Vec<&'static str> {
    vec![
        "sym", "alt", "cyclic", "dihedral", "agl1", "agl1half", "agammal1", "agl", "elemab",
        "hol", "reg",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::{minimal_degree, tuple_orbits, DEFAULT_TUPLE_BUDGET};
    use crate::spectrum::spectrum;
    use crate::rational::Rational;

    #[test]
    fn standard_orders() {
        assert_eq!(standard("sym", 4).unwrap().group.order(), 24);
        assert_eq!(standard("alt", 4).unwrap().group.order(), 12);
        assert_eq!(standard("dihedral", 5).unwrap().group.order(), 10);
        assert_eq!(standard("cyclic", 6).unwrap().group.order(), 6);
        assert!(standard("sym", 1).is_err());
    }

    #[test]
    fn alt_parity_handles_even_degree() {
        for n in 3..=8 {
            let a = standard("alt", n).unwrap().group;
            let expected: u64 = (1..=n as u64).product::<u64>() / 2;
            assert_eq!(a.order(), expected, "alt:{n}");
        }
    }

    #[test]
    fn agl1_profiles() {
        let e = agl1(5).unwrap();
        assert_eq!(e.group.order(), 20);
        assert_eq!(e.group.degree(), 5);
        assert_eq!(minimal_degree(&e.group).unwrap(), 4);

        let e4 = agl1(4).unwrap();
        assert_eq!(e4.group.order(), 12);

        let e7 = agl1(7).unwrap();
        let spec = spectrum(&Permutation::identity(7), &e7.group);
        assert_eq!(spec.s0(), Rational::new(1, 7));
    }

    #[test]
    fn agl1_is_sharply_two_transitive() {
        let e = agl1(8).unwrap();
        let (_, orbits) = tuple_orbits(&e.group, 2, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(orbits.orbit_count, 1);
        let stab = crate::orbits::two_point_stabilizer(&e.group, 0, 1).unwrap();
        assert_eq!(stab.len(), 1);
    }

    #[test]
    fn agl1_half_profiles() {
        for (q, num) in [(5u64, 2i64), (7, 2), (9, 2)] {
            let e = agl1_half(q).unwrap();
            assert_eq!(e.group.order(), q * (q - 1) / 2);
            let spec = spectrum(&Permutation::identity(q as usize), &e.group);
            assert_eq!(spec.s0(), Rational::new(num, q as i64));
        }
        assert!(agl1_half(8).is_err());
    }

    #[test]
    fn agl_dp_orders() {
        assert_eq!(agl_dp(2, 2).unwrap().group.order(), 24);
        assert_eq!(agl_dp(3, 2).unwrap().group.order(), 1344);
        let e = agl_dp(2, 3).unwrap();
        assert_eq!(e.group.order(), 432);
        assert!(minimal_degree(&e.group).unwrap() >= 6);
    }

    #[test]
    fn automorphism_counts() {
        let c5 = standard("cyclic", 5).unwrap().group;
        assert_eq!(automorphisms(&c5, DEFAULT_AUT_BUDGET).unwrap().len(), 4);
        let v4 = elementary_abelian(2, 2).unwrap().group;
        assert_eq!(automorphisms(&v4, DEFAULT_AUT_BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn holomorph_profiles() {
        let c5 = standard("cyclic", 5).unwrap().group;
        let h = holomorph(&c5, DEFAULT_AUT_BUDGET).unwrap();
        assert_eq!(h.group.order(), 20);

        let c23 = elementary_abelian(2, 3).unwrap().group;
        let h = holomorph(&c23, DEFAULT_AUT_BUDGET).unwrap();
        assert_eq!(h.group.order(), 1344);

        let s3reg = Arc::new(regular_rep(&standard("sym", 3).unwrap().group).unwrap());
        let h = holomorph(&s3reg, DEFAULT_AUT_BUDGET).unwrap();
        assert_eq!(h.group.order(), 36);
    }

    #[test]
    fn holomorph_matches_agl_profile() {
        // Hol(C_p) has the same order, minimal degree, and derangement count
        // as the affine construction
        let c5 = standard("cyclic", 5).unwrap().group;
        let h = holomorph(&c5, DEFAULT_AUT_BUDGET).unwrap().group;
        let a = agl1(5).unwrap().group;
        assert_eq!(h.order(), a.order());
        assert_eq!(
            minimal_degree(&h).unwrap(),
            minimal_degree(&a).unwrap()
        );
        let hs = spectrum(&Permutation::identity(5), &h);
        let as_ = spectrum(&Permutation::identity(5), &a);
        assert_eq!(hs.counts, as_.counts);
    }

    #[test]
    fn ingest_examples() {
        let doc = r#"[{"name":"S3","degree":3,"gens":["(1 2)","(1 2 3)"]}]"#;
        let specs = ingest(doc.as_bytes()).unwrap();
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].build(100).unwrap().order(), 6);

        let bad = r#"[{"name":"X","degree":3,"gens":["(1 5)"]}]"#;
        match ingest(bad.as_bytes()) {
            Err(Error::Ingest { record: Some(0), msg }) => {
                assert!(msg.contains("exceeds degree 3"), "{msg}");
            }
            other => panic!("expected ingest error, got {other:?}"),
        }

        let two = r#"[
            {"name":"S3","degree":3,"gens":["(1 2)","(1 2 3)"]},
            {"name":"C4","degree":4,"gens":["(1 2 3 4)"],"meta":{"kind":"cyclic"}}
        ]"#;
        let specs = ingest(two.as_bytes()).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[1].name, "C4");
        assert_eq!(specs[1].meta["kind"], "cyclic");
    }

    #[test]
    fn resolve_selectors() {
        assert_eq!(resolve("sym:4").unwrap().group.order(), 24);
        assert_eq!(resolve("agl:2,2").unwrap().group.order(), 24);
        assert_eq!(resolve("hol:sym:3").unwrap().group.order(), 36);
        assert_eq!(resolve("reg:sym:3").unwrap().group.degree(), 6);
        assert!(resolve("nope:3").is_err());
    }

    #[test]
    fn default_catalog_is_buildable() {
        let (entries, skipped) = default_catalog(10, 100_000);
        assert!(entries.len() >= 40, "got {}", entries.len());
        // sym:9, sym:10, alt:9, alt:10 exceed the order cap
        assert_eq!(skipped.len(), 4, "{skipped:?}");
        for e in &entries {
            assert!(e.spec.degree <= 10);
            assert!(e.group.order() <= 100_000);
        }
    }
}
