//! Selector and source resolution for the CLI.

use derange_core::catalog::{self, CatalogEntry};
use derange_core::group::cyclic_quotient_generator;
use derange_core::perm::Permutation;
use derange_core::{Error, PermGroup, Result};
use std::sync::Arc;

/// Expands `--only` values: comma-separated family names, with `affine`
/// standing for the affine families.
pub fn expand_only(value: &str) -> Vec<String> {
    let mut out = Vec::new();
    for token in value.split(',') {
        let token = token.trim();
        if token == "affine" {
            out.extend(["agl1", "agl1half", "agl"].map(String::from));
        } else if !token.is_empty() {
            out.push(token.to_string());
        }
    }
    out
}

fn family_of(entry: &CatalogEntry) -> &str {
    entry
        .spec
        .meta
        .get("family")
        .map(String::as_str)
        .unwrap_or("file")
}

/// Gathers scan sources: the default catalog and/or group files, filtered
/// by family and the degree/order caps.
pub fn gather(
    sources: &[String],
    only: &Option<Vec<String>>,
    budgets: &crate::BudgetArgs,
) -> Result<(Vec<CatalogEntry>, Vec<(String, String)>)> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for source in sources {
        if source == "catalog" {
            let (mut found, skips) = catalog::default_catalog(budgets.max_degree, budgets.max_order);
            skipped.extend(skips);
            entries.append(&mut found);
        } else if let Some(path) = source.strip_prefix("file:") {
            for spec in catalog::ingest_path(std::path::Path::new(path))? {
                if spec.degree > budgets.max_degree {
                    skipped.push((spec.name.clone(), "degree above cap".into()));
                    continue;
                }
                match spec.build(budgets.max_order) {
                    Ok(group) => entries.push(CatalogEntry { spec, group }),
                    Err(e) => skipped.push((spec.name.clone(), e.to_string())),
                }
            }
        } else {
            // a bare selector is a single-group source
            let entry = catalog::resolve(source)?;
            if entry.spec.degree > budgets.max_degree {
                skipped.push((entry.spec.name.clone(), "degree above cap".into()));
            } else {
                entries.push(entry);
            }
        }
    }
    if let Some(families) = only {
        entries.retain(|e| families.iter().any(|f| f == family_of(e)));
    }
    Ok((entries, skipped))
}

/// Resolves `selector` or `file:<path>#<name>` into a built group.
pub fn resolve_group(selector: &str) -> Result<(Arc<PermGroup>, String)> {
    if let Some(rest) = selector.strip_prefix("file:") {
        let (path, name) = rest.split_once('#').ok_or_else(|| {
            Error::Precondition(format!(
                "file selector needs `file:<path>#<name>`, got {selector:?}"
            ))
        })?;
        let specs = catalog::ingest_path(std::path::Path::new(path))?;
        let spec = specs
            .into_iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Precondition(format!("no group named {name:?} in {path}")))?;
        let group = spec.build(derange_core::group::DEFAULT_CLOSURE_CAP)?;
        Ok((group, spec.name))
    } else {
        let entry = catalog::resolve(selector)?;
        Ok((entry.group, entry.spec.name))
    }
}

/// Resolves the full triple for `analyze`/`classify`: the ambient group,
/// the normal subgroup (defaulting to the group itself), and the canonical
/// generating-coset representative.
pub fn resolve_triple(
    group_sel: &str,
    normal_sel: Option<&str>,
) -> Result<(Arc<PermGroup>, Arc<PermGroup>, Permutation, (String, String))> {
    let (a, a_name) = resolve_group(group_sel)?;
    let (g, g_name) = match normal_sel {
        Some(sel) => resolve_group(sel)?,
        None => (Arc::clone(&a), a_name.clone()),
    };
    let coset = cyclic_quotient_generator(&a, &g)?.ok_or_else(|| {
        Error::Precondition(format!(
            "quotient of {a_name} by {g_name} is not cyclic"
        ))
    })?;
    Ok((a, g, coset.representative, (a_name, g_name)))
}
