//! Loading monoids, homomorphisms and families from JSON files.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use serde::Deserialize;

use atomon::freeprod::Family;
use atomon::monoid::{FiniteMonoid, HomFile, MonoidFile, MonoidHom};

/// A family member: either a path to a monoid file (relative to the family
/// file) or an inline monoid object.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MemberRef {
    Path(String),
    Inline(MonoidFile),
}

/// On-disk form of a family: `{"members": [...]}`.
#[derive(Debug, Deserialize)]
struct FamilyFile {
    members: Vec<MemberRef>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}

pub fn load_monoid(path: &Path) -> Result<FiniteMonoid> {
    let file: MonoidFile = read_json(path)?;
    file.into_monoid()
        .with_context(|| format!("{} is not a valid monoid", path.display()))
}

pub fn load_family(path: &Path) -> Result<Family> {
    let file: FamilyFile = read_json(path)?;
    let base = base_dir(path);
    let members = file
        .members
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            match m {
                MemberRef::Path(p) => load_monoid(&base.join(p)),
                MemberRef::Inline(f) => Ok(f.into_monoid()?),
            }
            .with_context(|| format!("member {} of {}", i + 1, path.display()))
            .map(Arc::new)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(members).with_context(|| format!("invalid family in {}", path.display()))
}

pub fn load_hom(path: &Path) -> Result<MonoidHom> {
    let file: HomFile = read_json(path)?;
    let (source, target) = file.resolve(base_dir(path));
    let h = MonoidHom::new(
        Arc::new(load_monoid(&source)?),
        Arc::new(load_monoid(&target)?),
        file.map,
    )
    .with_context(|| format!("{} is not a homomorphism", path.display()))?;
    Ok(h)
}
