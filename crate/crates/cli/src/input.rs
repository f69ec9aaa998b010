//! Reading quiver and morphism files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use topquiver::{FiniteQuiver, QuiverData, QuiverMorphism};

/// Input that cannot be read or does not match its schema.
#[derive(Debug)]
pub struct Malformed(pub String);

impl From<topquiver::Error> for Malformed {
    fn from(e: topquiver::Error) -> Self {
        Malformed(e.to_string())
    }
}

/// A quiver given by path (relative to the morphism file) or inline.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum QuiverSource {
    Path(PathBuf),
    Inline(QuiverData),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    dom: QuiverSource,
    cod: QuiverSource,
    vmap: BTreeMap<String, String>,
    emap: BTreeMap<String, String>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Malformed> {
    let text =
        fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

/// The raw quiver document, before structural validation.
pub fn quiver_data(path: &Path) -> Result<QuiverData, Malformed> {
    read_json(path)
}

pub fn quiver(path: &Path) -> Result<Arc<FiniteQuiver>, Malformed> {
    let data = quiver_data(path)?;
    FiniteQuiver::new(data)
        .map(Arc::new)
        .map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn resolve(source: QuiverSource, base: &Path) -> Result<Arc<FiniteQuiver>, Malformed> {
    match source {
        QuiverSource::Path(p) => quiver(&base.join(p)),
        QuiverSource::Inline(data) => FiniteQuiver::new(data)
            .map(Arc::new)
            .map_err(|e| Malformed(e.to_string())),
    }
}

pub fn morphism(path: &Path) -> Result<QuiverMorphism, Malformed> {
    let file: MorphismFile = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let dom = resolve(file.dom, base)?;
    let cod = resolve(file.cod, base)?;
    QuiverMorphism::from_maps(dom, cod, &file.vmap, &file.emap)
        .map_err(|e| Malformed(format!("{}: {e}", path.display())))
}
