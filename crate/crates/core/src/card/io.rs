//! Canonical card documents and benchmark directories.
//!
//! A card is one pretty-printed JSON document with fields in declaration
//! order and a trailing newline. A benchmark directory holds one
//! `<card_id>.json` per card plus `manifest.json`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{TransitionCard, SCHEMA_VERSION};
use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub card_id: String,
    pub family_id: String,
    pub variant: usize,
    pub seed: u64,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkManifest {
    pub schema_version: u32,
    pub master_seed: u64,
    pub cards: Vec<ManifestEntry>,
}

impl BenchmarkManifest {
    pub fn for_cards(master_seed: u64, cards: &[TransitionCard]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            master_seed,
            cards: cards
                .iter()
                .map(|c| ManifestEntry {
                    card_id: c.card_id.clone(),
                    family_id: c.family_id.clone(),
                    variant: c.variant,
                    seed: c.seed,
                    file: format!("{}.json", c.card_id),
                })
                .collect(),
        }
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Parses a card document. Malformed input is a schema error, distinct from
/// the semantic violations reported by validation.
pub fn parse_card(text: &str) -> Result<TransitionCard> {
    let card: TransitionCard =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if card.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            card.schema_version
        )));
    }
    Ok(card)
}

pub fn read_card(path: &Path) -> Result<TransitionCard> {
    let text = fs::read_to_string(path)?;
    parse_card(&text).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_card(path: &Path, card: &TransitionCard) -> Result<()> {
    fs::write(path, to_canonical_json(card)?)?;
    Ok(())
}

pub fn write_benchmark(dir: &Path, master_seed: u64, cards: &[TransitionCard]) -> Result<BenchmarkManifest> {
    fs::create_dir_all(dir)?;
    let manifest = BenchmarkManifest::for_cards(master_seed, cards);
    for (card, entry) in cards.iter().zip(&manifest.cards) {
        write_card(&dir.join(&entry.file), card)?;
    }
    fs::write(dir.join(MANIFEST_FILE), to_canonical_json(&manifest)?)?;
    Ok(manifest)
}

/// The directory's manifest, if it has one.
pub fn read_manifest(dir: &Path) -> Result<Option<BenchmarkManifest>> {
    let path = dir.join(MANIFEST_FILE);
    if !path.exists() {
        return Ok(None);
    }
    serde_json::from_str(&fs::read_to_string(&path)?)
        .map(Some)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

/// Loads every card of a benchmark directory in manifest order. Without a
/// manifest, all `*.json` files are read in file-name order.
pub fn read_benchmark(dir: &Path) -> Result<Vec<TransitionCard>> {
    if !dir.is_dir() {
        return Err(Error::Config(format!(
            "no cards found: {} is not a directory",
            dir.display()
        )));
    }
    let cards = if let Some(manifest) = read_manifest(dir)? {
        manifest
            .cards
            .iter()
            .map(|e| read_card(&dir.join(&e.file)))
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut files: Vec<_> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        files.iter().map(|p| read_card(p)).collect::<Result<Vec<_>>>()?
    };
    if cards.is_empty() {
        return Err(Error::Config(format!("no cards found in {}", dir.display())));
    }
    Ok(cards)
}
