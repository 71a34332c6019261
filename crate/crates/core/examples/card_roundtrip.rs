// Writes a benchmark directory, reads it back and shows that the ranking
// view carries no labels.

use theory_shift::benchmark::{generate_benchmark, GeneratorConfig};
use theory_shift::card::io::{read_benchmark, read_manifest, write_benchmark};

pub struct Roundtrip {
    pub n_cards: usize,
    pub identical: bool,
    pub manifest_seed: Option<u64>,
}

pub fn run_example() -> anyhow::Result<Roundtrip> {
    let cfg = GeneratorConfig {
        variants: 1,
        ..GeneratorConfig::default()
    };
    let cards = generate_benchmark(&cfg);
    let dir = tempfile::tempdir()?;
    write_benchmark(dir.path(), cfg.master_seed, &cards)?;
    let back = read_benchmark(dir.path())?;
    Ok(Roundtrip {
        n_cards: back.len(),
        identical: back == cards,
        manifest_seed: read_manifest(dir.path())?.map(|m| m.master_seed),
    })
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let r = run_example()?;
    println!("{} cards, identical after roundtrip: {}, manifest seed {:?}", r.n_cards, r.identical, r.manifest_seed);
    Ok(())
}
