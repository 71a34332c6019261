// Drives the command-line interface in a scratch directory: generate a
// one-variant benchmark, then rank it.

use std::path::PathBuf;

use theory_shift::cli;

pub struct PipelineOutput {
    pub exit_codes: Vec<i32>,
    pub rank_tsv: String,
}

pub fn run_example() -> anyhow::Result<PipelineOutput> {
    let dir = tempfile::tempdir()?;
    let bench: PathBuf = dir.path().join("bench");
    let out: PathBuf = dir.path().join("out");
    let common = |cmd: &str| -> Vec<String> {
        vec![
            "theory-shift".into(),
            cmd.into(),
            "--benchmark".into(),
            bench.display().to_string(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let mut gen = common("generate");
    gen.extend(["--variants".into(), "1".into()]);
    let exit_codes = vec![cli::run(gen), cli::run(common("rank"))];
    let rank_tsv = std::fs::read_to_string(out.join("rank.tsv")).unwrap_or_default();
    Ok(PipelineOutput { exit_codes, rank_tsv })
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    let p = run_example()?;
    println!("exit codes {:?}", p.exit_codes);
    for line in p.rank_tsv.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
