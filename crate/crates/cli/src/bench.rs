//! Sweep sizes and timings for scaling plots.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use frechet1d::oracle::{random_instance, Family};
use frechet1d::reach::BaselineBackend;
use frechet1d::translation::decide_under_translation_with;

#[derive(Args)]
pub struct BenchArgs {
    /// Series lengths (n = m).
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
    pub sizes: Vec<usize>,
    /// Instance seed; `FRECHET1D_SEED` overrides it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const HEADER: &str = "n,representatives,events,cell_updates,elapsed_ms,incremental_cell_ops,full_cell_ops,factor";

/// One row per size: a translation decision on a seeded random instance.
/// `full_cell_ops` is what recomputing the lane grid at every representative
/// would cost; `factor` is its ratio to what the sweep actually did.
pub fn rows(sizes: &[usize], seed: u64) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for &n in sizes {
        if n < 2 {
            return Err(format!("bench sizes must be at least 2, got {n}"));
        }
        let inst = random_instance(seed.wrapping_add(n as u64), n..=n, 20, Family::Uniform);
        let start = Instant::now();
        let (_, res) = decide_under_translation_with(&inst.p, &inst.q, &inst.delta, &mut BaselineBackend::new())
            .map_err(|e| e.to_string())?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let st = &res.stats;
        let full = st.representatives as u64 * st.grid_cells;
        let factor = full as f64 / st.cell_ops.max(1) as f64;
        out.push(format!(
            "{n},{},{},{},{ms:.3},{},{full},{factor:.2}",
            st.representatives, st.events, st.cell_updates, st.cell_ops
        ));
    }
    Ok(out)
}

pub fn run(args: &BenchArgs) -> Result<u8, String> {
    let seed = match std::env::var("FRECHET1D_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| format!("FRECHET1D_SEED: not an integer: {s:?}"))?,
        Err(_) => args.seed,
    };
    let mut text = format!("{HEADER}\n");
    for row in rows(&args.sizes, seed)? {
        text.push_str(&row);
        text.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())?,
    }
    Ok(0)
}
