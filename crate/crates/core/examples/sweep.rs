//! A small parameter sweep rendered as CSV, rows computed in parallel.
//!
//! cargo run --release --example sweep > sweep.csv

use twisted_gabidulin::cli::{cmd_sweep, SweepConfig};

fn main() -> twisted_gabidulin::Result<()> {
    let cfg = SweepConfig::from_json(
        r#"{
            "grid": [
                {"p": 2, "n": [4, 5, 6], "m": [3, 4, 5], "k": [1, 2, 3]},
                {"p": 3, "n": [4], "m": [3, 4], "k": [1, 2], "h": [0, 1, 2, 3],
                 "eta": ["0", "nonsquare-min"]}
            ],
            "tasks": ["mrd", "nuclei"]
        }"#,
    )?;
    print!("{}", cmd_sweep(&cfg)?);
    Ok(())
}
