//! Probes parameter sets where no closed form is known ((m,k) = (4,2) or
//! m = k+1 with a twist) and prints what brute force finds.
//!
//! cargo run --release --example open_cases_probe

use twisted_gabidulin::cli::{nuclei_for, RunConfig};

fn main() -> twisted_gabidulin::Result<()> {
    for (m, k) in [(4, 2), (3, 2), (2, 1)] {
        for h in 0..4 {
            let cfg = RunConfig::from_json(&format!(
                r#"{{"field":{{"p":3,"n":4}},"params":{{"m":{m},"k":{k},"h":{h},"eta":"nonsquare-min"}}}}"#
            ))?;
            let rep = nuclei_for(&cfg.build()?)?;
            let flags = rep.right.flags.as_ref().expect("constructed code has flags");
            println!(
                "m={m} k={k} h={h}: open {:<5} |N_m| = {:<3} (pred {:?})  |N_r| = {:<3} (pred {:?})",
                flags.open_case,
                rep.middle.order,
                rep.middle.predicted_order,
                rep.right.order,
                rep.right.predicted_order
            );
        }
    }
    Ok(())
}
