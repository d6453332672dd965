//! Middle and right nuclei: brute force against the closed-form predictions.
//!
//! cargo run --release --example twisted_nuclei

use twisted_gabidulin::cli::{nuclei_for, RunConfig};

fn main() -> twisted_gabidulin::Result<()> {
    let runs = [
        (2, 6, 3, 1, 0, "0", "subfield:3"),
        (2, 6, 4, 2, 0, "0", "generic:0"),
        (3, 4, 3, 1, 2, "nonsquare-min", "generic:0"),
        (3, 4, 3, 1, 3, "nonsquare-min", "generic:0"),
        // k = 1 with h = s: the twist is a conjugate of the plain code
        (3, 4, 3, 1, 1, "nonsquare-min", "generic:0"),
    ];
    for (p, n, m, k, h, eta, sub) in runs {
        let cfg = RunConfig::from_json(&format!(
            r#"{{"field":{{"p":{p},"n":{n}}},"params":{{"m":{m},"k":{k},"h":{h},"eta":"{eta}"}},"subspace":"{sub}"}}"#
        ))?;
        let inst = cfg.build()?;
        let rep = nuclei_for(&inst)?;
        println!("q={p} n={n} m={m} k={k} h={h} eta={eta} S={sub}");
        for line in rep.summary().lines() {
            println!("  {line}");
        }
        if let Some(t) = rep.middle.t {
            println!("  middle nucleus is F_(q^{t}) acting by multiplication");
        }
    }
    Ok(())
}
