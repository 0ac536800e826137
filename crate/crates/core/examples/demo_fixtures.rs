//! Drives the command-line front end in-process on the built-in demos.
//!
//! `cargo run --example demo_fixtures`

use jointrange::cli::{run, DEMO_NAMES};

fn main() {
    for name in DEMO_NAMES {
        let out = run(["jointrange", "decide", "--demo", name, "--mode", "polyhedral"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap_or_default();
        println!(
            "{name}: exit {} verdict {} route {}",
            out.code, v["report"]["verdict"], v["report"]["route"]
        );
    }
    let csv = run(["jointrange", "boundary", "--demo", "ex3.2", "--dirs", "16"]);
    print!("{}", csv.stdout);
}
