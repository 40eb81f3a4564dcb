//! Runs a preset sweep and a config-file sweep, printing CSV.

use eur::sweep::{csv_string, parse_config, preset, run_all, run_sweep, PRESET_NAMES};

fn main() -> eur::Result<()> {
    println!("presets: {}", PRESET_NAMES.join(", "));

    let rows = run_all(&preset("fig6a")?)?;
    let csv = csv_string(&rows)?;
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    println!("... {} rows", rows.len());

    let cfg = parse_config(
        "channel = BPF\nc1 = -0.5\nc2 = 0.4\nc3 = 0.8\npoints = 5\noutputs = u, tightness, discord\n",
    )?;
    print!("{}", csv_string(&run_sweep(&cfg)?)?);

    // every problem in a bad config is reported at once
    if let Err(e) = parse_config("channel = AD\nc1 = 2\nc2 = 0\nc3 = 0\npoints = 0\noutputs = u, nope\n") {
        println!("{e}");
    }
    Ok(())
}
