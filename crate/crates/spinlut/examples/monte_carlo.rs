//! Run a 1000-trial process-variation campaign and print the summary with
//! an ASCII histogram of the slow switching time.
//!
//! Trial n always draws from stream n of the seed, so the run is
//! reproducible and identical whether it executes serially or in parallel.

use spinlut::circuit::{CellDesign, LutFlavor};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};
use spinlut::variation::{run_monte_carlo, VariationSpec};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;

    let spec = VariationSpec::default();
    let run = run_monte_carlo(&design, &tech, &spec, 1000, 7, true)?;
    let s = &run.summary;

    println!("{} trials, seed {}", s.trials, s.seed);
    println!("write errors {}, read errors {}", s.write_errors, s.read_errors);
    for (name, unit, metric) in s.metrics() {
        println!(
            "{name:>8}: mean {:.4e} {unit}, sigma {:.2e}, range [{:.4e}, {:.4e}]",
            metric.mean, metric.stddev, metric.min, metric.max
        );
    }

    println!("\nslow transition time distribution (ns):");
    let hist = &s.t_p_ap.histogram;
    let peak = hist.counts.iter().copied().max().unwrap_or(1).max(1);
    // 50 bins are hard to read in a terminal; merge to 25 rows.
    for (row, counts) in hist.counts.chunks(2).enumerate() {
        let count: u64 = counts.iter().sum();
        let low = hist.edges[row * 2];
        let bar = "#".repeat((count * 40 / (2 * peak)) as usize);
        println!("{:7.4} | {bar} {count}", low * 1e9);
    }
    Ok(())
}
