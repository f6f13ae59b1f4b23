//! Stress the cell by scaling every variation fraction together and watch
//! the error rates climb. At the stated process corner the design has
//! margin; errors only appear when the corner is exaggerated severalfold.

use spinlut::circuit::{CellDesign, LutFlavor};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};
use spinlut::variation::{run_trials, VariationSpec};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;
    let base = VariationSpec::default();
    let trials = 400;

    println!(
        "{:>6} {:>12} {:>12} {:>14} {:>14}",
        "scale", "write_err", "read_err", "worst P->AP ns", "worst AP->P ns"
    );
    for scale in [1.0, 2.0, 4.0, 6.0, 8.0] {
        let spec = base.scaled(scale);
        let records = run_trials(&design, &tech, &spec, trials, 11, true)?;
        let write_errors = records.iter().filter(|r| r.write_error).count();
        let read_errors = records.iter().filter(|r| r.read_error).count();
        let worst = |f: fn(&spinlut::variation::TrialRecord) -> f64| {
            records.iter().map(f).filter(|t| t.is_finite()).fold(0.0, f64::max)
        };
        println!(
            "{:>6.1} {:>9}/{trials} {:>9}/{trials} {:>14.3} {:>14.3}",
            scale,
            write_errors,
            read_errors,
            worst(|r| r.t_p_ap) * 1e9,
            worst(|r| r.t_ap_p) * 1e9,
        );
    }
    Ok(())
}
