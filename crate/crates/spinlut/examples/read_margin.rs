//! Show why the complementary cell reads robustly: sweep the TMR ratio and
//! compare the threshold distance of the complementary divider against a
//! single-ended divider with a fixed midpoint reference.
//!
//! The complementary node swings symmetrically around half the supply, so
//! its margin is the full half-swing on both sides; the single-ended cell
//! only moves one arm and keeps roughly half that distance.

use spinlut::circuit::{complementary_sense_margin, single_ended_sense_margin, CellDesign, LutFlavor};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;

    println!("{:>6} {:>20} {:>20} {:>8}", "TMR", "complementary (mV)", "single-ended (mV)", "gain");
    for tmr_percent in [30u32, 50, 80, 100, 150, 200, 300] {
        let mut material = design.material;
        material.tmr_ratio = tmr_percent as f64 / 100.0;
        let dual = complementary_sense_margin(&design.geometry, &material, &tech);
        let single = single_ended_sense_margin(&design.geometry, &material, &tech);
        println!(
            "{:>5}% {:>20.1} {:>20.1} {:>8.2}",
            tmr_percent,
            dual * 1e3,
            single * 1e3,
            dual / single
        );
    }

    let nominal_dual = complementary_sense_margin(&design.geometry, &design.material, &tech);
    let nominal_single = single_ended_sense_margin(&design.geometry, &design.material, &tech);
    println!(
        "\nnominal device: {:.1} mV vs {:.1} mV ({:.2}x wider)",
        nominal_dual * 1e3,
        nominal_single * 1e3,
        nominal_dual / nominal_single
    );
    Ok(())
}
