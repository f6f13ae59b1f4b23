//! Render the architecture comparison: the fixed SRAM LUT reference next
//! to both measured junction LUT flavors, with the derived savings.

use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};
use spinlut::report::generate_comparison;

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let report = generate_comparison(&device, &tech)?;
    print!("{}", report.to_text());
    Ok(())
}
