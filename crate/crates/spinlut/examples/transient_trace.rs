//! Record the control and node waveforms of a configure-then-read
//! scenario, once with the read enabled and once with the read line held
//! low to show the output holding its idle value.

use spinlut::circuit::{parse_inputs, CellDesign, LutConfig, LutFlavor, LutMode, TraceScenario, transient_trace};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;

    let config = LutConfig::parse("FFFFFFFFFFFFFFFE", LutMode::Single6)?;
    let inputs = parse_inputs("000001")?;

    let trace = transient_trace(&design, &tech, &TraceScenario { config, inputs, read_enabled: true })?;
    println!("# read enabled: OUT1 resolves after the sense delay");
    print!("{}", trace.to_csv());

    let held = transient_trace(&design, &tech, &TraceScenario { config, inputs, read_enabled: false })?;
    println!("\n# read disabled: RWL stays low and OUT1 holds 0");
    print!("{}", held.to_csv());
    assert_eq!(held.final_value("OUT1"), Some(0.0));
    assert_eq!(trace.final_value("OUT1"), Some(1.0));
    Ok(())
}
