//! Program a 6-input OR into the LUT, evaluate it, and survive a power
//! cycle.
//!
//! The OR table is all ones except minterm 0, i.e. FFFFFFFFFFFFFFFE. Every
//! evaluation goes through the full read path: address the cell, form the
//! resistive divider, sense against half the supply.

use spinlut::circuit::{parse_inputs, CellDesign, ClutCircuit, EvalOutputs, LutConfig, LutFlavor, LutMode};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let design = CellDesign::from_device(&device, LutFlavor::Stt)?;

    let table = LutConfig::parse("FFFFFFFFFFFFFFFE", LutMode::Single6)?;
    let mut lut = ClutCircuit::build(&design, &tech, &table)?;
    println!("programmed OR6 as {}", table.to_hex());

    for text in ["000000", "000001", "100000", "111111", "010101"] {
        let inputs = parse_inputs(text)?;
        let EvalOutputs::Single6 { out1 } = lut.evaluate(inputs)? else {
            unreachable!("single6 mode");
        };
        println!("OR({text}) = {}", out1 as u8);
    }

    // Junction states are resistive, so the table must survive without
    // supply.
    let after = lut.power_cycle()?;
    println!("table after power cycle: {}", after.to_hex());
    assert_eq!(after, table);
    Ok(())
}
