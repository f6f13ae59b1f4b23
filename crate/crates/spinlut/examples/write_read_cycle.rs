//! Write and read one cell in both flavors and show the operating numbers:
//! write current and energy, per-junction switching times, read voltage,
//! sense delay per stored value.

use spinlut::circuit::{
    cell_read, cell_write, pull_transistor, CellDesign, LutFlavor, SwitchEvent,
};
use spinlut::cli::{DEFAULT_DEVICE_PARAMS, DEFAULT_TECH_PARAMS};
use spinlut::device::{DeviceParamsFile, TechParams};

fn describe(event: SwitchEvent) -> String {
    match event {
        SwitchEvent::AlreadySet => "already set".into(),
        SwitchEvent::Switched(t) => format!("switched in {:.3} ns", t * 1e9),
        SwitchEvent::Failed => "FAILED".into(),
    }
}

fn main() -> spinlut::Result<()> {
    let device = DeviceParamsFile::parse(DEFAULT_DEVICE_PARAMS)?;
    let tech = TechParams::parse(DEFAULT_TECH_PARAMS)?;
    let pull_up = pull_transistor(&tech);
    let pull_down = pull_transistor(&tech);

    for flavor in [LutFlavor::Stt, LutFlavor::She] {
        let design = CellDesign::from_device(&device, flavor)?;
        let mut cell = design.build_cell(&tech);
        println!("== {} cell ==", flavor.as_str());

        for bit in [true, false] {
            let w = cell_write(&mut cell, &tech, flavor, bit, tech.write_pulse)?;
            let events = w.events.expect("write reports events");
            println!(
                "write {}: {:.2} uA, {:.1} fJ; primary {}, complement {}",
                bit as u8,
                w.current * 1e6,
                w.energy * 1e15,
                describe(events.primary),
                describe(events.complement),
            );

            let r = cell_read(&cell, &tech, &pull_up, &pull_down)?;
            println!(
                "read: node {:.3} V vs threshold {:.3} V -> {}; {:.0} ps, {:.2} uA",
                r.node_voltage,
                tech.sense_threshold(),
                r.sensed.expect("reads sense") as u8,
                r.delay * 1e12,
                r.current * 1e6,
            );
            assert_eq!(r.sensed, Some(bit));
        }
        println!();
    }
    Ok(())
}
