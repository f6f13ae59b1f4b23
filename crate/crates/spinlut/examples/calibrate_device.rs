//! Fit the free parameters from a bare device description and print the
//! resulting parameter files plus the fit diagnostics.
//!
//! This is the library path behind `spinlut calibrate`; the two printed
//! documents are exactly what the subcommand writes to device.params and
//! tech.params.

use spinlut::device::{DeviceParamsFile, MtjGeometry};
use spinlut::report::{calibrate_system, SystemTargets};

fn main() -> spinlut::Result<()> {
    let bare = DeviceParamsFile {
        geometry: MtjGeometry {
            length_nm: 60.0,
            width_nm: 30.0,
            free_layer_thickness_nm: 1.3,
            oxide_thickness_nm: 1.0,
        },
        saturation_magnetization: 1.5e5,
        gilbert_damping: 0.02,
        tmr_ratio: 1.0,
        spin_polarization: 0.6,
        initial_cant_angle_deg: 5.0,
        she_channel_length_nm: 260.0,
        she_channel_width_nm: 60.0,
        she_channel_thickness_nm: 1.2,
        spin_hall_angle: 0.3,
        fitted_anisotropy_field: None,
        fitted_polarization_asymmetry: None,
        fitted_ra_product: None,
        fitted_she_resistivity: None,
    };

    let targets = SystemTargets::default();
    let sys = calibrate_system(&bare, &targets)?;

    println!("fit diagnostics");
    println!(
        "  anisotropy field   {:.4e} A/m",
        sys.dynamics.material.uniaxial_anisotropy_field
    );
    println!("  torque asymmetry   {:.6}", sys.dynamics.material.polarization_asymmetry);
    println!(
        "  overdrives         {:.4} (P->AP) / {:.4} (AP->P)",
        sys.dynamics.overdrive_p_ap, sys.dynamics.overdrive_ap_p
    );
    println!(
        "  closed-form times  {:.4} ns / {:.4} ns (targets {:.2} / {:.2})",
        sys.dynamics.closed_form_t_p_ap * 1e9,
        sys.dynamics.closed_form_t_ap_p * 1e9,
        targets.switching.t_p_ap * 1e9,
        targets.switching.t_ap_p * 1e9,
    );
    println!(
        "  integrator check   {:.4} ns / {:.4} ns",
        sys.dynamics.llg_t_p_ap * 1e9,
        sys.dynamics.llg_t_ap_p * 1e9
    );
    println!("  read overdrive     {:.4} (must stay below 1)", sys.dynamics.read_overdrive);
    println!("  fit residual       {:.2e}", sys.dynamics.residual);
    println!();

    print!("{}", sys.device.to_document().to_text("device parameters"));
    println!();
    print!("{}", sys.tech.to_document().to_text("technology parameters"));
    Ok(())
}
