//! Shot-noise-limited stress sensitivity of divacancy and NV sensors under
//! each photon-budget convention.

use spinstress::presets::PresetLibrary;
use spinstress::{scenario_table, BetaConvention};

fn main() -> spinstress::Result<()> {
    let lib = PresetLibrary::builtin()?;
    let scenarios = lib.scenario_set("divacancy-vs-nv")?;
    for convention in BetaConvention::ALL {
        println!("{convention}");
        for row in scenario_table(scenarios, convention)? {
            let eta = row.eta.map_or("insensitive".to_string(), |e| format!("{e:.3e}"));
            println!(
                "  {:<20} g = {:5.2} MHz/GPa  T2 = {:.1} ms  eta = {eta} GPa/√Hz",
                row.label,
                row.coupling,
                row.t2 * 1e3
            );
        }
    }
    Ok(())
}
