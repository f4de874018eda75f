//! Writes a synthetic dataset as JSON, reads it back and fits it, the same
//! path the `generate` and `fit` subcommands take.

use spinstress::presets::PresetLibrary;
use spinstress::regression::default_battery;
use spinstress::{generate_synthetic, CouplingKind, Dataset, ZfsMatrix};

fn main() -> spinstress::Result<()> {
    let lib = PresetLibrary::builtin()?;
    let h = lib.material("3c-sic-divacancy")?.couplings(CouplingKind::Strain)?;
    let dataset = Dataset {
        baseline: ZfsMatrix::zero(),
        samples: generate_synthetic(h, &default_battery(), 0.002, 7)?,
    };

    let path = std::env::temp_dir().join("spinstress-example.json");
    std::fs::write(&path, dataset.to_json()?)?;
    let text = std::fs::read_to_string(&path)?;
    println!("{}", text.lines().take(14).collect::<Vec<_>>().join("\n"));
    println!("... ({} bytes written to {})", text.len(), path.display());

    let result = Dataset::load(&path)?.fit()?;
    println!("fitted h: {:?}", result.couplings.values().map(|v| v.round()));
    std::fs::remove_file(&path)?;
    Ok(())
}
