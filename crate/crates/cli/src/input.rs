use std::fs;
use std::path::Path;

use braidrack::braiding::{cocycle_preset, constant_cocycle, Cocycle, COCYCLE_PRESETS};
use braidrack::exact::Field;
use braidrack::presets::{preset, PRESET_NAMES};
use braidrack::Rack;

use crate::CliError;

pub fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// A preset name, an affine rack `Aff(q,alpha)`, or a JSON rack file.
pub fn load_rack(spec: &str) -> Result<Rack, CliError> {
    if Path::new(spec).is_file() {
        return Ok(Rack::from_json(&read_file(spec)?)?);
    }
    if PRESET_NAMES.contains(&spec) || spec.starts_with("Aff(") {
        return Ok(preset(spec)?);
    }
    Err(CliError::Usage(format!("{spec:?} is neither a preset nor a rack file; try `rack preset-list`")))
}

/// Cocycle from a preset name, a JSON cocycle file, or the constant `q`
/// over `field` when `q` is given.
pub fn load_cocycle(rack: Option<&str>, cocycle: &str, field: &str, q: Option<&str>) -> Result<Cocycle, CliError> {
    let rack = rack.map(load_rack).transpose()?;
    if let Some(q) = q {
        let rack = rack.ok_or_else(|| CliError::Usage("a constant cocycle needs a rack".into()))?;
        let field = Field::parse(field)?;
        let q = field.parse_scalar(q)?;
        return Ok(constant_cocycle(&rack, &field, &q)?);
    }
    if Path::new(cocycle).is_file() {
        return Ok(Cocycle::from_json(&read_file(cocycle)?)?);
    }
    if !COCYCLE_PRESETS.contains(&cocycle) {
        return Err(CliError::Usage(format!(
            "unknown cocycle {cocycle:?}; expected a file or one of {}",
            COCYCLE_PRESETS.join(", ")
        )));
    }
    let c = cocycle_preset(cocycle, rack.as_ref())?;
    match rack {
        Some(r) if r != *c.rack() && cocycle != "minus1" => {
            Err(CliError::Usage(format!("cocycle {cocycle:?} belongs to its own rack; omit the rack argument")))
        }
        _ => Ok(c),
    }
}
