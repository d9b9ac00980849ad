//! TSP instance I/O.
//!
//! Two formats:
//!
//! * **CSV** — header `x,y`, one city per row, coordinates already inside the
//!   unit square. Written files round-trip exactly (shortest float
//!   representation).
//! * **TSPLIB (EUC_2D subset)** — `NAME`, `TYPE: TSP`, `DIMENSION`,
//!   `EDGE_WEIGHT_TYPE: EUC_2D`, `NODE_COORD_SECTION`, `EOF`. Coordinates
//!   outside the unit square are rescaled into it on import (aspect
//!   preserving) and the applied transform is returned; files already in the
//!   unit square pass through unchanged, so write-then-read round-trips.
//!
//! An optional sidecar `<path>.opt` holds an externally computed optimal tour
//! length as a single number. It is rescaled together with the coordinates.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

use super::TspInstance;

/// Supported instance file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    Tsplib,
    Csv,
}

/// Affine map applied on import: `unit = (raw + offset) · scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImportScale {
    pub offset: [f64; 2],
    pub scale: f64,
}

/// An imported instance plus any transform and sidecar optimum.
#[derive(Debug, Clone)]
pub struct ImportedInstance {
    pub instance: TspInstance,
    /// Rescale applied to out-of-range TSPLIB coordinates, if any.
    pub scale: Option<ImportScale>,
    /// Externally computed optimal tour length, in unit-square units.
    pub opt_length: Option<f64>,
}

/// Path of the optimum sidecar belonging to an instance file.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".opt");
    PathBuf::from(os)
}

pub fn read_instance(path: &Path, format: InstanceFormat) -> Result<ImportedInstance> {
    let file = fs::File::open(path)?;
    let reader = BufReader::new(file);
    let (instance, scale) = match format {
        InstanceFormat::Csv => (read_csv(reader)?, None),
        InstanceFormat::Tsplib => read_tsplib(reader)?,
    };
    let opt_length = read_sidecar(path)?
        .map(|raw| raw * scale.map_or(1.0, |s| s.scale));
    Ok(ImportedInstance {
        instance,
        scale,
        opt_length,
    })
}

pub fn write_instance(path: &Path, instance: &TspInstance, format: InstanceFormat) -> Result<()> {
    let mut file = fs::File::create(path)?;
    match format {
        InstanceFormat::Csv => {
            writeln!(file, "x,y")?;
            for c in instance.cities() {
                writeln!(file, "{},{}", c[0], c[1])?;
            }
        }
        InstanceFormat::Tsplib => {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "instance".to_string());
            writeln!(file, "NAME: {name}")?;
            writeln!(file, "TYPE: TSP")?;
            writeln!(file, "DIMENSION: {}", instance.n_cities())?;
            writeln!(file, "EDGE_WEIGHT_TYPE: EUC_2D")?;
            writeln!(file, "NODE_COORD_SECTION")?;
            for (i, c) in instance.cities().iter().enumerate() {
                writeln!(file, "{} {} {}", i + 1, c[0], c[1])?;
            }
            writeln!(file, "EOF")?;
        }
    }
    Ok(())
}

/// Writes the optimum sidecar next to an instance file.
pub fn write_opt_sidecar(path: &Path, opt_length: f64) -> Result<()> {
    let mut file = fs::File::create(sidecar_path(path))?;
    writeln!(file, "{opt_length}")?;
    Ok(())
}

fn read_sidecar(path: &Path) -> Result<Option<f64>> {
    let sidecar = sidecar_path(path);
    if !sidecar.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&sidecar)?;
    let value: f64 = text.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        message: format!("invalid optimum length {:?} in {}", text.trim(), sidecar.display()),
    })?;
    Ok(Some(value))
}

fn read_csv<R: BufRead>(reader: R) -> Result<TspInstance> {
    let mut cities = Vec::new();
    let mut saw_header = false;
    for (number, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if !saw_header {
            if trimmed.replace(' ', "") != "x,y" {
                return Err(Error::Parse {
                    line: number + 1,
                    message: format!("expected header \"x,y\", found {trimmed:?}"),
                });
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: number + 1,
                message: format!("expected 2 coordinates, found {}", fields.len()),
            });
        }
        let mut city = [0.0f64; 2];
        for (k, field) in fields.iter().enumerate() {
            city[k] = field.trim().parse().map_err(|_| Error::Parse {
                line: number + 1,
                message: format!("invalid coordinate {field:?}"),
            })?;
            if !(0.0..=1.0).contains(&city[k]) || !city[k].is_finite() {
                return Err(Error::Parse {
                    line: number + 1,
                    message: format!("coordinate {} is outside [0,1]", city[k]),
                });
            }
        }
        cities.push(city);
    }
    TspInstance::new(cities)
}

fn read_tsplib<R: BufRead>(reader: R) -> Result<(TspInstance, Option<ImportScale>)> {
    let mut dimension: Option<usize> = None;
    let mut edge_weight_type: Option<String> = None;
    let mut instance_type: Option<String> = None;
    let mut raw: Vec<[f64; 2]> = Vec::new();
    let mut in_coords = false;

    for (number, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.eq_ignore_ascii_case("EOF") {
            break;
        }
        if in_coords {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: number + 1,
                    message: format!("expected \"id x y\", found {trimmed:?}"),
                });
            }
            let x: f64 = fields[1].parse().map_err(|_| Error::Parse {
                line: number + 1,
                message: format!("invalid x coordinate {:?}", fields[1]),
            })?;
            let y: f64 = fields[2].parse().map_err(|_| Error::Parse {
                line: number + 1,
                message: format!("invalid y coordinate {:?}", fields[2]),
            })?;
            raw.push([x, y]);
            continue;
        }
        if trimmed.eq_ignore_ascii_case("NODE_COORD_SECTION") {
            in_coords = true;
            continue;
        }
        if let Some((key, value)) = trimmed.split_once(':') {
            match key.trim().to_ascii_uppercase().as_str() {
                "DIMENSION" => {
                    dimension = Some(value.trim().parse().map_err(|_| Error::Parse {
                        line: number + 1,
                        message: format!("invalid DIMENSION {:?}", value.trim()),
                    })?);
                }
                "EDGE_WEIGHT_TYPE" => edge_weight_type = Some(value.trim().to_string()),
                "TYPE" => instance_type = Some(value.trim().to_string()),
                _ => {} // NAME, COMMENT, and friends
            }
        }
    }

    if let Some(t) = &instance_type {
        if !t.eq_ignore_ascii_case("TSP") {
            return Err(Error::UnsupportedFormat(format!(
                "TYPE {t} is not supported, only TSP"
            )));
        }
    }
    match &edge_weight_type {
        Some(t) if t.eq_ignore_ascii_case("EUC_2D") => {}
        Some(t) => {
            return Err(Error::UnsupportedFormat(format!(
                "EDGE_WEIGHT_TYPE {t} is not supported, only EUC_2D"
            )))
        }
        None => {
            return Err(Error::UnsupportedFormat(
                "missing EDGE_WEIGHT_TYPE (expected EUC_2D)".into(),
            ))
        }
    }
    let dimension = dimension.ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing DIMENSION header".into(),
    })?;
    if raw.len() != dimension {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "DIMENSION is {dimension} but {} coordinates were read",
                raw.len()
            ),
        });
    }

    let in_unit = raw
        .iter()
        .all(|c| c.iter().all(|&x| (0.0..=1.0).contains(&x)));
    if in_unit {
        return Ok((TspInstance::new(raw)?, None));
    }

    // aspect-preserving rescale into the unit square
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for c in &raw {
        for k in 0..2 {
            min[k] = min[k].min(c[k]);
            max[k] = max[k].max(c[k]);
        }
    }
    let range = (max[0] - min[0]).max(max[1] - min[1]);
    let scale = if range > 0.0 { 1.0 / range } else { 1.0 };
    let cities: Vec<[f64; 2]> = raw
        .iter()
        .map(|c| {
            [
                ((c[0] - min[0]) * scale).clamp(0.0, 1.0),
                ((c[1] - min[1]) * scale).clamp(0.0, 1.0),
            ]
        })
        .collect();
    let transform = ImportScale {
        offset: [-min[0], -min[1]],
        scale,
    };
    Ok((TspInstance::new(cities)?, Some(transform)))
}
