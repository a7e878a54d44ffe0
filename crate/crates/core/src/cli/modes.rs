//! Spectrum and eigenfunction tables.

use serde_json::Value;

use super::output::{float_value, Cell, Report, Table};
use super::{CliError, RunConfig, DEFAULT_SAMPLES};
use crate::dirac::{self, EnergySign, FamilyTag};
use crate::error::Error;
use crate::nr;
use crate::oracle::RadialGrid;

/// `rho_i = rho_max i / count` for `i = 1..=count`.
pub fn sample_radii(rho_max: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| rho_max * i as f64 / count as f64)
        .collect()
}

fn sampling(config: &RunConfig, a: f64, b: f64) -> (f64, usize) {
    let rho_max = config
        .rho_max
        .unwrap_or_else(|| RadialGrid::default_extent(a, b, config.levels - 1));
    (rho_max, config.grid_points.unwrap_or(DEFAULT_SAMPLES))
}

fn insert_sampling(report: &mut Report, rho_max: f64, count: usize) {
    let mut s = serde_json::Map::new();
    s.insert("rho_max".into(), float_value(rho_max));
    s.insert("points".into(), count.into());
    report.meta.insert("sampling".into(), Value::Object(s));
}

pub fn nr_spectrum(config: &RunConfig) -> Result<Report, CliError> {
    let params = config.nr_params()?;
    if !params.has_bound_states() {
        return Err(Error::NoBoundStates.into());
    }
    let mut levels = Table::new(["n", "epsilon"]);
    for n in 0..config.levels {
        levels.push(vec![
            Cell::Int(n as i64),
            Cell::Float(nr::spectrum_radial(&params, n)),
        ]);
    }
    let mut report = Report {
        meta: config.meta(),
        levels,
        samples: None,
        level_columns: Vec::new(),
    };
    if let Some(phys) = config.physical() {
        let energies = (0..config.levels)
            .map(|n| nr::spectrum_physical(phys, n).map(float_value))
            .collect::<Result<Vec<_>, _>>()?;
        report
            .meta
            .insert("physical_energies".into(), Value::Array(energies));
    }
    Ok(report)
}

pub fn nr_eigenfunctions(config: &RunConfig) -> Result<Report, CliError> {
    let params = config.nr_params()?;
    let (rho_max, count) = sampling(config, params.a, params.b);
    let v0 = nr::potential(&params, 0)?;
    let mut levels = Table::new(["n", "epsilon", "normalization"]);
    let mut functions = Vec::new();
    let mut level_columns = Vec::new();
    for n in 0..config.levels {
        let g = nr::eigenfunction(&params, n)?;
        let c = 1.0 / g.norm_squared()?.sqrt();
        let eps = nr::spectrum_radial(&params, n);
        levels.push(vec![Cell::Int(n as i64), Cell::Float(eps), Cell::Float(c)]);
        level_columns.push((format!("epsilon{n}"), eps));
        functions.push(g.scale(c));
    }
    let mut columns = vec!["rho".to_string(), "V0".to_string()];
    columns.extend((0..config.levels).map(|n| format!("G{n}")));
    let mut samples = Table::new(columns);
    for rho in sample_radii(rho_max, count) {
        let mut row = vec![Cell::Float(rho), Cell::Float(v0.eval(rho)?.re)];
        for g in &functions {
            row.push(Cell::Float(g.eval(rho)?.re));
        }
        samples.push(row);
    }
    let mut report = Report {
        meta: config.meta(),
        levels,
        samples: Some(samples),
        level_columns,
    };
    insert_sampling(&mut report, rho_max, count);
    Ok(report)
}

/// Index of the hierarchy level whose `d` sets the energy of `(fam, n)`.
fn energy_level(fam: FamilyTag, n: u32) -> u32 {
    if fam.uses_xi() {
        n + 1
    } else {
        n
    }
}

pub fn dirac_spectrum(config: &RunConfig) -> Result<Report, CliError> {
    let params = config.dirac_params()?;
    let mut levels = Table::new(["family", "n", "d", "energy", "normalization"]);
    let mut physical = Vec::new();
    for &fam in &config.families {
        for n in 0..config.levels {
            let level = energy_level(fam, n);
            let phi = dirac::eigenfunction_chain(&params, n, fam)?;
            levels.push(vec![
                Cell::Text(fam.to_string()),
                Cell::Int(n as i64),
                Cell::Float(dirac::dn(&params, level)),
                Cell::Float(dirac::eigenvalue(&params, n, fam)),
                Cell::Float(1.0 / phi.norm_squared()?.sqrt()),
            ]);
            if let Some(phys) = config.physical() {
                let sign = if fam.is_positive() {
                    EnergySign::Positive
                } else {
                    EnergySign::Negative
                };
                physical.push(float_value(dirac::spectrum_dirac_via_levels(
                    phys, level, sign,
                )?));
            }
        }
    }
    let mut report = Report {
        meta: config.meta(),
        levels,
        samples: None,
        level_columns: Vec::new(),
    };
    if config.physical().is_some() {
        report
            .meta
            .insert("physical_energies".into(), Value::Array(physical));
    }
    Ok(report)
}

pub fn dirac_eigenfunctions(config: &RunConfig) -> Result<Report, CliError> {
    let params = config.dirac_params()?;
    let (rho_max, count) = sampling(config, params.a, params.b);
    let mut levels = Table::new(["family", "n", "energy", "normalization"]);
    let mut columns = vec!["rho".to_string()];
    let mut level_columns = Vec::new();
    let mut states = Vec::new();
    for &fam in &config.families {
        for n in 0..config.levels {
            let phi = dirac::eigenfunction_chain(&params, n, fam)?;
            let norm2 = phi.norm_squared()?;
            let energy = dirac::eigenvalue(&params, n, fam);
            levels.push(vec![
                Cell::Text(fam.to_string()),
                Cell::Int(n as i64),
                Cell::Float(energy),
                Cell::Float(1.0 / norm2.sqrt()),
            ]);
            columns.push(format!("density_{fam}{n}"));
            level_columns.push((format!("E_{fam}{n}"), energy));
            states.push((phi, norm2));
        }
    }
    let mut samples = Table::new(columns);
    for rho in sample_radii(rho_max, count) {
        let mut row = vec![Cell::Float(rho)];
        for (phi, norm2) in &states {
            let density: f64 = phi.eval(rho)?.iter().map(|z| z.norm_sqr()).sum();
            row.push(Cell::Float(density / norm2));
        }
        samples.push(row);
    }
    let mut report = Report {
        meta: config.meta(),
        levels,
        samples: Some(samples),
        level_columns,
    };
    insert_sampling(&mut report, rho_max, count);
    Ok(report)
}
