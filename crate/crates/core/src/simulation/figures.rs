//! Tabulated curves for the dual density and mixing-law figures.

use std::fmt;
use std::str::FromStr;

use crate::distributions::{DualMixing, DualVoigt, Levy};
use crate::error::{Error, Result};
use crate::simulation::csv::fmt_f64;

/// Fewest grid points a figure table may have.
pub const MIN_GRID_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// p′(u) for several γ at one σ.
    DualDensity,
    /// Lévy(1/σ², γ²/σ⁴) density, its truncation to (1/σ², 2/σ²) and the
    /// reflection of that truncation about its maximum, 2/σ².
    MixingConstruction,
    /// Voigt mixing Lévy(σ², γ²) densities next to dual mixing densities.
    MixingCompare,
}

impl FigureKind {
    pub fn name(&self) -> &'static str {
        match self {
            FigureKind::DualDensity => "dual_density",
            FigureKind::MixingConstruction => "mixing_construction",
            FigureKind::MixingCompare => "mixing_compare",
        }
    }

    /// Parameters and grid used when none are given.
    pub fn defaults(&self) -> (FigureParams, GridSpec) {
        match self {
            FigureKind::DualDensity => (
                FigureParams {
                    sigma: 1.0,
                    gammas: vec![0.25, 0.5, 1.0, 2.0],
                },
                GridSpec::new(-4.0, 4.0, 401),
            ),
            FigureKind::MixingConstruction => (
                FigureParams {
                    sigma: 1.0,
                    gammas: vec![1.0],
                },
                GridSpec::new(0.0, 4.0, 401),
            ),
            FigureKind::MixingCompare => (
                FigureParams {
                    sigma: 1.0,
                    gammas: vec![0.5, 1.0, 2.0],
                },
                GridSpec::new(0.0, 6.0, 601),
            ),
        }
    }
}

impl fmt::Display for FigureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual_density" => Ok(FigureKind::DualDensity),
            "mixing_construction" => Ok(FigureKind::MixingConstruction),
            "mixing_compare" => Ok(FigureKind::MixingCompare),
            other => Err(Error::InvalidParameter(format!("unknown figure '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureParams {
    pub sigma: f64,
    pub gammas: Vec<f64>,
}

/// `points` equally spaced abscissae from `from` to `to` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(from: f64, to: f64, points: usize) -> Self {
        Self { from, to, points }
    }

    pub fn abscissae(&self) -> Result<Vec<f64>> {
        if self.points < MIN_GRID_POINTS {
            return Err(Error::GridTooCoarse {
                points: self.points,
                min: MIN_GRID_POINTS,
            });
        }
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return Err(Error::InvalidParameter(format!(
                "grid needs finite from < to, got [{}, {}]",
                self.from, self.to
            )));
        }
        let step = (self.to - self.from) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.to
                } else {
                    self.from + step * i as f64
                }
            })
            .collect())
    }
}

/// Wide table: first column is the abscissa, one column per series.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| fmt_f64(x)).collect())
            .collect()
    }
}

fn series_name(prefix: &str, gamma: f64, sigma: f64) -> String {
    format!("{prefix}_gamma{gamma}_sigma{sigma}")
}

/// Tabulates the curves of one figure on `grid`.
pub fn figure_data(which: FigureKind, params: &FigureParams, grid: &GridSpec) -> Result<FigureTable> {
    let xs = grid.abscissae()?;
    if params.gammas.is_empty() {
        return Err(Error::InvalidParameter("figure needs at least one gamma".into()));
    }
    let s = params.sigma;
    match which {
        FigureKind::DualDensity => {
            let duals = params
                .gammas
                .iter()
                .map(|&g| DualVoigt::from_parts(g, s))
                .collect::<Result<Vec<_>>>()?;
            let mut columns = vec!["u".to_string()];
            columns.extend(params.gammas.iter().map(|&g| series_name("dual_pdf", g, s)));
            let rows = xs
                .iter()
                .map(|&u| std::iter::once(u).chain(duals.iter().map(|d| d.pdf(u))).collect())
                .collect();
            Ok(FigureTable { columns, rows })
        }
        FigureKind::MixingConstruction => {
            let g = params.gammas[0];
            let mixing = DualMixing::from_parts(g, s)?;
            let levy = *mixing.levy();
            let top = 2.0 / (s * s);
            let mass = 2.0 * crate::special::std_normal_sf(g / s);
            let truncated = |x: f64| if x < top { levy.pdf(x) / mass } else { 0.0 };
            let columns = vec![
                "x".to_string(),
                series_name("levy_pdf", g, s),
                series_name("truncated_pdf", g, s),
                series_name("reflected_pdf", g, s),
            ];
            let rows = xs
                .iter()
                .map(|&x| vec![x, levy.pdf(x), truncated(x), mixing.pdf(x)])
                .collect();
            Ok(FigureTable { columns, rows })
        }
        FigureKind::MixingCompare => {
            let levies = params
                .gammas
                .iter()
                .map(|&g| Levy::new(s * s, g * g))
                .collect::<Result<Vec<_>>>()?;
            let mixings = params
                .gammas
                .iter()
                .map(|&g| DualMixing::from_parts(g, s))
                .collect::<Result<Vec<_>>>()?;
            let mut columns = vec!["x".to_string()];
            columns.extend(params.gammas.iter().map(|&g| series_name("voigt_mixing_pdf", g, s)));
            columns.extend(params.gammas.iter().map(|&g| series_name("dual_mixing_pdf", g, s)));
            let rows = xs
                .iter()
                .map(|&x| {
                    std::iter::once(x)
                        .chain(levies.iter().map(|l| l.pdf(x)))
                        .chain(mixings.iter().map(|m| m.pdf(x)))
                        .collect()
                })
                .collect();
            Ok(FigureTable { columns, rows })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid_rejected() {
        let (p, _) = FigureKind::DualDensity.defaults();
        let r = figure_data(FigureKind::DualDensity, &p, &GridSpec::new(-1.0, 1.0, 15));
        assert_eq!(r, Err(Error::GridTooCoarse { points: 15, min: 16 }));
    }

    #[test]
    fn parse_names() {
        for k in [
            FigureKind::DualDensity,
            FigureKind::MixingConstruction,
            FigureKind::MixingCompare,
        ] {
            assert_eq!(k.name().parse::<FigureKind>().unwrap(), k);
        }
        assert!("figure4".parse::<FigureKind>().is_err());
    }

    #[test]
    fn shapes() {
        for k in [
            FigureKind::DualDensity,
            FigureKind::MixingConstruction,
            FigureKind::MixingCompare,
        ] {
            let (p, g) = k.defaults();
            let t = figure_data(k, &p, &g).unwrap();
            assert_eq!(t.rows.len(), g.points);
            assert!(t.rows.iter().all(|r| r.len() == t.columns.len()));
        }
    }
}
