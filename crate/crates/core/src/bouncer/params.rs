use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fn::airy_zero_asymptotic;

/// CODATA 2018 reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
pub const STANDARD_GRAVITY: f64 = 9.81;

/// The built-in species table, in the config format parsed by
/// [`parse_species_config`].
pub const DEFAULT_SPECIES_CONFIG: &str = include_str!("../../data/species.conf");

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// kg
    pub mass: f64,
    /// m / s^2
    pub gravity: f64,
    /// J s
    pub planck_reduced: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, gravity: f64, planck_reduced: f64) -> Result<Self> {
        let p = Self {
            mass,
            gravity,
            planck_reduced,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_standard_gravity(mass: f64) -> Result<Self> {
        Self::new(mass, STANDARD_GRAVITY, HBAR)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mass", self.mass),
            ("gravity", self.gravity),
            ("planck_reduced", self.planck_reduced),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `l_g = (hbar^2 / (2 m^2 g))^{1/3}` in metres.
    pub fn gravitational_length(&self) -> Result<f64> {
        self.validate()?;
        // written as a product of cube roots to stay clear of underflow
        let l = (self.planck_reduced / self.mass).powf(2.0 / 3.0) / (2.0 * self.gravity).cbrt();
        if l.is_finite() && l > 0.0 {
            Ok(l)
        } else {
            Err(Error::domain(format!(
                "gravitational length not representable for {self:?}"
            )))
        }
    }

    /// `m g l_g`, the energy unit, in joules.
    pub fn energy_unit(&self) -> Result<f64> {
        Ok(self.mass * self.gravity * self.gravitational_length()?)
    }

    /// `hbar / l_g`, the momentum unit, in kg m / s.
    pub fn momentum_unit(&self) -> Result<f64> {
        Ok(self.planck_reduced / self.gravitational_length()?)
    }
}

/// Free-function form of [`PhysicalParams::gravitational_length`].
pub fn gravitational_length(params: &PhysicalParams) -> Result<f64> {
    params.gravitational_length()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Species {
    pub label: String,
    pub aliases: Vec<String>,
    pub params: PhysicalParams,
}

impl Species {
    pub fn matches(&self, name: &str) -> bool {
        self.label.eq_ignore_ascii_case(name)
            || self.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    }
}

/// Parses the species key-value format (see `data/species.conf`).
pub fn parse_species_config(text: &str) -> Result<Vec<Species>> {
    struct Partial {
        label: String,
        line: usize,
        aliases: Vec<String>,
        mass: Option<f64>,
        gravity: f64,
        hbar: f64,
    }

    fn finish(p: Partial) -> Result<Species> {
        let mass = p.mass.ok_or_else(|| Error::Config {
            line: p.line,
            message: format!("species '{}' has no mass_kg", p.label),
        })?;
        let params = PhysicalParams::new(mass, p.gravity, p.hbar).map_err(|e| Error::Config {
            line: p.line,
            message: e.to_string(),
        })?;
        Ok(Species {
            label: p.label,
            aliases: p.aliases,
            params,
        })
    }

    let mut out = Vec::new();
    let mut current: Option<Partial> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
            line: line_no,
            message: format!("expected 'key = value', got '{line}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let number = || -> Result<f64> {
            value.parse::<f64>().map_err(|_| Error::Config {
                line: line_no,
                message: format!("'{key}' needs a number, got '{value}'"),
            })
        };
        if key == "label" {
            if let Some(done) = current.take() {
                out.push(finish(done)?);
            }
            if value.is_empty() {
                return Err(Error::Config {
                    line: line_no,
                    message: "empty label".into(),
                });
            }
            current = Some(Partial {
                label: value.to_string(),
                line: line_no,
                aliases: Vec::new(),
                mass: None,
                gravity: STANDARD_GRAVITY,
                hbar: HBAR,
            });
            continue;
        }
        let Some(p) = current.as_mut() else {
            return Err(Error::Config {
                line: line_no,
                message: format!("'{key}' before any 'label'"),
            });
        };
        match key {
            "aliases" => {
                p.aliases = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            "mass_kg" => p.mass = Some(number()?),
            "gravity" => p.gravity = number()?,
            "planck_reduced" => p.hbar = number()?,
            other => {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }
    if let Some(done) = current.take() {
        out.push(finish(done)?);
    }
    if out.is_empty() {
        return Err(Error::Config {
            line: 0,
            message: "no species records".into(),
        });
    }
    Ok(out)
}

pub fn default_species() -> Vec<Species> {
    parse_species_config(DEFAULT_SPECIES_CONFIG).expect("built-in species table parses")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeEstimate {
    pub species_label: String,
    /// metres
    pub l_g: f64,
    /// metres
    pub drop_height: f64,
    pub n_estimate: f64,
    /// `1 / |a_n|^3` at the nearest integer `n`.
    pub suppression: f64,
}

/// Quantum number reached by a drop from `drop_height`,
/// `n ~ (2 / 3 pi) (h / l_g)^{3/2}`, and the size `1/|a_n|^3` of the first
/// correction layer at that `n`.
pub fn regime_estimate(l_g: f64, drop_height: f64, label: &str) -> Result<RegimeEstimate> {
    if !(l_g.is_finite() && l_g > 0.0 && drop_height.is_finite() && drop_height > 0.0) {
        return Err(Error::domain(format!(
            "regime estimate needs positive l_g and height, got {l_g}, {drop_height}"
        )));
    }
    let n_estimate = 2.0 / (3.0 * std::f64::consts::PI) * (drop_height / l_g).powf(1.5);
    let n = (n_estimate.round() as usize).max(1);
    let a_n = airy_zero_asymptotic(n)?;
    Ok(RegimeEstimate {
        species_label: label.to_string(),
        l_g,
        drop_height,
        n_estimate,
        suppression: 1.0 / a_n.abs().powi(3),
    })
}
