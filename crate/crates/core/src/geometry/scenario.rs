use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Relative tolerance on `m == (d1 + d2) / s_o`.
pub const MAGNIFICATION_TOLERANCE: f64 = 1e-12;

/// Full experiment geometry and beam parameters. SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    /// Degenerate signal/idler wavelength.
    pub lambda: f64,
    /// Pump 1/e field-amplitude radius, field `exp(-x²/a_p²)`.
    pub a_p: f64,
    /// Crystal to imaging lens L1.
    pub d1: f64,
    /// Crystal to ghost-image plane (signal arm).
    pub d2: f64,
    /// Crystal to diffraction plane (signal arm).
    pub d3: f64,
    /// L1 to idler slit.
    pub s_o: f64,
    /// Focal length of L1.
    pub f_l1: f64,
    /// Focal length of the collector lens L2.
    pub f_c: f64,
    /// Magnification (d1 + d2) / s_o.
    pub m: f64,
    /// Idler slit full width.
    pub w: f64,
    /// Full width of a physical slit in the signal arm at the ghost plane.
    pub signal_slit: Option<f64>,
}

impl Scenario {
    pub const FIELDS: [&'static str; 11] = [
        "lambda",
        "a_p",
        "d1",
        "d2",
        "d3",
        "s_o",
        "f_l1",
        "f_c",
        "m",
        "w",
        "signal_slit",
    ];

    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("lambda", self.lambda),
            ("a_p", self.a_p),
            ("d1", self.d1),
            ("d2", self.d2),
            ("d3", self.d3),
            ("s_o", self.s_o),
            ("f_l1", self.f_l1),
            ("f_c", self.f_c),
            ("m", self.m),
            ("w", self.w),
        ];
        for (name, v) in lengths {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Invariant(format!(
                    "{name} must be finite and > 0, got {v:e}"
                )));
            }
        }
        if let Some(b) = self.signal_slit {
            if !(b.is_finite() && b > 0.0) {
                return Err(Error::Invariant(format!(
                    "signal_slit must be finite and > 0, got {b:e}"
                )));
            }
        }
        if self.d3 <= self.d2 {
            return Err(Error::Invariant(format!(
                "d3 ({:e}) must exceed d2 ({:e})",
                self.d3, self.d2
            )));
        }
        let expected = self.imaging_magnification();
        if (self.m - expected).abs() > MAGNIFICATION_TOLERANCE * expected {
            return Err(Error::Invariant(format!(
                "m ({:e}) must equal (d1 + d2)/s_o = {expected:e}",
                self.m
            )));
        }
        Ok(())
    }

    /// (d1 + d2) / s_o.
    pub fn imaging_magnification(&self) -> f64 {
        (self.d1 + self.d2) / self.s_o
    }

    /// Distance from the ghost-image plane to the diffraction plane.
    pub fn gap(&self) -> f64 {
        self.d3 - self.d2
    }

    /// 1/e half-width of the ghost-plane blur, λ·d2 / (π·a_p).
    pub fn ghost_blur(&self) -> f64 {
        self.lambda * self.d2 / (std::f64::consts::PI * self.a_p)
    }

    /// Half-width of the idler slit image in the ghost plane.
    pub fn image_half_width(&self) -> f64 {
        0.5 * self.m * self.w
    }

    pub fn get(&self, key: &str) -> Result<Option<f64>> {
        Ok(Some(match key {
            "lambda" => self.lambda,
            "a_p" => self.a_p,
            "d1" => self.d1,
            "d2" => self.d2,
            "d3" => self.d3,
            "s_o" => self.s_o,
            "f_l1" => self.f_l1,
            "f_c" => self.f_c,
            "m" => self.m,
            "w" => self.w,
            "signal_slit" => return Ok(self.signal_slit),
            other => return Err(Error::UnknownField(other.to_owned())),
        }))
    }

    /// Assigns one field from its text form. Does not re-validate.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        if key == "signal_slit" {
            self.signal_slit = match value.to_ascii_lowercase().as_str() {
                "none" | "inf" | "infinity" => None,
                _ => Some(parse_number(key, value)?),
            };
            return Ok(());
        }
        let v = parse_number(key, value)?;
        let slot = match key {
            "lambda" => &mut self.lambda,
            "a_p" => &mut self.a_p,
            "d1" => &mut self.d1,
            "d2" => &mut self.d2,
            "d3" => &mut self.d3,
            "s_o" => &mut self.s_o,
            "f_l1" => &mut self.f_l1,
            "f_c" => &mut self.f_c,
            "m" => &mut self.m,
            "w" => &mut self.w,
            other => return Err(Error::UnknownField(other.to_owned())),
        };
        *slot = v;
        Ok(())
    }

    /// Applies `key=value` overrides in order, then validates.
    ///
    /// When d1, d2 or s_o change and m is not overridden explicitly, m is
    /// recomputed from (d1 + d2)/s_o.
    pub fn with_overrides<S: AsRef<str>>(mut self, overrides: &[S]) -> Result<Self> {
        let mut geometry_touched = false;
        let mut m_set = false;
        for raw in overrides {
            let (key, value) = split_assignment(raw.as_ref())?;
            self.set(key, value)?;
            match key {
                "d1" | "d2" | "s_o" => geometry_touched = true,
                "m" => m_set = true,
                _ => {}
            }
        }
        if geometry_touched && !m_set {
            self.m = self.imaging_magnification();
        }
        self.validate()?;
        Ok(self)
    }

    /// `key = value` lines, one per field; shortest round-trip formatting.
    pub fn to_kv_string(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.fields() {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }

    /// Field names paired with their text form.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        Self::FIELDS
            .iter()
            .map(|&k| {
                let v = match self.get(k).expect("known field") {
                    Some(v) => format!("{v:e}"),
                    None => "none".to_owned(),
                };
                (k, v)
            })
            .collect()
    }

    /// Builds a scenario from `(key, value)` pairs that must name every field
    /// exactly once.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut s = Self {
            lambda: f64::NAN,
            a_p: f64::NAN,
            d1: f64::NAN,
            d2: f64::NAN,
            d3: f64::NAN,
            s_o: f64::NAN,
            f_l1: f64::NAN,
            f_c: f64::NAN,
            m: f64::NAN,
            w: f64::NAN,
            signal_slit: None,
        };
        let mut seen = [false; 11];
        for (key, value) in pairs {
            let idx = Self::FIELDS
                .iter()
                .position(|&f| f == key)
                .ok_or_else(|| Error::UnknownField(key.to_owned()))?;
            if seen[idx] {
                return Err(Error::InvalidValue {
                    key: key.to_owned(),
                    value: value.to_owned(),
                    reason: "field given twice".into(),
                });
            }
            seen[idx] = true;
            s.set(key, value)?;
        }
        if let Some(idx) = seen.iter().position(|&x| !x) {
            return Err(Error::InvalidValue {
                key: Self::FIELDS[idx].to_owned(),
                value: String::new(),
                reason: "missing".into(),
            });
        }
        s.validate()?;
        Ok(s)
    }
}

impl FromStr for Scenario {
    type Err = Error;

    /// Parses the flat `key = value` format; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: n + 1,
                text: line.to_owned(),
            })?;
            pairs.push((k.trim(), v.trim()));
        }
        Self::from_pairs(pairs)
    }
}

pub(crate) fn split_assignment(raw: &str) -> Result<(&str, &str)> {
    let (k, v) = raw.split_once('=').ok_or_else(|| Error::InvalidValue {
        key: raw.to_owned(),
        value: String::new(),
        reason: "expected key=value".into(),
    })?;
    Ok((k.trim(), v.trim()))
}

fn parse_number(key: &str, value: &str) -> Result<f64> {
    value.parse::<f64>().map_err(|e| Error::InvalidValue {
        key: key.to_owned(),
        value: value.to_owned(),
        reason: e.to_string(),
    })
}
