//! Profile and sweep CSV files: `# key = value` header lines, then data.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use ghostsim::biphoton::{FieldPath, Plane};
use ghostsim::detection::{CcrProfile, DetectorModel};
use ghostsim::geometry::{GridSpec, Scenario};
use ghostsim::{Error, Result};

/// Everything needed to rebuild a run, as recorded in the CSV header.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub preset: String,
    pub plane: Plane,
    pub detector: DetectorModel,
    pub method: String,
    pub path: FieldPath,
    pub fine: bool,
    pub grid: GridSpec,
    pub scenario: Scenario,
}

const RUN_KEYS: [&str; 9] = [
    "preset",
    "plane",
    "detector",
    "method",
    "path",
    "resolution",
    "grid_x_min",
    "grid_x_max",
    "grid_n_points",
];

/// Fixed data formatting: nine significant digits, lower-case exponent.
pub fn num(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn profile_csv(rec: &RunRecord, p: &CcrProfile) -> String {
    let mut out = String::from("# ghostsim profile\n");
    let res = if rec.fine { "doubled" } else { "default" };
    for (k, v) in [
        ("preset", rec.preset.clone()),
        ("plane", rec.plane.name().to_owned()),
        ("detector", rec.detector.name().to_owned()),
        ("method", rec.method.clone()),
        ("path", rec.path.name().to_owned()),
        ("resolution", res.to_owned()),
        ("grid_x_min", format!("{:e}", rec.grid.x_min())),
        ("grid_x_max", format!("{:e}", rec.grid.x_max())),
        ("grid_n_points", rec.grid.n_points().to_string()),
    ] {
        let _ = writeln!(out, "# {k} = {v}");
    }
    for (k, v) in rec.scenario.fields() {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let _ = writeln!(out, "# fwhm_m = {}", num(p.fwhm.fwhm));
    out.push_str("x_meters,intensity\n");
    for (x, v) in p.grid().points().iter().zip(p.intensity()) {
        let _ = writeln!(out, "{},{}", num(*x), num(*v));
    }
    out
}

/// Rebuilds the run description from a profile CSV.
pub fn parse_header(text: &str) -> Result<RunRecord> {
    let mut run: Vec<(&str, &str)> = Vec::new();
    let mut scen: Vec<(&str, &str)> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let Some(body) = line.strip_prefix('#') else {
            break;
        };
        let Some((k, v)) = body.split_once('=') else {
            continue;
        };
        let (k, v) = (k.trim(), v.trim());
        if RUN_KEYS.contains(&k) {
            run.push((k, v));
        } else if Scenario::FIELDS.contains(&k) {
            scen.push((k, v));
        } else if k != "fwhm_m" {
            return Err(Error::Parse {
                line: n + 1,
                text: line.to_owned(),
            });
        }
    }
    let get = |key: &str| -> Result<&str> {
        run.iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::InvalidValue {
                key: key.to_owned(),
                value: String::new(),
                reason: "missing from CSV header".into(),
            })
    };
    let number = |key: &str| -> Result<f64> {
        let v = get(key)?;
        v.parse().map_err(|_| Error::InvalidValue {
            key: key.to_owned(),
            value: v.to_owned(),
            reason: "not a number".into(),
        })
    };
    let n_points: usize = get("grid_n_points")?
        .parse()
        .map_err(|_| Error::InvalidValue {
            key: "grid_n_points".into(),
            value: get("grid_n_points").unwrap_or_default().to_owned(),
            reason: "not an integer".into(),
        })?;
    let fine = match get("resolution")? {
        "default" => false,
        "doubled" => true,
        other => {
            return Err(Error::InvalidValue {
                key: "resolution".into(),
                value: other.to_owned(),
                reason: "expected default or doubled".into(),
            })
        }
    };
    Ok(RunRecord {
        preset: get("preset")?.to_owned(),
        plane: get("plane")?.parse()?,
        detector: get("detector")?.parse()?,
        method: get("method")?.to_owned(),
        path: get("path")?.parse()?,
        fine,
        grid: GridSpec::new(number("grid_x_min")?, number("grid_x_max")?, n_points)?,
        scenario: Scenario::from_pairs(scen)?,
    })
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ghostsim::geometry::Preset;

    fn record() -> RunRecord {
        RunRecord {
            preset: "fig4".into(),
            plane: Plane::Ghost,
            detector: DetectorModel::Point,
            method: "none".into(),
            path: FieldPath::SemiAnalytic,
            fine: false,
            grid: GridSpec::symmetric(3.3e-4, 101).unwrap(),
            scenario: Preset::Fig4.scenario(),
        }
    }

    #[test]
    fn numbers_have_nine_significant_digits() {
        assert_eq!(num(1.0), "1.00000000e0");
        assert_eq!(num(-1.2345678912e-3), "-1.23456789e-3");
    }

    #[test]
    fn header_round_trips() {
        let rec = record();
        let p = ghostsim::detection::ccr_ghost_point(&rec.scenario, &rec.grid).unwrap();
        let text = profile_csv(&rec, &p);
        assert!(text.contains("# fwhm_m = 1.5"));
        assert_eq!(parse_header(&text).unwrap(), rec);
    }

    #[test]
    fn header_rejects_strangers() {
        assert!(parse_header("# bogus = 1\n").is_err());
        assert!(parse_header("# preset = fig4\n").is_err());
    }

    #[test]
    fn atomic_write_replaces_target() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a").unwrap();
        write_atomic(&path, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomic(&dir.path().join("missing/out.csv"), "c").is_err());
    }
}
