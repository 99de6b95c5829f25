//! Text persistence for the Φ checkpoint table.
//!
//! ```text
//! # ladderlab-cache version=1 t0=200 t_max=6000 omega=ln(t/2pi)+1+euler correction_order=4
//! 2.0000000000000000e2    0.0000000000000000e0
//! ...
//! ```
//! One `t<TAB>Phi` line per checkpoint, 17 significant digits. A header that
//! disagrees with the requested model is rejected.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{LadderModel, OMEGA_TAG};
use crate::error::{Error, Result};
use crate::zeta_eval::EvalConfig;

const MAGIC: &str = "# ladderlab-cache";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CacheHeader {
    pub version: u32,
    pub t0: f64,
    pub t_max: f64,
    pub omega: String,
    pub correction_order: u8,
}

impl CacheHeader {
    fn render(&self) -> String {
        format!(
            "{MAGIC} version={} t0={} t_max={} omega={} correction_order={}",
            self.version, self.t0, self.t_max, self.omega, self.correction_order
        )
    }

    fn parse(line: &str, path: &Path) -> Result<Self> {
        let bad = |reason: String| Error::CacheFormat {
            path: path.to_path_buf(),
            reason,
        };
        let rest = line
            .strip_prefix(MAGIC)
            .ok_or_else(|| bad("missing cache header".into()))?;
        let (mut version, mut t0, mut t_max, mut omega, mut order) = (None, None, None, None, None);
        for field in rest.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad(format!("malformed header field {field:?}")))?;
            let num_err = |_| bad(format!("bad value in header field {field:?}"));
            match key {
                "version" => version = Some(value.parse::<u32>().map_err(|_| bad(field.into()))?),
                "t0" => t0 = Some(value.parse::<f64>().map_err(num_err)?),
                "t_max" => t_max = Some(value.parse::<f64>().map_err(num_err)?),
                "omega" => omega = Some(value.to_string()),
                "correction_order" => {
                    order = Some(value.parse::<u8>().map_err(|_| bad(field.into()))?)
                }
                other => return Err(bad(format!("unknown header field {other:?}"))),
            }
        }
        match (version, t0, t_max, omega, order) {
            (Some(version), Some(t0), Some(t_max), Some(omega), Some(correction_order)) => {
                Ok(Self {
                    version,
                    t0,
                    t_max,
                    omega,
                    correction_order,
                })
            }
            _ => Err(bad("incomplete cache header".into())),
        }
    }
}

impl LadderModel {
    pub fn header(&self) -> CacheHeader {
        CacheHeader {
            version: VERSION,
            t0: self.t0,
            t_max: self.t_max,
            omega: OMEGA_TAG.to_string(),
            correction_order: self.eval.correction_order,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "{}", self.header().render())?;
        for (t, phi) in self.checkpoints() {
            writeln!(out, "{t:.16e}\t{phi:.16e}")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads only the header line of a cache file.
    pub fn read_header(path: &Path) -> Result<CacheHeader> {
        let mut first = String::new();
        BufReader::new(File::open(path)?).read_line(&mut first)?;
        CacheHeader::parse(first.trim_end(), path)
    }

    /// Loads a cache written with the same ω definition and evaluator order.
    pub fn load(path: &Path, eval: EvalConfig) -> Result<Self> {
        let reader = BufReader::new(File::open(path)?);
        let mut lines = reader.lines();
        let first = lines.next().transpose()?.unwrap_or_default();
        let header = CacheHeader::parse(first.trim_end(), path)?;
        let mismatch = |reason: String| Error::CacheMismatch {
            path: path.to_path_buf(),
            reason,
        };
        if header.version != VERSION {
            return Err(mismatch(format!("format version {}", header.version)));
        }
        if header.omega != OMEGA_TAG {
            return Err(mismatch(format!("omega definition {:?}", header.omega)));
        }
        if header.correction_order != eval.correction_order {
            return Err(mismatch(format!(
                "built with correction_order {}, requested {}",
                header.correction_order, eval.correction_order
            )));
        }

        let mut abscissae = Vec::new();
        let mut cumulative = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line?;
            let bad = || Error::CacheFormat {
                path: path.to_path_buf(),
                reason: format!("malformed checkpoint on line {}", n + 2),
            };
            let (t, phi) = line.split_once('\t').ok_or_else(bad)?;
            abscissae.push(t.trim().parse::<f64>().map_err(|_| bad())?);
            cumulative.push(phi.trim().parse::<f64>().map_err(|_| bad())?);
        }
        Self::from_table(header.t0, header.t_max, eval, abscissae, cumulative).map_err(
            |e| match e {
                Error::InvalidParameter(reason) => Error::CacheFormat {
                    path: path.to_path_buf(),
                    reason,
                },
                other => other,
            },
        )
    }

    /// As [`LadderModel::load`], additionally requiring the given range.
    pub fn load_matching(path: &Path, t0: f64, t_max: f64, eval: EvalConfig) -> Result<Self> {
        let header = Self::read_header(path)?;
        if header.t0 != t0 || header.t_max != t_max {
            return Err(Error::CacheMismatch {
                path: path.to_path_buf(),
                reason: format!(
                    "cache covers [{}, {}], requested [{t0}, {t_max}]",
                    header.t0, header.t_max
                ),
            });
        }
        Self::load(path, eval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::DEFAULT_T0;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("phi.tsv");
        let m = LadderModel::build(DEFAULT_T0, 260.5, EvalConfig::default()).unwrap();
        m.save(&path).unwrap();
        let back = LadderModel::load(&path, EvalConfig::default()).unwrap();
        assert!(m.checkpoints().eq(back.checkpoints()));
        assert_eq!(back.t_max(), 260.5);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(
            "# ladderlab-cache version=1 t0=200 t_max=260.5 omega=ln(t/2pi)+1+euler correction_order=4\n"
        ));
        assert_eq!(text.lines().count(), 1 + m.checkpoint_count());
    }

    #[test]
    fn mismatched_headers_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("phi.tsv");
        let m = LadderModel::build(DEFAULT_T0, 230.0, EvalConfig::default()).unwrap();
        m.save(&path).unwrap();

        let other_order = EvalConfig::new(2, 50.0).unwrap();
        assert!(matches!(
            LadderModel::load(&path, other_order),
            Err(Error::CacheMismatch { .. })
        ));
        assert!(matches!(
            LadderModel::load_matching(&path, DEFAULT_T0, 240.0, EvalConfig::default()),
            Err(Error::CacheMismatch { .. })
        ));

        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(
            &path,
            text.replace("omega=ln(t/2pi)+1+euler", "omega=ln(t)"),
        )
        .unwrap();
        assert!(matches!(
            LadderModel::load(&path, EvalConfig::default()),
            Err(Error::CacheMismatch { .. })
        ));
        std::fs::write(&path, text.replace("version=1", "version=2")).unwrap();
        assert!(matches!(
            LadderModel::load(&path, EvalConfig::default()),
            Err(Error::CacheMismatch { .. })
        ));
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("phi.tsv");
        let m = LadderModel::build(DEFAULT_T0, 210.0, EvalConfig::default()).unwrap();
        m.save(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        lines.swap(3, 4);
        std::fs::write(&path, lines.join("\n")).unwrap();
        assert!(LadderModel::load(&path, EvalConfig::default()).is_err());

        std::fs::write(&path, "not a cache\n").unwrap();
        assert!(matches!(
            LadderModel::load(&path, EvalConfig::default()),
            Err(Error::CacheFormat { .. })
        ));
    }
}
