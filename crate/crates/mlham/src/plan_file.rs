//! Plain-text cache of a gluing plan.
//!
//! ```text
//! mlham-plan v1 n=4
//! 11001010
//! 11001100
//! ```
//!
//! One gluing word per line after the header. Loading re-validates the
//! whole plan, so a damaged file is rejected rather than producing a broken
//! cycle.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use mlham_core::{BitWord, GluingPlan};

const MAGIC: &str = "mlham-plan v1";

#[derive(Debug, thiserror::Error)]
pub enum PlanFileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Syntax {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{path}: plan is for n={found}, expected n={expected}")]
    WrongN {
        path: PathBuf,
        found: usize,
        expected: usize,
    },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        #[source]
        source: mlham_core::Error,
    },
}

pub fn write_plan(plan: &GluingPlan, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{MAGIC} n={}", plan.n())?;
    for x in plan.chosen() {
        writeln!(out, "{x}")?;
    }
    Ok(())
}

pub fn save(plan: &GluingPlan, path: &Path) -> Result<(), PlanFileError> {
    let io_err = |source| PlanFileError::Io {
        path: path.to_owned(),
        source,
    };
    let mut out = io::BufWriter::new(fs::File::create(path).map_err(io_err)?);
    write_plan(plan, &mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}

pub fn load(path: &Path, n: usize) -> Result<GluingPlan, PlanFileError> {
    let io_err = |source| PlanFileError::Io {
        path: path.to_owned(),
        source,
    };
    let syntax = |line, reason: String| PlanFileError::Syntax {
        path: path.to_owned(),
        line,
        reason,
    };
    let reader = BufReader::new(fs::File::open(path).map_err(io_err)?);
    let mut lines = reader.lines();

    let header = lines
        .next()
        .transpose()
        .map_err(io_err)?
        .ok_or_else(|| syntax(1, "empty file".into()))?;
    let found = header
        .strip_prefix(MAGIC)
        .and_then(|rest| rest.strip_prefix(" n="))
        .and_then(|k| k.parse::<usize>().ok())
        .ok_or_else(|| syntax(1, format!("bad header {header:?}")))?;
    if found != n {
        return Err(PlanFileError::WrongN {
            path: path.to_owned(),
            found,
            expected: n,
        });
    }

    let mut chosen = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(io_err)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let x: BitWord = line
            .parse()
            .map_err(|e: mlham_core::Error| syntax(i + 2, e.to_string()))?;
        chosen.push(x);
    }
    GluingPlan::from_chosen(n, chosen).map_err(|source| PlanFileError::Invalid {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plan.txt");
        let plan = GluingPlan::build(5).unwrap();
        save(&plan, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("mlham-plan v1 n=5\n"));
        assert_eq!(text.lines().count(), 1 + 5);
        let back = load(&path, 5).unwrap();
        assert_eq!(back.chosen(), plan.chosen());
    }

    #[test]
    fn rejects_damage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plan.txt");
        save(&GluingPlan::build(4).unwrap(), &path).unwrap();
        let good = fs::read_to_string(&path).unwrap();

        assert!(matches!(load(&path, 5), Err(PlanFileError::WrongN { .. })));

        let dropped: String = good.lines().take(2).map(|l| format!("{l}\n")).collect();
        fs::write(&path, dropped).unwrap();
        assert!(matches!(load(&path, 4), Err(PlanFileError::Invalid { .. })));

        fs::write(&path, good.replacen("mlham-plan", "plan", 1)).unwrap();
        assert!(matches!(
            load(&path, 4),
            Err(PlanFileError::Syntax { line: 1, .. })
        ));

        fs::write(&path, format!("{good}1102\n")).unwrap();
        assert!(matches!(
            load(&path, 4),
            Err(PlanFileError::Syntax { line: 4, .. })
        ));

        assert!(matches!(
            load(&dir.path().join("missing"), 4),
            Err(PlanFileError::Io { .. })
        ));
    }
}
