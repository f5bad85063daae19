use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::args::{Cli, Format};
use crate::commands::Failure;

pub struct Artifact {
    /// File stem used when writing into the output directory.
    pub stem: String,
    pub json: String,
    pub csv: Option<String>,
}

impl Artifact {
    pub fn json<T: Serialize>(stem: impl Into<String>, value: &T) -> Result<Self, Failure> {
        let mut json = serde_json::to_string_pretty(value).map_err(|e| Failure::Invalid(e.to_string()))?;
        json.push('\n');
        Ok(Artifact {
            stem: stem.into(),
            json,
            csv: None,
        })
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

pub fn emit(cli: &Cli, artifact: &Artifact) -> Result<(), Failure> {
    let (body, ext) = match cli.format {
        Format::Json => (&artifact.json, "json"),
        Format::Csv => match &artifact.csv {
            Some(c) => (c, "csv"),
            None => return Err(Failure::Usage(format!("{} has no csv form", artifact.stem))),
        },
    };
    let target: Option<PathBuf> = match (&cli.out, &cli.out_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{ext}", artifact.stem))),
        (None, None) => None,
    };
    match target {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
            }
            fs::write(&path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}
