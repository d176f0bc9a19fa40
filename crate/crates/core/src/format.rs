//! Text serialization of extension models and degree towers.
//!
//! A model file is a list of `key: value` lines. Matrices are written as
//! row-major residues separated by spaces; subspaces as their reduced
//! echelon basis rows separated by `;`. Blank lines and lines starting with
//! `#` are ignored. The writer always emits the canonical form, so two
//! equal models serialize identically.
//!
//! ```text
//! format: h90-model/1
//! p: 2
//! dimA: 2
//! sigma: 1 1 0 1
//! dimB: 1
//! i: 1 0
//! N: 0 1
//! K_a:
//! K_xi:
//! flags: a_sum_two_squares=false xi_is_norm=false
//! provenance: free-block
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::backends::DegreeTower;
use crate::cyclic::CyclicModule;
use crate::error::{Error, Result};
use crate::gfp::{Fp, Matrix, Subspace};
use crate::model::{ExtensionModel, Flags};

pub const MODEL_FORMAT: &str = "h90-model/1";
pub const TOWER_FORMAT: &str = "h90-tower/1";

fn join_entries(entries: &[u32]) -> String {
    entries
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn subspace_text(s: &Subspace) -> String {
    s.basis()
        .iter()
        .map(|v| join_entries(v))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn model_to_text(m: &ExtensionModel) -> String {
    let mut out = String::new();
    let flags = m.flags();
    writeln!(out, "format: {}", MODEL_FORMAT).unwrap();
    writeln!(out, "p: {}", m.p()).unwrap();
    writeln!(out, "dimA: {}", m.a_dim()).unwrap();
    writeln!(out, "sigma: {}", join_entries(m.sigma().entries())).unwrap();
    writeln!(out, "dimB: {}", m.b_dim()).unwrap();
    writeln!(out, "i: {}", join_entries(m.i().entries())).unwrap();
    writeln!(out, "N: {}", join_entries(m.n().entries())).unwrap();
    writeln!(out, "K_a: {}", subspace_text(m.k_a())).unwrap();
    writeln!(out, "K_xi: {}", subspace_text(m.k_xi())).unwrap();
    writeln!(
        out,
        "flags: a_sum_two_squares={} xi_is_norm={}",
        flags.a_sum_two_squares, flags.xi_is_norm
    )
    .unwrap();
    writeln!(out, "provenance: {}", m.provenance().replace('\n', " ")).unwrap();
    // Trailing spaces after empty values are not part of the canonical form.
    out.lines()
        .map(|l| l.trim_end())
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// `key -> (line number, value)` for a `key: value` document.
struct Fields {
    map: HashMap<String, (usize, String)>,
    last_line: usize,
}

impl Fields {
    fn parse(text: &str) -> Result<Fields> {
        let mut map = HashMap::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Parse {
                    line: line_no,
                    field: line.to_string(),
                    msg: "expected `key: value`".into(),
                });
            };
            let key = key.trim().to_string();
            if map.contains_key(&key) {
                return Err(Error::Parse {
                    line: line_no,
                    field: key,
                    msg: "duplicate field".into(),
                });
            }
            map.insert(key, (line_no, value.trim().to_string()));
        }
        Ok(Fields { map, last_line })
    }

    fn get(&self, key: &str) -> Result<(usize, &str)> {
        self.map
            .get(key)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| Error::Parse {
                line: self.last_line,
                field: key.to_string(),
                msg: "missing field".into(),
            })
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let (line, v) = self.get(key)?;
        v.parse().map_err(|_| Error::Parse {
            line,
            field: key.to_string(),
            msg: format!("expected a non-negative integer, got `{}`", v),
        })
    }

    fn integers(&self, key: &str) -> Result<(usize, Vec<i64>)> {
        let (line, v) = self.get(key)?;
        let nums = parse_integers(v).map_err(|msg| Error::Parse {
            line,
            field: key.to_string(),
            msg,
        })?;
        Ok((line, nums))
    }

    fn matrix(&self, key: &str, field: Fp, rows: usize, cols: usize) -> Result<Matrix> {
        let (line, nums) = self.integers(key)?;
        check_residues(&nums, field, line, key)?;
        Matrix::from_flat(field, rows, cols, &nums).map_err(|e| Error::Parse {
            line,
            field: key.to_string(),
            msg: e.to_string(),
        })
    }

    fn subspace(&self, key: &str, field: Fp, ambient: usize) -> Result<Subspace> {
        let (line, v) = self.get(key)?;
        let mut rows = Vec::new();
        for part in v.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let nums = parse_integers(part).map_err(|msg| Error::Parse {
                line,
                field: key.to_string(),
                msg,
            })?;
            check_residues(&nums, field, line, key)?;
            if nums.len() != ambient {
                return Err(Error::Parse {
                    line,
                    field: key.to_string(),
                    msg: format!("basis row has {} entries, expected {}", nums.len(), ambient),
                });
            }
            rows.push(nums.iter().map(|&x| x as u32).collect());
        }
        Ok(Subspace::span(field, ambient, &rows))
    }
}

fn parse_integers(v: &str) -> std::result::Result<Vec<i64>, String> {
    v.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| format!("`{}` is not an integer", t))
        })
        .collect()
}

fn check_residues(nums: &[i64], field: Fp, line: usize, key: &str) -> Result<()> {
    if let Some(bad) = nums.iter().find(|&&x| x < 0 || x >= field.p() as i64) {
        return Err(Error::Parse {
            line,
            field: key.to_string(),
            msg: format!("entry {} is not a residue mod {}", bad, field.p()),
        });
    }
    Ok(())
}

fn parse_flags(fields: &Fields) -> Result<Flags> {
    let (line, v) = fields.get("flags")?;
    let mut flags = Flags::default();
    for tok in v.split_whitespace() {
        let (k, val) = tok.split_once('=').ok_or_else(|| Error::Parse {
            line,
            field: "flags".into(),
            msg: format!("expected name=bool, got `{}`", tok),
        })?;
        let b = match val {
            "true" => true,
            "false" => false,
            _ => {
                return Err(Error::Parse {
                    line,
                    field: "flags".into(),
                    msg: format!("`{}` is not a bool", val),
                })
            }
        };
        match k {
            "a_sum_two_squares" => flags.a_sum_two_squares = b,
            "xi_is_norm" => flags.xi_is_norm = b,
            _ => {
                return Err(Error::Parse {
                    line,
                    field: "flags".into(),
                    msg: format!("unknown flag `{}`", k),
                })
            }
        }
    }
    Ok(flags)
}

pub fn model_from_text(text: &str) -> Result<ExtensionModel> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            line: 0,
            field: "format".into(),
            msg: "empty model file".into(),
        });
    }
    let fields = Fields::parse(text)?;
    let (line, fmt) = fields.get("format")?;
    if fmt != MODEL_FORMAT {
        return Err(Error::Parse {
            line,
            field: "format".into(),
            msg: format!("expected `{}`, got `{}`", MODEL_FORMAT, fmt),
        });
    }
    let (p_line, _) = fields.get("p")?;
    let field = Fp::new(fields.usize("p")? as u32).map_err(|e| Error::Parse {
        line: p_line,
        field: "p".into(),
        msg: e.to_string(),
    })?;
    let dim_a = fields.usize("dimA")?;
    let dim_b = fields.usize("dimB")?;
    let sigma = fields.matrix("sigma", field, dim_a, dim_a)?;
    let module = CyclicModule::new(sigma).map_err(|e| Error::Parse {
        line: fields.get("sigma").map(|x| x.0).unwrap_or(0),
        field: "sigma".into(),
        msg: e.to_string(),
    })?;
    let i = fields.matrix("i", field, dim_a, dim_b)?;
    let n = fields.matrix("N", field, dim_b, dim_a)?;
    let k_a = fields.subspace("K_a", field, dim_b)?;
    let k_xi = fields.subspace("K_xi", field, dim_b)?;
    let flags = parse_flags(&fields)?;
    let provenance = fields
        .get("provenance")
        .map(|(_, v)| v.to_string())
        .unwrap_or_default();
    ExtensionModel::new(module, dim_b, i, n, k_a, k_xi, flags, provenance)
}

/// Manifest of a degree tower; the per-degree models are written separately
/// as `degree_<n>.h90` next to it.
pub fn tower_manifest(t: &DegreeTower) -> String {
    let mut out = String::new();
    writeln!(out, "format: {}", TOWER_FORMAT).unwrap();
    writeln!(out, "descriptor: {}", t.descriptor).unwrap();
    writeln!(out, "p: {}", t.field.p()).unwrap();
    writeln!(out, "n_max: {}", t.n_max).unwrap();
    writeln!(
        out,
        "cd: {}",
        t.cd.map_or("inf".to_string(), |c| c.to_string())
    )
    .unwrap();
    writeln!(out, "b_dims: {}", join_entries(&t.b_dims.iter().map(|&d| d as u32).collect::<Vec<_>>())).unwrap();
    writeln!(out, "root_class: {}", join_entries(&t.root_class)).unwrap();
    for (k, m) in t.cup_a.iter().enumerate() {
        writeln!(out, "cup_a {}: {}", k + 1, join_entries(m.entries())).unwrap();
    }
    for (k, m) in t.cup_xi.iter().enumerate() {
        writeln!(out, "cup_xi {}: {}", k + 1, join_entries(m.entries())).unwrap();
    }
    for n in 1..=t.n_max {
        writeln!(out, "model {}: degree_{}.h90", n, n).unwrap();
    }
    out.lines()
        .map(|l| l.trim_end())
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Writes a tower as `manifest.txt` plus one model file per degree.
pub fn write_tower(t: &DegreeTower, dir: &std::path::Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("manifest.txt"), tower_manifest(t))?;
    for (k, m) in t.models.iter().enumerate() {
        std::fs::write(dir.join(format!("degree_{}.h90", k + 1)), model_to_text(m))?;
    }
    Ok(())
}

/// Reads a tower written by [`write_tower`].
pub fn read_tower(dir: &std::path::Path) -> Result<DegreeTower> {
    let io_err = |e: std::io::Error, what: &str| Error::Parse {
        line: 0,
        field: what.to_string(),
        msg: e.to_string(),
    };
    let text = std::fs::read_to_string(dir.join("manifest.txt"))
        .map_err(|e| io_err(e, "manifest.txt"))?;
    let fields = Fields::parse(&text)?;
    let (line, fmt) = fields.get("format")?;
    if fmt != TOWER_FORMAT {
        return Err(Error::Parse {
            line,
            field: "format".into(),
            msg: format!("expected `{}`", TOWER_FORMAT),
        });
    }
    let field = Fp::new(fields.usize("p")? as u32)?;
    let n_max = fields.usize("n_max")?;
    let (cd_line, cd_text) = fields.get("cd")?;
    let cd = if cd_text == "inf" {
        None
    } else {
        Some(cd_text.parse::<u32>().map_err(|_| Error::Parse {
            line: cd_line,
            field: "cd".into(),
            msg: "expected integer or `inf`".into(),
        })?)
    };
    let (_, dims) = fields.integers("b_dims")?;
    let b_dims: Vec<usize> = dims.iter().map(|&d| d as usize).collect();
    if b_dims.len() != n_max + 2 {
        return Err(Error::Parse {
            line: fields.get("b_dims")?.0,
            field: "b_dims".into(),
            msg: format!("expected {} entries", n_max + 2),
        });
    }
    let (_, root) = fields.integers("root_class")?;
    let mut cup_a = Vec::new();
    let mut cup_xi = Vec::new();
    for n in 1..=n_max + 1 {
        cup_a.push(fields.matrix(&format!("cup_a {}", n), field, b_dims[n], b_dims[n - 1])?);
        cup_xi.push(fields.matrix(&format!("cup_xi {}", n), field, b_dims[n], b_dims[n - 1])?);
    }
    let mut models = Vec::new();
    for n in 1..=n_max {
        let (_, name) = fields.get(&format!("model {}", n))?;
        let body = std::fs::read_to_string(dir.join(name)).map_err(|e| io_err(e, name))?;
        models.push(model_from_text(&body)?);
    }
    Ok(DegreeTower {
        descriptor: fields.get("descriptor")?.1.to_string(),
        field,
        n_max,
        models,
        b_dims,
        cup_a,
        cup_xi,
        root_class: root.iter().map(|&x| x as u32).collect(),
        cd,
    })
}
