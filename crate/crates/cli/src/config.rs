//! Parsing and validation of job configs.

use std::collections::{BTreeMap, BTreeSet};

use metahecke::gauss::PadicContext;
use metahecke::metaplectic::{Coords, Strategy, TensorVariant};
use metahecke::{CartanDatum, RootContext, Side, Twist, Weight};

use crate::CliError;

const COMMON_KEYS: &[&str] = &["type", "n", "twist", "cmd", "format", "specialization"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Records,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "table" => Some(Format::Table),
            "records" => Some(Format::Records),
            _ => None,
        }
    }
}

/// How coefficients are rendered.
#[derive(Clone, Debug)]
pub enum Specialization {
    None,
    /// `g_k -> tau`, a Laurent polynomial.
    Quantum,
    /// `tau -> sqrt(q)` and `g_k` the Gauss sums of `F_q`.
    Padic(Box<PadicContext>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    M,
    N,
    O,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlOp {
    T,
    H,
    HInv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Info,
    Kl {
        w: Vec<usize>,
        y: Option<Vec<usize>>,
        side: Side,
        twisted: bool,
    },
    ParabolicKl {
        module: ModuleKind,
        j: Vec<usize>,
        k: Vec<usize>,
        w: Vec<usize>,
        side: Side,
        twisted: bool,
    },
    DlAct {
        weight: Weight,
        word: Vec<usize>,
        op: DlOp,
    },
    Straighten {
        weight: Weight,
        coords: Coords,
        strategy: Strategy,
    },
    Kappa {
        weight: Weight,
    },
    Cs {
        weight: Weight,
    },
    Canonical {
        lambda: Weight,
        side: Side,
        coords: Coords,
    },
    Glr {
        mu: Weight,
        lambda: Weight,
        coords: Coords,
    },
    HAct {
        mu: Weight,
        lambda: Weight,
    },
    TensorCheck {
        lambda0: Weight,
        zeta: Weight,
        variant: TensorVariant,
    },
    Linkage {
        mu: Weight,
        lambda: Weight,
    },
    GaussSums {
        q: u64,
        bound: Option<u64>,
    },
    Specialize {
        coeff: String,
        q: u64,
    },
}

impl Command {
    fn needs_simply_connected(&self) -> bool {
        matches!(
            self,
            Command::Straighten { .. }
                | Command::Kappa { .. }
                | Command::Canonical { .. }
                | Command::Glr { .. }
                | Command::HAct { .. }
                | Command::TensorCheck { .. }
        )
    }
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    /// The verb as written in the config.
    pub cmd: String,
    pub ctx: RootContext,
    pub command: Command,
    pub format: Format,
    pub specialization: Specialization,
}

struct Entry {
    value: String,
    line: usize,
    column: usize,
}

/// Split one line into `key=value` tokens with their 1-based columns.
fn tokenize(line: &str, lineno: usize) -> Result<Vec<(String, Entry)>, CliError> {
    let err = |column: usize, msg: &str| CliError::Parse {
        line: lineno,
        column,
        msg: msg.into(),
    };
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        if chars[i] == '#' {
            break;
        }
        let start = i;
        while i < chars.len() && chars[i] != '=' && !chars[i].is_whitespace() && chars[i] != '#' {
            i += 1;
        }
        let key: String = chars[start..i].iter().collect();
        if i >= chars.len() || chars[i] != '=' {
            return Err(err(start + 1, &format!("expected `key=value`, found `{key}`")));
        }
        if key.is_empty() {
            return Err(err(start + 1, "missing key before `=`"));
        }
        i += 1;
        let value = if i < chars.len() && chars[i] == '"' {
            let open = i;
            i += 1;
            let vstart = i;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i >= chars.len() {
                return Err(err(open + 1, "unterminated quoted value"));
            }
            let v: String = chars[vstart..i].iter().collect();
            i += 1;
            v
        } else {
            let vstart = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
                i += 1;
            }
            chars[vstart..i].iter().collect()
        };
        out.push((
            key,
            Entry {
                value,
                line: lineno,
                column: start + 1,
            },
        ));
    }
    Ok(out)
}

/// Parse and validate a config document into jobs.
pub fn parse_config(text: &str) -> Result<Vec<JobConfig>, CliError> {
    let mut jobs: Vec<BTreeMap<String, Entry>> = Vec::new();
    let mut cur: BTreeMap<String, Entry> = BTreeMap::new();
    let mut separator_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim() == "---" {
            if cur.is_empty() {
                return Err(CliError::Parse {
                    line: lineno,
                    column: 1,
                    msg: "empty job before separator".into(),
                });
            }
            jobs.push(std::mem::take(&mut cur));
            separator_line = lineno;
            continue;
        }
        for (key, entry) in tokenize(line, lineno)? {
            if let Some(prev) = cur.get(&key) {
                return Err(CliError::Parse {
                    line: entry.line,
                    column: entry.column,
                    msg: format!("duplicate key `{key}` (first given on line {})", prev.line),
                });
            }
            cur.insert(key, entry);
        }
    }
    if cur.is_empty() {
        let (line, msg) = if jobs.is_empty() {
            (1, "empty input")
        } else {
            (separator_line, "empty job after separator")
        };
        return Err(CliError::Parse {
            line,
            column: 1,
            msg: msg.into(),
        });
    }
    jobs.push(cur);
    jobs.iter().map(validate).collect()
}

/// Typed access to the entries of one job, tracking which keys were used.
struct Fields<'a> {
    map: &'a BTreeMap<String, Entry>,
    used: BTreeSet<&'static str>,
    rank: usize,
}

impl<'a> Fields<'a> {
    fn get(&mut self, key: &'static str) -> Option<&'a str> {
        self.used.insert(key);
        self.map.get(key).map(|e| e.value.as_str())
    }

    fn require(&mut self, key: &'static str) -> Result<&'a str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::validation(key, "required for this command"))
    }

    fn weight(&mut self, key: &'static str) -> Result<Weight, CliError> {
        let v = self.require(key)?;
        let w: Weight = v
            .split(',')
            .map(|s| s.trim().parse::<i32>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::validation(key, format!("`{v}` is not a comma-separated coweight")))?;
        if w.len() != self.rank {
            return Err(CliError::validation(
                key,
                format!("coweight has {} coordinates, the rank is {}", w.len(), self.rank),
            ));
        }
        Ok(w)
    }

    fn labels(&mut self, key: &'static str, v: &str, affine: bool) -> Result<Vec<usize>, CliError> {
        let v = v.trim();
        if v.is_empty() || v == "e" {
            return Ok(vec![]);
        }
        v.split(',')
            .map(|s| {
                let l: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| CliError::validation(key, format!("`{s}` is not a node label")))?;
                match l {
                    0 if affine => Ok(self.rank),
                    l if (1..=self.rank).contains(&l) => Ok(l - 1),
                    _ => Err(CliError::validation(key, format!("node {l} does not exist"))),
                }
            })
            .collect()
    }

    fn word(&mut self, key: &'static str, affine: bool) -> Result<Vec<usize>, CliError> {
        let v = self.require(key)?;
        self.labels(key, v, affine)
    }

    fn choice<T: Copy>(
        &mut self,
        key: &'static str,
        default: T,
        options: &[(&str, T)],
    ) -> Result<T, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => options
                .iter()
                .find(|(name, _)| *name == v)
                .map(|(_, t)| *t)
                .ok_or_else(|| {
                    let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                    CliError::validation(key, format!("`{v}` is not one of {}", names.join(", ")))
                }),
        }
    }

    fn side(&mut self) -> Result<Side, CliError> {
        self.choice("side", Side::Minus, &[("minus", Side::Minus), ("plus", Side::Plus)])
    }

    fn coords(&mut self) -> Result<Coords, CliError> {
        self.choice("coords", Coords::Y, &[("Y", Coords::Y), ("v", Coords::V)])
    }

    fn twisted(&mut self) -> Result<bool, CliError> {
        self.choice("group", true, &[("twisted", true), ("untwisted", false)])
    }

    fn number<T: std::str::FromStr>(&mut self, key: &'static str) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::validation(key, format!("`{v}` is not a valid number"))),
        }
    }
}

fn validate(map: &BTreeMap<String, Entry>) -> Result<JobConfig, CliError> {
    let mut f = Fields {
        map,
        used: BTreeSet::new(),
        rank: 0,
    };
    let ty = f.require("type")?;
    let datum = CartanDatum::parse(ty).map_err(|e| CliError::invalid("type", e))?;
    f.rank = datum.rank;
    let n: u32 = f.number("n")?.unwrap_or(1);
    if n == 0 {
        return Err(CliError::validation("n", "must be positive"));
    }
    let twist = match f.get("twist") {
        None | Some("primitive") => Twist::Primitive,
        Some(v) => Twist::Explicit(
            v.split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::validation("twist", format!("`{v}` is neither `primitive` nor a Q-vector")))?,
        ),
    };
    let ctx = RootContext::new(datum, twist, n).map_err(|e| CliError::invalid("twist", e))?;
    let format = match f.get("format") {
        None => Format::Records,
        Some(v) => Format::parse(v)
            .ok_or_else(|| CliError::validation("format", format!("`{v}` is not `table` or `records`")))?,
    };
    let specialization = match f.get("specialization") {
        None | Some("none") => Specialization::None,
        Some("quantum") => Specialization::Quantum,
        Some(v) => {
            let q = v
                .strip_prefix("padic(")
                .and_then(|s| s.strip_suffix(')'))
                .or_else(|| v.strip_prefix("padic:"))
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| {
                    CliError::validation("specialization", format!("`{v}` is not none, quantum or padic(q)"))
                })?;
            let p = PadicContext::new(q, n).map_err(|e| CliError::invalid("specialization", e))?;
            Specialization::Padic(Box::new(p))
        }
    };
    let cmd = f.require("cmd")?.to_string();
    let finite: Vec<usize> = (0..f.rank).collect();
    let command = match cmd.as_str() {
        "info" => Command::Info,
        "kl" => Command::Kl {
            w: f.word("w", true)?,
            y: match f.get("y") {
                None => None,
                Some(v) => Some(f.labels("y", v, true)?),
            },
            side: f.side()?,
            twisted: f.twisted()?,
        },
        "parabolic-kl" => {
            let module = f.choice(
                "module",
                ModuleKind::M,
                &[("m", ModuleKind::M), ("n", ModuleKind::N), ("o", ModuleKind::O)],
            )?;
            let j = f.word("j", true)?;
            let k = match f.get("k") {
                None => finite,
                Some(v) => f.labels("k", v, true)?,
            };
            Command::ParabolicKl {
                module,
                j,
                k,
                w: f.word("w", true)?,
                side: f.side()?,
                twisted: f.twisted()?,
            }
        }
        "dl-act" => Command::DlAct {
            weight: f.weight("weight")?,
            word: f.word("word", false)?,
            op: f.choice("op", DlOp::T, &[("t", DlOp::T), ("h", DlOp::H), ("h-inv", DlOp::HInv)])?,
        },
        "straighten" => Command::Straighten {
            weight: f.weight("weight")?,
            coords: f.coords()?,
            strategy: f.choice(
                "strategy",
                Strategy::MostNegativeFirst,
                &[
                    ("most-negative", Strategy::MostNegativeFirst),
                    ("lowest-weight", Strategy::LowestWeightFirst),
                ],
            )?,
        },
        "kappa" => Command::Kappa {
            weight: f.weight("weight")?,
        },
        "cs" => Command::Cs {
            weight: f.weight("weight")?,
        },
        "canonical" => Command::Canonical {
            lambda: f.weight("lambda")?,
            side: f.side()?,
            coords: f.coords()?,
        },
        "glr" => Command::Glr {
            mu: f.weight("mu")?,
            lambda: f.weight("lambda")?,
            coords: f.coords()?,
        },
        "h-act" => Command::HAct {
            mu: f.weight("mu")?,
            lambda: f.weight("lambda")?,
        },
        "tensor-check" => Command::TensorCheck {
            lambda0: f.weight("lambda0")?,
            zeta: f.weight("zeta")?,
            variant: f.choice(
                "variant",
                TensorVariant::Minus,
                &[("minus", TensorVariant::Minus), ("plus-dagger", TensorVariant::PlusDagger)],
            )?,
        },
        "linkage" => Command::Linkage {
            mu: f.weight("mu")?,
            lambda: f.weight("lambda")?,
        },
        "gauss-sums" => Command::GaussSums {
            q: f.number("q")?.ok_or_else(|| CliError::validation("q", "required for this command"))?,
            bound: f.number("bound")?,
        },
        "specialize" => Command::Specialize {
            coeff: f.require("coeff")?.to_string(),
            q: f.number("q")?.ok_or_else(|| CliError::validation("q", "required for this command"))?,
        },
        other => return Err(CliError::validation("cmd", format!("unknown command `{other}`"))),
    };
    for key in map.keys() {
        if !f.used.contains(key.as_str()) && !COMMON_KEYS.contains(&key.as_str()) {
            return Err(CliError::validation(key, format!("unknown key for `{cmd}`")));
        }
    }
    if command.needs_simply_connected() && !ctx.simply_connected {
        return Err(CliError::invalid("cmd", metahecke::Error::TwistNotSimplyConnected));
    }
    Ok(JobConfig {
        cmd,
        ctx,
        command,
        format,
        specialization,
    })
}
