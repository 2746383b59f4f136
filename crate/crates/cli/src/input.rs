use std::fmt;
use std::fs;
use std::path::Path;

use lfam::{io, Graph};
use sha2::{Digest, Sha256};

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Budget(String),
    Invalid(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => crate::EXIT_PARSE,
            Failure::Budget(_) => crate::EXIT_BUDGET,
            Failure::Invalid(_) => crate::EXIT_INVALID,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Budget(m) => write!(f, "budget exhausted: {m}"),
            Failure::Invalid(m) => write!(f, "invalid parameters: {m}"),
        }
    }
}

impl Failure {
    fn context(self, ctx: &str) -> Self {
        match self {
            Failure::Parse(m) => Failure::Parse(format!("{ctx}: {m}")),
            Failure::Budget(m) => Failure::Budget(format!("{ctx}: {m}")),
            Failure::Invalid(m) => Failure::Invalid(format!("{ctx}: {m}")),
        }
    }
}

impl From<lfam::Error> for Failure {
    fn from(e: lfam::Error) -> Self {
        use lfam::Error as E;
        match e {
            E::Parse(m) => Failure::Parse(m),
            E::Budget(m) => Failure::Budget(m),
            E::InvalidParams(m) => Failure::Invalid(m),
            E::FlawlessBudget { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Reads a file, mapping I/O errors to invalid parameters.
pub fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// A graph given as a file (graph6 or edge list) or inline graph6.
/// Returns the graph and the digest of the raw input.
pub fn load_graph(arg: &str) -> Result<(Graph, String), Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read_file(path)?;
        let g = io::parse_graph(&text).map_err(|e| Failure::from(e).context(arg))?;
        return Ok((g, sha256_hex(text.as_bytes())));
    }
    match io::from_graph6(arg.trim()) {
        Ok(g) => Ok((g, sha256_hex(arg.as_bytes()))),
        Err(e) => Err(Failure::Parse(format!("'{arg}' is neither a readable file nor valid graph6 ({e})"))),
    }
}

/// `C4`, `C_4`, `K5`, `K_5` (case-insensitive), else as [`load_graph`].
pub fn load_pattern(arg: &str) -> Result<(Graph, String), Failure> {
    match named_pattern(arg)? {
        Some(g) => Ok((g, sha256_hex(arg.as_bytes()))),
        None => load_graph(arg),
    }
}

fn named_pattern(s: &str) -> Result<Option<Graph>, Failure> {
    let mut chars = s.chars();
    let Some(kind) = chars.next().map(|c| c.to_ascii_uppercase()) else {
        return Ok(None);
    };
    let rest = chars.as_str();
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    let Ok(r) = rest.parse::<usize>() else {
        return Ok(None);
    };
    let g = match kind {
        'C' if r < 3 => return Err(Failure::Invalid(format!("cycle pattern needs length >= 3, got {s}"))),
        'C' => Graph::cycle(r)?,
        'K' if r == 0 => return Err(Failure::Invalid("clique pattern needs at least one vertex".into())),
        'K' => Graph::complete(r)?,
        _ => return Ok(None),
    };
    Ok(Some(g))
}
