use clap::{Args, ValueEnum};
use lfam::constructions::{self as c, ConstructionOutput, CrossEdges};
use lfam::factorization::OneFactorization;
use lfam::Graph;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Name {
    #[value(name = "turan")]
    #[serde(rename = "turan")]
    Turan,
    #[value(name = "clique-join-turan")]
    #[serde(rename = "clique-join-turan")]
    CliqueJoinTuran,
    #[value(name = "cycle-blowup")]
    #[serde(rename = "cycle-blowup")]
    CycleBlowup,
    #[value(name = "cycle-blowup-22")]
    #[serde(rename = "cycle-blowup-22")]
    CycleBlowup22,
    #[value(name = "cycle-blowup-13")]
    #[serde(rename = "cycle-blowup-13")]
    CycleBlowup13,
    #[value(name = "path-blowup")]
    #[serde(rename = "path-blowup")]
    PathBlowup,
    #[value(name = "path-blowup-clique-s2")]
    #[serde(rename = "path-blowup-clique-s2")]
    PathBlowupCliqueS2,
    #[value(name = "staircase")]
    #[serde(rename = "staircase")]
    Staircase,
    #[value(name = "flawless-triple")]
    #[serde(rename = "flawless-triple")]
    FlawlessTriple,
    #[value(name = "flawless-expansion")]
    #[serde(rename = "flawless-expansion")]
    FlawlessExpansion,
}

impl Name {
    pub fn label(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned()
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cross {
    /// Join blocks of the same matching across distinct superscripts.
    #[default]
    Distinct,
    /// Join blocks of the same matching at equal superscripts.
    Same,
}

/// Generator parameters; each generator reads the subset it needs.
#[derive(Args, Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Params {
    /// Construction to build.
    #[arg(value_enum)]
    pub name: Name,
    /// Requested order.
    #[arg(long)]
    pub n: Option<usize>,
    /// Parts (turan) or clique size (clique-join-turan).
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r_minus_t: Option<usize>,
    /// Number of singleton positions.
    #[arg(long)]
    pub l1: Option<usize>,
    /// Number of blown-up positions.
    #[arg(long)]
    pub s: Option<usize>,
    /// Path length (path-blowup, staircase) or half the base order (flawless-expansion).
    #[arg(long)]
    pub d: Option<usize>,
    /// 1-based singleton positions, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub positions: Option<Vec<usize>>,
    /// Staircase width or flawless-triple order.
    #[arg(long)]
    pub l: Option<usize>,
    /// Staircase path lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub path_lengths: Option<Vec<usize>>,
    /// Clique size of each expansion block.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub cross: Cross,
}

pub enum Built {
    Construction(ConstructionOutput),
    Turan { n: usize, t: usize, graph: Graph },
    Triple(OneFactorization),
}

impl Built {
    pub fn graph(&self) -> &Graph {
        match self {
            Built::Construction(c) => &c.graph,
            Built::Turan { graph, .. } => graph,
            Built::Triple(f) => &f.host,
        }
    }

    /// Sidecar metadata written next to the graph6 file.
    pub fn metadata(&self) -> Value {
        match self {
            Built::Construction(c) => serde_json::to_value(c).expect("serializable"),
            Built::Turan { n, t, graph } => json!({
                "name": "turan",
                "graph": graph,
                "requestedOrder": n,
                "actualOrder": graph.order(),
                "t": t,
            }),
            Built::Triple(f) => json!({
                "name": "flawless-triple",
                "host": f.host,
                "factors": f.factors,
            }),
        }
    }
}

fn need(v: Option<usize>, flag: &str, name: Name) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Invalid(format!("{} needs --{flag}", name.label())))
}

pub fn build(p: &Params) -> Result<Built, Failure> {
    let name = p.name;
    let n = || need(p.n, "n", name);
    let built = match name {
        Name::Turan => {
            let (n, t) = (n()?, need(p.t, "t", name)?);
            Built::Turan { n, t, graph: c::turan(n, t)? }
        }
        Name::CliqueJoinTuran => {
            Built::Construction(c::clique_join_turan(need(p.t, "t", name)?, need(p.r_minus_t, "r-minus-t", name)?, n()?)?)
        }
        Name::CycleBlowup => Built::Construction(c::cycle_blowup(
            need(p.l1, "l1", name)?,
            need(p.s, "s", name)?,
            n()?,
            p.positions.as_deref(),
        )?),
        Name::CycleBlowup22 => Built::Construction(c::cycle_blowup_22(n()?)?),
        Name::CycleBlowup13 => Built::Construction(c::cycle_blowup_13(n()?)?),
        Name::PathBlowup => {
            let positions = p
                .positions
                .as_deref()
                .ok_or_else(|| Failure::Invalid("path-blowup needs --positions".into()))?;
            Built::Construction(c::path_blowup(
                need(p.l1, "l1", name)?,
                need(p.s, "s", name)?,
                need(p.d, "d", name)?,
                n()?,
                positions,
            )?)
        }
        Name::PathBlowupCliqueS2 => {
            Built::Construction(c::path_blowup_clique_s2(need(p.l1, "l1", name)?, need(p.d, "d", name)?, n()?)?)
        }
        Name::Staircase => {
            let (l, d) = (need(p.l, "l", name)?, need(p.d, "d", name)?);
            // default order gives k = 2
            let n = p.n.unwrap_or(l + 2 * d);
            Built::Construction(c::staircase(l, d, n, p.path_lengths.as_deref())?)
        }
        Name::FlawlessTriple => Built::Triple(c::flawless_triple(need(p.l, "l", name)?)?),
        Name::FlawlessExpansion => {
            let (d, k) = (need(p.d, "d", name)?, need(p.k, "k", name)?);
            let base = c::flawless_triple(2 * d)?;
            let cross = match p.cross {
                Cross::Distinct => CrossEdges::DistinctSuperscripts,
                Cross::Same => CrossEdges::SameSuperscript,
            };
            Built::Construction(c::flawless_expansion(&base, d, k, cross)?)
        }
    };
    Ok(built)
}
