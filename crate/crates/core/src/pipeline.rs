//! End-to-end sequences between two 7-colourings of a planar graph.
//!
//! Each endpoint is first reduced to a 5-colouring (colour 7 removed with
//! the mad reduction, then colour 6 with the planar reduction). A partition
//! `V = I1 ∪ I2 ∪ A` is then used to park `I1` on colour 7 and `I2` on
//! colour 6, after which the two 5-colourings of the 2-degenerate `G[A]` are
//! joined. The β side is built forwards and reversed.

use serde::Serialize;

use crate::connect::{connect_colourings_with, ConnectBudget, ConnectReport};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Colour, Colouring, Graph};
use crate::mad::{reduce_one_colour_mad_with_report, MadReport};
use crate::moves::{concat, reverse, verify_sequence, Move, Sequence};
use crate::partition::{corollary_partition, CertifiedPartition, PartitionMethod, PartitionSearchConfig};
use crate::planar::{reduce_planar_6_to_5_with_report, PlanarReport};

pub const PALETTE: Colour = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub partition: PartitionSearchConfig,
    pub connect_budget: ConnectBudget,
    /// Reduce the two endpoints on separate threads.
    pub parallel: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            partition: PartitionSearchConfig::default(),
            connect_budget: ConnectBudget::default(),
            parallel: true,
        }
    }
}

/// Flat summary of one run. Phase lengths are counted before adjacent moves
/// of the same vertex are merged, so `total = total_raw - coalesced`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub m: usize,
    pub alpha_mad: usize,
    pub alpha_planar: usize,
    pub alpha_pin: usize,
    pub connect: usize,
    pub beta_pin: usize,
    pub beta_planar: usize,
    pub beta_mad: usize,
    pub total_raw: usize,
    pub coalesced: usize,
    pub total: usize,
    /// `log2(total) / sqrt(n)`, zero when there is nothing to measure.
    pub fitted_exponent: f64,
    pub i1: usize,
    pub i2: usize,
    pub a: usize,
    pub partition_method: String,
    pub mad_asserts_passed: usize,
    pub planar_levels: usize,
    pub swap_boundaries_checked: usize,
    pub connect_within_soft_bound: bool,
}

/// Per-phase reports, for callers that want more than the flat summary.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineDetails {
    pub alpha_mad: MadReport,
    pub alpha_planar: PlanarReport,
    pub beta_mad: MadReport,
    pub beta_planar: PlanarReport,
    pub partition: CertifiedPartition,
    pub connect: ConnectReport,
    /// Phase sequences in assembly order, before coalescing.
    pub phases: Vec<Sequence>,
}

pub fn seven_colour_path(g: &Graph, alpha: &Colouring, beta: &Colouring) -> Result<(Sequence, PipelineReport)> {
    seven_colour_path_with(g, alpha, beta, &PipelineConfig::default()).map(|(s, r, _)| (s, r))
}

pub fn seven_colour_path_with(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
    cfg: &PipelineConfig,
) -> Result<(Sequence, PipelineReport, PipelineDetails)> {
    let (n, m) = (g.n(), g.m());
    if n >= 3 && m > 3 * n - 6 {
        return Err(Error::InvalidParameter(format!(
            "{m} edges on {n} vertices exceeds 3n - 6, so the graph is not planar"
        )));
    }
    let alpha = alpha.with_palette(PALETTE)?;
    let beta = beta.with_palette(PALETTE)?;
    alpha.check_proper(g)?;
    beta.check_proper(g)?;

    let (a_side, b_side) = if cfg.parallel {
        std::thread::scope(|s| {
            let b = s.spawn(|| to_five(g, &beta));
            let a = to_five(g, &alpha);
            (a, b.join().expect("reduction thread panicked"))
        })
    } else {
        (to_five(g, &alpha), to_five(g, &beta))
    };
    let (a_mad, a_mad_rep, a_planar, a_planar_rep) = a_side?;
    let (b_mad, b_mad_rep, b_planar, b_planar_rep) = b_side?;

    let partition = corollary_partition(g, &cfg.partition)?;
    let (i1, i2, rest) = (partition.part(0), partition.part(1), partition.part(2));

    let a_pin = pin(g, &a_planar.end(), &partition)?;
    let b_pin = pin(g, &b_planar.end(), &partition)?;

    let h = induced_subgraph(g, rest)?;
    let from = a_pin.end().restrict(rest).with_palette(5)?;
    let to = b_pin.end().restrict(rest).with_palette(5)?;
    let (joined, connect_rep) = connect_colourings_with(&h, 2, 5, &from, &to, &cfg.connect_budget)?;
    let joined = Sequence::from_moves(a_pin.end(), joined.into_moves());

    let phases = vec![
        a_mad,
        a_planar,
        a_pin,
        joined,
        reverse(&b_pin),
        reverse(&b_planar),
        reverse(&b_mad),
    ];
    let mut raw = Sequence::empty(alpha.clone());
    for p in &phases {
        raw = concat(&raw, p)?;
    }
    let seq = raw.coalesce();
    let report = verify_sequence(g, &seq, Some(&beta));
    if !report.is_ok() || seq.start() != &alpha {
        return Err(Error::EndpointMismatch);
    }

    let total = seq.len();
    let fitted_exponent = if total > 1 && n > 0 {
        (total as f64).log2() / (n as f64).sqrt()
    } else {
        0.0
    };
    let summary = PipelineReport {
        n,
        m,
        alpha_mad: phases[0].len(),
        alpha_planar: phases[1].len(),
        alpha_pin: phases[2].len(),
        connect: phases[3].len(),
        beta_pin: phases[4].len(),
        beta_planar: phases[5].len(),
        beta_mad: phases[6].len(),
        total_raw: raw.len(),
        coalesced: raw.len() - total,
        total,
        fitted_exponent,
        i1: i1.len(),
        i2: i2.len(),
        a: rest.len(),
        partition_method: method_name(&partition.method),
        mad_asserts_passed: a_mad_rep.asserts_passed + b_mad_rep.asserts_passed,
        planar_levels: a_planar_rep.levels.len() + b_planar_rep.levels.len(),
        swap_boundaries_checked: a_planar_rep.swap_boundaries_checked + b_planar_rep.swap_boundaries_checked,
        connect_within_soft_bound: connect_rep.within_soft_bound,
    };
    let details = PipelineDetails {
        alpha_mad: a_mad_rep,
        alpha_planar: a_planar_rep,
        beta_mad: b_mad_rep,
        beta_planar: b_planar_rep,
        partition,
        connect: connect_rep,
        phases,
    };
    Ok((seq, summary, details))
}

type Side = (Sequence, MadReport, Sequence, PlanarReport);

fn to_five(g: &Graph, c: &Colouring) -> Result<Side> {
    let (mad, mad_rep) = reduce_one_colour_mad_with_report(g, 5, c)?;
    let (planar, planar_rep) = reduce_planar_6_to_5_with_report(g, &mad.end())?;
    let planar = planar.with_palette(PALETTE)?;
    if planar.start() != &mad.end() {
        return Err(Error::EndpointMismatch);
    }
    Ok((mad, mad_rep, planar, planar_rep))
}

/// Moves `I1` to colour 7 and then `I2` to colour 6, in ascending order.
fn pin(g: &Graph, gamma: &Colouring, p: &CertifiedPartition) -> Result<Sequence> {
    if gamma.max_colour() > 5 {
        return Err(Error::Certificate(format!(
            "reduced colouring still uses colour {}",
            gamma.max_colour()
        )));
    }
    let mut moves = Vec::new();
    for (part, colour) in [(p.part(0), 7), (p.part(1), 6)] {
        for &v in part {
            moves.push(Move::new(v, gamma[v], colour)?);
        }
    }
    let seq = Sequence::from_moves(gamma.clone(), moves);
    verify_sequence(g, &seq, None).into_result()?;
    Ok(seq)
}

fn method_name(m: &PartitionMethod) -> String {
    match m {
        PartitionMethod::Bipartite => "bipartite".into(),
        PartitionMethod::DegeneracyGreedy => "degeneracy-greedy".into(),
        PartitionMethod::Randomized { attempt } => format!("randomized-{attempt}"),
        PartitionMethod::Backtracking { nodes } => format!("backtracking-{nodes}"),
        PartitionMethod::Supplied => "supplied".into(),
        PartitionMethod::Composite => "composite".into(),
    }
}
