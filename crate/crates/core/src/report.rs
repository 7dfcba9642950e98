//! End-to-end pipeline per (pair, q) and the machine-readable report layer:
//! JSON documents with a stable schema, a flat CSV projection, and an
//! order-preserving parallel batch runner.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{hecke_profile, rational_string, HeckeProfile};
use crate::chartab::{
    character_table, decompose, permutation_character, CharacterTable, Decomposition,
    PermutationCharacter,
};
use crate::cosets::{
    check_full_fixity_forces_commutative, check_mass_conservation, enumerate_double_cosets,
    hecke_structure, semisimple_coset_report, sigma_on_cosets, CosetDiagnostics, DoubleCosets,
    HeckeAlgebra, SigmaOnCosets, DEFAULT_COSET_CAP,
};
use crate::error::Error;
use crate::matgrp::{conjugacy_classes, Classes, DEFAULT_GROUP_CAP};
use crate::sympair::{build_pair, SymPair};
use crate::Result;

/// Enumeration limits for one pipeline run.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub group: u64,
    pub cosets: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            group: DEFAULT_GROUP_CAP,
            cosets: DEFAULT_COSET_CAP,
        }
    }
}

/// Everything the pipeline computes for one (pair, q), with full structure.
pub struct Pipeline {
    pub pair: SymPair,
    pub cosets: DoubleCosets,
    pub sigma: SigmaOnCosets,
    pub z_fixed_dim: usize,
    pub hecke: HeckeAlgebra,
    pub commutative: bool,
    pub classes: Classes,
    pub table: CharacterTable,
    pub pi: PermutationCharacter,
    pub decomp: Decomposition,
    pub profile: HeckeProfile,
    pub diagnostics: CosetDiagnostics,
}

/// Run every stage for one pair at one field size, cross-checking the
/// convolution side against the character side at each joint.
pub fn run_pipeline(pair_id: &str, q: u64, caps: &Caps) -> Result<Pipeline> {
    let pair = build_pair(pair_id, q, caps.group)?;
    let cosets = enumerate_double_cosets(&pair.group, &pair.h_in_g);
    let sigma = sigma_on_cosets(&pair.group, &cosets, &pair.sigma_perm)?;
    let z_fixed_dim = sigma.fixed_space_dim()?;

    let hecke = hecke_structure(&pair.group, &cosets, caps.cosets)?;
    check_mass_conservation(&hecke, &cosets)?;
    let commutative = hecke.is_commutative();
    check_full_fixity_forces_commutative(&sigma, &hecke)?;

    let classes = conjugacy_classes(&pair.group);
    let table = character_table(&pair.group, &classes)?;
    let pi = permutation_character(&pair.group, &pair.h_in_g, &classes);
    if pi.degree != pair.index() as u64 {
        return Err(Error::Invariant(
            "permutation degree disagrees with the subgroup index".into(),
        ));
    }
    let decomp = decompose(&table, &classes, &pi)?;
    if decomp.sum_mult_sq != cosets.count() as u64 {
        return Err(Error::Invariant(
            "multiplicity squares do not sum to the double coset count".into(),
        ));
    }
    let mult_free = decomp.constituents.iter().all(|c| c.mult <= 1);
    if commutative != mult_free {
        return Err(Error::Invariant(
            "convolution commutativity disagrees with multiplicity-freeness".into(),
        ));
    }

    let mults: Vec<u64> = decomp.constituents.iter().map(|c| c.mult).collect();
    let profile = hecke_profile(&mults, cosets.count() as u64, z_fixed_dim as u64)?;
    let diagnostics = semisimple_coset_report(&pair, &cosets, &sigma)?;
    Ok(Pipeline {
        pair,
        cosets,
        sigma,
        z_fixed_dim,
        hecke,
        commutative,
        classes,
        table,
        pi,
        decomp,
        profile,
        diagnostics,
    })
}

/// One constituent row in a report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MultiplicityRow {
    pub irrep: usize,
    pub degree: u64,
    pub mult: u64,
}

/// Flat, serializable summary of one pipeline run.  Rationals are reduced
/// "p/q" strings so documents stay exact and byte-stable.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairReport {
    pub pair_id: String,
    pub q: u64,
    pub trusted: bool,
    pub g_order: u64,
    pub h_order: u64,
    pub index: u64,
    pub z_size: u64,
    pub z_sigma_fixed: u64,
    pub z_fixed_dim: u64,
    pub epsilon: String,
    pub hecke_commutative: bool,
    pub splitting_prime: u64,
    pub multiplicities: Vec<MultiplicityRow>,
    pub num_constituents: u64,
    pub num_mult_one: u64,
    pub mult_one_fraction: String,
    pub eps_gelfand_bound: String,
    pub bound_holds: bool,
    pub count_bound: u64,
    pub count_bound_holds: bool,
    /// Counts indexed by [has semisimple symmetrization][sigma-fixed].
    pub semisimple_contingency: [[u64; 2]; 2],
    pub ss_counterexamples: u64,
}

impl PairReport {
    pub fn from_pipeline(p: &Pipeline) -> PairReport {
        PairReport {
            pair_id: p.pair.id.clone(),
            q: p.pair.q,
            trusted: p.pair.trusted,
            g_order: p.pair.group_order() as u64,
            h_order: p.pair.subgroup_order() as u64,
            index: p.pair.index() as u64,
            z_size: p.cosets.count() as u64,
            z_sigma_fixed: p.sigma.fixed_count as u64,
            z_fixed_dim: p.z_fixed_dim as u64,
            epsilon: rational_string(&p.profile.epsilon),
            hecke_commutative: p.commutative,
            splitting_prime: p.table.ell,
            multiplicities: p
                .decomp
                .constituents
                .iter()
                .map(|c| MultiplicityRow {
                    irrep: c.irrep,
                    degree: c.degree,
                    mult: c.mult,
                })
                .collect(),
            num_constituents: p.decomp.num_constituents() as u64,
            num_mult_one: p.decomp.num_mult_one as u64,
            mult_one_fraction: rational_string(&p.profile.mult_one_fraction),
            eps_gelfand_bound: rational_string(&p.profile.fraction_bound),
            bound_holds: p.profile.fraction_holds,
            count_bound: p.profile.count_bound,
            count_bound_holds: p.profile.count_holds,
            semisimple_contingency: p.diagnostics.contingency,
            ss_counterexamples: p.diagnostics.counterexamples.len() as u64,
        }
    }

    /// The reported fraction, parsed back to an exact rational.
    pub fn fraction(&self) -> BigRational {
        parse_rational(&self.mult_one_fraction)
    }

    /// The reported 1 - 4 eps bound, parsed back to an exact rational.
    pub fn bound(&self) -> BigRational {
        parse_rational(&self.eps_gelfand_bound)
    }
}

fn parse_rational(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((n, d)) => BigRational::new(
            n.parse::<BigInt>().expect("rational numerator"),
            d.parse::<BigInt>().expect("rational denominator"),
        ),
        None => BigRational::from_integer(s.parse::<BigInt>().expect("rational integer")),
    }
}

/// Invocation settings echoed into every document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunConfig {
    pub pairs: Vec<String>,
    pub qs: Vec<u64>,
    pub seed: u64,
    pub cap_group: u64,
    pub cap_cosets: usize,
}

/// Top-level report document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Document {
    pub schema_version: u32,
    pub config: RunConfig,
    pub reports: Vec<PairReport>,
}

pub const SCHEMA_VERSION: u32 = 1;

/// Run the (pair, q) grid in a worker pool.  Job order is the cross product
/// in config order; results come back in that order regardless of
/// scheduling.  On failure the successful prefix of reports is returned
/// alongside the first error in job order, so callers can flush partial
/// output before aborting.
pub fn run_batch(config: &RunConfig) -> (Document, Option<Error>) {
    let caps = Caps {
        group: config.cap_group,
        cosets: config.cap_cosets,
    };
    let jobs: Vec<(String, u64)> = config
        .pairs
        .iter()
        .flat_map(|p| config.qs.iter().map(move |&q| (p.clone(), q)))
        .collect();
    let results: Vec<Result<PairReport>> = jobs
        .par_iter()
        .map(|(pair_id, q)| run_pipeline(pair_id, *q, &caps).map(|p| PairReport::from_pipeline(&p)))
        .collect();
    let mut reports = Vec::new();
    let mut first_err = None;
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => {
                first_err = Some(e);
                break;
            }
        }
    }
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        reports,
    };
    (doc, first_err)
}

/// Canonical JSON rendering: pretty, two-space indent, trailing newline.
pub fn render_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization");
    s.push('\n');
    s
}

/// Flat CSV projection of the scalar fields; the multiplicity vector and the
/// config header are JSON-only.
pub fn render_csv(doc: &Document) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "pair_id",
        "q",
        "trusted",
        "g_order",
        "h_order",
        "index",
        "z_size",
        "z_sigma_fixed",
        "z_fixed_dim",
        "epsilon",
        "hecke_commutative",
        "splitting_prime",
        "num_constituents",
        "num_mult_one",
        "mult_one_fraction",
        "eps_gelfand_bound",
        "bound_holds",
        "count_bound",
        "count_bound_holds",
        "ss_and_fixed",
        "ss_not_fixed",
        "not_ss_fixed",
        "not_ss_not_fixed",
        "ss_counterexamples",
    ])
    .map_err(csv_err)?;
    for r in &doc.reports {
        w.write_record([
            r.pair_id.clone(),
            r.q.to_string(),
            r.trusted.to_string(),
            r.g_order.to_string(),
            r.h_order.to_string(),
            r.index.to_string(),
            r.z_size.to_string(),
            r.z_sigma_fixed.to_string(),
            r.z_fixed_dim.to_string(),
            r.epsilon.clone(),
            r.hecke_commutative.to_string(),
            r.splitting_prime.to_string(),
            r.num_constituents.to_string(),
            r.num_mult_one.to_string(),
            r.mult_one_fraction.clone(),
            r.eps_gelfand_bound.clone(),
            r.bound_holds.to_string(),
            r.count_bound.to_string(),
            r.count_bound_holds.to_string(),
            r.semisimple_contingency[1][1].to_string(),
            r.semisimple_contingency[1][0].to_string(),
            r.semisimple_contingency[0][1].to_string(),
            r.semisimple_contingency[0][0].to_string(),
            r.ss_counterexamples.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(format!("csv encoding: {}", e)))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Invariant(format!("csv writer: {:?}", other)),
    }
}

/// 1 - 4/(q+4), the closed form the torus family's fraction must dominate.
pub fn torus_fraction_floor(q: u64) -> BigRational {
    BigRational::one()
        - BigRational::new(BigInt::from(4), BigInt::from(q + 4))
}
