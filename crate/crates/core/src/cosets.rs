//! Double cosets H\G/H, the sigma action on them, and the Hecke algebra of
//! H-bi-invariant functions with exact integer structure constants.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::matgrp::{is_semisimple, GroupTable};
use crate::sympair::SymPair;
use crate::Result;

/// Default cap on the number of double cosets fed to the Hecke machinery.
pub const DEFAULT_COSET_CAP: usize = 4096;

/// Partition of a group into H-double cosets.  Coset ids ascend with the
/// smallest member index, and `reps[z]` is that smallest member.
pub struct DoubleCosets {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl DoubleCosets {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// Enumerate H g H orbits by expanding |H|^2 products from each unvisited
/// seed, in element index order.
pub fn enumerate_double_cosets(g: &GroupTable, h_in_g: &[u32]) -> DoubleCosets {
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for seed in 0..order as u32 {
        if coset_of[seed as usize] != u32::MAX {
            continue;
        }
        let z = reps.len() as u32;
        reps.push(seed);
        let mut size = 0u64;
        for &h1 in h_in_g {
            let left = g.product_index(h1, seed);
            for &h2 in h_in_g {
                let x = g.product_index(left, g.inverse_index(h2));
                if coset_of[x as usize] == u32::MAX {
                    coset_of[x as usize] = z;
                    size += 1;
                }
            }
        }
        sizes.push(size);
    }
    DoubleCosets {
        coset_of,
        reps,
        sizes,
    }
}

/// The permutation sigma induces on double cosets, with its fixed-point data.
pub struct SigmaOnCosets {
    pub perm: Vec<u32>,
    pub fixed_count: usize,
}

impl SigmaOnCosets {
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_fixed(&self, z: u32) -> bool {
        self.perm[z as usize] == z
    }

    /// Dimension of the sigma-fixed subspace of the free vector space on the
    /// cosets: one per fixed coset plus one per swapped pair.
    pub fn fixed_space_dim(&self) -> Result<usize> {
        let moved = self.len() - self.fixed_count;
        if moved % 2 != 0 {
            return Err(Error::Invariant(
                "non-fixed cosets must pair up under an involution".into(),
            ));
        }
        Ok(self.fixed_count + moved / 2)
    }
}

/// Compute the coset permutation z -> sigma(z), verifying well-definedness on
/// every element and that the result is an involution.
pub fn sigma_on_cosets(
    g: &GroupTable,
    part: &DoubleCosets,
    sigma_perm: &[u32],
) -> Result<SigmaOnCosets> {
    let perm: Vec<u32> = part
        .reps
        .iter()
        .map(|&r| part.coset_of[sigma_perm[r as usize] as usize])
        .collect();
    // sigma maps whole cosets onto whole cosets; check every element agrees
    // with the image computed from its coset's representative.
    for i in 0..g.order() {
        let img = part.coset_of[sigma_perm[i] as usize];
        if img != perm[part.coset_of[i] as usize] {
            return Err(Error::Invariant(
                "sigma image of a coset is not a single coset".into(),
            ));
        }
    }
    for z in 0..perm.len() as u32 {
        if perm[perm[z as usize] as usize] != z {
            return Err(Error::Invariant("sigma on cosets is not an involution".into()));
        }
    }
    let fixed_count = (0..perm.len() as u32).filter(|&z| perm[z as usize] == z).count();
    Ok(SigmaOnCosets { perm, fixed_count })
}

/// Hecke algebra of H-bi-invariant functions under convolution, presented by
/// sparse structure constants on indicator functions:
/// `c[(d1, d2)] = [(d3, count), ...]` with count = #{(x, y) in D1 x D2 :
/// x y = rep(D3)}.
pub struct HeckeAlgebra {
    pub dim: usize,
    consts: BTreeMap<(u32, u32), Vec<(u32, u64)>>,
}

impl HeckeAlgebra {
    /// Structure constant c(d1, d2 -> d3).
    pub fn coeff(&self, d1: u32, d2: u32, d3: u32) -> u64 {
        self.consts
            .get(&(d1, d2))
            .and_then(|v| v.iter().find(|&&(d, _)| d == d3))
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    /// Sparse row for a product of two coset indicators.
    pub fn row(&self, d1: u32, d2: u32) -> &[(u32, u64)] {
        self.consts
            .get(&(d1, d2))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Convolution is commutative iff every pair of indicators commutes.
    pub fn is_commutative(&self) -> bool {
        for (&(d1, d2), row) in &self.consts {
            if d1 < d2 {
                if let Some(other) = self.consts.get(&(d2, d1)) {
                    if row != other {
                        return false;
                    }
                } else {
                    return false;
                }
            }
        }
        true
    }
}

/// Structure constants for every coset pair, by a single pass over the group
/// per target coset: for rep z of D3 and every x, the pair (x, x^-1 z) is the
/// unique one with product z.
pub fn hecke_structure(
    g: &GroupTable,
    part: &DoubleCosets,
    cap: usize,
) -> Result<HeckeAlgebra> {
    let dim = part.count();
    if dim > cap {
        return Err(Error::CosetCapExceeded { count: dim, cap });
    }
    let mut consts: BTreeMap<(u32, u32), Vec<(u32, u64)>> = BTreeMap::new();
    let mut grid = vec![0u64; dim * dim];
    for d3 in 0..dim as u32 {
        grid.iter_mut().for_each(|c| *c = 0);
        let z = part.reps[d3 as usize];
        for x in 0..g.order() as u32 {
            let y = g.product_index(g.inverse_index(x), z);
            let d1 = part.coset_of[x as usize] as usize;
            let d2 = part.coset_of[y as usize] as usize;
            grid[d1 * dim + d2] += 1;
        }
        for d1 in 0..dim {
            for d2 in 0..dim {
                let c = grid[d1 * dim + d2];
                if c > 0 {
                    consts
                        .entry((d1 as u32, d2 as u32))
                        .or_default()
                        .push((d3, c));
                }
            }
        }
    }
    Ok(HeckeAlgebra { dim, consts })
}

/// Mass conservation: sum_d3 c(d1, d2 -> d3) |D3| = |D1| |D2| for all pairs.
/// Returns an invariant error on the first violation.
pub fn check_mass_conservation(h: &HeckeAlgebra, part: &DoubleCosets) -> Result<()> {
    for d1 in 0..h.dim as u32 {
        for d2 in 0..h.dim as u32 {
            let mass: u64 = h
                .row(d1, d2)
                .iter()
                .map(|&(d3, c)| c * part.sizes[d3 as usize])
                .sum();
            if mass != part.sizes[d1 as usize] * part.sizes[d2 as usize] {
                return Err(Error::Invariant(format!(
                    "convolution mass mismatch at ({}, {})",
                    d1, d2
                )));
            }
        }
    }
    Ok(())
}

/// Classical commutativity criterion: if sigma fixes every double coset, the
/// Hecke algebra must be commutative.  Errors if the antecedent holds and the
/// conclusion fails.
pub fn check_full_fixity_forces_commutative(
    z: &SigmaOnCosets,
    h: &HeckeAlgebra,
) -> Result<()> {
    if z.fixed_count == z.len() && !h.is_commutative() {
        return Err(Error::Invariant(
            "all cosets sigma-fixed but convolution is not commutative".into(),
        ));
    }
    Ok(())
}

/// Per-coset semisimplicity diagnostics: does the coset contain an element
/// whose symmetrization is semisimple, and is the coset sigma-fixed.
pub struct CosetDiagnostics {
    /// One flag pair per coset: (has semisimple symmetrization, sigma-fixed).
    pub rows: Vec<(bool, bool)>,
    /// Counts indexed [any_ss][fixed].
    pub contingency: [[u64; 2]; 2],
    /// Cosets with a semisimple symmetrization that are not sigma-fixed.
    pub counterexamples: Vec<u32>,
}

/// Evaluate is_semisimple(s(g)) over every group element and fold per coset.
pub fn semisimple_coset_report(
    pair: &SymPair,
    part: &DoubleCosets,
    z: &SigmaOnCosets,
) -> Result<CosetDiagnostics> {
    let g = &pair.group;
    let f = g.field();
    let mut any_ss = vec![false; part.count()];
    for i in 0..g.order() as u32 {
        let s = pair.symmetrize_index(i);
        if is_semisimple(f, g.elem(s))? {
            any_ss[part.coset_of[i as usize] as usize] = true;
        }
    }
    let mut contingency = [[0u64; 2]; 2];
    let mut counterexamples = Vec::new();
    let rows: Vec<(bool, bool)> = (0..part.count() as u32)
        .map(|zid| {
            let ss = any_ss[zid as usize];
            let fixed = z.is_fixed(zid);
            contingency[ss as usize][fixed as usize] += 1;
            if ss && !fixed {
                counterexamples.push(zid);
            }
            (ss, fixed)
        })
        .collect();
    Ok(CosetDiagnostics {
        rows,
        contingency,
        counterexamples,
    })
}
