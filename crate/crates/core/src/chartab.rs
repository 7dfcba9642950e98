//! Exact character tables by the modular eigenvector method: work in a prime
//! field F_l whose order splits the group algebra, split the center into
//! common eigenvectors of the class matrices, and recover integer degrees and
//! multiplicities by lifting residues below l/2.

use crate::error::Error;
use crate::matgrp::{Classes, GroupTable};
use crate::Result;

/// Cap on the number of conjugacy classes the table builder accepts.
pub const MAX_CLASSES: usize = 200;

/// Search bound for the splitting prime.
pub const SPLITTING_PRIME_BOUND: u64 = 1_000_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> u64 {
    debug_assert!(a % m != 0, "inverse of zero mod {}", m);
    pow_mod(a, m - 2, m)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = 7u64;
    while d * d <= n {
        for step in [0, 4] {
            if n % (d + step) == 0 {
                return false;
            }
        }
        d += 6;
    }
    true
}

/// Smallest prime l with l = 1 (mod exponent) and l > 2 |G|.  The congruence
/// makes F_l contain every needed root of unity; the size bound makes lifts
/// of degrees and multiplicities unambiguous.
pub fn splitting_prime(exponent: u64, group_order: u64) -> Result<u64> {
    let min = 2 * group_order;
    let mut ell = exponent + 1;
    while ell <= SPLITTING_PRIME_BOUND {
        if ell > min && is_prime_u64(ell) {
            return Ok(ell);
        }
        ell += exponent;
    }
    Err(Error::NoSplittingPrime {
        exponent,
        min,
        bound: SPLITTING_PRIME_BOUND,
    })
}

/// Class multiplication coefficients a(i, j, k) = #{(x, y) in C_i x C_j :
/// x y = z_k} for a fixed representative z_k of C_k.
pub struct ClassTensor {
    r: usize,
    data: Vec<u32>,
}

impl ClassTensor {
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[(i * self.r + j) * self.r + k]
    }
}

/// One pass over the group per target class: for rep z of C_k, the pairs with
/// product z are exactly (x, x^-1 z) for x in G.
pub fn class_mult_coeffs(g: &GroupTable, classes: &Classes) -> ClassTensor {
    let r = classes.count();
    let mut data = vec![0u32; r * r * r];
    for k in 0..r {
        let z = classes.reps[k];
        for x in 0..g.order() as u32 {
            let y = g.product_index(g.inverse_index(x), z);
            let i = classes.class_of[x as usize] as usize;
            let j = classes.class_of[y as usize] as usize;
            data[(i * r + j) * r + k] += 1;
        }
    }
    ClassTensor { r, data }
}

/// Character table of a finite group with values in F_l.  Row rho, column k
/// holds chi_rho at the representative of class k, reduced mod l; degrees are
/// lifted to plain integers.  Rows are sorted by degree, ties broken by the
/// value rows lexicographically.
pub struct CharacterTable {
    pub ell: u64,
    pub degrees: Vec<u64>,
    r: usize,
    chi: Vec<u64>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.r
    }

    /// chi_rho(g_k) mod l.
    pub fn value(&self, rho: usize, k: usize) -> u64 {
        self.chi[rho * self.r + k]
    }

    /// All values of one character, indexed by class.
    pub fn row(&self, rho: usize) -> &[u64] {
        &self.chi[rho * self.r..(rho + 1) * self.r]
    }
}

/// Dense square matrix over F_l, row major.
struct ModMatrix {
    n: usize,
    a: Vec<u64>,
}

impl ModMatrix {
    fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v;
    }
}

/// Characteristic polynomial mod l, monic, constant term first: reduce to
/// upper Hessenberg form by similarity, then run the leading-minor
/// recurrence.
fn charpoly_mod(m: &ModMatrix, ell: u64) -> Vec<u64> {
    let n = m.n;
    let mut h = ModMatrix { n, a: m.a.clone() };
    for j in 0..n.saturating_sub(2) {
        let pivot = (j + 1..n).find(|&i| h.get(i, j) != 0);
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        if pivot != j + 1 {
            for c in 0..n {
                let (x, y) = (h.get(pivot, c), h.get(j + 1, c));
                h.set(pivot, c, y);
                h.set(j + 1, c, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, pivot), h.get(r, j + 1));
                h.set(r, pivot, y);
                h.set(r, j + 1, x);
            }
        }
        let inv = inv_mod(h.get(j + 1, j), ell);
        for i in j + 2..n {
            let factor = mul_mod(h.get(i, j), inv, ell);
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                let v = (h.get(i, c) + ell - mul_mod(factor, h.get(j + 1, c), ell)) % ell;
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = (h.get(r, j + 1) + mul_mod(factor, h.get(r, i), ell)) % ell;
                h.set(r, j + 1, v);
            }
        }
    }
    // p_m(x) = (x - h[m][m]) p_{m-1}(x)
    //          - sum_{i<m} h[i][m] (prod_{j=i+1..=m} h[j][j-1]) p_{i-1}(x),
    // indices one-based, p_0 = 1.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut p = vec![0u64; m + 2];
        for (deg, &c) in prev.iter().enumerate() {
            p[deg + 1] = (p[deg + 1] + c) % ell;
            p[deg] = (p[deg] + ell - mul_mod(h.get(m, m), c, ell) % ell) % ell;
        }
        let mut subdiag = 1u64;
        for i in (0..m).rev() {
            subdiag = mul_mod(subdiag, h.get(i + 1, i), ell);
            if subdiag == 0 {
                break;
            }
            let scale = mul_mod(h.get(i, m), subdiag, ell);
            if scale == 0 {
                continue;
            }
            for (deg, &c) in polys[i].iter().enumerate() {
                p[deg] = (p[deg] + ell - mul_mod(scale, c, ell)) % ell;
            }
        }
        polys.push(p);
    }
    polys.pop().expect("charpoly recurrence output")
}

fn poly_eval_mod(p: &[u64], x: u64, ell: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = (mul_mod(acc, x, ell) + c) % ell;
    }
    acc
}

/// Basis vectors of the nullspace of m, via row reduction; each returned
/// vector is length n.
fn nullspace_mod(m: &ModMatrix, ell: u64) -> Vec<Vec<u64>> {
    let n = m.n;
    let mut a = m.a.clone();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| a[i * n + col] != 0) else {
            continue;
        };
        if p != row {
            for c in 0..n {
                a.swap(p * n + c, row * n + c);
            }
        }
        let inv = inv_mod(a[row * n + col], ell);
        for c in 0..n {
            a[row * n + c] = mul_mod(a[row * n + c], inv, ell);
        }
        for i in 0..n {
            if i != row && a[i * n + col] != 0 {
                let f = a[i * n + col];
                for c in 0..n {
                    a[i * n + c] = (a[i * n + c] + ell - mul_mod(f, a[row * n + c], ell)) % ell;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivots = &pivot_col_of_row;
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let c = a[r * n + free];
            if c != 0 {
                v[pc] = ell - c;
            }
        }
        basis.push(v);
    }
    basis
}

/// Row-reduce the given spanning vectors (length dim each) in place to a
/// reduced echelon basis, dropping dependent rows.
fn echelonize(mut rows: Vec<Vec<u64>>, dim: usize, ell: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in rows.drain(..) {
        for (b, &p) in out.iter().zip(&pivots) {
            let c = v[p];
            if c != 0 {
                for j in 0..dim {
                    v[j] = (v[j] + ell - mul_mod(c, b[j], ell)) % ell;
                }
            }
        }
        if let Some(p) = (0..dim).find(|&j| v[j] != 0) {
            let inv = inv_mod(v[p], ell);
            for j in 0..dim {
                v[j] = mul_mod(v[j], inv, ell);
            }
            for (b, &bp) in out.iter_mut().zip(&pivots) {
                debug_assert!(bp != p);
                let c = b[p];
                if c != 0 {
                    for j in 0..dim {
                        b[j] = (b[j] + ell - mul_mod(c, v[j], ell)) % ell;
                    }
                }
            }
            out.push(v);
            pivots.push(p);
        }
    }
    let mut order: Vec<usize> = (0..out.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    order.into_iter().map(|i| out[i].clone()).collect()
}

/// Express v in the span of an echelon basis; errors mean the splitting
/// touched a vector outside its block, which violates invariance.
fn coords_in_basis(v: &[u64], basis: &[Vec<u64>], ell: u64) -> Result<Vec<u64>> {
    let dim = v.len();
    let mut rem = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let p = (0..dim)
            .find(|&j| b[j] != 0)
            .expect("echelon basis has no zero rows");
        let c = rem[p];
        coords.push(c);
        if c != 0 {
            for j in 0..dim {
                rem[j] = (rem[j] + ell - mul_mod(c, b[j], ell)) % ell;
            }
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::Invariant(
            "class matrix does not preserve an eigen block".into(),
        ));
    }
    Ok(coords)
}

/// Build the character table.  The class matrices M_i with entries
/// (M_i)[k][j] = a(i, j, k) commute, and their common eigenvectors are the
/// coordinate columns of the central idempotents: scaled to entry 1 at the
/// identity class, w_j = chi(g_{j*}) / d mod l, with M_i eigenvalue
/// |C_i| chi(g_i) / d.  Degrees come from the orthogonality relation
/// d^2 = |G| / sum_k |C_k| w_k w_{k*}, lifted as the unique integer with
/// d^2 <= |G|.
pub fn character_table(g: &GroupTable, classes: &Classes) -> Result<CharacterTable> {
    character_table_with_cap(g, classes, MAX_CLASSES)
}

/// Same as [`character_table`] with an explicit class-count cap.
pub fn character_table_with_cap(
    g: &GroupTable,
    classes: &Classes,
    cap: usize,
) -> Result<CharacterTable> {
    let r = classes.count();
    if r > cap {
        return Err(Error::TooManyClasses { r, cap });
    }
    let order = g.order() as u64;
    let ell = splitting_prime(classes.exponent, order)?;
    let tensor = class_mult_coeffs(g, classes);

    // Split F_l^r into common eigenvectors, one class matrix at a time.
    let mut blocks: Vec<Vec<Vec<u64>>> = vec![echelonize(
        (0..r).map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        }).collect(),
        r,
        ell,
    )];
    for i in 0..r {
        if blocks.iter().all(|b| b.len() == 1) {
            break;
        }
        if i == classes.identity_class as usize {
            continue;
        }
        let mut m_i = ModMatrix { n: r, a: vec![0; r * r] };
        for k in 0..r {
            for j in 0..r {
                m_i.set(k, j, tensor.coeff(i, j, k) as u64 % ell);
            }
        }
        let mut next = Vec::new();
        for basis in blocks.drain(..) {
            let s = basis.len();
            if s == 1 {
                next.push(basis);
                continue;
            }
            // Matrix of M_i restricted to the block, in block coordinates.
            let mut rest = ModMatrix { n: s, a: vec![0; s * s] };
            for (t, v) in basis.iter().enumerate() {
                let mut img = vec![0u64; r];
                for k in 0..r {
                    let mut acc = 0u64;
                    for j in 0..r {
                        acc = (acc + mul_mod(m_i.get(k, j), v[j], ell)) % ell;
                    }
                    img[k] = acc;
                }
                let coords = coords_in_basis(&img, &basis, ell)?;
                for (u, &c) in coords.iter().enumerate() {
                    rest.set(u, t, c);
                }
            }
            let cp = charpoly_mod(&rest, ell);
            let mut split_dim = 0usize;
            let mut pieces = Vec::new();
            for lambda in 0..ell {
                if poly_eval_mod(&cp, lambda, ell) != 0 {
                    continue;
                }
                let mut shifted = ModMatrix { n: s, a: rest.a.clone() };
                for t in 0..s {
                    let v = (shifted.get(t, t) + ell - lambda) % ell;
                    shifted.set(t, t, v);
                }
                let eig = nullspace_mod(&shifted, ell);
                split_dim += eig.len();
                let lifted: Vec<Vec<u64>> = eig
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; r];
                        for (t, &ct) in c.iter().enumerate() {
                            for j in 0..r {
                                v[j] = (v[j] + mul_mod(ct, basis[t][j], ell)) % ell;
                            }
                        }
                        v
                    })
                    .collect();
                pieces.push(echelonize(lifted, r, ell));
                if split_dim == s {
                    break;
                }
            }
            if split_dim != s {
                return Err(Error::Invariant(
                    "class matrix is not diagonalizable over the splitting field".into(),
                ));
            }
            next.extend(pieces);
        }
        blocks = next;
    }
    if blocks.len() != r || blocks.iter().any(|b| b.len() != 1) {
        return Err(Error::Invariant(
            "class matrices failed to separate the center".into(),
        ));
    }

    // Normalize each eigenvector to 1 at the identity class and recover the
    // degree and character values.
    let id = classes.identity_class as usize;
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for block in &blocks {
        let w0 = &block[0];
        if w0[id] == 0 {
            return Err(Error::Invariant(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let scale = inv_mod(w0[id], ell);
        let w: Vec<u64> = w0.iter().map(|&x| mul_mod(x, scale, ell)).collect();
        let mut s = 0u64;
        for k in 0..r {
            let kstar = classes.inverse_class[k] as usize;
            let term = mul_mod(
                classes.size(k as u32) % ell,
                mul_mod(w[k], w[kstar], ell),
                ell,
            );
            s = (s + term) % ell;
        }
        if s == 0 {
            return Err(Error::Invariant("degree norm sum vanishes".into()));
        }
        let d_sq = mul_mod(order % ell, inv_mod(s, ell), ell);
        let mut degree = None;
        let mut d = 1u64;
        while d * d <= order {
            if mul_mod(d % ell, d % ell, ell) == d_sq {
                if degree.is_some() {
                    return Err(Error::Invariant("degree lift is ambiguous".into()));
                }
                degree = Some(d);
            }
            d += 1;
        }
        let degree = degree
            .ok_or_else(|| Error::Invariant("no integer degree matches the norm sum".into()))?;
        let chi_row: Vec<u64> = (0..r)
            .map(|k| {
                let kstar = classes.inverse_class[k] as usize;
                mul_mod(degree % ell, w[kstar], ell)
            })
            .collect();
        rows.push((degree, chi_row));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let mut chi = Vec::with_capacity(r * r);
    for (_, row) in &rows {
        chi.extend_from_slice(row);
    }
    let table = CharacterTable { ell, degrees, r, chi };

    if table.degrees.iter().map(|d| d * d).sum::<u64>() != order {
        return Err(Error::Invariant("degree squares do not sum to |G|".into()));
    }
    if table.degrees.iter().any(|&d| order % d != 0) {
        return Err(Error::Invariant("a degree does not divide |G|".into()));
    }
    verify_orthogonality(&table, classes, order)?;
    Ok(table)
}

/// First and second orthogonality relations mod l; either failing means the
/// table is wrong, not merely ill-conditioned, since all quantities are
/// exact.
fn verify_orthogonality(t: &CharacterTable, classes: &Classes, order: u64) -> Result<()> {
    let ell = t.ell;
    let r = t.r;
    for a in 0..r {
        for b in 0..r {
            let mut s = 0u64;
            for k in 0..r {
                let kstar = classes.inverse_class[k] as usize;
                let term = mul_mod(
                    classes.size(k as u32) % ell,
                    mul_mod(t.value(a, k), t.value(b, kstar), ell),
                    ell,
                );
                s = (s + term) % ell;
            }
            let expect = if a == b { order % ell } else { 0 };
            if s != expect {
                return Err(Error::Invariant(format!(
                    "row orthogonality fails at characters {} and {}",
                    a, b
                )));
            }
        }
    }
    for k in 0..r {
        for j in 0..r {
            let jstar = classes.inverse_class[j] as usize;
            let mut s = 0u64;
            for rho in 0..r {
                s = (s + mul_mod(t.value(rho, k), t.value(rho, jstar), ell)) % ell;
            }
            let expect = if k == j {
                mul_mod(order % ell, inv_mod(classes.size(k as u32) % ell, ell), ell)
            } else {
                0
            };
            if s != expect {
                return Err(Error::Invariant(format!(
                    "column orthogonality fails at classes {} and {}",
                    k, j
                )));
            }
        }
    }
    Ok(())
}

/// Character of the permutation action of G on left cosets G/H, evaluated at
/// class representatives: values[k] = # cosets fixed by g_k.
pub struct PermutationCharacter {
    pub values: Vec<u64>,
    pub degree: u64,
}

pub fn permutation_character(
    g: &GroupTable,
    h_in_g: &[u32],
    classes: &Classes,
) -> PermutationCharacter {
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut coset_reps = Vec::new();
    for seed in 0..order as u32 {
        if coset_of[seed as usize] != u32::MAX {
            continue;
        }
        let id = coset_reps.len() as u32;
        coset_reps.push(seed);
        for &h in h_in_g {
            coset_of[g.product_index(seed, h) as usize] = id;
        }
    }
    // x H is fixed by z exactly when z x lands back in x H; this only depends
    // on the coset, so testing the stored representative suffices.
    let values: Vec<u64> = classes
        .reps
        .iter()
        .map(|&z| {
            coset_reps
                .iter()
                .enumerate()
                .filter(|&(c, &x)| coset_of[g.product_index(z, x) as usize] == c as u32)
                .count() as u64
        })
        .collect();
    let degree = coset_reps.len() as u64;
    PermutationCharacter { values, degree }
}

/// Multiplicity of one irreducible constituent of a permutation character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub irrep: usize,
    pub degree: u64,
    pub mult: u64,
}

/// Full decomposition of a permutation character into irreducibles.
pub struct Decomposition {
    /// Constituents with nonzero multiplicity, in table row order.
    pub constituents: Vec<Constituent>,
    pub num_mult_one: usize,
    pub sum_mult_sq: u64,
}

impl Decomposition {
    pub fn num_constituents(&self) -> usize {
        self.constituents.len()
    }

    pub fn mult_of(&self, irrep: usize) -> u64 {
        self.constituents
            .iter()
            .find(|c| c.irrep == irrep)
            .map(|c| c.mult)
            .unwrap_or(0)
    }
}

/// Inner products <pi, chi_rho> mod l, lifted to integers.  Lifts at or above
/// l/2 can only arise from a miscomputed table, because true multiplicities
/// are at most deg pi < l/2.
pub fn decompose(
    table: &CharacterTable,
    classes: &Classes,
    pi: &PermutationCharacter,
) -> Result<Decomposition> {
    let ell = table.ell;
    let r = table.num_irreps();
    let order: u64 = (0..r).map(|k| classes.size(k as u32)).sum();
    let inv_order = inv_mod(order % ell, ell);
    let mut constituents = Vec::new();
    let mut dim_check = 0u64;
    for rho in 0..r {
        let mut s = 0u64;
        for k in 0..r {
            let kstar = classes.inverse_class[k] as usize;
            let term = mul_mod(
                classes.size(k as u32) % ell,
                mul_mod(pi.values[k] % ell, table.value(rho, kstar), ell),
                ell,
            );
            s = (s + term) % ell;
        }
        let m = mul_mod(s, inv_order, ell);
        if 2 * m >= ell {
            return Err(Error::LiftAmbiguity { value: m, half: ell / 2 });
        }
        if m > 0 {
            dim_check += m * table.degrees[rho];
            constituents.push(Constituent {
                irrep: rho,
                degree: table.degrees[rho],
                mult: m,
            });
        }
    }
    if dim_check != pi.degree {
        return Err(Error::Invariant(
            "constituent dimensions do not sum to the permutation degree".into(),
        ));
    }
    let num_mult_one = constituents.iter().filter(|c| c.mult == 1).count();
    let sum_mult_sq = constituents.iter().map(|c| c.mult * c.mult).sum();
    Ok(Decomposition {
        constituents,
        num_mult_one,
        sum_mult_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use crate::matgrp::{conjugacy_classes, group_generate, Mat};
    use crate::sympair::build_pair_default;
    use std::sync::Arc;

    fn cyclic3() -> (crate::matgrp::GroupTable, Classes) {
        let f = Arc::new(FieldSpec::new(7, 1).unwrap());
        let gen = Mat::from_rows(&f, &[&[2]]).unwrap();
        let g = group_generate(f, &[gen], 100).unwrap();
        let classes = conjugacy_classes(&g);
        (g, classes)
    }

    fn sym3() -> (crate::matgrp::GroupTable, Classes) {
        let f = Arc::new(FieldSpec::new(2, 1).unwrap());
        let swap = Mat::from_rows(&f, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        let cycle = Mat::from_rows(&f, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap();
        let g = group_generate(f, &[swap, cycle], 100).unwrap();
        let classes = conjugacy_classes(&g);
        (g, classes)
    }

    #[test]
    fn splitting_prime_examples() {
        // 97 = 4 * 24 + 1 is the first prime = 1 mod 24 past 96.
        assert_eq!(splitting_prime(24, 48).unwrap(), 97);
        assert_eq!(splitting_prime(120, 480).unwrap(), 1201);
        assert_eq!(splitting_prime(240, 5760).unwrap(), 12241);
        for (e, n) in [(24u64, 48u64), (336, 2016), (240, 5760)] {
            let ell = splitting_prime(e, n).unwrap();
            assert_eq!(ell % e, 1);
            assert!(ell > 2 * n);
            assert!(is_prime_u64(ell));
        }
    }

    #[test]
    fn class_tensor_oracle_sym3() {
        let (g, classes) = sym3();
        assert_eq!(classes.count(), 3);
        let tensor = class_mult_coeffs(&g, &classes);
        // Identify the transposition class by its size.
        let t = (0..3).find(|&k| classes.size(k) == 3).unwrap() as usize;
        let e = classes.identity_class as usize;
        // A transposition times itself is the only way two transpositions
        // multiply to the identity.
        assert_eq!(tensor.coeff(t, t, e), 3);
        // Exhaustive cross-check of every coefficient.
        for k in 0..3usize {
            let z = classes.reps[k];
            for i in 0..3usize {
                for j in 0..3usize {
                    let mut count = 0u32;
                    for &x in &classes.members[i] {
                        for &y in &classes.members[j] {
                            if g.product_index(x, y) == z {
                                count += 1;
                            }
                        }
                    }
                    assert_eq!(count, tensor.coeff(i, j, k));
                }
            }
        }
    }

    #[test]
    fn cyclic_group_table() {
        let (g, classes) = cyclic3();
        assert_eq!(g.order(), 3);
        let t = character_table(&g, &classes).unwrap();
        assert_eq!(t.ell, 7);
        assert_eq!(t.degrees, vec![1, 1, 1]);
        // Values are cube roots of unity mod 7 and the rows are
        // multiplicative: chi(g^2) = chi(g)^2.
        let k2 = classes.class_of[g.index_of(&Mat::from_rows(g.field(), &[&[2]]).unwrap()).unwrap() as usize] as usize;
        let k4 = classes.class_of[g.index_of(&Mat::from_rows(g.field(), &[&[4]]).unwrap()).unwrap() as usize] as usize;
        for rho in 0..3 {
            let v = t.value(rho, k2);
            assert_eq!(pow_mod(v, 3, 7), 1);
            assert_eq!(t.value(rho, k4), mul_mod(v, v, 7));
        }
        // One row is the trivial character.
        assert!((0..3).any(|rho| (0..3).all(|k| t.value(rho, k) == 1)));
    }

    #[test]
    fn sym3_table() {
        let (g, classes) = sym3();
        let t = character_table(&g, &classes).unwrap();
        assert_eq!(t.ell, 13);
        assert_eq!(t.degrees, vec![1, 1, 2]);
        // The degree 2 row vanishes on transpositions and is -1 mod l on
        // 3-cycles.
        let tr = (0..3).find(|&k| classes.size(k) == 3).unwrap() as usize;
        let cyc = (0..3).find(|&k| classes.size(k) == 2).unwrap() as usize;
        assert_eq!(t.value(2, tr), 0);
        assert_eq!(t.value(2, cyc), t.ell - 1);
    }

    #[test]
    fn gl2_f3_table() {
        let pair = build_pair_default("gl-torus(1,1)", 3).unwrap();
        let classes = conjugacy_classes(&pair.group);
        let t = character_table(&pair.group, &classes).unwrap();
        assert_eq!(t.ell, 97);
        assert_eq!(t.degrees, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), 48);
        assert!((0..8).any(|rho| (0..8).all(|k| t.value(rho, k) == 1)));
    }

    #[test]
    fn gl2_f5_table_degrees() {
        let pair = build_pair_default("gl-torus(1,1)", 5).unwrap();
        let classes = conjugacy_classes(&pair.group);
        assert_eq!(classes.count(), 24);
        let t = character_table(&pair.group, &classes).unwrap();
        // 4 linear, 4 Steinberg twists of degree 5, 10 cuspidal of degree 4,
        // 6 principal series of degree 6.
        let mut expect = vec![1u64; 4];
        expect.extend(vec![4; 10]);
        expect.extend(vec![5; 4]);
        expect.extend(vec![6; 6]);
        assert_eq!(t.degrees, expect);
        assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), 480);
    }

    #[test]
    fn permutation_character_counts_fixed_cosets() {
        let pair = build_pair_default("gl-torus(1,1)", 3).unwrap();
        let g = &pair.group;
        let classes = conjugacy_classes(g);
        let pi = permutation_character(g, &pair.h_in_g, &classes);
        assert_eq!(pi.degree, 12);
        assert_eq!(pi.values[classes.identity_class as usize], 12);
        // Class function check: recount fixed cosets at every class member
        // by brute force on coset membership.
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for seed in 0..g.order() as u32 {
            if coset_of[seed as usize] == u32::MAX {
                let id = reps.len() as u32;
                reps.push(seed);
                for &h in &pair.h_in_g {
                    coset_of[g.product_index(seed, h) as usize] = id;
                }
            }
        }
        for k in 0..classes.count() {
            for &z in &classes.members[k] {
                let fixed = reps
                    .iter()
                    .enumerate()
                    .filter(|&(c, &x)| coset_of[g.product_index(z, x) as usize] == c as u32)
                    .count() as u64;
                assert_eq!(fixed, pi.values[k]);
            }
        }
    }

    #[test]
    fn torus_decomposition() {
        let pair = build_pair_default("gl-torus(1,1)", 3).unwrap();
        let classes = conjugacy_classes(&pair.group);
        let t = character_table(&pair.group, &classes).unwrap();
        let pi = permutation_character(&pair.group, &pair.h_in_g, &classes);
        let dec = decompose(&t, &classes, &pi).unwrap();
        assert_eq!(dec.num_constituents(), 4);
        assert_eq!(dec.num_mult_one, 3);
        assert_eq!(dec.sum_mult_sq, 7);
        let total: u64 = dec.constituents.iter().map(|c| c.mult * c.degree).sum();
        assert_eq!(total, 12);
        // The transitive action contains the trivial character exactly once,
        // and the unique multiplicity 2 constituent has degree 3.
        let triv = (0..t.num_irreps())
            .find(|&rho| (0..t.num_irreps()).all(|k| t.value(rho, k) == 1))
            .unwrap();
        assert_eq!(dec.mult_of(triv), 1);
        let twos: Vec<&Constituent> =
            dec.constituents.iter().filter(|c| c.mult == 2).collect();
        assert_eq!(twos.len(), 1);
        assert_eq!(twos[0].degree, 3);
    }

    #[test]
    fn full_subgroup_decomposes_to_trivial() {
        let pair = build_pair_default("gl-torus(2,0)", 3).unwrap();
        let classes = conjugacy_classes(&pair.group);
        let t = character_table(&pair.group, &classes).unwrap();
        let pi = permutation_character(&pair.group, &pair.h_in_g, &classes);
        assert_eq!(pi.degree, 1);
        let dec = decompose(&t, &classes, &pi).unwrap();
        assert_eq!(dec.num_constituents(), 1);
        assert_eq!(dec.constituents[0].degree, 1);
        assert_eq!(dec.constituents[0].mult, 1);
    }

    #[test]
    fn table_build_is_deterministic() {
        let pair = build_pair_default("gl-torus(1,1)", 3).unwrap();
        let classes = conjugacy_classes(&pair.group);
        let t1 = character_table(&pair.group, &classes).unwrap();
        let t2 = character_table(&pair.group, &classes).unwrap();
        assert_eq!(t1.degrees, t2.degrees);
        for rho in 0..t1.num_irreps() {
            assert_eq!(t1.row(rho), t2.row(rho));
        }
    }

    #[test]
    fn class_cap_enforced() {
        let f = Arc::new(FieldSpec::new(7, 1).unwrap());
        let gen = Mat::from_rows(&f, &[&[3]]).unwrap();
        let g = group_generate(f, &[gen], 100).unwrap();
        assert_eq!(g.order(), 6);
        let classes = conjugacy_classes(&g);
        assert!(matches!(
            character_table_with_cap(&g, &classes, 4),
            Err(Error::TooManyClasses { r: 6, cap: 4 })
        ));
        let t = character_table(&g, &classes).unwrap();
        assert_eq!(t.degrees, vec![1; 6]);
    }
}
