//! Symmetric pairs (G, H): a fully enumerated matrix group together with the
//! fixed subgroup of an involutive automorphism.
//!
//! Each involution theta determines the anti-involution sigma(g) =
//! theta(g^-1) and the symmetrization map s(g) = g * sigma(g), the two maps
//! every downstream double-coset measurement is built on.

use std::sync::Arc;

use crate::error::Error;
use crate::ff::{factor_prime_power, FieldSpec};
use crate::matgrp::{enumerate_gl, GroupTable, Mat, DEFAULT_GROUP_CAP};
use crate::Result;

/// Involutive automorphism of GL_n(F_q), applied elementwise to a group table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Involution {
    /// g -> (g^T)^-1; fixed subgroup is the orthogonal group of the standard
    /// symmetric form.
    TransposeInverse,
    /// g -> s g s^-1 for s = diag(1_a, -1_b); fixed subgroup GL_a x GL_b.
    InnerDiag { a: usize, b: usize },
    /// g -> J (g^T)^-1 J^-1 for the standard symplectic J; fixed subgroup
    /// Sp_n, dimension must be even.
    SymplecticTwist,
    /// Entrywise x -> x^(p^base_degree) on GL_n(F_(q^2)), where the field has
    /// extension degree 2*base_degree over its prime field; fixed subgroup is
    /// GL_n over the index-2 subfield.
    GaloisTwist { base_degree: usize },
}

impl Involution {
    /// The matrix s or J backing an inner involution, if any.
    fn twist_matrix(&self, f: &FieldSpec, n: usize) -> Result<Option<Mat>> {
        match *self {
            Involution::TransposeInverse | Involution::GaloisTwist { .. } => Ok(None),
            Involution::InnerDiag { a, b } => {
                if a + b != n {
                    return Err(Error::DimensionMismatch(a + b, n));
                }
                let mut s = Mat::identity(f, n)?;
                for i in a..n {
                    s.set(i, i, f.neg(f.one()));
                }
                Ok(Some(s))
            }
            Involution::SymplecticTwist => {
                if n % 2 != 0 {
                    return Err(Error::OddSymplecticDimension(n));
                }
                let m = n / 2;
                let mut j = Mat::zero(f, n)?;
                for i in 0..m {
                    j.set(i, m + i, f.one());
                    j.set(m + i, i, f.neg(f.one()));
                }
                Ok(Some(j))
            }
        }
    }

    /// theta(g).
    pub fn apply(&self, f: &FieldSpec, g: &Mat) -> Result<Mat> {
        match *self {
            Involution::TransposeInverse => g.transpose().inverse(f),
            Involution::InnerDiag { .. } => {
                let s = self.twist_matrix(f, g.n())?.expect("inner twist");
                // s is its own inverse.
                s.mul(f, g)?.mul(f, &s)
            }
            Involution::SymplecticTwist => {
                let j = self.twist_matrix(f, g.n())?.expect("symplectic twist");
                let jinv = j.inverse(f)?;
                j.mul(f, &g.transpose().inverse(f)?)?.mul(f, &jinv)
            }
            Involution::GaloisTwist { base_degree } => {
                if f.k() != 2 * base_degree {
                    return Err(Error::FieldMismatch);
                }
                Ok(g.map_entries(|e| f.frobenius_iter(e, base_degree)))
            }
        }
    }

    /// sigma(g) = theta(g^-1), an anti-automorphism of order two.
    pub fn sigma(&self, f: &FieldSpec, g: &Mat) -> Result<Mat> {
        self.apply(f, &g.inverse(f)?)
    }

    /// s(g) = g * sigma(g); conjugation-equivariant and constant on left
    /// cosets gH.
    pub fn symmetrize(&self, f: &FieldSpec, g: &Mat) -> Result<Mat> {
        g.mul(f, &self.sigma(f, g)?)
    }
}

/// A symmetric pair: group, involution, fixed subgroup, and the induced
/// sigma permutation of group element indices.
pub struct SymPair {
    pub id: String,
    /// Base field size of the family (for the galois pair the group itself
    /// lives over GF(q^2)).
    pub q: u64,
    pub theta: Involution,
    pub group: GroupTable,
    pub subgroup: GroupTable,
    /// Indices of subgroup elements inside `group`, ascending.
    pub h_in_g: Vec<u32>,
    /// sigma as a permutation of group element indices.
    pub sigma_perm: Vec<u32>,
    /// Whether the orbit-closure heuristics for this family are considered
    /// reliable (connected stabilizers); informational only.
    pub trusted: bool,
}

impl SymPair {
    pub fn group_order(&self) -> usize {
        self.group.order()
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.subgroup.order()
    }

    /// Index of s(g) = g * sigma(g) for a group element index.
    pub fn symmetrize_index(&self, i: u32) -> u32 {
        self.group.product_index(i, self.sigma_perm[i as usize])
    }
}

/// Catalog entry describing a buildable pair family.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    /// Group dimension n of GL_n.
    pub dim: usize,
    pub trusted: bool,
}

/// The built-in pair families, in stable listing order.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            id: "gl-torus(1,1)",
            description: "GL_2 with conjugation by diag(1,-1); H is the diagonal torus. \
                          gl-torus(a,b) builds GL_(a+b) with H = GL_a x GL_b.",
            dim: 2,
            trusted: true,
        },
        CatalogEntry {
            id: "gl-orthogonal",
            description: "GL_2 with g -> (g^T)^-1; H = O_2 for the standard symmetric form.",
            dim: 2,
            trusted: false,
        },
        CatalogEntry {
            id: "gl-symplectic",
            description: "GL_2 with g -> J (g^T)^-1 J^-1; H = Sp_2 = SL_2.",
            dim: 2,
            trusted: false,
        },
        CatalogEntry {
            id: "gl-galois",
            description: "GL_2(F_(q^2)) with entrywise q-power Frobenius; H = GL_2(F_q).",
            dim: 2,
            trusted: true,
        },
    ]
}

/// Parsed pair id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairKind {
    Torus { a: usize, b: usize },
    Orthogonal,
    Symplectic,
    Galois,
}

/// Parse a catalog id. `gl-torus(a,b)` accepts any split with a >= 1, b >= 0.
pub fn parse_pair_id(id: &str) -> Result<PairKind> {
    match id {
        "gl-orthogonal" => return Ok(PairKind::Orthogonal),
        "gl-symplectic" => return Ok(PairKind::Symplectic),
        "gl-galois" => return Ok(PairKind::Galois),
        _ => {}
    }
    let bad = || Error::UnknownPair(id.to_string());
    let body = id.strip_prefix("gl-torus(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let (sa, sb) = body.split_once(',').ok_or_else(bad)?;
    let a: usize = sa.trim().parse().map_err(|_| bad())?;
    let b: usize = sb.trim().parse().map_err(|_| bad())?;
    if a == 0 || a + b == 0 {
        return Err(bad());
    }
    Ok(PairKind::Torus { a, b })
}

fn canonical_id(kind: &PairKind) -> String {
    match kind {
        PairKind::Torus { a, b } => format!("gl-torus({},{})", a, b),
        PairKind::Orthogonal => "gl-orthogonal".into(),
        PairKind::Symplectic => "gl-symplectic".into(),
        PairKind::Galois => "gl-galois".into(),
    }
}

/// Build a symmetric pair over GF(q) for odd prime-power q, enumerating the
/// group, extracting H as the fixed subgroup of theta, and validating that
/// theta is an involutive automorphism on the enumerated elements.
pub fn build_pair(id: &str, q: u64, cap: u64) -> Result<SymPair> {
    build_pair_kind(&parse_pair_id(id)?, q, cap)
}

/// As [`build_pair`] with a pre-parsed kind.
pub fn build_pair_kind(kind: &PairKind, q: u64, cap: u64) -> Result<SymPair> {
    let (p, k) = factor_prime_power(q)?;
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let (field, n, theta, trusted) = match *kind {
        PairKind::Torus { a, b } => (
            Arc::new(FieldSpec::new(p, k)?),
            a + b,
            Involution::InnerDiag { a, b },
            true,
        ),
        PairKind::Orthogonal => (
            Arc::new(FieldSpec::new(p, k)?),
            2,
            Involution::TransposeInverse,
            false,
        ),
        PairKind::Symplectic => (
            Arc::new(FieldSpec::new(p, k)?),
            2,
            Involution::SymplecticTwist,
            false,
        ),
        PairKind::Galois => (
            Arc::new(FieldSpec::new(p, 2 * k)?),
            2,
            Involution::GaloisTwist { base_degree: k },
            true,
        ),
    };
    let group = enumerate_gl(field.clone(), n, cap)?;
    from_parts(canonical_id(kind), q, theta, group, trusted)
}

/// Assemble a pair from an explicit group and involution.  Validates theta
/// pointwise: image inside the group, involutive, and with a nonempty fixed
/// subgroup that passes the closure check.
pub fn from_parts(
    id: String,
    q: u64,
    theta: Involution,
    group: GroupTable,
    trusted: bool,
) -> Result<SymPair> {
    let field = group.field().clone();
    let order = group.order();

    // theta must permute the enumerated elements with order <= 2.
    let mut theta_perm = vec![0u32; order];
    for i in 0..order as u32 {
        let img = theta.apply(&field, group.elem(i))?;
        theta_perm[i as usize] = group
            .index_of(&img)
            .ok_or_else(|| Error::Invariant("theta image escapes the group".into()))?;
    }
    for i in 0..order as u32 {
        if theta_perm[theta_perm[i as usize] as usize] != i {
            return Err(Error::Invariant("theta is not an involution".into()));
        }
    }

    let subgroup = group.subgroup_where(|m| {
        let img = theta.apply(&field, m).expect("theta applies to group elements");
        img == *m
    })?;
    let h_in_g = group.indices_of(&subgroup)?;

    let mut sigma_perm = vec![0u32; order];
    for i in 0..order as u32 {
        sigma_perm[i as usize] = theta_perm[group.inverse_index(i) as usize];
    }
    for i in 0..order as u32 {
        if sigma_perm[sigma_perm[i as usize] as usize] != i {
            return Err(Error::Invariant("sigma is not an involution".into()));
        }
    }

    Ok(SymPair {
        id,
        q,
        theta,
        group,
        subgroup,
        h_in_g,
        sigma_perm,
        trusted,
    })
}

/// Convenience builder used by tests and the bindings: default cap.
pub fn build_pair_default(id: &str, q: u64) -> Result<SymPair> {
    build_pair(id, q, DEFAULT_GROUP_CAP)
}
