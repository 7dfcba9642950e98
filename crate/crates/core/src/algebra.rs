//! Exact rational linear algebra for anti-involutions on matrix algebras:
//! fixed-space dimensions of X -> g X^T g^-1, and the dimension bounds that
//! fixed-space size places on the block structure of a semisimple algebra.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;
use crate::Result;

/// Dense square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    n: usize,
    a: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl RatMat {
    pub fn zero(n: usize) -> RatMat {
        RatMat {
            n,
            a: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> RatMat {
        let mut m = RatMat::zero(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<RatMat> {
        let n = rows.len();
        let mut m = RatMat::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, rat(x));
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.a[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = RatMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = BigRational::zero();
                for k in 0..self.n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> RatMat {
        let mut out = self.clone();
        for v in &mut out.a {
            *v = -v.clone();
        }
        out
    }

    /// Gauss-Jordan inverse; errors on a singular input.
    pub fn inverse(&self) -> Result<RatMat> {
        let n = self.n;
        let mut a = self.a.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&i| !a[i * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.a.swap(pivot * n + j, col * n + j);
                }
            }
            let d = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= d.clone();
                inv.a[col * n + j] /= d.clone();
            }
            for i in 0..n {
                if i == col || a[i * n + col].is_zero() {
                    continue;
                }
                let f = a[i * n + col].clone();
                for j in 0..n {
                    let x = a[col * n + j].clone() * f.clone();
                    a[i * n + j] -= x;
                    let y = inv.a[col * n + j].clone() * f.clone();
                    inv.a[i * n + j] -= y;
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }
}

/// Rank of a rectangular rational matrix given as rows.
fn rank_of_rows(mut rows: Vec<Vec<BigRational>>, width: usize) -> usize {
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..width {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, row);
        let d = rows[row][col].clone();
        for v in rows[row].iter_mut() {
            *v /= d.clone();
        }
        for i in 0..rows.len() {
            if i == row || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in 0..width {
                let x = rows[row][j].clone() * f.clone();
                rows[i][j] -= x;
            }
        }
        rank += 1;
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the fixed space of the anti-involution X -> g X^T g^-1 on
/// n x n matrices, computed as the nullity of the linear map
/// X -> X g - g X^T.  The input must be invertible for the map to be an
/// anti-automorphism at all.
pub fn fixed_space_dim(g: &RatMat) -> Result<usize> {
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let n = g.n();
    let nn = n * n;
    // Row (a, b) is the equation (X g - g X^T)[a][b] = 0 in the unknowns
    // X[i][j], laid out at column i n + j.
    let mut rows = vec![vec![BigRational::zero(); nn]; nn];
    for a in 0..n {
        for b in 0..n {
            let row = &mut rows[a * n + b];
            for j in 0..n {
                row[a * n + j] += g.get(j, b);
                row[b * n + j] -= g.get(a, j);
            }
        }
    }
    Ok(nn - rank_of_rows(rows, nn))
}

/// How X -> g X^T g^-1 behaves when composed with itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    /// g = g^T: the map squares to the identity.
    Symmetric,
    /// g = -g^T: the map squares to the identity.
    Skew,
    /// Anything else: the square moves some matrix.
    NotInvolution,
}

/// The map is an involution exactly when g^T g^-1 is central, which for an
/// invertible g forces g^T = g or g^T = -g.
pub fn classify_twist(g: &RatMat) -> Result<TwistKind> {
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let t = g.transpose();
    if t == *g {
        Ok(TwistKind::Symmetric)
    } else if t == g.neg() {
        Ok(TwistKind::Skew)
    } else {
        Ok(TwistKind::NotInvolution)
    }
}

/// Lower bound on the number of 1 x 1 blocks in a semisimple algebra of
/// dimension dim_a carrying an anti-involution with fixed space of dimension
/// fixed_dim.  A block M_m loses at least m(m-1)/2 >= m^2/4 dimensions to the
/// involution when m >= 2, while a 1 x 1 block loses none, so the codimension
/// fraction eps = (dim_a - fixed_dim)/dim_a leaves at least
/// (1 - 4 eps) dim_a = 4 fixed_dim - 3 dim_a one-dimensional blocks.
pub struct MultOneBound {
    /// Codimension fraction of the fixed space.
    pub epsilon: BigRational,
    /// Lower bound for the count of 1 x 1 blocks, clipped at zero.
    pub bound: u64,
}

pub fn rank_one_lower_bound(dim_a: u64, fixed_dim: u64) -> Result<MultOneBound> {
    if fixed_dim > dim_a || dim_a == 0 {
        return Err(Error::Invariant(format!(
            "fixed dimension {} incompatible with algebra dimension {}",
            fixed_dim, dim_a
        )));
    }
    let epsilon = BigRational::new(
        BigInt::from(dim_a - fixed_dim),
        BigInt::from(dim_a),
    );
    let raw = 4 * fixed_dim as i128 - 3 * dim_a as i128;
    let bound = raw.max(0) as u64;
    Ok(MultOneBound { epsilon, bound })
}

/// Upper bound on the total dimension of blocks of size at least k: every
/// block fixes at least a quarter of itself, blocks of size >= k fix at least
/// the fraction 1/2 - 1/(2k), so with eps = fixed_dim / dim_a the big blocks
/// occupy at most (eps - 1/4) / (1/4 - 1/(2k)) of the algebra.  `None` means
/// eps < 1/4, which no anti-involution attains, so no bound is reported.
pub struct RankKBound {
    /// Fixed fraction of the algebra.
    pub epsilon: BigRational,
    pub bound: Option<u64>,
}

pub fn rank_k_upper_bound(dim_a: u64, fixed_dim: u64, k: u64) -> Result<RankKBound> {
    if k <= 2 {
        return Err(Error::BadRankThreshold(k));
    }
    if fixed_dim > dim_a || dim_a == 0 {
        return Err(Error::Invariant(format!(
            "fixed dimension {} incompatible with algebra dimension {}",
            fixed_dim, dim_a
        )));
    }
    let epsilon = BigRational::new(BigInt::from(fixed_dim), BigInt::from(dim_a));
    let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
    if epsilon < quarter {
        return Ok(RankKBound {
            epsilon,
            bound: None,
        });
    }
    let denom = quarter.clone() - BigRational::new(BigInt::from(1), BigInt::from(2 * k));
    let value = (epsilon.clone() - quarter) / denom
        * BigRational::from_integer(BigInt::from(dim_a));
    let bound = value
        .floor()
        .to_integer()
        .to_u64()
        .expect("bound is nonnegative");
    Ok(RankKBound {
        epsilon,
        bound: Some(bound),
    })
}

/// Multiplicity profile of a convolution algebra against its fixed-space
/// dimension: both forms of the one-dimensional block bound, ready for
/// reporting.
pub struct HeckeProfile {
    pub num_constituents: usize,
    pub num_mult_one: usize,
    /// Fraction of constituents with multiplicity one.
    pub mult_one_fraction: BigRational,
    /// Codimension fraction of the sigma-fixed subspace.
    pub epsilon: BigRational,
    /// 1 - 4 eps, the guaranteed mult-one fraction.
    pub fraction_bound: BigRational,
    pub fraction_holds: bool,
    /// Count form of the same bound.
    pub count_bound: u64,
    pub count_holds: bool,
}

/// Profile the decomposition multiplicities of a permutation module whose
/// endomorphism algebra has dimension z_dim and sigma-fixed dimension
/// z_fixed_dim.  The multiplicities must satisfy sum m^2 = z_dim.
pub fn hecke_profile(mults: &[u64], z_dim: u64, z_fixed_dim: u64) -> Result<HeckeProfile> {
    let sum_sq: u64 = mults.iter().map(|m| m * m).sum();
    if sum_sq != z_dim {
        return Err(Error::Invariant(format!(
            "multiplicity squares sum to {} but the coset count is {}",
            sum_sq, z_dim
        )));
    }
    if mults.is_empty() || mults.iter().any(|&m| m == 0) {
        return Err(Error::Invariant("multiplicity list must be positive".into()));
    }
    let num_constituents = mults.len();
    let num_mult_one = mults.iter().filter(|&&m| m == 1).count();
    let mult_one_fraction = BigRational::new(
        BigInt::from(num_mult_one),
        BigInt::from(num_constituents),
    );
    let one_block = rank_one_lower_bound(z_dim, z_fixed_dim)?;
    let fraction_bound = BigRational::one() - rat(4) * one_block.epsilon.clone();
    let fraction_holds = mult_one_fraction >= fraction_bound;
    let count_holds = num_mult_one as u64 >= one_block.bound;
    Ok(HeckeProfile {
        num_constituents,
        num_mult_one,
        mult_one_fraction,
        epsilon: one_block.epsilon,
        fraction_bound,
        fraction_holds,
        count_bound: one_block.bound,
        count_holds,
    })
}

/// Random matrix with entries in -9..=9, resampled until invertible.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> RatMat {
    loop {
        let mut m = RatMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, rat(rng.gen_range(-9..=9)));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}

/// Format a rational as "p" or "p/q" in lowest terms.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
