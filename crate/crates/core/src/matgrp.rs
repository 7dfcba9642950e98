//! Matrices over a finite field and fully enumerated finite matrix groups.
//!
//! Groups at this scale are stored as plain element lists with a hash index,
//! so membership, products, and inverses resolve by lookup.  Everything is
//! deterministic: elements keep their discovery order and that order fixes
//! every downstream id (cosets, conjugacy classes, characters).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::ff::{FieldElem, FieldSpec};
use crate::Result;

/// Largest supported matrix dimension; entry storage is sized by this.
pub const MAX_DIM: usize = 4;

/// Default cap on group enumeration work (scan space and group order).
pub const DEFAULT_GROUP_CAP: u64 = 20_000;

/// Square matrix over a fixed [`FieldSpec`], row-major, dimension <= MAX_DIM.
/// Unused slots hold the default element so derived equality and hashing
/// agree with logical equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat {
    n: u8,
    entries: [FieldElem; MAX_DIM * MAX_DIM],
}

impl Mat {
    /// Zero matrix.
    pub fn zero(f: &FieldSpec, n: usize) -> Result<Mat> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::BadDimension(n));
        }
        let mut entries = [FieldElem::default(); MAX_DIM * MAX_DIM];
        for i in 0..n * n {
            entries[i] = f.zero();
        }
        Ok(Mat { n: n as u8, entries })
    }

    pub fn identity(f: &FieldSpec, n: usize) -> Result<Mat> {
        let mut m = Mat::zero(f, n)?;
        for i in 0..n {
            m.set(i, i, f.one());
        }
        Ok(m)
    }

    /// Build from integer rows (entries reduced into the field).
    pub fn from_rows(f: &FieldSpec, rows: &[&[u64]]) -> Result<Mat> {
        let n = rows.len();
        let mut m = Mat::zero(f, n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, f.scalar(v));
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.n as usize + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n as usize + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n as usize;
        let mut t = *self;
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        t
    }

    /// Matrix product; checks dimensions.
    pub fn mul(&self, f: &FieldSpec, other: &Mat) -> Result<Mat> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        Ok(self.mul_unchecked(f, other))
    }

    fn mul_unchecked(&self, f: &FieldSpec, other: &Mat) -> Mat {
        let n = self.n as usize;
        let mut out = *self;
        for i in 0..n {
            for j in 0..n {
                let mut acc = f.zero();
                for l in 0..n {
                    acc = f.add(acc, f.mul(self.entries[i * n + l], other.entries[l * n + j]));
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    /// Apply a field map entrywise.
    pub fn map_entries(&self, mut op: impl FnMut(FieldElem) -> FieldElem) -> Mat {
        let n = self.n as usize;
        let mut out = *self;
        for i in 0..n * n {
            out.entries[i] = op(self.entries[i]);
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; errors if singular.
    pub fn inverse(&self, f: &FieldSpec) -> Result<Mat> {
        let n = self.n as usize;
        let mut a = *self;
        let mut inv = Mat::identity(f, n)?;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(pivot, j), a.get(col, j));
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.get(pivot, j), inv.get(col, j));
                    inv.set(pivot, j, y);
                    inv.set(col, j, x);
                }
            }
            let s = f.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), s));
                inv.set(col, j, f.mul(inv.get(col, j), s));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col);
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(factor, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(factor, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self, f: &FieldSpec) -> bool {
        self.inverse(f).is_ok()
    }

    /// Scale every entry.
    pub fn scale(&self, f: &FieldSpec, s: FieldElem) -> Mat {
        self.map_entries(|e| f.mul(e, s))
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.n as usize;
        write!(fm, "[")?;
        for i in 0..n {
            write!(fm, "{:?}", &self.entries[i * n..(i + 1) * n])?;
        }
        write!(fm, "]")
    }
}

// ----- polynomials over the field (for minimal polynomials) -----

/// Strip leading zeros; coefficients are constant-term-first.
fn poly_trim(f: &FieldSpec, v: &mut Vec<FieldElem>) {
    let _ = f;
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn poly_divrem(
    f: &FieldSpec,
    a: &[FieldElem],
    b: &[FieldElem],
) -> Result<(Vec<FieldElem>, Vec<FieldElem>)> {
    let mut r = a.to_vec();
    poly_trim(f, &mut r);
    let mut bb = b.to_vec();
    poly_trim(f, &mut bb);
    if bb.is_empty() {
        return Err(Error::Invariant("polynomial division by zero".into()));
    }
    let db = bb.len() - 1;
    let lead_inv = f.inv(bb[db])?;
    let mut quot = vec![f.zero(); r.len().saturating_sub(db) + 1];
    while r.len() >= bb.len() {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        quot[dr - db] = c;
        for j in 0..=db {
            r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, bb[j]));
        }
        poly_trim(f, &mut r);
    }
    poly_trim(f, &mut quot);
    Ok((quot, r))
}

/// Monic gcd; the zero polynomial acts as identity.
pub fn poly_gcd(f: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(f, &mut x);
    poly_trim(f, &mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(f, &x, &y)?;
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let s = f.inv(lead)?;
        for c in x.iter_mut() {
            *c = f.mul(*c, s);
        }
    }
    Ok(x)
}

/// Formal derivative.
pub fn poly_derivative(f: &FieldSpec, a: &[FieldElem]) -> Vec<FieldElem> {
    let mut d: Vec<FieldElem> = (1..a.len())
        .map(|i| f.mul(a[i], f.scalar(i as u64)))
        .collect();
    poly_trim(f, &mut d);
    d
}

/// Minimal polynomial of a matrix: the first linear dependence among
/// I, a, a^2, ...  Returned monic, constant term first.
pub fn min_poly(f: &FieldSpec, a: &Mat) -> Result<Vec<FieldElem>> {
    let n = a.n();
    let dim = n * n;
    // Vectorized powers of a, most recent last.
    let mut powers: Vec<Vec<FieldElem>> = Vec::new();
    let mut cur = Mat::identity(f, n)?;
    loop {
        let flat: Vec<FieldElem> = (0..dim).map(|i| cur.entries[i]).collect();
        // Test whether `flat` depends on the previous powers by elimination
        // on an augmented copy; powers.len() <= n so this stays tiny.
        let t = powers.len();
        let mut rows: Vec<Vec<FieldElem>> = powers
            .iter()
            .enumerate()
            .map(|(idx, pw)| {
                // [power | unit coordinate] to read the combination back off.
                let mut r = pw.clone();
                r.extend((0..t).map(|j| if j == idx { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let mut target = flat.clone();
        let mut combo = vec![f.zero(); t];
        // Reduce target against an echelonized copy of rows.
        let mut pivots: Vec<usize> = Vec::new();
        for r in 0..rows.len() {
            // Find pivot column of row r (first nonzero among 0..dim).
            let mut piv = None;
            for c in 0..dim {
                if !rows[r][c].is_zero() {
                    piv = Some(c);
                    break;
                }
            }
            let piv = piv.ok_or_else(|| Error::Invariant("dependent power basis".into()))?;
            let s = f.inv(rows[r][piv])?;
            for c in 0..dim + t {
                rows[r][c] = f.mul(rows[r][c], s);
            }
            for rr in 0..rows.len() {
                if rr != r && !rows[rr][piv].is_zero() {
                    let fac = rows[rr][piv];
                    for c in 0..dim + t {
                        rows[rr][c] = f.sub(rows[rr][c], f.mul(fac, rows[r][c]));
                    }
                }
            }
            pivots.push(piv);
        }
        for (r, &piv) in pivots.iter().enumerate() {
            if !target[piv].is_zero() {
                let fac = target[piv];
                for c in 0..dim {
                    target[c] = f.sub(target[c], f.mul(fac, rows[r][c]));
                }
                for j in 0..t {
                    combo[j] = f.add(combo[j], f.mul(fac, rows[r][dim + j]));
                }
            }
        }
        if target.iter().all(|c| c.is_zero()) {
            // a^t = sum combo[j] a^j, so the minimal polynomial is
            // x^t - sum combo[j] x^j.
            let mut mp: Vec<FieldElem> = combo.iter().map(|&c| f.neg(c)).collect();
            mp.push(f.one());
            return Ok(mp);
        }
        if powers.len() > n {
            return Err(Error::Invariant("no dependence among matrix powers".into()));
        }
        powers.push(flat);
        cur = cur.mul_unchecked(f, a);
    }
}

/// A matrix is semisimple iff its minimal polynomial is squarefree,
/// i.e. gcd(m, m') = 1.
pub fn is_semisimple(f: &FieldSpec, a: &Mat) -> Result<bool> {
    let m = min_poly(f, a)?;
    let d = poly_derivative(f, &m);
    let g = poly_gcd(f, &m, &d)?;
    Ok(g.len() == 1)
}

/// Evaluate a polynomial at a matrix (oracle helper for tests).
pub fn poly_eval_mat(f: &FieldSpec, poly: &[FieldElem], a: &Mat) -> Result<Mat> {
    let n = a.n();
    let mut acc = Mat::zero(f, n)?;
    for &c in poly.iter().rev() {
        acc = acc.mul(f, a)?;
        for i in 0..n {
            acc.set(i, i, f.add(acc.get(i, i), c));
        }
    }
    Ok(acc)
}

/// Fully enumerated finite group of invertible matrices.
pub struct GroupTable {
    field: Arc<FieldSpec>,
    n: usize,
    elems: Vec<Mat>,
    index: HashMap<Mat, u32>,
    identity: u32,
    inv_idx: Vec<u32>,
}

impl GroupTable {
    fn from_elems(field: Arc<FieldSpec>, n: usize, elems: Vec<Mat>) -> Result<GroupTable> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, &m) in elems.iter().enumerate() {
            if index.insert(m, i as u32).is_some() {
                return Err(Error::Invariant("duplicate group element".into()));
            }
        }
        let id = Mat::identity(&field, n)?;
        let identity = *index.get(&id).ok_or(Error::NotASubgroup)?;
        let mut inv_idx = vec![0u32; elems.len()];
        for (i, m) in elems.iter().enumerate() {
            let inv = m.inverse(&field)?;
            inv_idx[i] = *index.get(&inv).ok_or(Error::NotASubgroup)?;
        }
        Ok(GroupTable {
            field,
            n,
            elems,
            index,
            identity,
            inv_idx,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[Mat] {
        &self.elems
    }

    pub fn elem(&self, i: u32) -> &Mat {
        &self.elems[i as usize]
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    pub fn index_of(&self, m: &Mat) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn inverse_index(&self, i: u32) -> u32 {
        self.inv_idx[i as usize]
    }

    /// Index of elems[i] * elems[j]; the table is closed by construction.
    pub fn product_index(&self, i: u32, j: u32) -> u32 {
        let prod = self.elems[i as usize].mul_unchecked(&self.field, &self.elems[j as usize]);
        *self
            .index
            .get(&prod)
            .expect("group table closed under multiplication")
    }

    /// Index of elems[i] * m for a raw matrix m.
    pub fn product_with_mat(&self, i: u32, m: &Mat) -> Option<u32> {
        let prod = self.elems[i as usize].mul_unchecked(&self.field, m);
        self.index.get(&prod).copied()
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, i: u32) -> u64 {
        let mut cur = i;
        let mut ord = 1u64;
        while cur != self.identity {
            cur = self.product_index(cur, i);
            ord += 1;
        }
        ord
    }

    /// Exhaustive closure check: every pairwise product stays inside.
    /// Intended for tests and for modest orders.
    pub fn verify_closure(&self) -> Result<()> {
        for i in 0..self.order() as u32 {
            for j in 0..self.order() as u32 {
                let prod =
                    self.elems[i as usize].mul_unchecked(&self.field, &self.elems[j as usize]);
                if !self.index.contains_key(&prod) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(())
    }

    /// Subgroup of all elements satisfying `pred`, with closure verified.
    /// Element order is inherited from this table.
    pub fn subgroup_where(&self, mut pred: impl FnMut(&Mat) -> bool) -> Result<GroupTable> {
        let elems: Vec<Mat> = self.elems.iter().copied().filter(|m| pred(m)).collect();
        let sub = GroupTable::from_elems(self.field.clone(), self.n, elems)?;
        sub.verify_closure()?;
        Ok(sub)
    }

    /// Indices (into this table) of the elements of a subgroup table.
    pub fn indices_of(&self, sub: &GroupTable) -> Result<Vec<u32>> {
        sub.elems()
            .iter()
            .map(|m| {
                self.index_of(m)
                    .ok_or_else(|| Error::Invariant("subgroup element not in group".into()))
            })
            .collect()
    }
}

/// Closure of a generating set under multiplication, BFS from the identity,
/// generators applied on the right in list order.
pub fn group_generate(field: Arc<FieldSpec>, gens: &[Mat], cap: u64) -> Result<GroupTable> {
    if gens.is_empty() {
        return Err(Error::Invariant("empty generating set".into()));
    }
    let n = gens[0].n();
    for g in gens {
        if g.n() != n {
            return Err(Error::DimensionMismatch(n, g.n()));
        }
        if !g.is_invertible(&field) {
            return Err(Error::SingularMatrix);
        }
    }
    let id = Mat::identity(&field, n)?;
    let mut elems = vec![id];
    let mut seen: HashMap<Mat, u32> = HashMap::new();
    seen.insert(id, 0);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head];
        head += 1;
        for g in gens {
            let next = cur.mul_unchecked(&field, g);
            if !seen.contains_key(&next) {
                if elems.len() as u64 >= cap {
                    return Err(Error::GroupCapExceeded {
                        needed: cap + 1,
                        cap,
                    });
                }
                seen.insert(next, elems.len() as u32);
                elems.push(next);
            }
        }
    }
    GroupTable::from_elems(field, n, elems)
}

/// All of GL_n(F_q) by scanning every matrix in odometer order (row-major
/// entries, last entry fastest).  The scan space q^(n^2) must fit the cap.
pub fn enumerate_gl(field: Arc<FieldSpec>, n: usize, cap: u64) -> Result<GroupTable> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::BadDimension(n));
    }
    let q = field.order();
    let cells = (n * n) as u32;
    let scan = q
        .checked_pow(cells)
        .ok_or(Error::GroupCapExceeded { needed: u64::MAX, cap })?;
    if scan > cap {
        return Err(Error::GroupCapExceeded { needed: scan, cap });
    }
    let mut elems = Vec::new();
    let mut ranks = vec![0u64; (n * n) as usize];
    loop {
        let mut m = Mat::zero(&field, n)?;
        for (i, &r) in ranks.iter().enumerate() {
            m.entries[i] = field.from_rank(r);
        }
        if m.is_invertible(&field) {
            elems.push(m);
        }
        // Odometer step.
        let mut pos = ranks.len();
        loop {
            if pos == 0 {
                return GroupTable::from_elems(field, n, elems);
            }
            pos -= 1;
            ranks[pos] += 1;
            if ranks[pos] < q {
                break;
            }
            ranks[pos] = 0;
        }
    }
}

/// |GL_n(F_q)| = prod_{i=0..n-1} (q^n - q^i); oracle for enumeration tests.
pub fn gl_order(n: usize, q: u64) -> u64 {
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product()
}

/// Conjugacy class partition of a group table.
pub struct Classes {
    /// Class id of each element.
    pub class_of: Vec<u32>,
    /// Smallest element index per class, ascending in class id.
    pub reps: Vec<u32>,
    /// Member element indices per class, ascending.
    pub members: Vec<Vec<u32>>,
    /// Class containing the inverses of a class's members.
    pub inverse_class: Vec<u32>,
    /// Class of the identity element.
    pub identity_class: u32,
    /// Group exponent: lcm of element orders.
    pub exponent: u64,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn size(&self, c: u32) -> u64 {
        self.members[c as usize].len() as u64
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

/// Conjugacy classes by orbit sweep: unvisited elements in index order seed
/// new classes, so class ids ascend with their smallest member.
pub fn conjugacy_classes(g: &GroupTable) -> Classes {
    let order = g.order();
    let mut class_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for seed in 0..order as u32 {
        if class_of[seed as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(seed);
        let mut mem = Vec::new();
        for t in 0..order as u32 {
            let conj = g.product_index(g.product_index(t, seed), g.inverse_index(t));
            if class_of[conj as usize] == u32::MAX {
                class_of[conj as usize] = c;
                mem.push(conj);
            }
        }
        mem.sort_unstable();
        members.push(mem);
    }
    let inverse_class: Vec<u32> = reps
        .iter()
        .map(|&r| class_of[g.inverse_index(r) as usize])
        .collect();
    let identity_class = class_of[g.identity_index() as usize];
    let exponent = reps
        .iter()
        .fold(1u64, |acc, &r| lcm(acc, g.element_order(r)));
    Classes {
        class_of,
        reps,
        members,
        inverse_class,
        identity_class,
        exponent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    fn gf(p: u64, k: usize) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(p, k).unwrap())
    }

    #[test]
    fn product_over_gf3() {
        let f = gf(3, 1);
        let a = Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let b = Mat::from_rows(&f, &[&[1, 0], &[1, 1]]).unwrap();
        let expect = Mat::from_rows(&f, &[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(a.mul(&f, &b).unwrap(), expect);
    }

    #[test]
    fn identity_is_neutral() {
        let f = gf(5, 1);
        let a = Mat::from_rows(&f, &[&[2, 3], &[1, 4]]).unwrap();
        let id = Mat::identity(&f, 2).unwrap();
        assert_eq!(a.mul(&f, &id).unwrap(), a);
        assert_eq!(id.mul(&f, &a).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let f = gf(3, 1);
        let a = Mat::identity(&f, 2).unwrap();
        let b = Mat::identity(&f, 3).unwrap();
        assert!(matches!(a.mul(&f, &b), Err(Error::DimensionMismatch(2, 3))));
        assert!(Mat::zero(&f, 5).is_err());
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let f = gf(3, 1);
        let a = Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let inv = a.inverse(&f).unwrap();
        let expect = Mat::from_rows(&f, &[&[1, 2], &[0, 1]]).unwrap();
        assert_eq!(inv, expect);
        assert_eq!(a.mul(&f, &inv).unwrap(), Mat::identity(&f, 2).unwrap());

        let s = Mat::from_rows(&f, &[&[1, 2], &[2, 1]]).unwrap();
        // det = 1 - 4 = -3 = 0 mod 3.
        assert!(matches!(s.inverse(&f), Err(Error::SingularMatrix)));
    }

    #[test]
    fn transpose_involutive() {
        let f = gf(5, 1);
        let a = Mat::from_rows(&f, &[&[1, 2, 3], &[0, 4, 1], &[2, 2, 0]]).unwrap();
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(0, 2), a.get(2, 0));
    }

    #[test]
    fn min_poly_examples() {
        let f = gf(3, 1);
        let id = Mat::identity(&f, 2).unwrap();
        // x - 1
        assert_eq!(min_poly(&f, &id).unwrap(), vec![f.scalar(2), f.one()]);

        let uni = Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap();
        // (x - 1)^2 = x^2 - 2x + 1 = x^2 + x + 1 over GF(3)
        assert_eq!(
            min_poly(&f, &uni).unwrap(),
            vec![f.one(), f.one(), f.one()]
        );

        let diag = Mat::from_rows(&f, &[&[1, 0], &[0, 2]]).unwrap();
        // (x - 1)(x - 2) = x^2 - 3x + 2 = x^2 + 2
        assert_eq!(
            min_poly(&f, &diag).unwrap(),
            vec![f.scalar(2), f.zero(), f.one()]
        );
    }

    #[test]
    fn min_poly_annihilates_scan() {
        let f = gf(3, 1);
        let g = enumerate_gl(f.clone(), 2, DEFAULT_GROUP_CAP).unwrap();
        for m in g.elems() {
            let mp = min_poly(&f, m).unwrap();
            assert!(*mp.last().unwrap() == f.one(), "monic");
            assert!(mp.len() >= 2 && mp.len() <= 3);
            let z = poly_eval_mat(&f, &mp, m).unwrap();
            assert_eq!(z, Mat::zero(&f, 2).unwrap());
        }
    }

    #[test]
    fn semisimple_examples() {
        let f = gf(3, 1);
        let id = Mat::identity(&f, 2).unwrap();
        assert!(is_semisimple(&f, &id).unwrap());
        let uni = Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap();
        assert!(!is_semisimple(&f, &uni).unwrap());
        // Companion matrix of the irreducible x^2 + x + 2 generates the
        // nonsplit torus; irreducible minimal polynomial means semisimple.
        let t = Mat::from_rows(&f, &[&[0, 1], &[1, 2]]).unwrap();
        assert!(is_semisimple(&f, &t).unwrap());
    }

    #[test]
    fn semisimple_is_conjugation_invariant_exhaustive() {
        let f = gf(3, 1);
        let g = enumerate_gl(f.clone(), 2, DEFAULT_GROUP_CAP).unwrap();
        let ss: Vec<bool> = g
            .elems()
            .iter()
            .map(|m| is_semisimple(&f, m).unwrap())
            .collect();
        for i in 0..g.order() as u32 {
            for t in 0..g.order() as u32 {
                let conj = g.product_index(g.product_index(t, i), g.inverse_index(t));
                assert_eq!(ss[i as usize], ss[conj as usize]);
            }
        }
    }

    #[test]
    fn enumerate_gl_orders() {
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(2, 5), 480);
        assert_eq!(gl_order(2, 9), 5760);
        assert_eq!(gl_order(3, 3), 11232);

        let g3 = enumerate_gl(gf(3, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g3.order(), 48);
        let g5 = enumerate_gl(gf(5, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g5.order(), 480);
        let g1 = enumerate_gl(gf(7, 1), 1, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g1.order(), 6);
    }

    #[test]
    fn enumerate_gl_is_deterministic() {
        let a = enumerate_gl(gf(3, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        let b = enumerate_gl(gf(3, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(a.elems(), b.elems());
    }

    #[test]
    fn enumerate_gl_cap_exceeded() {
        assert!(matches!(
            enumerate_gl(gf(3, 1), 2, 10),
            Err(Error::GroupCapExceeded { needed: 81, cap: 10 })
        ));
    }

    #[test]
    fn generate_matches_enumeration() {
        let f = gf(3, 1);
        // Two transvections plus a determinant representative generate GL_2.
        let gens = vec![
            Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap(),
            Mat::from_rows(&f, &[&[1, 0], &[1, 1]]).unwrap(),
            Mat::from_rows(&f, &[&[2, 0], &[0, 1]]).unwrap(),
        ];
        let gen = group_generate(f.clone(), &gens, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(gen.order(), 48);
        let enumd = enumerate_gl(f, 2, DEFAULT_GROUP_CAP).unwrap();
        for m in gen.elems() {
            assert!(enumd.index_of(m).is_some());
        }
        gen.verify_closure().unwrap();
    }

    #[test]
    fn generate_identity_only() {
        let f = gf(3, 1);
        let id = Mat::identity(&f, 2).unwrap();
        let g = group_generate(f, &[id], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn generate_respects_cap() {
        let f = gf(3, 1);
        let gens = vec![
            Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap(),
            Mat::from_rows(&f, &[&[1, 0], &[1, 1]]).unwrap(),
        ];
        assert!(matches!(
            group_generate(f, &gens, 5),
            Err(Error::GroupCapExceeded { cap: 5, .. })
        ));
    }

    #[test]
    fn subgroup_of_diagonal_matrices() {
        let f = gf(3, 1);
        let g = enumerate_gl(f, 2, DEFAULT_GROUP_CAP).unwrap();
        let diag = g
            .subgroup_where(|m| m.get(0, 1).is_zero() && m.get(1, 0).is_zero())
            .unwrap();
        assert_eq!(diag.order(), 4);
        assert_eq!(g.order() % diag.order(), 0, "Lagrange");
    }

    #[test]
    fn subgroup_orthogonal_brute_force_oracle() {
        let f = gf(3, 1);
        let g = enumerate_gl(f.clone(), 2, DEFAULT_GROUP_CAP).unwrap();
        let id = Mat::identity(&f, 2).unwrap();
        let ortho = g
            .subgroup_where(|m| m.mul(&f, &m.transpose()).unwrap() == id)
            .unwrap();
        // Independent count over the raw element list.
        let mut count = 0;
        for m in g.elems() {
            if m.mul(&f, &m.transpose()).unwrap() == id {
                count += 1;
            }
        }
        assert_eq!(ortho.order(), 8);
        assert_eq!(ortho.order(), count);
    }

    #[test]
    fn non_subgroup_predicate_rejected() {
        let f = gf(3, 1);
        let g = enumerate_gl(f.clone(), 2, DEFAULT_GROUP_CAP).unwrap();
        let id = Mat::identity(&f, 2).unwrap();
        let bad = Mat::from_rows(&f, &[&[1, 1], &[0, 1]]).unwrap();
        // {I, bad} is not closed: bad^2 is excluded.
        let r = g.subgroup_where(|m| *m == id || *m == bad);
        assert!(matches!(r, Err(Error::NotASubgroup)));
        // Missing identity is also rejected.
        let r2 = g.subgroup_where(|m| *m == bad);
        assert!(matches!(r2, Err(Error::NotASubgroup)));
    }

    #[test]
    fn conjugacy_classes_of_gl2_f3() {
        let g = enumerate_gl(gf(3, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        let cls = conjugacy_classes(&g);
        assert_eq!(cls.count(), 8);
        let total: u64 = (0..cls.count() as u32).map(|c| cls.size(c)).sum();
        assert_eq!(total, 48);
        // Central elements are singletons: I and -I.
        let singletons = (0..cls.count() as u32).filter(|&c| cls.size(c) == 1).count();
        assert_eq!(singletons, 2);
        assert_eq!(cls.exponent, 24, "lcm of element orders in GL_2(F_3)");
        // Identity class is a singleton containing the identity.
        let idc = cls.identity_class as usize;
        assert_eq!(cls.members[idc], vec![g.identity_index()]);
    }

    #[test]
    fn conjugacy_relation_matches_pairwise_scan() {
        let g = enumerate_gl(gf(3, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        let cls = conjugacy_classes(&g);
        for x in 0..g.order() as u32 {
            for y in 0..g.order() as u32 {
                let related = (0..g.order() as u32).any(|t| {
                    g.product_index(g.product_index(t, x), g.inverse_index(t)) == y
                });
                assert_eq!(
                    related,
                    cls.class_of[x as usize] == cls.class_of[y as usize]
                );
            }
        }
    }

    #[test]
    fn inverse_class_map_is_involutive() {
        let g = enumerate_gl(gf(5, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        let cls = conjugacy_classes(&g);
        assert_eq!(cls.count(), 24);
        for c in 0..cls.count() as u32 {
            let ic = cls.inverse_class[c as usize];
            assert_eq!(cls.inverse_class[ic as usize], c);
            assert_eq!(cls.size(c), cls.size(ic));
        }
    }

    #[test]
    fn class_partition_deterministic() {
        let g = enumerate_gl(gf(3, 1), 2, DEFAULT_GROUP_CAP).unwrap();
        let a = conjugacy_classes(&g);
        let b = conjugacy_classes(&g);
        assert_eq!(a.class_of, b.class_of);
        assert_eq!(a.reps, b.reps);
    }
}
