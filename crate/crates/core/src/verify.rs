//! The built-in verification suite: ten exact checks against known values
//! and identities, run over a shared set of pipeline results.  The CLI
//! `verify` verb prints these as a claim-versus-measured table; the
//! integration tests assert them one by one.

use num::rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{classify_twist, fixed_space_dim, random_invertible, RatMat, TwistKind};
use crate::error::Error;
use crate::report::{
    render_json, run_batch, run_pipeline, torus_fraction_floor, Caps, Pipeline, RunConfig,
};
use crate::Result;

/// Outcome of one suite criterion.
pub struct CriterionResult {
    pub number: usize,
    pub name: &'static str,
    pub claim: String,
    pub measured: String,
    pub pass: bool,
}

/// All criteria in order, plus the rollup.
pub struct VerifySummary {
    pub results: Vec<CriterionResult>,
}

impl VerifySummary {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

const TORUS: &str = "gl-torus(1,1)";
const TORUS_QS: [u64; 3] = [3, 5, 7];
const TREND_QS: [u64; 4] = [3, 5, 7, 9];
const ALGEBRA_SEED: u64 = 11;

/// Pipelines the suite shares between criteria: the torus family over
/// q = 3, 5, 7, 9 and the other catalog pairs at every q they finish under
/// default caps.
pub struct SuiteData {
    runs: Vec<(&'static str, u64, Pipeline)>,
}

impl SuiteData {
    pub fn build() -> Result<SuiteData> {
        let jobs: Vec<(&'static str, u64)> = vec![
            (TORUS, 3),
            (TORUS, 5),
            (TORUS, 7),
            (TORUS, 9),
            ("gl-orthogonal", 3),
            ("gl-orthogonal", 5),
            ("gl-orthogonal", 7),
            ("gl-symplectic", 3),
            ("gl-symplectic", 5),
            ("gl-symplectic", 7),
            ("gl-galois", 3),
        ];
        let results: Vec<Result<Pipeline>> = jobs
            .par_iter()
            .map(|&(id, q)| run_pipeline(id, q, &Caps::default()))
            .collect();
        let mut runs = Vec::with_capacity(jobs.len());
        for ((id, q), r) in jobs.into_iter().zip(results) {
            runs.push((id, q, r?));
        }
        Ok(SuiteData { runs })
    }

    fn get(&self, id: &str, q: u64) -> &Pipeline {
        self.runs
            .iter()
            .find(|(i, qq, _)| *i == id && *qq == q)
            .map(|(_, _, p)| p)
            .expect("suite pipeline present")
    }

    fn all(&self) -> impl Iterator<Item = (&'static str, u64, &Pipeline)> {
        self.runs.iter().map(|(i, q, p)| (*i, *q, p))
    }
}

fn c1_torus_counts(data: &SuiteData) -> CriterionResult {
    let mut measured = Vec::new();
    let mut pass = true;
    for q in TORUS_QS {
        let p = data.get(TORUS, q);
        let z = p.cosets.count() as u64;
        let fixed = p.sigma.fixed_count as u64;
        pass &= z == q + 4 && fixed == q + 2;
        measured.push(format!("q={}: |Z|={}, fixed={}", q, z, fixed));
    }
    CriterionResult {
        number: 1,
        name: "torus-coset-counts",
        claim: format!("{}: |Z| = q+4 and sigma fixes q+2 cosets, q in 3,5,7", TORUS),
        measured: measured.join("; "),
        pass,
    }
}

fn c2_steinberg(data: &SuiteData) -> CriterionResult {
    let mut measured = Vec::new();
    let mut pass = true;
    for q in TORUS_QS {
        let p = data.get(TORUS, q);
        let twos: Vec<_> = p
            .decomp
            .constituents
            .iter()
            .filter(|c| c.mult == 2)
            .collect();
        let others_one = p
            .decomp
            .constituents
            .iter()
            .all(|c| c.mult == 1 || c.mult == 2);
        let ok = twos.len() == 1
            && twos[0].degree == q
            && others_one
            && p.decomp.sum_mult_sq == q + 4;
        pass &= ok;
        measured.push(format!(
            "q={}: {} double constituent(s) of degree {:?}, sum m^2={}",
            q,
            twos.len(),
            twos.iter().map(|c| c.degree).collect::<Vec<_>>(),
            p.decomp.sum_mult_sq
        ));
    }
    CriterionResult {
        number: 2,
        name: "steinberg-multiplicity",
        claim: "the one multiplicity-2 constituent is the degree-q Steinberg; all others \
                multiplicity 1; sum m^2 = q+4"
            .into(),
        measured: measured.join("; "),
        pass,
    }
}

fn c3_non_gelfand(data: &SuiteData) -> CriterionResult {
    let mut pass = TORUS_QS
        .iter()
        .all(|&q| !data.get(TORUS, q).commutative);
    let mut equiv = 0usize;
    let mut total = 0usize;
    for (_, _, p) in data.all() {
        let mult_free = p.decomp.constituents.iter().all(|c| c.mult <= 1);
        total += 1;
        if p.commutative == mult_free {
            equiv += 1;
        }
    }
    pass &= equiv == total;
    CriterionResult {
        number: 3,
        name: "non-gelfand-detection",
        claim: "torus convolution is noncommutative at q in 3,5,7; commutative iff \
                multiplicity-free across all runs"
            .into(),
        measured: format!(
            "torus commutative flags: {:?}; equivalence holds in {}/{} runs",
            TORUS_QS
                .iter()
                .map(|&q| data.get(TORUS, q).commutative)
                .collect::<Vec<_>>(),
            equiv,
            total
        ),
        pass,
    }
}

fn c4_eps_bound(data: &SuiteData) -> CriterionResult {
    let mut holds = 0usize;
    let mut total = 0usize;
    for (_, _, p) in data.all() {
        total += 1;
        if p.profile.fraction_holds {
            holds += 1;
        }
    }
    let t3 = data.get(TORUS, 3);
    let exact = crate::algebra::rational_string(&t3.profile.mult_one_fraction) == "3/4"
        && crate::algebra::rational_string(&t3.profile.fraction_bound) == "3/7";
    CriterionResult {
        number: 4,
        name: "eps-gelfand-bound",
        claim: "mult-one fraction >= 1 - 4 eps on every run; torus q=3 compares 3/4 >= 3/7"
            .into(),
        measured: format!(
            "bound holds in {}/{} runs; torus q=3: {} >= {}",
            holds,
            total,
            crate::algebra::rational_string(&t3.profile.mult_one_fraction),
            crate::algebra::rational_string(&t3.profile.fraction_bound)
        ),
        pass: holds == total && exact,
    }
}

fn c5_cross_module(data: &SuiteData) -> CriterionResult {
    let mut ok = 0usize;
    let mut total = 0usize;
    for (_, _, p) in data.all() {
        total += 1;
        let dim: u64 = p
            .decomp
            .constituents
            .iter()
            .map(|c| c.mult * c.degree)
            .sum();
        if p.decomp.sum_mult_sq == p.cosets.count() as u64 && dim == p.pair.index() as u64 {
            ok += 1;
        }
    }
    CriterionResult {
        number: 5,
        name: "dimension-identities",
        claim: "sum m^2 = |Z| and sum m d = [G:H] on every run".into(),
        measured: format!("both identities hold in {}/{} runs", ok, total),
        pass: ok == total,
    }
}

fn c6_random_twists() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(ALGEBRA_SEED);
    let mut raw_ok = 0usize;
    let mut raw_total = 0usize;
    let mut sym_ok = 0usize;
    let mut sym_total = 0usize;
    let mut skew_ok = 0usize;
    let mut skew_total = 0usize;
    for n in 2..=6usize {
        for _ in 0..50 {
            let g = random_invertible(n, &mut rng);
            raw_total += 1;
            if fixed_space_dim(&g).unwrap_or(usize::MAX) <= n * (n + 1) / 2 {
                raw_ok += 1;
            }
            sym_total += 1;
            let sym = symmetrized(&g, &mut rng, false);
            if classify_twist(&sym).ok() == Some(TwistKind::Symmetric)
                && fixed_space_dim(&sym).unwrap_or(0) == n * (n + 1) / 2
            {
                sym_ok += 1;
            }
            if n % 2 == 0 {
                skew_total += 1;
                let skew = symmetrized(&g, &mut rng, true);
                if classify_twist(&skew).ok() == Some(TwistKind::Skew)
                    && fixed_space_dim(&skew).unwrap_or(0) == n * (n - 1) / 2
                {
                    skew_ok += 1;
                }
            }
        }
    }
    CriterionResult {
        number: 6,
        name: "random-twist-dimensions",
        claim: format!(
            "seed {}: 50 random g per n in 2..=6 fix <= n(n+1)/2; symmetric g fix exactly \
             n(n+1)/2; skew g (even n) fix exactly n(n-1)/2",
            ALGEBRA_SEED
        ),
        measured: format!(
            "raw {}/{}, symmetric {}/{}, skew {}/{}",
            raw_ok, raw_total, sym_ok, sym_total, skew_ok, skew_total
        ),
        pass: raw_ok == raw_total && sym_ok == sym_total && skew_ok == skew_total,
    }
}

/// g -/+ g^T, resampled until invertible.
fn symmetrized(g: &RatMat, rng: &mut ChaCha8Rng, skew: bool) -> RatMat {
    let n = g.n();
    let mut base = g.clone();
    loop {
        let mut out = RatMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let v = if skew {
                    base.get(i, j) - base.get(j, i)
                } else {
                    base.get(i, j) + base.get(j, i)
                };
                out.set(i, j, v);
            }
        }
        if out.is_invertible() {
            return out;
        }
        base = random_invertible(n, rng);
    }
}

fn c7_count_bound(data: &SuiteData) -> CriterionResult {
    let mut holds = 0usize;
    let mut total = 0usize;
    for (_, _, p) in data.all() {
        total += 1;
        if p.profile.count_holds {
            holds += 1;
        }
    }
    let t3 = data.get(TORUS, 3);
    let tight = t3.profile.count_bound == 3 && t3.decomp.num_mult_one == 3;
    CriterionResult {
        number: 7,
        name: "one-block-count-bound",
        claim: "num mult-one >= 4 dim^sigma - 3 |Z| on every run; tight (3 = 3) at torus q=3"
            .into(),
        measured: format!(
            "bound holds in {}/{} runs; torus q=3 bound {} vs count {}",
            holds, total, t3.profile.count_bound, t3.decomp.num_mult_one
        ),
        pass: holds == total && tight,
    }
}

fn c8_semisimple_fixed(data: &SuiteData) -> CriterionResult {
    let mut measured = Vec::new();
    let mut pass = true;
    for q in TORUS_QS {
        let p = data.get(TORUS, q);
        let n = p.diagnostics.counterexamples.len();
        pass &= n == 0;
        measured.push(format!("q={}: {} counterexamples", q, n));
    }
    CriterionResult {
        number: 8,
        name: "semisimple-cosets-fixed",
        claim: format!(
            "{}: every coset with a semisimple symmetrization is sigma-fixed, q in 3,5,7",
            TORUS
        ),
        measured: measured.join("; "),
        pass,
    }
}

fn c9_trend(data: &SuiteData) -> CriterionResult {
    let mut fractions: Vec<(u64, BigRational)> = Vec::new();
    for q in TREND_QS {
        let p = data.get(TORUS, q);
        fractions.push((q, p.profile.mult_one_fraction.clone()));
    }
    let monotone = fractions.windows(2).all(|w| w[0].1 <= w[1].1);
    let floored = fractions
        .iter()
        .all(|(q, f)| *f >= torus_fraction_floor(*q));
    CriterionResult {
        number: 9,
        name: "fraction-trend",
        claim: format!(
            "{}: mult-one fraction non-decreasing over q in 3,5,7,9 and >= 1 - 4/(q+4)",
            TORUS
        ),
        measured: fractions
            .iter()
            .map(|(q, f)| format!("q={}: {}", q, crate::algebra::rational_string(f)))
            .collect::<Vec<_>>()
            .join("; "),
        pass: monotone && floored,
    }
}

fn c10_determinism() -> CriterionResult {
    let config = RunConfig {
        pairs: vec![TORUS.to_string(), "gl-symplectic".to_string()],
        qs: vec![3, 5],
        seed: 0,
        cap_group: Caps::default().group,
        cap_cosets: Caps::default().cosets,
    };
    let (doc1, e1) = run_batch(&config);
    let (doc2, e2) = run_batch(&config);
    let ok = e1.is_none() && e2.is_none();
    let s1 = render_json(&doc1);
    let s2 = render_json(&doc2);
    let identical = s1 == s2;
    CriterionResult {
        number: 10,
        name: "byte-determinism",
        claim: "rendering the same run twice yields byte-identical documents".into(),
        measured: format!(
            "{} bytes vs {} bytes, identical: {}",
            s1.len(),
            s2.len(),
            identical
        ),
        pass: ok && identical,
    }
}

/// Run all ten criteria.  Errors here mean a pipeline could not finish at
/// all; a finished pipeline that misses a claim shows up as pass = false.
pub fn run_suite() -> Result<VerifySummary> {
    let data = SuiteData::build()?;
    let results = vec![
        c1_torus_counts(&data),
        c2_steinberg(&data),
        c3_non_gelfand(&data),
        c4_eps_bound(&data),
        c5_cross_module(&data),
        c6_random_twists(),
        c7_count_bound(&data),
        c8_semisimple_fixed(&data),
        c9_trend(&data),
        c10_determinism(),
    ];
    if results.len() != 10 {
        return Err(Error::Invariant("suite must have ten criteria".into()));
    }
    Ok(VerifySummary { results })
}

/// Fixed-width table of the suite outcome, one criterion per line.
pub fn render_table(summary: &VerifySummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<4} {:<26} {:<6} claim / measured\n",
        "#", "criterion", "result"
    ));
    for r in &summary.results {
        out.push_str(&format!(
            "C{:<3} {:<26} {:<6} {}\n{:<38} {}\n",
            r.number,
            r.name,
            if r.pass { "PASS" } else { "FAIL" },
            r.claim,
            "",
            r.measured
        ));
    }
    let passed = summary.results.iter().filter(|r| r.pass).count();
    out.push_str(&format!(
        "suite: {} ({}/{} criteria)\n",
        if summary.all_pass() { "PASS" } else { "FAIL" },
        passed,
        summary.results.len()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use once_cell::sync::Lazy;

    static SUMMARY: Lazy<VerifySummary> = Lazy::new(|| run_suite().unwrap());

    #[test]
    fn suite_passes_end_to_end() {
        for r in &SUMMARY.results {
            assert!(r.pass, "C{} {}: {}", r.number, r.name, r.measured);
        }
        assert!(SUMMARY.all_pass());
        assert_eq!(SUMMARY.results.len(), 10);
        let numbers: Vec<usize> = SUMMARY.results.iter().map(|r| r.number).collect();
        assert_eq!(numbers, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn table_mentions_every_criterion() {
        let table = render_table(&SUMMARY);
        for r in &SUMMARY.results {
            assert!(table.contains(r.name));
        }
        assert!(table.contains("suite: PASS (10/10 criteria)"));
    }
}
