//! Cross-module invariants checked on live pipelines across the catalog.
//! Each check is a structural identity that must hold for every pair and
//! field size, independent of the specific numbers frozen in unit tests.

use finpair::cosets::check_mass_conservation;
use finpair::report::{run_pipeline, Caps, Pipeline};
use finpair::Error;
use once_cell::sync::Lazy;
use rayon::prelude::*;

const CASES: &[(&str, u64)] = &[
    ("gl-torus(1,1)", 3),
    ("gl-torus(1,1)", 5),
    ("gl-orthogonal", 3),
    ("gl-symplectic", 5),
    ("gl-galois", 3),
];

static PIPELINES: Lazy<Vec<Pipeline>> = Lazy::new(|| {
    CASES
        .par_iter()
        .map(|&(id, q)| run_pipeline(id, q, &Caps::default()).expect("pipeline"))
        .collect()
});

fn label(p: &Pipeline) -> String {
    format!("{} q={}", p.pair.id, p.pair.q)
}

#[test]
fn cosets_partition_the_group() {
    for p in PIPELINES.iter() {
        let total: u64 = p.cosets.sizes.iter().sum();
        assert_eq!(total, p.pair.group_order() as u64, "{}", label(p));
        assert_eq!(p.cosets.coset_of.len(), p.pair.group_order(), "{}", label(p));
        for (z, &rep) in p.cosets.reps.iter().enumerate() {
            assert_eq!(p.cosets.coset_of[rep as usize] as usize, z, "{}", label(p));
            // The rep is the smallest group index in its coset.
            let first = p
                .cosets
                .coset_of
                .iter()
                .position(|&c| c as usize == z)
                .unwrap();
            assert_eq!(first as u32, rep, "{}", label(p));
        }
        // Orbit sizes divide |H|^2 (orbit of an H x H action).
        let hh = p.pair.subgroup_order() as u64 * p.pair.subgroup_order() as u64;
        for &s in &p.cosets.sizes {
            assert_eq!(hh % s, 0, "{}: coset size {} does not divide |H|^2", label(p), s);
        }
    }
}

#[test]
fn sigma_is_an_involution_on_cosets() {
    for p in PIPELINES.iter() {
        let perm = &p.sigma.perm;
        let mut fixed = 0usize;
        for (z, &w) in perm.iter().enumerate() {
            assert_eq!(perm[w as usize] as usize, z, "{}", label(p));
            if w as usize == z {
                fixed += 1;
            }
        }
        assert_eq!(fixed, p.sigma.fixed_count, "{}", label(p));
        // dim of the sigma-fixed subspace of C[Z]: one per fixed point plus
        // one per 2-cycle.
        let expected = fixed + (perm.len() - fixed) / 2;
        assert_eq!(p.z_fixed_dim, expected, "{}", label(p));
    }
}

#[test]
fn hecke_mass_and_identity_row() {
    for p in PIPELINES.iter() {
        check_mass_conservation(&p.hecke, &p.cosets).expect("mass conservation");
        // The coset of the identity is a copy of H and acts as |H| times the
        // identity on the left: c(e, d2 -> d3) = |H| when d3 = d2, else 0.
        let e = p.cosets.coset_of[p.pair.group.identity_index() as usize];
        let h = p.pair.subgroup_order() as u64;
        for d2 in 0..p.hecke.dim as u32 {
            for d3 in 0..p.hecke.dim as u32 {
                let want = if d2 == d3 { h } else { 0 };
                assert_eq!(p.hecke.coeff(e, d2, d3), want, "{}", label(p));
            }
        }
    }
}

#[test]
fn hecke_anti_automorphism() {
    // sigma extends to an algebra anti-automorphism of the Hecke algebra:
    // c(d1, d2 -> d3) = c(sigma d2, sigma d1 -> sigma d3).
    for p in PIPELINES.iter() {
        let s = &p.sigma.perm;
        let n = p.hecke.dim as u32;
        for d1 in 0..n {
            for d2 in 0..n {
                for d3 in 0..n {
                    assert_eq!(
                        p.hecke.coeff(d1, d2, d3),
                        p.hecke.coeff(s[d2 as usize], s[d1 as usize], s[d3 as usize]),
                        "{} at ({}, {}, {})",
                        label(p),
                        d1,
                        d2,
                        d3
                    );
                }
            }
        }
    }
}

#[test]
fn hecke_associativity_small() {
    for p in PIPELINES.iter().filter(|p| p.hecke.dim <= 15) {
        let n = p.hecke.dim as u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: u64 = (0..n).map(|e| p.hecke.coeff(a, b, e) * p.hecke.coeff(e, c, d)).sum();
                        let rhs: u64 = (0..n).map(|e| p.hecke.coeff(b, c, e) * p.hecke.coeff(a, e, d)).sum();
                        assert_eq!(lhs, rhs, "{} at ({}, {}, {} -> {})", label(p), a, b, c, d);
                    }
                }
            }
        }
    }
}

#[test]
fn decomposition_dimension_identities() {
    for p in PIPELINES.iter() {
        let sum_md: u64 = p.decomp.constituents.iter().map(|c| c.mult * c.degree).sum();
        assert_eq!(sum_md, p.pair.index() as u64, "{}: sum m*d != [G:H]", label(p));
        assert_eq!(p.decomp.sum_mult_sq, p.cosets.count() as u64, "{}: sum m^2 != |Z|", label(p));
        assert_eq!(p.pi.degree, p.pair.index() as u64, "{}", label(p));
        // Gelfand's criterion both ways.
        let mult_free = p.decomp.constituents.iter().all(|c| c.mult == 1);
        assert_eq!(p.commutative, mult_free, "{}", label(p));
    }
}

#[test]
fn trivial_constituent_appears_once() {
    // The permutation action on G/H is transitive, so the trivial character
    // shows up with multiplicity exactly one.
    for p in PIPELINES.iter() {
        let trivial = (0..p.table.num_irreps())
            .find(|&rho| p.table.degrees[rho] == 1 && p.table.row(rho).iter().all(|&v| v == 1))
            .expect("trivial character present");
        assert_eq!(p.decomp.mult_of(trivial), 1, "{}", label(p));
    }
}

#[test]
fn profile_bounds_hold_on_live_data() {
    for p in PIPELINES.iter() {
        assert!(p.profile.fraction_holds, "{}: fraction bound violated", label(p));
        assert!(p.profile.count_holds, "{}: count bound violated", label(p));
        assert_eq!(p.profile.num_constituents, p.decomp.num_constituents(), "{}", label(p));
        assert_eq!(p.profile.num_mult_one, p.decomp.num_mult_one, "{}", label(p));
    }
}

#[test]
fn diagnostics_are_consistent() {
    for p in PIPELINES.iter() {
        let total: u64 = p.diagnostics.contingency.iter().flatten().sum();
        assert_eq!(total, p.cosets.count() as u64, "{}", label(p));
        let recount = [[0u64; 2]; 2];
        let mut recount = recount;
        for (z, &(ss, fixed)) in p.diagnostics.rows.iter().enumerate() {
            recount[ss as usize][fixed as usize] += 1;
            assert_eq!(fixed, p.sigma.is_fixed(z as u32), "{}", label(p));
        }
        assert_eq!(recount, p.diagnostics.contingency, "{}", label(p));
        assert_eq!(
            p.diagnostics.counterexamples.len() as u64,
            p.diagnostics.contingency[1][0],
            "{}",
            label(p)
        );
    }
}

#[test]
fn pipelines_reject_tiny_caps() {
    let caps = Caps { group: 10, cosets: 4096 };
    match run_pipeline("gl-torus(1,1)", 3, &caps) {
        Err(Error::GroupCapExceeded { .. }) => {}
        Err(other) => panic!("expected GroupCapExceeded, got {other:?}"),
        Ok(_) => panic!("expected GroupCapExceeded, got a pipeline"),
    }
}
