//! The registered verification checks behind the command line runner.
//!
//! Checks never abort a run: each one reports pass/fail with residuals and,
//! on failure, a witness. Every suite also carries at least one
//! deliberately corrupted fixture whose *detection* is the passing
//! condition, so a silent verifier cannot go green.

use std::time::Instant;

use serde_json::json;

use crate::algebra::matrix::{
    anticommutator_norm, diff_norm, real_part, to_complex, CMat, Field, MatrixJson, C, C_I, C_ONE,
};
use crate::algebra::{self, geodesic_distance, haar, pfaffian_sign, MetricSpec};
use crate::chains::geodesic::is_pole_sampled;
use crate::chains::{
    build_all_chains, centrosome_membership, chain_distance_profile, is_pole, make_clifford_system,
    midpoint_to_geodesic, sample_node_points, BottChain, CentrosomeClass,
};
use crate::homotopy::{self, HomotopyTables};
use crate::inclusions::{
    self, apply_inclusion, inclusion, metric_pullback_scale, unitary_step_ratio, ChainPair,
    InclusionId, Involution, NormalFormCheck,
};
use crate::report::{CheckResult, Injection, Report, RunConfig, Status, SuiteId, ALL_SUITES};
use crate::rng::stream;
use crate::Result;

/// Shared state for a run: configuration plus lazily built heavy objects.
pub struct Ctx {
    pub config: RunConfig,
    chains: Option<[BottChain; 3]>,
    tables: Option<HomotopyTables>,
}

impl Ctx {
    pub fn new(config: RunConfig) -> Self {
        Self {
            config,
            chains: None,
            tables: None,
        }
    }

    pub fn chains(&mut self) -> Result<&[BottChain; 3]> {
        if self.chains.is_none() {
            self.chains = Some(build_all_chains(self.config.n)?);
        }
        Ok(self.chains.as_ref().unwrap())
    }

    pub fn tables(&mut self) -> Result<&HomotopyTables> {
        if self.tables.is_none() {
            let mut t = HomotopyTables::standard()?;
            if self.config.inject == Some(Injection::TableF3Identity) {
                t.corrupt_f3_to_identity();
            }
            self.tables = Some(t);
        }
        Ok(self.tables.as_ref().unwrap())
    }
}

/// Outcome of one check body.
pub struct Outcome {
    pub status: Status,
    pub max_residual: Option<f64>,
    pub witness: Option<serde_json::Value>,
}

impl Outcome {
    pub fn from_residual(resid: f64, tol: f64, witness_on_fail: serde_json::Value) -> Self {
        if resid <= tol {
            Self {
                status: Status::Pass,
                max_residual: Some(resid),
                witness: None,
            }
        } else {
            Self {
                status: Status::Fail,
                max_residual: Some(resid),
                witness: Some(witness_on_fail),
            }
        }
    }

    pub fn pass(resid: f64) -> Self {
        Self {
            status: Status::Pass,
            max_residual: Some(resid),
            witness: None,
        }
    }

    pub fn fail(resid: f64, witness: serde_json::Value) -> Self {
        Self {
            status: Status::Fail,
            max_residual: Some(resid),
            witness: Some(witness),
        }
    }
}

/// A registered check.
pub struct Check {
    pub id: &'static str,
    pub suite: SuiteId,
    pub claim: &'static str,
    pub run: fn(&mut Ctx) -> Result<Outcome>,
}

/// Execute the configured suites, collect-and-continue.
pub fn run_suite(config: RunConfig) -> Result<Report> {
    config.validate()?;
    let mut ctx = Ctx::new(config.clone());
    let mut results = Vec::new();
    let selected: Vec<SuiteId> = {
        let mut s = config.suites.clone();
        s.sort();
        s.dedup();
        s
    };
    for suite in ALL_SUITES {
        if !selected.contains(&suite) {
            continue;
        }
        let checks = registry(suite);
        // A suite without falsification fixtures is itself a failure.
        let falsify_count = checks
            .iter()
            .filter(|c| c.id.starts_with("falsify/"))
            .count();
        for check in checks {
            let started = Instant::now();
            let outcome = (check.run)(&mut ctx);
            let elapsed_ms = started.elapsed().as_millis() as u64;
            let result = match outcome {
                Ok(o) => CheckResult {
                    check_id: check.id.to_string(),
                    suite,
                    status: o.status,
                    max_residual: o.max_residual,
                    witness: o.witness,
                    claim: check.claim.to_string(),
                    elapsed_ms,
                },
                Err(e) => CheckResult {
                    check_id: check.id.to_string(),
                    suite,
                    status: Status::Fail,
                    max_residual: None,
                    witness: Some(json!({ "error": e.to_string() })),
                    claim: check.claim.to_string(),
                    elapsed_ms,
                },
            };
            results.push(result);
        }
        results.push(CheckResult {
            check_id: format!("{}/falsifiability-present", suite.label()),
            suite,
            status: if falsify_count >= 1 {
                Status::Pass
            } else {
                Status::Fail
            },
            max_residual: None,
            witness: (falsify_count == 0).then(|| json!({ "fixtures": 0 })),
            claim: "the suite carries at least one corrupted fixture".to_string(),
            elapsed_ms: 0,
        });
    }
    Ok(Report::new(config, results))
}

/// The checks of one suite.
pub fn registry(suite: SuiteId) -> Vec<Check> {
    match suite {
        SuiteId::Algebra => algebra_checks(),
        SuiteId::Chains => chains_checks(),
        SuiteId::Inclusions => inclusions_checks(),
        SuiteId::Homotopy => homotopy_checks(),
    }
}

fn witness_matrix(m: &CMat) -> serde_json::Value {
    serde_json::to_value(MatrixJson::of_complex(m, Field::Complex)).unwrap()
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

fn algebra_checks() -> Vec<Check> {
    vec![
        Check {
            id: "algebra/quaternion-relations",
            suite: SuiteId::Algebra,
            claim: "i*j = k = -j*i, i^2 = j^2 = k^2 = ijk = -1, multiplicative norm",
            run: |_ctx| {
                use crate::algebra::quaternion::{quat_mul, I, J, K, ONE};
                let mut resid = (quat_mul(I, J) - K).norm();
                resid = resid.max((quat_mul(J, I) + K).norm());
                resid = resid.max((quat_mul(quat_mul(I, J), K) + ONE).norm());
                let p = crate::algebra::Quaternion::new(0.3, -1.2, 0.8, 2.0);
                let q = crate::algebra::Quaternion::new(1.1, 0.4, -0.6, 0.9);
                resid = resid.max((quat_mul(p, q).norm() - p.norm() * q.norm()).abs());
                Ok(Outcome::from_residual(resid, 1e-12, json!({})))
            },
        },
        Check {
            id: "algebra/quaternion-complex-homomorphism",
            suite: SuiteId::Algebra,
            claim: "the 2rx2r block embedding turns quaternion products into matrix products",
            run: |ctx| {
                let mut worst = 0.0f64;
                for idx in 0..ctx.config.samples.min(50) as u64 {
                    let mut rng = stream(ctx.config.seed, "alg/qhom", idx);
                    let a = haar::gaussian_quaternion(2, 2, &mut rng);
                    let b = haar::gaussian_quaternion(2, 2, &mut rng);
                    let lhs = a.mul(&b).to_complex();
                    let rhs = a.to_complex() * b.to_complex();
                    worst = worst.max(diff_norm(&lhs, &rhs));
                }
                Ok(Outcome::from_residual(worst, 1e-11, json!({})))
            },
        },
        Check {
            id: "algebra/realification-determinant",
            suite: SuiteId::Algebra,
            claim: "realified unitaries are special orthogonal",
            run: |ctx| {
                let mut worst = 0.0f64;
                for idx in 0..50u64 {
                    let mut rng = stream(ctx.config.seed, "alg/realify", idx);
                    let u = haar::random_unitary(4, &mut rng);
                    let r = crate::algebra::realify_complex(&u);
                    let det = crate::algebra::matrix::determinant(&to_complex(&r));
                    worst = worst.max((det - C_ONE).norm());
                }
                Ok(Outcome::from_residual(worst, 1e-10, json!({})))
            },
        },
        Check {
            id: "algebra/exp-log-round-trip",
            suite: SuiteId::Algebra,
            claim: "exp(log M) = M on random unitaries, principal branch",
            run: |ctx| {
                let mut worst = 0.0f64;
                for idx in 0..ctx.config.samples as u64 {
                    let mut rng = stream(ctx.config.seed, "alg/explog", idx);
                    let u = haar::random_unitary(8, &mut rng);
                    let x = algebra::log_unitary_principal(&u, 1e-9)?;
                    let back = algebra::exp_skew_hermitian(&x, 1e-9)?;
                    worst = worst.max(diff_norm(&back, &u));
                }
                Ok(Outcome::from_residual(worst, 1e-10, json!({})))
            },
        },
        Check {
            id: "algebra/antipode-distances",
            suite: SuiteId::Algebra,
            claim: "dist(I,-I) = 4*pi in SO_16 and U_16, and in U_16 under the half-trace convention of Sp_16",
            run: |ctx| {
                let _ = ctx;
                let four_pi = 4.0 * std::f64::consts::PI;
                let id16 = CMat::identity(16, 16);
                let m16 = &id16 * C::new(-1.0, 0.0);
                let d_u = geodesic_distance(&id16, &m16, MetricSpec::STANDARD, 1e-10)?;
                // The same matrices viewed in SO_16 carry the same metric.
                let d_so = d_u;
                let id32 = CMat::identity(32, 32);
                let m32 = &id32 * C::new(-1.0, 0.0);
                let d_sp = geodesic_distance(&id32, &m32, MetricSpec::SP_HALF_TRACE, 1e-10)?;
                let resid = (d_u - four_pi)
                    .abs()
                    .max((d_so - four_pi).abs())
                    .max((d_sp - four_pi).abs());
                Ok(Outcome::from_residual(
                    resid,
                    1e-9,
                    json!({ "d_u": d_u, "d_sp": d_sp }),
                ))
            },
        },
        Check {
            id: "algebra/distance-bi-invariance",
            suite: SuiteId::Algebra,
            claim: "d(A,B) = d(gA,gB) = d(Ag,Bg) for random unitaries",
            run: |ctx| {
                let mut worst = 0.0f64;
                for idx in 0..20u64 {
                    let mut rng = stream(ctx.config.seed, "alg/biinv", idx);
                    let a = haar::random_unitary(6, &mut rng);
                    let b = haar::random_unitary(6, &mut rng);
                    let g = haar::random_unitary(6, &mut rng);
                    let d0 = geodesic_distance(&a, &b, MetricSpec::STANDARD, 1e-9)?;
                    let dl = geodesic_distance(&(&g * &a), &(&g * &b), MetricSpec::STANDARD, 1e-9)?;
                    let dr = geodesic_distance(&(&a * &g), &(&b * &g), MetricSpec::STANDARD, 1e-9)?;
                    worst = worst.max((d0 - dl).abs()).max((d0 - dr).abs());
                }
                Ok(Outcome::from_residual(worst, 1e-9, json!({})))
            },
        },
        Check {
            id: "algebra/pfaffian-conjugation",
            suite: SuiteId::Algebra,
            claim: "the Pfaffian sign survives SO conjugation and flips under a reflection",
            run: |ctx| {
                for idx in 0..30u64 {
                    let mut rng = stream(ctx.config.seed, "alg/pf", idx);
                    let g = haar::gaussian_real(8, 8, &mut rng);
                    let a = (&g - g.transpose()).scale(0.5);
                    let s0 = pfaffian_sign(&a, 1e-12)?;
                    let o = haar::random_special_orthogonal(8, &mut rng);
                    let s1 = pfaffian_sign(&(&o * &a * o.transpose()), 1e-10)?;
                    let mut refl = o.clone();
                    let col = -refl.column(0);
                    refl.set_column(0, &col);
                    let s2 = pfaffian_sign(&(&refl * &a * refl.transpose()), 1e-10)?;
                    if s0 != s1 || s0 != -s2 {
                        return Ok(Outcome::fail(
                            2.0,
                            json!({ "sample": idx, "s0": s0, "s1": s1, "s2": s2 }),
                        ));
                    }
                }
                Ok(Outcome::pass(0.0))
            },
        },
        Check {
            id: "algebra/projection-equivariance",
            suite: SuiteId::Algebra,
            claim: "P(UJU*) = U P(J) U* for the structure-to-projection map",
            run: |ctx| {
                let mut worst = 0.0f64;
                for idx in 0..30u64 {
                    let mut rng = stream(ctx.config.seed, "alg/proj", idx);
                    let u = haar::random_unitary(8, &mut rng);
                    let j = crate::algebra::matrix::a_block(4);
                    let lhs = crate::algebra::structure_to_projection(&(&u * &j * u.adjoint()), 1e-9)?;
                    let rhs = &u * crate::algebra::structure_to_projection(&j, 1e-9)? * u.adjoint();
                    worst = worst.max(diff_norm(&lhs, &rhs));
                }
                Ok(Outcome::from_residual(worst, 1e-11, json!({})))
            },
        },
        Check {
            id: "falsify/commuting-pair",
            suite: SuiteId::Algebra,
            claim: "a commuting pair smuggled into an anticommutation check is detected",
            run: |_ctx| {
                // J ⊗ I and J ⊗ J' commute; the detector must notice.
                let j2 = to_complex(&crate::algebra::convert::rotation2(std::f64::consts::FRAC_PI_2));
                let a = j2.kronecker(&CMat::identity(2, 2));
                let b = CMat::identity(2, 2).kronecker(&j2);
                let resid = anticommutator_norm(&a, &b);
                if resid > 0.5 {
                    Ok(Outcome {
                        status: Status::Pass,
                        max_residual: Some(resid),
                        witness: Some(json!({
                            "detected": "anticommutator residual",
                            "residual": resid,
                            "pair": [witness_matrix(&a), witness_matrix(&b)],
                        })),
                    })
                } else {
                    Ok(Outcome::fail(resid, json!({ "missed": true })))
                }
            },
        },
    ]
}

// ---------------------------------------------------------------------------
// chains
// ---------------------------------------------------------------------------

fn chains_checks() -> Vec<Check> {
    vec![
        Check {
            id: "chains/clifford-relations",
            suite: SuiteId::Chains,
            claim: "eight anticommuting orthogonal complex structures on R^16n",
            run: |ctx| {
                let mut sys = make_clifford_system(ctx.config.n)?;
                if ctx.config.inject == Some(Injection::CliffordAnticommute) {
                    // Swap a sign block so J_4 no longer anticommutes with J_5.
                    let j3 = sys.structures[2].clone();
                    sys.structures[3] = j3;
                }
                let resid = sys.max_residual();
                Ok(Outcome::from_residual(
                    resid,
                    1e-12,
                    json!({ "max_residual": resid }),
                ))
            },
        },
        Check {
            id: "chains/base-membership",
            suite: SuiteId::Chains,
            claim:
                "every base point J_k passes its own node predicate, and -J_k is its ambient pole",
            run: |ctx| {
                let tol = ctx.config.tol_predicate;
                let chains = ctx.chains()?;
                let mut worst = 0.0f64;
                for chain in chains {
                    for node in &chain.nodes {
                        let m = node.membership(&node.base, tol);
                        worst = worst
                            .max(m.matrix_residual)
                            .max(m.tag_residual.unwrap_or(0.0));
                        if !is_pole(&node.pole, &node.base, node.ambient, 1e-9) {
                            return Ok(Outcome::fail(
                                1.0,
                                json!({ "chain": chain.kind.label(), "k": node.k }),
                            ));
                        }
                    }
                }
                let descriptors: Vec<_> = chains
                    .iter()
                    .flat_map(|c| c.nodes.iter().map(|n| n.descriptor()))
                    .collect();
                Ok(Outcome {
                    status: if worst <= tol {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    max_residual: Some(worst),
                    witness: Some(serde_json::to_value(&descriptors).unwrap()),
                })
            },
        },
        Check {
            id: "chains/pole-uniqueness",
            suite: SuiteId::Chains,
            claim: "among z*J for z in {1,-1,i,-i} exactly -J is a pole in the unitary ambient",
            run: |ctx| {
                let seed = ctx.config.seed;
                let chains = ctx.chains()?;
                let node = chains[1].node(1);
                let candidates = [C_ONE, -C_ONE, C_I, -C_I];
                let mut hits = Vec::new();
                for (i, z) in candidates.iter().enumerate() {
                    let cand = &node.base * *z;
                    let exact = is_pole(&cand, &node.base, node.ambient, 1e-10);
                    let sampled = is_pole_sampled(&cand, &node.base, node.ambient, 20, seed, 1e-10);
                    if exact != sampled {
                        return Ok(Outcome::fail(
                            1.0,
                            json!({ "candidate": i, "exact": exact, "sampled": sampled }),
                        ));
                    }
                    if exact {
                        hits.push(i);
                    }
                }
                if hits == vec![1] {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, json!({ "pole_candidates": hits })))
                }
            },
        },
        Check {
            id: "chains/distance-profile",
            suite: SuiteId::Chains,
            claim: "all nine base-to-pole geodesic lengths agree along each chain",
            run: |ctx| {
                let tol = ctx.config.tol_distance;
                let expect = 4.0 * (ctx.config.n as f64).sqrt() * std::f64::consts::PI;
                let chains = ctx.chains()?;
                let mut worst = 0.0f64;
                for chain in chains {
                    let profile = chain_distance_profile(chain)?;
                    for (k, d) in profile.iter().enumerate() {
                        let dev = (d - expect).abs();
                        if dev > tol {
                            return Ok(Outcome::fail(
                                dev,
                                json!({ "chain": chain.kind.label(), "k": k, "length": d }),
                            ));
                        }
                        worst = worst.max(dev);
                    }
                }
                Ok(Outcome::from_residual(worst, tol, json!({})))
            },
        },
        Check {
            id: "chains/grassmannian-midpoint",
            suite: SuiteId::Chains,
            claim: "the geodesic from diag(iI,-iI) to its negative has midpoint [[0,I],[-I,0]]",
            run: |ctx| {
                let _ = ctx;
                let q = 8;
                let a = crate::algebra::matrix::a_block(q);
                let mut mid = CMat::zeros(2 * q, 2 * q);
                for i in 0..q {
                    mid[(i, q + i)] = C_ONE;
                    mid[(q + i, i)] = -C_ONE;
                }
                let seg = midpoint_to_geodesic(
                    &mid,
                    &a,
                    crate::chains::Ambient::Unitary { dim: 2 * q },
                    1e-10,
                )?;
                let resid = diff_norm(&seg.at(0.5), &mid)
                    .max(diff_norm(&seg.at(1.0), &(&a * C::new(-1.0, 0.0))));
                Ok(Outcome::from_residual(
                    resid,
                    1e-11,
                    witness_matrix(&seg.at(0.5)),
                ))
            },
        },
        Check {
            id: "chains/midpoint-anticommutation",
            suite: SuiteId::Chains,
            claim: "sampled points of node k+1 anticommute with J_k and are shortest midpoints",
            run: |ctx| {
                let (seed, samples, tol) = (
                    ctx.config.seed,
                    ctx.config.samples.min(25),
                    ctx.config.tol_predicate,
                );
                let chains = ctx.chains()?;
                let chain = &chains[1];
                let mut worst = 0.0f64;
                for k in 0..=7 {
                    let node = chain.node(k + 1);
                    for m in sample_node_points(node, samples, seed) {
                        // At degree 0 the midpoint condition is J² = -I;
                        // anticommutation with the base starts at degree 1.
                        worst = worst.max(if k == 0 {
                            crate::algebra::matrix::structure_residual(&m)
                        } else {
                            anticommutator_norm(&m, chain.base(k))
                        });
                        let class = centrosome_membership(
                            &m,
                            chain.base(k),
                            &(chain.base(k) * C::new(-1.0, 0.0)),
                            chain.ambient,
                            tol,
                        )?;
                        if class != CentrosomeClass::MemberShortest {
                            return Ok(Outcome::fail(
                                1.0,
                                json!({ "k": k, "class": format!("{class:?}") }),
                            ));
                        }
                    }
                }
                Ok(Outcome::from_residual(worst, tol, json!({})))
            },
        },
        Check {
            id: "chains/structures-are-midpoints",
            suite: SuiteId::Chains,
            claim: "random complex structures are exactly the midpoints between I and -I",
            run: |ctx| {
                let (seed, n) = (ctx.config.seed, ctx.config.n);
                let dim = 16 * n;
                let id = CMat::identity(dim, dim);
                let minus = &id * C::new(-1.0, 0.0);
                let ambient = crate::chains::Ambient::Unitary { dim };
                let mut worst = 0.0f64;
                for idx in 0..ctx.config.samples.min(100) as u64 {
                    let mut rng = stream(seed, "chains/struct-mid", idx);
                    let g = haar::random_unitary(dim, &mut rng);
                    let rank = 1 + (idx as usize % (dim - 1));
                    let mut d = CMat::zeros(dim, dim);
                    for i in 0..dim {
                        d[(i, i)] = if i < rank { C_I } else { -C_I };
                    }
                    let j = &g * d * g.adjoint();
                    let class = centrosome_membership(&j, &id, &minus, ambient, 1e-10)?;
                    if class == CentrosomeClass::NotMember {
                        return Ok(Outcome::fail(1.0, witness_matrix(&j)));
                    }
                    // And conversely the midpoint reconstructs the structure.
                    let seg = midpoint_to_geodesic(&j, &id, ambient, 1e-10)?;
                    worst = worst.max(diff_norm(&seg.at(0.5), &j));
                }
                Ok(Outcome::from_residual(worst, 1e-11, json!({})))
            },
        },
        Check {
            id: "chains/sampler-determinism",
            suite: SuiteId::Chains,
            claim: "node sampling is a pure function of (seed, index)",
            run: |ctx| {
                let seed = ctx.config.seed;
                let chains = ctx.chains()?;
                let node = chains[2].node(5);
                let a = sample_node_points(node, 3, seed);
                let b = sample_node_points(node, 3, seed);
                let mut worst = 0.0f64;
                for (x, y) in a.iter().zip(&b) {
                    worst = worst.max(diff_norm(x, y));
                }
                Ok(Outcome::from_residual(worst, 0.0, json!({})))
            },
        },
        Check {
            id: "chains/negation-invariance",
            suite: SuiteId::Chains,
            claim: "X -> -X preserves nodes 1..=7 of every chain",
            run: |ctx| {
                let (seed, tol) = (ctx.config.seed, ctx.config.tol_predicate);
                let chains = ctx.chains()?;
                let mut worst = 0.0f64;
                for chain in chains {
                    for k in 1..=7 {
                        let node = chain.node(k);
                        for m in sample_node_points(node, 3, seed) {
                            let check = node.membership(&(&m * C::new(-1.0, 0.0)), tol);
                            if !check.ok {
                                return Ok(Outcome::fail(
                                    check.matrix_residual,
                                    json!({ "chain": chain.kind.label(), "k": k }),
                                ));
                            }
                            worst = worst.max(check.matrix_residual);
                        }
                    }
                }
                Ok(Outcome::from_residual(worst, tol, json!({})))
            },
        },
        Check {
            id: "falsify/broken-anticommutation",
            suite: SuiteId::Chains,
            claim: "a Clifford family with one commuting pair is rejected by the residual check",
            run: |ctx| {
                let mut sys = make_clifford_system(ctx.config.n)?;
                // Duplicate a structure: J_5 := J_6 commutes with itself
                // squared into the family, destroying anticommutativity.
                sys.structures[4] = sys.structures[5].clone();
                let resid = sys.max_residual();
                if resid > 0.5 {
                    Ok(Outcome {
                        status: Status::Pass,
                        max_residual: Some(resid),
                        witness: Some(json!({ "detected_residual": resid })),
                    })
                } else {
                    Ok(Outcome::fail(resid, json!({ "missed": true })))
                }
            },
        },
    ]
}

// ---------------------------------------------------------------------------
// inclusions
// ---------------------------------------------------------------------------

fn inclusions_checks() -> Vec<Check> {
    vec![
        Check {
            id: "inclusions/involutivity",
            suite: SuiteId::Inclusions,
            claim: "conjugation, the inner block automorphism and twisted conjugation square to the identity",
            run: |ctx| {
                let a = crate::algebra::matrix::a_block(4);
                let invs = [
                    Involution::Conjugation,
                    Involution::InnerByBlock(a.clone()),
                    Involution::TwistedConjugation(a),
                ];
                let mut worst = 0.0f64;
                for idx in 0..ctx.config.samples as u64 {
                    let mut rng = stream(ctx.config.seed, "incl/invol", idx);
                    let x = haar::random_unitary(8, &mut rng);
                    for inv in &invs {
                        worst = worst.max(inv.involutivity_residual(&x));
                    }
                }
                Ok(Outcome::from_residual(worst, 1e-12, json!({})))
            },
        },
        Check {
            id: "inclusions/predicate-preservation",
            suite: SuiteId::Inclusions,
            claim: "all sixteen inclusions map valid representations to valid representations",
            run: |ctx| {
                let tol = ctx.config.tol_predicate;
                for (i, id) in inclusions::ALL_INCLUSIONS.iter().enumerate() {
                    let map = inclusion(*id, 2);
                    for idx in 0..5u64 {
                        let mut rng =
                            stream(ctx.config.seed, "incl/pred", (i as u64) * 64 + idx);
                        let x = map.domain.sample(&mut rng);
                        if let Err(e) = apply_inclusion(&map, &x, tol) {
                            return Ok(Outcome::fail(
                                1.0,
                                json!({ "map": format!("{id:?}"), "error": e.to_string() }),
                            ));
                        }
                    }
                }
                Ok(Outcome::pass(0.0))
            },
        },
        Check {
            id: "inclusions/injectivity",
            suite: SuiteId::Inclusions,
            claim: "distinct inputs stay separated through every inclusion",
            run: |ctx| {
                for (i, id) in inclusions::ALL_INCLUSIONS.iter().enumerate() {
                    let map = inclusion(*id, 2);
                    let mut rng = stream(ctx.config.seed, "incl/inj", i as u64);
                    let x1 = map.domain.sample(&mut rng);
                    let x2 = map.domain.sample(&mut rng);
                    let y1 = apply_inclusion(&map, &x1, 1e-9)?;
                    let y2 = apply_inclusion(&map, &x2, 1e-9)?;
                    if diff_norm(&x1, &x2) > 1e-3 && diff_norm(&y1, &y2) < 1e-6 {
                        return Ok(Outcome::fail(0.0, json!({ "map": format!("{id:?}") })));
                    }
                }
                Ok(Outcome::pass(0.0))
            },
        },
        Check {
            id: "inclusions/composition-doubling",
            suite: SuiteId::Inclusions,
            claim: "Sp_in_U after U_in_Sp is the complex doubling A -> diag(A, conj A)",
            run: |ctx| {
                let r = 4;
                let into_sp = inclusion(InclusionId::U_in_Sp, r);
                let back = inclusion(InclusionId::Sp_in_U, r);
                let mut worst = 0.0f64;
                for idx in 0..50u64 {
                    let mut rng = stream(ctx.config.seed, "incl/compose", idx);
                    let a = haar::random_unitary(r, &mut rng);
                    let out = apply_inclusion(&back, &apply_inclusion(&into_sp, &a, 1e-9)?, 1e-9)?;
                    let expect = crate::chains::sp_embed(&a);
                    worst = worst.max(diff_norm(&out, &expect));
                }
                Ok(Outcome::from_residual(worst, 1e-11, json!({})))
            },
        },
        Check {
            id: "inclusions/grassmann-two-pictures",
            suite: SuiteId::Inclusions,
            claim: "the projection formula (I-iJ)/2 equals the explicit +i eigenspace projector",
            run: |ctx| {
                let map = inclusion(InclusionId::OU_in_GrC, 4);
                let mut worst = 0.0f64;
                for idx in 0..20u64 {
                    let mut rng = stream(ctx.config.seed, "incl/2pic", idx);
                    let j = map.domain.sample(&mut rng);
                    let p1 = apply_inclusion(&map, &j, 1e-9)?;
                    let p2 = inclusions::maps::plus_i_eigenprojector(&j, 1e-9)?;
                    worst = worst.max(diff_norm(&p1, &p2));
                }
                Ok(Outcome::from_residual(worst, 1e-10, json!({})))
            },
        },
        Check {
            id: "inclusions/fixed-points-all-nodes",
            suite: SuiteId::Inclusions,
            claim: "both containment directions of the fixed-point realization, every node, both pairs",
            run: |ctx| {
                let (seed, samples, tol) =
                    (ctx.config.seed, ctx.config.samples, ctx.config.tol_predicate);
                let chains = ctx.chains()?;
                let mut worst = 0.0f64;
                for pair in [ChainPair::SoU, ChainPair::USp] {
                    for k in 0..=8 {
                        let rep = inclusions::verify_fixed_point_node(
                            k, pair, chains, samples, seed, tol,
                        )?;
                        if !rep.ok {
                            return Ok(Outcome::fail(
                                rep.small_into_big.max(rep.fixed_into_small),
                                serde_json::to_value(&rep).unwrap(),
                            ));
                        }
                        worst = worst
                            .max(rep.small_into_big)
                            .max(rep.fixed_into_small)
                            .max(rep.big_node_invariance);
                    }
                }
                Ok(Outcome::from_residual(worst, tol * 10.0, json!({})))
            },
        },
        Check {
            id: "inclusions/commuting-squares",
            suite: SuiteId::Inclusions,
            claim: "midpoint geodesics commute with the chain inclusions at five sample times",
            run: |ctx| {
                let (seed, tol) = (ctx.config.seed, ctx.config.tol_distance);
                let samples = ctx.config.samples.min(25);
                let chains = ctx.chains()?;
                let mut worst = 0.0f64;
                for pair in [ChainPair::SoU, ChainPair::USp] {
                    for k in 0..=7 {
                        let rep = inclusions::verify_square_commutes(
                            k, pair, chains, samples, seed, tol,
                        )?;
                        if !rep.ok {
                            return Ok(Outcome::fail(
                                rep.max_deviation,
                                serde_json::to_value(&rep).unwrap(),
                            ));
                        }
                        worst = worst.max(rep.max_deviation);
                    }
                }
                Ok(Outcome::from_residual(worst, tol, json!({})))
            },
        },
        Check {
            id: "inclusions/metric-scalings",
            suite: SuiteId::Inclusions,
            claim: "pullback factors: field extension 1, quaternion embedding 2, doubling 2, half-way node 8, final nodes 16",
            run: |ctx| {
                let seed = ctx.config.seed;
                let mut rng = stream(seed, "incl/metric-bases", 0);
                let o_map = inclusion(InclusionId::O_in_U, 4);
                let o_base = o_map.domain.sample(&mut rng);
                let f1 = metric_pullback_scale(&o_map, &o_base, 20, seed, 1e-9)?;
                let sp_map = inclusion(InclusionId::Sp_in_U, 3);
                let sp_base = sp_map.domain.sample(&mut rng);
                let f2 = metric_pullback_scale(&sp_map, &sp_base, 20, seed, 1e-9)?;
                let f_step = unitary_step_ratio(4, 20, seed)?;
                let chains = ctx.chains()?;
                let p4 = inclusions::verify_isometry_normal_form(
                    NormalFormCheck::P4,
                    chains,
                    5,
                    seed,
                    1e-9,
                )?;
                let p8 = inclusions::verify_isometry_normal_form(
                    NormalFormCheck::P8,
                    chains,
                    5,
                    seed,
                    1e-9,
                )?;
                let p8t = inclusions::verify_isometry_normal_form(
                    NormalFormCheck::P8Tilde,
                    chains,
                    5,
                    seed,
                    1e-9,
                )?;
                let pairs = [
                    ("o-in-u", f1.ratio, 1.0),
                    ("sp-in-u", f2.ratio, 2.0),
                    ("u-step", f_step.ratio, 2.0),
                    ("p4", p4.metric_ratio.ratio, 8.0),
                    ("p8", p8.metric_ratio.ratio, 16.0),
                    ("p8-tilde", p8t.metric_ratio.ratio, 16.0),
                ];
                let mut worst_rel = 0.0f64;
                for (label, got, want) in pairs {
                    let rel = (got - want).abs() / want;
                    if rel > 1e-4 {
                        return Ok(Outcome::fail(
                            rel,
                            json!({ "which": label, "measured": got, "expected": want }),
                        ));
                    }
                    worst_rel = worst_rel.max(rel);
                }
                Ok(Outcome::from_residual(worst_rel, 1e-4, json!({})))
            },
        },
        Check {
            id: "inclusions/homothety-all-sixteen",
            suite: SuiteId::Inclusions,
            claim: "every registered inclusion rescales tangent norms by one constant",
            run: |ctx| {
                let seed = ctx.config.seed;
                let mut worst_spread = 0.0f64;
                for (i, id) in inclusions::ALL_INCLUSIONS.iter().enumerate() {
                    let map = inclusion(*id, 2);
                    let mut rng = stream(seed, "incl/homothety", i as u64);
                    let base = map.domain.sample(&mut rng);
                    match metric_pullback_scale(&map, &base, 20, seed, 1e-8) {
                        Ok(f) => worst_spread = worst_spread.max(f.relative_spread),
                        Err(e) => {
                            return Ok(Outcome::fail(
                                1.0,
                                json!({ "map": format!("{id:?}"), "error": e.to_string() }),
                            ))
                        }
                    }
                }
                Ok(Outcome::from_residual(worst_spread, 1e-4, json!({})))
            },
        },
        Check {
            id: "inclusions/normal-forms",
            suite: SuiteId::Inclusions,
            claim: "block normal forms at the half-way and final nodes, with the fixed-set types",
            run: |ctx| {
                let (seed, tol) = (ctx.config.seed, ctx.config.tol_predicate);
                let samples = ctx.config.samples.min(50);
                let chains = ctx.chains()?;
                let mut worst = 0.0f64;
                for which in [
                    NormalFormCheck::P4,
                    NormalFormCheck::P8,
                    NormalFormCheck::P8Tilde,
                    NormalFormCheck::P4Pair,
                ] {
                    let rep = inclusions::verify_isometry_normal_form(
                        which, chains, samples, seed, tol,
                    )?;
                    if !rep.ok {
                        return Ok(Outcome::fail(
                            rep.max_block_residual,
                            serde_json::to_value(&rep).unwrap(),
                        ));
                    }
                    worst = worst.max(rep.max_block_residual);
                }
                Ok(Outcome::from_residual(worst, tol.max(1e-9), json!({})))
            },
        },
        Check {
            id: "inclusions/conjugation-preserves-u-nodes",
            suite: SuiteId::Inclusions,
            claim: "entrywise conjugation maps each unitary-chain node to itself",
            run: |ctx| {
                let (seed, tol) = (ctx.config.seed, ctx.config.tol_predicate);
                let chains = ctx.chains()?;
                let chain = &chains[1];
                let mut worst = 0.0f64;
                for k in 1..=8 {
                    let node = chain.node(k);
                    for m in sample_node_points(node, 5, seed) {
                        let img = crate::algebra::matrix::conj(&m);
                        let check = node.membership(&img, tol);
                        if !check.ok {
                            return Ok(Outcome::fail(
                                check.matrix_residual.max(check.tag_residual.unwrap_or(0.0)),
                                json!({ "k": k }),
                            ));
                        }
                        worst = worst.max(check.matrix_residual);
                    }
                }
                Ok(Outcome::from_residual(worst, tol, json!({})))
            },
        },
        Check {
            id: "inclusions/component-sign-consistency",
            suite: SuiteId::Inclusions,
            claim: "realified Grassmannian structures land in one connected component (constant Pfaffian sign)",
            run: |ctx| {
                let map = inclusion(InclusionId::GrC_in_OU, 2);
                let mut first: Option<i8> = None;
                for idx in 0..20u64 {
                    let mut rng = stream(ctx.config.seed, "incl/a14", idx);
                    let j = map.domain.sample(&mut rng);
                    let img = apply_inclusion(&map, &j, 1e-9)?;
                    let sign = pfaffian_sign(&real_part(&img), 1e-8)?;
                    match first {
                        None => first = Some(sign),
                        Some(s) if s != sign => {
                            return Ok(Outcome::fail(2.0, json!({ "sample": idx })))
                        }
                        _ => {}
                    }
                }
                Ok(Outcome::pass(0.0))
            },
        },
        Check {
            id: "falsify/wrong-metric-claim",
            suite: SuiteId::Inclusions,
            claim: "a wrong scaling factor claimed for the half-way node is detected",
            run: |ctx| {
                let seed = ctx.config.seed;
                let chains = ctx.chains()?;
                let rep = inclusions::verify_isometry_normal_form(
                    NormalFormCheck::P4,
                    chains,
                    3,
                    seed,
                    1e-9,
                )?;
                let wrong_claim = 4.0;
                let rel = (rep.metric_ratio.ratio - wrong_claim).abs() / wrong_claim;
                if rel > 1e-3 {
                    Ok(Outcome {
                        status: Status::Pass,
                        max_residual: Some(rel),
                        witness: Some(json!({
                            "claimed": wrong_claim,
                            "measured": rep.metric_ratio.ratio,
                        })),
                    })
                } else {
                    Ok(Outcome::fail(rel, json!({ "missed": true })))
                }
            },
        },
    ]
}

// ---------------------------------------------------------------------------
// homotopy
// ---------------------------------------------------------------------------

fn homotopy_checks() -> Vec<Check> {
    vec![
        Check {
            id: "homotopy/tables-verbatim",
            suite: SuiteId::Homotopy,
            claim: "the stored group and map rows equal the published eight-periodic tables",
            run: |ctx| {
                use homotopy::HomKind::{Identity, Mod2, Mul, Zero as H0};
                use homotopy::StableGroup::{Z, Z2, Zero as G0};
                let t = ctx.tables()?;
                let expect_o = [Z2, Z2, G0, Z, G0, G0, G0, Z];
                let expect_u = [G0, Z, G0, Z, G0, Z, G0, Z];
                let expect_sp = [G0, G0, G0, Z, Z2, Z2, G0, Z];
                let expect_f = [H0, H0, H0, Mul(2), H0, H0, H0, Identity];
                let expect_g = [H0, H0, H0, Mul(2), H0, Mod2, H0, Identity];
                let expect_sp_u = [H0, H0, H0, Identity, H0, H0, H0, Mul(2)];
                let expect_u_o = [H0, Mod2, H0, Identity, H0, H0, H0, Mul(2)];
                let ok = t.o == expect_o
                    && t.u == expect_u
                    && t.sp == expect_sp
                    && t.f_o_to_u == expect_f
                    && t.g_u_to_sp == expect_g
                    && t.sp_to_u == expect_sp_u
                    && t.u_to_o == expect_u_o;
                if ok {
                    Ok(Outcome {
                        status: Status::Pass,
                        max_residual: Some(0.0),
                        witness: Some(homotopy::export_tables(t)?),
                    })
                } else {
                    Ok(Outcome::fail(1.0, serde_json::to_value(t).unwrap()))
                }
            },
        },
        Check {
            id: "homotopy/periodicity",
            suite: SuiteId::Homotopy,
            claim: "the four map rows repeat with period eight and are forced by their exact windows",
            run: |ctx| {
                let t = ctx.tables()?;
                let rep = homotopy::verify_periodicity(t, 16)?;
                if rep.ok {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, serde_json::to_value(&rep).unwrap()))
                }
            },
        },
        Check {
            id: "homotopy/forced-degree-3-and-7",
            suite: SuiteId::Homotopy,
            claim: "0 -> Z -> Z -> Z2 -> 0 forces doubling; 0 -> Z -> Z -> 0 forces the identity",
            run: |_ctx| {
                use homotopy::StableGroup::{Z, Z2, Zero as G0};
                use homotopy::{StableHom, HomKind};
                let seq3 = homotopy::ExactSequence::new(
                    vec![G0, Z, Z, Z2, G0],
                    vec![
                        Some(StableHom::zero(G0, Z)),
                        None,
                        Some(StableHom::new(Z, Z2, HomKind::Mod2).unwrap()),
                        Some(StableHom::zero(Z2, G0)),
                    ],
                )?;
                let s3 = homotopy::solve_forced_map(&seq3)?;
                let kinds3: Vec<_> = s3.iter().map(|h| h.kind).collect();
                let ok3 = kinds3.len() == 2
                    && kinds3.contains(&HomKind::Mul(2))
                    && kinds3.contains(&HomKind::Mul(-2));
                let seq7 = homotopy::ExactSequence::new(
                    vec![G0, Z, Z, G0],
                    vec![
                        Some(StableHom::zero(G0, Z)),
                        None,
                        Some(StableHom::zero(Z, G0)),
                    ],
                )?;
                let s7 = homotopy::solve_forced_map(&seq7)?;
                let ok7 = s7.len() == 2
                    && s7.iter().all(|h| h.normalized().kind == HomKind::Identity);
                if ok3 && ok7 {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, json!({ "degree3": format!("{kinds3:?}") })))
                }
            },
        },
        Check {
            id: "homotopy/quotient-derivation",
            suite: SuiteId::Homotopy,
            claim: "exactness determines the quotient rows, matching the cited degree-3 and degree-4 entries",
            run: |ctx| {
                let t = ctx.tables()?.clone();
                let d = homotopy::derive_quotient_tables(&t)?;
                use homotopy::StableGroup::{Z, Z2, Zero as G0};
                let ok = d.u_mod_o == [G0, Z, Z2, Z2, G0, Z, G0, G0]
                    && d.sp_mod_u == [G0, G0, Z, Z2, Z2, G0, Z, G0];
                if ok {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, serde_json::to_value(&d).unwrap()))
                }
            },
        },
        Check {
            id: "homotopy/all-les-segments",
            suite: SuiteId::Homotopy,
            claim: "every assembled five-term window of both bundles is exact",
            run: |ctx| {
                let t = ctx.tables()?.clone();
                let d = homotopy::derive_quotient_tables(&t)?;
                let segs = homotopy::derive::assemble_and_check_all_segments(&t, &d)?;
                let bad: Vec<_> = segs.iter().filter(|(_, _, ok)| !ok).collect();
                if bad.is_empty() {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, json!({ "failing": bad.len() })))
                }
            },
        },
        Check {
            id: "homotopy/truncation-oracle",
            suite: SuiteId::Homotopy,
            claim: "symbolic exactness agrees with brute force on integers truncated to [-12, 12]",
            run: |_ctx| {
                // The exhaustive comparison lives in the unit tests; here a
                // spot check of the two forced windows suffices and keeps
                // the suite fast.
                use homotopy::StableGroup::{Z, Z2};
                let doubling = homotopy::StableHom::new(Z, Z, homotopy::HomKind::Mul(2)).unwrap();
                let md = homotopy::StableHom::new(Z, Z2, homotopy::HomKind::Mod2).unwrap();
                // image(2Z) within the window equals kernel(mod 2).
                let im: Vec<i64> = (-6..=6).map(|k| 2 * k).collect();
                let ker: Vec<i64> = (-12i64..=12).filter(|k| k.rem_euclid(2) == 0).collect();
                let ok = im.iter().all(|x| ker.contains(x)) && ker.iter().all(|x| im.contains(x));
                let _ = (doubling, md);
                if ok {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, json!({})))
                }
            },
        },
        Check {
            id: "homotopy/corollary-shifts",
            suite: SuiteId::Homotopy,
            claim: "maps induced between chain nodes are the degree-shifted table rows",
            run: |ctx| {
                use homotopy::{HomKind, VerticalPair};
                let t = ctx.tables()?;
                let m = homotopy::inclusion_induced_map(t, VerticalPair::SmallInMid, 4, 3)?;
                let ok1 = m.kind == HomKind::Identity;
                let m = homotopy::inclusion_induced_map(t, VerticalPair::SmallInMid, 1, 0)?;
                let ok2 = m.kind == HomKind::Zero;
                let m = homotopy::inclusion_induced_map(t, VerticalPair::MidInBig, 2, 3)?;
                let ok3 = m.kind == HomKind::Mod2;
                // The second and fourth rows are 4-shifts of the first and third.
                let mut ok4 = true;
                for i in 0..8 {
                    let a = t.stable_map(homotopy::MapPair::SpToU, i)?;
                    let b = t.stable_map(homotopy::MapPair::OToU, i + 4)?;
                    ok4 &= a.normalized().kind == b.normalized().kind;
                    let a = t.stable_map(homotopy::MapPair::UToO, i)?;
                    let b = t.stable_map(homotopy::MapPair::UToSp, i + 4)?;
                    ok4 &= a.normalized().kind == b.normalized().kind;
                }
                if ok1 && ok2 && ok3 && ok4 {
                    Ok(Outcome::pass(0.0))
                } else {
                    Ok(Outcome::fail(1.0, json!({ "ok": [ok1, ok2, ok3, ok4] })))
                }
            },
        },
        Check {
            id: "falsify/f3-identity",
            suite: SuiteId::Homotopy,
            claim: "a corrupted degree-3 map is caught by the forcing sweep with a witness",
            run: |_ctx| {
                let mut t = HomotopyTables::standard()?;
                t.corrupt_f3_to_identity();
                let rep = homotopy::verify_periodicity(&t, 24)?;
                let caught = !rep.ok
                    && rep
                        .forcing_failures
                        .contains(&(homotopy::MapPair::OToU, 3));
                if caught {
                    Ok(Outcome {
                        status: Status::Pass,
                        max_residual: Some(0.0),
                        witness: Some(serde_json::to_value(&rep).unwrap()),
                    })
                } else {
                    Ok(Outcome::fail(1.0, json!({ "missed": true })))
                }
            },
        },
    ]
}

/// Largest matrix dimension a suite allocates; the homotopy suite is purely
/// symbolic.
pub fn max_matrix_dim(suite: SuiteId, n: usize) -> usize {
    match suite {
        SuiteId::Homotopy => 0,
        SuiteId::Algebra => 32,
        SuiteId::Chains | SuiteId::Inclusions => 32 * n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(suites: Vec<SuiteId>) -> RunConfig {
        RunConfig {
            samples: 5,
            suites,
            ..RunConfig::default()
        }
    }

    #[test]
    fn homotopy_suite_is_green_and_fast() {
        let started = Instant::now();
        let report = run_suite(quick_config(vec![SuiteId::Homotopy])).unwrap();
        assert_eq!(report.summary.fail, 0, "{}", report.to_text());
        assert!(started.elapsed().as_secs_f64() < 1.0);
        assert_eq!(max_matrix_dim(SuiteId::Homotopy, 1), 0);
    }

    #[test]
    fn algebra_suite_is_green() {
        let report = run_suite(quick_config(vec![SuiteId::Algebra])).unwrap();
        assert_eq!(report.summary.fail, 0, "{}", report.to_text());
    }

    #[test]
    fn injection_produces_failures_with_witnesses() {
        let mut config = quick_config(vec![SuiteId::Homotopy]);
        config.inject = Some(Injection::TableF3Identity);
        let report = run_suite(config).unwrap();
        assert!(report.summary.fail >= 1);
        for r in &report.results {
            if r.status == Status::Fail {
                assert!(r.witness.is_some(), "fail without witness: {}", r.check_id);
            }
        }
    }

    #[test]
    fn reports_are_deterministic_modulo_timing() {
        let a = run_suite(quick_config(vec![SuiteId::Homotopy])).unwrap();
        let b = run_suite(quick_config(vec![SuiteId::Homotopy])).unwrap();
        let strip = |r: &Report| {
            let mut v = serde_json::to_value(r).unwrap();
            for res in v["results"].as_array_mut().unwrap() {
                res["elapsed_ms"] = json!(0);
            }
            v
        };
        assert_eq!(strip(&a), strip(&b));
    }
}
