//! One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

mod common;

use std::process::ExitCode;

use ndt_core::decompose::PseudoOutcome;
use ndt_core::families::{
    gen_sharp_base, gen_sharp_glued, gen_tree_family, SharpnessParams, TreeFamilyParams,
};
use ndt_core::hall::{extract_bounded_branching_traced, ExtractionState};
use ndt_core::oracle::enumerate_decompositions;
use ndt_core::{
    brute_decompose, brute_gamma, brute_mad, check_hall, fractional_arboricity, frank_decompose,
    max_average_degree, ndt_branching_decompose, pseudo_ndt_decompose, verify_decomposition,
    DecompositionKind, DecompositionQuery, Digraph, HallInstance, HallViolation, NdtError,
    OracleBudget, OracleVerdict, Rational,
};
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget(max_vertices: usize) -> OracleBudget {
    OracleBudget {
        max_vertices,
        ..OracleBudget::default()
    }
}

fn threshold(k: usize, d: usize) -> Rational {
    Rational::new((d * (k + 1)) as i64, (d + 1) as i64)
}

fn sharpness() -> Outcome {
    let params = [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 1, 3), (2, 2, 3)];
    for &(k, d, n) in &params {
        let p = SharpnessParams::new(k, d, n).map_err(|e| e.to_string())?;
        let (g, _) = gen_sharp_glued(&p).map_err(|e| e.to_string())?;
        let expected = Rational::new((d * (k + 1) * n) as i64, ((d + 1) * n - 1) as i64);
        let (gamma, _) = fractional_arboricity(&g).map_err(|e| e.to_string())?;
        let brute = brute_gamma(&g, &budget(18)).map_err(|e| e.to_string())?;
        ensure(gamma == expected && brute == expected, || {
            format!("({k},{d},{n}): gamma {gamma}, brute {brute}, expected {expected}")
        })?;
        ensure(g.max_in_degree() == k + 1, || {
            format!("({k},{d},{n}): max in-degree {}", g.max_in_degree())
        })?;
    }
    let (g, _) = gen_sharp_glued(&SharpnessParams::new(1, 1, 2).unwrap()).unwrap();
    let q = DecompositionQuery::bounded(1, 1, DecompositionKind::Branching);
    let verdict = brute_decompose(&g, &q, &OracleBudget::default()).map_err(|e| e.to_string())?;
    ensure(verdict == OracleVerdict::Infeasible, || {
        "oracle found a decomposition of D(1,1,2)".into()
    })?;
    Ok(format!(
        "{} parameter sets match the closed form; D(1,1,2) has no 2-branching split with out-degree 1",
        params.len()
    ))
}

fn ndt_suite() -> Outcome {
    let mut r = rng(0x4e44_5401);
    let (mut accepted, mut with_t, mut attempts) = (0, 0, 0);
    while accepted < 500 {
        attempts += 1;
        ensure(attempts < 200_000, || {
            format!("only {accepted} instances generated")
        })?;
        let k = r.gen_range(1..=3);
        let d = r.gen_range(1..=k);
        let n = r.gen_range(2..=12);
        let m = r.gen_range(1..=14);
        let dg = match attempts % 3 {
            0 => skewed_digraph(&mut r, n, m, k),
            1 => random_digraph(&mut r, n, m, Some(k + 1)),
            _ if n >= 3 => hub_digraph(&mut r, n, (m / (k + 1)).clamp(1, n - 1), k),
            _ => continue,
        };
        if brute_gamma(&dg, &OracleBudget::default()).unwrap() > threshold(k, d) {
            continue;
        }
        accepted += 1;
        if dg.max_in_degree() == k + 1 {
            with_t += 1;
        }
        let dec = ndt_branching_decompose(&dg, k, d)
            .map_err(|e| format!("k={k} d={d} arcs={:?}: {e}", dg.arcs()))?;
        ensure(verify_decomposition(&dec, Some(d)).is_ok(), || {
            format!("verify rejected output on arcs {:?}", dg.arcs())
        })?;
        ensure(
            dec.parts == k + 1
                && assignment_is_valid(
                    &dg,
                    &dec.assignment,
                    k + 1,
                    DecompositionKind::Branching,
                    Some(d),
                ),
            || format!("independent check rejected output on arcs {:?}", dg.arcs()),
        )?;
    }
    Ok(format!(
        "{accepted}/{accepted} decomposed and verified ({with_t} with in-degree k+1 present)"
    ))
}

fn pseudo_suite() -> Outcome {
    let mut r = rng(0x4e44_5402);
    let (mut accepted, mut attempts, mut swaps, mut residue) = (0, 0, 0, 0);
    while accepted < 500 {
        attempts += 1;
        ensure(attempts < 200_000, || {
            format!("only {accepted} instances generated")
        })?;
        let k = r.gen_range(1..=3);
        let d = r.gen_range(1..=4);
        let n = r.gen_range(2..=12);
        let m = r.gen_range(1..=14);
        let dg = match attempts % 3 {
            0 => skewed_digraph(&mut r, n, m, k),
            1 => random_digraph(&mut r, n, m, Some(k + 1)),
            _ if n >= 3 => hub_digraph(&mut r, n, (m / (k + 1)).clamp(1, n - 1), k),
            _ => continue,
        };
        if brute_mad(&dg, &OracleBudget::default()).unwrap() / 2 > threshold(k, d) {
            continue;
        }
        accepted += 1;
        match pseudo_ndt_decompose(&dg, k, d).map_err(|e| e.to_string())? {
            PseudoOutcome::Decomposed {
                decomposition,
                stats,
            } => {
                swaps += stats.swaps;
                residue += stats.initial_residue;
                ensure(
                    verify_decomposition(&decomposition, Some(d)).is_ok()
                        && assignment_is_valid(
                            &dg,
                            &decomposition.assignment,
                            k + 1,
                            DecompositionKind::PseudoBranching,
                            Some(d),
                        ),
                    || format!("k={k} d={d}: invalid output on arcs {:?}", dg.arcs()),
                )?;
            }
            PseudoOutcome::Certificate(c) => {
                return Err(format!(
                    "certificate {:?} under the hypothesis, k={k} d={d}, arcs {:?}",
                    c.vertices,
                    dg.arcs()
                ))
            }
        }
    }
    // inputs outside the hypothesis: every certificate must be genuine
    let (mut certificates, mut dense) = (0, 0);
    for i in 0..2000 {
        let k = r.gen_range(1..=2);
        let d = r.gen_range(1..=3);
        let n = r.gen_range(2..=8);
        let m = r.gen_range(4..=14);
        let dg = if i % 2 == 0 {
            skewed_digraph(&mut r, n, m, k)
        } else {
            random_digraph(&mut r, n, m, Some(k + 1))
        };
        let bound = threshold(k, d);
        if brute_mad(&dg, &OracleBudget::default()).unwrap() / 2 <= bound {
            continue;
        }
        dense += 1;
        match pseudo_ndt_decompose(&dg, k, d).map_err(|e| e.to_string())? {
            PseudoOutcome::Certificate(c) => {
                certificates += 1;
                let induced = dg
                    .count_induced_arcs(&c.vertices)
                    .map_err(|e| e.to_string())?;
                let ratio = Rational::new(induced as i64, c.vertices.len() as i64);
                ensure(
                    c.verify(&dg) && ratio > bound && c.ratio > bound && c.bound == bound,
                    || format!("bogus certificate {:?} on arcs {:?}", c.vertices, dg.arcs()),
                )?;
            }
            PseudoOutcome::Decomposed { decomposition, .. } => {
                ensure(
                    verify_decomposition(&decomposition, Some(d)).is_ok(),
                    || format!("invalid output on arcs {:?}", dg.arcs()),
                )?;
            }
        }
    }
    Ok(format!(
        "{accepted}/{accepted} decomposed and verified (initial residue {residue}, {swaps} trail swaps); {certificates} certificates on {dense} dense inputs all recomputed"
    ))
}

fn frank_case(dg: &Digraph, k: usize) -> Result<(), String> {
    let expected = dg.max_in_degree() <= k
        && (dg.vertex_count() < 2
            || brute_gamma(dg, &OracleBudget::default()).unwrap()
                <= Rational::from_integer(k as i64));
    let q = DecompositionQuery::plain(k, DecompositionKind::Branching);
    let oracle = matches!(
        brute_decompose(dg, &q, &OracleBudget::default()).map_err(|e| e.to_string())?,
        OracleVerdict::Decomposable(_)
    );
    let got = match frank_decompose(dg, k) {
        Ok(dec) => {
            ensure(
                assignment_is_valid(dg, &dec.assignment, k, DecompositionKind::Branching, None),
                || format!("k={k}: invalid output on arcs {:?}", dg.arcs()),
            )?;
            true
        }
        Err(NdtError::InDegreeExceeded { .. }) | Err(NdtError::DensityExceeded { .. }) => false,
        Err(e) => return Err(format!("k={k} arcs {:?}: {e}", dg.arcs())),
    };
    ensure(got == expected && expected == oracle, || {
        format!(
            "k={k} arcs {:?}: frank {got}, criterion {expected}, oracle {oracle}",
            dg.arcs()
        )
    })
}

fn frank_equivalence() -> Outcome {
    let mut cases = 0;
    for n in 3..=4 {
        for dg in all_simple_digraphs(n, 10) {
            for k in 1..=3 {
                frank_case(&dg, k)?;
                cases += 1;
            }
        }
    }
    let mut r = rng(0x4e44_5404);
    for _ in 0..400 {
        let n = r.gen_range(2..=6);
        let m = r.gen_range(0..=10);
        let dg = random_digraph(&mut r, n, m, None);
        for k in 1..=3 {
            frank_case(&dg, k)?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (digraph, k) cases agree with the oracle"))
}

fn density_case(dg: &Digraph, b: &OracleBudget) -> Result<(), String> {
    let (gamma, wg) = fractional_arboricity(dg).map_err(|e| e.to_string())?;
    let (mad, wm) = max_average_degree(dg).map_err(|e| e.to_string())?;
    let bg = brute_gamma(dg, b).map_err(|e| e.to_string())?;
    let bm = brute_mad(dg, b).map_err(|e| e.to_string())?;
    ensure(gamma == bg && mad == bm, || {
        format!(
            "arcs {:?}: gamma {gamma} vs {bg}, mad {mad} vs {bm}",
            dg.arcs()
        )
    })?;
    ensure(
        wg.is_consistent(dg) && wg.ratio == gamma && wm.is_consistent(dg) && wm.ratio == mad,
        || format!("inconsistent witness on arcs {:?}", dg.arcs()),
    )
}

fn density_equivalence() -> Outcome {
    let b = budget(16);
    let mut r = rng(0x4e44_5405);
    for _ in 0..200 {
        let n = r.gen_range(2..=14);
        let m = r.gen_range(0..=30);
        density_case(&random_digraph(&mut r, n, m, None), &b)?;
    }
    let mut families = 0;
    for k in 1..=3 {
        for d in 1..=3 {
            for n in k + 1..=8 {
                let p = SharpnessParams::new(k, d, n).unwrap();
                if p.base_vertex_count() <= 16 {
                    density_case(&gen_sharp_base(&p).unwrap(), &b)?;
                    families += 1;
                }
                if p.glued_vertex_count() <= 16 {
                    density_case(&gen_sharp_glued(&p).unwrap().0, &b)?;
                    families += 1;
                }
            }
        }
    }
    for k in 1..=3 {
        for n in 1..=3 {
            let p = TreeFamilyParams { k, n };
            if p.vertex_count() <= 16 {
                density_case(&gen_tree_family(&p).unwrap(), &b)?;
                families += 1;
            }
        }
    }
    Ok(format!(
        "200 random digraphs and {families} family instances match exactly"
    ))
}

/// Tight sets at the current state that `s0` feeds.
fn tight_family(dg: &Digraph, t_star: u32, f_star: &[u64], s0: usize) -> Vec<u32> {
    subsets(t_star)
        .filter(|&x| {
            let nb = in_nbhd_mask(dg, x);
            nb & (1 << s0) != 0 && weight(nb, f_star) == x.count_ones() as u64
        })
        .collect()
}

fn hall_suite() -> Outcome {
    let mut r = rng(0x4e44_5406);
    let (mut feasible, mut attempts, mut tight_steps, mut checked) = (0, 0, 0, 0);
    while feasible < 200 {
        attempts += 1;
        ensure(attempts < 100_000, || {
            format!("only {feasible} feasible instances")
        })?;
        let n = r.gen_range(2..=10);
        let m = r.gen_range(1..=16);
        let dg = random_digraph(&mut r, n, m, None);
        let t: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
        if t.is_empty() {
            continue;
        }
        let f: Vec<u64> = (0..n).map(|_| r.gen_range(0..=3)).collect();
        let inst = HallInstance::new(&dg, &t, f.clone()).map_err(|e| e.to_string())?;
        let holds = hall_holds(&dg, to_mask(&t), &f);
        match check_hall(&inst) {
            Ok(()) => ensure(holds, || {
                format!("check_hall accepted a violation, arcs {:?}", dg.arcs())
            })?,
            Err(HallViolation { set, deficiency }) => {
                ensure(!holds, || {
                    format!(
                        "check_hall rejected a feasible instance, arcs {:?}",
                        dg.arcs()
                    )
                })?;
                let x = to_mask(&set);
                let real = x.count_ones() as i64 - weight(in_nbhd_mask(&dg, x), &f) as i64;
                ensure(deficiency > 0 && real == deficiency, || {
                    "wrong violation witness".into()
                })?;
                continue;
            }
        }
        feasible += 1;
        let (b, steps) = extract_bounded_branching_traced(&inst)
            .map_err(|e| format!("arcs {:?} T {t:?} f {f:?}: {e}", dg.arcs()))?;

        let mut in_b = vec![0usize; n];
        let mut out_b = vec![0u64; n];
        let mut assignment = vec![1usize; dg.arc_count()];
        for a in b.iter() {
            let (u, v) = dg.arc(a);
            out_b[u] += 1;
            in_b[v] += 1;
            assignment[a] = 0;
        }
        let branching = {
            let sub = Digraph::new(n, b.iter().map(|a| dg.arc(a)).collect()).unwrap();
            let ones = vec![0; sub.arc_count()];
            assignment_is_valid(&sub, &ones, 1, DecompositionKind::Branching, None)
        };
        ensure(branching, || {
            format!("not a branching, arcs {:?}", dg.arcs())
        })?;
        ensure(t.iter().all(|&v| in_b[v] == 1), || {
            "T not covered exactly once".into()
        })?;
        ensure((0..n).all(|v| out_b[v] <= f[v]), || {
            "out-degree budget exceeded".into()
        })?;

        if t.len() <= 8 {
            let mut state = ExtractionState::new(&inst);
            for step in &steps {
                let t_star = to_mask(&state.t_star());
                let f_star = state.remaining_budget().to_vec();
                ensure(hall_holds(&dg, t_star, &f_star), || {
                    "condition lost mid-run".into()
                })?;
                let family = tight_family(&dg, t_star, &f_star, step.source);
                if !family.is_empty() {
                    tight_steps += 1;
                }
                for &x1 in &family {
                    for &x2 in &family {
                        checked += 1;
                        ensure(family.contains(&(x1 & x2)), || {
                            format!(
                                "tight sets {x1:b} and {x2:b} not closed, arcs {:?}",
                                dg.arcs()
                            )
                        })?;
                    }
                }
                state
                    .commit(step.source, step.target)
                    .map_err(|e| e.to_string())?;
                state.check_invariants()?;
            }
            ensure(state.is_done(), || "replay did not finish".into())?;
        }
    }
    Ok(format!(
        "200 feasible instances extracted without dead ends; {checked} tight-set pairs over {tight_steps} tight steps closed under intersection"
    ))
}

fn tree_family() -> Outcome {
    let big = gen_tree_family(&TreeFamilyParams { k: 1, n: 3 }).map_err(|e| e.to_string())?;
    ensure(big.vertex_count() == 15 && big.arc_count() == 14, || {
        format!("size {}x{}", big.vertex_count(), big.arc_count())
    })?;
    let gamma = brute_gamma(&big, &OracleBudget::default()).map_err(|e| e.to_string())?;
    ensure(
        gamma == Rational::from_integer(1) && big.max_in_degree() == 2,
        || format!("gamma {gamma}, max in-degree {}", big.max_in_degree()),
    )?;
    let small = gen_tree_family(&TreeFamilyParams { k: 1, n: 2 }).map_err(|e| e.to_string())?;
    let q = DecompositionQuery::plain(2, DecompositionKind::Branching);
    let mut bad = None;
    let count = enumerate_decompositions(&small, &q, &OracleBudget::default(), |a| {
        let ok = (0..2).all(|p| has_directed_path(&small, a, p, 2));
        if !ok {
            bad = Some(a.to_vec());
        }
        ok
    })
    .map_err(|e| e.to_string())?;
    ensure(bad.is_none() && count > 0, || {
        format!("decomposition {bad:?} lacks a length-2 path")
    })?;
    Ok(format!(
        "D_3(1) is 15 vertices / 14 arcs with gamma 1; all {count} decompositions of D_2(1) have a length-2 path in each part"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("sharpness family", sharpness),
        ("branching decomposition suite", ndt_suite),
        ("pseudo-branching decomposition suite", pseudo_suite),
        ("arborescence packing equivalence", frank_equivalence),
        ("density oracle equivalence", density_equivalence),
        ("bounded branching extraction invariants", hall_suite),
        ("tree family", tree_family),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.1}s)", i + 1)
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
