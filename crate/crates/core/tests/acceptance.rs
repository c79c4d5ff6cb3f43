//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fmdel::containment::{ext, has_btm, has_minor, has_minor_by_closure, is_f_minor_free};
use fmdel::family::Family;
use fmdel::folio::{folio_in, pattern_universe, ClosureOracle};
use fmdel::instances::{gen_gnp, gen_partial_ktree, gen_partial_ktree_with_drop, gen_wall, railed_annulus, required_height};
use fmdel::representatives::census::{row_from_build, summarise};
use fmdel::representatives::probe::union_glue;
use fmdel::representatives::{build_rep_table, enumerate_levels, partner_bank, Caps, ProbeConfig, TableBuild};
use fmdel::solver::{oracle_solve, solve, solve_auto, verify_deletion_set, Compression, SolveOptions, DEFAULT_MAX_STATES};
use fmdel::treedecomp::{exact_tw, minfill_td, to_nice, TreeDecomposition};
use fmdel::{BoundariedGraph, Graph};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn families() -> Vec<Family> {
    ["K2", "K3", "K4", "C4", "K5,K33"].iter().map(|s| Family::parse_names(s).unwrap()).collect()
}

/// Random graph with a decomposition: partial 2- and 3-trees with their own
/// decompositions, or G(n, p) with min-fill or exact decompositions.
fn random_instance(rng: &mut ChaCha8Rng, n_max: usize) -> (Graph, TreeDecomposition) {
    let n = rng.gen_range(1..=n_max);
    let k = rng.gen_range(2..=3);
    match rng.gen_range(0..3) {
        0 if n > k => gen_partial_ktree_with_drop(n, k, rng.gen_range(0.0..0.6), rng.gen()).unwrap(),
        1 => {
            let g = gen_gnp(n, rng.gen_range(0.1..0.8), rng.gen()).unwrap();
            let td = minfill_td(&g);
            (g, td)
        }
        _ => {
            let g = gen_gnp(n, rng.gen_range(0.1..0.8), rng.gen()).unwrap();
            let td = exact_tw(&g).unwrap().1;
            (g, td)
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let fams = families();
    let mut runs = 0;
    for i in 0..500 {
        let (g, td) = random_instance(&mut rng, 10);
        let nice = to_nice(&td).map_err(|e| e.to_string())?;
        for f in &fams {
            let sol = solve(&g, f, &nice, &SolveOptions::default()).map_err(|e| e.to_string())?;
            let (want, _) = oracle_solve(&g, f).unwrap();
            check(sol.opt == want, format!("instance {i}, {}: solver {} vs oracle {want}", f.descriptor(), sol.opt))?;
            let set = sol.deletion_set.unwrap();
            check(set.len() == want && verify_deletion_set(&g, f, &set).unwrap(), format!("instance {i}: bad set"))?;
            runs += 1;
        }
    }
    let el = start.elapsed();
    check(el < Duration::from_secs(600), format!("took {el:?}"))?;
    Ok(format!("{runs}/{runs} solves match the oracle, deletion sets verified, {:.1}s", el.as_secs_f64()))
}

fn closed_forms() -> Outcome {
    let opts = SolveOptions::default();
    let run = |g: &Graph, f: &Family| solve_auto(g, f, &opts).unwrap().opt;
    let k2 = Family::vertex_cover();
    let k3 = Family::feedback_vertex_set();
    let planar = Family::planarization();
    for n in 2..=7 {
        check(run(&Graph::complete(n), &k2) == n - 1, format!("vertex cover of K{n}"))?;
    }
    for n in 3..=9 {
        check(run(&Graph::cycle(n), &k3) == 1, format!("feedback vertex set of C{n}"))?;
    }
    check(run(&Graph::complete(5), &planar) == 1, "planarization of K5")?;
    check(run(&Graph::complete(6), &planar) == 2, "planarization of K6")?;
    for r in [3, 5, 7] {
        check(run(&gen_wall(r, 0).unwrap().graph, &planar) == 0, format!("planarization of the {r}-wall"))?;
    }
    Ok("22 closed-form values exact".into())
}

fn folio_engine() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for t in 0..=2 {
        let n = t + 6;
        let levels = enumerate_levels(t, n, n * (n - 1) / 2, None).map_err(|e| e.to_string())?;
        let graphs: Vec<BoundariedGraph> = levels.iter().flat_map(|l| l.forms.iter().map(|f| f.decode().unwrap())).collect();
        for d in 0..=2 {
            let u = pattern_universe(t, d).unwrap();
            let mut oracle = ClosureOracle::new(t, d).unwrap();
            for g in &graphs {
                let a = folio_in(g, &u).unwrap();
                let b = oracle.folio(g).unwrap();
                check(a == b, format!("t={t} d={d}: methods disagree on {}", g.to_inline()))?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let t = rng.gen_range(0..=3);
        let k = rng.gen_range(7..=8);
        let d = rng.gen_range(1..=3);
        let p = rng.gen_range(0.1..0.3);
        let n = t + k;
        let mut g = Graph::new(n);
        for v in 0..n {
            for u in 0..v {
                if (u >= t || v >= t) && rng.gen_bool(p) && g.m() < 11 {
                    g.add_edge(u, v);
                }
            }
        }
        let g = BoundariedGraph::new(g, (0..t).collect()).unwrap();
        let u = pattern_universe(t, d).unwrap();
        let a = folio_in(&g, &u).unwrap();
        let b = ClosureOracle::new(t, d).unwrap().folio(&g).unwrap();
        check(a == b, format!("random case t={t} d={d}: methods disagree on {}", g.to_inline()))?;
    }
    Ok(format!("{exhaustive} exhaustive and 500 random comparisons agree, {:.1}s", start.elapsed().as_secs_f64()))
}

fn census_caps(t: usize) -> Caps {
    Caps { n_max: t + 6, m_max: t + 7 }
}

fn refinement_audit(builds: &[(TableBuild, f64)]) -> Outcome {
    let family = Family::feedback_vertex_set();
    let mut pairs = 0u64;
    let mut gluings = 0u64;
    for (t, (b, _)) in builds.iter().enumerate() {
        for (i, (sig, forms)) in b.classes.iter().enumerate() {
            if sig.is_dead() || forms.len() < 2 {
                continue;
            }
            let rep = forms[0].decode().unwrap();
            let cfg = ProbeConfig { bank_size: 50, bank_cap: 5, seed: (t * 1_000_000 + i) as u64 };
            let bank = partner_bank(&rep, &cfg).unwrap();
            let base: Vec<bool> =
                bank.iter().map(|k| is_f_minor_free(&union_glue(k, &rep).unwrap(), family.patterns()).unwrap()).collect();
            // a partner separating two members separates one of them from the representative
            for f in &forms[1..] {
                let g = f.decode().unwrap();
                for (k, &want) in bank.iter().zip(&base) {
                    let got = is_f_minor_free(&union_glue(k, &g).unwrap(), family.patterns()).unwrap();
                    check(got == want, format!("t={t}: partner {} separates {} from {}", k.to_inline(), g.to_inline(), rep.to_inline()))?;
                    gluings += 1;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} folio-equal pairs, {gluings} gluings, no distinguishing partner"))
}

fn census(builds: &[(TableBuild, f64)], secs: f64) -> Outcome {
    let family = Family::feedback_vertex_set();
    let rows = builds.iter().enumerate().map(|(t, (b, s))| row_from_build(t, census_caps(t), b, *s)).collect();
    let r = summarise(3, &family, rows);
    let classes: Vec<usize> = r.rows.iter().map(|x| x.classes).collect();
    let reps: Vec<usize> = r.rows.iter().map(|x| x.max_rep_n).collect();
    check(r.rep_size.held_out_ok, format!("representative sizes {reps:?} exceed the fitted line"))?;
    check(r.class_count.held_out_ok, format!("class counts {classes:?} exceed the fitted envelope"))?;
    check(secs < 1800.0, format!("census took {secs:.0}s"))?;
    Ok(format!(
        "classes {classes:?}, max rep sizes {reps:?}, rep size <= {:.2}t + {:.2}, log2 classes <= {:.2} t log2(t+2) + {:.2}, {secs:.1}s",
        r.rep_size.slope, r.rep_size.intercept, r.class_count.slope, r.class_count.intercept
    ))
}

fn compression_transparency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fams = families();
    let off = SolveOptions { compression: Compression::Off, ..Default::default() };
    let on = SolveOptions::default();
    let mut runs = 0;
    for i in 0..200 {
        let (g, td) = random_instance(&mut rng, 9);
        let nice = to_nice(&td).unwrap();
        for f in &fams {
            let a = solve(&g, f, &nice, &on).map_err(|e| e.to_string())?.opt;
            let b = solve(&g, f, &nice, &off).map_err(|e| e.to_string())?.opt;
            check(a == b, format!("instance {i}, {}: compressed {a}, uncompressed {b}", f.descriptor()))?;
            runs += 1;
        }
    }
    Ok(format!("{runs}/{runs} compressed and uncompressed solves agree"))
}

fn walls_and_annuli() -> Outcome {
    let w = gen_wall(13, 0).map_err(|e| e.to_string())?;
    let counts = (w.brick_count(), w.internal_brick_count(), w.layer_count());
    check(counts == (144, 100, 6), format!("13-wall gives {counts:?}"))?;
    for r in (3..=15).step_by(2) {
        for s in 0..=1 {
            gen_wall(r, s).unwrap().check().map_err(|e| format!("wall r={r} s={s}: {e}"))?;
        }
    }
    let mut audited = 0;
    for x in [3, 5, 7] {
        for y in 1..=48 {
            let need = required_height(x, y, 3);
            for r in [need, need + 2] {
                let w = gen_wall(r, 0).unwrap();
                let a = railed_annulus(&w, x, y).map_err(|e| format!("x={x} y={y} r={r}: {e}"))?;
                a.audit(&w, 3).map_err(|e| format!("x={x} y={y} r={r}: {e}"))?;
                audited += 1;
            }
        }
    }
    Ok(format!("13-wall has 144 bricks, 100 internal, 6 layers; {audited} railed annuli audited"))
}

fn performance_smoke() -> Outcome {
    let (g, td) = gen_partial_ktree(200, 3, 7).unwrap();
    check(td.width() == 3, "decomposition width")?;
    let nice = to_nice(&td).unwrap();
    let family = Family::feedback_vertex_set();
    let start = Instant::now();
    let sol = solve(&g, &family, &nice, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let el = start.elapsed();
    check(el < Duration::from_secs(60), format!("took {el:?}"))?;
    check(sol.stats.states_max < DEFAULT_MAX_STATES, "state guard")?;
    let set = sol.deletion_set.unwrap();
    check(verify_deletion_set(&g, &family, &set).unwrap() && set.len() == sol.opt, "deletion set")?;
    Ok(format!("n=200 width 3: opt {} in {:.2}s, peak {} states", sol.opt, el.as_secs_f64(), sol.stats.states_max))
}

fn all_graphs(n: usize) -> Vec<Graph> {
    enumerate_levels(0, n, n * (n - 1) / 2, None)
        .unwrap()
        .iter()
        .flat_map(|l| l.forms.iter().map(|f| f.decode().unwrap().into_graph()))
        .collect()
}

fn minor_engine() -> Outcome {
    let patterns = all_graphs(4);
    let mut pairs = 0;
    for g in &all_graphs(6) {
        for h in &patterns {
            check(has_minor(g, h).unwrap() == has_minor_by_closure(g, h).unwrap(), format!("deciders disagree on {g:?} / {h:?}"))?;
            pairs += 1;
        }
    }
    let mut extra = patterns.clone();
    extra.push(Graph::star(4));
    extra.push(Graph::complete(5));
    let exts: Vec<Vec<BoundariedGraph>> =
        extra.iter().map(|h| ext(&BoundariedGraph::unboundaried(h.clone())).unwrap()).collect();
    let mut obs = 0;
    for g in &all_graphs(7) {
        let gb = BoundariedGraph::unboundaried(g.clone());
        for (h, e) in extra.iter().zip(&exts) {
            let via_tm = e.iter().any(|x| has_btm(&gb, x).unwrap());
            check(via_tm == has_minor(g, h).unwrap(), format!("ext equivalence fails for {g:?} / {h:?}"))?;
            obs += 1;
        }
    }
    Ok(format!("{pairs} decider pairs agree; minor <=> ext topological minor on {obs} pairs"))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match out {
        Ok(msg) => {
            println!("PASS {name}: {msg} [{secs:.1}s]");
            true
        }
        Err(msg) => {
            println!("FAIL {name}: {msg} [{secs:.1}s]");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= run("oracle equivalence", oracle_equivalence);
    ok &= run("closed forms", closed_forms);
    ok &= run("folio engine agreement", folio_engine);

    let start = Instant::now();
    let family = Family::feedback_vertex_set();
    let builds: Vec<(TableBuild, f64)> = (0..=3)
        .map(|t| {
            let s = Instant::now();
            let b = build_rep_table(t, 3, &family, census_caps(t)).expect("table build");
            (b, s.elapsed().as_secs_f64())
        })
        .collect();
    let build_secs = start.elapsed().as_secs_f64();
    ok &= run("refinement audit", || refinement_audit(&builds));
    ok &= run("compression transparency", compression_transparency);
    ok &= run("representative census", || census(&builds, build_secs));
    ok &= run("walls and railed annuli", walls_and_annuli);
    ok &= run("performance smoke", performance_smoke);
    ok &= run("minor engine", minor_engine);
    if !ok {
        std::process::exit(1);
    }
}
