//! Acceptance checks, one per numbered criterion. Runs without the libtest
//! harness so every criterion prints a single PASS or FAIL line.
//!
//! All randomness is seeded, so a failure reproduces exactly.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qlink::fixtures;
use qlink::oracle::{
    oracle_distances_from, oracle_link_distance, oracle_q_visible_distance, random_interior_point,
    random_simple_polygon,
};
use qlink::overlay::CellComplex;
use qlink::planner::{plan, Plan};
use qlink::visibility::{sees, visibility_polygon};
use qlink::{segment_in_polygon, verify, Case, Point, Polygon, Scalar, Segment, Spm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

fn d(x: &str, y: &str) -> Point {
    Point::parse(x, y).unwrap()
}

fn r(text: &str) -> Scalar {
    Scalar::parse(text).unwrap()
}

/// A random instance with `s` and `t` drawn inside one pocket of `q`.
struct Instance {
    seed: u64,
    poly: Polygon,
    s: Point,
    t: Point,
    q: Point,
}

fn same_pocket_instance(seed: u64) -> Option<Instance> {
    let n = 6 + (seed % 25) as usize;
    let poly = random_simple_polygon(seed, n).ok()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_interior_point(&mut rng, &poly);
    let vis = visibility_polygon(&poly, &q).ok()?;
    let roomy: Vec<_> = vis.pockets.iter().filter(|p| p.region.area() >= r("0.05")).collect();
    if roomy.is_empty() {
        return None;
    }
    let pocket = &roomy[rng.gen_range(0..roomy.len())].region;
    let s = random_interior_point(&mut rng, pocket);
    let t = random_interior_point(&mut rng, pocket);
    Some(Instance { seed, poly, s, t, q })
}

fn same_pocket_instances(count: usize) -> Vec<Instance> {
    (0u64..).filter_map(same_pocket_instance).take(count).collect()
}

/// Fixture scenes: polygon, `s`, `t`, `q`.
fn fixture_scenes() -> Vec<(&'static str, Polygon, Point, Point, Point)> {
    vec![
        ("convex", fixtures::square(), d("0.5", "0.5"), d("3.5", "3"), d("2", "3.5")),
        ("L", fixtures::fix_l(), d("3.5", "1"), d("1", "3.5"), d("1", "1")),
        ("U", fixtures::fix_u(), d("0.5", "3.5"), d("1.5", "3"), d("5", "3.5")),
        ("U pockets", fixtures::fix_u(), d("1.5", "3.5"), d("4.5", "3.5"), d("3", "1")),
    ]
}

fn sum_areas<'a>(polys: impl Iterator<Item = &'a Polygon>) -> Scalar {
    polys.fold(Scalar::zero(), |acc, p| acc + p.area())
}

fn check_overlay(complex: &CellComplex) -> Result<(), String> {
    let k = complex.k1 + complex.k2;
    ensure!(complex.crossing_count <= k, "{} crossings > k1 + k2 = {k}", complex.crossing_count);
    ensure!(complex.max_window_crossings <= 2, "a window crosses {} others", complex.max_window_crossings);
    ensure!(
        complex.cells.len() <= complex.euler_bound(),
        "{} cells > 1 + k1 + k2 + crossings = {}",
        complex.cells.len(),
        complex.euler_bound()
    );
    Ok(())
}

fn check_conservation(poly: &Polygon, x: &Point, spm: &Spm) -> Result<(), String> {
    let vis = visibility_polygon(poly, x).map_err(|e| e.to_string())?;
    let tiled = vis.region.area() + sum_areas(vis.pockets.iter().map(|p| &p.region));
    ensure!(tiled == poly.area(), "V({x}) and its pockets cover {tiled}, not {}", poly.area());
    let faces = sum_areas(spm.faces().iter().map(|f| &f.polygon));
    ensure!(faces == poly.area(), "faces of SPM({x}) cover {faces}, not {}", poly.area());
    Ok(())
}

fn check_certificate(poly: &Polygon, q: &Point, plan: &Plan) -> Result<(), String> {
    let res = &plan.result;
    ensure!(verify(poly, q, res), "verify rejects the result for s = {}, t = {}", res.s, res.t);
    for w in res.path.vertices().windows(2) {
        let seg = Segment::new(w[0].clone(), w[1].clone()).map_err(|e| e.to_string())?;
        ensure!(segment_in_polygon(poly, &seg) == Ok(true), "link {} {} leaves the polygon", w[0], w[1]);
    }
    ensure!(sees(poly, &res.witness, q), "witness {} does not see q", res.witness);
    Ok(())
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let res = r("0.1");
    let expected = [
        ("L", Case::EndpointSeesQ, 2, None),
        ("U", Case::SamePocket, 2, Some(1)),
        ("U pockets", Case::DifferentPockets, 3, None),
    ];
    let scenes = fixture_scenes();
    for (name, case, distance, unconstrained) in expected {
        let (_, poly, s, t, q) = scenes.iter().find(|f| f.0 == name).unwrap();
        let result = qlink::q_visible_path(poly, s, t, q).map_err(|e| e.to_string())?;
        ensure!(result.case == case, "{name}: case {} instead of {}", result.case, case);
        ensure!(result.distance == distance, "{name}: distance {} instead of {distance}", result.distance);
        let oracle = oracle_q_visible_distance(poly, s, t, q, &res).map_err(|e| e.to_string())?;
        ensure!(oracle == Some(distance), "{name}: oracle gives {oracle:?}, planner {distance}");
        if let Some(free) = unconstrained {
            let dl = Spm::build(poly, s).and_then(|spm| spm.link_distance(t)).map_err(|e| e.to_string())?;
            ensure!(dl == free, "{name}: unconstrained distance {dl} instead of {free}");
            let oracle = oracle_link_distance(poly, s, t, &res).map_err(|e| e.to_string())?;
            ensure!(oracle == Some(free), "{name}: unconstrained oracle {oracle:?}");
        }
    }
    let square = fixtures::square();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let (s, t, q) = (
            random_interior_point(&mut rng, &square),
            random_interior_point(&mut rng, &square),
            random_interior_point(&mut rng, &square),
        );
        let result = qlink::q_visible_path(&square, &s, &t, &q).map_err(|e| e.to_string())?;
        ensure!(result.distance == 1, "convex: distance {} from {s} to {t}", result.distance);
        let oracle = oracle_q_visible_distance(&square, &s, &t, &q, &res).map_err(|e| e.to_string())?;
        ensure!(oracle == Some(1), "convex: oracle {oracle:?} from {s} to {t}");
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("4 fixtures and 5 convex queries match the oracle at resolution 0.1 in {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let mut polys = vec![("U".to_string(), fixtures::fix_u()), ("L".to_string(), fixtures::fix_l())];
    for k in 0..20u64 {
        let n = 8 + (k as usize * 7) % 33;
        let poly = (0..)
            .find_map(|j| random_simple_polygon(1000 + k * 101 + j, n).ok())
            .expect("a seed generates");
        polys.push((format!("random n={n}"), poly));
    }
    let mut segments = 0;
    let mut worst = 0;
    for (idx, (name, poly)) in polys.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
        let source = random_interior_point(&mut rng, poly);
        let spm = Spm::build(poly, &source).map_err(|e| e.to_string())?;
        let mut found = 0;
        let mut attempts = 0;
        while found < 500 {
            attempts += 1;
            ensure!(attempts < 200_000, "{name}: too few interior segments");
            let a = random_interior_point(&mut rng, poly);
            let b = random_interior_point(&mut rng, poly);
            let Ok(seg) = Segment::new(a, b) else { continue };
            if segment_in_polygon(poly, &seg) != Ok(true) {
                continue;
            }
            found += 1;
            let crossed = spm.faces_crossed(&seg).map_err(|e| e.to_string())?;
            ensure!(crossed <= 3, "{name}: segment {} {} meets {crossed} faces", seg.a(), seg.b());
            worst = worst.max(crossed);
        }
        segments += found;
    }
    Ok(format!("{segments} interior segments over {} polygons, at most {worst} faces each", polys.len()))
}

fn criterion_3() -> Outcome {
    let mut runs = 0;
    let mut ratio_log = Vec::new();
    let scenes = fixture_scenes();
    let fixture_runs = scenes.iter().map(|(_, p, s, t, q)| (p.clone(), s.clone(), t.clone(), q.clone()));
    let random_runs = same_pocket_instances(100).into_iter().map(|i| (i.poly, i.s, i.t, i.q));
    for (poly, s, t, q) in fixture_runs.chain(random_runs) {
        let plan = plan(&poly, &s, &t, &q).map_err(|e| e.to_string())?;
        let Some(complex) = &plan.complex else { continue };
        check_overlay(complex)?;
        runs += 1;
        ratio_log.push((complex.cells.len(), complex.nine_quarters_bound()));
    }
    let above = ratio_log.iter().filter(|(cells, bound)| *cells as f64 > *bound).count();
    Ok(format!(
        "{runs} same-pocket overlays within crossing and Euler bounds; {above} exceed the 9/4 (k1 + k2) figure (logged only)"
    ))
}

/// Oracle values at halving resolutions from 0.5 down to 0.0625, stopping
/// once the value meets `target`. Plateaus across two refinements do occur
/// on thin pockets (seed 98 holds at 3 from 0.5 to 0.125, then drops to 2),
/// so a stable value alone does not end the refinement.
fn refined_oracle(inst: &Instance, target: u32) -> Result<Vec<Option<u32>>, String> {
    let mut values: Vec<Option<u32>> = Vec::new();
    for res in ["0.5", "0.25", "0.125", "0.0625"] {
        let v = oracle_q_visible_distance(&inst.poly, &inst.s, &inst.t, &inst.q, &r(res)).map_err(|e| e.to_string())?;
        values.push(v);
        if v.is_some_and(|v| v <= target) {
            break;
        }
    }
    Ok(values)
}

fn criterion_4() -> Outcome {
    let instances = same_pocket_instances(100);
    let mut exact = 0;
    for inst in &instances {
        let plan = plan(&inst.poly, &inst.s, &inst.t, &inst.q).map_err(|e| e.to_string())?;
        let res = &plan.result;
        ensure!(res.case == Case::SamePocket, "seed {}: case {}", inst.seed, res.case);
        let complex = plan.complex.as_ref().ok_or("same pocket without overlay")?;
        let best = complex.cells.iter().map(|c| c.value).min();
        ensure!(best == Some(res.distance), "seed {}: distance {} but min cell {best:?}", inst.seed, res.distance);
        let d_st = plan.spm_s.link_distance(&inst.t).map_err(|e| e.to_string())?;
        let d_sq = plan.spm_s.link_distance(&inst.q).map_err(|e| e.to_string())?;
        let d_qt = plan.spm_t().link_distance(&inst.q).map_err(|e| e.to_string())?;
        ensure!(
            d_st <= res.distance && res.distance <= d_sq + d_qt,
            "seed {}: {d_st} <= {} <= {d_sq} + {d_qt} fails",
            inst.seed,
            res.distance
        );
        let values = refined_oracle(inst, res.distance)?;
        for v in values.iter().flatten() {
            ensure!(*v >= res.distance, "seed {}: oracle finds {v} links, planner {}", inst.seed, res.distance);
        }
        if values.last() == Some(&Some(res.distance)) {
            exact += 1;
        }
    }
    Ok(format!(
        "{} random same-pocket instances optimal over cells; oracle never lower, equal at its finest resolution on {exact}",
        instances.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    let mut agree = 0;
    for (idx, (name, poly, source, _, _)) in fixture_scenes().into_iter().take(3).enumerate() {
        let spm = Spm::build(&poly, &source).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(50 + idx as u64);
        let probes: Vec<Point> = (0..100).map(|_| random_interior_point(&mut rng, &poly)).collect();
        let oracle = oracle_distances_from(&poly, &source, &probes, &r("0.1")).map_err(|e| e.to_string())?;
        let mut retry = Vec::new();
        for (p, o) in probes.iter().zip(&oracle) {
            let exact = spm.link_distance(p).map_err(|e| e.to_string())?;
            total += 1;
            match o {
                Some(o) if *o == exact => agree += 1,
                Some(o) if *o > exact => retry.push((p.clone(), exact)),
                other => return Err(format!("{name}: oracle {other:?} below or missing for {p} at depth {exact}")),
            }
        }
        if !retry.is_empty() {
            let pts: Vec<Point> = retry.iter().map(|(p, _)| p.clone()).collect();
            let finer = oracle_distances_from(&poly, &source, &pts, &r("0.05")).map_err(|e| e.to_string())?;
            for ((p, exact), o) in retry.iter().zip(finer) {
                ensure!(o == Some(*exact), "{name}: {p} still at {o:?} instead of {exact} after refining");
            }
        }
    }
    let rate = agree as f64 / total as f64;
    ensure!(rate >= 0.98, "only {agree}/{total} probes agree at resolution 0.1");
    let refined = total - agree;
    if refined == 0 {
        Ok(format!("{agree}/{total} probes agree at resolution 0.1"))
    } else {
        Ok(format!("{agree}/{total} probes agree at resolution 0.1; the other {refined} agree at 0.05"))
    }
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let scenes = fixture_scenes();
    let fixture_runs = scenes.iter().map(|(_, p, s, t, q)| (p.clone(), s.clone(), t.clone(), q.clone()));
    let random_runs = same_pocket_instances(100).into_iter().map(|i| (i.poly, i.s, i.t, i.q));
    for (poly, s, t, q) in fixture_runs.chain(random_runs) {
        let plan = plan(&poly, &s, &t, &q).map_err(|e| e.to_string())?;
        check_conservation(&poly, &s, &plan.spm_s)?;
        check_conservation(&poly, &t, plan.spm_t())?;
        let vis = &plan.visibility_q;
        let tiled = vis.region.area() + sum_areas(vis.pockets.iter().map(|p| &p.region));
        ensure!(tiled == poly.area(), "V(q) and its pockets cover {tiled}, not {}", poly.area());
        if let Some(complex) = &plan.complex {
            let cells = sum_areas(complex.cells.iter().map(|c| &c.polygon));
            ensure!(cells == complex.p.area(), "cells cover {cells}, not {}", complex.p.area());
        }
        checked += 1;
    }
    Ok(format!("exact area identities hold on {checked} instances"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for (_, poly, s, t, q) in fixture_scenes() {
        check_certificate(&poly, &q, &plan(&poly, &s, &t, &q).map_err(|e| e.to_string())?)?;
        checked += 1;
    }
    for inst in same_pocket_instances(100) {
        check_certificate(&inst.poly, &inst.q, &plan(&inst.poly, &inst.s, &inst.t, &inst.q).map_err(|e| e.to_string())?)?;
        checked += 1;
    }
    for seed in 0..100u64 {
        let poly = (0..).find_map(|j| random_simple_polygon(5000 + seed * 31 + j, 5 + seed as usize % 26).ok()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Point> = (0..3).map(|_| random_interior_point(&mut rng, &poly)).collect();
        check_certificate(&poly, &pts[2], &plan(&poly, &pts[0], &pts[1], &pts[2]).map_err(|e| e.to_string())?)?;
        checked += 1;
    }
    Ok(format!("{checked} planner outputs certified"))
}

fn criterion_8() -> Outcome {
    let mut times = Vec::new();
    for n in [50, 100, 200, 400] {
        let poly = fixtures::spiral(n);
        let (s, t, q) = fixtures::spiral_points(n);
        let started = Instant::now();
        let result = qlink::q_visible_path(&poly, &s, &t, &q).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        ensure!(verify(&poly, &q, &result), "n = {n}: result fails verification");
        ensure!(elapsed < Duration::from_secs(60), "n = {n} took {elapsed:?}");
        times.push((n, elapsed, result.case, result.distance));
    }
    let mut ratios = Vec::new();
    for w in times.windows(2) {
        // Sub-millisecond timings are noise; compare against a 10 ms floor.
        let floor = Duration::from_millis(10);
        let ratio = w[1].1.max(floor).as_secs_f64() / w[0].1.max(floor).as_secs_f64();
        ensure!(ratio <= 5.0, "n = {} to {}: runtime ratio {ratio:.2}", w[0].0, w[1].0);
        ratios.push(format!("{ratio:.2}"));
    }
    let summary: Vec<String> = times
        .iter()
        .map(|(n, t, case, dist)| format!("n={n} {:.2}s ({case}, {dist} links)", t.as_secs_f64()))
        .collect();
    Ok(format!("{}; ratios {}", summary.join(", "), ratios.join(", ")))
}

fn criterion_9() -> Outcome {
    let dir = std::env::temp_dir().join(format!("qlink-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let svg = dir.join("figure.svg");
    let svg_arg = svg.display().to_string();
    let scenes = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenes");
    let mut runs = 0;
    for name in ["fixU.json", "fixU_pockets.json", "fixL.json", "convex.json"] {
        let scene = scenes.join(name).display().to_string();
        let commands: Vec<Vec<&str>> = vec![
            vec!["check", &scene],
            vec!["linkpath", &scene],
            vec!["qpath", &scene],
            vec!["spm", &scene, "--source", "s"],
            vec!["spm", &scene, "--source", "t"],
            vec!["spm", &scene, "--source", "q"],
            vec!["overlay", &scene],
            vec!["oracle", &scene, "--resolution", "0.25"],
            vec!["oracle", &scene, "--resolution", "0.25", "--q-visible"],
            vec!["render", &scene, "--out", &svg_arg],
        ];
        for args in commands {
            let argv = std::iter::once("qlink").chain(args.iter().copied());
            let first = qlink_cli::run(argv.clone()).map_err(|e| format!("{args:?}: {e}"))?;
            let first_svg = std::fs::read(&svg).ok();
            let second = qlink_cli::run(argv).map_err(|e| format!("{args:?}: {e}"))?;
            let second_svg = std::fs::read(&svg).ok();
            ensure!(first == second, "{args:?}: output differs between runs");
            ensure!(first_svg == second_svg, "{args:?}: SVG differs between runs");
            runs += 1;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{runs} commands repeated with byte-identical output"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "fixture correctness", criterion_1),
        (2, "segments meet at most three faces", criterion_2),
        (3, "overlay bounds", criterion_3),
        (4, "same-pocket optimality", criterion_4),
        (5, "partition matches the oracle", criterion_5),
        (6, "area conservation", criterion_6),
        (7, "certificates", criterion_7),
        (8, "scaling", criterion_8),
        (9, "determinism", criterion_9),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, title, check) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} PASS {title}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL {title}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
