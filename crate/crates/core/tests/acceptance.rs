//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sc_relay::base_matrix::rate::rate_to_f64;
use sc_relay::base_matrix::{
    design_rate_mn, design_rate_regular, lift, mn_base, mn_roles, regular_base, regular_roles,
    BaseMatrix, ColumnRole, Rate, SparseBinary,
};
use sc_relay::capacity::region_gap;
use sc_relay::de::{
    corner_threshold, de_step, run_de, sweep_region, DeConfig, DeGraph, FreeParam, RegionResult,
};
use sc_relay::mc::{run_pipeline, Peeler};
use sc_relay::presets::Preset;
use sc_relay::relay::{ChannelParams, JointRelayGraph};
use sc_relay::Execution;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn corner(graph: &JointRelayGraph, config: &DeConfig) -> f64 {
    corner_threshold(graph, FreeParam::Sd, 1.0, config, 1e-6)
        .expect("corner bracket")
        .threshold
}

fn default_config() -> DeConfig {
    DeConfig::default()
}

fn tight_config() -> DeConfig {
    DeConfig {
        success_tol: 1e-12,
        ..DeConfig::default()
    }
}

/// Grid on which slope-region gaps are compared across codes.
const SLOPE_GRID: [f64; 5] = [0.6, 0.7, 0.8, 0.9, 1.0];

/// Max slope-region gap against the design-rate limit and against the
/// rate-0.5 limit.
fn slope_gap(preset: Preset, coupling: Option<u32>) -> (f64, f64) {
    let joint = preset.joint(coupling).unwrap();
    let region: RegionResult = sweep_region(
        &joint,
        &SLOPE_GRID,
        &default_config(),
        1e-4,
        Execution::default(),
    )
    .unwrap();
    let rate = preset.design_rate_f64(coupling).unwrap();
    (region_gap(&region, rate).max, region_gap(&region, 0.5).max)
}

fn criterion_1() -> (Verdict, Duration) {
    let start = Instant::now();
    let code = Preset::Regular3x6.code(None).unwrap();
    let joint = Preset::Regular3x6.joint(None).unwrap();
    let a = corner(&joint, &default_config());
    let b = corner(&JointRelayGraph::standalone(&code), &default_config());
    let t = start.elapsed();
    let ok = within(a, 0.4294, 1e-3) && within(b, 0.4294, 1e-3) && t < Duration::from_secs(10);
    (
        verdict(
            ok,
            format!("joint {a:.6}, standalone {b:.6}, target 0.4294 +- 1e-3, limit 10 s"),
        ),
        t,
    )
}

fn criterion_2() -> (Verdict, Duration) {
    let start = Instant::now();
    let v = corner(
        &Preset::SplitExtendedArja.joint(None).unwrap(),
        &default_config(),
    );
    let t = start.elapsed();
    let ok = within(v, 0.4387, 1e-3) && t < Duration::from_secs(10);
    (
        verdict(ok, format!("{v:.6}, target 0.4387 +- 1e-3, limit 10 s")),
        t,
    )
}

fn coupled_corner(
    preset: Preset,
    target: f64,
    tol: f64,
    limit: Duration,
    config: DeConfig,
) -> (Verdict, Duration, f64) {
    let start = Instant::now();
    let v = corner(&preset.joint(Some(128)).unwrap(), &config);
    let t = start.elapsed();
    let ok = within(v, target, tol) && t < limit;
    (
        verdict(
            ok,
            format!(
                "{v:.6}, target {target} +- {tol:e}, limit {} s",
                limit.as_secs()
            ),
        ),
        t,
        v,
    )
}

fn criterion_5() -> (Verdict, Duration) {
    let start = Instant::now();
    let (corner_v, _, v) = coupled_corner(
        Preset::MacKayNeal4x2x2,
        0.4999,
        2e-3,
        Duration::from_secs(1800),
        tight_config(),
    );
    let joint = Preset::MacKayNeal4x2x2.joint(Some(128)).unwrap();
    let region = sweep_region(
        &joint,
        &[0.6, 0.75, 0.9],
        &tight_config(),
        1e-6,
        Execution::default(),
    )
    .unwrap();
    let gap = region_gap(
        &region,
        Preset::MacKayNeal4x2x2.design_rate_f64(Some(128)).unwrap(),
    );
    let half = region_gap(&region, 0.5);
    let t = start.elapsed();
    let gaps_ok = gap.points.len() == 3 && gap.max < 2e-4;
    let ok = corner_v.pass && gaps_ok && t < Duration::from_secs(1800);
    let points: Vec<String> = gap
        .points
        .iter()
        .zip(&half.points)
        .map(|((rd, g), (_, h))| format!("{rd}: {g:.3e} ({h:.3e} vs rate 0.5)"))
        .collect();
    (
        verdict(
            ok,
            format!(
                "corner {v:.6} ({}); slope gaps vs design-rate limit {} (need < 2e-4), limit 1800 s",
                if corner_v.pass { "ok" } else { "off" },
                points.join(", ")
            ),
        ),
        t,
    )
}

fn criterion_6() -> (Verdict, Duration) {
    let start = Instant::now();
    let cases = [
        (
            design_rate_regular(3, 6, 128).unwrap(),
            Rate::new(63, 128),
            0.4921875,
        ),
        (
            design_rate_regular(5, 10, 128).unwrap(),
            Rate::new(31, 64),
            0.484375,
        ),
        (
            design_rate_mn(4, 2, 2, 128).unwrap(),
            Rate::new(127, 256),
            0.49609375,
        ),
    ];
    let ok = cases.iter().all(|(got, exact, float)| {
        got == exact && rate_to_f64(*got).to_bits() == f64::to_bits(*float)
    });
    let shown: Vec<String> = cases
        .iter()
        .map(|c| format!("{} = {}", c.0, rate_to_f64(c.0)))
        .collect();
    (verdict(ok, shown.join(", ")), start.elapsed())
}

fn ordered(g: [f64; 5]) -> bool {
    let coupled = g[0].max(g[1]).max(g[2]);
    g[0] > g[1] && g[1] > g[2] && g[3] > coupled && g[4] > coupled
}

fn criterion_7() -> (Verdict, Duration) {
    let start = Instant::now();
    let gaps = [
        slope_gap(Preset::Regular3x6, Some(128)),
        slope_gap(Preset::Regular5x10, Some(128)),
        slope_gap(Preset::MacKayNeal4x2x2, Some(128)),
        slope_gap(Preset::Regular3x6, None),
        slope_gap(Preset::SplitExtendedArja, None),
    ];
    let design = gaps.map(|g| g.0);
    let half = gaps.map(|g| g.1);
    let show = |g: [f64; 5]| {
        format!(
            "(3,6,128) {:.5}, (5,10,128) {:.5}, MN {:.5}, (3,6) {:.5}, ARJA-SE {:.5}",
            g[0], g[1], g[2], g[3], g[4]
        )
    };
    (
        verdict(
            ordered(design),
            format!(
                "max slope gaps vs design-rate limit: {}; vs rate-0.5 limit: {} (ordered: {})",
                show(design),
                show(half),
                ordered(half)
            ),
        ),
        start.elapsed(),
    )
}

fn trajectory_monotone(graph: &DeGraph, eps: &[f64], steps: usize) -> bool {
    let mut state = graph.initial_state(eps);
    for _ in 0..steps {
        let next = de_step(graph, eps, &state);
        let ok = next
            .x
            .iter()
            .zip(&state.x)
            .all(|(n, o)| n <= o && (0.0..=1.0).contains(n))
            && next.y.iter().all(|y| (0.0..=1.0).contains(y));
        if !ok {
            return false;
        }
        state = next;
    }
    true
}

fn random_base(rng: &mut ChaCha8Rng) -> BaseMatrix {
    let (m, n) = (rng.gen_range(1..4), rng.gen_range(2..6));
    BaseMatrix::from_row_major(m, n, (0..m * n).map(|_| rng.gen_range(0..3)).collect()).unwrap()
}

fn random_code(rng: &mut ChaCha8Rng) -> SparseBinary {
    let n = rng.gen_range(4..40);
    let m = rng.gen_range(2..30);
    let rows = (0..m)
        .map(|_| {
            let mut all: Vec<u32> = (0..n as u32).collect();
            all.shuffle(rng);
            all.truncate(rng.gen_range(1..=n.min(6)));
            all
        })
        .collect();
    SparseBinary::from_rows(n, rows)
}

fn criterion_8() -> (Verdict, Duration) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failed: Vec<&str> = Vec::new();

    // DE iteration monotonicity and boundedness.
    let mut ok = (0..200).all(|_| {
        let base = random_base(&mut rng);
        let eps: Vec<f64> = (0..base.cols()).map(|_| rng.gen()).collect();
        trajectory_monotone(&DeGraph::new(&base), &eps, 50)
    });
    let joint = Preset::MacKayNeal4x2x2.joint(Some(16)).unwrap();
    ok &= trajectory_monotone(
        &DeGraph::from_joint(&joint),
        &joint.eps_vector(&ChannelParams::new(0.55, 0.6, 0.0).unwrap()),
        400,
    );
    if !ok {
        failed.push("DE monotonicity");
    }

    // Achievability monotone in eps.
    let joint = Preset::Regular3x6.joint(Some(16)).unwrap();
    let graph = DeGraph::from_joint(&joint);
    let ok = [0.55, 0.7, 1.0].iter().all(|&rd| {
        let flags: Vec<bool> = (0..=40)
            .map(|k| {
                let eps = joint.eps_vector(&ChannelParams::new(k as f64 / 40.0, rd, 0.0).unwrap());
                run_de(&graph, &eps, &default_config()).achievable
            })
            .collect();
        flags.windows(2).all(|w| w[0] || !w[1])
    });
    if !ok {
        failed.push("achievability monotonicity");
    }

    // Scalar recursion oracle.
    let ok = [(3u32, 6u32), (5, 10)].iter().all(|&(l, r)| {
        let base = regular_base(l, r).unwrap();
        let graph = DeGraph::new(&base);
        [0.3, 0.4294, 0.5].iter().all(|&eps| {
            let oracle = common::scalar_regular(l, r, eps, 200);
            let e = vec![eps; base.cols()];
            let mut state = graph.initial_state(&e);
            oracle.iter().all(|want| {
                let ok = state.x.iter().all(|x| (x - want).abs() <= 1e-12);
                state = de_step(&graph, &e, &state);
                ok
            })
        })
    });
    if !ok {
        failed.push("scalar oracle");
    }

    // Peeling confluence.
    let ok = (0..300).all(|_| {
        let h = random_code(&mut rng);
        let p = rng.gen_range(0.05..0.9);
        let erased: Vec<bool> = (0..h.num_cols()).map(|_| rng.gen_bool(p)).collect();
        let peeler = Peeler::new(&h);
        let reference = peeler.peel(&erased).erased;
        let mut order: Vec<u32> = (0..h.num_rows() as u32).collect();
        order.shuffle(&mut rng);
        peeler.peel_in_order(&erased, &order) == reference
    });
    if !ok {
        failed.push("peeling confluence");
    }

    // Peeling against the stopping-set oracle on every erasure pattern.
    let codes = [
        lift(&regular_base(3, 6).unwrap(), &regular_roles(2), 10, 7)
            .unwrap()
            .parity_check,
        lift(&mn_base(4, 2, 2).unwrap(), &mn_roles(2), 6, 3)
            .unwrap()
            .parity_check,
    ];
    let ok = codes.iter().all(|h| {
        let n = h.num_cols();
        let oracle = common::max_stopping_sets(n, &common::check_masks(h));
        let peeler = Peeler::new(h);
        (0..1u32 << n).all(|pattern| {
            common::to_mask(&peeler.peel(&common::from_mask(pattern, n)).erased)
                == oracle[pattern as usize]
        })
    });
    if !ok {
        failed.push("stopping-set oracle");
    }

    // Lifting weight preservation.
    let ok = (0..100).all(|_| {
        let base = random_base(&mut rng);
        let q = rng.gen_range(3..40);
        let lifted = lift(
            &base,
            &vec![ColumnRole::Information; base.cols()],
            q,
            rng.gen(),
        )
        .unwrap();
        let h = &lifted.parity_check;
        let rows = common::row_sums(&base);
        let cols = common::col_sums(&base);
        h.rows()
            .enumerate()
            .all(|(r, row)| row.len() as u32 == rows[r / q])
            && h.col_weights()
                .iter()
                .enumerate()
                .all(|(c, &w)| w == cols[c / q])
    });
    if !ok {
        failed.push("lifting weights");
    }

    // Region boundary non-increasing in eps_rd.
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let ok = [Preset::Regular3x6, Preset::MacKayNeal4x2x2]
        .iter()
        .all(|p| {
            let region = sweep_region(
                &p.joint(Some(8)).unwrap(),
                &grid,
                &default_config(),
                1e-4,
                Execution::default(),
            )
            .unwrap();
            region
                .points
                .windows(2)
                .all(|w| w[1].eps_sd_max <= w[0].eps_sd_max)
        });
    if !ok {
        failed.push("region monotonicity");
    }

    let t = start.elapsed();
    let pass = failed.is_empty() && t < Duration::from_secs(300);
    let detail = if failed.is_empty() {
        "7 properties hold, limit 300 s".to_string()
    } else {
        format!("failed: {}", failed.join(", "))
    };
    (verdict(pass, detail), t)
}

fn criterion_9() -> (Verdict, Duration) {
    let start = Instant::now();
    let joint = Preset::Regular3x6.joint(Some(32)).unwrap();
    let params = ChannelParams::new(0.40, 0.40, 0.20).unwrap();
    let stats = run_pipeline(&joint, &params, 256, 200, 1, Execution::default()).unwrap();
    let rate = stats.dest_fail_rate().unwrap();
    let t = start.elapsed();
    let ok = rate < 0.10 && t < Duration::from_secs(600);
    (
        verdict(
            ok,
            format!(
                "destination failures {}/{} (relay {}), need < 10%, limit 600 s",
                stats.dest_fail, stats.trials, stats.relay_fail
            ),
        ),
        t,
    )
}

type Check = fn() -> (Verdict, Duration);

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Check)> = vec![
        (1, "uncoupled (3,6) corner", criterion_1),
        (2, "ARJA split-extension corner", criterion_2),
        (3, "coupled (3,6,128) corner", || {
            let (v, t, _) = coupled_corner(
                Preset::Regular3x6,
                0.48815,
                5e-3,
                Duration::from_secs(300),
                default_config(),
            );
            (v, t)
        }),
        (4, "coupled (5,10,128) corner", || {
            let (v, t, _) = coupled_corner(
                Preset::Regular5x10,
                0.4995,
                5e-3,
                Duration::from_secs(600),
                default_config(),
            );
            (v, t)
        }),
        (
            5,
            "coupled MN(4,2,2,128) corner and slope gaps",
            criterion_5,
        ),
        (6, "design rates bit-exact", criterion_6),
        (7, "gap ordering", criterion_7),
        (8, "property suite", criterion_8),
        (9, "Monte Carlo sanity", criterion_9),
    ];
    let mut failures = 0;
    for (id, name, run) in criteria {
        let (v, t) = run();
        if !v.pass {
            failures += 1;
        }
        println!(
            "{} criterion {id} ({name}): {} [{:.1} s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            t.as_secs_f64()
        );
    }
    println!("acceptance: {} failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
