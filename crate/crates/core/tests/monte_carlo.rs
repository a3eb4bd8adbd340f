//! Sampling checks of the samplers, tail bounds and concentration report.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use trispace::bounds::{azuma_bound, janson_triangle_bound, mu_no_triangle};
use trispace::graph::{every_edge_in_triangle, sample_gnp, sample_two_round, Graph};
use trispace::spotcheck::{concentration_spotcheck, SpotcheckConfig};
use trispace::sweep::{edge_probability, mix64, run_trial};

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

#[test]
fn gnp_edge_count_mean() {
    let counts: Vec<f64> = (0..500)
        .map(|s| sample_gnp(1000, 0.01, s).unwrap().m() as f64)
        .collect();
    let expected = 499_500.0f64 * 0.01;
    let sigma_of_mean = (expected * 0.99).sqrt() / (500f64).sqrt();
    let got = mean(&counts);
    assert!((got - expected).abs() < 3.0 * sigma_of_mean, "{got} vs {expected}");
}

#[test]
fn two_round_union_is_gnp() {
    let (n, p, theta) = (120, 0.3, 0.4);
    let pairs = (n * (n - 1) / 2) as f64;
    let mut first = Vec::new();
    let mut union = Vec::new();
    for s in 0..300 {
        let (g0, g1) = sample_two_round(n, p, theta, s).unwrap();
        first.push(g0.m() as f64);
        union.push(g0.union(&g1).unwrap().m() as f64);
    }
    for (got, q) in [(mean(&first), theta * p), (mean(&union), p)] {
        let sigma_of_mean = (pairs * q * (1.0 - q) / 300.0).sqrt();
        assert!((got - pairs * q).abs() < 3.0 * sigma_of_mean, "{got} vs {}", pairs * q);
    }
}

#[test]
fn tiny_first_round_mean() {
    let (n, p) = (500, 0.1);
    let theta = 1e-5 * 0.1 * 0.1;
    let expected = (n * (n - 1) / 2) as f64 * theta * p;
    let firsts: Vec<f64> = (0..200)
        .map(|s| sample_two_round(n, p, theta, s).unwrap().0.m() as f64)
        .collect();
    let sigma_of_mean = (expected / 200.0).sqrt();
    assert!((mean(&firsts) - expected).abs() < 3.0 * sigma_of_mean);
}

#[test]
fn triangle_free_edge_count_matches_mu() {
    let n = 300;
    let p = edge_probability(n, 1.2247);
    let mu = mu_no_triangle(n, p);
    assert!((mu - 1.36).abs() < 0.01, "{mu}");
    let counts: Vec<f64> = (0..500)
        .map(|s| {
            let g = sample_gnp(n, p, mix64(s)).unwrap();
            g.edges()
                .iter()
                .filter(|&&(u, v)| !g.neighbors(u).intersects(g.neighbors(v)))
                .count() as f64
        })
        .collect();
    let got = mean(&counts);
    assert!((got / mu - 1.0).abs() < 0.1, "{got} vs {mu}");
}

#[test]
fn azuma_covers_binomial_tail() {
    let bound = azuma_bound(100, 0.5, 10.0).unwrap().value;
    let dist = Binomial::new(100, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let hits = (0..100_000).filter(|_| dist.sample(&mut rng) >= 60).count();
    assert!(hits as f64 / 1e5 <= bound + 0.01);
}

#[test]
fn janson_covers_overlapping_triangles() {
    // B: the first ceil(0.004 n^3) triangles of K_40 in lexicographic order
    let (n, p) = (40usize, 0.3);
    let m = (0.004 * (n * n * n) as f64).ceil() as usize;
    let mut family = Vec::with_capacity(m);
    'outer: for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                family.push((x, y, z));
                if family.len() == m {
                    break 'outer;
                }
            }
        }
    }
    let bound = janson_triangle_bound(m, n, p).unwrap().value;
    let samples = 10_000;
    let free = (0..samples)
        .filter(|&s| {
            let g = sample_gnp(n, p, mix64(s)).unwrap();
            family
                .iter()
                .all(|&(x, y, z)| !(g.has_edge(x, y) && g.has_edge(x, z) && g.has_edge(y, z)))
        })
        .count();
    assert!(free as f64 / samples as f64 <= bound, "{free} vs {bound}");
}

#[test]
fn cut_concentration_at_desk_scale() {
    let n = 300;
    let p = edge_probability(n, 1.35);
    let good = (0..100u64)
        .filter(|&s| {
            let g = sample_gnp(n, p, mix64(s)).unwrap();
            let cfg = SpotcheckConfig::new(n, p, 50, mix64(s + 1000));
            assert_eq!(cfg.set_size, 60);
            let r = concentration_spotcheck(&g, &cfg);
            assert_eq!(r.samples, 50);
            r.cut_worst <= 0.25
        })
        .count();
    assert!(good >= 95, "{good}");
}

#[test]
fn sparse_cell_rarely_has_q() {
    let n = 300;
    let p = edge_probability(n, 1.0);
    let q = (0..200u64)
        .filter(|&s| every_edge_in_triangle(&sample_gnp(n, p, mix64(s)).unwrap()))
        .count();
    assert!(q as f64 / 200.0 <= 0.02);
}

#[test]
fn q_without_spanning_triangles_is_absent_at_c_1_35() {
    let p = edge_probability(300, 1.35);
    for s in 0..200u64 {
        let r = run_trial(300, p, mix64(77 + s)).unwrap();
        assert!(!(r.q && r.betti1 > 0), "seed {}", r.seed);
    }
}

#[test]
fn empty_graph_is_vacuous() {
    let r = run_trial(50, 0.0, 1).unwrap();
    assert!(r.q);
    assert_eq!(r.betti1, 0);
    assert_eq!(Graph::empty(50).m(), r.edges);
}
