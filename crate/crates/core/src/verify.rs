//! Named invariant suites behind the `verify` subcommand.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::bounds::{
    azuma_bound, chernoff_lower, chernoff_upper, goodman, janson_triangle_bound, ml3_check,
    second_moment_terms,
};
use crate::error::{Error, Result};
use crate::extremal::{
    is_bipartite, max_triangle_free, min_bipartization, min_triangle_hitting,
};
use crate::graph::{sample_gnp, triangles, Graph, Pair, UnitStream};
use crate::spaces::{
    betti1, coset_min_oracle, coset_minimize, cut_space, cycle_space, find_witness,
    triangle_perp, triangle_space, EdgeVector,
};
use crate::sweep::{mix64, run_sweep, NullSink, SweepConfig, SweepOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Spaces,
    Bounds,
    Oracles,
    SweepSmoke,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spaces" => Ok(Suite::Spaces),
            "bounds" => Ok(Suite::Bounds),
            "oracles" => Ok(Suite::Oracles),
            "sweep-smoke" => Ok(Suite::SweepSmoke),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "{}/{} checks passed",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

struct Tally {
    name: &'static str,
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(context());
        }
    }

    fn finish(self) -> Check {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} cases", self.total)
        } else {
            format!(
                "{} of {} failed, first: {}",
                self.failures.len(),
                self.total,
                self.failures[0]
            )
        };
        Check {
            name: self.name.into(),
            passed,
            detail,
        }
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let suite: Suite = name.parse()?;
    let checks = match suite {
        Suite::Spaces => spaces_suite(),
        Suite::Bounds => bounds_suite()?,
        Suite::Oracles => oracles_suite()?,
        Suite::SweepSmoke => sweep_smoke_suite()?,
    };
    Ok(SuiteReport { suite, checks })
}

/// The 200 seeded graphs used by the space checks: `n` in `[10, 40]`,
/// `p` in `{0.1, ..., 0.9}`.
pub fn space_suite_graphs() -> Vec<Graph> {
    (0..200u64)
        .map(|i| {
            let h = mix64(0x5eed ^ i);
            let n = 10 + (h % 31) as usize;
            let p = (1 + (h >> 8) % 9) as f64 / 10.0;
            sample_gnp(n, p, mix64(h)).expect("valid parameters")
        })
        .collect()
}

fn spaces_suite() -> Vec<Check> {
    let mut dims = Tally::new("dimension identities");
    let mut orth = Tally::new("cut/cycle orthogonality");
    let mut tri_in_c = Tally::new("triangles lie in the cycle space");
    let mut betti = Tally::new("betti number routes agree");
    let mut witness = Tally::new("witness soundness and completeness");
    for (i, g) in space_suite_graphs().iter().enumerate() {
        let c = g.spanning_forest().components;
        let cyc = cycle_space(g);
        let cut = cut_space(g);
        let tri = triangle_space(g);
        let perp = triangle_perp(g);
        dims.record(
            cyc.dim() == g.m() + c - g.n()
                && cut.dim() == g.n() - c
                && tri.dim() + perp.dim() == g.m(),
            || format!("graph {i}"),
        );
        orth.record(
            cut.vectors()
                .all(|a| cyc.vectors().all(|b| !a.bits().dot(b.bits()))),
            || format!("graph {i}"),
        );
        let tris = triangles(g);
        tri_in_c.record(
            (0..tris.len()).all(|k| cyc.basis.contains(&tris.indicator(k, g.m())).unwrap()),
            || format!("graph {i}"),
        );
        let b = betti1(g);
        betti.record(
            b == cyc.dim() - tri.dim() && b == perp.dim() - cut.dim(),
            || format!("graph {i}: fast {b}, rank {}", cyc.dim() - tri.dim()),
        );
        let ok = match find_witness(g) {
            Some(w) => {
                b > 0
                    && tris
                        .edge_ids
                        .iter()
                        .all(|ids| ids.iter().filter(|&&e| w.contains_edge(e)).count() % 2 == 0)
                    && !cut.contains(&w)
            }
            None => b == 0,
        };
        witness.record(ok, || format!("graph {i}"));
    }
    vec![
        dims.finish(),
        orth.finish(),
        tri_in_c.finish(),
        betti.finish(),
        witness.finish(),
    ]
}

/// Empirical `P(X >= mean + lambda)` and `P(X <= mean - lambda)` for
/// `X ~ Bin(trials, p)`.
pub fn binomial_tails(trials: u64, p: f64, lambda: f64, samples: usize, seed: u64) -> (f64, f64) {
    let dist = Binomial::new(trials, p).expect("valid binomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mean = trials as f64 * p;
    let (mut up, mut down) = (0usize, 0usize);
    for _ in 0..samples {
        let x = dist.sample(&mut rng) as f64;
        up += (x >= mean + lambda) as usize;
        down += (x <= mean - lambda) as usize;
    }
    (up as f64 / samples as f64, down as f64 / samples as f64)
}

/// Twelve `(trials, p, lambda)` points spanning small and large means.
pub const CHERNOFF_GRID: [(u64, f64, f64); 12] = [
    (20, 0.25, 1.0),
    (20, 0.25, 3.0),
    (50, 0.2, 2.0),
    (50, 0.2, 5.0),
    (100, 0.2, 4.0),
    (100, 0.2, 10.0),
    (100, 0.5, 5.0),
    (100, 0.5, 12.0),
    (400, 0.1, 6.0),
    (400, 0.1, 15.0),
    (1000, 0.1, 10.0),
    (1000, 0.1, 30.0),
];

/// Counts edges lying in no triangle.
pub fn isolated_edge_count(g: &Graph) -> usize {
    triangles(g).per_edge.iter().filter(|&&c| c == 0).count()
}

fn random_pairs(n: usize, p: f64, seed: u64) -> Vec<Pair> {
    sample_gnp(n, p, seed).expect("valid").edges().to_vec()
}

fn bounds_suite() -> Result<Vec<Check>> {
    let mut tails = Tally::new("binomial tails within bounds + 0.01");
    for (k, &(trials, p, lambda)) in CHERNOFF_GRID.iter().enumerate() {
        let mu = trials as f64 * p;
        let (up, down) = binomial_tails(trials, p, lambda, 100_000, 1000 + k as u64);
        let upper = chernoff_upper(mu, lambda)?.value;
        let lower = chernoff_lower(mu, lambda)?.value;
        let azuma = azuma_bound(trials as usize, p, lambda)?.value;
        tails.record(
            up <= upper + 0.01 && down <= lower + 0.01 && up <= azuma + 0.01 && down <= azuma + 0.01,
            || format!("point {k}: up {up}, down {down}, bounds {upper}/{lower}/{azuma}"),
        );
    }

    let mut good = Tally::new("Goodman identity and t1 + t2 < n^3/8");
    for n in [10, 20, 40, 60] {
        for i in 0..100u64 {
            let p = (i % 10) as f64 / 10.0 + 0.05;
            let counts = goodman(n, &random_pairs(n, p, mix64(n as u64 * 1000 + i)))?;
            good.record(
                counts.incidence_identity_holds() && counts.goodman_holds(),
                || format!("n {n}, instance {i}: {:?}", counts.t),
            );
        }
    }

    let mut chain = Tally::new("triangle-density chain consistent");
    for i in 0..60u64 {
        let n = 8 + (i % 7) as usize;
        let f = random_pairs(n, 0.5 + (i % 5) as f64 / 10.0, mix64(7 + i));
        let r = ml3_check(n, &f, 0.2, 0.05, 0.0, None)?;
        if r.hypothesis_met() {
            chain.record(r.odd_triangles && r.chain_consistent(), || {
                format!("instance {i}: {r}")
            });
        }
    }

    let mut janson = Tally::new("Janson bound above exact disjoint-triangle probability");
    for (m, p) in [(10usize, 0.1f64.cbrt()), (5, 0.5), (20, 0.3), (3, 0.9)] {
        let exact = (1.0 - p.powi(3)).powi(m as i32);
        let bound = janson_triangle_bound(m, 3 * m, p)?.value;
        janson.record(bound >= exact, || format!("m {m}, p {p}: {bound} < {exact}"));
    }

    let mut second = Tally::new("second-moment ratio bound above Monte Carlo");
    let (n, p) = (50, 0.2);
    let xs: Vec<f64> = (0..2000u64)
        .map(|s| isolated_edge_count(&sample_gnp(n, p, mix64(0xabc + s)).unwrap()) as f64)
        .collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    let ratio = var / (mean * mean);
    let bound = second_moment_terms(n, p)?.term("var_ratio").unwrap_or(f64::INFINITY);
    second.record(ratio <= bound, || format!("empirical {ratio}, bound {bound}"));

    Ok(vec![
        tails.finish(),
        good.finish(),
        chain.finish(),
        janson.finish(),
        second.finish(),
    ])
}

fn oracles_suite() -> Result<Vec<Check>> {
    let mut fixtures = Tally::new("extremal fixtures");
    for (n, t) in [(4, 4), (5, 6), (6, 9)] {
        let got = max_triangle_free(&Graph::complete(n))?.0;
        fixtures.record(got == t, || format!("t(K{n}) = {got}"));
    }
    fixtures.record(min_triangle_hitting(&Graph::complete(4))?.0 == 2, || "K4 hitting".into());
    let k4 = Graph::complete(4);
    fixtures.record(min_bipartization(&k4, k4.edges())?.0 == 2, || "K4 bipartization".into());
    let c5 = Graph::cycle(5);
    fixtures.record(min_bipartization(&c5, c5.edges())?.0 == 1, || "C5 bipartization".into());
    for k in [4, 6, 8] {
        let c = Graph::cycle(k);
        fixtures.record(min_bipartization(&c, c.edges())?.0 == 0, || format!("C{k}"));
    }

    let mut complement = Tally::new("t(G) + hitting(G) = |E|");
    let mut bip = Tally::new("bipartization zero iff bipartite");
    let mut stream = UnitStream::new(99);
    let mut done = 0;
    while done < 100 {
        let n = 5 + (stream.next_u64() % 8) as usize;
        let g = sample_gnp(n, 0.2 + 0.6 * stream.next_f64(), stream.next_u64())?;
        if g.m() > 40 {
            continue;
        }
        done += 1;
        let t = max_triangle_free(&g)?.0;
        let h = min_triangle_hitting(&g)?.0;
        complement.record(t + h == g.m(), || format!("{g:?}"));
        let zero = min_bipartization(&g, g.edges())?.0 == 0;
        bip.record(zero == is_bipartite(&g), || format!("{g:?}"));
    }

    let mut coset = Tally::new("cut-flip search vs exhaustive coset minimum");
    for i in 0..100u64 {
        let n = 4 + (i % 9) as usize;
        let g = sample_gnp(n, 0.5, mix64(i))?;
        let mut s = UnitStream::new(mix64(i + 500));
        let ids: Vec<usize> = (0..g.m()).filter(|_| s.next_f64() < 0.5).collect();
        let f = EdgeVector::from_edge_ids(&g, &ids);
        let local = coset_minimize(&g, &f);
        let best = coset_min_oracle(&g, &f)?;
        let balanced = (0..n).all(|v| local.degree(v) <= g.degree(v) - local.degree(v));
        let same_coset = cut_space(&g).contains(&local.add(&f));
        coset.record(
            local.size() >= best.size() && local.size() <= f.size() && balanced && same_coset,
            || format!("instance {i}"),
        );
    }

    Ok(vec![
        fixtures.finish(),
        complement.finish(),
        bip.finish(),
        coset.finish(),
    ])
}

fn sweep_smoke_suite() -> Result<Vec<Check>> {
    let config = SweepConfig {
        n_list: vec![30, 60],
        c_list: vec![1.0, 1.5],
        trials: 10,
        seed: 2024,
        theta: None,
        out_dir: None,
    };
    let a = run_sweep(&config, &SweepOptions::default(), &NullSink)?;
    let b = run_sweep(&config, &SweepOptions::default(), &NullSink)?;
    let mut det = Tally::new("repeat sweep is byte-identical");
    det.record(
        a.records_jsonl()? == b.records_jsonl()? && a.summary_csv() == b.summary_csv(),
        || "outputs differ".into(),
    );
    let mut consistent = Tally::new("record consistency");
    for r in &a.records {
        let g = sample_gnp(r.n, r.p, r.seed)?;
        consistent.record(
            r.dim_cycle - r.dim_triangle == r.betti1
                && r.q == crate::graph::every_edge_in_triangle(&g)
                && r.betti1 == betti1(&g),
            || format!("{r:?}"),
        );
    }
    Ok(vec![det.finish(), consistent.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn spaces_and_oracles_pass() {
        for name in ["spaces", "oracles", "sweep-smoke"] {
            let report = run_suite(name).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}
