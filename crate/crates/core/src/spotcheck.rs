//! Concentration spot-checks for a sampled graph with known edge probability:
//! degrees, codegrees, cut sizes `|∇(S, T)|` and pair counts `ζ(Y, Z)`
//! against their means.

use std::fmt;

use crate::graph::{codegree, vertex_mask, zeta, Graph, UnitStream};

#[derive(Debug, Clone)]
pub struct SpotcheckConfig {
    /// Edge probability the graph was drawn with.
    pub p: f64,
    /// Random set pairs per family.
    pub samples: usize,
    /// Size of each random set; 0 makes every sample degenerate.
    pub set_size: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl SpotcheckConfig {
    /// Sets of size `n / 5` and tolerance 0.25.
    pub fn new(n: usize, p: f64, samples: usize, seed: u64) -> Self {
        SpotcheckConfig {
            p,
            samples,
            set_size: (n / 5).max(1),
            tolerance: 0.25,
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpotcheckReport {
    pub tolerance: f64,
    /// `max_x |d(x) / ((n-1)p) - 1|`.
    pub degree_deviation: f64,
    pub max_codegree: usize,
    /// `4 n p^2`.
    pub codegree_limit: f64,
    pub cut_worst: f64,
    pub cut_within: usize,
    pub zeta_worst: f64,
    pub zeta_within: usize,
    /// Samples actually evaluated per family.
    pub samples: usize,
    /// Samples skipped because a set was empty.
    pub skipped: usize,
    /// `|Y| |Z|` exceeded `8 tol^-2 p^-1 n` for the sampled sizes.
    pub zeta_sizes_qualify: bool,
}

impl SpotcheckReport {
    pub fn codegree_ok(&self) -> bool {
        (self.max_codegree as f64) < self.codegree_limit
    }

    /// Degrees are reported but not judged: at desk-scale `n` the extreme
    /// degree sits several standard deviations from `(n-1)p`.
    pub fn degree_ok(&self) -> bool {
        self.degree_deviation <= self.tolerance
    }

    pub fn passed(&self) -> bool {
        self.codegree_ok()
            && self.cut_worst <= self.tolerance
            && self.zeta_worst <= self.tolerance
    }
}

impl fmt::Display for SpotcheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tolerance            {}", self.tolerance)?;
        writeln!(f, "degree deviation     {:.4}", self.degree_deviation)?;
        writeln!(
            f,
            "max codegree         {} (limit 4np^2 = {:.2})",
            self.max_codegree, self.codegree_limit
        )?;
        writeln!(
            f,
            "cut deviation        worst {:.4}, {}/{} within tolerance",
            self.cut_worst, self.cut_within, self.samples
        )?;
        writeln!(
            f,
            "zeta deviation       worst {:.4}, {}/{} within tolerance{}",
            self.zeta_worst,
            self.zeta_within,
            self.samples,
            if self.zeta_sizes_qualify {
                ""
            } else {
                " (sets below the size threshold)"
            }
        )?;
        if self.skipped > 0 {
            writeln!(f, "skipped              {} degenerate samples", self.skipped)?;
        }
        write!(f, "passed               {}", self.passed())
    }
}

fn relative_deviation(actual: f64, mean: f64) -> f64 {
    if mean == 0.0 {
        if actual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (actual / mean - 1.0).abs()
    }
}

/// `| |∇(S, T)| / (|S||T|p) - 1 |` for disjoint `S`, `T`. `None` if either set
/// is empty or they overlap.
pub fn cut_deviation(g: &Graph, p: f64, s: &[usize], t: &[usize]) -> Option<f64> {
    if s.is_empty() || t.is_empty() {
        return None;
    }
    let sm = vertex_mask(g.n(), s).ok()?;
    let tm = vertex_mask(g.n(), t).ok()?;
    if sm.intersects(&tm) {
        return None;
    }
    let count: usize = sm.iter_ones().map(|v| g.neighbors(v).and_count(&tm)).sum();
    let mean = sm.count_ones() as f64 * tm.count_ones() as f64 * p;
    Some(relative_deviation(count as f64, mean))
}

/// `| ζ(Y, Z) / ((|Y||Z| - |Y ∩ Z|) p) - 1 |`. `None` if either set is empty.
pub fn zeta_deviation(g: &Graph, p: f64, y: &[usize], z: &[usize]) -> Option<f64> {
    if y.is_empty() || z.is_empty() {
        return None;
    }
    let ym = vertex_mask(g.n(), y).ok()?;
    let zm = vertex_mask(g.n(), z).ok()?;
    let actual = zeta(g, y, z).ok()?;
    let pairs = ym.count_ones() * zm.count_ones() - ym.and_count(&zm);
    Some(relative_deviation(actual as f64, pairs as f64 * p))
}

/// First `k` entries of a seeded Fisher-Yates shuffle of `0..n`.
fn random_prefix(stream: &mut UnitStream, n: usize, k: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let k = k.min(n);
    for i in 0..k {
        let j = i + (stream.next_u64() % (n - i) as u64) as usize;
        perm.swap(i, j);
    }
    perm.truncate(k);
    perm
}

pub fn concentration_spotcheck(g: &Graph, config: &SpotcheckConfig) -> SpotcheckReport {
    let n = g.n();
    let p = config.p;
    let mean_degree = n.saturating_sub(1) as f64 * p;
    let degree_deviation = (0..n)
        .map(|v| relative_deviation(g.degree(v) as f64, mean_degree))
        .fold(0.0, f64::max);
    let mut max_codegree = 0;
    for x in 0..n {
        for y in x + 1..n {
            max_codegree = max_codegree.max(codegree(g, x, y).expect("distinct"));
        }
    }

    let mut stream = UnitStream::new(config.seed);
    let s = config.set_size.min(n / 2);
    let (mut cut_worst, mut cut_within) = (0.0f64, 0);
    let (mut zeta_worst, mut zeta_within) = (0.0f64, 0);
    let (mut evaluated, mut skipped) = (0, 0);
    for _ in 0..config.samples {
        let both = random_prefix(&mut stream, n, 2 * s);
        let (sv, tv) = both.split_at(s.min(both.len()));
        let yv = random_prefix(&mut stream, n, s);
        let zv = random_prefix(&mut stream, n, s);
        match (
            cut_deviation(g, p, sv, tv),
            zeta_deviation(g, p, &yv, &zv),
        ) {
            (Some(cd), Some(zd)) => {
                evaluated += 1;
                cut_worst = cut_worst.max(cd);
                zeta_worst = zeta_worst.max(zd);
                cut_within += (cd <= config.tolerance) as usize;
                zeta_within += (zd <= config.tolerance) as usize;
            }
            _ => skipped += 1,
        }
    }
    let threshold = 8.0 * n as f64 / (config.tolerance * config.tolerance * p);
    SpotcheckReport {
        tolerance: config.tolerance,
        degree_deviation,
        max_codegree,
        codegree_limit: 4.0 * n as f64 * p * p,
        cut_worst,
        cut_within,
        zeta_worst,
        zeta_within,
        samples: evaluated,
        skipped,
        zeta_sizes_qualify: (s * s) as f64 > threshold,
    }
}
