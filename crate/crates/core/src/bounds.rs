//! Closed-form tail bounds and counting identities.
//!
//! Asymptotic `o(1)` corrections are represented by an explicit `slack`
//! argument where they appear; zero is the default and is reported as such.

use std::fmt;

use crate::cuts;
use crate::error::{Error, Result};
use crate::graph::{Graph, Pair};

/// A probability bound together with the intermediate quantities that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Clamped to `[0, 1]`.
    pub value: f64,
    pub terms: Vec<(&'static str, f64)>,
}

impl BoundReport {
    fn new(value: f64, terms: Vec<(&'static str, f64)>) -> Self {
        BoundReport {
            value: value.clamp(0.0, 1.0),
            terms,
        }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bound = {:.6e}", self.value)?;
        for (k, v) in &self.terms {
            write!(f, ", {k} = {v:.6e}")?;
        }
        Ok(())
    }
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// `(1 + x) ln(1 + x) - x` for `x >= -1`, with `phi(-1) = 1`.
pub fn phi(x: f64) -> Result<f64> {
    if x.is_nan() || x < -1.0 {
        return Err(domain(format!("phi needs x >= -1, got {x}")));
    }
    if x == -1.0 {
        return Ok(1.0);
    }
    Ok((1.0 + x) * (1.0 + x).ln() - x)
}

fn check_mu_lambda(mu: f64, lambda: f64) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(domain(format!("mean must be positive, got {mu}")));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(domain(format!("deviation must be nonnegative, got {lambda}")));
    }
    Ok(())
}

/// Upper tail of a binomial with mean `mu`:
/// `P(X >= mu + lambda) <= exp[-lambda^2 / (2 (mu + lambda / 3))]`.
pub fn chernoff_upper(mu: f64, lambda: f64) -> Result<BoundReport> {
    check_mu_lambda(mu, lambda)?;
    let exponent = lambda * lambda / (2.0 * (mu + lambda / 3.0));
    Ok(BoundReport::new(
        (-exponent).exp(),
        vec![("mu", mu), ("lambda", lambda), ("exponent", exponent)],
    ))
}

/// Lower tail: `P(X <= mu - lambda) <= exp[-mu phi(-lambda/mu)]`, the value
/// reported, and the weaker `exp[-lambda^2 / (2 mu)]` under `weak_form`.
pub fn chernoff_lower(mu: f64, lambda: f64) -> Result<BoundReport> {
    check_mu_lambda(mu, lambda)?;
    if lambda > mu {
        return Err(domain(format!(
            "lower-tail deviation {lambda} exceeds the mean {mu}"
        )));
    }
    let phi_value = phi(-lambda / mu)?;
    let phi_form = (-mu * phi_value).exp();
    let weak_form = (-lambda * lambda / (2.0 * mu)).exp();
    Ok(BoundReport::new(
        phi_form,
        vec![
            ("mu", mu),
            ("lambda", lambda),
            ("phi", phi_value),
            ("phi_form", phi_form),
            ("weak_form", weak_form),
        ],
    ))
}

/// Either tail of a 1-Lipschitz function of `m` i.i.d. Bernoulli(`p`)
/// variables: `exp[-t^2 / (4 m p)]`, for `0 <= t <= 2 m p`.
pub fn azuma_bound(m: usize, p: f64, t: f64) -> Result<BoundReport> {
    if m == 0 {
        return Err(domain("need at least one variable"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let mp = m as f64 * p;
    if !(t >= 0.0 && t <= 2.0 * mp) {
        return Err(domain(format!("deviation {t} outside [0, 2mp] = [0, {}]", 2.0 * mp)));
    }
    Ok(BoundReport::new(
        (-t * t / (4.0 * mp)).exp(),
        vec![("m", m as f64), ("p", p), ("t", t)],
    ))
}

/// Expected number of edges of G(n, p) in no triangle:
/// `C(n, 2) p (1 - p^2)^(n - 2)`. Requires `n >= 2`.
pub fn mu_no_triangle(n: usize, p: f64) -> f64 {
    debug_assert!(n >= 2 && (0.0..=1.0).contains(&p));
    let pairs = (n * (n - 1) / 2) as f64;
    pairs * p * (1.0 - p * p).powi(n as i32 - 2)
}

/// Second-moment bound for `X`, the number of edges in no triangle.
///
/// With `A_e` the indicator that `e` is an edge lying in no triangle,
/// `E[X^2] = E X + sum over ordered pairs e != f of E[A_e A_f]`, and the
/// pairwise terms are bounded by `p^2 (1-p^2)^(2(n-4))` for disjoint pairs and
/// `p^2 (1-2p^2+p^3)^(n-3)` for pairs sharing a vertex. The assembled
/// `Var(X) / (E X)^2` bound is reported as `var_ratio`; `value` is the
/// resulting Chebyshev bound on `P(X = 0)`.
pub fn second_moment_terms(n: usize, p: f64) -> Result<BoundReport> {
    if n < 5 {
        return Err(domain(format!("second-moment terms need n >= 5, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let nf = n as f64;
    let pairs = nf * (nf - 1.0) / 2.0;
    let disjoint_pairs = pairs * (nf - 2.0) * (nf - 3.0) / 2.0;
    let shared_pairs = pairs * 2.0 * (nf - 2.0);
    let p2 = p * p;
    let disjoint = p2 * (1.0 - p2).powi(2 * (n as i32 - 4));
    let shared = p2 * (1.0 - 2.0 * p2 + p2 * p).powi(n as i32 - 3);
    let mu = mu_no_triangle(n, p);
    let mut terms = vec![
        ("mu", mu),
        ("disjoint_term", disjoint),
        ("shared_term", shared),
        ("disjoint_pairs", disjoint_pairs),
        ("shared_pairs", shared_pairs),
    ];
    if mu <= 0.0 {
        // E X = 0: the ratio is undefined and the bound on P(X = 0) vacuous.
        return Ok(BoundReport::new(1.0, terms));
    }
    let second_moment = mu + disjoint_pairs * disjoint + shared_pairs * shared;
    let var_bound = (second_moment - mu * mu).max(0.0);
    let ratio = var_bound / (mu * mu);
    terms.push(("var_bound", var_bound));
    terms.push(("var_ratio", ratio));
    Ok(BoundReport::new(ratio, terms))
}

/// Janson bound on the probability that none of `m` triangles appears, from
/// `mu` and an upper estimate `delta_bar` of the pair-correlation sum.
/// Non-decreasing in `delta_bar`.
pub fn janson_from_delta(mu: f64, delta_bar: f64) -> f64 {
    if delta_bar <= 0.0 {
        return if mu > 0.0 { 0.0 } else { 1.0 };
    }
    (-mu * mu / (2.0 * delta_bar)).exp().clamp(0.0, 1.0)
}

/// Janson bound for `m` triangles of K_n each present with probability
/// `p^3`: `mu = m p^3`, `delta_bar <= 3 m n p^5 + mu`,
/// value `exp[-mu^2 / (2 delta_bar)]`.
pub fn janson_triangle_bound(m: usize, n: usize, p: f64) -> Result<BoundReport> {
    if m == 0 {
        return Err(domain("need at least one triangle"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let mu = m as f64 * p.powi(3);
    let delta_bar = 3.0 * m as f64 * n as f64 * p.powi(5) + mu;
    Ok(BoundReport::new(
        janson_from_delta(mu, delta_bar),
        vec![("mu", mu), ("delta_bar", delta_bar)],
    ))
}

/// Triangles of K_n by how many of their edges lie in `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodmanCounts {
    pub n: usize,
    /// `|F|`.
    pub f: usize,
    /// `t[i]` = triangles with exactly `i` edges in `F`.
    pub t: [u64; 4],
}

impl GoodmanCounts {
    /// Triangles of `F` itself.
    pub fn tau(&self) -> u64 {
        self.t[3]
    }

    /// `|F| (n - 2) = t1 + 2 t2 + 3 t3`, exactly.
    pub fn incidence_identity_holds(&self) -> bool {
        let lhs = self.f as u64 * self.n.saturating_sub(2) as u64;
        lhs == self.t[1] + 2 * self.t[2] + 3 * self.t[3]
    }

    /// `t1 + t2 < n^3 / 8`, compared in integers.
    pub fn goodman_holds(&self) -> bool {
        8 * (self.t[1] + self.t[2]) < (self.n as u64).pow(3)
    }
}

/// Exact Goodman counts for `F ⊆ E(K_n)` by scanning all triples.
pub fn goodman(n: usize, f: &[Pair]) -> Result<GoodmanCounts> {
    let g = Graph::from_edges(n, f.iter().copied())?;
    let mut t = [0u64; 4];
    for x in 0..n {
        for y in x + 1..n {
            let xy = g.has_edge(x, y) as usize;
            for z in y + 1..n {
                t[xy + g.has_edge(x, z) as usize + g.has_edge(y, z) as usize] += 1;
            }
        }
    }
    Ok(GoodmanCounts { n, f: g.m(), t })
}

/// Outcome of checking the triangle-density chain for one `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ml3Report {
    pub counts: GoodmanCounts,
    pub delta: f64,
    pub eta: f64,
    /// Stand-in for the asymptotic `o(1)` terms, as a multiple of `n^3`.
    pub slack: f64,
    /// `min over cuts Π of |F \ Π|`.
    pub min_cut_deficiency: usize,
    /// `|F| > (1 - delta) n^2 / 4`.
    pub size_condition: bool,
    /// `min |F \ Π| > eta n^2`.
    pub deficiency_condition: bool,
    /// `t1 + t3 >= eta n^3 / 3`.
    pub odd_triangles: bool,
    /// `t1 - 3 t3 < (delta + slack) n^3`.
    pub balance: bool,
    /// `tau(F) > (eta - 3 delta - 3 slack) n^3 / 12`.
    pub conclusion: bool,
}

impl Ml3Report {
    pub fn hypothesis_met(&self) -> bool {
        self.size_condition && self.deficiency_condition
    }

    /// The two chain inequalities together force the conclusion.
    pub fn chain_consistent(&self) -> bool {
        !(self.odd_triangles && self.balance) || self.conclusion
    }
}

impl fmt::Display for Ml3Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        writeln!(
            f,
            "n = {}, |F| = {}, t = {:?}, min cut deficiency = {}",
            c.n, c.f, c.t, self.min_cut_deficiency
        )?;
        if !self.hypothesis_met() {
            writeln!(
                f,
                "hypothesis not met (size: {}, deficiency: {})",
                self.size_condition, self.deficiency_condition
            )?;
        }
        writeln!(f, "asymptotic slack = {}", self.slack)?;
        writeln!(f, "t1 + t3 >= eta n^3 / 3: {}", self.odd_triangles)?;
        writeln!(f, "t1 - 3 t3 < (delta + slack) n^3: {}", self.balance)?;
        write!(f, "tau(F) > (eta - 3 delta - 3 slack) n^3 / 12: {}", self.conclusion)
    }
}

/// Evaluates the hypothesis and each step of the triangle-density chain for
/// `F ⊆ K_n`. The minimum cut deficiency is found exhaustively (`n <= 24`)
/// unless supplied.
pub fn ml3_check(
    n: usize,
    f: &[Pair],
    delta: f64,
    eta: f64,
    slack: f64,
    deficiency: Option<usize>,
) -> Result<Ml3Report> {
    let counts = goodman(n, f)?;
    let min_cut_deficiency = match deficiency {
        Some(d) => d,
        None => {
            cuts::check_budget(n)?;
            let g = Graph::from_edges(n, f.iter().copied())?;
            cuts::min_over_cuts(n, g.edges(), &[]).0
        }
    };
    let nf = n as f64;
    let n2 = nf * nf;
    let n3 = n2 * nf;
    let [_, t1, _, t3] = counts.t.map(|x| x as f64);
    Ok(Ml3Report {
        counts,
        delta,
        eta,
        slack,
        min_cut_deficiency,
        size_condition: counts.f as f64 > (1.0 - delta) * n2 / 4.0,
        deficiency_condition: min_cut_deficiency as f64 > eta * n2,
        odd_triangles: t1 + t3 >= eta * n3 / 3.0,
        balance: t1 - 3.0 * t3 < (delta + slack) * n3,
        conclusion: t3 > (eta - 3.0 * delta - 3.0 * slack) * n3 / 12.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0).unwrap(), 0.0);
        assert_eq!(phi(-1.0).unwrap(), 1.0);
        assert!(phi(-1.5).is_err());
        // continuity at -1
        assert!(close(phi(-1.0 + 1e-12).unwrap(), 1.0, 1e-9));
    }

    #[test]
    fn chernoff_values() {
        let lower = chernoff_lower(7.0, 7.0).unwrap();
        assert!(close(lower.value, (-7.0f64).exp(), 1e-15));
        let upper = chernoff_upper(100.0, 10.0).unwrap();
        assert!(close(upper.value, 0.616_392_731_327_227, 1e-12));
        assert!(chernoff_lower(5.0, 6.0).is_err());
        assert!(chernoff_upper(0.0, 1.0).is_err());
        assert!(chernoff_upper(1.0, -1.0).is_err());
    }

    #[test]
    fn azuma_values() {
        assert_eq!(azuma_bound(100, 0.5, 0.0).unwrap().value, 1.0);
        assert!(close(
            azuma_bound(100, 0.5, 10.0).unwrap().value,
            0.606_530_659_712_633_4,
            1e-12
        ));
        assert!(azuma_bound(100, 0.5, 101.0).is_err());
        assert!(azuma_bound(0, 0.5, 0.0).is_err());
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu_no_triangle(5, 1.0), 0.0);
        assert!(close(mu_no_triangle(4, 0.5), 1.6875, 1e-12));
    }

    #[test]
    fn second_moment_values() {
        let r = second_moment_terms(6, 0.5).unwrap();
        assert!(close(r.term("disjoint_term").unwrap(), 0.079_101_562_5, 1e-12));
        let zero = second_moment_terms(10, 0.0).unwrap();
        assert_eq!(zero.value, 1.0);
        assert_eq!(zero.term("mu"), Some(0.0));
        assert_eq!(zero.term("disjoint_term"), Some(0.0));
        assert_eq!(zero.term("var_ratio"), None);
        assert!(second_moment_terms(4, 0.5).is_err());
    }

    #[test]
    fn janson_values() {
        let p = 0.1f64.cbrt();
        let r = janson_triangle_bound(10, 1000, p).unwrap();
        assert!(close(r.term("mu").unwrap(), 1.0, 1e-12));
        assert!(r.value >= 0.9f64.powi(10));
        assert!(janson_triangle_bound(10, 100, 1e-6).unwrap().value > 0.999);
        assert!(janson_from_delta(2.0, 5.0) <= janson_from_delta(2.0, 6.0));
    }

    #[test]
    fn goodman_fixtures() {
        let k4: Vec<Pair> = Graph::complete(4).edges().to_vec();
        let g = goodman(4, &k4).unwrap();
        assert_eq!(g.t, [0, 0, 0, 4]);
        assert!(g.incidence_identity_holds());

        let c5: Vec<Pair> = Graph::cycle(5).edges().to_vec();
        let g = goodman(5, &c5).unwrap();
        assert_eq!(g.t, [0, 5, 5, 0]);
        assert!(g.incidence_identity_holds() && g.goodman_holds());

        let g = goodman(9, &[]).unwrap();
        assert_eq!(g.t, [84, 0, 0, 0]);
    }

    #[test]
    fn ml3_fixtures() {
        // balanced complete bipartite: some cut contains every edge
        let bip: Vec<Pair> = (0..5).flat_map(|u| (5..10).map(move |v| (u, v))).collect();
        let r = ml3_check(10, &bip, 0.1, 0.01, 0.0, None).unwrap();
        assert_eq!(r.min_cut_deficiency, 0);
        assert!(!r.hypothesis_met());

        let k12: Vec<Pair> = Graph::complete(12).edges().to_vec();
        let r = ml3_check(12, &k12, 0.05, 0.2, 0.0, None).unwrap();
        // max cut of K12 is 36, so 66 - 36 edges remain inside
        assert_eq!(r.min_cut_deficiency, 30);
        assert!(r.hypothesis_met());
        assert_eq!(r.counts.tau(), 220);
        assert!(r.odd_triangles && r.conclusion && r.chain_consistent());

        let r = ml3_check(12, &[], 0.05, 0.2, 0.0, None).unwrap();
        assert!(!r.hypothesis_met());

        assert!(ml3_check(30, &[], 0.1, 0.1, 0.0, None).is_err());
        assert!(ml3_check(30, &[], 0.1, 0.1, 0.0, Some(0)).is_ok());
    }
}
