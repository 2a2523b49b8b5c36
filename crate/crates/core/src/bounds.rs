//! Bounds on the higher topological complexity `TC_r(B_k(Γ))`.
//!
//! With `n0`, `n1`, `n2` the numbers of essential vertices of valence at
//! least 4, separating trivalent and non-separating trivalent, and
//! `m = n0 + n1 + n2`, for `r > 1`, `m ≥ 2` and any `c_i ≤ n_i` with
//! `k ≥ 2(c0 + c2) + 3 c1`:
//!
//! `TC_r(B_k(Γ)) ≥ (r − 2)·min(⌊k/2⌋, m) + 2(c0 + c1) + c2`,
//!
//! while `TC_r(B_k(Γ)) ≤ r·m` once `k ≥ 2m`. When `n2 = 0` the two agree
//! from `k0 = 2m + n1` on.

use serde::Serialize;
use thiserror::Error;

use crate::config_space::HomologyReport;
use crate::graph::{Graph, VertexClassification};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("theorem inapplicable: {0}")]
    Inapplicable(String),
}

pub const CONNECTED_REQUIRED: &str = "connected graph with m(Γ) ≥ 2 required";

#[derive(Clone, Debug)]
pub struct BoundQuery {
    pub graph: Graph,
    pub r: usize,
    pub k: usize,
}

/// Numbers of vertices of each kind used in the lower bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Choice {
    pub c0: usize,
    pub c1: usize,
    pub c2: usize,
}

impl Choice {
    /// Particles the choice consumes: `2(c0 + c2) + 3 c1`.
    pub fn particles(&self) -> usize {
        2 * (self.c0 + self.c2) + 3 * self.c1
    }

    /// The choice-dependent part of the bound, `2(c0 + c1) + c2`.
    pub fn weight(&self) -> usize {
        2 * (self.c0 + self.c1) + self.c2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub r: usize,
    pub k: Option<usize>,
    pub classification: VertexClassification,
    pub choice: Option<Choice>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub stable_value: Option<usize>,
    pub k0: Option<usize>,
    pub caveats: Vec<String>,
    /// Whether the homology input of the lower bound was checked on the
    /// cubical model: `"verified"`, `"refuted"` or `"assumed"`.
    pub homology_input: String,
}

impl BoundReport {
    /// Records the outcome of a homology check for the same graph and `k`.
    pub fn with_homology(mut self, h: &HomologyReport) -> Self {
        self.homology_input = if h.nonvanishing { "verified" } else { "refuted" }.to_string();
        if !h.nonvanishing {
            self.caveats.push(format!(
                "homology of the configuration space vanishes in degree {}",
                h.degree
            ));
        }
        self
    }
}

/// Classification of a connected graph with at least two essential
/// vertices.
pub fn admissible_classification(g: &Graph) -> Result<VertexClassification, BoundError> {
    let c = g
        .classify()
        .map_err(|_| BoundError::Inapplicable(CONNECTED_REQUIRED.to_string()))?;
    if c.m < 2 {
        return Err(BoundError::Inapplicable(format!("{CONNECTED_REQUIRED} (m(Γ) = {})", c.m)));
    }
    Ok(c)
}

/// `(r − 2)·min(⌊k/2⌋, m) + weight(choice)`.
pub fn bound_value(r: usize, k: usize, m: usize, choice: Choice) -> usize {
    (r - 2) * (k / 2).min(m) + choice.weight()
}

/// Exhaustive search over admissible choices; ties go to the
/// lexicographically largest `(c0, c1, c2)`.
pub fn best_choice(c: &VertexClassification, k: usize) -> Choice {
    let mut best = Choice::default();
    for c0 in 0..=c.n0 {
        for c1 in 0..=c.n1 {
            for c2 in 0..=c.n2 {
                let x = Choice { c0, c1, c2 };
                if x.particles() <= k && (x.weight(), x) > (best.weight(), best) {
                    best = x;
                }
            }
        }
    }
    best
}

/// Closed form: take as many of each kind as fit, in the order `c0`, `c1`,
/// `c2`. Per particle, `c0` gives weight 1, `c1` gives 2/3 and `c2` gives
/// 1/2, and trading a `c1` for `c2`s or a `c0` for anything never gains.
pub fn greedy_choice(c: &VertexClassification, k: usize) -> Choice {
    let c0 = c.n0.min(k / 2);
    let rest = k - 2 * c0;
    let c1 = c.n1.min(rest / 3);
    let rest = rest - 3 * c1;
    let c2 = c.n2.min(rest / 2);
    Choice { c0, c1, c2 }
}

fn upper_caveat(k: usize, m: usize) -> Option<String> {
    (k < 2 * m).then(|| format!("upper bound reported outside its asserted range k ≥ 2m(Γ) = {}", 2 * m))
}

/// The best lower bound over admissible choices, with the upper bound
/// `r·m`.
pub fn lower_bound(q: &BoundQuery) -> Result<BoundReport, BoundError> {
    if q.r <= 1 {
        return Err(BoundError::Inapplicable(format!("r > 1 required (r = {})", q.r)));
    }
    let c = admissible_classification(&q.graph)?;
    let choice = best_choice(&c, q.k);
    let mut caveats = Vec::new();
    caveats.extend(upper_caveat(q.k, c.m));
    Ok(BoundReport {
        r: q.r,
        k: Some(q.k),
        classification: c,
        choice: Some(choice),
        lower: Some(bound_value(q.r, q.k, c.m, choice)),
        upper: Some(upper_bound(q.r, c.m)),
        stable_value: None,
        k0: None,
        caveats,
        homology_input: "assumed".to_string(),
    })
}

/// `r·m`.
pub fn upper_bound(r: usize, m: usize) -> usize {
    r * m
}

/// The stable value `r·m` and the threshold `k0 = 2m + n1` when there are
/// no non-separating trivalent vertices; otherwise a caveat. For `r ≥ 2`
/// the bounds at `k0` are included.
pub fn stable_report(g: &Graph, r: usize) -> Result<BoundReport, BoundError> {
    if r == 0 {
        return Err(BoundError::Inapplicable("r ≥ 1 required".to_string()));
    }
    let c = admissible_classification(g)?;
    let mut report = BoundReport {
        r,
        k: None,
        classification: c,
        choice: None,
        lower: None,
        upper: Some(upper_bound(r, c.m)),
        stable_value: None,
        k0: None,
        caveats: Vec::new(),
        homology_input: "assumed".to_string(),
    };
    if c.n2 > 0 {
        report.caveats.push(format!(
            "{} non-separating trivalent vertices: the stable value is not determined by these bounds",
            c.n2
        ));
        return Ok(report);
    }
    let k0 = 2 * c.m + c.n1;
    report.k = Some(k0);
    report.k0 = Some(k0);
    report.stable_value = Some(r * c.m);
    if r >= 2 {
        let choice = best_choice(&c, k0);
        report.choice = Some(choice);
        report.lower = Some(bound_value(r, k0, c.m, choice));
    } else {
        report
            .caveats
            .push("r = 1: stable value m(Γ) is the classical case; no lower bound evaluated".to_string());
    }
    Ok(report)
}

/// Whether, with every `c_i` maximal and `k = 2(c0 + c2) + 3 c1`, the lower
/// bound evaluates to `r·m`, matching the upper bound. Requires `r ≥ 2`,
/// a connected graph with `m ≥ 2` and no non-separating trivalent vertices.
pub fn proof_chain_check(g: &Graph, r: usize) -> bool {
    let Ok(c) = admissible_classification(g) else {
        return false;
    };
    if r < 2 || c.n2 > 0 {
        return false;
    }
    let maximal = Choice {
        c0: c.n0,
        c1: c.n1,
        c2: 0,
    };
    let k = maximal.particles();
    let chain = bound_value(r, k, c.m, maximal);
    let searched = lower_bound(&BoundQuery {
        graph: g.clone(),
        r,
        k,
    });
    let upper = upper_bound(r, c.m);
    k >= 2 * c.m
        && chain == upper
        && searched.is_ok_and(|rep| rep.lower == Some(upper) && rep.choice == Some(maximal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    fn query(g: Graph, r: usize, k: usize) -> BoundReport {
        lower_bound(&BoundQuery { graph: g, r, k }).unwrap()
    }

    #[test]
    fn examples() {
        let h = query(named::h_graph(), 2, 6);
        assert_eq!(h.choice, Some(Choice { c0: 0, c1: 2, c2: 0 }));
        assert_eq!((h.lower, h.upper), (Some(4), Some(4)));
        let t = query(named::theta(), 3, 4);
        assert_eq!(t.choice, Some(Choice { c0: 0, c1: 0, c2: 2 }));
        assert_eq!((t.lower, t.upper), (Some(4), Some(6)));
        let z = query(named::h_graph(), 2, 0);
        assert_eq!((z.choice, z.lower), (Some(Choice::default()), Some(0)));
        assert!(z.caveats[0].contains("outside"));
        assert_eq!(upper_bound(1, 2), 2);
    }

    #[test]
    fn refusals() {
        let bad = |g: Graph, r| lower_bound(&BoundQuery { graph: g, r, k: 4 }).unwrap_err();
        assert!(bad(named::h_graph(), 1).to_string().contains("r > 1"));
        assert!(bad(named::star(3), 2).to_string().contains("m(Γ) = 1"));
        let two = Graph::new(&["a", "b"], &[], &[]).unwrap();
        assert_eq!(bad(two, 2), BoundError::Inapplicable(CONNECTED_REQUIRED.to_string()));
    }

    #[test]
    fn stable_examples() {
        let h = stable_report(&named::h_graph(), 2).unwrap();
        assert_eq!((h.stable_value, h.k0), (Some(4), Some(6)));
        let s = stable_report(&named::spider(), 3).unwrap();
        assert_eq!((s.stable_value, s.k0), (Some(6), Some(4)));
        let t = stable_report(&named::theta(), 2).unwrap();
        assert_eq!(t.stable_value, None);
        assert_eq!(t.caveats.len(), 1);
        let one = stable_report(&named::spider(), 1).unwrap();
        assert_eq!((one.stable_value, one.lower), (Some(2), None));
    }

    #[test]
    fn chain_examples() {
        assert!(proof_chain_check(&named::h_graph(), 5));
        assert!(proof_chain_check(&named::spider(), 2));
        assert!(!proof_chain_check(&named::theta(), 3));
        assert!(!proof_chain_check(&named::h_graph(), 1));
    }

    #[test]
    fn theta_gap() {
        for r in 2..=8 {
            for k in 4..=12 {
                let t = query(named::theta(), r, k);
                assert_eq!(t.lower, Some(2 * (r - 2) + 2));
                assert_eq!(t.upper, Some(2 * r));
            }
        }
    }

    proptest! {
        #[test]
        fn greedy_matches_search(n0 in 0usize..5, n1 in 0usize..5, n2 in 0usize..5, k in 0usize..30) {
            let c = VertexClassification { n0, n1, n2, m: n0 + n1 + n2, trivalent_total: n1 + n2 };
            let best = best_choice(&c, k);
            prop_assert_eq!(greedy_choice(&c, k), best);
            prop_assert!(best.particles() <= k);
        }

        #[test]
        fn monotone_and_below_upper(n0 in 0usize..4, n1 in 0usize..4, n2 in 0usize..4, r in 2usize..7, k in 0usize..20) {
            let m = n0 + n1 + n2;
            let c = VertexClassification { n0, n1, n2, m, trivalent_total: n1 + n2 };
            let v = |r, k| bound_value(r, k, m, best_choice(&c, k));
            prop_assert!(v(r, k) <= v(r, k + 1));
            prop_assert!(v(r, k) <= v(r + 1, k));
            prop_assert!(v(r, k) <= upper_bound(r, m));
        }
    }
}
