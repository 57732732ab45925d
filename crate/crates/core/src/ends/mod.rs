//! Empirical ends of finitely generated groups from Cayley balls.

mod oracle;

pub use oracle::{
    builtin_oracles, parse_group, CyclicFreeProduct, Element, FreeAbelian, FreeGroup, GroupOracle,
};

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_BALL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndsError {
    #[error("ball of radius {radius} exceeds {cap} vertices")]
    OverCap { radius: usize, cap: usize },
    #[error("{0}")]
    Oracle(String),
}

/// The ball of radius `r` around the identity in the Cayley graph.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub radius: usize,
    pub vertices: Vec<Element>,
    pub distance: Vec<usize>,
    /// Neighbours inside the ball, one entry per generator edge.
    pub adjacency: Vec<Vec<usize>>,
    /// True when the whole group fits in the ball.
    pub closed: bool,
}

impl CayleyBall {
    /// `|Ball(k)|` for `k = 0..=radius`.
    pub fn ball_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.distance {
            sizes[d] += 1;
        }
        for k in 1..sizes.len() {
            sizes[k] += sizes[k - 1];
        }
        sizes
    }

    /// Components of `{v : r ≤ d(v) ≤ R}`, with `R` the ball radius, that
    /// reach distance `R`.
    pub fn annulus_components(&self, r: usize) -> usize {
        let big_r = self.radius;
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let inside = |v: usize| self.distance[v] >= r;
        for v in (0..n).filter(|&v| inside(v)) {
            for &w in &self.adjacency[v] {
                if inside(w) {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut roots: Vec<usize> = (0..n)
            .filter(|&v| self.distance[v] == big_r)
            .map(|v| find(&mut parent, v))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

/// Breadth-first ball with normal-form deduplication.
pub fn cayley_ball(o: &dyn GroupOracle, radius: usize, cap: usize) -> Result<CayleyBall, EndsError> {
    let mut index: HashMap<Element, usize> = HashMap::new();
    let mut vertices = vec![o.identity()];
    let mut distance = vec![0];
    index.insert(o.identity(), 0);
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut closed = true;
    let mut head = 0;
    while head < vertices.len() {
        let v = head;
        head += 1;
        let mut nbrs = Vec::with_capacity(o.generator_count());
        for g in 0..o.generator_count() {
            let w = o.multiply(&vertices[v], g);
            match index.get(&w) {
                Some(&i) => nbrs.push(i),
                None if distance[v] < radius => {
                    if vertices.len() >= cap {
                        return Err(EndsError::OverCap { radius, cap });
                    }
                    let i = vertices.len();
                    index.insert(w.clone(), i);
                    vertices.push(w);
                    distance.push(distance[v] + 1);
                    nbrs.push(i);
                }
                None => closed = false,
            }
        }
        adjacency.push(nbrs);
    }
    Ok(CayleyBall {
        radius,
        vertices,
        distance,
        adjacency,
        closed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndsClass {
    Zero,
    One,
    Two,
    InfinitelyMany,
    Inconclusive,
}

impl std::fmt::Display for EndsClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EndsClass::Zero => "0",
            EndsClass::One => "1",
            EndsClass::Two => "2",
            EndsClass::InfinitelyMany => "infinitely_many",
            EndsClass::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndsProfile {
    pub inner_radius: usize,
    pub outer_radius: usize,
    pub component_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndsReport {
    pub group: String,
    pub r_max: usize,
    pub classification: EndsClass,
    pub ball_sizes: Vec<usize>,
    pub profile: Vec<EndsProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

/// Classifies by annulus component counts for `r = 1..r_max-1` with outer
/// radius `r_max`: the count stable at 1 or 2 over the last three rungs
/// gives 1 or 2 ends, strict growth gives infinitely many, a closed ball
/// gives 0, anything else is inconclusive.
pub fn ends_estimate(o: &dyn GroupOracle, r_max: usize, cap: usize) -> EndsReport {
    let mut report = EndsReport {
        group: o.name(),
        r_max,
        classification: EndsClass::Inconclusive,
        ball_sizes: Vec::new(),
        profile: Vec::new(),
        diagnostics: None,
    };
    let ball = match cayley_ball(o, r_max, cap) {
        Ok(b) => b,
        Err(e) => {
            report.diagnostics = Some(e.to_string());
            return report;
        }
    };
    report.ball_sizes = ball.ball_sizes();
    if ball.closed {
        report.classification = EndsClass::Zero;
        return report;
    }
    report.profile = (1..r_max)
        .map(|r| EndsProfile {
            inner_radius: r,
            outer_radius: r_max,
            component_count: ball.annulus_components(r),
        })
        .collect();
    let counts: Vec<usize> = report.profile.iter().map(|p| p.component_count).collect();
    if counts.len() < 3 {
        report.diagnostics = Some("need r_max >= 4 for three rungs".into());
        return report;
    }
    let last = &counts[counts.len() - 3..];
    report.classification = if last[0] == last[1] && last[1] == last[2] {
        match last[0] {
            1 => EndsClass::One,
            2 => EndsClass::Two,
            _ => EndsClass::Inconclusive,
        }
    } else if last[0] < last[1] && last[1] < last[2] {
        EndsClass::InfinitelyMany
    } else {
        EndsClass::Inconclusive
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        let z = FreeAbelian::standard(1);
        let b = cayley_ball(&z, 3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.vertices.len(), 7);
        // a path: the two endpoints have one neighbour inside the ball
        let degrees: Vec<usize> = b.adjacency.iter().map(Vec::len).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);
        assert!(!b.closed);
        let z2 = FreeAbelian::standard(2);
        assert_eq!(cayley_ball(&z2, 2, DEFAULT_BALL_CAP).unwrap().vertices.len(), 13);
        let f2 = FreeGroup::new(2);
        assert_eq!(cayley_ball(&f2, 2, DEFAULT_BALL_CAP).unwrap().vertices.len(), 17);
    }

    #[test]
    fn finite_group_closes() {
        let z6 = CyclicFreeProduct::cyclic(6).unwrap();
        let b = cayley_ball(&z6, 3, DEFAULT_BALL_CAP).unwrap();
        assert!(b.closed);
        assert_eq!(b.vertices.len(), 6);
        assert!(!cayley_ball(&z6, 2, DEFAULT_BALL_CAP).unwrap().closed);
    }

    #[test]
    fn cap() {
        let f2 = FreeGroup::new(2);
        assert_eq!(
            cayley_ball(&f2, 8, 100).unwrap_err(),
            EndsError::OverCap { radius: 8, cap: 100 }
        );
        let r = ends_estimate(&f2, 8, 100);
        assert_eq!(r.classification, EndsClass::Inconclusive);
        assert!(r.diagnostics.is_some());
    }

    #[test]
    fn examples() {
        let cases: [(&str, EndsClass); 3] = [
            ("Z", EndsClass::Two),
            ("Z^2", EndsClass::One),
            ("F2", EndsClass::InfinitelyMany),
        ];
        for (name, expected) in cases {
            let o = parse_group(name).unwrap();
            assert_eq!(ends_estimate(o.as_ref(), 6, DEFAULT_BALL_CAP).classification, expected, "{name}");
        }
    }
}
