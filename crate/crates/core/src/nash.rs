//! Equilibrium reports and best-response certification shared by every model.

use serde::{Deserialize, Serialize};

use crate::game::{MixedProfile, PayoffPair};

/// Interior roots closer than this to 0 or 1 are treated as boundary roots.
pub const INTERIOR_MARGIN: f64 = 1e-12;

/// Default number of points per axis used by [`verify_nash`] (pitch 1/100).
pub const DEFAULT_VERIFY_STEPS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumKind {
    Pure,
    Mixed,
    ContinuumOfProfiles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Analytic,
    GridOracle,
}

/// A connected set of equilibrium profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    Point(MixedProfile),
    /// Every profile on the straight segment between the two endpoints.
    Segment(MixedProfile, MixedProfile),
    /// Every profile in `[0,1]²`.
    Square,
}

impl Solution {
    /// Profiles that describe the set: the point, both segment ends, or the four corners.
    pub fn vertices(&self) -> Vec<MixedProfile> {
        match *self {
            Solution::Point(p) => vec![p],
            Solution::Segment(a, b) => vec![a, b],
            Solution::Square => vec![
                MixedProfile::at(0.0, 0.0),
                MixedProfile::at(0.0, 1.0),
                MixedProfile::at(1.0, 0.0),
                MixedProfile::at(1.0, 1.0),
            ],
        }
    }

    pub fn kind(&self) -> EquilibriumKind {
        match self {
            Solution::Point(p) if p.is_pure() => EquilibriumKind::Pure,
            Solution::Point(_) => EquilibriumKind::Mixed,
            _ => EquilibriumKind::ContinuumOfProfiles,
        }
    }

    /// Euclidean distance from `profile` to the set.
    pub fn distance(&self, profile: MixedProfile) -> f64 {
        match *self {
            Solution::Point(a) => (a.p - profile.p).hypot(a.q - profile.q),
            Solution::Segment(a, b) => {
                let (dx, dy) = (b.p - a.p, b.q - a.q);
                let len2 = dx * dx + dy * dy;
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    (((profile.p - a.p) * dx + (profile.q - a.q) * dy) / len2).clamp(0.0, 1.0)
                };
                (a.p + t * dx - profile.p).hypot(a.q + t * dy - profile.q)
            }
            Solution::Square => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub kind: EquilibriumKind,
    pub solution: Solution,
    /// Payoffs at each of `solution.vertices()`, in the same order.
    pub payoffs: Vec<PayoffPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashReport {
    pub equilibria: Vec<Equilibrium>,
    pub method: Method,
}

impl NashReport {
    pub(crate) fn from_solutions<F>(solutions: Vec<Solution>, method: Method, payoff: F) -> Self
    where
        F: Fn(MixedProfile) -> PayoffPair,
    {
        let equilibria = solutions
            .into_iter()
            .map(|solution| Equilibrium {
                kind: solution.kind(),
                payoffs: solution.vertices().into_iter().map(&payoff).collect(),
                solution,
            })
            .collect();
        Self { equilibria, method }
    }

    pub fn has_kind(&self, kind: EquilibriumKind) -> bool {
        self.equilibria.iter().any(|e| e.kind == kind)
    }

    /// Whether `profile` lies on some reported equilibrium set within `radius`.
    pub fn covers(&self, profile: MixedProfile, radius: f64) -> bool {
        self.equilibria
            .iter()
            .any(|e| e.solution.distance(profile) <= radius)
    }

    pub fn points(&self) -> Vec<MixedProfile> {
        self.equilibria
            .iter()
            .filter_map(|e| match e.solution {
                Solution::Point(p) => Some(p),
                _ => None,
            })
            .collect()
    }
}

fn sign(x: f64, zero: f64) -> i8 {
    if x > zero {
        1
    } else if x < -zero {
        -1
    } else {
        0
    }
}

/// Equilibria of a symmetric game in which each player's marginal gain from
/// raising their own probability is `slope * other + offset`.
///
/// A player whose gain is positive plays 1, negative plays 0, zero is
/// indifferent. `scale` sets the magnitude below which a coefficient counts as
/// zero.
pub(crate) fn solve_linear_gain(slope: f64, offset: f64, scale: f64) -> Vec<Solution> {
    let zero = 1e-12 * scale.max(1.0);
    let gain = |other: f64| slope * other + offset;
    let pt = |p: f64, q: f64| MixedProfile::at(p, q);

    if sign(slope, zero) == 0 {
        return match sign(offset, zero) {
            1 => vec![Solution::Point(pt(1.0, 1.0))],
            -1 => vec![Solution::Point(pt(0.0, 0.0))],
            _ => vec![Solution::Square],
        };
    }

    let mut out = Vec::new();
    let at0 = sign(offset, zero);
    let at1 = sign(slope + offset, zero);

    // An opponent sitting exactly on the root makes every reply optimal; with a
    // negative slope that opponent is itself replying optimally to all of them.
    if slope < 0.0 {
        if at0 == 0 {
            out.push(Solution::Segment(pt(0.0, 0.0), pt(1.0, 0.0)));
            out.push(Solution::Segment(pt(0.0, 0.0), pt(0.0, 1.0)));
        } else if at1 == 0 {
            out.push(Solution::Segment(pt(0.0, 1.0), pt(1.0, 1.0)));
            out.push(Solution::Segment(pt(1.0, 0.0), pt(1.0, 1.0)));
        }
    }

    let replies_optimally = |own: f64, other: f64| {
        let s = sign(gain(other), zero);
        if own == 1.0 {
            s >= 0
        } else {
            s <= 0
        }
    };
    for (p, q) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        if replies_optimally(p, q) && replies_optimally(q, p) {
            let corner = pt(p, q);
            if !out.iter().any(|s| s.distance(corner) == 0.0) {
                out.push(Solution::Point(corner));
            }
        }
    }

    let root = -offset / slope;
    if at0 != 0 && at1 != 0 && (INTERIOR_MARGIN..=1.0 - INTERIOR_MARGIN).contains(&root) {
        out.push(Solution::Point(pt(root, root)));
    }
    out
}

/// Largest payoff improvement either player can obtain by deviating
/// unilaterally to a point of the `steps`-point grid on `[0,1]`.
pub fn max_deviation_gain<F>(payoff: F, profile: MixedProfile, steps: usize) -> f64
where
    F: Fn(MixedProfile) -> PayoffPair,
{
    let steps = steps.max(2);
    let base = payoff(profile);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..steps {
        let x = if i + 1 == steps {
            1.0
        } else {
            i as f64 / (steps - 1) as f64
        };
        let dev_a = payoff(MixedProfile::at(x, profile.q)).pi_a - base.pi_a;
        let dev_b = payoff(MixedProfile::at(profile.p, x)).pi_b - base.pi_b;
        worst = worst.max(dev_a).max(dev_b);
    }
    worst
}

/// True when no unilateral deviation on the default grid improves the
/// deviator's payoff by more than `tol`.
pub fn verify_nash<F>(payoff: F, profile: MixedProfile, tol: f64) -> bool
where
    F: Fn(MixedProfile) -> PayoffPair,
{
    verify_nash_with_steps(payoff, profile, tol, DEFAULT_VERIFY_STEPS)
}

pub fn verify_nash_with_steps<F>(payoff: F, profile: MixedProfile, tol: f64, steps: usize) -> bool
where
    F: Fn(MixedProfile) -> PayoffPair,
{
    max_deviation_gain(payoff, profile, steps) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(_: MixedProfile) -> PayoffPair {
        PayoffPair::new(2.0, -1.0)
    }

    #[test]
    fn constant_payoffs_always_verify() {
        for (p, q) in [(0.0, 0.0), (0.3, 0.9), (1.0, 0.5)] {
            assert!(verify_nash(constant, MixedProfile::at(p, q), 0.0));
        }
    }

    #[test]
    fn segment_distance() {
        let s = Solution::Segment(MixedProfile::at(0.0, 0.0), MixedProfile::at(1.0, 0.0));
        assert_eq!(s.distance(MixedProfile::at(0.5, 0.0)), 0.0);
        assert!((s.distance(MixedProfile::at(0.5, 0.25)) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn linear_gain_sign_cases() {
        assert_eq!(
            solve_linear_gain(0.0, -1.0, 1.0),
            vec![Solution::Point(MixedProfile::at(0.0, 0.0))]
        );
        assert_eq!(solve_linear_gain(0.0, 0.0, 1.0), vec![Solution::Square]);
        // Anti-coordination: (1,0), (0,1) and the interior root.
        let sols = solve_linear_gain(-3.0, 1.5, 1.0);
        assert_eq!(sols.len(), 3);
        assert!(sols.contains(&Solution::Point(MixedProfile::at(0.5, 0.5))));
        assert!(sols.contains(&Solution::Point(MixedProfile::at(1.0, 0.0))));
        assert!(sols.contains(&Solution::Point(MixedProfile::at(0.0, 1.0))));
    }

    #[test]
    fn root_at_one_with_positive_slope_is_just_a_corner() {
        // gain = q - 1: (1,1) weakly optimal, (0,0) strictly.
        let sols = solve_linear_gain(1.0, -1.0, 1.0);
        assert!(sols.contains(&Solution::Point(MixedProfile::at(1.0, 1.0))));
        assert!(sols.contains(&Solution::Point(MixedProfile::at(0.0, 0.0))));
        assert_eq!(sols.len(), 2);
    }
}
