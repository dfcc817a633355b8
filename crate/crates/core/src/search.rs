//! Exhaustive best-response search over discretized strategy spaces.
//!
//! Quantum strategies are sampled on a regular `(theta, phi)` grid covering
//! `[0, π] × [0, π/2]`. A pair of grid strategies is an approximate equilibrium
//! when neither player can gain more than `tol` by switching to any other grid
//! strategy.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameMatrix, MixedProfile, PayoffPair};
use crate::nash::{max_deviation_gain, Method, NashReport, Solution};
use crate::quantum::{build_unitary, EntanglementParam, Protocol, Unitary2};

pub const DEFAULT_TOL: f64 = 1e-6;

/// Payoffs within this distance of the maximum count as tied best responses.
pub const TIE_TOL: f64 = 1e-12;

pub const SWEEP_CSV_HEADER: &str =
    "gamma_ent,theta_a,phi_a,theta_b,phi_b,pi_a,pi_b,max_improvement";

/// Number of evenly spaced samples of `theta ∈ [0, π]` and `phi ∈ [0, π/2]`.
///
/// `phi_steps == 1` pins `phi` to 0, which restricts players to real rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub theta_steps: usize,
    pub phi_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            theta_steps: 101,
            phi_steps: 51,
        }
    }
}

impl GridSpec {
    pub fn new(theta_steps: usize, phi_steps: usize) -> Result<Self> {
        if theta_steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "theta_steps must be at least 2, got {theta_steps}"
            )));
        }
        if phi_steps < 1 {
            return Err(Error::InvalidGrid("phi_steps must be at least 1".into()));
        }
        Ok(Self {
            theta_steps,
            phi_steps,
        })
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.theta_steps, self.phi_steps).map(|_| ())
    }

    pub fn len(&self) -> usize {
        self.theta_steps * self.phi_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn theta(&self, idx: usize) -> f64 {
        PI * (idx as f64 / (self.theta_steps - 1) as f64)
    }

    pub fn phi(&self, idx: usize) -> f64 {
        if self.phi_steps == 1 {
            0.0
        } else {
            FRAC_PI_2 * (idx as f64 / (self.phi_steps - 1) as f64)
        }
    }

    pub fn theta_pitch(&self) -> f64 {
        PI / (self.theta_steps - 1) as f64
    }

    pub fn phi_pitch(&self) -> f64 {
        if self.phi_steps == 1 {
            0.0
        } else {
            FRAC_PI_2 / (self.phi_steps - 1) as f64
        }
    }

    /// The grid with every cell halved; the old points remain grid points.
    pub fn refined(&self) -> Self {
        Self {
            theta_steps: 2 * self.theta_steps - 1,
            phi_steps: if self.phi_steps == 1 {
                1
            } else {
                2 * self.phi_steps - 1
            },
        }
    }

    /// Flat index, ordered by theta first and then phi.
    pub fn index(&self, pt: GridPoint) -> usize {
        pt.theta_idx * self.phi_steps + pt.phi_idx
    }

    pub fn point(&self, index: usize) -> GridPoint {
        GridPoint {
            theta_idx: index / self.phi_steps,
            phi_idx: index % self.phi_steps,
        }
    }

    pub fn unitary(&self, pt: GridPoint) -> Unitary2 {
        build_unitary(self.theta(pt.theta_idx), self.phi(pt.phi_idx))
            .expect("grid angles lie in the strategy box")
    }

    fn unitaries(&self) -> Vec<Unitary2> {
        (0..self.len()).map(|i| self.unitary(self.point(i))).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub theta_idx: usize,
    pub phi_idx: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alice,
    Bob,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestResponse {
    /// The tied maximizer with the lowest `(theta, phi)` index.
    pub strategy: Unitary2,
    pub point: GridPoint,
    pub payoff: f64,
    /// Every grid point within [`TIE_TOL`] of the maximum, in index order.
    pub ties: Vec<GridPoint>,
}

/// The responder's payoff-maximizing grid strategy against a fixed opponent.
pub fn best_response(
    game: &GameMatrix,
    opponent: &Unitary2,
    gamma_ent: EntanglementParam,
    grid: &GridSpec,
    role: Role,
) -> BestResponse {
    let protocol = Protocol::new(gamma_ent);
    let unitaries = grid.unitaries();
    best_response_in(game, &protocol, &unitaries, opponent, grid, role)
}

fn best_response_in(
    game: &GameMatrix,
    protocol: &Protocol,
    unitaries: &[Unitary2],
    opponent: &Unitary2,
    grid: &GridSpec,
    role: Role,
) -> BestResponse {
    let payoffs: Vec<f64> = unitaries
        .par_iter()
        .map(|u| match role {
            Role::Alice => protocol.payoffs(game, u, opponent).pi_a,
            Role::Bob => protocol.payoffs(game, opponent, u).pi_b,
        })
        .collect();
    let best = payoffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<GridPoint> = payoffs
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= best - TIE_TOL)
        .map(|(i, _)| grid.point(i))
        .collect();
    let point = ties[0];
    BestResponse {
        strategy: unitaries[grid.index(point)],
        point,
        payoff: best,
        ties,
    }
}

/// An approximate equilibrium found on a grid, standing for a cluster of
/// neighbouring equilibrium pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxNE {
    pub strategy_a: Unitary2,
    pub strategy_b: Unitary2,
    pub point_a: GridPoint,
    pub point_b: GridPoint,
    pub payoffs: PayoffPair,
    /// Largest gain either player obtains by deviating within the grid.
    pub max_improvement: f64,
    pub grid: GridSpec,
    /// Number of equilibrium pairs merged into this entry.
    pub cluster_size: usize,
    pub best_responses_a: Vec<GridPoint>,
    pub best_responses_b: Vec<GridPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub tol: f64,
    /// Asymmetric pairs are only examined on every `audit_stride`-th grid line
    /// of each axis.
    pub audit_stride: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            audit_stride: 2,
        }
    }
}

pub fn find_quantum_ne(
    game: &GameMatrix,
    gamma_ent: EntanglementParam,
    grid: &GridSpec,
    tol: f64,
) -> Vec<ApproxNE> {
    find_quantum_ne_with(
        game,
        gamma_ent,
        grid,
        &SearchOptions {
            tol,
            ..SearchOptions::default()
        },
    )
}

/// One equilibrium pair before clustering.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    a: usize,
    b: usize,
    improvement: f64,
}

pub fn find_quantum_ne_with(
    game: &GameMatrix,
    gamma_ent: EntanglementParam,
    grid: &GridSpec,
    opts: &SearchOptions,
) -> Vec<ApproxNE> {
    let protocol = Protocol::new(gamma_ent);
    let unitaries = grid.unitaries();
    let n = unitaries.len();
    let pay = |a: usize, b: usize| protocol.payoffs(game, &unitaries[a], &unitaries[b]);

    // best_a[j]: Alice's best payoff against Bob's strategy j.
    // best_b[i]: Bob's best payoff against Alice's strategy i.
    let (best_a, best_b) = (0..n)
        .into_par_iter()
        .fold(
            || (vec![f64::NEG_INFINITY; n], vec![f64::NEG_INFINITY; n]),
            |(mut col, mut row), i| {
                let mut row_max = f64::NEG_INFINITY;
                for (j, c) in col.iter_mut().enumerate() {
                    let p = pay(i, j);
                    *c = c.max(p.pi_a);
                    row_max = row_max.max(p.pi_b);
                }
                row[i] = row_max;
                (col, row)
            },
        )
        .reduce(
            || (vec![f64::NEG_INFINITY; n], vec![f64::NEG_INFINITY; n]),
            |(mut c1, mut r1), (c2, r2)| {
                for (x, y) in c1.iter_mut().zip(c2) {
                    *x = x.max(y);
                }
                for (x, y) in r1.iter_mut().zip(r2) {
                    *x = x.max(y);
                }
                (c1, r1)
            },
        );

    let improvement = |a: usize, b: usize| {
        let p = pay(a, b);
        (best_a[b] - p.pi_a).max(best_b[a] - p.pi_b)
    };

    let symmetric: Vec<Candidate> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let imp = improvement(i, i);
            (imp <= opts.tol).then_some(Candidate {
                a: i,
                b: i,
                improvement: imp,
            })
        })
        .collect();

    let coarse = coarse_lines(grid, opts.audit_stride.max(1));
    let nc = coarse.len();
    let asymmetric: Vec<Candidate> = (0..nc)
        .into_par_iter()
        .flat_map_iter(|ca| {
            let a = coarse[ca];
            let improvement = &improvement;
            coarse.iter().filter_map(move |&b| {
                if a == b {
                    return None;
                }
                let imp = improvement(a, b);
                (imp <= opts.tol).then_some(Candidate {
                    a,
                    b,
                    improvement: imp,
                })
            })
        })
        .collect();

    let clusters = cluster(grid, opts.audit_stride.max(1), &symmetric, &asymmetric);

    clusters
        .into_iter()
        .map(|(rep, size)| {
            let ua = unitaries[rep.a];
            let ub = unitaries[rep.b];
            let br_a = best_response_in(game, &protocol, &unitaries, &ub, grid, Role::Alice);
            let br_b = best_response_in(game, &protocol, &unitaries, &ua, grid, Role::Bob);
            ApproxNE {
                strategy_a: ua,
                strategy_b: ub,
                point_a: grid.point(rep.a),
                point_b: grid.point(rep.b),
                payoffs: pay(rep.a, rep.b),
                max_improvement: rep.improvement,
                grid: *grid,
                cluster_size: size,
                best_responses_a: br_a.ties,
                best_responses_b: br_b.ties,
            }
        })
        .collect()
}

/// Flat indices of the grid points on every `stride`-th theta and phi line,
/// always including the last line of each axis.
fn coarse_lines(grid: &GridSpec, stride: usize) -> Vec<usize> {
    let lines = |steps: usize| {
        let mut v: Vec<usize> = (0..steps).step_by(stride).collect();
        if *v.last().unwrap() != steps - 1 {
            v.push(steps - 1);
        }
        v
    };
    let thetas = lines(grid.theta_steps);
    let phis = lines(grid.phi_steps);
    thetas
        .iter()
        .flat_map(|&t| {
            phis.iter().map(move |&p| {
                grid.index(GridPoint {
                    theta_idx: t,
                    phi_idx: p,
                })
            })
        })
        .collect()
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Groups equilibrium pairs lying within one grid step of each other.
///
/// Symmetric pairs live on the full grid, so their step is one grid line;
/// audited pairs live on the coarse grid, whose step is `stride` lines. Each
/// cluster is represented by its smallest-improvement member (lowest index on
/// ties). Clusters are returned in representative order.
fn cluster(
    grid: &GridSpec,
    stride: usize,
    symmetric: &[Candidate],
    asymmetric: &[Candidate],
) -> Vec<(Candidate, usize)> {
    let all: Vec<Candidate> = symmetric.iter().chain(asymmetric).copied().collect();
    let mut sets = DisjointSet::new(all.len());
    let (ts, ps) = (grid.theta_steps as isize, grid.phi_steps as isize);
    let coords = |i: usize| {
        let pt = grid.point(i);
        (pt.theta_idx as isize, pt.phi_idx as isize)
    };

    let mut sym_at = vec![usize::MAX; grid.len()];
    for (id, c) in symmetric.iter().enumerate() {
        sym_at[c.a] = id;
    }
    let sym_lookup = |t: isize, p: isize| -> Option<usize> {
        if t < 0 || p < 0 || t >= ts || p >= ps {
            return None;
        }
        let id = sym_at[(t * ps + p) as usize];
        (id != usize::MAX).then_some(id)
    };

    for (id, c) in symmetric.iter().enumerate() {
        let (t, p) = coords(c.a);
        for dt in -1..=1 {
            for dp in -1..=1 {
                if let Some(other) = sym_lookup(t + dt, p + dp) {
                    sets.union(id, other);
                }
            }
        }
    }

    if !asymmetric.is_empty() {
        let s = stride as isize;
        // Coarse coordinates: fine index / stride, with the appended last line
        // mapped one past the regular ones.
        let coarse_of = |fine: isize, steps: isize| {
            if fine % s == 0 {
                fine / s
            } else {
                debug_assert_eq!(fine, steps - 1);
                fine / s + 1
            }
        };
        let ct = coarse_of(ts - 1, ts) + 1;
        let cp = coarse_of(ps - 1, ps) + 1;
        let key = |a: (isize, isize), b: (isize, isize)| {
            (((coarse_of(a.0, ts) * cp + coarse_of(a.1, ps)) * ct + coarse_of(b.0, ts)) * cp
                + coarse_of(b.1, ps)) as usize
        };
        let offset = symmetric.len();
        let mut asym_at = vec![usize::MAX; (ct * cp * ct * cp) as usize];
        for (k, c) in asymmetric.iter().enumerate() {
            asym_at[key(coords(c.a), coords(c.b))] = offset + k;
        }

        for (k, c) in asymmetric.iter().enumerate() {
            let id = offset + k;
            let (a, b) = (coords(c.a), coords(c.b));
            let ca = (coarse_of(a.0, ts), coarse_of(a.1, ps));
            let cb = (coarse_of(b.0, ts), coarse_of(b.1, ps));
            for d0 in -1..=1 {
                for d1 in -1..=1 {
                    for d2 in -1..=1 {
                        for d3 in -1..=1 {
                            let n = (ca.0 + d0, ca.1 + d1, cb.0 + d2, cb.1 + d3);
                            if n.0 < 0 || n.1 < 0 || n.2 < 0 || n.3 < 0 {
                                continue;
                            }
                            if n.0 >= ct || n.1 >= cp || n.2 >= ct || n.3 >= cp {
                                continue;
                            }
                            let other =
                                asym_at[(((n.0 * cp + n.1) * ct + n.2) * cp + n.3) as usize];
                            if other != usize::MAX {
                                sets.union(id, other);
                            }
                        }
                    }
                }
            }
            // Symmetric pairs within one coarse step in every coordinate.
            let (t_lo, t_hi) = (a.0.max(b.0) - s, a.0.min(b.0) + s);
            let (p_lo, p_hi) = (a.1.max(b.1) - s, a.1.min(b.1) + s);
            for t in t_lo..=t_hi {
                for p in p_lo..=p_hi {
                    if let Some(other) = sym_lookup(t, p) {
                        sets.union(id, other);
                    }
                }
            }
        }
    }

    let mut best: Vec<Option<(Candidate, usize)>> = vec![None; all.len()];
    for (id, c) in all.iter().enumerate() {
        let root = sets.find(id);
        let entry = &mut best[root];
        match entry {
            None => *entry = Some((*c, 1)),
            Some((rep, size)) => {
                *size += 1;
                let better = c.improvement < rep.improvement
                    || (c.improvement == rep.improvement && (c.a, c.b) < (rep.a, rep.b));
                if better {
                    *rep = *c;
                }
            }
        }
    }
    let mut out: Vec<(Candidate, usize)> = best.into_iter().flatten().collect();
    out.sort_by_key(|(c, _)| (c.a, c.b));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub gamma_ent: f64,
    pub equilibria: Vec<ApproxNE>,
}

/// Runs [`find_quantum_ne`] at each entanglement level; rows come back sorted
/// by `gamma_ent`.
pub fn entanglement_sweep(
    game: &GameMatrix,
    gammas: &[EntanglementParam],
    grid: &GridSpec,
    tol: f64,
) -> Result<Vec<SweepRow>> {
    if gammas.is_empty() {
        return Err(Error::EmptyRange);
    }
    let mut sorted = gammas.to_vec();
    sorted.sort_by(|a, b| a.value().total_cmp(&b.value()));
    Ok(sorted
        .into_iter()
        .map(|g| SweepRow {
            gamma_ent: g.value(),
            equilibria: find_quantum_ne(game, g, grid, tol),
        })
        .collect())
}

/// `count` evenly spaced values from `start` to `end`, both included exactly.
pub fn linspace(start: f64, end: f64, count: usize) -> Result<Vec<f64>> {
    match count {
        0 => Err(Error::EmptyRange),
        1 => Ok(vec![start]),
        _ => Ok((0..count)
            .map(|i| {
                if i + 1 == count {
                    end
                } else {
                    start + (end - start) * (i as f64 / (count - 1) as f64)
                }
            })
            .collect()),
    }
}

/// One line per equilibrium, under [`SWEEP_CSV_HEADER`].
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for row in rows {
        for ne in &row.equilibria {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.gamma_ent,
                ne.strategy_a.theta(),
                ne.strategy_a.phi(),
                ne.strategy_b.theta(),
                ne.strategy_b.phi(),
                ne.payoffs.pi_a,
                ne.payoffs.pi_b,
                ne.max_improvement
            )?;
        }
    }
    Ok(())
}

/// Every profile of the `steps × steps` grid on `[0,1]²` from which no
/// unilateral grid deviation gains more than `tol`.
///
/// This uses nothing but the payoff function and serves as an independent check
/// of the analytic solvers.
pub fn grid_oracle<F>(payoff: F, steps: usize, tol: f64) -> NashReport
where
    F: Fn(MixedProfile) -> PayoffPair + Sync,
{
    let steps = steps.max(2);
    let at = |i: usize| {
        if i + 1 == steps {
            1.0
        } else {
            i as f64 / (steps - 1) as f64
        }
    };
    let solutions: Vec<Solution> = (0..steps * steps)
        .into_par_iter()
        .filter_map(|k| {
            let pr = MixedProfile::new(at(k / steps), at(k % steps)).ok()?;
            (max_deviation_gain(&payoff, pr, steps) <= tol).then_some(Solution::Point(pr))
        })
        .collect();
    NashReport::from_solutions(solutions, Method::GridOracle, payoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_degenerate_counts() {
        assert!(GridSpec::new(1, 5).is_err());
        assert!(GridSpec::new(5, 0).is_err());
        assert!(GridSpec::new(2, 1).is_ok());
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = GridSpec::default();
        assert_eq!(g.theta(0), 0.0);
        assert_eq!(g.theta(100), PI);
        assert_eq!(g.phi(50), FRAC_PI_2);
        let pt = GridPoint {
            theta_idx: 7,
            phi_idx: 3,
        };
        assert_eq!(g.point(g.index(pt)), pt);
    }

    #[test]
    fn refined_grid_contains_old_points() {
        let g = GridSpec::new(11, 6).unwrap();
        let r = g.refined();
        for i in 0..11 {
            assert_eq!(g.theta(i), r.theta(2 * i));
        }
        for j in 0..6 {
            assert_eq!(g.phi(j), r.phi(2 * j));
        }
    }

    #[test]
    fn coarse_lines_include_last() {
        let g = GridSpec::new(6, 1).unwrap();
        let idx: Vec<usize> = coarse_lines(&g, 2);
        assert_eq!(idx, vec![0, 2, 4, 5]);
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(0.0, 1.0, 5).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linspace(0.3, 0.9, 1).unwrap(), vec![0.3]);
        assert_eq!(linspace(0.0, FRAC_PI_2, 7).unwrap()[6], FRAC_PI_2);
        assert!(linspace(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn disjoint_set_merges() {
        let mut d = DisjointSet::new(4);
        d.union(3, 1);
        d.union(1, 2);
        assert_eq!(d.find(2), d.find(3));
        assert_ne!(d.find(0), d.find(3));
    }
}
