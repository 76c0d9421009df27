//! Engine C: at each grid time pick the unit vector closest to the previous
//! state (max |⟨new|old⟩|) among those in the feasible subspace whose class
//! populations equal the schedule.
//!
//! Two exact solvers:
//!
//! * group rescaling, when every class projector M_b maps the feasible space
//!   F into itself. The problem then splits into independent groups
//!   P_F M_b, and each group keeps its old direction, rescaled to √p_b.
//! * stationary point, when it does not (e.g. a symmetric subspace with only
//!   one particle scheduled). With K = B†M_0B = V diag(κ) V† in the
//!   coordinates of F, the maximizer is c_j ∝ õ_j / (s κ_j + (1 − s)(1 − κ_j))
//!   for the unique s that meets the population target while keeping every
//!   denominator positive; s is found by bisection.

use crate::error::{Error, Result};
use crate::linalg::matrix::{norm, ComplexMatrix, C64, ZERO};
use crate::linalg::{eig_hermitian, StateVector, Subspace};

use super::{DiagonalTarget, EngineConfig, Trajectory, NEGLIGIBLE_PROBABILITY};

/// Overlap norms below this count as an empty group.
const GROUP_TOL: f64 = 1e-12;
const COMMUTE_TOL: f64 = 1e-10;
const INITIAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverPath {
    GroupRescaling,
    Stationary,
}

#[derive(Debug, Clone)]
enum Group {
    /// Computational indices (condition (i) off).
    Indices(Vec<usize>),
    Span(Subspace),
}

impl Group {
    fn rank(&self) -> usize {
        match self {
            Group::Indices(ix) => ix.len(),
            Group::Span(s) => s.rank(),
        }
    }

    fn project(&self, v: &[C64]) -> Vec<C64> {
        match self {
            Group::Indices(ix) => {
                let mut out = vec![ZERO; v.len()];
                for &i in ix {
                    out[i] = v[i];
                }
                out
            }
            Group::Span(s) => s.project(v),
        }
    }

    fn only_vector(&self, n: usize) -> Vec<C64> {
        match self {
            Group::Indices(ix) => {
                let mut out = vec![ZERO; n];
                out[ix[0]] = C64::new(1.0, 0.0);
                out
            }
            Group::Span(s) => {
                let mut v = s.basis()[0].clone();
                crate::linalg::state::fix_phase(&mut v);
                v
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Stationary {
    feasible: Subspace,
    kappa: Vec<f64>,
    vectors: ComplexMatrix,
}

#[derive(Debug, Clone)]
enum Solver {
    Groups(Vec<Group>),
    Stationary(Stationary),
}

fn class_mask(target: &DiagonalTarget, class: usize, v: &[C64]) -> Vec<C64> {
    v.iter()
        .zip(target.classes())
        .map(|(&a, &c)| if c == class { a } else { ZERO })
        .collect()
}

impl Solver {
    fn new(target: &DiagonalTarget, feasible: Option<&Subspace>) -> Result<Self> {
        let n = target.dim();
        let Some(f) = feasible else {
            let groups = (0..target.n_classes())
                .map(|b| {
                    Group::Indices(
                        (0..n).filter(|&i| target.classes()[i] == b).collect(),
                    )
                })
                .collect();
            return Ok(Solver::Groups(groups));
        };

        let mut images: Vec<Vec<Vec<C64>>> = vec![Vec::new(); target.n_classes()];
        let mut commutes = true;
        for basis_vec in f.basis() {
            for (b, img) in images.iter_mut().enumerate() {
                let m = class_mask(target, b, basis_vec);
                let back = f.project(&m);
                let leak: f64 = m
                    .iter()
                    .zip(&back)
                    .map(|(x, y)| (x - y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                commutes &= leak <= COMMUTE_TOL;
                img.push(m);
            }
        }
        if commutes {
            let groups = images
                .iter()
                .map(|vs| Subspace::span(n, vs).map(Group::Span))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Solver::Groups(groups));
        }

        if target.n_classes() != 2 {
            return Err(Error::InvalidArgument(
                "feasible space mixes classes and more than two classes are scheduled".into(),
            ));
        }
        let k = f.rank();
        let masked: Vec<Vec<C64>> = f.basis().iter().map(|v| class_mask(target, 0, v)).collect();
        let mut kmat = ComplexMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                kmat[(i, j)] = crate::linalg::inner(&f.basis()[i], &masked[j]);
            }
        }
        let eig = eig_hermitian(&kmat)?;
        Ok(Solver::Stationary(Stationary {
            feasible: f.clone(),
            kappa: eig.values.iter().map(|x| x.clamp(0.0, 1.0)).collect(),
            vectors: eig.vectors,
        }))
    }

    fn path(&self) -> SolverPath {
        match self {
            Solver::Groups(_) => SolverPath::GroupRescaling,
            Solver::Stationary(_) => SolverPath::Stationary,
        }
    }

    fn step(&self, old: &[C64], targets: &[f64], step: usize) -> Result<Vec<C64>> {
        match self {
            Solver::Groups(groups) => group_step(groups, old, targets, step),
            Solver::Stationary(s) => s.step(old, targets, step),
        }
    }
}

fn group_step(groups: &[Group], old: &[C64], targets: &[f64], step: usize) -> Result<Vec<C64>> {
    let n = old.len();
    let mut out = vec![ZERO; n];
    for (b, (group, &p)) in groups.iter().zip(targets).enumerate() {
        if p <= NEGLIGIBLE_PROBABILITY {
            continue;
        }
        let g = group.project(old);
        let w = norm(&g);
        let piece: Vec<C64> = if w > GROUP_TOL {
            g.iter().map(|x| x * (p.sqrt() / w)).collect()
        } else {
            match group.rank() {
                0 => {
                    return Err(Error::Infeasible {
                        step,
                        detail: format!("class {b} has target {p:.3e} but no feasible state"),
                    })
                }
                1 => group.only_vector(n).iter().map(|x| x * p.sqrt()).collect(),
                r => {
                    return Err(Error::DegenerateOptimum {
                        step,
                        detail: format!(
                            "class {b} must receive weight {p:.3e} but the previous state has none \
                             there; {r} orthogonal completions are equally close"
                        ),
                    })
                }
            }
        };
        for (o, x) in out.iter_mut().zip(piece) {
            *o += x;
        }
    }
    Ok(out)
}

impl Stationary {
    fn step(&self, old: &[C64], targets: &[f64], step: usize) -> Result<Vec<C64>> {
        let (p0, p1) = (targets[0], targets[1]);
        let o = self.feasible.coordinates(old);
        let ot: Vec<C64> = self.vectors.dagger().apply(&o);
        let w: Vec<f64> = ot.iter().map(|x| x.norm_sqr()).collect();
        let kappa = &self.kappa;
        let degenerate = |detail: &str| Error::DegenerateOptimum {
            step,
            detail: detail.to_string(),
        };

        let coeffs: Vec<C64> = if p1 <= NEGLIGIBLE_PROBABILITY || p0 <= NEGLIGIBLE_PROBABILITY {
            // Only the κ = 1 (or κ = 0) eigenspace is allowed.
            let edge = if p1 <= NEGLIGIBLE_PROBABILITY { 1.0 } else { 0.0 };
            let c: Vec<C64> = ot
                .iter()
                .zip(kappa)
                .map(|(&x, &kj)| if (kj - edge).abs() <= 1e-9 { x } else { ZERO })
                .collect();
            if norm(&c) <= GROUP_TOL {
                return Err(degenerate("target lies in an eigenspace orthogonal to the previous state"));
            }
            c
        } else {
            // Admissible s keeps every denominator s κ + (1 − s)(1 − κ) positive.
            let mut lo = -1e8_f64;
            let mut hi = 1e8_f64;
            for &kj in kappa {
                let slope = 2.0 * kj - 1.0;
                if slope > 0.0 {
                    lo = lo.max(-(1.0 - kj) / slope);
                } else if slope < 0.0 {
                    hi = hi.min((1.0 - kj) / -slope);
                }
            }
            let g = |s: f64| -> f64 {
                w.iter()
                    .zip(kappa)
                    .map(|(&wj, &kj)| {
                        let den = s * kj + (1.0 - s) * (1.0 - kj);
                        wj * (kj * p1 - (1.0 - kj) * p0) / (den * den)
                    })
                    .sum()
            };
            let span = hi - lo;
            let (mut a, mut b) = (lo + 1e-14 * span, hi - 1e-14 * span);
            if !(g(a) > 0.0 && g(b) < 0.0) {
                return Err(degenerate(
                    "population target is not reachable without weight on directions \
                     orthogonal to the previous state",
                ));
            }
            for _ in 0..300 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if g(m) > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            let s = 0.5 * (a + b);
            ot.iter()
                .zip(kappa)
                .map(|(&x, &kj)| x / (s * kj + (1.0 - s) * (1.0 - kj)))
                .collect()
        };

        let scale = norm(&coeffs);
        let coords: Vec<C64> = self.vectors.apply(&coeffs).iter().map(|x| x / scale).collect();
        Ok(self.feasible.embed(&coords))
    }
}

/// Which solver engine C uses for this target and feasible space.
pub fn solver_path(target: &DiagonalTarget, proj: &Subspace, enforce_subspace: bool) -> Result<SolverPath> {
    Ok(Solver::new(target, enforce_subspace.then_some(proj))?.path())
}

pub fn evolve_variational(
    state0: &StateVector,
    target: &DiagonalTarget,
    proj: &Subspace,
    cfg: &EngineConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    let n = state0.dim();
    if target.dim() != n || proj.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "state dim {n}, target dim {}, projector dim {}",
            target.dim(),
            proj.ambient_dim()
        )));
    }
    if cfg.enforce_subspace && !proj.contains(state0.amplitudes(), INITIAL_TOL) {
        return Err(Error::InvalidArgument(
            "initial state is outside the constraint subspace".into(),
        ));
    }
    let have = target.populations(state0.amplitudes());
    let want = target.class_targets(0.0);
    let miss = have
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if miss > INITIAL_TOL {
        return Err(Error::InvalidArgument(format!(
            "initial populations {have:?} differ from the schedule {want:?}"
        )));
    }

    let solver = Solver::new(target, cfg.enforce_subspace.then_some(proj))?;
    let labels = state0.labels().to_vec();
    let times = cfg.times();
    let mut states = Vec::with_capacity(times.len());
    states.push(state0.clone());
    let mut psi = state0.amplitudes().to_vec();
    for (step, &t) in times.iter().enumerate().skip(1) {
        let next = solver.step(&psi, &target.class_targets(t), step)?;
        let s = StateVector::new(next, labels.clone())?;
        psi = s.amplitudes().to_vec();
        states.push(s);
    }
    Ok(Trajectory {
        survival: vec![1.0; times.len()],
        times,
        states,
        observables: Vec::new(),
    })
}
