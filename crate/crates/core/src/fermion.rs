//! Four-mode fermionic Fock space (spin χ ∈ {0,1} × site λ ∈ {r,s}).
//!
//! Modes are ordered (0r, 1r, 0s, 1s). A Fock basis index stores the
//! occupation of mode m in bit 3−m, so `|1001⟩` reads n₀ᵣ n₁ᵣ n₀ₛ n₁ₛ left to
//! right. Creation operators carry the Jordan–Wigner sign (−1)^(number of
//! occupied modes preceding the target mode).

use crate::dynamics::{evolve_variational, DiagonalTarget, EngineConfig, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::linalg::{eig_hermitian, Hamiltonian, StateVector, Subspace};
use crate::network::{embed_drive, ConstraintElement, ConstraintNetwork};
use crate::statistics::TwoParticleSpace;

pub const N_MODES: usize = 4;
pub const FOCK_DIM: usize = 1 << N_MODES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Site {
    R,
    S,
}

impl Site {
    fn label(self) -> char {
        match self {
            Site::R => 'r',
            Site::S => 's',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub spin: u8,
    pub site: Site,
}

impl Mode {
    pub const fn new(spin: u8, site: Site) -> Self {
        Self { spin, site }
    }

    /// Position in the canonical order (0r, 1r, 0s, 1s).
    pub fn index(self) -> usize {
        let site = match self.site {
            Site::R => 0,
            Site::S => 1,
        };
        2 * site + (self.spin as usize & 1)
    }

    pub fn label(self) -> String {
        format!("{}{}", self.spin, self.site.label())
    }

    fn bit(self) -> usize {
        1 << (N_MODES - 1 - self.index())
    }
}

pub const MODES: [Mode; 4] = [
    Mode::new(0, Site::R),
    Mode::new(1, Site::R),
    Mode::new(0, Site::S),
    Mode::new(1, Site::S),
];

pub fn occupied(index: usize, mode: Mode) -> bool {
    index & mode.bit() != 0
}

/// a†_mode as a 16×16 matrix on the occupation basis.
pub fn creation(mode: Mode) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(FOCK_DIM, FOCK_DIM);
    for n in 0..FOCK_DIM {
        if occupied(n, mode) {
            continue;
        }
        let preceding = MODES[..mode.index()]
            .iter()
            .filter(|&&p| occupied(n, p))
            .count();
        let sign = if preceding % 2 == 0 { 1.0 } else { -1.0 };
        m[(n | mode.bit(), n)] = C64::new(sign, 0.0);
    }
    m
}

pub fn annihilation(mode: Mode) -> ComplexMatrix {
    creation(mode).dagger()
}

pub fn number_operator() -> ComplexMatrix {
    let diag: Vec<f64> = (0..FOCK_DIM).map(|n| n.count_ones() as f64).collect();
    ComplexMatrix::from_real_diagonal(&diag)
}

pub fn vacuum() -> Vec<C64> {
    let mut v = vec![ZERO; FOCK_DIM];
    v[0] = ONE;
    v
}

pub fn fock_labels() -> Vec<String> {
    (0..FOCK_DIM).map(|n| format!("|{n:04b}⟩")).collect()
}

/// Fock indices with exactly `n` particles, ascending.
pub fn sector(n: u32) -> Vec<usize> {
    (0..FOCK_DIM).filter(|i| i.count_ones() == n).collect()
}

/// a†_first a†_second |0⟩ as a raw amplitude vector (sign included).
pub fn pair_state(first: Mode, second: Mode) -> Vec<C64> {
    let v = creation(second).apply(&vacuum());
    creation(first).apply(&v)
}

fn combine(x: &[C64], y: &[C64], sign: f64) -> Vec<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    x.iter().zip(y).map(|(a, b)| (a + b * sign) * h).collect()
}

/// The six antisymmetric two-particle states |a⟩ … |f⟩.
#[derive(Debug, Clone)]
pub struct NamedBasis {
    pub a: StateVector,
    pub b: StateVector,
    pub c: StateVector,
    pub d: StateVector,
    pub e: StateVector,
    pub f: StateVector,
}

impl NamedBasis {
    pub fn get(&self, name: char) -> Option<&StateVector> {
        match name {
            'a' => Some(&self.a),
            'b' => Some(&self.b),
            'c' => Some(&self.c),
            'd' => Some(&self.d),
            'e' => Some(&self.e),
            'f' => Some(&self.f),
            _ => None,
        }
    }

    pub fn all(&self) -> [(char, &StateVector); 6] {
        [
            ('a', &self.a),
            ('b', &self.b),
            ('c', &self.c),
            ('d', &self.d),
            ('e', &self.e),
            ('f', &self.f),
        ]
    }
}

/// Builds |a⟩ … |f⟩ by applying creation operators to the vacuum.
///
/// |f⟩ carries a global sign relative to its operator expression once the
/// state-vector phase convention is applied.
pub fn named_basis() -> NamedBasis {
    let [m0r, m1r, m0s, m1s] = MODES;
    let labels = fock_labels();
    let st = |v: Vec<C64>| StateVector::new(v, labels.clone()).expect("non-zero Fock state");
    let x = pair_state(m0r, m1s);
    let y = pair_state(m1r, m0s);
    NamedBasis {
        a: st(pair_state(m0r, m1r)),
        b: st(pair_state(m0s, m1s)),
        c: st(pair_state(m0r, m0s)),
        d: st(pair_state(m1r, m1s)),
        e: st(combine(&x, &y, 1.0)),
        f: st(combine(&x, &y, -1.0)),
    }
}

/// Penalty energies; valid sets satisfy E_a, E_b, E_c, E_d ≥ floor > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyEnergies {
    pub e_a: f64,
    pub e_b: f64,
    pub e_c: f64,
    pub e_d: f64,
    pub floor: f64,
}

impl PenaltyEnergies {
    pub fn new(e_a: f64, e_b: f64, e_c: f64, e_d: f64, floor: f64) -> Result<Self> {
        let e = Self { e_a, e_b, e_c, e_d, floor };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.floor > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "energy floor {} must be positive",
                self.floor
            )));
        }
        for (name, v) in [("E_a", self.e_a), ("E_b", self.e_b), ("E_c", self.e_c), ("E_d", self.e_d)] {
            if !(v >= self.floor) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {v} is below the floor {}",
                    self.floor
                )));
            }
        }
        Ok(())
    }

    pub fn values(&self) -> [f64; 4] {
        [self.e_a, self.e_b, self.e_c, self.e_d]
    }
}

impl Default for PenaltyEnergies {
    fn default() -> Self {
        Self { e_a: 1.0, e_b: 1.0, e_c: 1.0, e_d: 1.0, floor: 1.0 }
    }
}

/// H_rs = −(E_a a†₀ᵣa†₁ᵣa₀ᵣa₁ᵣ + E_b a†₀ₛa†₁ₛa₀ₛa₁ₛ + E_c a†₀ᵣa†₀ₛa₀ᵣa₀ₛ + E_d a†₁ᵣa†₁ₛa₁ᵣa₁ₛ),
/// multiplied out from the operator matrices as written.
pub fn penalty_hamiltonian(e: &PenaltyEnergies) -> Hamiltonian {
    let [m0r, m1r, m0s, m1s] = MODES;
    let quartic = |i: Mode, j: Mode| {
        kron_chain(&[creation(i), creation(j), annihilation(i), annihilation(j)])
    };
    let terms = [
        (e.e_a, quartic(m0r, m1r)),
        (e.e_b, quartic(m0s, m1s)),
        (e.e_c, quartic(m0r, m0s)),
        (e.e_d, quartic(m1r, m1s)),
    ];
    let mut sum = ComplexMatrix::zeros(FOCK_DIM, FOCK_DIM);
    for (energy, op) in &terms {
        sum = &sum + &op.scale_real(*energy);
    }
    Hamiltonian::new(sum.scale_real(-1.0)).expect("number-conserving quartic terms are Hermitian")
}

fn kron_chain(ops: &[ComplexMatrix]) -> ComplexMatrix {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, op| acc.matmul(op))
}

/// Bijection between the two-qubit space |χ_r⟩|χ_s⟩ and the
/// one-particle-per-site Fock states a†_{χ_r r} a†_{χ_s s}|0⟩.
#[derive(Debug, Clone)]
pub struct QubitEmbedding {
    /// 16×4 isometry; column q = 2χ_r + χ_s.
    isometry: ComplexMatrix,
}

pub const LEAK_TOL: f64 = 1e-10;

impl QubitEmbedding {
    pub fn new() -> Self {
        let mut isometry = ComplexMatrix::zeros(FOCK_DIM, 4);
        for chi_r in 0..2u8 {
            for chi_s in 0..2u8 {
                let v = pair_state(Mode::new(chi_r, Site::R), Mode::new(chi_s, Site::S));
                let q = 2 * chi_r as usize + chi_s as usize;
                for (i, x) in v.into_iter().enumerate() {
                    isometry[(i, q)] = x;
                }
            }
        }
        Self { isometry }
    }

    pub fn isometry(&self) -> &ComplexMatrix {
        &self.isometry
    }

    pub fn qubit_labels() -> Vec<String> {
        qubit_pair_labels("r", "s")
    }

    pub fn lift_amplitudes(&self, q: &[C64]) -> Result<Vec<C64>> {
        if q.len() != 4 {
            return Err(Error::DimensionMismatch(format!("qubit state of dim {}", q.len())));
        }
        Ok(self.isometry.apply(q))
    }

    pub fn lift_state(&self, s: &StateVector) -> Result<StateVector> {
        StateVector::new(self.lift_amplitudes(s.amplitudes())?, fock_labels())
    }

    pub fn lower_amplitudes(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != FOCK_DIM {
            return Err(Error::DimensionMismatch(format!("Fock state of dim {}", v.len())));
        }
        let q = self.isometry.dagger().apply(v);
        let inside: f64 = q.iter().map(|x| x.norm_sqr()).sum();
        let total: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if total - inside > LEAK_TOL * total.max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "state has weight {:.3e} outside the one-particle-per-site sector",
                total - inside
            )));
        }
        Ok(q)
    }

    pub fn lower_state(&self, s: &StateVector) -> Result<StateVector> {
        StateVector::new(self.lower_amplitudes(s.amplitudes())?, Self::qubit_labels())
    }

    /// V O V†
    pub fn lift_operator(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        if op.rows() != 4 || op.cols() != 4 {
            return Err(Error::DimensionMismatch("qubit operator must be 4x4".into()));
        }
        Ok(self.isometry.matmul(op).matmul(&self.isometry.dagger()))
    }

    /// V† O V, rejecting operators that move the sector elsewhere.
    pub fn lower_operator(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        if op.rows() != FOCK_DIM || op.cols() != FOCK_DIM {
            return Err(Error::DimensionMismatch("Fock operator must be 16x16".into()));
        }
        let ov = op.matmul(&self.isometry);
        let lowered = self.isometry.dagger().matmul(&ov);
        let leak = &ov - &self.isometry.matmul(&lowered);
        if leak.max_abs() > LEAK_TOL * op.max_abs().max(1.0) {
            return Err(Error::InvalidArgument(
                "operator does not preserve the one-particle-per-site sector".into(),
            ));
        }
        Ok(lowered)
    }
}

impl Default for QubitEmbedding {
    fn default() -> Self {
        Self::new()
    }
}

pub fn qubit_pair_labels(first: &str, second: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(4);
    for a in 0..2 {
        for b in 0..2 {
            out.push(format!("|{a}⟩_{first}|{b}⟩_{second}"));
        }
    }
    out
}

/// The antisymmetric subspace of two spin × site particles in first
/// quantization, with its identification to the two-particle Fock sector.
#[derive(Debug, Clone)]
pub struct FirstQuantized {
    /// Range of A₁₂ = (1 − P₁₂)/2 on C⁴ ⊗ C⁴.
    pub subspace: Subspace,
    /// 16×6 isometry; column k is the image of the k-th Fock index of
    /// [`sector`]\(2): a†_i a†_j|0⟩ (i < j) ↦ (|i⟩|j⟩ − |j⟩|i⟩)/√2.
    pub identification: ComplexMatrix,
    pub sector: Vec<usize>,
}

pub fn first_quantized_antisymmetrizer() -> FirstQuantized {
    let space = TwoParticleSpace::spin_site();
    let a12 = space.antisymmetrizer();
    let eig = eig_hermitian(&a12).expect("A12 is Hermitian");
    let range: Vec<Vec<C64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(k, _)| eig.vector(k))
        .collect();
    let subspace = Subspace::from_vectors(16, &range).expect("eigenvectors are independent");

    let sector = sector(2);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut identification = ComplexMatrix::zeros(16, sector.len());
    for (col, &n) in sector.iter().enumerate() {
        let occ: Vec<usize> = MODES
            .iter()
            .filter(|&&m| occupied(n, m))
            .map(|m| m.index())
            .collect();
        let (i, j) = (occ[0], occ[1]);
        identification[(i * 4 + j, col)] = C64::new(h, 0.0);
        identification[(j * 4 + i, col)] = C64::new(-h, 0.0);
    }
    FirstQuantized { subspace, identification, sector }
}

impl FirstQuantized {
    /// First-quantized image of a Fock vector supported on the two-particle sector.
    pub fn from_fock(&self, fock: &[C64]) -> Result<Vec<C64>> {
        if fock.len() != FOCK_DIM {
            return Err(Error::DimensionMismatch(format!("Fock state of dim {}", fock.len())));
        }
        let coords: Vec<C64> = self.sector.iter().map(|&n| fock[n]).collect();
        Ok(self.identification.apply(&coords))
    }

    pub fn to_fock(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != 16 {
            return Err(Error::DimensionMismatch(format!("first-quantized state of dim {}", v.len())));
        }
        let coords = self.identification.dagger().apply(v);
        let mut out = vec![ZERO; FOCK_DIM];
        for (&n, c) in self.sector.iter().zip(coords) {
            out[n] = c;
        }
        Ok(out)
    }

    /// W O_sector W† for an operator on the Fock space that conserves particle number.
    pub fn operator_from_fock(&self, op: &ComplexMatrix) -> ComplexMatrix {
        let k = self.sector.len();
        let mut block = ComplexMatrix::zeros(k, k);
        for (a, &i) in self.sector.iter().enumerate() {
            for (b, &j) in self.sector.iter().enumerate() {
                block[(a, b)] = op[(i, j)];
            }
        }
        self.identification
            .matmul(&block)
            .matmul(&self.identification.dagger())
    }

    pub fn labels() -> Vec<String> {
        TwoParticleSpace::spin_site().labels()
    }
}

/// G_rs for a single NOT gate on (r, s), taken from the constraint-network
/// drive embedding.
pub fn not_gate_generator(omega: f64) -> Result<ComplexMatrix> {
    let net = ConstraintNetwork::new(2, vec![ConstraintElement::not(0, 1)], 1.0)?;
    embed_drive(&net, 0, omega)?.full_generator()
}

/// ‖[G, H_rs]‖_F on the qubit sector, with H_rs lowered through the embedding.
pub fn commutator_residual(g: &ComplexMatrix, energies: &PenaltyEnergies) -> Result<f64> {
    let h = QubitEmbedding::new().lower_operator(penalty_hamiltonian(energies).matrix())?;
    Ok(g.commutator(&h).frobenius_norm())
}

/// ‖[G_rs, H_rs]‖_F with G_rs from the network embedding.
pub fn commutator_check(energies: &PenaltyEnergies, omega: f64) -> Result<f64> {
    commutator_residual(&not_gate_generator(omega)?, energies)
}

/// Scheduling class of each first-quantized basis state |i⟩|j⟩: the spin of
/// the one particle sitting on r, or 2 when r holds none or both.
pub fn site_r_spin_classes() -> Vec<usize> {
    (0..16)
        .map(|k| {
            let (i, j) = (k / 4, k % 4);
            match (i / 2 == 0, j / 2 == 0) {
                (true, false) => i % 2,
                (false, true) => j % 2,
                _ => 2,
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct FermionVariationalRun {
    pub trajectory: Trajectory,
    /// max_t |⟨Ψ(t)|H_rs|Ψ(t)⟩|
    pub max_energy: f64,
}

/// Engine C on two fermions in first quantization: feasible space = range
/// of A₁₂, schedule on the spin at site r, start = the lifted
/// cos ϑ|0⟩_r|1⟩_s + sin ϑ|1⟩_r|0⟩_s. The penalty H_rs enters only through
/// the recorded energy.
pub fn fermion_variational_run(
    theta0: f64,
    energies: &PenaltyEnergies,
    cfg: &EngineConfig,
) -> Result<FermionVariationalRun> {
    energies.validate()?;
    let fq = first_quantized_antisymmetrizer();
    let (s, c) = theta0.sin_cos();
    let qubit = [ZERO, C64::new(c, 0.0), C64::new(s, 0.0), ZERO];
    let fock = QubitEmbedding::new().lift_amplitudes(&qubit)?;
    let state0 = StateVector::new(fq.from_fock(&fock)?, FirstQuantized::labels())?;
    let target = DiagonalTarget::new("r", site_r_spin_classes(), theta0, cfg.omega)?;
    let trajectory = evolve_variational(&state0, &target, &fq.subspace, cfg)?;
    let h = fq.operator_from_fock(penalty_hamiltonian(energies).matrix());
    let max_energy = trajectory
        .states
        .iter()
        .map(|s| s.expectation(&h).re.abs())
        .fold(0.0, f64::max);
    Ok(FermionVariationalRun { trajectory, max_energy })
}

/// The NOT-gate scenario carried into first quantization (16-dim product
/// space, antisymmetric sector).
#[derive(Debug, Clone)]
pub struct FermionScenario {
    pub fq: FirstQuantized,
    pub penalty: Hamiltonian,
    /// G_rs lifted through the Fock space.
    pub generator: Hamiltonian,
    /// ω σ_y on the spin of whichever particle sits on r.
    pub site_drive: Hamiltonian,
    /// Images of |0⟩_r|1⟩_s and |1⟩_r|0⟩_s.
    pub constraint: Subspace,
}

impl FermionScenario {
    pub fn new(energies: &PenaltyEnergies, omega: f64) -> Result<Self> {
        energies.validate()?;
        let fq = first_quantized_antisymmetrizer();
        let emb = QubitEmbedding::new();
        let penalty = Hamiltonian::new(fq.operator_from_fock(penalty_hamiltonian(energies).matrix()))?;
        let lifted = emb.lift_operator(&not_gate_generator(omega)?)?;
        let generator = Hamiltonian::new(fq.operator_from_fock(&lifted))?;
        let mut on_r = ComplexMatrix::zeros(2, 2);
        on_r[(0, 0)] = ONE;
        let g = on_r.kron(&crate::statistics::sigma_y()).scale_real(omega);
        let id = ComplexMatrix::identity(4);
        let site_drive = Hamiltonian::new(&g.kron(&id) + &id.kron(&g))?;
        let basis = [1usize, 2]
            .iter()
            .map(|&k| {
                let mut q = vec![ZERO; 4];
                q[k] = ONE;
                fq.from_fock(&emb.lift_amplitudes(&q)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let constraint = Subspace::from_vectors(16, &basis)?;
        Ok(Self { fq, penalty, generator, site_drive, constraint })
    }

    /// Image of cos φ|0⟩_r|1⟩_s + sin φ|1⟩_r|0⟩_s, φ = ϑ + ωt.
    pub fn closed_form(&self, theta0: f64, omega: f64, t: f64) -> StateVector {
        let q = crate::dynamics::not_gate_closed_form(theta0, omega, t);
        let fock = QubitEmbedding::new()
            .lift_amplitudes(q.amplitudes())
            .expect("4-dim qubit state");
        StateVector::new(self.fq.from_fock(&fock).expect("16-dim Fock state"), FirstQuantized::labels())
            .expect("unit vector")
    }
}
