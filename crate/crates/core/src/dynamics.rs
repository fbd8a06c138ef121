//! Qubit–cavity dynamics in a truncated Fock basis.
//!
//! All matrices are `H/ħ`, so entries and eigenvalues are angular
//! frequencies in rad/s. The basis is `|s, n⟩` with `s ∈ {g, e}` and
//! `n ∈ 0..=n_cut`, stored at index `2n + [s = e]`.
//!
//! ```text
//! H/ħ = ω(a†a + 1/2) + ω_q|e⟩⟨e| + g(σ₊ + σ₋)(a e^{iθ} + a† e^{−iθ})
//! ```
//!
//! With `rwa` set the counter-rotating terms `σ₋a` and `σ₊a†` are dropped
//! and the excitation number `a†a + |e⟩⟨e|` is conserved.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum population tolerated in the top Fock level before the
/// truncation is declared too small.
pub const LEAK_TOLERANCE: f64 = 1e-8;
/// Allowed deviation of the initial state norm from one.
pub const NORM_TOLERANCE: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;
/// Rotations with a smaller tangent are dropped.
const JACOBI_NEGLIGIBLE: f64 = 1e-20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitLevel {
    Ground,
    Excited,
}

/// Product state `|s, n⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub qubit: QubitLevel,
    pub photons: usize,
}

impl BasisState {
    pub fn excited(photons: usize) -> Self {
        Self { qubit: QubitLevel::Excited, photons }
    }

    pub fn ground(photons: usize) -> Self {
        Self { qubit: QubitLevel::Ground, photons }
    }

    pub fn index(&self) -> usize {
        2 * self.photons + usize::from(self.qubit == QubitLevel::Excited)
    }

    pub fn from_index(i: usize) -> Self {
        let qubit = if i % 2 == 1 { QubitLevel::Excited } else { QubitLevel::Ground };
        Self { qubit, photons: i / 2 }
    }

    /// Excitation number `n + [s = e]`.
    pub fn excitations(&self) -> usize {
        self.photons + usize::from(self.qubit == QubitLevel::Excited)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Basis(BasisState),
    Amplitudes(DVector<Complex64>),
}

impl From<BasisState> for InitialState {
    fn from(s: BasisState) -> Self {
        Self::Basis(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCSystem {
    /// Cavity angular frequency ω, rad/s.
    pub omega: f64,
    /// Qubit angular frequency ω_q, rad/s.
    pub omega_q: f64,
    /// Coupling g, rad/s.
    pub g: f64,
    /// Interaction phase θ, rad.
    pub theta: f64,
    /// Highest photon number kept.
    pub n_cut: usize,
    /// Drop the counter-rotating terms.
    pub rwa: bool,
}

impl JCSystem {
    /// Resonance-agnostic constructor with θ = 0, RWA on and `n_cut = 10`.
    pub fn new(omega: f64, omega_q: f64, g: f64) -> Self {
        Self {
            omega,
            omega_q,
            g,
            theta: 0.0,
            n_cut: 10,
            rwa: true,
        }
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn with_n_cut(mut self, n_cut: usize) -> Self {
        self.n_cut = n_cut;
        self
    }

    pub fn with_rwa(mut self, rwa: bool) -> Self {
        self.rwa = rwa;
        self
    }

    /// Δ = ω_q − ω.
    pub fn detuning(&self) -> f64 {
        self.omega_q - self.omega
    }

    pub fn dimension(&self) -> usize {
        2 * (self.n_cut + 1)
    }

    /// Truncation that keeps dynamics from `initial_photons` well inside the
    /// basis: ten levels of headroom with RWA, twenty without.
    pub fn default_n_cut(initial_photons: usize, rwa: bool) -> usize {
        initial_photons + if rwa { 10 } else { 20 }
    }

    fn validate(&self) -> Result<()> {
        if self.n_cut < 1 {
            return Err(Error::InvalidSystem("n_cut must be >= 1".into()));
        }
        let finite = [self.omega, self.omega_q, self.g, self.theta]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidSystem("frequencies and phase must be finite".into()));
        }
        Ok(())
    }
}

/// Dressed doublet of one excitation manifold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedPair {
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Ω_R = √(4g²m + Δ²).
    pub rabi: f64,
    pub manifold: usize,
}

/// RWA dressed frequencies `ω± = ω + Δ/2 ± Ω_R/2` of the doublet
/// `{|e, m−1⟩, |g, m⟩}`, measured from the level one excitation below.
pub fn dressed_frequencies(system: &JCSystem, manifold: usize) -> Result<DressedPair> {
    if manifold < 1 {
        return Err(Error::InvalidSystem("excitation manifold must be >= 1".into()));
    }
    let delta = system.detuning();
    let g = system.g;
    let rabi = (4.0 * g * g * manifold as f64 + delta * delta).sqrt();
    let center = system.omega + 0.5 * delta;
    Ok(DressedPair {
        omega_plus: center + 0.5 * rabi,
        omega_minus: center - 0.5 * rabi,
        rabi,
        manifold,
    })
}

/// Shift of the dressed branch nearest the bare qubit line, `(Ω_R − |Δ|)/2`.
/// Tends to `g²/|Δ|` in the dispersive limit.
pub fn lamb_shift(system: &JCSystem) -> Result<f64> {
    let delta = system.detuning();
    if delta == 0.0 {
        return Err(Error::InvalidSystem("Lamb shift needs nonzero detuning".into()));
    }
    let rabi = dressed_frequencies(system, 1)?.rabi;
    Ok(0.5 * (rabi - delta.abs()))
}

/// Time series of qubit and cavity observables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvolutionResult {
    /// Sample times, s.
    pub times: Vec<f64>,
    /// P_e(t).
    pub p_excited: Vec<f64>,
    /// ⟨a†a⟩(t).
    pub n_photon: Vec<f64>,
    /// ‖ψ(t)‖.
    pub norm: Vec<f64>,
}

impl EvolutionResult {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Closed-form RWA populations starting from `|e, 0⟩`:
/// `P_e = 1 − (4g²/Ω_R²)·sin²(Ω_R t/2)`, `n_ph = 1 − P_e`.
/// At resonance this is `P_e = cos²(Ω_R t/2)`.
pub fn rabi_populations_analytic(system: &JCSystem, times: &[f64]) -> EvolutionResult {
    let delta = system.detuning();
    let g = system.g;
    let rabi = (4.0 * g * g + delta * delta).sqrt();
    let contrast = if rabi > 0.0 { 4.0 * g * g / (rabi * rabi) } else { 0.0 };
    let mut out = EvolutionResult {
        times: times.to_vec(),
        ..Default::default()
    };
    for &t in times {
        let s = (0.5 * rabi * t).sin();
        let p_e = 1.0 - contrast * s * s;
        out.p_excited.push(p_e);
        out.n_photon.push(1.0 - p_e);
        out.norm.push(1.0);
    }
    out
}

/// `H/ħ` in the `|s, n⟩` basis, rad/s. Each coupling entry is written once
/// and mirrored as its conjugate, so the result is exactly Hermitian.
pub fn build_hamiltonian(system: &JCSystem) -> Result<DMatrix<Complex64>> {
    system.validate()?;
    let dim = system.dimension();
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..=system.n_cut {
        let cavity = system.omega * (n as f64 + 0.5);
        h[(2 * n, 2 * n)] = Complex64::new(cavity, 0.0);
        h[(2 * n + 1, 2 * n + 1)] = Complex64::new(cavity + system.omega_q, 0.0);
    }
    let phase = Complex64::from_polar(1.0, system.theta);
    let mut set = |row: usize, col: usize, v: Complex64| {
        h[(row, col)] = v;
        h[(col, row)] = v.conj();
    };
    for n in 0..system.n_cut {
        let amp = system.g * ((n + 1) as f64).sqrt();
        // σ₊a e^{iθ}: |g, n+1⟩ → |e, n⟩
        set(
            BasisState::excited(n).index(),
            BasisState::ground(n + 1).index(),
            amp * phase,
        );
        if !system.rwa {
            // σ₊a† e^{−iθ}: |g, n⟩ → |e, n+1⟩ (σ₋a is its conjugate)
            set(
                BasisState::excited(n + 1).index(),
                BasisState::ground(n).index(),
                amp * phase.conj(),
            );
        }
    }
    Ok(h)
}

/// Eigendecomposition of one decoupled block of the Hamiltonian.
#[derive(Debug, Clone)]
struct Block {
    indices: Vec<usize>,
    /// Constant removed from the diagonal before diagonalizing (the
    /// smallest diagonal entry of the block).
    shift: f64,
    /// Eigenvalues relative to `shift`, split as `anchor + offset`: the
    /// anchor is the diagonal entry of the eigenvector's largest component
    /// and the offset its Rayleigh quotient against `H − anchor`.
    anchors: Vec<f64>,
    offsets: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl Block {
    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.anchors
            .iter()
            .zip(&self.offsets)
            .map(move |(a, o)| a + o + self.shift)
    }
}

/// Exact propagator `exp(−iHt/ħ)` from the eigendecomposition of the
/// truncated Hamiltonian.
///
/// The matrix is split into its decoupled blocks (excitation manifolds
/// under RWA, parity sectors otherwise) and each block is diagonalized on
/// its own. Blocks are ordered by decreasing diagonal and shifted so the
/// lowest diagonal entry is zero, and eigenvectors come from Jacobi
/// rotations, so populated states are resolved to an accuracy set by their
/// own couplings rather than by the n_cut·ω spread of the block.
#[derive(Debug, Clone)]
pub struct Propagator {
    dim: usize,
    blocks: Vec<Block>,
}

impl Propagator {
    pub fn new(system: &JCSystem) -> Result<Self> {
        let h = build_hamiltonian(system)?;
        Ok(Self::from_matrix(&h))
    }

    /// Decomposes any Hermitian matrix.
    pub fn from_matrix(h: &DMatrix<Complex64>) -> Self {
        let dim = h.nrows();
        let blocks = connected_blocks(h)
            .into_iter()
            .map(|mut indices| {
                let m = indices.len();
                // Graded downward: largest diagonal first, smallest shifted to zero.
                indices.sort_by(|&a, &b| h[(b, b)].re.total_cmp(&h[(a, a)].re));
                let shift = h[(indices[m - 1], indices[m - 1])].re;
                let sub = DMatrix::from_fn(m, m, |r, c| {
                    let v = h[(indices[r], indices[c])];
                    if r == c {
                        v - shift
                    } else {
                        v
                    }
                });
                let vectors = diagonalize_block(&sub);
                let (anchors, offsets) = refine(&sub, &vectors);
                Block { indices, shift, anchors, offsets, vectors }
            })
            .collect();
        Self { dim, blocks }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// All eigenvalues in ascending order, rad/s.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(Block::values)
            .collect();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    /// Eigenvalues of the block containing basis index `member`, ascending.
    pub fn block_eigenvalues(&self, member: usize) -> Option<Vec<f64>> {
        let b = self.blocks.iter().find(|b| b.indices.contains(&member))?;
        let mut v: Vec<f64> = b.values().collect();
        v.sort_by(|a, b| a.total_cmp(b));
        Some(v)
    }

    /// `ψ(t) = exp(−iHt/ħ) ψ₀`.
    ///
    /// The common factor `exp(−i·shift·t)` of each block is applied last as
    /// a single phase, so basis-state populations never depend on it. Each
    /// eigenphase is likewise the product of an anchor phase and an offset
    /// phase, so large anchors never absorb the rounding of small offsets.
    pub fn apply(&self, psi0: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let mut out = DVector::<Complex64>::zeros(self.dim);
        for b in &self.blocks {
            let local = DVector::from_iterator(b.indices.len(), b.indices.iter().map(|&i| psi0[i]));
            let mut coeffs = b.vectors.ad_mul(&local);
            for (c, (&a, &o)) in coeffs.iter_mut().zip(b.anchors.iter().zip(&b.offsets)) {
                *c *= Complex64::from_polar(1.0, -a * t) * Complex64::from_polar(1.0, -o * t);
            }
            let evolved = &b.vectors * coeffs;
            let global = Complex64::from_polar(1.0, -b.shift * t);
            for (k, &i) in b.indices.iter().enumerate() {
                out[i] = evolved[k] * global;
            }
        }
        out
    }
}

/// Anchors and offsets of each eigenvector (columns of `vectors`) of `h`.
fn refine(h: &DMatrix<Complex64>, vectors: &DMatrix<Complex64>) -> (Vec<f64>, Vec<f64>) {
    let m = h.nrows();
    (0..m)
        .map(|k| {
            let v = vectors.column(k);
            let j = (0..m)
                .max_by(|&a, &b| v[a].norm_sqr().total_cmp(&v[b].norm_sqr()))
                .unwrap_or(0);
            let anchor = h[(j, j)].re;
            let mut offset = 0.0;
            for r in 0..m {
                let mut w = Complex64::new(0.0, 0.0);
                for c in 0..m {
                    let entry = if r == c { h[(r, r)] - anchor } else { h[(r, c)] };
                    w += entry * v[c];
                }
                offset += (v[r].conj() * w).re;
            }
            (anchor, offset / v.norm_squared())
        })
        .unzip()
}

/// Eigenvectors of a Hermitian block.
///
/// When the coupling graph is a tree (a chain, for every block built
/// here), a diagonal unitary `D` makes `D†HD` real symmetric with the
/// coupling magnitudes off the diagonal, and the real solver is used. The
/// eigenvectors are mapped back as `D·V`. Blocks with cycles whose phases
/// cannot be removed go through the complex solver.
fn diagonalize_block(h: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let m = h.nrows();
    if let Some((phases, real)) = phase_reduce(h) {
        let vectors = jacobi_eigenvectors(real);
        return DMatrix::from_fn(m, m, |r, c| phases[r] * vectors[(r, c)]);
    }
    SymmetricEigen::new(h.clone()).eigenvectors
}

/// Eigenvectors of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Every rotation only combines the two rows it acts on, so a nearly
/// diagonal matrix with a wide diagonal spread keeps its small couplings
/// and eigenvector components to relative accuracy.
fn jacobi_eigenvectors(mut a: DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                } else {
                    0.0
                };
                if t.abs() < JACOBI_NEGLIGIBLE {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                rotated = true;
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let tau = s / (1.0 + c);
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let (arp, arq) = (a[(r, p)], a[(r, q)]);
                        let new_p = arp - s * (arq + tau * arp);
                        let new_q = arq + s * (arp - tau * arq);
                        a[(r, p)] = new_p;
                        a[(p, r)] = new_p;
                        a[(r, q)] = new_q;
                        a[(q, r)] = new_q;
                    }
                    let (vrp, vrq) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = vrp - s * (vrq + tau * vrp);
                    v[(r, q)] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    v
}

/// Diagonal phases `d` and the real matrix `D†HD`, if every off-diagonal
/// entry can be made real and non-negative.
fn phase_reduce(h: &DMatrix<Complex64>) -> Option<(Vec<Complex64>, DMatrix<f64>)> {
    let m = h.nrows();
    let zero = Complex64::new(0.0, 0.0);
    let mut phases: Vec<Option<Complex64>> = vec![None; m];
    let mut tree = vec![vec![false; m]; m];
    for root in 0..m {
        if phases[root].is_some() {
            continue;
        }
        phases[root] = Some(Complex64::new(1.0, 0.0));
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(r) = queue.pop_front() {
            let dr = phases[r]?;
            for c in 0..m {
                let v = h[(r, c)];
                if c == r || v == zero || phases[c].is_some() {
                    continue;
                }
                // conj(d_r)·h_rc·d_c = |h_rc|
                phases[c] = Some(dr * v.conj() / v.norm());
                tree[r][c] = true;
                tree[c][r] = true;
                queue.push_back(c);
            }
        }
    }
    let phases: Vec<Complex64> = phases.into_iter().collect::<Option<_>>()?;
    let mut real = DMatrix::<f64>::zeros(m, m);
    for r in 0..m {
        real[(r, r)] = h[(r, r)].re;
        for c in 0..m {
            let v = h[(r, c)];
            if c == r || v == zero {
                continue;
            }
            if tree[r][c] {
                real[(r, c)] = v.norm();
            } else {
                let t = phases[r].conj() * v * phases[c];
                if t.im.abs() > 1e-14 * v.norm() {
                    return None;
                }
                real[(r, c)] = t.re;
            }
        }
    }
    // exact symmetry for the real solver
    for r in 0..m {
        for c in (r + 1)..m {
            real[(c, r)] = real[(r, c)];
        }
    }
    Some((phases, real))
}

/// Groups basis indices into sets connected by nonzero off-diagonal entries.
fn connected_blocks(h: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let n = h.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for r in 0..n {
        for c in (r + 1)..n {
            if h[(r, c)] != Complex64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

/// Amplitude vector for an initial state, validated against the system.
pub fn initial_vector(system: &JCSystem, initial: &InitialState) -> Result<DVector<Complex64>> {
    let dim = system.dimension();
    match initial {
        InitialState::Basis(s) => {
            if s.photons > system.n_cut {
                return Err(Error::InvalidState(format!(
                    "{} photons exceed n_cut = {}",
                    s.photons, system.n_cut
                )));
            }
            let mut v = DVector::zeros(dim);
            v[s.index()] = Complex64::new(1.0, 0.0);
            Ok(v)
        }
        InitialState::Amplitudes(v) => {
            if v.len() != dim {
                return Err(Error::InvalidState(format!(
                    "amplitude vector has length {}, system needs {dim}",
                    v.len()
                )));
            }
            let norm = v.norm();
            if (norm - 1.0).abs().is_nan() || (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::InvalidState(format!("state norm is {norm}, expected 1")));
            }
            Ok(v.clone())
        }
    }
}

/// `(P_e, ⟨a†a⟩, ‖ψ‖, top-level population)` of a state vector.
pub fn observables(psi: &DVector<Complex64>) -> (f64, f64, f64, f64) {
    let mut p_e = 0.0;
    let mut n_ph = 0.0;
    let mut total = 0.0;
    for (i, a) in psi.iter().enumerate() {
        let p = a.norm_sqr();
        let s = BasisState::from_index(i);
        if s.qubit == QubitLevel::Excited {
            p_e += p;
        }
        n_ph += s.photons as f64 * p;
        total += p;
    }
    let top = psi.len() - 2;
    let leak = psi[top].norm_sqr() + psi[top + 1].norm_sqr();
    (p_e, n_ph, total.sqrt(), leak)
}

/// Propagates `initial` through the truncated Hamiltonian and samples the
/// qubit and cavity observables at `times`.
///
/// Fails if the top Fock level ever holds more than [`LEAK_TOLERANCE`].
pub fn evolve(system: &JCSystem, initial: &InitialState, times: &[f64]) -> Result<EvolutionResult> {
    let propagator = Propagator::new(system)?;
    let psi0 = initial_vector(system, initial)?;
    let mut out = EvolutionResult {
        times: times.to_vec(),
        p_excited: Vec::with_capacity(times.len()),
        n_photon: Vec::with_capacity(times.len()),
        norm: Vec::with_capacity(times.len()),
    };
    for &t in times {
        let psi = propagator.apply(&psi0, t);
        let (p_e, n_ph, norm, leak) = observables(&psi);
        if leak > LEAK_TOLERANCE {
            return Err(Error::TruncationLeak {
                population: leak,
                time: t,
                n_cut: system.n_cut,
            });
        }
        out.p_excited.push(p_e);
        out.n_photon.push(n_ph);
        out.norm.push(norm);
    }
    Ok(out)
}

/// Angular frequency of P_e(t) oscillations starting from `|e, n⟩`: the
/// splitting of the `n + 1` manifold, `2g√(n+1)` at resonance.
pub fn fock_initial_splitting(system: &JCSystem, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidState("Fock-state splitting needs n >= 1".into()));
    }
    Ok(dressed_frequencies(system, n + 1)?.rabi)
}

/// Splitting of the exchange `|g, n⟩ ↔ |e, n−1⟩`, `2g√n` at resonance.
pub fn fock_exchange_splitting(system: &JCSystem, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidState("Fock-state splitting needs n >= 1".into()));
    }
    Ok(dressed_frequencies(system, n)?.rabi)
}

/// Rabi period 2π/Ω_R of the vacuum manifold.
pub fn vacuum_rabi_period(system: &JCSystem) -> Result<f64> {
    Ok(2.0 * PI / dressed_frequencies(system, 1)?.rabi)
}
