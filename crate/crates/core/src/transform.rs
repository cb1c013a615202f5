//! Fourier-Stieltjes transforms of `A`-valued measures and functions on `G`.
//!
//! For an induced representation `U` with basis `theta_i` and coefficients
//! `u_ij(t) = <U_t theta_j, theta_i>`, the transform of a measure `m` is the
//! sesquilinear map `(u, v) -> sum_t <conj(U_t) u, v> m({t})`, stored as its
//! table on the basis:
//!
//! `coeffs(i, j) = m_hat(theta_i, theta_j) = sum_t conj(u_ji(t)) m({t})`.
//!
//! With `lambda = 1/|K|` these conventions give, for an irreducible induction,
//! `(u_ij a)^(theta_m, theta_l) = delta_li delta_mj a / d_sigma` and the
//! inversion `f = sum_sigma d_sigma sum_ij f_hat(theta_j, theta_i) u_ij`.

use std::collections::BTreeMap;
use std::sync::Arc;

use log::warn;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::HaarWeights;
use crate::induce::InducedRep;
use crate::linalg::{self, CVec};
use crate::spaces::{self, BlockNorm};

/// The coefficient Hilbert space `A = C^dim` with the standard Hermitian product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientSpace {
    dim: usize,
}

impl CoefficientSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ShapeMismatch(
                "coefficient space needs dim >= 1".into(),
            ));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero(&self) -> CVec {
        CVec::zeros(self.dim)
    }
}

fn check_len(values: &[CVec], order: usize, space: CoefficientSpace) -> Result<()> {
    if values.len() != order {
        return Err(Error::ShapeMismatch(format!(
            "expected {order} values, found {}",
            values.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| v.len() != space.dim()) {
        return Err(Error::ShapeMismatch(format!(
            "value of length {} in a space of dimension {}",
            v.len(),
            space.dim()
        )));
    }
    Ok(())
}

/// An `A`-valued measure on a finite group; every such measure is atomic.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorMeasure {
    space: CoefficientSpace,
    atoms: Vec<CVec>,
}

impl VectorMeasure {
    pub fn new(space: CoefficientSpace, atoms: Vec<CVec>) -> Result<Self> {
        let order = atoms.len();
        check_len(&atoms, order, space)?;
        Ok(Self { space, atoms })
    }

    pub fn zero(space: CoefficientSpace, order: usize) -> Self {
        Self {
            space,
            atoms: vec![space.zero(); order],
        }
    }

    /// Point mass `a` at `t`.
    pub fn dirac(space: CoefficientSpace, order: usize, t: usize, a: CVec) -> Result<Self> {
        let mut m = Self::zero(space, order);
        if t >= order {
            return Err(Error::IndexOutOfRange { index: t, order });
        }
        if a.len() != space.dim() {
            return Err(Error::ShapeMismatch("atom has wrong dimension".into()));
        }
        m.atoms[t] = a;
        Ok(m)
    }

    /// The measure `f dlambda`.
    pub fn from_density(f: &VectorFunction, weights: &HaarWeights) -> Self {
        let lambda = Complex64::new(weights.lambda_f64(), 0.0);
        Self {
            space: f.space,
            atoms: f.values.iter().map(|v| v * lambda).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(space: CoefficientSpace, order: usize, rng: &mut R) -> Self {
        Self {
            space,
            atoms: (0..order)
                .map(|_| linalg::random_vec(rng, space.dim()))
                .collect(),
        }
    }

    pub fn space(&self) -> CoefficientSpace {
        self.space
    }

    pub fn atoms(&self) -> &[CVec] {
        &self.atoms
    }

    /// Total variation `sum_t ||m({t})||_A`.
    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(linalg::norm).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            space: self.space,
            atoms: self.atoms.iter().map(|a| a * c).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.space != other.space || self.atoms.len() != other.atoms.len() {
            return Err(Error::ShapeMismatch(
                "measures over different spaces".into(),
            ));
        }
        Ok(Self {
            space: self.space,
            atoms: self
                .atoms
                .iter()
                .zip(&other.atoms)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// An `A`-valued function on `G`, with `L_p` norms taken against `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFunction {
    space: CoefficientSpace,
    values: Vec<CVec>,
}

impl VectorFunction {
    pub fn new(space: CoefficientSpace, values: Vec<CVec>) -> Result<Self> {
        let order = values.len();
        check_len(&values, order, space)?;
        Ok(Self { space, values })
    }

    pub fn zero(space: CoefficientSpace, order: usize) -> Self {
        Self {
            space,
            values: vec![space.zero(); order],
        }
    }

    pub fn random<R: Rng + ?Sized>(space: CoefficientSpace, order: usize, rng: &mut R) -> Self {
        Self {
            space,
            values: (0..order)
                .map(|_| linalg::random_vec(rng, space.dim()))
                .collect(),
        }
    }

    /// `t -> u_ij(t) a` for the induced representation `u`.
    pub fn coefficient_multiple(u: &InducedRep, i: usize, j: usize, a: &CVec) -> Result<Self> {
        let space = CoefficientSpace::new(a.len())?;
        let values = u
            .group()
            .elements()
            .map(|t| u.coefficient(t, i, j).map(|c| a * c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { space, values })
    }

    pub fn space(&self) -> CoefficientSpace {
        self.space
    }

    pub fn values(&self) -> &[CVec] {
        &self.values
    }

    pub fn value(&self, t: usize) -> &CVec {
        &self.values[t]
    }

    /// `(sum_t lambda ||f(t)||^p)^(1/p)`.
    pub fn norm_p(&self, weights: &HaarWeights, p: f64) -> f64 {
        let lambda = weights.lambda_f64();
        self.values
            .iter()
            .map(|v| lambda * linalg::norm(v).powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// `||f||_2^2`, computed without the square root.
    pub fn norm2_sqr(&self, weights: &HaarWeights) -> f64 {
        let lambda = weights.lambda_f64();
        self.values
            .iter()
            .map(|v| lambda * linalg::norm(v).powi(2))
            .sum()
    }

    /// `sum_t lambda <f(t), g(t)>_A`.
    pub fn l2_inner(&self, other: &Self, weights: &HaarWeights) -> Result<Complex64> {
        if self.space != other.space || self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch(
                "functions over different spaces".into(),
            ));
        }
        let lambda = weights.lambda_f64();
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| linalg::inner(a, b) * lambda)
            .sum())
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            space: self.space,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&CVec, &CVec) -> CVec) -> Result<Self> {
        if self.space != other.space || self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch(
                "functions over different spaces".into(),
            ));
        }
        Ok(Self {
            space: self.space,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    /// Largest pointwise distance `max_t ||f(t) - g(t)||_A`.
    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        let diff = self.minus(other)?;
        Ok(diff.values.iter().map(linalg::norm).fold(0.0, f64::max))
    }
}

/// The table `Phi(sigma)(theta_i, theta_j)` of one sesquilinear map.
#[derive(Debug, Clone)]
pub struct SpectralBlock {
    rep: Arc<InducedRep>,
    space: CoefficientSpace,
    /// Row-major `N x N`.
    coeffs: Vec<CVec>,
}

impl SpectralBlock {
    pub fn new(rep: Arc<InducedRep>, space: CoefficientSpace, coeffs: Vec<CVec>) -> Result<Self> {
        let n = rep.dim();
        if coeffs.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "block for {} needs {} entries, found {}",
                rep.label(),
                n * n,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.len() != space.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "block for {} has entries outside the coefficient space",
                rep.label()
            )));
        }
        Ok(Self { rep, space, coeffs })
    }

    pub fn zero(rep: Arc<InducedRep>, space: CoefficientSpace) -> Self {
        let n = rep.dim();
        Self {
            rep,
            space,
            coeffs: vec![space.zero(); n * n],
        }
    }

    pub fn random<R: Rng + ?Sized>(
        rep: Arc<InducedRep>,
        space: CoefficientSpace,
        rng: &mut R,
    ) -> Self {
        let n = rep.dim();
        let coeffs = (0..n * n)
            .map(|_| linalg::random_vec(rng, space.dim()))
            .collect();
        Self { rep, space, coeffs }
    }

    pub fn rep(&self) -> &Arc<InducedRep> {
        &self.rep
    }

    pub fn label(&self) -> &str {
        self.rep.label()
    }

    pub fn space(&self) -> CoefficientSpace {
        self.space
    }

    /// `N`, the dimension of the induced representation.
    pub fn size(&self) -> usize {
        self.rep.dim()
    }

    /// Weight `d_sigma` of this block in the spectral norms.
    pub fn weight(&self) -> usize {
        self.rep.d_sigma()
    }

    /// `Phi(sigma)(theta_i, theta_j)`.
    pub fn get(&self, i: usize, j: usize) -> &CVec {
        &self.coeffs[i * self.size() + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut CVec {
        let n = self.size();
        &mut self.coeffs[i * n + j]
    }

    pub fn entries(&self) -> &[CVec] {
        &self.coeffs
    }

    /// `Phi(sigma)(u, v) = sum_ij u_i conj(v_j) Phi(theta_i, theta_j)` for
    /// coordinate vectors `u`, `v` in the basis.
    pub fn evaluate(&self, u: &CVec, v: &CVec) -> CVec {
        let n = self.size();
        let mut acc = self.space.zero();
        for i in 0..n {
            for j in 0..n {
                acc += self.get(i, j) * (u[i] * v[j].conj());
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.iter().all(|z| *z == Complex64::new(0.0, 0.0)))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&CVec, &CVec) -> CVec) -> Result<Self> {
        if self.size() != other.size() || self.space != other.space {
            return Err(Error::ShapeMismatch(format!(
                "blocks for {} differ in shape",
                self.label()
            )));
        }
        Ok(Self {
            rep: self.rep.clone(),
            space: self.space,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            rep: self.rep.clone(),
            space: self.space,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// A family `(Phi(sigma))_sigma` of blocks keyed by representation label.
#[derive(Debug, Clone)]
pub struct SpectralField {
    space: CoefficientSpace,
    blocks: BTreeMap<String, SpectralBlock>,
}

impl SpectralField {
    pub fn new(space: CoefficientSpace) -> Self {
        Self {
            space,
            blocks: BTreeMap::new(),
        }
    }

    /// Inserts a block; labels must be distinct.
    pub fn insert(&mut self, block: SpectralBlock) -> Result<()> {
        if block.space != self.space {
            return Err(Error::ShapeMismatch(format!(
                "block for {} has coefficient dimension {}, field has {}",
                block.label(),
                block.space.dim(),
                self.space.dim()
            )));
        }
        if let Some(existing) = self.blocks.values().next() {
            if existing.rep.group().order() != block.rep.group().order() {
                return Err(Error::GroupMismatch);
            }
        }
        let label = block.label().to_string();
        if self.blocks.contains_key(&label) {
            return Err(Error::ShapeMismatch(format!("duplicate label {label}")));
        }
        self.blocks.insert(label, block);
        Ok(())
    }

    pub fn from_blocks(space: CoefficientSpace, blocks: Vec<SpectralBlock>) -> Result<Self> {
        let mut field = Self::new(space);
        for b in blocks {
            field.insert(b)?;
        }
        Ok(field)
    }

    pub fn zero(space: CoefficientSpace, reps: &[Arc<InducedRep>]) -> Result<Self> {
        Self::from_blocks(
            space,
            reps.iter()
                .map(|r| SpectralBlock::zero(r.clone(), space))
                .collect(),
        )
    }

    pub fn random<R: Rng + ?Sized>(
        space: CoefficientSpace,
        reps: &[Arc<InducedRep>],
        rng: &mut R,
    ) -> Result<Self> {
        Self::from_blocks(
            space,
            reps.iter()
                .map(|r| SpectralBlock::random(r.clone(), space, rng))
                .collect(),
        )
    }

    pub fn space(&self) -> CoefficientSpace {
        self.space
    }

    pub fn blocks(&self) -> impl Iterator<Item = &SpectralBlock> {
        self.blocks.values()
    }

    pub fn block(&self, label: &str) -> Option<&SpectralBlock> {
        self.blocks.get(label)
    }

    pub fn block_mut(&mut self, label: &str) -> Option<&mut SpectralBlock> {
        self.blocks.get_mut(label)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.blocks.keys().map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn zip_with(&self, other: &Self, op: impl Fn(&CVec, &CVec) -> CVec + Copy) -> Result<Self> {
        if self.labels() != other.labels() {
            return Err(Error::ShapeMismatch("fields have different labels".into()));
        }
        let mut out = Self::new(self.space);
        for (a, b) in self.blocks.values().zip(other.blocks.values()) {
            out.insert(a.zip_with(b, op)?)?;
        }
        Ok(out)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            space: self.space,
            blocks: self
                .blocks
                .iter()
                .map(|(k, b)| (k.clone(), b.scaled(c)))
                .collect(),
        }
    }

    /// Applies `f` to every block.
    pub fn map_blocks(&self, f: impl Fn(&SpectralBlock) -> SpectralBlock) -> Self {
        Self {
            space: self.space,
            blocks: self.blocks.iter().map(|(k, b)| (k.clone(), f(b))).collect(),
        }
    }

    /// Largest entrywise distance between two fields with the same labels.
    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        let diff = self.minus(other)?;
        Ok(diff
            .blocks()
            .flat_map(|b| b.entries().iter().map(linalg::norm))
            .fold(0.0, f64::max))
    }
}

fn check_group(order: usize, u: &InducedRep) -> Result<()> {
    if order != u.group().order() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// `m_hat(sigma)(theta_i, theta_j) = sum_t conj(u_ji(t)) m({t})`.
pub fn fourier_stieltjes(m: &VectorMeasure, u: &Arc<InducedRep>) -> Result<SpectralBlock> {
    check_group(m.atoms.len(), u)?;
    let n = u.dim();
    let mut coeffs = vec![m.space.zero(); n * n];
    for (t, atom) in m.atoms.iter().enumerate() {
        let op = u.operator(t);
        for i in 0..n {
            for j in 0..n {
                coeffs[i * n + j] += atom * op[(j, i)].conj();
            }
        }
    }
    SpectralBlock::new(u.clone(), m.space, coeffs)
}

/// `f_hat(sigma)(theta_i, theta_j) = sum_t lambda conj(u_ji(t)) f(t)`.
pub fn fourier_function(f: &VectorFunction, u: &Arc<InducedRep>) -> Result<SpectralBlock> {
    check_group(f.values.len(), u)?;
    let n = u.dim();
    let lambda = u.weights().lambda_f64();
    let mut coeffs = vec![f.space.zero(); n * n];
    for (t, value) in f.values.iter().enumerate() {
        let op = u.operator(t);
        for i in 0..n {
            for j in 0..n {
                coeffs[i * n + j] += value * (op[(j, i)].conj() * lambda);
            }
        }
    }
    SpectralBlock::new(u.clone(), f.space, coeffs)
}

/// Transform of `m` over every representation in `reps`.
pub fn transform_measure(m: &VectorMeasure, reps: &[Arc<InducedRep>]) -> Result<SpectralField> {
    let blocks = reps
        .iter()
        .map(|u| fourier_stieltjes(m, u))
        .collect::<Result<Vec<_>>>()?;
    SpectralField::from_blocks(m.space, blocks)
}

/// Transform of `f` over every representation in `reps`.
pub fn transform_function(f: &VectorFunction, reps: &[Arc<InducedRep>]) -> Result<SpectralField> {
    let blocks = reps
        .iter()
        .map(|u| fourier_function(f, u))
        .collect::<Result<Vec<_>>>()?;
    SpectralField::from_blocks(f.space, blocks)
}

/// Coefficients `a_ij` with `Phi(sigma) = sum_ij d_sigma a_ij u_ij_hat`.
///
/// Since `u_ij_hat` is `1/d_sigma` at `(theta_j, theta_i)` and zero elsewhere,
/// `a_ij = Phi(sigma)(theta_j, theta_i)`. Returned row-major `N x N`.
pub fn spectral_decompose(block: &SpectralBlock) -> Vec<CVec> {
    if !block.rep.is_irreducible(1e-9) {
        warn!(
            "decomposing a block over the reducible induction {}",
            block.label()
        );
    }
    let n = block.size();
    (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            block.get(j, i).clone()
        })
        .collect()
}

/// `f(t) = sum_sigma d_sigma sum_ij Phi(sigma)(theta_j, theta_i) u_ij(t)`.
pub fn synthesize(field: &SpectralField) -> Result<VectorFunction> {
    let order = match field.blocks().next() {
        Some(b) => b.rep.group().order(),
        None => {
            return Err(Error::ShapeMismatch(
                "cannot synthesize an empty field".into(),
            ))
        }
    };
    let mut values = vec![field.space.zero(); order];
    for block in field.blocks() {
        let u = &block.rep;
        let n = u.dim();
        let d = Complex64::new(u.d_sigma() as f64, 0.0);
        for (t, value) in values.iter_mut().enumerate() {
            let op = u.operator(t);
            for i in 0..n {
                for j in 0..n {
                    *value += block.get(j, i) * (op[(i, j)] * d);
                }
            }
        }
    }
    VectorFunction::new(field.space, values)
}

/// Orthogonal projection of `f` onto the coefficient span of `reps`, and the
/// `L_2` distance from `f` to it.
pub fn project_span(f: &VectorFunction, reps: &[Arc<InducedRep>]) -> Result<(VectorFunction, f64)> {
    let weights = span_weights(reps)?;
    let field = transform_function(f, reps)?;
    let proj = synthesize(&field)?;
    let residual = f.minus(&proj)?.norm2_sqr(&weights).sqrt();
    Ok((proj, residual))
}

/// `| ||f||_2^2 - ||f_hat||_2^2 |` with the spectral norm taken over `reps`.
pub fn plancherel_gap(f: &VectorFunction, reps: &[Arc<InducedRep>]) -> Result<f64> {
    let weights = span_weights(reps)?;
    let field = transform_function(f, reps)?;
    let spectral = spaces::s2_inner(&field, &field)?.re;
    Ok((f.norm2_sqr(&weights) - spectral).abs())
}

/// `(<f, g>_{L_2}, <f_hat, g_hat>_{S_2})`.
pub fn parseval_inner(
    f: &VectorFunction,
    g: &VectorFunction,
    reps: &[Arc<InducedRep>],
) -> Result<(Complex64, Complex64)> {
    let weights = span_weights(reps)?;
    let lhs = f.l2_inner(g, &weights)?;
    let rhs = spaces::s2_inner(&transform_function(f, reps)?, &transform_function(g, reps)?)?;
    Ok((lhs, rhs))
}

/// A random element `sum_sigma d_sigma sum_ij a_ij u_ij` of the coefficient span.
pub fn random_span_element<R: Rng + ?Sized>(
    space: CoefficientSpace,
    reps: &[Arc<InducedRep>],
    rng: &mut R,
) -> Result<VectorFunction> {
    let field = SpectralField::random(space, reps, rng)?;
    synthesize(&field)
}

/// Weights shared by all representations in `reps`; they must be induced
/// from the same subgroup.
pub fn span_weights(reps: &[Arc<InducedRep>]) -> Result<HaarWeights> {
    let first = reps
        .first()
        .ok_or_else(|| Error::ShapeMismatch("empty representation set".into()))?;
    for u in &reps[1..] {
        if **u.sigma().subgroup() != **first.sigma().subgroup() {
            return Err(Error::SubgroupMismatch);
        }
    }
    Ok(first.weights().clone())
}

/// Outcome of the continuity and linearity checks for `m -> m_hat`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormBoundReport {
    /// `||m|| = sum_t ||m({t})||_A`.
    pub measure_norm: f64,
    /// `||m_hat||_inf` with the entrywise block norm.
    pub transform_norm: f64,
    /// `||m_hat||_inf` with the operator norm of each block.
    pub transform_operator_norm: f64,
    pub bound_holds: bool,
    /// Largest entry of `(a m + b m2)^ - (a m_hat + b m2_hat)` on a random pair.
    pub linearity_residual: f64,
    /// `L_2` distance from the density of `m` to the span of `reps`.
    pub injectivity_residual: f64,
}

pub fn norm_bound_check<R: Rng + ?Sized>(
    m: &VectorMeasure,
    reps: &[Arc<InducedRep>],
    rng: &mut R,
    tol: f64,
) -> Result<NormBoundReport> {
    let weights = span_weights(reps)?;
    let field = transform_measure(m, reps)?;
    let measure_norm = m.total_variation();
    let transform_norm = spaces::sup_norm(&field, BlockNorm::EntryMax);
    let transform_operator_norm = spaces::sup_norm(&field, BlockNorm::Operator);
    let bound_holds =
        transform_norm <= measure_norm + tol && transform_operator_norm <= measure_norm + tol;

    let other = VectorMeasure::random(m.space, m.atoms.len(), rng);
    let (a, b) = (linalg::random_complex(rng), linalg::random_complex(rng));
    let combined = transform_measure(&m.scaled(a).plus(&other.scaled(b))?, reps)?;
    let separate = field
        .scaled(a)
        .plus(&transform_measure(&other, reps)?.scaled(b))?;
    let linearity_residual = combined.max_distance(&separate)?;

    let lambda_inv = Complex64::new(1.0 / weights.lambda_f64(), 0.0);
    let density = VectorFunction::new(m.space, m.atoms.iter().map(|a| a * lambda_inv).collect())?;
    let (_, injectivity_residual) = project_span(&density, reps)?;

    Ok(NormBoundReport {
        measure_norm,
        transform_norm,
        transform_operator_norm,
        bound_holds,
        linearity_residual,
        injectivity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn induced(pair: &catalog::SubgroupPair, sigma: &str) -> Arc<InducedRep> {
        let rep = catalog::rep_by_name(pair.subgroup.clone(), sigma).unwrap();
        Arc::new(InducedRep::new(Arc::new(rep)))
    }

    fn space(d: usize) -> CoefficientSpace {
        CoefficientSpace::new(d).unwrap()
    }

    #[test]
    fn dirac_at_identity_gives_identity_pattern() {
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let a = CVec::from_vec(vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0)]);
        let m = VectorMeasure::dirac(space(2), 6, 0, a.clone()).unwrap();
        let b = fourier_stieltjes(&m, &u).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { a.clone() } else { space(2).zero() };
                assert!((b.get(i, j) - target).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn dirac_elsewhere_is_conjugate_coefficient() {
        let u = induced(&catalog::d4_c4(), "cyclic:4:chi1");
        let a = CVec::from_element(1, Complex64::new(0.3, -0.7));
        for t0 in 0..8 {
            let m = VectorMeasure::dirac(space(1), 8, t0, a.clone()).unwrap();
            let b = fourier_stieltjes(&m, &u).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let expected = &a * u.coefficient(t0, j, i).unwrap().conj();
                    assert!((b.get(i, j) - expected).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn density_measure_matches_function_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let f = VectorFunction::random(space(3), 6, &mut rng);
        let m = VectorMeasure::from_density(&f, u.weights());
        let bf = fourier_function(&f, &u).unwrap();
        let bm = fourier_stieltjes(&m, &u).unwrap();
        for (x, y) in bf.entries().iter().zip(bm.entries()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn single_entry_lemma_value() {
        // f = u_ij a  ->  f_hat(theta_m, theta_l) = delta_li delta_mj a / d.
        for (p, sigma) in [
            (catalog::s3_a3(), "cyclic:3:chi1"),
            (catalog::s3_s3(), "symmetric:3:std"),
            (catalog::d4_c4(), "cyclic:4:chi1"),
        ] {
            let u = induced(&p, sigma);
            let n = u.dim();
            let d = u.d_sigma() as f64;
            let a = CVec::from_vec(vec![Complex64::new(0.2, 1.0), Complex64::new(-1.5, 0.4)]);
            for i in 0..n {
                for j in 0..n {
                    let f = VectorFunction::coefficient_multiple(&u, i, j, &a).unwrap();
                    let b = fourier_function(&f, &u).unwrap();
                    for m in 0..n {
                        for l in 0..n {
                            let expected = if l == i && m == j {
                                &a / Complex64::new(d, 0.0)
                            } else {
                                space(2).zero()
                            };
                            assert!((b.get(m, l) - expected).norm() < 1e-10, "{sigma}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn zero_in_zero_out() {
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let f = VectorFunction::zero(space(2), 6);
        assert!(fourier_function(&f, &u).unwrap().is_zero());
        let field = SpectralField::zero(space(2), std::slice::from_ref(&u)).unwrap();
        let g = synthesize(&field).unwrap();
        assert!(g.values().iter().all(|v| v.norm() == 0.0));
        assert!(spectral_decompose(field.blocks().next().unwrap())
            .iter()
            .all(|v| v.norm() == 0.0));
        assert_eq!(plancherel_gap(&f, &[u]).unwrap(), 0.0);
    }

    #[test]
    fn coefficient_against_inequivalent_induction_vanishes() {
        let p = catalog::s3_a3();
        let w = induced(&p, "cyclic:3:chi1");
        let triv = induced(&p, "trivial");
        let a = CVec::from_element(1, Complex64::new(1.0, 0.0));
        let f = VectorFunction::coefficient_multiple(&w, 0, 1, &a).unwrap();
        let b = fourier_function(&f, &triv).unwrap();
        assert!(b.entries().iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn decompose_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = induced(&catalog::s3_s3(), "symmetric:3:std");
        let d = u.d_sigma() as f64;
        let a = CVec::from_vec(vec![Complex64::new(0.5, 0.5)]);
        let f = VectorFunction::coefficient_multiple(&u, 0, 0, &a).unwrap();
        let coeffs = spectral_decompose(&fourier_function(&f, &u).unwrap());
        // f = d a_00 u_00 forces a_00 = a / d.
        assert!((&coeffs[0] - &a / Complex64::new(d, 0.0)).norm() < 1e-12);
        assert!(coeffs[1..].iter().all(|c| c.norm() < 1e-12));

        // Rebuild the block as sum d a_ij u_ij_hat with transforms of u_ij.
        let block = SpectralBlock::random(u.clone(), space(2), &mut rng);
        let a = spectral_decompose(&block);
        let n = u.dim();
        let mut rebuilt = SpectralBlock::zero(u.clone(), space(2));
        let one = CVec::from_element(1, Complex64::new(1.0, 0.0));
        for i in 0..n {
            for j in 0..n {
                let uij = VectorFunction::coefficient_multiple(&u, i, j, &one).unwrap();
                let hat = fourier_function(&uij, &u).unwrap();
                for x in 0..n {
                    for y in 0..n {
                        let scalar = hat.get(x, y)[0] * d;
                        *rebuilt.get_mut(x, y) += &a[i * n + j] * scalar;
                    }
                }
            }
        }
        for (x, y) in rebuilt.entries().iter().zip(block.entries()) {
            assert!((x - y).norm() < 1e-12);
        }

        // Additivity.
        let b2 = SpectralBlock::random(u.clone(), space(2), &mut rng);
        let sum = block.zip_with(&b2, |x, y| x + y).unwrap();
        let lhs = spectral_decompose(&sum);
        let rhs: Vec<CVec> = spectral_decompose(&block)
            .iter()
            .zip(spectral_decompose(&b2))
            .map(|(x, y)| x + y)
            .collect();
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn synthesize_single_coefficient() {
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let a = CVec::from_vec(vec![Complex64::new(1.0, -1.0), Complex64::new(0.0, 2.0)]);
        let f = VectorFunction::coefficient_multiple(&u, 0, 0, &a).unwrap();
        let field = transform_function(&f, std::slice::from_ref(&u)).unwrap();
        let back = synthesize(&field).unwrap();
        assert!(back.max_distance(&f).unwrap() < 1e-10);
    }

    #[test]
    fn projection_off_span_and_complete_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = catalog::s3_a3();
        let w = induced(&p, "cyclic:3:chi1");
        let weights = w.weights().clone();
        // Sign character of S3 is constant on cosets of A3 with values +1, -1.
        let cos = w.cosets().clone();
        let sign: Vec<CVec> = (0..6)
            .map(|t| {
                let s = if cos.factor(t).0 == 0 { 1.0 } else { -1.0 };
                CVec::from_element(1, Complex64::new(s, 0.0))
            })
            .collect();
        let f = VectorFunction::new(space(1), sign).unwrap();
        let (proj, residual) = project_span(&f, std::slice::from_ref(&w)).unwrap();
        assert!(proj.values().iter().all(|v| v.norm() < 1e-12));
        assert!((residual - f.norm2_sqr(&weights).sqrt()).abs() < 1e-12);
        let gap = plancherel_gap(&f, std::slice::from_ref(&w)).unwrap();
        assert!((gap - f.norm2_sqr(&weights)).abs() < 1e-12);

        // Complete system on S3 > S3: dimension count 1 + 1 + 4 = |G|.
        let q = catalog::s3_s3();
        let reps: Vec<_> = ["symmetric:3:triv", "symmetric:3:sign", "symmetric:3:std"]
            .iter()
            .map(|s| induced(&q, s))
            .collect();
        let count: usize = reps.iter().map(|u| u.dim() * u.dim()).sum();
        assert_eq!(count, 6);
        let f = VectorFunction::random(space(3), 6, &mut rng);
        let (_, residual) = project_span(&f, &reps).unwrap();
        assert!(residual < 1e-10);
        assert!(plancherel_gap(&f, &reps).unwrap() < 1e-10);
    }

    #[test]
    fn plancherel_on_u11() {
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let a = CVec::from_vec(vec![Complex64::new(3.0, 4.0)]);
        let f = VectorFunction::coefficient_multiple(&u, 0, 0, &a).unwrap();
        // ||f||^2 = ||a||^2 / d = 25.
        assert!((f.norm2_sqr(u.weights()) - 25.0).abs() < 1e-10);
        assert!(plancherel_gap(&f, &[u]).unwrap() < 1e-10);
    }

    #[test]
    fn norm_bound_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let a = CVec::from_vec(vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]);
        let m = VectorMeasure::dirac(space(2), 6, 0, a).unwrap();
        let r = norm_bound_check(&m, std::slice::from_ref(&u), &mut rng, 1e-10).unwrap();
        assert!((r.transform_norm - 5.0).abs() < 1e-12);
        assert!((r.transform_operator_norm - 5.0).abs() < 1e-9);
        assert!((r.measure_norm - 5.0).abs() < 1e-12);
        let r2 = norm_bound_check(
            &m.scaled(Complex64::new(2.0, 0.0)),
            std::slice::from_ref(&u),
            &mut rng,
            1e-10,
        )
        .unwrap();
        assert!((r2.transform_norm - 10.0).abs() < 1e-12);
        assert!((r2.measure_norm - 10.0).abs() < 1e-12);

        let m = VectorMeasure::random(space(2), 6, &mut rng);
        let r = norm_bound_check(&m, &[u], &mut rng, 1e-10).unwrap();
        assert!(r.bound_holds);
        assert!(r.transform_norm < r.measure_norm);
        assert!(r.linearity_residual < 1e-12);
    }

    #[test]
    fn field_rejects_duplicates_and_mismatches() {
        let u = induced(&catalog::s3_a3(), "cyclic:3:chi1");
        let mut field = SpectralField::new(space(1));
        field
            .insert(SpectralBlock::zero(u.clone(), space(1)))
            .unwrap();
        assert!(field
            .insert(SpectralBlock::zero(u.clone(), space(1)))
            .is_err());
        assert!(SpectralBlock::new(u.clone(), space(1), vec![]).is_err());
        let other = induced(&catalog::d4_c4(), "cyclic:4:chi1");
        let mut field = SpectralField::new(space(1));
        field
            .insert(SpectralBlock::zero(u.clone(), space(1)))
            .unwrap();
        assert!(matches!(
            field.insert(SpectralBlock::zero(other.clone(), space(1))),
            Err(Error::GroupMismatch)
        ));
        let m = VectorMeasure::zero(space(1), 6);
        assert!(fourier_stieltjes(&m, &other).is_err());
    }
}
