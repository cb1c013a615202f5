//! Representations of `G` induced from a unitary representation `sigma` of `K`.
//!
//! The representation space is the space of functions `u: G -> C^d` with
//! `u(gk) = sigma(k)^{-1} u(g)`, with inner product
//! `<u, v> = sum_r mu <u(g_r), v(g_r)>` over coset representatives, and `G`
//! acting by `(U_t u)(g) = u(t^{-1} g)`.
//!
//! The canonical orthonormal basis is
//! `theta_(r,s)(g) = [g in g_r K] sigma((g_r^{-1} g)^{-1}) xi_s`,
//! flattened row-major as `i = r * d + s`.

use std::sync::{Arc, OnceLock};

use log::warn;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{CosetStructure, FiniteGroup, HaarWeights};
use crate::linalg::{self, CMat, CVec};
use crate::repr::UnitaryRep;

/// A `C^d`-valued function on `G` (one vector per element, by index).
#[derive(Debug, Clone)]
pub struct EquivariantFunction {
    sigma: Arc<UnitaryRep>,
    values: Vec<CVec>,
}

impl EquivariantFunction {
    /// Wraps values after checking `u(gk) = sigma(k)^{-1} u(g)` to `tol`.
    pub fn new(sigma: Arc<UnitaryRep>, values: Vec<CVec>, tol: f64) -> Result<Self> {
        let f = Self { sigma, values };
        let residual = f.equivariance_residual();
        if residual > tol {
            return Err(Error::ShapeMismatch(format!(
                "function is not equivariant (residual {residual:.3e})"
            )));
        }
        Ok(f)
    }

    pub fn values(&self) -> &[CVec] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &CVec {
        &self.values[g]
    }

    pub fn sigma(&self) -> &Arc<UnitaryRep> {
        &self.sigma
    }

    /// `max_{g,k} |u(gk) - sigma(k)^* u(g)|`.
    pub fn equivariance_residual(&self) -> f64 {
        let k = self.sigma.subgroup();
        let g = k.parent();
        let mut worst: f64 = 0.0;
        for x in g.elements() {
            for &kk in k.members() {
                let lhs = &self.values[g.mul(x, kk)];
                let rhs = self.sigma.mat(kk).adjoint() * &self.values[x];
                let diff = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
                worst = worst.max(diff);
            }
        }
        worst
    }
}

/// `u_eta(g) = sum_k nu sigma(k) eta(gk)`, the equivariant projection of `eta`.
pub fn project_equivariant(sigma: &Arc<UnitaryRep>, eta: &[CVec]) -> Result<EquivariantFunction> {
    let k = sigma.subgroup();
    let g = k.parent();
    if eta.len() != g.order() || eta.iter().any(|v| v.len() != sigma.dim()) {
        return Err(Error::ShapeMismatch(format!(
            "eta needs {} vectors of length {}",
            g.order(),
            sigma.dim()
        )));
    }
    let nu = Complex64::new(HaarWeights::new(k).nu_f64(), 0.0);
    let values = g
        .elements()
        .map(|x| {
            let mut acc = CVec::zeros(sigma.dim());
            for &kk in k.members() {
                acc += sigma.mat(kk) * &eta[g.mul(x, kk)] * nu;
            }
            acc
        })
        .collect();
    Ok(EquivariantFunction {
        sigma: sigma.clone(),
        values,
    })
}

/// The induced representation on its canonical basis, with a lazily filled
/// per-element operator cache.
#[derive(Debug)]
pub struct InducedRep {
    sigma: Arc<UnitaryRep>,
    cosets: CosetStructure,
    weights: HaarWeights,
    dim: usize,
    opcache: Vec<OnceLock<CMat>>,
    source_irreducible: bool,
}

impl InducedRep {
    /// Builds the induced representation. A reducible `sigma` is accepted
    /// with a warning; only the orthogonality statements need irreducibility.
    pub fn new(sigma: Arc<UnitaryRep>) -> Self {
        let cosets = CosetStructure::new(sigma.subgroup().clone());
        let weights = HaarWeights::new(sigma.subgroup());
        let dim = cosets.count() * sigma.dim();
        let source_irreducible = sigma.is_irreducible(crate::repr::DEFAULT_TOLERANCE);
        if !source_irreducible {
            warn!(
                "inducing from reducible representation {} (character norm {:.6})",
                sigma.label(),
                sigma.irreducibility_index()
            );
        }
        let opcache = (0..cosets.group().order())
            .map(|_| OnceLock::new())
            .collect();
        Self {
            sigma,
            cosets,
            weights,
            dim,
            opcache,
            source_irreducible,
        }
    }

    pub fn sigma(&self) -> &Arc<UnitaryRep> {
        &self.sigma
    }

    pub fn label(&self) -> &str {
        self.sigma.label()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.cosets.group()
    }

    pub fn cosets(&self) -> &CosetStructure {
        &self.cosets
    }

    pub fn weights(&self) -> &HaarWeights {
        &self.weights
    }

    /// `N = [G:K] * d_sigma`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d_sigma`, the dimension of the inducing representation.
    pub fn d_sigma(&self) -> usize {
        self.sigma.dim()
    }

    pub fn source_irreducible(&self) -> bool {
        self.source_irreducible
    }

    /// `(coset, sigma-index)` of basis index `i`.
    pub fn basis_pair(&self, i: usize) -> (usize, usize) {
        (i / self.d_sigma(), i % self.d_sigma())
    }

    /// `theta_i(g)`.
    pub fn theta(&self, i: usize, g: usize) -> CVec {
        let d = self.d_sigma();
        let (r, s) = self.basis_pair(i);
        let (rg, k) = self.cosets.factor(g);
        if rg != r {
            return CVec::zeros(d);
        }
        let kinv = self.group().inv(k);
        self.sigma.mat(kinv).column(s).into_owned()
    }

    /// The basis vectors as equivariant functions.
    pub fn basis(&self) -> Vec<EquivariantFunction> {
        (0..self.dim)
            .map(|i| EquivariantFunction {
                sigma: self.sigma.clone(),
                values: self.group().elements().map(|g| self.theta(i, g)).collect(),
            })
            .collect()
    }

    /// `<u, v> = sum_r mu <u(g_r), v(g_r)>`.
    pub fn inner(&self, u: &EquivariantFunction, v: &EquivariantFunction) -> Complex64 {
        let mu = self.weights.mu_f64();
        self.cosets
            .reps()
            .iter()
            .map(|&g| linalg::inner(u.value(g), v.value(g)) * mu)
            .sum()
    }

    /// `(U_t u)(g) = u(t^{-1} g)`.
    pub fn translate(&self, t: usize, u: &EquivariantFunction) -> EquivariantFunction {
        let g = self.group();
        let tinv = g.inv(t);
        EquivariantFunction {
            sigma: u.sigma.clone(),
            values: g
                .elements()
                .map(|x| u.value(g.mul(tinv, x)).clone())
                .collect(),
        }
    }

    /// `u_ij(t) = <U_t theta_j, theta_i> = sum_r mu <theta_j(t^{-1} g_r), theta_i(g_r)>`.
    pub fn coefficient(&self, t: usize, i: usize, j: usize) -> Result<Complex64> {
        if i >= self.dim || j >= self.dim {
            return Err(Error::CoefficientIndex {
                i,
                j,
                dim: self.dim,
            });
        }
        self.group().check_index(t)?;
        Ok(self.coefficient_unchecked(t, i, j))
    }

    fn coefficient_unchecked(&self, t: usize, i: usize, j: usize) -> Complex64 {
        let g = self.group();
        let tinv = g.inv(t);
        let mu = self.weights.mu_f64();
        self.cosets
            .reps()
            .iter()
            .map(|&gr| {
                let a = self.theta(j, g.mul(tinv, gr));
                let b = self.theta(i, gr);
                linalg::inner(&a, &b) * mu
            })
            .sum()
    }

    /// Matrix of `U_t` in the canonical basis, `(i, j) -> u_ij(t)`. Memoized.
    pub fn operator(&self, t: usize) -> &CMat {
        self.opcache[t].get_or_init(|| {
            CMat::from_fn(self.dim, self.dim, |i, j| {
                self.coefficient_unchecked(t, i, j)
            })
        })
    }

    /// Character of the induced representation, indexed by element of `G`.
    pub fn character(&self) -> Vec<Complex64> {
        self.group()
            .elements()
            .map(|t| self.operator(t).trace())
            .collect()
    }

    /// `(1/|G|) sum_t |chi_U(t)|^2`; 1 exactly when `U` is irreducible.
    pub fn irreducibility_index(&self) -> f64 {
        let n = self.group().order() as f64;
        self.character().iter().map(|c| c.norm_sqr()).sum::<f64>() / n
    }

    pub fn is_irreducible(&self, tol: f64) -> bool {
        (self.irreducibility_index() - 1.0).abs() <= tol
    }

    /// `(1/|G|) sum_t chi_U(t) conj(chi_V(t))`: the intertwining number.
    pub fn character_pairing(&self, other: &InducedRep) -> Result<Complex64> {
        self.same_group(other)?;
        let n = self.group().order() as f64;
        Ok(self
            .character()
            .iter()
            .zip(other.character())
            .map(|(a, b)| a * b.conj() / n)
            .sum())
    }

    /// True when the two induced representations have equal characters.
    pub fn is_equivalent_to(&self, other: &InducedRep, tol: f64) -> Result<bool> {
        self.same_group(other)?;
        if self.dim != other.dim {
            return Ok(false);
        }
        Ok(self
            .character()
            .iter()
            .zip(other.character())
            .all(|(a, b)| (a - b).norm() <= tol))
    }

    fn same_group(&self, other: &InducedRep) -> Result<()> {
        if Arc::ptr_eq(self.group(), other.group()) || **self.group() == **other.group() {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Coefficient functions of the basis.
    pub fn alpha(&self) -> AlphaTable {
        let d = self.d_sigma();
        let order = self.group().order();
        let mut data = vec![Complex64::new(0.0, 0.0); self.dim * order * d];
        for i in 0..self.dim {
            for g in 0..order {
                let v = self.theta(i, g);
                for s in 0..d {
                    data[(i * order + g) * d + s] = v[s];
                }
            }
        }
        AlphaTable {
            basis_dim: self.dim,
            order,
            d_sigma: d,
            data,
        }
    }

    /// Worst homomorphism, unitarity and identity residuals over all of `G`.
    pub fn contract_residuals(&self) -> ContractResiduals {
        let g = self.group();
        let id = CMat::identity(self.dim, self.dim);
        let identity_exact = *self.operator(g.identity()) == id;
        let mut unitarity: f64 = 0.0;
        let mut homomorphism: f64 = 0.0;
        for t1 in g.elements() {
            unitarity = unitarity.max(linalg::unitarity_residual(self.operator(t1)));
            for t2 in g.elements() {
                let lhs = self.operator(g.mul(t1, t2));
                let rhs = self.operator(t1) * self.operator(t2);
                homomorphism = homomorphism.max(linalg::max_abs_diff(lhs, &rhs));
            }
        }
        ContractResiduals {
            identity_exact,
            unitarity,
            homomorphism,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractResiduals {
    pub identity_exact: bool,
    pub unitarity: f64,
    pub homomorphism: f64,
}

/// `alpha_is(g)`: component `s` of `theta_i(g)` in the standard basis.
#[derive(Debug, Clone)]
pub struct AlphaTable {
    basis_dim: usize,
    order: usize,
    d_sigma: usize,
    data: Vec<Complex64>,
}

impl AlphaTable {
    #[inline]
    pub fn get(&self, i: usize, s: usize, g: usize) -> Complex64 {
        self.data[(i * self.order + g) * self.d_sigma + s]
    }

    /// `sum_s alpha_is(g) xi_s`.
    pub fn reconstruct(&self, i: usize, g: usize) -> CVec {
        CVec::from_fn(self.d_sigma, |s, _| self.get(i, s, g))
    }

    pub fn basis_dim(&self) -> usize {
        self.basis_dim
    }

    pub fn d_sigma(&self) -> usize {
        self.d_sigma
    }
}

/// The tensor `c_ijlm` computed from the coefficient functions `alpha`.
///
/// The `t`-integration runs over all of `G` with weight `lambda`, and the
/// `g`, `h` integrations over coset representatives with weight `mu`:
///
/// `c_ijlm = d * sum_t lambda sum_{r,s} [sum_g mu alpha_js(t^-1 g) conj(alpha_is(g))]
///                                     * conj[sum_h mu alpha_mr(t^-1 h) conj(alpha_lr(h))]`
///
/// so that `sum_t lambda u_ij(t) conj(u_lm(t)) = c_ijlm / d`.
#[derive(Debug, Clone)]
pub struct CTensor {
    n: usize,
    data: Vec<Complex64>,
}

impl CTensor {
    pub fn compute(u: &InducedRep) -> Self {
        let alpha = u.alpha();
        let table = alpha_coefficients(u, &alpha, |a, b| a * b.conj());
        let n = u.dim();
        let lambda = u.weights().lambda_f64();
        let d = u.d_sigma() as f64;
        let order = u.group().order();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for t in 0..order {
                            acc += table[(t * n + i) * n + j] * table[(t * n + l) * n + m].conj();
                        }
                        data[((i * n + j) * n + l) * n + m] = acc * lambda * d;
                    }
                }
            }
        }
        Self { n, data }
    }

    /// The same triple sum with the index and conjugation pattern read
    /// literally as `alpha_js(t^-1 g) conj(alpha_ir(g)) alpha_ms(t^-1 h) conj(alpha_lr(h))`.
    /// It does not reproduce the integral of `u_ij conj(u_lm)`; kept for reporting.
    pub fn compute_literal(u: &InducedRep) -> Self {
        let alpha = u.alpha();
        let n = u.dim();
        let d = u.d_sigma();
        let g = u.group();
        let reps = u.cosets().reps();
        let lambda = u.weights().lambda_f64();
        let mu = u.weights().mu_f64();
        // partial[t][a][b][s][r] = sum_g mu alpha_as(t^-1 g) conj(alpha_br(g))
        let idx = |t: usize, a: usize, b: usize, s: usize, r: usize| {
            (((t * n + a) * n + b) * d + s) * d + r
        };
        let mut partial = vec![Complex64::new(0.0, 0.0); g.order() * n * n * d * d];
        for t in g.elements() {
            let tinv = g.inv(t);
            for a in 0..n {
                for b in 0..n {
                    for s in 0..d {
                        for r in 0..d {
                            partial[idx(t, a, b, s, r)] = reps
                                .iter()
                                .map(|&x| {
                                    alpha.get(a, s, g.mul(tinv, x)) * alpha.get(b, r, x).conj() * mu
                                })
                                .sum();
                        }
                    }
                }
            }
        }
        let mut data = vec![Complex64::new(0.0, 0.0); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for t in g.elements() {
                            for r in 0..d {
                                for s in 0..d {
                                    acc +=
                                        partial[idx(t, j, i, s, r)] * partial[idx(t, m, l, s, r)];
                                }
                            }
                        }
                        data[((i * n + j) * n + l) * n + m] = acc * lambda;
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn get(&self, i: usize, j: usize, l: usize, m: usize) -> Complex64 {
        let n = self.n;
        self.data[((i * n + j) * n + l) * n + m]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `max |c_ijlm - delta_il delta_jm|`.
    pub fn deviation_from_identity(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let target = if i == l && j == m { 1.0 } else { 0.0 };
                        worst = worst.max((self.get(i, j, l, m) - target).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Single entry of [`CTensor::compute`].
pub fn c_tensor(u: &InducedRep, i: usize, j: usize, l: usize, m: usize) -> Result<Complex64> {
    let n = u.dim();
    for x in [i, j, l, m] {
        if x >= n {
            return Err(Error::CoefficientIndex { i: x, j: x, dim: n });
        }
    }
    let alpha = u.alpha();
    let table = alpha_coefficients(u, &alpha, |a, b| a * b.conj());
    let lambda = u.weights().lambda_f64();
    let acc: Complex64 = u
        .group()
        .elements()
        .map(|t| table[(t * n + i) * n + j] * table[(t * n + l) * n + m].conj())
        .sum();
    Ok(acc * lambda * u.d_sigma() as f64)
}

/// `table[(t*n + i)*n + j] = sum_g mu sum_s pair(alpha_js(t^-1 g), alpha_is(g))`.
fn alpha_coefficients(
    u: &InducedRep,
    alpha: &AlphaTable,
    pair: impl Fn(Complex64, Complex64) -> Complex64,
) -> Vec<Complex64> {
    let n = u.dim();
    let d = u.d_sigma();
    let g = u.group();
    let mu = u.weights().mu_f64();
    let mut table = vec![Complex64::new(0.0, 0.0); g.order() * n * n];
    for t in g.elements() {
        let tinv = g.inv(t);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for &x in u.cosets().reps() {
                    let y = g.mul(tinv, x);
                    for s in 0..d {
                        acc += pair(alpha.get(j, s, y), alpha.get(i, s, x));
                    }
                }
                table[(t * n + i) * n + j] = acc * mu;
            }
        }
    }
    table
}

/// Cross-integrals `sum_t lambda u_ij(t) conj(v_lm(t))` between two inductions.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    pub left: String,
    pub right: String,
    pub same_sigma: bool,
    pub both_irreducible: bool,
    pub equivalent_inductions: bool,
    /// Worst deviation from the expected value: `delta delta / d` (or `c / d`
    /// for a reducible induction) when `same_sigma`, zero otherwise.
    pub max_residual: f64,
    pub max_abs_integral: f64,
    /// `(i, j, l, m, value)` at the worst residual.
    pub witness: Option<(usize, usize, usize, usize, Complex64)>,
    pub pass: bool,
}

/// Compares the integrals of products of matrix coefficients of `u` and `v`
/// against the orthogonality pattern.
pub fn induced_orthogonality_check(
    u: &InducedRep,
    v: &InducedRep,
    tol: f64,
) -> Result<OrthogonalityReport> {
    u.same_group(v)?;
    let same_sigma = Arc::ptr_eq(u.sigma(), v.sigma())
        || (u.label() == v.label()
            && u.sigma()
                .max_difference(v.sigma())
                .is_some_and(|d| d == 0.0));
    let both_irreducible = u.is_irreducible(1e-9) && v.is_irreducible(1e-9);
    let equivalent_inductions = u.is_equivalent_to(v, 1e-9)?;
    let lambda = u.weights().lambda_f64();
    let d = u.d_sigma() as f64;
    let ctensor = (same_sigma && !both_irreducible).then(|| CTensor::compute(u));

    let (n1, n2) = (u.dim(), v.dim());
    let g = u.group();
    let mut max_residual: f64 = 0.0;
    let mut max_abs_integral: f64 = 0.0;
    let mut witness = None;
    for i in 0..n1 {
        for j in 0..n1 {
            for l in 0..n2 {
                for m in 0..n2 {
                    let integral: Complex64 = g
                        .elements()
                        .map(|t| u.operator(t)[(i, j)] * v.operator(t)[(l, m)].conj() * lambda)
                        .sum();
                    let target = match (&ctensor, same_sigma) {
                        (Some(c), _) => c.get(i, j, l, m) / d,
                        (None, true) if i == l && j == m => Complex64::new(1.0 / d, 0.0),
                        _ => Complex64::new(0.0, 0.0),
                    };
                    let residual = (integral - target).norm();
                    max_abs_integral = max_abs_integral.max(integral.norm());
                    if residual > max_residual || witness.is_none() {
                        max_residual = max_residual.max(residual);
                        witness = Some((i, j, l, m, integral));
                    }
                }
            }
        }
    }
    Ok(OrthogonalityReport {
        left: u.label().to_string(),
        right: v.label().to_string(),
        same_sigma,
        both_irreducible,
        equivalent_inductions,
        max_residual,
        max_abs_integral,
        witness,
        pass: max_residual <= tol,
    })
}
