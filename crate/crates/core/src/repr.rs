//! Unitary matrix representations of a subgroup `K`.
//!
//! Representation spaces are `C^d` with the standard basis, so the matrix
//! coefficient `<L_k xi_j, xi_i>` is the `(i, j)` entry of the matrix of `k`.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{HaarWeights, Subgroup};
use crate::linalg::{self, CMat};

/// Default absolute tolerance for representation checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A representation `k -> L_k` of `K` by unitary `dim x dim` matrices.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    label: String,
    subgroup: Arc<Subgroup>,
    dim: usize,
    /// Indexed by subgroup member rank.
    mats: Vec<CMat>,
}

impl UnitaryRep {
    /// Validates a family of matrices indexed by parent-group element.
    pub fn new(
        label: impl Into<String>,
        subgroup: Arc<Subgroup>,
        matrices: &BTreeMap<usize, CMat>,
        tol: f64,
    ) -> Result<Self> {
        let dim = matrices
            .values()
            .next()
            .map(|m| m.nrows())
            .ok_or(Error::MissingMatrix {
                element: subgroup.parent().identity(),
            })?;
        if dim == 0 {
            return Err(Error::ShapeMismatch(
                "zero-dimensional representation".into(),
            ));
        }
        for &el in matrices.keys() {
            subgroup.parent().check_index(el)?;
            if !subgroup.contains(el) {
                return Err(Error::NotInSubgroup { element: el });
            }
        }
        let mut mats = Vec::with_capacity(subgroup.order());
        for &k in subgroup.members() {
            let m = matrices
                .get(&k)
                .ok_or(Error::MissingMatrix { element: k })?;
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::BadMatrixShape {
                    element: k,
                    rows: m.nrows(),
                    cols: m.ncols(),
                    dim,
                });
            }
            mats.push(m.clone());
        }
        let rep = Self {
            label: label.into(),
            subgroup,
            dim,
            mats,
        };
        rep.verify(tol)?;
        Ok(rep)
    }

    /// Extends images of generators to all of `K` along breadth-first words,
    /// then validates the result.
    pub fn from_generators(
        label: impl Into<String>,
        subgroup: Arc<Subgroup>,
        images: &[(usize, CMat)],
        tol: f64,
    ) -> Result<Self> {
        let g = subgroup.parent().clone();
        let dim = images.first().map(|(_, m)| m.nrows()).unwrap_or(1);
        let mut found: BTreeMap<usize, CMat> = BTreeMap::new();
        let e = g.identity();
        found.insert(e, CMat::identity(dim, dim));
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for (gen, m) in images {
                if !subgroup.contains(*gen) {
                    return Err(Error::NotInSubgroup { element: *gen });
                }
                let y = g.mul(x, *gen);
                if !found.contains_key(&y) {
                    let my = &found[&x] * m;
                    found.insert(y, my);
                    queue.push_back(y);
                }
            }
        }
        Self::new(label, subgroup, &found, tol)
    }

    fn verify(&self, tol: f64) -> Result<()> {
        let g = self.subgroup.parent();
        let id = CMat::identity(self.dim, self.dim);
        let residual = linalg::max_abs_diff(self.mat(g.identity()), &id);
        if residual > tol {
            return Err(Error::BadIdentity { residual });
        }
        for &k in self.subgroup.members() {
            let residual = linalg::unitarity_residual(self.mat(k));
            if residual > tol {
                return Err(Error::NotUnitary {
                    element: k,
                    residual,
                });
            }
        }
        for &k1 in self.subgroup.members() {
            for &k2 in self.subgroup.members() {
                let lhs = self.mat(g.mul(k1, k2));
                let rhs = self.mat(k1) * self.mat(k2);
                let residual = linalg::max_abs_diff(lhs, &rhs);
                if residual > tol {
                    return Err(Error::NotHomomorphism { k1, k2, residual });
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.subgroup
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of the subgroup element `k` (a parent-group index).
    ///
    /// Panics if `k` is not in the subgroup.
    pub fn mat(&self, k: usize) -> &CMat {
        let r = self
            .subgroup
            .rank_of(k)
            .unwrap_or_else(|| panic!("element {k} is not in the subgroup"));
        &self.mats[r]
    }

    /// Matrices keyed by parent-group element.
    pub fn matrices(&self) -> BTreeMap<usize, CMat> {
        self.subgroup
            .members()
            .iter()
            .zip(&self.mats)
            .map(|(&k, m)| (k, m.clone()))
            .collect()
    }

    /// Entrywise complex conjugate representation.
    pub fn conjugate(&self) -> Self {
        Self {
            label: format!("conj({})", self.label),
            subgroup: self.subgroup.clone(),
            dim: self.dim,
            mats: self.mats.iter().map(linalg::conj).collect(),
        }
    }

    /// `L_ij(k) = <L_k xi_j, xi_i>`, zero-based indices.
    pub fn matrix_coefficient(&self, k: usize, i: usize, j: usize) -> Result<Complex64> {
        if i >= self.dim || j >= self.dim {
            return Err(Error::CoefficientIndex {
                i,
                j,
                dim: self.dim,
            });
        }
        if !self.subgroup.contains(k) {
            return Err(Error::NotInSubgroup { element: k });
        }
        Ok(self.mat(k)[(i, j)])
    }

    /// Character values in subgroup member order.
    pub fn character(&self) -> Vec<Complex64> {
        self.mats.iter().map(|m| m.trace()).collect()
    }

    /// `sum_k nu |chi(k)|^2`; equals 1 exactly for irreducible representations.
    pub fn irreducibility_index(&self) -> f64 {
        let nu = HaarWeights::new(&self.subgroup).nu_f64();
        self.character().iter().map(|c| nu * c.norm_sqr()).sum()
    }

    pub fn is_irreducible(&self, tol: f64) -> bool {
        (self.irreducibility_index() - 1.0).abs() <= tol
    }

    /// `sum_k nu chi_L(k) conj(chi_M(k))`, the multiplicity pairing of characters.
    pub fn character_pairing(&self, other: &Self) -> Result<Complex64> {
        self.same_subgroup(other)?;
        let nu = HaarWeights::new(&self.subgroup).nu_f64();
        Ok(self
            .character()
            .iter()
            .zip(other.character())
            .map(|(a, b)| a * b.conj() * nu)
            .sum())
    }

    fn same_subgroup(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.subgroup, &other.subgroup) || *self.subgroup == *other.subgroup {
            Ok(())
        } else {
            Err(Error::SubgroupMismatch)
        }
    }

    /// Largest entrywise difference from another representation of the same dimension.
    pub fn max_difference(&self, other: &Self) -> Option<f64> {
        if self.dim != other.dim || self.same_subgroup(other).is_err() {
            return None;
        }
        Some(
            self.mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| linalg::max_abs_diff(a, b))
                .fold(0.0, f64::max),
        )
    }

    /// Searches for an invertible intertwiner `T` with `T L_k = M_k T`.
    ///
    /// `T` is the average `sum_k nu M_k X L_k^{-1}` of a random seed matrix `X`;
    /// three seeds are tried. The returned matrix is scaled to Frobenius norm
    /// `sqrt(dim)`, so it is unitary when both representations are irreducible.
    pub fn equivalence_check<R: Rng + ?Sized>(
        &self,
        other: &Self,
        rng: &mut R,
        tol: f64,
    ) -> Result<Option<CMat>> {
        self.same_subgroup(other)?;
        if self.dim != other.dim {
            return Ok(None);
        }
        let d = self.dim;
        let nu = HaarWeights::new(&self.subgroup).nu_f64();
        for _ in 0..3 {
            let x = linalg::random_mat(rng, d, d);
            let mut t = CMat::zeros(d, d);
            for (l, m) in self.mats.iter().zip(&other.mats) {
                t += m * &x * l.adjoint() * Complex64::new(nu, 0.0);
            }
            let fro = t.norm();
            if fro < 1e-8 {
                continue;
            }
            t *= Complex64::new((d as f64).sqrt() / fro, 0.0);
            if linalg::inverse_condition(&t) < 1e-6 {
                continue;
            }
            let residual = self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(l, m)| linalg::max_abs_diff(&(&t * l), &(m * &t)))
                .fold(0.0, f64::max);
            if residual <= tol {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Largest deviation of `sum_k nu L_ij(k) conj(M_lm(k))` from the Schur target.
    ///
    /// The target is `delta_il delta_jm / d` when the two representations are
    /// identical and `0` when they are inequivalent. Both must be irreducible.
    pub fn schur_check(&self, other: &Self, tol: f64) -> Result<f64> {
        self.same_subgroup(other)?;
        for rep in [self, other] {
            if !rep.is_irreducible(tol) {
                return Err(Error::NotIrreducible {
                    index: rep.irreducibility_index(),
                });
            }
        }
        let identical = self.max_difference(other).is_some_and(|d| d <= tol);
        if !identical && other.character_pairing(self)?.norm() > 0.5 {
            return Err(Error::EquivalentRepresentations);
        }
        let nu = HaarWeights::new(&self.subgroup).nu_f64();
        let (d1, d2) = (self.dim, other.dim);
        let mut worst: f64 = 0.0;
        for i in 0..d1 {
            for j in 0..d1 {
                for l in 0..d2 {
                    for m in 0..d2 {
                        let integral: Complex64 = self
                            .mats
                            .iter()
                            .zip(&other.mats)
                            .map(|(a, b)| a[(i, j)] * b[(l, m)].conj() * nu)
                            .sum();
                        let target = if identical && i == l && j == m {
                            1.0 / d1 as f64
                        } else {
                            0.0
                        };
                        worst = worst.max((integral - target).norm());
                    }
                }
            }
        }
        Ok(worst)
    }
}

/// A finite set of pairwise inequivalent irreducible representations of one subgroup.
#[derive(Debug, Clone)]
pub struct IrrepFamily {
    reps: Vec<UnitaryRep>,
}

impl IrrepFamily {
    pub fn new(reps: Vec<UnitaryRep>, tol: f64) -> Result<Self> {
        for (a, rep) in reps.iter().enumerate() {
            if !rep.is_irreducible(tol) {
                return Err(Error::NotIrreducible {
                    index: rep.irreducibility_index(),
                });
            }
            for other in &reps[..a] {
                if rep.character_pairing(other)?.norm() > 0.5 {
                    return Err(Error::EquivalentRepresentations);
                }
            }
        }
        Ok(Self { reps })
    }

    pub fn reps(&self) -> &[UnitaryRep] {
        &self.reps
    }

    pub fn labels(&self) -> Vec<&str> {
        self.reps.iter().map(UnitaryRep::label).collect()
    }

    /// `sum d_sigma^2`; equals `|K|` exactly when the family is the full dual.
    pub fn dimension_count(&self) -> usize {
        self.reps.iter().map(|r| r.dim() * r.dim()).sum()
    }
}
