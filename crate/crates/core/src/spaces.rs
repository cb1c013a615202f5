//! Schatten-type norms on spectral fields and the spaces they define.
//!
//! For `1 <= p < inf`, `||Phi||_p^p = sum_sigma d_sigma sum_ij ||Phi(sigma)_ij||_A^p`.
//! The sup norm takes a block norm; the default is the largest entry norm.

use log::debug;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::transform::{SpectralBlock, SpectralField};

/// Exponent of a spectral norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 || !p.is_finite() {
            return Err(Error::InvalidP(p));
        }
        Ok(Exponent::Finite(p))
    }

    fn rank(&self) -> f64 {
        match self {
            Exponent::Finite(p) => *p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Norm used on a single block for the sup norm and for truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockNorm {
    /// `max_ij ||Phi_ij||_A`.
    #[default]
    EntryMax,
    /// `sup { ||Phi(u, v)||_A : ||u|| = ||v|| = 1 }`.
    Operator,
}

/// A computed spectral norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SNorm {
    pub exponent: Exponent,
    pub value: f64,
}

pub fn block_norm(block: &SpectralBlock, kind: BlockNorm) -> f64 {
    match kind {
        BlockNorm::EntryMax => block.entries().iter().map(linalg::norm).fold(0.0, f64::max),
        BlockNorm::Operator => operator_norm(block),
    }
}

/// `M_w = sum_k Phi_ij[k] conj(w_k)`: the scalar form `<Phi(., .), w>_A`.
fn contract(block: &SpectralBlock, w: &CVec) -> CMat {
    let n = block.size();
    DMatrix::from_fn(n, n, |i, j| linalg::inner(block.get(i, j), w))
}

/// Largest singular value of `m` with its left and right singular vectors.
fn top_singular(m: &CMat) -> (f64, CVec, CVec) {
    let svd = m.clone().svd(true, true);
    let (k, s) =
        svd.singular_values.iter().enumerate().fold(
            (0, 0.0),
            |acc, (k, &s)| if s > acc.1 { (k, s) } else { acc },
        );
    let u = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let left: CVec = u.column(k).into_owned();
    let right: CVec = v_t.row(k).transpose().map(|z| z.conj());
    (s, left, right)
}

/// Operator norm of a vector-valued sesquilinear block, by alternating
/// maximisation over the unit vector `w` in `A`.
///
/// `||Phi|| = max_w ||M_w||_op` where `M_w` is the scalar contraction against
/// `w`. For fixed `(u, v)` the best `w` is `Phi(u, v)/||Phi(u, v)||`. Exact when
/// `dim A = 1`; otherwise a lower bound, capped by the Frobenius bound.
pub fn operator_norm(block: &SpectralBlock) -> f64 {
    let n = block.size();
    let dim = block.space().dim();
    if n == 0 || block.is_zero() {
        return 0.0;
    }
    let frob: f64 = block
        .entries()
        .iter()
        .map(|c| c.norm_squared())
        .sum::<f64>()
        .sqrt();
    if dim == 1 {
        let w = CVec::from_element(1, Complex64::new(1.0, 0.0));
        return top_singular(&contract(block, &w)).0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut starts: Vec<CVec> = (0..dim)
        .map(|k| {
            let mut e = CVec::zeros(dim);
            e[k] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    // Starting from the largest entry makes the result at least the entry norm,
    // since each step does not decrease ||Phi(u, v)||.
    let largest = block
        .entries()
        .iter()
        .max_by(|a, b| linalg::norm(a).total_cmp(&linalg::norm(b)))
        .expect("nonempty block");
    starts.push(largest / Complex64::new(linalg::norm(largest), 0.0));
    for _ in 0..4 {
        let v = linalg::random_vec(&mut rng, dim);
        let nv = linalg::norm(&v);
        starts.push(v / Complex64::new(nv, 0.0));
    }
    let mut best = 0.0f64;
    for mut w in starts {
        let mut value = 0.0;
        for _ in 0..100 {
            // <Phi(u, v), w> = u^T M_w conj(v), maximised at u = conj(left), v = conj(right).
            let (s, left, right) = top_singular(&contract(block, &w));
            let x = block.evaluate(&left.map(|z| z.conj()), &right.map(|z| z.conj()));
            let nx = linalg::norm(&x);
            if nx == 0.0 {
                value = s;
                break;
            }
            w = x / Complex64::new(nx, 0.0);
            let done = (nx - value).abs() <= 1e-10 * nx.max(1.0);
            value = nx;
            if done {
                break;
            }
        }
        best = best.max(value);
    }
    if best > frob * (1.0 + 1e-12) {
        debug!("operator norm {best} exceeded the Frobenius bound {frob}");
        best = frob;
    }
    best
}

fn check_exponent(p: Exponent) -> Result<()> {
    if let Exponent::Finite(p) = p {
        Exponent::finite(p)?;
    }
    Ok(())
}

/// `||Phi||_inf` with the given block norm.
pub fn sup_norm(field: &SpectralField, kind: BlockNorm) -> f64 {
    field
        .blocks()
        .map(|b| block_norm(b, kind))
        .fold(0.0, f64::max)
}

/// `||Phi||_p`, with the entrywise sup norm for `p = inf`.
pub fn snorm(field: &SpectralField, p: Exponent) -> Result<SNorm> {
    snorm_with(field, p, BlockNorm::EntryMax)
}

pub fn snorm_with(field: &SpectralField, p: Exponent, kind: BlockNorm) -> Result<SNorm> {
    check_exponent(p)?;
    let value = match p {
        Exponent::Infinity => sup_norm(field, kind),
        Exponent::Finite(p) => field
            .blocks()
            .map(|b| {
                b.weight() as f64
                    * b.entries()
                        .iter()
                        .map(|c| linalg::norm(c).powf(p))
                        .sum::<f64>()
            })
            .sum::<f64>()
            .powf(1.0 / p),
    };
    Ok(SNorm { exponent: p, value })
}

/// `<Phi, Psi> = sum_sigma d_sigma sum_ij <Phi_ij, Psi_ij>_A`.
pub fn s2_inner(a: &SpectralField, b: &SpectralField) -> Result<Complex64> {
    if a.labels() != b.labels() || a.space() != b.space() {
        return Err(Error::ShapeMismatch(
            "inner product of fields with different shapes".into(),
        ));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.blocks().zip(b.blocks()) {
        if x.size() != y.size() {
            return Err(Error::ShapeMismatch(format!(
                "blocks for {} differ in size",
                x.label()
            )));
        }
        let s: Complex64 = x
            .entries()
            .iter()
            .zip(y.entries())
            .map(|(u, v)| linalg::inner(u, v))
            .sum();
        acc += s * x.weight() as f64;
    }
    Ok(acc)
}

/// Spaces of spectral fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceClass {
    /// Finitely many nonzero blocks.
    S00,
    /// Blocks vanishing at infinity.
    S0,
    Sp(f64),
    Sinf,
}

/// Result of a membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// Labels of blocks with norm above the threshold.
    pub support: Vec<String>,
    pub norm: Option<f64>,
}

/// Membership of `field` in `class`. Blocks with norm at most `epsilon` count
/// as zero. Over a finite index set every field lies in every space; the test
/// still reports the support and the relevant norm.
pub fn membership(field: &SpectralField, class: SpaceClass, epsilon: f64) -> Result<Membership> {
    let support: Vec<String> = field
        .blocks()
        .filter(|b| block_norm(b, BlockNorm::EntryMax) > epsilon)
        .map(|b| b.label().to_string())
        .collect();
    let norm = match class {
        SpaceClass::S00 | SpaceClass::S0 => None,
        SpaceClass::Sp(p) => Some(snorm(field, Exponent::finite(p)?)?.value),
        SpaceClass::Sinf => Some(sup_norm(field, BlockNorm::EntryMax)),
    };
    let member = norm.is_none_or(f64::is_finite);
    Ok(Membership {
        member,
        support,
        norm,
    })
}

/// `||Phi||_q <= ||Phi||_p` for `p <= q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monotonicity {
    pub p: Exponent,
    pub q: Exponent,
    pub norm_p: f64,
    pub norm_q: f64,
    pub holds: bool,
}

pub fn monotonicity_check(
    field: &SpectralField,
    p: Exponent,
    q: Exponent,
    tol: f64,
) -> Result<Monotonicity> {
    check_exponent(p)?;
    check_exponent(q)?;
    let (p, q) = if p.rank() <= q.rank() { (p, q) } else { (q, p) };
    let norm_p = snorm(field, p)?.value;
    let norm_q = snorm(field, q)?.value;
    Ok(Monotonicity {
        p,
        q,
        norm_p,
        norm_q,
        holds: norm_q <= norm_p * (1.0 + tol) + tol,
    })
}

/// `phi_n`: keeps the blocks with norm at least `1/n` and zeroes the rest, so
/// that `||phi_n - phi||_inf < 1/n`.
pub fn truncate(field: &SpectralField, n: usize) -> Result<SpectralField> {
    truncate_with(field, n, BlockNorm::EntryMax)
}

pub fn truncate_with(field: &SpectralField, n: usize, kind: BlockNorm) -> Result<SpectralField> {
    if n == 0 {
        return Err(Error::ShapeMismatch("truncation needs n >= 1".into()));
    }
    let threshold = 1.0 / n as f64;
    Ok(field.map_blocks(|b| {
        if block_norm(b, kind) >= threshold {
            b.clone()
        } else {
            b.scaled(Complex64::new(0.0, 0.0))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::induce::InducedRep;
    use crate::transform::CoefficientSpace;
    use std::sync::Arc;

    fn reps(names: &[&str]) -> Vec<Arc<InducedRep>> {
        let p = catalog::s3_a3();
        names
            .iter()
            .map(|s| {
                let r = catalog::rep_by_name(p.subgroup.clone(), s).unwrap();
                Arc::new(InducedRep::new(Arc::new(r)))
            })
            .collect()
    }

    fn space(d: usize) -> CoefficientSpace {
        CoefficientSpace::new(d).unwrap()
    }

    #[test]
    fn norms_of_simple_field() {
        let rs = reps(&["trivial", "cyclic:3:chi1"]);
        let mut field = SpectralField::zero(space(1), &rs).unwrap();
        let b = field.block_mut("trivial").unwrap();
        b.get_mut(0, 0)[0] = Complex64::new(3.0, 0.0);
        b.get_mut(1, 1)[0] = Complex64::new(0.0, 4.0);
        let s2 = snorm(&field, Exponent::Finite(2.0)).unwrap().value;
        assert!((s2 - 5.0).abs() < 1e-12);
        let s1 = snorm(&field, Exponent::Finite(1.0)).unwrap().value;
        assert!((s1 - 7.0).abs() < 1e-12);
        assert_eq!(snorm(&field, Exponent::Infinity).unwrap().value, 4.0);
        assert!((sup_norm(&field, BlockNorm::Operator) - 4.0).abs() < 1e-12);
        assert!(snorm(&field, Exponent::Finite(0.5)).is_err());
        assert!(Exponent::finite(f64::NAN).is_err());
    }

    #[test]
    fn operator_norm_matches_svd_in_scalar_case() {
        let rs = reps(&["cyclic:3:chi1"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let field = SpectralField::random(space(1), &rs, &mut rng).unwrap();
        let b = field.blocks().next().unwrap();
        let m = DMatrix::from_fn(2, 2, |i, j| b.get(i, j)[0]);
        let s = m.singular_values().max();
        assert!((operator_norm(b) - s).abs() < 1e-12);
    }

    #[test]
    fn operator_norm_vector_valued_diagonal() {
        // Phi(theta_0, theta_0) = e_0, Phi(theta_1, theta_1) = e_1: norm 1.
        let rs = reps(&["cyclic:3:chi1"]);
        let mut field = SpectralField::zero(space(2), &rs).unwrap();
        let b = field.block_mut("cyclic:3:chi1").unwrap();
        b.get_mut(0, 0)[0] = Complex64::new(1.0, 0.0);
        b.get_mut(1, 1)[1] = Complex64::new(1.0, 0.0);
        let b = field.blocks().next().unwrap();
        assert!((operator_norm(b) - 1.0).abs() < 1e-10);
        let mut field = SpectralField::zero(space(2), &rs).unwrap();
        let b = field.block_mut("cyclic:3:chi1").unwrap();
        b.get_mut(0, 1)[0] = Complex64::new(2.0, 0.0);
        b.get_mut(1, 0)[0] = Complex64::new(2.0, 0.0);
        let b = field.blocks().next().unwrap();
        assert!((operator_norm(b) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn s2_inner_properties() {
        let rs = reps(&["trivial", "cyclic:3:chi1"]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = SpectralField::random(space(2), &rs, &mut rng).unwrap();
        let b = SpectralField::random(space(2), &rs, &mut rng).unwrap();
        let ab = s2_inner(&a, &b).unwrap();
        let ba = s2_inner(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-12);
        let aa = s2_inner(&a, &a).unwrap();
        assert!(aa.im.abs() < 1e-12);
        let n2 = snorm(&a, Exponent::Finite(2.0)).unwrap().value;
        assert!((aa.re - n2 * n2).abs() < 1e-10);
        let c = Complex64::new(0.3, -1.2);
        assert!((s2_inner(&a.scaled(c), &b).unwrap() - c * ab).norm() < 1e-12);
        let other = SpectralField::random(space(2), &rs[..1], &mut rng).unwrap();
        assert!(matches!(s2_inner(&a, &other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn monotone_chain() {
        let rs = reps(&["trivial", "cyclic:3:chi1", "cyclic:3:chi2"]);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let f = SpectralField::random(space(2), &rs, &mut rng).unwrap();
            let ps = [1.0, 1.5, 2.0, 3.0, 7.0];
            for w in ps.windows(2) {
                let m =
                    monotonicity_check(&f, Exponent::Finite(w[0]), Exponent::Finite(w[1]), 1e-12)
                        .unwrap();
                assert!(m.holds);
            }
            let m =
                monotonicity_check(&f, Exponent::Finite(7.0), Exponent::Infinity, 1e-12).unwrap();
            assert!(m.holds);
        }
    }

    #[test]
    fn truncation_threshold() {
        let rs = reps(&["trivial", "cyclic:3:chi1", "cyclic:3:chi2"]);
        let mut field = SpectralField::zero(space(1), &rs).unwrap();
        field.block_mut("trivial").unwrap().get_mut(0, 0)[0] = Complex64::new(0.2, 0.0);
        field.block_mut("cyclic:3:chi1").unwrap().get_mut(1, 0)[0] = Complex64::new(5.0, 0.0);
        field.block_mut("cyclic:3:chi2").unwrap().get_mut(0, 1)[0] = Complex64::new(0.0, 0.5);
        let t = truncate(&field, 2).unwrap();
        assert!(t.block("trivial").unwrap().is_zero());
        assert!(!t.block("cyclic:3:chi2").unwrap().is_zero());
        let err = snorm(&field.minus(&t).unwrap(), Exponent::Infinity)
            .unwrap()
            .value;
        assert!((err - 0.2).abs() < 1e-15);
        assert!(truncate(&field, 0).is_err());
        assert_eq!(
            truncate(&field, 1000)
                .unwrap()
                .max_distance(&field)
                .unwrap(),
            0.0
        );

        let mut small = SpectralField::zero(space(1), &rs).unwrap();
        small.block_mut("trivial").unwrap().get_mut(1, 1)[0] = Complex64::new(0.9, 0.0);
        assert!(truncate(&small, 1).unwrap().blocks().all(|b| b.is_zero()));

        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = SpectralField::random(space(2), &rs, &mut rng)
            .unwrap()
            .scaled(Complex64::new(0.3, 0.0));
        for n in 1..=100 {
            let t = truncate(&f, n).unwrap();
            let err = snorm(&f.minus(&t).unwrap(), Exponent::Infinity)
                .unwrap()
                .value;
            assert!(err < 1.0 / n as f64);
            let m = membership(&t, SpaceClass::S0, 1.0 / n as f64).unwrap();
            assert!(m.support.iter().all(|l| t.block(l).is_some()));
        }

        let m = membership(&field, SpaceClass::S00, 0.0).unwrap();
        assert_eq!(m.support.len(), 3);
        assert!(m.member);
        let m = membership(&field, SpaceClass::S0, 1.0).unwrap();
        assert_eq!(m.support, vec!["cyclic:3:chi1".to_string()]);
        let m = membership(&field, SpaceClass::Sp(2.0), 0.0).unwrap();
        assert!((m.norm.unwrap() - (0.04f64 + 25.0 + 0.25).sqrt()).abs() < 1e-12);
        let zero = SpectralField::zero(space(1), &rs).unwrap();
        for class in [
            SpaceClass::S00,
            SpaceClass::S0,
            SpaceClass::Sp(1.0),
            SpaceClass::Sinf,
        ] {
            let m = membership(&zero, class, 0.0).unwrap();
            assert!(m.member && m.support.is_empty());
        }
    }
}
