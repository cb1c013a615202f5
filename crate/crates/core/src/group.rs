//! Finite groups given by multiplication tables, subgroups, left cosets and
//! the three compatible Haar-type weight systems.
//!
//! Weights are fixed as follows: `nu = 1/|K|` on the subgroup (so `nu(K) = 1`),
//! counting measure `mu` on `G/K`, and `lambda = mu * nu = 1/|K|` on `G`.
//! With this choice the quotient integration formula
//! `sum_G f lambda = sum_{G/K} mu sum_K f(g_r k) nu` holds exactly.

use std::collections::VecDeque;
use std::ops::Add;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::CVec;

/// Largest order accepted; associativity is checked exhaustively up to here.
pub const MAX_ORDER: usize = 256;

/// A finite group stored as a Cayley table over the indices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// Checks run in order: shape and index range, Latin square property,
    /// existence of a two-sided identity, then associativity over all triples.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge {
                order: n,
                max: MAX_ORDER,
            });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    expected: n,
                });
            }
            if let Some(&index) = entries.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { index, order: n });
            }
        }

        let mut seen = vec![usize::MAX; n];
        for (row, entries) in table.iter().enumerate() {
            for &value in entries {
                if seen[value] == row {
                    return Err(Error::NotLatinSquare {
                        line: "row",
                        position: row,
                        value,
                    });
                }
                seen[value] = row;
            }
        }
        seen.fill(usize::MAX);
        for col in 0..n {
            for row in &table {
                let value = row[col];
                if seen[value] == col {
                    return Err(Error::NotLatinSquare {
                        line: "column",
                        position: col,
                        value,
                    });
                }
                seen[value] = col;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(Error::NoIdentity)?;

        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }

        // Latin rows guarantee exactly one right inverse; associativity makes it two-sided.
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap())
            .collect();

        Ok(Self {
            name: name.into(),
            table,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: a,
                order: self.order(),
            })
        }
    }
}

/// A subgroup `K` of a finite group, with members in a fixed order.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    rank: Vec<Option<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        *self.parent == *other.parent && self.members == other.members
    }
}

impl Subgroup {
    /// Smallest subgroup containing `generators`.
    ///
    /// Members are listed in breadth-first order from the identity, expanding
    /// by right multiplication with the generators in ascending index order.
    pub fn closure(parent: Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        for &g in generators {
            parent.check_index(g)?;
        }
        let mut gens: Vec<usize> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();

        let n = parent.order();
        let mut rank = vec![None; n];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        let e = parent.identity();
        rank[e] = Some(0);
        members.push(e);
        queue.push_back(e);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = parent.mul(x, g);
                if rank[y].is_none() {
                    rank[y] = Some(members.len());
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(n % members.len(), 0);
        Ok(Self {
            parent,
            members,
            rank,
        })
    }

    /// Wraps an explicit member list after checking the subgroup axioms.
    pub fn from_members(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Result<Self> {
        let n = parent.order();
        let mut rank = vec![None; n];
        for (pos, &m) in members.iter().enumerate() {
            parent.check_index(m)?;
            if rank[m].is_some() {
                return Err(Error::ShapeMismatch(format!(
                    "element {m} listed twice in subgroup"
                )));
            }
            rank[m] = Some(pos);
        }
        if rank[parent.identity()].is_none() {
            return Err(Error::NotInSubgroup {
                element: parent.identity(),
            });
        }
        for &a in &members {
            if rank[parent.inv(a)].is_none() {
                return Err(Error::NotInSubgroup {
                    element: parent.inv(a),
                });
            }
            for &b in &members {
                let ab = parent.mul(a, b);
                if rank[ab].is_none() {
                    return Err(Error::NotInSubgroup { element: ab });
                }
            }
        }
        if !n.is_multiple_of(members.len()) {
            return Err(Error::ShapeMismatch(format!(
                "subgroup order {} does not divide group order {n}",
                members.len()
            )));
        }
        Ok(Self {
            parent,
            members,
            rank,
        })
    }

    /// The whole group as a subgroup of itself, in index order.
    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let members: Vec<usize> = parent.elements().collect();
        let rank = members.iter().map(|&m| Some(m)).collect();
        Self {
            parent,
            members,
            rank,
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.rank.get(g).is_some_and(Option::is_some)
    }

    /// Position of `g` in `members`, if `g` belongs to the subgroup.
    pub fn rank_of(&self, g: usize) -> Option<usize> {
        self.rank.get(g).copied().flatten()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }
}

/// Left coset decomposition `G = g_0 K ⊔ ... ⊔ g_{n-1} K`.
#[derive(Debug, Clone)]
pub struct CosetStructure {
    subgroup: Arc<Subgroup>,
    reps: Vec<usize>,
    /// `factor[g] = (r, k)` with `g = reps[r] * k`.
    factor: Vec<(usize, usize)>,
}

impl CosetStructure {
    /// Representatives: the identity for `K` itself, the minimal element
    /// index for every other coset, cosets listed by ascending representative.
    pub fn new(subgroup: Arc<Subgroup>) -> Self {
        let g = subgroup.parent().clone();
        let n = g.order();
        let e = g.identity();
        let mut factor = vec![(usize::MAX, usize::MAX); n];
        let mut reps = Vec::with_capacity(subgroup.index_in_parent());

        let assign = |rep: usize, reps: &mut Vec<usize>, factor: &mut Vec<(usize, usize)>| {
            let r = reps.len();
            reps.push(rep);
            for &k in subgroup.members() {
                factor[g.mul(rep, k)] = (r, k);
            }
        };
        assign(e, &mut reps, &mut factor);
        for x in 0..n {
            if factor[x].0 == usize::MAX {
                assign(x, &mut reps, &mut factor);
            }
        }
        Self {
            subgroup,
            reps,
            factor,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.subgroup.parent()
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// `(r, k)` with `g = reps[r] * k`.
    #[inline]
    pub fn factor(&self, g: usize) -> (usize, usize) {
        self.factor[g]
    }

    /// Elements of the coset `reps[r] K`, in subgroup member order.
    pub fn coset(&self, r: usize) -> Vec<usize> {
        let g = self.group();
        self.subgroup
            .members()
            .iter()
            .map(|&k| g.mul(self.reps[r], k))
            .collect()
    }
}

/// Values that can be integrated against rational weights.
pub trait Integrand: Sized + Add<Output = Self> {
    fn weighted(self, w: Ratio<i64>) -> Self;
    fn zero_like(&self) -> Self;
}

fn ratio_f64(w: Ratio<i64>) -> f64 {
    w.to_f64().unwrap_or(f64::NAN)
}

impl Integrand for Ratio<i64> {
    fn weighted(self, w: Ratio<i64>) -> Self {
        self * w
    }
    fn zero_like(&self) -> Self {
        Ratio::zero()
    }
}

impl Integrand for f64 {
    fn weighted(self, w: Ratio<i64>) -> Self {
        self * ratio_f64(w)
    }
    fn zero_like(&self) -> Self {
        0.0
    }
}

impl Integrand for Complex64 {
    fn weighted(self, w: Ratio<i64>) -> Self {
        self * ratio_f64(w)
    }
    fn zero_like(&self) -> Self {
        Complex64::zero()
    }
}

impl Integrand for CVec {
    fn weighted(self, w: Ratio<i64>) -> Self {
        self * Complex64::new(ratio_f64(w), 0.0)
    }
    fn zero_like(&self) -> Self {
        CVec::zeros(self.len())
    }
}

/// The weight systems `lambda` on `G`, `nu` on `K` and `mu` on `G/K`.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarWeights {
    pub nu: Ratio<i64>,
    pub mu: Ratio<i64>,
    pub lambda: Ratio<i64>,
}

impl HaarWeights {
    pub fn new(subgroup: &Subgroup) -> Self {
        let nu = Ratio::new(1, subgroup.order() as i64);
        let mu = Ratio::from_integer(1);
        Self {
            nu,
            mu,
            lambda: mu * nu,
        }
    }

    pub fn lambda_f64(&self) -> f64 {
        ratio_f64(self.lambda)
    }

    pub fn nu_f64(&self) -> f64 {
        ratio_f64(self.nu)
    }

    pub fn mu_f64(&self) -> f64 {
        ratio_f64(self.mu)
    }

    /// `sum_t lambda * f(t)` over all of `G`.
    pub fn integrate<V, F>(&self, group: &FiniteGroup, f: F) -> V
    where
        V: Integrand,
        F: Fn(usize) -> V,
    {
        let mut it = group.elements().map(|t| f(t).weighted(self.lambda));
        let first = it.next().expect("groups are nonempty");
        it.fold(first, |acc, x| acc + x)
    }

    /// Iterated integral `sum_r mu * sum_k nu * f(g_r k)` through the quotient.
    pub fn integrate_quotient<V, F>(&self, cosets: &CosetStructure, f: F) -> V
    where
        V: Integrand,
        F: Fn(usize) -> V,
    {
        let g = cosets.group();
        let k_members = cosets.subgroup().members();
        let mut acc: Option<V> = None;
        for &rep in cosets.reps() {
            let mut inner: Option<V> = None;
            for &k in k_members {
                let term = f(g.mul(rep, k)).weighted(self.nu);
                inner = Some(match inner {
                    Some(a) => a + term,
                    None => term,
                });
            }
            let term = inner.expect("subgroups are nonempty").weighted(self.mu);
            acc = Some(match acc {
                Some(a) => a + term,
                None => term,
            });
        }
        acc.expect("at least one coset")
    }

    /// Total mass `lambda(G)`, which equals `[G:K]`.
    pub fn total_mass(&self, group: &FiniteGroup) -> Ratio<i64> {
        self.lambda * Ratio::from_integer(group.order() as i64)
    }
}

/// `|integral over G - iterated integral over G/K and K|` for a complex function.
pub fn weil_check<F>(cosets: &CosetStructure, weights: &HaarWeights, f: F) -> f64
where
    F: Fn(usize) -> Complex64,
{
    let lhs: Complex64 = weights.integrate(cosets.group(), &f);
    let rhs: Complex64 = weights.integrate_quotient(cosets, &f);
    (lhs - rhs).norm()
}

/// Exact rational counterpart of [`weil_check`]; returns the signed difference.
pub fn weil_check_exact<F>(cosets: &CosetStructure, weights: &HaarWeights, f: F) -> Ratio<i64>
where
    F: Fn(usize) -> Ratio<i64>,
{
    let lhs: Ratio<i64> = weights.integrate(cosets.group(), &f);
    let rhs: Ratio<i64> = weights.integrate_quotient(cosets, &f);
    lhs - rhs
}
