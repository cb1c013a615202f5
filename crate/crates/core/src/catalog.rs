//! Built-in groups, irreducible representations and the standard test instances.
//!
//! Representation names:
//!
//! | name                    | representation                                   |
//! |-------------------------|--------------------------------------------------|
//! | `trivial`               | `k -> [1]` on any subgroup                       |
//! | `cyclic:n:chiJ`         | `g^a -> exp(2 pi i J a / n)` on a cyclic `K`      |
//! | `dihedral:n:triv`       | trivial character of `D_n`                       |
//! | `dihedral:n:sign`       | `r -> 1, s -> -1`                                |
//! | `dihedral:n:alt`        | `r -> -1, s -> 1` (even `n` only)                |
//! | `dihedral:n:altsign`    | `r -> -1, s -> -1` (even `n` only)               |
//! | `dihedral:n:rhoJ`       | 2-dim, `r` rotates by `2 pi J / n`, `s` reflects |
//! | `symmetric:3:triv/sign/std` | aliases of `dihedral:3:triv/sign/rho1`       |
//!
//! The generator of a cyclic subgroup is its smallest-index element of full
//! order; for a dihedral subgroup `r` is the smallest-index element of order
//! `n` and `s` the smallest-index involution outside `<r>` inverting `r`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::CMat;
use crate::repr::{UnitaryRep, DEFAULT_TOLERANCE};

/// `Z/n` with `a * b = a + b mod n`.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGroup::from_table(format!("Z{n}"), table).expect("cyclic table is a group")
}

/// `D_n` of order `2n`; element `r^a s^b` has index `a + n b`.
pub fn dihedral_group(n: usize) -> FiniteGroup {
    let idx = |a: usize, b: usize| a % n + n * (b % 2);
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for (x, row) in table.iter_mut().enumerate() {
        let (a, b) = (x % n, x / n);
        for (y, entry) in row.iter_mut().enumerate() {
            let (c, d) = (y % n, y / n);
            // s r^c = r^{-c} s
            let rot = if b == 0 { a + c } else { a + n - c };
            *entry = idx(rot, b + d);
        }
    }
    FiniteGroup::from_table(format!("D{n}"), table).expect("dihedral table is a group")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `S_n` for `n <= 5`, elements in lexicographic order, `(a * b)(x) = a(b(x))`.
pub fn symmetric_group(n: usize) -> FiniteGroup {
    assert!(
        (1..=5).contains(&n),
        "symmetric groups are limited to n <= 5"
    );
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let c: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                    index(&c)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(format!("S{n}"), table).expect("permutation table is a group")
}

/// Parses `cyclic:n`, `dihedral:n` or `symmetric:n`.
pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownCatalog(name.to_string());
    let (kind, n) = name.split_once(':').ok_or_else(unknown)?;
    let n: usize = n.parse().map_err(|_| unknown())?;
    match kind {
        "cyclic" if n >= 1 => Ok(cyclic_group(n)),
        "dihedral" if n >= 3 => Ok(dihedral_group(n)),
        "symmetric" if (1..=5).contains(&n) => Ok(symmetric_group(n)),
        _ => Err(unknown()),
    }
}

fn scalar(z: Complex64) -> CMat {
    CMat::from_element(1, 1, z)
}

fn real2(a: f64, b: f64, c: f64, d: f64) -> CMat {
    CMat::from_row_slice(2, 2, &[a, b, c, d].map(|x| Complex64::new(x, 0.0)))
}

pub fn trivial_rep(subgroup: Arc<Subgroup>) -> Result<UnitaryRep> {
    let members = subgroup.members().to_vec();
    let mats = members
        .into_iter()
        .map(|k| (k, scalar(Complex64::new(1.0, 0.0))))
        .collect();
    UnitaryRep::new("trivial", subgroup, &mats, DEFAULT_TOLERANCE)
}

fn cyclic_generator(subgroup: &Subgroup) -> Option<usize> {
    let g = subgroup.parent();
    let n = subgroup.order();
    let mut members = subgroup.members().to_vec();
    members.sort_unstable();
    members.into_iter().find(|&x| g.element_order(x) == n)
}

/// Character `g^a -> exp(2 pi i j a / n)` of a cyclic subgroup of order `n`.
pub fn cyclic_character(subgroup: Arc<Subgroup>, j: usize) -> Result<UnitaryRep> {
    let n = subgroup.order();
    let name = format!("cyclic:{n}:chi{j}");
    let gen = cyclic_generator(&subgroup).ok_or_else(|| Error::CatalogMismatch {
        name: name.clone(),
        reason: "subgroup is not cyclic".into(),
    })?;
    let z = Complex64::from_polar(1.0, 2.0 * PI * (j % n) as f64 / n as f64);
    UnitaryRep::from_generators(name, subgroup, &[(gen, scalar(z))], DEFAULT_TOLERANCE)
}

/// `(r, s)` generating a dihedral subgroup of order `2n`, `n >= 3`.
fn dihedral_generators(subgroup: &Subgroup) -> Option<(usize, usize)> {
    let g = subgroup.parent();
    if !subgroup.order().is_multiple_of(2) {
        return None;
    }
    let n = subgroup.order() / 2;
    if n < 3 {
        return None;
    }
    let mut members = subgroup.members().to_vec();
    members.sort_unstable();
    let r = members.iter().copied().find(|&x| g.element_order(x) == n)?;
    let mut rot = vec![g.identity()];
    for _ in 1..n {
        rot.push(g.mul(*rot.last().unwrap(), r));
    }
    let s = members.iter().copied().find(|&x| {
        !rot.contains(&x) && g.element_order(x) == 2 && g.mul(g.mul(x, r), x) == g.inv(r)
    })?;
    Some((r, s))
}

/// Named irreducible representation of `D_n` realized on a dihedral subgroup.
pub fn dihedral_rep(subgroup: Arc<Subgroup>, which: &str) -> Result<UnitaryRep> {
    let n = subgroup.order() / 2;
    let name = format!("dihedral:{n}:{which}");
    let mismatch = |reason: &str| Error::CatalogMismatch {
        name: name.clone(),
        reason: reason.to_string(),
    };
    let (r, s) =
        dihedral_generators(&subgroup).ok_or_else(|| mismatch("subgroup is not dihedral"))?;
    let one = |x: f64| scalar(Complex64::new(x, 0.0));
    let images = match which {
        "triv" => vec![(r, one(1.0)), (s, one(1.0))],
        "sign" => vec![(r, one(1.0)), (s, one(-1.0))],
        "alt" | "altsign" if n % 2 == 1 => return Err(mismatch("needs even n")),
        "alt" => vec![(r, one(-1.0)), (s, one(1.0))],
        "altsign" => vec![(r, one(-1.0)), (s, one(-1.0))],
        other => {
            let j: usize = other
                .strip_prefix("rho")
                .and_then(|j| j.parse().ok())
                .ok_or_else(|| Error::UnknownCatalog(name.clone()))?;
            if j == 0 || 2 * j >= n {
                return Err(mismatch("rhoJ needs 1 <= J < n/2"));
            }
            let a = 2.0 * PI * j as f64 / n as f64;
            vec![
                (r, real2(a.cos(), -a.sin(), a.sin(), a.cos())),
                (s, real2(1.0, 0.0, 0.0, -1.0)),
            ]
        }
    };
    UnitaryRep::from_generators(name, subgroup, &images, DEFAULT_TOLERANCE)
}

/// Labels of every irreducible representation of `D_n` in the catalog.
pub fn dihedral_irrep_names(n: usize) -> Vec<String> {
    let mut names = vec!["triv".to_string(), "sign".to_string()];
    if n.is_multiple_of(2) {
        names.push("alt".into());
        names.push("altsign".into());
    }
    names.extend((1..).take_while(|j| 2 * j < n).map(|j| format!("rho{j}")));
    names
}

/// Resolves a catalog name against the given subgroup.
pub fn rep_by_name(subgroup: Arc<Subgroup>, name: &str) -> Result<UnitaryRep> {
    if name == "trivial" {
        return trivial_rep(subgroup);
    }
    let parts: Vec<&str> = name.split(':').collect();
    let unknown = || Error::UnknownCatalog(name.to_string());
    if parts.len() != 3 {
        return Err(unknown());
    }
    let n: usize = parts[1].parse().map_err(|_| unknown())?;
    let order_mismatch = |expected: usize| Error::CatalogMismatch {
        name: name.to_string(),
        reason: format!(
            "expected subgroup of order {expected}, found {}",
            subgroup.order()
        ),
    };
    let rep = match (parts[0], parts[2]) {
        ("cyclic", chi) => {
            if subgroup.order() != n {
                return Err(order_mismatch(n));
            }
            let j: usize = chi
                .strip_prefix("chi")
                .and_then(|j| j.parse().ok())
                .ok_or_else(unknown)?;
            cyclic_character(subgroup, j)?
        }
        ("dihedral", which) => {
            if subgroup.order() != 2 * n {
                return Err(order_mismatch(2 * n));
            }
            dihedral_rep(subgroup, which)?
        }
        ("symmetric", which) if n == 3 => {
            if subgroup.order() != 6 {
                return Err(order_mismatch(6));
            }
            let alias = match which {
                "triv" => "triv",
                "sign" => "sign",
                "std" => "rho1",
                _ => return Err(unknown()),
            };
            dihedral_rep(subgroup, alias)?
        }
        _ => return Err(unknown()),
    };
    Ok(rep.with_label(name))
}

/// Block-diagonal direct sum of two representations of the same subgroup.
pub fn direct_sum(a: &UnitaryRep, b: &UnitaryRep) -> Result<UnitaryRep> {
    let (da, db) = (a.dim(), b.dim());
    let mats = a
        .matrices()
        .into_iter()
        .map(|(k, ma)| {
            let mut m = CMat::zeros(da + db, da + db);
            m.view_mut((0, 0), (da, da)).copy_from(&ma);
            m.view_mut((da, da), (db, db)).copy_from(b.mat(k));
            (k, m)
        })
        .collect();
    UnitaryRep::new(
        format!("{}+{}", a.label(), b.label()),
        a.subgroup().clone(),
        &mats,
        DEFAULT_TOLERANCE,
    )
}

/// A subgroup pair `K < G` from the built-in list.
#[derive(Debug, Clone)]
pub struct SubgroupPair {
    pub name: &'static str,
    pub subgroup: Arc<Subgroup>,
}

impl SubgroupPair {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.subgroup.parent()
    }
}

fn pair(name: &'static str, g: FiniteGroup, gens: &[usize]) -> SubgroupPair {
    let g = Arc::new(g);
    let subgroup = Arc::new(Subgroup::closure(g, gens).expect("valid generators"));
    SubgroupPair { name, subgroup }
}

fn first_of_order(g: &FiniteGroup, order: usize) -> usize {
    g.elements().find(|&x| g.element_order(x) == order).unwrap()
}

/// `Z4 > Z2`, `S3 > A3`, `S3 > <transposition>`, `D4 > rotations`, `Z6 > Z3`.
pub fn builtin_pairs() -> Vec<SubgroupPair> {
    let s3 = symmetric_group(3);
    let c3 = first_of_order(&s3, 3);
    let tr = first_of_order(&s3, 2);
    vec![
        pair("Z4>Z2", cyclic_group(4), &[2]),
        pair("S3>A3", s3.clone(), &[c3]),
        pair("S3>C2", s3, &[tr]),
        pair("D4>C4", dihedral_group(4), &[1]),
        pair("Z6>Z3", cyclic_group(6), &[2]),
    ]
}

/// The pair `S3 > A3`.
pub fn s3_a3() -> SubgroupPair {
    builtin_pairs().swap_remove(1)
}

/// The pair `D4 > C4`.
pub fn d4_c4() -> SubgroupPair {
    builtin_pairs().swap_remove(3)
}

/// `S3 > S3`, whose three irreducibles induce a complete system.
pub fn s3_s3() -> SubgroupPair {
    let g = Arc::new(symmetric_group(3));
    SubgroupPair {
        name: "S3>S3",
        subgroup: Arc::new(Subgroup::whole(g)),
    }
}

/// A named induction instance: a subgroup pair with one catalog representation.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: &'static str,
    pub pair: SubgroupPair,
    pub sigma: &'static str,
}

impl Instance {
    pub fn rep(&self) -> UnitaryRep {
        rep_by_name(self.pair.subgroup.clone(), self.sigma).expect("catalog instance")
    }
}

/// Every built-in induction instance, reducible inductions included.
pub fn builtin_instances() -> Vec<Instance> {
    let p = builtin_pairs();
    let inst = |name, pair: &SubgroupPair, sigma| Instance {
        name,
        pair: pair.clone(),
        sigma,
    };
    vec![
        inst("Z4>Z2/chi1", &p[0], "cyclic:2:chi1"),
        inst("S3>A3/chi1", &p[1], "cyclic:3:chi1"),
        inst("S3>A3/chi2", &p[1], "cyclic:3:chi2"),
        inst("S3>A3/trivial", &p[1], "trivial"),
        inst("S3>C2/trivial", &p[2], "trivial"),
        inst("S3>C2/chi1", &p[2], "cyclic:2:chi1"),
        inst("D4>C4/chi1", &p[3], "cyclic:4:chi1"),
        inst("D4>C4/chi2", &p[3], "cyclic:4:chi2"),
        inst("Z6>Z3/chi1", &p[4], "cyclic:3:chi1"),
        inst("S3>S3/std", &s3_s3(), "symmetric:3:std"),
        inst("S3>S3/sign", &s3_s3(), "symmetric:3:sign"),
    ]
}

/// Every catalog irrep family over a whole group with `|K| <= 48`:
/// characters of `Z/n` for `n <= 12` and `n = 48`, all irreducibles of `D_n`
/// for `3 <= n <= 12` and `n = 24`.
pub fn builtin_irrep_families() -> Vec<Vec<UnitaryRep>> {
    let mut out = Vec::new();
    for n in (1..=12).chain([48]) {
        let k = Arc::new(Subgroup::whole(Arc::new(cyclic_group(n))));
        out.push(
            (0..n)
                .map(|j| cyclic_character(k.clone(), j).expect("catalog"))
                .collect(),
        );
    }
    for n in (3..=12).chain([24]) {
        let k = Arc::new(Subgroup::whole(Arc::new(dihedral_group(n))));
        out.push(
            dihedral_irrep_names(n)
                .iter()
                .map(|w| dihedral_rep(k.clone(), w).expect("catalog"))
                .collect(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity(p: &[usize]) -> bool {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }

    #[test]
    fn s3_from_permutation_oracle() {
        let g = symmetric_group(3);
        assert_eq!(g.order(), 6);
        let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
        // Composition checked against direct permutation arithmetic.
        let perms = permutations(3);
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let c: Vec<usize> = (0..3).map(|x| pa[pb[x]]).collect();
                assert_eq!(perms[g.mul(a, b)], c);
            }
        }
    }

    #[test]
    fn a3_closure_is_even_permutations() {
        let p = s3_a3();
        let perms = permutations(3);
        let mut even: Vec<usize> = (0..6).filter(|&i| parity(&perms[i])).collect();
        let mut members = p.subgroup.members().to_vec();
        even.sort_unstable();
        members.sort_unstable();
        assert_eq!(even, members);
    }

    #[test]
    fn s3_a3_cosets_partition() {
        let p = s3_a3();
        let c = crate::group::CosetStructure::new(p.subgroup.clone());
        assert_eq!(c.count(), 2);
        let mut all: Vec<usize> = (0..2).flat_map(|r| c.coset(r)).collect();
        all.sort_unstable();
        assert_eq!(all, (0..6).collect::<Vec<_>>());
        let perms = permutations(3);
        assert!(c.coset(1).iter().all(|&x| !parity(&perms[x])));
    }

    #[test]
    fn dihedral_relations() {
        for n in 3..=8 {
            let g = dihedral_group(n);
            let (r, s) = (1, n);
            assert_eq!(g.element_order(r), n);
            assert_eq!(g.element_order(s), 2);
            assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        }
    }

    #[test]
    fn catalog_names_resolve() {
        let p = s3_a3();
        for name in ["trivial", "cyclic:3:chi0", "cyclic:3:chi1", "cyclic:3:chi2"] {
            let rep = rep_by_name(p.subgroup.clone(), name).unwrap();
            assert_eq!(rep.label(), name);
        }
        assert!(matches!(
            rep_by_name(p.subgroup.clone(), "cyclic:4:chi1"),
            Err(Error::CatalogMismatch { .. })
        ));
        assert!(rep_by_name(p.subgroup.clone(), "bogus").is_err());
        assert!(matches!(
            rep_by_name(p.subgroup.clone(), "dihedral:3:rho1"),
            Err(Error::CatalogMismatch { .. })
        ));
        let whole = s3_s3().subgroup;
        for name in ["symmetric:3:triv", "symmetric:3:sign", "symmetric:3:std"] {
            assert!(rep_by_name(whole.clone(), name)
                .unwrap()
                .is_irreducible(1e-12));
        }
        assert!(group_by_name("dihedral:4").is_ok());
        assert!(group_by_name("dihedral:2").is_err());
        assert!(group_by_name("quaternion:8").is_err());
    }

    #[test]
    fn dihedral_families_are_complete() {
        for fam in builtin_irrep_families() {
            let k = fam[0].subgroup().order();
            let count: usize = fam.iter().map(|r| r.dim() * r.dim()).sum();
            assert_eq!(count, k, "family over order {k}");
            for rep in &fam {
                assert!(rep.is_irreducible(1e-10), "{}", rep.label());
            }
        }
    }
}
