//! Standard group families and the JSON group document format.
//!
//! A document is either a catalog reference
//! `{"catalog": {"name": "wreath_cyclic", "params": [3, 1]}}` or an explicit
//! generator list
//! `{"explicit": {"kind": "permutation", "degree": 4, "generators": [[2,3,4,1]]}}`.
//! Permutations are 1-based image arrays; matrices are row lists over `F_p`
//! and need a `"prime"` field.

use serde::{Deserialize, Serialize};

use crate::element::{is_prime, Element, Matrix, Perm};
use crate::error::{Error, Result};
use crate::group::{Caps, Group, GroupKind, Subgroup, WreathData};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogName {
    Sym,
    Alt,
    Cyclic,
    /// Parameter is the group order `2m`, acting on an `m`-gon.
    Dihedral,
    /// Parameter is the group order `2^k ≥ 8`.
    Quaternion,
    /// Parameters `[p, n]` give `C_{p^n} ≀ C_p`.
    WreathCyclic,
    /// Parameters `[d, p]`.
    Gl,
    /// Parameters `[d, p]`.
    Sl,
    DirectProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogSpec {
    pub name: CatalogName,
    #[serde(default)]
    pub params: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExplicitKind {
    Permutation,
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Perm(Vec<u32>),
    Matrix(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpec {
    pub kind: ExplicitKind,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    pub generators: Vec<ElementSpec>,
}

/// A group document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Catalog(CatalogSpec),
    Explicit(ExplicitSpec),
}

impl GroupSpec {
    pub fn catalog(name: CatalogName, params: &[u64]) -> Self {
        GroupSpec::Catalog(CatalogSpec {
            name,
            params: params.to_vec(),
            factors: vec![],
        })
    }

    pub fn direct_product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec::Catalog(CatalogSpec {
            name: CatalogName::DirectProduct,
            params: vec![],
            factors,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("specs always serialize")
    }
}

impl ElementSpec {
    pub fn to_element(&self, kind: GroupKind) -> Result<Element> {
        match (self, kind) {
            (ElementSpec::Perm(images), GroupKind::Permutation { degree }) => {
                if images.len() != degree {
                    return Err(Error::invalid(format!(
                        "permutation has {} images, expected degree {degree}",
                        images.len()
                    )));
                }
                Ok(Perm::from_one_based(images)?.into())
            }
            (ElementSpec::Matrix(rows), GroupKind::Matrix { dim, prime }) => {
                if rows.len() != dim {
                    return Err(Error::invalid(format!(
                        "matrix has {} rows, expected dimension {dim}",
                        rows.len()
                    )));
                }
                Ok(Matrix::from_rows(rows, prime)?.into())
            }
            _ => Err(Error::invalid("element does not match group kind")),
        }
    }

    pub fn from_element(e: &Element) -> Self {
        match e {
            Element::Perm(p) => ElementSpec::Perm(p.one_based()),
            Element::Matrix(m) => ElementSpec::Matrix(m.rows()),
        }
    }
}

impl ExplicitSpec {
    pub fn group_kind(&self) -> Result<GroupKind> {
        match self.kind {
            ExplicitKind::Permutation => {
                if self.prime.is_some() {
                    return Err(Error::invalid("permutation groups take no prime"));
                }
                Ok(GroupKind::Permutation {
                    degree: self.degree,
                })
            }
            ExplicitKind::Matrix => {
                let prime = self
                    .prime
                    .ok_or_else(|| Error::invalid("matrix groups need a prime"))?;
                if !is_prime(prime as u64) {
                    return Err(Error::invalid(format!("{prime} is not prime")));
                }
                Ok(GroupKind::Matrix {
                    dim: self.degree,
                    prime,
                })
            }
        }
    }
}

/// Builds a group from a document.
pub fn build(spec: &GroupSpec, caps: &Caps) -> Result<Group> {
    match spec {
        GroupSpec::Explicit(e) => {
            let kind = e.group_kind()?;
            if e.degree == 0 {
                return Err(Error::invalid("degree must be positive"));
            }
            let gens = e
                .generators
                .iter()
                .map(|g| g.to_element(kind))
                .collect::<Result<Vec<_>>>()?;
            Group::new(kind, gens, caps)
        }
        GroupSpec::Catalog(c) => build_catalog(c, caps),
    }
}

/// Parses and builds with default caps.
pub fn parse_and_build(text: &str) -> Result<Group> {
    build(&GroupSpec::from_json(text)?, &Caps::default())
}

fn params<const N: usize>(c: &CatalogSpec) -> Result<[u64; N]> {
    c.params.as_slice().try_into().map_err(|_| {
        Error::invalid(format!(
            "{:?} takes {N} parameter(s), got {}",
            c.name,
            c.params.len()
        ))
    })
}

fn cycle(degree: usize, points: impl IntoIterator<Item = u32>) -> Result<Element> {
    let pts: Vec<u32> = points.into_iter().collect();
    Ok(Perm::from_cycles(degree, &[&pts])?.into())
}

fn perm_kind(degree: usize) -> GroupKind {
    GroupKind::Permutation { degree }
}

fn build_catalog(c: &CatalogSpec, caps: &Caps) -> Result<Group> {
    if c.name != CatalogName::DirectProduct && !c.factors.is_empty() {
        return Err(Error::invalid("only direct_product takes factors"));
    }
    match c.name {
        CatalogName::Sym => {
            let [n] = params(c)?;
            let n = n.max(1) as usize;
            let mut gens = vec![];
            if n >= 2 {
                gens.push(cycle(n, [1, 2])?);
            }
            if n >= 3 {
                gens.push(cycle(n, 1..=n as u32)?);
            }
            Ok(Group::new(perm_kind(n), gens, caps)?.with_name(format!("Sym({n})")))
        }
        CatalogName::Alt => {
            let [n] = params(c)?;
            let n = n.max(1) as usize;
            let mut gens = vec![];
            if n >= 3 {
                gens.push(cycle(n, [1, 2, 3])?);
            }
            if n >= 4 {
                gens.push(if n % 2 == 1 {
                    cycle(n, 1..=n as u32)?
                } else {
                    cycle(n, 2..=n as u32)?
                });
            }
            Ok(Group::new(perm_kind(n), gens, caps)?.with_name(format!("Alt({n})")))
        }
        CatalogName::Cyclic => {
            let [n] = params(c)?;
            if n == 0 {
                return Err(Error::invalid("cyclic order must be positive"));
            }
            let n = n as usize;
            let gens = if n >= 2 {
                vec![cycle(n, 1..=n as u32)?]
            } else {
                vec![]
            };
            Ok(Group::new(perm_kind(n), gens, caps)?.with_name(format!("C{n}")))
        }
        CatalogName::Dihedral => {
            let [order] = params(c)?;
            if order < 6 || order % 2 == 1 {
                return Err(Error::invalid("dihedral order must be even and at least 6"));
            }
            let m = (order / 2) as usize;
            let rot = cycle(m, 1..=m as u32)?;
            let refl: Vec<u16> = (0..m).map(|i| ((m - i) % m) as u16).collect();
            let gens = vec![rot, Perm::from_images(refl)?.into()];
            Ok(Group::new(perm_kind(m), gens, caps)?.with_name(format!("D{order}")))
        }
        CatalogName::Quaternion => {
            let [order] = params(c)?;
            if order < 8 || !order.is_power_of_two() {
                return Err(Error::invalid("quaternion order must be a power of 2, at least 8"));
            }
            quaternion(order as usize, caps)
        }
        CatalogName::WreathCyclic => {
            let [p, n] = params(c)?;
            if !is_prime(p) || n == 0 {
                return Err(Error::invalid("wreath_cyclic needs a prime p and n >= 1"));
            }
            wreath_cyclic(p as u32, n as u32, caps)
        }
        CatalogName::Gl | CatalogName::Sl => {
            let [d, p] = params(c)?;
            if d == 0 || !is_prime(p) {
                return Err(Error::invalid("matrix groups need d >= 1 and prime p"));
            }
            linear(c.name == CatalogName::Sl, d as usize, p as u32, caps)
        }
        CatalogName::DirectProduct => {
            if !c.params.is_empty() {
                return Err(Error::invalid("direct_product takes factors, not params"));
            }
            let groups = c
                .factors
                .iter()
                .map(|f| build(f, caps))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&groups, caps)
        }
    }
}

fn quaternion(order: usize, caps: &Caps) -> Result<Group> {
    // Elements x^i y^j with x of order m = order/2, y^2 = x^{m/2},
    // y⁻¹ x y = x⁻¹, acting on themselves by right multiplication.
    let m = order / 2;
    let encode = |i: usize, j: usize| j * m + i;
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| {
        let k = if j == 1 { (m - k) % m } else { k };
        let mut e = (i + k) % m;
        if j == 1 && l == 1 {
            e = (e + m / 2) % m;
        }
        (e, (j + l) % 2)
    };
    let right_mult = |g: (usize, usize)| -> Result<Element> {
        let mut images = vec![0u16; order];
        for i in 0..m {
            for j in 0..2 {
                let (a, b) = mul((i, j), g);
                images[encode(i, j)] = encode(a, b) as u16;
            }
        }
        Ok(Perm::from_images(images)?.into())
    };
    let gens = vec![right_mult((1, 0))?, right_mult((0, 1))?];
    Ok(Group::new(perm_kind(order), gens, caps)?.with_name(format!("Q{order}")))
}

/// `C_{p^n} ≀ C_p` on `p · p^n` points: block `i` holds `p^n` points on
/// which `b_i` acts regularly, and `x` shifts block `i` onto block `i+1`.
fn wreath_cyclic(p: u32, n: u32, caps: &Caps) -> Result<Group> {
    let m = (p as usize).pow(n);
    let degree = m * p as usize;
    let base: Vec<Element> = (0..p as usize)
        .map(|b| cycle(degree, (0..m).map(|r| (b * m + r + 1) as u32)))
        .collect::<Result<_>>()?;
    let x_images: Vec<u16> = (0..degree)
        .map(|pt| (((pt / m + 1) % p as usize) * m + pt % m) as u16)
        .collect();
    let x: Element = Perm::from_images(x_images)?.into();
    let mut gens = base.clone();
    gens.push(x.clone());
    let g = Group::new(perm_kind(degree), gens, caps)?;
    Ok(g.with_name(format!("C{m} wr C{p}")).with_wreath(WreathData {
        p,
        n,
        x,
        base_generators: base,
    }))
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1u64;
            (1..p - 1).all(|_| {
                x = x * g as u64 % p as u64;
                x != 1
            })
        })
        .expect("every prime field has a primitive root")
}

fn linear(special: bool, d: usize, p: u32, caps: &Caps) -> Result<Group> {
    let mut gens: Vec<Element> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut rows = Matrix::identity(d, p).rows();
                rows[i][j] = 1;
                gens.push(Matrix::from_rows(&rows, p)?.into());
            }
        }
    }
    if !special && p > 2 {
        let mut rows = Matrix::identity(d, p).rows();
        rows[0][0] = primitive_root(p);
        gens.push(Matrix::from_rows(&rows, p)?.into());
    }
    let kind = GroupKind::Matrix { dim: d, prime: p };
    let name = format!("{}({d},{p})", if special { "SL" } else { "GL" });
    Ok(Group::new(kind, gens, caps)?.with_name(name))
}

/// Direct product of permutation groups acting on disjoint point sets.
pub fn direct_product(groups: &[Group], caps: &Caps) -> Result<Group> {
    let mut degrees = Vec::new();
    for g in groups {
        match g.kind() {
            GroupKind::Permutation { degree } => degrees.push(degree),
            GroupKind::Matrix { .. } => {
                return Err(Error::invalid("direct_product supports permutation groups only"))
            }
        }
    }
    if groups.is_empty() {
        return Err(Error::invalid("direct_product needs at least one factor"));
    }
    let total: usize = degrees.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for (g, &deg) in groups.iter().zip(&degrees) {
        for gen in g.generators() {
            let perm = gen.as_perm().expect("permutation factor");
            let mut images: Vec<u16> = (0..total as u16).collect();
            for i in 0..deg {
                images[offset + i] = (offset + perm.image(i)) as u16;
            }
            gens.push(Perm::from_images(images)?.into());
        }
        offset += deg;
    }
    let name = groups
        .iter()
        .map(|g| g.name().unwrap_or("G").to_string())
        .collect::<Vec<_>>()
        .join(" x ");
    Ok(Group::new(perm_kind(total), gens, caps)?.with_name(name))
}

/// Writes a group as an explicit document.
pub fn serialize(g: &Group) -> String {
    let (kind, degree, prime) = match g.kind() {
        GroupKind::Permutation { degree } => (ExplicitKind::Permutation, degree, None),
        GroupKind::Matrix { dim, prime } => (ExplicitKind::Matrix, dim, Some(prime)),
    };
    let spec = GroupSpec::Explicit(ExplicitSpec {
        kind,
        degree,
        prime,
        generators: g.generators().iter().map(ElementSpec::from_element).collect(),
    });
    serde_json::to_string_pretty(&spec).expect("specs always serialize")
}

/// Reads a group document.
pub fn deserialize(text: &str, caps: &Caps) -> Result<Group> {
    build(&GroupSpec::from_json(text)?, caps)
}

/// Distinguished structure of a catalog wreath product `C_{p^n} ≀ C_p`.
#[derive(Clone, Debug)]
pub struct WreathStructure {
    pub p: u32,
    pub n: u32,
    pub x: Element,
    pub base_generators: Vec<Element>,
    /// `a_i = b_i b_{i+1}⁻¹` for `i = 1..p-1`; `x` sends `a_i` to `a_{i+1}`
    /// and `a_{p-1}` to `a_1⁻¹ ⋯ a_{p-1}⁻¹`.
    pub derived_generators: Vec<Element>,
    pub base: Subgroup,
    pub derived: Subgroup,
}

pub fn wreath_structure(g: &Group, caps: &Caps) -> Result<WreathStructure> {
    let w = g
        .wreath()
        .ok_or_else(|| Error::invalid("group was not built by wreath_cyclic"))?;
    let whole = g.as_subgroup();
    let derived = structure::derived_subgroup(&whole, caps)?;
    let b = &w.base_generators;
    let p = w.p as usize;
    let derived_generators: Vec<Element> =
        (0..p - 1).map(|i| b[i].mul(&b[i + 1].inv())).collect();
    let base = g.closure(b, caps)?;
    Ok(WreathStructure {
        p: w.p,
        n: w.n,
        x: w.x.clone(),
        base_generators: b.clone(),
        derived_generators,
        base,
        derived,
    })
}

/// Closed-form order of a catalog group, for cross-checking constructors.
pub fn expected_order(spec: &GroupSpec) -> Option<u128> {
    let GroupSpec::Catalog(c) = spec else {
        return None;
    };
    let fact = |n: u64| (1..=n as u128).product::<u128>();
    let pr = |i: usize| c.params.get(i).copied().unwrap_or(0) as u128;
    Some(match c.name {
        CatalogName::Sym => fact(pr(0) as u64),
        CatalogName::Alt => (fact(pr(0) as u64) / 2).max(1),
        CatalogName::Cyclic | CatalogName::Dihedral | CatalogName::Quaternion => pr(0),
        CatalogName::WreathCyclic => pr(0).pow((pr(1) * pr(0) + 1) as u32),
        CatalogName::Gl | CatalogName::Sl => {
            let (d, p) = (pr(0) as u32, pr(1));
            let gl: u128 = (0..d).map(|i| p.pow(d) - p.pow(i)).product();
            if c.name == CatalogName::Sl {
                gl / (p - 1)
            } else {
                gl
            }
        }
        CatalogName::DirectProduct => c
            .factors
            .iter()
            .map(expected_order)
            .product::<Option<u128>>()?,
    })
}

pub(crate) fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Exponents `e_k = (-1)^k C(p-1, k) - 1`, `k = 0..p-2`, with
/// `[a_1, x; p-1] = ∏ a_{k+1}^{e_k}` in `C_{p^n} ≀ C_p` for odd `p`.
pub fn iterated_commutator_exponents(p: u64) -> Vec<i128> {
    (0..p - 1)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * binomial(p - 1, k) - 1
        })
        .collect()
}

/// `-p + 1 + Σ_{k=0}^{p-2} (-1)^k C(p-1, k)`, the total exponent of the
/// `a_i` in `[a_1, x; p-1]`. Evaluates to `-p` for every odd `p`.
pub fn exponent_sum(p: u64) -> i128 {
    let s: i128 = (0..p - 1)
        .map(|k| if k % 2 == 0 { 1 } else { -1 } * binomial(p - 1, k))
        .sum();
    -(p as i128) + 1 + s
}
