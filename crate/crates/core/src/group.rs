//! Finitely generated abelian groups Z^k × Z_{d1} × … × Z_{dr}, their
//! elements, subsemigroups, and the quotient by the torsion subgroup H_0.
//!
//! A descriptor may also carry a formal real rank m standing for an R^m
//! factor. That factor only enters dimension counts; element arithmetic is
//! refused on such descriptors.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct GroupDescriptor {
    free_rank: usize,
    torsion_orders: Vec<u64>,
    formal_real_rank: usize,
}

#[derive(Deserialize)]
struct RawDescriptor {
    #[serde(default)]
    free_rank: usize,
    #[serde(default)]
    torsion_orders: Vec<u64>,
    #[serde(default)]
    formal_real_rank: usize,
}

impl TryFrom<RawDescriptor> for GroupDescriptor {
    type Error = Error;
    fn try_from(raw: RawDescriptor) -> Result<Self> {
        GroupDescriptor::with_real_rank(raw.free_rank, raw.torsion_orders, raw.formal_real_rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    free: Vec<i64>,
    #[serde(default)]
    torsion: Vec<u64>,
}

impl GroupElement {
    /// An element of a torsion-free group Z^k.
    pub fn free(coords: impl Into<Vec<i64>>) -> Self {
        GroupElement {
            free: coords.into(),
            torsion: Vec::new(),
        }
    }

    pub fn free_coords(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_coords(&self) -> &[u64] {
        &self.torsion
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.free)?;
        if !self.torsion.is_empty() {
            write!(f, "+{:?}", self.torsion)?;
        }
        Ok(())
    }
}

impl GroupDescriptor {
    pub fn new(free_rank: usize, torsion_orders: Vec<u64>) -> Result<Self> {
        Self::with_real_rank(free_rank, torsion_orders, 0)
    }

    pub fn with_real_rank(
        free_rank: usize,
        torsion_orders: Vec<u64>,
        formal_real_rank: usize,
    ) -> Result<Self> {
        if let Some(d) = torsion_orders.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDescriptor(format!(
                "torsion order {d} is below 2"
            )));
        }
        Ok(GroupDescriptor {
            free_rank,
            torsion_orders,
            formal_real_rank,
        })
    }

    /// Z^k.
    pub fn lattice(k: usize) -> Self {
        GroupDescriptor {
            free_rank: k,
            torsion_orders: Vec::new(),
            formal_real_rank: 0,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion_orders
    }

    pub fn formal_real_rank(&self) -> usize {
        self.formal_real_rank
    }

    pub fn is_discrete(&self) -> bool {
        self.formal_real_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0 && self.is_discrete()
    }

    /// Number of elements of the torsion part F.
    pub fn torsion_size(&self) -> u64 {
        self.torsion_orders.iter().product()
    }

    /// Least common multiple of the torsion orders (1 when torsion-free).
    pub fn torsion_exponent(&self) -> u64 {
        self.torsion_orders.iter().fold(1, |acc, d| acc.lcm(d))
    }

    fn ensure_discrete(&self) -> Result<()> {
        if self.is_discrete() {
            Ok(())
        } else {
            Err(Error::NotDiscrete(self.formal_real_rank))
        }
    }

    /// Builds an element, reducing torsion coordinates modulo their orders.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        self.ensure_discrete()?;
        if free.len() != self.free_rank || torsion.len() != self.torsion_orders.len() {
            return Err(Error::DescriptorMismatch(format!(
                "expected {} free and {} torsion coordinates, got {} and {}",
                self.free_rank,
                self.torsion_orders.len(),
                free.len(),
                torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Element with the given free coordinates and zero torsion.
    pub fn free_element(&self, free: Vec<i64>) -> Result<GroupElement> {
        self.element(free, vec![0; self.torsion_orders.len()])
    }

    pub fn zero(&self) -> Result<GroupElement> {
        self.free_element(vec![0; self.free_rank])
    }

    /// Checks that `a` is a well-formed element of this group.
    pub fn check(&self, a: &GroupElement) -> Result<()> {
        self.ensure_discrete()?;
        let ok = a.free.len() == self.free_rank
            && a.torsion.len() == self.torsion_orders.len()
            && a.torsion.iter().zip(&self.torsion_orders).all(|(x, d)| x < d);
        if ok {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{a} is not an element of {self}")))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let free = a
            .free
            .iter()
            .zip(&b.free)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("group addition")))
            .collect::<Result<_>>()?;
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion_orders)
            .map(|((x, y), d)| (x + y) % d)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.scalar_mul(-1, a)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// The m-fold sum of `a` (inverse sum for negative m).
    pub fn scalar_mul(&self, m: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let free = a
            .free
            .iter()
            .map(|x| x.checked_mul(m).ok_or(Error::Overflow("group scalar multiple")))
            .collect::<Result<_>>()?;
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion_orders)
            .map(|(&x, &d)| {
                let d = d as i128;
                ((x as i128 * (m as i128)).rem_euclid(d)) as u64
            })
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Generators probed by difference tests: free unit vectors, then the
    /// unit residue of each cyclic torsion factor.
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        self.ensure_discrete()?;
        let k = self.free_rank;
        let r = self.torsion_orders.len();
        let mut out = Vec::with_capacity(k + r);
        for i in 0..k {
            let mut free = vec![0; k];
            free[i] = 1;
            out.push(GroupElement {
                free,
                torsion: vec![0; r],
            });
        }
        for i in 0..r {
            let mut torsion = vec![0; r];
            torsion[i] = 1;
            out.push(GroupElement {
                free: vec![0; k],
                torsion,
            });
        }
        Ok(out)
    }

    /// All torsion residue vectors, in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.torsion_orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Every element with free coordinates in `[lo, hi]` and arbitrary torsion.
    pub fn box_elements(&self, lo: i64, hi: i64) -> Result<Vec<GroupElement>> {
        self.ensure_discrete()?;
        let frees = integer_box(self.free_rank, lo, hi);
        let tors = self.torsion_elements();
        Ok(frees
            .iter()
            .flat_map(|f| {
                tors.iter().map(move |t| GroupElement {
                    free: f.clone(),
                    torsion: t.clone(),
                })
            })
            .collect())
    }

    /// Z^k with the same free rank, representing G/H_0.
    pub fn quotient_by_h0(&self) -> Result<GroupDescriptor> {
        self.ensure_discrete()?;
        Ok(GroupDescriptor::lattice(self.free_rank))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.formal_real_rank > 0 {
            parts.push(format!("R^{}", self.formal_real_rank));
        }
        if self.free_rank > 0 || (self.torsion_orders.is_empty() && self.formal_real_rank == 0) {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion_orders.iter().map(|d| format!("Z_{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// All integer vectors of length `dim` with entries in `[lo, hi]`, in
/// lexicographic order.
pub fn integer_box(dim: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemigroupKind {
    FullGroup,
    StandardOrthant,
    GeneratorList,
}

/// A subsemigroup J of a discrete group with J − J = G assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupDescriptor {
    ambient: GroupDescriptor,
    kind: SemigroupKind,
    generators: Vec<GroupElement>,
}

/// Cap on explored coefficient vectors in generator-list membership.
const MEMBERSHIP_NODE_CAP: u64 = 2_000_000;

impl SemigroupDescriptor {
    pub fn full_group(ambient: GroupDescriptor) -> Result<Self> {
        ambient.ensure_discrete()?;
        Ok(SemigroupDescriptor {
            ambient,
            kind: SemigroupKind::FullGroup,
            generators: Vec::new(),
        })
    }

    pub fn standard_orthant(ambient: GroupDescriptor) -> Result<Self> {
        ambient.ensure_discrete()?;
        Ok(SemigroupDescriptor {
            ambient,
            kind: SemigroupKind::StandardOrthant,
            generators: Vec::new(),
        })
    }

    pub fn generator_list(ambient: GroupDescriptor, generators: Vec<GroupElement>) -> Result<Self> {
        ambient.ensure_discrete()?;
        for g in &generators {
            ambient.check(g)?;
        }
        Ok(SemigroupDescriptor {
            ambient,
            kind: SemigroupKind::GeneratorList,
            generators,
        })
    }

    pub fn ambient(&self) -> &GroupDescriptor {
        &self.ambient
    }

    pub fn kind(&self) -> SemigroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Membership test. For generator lists a failed bounded search is
    /// reported as `SearchBoundExceeded` unless non-membership is proven.
    pub fn contains(&self, t: &GroupElement) -> Result<bool> {
        self.ambient.check(t)?;
        match self.kind {
            SemigroupKind::FullGroup => Ok(true),
            SemigroupKind::StandardOrthant => Ok(t.free.iter().all(|&x| x >= 0)),
            SemigroupKind::GeneratorList => self.generator_membership(t),
        }
    }

    fn generator_membership(&self, t: &GroupElement) -> Result<bool> {
        if t.free.iter().all(|&x| x == 0) && t.torsion.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        let g = self.generators.len();
        if g == 0 {
            return Ok(false);
        }
        let max_coord = t.free.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        let spec_bound = (1 + max_coord).saturating_mul(g as u64);

        if let Some(bounds) = self.exact_bounds(t) {
            // A finite box that provably contains every solution.
            return match self.search(t, &bounds)? {
                Some(found) => Ok(found),
                None => Err(Error::SearchBoundExceeded),
            };
        }
        let bounds = vec![spec_bound; g];
        match self.search(t, &bounds)? {
            Some(true) => Ok(true),
            _ => Err(Error::SearchBoundExceeded),
        }
    }

    /// Exact per-generator coefficient bounds when some weight vector in
    /// {-1,0,1}^k is strictly positive on every generator with a nonzero
    /// free part. Torsion-only generators are bounded by the group exponent.
    fn exact_bounds(&self, t: &GroupElement) -> Option<Vec<u64>> {
        let k = self.ambient.free_rank;
        let exponent = self.ambient.torsion_exponent();
        let free_gens: Vec<&GroupElement> = self
            .generators
            .iter()
            .filter(|g| g.free.iter().any(|&x| x != 0))
            .collect();
        let weights = if free_gens.is_empty() {
            vec![vec![0; k]]
        } else {
            integer_box(k, -1, 1)
        };
        let dot = |w: &[i64], v: &[i64]| -> i128 {
            w.iter().zip(v).map(|(a, b)| *a as i128 * *b as i128).sum()
        };
        for w in weights {
            if !free_gens.iter().all(|g| dot(&w, &g.free) > 0) {
                continue;
            }
            let target = dot(&w, &t.free);
            if target < 0 {
                return Some(vec![0; self.generators.len()]);
            }
            if free_gens.is_empty() && t.free.iter().any(|&x| x != 0) {
                return Some(vec![0; self.generators.len()]);
            }
            let bounds = self
                .generators
                .iter()
                .map(|g| {
                    if g.free.iter().all(|&x| x == 0) {
                        exponent.saturating_sub(1)
                    } else {
                        (target / dot(&w, &g.free)) as u64
                    }
                })
                .collect();
            return Some(bounds);
        }
        None
    }

    /// Depth-first search over coefficient vectors within `bounds`.
    /// `Ok(None)` means the node cap was hit.
    fn search(&self, t: &GroupElement, bounds: &[u64]) -> Result<Option<bool>> {
        let mut nodes = 0u64;
        let zero = self.ambient.zero()?;
        let found = self.search_from(0, zero, t, bounds, &mut nodes)?;
        if found {
            Ok(Some(true))
        } else if nodes >= MEMBERSHIP_NODE_CAP {
            Ok(None)
        } else {
            Ok(Some(false))
        }
    }

    fn search_from(
        &self,
        idx: usize,
        partial: GroupElement,
        t: &GroupElement,
        bounds: &[u64],
        nodes: &mut u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes >= MEMBERSHIP_NODE_CAP {
            return Ok(false);
        }
        if idx == self.generators.len() {
            return Ok(&partial == t);
        }
        let mut acc = partial;
        for c in 0..=bounds[idx] {
            if c > 0 {
                acc = self.ambient.add(&acc, &self.generators[idx])?;
            }
            if self.search_from(idx + 1, acc.clone(), t, bounds, nodes)? {
                return Ok(true);
            }
            if *nodes >= MEMBERSHIP_NODE_CAP {
                return Ok(false);
            }
        }
        Ok(false)
    }

    /// t = u − v with u, v in the standard orthant: u = max(t, 0) keeping
    /// t's torsion, v = max(−t, 0) with zero torsion.
    pub fn orthant_decompose(&self, t: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        if self.kind != SemigroupKind::StandardOrthant {
            return Err(Error::NoDecomposition);
        }
        orthant_decompose(&self.ambient, t)
    }
}

/// Splits `t` into its positive and negative free parts.
pub fn orthant_decompose(g: &GroupDescriptor, t: &GroupElement) -> Result<(GroupElement, GroupElement)> {
    g.check(t)?;
    let u = GroupElement {
        free: t.free.iter().map(|&x| x.max(0)).collect(),
        torsion: t.torsion.clone(),
    };
    let v = GroupElement {
        free: t
            .free
            .iter()
            .map(|&x| x.checked_neg().map(|y| y.max(0)).ok_or(Error::Overflow("orthant split")))
            .collect::<Result<_>>()?,
        torsion: vec![0; t.torsion.len()],
    };
    Ok((u, v))
}

/// H_0, the common kernel of all homomorphisms into R. For Z^k × F this is
/// {0}^k × F: homomorphisms into R vanish on torsion, and the coordinate
/// projections separate the free part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Subgroup {
    ambient: GroupDescriptor,
}

impl H0Subgroup {
    pub fn ambient(&self) -> &GroupDescriptor {
        &self.ambient
    }

    /// The subgroup as an abstract group (its torsion factors).
    pub fn as_group(&self) -> GroupDescriptor {
        GroupDescriptor {
            free_rank: 0,
            torsion_orders: self.ambient.torsion_orders.clone(),
            formal_real_rank: 0,
        }
    }

    pub fn order(&self) -> u64 {
        self.ambient.torsion_size()
    }

    pub fn contains(&self, t: &GroupElement) -> Result<bool> {
        self.ambient.check(t)?;
        Ok(t.free.iter().all(|&x| x == 0))
    }

    /// All elements of H_0 embedded in the ambient group.
    pub fn elements(&self) -> Vec<GroupElement> {
        let k = self.ambient.free_rank;
        self.ambient
            .torsion_elements()
            .into_iter()
            .map(|torsion| GroupElement {
                free: vec![0; k],
                torsion,
            })
            .collect()
    }
}

pub fn h0_subgroup(g: &GroupDescriptor) -> Result<H0Subgroup> {
    g.ensure_discrete()?;
    Ok(H0Subgroup { ambient: g.clone() })
}

/// The canonical projection G → G/H_0 ≅ Z^k (drops torsion coordinates).
pub fn project_mod_h0(g: &GroupDescriptor, t: &GroupElement) -> Result<GroupElement> {
    g.check(t)?;
    Ok(GroupElement::free(t.free.clone()))
}
