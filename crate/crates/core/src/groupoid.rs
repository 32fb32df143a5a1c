//! Finite groupoids: construction, validation, orbits, invariant subsets,
//! restrictions, and Haar systems.
//!
//! Units and arrows are dense indices. Composition is a partial map defined
//! exactly on pairs (xi, eta) with d(xi) = r(eta). Unit spaces carry the
//! discrete topology, so orbit closures equal orbits and every subset is
//! clopen, hence tame; the quasi-order on orbit closures degenerates to
//! orbit equality.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupoid {
    n_units: usize,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    unit_arrow: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    d_fiber: Vec<Vec<usize>>,
}

/// Index bookkeeping produced by a restriction: new unit/arrow -> old.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub unit_old: Vec<usize>,
    pub arrow_old: Vec<usize>,
    pub arrow_new: HashMap<usize, usize>,
    pub unit_new: HashMap<usize, usize>,
}

impl FiniteGroupoid {
    pub fn from_parts(
        n_units: usize,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        unit_arrow: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let g = Self::assemble(n_units, source, range, inverse, unit_arrow, compose)?;
        g.validate()?;
        Ok(g)
    }

    fn assemble(
        n_units: usize,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        unit_arrow: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n_arrows = source.len();
        if range.len() != n_arrows || inverse.len() != n_arrows {
            return Err(Error::GroupoidAxiom("table lengths disagree".into()));
        }
        if unit_arrow.len() != n_units {
            return Err(Error::GroupoidAxiom("unit embedding length".into()));
        }
        let mut d_fiber: Vec<Vec<usize>> = vec![Vec::new(); n_units];
        for a in 0..n_arrows {
            if source[a] >= n_units || range[a] >= n_units {
                return Err(Error::GroupoidAxiom(format!("arrow {a} has bad endpoint")));
            }
            d_fiber[source[a]].push(a);
        }
        // basis order inside a fiber: (range unit, arrow id)
        for f in d_fiber.iter_mut() {
            f.sort_by_key(|&a| (range[a], a));
        }
        Ok(Self {
            n_units,
            source,
            range,
            inverse,
            unit_arrow,
            compose,
            d_fiber,
        })
    }

    /// Exhaustive check of the groupoid axioms (intended for sizes up to
    /// roughly a thousand arrows).
    pub fn validate(&self) -> Result<()> {
        let n = self.n_arrows();
        for x in 0..self.n_units {
            let u = self.unit_arrow[x];
            if u >= n || self.source[u] != x || self.range[u] != x {
                return Err(Error::GroupoidAxiom(format!("unit arrow of {x} is not an identity at {x}")));
            }
        }
        for a in 0..n {
            let inv = self.inverse[a];
            if inv >= n {
                return Err(Error::GroupoidAxiom(format!("inverse of {a} out of range")));
            }
            if self.inverse[inv] != a {
                return Err(Error::GroupoidAxiom(format!("inverse not involutive at {a}")));
            }
            if self.source[inv] != self.range[a] || self.range[inv] != self.source[a] {
                return Err(Error::GroupoidAxiom(format!("d/r of inverse of {a} wrong")));
            }
        }
        // composition defined exactly when d(xi) = r(eta), with the right endpoints
        for xi in 0..n {
            for eta in 0..n {
                let defined = self.compose.get(&(xi, eta));
                if self.source[xi] == self.range[eta] {
                    let c = match defined {
                        Some(&c) => c,
                        None => {
                            return Err(Error::GroupoidAxiom(format!("({xi},{eta}) composable but undefined")))
                        }
                    };
                    if self.source[c] != self.source[eta] || self.range[c] != self.range[xi] {
                        return Err(Error::GroupoidAxiom(format!("endpoints of {xi}∘{eta} wrong")));
                    }
                } else if defined.is_some() {
                    return Err(Error::GroupoidAxiom(format!("({xi},{eta}) not composable but defined")));
                }
            }
        }
        // units are two-sided identities; inverse laws
        for a in 0..n {
            let ra = self.unit_arrow[self.range[a]];
            let sa = self.unit_arrow[self.source[a]];
            if self.compose(ra, a) != Some(a) || self.compose(a, sa) != Some(a) {
                return Err(Error::GroupoidAxiom(format!("unit arrows not neutral at {a}")));
            }
            if self.compose(a, self.inverse[a]) != Some(ra) {
                return Err(Error::GroupoidAxiom(format!("xi xi^-1 != r-unit at {a}")));
            }
            if self.compose(self.inverse[a], a) != Some(sa) {
                return Err(Error::GroupoidAxiom(format!("xi^-1 xi != d-unit at {a}")));
            }
        }
        // associativity on all composable triples
        for xi in 0..n {
            for eta in &self.r_fiber_arrows(self.source[xi]) {
                let eta = *eta;
                // here r(eta) = d(xi)
                let xi_eta = self.compose(xi, eta).unwrap();
                for zeta in &self.r_fiber_arrows(self.source[eta]) {
                    let zeta = *zeta;
                    let eta_zeta = self.compose(eta, zeta).unwrap();
                    if self.compose(xi_eta, zeta) != self.compose(xi, eta_zeta) {
                        return Err(Error::GroupoidAxiom(format!(
                            "associativity fails at ({xi},{eta},{zeta})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    // arrows with range x, derived from the inverse map
    fn r_fiber_arrows(&self, x: usize) -> Vec<usize> {
        self.d_fiber[x]
            .iter()
            .map(|&a| self.inverse[a])
            .collect()
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    pub fn n_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn unit_arrow(&self, x: usize) -> usize {
        self.unit_arrow[x]
    }

    pub fn compose(&self, xi: usize, eta: usize) -> Option<usize> {
        self.compose.get(&(xi, eta)).copied()
    }

    /// d-fiber of x, sorted by (range unit, arrow id). This ordering is the
    /// basis order of the regular representation.
    pub fn fiber(&self, x: usize) -> &[usize] {
        &self.d_fiber[x]
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let mut pairs: Vec<(usize, usize, usize)> =
            self.compose.iter().map(|(&(a, b), &c)| (a, b, c)).collect();
        pairs.sort_unstable();
        pairs.into_iter()
    }

    /// Orbit partition of the unit space, each orbit sorted, orbits ordered
    /// by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n_units).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for a in 0..self.n_arrows() {
            let (s, r) = (find(&mut parent, self.source[a]), find(&mut parent, self.range[a]));
            if s != r {
                parent[s.max(r)] = s.min(r);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.n_units {
            let root = find(&mut parent, x);
            groups.entry(root).or_default().push(x);
        }
        let mut orbits: Vec<Vec<usize>> = groups.into_values().collect();
        for o in orbits.iter_mut() {
            o.sort_unstable();
        }
        orbits.sort_by_key(|o| o[0]);
        orbits
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        self.orbits()
            .into_iter()
            .find(|o| o.contains(&x))
            .expect("unit in some orbit")
    }

    /// One representative per orbit (the smallest unit).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        self.orbits().into_iter().map(|o| o[0]).collect()
    }

    /// The orbit-closure quasi-order x ≺ y. In the finite discrete topology
    /// closures equal orbits, so this degenerates to orbit equality.
    pub fn quasi_order(&self, x: usize, y: usize) -> bool {
        let orbits = self.orbits();
        let ox = orbits.iter().position(|o| o.contains(&x));
        let oy = orbits.iter().position(|o| o.contains(&y));
        ox == oy
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Restricted groupoid Ξ(M) = {xi | d(xi), r(xi) in M}, with the index
    /// bookkeeping needed to transport kernels.
    pub fn restrict(&self, m: &UnitSubset) -> Result<(FiniteGroupoid, RestrictionMap)> {
        if m.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &x in m.iter() {
            if x >= self.n_units {
                return Err(Error::UnknownUnit(x));
            }
        }
        let unit_old: Vec<usize> = m.iter().copied().collect();
        let unit_new: HashMap<usize, usize> =
            unit_old.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let arrow_old: Vec<usize> = (0..self.n_arrows())
            .filter(|&a| m.contains(self.source[a]) && m.contains(self.range[a]))
            .collect();
        let arrow_new: HashMap<usize, usize> =
            arrow_old.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let source = arrow_old.iter().map(|&a| unit_new[&self.source[a]]).collect();
        let range = arrow_old.iter().map(|&a| unit_new[&self.range[a]]).collect();
        let inverse = arrow_old.iter().map(|&a| arrow_new[&self.inverse[a]]).collect();
        let unit_arrow = unit_old.iter().map(|&x| arrow_new[&self.unit_arrow[x]]).collect();
        let mut compose = HashMap::new();
        for (&(a, b), &c) in self.compose.iter() {
            if let (Some(&na), Some(&nb)) = (arrow_new.get(&a), arrow_new.get(&b)) {
                // both endpoints of a and b lie in M, hence so do those of c
                compose.insert((na, nb), arrow_new[&c]);
            }
        }
        let g = Self::assemble(unit_old.len(), source, range, inverse, unit_arrow, compose)?;
        Ok((
            g,
            RestrictionMap {
                unit_old,
                arrow_old,
                arrow_new,
                unit_new,
            },
        ))
    }

    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> FiniteGroupoid {
        let mut n_units = 0;
        let mut source = Vec::new();
        let mut range = Vec::new();
        let mut inverse = Vec::new();
        let mut unit_arrow = Vec::new();
        let mut compose = HashMap::new();
        let mut arrow_off = 0;
        for g in parts {
            source.extend(g.source.iter().map(|&x| x + n_units));
            range.extend(g.range.iter().map(|&x| x + n_units));
            inverse.extend(g.inverse.iter().map(|&a| a + arrow_off));
            unit_arrow.extend(g.unit_arrow.iter().map(|&a| a + arrow_off));
            for (&(a, b), &c) in g.compose.iter() {
                compose.insert((a + arrow_off, b + arrow_off), c + arrow_off);
            }
            n_units += g.n_units;
            arrow_off += g.n_arrows();
        }
        Self::assemble(n_units, source, range, inverse, unit_arrow, compose)
            .expect("disjoint union of valid groupoids")
    }
}

/// Pair groupoid on n points: arrows are ordered pairs (i,j) with
/// d(i,j) = j, r(i,j) = i and (i,j)(j,k) = (i,k).
pub fn build_pair_groupoid(n: usize) -> FiniteGroupoid {
    assert!(n >= 1, "pair groupoid needs at least one point");
    let id = |i: usize, j: usize| i * n + j;
    let mut source = vec![0; n * n];
    let mut range = vec![0; n * n];
    let mut inverse = vec![0; n * n];
    let mut unit_arrow = vec![0; n];
    let mut compose = HashMap::new();
    for i in 0..n {
        unit_arrow[i] = id(i, i);
        for j in 0..n {
            source[id(i, j)] = j;
            range[id(i, j)] = i;
            inverse[id(i, j)] = id(j, i);
            for k in 0..n {
                compose.insert((id(i, j), id(j, k)), id(i, k));
            }
        }
    }
    FiniteGroupoid::assemble(n, source, range, inverse, unit_arrow, compose)
        .expect("pair groupoid is valid")
}

/// Arrow id of the pair (i,j) in `build_pair_groupoid(n)`.
pub fn pair_arrow(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Transformation groupoid X ⋊ G of a left action: arrows are (x, a) with
/// d(x,a) = x, r(x,a) = a·x and (a·x, b)(x, a) = (x, ba).
///
/// `action[a][x]` is the image of x under the group element a. The action
/// axioms are verified and violations reported with a witness triple.
pub fn build_transformation_groupoid(
    group: &FiniteGroup,
    action: &[Vec<usize>],
    n_points: usize,
) -> Result<FiniteGroupoid> {
    let ng = group.order();
    if action.len() != ng {
        return Err(Error::InvalidModel("action table has wrong group size".into()));
    }
    for row in action {
        if row.len() != n_points || row.iter().any(|&y| y >= n_points) {
            return Err(Error::InvalidModel("action table has wrong point count".into()));
        }
    }
    let e = group.identity();
    for x in 0..n_points {
        if action[e][x] != x {
            return Err(Error::ActionAxiom { a: e, b: e, x });
        }
    }
    for a in 0..ng {
        for b in 0..ng {
            let ba = group.mul(b, a);
            for x in 0..n_points {
                if action[b][action[a][x]] != action[ba][x] {
                    return Err(Error::ActionAxiom { a, b, x });
                }
            }
        }
    }
    let id = |x: usize, a: usize| x * ng + a;
    let n_arrows = n_points * ng;
    let mut source = vec![0; n_arrows];
    let mut range = vec![0; n_arrows];
    let mut inverse = vec![0; n_arrows];
    let mut unit_arrow = vec![0; n_points];
    let mut compose = HashMap::with_capacity(n_arrows * ng);
    for x in 0..n_points {
        unit_arrow[x] = id(x, e);
        for a in 0..ng {
            let arr = id(x, a);
            source[arr] = x;
            range[arr] = action[a][x];
            inverse[arr] = id(action[a][x], group.inv(a));
            for b in 0..ng {
                // (theta_a(x), b) ∘ (x, a) = (x, ba)
                compose.insert((id(action[a][x], b), arr), id(x, group.mul(b, a)));
            }
        }
    }
    FiniteGroupoid::assemble(n_points, source, range, inverse, unit_arrow, compose)
}

/// Right Haar system: one positive weight per arrow. Right invariance forces
/// the weight to factor through the range map, so weighted systems are built
/// from a positive function on units.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarSystem {
    weight: Vec<f64>,
}

impl HaarSystem {
    pub fn counting(n_arrows: usize) -> Self {
        Self {
            weight: vec![1.0; n_arrows],
        }
    }

    pub fn from_unit_function(g: &FiniteGroupoid, v: &[f64]) -> Result<Self> {
        if v.len() != g.n_units() {
            return Err(Error::InvalidModel("Haar unit function length".into()));
        }
        if v.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::InvalidModel("Haar weights must be positive".into()));
        }
        Ok(Self {
            weight: (0..g.n_arrows()).map(|a| v[g.range(a)]).collect(),
        })
    }

    pub fn weight(&self, arrow: usize) -> f64 {
        self.weight[arrow]
    }

    pub fn restrict(&self, map: &RestrictionMap) -> Self {
        Self {
            weight: map.arrow_old.iter().map(|&a| self.weight[a]).collect(),
        }
    }

    /// Full support and exhaustive right invariance.
    pub fn validate(&self, g: &FiniteGroupoid) -> Result<()> {
        if self.weight.len() != g.n_arrows() {
            return Err(Error::InvalidModel("Haar weight length".into()));
        }
        if self.weight.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidModel("Haar weights must be positive".into()));
        }
        for (eta, xi, prod) in g.composable_pairs() {
            let lhs = self.weight[eta];
            let rhs = self.weight[prod];
            if (lhs - rhs).abs() > 1e-12 * lhs.max(rhs) {
                return Err(Error::InvalidModel(format!(
                    "Haar right invariance fails at ({eta},{xi})"
                )));
            }
        }
        Ok(())
    }
}

/// A subset of the unit space. In the finite discrete topology every subset
/// is clopen and therefore tame; invariance means being a union of orbits.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitSubset {
    units: BTreeSet<usize>,
}

impl UnitSubset {
    pub fn new(units: impl IntoIterator<Item = usize>) -> Self {
        Self {
            units: units.into_iter().collect(),
        }
    }

    pub fn all(g: &FiniteGroupoid) -> Self {
        Self::new(0..g.n_units())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.units.contains(&x)
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &usize> {
        self.units.iter()
    }

    pub fn complement(&self, g: &FiniteGroupoid) -> Self {
        Self::new((0..g.n_units()).filter(|x| !self.contains(*x)))
    }

    pub fn is_invariant(&self, g: &FiniteGroupoid) -> bool {
        g.orbits()
            .iter()
            .all(|o| o.iter().all(|x| self.contains(*x)) || !o.iter().any(|x| self.contains(*x)))
    }

    /// Every finite discrete subset is tame (clopen subsets are tame).
    pub fn is_tame(&self) -> bool {
        true
    }
}
