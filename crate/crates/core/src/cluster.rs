//! Cluster-tilting objects of the cluster category, complement exchange, and
//! the module category of the cluster-tilted algebra `Gamma = End_C(T)^op`,
//! realized as `C / add(tau T)`.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ar::{build_derived_window, knit_ar_quiver, ArVertex, DEFAULT_COPY_RANGE};
use crate::dynkin::{DynkinType, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, zero_vector, Rational, Subspace, Vector};
use crate::mesh::{CMorphism, MeshCategory, OrbitCategory};

/// The cluster category of a Dynkin type, with its Ext-compatibility graph.
#[derive(Debug)]
pub struct ClusterCategory {
    ty: DynkinType,
    orbit: OrbitCategory,
    compat: Vec<FixedBitSet>,
}

impl ClusterCategory {
    pub fn new(ty: DynkinType) -> Result<Self> {
        Self::with_orientation(&ty.default_orientation())
    }

    pub fn with_orientation(orientation: &Quiver) -> Result<Self> {
        let ty = orientation.dynkin_type()?;
        let base = knit_ar_quiver(orientation)?;
        let window = build_derived_window(base, DEFAULT_COPY_RANGE)?;
        let orbit = OrbitCategory::new(MeshCategory::new(window))?;
        let n = orbit.len();
        let compat = (0..n)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(n);
                for j in 0..n {
                    if j != i && orbit.compatible(i, j) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        Ok(ClusterCategory { ty, orbit, compat })
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn orbit(&self) -> &OrbitCategory {
        &self.orbit
    }

    /// The fundamental domain, as window vertices; object ids index this list.
    pub fn fundamental_domain(&self) -> &[ArVertex] {
        self.orbit.objects()
    }

    pub fn object_ref(&self, x: usize) -> ObjectRef {
        let v = self.orbit.object(x);
        if v.copy == 0 {
            ObjectRef::Root(v.module)
        } else {
            ObjectRef::ShiftedProj(self.orbit.window().base().module(v.module).projective_of.unwrap())
        }
    }

    pub fn resolve(&self, r: ObjectRef) -> Result<usize> {
        let base = self.orbit.window().base();
        match r {
            ObjectRef::Root(m) if m < base.len() => Ok(m),
            ObjectRef::ShiftedProj(p) if p < base.rank() => Ok(base.len() + p),
            ObjectRef::Root(m) => Err(Error::InvalidTilting(format!("no module with id {m}"))),
            ObjectRef::ShiftedProj(p) => Err(Error::InvalidTilting(format!("no vertex {p}"))),
        }
    }

    pub fn compatible(&self, x: usize, y: usize) -> bool {
        x == y || self.compat[x].contains(y)
    }

    /// Checks Ext-orthogonality, size and maximality.
    pub fn validate(&self, summands: &[usize]) -> Result<TiltingObject> {
        let set: BTreeSet<usize> = summands.iter().copied().collect();
        if set.len() != summands.len() {
            return Err(Error::InvalidTilting("repeated summand".into()));
        }
        if let Some(&x) = set.iter().find(|&&x| x >= self.orbit.len()) {
            return Err(Error::InvalidTilting(format!("object {x} out of range")));
        }
        for &x in &set {
            for &y in &set {
                if self.orbit.ext1(x, y) != 0 {
                    return Err(Error::InvalidTilting(format!(
                        "not orthogonal: Ext^1({}, {}) != 0",
                        self.orbit.label(x),
                        self.orbit.label(y)
                    )));
                }
            }
        }
        if let Some(z) = (0..self.orbit.len()).find(|z| !set.contains(z) && set.iter().all(|&x| self.compatible(x, *z)))
        {
            return Err(Error::InvalidTilting(format!("not maximal: {} can be added", self.orbit.label(z))));
        }
        if set.len() != self.rank() {
            return Err(Error::InvalidTilting(format!("{} summands, expected {}", set.len(), self.rank())));
        }
        Ok(TiltingObject { summands: set.into_iter().collect() })
    }

    /// The image of `H = (+) P_p`.
    pub fn hereditary(&self) -> TiltingObject {
        let base = self.orbit.window().base();
        let mut s: Vec<usize> = (0..base.rank()).map(|p| base.projective(p)).collect();
        s.sort_unstable();
        TiltingObject { summands: s }
    }

    /// All maximal compatible sets (Bron-Kerbosch with pivoting over the
    /// compatibility graph). With `budget`, stops after that many and
    /// reports the enumeration as incomplete.
    pub fn enumerate_tilting(&self, budget: Option<usize>) -> Result<Enumeration> {
        let n = self.orbit.len();
        let roots: Vec<Vec<Vec<usize>>> = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut p = self.compat[v].clone();
                let mut x = self.compat[v].clone();
                for u in 0..n {
                    if u < v {
                        p.set(u, false);
                    } else {
                        x.set(u, false);
                    }
                }
                let mut out = Vec::new();
                let mut r = vec![v];
                self.bron_kerbosch(&mut r, p, x, &mut out, budget);
                out
            })
            .collect();
        let mut all: Vec<Vec<usize>> = roots.into_iter().flatten().collect();
        for c in all.iter_mut() {
            c.sort_unstable();
        }
        all.sort();
        let complete = budget.is_none_or(|b| all.len() <= b);
        if let Some(b) = budget {
            all.truncate(b);
        }
        for c in &all {
            if c.len() != self.rank() {
                return Err(Error::Consistency(format!("maximal compatible set of size {}", c.len())));
            }
        }
        Ok(Enumeration { tilting: all.into_iter().map(|summands| TiltingObject { summands }).collect(), complete })
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: FixedBitSet,
        mut x: FixedBitSet,
        out: &mut Vec<Vec<usize>>,
        budget: Option<usize>,
    ) {
        if budget.is_some_and(|b| out.len() > b) {
            return;
        }
        if p.is_clear() {
            if x.is_clear() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p.ones().chain(x.ones()).max_by_key(|&u| p.intersection(&self.compat[u]).count()).unwrap();
        let mut p = p;
        let candidates: Vec<usize> = p.difference(&self.compat[pivot]).collect();
        for v in candidates {
            let mut np = p.clone();
            np.intersect_with(&self.compat[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.compat[v]);
            r.push(v);
            self.bron_kerbosch(r, np, nx, out, budget);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }

    /// The completions of an almost complete tilting object.
    pub fn complements(&self, tbar: &[usize]) -> Result<(usize, usize)> {
        let set: BTreeSet<usize> = tbar.iter().copied().collect();
        if set.len() + 1 != self.rank() {
            return Err(Error::NotAlmostComplete(format!("{} summands given", set.len())));
        }
        for &x in &set {
            for &y in &set {
                if !self.compatible(x, y) {
                    return Err(Error::NotAlmostComplete("summands are not orthogonal".into()));
                }
            }
        }
        let found: Vec<usize> =
            (0..self.orbit.len()).filter(|z| !set.contains(z) && set.iter().all(|&x| self.compatible(x, *z))).collect();
        match found[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::NotAlmostComplete(format!("{} completions", found.len()))),
        }
    }

    /// Replaces summand `u` (position in the sorted list) by its other
    /// complement. Returns the new tilting object and the new summand.
    pub fn exchange(&self, t: &TiltingObject, u: usize) -> Result<(TiltingObject, usize)> {
        let x = t.summands[u];
        let tbar: Vec<usize> = t.summands.iter().copied().filter(|&s| s != x).collect();
        let (a, b) = self.complements(&tbar)?;
        let other = if a == x {
            b
        } else if b == x {
            a
        } else {
            return Err(Error::Consistency("summand is not a complement of the rest".into()));
        };
        let mut s = tbar;
        s.push(other);
        s.sort_unstable();
        Ok((TiltingObject { summands: s }, other))
    }

    /// A random mutation walk from the hereditary tilting object. Returns the
    /// visited tilting objects, starting point included.
    pub fn random_walk(&self, seed: u64, steps: usize) -> Result<Vec<TiltingObject>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = self.hereditary();
        let mut out = vec![cur.clone()];
        for _ in 0..steps {
            let u = rng.random_range(0..self.rank());
            cur = self.exchange(&cur, u)?.0;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn tilting_to_refs(&self, t: &TiltingObject) -> Vec<ObjectRef> {
        t.summands.iter().map(|&x| self.object_ref(x)).collect()
    }

    pub fn tilting_from_json(&self, s: &str) -> Result<TiltingObject> {
        let refs: Vec<ObjectRef> = serde_json::from_str(s)?;
        let ids = refs.into_iter().map(|r| self.resolve(r)).collect::<Result<Vec<_>>>()?;
        self.validate(&ids)
    }

    /// The quiver of `End_C(T)^op`: `k` arrows `a -> b` when the irreducible
    /// maps `T_b -> T_a` inside `add T` form a space of dimension `k`.
    pub fn cluster_tilted_quiver(&self, tilting: &TiltingObject) -> Result<Quiver> {
        let c = &self.orbit;
        let t = &tilting.summands;
        let n = t.len();
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let dim = c.hom_dim(t[b], t[a]);
                if a == b || dim == 0 {
                    continue;
                }
                let mut rad2 = Subspace::zero(dim);
                for (m, &tm) in t.iter().enumerate() {
                    if m == a || m == b {
                        continue;
                    }
                    for i in 0..c.hom_dim(t[b], tm) {
                        let f = c.basis_morphism(t[b], tm, i);
                        for j in 0..c.hom_dim(tm, t[a]) {
                            let g = c.basis_morphism(tm, t[a], j);
                            rad2.insert(&c.compose(&g, &f)?.coeffs);
                        }
                    }
                }
                let k = dim - rad2.dim();
                if k > 0 {
                    arrows.push((a, b, k as i32));
                }
            }
        }
        Quiver::from_arrows(n, &arrows)
            .map_err(|e| Error::Consistency(format!("quiver of the cluster-tilted algebra: {e}")))
    }

    /// Builds `mod Gamma` for a tilting object.
    pub fn module_category(&self, t: &TiltingObject) -> Result<CTAlgebra<'_>> {
        CTAlgebra::new(self, t.clone())
    }
}

/// A fundamental-domain object as referenced in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ObjectRef {
    Root(usize),
    ShiftedProj(usize),
}

/// A basic cluster-tilting object, as sorted fundamental-domain ids. Vertex
/// `u` of the cluster-tilted algebra corresponds to `summands[u]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TiltingObject {
    pub summands: Vec<usize>,
}

impl TiltingObject {
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.summands.iter().position(|&s| s == x)
    }
}

impl fmt::Display for TiltingObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.summands)
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub tilting: Vec<TiltingObject>,
    pub complete: bool,
}

/// `Hom_Gamma(X, Y)` as a quotient of `Hom_C(X, Y)`.
#[derive(Clone, Debug)]
struct Quotient {
    ideal: Subspace,
    basis: Vec<usize>,
}

impl Quotient {
    fn project(&self, v: &[Rational]) -> Vector {
        let r = self.ideal.reduce(v);
        self.basis.iter().map(|&c| r[c]).collect()
    }

    fn lift(&self, v: &[Rational]) -> Vector {
        let mut out = zero_vector(self.ideal.ambient());
        for (&c, &x) in self.basis.iter().zip(v) {
            out[c] = x;
        }
        out
    }
}

/// A morphism of `mod Gamma` between indecomposables (by position in
/// [`CTAlgebra::ind`]), in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMorphism {
    pub source: usize,
    pub target: usize,
    pub coeffs: Vector,
}

impl ModMorphism {
    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }
}

/// The cluster-tilted algebra of a tilting object, through its module
/// category.
#[derive(Debug)]
pub struct CTAlgebra<'a> {
    cat: &'a ClusterCategory,
    tilting: TiltingObject,
    quiver: Quiver,
    ind: Vec<usize>,
    position: Vec<Option<usize>>,
    quotients: Vec<Vec<Quotient>>,
    proj: Vec<usize>,
    inj: Vec<usize>,
    simple: Vec<usize>,
    dims: Vec<Vec<usize>>,
}

impl<'a> CTAlgebra<'a> {
    fn new(cat: &'a ClusterCategory, tilting: TiltingObject) -> Result<Self> {
        let c = cat.orbit();
        let n = tilting.rank();
        let deleted: Vec<usize> = tilting.summands.iter().map(|&t| c.tau(t)).collect();
        let ind: Vec<usize> = (0..c.len()).filter(|x| !deleted.contains(x)).collect();
        if ind.len() != c.len() - n {
            return Err(Error::Consistency("tau T has repeated summands".into()));
        }
        let mut position = vec![None; c.len()];
        for (i, &x) in ind.iter().enumerate() {
            position[x] = Some(i);
        }

        let quotients: Vec<Vec<Quotient>> = ind
            .par_iter()
            .map(|&x| {
                ind.iter()
                    .map(|&y| {
                        let mut ideal = Subspace::zero(c.hom_dim(x, y));
                        if ideal.ambient() > 0 {
                            for &d in &deleted {
                                for i in 0..c.hom_dim(x, d) {
                                    let f = c.basis_morphism(x, d, i);
                                    for j in 0..c.hom_dim(d, y) {
                                        let g = c.basis_morphism(d, y, j);
                                        ideal.insert(&c.compose(&g, &f).expect("endpoints match").coeffs);
                                    }
                                }
                            }
                        }
                        let basis = ideal.non_pivots();
                        Quotient { ideal, basis }
                    })
                    .collect()
            })
            .collect();

        let quiver = cat.cluster_tilted_quiver(&tilting)?;
        let t = &tilting.summands;

        let pos = |x: usize| position[x].expect("object in ind Gamma");
        let proj: Vec<usize> = t.iter().map(|&x| pos(x)).collect();
        let inj: Vec<usize> = t.iter().map(|&x| pos(c.tau(c.tau(x)))).collect();
        let dims: Vec<Vec<usize>> = ind.iter().map(|&y| t.iter().map(|&tb| c.hom_dim(tb, y)).collect()).collect();
        let simple: Vec<usize> = (0..n)
            .map(|a| {
                dims.iter()
                    .position(|d| d.iter().enumerate().all(|(b, &x)| x == usize::from(a == b)))
                    .ok_or_else(|| Error::Consistency(format!("no simple module at vertex {a}")))
            })
            .collect::<Result<_>>()?;

        let alg = CTAlgebra { cat, tilting, quiver, ind, position, quotients, proj, inj, simple, dims };
        alg.check()?;
        Ok(alg)
    }

    fn check(&self) -> Result<()> {
        let c = self.cat.orbit();
        for (b, &pb) in self.proj.iter().enumerate() {
            for y in 0..self.ind.len() {
                if self.hom_dim(pb, y) != self.dims[y][b] {
                    return Err(Error::Consistency("Hom(P_b, X) differs from the dimension vector".into()));
                }
            }
            if self.quotients[pb][pb].basis.len() != 1 {
                return Err(Error::Consistency("identity of a projective vanishes".into()));
            }
        }
        for x in 0..self.ind.len() {
            if self.dims[x].iter().all(|&d| d == 0) {
                return Err(Error::Consistency(format!("zero module {}", c.label(self.ind[x]))));
            }
        }
        let distinct: BTreeSet<&Vec<usize>> = self.dims.iter().collect();
        if distinct.len() != self.dims.len() {
            return Err(Error::Consistency("dimension vectors of indecomposables repeat".into()));
        }
        Ok(())
    }

    pub fn category(&self) -> &'a ClusterCategory {
        self.cat
    }

    pub fn tilting(&self) -> &TiltingObject {
        &self.tilting
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.tilting.rank()
    }

    /// Fundamental-domain ids of the indecomposable `Gamma`-modules.
    pub fn ind(&self) -> &[usize] {
        &self.ind
    }

    pub fn ind_count(&self) -> usize {
        self.ind.len()
    }

    pub fn position(&self, object: usize) -> Option<usize> {
        self.position[object]
    }

    pub fn projective(&self, a: usize) -> usize {
        self.proj[a]
    }

    pub fn injective(&self, a: usize) -> usize {
        self.inj[a]
    }

    pub fn simple(&self, a: usize) -> usize {
        self.simple[a]
    }

    pub fn dim_vector(&self, x: usize) -> &[usize] {
        &self.dims[x]
    }

    pub fn is_self_injective(&self) -> bool {
        let p: BTreeSet<usize> = self.proj.iter().copied().collect();
        let i: BTreeSet<usize> = self.inj.iter().copied().collect();
        p == i
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.quotients[x][y].basis.len()
    }

    pub fn identity(&self, x: usize) -> ModMorphism {
        self.project(&self.cat.orbit().identity(self.ind[x]))
    }

    pub fn zero(&self, x: usize, y: usize) -> ModMorphism {
        ModMorphism { source: x, target: y, coeffs: zero_vector(self.hom_dim(x, y)) }
    }

    pub fn basis_morphism(&self, x: usize, y: usize, j: usize) -> ModMorphism {
        let mut coeffs = zero_vector(self.hom_dim(x, y));
        coeffs[j] = Rational::ONE;
        ModMorphism { source: x, target: y, coeffs }
    }

    /// Image of a cluster-category morphism between objects of `ind Gamma`.
    pub fn project(&self, f: &CMorphism) -> ModMorphism {
        let (x, y) = (self.position[f.source].unwrap(), self.position[f.target].unwrap());
        ModMorphism { source: x, target: y, coeffs: self.quotients[x][y].project(&f.coeffs) }
    }

    pub fn lift(&self, f: &ModMorphism) -> CMorphism {
        CMorphism {
            source: self.ind[f.source],
            target: self.ind[f.target],
            coeffs: self.quotients[f.source][f.target].lift(&f.coeffs),
        }
    }

    /// Coordinates in `Hom_C(X, Y)` of the ideal of maps factoring through
    /// `add(tau T)`.
    pub fn ideal(&self, x: usize, y: usize) -> &Subspace {
        &self.quotients[x][y].ideal
    }

    /// `g . f`.
    pub fn compose(&self, g: &ModMorphism, f: &ModMorphism) -> Result<ModMorphism> {
        if f.target != g.source {
            return Err(Error::EndpointMismatch);
        }
        let h = self.cat.orbit().compose(&self.lift(g), &self.lift(f))?;
        Ok(self.project(&h))
    }

    /// AR arrows of the cluster category between indecomposable
    /// `Gamma`-modules, as morphisms of `mod Gamma`.
    pub fn ar_arrows(&self) -> Vec<ModMorphism> {
        self.cat
            .orbit()
            .arrows()
            .iter()
            .filter(|a| self.position[a.source].is_some() && self.position[a.target].is_some())
            .map(|a| self.project(&a.morphism))
            .collect()
    }

    /// `tau` of the cluster category restricted to `ind Gamma`, where defined.
    pub fn tau(&self, x: usize) -> Option<usize> {
        self.position[self.cat.orbit().tau(self.ind[x])]
    }

    pub fn label(&self, x: usize) -> String {
        self.cat.orbit().label(self.ind[x])
    }
}

/// Vertex correspondence for an exchange at `x`: `perm[u]` is the vertex of
/// `t2` matching vertex `u` of `t1`.
pub fn exchange_permutation(t1: &TiltingObject, t2: &TiltingObject, x: usize, new: usize) -> Vec<usize> {
    (0..t1.rank())
        .map(|u| {
            let obj = if u == x { new } else { t1.summands[u] };
            t2.position(obj).expect("exchange keeps the other summands")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(s: &str) -> ClusterCategory {
        ClusterCategory::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn tilting_counts() {
        for (s, count) in [("A1", 2), ("A2", 5), ("A3", 14), ("A4", 42), ("D4", 50)] {
            let e = cat(s).enumerate_tilting(None).unwrap();
            assert!(e.complete);
            assert_eq!(e.tilting.len(), count, "{s}");
        }
    }

    #[test]
    fn budget_marks_incomplete() {
        let e = cat("A4").enumerate_tilting(Some(10)).unwrap();
        assert_eq!(e.tilting.len(), 10);
        assert!(!e.complete);
    }

    #[test]
    fn every_tilting_validates_and_has_two_complements() {
        let c = cat("A3");
        for t in c.enumerate_tilting(None).unwrap().tilting {
            assert_eq!(c.validate(&t.summands).unwrap(), t);
            for u in 0..3 {
                let tbar: Vec<usize> = t.summands.iter().copied().filter(|&s| s != t.summands[u]).collect();
                let (a, b) = c.complements(&tbar).unwrap();
                assert!(a == t.summands[u] || b == t.summands[u]);
            }
        }
    }

    #[test]
    fn a2_complements_of_a_projective() {
        let c = cat("A2");
        let p = c.hereditary().summands[0];
        let (a, b) = c.complements(&[p]).unwrap();
        assert_ne!(a, b);
        assert!(c.compatible(p, a) && c.compatible(p, b));
        assert!(c.complements(&[]).is_err());
    }

    #[test]
    fn validation_errors() {
        let c = cat("A3");
        let t = c.hereditary();
        assert!(c.validate(&t.summands[..2]).is_err());
        let s = c.orbit().shift(t.summands[0]);
        // X and X[1] = tau X are never orthogonal
        let bad = [t.summands[0], s, t.summands[1]];
        assert!(matches!(c.validate(&bad), Err(Error::InvalidTilting(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = cat("D4");
        let t = c.random_walk(3, 5).unwrap().pop().unwrap();
        let json = serde_json::to_string(&c.tilting_to_refs(&t)).unwrap();
        assert_eq!(c.tilting_from_json(&json).unwrap(), t);
        assert!(c.tilting_from_json(r#"[{"root": 0}]"#).is_err());
        assert!(c.tilting_from_json(r#"[{"shiftedProj": 9}, {"root": 0}, {"root": 1}, {"root": 2}]"#).is_err());
        assert_eq!(serde_json::to_string(&ObjectRef::ShiftedProj(2)).unwrap(), r#"{"shiftedProj":2}"#);
    }

    #[test]
    fn hereditary_baseline_quiver() {
        for s in ["A1", "A4", "D5", "E6"] {
            let c = cat(s);
            let t = c.hereditary();
            let alg = c.module_category(&t).unwrap();
            let base = c.orbit().window().base();
            // vertex u of Gamma is P_p with p = perm[u]
            let perm: Vec<usize> =
                t.summands.iter().map(|&x| base.module(c.orbit().object(x).module).projective_of.unwrap()).collect();
            assert_eq!(alg.quiver().relabel(&perm), c.dynkin_type().default_orientation(), "{s}");
            assert_eq!(alg.ind_count(), c.dynkin_type().positive_root_count());
        }
    }

    #[test]
    fn hereditary_baseline_hom_dims() {
        let c = cat("A4");
        let alg = c.module_category(&c.hereditary()).unwrap();
        let mesh = c.orbit().mesh();
        // modules in copy 0 survive, and Hom_Gamma equals Hom_H
        for x in 0..alg.ind_count() {
            for y in 0..alg.ind_count() {
                let (vx, vy) = (c.orbit().object(alg.ind()[x]), c.orbit().object(alg.ind()[y]));
                assert_eq!(vx.copy, 0);
                assert_eq!(alg.hom_dim(x, y), mesh.hom_dim(vx, vy));
            }
        }
    }

    #[test]
    fn a3_has_a_cycle() {
        let c = cat("A3");
        let cycle = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap().canonical_form();
        let found = c
            .enumerate_tilting(None)
            .unwrap()
            .tilting
            .iter()
            .any(|t| c.module_category(t).unwrap().quiver().canonical_form() == cycle);
        assert!(found);
    }

    #[test]
    fn quiver_mutates_with_exchange() {
        let c = cat("D5");
        for t in c.random_walk(7, 12).unwrap() {
            let q = c.module_category(&t).unwrap().quiver().clone();
            for x in 0..5 {
                let (t2, new) = c.exchange(&t, x).unwrap();
                let q2 = c.module_category(&t2).unwrap().quiver().clone();
                let perm = exchange_permutation(&t, &t2, x, new);
                assert_eq!(q.mutate(x).unwrap().relabel(&perm), q2);
            }
        }
    }

    #[test]
    fn simples_and_exchange_partners() {
        let c = cat("A4");
        for t in c.enumerate_tilting(None).unwrap().tilting {
            let alg = c.module_category(&t).unwrap();
            for x in 0..4 {
                let (_, new) = c.exchange(&t, x).unwrap();
                let s = alg.position(c.orbit().tau(new)).unwrap();
                assert_eq!(alg.simple(x), s);
                // top of P_x is S_x
                assert_eq!(alg.hom_dim(alg.projective(x), alg.simple(x)), 1);
                // socle of I_x is S_x
                assert_eq!(alg.hom_dim(alg.simple(x), alg.injective(x)), 1);
            }
        }
    }

    #[test]
    fn module_composition_is_well_defined() {
        let c = cat("A3");
        for t in c.enumerate_tilting(None).unwrap().tilting {
            let alg = c.module_category(&t).unwrap();
            let m = alg.ind_count();
            for x in 0..m {
                for y in 0..m {
                    for i in 0..alg.hom_dim(x, y) {
                        let f = alg.basis_morphism(x, y, i);
                        assert_eq!(alg.compose(&alg.identity(y), &f).unwrap(), f);
                        // composing with ideal elements gives zero
                        for z in 0..m {
                            for v in alg.ideal(y, z).basis() {
                                let g = CMorphism { source: alg.ind()[y], target: alg.ind()[z], coeffs: v.clone() };
                                let h = c.orbit().compose(&g, &alg.lift(&f)).unwrap();
                                assert!(alg.project(&h).is_zero());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn self_injective_d4() {
        let c = cat("D4");
        let count = c
            .enumerate_tilting(None)
            .unwrap()
            .tilting
            .iter()
            .filter(|t| c.module_category(t).unwrap().is_self_injective())
            .count();
        assert!(count > 0);
    }

    #[test]
    fn random_walk_is_deterministic() {
        let c = cat("E6");
        assert_eq!(c.random_walk(42, 20).unwrap(), c.random_walk(42, 20).unwrap());
        assert_eq!(c.random_walk(42, 20).unwrap().len(), 21);
    }
}
