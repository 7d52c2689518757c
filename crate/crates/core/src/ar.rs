//! Auslander-Reiten quiver of `mod H` for a Dynkin orientation, and finite
//! windows of the derived category built from shifted copies of it.
//!
//! Knitting runs on the translation quiver `Z Q^op`: vertex `(a, t)` is the
//! `t`-th inverse translate of the projective `P_a`. Grothendieck classes are
//! additive on meshes, so the classes of all vertices follow from those of the
//! projectives; the modules are exactly the vertices whose class is positive
//! before their orbit first turns negative.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dynkin::Quiver;
use crate::error::{Error, Result};

/// One indecomposable `H`-module in the knitted AR quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseModule {
    /// Vertex of the orientation whose inverse-translation orbit contains
    /// this module.
    pub orbit: usize,
    /// Number of inverse translations from the projective of that orbit.
    pub step: usize,
    pub dim: Vec<i64>,
    /// `Some(p)` if this module is the projective `P_p`.
    pub projective_of: Option<usize>,
    /// `Some(p)` if this module is the injective `I_p`.
    pub injective_of: Option<usize>,
}

/// The AR quiver of `mod H` for `H` the path algebra of a Dynkin orientation.
///
/// Convention: `P_a` has basis the paths starting at `a`, so an arrow `a -> b`
/// of the orientation makes `P_b` a summand of `rad P_a` and gives the
/// irreducible map `P_b -> P_a`.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    orientation: Quiver,
    modules: Vec<BaseModule>,
    arrows: Vec<(usize, usize)>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    projective: Vec<usize>,
    injective: Vec<usize>,
}

fn path_counts(q: &Quiver) -> Vec<Vec<i64>> {
    // paths[a][b] = number of paths a -> b
    let n = q.n();
    let order = q.topological_order();
    let mut paths = vec![vec![0i64; n]; n];
    for a in 0..n {
        paths[a][a] = 1;
        for &u in &order {
            if paths[a][u] == 0 {
                continue;
            }
            for v in 0..n {
                if q.entry(u, v) > 0 {
                    paths[a][v] += paths[a][u] * q.entry(u, v) as i64;
                }
            }
        }
    }
    paths
}

/// Knits the AR quiver of `mod kQ` for an acyclic orientation `Q` of a
/// simply-laced Dynkin diagram.
pub fn knit_ar_quiver(orientation: &Quiver) -> Result<ArQuiver> {
    let ty = orientation.dynkin_type()?;
    if !orientation.is_acyclic() {
        return Err(Error::InvalidQuiver("orientation has an oriented cycle".into()));
    }
    let n = orientation.n();
    let paths = path_counts(orientation);
    let proj_dim: Vec<Vec<i64>> = (0..n).map(|a| paths[a].clone()).collect();
    let inj_dim: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| paths[b][a]).collect()).collect();

    // Within a slice, (b, t) -> (a, t) for every arrow a -> b, so vertices
    // are processed sinks first.
    let mut slice_order = orientation.topological_order();
    slice_order.reverse();

    let arrow = |u: usize, v: usize| orientation.entry(u, v) > 0;

    let mut classes: Vec<Vec<Vec<i64>>> = Vec::new(); // classes[t][a]
    classes.push(proj_dim.clone());
    let mut alive = vec![true; n];
    let mut last_step = vec![0usize; n];
    // per orbit: Some(step) once the class turned negative
    let mut ended: Vec<Option<usize>> = vec![None; n];
    let bound = 4 * n + 8;

    let sign = |v: &[i64]| -> Result<i32> {
        let pos = v.iter().any(|&x| x > 0);
        let neg = v.iter().any(|&x| x < 0);
        match (pos, neg) {
            (true, false) => Ok(1),
            (false, true) => Ok(-1),
            _ => Err(Error::Knitting(format!("class {v:?} is neither positive nor negative"))),
        }
    };

    for a in 0..n {
        if sign(&classes[0][a])? != 1 {
            return Err(Error::Knitting("projective with non-positive dimension vector".into()));
        }
    }

    let mut t = 0;
    while alive.iter().any(|&x| x) {
        if t > bound {
            return Err(Error::Knitting("knitting did not terminate".into()));
        }
        let mut next = vec![vec![0i64; n]; n];
        for &a in &slice_order {
            // predecessors of (a, t+1): (b, t+1) for a -> b, (c, t) for c -> a
            let mut v = vec![0i64; n];
            for b in 0..n {
                if arrow(a, b) {
                    for i in 0..n {
                        v[i] += next[b][i];
                    }
                }
                if arrow(b, a) {
                    for i in 0..n {
                        v[i] += classes[t][b][i];
                    }
                }
            }
            for i in 0..n {
                v[i] -= classes[t][a][i];
            }
            next[a] = v;
        }
        for a in 0..n {
            if !alive[a] {
                continue;
            }
            match sign(&next[a])? {
                1 => last_step[a] = t + 1,
                _ => {
                    alive[a] = false;
                    ended[a] = Some(t + 1);
                }
            }
        }
        classes.push(next);
        t += 1;
    }

    // Enumerate modules slice by slice, in slice order; this is a
    // topological order of the AR quiver.
    let mut id_of = vec![vec![None; n]; classes.len()];
    let mut modules = Vec::new();
    for (t, slice) in classes.iter().enumerate() {
        for &a in &slice_order {
            if t <= last_step[a] {
                id_of[t][a] = Some(modules.len());
                modules.push(BaseModule {
                    orbit: a,
                    step: t,
                    dim: slice[a].clone(),
                    projective_of: (t == 0).then_some(a),
                    injective_of: None,
                });
            }
        }
    }

    // The vertex after the last module of an orbit is P_x[1] with class
    // -dim P_x, and the last module is I_x.
    let mut injective = vec![usize::MAX; n];
    for a in 0..n {
        let end = ended[a].expect("every orbit ends");
        let shifted: Vec<i64> = classes[end][a].iter().map(|x| -x).collect();
        let x = (0..n)
            .find(|&x| proj_dim[x] == shifted)
            .ok_or_else(|| Error::Knitting(format!("orbit {a} does not end at a shifted projective")))?;
        let id = id_of[last_step[a]][a].unwrap();
        if modules[id].dim != inj_dim[x] {
            return Err(Error::Knitting(format!(
                "last module of orbit {a} has dimension {:?}, expected I_{x} = {:?}",
                modules[id].dim, inj_dim[x]
            )));
        }
        if injective[x] != usize::MAX {
            return Err(Error::Knitting(format!("injective I_{x} found twice")));
        }
        injective[x] = id;
        modules[id].injective_of = Some(x);
    }
    let projective: Vec<usize> = (0..n).map(|a| id_of[0][a].unwrap()).collect();

    let mut arrows = Vec::new();
    for (id, m) in modules.iter().enumerate() {
        let (a, t) = (m.orbit, m.step);
        for b in 0..n {
            // (a, t) -> (b, t) when b -> a; (a, t) -> (b, t+1) when a -> b
            if arrow(b, a) {
                if let Some(j) = id_of[t][b] {
                    arrows.push((id, j));
                }
            }
            if arrow(a, b) && t + 1 < classes.len() {
                if let Some(j) = id_of[t + 1][b] {
                    arrows.push((id, j));
                }
            }
        }
    }
    arrows.sort_unstable();

    let count = modules.len();
    let mut preds = vec![Vec::new(); count];
    let mut succs = vec![Vec::new(); count];
    for &(u, v) in &arrows {
        succs[u].push(v);
        preds[v].push(u);
    }
    let mut tau = vec![None; count];
    let mut tau_inv = vec![None; count];
    for (id, m) in modules.iter().enumerate() {
        if m.step > 0 {
            let prev = id_of[m.step - 1][m.orbit].unwrap();
            tau[id] = Some(prev);
            tau_inv[prev] = Some(id);
        }
    }

    let ar = ArQuiver {
        orientation: orientation.clone(),
        modules,
        arrows,
        preds,
        succs,
        tau,
        tau_inv,
        projective,
        injective,
    };
    if ar.modules.len() != ty.positive_root_count() {
        return Err(Error::Knitting(format!(
            "{} indecomposables, expected {} for {ty}",
            ar.modules.len(),
            ty.positive_root_count()
        )));
    }
    let dims: BTreeSet<&Vec<i64>> = ar.modules.iter().map(|m| &m.dim).collect();
    if dims.len() != ar.modules.len() {
        return Err(Error::Knitting("dimension vectors are not pairwise distinct".into()));
    }
    Ok(ar)
}

impl ArQuiver {
    pub fn orientation(&self) -> &Quiver {
        &self.orientation
    }

    pub fn rank(&self) -> usize {
        self.orientation.n()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[BaseModule] {
        &self.modules
    }

    pub fn module(&self, id: usize) -> &BaseModule {
        &self.modules[id]
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn preds(&self, id: usize) -> &[usize] {
        &self.preds[id]
    }

    pub fn succs(&self, id: usize) -> &[usize] {
        &self.succs[id]
    }

    pub fn tau(&self, id: usize) -> Option<usize> {
        self.tau[id]
    }

    pub fn tau_inv(&self, id: usize) -> Option<usize> {
        self.tau_inv[id]
    }

    /// Module id of `P_p`.
    pub fn projective(&self, p: usize) -> usize {
        self.projective[p]
    }

    /// Module id of `I_p`.
    pub fn injective(&self, p: usize) -> usize {
        self.injective[p]
    }

    pub fn is_projective(&self, id: usize) -> bool {
        self.modules[id].projective_of.is_some()
    }

    pub fn is_injective(&self, id: usize) -> bool {
        self.modules[id].injective_of.is_some()
    }

    /// Module id with the given dimension vector, if any.
    pub fn find_by_dim(&self, dim: &[i64]) -> Option<usize> {
        self.modules.iter().position(|m| m.dim == dim)
    }
}

/// An indecomposable object `M[copy]` of the derived category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArVertex {
    pub module: usize,
    pub copy: i32,
}

impl ArVertex {
    pub fn new(module: usize, copy: i32) -> Self {
        ArVertex { module, copy }
    }

    pub fn shift(self, by: i32) -> Self {
        ArVertex { module: self.module, copy: self.copy + by }
    }
}

pub const DEFAULT_COPY_RANGE: (i32, i32) = (-3, 3);

/// Copies `copy_min..=copy_max` of the AR quiver of `mod H`, glued into a
/// connected piece of the AR quiver of the derived category.
///
/// Glue arrows go from copy `j-1` to copy `j`: the mesh ending at `P_p[j]`
/// starts at `I_p[j-1]`, with middle terms the summands of `rad P_p` in copy
/// `j` and the summands of `I_p / soc I_p` in copy `j-1`.
#[derive(Clone, Debug)]
pub struct ArWindow {
    base: ArQuiver,
    copy_min: i32,
    copy_max: i32,
    /// `(u, v)`: arrow `u[j-1] -> v[j]` for every `j`.
    glue: Vec<(usize, usize)>,
    glue_preds: Vec<Vec<usize>>,
    glue_succs: Vec<Vec<usize>>,
}

pub fn build_derived_window(base: ArQuiver, copy_range: (i32, i32)) -> Result<ArWindow> {
    let (copy_min, copy_max) = copy_range;
    if copy_min > -2 || copy_max < 2 {
        return Err(Error::WindowTooSmall { min: copy_min, max: copy_max });
    }
    let mut glue = BTreeSet::new();
    for p in 0..base.rank() {
        let pp = base.projective(p);
        let ip = base.injective(p);
        for &e in base.preds(pp) {
            glue.insert((ip, e));
        }
        for &e in base.succs(ip) {
            glue.insert((e, pp));
        }
    }
    let glue: Vec<(usize, usize)> = glue.into_iter().collect();
    let mut glue_preds = vec![Vec::new(); base.len()];
    let mut glue_succs = vec![Vec::new(); base.len()];
    for &(u, v) in &glue {
        glue_succs[u].push(v);
        glue_preds[v].push(u);
    }
    let w = ArWindow { base, copy_min, copy_max, glue, glue_preds, glue_succs };
    w.check_meshes()?;
    Ok(w)
}

impl ArWindow {
    pub fn base(&self) -> &ArQuiver {
        &self.base
    }

    pub fn copy_range(&self) -> (i32, i32) {
        (self.copy_min, self.copy_max)
    }

    pub fn glue_arrows(&self) -> &[(usize, usize)] {
        &self.glue
    }

    pub fn contains(&self, v: ArVertex) -> bool {
        v.module < self.base.len() && (self.copy_min..=self.copy_max).contains(&v.copy)
    }

    pub fn vertex_count(&self) -> usize {
        self.base.len() * (self.copy_max - self.copy_min + 1) as usize
    }

    /// Dense id: vertices are numbered copy by copy, then by module id, which
    /// is a topological order.
    pub fn id(&self, v: ArVertex) -> usize {
        debug_assert!(self.contains(v));
        (v.copy - self.copy_min) as usize * self.base.len() + v.module
    }

    pub fn vertex(&self, id: usize) -> ArVertex {
        let m = self.base.len();
        ArVertex { module: id % m, copy: self.copy_min + (id / m) as i32 }
    }

    pub fn vertices(&self) -> impl Iterator<Item = ArVertex> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex(i))
    }

    /// Immediate predecessors in the infinite translation quiver (no window
    /// check).
    pub fn preds_unbounded(&self, v: ArVertex) -> Vec<ArVertex> {
        let mut out: Vec<ArVertex> = self.base.preds(v.module).iter().map(|&u| ArVertex::new(u, v.copy)).collect();
        out.extend(self.glue_preds[v.module].iter().map(|&u| ArVertex::new(u, v.copy - 1)));
        out
    }

    pub fn succs_unbounded(&self, v: ArVertex) -> Vec<ArVertex> {
        let mut out: Vec<ArVertex> = self.base.succs(v.module).iter().map(|&u| ArVertex::new(u, v.copy)).collect();
        out.extend(self.glue_succs[v.module].iter().map(|&u| ArVertex::new(u, v.copy + 1)));
        out
    }

    pub fn preds(&self, v: ArVertex) -> Vec<ArVertex> {
        self.preds_unbounded(v).into_iter().filter(|&u| self.contains(u)).collect()
    }

    pub fn succs(&self, v: ArVertex) -> Vec<ArVertex> {
        self.succs_unbounded(v).into_iter().filter(|&u| self.contains(u)).collect()
    }

    pub fn has_arrow(&self, u: ArVertex, v: ArVertex) -> bool {
        if v.copy == u.copy {
            self.base.succs(u.module).contains(&v.module)
        } else if v.copy == u.copy + 1 {
            self.glue_succs[u.module].contains(&v.module)
        } else {
            false
        }
    }

    /// Translation on the infinite quiver.
    pub fn tau_unbounded(&self, v: ArVertex) -> ArVertex {
        match self.base.tau(v.module) {
            Some(u) => ArVertex::new(u, v.copy),
            None => {
                let p = self.base.module(v.module).projective_of.expect("no tau means projective");
                ArVertex::new(self.base.injective(p), v.copy - 1)
            }
        }
    }

    pub fn tau_inv_unbounded(&self, v: ArVertex) -> ArVertex {
        match self.base.tau_inv(v.module) {
            Some(u) => ArVertex::new(u, v.copy),
            None => {
                let p = self.base.module(v.module).injective_of.expect("no inverse tau means injective");
                ArVertex::new(self.base.projective(p), v.copy + 1)
            }
        }
    }

    /// `tau` (direction `+1`) or `tau^-1` (direction `-1`), staying in the
    /// window.
    pub fn translate(&self, v: ArVertex, direction: i32) -> Result<ArVertex> {
        let out = match direction {
            1 => self.tau_unbounded(v),
            -1 => self.tau_inv_unbounded(v),
            _ => panic!("translate direction must be +1 or -1"),
        };
        if self.contains(out) {
            Ok(out)
        } else {
            Err(Error::WindowExit { module: out.module, copy: out.copy })
        }
    }

    /// `F^power` with `F = tau^-1 [1]`, on the infinite quiver.
    pub fn f_unbounded(&self, v: ArVertex, power: i32) -> ArVertex {
        let mut cur = v;
        if power >= 0 {
            for _ in 0..power {
                cur = self.tau_inv_unbounded(cur).shift(1);
            }
        } else {
            for _ in 0..(-power) {
                cur = self.tau_unbounded(cur.shift(-1));
            }
        }
        cur
    }

    pub fn f_apply(&self, v: ArVertex, power: i32) -> Result<ArVertex> {
        let out = self.f_unbounded(v, power);
        if self.contains(out) {
            Ok(out)
        } else {
            Err(Error::WindowExit { module: out.module, copy: out.copy })
        }
    }

    /// Whether `v` lies in the fundamental domain: a module in copy 0, or a
    /// shifted projective in copy 1.
    pub fn in_fundamental_domain(&self, v: ArVertex) -> bool {
        v.copy == 0 || (v.copy == 1 && self.base.is_projective(v.module))
    }

    /// The representative of the `F`-orbit of `v` in the fundamental domain,
    /// with the power `k` such that `F^k v` is that representative.
    pub fn canonicalize(&self, v: ArVertex) -> (ArVertex, i32) {
        let mut cur = v;
        let mut k = 0;
        while !self.in_fundamental_domain(cur) {
            if cur.copy < 0 {
                cur = self.f_unbounded(cur, 1);
                k += 1;
            } else {
                cur = self.f_unbounded(cur, -1);
                k -= 1;
            }
        }
        (cur, k)
    }

    /// Checks that every mesh lying in the window is a mesh: the arrows into
    /// `Z` come from the same vertices as the arrows out of `tau Z`.
    pub fn check_meshes(&self) -> Result<()> {
        for v in self.vertices() {
            let t = self.tau_unbounded(v);
            if !self.contains(t) {
                continue;
            }
            let mut into: Vec<ArVertex> = self.preds_unbounded(v);
            let mut out: Vec<ArVertex> = self.succs_unbounded(t);
            into.sort();
            out.sort();
            if into != out {
                return Err(Error::Consistency(format!("mesh at {v:?}: preds {into:?} vs succs of tau {out:?}")));
            }
            if into.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Consistency(format!("multiple arrow into {v:?}")));
            }
            if self.tau_inv_unbounded(t) != v {
                return Err(Error::Consistency(format!("tau^-1 tau != id at {v:?}")));
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> WindowDump {
        let vertices = self
            .vertices()
            .map(|v| {
                let m = self.base.module(v.module);
                DumpVertex {
                    id: self.id(v),
                    module_id: v.module,
                    copy: v.copy,
                    dim_vector: m.dim.clone(),
                    proj: m.projective_of.is_some(),
                    inj: m.injective_of.is_some(),
                }
            })
            .collect();
        let mut arrows = Vec::new();
        for v in self.vertices() {
            for u in self.succs(v) {
                arrows.push([self.id(v), self.id(u)]);
            }
        }
        WindowDump { vertices, arrows }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DumpVertex {
    pub id: usize,
    pub module_id: usize,
    pub copy: i32,
    pub dim_vector: Vec<i64>,
    pub proj: bool,
    pub inj: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowDump {
    pub vertices: Vec<DumpVertex>,
    pub arrows: Vec<[usize; 2]>,
}

/// Knits `mod H` for the type's default orientation and builds the default
/// window.
pub fn default_window(ty: crate::dynkin::DynkinType) -> Result<ArWindow> {
    let base = knit_ar_quiver(&ty.default_orientation())?;
    build_derived_window(base, DEFAULT_COPY_RANGE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    fn all_orientations(edges: &[(usize, usize)], n: usize) -> Vec<Quiver> {
        (0..(1u32 << edges.len()))
            .map(|mask| {
                let arrows: Vec<_> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u, 1) } else { (u, v, 1) })
                    .collect();
                Quiver::from_arrows(n, &arrows).unwrap()
            })
            .collect()
    }

    #[test]
    fn knit_a1() {
        let ar = knit_ar_quiver(&ty("A1").default_orientation()).unwrap();
        assert_eq!(ar.len(), 1);
        assert!(ar.arrows().is_empty());
        assert!(ar.is_projective(0) && ar.is_injective(0));
    }

    #[test]
    fn knit_a2() {
        // 0 -> 1: P_1 = S_1 -> P_0 -> S_0 = I_0, tau S_0 = P_1
        let ar = knit_ar_quiver(&ty("A2").default_orientation()).unwrap();
        assert_eq!(ar.len(), 3);
        let p1 = ar.projective(1);
        let p0 = ar.projective(0);
        let s0 = ar.find_by_dim(&[1, 0]).unwrap();
        assert_eq!(ar.module(p1).dim, vec![0, 1]);
        assert_eq!(ar.module(p0).dim, vec![1, 1]);
        assert_eq!(ar.arrows(), &[(p1, p0), (p0, s0)]);
        assert_eq!(ar.tau(s0), Some(p1));
        assert_eq!(ar.injective(0), s0);
        assert_eq!(ar.injective(1), p0);
    }

    #[test]
    fn knit_every_orientation_counts_roots() {
        for s in ["A3", "A4", "D4", "D5", "E6"] {
            let t = ty(s);
            for q in all_orientations(&t.edges(), t.rank()) {
                let ar = knit_ar_quiver(&q).unwrap();
                assert_eq!(ar.len(), t.positive_root_count(), "{s} {q:?}");
            }
        }
        for s in ["E7", "E8", "D8", "A8"] {
            let t = ty(s);
            assert_eq!(knit_ar_quiver(&t.default_orientation()).unwrap().len(), t.positive_root_count());
        }
    }

    #[test]
    fn knit_rejects_non_dynkin() {
        let cycle = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(knit_ar_quiver(&cycle).is_err());
    }

    #[test]
    fn window_a1() {
        let w = default_window(ty("A1")).unwrap();
        assert_eq!(w.vertex_count(), 7);
        let v = ArVertex::new(0, 1);
        assert_eq!(w.translate(v, 1).unwrap(), ArVertex::new(0, 0));
        assert!(w.preds(v).is_empty() && w.succs(v).is_empty());
    }

    #[test]
    fn window_a2_glue() {
        let w = default_window(ty("A2")).unwrap();
        let ar = w.base();
        let (p0, p1, s0) = (ar.projective(0), ar.projective(1), ar.injective(0));
        assert_eq!(ar.injective(1), p0);
        assert_eq!(w.glue_arrows(), &[(s0, p1)]);
        assert_eq!(w.translate(ArVertex::new(p1, 1), 1).unwrap(), ArVertex::new(p0, 0));
        assert_eq!(w.translate(ArVertex::new(s0, 0), 1).unwrap(), ArVertex::new(p1, 0));
        assert_eq!(w.preds(ArVertex::new(p1, 1)), vec![ArVertex::new(s0, 0)]);
    }

    #[test]
    fn window_too_small() {
        let base = knit_ar_quiver(&ty("A2").default_orientation()).unwrap();
        assert!(matches!(build_derived_window(base, (-1, 2)), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn f_action() {
        let w = default_window(ty("D4")).unwrap();
        let ar = w.base();
        for id in 0..ar.len() {
            let v = ArVertex::new(id, 0);
            if !ar.is_injective(id) {
                assert_eq!(w.f_apply(v, 1).unwrap(), ArVertex::new(ar.tau_inv(id).unwrap(), 1));
            }
            assert_eq!(w.f_apply(w.f_apply(v, 1).unwrap(), -1).unwrap(), v);
        }
        for p in 0..4 {
            let ip = ArVertex::new(ar.injective(p), 0);
            assert_eq!(w.f_apply(ip, 1).unwrap(), ArVertex::new(ar.projective(p), 2));
            let pp = ArVertex::new(ar.projective(p), 0);
            assert_eq!(w.f_apply(pp, -1).unwrap(), ArVertex::new(ar.injective(p), -2));
            assert_eq!(w.translate(ArVertex::new(ar.projective(p), 1), 1).unwrap(), ArVertex::new(ar.injective(p), 0));
        }
    }

    #[test]
    fn f_is_fixed_point_free_and_commutes_with_tau() {
        for s in ["A3", "D4", "E6"] {
            let w = default_window(ty(s)).unwrap();
            for v in w.vertices() {
                let f = w.f_unbounded(v, 1);
                assert_ne!(f, v);
                assert_eq!(w.tau_unbounded(f), w.f_unbounded(w.tau_unbounded(v), 1));
            }
        }
    }

    #[test]
    fn f_preserves_arrows() {
        let w = default_window(ty("D5")).unwrap();
        for u in w.vertices() {
            for v in w.succs(u) {
                assert!(w.has_arrow(w.f_unbounded(u, 1), w.f_unbounded(v, 1)));
                assert!(w.has_arrow(w.f_unbounded(u, -1), w.f_unbounded(v, -1)));
            }
        }
    }

    #[test]
    fn canonicalize_is_f_invariant() {
        let w = default_window(ty("A4")).unwrap();
        for v in w.vertices() {
            let (c, k) = w.canonicalize(v);
            assert!(w.in_fundamental_domain(c));
            assert_eq!(w.f_unbounded(v, k), c);
            assert_eq!(w.canonicalize(w.f_unbounded(v, 1)).0, c);
        }
    }

    #[test]
    fn dump_shape() {
        let w = default_window(ty("A2")).unwrap();
        let d = w.dump();
        assert_eq!(d.vertices.len(), 21);
        let json = serde_json::to_value(&d).unwrap();
        assert!(json["vertices"][0].get("moduleId").is_some());
        assert!(json["vertices"][0].get("dimVector").is_some());
    }
}
