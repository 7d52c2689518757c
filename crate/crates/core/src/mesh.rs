//! Morphisms of the mesh category of the derived window and of the orbit
//! (cluster) category.
//!
//! `Hom_D(s, -)` is computed by sweeping the two copies where it can be
//! nonzero in topological order. At each vertex `Z` the space is the cokernel
//! of `Hom_D(s, tau Z) -> (+)_{E -> Z} Hom_D(s, E)` given by the mesh ending at
//! `Z`. Each basis vector of the cokernel is the image of one coordinate of
//! the direct sum, so every basis morphism is represented by an explicit path
//! from `s` to `Z`. The sweep only depends on the module of `s`; other copies
//! are handled by shifting.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::ar::{ArVertex, ArWindow};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Rational, Subspace, Vector};

/// `Hom_D(s, -)` for a module `s` in copy 0, on copies 0 and 1.
#[derive(Clone, Debug)]
pub struct Sweep {
    source: usize,
    modules: usize,
    dims: Vec<usize>,
    /// `in_maps[z]`: for each predecessor `e` in the strip, the map
    /// `Hom(s, e) -> Hom(s, z)` induced by the arrow `e -> z`.
    in_maps: Vec<Vec<(usize, Matrix)>>,
    /// `paths[z][j]`: strip ids of a path `s -> z` representing basis vector `j`.
    paths: Vec<Vec<Vec<usize>>>,
    path_counts: Vec<u128>,
}

impl Sweep {
    fn build(w: &ArWindow, source: usize) -> Sweep {
        let m = w.base().len();
        let total = 2 * m;
        let strip =
            |v: ArVertex| -> Option<usize> { (0..=1).contains(&v.copy).then(|| v.copy as usize * m + v.module) };
        let vertex = |id: usize| ArVertex::new(id % m, (id / m) as i32);

        let mut dims = vec![0usize; total];
        let mut in_maps: Vec<Vec<(usize, Matrix)>> = vec![Vec::new(); total];
        let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); total];
        let mut path_counts = vec![0u128; total];
        dims[source] = 1;
        paths[source] = vec![vec![source]];
        path_counts[source] = 1;

        for z in 0..total {
            let zv = vertex(z);
            let preds: Vec<usize> = w.preds_unbounded(zv).into_iter().filter_map(strip).collect();
            if z != source {
                path_counts[z] = preds.iter().fold(0u128, |acc, &e| acc.saturating_add(path_counts[e]));
            }
            if z == source {
                in_maps[z] = preds.iter().map(|&e| (e, Matrix::zeros(1, dims[e]))).collect();
                continue;
            }
            let mut offsets = Vec::with_capacity(preds.len());
            let mut ambient = 0;
            for &e in &preds {
                offsets.push(ambient);
                ambient += dims[e];
            }
            if ambient == 0 {
                in_maps[z] = preds.iter().map(|&e| (e, Matrix::zeros(0, 0))).collect();
                continue;
            }
            let mut relations = Subspace::zero(ambient);
            if let Some(t) = strip(w.tau_unbounded(zv)) {
                for j in 0..dims[t] {
                    let mut r = zero_vector(ambient);
                    for (k, &e) in preds.iter().enumerate() {
                        let map = in_maps[e]
                            .iter()
                            .find(|(p, _)| *p == t)
                            .map(|(_, a)| a)
                            .expect("mesh middle term is a successor of tau Z");
                        for (i, x) in map.column(j).into_iter().enumerate() {
                            r[offsets[k] + i] = x;
                        }
                    }
                    relations.insert(&r);
                }
            }
            let basis = relations.non_pivots();
            dims[z] = basis.len();
            let locate = |c: usize| -> (usize, usize) {
                let k = offsets.partition_point(|&o| o <= c) - 1;
                // skip zero-dimensional predecessors sharing the offset
                let k = (0..=k).rev().find(|&k| offsets[k] <= c && c < offsets[k] + dims[preds[k]]).unwrap();
                (k, c - offsets[k])
            };
            paths[z] = basis
                .iter()
                .map(|&c| {
                    let (k, i) = locate(c);
                    let mut p = paths[preds[k]][i].clone();
                    p.push(z);
                    p
                })
                .collect();
            in_maps[z] = preds
                .iter()
                .enumerate()
                .map(|(k, &e)| {
                    let cols: Vec<Vector> = (0..dims[e])
                        .map(|i| {
                            let r = relations.reduce(&unit_vector(ambient, offsets[k] + i));
                            basis.iter().map(|&c| r[c]).collect()
                        })
                        .collect();
                    (e, Matrix::from_columns(basis.len(), &cols))
                })
                .collect();
        }
        Sweep { source, modules: m, dims, in_maps, paths, path_counts }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    fn strip_id(&self, rel: ArVertex) -> Option<usize> {
        (0..=1).contains(&rel.copy).then(|| rel.copy as usize * self.modules + rel.module)
    }

    /// Dimension of `Hom_D(s[0], v)`, `v` relative to the source copy.
    pub fn dim(&self, rel: ArVertex) -> usize {
        self.strip_id(rel).map_or(0, |z| self.dims[z])
    }

    fn arrow_map(&self, e: usize, z: usize) -> &Matrix {
        self.in_maps[z].iter().find(|(p, _)| *p == e).map(|(_, a)| a).expect("arrow in strip")
    }

    /// Pushes `f` in `Hom(s, path[0])` along the path, all relative.
    fn push(&self, f: &[Rational], path: &[ArVertex]) -> Option<Vector> {
        let mut cur = f.to_vec();
        for step in path.windows(2) {
            let (Some(e), Some(z)) = (self.strip_id(step[0]), self.strip_id(step[1])) else {
                return None;
            };
            cur = self.arrow_map(e, z).mul_vec(&cur);
            if is_zero_vector(&cur) {
                return None;
            }
        }
        Some(cur)
    }
}

/// A morphism of the derived window in the coordinates of the basis of
/// `Hom_D(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: ArVertex,
    pub target: ArVertex,
    pub coeffs: Vector,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphSpace {
    pub source: ArVertex,
    pub target: ArVertex,
    pub dim: usize,
    pub path_count: u128,
    /// `path_count - dim`.
    pub relation_rank: u128,
}

/// The mesh category of an [`ArWindow`].
#[derive(Clone, Debug)]
pub struct MeshCategory {
    window: ArWindow,
    sweeps: Vec<Sweep>,
}

impl MeshCategory {
    pub fn new(window: ArWindow) -> Self {
        let sweeps = (0..window.base().len()).into_par_iter().map(|s| Sweep::build(&window, s)).collect();
        MeshCategory { window, sweeps }
    }

    pub fn window(&self) -> &ArWindow {
        &self.window
    }

    pub fn sweep(&self, module: usize) -> &Sweep {
        &self.sweeps[module]
    }

    fn rel(x: ArVertex, y: ArVertex) -> ArVertex {
        ArVertex::new(y.module, y.copy - x.copy)
    }

    /// `dim Hom_D(x, y)`, on the infinite quiver.
    pub fn hom_dim(&self, x: ArVertex, y: ArVertex) -> usize {
        self.sweeps[x.module].dim(Self::rel(x, y))
    }

    pub fn hom_d(&self, x: ArVertex, y: ArVertex) -> Result<MorphSpace> {
        for v in [x, y] {
            if !self.window.contains(v) {
                return Err(Error::WindowExit { module: v.module, copy: v.copy });
            }
        }
        let s = &self.sweeps[x.module];
        let rel = Self::rel(x, y);
        let path_count = s.strip_id(rel).map_or(0, |z| s.path_counts[z]);
        let dim = s.dim(rel);
        Ok(MorphSpace { source: x, target: y, dim, path_count, relation_rank: path_count - dim as u128 })
    }

    pub fn zero(&self, x: ArVertex, y: ArVertex) -> Morphism {
        Morphism { source: x, target: y, coeffs: zero_vector(self.hom_dim(x, y)) }
    }

    pub fn identity(&self, x: ArVertex) -> Morphism {
        Morphism { source: x, target: x, coeffs: vec![Rational::ONE] }
    }

    /// The `j`-th basis morphism of `Hom_D(x, y)`.
    pub fn basis_morphism(&self, x: ArVertex, y: ArVertex, j: usize) -> Morphism {
        let d = self.hom_dim(x, y);
        Morphism { source: x, target: y, coeffs: unit_vector(d, j) }
    }

    /// The path representing the `j`-th basis morphism of `Hom_D(x, y)`.
    pub fn basis_path(&self, x: ArVertex, y: ArVertex, j: usize) -> Vec<ArVertex> {
        let s = &self.sweeps[x.module];
        let z = s.strip_id(Self::rel(x, y)).expect("nonzero hom lies in the strip");
        s.paths[z][j].iter().map(|&id| ArVertex::new(id % s.modules, (id / s.modules) as i32 + x.copy)).collect()
    }

    /// The morphism given by a path of arrows (consecutive vertices).
    pub fn path_morphism(&self, path: &[ArVertex]) -> Morphism {
        let (x, y) = (path[0], *path.last().unwrap());
        for step in path.windows(2) {
            assert!(self.window.has_arrow(step[0], step[1]), "not a path: {step:?}");
        }
        let s = &self.sweeps[x.module];
        let rel: Vec<ArVertex> = path.iter().map(|&v| Self::rel(x, v)).collect();
        let coeffs = s.push(&[Rational::ONE], &rel).unwrap_or_else(|| zero_vector(self.hom_dim(x, y)));
        Morphism { source: x, target: y, coeffs }
    }

    pub fn arrow(&self, u: ArVertex, v: ArVertex) -> Morphism {
        self.path_morphism(&[u, v])
    }

    /// `g . f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::EndpointMismatch);
        }
        Ok(self.compose_unchecked(g, f))
    }

    fn compose_unchecked(&self, g: &Morphism, f: &Morphism) -> Morphism {
        let (a, c) = (f.source, g.target);
        let d = self.hom_dim(a, c);
        let mut out = zero_vector(d);
        if d == 0 || f.is_zero() || g.is_zero() {
            return Morphism { source: a, target: c, coeffs: out };
        }
        let sa = &self.sweeps[a.module];
        for (k, &gk) in g.coeffs.iter().enumerate() {
            if gk.is_zero() {
                continue;
            }
            let path: Vec<ArVertex> = self.basis_path(g.source, c, k).iter().map(|&v| Self::rel(a, v)).collect();
            if let Some(v) = sa.push(&f.coeffs, &path) {
                axpy(&mut out, gk, &v);
            }
        }
        Morphism { source: a, target: c, coeffs: out }
    }

    /// Matrix of `F^-1` from `Hom_D(x, y)` to `Hom_D(F^-1 x, F^-1 y)`.
    fn f_inverse_matrix(&self, x: ArVertex, y: ArVertex) -> Matrix {
        let d = self.hom_dim(x, y);
        let fx = self.window.f_unbounded(x, -1);
        let fy = self.window.f_unbounded(y, -1);
        let cols: Vec<Vector> = (0..d)
            .map(|j| {
                let p: Vec<ArVertex> =
                    self.basis_path(x, y, j).iter().map(|&v| self.window.f_unbounded(v, -1)).collect();
                debug_assert!(p.first() == Some(&fx) && p.last() == Some(&fy));
                let rel: Vec<ArVertex> = p.iter().map(|&v| Self::rel(fx, v)).collect();
                self.sweeps[fx.module].push(&[Rational::ONE], &rel).unwrap_or_else(|| zero_vector(d))
            })
            .collect();
        Matrix::from_columns(self.hom_dim(fx, fy), &cols)
    }
}

/// Block structure of `Hom_C(X, Y)` for fundamental-domain objects:
/// `Hom_D(F^-1 X, Y)` followed by `Hom_D(X, Y)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomBlock {
    pub minus: usize,
    pub zero: usize,
}

impl HomBlock {
    pub fn dim(&self) -> usize {
        self.minus + self.zero
    }
}

/// A morphism of the cluster category between fundamental-domain objects
/// (by index), in the coordinates of [`HomBlock`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMorphism {
    pub source: usize,
    pub target: usize,
    pub coeffs: Vector,
}

impl CMorphism {
    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }
}

/// An arrow of the AR quiver of the cluster category, with the component it
/// lives in.
#[derive(Clone, Debug)]
pub struct CArrow {
    pub source: usize,
    pub target: usize,
    pub component: i32,
    pub morphism: CMorphism,
}

/// The orbit category `D / F`, restricted to the fundamental domain, with
/// all Hom blocks, `F^-1` transports, Ext table and AR arrows precomputed.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    mesh: MeshCategory,
    objects: Vec<ArVertex>,
    index: HashMap<ArVertex, usize>,
    blocks: Vec<Vec<HomBlock>>,
    phi: HashMap<(usize, usize), Matrix>,
    ext: Vec<Vec<usize>>,
    tau: Vec<usize>,
    shift: Vec<usize>,
    arrows: Vec<CArrow>,
}

impl OrbitCategory {
    pub fn new(mesh: MeshCategory) -> Result<Self> {
        let w = mesh.window();
        let base = w.base();
        let mut objects: Vec<ArVertex> = (0..base.len()).map(|m| ArVertex::new(m, 0)).collect();
        objects.extend((0..base.rank()).map(|p| ArVertex::new(base.projective(p), 1)));
        let index: HashMap<ArVertex, usize> = objects.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = objects.len();
        let canon = |v: ArVertex| index[&w.canonicalize(v).0];

        let blocks: Vec<Vec<HomBlock>> = objects
            .par_iter()
            .map(|&x| {
                let fx = w.f_unbounded(x, -1);
                objects.iter().map(|&y| HomBlock { minus: mesh.hom_dim(fx, y), zero: mesh.hom_dim(x, y) }).collect()
            })
            .collect();
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.minus > 0 && b.zero > 0 {
                    return Err(Error::Consistency(format!(
                        "both components of Hom_C({:?}, {:?}) are nonzero",
                        objects[i], objects[j]
                    )));
                }
            }
        }
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| blocks[i][j].zero > 0).collect();
        let phi: HashMap<(usize, usize), Matrix> =
            pairs.par_iter().map(|&(i, j)| ((i, j), mesh.f_inverse_matrix(objects[i], objects[j]))).collect();
        for (&(i, j), m) in &phi {
            if m.rows() != m.cols() || m.rank() != m.cols() {
                return Err(Error::Consistency(format!("F^-1 is not invertible on Hom_D({i}, {j})")));
            }
        }
        let tau: Vec<usize> = objects.iter().map(|&v| canon(w.tau_unbounded(v))).collect();
        let shift: Vec<usize> = objects.iter().map(|&v| canon(v.shift(1))).collect();
        let ext: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| blocks[i][shift[j]].dim()).collect()).collect();

        let mut arrows = Vec::new();
        for (i, &x) in objects.iter().enumerate() {
            let fx = w.f_unbounded(x, -1);
            for (j, &y) in objects.iter().enumerate() {
                let b = blocks[i][j];
                for (component, src, offset) in [(-1, fx, 0), (0, x, b.minus)] {
                    if w.has_arrow(src, y) {
                        let a = mesh.arrow(src, y);
                        let mut coeffs = zero_vector(b.dim());
                        coeffs[offset..offset + a.coeffs.len()].copy_from_slice(&a.coeffs);
                        arrows.push(CArrow {
                            source: i,
                            target: j,
                            component,
                            morphism: CMorphism { source: i, target: j, coeffs },
                        });
                    }
                }
            }
        }
        let cat = OrbitCategory { mesh, objects, index, blocks, phi, ext, tau, shift, arrows };
        cat.check_ext_symmetry()?;
        Ok(cat)
    }

    pub fn mesh(&self) -> &MeshCategory {
        &self.mesh
    }

    pub fn window(&self) -> &ArWindow {
        self.mesh.window()
    }

    /// The fundamental domain: modules in copy 0 (by module id), then the
    /// shifted projectives `P_p[1]` (by `p`).
    pub fn objects(&self) -> &[ArVertex] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> ArVertex {
        self.objects[i]
    }

    /// Index of the canonical representative of the `F`-orbit of `v`.
    pub fn index_of(&self, v: ArVertex) -> usize {
        self.index[&self.window().canonicalize(v).0]
    }

    pub fn block(&self, x: usize, y: usize) -> HomBlock {
        self.blocks[x][y]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.blocks[x][y].dim()
    }

    pub fn hom_c(&self, x: usize, y: usize) -> MorphSpace {
        let (vx, vy) = (self.objects[x], self.objects[y]);
        let fx = self.window().f_unbounded(vx, -1);
        let s0 = &self.mesh.sweeps[vx.module];
        let s1 = &self.mesh.sweeps[fx.module];
        let count = |s: &Sweep, a: ArVertex| s.strip_id(MeshCategory::rel(a, vy)).map_or(0, |z| s.path_counts[z]);
        let path_count = count(s0, vx).saturating_add(count(s1, fx));
        let dim = self.hom_dim(x, y);
        MorphSpace { source: vx, target: vy, dim, path_count, relation_rank: path_count - dim as u128 }
    }

    pub fn tau(&self, x: usize) -> usize {
        self.tau[x]
    }

    /// `X[1]`, which equals `tau X` in the cluster category.
    pub fn shift(&self, x: usize) -> usize {
        self.shift[x]
    }

    pub fn tau_inverse(&self, x: usize) -> usize {
        self.tau.iter().position(|&t| t == x).expect("tau is a bijection")
    }

    pub fn ext1(&self, x: usize, y: usize) -> usize {
        self.ext[x][y]
    }

    pub fn arrows(&self) -> &[CArrow] {
        &self.arrows
    }

    pub fn identity(&self, x: usize) -> CMorphism {
        let b = self.blocks[x][x];
        let mut coeffs = zero_vector(b.dim());
        coeffs[b.minus] = Rational::ONE;
        CMorphism { source: x, target: x, coeffs }
    }

    pub fn zero(&self, x: usize, y: usize) -> CMorphism {
        CMorphism { source: x, target: y, coeffs: zero_vector(self.hom_dim(x, y)) }
    }

    pub fn basis_morphism(&self, x: usize, y: usize, j: usize) -> CMorphism {
        CMorphism { source: x, target: y, coeffs: unit_vector(self.hom_dim(x, y), j) }
    }

    /// `g . f`.
    pub fn compose(&self, g: &CMorphism, f: &CMorphism) -> Result<CMorphism> {
        if f.target != g.source {
            return Err(Error::EndpointMismatch);
        }
        let (x, y, z) = (f.source, f.target, g.target);
        let (vx, vy, vz) = (self.objects[x], self.objects[y], self.objects[z]);
        let w = self.window();
        let (fx, fy) = (w.f_unbounded(vx, -1), w.f_unbounded(vy, -1));
        let (bf, bg, bo) = (self.blocks[x][y], self.blocks[y][z], self.blocks[x][z]);
        let mut out = zero_vector(bo.dim());
        if f.is_zero() || g.is_zero() || bo.dim() == 0 {
            return Ok(CMorphism { source: x, target: z, coeffs: out });
        }
        let part = |v: &[Rational], from: usize, len: usize| v[from..from + len].to_vec();
        let f_minus = Morphism { source: fx, target: vy, coeffs: part(&f.coeffs, 0, bf.minus) };
        let f_zero = Morphism { source: vx, target: vy, coeffs: part(&f.coeffs, bf.minus, bf.zero) };
        let g_minus = Morphism { source: fy, target: vz, coeffs: part(&g.coeffs, 0, bg.minus) };
        let g_zero = Morphism { source: vy, target: vz, coeffs: part(&g.coeffs, bg.minus, bg.zero) };

        if bo.zero > 0 && bf.zero > 0 && bg.zero > 0 {
            let r = self.mesh.compose_unchecked(&g_zero, &f_zero);
            out[bo.minus..].copy_from_slice(&r.coeffs);
        }
        if bo.minus > 0 {
            if bf.minus > 0 && bg.zero > 0 {
                let r = self.mesh.compose_unchecked(&g_zero, &f_minus);
                axpy(&mut out[..bo.minus], Rational::ONE, &r.coeffs);
            }
            if bg.minus > 0 && bf.zero > 0 {
                let transported = self.phi[&(x, y)].mul_vec(&f_zero.coeffs);
                let f_shifted = Morphism { source: fx, target: fy, coeffs: transported };
                let r = self.mesh.compose_unchecked(&g_minus, &f_shifted);
                axpy(&mut out[..bo.minus], Rational::ONE, &r.coeffs);
            }
        }
        if bf.minus > 0 && bg.minus > 0 {
            let ffx = w.f_unbounded(vx, -2);
            if self.mesh.hom_dim(ffx, vz) != 0 {
                return Err(Error::Consistency("nonzero component outside {-1, 0}".into()));
            }
        }
        Ok(CMorphism { source: x, target: z, coeffs: out })
    }

    fn check_ext_symmetry(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if self.ext[i][j] != self.ext[j][i] {
                    return Err(Error::Consistency(format!("Ext^1 not symmetric on ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// Whether `x` and `y` have no extensions in either direction.
    pub fn compatible(&self, x: usize, y: usize) -> bool {
        self.ext[x][y] == 0 && self.ext[y][x] == 0
    }

    /// Rows `(source, target, dim)` of all nonzero Hom blocks, as CSV.
    pub fn hom_dims_csv(&self) -> String {
        let mut out = String::from("source,target,dim_minus,dim_zero\n");
        for i in 0..self.len() {
            for j in 0..self.len() {
                let b = self.blocks[i][j];
                if b.dim() > 0 {
                    out.push_str(&format!("{},{},{},{}\n", self.label(i), self.label(j), b.minus, b.zero));
                }
            }
        }
        out
    }

    /// `M<id>` for modules, `P<p>[1]` for shifted projectives.
    pub fn label(&self, x: usize) -> String {
        let v = self.objects[x];
        if v.copy == 0 {
            format!("M{}", v.module)
        } else {
            let p = self.window().base().module(v.module).projective_of.unwrap();
            format!("P{p}[1]")
        }
    }
}
