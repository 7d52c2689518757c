//! The radical filtration of `mod Gamma`, depths and degrees of morphisms,
//! the vertex bounds `r_a`, and translation-quiver diagnostics.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::ar::ArWindow;
use crate::cluster::{CTAlgebra, ModMorphism};
use crate::dynkin::Quiver;
use crate::error::{Error, Result};
use crate::linalg::{axpy, null_space, zero_vector, Matrix, Rational, Subspace, Vector};

/// How `R^{k+1}` is obtained from `R^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `R^{k+1}(X, Y) = sum_Z R^k(Z, Y) . R^1(X, Z)` over all indecomposables.
    Exhaustive,
    /// `R^{k+1}(X, Y) = sum_{E -> Y} alpha_E . R^k(X, E)` over the arrows of
    /// the AR quiver ending at `Y`.
    SinkMaps,
}

/// An arrow `source -> target` of the AR quiver of `mod Gamma` with a chosen
/// irreducible representative.
#[derive(Clone, Debug)]
pub struct IrrArrow {
    pub source: usize,
    pub target: usize,
    pub morphism: ModMorphism,
}

/// The chains `R^0(X, Y) >= R^1(X, Y) >= ... >= 0` for all pairs of
/// indecomposables.
#[derive(Debug)]
pub struct RadicalTable<'a, 'c> {
    alg: &'a CTAlgebra<'c>,
    route: Route,
    arrows: Vec<IrrArrow>,
    /// `powers[k][x * m + y]`
    powers: Vec<Vec<Subspace>>,
}

fn pair_count(alg: &CTAlgebra<'_>) -> usize {
    alg.ind_count() * alg.ind_count()
}

/// Non-units of a local endomorphism algebra: the kernel of `f -> tr(L_f)`,
/// where `L_f` is left multiplication. Asserts that the result consists of
/// nilpotent elements.
fn endomorphism_radical(alg: &CTAlgebra<'_>, x: usize) -> Result<Subspace> {
    let d = alg.hom_dim(x, x);
    let left: Vec<Matrix> = (0..d)
        .map(|i| {
            let f = alg.basis_morphism(x, x, i);
            let cols: Vec<Vector> = (0..d)
                .map(|j| alg.compose(&f, &alg.basis_morphism(x, x, j)).map(|h| h.coeffs))
                .collect::<Result<_>>()?;
            Ok(Matrix::from_columns(d, &cols))
        })
        .collect::<Result<_>>()?;
    let traces = Matrix::from_columns(1, &left.iter().map(|l| vec![l.trace()]).collect::<Vec<_>>());
    let kernel = null_space(&traces);
    for v in &kernel {
        let mut l = Matrix::zeros(d, d);
        for (c, li) in v.iter().zip(&left) {
            l.add_scaled(*c, li);
        }
        let mut p = l.clone();
        for _ in 0..d {
            p = p.mul(&l);
        }
        if !p.is_zero() {
            return Err(Error::Consistency(format!("End({}) is not local", alg.label(x))));
        }
    }
    Ok(Subspace::span(d, kernel.iter().map(|v| v.as_slice())))
}

/// `R^1` by definition: everything between non-isomorphic indecomposables,
/// non-units on endomorphisms.
fn first_power(alg: &CTAlgebra<'_>) -> Result<Vec<Subspace>> {
    let m = alg.ind_count();
    let mut out = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            out.push(if x == y { endomorphism_radical(alg, x)? } else { Subspace::full(alg.hom_dim(x, y)) });
        }
    }
    Ok(out)
}

fn ar_arrows(alg: &CTAlgebra<'_>) -> Vec<IrrArrow> {
    alg.ar_arrows().into_iter().map(|f| IrrArrow { source: f.source, target: f.target, morphism: f }).collect()
}

impl<'a, 'c> RadicalTable<'a, 'c> {
    pub fn new(alg: &'a CTAlgebra<'c>) -> Result<Self> {
        Self::with_route(alg, Route::Exhaustive)
    }

    pub fn with_route(alg: &'a CTAlgebra<'c>, route: Route) -> Result<Self> {
        let m = alg.ind_count();
        let arrows = ar_arrows(alg);
        let full: Vec<Subspace> =
            (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).map(|(x, y)| Subspace::full(alg.hom_dim(x, y))).collect();
        let first = first_power(alg)?;
        let bound = 4 * m + 4;
        let mut powers = vec![full, first];

        match route {
            Route::Exhaustive => {
                // products[(x * m + z) * m + y][i * dz + j] = (basis j of Hom(z, y)) . (basis i of Hom(x, z))
                let products: Vec<Vec<Vector>> = (0..m * m * m)
                    .into_par_iter()
                    .map(|t| {
                        let (x, z, y) = (t / (m * m), t / m % m, t % m);
                        let (a, b) = (alg.hom_dim(x, z), alg.hom_dim(z, y));
                        let mut out = Vec::with_capacity(a * b);
                        for i in 0..a {
                            let f = alg.basis_morphism(x, z, i);
                            for j in 0..b {
                                let g = alg.basis_morphism(z, y, j);
                                out.push(alg.compose(&g, &f).expect("endpoints match").coeffs);
                            }
                        }
                        out
                    })
                    .collect();
                while !powers.last().unwrap().iter().all(Subspace::is_zero) {
                    if powers.len() > bound {
                        return Err(Error::Consistency("radical powers do not vanish".into()));
                    }
                    let (prev, first) = (powers.last().unwrap(), &powers[1]);
                    let next: Vec<Subspace> = (0..m * m)
                        .into_par_iter()
                        .map(|p| {
                            let (x, y) = (p / m, p % m);
                            let mut s = Subspace::zero(alg.hom_dim(x, y));
                            for z in 0..m {
                                let (f_space, g_space) = (&first[x * m + z], &prev[z * m + y]);
                                if f_space.is_zero() || g_space.is_zero() {
                                    continue;
                                }
                                let prod = &products[(x * m + z) * m + y];
                                let b = alg.hom_dim(z, y);
                                for f in f_space.basis() {
                                    for g in g_space.basis() {
                                        let mut v = zero_vector(s.ambient());
                                        for (i, fi) in f.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                            for (j, gj) in g.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                                axpy(&mut v, *fi * *gj, &prod[i * b + j]);
                                            }
                                        }
                                        s.insert(&v);
                                    }
                                }
                            }
                            s
                        })
                        .collect();
                    powers.push(next);
                }
            }
            Route::SinkMaps => {
                // post[a][x]: Hom(x, source a) -> Hom(x, target a)
                let post: Vec<Vec<Matrix>> = arrows
                    .par_iter()
                    .map(|a| {
                        (0..m)
                            .map(|x| {
                                let cols: Vec<Vector> = (0..alg.hom_dim(x, a.source))
                                    .map(|i| {
                                        alg.compose(&a.morphism, &alg.basis_morphism(x, a.source, i)).unwrap().coeffs
                                    })
                                    .collect();
                                Matrix::from_columns(alg.hom_dim(x, a.target), &cols)
                            })
                            .collect()
                    })
                    .collect();
                let into: Vec<Vec<usize>> =
                    (0..m).map(|y| (0..arrows.len()).filter(|&i| arrows[i].target == y).collect()).collect();
                let sink_step = |prev: &[Subspace]| -> Vec<Subspace> {
                    (0..m * m)
                        .into_par_iter()
                        .map(|p| {
                            let (x, y) = (p / m, p % m);
                            let mut s = Subspace::zero(alg.hom_dim(x, y));
                            for &a in &into[y] {
                                let e = arrows[a].source;
                                s = s.sum(&prev[x * m + e].image(&post[a][x]));
                            }
                            s
                        })
                        .collect()
                };
                let via_sinks = sink_step(&powers[0]);
                if via_sinks != powers[1] {
                    return Err(Error::Consistency("sink maps do not generate the radical".into()));
                }
                while !powers.last().unwrap().iter().all(Subspace::is_zero) {
                    if powers.len() > bound {
                        return Err(Error::Consistency("radical powers do not vanish".into()));
                    }
                    let next = sink_step(powers.last().unwrap());
                    powers.push(next);
                }
            }
        }
        for k in 1..powers.len() {
            for p in 0..pair_count(alg) {
                if !powers[k][p].is_subspace_of(&powers[k - 1][p]) {
                    return Err(Error::Consistency("radical powers are not decreasing".into()));
                }
            }
        }
        Ok(RadicalTable { alg, route, arrows, powers })
    }

    pub fn algebra(&self) -> &'a CTAlgebra<'c> {
        self.alg
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// Least `r` with `R^r = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len() - 1
    }

    /// `R^k(X, Y)`; zero beyond the nilpotency index.
    pub fn power(&self, k: usize, x: usize, y: usize) -> Subspace {
        match self.powers.get(k) {
            Some(level) => level[x * self.alg.ind_count() + y].clone(),
            None => Subspace::zero(self.alg.hom_dim(x, y)),
        }
    }

    fn power_ref(&self, k: usize, x: usize, y: usize) -> Option<&Subspace> {
        self.powers.get(k).map(|level| &level[x * self.alg.ind_count() + y])
    }

    /// `dim R^k(X, Y) / R^{k+1}(X, Y)` for `k = 1`: the irreducible maps.
    pub fn irr_dim(&self, x: usize, y: usize) -> usize {
        self.power(1, x, y).dim() - self.power(2, x, y).dim()
    }

    /// AR arrows of `mod Gamma` with representatives.
    pub fn arrows(&self) -> &[IrrArrow] {
        &self.arrows
    }

    /// Depth of a morphism; `None` for the zero morphism.
    pub fn depth(&self, f: &ModMorphism) -> Option<usize> {
        if f.is_zero() {
            return None;
        }
        let mut k = 0;
        while self.power_ref(k + 1, f.source, f.target).is_some_and(|s| s.contains(&f.coeffs)) {
            k += 1;
        }
        Some(k)
    }

    /// Whether two tables built along different routes agree.
    pub fn same_chains(&self, other: &RadicalTable<'_, '_>) -> bool {
        self.powers == other.powers
    }

    /// The AR quiver of `mod Gamma` read off from `R^1 / R^2`, as a sorted
    /// list of `(source, target, multiplicity)`.
    pub fn irreducible_pairs(&self) -> Vec<(usize, usize, usize)> {
        let m = self.alg.ind_count();
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .filter_map(|(x, y)| {
                let d = self.irr_dim(x, y);
                (d > 0).then_some((x, y, d))
            })
            .collect()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.alg.ind_count()];
        for (x, y, _) in self.irreducible_pairs() {
            out[x].push(y);
        }
        out
    }

    fn distance(&self, from: usize, to: usize) -> Option<usize> {
        let succ = self.successors();
        let mut dist = vec![None; succ.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                return dist[u];
            }
            for &v in &succ[u] {
                if dist[v].is_none() {
                    dist[v] = Some(dist[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// `n_a`, `m_a` and `r_a = n_a + m_a` from path lengths
    /// `P_a -> ... -> S_a -> ... -> I_a` in the AR quiver.
    pub fn vertex_bound(&self, a: usize) -> Result<VertexBound> {
        let (p, s, i) = (self.alg.projective(a), self.alg.simple(a), self.alg.injective(a));
        let n_a = self.distance(p, s).ok_or_else(|| Error::Consistency(format!("no path from P_{a} to S_{a}")))?;
        let m_a = self.distance(s, i).ok_or_else(|| Error::Consistency(format!("no path from S_{a} to I_{a}")))?;
        Ok(VertexBound { a, n_a, m_a, r_a: n_a + m_a })
    }

    pub fn vertex_bounds(&self) -> Result<Vec<VertexBound>> {
        (0..self.alg.rank()).map(|a| self.vertex_bound(a)).collect()
    }

    /// `max_a r_a + 1`.
    pub fn nilpotency_via_formula(&self) -> Result<usize> {
        Ok(self.vertex_bounds()?.iter().map(|v| v.r_a).max().unwrap_or(0) + 1)
    }

    /// The composite `P_a -> S_a -> I_a` (nonzero, unique up to scalar).
    pub fn through_simple(&self, a: usize) -> Result<ModMorphism> {
        let (p, s, i) = (self.alg.projective(a), self.alg.simple(a), self.alg.injective(a));
        if self.alg.hom_dim(p, s) != 1 || self.alg.hom_dim(s, i) != 1 {
            return Err(Error::Consistency(format!("top or socle of vertex {a} is not simple")));
        }
        let f = self.alg.compose(&self.alg.basis_morphism(s, i, 0), &self.alg.basis_morphism(p, s, 0))?;
        if f.is_zero() {
            return Err(Error::Consistency(format!("P_{a} -> S_{a} -> I_{a} vanishes")));
        }
        Ok(f)
    }

    /// Left degree of the family `f_j : X -> Y_j` (all irreducible): least
    /// `m` such that some `g : Z -> X` of depth exactly `m` has every
    /// `f_j . g` in `R^{m+2}`.
    pub fn left_degree(&self, maps: &[ModMorphism]) -> Result<Option<usize>> {
        self.degree(maps, Side::Left)
    }

    /// Right degree of the family `f_j : X_j -> Y`: least `m` such that some
    /// `g : Y -> Z` of depth exactly `m` has every `g . f_j` in `R^{m+2}`.
    pub fn right_degree(&self, maps: &[ModMorphism]) -> Result<Option<usize>> {
        self.degree(maps, Side::Right)
    }

    fn degree(&self, maps: &[ModMorphism], side: Side) -> Result<Option<usize>> {
        let Some(first) = maps.first() else {
            return Ok(None);
        };
        for f in maps {
            if self.depth(f) != Some(1) {
                return Err(Error::NotIrreducible);
            }
        }
        // The family is either X -> (+) Y_j (common source) or (+) X_j -> Y
        // (common target). On one side g is a single map and the condition is
        // componentwise; on the other g has one component per map and the
        // condition is on the sum.
        let common_source = maps.iter().all(|f| f.source == first.source);
        let common_target = maps.iter().all(|f| f.target == first.target);
        if !common_source && !common_target {
            return Err(Error::EndpointMismatch);
        }
        let componentwise = match side {
            Side::Left => common_source,
            Side::Right => common_target,
        };
        let alg = self.alg;
        for k in 0..self.nilpotency_index() {
            for z in 0..alg.ind_count() {
                // (g blocks, condition blocks), each as (source, target)
                let (g_blocks, c_blocks): (Blocks, Blocks) = match (side, componentwise) {
                    (Side::Left, true) => (vec![(z, first.source)], maps.iter().map(|f| (z, f.target)).collect()),
                    (Side::Left, false) => (maps.iter().map(|f| (z, f.source)).collect(), vec![(z, first.target)]),
                    (Side::Right, true) => (vec![(first.target, z)], maps.iter().map(|f| (f.source, z)).collect()),
                    (Side::Right, false) => (maps.iter().map(|f| (f.target, z)).collect(), vec![(first.source, z)]),
                };
                let g_space = direct_sum(g_blocks.iter().map(|&(a, b)| self.power(k, a, b)));
                if g_space.is_zero() {
                    continue;
                }
                let deeper = direct_sum(g_blocks.iter().map(|&(a, b)| self.power(k + 1, a, b)));
                let target = direct_sum(c_blocks.iter().map(|&(a, b)| self.power(k + 2, a, b)));
                let g_dims: Vec<usize> = g_blocks.iter().map(|&(a, b)| alg.hom_dim(a, b)).collect();
                let images: Vec<Vector> = g_space
                    .basis()
                    .iter()
                    .map(|g| {
                        let parts = split(g, &g_dims);
                        let compose = |j: usize, gj: &[Rational]| -> Result<Vector> {
                            let f = &maps[j];
                            let (a, b) = g_blocks[if componentwise { 0 } else { j }];
                            let g = ModMorphism { source: a, target: b, coeffs: gj.to_vec() };
                            let h = match side {
                                Side::Left => alg.compose(f, &g)?,
                                Side::Right => alg.compose(&g, f)?,
                            };
                            Ok(h.coeffs)
                        };
                        if componentwise {
                            let mut out = Vec::new();
                            for j in 0..maps.len() {
                                out.extend(compose(j, &parts[0])?);
                            }
                            Ok(out)
                        } else {
                            let (a, b) = c_blocks[0];
                            let mut out = zero_vector(alg.hom_dim(a, b));
                            for (j, part) in parts.iter().enumerate() {
                                axpy(&mut out, Rational::ONE, &compose(j, part)?);
                            }
                            Ok(out)
                        }
                    })
                    .collect::<Result<_>>()?;
                let witnesses = crate::linalg::preimage(g_space.basis(), &images, &target);
                if witnesses.iter().any(|w| !deeper.contains(w)) {
                    return Ok(Some(k));
                }
            }
        }
        Ok(None)
    }

    /// The irreducible maps `E -> P_a` (the inclusion of `rad P_a`), empty
    /// when `P_a` is simple.
    pub fn radical_inclusion(&self, a: usize) -> Vec<ModMorphism> {
        let p = self.alg.projective(a);
        self.arrows.iter().filter(|r| r.target == p).map(|r| r.morphism.clone()).collect()
    }

    /// The irreducible maps `I_a -> E` (the projection onto `I_a / soc I_a`),
    /// empty when `I_a` is simple.
    pub fn socle_projection(&self, a: usize) -> Vec<ModMorphism> {
        let i = self.alg.injective(a);
        self.arrows.iter().filter(|r| r.source == i).map(|r| r.morphism.clone()).collect()
    }

    /// Degrees of the radical inclusion and socle projection at `a`.
    pub fn vertex_degrees(&self, a: usize) -> Result<DegreeReport> {
        let iota = self.radical_inclusion(a);
        let theta = self.socle_projection(a);
        Ok(DegreeReport {
            a,
            iota_right: self.right_degree(&iota)?,
            theta_left: self.left_degree(&theta)?,
            theta_right: self.right_degree(&theta)?,
        })
    }

    /// `R^n(X, Y)` compared with `sum_Z P^{n-1}(Z, Y) . R^1(X, Z)`, where
    /// `P^k` is spanned by composites of `k` chosen irreducible maps.
    pub fn check_factorization(&self) -> Result<bool> {
        let alg = self.alg;
        let m = alg.ind_count();
        // paths[k][z * m + y] = span of composites of k arrows z -> ... -> y
        let mut paths: Vec<Vec<Subspace>> = vec![(0..m * m)
            .map(|p| {
                let (z, y) = (p / m, p % m);
                let mut s = Subspace::zero(alg.hom_dim(z, y));
                if z == y {
                    s.insert(&alg.identity(z).coeffs);
                }
                s
            })
            .collect()];
        for k in 1..self.nilpotency_index() {
            let prev = &paths[k - 1];
            let next: Vec<Subspace> = (0..m * m)
                .into_par_iter()
                .map(|p| {
                    let (z, y) = (p / m, p % m);
                    let mut s = Subspace::zero(alg.hom_dim(z, y));
                    for a in self.arrows.iter().filter(|a| a.source == z) {
                        for g in prev[a.target * m + y].basis() {
                            let g = ModMorphism { source: a.target, target: y, coeffs: g.clone() };
                            s.insert(&alg.compose(&g, &a.morphism).unwrap().coeffs);
                        }
                    }
                    s
                })
                .collect();
            paths.push(next);
        }
        for n in 2..=self.nilpotency_index() {
            for x in 0..m {
                for y in 0..m {
                    let mut s = Subspace::zero(alg.hom_dim(x, y));
                    for z in 0..m {
                        let first = self.power(1, x, z);
                        for f in first.basis() {
                            let f = ModMorphism { source: x, target: z, coeffs: f.clone() };
                            for g in paths[n - 1][z * m + y].basis() {
                                let g = ModMorphism { source: z, target: y, coeffs: g.clone() };
                                s.insert(&alg.compose(&g, &f)?.coeffs);
                            }
                        }
                    }
                    if s != self.power(n, x, y) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every AR arrow has `dim Hom = 1` and `R^2 = 0` between its ends.
    pub fn check_irreducible_hom(&self) -> bool {
        self.arrows
            .iter()
            .all(|a| self.alg.hom_dim(a.source, a.target) == 1 && self.power(2, a.source, a.target).is_zero())
    }

    /// Chains of AR arrows of length `1..=max_len`, composed: checks that a
    /// composite of `k` arrows lies in `R^{k+1}` only when it is zero, and
    /// that sectional chains have depth exactly `k`. Returns the number of
    /// chains checked.
    pub fn check_composites(&self, max_len: usize) -> Result<CompositeCheck> {
        let m = self.alg.ind_count();
        let out_arrows: Vec<Vec<usize>> =
            (0..m).map(|x| (0..self.arrows.len()).filter(|&i| self.arrows[i].source == x).collect()).collect();
        let results: Vec<CompositeCheck> = (0..m)
            .into_par_iter()
            .map(|start| {
                let mut acc = CompositeCheck::default();
                let mut stack: Vec<(Vec<usize>, ModMorphism, bool)> = out_arrows[start]
                    .iter()
                    .map(|&a| (vec![start, self.arrows[a].target], self.arrows[a].morphism.clone(), true))
                    .collect();
                while let Some((path, h, sectional)) = stack.pop() {
                    let len = path.len() - 1;
                    acc.chains += 1;
                    let zero = h.is_zero();
                    let deep = self.power_ref(len + 1, h.source, h.target).is_none_or(|s| s.contains(&h.coeffs));
                    if deep != zero {
                        acc.violations.push(path.clone());
                    }
                    if sectional {
                        acc.sectional += 1;
                        if self.depth(&h) != Some(len) {
                            acc.sectional_violations.push(path.clone());
                        }
                    }
                    if len == max_len {
                        continue;
                    }
                    let last = *path.last().unwrap();
                    for &a in &out_arrows[last] {
                        let next = self.arrows[a].target;
                        let still = sectional && self.alg.tau(next) != Some(path[len - 1]);
                        let h2 = self.alg.compose(&self.arrows[a].morphism, &h).expect("composable");
                        let mut p2 = path.clone();
                        p2.push(next);
                        stack.push((p2, h2, still));
                    }
                }
                acc
            })
            .collect();
        let mut total = CompositeCheck::default();
        for r in results {
            total.chains += r.chains;
            total.sectional += r.sectional;
            total.violations.extend(r.violations);
            total.sectional_violations.extend(r.sectional_violations);
        }
        Ok(total)
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn direct_sum(parts: impl Iterator<Item = Subspace>) -> Subspace {
    let parts: Vec<Subspace> = parts.collect();
    let total = parts.iter().map(Subspace::ambient).sum();
    let mut out = Subspace::zero(total);
    let mut offset = 0;
    for p in &parts {
        for v in p.basis() {
            let mut w = zero_vector(total);
            w[offset..offset + v.len()].copy_from_slice(v);
            out.insert(&w);
        }
        offset += p.ambient();
    }
    out
}

fn split(v: &[Rational], dims: &[usize]) -> Vec<Vector> {
    let mut out = Vec::with_capacity(dims.len());
    let mut offset = 0;
    for &d in dims {
        out.push(v[offset..offset + d].to_vec());
        offset += d;
    }
    out
}

type Blocks = Vec<(usize, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexBound {
    pub a: usize,
    pub n_a: usize,
    pub m_a: usize,
    pub r_a: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub a: usize,
    /// Right degree of `rad P_a -> P_a`.
    pub iota_right: Option<usize>,
    /// Left and right degree of `I_a -> I_a / soc I_a`.
    pub theta_left: Option<usize>,
    pub theta_right: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct CompositeCheck {
    pub chains: usize,
    pub sectional: usize,
    pub violations: Vec<Vec<usize>>,
    pub sectional_violations: Vec<Vec<usize>>,
}

impl CompositeCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.sectional_violations.is_empty()
    }
}

/// A finite translation quiver: arrows and a partial translation.
#[derive(Clone, Debug)]
pub struct TranslationQuiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<Option<usize>>,
}

impl TranslationQuiver {
    pub fn from_window(w: &ArWindow) -> Self {
        let arrows = w.vertices().flat_map(|v| w.succs(v).into_iter().map(move |u| (w.id(v), w.id(u)))).collect();
        let tau = w.vertices().map(|v| w.translate(v, 1).ok().map(|t| w.id(t))).collect();
        TranslationQuiver { vertices: w.vertex_count(), arrows, tau }
    }

    pub fn from_algebra(table: &RadicalTable<'_, '_>) -> Self {
        let alg = table.algebra();
        let arrows = table.irreducible_pairs().into_iter().map(|(x, y, _)| (x, y)).collect();
        let tau = (0..alg.ind_count()).map(|x| alg.tau(x)).collect();
        TranslationQuiver { vertices: alg.ind_count(), arrows, tau }
    }

    /// `tau`-orbit of every vertex, numbered by first appearance.
    pub fn orbits(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (v, t) in self.tau.iter().enumerate() {
            if let Some(t) = *t {
                let (a, b) = (find(&mut parent, v), find(&mut parent, t));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.vertices];
        let mut next = 0;
        (0..self.vertices)
            .map(|v| {
                let r = find(&mut parent, v);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                label[r]
            })
            .collect()
    }

    /// The orbit graph: one point per `tau`-orbit, an edge when some arrow
    /// joins the orbits.
    pub fn orbit_graph(&self) -> OrbitGraph {
        let orbit = self.orbits();
        let points = orbit.iter().copied().max().map_or(0, |m| m + 1);
        let edges: BTreeSet<(usize, usize)> =
            self.arrows.iter().map(|&(u, v)| (orbit[u].min(orbit[v]), orbit[u].max(orbit[v]))).collect();
        OrbitGraph { points, edges: edges.into_iter().collect() }
    }

    /// Whether parallel paths always have the same length. Quivers with an
    /// oriented cycle fail, since a cycle is parallel to the trivial path.
    pub fn check_length(&self) -> bool {
        let n = self.vertices;
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in &self.arrows {
            succ[u].push(v);
            indeg[v] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        if order.len() < n {
            return false;
        }
        let rank: Vec<usize> = {
            let mut r = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                r[v] = i;
            }
            r
        };
        (0..n).into_par_iter().all(|s| {
            let mut len: Vec<Option<usize>> = vec![None; n];
            len[s] = Some(0);
            for &u in &order[rank[s]..] {
                let Some(l) = len[u] else { continue };
                for &v in &succ[u] {
                    match len[v] {
                        None => len[v] = Some(l + 1),
                        Some(k) if k != l + 1 => return false,
                        _ => {}
                    }
                }
            }
            true
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitGraph {
    pub points: usize,
    pub edges: Vec<(usize, usize)>,
}

impl OrbitGraph {
    /// The graph as a quiver with edges oriented from smaller to larger
    /// point, if it is a simple graph.
    pub fn as_quiver(&self) -> Result<Quiver> {
        let arrows: Vec<(usize, usize, i32)> =
            self.edges.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a, b, 1)).collect();
        if arrows.len() != self.edges.len() {
            return Err(Error::InvalidQuiver("orbit graph has a loop".into()));
        }
        Quiver::from_arrows(self.points, &arrows)
    }

    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.points {
            return false;
        }
        let mut adj = vec![Vec::new(); self.points];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.points];
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            if std::mem::replace(&mut seen[u], true) {
                continue;
            }
            stack.extend(adj[u].iter().copied());
        }
        seen.iter().all(|&s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::default_window;
    use crate::cluster::ClusterCategory;
    use crate::dynkin::DynkinType;

    fn cat(s: &str) -> ClusterCategory {
        ClusterCategory::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_is_a_field() {
        let c = cat("A1");
        for t in c.enumerate_tilting(None).unwrap().tilting {
            let alg = c.module_category(&t).unwrap();
            let table = RadicalTable::new(&alg).unwrap();
            assert_eq!(table.nilpotency_index(), 1);
            assert_eq!(table.nilpotency_via_formula().unwrap(), 1);
            assert_eq!(table.vertex_bound(0).unwrap(), VertexBound { a: 0, n_a: 0, m_a: 0, r_a: 0 });
            assert!(table.arrows().is_empty());
        }
    }

    #[test]
    fn small_types_match_expected_index() {
        for s in ["A2", "A3", "A4", "D4"] {
            let c = cat(s);
            let ty: DynkinType = s.parse().unwrap();
            for t in c.enumerate_tilting(None).unwrap().tilting {
                let alg = c.module_category(&t).unwrap();
                let table = RadicalTable::new(&alg).unwrap();
                assert_eq!(table.nilpotency_index(), ty.expected_nilpotency_index(), "{s} {t}");
                assert_eq!(table.nilpotency_via_formula().unwrap(), table.nilpotency_index());
            }
        }
    }

    #[test]
    fn routes_agree() {
        for s in ["A3", "D4", "D5"] {
            let c = cat(s);
            for t in c.random_walk(11, 8).unwrap() {
                let alg = c.module_category(&t).unwrap();
                let a = RadicalTable::with_route(&alg, Route::Exhaustive).unwrap();
                let b = RadicalTable::with_route(&alg, Route::SinkMaps).unwrap();
                assert!(a.same_chains(&b), "{s} {t}");
            }
        }
    }

    #[test]
    fn irreducibles_are_the_ar_arrows() {
        let c = cat("D4");
        for t in c.random_walk(5, 10).unwrap() {
            let alg = c.module_category(&t).unwrap();
            let table = RadicalTable::new(&alg).unwrap();
            let mut from_arrows: Vec<(usize, usize, usize)> =
                table.arrows().iter().map(|a| (a.source, a.target, 1)).collect();
            from_arrows.sort();
            assert_eq!(table.irreducible_pairs(), from_arrows);
            for a in table.arrows() {
                assert_eq!(table.depth(&a.morphism), Some(1));
            }
            assert!(table.check_irreducible_hom());
        }
    }

    #[test]
    fn depth_of_identity_and_zero() {
        let c = cat("A3");
        let alg = c.module_category(&c.hereditary()).unwrap();
        let table = RadicalTable::new(&alg).unwrap();
        for x in 0..alg.ind_count() {
            assert_eq!(table.depth(&alg.identity(x)), Some(0));
            assert_eq!(table.depth(&alg.zero(x, x)), None);
        }
    }

    #[test]
    fn composite_through_simple_has_depth_r_a() {
        for s in ["A4", "D5"] {
            let c = cat(s);
            for t in c.random_walk(2, 6).unwrap() {
                let alg = c.module_category(&t).unwrap();
                let table = RadicalTable::new(&alg).unwrap();
                for a in 0..alg.rank() {
                    let f = table.through_simple(a).unwrap();
                    assert_eq!(table.depth(&f), Some(table.vertex_bound(a).unwrap().r_a));
                }
            }
        }
    }

    #[test]
    fn degrees_match_path_lengths() {
        let c = cat("A4");
        for t in c.enumerate_tilting(None).unwrap().tilting {
            let alg = c.module_category(&t).unwrap();
            let table = RadicalTable::new(&alg).unwrap();
            for a in 0..4 {
                let vb = table.vertex_bound(a).unwrap();
                let d = table.vertex_degrees(a).unwrap();
                if vb.n_a > 0 {
                    assert_eq!(d.iota_right, Some(vb.n_a), "{t} {a}");
                }
                if vb.m_a > 0 {
                    assert_eq!(d.theta_left, Some(vb.m_a), "{t} {a}");
                }
            }
        }
    }

    #[test]
    fn degree_rejects_non_irreducible() {
        let c = cat("A3");
        let alg = c.module_category(&c.hereditary()).unwrap();
        let table = RadicalTable::new(&alg).unwrap();
        assert!(matches!(table.left_degree(&[alg.identity(0)]), Err(Error::NotIrreducible)));
        assert_eq!(table.left_degree(&[]).unwrap(), None);
    }

    #[test]
    fn composites_and_factorization() {
        for s in ["A3", "D4"] {
            let c = cat(s);
            for t in c.enumerate_tilting(None).unwrap().tilting.iter().step_by(3) {
                let alg = c.module_category(t).unwrap();
                let table = RadicalTable::new(&alg).unwrap();
                let check = table.check_composites(table.nilpotency_index()).unwrap();
                assert!(check.passed(), "{s} {t} {check:?}");
                assert!(check.chains > 0);
                assert!(table.check_factorization().unwrap());
            }
        }
    }

    #[test]
    fn window_has_length_and_tree_orbit_graph() {
        for s in ["A1", "A4", "D5", "E6"] {
            let ty: DynkinType = s.parse().unwrap();
            let w = default_window(ty).unwrap();
            let tq = TranslationQuiver::from_window(&w);
            assert!(tq.check_length());
            let g = tq.orbit_graph();
            assert!(g.is_tree());
            assert_eq!(g.points, ty.rank());
            assert_eq!(g.as_quiver().unwrap().dynkin_type().unwrap(), ty);
        }
    }

    #[test]
    fn check_length_on_small_quivers() {
        let single = TranslationQuiver { vertices: 1, arrows: vec![], tau: vec![None] };
        assert!(single.check_length());
        let square =
            TranslationQuiver { vertices: 4, arrows: vec![(0, 1), (1, 3), (0, 2), (2, 3)], tau: vec![None; 4] };
        assert!(square.check_length());
        let skew = TranslationQuiver { vertices: 3, arrows: vec![(0, 1), (1, 2), (0, 2)], tau: vec![None; 3] };
        assert!(!skew.check_length());
        let cycle = TranslationQuiver { vertices: 2, arrows: vec![(0, 1), (1, 0)], tau: vec![None; 2] };
        assert!(!cycle.check_length());
    }
}
