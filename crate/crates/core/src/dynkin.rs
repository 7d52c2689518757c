//! Simply-laced Dynkin types, quivers as skew-symmetric matrices, matrix
//! mutation and mutation classes up to isomorphism.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of isomorphism classes visited by
/// [`mutation_class`].
pub const DEFAULT_CLASS_BOUND: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidType(format!("{family:?}{rank}")));
        }
        Ok(DynkinType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, 8) => 120,
            _ => unreachable!(),
        }
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n + 1,
            (Family::D, _) => 2 * n - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            (Family::E, 8) => 30,
            _ => unreachable!(),
        }
    }

    /// Exponents of the Weyl group.
    pub fn exponents(&self) -> Vec<usize> {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => (1..=n).collect(),
            (Family::D, _) => {
                let mut e: Vec<usize> = (0..n - 1).map(|i| 2 * i + 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            (Family::E, 6) => vec![1, 4, 5, 7, 8, 11],
            (Family::E, 7) => vec![1, 5, 7, 9, 11, 13, 17],
            (Family::E, 8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            _ => unreachable!(),
        }
    }

    /// Number of clusters, `prod (h + e_i + 1) / (e_i + 1)` over the exponents.
    pub fn cluster_count(&self) -> u64 {
        let h = self.coxeter_number() as u64;
        let (mut num, mut den) = (1u64, 1u64);
        for e in self.exponents() {
            num *= h + e as u64 + 1;
            den *= e as u64 + 1;
        }
        num / den
    }

    /// Nilpotency index of the radical of the module category of any cluster
    /// tilted algebra of this type.
    pub fn expected_nilpotency_index(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n,
            (Family::D, _) => 2 * n - 3,
            (Family::E, 6) => 11,
            (Family::E, 7) => 17,
            (Family::E, 8) => 29,
            _ => unreachable!(),
        }
    }

    /// Edges of the Dynkin graph on vertices `0..rank`.
    ///
    /// A_n is the path `0 - 1 - ... - (n-1)`. D_n is the path
    /// `0 - ... - (n-2)` with `n-1` attached to `n-3`. E_n is the path
    /// `0 - ... - (n-2)` with `n-1` attached to `2`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Orientation with every edge pointing from the smaller to the larger
    /// vertex.
    pub fn default_orientation(&self) -> Quiver {
        let arrows: Vec<_> = self.edges().into_iter().map(|(u, v)| (u, v, 1)).collect();
        Quiver::from_arrows(self.rank, &arrows).expect("Dynkin edges form a valid quiver")
    }

    /// Exhaustive tilting enumeration and exhaustive algebra sweeps are
    /// allowed up to these ranks.
    pub fn exhaustive_allowed(&self) -> bool {
        match self.family {
            Family::A => self.rank <= 6,
            Family::D => self.rank <= 5,
            Family::E => false,
        }
    }

    /// Composition sweeps (irreducible sequences) are allowed up to these
    /// ranks.
    pub fn composition_sweep_allowed(&self) -> bool {
        match self.family {
            Family::A => self.rank <= 5,
            Family::D => self.rank == 4,
            Family::E => false,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::InvalidType(other.to_string())),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    /// Parses strings like `A3`, `D4`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() < 2 {
            return Err(Error::InvalidType(s.to_string()));
        }
        let family: Family = s[..1].parse()?;
        let rank: usize = s[1..].parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// A finite quiver without loops, stored as the skew-symmetric matrix
/// `b[u][v] = #(u -> v) - #(v -> u)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n: usize,
    b: Vec<Vec<i32>>,
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver(n={}, arrows={:?})", self.n, self.arrows())
    }
}

/// JSON form: `{"n": 3, "arrows": [[0, 1, 1], [1, 2, 1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<[i64; 3]>,
}

impl Quiver {
    pub fn empty(n: usize) -> Self {
        Quiver { n, b: vec![vec![0; n]; n] }
    }

    /// Builds a quiver from `(source, target, multiplicity)` triples. Loops,
    /// zero multiplicities, repeated pairs and antiparallel arrows are
    /// rejected.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i32)]) -> Result<Self> {
        let mut q = Quiver::empty(n);
        for &(u, v, m) in arrows {
            if u >= n {
                return Err(Error::VertexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::InvalidQuiver(format!("loop at vertex {u}")));
            }
            if m < 1 {
                return Err(Error::InvalidQuiver(format!("multiplicity {m} on arrow {u}->{v}")));
            }
            if q.b[u][v] > 0 {
                return Err(Error::InvalidQuiver(format!("repeated arrow entry {u}->{v}")));
            }
            if q.b[u][v] < 0 {
                return Err(Error::InvalidQuiver(format!("antiparallel arrows between {u} and {v}")));
            }
            q.b[u][v] = m;
            q.b[v][u] = -m;
        }
        Ok(q)
    }

    /// Builds a quiver from a skew-symmetric matrix.
    pub fn from_matrix(b: Vec<Vec<i32>>) -> Result<Self> {
        let n = b.len();
        for (u, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuiver("matrix is not square".into()));
            }
            if row[u] != 0 {
                return Err(Error::InvalidQuiver(format!("loop at vertex {u}")));
            }
            for v in 0..n {
                if b[u][v] != -b[v][u] {
                    return Err(Error::InvalidQuiver(format!("not skew-symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(Quiver { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, u: usize, v: usize) -> i32 {
        self.b[u][v]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.b
    }

    /// Arrows as `(source, target, multiplicity)`, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, i32)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.b[u][v] > 0 {
                    out.push((u, v, self.b[u][v]));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows().iter().map(|a| a.2 as usize).sum()
    }

    pub fn max_multiplicity(&self) -> i32 {
        self.b.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.b[u][u] == 0 && (0..self.n).all(|v| self.b[u][v] == -self.b[v][u]))
    }

    /// Matrix mutation at vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        let overflow = || Error::InvalidQuiver("arrow multiplicity overflow".into());
        if k >= self.n {
            return Err(Error::VertexOutOfRange { index: k, n: self.n });
        }
        let b = &self.b;
        let mut out = vec![vec![0; self.n]; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                out[u][v] = if u == k || v == k {
                    -b[u][v]
                } else {
                    let through = b[u][k].checked_mul(b[k][v]).ok_or_else(overflow)?;
                    b[u][v].checked_add(b[u][k].signum() * through.max(0)).ok_or_else(overflow)?
                };
            }
        }
        Ok(Quiver { n: self.n, b: out })
    }

    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        // vertex u of self becomes perm[u]
        let mut b = vec![vec![0; self.n]; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                b[perm[u]][perm[v]] = self.b[u][v];
            }
        }
        Quiver { n: self.n, b }
    }

    pub fn canonical_form(&self) -> Quiver {
        let (b, _) = canonical_matrix(&self.b);
        Quiver { n: self.n, b }
    }

    pub fn is_isomorphic(&self, other: &Quiver) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| (0..self.n).filter(|&u| self.b[u][v] > 0).count()).collect();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for v in 0..self.n {
                if self.b[u][v] > 0 {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen == self.n
    }

    /// A topological order (sources first). Panics on cyclic quivers.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| (0..self.n).filter(|&u| self.b[u][v] > 0).count()).collect();
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(self.n);
        while let Some(u) = ready.pop_first() {
            out.push(u);
            for v in 0..self.n {
                if self.b[u][v] > 0 {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        ready.insert(v);
                    }
                }
            }
        }
        assert_eq!(out.len(), self.n, "topological order of a cyclic quiver");
        out
    }

    /// Neighbours in the underlying graph.
    pub fn neighbours(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.b[u][v] != 0).collect()
    }

    /// Identifies the Dynkin type of an acyclic orientation of a simply-laced
    /// Dynkin diagram.
    pub fn dynkin_type(&self) -> Result<DynkinType> {
        let n = self.n;
        let bad = |why: &str| Err(Error::InvalidQuiver(format!("not a Dynkin orientation: {why}")));
        if n == 0 {
            return bad("empty");
        }
        if self.max_multiplicity() > 1 {
            return bad("multiple arrows");
        }
        let edges: usize = self.arrows().len();
        if edges != n - 1 {
            return bad("not a tree");
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in self.neighbours(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("not connected");
        }
        let deg: Vec<usize> = (0..n).map(|u| self.neighbours(u).len()).collect();
        if deg.iter().any(|&d| d > 3) {
            return bad("vertex of degree > 3");
        }
        let branch: Vec<usize> = (0..n).filter(|&u| deg[u] == 3).collect();
        match branch.len() {
            0 => DynkinType::new(Family::A, n),
            1 => {
                let c = branch[0];
                let mut arms: Vec<usize> = self
                    .neighbours(c)
                    .into_iter()
                    .map(|start| {
                        let (mut prev, mut cur, mut len) = (c, start, 1);
                        loop {
                            let next: Vec<usize> = self.neighbours(cur).into_iter().filter(|&w| w != prev).collect();
                            match next.as_slice() {
                                [] => break len,
                                [w] => {
                                    prev = cur;
                                    cur = *w;
                                    len += 1;
                                }
                                _ => break usize::MAX,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => DynkinType::new(Family::D, n),
                    [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => DynkinType::new(Family::E, n),
                    _ => bad("not simply-laced Dynkin"),
                }
            }
            _ => bad("more than one branch vertex"),
        }
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            n: self.n,
            arrows: self.arrows().into_iter().map(|(u, v, m)| [u as i64, v as i64, m as i64]).collect(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        let mut arrows = Vec::with_capacity(j.arrows.len());
        for a in &j.arrows {
            if a[0] < 0 || a[1] < 0 {
                return Err(Error::InvalidQuiver(format!("negative vertex in arrow {a:?}")));
            }
            let m = i32::try_from(a[2]).map_err(|_| Error::InvalidQuiver(format!("multiplicity {}", a[2])))?;
            arrows.push((a[0] as usize, a[1] as usize, m));
        }
        Quiver::from_arrows(j.n, &arrows)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: QuiverJson = serde_json::from_str(s)?;
        Quiver::from_json(&j)
    }
}

/// Canonical form of a square integer matrix under simultaneous row/column
/// permutation, together with the permutation realising it (`perm[old] = new`).
///
/// Vertices are first coloured by iterated refinement of an
/// isomorphism-invariant signature; the lexicographically least matrix is
/// then taken over all relabelings compatible with the ordered colour
/// classes.
pub fn canonical_matrix(b: &[Vec<i32>]) -> (Vec<Vec<i32>>, Vec<usize>) {
    let n = b.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let colours = refine_colours(b);
    // group vertices by colour, colours in increasing order
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();

    let mut best: Option<(Vec<Vec<i32>>, Vec<usize>)> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    search_orders(b, &classes, 0, &mut order, &mut best);
    best.expect("at least one ordering")
}

fn search_orders(
    b: &[Vec<i32>],
    classes: &[Vec<usize>],
    ci: usize,
    order: &mut Vec<usize>,
    best: &mut Option<(Vec<Vec<i32>>, Vec<usize>)>,
) {
    if ci == classes.len() {
        let n = b.len();
        // order[new] = old
        let m: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| b[order[i]][order[j]]).collect()).collect();
        if best.as_ref().is_none_or(|(bm, _)| m < *bm) {
            let mut perm = vec![0; n];
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new;
            }
            *best = Some((m, perm));
        }
        return;
    }
    let class = &classes[ci];
    permute_class(b, classes, ci, class, &mut vec![false; class.len()], order, best);
}

fn permute_class(
    b: &[Vec<i32>],
    classes: &[Vec<usize>],
    ci: usize,
    class: &[usize],
    used: &mut Vec<bool>,
    order: &mut Vec<usize>,
    best: &mut Option<(Vec<Vec<i32>>, Vec<usize>)>,
) {
    if used.iter().all(|&u| u) {
        search_orders(b, classes, ci + 1, order, best);
        return;
    }
    for i in 0..class.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        order.push(class[i]);
        permute_class(b, classes, ci, class, used, order, best);
        order.pop();
        used[i] = false;
    }
}

/// Iterated colour refinement with canonical colour names.
type Signature = (usize, Vec<(usize, i32, i32)>);

fn refine_colours(b: &[Vec<i32>]) -> Vec<usize> {
    let n = b.len();
    let mut colours = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|u| {
                let mut s: Vec<(usize, i32, i32)> =
                    (0..n).filter(|&v| v != u).map(|v| (colours[v], b[u][v], b[v][u])).collect();
                s.sort_unstable();
                (colours[u], s)
            })
            .collect();
        let distinct: BTreeSet<&Signature> = sigs.iter().collect();
        let names: BTreeMap<&Signature, usize> = distinct.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| names[s]).collect();
        let count = names.len();
        colours = next;
        if count == classes {
            return colours;
        }
        classes = count;
    }
}

/// Mutation class of `q` up to isomorphism, as sorted canonical forms.
///
/// Breadth-first closure under mutation at every vertex. Fails with
/// [`Error::ClassTooLarge`] once more than `bound` classes have been seen.
pub fn mutation_class(q: &Quiver, bound: usize) -> Result<Vec<Quiver>> {
    let start = q.canonical_form();
    let mut seen: BTreeSet<Quiver> = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for k in 0..cur.n() {
            let next = cur.mutate(k)?.canonical_form();
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Err(Error::ClassTooLarge { bound });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Returns true if the quiver has no loops and no oriented 2-cycles. With the
/// skew-symmetric encoding a 2-cycle would cancel, so this checks that the
/// encoding is a genuine quiver: zero diagonal and skew-symmetry.
pub fn has_no_loops_or_two_cycles(q: &Quiver) -> bool {
    q.is_skew_symmetric()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a3_linear() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn type_constraints() {
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::E, 9).is_err());
        assert!(DynkinType::new(Family::E, 6).is_ok());
        assert_eq!("D5".parse::<DynkinType>().unwrap().rank(), 5);
        assert!("X5".parse::<DynkinType>().is_err());
    }

    #[test]
    fn coxeter_numbers() {
        let t = |s: &str| s.parse::<DynkinType>().unwrap();
        assert_eq!(t("A1").coxeter_number(), 2);
        assert_eq!(t("A3").coxeter_number(), 4);
        assert_eq!(t("D4").coxeter_number(), 6);
        assert_eq!(t("E6").coxeter_number(), 12);
        assert_eq!(t("E7").coxeter_number(), 18);
        assert_eq!(t("E8").coxeter_number(), 30);
        for s in ["A1", "A5", "D4", "D7", "E6", "E7", "E8"] {
            assert_eq!(t(s).coxeter_number(), t(s).expected_nilpotency_index() + 1);
        }
    }

    #[test]
    fn mutate_rank_two_negates() {
        let q = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let m = q.mutate(0).unwrap();
        assert_eq!(m.arrows(), vec![(1, 0, 1)]);
    }

    #[test]
    fn mutate_a3_middle_gives_cycle() {
        let m = a3_linear().mutate(1).unwrap();
        // 0 <- 1 <- 2 plus the new arrow 0 -> 2
        let expected = Quiver::from_arrows(3, &[(1, 0, 1), (2, 1, 1), (0, 2, 1)]).unwrap();
        assert_eq!(m, expected);
        assert!(!m.is_acyclic());
    }

    #[test]
    fn mutate_out_of_range() {
        assert!(matches!(a3_linear().mutate(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn canonical_forms() {
        let a = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let b = Quiver::from_arrows(2, &[(1, 0, 1)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());

        let rev = Quiver::from_arrows(3, &[(2, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(a3_linear().canonical_form(), rev.canonical_form());
        assert_eq!(a3_linear().relabel(&[2, 1, 0]), rev);

        let cycle = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_ne!(a3_linear().canonical_form(), cycle.canonical_form());
    }

    #[test]
    fn exponents_and_cluster_counts() {
        let t = |s: &str| s.parse::<DynkinType>().unwrap();
        for s in ["A1", "A4", "D4", "D7", "E6", "E7", "E8"] {
            let ty = t(s);
            let e = ty.exponents();
            assert_eq!(e.len(), ty.rank());
            // sum of exponents is the number of positive roots
            assert_eq!(e.iter().sum::<usize>(), ty.positive_root_count());
            assert_eq!(*e.last().unwrap(), ty.coxeter_number() - 1);
        }
        let counts: Vec<u64> =
            ["A1", "A2", "A3", "D4", "E6", "E7", "E8"].iter().map(|s| t(s).cluster_count()).collect();
        assert_eq!(counts, vec![2, 5, 14, 50, 833, 4160, 25080]);
    }

    #[test]
    fn mutation_class_sizes() {
        let t = |s: &str| s.parse::<DynkinType>().unwrap();
        assert_eq!(mutation_class(&t("A1").default_orientation(), DEFAULT_CLASS_BOUND).unwrap().len(), 1);
        assert_eq!(mutation_class(&t("A2").default_orientation(), DEFAULT_CLASS_BOUND).unwrap().len(), 1);
        assert_eq!(mutation_class(&t("A3").default_orientation(), DEFAULT_CLASS_BOUND).unwrap().len(), 4);
        assert_eq!(mutation_class(&t("A4").default_orientation(), DEFAULT_CLASS_BOUND).unwrap().len(), 6);
        // four orientations of the star, the oriented square, two triangles glued along an edge
        assert_eq!(mutation_class(&t("D4").default_orientation(), DEFAULT_CLASS_BOUND).unwrap().len(), 6);
    }

    #[test]
    fn mutation_class_members_are_simple_quivers() {
        for s in ["A4", "D5", "E6"] {
            let t: DynkinType = s.parse().unwrap();
            for q in mutation_class(&t.default_orientation(), DEFAULT_CLASS_BOUND).unwrap() {
                assert!(has_no_loops_or_two_cycles(&q));
                assert!(q.max_multiplicity() <= 1, "{s}: multiple arrows in {q:?}");
            }
        }
    }

    #[test]
    fn mutation_class_bound_trips_on_wild_input() {
        // the Markov quiver is its own class; a triple arrow with a tail is not mutation-finite
        let markov = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        let wild = Quiver::from_arrows(3, &[(0, 1, 3), (1, 2, 1)]).unwrap();
        assert_eq!(mutation_class(&markov, 10).unwrap().len(), 1);
        assert!(mutation_class(&wild, 50).is_err());
    }

    #[test]
    fn classify_orientations() {
        for s in ["A1", "A4", "D4", "D6", "E6", "E7", "E8"] {
            let t: DynkinType = s.parse().unwrap();
            assert_eq!(t.default_orientation().dynkin_type().unwrap(), t);
        }
        let star = Quiver::from_arrows(5, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]).unwrap();
        assert!(star.dynkin_type().is_err());
    }

    #[test]
    fn json_rejects_loops_and_antiparallel() {
        assert!(Quiver::from_json_str(r#"{"n":2,"arrows":[[0,0,1]]}"#).is_err());
        assert!(Quiver::from_json_str(r#"{"n":2,"arrows":[[0,1,1],[1,0,1]]}"#).is_err());
        let q = Quiver::from_json_str(r#"{"n":3,"arrows":[[0,1,1],[1,2,1]]}"#).unwrap();
        assert_eq!(q, a3_linear());
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }

    fn small_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..6).prop_flat_map(|n| {
            proptest::collection::vec(-2i32..=2, n * n).prop_map(move |vals| {
                let mut b = vec![vec![0; n]; n];
                for u in 0..n {
                    for v in (u + 1)..n {
                        b[u][v] = vals[u * n + v];
                        b[v][u] = -vals[u * n + v];
                    }
                }
                Quiver::from_matrix(b).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn mutation_is_an_involution(q in small_quiver(), k in 0usize..6) {
            let k = k % q.n();
            let m = q.mutate(k).unwrap();
            prop_assert!(m.is_skew_symmetric());
            prop_assert_eq!(m.mutate(k).unwrap(), q);
        }

        #[test]
        fn canonical_form_is_relabeling_invariant(q in small_quiver(), seed in 0u64..1000) {
            let n = q.n();
            let mut perm: Vec<usize> = (0..n).collect();
            // deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(q.relabel(&perm).canonical_form(), q.canonical_form());
            prop_assert!(q.canonical_form().is_isomorphic(&q));
        }
    }
}
