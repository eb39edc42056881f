//! Order complexes, f-vectors, reduced Euler characteristics and a
//! shellability search.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::bposet::BPoset;
use crate::error::{check_bound, Error, Result};

/// A simplicial complex given by its facets. Vertices are plain indices;
/// for order complexes they are element indices of the poset.
///
/// `facets == []` is the void complex, `facets == [[]]` the complex whose
/// only face is the empty one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal sets among `faces`, each sorted, listed
    /// by decreasing size and then lexicographically.
    pub fn from_facets(faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut all: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for f in all {
            if !facets.iter().any(|g| is_subset(&f, g)) {
                facets.push(f);
            }
        }
        let vertices = facets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        SimplicialComplex { vertices, facets }
    }

    /// Maximal chains of the strict order `lt` restricted to `vertices`.
    pub fn order_complex_of(
        vertices: &[usize],
        lt: impl Fn(usize, usize) -> bool,
        max_facets: u128,
    ) -> Result<Self> {
        let covers = |a: usize| -> Vec<usize> {
            vertices
                .iter()
                .copied()
                .filter(|&b| lt(a, b) && !vertices.iter().any(|&c| lt(a, c) && lt(c, b)))
                .collect()
        };
        let up: Vec<Vec<usize>> = vertices.iter().map(|&a| covers(a)).collect();
        let pos = |a: usize| vertices.iter().position(|&v| v == a).unwrap();
        let mut chains = Vec::new();
        let mut stack: Vec<Vec<usize>> = vertices
            .iter()
            .copied()
            .filter(|&b| !vertices.iter().any(|&a| lt(a, b)))
            .map(|b| vec![b])
            .collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            let next = &up[pos(last)];
            if next.is_empty() {
                chains.push(chain);
                check_bound("maximal chains", chains.len() as u128, max_facets)?;
                continue;
            }
            for &b in next.iter().rev() {
                let mut c = chain.clone();
                c.push(b);
                stack.push(c);
            }
        }
        if vertices.is_empty() {
            chains.push(vec![]);
        }
        Ok(Self::from_facets(chains))
    }

    /// Order complex of the subposet of `p` on `members`.
    pub fn order_complex(p: &BPoset, members: &FixedBitSet, bounds: &Bounds) -> Result<Self> {
        let vs: Vec<usize> = members.ones().collect();
        Self::order_complex_of(&vs, |a, b| a != b && p.leq_idx(a, b), bounds.enumeration)
    }

    /// Order complex of the whole poset.
    pub fn of_poset(p: &BPoset, bounds: &Bounds) -> Result<Self> {
        let vs: Vec<usize> = (0..p.len()).collect();
        Self::order_complex_of(&vs, |a, b| a != b && p.leq_idx(a, b), bounds.enumeration)
    }

    /// Order complex of `[x, y]`, or of `(x, y)` when `open`.
    pub fn interval_complex(p: &BPoset, i: usize, j: usize, open: bool, bounds: &Bounds) -> Result<Self> {
        if !p.leq_idx(i, j) {
            return Err(Error::Incomparable(p.element(i).to_string(), p.element(j).to_string()));
        }
        let mut set = FixedBitSet::with_capacity(p.len());
        set.extend(p.interval_idx(i, j));
        if open {
            set.set(i, false);
            set.set(j, false);
        }
        Self::order_complex(p, &set, bounds)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `-1` for the void complex.
    pub fn dimension(&self) -> isize {
        self.facets.first().map_or(-1, |f| f.len() as isize - 1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// `(f_0, f_1, ..., f_d)`; the empty face is not counted.
    pub fn f_vector(&self) -> Vec<u128> {
        let mut faces: HashSet<Vec<usize>> = HashSet::new();
        for f in &self.facets {
            let mut fresh: Vec<Vec<usize>> = vec![f.clone()];
            while let Some(face) = fresh.pop() {
                if face.is_empty() || !faces.insert(face.clone()) {
                    continue;
                }
                for skip in 0..face.len() {
                    let mut g = face.clone();
                    g.remove(skip);
                    if !faces.contains(&g) {
                        fresh.push(g);
                    }
                }
            }
        }
        let mut f = vec![0u128; (self.dimension() + 1).max(0) as usize];
        for face in faces {
            f[face.len() - 1] += 1;
        }
        f
    }

    /// `χ̃ = -1 + Σ (-1)^i f_i`, and 0 for the void complex.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        if self.is_void() {
            return BigInt::from(0);
        }
        self.f_vector()
            .iter()
            .enumerate()
            .fold(BigInt::from(-1), |acc, (i, &c)| {
                if i % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Shelling {
    Yes { order: Vec<Vec<usize>> },
    No,
    Unknown { facets: usize, facet_cap: usize, steps: u64 },
}

/// Searches for a (not necessarily pure) shelling order.
///
/// Facets are placed in order of non-increasing dimension, which loses
/// nothing: any shelling can be rearranged that way. Whether a facet may
/// come next depends only on the set already placed, so failed sets are
/// memoized. With at most `facet_cap` facets the search is exhaustive;
/// above it the search stops after `shell_steps` placements and never
/// answers `No`. Facets of more than 128 vertices are not searched.
pub fn shellable(c: &SimplicialComplex, bounds: &Bounds) -> Shelling {
    let facets = &c.facets;
    let t = facets.len();
    if t <= 1 {
        return Shelling::Yes { order: facets.clone() };
    }
    let budget = (t > bounds.facet_cap).then_some(bounds.shell_steps);
    let unknown = |steps| Shelling::Unknown {
        facets: t,
        facet_cap: bounds.facet_cap,
        steps,
    };
    if facets[0].len() > 128 {
        return unknown(0);
    }
    let mut search = Search {
        facets,
        placed: FixedBitSet::with_capacity(t),
        order: Vec::with_capacity(t),
        dead: HashSet::new(),
        steps: 0,
        budget,
        undo: vec![],
        saved: vec![],
        holders: vec![FixedBitSet::with_capacity(t); c.vertices.last().map_or(0, |&v| v + 1)],
    };
    let mut start = State {
        restriction: vec![0; t],
        blocked: vec![0; t],
    };
    match search.run(&mut start) {
        Some(true) => Shelling::Yes {
            order: search.order.iter().map(|&i| facets[i].clone()).collect(),
        },
        Some(false) if budget.is_none() => Shelling::No,
        _ => unknown(search.steps),
    }
}

/// Positions (within `fj`) of the vertices of `fj` that lie in `fi`.
fn meet_mask(fi: &[usize], fj: &[usize]) -> u128 {
    let (mut a, mut m) = (0, 0u128);
    for (pos, v) in fj.iter().enumerate() {
        while a < fi.len() && fi[a] < *v {
            a += 1;
        }
        if a < fi.len() && fi[a] == *v {
            m |= 1 << pos;
        }
    }
    m
}

/// Per unplaced facet `F_j`: the positions `v` with `F_j \ {v}` inside a
/// placed facet, and how many placed facets contain all of those
/// positions. `F_j` may come next iff that count is zero.
struct State {
    restriction: Vec<u128>,
    blocked: Vec<u32>,
}

struct Search<'a> {
    facets: &'a [Vec<usize>],
    placed: FixedBitSet,
    order: Vec<usize>,
    dead: HashSet<FixedBitSet>,
    steps: u64,
    budget: Option<u64>,
    undo: Vec<usize>,
    saved: Vec<(u128, u32)>,
    /// Placed facets containing each vertex.
    holders: Vec<FixedBitSet>,
}

impl Search<'_> {
    /// Updates `st` for placing `i` (not yet in `order`), logging the old
    /// entries so `unplace` can restore them.
    fn place(&mut self, st: &mut State, i: usize) {
        self.undo.push(usize::MAX);
        let fi = &self.facets[i];
        for &v in fi {
            self.holders[v].insert(i);
        }
        for j in (0..self.facets.len()).filter(|&j| j != i && !self.placed.contains(j)) {
            let fj = &self.facets[j];
            let m = meet_mask(fi, fj);
            let full = if fj.len() == 128 { u128::MAX } else { (1u128 << fj.len()) - 1 };
            let missing = full & !m;
            if missing.count_ones() == 1 && st.restriction[j] & missing == 0 {
                self.undo.push(j);
                self.saved.push((st.restriction[j], st.blocked[j]));
                st.restriction[j] |= missing;
                // placed facets containing every vertex of the restriction
                let r = st.restriction[j];
                let mut common = self.holders[fj[r.trailing_zeros() as usize]].clone();
                for (pos, &v) in fj.iter().enumerate() {
                    if r >> pos & 1 == 1 {
                        common.intersect_with(&self.holders[v]);
                    }
                }
                st.blocked[j] = common.count_ones(..) as u32;
            } else if st.restriction[j] & !m == 0 {
                self.undo.push(j);
                self.saved.push((st.restriction[j], st.blocked[j]));
                st.blocked[j] += 1;
            }
        }
    }

    fn unplace(&mut self, st: &mut State, i: usize) {
        for &v in &self.facets[i] {
            self.holders[v].set(i, false);
        }
        while let Some(j) = self.undo.pop() {
            if j == usize::MAX {
                break;
            }
            let (r, b) = self.saved.pop().unwrap();
            st.restriction[j] = r;
            st.blocked[j] = b;
        }
    }

    /// `Some(found)`, or `None` once the budget runs out.
    fn run(&mut self, st: &mut State) -> Option<bool> {
        let t = self.facets.len();
        if self.order.len() == t {
            return Some(true);
        }
        if self.dead.contains(&self.placed) {
            return Some(false);
        }
        // facets are sorted by decreasing size, so the next dimension is
        // that of the first unplaced facet
        let first = (0..t).find(|&j| !self.placed.contains(j)).unwrap();
        let size = self.facets[first].len();
        for j in first..t {
            if self.facets[j].len() != size {
                break;
            }
            if self.placed.contains(j) || (!self.order.is_empty() && st.blocked[j] > 0) {
                continue;
            }
            if self.budget.is_some_and(|b| self.steps >= b) {
                return None;
            }
            self.steps += 1;
            self.place(st, j);
            self.placed.insert(j);
            self.order.push(j);
            match self.run(st) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.order.pop();
            self.placed.set(j, false);
            self.unplace(st, j);
        }
        self.dead.insert(self.placed.clone());
        Some(false)
    }
}
