//! The poset `B_χ(k,n)` of canonical orbit representatives, ordered by
//! `x ⪯ y ⇔ x ≤ g(y)` componentwise for some `g ∈ G`.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::character::Character;
use crate::error::{check_bound, Error, Result};
use crate::exactalg::IntPoly;
use crate::permgrp::{check_enumeration, MultiIndex, PermGroup};
use crate::symtensor::canonical_index_set;

/// `B_χ(k,n)` with its order relation stored as bit rows in both directions.
#[derive(Clone, Debug)]
pub struct BPoset {
    chi: Character,
    n: usize,
    elements: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    rank: Option<Vec<u32>>,
    /// Indices sorted by `(ρ, lex)`; `ρ` is strictly increasing along `≺`.
    linear_extension: Vec<usize>,
}

/// Which operation fails for the witness pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Join,
    Meet,
}

/// A pair without a unique least upper (or greatest lower) bound, with the
/// minimal upper (maximal lower) bounds it does have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWitness {
    pub pair: (MultiIndex, MultiIndex),
    pub kind: BoundKind,
    pub bounds: Vec<MultiIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub is_lattice: bool,
    pub join_failures: usize,
    pub meet_failures: usize,
    /// The first join failure found scanning pairs `(a, b)`, `b` below `a`,
    /// with both indices descending in lexicographic order; failing that,
    /// the first meet failure in the same scan.
    pub witness: Option<LatticeWitness>,
}

/// Structured export of a built poset. Covers are `(lower, upper)` index
/// pairs into `elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetExport {
    pub k: usize,
    pub n: usize,
    pub elements: Vec<MultiIndex>,
    pub covers: Vec<(usize, usize)>,
    pub ranks: Option<Vec<u32>>,
    pub graded: bool,
    pub rank_symmetric: Option<bool>,
    pub lattice: bool,
    pub distributive: bool,
}

fn bits(len: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(len)
}

impl BPoset {
    /// Builds `B_χ(k,n)` for a one-dimensional `χ`.
    pub fn build(chi: &Character, n: usize, bounds: &Bounds) -> Result<Self> {
        let elements = canonical_index_set(chi, n, bounds)?;
        let g = chi.group();
        let m = elements.len();
        check_bound(
            "|B|^2 * |G|",
            (m as u128) * (m as u128) * g.order() as u128,
            bounds.poset_work,
        )?;
        let orbits: Vec<Vec<MultiIndex>> = elements
            .iter()
            .map(|y| g.orbit(y).map(|o| o.into_iter().collect()))
            .collect::<Result<_>>()?;
        let row = |i: usize| {
            let mut r = bits(m);
            for (j, orb) in orbits.iter().enumerate() {
                if orb.iter().any(|gy| elements[i].leq(gy)) {
                    r.insert(j);
                }
            }
            r
        };
        let up: Vec<FixedBitSet> = if bounds.parallel {
            (0..m).into_par_iter().map(row).collect()
        } else {
            (0..m).map(row).collect()
        };
        Self::from_relation(chi.clone(), n, elements, up, bounds)
    }

    fn from_relation(
        chi: Character,
        n: usize,
        elements: Vec<MultiIndex>,
        up: Vec<FixedBitSet>,
        bounds: &Bounds,
    ) -> Result<Self> {
        let m = elements.len();
        let mut down = vec![bits(m); m];
        for (i, r) in up.iter().enumerate() {
            for j in r.ones() {
                down[j].insert(i);
            }
        }
        if m <= bounds.verify_axioms_up_to {
            verify_axioms(&elements, &up)?;
        }
        // j covers i iff i < j and nothing strictly between
        let strict: Vec<FixedBitSet> = up
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut s = r.clone();
                s.set(i, false);
                s
            })
            .collect();
        let mut upper_covers = vec![vec![]; m];
        let mut lower_covers = vec![vec![]; m];
        for i in 0..m {
            let mut above_something = bits(m);
            for j in strict[i].ones() {
                above_something.union_with(&strict[j]);
            }
            let mut c = strict[i].clone();
            c.difference_with(&above_something);
            for j in c.ones() {
                upper_covers[i].push(j);
                lower_covers[j].push(i);
            }
        }
        let rho: Vec<u32> = elements.iter().map(MultiIndex::rank).collect();
        let mut linear_extension: Vec<usize> = (0..m).collect();
        linear_extension.sort_by_key(|&i| (rho[i], i));
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut p = BPoset {
            chi,
            n,
            elements,
            index,
            up,
            down,
            upper_covers,
            lower_covers,
            rank: None,
            linear_extension,
        };
        if p.graded_by_rho() {
            p.rank = Some(rho);
        }
        Ok(p)
    }

    /// Every cover raises `ρ` by one, all minimal elements share one `ρ`
    /// and all maximal elements share one `ρ`.
    fn graded_by_rho(&self) -> bool {
        let rho = |i: usize| self.elements[i].rank();
        let covers_ok = (0..self.len())
            .all(|i| self.upper_covers[i].iter().all(|&j| rho(j) == rho(i) + 1));
        let same = |v: Vec<usize>| v.windows(2).all(|w| rho(w[0]) == rho(w[1]));
        covers_ok && same(self.minimal_elements()) && same(self.maximal_elements())
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn group(&self) -> &PermGroup {
        self.chi.group()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.chi.group().degree()
    }

    pub fn elements(&self) -> &[MultiIndex] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MultiIndex {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &MultiIndex) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn require(&self, x: &MultiIndex) -> Result<usize> {
        self.index_of(x).ok_or_else(|| Error::NotInPoset(x.to_string()))
    }

    /// `elements[i] ⪯ elements[j]`.
    #[inline]
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn leq(&self, x: &MultiIndex, y: &MultiIndex) -> Result<bool> {
        Ok(self.leq_idx(self.require(x)?, self.require(y)?))
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Cover pairs `(lower, upper)` in lexicographic order of indices.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper_covers[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    /// Indices sorted so that every element comes after everything below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    pub fn is_graded(&self) -> bool {
        self.rank.is_some()
    }

    /// `ρ` per element when graded.
    pub fn ranks(&self) -> Option<&[u32]> {
        self.rank.as_deref()
    }

    /// `Σ_x q^{ρ(x)}`.
    pub fn rank_generating(&self) -> Result<IntPoly> {
        let ranks = self.rank.as_ref().ok_or(Error::Ungraded)?;
        let mut c = vec![BigInt::zero(); ranks.iter().max().map_or(0, |&r| r as usize + 1)];
        for &r in ranks {
            c[r as usize] += 1;
        }
        Ok(IntPoly::new(c))
    }

    pub fn is_rank_symmetric(&self) -> Result<bool> {
        Ok(self.rank_generating()?.is_palindromic())
    }

    /// Minimal elements of `set` within the poset order.
    pub fn minimal_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&u| self.down[u].intersection(set).all(|v| v == u))
            .collect()
    }

    /// Maximal elements of `set` within the poset order.
    pub fn maximal_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&u| self.up[u].intersection(set).all(|v| v == u))
            .collect()
    }

    fn bound_of(&self, a: usize, b: usize, kind: BoundKind) -> Vec<usize> {
        match kind {
            BoundKind::Join => {
                let mut s = self.up[a].clone();
                s.intersect_with(&self.up[b]);
                self.minimal_of(&s)
            }
            BoundKind::Meet => {
                let mut s = self.down[a].clone();
                s.intersect_with(&self.down[b]);
                self.maximal_of(&s)
            }
        }
    }

    /// Checks every incomparable pair for a unique join and meet.
    pub fn lattice_report(&self) -> LatticeReport {
        let mut joins = 0;
        let mut meets = 0;
        let mut join_w = None;
        let mut meet_w = None;
        for a in (0..self.len()).rev() {
            for b in (0..a).rev() {
                if self.leq_idx(a, b) || self.leq_idx(b, a) {
                    continue;
                }
                for kind in [BoundKind::Join, BoundKind::Meet] {
                    let bs = self.bound_of(a, b, kind);
                    if bs.len() == 1 {
                        continue;
                    }
                    let slot = match kind {
                        BoundKind::Join => {
                            joins += 1;
                            &mut join_w
                        }
                        BoundKind::Meet => {
                            meets += 1;
                            &mut meet_w
                        }
                    };
                    slot.get_or_insert_with(|| LatticeWitness {
                        pair: (self.elements[b].clone(), self.elements[a].clone()),
                        kind,
                        bounds: bs.iter().map(|&i| self.elements[i].clone()).collect(),
                    });
                }
            }
        }
        LatticeReport {
            is_lattice: !self.is_empty() && joins == 0 && meets == 0,
            join_failures: joins,
            meet_failures: meets,
            witness: join_w.or(meet_w),
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_report().is_lattice
    }

    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` on all triples; false for
    /// non-lattices.
    pub fn is_distributive(&self) -> bool {
        if !self.is_lattice() {
            return false;
        }
        let m = self.len();
        let table = |kind| -> Vec<usize> {
            (0..m * m)
                .map(|ab| {
                    let (a, b) = (ab / m, ab % m);
                    self.bound_of(a, b, kind)[0]
                })
                .collect()
        };
        let join = table(BoundKind::Join);
        let meet = table(BoundKind::Meet);
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    meet[a * m + join[b * m + c]] == join[meet[a * m + b] * m + meet[a * m + c]]
                })
            })
        })
    }

    /// Indices of `[x, y]`.
    pub fn interval_idx(&self, i: usize, j: usize) -> Vec<usize> {
        let mut s = self.up[i].clone();
        s.intersect_with(&self.down[j]);
        s.ones().collect()
    }

    pub fn interval(&self, x: &MultiIndex, y: &MultiIndex) -> Result<Vec<MultiIndex>> {
        let (i, j) = (self.require(x)?, self.require(y)?);
        if !self.leq_idx(i, j) {
            return Err(Error::Incomparable(x.to_string(), y.to_string()));
        }
        Ok(self.interval_idx(i, j).into_iter().map(|t| self.elements[t].clone()).collect())
    }

    /// `x^↓`.
    pub fn principal_ideal(&self, x: &MultiIndex) -> Result<Vec<MultiIndex>> {
        let i = self.require(x)?;
        Ok(self.down[i].ones().map(|t| self.elements[t].clone()).collect())
    }

    /// `μ(x, y)` by the recursion `μ(x,y) = -Σ_{x ⪯ z ≺ y} μ(x,z)`.
    pub fn mobius_idx(&self, i: usize, j: usize) -> Result<BigInt> {
        if !self.leq_idx(i, j) {
            return Err(Error::Incomparable(
                self.elements[i].to_string(),
                self.elements[j].to_string(),
            ));
        }
        let mut iv = self.interval_idx(i, j);
        iv.sort_by_key(|&t| (self.elements[t].rank(), t));
        let mut mu: HashMap<usize, BigInt> = HashMap::new();
        for &z in &iv {
            let v = if z == i {
                BigInt::from(1)
            } else {
                -self.down[z]
                    .ones()
                    .filter(|&w| w != z && mu.contains_key(&w))
                    .map(|w| &mu[&w])
                    .sum::<BigInt>()
            };
            mu.insert(z, v);
        }
        Ok(mu.remove(&j).unwrap())
    }

    pub fn mobius(&self, x: &MultiIndex, y: &MultiIndex) -> Result<BigInt> {
        self.mobius_idx(self.require(x)?, self.require(y)?)
    }

    /// All order ideals (down-closed subsets), each as sorted indices,
    /// failing once more than `cap` have been produced.
    pub fn order_ideals(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let order = &self.linear_extension;
        let mut out = vec![];
        let mut included = vec![false; self.len()];
        self.ideals_rec(order, 0, &mut included, &mut out, cap)?;
        for ideal in &mut out {
            ideal.sort_unstable();
        }
        out.sort();
        Ok(out)
    }

    fn ideals_rec(
        &self,
        order: &[usize],
        pos: usize,
        included: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if pos == order.len() {
            if out.len() >= cap {
                return check_bound("order ideals", cap as u128 + 1, cap as u128);
            }
            out.push((0..included.len()).filter(|&i| included[i]).collect());
            return Ok(());
        }
        let x = order[pos];
        self.ideals_rec(order, pos + 1, included, out, cap)?;
        if self.lower_covers[x].iter().all(|&l| included[l]) {
            included[x] = true;
            self.ideals_rec(order, pos + 1, included, out, cap)?;
            included[x] = false;
        }
        Ok(())
    }

    /// Hasse diagram in DOT; same-rank clusters when graded.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph B {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in &self.elements {
            let _ = writeln!(s, "  \"{x}\";");
        }
        if let Some(ranks) = &self.rank {
            let top = ranks.iter().max().copied().unwrap_or(0);
            for r in 0..=top {
                let names: Vec<String> = (0..self.len())
                    .filter(|&i| ranks[i] == r)
                    .map(|i| format!("\"{}\"", self.elements[i]))
                    .collect();
                if !names.is_empty() {
                    let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
                }
            }
        }
        for (i, j) in self.cover_edges() {
            let _ = writeln!(s, "  \"{}\" -> \"{}\";", self.elements[i], self.elements[j]);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_export(&self) -> PosetExport {
        let lattice = self.is_lattice();
        PosetExport {
            k: self.k(),
            n: self.n,
            elements: self.elements.clone(),
            covers: self.cover_edges(),
            ranks: self.rank.clone(),
            graded: self.is_graded(),
            rank_symmetric: self.is_rank_symmetric().ok(),
            lattice,
            distributive: lattice && self.is_distributive(),
        }
    }
}

fn verify_axioms(elements: &[MultiIndex], up: &[FixedBitSet]) -> Result<()> {
    for (i, r) in up.iter().enumerate() {
        if !r.contains(i) {
            return Err(Error::NotAPartialOrder(format!("{} is not ≤ itself", elements[i])));
        }
        for j in r.ones() {
            if j != i && up[j].contains(i) {
                return Err(Error::NotAPartialOrder(format!(
                    "{} and {} are mutually ≤",
                    elements[i], elements[j]
                )));
            }
            if !up[j].is_subset(r) {
                return Err(Error::NotAPartialOrder(format!(
                    "transitivity fails through {} ≤ {}",
                    elements[i], elements[j]
                )));
            }
        }
    }
    Ok(())
}

/// `(1/|G|) Σ_g Π_i [n]_{q^i}^{c_i(g)}`, with `k` the degree of `G`.
pub fn polya_rank_generating(g: &PermGroup, n: usize) -> IntPoly {
    let mut acc = IntPoly::zero();
    for h in g.elements() {
        let mut term = IntPoly::one();
        for (i, &c) in h.cycle_counts().iter().enumerate() {
            if c > 0 {
                term = term.mul(&IntPoly::q_integer(n, i + 1).pow(c as u32));
            }
        }
        acc = acc.add(&term);
    }
    acc.exact_div_scalar(&BigInt::from(g.order()))
        .expect("Burnside sums are divisible by |G|")
}

/// Number-theoretic Möbius function.
pub fn mobius_mu(mut d: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

/// `(1/k) Σ_{d|k} μ(d) n^{k/d}`.
pub fn witt_count(k: u64, n: u64) -> BigUint {
    assert!(k >= 1, "k must be positive");
    let mut acc = BigInt::zero();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        acc += BigInt::from(mobius_mu(d)) * BigInt::from(n).pow((k / d) as u32);
    }
    let q = acc / BigInt::from(k);
    debug_assert!(!q.is_negative());
    q.to_biguint().unwrap()
}

/// For the trivial character: every `x ≤ y` in `[n]^k` maps to
/// `canonical(x) ⪯ canonical(y)`, and canonicalization keeps `ρ`.
pub fn projection_check(g: &std::sync::Arc<PermGroup>, n: usize, bounds: &Bounds) -> Result<bool> {
    let k = g.degree();
    check_enumeration(n, k, bounds.enumeration)?;
    let chi = Character::trivial(g.clone());
    let p = BPoset::build(&chi, n, bounds)?;
    let canon: HashMap<MultiIndex, usize> = MultiIndex::all(n, k)
        .map(|x| {
            let c = g.canonical_rep(&x).unwrap();
            (x, p.index_of(&c).expect("trivial character keeps every orbit"))
        })
        .collect();
    for y in MultiIndex::all(n, k) {
        let cy = canon[&y];
        if p.element(cy).rank() != y.rank() {
            return Ok(false);
        }
        for x in y.down_box() {
            if !p.leq_idx(canon[&x], cy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::character::tests::p;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn s(x: &str) -> MultiIndex {
        x.parse().unwrap()
    }

    pub(crate) fn trivial_poset(g: PermGroup, n: usize) -> BPoset {
        BPoset::build(&Character::trivial(Arc::new(g)), n, &Bounds::default()).unwrap()
    }

    pub(crate) fn a3_poset() -> BPoset {
        trivial_poset(PermGroup::alternating(3), 3)
    }

    pub(crate) fn lyndon_poset() -> BPoset {
        let c6 = Arc::new(PermGroup::cyclic(6));
        let chi = Character::from_generator_exponents(c6, 6, &[(p("612345"), 1)].into()).unwrap();
        BPoset::build(&chi, 2, &Bounds::default()).unwrap()
    }

    fn edge_set(p: &BPoset) -> BTreeSet<(MultiIndex, MultiIndex)> {
        p.cover_edges()
            .into_iter()
            .map(|(i, j)| (p.element(i).clone(), p.element(j).clone()))
            .collect()
    }

    fn edges(list: &[(&str, &str)]) -> BTreeSet<(MultiIndex, MultiIndex)> {
        list.iter().map(|(lo, hi)| (s(lo), s(hi))).collect()
    }

    pub(crate) const A3_EDGES: [(&str, &str); 16] = [
        ("233", "333"), ("133", "233"), ("223", "233"), ("123", "133"),
        ("132", "133"), ("123", "223"), ("132", "223"), ("222", "223"),
        ("122", "123"), ("113", "123"), ("122", "132"), ("113", "132"),
        ("122", "222"), ("112", "122"), ("112", "113"), ("111", "112"),
    ];

    #[test]
    fn a3_hasse_diagram() {
        let p = a3_poset();
        assert_eq!(p.len(), 11);
        assert_eq!(edge_set(&p), edges(&A3_EDGES));
        assert!(p.is_graded());
        assert_eq!(p.rank_generating().unwrap(), IntPoly::from_i64(&[1, 1, 2, 3, 2, 1, 1]));
        assert!(p.is_rank_symmetric().unwrap());
    }

    #[test]
    fn a3_is_not_a_lattice() {
        let r = a3_poset().lattice_report();
        assert!(!r.is_lattice);
        let w = r.witness.unwrap();
        assert_eq!(w.pair, (s("123"), s("132")));
        assert_eq!(w.kind, BoundKind::Join);
        assert_eq!(w.bounds, vec![s("133"), s("223")]);
        assert!(!a3_poset().is_distributive());
    }

    #[test]
    fn lyndon_poset_matches_diagram() {
        let p = lyndon_poset();
        assert_eq!(p.len(), 9);
        let want = edges(&[
            ("112222", "122222"), ("121222", "122222"),
            ("112212", "112222"), ("111222", "112222"), ("112122", "112222"),
            ("112212", "121222"), ("111222", "121222"), ("112122", "121222"),
            ("111122", "112212"), ("111212", "112212"),
            ("111122", "111222"), ("111212", "111222"),
            ("111122", "112122"), ("111212", "112122"),
            ("111112", "111122"), ("111112", "111212"),
        ]);
        assert_eq!(edge_set(&p), want);
        assert_eq!(p.minimal_elements().iter().map(|&i| p.element(i).clone()).collect::<Vec<_>>(), vec![s("111112")]);
        assert_eq!(p.maximal_elements().iter().map(|&i| p.element(i).clone()).collect::<Vec<_>>(), vec![s("122222")]);
        assert_eq!(witt_count(6, 2), 9u32.into());
    }

    #[test]
    fn trivial_group_gives_product_order() {
        let p = trivial_poset(PermGroup::trivial(2), 3);
        assert_eq!(p.len(), 9);
        for x in p.elements() {
            for y in p.elements() {
                assert_eq!(p.leq(x, y).unwrap(), x.leq(y));
            }
        }
        assert!(p.is_graded());
        assert_eq!(p.rank_generating().unwrap(), IntPoly::q_integer(3, 1).pow(2));
        assert!(p.is_lattice() && p.is_distributive());
    }

    #[test]
    fn s2_rank_polynomial_and_mobius() {
        let p = trivial_poset(PermGroup::symmetric(2), 3);
        let want = IntPoly::from_i64(&[1, 1, 2, 1, 1]);
        assert_eq!(p.rank_generating().unwrap(), want);
        assert_eq!(polya_rank_generating(&PermGroup::symmetric(2), 3), want);
        assert!(p.is_rank_symmetric().unwrap());
        assert_eq!(p.mobius(&s("11"), &s("33")).unwrap(), BigInt::from(0));
        assert_eq!(p.mobius(&s("11"), &s("11")).unwrap(), BigInt::from(1));
        assert_eq!(p.mobius(&s("11"), &s("12")).unwrap(), BigInt::from(-1));
        assert!(matches!(p.mobius(&s("13"), &s("22")), Err(Error::Incomparable(..))));
    }

    #[test]
    fn s3_is_a_distributive_lattice() {
        let p = trivial_poset(PermGroup::symmetric(3), 3);
        assert!(p.is_lattice());
        assert!(p.is_distributive());
    }

    #[test]
    fn witt_examples() {
        for n in 1..5u64 {
            assert_eq!(witt_count(1, n), n.into());
            for prime in [2u64, 3, 5, 7] {
                assert_eq!(witt_count(prime, n), ((n.pow(prime as u32) - n) / prime).into());
            }
        }
        assert_eq!(mobius_mu(12), 0);
        assert_eq!(mobius_mu(30), -1);
    }

    #[test]
    fn witt_matches_cyclic_posets() {
        for k in 1..=8usize {
            let ck = Arc::new(PermGroup::cyclic(k));
            let gen = crate::permgrp::rotation(k);
            let m = k as u32;
            let chi = Character::from_generator_exponents(ck, m, &[(gen, 1)].into()).unwrap();
            for n in 1..=3 {
                let b = canonical_index_set(&chi, n, &Bounds::default()).unwrap();
                assert_eq!(BigUint::from(b.len()), witt_count(k as u64, n as u64), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn intervals_and_ideals() {
        let p = a3_poset();
        assert_eq!(
            p.interval(&s("113"), &s("133")).unwrap(),
            vec![s("113"), s("123"), s("132"), s("133")]
        );
        assert_eq!(p.principal_ideal(&s("111")).unwrap(), vec![s("111")]);
        assert_eq!(p.principal_ideal(&s("333")).unwrap().len(), 11);
        assert!(matches!(p.interval(&s("133"), &s("222")), Err(Error::Incomparable(..))));
        assert!(matches!(p.principal_ideal(&s("321")), Err(Error::NotInPoset(_))));

        // two incomparable elements: (1,2) and (2,1) under the trivial group
        let q = trivial_poset(PermGroup::trivial(2), 2);
        let anti: FixedBitSet = [q.index_of(&s("12")).unwrap(), q.index_of(&s("21")).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(q.maximal_of(&anti).len(), 2);
        let ideals = q.order_ideals(100).unwrap();
        // the 4-element boolean lattice has 6 order ideals: ∅ and five others
        assert_eq!(ideals.len(), 6);
        assert!(q.order_ideals(3).is_err());
    }

    #[test]
    fn projection_examples() {
        let b = Bounds::default();
        assert!(projection_check(&Arc::new(PermGroup::alternating(3)), 3, &b).unwrap());
        assert!(projection_check(&Arc::new(PermGroup::trivial(3)), 2, &b).unwrap());
        assert!(projection_check(&Arc::new(PermGroup::symmetric(4)), 2, &b).unwrap());
    }

    fn trivial_family() -> Vec<PermGroup> {
        let mut out = vec![];
        for k in 1..=4 {
            out.push(PermGroup::trivial(k));
            out.push(PermGroup::cyclic(k));
            out.push(PermGroup::symmetric(k));
        }
        out.push(PermGroup::alternating(3));
        out.push(PermGroup::alternating(4));
        out.push(PermGroup::young_subgroup(4, &[2, 1, 1]).unwrap());
        out.push(PermGroup::young_subgroup(4, &[2, 2]).unwrap());
        out
    }

    #[test]
    fn trivial_character_invariants() {
        for g in trivial_family() {
            let k = g.degree();
            for n in 1..=3 {
                let polya = polya_rank_generating(&g, n);
                let p = trivial_poset(g.clone(), n);
                assert!(p.is_graded(), "{g:?} n={n}");
                assert_eq!(p.rank_generating().unwrap(), polya, "{g:?} n={n}");
                assert_eq!(polya.degree(), Some(k * (n - 1)));
                assert!(p.is_rank_symmetric().unwrap());
                let burnside: usize = g
                    .elements()
                    .iter()
                    .map(|h| n.pow(h.num_cycles() as u32))
                    .sum::<usize>()
                    / g.order();
                assert_eq!(p.len(), burnside);
                assert_eq!(p.lower_covers(0).len(), 0);
                assert_eq!(p.maximal_elements().len(), 1);
            }
        }
    }

    #[test]
    fn covers_are_the_transitive_reduction() {
        for p in [a3_poset(), lyndon_poset(), trivial_poset(PermGroup::cyclic(4), 3)] {
            for i in 0..p.len() {
                for j in 0..p.len() {
                    let covers = p.upper_covers(i).contains(&j);
                    let brute = i != j
                        && p.leq_idx(i, j)
                        && !(0..p.len()).any(|z| z != i && z != j && p.leq_idx(i, z) && p.leq_idx(z, j));
                    assert_eq!(covers, brute);
                }
            }
        }
    }

    #[test]
    fn export_round_trips() {
        let p = a3_poset();
        let e = p.to_export();
        let json = serde_json::to_string(&e).unwrap();
        let back: PosetExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert_eq!(e.covers.len(), 16);
        assert!(!e.lattice);
        let dot = p.to_dot();
        assert!(dot.contains("\"(1,1,1)\" -> \"(1,1,2)\";"));
        assert!(dot.contains("{ rank=same; \"(1,2,3)\"; \"(1,3,2)\"; \"(2,2,2)\"; }"));
        assert_eq!(dot, a3_poset().to_dot());
    }

    #[test]
    fn parallel_build_agrees() {
        let c6 = Arc::new(PermGroup::cyclic(6));
        let chi = Character::trivial(c6);
        let seq = BPoset::build(&chi, 2, &Bounds::default()).unwrap();
        let par = BPoset::build(&chi, 2, &Bounds { parallel: true, ..Bounds::default() }).unwrap();
        assert_eq!(seq.to_export(), par.to_export());
    }

    #[test]
    fn work_bound_is_enforced() {
        let b = Bounds { poset_work: 10, ..Bounds::default() };
        let chi = Character::trivial(Arc::new(PermGroup::alternating(3)));
        assert!(matches!(BPoset::build(&chi, 3, &b), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn sign_character_of_4321_poset() {
        let g = Arc::new(PermGroup::closure(4, &[p("4321")]).unwrap());
        let chi = Character::from_generator_exponents(g, 2, &[(p("4321"), 1)].into()).unwrap();
        let b = BPoset::build(&chi, 3, &Bounds::default()).unwrap();
        // |B| = (3^4 - 3^2) / 2 orbits of size two
        assert_eq!(b.len(), 36);
        // regression values from running the checker: graded by ρ with two
        // minima and two maxima
        assert!(b.is_graded());
        assert_eq!(b.rank_generating().unwrap(), IntPoly::from_i64(&[0, 2, 4, 8, 8, 8, 4, 2]));
        let names = |v: Vec<usize>| v.iter().map(|&i| b.element(i).to_string()).collect::<Vec<_>>();
        assert_eq!(names(b.minimal_elements()), ["(1,1,1,2)", "(1,1,2,1)"]);
        assert_eq!(names(b.maximal_elements()), ["(2,3,3,3)", "(3,2,3,3)"]);
    }
}
