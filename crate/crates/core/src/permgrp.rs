//! Permutations of `[k]`, finite permutation groups, and their action on
//! multi-indices `x ∈ [n]^k` by place permutation.
//!
//! Permutations are written in one-line notation: entry `i` is `w(i)`.
//! A permutation acts on a multi-index by moving the entry in position `i`
//! to position `w(i)`, i.e. `w(x) = (x_{w^-1(1)}, ..., x_{w^-1(k)})`. With
//! composition `(v∘w)(i) = v(w(i))` this is a left action.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_bound, Error, Result};

/// Groups up to this order get an eagerly built multiplication table.
pub const DEFAULT_TABLE_BOUND: usize = 1024;

/// A permutation of `[k]`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k as u8).collect())
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {k} too large")));
        }
        let mut seen = vec![false; k];
        for &v in images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of [{k}]"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm(images.iter().map(|&v| (v - 1) as u8).collect()))
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `w(i)` for 0-based `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "compose: degree mismatch");
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Cycle lengths, each cycle listed once (fixed points included).
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = vec![];
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.image(j);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// `c[i-1]` = number of cycles of length `i`; `sum i*c_i = k`.
    pub fn cycle_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.degree()];
        for len in self.cycle_lengths() {
            c[len - 1] += 1;
        }
        c
    }

    pub fn num_cycles(&self) -> usize {
        self.cycle_lengths().len()
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        let odd = self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `w(x) = (x_{w^-1(1)}, ..., x_{w^-1(k)})`.
    pub fn act(&self, x: &MultiIndex) -> Result<MultiIndex> {
        if x.len() != self.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                got: x.len(),
            });
        }
        Ok(self.act_unchecked(x))
    }

    #[inline]
    pub(crate) fn act_unchecked(&self, x: &MultiIndex) -> MultiIndex {
        let mut out = vec![0u8; x.0.len()];
        for (i, &xi) in x.0.iter().enumerate() {
            out[self.0[i] as usize] = xi;
        }
        MultiIndex(out)
    }

    /// Cycle notation, e.g. `(1 3)(2 4)`; display only.
    pub fn cycle_notation(&self) -> String {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = String::new();
        for start in 0..k {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![];
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push((j + 1).to_string());
                j = self.image(j);
            }
            out.push_str(&format!("({})", cyc.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

impl fmt::Display for Perm {
    /// Digits run together when `k <= 9` (`3412`), comma separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ol = self.one_line();
        if ol.len() <= 9 {
            for v in ol {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = ol.iter().map(ToString::to_string).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

fn parse_int_list(s: &str) -> Option<Vec<usize>> {
    let t = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .trim();
    if t.is_empty() {
        return Some(vec![]);
    }
    if t.contains(',') || t.contains(' ') {
        t.split([',', ' '])
            .filter(|p| !p.is_empty())
            .map(|p| p.trim().parse().ok())
            .collect()
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    }
}

impl FromStr for Perm {
    type Err = Error;
    /// Accepts `3412`, `3,4,1,2` or `[3,4,1,2]`.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_list(s)
            .ok_or_else(|| Error::InvalidPermutation(format!("cannot parse {s:?}")))?;
        Perm::from_one_line(&v)
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `[n]^k`, entries 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    /// Checks every entry lies in `[n]`.
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidMultiIndex(format!("alphabet size {n} unsupported")));
        }
        if let Some(bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidMultiIndex(format!(
                "entry {bad} of {entries:?} not in [{n}]"
            )));
        }
        Ok(MultiIndex(entries.into_iter().map(|e| e as u8).collect()))
    }

    /// Unchecked constructor for literals in tests and examples.
    pub fn from_slice(entries: &[u8]) -> Self {
        assert!(entries.iter().all(|&e| e >= 1), "entries are 1-based");
        MultiIndex(entries.to_vec())
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn max_entry(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    /// `ρ(x) = Σ (x_i - 1)`.
    pub fn rank(&self) -> u32 {
        self.0.iter().map(|&e| e as u32 - 1).sum()
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `(σ(x_1), ..., σ(x_k))` for a permutation `σ` of the alphabet `[n]`.
    pub fn relabel(&self, sigma: &Perm) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&e| sigma.0[e as usize - 1] + 1).collect())
    }

    /// All of `[n]^k` in lexicographic order.
    pub fn all(n: usize, k: usize) -> impl Iterator<Item = MultiIndex> {
        let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        let mut cur = if n == 0 { None } else { Some(vec![1u8; k]) };
        let mut emitted: u128 = 0;
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            emitted += 1;
            if emitted >= total {
                cur = None;
            } else if let Some(c) = cur.as_mut() {
                for i in (0..k).rev() {
                    if (c[i] as usize) < n {
                        c[i] += 1;
                        break;
                    }
                    c[i] = 1;
                }
            }
            Some(MultiIndex(out))
        })
    }

    /// All `y` with `y <= self` componentwise, in lexicographic order.
    pub fn down_box(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(vec![])];
        for &hi in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (1..=hi).map(move |v| {
                        let mut q = p.0.clone();
                        q.push(v);
                        MultiIndex(q)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiIndex {
    type Err = Error;
    /// Accepts `(1,2,3)`, `1,2,3` or `123`. Range against `[n]` is the
    /// caller's check.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_list(s)
            .ok_or_else(|| Error::InvalidMultiIndex(format!("cannot parse {s:?}")))?;
        if v.iter().any(|&e| e == 0 || e > u8::MAX as usize) {
            return Err(Error::InvalidMultiIndex(format!("entries of {s:?} must be in 1..=255")));
        }
        Ok(MultiIndex(v.into_iter().map(|e| e as u8).collect()))
    }
}

/// Checks `n^k` against an enumeration bound.
pub fn check_enumeration(n: usize, k: usize, bound: u128) -> Result<()> {
    let size = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    check_bound("n^k", size, bound)
}

/// A finite subgroup of `S_k` with explicitly enumerated elements.
#[derive(Clone)]
pub struct PermGroup {
    k: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<Perm>,
    table: Option<Vec<u32>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "PermGroup(k={}, {{{}}})", self.k, els.join(", "))
    }
}

impl PermGroup {
    /// The subgroup of `S_k` generated by `generators`, elements sorted in
    /// lexicographic order of their one-line notation.
    pub fn closure(k: usize, generators: &[Perm]) -> Result<Self> {
        Self::closure_with_table_bound(k, generators, DEFAULT_TABLE_BOUND)
    }

    pub fn closure_with_table_bound(
        k: usize,
        generators: &[Perm],
        table_bound: usize,
    ) -> Result<Self> {
        for g in generators {
            if g.degree() != k {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {k}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(k);
        let mut seen: std::collections::HashSet<Perm> = [id.clone()].into_iter().collect();
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for s in generators {
                let p = s.compose(&h);
                if seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted(k, elements, generators.to_vec(), table_bound))
    }

    fn from_sorted(k: usize, elements: Vec<Perm>, generators: Vec<Perm>, table_bound: usize) -> Self {
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let identity = index[&Perm::identity(k)];
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let table = (elements.len() <= table_bound).then(|| {
            let mut t = Vec::with_capacity(elements.len() * elements.len());
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        PermGroup {
            k,
            elements,
            index,
            identity,
            inverse,
            generators,
            table,
        }
    }

    /// A subgroup given by its full element list; closure under composition
    /// and inverses is verified.
    pub fn from_elements(k: usize, elements: &[Perm]) -> Result<Self> {
        let set: BTreeSet<Perm> = elements.iter().cloned().collect();
        if !set.contains(&Perm::identity(k)) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in &set {
            if a.degree() != k {
                return Err(Error::InvalidPermutation(format!("{a} is not in S_{k}")));
            }
            if !set.contains(&a.inverse()) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::NotSubgroup(format!("{a}∘{b} missing")));
                }
            }
        }
        let elements: Vec<Perm> = set.into_iter().collect();
        let gens = elements.clone();
        Ok(Self::from_sorted(k, elements, gens, DEFAULT_TABLE_BOUND))
    }

    pub fn trivial(k: usize) -> Self {
        Self::closure(k, &[]).expect("trivial group")
    }

    /// `S_k`, generated by the simple transpositions.
    pub fn symmetric(k: usize) -> Self {
        let gens: Vec<Perm> = (0..k.saturating_sub(1)).map(|i| simple_transposition(k, i)).collect();
        Self::closure(k, &gens).expect("symmetric group")
    }

    /// `A_k`, generated by the 3-cycles `(1 2 i)`.
    pub fn alternating(k: usize) -> Self {
        let gens: Vec<Perm> = (2..k)
            .map(|i| {
                let mut img: Vec<usize> = (1..=k).collect();
                // 1 -> 2 -> i+1 -> 1
                img[0] = 2;
                img[1] = i + 1;
                img[i] = 1;
                Perm::from_one_line(&img).unwrap()
            })
            .collect();
        Self::closure(k, &gens).expect("alternating group")
    }

    /// The cyclic group generated by the rotation `k 1 2 ... k-1`.
    pub fn cyclic(k: usize) -> Self {
        Self::closure(k, &[rotation(k)]).expect("cyclic group")
    }

    /// The parabolic subgroup `S_{a_1} x S_{a_2} x ...` generated by the simple
    /// transpositions inside each block of the composition `a`.
    pub fn young_subgroup(k: usize, a: &[usize]) -> Result<Self> {
        if a.iter().sum::<usize>() != k || a.contains(&0) {
            return Err(Error::InvalidComposition { parts: a.to_vec(), k });
        }
        let mut gens = vec![];
        let mut start = 0;
        for &len in a {
            for i in start..start + len - 1 {
                gens.push(simple_transposition(k, i));
            }
            start += len;
        }
        Self::closure(k, &gens)
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    fn check_len(&self, x: &MultiIndex) -> Result<()> {
        if x.len() == self.k {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.k,
                got: x.len(),
            })
        }
    }

    /// `O_x = {g(x) : g ∈ G}`.
    pub fn orbit(&self, x: &MultiIndex) -> Result<BTreeSet<MultiIndex>> {
        self.check_len(x)?;
        Ok(self.elements.iter().map(|g| g.act_unchecked(x)).collect())
    }

    /// `G_x = {g : g(x) = x}`, as element indices.
    pub fn stabilizer(&self, x: &MultiIndex) -> Result<Vec<usize>> {
        self.check_len(x)?;
        Ok(self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, g)| g.act_unchecked(x) == *x)
            .map(|(i, _)| i)
            .collect())
    }

    /// Lexicographic minimum of the orbit.
    pub fn canonical_rep(&self, x: &MultiIndex) -> Result<MultiIndex> {
        self.check_len(x)?;
        Ok(self.canonical_unchecked(x))
    }

    pub(crate) fn canonical_unchecked(&self, x: &MultiIndex) -> MultiIndex {
        let mut best = x.clone();
        let mut buf = MultiIndex(vec![0; x.len()]);
        for g in &self.elements {
            for (i, &xi) in x.0.iter().enumerate() {
                buf.0[g.0[i] as usize] = xi;
            }
            if buf < best {
                best.0.copy_from_slice(&buf.0);
            }
        }
        best
    }

    pub(crate) fn is_canonical(&self, x: &MultiIndex) -> bool {
        let mut buf = vec![0u8; x.len()];
        for g in &self.elements {
            for (i, &xi) in x.0.iter().enumerate() {
                buf[g.0[i] as usize] = xi;
            }
            if buf.as_slice() < x.0.as_slice() {
                return false;
            }
        }
        true
    }

    /// Checks that `subset` (element indices) is closed under composition
    /// and inverses and contains the identity.
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| {
                set.contains(&self.inverse[a]) && set.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }
}

/// The simple transposition swapping positions `i` and `i+1` (0-based).
pub fn simple_transposition(k: usize, i: usize) -> Perm {
    let mut img: Vec<usize> = (1..=k).collect();
    img.swap(i, i + 1);
    Perm::from_one_line(&img).unwrap()
}

/// The rotation `k 1 2 ... k-1` in one-line notation.
pub fn rotation(k: usize) -> Perm {
    let img: Vec<usize> = (0..k).map(|i| if i == 0 { k } else { i }).collect();
    Perm::from_one_line(&img).unwrap()
}

/// All permutations of `[n]` in lexicographic order of one-line notation.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm::from_one_line(prefix).unwrap());
            return;
        }
        for v in 1..=used.len() {
            if !used[v - 1] {
                used[v - 1] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = vec![];
    rec(&mut vec![], &mut vec![false; n], &mut out);
    out
}
