//! χ-matroids: subsets of `B_χ(k,n)` whose every value-relabeling has a
//! unique maximum.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::bposet::BPoset;
use crate::error::{check_bound, Error, Result};
use crate::exactalg::Rat;
use crate::permgrp::{all_perms, MultiIndex, Perm};
use crate::symtensor::{apply_idempotent, support, SymTensor};

/// A subset of a built poset, stored as element indices.
#[derive(Clone, Debug)]
pub struct SubsetB<'a> {
    base: &'a BPoset,
    members: BTreeSet<usize>,
}

impl PartialEq for SubsetB<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.base, other.base) && self.members == other.members
    }
}

/// Maximal elements of a subset, and whether there is exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxReport {
    pub unique: bool,
    pub maxima: Vec<MultiIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidVerdict {
    pub is_matroid: bool,
    /// The lexicographically first `σ ∈ S_n` whose relabeling has several
    /// maxima, with those maxima.
    pub witness: Option<Perm>,
    pub maxima: Vec<MultiIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportVerdict {
    pub support: Vec<MultiIndex>,
    pub verdict: MatroidVerdict,
}

impl<'a> SubsetB<'a> {
    pub fn new(base: &'a BPoset, members: impl IntoIterator<Item = MultiIndex>) -> Result<Self> {
        let members = members
            .into_iter()
            .map(|x| base.require(&x))
            .collect::<Result<BTreeSet<usize>>>()?;
        Ok(SubsetB { base, members })
    }

    pub fn from_indices(base: &'a BPoset, members: impl IntoIterator<Item = usize>) -> Self {
        SubsetB {
            base,
            members: members.into_iter().collect(),
        }
    }

    /// The whole poset.
    pub fn full(base: &'a BPoset) -> Self {
        Self::from_indices(base, 0..base.len())
    }

    pub fn base(&self) -> &'a BPoset {
        self.base
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn members(&self) -> Vec<MultiIndex> {
        self.members.iter().map(|&i| self.base.element(i).clone()).collect()
    }

    /// `{canonical(σ*(x)) : x ∈ X}` with `σ*(x) = (σ(x_1), ..., σ(x_k))`.
    pub fn relabel(&self, sigma: &Perm) -> Result<SubsetB<'a>> {
        if sigma.degree() != self.base.n() {
            return Err(Error::LengthMismatch {
                expected: self.base.n(),
                got: sigma.degree(),
            });
        }
        let g = self.base.group();
        let members = self
            .members
            .iter()
            .map(|&i| {
                let y = g.canonical_unchecked(&self.base.element(i).relabel(sigma));
                self.base.require(&y)
            })
            .collect::<Result<_>>()?;
        Ok(SubsetB {
            base: self.base,
            members,
        })
    }

    pub fn has_unique_max(&self) -> Result<MaxReport> {
        if self.members.is_empty() {
            return Err(Error::EmptySubset);
        }
        let set: FixedBitSet = {
            let mut s = FixedBitSet::with_capacity(self.base.len());
            s.extend(self.members.iter().copied());
            s
        };
        let maxima: Vec<MultiIndex> = self
            .base
            .maximal_of(&set)
            .into_iter()
            .map(|i| self.base.element(i).clone())
            .collect();
        Ok(MaxReport {
            unique: maxima.len() == 1,
            maxima,
        })
    }

    /// Scans `S_n` in lexicographic order and stops at the first `σ` whose
    /// relabeled subset has more than one maximum.
    pub fn is_chi_matroid(&self, bounds: &Bounds) -> Result<MatroidVerdict> {
        let n = self.base.n();
        check_bound("n for the S_n scan", n as u128, bounds.sigma_max_n as u128)?;
        if self.members.is_empty() {
            return Err(Error::EmptySubset);
        }
        let perms = all_perms(n);
        let fails = |sigma: &Perm| -> Result<Option<(Perm, Vec<MultiIndex>)>> {
            let r = self.relabel(sigma)?.has_unique_max()?;
            Ok((!r.unique).then(|| (sigma.clone(), r.maxima)))
        };
        let first = if bounds.parallel {
            perms
                .par_iter()
                .map(fails)
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .transpose()?
                .flatten()
        } else {
            let mut found = None;
            for s in &perms {
                if let Some(f) = fails(s)? {
                    found = Some(f);
                    break;
                }
            }
            found
        };
        Ok(match first {
            Some((sigma, maxima)) => MatroidVerdict {
                is_matroid: false,
                witness: Some(sigma),
                maxima,
            },
            None => MatroidVerdict {
                is_matroid: true,
                witness: None,
                maxima: self.has_unique_max()?.maxima,
            },
        })
    }
}

/// Projects `v_1 ⊗ ... ⊗ v_k`, takes its `χ`-support and decides whether
/// that support is a χ-matroid of `base`.
pub fn support_is_matroid(base: &BPoset, factors: &[Vec<Rat>], bounds: &Bounds) -> Result<SupportVerdict> {
    let chi = base.character();
    let v = SymTensor::decomposable(base.n(), factors)?;
    let pv = apply_idempotent(chi, &v)?;
    if pv.is_zero() {
        return Err(Error::ProjectionVanishes);
    }
    let supp = support(chi, &pv)?;
    let subset = SubsetB::new(base, supp.iter().cloned())?;
    Ok(SupportVerdict {
        support: supp.into_iter().collect(),
        verdict: subset.is_chi_matroid(bounds)?,
    })
}

/// Box factors `v_j = Σ_{i=x_j}^{y_j} e_i` for weakly increasing `x ≤ y`.
pub fn interval_representing_tensor(x: &MultiIndex, y: &MultiIndex, n: usize) -> Result<Vec<Vec<Rat>>> {
    let sorted = |z: &MultiIndex| z.entries().windows(2).all(|w| w[0] <= w[1]);
    if !sorted(x) || !sorted(y) {
        return Err(Error::InvalidMultiIndex(format!("{x} and {y} must be weakly increasing")));
    }
    if y.max_entry() > n {
        return Err(Error::InvalidMultiIndex(format!("{y} is not in [{n}]^k")));
    }
    if !x.leq(y) {
        return Err(Error::Incomparable(x.to_string(), y.to_string()));
    }
    Ok((0..x.len())
        .map(|j| {
            (1..=n)
                .map(|i| Rat::from_integer(((x.get(j)..=y.get(j)).contains(&i) as i64).into()))
                .collect()
        })
        .collect())
}

/// `k` random factors of length `n`. Each entry is zero with probability
/// one half and otherwise uniform in `{-3, ..., 3} \ {0}`; an all-zero
/// factor is redrawn.
pub fn random_factors(rng: &mut impl Rng, k: usize, n: usize) -> Vec<Vec<Rat>> {
    (0..k)
        .map(|_| loop {
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        0
                    } else {
                        let a = rng.gen_range(1..=3);
                        if rng.gen_bool(0.5) {
                            a
                        } else {
                            -a
                        }
                    }
                })
                .collect();
            if v.iter().any(|&a| a != 0) {
                break v.into_iter().map(|a| Rat::from_integer(a.into())).collect();
            }
        })
        .collect()
}
