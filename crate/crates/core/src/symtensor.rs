//! Sparse exact vectors of `V^{⊗k}`, `V = Q^n`, and the symmetry class cut
//! out by a character idempotent.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::bounds::Bounds;
use crate::character::Character;
use crate::error::{Error, Result};
use crate::exactalg::{CycloNum, Rat};
use crate::permgrp::{check_enumeration, MultiIndex};

/// A vector `Σ c_x e_x` with `x ∈ [n]^k`. Zero coefficients are never
/// stored, so structural equality is vector equality.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, CycloNum>,
}

fn zero() -> CycloNum {
    CycloNum::from_int_in(1, 0)
}

impl SymTensor {
    pub fn zero(n: usize, k: usize) -> Self {
        SymTensor {
            n,
            k,
            coeffs: BTreeMap::new(),
        }
    }

    /// `e_x`.
    pub fn basis(n: usize, x: &MultiIndex) -> Result<Self> {
        Self::from_terms(n, x.len(), [(x.clone(), CycloNum::from_int_in(1, 1))])
    }

    /// Sums the given terms; every key must lie in `[n]^k`.
    pub fn from_terms(
        n: usize,
        k: usize,
        terms: impl IntoIterator<Item = (MultiIndex, CycloNum)>,
    ) -> Result<Self> {
        let mut coeffs: BTreeMap<MultiIndex, CycloNum> = BTreeMap::new();
        for (x, c) in terms {
            if x.len() != k {
                return Err(Error::LengthMismatch {
                    expected: k,
                    got: x.len(),
                });
            }
            if x.max_entry() > n {
                return Err(Error::InvalidMultiIndex(format!("{x} is not in [{n}]^{k}")));
            }
            let e = coeffs.entry(x).or_insert_with(zero);
            *e = &*e + &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(SymTensor { n, k, coeffs })
    }

    /// `v_1 ⊗ ... ⊗ v_k`; each factor has length `n` and must be nonzero.
    pub fn decomposable(n: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        let k = vectors.len();
        let mut supports = Vec::with_capacity(k);
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
            let s: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
            if s.is_empty() {
                return Err(Error::ZeroVector(j + 1));
            }
            supports.push(s);
        }
        let mut terms: Vec<(Vec<usize>, Rat)> = vec![(vec![], Rat::from_integer(1.into()))];
        for (j, s) in supports.iter().enumerate() {
            terms = terms
                .into_iter()
                .flat_map(|(idx, c)| {
                    s.iter().map(move |&i| {
                        let mut idx = idx.clone();
                        idx.push(i + 1);
                        (idx, &c * &vectors[j][i])
                    })
                })
                .collect();
        }
        let coeffs = terms
            .into_iter()
            .map(|(idx, c)| (MultiIndex::new(idx, n).expect("in range"), CycloNum::from_rat_in(1, c)))
            .collect();
        Ok(SymTensor { n, k, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, CycloNum> {
        &self.coeffs
    }

    pub fn coeff(&self, x: &MultiIndex) -> CycloNum {
        self.coeffs.get(x).cloned().unwrap_or_else(zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn keys(&self) -> BTreeSet<MultiIndex> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn add(&self, other: &SymTensor) -> Result<SymTensor> {
        if (self.n, self.k) != (other.n, other.k) {
            return Err(Error::DimensionMismatch(format!(
                "tensor over [{}]^{} vs [{}]^{}",
                self.n, self.k, other.n, other.k
            )));
        }
        Self::from_terms(
            self.n,
            self.k,
            self.coeffs.iter().chain(&other.coeffs).map(|(x, c)| (x.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &CycloNum) -> SymTensor {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(x, v)| (x.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SymTensor {
            n: self.n,
            k: self.k,
            coeffs,
        }
    }
}

fn check_k(chi: &Character, k: usize) -> Result<()> {
    let gk = chi.group().degree();
    if gk == k {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected: gk, got: k })
    }
}

/// `P_χ v`, with `P_χ e_x = (χ(e)/|G|) Σ_g χ(g^-1) e_{g(x)}`.
pub fn apply_idempotent(chi: &Character, v: &SymTensor) -> Result<SymTensor> {
    check_k(chi, v.k)?;
    let g = chi.group();
    let coef = chi.idempotent_coefficients();
    let mut out: HashMap<MultiIndex, CycloNum> = HashMap::new();
    for (x, c) in &v.coeffs {
        for (i, a) in coef.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let y = g.element(i).act_unchecked(x);
            let e = out.entry(y).or_insert_with(zero);
            *e = &*e + &(c * a);
        }
    }
    Ok(SymTensor {
        n: v.n,
        k: v.k,
        coeffs: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    })
}

/// `P_χ e_x`.
pub fn project_basis(chi: &Character, n: usize, x: &MultiIndex) -> Result<SymTensor> {
    apply_idempotent(chi, &SymTensor::basis(n, x)?)
}

/// Whether `G_x ⊆ ker χ`, given the kernel as a mask over group elements.
pub(crate) fn stabilizer_in_kernel(chi: &Character, kernel: &[bool], x: &MultiIndex) -> bool {
    let g = chi.group();
    g.elements()
        .iter()
        .zip(kernel)
        .all(|(h, &in_ker)| in_ker || h.act_unchecked(x) != *x)
}

/// `B_χ(k,n)`: canonical representatives whose stabilizer lies in `ker χ`,
/// in lexicographic order.
pub fn canonical_index_set(chi: &Character, n: usize, bounds: &Bounds) -> Result<Vec<MultiIndex>> {
    chi.require_one_dimensional()?;
    let g = chi.group();
    let k = g.degree();
    check_enumeration(n, k, bounds.enumeration)?;
    let kernel = chi.kernel_mask();
    let keep = |x: &MultiIndex| g.is_canonical(x) && stabilizer_in_kernel(chi, &kernel, x);
    if bounds.parallel {
        let all: Vec<MultiIndex> = MultiIndex::all(n, k).collect();
        Ok(all.into_par_iter().filter(|x| keep(x)).collect())
    } else {
        Ok(MultiIndex::all(n, k).filter(|x| keep(x)).collect())
    }
}

/// `(χ(e)/|G|) Σ_g χ(g) n^{c(g)}` with `c(g)` the number of cycles.
pub fn dim_formula(chi: &Character, n: usize) -> Result<BigUint> {
    let g = chi.group();
    let mut acc = zero();
    for (h, v) in g.elements().iter().zip(chi.values()) {
        let pw = Rat::from_integer(BigInt::from(n).pow(h.num_cycles() as u32));
        acc = &acc + &v.scale(&pw);
    }
    let total = acc.scale(&Rat::new(chi.degree().into(), g.order().into()));
    match total.to_integer() {
        Some(i) if !i.is_negative() => Ok(i.to_biguint().unwrap()),
        _ => Err(Error::NotNonNegativeInteger(total.to_string())),
    }
}

/// Coordinates `a_x` of `v = Σ a_x P_χ(e_x)` over `x ∈ B_χ(k,n)`.
/// `v` must already be fixed by the idempotent.
pub fn coords_in_basis(chi: &Character, v: &SymTensor) -> Result<BTreeMap<MultiIndex, CycloNum>> {
    chi.require_one_dimensional()?;
    if apply_idempotent(chi, v)? != *v {
        return Err(Error::NotInImage);
    }
    let g = chi.group();
    let order = Rat::from_integer(g.order().into());
    let mut out = BTreeMap::new();
    for (x, c) in &v.coeffs {
        if !g.is_canonical(x) {
            continue;
        }
        let stab = g.stabilizer(x)?.len();
        out.insert(x.clone(), c.scale(&(&order / Rat::from_integer(stab.into()))));
    }
    Ok(out)
}

/// `supp_χ[v] = {x ∈ B_χ(k,n) : a_x != 0}`.
pub fn support(chi: &Character, v: &SymTensor) -> Result<BTreeSet<MultiIndex>> {
    Ok(coords_in_basis(chi, v)?.into_keys().collect())
}

/// Rank over `Q(z_m)` of the rows `P_χ(e_x)`, `x ∈ [n]^k`, by sparse
/// Gaussian elimination.
pub fn rank_of_image(chi: &Character, n: usize, bounds: &Bounds) -> Result<usize> {
    let k = chi.group().degree();
    check_enumeration(n, k, bounds.enumeration)?;
    let xs: Vec<MultiIndex> = MultiIndex::all(n, k).collect();
    let row = |x: &MultiIndex| project_basis(chi, n, x).map(|t| t.coeffs);
    let rows: Vec<BTreeMap<MultiIndex, CycloNum>> = if bounds.parallel {
        xs.par_iter().map(row).collect::<Result<_>>()?
    } else {
        xs.iter().map(row).collect::<Result<_>>()?
    };
    Ok(sparse_rank(rows))
}

/// Rank of sparse rows in echelon form: each pivot row is normalized to a
/// leading 1 at its smallest key.
pub(crate) fn sparse_rank<K: Ord + Clone + std::hash::Hash>(
    rows: impl IntoIterator<Item = BTreeMap<K, CycloNum>>,
) -> usize {
    let mut pivots: HashMap<K, BTreeMap<K, CycloNum>> = HashMap::new();
    for mut r in rows {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => r.keys().next().cloned(),
                Some(c) => r
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(col) = next else { break };
            if let Some(p) = pivots.get(&col) {
                let f = r[&col].clone();
                for (pk, pv) in p {
                    let e = r.entry(pk.clone()).or_insert_with(zero);
                    *e = &*e - &(&f * pv);
                }
                r.retain(|_, c| !c.is_zero());
            }
            cursor = Some(col);
        }
        let Some((lead, lc)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            continue;
        };
        let inv = lc.inv().expect("nonzero leading coefficient");
        let normalized = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        pivots.insert(lead, normalized);
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::tests::{all_test_characters, chi21, p};
    use crate::permgrp::PermGroup;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn mi(v: &[u8]) -> MultiIndex {
        MultiIndex::from_slice(v)
    }

    fn q(a: i64, b: i64) -> CycloNum {
        CycloNum::from_rat_in(1, Rat::new(a.into(), b.into()))
    }

    fn r(a: i64) -> Rat {
        Rat::from_integer(a.into())
    }

    fn unit(n: usize, i: usize) -> Vec<Rat> {
        (1..=n).map(|j| r((j == i) as i64)).collect()
    }

    fn ex48() -> Character {
        let g = Arc::new(PermGroup::closure(4, &[p("3412")]).unwrap());
        Character::from_generator_exponents(g, 2, &[(p("3412"), 1)].into()).unwrap()
    }

    fn ex48_factors() -> Vec<Vec<Rat>> {
        let e23 = vec![r(0), r(1), r(1)];
        vec![e23.clone(), e23, unit(3, 3), unit(3, 3)]
    }

    #[test]
    fn decomposable_examples() {
        let t = SymTensor::decomposable(3, &ex48_factors()).unwrap();
        let keys: Vec<_> = t.keys().into_iter().collect();
        assert_eq!(
            keys,
            vec![mi(&[2, 2, 3, 3]), mi(&[2, 3, 3, 3]), mi(&[3, 2, 3, 3]), mi(&[3, 3, 3, 3])]
        );
        assert!(t.coeffs().values().all(|c| *c == q(1, 1)));
        let e = SymTensor::decomposable(3, &[unit(3, 2), unit(3, 1)]).unwrap();
        assert_eq!(e, SymTensor::basis(3, &mi(&[2, 1])).unwrap());
        let boxed = SymTensor::decomposable(3, &[vec![r(1), r(1), r(0)], vec![r(0), r(1), r(1)]])
            .unwrap();
        assert_eq!(boxed.keys(), mi(&[2, 3]).down_box().into_iter().filter(|y| y.get(1) >= 2).collect());
        assert_eq!(
            SymTensor::decomposable(3, &[unit(3, 1), vec![r(0); 3]]),
            Err(Error::ZeroVector(2))
        );
    }

    #[test]
    fn idempotent_examples() {
        let chi = chi21();
        let v = project_basis(&chi, 2, &mi(&[1, 1, 2])).unwrap();
        let want = SymTensor::from_terms(
            2,
            3,
            [
                (mi(&[1, 1, 2]), q(2, 3)),
                (mi(&[1, 2, 1]), q(-1, 3)),
                (mi(&[2, 1, 1]), q(-1, 3)),
            ],
        )
        .unwrap();
        assert_eq!(v, want);
        assert!(project_basis(&chi, 2, &mi(&[1, 1, 1])).unwrap().is_zero());
        assert!(project_basis(&ex48(), 3, &mi(&[3, 3, 3, 3])).unwrap().is_zero());
        assert!(apply_idempotent(&chi, &SymTensor::basis(2, &mi(&[1, 1])).unwrap()).is_err());
    }

    #[test]
    fn canonical_index_examples() {
        let b = Bounds::default();
        let c6 = Arc::new(PermGroup::cyclic(6));
        let chi = Character::from_generator_exponents(c6, 6, &[(p("612345"), 1)].into()).unwrap();
        let set = canonical_index_set(&chi, 2, &b).unwrap();
        assert_eq!(set.len(), 9);
        assert_eq!(set[0], mi(&[1, 1, 1, 1, 1, 2]));
        assert_eq!(set[8], mi(&[1, 2, 2, 2, 2, 2]));

        let t = Character::trivial(Arc::new(PermGroup::trivial(3)));
        assert_eq!(canonical_index_set(&t, 2, &b).unwrap().len(), 8);

        let a3 = Character::trivial(Arc::new(PermGroup::alternating(3)));
        let set = canonical_index_set(&a3, 3, &b).unwrap();
        let mut want: Vec<MultiIndex> = [
            [3, 3, 3], [2, 3, 3], [1, 3, 3], [2, 2, 3], [1, 2, 3], [1, 3, 2],
            [2, 2, 2], [1, 2, 2], [1, 1, 3], [1, 1, 2], [1, 1, 1],
        ]
        .iter()
        .map(|v| mi(v))
        .collect();
        want.sort();
        assert_eq!(set, want);
        assert_eq!(canonical_index_set(&chi21(), 2, &b), Err(Error::NotOneDimensional));
    }

    #[test]
    fn dim_formula_examples() {
        assert_eq!(dim_formula(&chi21(), 2).unwrap(), 4u32.into());
        let t = Character::trivial(Arc::new(PermGroup::trivial(3)));
        assert_eq!(dim_formula(&t, 4).unwrap(), 64u32.into());
        let s4 = Character::sign(Arc::new(PermGroup::symmetric(4)));
        assert_eq!(dim_formula(&s4, 3).unwrap(), 0u32.into());
        assert_eq!(rank_of_image(&s4, 3, &Bounds::default()).unwrap(), 0);
        let s3 = Character::sign(Arc::new(PermGroup::symmetric(3)));
        assert_eq!(rank_of_image(&s3, 3, &Bounds::default()).unwrap(), 1);
        assert_eq!(rank_of_image(&chi21(), 2, &Bounds::default()).unwrap(), 4);
        // a class function that is not a character
        let g = Arc::new(PermGroup::symmetric(2));
        let bad = Character::from_table(g, 1, vec![q(1, 1), q(0, 1)]).unwrap();
        assert!(matches!(dim_formula(&bad, 3), Err(Error::NotNonNegativeInteger(_))));
    }

    #[test]
    fn dim_formula_matches_rank_for_test_characters() {
        let b = Bounds::default();
        for chi in all_test_characters() {
            for n in 1..=3 {
                let d = dim_formula(&chi, n).unwrap();
                let r = rank_of_image(&chi, n, &b).unwrap();
                assert_eq!(d, r.into(), "{chi:?} n={n}");
                if chi.is_one_dimensional() {
                    assert_eq!(canonical_index_set(&chi, n, &b).unwrap().len(), r);
                }
            }
        }
    }

    #[test]
    fn support_examples() {
        let chi = ex48();
        let v = apply_idempotent(&chi, &SymTensor::decomposable(3, &ex48_factors()).unwrap()).unwrap();
        let s: Vec<_> = support(&chi, &v).unwrap().into_iter().collect();
        assert_eq!(s, vec![mi(&[2, 2, 3, 3]), mi(&[2, 3, 3, 3]), mi(&[3, 2, 3, 3])]);
        let e = SymTensor::basis(3, &mi(&[2, 2, 3, 3])).unwrap();
        assert_eq!(coords_in_basis(&chi, &e), Err(Error::NotInImage));
    }

    #[test]
    fn coords_follow_the_orbit_relation() {
        let b = Bounds::default();
        for chi in all_test_characters().into_iter().filter(Character::is_one_dimensional) {
            let g = chi.group().clone();
            for x in canonical_index_set(&chi, 2, &b).unwrap() {
                let base = coords_in_basis(&chi, &project_basis(&chi, 2, &x).unwrap()).unwrap();
                assert_eq!(base.len(), 1);
                assert_eq!(base[&x], q(1, 1));
                for (i, h) in g.elements().iter().enumerate() {
                    let y = h.act(&x).unwrap();
                    let c = coords_in_basis(&chi, &project_basis(&chi, 2, &y).unwrap()).unwrap();
                    assert_eq!(c[&x], chi.value(i).clone(), "{chi:?} x={x} g={h}");
                }
            }
        }
    }

    #[test]
    fn vanishing_criterion() {
        for chi in all_test_characters() {
            let g = chi.group().clone();
            for x in MultiIndex::all(2, g.degree()) {
                let stab = g.stabilizer(&x).unwrap();
                let res = chi.restrict(&stab).unwrap();
                let triv = Character::trivial(res.group().clone());
                let ip = res.inner_product(&triv).unwrap();
                let px = project_basis(&chi, 2, &x).unwrap();
                assert_eq!(px.is_zero(), ip.is_zero(), "{chi:?} x={x}");
                if chi.is_one_dimensional() {
                    let in_ker = stabilizer_in_kernel(&chi, &chi.kernel_mask(), &x);
                    assert_eq!(chi.sum_over(&stab).is_zero(), !in_ker);
                }
            }
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-3i64..=3).prop_map(|a| Rat::from_integer(a.into()))
    }

    proptest! {
        #[test]
        fn idempotent_is_idempotent(
            idx in 0usize..11,
            coeffs in proptest::collection::vec(small_rat(), 8),
        ) {
            let chars = all_test_characters();
            let chi = &chars[idx % chars.len()];
            let k = chi.group().degree();
            let terms = MultiIndex::all(2, k)
                .zip(coeffs.iter().cycle())
                .map(|(x, c)| (x, CycloNum::from_rat_in(1, c.clone())));
            let v = SymTensor::from_terms(2, k, terms).unwrap();
            let once = apply_idempotent(chi, &v).unwrap();
            let twice = apply_idempotent(chi, &once).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
