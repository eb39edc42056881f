//! Incidence strata of `gr_{1_G}(k,n)`, indexed by principal order ideals
//! of `B_{1_G}(k,n)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::bposet::{polya_rank_generating, BPoset};
use crate::character::Character;
use crate::error::{Error, Result};
use crate::exactalg::{CycloNum, IntPoly, MVPoly, Rat, Ring};
use crate::immanant::{generic_matrix, immanant, MatrixR};
use crate::permgrp::{MultiIndex, PermGroup};
use crate::symtensor::canonical_index_set;

/// The closed stratum `C̄_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub top: MultiIndex,
    pub ideal: Vec<MultiIndex>,
    pub dimension: u32,
}

impl Stratum {
    pub fn new(base: &BPoset, x: &MultiIndex) -> Result<Self> {
        if !base.character().is_trivial() {
            return Err(Error::NotTrivialCharacter);
        }
        Ok(Stratum {
            top: x.clone(),
            ideal: base.principal_ideal(x)?,
            dimension: stratum_dimension(x),
        })
    }
}

/// Zeroes `A_{ij}` for `i > x_j`.
pub fn truncate<R: Ring>(a: &MatrixR<R>, x: &MultiIndex) -> Result<MatrixR<R>> {
    if x.len() != a.cols() {
        return Err(Error::LengthMismatch {
            expected: a.cols(),
            got: x.len(),
        });
    }
    if x.max_entry() > a.rows() {
        return Err(Error::InvalidMultiIndex(format!("{x} has an entry above {}", a.rows())));
    }
    Ok(MatrixR::from_fn(a.rows(), a.cols(), |i, j| {
        if i <= x.get(j - 1) {
            a.get(i, j).clone()
        } else {
            R::zero()
        }
    }))
}

/// `y ⪯ x` for the order of `B_{1_G}`, without building the poset.
fn below(g: &PermGroup, y: &MultiIndex, x: &MultiIndex) -> bool {
    g.elements().iter().any(|h| y.leq(&h.act_unchecked(x)))
}

/// `z_y = |G_y|^{-1} (1_G)_{y,(1..k)}(A^x)` for `y ⪯ x` and `z_y = 0`
/// otherwise, over every `y ∈ B_{1_G}(k,n)`.
pub fn stratum_equations(
    g: &Arc<PermGroup>,
    n: usize,
    x: &MultiIndex,
    bounds: &Bounds,
) -> Result<BTreeMap<MultiIndex, MVPoly<CycloNum>>> {
    let k = g.degree();
    let chi = Character::trivial(g.clone());
    let keys = canonical_index_set(&chi, n, bounds)?;
    if !keys.contains(x) {
        return Err(Error::NotInPoset(x.to_string()));
    }
    let a = generic_matrix(n, k);
    let ax = truncate(&a, x)?;
    let vars = a.get(1, 1).vars().clone();
    let cols = MultiIndex::from_slice(&(1..=k as u8).collect::<Vec<_>>());
    let eq = |y: &MultiIndex| -> Result<(MultiIndex, MVPoly<CycloNum>)> {
        if !below(g, y, x) {
            return Ok((y.clone(), MVPoly::zero_in(vars.clone())));
        }
        let stab = g.stabilizer(y)?.len() as i64;
        let scale = CycloNum::from_rat_in(1, Rat::new(1.into(), stab.into()));
        let p = immanant(&chi, y, &cols, &ax)?.scale(&scale);
        Ok((y.clone(), p.with_vars(vars.clone())))
    };
    if bounds.parallel {
        keys.par_iter().map(eq).collect()
    } else {
        keys.iter().map(eq).collect()
    }
}

/// `dim C̄_x = ρ(x)`.
pub fn stratum_dimension(x: &MultiIndex) -> u32 {
    x.rank()
}

/// Every `x ∈ B_{1_G}(k,n)` with `ρ(x)`. The classes `[C̄_x]` generate the
/// Chow group; they need not be independent.
pub fn chow_generators(g: &Arc<PermGroup>, n: usize, bounds: &Bounds) -> Result<Vec<(MultiIndex, u32)>> {
    let chi = Character::trivial(g.clone());
    Ok(canonical_index_set(&chi, n, bounds)?
        .into_iter()
        .map(|x| {
            let r = stratum_dimension(&x);
            (x, r)
        })
        .collect())
}

/// Coefficient-wise upper bound for the Hilbert-Poincaré polynomial; the
/// Pólya rank generating function.
pub fn hp_upper_bound(g: &PermGroup, n: usize) -> IntPoly {
    polya_rank_generating(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bposet::tests::trivial_poset;
    use crate::chimatroid::{random_factors, SubsetB};
    use crate::exactalg::Monomial;
    use crate::immanant::parametric_equations;
    use crate::symtensor::{apply_idempotent, coords_in_basis, SymTensor};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn s(x: &str) -> MultiIndex {
        x.parse().unwrap()
    }

    fn c(a: i64) -> CycloNum {
        CycloNum::from_int_in(1, a)
    }

    fn groups() -> Vec<PermGroup> {
        vec![
            PermGroup::symmetric(2),
            PermGroup::trivial(2),
            PermGroup::cyclic(3),
            PermGroup::alternating(3),
            PermGroup::young_subgroup(3, &[2, 1]).unwrap(),
        ]
    }

    #[test]
    fn truncate_examples() {
        let a = MatrixR::from_fn(3, 2, |i, j| c((10 * i + j) as i64));
        assert_eq!(truncate(&a, &s("33")).unwrap(), a);
        let t = truncate(&a, &s("11")).unwrap();
        assert_eq!(t, MatrixR::from_fn(3, 2, |i, j| c(if i == 1 { (10 + j) as i64 } else { 0 })));
        let t = truncate(&a, &s("23")).unwrap();
        assert_eq!(t.column(1), vec![c(11), c(21), c(0)]);
        assert_eq!(t.column(2), vec![c(12), c(22), c(32)]);
        assert!(truncate(&a, &s("123")).is_err());
        assert!(truncate(&a, &s("14")).is_err());
    }

    #[test]
    fn s2_stratum_23() {
        let g = Arc::new(PermGroup::symmetric(2));
        let eqs = stratum_equations(&g, 3, &s("23"), &Bounds::default()).unwrap();
        assert_eq!(eqs.len(), 6);
        assert_eq!(eqs[&s("12")].to_string(), "a_1_1*a_2_2 + a_1_2*a_2_1");
        assert_eq!(eqs[&s("22")].to_string(), "a_2_1*a_2_2");
        assert_eq!(eqs[&s("13")].to_string(), "a_1_1*a_3_2");
        assert_eq!(eqs[&s("23")].to_string(), "a_2_1*a_3_2");
        assert!(eqs[&s("33")].num_terms() == 0);
        assert!(eqs.values().all(|p| !p.to_string().contains("a_3_1")));
        assert_eq!(stratum_dimension(&s("23")), 3);
        let b = trivial_poset(PermGroup::symmetric(2), 3);
        let st = Stratum::new(&b, &s("23")).unwrap();
        assert_eq!(st.ideal, vec![s("11"), s("12"), s("13"), s("22"), s("23")]);
        assert_eq!(st.dimension, 3);
    }

    #[test]
    fn top_stratum_is_the_rescaled_chart() {
        for g in groups() {
            let k = g.degree();
            let g = Arc::new(g);
            let n = 3;
            let top = MultiIndex::from_slice(&vec![n as u8; k]);
            let eqs = stratum_equations(&g, n, &top, &Bounds::default()).unwrap();
            let chart = parametric_equations(&Character::trivial(g.clone()), n, &Bounds::default()).unwrap();
            for (y, p) in &eqs {
                let stab = g.stabilizer(y).unwrap().len() as i64;
                assert_eq!(p.scale(&c(stab)), chart[y]);
            }
        }
    }

    #[test]
    fn coherence_with_the_projected_truncated_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in groups() {
            let k = g.degree();
            let g = Arc::new(g);
            let chi = Character::trivial(g.clone());
            let n = 3;
            let b = BPoset::build(&chi, n, &Bounds::default()).unwrap();
            for x in b.elements() {
                let eqs = stratum_equations(&g, n, x, &Bounds::default()).unwrap();
                let ideal: BTreeSet<MultiIndex> = b.principal_ideal(x).unwrap().into_iter().collect();
                for _ in 0..3 {
                    let a0 = MatrixR::from_fn(n, k, |_, _| {
                        let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
                        Rat::new(num.into(), rng.gen_range(1..=3).into())
                    });
                    let t = truncate(&a0, x).unwrap();
                    let cols: Vec<Vec<Rat>> = (1..=k).map(|j| t.column(j)).collect();
                    let w = apply_idempotent(&chi, &SymTensor::decomposable(n, &cols).unwrap()).unwrap();
                    let coords = coords_in_basis(&chi, &w).unwrap();
                    assert!(coords.keys().all(|y| ideal.contains(y)));
                    let point: Vec<CycloNum> = (1..=n)
                        .flat_map(|i| (1..=k).map(move |j| (i, j)))
                        .map(|(i, j)| CycloNum::from_rat_in(1, a0.get(i, j).clone()))
                        .collect();
                    for (y, p) in &eqs {
                        let want = coords.get(y).cloned().unwrap_or_else(|| c(0));
                        assert_eq!(p.eval(&point), want, "x={x} y={y}");
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_projection_identity() {
        for g in groups() {
            for n in 2..=3 {
                let b = trivial_poset(g.clone(), n);
                let gr = b.group();
                for x in MultiIndex::all(n, gr.degree()) {
                    let image: BTreeSet<MultiIndex> =
                        x.down_box().iter().map(|z| gr.canonical_rep(z).unwrap()).collect();
                    let ideal: BTreeSet<MultiIndex> =
                        b.principal_ideal(&gr.canonical_rep(&x).unwrap()).unwrap().into_iter().collect();
                    assert_eq!(image, ideal, "x={x}");
                }
            }
        }
    }

    #[test]
    fn sampled_supports_sit_under_a_unique_maximum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in groups() {
            let k = g.degree();
            let b = trivial_poset(g, 3);
            let chi = b.character().clone();
            for _ in 0..15 {
                let f = random_factors(&mut rng, k, 3);
                let w = apply_idempotent(&chi, &SymTensor::decomposable(3, &f).unwrap()).unwrap();
                let supp = coords_in_basis(&chi, &w).unwrap().into_keys().collect::<Vec<_>>();
                let x = SubsetB::new(&b, supp.clone()).unwrap();
                let r = x.has_unique_max().unwrap();
                assert!(r.unique);
                let ideal = b.principal_ideal(&r.maxima[0]).unwrap();
                assert!(supp.iter().all(|y| ideal.contains(y)));
            }
        }
    }

    /// Sets `a_i_j = 0` for `i > x_j` by dropping the affected terms.
    fn specialize(p: &MVPoly<CycloNum>, x: &MultiIndex) -> MVPoly<CycloNum> {
        let k = x.len();
        let kept = p.terms().filter(|(Monomial(e), _)| {
            e.iter().enumerate().all(|(v, &d)| d == 0 || v / k < x.get(v % k))
        });
        MVPoly::from_terms(p.vars().clone(), kept.map(|(m, c)| (m.0.clone(), c.clone())))
    }

    #[test]
    fn monotone_under_extra_truncation() {
        let mut checked = 0;
        for g in groups() {
            let b = trivial_poset(g, 3);
            let g = Arc::new(b.group().clone());
            for (i, x) in b.elements().iter().enumerate() {
                let ex = stratum_equations(&g, 3, x, &Bounds::default()).unwrap();
                for j in b.up_set(i).ones() {
                    let y = b.element(j);
                    let ey = stratum_equations(&g, 3, y, &Bounds::default()).unwrap();
                    // Extra truncation needs x <= y entrywise, not just up to G.
                    if !x.leq(y) {
                        continue;
                    }
                    checked += 1;
                    for (z, p) in &ey {
                        assert_eq!(specialize(p, x), ex[z], "x={x} y={y} z={z}");
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn chow_and_hp() {
        let s2 = Arc::new(PermGroup::symmetric(2));
        let gens = chow_generators(&s2, 3, &Bounds::default()).unwrap();
        assert_eq!(gens.len(), 6);
        assert!(gens.contains(&(s("23"), 3)));
        assert!(gens.contains(&(s("11"), 0)));
        assert_eq!(gens.iter().map(|g| g.1).max(), Some(4));
        assert_eq!(hp_upper_bound(&s2, 3), IntPoly::from_i64(&[1, 1, 2, 1, 1]));

        let y = PermGroup::young_subgroup(4, &[2, 1, 1]).unwrap();
        let want = IntPoly::q_integer(3, 1).mul(&IntPoly::q_integer(2, 1).pow(2));
        assert_eq!(hp_upper_bound(&y, 2), want);
        assert_eq!(want.degree(), Some(4));
        let top = chow_generators(&Arc::new(y), 2, &Bounds::default()).unwrap();
        assert_eq!(top.iter().map(|g| g.1).max(), Some(4));

        let e = PermGroup::trivial(3);
        assert_eq!(hp_upper_bound(&e, 3), IntPoly::q_integer(3, 1).pow(3));
    }

    #[test]
    fn rejects_bad_inputs() {
        let s2 = Arc::new(PermGroup::symmetric(2));
        assert!(matches!(stratum_equations(&s2, 3, &s("21"), &Bounds::default()), Err(Error::NotInPoset(_))));
        let sign = Character::sign(s2);
        let b = BPoset::build(&sign, 3, &Bounds::default()).unwrap();
        assert_eq!(Stratum::new(&b, &s("12")), Err(Error::NotTrivialCharacter));
    }
}
