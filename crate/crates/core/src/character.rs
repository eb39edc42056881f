//! Characters of a permutation group with values in a cyclotomic field.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{root_of_unity, CycloNum, Rat};
use crate::permgrp::{Perm, PermGroup};

/// A class function on `G` together with the flags the rest of the library
/// dispatches on. `values[i]` is the value on `group.element(i)`.
#[derive(Clone, Debug)]
pub struct Character {
    group: Arc<PermGroup>,
    conductor: u32,
    values: Vec<CycloNum>,
    degree: u64,
    one_dimensional: bool,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.values == other.values
    }
}

impl Character {
    /// The one-dimensional character with `χ(s) = ζ_m^{e(s)}` on each key
    /// `s` of `gen_exps`. The keys must generate `G`; the assignment is
    /// extended by replaying the closure and every collision is checked.
    pub fn from_generator_exponents(
        group: Arc<PermGroup>,
        m: u32,
        gen_exps: &BTreeMap<Perm, i64>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::NotAHomomorphism("conductor must be positive".into()));
        }
        let mut gens = Vec::with_capacity(gen_exps.len());
        for (p, &e) in gen_exps {
            let idx = group
                .index_of(p)
                .ok_or_else(|| Error::NotAHomomorphism(format!("{p} is not in the group")))?;
            gens.push((idx, e.rem_euclid(m as i64) as u32));
        }
        let mut exps: Vec<Option<u32>> = vec![None; group.order()];
        let id = group.identity_index();
        exps[id] = Some(0);
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            let eh = exps[h].unwrap();
            for &(s, es) in &gens {
                let p = group.mul(s, h);
                let ep = (eh + es) % m;
                match exps[p] {
                    None => {
                        exps[p] = Some(ep);
                        queue.push_back(p);
                    }
                    Some(old) if old != ep => {
                        return Err(Error::NotAHomomorphism(format!(
                            "{} gets exponents {old} and {ep} mod {m}",
                            group.element(p)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        if let Some(miss) = exps.iter().position(Option::is_none) {
            return Err(Error::NotAHomomorphism(format!(
                "the listed generators do not reach {}",
                group.element(miss)
            )));
        }
        let exps: Vec<u32> = exps.into_iter().map(Option::unwrap).collect();
        let n = group.order();
        for a in 0..n {
            for b in 0..n {
                if exps[group.mul(a, b)] != (exps[a] + exps[b]) % m {
                    return Err(Error::NotAHomomorphism(format!(
                        "χ({}∘{}) != χ({})χ({})",
                        group.element(a),
                        group.element(b),
                        group.element(a),
                        group.element(b)
                    )));
                }
            }
        }
        let values = exps.iter().map(|&e| root_of_unity(m, e as i64)).collect();
        Ok(Character {
            group,
            conductor: m,
            values,
            degree: 1,
            one_dimensional: true,
        })
    }

    /// `sgn` restricted to `G`.
    pub fn sign(group: Arc<PermGroup>) -> Self {
        let values = group
            .elements()
            .iter()
            .map(|g| CycloNum::from_int_in(2, g.sign()))
            .collect();
        Character {
            group,
            conductor: 2,
            values,
            degree: 1,
            one_dimensional: true,
        }
    }

    /// `1_G`.
    pub fn trivial(group: Arc<PermGroup>) -> Self {
        let values = vec![CycloNum::from_int_in(1, 1); group.order()];
        Character {
            group,
            conductor: 1,
            values,
            degree: 1,
            one_dimensional: true,
        }
    }

    /// A character given by its full value list, lifted into `Q(z_m)`.
    /// The values must be a class function with a positive integer at the
    /// identity; simplicity is the caller's claim (the dimension formula
    /// reports an error if it fails to be a non-negative integer).
    pub fn from_table(group: Arc<PermGroup>, m: u32, values: Vec<CycloNum>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::LengthMismatch {
                expected: group.order(),
                got: values.len(),
            });
        }
        let values = values
            .iter()
            .map(|v| v.lift(m))
            .collect::<Result<Vec<_>>>()?;
        let degree = values[group.identity_index()]
            .to_integer()
            .and_then(|d| u64::try_from(d).ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| {
                Error::NotClassFunction(format!(
                    "value at the identity is {}, not a positive integer",
                    values[group.identity_index()]
                ))
            })?;
        let n = group.order();
        for g in 0..n {
            for h in 0..n {
                let conj = group.mul(group.mul(h, g), group.inverse_index(h));
                if values[conj] != values[g] {
                    return Err(Error::NotClassFunction(format!(
                        "χ({}) = {} but its conjugate {} has {}",
                        group.element(g),
                        values[g],
                        group.element(conj),
                        values[conj]
                    )));
                }
            }
        }
        let one_dimensional = degree == 1
            && (0..n).all(|a| (0..n).all(|b| values[group.mul(a, b)] == &values[a] * &values[b]));
        Ok(Character {
            group,
            conductor: m,
            values,
            degree,
            one_dimensional,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn values(&self) -> &[CycloNum] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &CycloNum {
        &self.values[i]
    }

    pub fn value_of(&self, g: &Perm) -> Option<&CycloNum> {
        self.group.index_of(g).map(|i| &self.values[i])
    }

    /// `χ(e)`.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one_dimensional(&self) -> bool {
        self.one_dimensional
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.to_integer() == Some(1.into()))
    }

    pub(crate) fn require_one_dimensional(&self) -> Result<()> {
        if self.one_dimensional {
            Ok(())
        } else {
            Err(Error::NotOneDimensional)
        }
    }

    /// `ker χ = {g : χ(g) = 1}` as element indices.
    pub fn kernel(&self) -> Result<Vec<usize>> {
        self.require_one_dimensional()?;
        Ok(self.kernel_mask().iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
    }

    pub(crate) fn kernel_mask(&self) -> Vec<bool> {
        let one = CycloNum::from_int_in(1, 1);
        self.values.iter().map(|v| *v == one).collect()
    }

    /// `Σ_g χ1(g) χ2(g^-1)`, without the usual `1/|G|`; only its vanishing
    /// is ever used.
    pub fn inner_product(&self, other: &Character) -> Result<CycloNum> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut acc = CycloNum::from_int_in(1, 0);
        for g in 0..self.group.order() {
            acc = &acc + &(&self.values[g] * &other.values[self.group.inverse_index(g)]);
        }
        Ok(acc)
    }

    /// Coefficient of each group element in
    /// `P_χ = (χ(e)/|G|) Σ χ(g^-1) g`, indexed like the group's elements.
    pub fn idempotent_coefficients(&self) -> Vec<CycloNum> {
        let scale = Rat::new(self.degree.into(), self.group.order().into());
        (0..self.group.order())
            .map(|g| self.values[self.group.inverse_index(g)].scale(&scale))
            .collect()
    }

    /// The restriction to a subgroup given by element indices of `G`.
    pub fn restrict(&self, subset: &[usize]) -> Result<Character> {
        if subset.iter().any(|&i| i >= self.group.order()) {
            return Err(Error::NotSubgroup("index out of range".into()));
        }
        if !self.group.is_subgroup(subset) {
            return Err(Error::NotSubgroup(format!(
                "{:?}",
                subset.iter().map(|&i| self.group.element(i).to_string()).collect::<Vec<_>>()
            )));
        }
        let perms: Vec<Perm> = subset.iter().map(|&i| self.group.element(i).clone()).collect();
        let h = Arc::new(PermGroup::from_elements(self.group.degree(), &perms)?);
        let values: Vec<CycloNum> = h
            .elements()
            .iter()
            .map(|p| self.values[self.group.index_of(p).unwrap()].clone())
            .collect();
        let one_dimensional = self.one_dimensional
            || (self.degree == 1 && {
                let n = h.order();
                (0..n).all(|a| (0..n).all(|b| values[h.mul(a, b)] == &values[a] * &values[b]))
            });
        Ok(Character {
            group: h,
            conductor: self.conductor,
            values,
            degree: self.degree,
            one_dimensional,
        })
    }

    /// `Σ_{g ∈ H} χ(g)` over element indices `subset`.
    #[cfg(test)]
    pub(crate) fn sum_over(&self, subset: &[usize]) -> CycloNum {
        subset
            .iter()
            .fold(CycloNum::from_int_in(1, 0), |acc, &i| &acc + &self.values[i])
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactalg::Rat;

    pub(crate) fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn int(i: i64) -> CycloNum {
        CycloNum::from_int_in(1, i)
    }

    /// Character of `S_k` from a function of the cycle type.
    pub(crate) fn class_char(k: usize, f: impl Fn(&[usize]) -> i64) -> Character {
        let g = Arc::new(PermGroup::symmetric(k));
        let vals = g
            .elements()
            .iter()
            .map(|p| {
                let mut ct = p.cycle_lengths();
                ct.sort_unstable_by(|a, b| b.cmp(a));
                int(f(&ct))
            })
            .collect();
        Character::from_table(g, 1, vals).unwrap()
    }

    /// The (2,1) character of `S_3`.
    pub(crate) fn chi21() -> Character {
        class_char(3, |ct| match ct {
            [1, 1, 1] => 2,
            [2, 1] => 0,
            _ => -1,
        })
    }

    #[test]
    fn generator_exponent_examples() {
        let g = Arc::new(PermGroup::closure(4, &[p("3412")]).unwrap());
        let chi = Character::from_generator_exponents(g.clone(), 2, &[(p("3412"), 1)].into())
            .unwrap();
        assert_eq!(chi.value_of(&p("3412")).unwrap(), &int(-1));
        assert_eq!(chi.kernel().unwrap(), vec![0]);

        let t = Character::from_generator_exponents(g.clone(), 1, &[(p("3412"), 0)].into()).unwrap();
        assert!(t.is_trivial());

        let c6 = Arc::new(PermGroup::cyclic(6));
        let sigma = p("612345");
        let chi = Character::from_generator_exponents(c6.clone(), 6, &[(sigma.clone(), 1)].into())
            .unwrap();
        let mut pw = Perm::identity(6);
        for h in 0..6 {
            assert_eq!(chi.value_of(&pw).unwrap(), &root_of_unity(6, h));
            pw = sigma.compose(&pw);
        }
        assert_eq!(chi.kernel().unwrap(), vec![c6.identity_index()]);
    }

    #[test]
    fn inconsistent_assignment_is_rejected() {
        let g = Arc::new(PermGroup::closure(4, &[p("3412")]).unwrap());
        // an involution cannot map to a primitive cube root of unity
        let r = Character::from_generator_exponents(g.clone(), 3, &[(p("3412"), 1)].into());
        assert!(matches!(r, Err(Error::NotAHomomorphism(_))));
        let s3 = Arc::new(PermGroup::symmetric(3));
        let r = Character::from_generator_exponents(
            s3.clone(),
            2,
            &[(p("213"), 1), (p("132"), 0)].into(),
        );
        assert!(matches!(r, Err(Error::NotAHomomorphism(_))));
        let r = Character::from_generator_exponents(s3, 2, &[(p("213"), 1)].into());
        assert!(matches!(r, Err(Error::NotAHomomorphism(_))));
    }

    #[test]
    fn sign_and_trivial() {
        let s2 = Arc::new(PermGroup::symmetric(2));
        assert_eq!(Character::sign(s2.clone()).value_of(&p("21")).unwrap(), &int(-1));
        let a3 = Arc::new(PermGroup::alternating(3));
        assert!(Character::sign(a3).is_trivial());
        let s3 = Arc::new(PermGroup::symmetric(3));
        let k = Character::sign(s3.clone()).kernel().unwrap();
        let ks: Vec<_> = k.iter().map(|&i| s3.element(i).clone()).collect();
        assert_eq!(ks, PermGroup::alternating(3).elements());
        let tab = Character::from_table(s2.clone(), 2, vec![int(1), int(-1)]).unwrap();
        assert_eq!(tab, Character::sign(s2));
    }

    #[test]
    fn table_character_checks() {
        let chi = chi21();
        assert_eq!(chi.degree(), 2);
        assert!(!chi.is_one_dimensional());
        assert_eq!(chi.kernel(), Err(Error::NotOneDimensional));
        let s3 = chi.group().clone();
        let mut bad: Vec<CycloNum> = chi.values().to_vec();
        bad[s3.index_of(&p("213")).unwrap()] = int(1);
        assert!(matches!(
            Character::from_table(s3, 1, bad),
            Err(Error::NotClassFunction(_))
        ));
    }

    #[test]
    fn idempotent_coefficient_examples() {
        let chi = chi21();
        let c = chi.idempotent_coefficients();
        let g = chi.group();
        let third = |n: i64| CycloNum::from_rat_in(1, Rat::new(n.into(), 3.into()));
        assert_eq!(c[g.index_of(&p("123")).unwrap()], third(2));
        assert_eq!(c[g.index_of(&p("231")).unwrap()], third(-1));
        assert_eq!(c[g.index_of(&p("312")).unwrap()], third(-1));
        assert_eq!(c[g.index_of(&p("213")).unwrap()], third(0));

        let s3 = Arc::new(PermGroup::symmetric(3));
        let sixth = Rat::new(1.into(), 6.into());
        for (i, v) in Character::trivial(s3.clone()).idempotent_coefficients().iter().enumerate() {
            assert_eq!(v.to_rational().unwrap(), sixth);
            let sg = Character::sign(s3.clone()).idempotent_coefficients()[i].clone();
            assert_eq!(sg.to_rational().unwrap(), &sixth * Rat::from_integer(s3.element(i).sign().into()));
        }
    }

    /// Squares `Σ c_g g` in the group algebra.
    fn convolve(g: &PermGroup, c: &[CycloNum]) -> Vec<CycloNum> {
        let mut out = vec![int(0); g.order()];
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                out[ab] = &out[ab] + &(&c[a] * &c[b]);
            }
        }
        out
    }

    pub(crate) fn all_test_characters() -> Vec<Character> {
        let mut out = vec![chi21()];
        out.push(class_char(4, |ct| match ct {
            [1, 1, 1, 1] => 3,
            [2, 1, 1] => 1,
            [2, 2] => -1,
            [3, 1] => 0,
            _ => -1,
        }));
        out.push(class_char(4, |ct| match ct {
            [1, 1, 1, 1] => 2,
            [2, 1, 1] => 0,
            [2, 2] => 2,
            [3, 1] => -1,
            _ => 0,
        }));
        for g in [
            PermGroup::symmetric(3),
            PermGroup::alternating(4),
            PermGroup::cyclic(4),
            PermGroup::young_subgroup(4, &[2, 2]).unwrap(),
        ] {
            let g = Arc::new(g);
            out.push(Character::trivial(g.clone()));
            out.push(Character::sign(g));
        }
        let c4 = Arc::new(PermGroup::cyclic(4));
        out.push(Character::from_generator_exponents(c4, 4, &[(p("4123"), 1)].into()).unwrap());
        out
    }

    #[test]
    fn idempotents_square_to_themselves() {
        for chi in all_test_characters() {
            let c = chi.idempotent_coefficients();
            assert_eq!(convolve(chi.group(), &c), c, "{chi:?}");
        }
    }

    #[test]
    fn inner_product_examples() {
        let s2 = Arc::new(PermGroup::symmetric(2));
        let t = Character::trivial(s2.clone());
        assert_eq!(t.inner_product(&t).unwrap(), int(2));
        assert_eq!(Character::sign(s2.clone()).inner_product(&t).unwrap(), int(0));
        let c6 = Arc::new(PermGroup::cyclic(6));
        let chi = Character::from_generator_exponents(c6, 6, &[(p("612345"), 1)].into()).unwrap();
        assert_eq!(chi.inner_product(&chi).unwrap(), int(6));
        let a3 = Character::trivial(Arc::new(PermGroup::alternating(3)));
        assert_eq!(a3.inner_product(&t), Err(Error::GroupMismatch));
    }

    #[test]
    fn restriction_examples() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        let sg = Character::sign(s4.clone());
        let h = [s4.identity_index(), s4.index_of(&p("3412")).unwrap()];
        let r = sg.restrict(&h).unwrap();
        assert!(r.values().iter().all(|v| *v == int(1)));
        let r = chi21().restrict(&[0]).unwrap();
        assert_eq!(r.values(), &[int(2)]);
        let s3 = chi21().group().clone();
        let a3: Vec<usize> = PermGroup::alternating(3)
            .elements()
            .iter()
            .map(|q| s3.index_of(q).unwrap())
            .collect();
        let r = chi21().restrict(&a3).unwrap();
        assert_eq!(r.values(), &[int(2), int(-1), int(-1)]);
        assert!(matches!(
            sg.restrict(&[s4.index_of(&p("2134")).unwrap()]),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn one_dimensional_laws() {
        for chi in all_test_characters().into_iter().filter(Character::is_one_dimensional) {
            let g = chi.group();
            assert_eq!(chi.value(g.identity_index()), &int(1));
            for i in 0..g.order() {
                assert_eq!(&chi.values[i] * &chi.values[g.inverse_index(i)], int(1));
            }
            assert!(g.is_subgroup(&chi.kernel().unwrap()));
        }
    }
}
