use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use super::rat::Rat;
use super::{CycloAlgebra, CycloNum, Ring};

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a coefficient ring `C`.
///
/// Each polynomial carries its ordered variable list. Binary operations on
/// polynomials with different lists work over the union (left operand's
/// variables first), so constants built without variables mix freely with
/// polynomials in the generic matrix entries.
#[derive(Clone)]
pub struct MVPoly<C> {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> MVPoly<C> {
    pub fn zero_in(vars: Arc<Vec<String>>) -> Self {
        MVPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(vars: Arc<Vec<String>>, c: C) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(vec![0; n], c)])
    }

    /// The polynomial consisting of the single variable `vars[idx]`.
    pub fn var(vars: Arc<Vec<String>>, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::from_terms(vars, [(e, C::one())])
    }

    pub fn from_terms(
        vars: Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Self {
        let mut out = Self::zero_in(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), out.vars.len(), "exponent length must match variables");
            out.add_term(Monomial(e), c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs with a nonzero exponent.
    pub fn with_vars(&self, vars: Arc<Vec<String>>) -> Self {
        if Arc::ptr_eq(&vars, &self.vars) || *vars == *self.vars {
            return MVPoly {
                vars,
                terms: self.terms.clone(),
            };
        }
        let pos: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero_in(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; out.vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = pos[i].unwrap_or_else(|| {
                        panic!("variable {} missing from target list", self.vars[i])
                    });
                    e[j] = x;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return (self.clone(), other.with_vars(self.vars.clone()));
        }
        let mut union: Vec<String> = self.vars.as_ref().clone();
        for v in other.vars.iter() {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        let union = Arc::new(union);
        (self.with_vars(union.clone()), other.with_vars(union))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero_in(self.vars.clone());
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.times(c));
        }
        out
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.times(x);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Evaluates with values looked up by variable name; unknown names are
    /// an error reported as `Err(name)`.
    pub fn eval_by<F: Fn(&str) -> Option<C>>(&self, lookup: F) -> Result<C, String> {
        let point = self
            .vars
            .iter()
            .map(|v| lookup(v).ok_or_else(|| v.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.eval(&point))
    }

    /// Maps every coefficient through `f`.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MVPoly<D> {
        let mut out = MVPoly::<D>::zero_in(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<C: Ring> PartialEq for MVPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<C: Ring> fmt::Debug for MVPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MVPoly[{}]({})", self.vars.join(","), self)
    }
}

impl<C: Ring> fmt::Display for MVPoly<C> {
    /// Terms in descending graded-lex order, e.g. `2*a_1_1*a_2_3 - a_2_1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff) = match c.as_rat() {
                Some(r) => (r.is_negative(), Some(r.abs())),
                None => (false, None),
            };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match coeff {
                Some(r) if mono.is_empty() => write!(f, "{r}")?,
                Some(r) if One::is_one(&r) => f.write_str(&mono)?,
                Some(r) => write!(f, "{r}*{mono}")?,
                None if mono.is_empty() => write!(f, "({c})")?,
                None => write!(f, "({c})*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<C: Ring> Ring for MVPoly<C> {
    fn zero() -> Self {
        Self::zero_in(Arc::new(vec![]))
    }
    fn one() -> Self {
        Self::constant_in(Arc::new(vec![]), C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
    fn times(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = Self::zero_in(a.vars.clone());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Monomial(e), ca.times(cb));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MVPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect(),
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Self::constant_in(Arc::new(vec![]), C::from_rat(r))
    }
    fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::from_integer(0.into())),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.degree() == 0 {
                    c.as_rat()
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl<C: CycloAlgebra> CycloAlgebra for MVPoly<C> {
    fn from_cyclo(c: &CycloNum) -> Self {
        Self::constant_in(Arc::new(vec![]), C::from_cyclo(c))
    }
}
