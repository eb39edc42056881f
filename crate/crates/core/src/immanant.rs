//! χ-immanants `χ_{x,y}(M) = Σ_g χ(g) Π_i M[g(x)_i, y_i]` over any ring that
//! contains the character values.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bounds::Bounds;
use crate::character::Character;
use crate::error::{Error, Result};
use crate::exactalg::{CycloAlgebra, CycloNum, MVPoly, Rat, Ring};
use crate::permgrp::{check_enumeration, MultiIndex};
use crate::symtensor::project_basis;

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixR<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> MatrixR<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(MatrixR { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Entry `f(i, j)` for 1-based `i, j`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        MatrixR { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    /// Column `j` (1-based).
    pub fn column(&self, j: usize) -> Vec<R> {
        (1..=self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MatrixR<S> {
        MatrixR {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// Variable name of entry `(i, j)` of the generic matrix.
pub fn var_name(i: usize, j: usize) -> String {
    format!("a_{i}_{j}")
}

/// The generic `n x k` matrix with entries `a_i_j`, variables declared in
/// row-major order.
pub fn generic_matrix(n: usize, k: usize) -> MatrixR<MVPoly<CycloNum>> {
    let vars: Arc<Vec<String>> = Arc::new(
        (1..=n)
            .flat_map(|i| (1..=k).map(move |j| var_name(i, j)))
            .collect(),
    );
    MatrixR::from_fn(n, k, |i, j| MVPoly::var(vars.clone(), (i - 1) * k + (j - 1)))
}

fn check_indices<R>(m: &MatrixR<R>, u: &MultiIndex, v: &MultiIndex) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    if u.max_entry() > m.rows {
        return Err(Error::IndexOutOfRange(format!("row index {u} exceeds {}", m.rows)));
    }
    if v.max_entry() > m.cols {
        return Err(Error::IndexOutOfRange(format!("column index {v} exceeds {}", m.cols)));
    }
    Ok(())
}

/// `(M^{⊗k})_{u,v} = Π_i M[u_i, v_i]`.
pub fn tensor_entry<R: Ring>(m: &MatrixR<R>, u: &MultiIndex, v: &MultiIndex) -> Result<R> {
    check_indices(m, u, v)?;
    Ok(tensor_entry_unchecked(m, u, v))
}

fn tensor_entry_unchecked<R: Ring>(m: &MatrixR<R>, u: &MultiIndex, v: &MultiIndex) -> R {
    let mut acc = R::one();
    for i in 0..u.len() {
        let e = m.get(u.get(i), v.get(i));
        if e.is_zero() {
            return R::zero();
        }
        acc = acc.times(e);
    }
    acc
}

/// `χ_{x,y}(M) = Σ_g χ(g) (M^{⊗k})_{g(x),y}`.
pub fn immanant<R: CycloAlgebra>(
    chi: &Character,
    x: &MultiIndex,
    y: &MultiIndex,
    m: &MatrixR<R>,
) -> Result<R> {
    let k = chi.group().degree();
    if x.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: x.len(),
        });
    }
    check_indices(m, x, y)?;
    let g = chi.group();
    let mut acc = R::zero();
    for (h, v) in g.elements().iter().zip(chi.values()) {
        if v.is_zero() {
            continue;
        }
        let t = tensor_entry_unchecked(m, &h.act_unchecked(x), y);
        if !t.is_zero() {
            acc = acc.plus(&t.times(&R::from_cyclo(v)));
        }
    }
    Ok(acc)
}

/// Checks `(M^{⊗k} P_χ e_y)_x = (χ(e)/|G|) χ_{x,y}(M)`, computing the left
/// side by projecting `e_y` and expanding the tensor power.
pub fn check_immanant_identity(
    chi: &Character,
    m: &MatrixR<Rat>,
    x: &MultiIndex,
    y: &MultiIndex,
) -> Result<bool> {
    check_indices(m, x, y)?;
    let py = project_basis(chi, m.cols(), y)?;
    let mut lhs = CycloNum::from_int_in(1, 0);
    for (z, c) in py.coeffs() {
        let t = tensor_entry_unchecked(m, x, z);
        lhs = &lhs + &c.scale(&t);
    }
    let mc = m.map(|r| CycloNum::from_rat_in(1, r.clone()));
    let imm = immanant(chi, x, y, &mc)?;
    let scale = Rat::new(chi.degree().into(), chi.group().order().into());
    Ok(lhs == imm.scale(&scale))
}

/// `x_z = χ_{z,(1,...,k)}(A)` for every `z ∈ [n]^k`, with `A` generic.
/// The factor `χ(e)/|G|` is not included.
pub fn parametric_equations(
    chi: &Character,
    n: usize,
    bounds: &Bounds,
) -> Result<BTreeMap<MultiIndex, MVPoly<CycloNum>>> {
    let k = chi.group().degree();
    check_enumeration(n, k, bounds.enumeration)?;
    let a = generic_matrix(n, k);
    let cols = MultiIndex::new((1..=k).collect(), k.max(1))?;
    let zs: Vec<MultiIndex> = MultiIndex::all(n, k).collect();
    let eq = |z: &MultiIndex| immanant(chi, z, &cols, &a).map(|p| (z.clone(), p));
    if bounds.parallel {
        zs.par_iter().map(eq).collect()
    } else {
        zs.iter().map(eq).collect()
    }
}
