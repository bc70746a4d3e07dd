//! Finite-dimensional commutative local algebras over `F_p`.
//!
//! An algebra is stored by structure constants on a monomial basis whose
//! first element is the unit; every other basis element lies in the maximal
//! ideal. Algebras are built either from a presentation `F_p[x_1..x_m]/I` with
//! a user-supplied nilpotency bound, or as tensor products of existing ones.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::poly::{self, degree, monomial_label, Exponents, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("nilpotency bound must be at least 1")]
    BadNilpotencyBound,
    #[error("relation {} has nonzero constant term; the ideal must lie in the maximal ideal", index + 1)]
    ConstantTerm { index: usize },
    #[error("relation {} has {found} variables, expected {expected}", index + 1)]
    RelationArity {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("nilpotency bound {bound} violated: monomial {monomial} does not reduce to zero")]
    NilpotencyBoundViolated { bound: u32, monomial: String },
    #[error("duplicate variable name '{0}'")]
    DuplicateVariable(String),
    #[error("not local: {0}")]
    NotLocal(String),
    #[error("multiplication is not {0}")]
    BadMultiplication(String),
    #[error("algebras are over different fields ({0} vs {1})")]
    FieldMismatch(PrimeField, PrimeField),
    #[error("algebra too large: {0}")]
    TooLarge(String),
}

/// `F_p[variables] / (relations)`, with `(variables)^N` contained in the ideal.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub field: PrimeField,
    pub variables: Vec<String>,
    pub relations: Vec<Polynomial>,
    pub nilpotency_bound: u32,
}

impl AlgebraPresentation {
    /// Parses relation strings against the variable list.
    pub fn parse(
        field: PrimeField,
        variables: &[&str],
        relations: &[&str],
        nilpotency_bound: u32,
    ) -> Result<Self, crate::poly::PolyParseError> {
        let variables: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let relations = relations
            .iter()
            .map(|r| Polynomial::parse(r, &variables))
            .collect::<Result<_, _>>()?;
        Ok(AlgebraPresentation {
            field,
            variables,
            relations,
            nilpotency_bound,
        })
    }
}

/// A finite-dimensional commutative local `F_p`-algebra with residue field `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalAlgebra {
    field: PrimeField,
    dim: usize,
    basis_labels: Vec<String>,
    basis_exponents: Vec<Exponents>,
    var_names: Vec<String>,
    var_elements: Vec<Vec<u32>>,
    /// `mult[(i*dim + j)*dim + l]` is the coefficient of `e_l` in `e_i e_j`.
    mult: Vec<u32>,
    unit_index: usize,
    maxideal_basis: Vec<usize>,
    left_mult: Vec<Matrix>,
}

const MAX_MONOMIALS: usize = 20_000;

pub fn build_algebra(pres: &AlgebraPresentation) -> Result<Arc<LocalAlgebra>, AlgebraError> {
    let field = pres.field;
    let n = pres.nilpotency_bound;
    if n < 1 {
        return Err(AlgebraError::BadNilpotencyBound);
    }
    let nv = pres.variables.len();
    for (i, v) in pres.variables.iter().enumerate() {
        if pres.variables[..i].contains(v) {
            return Err(AlgebraError::DuplicateVariable(v.clone()));
        }
    }
    for (index, r) in pres.relations.iter().enumerate() {
        if r.nvars() != nv {
            return Err(AlgebraError::RelationArity {
                index,
                found: r.nvars(),
                expected: nv,
            });
        }
        if field.reduce(r.constant_term()) != 0 {
            return Err(AlgebraError::ConstantTerm { index });
        }
    }

    // Columns ordered from the largest monomial down, so pivots of the
    // reduced relation span are leading monomials.
    let mut monos = poly::monomials_up_to(nv, n);
    if monos.len() > MAX_MONOMIALS {
        return Err(AlgebraError::TooLarge(format!(
            "{} monomials below degree {}",
            monos.len(),
            n + 1
        )));
    }
    monos.reverse();
    let col_of: HashMap<Exponents, usize> = monos
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let ncols = monos.len();

    let multipliers: Vec<&Exponents> = monos.iter().filter(|e| degree(e) < n).collect();
    let mut rows = Vec::new();
    for rel in &pres.relations {
        let terms = rel.reduced_terms(field);
        if terms.is_empty() {
            continue;
        }
        for u in &multipliers {
            let mut v = vec![0u32; ncols];
            let mut any = false;
            for (e, c) in &terms {
                let prod: Exponents = e.iter().zip(u.iter()).map(|(a, b)| a + b).collect();
                if let Some(&col) = col_of.get(&prod) {
                    v[col] = field.add(v[col], *c);
                    any = true;
                }
            }
            if any {
                rows.push(v);
            }
        }
    }
    let ideal = Subspace::span(field, ncols, rows);

    for (col, e) in monos.iter().enumerate() {
        if degree(e) == n {
            let mut unit = vec![0u32; ncols];
            unit[col] = 1;
            if !ideal.contains(&unit) {
                return Err(AlgebraError::NilpotencyBoundViolated {
                    bound: n,
                    monomial: monomial_label(e, &pres.variables),
                });
            }
        }
    }

    let mut standard: Vec<usize> = ideal.complement_indices();
    standard.sort_by(|&a, &b| {
        degree(&monos[a])
            .cmp(&degree(&monos[b]))
            .then_with(|| monos[b].cmp(&monos[a]))
    });
    let position: HashMap<usize, usize> = standard
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let dim = standard.len();

    let normal_form = |e: &Exponents| -> Vec<u32> {
        let mut out = vec![0u32; dim];
        let Some(&col) = col_of.get(e) else {
            return out;
        };
        let mut v = vec![0u32; ncols];
        v[col] = 1;
        ideal.reduce_in_place(&mut v);
        for (c, &x) in v.iter().enumerate() {
            if x != 0 {
                out[position[&c]] = x;
            }
        }
        out
    };

    let basis_exponents: Vec<Exponents> = standard.iter().map(|&c| monos[c].clone()).collect();
    let mut mult = vec![0u32; dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod: Exponents = basis_exponents[i]
                .iter()
                .zip(&basis_exponents[j])
                .map(|(a, b)| a + b)
                .collect();
            let nf = normal_form(&prod);
            mult[(i * dim + j) * dim..(i * dim + j + 1) * dim].copy_from_slice(&nf);
        }
    }
    let var_elements = (0..nv)
        .map(|v| {
            let mut e = vec![0u32; nv];
            e[v] = 1;
            normal_form(&e)
        })
        .collect();
    let labels = basis_exponents
        .iter()
        .map(|e| monomial_label(e, &pres.variables))
        .collect();
    LocalAlgebra::from_structure(
        field,
        labels,
        basis_exponents,
        pres.variables.clone(),
        var_elements,
        mult,
    )
    .map(Arc::new)
}

/// `a ⊗_k b`, basis pairs `(i, j)` at index `i * dim(b) + j`.
pub fn tensor_algebras(a: &LocalAlgebra, b: &LocalAlgebra) -> Result<Arc<LocalAlgebra>, AlgebraError> {
    if a.field != b.field {
        return Err(AlgebraError::FieldMismatch(a.field, b.field));
    }
    let field = a.field;
    let (da, db) = (a.dim, b.dim);
    let dim = da * db;
    let mut mult = vec![0u32; dim * dim * dim];
    for i in 0..da {
        for k in 0..da {
            let ca = a.product_coeffs(i, k);
            for j in 0..db {
                for l in 0..db {
                    let cb = b.product_coeffs(j, l);
                    let base = ((i * db + j) * dim + k * db + l) * dim;
                    for (m, &x) in ca.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (nn, &y) in cb.iter().enumerate() {
                            if y != 0 {
                                mult[base + m * db + nn] = field.mul(x, y);
                            }
                        }
                    }
                }
            }
        }
    }

    let mut var_names = a.var_names.clone();
    for v in &b.var_names {
        let mut name = v.clone();
        let mut k = 1;
        while var_names.contains(&name) {
            name = format!("{v}_{k}");
            k += 1;
        }
        var_names.push(name);
    }
    let basis_exponents: Vec<Exponents> = (0..dim)
        .map(|idx| {
            let mut e = a.basis_exponents[idx / db].clone();
            e.extend_from_slice(&b.basis_exponents[idx % db]);
            e
        })
        .collect();
    let labels = basis_exponents
        .iter()
        .map(|e| monomial_label(e, &var_names))
        .collect();
    let mut var_elements = Vec::new();
    let b_unit = b.unit_vector();
    for g in &a.var_elements {
        var_elements.push(kron_vec(field, g, &b_unit));
    }
    let a_unit = a.unit_vector();
    for g in &b.var_elements {
        var_elements.push(kron_vec(field, &a_unit, g));
    }
    LocalAlgebra::from_structure(field, labels, basis_exponents, var_names, var_elements, mult)
        .map(Arc::new)
}

fn kron_vec(field: PrimeField, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for &a in x {
        for &b in y {
            out.push(field.mul(a, b));
        }
    }
    out
}

impl LocalAlgebra {
    /// Validates structure constants and assembles the algebra.
    ///
    /// The unit must be a basis element with exponent vector zero; the other
    /// basis elements must span a nilpotent ideal generated by the variables.
    pub fn from_structure(
        field: PrimeField,
        basis_labels: Vec<String>,
        basis_exponents: Vec<Exponents>,
        var_names: Vec<String>,
        var_elements: Vec<Vec<u32>>,
        mult: Vec<u32>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_labels.len();
        assert_eq!(mult.len(), dim * dim * dim);
        assert_eq!(basis_exponents.len(), dim);
        let unit_index = basis_exponents
            .iter()
            .position(|e| e.iter().all(|&x| x == 0))
            .ok_or_else(|| AlgebraError::NotLocal("no unit basis element".into()))?;
        let maxideal_basis: Vec<usize> = (0..dim).filter(|&i| i != unit_index).collect();
        let left_mult = (0..dim)
            .map(|i| {
                let mut m = Matrix::zeros(field, dim, dim);
                for j in 0..dim {
                    for l in 0..dim {
                        m.set(l, j, mult[(i * dim + j) * dim + l]);
                    }
                }
                m
            })
            .collect();
        let alg = LocalAlgebra {
            field,
            dim,
            basis_labels,
            basis_exponents,
            var_names,
            var_elements,
            mult,
            unit_index,
            maxideal_basis,
            left_mult,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        let f = self.field;
        let u = self.unit_index;
        for i in 0..d {
            let mut e = vec![0u32; d];
            e[i] = 1;
            if self.product_coeffs(u, i) != e.as_slice() || self.product_coeffs(i, u) != e.as_slice() {
                return Err(AlgebraError::BadMultiplication(format!(
                    "unital: 1*{} != {}",
                    self.basis_labels[i], self.basis_labels[i]
                )));
            }
        }
        for i in 0..d {
            for j in 0..i {
                if self.product_coeffs(i, j) != self.product_coeffs(j, i) {
                    return Err(AlgebraError::BadMultiplication(format!(
                        "commutative on ({}, {})",
                        self.basis_labels[i], self.basis_labels[j]
                    )));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_coeffs(i, j).to_vec();
                for k in 0..d {
                    // (e_i e_j) e_k versus e_i (e_j e_k)
                    let left = self.left_mult[k].mul_vec(&ij);
                    let jk = self.product_coeffs(j, k).to_vec();
                    let right = self.left_mult[i].mul_vec(&jk);
                    if left != right {
                        return Err(AlgebraError::BadMultiplication(format!(
                            "associative on ({}, {}, {})",
                            self.basis_labels[i], self.basis_labels[j], self.basis_labels[k]
                        )));
                    }
                }
            }
        }
        // m must be closed under products and nilpotent.
        for &i in &self.maxideal_basis {
            for &j in &self.maxideal_basis {
                if self.product_coeffs(i, j)[u] != 0 {
                    return Err(AlgebraError::NotLocal(format!(
                        "{} * {} has a unit component",
                        self.basis_labels[i], self.basis_labels[j]
                    )));
                }
            }
        }
        let m = self.maxideal();
        let mut power = m.clone();
        for _ in 0..=d {
            if power.dim() == 0 {
                break;
            }
            power = self.ideal_product(&power, &m);
        }
        if power.dim() != 0 {
            return Err(AlgebraError::NotLocal(
                "the span of the non-unit basis elements is not nilpotent".into(),
            ));
        }
        for g in &self.var_elements {
            if g.len() != d || g[u] != 0 {
                return Err(AlgebraError::NotLocal(
                    "a variable does not lie in the maximal ideal".into(),
                ));
            }
        }
        let var_ideal = Subspace::span(
            f,
            d,
            self.var_elements
                .iter()
                .flat_map(|g| (0..d).map(move |j| self.left_mult[j].mul_vec(g))),
        );
        if var_ideal.dim() != m.dim() {
            return Err(AlgebraError::NotLocal(
                "the variables do not generate the maximal ideal".into(),
            ));
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }
    pub fn basis_exponents(&self) -> &[Exponents] {
        &self.basis_exponents
    }
    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }
    /// Normal forms of the variables; they generate the maximal ideal.
    pub fn var_elements(&self) -> &[Vec<u32>] {
        &self.var_elements
    }
    pub fn unit_index(&self) -> usize {
        self.unit_index
    }
    pub fn maxideal_basis(&self) -> &[usize] {
        &self.maxideal_basis
    }

    /// Coefficients of `e_i e_j`.
    #[inline]
    pub fn product_coeffs(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.mult[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Matrix of multiplication by `e_i` on the basis.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    /// Matrix of multiplication by an arbitrary element.
    pub fn mult_matrix(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.left_mult[i]);
            }
        }
        m
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    f.axpy(&mut out, f.mul(x, y), self.product_coeffs(i, j));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self) -> Vec<u32> {
        self.basis_vector(self.unit_index)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        v[i] = 1;
        v
    }

    pub fn maxideal(&self) -> Subspace {
        Subspace::span(
            self.field,
            self.dim,
            self.maxideal_basis.iter().map(|&i| self.basis_vector(i)),
        )
    }

    fn ideal_product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        Subspace::span(
            self.field,
            self.dim,
            a.basis()
                .iter()
                .flat_map(|x| b.basis().iter().map(move |y| self.mul(x, y))),
        )
    }

    /// Dimensions of `m^0 = R, m, m^2, ...` up to the first zero power.
    pub fn loewy_dims(&self) -> Vec<usize> {
        let m = self.maxideal();
        let mut out = vec![self.dim];
        let mut power = m.clone();
        while power.dim() > 0 {
            out.push(power.dim());
            power = self.ideal_product(&power, &m);
        }
        out
    }

    /// Smallest `k` with `m^k = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.loewy_dims().len()
    }

    /// Basis of the socle `{r : m r = 0}`.
    pub fn socle(&self) -> Subspace {
        let d = self.dim;
        let stacked: Vec<Vec<u32>> = self
            .maxideal_basis
            .iter()
            .flat_map(|&i| (0..d).map(move |r| self.left_mult[i].row(r).to_vec()))
            .collect();
        if stacked.is_empty() {
            return Subspace::full(self.field, d);
        }
        let m = Matrix::from_row_vectors(self.field, d, &stacked);
        Subspace::span(self.field, d, m.kernel_vectors())
    }

    pub fn element_to_string(&self, a: &[u32]) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.basis_labels[i].clone()
                } else if self.basis_labels[i] == "1" {
                    c.to_string()
                } else {
                    format!("{c}*{}", self.basis_labels[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Normal form of a polynomial in this algebra's variables.
    pub fn eval_polynomial(&self, p: &Polynomial) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (e, c) in p.reduced_terms(f) {
            let mut term = self.unit_vector();
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = self.mul(&term, &self.var_elements[v]);
                }
            }
            f.axpy(&mut out, c, &term);
        }
        out
    }

    /// Whether the structure constants agree after permuting basis indices by
    /// `perm` (basis `i` of `self` corresponds to basis `perm[i]` of `other`).
    pub fn is_isomorphic_via(&self, other: &LocalAlgebra, perm: &[usize]) -> bool {
        if self.dim != other.dim || self.field != other.field || perm.len() != self.dim {
            return false;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.product_coeffs(i, j);
                let b = other.product_coeffs(perm[i], perm[j]);
                for l in 0..self.dim {
                    if a[l] != b[perm[l]] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalAlgebra({} , dim {}, basis [{}])",
            self.field,
            self.dim,
            self.basis_labels.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn alg(p: u64, vars: &[&str], rels: &[&str], n: u32) -> Arc<LocalAlgebra> {
        let pres = AlgebraPresentation::parse(PrimeField::new(p).unwrap(), vars, rels, n).unwrap();
        build_algebra(&pres).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let a = alg(2, &["x"], &["x^2"], 2);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis_labels(), &["1".to_string(), "x".to_string()]);
        let soc = a.socle();
        assert_eq!(soc.dim(), 1);
        assert_eq!(soc.basis()[0], vec![0, 1]);
    }

    #[test]
    fn field_has_dimension_one() {
        let k = alg(2, &[], &[], 1);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.socle().dim(), 1);
        assert!(k.maxideal_basis().is_empty());
    }

    #[test]
    fn square_zero_maximal_ideal() {
        let a = alg(2, &["x", "y"], &["x^2", "x*y", "y^2"], 2);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis_labels(), &["1", "x", "y"]);
        assert_eq!(a.socle().dim(), 2);
        assert_eq!(a.loewy_dims(), vec![3, 2]);
    }

    #[test]
    fn socle_is_an_ideal() {
        for a in [
            alg(2, &["x", "y"], &["x^2", "y^2"], 3),
            alg(3, &["x", "y"], &["x^2 - y^2", "x*y"], 3),
            alg(2, &["x"], &["x^4"], 4),
        ] {
            let soc = a.socle();
            for v in soc.basis() {
                for i in 0..a.dim() {
                    assert!(soc.contains(&a.left_mult(i).mul_vec(v)));
                }
            }
        }
    }

    #[test]
    fn non_monomial_relations_reduce() {
        // x*y = y^2 identifies the two degree-2 monomials
        let a = alg(3, &["x", "y"], &["x^2", "x*y - y^2", "y^3"], 3);
        assert_eq!(a.dim(), 4);
        let y = &a.var_elements()[1];
        let x = &a.var_elements()[0];
        assert_eq!(a.mul(x, y), a.mul(y, y));
    }

    #[test]
    fn variable_equal_to_higher_monomial() {
        // x = y^2 so the algebra is F_2[y]/(y^4)
        let a = alg(2, &["x", "y"], &["x - y^2", "y^4"], 4);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.nilpotency_index(), 4);
    }

    #[test]
    fn rejects_constant_terms_and_low_bounds() {
        let pres = AlgebraPresentation::parse(f2(), &["x"], &["x^2 + 1"], 2).unwrap();
        assert!(matches!(
            build_algebra(&pres),
            Err(AlgebraError::ConstantTerm { index: 0 })
        ));
        let pres = AlgebraPresentation::parse(f2(), &["x"], &["x^3"], 2).unwrap();
        assert!(matches!(
            build_algebra(&pres),
            Err(AlgebraError::NilpotencyBoundViolated { .. })
        ));
        let pres = AlgebraPresentation::parse(f2(), &["x"], &["x^2"], 0).unwrap();
        assert_eq!(build_algebra(&pres).unwrap_err(), AlgebraError::BadNilpotencyBound);
    }

    #[test]
    fn all_quadrics_give_embedding_dimension_plus_one() {
        let a = alg(
            2,
            &["x", "y", "z"],
            &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"],
            2,
        );
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn tensor_products() {
        let a = alg(2, &["x"], &["x^2"], 2);
        let b = alg(2, &["u", "v"], &["u^2", "u*v", "v^2"], 2);
        let k = alg(2, &[], &[], 1);

        let ak = tensor_algebras(&a, &k).unwrap();
        assert_eq!(ak.dim(), 2);
        assert!(a.is_isomorphic_via(&ak, &[0, 1]));

        let ab = tensor_algebras(&a, &b).unwrap();
        assert_eq!(ab.dim(), 6);
        // m^3 = 0 but m^2 != 0
        assert_eq!(ab.nilpotency_index(), 3);

        let ba = tensor_algebras(&b, &a).unwrap();
        let perm: Vec<usize> = (0..6).map(|idx| (idx % 3) * 2 + idx / 3).collect();
        assert!(ab.is_isomorphic_via(&ba, &perm));
    }

    #[test]
    fn tensor_renames_clashing_variables() {
        let a = alg(2, &["x", "y"], &["x^2", "x*y", "y^2"], 2);
        let aa = tensor_algebras(&a, &a).unwrap();
        assert_eq!(aa.var_names(), &["x", "y", "x_1", "y_1"]);
        assert_eq!(aa.dim(), 9);
    }

    #[test]
    fn tensor_rejects_field_mismatch() {
        let a = alg(2, &["x"], &["x^2"], 2);
        let b = alg(3, &["x"], &["x^2"], 2);
        assert!(matches!(
            tensor_algebras(&a, &b),
            Err(AlgebraError::FieldMismatch(..))
        ));
    }
}
