//! Catalecticant linear algebra over an exact field.
//!
//! Ranks of multiplication/contraction maps decide every condition in this
//! crate, so all elimination is exact: fraction-free (Bareiss) elimination
//! over the integers after clearing denominators for Q, plain Gaussian
//! elimination for F_p. Reduced echelon forms over the field back kernel and
//! quotient computations.

use crate::field::{Field, FieldElem};
use crate::poly::{monomial_basis, Monomial, Poly, Side};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ApolarityError {
    DegreeOutOfRange,
    ZeroPolynomial,
    NotArtinian,
    EmptyIdeal,
}

impl fmt::Display for ApolarityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApolarityError::DegreeOutOfRange => write!(f, "degree out of range"),
            ApolarityError::ZeroPolynomial => write!(f, "zero polynomial"),
            ApolarityError::NotArtinian => write!(f, "quotient is not Artinian at the given bound"),
            ApolarityError::EmptyIdeal => write!(f, "ideal needs at least one nonzero generator"),
        }
    }
}

impl std::error::Error for ApolarityError {}

/// Dense matrix of field elements with exact rank and echelon forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    a: Vec<FieldElem>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            a: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<FieldElem>>) -> Self {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            a.extend(r);
        }
        ExactMatrix {
            rows: n,
            cols,
            field,
            a,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.a[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<FieldElem> {
        self.a[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Rank by exact elimination: Bareiss over cleared-denominator integers
    /// for Q, modular elimination for F_p.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            Field::Q => self.rank_bareiss(),
            Field::Fp(_) => self.rref().rank(),
        }
    }

    fn rank_bareiss(&self) -> usize {
        // clear denominators per row; row scaling preserves rank
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut lcm = BigInt::one();
                for c in 0..self.cols {
                    if let FieldElem::Q(x) = self.get(r, c) {
                        lcm = lcm.lcm(x.denom());
                    }
                }
                (0..self.cols)
                    .map(|c| match self.get(r, c) {
                        FieldElem::Q(x) => x.numer() * (&lcm / x.denom()),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form over the field.
    pub fn rref(&self) -> Echelon {
        let k = self.field;
        let mut rows: Vec<Vec<FieldElem>> = (0..self.rows).map(|r| self.row(r)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (rank..rows.len()).find(|&r| !k.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = k.inv(&rows[rank][col]).unwrap();
            for x in rows[rank][col..].iter_mut() {
                *x = k.mul(x, &inv);
            }
            for r in 0..rows.len() {
                if r != rank && !k.is_zero(&rows[r][col]) {
                    let f = rows[r][col].clone();
                    for c in col..self.cols {
                        let t = k.mul(&f, &rows[rank][c]);
                        rows[r][c] = k.sub(&rows[r][c], &t);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Echelon {
            field: k,
            cols: self.cols,
            pivots,
            rows,
        }
    }

    /// Basis of { x : M x = 0 }, one vector per non-pivot column.
    pub fn null_space(&self) -> Vec<Vec<FieldElem>> {
        let k = self.field;
        let ech = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![k.zero(); self.cols];
            x[free] = k.one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                x[p] = k.neg(&ech.rows[i][free]);
            }
            basis.push(x);
        }
        basis
    }

    /// Basis of { v : v M = 0 } (combinations of rows summing to zero).
    pub fn left_kernel(&self) -> Vec<Vec<FieldElem>> {
        self.transpose().null_space()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.field.fmt_elem(self.get(r, c)))
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in &cells {
            for (i, s) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", s, width = width)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row echelon data: pivot columns and reduced rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<FieldElem>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` modulo the row space (eliminates all pivot coordinates).
    pub fn reduce(&self, v: &mut [FieldElem]) {
        let k = self.field;
        for (i, &p) in self.pivots.iter().enumerate() {
            if !k.is_zero(&v[p]) {
                let f = v[p].clone();
                for (vc, rc) in v[p..].iter_mut().zip(&self.rows[i][p..]) {
                    let t = k.mul(&f, rc);
                    *vc = k.sub(vc, &t);
                }
            }
        }
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut in_piv = vec![false; self.cols];
        for &p in &self.pivots {
            in_piv[p] = true;
        }
        (0..self.cols).filter(|&c| !in_piv[c]).collect()
    }

    /// Coordinates of `v` in the quotient by the row space: reduce, then read
    /// off the non-pivot coordinates.
    pub fn quotient_coords(&self, mut v: Vec<FieldElem>) -> Vec<FieldElem> {
        self.reduce(&mut v);
        self.non_pivots().iter().map(|&c| v[c].clone()).collect()
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }
}

/// Rows = coefficient vectors of `polys` over `monomial_basis(deg)`.
pub fn polys_to_matrix(field: Field, deg: u32, polys: &[Poly]) -> ExactMatrix {
    let cols = monomial_basis(deg).len();
    let rows = polys.iter().map(|p| p.coeff_vector(deg)).collect();
    ExactMatrix::from_rows(field, cols, rows)
}

fn rows_to_polys(field: Field, side: Side, deg: u32, rows: &[Vec<FieldElem>]) -> Vec<Poly> {
    rows.iter()
        .map(|r| Poly::from_coeff_vector(field, side, deg, r).expect("echelon rows homogeneous"))
        .collect()
}

/// Matrix of the contraction map R_d -> S_{j-d}, h -> h ∘ F. Rows are indexed
/// by `monomial_basis(d)` in R, columns by `monomial_basis(j-d)` in S; the
/// entry is the coefficient of the column monomial in (row monomial) ∘ F.
pub fn catalecticant(f: &Poly, d: u32) -> Result<ExactMatrix, ApolarityError> {
    let j = f.degree().ok_or(ApolarityError::ZeroPolynomial)?;
    if d > j {
        return Err(ApolarityError::DegreeOutOfRange);
    }
    let field = f.field();
    let row_basis = monomial_basis(d);
    let col_basis = monomial_basis(j - d);
    let col_index = |m: &Monomial| col_basis.iter().position(|b| b == m).unwrap();
    let mut mat = ExactMatrix::zeros(field, row_basis.len(), col_basis.len());
    for (r, mr) in row_basis.iter().enumerate() {
        for (mf, c) in f.terms() {
            if let Some(m) = mf.checked_div(mr) {
                mat.set(r, col_index(&m), c.clone());
            }
        }
    }
    Ok(mat)
}

/// Hilbert function of A_F = R/Ann(F): h_d = rank of the degree-d
/// catalecticant, d = 0..deg F.
pub fn hilbert_function(f: &Poly) -> Result<Vec<usize>, ApolarityError> {
    let j = f.degree().ok_or(ApolarityError::ZeroPolynomial)?;
    (0..=j).map(|d| Ok(catalecticant(f, d)?.rank())).collect()
}

/// Echelonized basis of Ann(F)_d, the kernel of the degree-d catalecticant.
/// Degree deg F + 1 returns all of R_{deg F + 1}.
pub fn ann_graded_basis(f: &Poly, d: u32) -> Result<Vec<Poly>, ApolarityError> {
    let j = f.degree().ok_or(ApolarityError::ZeroPolynomial)?;
    let field = f.field();
    if d == j + 1 {
        return Ok(monomial_basis(d)
            .into_iter()
            .map(|m| Poly::monomial(field, Side::Ring, m))
            .collect());
    }
    let cat = catalecticant(f, d)?;
    let kernel = cat.left_kernel();
    let ech = ExactMatrix::from_rows(field, monomial_basis(d).len(), kernel).rref();
    Ok(rows_to_polys(field, Side::Ring, d, &ech.rows))
}

/// Finitely generated homogeneous ideal of R, with a top degree bound for
/// graded computations.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    gens: Vec<Poly>,
    top_degree: u32,
}

impl GradedIdeal {
    pub fn new(gens: Vec<Poly>, top_degree: u32) -> Result<Self, ApolarityError> {
        if gens.is_empty() || gens.iter().any(|g| g.is_zero()) {
            return Err(ApolarityError::EmptyIdeal);
        }
        assert!(
            gens.iter().all(|g| g.side() == Side::Ring),
            "ideal generators live in R"
        );
        Ok(GradedIdeal { gens, top_degree })
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn field(&self) -> Field {
        self.gens[0].field()
    }

    /// Echelon form of the degree-d graded piece, from the naive spanning set
    /// { m * g : g generator, deg m + deg g = d }.
    pub fn piece(&self, d: u32) -> Echelon {
        assert!(d <= self.top_degree, "degree beyond the ideal's bound");
        let field = self.field();
        let mut products = Vec::new();
        for g in &self.gens {
            let dg = g.degree().unwrap();
            if dg > d {
                continue;
            }
            for m in monomial_basis(d - dg) {
                products.push(g.mul(&Poly::monomial(field, Side::Ring, m)));
            }
        }
        polys_to_matrix(field, d, &products).rref()
    }

    pub fn piece_dim(&self, d: u32) -> usize {
        self.piece(d).rank()
    }
}

/// Echelonized basis of the degree-d piece of the ideal.
pub fn ideal_graded_basis(ideal: &GradedIdeal, d: u32) -> Vec<Poly> {
    let ech = ideal.piece(d);
    rows_to_polys(ideal.field(), Side::Ring, d, &ech.rows)
}

/// Hilbert function of A = R/I through degree j: dim R_d - dim I_d.
pub fn quotient_hilbert(ideal: &GradedIdeal, j: u32) -> Vec<usize> {
    (0..=j)
        .map(|d| monomial_basis(d).len() - ideal.piece_dim(d))
        .collect()
}

/// Socle dimensions of A = R/I per degree 0..j: the kernel of the stacked
/// multiplications by x, y, z into A_{d+1}, modulo I_d. Fails loudly if
/// A_{j+1} != 0.
pub fn socle_dimension(ideal: &GradedIdeal, j: u32) -> Result<Vec<usize>, ApolarityError> {
    let field = ideal.field();
    let top = ideal.piece(j + 1);
    if top.rank() < monomial_basis(j + 1).len() {
        return Err(ApolarityError::NotArtinian);
    }
    let vars = [
        Monomial::new(1, 0, 0),
        Monomial::new(0, 1, 0),
        Monomial::new(0, 0, 1),
    ];
    let mut out = Vec::with_capacity(j as usize + 1);
    for d in 0..=j {
        let next = ideal.piece(d + 1);
        let quot_cols = next.non_pivots().len();
        let basis_d = monomial_basis(d);
        let mut rows = Vec::with_capacity(basis_d.len());
        for m in &basis_d {
            let mut row = Vec::with_capacity(3 * quot_cols);
            for v in &vars {
                let prod = Poly::monomial(field, Side::Ring, m.mul(v));
                row.extend(next.quotient_coords(prod.coeff_vector(d + 1)));
            }
            rows.push(row);
        }
        let mat = ExactMatrix::from_rows(field, 3 * quot_cols, rows);
        let ker_dim = basis_d.len() - mat.rank();
        out.push(ker_dim - ideal.piece_dim(d));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn q() -> Field {
        Field::Q
    }

    fn dual(s: &str) -> Poly {
        parse_poly(s, Side::Dual, q()).unwrap()
    }

    fn ring(s: &str) -> Poly {
        parse_poly(s, Side::Ring, q()).unwrap()
    }

    fn ideal(gens: &[&str], top: u32) -> GradedIdeal {
        GradedIdeal::new(gens.iter().map(|s| ring(s)).collect(), top).unwrap()
    }

    #[test]
    fn catalecticant_ranks() {
        assert_eq!(catalecticant(&dual("X^5"), 1).unwrap().rank(), 1);
        assert_eq!(catalecticant(&dual("X^2YZ"), 2).unwrap().rank(), 4);
        assert_eq!(catalecticant(&dual("X^3+Y^3+Z^3"), 2).unwrap().rank(), 3);
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(hilbert_function(&dual("X^5")).unwrap(), vec![1; 6]);
        assert_eq!(
            hilbert_function(&dual("X^2YZ")).unwrap(),
            vec![1, 3, 4, 3, 1]
        );
        assert_eq!(
            hilbert_function(&dual("X^6+Y^6+Z^6")).unwrap(),
            vec![1, 3, 3, 3, 3, 3, 1]
        );
    }

    #[test]
    fn ann_pieces_of_fermat_cubic() {
        let f = dual("X^3+Y^3+Z^3");
        let a2 = ann_graded_basis(&f, 2).unwrap();
        let expect: Vec<Poly> = ["yz", "xz", "xy"].iter().map(|s| ring(s)).collect();
        assert_eq!(a2, expect);
        // degree-3 piece: multiples of the quadrics plus x^3-y^3, x^3-z^3
        let a3 = ann_graded_basis(&f, 3).unwrap();
        assert_eq!(a3.len(), 9);
        let mat = polys_to_matrix(q(), 3, &a3).rref();
        for g in ["x^3-y^3", "x^3-z^3", "xyz", "x^2y", "yz^2"] {
            assert!(mat.contains(&ring(g).coeff_vector(3)), "{} not in Ann_3", g);
        }
        assert!(!mat.contains(&ring("x^3").coeff_vector(3)));
    }

    #[test]
    fn ann_pieces_simple() {
        let a = ann_graded_basis(&dual("X^6"), 1).unwrap();
        assert_eq!(a, vec![ring("z"), ring("y")]);
        let b = ann_graded_basis(&dual("XYZ"), 2).unwrap();
        assert_eq!(b, vec![ring("z^2"), ring("y^2"), ring("x^2")]);
    }

    #[test]
    fn ann_top_degree_is_everything() {
        let f = dual("X^2");
        let a = ann_graded_basis(&f, 3).unwrap();
        assert_eq!(a.len(), monomial_basis(3).len());
    }

    #[test]
    fn ideal_pieces() {
        let i = ideal(&["x"], 4);
        let b = ideal_graded_basis(&i, 2);
        assert_eq!(b, vec![ring("xz"), ring("xy"), ring("x^2")]);
        let sq = ideal(&["x^2", "y^2", "z^2"], 4);
        assert_eq!(ideal_graded_basis(&sq, 2).len(), 3);
        assert_eq!(quotient_hilbert(&sq, 3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn quotient_hilbert_maximal_ideal() {
        let i = ideal(&["x", "y", "z"], 6);
        assert_eq!(quotient_hilbert(&i, 5), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn socle_of_monomial_ci() {
        let i = ideal(&["x^2", "y^2", "z^2"], 5);
        assert_eq!(socle_dimension(&i, 3).unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn socle_of_fat_point() {
        let i = ideal(&["x^2", "xy", "xz", "y^2", "yz", "z^2"], 3);
        assert_eq!(socle_dimension(&i, 1).unwrap(), vec![0, 3]);
    }

    #[test]
    fn not_artinian_detected() {
        let i = ideal(&["x^2", "y^2"], 5);
        assert_eq!(socle_dimension(&i, 2), Err(ApolarityError::NotArtinian));
    }

    /// Annihilator generators of X^{j-1}Z + X^{j-2}Y^2 at j = 6, checked
    /// against the dual-side Hilbert function as the oracle.
    #[test]
    fn ideal_path_agrees_with_catalecticant_oracle() {
        let f = dual("X^5Z+X^4Y^2");
        let i = ideal(&["xz-y^2", "yz", "z^2", "x^5y", "x^6"], 7);
        assert_eq!(quotient_hilbert(&i, 6), hilbert_function(&f).unwrap());
        assert_eq!(quotient_hilbert(&i, 6), vec![1, 3, 3, 3, 3, 3, 1]);
        assert_eq!(socle_dimension(&i, 6).unwrap(), vec![0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn rank_matches_rref() {
        let f = dual("X^4+X^2Z^2+XY^3");
        for d in 0..=4 {
            let m = catalecticant(&f, d).unwrap();
            assert_eq!(m.rank(), m.rref().rank());
        }
    }
}
