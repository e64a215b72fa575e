//! Rank matrices, JDT matrices, Jordan degree types, Lefschetz detection,
//! part classification, and an independent Jordan-basis oracle.
//!
//! Two computation paths coexist on purpose: the rank-matrix path derives the
//! JDT from catalecticant ranks of the contracted duals, while the oracle
//! builds an explicit graded Jordan basis string by string and certifies it.
//! Property tests hold them against each other.

use crate::apolarity::{
    hilbert_function, polys_to_matrix, ApolarityError, Echelon, ExactMatrix, GradedIdeal,
};
use crate::combinatorics::conjugate;
use crate::field::{Field, FieldElem};
use crate::poly::{contract, monomial_basis, LinearForm, Poly, Side};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JordanError {
    ZeroPolynomial,
    NotArtinian,
    NegativeEntry { u: usize, v: usize },
    BasisVerificationFailed,
    UnclassifiablePart { p: usize, nu: usize },
}

impl fmt::Display for JordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanError::ZeroPolynomial => write!(f, "zero polynomial"),
            JordanError::NotArtinian => write!(f, "quotient is not Artinian at the given bound"),
            JordanError::NegativeEntry { u, v } => write!(
                f,
                "JDT matrix entry ({},{}) is negative; input is not a rank matrix",
                u, v
            ),
            JordanError::BasisVerificationFailed => {
                write!(f, "Jordan basis construction failed its full-rank check")
            }
            JordanError::UnclassifiablePart { p, nu } => {
                write!(f, "part {}_{} fits no category", p, nu)
            }
        }
    }
}

impl std::error::Error for JordanError {}

impl From<ApolarityError> for JordanError {
    fn from(e: ApolarityError) -> Self {
        match e {
            ApolarityError::NotArtinian => JordanError::NotArtinian,
            _ => JordanError::ZeroPolynomial,
        }
    }
}

/// Upper-triangular matrix of ranks M_{u,v} = rk(m_{l^{v-u}}: A_u -> A_v).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RankMatrix {
    m: Vec<Vec<usize>>,
}

impl RankMatrix {
    pub fn from_rows(m: Vec<Vec<usize>>) -> Self {
        let n = m.len();
        assert!(m.iter().all(|r| r.len() == n));
        RankMatrix { m }
    }

    pub fn zeros(size: usize) -> Self {
        RankMatrix {
            m: vec![vec![0; size]; size],
        }
    }

    /// Socle degree j; the matrix is (j+1) x (j+1).
    pub fn socle_degree(&self) -> usize {
        self.m.len() - 1
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        self.m[u][v]
    }

    pub fn set(&mut self, u: usize, v: usize, x: usize) {
        self.m[u][v] = x;
    }

    /// Main diagonal: the Hilbert function of A.
    pub fn hilbert(&self) -> Vec<usize> {
        (0..self.size()).map(|u| self.m[u][u]).collect()
    }

    /// Diagonal a entries (M_{u,u+a}, u = 0..j-a).
    pub fn diagonal(&self, a: usize) -> Vec<usize> {
        (0..self.size() - a).map(|u| self.m[u][u + a]).collect()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.m
    }

    pub fn flattened(&self) -> Vec<usize> {
        self.m.iter().flatten().copied().collect()
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_grid(f, &self.m)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JdtMatrix {
    m: Vec<Vec<usize>>,
}

impl JdtMatrix {
    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        self.m[u][v]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.m
    }
}

impl fmt::Display for JdtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_grid(f, &self.m)
    }
}

fn fmt_grid(f: &mut fmt::Formatter<'_>, m: &[Vec<usize>]) -> fmt::Result {
    let width = m
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    for row in m {
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:>width$}", x, width = width)?;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// Jordan degree type: a multiset of (length p, initial degree nu) pairs,
/// canonically sorted by (nu ascending, p descending).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Jdt {
    parts: Vec<(usize, usize)>,
}

impl Jdt {
    pub fn new(mut parts: Vec<(usize, usize)>) -> Self {
        assert!(parts.iter().all(|&(p, _)| p >= 1), "parts have length >= 1");
        parts.sort_by_key(|&(p, nu)| (nu, std::cmp::Reverse(p)));
        Jdt { parts }
    }

    pub fn empty() -> Self {
        Jdt { parts: Vec::new() }
    }

    /// Parts as (length, initial degree), canonical order.
    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(|&(p, _)| p).sum()
    }

    /// T_i = number of parts alive in degree i.
    pub fn occupancy(&self, len: usize) -> Vec<usize> {
        let mut t = vec![0; len];
        for &(p, nu) in &self.parts {
            for slot in &mut t[nu.min(len)..(nu + p).min(len)] {
                *slot += 1;
            }
        }
        t
    }

    pub fn multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &part in &self.parts {
            *m.entry(part).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Jdt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_jdt(self))
    }
}

/// Weakly decreasing part lengths: the Jordan type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanPartition(pub Vec<usize>);

impl fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// Rank matrix of (R/Ann(F), l): diagonal a is the Hilbert function of the
/// contracted dual l^a ∘ F, zero-padded once the contraction dies.
pub fn rank_matrix(f: &Poly, ell: &LinearForm) -> Result<RankMatrix, JordanError> {
    let j = f.degree().ok_or(JordanError::ZeroPolynomial)? as usize;
    let mut m = RankMatrix::zeros(j + 1);
    let ell_poly = ell.as_poly();
    let mut g = f.clone();
    for a in 0..=j {
        if a > 0 {
            g = contract(&ell_poly, &g);
        }
        if g.is_zero() {
            break;
        }
        let hf = hilbert_function(&g).map_err(|_| JordanError::ZeroPolynomial)?;
        for (u, &h) in hf.iter().enumerate() {
            m.set(u, u + a, h);
        }
    }
    Ok(m)
}

/// Rank matrix of (R/I, l) computed on the ideal side:
/// M_{u,v} = dim(l^{v-u} R_u + I_v) - dim I_v.
pub fn rank_matrix_from_ideal(
    ideal: &GradedIdeal,
    ell: &LinearForm,
    j: usize,
) -> Result<RankMatrix, JordanError> {
    let field = ideal.field();
    let top = ideal.piece(j as u32 + 1);
    if top.rank() < monomial_basis(j as u32 + 1).len() {
        return Err(JordanError::NotArtinian);
    }
    let pieces: Vec<Echelon> = (0..=j as u32).map(|d| ideal.piece(d)).collect();
    let mut ell_pows = Vec::with_capacity(j + 1);
    let mut acc = Poly::constant(field, Side::Ring, field.one());
    for _ in 0..=j {
        ell_pows.push(acc.clone());
        acc = acc.mul(&ell.as_poly());
    }
    let mut m = RankMatrix::zeros(j + 1);
    for u in 0..=j {
        for v in u..=j {
            let dim_iv = pieces[v].rank();
            let cols = monomial_basis(v as u32).len();
            let mut rows: Vec<Vec<FieldElem>> = Vec::new();
            for mono in monomial_basis(u as u32) {
                let prod = ell_pows[v - u].mul(&Poly::monomial(field, Side::Ring, mono));
                rows.push(prod.coeff_vector(v as u32));
            }
            rows.extend(pieces[v].rows.iter().cloned());
            let rank = ExactMatrix::from_rows(field, cols, rows).rank();
            m.set(u, v, rank - dim_iv);
        }
    }
    Ok(m)
}

/// The mixed second difference of the rank matrix (out-of-range entries read
/// as zero). A negative entry means the input violates the rank-matrix
/// conditions and is rejected, never clamped.
pub fn jdt_matrix(m: &RankMatrix) -> Result<JdtMatrix, JordanError> {
    let n = m.size();
    let at = |u: i64, v: i64| -> i64 {
        if u < 0 || v < 0 || u as usize >= n || v as usize >= n {
            0
        } else {
            m.get(u as usize, v as usize) as i64
        }
    };
    let mut out = vec![vec![0usize; n]; n];
    for u in 0..n {
        for v in u..n {
            let (ui, vi) = (u as i64, v as i64);
            let x = at(ui, vi) + at(ui - 1, vi + 1) - at(ui - 1, vi) - at(ui, vi + 1);
            if x < 0 {
                return Err(JordanError::NegativeEntry { u, v });
            }
            out[u][v] = x as usize;
        }
    }
    Ok(JdtMatrix { m: out })
}

/// Entry J_{u,v} = m > 0 contributes m parts of length v-u+1 starting in
/// degree u.
pub fn jdt_from_matrix(j: &JdtMatrix) -> Jdt {
    let mut parts = Vec::new();
    for u in 0..j.size() {
        for v in u..j.size() {
            for _ in 0..j.get(u, v) {
                parts.push((v - u + 1, u));
            }
        }
    }
    Jdt::new(parts)
}

/// Inverse of the JDT-matrix extraction: M_{u,v} counts the strings alive in
/// degree u whose life reaches degree v.
pub fn rank_matrix_from_jdt(jdt: &Jdt, j: usize) -> RankMatrix {
    let mut m = RankMatrix::zeros(j + 1);
    for u in 0..=j {
        for v in u..=j {
            m.set(
                u,
                v,
                jdt.parts()
                    .iter()
                    .filter(|&&(p, nu)| nu <= u && nu + p > v)
                    .count(),
            );
        }
    }
    m
}

/// Convenience: rank matrix -> JDT in one step.
pub fn jdt_of_rank_matrix(m: &RankMatrix) -> Result<Jdt, JordanError> {
    Ok(jdt_from_matrix(&jdt_matrix(m)?))
}

pub fn jordan_type(jdt: &Jdt) -> JordanPartition {
    let mut v: Vec<usize> = jdt.parts().iter().map(|&(p, _)| p).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    JordanPartition(v)
}

/// Weak Lefschetz: the number of parts equals the Sperner number of T.
pub fn is_weak_lefschetz(jdt: &Jdt, t: &[usize]) -> bool {
    jdt.num_parts() == t.iter().copied().max().unwrap_or(0)
}

/// Strong Lefschetz: the Jordan type is the conjugate partition of T.
pub fn is_strong_lefschetz(jdt: &Jdt, t: &[usize]) -> bool {
    let mut tv: Vec<usize> = t.iter().copied().filter(|&x| x > 0).collect();
    tv.sort_unstable_by(|a, b| b.cmp(a));
    jordan_type(jdt).0 == conjugate(&tv)
}

/// Gorenstein symmetry of the JDT: eta(p, nu) = eta(p, j+1-nu-p).
pub fn check_symmetry(jdt: &Jdt, j: usize) -> bool {
    let mult = jdt.multiplicities();
    mult.iter().all(|(&(p, nu), &m)| {
        let partner = (j + 1).checked_sub(nu + p);
        match partner {
            Some(nu2) => mult.get(&(p, nu2)).copied().unwrap_or(0) == m,
            None => false,
        }
    })
}

/// T(In S): the i-th entry counts parts with initial degree i.
pub fn initial_hilbert(jdt: &Jdt) -> Vec<usize> {
    let len = jdt.parts().iter().map(|&(_, nu)| nu + 1).max().unwrap_or(1);
    let mut t = vec![0; len];
    for &(_, nu) in jdt.parts() {
        t[nu] += 1;
    }
    t
}

// ---------------------------------------------------------------------------
// Jordan oracle: explicit graded Jordan basis with a full-rank certificate.
// ---------------------------------------------------------------------------

pub enum AlgebraSource<'a> {
    Dual(&'a Poly),
    Ideal(&'a GradedIdeal, usize),
}

/// A concrete vector-space model of A = oplus A_d together with the action of
/// the linear form, suitable for building strings degree by degree.
struct GradedModel {
    field: Field,
    j: usize,
    /// Echelonized basis of A_d in its ambient coordinates.
    bases: Vec<Vec<Vec<FieldElem>>>,
    /// Data to apply multiplication by ell from degree d to d+1.
    action: ModelAction,
}

enum ModelAction {
    /// A_d modeled as R_d ∘ F inside S_{j-d}; ell acts by contraction.
    Dual { ell: Poly },
    /// A_d modeled as reduced normal forms in R_d; ell acts by multiplication
    /// followed by reduction mod I_{d+1}.
    Ideal { ell: Poly, pieces: Vec<Echelon> },
}

impl GradedModel {
    fn build(src: &AlgebraSource, ell: &LinearForm) -> Result<Self, JordanError> {
        match src {
            AlgebraSource::Dual(f) => {
                let j = f.degree().ok_or(JordanError::ZeroPolynomial)? as usize;
                let field = f.field();
                let mut bases = Vec::with_capacity(j + 1);
                for d in 0..=j as u32 {
                    let images: Vec<Poly> = monomial_basis(d)
                        .into_iter()
                        .map(|m| contract(&Poly::monomial(field, Side::Ring, m), f))
                        .collect();
                    let ech = polys_to_matrix(field, j as u32 - d, &images).rref();
                    bases.push(ech.rows);
                }
                Ok(GradedModel {
                    field,
                    j,
                    bases,
                    action: ModelAction::Dual { ell: ell.as_poly() },
                })
            }
            AlgebraSource::Ideal(ideal, j) => {
                let field = ideal.field();
                let top = ideal.piece(*j as u32 + 1);
                if top.rank() < monomial_basis(*j as u32 + 1).len() {
                    return Err(JordanError::NotArtinian);
                }
                let pieces: Vec<Echelon> = (0..=*j as u32 + 1).map(|d| ideal.piece(d)).collect();
                let mut bases = Vec::with_capacity(j + 1);
                for d in 0..=*j {
                    // unit vectors on the non-pivot monomials of I_d
                    let cols = monomial_basis(d as u32).len();
                    let basis: Vec<Vec<FieldElem>> = pieces[d]
                        .non_pivots()
                        .into_iter()
                        .map(|c| {
                            let mut v = vec![field.zero(); cols];
                            v[c] = field.one();
                            v
                        })
                        .collect();
                    bases.push(basis);
                }
                Ok(GradedModel {
                    field,
                    j: *j,
                    bases,
                    action: ModelAction::Ideal {
                        ell: ell.as_poly(),
                        pieces,
                    },
                })
            }
        }
    }

    fn dim(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    fn ambient_len(&self, d: usize) -> usize {
        match &self.action {
            ModelAction::Dual { .. } => monomial_basis((self.j - d) as u32).len(),
            ModelAction::Ideal { .. } => monomial_basis(d as u32).len(),
        }
    }

    /// Image of a degree-d vector under multiplication by ell, in degree d+1
    /// coordinates; zero vector past the socle.
    fn apply_ell(&self, d: usize, v: &[FieldElem]) -> Vec<FieldElem> {
        match &self.action {
            ModelAction::Dual { ell } => {
                if d >= self.j {
                    return Vec::new();
                }
                let p = Poly::from_coeff_vector(self.field, Side::Dual, (self.j - d) as u32, v)
                    .expect("model vectors are homogeneous");
                contract(ell, &p).coeff_vector((self.j - d - 1) as u32)
            }
            ModelAction::Ideal { ell, pieces } => {
                let p = Poly::from_coeff_vector(self.field, Side::Ring, d as u32, v)
                    .expect("model vectors are homogeneous");
                let mut w = ell.mul(&p).coeff_vector(d as u32 + 1);
                pieces[d + 1].reduce(&mut w);
                if d >= self.j {
                    return Vec::new();
                }
                w
            }
        }
    }
}

fn is_zero_vec(field: Field, v: &[FieldElem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

struct OracleString {
    start: usize,
    vectors: Vec<Vec<FieldElem>>,
    open: bool,
}

/// Construct an explicit graded Jordan basis: extend string tops by ell,
/// repair any linear dependency among the extended tops by replacing the
/// youngest participating string, open new strings on an echelon complement,
/// and finally certify that the union of all string vectors is a basis of
/// every graded piece.
pub fn jordan_oracle(src: &AlgebraSource, ell: &LinearForm) -> Result<Jdt, JordanError> {
    let model = GradedModel::build(src, ell)?;
    let field = model.field;
    let mut strings: Vec<OracleString> = Vec::new();

    for d in 0..=model.j {
        // extend open strings
        let mut open_idx: Vec<usize> = Vec::new();
        let mut images: Vec<Vec<FieldElem>> = Vec::new();
        for (i, s) in strings.iter_mut().enumerate() {
            if !s.open {
                continue;
            }
            let img = model.apply_ell(d - 1, s.vectors.last().unwrap());
            if is_zero_vec(field, &img) {
                s.open = false;
            } else {
                open_idx.push(i);
                images.push(img);
            }
        }

        // repair dependencies among the images
        loop {
            if images.is_empty() {
                break;
            }
            let mat = ExactMatrix::from_rows(field, model.ambient_len(d), images.clone());
            let kernel = mat.left_kernel();
            let Some(dep) = kernel.into_iter().next() else {
                break;
            };
            // youngest participating string absorbs the relation and closes
            let (slot, _) = dep
                .iter()
                .enumerate()
                .filter(|(_, c)| !field.is_zero(c))
                .max_by_key(|&(t, _)| (strings[open_idx[t]].start, open_idx[t]))
                .expect("kernel vector is nonzero");
            let target = open_idx[slot];
            let nu_star = strings[target].start;
            let mut replacement: Vec<Vec<FieldElem>> = Vec::new();
            for e in nu_star..d {
                let mut acc = vec![field.zero(); model.ambient_len(e)];
                for (t, c) in dep.iter().enumerate() {
                    if field.is_zero(c) {
                        continue;
                    }
                    let s = &strings[open_idx[t]];
                    if s.start > e {
                        continue;
                    }
                    for (k, x) in s.vectors[e - s.start].iter().enumerate() {
                        let add = field.mul(c, x);
                        acc[k] = field.add(&acc[k], &add);
                    }
                }
                replacement.push(acc);
            }
            strings[target].vectors = replacement;
            strings[target].open = false;
            open_idx.remove(slot);
            images.remove(slot);
        }

        // surviving extensions become the new tops
        for (t, img) in open_idx.iter().zip(images.iter()) {
            strings[*t].vectors.push(img.clone());
        }

        // open new strings on an echelon complement of the images inside A_d
        let mut span = ExactMatrix::from_rows(field, model.ambient_len(d), images.clone()).rref();
        for e in &model.bases[d] {
            let mut w = e.clone();
            span.reduce(&mut w);
            if !is_zero_vec(field, &w) {
                let mut rows = span.rows.clone();
                rows.push(w.clone());
                span = ExactMatrix::from_rows(field, model.ambient_len(d), rows).rref();
                strings.push(OracleString {
                    start: d,
                    vectors: vec![w],
                    open: true,
                });
            }
        }
    }

    // certificate: per degree, the string vectors form a basis of A_d
    for d in 0..=model.j {
        let rows: Vec<Vec<FieldElem>> = strings
            .iter()
            .filter(|s| s.start <= d && d < s.start + s.vectors.len())
            .map(|s| s.vectors[d - s.start].clone())
            .collect();
        if rows.len() != model.dim(d) {
            return Err(JordanError::BasisVerificationFailed);
        }
        let rank = ExactMatrix::from_rows(field, model.ambient_len(d), rows).rank();
        if rank != model.dim(d) {
            return Err(JordanError::BasisVerificationFailed);
        }
    }

    Ok(Jdt::new(
        strings.iter().map(|s| (s.vectors.len(), s.start)).collect(),
    ))
}

// ---------------------------------------------------------------------------
// Part classification for almost-constant Hilbert functions.
// ---------------------------------------------------------------------------

/// (lengthening as (nu, j-p), repeated as (w, i), sporadic as (w, i))
pub type ClassificationShape = (Vec<(usize, i64)>, Vec<(usize, usize)>, Vec<(usize, usize)>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartClassification {
    /// Lengthening parts (p, nu), one entry per copy.
    pub lengthening: Vec<(usize, usize)>,
    /// Repeated ladders (width w, start i) spanning i..=j+1-i-w, one entry
    /// per extracted ladder.
    pub repeated: Vec<(usize, usize)>,
    /// Sporadic pairs (w, i), standing for the symmetric pair at i and
    /// j+1-i-w.
    pub sporadic: Vec<(usize, usize)>,
}

impl PartClassification {
    /// The multiset W of repeated-part widths, sorted descending.
    pub fn widths(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.repeated.iter().map(|&(w, _)| w).collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    /// A j-independent shape for cross-degree stability checks: lengthening
    /// recorded as (nu, j-p), ladders and pairs as (w, i).
    pub fn shape(&self, j: usize) -> ClassificationShape {
        let mut lengthen: Vec<(usize, i64)> = self
            .lengthening
            .iter()
            .map(|&(p, nu)| (nu, j as i64 - p as i64))
            .collect();
        lengthen.sort_unstable();
        let mut rep = self.repeated.clone();
        rep.sort_unstable();
        let mut spo = self.sporadic.clone();
        spo.sort_unstable();
        (lengthen, rep, spo)
    }
}

/// Classify the parts of a symmetric JDT for T = (1,3,s^k,3,1) into
/// lengthening, repeated and sporadic parts. Lengthening parts are recognized
/// by the degree windows (nu = 0,1,2 with p = j-a for the admissible a);
/// repeated parts are ladders covering the full symmetric range; what remains
/// must pair up symmetrically.
pub fn classify_parts(jdt: &Jdt, j: usize, s: usize) -> Result<PartClassification, JordanError> {
    let mut mult = jdt.multiplicities();
    let mut lengthening = Vec::new();

    let window = |nu: usize| -> [i64; 3] {
        let jj = j as i64;
        match nu {
            0 => [jj + 1, jj, jj - 1],
            1 => [jj, jj - 1, jj - 2],
            _ => [jj - 1, jj - 2, jj - 3],
        }
    };
    let keys: Vec<(usize, usize)> = mult.keys().copied().collect();
    for (p, nu) in keys {
        if nu <= 2 && window(nu).contains(&(p as i64)) {
            let count = mult.remove(&(p, nu)).unwrap();
            for _ in 0..count {
                lengthening.push((p, nu));
            }
        }
    }

    let mut repeated = Vec::new();
    for w in (1..=s).rev() {
        let mut i = 0usize;
        loop {
            let hi = (j + 1) as i64 - i as i64 - w as i64;
            if hi < i as i64 {
                break;
            }
            let hi = hi as usize;
            loop {
                let full = (i..=hi).all(|nu| mult.get(&(w, nu)).copied().unwrap_or(0) > 0);
                if !full {
                    break;
                }
                for nu in i..=hi {
                    let c = mult.get_mut(&(w, nu)).unwrap();
                    *c -= 1;
                    if *c == 0 {
                        mult.remove(&(w, nu));
                    }
                }
                repeated.push((w, i));
            }
            i += 1;
        }
    }

    let mut sporadic = Vec::new();
    while let Some((&(w, i), _)) = mult.iter().next() {
        let partner = (j + 1) as i64 - i as i64 - w as i64;
        if partner <= i as i64 {
            return Err(JordanError::UnclassifiablePart { p: w, nu: i });
        }
        let partner = partner as usize;
        let take = |mult: &mut BTreeMap<(usize, usize), usize>, key: (usize, usize)| -> bool {
            match mult.get_mut(&key) {
                Some(c) => {
                    *c -= 1;
                    if *c == 0 {
                        mult.remove(&key);
                    }
                    true
                }
                None => false,
            }
        };
        if !take(&mut mult, (w, i)) || !take(&mut mult, (w, partner)) {
            return Err(JordanError::UnclassifiablePart { p: w, nu: i });
        }
        sporadic.push((w, i));
    }

    Ok(PartClassification {
        lengthening,
        repeated,
        sporadic,
    })
}

// ---------------------------------------------------------------------------
// Printer: subscript notation for concrete JDTs.
// ---------------------------------------------------------------------------

/// Subscript-notation formatting: `p_v` for a single part, `(p_v)^m` with
/// multiplicity, `p_{a,b}` for a two-step run, `p↑_a^b` for longer ladders,
/// items ordered by (initial degree, length descending).
pub fn format_jdt(jdt: &Jdt) -> String {
    let mut mult = jdt.multiplicities();
    let mut items: Vec<String> = Vec::new();
    while !mult.is_empty() {
        // smallest nu, then largest p
        let &(p, nu) = mult
            .keys()
            .min_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        // maximal consecutive run at this length with equal multiplicity
        let m = mult[&(p, nu)];
        let mut run = 1usize;
        while mult.get(&(p, nu + run)) == Some(&m) {
            run += 1;
        }
        for t in 0..run {
            mult.remove(&(p, nu + t));
        }
        let body = match run {
            1 => format!("{}_{}", p, nu),
            2 => format!("{}_{{{},{}}}", p, nu, nu + 1),
            _ => format!("{}↑_{}^{}", p, nu, nu + run - 1),
        };
        if m == 1 {
            items.push(body);
        } else {
            items.push(format!("({})^{}", body, m));
        }
    }
    format!("({})", items.join(","))
}
