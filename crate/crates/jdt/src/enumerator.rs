//! Enumeration of all combinatorially admissible rank matrices for
//! almost-constant Hilbert functions (codimension three) and for
//! codimension-two complete-intersection sequences.
//!
//! The matrix template is fixed by the Toeplitz center and persymmetry;
//! the search walks the border diagonals outward (a = 1, 2, ...), pruning
//! with the diagonal Gorenstein-sequence test, row/column monotonicity, the
//! adjacent-diagonal O-sequence condition and non-negativity of the JDT
//! matrix.

use crate::combinatorics::{
    check_delta_admissible, is_gorenstein_seq_codim_le2, is_gorenstein_seq_codim_le3,
    is_o_sequence, partitions_with_max_part, shifted_difference, DeltaSeq,
};
use crate::jordan::{jdt_from_matrix, jdt_matrix, Jdt, RankMatrix};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumFamily {
    /// T = (1,3,s^k,3,1) for s in 4..6, or (1,3^k,1) for s = 3.
    Codim3 { s: usize },
    /// T = (1,2,...,d-1,d^k,d-1,...,2,1).
    Codim2 { d: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumSpec {
    pub family: EnumFamily,
    pub k: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvalidSpec(pub String);

impl fmt::Display for InvalidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid enumeration spec: {}", self.0)
    }
}

impl std::error::Error for InvalidSpec {}

impl EnumSpec {
    pub fn codim3(s: usize, k: usize) -> Self {
        EnumSpec {
            family: EnumFamily::Codim3 { s },
            k,
        }
    }

    pub fn codim2(d: usize, k: usize) -> Self {
        EnumSpec {
            family: EnumFamily::Codim2 { d },
            k,
        }
    }

    pub fn validate(&self) -> Result<(), InvalidSpec> {
        match self.family {
            EnumFamily::Codim3 { s } => {
                if !(3..=6).contains(&s) {
                    return Err(InvalidSpec(format!("Sperner number {} not in 3..6", s)));
                }
                if self.k < 3 {
                    return Err(InvalidSpec(
                        "codimension-three enumeration needs k >= 3 (Toeplitz center)".into(),
                    ));
                }
            }
            EnumFamily::Codim2 { d } => {
                if !(2..=3).contains(&d) {
                    return Err(InvalidSpec(format!(
                        "codim-2 Sperner number {} not in 2..3",
                        d
                    )));
                }
                if self.k < 2 {
                    return Err(InvalidSpec(
                        "codimension-two enumeration needs k >= 2".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Socle degree of the family.
    pub fn socle_degree(&self) -> usize {
        match self.family {
            EnumFamily::Codim3 { s } => {
                if s == 3 {
                    self.k + 1
                } else {
                    self.k + 3
                }
            }
            EnumFamily::Codim2 { d } => self.k + 2 * d - 3,
        }
    }

    pub fn sperner(&self) -> usize {
        match self.family {
            EnumFamily::Codim3 { s } => s,
            EnumFamily::Codim2 { d } => d,
        }
    }

    /// The Hilbert function T of the family.
    pub fn hilbert(&self) -> Vec<usize> {
        match self.family {
            EnumFamily::Codim3 { s } => {
                let mut t = vec![1];
                if s > 3 {
                    t.push(3);
                }
                t.extend(std::iter::repeat_n(s, self.k));
                if s > 3 {
                    t.push(3);
                }
                t.push(1);
                t
            }
            EnumFamily::Codim2 { d } => {
                let mut t: Vec<usize> = (1..d).collect();
                t.extend(std::iter::repeat_n(d, self.k));
                t.extend((1..d).rev());
                t
            }
        }
    }

    /// First degree in which T attains its maximum (the center offset).
    fn tau(&self) -> usize {
        match self.family {
            EnumFamily::Codim3 { s } => {
                if s == 3 {
                    1
                } else {
                    2
                }
            }
            EnumFamily::Codim2 { d } => d - 1,
        }
    }

    fn diag_test(&self, seq: &[usize]) -> bool {
        match self.family {
            EnumFamily::Codim3 { .. } => is_gorenstein_seq_codim_le3(seq),
            EnumFamily::Codim2 { .. } => is_gorenstein_seq_codim_le2(seq),
        }
    }

    /// Admissible Δ partitions, at most k-1 parts, in table order
    /// (|Δ| ascending, then lexicographically descending).
    fn admissible_deltas(&self) -> Vec<Vec<usize>> {
        let s = self.sperner();
        let mut out = Vec::new();
        for total in 0..=s {
            for p in partitions_with_max_part(total, s.saturating_sub(1)) {
                if p.len() > self.k - 1 {
                    continue;
                }
                let keep = match self.family {
                    EnumFamily::Codim3 { s } => {
                        let mut padded: Vec<i64> = p.iter().map(|&x| x as i64).collect();
                        padded.resize(self.k - 1, 0);
                        check_delta_admissible(&DeltaSeq(padded), s, self.k)
                    }
                    EnumFamily::Codim2 { .. } => true,
                };
                if keep {
                    out.push(p);
                }
            }
        }
        // partitions_with_max_part already returns each |Δ| block in
        // lexicographically descending order
        out
    }

    fn r_vector(&self, delta: &[usize]) -> Vec<usize> {
        let s = self.sperner();
        let mut r = vec![s];
        let mut cur = s as i64;
        for i in 0..self.k - 1 {
            cur -= delta.get(i).copied().unwrap_or(0) as i64;
            debug_assert!(cur >= 0);
            r.push(cur as usize);
        }
        r
    }
}

/// One admissible rank matrix with its Δ-sequence and Jordan degree type.
#[derive(Clone, Debug)]
pub struct EnumeratedMatrix {
    pub delta: Vec<usize>,
    pub r: Vec<usize>,
    pub matrix: RankMatrix,
    pub jdt: Jdt,
}

/// Serializable flat record, one per matrix.
#[derive(Serialize, serde::Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct MatrixRecord {
    pub delta: Vec<usize>,
    pub r: Vec<usize>,
    pub size: usize,
    pub matrix: Vec<usize>,
    pub jdt: String,
    pub parts: Vec<(usize, usize)>,
}

impl EnumeratedMatrix {
    pub fn record(&self) -> MatrixRecord {
        MatrixRecord {
            delta: self.delta.clone(),
            r: self.r.clone(),
            size: self.matrix.size(),
            matrix: self.matrix.flattened(),
            jdt: self.jdt.to_string(),
            parts: self.jdt.parts().to_vec(),
        }
    }
}

struct Search<'a> {
    spec: &'a EnumSpec,
    j: usize,
    tau: usize,
    r: Vec<usize>,
    diags: Vec<Vec<usize>>,
    found: Vec<RankMatrix>,
}

impl<'a> Search<'a> {
    fn diag_at(&self, a: usize, u: i64) -> i64 {
        if a >= self.diags.len() {
            return 0;
        }
        if u < 0 || u as usize >= self.diags[a].len() {
            return 0;
        }
        self.diags[a][u as usize] as i64
    }

    /// J entries on diagonal `a - 2` are determined once diagonal `a` is
    /// known; they must all be non-negative.
    fn j_check(&self, a: usize) -> bool {
        if a < 2 {
            return true;
        }
        let d = a - 2;
        if d > self.j {
            return true;
        }
        for u in 0..=(self.j - d) {
            let ui = u as i64;
            let x = self.diag_at(d, ui) + self.diag_at(a, ui - 1)
                - self.diag_at(a - 1, ui - 1)
                - self.diag_at(a - 1, ui);
            if x < 0 {
                return false;
            }
        }
        true
    }

    fn step(&mut self, a: usize) {
        if a > self.j {
            if self.j_check(self.j + 1) && self.j_check(self.j + 2) {
                self.emit();
            }
            return;
        }
        let len = self.j + 1 - a;
        let prev = self.diags[a - 1].clone();
        // free positions in the first half of the palindromic diagonal
        let half = (len - 1) / 2;
        let mut template: Vec<Option<usize>> = vec![None; len];
        let mut free = Vec::new();
        for u in 0..=half {
            if u >= self.tau && u + a <= self.j - self.tau {
                template[u] = Some(self.r[a]);
            } else {
                free.push(u);
            }
        }
        self.fill(a, len, &prev, &mut template, &free, 0);
    }

    fn fill(
        &mut self,
        a: usize,
        len: usize,
        prev: &[usize],
        template: &mut Vec<Option<usize>>,
        free: &[usize],
        idx: usize,
    ) {
        if idx == free.len() {
            let mut diag = vec![0usize; len];
            for (u, slot) in diag.iter_mut().enumerate() {
                let half_u = u.min(len - 1 - u);
                *slot = template[half_u].expect("first half fully assigned");
            }
            if !self.admit(a, prev, &diag) {
                return;
            }
            self.diags.push(diag);
            if self.j_check(a) {
                self.step(a + 1);
            }
            self.diags.pop();
            return;
        }
        let u = free[idx];
        let ub = prev[u].min(prev[u + 1]);
        for v in 0..=ub {
            template[u] = Some(v);
            self.fill(a, len, prev, template, free, idx + 1);
        }
        template[u] = None;
    }

    fn admit(&self, _a: usize, prev: &[usize], diag: &[usize]) -> bool {
        // rows non-increasing / columns non-decreasing against the previous
        // diagonal (center positions included)
        for (u, &x) in diag.iter().enumerate() {
            if x > prev[u] || x > prev[u + 1] {
                return false;
            }
        }
        if !self.spec.diag_test(diag) {
            return false;
        }
        is_o_sequence(&shifted_difference(prev, diag))
    }

    fn emit(&mut self) {
        let n = self.j + 1;
        let mut m = RankMatrix::zeros(n);
        for (a, diag) in self.diags.iter().enumerate() {
            for (u, &x) in diag.iter().enumerate() {
                m.set(u, u + a, x);
            }
        }
        self.found.push(m);
    }
}

fn enumerate_delta(spec: &EnumSpec, delta: &[usize]) -> Vec<EnumeratedMatrix> {
    let j = spec.socle_degree();
    let r = spec.r_vector(delta);
    let mut search = Search {
        spec,
        j,
        tau: spec.tau(),
        r: r.clone(),
        diags: vec![spec.hilbert()],
        found: Vec::new(),
    };
    search.step(1);
    let mut found = search.found;
    // canonical order inside a Δ row: larger border values first
    found.sort_by(|a, b| b.flattened().cmp(&a.flattened()));
    found.dedup();
    found
        .into_iter()
        .map(|matrix| {
            let jm = jdt_matrix(&matrix).expect("emitted matrices satisfy the 2x2 condition");
            let jdt = jdt_from_matrix(&jm);
            EnumeratedMatrix {
                delta: delta.to_vec(),
                r: r.clone(),
                matrix,
                jdt,
            }
        })
        .collect()
}

/// All admissible rank matrices for the spec, grouped by Δ in table order.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<EnumeratedMatrix>, InvalidSpec> {
    spec.validate()?;
    let deltas = spec.admissible_deltas();
    let per_delta: Vec<Vec<EnumeratedMatrix>> = deltas
        .par_iter()
        .map(|d| enumerate_delta(spec, d))
        .collect();
    Ok(per_delta.into_iter().flatten().collect())
}

pub fn enumerate_codim2(d: usize, k: usize) -> Result<Vec<EnumeratedMatrix>, InvalidSpec> {
    enumerate(&EnumSpec::codim2(d, k))
}

/// One census row per Δ-sequence that admits at least one matrix.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub delta: Vec<usize>,
    pub r: Vec<usize>,
    pub count: usize,
    /// Split used by the source tables for s = 4, 5: the right branch counts
    /// matrices whose second diagonal is the (1,2,3,...)-shaped Hilbert
    /// function (codimension-two branch of the recursion); everything else,
    /// including the degenerate (1,2,2,...) and (1,1,...) diagonals, lands in
    /// the left branch.
    pub count_codim3_branch: Option<usize>,
    pub count_codim2_branch: Option<usize>,
    pub jdts: Vec<String>,
}

/// Grouped report of the enumeration: one row per Δ-sequence, with the
/// split counts and the JDT list.
pub fn jdt_census(spec: &EnumSpec) -> Result<Vec<CensusRow>, InvalidSpec> {
    let all = enumerate(spec)?;
    let split = matches!(spec.family, EnumFamily::Codim3 { s } if s == 4 || s == 5);
    let mut rows: Vec<CensusRow> = Vec::new();
    for m in &all {
        if rows.last().map(|r| &r.delta[..]) != Some(&m.delta[..]) {
            rows.push(CensusRow {
                delta: m.delta.clone(),
                r: m.r.clone(),
                count: 0,
                count_codim3_branch: if split { Some(0) } else { None },
                count_codim2_branch: if split { Some(0) } else { None },
                jdts: Vec::new(),
            });
        }
        let row = rows.last_mut().unwrap();
        row.count += 1;
        if split {
            // second diagonal (1, x, r_1, ..., r_1, x, 1)
            if m.matrix.get(1, 2) == 2 && m.matrix.get(2, 3) == 3 {
                *row.count_codim2_branch.as_mut().unwrap() += 1;
            } else {
                *row.count_codim3_branch.as_mut().unwrap() += 1;
            }
        }
        row.jdts.push(m.jdt.to_string());
    }
    Ok(rows)
}
