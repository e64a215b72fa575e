//! Integer-sequence and partition machinery: Macaulay growth bounds,
//! O-sequences, SI Gorenstein sequences, symmetrization, Δ-sequences,
//! conjugate partitions.

use serde::Serialize;
use std::fmt;

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Macaulay's bound h^{<i>}: the largest admissible value in degree i+1 given
/// value h in degree i. Computed from the i-th binomial (Macaulay)
/// representation h = C(a_i,i) + C(a_{i-1},i-1) + ... + C(a_t,t) with
/// a_i > a_{i-1} > ... >= t >= 1, returning C(a_i+1,i+1) + ... + C(a_t+1,t+1).
pub fn macaulay_growth(h: usize, i: usize) -> usize {
    assert!(i >= 1, "growth bound needs a degree i >= 1");
    if h == 0 {
        return 0;
    }
    let mut rem = h as u128;
    let mut d = i as u128;
    let mut bound: u128 = 0;
    while rem > 0 {
        debug_assert!(d >= 1);
        // greedy: largest a with C(a, d) <= rem
        let mut a = d;
        while binomial(a + 1, d) <= rem {
            a += 1;
        }
        rem -= binomial(a, d);
        bound += binomial(a + 1, d + 1);
        d -= 1;
    }
    bound as usize
}

/// Macaulay's characterization of Hilbert functions of standard graded
/// algebras: h_0 = 1, growth bounded by h^{<i>} in each degree, zero stays
/// zero. The all-zero (or empty) sequence is accepted; negative entries never.
pub fn is_o_sequence(h: &[i64]) -> bool {
    if h.iter().any(|&x| x < 0) {
        return false;
    }
    if h.iter().all(|&x| x == 0) {
        return true;
    }
    if h[0] != 1 {
        return false;
    }
    for i in 1..h.len() {
        if h[i - 1] == 0 {
            return h[i..].iter().all(|&x| x == 0);
        }
        if i >= 2 && h[i] as usize > macaulay_growth(h[i - 1] as usize, i - 1) {
            return false;
        }
    }
    true
}

/// Hilbert functions of graded quotients of k[y,z]: an O-sequence with
/// h_1 <= 2 and h_i <= i+1 for all i.
pub fn is_codim2_o_sequence(h: &[i64]) -> bool {
    if !is_o_sequence(h) {
        return false;
    }
    if h.len() >= 2 && h[1] > 2 {
        return false;
    }
    h.iter().enumerate().all(|(i, &x)| x <= i as i64 + 1)
}

fn is_symmetric(t: &[usize]) -> bool {
    let n = t.len();
    (0..n).all(|i| t[i] == t[n - 1 - i])
}

fn first_half_difference(t: &[usize]) -> Vec<i64> {
    // first difference of (t_0, ..., t_{floor(j/2)}), with leading t_0
    let j = t.len() - 1;
    let half = j / 2;
    let mut d = Vec::with_capacity(half + 1);
    d.push(t[0] as i64);
    for i in 1..=half {
        d.push(t[i] as i64 - t[i - 1] as i64);
    }
    d
}

/// Codimension <= 3 Gorenstein (SI) sequences: symmetric, t_0 = 1, t_1 <= 3,
/// and the first difference of the first half is an O-sequence. The zero
/// sequence and length-1 sequences are accepted (degenerate rank-matrix
/// diagonals).
pub fn is_gorenstein_seq_codim_le3(t: &[usize]) -> bool {
    if t.is_empty() || t.iter().all(|&x| x == 0) {
        return true;
    }
    if t[0] != 1 || !is_symmetric(t) {
        return false;
    }
    if t.len() >= 2 && t[1] > 3 {
        return false;
    }
    is_o_sequence(&first_half_difference(t))
}

/// Codimension <= 2 Gorenstein sequences (complete-intersection shapes):
/// symmetric, t_0 = 1, and the first half climbs by exactly one until it
/// plateaus (first difference a codimension-1 O-sequence).
pub fn is_gorenstein_seq_codim_le2(t: &[usize]) -> bool {
    if t.is_empty() || t.iter().all(|&x| x == 0) {
        return true;
    }
    if t[0] != 1 || !is_symmetric(t) {
        return false;
    }
    let d = first_half_difference(t);
    if !is_o_sequence(&d) {
        return false;
    }
    // codim-1 growth: every difference after the leading 1 is 0 or 1,
    // and once it drops to 0 it stays 0
    let mut seen_zero = false;
    for &x in &d[1..] {
        match x {
            0 => seen_zero = true,
            1 if !seen_zero => {}
            _ => return false,
        }
    }
    true
}

/// Sym(H, j): H_i for i <= j/2, H_{j-i} above.
pub fn symmetrize(h: &[usize], j: usize) -> Vec<usize> {
    (0..=j)
        .map(|i| if 2 * i <= j { h[i] } else { h[j - i] })
        .collect()
}

/// h1 - (0, h2), entrywise; entries may go negative (callers run the
/// O-sequence test, which rejects negatives).
pub fn shifted_difference(h1: &[usize], h2: &[usize]) -> Vec<i64> {
    let mut shifted = vec![0i64; h1.len()];
    for (i, &x) in h2.iter().enumerate() {
        if i + 1 < shifted.len() {
            shifted[i + 1] = x as i64;
        }
    }
    h1.iter()
        .zip(shifted.iter())
        .map(|(&a, &b)| a as i64 - b)
        .collect()
}

/// First differences Δr_i = r_{i-1} - r_i of the Toeplitz diagonal values,
/// starting from r_0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct DeltaSeq(pub Vec<i64>);

pub fn delta_of(r: &[usize]) -> DeltaSeq {
    assert!(!r.is_empty());
    DeltaSeq(r.windows(2).map(|w| w[0] as i64 - w[1] as i64).collect())
}

impl DeltaSeq {
    /// Nonzero prefix as a partition (valid only for admissible instances).
    pub fn as_partition(&self) -> Vec<usize> {
        self.0
            .iter()
            .take_while(|&&x| x > 0)
            .map(|&x| x as usize)
            .collect()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DeltaSeq {
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

/// Admissibility of a Δ-sequence for an almost-constant Hilbert function with
/// Sperner number s and multiplicity k: non-increasing and non-negative, each
/// entry <= s-1, sum <= s, zero from index s+1 on, Δr_1 <= 3 when k >= 3, and
/// the s=6 exclusion of Δ = (3,3,0,...).
pub fn check_delta_admissible(delta: &DeltaSeq, s: usize, k: usize) -> bool {
    let d = &delta.0;
    if d.iter().any(|&x| x < 0) {
        return false;
    }
    if d.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    if d.iter().any(|&x| x > s as i64 - 1) {
        return false;
    }
    if delta.sum() > s as i64 {
        return false;
    }
    // Δr_i = 0 for i >= s+1 (1-indexed)
    if d.len() > s && d[s..].iter().any(|&x| x != 0) {
        return false;
    }
    if k >= 3 && !d.is_empty() && d[0] > 3 {
        return false;
    }
    if s == 6 {
        let p = delta.as_partition();
        if p == [3, 3] {
            return false;
        }
    }
    true
}

/// Conjugate (transpose) of a partition.
pub fn conjugate(p: &[usize]) -> Vec<usize> {
    let mut parts: Vec<usize> = p.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let max = parts.first().copied().unwrap_or(0);
    (1..=max)
        .map(|i| parts.iter().filter(|&&x| x >= i).count())
        .collect()
}

/// All partitions of n into parts of size at most `max_part`, each padded or
/// truncated handling left to the caller.
pub fn partitions_with_max_part(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_bounds() {
        // 2 in degree 1 caps at 3 in degree 2; this is the obstruction that
        // rules out (1,2,4,...)
        assert_eq!(macaulay_growth(2, 1), 3);
        // 2 = C(2,2) + C(1,1) grows to C(3,3) + C(2,2) = 2
        assert_eq!(macaulay_growth(2, 2), 2);
        // 4 = C(3,2) + C(1,1) grows to C(4,3) + C(2,2) = 5
        assert_eq!(macaulay_growth(4, 2), 5);
        assert_eq!(macaulay_growth(3, 1), 6);
        assert_eq!(macaulay_growth(0, 3), 0);
        assert_eq!(macaulay_growth(1, 4), 1);
    }

    #[test]
    fn o_sequences() {
        assert!(!is_o_sequence(&[1, 2, 4, 4, 2]));
        assert!(is_o_sequence(&[1, 3, 6, 10]));
        assert!(is_o_sequence(&[1, 2, 3, 3, 1, 1]));
        assert!(is_o_sequence(&[0, 0, 0]));
        assert!(is_o_sequence(&[1, 7, 2]));
        assert!(!is_o_sequence(&[1, 1, 2]));
        assert!(!is_o_sequence(&[1, 2, 0, 1]));
        assert!(!is_o_sequence(&[1, -1]));
        assert!(!is_o_sequence(&[2, 1]));
    }

    #[test]
    fn codim2_o_sequences() {
        assert!(is_codim2_o_sequence(&[1, 2, 1, 0]));
        assert!(!is_codim2_o_sequence(&[1, 2, 1, 0, 1]));
        assert!(is_codim2_o_sequence(&[1, 2, 1, 1, 1]));
        assert!(!is_codim2_o_sequence(&[1, 3, 1]));
        assert!(is_codim2_o_sequence(&[1, 2, 3, 4, 5]));
        assert!(!is_codim2_o_sequence(&[1, 2, 2, 3]));
        assert!(is_codim2_o_sequence(&[1, 2, 3, 3, 2]));
    }

    #[test]
    fn gorenstein_sequences_codim3() {
        assert!(is_gorenstein_seq_codim_le3(&[1, 3, 5, 5, 3, 1]));
        assert!(is_gorenstein_seq_codim_le3(&[1, 1, 1, 1, 1]));
        assert!(!is_gorenstein_seq_codim_le3(&[1, 2, 4, 4, 2, 1]));
        assert!(is_gorenstein_seq_codim_le3(&[0, 0, 0]));
        assert!(is_gorenstein_seq_codim_le3(&[1]));
        assert!(is_gorenstein_seq_codim_le3(&[1, 3, 4, 3, 1]));
        assert!(!is_gorenstein_seq_codim_le3(&[1, 4, 4, 1]));
        assert!(!is_gorenstein_seq_codim_le3(&[1, 3, 3, 1, 1]));
    }

    #[test]
    fn gorenstein_sequences_codim2() {
        assert!(is_gorenstein_seq_codim_le2(&[1, 2, 3, 3, 2, 1]));
        assert!(is_gorenstein_seq_codim_le2(&[1, 1, 1]));
        assert!(is_gorenstein_seq_codim_le2(&[1, 2, 2, 1]));
        assert!(!is_gorenstein_seq_codim_le2(&[1, 3, 3, 1]));
        assert!(!is_gorenstein_seq_codim_le2(&[1, 2, 1, 2, 1]));
        assert!(!is_gorenstein_seq_codim_le2(&[1, 1, 2, 1, 1]));
    }

    #[test]
    fn symmetrize_cases() {
        assert_eq!(symmetrize(&[1, 3, 5, 5], 7), vec![1, 3, 5, 5, 5, 5, 3, 1]);
        assert_eq!(symmetrize(&[1, 3, 4], 4), vec![1, 3, 4, 3, 1]);
        assert_eq!(symmetrize(&[1, 1], 3), vec![1, 1, 1, 1]);
        let s = symmetrize(&[1, 3, 4], 4);
        assert_eq!(symmetrize(&s, 4), s);
    }

    #[test]
    fn shifted_differences() {
        assert_eq!(
            shifted_difference(&[1, 3, 5, 5, 3, 1], &[1, 1, 1, 1, 1]),
            vec![1, 2, 4, 4, 2, 0]
        );
        assert_eq!(shifted_difference(&[1, 1], &[1]), vec![1, 0]);
        assert_eq!(shifted_difference(&[1, 3, 1], &[]), vec![1, 3, 1]);
        assert_eq!(shifted_difference(&[1, 1], &[2]), vec![1, -1]);
    }

    #[test]
    fn delta_sequences() {
        assert_eq!(delta_of(&[3, 2, 1, 1, 1]).0, vec![1, 1, 0, 0]);
        assert_eq!(delta_of(&[5, 4, 3, 2, 1, 0]).0, vec![1, 1, 1, 1, 1]);
        assert_eq!(delta_of(&[4, 4, 4]).0, vec![0, 0]);
    }

    #[test]
    fn delta_admissibility() {
        assert!(!check_delta_admissible(
            &DeltaSeq(vec![3, 3, 0, 0, 0]),
            6,
            6
        ));
        assert!(!check_delta_admissible(&DeltaSeq(vec![4, 0, 0, 0]), 5, 5));
        assert!(check_delta_admissible(&DeltaSeq(vec![1, 1, 1, 1]), 4, 5));
        assert!(!check_delta_admissible(&DeltaSeq(vec![1, 2, 0]), 4, 4));
        assert!(!check_delta_admissible(&DeltaSeq(vec![2, 2, 1]), 4, 4));
        assert!(check_delta_admissible(&DeltaSeq(vec![3, 2]), 5, 3));
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&[2, 1]), vec![2, 1]);
        assert_eq!(conjugate(&[2, 1, 1, 1]), vec![4, 1]);
        assert_eq!(conjugate(&[4]), vec![1, 1, 1, 1]);
        assert_eq!(conjugate(&[]), Vec::<usize>::new());
        let p = vec![5, 3, 3, 1];
        assert_eq!(conjugate(&conjugate(&p)), p);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_with_max_part(4, 3).len(), 4);
        assert_eq!(partitions_with_max_part(6, 3).len(), 7);
        assert_eq!(partitions_with_max_part(0, 3), vec![Vec::<usize>::new()]);
    }

    /// Brute-force oracle: Hilbert functions of all monomial-ideal quotients
    /// of k[y,z] up to degree 6, compared against the closed-form test on
    /// every candidate sequence with small entries.
    #[test]
    fn codim2_test_matches_monomial_ideal_oracle() {
        use std::collections::BTreeSet;
        const D: usize = 6;
        // order ideals of monomials in 2 variables, built level by level;
        // level d is a subset of {0..d} (exponent of y), parents must survive
        let mut reachable: BTreeSet<Vec<usize>> = BTreeSet::new();
        // frontier: (hilbert prefix, surviving set at current degree)
        let mut frontier: Vec<(Vec<usize>, Vec<bool>)> = vec![(vec![1], vec![true])];
        for d in 1..=D {
            let mut next = Vec::new();
            for (h, prev) in &frontier {
                // candidate monomials y^a z^{d-a} for a=0..d; parents are
                // y^{a-1}z^{d-a} (if a>0) and y^a z^{d-a-1} (if a<d)
                let allowed: Vec<usize> = (0..=d)
                    .filter(|&a| {
                        let p1 = a == 0 || prev[a - 1];
                        let p2 = a == d || prev[a];
                        p1 && p2
                    })
                    .collect();
                // every subset of the allowed set
                for mask in 0..(1u32 << allowed.len()) {
                    let mut surv = vec![false; d + 1];
                    let mut cnt = 0;
                    for (bit, &a) in allowed.iter().enumerate() {
                        if mask >> bit & 1 == 1 {
                            surv[a] = true;
                            cnt += 1;
                        }
                    }
                    let mut h2 = h.clone();
                    h2.push(cnt);
                    next.push((h2, surv));
                }
            }
            // dedup frontier states to keep this small
            let mut seen = BTreeSet::new();
            next.retain(|st| seen.insert(st.clone()));
            frontier = next;
        }
        for (h, _) in &frontier {
            reachable.insert(h.clone());
        }
        // compare against the closed-form test on all candidates
        fn walk(prefix: &mut Vec<i64>, reachable: &BTreeSet<Vec<usize>>) {
            if prefix.len() == D + 1 {
                let as_usize: Vec<usize> = prefix.iter().map(|&x| x as usize).collect();
                let oracle = reachable.contains(&as_usize);
                assert_eq!(
                    is_codim2_o_sequence(prefix),
                    oracle,
                    "mismatch on {:?}",
                    prefix
                );
                return;
            }
            let cap = prefix.len() as i64 + 1;
            for v in 0..=cap.min(7) {
                prefix.push(v);
                walk(prefix, reachable);
                prefix.pop();
            }
        }
        walk(&mut vec![1], &reachable);
        // sequences not starting with 1 are never Hilbert functions
        assert!(!is_codim2_o_sequence(&[0, 1]));
        assert!(!is_codim2_o_sequence(&[2]));
    }
}
