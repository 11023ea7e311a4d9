//! Basis-blade bookkeeping: bitmask encoding, reordering signs, grade
//! involution signs, and the generalized Kronecker symbol.
//!
//! A basis blade e_{i1} ^ ... ^ e_{ik} with ascending 1-based indices is
//! encoded as a `u16` mask whose bit (i-1) is set exactly when e_i is a
//! factor. The scalar blade is mask 0; grades are popcounts. All signs here
//! are exact integers.

use crate::error::{GaError, Result};

/// Largest supported algebra dimension. 2^12 coefficients per multivector is
/// the ceiling at which dense storage stays cheap on every target we build.
pub const MAX_DIM: usize = 12;

/// Bitmask encoding of a basis blade.
pub type BladeMask = u16;

/// Grade (number of vector factors) of a blade mask.
#[inline]
pub fn grade(mask: BladeMask) -> u32 {
    mask.count_ones()
}

/// Sign `(-1)^s` accumulated when the concatenated factor list of `a`
/// followed by `b` is sorted into ascending order; `s` counts the
/// transpositions that move each factor of `b` past the factors of `a` that
/// exceed it. Shared factors are not cancelled here: this is pure reordering,
/// so the same sign serves the exterior product (disjoint masks) and the
/// orthonormal Clifford product (overlapping masks contract with +1).
#[inline]
pub fn canonical_reorder_sign(a: BladeMask, b: BladeMask) -> i32 {
    let mut swaps = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (b & ((1 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the grade involution on a blade of grade k: `(-1)^k`.
#[inline]
pub fn grade_involution_sign(k: u32) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of reversion on a blade of grade k: `(-1)^(k(k-1)/2)`.
#[inline]
pub fn reversion_sign(k: u32) -> i32 {
    if (k * (k.wrapping_sub(1)) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of Clifford conjugation on a blade of grade k: `(-1)^(k(k+1)/2)`.
/// Equal to the product of the grade-involution and reversion signs.
#[inline]
pub fn conjugation_sign(k: u32) -> i32 {
    if (k * (k + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Converts an ascending 1-based index list to a blade mask.
/// Rejects indices outside 1..=dim, descents, and duplicates.
pub fn mask_from_indices(indices: &[usize], dim: usize) -> Result<BladeMask> {
    let mut mask: BladeMask = 0;
    let mut prev = 0usize;
    for &i in indices {
        if i < 1 || i > dim {
            return Err(GaError::IndexOutOfRange { index: i, dim });
        }
        if i <= prev {
            return Err(GaError::InvalidForm(format!(
                "blade indices must be strictly ascending, got {} after {}",
                i, prev
            )));
        }
        prev = i;
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// Ascending 1-based index list of a blade mask.
pub fn indices_from_mask(mask: BladeMask) -> Vec<usize> {
    let mut out = Vec::with_capacity(grade(mask) as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize + 1);
        rest &= rest - 1;
    }
    out
}

/// Generalized Kronecker symbol for two 1-based index lists of equal length:
/// the determinant of the k x k matrix whose (a, b) entry is 1 when
/// `upper[a] == lower[b]` and 0 otherwise. The determinant collapses to an
/// exact combinatorial rule: 0 unless both lists are duplicate-free and equal
/// as sets, otherwise the sign of the permutation carrying `lower` to
/// `upper`.
pub fn generalized_kronecker(upper: &[usize], lower: &[usize]) -> Result<i64> {
    if upper.len() != lower.len() {
        return Err(GaError::IndexLengthMismatch {
            upper: upper.len(),
            lower: lower.len(),
        });
    }
    for &i in upper.iter().chain(lower.iter()) {
        if i == 0 {
            return Err(GaError::IndexOutOfRange { index: 0, dim: 0 });
        }
    }
    let k = upper.len();
    // Duplicates in either list force a repeated row or column.
    let mut up_sorted: Vec<usize> = upper.to_vec();
    let mut lo_sorted: Vec<usize> = lower.to_vec();
    up_sorted.sort_unstable();
    lo_sorted.sort_unstable();
    if up_sorted.windows(2).any(|w| w[0] == w[1]) || lo_sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(0);
    }
    if up_sorted != lo_sorted {
        return Ok(0);
    }
    // Permutation sign of the map lower -> upper, counted by inversions.
    let mut perm = Vec::with_capacity(k);
    for &u in upper {
        perm.push(lower.iter().position(|&l| l == u).expect("equal sets"));
    }
    let mut inversions = 0usize;
    for a in 0..k {
        for b in (a + 1)..k {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal k x k determinant of the delta matrix, by Laplace expansion.
    /// Independent of the combinatorial shortcut above.
    fn kronecker_by_determinant(upper: &[usize], lower: &[usize]) -> i64 {
        fn det(m: &[Vec<i64>]) -> i64 {
            let k = m.len();
            if k == 0 {
                return 1;
            }
            if k == 1 {
                return m[0][0];
            }
            let mut acc = 0i64;
            for (col, head) in m[0].iter().enumerate() {
                if *head == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if col % 2 == 0 { 1 } else { -1 };
                acc += sign * head * det(&minor);
            }
            acc
        }
        let k = upper.len();
        let m: Vec<Vec<i64>> = (0..k)
            .map(|a| (0..k).map(|b| (upper[a] == lower[b]) as i64).collect())
            .collect();
        det(&m)
    }

    #[test]
    fn reorder_sign_matches_transposition_count() {
        // e1^e2 then e3^e4 is already sorted; e2 then e1 needs one swap.
        assert_eq!(canonical_reorder_sign(0b0011, 0b1100), 1);
        assert_eq!(canonical_reorder_sign(0b0010, 0b0001), -1);
        // Scalar factors never move anything.
        for b in 0..16u16 {
            assert_eq!(canonical_reorder_sign(0, b), 1);
            assert_eq!(canonical_reorder_sign(b, 0), 1);
        }
    }

    /// Brute-force parity oracle: count inversions in the concatenated factor
    /// list directly.
    fn reorder_sign_oracle(a: BladeMask, b: BladeMask) -> i32 {
        let mut seq = indices_from_mask(a);
        seq.extend(indices_from_mask(b));
        let mut inv = 0usize;
        for i in 0..seq.len() {
            for j in (i + 1)..seq.len() {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn reorder_sign_agrees_with_inversion_oracle_exhaustively() {
        for a in 0..64u16 {
            for b in 0..64u16 {
                assert_eq!(
                    canonical_reorder_sign(a, b),
                    reorder_sign_oracle(a, b),
                    "masks {:#b}, {:#b}",
                    a,
                    b
                );
            }
        }
    }

    #[test]
    fn involution_signs_have_period_four_pattern() {
        let grade_signs: Vec<i32> = (0..8).map(grade_involution_sign).collect();
        let rev_signs: Vec<i32> = (0..8).map(reversion_sign).collect();
        let conj_signs: Vec<i32> = (0..8).map(conjugation_sign).collect();
        assert_eq!(grade_signs, vec![1, -1, 1, -1, 1, -1, 1, -1]);
        assert_eq!(rev_signs, vec![1, 1, -1, -1, 1, 1, -1, -1]);
        assert_eq!(conj_signs, vec![1, -1, -1, 1, 1, -1, -1, 1]);
        for k in 0..13 {
            assert_eq!(
                conjugation_sign(k),
                grade_involution_sign(k) * reversion_sign(k)
            );
        }
    }

    #[test]
    fn mask_round_trips_through_index_lists() {
        for mask in 0..(1u16 << 6) {
            let idx = indices_from_mask(mask);
            assert_eq!(mask_from_indices(&idx, 6).unwrap(), mask);
        }
        assert!(mask_from_indices(&[2, 2], 4).is_err());
        assert!(mask_from_indices(&[3, 1], 4).is_err());
        assert!(mask_from_indices(&[0], 4).is_err());
        assert!(mask_from_indices(&[5], 4).is_err());
    }

    #[test]
    fn kronecker_swapped_pair_is_minus_one() {
        assert_eq!(generalized_kronecker(&[1, 2], &[2, 1]).unwrap(), -1);
        assert_eq!(kronecker_by_determinant(&[1, 2], &[2, 1]), -1);
    }

    #[test]
    fn kronecker_matches_determinant_oracle_for_all_small_lists() {
        // Every list over {1..4} of length <= 3, both slots.
        let mut lists: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=3usize {
            let mut level = Vec::new();
            let mut stack = vec![Vec::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == len {
                    level.push(prefix);
                    continue;
                }
                for i in 1..=4usize {
                    let mut next = prefix.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
            lists.extend(level);
        }
        for up in &lists {
            for lo in &lists {
                if up.len() != lo.len() {
                    assert!(generalized_kronecker(up, lo).is_err());
                    continue;
                }
                assert_eq!(
                    generalized_kronecker(up, lo).unwrap(),
                    kronecker_by_determinant(up, lo),
                    "upper {:?} lower {:?}",
                    up,
                    lo
                );
            }
        }
    }

    #[test]
    fn kronecker_rejects_zero_indices() {
        assert!(generalized_kronecker(&[0], &[1]).is_err());
    }
}
