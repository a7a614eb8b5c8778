//! Word-sized vertex masks used by the exhaustive searches (n ≤ 64).

/// Iterates the set bits of `mask` in increasing order.
#[inline]
pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of the bits of `pool`, in lexicographic order.
pub(crate) fn combinations(pool: u64, k: usize) -> Vec<u64> {
    let items: Vec<usize> = ones(pool).collect();
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let m = items.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | bit(items[i])));
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_in_order() {
        assert_eq!(ones(0b1011_0001).collect::<Vec<_>>(), vec![0, 4, 5, 7]);
        assert_eq!(ones(0).count(), 0);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(0b1111_1111, 3).len(), 56);
        assert_eq!(combinations(0b1111, 0), vec![0]);
        assert_eq!(combinations(0b1111, 4), vec![0b1111]);
        assert!(combinations(0b11, 3).is_empty());
        // lexicographic: first subset is the lowest positions
        let c = combinations(0b1_0110, 2);
        assert_eq!(c, vec![0b00110, 0b10010, 0b10100]);
    }
}
