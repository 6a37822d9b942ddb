//! Word-packed bit rows. A row of `n` bits occupies `words(n)` `u64`s; bits
//! beyond `n` are always zero.

#[inline]
pub fn words(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub fn count_and3(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

pub fn and_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= *s;
    }
}

/// Row with the first `n` bits set.
pub fn full(n: usize) -> Vec<u64> {
    let mut row = vec![u64::MAX; words(n)];
    if !n.is_multiple_of(64) {
        if let Some(last) = row.last_mut() {
            *last = (1u64 << (n % 64)) - 1;
        }
    }
    row
}

/// Indices of set bits in ascending order.
pub fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let tz = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(wi * 64 + tz)
        })
    })
}

pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut row = vec![0; words(n)];
    for i in indices {
        set(&mut row, i);
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rows_mask_tail() {
        for n in [0, 1, 63, 64, 65, 130] {
            let row = full(n);
            assert_eq!(count(&row), n);
            assert_eq!(ones(&row).collect::<Vec<_>>(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn set_clear_and_intersections() {
        let mut a = vec![0; words(100)];
        set(&mut a, 3);
        set(&mut a, 64);
        set(&mut a, 99);
        let b = from_indices(100, [3, 50, 99]);
        assert_eq!(count_and(&a, &b), 2);
        clear(&mut a, 99);
        assert!(!get(&a, 99));
        assert_eq!(count_and(&a, &b), 1);
        let c = from_indices(100, [3]);
        assert_eq!(count_and3(&a, &b, &c), 1);
    }
}
