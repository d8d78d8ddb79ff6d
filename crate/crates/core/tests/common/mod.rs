//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! library's enumeration, adjacency or solver.

#![allow(dead_code)]

/// All words of length `n` over `1..=d` whose symbols at distance `< t` differ,
/// in lexicographic order.
pub fn brute_words(d: usize, t: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut w = vec![1u8; n];
    loop {
        let ok = (0..n).all(|j| (j.saturating_sub(t.saturating_sub(1))..j).all(|i| w[i] != w[j]));
        if ok {
            out.push(w.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if (w[k] as usize) < d {
                w[k] += 1;
                for x in &mut w[k + 1..] {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// `a -> b` is an arc when `b` is `a` shifted left by one symbol.
pub fn is_arc(a: &[u8], b: &[u8]) -> bool {
    a[1..] == b[..b.len() - 1]
}

/// For each word, the bitmask of words it dominates (itself included).
pub fn cover_masks(words: &[Vec<u8>], directed: bool) -> Vec<u32> {
    assert!(words.len() <= 32);
    words
        .iter()
        .map(|a| {
            words.iter().enumerate().fold(0u32, |m, (j, b)| {
                let hit = a == b || is_arc(a, b) || (!directed && is_arc(b, a));
                if hit {
                    m | 1 << j
                } else {
                    m
                }
            })
        })
        .collect()
}

/// Smallest dominating set size, by trying every subset.
pub fn naive_gamma(masks: &[u32]) -> usize {
    let v = masks.len();
    assert!(v <= 24);
    let full: u32 = if v == 32 { !0 } else { (1 << v) - 1 };
    let mut cover = vec![0u32; 1 << v];
    let mut best = v;
    for s in 1u32..(1 << v) {
        let low = s.trailing_zeros() as usize;
        cover[s as usize] = cover[(s & (s - 1)) as usize] | masks[low];
        if cover[s as usize] == full {
            best = best.min(s.count_ones() as usize);
        }
    }
    best
}

/// `true` when the subset `s` of `words` (as indices) dominates all of them.
pub fn dominates(masks: &[u32], members: &[u32]) -> bool {
    let full: u32 = (1u64 << masks.len()).wrapping_sub(1) as u32;
    members.iter().fold(0, |acc, &m| acc | masks[m as usize]) == full
}

pub fn factorial(k: u128) -> u128 {
    (1..=k).product()
}

/// `d! / (d - t)! * (d - t + 1)^(n - t)`
pub fn word_count(d: u128, t: u128, n: u128) -> u128 {
    factorial(d) / factorial(d - t) * (d - t + 1).pow((n - t) as u32)
}
