//! Brute-force reference implementations over plain letter vectors.
//!
//! Nothing here touches the run-length machinery of [`crate::word`]; letters
//! are `i64` values (`k` for `a_k`, `-k` for `a_k^-1`) and every routine is
//! the obvious quadratic or exponential algorithm. Tests and the acceptance
//! suite compare the real implementation against these.

use rand::Rng;

/// Sort key realizing `a1 < a1^-1 < a2 < a2^-1 < ...`.
pub fn letter_key(k: i64) -> i64 {
    2 * (k.abs() - 1) + (k < 0) as i64
}

/// Naive stack-based free reduction.
pub fn stack_reduce(letters: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(letters.len());
    for &x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn invert(letters: &[i64]) -> Vec<i64> {
    letters.iter().rev().map(|x| -x).collect()
}

pub fn concat(parts: &[&[i64]]) -> Vec<i64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Unreduced `u^k`.
pub fn power(u: &[i64], k: i64) -> Vec<i64> {
    let base = if k < 0 { invert(u) } else { u.to_vec() };
    (0..k.unsigned_abs()).flat_map(|_| base.iter().copied()).collect()
}

/// Unreduced `[u, v] = u v u^-1 v^-1`.
pub fn commutator(u: &[i64], v: &[i64]) -> Vec<i64> {
    concat(&[u, v, &invert(u), &invert(v)])
}

/// Strips inverse letter pairs from both ends of a reduced word.
pub fn cyclic_core(letters: &[i64]) -> Vec<i64> {
    let r = stack_reduce(letters);
    let (mut i, mut j) = (0usize, r.len());
    while j - i >= 2 && r[i] == -r[j - 1] {
        i += 1;
        j -= 1;
    }
    r[i..j].to_vec()
}

pub fn rotations(u: &[i64]) -> Vec<Vec<i64>> {
    (0..u.len().max(1)).map(|s| u[s.min(u.len())..].iter().chain(&u[..s.min(u.len())]).copied().collect()).collect()
}

fn keyed(u: &[i64]) -> Vec<i64> {
    u.iter().map(|&k| letter_key(k)).collect()
}

/// Least rotation of the cyclic core by listing every rotation.
pub fn canonical_rotation(letters: &[i64]) -> Vec<i64> {
    let core = cyclic_core(letters);
    rotations(&core).into_iter().min_by_key(|r| keyed(r)).unwrap_or_default()
}

/// Free conjugacy by trying every cyclic shift of one core against the other.
pub fn conjugate_by_shifts(u: &[i64], v: &[i64]) -> bool {
    let (cu, cv) = (cyclic_core(u), cyclic_core(v));
    cu.len() == cv.len() && rotations(&cu).contains(&cv)
}

/// Root and exponent of a nonempty word by trying every period that
/// divides its length.
pub fn primitive_root_by_divisors(u: &[i64]) -> (Vec<i64>, usize) {
    let n = u.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (0..n).all(|i| u[i] == u[i % p]) {
            return (u[..p].to_vec(), n / p);
        }
    }
    (u.to_vec(), 1)
}

/// Every freely reduced word of length `len` over `m` generators, in
/// shortlex order.
pub fn reduced_words(m: i64, len: usize) -> Vec<Vec<i64>> {
    let alphabet: Vec<i64> = (1..=m).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for &x in &alphabet {
                if w.last() != Some(&-x) {
                    let mut e = w.clone();
                    e.push(x);
                    next.push(e);
                }
            }
        }
        out = next;
    }
    out
}

/// Every letter string (reduced or not) of length `len`.
pub fn all_strings(m: i64, len: usize) -> Vec<Vec<i64>> {
    let alphabet: Vec<i64> = (1..=m).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&x| w.iter().copied().chain([x]).collect::<Vec<_>>()))
            .collect();
    }
    out
}

pub fn random_letters<R: Rng>(rng: &mut R, m: i64, len: usize) -> Vec<i64> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=m);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// Random freely reduced word of exactly `len` letters.
pub fn random_reduced<R: Rng>(rng: &mut R, m: i64, len: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(len);
    while out.len() < len {
        let g = rng.gen_range(1..=m);
        let x = if rng.gen_bool(0.5) { g } else { -g };
        if out.last() != Some(&-x) {
            out.push(x);
        }
    }
    out
}

/// The sign schedule, read straight off its ten-periodic table.
pub fn epsilon_table(i: u64) -> i64 {
    const TABLE: [i64; 10] = [1, 1, 1, -1, 1, 1, -1, -1, -1, -1];
    TABLE[((i - 1) % 10) as usize]
}

/// Letter-level `v_1(x, y) = [((x^d y^d)^d x^d)^d, x^d]^d y`, unreduced.
pub fn v1_letters(x: &[i64], y: &[i64], d: i64) -> Vec<i64> {
    let xd = power(x, d);
    let yd = power(y, d);
    let inner = concat(&[&power(&concat(&[&xd, &yd]), d), &xd]);
    let c = commutator(&power(&inner, d), &xd);
    concat(&[&power(&c, d), y])
}

/// Letter-level `v_2(x, y) = [v_1^d, x^d]`, unreduced.
pub fn v2_letters(x: &[i64], y: &[i64], d: i64) -> Vec<i64> {
    commutator(&power(&v1_letters(x, y, d), d), &power(x, d))
}

/// Letter-level `w_1`, with the `v_1` slot filled by `v`, unreduced.
pub fn w1_letters_with(x: &[i64], v: &[i64], h: i64, n: i64) -> Vec<i64> {
    let half = h / 2;
    let mut out = Vec::new();
    for k in 1..=half {
        let e = if k == half { (n + h - 2) + half } else { n + 2 * (k - 1) };
        out.extend(power(x, epsilon_table(k as u64)));
        out.extend(power(v, e));
    }
    for k in 1..=half {
        out.extend(power(x, epsilon_table(k as u64)));
        out.extend(power(v, -(n + 2 * k - 1)));
    }
    out
}

pub fn w1_letters(x: &[i64], y: &[i64], h: i64, d: i64, n: i64) -> Vec<i64> {
    w1_letters_with(x, &v1_letters(x, y, d), h, n)
}

pub fn w2_letters(x: &[i64], y: &[i64], h: i64, d: i64, n: i64) -> Vec<i64> {
    let v1 = v1_letters(x, y, d);
    let v2 = v2_letters(x, y, d);
    let mut out = y.to_vec();
    out.extend(power(&v2, n * n + 1));
    for i in 2..=h {
        out.extend(power(&v1, epsilon_table(i as u64)));
        out.extend(power(&v2, n * n + i));
    }
    out
}

/// Greedy periods of length `len`: primitive cyclically reduced words, in
/// shortlex order, skipping any conjugate of a kept word or its inverse.
pub fn periods_by_enumeration(m: i64, len: usize) -> Vec<Vec<i64>> {
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for u in reduced_words(m, len) {
        if cyclic_core(&u).len() != len || primitive_root_by_divisors(&u).1 > 1 {
            continue;
        }
        if !kept.iter().any(|b| conjugate_by_shifts(&u, b) || conjugate_by_shifts(&invert(&u), b)) {
            kept.push(u);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_sanity() {
        assert_eq!(stack_reduce(&[1, 2, -2, 1]), vec![1, 1]);
        assert_eq!(cyclic_core(&[2, 1, -2]), vec![1]);
        assert!(conjugate_by_shifts(&[1, 2], &[2, 1]));
        assert_eq!(primitive_root_by_divisors(&[1, 2, 1, 2]), (vec![1, 2], 2));
        assert_eq!(reduced_words(2, 2).len(), 12);
        assert_eq!((1..=10).map(epsilon_table).sum::<i64>(), 0);
    }
}
