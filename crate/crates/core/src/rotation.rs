//! Least-rotation canonicalization of cyclic sequences (Booth's algorithm).

/// Index of the lexicographically least rotation of `s`, in linear time.
pub(crate) fn least_rotation_index<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let at = |i: i64| -> &T { &s[(i as usize) % n] };
    let len2 = (2 * n) as i64;
    let mut fail = vec![-1i64; 2 * n];
    let mut k: i64 = 0;
    for j in 1..len2 {
        let mut i = fail[(j - k - 1) as usize];
        while i != -1 && at(j) != at(k + i + 1) {
            if at(j) < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            fail[(j - k) as usize] = -1;
        } else {
            fail[(j - k) as usize] = i + 1;
        }
    }
    (k as usize) % n
}

/// The least rotation itself.
pub(crate) fn least_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    let k = least_rotation_index(s);
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[k..]);
    out.extend_from_slice(&s[..k]);
    out
}
