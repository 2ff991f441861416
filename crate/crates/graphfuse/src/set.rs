//! Sorted-vector vertex sets.

/// Symmetric difference of two sorted, duplicate-free slices.
pub fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Elements occurring in an odd number of the given sets.
pub fn symmetric_difference(sets: &[&[usize]]) -> Vec<usize> {
    let mut acc = Vec::new();
    for s in sets {
        acc = sym_diff(&acc, s);
    }
    acc
}

pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| contains(b, *x)).collect()
}

pub fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !contains(b, *x)).collect()
}

pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn contains(s: &[usize], x: usize) -> bool {
    s.binary_search(&x).is_ok()
}

pub fn insert(s: &mut Vec<usize>, x: usize) -> bool {
    match s.binary_search(&x) {
        Ok(_) => false,
        Err(i) => {
            s.insert(i, x);
            true
        }
    }
}

pub fn remove(s: &mut Vec<usize>, x: usize) -> bool {
    match s.binary_search(&x) {
        Ok(i) => {
            s.remove(i);
            true
        }
        Err(_) => false,
    }
}

pub fn without(s: &[usize], x: usize) -> Vec<usize> {
    s.iter().copied().filter(|&y| y != x).collect()
}
