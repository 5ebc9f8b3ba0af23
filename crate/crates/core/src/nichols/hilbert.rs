//! Hilbert series as products of quantum integers `(n)_{t^r} = 1 + t^r + … + t^{r(n-1)}`.

use std::fmt;

use serde::Serialize;

/// Coefficients of `∏ (n)_{t^r}` up to degree `max_degree` (inclusive).
pub fn product_series(factors: &[(usize, usize)], max_degree: usize) -> Vec<u64> {
    let mut out = vec![0u64; max_degree + 1];
    out[0] = 1;
    for &(n, r) in factors {
        // multiply by 1 + t^r + … + t^{r(n-1)} with a running window sum
        let mut next = vec![0u64; max_degree + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut acc = 0;
            for j in 0..n {
                match k.checked_sub(j * r) {
                    Some(i) => acc += out[i],
                    None => break,
                }
            }
            *slot = acc;
        }
        out = next;
    }
    out
}

/// Full polynomial `∏ (n)_{t^r}`.
pub fn product_polynomial(factors: &[(usize, usize)]) -> Vec<u64> {
    let top: usize = factors.iter().map(|&(n, r)| r * (n - 1)).sum();
    product_series(factors, top)
}

/// A factorization of a (truncated) Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// `n` of each factor `(n)_t`, sorted.
    pub t: Vec<usize>,
    /// `n` of each factor `(n)_{t²}`, sorted.
    pub t2: Vec<usize>,
    /// Factors at the search limit stand for any larger `n` (or an infinite factor).
    pub open_ended: bool,
    pub text: String,
}

fn describe(t: &[usize], t2: &[usize]) -> String {
    let mut parts = Vec::new();
    for (list, var) in [(t, "t"), (t2, "t^2")] {
        let mut i = 0;
        while i < list.len() {
            let n = list[i];
            let k = list[i..].iter().take_while(|&&m| m == n).count();
            let base = if var == "t" { format!("({n})_t") } else { format!("({n})_{{t^2}}") };
            parts.push(if k > 1 { format!("{base}^{k}") } else { base });
            i += k;
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Most factorizations reported.
pub const FACTORIZATION_LIMIT: usize = 64;

/// All multisets of factors `(n)_t`, `(n)_{t²}` whose product agrees with
/// `dims` up to its last degree. When `complete` is set, `dims` is the whole
/// series (its last entry is zero) and the product must equal it exactly.
pub fn factorizations(dims: &[usize], complete: bool) -> Vec<Factorization> {
    let mut out = Vec::new();
    if dims.first() != Some(&1) {
        return out;
    }
    let n_max = dims.len() - 1;
    let rem: Vec<i64> = dims.iter().map(|&x| x as i64).collect();
    let top = if complete { dims.iter().rposition(|&x| x != 0) } else { None };
    let mut t = Vec::new();
    search_t(&rem, n_max, 2, &mut t, top, &mut out);
    out
}

/// `rem · (1 − t^r) / (1 − t^{rn})`, truncated; `None` if a coefficient
/// turns negative.
fn divide(rem: &[i64], n: usize, r: usize) -> Option<Vec<i64>> {
    let len = rem.len();
    let mut a = rem.to_vec();
    for k in (r..len).rev() {
        a[k] -= a[k - r];
    }
    // divide by 1 − t^{rn}: b_k = a_k + b_{k−rn}
    let step = r * n;
    for k in step..len {
        a[k] += a[k - step];
    }
    a.iter().all(|&x| x >= 0).then_some(a)
}

fn search_t(
    rem: &[i64],
    n_max: usize,
    min_n: usize,
    chosen: &mut Vec<usize>,
    top: Option<usize>,
    out: &mut Vec<Factorization>,
) {
    if out.len() >= FACTORIZATION_LIMIT {
        return;
    }
    let need = if rem.len() > 1 { rem[1] } else { 0 };
    if need == 0 {
        let mut t2 = Vec::new();
        search_t2(rem, n_max, 2, chosen, &mut t2, top, out);
        return;
    }
    for n in min_n..=n_max.max(2) + 1 {
        if let Some(next) = divide(rem, n, 1) {
            chosen.push(n);
            search_t(&next, n_max, n, chosen, top, out);
            chosen.pop();
        }
    }
}

fn search_t2(
    rem: &[i64],
    n_max: usize,
    min_n: usize,
    t: &[usize],
    chosen: &mut Vec<usize>,
    top: Option<usize>,
    out: &mut Vec<Factorization>,
) {
    if out.len() >= FACTORIZATION_LIMIT {
        return;
    }
    let need = if rem.len() > 2 { rem[2] } else { 0 };
    if need == 0 {
        if rem.iter().skip(1).all(|&x| x == 0) {
            let limit_t = n_max.max(2) + 1;
            let limit_t2 = n_max / 2 + 1;
            let degree: usize = t.iter().map(|n| n - 1).sum::<usize>() + chosen.iter().map(|n| 2 * (n - 1)).sum::<usize>();
            let open_ended = t.contains(&limit_t) || (chosen.contains(&limit_t2) && limit_t2 >= 2);
            if let Some(top) = top {
                if degree != top {
                    return;
                }
            }
            out.push(Factorization {
                t: t.to_vec(),
                t2: chosen.clone(),
                open_ended,
                text: describe(t, chosen),
            });
        }
        return;
    }
    for n in min_n..=(n_max / 2 + 1).max(2) {
        if let Some(next) = divide(rem, n, 2) {
            chosen.push(n);
            search_t2(&next, n_max, n, t, chosen, top, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_series() {
        assert_eq!(product_polynomial(&[(2, 1), (2, 1), (3, 1)]), vec![1, 3, 4, 3, 1]);
        let f = factorizations(&[1, 3, 4, 3, 1, 0], true);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].text, "(2)_t^2 (3)_t");
    }

    #[test]
    fn second_power_factors() {
        let dims = product_polynomial(&[(6, 1), (6, 1), (6, 1), (6, 1), (2, 2), (2, 2)]);
        assert_eq!(dims.iter().sum::<u64>(), 5184);
        assert_eq!(dims.len(), 25);
        let mut full: Vec<usize> = dims.iter().map(|&x| x as usize).collect();
        full.push(0);
        let f = factorizations(&full, true);
        assert!(f.iter().any(|x| x.text == "(6)_t^4 (2)_{t^2}^2"), "{f:?}");
    }
}
