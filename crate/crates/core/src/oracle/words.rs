//! Products of monomials by rewriting words.
//!
//! A monomial is spelled out as a word in the letters `0..nvars`; a product is
//! the concatenation of two such words, sorted back into PBW order by adjacent
//! swaps. Each swap `x_j x_i -> x_i x_j` with `i < j` costs a factor `q^-1`.

/// `x_1^{a_1} ... x_m^{a_m}` as a word.
pub fn spell(exps: &[u32]) -> Vec<usize> {
    exps.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize)).collect()
}

/// Bubble sort with a swap counter; returns the `q` exponent and the sorted word.
pub fn normalize(word: &[usize]) -> (i64, Vec<usize>) {
    let mut w = word.to_vec();
    let mut e = 0i64;
    let mut swapped = true;
    while swapped {
        swapped = false;
        for k in 1..w.len() {
            if w[k - 1] > w[k] {
                w.swap(k - 1, k);
                e -= 1;
                swapped = true;
            }
        }
    }
    (e, w)
}

/// `x^a * x^b = q^e x^c`, returned as `(e, c)`.
pub fn word_product(a: &[u32], b: &[u32]) -> (i64, Vec<u32>) {
    let mut word = spell(a);
    word.extend(spell(b));
    let (e, w) = normalize(&word);
    let mut c = vec![0u32; a.len()];
    for i in w {
        c[i] += 1;
    }
    (e, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_swap() {
        // x2 * x1 = q^-1 x1 x2
        assert_eq!(word_product(&[0, 1], &[1, 0]), (-1, vec![1, 1]));
        assert_eq!(word_product(&[1, 0], &[0, 1]), (0, vec![1, 1]));
    }

    #[test]
    fn squares() {
        // x2^2 * x1^2 needs four swaps
        assert_eq!(word_product(&[0, 2], &[2, 0]), (-4, vec![2, 2]));
    }
}
