//! Integer sequences and closed forms used by the move-count and
//! class-count arguments.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `f_1 = f_2 = 1`, `f_i = f_(i-1) + f_(i-2)`; `f_0 = 0`.
///
/// # Panics
/// If the value does not fit in a `u128` (`i > 186`).
pub fn fibonacci(i: u32) -> u128 {
    if i == 0 {
        return 0;
    }
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 1..i {
        let next = a.checked_add(b).expect("Fibonacci number overflows u128");
        a = b;
        b = next;
    }
    b
}

/// True if `n` is one of `f_1, f_2, ...`.
pub fn is_fibonacci(n: u128) -> bool {
    let (mut a, mut b) = (1u128, 1u128);
    while a < n {
        match a.checked_add(b) {
            Some(c) => {
                a = b;
                b = c;
            }
            None => return b == n,
        }
    }
    a == n
}

/// Catalan numbers from `C_0 = 1`, `C_(n+1) = (4n+2)/(n+2) C_n`. The
/// division is exact at every step.
pub fn catalan(n: u32) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * (4 * k as u64 + 2) / (k as u64 + 2);
    }
    c
}

/// Tree-building moves for growing a complete binary tree from level 1 to
/// level `level`: `2^(level+2) - 4 level - 4`.
pub fn expo_moves(level: u32) -> u128 {
    assert!(level >= 1, "levels start at 1");
    (1u128 << (level + 2)) - 4 * level as u128 - 4
}

/// Tree-building moves for growing a Fibonacci tree from level 1 to
/// level `level`: `2 f_(level+4) - 4 level - 6`.
pub fn fib_moves(level: u32) -> u128 {
    assert!(level >= 1, "levels start at 1");
    2 * fibonacci(level + 4) - 4 * level as u128 - 6
}

/// Nodes of the Fibonacci tree of the given level: `f_(level+2) - 1`.
pub fn fibonacci_tree_nodes(level: u32) -> u128 {
    fibonacci(level + 2) - 1
}

/// The constant `p = log2 |Q| + 4 (2 + log2 (|Γ| + 1))` of the class bound.
pub fn bound_exponent(states: u64, tree_symbols: u64) -> f64 {
    (states as f64).log2() + 4.0 * (2.0 + ((tree_symbols + 1) as f64).log2())
}

/// Upper bound `2^(p 2^ell)` on the number of `ell`-equivalence classes of
/// a language accepted in real time by a machine with `states` states and
/// `tree_symbols` tree symbols.
///
/// `2^p = 256 |Q| (|Γ|+1)^4` is an integer, so the bound is computed
/// exactly as `(256 |Q| (|Γ|+1)^4)^(2^ell)`.
pub fn class_upper_bound(states: u64, tree_symbols: u64, ell: u32) -> BigUint {
    assert!(states >= 1 && tree_symbols >= 1, "arguments must be positive");
    let base = BigUint::from(256u32) * states * BigUint::from(tree_symbols + 1).pow(4);
    let mut bound = base;
    for _ in 0..ell {
        bound = &bound * &bound;
    }
    bound
}

/// `2^(2^(2 ell))`, the number of `ell`-equivalence classes exhibited by
/// the subset sample for the reversed-block language.
pub fn subset_class_count(ell: u32) -> BigUint {
    let mut n = BigUint::zero();
    n.set_bit(1u64 << (2 * ell), true);
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix() {
        let prefix: Vec<u128> = (1..=11).map(fibonacci).collect();
        assert_eq!(prefix, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert_eq!(fibonacci(186), 332825110087067562321196029789634457848);
        assert!(is_fibonacci(1) && is_fibonacci(89) && !is_fibonacci(7) && !is_fibonacci(0));
        assert!(is_fibonacci(fibonacci(186)));
    }

    #[test]
    fn catalan_values() {
        let cs: Vec<BigUint> = (0..=10).map(catalan).collect();
        let expected = [1u32, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        assert_eq!(cs, expected.iter().map(|&c| BigUint::from(c)).collect::<Vec<_>>());
    }

    #[test]
    fn move_counts() {
        assert_eq!(expo_moves(1), 0);
        assert_eq!(expo_moves(2), 4);
        assert_eq!(fib_moves(1), 0);
        assert_eq!(fib_moves(2), 2);
        assert_eq!(fibonacci_tree_nodes(6), 20);
    }

    #[test]
    fn bounds() {
        assert_eq!(class_upper_bound(1, 1, 1), BigUint::from(2u32).pow(24));
        assert_eq!(class_upper_bound(2, 1, 1), BigUint::from(2u32).pow(26));
        assert_eq!(class_upper_bound(4, 1, 1), BigUint::from(2u32).pow(28));
        assert_eq!(class_upper_bound(1, 1, 3), BigUint::from(2u32).pow(96));
        assert!((bound_exponent(4, 1) - 14.0).abs() < 1e-12);
        assert_eq!(subset_class_count(1), BigUint::from(16u32));
        assert_eq!(subset_class_count(2), BigUint::from(65536u32));
    }
}
