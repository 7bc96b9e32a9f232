use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::CountError;

/// Largest dimension covered by the upper-bound theorems.
pub const PROVEN_MAX_DIM: u32 = 4;

fn fact(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn check_n(n: u32) -> Result<(), CountError> {
    if n == 0 {
        Err(CountError::Dimension)
    } else {
        Ok(())
    }
}

fn exact_div(num: BigUint, den: BigUint) -> BigUint {
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "closed form must be integral");
    q
}

/// `N̂_q^n = (q+n)!(q+n+1)! / (q!(q+1)!n!(n+1)!)`: the bound on the number of
/// symmetry operators of order at most `q`.
pub fn count_nhat(n: u32, q: u32) -> Result<BigUint, CountError> {
    check_n(n)?;
    Ok(exact_div(
        fact(q + n) * fact(q + n + 1),
        fact(q) * fact(q + 1) * fact(n) * fact(n + 1),
    ))
}

/// `S_{j,q}^n = (j+n−1)!(q+n)!(q−j+1) / (n!(n−1)!j!(q+1)!)`: parameters of a
/// rank-`j`, order-`q−j+1` generalized Killing tensor.
pub fn count_s(n: u32, q: u32, j: u32) -> Result<BigUint, CountError> {
    check_n(n)?;
    if j > q {
        return Err(CountError::RankOutOfRange { j, q });
    }
    Ok(exact_div(
        fact(j + n - 1) * fact(q + n) * BigUint::from(q - j + 1),
        fact(n) * fact(n - 1) * fact(j) * fact(q + 1),
    ))
}

/// `K_j^n = (j+n−1)!(j+n)! / (j!(j+1)!(n−1)!n!)`: parameters of a rank-`j`
/// Killing tensor (order 1).
pub fn count_k(n: u32, j: u32) -> Result<BigUint, CountError> {
    check_n(n)?;
    Ok(exact_div(
        fact(j + n - 1) * fact(j + n),
        fact(j) * fact(j + 1) * fact(n - 1) * fact(n),
    ))
}

/// `Ñ_q^n = Σ_{j=0..q} K_j^n`.
pub fn count_ntilde(n: u32, q: u32) -> Result<BigUint, CountError> {
    (0..=q).map(|j| count_k(n, j)).sum()
}

/// Polynomial closed forms of `Ñ_q^n` for `n <= 4`.
pub fn count_ntilde_closed(n: u32, q: u32) -> Result<BigUint, CountError> {
    let p_n = match n {
        1 => return Ok(BigUint::from(q + 1)),
        2 => BigUint::one(),
        3 => BigUint::from(2 * q + 5),
        4 => BigUint::from(5 * q * q + 30 * q + 42),
        _ => return Err(CountError::NoClosedForm { n }),
    };
    Ok(exact_div(fact(q + n + 1) * p_n, fact(q) * fact(2 * n - 1)))
}

/// All counting functions for one `(n, q)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CountTable {
    pub n: u32,
    pub q: u32,
    pub n_hat: BigUint,
    pub n_tilde: BigUint,
    pub s: Vec<BigUint>,
    pub k: Vec<BigUint>,
    /// Set for `n > 4`, where the bounds are not established.
    pub outside_proven_range: bool,
}

impl CountTable {
    pub fn new(n: u32, q: u32) -> Result<Self, CountError> {
        Ok(CountTable {
            n,
            q,
            n_hat: count_nhat(n, q)?,
            n_tilde: count_ntilde(n, q)?,
            s: (0..=q).map(|j| count_s(n, q, j)).collect::<Result<_, _>>()?,
            k: (0..=q).map(|j| count_k(n, j)).collect::<Result<_, _>>()?,
            outside_proven_range: n > PROVEN_MAX_DIM,
        })
    }

    /// `Σ S = N̂` and `Σ K = Ñ`.
    pub fn is_consistent(&self) -> bool {
        self.s.iter().sum::<BigUint>() == self.n_hat && self.k.iter().sum::<BigUint>() == self.n_tilde
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn nhat_values() {
        assert_eq!(count_nhat(1, 0).unwrap(), u(1));
        assert_eq!(count_nhat(1, 2).unwrap(), u(6));
        assert_eq!(count_nhat(3, 1).unwrap(), u(10));
        assert_eq!(count_nhat(3, 2).unwrap(), u(50));
    }

    #[test]
    fn s_values() {
        for q in 0..6 {
            assert_eq!(count_s(1, q, 0).unwrap(), u(q + 1));
        }
        assert_eq!(count_s(2, 1, 1).unwrap(), u(3));
        let total: BigUint = (0..=2).map(|j| count_s(3, 2, j).unwrap()).sum();
        assert_eq!(total, u(50));
        assert_eq!(count_s(2, 1, 2), Err(CountError::RankOutOfRange { j: 2, q: 1 }));
    }

    #[test]
    fn k_and_ntilde_values() {
        assert_eq!(count_k(3, 1).unwrap(), u(6));
        assert_eq!(count_k(3, 2).unwrap(), u(20));
        for q in 0..8 {
            assert_eq!(count_ntilde(1, q).unwrap(), u(q + 1));
        }
        assert_eq!(count_ntilde_closed(3, 1).unwrap(), u(7));
        assert_eq!(count_ntilde(3, 1).unwrap(), u(7));
        assert_eq!(count_ntilde(2, 1).unwrap(), u(4));
    }

    #[test]
    fn table_flags_large_dimensions() {
        assert!(!CountTable::new(4, 2).unwrap().outside_proven_range);
        let t = CountTable::new(5, 2).unwrap();
        assert!(t.outside_proven_range);
        assert!(t.is_consistent());
        assert_eq!(count_ntilde_closed(5, 2), Err(CountError::NoClosedForm { n: 5 }));
        assert_eq!(count_nhat(0, 1), Err(CountError::Dimension));
    }
}
