/// binomial(n, k) mod p from the base-p digits of n and k.
pub fn lucas_binom(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binom(nd, kd, p64) % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

// binomial(a, b) mod p for 0 <= b <= a < p, where no factorial vanishes mod p.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    let mut inv = 1u64;
    let mut base = den;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    num * inv % p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(lucas_binom(21, 3, 3), (1330 % 3) as u32);
        assert_eq!(lucas_binom(21, 3, 3), 1);
        assert_eq!(lucas_binom(17, 0, 5), 1);
        assert_eq!(lucas_binom(4, 2, 2), 0);
        assert_eq!(lucas_binom(3, 5, 7), 0);
    }

    #[test]
    fn matches_exact_binomials() {
        // Pascal's triangle in u128 is exact for n <= 60.
        let mut rows = vec![vec![1u128]];
        for n in 1..=60usize {
            let prev = &rows[n - 1];
            let mut row = vec![1u128; n + 1];
            for k in 1..n {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        for p in [2u32, 3, 5] {
            for n in 0..=60u64 {
                for k in 0..=60u64 {
                    let exact = if k > n { 0 } else { rows[n as usize][k as usize] };
                    assert_eq!(lucas_binom(n, k, p) as u128, exact % p as u128, "n={n} k={k} p={p}");
                }
            }
        }
    }
}
