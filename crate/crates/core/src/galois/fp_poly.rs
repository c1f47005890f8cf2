//! Dense polynomials over a prime field F_p, coefficients stored constant term first.
//!
//! Only what field construction needs: reduction, multiplication modulo a
//! polynomial, gcd, and the irreducibility test.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2) mod p
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `f`, where `f` is nonzero and trimmed.
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
        if c != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let sub = c * fi as u64 % p as u64;
                let slot = &mut r[shift + i];
                *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * li % p as u64) as u32;
        }
    }
    x
}

/// Ben-Or test: a degree-d polynomial f is irreducible iff
/// gcd(f, x^(p^k) - x mod f) = 1 for every 1 <= k <= d/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    let x = vec![0, 1];
    let mut power = rem(&x, &f, p);
    for _ in 1..=d / 2 {
        // power <- power^p mod f
        let mut acc = vec![1];
        for _ in 0..p {
            acc = mulmod(&acc, &power, &f, p);
        }
        power = acc;
        let g = gcd(&f, &sub(&power, &x, p), p);
        if g != [1] {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| {
            let mut acc = 0u64;
            for &c in f.iter().rev() {
                acc = (acc * x as u64 + c as u64) % p as u64;
            }
            acc == 0
        })
    }

    #[test]
    fn quadratics_and_cubics_match_root_test() {
        // For degree 2 and 3, irreducible <=> no root in F_p.
        for p in [2u32, 3, 5, 7] {
            for d in [2usize, 3] {
                let count = p.pow(d as u32);
                for idx in 0..count {
                    let mut f: Vec<u32> = (0..d).map(|i| idx / p.pow(i as u32) % p).collect();
                    f.push(1);
                    assert_eq!(is_irreducible(&f, p), !has_root(&f, p), "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn quartic_product_of_quadratics_is_reducible() {
        // (x^2+1)^2 = x^4 + 2x^2 + 1 over F_3 has no root but is reducible.
        let f = vec![1, 0, 2, 0, 1];
        assert!(!has_root(&f, 3));
        assert!(!is_irreducible(&f, 3));
        // x^4 + x + 2 is irreducible over F_3 (a primitive polynomial).
        assert!(is_irreducible(&[2, 1, 0, 0, 1], 3));
    }

    #[test]
    fn gcd_is_monic() {
        let a = mul(&[1, 1], &[2, 1], 3);
        let b = mul(&[1, 1], &[0, 1], 3);
        assert_eq!(gcd(&a, &b, 3), vec![1, 1]);
    }
}
