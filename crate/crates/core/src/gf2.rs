//! Arithmetic in `GF(2^l)` for `1 <= l <= 32`.
//!
//! Field elements are the low `l` bits of a `u64`. The modulus for each `l`
//! is the lowest-weight irreducible polynomial from the standard published
//! table (Seroussi, "Table of low-weight binary irreducible polynomials"),
//! embedded below so runs are bit-exact across builds. A unit test
//! re-verifies irreducibility of every entry with Rabin's test.

use crate::error::{Error, Result};

/// Exponents of the middle terms of the degree-`l` modulus
/// (the `x^l` and `1` terms are implicit).
const MIDDLE_TERMS: [&[u32]; 32] = [
    &[],        // l = 1:  x + 1
    &[1],       // l = 2:  x^2 + x + 1
    &[1],       // l = 3
    &[1],       // l = 4
    &[2],       // l = 5
    &[1],       // l = 6
    &[1],       // l = 7
    &[4, 3, 1], // l = 8
    &[1],       // l = 9
    &[3],       // l = 10
    &[2],       // l = 11
    &[3],       // l = 12
    &[4, 3, 1], // l = 13
    &[5],       // l = 14
    &[1],       // l = 15
    &[5, 3, 1], // l = 16
    &[3],       // l = 17
    &[3],       // l = 18
    &[5, 2, 1], // l = 19
    &[3],       // l = 20
    &[2],       // l = 21
    &[1],       // l = 22
    &[5],       // l = 23
    &[4, 3, 1], // l = 24
    &[3],       // l = 25
    &[4, 3, 1], // l = 26
    &[5, 2, 1], // l = 27
    &[1],       // l = 28
    &[2],       // l = 29
    &[1],       // l = 30
    &[3],       // l = 31
    &[7, 3, 2], // l = 32
];

pub fn modulus(ell: u32) -> Result<u64> {
    if !(1..=32).contains(&ell) {
        return Err(Error::FieldLogOutOfRange(ell));
    }
    let mut p = (1u64 << ell) | 1;
    for &e in MIDDLE_TERMS[(ell - 1) as usize] {
        p |= 1u64 << e;
    }
    Ok(p)
}

/// `GF(2^l)` with a fixed modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GfField {
    ell: u32,
    poly: u64,
}

impl GfField {
    pub fn new(ell: u32) -> Result<Self> {
        Ok(GfField {
            ell,
            poly: modulus(ell)?,
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn order_log2(&self) -> u32 {
        self.ell
    }

    pub fn mask(&self) -> u64 {
        if self.ell == 64 {
            !0
        } else {
            (1u64 << self.ell) - 1
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        reduce(clmul(a, b), self.poly, self.ell)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Carry-less product of two polynomials of degree < 32.
fn clmul(mut a: u64, mut b: u64) -> u64 {
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Reduce a polynomial of degree < 2*ell modulo `poly` (degree `ell`).
fn reduce(mut v: u64, poly: u64, ell: u32) -> u64 {
    let mut bit = 63 - v.leading_zeros().min(63);
    while v >> ell != 0 {
        if (v >> bit) & 1 == 1 {
            v ^= poly << (bit - ell);
        }
        bit -= 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    // Polynomial arithmetic mod `f` that does not assume irreducibility.
    fn pmod_mul(a: u64, b: u64, f: u64, deg: u32) -> u64 {
        reduce(clmul(a, b), f, deg)
    }

    fn pdeg(p: u64) -> i32 {
        63 - p.leading_zeros() as i32
    }

    fn pgcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            // a mod b by repeated top-bit cancellation
            while pdeg(a) >= pdeg(b) && a != 0 {
                a ^= b << (pdeg(a) - pdeg(b));
            }
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    /// Rabin irreducibility: x^(2^l) == x mod f, and for every prime p | l,
    /// gcd(x^(2^(l/p)) - x, f) = 1.
    fn is_irreducible(f: u64, ell: u32) -> bool {
        let x0 = reduce(0b10, f, ell);
        let frob = |rounds: u32| -> u64 {
            let mut x = x0;
            for _ in 0..rounds {
                x = pmod_mul(x, x, f, ell);
            }
            x
        };
        if frob(ell) != x0 {
            return false;
        }
        let mut primes = vec![];
        let mut m = ell;
        for p in 2..=ell {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
        }
        primes.iter().all(|&p| {
            let g = frob(ell / p) ^ x0;
            g != 0 && pgcd(g, f) == 1
        })
    }

    #[test]
    fn table_entries_are_irreducible() {
        for ell in 1..=32u32 {
            let f = modulus(ell).unwrap();
            assert!(is_irreducible(f, ell), "l = {ell}, poly {f:#x} reducible");
        }
    }

    #[test]
    fn field_axioms_small() {
        // Exhaustive in GF(2^4): associativity, commutativity, distributivity,
        // and nonzero elements form a group of order 15.
        let f = GfField::new(4).unwrap();
        for a in 0..16u64 {
            for b in 0..16u64 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..16u64 {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
        for a in 1..16u64 {
            assert_eq!(f.pow(a, 15), 1, "a = {a}");
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(GfField::new(0).is_err());
        assert!(GfField::new(33).is_err());
    }
}
