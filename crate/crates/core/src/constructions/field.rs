//! Finite fields GF(q) for the small prime powers used by the projective
//! plane generator.

use crate::error::{Error, Result};

type BinOp = Box<dyn Fn(usize, usize) -> usize>;

/// Largest field order with a built-in representation.
pub const MAX_FIELD_ORDER: usize = 13;

/// Irreducible monic polynomials over GF(p), lowest coefficient first with the
/// leading 1 omitted: `x^2 + x + 1`, `x^3 + x + 1`, `x^2 + 1`.
const IRREDUCIBLE: &[(usize, usize, &[usize])] = &[(4, 2, &[1, 1]), (8, 2, &[1, 1, 0]), (9, 3, &[1, 0])];

/// Returns `(p, k)` with `q = p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// GF(q) with precomputed operation tables. Elements are `0..q`; for
/// `q = p^k` an element encodes the polynomial whose base-`p` digits are its
/// coefficients.
#[derive(Debug, Clone)]
pub struct GaloisField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidParameter(format!(
                "field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        let (add, mul): (BinOp, BinOp) = if k == 1 {
            (Box::new(move |a, b| (a + b) % p), Box::new(move |a, b| (a * b) % p))
        } else {
            let modulus = IRREDUCIBLE
                .iter()
                .find(|(order, _, _)| *order == q)
                .map(|(_, _, m)| m.to_vec())
                .expect("table covers every composite prime power up to the cap");
            let k = k as usize;
            let digits = move |mut a: usize| {
                let mut d = vec![0; k];
                for slot in d.iter_mut() {
                    *slot = a % p;
                    a /= p;
                }
                d
            };
            let encode = move |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
            (
                Box::new(move |a, b| {
                    let s: Vec<usize> = digits(a).iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
                    encode(&s)
                }),
                Box::new(move |a, b| {
                    let (da, db) = (digits(a), digits(b));
                    let mut prod = vec![0; 2 * k - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    // x^k = -(modulus) reduces the high terms.
                    for deg in (k..prod.len()).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        prod[deg] = 0;
                        for (i, m) in modulus.iter().enumerate() {
                            let slot = deg - k + i;
                            prod[slot] = (prod[slot] + (p - (c * m) % p)) % p;
                        }
                    }
                    encode(&prod[..k])
                }),
            )
        };
        let mut add_table = vec![0u8; q * q];
        let mut mul_table = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add_table[a * q + b] = add(a, b) as u8;
                mul_table[a * q + b] = mul(a, b) as u8;
            }
        }
        Ok(GaloisField { q, add: add_table, mul: mul_table })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }
}
