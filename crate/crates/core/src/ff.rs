//! Small finite fields `GF(p^k)` backed by full operation tables.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const FIELD_ORDER_CAP: u32 = 4096;

/// Elements are indices `0..order`; the base-`p` digits of an index are the
/// coefficients of its polynomial representative, constant term first.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    k: u32,
    order: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    modulus: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q = p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^k = -Σ m_i x^i for the monic modulus x^k + Σ m_i x^i.
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let t = top - k + i;
            prod[t] = (prod[t] + (p - m) % p * c) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl GaloisField {
    /// `GF(q)` from the first monic modulus admitting an element of
    /// multiplicative order `q − 1`.
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        if q > FIELD_ORDER_CAP {
            return Err(Error::InvalidArgument(format!(
                "field order {q} exceeds {FIELD_ORDER_CAP}"
            )));
        }
        for m in 0..q {
            let modulus = digits(m, p, k);
            if k > 1 && modulus[0] == 0 {
                continue;
            }
            let mul = Self::mul_table(p, k, &modulus);
            if let Some(g) = (1..q).find(|&g| Self::generates(&mul, q, g)) {
                return Ok(Self::assemble(p, k, modulus, mul, g));
            }
        }
        Err(Error::InvalidArgument(format!(
            "no primitive modulus found for GF({q})"
        )))
    }

    fn mul_table(p: u32, k: u32, modulus: &[u32]) -> Vec<u32> {
        let q = p.pow(k);
        let ds: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        let mut mul = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in a..q {
                let c = undigits(&poly_mulmod(&ds[a as usize], &ds[b as usize], modulus, p), p);
                mul[(a * q + b) as usize] = c;
                mul[(b * q + a) as usize] = c;
            }
        }
        mul
    }

    fn generates(mul: &[u32], q: u32, g: u32) -> bool {
        let (mut x, mut n) = (g, 1);
        while x != 1 {
            if x == 0 || n >= q {
                return false;
            }
            x = mul[(x * q + g) as usize];
            n += 1;
        }
        n == q - 1
    }

    fn assemble(p: u32, k: u32, modulus: Vec<u32>, mul: Vec<u32>, g: u32) -> Self {
        let q = p.pow(k);
        let ds: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        let mut add = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = ds[a as usize]
                    .iter()
                    .zip(&ds[b as usize])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[(a * q + b) as usize] = undigits(&s, p);
            }
        }
        let neg = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| add[(a * q + b) as usize] == 0)
                    .expect("additive inverse")
            })
            .collect();
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mul[(x * q + g) as usize];
        }
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[((q - 1 - log[a as usize]) % (q - 1)) as usize]
                }
            })
            .collect();
        GaloisField {
            p,
            k,
            order: q,
            add,
            mul,
            neg,
            inv,
            exp,
            log,
            modulus,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order + b) as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order + b) as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// The fixed primitive element.
    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    /// `ζ^i` for the fixed primitive element `ζ`.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % u64::from(self.order - 1)) as usize]
    }

    /// Discrete logarithm to base `ζ`; `a` must be nonzero.
    pub fn log(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        self.exp(u64::from(self.log(a)) * e)
    }

    /// Elements fixed by `x ↦ x^m`, i.e. the subfield of order `m`.
    pub fn subfield(&self, m: u32) -> Result<Vec<u32>> {
        let (p, k) = prime_power(m).ok_or_else(|| Error::InvalidArgument(format!("{m} is not a prime power")))?;
        if p != self.p || !self.k.is_multiple_of(k) {
            return Err(Error::InvalidArgument(format!(
                "GF({m}) is not a subfield of GF({})",
                self.order
            )));
        }
        Ok((0..self.order).filter(|&x| self.pow(x, u64::from(m)) == x).collect())
    }
}
