//! Arithmetic in GF(p) and GF(p^k).
//!
//! An element is stored as the base-p code of its coefficient vector in the
//! polynomial basis `1, x, ..., x^(k-1)`: the element `c_0 + c_1 x + ...` is
//! the integer `c_0 + c_1 p + c_2 p^2 + ...`. The prime subfield therefore
//! embeds as the codes `0..p`, which lets GF(p) matrices be used unchanged
//! inside any extension.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, as the base-p code of its coefficient vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const SMALL_LIMIT: u32 = 256;
const ZECH_LIMIT: u32 = 1 << 22;
const NO_LOG: u32 = u32::MAX;

enum Backend {
    /// k = 1 and p too large for tables.
    Prime,
    /// Full addition and multiplication tables, q <= 256.
    Small {
        add: Vec<u8>,
        mul: Vec<u8>,
        neg: Vec<u8>,
        inv: Vec<u8>,
    },
    /// Discrete log / Zech log tables.
    Zech {
        /// exp[i] = g^i for i < 2(q-1)
        exp: Vec<u32>,
        /// log[a] = i with g^i = a; log[0] unused
        log: Vec<u32>,
        /// zech[i] = log(1 + g^i), NO_LOG when 1 + g^i = 0
        zech: Vec<u32>,
    },
    /// Schoolbook polynomial arithmetic modulo the defining polynomial.
    Poly,
}

/// The field GF(p^k) together with its defining polynomial and lookup tables.
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients from degree 0 to k (last entry is 1).
    modulus: Vec<u32>,
    backend: Backend,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut code: u64, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (code % p as u64) as u32;
            code /= p as u64;
            d
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a != 0
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p). Coefficient
/// vectors are little-endian.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p - (c * mi) % p) % p;
            }
        }
        a.pop();
    }
    a
}

/// Brute-force irreducibility: no monic factor of degree 1..=k/2.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() as u32 - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d);
        for code in 0..count {
            let mut f = digits(code, p, d);
            f.push(1);
            if poly_rem(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible polynomial of degree k,
/// ordering candidates by the base-p code of their low coefficients.
pub fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut m = digits(code, p, k);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds GF(p^k) with the least monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<FieldCtx> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::InvalidField(format!("extension degree must be >= 1, got {k}")));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q < u32::MAX as u64).ok_or_else(|| {
            Error::InvalidField(format!("GF({p}^{k}) does not fit the 32-bit element encoding"))
        })? as u32;
        let modulus = least_irreducible(p, k);
        let mut ctx = FieldCtx { p, k, q, modulus, backend: Backend::Poly };
        ctx.backend = if q <= SMALL_LIMIT {
            ctx.small_tables()
        } else if k == 1 {
            Backend::Prime
        } else if q <= ZECH_LIMIT {
            ctx.zech_tables()
        } else {
            Backend::Poly
        };
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Field order p^k.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.k)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidField(format!(
                "coefficients {coeffs:?} are not a reduced element of GF({}^{})",
                self.p, self.k
            )));
        }
        Ok(Fe(pack(coeffs, self.p)))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.q))
    }

    /// Iterates over all field elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    fn poly_mul_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let da = digits(a as u64, p, self.k);
        let db = digits(b as u64, p, self.k);
        let mut prod = vec![0u32; 2 * self.k as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        pack(&poly_rem(&prod, &self.modulus, p), p)
    }

    fn poly_add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            let d = ((a % p as u64) + (b % p as u64)) % p as u64;
            out += d * place;
            place *= p as u64;
            a /= p as u64;
            b /= p as u64;
        }
        out as u32
    }

    fn poly_neg_code(&self, a: u32) -> u32 {
        let p = self.p;
        let d: Vec<u32> = digits(a as u64, p, self.k).into_iter().map(|c| (p - c) % p).collect();
        pack(&d, p)
    }

    fn small_tables(&self) -> Backend {
        let q = self.q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = self.poly_neg_code(a as u32) as u8;
            for b in 0..q {
                add[a * q + b] = self.poly_add_codes(a as u32, b as u32) as u8;
                let m = self.poly_mul_codes(a as u32, b as u32);
                mul[a * q + b] = m as u8;
                if m == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Backend::Small { add, mul, neg, inv }
    }

    fn zech_tables(&self) -> Backend {
        let q = self.q;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        for g in 2..q {
            let mut x = 1u32;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().take(n).enumerate() {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x;
                x = self.poly_mul_codes(x, g);
            }
            if ok && x == 1 {
                break;
            }
        }
        for i in 0..n {
            exp[n + i] = exp[i];
        }
        let mut log = vec![NO_LOG; q as usize];
        for (i, &e) in exp[..n].iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut zech = vec![NO_LOG; n];
        for i in 0..n {
            let s = self.poly_add_codes(exp[i], 1);
            if s != 0 {
                zech[i] = log[s as usize];
            }
        }
        Backend::Zech { exp, log, zech }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.backend {
            Backend::Small { add, .. } => Fe(add[a.0 as usize * self.q as usize + b.0 as usize] as u32),
            Backend::Prime => Fe((a.0 + b.0) % self.p),
            Backend::Zech { exp, log, zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                zech_add(exp, zech, self.q - 1, log[a.0 as usize], log[b.0 as usize])
            }
            Backend::Poly => Fe(self.poly_add_codes(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        match &self.backend {
            Backend::Small { neg, .. } => Fe(neg[a.0 as usize] as u32),
            Backend::Prime => Fe((self.p - a.0) % self.p),
            Backend::Zech { exp, log, .. } => {
                if a.0 == 0 || self.p == 2 {
                    return a;
                }
                let n = self.q - 1;
                Fe(exp[(log[a.0 as usize] + n / 2) as usize])
            }
            Backend::Poly => Fe(self.poly_neg_code(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.backend {
            Backend::Small { mul, .. } => Fe(mul[a.0 as usize * self.q as usize + b.0 as usize] as u32),
            Backend::Prime => Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Backend::Zech { exp, log, .. } => {
                if a.0 == 0 || b.0 == 0 {
                    return Fe::ZERO;
                }
                Fe(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
            }
            Backend::Poly => Fe(self.poly_mul_codes(a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.backend {
            Backend::Small { inv, .. } => Fe(inv[a.0 as usize] as u32),
            Backend::Prime => Fe(inv_mod(a.0, self.p)),
            Backend::Zech { exp, log, .. } => {
                let n = self.q - 1;
                Fe(exp[((n - log[a.0 as usize]) % n) as usize])
            }
            Backend::Poly => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut r = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// `dst[i] += f * src[i]` for all i.
    pub fn axpy(&self, dst: &mut [Fe], f: Fe, src: &[Fe]) {
        debug_assert_eq!(dst.len(), src.len());
        if f.is_zero() {
            return;
        }
        match &self.backend {
            Backend::Small { add, mul, .. } => {
                let q = self.q as usize;
                let row = &mul[f.0 as usize * q..(f.0 as usize + 1) * q];
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 != 0 {
                        d.0 = add[d.0 as usize * q + row[s.0 as usize] as usize] as u32;
                    }
                }
            }
            Backend::Zech { exp, log, zech } => {
                let n = self.q - 1;
                let lf = log[f.0 as usize];
                for (d, s) in dst.iter_mut().zip(src) {
                    if s.0 == 0 {
                        continue;
                    }
                    let lp = lf + log[s.0 as usize];
                    let lp = if lp >= n { lp - n } else { lp };
                    if d.0 == 0 {
                        *d = Fe(exp[lp as usize]);
                    } else {
                        *d = zech_add(exp, zech, n, log[d.0 as usize], lp);
                    }
                }
            }
            _ => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(f, *s));
                }
            }
        }
    }

    /// The Frobenius map a -> a^p.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }
}

#[inline]
fn zech_add(exp: &[u32], zech: &[u32], n: u32, la: u32, lb: u32) -> Fe {
    let d = if lb >= la { lb - la } else { lb + n - la };
    let z = zech[d as usize];
    if z == NO_LOG {
        Fe::ZERO
    } else {
        Fe(exp[(la + z) as usize])
    }
}

type Registry = Mutex<HashMap<(u32, u32), Arc<FieldCtx>>>;

static REGISTRY: OnceLock<Registry> = OnceLock::new();

/// Shared, lazily built field contexts. Table construction for GF(3^12) takes
/// a noticeable fraction of a second, so contexts are built once per process.
pub fn field(p: u32, k: u32) -> Result<Arc<FieldCtx>> {
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = reg.lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let f = Arc::new(FieldCtx::new(p, k)?);
    Ok(reg.lock().unwrap().entry((p, k)).or_insert(f).clone())
}
