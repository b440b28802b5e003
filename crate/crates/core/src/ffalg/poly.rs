use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Fe, FieldCtx};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with GF(p) coefficients.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPoly {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl MultiPoly {
    pub fn zero(p: u32, nvars: usize) -> Self {
        MultiPoly { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u32, nvars: usize, c: i64) -> Self {
        let mut f = Self::zero(p, nvars);
        f.add_term(vec![0; nvars], c);
        f
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms(p: u32, nvars: usize, terms: &[(i64, &[u32])]) -> Result<Self> {
        let mut f = Self::zero(p, nvars);
        for &(c, e) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch { got: e.len(), want: nvars });
            }
            f.add_term(e.to_vec(), c);
        }
        Ok(f)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: i64) {
        debug_assert_eq!(exps.len(), self.nvars);
        let c = c.rem_euclid(self.p as i64) as u32;
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exps).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), (v as i64) * (c as i64));
        }
        out
    }

    pub fn add(&self, other: &MultiPoly) -> Self {
        let mut out = self.clone();
        for (e, &v) in &other.terms {
            out.add_term(e.clone(), v as i64);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (ea, &va) in &self.terms {
            for (eb, &vb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va as i64 * vb as i64);
            }
        }
        out
    }

    /// Rescales so that the coefficient of the greatest monomial is 1.
    pub fn monic(&self) -> Self {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, &lead)) => {
                let inv = (1..self.p).find(|&x| x * lead % self.p == 1).unwrap();
                self.scale(inv)
            }
        }
    }

    /// Evaluates at a point of GF(p^k)^nvars, where `ctx` has characteristic p.
    pub fn eval(&self, ctx: &FieldCtx, point: &[Fe]) -> Result<Fe> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { got: point.len(), want: self.nvars });
        }
        debug_assert_eq!(ctx.p(), self.p);
        let mut acc = Fe::ZERO;
        for (e, &c) in &self.terms {
            let mut t = Fe(c);
            for (&x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = ctx.mul(t, ctx.pow(x, k as u64));
                }
            }
            acc = ctx.add(acc, t);
        }
        Ok(acc)
    }

    /// All exponent vectors of total degree `deg` in `nvars` variables, in
    /// lexicographic order.
    pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
        fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if prefix.len() + 1 == nvars {
                prefix.push(deg);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=deg).rev() {
                prefix.push(e);
                rec(nvars, deg - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        rec(nvars, deg, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            match (c, vars.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", vars.join("*"))?,
                _ => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field;

    fn quartic() -> MultiPoly {
        MultiPoly::from_terms(3, 3, &[(1, &[2, 2, 0]), (1, &[0, 2, 2]), (1, &[2, 0, 2])]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f3 = field(3, 1).unwrap();
        let f = quartic();
        assert_eq!(f.eval(&f3, &[Fe(1), Fe(1), Fe(1)]).unwrap(), Fe(0));
        assert_eq!(f.eval(&f3, &[Fe(1), Fe(1), Fe(0)]).unwrap(), Fe(1));
        assert_eq!(f.eval(&f3, &[Fe(0); 3]).unwrap(), Fe(0));
        assert!(matches!(f.eval(&f3, &[Fe(1)]), Err(Error::ArityMismatch { got: 1, want: 3 })));
    }

    #[test]
    fn display_and_degree() {
        let f = quartic();
        assert_eq!(f.degree(), Some(4));
        assert!(f.is_homogeneous());
        assert_eq!(f.to_string(), "x1^2*x2^2 + x1^2*x3^2 + x2^2*x3^2");
    }

    #[test]
    fn monomial_count() {
        assert_eq!(MultiPoly::monomials_of_degree(3, 4).len(), 15);
        assert_eq!(MultiPoly::monomials_of_degree(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn cancellation_removes_terms() {
        let f = MultiPoly::from_terms(3, 2, &[(1, &[1, 0]), (2, &[1, 0])]).unwrap();
        assert!(f.is_zero());
    }
}
