//! Dense polynomials over the integers. This is the working ring for
//! fraction-free elimination and for polynomial gcds.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn constant(v: BigInt) -> Self {
        IntPoly::new(vec![v])
    }

    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = BigInt::zero();
            if let Some(a) = self.c.get(i) {
                v += a;
            }
            if let Some(b) = o.c.get(i) {
                v += b;
            }
            out.push(v);
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = BigInt::zero();
            if let Some(a) = self.c.get(i) {
                v += a;
            }
            if let Some(b) = o.c.get(i) {
                v -= b;
            }
            out.push(v);
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Exact quotient, or `None` if `d` does not divide `self` in Z[μ].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dl = d.leading()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.c.len() - 1;
        if self.c.len() - 1 < dd {
            return None;
        }
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] -= &qk * dj;
                }
            }
            q[k] = qk;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    /// Pseudo-remainder: lc(d)^(deg a - deg d + 1) * a mod d.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dl = d.leading().expect("pseudo_rem by zero").clone();
        let dd = d.c.len() - 1;
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            let shift = rd - dd;
            let mut next: Vec<BigInt> = r.c.iter().map(|x| x * &dl).collect();
            for (j, dj) in d.c.iter().enumerate() {
                next[shift + j] -= &rl * dj;
            }
            r = IntPoly::new(next);
        }
        r
    }

    /// Greatest common divisor up to units, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }
}
