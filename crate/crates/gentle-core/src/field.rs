//! Exact coefficient fields: prime fields F_p and the rationals.

use alloc::vec::Vec;
use core::fmt::Debug;

pub trait Field {
    type Elem: Clone + PartialEq + Eq + PartialOrd + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// None for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// All field elements, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// F_p for a runtime prime p; elements are residues in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        assert!(p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0), "p must be prime");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
}

/// A rational number with reduced numerator/denominator, denominator > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl core::fmt::Display for Rat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Rat {
    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        if g == 0 {
            Rat { num: 0, den: 1 }
        } else {
            Rat { num: sign * num / g, den: sign * den / g }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat { num: 0, den: 1 }
    }

    fn one(&self) -> Rat {
        Rat { num: 1, den: 1 }
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        Rat::new(a.num * b.den + b.num * a.den, a.den * b.den)
    }

    fn neg(&self, a: &Rat) -> Rat {
        Rat { num: -a.num, den: a.den }
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        Rat::new(a.num * b.num, a.den * b.den)
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.num == 0 {
            None
        } else {
            Some(Rat::new(a.den, a.num))
        }
    }

    fn from_i64(&self, n: i64) -> Rat {
        Rat { num: n as i128, den: 1 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f5_arithmetic() {
        let f = PrimeField::new(5);
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.elements().unwrap().len(), 5);
    }

    #[test]
    fn rational_arithmetic() {
        let f = Rationals;
        let half = Rat::new(1, 2);
        let third = Rat::new(2, -6);
        assert_eq!(f.add(&half, &third), Rat::new(1, 6));
        assert_eq!(f.mul(&half, &f.inv(&half).unwrap()), f.one());
        assert!(f.is_zero(&f.sub(&half, &half)));
    }
}
