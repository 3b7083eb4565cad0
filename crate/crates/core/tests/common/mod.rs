//! 256-bit reference arithmetic used as an independent oracle in tests.
#![allow(dead_code)]

use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use khintchine_core::Interval;

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CC: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CC.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct Hp(pub BigFloat);

impl Hp {
    pub fn f(x: f64) -> Hp {
        Hp(BigFloat::from_f64(x, PREC))
    }

    pub fn int(n: i64) -> Hp {
        Hp(BigFloat::from_i64(n, PREC))
    }

    pub fn parse(s: &str) -> Hp {
        with_cc(|cc| Hp(BigFloat::parse(s, Radix::Dec, PREC, RM, cc)))
    }

    pub fn pi() -> Hp {
        with_cc(|cc| Hp(cc.pi(PREC, RM)))
    }

    pub fn euler_gamma() -> Hp {
        Hp::parse("0.57721566490153286060651209008240243104215933593992359880576723488486772677766467")
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}", self.0).parse().expect("decimal rendering")
    }

    pub fn exp(&self) -> Hp {
        with_cc(|cc| Hp(self.0.exp(PREC, RM, cc)))
    }

    pub fn ln(&self) -> Hp {
        with_cc(|cc| Hp(self.0.ln(PREC, RM, cc)))
    }

    pub fn sqrt(&self) -> Hp {
        Hp(self.0.sqrt(PREC, RM))
    }

    pub fn sin(&self) -> Hp {
        with_cc(|cc| Hp(self.0.sin(PREC, RM, cc)))
    }

    pub fn cos(&self) -> Hp {
        with_cc(|cc| Hp(self.0.cos(PREC, RM, cc)))
    }

    pub fn acos(&self) -> Hp {
        with_cc(|cc| Hp(self.0.acos(PREC, RM, cc)))
    }

    pub fn pow(&self, s: &Hp) -> Hp {
        with_cc(|cc| Hp(self.0.pow(&s.0, PREC, RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Hp {
        Hp(self.0.powi(n, PREC, RM))
    }

    pub fn abs(&self) -> Hp {
        Hp(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

macro_rules! hp_op {
    ($tr:ident, $m:ident, $call:ident) => {
        impl $tr for Hp {
            type Output = Hp;
            fn $m(self, rhs: Hp) -> Hp {
                Hp(self.0.$call(&rhs.0, PREC, RM))
            }
        }
        impl $tr<&Hp> for &Hp {
            type Output = Hp;
            fn $m(self, rhs: &Hp) -> Hp {
                Hp(self.0.$call(&rhs.0, PREC, RM))
            }
        }
    };
}
hp_op!(Add, add, add);
hp_op!(Sub, sub, sub);
hp_op!(Mul, mul, mul);
hp_op!(Div, div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(self.0.neg())
    }
}

impl PartialEq for Hp {
    fn eq(&self, other: &Hp) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, other: &Hp) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

/// Whether the exact value `x` lies in `iv`.
pub fn inside(iv: Interval, x: &Hp) -> bool {
    let lo_ok = iv.lo() == f64::NEG_INFINITY || Hp::f(iv.lo()) <= *x;
    let hi_ok = iv.hi() == f64::INFINITY || *x <= Hp::f(iv.hi());
    lo_ok && hi_ok
}

/// Factorial-decay power series `Σ_{k>=1} term_k` summed for `n` terms.
fn series(n: usize, first: Hp, ratio: impl Fn(usize) -> Hp) -> Hp {
    let mut sum = Hp::f(0.0);
    let mut term = first;
    for k in 1..=n {
        sum = &sum + &term;
        term = &term * &ratio(k);
    }
    sum
}

const TERMS: usize = 400;

/// `Ei(x)` for `x < 0` by its power series at 256 bits.
pub fn ei(x: f64) -> Hp {
    let xh = Hp::f(x);
    let s = series(TERMS, xh.clone(), |k| {
        let k = Hp::int(k as i64);
        let k1 = &k + &Hp::int(1);
        &(&xh * &k) / &(&k1 * &k1)
    });
    &(&Hp::euler_gamma() + &(-xh).ln()) + &s
}

/// `si(x) = Si(x) - π/2`.
pub fn si(x: &Hp) -> Hp {
    let u = x * x;
    let s = series(TERMS, x.clone(), |k| {
        let n = Hp::int(2 * k as i64 - 1);
        let n1 = &n + &Hp::int(1);
        let n2 = &n + &Hp::int(2);
        -(&(&u * &n) / &(&(&n2 * &n2) * &n1))
    });
    &s - &(&Hp::pi() / &Hp::int(2))
}

/// `ci(x) = γ + ln x + Σ (-1)^k x^{2k} / (2k (2k)!)`.
pub fn ci(x: &Hp) -> Hp {
    let u = x * x;
    let first = -(&u / &Hp::int(4));
    let s = series(TERMS, first, |k| {
        let n = Hp::int(2 * k as i64);
        let n1 = &n + &Hp::int(1);
        let n2 = &n + &Hp::int(2);
        -(&(&u * &n) / &(&(&n2 * &n2) * &n1))
    });
    &(&Hp::euler_gamma() + &x.ln()) + &s
}
