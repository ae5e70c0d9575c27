//! A scalar that counts its arithmetic operations.
//!
//! Running a generic kernel over [`Counted`] reveals exactly which operations
//! it performs. Counters are thread-local.

// Each operator impl also bumps a counter, which clippy reads as a typo.
#![allow(clippy::suspicious_arithmetic_impl)]

use std::cell::Cell;
use std::ops::{Add, Div, Mul, Neg, Sub};

thread_local! {
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts::ZERO) };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounts {
    pub add: u64,
    pub sub: u64,
    pub mul: u64,
    pub div: u64,
    pub neg: u64,
}

impl OpCounts {
    const ZERO: OpCounts = OpCounts { add: 0, sub: 0, mul: 0, div: 0, neg: 0 };
}

fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

/// Zeroes this thread's counters.
pub fn reset_counts() {
    COUNTS.with(|c| c.set(OpCounts::ZERO));
}

/// This thread's counters since the last reset.
pub fn counts() -> OpCounts {
    COUNTS.with(|c| c.get())
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Counted(pub f64);

impl Add for Counted {
    type Output = Counted;
    fn add(self, rhs: Counted) -> Counted {
        bump(|c| c.add += 1);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Counted;
    fn sub(self, rhs: Counted) -> Counted {
        bump(|c| c.sub += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Counted;
    fn mul(self, rhs: Counted) -> Counted {
        bump(|c| c.mul += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Div for Counted {
    type Output = Counted;
    fn div(self, rhs: Counted) -> Counted {
        bump(|c| c.div += 1);
        Counted(self.0 / rhs.0)
    }
}

impl Neg for Counted {
    type Output = Counted;
    fn neg(self) -> Counted {
        bump(|c| c.neg += 1);
        Counted(-self.0)
    }
}
