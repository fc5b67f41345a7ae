//! Per-thread tally of scalar multiplications and divisions performed by the
//! polynomial and matrix primitives. Used for cost comparisons between
//! construction strategies.

use std::cell::Cell;

thread_local! {
    static MULS: Cell<u64> = const { Cell::new(0) };
}

/// Adds `n` to this thread's count. Formula evaluators outside the
/// polynomial and matrix kernels call this to charge their own products.
pub fn tally(n: usize) {
    MULS.with(|c| c.set(c.get() + n as u64));
}

/// Current count on this thread.
pub fn mul_count() -> u64 {
    MULS.with(|c| c.get())
}

pub fn reset_mul_count() {
    MULS.with(|c| c.set(0));
}

/// Runs `f` and returns its result together with the number of counted
/// multiplications it performed on this thread.
pub fn count_muls<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = mul_count();
    let out = f();
    (out, mul_count() - before)
}
