//! Atomic variables with Chapel's read/write/fetch method surface.
//! All operations are sequentially consistent.

use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};

#[derive(Debug, Default)]
pub struct AtomicInt(AtomicI64);

impl AtomicInt {
    pub fn new(value: i64) -> AtomicInt {
        AtomicInt(AtomicI64::new(value))
    }

    pub fn read(&self) -> i64 {
        self.0.load(Ordering::SeqCst)
    }

    pub fn write(&self, value: i64) {
        self.0.store(value, Ordering::SeqCst)
    }

    /// Returns the previous value.
    pub fn fetch_add(&self, value: i64) -> i64 {
        self.0.fetch_add(value, Ordering::SeqCst)
    }

    /// Returns the previous value.
    pub fn fetch_xor(&self, value: i64) -> i64 {
        self.0.fetch_xor(value, Ordering::SeqCst)
    }

    /// Returns true when the swap happened.
    pub fn compare_exchange(&self, expected: i64, desired: i64) -> bool {
        self.0
            .compare_exchange(expected, desired, Ordering::SeqCst, Ordering::SeqCst)
            .is_ok()
    }
}

#[derive(Debug, Default)]
pub struct AtomicBoolVar(AtomicBool);

impl AtomicBoolVar {
    pub fn new(value: bool) -> AtomicBoolVar {
        AtomicBoolVar(AtomicBool::new(value))
    }

    pub fn read(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }

    pub fn write(&self, value: bool) {
        self.0.store(value, Ordering::SeqCst)
    }

    pub fn compare_exchange(&self, expected: bool, desired: bool) -> bool {
        self.0
            .compare_exchange(expected, desired, Ordering::SeqCst, Ordering::SeqCst)
            .is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fetch_add_returns_previous() {
        let a = AtomicInt::new(0);
        assert_eq!(a.fetch_add(3), 0);
        assert_eq!(a.read(), 3);
    }

    #[test]
    fn double_xor_restores_initial() {
        let a = AtomicInt::new(0x1234);
        let lit = 0x0f0f_0f0f;
        a.fetch_xor(lit);
        a.fetch_xor(lit);
        assert_eq!(a.read(), 0x1234);
    }

    #[test]
    fn compare_exchange_is_conditional() {
        let a = AtomicInt::new(5);
        assert!(!a.compare_exchange(4, 9));
        assert!(a.compare_exchange(5, 9));
        assert_eq!(a.read(), 9);
    }
}
