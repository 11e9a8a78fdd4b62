//! Dense arrays over rectangular domains.
//!
//! Element access goes through `&self` so data-parallel loop bodies can write
//! distinct elements concurrently without synchronization. Overlapping writes
//! to the same element require external synchronization (or the atomic
//! accessors), matching Chapel array semantics.

use std::cell::UnsafeCell;
use std::sync::atomic::{AtomicI64, Ordering};

use crate::domain::{d1, Domain};
use crate::range::rng;

pub struct Array<T> {
    domain: Domain,
    data: Box<[UnsafeCell<T>]>,
}

// Safety: concurrent access is restricted to distinct elements by the
// documented contract above; same-element concurrency must use fetch_xor &co.
unsafe impl<T: Send + Sync> Sync for Array<T> {}
unsafe impl<T: Send> Send for Array<T> {}

impl<T: Copy + Default> Array<T> {
    pub fn new(domain: Domain) -> Array<T> {
        Array::fill(domain, T::default())
    }
}

impl<T: Copy> Array<T> {
    pub fn fill(domain: Domain, value: T) -> Array<T> {
        let data = (0..domain.size())
            .map(|_| UnsafeCell::new(value))
            .collect();
        Array { domain, data }
    }

    pub fn from_vec(values: Vec<T>) -> Array<T> {
        let domain = d1(rng(0, values.len() as i64 - 1));
        let data = values.into_iter().map(UnsafeCell::new).collect();
        Array { domain, data }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.data.len()
    }

    fn pos(&self, idx: &[i64]) -> usize {
        match self.domain.linearize(idx) {
            Some(p) => p,
            None => panic!("array index {idx:?} outside domain"),
        }
    }

    #[inline]
    pub fn get(&self, i: i64) -> T {
        let p = self.pos(&[i]);
        unsafe { *self.data[p].get() }
    }

    #[inline]
    pub fn set(&self, i: i64, value: T) {
        let p = self.pos(&[i]);
        unsafe { *self.data[p].get() = value }
    }

    #[inline]
    pub fn get2(&self, i: i64, j: i64) -> T {
        let p = self.pos(&[i, j]);
        unsafe { *self.data[p].get() }
    }

    #[inline]
    pub fn set2(&self, i: i64, j: i64, value: T) {
        let p = self.pos(&[i, j]);
        unsafe { *self.data[p].get() = value }
    }

    pub fn getn(&self, idx: &[i64]) -> T {
        let p = self.pos(idx);
        unsafe { *self.data[p].get() }
    }

    pub fn setn(&self, idx: &[i64], value: T) {
        let p = self.pos(idx);
        unsafe { *self.data[p].get() = value }
    }

    pub fn to_vec(&self) -> Vec<T> {
        (0..self.data.len())
            .map(|p| unsafe { *self.data[p].get() })
            .collect()
    }
}

impl Array<i64> {
    /// Atomic xor on one element, linearizable under arbitrary concurrency.
    pub fn fetch_xor(&self, i: i64, value: i64) -> i64 {
        let p = self.pos(&[i]);
        // Safety: AtomicI64 has the same in-memory representation as i64 and
        // the cell pointer is valid and properly aligned for the array's
        // lifetime.
        let a = unsafe { AtomicI64::from_ptr(self.data[p].get()) };
        a.fetch_xor(value, Ordering::SeqCst)
    }
}

impl<T: Copy + PartialEq> PartialEq for Array<T> {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.to_vec() == other.to_vec()
    }
}

impl<T: Copy + std::fmt::Debug> std::fmt::Debug for Array<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Array")
            .field("domain", &self.domain)
            .field("data", &self.to_vec())
            .finish()
    }
}
