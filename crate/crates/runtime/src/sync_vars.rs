//! Full/empty synchronization variables.
//!
//! A `SyncVar` is a slot with a full/empty state bit: `write_ef` requires the
//! slot to be empty and fills it, `read_fe` requires it to be full and
//! empties it; both block until their precondition holds. A `Single` is a
//! write-once slot whose reads block until the single write happens.
//!
//! Waits block the calling task's thread. `coforall`/`begin`/`cobegin` tasks
//! each own a thread, so they may block freely; `forall` bodies share pool
//! workers and should not wait on sync variables.

use std::sync::{Condvar, Mutex};

#[derive(Debug, Default)]
pub struct SyncVar<T> {
    slot: Mutex<Option<T>>,
    changed: Condvar,
}

impl<T> SyncVar<T> {
    pub fn new() -> SyncVar<T> {
        SyncVar {
            slot: Mutex::new(None),
            changed: Condvar::new(),
        }
    }

    /// Blocks while full, then stores `value` and marks the slot full.
    pub fn write_ef(&self, value: T) {
        let mut slot = self.slot.lock().unwrap();
        while slot.is_some() {
            slot = self.changed.wait(slot).unwrap();
        }
        *slot = Some(value);
        self.changed.notify_all();
    }

    /// Blocks while empty, then takes the value and marks the slot empty.
    pub fn read_fe(&self) -> T {
        let mut slot = self.slot.lock().unwrap();
        loop {
            if let Some(v) = slot.take() {
                self.changed.notify_all();
                return v;
            }
            slot = self.changed.wait(slot).unwrap();
        }
    }

    pub fn is_full(&self) -> bool {
        self.slot.lock().unwrap().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingleWriteError;

impl std::fmt::Display for SingleWriteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "single variable written more than once")
    }
}

impl std::error::Error for SingleWriteError {}

#[derive(Debug, Default)]
pub struct Single<T> {
    slot: Mutex<Option<T>>,
    written: Condvar,
}

impl<T: Clone> Single<T> {
    pub fn new() -> Single<T> {
        Single {
            slot: Mutex::new(None),
            written: Condvar::new(),
        }
    }

    /// Exactly one write may succeed; later writes error.
    pub fn write(&self, value: T) -> Result<(), SingleWriteError> {
        let mut slot = self.slot.lock().unwrap();
        if slot.is_some() {
            return Err(SingleWriteError);
        }
        *slot = Some(value);
        self.written.notify_all();
        Ok(())
    }

    /// Blocks until written, then never blocks again.
    pub fn read(&self) -> T {
        let mut slot = self.slot.lock().unwrap();
        loop {
            if let Some(v) = slot.as_ref() {
                return v.clone();
            }
            slot = self.written.wait(slot).unwrap();
        }
    }

    pub fn is_written(&self) -> bool {
        self.slot.lock().unwrap().is_some()
    }
}
