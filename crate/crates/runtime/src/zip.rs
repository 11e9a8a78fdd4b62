//! Zippered iteration: lock-step tuples over equal-length iterables.
//!
//! Lengths are checked when the zip is constructed, before any iteration.
//! Unbounded participants adopt the common bounded length.

use crate::runtime::Iterable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZipError {
    pub lengths: (usize, usize),
}

impl std::fmt::Display for ZipError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "zip length mismatch: {} vs {}",
            self.lengths.0, self.lengths.1
        )
    }
}

impl std::error::Error for ZipError {}

fn common_len(lens: &[Option<usize>]) -> Result<usize, ZipError> {
    let mut bounded = lens.iter().flatten().copied();
    let first = bounded
        .next()
        .expect("zip requires at least one bounded iterable");
    for l in bounded {
        if l != first {
            return Err(ZipError {
                lengths: (first, l),
            });
        }
    }
    Ok(first)
}

pub struct Zip1<A>(A);

pub struct Zip2<A, B> {
    a: A,
    b: B,
    len: usize,
}

pub struct Zip3<A, B, C> {
    a: A,
    b: B,
    c: C,
    len: usize,
}

/// Identity wrapping of a single iterable.
pub fn zip1<A: Iterable>(a: A) -> Zip1<A> {
    Zip1(a)
}

pub fn try_zip2<A: Iterable, B: Iterable>(a: A, b: B) -> Result<Zip2<A, B>, ZipError> {
    let len = common_len(&[a.bounded_len(), b.bounded_len()])?;
    Ok(Zip2 { a, b, len })
}

pub fn zip2<A: Iterable, B: Iterable>(a: A, b: B) -> Zip2<A, B> {
    try_zip2(a, b).unwrap_or_else(|e| panic!("{e}"))
}

pub fn try_zip3<A: Iterable, B: Iterable, C: Iterable>(
    a: A,
    b: B,
    c: C,
) -> Result<Zip3<A, B, C>, ZipError> {
    let len = common_len(&[a.bounded_len(), b.bounded_len(), c.bounded_len()])?;
    Ok(Zip3 { a, b, c, len })
}

pub fn zip3<A: Iterable, B: Iterable, C: Iterable>(a: A, b: B, c: C) -> Zip3<A, B, C> {
    try_zip3(a, b, c).unwrap_or_else(|e| panic!("{e}"))
}

impl<A: Iterable> Iterable for Zip1<A> {
    type Item = A::Item;

    fn bounded_len(&self) -> Option<usize> {
        self.0.bounded_len()
    }

    fn at(&self, k: usize) -> A::Item {
        self.0.at(k)
    }
}

impl<A: Iterable, B: Iterable> Iterable for Zip2<A, B> {
    type Item = (A::Item, B::Item);

    fn bounded_len(&self) -> Option<usize> {
        Some(self.len)
    }

    fn at(&self, k: usize) -> Self::Item {
        (self.a.at(k), self.b.at(k))
    }
}

impl<A: Iterable, B: Iterable, C: Iterable> Iterable for Zip3<A, B, C> {
    type Item = (A::Item, B::Item, C::Item);

    fn bounded_len(&self) -> Option<usize> {
        Some(self.len)
    }

    fn at(&self, k: usize) -> Self::Item {
        (self.a.at(k), self.b.at(k), self.c.at(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range::{rng, rng_from};
    use crate::runtime::seq;

    #[test]
    fn lock_step_pairs() {
        let pairs: Vec<(i64, i64)> = seq(zip2(rng(1, 3), rng(4, 6))).collect();
        assert_eq!(pairs, vec![(1, 4), (2, 5), (3, 6)]);
    }

    #[test]
    fn single_iterable_is_identity() {
        let v: Vec<i64> = seq(zip1(rng(1, 3))).collect();
        assert_eq!(v, vec![1, 2, 3]);
    }

    #[test]
    fn mismatch_is_an_error_before_iteration() {
        let err = match try_zip2(rng(1, 3), rng(1, 4)) {
            Err(e) => e,
            Ok(_) => panic!("mismatched lengths accepted"),
        };
        assert_eq!(err.lengths, (3, 4));
    }

    #[test]
    fn unbounded_adopts_bounded_length() {
        let pairs: Vec<(i64, i64)> = seq(zip2(rng_from(10), rng(1, 3))).collect();
        assert_eq!(pairs, vec![(10, 1), (11, 2), (12, 3)]);
    }
}
