//! Rectangular domains: an ordered list of ranges, iterated row-major with
//! the last dimension varying fastest.

use crate::range::Range;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    dims: Vec<Range>,
}

pub fn d1(r: Range) -> Domain {
    Domain { dims: vec![r] }
}

pub fn d2(r0: Range, r1: Range) -> Domain {
    Domain {
        dims: vec![r0, r1],
    }
}

impl Domain {
    pub fn new(dims: Vec<Range>) -> Domain {
        assert!(!dims.is_empty(), "domain rank must be at least 1");
        Domain { dims }
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[Range] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.dims
            .iter()
            .map(|r| r.size().expect("domain dimensions must be bounded"))
            .product()
    }

    /// Storage position of an index tuple; `None` when out of the domain.
    pub fn linearize(&self, idx: &[i64]) -> Option<usize> {
        if idx.len() != self.dims.len() {
            return None;
        }
        let mut pos = 0usize;
        for (r, &i) in self.dims.iter().zip(idx) {
            let n = r.size().expect("domain dimensions must be bounded");
            let first = if r.stride() > 0 { r.index_at(0) } else { r.index_at(n.checked_sub(1)?) };
            let m = r.stride().unsigned_abs() as i64;
            let off = i - first;
            if off < 0 || off % m != 0 {
                return None;
            }
            let k = (off / m) as usize;
            // positions follow enumeration order within each dimension
            let k = if r.stride() > 0 { k } else { n - 1 - k };
            if k >= n {
                return None;
            }
            pos = pos * n + k;
        }
        Some(pos)
    }

    /// Index tuple at storage position `k`, row-major.
    pub fn unrank(&self, mut k: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.dims.len()];
        for (slot, r) in out.iter_mut().zip(&self.dims).rev() {
            let n = r.size().expect("domain dimensions must be bounded");
            *slot = r.index_at(k % n);
            k /= n;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.size()).map(move |k| self.unrank(k))
    }
}

/// Conversion used by generated array declarations, where the domain
/// expression may be a single range or a tuple of ranges.
pub trait IntoDomain {
    fn into_domain(self) -> Domain;
}

impl IntoDomain for Domain {
    fn into_domain(self) -> Domain {
        self
    }
}

impl IntoDomain for Range {
    fn into_domain(self) -> Domain {
        d1(self)
    }
}

impl IntoDomain for (Range, Range) {
    fn into_domain(self) -> Domain {
        d2(self.0, self.1)
    }
}

pub fn dom<D: IntoDomain>(d: D) -> Domain {
    d.into_domain()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::range::rng;

    #[test]
    fn row_major_iteration() {
        let d = d2(rng(1, 2), rng(1, 3));
        let idx: Vec<Vec<i64>> = d.iter().collect();
        assert_eq!(d.size(), 6);
        assert_eq!(
            idx,
            vec![
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![2, 1],
                vec![2, 2],
                vec![2, 3],
            ]
        );
    }

    #[test]
    fn linearize_is_inverse_of_unrank() {
        let d = d2(rng(0, 4).by(2), rng(1, 3));
        for k in 0..d.size() {
            assert_eq!(d.linearize(&d.unrank(k)), Some(k));
        }
        assert_eq!(d.linearize(&[1, 1]), None); // off-stride
        assert_eq!(d.linearize(&[0, 4]), None); // out of bounds
        assert_eq!(d.linearize(&[0]), None); // wrong rank
    }
}
