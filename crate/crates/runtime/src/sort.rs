//! Task-parallel quicksort: the sequential algorithm with its two recursive
//! calls forked as subtasks above a cutoff size, run sequentially below it.

use crate::array::Array;
use crate::runtime::Runtime;

const PARALLEL_CUTOFF: usize = 4096;

// Hoare scheme with the first element as pivot; the returned split point is
// always < len - 1, so both recursive halves strictly shrink.
fn partition(data: &mut [i64]) -> usize {
    // median-of-three into slot 0, keeping sorted inputs off the worst case
    let (a, b, c) = (0, data.len() / 2, data.len() - 1);
    if data[b] < data[a] {
        data.swap(a, b);
    }
    if data[c] < data[b] {
        data.swap(b, c);
        if data[b] < data[a] {
            data.swap(a, b);
        }
    }
    data.swap(a, b);
    let pivot = data[0];
    let mut lo = 0usize;
    let mut hi = data.len();
    loop {
        loop {
            hi -= 1;
            if data[hi] <= pivot {
                break;
            }
        }
        while data[lo] < pivot {
            lo += 1;
        }
        if lo >= hi {
            return hi;
        }
        data.swap(lo, hi);
        lo += 1;
    }
}

fn quicksort(data: &mut [i64]) {
    if data.len() < 2 {
        return;
    }
    let mid = partition(data);
    let (left, right) = data.split_at_mut(mid + 1);
    if data_len_parallel(left.len(), right.len()) {
        rayon::join(|| quicksort(left), || quicksort(right));
    } else {
        quicksort(left);
        quicksort(right);
    }
}

fn data_len_parallel(l: usize, r: usize) -> bool {
    l + r >= PARALLEL_CUTOFF
}

/// Sorts in place on the runtime's worker pool.
pub fn parallel_quicksort(rt: &Runtime, data: &mut [i64]) {
    rt.pool().install(|| quicksort(data));
}

/// Returns a sorted copy of `a` over the same domain.
pub fn sort_array(rt: &Runtime, a: &Array<i64>) -> Array<i64> {
    let mut v = a.to_vec();
    parallel_quicksort(rt, &mut v);
    let out = Array::fill(a.domain().clone(), 0);
    for (k, val) in v.into_iter().enumerate() {
        let idx = a.domain().unrank(k);
        out.setn(&idx, val);
    }
    out
}
