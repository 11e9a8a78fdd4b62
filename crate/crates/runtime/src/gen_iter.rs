//! Pull-based generator iterators: the observable contract of Chapel's
//! `iter` functions (ordered yields, then exhaustion) as a state-machine
//! closure pulled with `next()`.

pub struct GenIter<'a, T> {
    producer: Box<dyn FnMut() -> Option<T> + 'a>,
    done: bool,
}

impl<'a, T: 'a> GenIter<'a, T> {
    pub fn new<F: FnMut() -> Option<T> + 'a>(producer: F) -> GenIter<'a, T> {
        GenIter {
            producer: Box::new(producer),
            done: false,
        }
    }

    /// Constructs a generator that replays a pre-yielded sequence, the form
    /// emitted for compiled `iter` declarations.
    pub fn from_values(values: Vec<T>) -> GenIter<'a, T> {
        let mut it = values.into_iter();
        GenIter::new(move || it.next())
    }

    /// Next yielded value, or `None` once the producer is exhausted.
    /// Stays exhausted afterwards.
    pub fn next(&mut self) -> Option<T> {
        if self.done {
            return None;
        }
        match (self.producer)() {
            Some(v) => Some(v),
            None => {
                self.done = true;
                None
            }
        }
    }

    /// Materializes the remaining yields; the result is a bounded iterable
    /// usable with `for`/`forall`.
    pub fn collect_vec(mut self) -> Vec<T> {
        let mut out = Vec::new();
        while let Some(v) = self.next() {
            out.push(v);
        }
        out
    }
}

impl<'a, T: 'a> Iterator for GenIter<'a, T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        GenIter::next(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yields_in_order_then_exhausts() {
        let mut g = GenIter::from_values(vec![1, 2, 3]);
        assert_eq!(g.next(), Some(1));
        assert_eq!(g.next(), Some(2));
        assert_eq!(g.next(), Some(3));
        assert_eq!(g.next(), None);
        assert_eq!(g.next(), None);
    }

    #[test]
    fn empty_producer_is_immediately_exhausted() {
        let mut g: GenIter<i64> = GenIter::new(|| None);
        assert_eq!(g.next(), None);
    }

    #[test]
    fn fibonacci_first_five_pulls() {
        let mut state = (1i64, 1i64);
        let mut g = GenIter::new(move || {
            let out = state.0;
            state = (state.1, state.0 + state.1);
            Some(out)
        });
        let first: Vec<i64> = (0..5).map(|_| g.next().unwrap()).collect();
        assert_eq!(first, vec![1, 1, 2, 3, 5]);
    }

    #[test]
    fn bounded_generator_feeds_a_parallel_loop() {
        let rt = crate::runtime::Runtime::new(2);
        let values = GenIter::from_values((1i64..=10).collect()).collect_vec();
        let sum = crate::atomic::AtomicInt::new(0);
        rt.forall(values, |v| {
            sum.fetch_add(v);
        });
        assert_eq!(sum.read(), 55);
    }
}
