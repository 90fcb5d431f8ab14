//! Data-parallel map over a slice using scoped threads.
//!
//! All workloads in this library are pure per-item computations (quadrature
//! nodes, grid points), so a chunked fork-join is all that is needed. The
//! environment variable `BSZEGO_THREADS` caps the width; unset or invalid
//! values fall back to the machine's available parallelism.

pub fn thread_width() -> usize {
    if let Ok(v) = std::env::var("BSZEGO_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Map `f` over `items`, preserving order. Falls back to a sequential loop
/// for short inputs or width 1.
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let width = thread_width().min(items.len().max(1));
    if width <= 1 || items.len() < 16 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(width);
    let mut out: Vec<Option<U>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    let fref = &f;
    std::thread::scope(|scope| {
        let mut rest: &mut [Option<U>] = &mut out;
        let mut start = 0usize;
        while start < items.len() {
            let len = chunk.min(items.len() - start);
            let (head, tail) = rest.split_at_mut(len);
            rest = tail;
            let slice = &items[start..start + len];
            scope.spawn(move || {
                for (slot, item) in head.iter_mut().zip(slice) {
                    *slot = Some(fref(item));
                }
            });
            start += len;
        }
    });
    out.into_iter().map(|x| x.expect("worker filled slot")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<usize> = (0..100).collect();
        let out = par_map(&items, |&x| x * x);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, i * i);
        }
    }

    #[test]
    fn short_inputs_run_sequentially() {
        let items = [1, 2, 3];
        assert_eq!(par_map(&items, |&x| x + 1), vec![2, 3, 4]);
    }
}
