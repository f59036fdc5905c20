//! Small shared helpers: uniform grids and a scoped-thread parallel map.

/// n evenly spaced points covering [a, b] inclusive (n >= 2).
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + i as f64 * step })
        .collect()
}

/// Worker count: SDL_THREADS when set, otherwise available parallelism.
pub fn worker_count() -> usize {
    std::env::var("SDL_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Domain cut override: SDL_EPS when set, otherwise the given default.
pub fn domain_cut_or(default: f64) -> f64 {
    std::env::var("SDL_EPS")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|&e| e > 0.0 && e < 1.0)
        .unwrap_or(default)
}

/// Order-preserving parallel map over a slice using scoped threads. Falls
/// back to a sequential loop for small inputs or a single worker.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let workers = worker_count().min(items.len().max(1));
    if workers <= 1 || items.len() < 64 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut out: Vec<Option<U>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        for (inputs, outputs) in items.chunks(chunk).zip(out.chunks_mut(chunk)) {
            scope.spawn(|| {
                for (x, slot) in inputs.iter().zip(outputs.iter_mut()) {
                    *slot = Some(f(x));
                }
            });
        }
    });
    out.into_iter()
        .map(|o| o.expect("worker filled every slot"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(-1.0, 1.0, 5);
        assert_eq!(g, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn par_map_preserves_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = par_map(&xs, |&x| x * x);
        assert!(ys.iter().enumerate().all(|(i, &y)| y == (i * i) as u64));
    }
}
