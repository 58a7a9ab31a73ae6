use rayon::prelude::*;

/// Maximum of `f(u, v)` over `0..n × 0..n` with the first maximizer in
/// row-major order. The reduction is deterministic regardless of how
/// rayon splits the rows.
pub(crate) fn max_over_pairs<F>(n: usize, f: F) -> (f64, usize, usize)
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|u| {
            let mut best = (f64::NEG_INFINITY, u, 0);
            for v in 0..n {
                let x = f(u, v);
                if x > best.0 || x.is_nan() && !best.0.is_nan() {
                    best = (x, u, v);
                }
            }
            best
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX, usize::MAX), pick)
}

fn pick(a: (f64, usize, usize), b: (f64, usize, usize)) -> (f64, usize, usize) {
    let key = |t: &(f64, usize, usize)| if t.0.is_nan() { f64::INFINITY } else { t.0 };
    match key(&a).total_cmp(&key(&b)) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if (a.1, a.2) <= (b.1, b.2) {
                a
            } else {
                b
            }
        }
    }
}
