use std::ops::{Range, RangeInclusive};
use std::thread;

/// Splits `lo..=hi` into at most `parts` contiguous, disjoint, nonempty
/// subranges whose sizes differ by at most one (larger ones first).
pub fn partition_range(lo: i64, hi: i64, parts: usize) -> Vec<RangeInclusive<i64>> {
    if lo > hi || parts == 0 {
        return Vec::new();
    }
    let total = (i128::from(hi) - i128::from(lo) + 1) as u128;
    split(total, parts)
        .into_iter()
        .map(|r| {
            let start = i128::from(lo) + r.start as i128;
            let end = i128::from(lo) + r.end as i128 - 1;
            start as i64..=end as i64
        })
        .collect()
}

fn split(total: u128, parts: usize) -> Vec<Range<u128>> {
    let parts = parts as u128;
    let (q, r) = (total / parts, total % parts);
    let mut out = Vec::new();
    let mut start = 0u128;
    for i in 0..parts {
        let len = q + u128::from(i < r);
        if len == 0 {
            break;
        }
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Runs `f` on disjoint chunks of `0..total` with up to `workers` scoped
/// threads and returns the per-chunk results in index order.
pub(crate) fn run_chunks<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let chunks: Vec<Range<u64>> = split(u128::from(total), workers.max(1))
        .into_iter()
        .map(|r| r.start as u64..r.end as u64)
        .collect();
    if chunks.len() <= 1 {
        return chunks.into_iter().map(&f).collect();
    }
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|c| s.spawn(move || f(c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
