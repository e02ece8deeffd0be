//! Deterministic summation of per-element contributions.
//!
//! The pairwise tree always splits at the midpoint of the index range and
//! sums leaves of [`LEAF`] elements serially, so the rounding is identical
//! whether or not the two halves run on different threads.

use rayon::join;

const LEAF: usize = 32;
const PARALLEL_MIN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Fixed-shape pairwise tree.
    #[default]
    Pairwise,
    /// Serial Neumaier-compensated sum per lane.
    Compensated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumOptions {
    pub summation: Summation,
    /// Allow the pairwise tree to fork across the rayon pool.
    pub parallel: bool,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { summation: Summation::Pairwise, parallel: true }
    }
}

impl SumOptions {
    pub fn serial() -> Self {
        SumOptions { summation: Summation::Pairwise, parallel: false }
    }
}

fn add<const N: usize>(mut a: [f64; N], b: [f64; N]) -> [f64; N] {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn pairwise<const N: usize, F>(lo: usize, hi: usize, parallel: bool, f: &F) -> [f64; N]
where
    F: Fn(usize) -> [f64; N] + Sync,
{
    let len = hi - lo;
    if len <= LEAF {
        return (lo..hi).fold([0.0; N], |acc, i| add(acc, f(i)));
    }
    let mid = lo + len / 2;
    let (a, b) = if parallel && len >= PARALLEL_MIN {
        join(|| pairwise(lo, mid, parallel, f), || pairwise(mid, hi, parallel, f))
    } else {
        (pairwise(lo, mid, false, f), pairwise(mid, hi, false, f))
    };
    add(a, b)
}

fn compensated<const N: usize, F>(n: usize, f: &F) -> [f64; N]
where
    F: Fn(usize) -> [f64; N],
{
    let mut sum = [0.0; N];
    let mut carry = [0.0; N];
    for i in 0..n {
        let x = f(i);
        for k in 0..N {
            let t = sum[k] + x[k];
            if sum[k].abs() >= x[k].abs() {
                carry[k] += (sum[k] - t) + x[k];
            } else {
                carry[k] += (x[k] - t) + sum[k];
            }
            sum[k] = t;
        }
    }
    add(sum, carry)
}

/// Sum `f(0) + ... + f(n-1)` lane by lane.
pub fn sum_lanes<const N: usize, F>(n: usize, opts: SumOptions, f: F) -> [f64; N]
where
    F: Fn(usize) -> [f64; N] + Sync,
{
    match opts.summation {
        Summation::Pairwise => pairwise(0, n, opts.parallel, &f),
        Summation::Compensated => compensated(n, &f),
    }
}

pub fn sum_scalars<F>(n: usize, opts: SumOptions, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    sum_lanes::<1, _>(n, opts, |i| [f(i)])[0]
}
