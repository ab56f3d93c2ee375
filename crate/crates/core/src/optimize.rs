//! Derivative-free minimisation: box-constrained Nelder-Mead and a seeded
//! multi-start driver.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Axis-aligned search box `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox<const N: usize> {
    pub lower: [f64; N],
    pub upper: [f64; N],
}

impl<const N: usize> SearchBox<N> {
    pub fn new(lower: [f64; N], upper: [f64; N]) -> Self {
        Self { lower, upper }
    }

    pub fn uniform(lower: f64, upper: f64) -> Self {
        Self::new([lower; N], [upper; N])
    }

    pub fn project(&self, x: &mut [f64; N]) {
        for ((xi, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *xi = xi.clamp(*lo, *hi);
        }
    }

    pub fn contains(&self, x: &[f64; N]) -> bool {
        x.iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .all(|((xi, lo), hi)| (*lo..=*hi).contains(xi))
    }

    fn sample(&self, rng: &mut impl Rng) -> [f64; N] {
        let mut x = [0.0; N];
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = rng.gen_range(self.lower[i]..self.upper[i]);
        }
        x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once the spread of simplex values drops below this.
    pub f_tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.25,
            f_tol: 1e-10,
            max_evals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMinimum<const N: usize> {
    pub x: [f64; N],
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Nelder-Mead with every trial point clamped into `bounds`.
///
/// After the simplex collapses, the search restarts from the incumbent with
/// a fresh simplex until a restart no longer improves by more than `f_tol`
/// or the evaluation budget runs out.
pub fn nelder_mead<const N: usize, F>(
    mut f: F,
    x0: [f64; N],
    bounds: &SearchBox<N>,
    opts: &NelderMeadOptions,
) -> LocalMinimum<N>
where
    F: FnMut(&[f64; N]) -> f64,
{
    let mut evals = 0usize;
    let mut eval = |x: &[f64; N], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut start = x0;
    bounds.project(&mut start);
    let mut best = LocalMinimum {
        x: start,
        f: eval(&start, &mut evals),
        evals: 0,
        converged: false,
    };

    loop {
        let before = best.f;
        let (x, fx, converged) = run_simplex(&mut eval, best.x, best.f, bounds, opts, &mut evals);
        if fx <= best.f {
            best.x = x;
            best.f = fx;
        }
        best.converged = converged;
        if !converged || evals >= opts.max_evals || before - best.f <= opts.f_tol {
            break;
        }
    }
    best.evals = evals;
    best
}

fn run_simplex<const N: usize>(
    eval: &mut impl FnMut(&[f64; N], &mut usize) -> f64,
    x0: [f64; N],
    f0: f64,
    bounds: &SearchBox<N>,
    opts: &NelderMeadOptions,
    evals: &mut usize,
) -> ([f64; N], f64, bool) {
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, f0));
    for i in 0..N {
        let mut x = x0;
        // step inward when the vertex would leave the box
        x[i] += if x[i] + opts.initial_step <= bounds.upper[i] {
            opts.initial_step
        } else {
            -opts.initial_step
        };
        bounds.project(&mut x);
        let fx = eval(&x, evals);
        simplex.push((x, fx));
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[N].1 - simplex[0].1;
        if spread <= opts.f_tol || !spread.is_finite() && simplex[0].1 == simplex[N].1 {
            return (simplex[0].0, simplex[0].1, true);
        }
        if *evals >= opts.max_evals {
            return (simplex[0].0, simplex[0].1, false);
        }
        if diameter(&simplex) < 1e-14 {
            return (simplex[0].0, simplex[0].1, true);
        }

        let mut centroid = [0.0; N];
        for (x, _) in &simplex[..N] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / N as f64;
            }
        }
        let along = |coef: f64| {
            let mut p = [0.0; N];
            for i in 0..N {
                p[i] = centroid[i] + coef * (simplex[N].0[i] - centroid[i]);
            }
            bounds.project(&mut p);
            p
        };

        let xr = along(-REFLECT);
        let fr = eval(&xr, evals);
        if fr < simplex[0].1 {
            let xe = along(-REFLECT * EXPAND);
            let fe = eval(&xe, evals);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[N].1 {
            let xc = along(-REFLECT * CONTRACT);
            (xc, eval(&xc, evals))
        } else {
            let xc = along(CONTRACT);
            (xc, eval(&xc, evals))
        };
        if fc < simplex[N].1.min(fr) {
            simplex[N] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            for i in 0..N {
                vertex.0[i] = anchor[i] + SHRINK * (vertex.0[i] - anchor[i]);
            }
            bounds.project(&mut vertex.0);
            vertex.1 = eval(&vertex.0, evals);
        }
    }
}

fn diameter<const N: usize>(simplex: &[([f64; N], f64)]) -> f64 {
    let mut d: f64 = 0.0;
    for (x, _) in &simplex[1..] {
        for i in 0..N {
            d = d.max((x[i] - simplex[0].0[i]).abs());
        }
    }
    d
}

/// Best of several seeded local searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiStartResult<const N: usize> {
    pub best: LocalMinimum<N>,
    /// Index of the start that produced `best`.
    pub start_index: usize,
    pub total_evals: usize,
    pub converged_starts: usize,
}

/// Uniform start point number `index` for `seed`.
///
/// Every start owns the ChaCha stream `index` under key `seed`, so a start
/// does not depend on how many others run or in which order.
pub fn start_point<const N: usize>(bounds: &SearchBox<N>, seed: u64, index: usize) -> [f64; N] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    bounds.sample(&mut rng)
}

/// Runs `num_starts` local searches in parallel and keeps the lowest value.
///
/// Starts that fail to converge are discarded unless none converged. Ties go
/// to the lowest start index, so the result is independent of scheduling.
pub fn multistart_minimize<const N: usize, F>(
    f: F,
    bounds: &SearchBox<N>,
    num_starts: usize,
    seed: u64,
    opts: &NelderMeadOptions,
) -> Option<MultiStartResult<N>>
where
    F: Fn(&[f64; N]) -> f64 + Sync,
{
    let runs: Vec<LocalMinimum<N>> = (0..num_starts)
        .into_par_iter()
        .map(|k| nelder_mead(&f, start_point(bounds, seed, k), bounds, opts))
        .collect();

    let total_evals = runs.iter().map(|r| r.evals).sum();
    let converged_starts = runs.iter().filter(|r| r.converged).count();
    let pick = |only_converged: bool| {
        runs.iter()
            .enumerate()
            .filter(|(_, r)| r.f.is_finite() && (r.converged || !only_converged))
            .fold(None::<(usize, &LocalMinimum<N>)>, |acc, (k, r)| match acc {
                Some((_, b)) if b.f <= r.f => acc,
                _ => Some((k, r)),
            })
    };
    let (start_index, best) = pick(true).or_else(|| pick(false))?;
    Some(MultiStartResult {
        best: *best,
        start_index,
        total_evals,
        converged_starts,
    })
}
