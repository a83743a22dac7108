//! Derivative-free maximization used by the support searches.

/// Decides which samples of a stream get polished: a sample qualifies when it
/// ranks among the best `restarts` values seen so far. The decision depends
/// only on the prefix, so results are monotone in the sample count.
pub(crate) struct RecordFilter {
    restarts: usize,
    best: Vec<f64>,
}

impl RecordFilter {
    pub fn new(restarts: usize) -> Self {
        Self {
            restarts: restarts.max(1),
            best: Vec::new(),
        }
    }

    pub fn admit(&mut self, value: f64) -> bool {
        if self.best.len() < self.restarts {
            self.best.push(value);
            self.best.sort_by(|a, b| b.total_cmp(a));
            return true;
        }
        let worst = *self.best.last().expect("nonempty");
        if value > worst {
            self.best.pop();
            self.best.push(value);
            self.best.sort_by(|a, b| b.total_cmp(a));
            true
        } else {
            false
        }
    }
}

/// Coordinate ascent over `moves` one-parameter perturbations. The step
/// halves after every sweep that fails to improve.
pub(crate) fn coordinate_ascent<S>(
    start: S,
    moves: usize,
    sweeps: usize,
    initial_step: f64,
    apply: impl Fn(&S, usize, f64) -> S,
    objective: impl Fn(&S) -> f64,
) -> (S, f64) {
    let mut state = start;
    let mut value = objective(&state);
    let mut step = initial_step;
    for _ in 0..sweeps {
        let mut improved = false;
        for m in 0..moves {
            for sign in [1.0, -1.0] {
                let cand = apply(&state, m, sign * step);
                let v = objective(&cand);
                if v > value {
                    state = cand;
                    value = v;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    (state, value)
}
