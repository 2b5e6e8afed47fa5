//! AFGA angle schedule. The default decay is a stand-in; any policy is
//! truncated by the same stopping rules.

/// Produces the next angle from the current one.
pub trait SchedulePolicy {
    fn next(&self, gamma_degs: f64, delta_lambda_degs: f64) -> f64;
}

/// `g' = g * cos^2(dl / 2)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CosSquaredDecay;

impl SchedulePolicy for CosSquaredDecay {
    fn next(&self, gamma: f64, delta_lambda: f64) -> f64 {
        gamma * (delta_lambda.to_radians() / 2.0).cos().powi(2)
    }
}

pub fn afga_schedule(gamma0: f64, delta_lambda: f64, tol: f64, max_steps: usize) -> Vec<f64> {
    afga_schedule_with(&CosSquaredDecay, gamma0, delta_lambda, tol, max_steps)
}

/// Angles are kept while `|g| >= tol`, at most `max_steps` of them, and only
/// while the sequence strictly decreases.
pub fn afga_schedule_with(
    policy: &impl SchedulePolicy,
    gamma0: f64,
    delta_lambda: f64,
    tol: f64,
    max_steps: usize,
) -> Vec<f64> {
    let mut out = Vec::new();
    let mut g = gamma0;
    while out.len() < max_steps && g.abs() >= tol && g > 0.0 {
        if out.last().is_some_and(|&prev| g >= prev) {
            break;
        }
        out.push(g);
        g = policy.next(g, delta_lambda);
    }
    out
}
