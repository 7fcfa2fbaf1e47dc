use crate::error::{domain, Error, Result};

/// `y = a · exp(b · x)` fitted by least squares on `ln y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpFit {
    pub a: f64,
    pub b: f64,
    /// Coefficient of determination of the log-linear fit.
    pub r_squared: f64,
}

impl ExpFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.a * (self.b * x).exp()
    }

    /// The `x` at which the model equals `y`, if the model ever does.
    pub fn solve_x(&self, y: f64) -> Option<f64> {
        if y <= 0.0 || self.b == 0.0 {
            return None;
        }
        let x = (y / self.a).ln() / self.b;
        x.is_finite().then_some(x)
    }
}

/// Log-linearized exponential regression.
pub fn exp_regression(points: &[(f64, f64)]) -> Result<ExpFit> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "exponential regression needs at least 3 points, got {n}"
        )));
    }
    if let Some((x, y)) = points.iter().find(|(x, y)| !(x.is_finite() && y.is_finite() && *y > 0.0)) {
        return Err(domain(format!("point ({x}, {y}) is not usable: y must be finite and > 0")));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1.ln()).sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mx;
        let dy = y.ln() - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::FitDegenerate("all x values coincide".into()));
    }
    let b = sxy / sxx;
    let ln_a = my - b * mx;
    let ssr = (syy - b * sxy).max(0.0);
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ssr / syy };
    Ok(ExpFit { a: ln_a.exp(), b, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn exact_recovery() {
        let pts: Vec<_> = [0.0_f64, 0.5, 1.0].iter().map(|&x| (x, (2.0 * x).exp())).collect();
        let fit = exp_regression(&pts).unwrap();
        assert_relative_eq!(fit.a, 1.0, max_relative = 1e-12);
        assert_relative_eq!(fit.b, 2.0, max_relative = 1e-12);
        assert_relative_eq!(fit.r_squared, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn noisy_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let noise = Normal::new(0.0, 0.01).unwrap();
        let pts: Vec<_> = (0..50)
            .map(|i| {
                let x = i as f64 * 0.1;
                (x, 3.0 * (-0.7 * x).exp() * (1.0 + noise.sample(&mut rng)))
            })
            .collect();
        let fit = exp_regression(&pts).unwrap();
        assert!((fit.a / 3.0 - 1.0).abs() < 0.05);
        assert!((fit.b / -0.7 - 1.0).abs() < 0.05);
    }

    #[test]
    fn constant_data_gives_flat_model() {
        let pts: Vec<_> = (0..5).map(|i| (i as f64, 4.2)).collect();
        let fit = exp_regression(&pts).unwrap();
        assert!(fit.b.abs() < 1e-12);
        assert_relative_eq!(fit.a, 4.2, max_relative = 1e-12);
    }

    #[test]
    fn rejects_non_positive_y_and_short_input() {
        assert!(matches!(exp_regression(&[(0.0, 1.0), (1.0, 0.0), (2.0, 1.0)]), Err(Error::Domain(_))));
        assert!(matches!(exp_regression(&[(0.0, 1.0), (1.0, 2.0)]), Err(Error::InsufficientData(_))));
        assert!(matches!(exp_regression(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]), Err(Error::FitDegenerate(_))));
    }

    #[test]
    fn solve_inverts_eval() {
        let fit = ExpFit { a: 2.0, b: 0.5, r_squared: 1.0 };
        let x = fit.solve_x(7.0).unwrap();
        assert_relative_eq!(fit.eval(x), 7.0, max_relative = 1e-14);
        assert!(ExpFit { b: 0.0, ..fit }.solve_x(7.0).is_none());
    }
}
