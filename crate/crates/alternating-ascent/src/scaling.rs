//! Scaled evaluations on a 0..100 scale anchored at min (0), mean (50) and
//! max (100).

/// Maps `v` to the 0..100 scale. A collapsed side (`mean == min` or
/// `max == mean`) maps to 50, except at an exact endpoint that differs from
/// the mean.
pub fn scale_eval(v: f64, min: f64, mean: f64, max: f64) -> f64 {
    if v == mean {
        50.0
    } else if v < mean {
        if mean == min {
            50.0
        } else {
            50.0 * (v - min) / (mean - min)
        }
    } else if max == mean {
        50.0
    } else {
        50.0 + 50.0 * (v - mean) / (max - mean)
    }
}

pub fn unscale_eval(scale: f64, min: f64, mean: f64, max: f64) -> f64 {
    if scale <= 50.0 {
        min + (mean - min) * scale / 50.0
    } else {
        mean + (max - mean) * (scale - 50.0) / 50.0
    }
}
