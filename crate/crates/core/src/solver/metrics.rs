use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorMetrics {
    /// `max |ref - cal| / max |ref|`.
    pub max_rel: f64,
    /// `sqrt(sum |ref - cal|^2 / sum |ref|^2)`.
    pub rms: f64,
    /// Points that entered the metrics.
    pub count: usize,
}

/// Field error over unmasked points; `mask[i] = true` excludes point `i`.
pub fn error_metrics(reference: &[Complex64], computed: &[Complex64], mask: &[bool]) -> Result<ErrorMetrics> {
    if reference.len() != computed.len() || reference.len() != mask.len() {
        return Err(Error::invalid(format!(
            "metric inputs differ in length: {} / {} / {}",
            reference.len(),
            computed.len(),
            mask.len()
        )));
    }
    let mut max_ref = 0.0f64;
    let mut max_diff = 0.0f64;
    let mut sum_ref = 0.0;
    let mut sum_diff = 0.0;
    let mut count = 0;
    for ((r, c), &m) in reference.iter().zip(computed).zip(mask) {
        if m {
            continue;
        }
        let d = (r - c).norm();
        max_ref = max_ref.max(r.norm());
        max_diff = max_diff.max(d);
        sum_ref += r.norm_sqr();
        sum_diff += d * d;
        count += 1;
    }
    if count == 0 || max_ref == 0.0 {
        return Err(Error::invalid("no unmasked points with a nonzero reference"));
    }
    Ok(ErrorMetrics {
        max_rel: max_diff / max_ref,
        rms: (sum_diff / sum_ref).sqrt(),
        count,
    })
}

/// `||sigma - sigma_ref||_2 / ||sigma_ref||_2` over a common angle set.
pub fn rcs_relative_l2(reference: &[f64], computed: &[f64]) -> Result<f64> {
    if reference.len() != computed.len() || reference.is_empty() {
        return Err(Error::invalid("scattering-width curves must be nonempty and equally sampled"));
    }
    let num: f64 = reference.iter().zip(computed).map(|(r, c)| (r - c) * (r - c)).sum();
    let den: f64 = reference.iter().map(|r| r * r).sum();
    if den == 0.0 {
        return Err(Error::invalid("reference scattering width is identically zero"));
    }
    Ok((num / den).sqrt())
}
