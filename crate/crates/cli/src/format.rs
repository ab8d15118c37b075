/// Formats `v` with 17 significant digits: fixed notation for moderate
/// magnitudes, scientific otherwise.
pub fn sig17(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return format!("{:.16}", 0.0);
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        format!("{v:.16e}")
    }
}
