/// Circular shift: output index `i` holds input index `(i - ell) mod d`.
pub fn circular_shift(signal: &[f64], ell: i64) -> Vec<f64> {
    let d = signal.len();
    if d == 0 {
        return Vec::new();
    }
    let s = ell.rem_euclid(d as i64) as usize;
    let mut out = Vec::with_capacity(d);
    out.extend_from_slice(&signal[d - s..]);
    out.extend_from_slice(&signal[..d - s]);
    out
}
