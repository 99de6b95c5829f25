//! Shared number formatting for records and reports.

/// Scientific notation with 17 significant digits, enough to round-trip an f64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, 314.159_265_358_979_3, -2.5e-300, 6.02e23] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }
}
