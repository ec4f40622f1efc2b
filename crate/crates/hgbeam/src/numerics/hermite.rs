use crate::error::{Error, Result};

/// Largest supported polynomial order.
///
/// With arguments confined to |x| <= 6 the recurrence stays far inside the
/// double-precision dynamic range up to this order; beyond it the growth of
/// the coefficients starts eating significant digits.
pub const HERMITE_MAX_ORDER: u32 = 20;

/// Physicists' Hermite polynomial H_n(x).
///
/// Evaluated with the forward recurrence
/// `H_{n+1}(x) = 2 x H_n(x) - 2 n H_{n-1}(x)`, `H_0 = 1`, `H_1 = 2x`.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    if n > HERMITE_MAX_ORDER {
        return Err(Error::HermiteOrder {
            n,
            cap: HERMITE_MAX_ORDER,
        });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0; // H_0
    let mut cur = 2.0 * x; // H_1
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
