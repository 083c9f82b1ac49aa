use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{HeightValue, Rational};

/// Default ceiling on the height of any iterate, in nats.
pub const DEFAULT_ITERATE_HEIGHT_CAP: f64 = 2000.0;

/// `[f(α), f⁽²⁾(α), …, f⁽ᵐ⁾(α)]`, exactly.
pub fn evaluate_and_iterate(f: &Poly, alpha: &Rational, m: usize, height_cap: f64) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(m);
    let mut z = alpha.clone();
    for i in 1..=m {
        z = f.eval(&z);
        let h = HeightValue::of_rational(&z).value;
        if h > height_cap {
            return Err(Error::resource(format!(
                "iterate {i} has height {h:.1} above the cap {height_cap}"
            )));
        }
        out.push(z.clone());
    }
    Ok(out)
}
