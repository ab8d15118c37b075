use astro_float::{BigFloat, Consts, Radix, RoundingMode};

pub(crate) const WORKING_BITS: usize = 192;

/// Per-call extended-precision context.
pub(crate) struct Hp {
    pub(crate) p: usize,
    pub(crate) rm: RoundingMode,
    cc: Consts,
}

impl Hp {
    pub(crate) fn new() -> Self {
        Hp {
            p: WORKING_BITS,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub(crate) fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub(crate) fn int(&self, n: u64) -> BigFloat {
        BigFloat::from_u64(n, self.p)
    }

    pub(crate) fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, self.rm, &mut self.cc)
    }

    pub(crate) fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, self.rm)
    }

    pub(crate) fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, self.rm)
    }

    pub(crate) fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, self.rm)
    }

    pub(crate) fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, self.rm)
    }

    pub(crate) fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, self.rm, &mut self.cc)
    }

    pub(crate) fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, self.rm, &mut self.cc)
    }

    #[cfg(test)]
    pub(crate) fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, self.rm)
    }

    pub(crate) fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, self.rm)
    }

    /// `e^a`, or `None` when `a` is so negative that the result would leave
    /// the exponent range; callers treat that as an exact zero.
    pub(crate) fn exp_or_zero(&mut self, a: &BigFloat) -> Option<BigFloat> {
        if approx_f64(a) < -1e8 {
            None
        } else {
            Some(self.exp(a))
        }
    }
}

/// Correctly rounded conversion through the decimal representation.
pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse().unwrap_or(f64::NAN)
}

/// Fast conversion accurate to a few ulps; used for thresholds only.
pub(crate) fn approx_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_zero() {
        return 0.0;
    }
    let (Some(words), Some(e)) = (x.mantissa_digits(), x.exponent()) else {
        return if x.is_inf_neg() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    };
    let top = *words.last().unwrap_or(&0) as f64 / 2f64.powi(64);
    let mag = top * 2f64.powi(e);
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}
