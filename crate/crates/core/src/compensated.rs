//! Double-word arithmetic used by the degree recurrence.
//!
//! Only the handful of operations the recurrence needs are provided.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleWord {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleWord {
    pub(crate) fn from_f64(x: f64) -> Self {
        DoubleWord { hi: x, lo: 0.0 }
    }

    /// Exact difference of two doubles.
    pub(crate) fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, -b);
        DoubleWord { hi, lo }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleWord { hi, lo }
    }

    pub(crate) fn neg(self) -> Self {
        DoubleWord { hi: -self.hi, lo: -self.lo }
    }

    pub(crate) fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleWord { hi, lo }
    }

    pub(crate) fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        DoubleWord { hi, lo }
    }

    pub(crate) fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self.add(DoubleWord::from_f64(q1).mul_f64(b).neg());
        let q2 = r.hi / b;
        let r = r.add(DoubleWord::from_f64(q2).mul_f64(b).neg());
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleWord { hi, lo }.add(DoubleWord::from_f64(q3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rounding_error_of_sum() {
        let d = DoubleWord::diff(1.0, 1e-17);
        assert_eq!(d.hi, 1.0);
        assert_eq!(d.lo, -1e-17);
    }

    #[test]
    fn division_is_accurate_past_double_precision() {
        let third = DoubleWord::from_f64(1.0).div_f64(3.0);
        let back = third.mul_f64(3.0).add(DoubleWord::from_f64(-1.0));
        assert!(back.to_f64().abs() < 1e-30);
    }
}
