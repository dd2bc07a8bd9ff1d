use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

/// A non-Archimedean absolute value `q^(-e)` with rational exponent `e`, or
/// the absolute value of zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AbsVal {
    Zero,
    Exp(Ratio<i64>),
}

impl AbsVal {
    /// `|z|` for lowest exponent `val / denom`.
    pub fn from_val(val: i64, denom: i64) -> AbsVal {
        AbsVal::Exp(Ratio::new(val, denom))
    }

    pub fn one() -> AbsVal {
        AbsVal::Exp(Ratio::from_integer(0))
    }

    /// The exponent `e` in `q^(-e)`; `None` for zero.
    pub fn exponent(self) -> Option<Ratio<i64>> {
        match self {
            AbsVal::Zero => None,
            AbsVal::Exp(e) => Some(e),
        }
    }

    pub fn mul(self, other: AbsVal) -> AbsVal {
        match (self, other) {
            (AbsVal::Exp(a), AbsVal::Exp(b)) => AbsVal::Exp(a + b),
            _ => AbsVal::Zero,
        }
    }

    /// `|z|^r`.
    pub fn pow(self, r: Ratio<i64>) -> AbsVal {
        match self {
            AbsVal::Zero => AbsVal::Zero,
            AbsVal::Exp(e) => AbsVal::Exp(e * r),
        }
    }

    pub fn is_zero(self) -> bool {
        self == AbsVal::Zero
    }
}

impl PartialOrd for AbsVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbsVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AbsVal::Zero, AbsVal::Zero) => Ordering::Equal,
            (AbsVal::Zero, _) => Ordering::Less,
            (_, AbsVal::Zero) => Ordering::Greater,
            // Larger exponent means smaller absolute value.
            (AbsVal::Exp(a), AbsVal::Exp(b)) => b.cmp(a),
        }
    }
}

impl fmt::Display for AbsVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsVal::Zero => write!(f, "0"),
            AbsVal::Exp(e) if *e.denom() == 1 => write!(f, "q^({})", -e.numer()),
            AbsVal::Exp(e) => write!(f, "q^({}/{})", -e.numer(), e.denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_by_size() {
        let a = AbsVal::from_val(1, 1);
        let b = AbsVal::from_val(1, 2);
        assert!(a < b);
        assert!(AbsVal::Zero < a);
        assert_eq!(AbsVal::from_val(2, 4), b);
        assert_eq!(a.mul(b), AbsVal::from_val(3, 2));
        assert_eq!(b.to_string(), "q^(-1/2)");
    }
}
