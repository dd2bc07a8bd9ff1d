use crate::algebra::{Field, Fq, FqPoly};

/// Base-q digits of a natural number, least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    n: u64,
    digits: Vec<u32>,
}

impl DigitExpansion {
    pub fn new(n: u64, q: u32) -> DigitExpansion {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % q as u64) as u32);
            m /= q as u64;
        }
        DigitExpansion { n, digits }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `alpha_0, ..., alpha_s`; empty for zero.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, k: usize) -> u32 {
        self.digits.get(k).copied().unwrap_or(0)
    }
}

/// `m_j = a_(alpha_0) + a_(alpha_1) x + ...` under the enumeration `a` of F_q.
pub fn m_seq(field: &Field, enumeration: &[Fq], j: u64) -> FqPoly {
    let d = DigitExpansion::new(j, field.q());
    let coeffs = d.digits().iter().map(|&a| enumeration[a as usize]).collect();
    FqPoly::from_coeffs(field, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_reassemble() {
        for n in [0u64, 1, 5, 9, 80, 1000] {
            let d = DigitExpansion::new(n, 3);
            let back: u64 = d.digits().iter().rev().fold(0, |acc, &a| acc * 3 + a as u64);
            assert_eq!(back, n);
            assert!(d.digits().last().is_none_or(|&a| a != 0));
        }
    }

    #[test]
    fn first_residues() {
        let f2 = Field::new(2, 1).unwrap();
        let e2 = f2.enumerate();
        let ms: Vec<FqPoly> = (0..4).map(|j| m_seq(&f2, &e2, j)).collect();
        let x = FqPoly::x(&f2);
        assert_eq!(ms, vec![FqPoly::zero(&f2), FqPoly::one(&f2), x.clone(), x.add(&FqPoly::one(&f2))]);

        let f3 = Field::new(3, 1).unwrap();
        let m5 = m_seq(&f3, &f3.enumerate(), 5);
        assert_eq!(m5, FqPoly::from_coeffs(&f3, vec![f3.from_int(2), Fq::ONE]));
    }
}
