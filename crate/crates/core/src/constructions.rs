//! Turyn-type sequences to base sequences to T-sequences.

use std::fmt;

use crate::binseq::{half_combine, BinarySeq, NafProfile, Sequence, Sign, TernarySeq};
use crate::error::{Error, Result};
use crate::quad::TurynQuad;

/// `P, Q` of length `m` and `R, S` of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSequences {
    p: BinarySeq,
    q: BinarySeq,
    r: BinarySeq,
    s: BinarySeq,
}

impl BaseSequences {
    pub fn new(p: BinarySeq, q: BinarySeq, r: BinarySeq, s: BinarySeq) -> Result<Self> {
        for (x, y) in [(&p, &q), (&r, &s)] {
            if x.len() != y.len() {
                return Err(Error::LengthMismatch {
                    expected: x.len(),
                    found: y.len(),
                });
            }
        }
        Ok(Self { p, q, r, s })
    }

    /// `(m, n)`.
    pub fn lengths(&self) -> (usize, usize) {
        (self.p.len(), self.r.len())
    }

    pub fn parts(&self) -> [&BinarySeq; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// Combined autocorrelation of the four sequences, lags `0..max(m, n)`.
    pub fn combined_naf(&self) -> Vec<i64> {
        combined(&self.parts().map(|x| x.naf()))
    }

    pub fn to_machine(&self) -> String {
        machine(&self.parts())
    }
}

/// Four ternary sequences of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSequences {
    t: [TernarySeq; 4],
}

impl TSequences {
    pub fn new(t: [TernarySeq; 4]) -> Result<Self> {
        let len = t[0].len();
        if let Some(x) = t.iter().find(|x| x.len() != len) {
            return Err(Error::LengthMismatch {
                expected: len,
                found: x.len(),
            });
        }
        Ok(Self { t })
    }

    pub fn len(&self) -> usize {
        self.t[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parts(&self) -> [&TernarySeq; 4] {
        [&self.t[0], &self.t[1], &self.t[2], &self.t[3]]
    }

    pub fn combined_naf(&self) -> Vec<i64> {
        combined(&self.parts().map(|x| x.naf()))
    }

    pub fn to_machine(&self) -> String {
        machine(&self.parts())
    }
}

fn combined(nafs: &[NafProfile; 4]) -> Vec<i64> {
    let len = nafs.iter().map(|x| x.values().len()).max().unwrap_or(0);
    (0..len as i64)
        .map(|s| nafs.iter().map(|x| x.at(s)).sum())
        .collect()
}

fn machine<T: fmt::Display>(parts: &[&T; 4]) -> String {
    parts.iter().map(|x| format!("{x}\n")).collect()
}

impl fmt::Display for BaseSequences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={}\nQ={}\nR={}\nS={}", self.p, self.q, self.r, self.s)
    }
}

impl fmt::Display for TSequences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.parts();
        write!(f, "T1={a}\nT2={b}\nT3={c}\nT4={d}")
    }
}

/// `(C, D; C, -D; A; B)`, base sequences of lengths `2n-1, 2n-1, n, n`.
pub fn tt_to_base(s: &TurynQuad) -> Result<BaseSequences> {
    if !s.verify_tt() {
        return Err(Error::NotTuryn);
    }
    let [a, b, c, d] = s.parts();
    BaseSequences::new(c.concat(d), c.concat(&d.negate()), a.clone(), b.clone())
}

pub fn verify_base(bs: &BaseSequences) -> bool {
    bs.combined_naf().iter().skip(1).all(|&v| v == 0)
}

/// `((P+Q)/2, 0_n; (P-Q)/2, 0_n; 0_m, (R+S)/2; 0_m, (R-S)/2)`.
pub fn base_to_t(bs: &BaseSequences) -> Result<TSequences> {
    if !verify_base(bs) {
        return Err(Error::InvalidBase);
    }
    let (m, n) = bs.lengths();
    let (zm, zn) = (TernarySeq::zeros(m), TernarySeq::zeros(n));
    TSequences::new([
        half_combine(&bs.p, &bs.q, Sign::Plus)?.concat(&zn),
        half_combine(&bs.p, &bs.q, Sign::Minus)?.concat(&zn),
        zm.concat(&half_combine(&bs.r, &bs.s, Sign::Plus)?),
        zm.concat(&half_combine(&bs.r, &bs.s, Sign::Minus)?),
    ])
}

pub fn verify_t(ts: &TSequences) -> bool {
    let one_each = (0..ts.len()).all(|i| ts.t.iter().filter(|x| x.entries()[i] != 0).count() == 1);
    one_each && ts.combined_naf().iter().skip(1).all(|&v| v == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::tests::tt38;

    fn tt2() -> TurynQuad {
        TurynQuad::parse("++", "++", "+-", "+").unwrap()
    }

    #[test]
    fn tt2_chain() {
        let bs = tt_to_base(&tt2()).unwrap();
        assert_eq!(bs.lengths(), (3, 2));
        assert_eq!(bs.combined_naf(), vec![10, 0, 0]);
        assert!(verify_base(&bs));
        let ts = base_to_t(&bs).unwrap();
        let rows: Vec<&[i8]> = ts.parts().iter().map(|x| x.entries()).collect();
        assert_eq!(rows[0], &[1, -1, 0, 0, 0]);
        assert_eq!(rows[1], &[0, 0, 1, 0, 0]);
        assert_eq!(rows[2], &[0, 0, 0, 1, 1]);
        assert_eq!(rows[3], &[0, 0, 0, 0, 0]);
        assert!(verify_t(&ts));
        assert_eq!(ts.to_machine(), "+-000\n00+00\n000++\n00000\n");
    }

    #[test]
    fn tt38_chain() {
        let bs = tt_to_base(&tt38()).unwrap();
        assert_eq!(bs.parts().map(|x| x.len()), [75, 75, 38, 38]);
        assert!(verify_base(&bs));
        let ts = base_to_t(&bs).unwrap();
        assert_eq!(ts.len(), 113);
        assert!(verify_t(&ts));
        let nonzero: usize = ts.parts().iter().map(|x| x.nonzero_count()).sum();
        assert_eq!(nonzero, 113);
        for (k, x) in ts.parts().iter().enumerate() {
            let support = x
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, _)| i);
            for i in support {
                assert_eq!(k < 2, i < 75);
            }
        }
    }

    #[test]
    fn perturbed_base_fails() {
        let bs = tt_to_base(&tt2()).unwrap();
        let mut p = bs.p.entries().to_vec();
        p[0] = -p[0];
        let broken = BaseSequences::new(
            BinarySeq::new(p).unwrap(),
            bs.q.clone(),
            bs.r.clone(),
            bs.s.clone(),
        )
        .unwrap();
        assert!(!verify_base(&broken));
        assert!(matches!(base_to_t(&broken), Err(Error::InvalidBase)));
    }

    #[test]
    fn rejects_non_turyn() {
        let q = TurynQuad::parse("+-", "++", "+-", "+").unwrap();
        assert!(matches!(tt_to_base(&q), Err(Error::NotTuryn)));
    }

    #[test]
    fn t_requires_one_nonzero_per_position() {
        let z = TernarySeq::zeros(2);
        let one = TernarySeq::new(vec![1, 0]).unwrap();
        let ts = TSequences::new([one, z.clone(), z.clone(), z]).unwrap();
        assert!(!verify_t(&ts));
        assert!(TSequences::new([
            TernarySeq::zeros(1),
            TernarySeq::zeros(2),
            TernarySeq::zeros(2),
            TernarySeq::zeros(2)
        ])
        .is_err());
    }
}
