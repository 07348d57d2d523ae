use std::fmt;

use crate::binseq::{BinarySeq, Sequence};
use crate::error::{Error, Result};

/// A quadruple `(A; B; C; D)` of binary sequences with lengths `(n, n, n, n-1)`.
///
/// Ordering is lexicographic on `(A, B, C, D)` entries and is only used to give
/// sets of quads a deterministic iteration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TurynQuad {
    a: BinarySeq,
    b: BinarySeq,
    c: BinarySeq,
    d: BinarySeq,
}

impl TurynQuad {
    pub fn new(a: BinarySeq, b: BinarySeq, c: BinarySeq, d: BinarySeq) -> Result<Self> {
        let n = a.len();
        if n == 0 || b.len() != n || c.len() != n || d.len() + 1 != n {
            return Err(Error::InvalidShape {
                a: a.len(),
                b: b.len(),
                c: c.len(),
                d: d.len(),
            });
        }
        Ok(Self { a, b, c, d })
    }

    /// Parses four `+`/`-` strings.
    pub fn parse(a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        Self::new(a.parse()?, b.parse()?, c.parse()?, d.parse()?)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &BinarySeq {
        &self.a
    }

    pub fn b(&self) -> &BinarySeq {
        &self.b
    }

    pub fn c(&self) -> &BinarySeq {
        &self.c
    }

    pub fn d(&self) -> &BinarySeq {
        &self.d
    }

    pub fn parts(&self) -> [&BinarySeq; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn into_parts(self) -> (BinarySeq, BinarySeq, BinarySeq, BinarySeq) {
        (self.a, self.b, self.c, self.d)
    }

    /// `N_A(i) + N_B(i) + 2 N_C(i) + 2 N_D(i)` for `0 <= i < n`.
    pub fn combined_naf(&self) -> Vec<i64> {
        let (na, nb, nc, nd) = (self.a.naf(), self.b.naf(), self.c.naf(), self.d.naf());
        (0..self.n() as i64)
            .map(|i| na.at(i) + nb.at(i) + 2 * nc.at(i) + 2 * nd.at(i))
            .collect()
    }

    /// True iff the combined autocorrelation vanishes at every lag `1..n-1`.
    /// Lag 0 always equals `6n - 2`.
    pub fn verify_tt(&self) -> bool {
        self.combined_naf()[1..].iter().all(|&v| v == 0)
    }

    pub fn row_sums(&self) -> [i64; 4] {
        self.parts().map(BinarySeq::row_sum)
    }

    /// `a_1 * a_n`.
    pub fn phi(&self) -> i8 {
        self.a.get(0) * self.a.get(self.n() - 1)
    }

    /// The six sign conditions of the canonical form, evaluated literally.
    pub fn is_canonical(&self) -> bool {
        let n = self.n();
        let (a, b, c, d) = (
            self.a.entries(),
            self.b.entries(),
            self.c.entries(),
            self.d.entries(),
        );

        // (i)
        if a[0] != 1 || a[n - 1] != 1 || b[0] != 1 || b[n - 1] != 1 || c[0] != 1 {
            return false;
        }
        if n > 1 && d[0] != 1 {
            return false;
        }
        // (ii), (iii)
        if !first_asymmetry_is_plus(a) || !first_asymmetry_is_plus(b) {
            return false;
        }
        // (iv)
        if let Some(i) = (0..n).find(|&i| c[i] == c[n - 1 - i]) {
            if c[i] != 1 {
                return false;
            }
        }
        // (v): d has length n-1; the mirror of 1-based i is n-i.
        if n > 1 {
            let last = d[n - 2];
            if let Some(i) = (0..n - 1).find(|&i| d[i] * d[n - 2 - i] != last) {
                if d[i] != 1 {
                    return false;
                }
            }
        }
        // (vi)
        if n > 2 {
            if a[1] != b[1] {
                if a[1] != 1 {
                    return false;
                }
            } else if a[n - 2] != 1 || b[n - 2] != -1 {
                return false;
            }
        }
        true
    }
}

fn first_asymmetry_is_plus(x: &[i8]) -> bool {
    let n = x.len();
    (0..n)
        .find(|&i| x[i] != x[n - 1 - i])
        .is_none_or(|i| x[i] == 1)
}

impl fmt::Display for TurynQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={}\nB={}\nC={}\nD={}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for TurynQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TurynQuad({}; {}; {}; {})",
            self.a, self.b, self.c, self.d
        )
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn example_n8() -> TurynQuad {
        TurynQuad::parse("++-+-+-+", "+------+", "+--++++-", "+++-++-").unwrap()
    }

    pub(crate) fn tt38() -> TurynQuad {
        TurynQuad::parse(
            "++++--+++++-+++---+-++-+++++-++------+",
            "+-+++----++-+-++--------+---+++-+-++-+",
            "+++-+-+++++-+++-+----+++-+--+--+++-++-",
            "+--++---++--++-+----+-+---+-++++-+--+",
        )
        .unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(TurynQuad::parse("++", "++", "+-", "+").unwrap().verify_tt());
        assert!(!TurynQuad::parse("++", "++", "++", "+").unwrap().verify_tt());
        assert!(example_n8().verify_tt());
        assert!(tt38().verify_tt());
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(
            TurynQuad::parse("++", "++", "+-", "++"),
            Err(Error::InvalidShape { .. })
        ));
        assert!(TurynQuad::parse("++", "+", "+-", "+").is_err());
    }

    #[test]
    fn canonical_examples() {
        assert!(example_n8().is_canonical());
        assert!(tt38().is_canonical());
        let (a, b, c, d) = example_n8().into_parts();
        let negated = TurynQuad::new(a.negate(), b, c, d).unwrap();
        assert!(!negated.is_canonical());
    }

    #[test]
    fn tt38_row_sums() {
        assert_eq!(tt38().row_sums(), [8, -4, 8, -3]);
        assert_eq!(tt38().c().row_sum(), 8);
    }

    #[test]
    fn phi_of_canonical_is_plus() {
        assert_eq!(example_n8().phi(), 1);
        assert_eq!(tt38().phi(), 1);
    }

    #[test]
    fn canonical_has_c_n_minus() {
        let q = tt38();
        assert_eq!(q.c().get(q.n() - 1), -1);
    }
}
