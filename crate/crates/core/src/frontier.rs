//! Two-ended depth-first filling of a quadruple.
//!
//! Level `k` (1-based) fixes positions `k` and `n+1-k` of `A`, `B`, `C` and
//! positions `k` and `n-k` of `D`. After level `k` every lag `s >= n-k` of the
//! combined autocorrelation is fully determined. Within a level the
//! sequences are filled in the order `C, A, B, D`; the lag `n-k` closes once
//! `B` is placed.
//!
//! The canonical conditions are applied as soon as the pair that decides
//! them is placed, so the search only visits quadruples that can still be
//! canonical.

use crate::binseq::BinarySeq;
use crate::quad::TurynQuad;

pub(crate) const MAX_N: usize = 64;

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const WEIGHT: [i32; 4] = [1, 1, 2, 2];

const A_SYM: u8 = 1;
const B_SYM: u8 = 2;
const C_ANTI: u8 = 4;
const D_SAME: u8 = 8;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pruning {
    /// Only lags that are completely determined are checked (and must vanish).
    CompletedLags,
    /// Every lag must stay within reach of zero given its undetermined terms.
    Bounds,
}

struct Step {
    seq: usize,
    level: usize,
    lo: usize,
    hi: usize,
    filled_before: Vec<usize>,
    /// Per lag, the number of undetermined `A`/`B` product terms after this step.
    open_ab: Vec<i32>,
    /// Per lag, the number of undetermined `C`/`D` product terms after this step.
    open_cd: Vec<i32>,
}

/// A partially filled quadruple; `steps_done` steps of the plan are applied.
#[derive(Clone)]
pub(crate) struct Partial {
    pub(crate) seqs: [[i8; MAX_N]; 4],
    acc: [i32; MAX_N],
    flags: u8,
    pub(crate) steps_done: usize,
}

pub(crate) struct Frontier {
    n: usize,
    steps: Vec<Step>,
    pruning: Pruning,
}

impl Frontier {
    /// Plan for filling `abc_levels` levels of `A`, `B`, `C` and `d_levels`
    /// levels of `D`. Requires `d_levels <= abc_levels`.
    pub(crate) fn new(n: usize, abc_levels: usize, d_levels: usize, pruning: Pruning) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2) && n <= MAX_N);
        assert!(abc_levels <= n / 2 && d_levels <= abc_levels);
        let lens = [n, n, n, n - 1];
        let mut filled = [
            vec![false; n],
            vec![false; n],
            vec![false; n],
            vec![false; n - 1],
        ];
        let mut steps = Vec::new();
        for level in 1..=abc_levels {
            for seq in [C, A, B, D] {
                if seq == D && level > d_levels {
                    continue;
                }
                let len = lens[seq];
                let (lo, hi) = (level - 1, len - level);
                let filled_before = (0..len).filter(|&p| filled[seq][p]).collect();
                filled[seq][lo] = true;
                filled[seq][hi] = true;
                let (open_ab, open_cd) = open_terms(n, &filled);
                steps.push(Step {
                    seq,
                    level,
                    lo,
                    hi,
                    filled_before,
                    open_ab,
                    open_cd,
                });
            }
        }
        Self { n, steps, pruning }
    }

    pub(crate) fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub(crate) fn root(&self) -> Partial {
        Partial {
            seqs: [[0; MAX_N]; 4],
            acc: [0; MAX_N],
            flags: A_SYM | B_SYM | C_ANTI | D_SAME,
            steps_done: 0,
        }
    }

    /// All partials reachable after `depth` steps, in search order.
    pub(crate) fn expand(&self, depth: usize) -> Vec<Partial> {
        let depth = depth.min(self.steps.len());
        let mut out = Vec::new();
        let mut seqs = [[0; MAX_N]; 4];
        let root = self.root();
        self.rec(&mut seqs, &root.acc, root.flags, 0, depth, &mut |p| {
            out.push(p.clone());
            true
        });
        out
    }

    /// Runs the search below `start`, calling `visit` on every complete leaf.
    /// Returns false if `visit` asked to stop.
    pub(crate) fn run_from(
        &self,
        start: &Partial,
        visit: &mut dyn FnMut(&Partial) -> bool,
    ) -> bool {
        let mut seqs = start.seqs;
        self.rec(
            &mut seqs,
            &start.acc,
            start.flags,
            start.steps_done,
            self.steps.len(),
            visit,
        )
    }

    fn rec(
        &self,
        seqs: &mut [[i8; MAX_N]; 4],
        acc: &[i32; MAX_N],
        flags: u8,
        t: usize,
        stop_at: usize,
        visit: &mut dyn FnMut(&Partial) -> bool,
    ) -> bool {
        if t == stop_at {
            return visit(&Partial {
                seqs: *seqs,
                acc: *acc,
                flags,
                steps_done: t,
            });
        }
        let step = &self.steps[t];
        let single = step.lo == step.hi;
        for &(x, y) in choices(step, single) {
            let Some(next_flags) = self.admissible(step, seqs, flags, x, y) else {
                continue;
            };
            let s = &mut seqs[step.seq];
            s[step.lo] = x;
            s[step.hi] = y;
            let mut next = *acc;
            let w = WEIGHT[step.seq];
            if single {
                for &q in &step.filled_before {
                    next[step.lo.abs_diff(q)] += i32::from(s[q]) * w * i32::from(x);
                }
            } else {
                for &q in &step.filled_before {
                    let v = i32::from(s[q]) * w;
                    next[step.lo.abs_diff(q)] += v * i32::from(x);
                    next[step.hi.abs_diff(q)] += v * i32::from(y);
                }
                next[step.hi - step.lo] += w * i32::from(x) * i32::from(y);
            }
            if !self.feasible(step, &next) {
                continue;
            }
            if step.seq == B && step.level == 2 && self.n > 2 && !condition_vi(seqs, self.n) {
                continue;
            }
            if !self.rec(seqs, &next, next_flags, t + 1, stop_at, visit) {
                return false;
            }
        }
        true
    }

    /// Canonical-form restrictions on the pair `(x, y)` placed by `step`.
    /// Returns the updated flags, or `None` if the pair is excluded.
    fn admissible(
        &self,
        step: &Step,
        seqs: &[[i8; MAX_N]; 4],
        flags: u8,
        x: i8,
        y: i8,
    ) -> Option<u8> {
        if step.level == 1 {
            return Some(flags);
        }
        match step.seq {
            A | B => {
                let bit = if step.seq == A { A_SYM } else { B_SYM };
                if flags & bit == 0 || x == y {
                    Some(flags)
                } else if x == 1 {
                    Some(flags & !bit)
                } else {
                    None
                }
            }
            C => {
                if flags & C_ANTI == 0 || x != y {
                    Some(flags)
                } else if x == 1 {
                    Some(flags & !C_ANTI)
                } else {
                    None
                }
            }
            _ => {
                let last = seqs[D][self.n - 2];
                if flags & D_SAME == 0 || x * y == last {
                    Some(flags)
                } else if x == 1 {
                    Some(flags & !D_SAME)
                } else {
                    None
                }
            }
        }
    }

    fn feasible(&self, step: &Step, acc: &[i32; MAX_N]) -> bool {
        let lags = 1..self.n;
        match self.pruning {
            Pruning::CompletedLags => lags
                .filter(|&s| step.open_ab[s] == 0 && step.open_cd[s] == 0)
                .all(|s| acc[s] == 0),
            Pruning::Bounds => lags.into_iter().all(|s| {
                let (ab, cd) = (step.open_ab[s], step.open_cd[s]);
                let v = acc[s];
                v.abs() <= ab + 2 * cd && (ab > 0 || (v + 2 * cd) % 4 == 0)
            }),
        }
    }
}

fn choices(step: &Step, single: bool) -> &'static [(i8, i8)] {
    const ALL: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    const PLUS: [(i8, i8); 1] = [(1, 1)];
    const PLUS_MINUS: [(i8, i8); 1] = [(1, -1)];
    const SINGLE: [(i8, i8); 2] = [(1, 1), (-1, -1)];
    const D_FIRST: [(i8, i8); 2] = [(1, 1), (1, -1)];
    if step.level == 1 {
        return match step.seq {
            A | B => &PLUS,
            C => &PLUS_MINUS,
            _ if single => &PLUS,
            _ => &D_FIRST,
        };
    }
    if single {
        &SINGLE
    } else {
        &ALL
    }
}

/// If `a_2 != b_2` then `a_2 = +1`; otherwise `a_{n-1} = +1` and `b_{n-1} = -1`.
fn condition_vi(seqs: &[[i8; MAX_N]; 4], n: usize) -> bool {
    let (a2, b2) = (seqs[A][1], seqs[B][1]);
    if a2 != b2 {
        a2 == 1
    } else {
        seqs[A][n - 2] == 1 && seqs[B][n - 2] == -1
    }
}

fn open_terms(n: usize, filled: &[Vec<bool>; 4]) -> (Vec<i32>, Vec<i32>) {
    let mut ab = vec![0; n];
    let mut cd = vec![0; n];
    for (seq, f) in filled.iter().enumerate() {
        let len = f.len();
        for s in 1..len {
            let open = (0..len - s).filter(|&j| !(f[j] && f[j + s])).count() as i32;
            if seq < C {
                ab[s] += open;
            } else {
                cd[s] += open;
            }
        }
    }
    (ab, cd)
}

impl Partial {
    pub(crate) fn to_quad(&self, n: usize) -> TurynQuad {
        let seq = |k: usize, len: usize| BinarySeq::from_signs(self.seqs[k][..len].to_vec());
        TurynQuad::new(seq(A, n), seq(B, n), seq(C, n), seq(D, n - 1)).expect("full-length partial")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaves(n: usize) -> Vec<TurynQuad> {
        let f = Frontier::new(n, n / 2, n / 2, Pruning::Bounds);
        let mut out = Vec::new();
        f.run_from(&f.root(), &mut |p| {
            out.push(p.to_quad(n));
            true
        });
        out
    }

    #[test]
    fn small_leaves_are_canonical_tt() {
        for n in [2, 4, 6, 8] {
            for q in leaves(n) {
                assert!(q.verify_tt() && q.is_canonical(), "{q:?}");
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(leaves(2).len(), 1);
        assert_eq!(leaves(4).len(), 1);
        assert_eq!(leaves(6).len(), 4);
        assert_eq!(leaves(8).len(), 6);
    }

    #[test]
    fn expand_then_resume_matches_direct_run() {
        let n = 8;
        let f = Frontier::new(n, n / 2, n / 2, Pruning::Bounds);
        let mut via_prefix = Vec::new();
        for p in f.expand(5) {
            f.run_from(&p, &mut |leaf| {
                via_prefix.push(leaf.to_quad(n));
                true
            });
        }
        assert_eq!(via_prefix, leaves(n));
    }

    #[test]
    fn open_term_counts_reach_zero() {
        let f = Frontier::new(10, 5, 5, Pruning::Bounds);
        let last = f.steps.last().unwrap();
        assert!(last.open_ab.iter().chain(&last.open_cd).all(|&v| v == 0));
        assert_eq!(f.step_count(), 20);
    }
}
