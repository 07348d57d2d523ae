//! Boundary-seeded search for Turyn-type sequences of larger length.
//!
//! 1. Seeds fix the first and last `head_len` entries of `A`, `B`, `C` and the
//!    first and last `d_head_len` entries of `D` such that every lag
//!    `s >= n - head_len` of the combined autocorrelation vanishes and every
//!    canonical condition decided by the boundary holds.
//! 2. Pools hold all full `C` (and `D`) with a prescribed row sum whose
//!    spectral density stays under the bound on a grid of angles, bucketed by
//!    their boundary entries.
//! 3. For each seed and each compatible `(C, D)` pair with
//!    `f_C + f_D <= bound` on the grid, the middles of `A` and `B` are filled
//!    in from the outside.
//!
//! The bound `(6n - 2) / 2` is sound because
//! `f_A + f_B + 2 f_C + 2 f_D = 6n - 2` holds pointwise for every solution.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::binseq::{BinarySeq, NafProfile, Sequence};
use crate::canon::canonicalize;
use crate::codec::{encode, HexForm};
use crate::config::KeyValues;
use crate::enumerate::{decompositions, run_in_pool};
use crate::error::{Error, Result};
use crate::frontier::{Frontier, Partial, Pruning, MAX_N};
use crate::quad::TurynQuad;

/// Slack for floating-point error in the grid comparisons.
const SPECTRAL_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    /// Signed row-sum targets `(A(1), B(1), C(1), D(1))`; `None` sweeps every
    /// decomposition with every sign.
    pub squares: Option<[i64; 4]>,
    pub head_len: usize,
    pub d_head_len: usize,
    pub grid_points: usize,
    pub spectral_bound: f64,
    pub stop_after: Option<usize>,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    /// Seeds processed between progress reports.
    pub batch_size: usize,
    /// Process at most this many seeds per run.
    pub seed_limit: Option<usize>,
}

impl SearchConfig {
    pub const KEYS: [&'static str; 13] = [
        "n",
        "a",
        "b",
        "c",
        "d",
        "head_len",
        "d_head_len",
        "grid_points",
        "spectral_bound",
        "stop_after",
        "jobs",
        "batch_size",
        "seed_limit",
    ];

    /// Defaults for length `n`: head length `ceil(n/5)` clamped to `[2, 7]`
    /// (and below `n/2`), `D` head one shorter, 600 grid points, bound `3n - 1`.
    pub fn new(n: usize) -> Self {
        let head_len = n
            .div_ceil(5)
            .clamp(2, 7)
            .min((n / 2).saturating_sub(1))
            .max(1);
        Self {
            n,
            squares: None,
            head_len,
            d_head_len: head_len - 1,
            grid_points: 600,
            spectral_bound: (6 * n - 2) as f64 / 2.0,
            stop_after: None,
            jobs: 0,
            batch_size: 4096,
            seed_limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let bad = |m: String| Err(Error::Config(m));
        if n < 4 || !n.is_multiple_of(2) || n > MAX_N {
            return bad(format!(
                "n={n} must be even, at least 4 and at most {MAX_N}"
            ));
        }
        if self.head_len < 1 || self.head_len >= n / 2 {
            return bad(format!(
                "head_len={} must satisfy 1 <= head_len < n/2",
                self.head_len
            ));
        }
        if self.d_head_len + 1 < self.head_len || self.d_head_len > self.head_len {
            return bad(format!(
                "d_head_len={} must be head_len-1 or head_len",
                self.d_head_len
            ));
        }
        if self.grid_points == 0 || self.batch_size == 0 {
            return bad("grid_points and batch_size must be positive".into());
        }
        if !(self.spectral_bound > 0.0 && self.spectral_bound <= (3 * n - 1) as f64) {
            return bad(format!("spectral_bound must be in (0, {}]", 3 * n - 1));
        }
        if let Some(sq) = self.squares {
            let [a, b, c, d] = sq;
            let parity = |v: i64, p: usize| v.rem_euclid(2) as usize == p % 2;
            if a * a + b * b + 2 * c * c + 2 * d * d != 6 * n as i64 - 2
                || !parity(a, n)
                || !parity(b, n)
                || !parity(c, n)
                || !parity(d, n - 1)
            {
                return bad(format!(
                    "{sq:?} is not a signed decomposition of {}",
                    6 * n - 2
                ));
            }
        }
        Ok(())
    }

    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        kv.check_keys(&Self::KEYS)?;
        let n: usize = kv
            .get("n")?
            .ok_or_else(|| Error::Config("missing n".into()))?;
        let mut cfg = Self::new(n);
        let sq: Vec<Option<i64>> = ["a", "b", "c", "d"]
            .iter()
            .map(|k| kv.get(k))
            .collect::<Result<_>>()?;
        cfg.squares = match sq.as_slice() {
            [Some(a), Some(b), Some(c), Some(d)] => Some([*a, *b, *c, *d]),
            [None, None, None, None] => None,
            _ => return Err(Error::Config("give all of a, b, c, d or none".into())),
        };
        if let Some(h) = kv.get("head_len")? {
            cfg.head_len = h;
            cfg.d_head_len = h.saturating_sub(1);
        }
        if let Some(h) = kv.get("d_head_len")? {
            cfg.d_head_len = h;
        }
        if let Some(g) = kv.get("grid_points")? {
            cfg.grid_points = g;
        }
        if let Some(b) = kv.get("spectral_bound")? {
            cfg.spectral_bound = b;
        }
        cfg.stop_after = kv.get("stop_after")?;
        cfg.jobs = kv.get("jobs")?.unwrap_or(0);
        if let Some(b) = kv.get("batch_size")? {
            cfg.batch_size = b;
        }
        cfg.seed_limit = kv.get("seed_limit")?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Hash of every setting that affects which results are produced and in
    /// what order. Thread count, batch size and seed limit are excluded.
    pub fn fingerprint(&self) -> String {
        let mut kv = KeyValues::default();
        kv.set("n", self.n);
        if let Some([a, b, c, d]) = self.squares {
            kv.set("squares", format!("{a},{b},{c},{d}"));
        }
        kv.set("head_len", self.head_len);
        kv.set("d_head_len", self.d_head_len);
        kv.set("grid_points", self.grid_points);
        kv.set("spectral_bound", self.spectral_bound);
        if let Some(s) = self.stop_after {
            kv.set("stop_after", s);
        }
        let digest = Sha256::digest(kv.to_text().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `cos(j theta_k)` for `theta_k = k pi / points`, `k = 1..=points`.
struct SpectralGrid {
    points: usize,
    max_len: usize,
    cos: Vec<f64>,
}

impl SpectralGrid {
    fn new(points: usize, max_len: usize) -> Self {
        let mut cos = Vec::with_capacity(points * max_len);
        for k in 1..=points {
            let theta = k as f64 * PI / points as f64;
            cos.extend((0..max_len).map(|j| (j as f64 * theta).cos()));
        }
        Self {
            points,
            max_len,
            cos,
        }
    }

    /// Spectral density at every grid angle, or `None` as soon as one value
    /// exceeds `bound`.
    fn densities(&self, naf: &NafProfile, bound: f64) -> Option<Vec<f64>> {
        let v = naf.values();
        let mut out = Vec::with_capacity(self.points);
        for row in self.cos.chunks_exact(self.max_len) {
            let tail: f64 = v[1..]
                .iter()
                .zip(&row[1..])
                .map(|(&x, &c)| x as f64 * c)
                .sum();
            let f = v[0] as f64 + 2.0 * tail;
            if f > bound + SPECTRAL_TOL {
                return None;
            }
            out.push(f);
        }
        Some(out)
    }
}

/// A quadruple with only its boundary entries fixed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeedQuad {
    n: usize,
    head_len: usize,
    d_head_len: usize,
    heads: [Vec<i8>; 4],
    tails: [Vec<i8>; 4],
}

impl SeedQuad {
    fn from_partial(p: &Partial, cfg: &SearchConfig) -> Self {
        let n = cfg.n;
        let lens = [n, n, n, n - 1];
        let hs = [cfg.head_len, cfg.head_len, cfg.head_len, cfg.d_head_len];
        let heads = std::array::from_fn(|k| p.seqs[k][..hs[k]].to_vec());
        let tails = std::array::from_fn(|k| p.seqs[k][lens[k] - hs[k]..lens[k]].to_vec());
        Self {
            n,
            head_len: cfg.head_len,
            d_head_len: cfg.d_head_len,
            heads,
            tails,
        }
    }

    /// The boundary of a full quadruple.
    pub fn from_quad(q: &TurynQuad, cfg: &SearchConfig) -> Self {
        let n = q.n();
        let lens = [n, n, n, n - 1];
        let hs = [cfg.head_len, cfg.head_len, cfg.head_len, cfg.d_head_len];
        let parts = q.parts();
        let heads = std::array::from_fn(|k| parts[k].entries()[..hs[k]].to_vec());
        let tails = std::array::from_fn(|k| parts[k].entries()[lens[k] - hs[k]..].to_vec());
        Self {
            n,
            head_len: cfg.head_len,
            d_head_len: cfg.d_head_len,
            heads,
            tails,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries of sequence `k` (0..4 for A..D), `None` where undetermined.
    pub fn entries(&self, k: usize) -> Vec<Option<i8>> {
        let len = if k == 3 { self.n - 1 } else { self.n };
        let mut out = vec![None; len];
        for (i, &v) in self.heads[k].iter().enumerate() {
            out[i] = Some(v);
        }
        let t = self.tails[k].len();
        for (i, &v) in self.tails[k].iter().enumerate() {
            out[len - t + i] = Some(v);
        }
        out
    }

    /// Combined lag sums of the products whose both factors are fixed,
    /// for lags `0..n`.
    pub fn boundary_lag_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.n];
        for (k, w) in [1i64, 1, 2, 2].into_iter().enumerate() {
            let e = self.entries(k);
            for s in 0..e.len() {
                for j in 0..e.len() - s {
                    if let (Some(x), Some(y)) = (e[j], e[j + s]) {
                        sums[s] += w * i64::from(x) * i64::from(y);
                    }
                }
            }
        }
        sums
    }

    fn c_key(&self) -> BoundaryKey {
        BoundaryKey::of(&self.heads[2], &self.tails[2])
    }

    fn d_key(&self) -> BoundaryKey {
        BoundaryKey::of(&self.heads[3], &self.tails[3])
    }
}

impl fmt::Display for SeedQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, name) in ["A", "B", "C", "D"].iter().enumerate() {
            let s: String = self
                .entries(k)
                .iter()
                .map(|e| match e {
                    Some(1) => '+',
                    Some(_) => '-',
                    None => '*',
                })
                .collect();
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{name}={s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SeedQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeedQuad({})", self.to_string().replace('\n', "; "))
    }
}

/// Calls `f(index, seed)` on every seed in a fixed depth-first order; stops
/// early if `f` returns false.
pub fn for_each_seed(cfg: &SearchConfig, f: &mut dyn FnMut(usize, SeedQuad) -> bool) -> Result<()> {
    cfg.validate()?;
    let frontier = Frontier::new(cfg.n, cfg.head_len, cfg.d_head_len, Pruning::CompletedLags);
    let mut index = 0;
    frontier.run_from(&frontier.root(), &mut |p| {
        let keep_going = f(index, SeedQuad::from_partial(p, cfg));
        index += 1;
        keep_going
    });
    Ok(())
}

pub fn generate_seeds(cfg: &SearchConfig) -> Result<Vec<SeedQuad>> {
    let mut out = Vec::new();
    for_each_seed(cfg, &mut |_, s| {
        out.push(s);
        true
    })?;
    Ok(out)
}

/// Number of seeds, computed in parallel over independent prefixes.
pub fn count_seeds(cfg: &SearchConfig) -> Result<u64> {
    cfg.validate()?;
    let frontier = Frontier::new(cfg.n, cfg.head_len, cfg.d_head_len, Pruning::CompletedLags);
    let prefixes = frontier.expand(8);
    Ok(run_in_pool(cfg.jobs, || {
        prefixes
            .par_iter()
            .map(|p| {
                let mut c = 0u64;
                frontier.run_from(p, &mut |_| {
                    c += 1;
                    true
                });
                c
            })
            .sum()
    }))
}

/// First and last `h` entries packed as bit masks (bit set for -1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryKey {
    head: u64,
    tail: u64,
}

impl BoundaryKey {
    fn of(head: &[i8], tail: &[i8]) -> Self {
        let mask = |xs: &[i8]| {
            xs.iter()
                .enumerate()
                .fold(0u64, |m, (i, &v)| if v < 0 { m | 1 << i } else { m })
        };
        Self {
            head: mask(head),
            tail: mask(tail),
        }
    }

    pub fn for_sequence(seq: &BinarySeq, h: usize) -> Self {
        let e = seq.entries();
        Self::of(&e[..h], &e[e.len() - h..])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoolKind {
    C,
    D,
}

#[derive(Clone, Debug)]
pub struct PoolEntry {
    pub seq: BinarySeq,
    /// Spectral density at each grid angle.
    pub densities: Vec<f64>,
}

/// Sequences of one kind and row sum, bucketed by boundary entries.
#[derive(Clone, Debug)]
pub struct Pool {
    pub kind: PoolKind,
    pub target_sum: i64,
    pub buckets: BTreeMap<BoundaryKey, Vec<PoolEntry>>,
}

impl Pool {
    pub fn len(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn bucket(&self, key: &BoundaryKey) -> &[PoolEntry] {
        self.buckets.get(key).map_or(&[], Vec::as_slice)
    }

    pub fn sequences(&self) -> impl Iterator<Item = &BinarySeq> {
        self.buckets.values().flatten().map(|e| &e.seq)
    }
}

/// All sequences of the given kind with row sum `target_sum` whose spectral
/// density is at most `cfg.spectral_bound` at `theta = 0` and at every grid
/// angle `j pi / grid_points`, `j = 1..=grid_points`.
pub fn build_pool(n: usize, kind: PoolKind, target_sum: i64, cfg: &SearchConfig) -> Pool {
    let (len, h) = match kind {
        PoolKind::C => (n, cfg.head_len),
        PoolKind::D => (n - 1, cfg.d_head_len),
    };
    let mut pool = Pool {
        kind,
        target_sum,
        buckets: BTreeMap::new(),
    };
    let minus = len as i64 - target_sum;
    if minus < 0 || minus % 2 != 0 || minus / 2 > len as i64 {
        return pool;
    }
    if (target_sum * target_sum) as f64 > cfg.spectral_bound + SPECTRAL_TOL {
        return pool;
    }
    let grid = SpectralGrid::new(cfg.grid_points, len);
    for mask in masks_with_popcount(len, (minus / 2) as u32) {
        let seq = BinarySeq::from_mask(mask, len);
        if let Some(densities) = grid.densities(&seq.naf(), cfg.spectral_bound) {
            pool.buckets
                .entry(BoundaryKey::for_sequence(&seq, h))
                .or_default()
                .push(PoolEntry { seq, densities });
        }
    }
    pool
}

/// Every `len`-bit mask with exactly `ones` bits set, in increasing order.
fn masks_with_popcount(len: usize, ones: u32) -> impl Iterator<Item = u64> {
    assert!(len < 64);
    let limit = 1u64 << len;
    let first = if ones == 0 { 0 } else { (1u64 << ones) - 1 };
    let mut next = (ones as usize <= len).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(cur)
    })
}

/// Every completion of the middles of `A` and `B` that turns the seed plus
/// the given `C`, `D` into a Turyn-type sequence. When `cfg.squares` is set,
/// `A` and `B` must also have the prescribed row sums.
pub fn fill_middle(
    seed: &SeedQuad,
    c: &BinarySeq,
    d: &BinarySeq,
    cfg: &SearchConfig,
) -> Vec<TurynQuad> {
    let n = seed.n;
    if c.len() != n
        || d.len() + 1 != n
        || BoundaryKey::for_sequence(c, seed.head_len) != seed.c_key()
        || BoundaryKey::for_sequence(d, seed.d_head_len) != seed.d_key()
    {
        return Vec::new();
    }
    let filler = MiddleFill::new(seed, c, d, cfg.squares.map(|s| [s[0], s[1]]));
    let mut out = Vec::new();
    filler.run(&mut |a, b| {
        let q = TurynQuad::new(
            BinarySeq::from_signs(a.to_vec()),
            BinarySeq::from_signs(b.to_vec()),
            c.clone(),
            d.clone(),
        )
        .expect("shape");
        if q.verify_tt() {
            out.push(q);
        }
    });
    out
}

struct FillLevel {
    lo: usize,
    hi: usize,
    filled_before: Vec<usize>,
    /// Open `A` plus `B` product terms per lag after this level.
    open: Vec<i32>,
    /// Undetermined entries per sequence after this level.
    unset: i64,
}

struct MiddleFill {
    n: usize,
    a: Vec<i8>,
    b: Vec<i8>,
    acc: Vec<i32>,
    levels: Vec<FillLevel>,
    sums: Option<[i64; 2]>,
}

impl MiddleFill {
    fn new(seed: &SeedQuad, c: &BinarySeq, d: &BinarySeq, sums: Option<[i64; 2]>) -> Self {
        let n = seed.n;
        let h = seed.head_len;
        let unpack =
            |k: usize| -> Vec<i8> { seed.entries(k).iter().map(|e| e.unwrap_or(0)).collect() };
        let (a, b) = (unpack(0), unpack(1));
        let (nc, nd) = (c.naf(), d.naf());
        let mut acc: Vec<i32> = (0..n as i64)
            .map(|s| (2 * nc.at(s) + 2 * nd.at(s)) as i32)
            .collect();
        for x in [&a, &b] {
            for s in 1..n {
                for j in 0..n - s {
                    acc[s] += i32::from(x[j]) * i32::from(x[j + s]);
                }
            }
        }
        let mut filled: Vec<bool> = (0..n).map(|p| p < h || p >= n - h).collect();
        let mut levels = Vec::new();
        for k in h + 1..=n / 2 {
            let (lo, hi) = (k - 1, n - k);
            let filled_before = (0..n).filter(|&p| filled[p]).collect();
            filled[lo] = true;
            filled[hi] = true;
            let open = (0..n)
                .map(|s| {
                    if s == 0 {
                        return 0;
                    }
                    2 * (0..n - s)
                        .filter(|&j| !(filled[j] && filled[j + s]))
                        .count() as i32
                })
                .collect();
            let unset = filled.iter().filter(|&&f| !f).count() as i64;
            levels.push(FillLevel {
                lo,
                hi,
                filled_before,
                open,
                unset,
            });
        }
        Self {
            n,
            a,
            b,
            acc,
            levels,
            sums,
        }
    }

    fn run(mut self, emit: &mut dyn FnMut(&[i8], &[i8])) {
        let acc = std::mem::take(&mut self.acc);
        let open_at_start: Vec<i32> = match self.levels.first() {
            Some(first) => {
                let n = self.n;
                let filled: Vec<bool> = (0..n).map(|p| first.filled_before.contains(&p)).collect();
                (0..n)
                    .map(|s| {
                        if s == 0 {
                            0
                        } else {
                            2 * (0..n - s)
                                .filter(|&j| !(filled[j] && filled[j + s]))
                                .count() as i32
                        }
                    })
                    .collect()
            }
            None => vec![0; self.n],
        };
        if !within(&acc, &open_at_start) {
            return;
        }
        let (mut a, mut b) = (self.a.clone(), self.b.clone());
        self.rec(0, &mut a, &mut b, &acc, emit);
    }

    fn rec(
        &self,
        level: usize,
        a: &mut [i8],
        b: &mut [i8],
        acc: &[i32],
        emit: &mut dyn FnMut(&[i8], &[i8]),
    ) {
        let Some(lv) = self.levels.get(level) else {
            if let Some([sa, sb]) = self.sums {
                if row_sum(a) != sa || row_sum(b) != sb {
                    return;
                }
            }
            emit(a, b);
            return;
        };
        let mut next = acc.to_vec();
        for bits in 0..16u8 {
            let sign = |bit: u8| if bits >> bit & 1 == 1 { -1i8 } else { 1 };
            let (a_lo, a_hi, b_lo, b_hi) = (sign(3), sign(2), sign(1), sign(0));
            a[lv.lo] = a_lo;
            a[lv.hi] = a_hi;
            b[lv.lo] = b_lo;
            b[lv.hi] = b_hi;
            if let Some([sa, sb]) = self.sums {
                if (sa - partial_sum(a)).abs() > lv.unset || (sb - partial_sum(b)).abs() > lv.unset
                {
                    continue;
                }
            }
            next.copy_from_slice(acc);
            for x in [&*a, &*b] {
                for &q in &lv.filled_before {
                    let v = i32::from(x[q]);
                    next[lv.lo.abs_diff(q)] += v * i32::from(x[lv.lo]);
                    next[lv.hi.abs_diff(q)] += v * i32::from(x[lv.hi]);
                }
                next[lv.hi - lv.lo] += i32::from(x[lv.lo]) * i32::from(x[lv.hi]);
            }
            if within(&next, &lv.open) {
                self.rec(level + 1, a, b, &next, emit);
            }
        }
        for x in [&mut *a, &mut *b] {
            x[lv.lo] = 0;
            x[lv.hi] = 0;
        }
    }
}

fn within(acc: &[i32], open: &[i32]) -> bool {
    acc.iter().zip(open).skip(1).all(|(&v, &o)| v.abs() <= o)
}

fn row_sum(x: &[i8]) -> i64 {
    x.iter().map(|&v| i64::from(v)).sum()
}

/// Sum of the determined entries (zeros mark undetermined ones).
fn partial_sum(x: &[i8]) -> i64 {
    row_sum(x)
}

/// The `(C(1), D(1))` targets a search covers.
fn cd_targets(cfg: &SearchConfig) -> Result<Vec<(i64, i64)>> {
    if let Some([_, _, c, d]) = cfg.squares {
        return Ok(vec![(c, d)]);
    }
    let mut out = BTreeSet::new();
    for dec in decompositions(cfg.n)? {
        let (c, d) = (i64::from(dec.c), i64::from(dec.d));
        for sc in [1, -1] {
            for sd in [1, -1] {
                out.insert((sc * c, sd * d));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Prebuilt pools for every row-sum target of a search.
pub struct PoolSet {
    pairs: Vec<(i64, i64)>,
    c_pools: BTreeMap<i64, Pool>,
    d_pools: BTreeMap<i64, Pool>,
}

impl PoolSet {
    pub fn build(cfg: &SearchConfig) -> Result<Self> {
        cfg.validate()?;
        let pairs = cd_targets(cfg)?;
        let mut c_pools = BTreeMap::new();
        let mut d_pools = BTreeMap::new();
        for &(c, d) in &pairs {
            c_pools
                .entry(c)
                .or_insert_with(|| build_pool(cfg.n, PoolKind::C, c, cfg));
            d_pools
                .entry(d)
                .or_insert_with(|| build_pool(cfg.n, PoolKind::D, d, cfg));
        }
        Ok(Self {
            pairs,
            c_pools,
            d_pools,
        })
    }

    /// Every Turyn-type completion of `seed`, in a deterministic order.
    pub fn solve_seed(&self, seed: &SeedQuad, cfg: &SearchConfig) -> Vec<TurynQuad> {
        let (ck, dk) = (seed.c_key(), seed.d_key());
        let bound = cfg.spectral_bound + SPECTRAL_TOL;
        let mut out = Vec::new();
        for (c, d) in &self.pairs {
            let cs = self.c_pools[c].bucket(&ck);
            let ds = self.d_pools[d].bucket(&dk);
            for ce in cs {
                for de in ds {
                    let ok = ce
                        .densities
                        .iter()
                        .zip(&de.densities)
                        .all(|(x, y)| x + y <= bound);
                    if ok {
                        out.extend(fill_middle(seed, &ce.seq, &de.seq, cfg));
                    }
                }
            }
        }
        out
    }
}

/// Reported after every batch of seeds.
pub struct SearchProgress<'a> {
    /// Index of the first seed not yet processed.
    pub next_seed: usize,
    /// Canonical compact codes first found in this batch, in discovery order.
    pub new_codes: &'a [String],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSummary {
    pub next_seed: usize,
    /// True when every seed has been processed.
    pub exhausted: bool,
    /// True when `stop_after` was reached.
    pub stopped: bool,
}

/// Processes seeds from `start_seed` on. `known` holds codes found by earlier
/// runs and receives the new ones; `sink` sees each batch in seed order.
pub fn search_from(
    cfg: &SearchConfig,
    start_seed: usize,
    known: &mut BTreeSet<String>,
    sink: &mut dyn FnMut(&SearchProgress) -> Result<()>,
) -> Result<SearchSummary> {
    cfg.validate()?;
    let pools = PoolSet::build(cfg)?;
    let reached = |known: &BTreeSet<String>| cfg.stop_after.is_some_and(|s| known.len() >= s);
    let mut summary = SearchSummary {
        next_seed: start_seed,
        exhausted: false,
        stopped: reached(known),
    };
    if summary.stopped {
        return Ok(summary);
    }
    let end = cfg.seed_limit.map(|l| start_seed.saturating_add(l));
    let mut batch: Vec<SeedQuad> = Vec::with_capacity(cfg.batch_size);
    let mut batch_end = start_seed;
    let mut failure: Option<Error> = None;

    let mut flush = |batch: &mut Vec<SeedQuad>,
                     batch_end: usize,
                     known: &mut BTreeSet<String>|
     -> Result<bool> {
        let found: Vec<Vec<TurynQuad>> = run_in_pool(cfg.jobs, || {
            batch.par_iter().map(|s| pools.solve_seed(s, cfg)).collect()
        });
        batch.clear();
        let mut new_codes = Vec::new();
        for q in found.into_iter().flatten() {
            if reached(known) {
                break;
            }
            let code = encode(&canonicalize(&q)?, HexForm::Compact)?.to_string();
            if known.insert(code.clone()) {
                new_codes.push(code);
            }
        }
        sink(&SearchProgress {
            next_seed: batch_end,
            new_codes: &new_codes,
        })?;
        Ok(reached(known))
    };

    let mut exhausted = true;
    for_each_seed(cfg, &mut |index, seed| {
        if index < start_seed {
            return true;
        }
        if end.is_some_and(|e| index >= e) {
            exhausted = false;
            return false;
        }
        batch.push(seed);
        batch_end = index + 1;
        if batch.len() == cfg.batch_size {
            match flush(&mut batch, batch_end, known) {
                Ok(false) => {}
                Ok(true) => {
                    summary.stopped = true;
                    exhausted = false;
                    return false;
                }
                Err(e) => {
                    failure = Some(e);
                    exhausted = false;
                    return false;
                }
            }
        }
        true
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if !batch.is_empty() || batch_end == start_seed {
        summary.stopped = flush(&mut batch, batch_end, known)?;
    }
    summary.next_seed = batch_end;
    summary.exhausted = exhausted && !summary.stopped;
    Ok(summary)
}

/// Runs the whole search and returns the canonical results sorted by code.
pub fn search(cfg: &SearchConfig) -> Result<Vec<TurynQuad>> {
    let mut known = BTreeSet::new();
    search_from(cfg, 0, &mut known, &mut |_| Ok(()))?;
    known
        .iter()
        .map(|c| crate::codec::decode(c, cfg.n))
        .collect()
}

/// Progress marker for resumable runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub seed_index: usize,
    pub config_hash: String,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        format!(
            "seed_index={}\nconfig_hash={}\n",
            self.seed_index, self.config_hash
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let kv = KeyValues::parse(text).map_err(|e| Error::Checkpoint(e.to_string()))?;
        kv.check_keys(&["seed_index", "config_hash"])
            .map_err(|e| Error::Checkpoint(e.to_string()))?;
        let seed_index = kv
            .get("seed_index")
            .map_err(|e| Error::Checkpoint(e.to_string()))?
            .ok_or_else(|| Error::Checkpoint("missing seed_index".into()))?;
        let config_hash = kv
            .get_str("config_hash")
            .filter(|h| !h.is_empty())
            .ok_or_else(|| Error::Checkpoint("missing config_hash".into()))?
            .to_owned();
        Ok(Self {
            seed_index,
            config_hash,
        })
    }
}
