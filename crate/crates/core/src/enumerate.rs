//! Exhaustive classification of Turyn-type sequences.
//!
//! [`enumerate_canonical`] walks the canonical quadruples directly with a
//! pruned two-ended search, one representative per equivalence class.
//! [`brute_force_classes`] is an independent check for small `n`: it scans
//! every quadruple and partitions the solutions into orbits.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::binseq::{BinarySeq, NafProfile, Sequence};
use crate::canon::canonicalize;
use crate::codec::{encode, HexForm, Listing};
use crate::config::KeyValues;
use crate::error::{Error, Result};
use crate::frontier::{Frontier, Pruning, MAX_N};
use crate::group::orbit;
use crate::quad::TurynQuad;

/// Row-sum magnitudes with `a^2 + b^2 + 2c^2 + 2d^2 = 6n - 2`, normalized to
/// `a >= b >= 0`, `c >= 0`, `d >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Decomposition {
    /// Normalizes signed row sums `(A(1), B(1), C(1), D(1))`.
    pub fn from_row_sums(sums: [i64; 4]) -> Self {
        let m = sums.map(|s| s.unsigned_abs() as u32);
        Self {
            a: m[0].max(m[1]),
            b: m[0].min(m[1]),
            c: m[2],
            d: m[3],
        }
    }

    pub fn value(&self) -> u64 {
        let [a, b, c, d] = [self.a, self.b, self.c, self.d].map(u64::from);
        a * a + b * b + 2 * c * c + 2 * d * d
    }
}

pub fn decompositions(n: usize) -> Result<Vec<Decomposition>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::UnsupportedLength(n));
    }
    let target = 6 * n as u64 - 2;
    let max = (target as f64).sqrt() as u32 + 1;
    let par = (n % 2) as u32;
    let mut out = Vec::new();
    for a in (par..=max).step_by(2) {
        for b in (par..=a).step_by(2) {
            for c in (par..=max).step_by(2) {
                for d in (1 - par..=max).step_by(2) {
                    let dec = Decomposition { a, b, c, d };
                    if dec.value() == target {
                        out.push(dec);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Canonical representatives for one `n`, as sorted compact codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassListing {
    pub n: usize,
    pub codes: Vec<String>,
}

impl ClassListing {
    fn from_quads(n: usize, quads: impl IntoIterator<Item = TurynQuad>) -> Result<Self> {
        let mut codes = quads
            .into_iter()
            .map(|q| encode(&q, HexForm::Compact).map(|c| c.to_string()))
            .collect::<Result<Vec<_>>>()?;
        codes.sort();
        let before = codes.len();
        codes.dedup();
        assert_eq!(
            before,
            codes.len(),
            "duplicate representatives: work partitions overlap"
        );
        Ok(Self { n, codes })
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn quads(&self) -> Vec<TurynQuad> {
        self.codes
            .iter()
            .map(|c| crate::codec::decode(c, self.n).expect("listing holds valid codes"))
            .collect()
    }

    pub fn to_listing(&self) -> Listing {
        Listing::from_codes(self.n, &self.codes)
    }

    /// The largest number of leading `0` digits over all codes.
    pub fn max_initial_zeros(&self) -> usize {
        self.codes
            .iter()
            .map(|c| c.bytes().take_while(|&b| b == b'0').count())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateConfig {
    /// Largest `n` accepted without an explicit override.
    pub cap: usize,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    /// Number of leading levels used to cut the search into independent tasks.
    pub prefix_depth: usize,
}

impl Default for EnumerateConfig {
    fn default() -> Self {
        Self {
            cap: 20,
            jobs: 0,
            prefix_depth: 2,
        }
    }
}

impl EnumerateConfig {
    pub const KEYS: [&'static str; 3] = ["cap", "jobs", "prefix_depth"];

    pub fn from_key_values(kv: &KeyValues) -> Result<Self> {
        kv.check_keys(&Self::KEYS)?;
        let d = Self::default();
        Ok(Self {
            cap: kv.get("cap")?.unwrap_or(d.cap),
            jobs: kv.get("jobs")?.unwrap_or(d.jobs),
            prefix_depth: kv.get("prefix_depth")?.unwrap_or(d.prefix_depth),
        })
    }
}

pub(crate) fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

fn cost_estimate(n: usize) -> String {
    // Measured on one core: about 12 s at n=16, growing roughly 19x per step of 2.
    let secs = 12.0 * 19f64.powf((n as f64 - 16.0) / 2.0);
    format!("about {secs:.0} CPU seconds")
}

pub fn enumerate_canonical(n: usize, cfg: &EnumerateConfig) -> Result<ClassListing> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_N {
        return Err(Error::UnsupportedLength(n));
    }
    if n > cfg.cap {
        return Err(Error::CapExceeded {
            n,
            cap: cfg.cap,
            estimate: cost_estimate(n),
        });
    }
    let frontier = Frontier::new(n, n / 2, n / 2, Pruning::Bounds);
    let depth = (cfg.prefix_depth * 4).min(frontier.step_count());
    let prefixes = frontier.expand(depth);
    let batches: Vec<Vec<TurynQuad>> = run_in_pool(cfg.jobs, || {
        prefixes
            .par_iter()
            .map(|p| {
                let mut found = Vec::new();
                frontier.run_from(p, &mut |leaf| {
                    let q = leaf.to_quad(n);
                    if q.verify_tt() && q.is_canonical() {
                        found.push(q);
                    }
                    true
                });
                found
            })
            .collect()
    });
    ClassListing::from_quads(n, batches.into_iter().flatten())
}

/// Largest `n` the brute-force scan accepts.
pub const BRUTE_FORCE_MAX_N: usize = 8;

/// Every Turyn-type quadruple of length `n` (any parity), by exhaustive scan
/// over `A`, `B`, `C` with `D` looked up by its autocorrelation vector.
pub fn brute_force_tt(n: usize) -> Result<Vec<TurynQuad>> {
    if !(2..=BRUTE_FORCE_MAX_N).contains(&n) {
        return Err(Error::CapExceeded {
            n,
            cap: BRUTE_FORCE_MAX_N,
            estimate: format!("2^{} quadruples", 4 * n - 1),
        });
    }
    let naf_of = |mask: u64, len: usize| -> Vec<i64> {
        NafProfile::of(BinarySeq::from_mask(mask, len).entries()).values()[1..].to_vec()
    };
    let full: Vec<Vec<i64>> = (0..1u64 << n).map(|m| naf_of(m, n)).collect();
    let mut by_naf: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
    for m in 0..1u64 << (n - 1) {
        let mut key = naf_of(m, n - 1);
        key.resize(n - 1, 0);
        by_naf.entry(key).or_default().push(m);
    }

    let mut out = Vec::new();
    let mut need = vec![0i64; n - 1];
    for (ma, na) in full.iter().enumerate() {
        for (mb, nb) in full.iter().enumerate() {
            for (mc, nc) in full.iter().enumerate() {
                let mut ok = true;
                for s in 0..n - 1 {
                    let v = na[s] + nb[s] + 2 * nc[s];
                    if v % 2 != 0 {
                        ok = false;
                        break;
                    }
                    need[s] = -v / 2;
                }
                if !ok {
                    continue;
                }
                if let Some(ds) = by_naf.get(&need) {
                    for &md in ds {
                        let q = TurynQuad::new(
                            BinarySeq::from_mask(ma as u64, n),
                            BinarySeq::from_mask(mb as u64, n),
                            BinarySeq::from_mask(mc as u64, n),
                            BinarySeq::from_mask(md, n - 1),
                        )?;
                        debug_assert!(q.verify_tt());
                        out.push(q);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Partitions all Turyn-type quadruples of length `n` into orbits.
pub fn brute_force_orbits(n: usize) -> Result<Vec<BTreeSet<TurynQuad>>> {
    let all = brute_force_tt(n)?;
    if all.is_empty() {
        return Ok(Vec::new());
    }
    if !n.is_multiple_of(2) {
        return Err(Error::UnsupportedLength(n));
    }
    let mut seen: HashSet<TurynQuad> = HashSet::new();
    let mut orbits = Vec::new();
    for q in all {
        if seen.contains(&q) {
            continue;
        }
        let orb = orbit(&q)?;
        seen.extend(orb.iter().cloned());
        orbits.push(orb);
    }
    Ok(orbits)
}

/// Orbit count and canonical representatives found by exhaustive scan.
pub fn brute_force_classes(n: usize) -> Result<(usize, ClassListing)> {
    let orbits = brute_force_orbits(n)?;
    let reps = orbits
        .iter()
        .map(|orb| canonicalize(orb.first().expect("orbits are nonempty")))
        .collect::<Result<Vec<_>>>()?;
    Ok((orbits.len(), ClassListing::from_quads(n, reps)?))
}

/// For each decomposition of `6n - 2`, whether some Turyn-type quadruple of
/// length `n` has row sums with exactly those magnitudes.
pub fn realizability_report(
    n: usize,
    cfg: &EnumerateConfig,
) -> Result<BTreeMap<Decomposition, bool>> {
    let listing = enumerate_canonical(n, cfg)?;
    let mut attained = BTreeSet::new();
    for rep in listing.quads() {
        for member in orbit(&rep)? {
            attained.insert(Decomposition::from_row_sums(member.row_sums()));
        }
    }
    Ok(decompositions(n)?
        .into_iter()
        .map(|d| (d, attained.contains(&d)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(a: u32, b: u32, c: u32, d: u32) -> Decomposition {
        Decomposition { a, b, c, d }
    }

    #[test]
    fn decompositions_small() {
        assert_eq!(
            decompositions(2).unwrap(),
            vec![dec(0, 0, 2, 1), dec(2, 2, 0, 1)]
        );
        assert!(decompositions(3).is_err());
    }

    #[test]
    fn decompositions_38_contains_published_sums() {
        let all = decompositions(38).unwrap();
        assert!(all.contains(&dec(8, 4, 8, 3)));
        assert!(all.iter().all(|d| d.value() == 226));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn decomposition_brute_force_oracle() {
        // Signed scan of every (a, b, c, d) with the right parities.
        for n in (2..=20).step_by(2) {
            let target = 6 * n as i64 - 2;
            let r = (target as f64).sqrt() as i64 + 1;
            let mut oracle = BTreeSet::new();
            for a in -r..=r {
                for b in -r..=r {
                    for c in -r..=r {
                        for d in -r..=r {
                            let parity_ok = [a, b, c].iter().all(|v| v.rem_euclid(2) == 0)
                                && d.rem_euclid(2) == 1;
                            if parity_ok && a * a + b * b + 2 * c * c + 2 * d * d == target {
                                oracle.insert(Decomposition::from_row_sums([a, b, c, d]));
                            }
                        }
                    }
                }
            }
            let got: BTreeSet<_> = decompositions(n).unwrap().into_iter().collect();
            assert_eq!(got, oracle, "n={n}");
        }
    }

    #[test]
    fn brute_force_small_counts() {
        assert_eq!(brute_force_classes(2).unwrap().0, 1);
        let (count, listing) = brute_force_classes(4).unwrap();
        assert_eq!(count, 1);
        assert_eq!(listing.codes, vec!["016"]);
    }

    #[test]
    fn brute_force_refuses_large_n() {
        assert!(matches!(brute_force_tt(9), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn enumerate_small() {
        let cfg = EnumerateConfig::default();
        assert_eq!(enumerate_canonical(2, &cfg).unwrap().codes, vec!["0"]);
        assert_eq!(
            enumerate_canonical(6, &cfg).unwrap().codes,
            vec!["006d6", "01396", "045ec", "0608d"]
        );
        assert!(matches!(
            enumerate_canonical(7, &cfg),
            Err(Error::UnsupportedLength(7))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = EnumerateConfig {
            cap: 10,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_canonical(12, &cfg),
            Err(Error::CapExceeded { n: 12, cap: 10, .. })
        ));
    }

    #[test]
    fn prefix_depth_does_not_change_output() {
        let base = enumerate_canonical(10, &EnumerateConfig::default()).unwrap();
        for prefix_depth in [0, 1, 3, 5] {
            let cfg = EnumerateConfig {
                prefix_depth,
                jobs: 2,
                ..Default::default()
            };
            assert_eq!(enumerate_canonical(10, &cfg).unwrap(), base);
        }
    }

    #[test]
    fn realizability_n2() {
        let report = realizability_report(2, &EnumerateConfig::default()).unwrap();
        assert_eq!(report.len(), 2);
        assert!(report.values().all(|&v| v));
    }

    #[test]
    fn config_from_key_values() {
        let kv = KeyValues::parse("cap=24\njobs=3").unwrap();
        let cfg = EnumerateConfig::from_key_values(&kv).unwrap();
        assert_eq!((cfg.cap, cfg.jobs, cfg.prefix_depth), (24, 3, 2));
        assert!(EnumerateConfig::from_key_values(&KeyValues::parse("foo=1").unwrap()).is_err());
    }
}
