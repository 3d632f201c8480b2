//! Monte Carlo delay experiments and closed-form anti-uniform theory.
//!
//! A run draws random symbol strings from the dyadic source, encodes them,
//! backward-decodes, and aggregates the decision delays. Per-string RNG seeds
//! are a fixed mix of the master seed and the string index, so results are
//! bit-identical regardless of how many worker threads execute; strings are
//! reduced in index order. Symbols are sampled by walking the canonical code
//! tree of the length vector bit by bit, which makes probabilities exactly
//! `2^-l_i` and gives every code of a family the same symbol streams.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codebook::{Codebook, LengthVector};
use crate::decoder::{backward_decode, DecodeError};
use crate::enumerator::{enumerate_codes, EnumeratorError};
use crate::measures::{select_min_delay_code, EtaMode};
use crate::BackwardTrie;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_strings: u64,
    pub symbols_per_string: u32,
    pub master_seed: u64,
    pub early_commit: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_strings: 20_000,
            symbols_per_string: 200,
            master_seed: 0,
            early_commit: true,
        }
    }
}

impl SimConfig {
    /// Reduced-size profile for CI and quick runs.
    pub fn fast(master_seed: u64) -> Self {
        SimConfig {
            n_strings: 2_000,
            master_seed,
            ..SimConfig::default()
        }
    }

    pub fn with_seed(master_seed: u64) -> Self {
        SimConfig {
            master_seed,
            ..SimConfig::default()
        }
    }
}

/// Mean delay at one decision ordinal across all strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexPoint {
    pub index: u32,
    pub mean_delay: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelayStats {
    pub mean_delay: f64,
    /// Monte Carlo standard error of `mean_delay` (over per-string means).
    pub stderr: f64,
    pub per_index_profile: Vec<IndexPoint>,
    pub delay_histogram: BTreeMap<i64, u64>,
    pub max_list_size: u32,
    pub total_events: u64,
    pub total_delay: i64,
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Enumerator(#[from] EnumeratorError),
}

/// Bit-walk sampler over the canonical code tree of a length vector.
/// Each left/right step consumes one fair random bit, so symbol `i`
/// is drawn with probability exactly `2^-l_i`.
struct DyadicSampler {
    children: Vec<[i32; 2]>,
    symbol: Vec<Option<u16>>,
}

impl DyadicSampler {
    fn new(lv: &LengthVector) -> DyadicSampler {
        let canonical = Codebook::canonical(lv);
        let mut s = DyadicSampler {
            children: vec![[-1, -1]],
            symbol: vec![None],
        };
        for (sym, word) in canonical.codewords().iter().enumerate() {
            let mut node = 0usize;
            for &bit in word.bits() {
                if s.children[node][bit as usize] < 0 {
                    s.children[node][bit as usize] = s.children.len() as i32;
                    s.children.push([-1, -1]);
                    s.symbol.push(None);
                }
                node = s.children[node][bit as usize] as usize;
            }
            s.symbol[node] = Some(sym as u16);
        }
        s
    }

    fn draw(&self, rng: &mut impl Rng) -> u16 {
        let mut node = 0usize;
        loop {
            if let Some(sym) = self.symbol[node] {
                return sym;
            }
            let bit = rng.random::<bool>() as usize;
            node = self.children[node][bit] as usize;
        }
    }
}

/// Fixed (master_seed, string index) → per-string seed mix; the splitmix64
/// finalizer keeps nearby indices statistically independent.
fn string_seed(master_seed: u64, index: u64) -> u64 {
    let mut z = master_seed
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct StringRun {
    events: Vec<(u32, i64)>,
    max_list_size: u32,
}

fn run_string(
    code: &Codebook,
    trie: &BackwardTrie,
    sampler: &DyadicSampler,
    cfg: &SimConfig,
    index: u64,
) -> Result<StringRun, DecodeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(string_seed(cfg.master_seed, index));
    let symbols: Vec<u16> = (0..cfg.symbols_per_string)
        .map(|_| sampler.draw(&mut rng))
        .collect();
    let bits = code.encode(&symbols).expect("sampled symbols are in range");
    let result = backward_decode(trie, &bits, cfg.early_commit)?;
    Ok(StringRun {
        events: result.events.iter().map(|e| (e.index, e.delay)).collect(),
        max_list_size: result.max_list_size,
    })
}

/// Simulates `cfg.n_strings` random strings through `code` and aggregates
/// the decision delays. Deterministic for a fixed config.
pub fn simulate_code(code: &Codebook, cfg: &SimConfig) -> Result<DelayStats, SimError> {
    let trie = BackwardTrie::build(code);
    let sampler = DyadicSampler::new(&code.length_vector());
    let runs: Vec<StringRun> = (0..cfg.n_strings)
        .into_par_iter()
        .map(|i| run_string(code, &trie, &sampler, cfg, i))
        .collect::<Result<_, _>>()?;

    let mut histogram: BTreeMap<i64, u64> = BTreeMap::new();
    let mut by_index: BTreeMap<u32, (i64, u64)> = BTreeMap::new();
    let mut total_delay = 0i64;
    let mut total_events = 0u64;
    let mut max_list_size = 0u32;
    let mut string_means = Vec::with_capacity(runs.len());
    for run in &runs {
        let mut sum = 0i64;
        for &(index, delay) in &run.events {
            *histogram.entry(delay).or_insert(0) += 1;
            let slot = by_index.entry(index).or_insert((0, 0));
            slot.0 += delay;
            slot.1 += 1;
            sum += delay;
            total_delay += delay;
            total_events += 1;
        }
        max_list_size = max_list_size.max(run.max_list_size);
        if !run.events.is_empty() {
            string_means.push(sum as f64 / run.events.len() as f64);
        }
    }

    let mean_delay = if total_events == 0 {
        0.0
    } else {
        total_delay as f64 / total_events as f64
    };
    let stderr = standard_error(&string_means);
    let per_index_profile = by_index
        .into_iter()
        .map(|(index, (sum, count))| IndexPoint {
            index,
            mean_delay: sum as f64 / count as f64,
            count,
        })
        .collect();
    Ok(DelayStats {
        mean_delay,
        stderr,
        per_index_profile,
        delay_histogram: histogram,
        max_list_size,
        total_events,
        total_delay,
    })
}

fn standard_error(samples: &[f64]) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// One sweep row: family-wide delay extremes plus the searched code's delay.
#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub lengths: Vec<u32>,
    pub count: u64,
    pub min_dbar: f64,
    pub max_dbar: f64,
    pub selected_dbar: f64,
    pub delta_d: f64,
    pub min_code: Codebook,
    pub selected_code: Codebook,
    /// Largest per-code standard error seen across the family.
    pub max_stderr: f64,
}

/// Simulates every code of the family under identical per-string seeds
/// (common random numbers) and reports the table row.
pub fn sweep_family(
    lv: &LengthVector,
    cfg: &SimConfig,
    cap: u64,
) -> Result<SweepOutcome, SimError> {
    let family = enumerate_codes(lv, cap)?;
    let codes: Vec<Codebook> = family.iter().collect();
    let stats: Vec<DelayStats> = codes
        .iter()
        .map(|c| simulate_code(c, cfg))
        .collect::<Result<_, _>>()?;

    let mut min_i = 0usize;
    let mut max_i = 0usize;
    for (i, s) in stats.iter().enumerate() {
        if s.mean_delay < stats[min_i].mean_delay {
            min_i = i;
        }
        if s.mean_delay > stats[max_i].mean_delay {
            max_i = i;
        }
    }
    let (selected_code, _) = select_min_delay_code(lv, cap, EtaMode::default())?;
    let selected_i = codes
        .iter()
        .position(|c| *c == selected_code)
        .expect("selected code is a family member");
    let min_dbar = stats[min_i].mean_delay;
    let selected_dbar = stats[selected_i].mean_delay;
    Ok(SweepOutcome {
        lengths: lv.lengths().to_vec(),
        count: codes.len() as u64,
        min_dbar,
        max_dbar: stats[max_i].mean_delay,
        selected_dbar,
        delta_d: selected_dbar - min_dbar,
        min_code: codes[min_i].clone(),
        selected_code,
        max_stderr: stats.iter().fold(0.0f64, |a, s| a.max(s.stderr)),
    })
}

/// Truncated series `(1-p_n) * sum_{j<terms} p_n^j (j(n-1)+1)`.
pub fn anti_uniform_delay_series(n: usize, p_n: &BigRational, terms: u32) -> BigRational {
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    for j in 0..terms as u64 {
        let d = BigInt::from(j * (n as u64 - 1) + 1);
        sum += &power * BigRational::from(d);
        power *= p_n;
    }
    (BigRational::one() - p_n) * sum
}

/// Exact `(n-1)/(2^(n-1)-1) + 1`.
pub fn anti_uniform_delay_closed(n: usize) -> BigRational {
    let den = BigInt::from(2u8).pow(n as u32 - 1) - BigInt::one();
    BigRational::new(BigInt::from(n as u64 - 1), den) + BigRational::one()
}

#[derive(Debug, Clone, Serialize)]
pub struct Table3Row {
    pub n: u32,
    pub theory: f64,
    pub simulation: f64,
    pub stderr: f64,
}

/// Theory vs simulation for the canonical anti-uniform codes of `n_range`.
pub fn table3(
    n_range: std::ops::RangeInclusive<u32>,
    cfg: &SimConfig,
) -> Result<Vec<Table3Row>, SimError> {
    n_range
        .map(|n| {
            let code = Codebook::anti_uniform(n as usize).expect("n >= 2");
            let stats = simulate_code(&code, cfg)?;
            Ok(Table3Row {
                n,
                theory: anti_uniform_delay_closed(n as usize)
                    .to_f64()
                    .expect("small rational"),
                simulation: stats.mean_delay,
                stderr: stats.stderr,
            })
        })
        .collect()
}
