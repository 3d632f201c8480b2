//! Enumeration of all equivalent prefix codes for a length vector.
//!
//! Codes are generated depth by depth: at depth `d` there are
//! `available_d = 2 * (internal nodes at depth d-1)` candidate nodes
//! (`available_1 = 2`), of which any `k_d` (the multiplicity of length `d`)
//! become leaves. The family size is the product of the binomials
//! `C(available_d, k_d)`; the iterator walks all subset choices in
//! lexicographic order, yielding each distinct codeword set exactly once.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::codebook::{BitString, Codebook, LengthVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumeratorError {
    #[error("family has {count} codes, above the cap of {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
}

/// Exact number of distinct prefix codes sharing the length vector.
pub fn count_equivalent(lv: &LengthVector) -> BigUint {
    let mut count = BigUint::one();
    let mut available: usize = 2;
    for &k in &lv.multiplicities() {
        count *= binomial(BigUint::from(available), BigUint::from(k));
        available = 2 * (available - k);
    }
    count
}

/// The family of equivalent codes for a length vector.
pub struct CodeFamily {
    pub length_vector: LengthVector,
    pub count: BigUint,
}

impl CodeFamily {
    pub fn iter(&self) -> CodeIter {
        CodeIter::new(&self.length_vector)
    }
}

/// Checks the family is within `cap` and returns it.
pub fn enumerate_codes(lv: &LengthVector, cap: u64) -> Result<CodeFamily, EnumeratorError> {
    let count = count_equivalent(lv);
    if count.to_u64().is_none_or(|c| c > cap) {
        return Err(EnumeratorError::CapExceeded { count, cap });
    }
    Ok(CodeFamily {
        length_vector: lv.clone(),
        count,
    })
}

struct LevelState {
    available: Vec<BitString>,
    /// Sorted indices into `available` chosen as leaves at this depth.
    combo: Vec<usize>,
}

impl LevelState {
    fn internal_children(&self) -> Vec<BitString> {
        let mut next = Vec::new();
        for (i, node) in self.available.iter().enumerate() {
            if self.combo.binary_search(&i).is_ok() {
                continue;
            }
            for bit in 0..2u8 {
                let mut child = node.clone();
                child.push(bit);
                next.push(child);
            }
        }
        next
    }
}

/// Lazy iterator over the code family, lexicographic in the per-depth
/// leaf-subset choices.
pub struct CodeIter {
    multiplicities: Vec<usize>,
    stack: Vec<LevelState>,
    done: bool,
}

impl CodeIter {
    fn new(lv: &LengthVector) -> CodeIter {
        let multiplicities = lv.multiplicities();
        let mut iter = CodeIter {
            multiplicities,
            stack: Vec::new(),
            done: false,
        };
        iter.rebuild_from(0, vec![BitString::from_bits(&[0]), BitString::from_bits(&[1])]);
        iter
    }

    /// Installs first-combination states for depths `from..`, starting from
    /// the given available-node list.
    fn rebuild_from(&mut self, from: usize, mut available: Vec<BitString>) {
        self.stack.truncate(from);
        for depth in from..self.multiplicities.len() {
            let k = self.multiplicities[depth];
            let combo: Vec<usize> = (0..k).collect();
            let state = LevelState { available, combo };
            available = state.internal_children();
            self.stack.push(state);
        }
    }

    fn current_code(&self) -> Codebook {
        let mut codewords = Vec::new();
        for state in &self.stack {
            for &i in &state.combo {
                codewords.push(state.available[i].clone());
            }
        }
        Codebook::from_codewords(codewords).expect("enumerated sets are complete prefix codes")
    }

    /// Lexicographic next `k`-combination of `0..n`; false when exhausted.
    fn next_combo(combo: &mut [usize], n: usize) -> bool {
        let k = combo.len();
        if k == 0 {
            return false;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if combo[i] < n - (k - i) {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance(&mut self) {
        let mut depth = self.stack.len();
        while depth > 0 {
            depth -= 1;
            let n = self.stack[depth].available.len();
            if Self::next_combo(&mut self.stack[depth].combo, n) {
                let available = self.stack[depth].internal_children();
                self.rebuild_from(depth + 1, available);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for CodeIter {
    type Item = Codebook;

    fn next(&mut self) -> Option<Codebook> {
        if self.done {
            return None;
        }
        let code = self.current_code();
        self.advance();
        Some(code)
    }
}

/// All complete length vectors (Kraft sum exactly 1) for alphabet size `m`,
/// in lexicographically ascending order.
pub fn complete_length_vectors(m: usize) -> Vec<LengthVector> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(m);
    // remaining Kraft mass as num / 2^den_log
    rec(m, 1, 1, 0, &mut prefix, &mut out);
    out
}

fn rec(
    m: usize,
    min_len: u32,
    num: u128,
    den_log: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<LengthVector>,
) {
    let slots = m - prefix.len();
    if slots == 0 {
        if num == 0 {
            out.push(LengthVector::new(prefix).expect("exact Kraft sum"));
        }
        return;
    }
    if num == 0 {
        return;
    }
    let max_len = (m - 1) as u32;
    for l in min_len..=max_len {
        // rescale remainder to denominator 2^l
        let (r_num, r_den_log) = if l >= den_log {
            (num << (l - den_log), l)
        } else {
            (num, den_log)
        };
        let term = 1u128 << (r_den_log - l);
        if term > r_num {
            continue; // 2^-l exceeds the remainder; a longer length is needed
        }
        // a nondecreasing tail of `slots` terms, each at most 2^-l, must
        // still cover the remainder; growing l only shrinks the reach
        if (slots as u128) * term < r_num {
            break;
        }
        prefix.push(l);
        rec(m, l, r_num - term, r_den_log, prefix, out);
        prefix.pop();
    }
}
