//! Multiplicity sequences of cusps and the invariants derived from them.
//!
//! A sequence is stored in compact form: the multiplicities `m >= m_1 >= ...`
//! of the cusp and its infinitely near points, with the trailing 1s dropped.
//! Text form uses `v_k` for `k` repeats, e.g. `[6_2,3_3,2]`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspError {
    #[error("syntax error at byte {pos}: {msg} (grammar: [v(_k)?(,v(_k)?)*])")]
    Syntax { pos: usize, msg: &'static str },
    #[error("multiplicity {value} at index {index} is below 2; trailing 1s are omitted in compact form")]
    ValueTooSmall { index: usize, value: u32 },
    #[error("repeat count must be at least 1")]
    ZeroRepeat,
    #[error("empty multiplicity sequence")]
    Empty,
    #[error("sequence increases at index {index}: {prev} < {next}")]
    NotNonIncreasing { index: usize, prev: u32, next: u32 },
    #[error("proximity violated at index {index}: m = {value} but the following block sums to {block_sum}")]
    Proximity { index: usize, value: u32, block_sum: u32 },
    #[error("delta budget must be positive, got {0}")]
    BadBudget(i64),
}

/// Why a candidate list of multiplicities is not a multiplicity sequence.
pub type Violation = CuspError;

/// Checks a compact list (entries >= 2) for monotonicity and the proximity
/// equality: for every `i` the shortest block `m_{i+1} + ... + m_{i+k}` that
/// reaches `m_i` must equal it, reading entries past the end as 1.
pub fn validate(entries: &[u32]) -> Result<(), Violation> {
    if entries.is_empty() {
        return Err(CuspError::Empty);
    }
    for (index, &value) in entries.iter().enumerate() {
        if value < 2 {
            return Err(CuspError::ValueTooSmall { index, value });
        }
    }
    for (index, w) in entries.windows(2).enumerate() {
        if w[1] > w[0] {
            return Err(CuspError::NotNonIncreasing { index: index + 1, prev: w[0], next: w[1] });
        }
    }
    for index in 0..entries.len() {
        let value = entries[index];
        let block_sum = proximate_block_sum(entries, index, true).unwrap_or(value);
        if block_sum != value {
            return Err(CuspError::Proximity { index, value, block_sum });
        }
    }
    Ok(())
}

/// Sum of the shortest block after `index` reaching `entries[index]`. With
/// `extend` false the block must close inside `entries`, otherwise `None`.
/// With `extend` the last entry is followed by its own run of ones, and an
/// earlier block may borrow only the first of them.
fn proximate_block_sum(entries: &[u32], index: usize, extend: bool) -> Option<u32> {
    let target = entries[index];
    let last = index + 1 == entries.len();
    let mut sum = 0;
    let mut j = index + 1;
    while sum < target {
        sum += match entries.get(j) {
            Some(&m) => m,
            None if extend && (last || j == entries.len()) => 1,
            None if extend => return Some(sum),
            None => return None,
        };
        j += 1;
    }
    Some(sum)
}

/// A cusp's multiplicity sequence in compact form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicitySequence(Vec<u32>);

impl MultiplicitySequence {
    pub fn new(entries: Vec<u32>) -> Result<Self, CuspError> {
        validate(&entries)?;
        Ok(MultiplicitySequence(entries))
    }

    /// `[2_n]`, the sequence of an `A_{2n}` cusp.
    pub fn ordinary_run(n: usize) -> Self {
        assert!(n > 0, "[2_0] is not a cusp");
        MultiplicitySequence(alloc::vec![2; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The multiplicity of the cusp itself.
    pub fn multiplicity(&self) -> u32 {
        self.0[0]
    }

    /// The sequence of the next infinitely near point, `None` when it is smooth.
    pub fn tail(&self) -> Option<MultiplicitySequence> {
        if self.0.len() > 1 {
            Some(MultiplicitySequence(self.0[1..].to_vec()))
        } else {
            None
        }
    }

    /// The sequence obtained by putting a point of multiplicity `head` in front
    /// of `rest` (a smooth point when `rest` is `None`).
    pub fn prepend(head: u32, rest: Option<&MultiplicitySequence>) -> Result<Self, CuspError> {
        let mut entries = alloc::vec![head];
        if let Some(rest) = rest {
            entries.extend_from_slice(&rest.0);
        }
        MultiplicitySequence::new(entries)
    }

    /// `sum m_i (m_i - 1) / 2`.
    pub fn delta(&self) -> i64 {
        self.0.iter().map(|&m| i64::from(m) * (i64::from(m) - 1) / 2).sum()
    }

    /// Milnor number; `mu = 2 delta` for a one-branch germ.
    pub fn milnor(&self) -> i64 {
        2 * self.delta()
    }

    /// `eta = sum (m_i - 1)`.
    pub fn eta(&self) -> i64 {
        self.0.iter().map(|&m| i64::from(m) - 1).sum()
    }

    /// `M = sum (m_i - 1) + sum_{i>=1} (ceil(m_{i-1} / m_i) - 1) - 1`, evaluated on
    /// the compact sequence followed by one 1. More trailing 1s add nothing.
    pub fn m_number(&self) -> i64 {
        m_number_with_ones(&self.0, 1)
    }

    /// Number of inner blow-ups in the minimal embedded resolution, from `M = eta + omega - 1`.
    pub fn omega(&self) -> i64 {
        self.m_number() - self.eta() + 1
    }

    pub fn eta_omega(&self) -> (i64, i64) {
        (self.eta(), self.omega())
    }

    /// Number of trailing 1s in the minimal embedded resolution. The last
    /// singular point has exactly `m_last` smooth points proximate to it.
    pub fn trailing_ones(&self) -> usize {
        *self.0.last().unwrap() as usize
    }

    /// Number of blow-ups `t` in the minimal embedded resolution.
    pub fn resolution_length(&self) -> usize {
        self.0.len() + self.trailing_ones()
    }

    /// The full sequence `[m, m_1, ..., m_{t-1}]` including trailing 1s.
    pub fn full_sequence(&self) -> Vec<u32> {
        let mut full = self.0.clone();
        full.extend(core::iter::repeat_n(1, self.trailing_ones()));
        full
    }

    /// `sum m_i` over the full sequence.
    pub fn full_sum(&self) -> i64 {
        self.full_sequence().iter().map(|&m| i64::from(m)).sum()
    }

    /// `sum m_i^2` over the full sequence.
    pub fn full_square_sum(&self) -> i64 {
        self.full_sequence().iter().map(|&m| i64::from(m) * i64::from(m)).sum()
    }

    pub fn invariants(&self) -> CuspInvariants {
        let (eta, omega) = self.eta_omega();
        CuspInvariants {
            delta: self.delta(),
            mu: self.milnor(),
            eta,
            omega,
            m_number: self.m_number(),
            t: self.resolution_length(),
        }
    }
}

/// Closed M-number formula on `entries` followed by `ones` 1s.
pub fn m_number_with_ones(entries: &[u32], ones: usize) -> i64 {
    let mut full: Vec<i64> = entries.iter().map(|&m| i64::from(m)).collect();
    full.extend(core::iter::repeat_n(1, ones));
    let eta: i64 = full.iter().map(|m| m - 1).sum();
    let ratio: i64 = full.windows(2).map(|w| (w[0] + w[1] - 1) / w[1] - 1).sum();
    eta + ratio - 1
}

/// Per-cusp numbers: delta, Milnor number, eta, omega, M-number and resolution length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuspInvariants {
    pub delta: i64,
    pub mu: i64,
    pub eta: i64,
    pub omega: i64,
    pub m_number: i64,
    pub t: usize,
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let v = self.0[i];
            let run = self.0[i..].iter().take_while(|&&m| m == v).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{v}_{run}")?;
            } else {
                write!(f, "{v}")?;
            }
            i += run;
        }
        f.write_str("]")
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8, msg: &'static str) -> Result<(), CuspError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CuspError::Syntax { pos: self.pos, msg })
        }
    }

    fn number(&mut self) -> Result<u32, CuspError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(CuspError::Syntax { pos: start, msg: "expected a non-negative integer" });
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(CuspError::Syntax { pos: start, msg: "integer out of range" })
    }

    /// One bracketed sequence; raw entries, not yet validated.
    fn sequence(&mut self) -> Result<Vec<u32>, CuspError> {
        self.expect(b'[', "expected '['")?;
        let mut entries = Vec::new();
        loop {
            let value = self.number()?;
            let mut repeat = 1;
            if self.peek() == Some(b'_') {
                self.pos += 1;
                repeat = self.number()?;
                if repeat == 0 {
                    return Err(CuspError::ZeroRepeat);
                }
            }
            if value < 2 {
                return Err(CuspError::ValueTooSmall { index: entries.len(), value });
            }
            entries.extend(core::iter::repeat_n(value, repeat as usize));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(entries);
                }
                _ => return Err(CuspError::Syntax { pos: self.pos, msg: "expected ',' or ']'" }),
            }
        }
    }
}

fn strip_whitespace(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

impl FromStr for MultiplicitySequence {
    type Err = CuspError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = strip_whitespace(text);
        let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
        let entries = cur.sequence()?;
        if cur.pos != text.len() {
            return Err(CuspError::Syntax { pos: cur.pos, msg: "trailing input after ']'" });
        }
        MultiplicitySequence::new(entries)
    }
}

/// Parses a cuspidal configuration such as `[4_2,2_3],[2],[2],[2]`. The empty
/// string (or `-`) is the empty configuration.
pub fn parse_config(text: &str) -> Result<Vec<MultiplicitySequence>, CuspError> {
    let text = strip_whitespace(text);
    if text.is_empty() || text == "-" {
        return Ok(Vec::new());
    }
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut config = Vec::new();
    loop {
        config.push(MultiplicitySequence::new(cur.sequence()?)?);
        match cur.peek() {
            None => return Ok(config),
            Some(b',') => cur.pos += 1,
            Some(_) => return Err(CuspError::Syntax { pos: cur.pos, msg: "expected ',' between sequences" }),
        }
    }
}

/// Canonical text of a configuration: largest sequence first.
pub fn format_config(config: &[MultiplicitySequence]) -> String {
    use core::fmt::Write;
    let mut sorted = config.to_vec();
    sort_config(&mut sorted);
    let mut out = String::new();
    for (i, s) in sorted.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{s}");
    }
    out
}

/// Canonical cusp order inside a configuration (descending).
pub fn sort_config(config: &mut [MultiplicitySequence]) {
    config.sort_by(|a, b| b.cmp(a));
}

/// All valid sequences with `delta <= budget`, ordered by delta and then
/// lexicographically.
pub fn enumerate_valid(budget: i64) -> Result<Vec<MultiplicitySequence>, CuspError> {
    if budget <= 0 {
        return Err(CuspError::BadBudget(budget));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_prefix(&mut prefix, budget, u32::MAX, &mut out);
    out.sort_by(|a: &MultiplicitySequence, b| a.delta().cmp(&b.delta()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn extend_prefix(prefix: &mut Vec<u32>, budget: i64, cap: u32, out: &mut Vec<MultiplicitySequence>) {
    let mut m: u32 = 2;
    while m <= cap {
        let cost = i64::from(m) * (i64::from(m) - 1) / 2;
        if cost > budget {
            break;
        }
        prefix.push(m);
        if closed_blocks_hold(prefix) {
            if validate(prefix).is_ok() {
                out.push(MultiplicitySequence(prefix.clone()));
            }
            extend_prefix(prefix, budget - cost, m, out);
        }
        prefix.pop();
        m += 1;
    }
}

/// Blocks that already reach their target inside the prefix never change
/// when more entries are appended.
fn closed_blocks_hold(prefix: &[u32]) -> bool {
    (0..prefix.len()).all(|i| match proximate_block_sum(prefix, i, false) {
        Some(sum) => sum == prefix[i],
        None => true,
    })
}
