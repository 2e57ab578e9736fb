//! Index labels. Dummies are small integers; free (named) indices live above
//! `FREE_BASE` with an order-preserving encoding of their names.

use crate::error::AlgebraError;

pub type Label = u32;

pub const FREE_BASE: Label = 1 << 31;
const ALPHABET: &[u8] = b"'0123456789abcdefghijklmnopqrstuvwxyz";
const RADIX: u32 = 38;
const WIDTH: usize = 4;

/// Which end of a contraction a slot is. A contracted pair joins one `U`
/// end (unbarred tensor slot, z-bar, b) with one `B` end (barred slot, z, b+).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum End {
    U,
    B,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::U => End::B,
            End::B => End::U,
        }
    }
}

pub fn is_free(l: Label) -> bool {
    l >= FREE_BASE
}

/// Encodes a name of at most four characters from `[a-z0-9']` as a free label.
pub fn free(name: &str) -> Result<Label, AlgebraError> {
    let bytes = name.as_bytes();
    if bytes.is_empty() || bytes.len() > WIDTH {
        return Err(AlgebraError::BadIndexName(name.to_string()));
    }
    let mut code: u32 = 0;
    for i in 0..WIDTH {
        let digit = match bytes.get(i) {
            None => 0,
            Some(b) => match ALPHABET.iter().position(|a| a == b) {
                Some(p) => p as u32 + 1,
                None => return Err(AlgebraError::BadIndexName(name.to_string())),
            },
        };
        code = code * RADIX + digit;
    }
    Ok(FREE_BASE + code)
}

/// Free label for a name known to be valid.
pub fn fr(name: &str) -> Label {
    free(name).expect("valid index name")
}

pub fn free_name(l: Label) -> String {
    let mut code = l - FREE_BASE;
    let mut out = Vec::new();
    for _ in 0..WIDTH {
        let d = code % RADIX;
        code /= RADIX;
        if d > 0 {
            out.push(ALPHABET[(d - 1) as usize]);
        }
    }
    out.reverse();
    String::from_utf8(out).unwrap_or_default()
}

const DUMMY_NAMES: &[&str] = &[
    "k", "m", "l", "q", "s", "t", "u", "v", "w", "a", "c", "d", "e", "h", "o", "r", "x", "y",
];

/// Display names for dummies `0..count`, skipping any name taken by a free index.
pub fn dummy_names(count: usize, taken: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut pool = DUMMY_NAMES.iter().map(|s| s.to_string()).filter(|s| !taken.contains(s));
    let mut extra = 0;
    while out.len() < count {
        match pool.next() {
            Some(n) => out.push(n),
            None => {
                extra += 1;
                out.push(format!("i{extra}"));
            }
        }
    }
    out
}
