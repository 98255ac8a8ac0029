//! Exact multiplicities of the integer eigenvalues of `C_n^(d)`.
//!
//! The only integers that can occur in the spectrum of a non-complete circuit
//! power are `-3, -2, -1, 0, 1` and `2d`. Their multiplicities are given by
//! gcd and 2-adic order arithmetic, with `g = gcd(n, d)` and
//! `h = gcd(n, d + 1)`:
//!
//! | eigenvalue | multiplicity |
//! |---|---|
//! | `2d` | 1 |
//! | `-1` | `gcd(2d + 1, n) - 1` |
//! | `0` | `g - 1`, `g + h - 1` or `g + h - 2` |
//! | `-2` | `h - 1`, `g + h - 1` or `g + h - 2` |
//! | `1` | 2 if `6 ∣ n` and `d ≡ 1 (mod 6)`, else 0 |
//! | `-3` | 2 if `6 ∣ n` and `d ≡ 4 (mod 6)`, else 0 |

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, CircuitPower};

/// `ord_p(n)`, the largest `j` with `p^j ∣ n`.
pub fn ord(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroValuation);
    }
    let (mut n, mut j) = (n, 0);
    while n % p == 0 {
        n /= p;
        j += 1;
    }
    Ok(j)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn ord2(n: u64) -> u32 {
    n.trailing_zeros()
}

/// Which case of which theorem produced a multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// `2d`, the degree of regularity.
    Regularity,
    /// `-1`: `gcd(2d + 1, n) - 1`.
    GcdOddPart,
    /// `0`: `ord2(d+1) >= ord2(n)`.
    NullityOrdAtLeast,
    /// `0`: `ord2(d+1) < ord2(n)` and `d` odd.
    NullityOrdBelowOddD,
    /// `0`: `n` and `d` even.
    NullityEvenNEvenD,
    /// `-2`: `ord2(d) >= ord2(n)`.
    MinusTwoOrdAtLeast,
    /// `-2`: `ord2(d) < ord2(n)` and `d` even.
    MinusTwoOrdBelowEvenD,
    /// `-2`: `n` even and `d` odd.
    MinusTwoEvenNOddD,
    /// `-2` on the plain cycle (`d = 1`): present iff `n` is even.
    MinusTwoCycle,
    /// `1` or `-3`: `6 ∣ n` and the congruence on `d` holds.
    SixfoldPresent,
    /// `1` or `-3`: the condition fails.
    SixfoldAbsent,
}

impl CaseTag {
    pub fn description(self) -> &'static str {
        match self {
            CaseTag::Regularity => "regular degree 2d",
            CaseTag::GcdOddPart => "gcd(2d+1,n)-1",
            CaseTag::NullityOrdAtLeast => "ord2(d+1)>=ord2(n)",
            CaseTag::NullityOrdBelowOddD => "ord2(d+1)<ord2(n), d odd",
            CaseTag::NullityEvenNEvenD => "2|n, 2|d",
            CaseTag::MinusTwoOrdAtLeast => "ord2(d)>=ord2(n)",
            CaseTag::MinusTwoOrdBelowEvenD => "ord2(d)<ord2(n), 2|d",
            CaseTag::MinusTwoEvenNOddD => "2|n, d odd",
            CaseTag::MinusTwoCycle => "cycle (d=1): -2 iff 2|n",
            CaseTag::SixfoldPresent => "6|n and congruence on d holds",
            CaseTag::SixfoldAbsent => "6|n or congruence on d fails",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// Arithmetic inputs of a multiplicity formula. For eigenvalue `-1`, `g` is
/// `gcd(2d + 1, n)`; everywhere else it is `gcd(n, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub g: u64,
    pub h: u64,
    pub ord2_n: u32,
    pub ord2_d: u32,
    pub ord2_d1: u32,
}

impl TheoremParams {
    pub fn new(n: u64, d: u64) -> Self {
        Self {
            g: n.gcd(&d),
            h: n.gcd(&(d + 1)),
            ord2_n: ord2(n),
            ord2_d: ord2(d),
            ord2_d1: ord2(d + 1),
        }
    }
}

/// One integer eigenvalue with its predicted multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerEigReport {
    pub eigenvalue: i64,
    pub multiplicity: usize,
    pub case_tag: CaseTag,
    pub params: TheoremParams,
}

fn non_complete(n: usize, d: usize) -> Result<(u64, u64)> {
    CircuitPower::new(n, d)?.require_non_complete()?;
    Ok((n as u64, d as u64))
}

/// Multiplicity of `2d`, always 1.
pub fn mult_regular(n: usize, d: usize) -> Result<IntegerEigReport> {
    let (n64, d64) = non_complete(n, d)?;
    Ok(IntegerEigReport {
        eigenvalue: 2 * d as i64,
        multiplicity: 1,
        case_tag: CaseTag::Regularity,
        params: TheoremParams::new(n64, d64),
    })
}

/// Multiplicity of `-1`: `gcd(2d + 1, n) - 1`.
pub fn mult_minus_one(n: usize, d: usize) -> Result<IntegerEigReport> {
    let (n64, d64) = non_complete(n, d)?;
    let mut params = TheoremParams::new(n64, d64);
    params.g = n64.gcd(&(2 * d64 + 1));
    Ok(IntegerEigReport {
        eigenvalue: -1,
        multiplicity: (params.g - 1) as usize,
        case_tag: CaseTag::GcdOddPart,
        params,
    })
}

/// Picks the first case whose condition holds and checks that every other
/// applicable case gives the same value.
fn resolve(
    n: usize,
    d: usize,
    cases: [(bool, u64, CaseTag); 3],
) -> Result<(usize, CaseTag)> {
    let mut hit: Option<(u64, CaseTag)> = None;
    for (holds, value, tag) in cases {
        if !holds {
            continue;
        }
        match hit {
            None => hit = Some((value, tag)),
            Some((v, first)) if v != value => {
                return Err(Error::InconsistentCases {
                    n,
                    d,
                    reason: format!("{first} gives {v} but {tag} gives {value}"),
                });
            }
            Some(_) => {}
        }
    }
    hit.map(|(v, tag)| (v as usize, tag))
        .ok_or_else(|| Error::InconsistentCases {
            n,
            d,
            reason: "no case applies".into(),
        })
}

/// Multiplicity of `0` (the nullity).
pub fn nullity(n: usize, d: usize) -> Result<IntegerEigReport> {
    let (n64, d64) = non_complete(n, d)?;
    let p = TheoremParams::new(n64, d64);
    let (g, h) = (p.g, p.h);
    let (multiplicity, case_tag) = resolve(
        n,
        d,
        [
            (p.ord2_d1 >= p.ord2_n, g - 1, CaseTag::NullityOrdAtLeast),
            (
                p.ord2_d1 < p.ord2_n && d64 % 2 == 1,
                g + h - 1,
                CaseTag::NullityOrdBelowOddD,
            ),
            (
                n64 % 2 == 0 && d64 % 2 == 0,
                (g + h).saturating_sub(2),
                CaseTag::NullityEvenNEvenD,
            ),
        ],
    )?;
    Ok(IntegerEigReport {
        eigenvalue: 0,
        multiplicity,
        case_tag,
        params: p,
    })
}

/// Multiplicity of `-2` for `d > 1`.
pub fn mult_minus_two(n: usize, d: usize) -> Result<IntegerEigReport> {
    let (n64, d64) = non_complete(n, d)?;
    if d == 1 {
        return Err(Error::RequiresDGreaterThanOne);
    }
    let p = TheoremParams::new(n64, d64);
    let (g, h) = (p.g, p.h);
    let (multiplicity, case_tag) = resolve(
        n,
        d,
        [
            (p.ord2_d >= p.ord2_n, h - 1, CaseTag::MinusTwoOrdAtLeast),
            (
                p.ord2_d < p.ord2_n && d64 % 2 == 0,
                g + h - 1,
                CaseTag::MinusTwoOrdBelowEvenD,
            ),
            (
                n64 % 2 == 0 && d64 % 2 == 1,
                (g + h).saturating_sub(2),
                CaseTag::MinusTwoEvenNOddD,
            ),
        ],
    )?;
    Ok(IntegerEigReport {
        eigenvalue: -2,
        multiplicity,
        case_tag,
        params: p,
    })
}

/// Multiplicity of `-2` on the cycle `C_n`: 1 if `n` is even, else 0.
pub fn mult_minus_two_cycle(n: usize) -> Result<IntegerEigReport> {
    let (n64, d64) = non_complete(n, 1)?;
    Ok(IntegerEigReport {
        eigenvalue: -2,
        multiplicity: usize::from(n % 2 == 0),
        case_tag: CaseTag::MinusTwoCycle,
        params: TheoremParams::new(n64, d64),
    })
}

fn sixfold(n: usize, d: usize, eigenvalue: i64, residue: usize) -> Result<IntegerEigReport> {
    let (n64, d64) = non_complete(n, d)?;
    let present = n % 6 == 0 && d % 6 == residue;
    Ok(IntegerEigReport {
        eigenvalue,
        multiplicity: if present { 2 } else { 0 },
        case_tag: if present {
            CaseTag::SixfoldPresent
        } else {
            CaseTag::SixfoldAbsent
        },
        params: TheoremParams::new(n64, d64),
    })
}

/// Multiplicity of `1`: 2 iff `6 ∣ n` and `d ≡ 1 (mod 6)`.
pub fn mult_one(n: usize, d: usize) -> Result<IntegerEigReport> {
    sixfold(n, d, 1, 1)
}

/// Multiplicity of `-3`: 2 iff `6 ∣ n` and `d ≡ 4 (mod 6)`.
pub fn mult_minus_three(n: usize, d: usize) -> Result<IntegerEigReport> {
    sixfold(n, d, -3, 4)
}

/// The integers that can be eigenvalues of `C_n^(d)`, ascending.
pub fn candidates(d: usize) -> [i64; 6] {
    [-3, -2, -1, 0, 1, 2 * d as i64]
}

/// Report for a single candidate eigenvalue.
pub fn integer_report(n: usize, d: usize, eigenvalue: i64) -> Result<IntegerEigReport> {
    match eigenvalue {
        -3 => mult_minus_three(n, d),
        -2 if d == 1 => mult_minus_two_cycle(n),
        -2 => mult_minus_two(n, d),
        -1 => mult_minus_one(n, d),
        0 => nullity(n, d),
        1 => mult_one(n, d),
        x if x == 2 * d as i64 => mult_regular(n, d),
        _ => {
            non_complete(n, d)?;
            Err(Error::NotACandidate { n, d, eigenvalue })
        }
    }
}

/// Reports for all six candidates, ascending by eigenvalue, zero
/// multiplicities included.
pub fn integer_spectrum(n: usize, d: usize) -> Result<Vec<IntegerEigReport>> {
    candidates(d)
        .iter()
        .map(|&x| integer_report(n, d, x))
        .collect()
}

/// A set `{k ∈ 1..n : gcd(k, n) = divisor}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub divisor: usize,
    pub members: Vec<usize>,
    /// Members that are not jumps.
    pub missing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityVerdict {
    pub integral: bool,
    /// A gcd class that meets the jump set without being contained in it.
    pub violating_class: Option<DivisorClass>,
}

/// Integrality of a circulant graph: all eigenvalues are integers iff the
/// jump set is a union of complete gcd classes.
pub fn is_integral(g: &CirculantGraph) -> IntegralityVerdict {
    let n = g.n();
    let mut checked = Vec::new();
    for &j in g.jumps() {
        let divisor = j.gcd(&n);
        if checked.contains(&divisor) {
            continue;
        }
        checked.push(divisor);
        let members: Vec<usize> = (1..n).filter(|k| k.gcd(&n) == divisor).collect();
        let missing: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&k| !g.contains_jump(k))
            .collect();
        if !missing.is_empty() {
            return IntegralityVerdict {
                integral: false,
                violating_class: Some(DivisorClass {
                    divisor,
                    members,
                    missing,
                }),
            };
        }
    }
    IntegralityVerdict {
        integral: true,
        violating_class: None,
    }
}
