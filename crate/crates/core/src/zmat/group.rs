use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k` with
/// `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    free_rank: usize,
    #[serde(with = "crate::report::bigint_vec")]
    torsion: Vec<BigInt>,
}

/// A prime power `p^e` in a primary decomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: BigInt,
    pub exponent: u32,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^free_rank` plus the cyclic groups `Z/c` for each `c` in `cyclic`.
    /// Orders may be given in any order and need not divide each other;
    /// `c = 0` contributes a free summand and `c = +-1` nothing.
    pub fn new(free_rank: usize, cyclic: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut orders = Vec::new();
        for c in cyclic {
            let c = c.abs();
            if c.is_zero() {
                free_rank += 1;
            } else if !c.is_one() {
                orders.push(c);
            }
        }
        // Z/a + Z/b = Z/gcd + Z/lcm; after pass i, orders[i] divides all later ones
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                let g = orders[i].gcd(&orders[j]);
                let l = orders[i].lcm(&orders[j]);
                orders[i] = g;
                orders[j] = l;
            }
        }
        orders.retain(|d| !d.is_one());
        FinAbGroup {
            free_rank,
            torsion: orders,
        }
    }

    /// From an already normalized divisibility chain (all factors >= 2).
    pub(crate) fn from_chain(free_rank: usize, chain: impl IntoIterator<Item = BigInt>) -> Self {
        let g = Self::new(free_rank, chain);
        debug_assert!(g.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        g
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors of the torsion subgroup.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_part(&self) -> FinAbGroup {
        FinAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Exponent of the torsion subgroup (1 if there is none).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        FinAbGroup::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// Torsion as prime powers, sorted by prime then exponent.
    ///
    /// Factors are split by trial division up to 2^20; a cofactor left over
    /// after that is reported as a single entry with exponent 1 even if it
    /// is composite.
    pub fn primary_decomposition(&self) -> Vec<PrimePower> {
        let mut out: Vec<PrimePower> = self.torsion.iter().flat_map(factorize).collect();
        out.sort();
        out
    }

    /// Primary form in the style `(Z/2)^2 + Z/3`; `0` for the trivial group.
    pub fn primary_string(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let pp = self.primary_decomposition();
        let mut i = 0;
        while i < pp.len() {
            let mut j = i;
            while j < pp.len() && pp[j] == pp[i] {
                j += 1;
            }
            let q = pp[i].prime.pow(pp[i].exponent);
            if j - i == 1 {
                parts.push(format!("Z/{q}"));
            } else {
                parts.push(format!("(Z/{q})^{}", j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn factorize(n: &BigInt) -> Vec<PrimePower> {
    const LIMIT: u64 = 1 << 20;
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= LIMIT && BigInt::from(p) * p <= n {
        let bp = BigInt::from(p);
        let mut e = 0;
        while n.is_multiple_of(&bp) {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push(PrimePower {
                prime: bp,
                exponent: e,
            });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(PrimePower {
            prime: n,
            exponent: 1,
        });
    }
    out
}

/// Invariant factor form, e.g. `Z^2 + Z/2 + Z/6`.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl PrimePower {
    pub fn value(&self) -> BigInt {
        self.prime.pow(self.exponent)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }
}
