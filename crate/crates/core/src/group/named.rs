//! Standard families from their presentations.
//!
//! Element ids follow the normal form of each presentation:
//!
//! * `C_n`: `a^i` has id `i`.
//! * `D`, `Q`, `SD`, `Mod`: `a^i t^j` has id `i + M j`, where `M` is the
//!   order of `a` and `t` is the second generator (`b`, `x`, `d`, `c`).
//! * `DD_{16u}`: `a^i b^e c^f` has id `i + 4u (e + 2f)`; `bc` is written `d`.
//! * `V_{p^k}`: `e_1^{d_1} ... e_k^{d_k}` has id `Σ d_i p^{i-1}`.

use std::fmt;
use std::str::FromStr;

use super::{FiniteGroup, GroupError, MAX_ORDER};
use crate::arith::{log_p, prime_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    C,
    D,
    Q,
    SD,
    Mod,
    DD,
    V,
}

impl Family {
    pub const ALL: [Family; 7] =
        [Family::C, Family::D, Family::Q, Family::SD, Family::Mod, Family::DD, Family::V];

    pub fn name(self) -> &'static str {
        match self {
            Family::C => "C",
            Family::D => "D",
            Family::Q => "Q",
            Family::SD => "SD",
            Family::Mod => "Mod",
            Family::DD => "DD",
            Family::V => "V",
        }
    }

    /// The prime of a legal order, or an error.
    pub fn check_order(self, order: u64) -> Result<u32, GroupError> {
        let illegal = || GroupError::IllegalOrderForFamily { family: self.name().into(), order };
        if order == 0 || order > u32::MAX as u64 {
            return Err(illegal());
        }
        let n = order as u32;
        if n == 1 {
            return if self == Family::C { Ok(2) } else { Err(illegal()) };
        }
        let (p, k) = prime_power(n).ok_or_else(illegal)?;
        let ok = match self {
            Family::C | Family::V => true,
            Family::D | Family::Q => p == 2 && k >= 3,
            Family::SD => p == 2 && k >= 4,
            Family::Mod => k >= if p == 2 { 4 } else { 3 },
            Family::DD => p == 2 && k >= 5,
        };
        if ok {
            Ok(p)
        } else {
            Err(illegal())
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or(())
    }
}

fn power_label(gen: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => gen.to_string(),
        _ => format!("{gen}^{e}"),
    }
}

fn join_label(parts: &[String]) -> String {
    let s: String = parts.concat();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `⟨a, t | a^m, t^k = a^s, t a t^{-1} = a^r⟩` in normal form `a^i t^j`.
fn metacyclic(p: u32, m: usize, k: usize, r: usize, s: usize, t: &str) -> FiniteGroup {
    let n = m * k;
    // r^j mod m
    let mut rpow = vec![1 % m; k];
    for j in 1..k {
        rpow[j] = rpow[j - 1] * r % m;
    }
    let labels = (0..n)
        .map(|id| join_label(&[power_label("a", id % m), power_label(t, id / m)]))
        .collect();
    FiniteGroup::from_fn(
        n,
        p,
        |x, y| {
            let (i, j) = (x % m, x / m);
            let (u, l) = (y % m, y / m);
            let mut e = i + u * rpow[j];
            let mut f = j + l;
            if f >= k {
                f -= k;
                e += s;
            }
            e % m + m * f
        },
        Some(labels),
    )
}

fn elementary_abelian(p: u32, k: u32) -> FiniteGroup {
    let n = p.pow(k) as usize;
    let pu = p as usize;
    let labels = (0..n)
        .map(|id| {
            let parts: Vec<String> = (0..k as usize)
                .map(|i| {
                    let d = id / pu.pow(i as u32) % pu;
                    power_label(&format!("e{}", i + 1), d)
                })
                .collect();
            join_label(&parts)
        })
        .collect();
    FiniteGroup::from_fn(
        n,
        p,
        |x, y| {
            let mut out = 0;
            let mut place = 1;
            let (mut x, mut y) = (x, y);
            for _ in 0..k {
                out += ((x % pu + y % pu) % pu) * place;
                x /= pu;
                y /= pu;
                place *= pu;
            }
            out
        },
        Some(labels),
    )
}

/// `C_{4u} ⋊ V_4` with `b: a ↦ a^{-1}`, `c: a ↦ a^{2u+1}`.
fn dd(order: usize) -> FiniteGroup {
    let u = order / 16;
    let m = 4 * u;
    let act = |e: usize, f: usize| -> usize {
        let mut r = 1;
        if e == 1 {
            r = r * (m - 1) % m;
        }
        if f == 1 {
            r = r * (2 * u + 1) % m;
        }
        r
    };
    let labels = (0..order)
        .map(|id| {
            let (i, v) = (id % m, id / m);
            let t = ["", "b", "c", "d"][v];
            join_label(&[power_label("a", i), t.to_string()])
        })
        .collect();
    FiniteGroup::from_fn(
        order,
        2,
        |x, y| {
            let (i, v) = (x % m, x / m);
            let (k, w) = (y % m, y / m);
            let (e, f) = (v & 1, v >> 1);
            (i + k * act(e, f)) % m + m * (v ^ w)
        },
        Some(labels),
    )
}

/// A group of the given family and order, in the normal form above.
pub fn make_named(family: Family, order: u64) -> Result<FiniteGroup, GroupError> {
    let p = family.check_order(order)?;
    if order as usize > MAX_ORDER {
        return Err(GroupError::GroupTooLarge(order as usize));
    }
    let n = order as usize;
    let g = match family {
        Family::C => metacyclic(p, n, 1, 1, 0, "x"),
        Family::D => metacyclic(2, n / 2, 2, n / 2 - 1, 0, "b"),
        Family::Q => metacyclic(2, n / 2, 2, n / 2 - 1, n / 4, "x"),
        Family::SD => metacyclic(2, n / 2, 2, n / 4 - 1, 0, "d"),
        Family::Mod => {
            let pu = p as usize;
            let m = n / pu;
            metacyclic(p, m, pu, m / pu + 1, 0, "c")
        }
        Family::DD => dd(n),
        Family::V => elementary_abelian(p, log_p(n as u32, p).unwrap()),
    };
    Ok(g)
}
