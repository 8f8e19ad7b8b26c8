//! Exact arithmetic in prime-power cyclotomic fields.
//!
//! A [`CycNum`] at level `n = p^a` stores coordinates over the basis
//! `ζ_n^j, 0 <= j < φ(n)`. Powers `ζ^j` with `j >= φ(n)` are rewritten with
//! `ζ^j = -Σ_{k<p-1} ζ^{j0 + k n/p}` where `j = j0 + (p-1) n/p`. Values are
//! kept at the smallest level containing them (level 2 collapses to 1), so
//! structural equality is field equality.
//!
//! For cross-checking with numerical tools: `ζ_n` corresponds to
//! `exp(2πi/n)` in ℂ.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, mod_pow, prime_power, smallest_prime, units};
use crate::rational::Rational;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("levels {0} and {1} are powers of different primes")]
    MixedPrimeLevels(u32, u32),
    #[error("{k} is not a unit modulo {n}")]
    NotAUnit { k: i64, n: u32 },
    #[error("level {0} is not a prime power")]
    BadLevel(u32),
    #[error("the given units do not form a subgroup of (Z/{0})^x")]
    NotASubgroup(u32),
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
}

/// An element of `ℚ(ζ_n)` for a prime power `n`, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    level: u32,
    coeffs: Vec<Rational>,
}

/// Checks that `n` is 1 or a prime power.
fn check_level(n: u32) -> Result<(), CycError> {
    if n == 1 || prime_power(n).is_some() {
        Ok(())
    } else {
        Err(CycError::BadLevel(n))
    }
}

/// The level both arguments embed into.
fn common_level(a: u32, b: u32) -> Result<u32, CycError> {
    if a == 1 || b == 1 {
        return Ok(a.max(b));
    }
    if smallest_prime(a) != smallest_prime(b) {
        return Err(CycError::MixedPrimeLevels(a, b));
    }
    Ok(a.max(b))
}

/// Rewrites a length-`n` vector of power coefficients in place so that only
/// the first `φ(n)` entries are nonzero.
fn reduce_powers(n: u32, v: &mut [Rational]) {
    if n == 1 {
        return;
    }
    let p = smallest_prime(n).unwrap() as usize;
    let n = n as usize;
    let step = n / p;
    let phi = n - step;
    for j in (phi..n).rev() {
        if v[j].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[j]);
        let j0 = j - phi;
        for k in 0..p - 1 {
            v[j0 + k * step] -= &c;
        }
    }
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum { level: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> CycNum {
        CycNum::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> CycNum {
        CycNum { level: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> CycNum {
        CycNum::rational(Rational::from_int(k))
    }

    /// Builds from canonical coordinates at level `n`, minimizing the level.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<CycNum, CycError> {
        check_level(n)?;
        let expected = euler_phi(n) as usize;
        if coeffs.len() != expected {
            return Err(CycError::BadLength { got: coeffs.len(), expected });
        }
        let mut x = CycNum { level: n, coeffs };
        x.minimize();
        Ok(x)
    }

    /// `Σ_j c_j ζ_n^j` for an arbitrary-length power vector (indices mod `n`).
    pub fn from_powers(n: u32, powers: &[Rational]) -> Result<CycNum, CycError> {
        check_level(n)?;
        let mut v = vec![Rational::zero(); n as usize];
        for (j, c) in powers.iter().enumerate() {
            if !c.is_zero() {
                v[j % n as usize] += c;
            }
        }
        Ok(CycNum::from_full_powers(n, v))
    }

    /// Like [`CycNum::from_powers`] for small integer multiplicities.
    pub fn from_power_counts(n: u32, counts: &[i64]) -> Result<CycNum, CycError> {
        check_level(n)?;
        let mut acc = vec![0i64; n as usize];
        for (j, c) in counts.iter().enumerate() {
            acc[j % n as usize] += c;
        }
        Ok(CycNum::from_full_powers(n, acc.into_iter().map(Rational::from_int).collect()))
    }

    /// Takes a length-`n` power vector, reduces and minimizes it.
    fn from_full_powers(n: u32, mut v: Vec<Rational>) -> CycNum {
        reduce_powers(n, &mut v);
        v.truncate(euler_phi(n) as usize);
        let mut x = CycNum { level: n, coeffs: v };
        x.minimize();
        x
    }

    /// `ζ_n^j`.
    pub fn root_of_unity(n: u32, j: i64) -> Result<CycNum, CycError> {
        check_level(n)?;
        let mut v = vec![Rational::zero(); n as usize];
        v[j.rem_euclid(n as i64) as usize] = Rational::one();
        Ok(CycNum::from_full_powers(n, v))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.level == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.level == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The value as an `i64` when it is a rational integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_rational().and_then(|q| q.to_i64())
    }

    /// Lowers the level while the value lies in a smaller cyclotomic field.
    fn minimize(&mut self) {
        loop {
            let n = self.level;
            if n == 1 {
                return;
            }
            let p = smallest_prime(n).unwrap();
            if n == p || n == 2 {
                if self.coeffs[1..].iter().all(Rational::is_zero) {
                    self.coeffs.truncate(1);
                    self.level = 1;
                }
                return;
            }
            let supported = self
                .coeffs
                .iter()
                .enumerate()
                .all(|(j, c)| j % p as usize == 0 || c.is_zero());
            if !supported {
                return;
            }
            let coeffs: Vec<Rational> =
                self.coeffs.iter().step_by(p as usize).cloned().collect();
            self.level = n / p;
            self.coeffs = coeffs;
            if self.level == 2 {
                self.level = 1;
            }
        }
    }

    /// Canonical coordinates after embedding into level `n`.
    pub fn coeffs_at(&self, n: u32) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); euler_phi(n) as usize];
        self.add_into(n, &Rational::one(), &mut out);
        out
    }

    /// Adds `scale * self` to canonical coordinates at level `n`, which must
    /// be a multiple of this value's level.
    pub fn add_into(&self, n: u32, scale: &Rational, acc: &mut [Rational]) {
        debug_assert!(n.is_multiple_of(self.level) || self.level == 1);
        let stride = (n / self.level) as usize;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if scale.is_one() {
                    acc[j * stride] += c;
                } else {
                    acc[j * stride] += &(c * scale);
                }
            }
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum, CycError> {
        let n = common_level(self.level, other.level)?;
        let mut acc = vec![Rational::zero(); euler_phi(n) as usize];
        self.add_into(n, &Rational::one(), &mut acc);
        other.add_into(n, &Rational::one(), &mut acc);
        let mut x = CycNum { level: n, coeffs: acc };
        x.minimize();
        Ok(x)
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum, CycError> {
        if self.is_rational() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let n = common_level(self.level, other.level)?;
        let sa = (n / self.level) as usize;
        let sb = (n / other.level) as usize;
        let nn = n as usize;
        let mut v = vec![Rational::zero(); nn];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[(i * sa + j * sb) % nn] += &(a * b);
            }
        }
        Ok(CycNum::from_full_powers(n, v))
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        if q.is_zero() {
            return CycNum::zero();
        }
        CycNum { level: self.level, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn neg(&self) -> CycNum {
        CycNum { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self + &other.neg()
    }

    /// The automorphism `ζ ↦ ζ^k`, where `k` is read modulo this value's level.
    pub fn galois_apply(&self, k: i64) -> Result<CycNum, CycError> {
        let n = self.level;
        let km = k.rem_euclid(n as i64) as u32;
        if km.gcd(&n) != 1 {
            return Err(CycError::NotAUnit { k, n });
        }
        if n == 1 || km == 1 {
            return Ok(self.clone());
        }
        let mut v = vec![Rational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(j as u64 * km as u64 % n as u64) as usize] = c.clone();
            }
        }
        Ok(CycNum::from_full_powers(n, v))
    }

    /// Complex conjugation.
    pub fn conjugate(&self) -> CycNum {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    /// Multiplicative inverse via the norm: `x^{-1} = (Π_{k≠1} σ_k x) / N(x)`.
    pub fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(CycNum::rational(q.recip()));
        }
        let mut prod = CycNum::one();
        for k in units(self.level) {
            if k != 1 {
                prod = &prod * &self.galois_apply(k as i64).unwrap();
            }
        }
        let norm = (&prod * self).to_rational().expect("norm is rational");
        Some(prod.scale(&norm.recip()))
    }
}

impl std::ops::Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.try_add(rhs).expect("mixed-prime cyclotomic levels")
    }
}

impl std::ops::Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.try_mul(rhs).expect("mixed-prime cyclotomic levels")
    }
}

impl std::ops::Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::sub(self, rhs)
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match j {
                0 => String::new(),
                1 => format!("z{}", self.level),
                _ => format!("z{}^{}", self.level, j),
            };
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{mag}*{z}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    n: u32,
    coeffs: Vec<Rational>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumRepr { n: self.level, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycNumRepr::deserialize(d)?;
        CycNum::from_coeffs(r.n, r.coeffs).map_err(serde::de::Error::custom)
    }
}

/// A subfield of `ℚ(ζ_n)`, given by the subgroup of `(ℤ/n)^×` fixing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldHandle {
    pub n: u32,
    pub stab: Vec<u32>,
    #[serde(skip)]
    pub degree: u32,
    #[serde(skip)]
    pub conductor: u32,
    #[serde(skip)]
    pub is_real: bool,
    pub name: Option<String>,
}

fn is_subgroup(n: u32, s: &[u32]) -> bool {
    let set: std::collections::BTreeSet<u32> = s.iter().copied().collect();
    let one = 1 % n;
    set.contains(&one)
        && set.iter().all(|&k| k < n && k.gcd(&n) == 1)
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&((a as u64 * b as u64 % n as u64) as u32))))
}

/// The subgroup of `(ℤ/n)^×` generated by `gens`, sorted.
pub fn generated_units(n: u32, gens: &[u32]) -> Vec<u32> {
    let mut set = std::collections::BTreeSet::from([1 % n]);
    let mut frontier = vec![1 % n];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = (x as u64 * g as u64 % n as u64) as u32;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// The field fixed by `stab`, a subgroup of `(ℤ/n)^×`.
pub fn stabilizer_field(n: u32, stab: &[u32]) -> Result<FieldHandle, CycError> {
    check_level(n)?;
    let mut stab: Vec<u32> = stab.iter().map(|&k| k % n).collect();
    stab.sort_unstable();
    stab.dedup();
    if !is_subgroup(n, &stab) {
        return Err(CycError::NotASubgroup(n));
    }
    let all = units(n);
    let degree = all.len() as u32 / stab.len() as u32;
    let conductor = divisors_ascending(n)
        .into_iter()
        .find(|&d| all.iter().filter(|&&k| k % d == 1 % d).all(|k| stab.binary_search(k).is_ok()))
        .unwrap();
    let is_real = stab.binary_search(&((n - 1) % n.max(1))).is_ok() || n <= 2;
    let mut f = FieldHandle { n, stab, degree, conductor, is_real, name: None };
    f.name = field_name(&f);
    Ok(f)
}

fn divisors_ascending(n: u32) -> Vec<u32> {
    match prime_power(n) {
        None => vec![1],
        Some((p, k)) => (0..=k).map(|i| p.pow(i)).collect(),
    }
}

fn field_name(f: &FieldHandle) -> Option<String> {
    let c = f.conductor;
    if c == 1 {
        return Some("Q".into());
    }
    let reduced = f.at_conductor_stab();
    if reduced.len() == 1 {
        return Some(format!("Q_{c}"));
    }
    if reduced == [1, c - 1] {
        return Some(format!("Q_{c}^R"));
    }
    if c.is_multiple_of(8) && reduced == [1, c / 2 - 1] {
        return Some(format!("Q_{c}^I"));
    }
    None
}

impl FieldHandle {
    /// The stabilizer reduced to level `conductor`.
    fn at_conductor_stab(&self) -> Vec<u32> {
        let c = self.conductor;
        let mut s: Vec<u32> = self.stab.iter().map(|k| k % c).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The same field described at its conductor.
    pub fn canonical(&self) -> FieldHandle {
        stabilizer_field(self.conductor, &self.at_conductor_stab()).expect("image of a subgroup")
    }

    /// The same field described at level `m`, a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Result<FieldHandle, CycError> {
        check_level(m)?;
        let c = self.conductor;
        if !m.is_multiple_of(c) {
            return Err(CycError::MixedPrimeLevels(c, m));
        }
        let reduced = self.at_conductor_stab();
        let stab: Vec<u32> =
            units(m).into_iter().filter(|k| reduced.binary_search(&(k % c)).is_ok()).collect();
        stabilizer_field(m, &stab)
    }

    /// Equality as subfields of ℂ.
    pub fn same_field(&self, other: &FieldHandle) -> bool {
        self.conductor == other.conductor && self.at_conductor_stab() == other.at_conductor_stab()
    }

    /// Whether this field is contained in `other`.
    pub fn is_subfield_of(&self, other: &FieldHandle) -> bool {
        if self.conductor == 1 {
            return true;
        }
        let Ok(m) = common_level(self.conductor, other.conductor) else {
            return false;
        };
        let a = self.lift(m).unwrap();
        let b = other.lift(m).unwrap();
        b.stab.iter().all(|k| a.stab.binary_search(k).is_ok())
    }

    /// Whether `x` lies in this field.
    pub fn contains(&self, x: &CycNum) -> bool {
        if x.is_rational() {
            return true;
        }
        let Ok(m) = common_level(self.n, x.level()) else {
            return false;
        };
        let f = if m == self.n { self.clone() } else { self.lift(m).unwrap() };
        f.stab.iter().all(|&k| x.galois_apply(k as i64).unwrap() == *x)
    }

    pub fn display_name(&self) -> String {
        match &self.name {
            Some(s) => s.clone(),
            None => format!("Fix_{}{:?}", self.n, self.stab),
        }
    }
}

/// The three involutions `β = -1, γ = 2v+1, δ = 2v-1` of `(ℤ/4v)^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Involutions {
    pub beta: u32,
    pub gamma: u32,
    pub delta: u32,
}

pub fn involutions(level: u32) -> Result<Involutions, CycError> {
    if level < 8 || !level.is_power_of_two() {
        return Err(CycError::BadLevel(level));
    }
    let v = level / 4;
    Ok(Involutions { beta: level - 1, gamma: 2 * v + 1, delta: 2 * v - 1 })
}

/// The stabilizer in `(ℤ/n)^×` of a list of values.
pub fn value_stabilizer(n: u32, values: &[CycNum]) -> Vec<u32> {
    units(n)
        .into_iter()
        .filter(|&k| values.iter().all(|x| x.galois_apply(k as i64).unwrap() == *x))
        .collect()
}

/// `k^e mod n` for units, used by power maps.
pub fn unit_pow(k: u32, e: u64, n: u32) -> u32 {
    mod_pow(k as u64, e, n as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, j: i64) -> CycNum {
        CycNum::root_of_unity(n, j).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(-1));
    }

    #[test]
    fn sqrt2_coordinates() {
        let s = &z(8, 1) + &z(8, -1);
        assert_eq!(s.level(), 8);
        let expect: Vec<Rational> = [0, 1, 0, -1].iter().map(|&k| Rational::from_int(k)).collect();
        assert_eq!(s.coeffs(), &expect[..]);
        assert_eq!(&s * &s, CycNum::from_int(2));
    }

    #[test]
    fn relation_sums_vanish() {
        assert!((&z(8, 0) + &z(8, 4)).is_zero());
        let mut acc = CycNum::zero();
        for k in 0..9 {
            acc = &acc + &z(9, k);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn galois_examples() {
        let s = &z(8, 1) + &z(8, -1);
        assert_eq!(s.galois_apply(1).unwrap(), s);
        assert_eq!(s.galois_apply(-1).unwrap(), s);
        assert_eq!(z(8, 1).galois_apply(5).unwrap(), z(8, 1).neg());
        assert!(matches!(z(8, 1).galois_apply(2), Err(CycError::NotAUnit { .. })));
    }

    #[test]
    fn minimization_to_subfield() {
        // ζ_8^2 = i lives at level 4, ζ_9^3 at level 3.
        assert_eq!(z(8, 2).level(), 4);
        assert_eq!(z(9, 3), z(3, 1));
        assert_eq!(z(16, 8), CycNum::from_int(-1));
        assert_eq!(z(2, 1), CycNum::from_int(-1));
    }

    #[test]
    fn mixed_primes_rejected() {
        assert!(matches!(z(4, 1).try_add(&z(3, 1)), Err(CycError::MixedPrimeLevels(4, 3))));
        assert_eq!(z(3, 1).try_add(&CycNum::one()).unwrap().level(), 3);
    }

    #[test]
    fn inverse() {
        let x = &(&z(16, 1) + &z(16, 3)).scale(&q(3, 2)) + &CycNum::from_int(1);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, CycNum::one());
    }

    #[test]
    fn serde_round_trip() {
        let x = (&z(8, 1) + &z(8, 3)).scale(&q(-1, 3));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":8,"coeffs":[[0,1],[-1,3],[0,1],[-1,3]]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn stabilizer_field_examples() {
        let r = stabilizer_field(8, &[1, 7]).unwrap();
        assert_eq!((r.degree, r.conductor, r.is_real), (2, 8, true));
        assert_eq!(r.name.as_deref(), Some("Q_8^R"));
        let i = stabilizer_field(8, &[1, 3]).unwrap();
        assert_eq!((i.degree, i.conductor, i.is_real), (2, 8, false));
        assert_eq!(i.name.as_deref(), Some("Q_8^I"));
        let g = stabilizer_field(8, &[1, 5]).unwrap();
        assert_eq!((g.degree, g.conductor), (2, 4));
        assert_eq!(g.name.as_deref(), Some("Q_4"));
        assert_eq!(stabilizer_field(16, &units(16)).unwrap().name.as_deref(), Some("Q"));
        assert_eq!(stabilizer_field(16, &[1]).unwrap().name.as_deref(), Some("Q_16"));
        assert!(matches!(stabilizer_field(8, &[1, 3, 5]), Err(CycError::NotASubgroup(8))));
    }

    #[test]
    fn field_lift_and_compare() {
        let r8 = stabilizer_field(8, &[1, 7]).unwrap();
        let r8_at_32 = r8.lift(32).unwrap();
        assert_eq!(r8_at_32.degree, 2);
        assert!(r8.same_field(&r8_at_32));
        assert_eq!(r8_at_32.name.as_deref(), Some("Q_8^R"));
        let r16 = stabilizer_field(16, &[1, 15]).unwrap();
        assert!(r8.is_subfield_of(&r16));
        assert!(!r16.is_subfield_of(&r8));
        let sqrt2 = &z(8, 1) + &z(8, -1);
        assert!(r8.contains(&sqrt2));
        assert!(!stabilizer_field(8, &[1, 3]).unwrap().contains(&sqrt2));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(involutions(8).unwrap(), Involutions { beta: 7, gamma: 5, delta: 3 });
        assert_eq!(involutions(16).unwrap(), Involutions { beta: 15, gamma: 9, delta: 7 });
        assert!(matches!(involutions(4), Err(CycError::BadLevel(4))));
    }

    #[test]
    fn gamma_in_every_other_nontrivial_subgroup() {
        for level in [8u32, 16, 32, 64] {
            let inv = involutions(level).unwrap();
            let us = units(level);
            // every subgroup of (Z/2^k)^x is generated by at most two elements
            let mut subgroups = std::collections::BTreeSet::new();
            for &a in &us {
                for &b in &us {
                    subgroups.insert(generated_units(level, &[a, b]));
                }
            }
            for s in subgroups {
                let named = s == [1, inv.beta] || s == [1, inv.delta];
                if s.len() >= 2 && !named {
                    assert!(s.contains(&inv.gamma), "level {level}, {s:?}");
                }
            }
        }
    }

    #[test]
    fn field_invariants_over_all_subgroups() {
        for level in [4u32, 8, 16, 9, 27, 25] {
            let us = units(level);
            let mut subgroups = std::collections::BTreeSet::new();
            for &a in &us {
                for &b in &us {
                    subgroups.insert(generated_units(level, &[a, b]));
                }
            }
            for s in subgroups {
                let f = stabilizer_field(level, &s).unwrap();
                assert_eq!(f.degree as usize * s.len(), euler_phi(level) as usize);
                assert_eq!(level % f.conductor, 0);
                // sums over the stabilizer orbit are fixed elements
                let mut fixed = CycNum::zero();
                for &k in &s {
                    fixed = &fixed + &z(level, k as i64);
                }
                assert!(f.contains(&fixed));
                assert_eq!(f.is_real, s.contains(&(level - 1)));
                if f.is_real {
                    assert_eq!(fixed.conjugate(), fixed);
                }
            }
        }
    }
}
