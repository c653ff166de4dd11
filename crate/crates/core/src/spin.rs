//! Exact half-integer labels and points on the Bloch sphere.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Spin quantum number `j`, stored as the integer `2j`.
///
/// Every physics operation requires `2j >= 1`, so the Hilbert space has
/// dimension `2j + 1 >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    /// Largest supported `2j`; keeps binomials exact in `u128`.
    pub const MAX_TWICE_J: u32 = 120;

    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return domain("spin j must be at least 1/2");
        }
        if twice_j > Self::MAX_TWICE_J {
            return domain(format!("2j = {twice_j} exceeds the supported maximum {}", Self::MAX_TWICE_J));
        }
        Ok(Self { twice_j })
    }

    pub fn twice_j(self) -> u32 {
        self.twice_j
    }

    /// Hilbert-space dimension `2j + 1`.
    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    /// `2j / (2j + 1)`, the Wehrl entropy of a coherent state.
    pub fn coherent_wehrl(self) -> f64 {
        f64::from(self.twice_j) / f64::from(self.twice_j + 1)
    }

    /// Magnetic quantum numbers `-j, -j+1, ..., j` in basis order.
    pub fn mu_values(self) -> impl Iterator<Item = HalfInt> {
        let tj = self.twice_j as i32;
        (-tj..=tj).step_by(2).map(HalfInt::from_twice)
    }

    /// Basis index of `|j, mu>` (ground state `mu = -j` is index 0).
    pub fn index_of(self, mu: HalfInt) -> Result<usize> {
        let tj = self.twice_j as i32;
        let tm = mu.twice();
        if tm < -tj || tm > tj || (tj - tm) % 2 != 0 {
            return domain(format!("mu = {mu} is not a magnetic quantum number of j = {self}"));
        }
        Ok(((tm + tj) / 2) as usize)
    }

    /// Enumerate `j = 1/2, 1, ..., j_max`.
    pub fn up_to(j_max: SpinJ) -> impl Iterator<Item = SpinJ> {
        (1..=j_max.twice_j).map(|t| SpinJ { twice_j: t })
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&HalfInt::from_twice(self.twice_j as i32), f)
    }
}

impl FromStr for SpinJ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let h: HalfInt = s.parse().map_err(|_| Error::Parse { what: "spin j", input: s.to_string() })?;
        if h.twice() < 0 {
            return domain(format!("spin j must be nonnegative, got {s}"));
        }
        SpinJ::from_twice(h.twice() as u32)
    }
}

impl TryFrom<String> for SpinJ {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SpinJ> for String {
    fn from(j: SpinJ) -> String {
        j.to_string()
    }
}

/// A signed half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const fn from_twice(twice: i32) -> Self {
        Self { twice }
    }

    pub const fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub fn abs(self) -> Self {
        Self { twice: self.twice.abs() }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Accepts `"3"`, `"-3/2"`, `"2.5"`, `"-0.5"`; parsing never goes through a float.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "half-integer", input: s.to_string() };
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        if body.is_empty() {
            return Err(err());
        }
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        let twice: i64 = if let Some((num, den)) = body.split_once('/') {
            if !digits(num) || !digits(den) {
                return Err(err());
            }
            let n: i64 = num.parse().map_err(|_| err())?;
            match den.parse::<i64>().map_err(|_| err())? {
                1 => 2 * n,
                2 => n,
                _ => return Err(err()),
            }
        } else if let Some((int, frac)) = body.split_once('.') {
            if !digits(int) || !digits(frac) {
                return Err(err());
            }
            let n: i64 = int.parse().map_err(|_| err())?;
            let frac = frac.trim_end_matches('0');
            match frac {
                "" => 2 * n,
                "5" => 2 * n + 1,
                _ => return Err(err()),
            }
        } else {
            if !digits(body) {
                return Err(err());
            }
            2 * body.parse::<i64>().map_err(|_| err())?
        };
        let twice = if neg { -twice } else { twice };
        let twice = i32::try_from(twice).map_err(|_| err())?;
        Ok(HalfInt { twice })
    }
}

impl TryFrom<String> for HalfInt {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

/// Spherical coordinates `(theta, phi)` of a point on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    /// Canonicalizes arbitrary real angles onto `theta in [0, pi]`, `phi in [0, 2pi)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub const NORTH: BlochPoint = BlochPoint { theta: 0.0, phi: 0.0 };

    pub fn to_cartesian(self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Great-circle angle to `other`.
    pub fn angle_to(self, other: BlochPoint) -> f64 {
        let a = self.to_cartesian();
        let b = other.to_cartesian();
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let cn = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        cn.atan2(dot)
    }
}
