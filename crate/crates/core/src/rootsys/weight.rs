use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{q, q_to_f64, Q};

/// A point of h* given by its simple-coroot pairings (λ(H_1), …, λ(H_r)).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight(c.iter().map(|&x| q(x)).collect())
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = q(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(q_to_f64).collect()
    }

    /// All simple-coroot pairings are nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// All simple-coroot pairings are integers.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, t: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * t).collect())
    }

    /// Integer coordinates, if integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| if x.is_integer() { x.numer().to_string() } else { format!("{}/{}", x.numer(), x.denom()) }).collect();
        write!(f, "w[{}]", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// `w[1,-1]`, `w[1/2,0]`, or a bare comma list `1,-1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let body = s.strip_prefix("w[").and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let coords = body
            .split(',')
            .map(|t| {
                let t = t.trim();
                let g: crate::scalar::GaussQ = t.parse()?;
                if !g.is_real() {
                    return Err(Error::Parse(format!("weight coordinate `{t}` is not real")));
                }
                Ok(g.re)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Weight(coords))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
