//! The rank one abelian group `L(p) = <x_1, .., x_t, c | p_1 x_1 = .. = p_t x_t = c>`.
//!
//! Every element is stored in its unique normal form `m c + sum m_i x_i` with
//! `0 <= m_i < p_i`. Arithmetic renormalises eagerly, so equality of values is
//! equality of fields.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::rational::{format_q, parse_q, q, Q};

/// A marked point of the projective line: `infinity` or a rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Infinity,
    Finite(Q),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Infinity => write!(f, "inf"),
            Param::Finite(x) => write!(f, "{}", format_q(x)),
        }
    }
}

/// Weight sequence together with its parameter sequence.
///
/// The first three parameters are always `inf, 0, 1`; later ones default to
/// `2, 3, ..` unless given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightType {
    weights: Arc<[u32]>,
    params: Vec<Param>,
    lcm: u64,
}

impl WeightType {
    pub fn new(weights: &[u32], extra_params: &[Q]) -> Result<Self> {
        let t = weights.len();
        if t < 3 {
            return domain(format!("need at least three weights, got {t}"));
        }
        if weights.contains(&0) {
            return domain("weights must be positive");
        }
        if extra_params.len() > t - 3 {
            return domain(format!("{} extra parameters for {} weights", extra_params.len(), t));
        }
        let mut params = vec![Param::Infinity, Param::Finite(q(0)), Param::Finite(q(1))];
        for k in 3..t {
            let lam = extra_params.get(k - 3).copied().unwrap_or_else(|| q(k as i128 - 1));
            params.push(Param::Finite(lam));
        }
        for i in 0..t {
            for j in 0..i {
                if params[i] == params[j] {
                    return domain(format!("parameters {} and {} coincide", i + 1, j + 1));
                }
            }
        }
        let lcm = weights.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)));
        Ok(WeightType { weights: weights.into(), params, lcm })
    }

    /// Weight type with default parameters.
    pub fn simple(weights: &[u32]) -> Self {
        Self::new(weights, &[]).expect("valid weight sequence")
    }

    /// Parses `2,3,6` or `2,2,2,2;lambda4=3/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split(';');
        let ws = parts.next().unwrap_or("");
        let weights = ws
            .split(',')
            .map(|w| w.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad weight {w:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut extra: Vec<Option<Q>> = vec![None; weights.len().saturating_sub(3)];
        for part in parts {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected lambdaK=value, got {part:?}")))?;
            let k: usize = key
                .trim()
                .strip_prefix("lambda")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad parameter name {key:?}")))?;
            if k < 4 || k > weights.len() {
                return Err(Error::Parse(format!("lambda{k} out of range")));
            }
            extra[k - 4] = Some(parse_q(val)?);
        }
        let extra: Vec<Q> = extra
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.unwrap_or_else(|| q(i as i128 + 2)))
            .collect();
        Self::new(&weights, &extra)
    }

    pub fn with_params(&self, extra: &[Q]) -> Result<Self> {
        Self::new(&self.weights, extra)
    }

    pub fn t(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    /// `lambda_i` for `i >= 3` (0-based `i >= 2`) as a rational number.
    pub fn lambda(&self, i: usize) -> Q {
        match &self.params[i] {
            Param::Finite(x) => *x,
            Param::Infinity => panic!("lambda_1 is infinite"),
        }
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// Rank of the Grothendieck group, `2 + sum (p_i - 1)`.
    pub fn k0_rank(&self) -> usize {
        2 + self.weights.iter().map(|&p| p as usize - 1).sum::<usize>()
    }

    pub fn zero(&self) -> LVec {
        LVec { weights: self.weights.clone(), m: 0, coeffs: vec![0; self.t()] }
    }

    pub fn c(&self) -> LVec {
        LVec { weights: self.weights.clone(), m: 1, coeffs: vec![0; self.t()] }
    }

    /// The generator `x_i` (0-based).
    pub fn x(&self, i: usize) -> LVec {
        let mut coeffs = vec![0i64; self.t()];
        coeffs[i] = 1;
        LVec::from_raw(self.weights.clone(), 0, coeffs)
    }

    pub fn lvec(&self, m: i64, coeffs: &[i64]) -> Result<LVec> {
        if coeffs.len() != self.t() {
            return domain(format!("expected {} coefficients, got {}", self.t(), coeffs.len()));
        }
        Ok(LVec::from_raw(self.weights.clone(), m, coeffs.to_vec()))
    }

    /// The dualizing element `(t-2) c - sum x_i`.
    pub fn omega(&self) -> LVec {
        let t = self.t() as i64;
        LVec::from_raw(self.weights.clone(), t - 2, vec![-1; self.t()])
    }

    /// `2 - sum (1 - 1/p_i)`.
    pub fn euler_char(&self) -> Ratio<i64> {
        let mut chi = Ratio::from_integer(2i64);
        for &p in self.weights.iter() {
            chi -= Ratio::from_integer(1) - Ratio::new(1, p as i64);
        }
        chi
    }

    pub fn is_tubular(&self) -> bool {
        self.euler_char().is_zero()
    }

    /// All `a` with `lo <= a <= hi`.
    pub fn interval(&self, lo: &LVec, hi: &LVec) -> Vec<LVec> {
        let span = hi - lo;
        if span.m < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut coeffs = vec![0i64; self.t()];
        loop {
            for m in 0..=span.m {
                let b = LVec::from_raw(self.weights.clone(), m, coeffs.clone());
                if (&span - &b).is_nonneg() {
                    out.push(lo + &b);
                }
            }
            // odometer over 0 <= coeffs[i] < p_i
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    out.sort();
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < self.weights[i] as i64 {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    fn weights_str(&self) -> String {
        self.weights.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for WeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.weights_str())?;
        for (k, p) in self.params.iter().enumerate().skip(3) {
            write!(f, ";lambda{}={}", k + 1, p)?;
        }
        Ok(())
    }
}

/// Element of `L(p)` in normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LVec {
    weights: Arc<[u32]>,
    m: i64,
    coeffs: Vec<i64>,
}

/// Order of an element of `L(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl LVec {
    fn from_raw(weights: Arc<[u32]>, mut m: i64, mut coeffs: Vec<i64>) -> Self {
        for (c, &p) in coeffs.iter_mut().zip(weights.iter()) {
            let p = p as i64;
            let (quot, rem) = (c.div_euclid(p), c.rem_euclid(p));
            m += quot;
            *c = rem;
        }
        LVec { weights, m, coeffs }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Coefficient of `c` in the normal form.
    pub fn m(&self) -> i64 {
        self.m
    }

    /// Coefficients `0 <= m_i < p_i` of the normal form.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    fn check(&self, other: &LVec) -> Result<()> {
        if self.weights != other.weights {
            return Err(Error::WeightMismatch(self.weights.to_vec(), other.weights.to_vec()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LVec) -> Result<LVec> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(LVec::from_raw(self.weights.clone(), self.m + other.m, coeffs))
    }

    pub fn try_sub(&self, other: &LVec) -> Result<LVec> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> LVec {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        LVec::from_raw(self.weights.clone(), -self.m, coeffs)
    }

    pub fn scale(&self, k: i64) -> LVec {
        let coeffs = self.coeffs.iter().map(|a| a * k).collect();
        LVec::from_raw(self.weights.clone(), self.m * k, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0 && self.coeffs.iter().all(|&c| c == 0)
    }

    /// Membership in the positive cone `sum N x_i`.
    ///
    /// In normal form every `m_i` is already in range, so this is `m >= 0`.
    pub fn is_nonneg(&self) -> bool {
        self.m >= 0
    }

    pub fn leq(&self, other: &LVec) -> Result<bool> {
        Ok(other.try_sub(self)?.is_nonneg())
    }

    /// The degree homomorphism `delta: L -> Z`, `x_i -> p/p_i`.
    pub fn delta(&self) -> i64 {
        let p = self.weights.iter().fold(1u64, |acc, &w| acc.lcm(&(w as u64))) as i64;
        self.m * p + self.coeffs.iter().zip(self.weights.iter()).map(|(c, &w)| c * (p / w as i64)).sum::<i64>()
    }

    pub fn order(&self) -> Order {
        if self.delta() != 0 {
            return Order::Infinite;
        }
        // the torsion subgroup has order prod p_i / p, so this loop is bounded
        let bound: u64 = self.weights.iter().map(|&w| w as u64).product();
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_zero() {
                return Order::Finite(k);
            }
            acc = &acc + self;
        }
        Order::Infinite
    }

    /// Text form `m|m1,..,mt`.
    pub fn to_text(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}|{}", self.m, cs.join(","))
    }

    /// Parses `m|m1,..,mt` or a signed sum of terms such as `x1+3w`, `2c-x2`
    /// or `0`, where `w` stands for the dualizing element.
    pub fn parse(w: &WeightType, s: &str) -> Result<LVec> {
        let s = s.trim();
        let Some((m, rest)) = s.split_once('|') else {
            return LVec::parse_expr(w, s);
        };
        let m: i64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad c-coefficient in {s:?}")))?;
        let coeffs = rest
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        w.lvec(m, &coeffs)
    }

    fn parse_expr(w: &WeightType, s: &str) -> Result<LVec> {
        let bad = || Error::Parse(format!("cannot parse degree {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut acc = w.zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let k: i64 = if digits == 0 { 1 } else { term[..digits].parse().map_err(|_| bad())? };
            let base = match &term[digits..] {
                "" if k == 0 => w.zero(),
                "c" => w.c(),
                "w" => w.omega(),
                sym => {
                    let i: usize = sym.strip_prefix('x').and_then(|i| i.parse().ok()).ok_or_else(bad)?;
                    if i == 0 || i > w.t() {
                        return Err(bad());
                    }
                    w.x(i - 1)
                }
            };
            acc = &acc + &base.scale(sign * k);
        }
        Ok(acc)
    }
}

impl fmt::Debug for LVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LVec({})", self.to_text())
    }
}

impl fmt::Display for LVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.m != 0 {
            parts.push(if self.m == 1 { "c".to_string() } else { format!("{}c", self.m) });
        }
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                parts.push(if c == 1 { format!("x{}", i + 1) } else { format!("{}x{}", c, i + 1) });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl<'a> std::ops::Add<&'a LVec> for &'a LVec {
    type Output = LVec;
    fn add(self, rhs: &'a LVec) -> LVec {
        self.try_add(rhs).expect("LVec weight types agree")
    }
}

impl<'a> std::ops::Sub<&'a LVec> for &'a LVec {
    type Output = LVec;
    fn sub(self, rhs: &'a LVec) -> LVec {
        self.try_sub(rhs).expect("LVec weight types agree")
    }
}

impl std::ops::Neg for &LVec {
    type Output = LVec;
    fn neg(self) -> LVec {
        LVec::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn defining_relation_carries() {
        let w = WeightType::simple(&[2, 2, 2, 2]);
        let x1 = w.x(0);
        assert_eq!(&x1 + &x1, w.c());
    }

    #[test]
    fn symbolic_degrees() {
        let w = WeightType::simple(&[2, 2, 4]);
        assert_eq!(LVec::parse(&w, "0").unwrap(), w.zero());
        assert_eq!(LVec::parse(&w, "x1 + 3w").unwrap(), &w.x(0) + &w.omega().scale(3));
        assert_eq!(LVec::parse(&w, "2c-x3").unwrap(), &w.c().scale(2) - &w.x(2));
        assert_eq!(LVec::parse(&w, "-1|0,0,3").unwrap(), w.lvec(-1, &[0, 0, 3]).unwrap());
        assert!(LVec::parse(&w, "x4").is_err());
        assert!(LVec::parse(&w, "3").is_err());
    }

    #[test]
    fn omega_normal_forms() {
        let w = WeightType::simple(&[2, 3, 6]);
        let om = w.omega();
        assert_eq!(om.m(), -2);
        assert_eq!(om.coeffs(), &[1, 2, 5]);
        assert_eq!(om.delta(), 0);
        assert_eq!(WeightType::simple(&[2, 3, 7]).omega().delta(), 1);
    }

    #[test]
    fn identity_and_inverse() {
        let w = WeightType::simple(&[2, 3, 4]);
        let a = w.lvec(3, &[1, 5, -7]).unwrap();
        assert_eq!(&a + &w.zero(), a);
        assert!((&a + &a.neg()).is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = WeightType::simple(&[2, 3, 4]).c();
        let b = WeightType::simple(&[2, 3, 5]).c();
        assert!(matches!(a.try_add(&b), Err(Error::WeightMismatch(..))));
    }

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(WeightType::simple(&[2, 4, 4]).euler_char(), Ratio::from_integer(0));
        assert_eq!(WeightType::simple(&[2, 3, 5]).euler_char(), Ratio::new(1, 30));
        assert_eq!(WeightType::simple(&[2, 2, 2]).euler_char(), Ratio::new(1, 2));
    }

    #[test]
    fn order_examples() {
        assert_eq!(WeightType::simple(&[2, 2, 2, 2]).omega().order(), Order::Finite(2));
        assert_eq!(WeightType::simple(&[2, 4, 4]).omega().order(), Order::Finite(4));
        assert_eq!(WeightType::simple(&[2, 3, 6]).omega().order(), Order::Finite(6));
        assert_eq!(WeightType::simple(&[2, 3, 7]).omega().order(), Order::Infinite);
    }

    #[test]
    fn order_relation() {
        let w = WeightType::simple(&[2, 2, 4]);
        assert!(w.zero().leq(&w.c()).unwrap());
        let x = w.x(0);
        let y = w.x(1);
        assert!(!(&x - &y).is_nonneg());
        assert!(!(&y - &x).is_nonneg());
        assert!(x.leq(&x).unwrap());
    }

    #[test]
    fn p_one_generator_equals_c() {
        let w = WeightType::simple(&[1, 3, 4]);
        assert_eq!(w.x(0), w.c());
    }

    #[test]
    fn parse_weight_types() {
        let w = WeightType::parse("2,2,2,2;lambda4=3/2").unwrap();
        assert_eq!(w.lambda(3), frac(3, 2));
        assert_eq!(w.to_string(), "2,2,2,2;lambda4=3/2");
        assert_eq!(WeightType::parse("2,2,2,2").unwrap().lambda(3), q(2));
        assert!(WeightType::parse("2,2,2,2;lambda4=1").is_err());
        assert!(WeightType::parse("2,2").is_err());
        let a = LVec::parse(&w, "-1|1,0,1,1").unwrap();
        assert_eq!(a.to_text(), "-1|1,0,1,1");
        assert_eq!(LVec::parse(&w, "0|2,0,0,0").unwrap(), w.c());
    }

    #[test]
    fn interval_of_canonical_window() {
        let w = WeightType::simple(&[2, 2, 2, 2]);
        assert_eq!(w.interval(&w.zero(), &w.c()).len(), 6);
        assert_eq!(w.interval(&w.c().neg(), &w.c().scale(2)).len(), 32);
    }
}
