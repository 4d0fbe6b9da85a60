//! Exact scalar arithmetic and multivariate polynomials.
//!
//! Scalars live in the fraction field of integer Laurent polynomials in
//! `s = t^{1/4}` and the twist `v`, or in one of two specializations:
//! exact rationals (fixed rational `s0`, `v = 1`) and the cyclotomic field
//! Q(zeta_6) (`s = zeta = e^{i pi/3}`, `v = 1`, with `zeta^2 = zeta - 1`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar mode mismatch")]
    ModeMismatch,
    #[error("inexact division")]
    InexactDivision,
    #[error("exponent exceeds clearing bound")]
    ExponentOverflow,
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

// ---------------------------------------------------------------------------
// Integer Laurent polynomials in (s, v)
// ---------------------------------------------------------------------------

/// Laurent polynomial in (s, v) over Z; key = (s-exponent, v-exponent).
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct LPoly(pub BTreeMap<(i64, i64), BigInt>);

impl LPoly {
    pub fn zero() -> Self {
        LPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::mono(0, 0, BigInt::one())
    }

    pub fn mono(ks: i64, kv: i64, c: BigInt) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((ks, kv), c);
        }
        LPoly(m)
    }

    pub fn int(c: i64) -> Self {
        Self::mono(0, 0, BigInt::from(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.get(&(0, 0)).map(|c| c.is_one()).unwrap_or(false)
    }

    fn add_term(&mut self, k: (i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &other.0 {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LPoly(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = LPoly::zero();
        for (ka, ca) in &self.0 {
            for (kb, cb) in &other.0 {
                r.add_term((ka.0 + kb.0, ka.1 + kb.1), ca * cb);
            }
        }
        r
    }

    pub fn mul_mono(&self, ks: i64, kv: i64) -> Self {
        LPoly(
            self.0
                .iter()
                .map(|(k, c)| ((k.0 + ks, k.1 + kv), c.clone()))
                .collect(),
        )
    }

    /// Substitute s -> s^{-1} (the iota twist of section-7 duals).
    pub fn invert_s(&self) -> Self {
        LPoly(self.0.iter().map(|(k, c)| ((-k.0, k.1), c.clone())).collect())
    }

    /// Substitute v -> 1.
    pub fn eval_v1(&self) -> Self {
        let mut r = LPoly::zero();
        for (k, c) in &self.0 {
            r.add_term((k.0, 0), c.clone());
        }
        r
    }

    fn min_exps(&self) -> (i64, i64) {
        let mut ms = i64::MAX;
        let mut mv = i64::MAX;
        for k in self.0.keys() {
            ms = ms.min(k.0);
            mv = mv.min(k.1);
        }
        (ms, mv)
    }

    /// Leading coefficient in graded-lex order on (s, v) exponents.
    fn lead_coeff_gradedlex(&self) -> BigInt {
        self.0
            .iter()
            .max_by_key(|(k, _)| (k.0 + k.1, k.0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn eval_rat(&self, s0: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (k, c) in &self.0 {
            acc += Rat::from(c.clone()) * rat_pow(s0, k.0);
        }
        acc
    }

    pub fn eval_cyc(&self) -> (Rat, Rat) {
        let mut a = Rat::zero();
        let mut b = Rat::zero();
        for (k, c) in &self.0 {
            let (za, zb) = zeta_pow(k.0);
            let c = Rat::from(c.clone());
            a += &c * za;
            b += &c * zb;
        }
        (a, b)
    }
}

fn rat_pow(x: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mut base = if k > 0 { x.clone() } else { x.recip() };
    let mut e = k.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// zeta^k as (a, b) with zeta^k = a + b*zeta, zeta = e^{i pi/3}.
fn zeta_pow(k: i64) -> (Rat, Rat) {
    let one = Rat::one;
    let zero = Rat::zero;
    match k.rem_euclid(6) {
        0 => (one(), zero()),
        1 => (zero(), one()),
        2 => (-one(), one()),
        3 => (-one(), zero()),
        4 => (zero(), -one()),
        _ => (one(), -one()),
    }
}

// --- polynomial gcd over Z[s][v] -------------------------------------------

type UPoly = Vec<BigInt>; // dense poly in s, index = degree

fn u_trim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn u_is_zero(p: &UPoly) -> bool {
    p.is_empty()
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) || u_is_zero(b) {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            r[i + j] += ca * cb;
        }
    }
    u_trim(&mut r);
    r
}

fn u_scale(a: &UPoly, c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    if r.len() < b.len() {
        r.resize(b.len(), BigInt::zero());
    }
    for (i, c) in b.iter().enumerate() {
        r[i] -= c;
    }
    u_trim(&mut r);
    r
}

fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

fn u_content(p: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = int_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_int(p: &UPoly, c: &BigInt) -> UPoly {
    p.iter().map(|x| x / c).collect()
}

/// Exact division in Z[s]; panics on inexactness (internal invariant).
fn u_div_exact(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!u_is_zero(b), "division by zero poly");
    if u_is_zero(a) {
        return Vec::new();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    assert!(a.len() > db, "inexact poly division");
    let mut q = vec![BigInt::zero(); a.len() - db];
    let lb = &b[db];
    while !u_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let (lc, rem) = num_integer::Integer::div_rem(&r[dr], lb);
        assert!(rem.is_zero(), "inexact poly division");
        q[dr - db] = lc.clone();
        let shift: UPoly = std::iter::repeat(BigInt::zero())
            .take(dr - db)
            .chain(b.iter().map(|c| c * &lc))
            .collect();
        r = u_sub(&r, &shift);
    }
    assert!(u_is_zero(&r), "inexact poly division");
    q
}

/// Pseudo-remainder of a by b in Z[s].
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    while !u_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift: UPoly = std::iter::repeat(BigInt::zero())
            .take(dr - db)
            .chain(b.iter().map(|c| c * &lr))
            .collect();
        r = u_sub(&u_scale(&r, &lb), &shift);
    }
    r
}

fn u_primitive(p: &UPoly) -> UPoly {
    if u_is_zero(p) {
        return Vec::new();
    }
    let mut c = u_content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    u_div_int(p, &c)
}

/// Sign-normalize only: gcd(0, p) is p itself, content included.
fn u_abs(p: &UPoly) -> UPoly {
    match p.last() {
        Some(c) if c.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p.clone(),
    }
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if u_is_zero(a) {
        return u_abs(b);
    }
    if u_is_zero(b) {
        return u_abs(a);
    }
    let ic = int_gcd(&u_content(a), &u_content(b));
    let mut x = u_primitive(a);
    let mut y = u_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = u_prem(&x, &y);
        if u_is_zero(&r) {
            return u_scale(&u_primitive(&y), &ic);
        }
        x = y;
        y = u_primitive(&r);
    }
}

type BPoly = Vec<UPoly>; // dense poly in v with Z[s] coefficients

fn b_trim(p: &mut BPoly) {
    while p.last().map(u_is_zero).unwrap_or(false) {
        p.pop();
    }
}

fn b_is_zero(p: &BPoly) -> bool {
    p.is_empty()
}

fn b_content(p: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in p {
        g = u_gcd(&g, c);
    }
    g
}

fn b_div_u(p: &BPoly, c: &UPoly) -> BPoly {
    p.iter().map(|x| u_div_exact(x, c)).collect()
}

fn b_mul_u(p: &BPoly, c: &UPoly) -> BPoly {
    let mut r: BPoly = p.iter().map(|x| u_mul(x, c)).collect();
    b_trim(&mut r);
    r
}

fn b_sub(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    if r.len() < b.len() {
        r.resize(b.len(), Vec::new());
    }
    for (i, c) in b.iter().enumerate() {
        r[i] = u_sub(&r[i], c);
    }
    b_trim(&mut r);
    r
}

fn b_primitive(p: &BPoly) -> BPoly {
    if b_is_zero(p) {
        return Vec::new();
    }
    b_div_u(p, &b_content(p))
}

/// Pseudo-remainder in (Z[s])[v].
fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    while !b_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let mut shift: BPoly = std::iter::repeat(Vec::new())
            .take(dr - db)
            .chain(b.iter().map(|c| u_mul(c, &lr)))
            .collect();
        b_trim(&mut shift);
        r = b_sub(&b_mul_u(&r, &lb), &shift);
    }
    r
}

fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if b_is_zero(a) {
        return b.clone();
    }
    if b_is_zero(b) {
        return a.clone();
    }
    let ca = b_content(a);
    let cb = b_content(b);
    let c = u_gcd(&ca, &cb);
    let mut x = b_primitive(a);
    let mut y = b_primitive(b);
    if x.len() == 1 || y.len() == 1 {
        return vec![c];
    }
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = b_prem(&x, &y);
        if b_is_zero(&r) {
            return b_mul_u(&b_primitive(&y), &c);
        }
        if r.len() == 1 {
            return vec![c];
        }
        x = y;
        y = b_primitive(&r);
    }
}

/// Exact division in (Z[s])[v]; panics on inexactness.
fn b_div_exact(a: &BPoly, b: &BPoly) -> BPoly {
    assert!(!b_is_zero(b));
    if b_is_zero(a) {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut q: BPoly = vec![Vec::new(); a.len() - db];
    while !b_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lc = u_div_exact(&r[dr], lb);
        q[dr - db] = lc.clone();
        let mut shift: BPoly = std::iter::repeat(Vec::new())
            .take(dr - db)
            .chain(b.iter().map(|c| u_mul(c, &lc)))
            .collect();
        b_trim(&mut shift);
        r = b_sub(&r, &shift);
    }
    assert!(b_is_zero(&r), "inexact poly division");
    q
}

fn lpoly_to_b(p: &LPoly) -> BPoly {
    // caller guarantees nonnegative exponents
    let mut r: BPoly = Vec::new();
    for (k, c) in &p.0 {
        let (ks, kv) = (k.0 as usize, k.1 as usize);
        if r.len() <= kv {
            r.resize(kv + 1, Vec::new());
        }
        if r[kv].len() <= ks {
            r[kv].resize(ks + 1, BigInt::zero());
        }
        r[kv][ks] = c.clone();
    }
    b_trim(&mut r);
    r
}

fn b_to_lpoly(p: &BPoly) -> LPoly {
    let mut r = LPoly::zero();
    for (kv, up) in p.iter().enumerate() {
        for (ks, c) in up.iter().enumerate() {
            r.add_term((ks as i64, kv as i64), c.clone());
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// Scalar computation mode; carried by constructors, stored in each value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mode {
    Symbolic,
    Rational(Rat),
    Cyclotomic,
}

impl Mode {
    pub fn zero(&self) -> Scalar {
        match self {
            Mode::Symbolic => Scalar::Sym {
                num: LPoly::zero(),
                den: LPoly::one(),
            },
            Mode::Rational(_) => Scalar::Rat(Rat::zero()),
            Mode::Cyclotomic => Scalar::Cyc(Rat::zero(), Rat::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, c: i64) -> Scalar {
        match self {
            Mode::Symbolic => Scalar::Sym {
                num: LPoly::int(c),
                den: LPoly::one(),
            },
            Mode::Rational(_) => Scalar::Rat(rat(c, 1)),
            Mode::Cyclotomic => Scalar::Cyc(rat(c, 1), Rat::zero()),
        }
    }

    /// s^k = t^{k/4}.
    pub fn s_pow(&self, k: i64) -> Scalar {
        match self {
            Mode::Symbolic => Scalar::Sym {
                num: LPoly::mono(k, 0, BigInt::one()),
                den: LPoly::one(),
            },
            Mode::Rational(s0) => Scalar::Rat(rat_pow(s0, k)),
            Mode::Cyclotomic => {
                let (a, b) = zeta_pow(k);
                Scalar::Cyc(a, b)
            }
        }
    }

    /// v^k; v = 1 in the specialized modes.
    pub fn v_pow(&self, k: i64) -> Scalar {
        match self {
            Mode::Symbolic => Scalar::Sym {
                num: LPoly::mono(0, k, BigInt::one()),
                den: LPoly::one(),
            },
            _ => self.one(),
        }
    }

    /// q = t^{3/2} = s^6.
    pub fn q(&self) -> Scalar {
        self.s_pow(6)
    }

    /// Loop weight delta = -t^{1/2} - t^{-1/2}.
    pub fn delta(&self) -> Scalar {
        self.s_pow(2).neg().sub(&self.s_pow(-2))
    }

    /// Puncture-loop weight u = t^{1/4} v + t^{-1/4} v^{-1}.
    pub fn u(&self) -> Scalar {
        match self {
            Mode::Symbolic => Scalar::Sym {
                num: LPoly::mono(1, 1, BigInt::one()).add(&LPoly::mono(-1, -1, BigInt::one())),
                den: LPoly::one(),
            },
            _ => self.s_pow(1).add(&self.s_pow(-1)),
        }
    }

    /// c_n = (-t^{-3/4})^{n-1} for n >= 1; c_0 = t^{1/4} + t^{-1/4}.
    pub fn c_n(&self, n: usize) -> Scalar {
        if n == 0 {
            return self.s_pow(1).add(&self.s_pow(-1));
        }
        let m = (n - 1) as i64;
        let sgn = if m % 2 == 0 { 1 } else { -1 };
        self.s_pow(-3 * m).mul(&self.int(sgn))
    }

    pub fn from_rat(&self, x: Rat) -> Scalar {
        match self {
            Mode::Symbolic => {
                let (p, q) = (x.numer().clone(), x.denom().clone());
                Scalar::sym_frac(LPoly::mono(0, 0, p), LPoly::mono(0, 0, q))
            }
            Mode::Rational(_) => Scalar::Rat(x),
            Mode::Cyclotomic => Scalar::Cyc(x, Rat::zero()),
        }
    }
}

/// Exact scalar: symbolic fraction, rational, or cyclotomic a + b*zeta.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Sym { num: LPoly, den: LPoly },
    Rat(Rat),
    Cyc(Rat, Rat),
}

impl Scalar {
    pub fn sym_frac(num: LPoly, den: LPoly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Scalar::Sym { num, den };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if let Scalar::Sym { num, den } = self {
            if num.is_zero() {
                *den = LPoly::one();
                return;
            }
            // strip monomial units
            let (ans, anv) = num.min_exps();
            let (bns, bnv) = den.min_exps();
            let np = num.mul_mono(-ans, -anv);
            let dp = den.mul_mono(-bns, -bnv);
            let (mut np, mut dp) = if dp.is_one() {
                (np, dp)
            } else {
                let nb = lpoly_to_b(&np);
                let db = lpoly_to_b(&dp);
                let g = b_gcd(&nb, &db);
                let trivial = g.len() == 1 && g[0].len() == 1 && g[0][0].is_one();
                if trivial {
                    (np, dp)
                } else {
                    (
                        b_to_lpoly(&b_div_exact(&nb, &g)),
                        b_to_lpoly(&b_div_exact(&db, &g)),
                    )
                }
            };
            if dp.lead_coeff_gradedlex().is_negative() {
                np = np.neg();
                dp = dp.neg();
            }
            // integer content across the reduced fraction
            let mut ic = BigInt::zero();
            for c in np.0.values().chain(dp.0.values()) {
                ic = int_gcd(&ic, c);
                if ic.is_one() {
                    break;
                }
            }
            if !ic.is_one() && !ic.is_zero() {
                np = LPoly(np.0.iter().map(|(k, c)| (*k, c / &ic)).collect());
                dp = LPoly(dp.0.iter().map(|(k, c)| (*k, c / &ic)).collect());
            }
            *num = np.mul_mono(ans - bns, anv - bnv);
            *den = dp;
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Sym { num, .. } => num.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Cyc(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    fn same_mode(&self, other: &Scalar) -> bool {
        matches!(
            (self, other),
            (Scalar::Sym { .. }, Scalar::Sym { .. })
                | (Scalar::Rat(_), Scalar::Rat(_))
                | (Scalar::Cyc(..), Scalar::Cyc(..))
        )
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Sym { num: n1, den: d1 }, Scalar::Sym { num: n2, den: d2 }) => {
                if d1 == d2 {
                    Scalar::sym_frac(n1.add(n2), d1.clone())
                } else {
                    Scalar::sym_frac(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Cyc(a1, b1), Scalar::Cyc(a2, b2)) => Scalar::Cyc(a1 + a2, b1 + b2),
            _ => panic!("scalar mode mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Sym { num, den } => Scalar::Sym {
                num: num.neg(),
                den: den.clone(),
            },
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Cyc(a, b) => Scalar::Cyc(-a, -b),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Sym { num: n1, den: d1 }, Scalar::Sym { num: n2, den: d2 }) => {
                Scalar::sym_frac(n1.mul(n2), d1.mul(d2))
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Cyc(a1, b1), Scalar::Cyc(a2, b2)) => {
                // (a1 + b1 z)(a2 + b2 z), z^2 = z - 1
                Scalar::Cyc(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 + b1 * b2)
            }
            _ => panic!("scalar mode mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Scalar, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Sym { num, den } => Scalar::sym_frac(den.clone(), num.clone()),
            Scalar::Rat(x) => Scalar::Rat(x.recip()),
            Scalar::Cyc(a, b) => {
                // (a + b z)^{-1} = (a + b - b z) / (a^2 + a b + b^2)
                let nrm = a * a + a * b + b * b;
                Scalar::Cyc((a + b) / &nrm, -b / &nrm)
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, RingError> {
        if !self.same_mode(other) {
            return Err(RingError::ModeMismatch);
        }
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let one = match self {
            Scalar::Sym { .. } => Mode::Symbolic.one(),
            Scalar::Rat(_) => Scalar::Rat(Rat::one()),
            Scalar::Cyc(..) => Scalar::Cyc(Rat::one(), Rat::zero()),
        };
        let mut acc = one;
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute v = 1 (symbolic mode only; identity otherwise).
    pub fn at_v1(&self) -> Scalar {
        match self {
            Scalar::Sym { num, den } => Scalar::sym_frac(num.eval_v1(), den.eval_v1()),
            _ => self.clone(),
        }
    }

    /// Substitute s -> s^{-1} (symbolic mode only).
    pub fn invert_s(&self) -> Scalar {
        match self {
            Scalar::Sym { num, den } => Scalar::sym_frac(num.invert_s(), den.invert_s()),
            _ => panic!("invert_s requires symbolic mode"),
        }
    }

    /// Map a symbolic scalar into the target mode (v = 1 for specializations).
    pub fn specialize(&self, mode: &Mode) -> Result<Scalar, RingError> {
        match self {
            Scalar::Sym { num, den } => match mode {
                Mode::Symbolic => Ok(self.clone()),
                Mode::Rational(s0) => {
                    let d = den.eval_v1().eval_rat(s0);
                    if d.is_zero() {
                        return Err(RingError::DivisionByZero);
                    }
                    Ok(Scalar::Rat(num.eval_v1().eval_rat(s0) / d))
                }
                Mode::Cyclotomic => {
                    let (da, db) = den.eval_v1().eval_cyc();
                    let d = Scalar::Cyc(da, db);
                    let (na, nb) = num.eval_v1().eval_cyc();
                    Scalar::Cyc(na, nb).div(&d)
                }
            },
            _ => Err(RingError::ModeMismatch),
        }
    }

    pub fn to_string_pretty(&self) -> String {
        format!("{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Sym { num, den } => {
                let show = |p: &LPoly| -> String {
                    if p.is_zero() {
                        return "0".into();
                    }
                    let mut parts = Vec::new();
                    for (k, c) in p.0.iter().rev() {
                        let mut t = String::new();
                        if !c.is_one() || *k == (0, 0) {
                            t.push_str(&c.to_string());
                        }
                        if k.0 != 0 {
                            if !t.is_empty() && t != "-" {
                                t.push('*');
                            }
                            t.push_str(&format!("s^{}", k.0));
                        }
                        if k.1 != 0 {
                            if !t.is_empty() {
                                t.push('*');
                            }
                            t.push_str(&format!("v^{}", k.1));
                        }
                        parts.push(t);
                    }
                    parts.join(" + ").replace("+ -", "- ")
                };
                if den.is_one() {
                    write!(f, "{}", show(num))
                } else {
                    write!(f, "({}) / ({})", show(num), show(den))
                }
            }
            Scalar::Rat(x) => write!(f, "{}", x),
            Scalar::Cyc(a, b) => write!(f, "{} + {}*zeta", a, b),
        }
    }
}

/// Checked field arithmetic, the public entry point with error reporting.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: char) -> Result<Scalar, RingError> {
    if !a.same_mode(b) {
        return Err(RingError::ModeMismatch);
    }
    match op {
        '+' => Ok(a.add(b)),
        '-' => Ok(a.sub(b)),
        '*' => Ok(a.mul(b)),
        '/' => a.div(b),
        _ => panic!("unknown op {op}"),
    }
}

// ---------------------------------------------------------------------------
// Multivariate polynomials in z_1..z_n over Scalar
// ---------------------------------------------------------------------------

/// Sparse polynomial in z_1..z_n; exponent vectors are keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Scalar>,
}

/// Substitution actions on ZPoly.
#[derive(Clone, Debug)]
pub enum Subst {
    /// exchange z_i and z_{i+1} (1-based i)
    Swap(usize),
    /// f(z) -> f(z_2, ..., z_n, q^{-1} z_1)
    RhoShift(Scalar),
    /// f(z) -> f(q z_n, z_1, ..., z_{n-1})
    RhoInvShift(Scalar),
    /// drop monomials with positive last exponent, then drop the variable
    SetLastZero,
    /// p -> (z_1...z_n)^m p(1/z_1, ..., 1/z_n)
    InvertAndClear(u32),
}

impl ZPoly {
    pub fn zero(n: usize) -> Self {
        ZPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    /// z_i (1-based).
    pub fn var(n: usize, i: usize, mode: &Mode) -> Self {
        let mut e = vec![0u32; n];
        e[i - 1] = 1;
        let mut p = Self::zero(n);
        p.terms.insert(e, mode.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut r = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.add_term(e, ca.mul(cb));
            }
        }
        r
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ZPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn max_var_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&Scalar> {
        self.terms.get(e)
    }

    pub fn eval(&self, point: &[Scalar], mode: &Mode) -> Scalar {
        let mut acc = mode.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, k) in e.iter().enumerate() {
                term = term.mul(&point[i].pow(*k));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Map every coefficient (used for specialization and the iota twist).
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    pub fn substitute(&self, action: &Subst) -> Result<Self, RingError> {
        match action {
            Subst::Swap(i) => {
                let i = *i - 1;
                let mut r = Self::zero(self.n);
                for (e, c) in &self.terms {
                    let mut e = e.clone();
                    e.swap(i, i + 1);
                    r.add_term(e, c.clone());
                }
                Ok(r)
            }
            Subst::RhoShift(q) => {
                let qinv = q.inv()?;
                let mut r = Self::zero(self.n);
                for (e, c) in &self.terms {
                    let mut ne = vec![0u32; self.n];
                    ne[0] = e[self.n - 1];
                    for i in 0..self.n - 1 {
                        ne[i + 1] = e[i];
                    }
                    r.add_term(ne, c.mul(&qinv.pow(e[self.n - 1])));
                }
                Ok(r)
            }
            Subst::RhoInvShift(q) => {
                let mut r = Self::zero(self.n);
                for (e, c) in &self.terms {
                    let mut ne = vec![0u32; self.n];
                    ne[self.n - 1] = e[0];
                    for i in 1..self.n {
                        ne[i - 1] = e[i];
                    }
                    r.add_term(ne, c.mul(&q.pow(e[0])));
                }
                Ok(r)
            }
            Subst::SetLastZero => {
                let mut r = Self::zero(self.n - 1);
                for (e, c) in &self.terms {
                    if e[self.n - 1] == 0 {
                        r.add_term(e[..self.n - 1].to_vec(), c.clone());
                    }
                }
                Ok(r)
            }
            Subst::InvertAndClear(m) => {
                let mut r = Self::zero(self.n);
                for (e, c) in &self.terms {
                    if e.iter().any(|k| k > m) {
                        return Err(RingError::ExponentOverflow);
                    }
                    r.add_term(e.iter().map(|k| m - k).collect(), c.clone());
                }
                Ok(r)
            }
        }
    }

    /// Exact division; errors if d does not divide self.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, RingError> {
        assert_eq!(self.n, d.n);
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (ed, cd) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let cd_inv = cd.inv()?;
        let mut r = self.clone();
        let mut q = Self::zero(self.n);
        while !r.is_zero() {
            let (er, cr) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            if er.iter().zip(&ed).any(|(a, b)| a < b) {
                return Err(RingError::InexactDivision);
            }
            let eq: Vec<u32> = er.iter().zip(&ed).map(|(a, b)| a - b).collect();
            let cq = cr.mul(&cd_inv);
            let mut t = Self::zero(self.n);
            t.add_term(eq.clone(), cq.clone());
            q.add_term(eq, cq);
            r = r.sub(&t.mul(d));
        }
        Ok(q)
    }
}
