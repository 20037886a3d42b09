//! Exact characteristic polynomials and real-root isolation by Sturm chains,
//! used to bracket Laplacian eigenvalues with rational endpoints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::scalar::Rational;

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::new(Vec::new()), self.clone());
        }
        let shift = rem.len() - d.coeffs.len();
        let mut quot = vec![Rational::zero(); shift + 1];
        for k in (0..=shift).rev() {
            let c = &rem[k + d.degree()] / d.lead();
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    fn monic(&self) -> Poly {
        let lead = self.lead().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Positive multiple with coprime integer coefficients; sign patterns are
    /// unchanged.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&(c * &den).to_integer()));
        let k = Rational::new(den, num);
        Poly::new(self.coeffs.iter().map(|c| c * &k).collect())
    }

    /// Same roots, each simple.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.div_rem(&g).0.monic()
        }
    }
}

/// `det(xI − A)` by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial(a: &Matrix<Rational>) -> Poly {
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = a.mul(&m);
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&m);
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am[(i, i)]);
        coeffs[n - k] = -trace / Rational::from_integer(k.into());
    }
    Poly::new(coeffs)
}

/// Sturm chain of a squarefree polynomial.
struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.primitive(), p.derivative().primitive()];
        while !chain.last().expect("nonempty").is_zero() {
            let k = chain.len();
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            chain.push(Poly::new(r.coeffs.iter().map(|c| -c).collect()).primitive());
        }
        chain.pop();
        Sturm { chain }
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let signs: Vec<bool> = self
            .chain
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in `(a, b]`.
    fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a) - self.sign_changes(b)
    }
}

/// A real root known to lie in `[lo, hi]`; `lo == hi` means it is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootBracket {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&((&self.lo + &self.hi) / Rational::from_integer(2.into())))
            .unwrap_or(f64::NAN)
    }
}

/// Distinct real roots of `p`, ascending, each bracketed to width below `tol`.
pub fn real_roots(p: &Poly, tol: &Rational) -> Vec<RootBracket> {
    let (sf, isolated) = isolate(p);
    isolated.into_iter().map(|(a, b)| refine(&sf, a, b, tol)).collect()
}

/// Selected roots of `p` by ascending position among its distinct real
/// roots; `None` for positions past the last root.
pub fn real_roots_at(p: &Poly, positions: &[usize], tol: &Rational) -> Vec<Option<RootBracket>> {
    let (sf, isolated) = isolate(p);
    positions
        .iter()
        .map(|&k| isolated.get(k).map(|(a, b)| refine(&sf, a.clone(), b.clone(), tol)))
        .collect()
}

/// Number of distinct real roots of `p`.
pub fn real_root_count(p: &Poly) -> usize {
    isolate(p).1.len()
}

/// Squarefree part of `p` and ascending intervals `(a, b]` holding exactly
/// one of its roots each.
fn isolate(p: &Poly) -> (Poly, Vec<(Rational, Rational)>) {
    if p.degree() == 0 {
        return (p.clone(), Vec::new());
    }
    let sf = p.squarefree().primitive();
    let sturm = Sturm::new(&sf);
    // Cauchy bound: every root has |x| < 1 + max |a_i / a_n|.
    let bound = sf.coeffs[..sf.degree()]
        .iter()
        .map(|c| (c / sf.lead()).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let two = Rational::from_integer(2.into());
    let mut pending = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = pending.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mid = (&a + &b) / &two;
                pending.push((a, mid.clone()));
                pending.push((mid, b));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));
    (sf, isolated)
}

/// Bisects the isolating interval `(a, b]` of a root of the squarefree `sf`.
fn refine(sf: &Poly, mut a: Rational, mut b: Rational, tol: &Rational) -> RootBracket {
    // the root is simple, so `sf` changes sign across it
    let at_b = sf.eval(&b);
    if at_b.is_zero() {
        return RootBracket { lo: b.clone(), hi: b };
    }
    let positive_at_b = at_b.is_positive();
    let two = Rational::from_integer(2.into());
    loop {
        if &b - &a < *tol {
            // a rational root p/q is the simplest rational of any bracket
            // narrower than 1/q²
            let s = simplest_rational_between(&a, &b);
            if sf.eval(&s).is_zero() {
                return RootBracket { lo: s.clone(), hi: s };
            }
            return RootBracket { lo: a, hi: b };
        }
        let mid = (&a + &b) / &two;
        let at_mid = sf.eval(&mid);
        if at_mid.is_zero() {
            return RootBracket { lo: mid.clone(), hi: mid };
        }
        if at_mid.is_positive() == positive_at_b {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// `[a, b]`, `a ≤ b`.
pub fn simplest_rational_between(a: &Rational, b: &Rational) -> Rational {
    if b.is_negative() {
        return -simplest_rational_between(&-b, &-a);
    }
    if !a.is_positive() {
        return Rational::zero();
    }
    let c = a.ceil();
    if &c <= b {
        return c;
    }
    let fl = a.floor();
    let inner = simplest_rational_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}
