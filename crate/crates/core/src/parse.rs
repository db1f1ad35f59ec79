//! Text grammar for functions, kernels and grids, and the canonical printer.
//!
//! ```text
//! funcspec := blaschke[a1,a2,...;c=<complex>] | atomic[sigma=<real>,xi=<complex>]
//!           | poly[c0,c1,...] | const[c] | f0[b=<funcspec>]
//! kernel   := szego | bergman[alpha=<r>] | dbr[b=<funcspec>]
//!           | subbergman[b=<funcspec>,alpha=<r>] | sum(K,K) | schur(K,K)
//!           | scale(<r>,K) | diff(K,K) | cscale(<funcspec>,K)
//! grid     := radial[r1,r2,...;angles=<n>] | random[n=<n>,rmax=<r>,seed=<u64>]
//!           | points[z1,z2,...] | default
//! complex  := x | yi | x+yi | x-yi
//! ```
//!
//! `f0[b=...]` (the normalized kernel of H(b) at the origin) is accepted only
//! where a general analytic function is allowed. A `poly[...]` that fails the
//! unit-ball check is accepted there as a plain polynomial. Printing any parsed
//! value with `Display` yields a string that parses back to an equal value.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::error::Error;
use crate::functions::{
    AnalyticFunction, AtomicSingularInner, BlaschkeProduct, DiskPoint, NormalizedZeroKernel,
    Polynomial, SchurFunction, TaylorPolynomial,
};
use crate::kernels::{GridSpec, KernelExpr};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{message} at column {}\n  {input}\n  {:>width$}", position + 1, "^", width = position + 1)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

pub fn parse_schur(input: &str) -> Result<SchurFunction, ParseError> {
    Parser::new(input).finish(|p| p.schur())
}

pub fn parse_function(input: &str) -> Result<AnalyticFunction, ParseError> {
    Parser::new(input).finish(|p| p.analytic())
}

pub fn parse_kernel(input: &str) -> Result<KernelExpr, ParseError> {
    Parser::new(input).finish(|p| p.kernel())
}

/// Parses a grid; `random[...]` without an explicit seed uses `default_seed`.
pub fn parse_grid(input: &str, default_seed: u64) -> Result<GridSpec, ParseError> {
    Parser::new(input).finish(|p| p.grid(default_seed))
}

pub fn parse_complex(input: &str) -> Result<Complex64, ParseError> {
    Parser::new(input).finish(|p| p.complex())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn finish<T>(mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let value = f(&mut self)?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error_at(self.pos, "unexpected trailing input"));
        }
        Ok(value)
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.src.to_string(),
            position,
            message: message.into(),
        }
    }

    fn semantic(&self, position: usize, err: Error) -> ParseError {
        self.error_at(position, err.to_string())
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |f| format!("'{f}'"));
            Err(self.error_at(self.pos, format!("expected '{c}', found {found}")))
        }
    }

    fn ident(&mut self) -> PResult<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected a name"));
        }
        Ok((start, &self.src[start..self.pos]))
    }

    fn key(&mut self, name: &str) -> PResult<()> {
        let (start, got) = self.ident()?;
        if got != name {
            return Err(self.error_at(start, format!("expected '{name}=', found '{got}'")));
        }
        self.expect('=')
    }

    fn unsigned_number(&mut self) -> PResult<f64> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let mut count = digits(&mut i);
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            count += digits(&mut i);
        }
        if count == 0 {
            return Err(self.error_at(start, "expected a number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if digits(&mut j) > 0 {
                i = j;
            }
        }
        self.pos = i;
        self.src[start..i]
            .parse()
            .map_err(|_| self.error_at(start, "malformed number"))
    }

    fn real(&mut self) -> PResult<f64> {
        self.skip_ws();
        let negative = self.sign();
        let x = self.unsigned_number()?;
        Ok(if negative { -x } else { x })
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    fn uint(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "expected a nonnegative integer"))
    }

    /// One signed real or imaginary part; returns `(value, is_imaginary)`.
    fn complex_part(&mut self) -> PResult<(f64, bool)> {
        let negative = self.sign();
        let sign = if negative { -1.0 } else { 1.0 };
        if self.peek() == Some('i') {
            self.pos += 1;
            return Ok((sign, true));
        }
        let x = self.unsigned_number()?;
        if self.peek() == Some('i') {
            self.pos += 1;
            Ok((sign * x, true))
        } else {
            Ok((sign * x, false))
        }
    }

    fn complex(&mut self) -> PResult<Complex64> {
        self.skip_ws();
        let (first, imaginary) = self.complex_part()?;
        if imaginary {
            return Ok(Complex64::new(0.0, first));
        }
        if matches!(self.peek(), Some('+') | Some('-')) {
            let at = self.pos;
            let (second, imaginary) = self.complex_part()?;
            if !imaginary {
                return Err(self.error_at(at, "expected imaginary part ending in 'i'"));
            }
            return Ok(Complex64::new(first, second));
        }
        Ok(Complex64::new(first, 0.0))
    }

    fn complex_list(&mut self) -> PResult<Vec<Complex64>> {
        let mut out = vec![self.complex()?];
        while self.eat(',') {
            out.push(self.complex()?);
        }
        Ok(out)
    }

    fn real_list(&mut self) -> PResult<Vec<f64>> {
        let mut out = vec![self.real()?];
        while self.eat(',') {
            out.push(self.real()?);
        }
        Ok(out)
    }

    fn schur(&mut self) -> PResult<SchurFunction> {
        let (start, name) = self.ident()?;
        match self.function_body(start, name, false)? {
            AnalyticFunction::Schur(f) => Ok(f),
            _ => Err(self.error_at(start, format!("'{name}' is not a Schur function here"))),
        }
    }

    fn analytic(&mut self) -> PResult<AnalyticFunction> {
        let (start, name) = self.ident()?;
        self.function_body(start, name, true)
    }

    fn function_body(
        &mut self,
        start: usize,
        name: &str,
        general: bool,
    ) -> PResult<AnalyticFunction> {
        self.expect('[')?;
        let f = match name {
            "blaschke" => {
                let zeros = self.complex_list()?;
                let constant = if self.eat(';') {
                    self.key("c")?;
                    self.complex()?
                } else {
                    Complex64::new(1.0, 0.0)
                };
                BlaschkeProduct::new(zeros, constant)
                    .map(SchurFunction::Blaschke)
                    .map(AnalyticFunction::Schur)
                    .map_err(|e| self.semantic(start, e))?
            }
            "atomic" => {
                self.key("sigma")?;
                let sigma = self.real()?;
                self.expect(',')?;
                self.key("xi")?;
                let xi = self.complex()?;
                AtomicSingularInner::new(sigma, xi)
                    .map(SchurFunction::Atomic)
                    .map(AnalyticFunction::Schur)
                    .map_err(|e| self.semantic(start, e))?
            }
            "poly" => {
                let coeffs = self.complex_list()?;
                match TaylorPolynomial::new(coeffs.clone()) {
                    Ok(p) => AnalyticFunction::Schur(SchurFunction::Polynomial(p)),
                    Err(_) if general => AnalyticFunction::Polynomial(Polynomial::new(coeffs)),
                    Err(e) => return Err(self.semantic(start, e)),
                }
            }
            "const" => {
                let c = self.complex()?;
                SchurFunction::constant(c)
                    .map(AnalyticFunction::Schur)
                    .map_err(|e| self.semantic(start, e))?
            }
            "f0" if general => {
                self.key("b")?;
                let b = self.schur()?;
                NormalizedZeroKernel::new(b)
                    .map(AnalyticFunction::ZeroKernel)
                    .map_err(|e| self.semantic(start, e))?
            }
            other => {
                return Err(self.error_at(start, format!("unknown function '{other}'")));
            }
        };
        self.expect(']')?;
        Ok(f)
    }

    fn kernel(&mut self) -> PResult<KernelExpr> {
        let (start, name) = self.ident()?;
        let semantic = |p: &Self, e: Error| p.semantic(start, e);
        Ok(match name {
            "szego" => KernelExpr::Szego,
            "bergman" => {
                self.expect('[')?;
                self.key("alpha")?;
                let alpha = self.real()?;
                self.expect(']')?;
                KernelExpr::weighted_bergman(alpha).map_err(|e| semantic(self, e))?
            }
            "dbr" => {
                self.expect('[')?;
                self.key("b")?;
                let b = self.schur()?;
                self.expect(']')?;
                KernelExpr::de_branges_rovnyak(b)
            }
            "subbergman" => {
                self.expect('[')?;
                self.key("b")?;
                let b = self.schur()?;
                let alpha = if self.eat(',') {
                    self.key("alpha")?;
                    self.real()?
                } else {
                    0.0
                };
                self.expect(']')?;
                KernelExpr::sub_bergman(b, alpha).map_err(|e| semantic(self, e))?
            }
            "sum" | "schur" | "diff" => {
                self.expect('(')?;
                let a = self.kernel()?;
                self.expect(',')?;
                let b = self.kernel()?;
                self.expect(')')?;
                match name {
                    "sum" => KernelExpr::sum(a, b),
                    "schur" => KernelExpr::schur(a, b),
                    _ => KernelExpr::difference(a, b),
                }
            }
            "scale" => {
                self.expect('(')?;
                let c = self.real()?;
                self.expect(',')?;
                let k = self.kernel()?;
                self.expect(')')?;
                KernelExpr::scale(c, k).map_err(|e| semantic(self, e))?
            }
            "cscale" => {
                self.expect('(')?;
                let f = self.analytic()?;
                self.expect(',')?;
                let k = self.kernel()?;
                self.expect(')')?;
                KernelExpr::conjugate_scale(f, k)
            }
            other => return Err(self.error_at(start, format!("unknown kernel '{other}'"))),
        })
    }

    fn grid(&mut self, default_seed: u64) -> PResult<GridSpec> {
        let (start, name) = self.ident()?;
        if name == "default" {
            return Ok(GridSpec::default_grid());
        }
        self.expect('[')?;
        let spec = match name {
            "radial" => {
                let radii = self.real_list()?;
                self.expect(';')?;
                self.key("angles")?;
                let angles = self.uint()? as usize;
                GridSpec::radial(radii, angles)
            }
            "random" => {
                self.key("n")?;
                let n = self.uint()? as usize;
                self.expect(',')?;
                self.key("rmax")?;
                let rmax = self.real()?;
                let seed = if self.eat(',') {
                    self.key("seed")?;
                    self.uint()?
                } else {
                    default_seed
                };
                GridSpec::random(n, rmax, seed)
            }
            "points" => {
                let at = self.pos;
                let points = self
                    .complex_list()?
                    .into_iter()
                    .map(DiskPoint::new)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| self.semantic(at, e))?;
                GridSpec::Explicit(points)
            }
            other => return Err(self.error_at(start, format!("unknown grid '{other}'"))),
        };
        self.expect(']')?;
        // Validate eagerly so errors point at the grid.
        crate::kernels::sample_grid(&spec).map_err(|e| self.semantic(start, e))?;
        Ok(spec)
    }
}

pub(crate) fn write_complex(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
    if z.im == 0.0 {
        write!(f, "{}", z.re)
    } else if z.re == 0.0 {
        write!(f, "{}i", z.im)
    } else if z.im < 0.0 {
        write!(f, "{}-{}i", z.re, -z.im)
    } else {
        write!(f, "{}+{}i", z.re, z.im)
    }
}

struct C(Complex64);

impl fmt::Display for C {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_complex(f, self.0)
    }
}

fn join<T>(items: &[T], map: impl Fn(&T) -> String) -> String {
    items.iter().map(map).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SchurFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Blaschke(b) => write!(
                f,
                "blaschke[{};c={}]",
                join(b.zeros(), |z| C(*z).to_string()),
                C(b.unimodular_constant())
            ),
            Self::Atomic(s) => write!(f, "atomic[sigma={},xi={}]", s.mass(), C(s.boundary_atom())),
            Self::Polynomial(p) => write!(f, "poly[{}]", join(p.coeffs(), |z| C(*z).to_string())),
            Self::Constant(c) => write!(f, "const[{}]", C(*c)),
        }
    }
}

impl fmt::Display for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Schur(s) => s.fmt(f),
            Self::Polynomial(p) => write!(f, "poly[{}]", join(p.coeffs(), |z| C(*z).to_string())),
            Self::ZeroKernel(k) => write!(f, "f0[b={}]", k.symbol()),
        }
    }
}

impl fmt::Display for KernelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Szego => write!(f, "szego"),
            Self::WeightedBergman { alpha } => write!(f, "bergman[alpha={alpha}]"),
            Self::DeBrangesRovnyak { b } => write!(f, "dbr[b={b}]"),
            Self::SubBergman { b, alpha } => write!(f, "subbergman[b={b},alpha={alpha}]"),
            Self::Sum(a, b) => write!(f, "sum({a},{b})"),
            Self::SchurProduct(a, b) => write!(f, "schur({a},{b})"),
            Self::Scale(c, k) => write!(f, "scale({c},{k})"),
            Self::Difference(a, b) => write!(f, "diff({a},{b})"),
            Self::ConjugateScale(g, k) => write!(f, "cscale({g},{k})"),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Explicit(points) => {
                write!(f, "points[{}]", join(points, |p| C(p.value()).to_string()))
            }
            Self::Radial { radii, angles } => {
                write!(
                    f,
                    "radial[{};angles={angles}]",
                    join(radii, |r| r.to_string())
                )
            }
            Self::Random {
                count,
                max_radius,
                seed,
            } => write!(f, "random[n={count},rmax={max_radius},seed={seed}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), c(-0.5, 0.0));
        assert_eq!(parse_complex("0.3-0.2i").unwrap(), c(0.3, -0.2));
        assert_eq!(parse_complex("1+i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("1e-3+2E2i").unwrap(), c(1e-3, 200.0));
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn function_grammar() {
        let b = parse_schur("blaschke[0,0;c=1]").unwrap();
        assert_eq!(b, SchurFunction::monomial(2).unwrap());
        assert_eq!(parse_schur("blaschke[0, 0]").unwrap(), b);
        let s = parse_schur("atomic[sigma=1,xi=1]").unwrap();
        assert!(matches!(s, SchurFunction::Atomic(_)));
        assert!(matches!(
            parse_schur("const[0.5i]").unwrap(),
            SchurFunction::Constant(_)
        ));
        assert!(parse_schur("poly[0,2]").is_err());
        assert!(matches!(
            parse_function("poly[0,2]").unwrap(),
            AnalyticFunction::Polynomial(_)
        ));
        assert!(matches!(
            parse_function("f0[b=blaschke[-0.5]]").unwrap(),
            AnalyticFunction::ZeroKernel(_)
        ));
        assert!(parse_schur("f0[b=blaschke[0]]").is_err());
    }

    #[test]
    fn kernel_grammar() {
        let k = parse_kernel("diff(szego,scale(2,szego))").unwrap();
        assert_eq!(
            k,
            KernelExpr::difference(
                KernelExpr::Szego,
                KernelExpr::scale(2.0, KernelExpr::Szego).unwrap()
            )
        );
        let k = parse_kernel("subbergman[b=blaschke[0,0;c=1],alpha=0]").unwrap();
        assert_eq!(
            k,
            KernelExpr::sub_bergman(SchurFunction::monomial(2).unwrap(), 0.0).unwrap()
        );
        assert!(parse_kernel("bergman[alpha=-2]").is_err());
        assert!(parse_kernel("cscale(f0[b=blaschke[0.5]],szego)").is_ok());
    }

    #[test]
    fn grid_grammar() {
        assert_eq!(
            parse_grid("radial[0.2,0.4;angles=8]", 0).unwrap(),
            GridSpec::radial(vec![0.2, 0.4], 8)
        );
        assert_eq!(
            parse_grid("random[n=10,rmax=0.9]", 42).unwrap(),
            GridSpec::random(10, 0.9, 42)
        );
        assert!(parse_grid("radial[1.5;angles=4]", 0).is_err());
        assert_eq!(parse_grid("default", 0).unwrap(), GridSpec::default_grid());
    }

    #[test]
    fn caret_points_at_error() {
        let err = parse_kernel("sum(szego,bogus)").unwrap_err();
        assert_eq!(err.position, 10);
        let text = err.to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "  sum(szego,bogus)");
        assert_eq!(lines[2].find('^'), Some(2 + 10));
    }

    #[test]
    fn canonical_round_trip() {
        for spec in [
            "szego",
            "bergman[alpha=1.5]",
            "subbergman[b=blaschke[0.3-0.2i,0;c=-1],alpha=2]",
            "cscale(f0[b=atomic[sigma=0.5,xi=-1]],dbr[b=poly[0.25,0.5i]])",
            "diff(scale(2,szego),schur(sum(szego,szego),bergman[alpha=0]))",
            "dbr[b=const[0.125]]",
        ] {
            let k = parse_kernel(spec).unwrap();
            assert_eq!(parse_kernel(&k.to_string()).unwrap(), k, "{spec}");
        }
    }
}
