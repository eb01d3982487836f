use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::tensor::StateTensor;
use super::EntanglementError;

/// Sparse multivariate polynomial with complex coefficients, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: Complex64) -> Self {
        Self::monomial(nvars, vec![0; nvars], value)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, c(1.0))
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: Complex64) -> Self {
        assert_eq!(exponents.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exponents, coeff);
        p
    }

    /// Builds from `(coefficient, exponents)` pairs.
    pub fn from_terms(nvars: usize, terms: &[(f64, &[u32])]) -> Self {
        let mut p = Self::zero(nvars);
        for (coeff, e) in terms {
            p.add_term(e.to_vec(), c(*coeff));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Complex64 {
        self.terms.get(exponents).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: Complex64) {
        match self.terms.entry(exponents) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == Complex64::default() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if coeff != Complex64::default() {
                    v.insert(coeff);
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree present; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        self.filter_degree(|d| d == degree)
    }

    /// Terms of total degree `< bound`.
    pub fn truncate_below(&self, bound: u32) -> Self {
        self.filter_degree(|d| d < bound)
    }

    fn filter_degree(&self, keep: impl Fn(u32) -> bool) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e.iter().sum()))
                .map(|(e, v)| (e.clone(), *v))
                .collect(),
        }
    }

    /// Drops coefficients with modulus `≤ tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(_, v)| v.norm() > tol)
                .map(|(e, v)| (e.clone(), *v))
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * s);
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, v * f64::from(e[i]));
            }
        }
        p
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, v)| e.iter().zip(x).fold(*v, |acc, (&k, xi)| acc * xi.powu(k)))
            .sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, c(1.0));
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitutes `x_i ↦ images[i]`; all images share one variable count.
    pub fn compose(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(m);
        for (e, v) in &self.terms {
            let mut term = Self::constant(m, *v);
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = &term * &img.pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// `f(x + p)`, moving `p` to the origin.
    pub fn translate(&self, p: &[Complex64]) -> Self {
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| &Self::var(self.nvars, i) + &Self::constant(self.nvars, p[i]))
            .collect();
        self.compose(&images)
    }

    /// Writes the polynomial with the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Vec<u32>, &Complex64)> = self.terms.iter().collect();
        // Higher degree first, then reverse-lexicographic so `x` precedes `y`.
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (i, (e, v)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| {
                    if k == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (sign, coeff) = coefficient_text(*v, mono.is_empty());
            if i == 0 {
                if sign == '-' {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == '-' { " - " } else { " + " });
            }
            match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => out.push_str(&mono),
                (false, true) => out.push_str(&coeff),
                (false, false) => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn coefficient_text(v: Complex64, bare: bool) -> (char, String) {
    let fmt = |x: f64| {
        if x.fract() == 0.0 && x.abs() < 1e15 {
            format!("{}", x as i64)
        } else {
            format!("{x}")
        }
    };
    if v.im == 0.0 {
        let sign = if v.re < 0.0 { '-' } else { '+' };
        let mag = v.re.abs();
        let text = if mag == 1.0 && !bare {
            String::new()
        } else {
            fmt(mag)
        };
        (sign, text)
    } else {
        (
            '+',
            format!(
                "({}{}{}i)",
                fmt(v.re),
                if v.im < 0.0 { "-" } else { "+" },
                fmt(v.im.abs())
            ),
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), *v);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(c(-1.0))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}

/// `f_ψ = Σ a_{i1…in} x^1_{i1} ⋯ x^n_{in}` on `C^{d1} × ⋯ × C^{dn}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearForm {
    tensor: StateTensor,
}

/// A polynomial germ at a basepoint, with variable names for display.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGerm {
    pub variables: Vec<String>,
    pub polynomial: Polynomial,
    pub basepoint: Vec<Complex64>,
}

impl LocalGerm {
    pub fn at_origin(variables: Vec<String>, polynomial: Polynomial) -> Self {
        let n = polynomial.nvars();
        assert_eq!(variables.len(), n);
        LocalGerm {
            variables,
            polynomial,
            basepoint: vec![Complex64::default(); n],
        }
    }

    /// Germ with default names `x, y, z, t, u, v, w` (then `x7, x8, …`).
    pub fn new(polynomial: Polynomial) -> Self {
        let names = (0..polynomial.nvars()).map(default_name).collect();
        Self::at_origin(names, polynomial)
    }

    pub fn display(&self) -> String {
        self.polynomial.format_with(&self.variables)
    }
}

fn default_name(i: usize) -> String {
    const LETTERS: [&str; 7] = ["x", "y", "z", "t", "u", "v", "w"];
    LETTERS
        .get(i)
        .map_or_else(|| format!("x{i}"), |s| s.to_string())
}

pub fn hyperplane_section_poly(t: &StateTensor) -> MultilinearForm {
    MultilinearForm { tensor: t.clone() }
}

impl MultilinearForm {
    pub fn tensor(&self) -> &StateTensor {
        &self.tensor
    }

    /// Total number of homogeneous coordinates `Σ d_i`, ordered factor by factor.
    pub fn num_coordinates(&self) -> usize {
        self.tensor.format().iter().sum()
    }

    /// `f_ψ` as a polynomial in all `Σ d_i` coordinates.
    pub fn polynomial(&self) -> Polynomial {
        let format = self.tensor.format();
        let offsets: Vec<usize> = format
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let n = self.num_coordinates();
        let mut p = Polynomial::zero(n);
        for (flat, a) in self.tensor.amplitudes().iter().enumerate() {
            if *a == Complex64::default() {
                continue;
            }
            let mut e = vec![0; n];
            for (k, i) in self.tensor.multi_index(flat).into_iter().enumerate() {
                e[offsets[k] + i] = 1;
            }
            p.add_term(e, *a);
        }
        p
    }

    /// Affine chart `x^k_{chart[k]} = 1` for every factor `k`; the remaining
    /// `Σ (d_i − 1)` coordinates become the germ's variables, based at the origin.
    pub fn chart(&self, chart: &[usize]) -> Result<LocalGerm, EntanglementError> {
        let format = self.tensor.format();
        if chart.len() != format.len() {
            return Err(EntanglementError::ChartLength {
                expected: format.len(),
                got: chart.len(),
            });
        }
        for (factor, (&index, &dim)) in chart.iter().zip(format).enumerate() {
            if index >= dim {
                return Err(EntanglementError::ChartIndex { factor, index, dim });
            }
        }
        // Position of each free coordinate (factor, index) in the germ's variables.
        let mut names = Vec::new();
        let mut slot: Vec<Vec<Option<usize>>> = Vec::new();
        for (factor, &dim) in format.iter().enumerate() {
            let letter = default_name(factor);
            let mut row = Vec::with_capacity(dim);
            for i in 0..dim {
                if i == chart[factor] {
                    row.push(None);
                } else {
                    row.push(Some(names.len()));
                    names.push(if dim == 2 {
                        letter.clone()
                    } else {
                        format!("{letter}{i}")
                    });
                }
            }
            slot.push(row);
        }
        let n = names.len();
        let mut p = Polynomial::zero(n);
        for (flat, a) in self.tensor.amplitudes().iter().enumerate() {
            if *a == Complex64::default() {
                continue;
            }
            let mut e = vec![0; n];
            for (k, i) in self.tensor.multi_index(flat).into_iter().enumerate() {
                if let Some(s) = slot[k][i] {
                    e[s] = 1;
                }
            }
            p.add_term(e, *a);
        }
        Ok(LocalGerm::at_origin(names, p))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(default_name).collect();
        f.write_str(&self.format_with(&names))
    }
}
