//! Exact cell decompositions for restrictions of a function to a simplex of
//! dimension at most two.
//!
//! The simplex is parametrized as `v0 + sum t_i (v_i - v0)` over the
//! standard simplex `{t >= 0, sum t <= 1}`, and cut by every line (or point)
//! on which two of the function's forms agree. On each resulting cell the
//! ordering of the forms is fixed, so the function is affine there.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::PwlFunction;
use crate::geometry::Simplex;

/// An affine function of `t`: coefficients followed by the constant.
type Form = Vec<BigRational>;
type Point = Vec<BigRational>;

fn eval(form: &Form, t: &[BigRational]) -> BigRational {
    let k = form.len() - 1;
    form[..k].iter().zip(t).fold(form[k].clone(), |acc, (c, x)| acc + c * x)
}

pub(super) struct Restriction {
    k: usize,
    forms: Vec<Form>,
    terms: Vec<Vec<usize>>,
}

impl Restriction {
    pub(super) fn new(f: &PwlFunction, s: &Simplex) -> Self {
        let v = s.vertices();
        let k = s.dim();
        let base = v[0].coords();
        let dirs: Vec<Vec<BigRational>> = v[1..].iter().map(|w| w.coords().iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        let mut forms: Vec<Form> = Vec::new();
        let mut terms = Vec::with_capacity(f.terms.len());
        for term in &f.terms {
            let mut idx = Vec::with_capacity(term.len());
            for a in term {
                let mut form: Form = dirs
                    .iter()
                    .map(|d| a.coeffs.iter().zip(d).fold(BigRational::zero(), |acc, (c, x)| acc + x * c))
                    .collect();
                form.push(a.eval(base));
                let i = forms.iter().position(|g| *g == form).unwrap_or_else(|| {
                    forms.push(form);
                    forms.len() - 1
                });
                idx.push(i);
            }
            terms.push(idx);
        }
        Self { k, forms, terms }
    }

    fn value(&self, t: &[BigRational]) -> BigRational {
        let vals: Vec<BigRational> = self.forms.iter().map(|f| eval(f, t)).collect();
        self.terms
            .iter()
            .map(|term| term.iter().map(|&i| vals[i].clone()).min().expect("nonempty term"))
            .max()
            .expect("nonempty function")
    }

    /// Nonconstant pairwise differences, each scaled so its first nonzero
    /// coefficient is 1, without repeats.
    fn cuts(&self) -> Vec<Form> {
        let mut out: Vec<Form> = Vec::new();
        for i in 0..self.forms.len() {
            for j in i + 1..self.forms.len() {
                let d: Form = self.forms[i].iter().zip(&self.forms[j]).map(|(a, b)| a - b).collect();
                let Some(lead) = d[..self.k].iter().find(|c| !c.is_zero()).cloned() else {
                    continue;
                };
                let d: Form = d.iter().map(|c| c / &lead).collect();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Cells of the arrangement as vertex lists (intervals for `k = 1`,
    /// convex polygons for `k = 2`, the single point for `k = 0`).
    fn cells(&self) -> Vec<Vec<Point>> {
        let z = BigRational::zero;
        let one = || BigRational::from_integer(1.into());
        match self.k {
            0 => vec![vec![vec![]]],
            1 => {
                let mut ts: Vec<BigRational> = vec![z(), one()];
                for c in self.cuts() {
                    // c[0] t + c[1] = 0 with c[0] = 1
                    let t = -&c[1];
                    if t.is_positive() && t < one() {
                        ts.push(t);
                    }
                }
                ts.sort();
                ts.dedup();
                ts.windows(2).map(|w| vec![vec![w[0].clone()], vec![w[1].clone()]]).collect()
            }
            2 => {
                let mut cells: Vec<Vec<Point>> = vec![vec![vec![z(), z()], vec![one(), z()], vec![z(), one()]]];
                for c in self.cuts() {
                    let mut next = Vec::with_capacity(cells.len());
                    for poly in cells {
                        match split(&poly, &c) {
                            Some((a, b)) => {
                                next.push(a);
                                next.push(b);
                            }
                            None => next.push(poly),
                        }
                    }
                    cells = next;
                }
                cells
            }
            _ => unreachable!("restrictions are only built for simplexes of dimension <= 2"),
        }
    }

    pub(super) fn vanishes(&self) -> bool {
        self.cells().iter().flatten().all(|p| self.value(p).is_zero())
    }

    /// Convex iff the function dominates, at every cell vertex, each affine
    /// piece it takes on a cell; it is then the maximum of those pieces.
    pub(super) fn is_convex(&self) -> bool {
        if self.k == 0 {
            return true;
        }
        let cells = self.cells();
        let mut pieces: Vec<usize> = Vec::new();
        for cell in &cells {
            let n = BigRational::from_integer(cell.len().into());
            let centre: Point = (0..self.k).map(|i| cell.iter().map(|p| p[i].clone()).sum::<BigRational>() / &n).collect();
            let v = self.value(&centre);
            let piece = self.forms.iter().position(|f| eval(f, &centre) == v).expect("the value is attained by some form");
            if !pieces.contains(&piece) {
                pieces.push(piece);
            }
        }
        let mut points: Vec<&Point> = cells.iter().flatten().collect();
        points.sort();
        points.dedup();
        points.iter().all(|p| {
            let v = self.value(p);
            pieces.iter().all(|&i| eval(&self.forms[i], p) <= v)
        })
    }
}

/// Cuts a convex polygon along `c(t) = 0`. Returns `None` unless the line
/// passes through the interior.
fn split(poly: &[Point], c: &Form) -> Option<(Vec<Point>, Vec<Point>)> {
    let vals: Vec<BigRational> = poly.iter().map(|p| eval(c, p)).collect();
    if !vals.iter().any(|v| v.is_positive()) || !vals.iter().any(|v| v.is_negative()) {
        return None;
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let (p, vp) = (&poly[i], &vals[i]);
        if !vp.is_negative() {
            pos.push(p.clone());
        }
        if !vp.is_positive() {
            neg.push(p.clone());
        }
        let vq = &vals[j];
        if (vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive()) {
            let s = vp / (vp - vq);
            let x: Point = p.iter().zip(&poly[j]).map(|(a, b)| a + (b - a) * &s).collect();
            pos.push(x.clone());
            neg.push(x);
        }
    }
    Some((pos, neg))
}
