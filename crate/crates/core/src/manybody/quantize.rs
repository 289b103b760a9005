use super::{interaction_apply, MultiObjectState, Weight};
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::linalg::{c, C64};
use crate::modeops::{apply_four_momentum, QuadratureSet};

/// A field factor with its derivative indices, outermost first.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub derivs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub factors: Vec<Factor>,
}

/// Sum of products of fields and their derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldExpr {
    pub terms: Vec<Term>,
}

impl FieldExpr {
    /// Grammar: `expr := term (('+'|'-') term)*`,
    /// `term := [number '*'] factor ('*' factor)*`,
    /// `factor := 'psi' | 'd' digit '(' factor ')'`.
    pub fn parse(src: &str) -> Result<Self> {
        let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &s, i: 0 };
        let e = p.expr()?;
        if p.i != s.len() {
            return Err(Error::Parse(format!("unexpected input at position {}", p.i)));
        }
        Ok(e)
    }

    /// Number of field factors per term (all terms agree).
    pub fn arity(&self) -> usize {
        self.terms.first().map_or(0, |t| t.factors.len())
    }
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldExpr> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') { -1.0 } else { 1.0 };
        loop {
            let mut t = self.term()?;
            t.coeff *= sign;
            terms.push(t);
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else {
                break;
            }
        }
        let m = terms[0].factors.len();
        if terms.iter().any(|t| t.factors.len() != m) {
            return Err(Error::Parse("all terms need the same number of field factors".into()));
        }
        Ok(FieldExpr { terms })
    }

    fn term(&mut self) -> Result<Term> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.' || c == 'e') {
            // `e` only inside a number, never at its start
            if self.peek() == Some('e') && self.i == start {
                break;
            }
            self.i += 1;
        }
        let coeff = if self.i > start {
            let num: String = self.s[start..self.i].iter().collect();
            let v: f64 = num.parse().map_err(|_| Error::Parse(format!("bad number '{num}'")))?;
            if !self.eat('*') {
                return Err(Error::Parse("expected '*' after coefficient".into()));
            }
            v
        } else {
            1.0
        };
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(Term { coeff, factors })
    }

    fn factor(&mut self) -> Result<Factor> {
        let rest: String = self.s[self.i..].iter().take(3).collect();
        if rest.eq_ignore_ascii_case("psi") {
            self.i += 3;
            return Ok(Factor { derivs: Vec::new() });
        }
        if self.eat('d') {
            let mu = self
                .peek()
                .and_then(|c| c.to_digit(10))
                .ok_or_else(|| Error::Parse("expected derivative index after 'd'".into()))? as usize;
            self.i += 1;
            if mu > 3 {
                return Err(Error::Parse(format!("derivative index {mu} > 3")));
            }
            if !self.eat('(') {
                return Err(Error::Parse("expected '('".into()));
            }
            let inner = self.factor()?;
            if !self.eat(')') {
                return Err(Error::Parse("expected ')'".into()));
            }
            let mut derivs = vec![mu];
            derivs.extend(inner.derivs);
            if derivs.len() > 2 {
                return Err(Error::Capability("derivatives beyond second order are not supported".into()));
            }
            return Ok(Factor { derivs });
        }
        Err(Error::Parse(format!("expected 'psi' or 'd<mu>(' at position {}", self.i)))
    }
}

/// Applies `∂^μ → iP^μ` per factor, then the equal-label product per term.
#[derive(Clone, Debug)]
pub struct QuantizedEvaluator {
    pub expr: FieldExpr,
}

impl QuantizedEvaluator {
    pub fn evaluate(&self, q: &QuadratureSet, states: &[StateVector]) -> Result<MultiObjectState> {
        let m = self.expr.arity();
        if states.len() != m {
            return Err(Error::Validation(format!("expression has {m} factors, got {} states", states.len())));
        }
        let mut acc: Option<MultiObjectState> = None;
        for t in &self.expr.terms {
            let mapped: Vec<StateVector> = t
                .factors
                .iter()
                .zip(states)
                .map(|(f, s)| {
                    let mut v = s.clone();
                    for &mu in f.derivs.iter().rev() {
                        v = apply_four_momentum(q, &v, mu)?.scaled(C64::new(0.0, 1.0));
                    }
                    Ok(v)
                })
                .collect::<Result<_>>()?;
            let part = interaction_apply(&Weight::Constant(c(t.coeff)), &mapped)?;
            acc = Some(match acc {
                None => part,
                Some(mut a) => {
                    for (x, y) in a.amp.iter_mut().zip(&part.amp) {
                        *x += y;
                    }
                    a
                }
            });
        }
        acc.ok_or_else(|| Error::Validation("empty expression".into()))
    }
}

pub fn quantize_expression(src: &str) -> Result<QuantizedEvaluator> {
    Ok(QuantizedEvaluator {
        expr: FieldExpr::parse(src)?,
    })
}
