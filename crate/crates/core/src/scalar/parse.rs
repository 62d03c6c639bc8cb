//! Text syntax: `p/q` rationals, `z<N>^k` roots of unity, `+ - *` and parentheses.
//! Linear combinations may also mention basis symbols (any other identifier,
//! which may contain `. ' [ ] @`), each multiplied by at most one symbol per term.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Cyclotomic;

/// A parsed linear combination: `(None, c)` is the pure scalar part.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearTerms {
    pub terms: Vec<(Option<String>, Cyclotomic)>,
}

impl LinearTerms {
    fn scalar(c: Cyclotomic) -> Self {
        LinearTerms {
            terms: vec![(None, c)],
        }
    }

    fn push(&mut self, sym: Option<String>, c: Cyclotomic) {
        if let Some(slot) = self.terms.iter_mut().find(|(s, _)| *s == sym) {
            slot.1 += &c;
        } else {
            self.terms.push((sym, c));
        }
    }

    fn add(mut self, other: LinearTerms, sign: bool) -> Self {
        for (s, c) in other.terms {
            self.push(s, if sign { c } else { -c });
        }
        self
    }

    fn mul(self, other: LinearTerms) -> Result<Self, String> {
        let mut out = LinearTerms::default();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                let sym = match (s1, s2) {
                    (Some(_), Some(_)) => {
                        return Err("product of two basis symbols is not linear".into())
                    }
                    (Some(s), None) | (None, Some(s)) => Some(s.clone()),
                    (None, None) => None,
                };
                out.push(sym, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Nonzero terms in first-appearance order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Option<String>, &Cyclotomic)> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s, c))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Root(u32),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(
                    text.parse().map_err(|_| format!("bad number `{text}`"))?,
                ));
            }
            a if a.is_alphabetic() || a == '_' || a == '[' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric()
                        || matches!(chars[i], '_' | '.' | '\'' | '[' | ']' | '@'))
                {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let root = text
                    .strip_prefix('z')
                    .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&n| n > 0);
                out.push(match root {
                    Some(n) => Tok::Root(n),
                    None => Tok::Ident(text),
                });
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    allow_symbols: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LinearTerms, String> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                LinearTerms::default().add(self.term()?, false)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?, true);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.add(self.term()?, false);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LinearTerms, String> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(self.factor()?)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64, String> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(n)) => {
                let v: i64 = n.try_into().map_err(|_| "exponent too large".to_string())?;
                Ok(if neg { -v } else { v })
            }
            _ => Err("expected exponent after `^`".into()),
        }
    }

    fn factor(&mut self) -> Result<LinearTerms, String> {
        match self.next() {
            Some(Tok::Minus) => Ok(LinearTerms::default().add(self.factor()?, false)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err("missing `)`".into()),
                }
            }
            Some(Tok::Num(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => Ok(LinearTerms::scalar(
                            Cyclotomic::rational(BigRational::new(n, d)),
                        )),
                        Some(Tok::Num(_)) => Err("zero denominator".into()),
                        _ => Err("expected denominator after `/`".into()),
                    }
                } else {
                    Ok(LinearTerms::scalar(Cyclotomic::rational(
                        BigRational::from_integer(n),
                    )))
                }
            }
            Some(Tok::Root(n)) => {
                let k = if let Some(Tok::Caret) = self.peek() {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok(LinearTerms::scalar(Cyclotomic::root_of_unity(n, k)))
            }
            Some(Tok::Ident(name)) => {
                if !self.allow_symbols {
                    return Err(format!("unexpected identifier `{name}`"));
                }
                Ok(LinearTerms {
                    terms: vec![(Some(name), Cyclotomic::one())],
                })
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

fn run(s: &str, allow_symbols: bool) -> Result<LinearTerms, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser {
        toks,
        pos: 0,
        allow_symbols,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in `{s}`"));
    }
    Ok(e)
}

/// Parses a scalar such as `1/2 + z3^2` or `-z8^7`.
pub fn parse_scalar(s: &str) -> Result<Cyclotomic, String> {
    let e = run(s, false)?;
    Ok(e.terms
        .into_iter()
        .fold(Cyclotomic::zero(), |acc, (_, c)| acc + c))
}

/// Parses a linear combination of basis symbols, e.g. `2*e11 - z3*x12 + 1/2*y`.
pub fn parse_linear(s: &str) -> Result<LinearTerms, String> {
    run(s, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        let a = parse_scalar("1/2 + z3^2").unwrap();
        let b = &Cyclotomic::from_frac(1, 2) + &Cyclotomic::root_of_unity(3, 2);
        assert_eq!(a, b);
        assert_eq!(parse_scalar("-z4 * z4").unwrap(), Cyclotomic::one());
        assert_eq!(
            parse_scalar("z8^-1").unwrap(),
            Cyclotomic::root_of_unity(8, 7)
        );
        assert_eq!(parse_scalar("(1 + z3 + z3^2)").unwrap(), Cyclotomic::zero());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1 +").is_err());
    }

    #[test]
    fn linear_combinations() {
        let e = parse_linear("2*e11 - z3*x12 + 1/2 * e11").unwrap();
        let got: Vec<_> = e
            .nonzero()
            .map(|(s, c)| (s.clone().unwrap(), c.clone()))
            .collect();
        assert_eq!(got[0], ("e11".into(), Cyclotomic::from_frac(5, 2)));
        assert_eq!(got[1], ("x12".into(), -Cyclotomic::root_of_unity(3, 1)));
        assert!(parse_linear("a*b").is_err());
    }
}
