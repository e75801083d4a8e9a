//! Recursive-descent parser for group expressions.
//!
//! Lines starting with `#` are comments. Cycle literals use 1-based points
//! and are converted to 0-based here.

use super::ast::{ActionMap, Atom, Ex3Action, Family, GroupExpr, Letter, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Semi,
    LBracket,
    RBracket,
    Arrow,
    Caret,
    Minus,
    Star,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '^' => Some(Tok::Caret),
                '*' => Some(Tok::Star),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Token { tok, line, column });
                i += 1;
            } else if c == '-' {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Token { tok: Tok::Arrow, line, column });
                    i += 2;
                } else {
                    out.push(Token { tok: Tok::Minus, line, column });
                    i += 1;
                }
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| syntax(line, column, format!("integer `{s}` out of range")))?;
                out.push(Token { tok: Tok::Int(n), line, column });
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    column,
                });
            } else {
                return Err(syntax(line, column, format!("unexpected character `{c}`")));
            }
        }
    }
    let (line, column) = text
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// Parses one group expression.
pub fn parse(text: &str) -> Result<GroupExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.expect(Tok::End)?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        syntax(line, column, message)
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            )))
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            other => Err(self.error(format!("expected an integer, found {}", other.describe()))),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let (line, column) = self.here();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| syntax(line, column, format!("integer {n} out of range")))
    }

    /// Separator between arguments of `name`; a closing parenthesis here
    /// means too few arguments.
    fn separator(&mut self, name: &str, sep: Tok, expected: &str) -> Result<()> {
        if *self.peek() == Tok::RParen {
            return Err(Error::Arity {
                name: name.into(),
                message: format!("expects {expected}"),
            });
        }
        self.expect(sep)
    }

    /// Closing parenthesis of `name`; a comma here means too many arguments.
    fn close(&mut self, name: &str, expected: &str) -> Result<()> {
        if matches!(self.peek(), Tok::Comma | Tok::Semi) {
            return Err(Error::Arity {
                name: name.into(),
                message: format!("expects {expected}"),
            });
        }
        self.expect(Tok::RParen)
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let (line, column) = self.here();
        let name = match self.next().tok {
            Tok::Ident(s) => s,
            other => {
                return Err(syntax(
                    line,
                    column,
                    format!("expected a group expression, found {}", other.describe()),
                ))
            }
        };
        let boxed = Box::new;
        match name.as_str() {
            "D" => {
                self.expect(Tok::LParen)?;
                if *self.peek() == Tok::RParen {
                    return Err(Error::Arity {
                        name,
                        message: "expects at least one factor".into(),
                    });
                }
                let mut xs = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    xs.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                Ok(GroupExpr::DirectProduct(xs))
            }
            "W" | "CROWN" => {
                self.expect(Tok::LParen)?;
                let x = self.expr()?;
                self.separator(&name, Tok::Comma, "2 arguments")?;
                let n = self.small_int()? as usize;
                self.close(&name, "2 arguments")?;
                Ok(if name == "W" {
                    GroupExpr::WreathCyclic(boxed(x), n)
                } else {
                    GroupExpr::CrownPower(boxed(x), n)
                })
            }
            "SD" => {
                self.expect(Tok::LParen)?;
                let n = self.expr()?;
                self.separator(&name, Tok::Comma, "3 arguments")?;
                let h = self.expr()?;
                self.separator(&name, Tok::Comma, "3 arguments")?;
                let action = self.action()?;
                self.close(&name, "3 arguments")?;
                Ok(GroupExpr::Semidirect(boxed(n), boxed(h), action))
            }
            "Q" | "SUB" => {
                self.expect(Tok::LParen)?;
                let x = self.expr()?;
                self.separator(&name, Tok::Semi, "a group and a word list")?;
                let words = self.words()?;
                self.expect(Tok::RParen)?;
                Ok(if name == "Q" {
                    GroupExpr::Quotient(boxed(x), words)
                } else {
                    GroupExpr::Subgroup(boxed(x), words)
                })
            }
            "EX1" | "EX2B" | "WREATH" => {
                let family = match name.as_str() {
                    "EX1" => Family::Ex1,
                    "EX2B" => Family::Ex2b,
                    _ => Family::Wreath,
                };
                Ok(GroupExpr::Family(family, self.family_parameter(&name)?))
            }
            "EX2A" => {
                let t = if *self.peek() == Tok::LParen {
                    self.family_parameter(&name)?
                } else {
                    1
                };
                Ok(GroupExpr::Family(Family::Ex2a, t))
            }
            "EX3" => {
                if *self.peek() != Tok::LParen {
                    return Err(Error::Arity {
                        name,
                        message: "expects a parameter".into(),
                    });
                }
                self.next();
                let t = self.small_int()?;
                let mut action = Ex3Action::default();
                if *self.peek() == Tok::Comma {
                    self.next();
                    let (line, column) = self.here();
                    match self.next().tok {
                        Tok::Ident(s) => {
                            action = Ex3Action::from_name(&s).ok_or_else(|| {
                                syntax(line, column, format!("unknown action variant `{s}`"))
                            })?;
                        }
                        other => {
                            return Err(syntax(
                                line,
                                column,
                                format!("expected an action variant, found {}", other.describe()),
                            ))
                        }
                    }
                }
                self.close(&name, "a parameter and an optional action variant")?;
                Ok(GroupExpr::Family(Family::Ex3(action), t))
            }
            "PSL2" | "PGL2" => {
                self.expect(Tok::LParen)?;
                let q = self.small_int()?;
                self.close(&name, "1 argument")?;
                Ok(GroupExpr::Atom(if name == "PSL2" {
                    Atom::Psl2(q)
                } else {
                    Atom::Pgl2(q)
                }))
            }
            "K4" => Ok(GroupExpr::Atom(Atom::Klein)),
            _ => {
                let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
                let (prefix, digits) = name.split_at(split);
                let n: Option<u32> = digits.parse().ok();
                let atom = match (prefix, n) {
                    ("C", Some(n)) => Atom::Cyclic(n),
                    ("S", Some(n)) => Atom::Symmetric(n),
                    ("A", Some(n)) => Atom::Alternating(n),
                    ("Dih", Some(n)) => Atom::Dihedral(n),
                    _ => return Err(Error::UnknownAtom(name)),
                };
                Ok(GroupExpr::Atom(atom))
            }
        }
    }

    fn family_parameter(&mut self, name: &str) -> Result<u32> {
        if *self.peek() != Tok::LParen {
            return Err(Error::Arity {
                name: name.into(),
                message: "expects a parameter".into(),
            });
        }
        self.next();
        if *self.peek() == Tok::RParen {
            return Err(Error::Arity {
                name: name.into(),
                message: "expects a parameter".into(),
            });
        }
        let t = self.small_int()?;
        self.close(name, "1 argument")?;
        Ok(t)
    }

    fn words(&mut self) -> Result<Vec<Word>> {
        let mut ws = vec![self.word()?];
        while *self.peek() == Tok::Comma {
            self.next();
            ws.push(self.word()?);
        }
        Ok(ws)
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Tok::Ident(_) | Tok::LParen => letters.push(self.letter()?),
                Tok::Star if !letters.is_empty() => {
                    self.next();
                    letters.push(self.letter()?);
                }
                _ => break,
            }
        }
        if letters.is_empty() {
            return Err(self.error(format!("expected a word, found {}", self.peek().describe())));
        }
        Ok(Word(letters))
    }

    fn power(&mut self) -> Result<i64> {
        if *self.peek() != Tok::Caret {
            return Ok(1);
        }
        self.next();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.next();
        }
        let (line, column) = self.here();
        let n = i64::try_from(self.int()?)
            .map_err(|_| syntax(line, column, "exponent out of range"))?;
        Ok(if negative { -n } else { n })
    }

    fn generator(&mut self) -> Result<usize> {
        let (line, column) = self.here();
        match self.next().tok {
            Tok::Ident(s) => {
                let index = s
                    .strip_prefix('g')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| {
                        syntax(line, column, format!("expected a generator g1, g2, …, found `{s}`"))
                    })?;
                Ok(index - 1)
            }
            other => Err(syntax(
                line,
                column,
                format!("expected a generator, found {}", other.describe()),
            )),
        }
    }

    fn letter(&mut self) -> Result<Letter> {
        if let Tok::Ident(_) = self.peek() {
            let index = self.generator()?;
            let power = self.power()?;
            return Ok(Letter::Gen { index, power });
        }
        self.expect(Tok::LParen)?;
        if let Tok::Int(_) = self.peek() {
            let mut cycle = Vec::new();
            loop {
                let (line, column) = self.here();
                let point = self.int()?;
                if point == 0 {
                    return Err(syntax(line, column, "points are numbered from 1"));
                }
                cycle.push((point - 1) as usize);
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
            let power = self.power()?;
            return Ok(Letter::Cycles {
                cycles: vec![cycle],
                power,
            });
        }
        if *self.peek() == Tok::RParen {
            self.next();
            let power = self.power()?;
            return Ok(Letter::Group {
                word: Word::default(),
                power,
            });
        }
        let word = self.word()?;
        self.expect(Tok::RParen)?;
        let power = self.power()?;
        Ok(Letter::Group { word, power })
    }

    fn action(&mut self) -> Result<ActionMap> {
        self.expect(Tok::LBracket)?;
        let mut images = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                let g = self.generator()?;
                self.expect(Tok::Arrow)?;
                self.expect(Tok::LBracket)?;
                let ws = if *self.peek() == Tok::RBracket {
                    Vec::new()
                } else {
                    self.words()?
                };
                self.expect(Tok::RBracket)?;
                images.push((g, ws));
                if *self.peek() == Tok::Semi {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(ActionMap { images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_product() {
        let e = parse("D(S3, C2, C2)").unwrap();
        assert_eq!(
            e,
            GroupExpr::DirectProduct(vec![
                GroupExpr::Atom(Atom::Symmetric(3)),
                GroupExpr::Atom(Atom::Cyclic(2)),
                GroupExpr::Atom(Atom::Cyclic(2)),
            ])
        );
    }

    #[test]
    fn crown_and_wreath() {
        assert_eq!(
            parse("CROWN(S3, 2)").unwrap(),
            GroupExpr::CrownPower(Box::new(GroupExpr::Atom(Atom::Symmetric(3))), 2)
        );
        assert_eq!(
            parse("W(PGL2(7), 2)").unwrap(),
            GroupExpr::WreathCyclic(Box::new(GroupExpr::Atom(Atom::Pgl2(7))), 2)
        );
    }

    #[test]
    fn words_and_actions() {
        let e = parse("SD(C7, C3, [g1 -> [g1^2]])").unwrap();
        let GroupExpr::Semidirect(_, _, action) = &e else {
            panic!("not a semidirect product")
        };
        assert_eq!(action.images[0].0, 0);
        let e = parse("Q(S4; (1,2)(3,4), g1^-1*g2)").unwrap();
        let GroupExpr::Quotient(_, ws) = &e else {
            panic!("not a quotient")
        };
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[0].0.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        match parse("D(S3,\n  C2 C2)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("Foo7"), Err(Error::UnknownAtom(_))));
        assert!(matches!(parse("W(C2)"), Err(Error::Arity { .. })));
        assert!(matches!(parse("EX1"), Err(Error::Arity { .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "D(S3, C2, C2)",
            "W(PGL2(7), 2)",
            "SD(C7, C3, [g1 -> [g1^2]])",
            "Q(S4; (1,2)*(3,4), g1^-1*g2)",
            "EX3(2, trivial)",
            "CROWN(S3, 3)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text}");
        }
    }
}
