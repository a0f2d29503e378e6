//! Minimal s-expression reader with source positions.

use super::SymbolicError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(s, _) => Some(s),
            SExpr::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            SExpr::Atom(..) => None,
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> SymbolicError {
        let p = self.pos();
        SymbolicError::Parse {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        }
    }
}

/// Reads every top-level form. `;` starts a line comment.
pub fn read_all(text: &str) -> Result<Vec<SExpr>, SymbolicError> {
    let mut reader = Reader {
        chars: text.chars().collect(),
        idx: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        reader.skip_ws();
        if reader.peek().is_none() {
            return Ok(out);
        }
        out.push(reader.read()?);
    }
}

struct Reader {
    chars: Vec<char>,
    idx: usize,
    line: usize,
    col: usize,
}

impl Reader {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == ';' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn error(&self, msg: &str) -> SymbolicError {
        SymbolicError::Parse {
            line: self.line,
            col: self.col,
            msg: msg.to_string(),
        }
    }

    fn read(&mut self) -> Result<SExpr, SymbolicError> {
        self.skip_ws();
        let start = self.pos();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(')') => Err(self.error("unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => {
                            return Err(SymbolicError::Parse {
                                line: start.line,
                                col: start.col,
                                msg: "unclosed `(`".into(),
                            })
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(SExpr::Atom(s, start))
            }
        }
    }
}
