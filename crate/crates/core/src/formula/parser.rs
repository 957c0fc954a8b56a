//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! iff     := implies ( "<->" implies )*        left-associative
//! implies := or ( "->" implies )?              right-associative
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ( "~" | "!" ) unary | primary
//! primary := atom | "true" | "false" | "(" iff ")"
//! atom    := [a-z][a-z0-9_]*
//! ```

use super::{is_keyword, Formula, FormulaError, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("`{name}`"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> FormulaError {
    FormulaError::Syntax { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' | b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 2;
                Token::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Token::True,
                    "false" => Token::False,
                    name => Token::Ident(name.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    table: &'a SymbolTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.implies()?;
        while self.eat(&Token::Iff) {
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while self.eat(&Token::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.eat(&Token::Not) {
            return Ok(Formula::neg(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, FormulaError> {
        let at = self.offset();
        let Some(token) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input, expected a formula"));
        };
        self.pos += 1;
        match token {
            Token::True => Ok(Formula::Top),
            Token::False => Ok(Formula::Bottom),
            Token::Ident(name) => {
                debug_assert!(!is_keyword(&name));
                if self.table.position(&name).is_none() {
                    return Err(FormulaError::UnknownAtom(name));
                }
                Ok(Formula::Atom(name))
            }
            Token::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Token::RParen) {
                    let found = self.peek().map_or("end of input".to_string(), Token::describe);
                    return Err(syntax(self.offset(), format!("expected `)`, found {found}")));
                }
                Ok(inner)
            }
            other => Err(syntax(at, format!("expected a formula, found {}", other.describe()))),
        }
    }
}

/// Parses `text` into a formula whose atoms all belong to `table`.
pub fn parse_formula(text: &str, table: &SymbolTable) -> Result<Formula, FormulaError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty formula"));
    }
    let mut parser = Parser { tokens, pos: 0, end: text.len(), table };
    let formula = parser.iff()?;
    if let Some(token) = parser.peek() {
        return Err(syntax(parser.offset(), format!("unexpected {}", token.describe())));
    }
    Ok(formula)
}
