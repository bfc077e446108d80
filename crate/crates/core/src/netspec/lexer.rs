use super::ast::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Equals,
    Star,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::LBrace => "{".into(),
            Tok::RBrace => "}".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Colon => ":".into(),
            Tok::Comma => ",".into(),
            Tok::Equals => "=".into(),
            Tok::Star => "*".into(),
            Tok::Arrow => "->".into(),
            Tok::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
pub struct LexError {
    pub pos: Pos,
    pub text: String,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '~'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '~' || c == '\''
}

pub fn tokenize(source: &str) -> (Vec<Token>, Vec<LexError>) {
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    for (line_no, line) in source.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos::new(line_no + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let single = match c {
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ':' => Some(Tok::Colon),
                ',' => Some(Tok::Comma),
                '=' => Some(Tok::Equals),
                '*' => Some(Tok::Star),
                _ => None,
            };
            if let Some(tok) = single {
                tokens.push(Token { tok, pos });
                i += 1;
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                tokens.push(Token { tok: Tok::Arrow, pos });
                i += 2;
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    pos,
                });
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Number(chars[start..i].iter().collect()),
                    pos,
                });
            } else {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() {
                    i += 1;
                }
                errors.push(LexError {
                    pos,
                    text: chars[start..i].iter().collect(),
                });
            }
        }
    }
    let end = Pos::new(source.lines().count().max(1), 1);
    tokens.push(Token { tok: Tok::Eof, pos: end });
    (tokens, errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let (toks, errs) = tokenize("state prior : disease = { d: 1/100, ~d: 0.99 } # note\nchannel s : a -> b");
        assert!(errs.is_empty());
        let kinds: Vec<Tok> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[0], Tok::Ident("state".into()));
        assert_eq!(kinds[8], Tok::Number("1/100".into()));
        assert_eq!(kinds[10], Tok::Ident("~d".into()));
        assert!(kinds.contains(&Tok::Arrow));
        let arrow = toks.iter().find(|t| t.tok == Tok::Arrow).unwrap();
        assert_eq!((arrow.pos.line, arrow.pos.column), (2, 15));
    }

    #[test]
    fn stray_characters() {
        let (_, errs) = tokenize("space x = { a, @b }");
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].text, "@b");
        assert_eq!(errs[0].pos.column, 16);
    }
}
