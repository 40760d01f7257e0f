//! Circuit representation and the OpenQASM 2.0 subset reader.
//!
//! Only gate structure survives parsing: barriers and classical registers are
//! dropped, parameters are kept as raw text so a circuit can be written back
//! out unchanged.

use std::fmt;

use crate::error::ParseError;

/// Dense logical qubit index, `0..num_qubits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

impl QubitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    OneQubit,
    TwoQubit,
    Measure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub name: String,
    /// Raw parameter text between the parentheses, if any.
    pub params: Option<String>,
    pub operands: Vec<QubitId>,
    pub kind: GateKind,
}

impl Gate {
    pub fn one(name: &str, q: usize) -> Self {
        Self { name: name.to_string(), params: None, operands: vec![QubitId(q)], kind: GateKind::OneQubit }
    }

    pub fn two(name: &str, a: usize, b: usize) -> Self {
        assert_ne!(a, b, "two-qubit gate operands must differ");
        Self {
            name: name.to_string(),
            params: None,
            operands: vec![QubitId(a), QubitId(b)],
            kind: GateKind::TwoQubit,
        }
    }

    pub fn measure(q: usize) -> Self {
        Self { name: "measure".to_string(), params: None, operands: vec![QubitId(q)], kind: GateKind::Measure }
    }

    /// Operand pair of a two-qubit gate.
    pub fn pair(&self) -> Option<(QubitId, QubitId)> {
        match self.kind {
            GateKind::TwoQubit => Some((self.operands[0], self.operands[1])),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub name: String,
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, num_qubits: usize) -> Self {
        Self { name: name.into(), num_qubits, gates: Vec::new() }
    }

    /// Appends a gate, checking operand bounds.
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        for q in &gate.operands {
            assert!(q.0 < self.num_qubits, "operand {q} out of range for {} qubits", self.num_qubits);
        }
        self.gates.push(gate);
        self
    }

    pub fn cx(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(Gate::two("cx", control, target))
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.push(Gate::one("h", q))
    }

    pub fn two_qubit_gates(&self) -> impl Iterator<Item = (QubitId, QubitId)> + '_ {
        self.gates.iter().filter_map(Gate::pair)
    }

    /// Serializes back into the supported OpenQASM 2.0 subset.
    pub fn to_qasm(&self) -> String {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        out.push_str(&format!("qreg q[{}];\n", self.num_qubits));
        let measured = self.gates.iter().any(|g| g.kind == GateKind::Measure);
        if measured {
            out.push_str(&format!("creg c[{}];\n", self.num_qubits));
        }
        for g in &self.gates {
            match g.kind {
                GateKind::Measure => {
                    let q = g.operands[0].0;
                    out.push_str(&format!("measure q[{q}] -> c[{q}];\n"));
                }
                _ => {
                    out.push_str(&g.name);
                    if let Some(p) = &g.params {
                        out.push_str(&format!("({p})"));
                    }
                    let ops: Vec<String> = g.operands.iter().map(|q| format!("q[{}]", q.0)).collect();
                    out.push(' ');
                    out.push_str(&ops.join(","));
                    out.push_str(";\n");
                }
            }
        }
        out
    }
}

/// Number of two-qubit gate instances in `c`.
pub fn two_qubit_gate_count(c: &Circuit) -> usize {
    c.gates.iter().filter(|g| g.kind == GateKind::TwoQubit).count()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Arrow,
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                    if chars[i] == '\n' {
                        line += 1;
                    }
                    i += 1;
                }
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token { tok: Tok::Arrow, line });
                i += 2;
            }
            '"' => {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    if chars[i] == '\n' {
                        return Err(ParseError::Syntax { line, msg: "unterminated string".into() });
                    }
                    i += 1;
                }
                if i >= chars.len() {
                    return Err(ParseError::Syntax { line, msg: "unterminated string".into() });
                }
                out.push(Token { tok: Tok::Str(chars[start..i].iter().collect()), line });
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line });
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // exponent
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Token { tok: Tok::Number(chars[start..i].iter().collect()), line });
            }
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | ';' | '+' | '-' | '*' | '/' | '^' => {
                out.push(Token { tok: Tok::Sym(c), line });
                i += 1;
            }
            other => {
                return Err(ParseError::Syntax { line, msg: format!("unexpected character '{other}'") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    last_line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn line(&self) -> usize {
        self.peek().map_or(self.last_line, |t| t.line)
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or(ParseError::Syntax { line: self.last_line, msg: "unexpected end of input".into() })?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Sym(s) if s == c => Ok(()),
            other => Err(ParseError::Syntax { line: t.line, msg: format!("expected '{c}', found {other:?}") }),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line)),
            other => Err(ParseError::Syntax { line: t.line, msg: format!("expected identifier, found {other:?}") }),
        }
    }

    fn expect_uint(&mut self) -> Result<usize, ParseError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Number(s) => s
                .parse::<usize>()
                .map_err(|_| ParseError::Syntax { line: t.line, msg: format!("expected integer, found {s}") }),
            other => Err(ParseError::Syntax { line: t.line, msg: format!("expected integer, found {other:?}") }),
        }
    }

    fn skip_past(&mut self, c: char) -> Result<(), ParseError> {
        loop {
            if let Tok::Sym(s) = self.next()?.tok {
                if s == c {
                    return Ok(());
                }
            }
        }
    }

    /// `name[index]`
    fn indexed(&mut self) -> Result<(String, usize, usize), ParseError> {
        let (name, line) = self.expect_ident()?;
        match self.peek() {
            Some(Token { tok: Tok::Sym('['), .. }) => {}
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    msg: format!("register broadcast on '{name}' is not supported; index each qubit"),
                })
            }
        }
        self.expect_sym('[')?;
        let idx = self.expect_uint()?;
        self.expect_sym(']')?;
        Ok((name, idx, line))
    }

    /// Raw parameter text, parentheses already consumed up to the opening one.
    fn raw_params(&mut self) -> Result<String, ParseError> {
        let mut depth = 1usize;
        let mut text = String::new();
        loop {
            let t = self.next()?;
            match t.tok {
                Tok::Sym('(') => {
                    depth += 1;
                    text.push('(');
                }
                Tok::Sym(')') => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(text);
                    }
                    text.push(')');
                }
                Tok::Sym(';') => {
                    return Err(ParseError::Syntax { line: t.line, msg: "unbalanced parentheses".into() });
                }
                Tok::Sym(c) => text.push(c),
                Tok::Ident(s) | Tok::Number(s) => text.push_str(&s),
                Tok::Str(_) | Tok::Arrow => {
                    return Err(ParseError::Syntax { line: t.line, msg: "invalid parameter expression".into() })
                }
            }
        }
    }
}

struct Register {
    name: String,
    size: usize,
}

impl Register {
    fn resolve(&self, name: &str, idx: usize, line: usize) -> Result<QubitId, ParseError> {
        if name != self.name {
            return Err(ParseError::Syntax { line, msg: format!("unknown quantum register '{name}'") });
        }
        if idx >= self.size {
            return Err(ParseError::IndexOutOfRange { line, index: idx, size: self.size });
        }
        Ok(QubitId(idx))
    }
}

/// Parses the supported OpenQASM 2.0 subset into a [`Circuit`].
pub fn parse_qasm(text: &str) -> Result<Circuit, ParseError> {
    parse_qasm_named(text, "circuit")
}

pub fn parse_qasm_named(text: &str, name: &str) -> Result<Circuit, ParseError> {
    let toks = lex(text)?;
    let last_line = toks.last().map_or(1, |t| t.line);
    let mut p = Parser { toks, pos: 0, last_line };
    let mut qreg: Option<Register> = None;
    let mut gates = Vec::new();

    while p.peek().is_some() {
        let (word, line) = p.expect_ident()?;
        match word.as_str() {
            "OPENQASM" => {
                p.skip_past(';')?;
            }
            "include" => {
                match p.next()?.tok {
                    Tok::Str(_) => {}
                    _ => return Err(ParseError::Syntax { line, msg: "include expects a file name".into() }),
                }
                p.expect_sym(';')?;
            }
            "qreg" => {
                let (name, _) = p.expect_ident()?;
                p.expect_sym('[')?;
                let size = p.expect_uint()?;
                p.expect_sym(']')?;
                p.expect_sym(';')?;
                if qreg.is_some() {
                    return Err(ParseError::MultipleRegisters { line });
                }
                qreg = Some(Register { name, size });
            }
            "creg" => {
                p.expect_ident()?;
                p.expect_sym('[')?;
                p.expect_uint()?;
                p.expect_sym(']')?;
                p.expect_sym(';')?;
            }
            "barrier" | "opaque" => p.skip_past(';')?,
            "gate" => p.skip_past('}')?,
            "if" => {
                return Err(ParseError::Syntax { line, msg: "classically controlled operations are not supported".into() })
            }
            "measure" => {
                let reg = qreg.as_ref().ok_or(ParseError::Syntax { line, msg: "measure before qreg".into() })?;
                let (name, idx, l) = p.indexed()?;
                let q = reg.resolve(&name, idx, l)?;
                match p.next()? {
                    Token { tok: Tok::Arrow, .. } => {}
                    t => return Err(ParseError::Syntax { line: t.line, msg: "expected '->' in measure".into() }),
                }
                p.skip_past(';')?;
                gates.push(Gate { name: "measure".into(), params: None, operands: vec![q], kind: GateKind::Measure });
            }
            _ => {
                let reg = qreg
                    .as_ref()
                    .ok_or(ParseError::Syntax { line, msg: format!("gate '{word}' applied before qreg") })?;
                let params = match p.peek() {
                    Some(Token { tok: Tok::Sym('('), .. }) => {
                        p.next()?;
                        Some(p.raw_params()?)
                    }
                    _ => None,
                };
                let mut operands = Vec::new();
                loop {
                    let (name, idx, l) = p.indexed()?;
                    operands.push(reg.resolve(&name, idx, l)?);
                    let t = p.next()?;
                    match t.tok {
                        Tok::Sym(',') => continue,
                        Tok::Sym(';') => break,
                        other => {
                            return Err(ParseError::Syntax {
                                line: t.line,
                                msg: format!("expected ',' or ';', found {other:?}"),
                            })
                        }
                    }
                }
                let kind = match operands.len() {
                    1 => GateKind::OneQubit,
                    2 => {
                        if operands[0] == operands[1] {
                            return Err(ParseError::Syntax {
                                line,
                                msg: format!("gate '{word}' repeats operand {}", operands[0]),
                            });
                        }
                        GateKind::TwoQubit
                    }
                    n => return Err(ParseError::UnsupportedGate { line, name: word, arity: n }),
                };
                gates.push(Gate { name: word, params, operands, kind });
            }
        }
    }

    let line = p.line();
    let reg = qreg.ok_or(ParseError::Syntax { line, msg: "no qreg declared".into() })?;
    Ok(Circuit { name: name.to_string(), num_qubits: reg.size, gates })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cx_program() {
        let c = parse_qasm("qreg q[2]; cx q[0],q[1];").unwrap();
        assert_eq!(c.num_qubits, 2);
        assert_eq!(c.gates, vec![Gate::two("cx", 0, 1)]);
    }

    #[test]
    fn measure_without_creg() {
        let c = parse_qasm("qreg q[1]; h q[0]; measure q[0] -> c[0];").unwrap();
        assert_eq!(c.gates, vec![Gate::one("h", 0), Gate::measure(0)]);
    }

    #[test]
    fn toffoli_is_rejected() {
        let err = parse_qasm("qreg q[3]; ccx q[0],q[1],q[2];").unwrap_err();
        assert!(matches!(err, ParseError::UnsupportedGate { arity: 3, .. }), "{err:?}");
    }

    #[test]
    fn out_of_range_operand() {
        let err = parse_qasm("qreg q[2];\nh q[0];\ncx q[0],q[2];").unwrap_err();
        assert_eq!(err, ParseError::IndexOutOfRange { line: 3, index: 2, size: 2 });
    }

    #[test]
    fn second_qreg_rejected() {
        let err = parse_qasm("qreg a[2];\nqreg b[2];").unwrap_err();
        assert_eq!(err, ParseError::MultipleRegisters { line: 2 });
    }

    #[test]
    fn syntax_error_reports_line() {
        let err = parse_qasm("qreg q[2];\n\ncx q[0] q[1];").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_barrier_params_and_comments() {
        let src = r#"OPENQASM 2.0;
include "qelib1.inc";
// a comment
qreg q[3];
creg c[3];
gate mygate a,b { cx a,b; }
u3(pi/2, 0, -pi) q[0];
barrier q[0],q[1],q[2];
rz(0.25) q[2];
cx q[2],q[1];
measure q[2] -> c[2];
"#;
        let c = parse_qasm(src).unwrap();
        assert_eq!(c.num_qubits, 3);
        assert_eq!(c.gates.len(), 4);
        assert_eq!(c.gates[0].params.as_deref(), Some("pi/2,0,-pi"));
        assert_eq!(c.gates[2].pair(), Some((QubitId(2), QubitId(1))));
        assert_eq!(two_qubit_gate_count(&c), 1);
    }

    #[test]
    fn broadcast_is_syntax_error() {
        assert!(matches!(parse_qasm("qreg q[2]; h q;"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn counts() {
        assert_eq!(two_qubit_gate_count(&Circuit::new("e", 3)), 0);
        let mut c = Circuit::new("x", 4);
        for i in 0..5 {
            c.cx(i % 3, 3);
        }
        for i in 0..3 {
            c.h(i);
        }
        assert_eq!(two_qubit_gate_count(&c), 5);
    }

    #[test]
    fn round_trip() {
        let src = "qreg q[3]; h q[0]; rx(0.5) q[1]; cx q[0],q[2]; measure q[1] -> c[1];";
        let c = parse_qasm(src).unwrap();
        let again = parse_qasm(&c.to_qasm()).unwrap();
        assert_eq!(c, again);
    }
}
