//! OpenQASM 2.0 subset reader and writer.
//!
//! Accepted statements: the version header, `include`, `qreg`, `creg`,
//! applications of known basis gates (with optional parameter lists and
//! register broadcasting), `barrier` and `measure`. Input barriers are
//! dropped. Gate parameters are kept as opaque text.

use std::fmt::Write as _;

use crate::circuit::{Circuit, GateKind, Measurement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    Arrow,
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
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
                if i >= chars.len() {
                    return Err(Error::parse(line, "unterminated block comment"));
                }
                i += 2;
            }
            '"' => {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    if chars[i] == '\n' {
                        return Err(Error::parse(line, "unterminated string"));
                    }
                    i += 1;
                }
                if i >= chars.len() {
                    return Err(Error::parse(line, "unterminated string"));
                }
                out.push(Token {
                    tok: Tok::Str(chars[start..i].iter().collect()),
                    line,
                });
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token { tok: Tok::Arrow, line });
                i += 2;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                });
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                out.push(Token {
                    tok: Tok::Number(chars[start..i].iter().collect()),
                    line,
                });
            }
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | ';' | '+' | '-' | '*' | '/' | '^' => {
                out.push(Token { tok: Tok::Sym(c), line });
                i += 1;
            }
            other => return Err(Error::parse(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Register {
    name: String,
    offset: usize,
    size: usize,
}

/// A gate or measurement argument before broadcasting.
enum Arg {
    Bit(usize),
    Whole { offset: usize, size: usize },
}

impl Arg {
    fn width(&self) -> Option<usize> {
        match self {
            Arg::Bit(_) => None,
            Arg::Whole { size, .. } => Some(*size),
        }
    }

    fn at(&self, k: usize) -> usize {
        match self {
            Arg::Bit(b) => *b,
            Arg::Whole { offset, .. } => offset + k,
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    qregs: Vec<Register>,
    cregs: Vec<Register>,
    circuit: Circuit,
}

impl Parser {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Result<Tok> {
        let line = self.line();
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| Error::parse(line, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t.tok.clone())
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let line = self.line();
        match self.next()? {
            Tok::Sym(s) if s == c => Ok(()),
            other => Err(Error::parse(line, format!("expected `{c}`, found {other:?}"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let line = self.line();
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => Err(Error::parse(line, format!("expected identifier, found {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let line = self.line();
        match self.next()? {
            Tok::Number(n) => n
                .parse()
                .map_err(|_| Error::parse(line, format!("expected integer, found `{n}`"))),
            other => Err(Error::parse(line, format!("expected integer, found {other:?}"))),
        }
    }

    fn parse(mut self) -> Result<Circuit> {
        if let Some(Tok::Ident(kw)) = self.peek() {
            if kw == "OPENQASM" {
                self.pos += 1;
                let line = self.line();
                let version = match self.next()? {
                    Tok::Number(v) => v,
                    other => return Err(Error::parse(line, format!("bad version {other:?}"))),
                };
                if !version.starts_with('2') {
                    return Err(Error::parse(
                        line,
                        format!("OpenQASM {version} is not supported; only OpenQASM 2.0 is accepted"),
                    ));
                }
                self.expect_sym(';')?;
            }
        }
        while self.pos < self.toks.len() {
            self.statement()?;
        }
        self.circuit.num_qubits = self.qregs.iter().map(|r| r.size).sum();
        self.circuit.classical_bits = self.cregs.iter().map(|r| r.size).sum();
        Ok(self.circuit)
    }

    fn statement(&mut self) -> Result<()> {
        let line = self.line();
        let word = match self.next()? {
            Tok::Ident(w) => w,
            other => return Err(Error::parse(line, format!("expected statement, found {other:?}"))),
        };
        match word.as_str() {
            "OPENQASM" => Err(Error::parse(line, "version header must come first")),
            "include" => {
                match self.next()? {
                    Tok::Str(_) => {}
                    other => return Err(Error::parse(line, format!("expected file name, found {other:?}"))),
                }
                self.expect_sym(';')
            }
            "qreg" | "creg" => {
                let name = self.ident()?;
                self.expect_sym('[')?;
                let size = self.integer()?;
                self.expect_sym(']')?;
                self.expect_sym(';')?;
                let regs = if word == "qreg" { &mut self.qregs } else { &mut self.cregs };
                if regs.iter().any(|r| r.name == name) {
                    return Err(Error::parse(line, format!("register `{name}` declared twice")));
                }
                let offset = regs.iter().map(|r| r.size).sum();
                regs.push(Register { name, offset, size });
                Ok(())
            }
            "barrier" => {
                // barriers are recomputed by the scheduler
                self.arg_list(true)?;
                Ok(())
            }
            "measure" => {
                let q = self.arg(true)?;
                let line = self.line();
                match self.next()? {
                    Tok::Arrow => {}
                    other => return Err(Error::parse(line, format!("expected `->`, found {other:?}"))),
                }
                let c = self.arg(false)?;
                self.expect_sym(';')?;
                let width = match (q.width(), c.width()) {
                    (None, None) => 1,
                    (Some(a), Some(b)) if a == b => a,
                    _ => return Err(Error::parse(line, "measure register sizes disagree")),
                };
                for k in 0..width {
                    self.circuit.measurements.push(Measurement {
                        qubit: q.at(k),
                        clbit: c.at(k),
                    });
                }
                Ok(())
            }
            "gate" | "opaque" | "reset" | "if" => Err(Error::parse(
                line,
                format!("`{word}` statements are not supported"),
            )),
            name => self.gate(name.to_string(), line),
        }
    }

    fn gate(&mut self, name: String, line: usize) -> Result<()> {
        let kind = GateKind::lookup(&name).ok_or(Error::UnknownGate {
            name: name.clone(),
            line,
        })?;
        let mut params = Vec::new();
        if self.peek() == Some(&Tok::Sym('(')) {
            self.pos += 1;
            params = self.param_list()?;
        }
        if params.len() != kind.num_params() {
            return Err(Error::parse(
                line,
                format!("`{name}` takes {} parameters, got {}", kind.num_params(), params.len()),
            ));
        }
        let args = self.arg_list(true)?;
        if args.len() != kind.arity() {
            return Err(Error::parse(
                line,
                format!("`{name}` acts on {} qubits, got {}", kind.arity(), args.len()),
            ));
        }
        let widths: Vec<usize> = args.iter().filter_map(Arg::width).collect();
        let width = match widths.first() {
            None => 1,
            Some(&w) if widths.iter().all(|&x| x == w) => w,
            Some(_) => return Err(Error::parse(line, "broadcast register sizes disagree")),
        };
        for k in 0..width {
            let qubits: Vec<usize> = args.iter().map(|a| a.at(k)).collect();
            if qubits.len() == 2 && qubits[0] == qubits[1] {
                return Err(Error::parse(line, format!("`{name}` repeats qubit {}", qubits[0])));
            }
            self.circuit.push(kind, qubits, params.clone());
        }
        Ok(())
    }

    fn param_list(&mut self) -> Result<Vec<String>> {
        let line = self.line();
        let mut params = Vec::new();
        let mut current = String::new();
        let mut depth = 0usize;
        loop {
            let tok = self.next()?;
            match tok {
                Tok::Sym(')') if depth == 0 => {
                    if !current.is_empty() {
                        params.push(std::mem::take(&mut current));
                    } else if !params.is_empty() {
                        return Err(Error::parse(line, "empty parameter"));
                    }
                    return Ok(params);
                }
                Tok::Sym(',') if depth == 0 => {
                    if current.is_empty() {
                        return Err(Error::parse(line, "empty parameter"));
                    }
                    params.push(std::mem::take(&mut current));
                }
                Tok::Sym(';') => return Err(Error::parse(line, "unclosed parameter list")),
                Tok::Sym(c) => {
                    if c == '(' {
                        depth += 1;
                    } else if c == ')' {
                        depth -= 1;
                    }
                    current.push(c);
                }
                Tok::Ident(s) | Tok::Number(s) => current.push_str(&s),
                Tok::Arrow => current.push_str("->"),
                Tok::Str(_) => return Err(Error::parse(line, "string in parameter list")),
            }
        }
    }

    fn arg_list(&mut self, quantum: bool) -> Result<Vec<Arg>> {
        let mut args = vec![self.arg(quantum)?];
        loop {
            let line = self.line();
            match self.next()? {
                Tok::Sym(',') => args.push(self.arg(quantum)?),
                Tok::Sym(';') => return Ok(args),
                other => return Err(Error::parse(line, format!("expected `,` or `;`, found {other:?}"))),
            }
        }
    }

    fn arg(&mut self, quantum: bool) -> Result<Arg> {
        let line = self.line();
        let name = self.ident()?;
        let regs = if quantum { &self.qregs } else { &self.cregs };
        let (offset, size) = regs
            .iter()
            .find(|r| r.name == name)
            .map(|r| (r.offset, r.size))
            .ok_or_else(|| Error::parse(line, format!("undeclared register `{name}`")))?;
        if self.peek() == Some(&Tok::Sym('[')) {
            self.pos += 1;
            let index = self.integer()?;
            self.expect_sym(']')?;
            if index >= size {
                return Err(Error::BadIndex {
                    line,
                    register: name,
                    index,
                    size,
                });
            }
            Ok(Arg::Bit(offset + index))
        } else {
            Ok(Arg::Whole { offset, size })
        }
    }
}

/// Parses an OpenQASM 2.0 program into a [`Circuit`].
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let parser = Parser {
        toks: lex(text)?,
        pos: 0,
        qregs: Vec::new(),
        cregs: Vec::new(),
        circuit: Circuit::default(),
    };
    parser.parse()
}

pub(crate) fn write_header(out: &mut String, num_qubits: usize, classical_bits: usize) {
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    if num_qubits > 0 {
        let _ = writeln!(out, "qreg q[{num_qubits}];");
    }
    if classical_bits > 0 {
        let _ = writeln!(out, "creg c[{classical_bits}];");
    }
}

pub(crate) fn write_gate(out: &mut String, kind: GateKind, params: &[String], qubits: &[usize]) {
    out.push_str(kind.name());
    if !params.is_empty() {
        let _ = write!(out, "({})", params.join(","));
    }
    out.push(' ');
    let args: Vec<String> = qubits.iter().map(|q| format!("q[{q}]")).collect();
    out.push_str(&args.join(","));
    out.push_str(";\n");
}

pub(crate) fn write_measurements(out: &mut String, measurements: &[Measurement]) {
    for m in measurements {
        let _ = writeln!(out, "measure q[{}] -> c[{}];", m.qubit, m.clbit);
    }
}

/// Writes a circuit in program order using a single `q` register.
pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    write_header(&mut out, c.num_qubits, c.classical_bits);
    for g in &c.gates {
        write_gate(&mut out, g.kind, &g.params, &g.qubits);
    }
    write_measurements(&mut out, &c.measurements);
    out
}
