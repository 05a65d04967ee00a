//! Line-oriented text form of a [`RecouplingGraph`].
//!
//! ```text
//! # two-electron direct Coulomb, one multipole term per lambda
//! name two_electron_direct
//! bra  [la'@r1 lb'@r2]l
//! ket  [la@r1 lb@r2]l
//! op   [lambda@r1 lambda@r2]0
//! sum  lambda
//! ipow la'+lb'-la-lb
//! hat  l -1
//! kernel lambda
//! box  la' lb' l ; la lb l ; lambda lambda 0
//! box  lambda lambda 0 ; lambda lambda 0 ; 0 0 0
//! end  lambda la' la
//! end  lambda lb' lb
//! ```

use super::graph::{CouplingTree, EndBox, Factor, GraphError, LinearExpr, Rank, RecouplingGraph, RecouplingStep, TensorLeaf};
use crate::exactnum::HalfInt;

fn rank(tok: &str, line: usize) -> Result<Rank, GraphError> {
    if tok.is_empty() {
        return Err(GraphError::Parse(line, "empty label".into()));
    }
    let first = tok.chars().next().unwrap();
    if first.is_ascii_digit() || first == '-' {
        return tok.parse::<HalfInt>().map(Rank::Lit).map_err(|e| GraphError::Parse(line, format!("bad literal {tok}: {e}")));
    }
    if tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_') {
        Ok(Rank::Sym(tok.to_string()))
    } else {
        Err(GraphError::Parse(line, format!("bad label {tok}")))
    }
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    prefix: String,
    next_id: usize,
}

impl TreeParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn token(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && !matches!(self.src[self.pos], b'[' | b']' | b' ' | b'\t') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn err(&self, msg: &str) -> GraphError {
        GraphError::Parse(self.line, format!("{msg} at column {}", self.pos + 1))
    }

    fn tree(&mut self) -> Result<CouplingTree, GraphError> {
        self.skip_ws();
        if self.pos < self.src.len() && self.src[self.pos] == b'[' {
            self.pos += 1;
            let left = self.tree()?;
            let right = self.tree()?;
            self.skip_ws();
            if self.pos >= self.src.len() || self.src[self.pos] != b']' {
                return Err(self.err("expected ]"));
            }
            self.pos += 1;
            let line = self.line;
            let tok = self.token().to_string();
            let r = rank(&tok, line)?;
            return Ok(CouplingTree::Node { left: Box::new(left), right: Box::new(right), rank: r });
        }
        let line = self.line;
        let tok = self.token().to_string();
        if tok.is_empty() {
            return Err(self.err("expected a leaf"));
        }
        let (r, particle) = match tok.split_once('@') {
            Some((r, p)) => (r, Some(p.to_string())),
            None => (tok.as_str(), None),
        };
        let id = format!("{}.{}", self.prefix, self.next_id);
        self.next_id += 1;
        Ok(CouplingTree::Leaf(TensorLeaf { id, rank: rank(r, line)?, particle }))
    }
}

fn parse_tree(text: &str, line: usize, prefix: &str) -> Result<CouplingTree, GraphError> {
    let mut p = TreeParser { src: text.as_bytes(), pos: 0, line, prefix: prefix.to_string(), next_id: 0 };
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing text after tree"));
    }
    Ok(t)
}

fn parse_expr(text: &str, line: usize) -> Result<LinearExpr, GraphError> {
    let mut terms = Vec::new();
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !terms.is_empty() {
            return Err(GraphError::Parse(line, format!("expected + or - in {text}")));
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let atom = &rest[..end];
        rest = &rest[end..];
        let digits = atom.chars().take_while(|c| c.is_ascii_digit()).count();
        let (coef, label) = if digits == atom.len() {
            (1, atom)
        } else {
            let c = if digits == 0 { 1 } else { atom[..digits].parse::<i32>().map_err(|e| GraphError::Parse(line, e.to_string()))? };
            (c, &atom[digits..])
        };
        terms.push((sign * coef, rank(label, line)?));
    }
    if terms.is_empty() {
        return Err(GraphError::Parse(line, "empty expression".into()));
    }
    Ok(LinearExpr { terms })
}

fn parse_box(text: &str, line: usize) -> Result<[Rank; 9], GraphError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != 3 {
        return Err(GraphError::Parse(line, "a box needs three rows separated by ;".into()));
    }
    let mut out = Vec::with_capacity(9);
    for r in rows {
        let toks: Vec<&str> = r.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(GraphError::Parse(line, "each box row needs three entries".into()));
        }
        for t in toks {
            out.push(rank(t, line)?);
        }
    }
    Ok(out.try_into().expect("nine entries"))
}

/// Parses the text form; `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<RecouplingGraph, GraphError> {
    let mut g = RecouplingGraph {
        name: String::new(),
        bra: None,
        ket: None,
        operator: None,
        summed: Vec::new(),
        factors: Vec::new(),
        steps: Vec::new(),
        endboxes: Vec::new(),
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "name" => g.name = rest.to_string(),
            "bra" => g.bra = Some(parse_tree(rest, line, "bra")?),
            "ket" => g.ket = Some(parse_tree(rest, line, "ket")?),
            "op" => g.operator = Some(parse_tree(rest, line, "op")?),
            "sum" => {
                for w in words {
                    match rank(w, line)? {
                        Rank::Sym(s) => g.summed.push(s),
                        Rank::Lit(_) => return Err(GraphError::Parse(line, "cannot sum over a literal".into())),
                    }
                }
            }
            "ipow" => g.factors.push(Factor::IPower(parse_expr(rest, line)?)),
            "sign" => g.factors.push(Factor::Sign(parse_expr(rest, line)?)),
            "hat" => {
                let (label, power) = match words.as_slice() {
                    [l] => (*l, 1),
                    [l, p] => (*l, p.parse::<i32>().map_err(|e| GraphError::Parse(line, e.to_string()))?),
                    _ => return Err(GraphError::Parse(line, "hat takes a label and an optional power".into())),
                };
                g.factors.push(Factor::Hat(rank(label, line)?, power));
            }
            "delta" => match words.as_slice() {
                [a, b] => g.factors.push(Factor::Delta(rank(a, line)?, rank(b, line)?)),
                _ => return Err(GraphError::Parse(line, "delta takes two labels".into())),
            },
            "const" => {
                let (p, q) = match rest.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (rest, "1"),
                };
                let p = p.parse::<i64>().map_err(|e| GraphError::Parse(line, e.to_string()))?;
                let q = q.parse::<i64>().map_err(|e| GraphError::Parse(line, e.to_string()))?;
                if q == 0 {
                    return Err(GraphError::Parse(line, "zero denominator".into()));
                }
                g.factors.push(Factor::Rational(p, q));
            }
            "kernel" => match words.as_slice() {
                [l] => g.factors.push(Factor::Multipole(rank(l, line)?)),
                _ => return Err(GraphError::Parse(line, "kernel takes one label".into())),
            },
            "box" => g.steps.push(RecouplingStep { slots: parse_box(rest, line)? }),
            "end" => match words.as_slice() {
                [l, a, b] => g.endboxes.push(EndBox { lambda: rank(l, line)?, bra: rank(a, line)?, ket: rank(b, line)? }),
                _ => return Err(GraphError::Parse(line, "end takes three labels".into())),
            },
            other => return Err(GraphError::Parse(line, format!("unknown directive {other}"))),
        }
    }
    g.check_invariance()?;
    Ok(g)
}

/// Writes the text form back out.
pub fn write_graph(g: &RecouplingGraph) -> String {
    let mut out = String::new();
    if !g.name.is_empty() {
        out.push_str(&format!("name {}\n", g.name));
    }
    for (key, t) in [("bra", &g.bra), ("ket", &g.ket), ("op", &g.operator)] {
        if let Some(t) = t {
            out.push_str(&format!("{key} {t}\n"));
        }
    }
    if !g.summed.is_empty() {
        out.push_str(&format!("sum {}\n", g.summed.join(" ")));
    }
    for f in &g.factors {
        let line = match f {
            Factor::IPower(e) => format!("ipow {e}"),
            Factor::Sign(e) => format!("sign {e}"),
            Factor::Hat(r, 1) => format!("hat {r}"),
            Factor::Hat(r, p) => format!("hat {r} {p}"),
            Factor::Delta(a, b) => format!("delta {a} {b}"),
            Factor::Rational(p, q) => format!("const {p}/{q}"),
            Factor::Multipole(r) => format!("kernel {r}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    for s in &g.steps {
        let t: Vec<String> = s.slots.iter().map(ToString::to_string).collect();
        out.push_str(&format!("box {} {} {} ; {} {} {} ; {} {} {}\n", t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7], t[8]));
    }
    for e in &g.endboxes {
        out.push_str(&format!("end {} {} {}\n", e.lambda, e.bra, e.ket));
    }
    out
}
