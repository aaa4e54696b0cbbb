//! The group-construction mini-language.
//!
//! Grammar:
//!
//! ```text
//! spec    := term ("x" term)*                  (left-associated direct product)
//! term    := "C(" int ")"
//!          | "perm(" int ";" perms ")"
//!          | "sd(" spec "," spec "," "[" actions "]" ")"
//!          | "fp(" names ";" words ")"
//!          | "quot(" spec ";" words ")"
//!          | "(" spec ")"
//! perms   := perm ("," perm)*                  (one generator per entry)
//! perm    := cycle+                            (juxtaposed disjoint cycles)
//! cycle   := "(" int* ")"                      (1-based points; "()" is the identity)
//! actions := group (";" group)*                (one group per actor generator)
//! group   := int | assign ("," assign)*        (an int k maps every base generator to its k-th power)
//! assign  := name "->" word
//! word    := factor ("*" factor)*
//! factor  := atom ("^" int)?
//! atom    := name | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! Commutators `[u,v]` expand to `u^-1*v^-1*u*v` at parse time. Relators are
//! the only supported relation form; move relations to one side first.

use crate::error::{EnumError, GroupError};
use crate::fp::{realize, todd_coxeter, Presentation};
use crate::group::{GroupTable, QuotientMap};
use crate::perm::{closure_from_permutations, permutation_from_cycles};
use crate::word::{evaluate_word, Word};
use std::collections::HashMap;
use thiserror::Error;

/// Construction AST.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        base: Box<GroupSpec>,
        actor: Box<GroupSpec>,
        action: ActionSpec,
    },
    /// One generator per entry, each a product of disjoint cycles over
    /// 1-based points.
    Perm {
        degree: usize,
        gens: Vec<Vec<Vec<usize>>>,
    },
    Fp {
        gens: Vec<String>,
        relators: Vec<Word>,
    },
    Quotient {
        inner: Box<GroupSpec>,
        seeds: Vec<Word>,
    },
}

/// How the actor of a semidirect product acts on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    /// Every base generator to its k-th power, for every actor generator.
    Power(i64),
    /// Per actor generator, explicit base-generator image words; base
    /// generators without an assignment are fixed.
    Words(Vec<Vec<(String, Word)>>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("arity error: {0}")]
    Arity(String),
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("no semidirect product exists for the requested power action")]
    SemidirectNonexistent,
    #[error("action assigns {got} actor generator group(s), actor has {expected}")]
    ActionArity { expected: usize, got: usize },
    #[error("word references unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Limits applied during construction.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub max_order: usize,
    pub max_cosets: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_order: crate::group::DEFAULT_ORDER_CAP,
            max_cosets: crate::fp::DEFAULT_MAX_COSETS,
        }
    }
}

// ---------------------------------------------------------------- lexer --

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Star,
    Caret,
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                bump(&mut chars);
            }
            '(' | ')' | '[' | ']' | ';' | ',' | '*' | '^' => {
                bump(&mut chars);
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '*' => Tok::Star,
                    _ => Tok::Caret,
                };
                out.push(Token { tok, line: l, col: co });
            }
            '-' => {
                bump(&mut chars);
                match chars.peek() {
                    Some('>') => {
                        bump(&mut chars);
                        out.push(Token {
                            tok: Tok::Arrow,
                            line: l,
                            col: co,
                        });
                    }
                    Some(d) if d.is_ascii_digit() => {
                        let mut v: i64 = 0;
                        while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                            bump(&mut chars);
                            v = v
                                .checked_mul(10)
                                .and_then(|v| v.checked_add(d as i64 - '0' as i64))
                                .ok_or(DslError::Syntax {
                                    line: l,
                                    col: co,
                                    msg: "integer literal overflows".into(),
                                })?;
                        }
                        out.push(Token {
                            tok: Tok::Int(-v),
                            line: l,
                            col: co,
                        });
                    }
                    _ => {
                        return Err(DslError::Syntax {
                            line: l,
                            col: co,
                            msg: "expected `->` or a number after `-`".into(),
                        })
                    }
                }
            }
            d if d.is_ascii_digit() => {
                let mut v: i64 = 0;
                while let Some(d) = chars.peek().copied().filter(|d| d.is_ascii_digit()) {
                    bump(&mut chars);
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as i64 - '0' as i64))
                        .ok_or(DslError::Syntax {
                            line: l,
                            col: co,
                            msg: "integer literal overflows".into(),
                        })?;
                }
                out.push(Token {
                    tok: Tok::Int(v),
                    line: l,
                    col: co,
                });
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut s = String::new();
                while let Some(a) = chars
                    .peek()
                    .copied()
                    .filter(|a| a.is_ascii_alphanumeric() || *a == '_')
                {
                    bump(&mut chars);
                    s.push(a);
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line: l,
                    col: co,
                });
            }
            other => {
                return Err(DslError::Syntax {
                    line: l,
                    col: co,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

// --------------------------------------------------------------- parser --

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn err_here(&self, msg: impl Into<String>) -> DslError {
        let (line, col) = self
            .toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1));
        DslError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Result<Tok, DslError> {
        let t = self
            .toks
            .get(self.pos)
            .map(|t| t.tok.clone())
            .ok_or_else(|| self.err_here("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DslError> {
        let got = self.next()?;
        if got == tok {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err_here(format!("expected {tok:?}, found {got:?}")))
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        match self.next()? {
            Tok::Int(v) => Ok(v),
            got => {
                self.pos -= 1;
                Err(self.err_here(format!("expected integer, found {got:?}")))
            }
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            got => {
                self.pos -= 1;
                Err(self.err_here(format!("expected identifier, found {got:?}")))
            }
        }
    }

    fn spec(&mut self) -> Result<GroupSpec, DslError> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some(Tok::Ident(s)) if s == "x") {
            self.pos += 1;
            let rhs = self.term()?;
            acc = GroupSpec::Direct(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GroupSpec, DslError> {
        match self.next()? {
            Tok::LParen => {
                let inner = self.spec()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(head) => match head.as_str() {
                "C" => {
                    self.expect(Tok::LParen)?;
                    let n = self.int()?;
                    self.expect(Tok::RParen)?;
                    if n < 1 {
                        return Err(DslError::Arity(format!("C({n}) requires n >= 1")));
                    }
                    Ok(GroupSpec::Cyclic(n as u64))
                }
                "perm" => {
                    self.expect(Tok::LParen)?;
                    let degree = self.int()?;
                    if degree < 1 {
                        return Err(DslError::Arity(format!(
                            "perm degree {degree} must be >= 1"
                        )));
                    }
                    self.expect(Tok::Semi)?;
                    let mut gens = Vec::new();
                    loop {
                        gens.push(self.perm_generator()?);
                        match self.next()? {
                            Tok::Comma => continue,
                            Tok::RParen => break,
                            _ => {
                                self.pos -= 1;
                                return Err(self.err_here("expected `,` or `)` in perm spec"));
                            }
                        }
                    }
                    Ok(GroupSpec::Perm {
                        degree: degree as usize,
                        gens,
                    })
                }
                "sd" => {
                    self.expect(Tok::LParen)?;
                    let base = self.spec()?;
                    self.expect(Tok::Comma)?;
                    let actor = self.spec()?;
                    self.expect(Tok::Comma)?;
                    self.expect(Tok::LBracket)?;
                    let action = self.actions()?;
                    self.expect(Tok::RBracket)?;
                    self.expect(Tok::RParen)?;
                    Ok(GroupSpec::Semidirect {
                        base: Box::new(base),
                        actor: Box::new(actor),
                        action,
                    })
                }
                "fp" => {
                    self.expect(Tok::LParen)?;
                    let mut gens = vec![self.ident()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        gens.push(self.ident()?);
                    }
                    self.expect(Tok::Semi)?;
                    let mut relators = vec![self.word()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        relators.push(self.word()?);
                    }
                    self.expect(Tok::RParen)?;
                    for r in &relators {
                        for name in r.names() {
                            if !gens.iter().any(|g| g == name) {
                                return Err(DslError::UnknownGenerator(name.to_string()));
                            }
                        }
                    }
                    Ok(GroupSpec::Fp { gens, relators })
                }
                "quot" => {
                    self.expect(Tok::LParen)?;
                    let inner = self.spec()?;
                    self.expect(Tok::Semi)?;
                    let mut seeds = vec![self.word()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        seeds.push(self.word()?);
                    }
                    self.expect(Tok::RParen)?;
                    Ok(GroupSpec::Quotient {
                        inner: Box::new(inner),
                        seeds,
                    })
                }
                other => {
                    self.pos -= 1;
                    Err(self.err_here(format!("unknown constructor `{other}`")))
                }
            },
            got => {
                self.pos -= 1;
                Err(self.err_here(format!("expected a group term, found {got:?}")))
            }
        }
    }

    /// One permutation generator: juxtaposed cycles, `()` for the identity.
    fn perm_generator(&mut self) -> Result<Vec<Vec<usize>>, DslError> {
        let mut cycles = Vec::new();
        loop {
            self.expect(Tok::LParen)?;
            let mut cycle = Vec::new();
            while let Some(Tok::Int(_)) = self.peek() {
                let v = self.int()?;
                if v < 1 {
                    return Err(DslError::Arity(format!("cycle point {v} must be >= 1")));
                }
                cycle.push(v as usize);
            }
            self.expect(Tok::RParen)?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            if self.peek() != Some(&Tok::LParen) {
                return Ok(cycles);
            }
        }
    }

    fn actions(&mut self) -> Result<ActionSpec, DslError> {
        if let Some(Tok::Int(_)) = self.peek() {
            let k = self.int()?;
            return Ok(ActionSpec::Power(k));
        }
        let mut groups = Vec::new();
        loop {
            let mut group = Vec::new();
            loop {
                let name = self.ident()?;
                self.expect(Tok::Arrow)?;
                let w = self.word()?;
                group.push((name, w));
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            groups.push(group);
            if self.peek() == Some(&Tok::Semi) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(ActionSpec::Words(groups))
    }

    fn word(&mut self) -> Result<Word, DslError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.concat(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word, DslError> {
        let atom = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.int()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, DslError> {
        match self.next()? {
            Tok::Ident(name) => Ok(Word::gen(&name, 1)),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            Tok::LBracket => {
                let u = self.word()?;
                self.expect(Tok::Comma)?;
                let v = self.word()?;
                self.expect(Tok::RBracket)?;
                Ok(Word::commutator(&u, &v))
            }
            got => {
                self.pos -= 1;
                Err(self.err_here(format!("expected a word, found {got:?}")))
            }
        }
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, DslError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let spec = p.spec()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("trailing input after group spec"));
    }
    Ok(spec)
}

/// Canonical text form; `parse_spec(render_spec(s))` structurally equals `s`.
pub fn render_spec(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Cyclic(n) => format!("C({n})"),
        GroupSpec::Direct(l, r) => {
            let left = render_spec(l);
            let right = if matches!(**r, GroupSpec::Direct(..)) {
                format!("({})", render_spec(r))
            } else {
                render_spec(r)
            };
            format!("{left} x {right}")
        }
        GroupSpec::Semidirect { base, actor, action } => {
            let action = match action {
                ActionSpec::Power(k) => format!("{k}"),
                ActionSpec::Words(groups) => groups
                    .iter()
                    .map(|g| {
                        g.iter()
                            .map(|(n, w)| format!("{n} -> {w}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    })
                    .collect::<Vec<_>>()
                    .join("; "),
            };
            format!("sd({}, {}, [{}])", render_spec(base), render_spec(actor), action)
        }
        GroupSpec::Perm { degree, gens } => {
            let gens = gens
                .iter()
                .map(|cycles| {
                    if cycles.is_empty() {
                        "()".to_string()
                    } else {
                        cycles
                            .iter()
                            .map(|c| {
                                format!(
                                    "({})",
                                    c.iter()
                                        .map(|p| p.to_string())
                                        .collect::<Vec<_>>()
                                        .join(" ")
                                )
                            })
                            .collect::<String>()
                    }
                })
                .collect::<Vec<_>>()
                .join(", ");
            format!("perm({degree}; {gens})")
        }
        GroupSpec::Fp { gens, relators } => format!(
            "fp({}; {})",
            gens.join(","),
            relators
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        GroupSpec::Quotient { inner, seeds } => format!(
            "quot({}; {})",
            render_spec(inner),
            seeds
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

// -------------------------------------------------------------- builder --

/// Construct the concrete group a spec describes.
pub fn build(spec: &GroupSpec, opts: &BuildOptions) -> Result<GroupTable, BuildError> {
    let table = build_inner(spec, opts)?;
    Ok(table.with_label(render_spec(spec)))
}

fn build_inner(spec: &GroupSpec, opts: &BuildOptions) -> Result<GroupTable, BuildError> {
    match spec {
        GroupSpec::Cyclic(n) => {
            if *n as usize > opts.max_order {
                return Err(GroupError::OrderCapExceeded {
                    order: *n as usize,
                    cap: opts.max_order,
                }
                .into());
            }
            Ok(GroupTable::cyclic(*n as usize)?)
        }
        GroupSpec::Direct(l, r) => {
            let g = build_inner(l, opts)?;
            let h = build_inner(r, opts)?;
            Ok(GroupTable::direct_product(&g, &h, opts.max_order)?)
        }
        GroupSpec::Semidirect { base, actor, action } => {
            let b = build_inner(base, opts)?;
            let a = build_inner(actor, opts)?;
            let images = resolve_action(&b, &a, action)?;
            match GroupTable::semidirect_product(&b, &a, &images, opts.max_order) {
                Ok(t) => Ok(t),
                Err(
                    e @ (GroupError::NotAnAutomorphism | GroupError::ActionNotHomomorphic),
                ) if matches!(action, ActionSpec::Power(_)) => {
                    let _ = e;
                    Err(BuildError::SemidirectNonexistent)
                }
                Err(e) => Err(e.into()),
            }
        }
        GroupSpec::Perm { degree, gens } => {
            let mut perms = Vec::new();
            for cycles in gens {
                let p = permutation_from_cycles(*degree, cycles)
                    .ok_or(GroupError::InvalidPermutation)?;
                perms.push(p);
            }
            Ok(closure_from_permutations(*degree, &perms, opts.max_order)?)
        }
        GroupSpec::Fp { gens, relators } => {
            let p = Presentation {
                gens: gens.clone(),
                relators: relators.clone(),
            };
            let t = todd_coxeter(&p, opts.max_cosets)?;
            if t.order() > opts.max_order {
                return Err(GroupError::OrderCapExceeded {
                    order: t.order(),
                    cap: opts.max_order,
                }
                .into());
            }
            Ok(realize(&p, &t)?)
        }
        GroupSpec::Quotient { .. } => {
            let q = build_quotient_map(spec, opts)?;
            Ok(q.target().clone())
        }
    }
}

/// Build the quotient map itself (source, target, and element images).
/// `spec` must be a `Quotient` node.
pub fn build_quotient_map(spec: &GroupSpec, opts: &BuildOptions) -> Result<QuotientMap, BuildError> {
    let GroupSpec::Quotient { inner, seeds } = spec else {
        panic!("build_quotient_map requires a Quotient spec");
    };
    let g = build_inner(inner, opts)?;
    let assignment: HashMap<String, u32> = g
        .gen_names()
        .iter()
        .cloned()
        .zip(g.generators().iter().copied())
        .collect();
    let mut elems = Vec::new();
    for w in seeds {
        let e = evaluate_word(&g, &assignment, w)
            .map_err(|e| match e {
                EnumError::UnboundGenerator(n) => BuildError::UnknownGenerator(n),
                other => BuildError::Enumeration(other),
            })?;
        elems.push(e);
    }
    let n = g.normal_closure(&elems);
    Ok(g.quotient(&n)?)
}

fn resolve_action(
    base: &GroupTable,
    actor: &GroupTable,
    action: &ActionSpec,
) -> Result<Vec<Vec<u32>>, BuildError> {
    match action {
        ActionSpec::Power(k) => {
            let images: Vec<u32> = base
                .generators()
                .iter()
                .map(|&g| base.power(g, *k))
                .collect();
            Ok(vec![images; actor.generators().len()])
        }
        ActionSpec::Words(groups) => {
            if groups.len() != actor.generators().len() {
                return Err(BuildError::ActionArity {
                    expected: actor.generators().len(),
                    got: groups.len(),
                });
            }
            let assignment: HashMap<String, u32> = base
                .gen_names()
                .iter()
                .cloned()
                .zip(base.generators().iter().copied())
                .collect();
            let mut out = Vec::new();
            for group in groups {
                for (name, _) in group {
                    if !assignment.contains_key(name) {
                        return Err(BuildError::UnknownGenerator(name.clone()));
                    }
                }
                let mut images = Vec::new();
                for (gname, &gidx) in base.gen_names().iter().zip(base.generators()) {
                    let img = match group.iter().find(|(n, _)| n == gname) {
                        Some((_, w)) => evaluate_word(base, &assignment, w).map_err(|e| {
                            match e {
                                EnumError::UnboundGenerator(n) => BuildError::UnknownGenerator(n),
                                other => BuildError::Enumeration(other),
                            }
                        })?,
                        None => gidx,
                    };
                    images.push(img);
                }
                out.push(images);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_direct_product() {
        let s = parse_spec("C(3) x C(3)").unwrap();
        assert_eq!(
            s,
            GroupSpec::Direct(
                Box::new(GroupSpec::Cyclic(3)),
                Box::new(GroupSpec::Cyclic(3))
            )
        );
        assert_eq!(render_spec(&s), "C(3) x C(3)");
    }

    #[test]
    fn parses_semidirect_with_action_word() {
        let s = parse_spec("sd(C(7), C(3), [a -> a^2])").unwrap();
        let GroupSpec::Semidirect { action, .. } = &s else {
            panic!()
        };
        assert_eq!(
            *action,
            ActionSpec::Words(vec![vec![("a".into(), Word::gen("a", 2))]])
        );
    }

    #[test]
    fn parses_fp_with_commutators() {
        let s = parse_spec(
            "fp(x,y; x^9, y^9, [x,y]^3, [x^3,y], [x,y^3], (x*y^2)^3, (x^2*y)^3, (y*x)^3*x^3*y^3)",
        )
        .unwrap();
        let GroupSpec::Fp { gens, relators } = &s else {
            panic!()
        };
        assert_eq!(gens, &["x", "y"]);
        assert_eq!(relators.len(), 8);
        // [x, y]^3 expanded
        assert_eq!(relators[2].to_string(), "x^-1*y^-1*x*y*x^-1*y^-1*x*y*x^-1*y^-1*x*y");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_spec("C(3) x C(").unwrap_err();
        assert!(matches!(err, DslError::Syntax { line: 1, col: 9, .. }), "{err:?}");
    }

    #[test]
    fn unknown_generator_in_fp_rejected() {
        assert_eq!(
            parse_spec("fp(x; y^2)").unwrap_err(),
            DslError::UnknownGenerator("y".into())
        );
    }

    #[test]
    fn build_cyclic_and_direct() {
        let opts = BuildOptions::default();
        assert_eq!(build(&parse_spec("C(5)").unwrap(), &opts).unwrap().order(), 5);
        let g = build(&parse_spec("C(3) x C(3)").unwrap(), &opts).unwrap();
        assert_eq!(g.order(), 9);
        assert!((0..9).all(|x| g.element_order(x) <= 3));
    }

    #[test]
    fn build_direct_order_multiplies() {
        let opts = BuildOptions::default();
        let g = build(&parse_spec("(C(3) x C(3)) x (C(5) x C(5))").unwrap(), &opts).unwrap();
        assert_eq!(g.order(), 225);
    }

    #[test]
    fn build_semidirect_c7_c3() {
        let opts = BuildOptions::default();
        let g = build(&parse_spec("sd(C(7), C(3), [a -> a^2])").unwrap(), &opts).unwrap();
        assert_eq!(g.order(), 21);
        assert!(g.center().is_trivial());
    }

    #[test]
    fn semidirect_nonexistent_power_action() {
        // gcd(phi(5), 3) = 1: no nontrivial C5 : C3.
        let opts = BuildOptions::default();
        let err = build(&parse_spec("sd(C(5), C(3), [2])").unwrap(), &opts).unwrap_err();
        assert!(matches!(err, BuildError::SemidirectNonexistent));
    }

    #[test]
    fn identity_action_matches_direct_product() {
        let opts = BuildOptions::default();
        let sd = build(&parse_spec("sd(C(7), C(3), [1])").unwrap(), &opts).unwrap();
        let dp = build(&parse_spec("C(7) x C(3)").unwrap(), &opts).unwrap();
        assert_eq!(sd.order(), dp.order());
        let spectrum = |g: &GroupTable| {
            let mut v = vec![0usize; g.order() + 1];
            for x in 0..g.order() as u32 {
                v[g.element_order(x)] += 1;
            }
            v
        };
        assert_eq!(spectrum(&sd), spectrum(&dp));
        assert_eq!(
            sd.conjugacy_classes().count(),
            dp.conjugacy_classes().count()
        );
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "C(3) x C(3)",
            "perm(5; (1 2 3 4 5), (1 2))",
            "sd(C(7), C(3), [a -> a^2])",
            "sd(C(3) x C(3), C(3), [a -> b, b -> a^-1*b^-1])",
            "fp(x,y; x^3, y^3, (x*y)^3)",
            "quot(fp(x,y; x^3, y^3); (y*x)^3)",
            "C(2) x (C(3) x C(5))",
        ] {
            let ast = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&render_spec(&ast)).unwrap(), ast, "{text}");
        }
    }
}
