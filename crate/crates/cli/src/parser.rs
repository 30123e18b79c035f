//! Recursive-descent parser for spec documents.
//!
//! ```text
//! document  := section*
//! section   := "quiver" "{" "vertices" ":" vid+ ";" ["arrows" ":" [arrow ("," arrow)*] [";"]] "}"
//!            | "relations" "{" [expr (";" expr)* [";"]] "}"
//!            | "point_relation" "{" "through" ":" vid ";" "by" ":" path [";"] "}"
//!            | "length" "{" length_item (";" length_item)* [";"] "}"
//!            | "model" "{" model_item (";" model_item)* [";"] "}"
//! arrow     := id ":" vid "->" vid
//! expr      := ["+" | "-"] term (("+" | "-") term)*
//! term      := factor (["*"] factor)*         factor := number | id
//! ```

use num_traits::{One, Zero};
use quivrel_core::Coeff;

use crate::ast::*;
use crate::error::{ErrorKind, ParseError};
use crate::lexer::{tokenize, Tok, Token};
use crate::resolve::resolve;

/// Words that cannot name a vertex or an arrow.
pub const RESERVED: &[&str] = &[
    "quiver",
    "relations",
    "point_relation",
    "length",
    "model",
    "vertices",
    "arrows",
    "through",
    "by",
    "monoid",
    "assign",
    "cut",
    "all",
    "gt",
    "ge",
    "inf",
    "kind",
    "points",
    "kupisch",
    "wedge_points",
    "appendix",
    "Z",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek().tok == *tok
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == word)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::new(
            ErrorKind::Syntax,
            format!("unexpected {}", t.tok),
            t.span,
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.at(&tok) {
            Ok(self.next())
        } else {
            Err(self.unexpected(&[&tok.to_string()]))
        }
    }

    fn expect_word(&mut self, word: &str) -> PResult<Token> {
        if self.at_word(word) {
            Ok(self.next())
        } else {
            Err(self.unexpected(&[&format!("`{word}`")]))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name = s.clone();
                let span = self.next().span;
                Ok(Ident { name, span })
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    /// A vertex name: identifier or unsigned integer.
    fn vertex_id(&mut self) -> PResult<Ident> {
        match &self.peek().tok {
            Tok::Ident(_) => self.ident("vertex"),
            Tok::Number(s) if !s.contains('/') => {
                let name = s.clone();
                let span = self.next().span;
                Ok(Ident { name, span })
            }
            _ => Err(self.unexpected(&["vertex"])),
        }
    }

    fn number(&mut self) -> PResult<Coeff> {
        match &self.peek().tok {
            Tok::Number(s) => {
                let v = parse_rational(s);
                self.next();
                Ok(v)
            }
            _ => Err(self.unexpected(&["number"])),
        }
    }

    fn signed_number(&mut self) -> PResult<Coeff> {
        let neg = self.eat(&Tok::Minus);
        let v = self.number()?;
        Ok(if neg { -v } else { v })
    }

    fn unsigned(&mut self) -> PResult<u64> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Number(s) if !s.contains('/') => {
                self.next();
                s.parse()
                    .map_err(|_| ParseError::new(ErrorKind::Syntax, "integer too large", t.span, vec![]))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn value(&mut self) -> PResult<Value> {
        if self.at_word("inf") {
            self.next();
            return Ok(Value::Infinity);
        }
        match self.peek().tok {
            Tok::Number(_) => Ok(Value::Finite(self.number()?)),
            _ => Err(self.unexpected(&["number", "`inf`"])),
        }
    }

    /// Items separated by `;` up to the closing brace.
    fn items(&mut self, mut item: impl FnMut(&mut Self) -> PResult<()>) -> PResult<Token> {
        loop {
            if self.at(&Tok::RBrace) {
                return Ok(self.next());
            }
            item(self)?;
            if !self.eat(&Tok::Semi) {
                return self.expect(Tok::RBrace).map_err(|_| self.unexpected(&["`;`", "`}`"]));
            }
        }
    }

    fn document(&mut self, doc: &mut SpecDocument) -> PResult<()> {
        while !self.at(&Tok::Eof) {
            let head = self.peek().clone();
            let Tok::Ident(word) = &head.tok else {
                return Err(self.unexpected(&["section name"]));
            };
            match word.as_str() {
                "quiver" => {
                    let q = self.quiver()?;
                    if doc.quiver.is_some() {
                        return Err(duplicate("quiver", head.span));
                    }
                    doc.quiver = Some(q);
                }
                "relations" => {
                    let rels = self.relations()?;
                    doc.relations.extend(rels);
                }
                "point_relation" => {
                    let p = self.point_relation()?;
                    doc.point_relations.push(p);
                }
                "length" => {
                    let l = self.length()?;
                    if doc.length.is_some() {
                        return Err(duplicate("length", head.span));
                    }
                    doc.length = Some(l);
                }
                "model" => {
                    let m = self.model()?;
                    if doc.model.is_some() {
                        return Err(duplicate("model", head.span));
                    }
                    doc.model = Some(m);
                }
                _ => {
                    return Err(self.unexpected(&[
                        "`quiver`",
                        "`relations`",
                        "`point_relation`",
                        "`length`",
                        "`model`",
                    ]))
                }
            }
        }
        Ok(())
    }

    fn quiver(&mut self) -> PResult<QuiverDecl> {
        let start = self.next().span;
        self.expect(Tok::LBrace)?;
        self.expect_word("vertices")?;
        self.expect(Tok::Colon)?;
        let mut vertices = vec![self.vertex_id()?];
        while !self.at(&Tok::Semi) {
            if !matches!(self.peek().tok, Tok::Ident(_) | Tok::Number(_)) {
                return Err(self.unexpected(&["vertex", "`;`"]));
            }
            vertices.push(self.vertex_id()?);
        }
        self.next();
        let mut arrows = Vec::new();
        if self.at(&Tok::RBrace) {
            let end = self.next();
            return Ok(QuiverDecl {
                vertices,
                arrows,
                span: start.to(end.span),
            });
        }
        self.expect_word("arrows")
            .map_err(|_| self.unexpected(&["`arrows`", "`}`"]))?;
        self.expect(Tok::Colon)?;
        while !self.at(&Tok::Semi) && !self.at(&Tok::RBrace) {
            let name = self.ident("arrow name")?;
            self.expect(Tok::Colon)?;
            let source = self.vertex_id()?;
            self.expect(Tok::Arrow)?;
            let target = self.vertex_id()?;
            arrows.push(ArrowDecl { name, source, target });
            if !self.eat(&Tok::Comma) {
                break;
            }
            if self.at(&Tok::Semi) || self.at(&Tok::RBrace) {
                return Err(self.unexpected(&["arrow name"]));
            }
        }
        self.eat(&Tok::Semi);
        let end = self
            .expect(Tok::RBrace)
            .map_err(|_| self.unexpected(&["`,`", "`;`", "`}`"]))?;
        Ok(QuiverDecl {
            vertices,
            arrows,
            span: start.to(end.span),
        })
    }

    fn relations(&mut self) -> PResult<Vec<RelationExpr>> {
        self.next();
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        self.items(|p| {
            out.push(p.expr()?);
            Ok(())
        })?;
        Ok(out)
    }

    fn expr(&mut self) -> PResult<RelationExpr> {
        let start = self.peek().span;
        let mut terms = Vec::new();
        let mut sign = if self.eat(&Tok::Minus) {
            -Coeff::one()
        } else {
            self.eat(&Tok::Plus);
            Coeff::one()
        };
        loop {
            let mut term = self.term()?;
            term.coeff *= &sign;
            terms.push(term);
            sign = if self.eat(&Tok::Plus) {
                Coeff::one()
            } else if self.eat(&Tok::Minus) {
                -Coeff::one()
            } else {
                break;
            };
        }
        let end = terms.last().map(|t| t.span).unwrap_or(start);
        Ok(RelationExpr {
            terms,
            span: start.to(end),
        })
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.peek().span;
        let mut coeff = Coeff::one();
        let mut path = Vec::new();
        let mut end = start;
        loop {
            match &self.peek().tok {
                Tok::Number(s) => {
                    coeff *= parse_rational(s);
                    end = self.next().span;
                }
                Tok::Ident(_) => {
                    let id = self.ident("arrow")?;
                    end = id.span;
                    path.push(id);
                }
                _ if end == start && path.is_empty() && coeff.is_one() => {
                    return Err(self.unexpected(&["number", "arrow"]));
                }
                _ => break,
            }
            if !self.eat(&Tok::Star) && !matches!(self.peek().tok, Tok::Number(_) | Tok::Ident(_)) {
                break;
            }
        }
        if path.is_empty() {
            return Err(ParseError::new(
                ErrorKind::Syntax,
                "a term needs at least one arrow",
                start.to(end),
                vec!["arrow".into()],
            ));
        }
        Ok(Term {
            coeff,
            path,
            span: start.to(end),
        })
    }

    fn path(&mut self) -> PResult<Vec<Ident>> {
        let mut out = vec![self.ident("arrow")?];
        while self.eat(&Tok::Star) || matches!(self.peek().tok, Tok::Ident(_)) {
            out.push(self.ident("arrow")?);
        }
        Ok(out)
    }

    fn point_relation(&mut self) -> PResult<PointRelationDecl> {
        let start = self.next().span;
        self.expect(Tok::LBrace)?;
        self.expect_word("through")?;
        self.expect(Tok::Colon)?;
        let through = self.vertex_id()?;
        self.expect(Tok::Semi)?;
        self.expect_word("by")?;
        self.expect(Tok::Colon)?;
        let by = self.path()?;
        self.eat(&Tok::Semi);
        let end = self.expect(Tok::RBrace)?;
        Ok(PointRelationDecl {
            through,
            by,
            span: start.to(end.span),
        })
    }

    fn cut(&mut self) -> PResult<CutDecl> {
        let strict = if self.at_word("gt") {
            true
        } else if self.at_word("ge") {
            false
        } else {
            return Err(self.unexpected(&["`gt`", "`ge`"]));
        };
        self.next();
        Ok(CutDecl {
            strict,
            value: self.value()?,
        })
    }

    fn length(&mut self) -> PResult<LengthDecl> {
        let start = self.next().span;
        self.expect(Tok::LBrace)?;
        let (mut monoid, mut assign, mut cut) = (None, None, None);
        let end = self.items(|p| {
            let key = p.peek().clone();
            match &key.tok {
                Tok::Ident(w) if w == "monoid" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut monoid, p.monoid()?, "monoid", key.span)
                }
                Tok::Ident(w) if w == "assign" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut assign, p.assign()?, "assign", key.span)
                }
                Tok::Ident(w) if w == "cut" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut cut, p.cut()?, "cut", key.span)
                }
                _ => Err(p.unexpected(&["`monoid`", "`assign`", "`cut`"])),
            }
        })?;
        let span = start.to(end.span);
        let monoid = monoid.ok_or_else(|| {
            ParseError::new(
                ErrorKind::Syntax,
                "length section without `monoid`",
                span,
                vec!["`monoid`".into()],
            )
        })?;
        Ok(LengthDecl {
            monoid,
            assign,
            cut,
            span,
        })
    }

    fn monoid(&mut self) -> PResult<MonoidDecl> {
        let t = self.ident("monoid")?;
        Ok(match t.name.as_str() {
            "nat" => MonoidDecl::Nat,
            "rational" => MonoidDecl::Rational,
            "natinf" => MonoidDecl::NatInf,
            "rationalinf" => MonoidDecl::RationalInf,
            "truncated" => {
                self.expect(Tok::LParen)?;
                let n = self.unsigned()?;
                self.expect(Tok::RParen)?;
                MonoidDecl::Truncated(n)
            }
            _ => {
                return Err(ParseError::new(
                    ErrorKind::Syntax,
                    format!("unknown monoid `{}`", t.name),
                    t.span,
                    ["`nat`", "`rational`", "`truncated`", "`natinf`", "`rationalinf`"]
                        .map(String::from)
                        .to_vec(),
                ))
            }
        })
    }

    fn assign(&mut self) -> PResult<AssignDecl> {
        if self.at_word("all") {
            self.next();
            self.expect(Tok::Eq)?;
            return Ok(AssignDecl::All(self.value()?));
        }
        let mut each = Vec::new();
        loop {
            let a = self.ident("arrow")?;
            self.expect(Tok::Eq)?;
            each.push((a, self.value()?));
            self.eat(&Tok::Comma);
            if !matches!(self.peek().tok, Tok::Ident(_)) {
                return Ok(AssignDecl::Each(each));
            }
        }
    }

    fn model(&mut self) -> PResult<ModelDecl> {
        let start = self.next().span;
        self.expect(Tok::LBrace)?;
        let (mut kind, mut points, mut cut, mut kupisch, mut wedge, mut appendix) =
            (None, None, None, None, None, None);
        let end = self.items(|p| {
            let key = p.peek().clone();
            let Tok::Ident(word) = &key.tok else {
                return Err(p.unexpected(&["model item"]));
            };
            match word.as_str() {
                "kind" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut kind, p.kind()?, "kind", key.span)
                }
                "points" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut points, p.points()?, "points", key.span)
                }
                "cut" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut cut, p.cut()?, "cut", key.span)
                }
                "kupisch" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    let keeps_boundary = if p.at_word("lt") {
                        p.next();
                        false
                    } else {
                        if p.at_word("le") {
                            p.next();
                        }
                        true
                    };
                    let value = p.number()?;
                    set_once(&mut kupisch, KupischDecl { value, keeps_boundary }, "kupisch", key.span)
                }
                "wedge_points" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    set_once(&mut wedge, p.wedge()?, "wedge_points", key.span)
                }
                "appendix" => {
                    p.next();
                    p.expect(Tok::Colon)?;
                    let on = if p.at_word("on") {
                        true
                    } else if p.at_word("off") {
                        false
                    } else {
                        return Err(p.unexpected(&["`on`", "`off`"]));
                    };
                    p.next();
                    set_once(&mut appendix, on, "appendix", key.span)
                }
                _ => Err(p.unexpected(&[
                    "`kind`",
                    "`points`",
                    "`cut`",
                    "`kupisch`",
                    "`wedge_points`",
                    "`appendix`",
                ])),
            }
        })?;
        let span = start.to(end.span);
        let kind = kind.ok_or_else(|| {
            ParseError::new(
                ErrorKind::Syntax,
                "model section without `kind`",
                span,
                vec!["`kind`".into()],
            )
        })?;
        Ok(ModelDecl {
            kind,
            points,
            cut,
            kupisch,
            wedge_points: wedge,
            appendix: appendix.unwrap_or(false),
            span,
        })
    }

    fn kind(&mut self) -> PResult<KindDecl> {
        let t = self.ident("model kind")?;
        let args = |p: &mut Self, n: usize| -> PResult<Vec<Coeff>> {
            p.expect(Tok::LParen)?;
            let mut out = vec![p.number()?];
            for _ in 1..n {
                p.expect(Tok::Comma)?;
                out.push(p.number()?);
            }
            p.expect(Tok::RParen)?;
            Ok(out)
        };
        Ok(match t.name.as_str() {
            "realline" => KindDecl::RealLine,
            "crossing" => KindDecl::Crossing,
            "plane" => KindDecl::Plane,
            "circle" => KindDecl::Circle(args(self, 1)?.remove(0)),
            "chain" => {
                let v = args(self, 2)?;
                KindDecl::Chain(v[0].clone(), v[1].clone())
            }
            "wedge" => {
                self.expect(Tok::LParen)?;
                let c = self.number()?;
                self.expect(Tok::Comma)?;
                let count = if self.at_word("inf") {
                    self.next();
                    None
                } else {
                    Some(self.unsigned()?)
                };
                self.expect(Tok::RParen)?;
                KindDecl::Wedge(c, count)
            }
            "semicts" => {
                self.expect(Tok::LParen)?;
                let v = self.ident("`q` or `qplus`")?;
                let k = match v.name.as_str() {
                    "q" => KindDecl::SemiQ,
                    "qplus" => KindDecl::SemiQPlus,
                    _ => {
                        return Err(ParseError::new(
                            ErrorKind::Syntax,
                            "unknown variant",
                            v.span,
                            vec!["`q`".into(), "`qplus`".into()],
                        ))
                    }
                };
                self.expect(Tok::RParen)?;
                k
            }
            _ => {
                return Err(ParseError::new(
                    ErrorKind::Syntax,
                    format!("unknown model kind `{}`", t.name),
                    t.span,
                    ["realline", "crossing", "circle", "chain", "wedge", "plane", "semicts"]
                        .map(|s| format!("`{s}`"))
                        .to_vec(),
                ))
            }
        })
    }

    fn points(&mut self) -> PResult<PointsDecl> {
        if self.eat(&Tok::LBrace) {
            let mut out = Vec::new();
            if !self.at(&Tok::RBrace) {
                loop {
                    out.push(self.signed_number()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            self.expect(Tok::RBrace).map_err(|_| self.unexpected(&["`,`", "`}`"]))?;
            return Ok(PointsDecl::Finite(out));
        }
        if self.at_word("Z") {
            self.next();
            return Ok(PointsDecl::Multiples(Coeff::one()));
        }
        let r = self.number().map_err(|_| self.unexpected(&["`{`", "number", "`Z`"]))?;
        self.expect(Tok::Star)?;
        self.expect_word("Z")?;
        Ok(PointsDecl::Multiples(r))
    }

    fn wedge(&mut self) -> PResult<WedgeDecl> {
        let t = self.ident("`all`, `none`, `only` or `all_except`")?;
        let set = |p: &mut Self| -> PResult<Vec<u64>> {
            p.expect(Tok::LBrace)?;
            let mut out = Vec::new();
            if !p.at(&Tok::RBrace) {
                loop {
                    out.push(p.unsigned()?);
                    if !p.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            p.expect(Tok::RBrace)?;
            Ok(out)
        };
        Ok(match t.name.as_str() {
            "all" => WedgeDecl::All,
            "none" => WedgeDecl::None,
            "only" => WedgeDecl::Only(set(self)?),
            "all_except" => WedgeDecl::AllExcept(set(self)?),
            _ => {
                return Err(ParseError::new(
                    ErrorKind::Syntax,
                    format!("unknown wedge relation set `{}`", t.name),
                    t.span,
                    ["`all`", "`none`", "`only`", "`all_except`"].map(String::from).to_vec(),
                ))
            }
        })
    }
}

fn duplicate(section: &str, span: crate::ast::Span) -> ParseError {
    ParseError::new(
        ErrorKind::Syntax,
        format!("duplicate `{section}` section"),
        span,
        vec![],
    )
}

fn set_once<T>(slot: &mut Option<T>, v: T, what: &str, span: crate::ast::Span) -> PResult<()> {
    if slot.is_some() {
        return Err(ParseError::new(
            ErrorKind::Syntax,
            format!("`{what}` given twice"),
            span,
            vec![],
        ));
    }
    *slot = Some(v);
    Ok(())
}

/// `p` or `p/q`; the lexer guarantees the shape.
pub fn parse_rational(s: &str) -> Coeff {
    s.parse().unwrap_or_else(|_| Coeff::zero())
}

/// Syntax only; identifiers are not resolved.
pub fn parse_syntax(text: &str) -> Result<SpecDocument, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut doc = SpecDocument::default();
    p.document(&mut doc)?;
    Ok(doc)
}

/// A complete document: exactly one `quiver` or `model` section and every
/// identifier resolved.
pub fn parse_spec(text: &str) -> Result<SpecDocument, ParseError> {
    let doc = parse_syntax(text)?;
    let end = tokenize(text)?.last().map(|t| t.span).unwrap_or_default();
    match (&doc.quiver, &doc.model) {
        (Some(_), Some(m)) => {
            return Err(ParseError::new(
                ErrorKind::Syntax,
                "a document has either a `quiver` or a `model` section, not both",
                m.span,
                vec![],
            ))
        }
        (None, None) => {
            return Err(ParseError::new(
                ErrorKind::Syntax,
                "missing `quiver` or `model` section",
                end,
                vec!["`quiver`".into(), "`model`".into()],
            ))
        }
        _ => {}
    }
    resolve(&doc)?;
    Ok(doc)
}
