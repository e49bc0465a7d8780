//! The description-file grammar.
//!
//! A file is a sequence of sections, each opened by a header line and
//! closed by `END`. Blank lines and everything after `#` are ignored.
//! Keywords are upper case; every other token is a label. Entry lines under
//! a block keyword are indented by two spaces in canonical form.
//!
//! ```text
//! CATEGORY arrow
//! OBJECTS a b
//! MORPHISMS
//!   ida : a -> a
//!   idb : b -> b
//!   f : a -> b
//! IDENTITIES
//!   a : ida
//!   b : idb
//! COMPOSE
//!   g . f = h
//! END
//!
//! GROUP C2
//! ELEMENTS e s
//! TABLE
//!   e : e s
//!   s : s e
//! END
//!
//! FUNCTOR K
//! SOURCE C1
//! TARGET C2
//! OBJECTS
//!   * -> *
//! MORPHISMS
//!   e -> e
//! END
//!
//! SETFUNCTOR W
//! ON arrow
//! VARIANCE contravariant
//! SETS
//!   a : x
//!   b : y
//! MAPS
//!   f : x
//! END
//!
//! VECTFUNCTOR T
//! ON arrow
//! VARIANCE covariant
//! DIMS
//!   a : 1
//!   b : 1
//! MATRIX f
//!   1
//! END
//! ```
//!
//! Composites with an identity, the images of identities and identity
//! matrices may be omitted; they default to the forced value. `COMPOSE` must
//! list every other composable pair. A `TABLE` row `a : p1 p2 ...` lists the
//! products `a . b` for `b` in `ELEMENTS` order. A `MAPS` row lists the image
//! of each element of the source set of the function, which for a
//! contravariant functor is the set at the codomain. A `MATRIX` has one row
//! per dimension of the target space and one entry per dimension of the
//! source space; `()` is a row with no entries.
//!
//! The category named after `ON`, `SOURCE` or `TARGET` may be a name
//! defined earlier, a group name, or an expression built with `op(X)` and
//! `X*Y`, such as `op(C)*C` for the domain of a bifunctor on `C`.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use thiserror::Error;

use crate::fincat::{FinCat, Functor, MorId, Morphism, ObjId, Variance};
use crate::induce::FiniteGroup;
use crate::qlin::{format_rational, parse_rational, ParseRationalError, RatMatrix, Rational};
use crate::setfun::SetFunctor;
use crate::vectfun::VectFunctor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    MalformedScalar,
    DanglingMorphism,
    NonTotalComposition,
    DimensionMismatch,
    UnknownName,
    DuplicateName,
    Invalid,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::Syntax => "syntax",
            DiagnosticKind::MalformedScalar => "malformed scalar",
            DiagnosticKind::DanglingMorphism => "dangling morphism",
            DiagnosticKind::NonTotalComposition => "non-total composition table",
            DiagnosticKind::DimensionMismatch => "dimension mismatch",
            DiagnosticKind::UnknownName => "unknown name",
            DiagnosticKind::DuplicateName => "duplicate name",
            DiagnosticKind::Invalid => "invalid",
        }
    }
}

/// A parse failure located at a line and field of an input file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}:{line}: {field}: {}: {message}", kind.as_str())]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    /// The section keyword or entry label the error is about.
    pub field: String,
    pub kind: DiagnosticKind,
    pub message: String,
}

/// A group table as written, kept even when it is not a group so that
/// `validate` can report why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSection {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub group: Result<Arc<FiniteGroup>, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Category(Arc<FinCat>),
    Group(GroupSection),
    Functor(Functor),
    SetFunctor(SetFunctor),
    VectFunctor(VectFunctor),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Category(_) => "category",
            Item::Group(_) => "group",
            Item::Functor(_) => "functor",
            Item::SetFunctor(_) => "setfunctor",
            Item::VectFunctor(_) => "vectfunctor",
        }
    }
}

/// Named items from one or more files, in input order.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    items: Vec<(String, Item)>,
    /// Categories referenced by name, including derived ones.
    categories: HashMap<String, Arc<FinCat>>,
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    pub fn items(&self) -> &[(String, Item)] {
        &self.items
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, item)| item)
    }

    /// Names of items of one kind, in input order.
    pub fn names_of(&self, kind: &str) -> Vec<&str> {
        self.items
            .iter()
            .filter(|(_, item)| item.kind() == kind)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    /// Resolves a category expression, building and caching products and
    /// opposites on demand.
    pub fn category(&mut self, expr: &str) -> Option<Arc<FinCat>> {
        if let Some(c) = self.categories.get(expr) {
            return Some(c.clone());
        }
        let built = self.build_category(expr.trim())?;
        self.categories.insert(expr.to_string(), built.clone());
        Some(built)
    }

    fn build_category(&mut self, expr: &str) -> Option<Arc<FinCat>> {
        let factors = split_product(expr)?;
        if factors.len() > 1 {
            let mut acc = self.category(factors[0])?;
            for f in &factors[1..] {
                let next = self.category(f)?;
                acc = Arc::new(acc.product(&next));
            }
            return Some(acc);
        }
        if let Some(inner) = expr.strip_prefix("op(").and_then(|s| s.strip_suffix(')')) {
            return Some(Arc::new(self.category(inner)?.opposite()));
        }
        if let Some(inner) = expr.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            return self.category(inner);
        }
        None
    }

    fn insert(&mut self, name: String, item: Item) {
        match &item {
            Item::Category(c) => {
                self.categories.insert(name.clone(), c.clone());
            }
            Item::Group(GroupSection { group: Ok(g), .. }) => {
                self.categories.insert(name.clone(), g.category().clone());
            }
            _ => {}
        }
        self.items.push((name, item));
    }

    /// Parses `text` and adds its sections. `file` only labels diagnostics.
    pub fn parse_str(&mut self, file: &str, text: &str) -> Result<(), ParseError> {
        let lines: Vec<Line> = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("");
                let tokens: Vec<String> = content.split_whitespace().map(str::to_string).collect();
                (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
            })
            .collect();
        let mut pos = 0;
        while pos < lines.len() {
            let header = &lines[pos];
            let end = lines[pos..]
                .iter()
                .position(|l| l.tokens[0] == "END")
                .map(|k| pos + k)
                .ok_or_else(|| err(file, header, "END", DiagnosticKind::Syntax, "section is never closed"))?;
            let section = Section {
                file,
                header,
                body: &lines[pos + 1..end],
                end_line: lines[end].number,
            };
            let name = section.name()?;
            if self.get(&name).is_some() || self.categories.contains_key(&name) {
                return Err(err(file, header, &name, DiagnosticKind::DuplicateName, "name is already defined"));
            }
            let item = match header.tokens[0].as_str() {
                "CATEGORY" => Item::Category(Arc::new(parse_category(&section)?)),
                "GROUP" => Item::Group(parse_group(&section, &name)?),
                "FUNCTOR" => Item::Functor(parse_functor(self, &section)?),
                "SETFUNCTOR" => Item::SetFunctor(parse_set_functor(self, &section)?),
                "VECTFUNCTOR" => Item::VectFunctor(parse_vect_functor(self, &section)?),
                other => {
                    return Err(err(
                        file,
                        header,
                        other,
                        DiagnosticKind::Syntax,
                        "expected CATEGORY, GROUP, FUNCTOR, SETFUNCTOR or VECTFUNCTOR",
                    ))
                }
            };
            self.insert(name, item);
            pos = end + 1;
        }
        Ok(())
    }

    pub fn parse_file(&mut self, path: &std::path::Path) -> Result<(), ParseError> {
        let file = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| ParseError {
            file: file.clone(),
            line: 0,
            field: "file".into(),
            kind: DiagnosticKind::Syntax,
            message: e.to_string(),
        })?;
        self.parse_str(&file, &text)
    }

    /// Canonical text of every item, in input order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (k, (name, item)) in self.items.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            match item {
                Item::Category(c) => write_category(&mut out, name, c),
                Item::Group(g) => write_group(&mut out, name, g),
                Item::Functor(f) => write_functor(&mut out, name, f, self),
                Item::SetFunctor(f) => write_set_functor(&mut out, name, f, self),
                Item::VectFunctor(f) => write_vect_functor(&mut out, name, f, self),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// The name under which `c` was defined or first resolved.
    fn category_name(&self, c: &Arc<FinCat>) -> String {
        for (name, item) in &self.items {
            let hit = match item {
                Item::Category(d) => Arc::ptr_eq(c, d) || c == d,
                Item::Group(GroupSection { group: Ok(g), .. }) => g.category() == c,
                _ => false,
            };
            if hit {
                return name.clone();
            }
        }
        let mut derived: Vec<_> = self.categories.iter().filter(|(_, d)| *d == c).map(|(n, _)| n).collect();
        derived.sort();
        derived.first().map_or_else(|| "?".to_string(), |n| n.to_string())
    }
}

/// Splits on `*` outside parentheses; `None` on unbalanced input.
fn split_product(expr: &str) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in expr.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                parts.push(expr[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(expr[start..].trim());
    if parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    Some(parts)
}

struct Line {
    number: usize,
    tokens: Vec<String>,
}

struct Section<'a> {
    file: &'a str,
    header: &'a Line,
    body: &'a [Line],
    end_line: usize,
}

const BLOCK_KEYWORDS: &[&str] = &[
    "OBJECTS", "MORPHISMS", "IDENTITIES", "COMPOSE", "ELEMENTS", "TABLE", "SOURCE", "TARGET", "ON",
    "VARIANCE", "SETS", "MAPS", "DIMS", "MATRIX",
];

fn is_keyword(token: &str) -> bool {
    BLOCK_KEYWORDS.contains(&token)
}

fn err(file: &str, line: &Line, field: &str, kind: DiagnosticKind, message: impl Into<String>) -> ParseError {
    ParseError {
        file: file.to_string(),
        line: line.number,
        field: field.to_string(),
        kind,
        message: message.into(),
    }
}

/// A keyword line with the entry lines that follow it.
struct Block<'a> {
    keyword: &'a str,
    line: &'a Line,
    /// Tokens after the keyword on its own line.
    args: &'a [String],
    entries: &'a [Line],
}

impl<'a> Section<'a> {
    fn name(&self) -> Result<String, ParseError> {
        match self.header.tokens.as_slice() {
            [_, name] => Ok(name.clone()),
            _ => Err(self.error(self.header, "header", DiagnosticKind::Syntax, "expected `KEYWORD name`")),
        }
    }

    fn error(&self, line: &Line, field: &str, kind: DiagnosticKind, message: impl Into<String>) -> ParseError {
        err(self.file, line, field, kind, message)
    }

    /// Error reported at the END line, for facts about the whole section.
    fn error_at_end(&self, field: &str, kind: DiagnosticKind, message: impl Into<String>) -> ParseError {
        ParseError {
            file: self.file.to_string(),
            line: self.end_line,
            field: field.to_string(),
            kind,
            message: message.into(),
        }
    }

    fn blocks(&self, allowed: &[&str]) -> Result<Vec<Block<'a>>, ParseError> {
        let mut out: Vec<Block<'a>> = Vec::new();
        let mut k = 0;
        while k < self.body.len() {
            let line = &self.body[k];
            let keyword = line.tokens[0].as_str();
            if !is_keyword(keyword) {
                return Err(self.error(line, keyword, DiagnosticKind::Syntax, "entry outside of any block"));
            }
            if !allowed.contains(&keyword) {
                return Err(self.error(
                    line,
                    keyword,
                    DiagnosticKind::Syntax,
                    format!("keyword not allowed in {}", self.header.tokens[0]),
                ));
            }
            let start = k + 1;
            k = start;
            while k < self.body.len() && !is_keyword(&self.body[k].tokens[0]) {
                k += 1;
            }
            out.push(Block {
                keyword,
                line,
                args: &line.tokens[1..],
                entries: &self.body[start..k],
            });
        }
        for b in &out {
            if b.keyword != "MATRIX" && out.iter().filter(|o| o.keyword == b.keyword).count() > 1 {
                return Err(self.error(b.line, b.keyword, DiagnosticKind::Syntax, "block appears twice"));
            }
        }
        Ok(out)
    }

    fn single_arg(&self, blocks: &[Block<'a>], keyword: &str) -> Result<(&'a Line, &'a str), ParseError> {
        let b = blocks
            .iter()
            .find(|b| b.keyword == keyword)
            .ok_or_else(|| self.error(self.header, keyword, DiagnosticKind::Syntax, format!("missing {keyword}")))?;
        match (b.args, b.entries) {
            ([arg], []) => Ok((b.line, arg.as_str())),
            _ => Err(self.error(b.line, keyword, DiagnosticKind::Syntax, format!("expected `{keyword} value`"))),
        }
    }

    fn resolve_category(&self, ws: &mut Workspace, blocks: &[Block<'a>], keyword: &str) -> Result<Arc<FinCat>, ParseError> {
        let (line, name) = self.single_arg(blocks, keyword)?;
        ws.category(name).ok_or_else(|| {
            self.error(line, keyword, DiagnosticKind::UnknownName, format!("no category named `{name}`"))
        })
    }

    fn variance(&self, blocks: &[Block<'a>]) -> Result<Variance, ParseError> {
        let (line, v) = self.single_arg(blocks, "VARIANCE")?;
        match v {
            "covariant" => Ok(Variance::Covariant),
            "contravariant" => Ok(Variance::Contravariant),
            _ => Err(self.error(line, "VARIANCE", DiagnosticKind::Syntax, "expected covariant or contravariant")),
        }
    }
}

fn block<'b, 'a>(blocks: &'b [Block<'a>], keyword: &str) -> Option<&'b Block<'a>> {
    blocks.iter().find(|b| b.keyword == keyword)
}

fn list_entries(b: &Block<'_>) -> Vec<(usize, String)> {
    // OBJECTS and ELEMENTS accept labels on the keyword line or below it
    let inline = b.args.iter().map(|t| (b.line.number, t.clone()));
    let below = b.entries.iter().flat_map(|l| l.tokens.iter().map(move |t| (l.number, t.clone())));
    inline.chain(below).collect()
}

fn unique_labels(section: &Section<'_>, b: &Block<'_>, what: &str) -> Result<Vec<String>, ParseError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (number, label) in list_entries(b) {
        if !seen.insert(label.clone()) {
            let line = Line { number, tokens: vec![] };
            return Err(section.error(&line, &label, DiagnosticKind::DuplicateName, format!("{what} listed twice")));
        }
        out.push(label);
    }
    Ok(out)
}

fn parse_category(s: &Section<'_>) -> Result<FinCat, ParseError> {
    use DiagnosticKind::*;
    let blocks = s.blocks(&["OBJECTS", "MORPHISMS", "IDENTITIES", "COMPOSE"])?;
    let objects = match block(&blocks, "OBJECTS") {
        Some(b) => unique_labels(s, b, "object")?,
        None => return Err(s.error(s.header, "OBJECTS", Syntax, "missing OBJECTS")),
    };
    let object_id = |label: &str| objects.iter().position(|o| o == label);

    let mut morphisms: Vec<Morphism> = Vec::new();
    if let Some(b) = block(&blocks, "MORPHISMS") {
        if !b.args.is_empty() {
            return Err(s.error(b.line, "MORPHISMS", Syntax, "entries go on their own lines"));
        }
        for line in b.entries {
            let [label, colon, dom, arrow, cod] = line.tokens.as_slice() else {
                return Err(s.error(line, "MORPHISMS", Syntax, "expected `label : dom -> cod`"));
            };
            if colon != ":" || arrow != "->" {
                return Err(s.error(line, label, Syntax, "expected `label : dom -> cod`"));
            }
            if morphisms.iter().any(|m| &m.label == label) {
                return Err(s.error(line, label, DuplicateName, "morphism listed twice"));
            }
            let endpoint = |o: &str, side: &str| {
                object_id(o).ok_or_else(|| {
                    s.error(line, label, DanglingMorphism, format!("{side} `{o}` is not an object"))
                })
            };
            morphisms.push(Morphism {
                label: label.clone(),
                dom: endpoint(dom, "domain")?,
                cod: endpoint(cod, "codomain")?,
            });
        }
    }
    let morphism_id = |label: &str| morphisms.iter().position(|m| m.label == label);

    let mut identity: Vec<Option<MorId>> = vec![None; objects.len()];
    if let Some(b) = block(&blocks, "IDENTITIES") {
        for line in b.entries {
            let [obj, colon, label] = line.tokens.as_slice() else {
                return Err(s.error(line, "IDENTITIES", Syntax, "expected `object : morphism`"));
            };
            if colon != ":" {
                return Err(s.error(line, obj, Syntax, "expected `object : morphism`"));
            }
            let o = object_id(obj).ok_or_else(|| s.error(line, obj, UnknownName, "not an object"))?;
            let f = morphism_id(label)
                .ok_or_else(|| s.error(line, label, DanglingMorphism, "identity names an undeclared morphism"))?;
            if identity[o].replace(f).is_some() {
                return Err(s.error(line, obj, DuplicateName, "identity assigned twice"));
            }
        }
    }
    let identity: Vec<MorId> = identity
        .iter()
        .enumerate()
        .map(|(o, id)| id.ok_or_else(|| s.error_at_end(&objects[o], Invalid, "object has no identity")))
        .collect::<Result<_, _>>()?;
    if let Some(o) = (0..objects.len()).find(|&o| morphisms[identity[o]].dom != o || morphisms[identity[o]].cod != o) {
        return Err(s.error_at_end(&objects[o], Invalid, "identity is not an endomorphism of its object"));
    }

    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    if let Some(b) = block(&blocks, "COMPOSE") {
        for line in b.entries {
            let [g, dot, f, eq, h] = line.tokens.as_slice() else {
                return Err(s.error(line, "COMPOSE", Syntax, "expected `g . f = h`"));
            };
            if dot != "." || eq != "=" {
                return Err(s.error(line, "COMPOSE", Syntax, "expected `g . f = h`"));
            }
            let lookup = |label: &str| {
                morphism_id(label)
                    .ok_or_else(|| s.error(line, label, DanglingMorphism, "composite names an undeclared morphism"))
            };
            let (gi, fi, hi) = (lookup(g)?, lookup(f)?, lookup(h)?);
            if morphisms[gi].dom != morphisms[fi].cod {
                return Err(s.error(line, g, Invalid, format!("{g} . {f} is not composable")));
            }
            if table.insert((gi, fi), hi).is_some() {
                return Err(s.error(line, g, DuplicateName, format!("{g} . {f} given twice")));
            }
        }
    }
    for (f, m) in morphisms.iter().enumerate() {
        let (a, b) = (m.dom, m.cod);
        table.entry((identity[b], f)).or_insert(f);
        table.entry((f, identity[a])).or_insert(f);
    }
    for f in 0..morphisms.len() {
        for g in 0..morphisms.len() {
            if morphisms[g].dom == morphisms[f].cod && !table.contains_key(&(g, f)) {
                return Err(s.error_at_end(
                    &morphisms[g].label,
                    NonTotalComposition,
                    format!("missing composite {} . {}", morphisms[g].label, morphisms[f].label),
                ));
            }
        }
    }
    FinCat::from_table(objects, morphisms, identity, &table).map_err(|e| s.error_at_end("COMPOSE", Invalid, e.to_string()))
}

fn parse_group(s: &Section<'_>, name: &str) -> Result<GroupSection, ParseError> {
    use DiagnosticKind::*;
    let blocks = s.blocks(&["ELEMENTS", "TABLE"])?;
    let labels = match block(&blocks, "ELEMENTS") {
        Some(b) => unique_labels(s, b, "element")?,
        None => return Err(s.error(s.header, "ELEMENTS", Syntax, "missing ELEMENTS")),
    };
    let n = labels.len();
    let element = |line: &Line, label: &str| {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| s.error(line, label, DanglingMorphism, "not an element of the group"))
    };
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
    if let Some(b) = block(&blocks, "TABLE") {
        for line in b.entries {
            let (head, rest) = line.tokens.split_at(1.min(line.tokens.len()));
            if rest.first().map(String::as_str) != Some(":") {
                return Err(s.error(line, "TABLE", Syntax, "expected `a : products...`"));
            }
            let a = element(line, &head[0])?;
            let products = &rest[1..];
            if products.len() != n {
                return Err(s.error(
                    line,
                    &head[0],
                    NonTotalComposition,
                    format!("row has {} products, group has {n} elements", products.len()),
                ));
            }
            let row = products.iter().map(|p| element(line, p)).collect::<Result<Vec<_>, _>>()?;
            if rows[a].replace(row).is_some() {
                return Err(s.error(line, &head[0], DuplicateName, "row given twice"));
            }
        }
    }
    let table: Vec<Vec<usize>> = rows
        .into_iter()
        .enumerate()
        .map(|(a, r)| r.ok_or_else(|| s.error_at_end(&labels[a], NonTotalComposition, "missing table row")))
        .collect::<Result<_, _>>()?;
    let group = FiniteGroup::from_table(name, labels.clone(), table.clone())
        .map(Arc::new)
        .map_err(|e| e.to_string());
    Ok(GroupSection { labels, table, group })
}

fn parse_functor(ws: &mut Workspace, s: &Section<'_>) -> Result<Functor, ParseError> {
    use DiagnosticKind::*;
    let blocks = s.blocks(&["SOURCE", "TARGET", "OBJECTS", "MORPHISMS"])?;
    let source = s.resolve_category(ws, &blocks, "SOURCE")?;
    let target = s.resolve_category(ws, &blocks, "TARGET")?;
    let pairs = |keyword: &str| -> Result<Vec<(&Line, String, String)>, ParseError> {
        let Some(b) = block(&blocks, keyword) else { return Ok(Vec::new()) };
        b.entries
            .iter()
            .map(|line| match line.tokens.as_slice() {
                [x, arrow, y] if arrow == "->" => Ok((line, x.clone(), y.clone())),
                _ => Err(s.error(line, keyword, Syntax, "expected `x -> y`")),
            })
            .collect()
    };
    let mut object_map: Vec<Option<ObjId>> = vec![None; source.num_objects()];
    for (line, x, y) in pairs("OBJECTS")? {
        let a = source
            .object_by_label(&x)
            .ok_or_else(|| s.error(line, &x, UnknownName, "not an object of the source"))?;
        let b = target
            .object_by_label(&y)
            .ok_or_else(|| s.error(line, &y, UnknownName, "not an object of the target"))?;
        if object_map[a].replace(b).is_some() {
            return Err(s.error(line, &x, DuplicateName, "object mapped twice"));
        }
    }
    let object_map: Vec<ObjId> = object_map
        .iter()
        .enumerate()
        .map(|(a, b)| b.ok_or_else(|| s.error_at_end(source.object_label(a), Invalid, "object has no image")))
        .collect::<Result<_, _>>()?;
    let mut morphism_map: Vec<Option<MorId>> = vec![None; source.num_morphisms()];
    for (line, x, y) in pairs("MORPHISMS")? {
        let f = source
            .morphism_by_label(&x)
            .ok_or_else(|| s.error(line, &x, DanglingMorphism, "not a morphism of the source"))?;
        let g = target
            .morphism_by_label(&y)
            .ok_or_else(|| s.error(line, &y, DanglingMorphism, "not a morphism of the target"))?;
        if morphism_map[f].replace(g).is_some() {
            return Err(s.error(line, &x, DuplicateName, "morphism mapped twice"));
        }
    }
    let morphism_map: Vec<MorId> = morphism_map
        .iter()
        .enumerate()
        .map(|(f, g)| match g {
            Some(g) => Ok(*g),
            None if source.is_identity(f) => Ok(target.identity(object_map[source.dom(f)])),
            None => Err(s.error_at_end(&source.morphism(f).label, Invalid, "morphism has no image")),
        })
        .collect::<Result<_, _>>()?;
    Functor::new(source, target, object_map, morphism_map).map_err(|e| s.error_at_end("FUNCTOR", Invalid, e.to_string()))
}

type Labelled<'l> = (&'l Line, &'l str, &'l [String]);

/// `label : rest...` entries of a block, keyed by the head label.
fn labelled<'l>(s: &Section<'_>, b: &'l Block<'_>) -> Result<Vec<Labelled<'l>>, ParseError> {
    b.entries
        .iter()
        .map(|line| match line.tokens.as_slice() {
            [head, colon, rest @ ..] if colon == ":" => Ok((line, head.as_str(), rest)),
            _ => Err(s.error(line, b.keyword, DiagnosticKind::Syntax, "expected `label : values...`")),
        })
        .collect()
}

fn per_object<'l, T>(
    s: &Section<'_>,
    cat: &FinCat,
    b: Option<&'l Block<'_>>,
    keyword: &str,
    mut parse: impl FnMut(&'l Line, &'l str, &'l [String]) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    let b = b.ok_or_else(|| s.error(s.header, keyword, DiagnosticKind::Syntax, format!("missing {keyword}")))?;
    let mut out: Vec<Option<T>> = (0..cat.num_objects()).map(|_| None).collect();
    for (line, head, rest) in labelled(s, b)? {
        let o = cat
            .object_by_label(head)
            .ok_or_else(|| s.error(line, head, DiagnosticKind::UnknownName, "not an object"))?;
        if out[o].replace(parse(line, head, rest)?).is_some() {
            return Err(s.error(line, head, DiagnosticKind::DuplicateName, "object given twice"));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(o, v)| v.ok_or_else(|| s.error_at_end(cat.object_label(o), DiagnosticKind::Invalid, format!("object missing from {keyword}"))))
        .collect()
}

fn parse_set_functor(ws: &mut Workspace, s: &Section<'_>) -> Result<SetFunctor, ParseError> {
    use DiagnosticKind::*;
    let blocks = s.blocks(&["ON", "VARIANCE", "SETS", "MAPS"])?;
    let cat = s.resolve_category(ws, &blocks, "ON")?;
    let variance = s.variance(&blocks)?;
    let sets: Vec<Vec<String>> = per_object(s, &cat, block(&blocks, "SETS"), "SETS", |line, head, rest| {
        let mut seen = HashSet::new();
        if let Some(dup) = rest.iter().find(|x| !seen.insert(*x)) {
            return Err(s.error(line, head, DuplicateName, format!("element `{dup}` listed twice")));
        }
        Ok(rest.to_vec())
    })?;
    let ends = |f: MorId| match variance {
        Variance::Covariant => (cat.dom(f), cat.cod(f)),
        Variance::Contravariant => (cat.cod(f), cat.dom(f)),
    };
    let mut maps: Vec<Option<Vec<usize>>> = vec![None; cat.num_morphisms()];
    if let Some(b) = block(&blocks, "MAPS") {
        for (line, head, rest) in labelled(s, b)? {
            let f = cat
                .morphism_by_label(head)
                .ok_or_else(|| s.error(line, head, DanglingMorphism, "not a morphism of the category"))?;
            let (from, to) = ends(f);
            if rest.len() != sets[from].len() {
                return Err(s.error(
                    line,
                    head,
                    DimensionMismatch,
                    format!("function for {head} needs {} images, got {}", sets[from].len(), rest.len()),
                ));
            }
            let images = rest
                .iter()
                .map(|y| {
                    sets[to]
                        .iter()
                        .position(|z| z == y)
                        .ok_or_else(|| s.error(line, head, UnknownName, format!("`{y}` is not in the target set")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if maps[f].replace(images).is_some() {
                return Err(s.error(line, head, DuplicateName, "function given twice"));
            }
        }
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(f, m)| match m {
            Some(m) => Ok(m),
            None if cat.is_identity(f) => Ok((0..sets[cat.dom(f)].len()).collect()),
            None => Err(s.error_at_end(&cat.morphism(f).label, Invalid, "morphism has no function")),
        })
        .collect::<Result<_, _>>()?;
    SetFunctor::new(cat, variance, sets, maps).map_err(|e| s.error_at_end("SETFUNCTOR", Invalid, e.to_string()))
}

fn scalar(s: &Section<'_>, line: &Line, field: &str, token: &str) -> Result<Rational, ParseError> {
    parse_rational(token).map_err(|e| {
        let detail = match e {
            ParseRationalError::Malformed(t) => format!("`{t}` is not a rational"),
            ParseRationalError::ZeroDenominator(t) => format!("`{t}` has a zero denominator"),
        };
        s.error(line, field, DiagnosticKind::MalformedScalar, detail)
    })
}

fn parse_vect_functor(ws: &mut Workspace, s: &Section<'_>) -> Result<VectFunctor, ParseError> {
    use DiagnosticKind::*;
    let blocks = s.blocks(&["ON", "VARIANCE", "DIMS", "MATRIX"])?;
    let cat = s.resolve_category(ws, &blocks, "ON")?;
    let variance = s.variance(&blocks)?;
    let dims: Vec<usize> = per_object(s, &cat, block(&blocks, "DIMS"), "DIMS", |line, head, rest| match rest {
        [d] => d.parse().map_err(|_| s.error(line, head, Syntax, format!("`{d}` is not a dimension"))),
        _ => Err(s.error(line, head, Syntax, "expected `object : dim`")),
    })?;
    let ends = |f: MorId| match variance {
        Variance::Covariant => (cat.dom(f), cat.cod(f)),
        Variance::Contravariant => (cat.cod(f), cat.dom(f)),
    };
    let mut maps: Vec<Option<RatMatrix>> = vec![None; cat.num_morphisms()];
    for b in blocks.iter().filter(|b| b.keyword == "MATRIX") {
        let [label] = b.args else {
            return Err(s.error(b.line, "MATRIX", Syntax, "expected `MATRIX morphism`"));
        };
        let f = cat
            .morphism_by_label(label)
            .ok_or_else(|| s.error(b.line, label, DanglingMorphism, "not a morphism of the category"))?;
        let (from, to) = ends(f);
        let (rows, cols) = (dims[to], dims[from]);
        if b.entries.len() != rows {
            return Err(s.error(
                b.line,
                label,
                DimensionMismatch,
                format!("matrix for {label} needs {rows} rows, got {}", b.entries.len()),
            ));
        }
        let mut entries = Vec::with_capacity(rows);
        for line in b.entries {
            let tokens: &[String] = if line.tokens == ["()"] { &[] } else { &line.tokens };
            if tokens.len() != cols {
                return Err(s.error(
                    line,
                    label,
                    DimensionMismatch,
                    format!("row of matrix {label} needs {cols} entries, got {}", tokens.len()),
                ));
            }
            entries.push(tokens.iter().map(|t| scalar(s, line, label, t)).collect::<Result<Vec<_>, _>>()?);
        }
        let m = RatMatrix::from_rows(entries, cols).expect("row lengths were checked");
        if maps[f].replace(m).is_some() {
            return Err(s.error(b.line, label, DuplicateName, "matrix given twice"));
        }
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(f, m)| match m {
            Some(m) => Ok(m),
            None if cat.is_identity(f) => Ok(RatMatrix::identity(dims[cat.dom(f)])),
            None => Err(s.error_at_end(&cat.morphism(f).label, Invalid, "morphism has no matrix")),
        })
        .collect::<Result<_, _>>()?;
    VectFunctor::new(cat, variance, dims, maps).map_err(|e| s.error_at_end("VECTFUNCTOR", Invalid, e.to_string()))
}

fn write_category(out: &mut String, name: &str, c: &FinCat) -> fmt::Result {
    writeln!(out, "CATEGORY {name}")?;
    writeln!(out, "OBJECTS {}", c.objects().join(" "))?;
    writeln!(out, "MORPHISMS")?;
    for m in c.morphisms() {
        writeln!(out, "  {} : {} -> {}", m.label, c.object_label(m.dom), c.object_label(m.cod))?;
    }
    writeln!(out, "IDENTITIES")?;
    for o in 0..c.num_objects() {
        writeln!(out, "  {} : {}", c.object_label(o), c.morphism(c.identity(o)).label)?;
    }
    let mut composites = Vec::new();
    for f in 0..c.num_morphisms() {
        for &g in c.outgoing(c.cod(f)) {
            let h = c.compose(g, f);
            let forced = (c.is_identity(g) && h == f) || (c.is_identity(f) && h == g);
            if !forced {
                composites.push((g, f, h));
            }
        }
    }
    if !composites.is_empty() {
        writeln!(out, "COMPOSE")?;
        for (g, f, h) in composites {
            let label = |x: MorId| &c.morphism(x).label;
            writeln!(out, "  {} . {} = {}", label(g), label(f), label(h))?;
        }
    }
    writeln!(out, "END")
}

fn write_group(out: &mut String, name: &str, g: &GroupSection) -> fmt::Result {
    writeln!(out, "GROUP {name}")?;
    writeln!(out, "ELEMENTS {}", g.labels.join(" "))?;
    writeln!(out, "TABLE")?;
    for (a, row) in g.table.iter().enumerate() {
        let products: Vec<&str> = row.iter().map(|&p| g.labels[p].as_str()).collect();
        writeln!(out, "  {} : {}", g.labels[a], products.join(" "))?;
    }
    writeln!(out, "END")
}

fn write_functor(out: &mut String, name: &str, f: &Functor, ws: &Workspace) -> fmt::Result {
    let (s, t) = (f.source(), f.target());
    writeln!(out, "FUNCTOR {name}")?;
    writeln!(out, "SOURCE {}", ws.category_name(s))?;
    writeln!(out, "TARGET {}", ws.category_name(t))?;
    writeln!(out, "OBJECTS")?;
    for o in 0..s.num_objects() {
        writeln!(out, "  {} -> {}", s.object_label(o), t.object_label(f.object(o)))?;
    }
    let listed: Vec<MorId> = (0..s.num_morphisms())
        .filter(|&m| !(s.is_identity(m) && t.is_identity(f.morphism(m)) && t.dom(f.morphism(m)) == f.object(s.dom(m))))
        .collect();
    if !listed.is_empty() {
        writeln!(out, "MORPHISMS")?;
        for m in listed {
            writeln!(out, "  {} -> {}", s.morphism(m).label, t.morphism(f.morphism(m)).label)?;
        }
    }
    writeln!(out, "END")
}

fn write_set_functor(out: &mut String, name: &str, f: &SetFunctor, ws: &Workspace) -> fmt::Result {
    let c = f.source();
    writeln!(out, "SETFUNCTOR {name}")?;
    writeln!(out, "ON {}", ws.category_name(c))?;
    writeln!(out, "VARIANCE {}", f.variance().as_str())?;
    writeln!(out, "SETS")?;
    for o in 0..c.num_objects() {
        let line = std::iter::once(format!("  {} :", c.object_label(o)))
            .chain(f.set(o).iter().cloned())
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "{line}")?;
    }
    let listed: Vec<MorId> = (0..c.num_morphisms())
        .filter(|&m| !(c.is_identity(m) && f.map(m).iter().enumerate().all(|(x, &y)| x == y)))
        .collect();
    if !listed.is_empty() {
        writeln!(out, "MAPS")?;
        for m in listed {
            let (_, to) = f.map_ends(m);
            let line = std::iter::once(format!("  {} :", c.morphism(m).label))
                .chain(f.map(m).iter().map(|&y| f.set(to)[y].clone()))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "{line}")?;
        }
    }
    writeln!(out, "END")
}

fn write_vect_functor(out: &mut String, name: &str, f: &VectFunctor, ws: &Workspace) -> fmt::Result {
    let c = f.source();
    writeln!(out, "VECTFUNCTOR {name}")?;
    writeln!(out, "ON {}", ws.category_name(c))?;
    writeln!(out, "VARIANCE {}", f.variance().as_str())?;
    writeln!(out, "DIMS")?;
    for o in 0..c.num_objects() {
        writeln!(out, "  {} : {}", c.object_label(o), f.dim(o))?;
    }
    for m in 0..c.num_morphisms() {
        if c.is_identity(m) && f.map(m).is_identity() {
            continue;
        }
        writeln!(out, "MATRIX {}", c.morphism(m).label)?;
        for r in 0..f.map(m).rows() {
            writeln!(out, "  {}", format_row(f.map(m).row(r)))?;
        }
    }
    writeln!(out, "END")
}

/// Entries separated by spaces; `()` for a row with none.
pub fn format_row(row: &[Rational]) -> String {
    if row.is_empty() {
        "()".to_string()
    } else {
        row.iter().map(format_rational).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;
    use crate::vectfun::validate_vect_functor;

    const C2: &str = "GROUP C2\nELEMENTS e s\nTABLE\n  e : e s\n  s : s e\nEND\n";

    fn parse(text: &str) -> Result<Workspace, ParseError> {
        let mut ws = Workspace::new();
        ws.parse_str("test", text)?;
        Ok(ws)
    }

    #[test]
    fn c2_group_parses_to_a_valid_category() {
        let mut ws = parse(C2).unwrap();
        let Some(Item::Group(g)) = ws.get("C2") else { panic!() };
        assert!(g.group.is_ok());
        let cat = ws.category("C2").unwrap();
        assert!(validate_category(&cat).is_empty());
        assert_eq!(ws.serialize(), C2);
    }

    #[test]
    fn corrupted_group_is_kept_for_validation() {
        let ws = parse("GROUP C2\nELEMENTS e s\nTABLE\n  e : e s\n  s : s s\nEND\n").unwrap();
        let Some(Item::Group(g)) = ws.get("C2") else { panic!() };
        assert!(g.group.as_ref().unwrap_err().contains("no inverse"));
    }

    #[test]
    fn identity_composites_are_implied() {
        let text = "CATEGORY arrow\nOBJECTS a b\nMORPHISMS\n  ida : a -> a\n  idb : b -> b\n  f : a -> b\nIDENTITIES\n  a : ida\n  b : idb\nEND\n";
        let mut ws = parse(text).unwrap();
        let c = ws.category("arrow").unwrap();
        assert_eq!(c.num_morphisms(), 3);
        assert!(validate_category(&c).is_empty());
        assert_eq!(ws.serialize(), text);
    }

    #[test]
    fn missing_composite_is_non_total() {
        let text = "CATEGORY chain\nOBJECTS a b c\nMORPHISMS\n  ia : a -> a\n  ib : b -> b\n  ic : c -> c\n  f : a -> b\n  g : b -> c\n  h : a -> c\nIDENTITIES\n  a : ia\n  b : ib\n  c : ic\nEND\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::NonTotalComposition);
        assert!(e.message.contains("g . f"));
    }

    #[test]
    fn dangling_morphism() {
        let text = "CATEGORY x\nOBJECTS a\nMORPHISMS\n  ia : a -> a\nIDENTITIES\n  a : ia\nCOMPOSE\n  ia . ia = q\nEND\n";
        let e = parse(text).unwrap_err();
        assert_eq!((e.kind, e.line, e.field.as_str()), (DiagnosticKind::DanglingMorphism, 8, "q"));
        let e = parse("CATEGORY x\nOBJECTS a\nMORPHISMS\n  f : a -> z\nEND\n").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::DanglingMorphism);
    }

    #[test]
    fn zero_denominator_is_a_malformed_scalar() {
        let text = format!("{C2}VECTFUNCTOR V\nON C2\nVARIANCE covariant\nDIMS\n  * : 1\nMATRIX s\n  1/0\nEND\n");
        let e = parse(&text).unwrap_err();
        assert_eq!((e.kind, e.line, e.field.as_str()), (DiagnosticKind::MalformedScalar, 13, "s"));
    }

    #[test]
    fn short_row_names_the_morphism() {
        let text = format!("{C2}VECTFUNCTOR V\nON C2\nVARIANCE covariant\nDIMS\n  * : 2\nMATRIX s\n  0 1\n  1\nEND\n");
        let e = parse(&text).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::DimensionMismatch);
        assert_eq!(e.field, "s");
        assert!(e.to_string().contains("test:14: s: dimension mismatch"));
    }

    #[test]
    fn bifunctor_on_derived_category() {
        let text = format!("{C2}\nVECTFUNCTOR H\nON op(C2)*C2\nVARIANCE covariant\nDIMS\n  (*,*) : 1\nMATRIX (e,s)\n  -1\nMATRIX (s,e)\n  -1\nMATRIX (s,s)\n  1\nEND\n");
        let ws = parse(&text).unwrap();
        let Some(Item::VectFunctor(h)) = ws.get("H") else { panic!() };
        assert!(validate_vect_functor(h).is_empty());
        assert_eq!(ws.serialize(), text);
    }

    #[test]
    fn contravariant_set_functor_round_trips() {
        let text = "CATEGORY arrow\nOBJECTS a b\nMORPHISMS\n  ida : a -> a\n  idb : b -> b\n  f : a -> b\nIDENTITIES\n  a : ida\n  b : idb\nEND\n\nSETFUNCTOR W\nON arrow\nVARIANCE contravariant\nSETS\n  a : x y\n  b : p\nMAPS\n  f : y\nEND\n";
        let ws = parse(text).unwrap();
        let Some(Item::SetFunctor(w)) = ws.get("W") else { panic!() };
        assert_eq!(w.map(2), &[1]);
        assert_eq!(ws.serialize(), text);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let e = parse(&format!("{C2}{C2}")).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::DuplicateName);
    }
}
