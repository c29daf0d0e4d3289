//! The versioned, line-oriented document format.
//!
//! ```text
//! segalkit 1
//! kind simplicial
//! truncation 3 exact
//! cell a 0
//! cell b 0
//! cell f 1 : b a
//! cell t 2 : f@s0 f f
//! ```
//!
//! A simplex reference is a cell name, optionally followed by `@` and a
//! strictly decreasing degeneracy word such as `s2s0`. Bisimplicial cells
//! have degrees `p,q`, their horizontal and vertical faces separated by `|`,
//! and references of the form `name@<horizontal word>/<vertical word>`.
//! Category documents list `object`, `arrow NAME SOURCE TARGET [identity]`
//! and `compose G F H` (meaning `G ∘ F = H`) lines; composites with
//! identities are implied. Presheaf and map documents nest the above in
//! `begin ... end` blocks.
//!
//! Canonical form sorts cells by degree, then name. Everything after `#` on
//! a line is ignored.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use segalkit::category::Arrow;
use segalkit::complex::Cell;
use segalkit::ops;
use segalkit::presheaf::SimplicialPresheaf;
use segalkit::{CellId, Complex, FiniteCategory, Morphism, Presheaf, Simplex, SimplicialMap, SimplicialSet};

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub bound: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub enum Document {
    Simplicial(Arc<SimplicialSet>, Option<Truncation>),
    Bisimplicial(Arc<Complex<2>>, Option<Truncation>),
    Category(FiniteCategory),
    Presheaf(SimplicialPresheaf),
    Map(SimplicialMap),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Simplicial(..) => "simplicial",
            Document::Bisimplicial(..) => "bisimplicial",
            Document::Category(_) => "category",
            Document::Presheaf(_) => "presheaf",
            Document::Map(_) => "map",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column: 1,
            message: message.into(),
        }
    }

    fn head(&self) -> &'a str {
        self.tokens[0].text
    }

    fn arg(&self, i: usize, what: &str) -> PResult<Token<'a>> {
        self.tokens.get(i).copied().ok_or_else(|| {
            let column = self.tokens.last().map_or(1, |t| t.column + t.text.chars().count());
            ParseError {
                line: self.number,
                column,
                message: format!("expected {what}"),
            }
        })
    }

    fn no_more(&self, from: usize) -> PResult<()> {
        match self.tokens.get(from) {
            Some(t) => Err(t.error(format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in body.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, col)),
                (true, Some((b, c))) => {
                    tokens.push(Token { text: &body[b..byte], line: i + 1, column: c + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token { text: &body[b..], line: i + 1, column: c + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn number(t: Token<'_>, what: &str) -> PResult<usize> {
    t.text.parse().map_err(|_| t.error(format!("expected {what}, found `{}`", t.text)))
}

// ---------------------------------------------------------------- parsing

pub fn parse(text: &str) -> PResult<Document> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let header = it.next().ok_or(ParseError { line: 1, column: 1, message: "empty document".into() })?;
    if header.head() != "segalkit" {
        return Err(header.tokens[0].error("expected the header `segalkit <version>`"));
    }
    let v = header.arg(1, "a format version")?;
    if number(v, "a format version")? != VERSION as usize {
        return Err(v.error(format!("unsupported format version {}", v.text)));
    }
    header.no_more(2)?;
    let kind_line = it.next().ok_or_else(|| header.error("missing `kind` line"))?;
    if kind_line.head() != "kind" {
        return Err(kind_line.tokens[0].error("expected `kind`"));
    }
    let kind = kind_line.arg(1, "a document kind")?;
    kind_line.no_more(2)?;
    let rest: Vec<Line<'_>> = it.cloned().collect();
    match kind.text {
        "simplicial" => {
            let (body, trunc) = split_truncation(&rest)?;
            Ok(Document::Simplicial(Arc::new(parse_complex::<1>(&body)?), trunc))
        }
        "bisimplicial" => {
            let (body, trunc) = split_truncation(&rest)?;
            Ok(Document::Bisimplicial(Arc::new(parse_complex::<2>(&body)?), trunc))
        }
        "category" => Ok(Document::Category(parse_category(&rest, kind_line)?)),
        "presheaf" => Ok(Document::Presheaf(parse_presheaf(&rest, kind_line)?)),
        "map" => Ok(Document::Map(parse_map(&rest, kind_line)?)),
        other => Err(kind.error(format!("unknown document kind `{other}`"))),
    }
}

fn split_truncation<'a>(lines: &[Line<'a>]) -> PResult<(Vec<Line<'a>>, Option<Truncation>)> {
    let mut trunc = None;
    let mut body = Vec::new();
    for l in lines {
        if l.head() != "truncation" {
            body.push(l.clone());
            continue;
        }
        if trunc.is_some() {
            return Err(l.tokens[0].error("truncation given twice"));
        }
        let bound = number(l.arg(1, "a truncation bound")?, "a truncation bound")?;
        let mode = l.arg(2, "`exact` or `truncated`")?;
        let exact = match mode.text {
            "exact" => true,
            "truncated" => false,
            _ => return Err(mode.error("expected `exact` or `truncated`")),
        };
        l.no_more(3)?;
        trunc = Some(Truncation { bound, exact });
    }
    Ok((body, trunc))
}

/// Split into top-level lines and named `begin NAME [ARG] ... end` blocks.
struct Blocks<'a> {
    top: Vec<Line<'a>>,
    blocks: Vec<(Line<'a>, Vec<Line<'a>>)>,
}

fn blocks<'a>(lines: &[Line<'a>]) -> PResult<Blocks<'a>> {
    let mut out = Blocks { top: Vec::new(), blocks: Vec::new() };
    let mut open: Option<(Line<'a>, Vec<Line<'a>>)> = None;
    for l in lines {
        match (l.head(), &mut open) {
            ("begin", Some(_)) => return Err(l.tokens[0].error("blocks do not nest")),
            ("begin", None) => {
                l.arg(1, "a block name")?;
                open = Some((l.clone(), Vec::new()));
            }
            ("end", Some(_)) => {
                l.no_more(1)?;
                out.blocks.push(open.take().unwrap());
            }
            ("end", None) => return Err(l.tokens[0].error("`end` without `begin`")),
            (_, Some((_, body))) => body.push(l.clone()),
            (_, None) => out.top.push(l.clone()),
        }
    }
    if let Some((b, _)) = open {
        return Err(b.error("block is never closed"));
    }
    Ok(out)
}

struct CellLine<'a> {
    line: Line<'a>,
    name: Token<'a>,
    degree: Vec<usize>,
    faces: Vec<Vec<Token<'a>>>,
}

fn parse_cell_line<'a, const D: usize>(l: &Line<'a>) -> PResult<CellLine<'a>> {
    if l.head() != "cell" {
        return Err(l.tokens[0].error(format!("expected `cell`, found `{}`", l.head())));
    }
    let name = l.arg(1, "a cell name")?;
    check_name(name)?;
    let deg = l.arg(2, "a degree")?;
    let parts: Vec<&str> = deg.text.split(',').collect();
    if parts.len() != D {
        return Err(deg.error(format!("expected a degree with {D} component(s)")));
    }
    let degree = parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| deg.error(format!("bad degree `{}`", deg.text))))
        .collect::<PResult<Vec<_>>>()?;
    let mut faces = vec![Vec::new(); D];
    let expected: Vec<usize> = degree.iter().map(|&p| if p == 0 { 0 } else { p + 1 }).collect();
    if expected.iter().any(|&e| e > 0) || l.tokens.len() > 3 {
        let colon = l.arg(3, "`:` followed by faces")?;
        if colon.text != ":" {
            return Err(colon.error("expected `:`"));
        }
        let mut dir = 0;
        for t in &l.tokens[4..] {
            if t.text == "|" {
                dir += 1;
                if dir >= D {
                    return Err(t.error("too many face groups"));
                }
            } else {
                faces[dir].push(*t);
            }
        }
        if D > 1 && dir != D - 1 {
            return Err(l.error(format!("cell {} needs {D} face groups separated by `|`", name.text)));
        }
    }
    for d in 0..D {
        if faces[d].len() != expected[d] {
            let at = faces[d].first().copied().unwrap_or(name);
            return Err(at.error(format!(
                "cell {} has {} faces in direction {d}, expected {}",
                name.text,
                faces[d].len(),
                expected[d]
            )));
        }
    }
    Ok(CellLine { line: l.clone(), name, degree, faces })
}

fn check_name(t: Token<'_>) -> PResult<()> {
    if t.text.chars().any(|c| RESERVED.contains(&c)) || t.text == ":" || t.text == "|" {
        return Err(t.error(format!("`{}` is not a valid name", t.text)));
    }
    Ok(())
}

const RESERVED: [char; 4] = ['@', '|', ':', '#'];

/// A strictly decreasing word `s_a s_b ...` applied to a cell of dimension `base`.
fn parse_word(t: Token<'_>, text: &str, base: usize) -> PResult<ops::Op> {
    let mut word = Vec::new();
    if !text.is_empty() {
        if !text.starts_with('s') {
            return Err(t.error(format!("bad degeneracy word `{text}`")));
        }
        for piece in text[1..].split('s') {
            let i: usize = piece.parse().map_err(|_| t.error(format!("bad degeneracy word `{text}`")))?;
            word.push(i);
        }
    }
    for (pos, &i) in word.iter().enumerate() {
        if pos > 0 && word[pos - 1] <= i {
            return Err(t.error(format!("degeneracy word `{text}` is not strictly decreasing")));
        }
        if i > base + (word.len() - 1 - pos) {
            return Err(t.error(format!("degeneracy s{i} out of range in `{text}`")));
        }
    }
    Ok(ops::surjection_of_word(base, &word))
}

fn parse_ref<const D: usize>(
    t: Token<'_>,
    ids: &HashMap<&str, CellId>,
    degrees: &[[usize; D]],
) -> PResult<Simplex<D>> {
    let (name, words) = match t.text.split_once('@') {
        Some((n, w)) => (n, Some(w)),
        None => (t.text, None),
    };
    let id = *ids.get(name).ok_or_else(|| t.error(format!("unknown cell `{name}`")))?;
    let base = degrees[id.index()];
    let parts: Vec<&str> = match words {
        None => vec![""; D],
        Some(w) => w.split('/').collect(),
    };
    if parts.len() != D {
        return Err(t.error(format!("expected {D} degeneracy word(s) in `{}`", t.text)));
    }
    let mut out: [ops::Op; D] = std::array::from_fn(|d| ops::identity(base[d]));
    for d in 0..D {
        out[d] = parse_word(t, parts[d], base[d])?;
    }
    Ok(Simplex { ops: out, cell: id })
}

/// Cells sorted canonically, with the name of each new cell id.
fn parse_complex<const D: usize>(lines: &[Line<'_>]) -> PResult<Complex<D>> {
    let mut cells = lines.iter().map(parse_cell_line::<D>).collect::<PResult<Vec<_>>>()?;
    let mut seen = HashSet::new();
    for c in &cells {
        if !seen.insert(c.name.text) {
            return Err(c.name.error(format!("duplicate cell `{}`", c.name.text)));
        }
    }
    cells.sort_by(|a, b| (&a.degree, a.name.text).cmp(&(&b.degree, b.name.text)));
    let ids: HashMap<&str, CellId> = cells.iter().enumerate().map(|(i, c)| (c.name.text, CellId(i as u32))).collect();
    let degrees: Vec<[usize; D]> = cells.iter().map(|c| std::array::from_fn(|d| c.degree[d])).collect();
    let mut built = Vec::with_capacity(cells.len());
    for (idx, c) in cells.iter().enumerate() {
        let mut faces: [Vec<Simplex<D>>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            for t in &c.faces[d] {
                let s = parse_ref::<D>(*t, &ids, &degrees)?;
                let want: [usize; D] = std::array::from_fn(|e| if e == d { degrees[idx][e] - 1 } else { degrees[idx][e] });
                if s.degree() != want {
                    return Err(t.error(format!("face `{}` of cell {} has the wrong degree", t.text, c.name.text)));
                }
                faces[d].push(s);
            }
        }
        built.push(Cell { degree: degrees[idx], faces, label: c.name.text.to_string() });
    }
    Complex::try_from_cells(built).map_err(|e| {
        let msg = e.to_string();
        let at = cells
            .iter()
            .find(|c| msg.contains(&format!("cell {} ", c.name.text)) || msg.ends_with(&format!("cell {}", c.name.text)))
            .map_or(lines.first().map_or(1, |l| l.number), |c| c.line.number);
        ParseError { line: at, column: 1, message: msg }
    })
}

fn parse_category(lines: &[Line<'_>], kind_line: &Line<'_>) -> PResult<FiniteCategory> {
    let mut objects: Vec<String> = Vec::new();
    let mut object_ids: HashMap<&str, usize> = HashMap::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_ids: HashMap<&str, usize> = HashMap::new();
    let mut identities: Vec<Option<usize>> = Vec::new();
    let mut composites: Vec<(usize, usize, usize)> = Vec::new();
    let mut given: HashSet<(usize, usize)> = HashSet::new();
    for l in lines {
        match l.head() {
            "object" => {
                let n = l.arg(1, "an object name")?;
                check_name(n)?;
                l.no_more(2)?;
                if object_ids.insert(n.text, objects.len()).is_some() {
                    return Err(n.error(format!("duplicate object `{}`", n.text)));
                }
                objects.push(n.text.to_string());
                identities.push(None);
            }
            "arrow" => {
                let n = l.arg(1, "an arrow name")?;
                check_name(n)?;
                let mut ends = [0; 2];
                for (k, e) in ends.iter_mut().enumerate() {
                    let t = l.arg(2 + k, if k == 0 { "a source object" } else { "a target object" })?;
                    *e = *object_ids.get(t.text).ok_or_else(|| t.error(format!("unknown object `{}`", t.text)))?;
                }
                let id = arrows.len();
                if let Some(flag) = l.tokens.get(4) {
                    if flag.text != "identity" {
                        return Err(flag.error("expected `identity`"));
                    }
                    if ends[0] != ends[1] {
                        return Err(flag.error("an identity must be an endomorphism"));
                    }
                    if identities[ends[0]].replace(id).is_some() {
                        return Err(flag.error(format!("second identity on `{}`", objects[ends[0]])));
                    }
                    l.no_more(5)?;
                }
                if arrow_ids.insert(n.text, id).is_some() {
                    return Err(n.error(format!("duplicate arrow `{}`", n.text)));
                }
                arrows.push(Arrow { name: n.text.to_string(), source: ends[0], target: ends[1] });
            }
            "compose" => {
                let mut a = [0; 3];
                for (k, slot) in a.iter_mut().enumerate() {
                    let t = l.arg(1 + k, "an arrow name")?;
                    *slot = *arrow_ids.get(t.text).ok_or_else(|| t.error(format!("unknown arrow `{}`", t.text)))?;
                }
                l.no_more(4)?;
                if !given.insert((a[0], a[1])) {
                    return Err(l.tokens[1].error("composite given twice"));
                }
                composites.push((a[0], a[1], a[2]));
            }
            other => return Err(l.tokens[0].error(format!("unexpected `{other}` in a category"))),
        }
    }
    let identities = identities
        .iter()
        .enumerate()
        .map(|(o, i)| i.ok_or_else(|| kind_line.error(format!("object `{}` has no identity", objects[o]))))
        .collect::<PResult<Vec<_>>>()?;
    for (f, a) in arrows.iter().enumerate() {
        for pair in [(identities[a.target], f), (f, identities[a.source])] {
            if given.insert(pair) {
                composites.push((pair.0, pair.1, f));
            }
        }
    }
    FiniteCategory::new(objects, arrows, identities, &composites).map_err(|e| kind_line.error(e.to_string()))
}

/// Images of the named cells of `source`, as `map CELL REF` lines.
fn parse_images(lines: &[Line<'_>], source: &SimplicialSet, target: &SimplicialSet) -> PResult<Vec<Simplex<1>>> {
    let source_ids: HashMap<&str, CellId> = source.cell_ids().map(|c| (source.label(c), c)).collect();
    let target_ids: HashMap<&str, CellId> = target.cell_ids().map(|c| (target.label(c), c)).collect();
    let degrees: Vec<[usize; 1]> = target.cells().iter().map(|c| c.degree).collect();
    let mut images: Vec<Option<Simplex<1>>> = vec![None; source.len()];
    for l in lines {
        if l.head() != "map" {
            return Err(l.tokens[0].error(format!("expected `map`, found `{}`", l.head())));
        }
        let c = l.arg(1, "a source cell")?;
        let r = l.arg(2, "an image")?;
        l.no_more(3)?;
        let id = *source_ids.get(c.text).ok_or_else(|| c.error(format!("unknown source cell `{}`", c.text)))?;
        let s = parse_ref::<1>(r, &target_ids, &degrees)?;
        if images[id.index()].replace(s).is_some() {
            return Err(c.error(format!("image of `{}` given twice", c.text)));
        }
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| ParseError {
                line: lines.first().map_or(1, |l| l.number),
                column: 1,
                message: format!("no image for cell `{}`", source.label(CellId(i as u32))),
            })
        })
        .collect()
}

fn block_complex(header: &Line<'_>, body: &[Line<'_>]) -> PResult<Arc<SimplicialSet>> {
    let (body, _) = split_truncation(body)?;
    parse_complex::<1>(&body).map(Arc::new).map_err(|e| if body.is_empty() { header.error(e.message) } else { e })
}

fn parse_map(lines: &[Line<'_>], kind_line: &Line<'_>) -> PResult<SimplicialMap> {
    let b = blocks(lines)?;
    let mut source = None;
    let mut target = None;
    for (h, body) in &b.blocks {
        let slot = match h.tokens[1].text {
            "source" => &mut source,
            "target" => &mut target,
            other => return Err(h.tokens[1].error(format!("unexpected block `{other}` in a map"))),
        };
        h.no_more(2)?;
        if slot.replace(block_complex(h, body)?).is_some() {
            return Err(h.tokens[1].error("block given twice"));
        }
    }
    let source = source.ok_or_else(|| kind_line.error("missing `begin source` block"))?;
    let target = target.ok_or_else(|| kind_line.error("missing `begin target` block"))?;
    let images = parse_images(&b.top, &source, &target)?;
    Morphism::new(source, target, images).map_err(|e| kind_line.error(e.to_string()))
}

fn parse_presheaf(lines: &[Line<'_>], kind_line: &Line<'_>) -> PResult<SimplicialPresheaf> {
    let b = blocks(lines)?;
    if let Some(l) = b.top.first() {
        return Err(l.tokens[0].error("presheaf content must be inside blocks"));
    }
    let mut index = None;
    let mut sections: HashMap<usize, Arc<SimplicialSet>> = HashMap::new();
    let mut pending = Vec::new();
    for (h, body) in &b.blocks {
        match h.tokens[1].text {
            "index" => {
                h.no_more(2)?;
                if index.replace(Arc::new(parse_category(body, h)?)).is_some() {
                    return Err(h.tokens[1].error("index given twice"));
                }
            }
            "section" | "restriction" => pending.push((h, body)),
            other => return Err(h.tokens[1].error(format!("unexpected block `{other}` in a presheaf"))),
        }
    }
    let index: Arc<FiniteCategory> = index.ok_or_else(|| kind_line.error("missing `begin index` block"))?;
    let objects: HashMap<&str, usize> = index.objects().iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    let arrows: HashMap<&str, usize> = index.arrows().iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
    for (h, body) in pending.iter().filter(|(h, _)| h.tokens[1].text == "section") {
        let o = h.arg(2, "an object")?;
        h.no_more(3)?;
        let id = *objects.get(o.text).ok_or_else(|| o.error(format!("unknown object `{}`", o.text)))?;
        if sections.insert(id, block_complex(h, body)?).is_some() {
            return Err(o.error(format!("section over `{}` given twice", o.text)));
        }
    }
    let sections: Vec<Arc<SimplicialSet>> = (0..index.object_count())
        .map(|o| {
            sections
                .remove(&o)
                .ok_or_else(|| kind_line.error(format!("missing section over `{}`", index.objects()[o])))
        })
        .collect::<PResult<_>>()?;
    let mut restrictions: Vec<Option<SimplicialMap>> = vec![None; index.arrow_count()];
    for (h, body) in pending.iter().filter(|(h, _)| h.tokens[1].text == "restriction") {
        let f = h.arg(2, "an arrow")?;
        h.no_more(3)?;
        let id = *arrows.get(f.text).ok_or_else(|| f.error(format!("unknown arrow `{}`", f.text)))?;
        let a = index.arrow(id);
        let (src, tgt) = (&sections[a.target], &sections[a.source]);
        let images = parse_images(body, src, tgt)?;
        let m = Morphism::new(src.clone(), tgt.clone(), images).map_err(|e| h.error(e.to_string()))?;
        if restrictions[id].replace(m).is_some() {
            return Err(f.error(format!("restriction along `{}` given twice", f.text)));
        }
    }
    let restrictions = restrictions
        .into_iter()
        .enumerate()
        .map(|(f, r)| match r {
            Some(r) => Ok(r),
            None if index.is_identity(f) => Ok(Morphism::identity(&sections[index.arrow(f).source])),
            None => Err(kind_line.error(format!("missing restriction along `{}`", index.arrow(f).name))),
        })
        .collect::<PResult<Vec<_>>>()?;
    Presheaf::new(index, sections, restrictions).map_err(|e| kind_line.error(e.to_string()))
}

// ----------------------------------------------------------- serializing

/// Names for the cells of `x`: the label made safe, made unique if needed.
fn cell_names<const D: usize>(x: &Complex<D>) -> Vec<String> {
    let clean: Vec<String> = x
        .cell_ids()
        .map(|c| {
            let s: String = x
                .label(c)
                .chars()
                .map(|ch| if ch.is_whitespace() || RESERVED.contains(&ch) { '_' } else { ch })
                .collect();
            if s.is_empty() || s == "end" {
                format!("c{}", c.index())
            } else {
                s
            }
        })
        .collect();
    let mut count: HashMap<&str, usize> = HashMap::new();
    for s in &clean {
        *count.entry(s.as_str()).or_default() += 1;
    }
    let mut taken: HashSet<String> = clean.iter().filter(|s| count[s.as_str()] == 1).cloned().collect();
    let mut out = Vec::with_capacity(clean.len());
    for (i, s) in clean.iter().enumerate() {
        if count[s.as_str()] == 1 {
            out.push(s.clone());
            continue;
        }
        let mut k = i;
        let mut name = format!("{s}~{k}");
        while !taken.insert(name.clone()) {
            k += 1;
            name = format!("{s}~{k}");
        }
        out.push(name);
    }
    out
}

fn canonical_order<const D: usize>(x: &Complex<D>, names: &[String]) -> Vec<CellId> {
    let mut order: Vec<CellId> = x.cell_ids().collect();
    order.sort_by(|a, b| (x.cell(*a).degree, &names[a.index()]).cmp(&(x.cell(*b).degree, &names[b.index()])));
    order
}

fn write_word(out: &mut String, op: &[u8]) {
    for i in ops::word_of(op) {
        let _ = write!(out, "s{i}");
    }
}

fn render_ref<const D: usize>(s: &Simplex<D>, names: &[String]) -> String {
    let mut out = names[s.cell.index()].clone();
    if !s.is_nondegenerate() {
        out.push('@');
        for d in 0..D {
            if d > 0 {
                out.push('/');
            }
            write_word(&mut out, &s.ops[d]);
        }
    }
    out
}

fn write_cells<const D: usize>(out: &mut String, x: &Complex<D>) -> Vec<String> {
    let names = cell_names(x);
    for c in canonical_order(x, &names) {
        let cell = x.cell(c);
        let degree: Vec<String> = cell.degree.iter().map(|p| p.to_string()).collect();
        let _ = write!(out, "cell {} {}", names[c.index()], degree.join(","));
        if cell.degree.iter().any(|&p| p > 0) {
            out.push_str(" :");
            for d in 0..D {
                if d > 0 {
                    out.push_str(" |");
                }
                for f in &cell.faces[d] {
                    out.push(' ');
                    out.push_str(&render_ref(f, &names));
                }
            }
        }
        out.push('\n');
    }
    names
}

fn write_truncation(out: &mut String, t: Option<Truncation>) {
    if let Some(t) = t {
        let _ = writeln!(out, "truncation {} {}", t.bound, if t.exact { "exact" } else { "truncated" });
    }
}

fn write_category(out: &mut String, c: &FiniteCategory) {
    for o in c.objects() {
        let _ = writeln!(out, "object {o}");
    }
    for (i, a) in c.arrows().iter().enumerate() {
        let _ = write!(out, "arrow {} {} {}", a.name, c.objects()[a.source], c.objects()[a.target]);
        out.push_str(if c.is_identity(i) { " identity\n" } else { "\n" });
    }
    let mut comps: Vec<(usize, usize, usize)> = c
        .composites()
        .into_iter()
        .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
        .collect();
    comps.sort_unstable();
    for (g, f, h) in comps {
        let _ = writeln!(out, "compose {} {} {}", c.arrow(g).name, c.arrow(f).name, c.arrow(h).name);
    }
}

fn write_images(out: &mut String, m: &SimplicialMap) {
    let src = cell_names(m.source());
    let tgt = cell_names(m.target());
    for c in canonical_order(m.source(), &src) {
        let _ = writeln!(out, "map {} {}", src[c.index()], render_ref(m.image(c), &tgt));
    }
}

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    let mut out = format!("segalkit {VERSION}\nkind {}\n", doc.kind());
    match doc {
        Document::Simplicial(x, t) => {
            write_truncation(&mut out, *t);
            write_cells(&mut out, x);
        }
        Document::Bisimplicial(x, t) => {
            write_truncation(&mut out, *t);
            write_cells(&mut out, x);
        }
        Document::Category(c) => write_category(&mut out, &sanitized_category(c)),
        Document::Map(m) => {
            out.push_str("begin source\n");
            write_cells(&mut out, m.source());
            out.push_str("end\nbegin target\n");
            write_cells(&mut out, m.target());
            out.push_str("end\n");
            write_images(&mut out, m);
        }
        Document::Presheaf(p) => {
            let c = sanitized_category(&p.index);
            out.push_str("begin index\n");
            write_category(&mut out, &c);
            out.push_str("end\n");
            for (o, x) in p.sections.iter().enumerate() {
                let _ = writeln!(out, "begin section {}", c.objects()[o]);
                write_cells(&mut out, x);
                out.push_str("end\n");
            }
            for f in (0..c.arrow_count()).filter(|&f| !c.is_identity(f)) {
                let _ = writeln!(out, "begin restriction {}", c.arrow(f).name);
                write_images(&mut out, &p.restrictions[f]);
                out.push_str("end\n");
            }
        }
    }
    out
}

/// The same category with names safe for the grammar and unique.
fn sanitized_category(c: &FiniteCategory) -> FiniteCategory {
    fn fix(names: Vec<String>, prefix: &str) -> Vec<String> {
        let clean: Vec<String> = names
            .iter()
            .map(|s| s.chars().map(|ch| if ch.is_whitespace() || RESERVED.contains(&ch) { '_' } else { ch }).collect())
            .collect();
        let unique: HashSet<&String> = clean.iter().collect();
        if unique.len() == clean.len() && clean.iter().all(|s| !s.is_empty()) {
            clean
        } else {
            (0..clean.len()).map(|i| format!("{prefix}{i}")).collect()
        }
    }
    let objects = fix(c.objects().to_vec(), "o");
    let arrow_names = fix(c.arrows().iter().map(|a| a.name.clone()).collect(), "a");
    if objects == c.objects() && arrow_names.iter().zip(c.arrows()).all(|(n, a)| *n == a.name) {
        return c.clone();
    }
    let arrows = c
        .arrows()
        .iter()
        .zip(arrow_names)
        .map(|(a, name)| Arrow { name, source: a.source, target: a.target })
        .collect();
    let identities = (0..c.object_count()).map(|o| c.identity(o)).collect();
    FiniteCategory::new(objects, arrows, identities, &c.composites()).expect("renaming keeps the laws")
}

#[cfg(test)]
mod tests {
    use super::*;
    use segalkit::standard::{boundary, standard};

    fn round_trip(doc: &Document) {
        let text = serialize(doc);
        let again = serialize(&parse(&text).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn complexes_round_trip() {
        for (_, x) in segalkit::corpus::simplicial_sets() {
            round_trip(&Document::Simplicial(x, None));
        }
        for (_, x) in segalkit::corpus::bisimplicial_sets() {
            round_trip(&Document::Bisimplicial(x, Some(Truncation { bound: 3, exact: false })));
        }
    }

    #[test]
    fn categories_round_trip() {
        for (_, c) in segalkit::corpus::small_categories() {
            let text = serialize(&Document::Category(c.clone()));
            let Document::Category(d) = parse(&text).unwrap() else { panic!() };
            assert!(segalkit::category::find_category_isomorphism(&c, &d).is_some());
            round_trip(&Document::Category(d));
        }
    }

    #[test]
    fn hand_written_triangle() {
        let text = "segalkit 1\nkind simplicial\ncell t 2 : bc ac ab\ncell ab 1 : b a\ncell ac 1 : c a\ncell bc 1 : c b\ncell a 0\ncell b 0\ncell c 0\n";
        let Document::Simplicial(x, None) = parse(text).unwrap() else { panic!() };
        assert!(segalkit::hom::is_isomorphic(&x, &Arc::new(standard(2))));
        assert!(serialize(&Document::Simplicial(x, None)).starts_with("segalkit 1\nkind simplicial\ncell a 0\n"));
    }

    #[test]
    fn errors_have_positions() {
        let dangling = "segalkit 1\nkind simplicial\ncell a 0\ncell e 1 : a   zz\n";
        let e = parse(dangling).unwrap_err();
        assert_eq!((e.line, e.column), (4, 16));
        assert!(e.message.contains("zz"));
        let word = "segalkit 1\nkind simplicial\ncell a 0\ncell e 1 : a@s0s1 a\n";
        let e = parse(word).unwrap_err();
        assert_eq!((e.line, e.column), (4, 12));
        assert!(e.message.contains("strictly decreasing"));
        let dup = "segalkit 1\nkind simplicial\ncell a 0\ncell a 0\n";
        assert!(parse(dup).unwrap_err().message.contains("duplicate"));
        assert_eq!(parse("segalkit 2\nkind simplicial\n").unwrap_err().column, 10);
    }

    #[test]
    fn maps_round_trip() {
        let i = segalkit::standard::boundary_inclusion(2).unwrap();
        round_trip(&Document::Map(i.clone()));
        let Document::Map(j) = parse(&serialize(&Document::Map(i))).unwrap() else { panic!() };
        assert!(segalkit::hom::is_isomorphic(j.source(), &Arc::new(boundary(2).unwrap())));
        assert!(j.is_mono());
    }
}
