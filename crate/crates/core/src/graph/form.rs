use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::SimpleGraph;

/// Expression over complete graphs built with disjoint union and join.
///
/// Only normalized forms are canonical: nested unions and joins are
/// flattened, complete children of a join are merged, and children are
/// sorted. Equality on normalized forms is equality of shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StructuralForm {
    Complete(usize),
    Union(Vec<StructuralForm>),
    Join(Vec<StructuralForm>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("unexpected {found} at offset {offset}")]
    Unexpected { found: String, offset: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("K_0 and 0-fold multiples are not allowed (offset {0})")]
    Zero(usize),
    #[error("number too large at offset {0}")]
    Overflow(usize),
}

impl StructuralForm {
    fn rank(&self) -> u8 {
        match self {
            StructuralForm::Complete(_) => 0,
            StructuralForm::Union(_) => 1,
            StructuralForm::Join(_) => 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            StructuralForm::Complete(n) => *n,
            StructuralForm::Union(c) | StructuralForm::Join(c) => c.iter().map(Self::vertex_count).sum(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            StructuralForm::Complete(n) => n * n.saturating_sub(1) / 2,
            StructuralForm::Union(c) => c.iter().map(Self::edge_count).sum(),
            StructuralForm::Join(c) => {
                let inner: usize = c.iter().map(Self::edge_count).sum();
                let sizes: Vec<usize> = c.iter().map(Self::vertex_count).collect();
                let total: usize = sizes.iter().sum();
                let cross = (total * total - sizes.iter().map(|s| s * s).sum::<usize>()) / 2;
                inner + cross
            }
        }
    }

    /// `m` disjoint copies of `K_n`.
    pub fn copies(m: usize, n: usize) -> Self {
        if m == 1 {
            StructuralForm::Complete(n)
        } else {
            StructuralForm::Union(vec![StructuralForm::Complete(n); m])
        }
    }

    pub fn normalize(self) -> Self {
        match self {
            StructuralForm::Complete(n) => StructuralForm::Complete(n),
            StructuralForm::Union(children) => {
                let mut flat = Vec::new();
                for c in children.into_iter().map(Self::normalize) {
                    match c {
                        StructuralForm::Union(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    return flat.pop().unwrap();
                }
                flat.sort();
                StructuralForm::Union(flat)
            }
            StructuralForm::Join(children) => {
                let mut flat = Vec::new();
                let mut clique = 0;
                for c in children.into_iter().map(Self::normalize) {
                    match c {
                        StructuralForm::Join(inner) => {
                            for d in inner {
                                match d {
                                    StructuralForm::Complete(k) => clique += k,
                                    other => flat.push(other),
                                }
                            }
                        }
                        StructuralForm::Complete(k) => clique += k,
                        other => flat.push(other),
                    }
                }
                if clique > 0 {
                    flat.push(StructuralForm::Complete(clique));
                }
                if flat.len() == 1 {
                    return flat.pop().unwrap();
                }
                flat.sort();
                StructuralForm::Join(flat)
            }
        }
    }

    fn is_uniform_union(&self) -> bool {
        match self {
            StructuralForm::Union(c) => c.iter().all(|x| matches!(x, StructuralForm::Complete(_)) && *x == c[0]),
            _ => false,
        }
    }
}

impl Ord for StructuralForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.vertex_count().cmp(&other.vertex_count()))
            .then_with(|| match (self, other) {
                (StructuralForm::Union(a), StructuralForm::Union(b)) | (StructuralForm::Join(a), StructuralForm::Join(b)) => {
                    a.cmp(b)
                }
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for StructuralForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// ASCII rendering such as `K_1 v (K_4 u 3K_2)`: `u` is disjoint union,
/// `v` is join. Union members are listed largest first, join members
/// smallest first. [`parse_form`] reads it back.
impl fmt::Display for StructuralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralForm::Complete(n) => write!(f, "K_{n}"),
            StructuralForm::Union(children) => {
                let mut sorted: Vec<&StructuralForm> = children.iter().collect();
                sorted.sort_by(|a, b| b.cmp(a));
                let mut parts = Vec::new();
                let mut i = 0;
                while i < sorted.len() {
                    let mut j = i;
                    while j < sorted.len() && sorted[j] == sorted[i] {
                        j += 1;
                    }
                    match sorted[i] {
                        StructuralForm::Complete(n) if j - i > 1 => parts.push(format!("{}K_{n}", j - i)),
                        StructuralForm::Complete(n) => parts.push(format!("K_{n}")),
                        other => {
                            for _ in i..j {
                                parts.push(format!("({other})"));
                            }
                        }
                    }
                    i = j;
                }
                f.write_str(&parts.join(" u "))
            }
            StructuralForm::Join(children) => {
                let mut sorted: Vec<&StructuralForm> = children.iter().collect();
                sorted.sort();
                let parts: Vec<String> = sorted
                    .iter()
                    .map(|c| match c {
                        StructuralForm::Union(_) if !c.is_uniform_union() => format!("({c})"),
                        StructuralForm::Join(_) => format!("({c})"),
                        _ => c.to_string(),
                    })
                    .collect();
                f.write_str(&parts.join(" v "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(usize),
    K,
    Union,
    Join,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, FormError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() || c == '_' => continue,
            '0'..='9' => {
                let mut value = c.to_digit(10).unwrap() as usize;
                while let Some(&(_, d)) = chars.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit as usize))
                        .ok_or(FormError::Overflow(i))?;
                    chars.next();
                }
                Tok::Num(value)
            }
            '₀'..='₉' => {
                let mut value = c as usize - '₀' as usize;
                while let Some(&(_, d)) = chars.peek() {
                    if !('₀'..='₉').contains(&d) {
                        break;
                    }
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as usize - '₀' as usize))
                        .ok_or(FormError::Overflow(i))?;
                    chars.next();
                }
                Tok::Num(value)
            }
            'K' => Tok::K,
            'u' | 'U' | '∪' => Tok::Union,
            'v' | 'V' | '∨' => Tok::Join,
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => return Err(FormError::Unexpected { found: format!("{other:?}"), offset: i }),
        };
        out.push((tok, i));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.0)
    }

    fn next(&mut self) -> Result<(Tok, usize), FormError> {
        let t = self.toks.get(self.pos).copied().ok_or(FormError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn unexpected((tok, offset): (Tok, usize)) -> FormError {
        FormError::Unexpected { found: format!("{tok:?}"), offset }
    }

    fn join(&mut self) -> Result<StructuralForm, FormError> {
        let mut parts = vec![self.union()?];
        while self.peek() == Some(Tok::Join) {
            self.pos += 1;
            parts.push(self.union()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { StructuralForm::Join(parts) })
    }

    fn union(&mut self) -> Result<StructuralForm, FormError> {
        let mut parts = vec![self.atom()?];
        while self.peek() == Some(Tok::Union) {
            self.pos += 1;
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { StructuralForm::Union(parts) })
    }

    fn atom(&mut self) -> Result<StructuralForm, FormError> {
        let t = self.next()?;
        match t.0 {
            Tok::Open => {
                let inner = self.join()?;
                match self.next()? {
                    (Tok::Close, _) => Ok(inner),
                    other => Err(Self::unexpected(other)),
                }
            }
            Tok::Num(m) => {
                if m == 0 {
                    return Err(FormError::Zero(t.1));
                }
                match self.next()? {
                    (Tok::K, _) => {}
                    other => return Err(Self::unexpected(other)),
                }
                let n = self.size()?;
                Ok(StructuralForm::copies(m, n))
            }
            Tok::K => Ok(StructuralForm::Complete(self.size()?)),
            _ => Err(Self::unexpected(t)),
        }
    }

    fn size(&mut self) -> Result<usize, FormError> {
        match self.next()? {
            (Tok::Num(0), at) => Err(FormError::Zero(at)),
            (Tok::Num(n), _) => Ok(n),
            other => Err(Self::unexpected(other)),
        }
    }
}

/// Parses forms such as `K_1 v (K_4 u 3K_2)`, `K3 v 2K4` or
/// `K₁∨(K₆∪3K₃)`. Join binds more loosely than union. The result is
/// normalized.
pub fn parse_form(text: &str) -> Result<StructuralForm, FormError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let form = p.join()?;
    if let Some(&t) = p.toks.get(p.pos) {
        return Err(Parser::unexpected(t));
    }
    Ok(form.normalize())
}

/// Builds the graph of `form`, numbering vertices in leaf order.
pub fn realize(form: &StructuralForm) -> SimpleGraph {
    match form {
        StructuralForm::Complete(n) => SimpleGraph::complete(*n),
        StructuralForm::Union(c) => SimpleGraph::union(&c.iter().map(realize).collect::<Vec<_>>()),
        StructuralForm::Join(c) => SimpleGraph::join(&c.iter().map(realize).collect::<Vec<_>>()),
    }
}

/// Reads a graph as a union/join expression over complete graphs.
///
/// Complete graphs are leaves, disconnected graphs become unions of their
/// components, and otherwise all universal vertices are split off at once
/// as a join with a clique. Returns `None` when none of these applies
/// somewhere in the recursion, or for the empty graph.
pub fn recognize_structure(g: &SimpleGraph) -> Option<StructuralForm> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    if g.is_complete() {
        return Some(StructuralForm::Complete(n));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let parts = comps
            .iter()
            .map(|c| recognize_structure(&g.induced_subgraph(c)))
            .collect::<Option<Vec<_>>>()?;
        return Some(StructuralForm::Union(parts).normalize());
    }
    let universal = g.universal_vertices();
    if universal.is_empty() {
        return None;
    }
    let rest: Vec<usize> = (0..n).filter(|v| !universal.contains(v)).collect();
    let inner = recognize_structure(&g.induced_subgraph(&rest))?;
    Some(StructuralForm::Join(vec![StructuralForm::Complete(universal.len()), inner]).normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic_graphs;
    use proptest::prelude::*;
    use StructuralForm::*;

    fn f(s: &str) -> StructuralForm {
        parse_form(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(f("K_7"), Complete(7));
        assert_eq!(f("K_1 v (K_4 u 3K_2)").to_string(), "K_1 v (K_4 u 3K_2)");
        assert_eq!(f("K3 v 2K4").to_string(), "K_3 v 2K_4");
        assert_eq!(f("K₁∨(K₆∪3K₃)").to_string(), "K_1 v (K_6 u 3K_3)");
        assert_eq!(f("K_1 v ((K_2 v 2K_4) u 2K_2)").to_string(), "K_1 v ((K_2 v 2K_4) u 2K_2)");
        // union binds tighter
        assert_eq!(f("K_1 v K_2 u K_3"), Join(vec![Union(vec![Complete(2), Complete(3)]), Complete(1)]).normalize());
    }

    #[test]
    fn normalization_merges_cliques() {
        assert_eq!(f("K_2 v K_3"), Complete(5));
        assert_eq!(f("K_1 v (K_2 v 2K_1)"), f("K_3 v 2K_1"));
        assert_eq!(f("(K_1 u K_2) u K_3"), f("K_3 u K_2 u K_1"));
        assert_eq!(f("1K_4"), Complete(4));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_form(""), Err(FormError::UnexpectedEnd));
        assert!(matches!(parse_form("K_0"), Err(FormError::Zero(_))));
        assert!(matches!(parse_form("0K_3"), Err(FormError::Zero(_))));
        assert!(matches!(parse_form("K_3 x K_2"), Err(FormError::Unexpected { .. })));
        assert!(matches!(parse_form("(K_3"), Err(FormError::UnexpectedEnd)));
        assert!(matches!(parse_form("K_3)"), Err(FormError::Unexpected { .. })));
    }

    #[test]
    fn realize_sizes() {
        assert_eq!(realize(&f("K_7")), SimpleGraph::complete(7));
        assert_eq!(realize(&f("K_1 v (K_4 u 3K_2)")).vertex_count(), 11);
        assert_eq!(realize(&f("K_1 v (K_6 u 3K_3)")).vertex_count(), 16);
        for s in ["K_3 v 2K_4", "K_1 v ((K_2 v 2K_4) u 2K_2)", "K_1 v 3K_5"] {
            assert_eq!(realize(&f(s)).edge_count(), f(s).edge_count(), "{s}");
        }
    }

    #[test]
    fn recognition() {
        assert_eq!(recognize_structure(&SimpleGraph::cycle(5)), None);
        assert_eq!(recognize_structure(&SimpleGraph::new(0)), None);
        let g = realize(&f("K_3 v 2K_4"));
        assert_eq!(recognize_structure(&g), Some(Join(vec![Complete(3), Union(vec![Complete(4), Complete(4)])])));
        // a tail of a path is not a clique-join
        let p4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(recognize_structure(&p4), None);
    }

    fn recognizable(depth: u32) -> BoxedStrategy<StructuralForm> {
        let leaf = (1usize..=5).prop_map(Complete).boxed();
        if depth == 0 {
            return leaf;
        }
        let non_union = prop_oneof![
            leaf.clone(),
            (1usize..=3, union_of(depth - 1)).prop_map(|(k, u)| Join(vec![Complete(k), u]))
        ]
        .boxed();
        prop_oneof![
            2 => leaf,
            1 => prop::collection::vec(non_union, 2..=3).prop_map(Union),
            1 => (1usize..=3, union_of(depth - 1)).prop_map(|(k, u)| Join(vec![Complete(k), u])),
        ]
        .boxed()
    }

    fn union_of(depth: u32) -> BoxedStrategy<StructuralForm> {
        prop::collection::vec(recognizable(depth), 2..=3).prop_map(Union).boxed()
    }

    proptest! {
        #[test]
        fn round_trip(form in recognizable(2).prop_filter("at most 20 vertices", |f| f.vertex_count() <= 20)) {
            let form = form.normalize();
            let g = realize(&form);
            prop_assert_eq!(g.edge_count(), form.edge_count());
            let back = recognize_structure(&g).expect("recognizable by construction");
            prop_assert_eq!(&back, &form);
            prop_assert!(is_isomorphic_graphs(&realize(&back), &g).unwrap());
            prop_assert_eq!(parse_form(&form.to_string()).unwrap(), form);
        }
    }
}
