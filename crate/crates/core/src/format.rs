//! Text formats for signed digraphs, Boolean networks and digraphs.
//!
//! Every format starts with a header `<keyword> <n>` and then has one item
//! per line. `#` starts a comment running to the end of the line; blank
//! lines are ignored.
//!
//! ```text
//! sdigraph 2        boolnet 2              digraph 2
//! 1 2 +             1 : 2 | 01             1 2
//! 2 1 -             2 : 1 2 | 0111         2 2
//! ```
//!
//! A truth table lists `f_v` on the assignments of its inputs in order,
//! the first input being the most significant bit. The writers are the
//! `Display` impls of the three types.

use std::collections::HashSet;

use crate::boolnet::{BooleanNetwork, LocalFunction};
use crate::error::{ParseError, ParseErrorKind, Result};
use crate::kernels::Digraph;
use crate::sgraph::{Arc, Sign, SignedDigraph};

// A token and its 1-based column.
#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn error(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.number,
            column,
            kind,
        }
    }

    fn malformed(&self) -> ParseError {
        let column = self.tokens.first().map_or(1, |t| t.column);
        self.error(column, ParseErrorKind::MalformedLine(self.text.trim().to_string()))
    }
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push((s, content.len()));
    }
    tokens
        .into_iter()
        .map(|(s, e)| Token {
            text: &content[s..e],
            column: content[..s].chars().count() + 1,
        })
        .collect()
}

// Non-empty lines after comment removal.
fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let tokens = tokenize(l);
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            text: l,
            tokens,
        })
    })
}

fn header<'a>(lines: &mut impl Iterator<Item = Line<'a>>, keyword: &str) -> Result<usize, ParseError> {
    let Some(line) = lines.next() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::MissingHeader,
        });
    };
    let bad = || line.error(1, ParseErrorKind::MalformedHeader(line.text.trim().to_string()));
    match line.tokens.as_slice() {
        [k, n] if k.text == keyword => match n.text.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(line.error(n.column, ParseErrorKind::MalformedHeader(line.text.trim().to_string()))),
        },
        _ => Err(bad()),
    }
}

fn vertex(line: &Line<'_>, t: Token<'_>, n: usize) -> Result<usize, ParseError> {
    match t.text.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v),
        _ => Err(line.error(t.column, ParseErrorKind::BadVertex(t.text.to_string()))),
    }
}

/// Reads the `sdigraph` format.
pub fn parse_sdigraph(text: &str) -> Result<SignedDigraph> {
    let mut it = lines(text);
    let n = header(&mut it, "sdigraph")?;
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    for line in it {
        let [u, v, s] = line.tokens[..] else {
            return Err(line.malformed().into());
        };
        let (u_id, v_id) = (vertex(&line, u, n)?, vertex(&line, v, n)?);
        let sign = match s.text {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            _ => return Err(line.error(s.column, ParseErrorKind::BadSign(s.text.to_string())).into()),
        };
        let a = Arc::new(u_id, v_id, sign);
        if !seen.insert(a) {
            return Err(line.error(u.column, ParseErrorKind::DuplicateArc).into());
        }
        arcs.push(a);
    }
    SignedDigraph::new(n, arcs)
}

/// Reads the `digraph` format.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut it = lines(text);
    let n = header(&mut it, "digraph")?;
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    for line in it {
        let [u, v] = line.tokens[..] else {
            return Err(line.malformed().into());
        };
        let pair = (vertex(&line, u, n)?, vertex(&line, v, n)?);
        if !seen.insert(pair) {
            return Err(line.error(u.column, ParseErrorKind::DuplicateArc).into());
        }
        arcs.push(pair);
    }
    Digraph::new(n, arcs)
}

/// Reads the `boolnet` format; every vertex needs exactly one line.
pub fn parse_boolnet(text: &str) -> Result<BooleanNetwork> {
    let mut it = lines(text);
    let n = header(&mut it, "boolnet")?;
    let mut locals: Vec<Option<LocalFunction>> = vec![None; n];
    let mut last_line = 1;
    for line in it {
        last_line = line.number;
        let t = &line.tokens;
        let colon = t.iter().position(|t| t.text == ":");
        let bar = t.iter().position(|t| t.text == "|");
        let (Some(1), Some(bar)) = (colon, bar) else {
            return Err(line.malformed().into());
        };
        if bar + 2 != t.len() {
            return Err(line.malformed().into());
        }
        let v = vertex(&line, t[0], n)?;
        let mut inputs = Vec::with_capacity(bar - 2);
        for &tok in &t[2..bar] {
            let u = vertex(&line, tok, n)?;
            if inputs.contains(&u) {
                let kind = ParseErrorKind::Invalid(format!("input {u} listed twice"));
                return Err(line.error(tok.column, kind).into());
            }
            inputs.push(u);
        }
        let table_tok = t[bar + 1];
        let mut table = Vec::with_capacity(table_tok.text.len());
        for (i, c) in table_tok.text.chars().enumerate() {
            match c {
                '0' => table.push(false),
                '1' => table.push(true),
                _ => {
                    let kind = ParseErrorKind::BadTableDigit(c);
                    return Err(line.error(table_tok.column + i, kind).into());
                }
            }
        }
        let expected = 1usize
            .checked_shl(inputs.len() as u32)
            .filter(|_| inputs.len() < 32)
            .unwrap_or(usize::MAX);
        if table.len() != expected {
            let kind = ParseErrorKind::BadTableLength {
                expected,
                actual: table.len(),
            };
            return Err(line.error(table_tok.column, kind).into());
        }
        if locals[v - 1].is_some() {
            return Err(line.error(t[0].column, ParseErrorKind::DuplicateVertex(v)).into());
        }
        locals[v - 1] = Some(LocalFunction::new(inputs, table)?);
    }
    let locals = locals
        .into_iter()
        .enumerate()
        .map(|(i, f)| {
            f.ok_or(ParseError {
                line: last_line,
                column: 1,
                kind: ParseErrorKind::MissingVertex(i + 1),
            })
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    BooleanNetwork::new(locals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::generate::{figure1, simple_graph};
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn parse_err(r: Result<impl std::fmt::Debug>) -> ParseError {
        match r {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn reads_examples() {
        let g = parse_sdigraph("sdigraph 1\n1 1 -\n").unwrap();
        assert_eq!(g, SignedDigraph::new(1, [Arc::neg(1, 1)]).unwrap());
        let f = parse_boolnet("boolnet 2\n1 : 2 | 01\n2 : 1 | 01\n").unwrap();
        assert_eq!(
            f,
            BooleanNetwork::new(vec![LocalFunction::copy_of(2), LocalFunction::copy_of(1)]).unwrap()
        );
        let c = parse_boolnet("boolnet 1\n1 : | 1  # constant\n").unwrap();
        assert_eq!(c.local(1), &LocalFunction::constant(true));
        let d = parse_digraph("# a 2-cycle\ndigraph 2\n\n1 2\n2 1 # back\n").unwrap();
        assert_eq!(d, Digraph::new(2, [(1, 2), (2, 1)]).unwrap());
    }

    #[test]
    fn diagnostics_are_distinct_and_located() {
        let e = parse_err(parse_sdigraph(""));
        assert_eq!(e.kind, ParseErrorKind::MissingHeader);
        let e = parse_err(parse_sdigraph("graph 2\n"));
        assert!(matches!(e.kind, ParseErrorKind::MalformedHeader(_)));
        let e = parse_err(parse_sdigraph("sdigraph 2\n1 3 +\n"));
        assert_eq!((e.line, e.column, e.kind), (2, 3, ParseErrorKind::BadVertex("3".into())));
        let e = parse_err(parse_sdigraph("sdigraph 2\n1 2 *\n"));
        assert_eq!((e.line, e.column), (2, 5));
        assert!(matches!(e.kind, ParseErrorKind::BadSign(_)));
        let e = parse_err(parse_sdigraph("sdigraph 2\n1 2 +\n# again\n  1 2 +\n"));
        assert_eq!((e.line, e.column, e.kind), (4, 3, ParseErrorKind::DuplicateArc));
        let e = parse_err(parse_boolnet("boolnet 2\n1 : 2 | 011\n2 : | 0\n"));
        assert_eq!(
            (e.line, e.column, e.kind),
            (2, 9, ParseErrorKind::BadTableLength { expected: 2, actual: 3 })
        );
        let e = parse_err(parse_boolnet("boolnet 2\n1 : 2 | 0a\n"));
        assert_eq!((e.column, e.kind), (10, ParseErrorKind::BadTableDigit('a')));
        let e = parse_err(parse_boolnet("boolnet 2\n1 : | 0\n"));
        assert_eq!(e.kind, ParseErrorKind::MissingVertex(2));
        let e = parse_err(parse_boolnet("boolnet 1\n1 : | 0\n1 : | 1\n"));
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::DuplicateVertex(1)));
        let e = parse_err(parse_boolnet("boolnet 1\n1 2 | 0\n"));
        assert!(matches!(e.kind, ParseErrorKind::MalformedLine(_)));
        let e = parse_err(parse_digraph("digraph 0\n"));
        assert_eq!(e.column, 9);
    }

    #[test]
    fn error_message_names_the_position() {
        let msg = parse_sdigraph("sdigraph 2\n1 9 +\n").unwrap_err().to_string();
        assert_eq!(msg, "line 2, column 3: bad vertex id `9`");
    }

    #[test]
    fn writers_round_trip() {
        let g = figure1(7).unwrap();
        assert_eq!(parse_sdigraph(&g.to_string()).unwrap(), g);
        let f = crate::boolnet::sample_consistent(&g, 11).unwrap();
        assert_eq!(parse_boolnet(&f.to_string()).unwrap(), f);
        let d = crate::kernels::digraph(3, 0b101_110_011);
        assert_eq!(parse_digraph(&d.to_string()).unwrap(), d);
        let text = "sdigraph 3\n1 2 +\n1 2 -\n3 3 -\n";
        assert_eq!(parse_sdigraph(text).unwrap().to_string(), text);
        assert_eq!(simple_graph(2, 5).to_string(), "sdigraph 2\n1 1 -\n1 2 +\n");
    }

    proptest! {
        #[test]
        fn sdigraph_round_trip(g in arb_graph(6)) {
            let text = g.to_string();
            let back = parse_sdigraph(&text).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, g);
        }

        #[test]
        fn boolnet_round_trip(g in arb_graph(5), seed in any::<u64>()) {
            prop_assume!(g.vertices().all(|v| g.in_neighbors(v).len() <= 4));
            if let Ok(f) = crate::boolnet::sample_consistent(&g, seed) {
                let text = f.to_string();
                let back = parse_boolnet(&text).unwrap();
                prop_assert_eq!(back.to_string(), text);
                prop_assert_eq!(back, f);
            }
        }

        #[test]
        fn digraph_round_trip(n in 1usize..=4, code in any::<u64>()) {
            let d = crate::kernels::digraph(n, code & ((1 << (n * n)) - 1));
            let text = d.to_string();
            prop_assert_eq!(parse_digraph(&text).unwrap().to_string(), text);
        }
    }
}
