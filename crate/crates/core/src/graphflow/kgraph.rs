use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("vertex V{0} has an edge to itself")]
    Tadpole(usize),
    #[error("expected {expected} ordered edge pairs, found {found}")]
    WrongOutDegree { expected: usize, found: usize },
    #[error("edge target V{target} out of range (graph has {count} internal vertices)")]
    TargetOutOfRange { target: usize, count: usize },
    #[error("sink S{sink} must receive exactly one edge, receives {count}")]
    SinkInDegree { sink: usize, count: usize },
    #[error("a graph needs at least one internal vertex")]
    Empty,
}

/// Where an out-going edge lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// `0` for the first sink, `1` for the second.
    Sink(usize),
    /// Zero-based internal vertex.
    Internal(usize),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Sink(s) => write!(f, "S{}", s + 1),
            Target::Internal(v) => write!(f, "V{}", v + 1),
        }
    }
}

/// An oriented graph on two sinks whose internal vertices each issue an
/// ordered pair of edges `(L, R)`. Every internal vertex carries a copy of
/// the bi-vector, with `L` feeding its first index and `R` its second.
///
/// Text form: `"<k>; (t,t) (t,t) ..."` with targets `S1`, `S2`, `V<i>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KGraph {
    edges: Vec<[Target; 2]>,
}

impl KGraph {
    /// Validates: no tadpoles, targets in range, one edge into each sink.
    pub fn new(edges: Vec<[Target; 2]>) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let count = edges.len();
        let mut sink_in = [0usize; 2];
        for (v, pair) in edges.iter().enumerate() {
            for t in pair {
                match *t {
                    Target::Internal(w) if w == v => return Err(GraphError::Tadpole(v + 1)),
                    Target::Internal(w) if w >= count => {
                        return Err(GraphError::TargetOutOfRange {
                            target: w + 1,
                            count,
                        })
                    }
                    Target::Internal(_) => {}
                    Target::Sink(s) => sink_in[s] += 1,
                }
            }
        }
        for (s, &c) in sink_in.iter().enumerate() {
            if c != 1 {
                return Err(GraphError::SinkInDegree {
                    sink: s + 1,
                    count: c,
                });
            }
        }
        Ok(Self { edges })
    }

    pub fn internal_count(&self) -> usize {
        self.edges.len()
    }

    /// Ordered out-edges `(L, R)` per internal vertex.
    pub fn edges(&self) -> &[[Target; 2]] {
        &self.edges
    }

    /// The same graph with the roles of the two sinks exchanged.
    pub fn swap_sinks(&self) -> Self {
        let swap = |t: Target| match t {
            Target::Sink(s) => Target::Sink(1 - s),
            other => other,
        };
        Self {
            edges: self
                .edges
                .iter()
                .map(|[l, r]| [swap(*l), swap(*r)])
                .collect(),
        }
    }

    /// `• <- P -> •`, the bi-vector itself.
    pub fn wedge() -> Self {
        WEDGE.parse().expect("builtin graph")
    }

    /// The tetrahedron encoding the first flow.
    pub fn gamma1_tetrahedron() -> Self {
        GAMMA1.parse().expect("builtin graph")
    }

    /// The tetrahedron encoding the second flow.
    pub fn gamma2_tetrahedron() -> Self {
        GAMMA2.parse().expect("builtin graph")
    }

    /// Four vertices with a two-edge loop; its operator equals minus itself
    /// by antisymmetry and therefore vanishes for every skew bi-vector.
    pub fn skew_vanishing() -> Self {
        SKEW_VANISHING.parse().expect("builtin graph")
    }
}

pub const WEDGE: &str = "1; (S1,S2)";
pub const GAMMA1: &str = "4; (S1,S2) (V1,V4) (V1,V2) (V1,V3)";
pub const GAMMA2: &str = "4; (S1,V4) (V1,S2) (V2,V1) (V3,V2)";
pub const SKEW_VANISHING: &str = "4; (S1,S2) (V1,V4) (V1,V4) (V2,V3)";

impl fmt::Display for KGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.edges.len())?;
        for [l, r] in &self.edges {
            write!(f, " ({l},{r})")?;
        }
        Ok(())
    }
}

impl FromStr for KGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer {
            src: s.as_bytes(),
            pos: 0,
        };
        let count = lx.number()?;
        lx.expect(b';')?;
        let mut edges = Vec::new();
        while !lx.at_end() {
            let open = lx.pos;
            lx.expect(b'(')?;
            let mut targets = vec![lx.target()?];
            while lx.eat(b',') {
                targets.push(lx.target()?);
            }
            lx.expect(b')')?;
            let pair: [Target; 2] =
                targets
                    .try_into()
                    .map_err(|t: Vec<Target>| GraphError::Syntax {
                        pos: open,
                        msg: format!("vertex must issue exactly 2 edges, found {}", t.len()),
                    })?;
            edges.push(pair);
        }
        if edges.len() != count {
            return Err(GraphError::WrongOutDegree {
                expected: count,
                found: edges.len(),
            });
        }
        KGraph::new(edges)
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn err(&self, msg: impl Into<String>) -> GraphError {
        GraphError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), GraphError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize, GraphError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| GraphError::Syntax {
                pos: start,
                msg: "expected a number".into(),
            })
    }

    fn target(&mut self) -> Result<Target, GraphError> {
        self.skip_ws();
        let at = self.pos;
        let kind = self.src.get(self.pos).copied();
        self.pos += 1;
        let idx = self.number()?;
        match (kind, idx) {
            (Some(b'S'), 1 | 2) => Ok(Target::Sink(idx - 1)),
            (Some(b'V'), i) if i >= 1 => Ok(Target::Internal(i - 1)),
            _ => Err(GraphError::Syntax {
                pos: at,
                msg: "expected S1, S2 or V<i>".into(),
            }),
        }
    }
}
