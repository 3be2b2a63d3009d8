//! Reading graphs from graph6 line streams produced by other tools.

use std::collections::HashMap;
use std::io::BufRead;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::SearchError;
use crate::graph::Graph;
use crate::graph6;

/// One parsed line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ingested {
    /// 1-based line number in the input.
    pub line: usize,
    pub graph: Graph,
    /// With duplicate checking on: the line of an earlier isomorphic graph.
    pub duplicate_of: Option<usize>,
}

/// Iterator over the graphs of a graph6 stream, in input order. Blank
/// lines are skipped; parse failures carry their line number.
pub struct Graph6Stream<R> {
    reader: R,
    line: usize,
    buf: String,
    seen: Option<HashMap<CanonicalForm, usize>>,
}

impl<R: BufRead> Graph6Stream<R> {
    pub fn new(reader: R) -> Self {
        Graph6Stream { reader, line: 0, buf: String::new(), seen: None }
    }

    /// Flags graphs isomorphic to an earlier line.
    pub fn with_duplicate_check(mut self) -> Self {
        self.seen = Some(HashMap::new());
        self
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = Result<Ingested, SearchError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            let text = self.buf.trim_end_matches(['\n', '\r']);
            if text.trim().is_empty() {
                continue;
            }
            let graph = match graph6::parse(text) {
                Ok(g) => g,
                Err(source) => return Some(Err(SearchError::Parse { line: self.line, source })),
            };
            let duplicate_of = self.seen.as_mut().and_then(|seen| {
                let line = self.line;
                match seen.entry(canonical_form(&graph)) {
                    std::collections::hash_map::Entry::Occupied(e) => Some(*e.get()),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(line);
                        None
                    }
                }
            });
            return Some(Ok(Ingested { line: self.line, graph, duplicate_of }));
        }
    }
}

/// Convenience wrapper over [`Graph6Stream`].
pub fn ingest_graph6_stream<R: BufRead>(reader: R, duplicate_check: bool) -> Graph6Stream<R> {
    let stream = Graph6Stream::new(reader);
    if duplicate_check {
        stream.with_duplicate_check()
    } else {
        stream
    }
}
