//! Optional record of every local step taken while building a flow.

#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub enabled: bool,
    pub lines: Vec<String>,
}

impl Trace {
    pub fn new(enabled: bool) -> Trace {
        Trace { enabled, lines: Vec::new() }
    }

    /// One step: which lemma acted on which subgraph, the boundary string
    /// before and after, and the condition reached.
    pub fn step(&mut self, lemma: &str, h: &str, before: &str, after: &str, cond: &str) {
        if self.enabled {
            self.lines.push(format!("lemma={lemma} h={h} before={before} after={after} cond={cond}"));
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        if self.enabled {
            self.lines.push(text.into());
        }
    }
}
