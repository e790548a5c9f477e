//! Variable tables: the ordered, immutable set of formal variables a graded
//! element may mention.

use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug)]
struct VarDef {
    name: String,
    degree: u16,
    parity: Parity,
}

/// Ordered list of `(name, degree, parity)` variable definitions.
///
/// Names are unique, even-parity variables have even degree, and at most one
/// odd-parity variable (the odd marker, degree 1) is allowed.  Tables are
/// shared behind `Arc` and immutable once any element references them.
#[derive(Debug)]
pub struct VariableTable {
    entries: Vec<VarDef>,
    odd_index: Option<usize>,
}

impl VariableTable {
    pub fn builder() -> VariableTableBuilder {
        VariableTableBuilder { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].name
    }

    pub fn degree(&self, i: usize) -> u16 {
        self.entries[i].degree
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.entries[i].parity
    }

    /// Index of the odd marker variable, if the table has one.
    pub fn odd_index(&self) -> Option<usize> {
        self.odd_index
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// Structural equality; used to validate that two elements may interact.
    pub fn same_table(a: &Arc<VariableTable>, b: &Arc<VariableTable>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.entries.len() == b.entries.len()
                && a.entries
                    .iter()
                    .zip(&b.entries)
                    .all(|(x, y)| x.name == y.name && x.degree == y.degree && x.parity == y.parity))
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}:{}", e.name, e.degree)?;
            if e.parity == Parity::Odd {
                write!(f, " (odd)")?;
            }
        }
        Ok(())
    }
}

pub struct VariableTableBuilder {
    entries: Vec<VarDef>,
}

impl VariableTableBuilder {
    /// Add an even variable of the given (even, positive) degree.
    pub fn even(mut self, name: &str, degree: u16) -> Self {
        assert!(degree > 0 && degree % 2 == 0, "even variable `{name}` needs even positive degree");
        self.entries.push(VarDef { name: name.to_string(), degree, parity: Parity::Even });
        self
    }

    /// Add the odd marker variable (degree 1; at most one per table).
    pub fn odd_marker(mut self, name: &str) -> Self {
        self.entries.push(VarDef { name: name.to_string(), degree: 1, parity: Parity::Odd });
        self
    }

    pub fn build(self) -> Arc<VariableTable> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            assert!(seen.insert(e.name.clone()), "duplicate variable name `{}`", e.name);
        }
        let odd: Vec<usize> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.parity == Parity::Odd)
            .map(|(i, _)| i)
            .collect();
        assert!(odd.len() <= 1, "at most one odd marker variable");
        Arc::new(VariableTable { odd_index: odd.first().copied(), entries: self.entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_indexes() {
        let t = VariableTable::builder().even("x1", 2).even("c2w", 4).odd_marker("omega").build();
        assert_eq!(t.len(), 3);
        assert_eq!(t.index_of("c2w"), Some(1));
        assert_eq!(t.degree(1), 4);
        assert_eq!(t.odd_index(), Some(2));
        assert_eq!(t.degree(2), 1);
    }

    #[test]
    #[should_panic(expected = "duplicate")]
    fn rejects_duplicates() {
        let _ = VariableTable::builder().even("x", 2).even("x", 4).build();
    }

    #[test]
    #[should_panic(expected = "even positive degree")]
    fn rejects_odd_degree_even_variable() {
        let _ = VariableTable::builder().even("x", 3).build();
    }
}
