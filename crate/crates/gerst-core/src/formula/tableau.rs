use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::Formula;

/// What sits under one character of the tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableauMark {
    /// The coordinate `s_{ij}` of an eligible character.
    Label { symbol: usize, index: usize },
    /// An id symbol, which carries no coordinate.
    Id,
}

/// One marked character of the formula text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableauCell {
    /// Byte offset of the character in [`Tableau::text`].
    pub offset: usize,
    pub mark: TableauMark,
}

/// The formula text with each eligible character matched to its coordinate.
///
/// For a symbol `i` of valence `v > 0` the eligible characters are its
/// parentheses and commas, labelled `s_{i0}..s_{iv}` left to right; a symbol
/// of valence 0 is its own eligible character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub text: String,
    pub cells: Vec<TableauCell>,
}

impl Tableau {
    pub fn of(g: &Formula) -> Tableau {
        let mut t = Tableau { text: String::new(), cells: Vec::new() };
        t.push(g);
        t
    }

    fn mark(&mut self, mark: TableauMark) {
        self.cells.push(TableauCell { offset: self.text.len(), mark });
    }

    fn push(&mut self, g: &Formula) {
        match g {
            Formula::Sym(i, es) if es.is_empty() => {
                self.mark(TableauMark::Label { symbol: *i, index: 0 });
                let _ = write!(self.text, "{i}");
            }
            Formula::Sym(i, es) => {
                let _ = write!(self.text, "{i}");
                for (j, e) in es.iter().enumerate() {
                    self.mark(TableauMark::Label { symbol: *i, index: j });
                    self.text.push(if j == 0 { '(' } else { ',' });
                    self.push(e);
                }
                self.mark(TableauMark::Label { symbol: *i, index: es.len() });
                self.text.push(')');
            }
            Formula::Id => {
                self.mark(TableauMark::Id);
                self.text.push('_');
            }
            Formula::Eps(es) => {
                self.text.push('e');
                if !es.is_empty() {
                    for (j, e) in es.iter().enumerate() {
                        self.text.push(if j == 0 { '(' } else { ',' });
                        self.push(e);
                    }
                    self.text.push(')');
                }
            }
            Formula::Cup(fs) => {
                for (k, f) in fs.iter().enumerate() {
                    if k > 0 {
                        self.text.push('*');
                    }
                    self.push(f);
                }
            }
        }
    }

    /// The labels `(i, j)` in reading order, ids omitted.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .filter_map(|c| match c.mark {
                TableauMark::Label { symbol, index } => Some((symbol, index)),
                TableauMark::Id => None,
            })
            .collect()
    }

    /// Second line of the tableau, one column per character of the text.
    pub fn label_line(&self) -> String {
        let mut out = String::new();
        let mut cells = self.cells.iter().peekable();
        for (offset, _) in self.text.char_indices() {
            match cells.peek() {
                Some(c) if c.offset == offset => {
                    match c.mark {
                        TableauMark::Label { symbol, index } => {
                            let _ = write!(out, "s{symbol}{index} ");
                        }
                        TableauMark::Id => out.push_str("_ "),
                    }
                    cells.next();
                }
                _ => out.push_str(". "),
            }
        }
        out.truncate(out.trim_end().len());
        out
    }
}

impl Formula {
    pub fn tableau(&self) -> Tableau {
        Tableau::of(self)
    }
}
