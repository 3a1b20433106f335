//! Text, JSON and LaTeX emitters for the chain-level values, plus the
//! JSON parsers they round-trip through.

use serde::{Deserialize, Serialize};

use crate::ainfty::TensorOpTerm;
use crate::matrices::OrderedMatrix;
use crate::partition::{Chain, Coeff, OrderedPartition, TensorChain};
use crate::trees::{canonical_word, AssocTerm, Tree};

/// Output format selector shared by the command-line surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

fn sign_char(c: Coeff) -> char {
    if c < 0 {
        '-'
    } else {
        '+'
    }
}

fn with_multiplicity(c: Coeff) -> String {
    if c.abs() == 1 {
        String::new()
    } else {
        format!("{} ", c.abs())
    }
}

/// One line per term: `+ 12|3 (x) 23|1`, sorted by the pair of faces.
pub fn tensor_chain_text(t: &TensorChain) -> String {
    let mut out = String::new();
    for ((l, r), &c) in t.iter() {
        out.push_str(&format!(
            "{} {}{} (x) {}\n",
            sign_char(c),
            with_multiplicity(c),
            l,
            r
        ));
    }
    out
}

pub fn tensor_chain_latex(t: &TensorChain) -> String {
    let mut parts = Vec::new();
    for ((l, r), &c) in t.iter() {
        parts.push(format!(
            "{} {}{} \\otimes {}",
            sign_char(c),
            with_multiplicity(c),
            l,
            r
        ));
    }
    parts.join(" ")
}

/// Single line, positive terms first: `+ 2|1  - 1|2`.
pub fn chain_text(c: &Chain) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (face, &coef) in c.iter().filter(|(_, &co)| co > 0) {
        parts.push(format!("+ {}{}", with_multiplicity(coef), face));
    }
    for (face, &coef) in c.iter().filter(|(_, &co)| co < 0) {
        parts.push(format!("- {}{}", with_multiplicity(coef), face));
    }
    parts.join("  ")
}

pub fn chain_latex(c: &Chain) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (face, &coef) in c.iter() {
        parts.push(format!("{} {}{}", sign_char(coef), with_multiplicity(coef), face));
    }
    parts.join(" ")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChainTermJson {
    pub coef: Coeff,
    pub face: OrderedPartition,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorTermJson {
    pub coef: Coeff,
    pub left: OrderedPartition,
    pub right: OrderedPartition,
}

pub fn chain_json(c: &Chain) -> Vec<ChainTermJson> {
    c.iter()
        .map(|(face, &coef)| ChainTermJson {
            coef,
            face: face.clone(),
        })
        .collect()
}

pub fn chain_from_json(terms: &[ChainTermJson]) -> Chain {
    let mut out = Chain::zero();
    for t in terms {
        out.add(t.face.clone(), t.coef);
    }
    out
}

pub fn tensor_chain_json(t: &TensorChain) -> Vec<TensorTermJson> {
    t.iter()
        .map(|((l, r), &coef)| TensorTermJson {
            coef,
            left: l.clone(),
            right: r.clone(),
        })
        .collect()
}

pub fn tensor_chain_from_json(terms: &[TensorTermJson]) -> TensorChain {
    let mut out = TensorChain::zero();
    for t in terms {
        out.add(t.left.clone(), t.right.clone(), t.coef);
    }
    out
}

/// Boxed-table rendering of a matrix, empty cells as dots.
pub fn matrix_text(m: &OrderedMatrix) -> String {
    let width = m
        .rows()
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|&x| {
                if x == 0 {
                    ".".repeat(1).to_string() + &" ".repeat(width - 1)
                } else {
                    format!("{x:<width$}")
                }
            })
            .collect();
        out.push_str(&format!("[ {} ]\n", cells.join(" ")));
    }
    out
}

/// `+ d(0,2) (x) d(1,1)` lines for diagonal terms over face words.
pub fn assoc_terms_text(terms: &[AssocTerm]) -> String {
    let mut out = String::new();
    for t in terms {
        out.push_str(&format!("{} {} (x) {}\n", sign_char(t.coeff), t.left, t.right));
    }
    out
}

pub fn assoc_terms_latex(terms: &[AssocTerm]) -> String {
    fn word_latex(w: &crate::trees::FaceWord) -> String {
        if w.batches.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for batch in w.batches.iter().rev() {
            s.push_str("d_{");
            for &(i, l) in batch {
                s.push_str(&format!("({i},{l})"));
            }
            s.push('}');
        }
        s
    }
    terms
        .iter()
        .map(|t| {
            format!(
                "{} {} \\otimes {}",
                sign_char(t.coeff),
                word_latex(&t.left),
                word_latex(&t.right)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AssocTermJson {
    pub coef: Coeff,
    pub left: crate::trees::FaceWord,
    pub right: crate::trees::FaceWord,
}

pub fn assoc_terms_json(terms: &[AssocTerm]) -> Vec<AssocTermJson> {
    terms
        .iter()
        .map(|t| AssocTermJson {
            coef: t.coeff,
            left: t.left.clone(),
            right: t.right.clone(),
        })
        .collect()
}

/// Tree cell rendered through its canonical word.
pub fn tree_label(t: &Tree) -> String {
    format!("{} ~ {}", t, canonical_word(t))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TensorOpJson {
    pub coef: Coeff,
    pub width: u32,
    pub left: Vec<(u32, u32, u32)>,
    pub right: Vec<(u32, u32, u32)>,
}

pub fn tensor_ops_json(terms: &[TensorOpTerm]) -> Vec<TensorOpJson> {
    terms
        .iter()
        .map(|t| TensorOpJson {
            coef: t.sign,
            width: t.width,
            left: t.left.steps.iter().map(|s| (s.arity, s.left, s.right)).collect(),
            right: t
                .right
                .steps
                .iter()
                .map(|s| (s.arity, s.left, s.right))
                .collect(),
        })
        .collect()
}

pub fn tensor_ops_text(terms: &[TensorOpTerm]) -> String {
    let mut out = String::new();
    for t in terms {
        out.push_str(&format!("{t}\n"));
    }
    out
}

pub fn tensor_ops_latex(terms: &[TensorOpTerm]) -> String {
    fn comp_latex(c: &crate::ainfty::CompositionTerm) -> String {
        let symbol = match c.variance {
            crate::ainfty::Variance::Algebra => "\\varphi",
            crate::ainfty::Variance::Coalgebra => "\\psi",
        };
        if c.steps.is_empty() {
            return "1".into();
        }
        let single = c.steps.len() == 1;
        c.steps
            .iter()
            .rev()
            .map(|s| {
                if s.left == 0 && s.right == 0 && (single || c.variance == crate::ainfty::Variance::Algebra)
                {
                    format!("{symbol}^{{{}}}", s.arity)
                } else {
                    format!("{symbol}^{{{}}}_{{{}}}", s.arity, s.left)
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }
    terms
        .iter()
        .map(|t| {
            format!(
                "{} {} \\otimes {}",
                sign_char(t.sign),
                comp_latex(&t.left),
                comp_latex(&t.right)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}
