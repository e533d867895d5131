use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Letter, NcPoly, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Graded-letter degree, then total degree, then left-to-right lex.
    Default,
    /// As `Default`, with user weights on the graded letters.
    Weights,
}

/// Term order on `⟨v ⊔ V⟩^(m)`.
///
/// Terms compare by the weighted graded degree, then total degree, then
/// left-to-right lex in letter index order (`x1 < x2 < … < X1 < X2 < …`),
/// and finally by ascending module position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    pub nv: usize,
    pub kind: OrderKind,
    /// One weight per graded letter.
    pub weights: Vec<u64>,
}

/// Totally ordered key realizing a [`TermOrder`] on terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortKey {
    pub major: u64,
    pub deg: u32,
    pub term: Term,
}

/// A C relation whose leading term is not the expected `X_i x_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderViolation {
    pub relation: usize,
    pub expected: Option<Term>,
    pub found: Option<Term>,
}

impl TermOrder {
    pub fn default_for(nv: usize, nbig: usize) -> Self {
        TermOrder { nv, kind: OrderKind::Default, weights: vec![1; nbig] }
    }

    pub fn weighted(nv: usize, weights: Vec<u64>) -> Self {
        TermOrder { nv, kind: OrderKind::Weights, weights }
    }

    pub fn is_v(&self, l: Letter) -> bool {
        (l as usize) < self.nv
    }

    pub fn weight_of_word(&self, w: &[Letter]) -> u64 {
        w.iter().filter(|&&l| !self.is_v(l)).map(|&l| self.weights[l as usize - self.nv]).sum()
    }

    pub fn key(&self, t: &Term) -> SortKey {
        SortKey { major: self.weight_of_word(&t.word), deg: t.word.len() as u32, term: t.clone() }
    }

    pub fn cmp_words(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        self.weight_of_word(a).cmp(&self.weight_of_word(b)).then(a.len().cmp(&b.len())).then_with(|| a.cmp(b))
    }

    pub fn compare(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp_words(&a.word, &b.word).then(a.pos.cmp(&b.pos))
    }

    /// Whether the graded letters have positive weight, making every
    /// down-set of graded words finite.
    pub fn is_sequential_on_graded(&self) -> bool {
        self.weights.iter().all(|&w| w > 0)
    }

    /// Checks that every relation in `c` leads with its unique `X_i x_j` term.
    pub fn validate(&self, c: &[NcPoly]) -> Vec<OrderViolation> {
        let mut out = Vec::new();
        for (i, f) in c.iter().enumerate() {
            let expected: Vec<&Term> = f
                .iter()
                .map(|(t, _)| t)
                .filter(|t| t.word.len() == 2 && !self.is_v(t.word[0]) && self.is_v(t.word[1]))
                .collect();
            let found = f.lead_term().cloned();
            match expected.as_slice() {
                [e] if Some(*e) == found.as_ref() => {}
                [e] => out.push(OrderViolation { relation: i, expected: Some((*e).clone()), found }),
                _ => out.push(OrderViolation { relation: i, expected: None, found }),
            }
        }
        if !self.is_sequential_on_graded() {
            out.push(OrderViolation { relation: usize::MAX, expected: None, found: None });
        }
        out
    }

    pub fn describe(&self) -> String {
        match self.kind {
            OrderKind::Default => "default".to_string(),
            OrderKind::Weights => {
                let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
                format!("weights {}", w.join(" "))
            }
        }
    }
}
