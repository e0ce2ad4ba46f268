use std::cmp::Ordering;

use super::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    GradedReverseLex,
    Lex,
}

/// A monomial order, optionally acting on a permutation of the variables.
///
/// `priority[k]` is the variable that plays the role of the `k`-th variable:
/// for lex it is the `k`-th most significant one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Option<Vec<usize>>,
}

impl TermOrder {
    pub fn grevlex() -> Self {
        TermOrder { kind: OrderKind::GradedReverseLex, priority: None }
    }

    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, priority: None }
    }

    /// Returns `None` unless `priority` is a permutation of `0..priority.len()`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= seen.len() || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(TermOrder { kind, priority: Some(priority) })
    }

    /// The same order on a ring with extra trailing variables, which rank
    /// after every existing one.
    pub fn extended_by_trailing(&self, nvars: usize) -> Self {
        match &self.priority {
            Some(p) if p.len() < nvars => {
                let mut p = p.clone();
                p.extend(p.len()..nvars);
                TermOrder { kind: self.kind, priority: Some(p) }
            }
            _ => self.clone(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    fn var_at(&self, k: usize) -> usize {
        match &self.priority {
            Some(p) => p[k],
            None => k,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars();
        debug_assert_eq!(n, b.nvars());
        if let Some(p) = &self.priority {
            debug_assert_eq!(p.len(), n, "term order arity");
        }
        match self.kind {
            OrderKind::Lex => {
                for k in 0..n {
                    let v = self.var_at(k);
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GradedReverseLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for k in (0..n).rev() {
                    let v = self.var_at(k);
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::grevlex()
    }
}
