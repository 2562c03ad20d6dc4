//! Search budgets and three-valued verdicts shared by every search routine.

use std::time::{Duration, Instant};

/// Node (and optionally wall-clock) allowance for a search.
///
/// Node counts are deterministic; a deadline is not, so reproducible runs
/// should only use node limits.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: Option<u64>,
    deadline: Option<Instant>,
    spent: u64,
    exhausted: bool,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { limit: None, deadline: None, spent: 0, exhausted: false }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { limit: Some(limit), deadline: None, spent: 0, exhausted: false }
    }

    pub fn with_deadline(mut self, secs: Duration) -> Self {
        self.deadline = Some(Instant::now() + secs);
        self
    }

    /// Consume one node. Returns false once the budget is gone.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.spent += 1;
        if let Some(limit) = self.limit {
            if self.spent > limit {
                self.exhausted = true;
                return false;
            }
        }
        if self.spent % 4096 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// Outcome of a certification search.
///
/// `Proven` means the property under test holds (nothing bad exists),
/// `Refuted` carries a witness that can be re-checked independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Proven,
    Refuted(W),
    Unknown { spent: u64 },
}

impl<W> Verdict<W> {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Refuted(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proven => "proven",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Proven => Verdict::Proven,
            Verdict::Refuted(w) => Verdict::Refuted(f(w)),
            Verdict::Unknown { spent } => Verdict::Unknown { spent },
        }
    }
}
