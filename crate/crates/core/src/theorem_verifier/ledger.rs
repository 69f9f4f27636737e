use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRow {
    pub label: String,
    pub separable: u64,
    pub inseparable: u64,
}

/// Separable and inseparable degrees of each step of the tower
/// `K(s,t) ⊂ K(s,t)(x_1) ⊂ ... ⊂ K(s,t)(x_n) ⊂ K(s,t)(x_n, y_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLedger {
    pub p: u64,
    pub n: u32,
    pub rows: Vec<LedgerRow>,
    /// Whether both irreducibility certificates for `p` passed.
    pub certified: bool,
}

fn overflow() -> Error {
    Error::InvalidArgument("tower degrees overflow 64 bits".into())
}

impl DegreeLedger {
    pub fn total_separable(&self) -> u64 {
        self.rows.iter().map(|r| r.separable).product()
    }

    pub fn total_inseparable(&self) -> u64 {
        self.rows.iter().map(|r| r.inseparable).product()
    }

    pub fn total_degree(&self) -> u64 {
        self.total_separable() * self.total_inseparable()
    }

    /// Totals equal `(p^{n-1}(p-1), p^n)`.
    pub fn consistent(&self) -> bool {
        let pn1 = self.p.pow(self.n - 1);
        self.total_separable() == pn1 * (self.p - 1) && self.total_inseparable() == pn1 * self.p
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({ "step": r.label, "separable": r.separable, "inseparable": r.inseparable }))
            .collect();
        json!({
            "rows": rows,
            "total_separable": self.total_separable(),
            "total_inseparable": self.total_inseparable(),
            "total_degree": self.total_degree(),
            "certified": self.certified,
        })
    }
}

pub fn degree_ledger(p: u64, n: u32, certified: bool) -> Result<DegreeLedger> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    // the full degree p^{2n-1}(p-1) must fit
    p.checked_pow(2 * n).ok_or_else(overflow)?;
    let mut rows = vec![LedgerRow { label: "x_1".into(), separable: (p - 1) / 2, inseparable: p }];
    for k in 2..=n {
        rows.push(LedgerRow { label: format!("x_{k}"), separable: p, inseparable: p });
    }
    rows.push(LedgerRow { label: format!("y_{n}"), separable: 2, inseparable: 1 });
    Ok(DegreeLedger { p, n, rows, certified })
}
