use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lie::{HighestWeight, RootSystem};

/// Multiplicities of irreducible summands in a tensor product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub entries: BTreeMap<HighestWeight, u64>,
}

impl DecompositionTable {
    pub fn multiplicity(&self, nu: &HighestWeight) -> u64 {
        self.entries.get(nu).copied().unwrap_or(0)
    }

    pub fn contains(&self, nu: &HighestWeight) -> bool {
        self.multiplicity(nu) > 0
    }

    pub fn total_dim(&self, rs: &RootSystem) -> u64 {
        self.entries.iter().map(|(nu, m)| m * rs.weyl_dim(nu)).sum()
    }
}

/// Racah-Speiser: reflect `λ + ν + ρ` over the weights `ν` of `V_μ` into the
/// dominant chamber, discarding walls.
pub fn tensor_decompose(rs: &RootSystem, lambda: &HighestWeight, mu: &HighestWeight) -> DecompositionTable {
    let ws = rs.weights(mu);
    let mut signed: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (nu, &mult) in &ws.entries {
        let shifted: Vec<i64> = lambda.coords().iter().zip(nu).map(|(l, n)| l + n + 1).collect();
        let (dom, sign) = rs.to_dominant(&shifted);
        if dom.iter().any(|&c| c == 0) {
            continue;
        }
        let key: Vec<i64> = dom.iter().map(|c| c - 1).collect();
        *signed.entry(key).or_insert(0) += sign * mult as i64;
    }
    let entries = signed
        .into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(w, m)| {
            assert!(m > 0, "negative Racah-Speiser multiplicity");
            (HighestWeight::new(w).expect("dominant"), m as u64)
        })
        .collect();
    DecompositionTable { entries }
}

/// `V_ν ⊂ V_λ ⊗ V_μ`.
pub fn admissible(rs: &RootSystem, nu: &HighestWeight, lambda: &HighestWeight, mu: &HighestWeight) -> bool {
    if rs.rank() == 1 {
        let (n, l, m) = (nu.m(), lambda.m(), mu.m());
        return (n + l + m) % 2 == 0 && n <= l + m && l <= n + m && m <= n + l;
    }
    tensor_decompose(rs, lambda, mu).contains(nu)
}
