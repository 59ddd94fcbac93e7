//! Sparse antisymmetric structure-constant tensors, classical or
//! matrix, with per-tuple closure-defect diagnostics.

use std::collections::BTreeMap;

use serde::Serialize;

pub const ENTRY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SCKind {
    Classical,
    Matrix,
}

/// Expansion coefficients of brackets of basis modes in the basis:
/// `bracket(Y_{A1}, ..., Y_{Ad}) = f_{A1..Ad C} Y_C` plus the residual
/// norm of whatever does not project back onto the basis.
///
/// Entries are stored for canonical tuples `A1 < ... < Ad` only; the
/// antisymmetric completion is derived on lookup.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub arity: usize,
    pub kind: SCKind,
    pub basis_id: String,
    pub num_modes: usize,
    entries: BTreeMap<Vec<usize>, f64>,
    residuals: BTreeMap<Vec<usize>, f64>,
}

fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v: Vec<usize> = indices.to_vec();
    let mut sign = 1.0;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

impl StructureConstants {
    pub fn new(arity: usize, kind: SCKind, basis_id: String, num_modes: usize) -> Self {
        Self {
            arity,
            kind,
            basis_id,
            num_modes,
            entries: BTreeMap::new(),
            residuals: BTreeMap::new(),
        }
    }

    /// Record one bracket row for a canonical (sorted, distinct) tuple.
    pub fn record(&mut self, tuple: &[usize], coeffs: &[f64], residual: f64) {
        debug_assert_eq!(tuple.len(), self.arity);
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        for (c_idx, &v) in coeffs.iter().enumerate() {
            if v.abs() >= ENTRY_EPS {
                let mut key = tuple.to_vec();
                key.push(c_idx);
                self.entries.insert(key, v);
            }
        }
        if residual.abs() >= ENTRY_EPS {
            self.residuals.insert(tuple.to_vec(), residual);
        }
    }

    /// Entry for an arbitrary index order; antisymmetric in the first
    /// `arity` indices, zero when any of them repeat.
    pub fn get(&self, indices: &[usize]) -> f64 {
        debug_assert_eq!(indices.len(), self.arity + 1);
        match sort_with_sign(&indices[..self.arity]) {
            None => 0.0,
            Some((mut key, sign)) => {
                key.push(indices[self.arity]);
                sign * self.entries.get(&key).copied().unwrap_or(0.0)
            }
        }
    }

    pub fn residual(&self, tuple: &[usize]) -> f64 {
        match sort_with_sign(tuple) {
            None => 0.0,
            Some((key, _)) => self.residuals.get(&key).copied().unwrap_or(0.0),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &f64)> {
        self.entries.iter()
    }

    pub fn residuals(&self) -> impl Iterator<Item = (&Vec<usize>, &f64)> {
        self.residuals.iter()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &b| a.max(b))
    }

    /// Max and RMS entrywise |self - other| over the union of stored
    /// canonical entries.
    pub fn deviation(&self, other: &Self) -> (f64, f64) {
        let keys: std::collections::BTreeSet<&Vec<usize>> =
            self.entries.keys().chain(other.entries.keys()).collect();
        let mut max = 0.0f64;
        let mut sum_sq = 0.0;
        let mut count = 0usize;
        for k in keys {
            let a = self.entries.get(k).copied().unwrap_or(0.0);
            let b = other.entries.get(k).copied().unwrap_or(0.0);
            let d = (a - b).abs();
            max = max.max(d);
            sum_sq += d * d;
            count += 1;
        }
        let rms = if count > 0 {
            (sum_sq / count as f64).sqrt()
        } else {
            0.0
        };
        (max, rms)
    }

    /// Like [`deviation`](Self::deviation) but restricted to canonical
    /// tuples accepted by the filter (keyed on the input d-tuple).
    pub fn deviation_filtered(&self, other: &Self, keep: impl Fn(&[usize]) -> bool) -> (f64, f64) {
        let keys: std::collections::BTreeSet<&Vec<usize>> = self
            .entries
            .keys()
            .chain(other.entries.keys())
            .filter(|k| keep(&k[..self.arity]))
            .collect();
        let mut max = 0.0f64;
        let mut sum_sq = 0.0;
        let mut count = 0usize;
        for k in keys {
            let a = self.entries.get(k).copied().unwrap_or(0.0);
            let b = other.entries.get(k).copied().unwrap_or(0.0);
            let d = (a - b).abs();
            max = max.max(d);
            sum_sq += d * d;
            count += 1;
        }
        let rms = if count > 0 {
            (sum_sq / count as f64).sqrt()
        } else {
            0.0
        };
        (max, rms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "arity": self.arity,
            "kind": self.kind,
            "basis_id": self.basis_id,
            "entries": self.entries.iter().map(|(k, v)| serde_json::json!({
                "indices": k,
                "value": v,
            })).collect::<Vec<_>>(),
            "residuals": self.residuals.iter().map(|(k, v)| serde_json::json!({
                "indices": k,
                "norm": v,
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric_lookup() {
        let mut sc = StructureConstants::new(2, SCKind::Classical, "test".into(), 3);
        sc.record(&[0, 1], &[0.0, 0.0, 0.5], 0.0);
        assert_eq!(sc.get(&[0, 1, 2]), 0.5);
        assert_eq!(sc.get(&[1, 0, 2]), -0.5);
        assert_eq!(sc.get(&[1, 1, 2]), 0.0);
        assert_eq!(sc.get(&[0, 2, 1]), 0.0);
    }

    #[test]
    fn deviation_over_union() {
        let mut a = StructureConstants::new(2, SCKind::Classical, "a".into(), 2);
        a.record(&[0, 1], &[0.25, 0.0], 0.0);
        let mut b = StructureConstants::new(2, SCKind::Matrix, "b".into(), 2);
        b.record(&[0, 1], &[0.0, 0.5], 0.0);
        let (max, rms) = a.deviation(&b);
        assert_eq!(max, 0.5);
        assert!((rms - (0.25f64 * 0.25 + 0.5 * 0.5) / 2.0_f64).abs() > 0.0); // rms computed over 2 keys
        assert!((rms - ((0.0625 + 0.25) / 2.0f64).sqrt()).abs() < 1e-15);
    }
}
