// Copyright 2026 The qcausal Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Two-time expectation tables and their CSV form.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::PauliString;

/// CSV header for persisted tables.
pub const TABLE_CSV_HEADER: &str = "i1_labels,i2_labels,value";

/// The map `(σ at t₁, σ at t₂) → correlator` for one experiment.
///
/// Keys are Pauli indices for `n` qubits per time slot. A table is *complete*
/// when all `4ⁿ × 4ⁿ` entries are present; building a full PDM requires
/// completeness, while reduced analyses extract explicit sub-tables via
/// [`ExpectationTable::sub_table`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationTable {
    n: usize,
    values: BTreeMap<(usize, usize), f64>,
}

impl ExpectationTable {
    /// Empty table over `n` qubits per slot.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "table needs at least one qubit per slot");
        ExpectationTable { n, values: BTreeMap::new() }
    }

    /// Fill a complete table from a function over Pauli pairs.
    pub fn from_fn(n: usize, mut f: impl FnMut(&PauliString, &PauliString) -> Result<f64>) -> Result<Self> {
        let mut table = Self::new(n);
        for p1 in PauliString::all(n) {
            for p2 in PauliString::all(n) {
                let value = f(&p1, &p2)?;
                table.values.insert((p1.index(), p2.index()), value);
            }
        }
        Ok(table)
    }

    /// Qubits per time slot.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Paulis per slot, `4ⁿ`.
    pub fn paulis_per_slot(&self) -> usize {
        4usize.pow(self.n as u32)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn set(&mut self, p1: &PauliString, p2: &PauliString, value: f64) -> Result<()> {
        if p1.n() != self.n || p2.n() != self.n {
            return Err(Error::DimMismatch(format!(
                "table holds {}-qubit slots, got ({}, {})",
                self.n,
                p1.n(),
                p2.n()
            )));
        }
        self.values.insert((p1.index(), p2.index()), value);
        Ok(())
    }

    pub fn get(&self, p1: &PauliString, p2: &PauliString) -> Option<f64> {
        self.values.get(&(p1.index(), p2.index())).copied()
    }

    pub fn get_by_index(&self, i1: usize, i2: usize) -> Option<f64> {
        self.values.get(&(i1, i2)).copied()
    }

    /// Entries in ascending `(i₁, i₂)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.values.iter().map(|(&(i1, i2), &v)| (i1, i2, v))
    }

    /// Missing index pairs, ascending.
    pub fn missing(&self) -> Vec<(usize, usize)> {
        let count = self.paulis_per_slot();
        let mut out = Vec::new();
        for i1 in 0..count {
            for i2 in 0..count {
                if !self.values.contains_key(&(i1, i2)) {
                    out.push((i1, i2));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.values.len() == self.paulis_per_slot() * self.paulis_per_slot()
    }

    /// Error unless complete; the message names the first missing pair.
    pub fn require_complete(&self) -> Result<()> {
        let missing = self.missing();
        if missing.is_empty() {
            return Ok(());
        }
        let (i1, i2) = missing[0];
        let total = self.paulis_per_slot() * self.paulis_per_slot();
        Err(Error::IncompleteTable {
            missing: missing.len(),
            total,
            first_i1: PauliString::from_index(self.n, i1).expect("in range").labels(),
            first_i2: PauliString::from_index(self.n, i2).expect("in range").labels(),
        })
    }

    /// Convex combination `p·a + (1−p)·b`; both tables must be complete and
    /// over the same slot size.
    pub fn mix(p: f64, a: &ExpectationTable, b: &ExpectationTable) -> Result<ExpectationTable> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange { name: "mixing weight", value: p, lo: 0.0, hi: 1.0 });
        }
        if a.n != b.n {
            return Err(Error::DimMismatch(format!("mixing {}-qubit with {}-qubit table", a.n, b.n)));
        }
        a.require_complete()?;
        b.require_complete()?;
        let mut out = ExpectationTable::new(a.n);
        for (&key, &va) in &a.values {
            let vb = b.values[&key];
            out.values.insert(key, p * va + (1.0 - p) * vb);
        }
        Ok(out)
    }

    /// The table with the two time slots exchanged: entry `(i₁, i₂)` becomes
    /// `(i₂, i₁)`.
    pub fn transpose_slots(&self) -> ExpectationTable {
        let mut out = ExpectationTable::new(self.n);
        for (&(i1, i2), &v) in &self.values {
            out.values.insert((i2, i1), v);
        }
        out
    }

    /// Extract the sub-table over kept qubits: entries whose discarded
    /// positions carry the identity, reindexed to the smaller slots.
    ///
    /// `keep1`/`keep2` list kept qubit positions per slot, strictly
    /// increasing. Errors if a required entry is absent.
    pub fn sub_table(&self, keep1: &[usize], keep2: &[usize]) -> Result<ExpectationTable> {
        validate_keep(keep1, self.n)?;
        validate_keep(keep2, self.n)?;
        if keep1.is_empty() || keep2.is_empty() {
            return Err(Error::BadSubsystem("cannot discard an entire time slot".into()));
        }
        let k1 = keep1.len();
        let k2 = keep2.len();
        if k1 != k2 {
            return Err(Error::BadSubsystem(format!(
                "sub-table slots must stay equal-sized, got {k1} and {k2} qubits"
            )));
        }
        let mut out = ExpectationTable::new(k1);
        for s1 in PauliString::all(k1) {
            let full1 = embed_identity(&s1, keep1, self.n);
            for s2 in PauliString::all(k2) {
                let full2 = embed_identity(&s2, keep2, self.n);
                match self.values.get(&(full1.index(), full2.index())) {
                    Some(&v) => {
                        out.values.insert((s1.index(), s2.index()), v);
                    }
                    None => {
                        return Err(Error::IncompleteTable {
                            missing: 1,
                            total: 16usize.pow(k1 as u32),
                            first_i1: full1.labels(),
                            first_i2: full2.labels(),
                        })
                    }
                }
            }
        }
        Ok(out)
    }

    /// Write as CSV with header `i1_labels,i2_labels,value`, ascending
    /// `(i₁, i₂)`. Values use the shortest representation that parses back to
    /// the identical `f64`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{TABLE_CSV_HEADER}")?;
        for (&(i1, i2), &v) in &self.values {
            let l1 = PauliString::from_index(self.n, i1).expect("in range").labels();
            let l2 = PauliString::from_index(self.n, i2).expect("in range").labels();
            writeln!(w, "{l1},{l2},{v}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("csv is ascii")
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        self.write_csv(std::io::BufWriter::new(file))
            .map_err(|e| Error::io(path.display().to_string(), e))
    }

    /// Parse from CSV. Slot size is inferred from the first data row; labels,
    /// duplicates and float syntax are validated, but completeness and value
    /// ranges are left to the importer.
    pub fn read_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut table: Option<ExpectationTable> = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::CsvParse { line: lineno + 1, msg: e.to_string() })?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if lineno == 0 {
                if trimmed != TABLE_CSV_HEADER {
                    return Err(Error::CsvParse {
                        line: 1,
                        msg: format!("expected header {TABLE_CSV_HEADER:?}, got {trimmed:?}"),
                    });
                }
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::CsvParse {
                    line: lineno + 1,
                    msg: format!("expected 3 fields, got {}", fields.len()),
                });
            }
            let p1 = PauliString::from_labels(fields[0])
                .map_err(|e| Error::CsvParse { line: lineno + 1, msg: e.to_string() })?;
            let p2 = PauliString::from_labels(fields[1])
                .map_err(|e| Error::CsvParse { line: lineno + 1, msg: e.to_string() })?;
            let value: f64 = fields[2]
                .parse()
                .map_err(|e| Error::CsvParse { line: lineno + 1, msg: format!("bad value: {e}") })?;
            if !value.is_finite() {
                return Err(Error::CsvParse { line: lineno + 1, msg: format!("non-finite value {value}") });
            }
            let t = table.get_or_insert_with(|| ExpectationTable::new(p1.n()));
            if p1.n() != t.n || p2.n() != t.n {
                return Err(Error::CsvParse {
                    line: lineno + 1,
                    msg: format!("label length {} differs from table slot size {}", p1.n(), t.n),
                });
            }
            if t.values.insert((p1.index(), p2.index()), value).is_some() {
                return Err(Error::CsvParse {
                    line: lineno + 1,
                    msg: format!("duplicate entry ({}, {})", p1.labels(), p2.labels()),
                });
            }
        }
        table.ok_or(Error::CsvParse { line: 0, msg: "no data rows".into() })
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::read_csv(BufReader::new(file))
    }
}

fn validate_keep(keep: &[usize], n: usize) -> Result<()> {
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= n) {
        return Err(Error::BadSubsystem(format!(
            "keep set {keep:?} must be strictly increasing below {n}"
        )));
    }
    Ok(())
}

/// Place the factors of `small` at `keep` positions of an `n`-qubit string,
/// identities elsewhere.
fn embed_identity(small: &PauliString, keep: &[usize], n: usize) -> PauliString {
    let mut factors = vec![crate::linalg::Pauli::I; n];
    for (j, &pos) in keep.iter().enumerate() {
        factors[pos] = small.factor(j);
    }
    PauliString::from_factors(&factors).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_table() -> ExpectationTable {
        // The λ = 1 decohering table: (I,I) = 1, (X,I) = 1, (Z,Z) = 1.
        let mut t = ExpectationTable::from_fn(1, |_, _| Ok(0.0)).unwrap();
        let i = PauliString::from_labels("I").unwrap();
        let x = PauliString::from_labels("X").unwrap();
        let z = PauliString::from_labels("Z").unwrap();
        t.set(&i, &i, 1.0).unwrap();
        t.set(&x, &i, 1.0).unwrap();
        t.set(&z, &z, 1.0).unwrap();
        t
    }

    #[test]
    fn completeness_reporting() {
        let mut t = ExpectationTable::new(1);
        assert!(!t.is_complete());
        let err = t.require_complete().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("16 of 16"), "{msg}");
        for p1 in PauliString::all(1) {
            for p2 in PauliString::all(1) {
                t.set(&p1, &p2, 0.0).unwrap();
            }
        }
        assert!(t.is_complete());
        assert!(t.require_complete().is_ok());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = tiny_table();
        let csv = t.to_csv_string();
        assert!(csv.starts_with("i1_labels,i2_labels,value\n"));
        let back = ExpectationTable::read_csv(csv.as_bytes()).unwrap();
        assert_eq!(t, back);
        // A second serialization is byte-identical.
        assert_eq!(csv, back.to_csv_string());
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(ExpectationTable::read_csv("nonsense\n".as_bytes()).is_err());
        let dup = "i1_labels,i2_labels,value\nI,I,1\nI,I,1\n";
        assert!(ExpectationTable::read_csv(dup.as_bytes()).is_err());
        let bad_label = "i1_labels,i2_labels,value\nQ,I,1\n";
        assert!(ExpectationTable::read_csv(bad_label.as_bytes()).is_err());
        let bad_value = "i1_labels,i2_labels,value\nI,I,forty\n";
        assert!(ExpectationTable::read_csv(bad_value.as_bytes()).is_err());
        let inconsistent = "i1_labels,i2_labels,value\nII,II,1\nI,I,1\n";
        assert!(ExpectationTable::read_csv(inconsistent.as_bytes()).is_err());
    }

    #[test]
    fn mix_is_entrywise_convex() {
        let a = tiny_table();
        let b = ExpectationTable::from_fn(1, |p1, p2| {
            Ok(if p1.is_identity() && p2.is_identity() { 1.0 } else { 0.0 })
        })
        .unwrap();
        let m = ExpectationTable::mix(0.25, &a, &b).unwrap();
        let x = PauliString::from_labels("X").unwrap();
        let i = PauliString::from_labels("I").unwrap();
        assert!((m.get(&x, &i).unwrap() - 0.25).abs() < 1e-15);
        assert!((m.get(&i, &i).unwrap() - 1.0).abs() < 1e-15);
        // Endpoint reproduces the first table bitwise.
        let endpoint = ExpectationTable::mix(1.0, &a, &b).unwrap();
        assert_eq!(endpoint, a);
    }

    #[test]
    fn transpose_slots_swaps_indices() {
        let t = tiny_table();
        let tt = t.transpose_slots();
        let x = PauliString::from_labels("X").unwrap();
        let i = PauliString::from_labels("I").unwrap();
        assert_eq!(tt.get(&i, &x), Some(1.0));
        assert_eq!(tt.get(&x, &i), Some(0.0));
        assert_eq!(tt.transpose_slots(), t);
    }

    #[test]
    fn sub_table_extracts_identity_padded_entries() {
        // Two-qubit table that factorizes; keep qubit 0 of each slot.
        let t = ExpectationTable::from_fn(2, |p1, p2| {
            let v1 = if p1.factor(1) == crate::linalg::Pauli::I { 1.0 } else { 0.5 };
            let v2 = if p2.factor(1) == crate::linalg::Pauli::I { 1.0 } else { 0.5 };
            Ok(0.25 * v1 * v2 * ((p1.index() + p2.index()) % 3) as f64)
        })
        .unwrap();
        let sub = t.sub_table(&[0], &[0]).unwrap();
        assert_eq!(sub.n(), 1);
        for s1 in PauliString::all(1) {
            for s2 in PauliString::all(1) {
                let f1 = PauliString::from_factors(&[s1.factor(0), crate::linalg::Pauli::I]).unwrap();
                let f2 = PauliString::from_factors(&[s2.factor(0), crate::linalg::Pauli::I]).unwrap();
                assert_eq!(sub.get(&s1, &s2), t.get(&f1, &f2));
            }
        }
        // Partial tables suffice when the identity-padded entries exist.
        let mut partial = ExpectationTable::new(2);
        for s1 in PauliString::all(1) {
            for s2 in PauliString::all(1) {
                let f1 = PauliString::from_factors(&[s1.factor(0), crate::linalg::Pauli::I]).unwrap();
                let f2 = PauliString::from_factors(&[s2.factor(0), crate::linalg::Pauli::I]).unwrap();
                partial.set(&f1, &f2, 0.125).unwrap();
            }
        }
        assert!(partial.sub_table(&[0], &[0]).is_ok());
        assert!(partial.sub_table(&[1], &[1]).is_err());
    }
}
