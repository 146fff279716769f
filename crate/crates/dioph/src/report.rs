//! The report record emitted by the CLI and the C API: one flat struct that
//! each command fills as far as it computed, serialized to JSON verbatim or
//! rendered as a human-readable table.
//!
//! JSON field names are a stable contract; integers that fit 64 bits are
//! numbers, larger ones decimal strings, so output parses back exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, TrivialKernel};
use crate::lattice::{
    classify, quotient_s_over_m, quotient_u_over_s, LatticeBasis,
};
use crate::matrix::Matrix;
use crate::reduce::ReducedSystem;
use crate::ring::Int;
use crate::snf::smith_normal_form;

/// Elementary divisors `(p, e)` of both finite quotients, each pair
/// serialized as a two-element array `[p, e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryDivisors {
    #[serde(rename = "S_over_M")]
    pub s_over_m: Vec<(Int, u32)>,
    #[serde(rename = "U_over_S")]
    pub u_over_s: Vec<(Int, u32)>,
}

/// Everything a command can report about one system. Fields are `None` when
/// the command did not compute them; `None` fields are omitted from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Report {
    /// Number of equations (rows of the input matrix).
    pub m: usize,
    /// Number of unknowns (columns of the input matrix).
    pub n: usize,
    pub rank: usize,
    /// Nullity `f = n - rank`; the number of basis vectors of the
    /// solution lattice.
    pub f: usize,
    /// Set when the rank is 0 or `n`: a description of the trivial
    /// nullspace. All reduction-derived fields stay `None`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Int>,
    /// The `rank x f` block `K`, as rows.
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<Vec<Int>>>,
    /// Column permutation: position `j` of the reduced system reads
    /// original column `sigma[j]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    /// Diagonal of the Smith normal form of `K` (zeros included).
    #[serde(rename = "snf_K", default, skip_serializing_if = "Option::is_none")]
    pub snf_k: Option<Vec<Int>>,
    #[serde(
        rename = "inv_factors_S_over_M",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub inv_factors_s_over_m: Option<Vec<Int>>,
    #[serde(
        rename = "inv_factors_U_over_S",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub inv_factors_u_over_s: Option<Vec<Int>>,
    #[serde(
        rename = "index_S_over_M",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub index_s_over_m: Option<Int>,
    #[serde(
        rename = "index_U_over_S",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub index_u_over_s: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elementary_divisors: Option<ElementaryDivisors>,
    #[serde(
        rename = "U_equals_S",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub u_equals_s: Option<bool>,
    #[serde(
        rename = "S_equals_M",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub s_equals_m: Option<bool>,
    /// Basis of the solution lattice: `f` integer vectors of length `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    /// One line per verification check, human-oriented.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<String>>,
}

impl Report {
    /// Report for a system whose nullspace is trivial (rank 0 or `n`).
    pub fn trivial_kernel(rank: usize, m: usize, n: usize, kind: TrivialKernel) -> Self {
        Report {
            m,
            n,
            rank,
            f: n - rank,
            trivial: Some(kind.to_string()),
            ..Report::default()
        }
    }

    /// The basis matching a trivial nullspace: all of `R^n` gets the unit
    /// vectors, the zero nullspace an empty list.
    pub fn with_trivial_basis(mut self, kind: TrivialKernel, n: usize) -> Self {
        self.basis = Some(match kind {
            TrivialKernel::WholeSpace => Matrix::<Int>::identity(n).columns(),
            TrivialKernel::ZeroOnly => Vec::new(),
        });
        self
    }

    /// Report the reduction data `rank, f, d, K, sigma`.
    pub fn from_reduced(m: usize, rs: &ReducedSystem<Int>) -> Self {
        Report {
            m,
            n: rs.n(),
            rank: rs.rank(),
            f: rs.free(),
            d: Some(rs.d().clone()),
            k: Some(matrix_rows(rs.k())),
            sigma: Some(rs.sigma().to_original().to_vec()),
            ..Report::default()
        }
    }

    /// Add the module structure of `S/M` and `U/S`.
    pub fn with_structure(mut self, rs: &ReducedSystem<Int>) -> Result<Self> {
        let sm = quotient_s_over_m(rs)?;
        let us = quotient_u_over_s(rs)?;
        let flags = classify(rs)?;
        self.snf_k = Some(smith_normal_form(rs.k()).diagonal());
        self.inv_factors_s_over_m = Some(sm.factors().to_vec());
        self.inv_factors_u_over_s = Some(us.factors().to_vec());
        self.index_s_over_m = Some(sm.index());
        self.index_u_over_s = Some(us.index());
        self.elementary_divisors = Some(ElementaryDivisors {
            s_over_m: sm.elementary_divisors()?,
            u_over_s: us.elementary_divisors()?,
        });
        self.u_equals_s = Some(flags.u_equals_s);
        self.s_equals_m = Some(flags.s_equals_m);
        Ok(self)
    }

    /// Add a basis of the solution lattice and the method that produced it.
    pub fn with_basis(mut self, basis: &LatticeBasis<Int>, method: &str) -> Result<Self> {
        if !basis.is_integral() {
            return Err(Error::Internal(format!(
                "solution basis has denominator {}",
                basis.denominator()
            )));
        }
        self.basis = Some(basis.columns().columns());
        self.method = Some(method.to_string());
        Ok(self)
    }

    /// Record the verification verdict and its per-check notes.
    pub fn with_verification(mut self, verified: bool, notes: Vec<String>) -> Self {
        self.verified = Some(verified);
        self.verification = Some(notes);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(input: &str) -> Result<Self> {
        serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Multi-line human-readable rendering; the default CLI output.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!(
            "system: {} x {} integer matrix, rank {}, nullity {}",
            self.m, self.n, self.rank, self.f
        ));
        if let Some(kind) = &self.trivial {
            line(format!("trivial nullspace: {kind}"));
        }
        if let Some(d) = &self.d {
            line(format!("d = {d}"));
        }
        if let (Some(d), Some(k)) = (&self.d, &self.k) {
            line("K =".into());
            line(format_rows(k));
            line(format!("sigma = {:?}", self.sigma.as_deref().unwrap_or(&[])));
            line(format!("Z = (d*I_{} | K) in sigma column order:", self.rank));
            line(format_rows(&z_rows(d, k)));
        }
        if let Some(q) = &self.snf_k {
            line(format!("snf(K) diagonal = {}", format_list(q)));
        }
        if let (Some(sm), Some(us)) = (&self.inv_factors_s_over_m, &self.inv_factors_u_over_s) {
            line(format!(
                "S/M invariant factors = {}   index = {}",
                format_list(sm),
                self.index_s_over_m.as_ref().map_or_else(String::new, Int::to_string),
            ));
            line(format!(
                "U/S invariant factors = {}   index = {}",
                format_list(us),
                self.index_u_over_s.as_ref().map_or_else(String::new, Int::to_string),
            ));
        }
        if let Some(ed) = &self.elementary_divisors {
            line(format!(
                "elementary divisors: S/M {}   U/S {}",
                format_prime_powers(&ed.s_over_m),
                format_prime_powers(&ed.u_over_s)
            ));
        }
        if let (Some(us), Some(sm)) = (self.u_equals_s, self.s_equals_m) {
            line(format!(
                "U = S: {}   S = M: {}",
                yes_no(us),
                yes_no(sm)
            ));
        }
        if let Some(method) = &self.method {
            line(format!("method = {method}"));
        }
        if let Some(basis) = &self.basis {
            if basis.is_empty() {
                line("basis: (empty)".into());
            } else {
                line(format!("basis ({} vectors, one per line):", basis.len()));
                line(format_rows(basis));
            }
        }
        if let Some(notes) = &self.verification {
            for note in notes {
                line(format!("check: {note}"));
            }
        }
        if let Some(v) = self.verified {
            line(format!("verified = {}", yes_no(v)));
        }
        out
    }
}

fn matrix_rows(m: &Matrix<Int>) -> Vec<Vec<Int>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Rows of `Z = (d*I_r | K)` reconstructed from `d` and the rows of `K`.
fn z_rows(d: &Int, k: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let r = k.len();
    k.iter()
        .enumerate()
        .map(|(i, row)| {
            let mut z: Vec<Int> = (0..r)
                .map(|j| if i == j { d.clone() } else { Int::from(0) })
                .collect();
            z.extend(row.iter().cloned());
            z
        })
        .collect()
}

fn format_rows(rows: &[Vec<Int>]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(Int::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| {
            let body = r
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ");
            format!("    {body}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn format_list(items: &[Int]) -> String {
    let body = items
        .iter()
        .map(Int::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    format!("[{body}]")
}

fn format_prime_powers(pairs: &[(Int, u32)]) -> String {
    if pairs.is_empty() {
        return "(none)".into();
    }
    pairs
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::reduce_matrix;

    fn example() -> (usize, ReducedSystem<Int>) {
        let a = Matrix::from_i64_rows(&[&[2, 3, 5, 4], &[3, -5, 2, -7]]);
        (a.rows(), reduce_matrix(&a).unwrap())
    }

    #[test]
    fn json_uses_the_contract_field_names() {
        let (m, rs) = example();
        let report = Report::from_reduced(m, &rs)
            .with_structure(&rs)
            .unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let obj = value.as_object().unwrap();
        for key in [
            "m",
            "n",
            "rank",
            "f",
            "d",
            "K",
            "sigma",
            "snf_K",
            "inv_factors_S_over_M",
            "inv_factors_U_over_S",
            "index_S_over_M",
            "index_U_over_S",
            "elementary_divisors",
            "U_equals_S",
            "S_equals_M",
        ] {
            assert!(obj.contains_key(key), "missing field {key}");
        }
        assert!(!obj.contains_key("basis"));
        assert!(!obj.contains_key("verified"));
        assert_eq!(value["d"], serde_json::json!(19));
        assert_eq!(value["sigma"], serde_json::json!([0, 1, 2, 3]));
    }

    #[test]
    fn json_round_trips_exactly() {
        let (m, rs) = example();
        let basis = crate::solve::nullspace_basis_direct(&rs).unwrap();
        let report = Report::from_reduced(m, &rs)
            .with_structure(&rs)
            .unwrap()
            .with_basis(&basis, "direct")
            .unwrap()
            .with_verification(true, vec!["all checks passed".into()]);
        let back = Report::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn huge_entries_round_trip_as_strings() {
        let big: Int = "170141183460469231731687303715884105727".parse().unwrap();
        let report = Report {
            m: 1,
            n: 1,
            rank: 0,
            f: 1,
            d: Some(big.clone()),
            ..Report::default()
        };
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert!(value["d"].is_string());
        let back = Report::from_json(&report.to_json()).unwrap();
        assert_eq!(back.d, Some(big));
    }

    #[test]
    fn trivial_reports_carry_the_kind_and_basis() {
        let zero = Report::trivial_kernel(2, 3, 2, TrivialKernel::ZeroOnly)
            .with_trivial_basis(TrivialKernel::ZeroOnly, 2);
        assert_eq!(zero.f, 0);
        assert_eq!(zero.basis, Some(Vec::new()));

        let whole = Report::trivial_kernel(0, 1, 2, TrivialKernel::WholeSpace)
            .with_trivial_basis(TrivialKernel::WholeSpace, 2);
        assert_eq!(whole.f, 2);
        assert_eq!(
            whole.basis,
            Some(vec![
                vec![Int::from(1), Int::from(0)],
                vec![Int::from(0), Int::from(1)],
            ])
        );
        assert!(whole.render_human().contains("every vector"));
    }

    #[test]
    fn human_rendering_mentions_each_section() {
        let (m, rs) = example();
        let basis = crate::solve::nullspace_basis_direct(&rs).unwrap();
        let text = Report::from_reduced(m, &rs)
            .with_structure(&rs)
            .unwrap()
            .with_basis(&basis, "direct")
            .unwrap()
            .with_verification(true, vec!["solutions: ok".into()])
            .render_human();
        for needle in [
            "rank 2",
            "d = 19",
            "K =",
            "sigma = [0, 1, 2, 3]",
            "Z = (d*I_2 | K)",
            "snf(K) diagonal = [1, 817]",
            "S/M invariant factors = [19]",
            "U/S invariant factors = [19]",
            "elementary divisors: S/M 19   U/S 19",
            "U = S: no   S = M: no",
            "method = direct",
            "basis (2 vectors, one per line):",
            "check: solutions: ok",
            "verified = yes",
        ] {
            assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
        }
    }

    #[test]
    fn non_integral_basis_is_rejected() {
        let (m, rs) = example();
        let u = crate::lattice::u_basis(&rs).unwrap();
        assert!(matches!(
            Report::from_reduced(m, &rs).with_basis(&u, "direct"),
            Err(Error::Internal(_))
        ));
    }
}
