//! Reference coefficient tables for the two Frobenius solutions at `z = 0`
//! (`C_j(1)` and `D_j = C_j(0)`, `j = 0..=8`) and their exact comparison
//! against the recurrence.

use serde::Serialize;

use super::coeffs::symbolic_coefficients;
use super::poly::{rat, Monomial, QPolynomial};
use crate::frobenius::IndicialRoot;

/// `(numerator, denominator, [e0, e1, e2, e3, e4])`.
type Term = (i64, i64, [u32; 5]);

const ONE: [u32; 5] = [0, 0, 0, 0, 0];

pub const ROWS: usize = 9;

/// `C_j(1)`.
pub const TABLE_C: [&[Term]; ROWS] = [
    &[(1, 1, ONE)],
    &[],
    &[(1, 3, ONE), (-1, 24, [1, 0, 0, 0, 0])],
    &[(-1, 48, [0, 1, 0, 0, 0])],
    &[(1, 5, ONE), (-1, 24, [1, 0, 0, 0, 0]), (1, 1920, [2, 0, 0, 0, 0]), (-1, 80, [0, 0, 1, 0, 0])],
    &[(-1, 40, [0, 1, 0, 0, 0]), (1, 1920, [1, 1, 0, 0, 0]), (-1, 120, [0, 0, 0, 1, 0])],
    &[
        (1, 7, ONE),
        (-7, 180, [1, 0, 0, 0, 0]),
        (1, 1152, [2, 0, 0, 0, 0]),
        (-1, 322560, [3, 0, 0, 0, 0]),
        (1, 8064, [0, 2, 0, 0, 0]),
        (-17, 1008, [0, 0, 1, 0, 0]),
        (13, 40320, [1, 0, 1, 0, 0]),
        (-1, 168, [0, 0, 0, 0, 1]),
    ],
    &[
        (-43, 1680, [0, 1, 0, 0, 0]),
        (13, 13440, [1, 1, 0, 0, 0]),
        (-1, 215040, [2, 1, 0, 0, 0]),
        (1, 6720, [0, 1, 1, 0, 0]),
        (-41, 3360, [0, 0, 0, 1, 0]),
        (1, 4480, [1, 0, 0, 1, 0]),
    ],
    &[
        (1, 9, ONE),
        (-409, 11340, [1, 0, 0, 0, 0]),
        (19, 17280, [2, 0, 0, 0, 0]),
        (-1, 138240, [3, 0, 0, 0, 0]),
        (1, 92897280, [4, 0, 0, 0, 0]),
        (53, 207360, [0, 2, 0, 0, 0]),
        (-13, 5806080, [1, 2, 0, 0, 0]),
        (-239, 12960, [0, 0, 1, 0, 0]),
        (233, 362880, [1, 0, 1, 0, 0]),
        (-17, 5806080, [2, 0, 1, 0, 0]),
        (1, 23040, [0, 0, 2, 0, 0]),
        (7, 69120, [0, 1, 0, 1, 0]),
        (-1, 108, [0, 0, 0, 0, 1]),
        (1, 6048, [1, 0, 0, 0, 1]),
    ],
];

/// `D_j = C_j(0)`.
pub const TABLE_D: [&[Term]; ROWS] = [
    &[(1, 1, ONE)],
    &[],
    &[(-1, 8, [1, 0, 0, 0, 0])],
    &[(-1, 24, [0, 1, 0, 0, 0])],
    &[(-1, 12, [1, 0, 0, 0, 0]), (1, 384, [2, 0, 0, 0, 0]), (-1, 48, [0, 0, 1, 0, 0])],
    &[(-3, 80, [0, 1, 0, 0, 0]), (1, 480, [1, 1, 0, 0, 0]), (-1, 80, [0, 0, 0, 1, 0])],
    &[
        (-23, 360, [1, 0, 0, 0, 0]),
        (1, 288, [2, 0, 0, 0, 0]),
        (-1, 46080, [3, 0, 0, 0, 0]),
        (1, 2880, [0, 2, 0, 0, 0]),
        (-1, 45, [0, 0, 1, 0, 0]),
        (7, 5760, [1, 0, 1, 0, 0]),
        (-1, 120, [0, 0, 0, 0, 1]),
    ],
    &[
        (-11, 336, [0, 1, 0, 0, 0]),
        (43, 13440, [1, 1, 0, 0, 0]),
        (-1, 35840, [2, 1, 0, 0, 0]),
        (1, 2688, [0, 1, 1, 0, 0]),
        (-5, 336, [0, 0, 0, 1, 0]),
        (11, 13440, [1, 0, 0, 1, 0]),
    ],
    &[
        (-11, 210, [1, 0, 0, 0, 0]),
        (11, 2880, [2, 0, 0, 0, 0]),
        (-1, 23040, [3, 0, 0, 0, 0]),
        (1, 10321920, [4, 0, 0, 0, 0]),
        (11, 17920, [0, 2, 0, 0, 0]),
        (-1, 92160, [1, 2, 0, 0, 0]),
        // second printed line of the row
        (-71, 3360, [0, 0, 1, 0, 0]),
        (41, 20160, [1, 0, 1, 0, 0]),
        (-11, 645120, [2, 0, 1, 0, 0]),
        (1, 10752, [0, 0, 2, 0, 0]),
        (13, 53760, [0, 1, 0, 1, 0]),
        (-3, 280, [0, 0, 0, 0, 1]),
        (1, 1680, [1, 0, 0, 0, 1]),
    ],
];

fn to_poly(terms: &[Term]) -> QPolynomial {
    QPolynomial::from_terms(terms.iter().map(|&(n, d, e)| (Monomial(e), rat(n, d))))
}

/// Reference entry `j` for the given indicial root.
pub fn table_entry(beta: IndicialRoot, j: usize) -> QPolynomial {
    match beta {
        IndicialRoot::One => to_poly(TABLE_C[j]),
        IndicialRoot::Zero => to_poly(TABLE_D[j]),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonomialDiff {
    pub monomial: String,
    pub computed: String,
    pub table: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub table: &'static str,
    pub beta: u32,
    pub j: usize,
    pub pass: bool,
    pub terms: usize,
    pub computed: String,
    pub expected: String,
    pub differences: Vec<MonomialDiff>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub rows: Vec<RowReport>,
    pub passed: usize,
    pub total: usize,
}

impl TablesReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }

    /// Fixed-width text rendering, one line per row.
    pub fn to_table_string(&self) -> String {
        let mut out = String::from("table beta  j  terms  result\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:<5} {:>4} {:>2} {:>6}  {}\n",
                r.table,
                r.beta,
                r.j,
                r.terms,
                if r.pass { "pass" } else { "FAIL" }
            ));
            for d in &r.differences {
                out.push_str(&format!("      {}: computed {} vs table {}\n", d.monomial, d.computed, d.table));
            }
        }
        out.push_str(&format!("{}/{} rows reproduced\n", self.passed, self.total));
        out
    }
}

/// Regenerates both tables from the recurrence and compares term by term.
pub fn verify_tables() -> TablesReport {
    let mut rows = Vec::with_capacity(2 * ROWS);
    for (name, beta) in [("C", IndicialRoot::One), ("D", IndicialRoot::Zero)] {
        let computed = symbolic_coefficients(beta, ROWS - 1);
        for (j, got) in computed.iter().enumerate() {
            let expected = table_entry(beta, j);
            let differences: Vec<_> = got
                .differing_monomials(&expected)
                .into_iter()
                .map(|(m, a, b)| MonomialDiff { monomial: m.to_string(), computed: a.to_string(), table: b.to_string() })
                .collect();
            rows.push(RowReport {
                table: name,
                beta: beta.value(),
                j,
                pass: differences.is_empty(),
                terms: expected.len(),
                computed: got.to_string(),
                expected: expected.to_string(),
                differences,
            });
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let total = rows.len();
    TablesReport { rows, passed, total }
}
