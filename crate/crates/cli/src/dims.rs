use std::fmt;

use fga_kernel::grade_dims;

/// Per-grade dimensions `C(n, k)` for `k <= K` and the truncated total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimsTable {
    pub n: u64,
    pub max_grade: u64,
    pub per_grade: Vec<u64>,
    pub total: u64,
}

pub fn dims_table(n: u64, max_grade: u64) -> DimsTable {
    let d = grade_dims(n, max_grade);
    DimsTable { n, max_grade, per_grade: d.per_grade, total: d.total }
}

impl fmt::Display for DimsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, K = {}", self.n, self.max_grade)?;
        for (k, d) in self.per_grade.iter().enumerate() {
            writeln!(f, "grade {k}: {d}")?;
        }
        let row: Vec<String> = self.per_grade.iter().map(u64::to_string).collect();
        write!(f, "{} | {}", row.join(" "), self.total)
    }
}
