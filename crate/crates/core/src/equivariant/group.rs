use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A finite group given by its multiplication table over an ordered list of
/// element names. The order of the list fixes the order of every direct sum
/// indexed by the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FiniteGroup {
    /// Builds a group from a table; `table[g][h]` is the index of `gh`.
    /// The table is not checked here; see [`FiniteGroup::validate`].
    pub fn from_table(name: impl Into<String>, elements: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<FiniteGroup> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Invalid("a group needs at least one element".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) || unit >= n {
            return Err(Error::DimensionMismatch(format!("multiplication table is not {n}×{n} over 0..{n}")));
        }
        Ok(FiniteGroup { name: name.into(), elements, table, unit })
    }

    /// `Z/n` with elements `g^0, …, g^{n-1}` in that order.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let elements = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { name: format!("Z/{n}"), elements, table, unit: 0 }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { name: "1".into(), elements: vec!["e".into()], table: vec![vec![0]], unit: 0 }
    }

    /// `S_3` as permutations of `{0, 1, 2}`, `(gh)(i) = g(h(i))`, in the order
    /// e, (01), (12), (02), (012), (021).
    pub fn symmetric3() -> FiniteGroup {
        let perms = Self::s3_perms();
        let names = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| idx([g[h[0]], g[h[1]], g[h[2]]])).collect())
            .collect();
        FiniteGroup { name: "S3".into(), elements: names.iter().map(|s| s.to_string()).collect(), table, unit: 0 }
    }

    /// The permutations of `{0, 1, 2}` in the element order of [`FiniteGroup::symmetric3`].
    pub fn s3_perms() -> [[usize; 3]; 6] {
        [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == self.unit).expect("validated group has inverses")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Associativity, unit and inverses over the whole table.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new(format!("group {}", self.name));
        let n = self.order();
        for a in 0..n {
            r.check(self.table[self.unit][a] == a && self.table[a][self.unit] == a, "unit", || self.elements[a].clone());
            let has_inv = (0..n).any(|b| self.table[a][b] == self.unit && self.table[b][a] == self.unit);
            r.check(has_inv, "inverse", || self.elements[a].clone());
            for b in 0..n {
                for c in 0..n {
                    let ok = self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]];
                    r.check(ok, "associativity", || {
                        format!("({}, {}, {})", self.elements[a], self.elements[b], self.elements[c])
                    });
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_validate() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            assert!(g.validate().passed(), "{}", g.name());
        }
    }

    #[test]
    fn s3_is_not_abelian() {
        let s3 = FiniteGroup::symmetric3();
        assert_ne!(s3.mul(1, 2), s3.mul(2, 1));
        assert_eq!(s3.inv(4), 5);
    }

    #[test]
    fn broken_table_fails() {
        let g = FiniteGroup::from_table("bad", vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert!(!g.validate().passed());
    }
}
