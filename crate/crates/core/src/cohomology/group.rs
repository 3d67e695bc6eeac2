//! Finite groups by multiplication table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupInput", into = "GroupTable")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Clone, Serialize, Deserialize)]
struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupInput {
    Table(GroupTable),
    Cyclic { cyclic: usize },
    Symmetric { symmetric: usize },
}

impl TryFrom<GroupInput> for FiniteGroup {
    type Error = Error;
    fn try_from(g: GroupInput) -> Result<Self> {
        match g {
            GroupInput::Table(t) => FiniteGroup::from_table(t.table, t.identity),
            GroupInput::Cyclic { cyclic } => FiniteGroup::cyclic(cyclic),
            GroupInput::Symmetric { symmetric } => FiniteGroup::symmetric(symmetric),
        }
    }
}

impl From<FiniteGroup> for GroupTable {
    fn from(g: FiniteGroup) -> Self {
        GroupTable { table: g.table, identity: g.identity }
    }
}

impl FiniteGroup {
    /// Checks closure, associativity, the identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table is not an n x n array of element indices".into());
        }
        if identity >= n {
            return bad(format!("identity {identity} out of range"));
        }
        for g in 0..n {
            if table[identity][g] != g || table[g][identity] != g {
                return bad(format!("{identity} is not a two-sided identity at {g}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return bad(format!("{g} has no inverse")),
            }
        }
        Ok(FiniteGroup { table, identity, inverses })
    }

    /// `Z/n` with element `k` standing for `k` mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z/0 is not finite".into()));
        }
        FiniteGroup::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), 0)
    }

    /// The symmetric group on `n <= 5` letters, elements in lexicographic
    /// order of their one-line notation; `(g h)(i) = g(h(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidGroup(format!("S_{n} is out of range")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| index(&h.iter().map(|&i| g[i]).collect::<Vec<_>>())).collect())
            .collect();
        FiniteGroup::from_table(table, 0)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Checks that `elements` is a subgroup and returns it as a group,
    /// with element `i` standing for `elements[i]`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup> {
        if elements.iter().any(|&e| e >= self.order()) {
            return Err(Error::InvalidGroup("subgroup element out of range".into()));
        }
        let pos = |g: usize| elements.iter().position(|&e| e == g);
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let row = elements
                .iter()
                .map(|&b| pos(self.mul(a, b)).ok_or_else(|| Error::InvalidGroup(format!("{elements:?} is not closed"))))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let id = pos(self.identity).ok_or_else(|| Error::InvalidGroup("subgroup lacks the identity".into()))?;
        FiniteGroup::from_table(table, id)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.inverse(1), 3);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        // A3 = {id, (0 1 2), (0 2 1)}
        let a3: Vec<usize> = (0..6).filter(|&g| s3.mul(g, s3.mul(g, g)) == 0).collect();
        assert_eq!(s3.subgroup(&a3).unwrap().order(), 3);
        assert!(s3.subgroup(&[0, 1, 2]).is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], 1).is_err());
        let g: FiniteGroup = serde_json::from_str(r#"{"cyclic": 3}"#).unwrap();
        assert_eq!(g, FiniteGroup::cyclic(3).unwrap());
    }
}
