use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(b) = row.iter().position(|&x| x >= n) {
                return Err(Error::InvalidGroup(format!("table[{a}][{b}] = {} is not an element", row[b])));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { order: n, table, identity, inverses, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::InvalidGroup(format!("{} names for {} elements", names.len(), self.order)));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// `G × H` with `(g, h)` at index `g * |H| + h`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, k) = (g.order, h.order);
        let table = (0..m * k)
            .map(|x| (0..m * k).map(|y| g.mul(x / k, y / k) * k + h.mul(x % k, y % k)).collect())
            .collect();
        Self::from_table(table).expect("product of groups is a group")
    }

    /// The symmetric group on 3 letters, permutations in lexicographic
    /// order of their one-line notation; composition `(ab)(i) = a(b(i))`.
    pub fn symmetric3() -> Self {
        let perms = permutations(3);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&b.iter().map(|&i| a[i]).collect())).collect())
            .collect();
        let names = perms.iter().map(|p| p.iter().map(|i| i.to_string()).collect()).collect();
        Self::from_table(table).and_then(|g| g.with_names(names)).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks that `phi: self -> target` (as an index map) is a
    /// homomorphism; the error names the first failing pair.
    pub fn check_homomorphism(&self, target: &FiniteGroup, phi: &[usize]) -> Result<()> {
        if phi.len() != self.order {
            return Err(Error::InvalidGroup(format!("map has {} entries for {} elements", phi.len(), self.order)));
        }
        if let Some(a) = phi.iter().position(|&x| x >= target.order) {
            return Err(Error::InvalidGroup(format!("image of {a} is not an element of the target")));
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if phi[self.mul(a, b)] != target.mul(phi[a], phi[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_groups() {
        assert_eq!(FiniteGroup::trivial().order(), 1);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.inv(1), 3);
        let v4 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(v4.is_abelian());
        assert!((0..4).all(|a| v4.mul(a, a) == v4.identity()));
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        // identity exists but no associativity: a Latin square that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(Error::InvalidGroup(m)) if m.contains("associative")));
    }

    #[test]
    fn homomorphism_witness() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        assert!(z4.check_homomorphism(&z2, &[0, 1, 0, 1]).is_ok());
        assert!(matches!(
            z4.check_homomorphism(&z2, &[0, 1, 1, 0]),
            Err(Error::NotAHomomorphism { .. })
        ));
    }
}
