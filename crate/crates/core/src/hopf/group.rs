//! Finite groups by multiplication table, and their linear characters.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::scalar::Cyclotomic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    /// `table[a * order + b] = a * b`
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    /// Factor orders when elements are exponent vectors, first factor fastest.
    cyclic: Option<Vec<u64>>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::InvalidGroup(format!(
                "{} entries for {n} elements",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidGroup(format!(
                "table entry {bad} out of range"
            )));
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "({} {}) {} differs from {} ({} {})",
                            names[a], names[b], names[c], names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        let mut seen = names.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != n {
            return Err(Error::InvalidGroup("duplicate element names".into()));
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverse,
            cyclic: None,
        })
    }

    /// `Z_{m_1} × ... × Z_{m_r}`; generators are named `g` (one factor) or `g1`, `g2`, ...
    pub fn cyclic_product(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        let n: u64 = orders.iter().product();
        let n = n as usize;
        let decode = |mut x: usize| {
            orders
                .iter()
                .map(|&m| {
                    let e = x as u64 % m;
                    x /= m as usize;
                    e
                })
                .collect::<Vec<u64>>()
        };
        let encode = |e: &[u64]| {
            e.iter()
                .zip(orders)
                .rev()
                .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
        };
        let names = (0..n)
            .map(|x| {
                let e = decode(x);
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(f, &k)| {
                        let g = if orders.len() == 1 {
                            "g".to_string()
                        } else {
                            format!("g{}", f + 1)
                        };
                        if k == 1 {
                            g
                        } else {
                            format!("{g}^{k}")
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            })
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let ea = decode(a);
            for b in 0..n {
                let eb = decode(b);
                let s: Vec<u64> = ea
                    .iter()
                    .zip(&eb)
                    .zip(orders)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                table.push(encode(&s));
            }
        }
        let inverse = (0..n)
            .map(|a| {
                encode(
                    &decode(a)
                        .iter()
                        .zip(orders)
                        .map(|(x, m)| (m - x) % m)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        Ok(FiniteGroup {
            names,
            table,
            identity: 0,
            inverse,
            cyclic: Some(orders.to_vec()),
        })
    }

    /// Dihedral group of order `2n`, elements `r^k s^e`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
        }
        let name = |k: usize, e: usize| {
            let r = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (r.is_empty(), e) {
                (true, 0) => "1".to_string(),
                (true, _) => "s".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r}*s"),
            }
        };
        let names = (0..2 * n).map(|x| name(x % n, x / n)).collect();
        let mut table = Vec::with_capacity(4 * n * n);
        for x in 0..2 * n {
            let (a, b) = (x % n, x / n);
            for y in 0..2 * n {
                let (c, d) = (y % n, y / n);
                // r^a s^b r^c s^d = r^(a ± c) s^(b + d)
                let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                table.push(k + n * ((b + d) % 2));
            }
        }
        FiniteGroup::from_table(names, table)
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        if let (Some(a), Some(b)) = (&g.cyclic, &h.cyclic) {
            let mut orders = a.clone();
            orders.extend(b);
            return FiniteGroup::cyclic_product(&orders);
        }
        let (m, n) = (g.order(), h.order());
        let names = (0..m * n)
            .map(|x| {
                let parts: Vec<&str> = [g.name(x % m), h.name(x / m)]
                    .into_iter()
                    .filter(|s| *s != "1")
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            })
            .collect();
        let mut table = Vec::with_capacity(m * n * m * n);
        for x in 0..m * n {
            for y in 0..m * n {
                table.push(g.mul(x % m, y % m) + m * h.mul(x / m, y / m));
            }
        }
        FiniteGroup::from_table(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| self.is_central(a))
    }

    pub fn cyclic_orders(&self) -> Option<&[u64]> {
        self.cyclic.as_deref()
    }

    /// Element with the given exponent vector; only for cyclic products.
    pub fn from_exponents(&self, e: &[u64]) -> Option<usize> {
        let orders = self.cyclic.as_ref()?;
        if e.len() != orders.len() {
            return None;
        }
        Some(
            e.iter()
                .zip(orders)
                .rev()
                .fold(0usize, |acc, (&x, &m)| acc * m as usize + (x % m) as usize),
        )
    }

    /// Generators of the cyclic factors.
    pub fn cyclic_generators(&self) -> Option<Vec<usize>> {
        let orders = self.cyclic.as_ref()?;
        Some(
            (0..orders.len())
                .map(|k| {
                    let mut e = vec![0; orders.len()];
                    e[k] = 1;
                    self.from_exponents(&e).unwrap()
                })
                .collect(),
        )
    }
}

/// A linear character, stored by its value on every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn trivial(group: &FiniteGroup) -> Self {
        Character {
            values: vec![Cyclotomic::one(); group.order()],
        }
    }

    /// Extends generator values multiplicatively; fails when the values are
    /// inconsistent or the generators do not generate.
    pub fn from_generators(group: &FiniteGroup, gens: &[(usize, Cyclotomic)]) -> Result<Self> {
        let n = group.order();
        let mut values: Vec<Option<Cyclotomic>> = vec![None; n];
        values[group.identity()] = Some(Cyclotomic::one());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let vx = values[x].clone().unwrap();
            for (s, vs) in gens {
                let y = group.mul(x, *s);
                let vy = &vx * vs;
                match &values[y] {
                    Some(old) if *old != vy => {
                        return Err(Error::InvalidGroup(format!(
                            "character values inconsistent at {}",
                            group.name(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        values[y] = Some(vy);
                        queue.push_back(y);
                    }
                }
            }
        }
        let values: Vec<Cyclotomic> = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| Error::InvalidGroup(format!("{} not generated", group.name(x))))
            })
            .collect::<Result<_>>()?;
        Character::from_values(group, values)
    }

    /// On a cyclic product, the generator of `Z_{m_k}` goes to `ζ_{m_k}^{r_k}`.
    pub fn from_exponents(group: &FiniteGroup, r: &[i64]) -> Result<Self> {
        let orders = group.cyclic_orders().ok_or_else(|| {
            Error::InvalidGroup("exponent characters need a cyclic product".into())
        })?;
        if r.len() != orders.len() {
            return Err(Error::InvalidGroup(format!(
                "{} exponents for {} factors",
                r.len(),
                orders.len()
            )));
        }
        let gens = group.cyclic_generators().unwrap();
        let vals: Vec<(usize, Cyclotomic)> = gens
            .into_iter()
            .zip(orders.iter().zip(r))
            .map(|(g, (&m, &k))| (g, Cyclotomic::root_of_unity(m as u32, k)))
            .collect();
        Character::from_generators(group, &vals)
    }

    pub fn from_values(group: &FiniteGroup, values: Vec<Cyclotomic>) -> Result<Self> {
        let n = group.order();
        if values.len() != n {
            return Err(Error::InvalidGroup(format!(
                "{} values for {n} elements",
                values.len()
            )));
        }
        for a in 0..n {
            for b in 0..n {
                if values[group.mul(a, b)] != &values[a] * &values[b] {
                    return Err(Error::InvalidGroup(format!(
                        "character not multiplicative on ({}, {})",
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        Ok(Character { values })
    }

    pub fn eval(&self, g: usize) -> &Cyclotomic {
        &self.values[g]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Character {
        Character {
            values: self
                .values
                .iter()
                .map(|v| v.powi(e).expect("character values are units"))
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_one)
    }
}
