use serde_json::Value;

use crate::error::{Error, Result};

/// A finite abelian group Z/n_1 × … × Z/n_k.
///
/// Elements are addressed by a dense index in lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<u32>,
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::parse("group", "cyclic orders must be positive"));
        }
        let size: usize = orders.iter().map(|n| *n as usize).product();
        if size > 4096 {
            return Err(Error::parse("group", "group too large (more than 4096 elements)"));
        }
        let mut g = GroupSpec { orders, size, add: vec![], neg: vec![] };
        let tuples: Vec<Vec<u32>> = (0..size).map(|i| g.tuple_of(i as u32)).collect();
        g.add = Vec::with_capacity(size * size);
        for a in &tuples {
            for b in &tuples {
                let s: Vec<u32> = a.iter().zip(b).zip(&g.orders).map(|((x, y), n)| (x + y) % n).collect();
                g.add.push(g.index_of(&s));
            }
        }
        g.neg = tuples
            .iter()
            .map(|a| {
                let s: Vec<u32> = a.iter().zip(&g.orders).map(|(x, n)| (n - x) % n).collect();
                g.index_of(&s)
            })
            .collect();
        Ok(g)
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn tuple_of(&self, mut i: u32) -> Vec<u32> {
        let mut t = vec![0; self.orders.len()];
        for (k, n) in self.orders.iter().enumerate().rev() {
            t[k] = i % n;
            i /= n;
        }
        t
    }

    /// Index of a tuple; components are reduced first.
    pub fn index_of(&self, t: &[u32]) -> u32 {
        t.iter().zip(&self.orders).fold(0, |acc, (x, n)| acc * n + x % n)
    }

    /// Index of the element with integer coordinates `t`, reduced componentwise.
    pub fn index_of_ints(&self, t: &[i64]) -> u32 {
        t.iter()
            .zip(&self.orders)
            .fold(0, |acc, (x, n)| acc * n + x.rem_euclid(*n as i64) as u32)
    }

    /// Generator `k` as an element index.
    pub fn generator(&self, k: usize) -> u32 {
        let mut t = vec![0; self.orders.len()];
        t[k] = 1;
        self.index_of(&t)
    }

    pub fn element_label(&self, g: u32) -> String {
        let t = self.tuple_of(g);
        if t.len() == 1 {
            t[0].to_string()
        } else {
            format!("({})", t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }

    /// Single-factor groups serialize elements as integers, others as tuples.
    pub fn element_to_json(&self, g: u32) -> Value {
        let t = self.tuple_of(g);
        if t.len() == 1 {
            Value::from(t[0])
        } else {
            Value::from(t)
        }
    }

    pub fn element_from_json(&self, v: &Value, path: &str) -> Result<u32> {
        let coords: Vec<i64> = match v {
            Value::Number(n) => vec![n.as_i64().ok_or_else(|| Error::parse(path, "expected integer"))?],
            Value::Array(xs) => xs
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::parse(path, "expected integer coordinates")))
                .collect::<Result<_>>()?,
            _ => return Err(Error::parse(path, "expected group element")),
        };
        if coords.len() != self.orders.len() {
            return Err(Error::parse(path, format!("expected {} coordinates", self.orders.len())));
        }
        Ok(self.index_of_ints(&coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_group_tables() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(g.size(), 6);
        let a = g.index_of(&[1, 2]);
        let b = g.index_of(&[1, 2]);
        assert_eq!(g.tuple_of(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.add(a, g.neg(a)), 0);
        assert_eq!(g.element_label(a), "(1,2)");
        assert_eq!(g.index_of_ints(&[-1, -1]), a);
    }
}
