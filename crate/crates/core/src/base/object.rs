use std::fmt;
use std::sync::Arc;

/// An object of V: an ordered basis, each vector carrying a group grade.
///
/// The order matters. Tensor products use the Kronecker (left-major) order,
/// which makes ⊗ strictly associative with unit `[0]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedObject(Arc<[u32]>);

impl GradedObject {
    pub fn from_grades(grades: Vec<u32>) -> Self {
        GradedObject(grades.into())
    }

    /// The canonical object with the given multiplicities, grades in increasing order.
    pub fn from_multiplicities(mult: &[(u32, usize)]) -> Self {
        let mut pairs: Vec<(u32, usize)> = mult.to_vec();
        pairs.sort();
        let grades = pairs.iter().flat_map(|(g, n)| std::iter::repeat_n(*g, *n)).collect();
        Self::from_grades(grades)
    }

    pub fn unit() -> Self {
        Self::from_grades(vec![0])
    }

    pub fn zero() -> Self {
        Self::from_grades(vec![])
    }

    /// The one-dimensional object concentrated in grade `g`.
    pub fn simple(g: u32) -> Self {
        Self::from_grades(vec![g])
    }

    pub fn grades(&self) -> &[u32] {
        &self.0
    }

    pub fn grade(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 0
    }

    /// Multiplicity of each grade that occurs, in increasing grade order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut v: Vec<u32> = self.0.to_vec();
        v.sort_unstable();
        let mut out: Vec<(u32, usize)> = Vec::new();
        for g in v {
            match out.last_mut() {
                Some((h, n)) if *h == g => *n += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, g: u32) -> usize {
        self.0.iter().filter(|h| **h == g).count()
    }

    /// The canonical (grade-sorted) object with the same multiplicities.
    pub fn canonical(&self) -> Self {
        let mut v: Vec<u32> = self.0.to_vec();
        v.sort_unstable();
        Self::from_grades(v)
    }

    /// Basis positions of grade 0.
    pub fn grade_zero_positions(&self) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.0[*i] == 0).collect()
    }
}

impl fmt::Debug for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedObject {
    /// Element indices in basis order, e.g. `[0,1,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}
