//! Finite abelian groups as products of cyclic groups.
//!
//! Elements are coordinate tuples reduced modulo the group's moduli. The
//! enumeration order is lexicographic (most-significant coordinate first),
//! and the position of an element in that order is its *flat index*: the one
//! canonical bijection between the group and `0..order` that tensors, dense
//! function tables, and file formats all share.

use crate::{Error, Result};

/// A product `Z_{n_1} x ... x Z_{n_r}` of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

/// An element of a [`FiniteAbelianGroup`], stored as reduced residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl FiniteAbelianGroup {
    /// The cyclic group `Z_n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::product(&[n])
    }

    /// The product of cyclic groups with the given moduli.
    pub fn product(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidArgument(
                "group needs at least one modulus".into(),
            ));
        }
        let mut order: u64 = 1;
        for &m in moduli {
            if m == 0 {
                return Err(Error::InvalidArgument("modulus must be positive".into()));
            }
            order = order.checked_mul(m).ok_or_else(|| {
                Error::InvalidArgument("group order overflows u64".into())
            })?;
        }
        Ok(Self {
            moduli: moduli.to_vec(),
            order,
        })
    }

    /// Parses a descriptor such as `"Z5"` or `"Z2xZ4"`.
    pub fn from_descriptor(desc: &str) -> Result<Self> {
        let mut moduli = Vec::new();
        for part in desc.split('x') {
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "bad group descriptor {desc:?}: expected e.g. \"Z5\" or \"Z2xZ4\""
                    ))
                })?;
            let m: u64 = digits.parse().map_err(|_| {
                Error::InvalidArgument(format!("bad modulus {digits:?} in descriptor {desc:?}"))
            })?;
            moduli.push(m);
        }
        Self::product(&moduli)
    }

    /// Descriptor string, e.g. `"Z5"` or `"Z2xZ4"`.
    pub fn descriptor(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    /// Builds an element from coordinates, reducing each modulo its modulus.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::InvalidArgument(format!(
                "element arity {} does not match group rank {}",
                coords.len(),
                self.moduli.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check_member(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.moduli.len()
            || a.coords.iter().zip(&self.moduli).any(|(&c, &m)| c >= m)
        {
            return Err(Error::InvalidArgument(format!(
                "element {:?} does not belong to {}",
                a.coords,
                self.descriptor()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Integer multiple `k * a` (componentwise), for any signed `k`.
    pub fn scale(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| {
                let k = k.rem_euclid(m as i64) as u128;
                ((k * x as u128) % m as u128) as u64
            })
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// All elements in lexicographic order. The position of an element in
    /// this sequence is its flat index.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_from_flat(i as usize))
    }

    /// Flat index of an element under the lexicographic enumeration.
    pub fn flat_index(&self, a: &GroupElement) -> Result<usize> {
        self.check_member(a)?;
        let mut idx: u64 = 0;
        for (&c, &m) in a.coords.iter().zip(&self.moduli) {
            idx = idx * m + c;
        }
        Ok(idx as usize)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn element_from_flat(&self, mut idx: usize) -> GroupElement {
        assert!((idx as u64) < self.order, "flat index out of range");
        let mut coords = vec![0u64; self.moduli.len()];
        for (slot, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx as u64) % m;
            idx /= m as usize;
        }
        GroupElement { coords }
    }

    /// Addition on flat indices.
    #[inline]
    pub fn flat_add(&self, a: usize, b: usize) -> usize {
        if self.moduli.len() == 1 {
            let n = self.order as usize;
            return (a + b) % n;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut idx: u64 = 0;
        let mut stride: u64 = 1;
        for &m in self.moduli.iter().rev() {
            idx += ((a % m + b % m) % m) * stride;
            a /= m;
            b /= m;
            stride *= m;
        }
        idx as usize
    }

    /// Negation on flat indices.
    #[inline]
    pub fn flat_neg(&self, a: usize) -> usize {
        if self.moduli.len() == 1 {
            let n = self.order as usize;
            return (n - a) % n;
        }
        let mut a = a as u64;
        let mut idx: u64 = 0;
        let mut stride: u64 = 1;
        for &m in self.moduli.iter().rev() {
            idx += ((m - a % m) % m) * stride;
            a /= m;
            stride *= m;
        }
        idx as usize
    }

    /// Scaling on flat indices.
    #[inline]
    pub fn flat_scale(&self, k: i64, a: usize) -> usize {
        let mut a = a as u64;
        let mut idx: u64 = 0;
        let mut stride: u64 = 1;
        for &m in self.moduli.iter().rev() {
            let k = k.rem_euclid(m as i64) as u128;
            idx += (((k * (a % m) as u128) % m as u128) as u64) * stride;
            a /= m;
            stride *= m;
        }
        idx as usize
    }

    /// Full addition table on flat indices, `table[a * order + b]`.
    ///
    /// Only sensible for small groups; enumeration loops use it to keep index
    /// arithmetic out of their hot paths.
    pub(crate) fn addition_table(&self) -> Vec<u32> {
        let n = self.order as usize;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.flat_add(a, b) as u32;
            }
        }
        table
    }
}

/// Primality by trial division. Intended for inputs below 10^6.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
