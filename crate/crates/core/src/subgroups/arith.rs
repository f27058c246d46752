use crate::groupcore::Permutation;

/// Multiplication on element indices of a materialized group.
///
/// Small groups get a full Cayley table; larger ones compose permutations and
/// binary-search the sorted element list.
pub(crate) struct Arith<'a> {
    elements: &'a [Permutation],
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
}

impl<'a> Arith<'a> {
    pub fn new(elements: &'a [Permutation], table_limit: usize) -> Self {
        let n = elements.len();
        let mut ar = Arith {
            elements,
            table: None,
            inverse: Vec::new(),
            orders: elements.iter().map(|g| g.order() as u64).collect(),
        };
        if n <= table_limit {
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = ar.slow_mul(a as u32, b as u32);
                }
            }
            ar.table = Some(table);
        }
        ar.inverse = elements.iter().map(|g| ar.index(&g.inverse())).collect();
        ar
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index(&self, p: &Permutation) -> u32 {
        self.elements.binary_search(p).expect("product stays inside the group") as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        self.index(&self.elements[a as usize].compose_unchecked(&self.elements[b as usize]))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.slow_mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn order(&self, a: u32) -> u64 {
        self.orders[a as usize]
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Powers `1, x, x², ...` of `x`, in order.
    pub fn powers(&self, x: u32) -> Vec<u32> {
        let mut out = vec![0u32];
        let mut y = x;
        while y != 0 {
            out.push(y);
            y = self.mul(y, x);
        }
        out
    }
}
