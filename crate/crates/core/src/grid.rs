//! Triangular `(k, l)` grids used by the condensation tables.

/// Values on `{(k, l) : k >= 0, l >= l_min, k + l <= extent}`.
///
/// A negative extent gives an empty grid. Storage is a square of side
/// `extent + 1`; cells outside the triangle are never read.
#[derive(Clone, Debug, PartialEq)]
pub struct TriGrid<T> {
    extent: i64,
    l_min: i64,
    side: usize,
    data: Vec<T>,
}

impl<T: Clone> TriGrid<T> {
    pub fn new(extent: i64, l_min: i64, fill: T) -> Self {
        let side = (extent + 1).max(0) as usize;
        TriGrid { extent, l_min, side, data: vec![fill; side * side] }
    }

    pub fn extent(&self) -> i64 {
        self.extent
    }

    pub fn l_min(&self) -> i64 {
        self.l_min
    }

    pub fn contains(&self, k: i64, l: i64) -> bool {
        k >= 0 && l >= self.l_min && l >= 0 && k + l <= self.extent
    }

    pub fn get(&self, k: i64, l: i64) -> Option<&T> {
        self.contains(k, l).then(|| &self.data[k as usize * self.side + l as usize])
    }

    /// Like [`get`](Self::get) but panics outside the domain; the stencils
    /// only ever read inside it.
    pub fn at(&self, k: i64, l: i64) -> &T {
        self.get(k, l)
            .unwrap_or_else(|| panic!("cell ({k},{l}) outside grid of extent {} (l >= {})", self.extent, self.l_min))
    }

    pub fn set(&mut self, k: i64, l: i64, v: T) {
        assert!(self.contains(k, l), "cell ({k},{l}) outside grid of extent {}", self.extent);
        self.data[k as usize * self.side + l as usize] = v;
    }

    /// All cells of the domain, `k` outer and `l` inner.
    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let (extent, l_min) = (self.extent, self.l_min);
        (0..=extent.max(-1)).flat_map(move |k| (l_min.max(0)..=extent - k).map(move |l| (k, l)))
    }

    pub fn len(&self) -> usize {
        self.cells().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Storage row `k` (cells `(k, 0..=extent)`); entries past `extent - k`
    /// are padding. For hot loops that have already checked their bounds.
    pub(crate) fn raw_row(&self, k: i64) -> &[T] {
        let k = k as usize;
        &self.data[k * self.side..(k + 1) * self.side]
    }

    pub(crate) fn raw_row_mut(&mut self, k: i64) -> &mut [T] {
        let k = k as usize;
        &mut self.data[k * self.side..(k + 1) * self.side]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_shape() {
        let g = TriGrid::new(3, 0, 0u8);
        assert_eq!(g.len(), 10);
        assert!(g.contains(0, 3) && g.contains(3, 0) && !g.contains(2, 2));
        let s = TriGrid::new(3, 1, 0u8);
        assert_eq!(s.len(), 6);
        assert!(!s.contains(1, 0));
        let e = TriGrid::new(-1, 0, 0u8);
        assert!(e.is_empty());
        assert!(e.get(0, 0).is_none());
    }

    #[test]
    fn set_and_get() {
        let mut g = TriGrid::new(2, 0, 0i32);
        for (k, l) in g.cells().collect::<Vec<_>>() {
            g.set(k, l, (10 * k + l) as i32);
        }
        assert_eq!(*g.at(1, 1), 11);
        assert_eq!(g.get(2, 1), None);
    }
}
