//! Byte-lane packing of exponent vectors for fast divisibility tests.
//!
//! Each exponent occupies one 8-bit lane of a `u128` word, so sixteen
//! variables fit in one word. Exponents must stay below 128 so that the
//! high bit of every lane is free to act as a borrow guard.

pub(crate) const LANES: usize = 16;
const HI: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
const ONES: u128 = 0x0101_0101_0101_0101_0101_0101_0101_0101;

pub(crate) fn words_for(nvars: usize) -> usize {
    nvars.div_ceil(LANES).max(1)
}

/// Packs `exps` into `out`; returns false if some exponent is too large.
pub(crate) fn pack_into(exps: &[u32], out: &mut [u128]) -> bool {
    out.iter_mut().for_each(|w| *w = 0);
    for (i, &e) in exps.iter().enumerate() {
        if e > 127 {
            return false;
        }
        out[i / LANES] |= (e as u128) << (8 * (i % LANES));
    }
    true
}

#[inline]
pub(crate) fn divides(g: &[u128], a: &[u128]) -> bool {
    g.iter().zip(a).all(|(&g, &a)| ((a | HI) - g) & HI == HI)
}

/// High bit of each lane set where `g < a` (strictly).
#[inline]
pub(crate) fn strict_lanes(g: u128, a: u128) -> u128 {
    ((a | HI) - g - ONES) & HI
}

/// Row-major store of packed exponent vectors.
#[derive(Debug, Clone)]
pub(crate) struct PackedRows {
    pub width: usize,
    pub data: Vec<u128>,
}

impl PackedRows {
    pub fn new(nvars: usize) -> Self {
        PackedRows {
            width: words_for(nvars),
            data: Vec::new(),
        }
    }

    /// Appends a row; false if it cannot be packed.
    pub fn push(&mut self, exps: &[u32]) -> bool {
        let start = self.data.len();
        self.data.resize(start + self.width, 0);
        if pack_into(exps, &mut self.data[start..]) {
            true
        } else {
            self.data.truncate(start);
            false
        }
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.width
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u128] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    #[cfg(test)]
    pub fn any_divides(&self, a: &[u128]) -> bool {
        self.data.chunks_exact(self.width).any(|g| divides(g, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lane_divisibility() {
        let mut g = [0u128; 1];
        let mut a = [0u128; 1];
        assert!(pack_into(&[1, 0, 3], &mut g));
        assert!(pack_into(&[1, 2, 3], &mut a));
        assert!(divides(&g, &a));
        assert!(!divides(&a, &g));
        assert!(!pack_into(&[200], &mut g));
    }

    #[test]
    fn strict_lane_mask() {
        let mut g = [0u128; 1];
        let mut a = [0u128; 1];
        pack_into(&[1, 2, 0, 127], &mut g);
        pack_into(&[1, 3, 4, 127], &mut a);
        let m = strict_lanes(g[0], a[0]);
        let lanes: Vec<usize> = (0..LANES).filter(|i| m >> (8 * i + 7) & 1 == 1).collect();
        assert_eq!(lanes, vec![1, 2]);
    }

    #[test]
    fn multiword_rows() {
        let exps: Vec<u32> = (0..20).map(|i| i % 3).collect();
        let mut rows = PackedRows::new(20);
        assert_eq!(rows.width, 2);
        assert!(rows.push(&exps));
        let mut bigger = exps.clone();
        bigger[19] += 1;
        let mut a = vec![0u128; 2];
        pack_into(&bigger, &mut a);
        assert!(rows.any_divides(&a));
        bigger[17] = 0;
        pack_into(&bigger, &mut a);
        assert!(!rows.any_divides(&a));
    }
}
