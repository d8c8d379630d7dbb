//! Small GF(2) elimination helper shared by the code and decomposition logic.

/// Row-echelon basis of bit vectors (`key`s), each row carrying a `payload`
/// that is XORed along with it. Pivots are the highest set bit of each key
/// and are pairwise distinct; rows are kept sorted by decreasing pivot.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    rows: Vec<(u64, u64)>,
}

fn pivot(v: u64) -> u32 {
    63 - v.leading_zeros()
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.rows.iter().copied()
    }

    /// Clears every pivot bit of `key`. The residual is the numerically
    /// smallest element of `key + span`; the returned payload is the XOR of
    /// the payloads of the rows used.
    pub fn reduce(&self, mut key: u64) -> (u64, u64) {
        let mut payload = 0;
        for &(row, p) in &self.rows {
            if key >> pivot(row) & 1 == 1 {
                key ^= row;
                payload ^= p;
            }
        }
        (key, payload)
    }

    /// Inserts `key`. When it is already in the span, returns the payload of
    /// the vanishing combination (`payload` XOR the rows used) instead.
    pub fn insert(&mut self, key: u64, payload: u64) -> Option<u64> {
        let (key, used) = self.reduce(key);
        let payload = payload ^ used;
        if key == 0 {
            return Some(payload);
        }
        let pv = pivot(key);
        // keep existing rows clear of the new pivot so reduction stays canonical
        for row in &mut self.rows {
            if row.0 >> pv & 1 == 1 {
                row.0 ^= key;
                row.1 ^= payload;
            }
        }
        let at = self.rows.iter().position(|&(r, _)| pivot(r) < pv).unwrap_or(self.rows.len());
        self.rows.insert(at, (key, payload));
        None
    }

    pub fn contains(&self, key: u64) -> bool {
        self.reduce(key).0 == 0
    }
}
