use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use super::types::{EdgeKey, Priority, StateId};

/// Sort key of one entry: priority, then tie-break rank, then insertion number.
type Slot = (Priority, u64, u64);

/// Addressable priority queue with ordered traversal.
///
/// Equal priorities are broken by insertion number (FIFO) unless a non-zero
/// seed is given, in which case a seeded permutation of the insertion number
/// decides. Re-prioritising an entry counts as a fresh insertion.
#[derive(Debug, Clone)]
pub struct IndexedQueue<K> {
    order: BTreeMap<Slot, K>,
    slots: HashMap<K, Slot>,
    next_seq: u64,
    seed: u64,
}

pub type OpenQueue = IndexedQueue<EdgeKey>;
pub type BeQueue = IndexedQueue<StateId>;

impl<K: Copy + Eq + Hash> Default for IndexedQueue<K> {
    fn default() -> Self {
        Self::new(0)
    }
}

fn mix(x: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl<K: Copy + Eq + Hash> IndexedQueue<K> {
    pub fn new(tie_break_seed: u64) -> Self {
        IndexedQueue {
            order: BTreeMap::new(),
            slots: HashMap::new(),
            next_seq: 0,
            seed: tie_break_seed,
        }
    }

    /// Inserts `key` with priority `f`, or moves it if already present.
    pub fn insert_or_update(&mut self, key: K, f: Priority) {
        debug_assert!(f.0.is_finite() && f.0 >= 0.0, "priority must be finite and nonnegative");
        if let Some(old) = self.slots.remove(&key) {
            self.order.remove(&old);
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        let rank = if self.seed == 0 { seq } else { mix(seq ^ self.seed) };
        let slot = (f, rank, seq);
        self.order.insert(slot, key);
        self.slots.insert(key, slot);
    }

    pub fn remove(&mut self, key: &K) -> Option<Priority> {
        let slot = self.slots.remove(key)?;
        self.order.remove(&slot);
        Some(slot.0)
    }

    pub fn pop_front(&mut self) -> Option<(K, Priority)> {
        let ((f, _, _), key) = self.order.pop_first()?;
        self.slots.remove(&key);
        Some((key, f))
    }

    pub fn front(&self) -> Option<(K, Priority)> {
        self.order.first_key_value().map(|(s, k)| (*k, s.0))
    }

    pub fn priority(&self, key: &K) -> Option<Priority> {
        self.slots.get(key).map(|s| s.0)
    }

    pub fn contains(&self, key: &K) -> bool {
        self.slots.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Front-to-back traversal in non-decreasing priority order.
    pub fn iter(&self) -> impl Iterator<Item = (K, Priority)> + '_ {
        self.order.iter().map(|(s, k)| (*k, s.0))
    }
}
