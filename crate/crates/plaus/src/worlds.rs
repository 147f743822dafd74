//! Finite world sets, events as bitsets, and binary random variables.

use std::fmt;

use crate::error::{Error, Result};

/// A finite set of worlds. Worlds either carry free-form labels or are the
/// full tuple space of `n` binary variables, in which case world `w`
/// assigns variable `j` the bit `(w >> j) & 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Worlds {
    names: Vec<String>,
    vars: Option<Vec<String>>,
}

impl Worlds {
    /// Worlds with arbitrary labels and no variable structure.
    pub fn labeled<S: AsRef<str>>(names: &[S]) -> Self {
        Worlds {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            vars: None,
        }
    }

    /// The `2^n` worlds spanned by `n` binary variables. World names are
    /// bit strings listing variable values in declaration order.
    pub fn binary<S: AsRef<str>>(vars: &[S]) -> Self {
        let n = vars.len();
        assert!(n <= 16, "world spaces are capped at 16 binary variables");
        let names = (0..1usize << n)
            .map(|w| {
                (0..n)
                    .map(|j| if (w >> j) & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        Worlds {
            names,
            vars: Some(vars.iter().map(|s| s.as_ref().to_string()).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn var_names(&self) -> Option<&[String]> {
        self.vars.as_deref()
    }

    pub fn var_count(&self) -> Option<usize> {
        self.vars.as_ref().map(|v| v.len())
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .as_ref()
            .and_then(|vs| vs.iter().position(|v| v == name))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Value of variable `var` in world `w`.
    pub fn var_value(&self, w: usize, var: usize) -> bool {
        (w >> var) & 1 == 1
    }

    pub fn empty_event(&self) -> Event {
        Event::empty(self.len())
    }

    pub fn full_event(&self) -> Event {
        Event::full(self.len())
    }

    pub fn singleton(&self, w: usize) -> Event {
        let mut e = Event::empty(self.len());
        e.insert(w);
        e
    }

    pub fn event_from_indices(&self, idx: &[usize]) -> Event {
        let mut e = Event::empty(self.len());
        for &w in idx {
            assert!(w < self.len(), "world index out of range");
            e.insert(w);
        }
        e
    }

    /// Event `{w : vars all take the given values}` for a partial assignment.
    pub fn assignment_event(&self, pairs: &[(usize, bool)]) -> Event {
        let mut e = Event::empty(self.len());
        'world: for w in 0..self.len() {
            for &(var, val) in pairs {
                if self.var_value(w, var) != val {
                    continue 'world;
                }
            }
            e.insert(w);
        }
        e
    }

    /// All `2^|W|` events in mask order. Only sensible for small spaces.
    pub fn all_events(&self) -> impl Iterator<Item = Event> + '_ {
        let m = self.len();
        assert!(m <= 20, "event enumeration is capped at 20 worlds");
        (0..1u64 << m).map(move |mask| Event::from_mask(m, mask))
    }
}

/// A subset of a world set, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    n: usize,
    bits: Vec<u64>,
}

fn blocks_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Event {
    pub fn empty(n: usize) -> Self {
        Event { n, bits: vec![0; blocks_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut e = Event::empty(n);
        for w in 0..n {
            e.insert(w);
        }
        e
    }

    /// Event from the low `n` bits of a mask. Only valid for `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        debug_assert!(n == 64 || mask < (1u64 << n));
        Event { n, bits: vec![mask] }
    }

    /// The bitmask when the universe fits one block.
    pub fn mask(&self) -> Option<u64> {
        (self.n <= 64).then(|| self.bits[0])
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, w: usize) {
        assert!(w < self.n);
        self.bits[w / 64] |= 1 << (w % 64);
    }

    pub fn contains(&self, w: usize) -> bool {
        w < self.n && self.bits[w / 64] >> (w % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &Event) -> Event {
        self.zip(other, |a, b| a | b)
    }

    pub fn inter(&self, other: &Event) -> Event {
        self.zip(other, |a, b| a & b)
    }

    pub fn minus(&self, other: &Event) -> Event {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Event {
        let mut out = Event {
            n: self.n,
            bits: self.bits.iter().map(|b| !b).collect(),
        };
        out.trim();
        out
    }

    pub fn is_subset_of(&self, other: &Event) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &Event) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    /// World indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.contains(w))
    }

    /// Renders as `{i,j,...}` over world indices.
    pub fn render_indices(&self) -> String {
        let items: Vec<String> = self.iter().map(|w| w.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Renders using world names, e.g. `{a,c}` or `{00,11}`.
    pub fn render(&self, worlds: &Worlds) -> String {
        let items: Vec<String> = self.iter().map(|w| worlds.world_name(w).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    fn zip(&self, other: &Event, f: impl Fn(u64, u64) -> u64) -> Event {
        debug_assert_eq!(self.n, other.n);
        let mut out = Event {
            n: self.n,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        let extra = self.bits.len() * 64 - self.n;
        if extra > 0 {
            let last = self.bits.len() - 1;
            self.bits[last] &= u64::MAX >> extra;
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_indices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_worlds_encode_vars_in_bit_positions() {
        let w = Worlds::binary(&["A", "B"]);
        assert_eq!(w.len(), 4);
        // world 2 = binary 10 = A=0, B=1; names list var 0 first
        assert_eq!(w.world_name(2), "01");
        assert!(!w.var_value(2, 0));
        assert!(w.var_value(2, 1));
        let e = w.assignment_event(&[(1, true)]);
        assert_eq!(e.iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn event_algebra_closed() {
        let u = Event::from_mask(5, 0b01101);
        let v = Event::from_mask(5, 0b10100);
        assert_eq!(u.union(&v).mask(), Some(0b11101));
        assert_eq!(u.inter(&v).mask(), Some(0b00100));
        assert_eq!(u.complement().mask(), Some(0b10010));
        assert!(u.inter(&v).is_subset_of(&u));
        assert!(Event::empty(5).is_disjoint_from(&u));
    }

    #[test]
    fn multiblock_events() {
        let mut e = Event::empty(130);
        e.insert(0);
        e.insert(127);
        e.insert(129);
        assert_eq!(e.count(), 3);
        assert_eq!(e.complement().count(), 127);
        assert!(e.contains(129));
        assert_eq!(e.iter().collect::<Vec<_>>(), vec![0, 127, 129]);
    }
}
