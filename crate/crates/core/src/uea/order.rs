//! Rewriting of words in Chevalley letters into canonical PBW order.
//!
//! A canonical monomial is a non-decreasing sequence of letter indices; since
//! letters are numbered F-block, H-block, E-block this is exactly the order
//! n⁻·h·n. Products `monomial · letter` are memoized per root datum and have
//! integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use crate::rootsys::RootDatum;

pub type Mono = Vec<u8>;
pub type Expansion = Arc<Vec<(Mono, i64)>>;

type Key = (u64, Mono, u8);

static CACHE: LazyLock<Mutex<HashMap<Key, Expansion>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn add_into(acc: &mut BTreeMap<Mono, i64>, m: Mono, c: i64) {
    if c == 0 {
        return;
    }
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().checked_add(c).expect("PBW coefficient overflow");
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Canonical expansion of `m · x` for a canonical monomial `m`.
pub fn mono_times_letter(rd: &RootDatum, m: &[u8], x: u8) -> Expansion {
    if m.last().is_none_or(|&l| l <= x) {
        let mut out = m.to_vec();
        out.push(x);
        return Arc::new(vec![(out, 1)]);
    }
    let key = (rd.id(), m.to_vec(), x);
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    // m = m' y with y > x:  m' y x = (m' x) y + m' [y, x]
    let (&y, head) = m.split_last().unwrap();
    let mut acc: BTreeMap<Mono, i64> = BTreeMap::new();
    for (n, c) in mono_times_letter(rd, head, x).iter() {
        for (p, d) in mono_times_letter(rd, n, y).iter() {
            add_into(&mut acc, p.clone(), c.checked_mul(*d).expect("PBW coefficient overflow"));
        }
    }
    for &(z, c) in rd.bracket(y as usize, x as usize) {
        for (p, d) in mono_times_letter(rd, head, z as u8).iter() {
            add_into(&mut acc, p.clone(), c.checked_mul(*d).expect("PBW coefficient overflow"));
        }
    }
    let out: Expansion = Arc::new(acc.into_iter().collect());
    CACHE.lock().unwrap().insert(key, out.clone());
    out
}

/// Canonical expansion of `m₁ · m₂` for canonical monomials.
pub fn mono_times_mono(rd: &RootDatum, m1: &[u8], m2: &[u8]) -> Vec<(Mono, i64)> {
    let mut cur: BTreeMap<Mono, i64> = BTreeMap::new();
    cur.insert(m1.to_vec(), 1);
    for &x in m2 {
        let mut next = BTreeMap::new();
        for (m, c) in cur {
            for (p, d) in mono_times_letter(rd, &m, x).iter() {
                add_into(&mut next, p.clone(), c.checked_mul(*d).expect("PBW coefficient overflow"));
            }
        }
        cur = next;
    }
    cur.into_iter().collect()
}

/// Canonical expansion of an arbitrary word.
pub fn word(rd: &RootDatum, w: &[u8]) -> Vec<(Mono, i64)> {
    mono_times_mono(rd, &[], w)
}
