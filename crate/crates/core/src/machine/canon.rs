use std::collections::BTreeMap;

use crate::formula::{sym, Binding, Eigen};

use super::{Id, StoreEntry};

/// Compact hashable form of a canonicalized ID.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Box<[u32]>);

/// Renames eigenvariables to `X1..Xn` in first-use order over the goal
/// binding, the auxiliary binding, the store and then the rest of the
/// working domain; erases labels and sorts the store as a set.
pub fn canonicalize(id: &Id) -> Id {
    let mut map: BTreeMap<Eigen, Eigen> = BTreeMap::new();
    let assign = |map: &mut BTreeMap<Eigen, Eigen>, e: Eigen| {
        let next = Eigen(map.len() as u32 + 1);
        map.entry(e).or_insert(next);
    };
    for e in id.w.values().chain(id.aux.values()) {
        assign(&mut map, e);
    }
    let mut order: Vec<&StoreEntry> = id.store.iter().collect();
    let partial_key = |map: &BTreeMap<Eigen, Eigen>, e: &StoreEntry| {
        let b: Vec<(u32, u32)> = e
            .binding
            .iter()
            .map(|(n, x)| (n.0, map.get(&x).map_or(u32::MAX, |y| y.0)))
            .collect();
        (e.node, b)
    };
    order.sort_by_cached_key(|e| partial_key(&map, e));
    for e in order {
        for x in e.binding.values() {
            assign(&mut map, x);
        }
    }
    for &x in &id.domain {
        assign(&mut map, x);
    }
    let rename = |b: &Binding| b.map_values(|x| map[&x]);
    let blank = sym("");
    let mut store: Vec<StoreEntry> = id
        .store
        .iter()
        .map(|e| StoreEntry {
            node: e.node,
            binding: rename(&e.binding),
            label: blank.clone(),
        })
        .collect();
    store.sort_by(|a, b| (a.node, &a.binding).cmp(&(b.node, &b.binding)));
    store.dedup();
    let mut domain: Vec<Eigen> = id.domain.iter().map(|x| map[x]).collect();
    domain.sort();
    Id {
        state: id.state,
        node: id.node,
        w: rename(&id.w),
        aux: rename(&id.aux),
        store,
        domain,
    }
}

impl CanonKey {
    pub fn of(id: &Id) -> CanonKey {
        let c = canonicalize(id);
        let mut v: Vec<u32> = Vec::with_capacity(8 + 3 * c.store.len());
        v.push(c.state.0);
        v.push(c.node.0);
        let push_binding = |v: &mut Vec<u32>, b: &Binding| {
            v.push(b.len() as u32);
            for (n, e) in b.iter() {
                v.push(n.0);
                v.push(e.0);
            }
        };
        push_binding(&mut v, &c.w);
        push_binding(&mut v, &c.aux);
        v.push(c.store.len() as u32);
        for e in &c.store {
            v.push(e.node.0);
            push_binding(&mut v, &e.binding);
        }
        v.push(c.domain.len() as u32);
        CanonKey(v.into_boxed_slice())
    }
}
