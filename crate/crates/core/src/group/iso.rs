use std::collections::BTreeMap;

use super::{Elem, FiniteGroup, NamedGroup};

/// Invariants compared before any search: order, commutativity, the element
/// order spectrum (which also fixes every `s_d`) and the centre size.
fn screen(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order()
        && a.is_abelian() == b.is_abelian()
        && a.order_spectrum() == b.order_spectrum()
        && a.center().order() == b.center().order()
}

/// Deterministic small generating set: repeatedly take the lowest-index
/// element of largest order outside the subgroup generated so far.
fn generating_set(g: &FiniteGroup) -> Vec<Elem> {
    let mut candidates: Vec<Elem> = g.elements().collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut sub = g.subgroup_generated(&[]);
    for x in candidates {
        if sub.order() == g.order() {
            break;
        }
        if !sub.contains(x) {
            gens.push(x);
            sub = g.subgroup_generated(&gens);
        }
    }
    gens
}

/// Tries to extend `gens[i] -> images[i]` to an injective homomorphism on
/// the subgroup generated by the assigned generators.
fn extends(a: &FiniteGroup, b: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> bool {
    let n = a.order();
    let mut fwd = vec![usize::MAX; n];
    let mut back = vec![usize::MAX; n];
    fwd[a.identity()] = b.identity();
    back[b.identity()] = a.identity();
    let mut queue = vec![a.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(fwd[x], h);
            if fwd[y] == usize::MAX {
                if back[fy] != usize::MAX {
                    return false;
                }
                fwd[y] = fy;
                back[fy] = y;
                queue.push(y);
            } else if fwd[y] != fy {
                return false;
            }
        }
    }
    true
}

fn search(a: &FiniteGroup, b: &FiniteGroup, gens: &[Elem], images: &mut Vec<Elem>) -> bool {
    let depth = images.len();
    if depth == gens.len() {
        return true;
    }
    let want = a.element_order(gens[depth]);
    for h in b.elements().filter(|&h| b.element_order(h) == want) {
        images.push(h);
        if extends(a, b, &gens[..=depth], images) && search(a, b, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Exact isomorphism test: invariant screening, then a backtracking search
/// over images of a generating set. Candidates are tried in index order, so
/// the outcome and any witness are deterministic.
pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    isomorphism(a, b).is_some()
}

/// An explicit isomorphism `a -> b` as an element map, if one exists.
pub fn isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<Elem>> {
    if !screen(a, b) {
        return None;
    }
    let gens = generating_set(a);
    let mut images = Vec::new();
    if !search(a, b, &gens, &mut images) {
        return None;
    }
    let mut map = vec![usize::MAX; a.order()];
    map[a.identity()] = b.identity();
    let mut queue = vec![a.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(&images) {
            let y = a.mul(x, g);
            if map[y] == usize::MAX {
                map[y] = b.mul(map[x], h);
                queue.push(y);
            }
        }
    }
    Some(map)
}

fn labelled_targets(order: usize) -> Vec<NamedGroup> {
    use NamedGroup::*;
    let mut out = Vec::new();
    if order == 6 {
        out.push(Symmetric(3));
    }
    if order == 24 {
        out.push(Symmetric(4));
    }
    if order == 8 {
        out.push(NamedGroup::direct(Cyclic(4), Cyclic(2)));
        out.push(GeneralizedQuaternion(8));
    }
    if order == 16 {
        out.push(GeneralizedQuaternion(16));
        out.push(SemiDihedral(16));
    }
    if order >= 8 && order.is_multiple_of(2) {
        out.push(Dihedral(order));
    }
    out
}

/// Canonical label among the named families: `Z<n>` for cyclic groups,
/// `Z<p>^<k>` for elementary abelian groups, then `S3`, `D<2n>`, `Q8`,
/// `Z4xZ2`, ... by explicit isomorphism; `"unrecognized"` otherwise.
pub fn iso_label(g: &FiniteGroup) -> String {
    let n = g.order();
    if g.is_cyclic() {
        return format!("Z{n}");
    }
    if let Some(p) = g.prime_power_base() {
        if g.exponent() == p {
            let k = (n as f64).log(p as f64).round() as u32;
            return format!("Z{p}^{k}");
        }
    }
    let mut cache: BTreeMap<String, bool> = BTreeMap::new();
    for target in labelled_targets(n) {
        let label = target.to_string();
        let hit = *cache
            .entry(label.clone())
            .or_insert_with(|| target.build().map(|t| is_isomorphic(g, &t)).unwrap_or(false));
        if hit {
            return label;
        }
    }
    "unrecognized".to_string()
}
