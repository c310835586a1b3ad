#!/usr/bin/env python3
"""Regenerate crates/core/data/catalog.json.

Every group of order <= 20 is built from an explicit multiplication rule,
its Cayley table is checked for the group axioms, and the group is written
out as a set of generators in its (left) regular permutation representation.
"""
import itertools
import json
import pathlib


def cyclic(n):
    return list(range(n)), lambda a, b: (a + b) % n


def direct(*factors):
    elems = list(itertools.product(*[f[0] for f in factors]))

    def mul(a, b):
        return tuple(f[1](x, y) for f, x, y in zip(factors, a, b))

    return elems, mul


def metacyclic(m, n, r, s):
    """<x, y | x^m = 1, y^n = x^s, y x y^-1 = x^r> in normal form x^i y^j."""
    assert pow(r, n, m) == 1 % m and (s * r - s) % m == 0
    elems = [(i, j) for i in range(m) for j in range(n)]

    def mul(a, b):
        i, j = a
        k, l = b
        e = (i + k * pow(r, j, m)) % m
        t = j + l
        if t >= n:
            t -= n
            e = (e + s) % m
        return (e, t)

    return elems, mul


def perm_group(degree, gens):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(seen)
    return elems, lambda a, b: tuple(b[a[i]] for i in range(degree))


def semidirect_z2(base, phi):
    """base x| Z2 where the nontrivial element acts by the involutive automorphism phi."""
    elems = [(x, k) for x in base[0] for k in range(2)]

    def mul(a, b):
        x, k = a
        y, l = b
        yy = phi(y) if k else y
        return (base[1](x, yy), (k + l) % 2)

    return elems, mul


def table_of(group):
    elems, mul = group
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    tab = [[index[mul(a, b)] for b in elems] for a in elems]
    ident = next(i for i in range(n) if all(tab[i][j] == j and tab[j][i] == j for j in range(n)))
    for a in range(n):
        assert any(tab[a][b] == ident for b in range(n))
        for b in range(n):
            for c in range(n):
                assert tab[tab[a][b]][c] == tab[a][tab[b][c]]
    return tab, ident


def closure(tab, ident, gens):
    got = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tab[x][g]
                if y not in got:
                    got.add(y)
                    nxt.append(y)
        frontier = nxt
    return got


def element_order(tab, ident, g):
    k, x = 1, g
    while x != ident:
        x = tab[x][g]
        k += 1
    return k


def regular_generators(group):
    tab, ident = table_of(group)
    n = len(tab)
    # greedy small generating set: repeatedly add the highest-order element
    # outside the current subgroup
    order = sorted(range(n), key=lambda g: (-element_order(tab, ident, g), g))
    gens = []
    sub = {ident}
    while len(sub) < n:
        g = next(x for x in order if x not in sub)
        gens.append(g)
        sub = closure(tab, ident, gens)
    # the permutation of g is x -> g x, so composing "apply p then q" matches
    # the product q * p; the generated group is isomorphic either way
    perms = [[tab[g][x] for x in range(n)] for g in gens]
    return n, perms


def groups():
    Z = cyclic
    out = []

    def add(name, grp):
        out.append((name, grp))

    add("Z1", Z(1))
    add("Z2", Z(2))
    add("Z3", Z(3))
    add("Z4", Z(4))
    add("Z2^2", direct(Z(2), Z(2)))
    add("Z5", Z(5))
    add("Z6", Z(6))
    add("S3", metacyclic(3, 2, 2, 0))
    add("Z7", Z(7))
    add("Z8", Z(8))
    add("Z4xZ2", direct(Z(4), Z(2)))
    add("Z2^3", direct(Z(2), Z(2), Z(2)))
    add("D8", metacyclic(4, 2, 3, 0))
    add("Q8", metacyclic(4, 2, 3, 2))
    add("Z9", Z(9))
    add("Z3^2", direct(Z(3), Z(3)))
    add("Z10", Z(10))
    add("D10", metacyclic(5, 2, 4, 0))
    add("Z11", Z(11))
    add("Z12", Z(12))
    add("Z6xZ2", direct(Z(6), Z(2)))
    add("D12", metacyclic(6, 2, 5, 0))
    add("A4", perm_group(4, [(1, 2, 0, 3), (1, 0, 3, 2)]))
    add("Dic12", metacyclic(3, 4, 2, 0))
    add("Z13", Z(13))
    add("Z14", Z(14))
    add("D14", metacyclic(7, 2, 6, 0))
    add("Z15", Z(15))
    add("Z16", Z(16))
    add("Z4^2", direct(Z(4), Z(4)))
    z4z2 = direct(Z(4), Z(2))
    add("(Z4xZ2):Z2", semidirect_z2(z4z2, lambda v: (v[0], (v[1] + v[0]) % 2)))
    add("Z4:Z4", metacyclic(4, 4, 3, 0))
    add("Z8xZ2", direct(Z(8), Z(2)))
    add("M16", metacyclic(8, 2, 5, 0))
    add("D16", metacyclic(8, 2, 7, 0))
    add("SD16", metacyclic(8, 2, 3, 0))
    add("Q16", metacyclic(8, 2, 7, 4))
    add("Z4xZ2^2", direct(Z(4), Z(2), Z(2)))
    add("Z2xD8", direct(Z(2), metacyclic(4, 2, 3, 0)))
    add("Z2xQ8", direct(Z(2), metacyclic(4, 2, 3, 2)))
    # Pauli group: phase k in Z4 and basis bit b; X flips b, Z adds 2b, S adds 1
    add("Z4oD8", perm_group(8, [
        tuple(2 * k + (1 - b) for k in range(4) for b in range(2)),
        tuple(2 * ((k + 2 * b) % 4) + b for k in range(4) for b in range(2)),
        tuple(2 * ((k + 1) % 4) + b for k in range(4) for b in range(2)),
    ]))
    add("Z2^4", direct(Z(2), Z(2), Z(2), Z(2)))
    add("Z17", Z(17))
    add("Z18", Z(18))
    add("Z6xZ3", direct(Z(6), Z(3)))
    add("D18", metacyclic(9, 2, 8, 0))
    add("S3xZ3", direct(metacyclic(3, 2, 2, 0), Z(3)))
    z3z3 = direct(Z(3), Z(3))
    add("Z3^2:Z2", semidirect_z2(z3z3, lambda v: ((-v[0]) % 3, (-v[1]) % 3)))
    add("Z19", Z(19))
    add("Z20", Z(20))
    add("Z10xZ2", direct(Z(10), Z(2)))
    add("D20", metacyclic(10, 2, 9, 0))
    add("Dic20", metacyclic(10, 2, 9, 5))
    add("F20", metacyclic(5, 4, 2, 0))
    return out


def main():
    records = []
    for name, grp in groups():
        degree, perms = regular_generators(grp)
        records.append({"name": name, "degree": degree, "generators": perms})
    records.sort(key=lambda r: r["degree"])
    path = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/catalog.json"
    lines = ["["]
    for i, r in enumerate(records):
        sep = "," if i + 1 < len(records) else ""
        lines.append("  " + json.dumps(r, separators=(", ", ": ")) + sep)
    lines.append("]")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(records)} groups to {path}")


if __name__ == "__main__":
    main()
