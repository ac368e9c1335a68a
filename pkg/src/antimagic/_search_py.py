"""Pure-Python backtracking kernel; the reference for the compiled one.

Inputs are integer keys: ``keys[i]`` is label ``i`` scaled to an integer and
``init[v]`` the scaled starting value of vertex ``v``.  In product mode the
value of a vertex is ``init[v] * prod(keys)``, in sum mode
``init[v] + sum(keys)``.  Edges are tried in id order and labels in index
order, so the first solution found is the lexicographically least
assignment.
"""

from __future__ import annotations


def search_first(
    keys: list[int],
    init: list[int],
    eu: list[int],
    ev: list[int],
    sat_ptr: list[int],
    sat_v: list[int],
    product: bool,
) -> list[int] | None:
    """Return ``perm`` with ``perm[e]`` the label index on edge ``e``, or
    ``None`` if no assignment makes the vertex values injective.

    ``sat_v[sat_ptr[k]:sat_ptr[k + 1]]`` lists the vertices whose last
    incident edge is edge ``k``.
    """
    m = len(keys)
    n = len(init)
    val = list(init)
    used = [False] * m
    perm = [-1] * m
    closed: dict[int, int] = {}  # value -> vertex, for saturated vertices
    if m == 0:
        return [] if len(set(init)) == n else None

    # per-level undo data
    choice = [-1] * m
    saved = [(0, 0)] * m
    k = 0
    while True:
        if choice[k] >= 0:
            # undo the previous choice at this level
            c = choice[k]
            used[c] = False
            for j in range(sat_ptr[k], sat_ptr[k + 1]):
                v = sat_v[j]
                if closed.get(val[v]) == v:
                    del closed[val[v]]
            val[eu[k]], val[ev[k]] = saved[k]
        c = choice[k] + 1
        placed = False
        while c < m:
            if not used[c]:
                u, w = eu[k], ev[k]
                saved[k] = (val[u], val[w])
                if product:
                    val[u] *= keys[c]
                    val[w] *= keys[c]
                else:
                    val[u] += keys[c]
                    val[w] += keys[c]
                ok = True
                added = []
                for j in range(sat_ptr[k], sat_ptr[k + 1]):
                    x = val[sat_v[j]]
                    if x in closed:
                        ok = False
                        break
                    closed[x] = sat_v[j]
                    added.append(x)
                if ok:
                    used[c] = True
                    choice[k] = c
                    perm[k] = c
                    placed = True
                    break
                for x in added:
                    del closed[x]
                val[u], val[w] = saved[k]
            c += 1
        if placed:
            if k == m - 1:
                return perm
            k += 1
            choice[k] = -1
        else:
            choice[k] = -1
            k -= 1
            if k < 0:
                return None
