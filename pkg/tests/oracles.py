"""Independent reference computations used by the tests.

Nothing here imports the algebra of the package: noncommutative
polynomials are plain dicts, words are lists of (generator, +-1) letters,
and link diagrams come from braid closures.
"""

from __future__ import annotations

from collections import deque


# -- braid closures -----------------------------------------------------------

def braid_closure_gauss(word: list[int], strands: int) -> str:
    """Gauss code of the closure of a braid word.

    Letter ``+i`` is the generator in which the strand at position ``i``
    crosses over the one at ``i + 1`` (a positive crossing); ``-i`` is its
    inverse, with the other strand on top.  Components are ordered by the
    least starting position of their strands.
    """
    perm = list(range(strands))  # perm[pos] = starting strand now at pos
    segments = {s: [] for s in range(strands)}
    for cid, letter in enumerate(word, start=1):
        i = abs(letter) - 1
        sign = 1 if letter > 0 else -1
        left, right = perm[i], perm[i + 1]
        over, under = (left, right) if sign > 0 else (right, left)
        segments[over].append(f"O{cid}{'+' if sign > 0 else '-'}")
        segments[under].append(f"U{cid}{'+' if sign > 0 else '-'}")
        perm[i], perm[i + 1] = right, left
    end_pos = {strand: pos for pos, strand in enumerate(perm)}
    done, comps = set(), []
    for start in range(strands):
        if start in done:
            continue
        tokens, s = [], start
        while s not in done:
            done.add(s)
            tokens.extend(segments[s])
            s = end_pos[s]  # the strand leaving the bottom at pos p re-enters at top pos p
        comps.append(" ".join(tokens))
    return "; ".join(comps)


# -- noncommutative polynomials -------------------------------------------------

def poly_mul(a: dict, b: dict, q: int) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            if len(k) < q:
                out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def letter_poly(g: int, e: int, q: int) -> dict:
    # (1 + X)^(+-1) truncated
    if e > 0:
        return {(): 1, (g,): 1}
    return {tuple([g] * d): (-1) ** d for d in range(q)}


def magnus(letters: list[tuple[int, int]], q: int) -> dict:
    out = {(): 1}
    for g, e in letters:
        out = poly_mul(out, letter_poly(g, e, q), q)
    return out


def free_reduce(letters: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list = []
    for g, e in letters:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return out


def inverse(letters):
    return [(g, -e) for g, e in reversed(letters)]


def commutator(a, b):
    return inverse(a) + inverse(b) + a + b


# -- Milnor numbers via Wirtinger-style iteration ---------------------------------

def milnor_oracle(kinds, cutpoints, q: int) -> dict:
    """Coefficients of the longitude images, computed from scratch.

    ``cutpoints[i]`` is a list of (sign, (comp, region)).  Region words are
    rebuilt level by level as conjugates of meridians along the prefix path,
    each as a list of letters; the longitude of component ``j`` is then
    expanded.  Returns ``{(i_1..i_k, j): coefficient}`` for ``k < q``.
    """
    n = len(kinds)

    def nregions(c):
        k = len(cutpoints[c - 1])
        return max(k, 1) if kinds[c - 1] == "circle" else k + 1

    level = {(c, r): [(c, 1)] for c in range(1, n + 1) for r in range(nregions(c))}
    for _ in range(q - 1):
        new = {}
        for c in range(1, n + 1):
            prefix: list = []
            new[(c, 0)] = [(c, 1)]
            for r, (sign, lab) in enumerate(cutpoints[c - 1][: nregions(c) - 1], start=1):
                word = level[tuple(lab)] if sign > 0 else inverse(level[tuple(lab)])
                prefix = free_reduce(prefix + word)
                new[(c, r)] = free_reduce(inverse(prefix) + [(c, 1)] + prefix)
        level = new
    out = {}
    for j in range(1, n + 1):
        pts = cutpoints[j - 1]
        framing = sum(s for s, lab in pts if lab[0] == j)
        word = [(j, -1 if framing > 0 else 1)] * abs(framing)
        for sign, lab in pts:
            w = level[tuple(lab)]
            word += w if sign > 0 else inverse(w)
        poly = magnus(free_reduce(word), q)
        for k, v in poly.items():
            if k:
                out[k + (j,)] = v
    return out


# -- basic commutators -----------------------------------------------------------

def basic_commutators(n: int, weight: int) -> list:
    """Hall basic commutators up to ``weight`` as nested tuples; generators are ints."""
    by_weight = {1: [i for i in range(1, n + 1)]}
    order = list(by_weight[1])

    def w(c):
        return 1 if isinstance(c, int) else w(c[0]) + w(c[1])

    for k in range(2, weight + 1):
        new = []
        for a in order:
            for b in order:
                if w(a) + w(b) != k:
                    continue
                if order.index(a) <= order.index(b):
                    continue
                if not isinstance(a, int) and order.index(a[1]) > order.index(b):
                    continue
                new.append((a, b))
        by_weight[k] = new
        order.extend(new)
    return [c for c in order if w(c) == weight]


def commutator_letters(c) -> list[tuple[int, int]]:
    if isinstance(c, int):
        return [(c, 1)]
    return commutator(commutator_letters(c[0]), commutator_letters(c[1]))


# -- counts -------------------------------------------------------------------------

def linking_counts(cutpoints) -> dict:
    """``{(j, i): signed count of cut-points on i labeled by component j}``."""
    out: dict = {}
    for i, row in enumerate(cutpoints, start=1):
        for sign, (c, _) in row:
            out[(c, i)] = out.get((c, i), 0) + sign
    return out


def bfs(start, neighbours, goal, limit: int = 100000):
    """Shortest path of labels from ``start`` to a state satisfying ``goal``."""
    queue = deque([(start, [])])
    seen = {start}
    while queue and len(seen) < limit:
        state, path = queue.popleft()
        if goal(state):
            return path
        for label, nxt in neighbours(state):
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, path + [label]))
    return None


# -- abelian groups --------------------------------------------------------------

def invariant_factors(rows: list[list[int]], ncols: int) -> tuple[int, list[int]]:
    """Free rank of Z^ncols / (row span) and the orders of a cyclic
    decomposition of its torsion, by integer pivoting."""
    a = [list(r) for r in rows if any(r)]
    rank, torsion = 0, []
    while a:
        # pick the smallest nonzero pivot
        best = None
        for i, r in enumerate(a):
            for j, v in enumerate(r):
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        p = a[i][j]
        done = True
        for t, r in enumerate(a):
            if t != i and r[j]:
                f = r[j] // p
                a[t] = [x - f * y for x, y in zip(r, a[i])]
                done = done and a[t][j] == 0
        for c in range(ncols):
            if c != j and a[i][c]:
                f = a[i][c] // p
                for r in a:
                    r[c] -= f * r[j]
                done = done and a[i][c] == 0
        if done:
            rank += 1
            if abs(p) > 1:
                torsion.append(abs(p))
            a.pop(i)
            for r in a:
                r[j] = 0
            a = [r for r in a if any(r)]
    return ncols - rank, torsion


def abelianized_relations(presentation) -> tuple[list[list[int]], int]:
    gens = list(presentation.generators)
    index = {g: t for t, g in enumerate(gens)}
    rows = []
    for rel in presentation.relations:
        row = [0] * len(gens)
        for g, e in rel.syllables:
            row[index[g]] += e
        rows.append(row)
    return rows, len(gens)
