"""Pure-Python versions of the hot loops.

These are the reference implementations; ``_ckernels.pyx`` mirrors them
line by line and must return identical results.
"""


def canonical_encoding(a, b):
    """Return ``(key, relabel)`` for the permutation pair ``(a, b)``.

    ``key`` is the lexicographically least tuple ``a' + b'`` over all
    breadth-first relabelings (one per start point) and ``relabel[old]`` is
    the new label of point ``old`` in the winning relabeling.  The pair must
    generate a transitive group.
    """
    d = len(a)
    best = None
    best_label = None
    for start in range(d):
        label = [-1] * d
        order = [start]
        label[start] = 0
        nxt = 1
        cand_a = []
        # 0: still tied with best, -1: already smaller, 1: larger (abort)
        state = 0 if best is not None else -1
        i = 0
        while i < len(order):
            u = order[i]
            v = a[u]
            if label[v] < 0:
                label[v] = nxt
                order.append(v)
                nxt += 1
            w = b[u]
            if label[w] < 0:
                label[w] = nxt
                order.append(w)
                nxt += 1
            x = label[v]
            cand_a.append(x)
            if state == 0:
                if x < best[i]:
                    state = -1
                elif x > best[i]:
                    state = 1
                    break
            i += 1
        if state == 1:
            continue
        if nxt != d:
            raise ValueError("permutation pair is not transitive")
        cand_b = [label[b[order[j]]] for j in range(d)]
        if state == 0:
            if tuple(cand_b) >= best[d:]:
                continue
        best = tuple(cand_a) + tuple(cand_b)
        best_label = label
    return best, tuple(best_label)


def closure_mod(gens, n, cap):
    """Breadth-first closure of 2x2 matrices mod ``n``.

    ``gens`` is a list of ``(a, b, c, d)`` residues.  Elements are encoded
    as ``((a*n + b)*n + c)*n + d``.  Raises ``OverflowError`` once more than
    ``cap`` elements have been found.
    """
    gens = [tuple(x % n for x in g) for g in gens]
    one = 1 % n
    identity = (one, 0, 0, one)
    n2 = n * n
    n3 = n2 * n
    seen = {one * n3 + one}
    frontier = [identity]
    while frontier:
        new = []
        for a, b, c, d in frontier:
            for e, f, g, h in gens:
                p = (a * e + b * g) % n
                q = (a * f + b * h) % n
                r = (c * e + d * g) % n
                s = (c * f + d * h) % n
                code = p * n3 + q * n2 + r * n + s
                if code not in seen:
                    seen.add(code)
                    if len(seen) > cap:
                        raise OverflowError(f"closure exceeded cap of {cap} elements")
                    new.append((p, q, r, s))
        frontier = new
    return seen
