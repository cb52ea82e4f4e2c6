"""Pure Python Gaussian elimination over F_p.

Same interface and results as the compiled ``_kernels`` module; used when the
extension is not built or when ``CONIFOLD_PURE=1`` is set.
"""


def _eliminate(a, p, reduced):
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        prow = a[r]
        for j in range(c, nc):
            prow[j] = prow[j] * inv % p
        nz = [j for j in range(c, nc) if prow[j]]
        for i in range(0 if reduced else r + 1, nr):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                f = p - f
                for j in nz:
                    row[j] = (row[j] + f * prow[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_modp(rows, p):
    """Rank over F_p of a dense matrix given as a list of integer rows."""
    if not rows or not rows[0]:
        return 0
    a = [[x % p for x in row] for row in rows]
    return len(_eliminate(a, p, False))


def rref_modp(rows, p):
    """Reduced row echelon form over F_p; returns ``(rows, pivot_columns)``."""
    if not rows:
        return [], []
    a = [[x % p for x in row] for row in rows]
    if not a[0]:
        return a, []
    pivots = _eliminate(a, p, True)
    return a, pivots
