"""Small exact linear algebra helpers over Scalars and over the integers."""

__all__ = ["nullspace", "integer_kernel"]


def nullspace(rows, ncols, zero, one):
    """Basis of ``{x : rows * x = 0}`` for a matrix of field elements.

    ``rows`` is a list of dicts ``{column: entry}`` (sparse); returns a list of
    dicts with the same keying.  Reduced row echelon form, one basis vector per
    free column.
    """
    pivots = []  # (pivot column, row dict normalized to 1 at pivot)
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for pc, prow in pivots:
            v = row.get(pc)
            if v:
                for c, w in prow.items():
                    nv = row.get(c, zero) - v * w
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = one / row[pc]
        row = {c: v * inv for c, v in row.items()}
        # keep earlier pivot rows reduced
        new_pivots = []
        for qc, qrow in pivots:
            v = qrow.get(pc)
            if v:
                qrow = dict(qrow)
                for c, w in row.items():
                    nv = qrow.get(c, zero) - v * w
                    if nv:
                        qrow[c] = nv
                    else:
                        qrow.pop(c, None)
            new_pivots.append((qc, qrow))
        pivots = new_pivots + [(pc, row)]
    pivot_cols = {pc for pc, _ in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = {free: one}
        for pc, prow in pivots:
            v = prow.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def _hnf_rows(vectors):
    """Row-style Hermite normal form of an integer lattice basis."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        # Euclid on column ``col`` across rows
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                f = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= f * piv[j]
        piv = next(r for r in rows if r[col])
        rows.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        for prev in out:
            f = prev[col] // piv[col]
            if f:
                for j in range(ncols):
                    prev[j] -= f * piv[j]
        out.append(piv)
        rows = [r for r in rows if any(r)]
        col += 1
    return [tuple(r) for r in out]


def integer_kernel(matrix):
    """Lattice basis of ``{x in Z^n : matrix * x = 0}`` in Hermite normal form.

    Column operations are applied to ``matrix`` while a unimodular ``U`` tracks
    them; once a column echelon form is reached, the columns of ``U`` matching
    zero columns span the kernel lattice exactly.
    """
    m = [list(map(int, r)) for r in matrix]
    nrows = len(m)
    n = len(m[0]) if m else 0
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of u

    def col_op(dst, src, f):
        for r in m:
            r[dst] -= f * r[src]
        for r in u:
            r[dst] -= f * r[src]

    def swap(a, b):
        for r in m:
            r[a], r[b] = r[b], r[a]
        for r in u:
            r[a], r[b] = r[b], r[a]

    lead = 0
    for row in range(nrows):
        if lead >= n:
            break
        while True:
            nz = [j for j in range(lead, n) if m[row][j]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda j: abs(m[row][j]))
            for j in nz:
                if j != p:
                    col_op(j, p, m[row][j] // m[row][p])
        nz = [j for j in range(lead, n) if m[row][j]]
        if nz:
            swap(lead, nz[0])
            lead += 1
    kernel = [tuple(u[i][j] for i in range(n)) for j in range(lead, n)]
    # the kernel lattice is saturated, so every basis vector is already primitive
    return _hnf_rows(kernel)
