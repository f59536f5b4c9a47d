"""Small exact linear algebra: rational elimination and integer solving.

Matrices are lists of rows of ``Fraction``/``int``. Sizes here are tiny (a
few dozen rows at most) so clarity wins over speed.
"""

from fractions import Fraction


def solve_rational(a, b):
    """Solve the square system ``a x = b`` over Q. Returns ``None`` if singular."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vc for vi, vc in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def _xgcd(a, b):
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_integer(a, b):
    """Find an integer vector ``x`` with ``a x = b``, or ``None`` if none exists.

    Column-style Hermite reduction: unimodular column operations (tracked in
    ``u``) bring ``a`` to lower echelon form ``h = a u``; then ``h y = b`` is
    solved by forward substitution and ``x = u y``. Free coordinates are 0.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h = [[int(v) for v in row] for row in a]
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def colop(j, k, p, q, r, s):
        # (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k); ps - qr = +-1
        for mat in (h, u):
            for row in mat:
                cj, ck = row[j], row[k]
                row[j], row[k] = p * cj + q * ck, r * cj + s * ck

    pivots = []
    p = 0
    for i in range(rows):
        if p >= cols:
            break
        for k in range(p + 1, cols):
            if h[i][k] == 0:
                continue
            g, x, y = _xgcd(h[i][p], h[i][k])
            ap, ak = h[i][p] // g, h[i][k] // g
            colop(p, k, x, y, -ak, ap)
        if h[i][p] != 0:
            if h[i][p] < 0:
                for mat in (h, u):
                    for row in mat:
                        row[p] = -row[p]
            pivots.append((i, p))
            p += 1

    y = [0] * cols
    pivot_rows = dict(pivots)
    for i in range(rows):
        acc = sum(h[i][q] * y[q] for q in range(cols))
        if i in pivot_rows:
            col = pivot_rows[i]
            acc -= h[i][col] * y[col]
            rem = int(b[i]) - acc
            if rem % h[i][col]:
                return None
            y[col] = rem // h[i][col]
        elif acc != int(b[i]):
            return None
    return [sum(u[r][c] * y[c] for c in range(cols)) for r in range(cols)]
