"""Pure-Python shortest-path closure of a difference-bound matrix.

``ub`` is a flat row-major list where ``ub[i*n + j]`` bounds ``v_j - v_i`` from
above and ``None`` means no bound.  Values may be ints or Fractions.
"""


def floyd_warshall(ub, n):
    """Return the closed bound list, or ``None`` if the constraints are
    unsatisfiable (a negative cycle)."""
    w = list(ub)
    for k in range(n):
        row_k = k * n
        for i in range(n):
            wik = w[i * n + k]
            if wik is None:
                continue
            row_i = i * n
            for j in range(n):
                wkj = w[row_k + j]
                if wkj is None:
                    continue
                s = wik + wkj
                cur = w[row_i + j]
                if cur is None or s < cur:
                    w[row_i + j] = s
        if w[row_k + k] < 0:
            return None
    for i in range(n):
        if w[i * n + i] < 0:
            return None
    return w
