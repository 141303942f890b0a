"""Affine solution spaces over the prime fields ``F_p``.

The module solver reduces every hom-search over ``Z/n`` (``n`` squarefree)
to one linear system per prime ``p | n``.  :class:`AffineSpace` stores the
solutions of such a system in a form that lets a depth-first search fix
variables one at a time, in index order, in O(#variables) per step.
"""

from __future__ import annotations

from dataclasses import dataclass


def _inverse(a: int, p: int) -> int:
    return pow(a, p - 2, p) if p > 2 else 1


@dataclass
class AffineSpace:
    """Solutions ``x0 + span(kernel)`` of a linear system mod ``p``.

    ``kernel[c]`` (when present) is the basis vector whose first non-zero
    entry sits at index ``c`` and equals 1; every other basis vector is zero
    at ``c``-or-earlier indices it does not lead.  Fixing variables in
    increasing index order therefore never disturbs earlier choices.
    """

    p: int
    nvars: int
    x0: list[int]
    kernel: dict[int, list[tuple[int, int]]]

    def dimension(self) -> int:
        return len(self.kernel)

    def count(self) -> int:
        return self.p ** len(self.kernel)

    def is_free(self, c: int) -> bool:
        return c in self.kernel

    def fix(self, x0: list[int], c: int, value: int) -> list[int] | None:
        """Return a copy of ``x0`` with variable ``c`` set to ``value``.

        Returns None when ``c`` is determined by earlier variables and
        ``value`` disagrees with it.
        """
        p = self.p
        value %= p
        shift = (value - x0[c]) % p
        if shift == 0:
            return x0
        vec = self.kernel.get(c)
        if vec is None:
            return None
        out = list(x0)
        for idx, coef in vec:
            out[idx] = (out[idx] + shift * coef) % p
        return out


def solve_affine(p: int, nvars: int, equations: list[tuple[dict[int, int], int]]) -> AffineSpace | None:
    """Solve ``sum(coef * x[var]) == rhs (mod p)`` for each equation.

    Returns None if the system is inconsistent.  Elimination runs with the
    variable order reversed, so that each pivot is the *last* variable of
    its row; the kernel vectors built from the remaining free variables
    then lead at their own free variable, as :class:`AffineSpace` requires.
    """
    rows: list[dict[int, int]] = []
    rhss: list[int] = []
    for coeffs, rhs in equations:
        row = {v: c % p for v, c in coeffs.items() if c % p}
        if not row:
            if rhs % p:
                return None
            continue
        rows.append(row)
        rhss.append(rhs % p)

    # Reduced row echelon form, sweeping columns from the highest index
    # down; afterwards each pivot row is non-zero only at its pivot and at
    # free variables of smaller index.
    pivots: dict[int, int] = {}
    remaining = set(range(len(rows)))
    columns = sorted({v for row in rows for v in row}, reverse=True)
    for col in columns:
        r = min((i for i in remaining if rows[i].get(col)), default=None)
        if r is None:
            continue
        remaining.discard(r)
        inv = _inverse(rows[r][col], p)
        rows[r] = {v: (c * inv) % p for v, c in rows[r].items()}
        rhss[r] = (rhss[r] * inv) % p
        prow = rows[r]
        for q, row in enumerate(rows):
            factor = row.get(col) if q != r else None
            if not factor:
                continue
            for v, c in prow.items():
                nv = (row.get(v, 0) - factor * c) % p
                if nv:
                    row[v] = nv
                else:
                    row.pop(v, None)
            rhss[q] = (rhss[q] - factor * rhss[r]) % p
        pivots[col] = r
    for i in remaining:
        if rhss[i]:
            return None

    x0 = [0] * nvars
    for lead, r in pivots.items():
        x0[lead] = rhss[r]
    kernel: dict[int, list[tuple[int, int]]] = {}
    # column view: which pivot rows mention each free variable
    mentions: dict[int, list[tuple[int, int]]] = {}
    for lead, r in pivots.items():
        for v, c in rows[r].items():
            if v != lead:
                mentions.setdefault(v, []).append((lead, c))
    for v in range(nvars):
        if v in pivots:
            continue
        vec = [(v, 1)]
        for lead, c in mentions.get(v, ()):
            vec.append((lead, (-c) % p))
        vec.sort()
        kernel[v] = vec
    return AffineSpace(p, nvars, x0, kernel)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of a dense matrix over ``F_p``."""
    m = [[v % p for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = _inverse(m[rank][col], p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def squarefree_primes(n: int) -> list[int]:
    """Prime divisors of ``n``; raises ValueError unless ``n`` is squarefree."""
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            n //= d
            if n % d == 0:
                raise ValueError("modulus must be squarefree")
        d += 1
    if n > 1:
        out.append(n)
    return out
