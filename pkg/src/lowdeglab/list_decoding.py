"""High-error list decoding of Reed-Solomon codes.

`list_decode` recovers every polynomial of degree < m that agrees with at
least t of the given points, provided t > sqrt(N*m).  It interpolates a
nonzero bivariate polynomial Q(x, y) vanishing with a chosen multiplicity
at every point (a homogeneous linear system solved over the field), then
reads candidate polynomials off Q by recursive root finding
(shift-by-root, divide by x, recurse) and keeps the candidates that
actually reach the agreement threshold.

`brute_force_decode` scans all q^m message polynomials and is the
validation oracle for the interpolation path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import NUMBA_AVAILABLE, gf_kernel_vector, njit
from .gf2 import GF2Field
from .rs import Poly, poly_eval_many

_MAX_MULTIPLICITY = 64
_MAX_RR_NODES = 200_000


class DecodingBoundError(ValueError):
    """Parameters fall below the t > sqrt(N*m) list-decoding regime."""


@dataclass
class BivariatePoly:
    """Q(x, y) = sum coeffs[i, j] x^i y^j with (1, m-1)-weighted degree bound."""

    field: GF2Field
    coeffs: np.ndarray  # shape (x_deg+1, y_deg+1), dtype uint16
    m: int
    wdeg: int

    def weighted_degree(self) -> int:
        nz = np.argwhere(self.coeffs != 0)
        if nz.size == 0:
            return -1
        return int((nz[:, 0] + (self.m - 1) * nz[:, 1]).max())

    def eval(self, x: int, y: int) -> int:
        f = self.field
        acc = 0
        for i in range(self.coeffs.shape[0] - 1, -1, -1):
            row = 0
            for j in range(self.coeffs.shape[1] - 1, -1, -1):
                row = f.mul(row, y) ^ int(self.coeffs[i, j])
            acc = f.mul(acc, x) ^ row
        return acc

    def hasse_eval(self, u: int, v: int, x: int, y: int) -> int:
        """Hasse derivative D^{(u,v)}Q evaluated at (x, y)."""
        f = self.field
        acc = 0
        for i in range(u, self.coeffs.shape[0]):
            if (i & u) != u:  # C(i, u) mod 2 by Lucas
                continue
            for j in range(v, self.coeffs.shape[1]):
                if (j & v) != v:
                    continue
                c = int(self.coeffs[i, j])
                if c:
                    acc ^= f.mul(c, f.mul(f.pow(x, i - u), f.pow(y, j - v)))
        return acc


@dataclass
class DecodeResult:
    polys: list
    agreements: list

    def as_set(self) -> set:
        return {p.coeffs for p in self.polys}


def _monomials(m: int, wdeg: int) -> tuple[np.ndarray, np.ndarray]:
    """All exponent pairs (i, j) with i + (m-1)*j <= wdeg, j-major order."""
    if m < 2:
        raise ValueError("interpolation needs m >= 2 (m=1 decodes by counting)")
    w = m - 1
    mi, mj = [], []
    j = 0
    while j * w <= wdeg:
        top = wdeg - j * w
        mi.extend(range(top + 1))
        mj.extend([j] * (top + 1))
        j += 1
    return np.array(mi, dtype=np.int64), np.array(mj, dtype=np.int64)


def _monomial_count(m: int, wdeg: int) -> int:
    if m < 2:
        raise ValueError("interpolation needs m >= 2 (m=1 decodes by counting)")
    w = m - 1
    total, j = 0, 0
    while j * w <= wdeg:
        total += wdeg - j * w + 1
        j += 1
    return total


def choose_multiplicity(n_points: int, m: int, t: int) -> tuple[int, int]:
    """Smallest multiplicity r (and its weighted-degree bound) that makes
    the interpolation system underdetermined while t*r exceeds the bound."""
    for r in range(1, _MAX_MULTIPLICITY + 1):
        equations = n_points * r * (r + 1) // 2
        wdeg = 0
        while _monomial_count(m, wdeg) <= equations:
            wdeg += 1
        if t * r > wdeg:
            return r, wdeg
    raise DecodingBoundError(
        f"no multiplicity up to {_MAX_MULTIPLICITY} certifies n={n_points}, m={m}, t={t}"
    )


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _gs_matrix_jit(xs, ys, mon_i, mon_j, dus, dvs, logt, expt):  # pragma: no cover
        n = xs.shape[0]
        n_mon = mon_i.shape[0]
        n_der = dus.shape[0]
        max_i = 0
        max_j = 0
        for k in range(n_mon):
            if mon_i[k] > max_i:
                max_i = mon_i[k]
            if mon_j[k] > max_j:
                max_j = mon_j[k]
        xpow = np.empty((n, max_i + 1), np.uint16)
        ypow = np.empty((n, max_j + 1), np.uint16)
        for p in range(n):
            xpow[p, 0] = 1
            ypow[p, 0] = 1
            xv = xs[p]
            yv = ys[p]
            for e in range(1, max_i + 1):
                prev = xpow[p, e - 1]
                if prev == 0 or xv == 0:
                    xpow[p, e] = 0
                else:
                    xpow[p, e] = expt[logt[prev] + logt[xv]]
            for e in range(1, max_j + 1):
                prev = ypow[p, e - 1]
                if prev == 0 or yv == 0:
                    ypow[p, e] = 0
                else:
                    ypow[p, e] = expt[logt[prev] + logt[yv]]
        A = np.zeros((n_der * n, n_mon), np.uint16)
        for d in range(n_der):
            u = dus[d]
            v = dvs[d]
            base = d * n
            for k in range(n_mon):
                i = mon_i[k]
                j = mon_j[k]
                if i < u or j < v:
                    continue
                if (i & u) != u or (j & v) != v:
                    continue
                for p in range(n):
                    a = xpow[p, i - u]
                    b = ypow[p, j - v]
                    if a != 0 and b != 0:
                        A[base + p, k] = expt[logt[a] + logt[b]]
        return A


def _gs_matrix_numpy(field, xs, ys, mon_i, mon_j, dus, dvs):
    n = xs.shape[0]
    max_i = int(mon_i.max())
    max_j = int(mon_j.max())
    xpow = np.empty((max_i + 1, n), np.uint16)
    ypow = np.empty((max_j + 1, n), np.uint16)
    xpow[0] = 1
    ypow[0] = 1
    for e in range(1, max_i + 1):
        xpow[e] = field.mul_vec(xpow[e - 1], xs)
    for e in range(1, max_j + 1):
        ypow[e] = field.mul_vec(ypow[e - 1], ys)
    A = np.zeros((len(dus) * n, len(mon_i)), np.uint16)
    for d, (u, v) in enumerate(zip(dus, dvs)):
        rows = slice(d * n, (d + 1) * n)
        for k, (i, j) in enumerate(zip(mon_i, mon_j)):
            if i < u or j < v or (i & u) != u or (j & v) != v:
                continue
            A[rows, k] = field.mul_vec(xpow[i - u], ypow[j - v])
    return A


def gs_interpolate(
    field: GF2Field,
    points,
    m: int,
    multiplicity: int,
    wdeg: int | None = None,
) -> BivariatePoly:
    """Nonzero Q vanishing at every point with the given multiplicity.

    The weighted-degree bound defaults to the smallest value making the
    system underdetermined; a caller-supplied bound must do the same.
    """
    xs, ys = _as_point_arrays(field, points)
    n = xs.shape[0]
    if n == 0:
        raise ValueError("points must be nonempty")
    if multiplicity < 1:
        raise ValueError("multiplicity must be >= 1")
    equations = n * multiplicity * (multiplicity + 1) // 2
    if wdeg is None:
        wdeg = 0
        while _monomial_count(m, wdeg) <= equations:
            wdeg += 1
    elif _monomial_count(m, wdeg) <= equations:
        raise ValueError(
            f"weighted-degree bound {wdeg} gives only {_monomial_count(m, wdeg)} "
            f"unknowns for {equations} equations"
        )
    mon_i, mon_j = _monomials(m, wdeg)
    orders = [(u, v) for u in range(multiplicity) for v in range(multiplicity - u)]
    dus = np.array([u for u, _ in orders], dtype=np.int64)
    dvs = np.array([v for _, v in orders], dtype=np.int64)
    if NUMBA_AVAILABLE:
        A = _gs_matrix_jit(
            xs.astype(np.uint16), ys.astype(np.uint16), mon_i, mon_j, dus, dvs,
            field.log, field.exp,
        )
    else:
        A = _gs_matrix_numpy(field, xs.astype(np.uint16), ys.astype(np.uint16),
                             mon_i, mon_j, dus, dvs)
    x = gf_kernel_vector(A, field)
    y_max = int(mon_j.max())
    coeffs = np.zeros((wdeg + 1, y_max + 1), dtype=np.uint16)
    coeffs[mon_i, mon_j] = x
    return BivariatePoly(field, coeffs, m, wdeg)


# ---------------------------------------------------------------------------
# Root finding: all y-roots of Q that are polynomials in x of degree < m.
# ---------------------------------------------------------------------------


def _strip_x_valuation(coeffs: np.ndarray) -> np.ndarray:
    nz_rows = np.nonzero(coeffs.any(axis=1))[0]
    return coeffs[nz_rows[0]:, :]


if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _rr_descend_jit(coeffs0, m, q, logt, expt, max_found, node_budget):  # pragma: no cover
        """DFS over partial expansions p = c0 + c1 x + ...; returns (count, found).

        Each node holds Q(x, y) after substituting the prefix; stepping to a
        child substitutes y -> r + x*y for a root r of Q(0, y) and divides
        out the x power.  count = -1 signals budget exhaustion, -2 overflow
        of the found buffer.
        """
        nx0, ny = coeffs0.shape
        # each level grows the x-degree by at most ny-2 after stripping
        cap_x = nx0 + (m + 1) * max(ny - 2, 0) + ny + 2
        max_stack = (m + 2) * ny + 8
        stack_co = np.zeros((max_stack, cap_x, ny), np.uint16)
        stack_nx = np.zeros(max_stack, np.int64)
        stack_depth = np.zeros(max_stack, np.int64)
        stack_pref = np.zeros((max_stack, m), np.uint16)
        found = np.zeros((max_found, m), np.uint16)
        n_found = 0
        top = 0
        stack_co[0, :nx0, :] = coeffs0
        stack_nx[0] = nx0
        stack_depth[0] = 0
        top = 1
        nodes = 0
        roots_buf = np.empty(q, np.uint16)
        while top > 0:
            nodes += 1
            if nodes > node_budget:
                return -1, found
            top -= 1
            nx = stack_nx[top]
            depth = stack_depth[top]
            cur = stack_co[top]
            pref = stack_pref[top]
            # strip x-valuation
            v = 0
            for i in range(nx):
                row_any = False
                for j in range(ny):
                    if cur[i, j] != 0:
                        row_any = True
                        break
                if row_any:
                    v = i
                    break
            else:
                continue  # identically zero: cannot happen for nonzero Q
            nx -= v
            if v:
                for i in range(nx):
                    for j in range(ny):
                        cur[i, j] = cur[i + v, j]
            # roots of Q(0, y) by scanning the field
            n_roots = 0
            for a in range(q):
                acc = 0
                for j in range(ny - 1, -1, -1):
                    if acc == 0:
                        acc = cur[0, j]
                    elif a == 0:
                        acc = cur[0, j]
                    else:
                        acc = expt[logt[acc] + logt[a]] ^ cur[0, j]
                if acc == 0:
                    roots_buf[n_roots] = a
                    n_roots += 1
            for ri in range(n_roots):
                r = roots_buf[ri]
                if depth == m - 1:
                    if n_found >= max_found:
                        return -2, found
                    for dd in range(depth):
                        found[n_found, dd] = pref[dd]
                    found[n_found, depth] = r
                    n_found += 1
                else:
                    # child = Q(x, r + x*y), written into the next stack slot
                    slot = top
                    dst = stack_co[slot]
                    for i in range(cap_x):
                        for j in range(ny):
                            dst[i, j] = 0
                    for j in range(ny):
                        any_col = False
                        for i in range(nx):
                            if cur[i, j] != 0:
                                any_col = True
                                break
                        if not any_col:
                            continue
                        for s in range(j + 1):
                            if (j & s) != s:
                                continue
                            # scale = r^(j-s)
                            scale = 1
                            for _ in range(j - s):
                                if scale == 0 or r == 0:
                                    scale = 0
                                    break
                                scale = expt[logt[scale] + logt[r]]
                            if scale == 0 and j != s:
                                continue
                            if j == s:
                                scale = 1
                            for i in range(nx):
                                c = cur[i, j]
                                if c != 0:
                                    if scale == 1:
                                        dst[i + s, s] ^= c
                                    else:
                                        dst[i + s, s] ^= expt[logt[c] + logt[scale]]
                    stack_nx[slot] = nx + ny - 1
                    stack_depth[slot] = depth + 1
                    for dd in range(depth):
                        stack_pref[slot, dd] = pref[dd]
                    stack_pref[slot, depth] = r
                    top += 1
        return n_found, found

    @njit(cache=True)
    def _compose_check_jit(coeffs, pc, logt, expt):  # pragma: no cover
        """True iff Q(x, p(x)) is the zero polynomial."""
        nx, ny = coeffs.shape
        mlen = pc.shape[0]
        deg_cap = nx + (ny - 1) * (mlen - 1) + 1
        acc = np.zeros(deg_cap, np.uint16)
        ppow = np.zeros(deg_cap, np.uint16)
        tmp = np.zeros(deg_cap, np.uint16)
        ppow[0] = 1
        plen = 1
        for j in range(ny):
            for i in range(nx):
                c = coeffs[i, j]
                if c != 0:
                    lc = logt[c]
                    for s in range(plen):
                        v = ppow[s]
                        if v != 0:
                            acc[i + s] ^= expt[lc + logt[v]]
            if j < ny - 1:
                new_len = plen + mlen - 1
                for s in range(new_len):
                    tmp[s] = 0
                for s in range(plen):
                    v = ppow[s]
                    if v != 0:
                        lv = logt[v]
                        for u in range(mlen):
                            w = pc[u]
                            if w != 0:
                                tmp[s + u] ^= expt[lv + logt[w]]
                for s in range(new_len):
                    ppow[s] = tmp[s]
                plen = new_len
        for s in range(deg_cap):
            if acc[s] != 0:
                return False
        return True

    @njit(cache=True)
    def _agreements_jit(pc, xs, ys, logt, expt):  # pragma: no cover
        n = xs.shape[0]
        m = pc.shape[0]
        agr = 0
        for idx in range(n):
            x = xs[idx]
            acc = 0
            for j in range(m - 1, -1, -1):
                if acc != 0 and x != 0:
                    acc = expt[logt[acc] + logt[x]] ^ pc[j]
                else:
                    acc = pc[j]
            if acc == ys[idx]:
                agr += 1
        return agr


def _roots_of_y_poly(field: GF2Field, ypoly: np.ndarray) -> list[int]:
    """Roots in the field of a univariate polynomial given low-to-high."""
    deg_idx = np.nonzero(ypoly)[0]
    if deg_idx.size == 0:
        return []
    if field.exp is not None and field.q <= 1 << 16:
        allv = np.arange(field.q, dtype=np.uint16)
        acc = np.zeros(field.q, dtype=np.uint16)
        for c in ypoly[::-1]:
            acc = field.mul_vec(acc, allv) ^ np.uint16(c)
        return [int(v) for v in np.nonzero(acc == 0)[0]]
    return [a for a in range(field.q) if _eval_y(field, ypoly, a) == 0]


def _eval_y(field, ypoly, a):
    acc = 0
    for c in ypoly[::-1]:
        acc = field.mul(acc, a) ^ int(c)
    return acc


def _shift_compose(field: GF2Field, coeffs: np.ndarray, r: int) -> np.ndarray:
    """Return coefficients of Q(x, r + x*y).

    In characteristic 2, (r + x y)^j = sum over s with C(j,s) odd of
    r^(j-s) x^s y^s, so each input column j scatters onto the diagonal.
    """
    nx, ny = coeffs.shape
    out = np.zeros((nx + ny - 1, ny), dtype=np.uint16)
    for j in range(ny):
        col = coeffs[:, j]
        if not col.any():
            continue
        for s in range(j + 1):
            if (j & s) != s:
                continue
            scale = field.pow(r, j - s)
            if scale == 0:
                continue
            if field.exp is not None:
                term = field.mul_vec(col, np.uint16(scale))
            else:
                term = np.array([field.mul(int(c), scale) for c in col], dtype=np.uint16)
            out[s: s + nx, s] ^= term
    return out


def y_roots(Q: BivariatePoly, m: int) -> list[Poly]:
    """All p with deg(p) < m and Q(x, p(x)) identically zero.

    Every candidate found by the recursion is verified by substitution
    into the original Q before being returned.
    """
    field = Q.field
    if not Q.coeffs.any():
        raise ValueError("Q must be nonzero")
    if NUMBA_AVAILABLE and field.exp is not None and field.q <= 1 << 16:
        coeffs0 = np.ascontiguousarray(Q.coeffs, dtype=np.uint16)
        count, buf = _rr_descend_jit(
            coeffs0, m, field.q, field.log, field.exp, 64, _MAX_RR_NODES
        )
        if count == -1:
            raise RecursionError("root-finding exploration budget exceeded")
        if count == -2:
            raise RuntimeError("root candidate buffer overflow: malformed input")
        uniq = sorted({tuple(int(v) for v in buf[i]) for i in range(count)})
    else:
        found: list[tuple] = []
        budget = [_MAX_RR_NODES]

        def descend(coeffs: np.ndarray, depth: int, prefix: list[int]):
            budget[0] -= 1
            if budget[0] <= 0:
                raise RecursionError("root-finding exploration budget exceeded")
            coeffs = _strip_x_valuation(coeffs)
            for r in _roots_of_y_poly(field, coeffs[0, :]):
                if depth == m - 1:
                    found.append(tuple(prefix + [r]))
                else:
                    descend(_shift_compose(field, coeffs, r), depth + 1, prefix + [r])

        descend(Q.coeffs.copy(), 0, [])
        uniq = sorted(set(found))
    out = []
    for coeffs in uniq:
        p = Poly(field, coeffs)
        if _compose_is_zero(Q, p):
            out.append(p)
    return out


def _compose_is_zero(Q: BivariatePoly, p: Poly) -> bool:
    """Check Q(x, p(x)) == 0 by full polynomial composition."""
    field = Q.field
    if NUMBA_AVAILABLE and field.exp is not None:
        return bool(
            _compose_check_jit(
                np.ascontiguousarray(Q.coeffs, dtype=np.uint16),
                np.array(p.coeffs, dtype=np.uint16),
                field.log,
                field.exp,
            )
        )
    nx, ny = Q.coeffs.shape
    deg_cap = nx + (ny - 1) * max(len(p.coeffs) - 1, 0)
    acc = np.zeros(deg_cap + 1, dtype=np.uint16)
    ppow = np.zeros(1, dtype=np.uint16)
    ppow[0] = 1
    pc = np.array(p.coeffs, dtype=np.uint16)
    for j in range(ny):
        col = Q.coeffs[:, j]
        if col.any():
            for i in np.nonzero(col)[0]:
                seg = _poly_scale(field, ppow, int(col[i]))
                acc[i: i + seg.shape[0]] ^= seg
        if j < ny - 1:
            ppow = _poly_mul(field, ppow, pc)
    return not acc.any()


def _poly_scale(field, poly, c):
    if c == 0:
        return np.zeros_like(poly)
    if field.exp is not None:
        return field.mul_vec(poly, np.uint16(c))
    return np.array([field.mul(int(v), c) for v in poly], dtype=np.uint16)


def _poly_mul(field, a, b):
    if not a.any() or not b.any():
        return np.zeros(1, dtype=np.uint16)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.uint16)
    if len(b) < len(a):
        a, b = b, a
    for s in np.nonzero(a)[0]:
        out[s: s + len(b)] ^= _poly_scale(field, b, int(a[s]))
    return out


# ---------------------------------------------------------------------------
# Decoders.
# ---------------------------------------------------------------------------


def _as_point_arrays(field, points):
    if isinstance(points, tuple) and len(points) == 2 and isinstance(points[0], np.ndarray):
        xs, ys = points
    else:
        pts = list(points)
        xs = np.array([p[0] for p in pts], dtype=np.int64)
        ys = np.array([p[1] for p in pts], dtype=np.int64)
    return np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64)


def _count_agreements(field, p: Poly, xs, ys) -> int:
    if NUMBA_AVAILABLE and field.exp is not None:
        return int(
            _agreements_jit(
                np.array(p.coeffs, dtype=np.uint16),
                xs.astype(np.uint16),
                ys.astype(np.uint16),
                field.log,
                field.exp,
            )
        )
    vals = poly_eval_many(p, xs.astype(np.uint16 if field.exp is not None else np.int64))
    return int((vals.astype(np.int64) == ys).sum())


def list_decode(field: GF2Field, points, m: int, t: int) -> DecodeResult:
    """All polynomials of degree < m agreeing with >= t of the points.

    Points are expected to have distinct x coordinates (the samplers and
    distinguishers in this package always arrange that); t must exceed
    sqrt(N*m) or the call is rejected.
    """
    xs, ys = _as_point_arrays(field, points)
    n = xs.shape[0]
    if t * t <= n * m:
        raise DecodingBoundError(f"need t > sqrt(n*m): t={t}, n={n}, m={m}")
    if t > n:
        return DecodeResult([], [])
    if m == 1:
        return _decode_constants(field, ys, t)
    r, wdeg = choose_multiplicity(n, m, t)
    Q = gs_interpolate(field, (xs, ys), m, r, wdeg)
    polys, agreements = [], []
    for p in y_roots(Q, m):
        agr = _count_agreements(field, p, xs, ys)
        if agr >= t:
            polys.append(p)
            agreements.append(agr)
    return DecodeResult(polys, agreements)


def _decode_constants(field, ys, t) -> DecodeResult:
    vals, counts = np.unique(ys, return_counts=True)
    polys, agreements = [], []
    for v, c in zip(vals, counts):
        if c >= t:
            polys.append(Poly(field, (int(v),)))
            agreements.append(int(c))
    return DecodeResult(polys, agreements)


def brute_force_decode(field: GF2Field, points, m: int, t: int) -> DecodeResult:
    """Exhaustive scan over all q^m messages; the oracle for list_decode."""
    if field.q**m > 1 << 20:
        raise ValueError(f"q^m = {field.q**m} exceeds the brute-force cap 2^20")
    xs, ys = _as_point_arrays(field, points)
    total = field.q**m
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((total, m), dtype=np.uint16)
    for j in range(m):
        digits[:, j] = (idx // field.q**j) % field.q
    agree = np.zeros(total, dtype=np.int64)
    for x, y in zip(xs, ys):
        acc = np.zeros(total, dtype=np.uint16)
        for j in range(m - 1, -1, -1):
            acc = field.mul_vec(acc, np.uint16(x)) ^ digits[:, j]
        agree += acc.astype(np.int64) == y
    hits = np.nonzero(agree >= t)[0]
    polys = [Poly(field, tuple(int(c) for c in digits[h])) for h in hits]
    order = sorted(range(len(polys)), key=lambda i: polys[i].coeffs)
    return DecodeResult(
        [polys[i] for i in order], [int(agree[hits[i]]) for i in order]
    )
