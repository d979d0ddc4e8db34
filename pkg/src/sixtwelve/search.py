"""p-adic lattice point search on intersections of quadrics.

A smooth residue point P0 mod p is split into p^(j-1) discs.  On each disc
the curve is Newton-lifted to a centre P_c mod p^(2j) with tangent T_c, and
every integral point of the disc is congruent mod p^(2j) to a multiple of
P_c + s T_c with s = 0 mod p^j.  Those vectors form a lattice of
determinant p^(j(2N-3)); Fincke-Pohst enumeration of the ball of radius
sqrt(N) * bound is exhaustive, so no point within the bound is missed.
The choice of (p, j) only changes the cost.
"""
from __future__ import annotations

import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import lll_reduce, row_hnf, short_vectors
from .models import GenusOneModel, ModelError, cover_any_to_E, normalize_point

log = logging.getLogger(__name__)


class SingularResidueError(ModelError):
    pass


@dataclass
class SearchConfig:
    height_bound: int
    primes: Tuple[int, ...] = ()
    # the lattice works modulo p^lift_exponent; lift_exponent = 2 j
    lift_exponent: Optional[int] = None
    thread_count: int = 1
    checkpoint: Optional[str] = None

    def __post_init__(self):
        if self.height_bound < 1:
            raise ValueError("height bound must be positive")
        if len(self.primes) > 2:
            raise ValueError("one or two auxiliary primes")
        if self.lift_exponent is not None and (self.lift_exponent < 2 or self.lift_exponent % 2):
            raise ValueError("lift exponent must be even and at least 2")


@dataclass
class FoundPoint:
    coords: List[int]
    down: Optional[list] = None
    E_point: object = None

    def key(self):
        return tuple(self.coords)


# ---------------------------------------------------------------------------
# quadrics as integer term lists

def _terms(model: GenusOneModel):
    out = []
    for q in model.quadrics():
        ts = []
        for e, c in q.terms.items():
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError("search needs an integral model")
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            ts.append((int(c), idx[0], idx[1]))
        out.append(ts)
    return out


def _eval(ts, x, m=None):
    v = sum(c * x[i] * x[j] for c, i, j in ts)
    return v % m if m else v


def _grad(ts, x, N):
    g = [0] * N
    for c, i, j in ts:
        g[i] += c * x[j]
        g[j] += c * x[i]
    return g


# ---------------------------------------------------------------------------
# F_p-points

def _sqrt_mod(a, p):
    a %= p
    if a == 0:
        return [0]
    if p == 2:
        return [1]
    from sympy.ntheory import sqrt_mod

    r = sqrt_mod(a, p, all_roots=True)
    return sorted(set(int(x) for x in r)) if r else []


def _roots_quadratic(a, b, c, p):
    a, b, c = a % p, b % p, c % p
    if a == 0:
        if b == 0:
            return None if c == 0 else []
        return [(-c * pow(b, -1, p)) % p]
    if p == 2:
        return [x for x in (0, 1) if (a * x * x + b * x + c) % 2 == 0]
    disc = (b * b - 4 * a * c) % p
    inv = pow(2 * a, -1, p)
    return sorted({((-b + s) * inv) % p for s in _sqrt_mod(disc, p)})


def enumerate_mod_p(model: GenusOneModel, p: int) -> List[Tuple[int, ...]]:
    """All F_p-points of the reduction, normalised with first nonzero coordinate 1.

    Depth-first assignment, most-constrained variable first.  A quadric
    with a single unassigned variable is solved for it; a fully assigned
    quadric that does not vanish prunes the branch.
    """
    terms = [[(c % p, i, j) for c, i, j in ts if c % p] for ts in _terms(model)]
    N = model.nvars
    qvars = [sorted({i for _, i, j in ts} | {j for _, i, j in ts}) for ts in terms]
    occupancy = [sum(v in qv for qv in qvars) for v in range(N)]
    out = []
    x: List[Optional[int]] = [None] * N

    def check_done():
        for ts, qv in zip(terms, qvars):
            if all(x[v] is not None for v in qv) and _eval(ts, x, p):
                return False
        return True

    def pick():
        best = None
        for ts, qv in zip(terms, qvars):
            free = [v for v in qv if x[v] is None]
            if len(free) == 1:
                v = free[0]
                a = b = c = 0
                for co, i, j in ts:
                    if i == v and j == v:
                        a += co
                    elif i == v:
                        b += co * x[j]
                    elif j == v:
                        b += co * x[i]
                    else:
                        c += co * x[i] * x[j]
                roots = _roots_quadratic(a, b, c, p)
                if roots is not None:
                    return v, roots
        free = [v for v in range(N) if x[v] is None]
        v = max(free, key=lambda u: (occupancy[u], -u))
        return v, range(p)

    def rec():
        if not check_done():
            return
        if all(v is not None for v in x):
            out.append(tuple(x))
            return
        v, vals = pick()
        for a in vals:
            x[v] = a
            rec()
        x[v] = None

    for lead in range(N):
        for i in range(N):
            x[i] = 0 if i < lead else None
        x[lead] = 1
        rec()
    return sorted(out)


def brute_force_mod_p(model: GenusOneModel, p: int) -> List[Tuple[int, ...]]:
    """All points of P^(N-1)(F_p) on the reduction, by exhaustion."""
    from itertools import product

    terms = _terms(model)
    N = model.nvars
    out = []
    for lead in range(N):
        for tail in product(range(p), repeat=N - lead - 1):
            x = (0,) * lead + (1,) + tail
            if all(_eval(ts, x, p) == 0 for ts in terms):
                out.append(x)
    return sorted(out)


# ---------------------------------------------------------------------------
# lifting

def _rank_select(J, p):
    """Rows and pivot columns of a maximal invertible minor of J mod p."""
    rows = []
    m = []
    piv = []
    for r, row in enumerate(J):
        cand = [x % p for x in row]
        for k, c in enumerate(piv):
            f = cand[c]
            if f:
                cand = [(a - f * b) % p for a, b in zip(cand, m[k])]
        c = next((i for i, a in enumerate(cand) if a), None)
        if c is None:
            continue
        inv = pow(cand[c], -1, p)
        cand = [(a * inv) % p for a in cand]
        for k in range(len(m)):
            f = m[k][c]
            if f:
                m[k] = [(a - f * b) % p for a, b in zip(m[k], cand)]
        m.append(cand)
        piv.append(c)
        rows.append(r)
    return rows, piv


def _solve_mod(A, b, mod):
    """Solve A x = b modulo mod for square A invertible mod the prime dividing mod."""
    from .exact import Matrix

    sol = Matrix([[Fraction(v) for v in r] for r in A]).solve([Fraction(v) for v in b])
    out = []
    for v in sol:
        out.append(v.numerator * pow(v.denominator, -1, mod) % mod)
    return out


@dataclass
class LocalChart:
    p: int
    residue: Tuple[int, ...]
    rows: List[int]
    pivots: List[int]
    a: int
    b: int


def local_chart(model: GenusOneModel, residue, p: int, terms=None) -> LocalChart:
    terms = terms or _terms(model)
    N = model.nvars
    x = [v % p for v in residue]
    if not any(x):
        raise ValueError("zero vector")
    if any(_eval(ts, x, p) for ts in terms):
        raise ValueError("residue point is not on the reduction")
    J = [_grad(ts, x, N) for ts in terms]
    rows, piv = _rank_select(J, p)
    if len(piv) != N - 2:
        raise SingularResidueError(f"Jacobian has rank {len(piv)} at the residue, expected {N - 2}")
    free = [c for c in range(N) if c not in piv]
    a = next(c for c in free if x[c])
    b = next(c for c in free if c != a)
    inv = pow(x[a], -1, p)
    x = [(v * inv) % p for v in x]
    return LocalChart(p, tuple(x), rows, piv, a, b)


def lift_centre(chart: LocalChart, terms, N, s, prec: int):
    """Point P with P_a = 1, P_b = s on the curve mod p^prec, and its tangent dP/ds."""
    p = chart.p
    mod = p ** prec
    sel = [terms[r] for r in chart.rows]
    x = list(chart.residue)
    x[chart.b] = s % mod
    k = 1
    while True:
        F = [_eval(ts, x) for ts in sel]
        if k >= prec and all(f % mod == 0 for f in F):
            break
        k = min(2 * k, prec)
        mk = p ** k
        J = [_grad(ts, x, N) for ts in sel]
        A = [[row[c] for c in chart.pivots] for row in J]
        d = _solve_mod(A, [-f for f in F], mk)
        for c, dv in zip(chart.pivots, d):
            x[c] = (x[c] + dv) % mk
    x = [v % mod for v in x]
    J = [_grad(ts, x, N) for ts in sel]
    A = [[row[c] for c in chart.pivots] for row in J]
    t = _solve_mod(A, [-row[chart.b] for row in J], mod)
    T = [0] * N
    T[chart.b] = 1
    for c, tv in zip(chart.pivots, t):
        T[c] = tv
    return x, T


def disc_lattice(P, T, p, j, N):
    """Basis of {lambda P + mu p^j T mod p^(2j)}."""
    mod = p ** (2 * j)
    gens = [list(P), [(p ** j * v) % mod for v in T]] + \
           [[mod if r == c else 0 for c in range(N)] for r in range(N)]
    return row_hnf(gens)


def _crt_lattice(B1, m1, B2, m2, N):
    e1 = m2 * pow(m2, -1, m1)
    e2 = m1 * pow(m1, -1, m2)
    gens = [[e1 * v for v in r] for r in B1] + [[e2 * v for v in r] for r in B2] + \
           [[m1 * m2 if r == c else 0 for c in range(N)] for r in range(N)]
    return row_hnf(gens)


def _primitive(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    v = [a // g for a in v]
    first = next(a for a in v if a)
    return [-a for a in v] if first < 0 else v


def _integer_roots(a, b, c):
    """Integer x with a x^2 + b x + c = 0; None means every x."""
    if a == 0:
        if b == 0:
            return None if c == 0 else []
        return [-c // b] if c % b == 0 else []
    d = b * b - 4 * a * c
    if d < 0:
        return []
    r = math.isqrt(d)
    if r * r != d:
        return []
    return sorted({(-b + s) // (2 * a) for s in (r, -r) if (-b + s) % (2 * a) == 0})


def _last_coefficient_solver(b1, terms):
    """Coefficients x making x b1 + y a zero of the first quadric that constrains x."""
    q1 = [_eval(ts, b1) for ts in terms]

    def solve(lo, hi, y):
        qy = [_eval(ts, y) for ts in terms]
        s = [a + b for a, b in zip(b1, y)]
        for a, ts, c in zip(q1, terms, qy):
            roots = _integer_roots(a, _eval(ts, s) - a - c, c)
            if roots is not None:
                return roots
        return range(lo, hi + 1)

    return solve


def _search_lattice(basis, terms, bound, N):
    red = lll_reduce(basis)
    out = []
    solver = _last_coefficient_solver([int(a) for a in red[0]], terms)
    for v in short_vectors(red, N * bound * bound, solver):
        v = _primitive([int(a) for a in v])
        if max(abs(a) for a in v) <= bound and all(_eval(ts, v) == 0 for ts in terms):
            out.append(v)
    return out


def auto_disc_exponent(N: int, p: int, bound: int) -> int:
    """Smallest j with p^(j(2N-3)) at least the volume of the search ball."""
    logvol = (N / 2) * math.log(math.pi) - math.lgamma(N / 2 + 1) + N * math.log(math.sqrt(N) * bound)
    j = 1
    while j * (2 * N - 3) * math.log(p) < logvol:
        j += 1
    return j


def lift_and_search(model: GenusOneModel, residue, p: int, bound: int, j: Optional[int] = None,
                    terms=None) -> List[List[int]]:
    """All primitive points of the model reducing to residue mod p with max-abs <= bound."""
    terms = terms or _terms(model)
    N = model.nvars
    chart = local_chart(model, residue, p, terms)
    if j is None:
        j = auto_disc_exponent(N, p, bound)
    found = []
    base = chart.residue[chart.b]
    for u in range(p ** (j - 1)):
        P, T = lift_centre(chart, terms, N, base + p * u, 2 * j)
        found += _search_lattice(disc_lattice(P, T, p, j, N), terms, bound, N)
    return sorted({tuple(v) for v in found})


def lift_and_search_two(model: GenusOneModel, r1, p1: int, r2, p2: int, bound: int,
                        j1: int = 1, j2: int = 1, terms=None) -> List[List[int]]:
    """Two-prime variant: the disc lattices at p1 and p2 are intersected by CRT."""
    terms = terms or _terms(model)
    N = model.nvars
    c1 = local_chart(model, r1, p1, terms)
    c2 = local_chart(model, r2, p2, terms)
    discs2 = []
    for u in range(p2 ** (j2 - 1)):
        P, T = lift_centre(c2, terms, N, c2.residue[c2.b] + p2 * u, 2 * j2)
        discs2.append(disc_lattice(P, T, p2, j2, N))
    found = []
    for u in range(p1 ** (j1 - 1)):
        P, T = lift_centre(c1, terms, N, c1.residue[c1.b] + p1 * u, 2 * j1)
        L1 = disc_lattice(P, T, p1, j1, N)
        for L2 in discs2:
            L = _crt_lattice(L1, p1 ** (2 * j1), L2, p2 ** (2 * j2), N)
            found += _search_lattice(L, terms, bound, N)
    return sorted({tuple(v) for v in found})


# ---------------------------------------------------------------------------
# the full search

def good_search_prime(model: GenusOneModel, start: int = 11, avoid: Sequence[int] = ()) -> int:
    """First prime >= start, not in avoid, at which every enumerated residue is smooth."""
    from sympy import nextprime

    p = start - 1
    while True:
        p = int(nextprime(p))
        if p in avoid:
            continue
        terms = _terms(model)
        ok = True
        for r in enumerate_mod_p(model, p):
            try:
                local_chart(model, r, p, terms)
            except SingularResidueError:
                ok = False
                break
        if ok:
            return p


def _work_one(args):
    model, residue, p, bound, j = args
    try:
        return lift_and_search(model, residue, p, bound, j)
    except SingularResidueError as exc:
        log.warning("skipping singular residue %s mod %d: %s", residue, p, exc)
        return []


def _work_two(args):
    model, r1, p1, r2, p2, bound, j1, j2 = args
    try:
        return lift_and_search_two(model, r1, p1, r2, p2, bound, j1, j2)
    except SingularResidueError as exc:
        log.warning("skipping singular residue pair: %s", exc)
        return []


def _load_checkpoint(path):
    if path and os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def _save_checkpoint(path, state):
    if not path:
        return
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh, sort_keys=True)
    os.replace(tmp, path)


def point_search(model: GenusOneModel, config: SearchConfig, bundle=None,
                 progress=None) -> List[FoundPoint]:
    """Every primitive point with max-abs <= bound whose residues are smooth.

    Work items are the residue points (or residue pairs for two primes);
    results are merged in item order, deduplicated and sorted.  With a
    checkpoint path the finished items and their points are saved after
    each item and reloaded on restart.
    """
    if not model.is_integral():
        raise ValueError("search needs an integral model")
    N = model.nvars
    H = config.height_bound
    primes = list(config.primes) or [good_search_prime(model)]
    if len(primes) == 1:
        p = primes[0]
        j = config.lift_exponent // 2 if config.lift_exponent else auto_disc_exponent(N, p, H)
        items = [(model, r, p, H, j) for r in enumerate_mod_p(model, p)]
        worker = _work_one
    else:
        p1, p2 = primes
        if config.lift_exponent:
            j1 = j2 = config.lift_exponent // 2
        else:
            j1 = j2 = 1
            logvol = (N / 2) * math.log(math.pi) - math.lgamma(N / 2 + 1) + \
                N * math.log(math.sqrt(N) * H)
            while (j1 * math.log(p1) + j2 * math.log(p2)) * (2 * N - 3) < logvol:
                if p1 ** j1 <= p2 ** j2:
                    j1 += 1
                else:
                    j2 += 1
        R1, R2 = enumerate_mod_p(model, p1), enumerate_mod_p(model, p2)
        items = [(model, a, p1, b, p2, H, j1, j2) for a in R1 for b in R2]
        worker = _work_two
    state = _load_checkpoint(config.checkpoint) or {"done": [], "points": []}
    done = set(state["done"])
    points = {tuple(v) for v in state["points"]}
    todo = [i for i in range(len(items)) if i not in done]

    def record(i, res):
        points.update(tuple(v) for v in res)
        done.add(i)
        state["done"] = sorted(done)
        state["points"] = sorted(list(v) for v in points)
        _save_checkpoint(config.checkpoint, state)
        if progress:
            progress(len(done), len(items))

    if config.thread_count > 1 and todo:
        with ProcessPoolExecutor(max_workers=config.thread_count) as ex:
            for i, res in zip(todo, ex.map(worker, [items[i] for i in todo])):
                record(i, res)
    else:
        for i in todo:
            record(i, worker(items[i]))
    out = []
    for v in sorted(points):
        fp = FoundPoint(list(v))
        if bundle is not None:
            fp.down = normalize_point(bundle.minors(list(v)))
            fp.E_point = cover_any_to_E(bundle.down_model, fp.down)
        out.append(fp)
    return out


def verify_point(model: GenusOneModel, point) -> bool:
    return model.contains(list(point))
