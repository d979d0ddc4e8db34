"""Minimisation of quadric models at primes, and reduction of the coordinate change."""
from __future__ import annotations

import logging
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .exact import Matrix
from .lattice import _kernel_mod, hnf_saturate, lll_reduce
from .models import GenusOneModel, quadric_coeffs, quadric_from_coeffs, quadric_monomials

log = logging.getLogger(__name__)


@dataclass
class MinimisationStep:
    p: int
    V_basis: List[List[int]]
    d: int
    B: List[List[int]]
    m: int
    gain: int


@dataclass
class MinimisationLog:
    steps: List[MinimisationStep] = field(default_factory=list)
    # original coordinates = T * new coordinates
    T: Optional[List[List[int]]] = None

    def to_text(self) -> str:
        out = ["kind: minimisation_log"]
        for s in self.steps:
            out.append(f"step: p={s.p} d={s.d} m={s.m} gain={s.gain}")
        if self.T is not None:
            out += ["row: " + " ".join(str(x) for x in r) for r in self.T]
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# linear algebra over F_p on plain integers

def rref_mod(rows, p):
    m = [[x % p for x in r] for r in rows]
    piv = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], piv


def kernel_mod(rows, ncols, p):
    """Basis of {v : rows . v = 0 mod p}."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    rr, piv = rref_mod(rows, p)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-rr[i][f]) % p
        out.append(v)
    return out


def _span_mod(model: GenusOneModel, p):
    vecs = [[int(c) for c in quadric_coeffs(q)] for q in model.quadrics()]
    rr, _ = rref_mod(vecs, p)
    return rr


# ---------------------------------------------------------------------------
# candidate subspaces

def _forms_times_all_in_span(model, p):
    """Linear forms l with l * x_j in the span of the quadrics mod p for every j."""
    n = model.nvars
    mons = quadric_monomials(n)
    index = {m: i for i, m in enumerate(mons)}
    ann = kernel_mod(_span_mod(model, p), len(mons), p)
    if not ann:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    eqs = []
    for j in range(n):
        for a in ann:
            row = []
            for k in range(n):
                e = [0] * n
                e[k] += 1
                e[j] += 1
                row.append(a[index[tuple(e)]])
            eqs.append(row)
    return kernel_mod(eqs, n, p)


@dataclass
class ClosedPoint:
    """A closed point of a hyperplane section mod p.

    vectors span the F_p-space generated by the coordinates of the point
    (one vector per power of the generator); mult is its multiplicity in
    the section.  Rational points have a single vector.
    """
    vectors: List[List[int]]
    mult: int

    @property
    def degree(self) -> int:
        return len(self.vectors)


def _random_invertible(n, p, rng):
    while True:
        R = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if len(rref_mod(R, p)[0]) == n:
            return R


def _poly_mod(c, f, p):
    """Remainder of the ascending coefficient list c by monic f, mod p."""
    c = [x % p for x in c]
    r = len(f) - 1
    for k in range(len(c) - 1, r - 1, -1):
        a = c[k]
        if a:
            for j in range(r + 1):
                c[k - r + j] = (c[k - r + j] - a * f[j]) % p
    return (c + [0] * r)[:r]


def section_points(model: GenusOneModel, p: int, rng: random.Random, max_degree: int = 3):
    """Closed points of degree <= max_degree on a random hyperplane section of the reduction.

    Coordinates x = R y with R random mod p; the section is y_n = 0 on the
    chart y_{n-1} = 1.  A lex Groebner basis over F_p in shape position gives
    y_i = g_i(t) with t = y_{n-2} and an eliminant f(t); each irreducible
    factor of f is a closed point.  Returns None when the basis is not in
    shape position.
    """
    import sympy

    n = model.nvars
    R = _random_invertible(n, p, rng)
    k = n - 2
    gens = sympy.symbols(f"t0:{k}")
    polys = []
    for q in model.quadrics():
        d = {}
        for e, c in q.linear_change(R).terms.items():
            if e[n - 1]:
                continue
            key = tuple(e[:k])
            d[key] = (d.get(key, 0) + int(c)) % p
        d = {e: c for e, c in d.items() if c}
        if d:
            polys.append(sympy.Poly.from_dict(d, *gens, modulus=p).as_expr())
    if not polys:
        return None
    exprs = list(sympy.groebner(polys, *gens, order="lex", modulus=p).exprs)
    if len(exprs) != k:
        return None
    t = gens[-1]
    shapes = []
    for i in range(k - 1):
        P = sympy.Poly(exprs[i], *gens, modulus=p)
        rest = sympy.Poly(exprs[i] - gens[i], *gens, modulus=p)
        if P.degree(gens[i]) != 1 or any(rest.degree(g) > 0 for g in gens[:-1]) \
                or P.coeff_monomial(gens[i]) % p != 1:
            return None
        g = sympy.Poly(gens[i] - exprs[i], t, modulus=p)
        shapes.append([int(c) % p for c in reversed(g.all_coeffs())])
    f = sympy.Poly(exprs[-1], *gens, modulus=p)
    if any(f.degree(g) > 0 for g in gens[:-1]) or f.degree(t) <= 0:
        return None
    f = sympy.Poly(exprs[-1], t, modulus=p)
    # y = (g_0(t), ..., g_{k-2}(t), t, 1, 0) and x = R y
    ycoords = shapes + [[0, 1], [1], [0]]
    out = []
    with warnings.catch_warnings():
        # sympy sorts factors by comparing modular integers
        warnings.simplefilter("ignore")
        factors = sympy.factor_list(f.as_expr(), t, modulus=p)[1]
    for fac, e in factors:
        fc = [int(c) % p for c in reversed(sympy.Poly(fac, t, modulus=p).all_coeffs())]
        r = len(fc) - 1
        if r < 1 or r > max_degree:
            continue
        inv = pow(fc[-1], -1, p)
        fc = [(c * inv) % p for c in fc]
        ys = [_poly_mod(c, fc, p) for c in ycoords]
        vectors = [[sum(R[i][j] * ys[j][s] for j in range(n)) % p for i in range(n)]
                   for s in range(r)]
        out.append(ClosedPoint(vectors, e))
    return out


def sample_points_mod_p(model: GenusOneModel, p: int, sections: int = 3, seed: int = 0,
                        max_degree: int = 3) -> List[List[ClosedPoint]]:
    """Closed points from several random hyperplane sections of the reduction."""
    rng = random.Random(seed * 1000003 + p)
    out = []
    attempts = 0
    while len(out) < sections and attempts < 4 * sections:
        attempts += 1
        pts = section_points(model, p, rng, max_degree)
        if pts is not None:
            out.append(pts)
    return out


def _annihilator(points: Sequence[ClosedPoint], n, p):
    rows = [v for P in points for v in P.vectors]
    if not rows:
        return []
    return kernel_mod(rows, n, p)


def _on_line(model, P, Q, p):
    s = [x + y for x, y in zip(P, Q)]
    for q in model.quadrics():
        a, b = int(q(P)) % p, int(q(Q)) % p
        if a or b or (int(q(s)) - int(q(P)) - int(q(Q))) % p:
            return False
    return True


def _line_components(model, sections, p):
    """Rational multiple points in two sections whose joining line lies on the reduction."""
    lines = []
    for a in range(len(sections)):
        for b in range(a + 1, len(sections)):
            for P in sections[a]:
                for Q in sections[b]:
                    if P.degree == 1 and Q.degree == 1 and P.mult > 1 and Q.mult > 1 \
                            and _on_line(model, P.vectors[0], Q.vectors[0], p):
                        lines.append((P, Q))
    return lines


# fields this small have their rational points enumerated outright
SMALL_FIELD = 10 ** 6


def _jacobian_rank(model, x, p):
    J = [[int(q.diff(i)(x)) % p for i in range(model.nvars)] for q in model.quadrics()]
    return len(rref_mod(J, p)[0])


def _singular_at(model, x, p):
    return _jacobian_rank(model, x, p) < model.nvars - 2


def _common_radical(model, p):
    """Vectors v with B_q(v, .) = 0 mod p for every quadric's bilinear form B_q."""
    n = model.nvars
    rows = []
    for q in model.quadrics():
        for i in range(n):
            row = []
            for j in range(n):
                e = [0] * n
                e[i] += 1
                e[j] += 1
                c = int(q.terms.get(tuple(e), 0))
                row.append((2 * c if i == j else c) % p)
            rows.append(row)
    return kernel_mod(rows, n, p)


def propose_subspaces(model: GenusOneModel, p: int, sections: int = 3, seed: int = 0
                      ) -> List[List[List[int]]]:
    """Candidate spaces of linear forms mod p, each as a list of basis rows.

    Always contains the zero space (the empty list).  Proposals are the
    forms l with l * (every variable) in the quadric span mod p and their
    one-dimensional pieces; the forms vanishing on the common radical of the
    quadrics; for small p the forms vanishing on all rational points of the
    reduction, on its singular ones and on those of least Jacobian rank; then forms
    vanishing on closed points sampled from hyperplane sections: all of
    them, the multiple ones, those of each multiplicity, and each line
    component met by multiple points.
    """
    n = model.nvars
    cands: List[List[List[int]]] = [[]]

    def add(V):
        if not V:
            return
        rr, _ = rref_mod([list(v) for v in V], p)
        if rr and len(rr) < n and rr not in cands:
            cands.append(rr)

    rad = _common_radical(model, p)
    if rad:
        add(_annihilator([ClosedPoint([v], 1) for v in rad], n, p))
    V = _forms_times_all_in_span(model, p)
    add(V)
    for v in V:
        add([v])
    if p ** (n - 1) <= SMALL_FIELD:
        from .search import enumerate_mod_p

        rat = [ClosedPoint([list(x)], 1) for x in enumerate_mod_p(model, p)]
        add(_annihilator(rat, n, p))
        ranks = [_jacobian_rank(model, P.vectors[0], p) for P in rat]
        add(_annihilator([P for P, r in zip(rat, ranks) if r < n - 2], n, p))
        if ranks:
            add(_annihilator([P for P, r in zip(rat, ranks) if r == min(ranks)], n, p))
    secs = sample_points_mod_p(model, p, sections, seed)
    allpts = [P for s in secs for P in s]
    if allpts:
        add(_annihilator(allpts, n, p))
        for e in sorted({P.mult for P in allpts}):
            add(_annihilator([P for P in allpts if P.mult >= e], n, p))
            add(_annihilator([P for P in allpts if P.mult == e], n, p))
        for P, Q in _line_components(model, secs, p):
            add(_annihilator([P, Q], n, p))
    return cands


# ---------------------------------------------------------------------------
# the gain

def _apply(model: GenusOneModel, B) -> List[List[int]]:
    return [[int(c) for c in quadric_coeffs(q.linear_change(B))] for q in model.quadrics()]


def subspace_matrix(V, n, p):
    """Integer basis (as columns) of the lattice {y : V y = 0 mod p}."""
    if not V:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vt = [[V[k][i] for k in range(len(V))] for i in range(n)]
    rows = _kernel_mod(Vt, p)
    return [[rows[j][i] for j in range(n)] for i in range(n)]


def gain_step(model: GenusOneModel, p: int, V):
    """(new model, gain, index exponent m, B) for the substitution x -> B x.

    B spans {y : V y = 0 mod p}; after a unimodular change this is the
    diagonal matrix (p I_d, I_{n-d}).
    """
    n = model.nvars
    d = len(V)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if d == 0:
        return model, 0, 0, ident
    B = subspace_matrix(V, n, p)
    sat, idx = hnf_saturate(_apply(model, B))
    m = idx.ord(p)
    gain = m - (n - 3) * d
    if gain <= 0:
        return model, gain, m, B
    new = GenusOneModel(model.degree, [quadric_from_coeffs(v, n) for v in lll_reduce(sat)])
    return new, gain, m, B


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def reduce_model(model: GenusOneModel) -> GenusOneModel:
    """LLL-reduce the quadric basis; each quadric gets a positive leading coefficient."""
    red = lll_reduce([[int(c) for c in quadric_coeffs(q)] for q in model.quadrics()])
    qs = []
    for v in red:
        q = quadric_from_coeffs(list(v), model.nvars)
        qs.append(q if q.terms[q.leading_monomial()] > 0 else -q)
    return GenusOneModel(model.degree, qs)


def _sum_squares(model: GenusOneModel) -> int:
    return sum(int(c) ** 2 for q in model.quadrics() for c in q.terms.values())


def polish(model: GenusOneModel, T, max_passes: int = 20):
    """Greedy descent on the coefficient norm over moves x_i -> x_i +- x_j.

    Each candidate is LLL-reduced before scoring.  Returns the reduced model
    and T updated so that original coordinates = T * new coordinates.
    """
    n = model.nvars
    cur = reduce_model(model)
    best = _sum_squares(cur)
    T = [list(r) for r in T]
    for _ in range(max_passes):
        improved = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for c in (1, -1):
                    E = [[int(a == b) for b in range(n)] for a in range(n)]
                    E[i][j] = c
                    cand = reduce_model(cur.transform(E))
                    v = _sum_squares(cand)
                    if v < best:
                        best, cur, improved = v, cand, True
                        T = _matmul(T, E)
        if not improved:
            break
    return cur, T


def covolume_ord(model: GenusOneModel, p: int) -> int:
    """ord_p of the index of the quadric coefficient lattice in its saturation."""
    return hnf_saturate([[int(c) for c in quadric_coeffs(q)] for q in model.quadrics()])[1].ord(p)


def bad_primes(model: GenusOneModel, jacobian=None) -> List[int]:
    """2, 3 and the primes dividing the discriminant of the Jacobian.

    Models of degree 6 and 12 do not carry their invariants; pass them as
    jacobian = (c4, c6).
    """
    from sympy import factorint

    if jacobian is None:
        if model.degree > 4:
            raise ValueError("pass the Jacobian invariants or a prime list for degree 6 and 12")
        jacobian = model.invariants()
    c4, c6 = (Fraction(c) for c in jacobian)
    disc = c4 ** 3 - c6 ** 2
    if disc == 0:
        raise ValueError("singular Jacobian")
    ps = {2, 3}
    for part in (disc.numerator, disc.denominator):
        ps.update(int(p) for p in factorint(abs(part)))
    return sorted(ps)


def minimise(model: GenusOneModel, primes: Optional[Sequence[int]] = None, max_rounds: int = 100,
             sections: int = 3, seed: int = 0, jacobian=None,
             polish_passes: Optional[int] = None):
    """Take positive-gain steps at each prime until none is proposed, then reduce.

    Reduction LLLs the change of basis and then runs polish() for at most
    polish_passes passes (0 skips it; default 20, or 1 for degree 12 where a
    pass costs tens of seconds).
    """
    if polish_passes is None:
        polish_passes = 1 if model.degree == 12 else 20
    if not model.is_integral():
        raise ValueError("minimisation needs an integral model")
    if primes is None:
        primes = bad_primes(model, jacobian)
    n = model.nvars
    cur = model
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    logbook = MinimisationLog()
    for p in primes:
        for rnd in range(max_rounds):
            best = None
            for V in propose_subspaces(cur, p, sections, seed + rnd):
                if not V:
                    continue
                new, gain, m, B = gain_step(cur, p, V)
                if gain > 0 and (best is None or gain > best[1]):
                    best = (new, gain, m, B, V)
            if best is None:
                break
            new, gain, m, B, V = best
            log.info("p=%d d=%d gain=%d", p, len(V), gain)
            logbook.steps.append(MinimisationStep(p, V, len(V), B, m, gain))
            T = _matmul(T, B)
            cur = new
    if logbook.steps:
        # LLL the columns of T and rebuild the model from the original quadrics
        red = lll_reduce([[T[i][j] for i in range(n)] for j in range(n)])
        T = [[red[j][i] for j in range(n)] for i in range(n)]
        sat, _ = hnf_saturate(_apply(model, T))
        cur = GenusOneModel(model.degree, [quadric_from_coeffs(v, n) for v in sat])
    else:
        cur = model
    final, T = polish(cur, T, polish_passes)
    logbook.T = T
    return final, logbook


def transport_point(logbook: MinimisationLog, point):
    """Coordinates on the minimised model of a point given in the original coordinates."""
    return Matrix([[Fraction(x) for x in r] for r in logbook.T]).solve([Fraction(x) for x in point])
