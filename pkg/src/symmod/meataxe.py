"""Irreducibility testing for matrix representations over finite fields.

The engine is Norton-criterion style: take a random element of the enveloping
algebra, factor its minimal polynomial, spin nullspace vectors of an
irreducible-factor substitution in both the module and its dual.  Either an
explicit invariant subspace is produced (and re-verified before returning) or
irreducibility is certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import Matrix, Subspace, kernel
from .rings import FiniteField


class NotFiniteField(Exception):
    pass


class RandomnessExhausted(Exception):
    """Bounded random search ran out of attempts; reported, never looped."""


# ---------------------------------------------------------------------------
# polynomials with scalar coefficients (constant term first, no trailing zeros)


def poly_trim(f, ring):
    f = list(f)
    z = ring.zero()
    while f and f[-1] == z:
        f.pop()
    return tuple(f)


def poly_mul(f, g, ring):
    if not f or not g:
        return ()
    z = ring.zero()
    out = [z] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a != z:
            for j, b in enumerate(g):
                out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return poly_trim(out, ring)


def poly_divmod(f, g, ring):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [ring.zero()] * max(0, len(f) - len(g) + 1)
    inv_lead = ring.inv(g[-1])
    while len(f) >= len(g) and poly_trim(f, ring):
        f = list(poly_trim(f, ring))
        if len(f) < len(g):
            break
        c = ring.mul(f[-1], inv_lead)
        shift = len(f) - len(g)
        q[shift] = c
        for i, a in enumerate(g):
            f[shift + i] = ring.sub(f[shift + i], ring.mul(c, a))
    return poly_trim(q, ring), poly_trim(f, ring)


def poly_mod(f, g, ring):
    return poly_divmod(f, g, ring)[1]


def poly_monic(f, ring):
    f = poly_trim(f, ring)
    if not f:
        return f
    inv = ring.inv(f[-1])
    return tuple(ring.mul(inv, a) for a in f)


def poly_gcd(f, g, ring):
    f, g = poly_trim(f, ring), poly_trim(g, ring)
    while g:
        f, g = g, poly_mod(f, g, ring)
    return poly_monic(f, ring)


def poly_derivative(f, ring):
    out = []
    for i in range(1, len(f)):
        c = f[i]
        acc = ring.zero()
        for _ in range(i):
            acc = ring.add(acc, c)
        out.append(acc)
    return poly_trim(out, ring)


def poly_pow_mod(f, e, m, ring):
    result = (ring.one(),)
    base = poly_mod(f, m, ring)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, ring), m, ring)
        base = poly_mod(poly_mul(base, base, ring), m, ring)
        e >>= 1
    return result


def poly_eval_matrix(f, m: Matrix) -> Matrix:
    ring = m.ring
    n = m.nrows
    acc = Matrix.zeros(ring, n, n)
    for c in reversed(f):
        acc = acc * m
        if c != ring.zero():
            ident = Matrix.identity(ring, n)
            acc = acc + ident.scale(c)
    return acc


def _pth_root(f, ring: FiniteField):
    p = ring.p
    e = ring.size // p  # Frobenius inverse exponent
    out = []
    for i in range(0, len(f), p):
        out.append(ring.pow(f[i], e))
    return poly_trim(out, ring)


def squarefree_radical(f, ring):
    """Product of the distinct monic irreducible factors of f."""
    f = poly_monic(f, ring)
    if len(f) <= 2:
        return f
    fp = poly_derivative(f, ring)
    if not fp:
        return squarefree_radical(_pth_root(f, ring), ring)
    g = poly_gcd(f, fp, ring)
    if len(g) == 1:
        return f
    w, _ = poly_divmod(f, g, ring)
    w = poly_monic(w, ring)
    # strip all w-parts; what is left is a p-th power
    h = f
    while True:
        d = poly_gcd(h, w, ring)
        if len(d) == 1:
            break
        h, _ = poly_divmod(h, d, ring)
    h = poly_monic(h, ring)
    if len(h) == 1:
        return w
    rest = squarefree_radical(_pth_root(h, ring), ring)
    # the two parts are coprime by construction
    return poly_mul(w, rest, ring)


def berlekamp_factor(f, ring: FiniteField):
    """All monic irreducible factors of a squarefree monic f over a small
    finite field, by Berlekamp's algorithm with an exhaustive scalar scan."""
    f = poly_monic(f, ring)
    n = len(f) - 1
    if n <= 1:
        return [f] if n == 1 else []
    q = ring.size
    x = (ring.zero(), ring.one())
    rows = []
    for i in range(n):
        fr = poly_pow_mod(x, q * i, f, ring) if i else (ring.one(),)
        row = list(fr) + [ring.zero()] * (n - len(fr))
        row[i] = ring.sub(row[i], ring.one())
        rows.append(row)
    # kernel of (Q - I) acting on coefficient columns: solve v*(Q-I)=0
    ker = kernel(Matrix.build(ring, rows).transpose())
    r = ker.dim
    if r == 1:
        return [f]
    factors = [f]
    for vec in ker.basis.rows:
        v = poly_trim(vec, ring)
        if len(v) <= 1:
            continue
        new_factors = []
        for u in factors:
            if len(u) - 1 == 1:
                new_factors.append(u)
                continue
            pieces = []
            rem = u
            for c in ring.elements():
                shifted = list(v)
                shifted[0] = ring.sub(shifted[0], c)
                g = poly_gcd(rem, poly_trim(shifted, ring), ring)
                if 1 < len(g) <= len(rem) - 1:
                    pieces.append(g)
                    rem, _ = poly_divmod(rem, g, ring)
                    if len(rem) == 1:
                        break
            if len(rem) > 1:
                pieces.append(poly_monic(rem, ring))
            new_factors.extend(pieces if pieces else [u])
        factors = new_factors
        if len(factors) == r:
            break
    return [poly_monic(u, ring) for u in factors]


def distinct_irreducible_factors(f, ring):
    out = berlekamp_factor(squarefree_radical(f, ring), ring)
    return sorted(out, key=lambda g: (len(g), g))


def minimal_polynomial(m: Matrix):
    """Monic minimal polynomial of a square matrix over a field."""
    ring = m.ring
    d = m.nrows
    powers = [Matrix.identity(ring, d)]
    flat = [tuple(a for row in powers[0].rows for a in row)]
    cur = powers[0]
    for deg in range(1, d * d + 2):
        cur = cur * m
        target = tuple(a for row in cur.rows for a in row)
        cols = Matrix.build(ring, flat).transpose()
        from .linalg import solve
        sol = solve(cols, target)
        if sol is not None:
            coeffs = [ring.neg(c) for c in sol] + [ring.one()]
            return poly_trim(coeffs, ring)
        flat.append(target)
    raise RuntimeError("minimal polynomial search failed")  # pragma: no cover


# ---------------------------------------------------------------------------


def spin_span(gens, vectors) -> Subspace:
    """Smallest subspace containing ``vectors`` and invariant under ``gens``.

    Closure by echelonized insertion; each newly independent vector is pushed
    through every generator.
    """
    ring = gens[0].ring
    ambient = gens[0].ncols
    zero = ring.zero()
    rows = {}  # pivot column -> row (leading coefficient 1)

    def reduce(v):
        v = list(v)
        while True:
            lead = None
            for j, a in enumerate(v):
                if a != zero:
                    lead = j
                    break
            if lead is None:
                return None, None
            if lead not in rows:
                inv = ring.inv(v[lead])
                if inv != ring.one():
                    v = [ring.mul(inv, a) for a in v]
                return lead, tuple(v)
            base = rows[lead]
            c = v[lead]
            v = [ring.sub(a, ring.mul(c, b)) for a, b in zip(v, base)]

    queue = [tuple(v) for v in vectors]
    while queue:
        v = queue.pop()
        lead, red = reduce(v)
        if lead is None:
            continue
        rows[lead] = red
        if len(rows) == ambient:
            return Subspace.full(ring, ambient)
        for g in gens:
            queue.append(g.apply(red))
    return Subspace.from_vectors(ring, ambient, list(rows.values()))


def is_invariant(sub: Subspace, gens) -> bool:
    return all(sub.contains_vector(g.apply(v))
               for v in sub.basis.rows for g in gens)


@dataclass(frozen=True)
class MeataxeResult:
    irreducible: bool
    witness: Subspace | None
    attempts: int


def _random_algebra_element(gens, rng, ring, d):
    terms = rng.randint(2, 4)
    acc = Matrix.zeros(ring, d, d)
    for _ in range(terms):
        length = rng.randint(1, 3)
        prod = gens[rng.randrange(len(gens))]
        for _ in range(length - 1):
            prod = prod * gens[rng.randrange(len(gens))]
        c = ring.zero()
        while c == ring.zero():
            c = ring.rand(rng)
        acc = acc + prod.scale(c)
    if rng.random() < 0.3:
        acc = acc + Matrix.identity(ring, d).scale(ring.rand(rng))
    return acc


def meataxe_irreducible(gens, seed: int = 0, max_attempts: int = 40) -> MeataxeResult:
    """Decide irreducibility of the module spanned by ``gens`` over a finite
    field.  Returns a certificate: either irreducibility or an explicit
    invariant subspace, re-verified against every generator."""
    if not gens:
        raise ValueError("at least one generator is required")
    ring = gens[0].ring
    if not isinstance(ring, FiniteField):
        raise NotFiniteField("the meataxe requires a finite field")
    d = gens[0].nrows
    if d <= 1:
        return MeataxeResult(True, None, 0)
    rng = random.Random(seed)
    dual_gens = [g.transpose() for g in gens]

    def reducible(witness, attempts):
        if witness.dim == 0 or witness.dim == d or not is_invariant(witness, gens):
            raise RuntimeError("internal error: invalid meataxe witness")
        return MeataxeResult(False, witness, attempts)

    for attempt in range(1, max_attempts + 1):
        theta = (gens[0] if attempt == 1 and len(gens) == 1
                 else _random_algebra_element(gens, rng, ring, d))
        minpoly = minimal_polynomial(theta)
        for f in distinct_irreducible_factors(minpoly, ring):
            n_mat = poly_eval_matrix(f, theta)
            w = kernel(n_mat)
            if w.dim == 0:
                continue
            first = w.basis.rows[0]
            u = spin_span(gens, [first])
            if u.dim < d:
                return reducible(u, attempt)
            if w.dim == len(f) - 1:
                # Norton: nullity equals the factor degree, so one spin on
                # each side decides the question
                wd = kernel(n_mat.transpose())
                ud = spin_span(dual_gens, [wd.basis.rows[0]])
                if ud.dim == d:
                    return MeataxeResult(True, None, attempt)
                ann = kernel(ud.basis)
                return reducible(ann, attempt)
            proper = None
            for vec in w.basis.rows[1:]:
                u2 = spin_span(gens, [vec])
                if u2.dim < d:
                    proper = u2
                    break
            if proper is not None:
                return reducible(proper, attempt)
            # inconclusive for this factor; try the next one
    raise RandomnessExhausted(
        f"meataxe made no decision after {max_attempts} attempts")
