"""Operator calculus on prime-order elements: the difference and trace
operators, their image subspaces, coprime decompositions, weight spaces for
Klein four-groups, and the local operator identities satisfied by standard
modules."""

from __future__ import annotations

from dataclasses import dataclass

from ..gmodules import GModule
from ..linalg import Matrix, NotAField, Subspace, image, kernel
from ..perms import KleinFour, Perm
from ..rings import characteristic_of, is_prime
from .results import IdentifyError


class CharacteristicClash(IdentifyError):
    pass


class CharacteristicTwo(IdentifyError):
    pass


@dataclass(frozen=True)
class OperatorPair:
    """For g of prime order p: ad = 1 - g and tr = 1 + g + ... + g^(p-1),
    with their images B and C.  The exact identities ad.tr = tr.ad = 0 are
    checked at construction."""

    g: Perm
    p: int
    ad: Matrix
    tr: Matrix
    b: Subspace
    c: Subspace

    @staticmethod
    def build(m: GModule, g: Perm) -> "OperatorPair":
        if not m.ring.is_field:
            raise NotAField("operator pairs require a field ring")
        p = g.order()
        if not is_prime(p):
            raise ValueError(f"element order {p} is not prime")
        act = m.act(g)
        ident = Matrix.identity(m.ring, m.dim)
        ad = ident - act
        tr = ident
        power = ident
        for _ in range(p - 1):
            power = power * act
            tr = tr + power
        if not (ad * tr).is_zero() or not (tr * ad).is_zero():
            raise IdentifyError("operator identities violated")  # pragma: no cover
        return OperatorPair(g=g, p=p, ad=ad, tr=tr, b=image(ad), c=image(tr))


def coprimality_decompose(m: GModule, g: Perm):
    """B + C = V with trivial intersection, for g of prime order p coprime to
    the characteristic."""
    q = characteristic_of(m.ring)
    p = g.order()
    if not is_prime(p):
        raise ValueError(f"element order {p} is not prime")
    if q == p:
        raise CharacteristicClash(
            f"characteristic {q} equals the element order; the coprime "
            f"decomposition does not apply")
    pair = OperatorPair.build(m, g)
    total = pair.b.sum(pair.c)
    inter = pair.b.intersect(pair.c)
    if total.dim != m.dim or inter.dim != 0:
        raise IdentifyError(
            "coprime decomposition failed; this contradicts the dimension "
            "analysis")  # pragma: no cover
    return pair.b, pair.c


_WEIGHTS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def weight_decompose(m: GModule, k4: KleinFour) -> dict:
    """Simultaneous eigenspace decomposition for the three bitranspositions
    of a Klein four-group, in characteristic different from 2.

    Returns a map from sign patterns (one sign per bitransposition, in the
    canonical order) to subspaces.  The four spaces sum directly to the whole
    module and each element acts as the stated sign on each space.
    """
    ring = m.ring
    if not ring.is_field:
        raise NotAField("weight decomposition requires a field ring")
    if characteristic_of(ring) == 2:
        raise CharacteristicTwo("weights need 2 to be invertible")
    elements = k4.elements()
    ident = Matrix.identity(ring, m.dim)
    acts = [m.act(e) for e in elements]
    out = {}
    total_dim = 0
    covering = Subspace.zero(ring, m.dim)
    for pattern in _WEIGHTS:
        space = Subspace.full(ring, m.dim)
        for sign, act in zip(pattern, acts):
            target = act - ident if sign == 1 else act + ident
            space = space.intersect(kernel(target))
        out[pattern] = space
        total_dim += space.dim
        covering = covering.sum(space)
    if total_dim != m.dim or covering.dim != m.dim:
        raise IdentifyError("weight spaces do not fill the module")  # pragma: no cover
    for pattern, space in out.items():
        for sign, act in zip(pattern, acts):
            for v in space.basis.rows:
                got = act.apply(v)
                want = v if sign == 1 else tuple(ring.neg(x) for x in v)
                if got != want:
                    raise IdentifyError("weight space acts wrongly")  # pragma: no cover
    return out


def check_bracket_centralised(m: GModule, sigma: Perm, h_perms) -> bool:
    """Whether every listed element fixes [sigma, V] pointwise."""
    if not m.ring.is_field:
        raise NotAField("bracket check requires a field ring")
    ident = Matrix.identity(m.ring, m.dim)
    b = image(ident - m.act(sigma))
    for h in h_perms:
        act = m.act(h)
        for v in b.basis.rows:
            if act.apply(v) != v:
                return False
    return True


@dataclass(frozen=True)
class LocalEquationEntry:
    name: str
    indices: tuple
    holds: bool


@dataclass(frozen=True)
class LocalEquationsReport:
    entries: tuple

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.holds]


def _small_subgroup(n, tau, tau_prime):
    seen = {Perm.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in (tau, tau_prime):
                prod = g * h
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return seen


def check_local_equations(m: GModule, exhaustive: bool = False) -> LocalEquationsReport:
    """Verify the operator identities of the standard module on sampled
    index tuples:

    * (1 - (ij)) doubles vectors of B_(ij);
    * (1 - (ij)) acts as (jk) on B_(ik);
    * (1 - (ij)) kills B_(kl) for disjoint pairs;
    * the alternating-sum identity over the subgroup generated by two
      transpositions vanishes, in both the intersecting and disjoint shape.

    All identities are reported, never raised; a failing entry is how
    non-standard modules announce themselves.
    """
    if m.group != "sym":
        raise ValueError("local equations concern Sym-modules")
    if not m.ring.is_field:
        raise NotAField("local equations require a field ring")
    ring = m.ring
    n = m.n
    ident = Matrix.identity(ring, m.dim)
    two = ring.add(ring.one(), ring.one())

    def b_of(i, j):
        return image(ident - m.act(Perm.transposition(n, i, j)))

    import itertools
    if exhaustive:
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        triples = list(itertools.permutations(range(1, n + 1), 3))
        quads = list(itertools.permutations(range(1, n + 1), 4))
    else:
        pairs = [(1, 2), (n - 1, n)]
        triples = [(1, 2, 3), (2, 3, 4)] if n >= 4 else [(1, 2, 3)]
        quads = [(1, 2, 3, 4)] if n >= 4 else []
        if n >= 5:
            quads.append((2, 3, 4, 5))

    entries = []
    for (i, j) in pairs:
        b = b_of(i, j)
        ad = ident - m.act(Perm.transposition(n, i, j))
        ok = all(ad.apply(v) == tuple(ring.mul(two, x) for x in v)
                 for v in b.basis.rows)
        entries.append(LocalEquationEntry("doubling on own bracket", (i, j), ok))
    for (i, j, k) in triples:
        ad = ident - m.act(Perm.transposition(n, i, j))
        jk = m.act(Perm.transposition(n, j, k))
        b_ik = b_of(i, k)
        ok = all(ad.apply(v) == jk.apply(v) for v in b_ik.basis.rows)
        entries.append(LocalEquationEntry("swap action on adjacent bracket",
                                          (i, j, k), ok))
    for (i, j, k, l) in quads:
        ad = ident - m.act(Perm.transposition(n, i, j))
        b_kl = b_of(k, l)
        zero = tuple(ring.zero() for _ in range(m.dim))
        ok = all(ad.apply(v) == zero for v in b_kl.basis.rows)
        entries.append(LocalEquationEntry("annihilation of disjoint bracket",
                                          (i, j, k, l), ok))
    # alternating-sum identity over <tau, tau'>
    sum_cases = []
    for (i, j, k) in triples[:1 if not exhaustive else len(triples)]:
        sum_cases.append(("intersecting",
                          Perm.transposition(n, i, j), Perm.transposition(n, j, k)))
    for (i, j, k, l) in quads[:1 if not exhaustive else len(quads)]:
        sum_cases.append(("disjoint",
                          Perm.transposition(n, i, j), Perm.transposition(n, k, l)))
    for shape, tau, tau_prime in sum_cases:
        acc = Matrix.zeros(ring, m.dim, m.dim)
        for g in _small_subgroup(n, tau, tau_prime):
            term = m.act(g)
            acc = acc + (term if g.sign() == 1 else -term)
        entries.append(LocalEquationEntry(
            f"alternating sum over two transpositions ({shape})",
            tuple(sorted(tau.support() | tau_prime.support())), acc.is_zero()))
    return LocalEquationsReport(tuple(entries))
