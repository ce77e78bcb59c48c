"""Reconstruction of a Sym(n)-action from an Alt(n)-module.

The transposition bracket subspaces ("lines") are recovered inside the
module as images of composed difference operators; sums of lines and
trace-image hyperplanes then pin down a unique involution per transposition
(agree with a bitransposition on a three-point line sum, fix the
hyperplane).  The resulting involutions satisfy the Coxeter relations and
restrict back to the original action; everything is verified exactly along
the way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..gmodules import GModule
from ..linalg import Matrix, NotAField, Subspace, image, rref
from ..perms import Perm, alt_generators, alt_generators_on
from ..rings import characteristic_of
from .operators import check_bracket_centralised
from .results import IdentifyError


class HypothesisFailed(IdentifyError):
    pass


class LineDegenerate(IdentifyError):
    pass


class RelationFailed(IdentifyError):
    pass


def bitransposition_reps(n: int, exhaustive: bool = False):
    if exhaustive:
        out = []
        for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
            if i < j and k < l and (i, j) < (k, l):
                out.append(Perm.from_cycles(n, [(i, j), (k, l)]))
        return out
    return [Perm.from_cycles(n, [(1, 2), (3, 4)])]


def alt_bracket_hypothesis_witness(m: GModule, exhaustive: bool = False):
    """A (bitransposition, failing generator) pair violating the
    centralisation hypothesis, or None."""
    for alpha in bitransposition_reps(m.n, exhaustive):
        supp = alpha.support()
        others = [p for p in range(1, m.n + 1) if p not in supp]
        for h in alt_generators_on(m.n, others):
            if not check_bracket_centralised(m, alpha, [h]):
                return alpha, h
    return None


def compute_line(m: GModule, i: int, j: int, aux) -> Subspace:
    """im((1 - (ij)(ab)) o (1 - (ijk))) for auxiliary symbols aux = (a,b,k)."""
    a, b, k = aux
    ident = Matrix.identity(m.ring, m.dim)
    ad_alpha = ident - m.act(Perm.from_cycles(m.n, [(i, j), (a, b)]))
    ad_gamma = ident - m.act(Perm.from_cycles(m.n, [(i, j, k)]))
    return image(ad_alpha * ad_gamma)


def _aux_choices(n, i, j):
    others = [p for p in range(1, n + 1) if p not in (i, j)]
    first = tuple(others[:3])
    if len(others) >= 6:
        second = tuple(others[3:6])
    else:
        second = (first[1], first[2], first[0])
    return first, second


@dataclass
class LineSystem:
    """The recovered transposition-bracket subspaces of an Alt(n)-module."""

    module: GModule
    lines: dict  # (i, j) with i < j  ->  Subspace

    def line(self, i, j) -> Subspace:
        return self.lines[(min(i, j), max(i, j))]

    def v_of(self, points) -> Subspace:
        """Sum of all lines with both indices in ``points``."""
        total = Subspace.zero(self.module.ring, self.module.dim)
        for i, j in itertools.combinations(sorted(points), 2):
            total = total.sum(self.lines[(i, j)])
        return total


def build_line_system(m: GModule, exhaustive: bool = False) -> LineSystem:
    """All lines, cross-checked for independence of the auxiliary symbols,
    disjointness, the local line equations and the triangle property."""
    n = m.n
    lines = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        aux1, aux2 = _aux_choices(n, i, j)
        l1 = compute_line(m, i, j, aux1)
        if l1.dim == 0:
            raise LineDegenerate(f"line ({i},{j}) vanishes")
        l2 = compute_line(m, i, j, aux2)
        if l1 != l2:
            raise LineDegenerate(
                f"line ({i},{j}) depends on the auxiliary symbols")
        lines[(i, j)] = l1
    system = LineSystem(module=m, lines=lines)
    _verify_line_geometry(system, exhaustive)
    return system


def _verify_line_geometry(system: LineSystem, exhaustive: bool):
    m = system.module
    n = m.n
    ring = m.ring
    ident = Matrix.identity(ring, m.dim)

    if exhaustive:
        pair_pairs = [(p, q) for p, q in
                      itertools.combinations(sorted(system.lines), 2)]
        quints = list(itertools.permutations(range(1, n + 1), 5))
        triangles = list(itertools.combinations(range(1, n + 1), 3))
    else:
        pair_pairs = [((1, 2), (3, 4)), ((1, 2), (2, 3))]
        quints = [(1, 2, 3, 4, 5)]
        triangles = [(1, 2, 3)]

    for p, q in pair_pairs:
        if system.lines[p].intersect(system.lines[q]).dim != 0:
            raise LineDegenerate(f"lines {p} and {q} intersect")

    for (i, j, k, l, x) in quints:
        # (1 - (ijk)) carries the (i,x)-line onto the (i,j)-line
        ad_gamma = ident - m.act(Perm.from_cycles(n, [(i, j, k)]))
        moved = Subspace.from_vectors(
            ring, m.dim, [ad_gamma.apply(v)
                          for v in system.line(i, x).basis.rows])
        if moved != system.line(i, j):
            raise LineDegenerate(
                f"three-cycle line equation fails at {(i, j, k, x)}")
        ad_beta = ident - m.act(Perm.from_cycles(n, [(i, j), (k, l)]))
        moved2 = Subspace.from_vectors(
            ring, m.dim, [ad_beta.apply(v)
                          for v in system.line(i, x).basis.rows])
        if moved2 != system.line(i, j):
            raise LineDegenerate(
                f"bitransposition line equation fails at {(i, j, k, l, x)}")

    for (i, j, k) in triangles:
        if not system.line(i, k).sum(system.line(j, k)).contains(system.line(i, j)):
            raise LineDegenerate(f"triangle property fails at {(i, j, k)}")

    # lines are centralised by the alternating group off their support
    for (i, j) in ([(1, 2)] if not exhaustive else list(system.lines)):
        others = [p for p in range(1, n + 1) if p not in (i, j)]
        for h in alt_generators_on(n, others):
            act = m.act(h)
            for v in system.lines[(i, j)].basis.rows:
                if act.apply(v) != v:
                    raise LineDegenerate(
                        f"line ({i},{j}) is moved by {h.cycle_string()}")


def _hyperplane(m: GModule, i: int, j: int, tr_image_cache) -> Subspace:
    """Sum of the trace images of every bitransposition exchanging i and j."""
    n = m.n
    ident = Matrix.identity(m.ring, m.dim)
    total = Subspace.zero(m.ring, m.dim)
    for a, b in itertools.combinations(
            [p for p in range(1, n + 1) if p not in (i, j)], 2):
        alpha = Perm.from_cycles(n, [(i, j), (a, b)])
        key = alpha.images
        c_alpha = tr_image_cache.get(key)
        if c_alpha is None:
            c_alpha = image(ident + m.act(alpha))
            tr_image_cache[key] = c_alpha
        total = total.sum(c_alpha)
    return total


def _solve_transposition(m, system, hyperplane, i, j, k, a, b):
    """The unique involution agreeing with (ij)(ab) on the three-point line
    sum over {i,j,k} and fixing the hyperplane."""
    ring = m.ring
    alpha = Perm.from_cycles(m.n, [(i, j), (a, b)])
    act_alpha = m.act(alpha)
    v_ijk = system.v_of((i, j, k))
    if v_ijk.sum(hyperplane).dim != m.dim:
        raise RelationFailed(
            f"line sum and hyperplane do not span the module at ({i},{j})")
    inter = v_ijk.intersect(hyperplane)
    for v in inter.basis.rows:
        if act_alpha.apply(v) != v:
            raise RelationFailed(
                f"inconsistent overlap at ({i},{j}): the bitransposition "
                f"moves a vector fixed by construction")
    src_cols = [list(v) for v in v_ijk.basis.rows] + \
               [list(v) for v in hyperplane.basis.rows]
    dst_cols = [list(act_alpha.apply(v)) for v in v_ijk.basis.rows] + \
               [list(v) for v in hyperplane.basis.rows]
    p_mat = Matrix.build(ring, src_cols).transpose()
    q_mat = Matrix.build(ring, dst_cols).transpose()
    sel = _independent_columns(p_mat)
    p0 = Matrix.build(ring, [[p_mat.rows[r][c] for c in sel]
                             for r in range(m.dim)])
    q0 = Matrix.build(ring, [[q_mat.rows[r][c] for c in sel]
                             for r in range(m.dim)])
    tau = q0 * p0.inverse()
    if tau * p_mat != q_mat:
        raise RelationFailed(
            f"no single operator extends the assignment at ({i},{j})")
    if not (tau * tau).is_identity():
        raise RelationFailed(f"constructed operator at ({i},{j}) is not involutive")
    return tau


def _independent_columns(m: Matrix):
    """Pivot columns of the row-echelon form: a maximal independent set."""
    _, _, pivots = rref(m)
    return list(pivots)


def extend_alt_to_sym(m: GModule, exhaustive: bool = False):
    """Extend a faithful irreducible Alt(n)-module to Sym(n).

    Returns ``(extension, convention)`` where the extension is a verified
    Sym(n)-module restricting to the original action and the convention
    string records which of the (at most two) extensions was produced: the
    one whose transpositions invert their lines.  In characteristic 2 the
    extension is unique.
    """
    if m.group != "alt":
        raise ValueError("extension applies to Alt-modules")
    if not m.ring.is_field:
        raise NotAField("extension requires a field ring")
    n = m.n
    q = characteristic_of(m.ring)
    witness = alt_bracket_hypothesis_witness(m, exhaustive)
    if witness is not None:
        alpha, h = witness
        raise HypothesisFailed(
            f"bracket of {alpha.cycle_string()} is not centralised by "
            f"{h.cycle_string()}")

    system = build_line_system(m, exhaustive)
    tr_cache = {}
    taus = []
    for i in range(1, n):
        j = i + 1
        others = [p for p in range(1, n + 1) if p not in (i, j)]
        k, k2 = others[0], others[1]
        hyper = _hyperplane(m, i, j, tr_cache)
        a, b = [p for p in others if p != k][:2]
        tau = _solve_transposition(m, system, hyper, i, j, k, a, b)
        a2, b2 = [p for p in others if p != k2][:2]
        tau_check = _solve_transposition(m, system, hyper, i, j, k2, a2, b2)
        if tau != tau_check:
            raise RelationFailed(
                f"operator at ({i},{j}) depends on the auxiliary point")
        taus.append(tau)

    from ..gmodules import RelationViolation
    try:
        ext = GModule("sym", n, m.ring, taus)
    except RelationViolation as exc:
        raise RelationFailed(f"extension violates a Coxeter relation: {exc}")

    for gen in alt_generators(n):
        if ext.act(gen) != m.act(gen):
            raise RelationFailed(
                "extension does not restrict to the original action")

    # normalisation: each constructed transposition inverts its line
    for idx, tau in enumerate(taus):
        line = system.line(idx + 1, idx + 2)
        for v in line.basis.rows:
            if tau.apply(v) != tuple(m.ring.neg(x) for x in v):
                raise RelationFailed(
                    "constructed transposition does not invert its line")
    convention = "unique" if q == 2 else "transpositions invert their lines"
    return ext, convention
