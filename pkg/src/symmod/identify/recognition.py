"""Recognition of standard covers.

For a faithful irreducible Sym(n)-module over a field in which the bracket
of every transposition is centralised by the alternating group on the
complementary points, the module is covered by the sum-zero standard module
built on L = [(1 n), V].  The covering map, its kernel, and an explicit
invertible intertwiner to the canonical model are all computed and verified
exactly.
"""

from __future__ import annotations

from ..gmodules import GModule, intertwines, is_faithful, is_irreducible
from ..linalg import Matrix, NotAField, Subspace, image, kernel, rref
from ..perms import Perm, alt_generators_on, sym_generators
from ..rings import characteristic_of
from ..standard import build_rstd, build_ustd, ustd_integer_rows
from .operators import check_bracket_centralised
from .results import ClassificationResult, IdentifyError


class HypothesisFailed(IdentifyError):
    pass


class EquivarianceFailed(IdentifyError):
    pass


class KernelMismatch(IdentifyError):
    pass


def transposition_reps(n: int, exhaustive: bool = False):
    """Transpositions to test; one per conjugacy orbit by default (they are
    all conjugate, so a couple of representatives), every pair when
    exhaustive."""
    if exhaustive:
        import itertools
        return [Perm.transposition(n, i, j)
                for i, j in itertools.combinations(range(1, n + 1), 2)]
    reps = [Perm.transposition(n, 1, 2)]
    if n >= 4:
        reps.append(Perm.transposition(n, n - 1, n))
    return reps


def bracket_hypothesis_witness(m: GModule, exhaustive: bool = False):
    """A (tau, failing generator) pair violating the centralisation
    hypothesis, or None when it holds on the sample."""
    for tau in transposition_reps(m.n, exhaustive):
        supp = tau.support()
        others = [p for p in range(1, m.n + 1) if p not in supp]
        gens = alt_generators_on(m.n, others)
        for h in gens:
            if not check_bracket_centralised(m, tau, [h]):
                return tau, h
    return None


def _kron_with_identity(int_rows, r, ring):
    """The integer matrix acting blockwise on r copies, reduced into ring."""
    m = len(int_rows)
    size = m * r
    zero = ring.zero()
    rows = [[zero] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            val = ring.from_int(int_rows[i][j])
            if val != zero:
                for s in range(r):
                    rows[i * r + s][j * r + s] = val
    return Matrix.build(ring, rows)


def recognise(m: GModule, seed: int = 0, exhaustive: bool = False,
              assume_checked: bool = False) -> ClassificationResult:
    """Identify a Sym(n)-module as (a quotient of) the standard module.

    Builds the covering map phi sending the i-th block of L-coordinates to
    (1 i).L, verifies surjectivity and equivariance exactly, computes the
    kernel and matches it against the predicted centre, and returns an
    explicit intertwiner to the canonical model when the coefficient block L
    is a line.
    """
    if m.group != "sym":
        raise ValueError("recognition applies to Sym-modules")
    if not m.ring.is_field:
        raise NotAField("recognition requires a field ring")
    ring = m.ring
    n, d = m.n, m.dim
    q = characteristic_of(ring)

    def unrecognized(reason):
        return ClassificationResult(base="NotRecognized", q=q, d=d,
                                    reason=reason, stage="recognise")

    if not assume_checked:
        faithful = is_faithful(m)
        if not faithful:
            return unrecognized(
                f"not faithful: {faithful.witness.cycle_string()} acts trivially")
        verdict = is_irreducible(m, seed=seed)
        if verdict.verdict == "reducible":
            return unrecognized(
                f"reducible: invariant subspace of dimension {verdict.witness.dim}")
        if verdict.verdict == "unknown":
            return unrecognized("irreducibility could not be decided")
    witness = bracket_hypothesis_witness(m, exhaustive)
    if witness is not None:
        tau, h = witness
        return unrecognized(
            f"bracket of {tau.cycle_string()} is not centralised by "
            f"{h.cycle_string()}")

    ident = Matrix.identity(ring, d)
    line = image(ident - m.act(Perm.transposition(n, 1, n)))
    r = line.dim
    if r == 0:
        return unrecognized("the bracket of (1 n) vanishes")  # not faithful; unreachable

    # covering map: column (i, s) is (1 i) applied to the s-th basis vector
    cols = []
    for i in range(1, n):
        act = ident if i == 1 else m.act(Perm.transposition(n, 1, i))
        for vec in line.basis.rows:
            cols.append(act.apply(vec))
    phi = Matrix.build(ring, cols).transpose()

    _, rank, _ = rref(phi)
    if rank != d:
        raise EquivarianceFailed("covering map is not surjective")  # pragma: no cover

    ustd_rows = ustd_integer_rows(n)
    for g_idx, gen in enumerate(sym_generators(n)):
        lhs = m.act(gen) * phi
        rhs = phi * _kron_with_identity(ustd_rows[g_idx], r, ring)
        if lhs != rhs:
            raise EquivarianceFailed(
                f"covering map is not equivariant for generator {g_idx}")

    ker = kernel(phi)
    if q > 0 and n % q == 0:
        # kernel must be the centre: the span of the all-blocks-equal vectors
        centre_vecs = []
        for s in range(r):
            v = [ring.zero()] * ((n - 1) * r)
            for i in range(n - 1):
                v[i * r + s] = ring.one()
            centre_vecs.append(v)
        centre = Subspace.from_vectors(ring, (n - 1) * r, centre_vecs)
        if ker != centre:
            raise KernelMismatch(
                f"kernel (dim {ker.dim}) differs from the predicted centre "
                f"(dim {centre.dim})")
        base = "StandardRstd"
        target = f"rstd({n}, {ring.token()})"
        intertwiner = _induced_intertwiner(m, phi, ker, n, ring) if r == 1 else None
    else:
        if ker.dim != 0:
            raise KernelMismatch(
                f"kernel has dimension {ker.dim}, expected 0 for "
                f"characteristic {q}")
        if q == 0:
            base = "UstdCovered"
            target = f"ustd({n}, {ring.token()})"
        else:
            base = "StandardRstd"
            target = f"rstd({n}, {ring.token()})"
        intertwiner = phi if r == 1 else None
        if intertwiner is not None:
            model = build_ustd(n, ring)
            if not intertwines(intertwiner, model, m):
                raise EquivarianceFailed(
                    "intertwiner fails on a generator")  # pragma: no cover

    return ClassificationResult(base=base, q=q, d=d, dim_l=r,
                                kernel_dim=ker.dim, kernel=ker,
                                intertwiner=intertwiner, target=target,
                                stage="recognise")


def _induced_intertwiner(m, phi, ker, n, ring):
    """phi factors through the quotient by its kernel; compose with the
    canonical section to get an invertible map from the reduced standard
    module."""
    rstd = build_rstd(n, ring)
    pivots = set(ker.pivot_columns())
    non_pivots = [c for c in range(n - 1) if c not in pivots]
    sec_rows = [[ring.one() if (r_idx in non_pivots and non_pivots.index(r_idx) == c)
                 else ring.zero() for c in range(len(non_pivots))]
                for r_idx in range(n - 1)]
    section = Matrix.build(ring, sec_rows)
    psi = phi * section
    if psi.nrows != psi.ncols:
        raise KernelMismatch("reduced model has the wrong dimension")  # pragma: no cover
    psi.inverse()  # raises if singular
    if not intertwines(psi, rstd, m):
        raise EquivarianceFailed("induced intertwiner fails on a generator")  # pragma: no cover
    return psi
