"""G-modules: representations of Sym(n) or Alt(n) given by one invertible
matrix per canonical generator.

Defining relations are verified at construction by exact matrix arithmetic
(Coxeter relations for Sym; the cube and product-square relations of the
(1,2,k) generators for Alt), so every constructed object really is a module
for the stated group.  Matrices act on column vectors from the left; module
elements are plain tuples of scalars.

Quotients of free Z/kZ-modules need not be free; such modules carry
``coordinate_orders`` and all matrix comparisons reduce row i modulo the i-th
order.
"""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from dataclasses import dataclass

from .linalg import Matrix, Subspace, NotAField, image, kernel
from .meataxe import meataxe_irreducible, spin_span
from .perms import (GeneratorSet, Perm, OddPermutationInAlt, alt_generators,
                    all_even_perms, all_perms, factorize, sym_generators)
from .rings import FiniteField, Rational


class GModuleError(Exception):
    pass


class RelationViolation(GModuleError):
    pass


class DegreeMismatch(GModuleError):
    pass


class AltHasNoSign(GModuleError):
    pass


_CACHE_CAP_LARGE = 20000


class GModule:
    """A Sym(n)- or Alt(n)-module: generator images plus an act() evaluator
    memoized per group element."""

    def __init__(self, group: str, n: int, ring, images, coordinate_orders=None,
                 check: bool = True):
        if group not in ("sym", "alt"):
            raise ValueError("group must be 'sym' or 'alt'")
        if n < 3:
            raise ValueError("degree must be at least 3")
        expected = n - 1 if group == "sym" else n - 2
        images = tuple(images)
        if len(images) != expected:
            raise ValueError(f"expected {expected} generator images, got {len(images)}")
        self.group = group
        self.n = n
        self.ring = ring
        self.images = images
        self.dim = images[0].nrows if images else 0
        self.coordinate_orders = tuple(coordinate_orders) if coordinate_orders else None
        for m in images:
            if m.ring != ring:
                raise ValueError("image over the wrong ring")
            if m.nrows != self.dim or m.ncols != self.dim:
                raise ValueError("images must be square of equal size")
        if self.coordinate_orders is not None and len(self.coordinate_orders) != self.dim:
            raise ValueError("one coordinate order per dimension")
        self._cache = OrderedDict()
        self._cache_cap = math.factorial(n) if n <= 7 else _CACHE_CAP_LARGE
        self._lock = threading.RLock()
        if check:
            self._verify_relations()

    # -- reduced arithmetic for non-free Z/k quotients

    def reduce_matrix(self, m: Matrix) -> Matrix:
        if self.coordinate_orders is None:
            return m
        rows = []
        for o, row in zip(self.coordinate_orders, m.rows):
            rows.append(tuple(a % o for a in row))
        return Matrix(m.ring, m.nrows, m.ncols, tuple(rows))

    def _mat_mul(self, a: Matrix, b: Matrix) -> Matrix:
        return self.reduce_matrix(a * b)

    def _is_identity(self, m: Matrix) -> bool:
        return self.reduce_matrix(m) == self.reduce_matrix(Matrix.identity(self.ring, self.dim))

    def _verify_relations(self):
        imgs = self.images
        if self.group == "sym":
            for i, s in enumerate(imgs):
                if not self._is_identity(self._mat_mul(s, s)):
                    raise RelationViolation(f"generator {i} is not an involution")
            for i in range(len(imgs)):
                for j in range(i + 1, len(imgs)):
                    prod = self._mat_mul(imgs[i], imgs[j])
                    order = 3 if j == i + 1 else 2
                    acc = prod
                    for _ in range(order - 1):
                        acc = self._mat_mul(acc, prod)
                    if not self._is_identity(acc):
                        kind = "braid" if order == 3 else "commuting"
                        raise RelationViolation(f"{kind} relation fails for generators {i},{j}")
        else:
            for i, x in enumerate(imgs):
                if not self._is_identity(self._mat_mul(self._mat_mul(x, x), x)):
                    raise RelationViolation(f"generator {i} does not cube to the identity")
            for i in range(len(imgs)):
                for j in range(i + 1, len(imgs)):
                    prod = self._mat_mul(imgs[i], imgs[j])
                    if not self._is_identity(self._mat_mul(prod, prod)):
                        raise RelationViolation(f"product relation fails for generators {i},{j}")

    def generators(self) -> GeneratorSet:
        return sym_generators(self.n) if self.group == "sym" else alt_generators(self.n)

    def act(self, sigma: Perm) -> Matrix:
        """Matrix of sigma, the product of generator images along its
        factorization; memoized per element."""
        if sigma.n != self.n:
            raise DegreeMismatch(f"degree {sigma.n} element on a degree-{self.n} module")
        if self.group == "alt" and sigma.sign() != 1:
            raise OddPermutationInAlt(f"{sigma.cycle_string()} is odd")
        key = sigma.images
        with self._lock:
            cached = self._cache.get(key)
            if cached is not None:
                self._cache.move_to_end(key)
                return cached
        word = factorize(sigma, self.generators())
        result = Matrix.identity(self.ring, self.dim)
        for idx in word:
            result = self._mat_mul(result, self.images[idx])
        with self._lock:
            self._cache[key] = result
            if len(self._cache) > self._cache_cap:
                self._cache.popitem(last=False)
        return result

    def __repr__(self):
        return (f"GModule({self.group}({self.n}), ring={self.ring!r}, "
                f"dim={self.dim})")


def modules_equal(a: GModule, b: GModule) -> bool:
    """Entrywise equality of the generator images."""
    return (a.group == b.group and a.n == b.n and a.ring == b.ring
            and all(x == y for x, y in zip(a.images, b.images)))


def bracket(m: GModule, perms) -> Subspace:
    """[H, V]: the span of the images of (1 - act(g)) over the listed g.

    Summing over a generating set of H gives the full commutator subspace,
    since (gh - 1) = (g - 1)(h - 1) + (g - 1) + (h - 1).
    """
    if not m.ring.is_field:
        raise NotAField("bracket requires a field ring")
    ident = Matrix.identity(m.ring, m.dim)
    total = Subspace.zero(m.ring, m.dim)
    for g in perms:
        total = total.sum(image(ident - m.act(g)))
    return total


def fixed_points(m: GModule, perms) -> Subspace:
    """Intersection of the kernels of (1 - act(g)); the whole space for an
    empty list."""
    if not m.ring.is_field:
        raise NotAField("fixed_points requires a field ring")
    ident = Matrix.identity(m.ring, m.dim)
    total = Subspace.full(m.ring, m.dim)
    for g in perms:
        total = total.intersect(kernel(ident - m.act(g)))
    return total


def spin(m: GModule, seed: Subspace) -> Subspace:
    """Smallest invariant subspace containing ``seed``."""
    if not m.ring.is_field:
        raise NotAField("spin requires a field ring")
    if seed.dim == 0:
        return Subspace.zero(m.ring, m.dim)
    return spin_span(list(m.images), list(seed.basis.rows))


@dataclass(frozen=True)
class FaithfulnessResult:
    faithful: bool
    witness: Perm | None  # a nontrivial kernel element when not faithful

    def __bool__(self):
        return self.faithful


def is_faithful(m: GModule) -> FaithfulnessResult:
    """Faithfulness via normal-subgroup structure for n >= 5, brute force
    below."""
    if m.n >= 5:
        three = Perm.from_cycles(m.n, [(1, 2, 3)])
        if m._is_identity(m.act(three)):
            return FaithfulnessResult(False, three)
        if m.group == "sym":
            swap = Perm.transposition(m.n, 1, 2)
            if m._is_identity(m.act(swap)):
                return FaithfulnessResult(False, swap)
        return FaithfulnessResult(True, None)
    elements = all_perms(m.n) if m.group == "sym" else all_even_perms(m.n)
    for sigma in elements:
        if not sigma.is_identity() and m._is_identity(m.act(sigma)):
            return FaithfulnessResult(False, sigma)
    return FaithfulnessResult(True, None)


def sign_twist(m: GModule) -> GModule:
    """Tensor with the signature: every generator image is negated (the
    canonical Sym generators are transpositions)."""
    if m.group != "sym":
        raise AltHasNoSign("the alternating group has no signature character")
    return GModule(m.group, m.n, m.ring, [-img for img in m.images],
                   coordinate_orders=m.coordinate_orders, check=False)


def restrict_to_alt(m: GModule) -> GModule:
    if m.group != "sym":
        raise GModuleError("only Sym-modules restrict to Alt")
    images = [m.act(Perm.from_cycles(m.n, [(1, 2, k)])) for k in range(3, m.n + 1)]
    return GModule("alt", m.n, m.ring, images,
                   coordinate_orders=m.coordinate_orders, check=False)


def compose_with(m: GModule, generator_images) -> GModule:
    """Precompose the action with the endomorphism sending the canonical
    generators to the given permutations; relations are re-verified, so a
    non-automorphism raises RelationViolation."""
    gens = m.generators()
    generator_images = list(generator_images)
    if len(generator_images) != len(gens):
        raise ValueError("one image per canonical generator")
    images = [m.act(phi_g) for phi_g in generator_images]
    return GModule(m.group, m.n, m.ring, images,
                   coordinate_orders=m.coordinate_orders, check=True)


def intertwines(t: Matrix, src: GModule, dst: GModule) -> bool:
    """Whether t . act_src(g) == act_dst(g) . t for every canonical generator."""
    if src.group != dst.group or src.n != dst.n:
        return False
    return all(t * a == b * t for a, b in zip(src.images, dst.images))


@dataclass(frozen=True)
class IrreducibilityResult:
    verdict: str  # "irreducible" | "reducible" | "unknown"
    witness: Subspace | None = None

    @property
    def irreducible(self):
        return self.verdict == "irreducible"


def is_irreducible(m: GModule, seed: int = 0) -> IrreducibilityResult:
    """Irreducibility of the module.

    Finite fields go through the meataxe.  Over Q, a trivial commutant
    certifies irreducibility (the group is finite, so the module is
    semisimple); otherwise standard basis vectors are spun looking for a
    proper invariant subspace, and an honest "unknown" is reported when that
    search is inconclusive.
    """
    if not m.ring.is_field:
        raise NotAField("irreducibility is only decided over fields")
    if m.dim <= 1:
        return IrreducibilityResult("irreducible" if m.dim == 1 else "reducible")
    if isinstance(m.ring, FiniteField):
        res = meataxe_irreducible(list(m.images), seed=seed)
        if res.irreducible:
            return IrreducibilityResult("irreducible")
        return IrreducibilityResult("reducible", res.witness)
    if isinstance(m.ring, Rational):
        from .linalg import commutant_dimension
        if commutant_dimension(list(m.images)) == 1:
            return IrreducibilityResult("irreducible")
        ring = m.ring
        for i in range(m.dim):
            vec = [ring.zero()] * m.dim
            vec[i] = ring.one()
            sub = spin_span(list(m.images), [tuple(vec)])
            if 0 < sub.dim < m.dim:
                return IrreducibilityResult("reducible", sub)
        return IrreducibilityResult("unknown")
    raise NotAField(f"unsupported ring {m.ring!r}")
