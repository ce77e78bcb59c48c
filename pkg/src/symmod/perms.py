"""Permutations of {1..n}, canonical generating sets of Sym(n) and Alt(n),
Klein four-groups of bitranspositions, and the outer automorphism of Sym(6).

Composition is function composition: ``(a * b)(x) == a(b(x))``, which matches
matrices acting on column vectors from the left.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass


class PermError(Exception):
    pass


class OddPermutationInAlt(PermError):
    pass


class BadSupport(PermError):
    pass


class SearchFailed(PermError):
    pass


@dataclass(frozen=True)
class Perm:
    n: int
    images: tuple  # images[i-1] = image of point i

    def __post_init__(self):
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise ValueError("images do not form a bijection of {1..n}")

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(n, tuple(range(1, n + 1)))

    @staticmethod
    def from_cycles(n: int, cycles) -> "Perm":
        images = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            cyc = tuple(cyc)
            for pt in cyc:
                if not (1 <= pt <= n):
                    raise ValueError(f"point {pt} out of range 1..{n}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated across cycles")
                seen.add(pt)
            for i, pt in enumerate(cyc):
                images[pt - 1] = cyc[(i + 1) % len(cyc)]
        return Perm(n, tuple(images))

    @staticmethod
    def transposition(n: int, a: int, b: int) -> "Perm":
        return Perm.from_cycles(n, [(a, b)])

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.n != other.n:
            raise ValueError("degrees differ")
        return Perm(self.n, tuple(self.images[other.images[i] - 1]
                                  for i in range(self.n)))

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        result = Perm.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Perm(self.n, tuple(inv))

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.n))

    def cycles(self) -> tuple:
        """Nontrivial cycles, each rotated to start at its least point,
        sorted by least point."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen or self.images[start - 1] == start:
                continue
            cyc = [start]
            seen.add(start)
            pt = self.images[start - 1]
            while pt != start:
                cyc.append(pt)
                seen.add(pt)
                pt = self.images[pt - 1]
            out.append(tuple(cyc))
        return tuple(sorted(out))

    def sign(self) -> int:
        s = 1
        for cyc in self.cycles():
            if len(cyc) % 2 == 0:
                s = -s
        return s

    def order(self) -> int:
        o = 1
        for cyc in self.cycles():
            o = o * len(cyc) // math.gcd(o, len(cyc))
        return o

    def support(self) -> frozenset:
        return frozenset(i + 1 for i in range(self.n)
                         if self.images[i] != i + 1)

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in cyc) + ")" for cyc in cycs)

    @staticmethod
    def parse_cycles(text: str, n: int) -> "Perm":
        text = text.strip()
        if text == "()" or text == "":
            return Perm.identity(n)
        if not text.startswith("(") or not text.endswith(")"):
            raise ValueError(f"bad cycle notation {text!r}")
        body = text[1:-1]
        cycles = []
        for chunk in body.split(")("):
            pts = [int(tok) for tok in chunk.replace(",", " ").split()]
            if pts:
                cycles.append(tuple(pts))
        return Perm.from_cycles(n, cycles)

    def __repr__(self):
        return f"Perm({self.n}, {self.cycle_string()})"


def disjoint(a: Perm, b: Perm) -> bool:
    return not (a.support() & b.support())


# ---------------------------------------------------------------------------
# canonical generating sets


@dataclass(frozen=True)
class GeneratorSet:
    kind: str  # "sym" | "alt"
    n: int
    perms: tuple

    def __iter__(self):
        return iter(self.perms)

    def __len__(self):
        return len(self.perms)


def sym_generators(n: int) -> GeneratorSet:
    """Adjacent transpositions (i, i+1), i = 1..n-1."""
    return GeneratorSet("sym", n, tuple(Perm.transposition(n, i, i + 1)
                                        for i in range(1, n)))


def alt_generators(n: int) -> GeneratorSet:
    """Three-cycles (1, 2, k), k = 3..n."""
    return GeneratorSet("alt", n, tuple(Perm.from_cycles(n, [(1, 2, k)])
                                        for k in range(3, n + 1)))


def alt_generators_on(n: int, support) -> list:
    """Canonical generators of the alternating group on ``support`` inside
    Sym(n): the 3-cycles (c1, c2, ck) over the sorted support."""
    pts = sorted(support)
    if len(pts) < 3:
        return []
    return [Perm.from_cycles(n, [(pts[0], pts[1], c)]) for c in pts[2:]]


# ---------------------------------------------------------------------------
# factorization over the canonical generators


def _factorize_sym(sigma: Perm) -> list:
    # bubble sort on the one-line form: swapping positions i, i+1 composes
    # with (i, i+1) on the right, so the reversed swap list is the word
    arr = list(sigma.images)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                swaps.append(i)
                changed = True
    return swaps[::-1]


def _three_cycle_word(a: int, b: int, c: int) -> list:
    """Word over the generators (1,2,k) composing to the 3-cycle (a b c);
    entries are generator indices, i.e. k-3."""
    cyc = (a, b, c)
    if 1 in cyc:
        while cyc[0] != 1:
            cyc = (cyc[1], cyc[2], cyc[0])
        _, y, z = cyc
        if y == 2:  # (1 2 z)
            return [z - 3]
        if z == 2:  # (1 y 2) = x_y^2
            return [y - 3, y - 3]
        # (1 y z) = x_z o x_y^{-1}
        return [z - 3, y - 3, y - 3]
    if 2 in cyc:
        while cyc[0] != 2:
            cyc = (cyc[1], cyc[2], cyc[0])
        _, y, z = cyc
        # (2 y z) = x_z^{-1} o x_y
        return [z - 3, z - 3, y - 3]
    x, y, z = cyc
    # (x y z) = (1 x y) o (1 y z)
    return _three_cycle_word(1, x, y) + _three_cycle_word(1, y, z)


def _factorize_alt(sigma: Perm) -> list:
    # transpositions from the cycle decomposition, paired off and rewritten
    # into (1,2,k) three-cycles
    transpositions = []
    for cyc in sigma.cycles():
        first = cyc[0]
        for other in reversed(cyc[1:]):
            transpositions.append((first, other))
    assert len(transpositions) % 2 == 0
    word = []
    for idx in range(0, len(transpositions), 2):
        (a, b), (c, d) = transpositions[idx], transpositions[idx + 1]
        if {a, b} == {c, d}:
            continue
        shared = {a, b} & {c, d}
        if shared:
            prod = Perm.transposition(sigma.n, a, b) * Perm.transposition(sigma.n, c, d)
            word.extend(_three_cycle_word(*prod.cycles()[0]))
        else:
            # (a b)(c d) = (a b c) o (b c d)
            word.extend(_three_cycle_word(a, b, c))
            word.extend(_three_cycle_word(b, c, d))
    return word


def factorize(sigma: Perm, gens: GeneratorSet) -> list:
    """Indices into ``gens`` whose left-to-right composition equals sigma."""
    if sigma.n != gens.n:
        raise ValueError("degree mismatch")
    if gens.kind == "sym":
        return _factorize_sym(sigma)
    if sigma.sign() != 1:
        raise OddPermutationInAlt(f"{sigma.cycle_string()} is odd")
    return _factorize_alt(sigma)


def evaluate_word(word, gens: GeneratorSet) -> Perm:
    result = Perm.identity(gens.n)
    for idx in word:
        result = result * gens.perms[idx]
    return result


# ---------------------------------------------------------------------------
# small subgroup gadgets


@dataclass(frozen=True)
class KleinFour:
    n: int
    support: tuple  # four distinct points, sorted

    def __post_init__(self):
        if len(set(self.support)) != 4 or list(self.support) != sorted(self.support):
            raise BadSupport("support must be four distinct sorted points")
        if self.support[-1] > self.n:
            raise BadSupport("support exceeds the degree")

    def elements(self) -> tuple:
        i, j, k, l = self.support
        return (Perm.from_cycles(self.n, [(i, j), (k, l)]),
                Perm.from_cycles(self.n, [(i, k), (j, l)]),
                Perm.from_cycles(self.n, [(i, l), (j, k)]))


def klein_four(n: int, i: int, j: int, k: int, l: int) -> KleinFour:
    return KleinFour(n, tuple(sorted((i, j, k, l))))


def sigma_subgroup(n: int, points, k: int, l: int) -> list:
    """Generators of the subgroup of Alt(n) isomorphic to Sym(points): each
    adjacent transposition of Sym(points) multiplied by the fixed (k l)."""
    pts = sorted(points)
    if len(pts) < 2:
        raise BadSupport("need at least two points")
    if k == l or k in pts or l in pts:
        raise BadSupport("auxiliary symbols must be distinct and off the support")
    if max(pts + [k, l]) > n or min(pts + [k, l]) < 1:
        raise BadSupport("points out of range")
    return [Perm.from_cycles(n, [(pts[s], pts[s + 1]), (k, l)])
            for s in range(len(pts) - 1)]


# ---------------------------------------------------------------------------
# the outer automorphism of Sym(6)


_OUTER6 = None
_OUTER6_LOCK = threading.Lock()


def _triple_transpositions():
    out = []
    for perm_pairs in _pairings((1, 2, 3, 4, 5, 6)):
        out.append(Perm.from_cycles(6, perm_pairs))
    return out


def _pairings(points):
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points)):
        pair = (first, points[i])
        rest = points[1:i] + points[i + 1:]
        for sub in _pairings(rest):
            yield [pair] + sub


def _closure(gens, bound=None):
    seen = {Perm.identity(gens[0].n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = g * h
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if bound is not None and len(seen) > bound:
                        return seen
        frontier = nxt
    return seen


def _search_outer6():
    candidates = _triple_transpositions()

    def compatible(assigned, cand):
        # automorphisms preserve element orders, so the products must have
        # order exactly 3 (braid) or exactly 2 (commuting), never 1
        i = len(assigned)
        for j, prev in enumerate(assigned):
            want = 3 if i - j == 1 else 2
            if (cand * prev).order() != want:
                return False
        return True

    def dfs(assigned):
        if len(assigned) == 5:
            return list(assigned)
        for cand in candidates:
            if compatible(assigned, cand):
                result = dfs(assigned + [cand])
                if result is not None:
                    return result
        return None

    images = dfs([])
    if images is None:
        raise SearchFailed("no outer automorphism found")  # pragma: no cover
    if len(_closure(images, bound=721)) != 720:
        raise SearchFailed("candidate images do not generate Sym(6)")  # pragma: no cover
    return tuple(images)


def outer_automorphism_sym6() -> tuple:
    """Images of the adjacent transpositions (1 2), ..., (5 6) under an outer
    automorphism of Sym(6); each image is a triple transposition.  Found by
    Coxeter-relation backtracking at first use and cached."""
    global _OUTER6
    with _OUTER6_LOCK:
        if _OUTER6 is None:
            _OUTER6 = _search_outer6()
        return _OUTER6


def apply_generator_map(sigma: Perm, images, kind: str = "sym") -> Perm:
    """Image of sigma under the homomorphism sending the canonical generators
    to ``images``."""
    gens = sym_generators(sigma.n) if kind == "sym" else alt_generators(sigma.n)
    word = factorize(sigma, gens)
    result = Perm.identity(images[0].n)
    for idx in word:
        result = result * images[idx]
    return result


def all_perms(n: int):
    for tup in itertools.permutations(range(1, n + 1)):
        yield Perm(n, tup)


def all_even_perms(n: int):
    for p in all_perms(n):
        if p.sign() == 1:
            yield p
