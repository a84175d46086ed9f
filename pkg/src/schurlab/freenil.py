"""Free nilpotent groups of class c on k letters via truncated integer series.

A letter maps to 1 + x_i in the ring of noncommutative integer polynomials
truncated at total degree c (the Magnus embedding).  Group elements become
invertible series with constant term 1; identities between commutator words
are verified by comparing series exactly.

Monomials of degree d are packed as base-k integers; a series keeps one
coefficient dict per degree, which makes truncated multiplication cheap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .intlinalg import IntegerSolver


class FreenilError(Exception):
    pass


class NonIntegralExpansion(FreenilError):
    pass


class TruncatedSeries:
    __slots__ = ("k", "c", "parts")

    def __init__(self, k: int, c: int, parts: Optional[list[dict[int, int]]] = None):
        self.k = k
        self.c = c
        if parts is None:
            parts = [dict() for _ in range(c + 1)]
        self.parts = parts

    @classmethod
    def one(cls, k: int, c: int) -> "TruncatedSeries":
        s = cls(k, c)
        s.parts[0][0] = 1
        return s

    @classmethod
    def generator(cls, k: int, c: int, i: int) -> "TruncatedSeries":
        if not 0 <= i < k:
            raise FreenilError(f"letter index {i} out of range for k={k}")
        s = cls.one(k, c)
        if c >= 1:
            s.parts[1][i] = 1
        return s

    def constant(self) -> int:
        return self.parts[0].get(0, 0)

    def copy(self) -> "TruncatedSeries":
        return TruncatedSeries(self.k, self.c, [dict(p) for p in self.parts])

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.k != other.k or self.c != other.c:
            raise FreenilError("series contexts differ")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        out = self.copy()
        for d, p in enumerate(other.parts):
            op = out.parts[d]
            for v, cf in p.items():
                nv = op.get(v, 0) + cf
                if nv:
                    op[v] = nv
                else:
                    op.pop(v, None)
        return out

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(
            self.k, self.c, [{v: -cf for v, cf in p.items()} for p in self.parts]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        c, k = self.c, self.k
        kpow = _k_powers(k, c)
        parts = [dict() for _ in range(c + 1)]
        for d1, p1 in enumerate(self.parts):
            if not p1:
                continue
            for d2 in range(c - d1 + 1):
                p2 = other.parts[d2]
                if not p2:
                    continue
                out = parts[d1 + d2]
                m = kpow[d2]
                for v1, c1 in p1.items():
                    base = v1 * m
                    for v2, c2 in p2.items():
                        key = base + v2
                        nv = out.get(key, 0) + c1 * c2
                        if nv:
                            out[key] = nv
                        else:
                            del out[key]
        return TruncatedSeries(k, c, parts)

    def inverse(self) -> "TruncatedSeries":
        if self.constant() != 1:
            raise FreenilError("only series with constant term 1 are inverted")
        u = self.copy()
        del u.parts[0][0]  # u = s - 1
        neg_u = -u
        acc = TruncatedSeries.one(self.k, self.c)
        term = TruncatedSeries.one(self.k, self.c)
        for _ in range(self.c):
            term = term * neg_u
            acc = acc + term
        return acc

    def power(self, n: int) -> "TruncatedSeries":
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = TruncatedSeries.one(self.k, self.c)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree_part(self, d: int) -> dict[int, int]:
        return dict(self.parts[d])

    def is_one(self) -> bool:
        return self.constant() == 1 and all(not p for p in self.parts[1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.k == other.k and self.c == other.c and self.parts == other.parts

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return (
            self.k,
            self.c,
            tuple(tuple(sorted(p.items())) for p in self.parts),
        )

    def __repr__(self):
        terms = []
        for d, p in enumerate(self.parts):
            for v, cf in sorted(p.items()):
                mono = "".join(chr(ord("a") + dig) for dig in _unpack(v, d, self.k))
                terms.append(f"{cf}*{mono or '1'}")
        return "Series(" + " + ".join(terms[:12]) + (" + ..." if len(terms) > 12 else "") + ")"


@lru_cache(maxsize=None)
def _k_powers(k: int, c: int) -> tuple[int, ...]:
    out = [1]
    for _ in range(c):
        out.append(out[-1] * k)
    return tuple(out)


def _unpack(v: int, d: int, k: int) -> list[int]:
    digits = []
    for _ in range(d):
        v, r = divmod(v, k)
        digits.append(r)
    return digits[::-1]


def magnus(word: Sequence[tuple[int, int]], k: int, c: int) -> TruncatedSeries:
    """Image of a free-group word (letter, exponent)* under the Magnus map."""
    s = TruncatedSeries.one(k, c)
    for letter, e in word:
        s = s * TruncatedSeries.generator(k, c, letter).power(e)
    return s


def group_commutator(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    """[u, v] = u v u^{-1} v^{-1}."""
    return u * v * u.inverse() * v.inverse()


# -- Hall basis ------------------------------------------------------------------


@dataclass(frozen=True)
class BasicCommutator:
    weight: int
    position: int
    letter: Optional[int] = None
    left: Optional["BasicCommutator"] = None
    right: Optional["BasicCommutator"] = None

    def __str__(self):
        if self.letter is not None:
            return chr(ord("a") + self.letter)
        return f"[{self.left},{self.right}]"


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    if n > 1:
        result = -result
    return result


def witt_number(k: int, w: int) -> int:
    total = 0
    for d in range(1, w + 1):
        if w % d == 0:
            total += _mobius(d) * k ** (w // d)
    assert total % w == 0
    return total // w


class HallBasis:
    """Basic commutators of weight <= c on k letters, weight-ascending.

    Within a weight, ordered lexicographically by (left position, right
    position).  [u, v] is basic iff position(u) > position(v) and, when
    u = [x, y], position(y) <= position(v).
    """

    def __init__(self, k: int, c: int):
        if k < 1 or c < 1:
            raise FreenilError("need k >= 1 and c >= 1")
        self.k = k
        self.c = c
        commutators: list[BasicCommutator] = [
            BasicCommutator(weight=1, position=i, letter=i) for i in range(k)
        ]
        by_weight: dict[int, list[BasicCommutator]] = {1: list(commutators)}
        for w in range(2, c + 1):
            candidates = []
            for u in commutators:
                wv = w - u.weight
                if wv < 1:
                    continue
                for v in by_weight.get(wv, ()):
                    if u.position <= v.position:
                        continue
                    if u.letter is None and u.right.position > v.position:
                        continue
                    candidates.append((u, v))
            candidates.sort(key=lambda uv: (uv[0].position, uv[1].position))
            level = []
            for u, v in candidates:
                bc = BasicCommutator(
                    weight=w, position=len(commutators) + len(level), left=u, right=v
                )
                level.append(bc)
            by_weight[w] = level
            commutators.extend(level)
        self.commutators = tuple(commutators)
        self.by_weight = {w: tuple(v) for w, v in by_weight.items()}
        self._series_cache: dict[int, TruncatedSeries] = {}
        self._solver_cache: dict[int, IntegerSolver] = {}

    def __len__(self):
        return len(self.commutators)

    def series(self, bc: BasicCommutator) -> TruncatedSeries:
        s = self._series_cache.get(bc.position)
        if s is None:
            if bc.letter is not None:
                s = TruncatedSeries.generator(self.k, self.c, bc.letter)
            else:
                s = group_commutator(self.series(bc.left), self.series(bc.right))
            self._series_cache[bc.position] = s
        return s

    def _solver(self, w: int) -> IntegerSolver:
        solver = self._solver_cache.get(w)
        if solver is None:
            columns = [self.series(bc).degree_part(w) for bc in self.by_weight[w]]
            solver = IntegerSolver(self.k ** w, columns)
            self._solver_cache[w] = solver
        return solver


def normal_form(s: TruncatedSeries, basis: HallBasis) -> list[int]:
    """Exponent vector (basis order) with s = prod C^{e_C}, weight-ascending
    from the left.  Raises NonIntegralExpansion if s is not a group image."""
    if s.k != basis.k or s.c != basis.c:
        raise FreenilError("series does not match basis context")
    if s.constant() != 1:
        raise NonIntegralExpansion("constant term is not 1")
    exps: list[int] = []
    residual = s
    for w in range(1, basis.c + 1):
        comp = residual.degree_part(w)
        try:
            coeffs = basis._solver(w).solve(comp)
        except ValueError as exc:
            raise NonIntegralExpansion(f"weight {w}: {exc}") from exc
        exps.extend(coeffs)
        block = TruncatedSeries.one(basis.k, basis.c)
        for bc, e in zip(basis.by_weight[w], coeffs):
            if e:
                block = block * basis.series(bc).power(e)
        residual = block.inverse() * residual
    if not residual.is_one():
        raise NonIntegralExpansion("nonzero residual above the class bound")
    return exps


def product_of_basics(exps: Sequence[int], basis: HallBasis) -> TruncatedSeries:
    s = TruncatedSeries.one(basis.k, basis.c)
    for bc, e in zip(basis.commutators, exps):
        if e:
            s = s * basis.series(bc).power(e)
    return s


def expansion_exponents(
    s: TruncatedSeries,
    layers: Sequence[tuple[int, Sequence[TruncatedSeries]]],
    side: str = "left",
) -> list[list[int]]:
    """Exponents of s written as an ordered product of the given factors.

    ``layers`` lists (weight, factors) with weights strictly ascending and each
    factor a group image whose lowest-degree part has the stated weight; the
    factors of each layer must have independent weight-w components.

    side="left": s = B_{w1} B_{w2} ... (ascending weights left to right).
    side="right": s = ... B_{w2} B_{w1} (ascending weights right to left) —
    the shape with the highest-weight factors leftmost and e.g. a^n b^n at the
    right end.  Within a layer, factors multiply in their listed order.
    """
    if side not in ("left", "right"):
        raise FreenilError("side must be 'left' or 'right'")
    residual = s
    out = []
    prev_w = 0
    for w, factors in layers:
        if w <= prev_w:
            raise FreenilError("layer weights must be strictly ascending")
        prev_w = w
        for d in range(1, w):
            if residual.parts[d]:
                raise NonIntegralExpansion(
                    f"residual has degree-{d} terms below the next layer weight {w}"
                )
        columns = [f.degree_part(w) for f in factors]
        solver = IntegerSolver(s.k ** w, columns)
        try:
            coeffs = solver.solve(residual.degree_part(w))
        except ValueError as exc:
            raise NonIntegralExpansion(f"weight {w}: {exc}") from exc
        out.append(coeffs)
        block = TruncatedSeries.one(s.k, s.c)
        for f, e in zip(factors, coeffs):
            if e:
                block = block * f.power(e)
        if side == "left":
            residual = block.inverse() * residual
        else:
            residual = residual * block.inverse()
    if not residual.is_one():
        raise NonIntegralExpansion("nonzero residual after all layers")
    return out


# -- binomial-coefficient recovery -------------------------------------------------


@dataclass(frozen=True)
class BinomialPoly:
    """f(n) = sum over t >= 1 of coeffs[t-1] * C(n, t)."""

    coeffs: tuple[int, ...]

    def evaluate(self, n: int) -> int:
        return sum(a * math.comb(n, t + 1) for t, a in enumerate(self.coeffs))

    def as_dict(self) -> dict[int, int]:
        return {t + 1: a for t, a in enumerate(self.coeffs) if a}

    def __str__(self):
        terms = [
            ("" if a == 1 else f"{a}") + f"C(n,{t})" for t, a in sorted(self.as_dict().items())
        ]
        return " + ".join(terms) if terms else "0"


def fit_binomial(family: Callable[[int], int], w: int) -> BinomialPoly:
    """Fit f(n) = sum_{t=1}^{w} a_t C(n,t) from samples at n = 1..w; the fit is
    then re-verified at n = w+1..w+10."""
    coeffs: list[int] = []
    for n in range(1, w + 1):
        value = family(n) - sum(a * math.comb(n, t + 1) for t, a in enumerate(coeffs))
        coeffs.append(value)  # C(n, n) = 1, so a_n is forced
    poly = BinomialPoly(tuple(coeffs))
    for n in range(w + 1, w + 11):
        if family(n) != poly.evaluate(n):
            raise FreenilError(
                f"binomial fit fails at n={n}: {family(n)} != {poly.evaluate(n)}"
            )
    return poly


# -- identity verification -----------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    passed: bool
    counterexample: Optional[tuple[int, str]] = None  # (n, detail)


def default_binding(k: int, c: int) -> dict[str, TruncatedSeries]:
    names = "abc"
    if k > len(names):
        raise FreenilError("default binding supports k <= 3")
    return {names[i]: TruncatedSeries.generator(k, c, i) for i in range(k)}


def verify_identity(
    lhs,
    rhs,
    k: int,
    c: int,
    n_range: Sequence[int],
    binding: Optional[dict[str, TruncatedSeries]] = None,
) -> IdentityReport:
    """Evaluate both commutator expressions in the free class-c group on k
    letters for each n and compare the series exactly."""
    if binding is None:
        binding = default_binding(k, c)
    for n in n_range:
        left = lhs.evaluate(binding, n)
        right = rhs.evaluate(binding, n)
        if left != right:
            return IdentityReport(
                passed=False,
                counterexample=(n, f"series differ at n={n}"),
            )
    return IdentityReport(passed=True)
