"""Power-commutator presentations with prime relative orders.

A group is given by generators g_1..g_n (internally 0-based), prime relative
orders o_i, and relations

    g_i^{o_i} = w_i            (w_i a normal word over indices > i)
    g_j g_i = g_i g_j w_ji     (j > i; w_ji over indices > j; absent = trivial)

Elements are normal words: exponent tuples (e_1..e_n) with 0 <= e_i < o_i.
Arithmetic is collection-from-the-left.  The collector optionally tracks one
central integer "tail" per relation; that powers the Schur-multiplier
computation in the multiplier module.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

Word = tuple[tuple[int, int], ...]       # ((generator, exponent), ...), 0-based
NormalWord = tuple[int, ...]

DEFAULT_CAP = 200_000


class PcError(Exception):
    pass


class CatalogSyntaxError(PcError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InconsistentPresentation(PcError):
    pass


class EnumerationCapExceeded(PcError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PcPresentation:
    name: str
    relative_orders: tuple[int, ...]
    power_words: tuple[Word, ...]
    comm_words: tuple[tuple[tuple[int, int], Word], ...]  # ((j, i), word), j > i
    prime: Optional[int] = None

    @property
    def ngens(self) -> int:
        return len(self.relative_orders)

    @property
    def order(self) -> int:
        return math.prod(self.relative_orders)

    @cached_property
    def comm_dict(self) -> dict[tuple[int, int], Word]:
        return dict(self.comm_words)

    def validate(self) -> None:
        n = self.ngens
        for o in self.relative_orders:
            if not is_prime(o):
                raise PcError(f"{self.name}: relative order {o} is not prime")
        if len(self.power_words) != n:
            raise PcError(f"{self.name}: expected {n} power words")
        for i, w in enumerate(self.power_words):
            self._validate_word(w, min_index=i + 1, what=f"pow {i + 1}")
        for (j, i), w in self.comm_words:
            if not (0 <= i < j < n):
                raise PcError(f"{self.name}: bad commutator pair ({j + 1},{i + 1})")
            self._validate_word(w, min_index=j + 1, what=f"comm {j + 1} {i + 1}")
        if self.prime is not None and any(o != self.prime for o in self.relative_orders):
            raise PcError(f"{self.name}: declared prime {self.prime} does not match orders")

    def _validate_word(self, w: Word, min_index: int, what: str) -> None:
        prev = -1
        for g, e in w:
            if not (min_index <= g < self.ngens):
                raise PcError(
                    f"{self.name}: {what}: generator g{g + 1} violates the index constraint"
                )
            if g <= prev:
                raise PcError(f"{self.name}: {what}: indices must be strictly increasing")
            if not (1 <= e < self.relative_orders[g]):
                raise PcError(f"{self.name}: {what}: exponent {e} out of range for g{g + 1}")
            prev = g

    def to_catalog_text(self) -> str:
        lines = ["[group]", f"name = {self.name}"]
        if self.prime is not None:
            lines.append(f"prime = {self.prime}")
        lines.append(f"ngens = {self.ngens}")
        lines.append("orders = " + " ".join(str(o) for o in self.relative_orders))
        for i, w in enumerate(self.power_words):
            if w:
                lines.append(f"pow {i + 1} : {format_word(w)}")
        for (j, i), w in sorted(self.comm_words):
            if w:
                lines.append(f"comm {j + 1} {i + 1} : {format_word(w)}")
        return "\n".join(lines) + "\n"


def make_presentation(
    name: str,
    orders: Sequence[int],
    power_words: Optional[dict[int, Word]] = None,
    comm_words: Optional[dict[tuple[int, int], Word]] = None,
    prime: Optional[int] = None,
) -> PcPresentation:
    """Convenience constructor from sparse relation dictionaries (0-based)."""
    n = len(orders)
    pw = tuple(tuple(power_words.get(i, ())) if power_words else () for i in range(n))
    cw = tuple(sorted((pair, tuple(w)) for pair, w in (comm_words or {}).items() if w))
    if prime is None and orders and all(o == orders[0] for o in orders):
        prime = orders[0]
    pres = PcPresentation(
        name=name,
        relative_orders=tuple(orders),
        power_words=pw,
        comm_words=cw,
        prime=prime,
    )
    pres.validate()
    return pres


def format_word(w: Word) -> str:
    if not w:
        return ""
    return " ".join(f"g{g + 1}" if e == 1 else f"g{g + 1}^{e}" for g, e in w)


def word_of(exps: Sequence[int]) -> Word:
    return tuple((g, e) for g, e in enumerate(exps) if e)


class Collector:
    """Collection-from-the-left, optionally tracking one central tail per relation.

    Tail bookkeeping: relation i (power) has tail index i; relation (j, i)
    (commutator, j > i) has index ``n + pair_index[(j, i)]``.  Each rewrite by a
    relation adds +1 (or -1 when inverting) to that relation's tail coordinate.
    """

    def __init__(self, pres: PcPresentation, tails: bool = False):
        self.pres = pres
        self.n = pres.ngens
        self.orders = pres.relative_orders
        self.power_words = pres.power_words
        self.comm_words = pres.comm_dict
        self.pairs = [(j, i) for j in range(self.n) for i in range(j)]
        if tails:
            self.ntails = self.n + len(self.pairs)
            self.comm_tail_index = {
                pair: self.n + k for k, pair in enumerate(self.pairs)
            }
        else:
            self.ntails = 0
            self.comm_tail_index = {}

    def collect(
        self, letters: Iterable[tuple[int, int]], tails: Optional[list[int]] = None
    ) -> tuple[NormalWord, tuple[int, ...]]:
        """Normal form of the given letter sequence.

        ``tails`` (mutable, length ntails) accumulates relation applications;
        a fresh zero vector is used when omitted.
        """
        if tails is None:
            tails = [0] * self.ntails
        buf: list[list[int]] = []
        self._push(letters, tails, buf)
        exps = self._reduce(buf, tails)
        return exps, tuple(tails)

    def _push(self, letters, tails, out) -> None:
        for g, e in letters:
            if not 0 <= g < self.n:
                raise PcError(f"generator index {g} out of range")
            if e > 0:
                out.append([g, e])
            elif e < 0:
                for _ in range(-e):
                    self._push_inverse(g, tails, out)

    def _push_inverse(self, g: int, tails, out) -> None:
        # g^{-1} = g^{o-1} (w_g)^{-1} t^{-1}  from  g^o = w_g t  (t central)
        out.append([g, self.orders[g] - 1])
        for h, e in reversed(self.power_words[g]):
            for _ in range(e):
                self._push_inverse(h, tails, out)
        if self.ntails:
            tails[g] -= 1

    def _reduce(self, buf: list[list[int]], tails) -> NormalWord:
        orders = self.orders
        power_words = self.power_words
        comm_words = self.comm_words
        ntails = self.ntails
        i = 0
        while i < len(buf):
            g, e = buf[i]
            if i + 1 < len(buf) and buf[i + 1][0] == g:
                buf[i][1] = e + buf[i + 1][1]
                del buf[i + 1]
                continue
            if e >= orders[g]:
                repl = []
                if e - orders[g]:
                    repl.append([g, e - orders[g]])
                repl.extend([h, ee] for h, ee in power_words[g])
                buf[i : i + 1] = repl
                if ntails:
                    tails[g] += 1
                i = max(i - 1, 0)
                continue
            if i + 1 < len(buf):
                g2, e2 = buf[i + 1]
                if g2 < g:
                    # one swap step: g^e g2^{e2} = g^{e-1} g2 g w_{g,g2} g2^{e2-1}
                    repl = []
                    if e - 1:
                        repl.append([g, e - 1])
                    repl.append([g2, 1])
                    repl.append([g, 1])
                    repl.extend([h, ee] for h, ee in comm_words.get((g, g2), ()))
                    if e2 - 1:
                        repl.append([g2, e2 - 1])
                    buf[i : i + 2] = repl
                    if ntails:
                        tails[self.comm_tail_index[(g, g2)]] += 1
                    i = max(i - 1, 0)
                    continue
            i += 1
        exps = [0] * self.n
        for g, e in buf:
            exps[g] = e
        return tuple(exps)


@dataclass(frozen=True)
class Violation:
    family: str            # "triple" | "power_left" | "power_right" | "power_self"
    indices: tuple[int, ...]  # 1-based generator indices
    lhs: NormalWord
    rhs: NormalWord

    def __str__(self):
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.family}({idx}): {self.lhs} != {self.rhs}"


def overlap_tests(collector: Collector):
    """Yield (family, indices, (lhs_exps, lhs_tails), (rhs_exps, rhs_tails)).

    The four overlap families; each side collected deterministically.  Tail
    vectors accumulate across the staged collections, so with a tailed
    collector the difference of the two sides is the relation imposed on the
    tails by consistency.
    """
    n = collector.n
    orders = collector.orders

    for k in range(n):
        for j in range(k):
            for i in range(j):
                # (g_k g_j) g_i: collect g_k g_j, then append g_i
                t = [0] * collector.ntails
                e1, _ = collector.collect([(k, 1), (j, 1)], t)
                e2, _ = collector.collect(word_of(e1) + ((i, 1),), t)
                rhs = (e2, tuple(t))
                # lhs: g_k * (g_j g_i)
                t = [0] * collector.ntails
                e1, _ = collector.collect([(j, 1), (i, 1)], t)
                e2, _ = collector.collect(((k, 1),) + word_of(e1), t)
                lhs = (e2, tuple(t))
                yield "triple", (k + 1, j + 1, i + 1), lhs, rhs
    for j in range(n):
        for i in range(j):
            # (g_j^{o_j}) g_i  vs  g_j^{o_j-1} (g_j g_i)
            t = [0] * collector.ntails
            e1, _ = collector.collect([(j, orders[j])], t)
            e2, _ = collector.collect(word_of(e1) + ((i, 1),), t)
            lhs = (e2, tuple(t))
            t = [0] * collector.ntails
            e1, _ = collector.collect([(j, 1), (i, 1)], t)
            e2, _ = collector.collect(((j, orders[j] - 1),) + word_of(e1), t)
            rhs = (e2, tuple(t))
            yield "power_left", (j + 1, i + 1), lhs, rhs
            # g_j (g_i^{o_i})  vs  (g_j g_i) g_i^{o_i-1}
            t = [0] * collector.ntails
            e1, _ = collector.collect([(i, orders[i])], t)
            e2, _ = collector.collect(((j, 1),) + word_of(e1), t)
            lhs = (e2, tuple(t))
            t = [0] * collector.ntails
            e1, _ = collector.collect([(j, 1), (i, 1)], t)
            e2, _ = collector.collect(word_of(e1) + ((i, orders[i] - 1),), t)
            rhs = (e2, tuple(t))
            yield "power_right", (j + 1, i + 1), lhs, rhs
    for i in range(n):
        # g_i (g_i^{o_i})  vs  (g_i^{o_i}) g_i
        t = [0] * collector.ntails
        e1, _ = collector.collect([(i, orders[i])], t)
        e2, _ = collector.collect(((i, 1),) + word_of(e1), t)
        lhs = (e2, tuple(t))
        t = [0] * collector.ntails
        e1, _ = collector.collect([(i, orders[i])], t)
        e2, _ = collector.collect(word_of(e1) + ((i, 1),), t)
        rhs = (e2, tuple(t))
        yield "power_self", (i + 1,), lhs, rhs


def check_consistency(pres: PcPresentation) -> list[Violation]:
    collector = Collector(pres, tails=False)
    out = []
    for family, indices, (le, _), (re_, _) in overlap_tests(collector):
        if le != re_:
            out.append(Violation(family, indices, le, re_))
    return out


@dataclass(frozen=True)
class Subgroup:
    group: "PcGroup"
    generators: tuple[NormalWord, ...]
    elements: frozenset[NormalWord]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, w: NormalWord) -> bool:
        return w in self.elements

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def is_trivial(self) -> bool:
        return self.order == 1

    def exponent(self) -> int:
        e = 1
        for w in self.elements:
            e = math.lcm(e, self.group.element_order(w))
        return e


@dataclass(frozen=True)
class GroupFlags:
    nilpotency_class: int
    derived_length: int
    exponent: int
    is_regular: Optional[bool]
    is_powerful: bool
    condition1_m: Optional[int]
    condition2: bool
    central_pn: int
    is_metabelian: bool


class PcGroup:
    """Arithmetic and structure for one consistent pc presentation.

    All element operations are word-level (no index tables); small groups get
    an unbounded product memo so closure-heavy analyses amortize to dict hits.
    """

    MEMO_ORDER_LIMIT = 4096

    def __init__(self, pres: PcPresentation, cap: int = DEFAULT_CAP, check: bool = True):
        pres.validate()
        if check:
            violations = check_consistency(pres)
            if violations:
                raise InconsistentPresentation(
                    f"{pres.name}: " + "; ".join(str(v) for v in violations[:5])
                )
        self.pres = pres
        self.cap = cap
        self.collector = Collector(pres, tails=False)
        self.identity: NormalWord = (0,) * pres.ngens
        self._mcache: Optional[dict] = {} if pres.order <= self.MEMO_ORDER_LIMIT else None
        self._ocache: dict[NormalWord, int] = {}
        self._icache: dict[NormalWord, NormalWord] = {}
        self._order_prime_factors = sorted(set(pres.relative_orders))

    # -- basic arithmetic ---------------------------------------------------

    @property
    def order(self) -> int:
        return self.pres.order

    @property
    def ngens(self) -> int:
        return self.pres.ngens

    def generator(self, i: int) -> NormalWord:
        if not 0 <= i < self.ngens:
            raise PcError(f"generator index {i} out of range")
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def generators(self) -> list[NormalWord]:
        return [self.generator(i) for i in range(self.ngens)]

    def normalize(self, letters: Iterable[tuple[int, int]]) -> NormalWord:
        return self.collector.collect(letters)[0]

    def multiply(self, u: NormalWord, v: NormalWord) -> NormalWord:
        cache = self._mcache
        if cache is not None:
            key = (u, v)
            w = cache.get(key)
            if w is None:
                w = self.collector.collect(word_of(u) + word_of(v))[0]
                cache[key] = w
            return w
        return self.collector.collect(word_of(u) + word_of(v))[0]

    def inverse(self, u: NormalWord) -> NormalWord:
        w = self._icache.get(u)
        if w is None:
            w = self.normalize(tuple((g, -e) for g, e in reversed(word_of(u))))
            self._icache[u] = w
        return w

    def power(self, u: NormalWord, k: int) -> NormalWord:
        if k < 0:
            u = self.inverse(u)
            k = -k
        result = self.identity
        base = u
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def conjugate(self, g: NormalWord, u: NormalWord) -> NormalWord:
        """Left conjugation: g u g^{-1}."""
        return self.multiply(self.multiply(g, u), self.inverse(g))

    def commutator(self, u: NormalWord, v: NormalWord) -> NormalWord:
        """[u, v] = u v u^{-1} v^{-1}."""
        uv = self.multiply(u, v)
        vu = self.multiply(v, u)
        return self.multiply(uv, self.inverse(vu))

    def iterated_commutator(self, seq: Sequence[NormalWord]) -> NormalWord:
        """Right-normed: [x1, x2, ..., xm] = [x1, [x2, [...]]]."""
        if not seq:
            raise PcError("empty commutator")
        acc = seq[-1]
        for x in reversed(seq[:-1]):
            acc = self.commutator(x, acc)
        return acc

    def element_order(self, u: NormalWord) -> int:
        o = self._ocache.get(u)
        if o is None:
            o = self.order
            for p in self._order_prime_factors:
                while o % p == 0 and self.power(u, o // p) == self.identity:
                    o //= p
            self._ocache[u] = o
        return o

    # -- enumeration and subgroups -------------------------------------------

    def elements(self) -> list[NormalWord]:
        if self.order > self.cap:
            raise EnumerationCapExceeded(
                f"{self.pres.name}: order {self.order} exceeds cap {self.cap}"
            )
        return list(itertools.product(*[range(o) for o in self.pres.relative_orders]))

    def closure(self, gens: Iterable[NormalWord]) -> frozenset[NormalWord]:
        elems = {self.identity}
        frontier = [self.identity]
        gens = [g for g in gens if g != self.identity]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = self.multiply(x, s)
                if y not in elems:
                    if len(elems) >= self.cap:
                        raise EnumerationCapExceeded(
                            f"{self.pres.name}: subgroup closure exceeds cap {self.cap}"
                        )
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    def subgroup(
        self, gens: Iterable[NormalWord], normal_closure: bool = False
    ) -> Subgroup:
        gens = [self.normalize(word_of(g)) for g in gens]
        if normal_closure:
            ggens = self.generators()
            seed = set(gens) - {self.identity}
            frontier = list(seed)
            while frontier:
                x = frontier.pop()
                for g in ggens:
                    y = self.conjugate(g, x)
                    if y != self.identity and y not in seed:
                        seed.add(y)
                        frontier.append(y)
            gens = sorted(seed)
        return Subgroup(self, tuple(gens), self.closure(gens))

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, (), frozenset([self.identity]))

    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, tuple(self.generators()), frozenset(self.elements()))

    # -- characteristic structure ---------------------------------------------

    def lower_central_series(self) -> list[Subgroup]:
        """[γ1, γ2, ...] down to (and including) the trivial subgroup."""
        series = [self.full_subgroup()]
        gens = self.generators()
        current_gens = gens
        while series[-1].order > 1:
            new_gens = []
            for a in current_gens:
                for g in gens:
                    c = self.commutator(a, g)
                    if c != self.identity:
                        new_gens.append(c)
            nxt = self.subgroup(new_gens, normal_closure=True)
            if nxt.order == series[-1].order:
                raise PcError(f"{self.pres.name}: lower central series does not terminate")
            series.append(nxt)
            current_gens = list(nxt.generators)
        return series

    def derived_series(self) -> list[Subgroup]:
        series = [self.full_subgroup()]
        current_gens = self.generators()
        while series[-1].order > 1:
            new_gens = []
            for a in current_gens:
                for b in current_gens:
                    c = self.commutator(a, b)
                    if c != self.identity:
                        new_gens.append(c)
            nxt = self.subgroup(new_gens, normal_closure=True)
            if nxt.order == series[-1].order:
                raise PcError(f"{self.pres.name}: derived series does not terminate")
            series.append(nxt)
            current_gens = list(nxt.generators)
        return series

    def center(self) -> Subgroup:
        gens = self.generators()
        central = [
            w
            for w in self.elements()
            if all(self.multiply(w, g) == self.multiply(g, w) for g in gens)
        ]
        return Subgroup(self, tuple(central), frozenset(central))

    def power_subgroup(self, k: int) -> Subgroup:
        powers = {self.power(w, k) for w in self.elements()}
        powers.discard(self.identity)
        return self.subgroup(sorted(powers))

    def power_set(self, k: int) -> frozenset[NormalWord]:
        """The bare set {x^k : x in G} (not necessarily a subgroup)."""
        return frozenset(self.power(w, k) for w in self.elements())

    def exponent(self, modulo: Optional[Subgroup] = None) -> int:
        e = 1
        if modulo is None:
            for w in self.elements():
                e = math.lcm(e, self.element_order(w))
            return e
        for w in self.elements():
            k = self.element_order(w)
            for p in self._order_prime_factors:
                while k % p == 0 and self.power(w, k // p) in modulo:
                    k //= p
            e = math.lcm(e, k)
        return e

    def abelianization_invariants(self) -> tuple[int, ...]:
        """Invariants of G/γ₂(G), from the abelianized relation lattice."""
        from . import intlinalg

        n = self.ngens
        rows = []
        for i, w in enumerate(self.pres.power_words):
            vec = {i: self.pres.relative_orders[i]}
            for g, e in w:
                vec[g] = vec.get(g, 0) - e
            rows.append({k: v for k, v in vec.items() if v})
        for (_j, _i), w in self.pres.comm_words:
            vec = {}
            for g, e in w:
                vec[g] = vec.get(g, 0) + e
            if vec:
                rows.append(vec)
        torsion, free_rank = intlinalg.quotient_invariants(n, rows)
        if free_rank:
            raise PcError(f"{self.pres.name}: abelianization not finite")
        return torsion

    # -- classification --------------------------------------------------------

    def nilpotency_class(self) -> int:
        return len(self.lower_central_series()) - 1

    def is_regular(self, sample_budget: int = 512, seed: int = 0) -> Optional[bool]:
        """Exact for |G| <= 81 (exhaustive pairs) and for the standard criteria
        (abelian; class < p; nonabelian 2-group); otherwise a sampled pass
        returns None ("unknown")."""
        p = self.pres.prime
        if p is None:
            return None
        cls = self.nilpotency_class()
        if cls == 1:
            return True
        if cls < p:
            return True
        if p == 2:
            return False  # nonabelian 2-groups are never regular
        if self.order <= 81:
            elems = self.elements()
            for a in elems:
                for b in elems:
                    if not self._regular_pair(a, b, p):
                        return False
            return True
        import random

        rng = random.Random(seed)
        elems = self.elements()
        for _ in range(sample_budget):
            a = rng.choice(elems)
            b = rng.choice(elems)
            if not self._regular_pair(a, b, p):
                return False
        return None

    def _regular_pair(self, a: NormalWord, b: NormalWord, p: int) -> bool:
        # s := b^{-p} a^{-p} (ab)^p must lie in <x^p : x in γ₂(<a,b>)>
        s = self.multiply(
            self.multiply(self.power(b, -p), self.power(a, -p)),
            self.power(self.multiply(a, b), p),
        )
        if s == self.identity:
            return True
        key = frozenset((a, b))
        cache = getattr(self, "_reg_cache", None)
        if cache is None:
            cache = self._reg_cache = {}
        target = cache.get(key)
        if target is None:
            h_elems = self.closure([a, b])
            c = self.commutator(a, b)
            # γ₂(H) = normal closure of [a,b] in H = <a,b>
            seed = {c} - {self.identity}
            frontier = list(seed)
            while frontier:
                x = frontier.pop()
                for g in (a, b):
                    y = self.conjugate(g, x)
                    if y != self.identity and y not in seed:
                        seed.add(y)
                        frontier.append(y)
            gamma2 = self.closure(sorted(seed))
            target = self.closure(sorted({self.power(x, p) for x in gamma2}))
            cache[key] = target
        return s in target

    def classify(self, regular_sample_budget: int = 512) -> GroupFlags:
        p = self.pres.prime
        lcs = self.lower_central_series()
        cls = len(lcs) - 1
        ds = self.derived_series()
        dlen = len(ds) - 1
        expo = self.exponent()
        center = self.center()
        central_exp = self.exponent(modulo=center)
        gamma2 = lcs[1] if len(lcs) > 1 else self.trivial_subgroup()

        is_powerful = False
        condition1_m = None
        condition2 = False
        central_pn = 0
        if p is not None:
            gp = self.power_subgroup(p)
            if p == 2:
                is_powerful = gamma2.elements <= self.power_subgroup(4).elements
            else:
                is_powerful = gamma2.elements <= gp.elements
            # lcs[k] is γ_{k+1}, so γ_m = lcs[m - 1]
            for m in range(2, p):
                gamma_m = lcs[m - 1] if m - 1 < len(lcs) else self.trivial_subgroup()
                if gamma_m.elements <= gp.elements:
                    condition1_m = m
                    break
            gamma_p = lcs[p - 1] if p - 1 < len(lcs) else self.trivial_subgroup()
            condition2 = gamma_p.elements <= self.power_subgroup(p * p).elements
            n = 0
            e = central_exp
            while e > 1:
                if e % p:
                    raise PcError(f"{self.pres.name}: central quotient exponent not a p-power")
                e //= p
                n += 1
            central_pn = n

        return GroupFlags(
            nilpotency_class=cls,
            derived_length=dlen,
            exponent=expo,
            is_regular=self.is_regular(sample_budget=regular_sample_budget),
            is_powerful=is_powerful,
            condition1_m=condition1_m,
            condition2=condition2,
            central_pn=central_pn,
            is_metabelian=dlen <= 2,
        )


@lru_cache(maxsize=None)
def group_of(pres: PcPresentation, cap: int = DEFAULT_CAP) -> PcGroup:
    return PcGroup(pres, cap=cap)


# -- catalog text format -------------------------------------------------------

_TOKEN_RE = re.compile(r"^g(\d+)(?:\^(\d+))?$")


def _parse_word(tokens: str, lineno: int, ngens: int) -> Word:
    out = []
    for tok in tokens.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise CatalogSyntaxError(lineno, f"bad word token {tok!r}")
        g = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        if not 1 <= g <= ngens:
            raise CatalogSyntaxError(lineno, f"generator g{g} out of range (ngens={ngens})")
        if e < 1:
            raise CatalogSyntaxError(lineno, f"exponent must be >= 1 in {tok!r}")
        out.append((g - 1, e))
    return tuple(out)


def parse_catalog(text: str) -> list[PcPresentation]:
    """Parse the line-oriented catalog format; consistency is NOT checked here."""
    blocks: list[tuple[int, list[tuple[int, str]]]] = []
    current: Optional[list[tuple[int, str]]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[group]":
            current = []
            blocks.append((lineno, current))
            continue
        if current is None:
            raise CatalogSyntaxError(lineno, "content before first [group]")
        current.append((lineno, line))

    presentations = []
    seen_names = set()
    for start_line, lines in blocks:
        name = None
        prime = None
        ngens = None
        orders: Optional[list[int]] = None
        power_words: dict[int, tuple[int, Word]] = {}
        comm_words: dict[tuple[int, int], tuple[int, Word]] = {}
        for lineno, line in lines:
            if "=" in line and not line.startswith(("pow", "comm")):
                key, _, value = line.partition("=")
                key = key.strip()
                value = value.strip()
                if key == "name":
                    name = value
                elif key == "prime":
                    prime = int(value)
                    if not is_prime(prime):
                        raise CatalogSyntaxError(lineno, f"prime = {prime} is not prime")
                elif key == "ngens":
                    ngens = int(value)
                elif key == "orders":
                    orders = [int(t) for t in value.split()]
                    for o in orders:
                        if not is_prime(o):
                            raise CatalogSyntaxError(lineno, f"relative order {o} is not prime")
                else:
                    raise CatalogSyntaxError(lineno, f"unknown key {key!r}")
                continue
            m = re.match(r"^pow\s+(\d+)\s*:\s*(.*)$", line)
            if m:
                if ngens is None:
                    raise CatalogSyntaxError(lineno, "pow before ngens")
                i = int(m.group(1))
                if not 1 <= i <= ngens:
                    raise CatalogSyntaxError(lineno, f"pow index {i} out of range")
                word = _parse_word(m.group(2), lineno, ngens)
                for g, _e in word:
                    if g + 1 <= i:
                        raise CatalogSyntaxError(
                            lineno, f"pow {i} word references g{g + 1} (must exceed {i})"
                        )
                power_words[i - 1] = (lineno, word)
                continue
            m = re.match(r"^comm\s+(\d+)\s+(\d+)\s*:\s*(.*)$", line)
            if m:
                if ngens is None:
                    raise CatalogSyntaxError(lineno, "comm before ngens")
                j, i = int(m.group(1)), int(m.group(2))
                if not (1 <= i < j <= ngens):
                    raise CatalogSyntaxError(lineno, f"comm requires j > i, got ({j},{i})")
                word = _parse_word(m.group(3), lineno, ngens)
                for g, _e in word:
                    if g + 1 <= j:
                        raise CatalogSyntaxError(
                            lineno, f"comm {j} {i} word references g{g + 1} (must exceed {j})"
                        )
                comm_words[(j - 1, i - 1)] = (lineno, word)
                continue
            raise CatalogSyntaxError(lineno, f"unrecognized line {line!r}")

        if name is None:
            raise CatalogSyntaxError(start_line, "missing name")
        if name in seen_names:
            raise CatalogSyntaxError(start_line, f"duplicate group name {name!r}")
        seen_names.add(name)
        if ngens is None or orders is None:
            raise CatalogSyntaxError(start_line, f"{name}: missing ngens/orders")
        if len(orders) != ngens:
            raise CatalogSyntaxError(start_line, f"{name}: orders count != ngens")
        try:
            pres = make_presentation(
                name,
                orders,
                power_words={i: w for i, (_l, w) in power_words.items()},
                comm_words={pair: w for pair, (_l, w) in comm_words.items()},
                prime=prime,
            )
        except PcError as exc:
            raise CatalogSyntaxError(start_line, str(exc)) from exc
        # exponent-range validation against declared orders, with line numbers
        for i, (lineno, w) in power_words.items():
            for g, e in w:
                if e >= orders[g]:
                    raise CatalogSyntaxError(lineno, f"exponent {e} >= order of g{g + 1}")
        presentations.append(pres)
    return presentations
