"""Binary relations over a finite algebra's universe.

Provides every operator the identity checker evaluates (composition,
converse, intersection, union, alternating composition, powers, transitive
closure, the saturating join ``plus``, reflexive-admissible / tolerance /
congruence closures) and the enumeration of the corresponding relation
lattices of a small algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .algebras import CapExceeded, DEFAULT_CAP, FiniteAlgebra


class BinRel:
    """n x n boolean matrix; rows[a] has bit b set iff (a, b) is related.

    Immutable by convention; hashable, so relations can key caches.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        self.n = n
        self.rows = tuple(rows)

    @staticmethod
    def from_pairs(n, pairs):
        rows = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair ({a},{b}) out of range for n={n}")
            rows[a] |= 1 << b
        return BinRel(n, rows)

    def has(self, a, b):
        return (self.rows[a] >> b) & 1 == 1

    def pairs(self):
        return [(a, b) for a in range(self.n) for b in range(self.n) if (self.rows[a] >> b) & 1]

    def flat_bits(self):
        """Row-major 0/1 tuple; the canonical sort key for relation lattices."""
        return tuple((self.rows[a] >> b) & 1 for a in range(self.n) for b in range(self.n))

    def issubset(self, other):
        _same_size(self, other)
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    def __eq__(self, other):
        return isinstance(other, BinRel) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"BinRel({self.n}, {format_rel_literal(self)!r})"


def _same_size(r: BinRel, s: BinRel):
    if r.n != s.n:
        raise ValueError(f"relation size mismatch: {r.n} vs {s.n}")


def delta(n: int) -> BinRel:
    return BinRel(n, tuple(1 << a for a in range(n)))


def nabla(n: int) -> BinRel:
    full = (1 << n) - 1
    return BinRel(n, (full,) * n)


def compose(r: BinRel, s: BinRel) -> BinRel:
    """a (r o s) c iff there is b with a r b and b s c."""
    _same_size(r, s)
    rows = []
    for m in r.rows:
        acc = 0
        while m:
            b = (m & -m).bit_length() - 1
            acc |= s.rows[b]
            m &= m - 1
        rows.append(acc)
    return BinRel(r.n, rows)


def converse(r: BinRel) -> BinRel:
    rows = [0] * r.n
    for a in range(r.n):
        m = r.rows[a]
        while m:
            b = (m & -m).bit_length() - 1
            rows[b] |= 1 << a
            m &= m - 1
    return BinRel(r.n, rows)


def intersect(r: BinRel, s: BinRel) -> BinRel:
    _same_size(r, s)
    return BinRel(r.n, tuple(a & b for a, b in zip(r.rows, s.rows)))


def union(r: BinRel, s: BinRel) -> BinRel:
    _same_size(r, s)
    return BinRel(r.n, tuple(a | b for a, b in zip(r.rows, s.rows)))


def m_compose(r: BinRel, s: BinRel, m: int) -> BinRel:
    """r o s o r o ... with m alternating factors (m-1 composition signs)."""
    _same_size(r, s)
    if m < 1:
        raise ValueError("m must be >= 1")
    out = r
    for i in range(2, m + 1):
        out = compose(out, s if i % 2 == 0 else r)
    return out


def power(r: BinRel, h: int) -> BinRel:
    """h-fold composition of r with itself."""
    return m_compose(r, r, h)


def star(r: BinRel) -> BinRel:
    """Transitive closure: least transitive relation containing r."""
    cur = r
    while True:
        nxt = union(cur, compose(cur, cur))
        if nxt == cur:
            return cur
        cur = nxt


def plus(r: BinRel, s: BinRel) -> BinRel:
    """Union over all m of r o_m s.

    The sequence of m-fold alternations is eventually periodic (the next
    alternation is a function of the current relation and the parity of m),
    so the union saturates once a (relation, parity) state repeats.
    """
    _same_size(r, s)
    acc = r
    cur = r
    m = 1
    seen = {(cur, m % 2)}
    while True:
        m += 1
        cur = compose(cur, s if m % 2 == 0 else r)
        acc = union(acc, cur)
        state = (cur, m % 2)
        if state in seen:
            return acc
        seen.add(state)


def is_reflexive(r: BinRel) -> bool:
    return all((r.rows[a] >> a) & 1 for a in range(r.n))


def is_symmetric(r: BinRel) -> bool:
    return r == converse(r)


def is_transitive(r: BinRel) -> bool:
    return compose(r, r).issubset(r)


def is_admissible(alg: FiniteAlgebra, r: BinRel) -> bool:
    """True iff r is closed under every operation applied componentwise,
    i.e. r is a subuniverse of A x A."""
    if r.n != alg.size:
        raise ValueError(f"relation size {r.n} does not match algebra size {alg.size}")
    n = alg.size
    prs = r.pairs()
    for op in alg.operations:
        if op.arity == 0:
            c = op.table[0]
            if not r.has(c, c):
                return False
            continue
        for args in product(prs, repeat=op.arity):
            i = j = 0
            for x, y in args:
                i = i * n + x
                j = j * n + y
            if not r.has(op.table[i], op.table[j]):
                return False
    return True


def is_tolerance(alg: FiniteAlgebra, r: BinRel) -> bool:
    return is_reflexive(r) and is_symmetric(r) and is_admissible(alg, r)


def is_congruence(alg: FiniteAlgebra, r: BinRel) -> bool:
    return is_tolerance(alg, r) and is_transitive(r)


def _pair_closure(alg: FiniteAlgebra, seed_pairs):
    """Close a set of pairs under the operations applied componentwise
    (the subuniverse of A x A generated by the seed)."""
    n = alg.size
    seen = set(seed_pairs)
    elems = sorted(seen)
    frontier_start = 0
    first_round = True
    while True:
        round_len = len(elems)
        new = []
        for op in alg.operations:
            ar, tab = op.arity, op.table
            if ar == 0:
                if first_round:
                    p = (tab[0], tab[0])
                    if p not in seen:
                        seen.add(p)
                        new.append(p)
                continue
            for r in range(ar):
                pools = (
                    [elems[:frontier_start]] * r
                    + [elems[frontier_start:round_len]]
                    + [elems[:round_len]] * (ar - 1 - r)
                )
                for args in product(*pools):
                    i = j = 0
                    for x, y in args:
                        i = i * n + x
                        j = j * n + y
                    p = (tab[i], tab[j])
                    if p not in seen:
                        seen.add(p)
                        new.append(p)
        first_round = False
        if not new:
            return seen
        elems.extend(new)
        frontier_start = round_len


def _cached(alg, key, build):
    cache = alg._caches
    if key not in cache:
        cache[key] = build()
    return cache[key]


def refl_adm_closure(alg: FiniteAlgebra, r: BinRel) -> BinRel:
    """Least reflexive admissible relation containing r: the subuniverse of
    A x A generated by r together with the diagonal."""
    if r.n != alg.size:
        raise ValueError(f"relation size {r.n} does not match algebra size {alg.size}")

    def build():
        seed = set(r.pairs())
        seed.update((a, a) for a in range(alg.size))
        return BinRel.from_pairs(alg.size, _pair_closure(alg, seed))

    return _cached(alg, ("cl", r), build)


def tolerance_of(alg: FiniteAlgebra, r: BinRel) -> BinRel:
    """Least tolerance containing r: the reflexive-admissible closure of
    r together with its converse."""
    return _cached(alg, ("tol", r), lambda: refl_adm_closure(alg, union(r, converse(r))))


def congruence_generated(alg: FiniteAlgebra, r: BinRel) -> BinRel:
    """Least congruence containing r; alternates admissible and transitive
    closure until stable."""

    def build():
        cur = union(r, converse(r))
        while True:
            nxt = star(refl_adm_closure(alg, cur))
            if nxt == cur:
                return cur
            cur = nxt

    return _cached(alg, ("cg", r), build)


class RelKind(Enum):
    REFL_ADM = "REFL"
    TOLERANCE = "TOL"
    CONGRUENCE = "CON"


_CLOSERS = {
    RelKind.REFL_ADM: refl_adm_closure,
    RelKind.TOLERANCE: tolerance_of,
    RelKind.CONGRUENCE: congruence_generated,
}

_PREDICATES = {
    RelKind.REFL_ADM: lambda alg, r: is_reflexive(r) and is_admissible(alg, r),
    RelKind.TOLERANCE: is_tolerance,
    RelKind.CONGRUENCE: is_congruence,
}


def close_to_kind(alg: FiniteAlgebra, kind: RelKind, r: BinRel) -> BinRel:
    return _CLOSERS[kind](alg, r)


def satisfies_kind(alg: FiniteAlgebra, kind: RelKind, r: BinRel) -> bool:
    return _PREDICATES[kind](alg, r)


@dataclass(frozen=True)
class RelLattice:
    kind: RelKind
    members: tuple  # BinRel, canonically sorted

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def enumerate_relations(alg: FiniteAlgebra, kind: RelKind, cap: int = DEFAULT_CAP) -> RelLattice:
    """All relations of the given kind on alg.

    Computes the principal members (closure of each single pair) and
    saturates under binary join; complete because every member is the join
    of the principals below it.  Members come back in canonical order
    (lexicographic on the flattened bit matrix).
    """

    def build():
        close = _CLOSERS[kind]
        n = alg.size
        members = set()
        work = []

        def add(r):
            if r not in members:
                if len(members) >= cap:
                    raise CapExceeded("lattice-size", cap, len(members) + 1)
                members.add(r)
                work.append(r)

        for a in range(n):
            for b in range(n):
                add(close(alg, BinRel.from_pairs(n, [(a, b)])))
        while work:
            x = work.pop()
            for y in list(members):
                add(close(alg, union(x, y)))
        return RelLattice(kind, tuple(sorted(members, key=BinRel.flat_bits)))

    return _cached(alg, ("lattice", kind), build)


def parse_rel_literal(text: str, n: int) -> BinRel:
    """Parse the relation literal syntax: '+'-joined terms, each "delta",
    "nabla", "empty", or a pair "a-b"."""
    out = BinRel(n, (0,) * n)
    text = text.strip()
    if not text:
        raise ValueError("empty relation literal")
    for part in text.split("+"):
        part = part.strip()
        if part == "delta":
            out = union(out, delta(n))
        elif part == "nabla":
            out = union(out, nabla(n))
        elif part == "empty":
            pass
        else:
            bits = part.split("-")
            if len(bits) != 2:
                raise ValueError(f"bad relation literal term {part!r}")
            try:
                a, b = int(bits[0]), int(bits[1])
            except ValueError:
                raise ValueError(f"bad relation literal term {part!r}") from None
            out = union(out, BinRel.from_pairs(n, [(a, b)]))
    return out


def format_rel_literal(r: BinRel) -> str:
    """Inverse of parse_rel_literal, shortest spelling first."""
    if r == nabla(r.n):
        return "nabla"
    extra = [(a, b) for a, b in r.pairs() if a != b]
    if is_reflexive(r):
        if not extra:
            return "delta"
        return "delta+" + "+".join(f"{a}-{b}" for a, b in extra)
    prs = r.pairs()
    if not prs:
        return "empty"
    return "+".join(f"{a}-{b}" for a, b in prs)
