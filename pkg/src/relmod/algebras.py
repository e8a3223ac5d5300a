"""Finite algebras given by operation tables, term evaluation, and subpower
closure with term provenance.

Elements are the integers 0..n-1.  Argument tuples are encoded mixed-radix
with the first argument most significant, both in operation tables and in
the vectors of induced term functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

DEFAULT_CAP = 1 << 20

VAR_NAMES = ("x", "y", "z", "w")


class AlgebraError(ValueError):
    """Malformed algebra description."""


class TermError(ValueError):
    """Term does not fit the algebra (unknown symbol, arity, variable)."""


class CapExceeded(RuntimeError):
    def __init__(self, kind: str, limit: int, reached: int):
        super().__init__(f"{kind} cap exceeded: reached {reached}, limit {limit}")
        self.kind = kind
        self.limit = limit
        self.reached = reached


@dataclass(frozen=True)
class Operation:
    symbol: str
    arity: int
    table: tuple  # flat, row-major, first argument most significant


class FiniteAlgebra:
    """Universe {0..n-1} plus finitary operations given by flat tables."""

    def __init__(self, name, size, operations):
        if not isinstance(size, int) or size < 1:
            raise AlgebraError(f"size must be a positive integer, got {size!r}")
        ops = []
        seen = set()
        for entry in operations:
            op = entry if isinstance(entry, Operation) else Operation(entry[0], entry[1], tuple(entry[2]))
            if not isinstance(op.symbol, str) or not op.symbol:
                raise AlgebraError(f"bad operation symbol {op.symbol!r}")
            if op.symbol in seen:
                raise AlgebraError(f"duplicate symbol {op.symbol!r}")
            seen.add(op.symbol)
            if not isinstance(op.arity, int) or op.arity < 0:
                raise AlgebraError(f"bad arity for {op.symbol!r}: {op.arity!r}")
            want = size ** op.arity
            if len(op.table) != want:
                raise AlgebraError(
                    f"table length mismatch for {op.symbol!r}: got {len(op.table)}, want {want}"
                )
            for v in op.table:
                if not isinstance(v, int) or not 0 <= v < size:
                    raise AlgebraError(f"table entry out of range for {op.symbol!r}: {v!r}")
            ops.append(op)
        self.name = name
        self.size = size
        self.operations = tuple(ops)
        self._by_symbol = {op.symbol: op for op in ops}
        # lazily filled by the relations module (closures, lattices)
        self._caches = {}

    def operation(self, symbol: str) -> Operation:
        op = self._by_symbol.get(symbol)
        if op is None:
            raise TermError(f"unknown symbol {symbol!r}")
        return op

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, n={self.size}, ops={[o.symbol for o in self.operations]})"


def load_algebra(text: str) -> FiniteAlgebra:
    """Parse the JSON algebra file format and validate every invariant."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise AlgebraError("top level must be an object")
    for key in ("name", "size", "operations"):
        if key not in data:
            raise AlgebraError(f"missing key {key!r}")
    if not isinstance(data["operations"], list):
        raise AlgebraError("'operations' must be a list")
    ops = []
    for entry in data["operations"]:
        if not isinstance(entry, dict):
            raise AlgebraError("each operation must be an object")
        for key in ("symbol", "arity", "table"):
            if key not in entry:
                raise AlgebraError(f"operation missing key {key!r}")
        if not isinstance(entry["table"], list):
            raise AlgebraError(f"table of {entry['symbol']!r} must be a list")
        ops.append((entry["symbol"], entry["arity"], entry["table"]))
    return FiniteAlgebra(data["name"], data["size"], ops)


def dump_algebra(alg: FiniteAlgebra) -> str:
    """Canonical file-format text for an algebra (inverse of load_algebra)."""
    return json.dumps(
        {
            "name": alg.name,
            "size": alg.size,
            "operations": [
                {"symbol": op.symbol, "arity": op.arity, "table": list(op.table)}
                for op in alg.operations
            ],
        },
        indent=2,
    )


@dataclass(frozen=True)
class Variable:
    index: int


@dataclass(frozen=True)
class Apply:
    symbol: str
    children: tuple


Term = Variable | Apply


def format_term(t: Term) -> str:
    """Fully parenthesized prefix text; variables 0..3 print as x,y,z,w."""
    if isinstance(t, Variable):
        return VAR_NAMES[t.index] if t.index < len(VAR_NAMES) else f"v{t.index}"
    if not t.children:
        return t.symbol
    return t.symbol + "(" + ",".join(format_term(c) for c in t.children) + ")"


def eval_term(alg: FiniteAlgebra, t: Term, env) -> int:
    """Value of t under env, computed bottom-up from the tables."""
    if isinstance(t, Variable):
        if t.index >= len(env):
            raise TermError(f"variable index {t.index} out of range for env of length {len(env)}")
        return env[t.index]
    op = alg.operation(t.symbol)
    if len(t.children) != op.arity:
        raise TermError(
            f"arity mismatch for {t.symbol!r}: got {len(t.children)} arguments, want {op.arity}"
        )
    idx = 0
    for child in t.children:
        idx = idx * alg.size + eval_term(alg, child, env)
    return op.table[idx]


class FreeElement:
    """A g-ary term function, stored as its value vector plus a witnessing term.

    Equality and hashing are on the vector; the term records how the element
    was first derived from the generators.
    """

    __slots__ = ("vector", "term")

    def __init__(self, vector, term):
        self.vector = tuple(vector)
        self.term = term

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.vector == other.vector

    def __hash__(self):
        return hash(self.vector)

    def __repr__(self):
        return f"FreeElement({format_term(self.term)})"


def term_table(alg: FiniteAlgebra, t: Term, g: int, cap: int = DEFAULT_CAP) -> FreeElement:
    """Tabulate t over all argument tuples in mixed-radix order."""
    width = alg.size ** g
    if width > cap:
        raise CapExceeded("vector-length", cap, width)
    vec = [0] * width
    for i, env in enumerate(product(range(alg.size), repeat=g)):
        vec[i] = eval_term(alg, t, env)
    return FreeElement(vec, t)


def generate_subuniverse(alg: FiniteAlgebra, width: int, generators, cap: int = DEFAULT_CAP):
    """Least set of width-vectors containing the generators and closed under
    every operation applied coordinatewise.

    Returns the elements in deterministic breadth-first discovery order;
    each carries the first (shortest-discovered) term over the generators
    that produces it, with Variable(i) naming generator i.
    """
    n = alg.size
    elems = []
    index = {}
    for i, gen in enumerate(generators):
        vec = tuple(gen.vector)
        if len(vec) != width:
            raise ValueError(f"generator {i} has width {len(vec)}, want {width}")
        if vec not in index:
            index[vec] = len(elems)
            elems.append(FreeElement(vec, Variable(i)))

    def add(vec, term):
        if vec not in index:
            if len(elems) >= cap:
                raise CapExceeded("closure-size", cap, len(elems) + 1)
            index[vec] = len(elems)
            elems.append(FreeElement(vec, term))

    frontier_start = 0
    first_round = True
    while True:
        round_len = len(elems)
        for op in alg.operations:
            ar, tab = op.arity, op.table
            if ar == 0:
                if first_round:
                    add((tab[0],) * width, Apply(op.symbol, ()))
                continue
            # tuples over the pre-round elements with >=1 coordinate in the frontier
            for r in range(ar):
                pools = (
                    [range(frontier_start)] * r
                    + [range(frontier_start, round_len)]
                    + [range(round_len)] * (ar - 1 - r)
                )
                for arg_idx in product(*pools):
                    vecs = [elems[i].vector for i in arg_idx]
                    if ar == 2:
                        va, vb = vecs
                        out = tuple(tab[x * n + y] for x, y in zip(va, vb))
                    else:
                        out = []
                        for coord in range(width):
                            t = 0
                            for v in vecs:
                                t = t * n + v[coord]
                            out.append(tab[t])
                        out = tuple(out)
                    if out not in index:
                        add(out, Apply(op.symbol, tuple(elems[i].term for i in arg_idx)))
        first_round = False
        if len(elems) == round_len:
            return elems
        frontier_start = round_len


def projection(n: int, g: int, i: int) -> FreeElement:
    """The i-th of the g projections on an n-element universe."""
    stride = n ** (g - 1 - i)
    vec = tuple((code // stride) % n for code in range(n ** g))
    return FreeElement(vec, Variable(i))


def free_algebra(alg: FiniteAlgebra, g: int, cap: int = DEFAULT_CAP):
    """All g-ary term functions of alg: the subalgebra of A^(A^g) generated
    by the projections."""
    width = alg.size ** g
    if width > cap:
        raise CapExceeded("vector-length", cap, width)
    gens = [projection(alg.size, g, i) for i in range(g)]
    return generate_subuniverse(alg, width, gens, cap)
