"""Built-in example algebras shared by the CLI and the test-suite.

The instances are module-level singletons so relation-lattice caches are
reused across calls.
"""

from __future__ import annotations

from .algebras import FiniteAlgebra, dump_algebra


def _meet_table(order, n):
    return [order(i, j) for i in range(n) for j in range(n)]


def _build():
    algebras = {}

    algebras["sl2"] = FiniteAlgebra(
        "sl2", 2, [("meet", 2, [0, 0, 0, 1])]
    )
    algebras["z2"] = FiniteAlgebra(
        "z2", 2, [("xor", 2, [0, 1, 1, 0])]
    )
    algebras["l2"] = FiniteAlgebra(
        "l2", 2, [("meet", 2, [0, 0, 0, 1]), ("join", 2, [0, 1, 1, 1])]
    )
    algebras["z2xz2"] = FiniteAlgebra(
        "z2xz2", 4, [("xor", 2, [i ^ j for i in range(4) for j in range(4)])]
    )
    # three-element meet-semilattice chain 0 <= 1 <= 2
    algebras["sl3"] = FiniteAlgebra(
        "sl3", 3, [("meet", 2, [min(i, j) for i in range(3) for j in range(3)])]
    )

    # M3: bottom 0, atoms 1..3, top 4
    def m3_meet(i, j):
        if i == j:
            return i
        if i == 4:
            return j
        if j == 4:
            return i
        return 0

    def m3_join(i, j):
        if i == j:
            return i
        if i == 0:
            return j
        if j == 0:
            return i
        return 4

    algebras["m3"] = FiniteAlgebra(
        "m3",
        5,
        [
            ("meet", 2, _meet_table(m3_meet, 5)),
            ("join", 2, _meet_table(m3_join, 5)),
        ],
    )
    return algebras


_BUILTIN = _build()


def builtin_names():
    return sorted(_BUILTIN)


def builtin(name: str) -> FiniteAlgebra:
    try:
        return _BUILTIN[name]
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}; have {builtin_names()}") from None


def builtin_json(name: str) -> str:
    """File-format text for a built-in algebra."""
    return dump_algebra(builtin(name))
