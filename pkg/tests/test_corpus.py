from itertools import product

from relmod.algebras import load_algebra
from relmod.corpus import builtin, builtin_json, builtin_names


def table_fn(alg, symbol):
    op = alg.operation(symbol)
    return lambda a, b: op.table[a * alg.size + b]


def test_names():
    assert builtin_names() == ["l2", "m3", "sl2", "sl3", "z2", "z2xz2"]


def test_json_round_trip():
    for name in builtin_names():
        again = load_algebra(builtin_json(name))
        assert again.size == builtin(name).size
        assert again.operations == builtin(name).operations


def test_semilattice_laws():
    for name in ("sl2", "sl3"):
        alg = builtin(name)
        meet = table_fn(alg, "meet")
        for a, b, c in product(range(alg.size), repeat=3):
            assert meet(a, b) == meet(b, a)
            assert meet(a, meet(b, c)) == meet(meet(a, b), c)
            assert meet(a, a) == a


def test_group_laws():
    for name in ("z2", "z2xz2"):
        alg = builtin(name)
        xor = table_fn(alg, "xor")
        for a, b, c in product(range(alg.size), repeat=3):
            assert xor(a, xor(b, c)) == xor(xor(a, b), c)
            assert xor(a, b) == xor(b, a)
        for a in range(alg.size):
            assert xor(a, 0) == a
            assert xor(a, a) == 0


def test_lattice_laws():
    for name in ("l2", "m3"):
        alg = builtin(name)
        meet = table_fn(alg, "meet")
        join = table_fn(alg, "join")
        for a, b, c in product(range(alg.size), repeat=3):
            assert meet(a, b) == meet(b, a) and join(a, b) == join(b, a)
            assert meet(a, meet(b, c)) == meet(meet(a, b), c)
            assert join(a, join(b, c)) == join(join(a, b), c)
            assert meet(a, join(a, b)) == a and join(a, meet(a, b)) == a


def test_m3_is_not_distributive():
    m3 = builtin("m3")
    meet = table_fn(m3, "meet")
    join = table_fn(m3, "join")
    assert meet(1, join(2, 3)) != join(meet(1, 2), meet(1, 3))
