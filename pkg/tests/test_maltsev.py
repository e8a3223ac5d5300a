import itertools

import pytest

from relmod.algebras import FiniteAlgebra, projection, term_table
from relmod.maltsev import (
    DaySystem,
    DirectedGummSystem,
    ModularityStatus,
    PreconditionError,
    SearchStatus,
    decide_modularity,
    find_day,
    find_directed_gumm,
    q_bound,
    r_bound,
    verify_day,
    verify_directed_gumm,
    witness_day,
    witness_turt,
    witness_turtt,
)
from relmod.relations import (
    BinRel,
    RelKind,
    delta,
    enumerate_relations,
    nabla,
    union,
)


def one_element_algebra():
    return FiniteAlgebra("unit", 1, [("f", 1, [0])])


def test_bounds_match_closed_forms():
    assert q_bound(1, 2) == 2
    assert r_bound(1, 2) == 3
    assert q_bound(2, 3) == 18
    assert r_bound(2, 2) == 7
    with pytest.raises(ValueError):
        q_bound(0, 2)
    with pytest.raises(ValueError):
        r_bound(1, 1)


from oracles import day_shortest as _day_shortest, dg_shortest as _dg_shortest

# --- directed Gumm search -------------------------------------------------------


def test_find_directed_gumm_z2(z2):
    res = find_directed_gumm(z2, max_k=8)
    assert res.found and res.system.k == 1
    assert verify_directed_gumm(z2, res.system)
    # p is the parity function and j_1 the third projection
    p_vec = term_table(z2, res.system.p, 3).vector
    assert p_vec == tuple((c >> 2 ^ c >> 1 ^ c) & 1 for c in range(8))
    assert term_table(z2, res.system.j[0], 3).vector == projection(2, 3, 2).vector
    assert _dg_shortest(z2) == 1


def test_find_directed_gumm_l2(l2):
    res = find_directed_gumm(l2, max_k=8)
    assert res.found and res.system.k == 2
    assert verify_directed_gumm(l2, res.system)
    # p behaves as the first projection, j_1 as the majority function
    assert term_table(l2, res.system.p, 3).vector == projection(2, 3, 0).vector
    maj = tuple(1 if bin(c).count("1") >= 2 else 0 for c in range(8))
    assert term_table(l2, res.system.j[0], 3).vector == maj
    assert term_table(l2, res.system.j[1], 3).vector == projection(2, 3, 2).vector
    assert _dg_shortest(l2) == 2


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_find_directed_gumm_semilattices_definitive_no(name, request):
    alg = request.getfixturevalue(name)
    for max_k in (1, 3, 7):
        res = find_directed_gumm(alg, max_k=max_k)
        assert res.status is SearchStatus.NOT_UP_TO
        assert res.definitive
        assert res.node_count == 3
    assert _dg_shortest(alg) is None


def test_find_directed_gumm_z2xz2_and_m3(z2xz2, m3):
    assert find_directed_gumm(z2xz2, max_k=8).system.k == 1
    assert find_directed_gumm(m3, max_k=8).system.k == 2


def test_find_directed_gumm_not_up_to_when_max_k_too_small(l2):
    res = find_directed_gumm(l2, max_k=1)
    assert res.status is SearchStatus.NOT_UP_TO
    assert not res.definitive  # a longer path exists


def test_find_directed_gumm_one_element():
    res = find_directed_gumm(one_element_algebra(), max_k=4)
    assert res.found and res.system.k == 1
    assert verify_directed_gumm(one_element_algebra(), res.system)


def test_find_directed_gumm_cap():
    from relmod import corpus

    res = find_directed_gumm(corpus.builtin("l2"), max_k=4, cap=3)
    assert res.status is SearchStatus.CAP_EXCEEDED
    assert res.cap_error is not None


def test_search_deterministic(l2, sl2):
    assert find_directed_gumm(l2, max_k=6) == find_directed_gumm(l2, max_k=6)
    assert find_directed_gumm(sl2, max_k=6) == find_directed_gumm(sl2, max_k=6)


# --- Day search ------------------------------------------------------------------


def test_find_day_z2(z2):
    res = find_day(z2, max_k=8)
    assert res.found and res.system.k == 2
    assert verify_day(z2, res.system)
    assert _day_shortest(z2) == 2


def test_find_day_l2(l2):
    res = find_day(l2, max_k=8)
    assert res.found and res.system.k == 3
    assert verify_day(l2, res.system)
    assert _day_shortest(l2) == 3


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_find_day_semilattices_definitive_no(name, request):
    alg = request.getfixturevalue(name)
    res = find_day(alg, max_k=10)
    assert res.status is SearchStatus.NOT_UP_TO
    assert res.definitive
    assert _day_shortest(alg) is None


def test_find_day_one_element():
    res = find_day(one_element_algebra(), max_k=4)
    assert res.found and res.system.k == 0
    assert verify_day(one_element_algebra(), res.system)


# --- verifiers -------------------------------------------------------------------


def test_verify_rejects_reversed_j(l2):
    sys_ = find_directed_gumm(l2, max_k=8).system
    reversed_sys = DirectedGummSystem(sys_.k, sys_.p, tuple(reversed(sys_.j)))
    assert not verify_directed_gumm(l2, reversed_sys)


def test_verify_rejects_wrong_day(l2):
    sys_ = find_day(l2, max_k=8).system
    broken = DaySystem(sys_.k, tuple(reversed(sys_.d)))
    assert not verify_day(l2, broken)


def test_verify_wrong_k(l2):
    sys_ = find_directed_gumm(l2, max_k=8).system
    assert not verify_directed_gumm(l2, DirectedGummSystem(sys_.k + 1, sys_.p, sys_.j))


# --- modularity decision ------------------------------------------------------------


def test_decide_modularity(z2, l2, sl2):
    v = decide_modularity(z2, max_k=8)
    assert v.status is ModularityStatus.MODULAR and v.k == 1 and v.definitive
    v = decide_modularity(l2, max_k=8)
    assert v.status is ModularityStatus.MODULAR and v.k == 2
    v = decide_modularity(sl2, max_k=8)
    assert v.status is ModularityStatus.NO_TERMS_UP_TO and v.definitive


def test_decide_modularity_definitive_via_node_count(sl2):
    # even at max_k=1 the no is definitive: no path exists at all
    v = decide_modularity(sl2, max_k=1)
    assert v.definitive


def test_decide_modularity_one_element():
    v = decide_modularity(one_element_algebra(), max_k=2)
    assert v.status is ModularityStatus.MODULAR and v.k == 1


def test_two_element_binary_spectrum():
    # every algebra on {0,1} with one binary operation: the minimal k is 1
    # (functionally complete or affine ops), 2 (the implication family), or
    # a definitive no (semilattices, projections, constants)
    spectrum = {}
    for bits in range(16):
        table = [(bits >> i) & 1 for i in range(4)]
        alg = FiniteAlgebra(f"b{bits}", 2, [("f", 2, table)])
        res = find_directed_gumm(alg, max_k=8)
        if res.found:
            key = res.system.k
            assert verify_directed_gumm(alg, res.system)
        else:
            assert res.definitive
            key = "no"
        spectrum[key] = spectrum.get(key, 0) + 1
    assert spectrum == {1: 4, 2: 4, "no": 8}


def test_found_k_implies_basic_identity():
    # whenever the search succeeds on a random algebra, the simplest
    # modularity identity must hold exhaustively on it
    from relmod.identities import catalog_entry, check_identity

    import random

    rng = random.Random(99)
    found = 0
    for _ in range(40):
        ops = [("f", 2, [rng.randrange(2) for _ in range(4)])]
        if rng.random() < 0.5:
            ops.append(("g", 1, [rng.randrange(2) for _ in range(2)]))
        alg = FiniteAlgebra("r", 2, ops)
        res = find_directed_gumm(alg, max_k=8)
        if res.found:
            found += 1
            assert check_identity(alg, catalog_entry("(1.1)")).holds
    assert found > 0


def test_bare_set_has_no_terms():
    # no operations at all: the only ternary term functions are projections,
    # and the variety of bare sets is as far from modular as it gets
    bare = FiniteAlgebra("set2", 2, [])
    res = find_directed_gumm(bare, max_k=5)
    assert res.status is SearchStatus.NOT_UP_TO and res.definitive
    assert res.node_count == 2  # first and third projections
    day = find_day(bare, max_k=5)
    assert day.status is SearchStatus.NOT_UP_TO and day.definitive


# --- witness chains ------------------------------------------------------------------


def test_witness_rejects_maltsev_system(z2):
    sys_ = find_directed_gumm(z2, max_k=4).system
    nb = nabla(2)
    with pytest.raises(PreconditionError, match="k >= 2"):
        witness_turt(z2, sys_, nb, nb, nb, [nb], 0, 0, [0, 0])


def test_witness_precondition_messages(l2):
    sys_ = find_directed_gumm(l2, max_k=4).system
    dl, nb = delta(2), nabla(2)
    with pytest.raises(PreconditionError, match="in R fails"):
        witness_turt(l2, sys_, dl, nb, nb, [nb], 0, 0, [0, 1])
    with pytest.raises(PreconditionError, match="in V fails"):
        witness_turt(l2, sys_, nb, dl, nb, [nb], 0, 1, [0, 0])
    with pytest.raises(PreconditionError, match="in S1 fails"):
        witness_turt(l2, sys_, nb, nb, nb, [dl], 0, 0, [0, 1])
    with pytest.raises(PreconditionError, match="not reflexive"):
        witness_turt(l2, sys_, nb, nb, BinRel.from_pairs(2, [(0, 1)]), [nb], 0, 0, [0, 0])
    with pytest.raises(PreconditionError, match="chain must start"):
        witness_turt(l2, sys_, nb, nb, nb, [nb], 0, 0, [1, 1])


def test_witness_requires_admissible_relations(m3):
    # on the two-element algebras every reflexive relation is admissible,
    # so the admissibility check needs a bigger carrier
    sys_ = find_directed_gumm(m3, max_k=4).system
    nb = nabla(5)
    bad = union(delta(5), BinRel.from_pairs(5, [(1, 2)]))  # meet with (1,1) escapes
    with pytest.raises(PreconditionError, match="not admissible"):
        witness_turt(m3, sys_, nb, nb, bad, [nb], 0, 0, [0, 0])


def test_witness_turt_degenerate_delta(l2):
    sys_ = find_directed_gumm(l2, max_k=4).system
    dl = delta(2)
    chain = witness_turt(l2, sys_, dl, dl, dl, [dl], 1, 1, [1, 1])
    assert chain.validate()
    assert set(chain.elements()) == {1}
    assert all(step.relation == dl for step in chain.steps)


def test_witness_turt_all_nabla(l2):
    sys_ = find_directed_gumm(l2, max_k=4).system
    nb = nabla(2)
    chain = witness_turt(l2, sys_, nb, nb, nb, [nb, nb], 0, 1, [0, 1, 1])
    assert chain.validate()
    assert chain.start == 0 and chain.end == 1
    assert chain.lam_blocks == 2 * sys_.k - 3


def test_witness_turtt_all_nabla(l2):
    sys_ = find_directed_gumm(l2, max_k=4).system
    nb = nabla(2)
    chain = witness_turtt(l2, sys_, nb, nb, nb, [nb, nb], 0, 1, [0, 1, 1])
    assert chain.validate()
    assert chain.lam_blocks == sys_.k - 1


def test_witness_turt_property_sweep_l1(l2):
    sys_ = find_directed_gumm(l2, max_k=4).system
    lattice = enumerate_relations(l2, RelKind.REFL_ADM).members
    count = 0
    for R, V, W, S1 in itertools.product(lattice, repeat=4):
        for a, b, a1 in itertools.product(range(2), repeat=3):
            if R.has(a, a1) and V.has(a, b) and W.has(b, a1) and S1.has(a, a1):
                chain = witness_turt(l2, sys_, R, V, W, [S1], a, b, [a, a1])
                assert chain.validate()
                count += 1
    assert count > 0


def test_witness_day_degenerate(l2):
    sys_ = find_day(l2, max_k=8).system
    chain = witness_day(l2, sys_, delta(2), delta(2), 1, 1, 1)
    assert chain.validate()
    assert len(chain.steps) <= sys_.k - 1


def test_witness_day_l2_instance(l2):
    sys_ = find_day(l2, max_k=8).system
    s = union(delta(2), BinRel.from_pairs(2, [(0, 1)]))
    chain = witness_day(l2, sys_, nabla(2), s, 0, 1, 1)
    assert chain.validate()
    labels = [step.label for step in chain.steps]
    assert labels == ["Theta & S", "Theta & conv(S)"][: len(labels)]


def test_witness_day_degenerate_one_element():
    alg = one_element_algebra()
    sys_ = find_day(alg, max_k=2).system
    chain = witness_day(alg, sys_, delta(1), delta(1), 0, 0, 0)
    assert chain.validate()
    assert chain.steps == ()


def test_search_rejects_bad_max_k(l2):
    with pytest.raises(ValueError):
        find_directed_gumm(l2, max_k=0)
    with pytest.raises(ValueError):
        find_day(l2, max_k=0)


def test_witness_day_precondition(l2):
    sys_ = find_day(l2, max_k=8).system
    with pytest.raises(PreconditionError, match="in Theta fails"):
        witness_day(l2, sys_, delta(2), nabla(2), 0, 0, 1)
    with pytest.raises(PreconditionError, match="not a tolerance"):
        asym = union(delta(2), BinRel.from_pairs(2, [(0, 1)]))
        witness_day(l2, sys_, asym, nabla(2), 0, 0, 1)


def test_witness_turt_on_m3(m3):
    sys_ = find_directed_gumm(m3, max_k=4).system
    nb = nabla(5)
    le = enumerate_relations(m3, RelKind.REFL_ADM).members[1]  # an order relation
    a, c = next((a, c) for a, c in le.pairs() if a != c)
    chain = witness_turt(m3, sys_, nb, nb, le, [le, nb], a, a, [a, c, c])
    assert chain.validate()
    assert chain.start == a and chain.end == c


def test_witness_day_on_z2xz2(z2xz2):
    sys_ = find_day(z2xz2, max_k=8).system
    nb = nabla(4)
    for a, b, c in [(0, 3, 2), (1, 1, 1), (0, 0, 3)]:
        chain = witness_day(z2xz2, sys_, nb, nb, a, b, c)
        assert chain.validate()
        assert len(chain.steps) <= sys_.k - 1


def _padded_gumm(alg, extra):
    """A valid system with a larger k: appending copies of the last term
    (the third projection) preserves all five defining identities."""
    base = find_directed_gumm(alg, max_k=4).system
    sys_ = DirectedGummSystem(base.k + extra, base.p, base.j + (base.j[-1],) * extra)
    assert verify_directed_gumm(alg, sys_)
    return sys_


def test_witness_turt_deep_blocks(l2):
    # k >= 3 exercises the middle (wrapped) and tail block constructions,
    # which are empty loops for k = 2
    lattice = enumerate_relations(l2, RelKind.REFL_ADM).members
    for extra in (1, 2):
        sys_ = _padded_gumm(l2, extra)
        count = 0
        for R, V, W, S1 in itertools.product(lattice, repeat=4):
            for a, b, a1 in itertools.product(range(2), repeat=3):
                if R.has(a, a1) and V.has(a, b) and W.has(b, a1) and S1.has(a, a1):
                    w1 = witness_turt(l2, sys_, R, V, W, [S1], a, b, [a, a1])
                    w2 = witness_turtt(l2, sys_, R, V, W, [S1], a, b, [a, a1])
                    assert w1.validate() and w1.lam_blocks == 2 * sys_.k - 3
                    assert w2.validate() and w2.lam_blocks == sys_.k - 1
                    assert len(w1.steps) == 1 + (2 * sys_.k - 3)
                    count += 1
        assert count > 0


def test_witness_day_deep_chain(l2):
    # padding a Day system with copies of the last projection stays valid
    # and drives longer alternating chains
    base = find_day(l2, max_k=8).system
    for extra in (1, 2):
        sys_ = DaySystem(base.k + extra, base.d + (base.d[-1],) * extra)
        assert verify_day(l2, sys_)
        s = union(delta(2), BinRel.from_pairs(2, [(0, 1)]))
        chain = witness_day(l2, sys_, nabla(2), s, 0, 1, 1)
        assert chain.validate()
        assert len(chain.steps) == sys_.k - 1


# --- search results against the identity checker -------------------------------------


def test_found_systems_imply_inclusion_identities(l2, m3):
    # with a k-system in hand, the replayed inclusions must check out
    # exhaustively over the algebra's own relation lattices
    from relmod.identities import catalog_entry, check_identity

    for alg in (l2, m3):
        k = find_directed_gumm(alg, max_k=8).system.k
        assert k == 2
        for label in ("(turt)", "(turtt)"):
            for ell in (1, 2):
                assert check_identity(alg, catalog_entry(label, k=k, l=ell)).holds
        for label in ("(a1)", "(a2)", "(a3)"):
            assert check_identity(alg, catalog_entry(label, k=k, h=1)).holds


def test_found_systems_imply_inclusions_sampled(m3):
    from relmod.identities import catalog_entry, check_identity

    k = find_directed_gumm(m3, max_k=8).system.k
    verdict = check_identity(m3, catalog_entry("(turt)", k=k, l=2), mode="sample", seed=2, samples=1000)
    assert verdict.holds and verdict.checked == 1000


def test_day_k_implies_day_identity(z2, l2, z2xz2):
    from relmod.identities import catalog_entry, check_identity

    for alg in (z2, l2, z2xz2):
        k = find_day(alg, max_k=8).system.k
        assert check_identity(alg, catalog_entry("(day)", k=k)).holds
