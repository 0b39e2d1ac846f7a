import random
from fractions import Fraction

import pytest

from lndkit.errors import (
    BadChoiceFunction,
    BadWeights,
    InvalidData,
    UnreducedPresentation,
)
from lndkit.poly import parse_poly
from lndkit.trinomial import (
    TrinomialData,
    build_relations,
    classify_trinomial,
    column_minor,
    is_rigid,
    suspension_lnd,
    type1_lnd,
    variable_layout,
)
from lndkit import Derivation, PresentedAlgebra

A_STD = [[1, 0, 1], [0, 1, 1]]  # pairwise independent columns


def oracle_rigid(T):
    """Independent restatement of the rigidity conditions."""
    if T.m > 0:
        return False
    blocks = [T.block(i) for i in T.block_indices]
    missing = [li for li in blocks if 1 not in li]
    if T.variant == 1:
        return len(missing) > 1
    if len(missing) <= 2:
        return False
    if len(missing) == 3:
        special = sum(
            1
            for li in missing
            if 2 in li and all(e % 2 == 0 for e in li)
        )
        if special >= 2:
            return False
    return True


def rand_datum(rng):
    variant = rng.choice([1, 2])
    nblocks = rng.randint(2, 4) if variant == 1 else rng.randint(3, 5)
    l = [
        [rng.randint(1, 4) for _ in range(rng.randint(1, 2))]
        for _ in range(nblocks)
    ]
    m = rng.choice([0, 0, 0, 1, 2])
    if variant == 1:
        a = rng.sample(range(-6, 7), nblocks)
        return TrinomialData.type1(l, a, m)
    cols = rng.sample(
        [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, 3)], nblocks
    )
    A = [list(row) for row in zip(*cols)]
    return TrinomialData.type2(l, A, m)


# ---- data validation ------------------------------------------------------


def test_validate_rejects_bad_data():
    with pytest.raises(InvalidData):
        TrinomialData.type1([[1]], [0]).validate()  # r < 2
    with pytest.raises(InvalidData):
        TrinomialData.type1([[1], [2]], [3, 3]).validate()  # repeated a_i
    with pytest.raises(InvalidData):
        TrinomialData.type1([[0], [2]], [0, 1]).validate()  # exponent < 1
    with pytest.raises(InvalidData):
        TrinomialData.type1([[1], [2]], [0, 1], m=-1).validate()
    with pytest.raises(InvalidData):
        TrinomialData.type2([[2], [2], [2]], [[1, 0, 2], [0, 1, 0]]).validate()
    with pytest.raises(InvalidData):
        TrinomialData.type2([[2], [2], [2]], [[1, 2, 1], [2, 4, 1]]).validate()


def test_variable_layout_type1():
    T = TrinomialData.type1([[1, 1], [2]], [1, 0], m=1)
    assert variable_layout(T) == ["T11", "T12", "T21", "S1"]


def test_variable_layout_type2_starts_at_zero():
    T = TrinomialData.type2([[2], [2], [2]], A_STD)
    assert variable_layout(T) == ["T01", "T11", "T21"]


# ---- relation generation ---------------------------------------------------


def test_type1_golden_relation():
    T = TrinomialData.type1([[1, 1], [2]], [1, 0])
    algebra = build_relations(T)
    names = ["T11", "T12", "T21"]
    assert algebra.vars == tuple(names)
    assert algebra.relations == (
        parse_poly("T11*T12 - T21^2 + 1", names),
    )


def test_type1_chain_of_three():
    T = TrinomialData.type1([[1], [1], [2]], [0, 1, 3])
    algebra = build_relations(T)
    names = ["T11", "T21", "T31"]
    assert algebra.relations == (
        parse_poly("T11 - T21 - 1", names),
        parse_poly("T21 - T31^2 - 2", names),
    )


def test_type2_golden_relation():
    T = TrinomialData.type2([[2], [2], [2]], A_STD)
    algebra = build_relations(T)
    names = ["T01", "T11", "T21"]
    # signed 2x2 column minors of [[1,0,1],[0,1,1]]
    assert column_minor(T.A, 1, 2) == Fraction(-1)
    assert column_minor(T.A, 0, 2) == Fraction(1)
    assert column_minor(T.A, 0, 1) == Fraction(1)
    assert algebra.relations == (
        parse_poly("-T01^2 - T11^2 + T21^2", names),
    )


def test_type2_four_blocks_gives_two_relations():
    T = TrinomialData.type2(
        [[2], [2], [2], [3]], [[1, 0, 1, 1], [0, 1, 1, -1]]
    )
    assert len(build_relations(T).relations) == 2


# ---- rigidity ------------------------------------------------------------


def test_rigidity_golden_table():
    cases = [
        (TrinomialData.type1([[1, 1], [2]], [1, 0]), False, 2),
        (TrinomialData.type1([[2], [2]], [0, 1]), True, None),
        (TrinomialData.type1([[2], [2]], [0, 1], m=1), False, 1),
        (TrinomialData.type1([[2], [3], [2]], [0, 1, 2]), True, None),
        (TrinomialData.type2([[2], [2], [2]], A_STD), False, 3),
        (TrinomialData.type2([[3], [3], [3]], A_STD), True, None),
        (TrinomialData.type2([[1], [3], [3]], A_STD), False, 2),
        (TrinomialData.type2([[2, 4], [2], [3]], A_STD), False, None),
    ]
    for T, expect_rigid, cond in cases:
        verdict = is_rigid(T)
        assert verdict.rigid == expect_rigid, T
        if cond is not None:
            assert verdict.condition == cond, T


def test_rigidity_matches_oracle_random():
    rng = random.Random(73)
    for _ in range(200):
        T = rand_datum(rng)
        assert is_rigid(T).rigid == oracle_rigid(T), T


def test_appending_unit_exponent_never_creates_rigidity():
    rng = random.Random(79)
    for _ in range(100):
        T = rand_datum(rng)
        widened = tuple(tuple(li) + (1,) for li in T.l)
        T2 = TrinomialData(T.variant, T.m, widened, a=T.a, A=T.A)
        assert not is_rigid(T2).rigid


# ---- classification ------------------------------------------------------


def test_classify_golden_table():
    assert (
        classify_trinomial(TrinomialData.type1([[1, 1], [2]], [1, 0])).verdict
        == "A"
    )
    assert (
        classify_trinomial(TrinomialData.type1([[2], [2]], [0, 1])).verdict
        == "C"
    )
    assert (
        classify_trinomial(
            TrinomialData.type2([[3], [3], [3]], A_STD, m=2)
        ).verdict
        == "A"
    )
    report = classify_trinomial(TrinomialData.type2([[2], [2], [2]], A_STD))
    assert report.verdict == "B"
    assert any(
        "jacobian_rank_at_origin" in e.data for e in report.evidence
    )
    assert (
        classify_trinomial(TrinomialData.type2([[3], [3], [3]], A_STD)).verdict
        == "C"
    )


def test_classify_rejects_unreduced_type2():
    T = TrinomialData.type2([[1], [2], [2]], A_STD)
    with pytest.raises(UnreducedPresentation):
        classify_trinomial(T)


def test_classify_consistent_with_rigidity_random():
    rng = random.Random(83)
    for _ in range(100):
        T = rand_datum(rng)
        try:
            report = classify_trinomial(T)
        except UnreducedPresentation:
            continue
        assert (report.verdict == "C") == is_rigid(T).rigid


# ---- canonical variant-1 derivation ----------------------------------------


def test_type1_lnd_golden_images():
    T = TrinomialData.type1([[1, 1], [2]], [1, 0])
    D = type1_lnd(T, {1: 1, 2: 1})
    names = ["T11", "T12", "T21"]
    assert D.apply(parse_poly("T11", names)) == parse_poly("2*T21", names)
    assert D.apply(parse_poly("T21", names)) == parse_poly("T12", names)
    assert D.apply(parse_poly("T12", names)).is_zero()
    assert D.is_well_defined()[0]
    assert D.nilpotency_check(8).verified


def test_type1_lnd_alternate_choice():
    T = TrinomialData.type1([[1, 1], [2]], [1, 0])
    D = type1_lnd(T, {1: 2, 2: 1})
    names = ["T11", "T12", "T21"]
    assert D.apply(parse_poly("T12", names)) == parse_poly("2*T21", names)
    assert D.apply(parse_poly("T11", names)).is_zero()
    assert D.is_well_defined()[0]


def test_type1_lnd_rejects_bad_choices():
    T = TrinomialData.type1([[2], [2]], [0, 1])
    with pytest.raises(BadChoiceFunction):
        type1_lnd(T, {1: 1, 2: 1})  # two exceptional blocks
    T2 = TrinomialData.type1([[1, 1], [2]], [1, 0])
    with pytest.raises(BadChoiceFunction):
        type1_lnd(T2, {1: 3, 2: 1})  # out of range
    with pytest.raises(BadChoiceFunction):
        type1_lnd(T2, {1: 1})  # missing block
    with pytest.raises(InvalidData):
        type1_lnd(TrinomialData.type2([[2], [2], [2]], A_STD), {0: 1, 1: 1, 2: 1})


def test_type1_lnd_random_nonrigid():
    rng = random.Random(89)
    built = 0
    while built < 10:
        T = rand_datum(rng)
        if T.variant != 1 or T.m != 0 or is_rigid(T).rigid:
            continue
        choice = {}
        exceptional_used = False
        ok = True
        for i in T.block_indices:
            li = T.block(i)
            if 1 in li:
                choice[i] = li.index(1) + 1
            elif not exceptional_used:
                choice[i] = 1
                exceptional_used = True
            else:
                ok = False
                break
        if not ok:
            continue
        D = type1_lnd(T, choice)
        assert D.is_well_defined()[0]
        assert D.nilpotency_check(32).verified
        built += 1


# ---- suspensions -----------------------------------------------------------


def test_suspension_golden():
    Z = PresentedAlgebra(["z"])
    dz = Derivation.from_strings(Z, {"z": "1"})
    algebra, delta = suspension_lnd(Z, dz, Z.parse("z^2 - 1"), [1, 1])
    names = ["z", "y1", "y2"]
    assert algebra.vars == tuple(names)
    assert algebra.relations == (parse_poly("y1*y2 - z^2 + 1", names),)
    assert delta.apply(parse_poly("z", names)) == parse_poly("y2", names)
    assert delta.apply(parse_poly("y1", names)) == parse_poly("2*z", names)
    assert delta.apply(parse_poly("y2", names)).is_zero()
    assert delta.is_well_defined()[0]
    assert delta.nilpotency_check(8).verified


def test_suspension_three_coordinates():
    Z = PresentedAlgebra(["z"])
    dz = Derivation.from_strings(Z, {"z": "1"})
    algebra, delta = suspension_lnd(Z, dz, Z.parse("z^3 + 1"), [1, 2, 1])
    names = ["z", "y1", "y2", "y3"]
    assert algebra.relations == (
        parse_poly("y1*y2^2*y3 - z^3 - 1", names),
    )
    assert delta.apply(parse_poly("z", names)) == parse_poly("y2^2*y3", names)
    assert delta.apply(parse_poly("y1", names)) == parse_poly("3*z^2", names)
    assert delta.is_well_defined()[0]


def test_suspension_rejects_bad_weights():
    Z = PresentedAlgebra(["z"])
    dz = Derivation.from_strings(Z, {"z": "1"})
    with pytest.raises(BadWeights):
        suspension_lnd(Z, dz, Z.parse("z^2 - 1"), [2, 1])
    with pytest.raises(BadWeights):
        suspension_lnd(Z, dz, Z.parse("z^2 - 1"), [])
    with pytest.raises(BadWeights):
        suspension_lnd(Z, dz, Z.parse("z^2 - 1"), [1, 0])
