import json

from wittlab.tables import (
    UniversalTables,
    build_universal_tables,
    cache_path,
    check_ghost_identities,
)
from wittlab.truncation import TruncationSet, all_truncation_sets


def test_length_two_polynomials():
    t = build_universal_tables(TruncationSet([1, 2]), use_cache=False).pretty()
    assert t["add"] == {"1": "X1+Y1", "2": "X2+Y2-X1*Y1"}
    assert t["mul"]["2"] == "2*X2*Y2+X1^2*Y2+X2*Y1^2"
    assert t["neg"]["2"] == "-X2-X1^2"


def test_index_three_addition_polynomial():
    # (X1^3 + Y1^3 - (X1 + Y1)^3) / 3 + X3 + Y3
    t = build_universal_tables(TruncationSet([1, 3]), use_cache=False).pretty()
    assert t["add"]["3"] == "X3+Y3-X1^2*Y1-X1*Y1^2"


def test_tables_satisfy_ghost_equations_for_every_small_set():
    for S in all_truncation_sets(6):
        assert check_ghost_identities(build_universal_tables(S, use_cache=False)) == []


def test_cache_round_trip(_private_table_cache):
    S = TruncationSet([1, 2, 4])
    first = build_universal_tables(S)
    path = cache_path(S)
    assert path.exists() and str(path).startswith(_private_table_cache)
    again = UniversalTables.from_json(json.loads(path.read_text()))
    assert again.to_json() == first.to_json()
    assert build_universal_tables(S).to_json() == first.to_json()
