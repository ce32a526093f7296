import pytest

from cutbench.registry import BestKnownRegistry, load_registry, save_registry


def test_best_found_takes_max():
    reg = BestKnownRegistry()
    reg.record_best_found("a", 5)
    reg.record_best_found("a", 3)
    assert reg.best_known("a") == 5
    reg.record_best_found("a", 9)
    assert reg.best_known("a") == 9


def test_provenance_precedence():
    reg = BestKnownRegistry()
    reg.record("a", 5, "BEST_FOUND")
    reg.record("a", 4, "EXTERNAL")
    assert reg.lookup("a") == (4, "EXTERNAL")
    # lower-precedence updates never displace external values
    reg.record("a", 100, "BEST_FOUND")
    assert reg.lookup("a") == (4, "EXTERNAL")
    reg.record("a", 50, "BRUTE_FORCE")
    assert reg.lookup("a") == (4, "EXTERNAL")


def test_merge_is_entrywise_and_idempotent():
    a = BestKnownRegistry()
    a.record_best_found("x", 10)
    a.record_best_found("y", 2)
    b = BestKnownRegistry()
    b.record_best_found("x", 7)
    b.record_best_found("z", 4)
    a.merge(b)
    assert a.best_known("x") == 10
    assert a.best_known("z") == 4
    snapshot = dict(a.entries)
    a.merge(a.copy())
    assert a.entries == snapshot


def test_unknown_provenance_rejected():
    with pytest.raises(ValueError, match="provenance"):
        BestKnownRegistry().record("a", 1, "GUESS")


def test_tsv_round_trip(tmp_path):
    reg = BestKnownRegistry()
    reg.record("g1", 116, "EXTERNAL")
    reg.record("tiny", 4, "BRUTE_FORCE")
    reg.record_best_found("er-n20-s1", 31)
    path = tmp_path / "registry.tsv"
    save_registry(reg, path)
    loaded = load_registry(path)
    assert loaded.entries == reg.entries
    # file format: name <tab> value <tab> provenance, sorted by name
    lines = path.read_text().splitlines()
    assert lines[0] == "er-n20-s1\t31\tBEST_FOUND"
    assert lines[1] == "g1\t116\tEXTERNAL"


def test_tsv_malformed_line(tmp_path):
    path = tmp_path / "registry.tsv"
    path.write_text("only-two\tfields\n")
    with pytest.raises(ValueError, match=":1"):
        load_registry(path)
