import logging

from hypothesis import given, strategies as st

from islab.cache import ComplexityCache, Key, default_cache_dir
from islab.complexity import Budget, levin_complexity, plain_complexity
from islab.refmachine import MACHINE_VERSION

B = Budget(9, 100)


def fill(cache):
    for x in ["", "0", "1"]:
        plain_complexity(x, (), B, cache=cache)
        levin_complexity(x, (), B, cache=cache)


def test_env_var_sets_location(tmp_path, monkeypatch):
    monkeypatch.setenv("ISLAB_CACHE_DIR", str(tmp_path / "c"))
    assert default_cache_dir() == tmp_path / "c"


def test_hits_equal_recomputation(tmp_path):
    cache = ComplexityCache(tmp_path)
    fill(cache)
    fresh = ComplexityCache(tmp_path)
    for x in ["", "0", "1"]:
        assert fresh.get("plain", x, "", B) == plain_complexity(x, (), B)
        assert fresh.get("levin", x, "", B) == levin_complexity(x, (), B)
    assert fresh.stats() == {"levin": 3, "plain": 3}


def test_duplicate_puts_are_idempotent(tmp_path):
    cache = ComplexityCache(tmp_path)
    fill(cache)
    fill(ComplexityCache(tmp_path))
    assert len(cache.path.read_text().splitlines()) == 6


def test_verify_fresh_cache(tmp_path):
    cache = ComplexityCache(tmp_path)
    fill(cache)
    assert cache.verify() == []


def test_verify_reports_tampered_witness(tmp_path):
    cache = ComplexityCache(tmp_path)
    fill(cache)
    lines = cache.path.read_text().splitlines(keepends=True)
    fields = lines[0].split("\t")
    w = fields[3].strip()
    fields[3] = ("0" if w[0] == "1" else "1") + w[1:] + "\n"
    lines[0] = "\t".join(fields)
    cache.path.write_text("".join(lines))
    problems = cache.verify()
    assert len(problems) == 1 and problems[0].startswith(f"{MACHINE_VERSION}.tsv:1")


def test_corrupt_line_skipped_on_load(tmp_path, caplog):
    cache = ComplexityCache(tmp_path)
    fill(cache)
    with open(cache.path, "a") as fh:
        fh.write("zz\tnot a record\n")
    with caplog.at_level(logging.WARNING):
        assert len(ComplexityCache(tmp_path).load()) == 6
    assert "corrupt" in caplog.text
    assert any("corrupt" in p for p in cache.verify())


def test_clear_keeps_current_version(tmp_path):
    cache = ComplexityCache(tmp_path)
    fill(cache)
    old = Key("ISLAB-M0", "plain", "0", "", 9, 100)
    with open(tmp_path / "ISLAB-M0.tsv", "w") as fh:
        fh.write(f"{old.hex()}\t6\t1\t101111\n")
    assert ComplexityCache(tmp_path).stats()["plain@ISLAB-M0"] == 1
    assert cache.clear() == 1
    assert not (tmp_path / "ISLAB-M0.tsv").exists()
    assert cache.stats() == {"levin": 3, "plain": 3}


@given(st.text(alphabet="01", max_size=10), st.text(alphabet="01", max_size=10),
       st.integers(0, 30), st.integers(1, 10 ** 6), st.sampled_from(["plain", "levin"]))
def test_key_hex_round_trip(target, ctx, L, T, kind):
    k = Key(MACHINE_VERSION, kind, target, ctx, L, T)
    assert Key.from_hex(k.hex()) == k
