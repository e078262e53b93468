import io

from holeymagic import MagicSpec, parse, verify
from holeymagic.cli import dispatch

import golden


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_two_per_column(capsys):
    code, out, err = run(capsys, "construct", "two-per-column", "--m", "5", "--k", "2")
    assert (code, err) == (0, "")
    assert out == golden.TWO_PER_COLUMN_5_2


def test_construct_stacked_matches_golden(capsys):
    code, out, _ = run(capsys, "construct", "stacked", "--m", "5", "--k", "5", "--s", "3")
    assert code == 0
    assert out == golden.STACKED_5_5_3


def test_construct_five_case_matches_golden(capsys):
    code, out, _ = run(capsys, "construct", "five-case", "--m", "3", "--s", "2")
    assert code == 0
    assert out == golden.FIVE_CASE_3_2


def test_construct_nmss_prints_blocks(capsys):
    code, out, _ = run(capsys, "construct", "nmss", "--m", "5", "--s", "3", "--t", "5")
    assert code == 0
    assert out.count("5 5\n") == 5


def test_construct_product(capsys):
    code, out, _ = run(capsys, "construct", "product",
                       "--m", "5", "--s", "3", "--a", "3", "--b", "5")
    assert code == 0
    assert verify(parse(out), MagicSpec(15, 25, 15, 9)).ok


def test_construct_block_set(capsys):
    code, out, _ = run(capsys, "construct", "block-set", "--a", "2", "--b", "4", "--c", "2")
    assert code == 0
    assert verify(parse(out), MagicSpec(4, 8, 4, 2)).ok


def test_construct_failure_exits_one(capsys):
    code, out, err = run(capsys, "construct", "two-per-column", "--m", "4", "--k", "1")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_construct_pipes_into_verify(capsys, monkeypatch):
    _, built, _ = run(capsys, "construct", "two-per-column", "--m", "5", "--k", "2")
    monkeypatch.setattr("sys.stdin", io.StringIO(built))
    code, out, _ = run(capsys, "verify", "--spec", "5", "10", "4", "2")
    assert code == 0
    assert out == "OK row=38 col=19\n"


def test_verify_trivial_grid(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1 1\n0\n"))
    code, out, _ = run(capsys, "verify", "--spec", "1", "1", "1", "1")
    assert code == 0
    assert out == "OK row=0 col=0\n"


def test_verify_from_file(capsys, tmp_path):
    path = tmp_path / "grid.mrx"
    path.write_text(golden.SQUARE_6_4)
    code, out, _ = run(capsys, "verify", str(path), "--spec", "6", "6", "4", "4")
    assert code == 0
    assert out == "OK row=46 col=46\n"


def test_verify_reports_failures(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("2 2\n0 3\n2 1\n"))
    code, out, _ = run(capsys, "verify", "--spec", "2", "2", "2", "2")
    assert code == 1
    assert out.startswith("FAIL ")
    assert "ColSum(0)" in out


def test_verify_parse_error(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("not mrx"))
    code, _, err = run(capsys, "verify", "--spec", "1", "1", "1", "1")
    assert code == 1
    assert err.startswith("error:")


def test_decide_exists(capsys):
    code, out, _ = run(capsys, "decide", "--m", "5", "--n", "10", "--r", "4", "--s", "2")
    assert (code, out) == (0, "EXISTS TwoPerColumn\n")


def test_decide_not_exists(capsys):
    code, out, _ = run(capsys, "decide", "--m", "3", "--n", "3", "--r", "2", "--s", "2")
    assert (code, out) == (1, "NOT-EXISTS TwoTwoSquare\n")


def test_decide_unknown(capsys):
    code, out, _ = run(capsys, "decide", "--m", "9", "--n", "15", "--r", "10", "--s", "6")
    assert (code, out) == (0, "UNKNOWN\n")


def test_oracle_zero_count(capsys):
    code, out, _ = run(capsys, "oracle", "--m", "3", "--n", "3", "--r", "2", "--s", "2")
    assert code == 0
    assert out == "count=0 exhausted=true\n"


def test_oracle_witness_output(capsys):
    code, out, _ = run(capsys, "oracle", "--m", "2", "--n", "4", "--r", "4", "--s", "2",
                       "--cap", "1")
    assert code == 0
    head, _, rest = out.partition("\n")
    assert head == "count=48 exhausted=true"
    assert verify(parse(rest), MagicSpec(2, 4, 4, 2)).ok


def test_oracle_budget_flag(capsys):
    code, out, _ = run(capsys, "oracle", "--m", "3", "--n", "3", "--r", "3", "--s", "3",
                       "--cap", "0", "--budget", "10")
    assert code == 0
    assert out.endswith("exhausted=false\n")


def test_kotzig_output(capsys):
    code, out, _ = run(capsys, "kotzig", "--s", "3", "--k", "9")
    assert code == 0
    assert out == "\n".join(" ".join(map(str, row)) for row in golden.KOTZIG_3_9) + "\n"


def test_kotzig_parity_error(capsys):
    code, _, err = run(capsys, "kotzig", "--s", "3", "--k", "4")
    assert code == 1
    assert err.startswith("error:")


def test_ingredient_commands(capsys):
    code, out, _ = run(capsys, "ingredient", "ms", "--m", "5", "--s", "3")
    assert (code, out) == (0, golden.SQUARE_5_3)
    code, out, _ = run(capsys, "ingredient", "mr", "--a", "3", "--b", "5")
    assert code == 0
    assert verify(parse(out), MagicSpec(3, 5, 5, 3)).ok
    code, out, _ = run(capsys, "ingredient", "mrs", "--a", "3", "--b", "3", "--c", "1")
    assert code == 0
    assert verify(parse(out), MagicSpec(3, 3, 3, 3)).ok


def test_ingredient_cache_flag(capsys, tmp_path):
    path = tmp_path / "cache.mrx"
    code, first, _ = run(capsys, "ingredient", "ms", "--m", "7", "--s", "4",
                         "--cache", str(path))
    assert code == 0
    assert path.exists()
    code, second, _ = run(capsys, "ingredient", "ms", "--m", "7", "--s", "4",
                          "--cache", str(path))
    assert code == 0
    assert first == second


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    path = tmp_path / "envcache.mrx"
    monkeypatch.setenv("HOLEY_CACHE", str(path))
    code, _, _ = run(capsys, "ingredient", "mr", "--a", "4", "--b", "6")
    assert code == 0
    assert path.exists()


def test_usage_errors_exit_two(capsys):
    assert run(capsys, )[0] == 2
    assert run(capsys, "construct")[0] == 2
    assert run(capsys, "construct", "bogus")[0] == 2
    assert run(capsys, "decide", "--m", "3")[0] == 2
    assert run(capsys, "kotzig", "--s", "0", "--k", "3")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
