import csv
import math
import random

import pytest

from labsolver.cli import (
    EXIT_FAILURE,
    EXIT_LIMIT,
    EXIT_OK,
    fit_scaling,
    main,
    toggles_label,
)
from labsolver.search import SearchConfig

ODD_SOURCE = "12112111211222B2221111111112224542"


def record_fields(line):
    return dict(pair.split("=", 1) for pair in line.split())


# ---------------------------------------------------------------------------
# eval / convert
# ---------------------------------------------------------------------------

def test_eval_template_source(capsys):
    assert main(["eval", ODD_SOURCE]) == EXIT_OK
    out = dict(
        line.split("=", 1) for line in capsys.readouterr().out.splitlines()
    )
    assert out["n"] == "67"
    assert out["energy"] == "241"
    assert abs(float(out["merit_factor"]) - 9.31) < 0.005
    assert len(out["correlations"].split(",")) == 66


def test_eval_rejects_empty(capsys):
    assert main(["eval", ""]) == EXIT_FAILURE
    assert "error" in capsys.readouterr().err


def test_eval_leading_sign(capsys):
    assert main(["eval", "21141", "--leading", "-"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "energy=" in out


def test_eval_zero_energy(capsys):
    assert main(["eval", "1"]) == EXIT_OK
    assert "merit_factor=undefined" in capsys.readouterr().out


def test_convert_rle_to_signs(capsys):
    assert main(["convert", "21141"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "++-+----+"


def test_convert_signs_to_rle(capsys):
    assert main(["convert", "++-+----+"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "21141"


def test_convert_round_trip(capsys):
    rng = random.Random(6)
    for _ in range(20):
        text = "".join(rng.choice("+-") for _ in range(rng.randint(1, 40)))
        # "--" keeps argparse from reading a leading "-" as an option.
        assert main(["convert", "--", text]) == EXIT_OK
        rle = capsys.readouterr().out.strip()
        lead = "+" if text[0] == "+" else "-"
        assert main(["convert", "--leading", lead, "--", rle]) == EXIT_OK
        assert capsys.readouterr().out.strip() == text


def test_convert_rejects_mixed_alphabet(capsys):
    assert main(["convert", "12+-"]) == EXIT_FAILURE
    assert "error" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def test_solve_record(capsys):
    assert main(["solve", "--n", "16"]) == EXIT_OK
    rec = record_fields(capsys.readouterr().out.strip())
    assert rec["n"] == "16"
    assert rec["mode"] == "general"
    assert rec["energy"] == "24"
    assert rec["proven_optimal"] == "true"
    assert abs(float(rec["merit_factor"]) - 256 / 48) < 1e-3
    assert int(rec["nodes"]) > 0


def test_solve_skew_record(capsys):
    assert main(["solve", "--n", "15", "--skew"]) == EXIT_OK
    rec = record_fields(capsys.readouterr().out.strip())
    assert rec["mode"] == "skew"
    assert rec["energy"] == "15"


def test_solve_record_reproducible(capsys):
    records = []
    for _ in range(2):
        assert main(["solve", "--n", "14", "--no-template"]) == EXIT_OK
        rec = record_fields(capsys.readouterr().out.strip())
        rec.pop("elapsed")
        records.append(rec)
    assert records[0] == records[1]


def test_solve_usage_errors():
    for argv in (
        ["solve", "--n", "0"],
        ["solve", "--n", "8", "--skew"],
        ["solve", "--n", "9", "--template", "21141"],
        ["solve", "--n", "9", "--template", "21141:+", "--no-template"],
    ):
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == 2


def test_solve_node_limit_exit_code(capsys):
    assert main(["solve", "--n", "24", "--node-limit", "2000"]) == EXIT_LIMIT
    rec = record_fields(capsys.readouterr().out.strip())
    assert rec["proven_optimal"] == "false"
    assert rec["nodes"] == "2000"


def test_solve_node_limit_below_first_leaf(capsys):
    assert main(["solve", "--n", "30", "--node-limit", "3"]) == EXIT_FAILURE
    assert "error" in capsys.readouterr().err


def test_solve_template_override(capsys):
    assert main(["solve", "--n", "9", "--template", "21141:+"]) == EXIT_OK
    rec = record_fields(capsys.readouterr().out.strip())
    assert rec["energy"] == "12"


def test_solve_toggle_flags(capsys):
    args = ["solve", "--n", "12", "--no-template", "--no-symmetry",
            "--no-cancel", "--no-reinforce", "--baseline-bound"]
    assert main(args) == EXIT_OK
    rec = record_fields(capsys.readouterr().out.strip())
    assert rec["energy"] == "10"


def test_solve_convergence_csv(tmp_path, capsys):
    path = tmp_path / "conv.csv"
    assert main(
        ["solve", "--n", "18", "--no-template", "--convergence", str(path)]
    ) == EXIT_OK
    capsys.readouterr()
    rows = list(csv.DictReader(path.open()))
    assert rows, "expected at least one incumbent"
    energies = [int(r["energy"]) for r in rows]
    assert energies == sorted(energies, reverse=True)
    assert all(r["merit_factor"] for r in rows)
    last = rows[-1]
    assert int(last["energy"]) == 25


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def test_oracle_lines(capsys):
    assert main(["oracle", "--n", "3", "--n-max", "6"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    recs = [record_fields(line) for line in lines]
    assert [r["n"] for r in recs] == ["3", "4", "5", "6"]
    assert [r["energy"] for r in recs] == ["1", "2", "2", "7"]


def test_oracle_skew(capsys):
    assert main(["oracle", "--n", "5", "--skew"]) == EXIT_OK
    rec = record_fields(capsys.readouterr().out.strip())
    assert rec["energy"] == "2"


def test_oracle_usage():
    with pytest.raises(SystemExit) as err:
        main(["oracle", "--n", "4", "--skew"])
    assert err.value.code == 2


# ---------------------------------------------------------------------------
# bench / fit
# ---------------------------------------------------------------------------

def test_bench_csv_and_ablation(tmp_path, capsys):
    path = tmp_path / "bench.csv"
    assert main(
        ["bench", "--n-min", "10", "--n-max", "16",
         "--configs", "full,baseline", "--output", str(path)]
    ) == EXIT_OK
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 14
    by_cfg = {}
    for row in rows:
        by_cfg.setdefault(row["toggles"], {})[int(row["n"])] = int(row["nodes"])
    full, base = by_cfg["TSCR/exact"], by_cfg["-/baseline"]
    wins = sum(full[n] < base[n] for n in full)
    assert wins > len(full) // 2  # improvements beat the baseline on most n


def test_bench_empty_range(capsys):
    assert main(["bench", "--n-min", "9", "--n-max", "8"]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["n,toggles,nodes,seconds"]


def test_toggles_label_round_trip():
    cfg = SearchConfig(n=5, use_symmetry=False, baseline_bound=True)
    assert toggles_label(cfg) == "TCR/baseline"
    assert toggles_label(SearchConfig(n=5)) == "TSCR/exact"


def test_fit_scaling_exact_power():
    ns = list(range(10, 20))
    base, err = fit_scaling(ns, [2.0**n for n in ns])
    assert abs(base - 2.0) < 1e-3
    assert err < 1e-3


def test_fit_scaling_noisy_recovery():
    rng = random.Random(123)
    ns = list(range(15, 36))
    nodes = [7.0 * 1.74**n * (1 + rng.uniform(-0.05, 0.05)) for n in ns]
    base, _ = fit_scaling(ns, nodes)
    assert 1.70 <= base <= 1.78


def test_fit_scaling_needs_five_points():
    with pytest.raises(ValueError):
        fit_scaling([1, 2, 3, 4], [2, 4, 8, 16])
    with pytest.raises(ValueError):
        fit_scaling([1, 2, 3, 4, 5], [2, 4, 0, 16, 32])


def test_fit_command(tmp_path, capsys):
    path = tmp_path / "rows.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "toggles", "nodes", "seconds"])
        for n in range(10, 18):
            writer.writerow([n, "TSCR/exact", int(math.exp(0.5 * n)), "0.0"])
    assert main(["fit", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "toggles=TSCR/exact" in out
    base = float(record_fields(out.strip())["base"])
    assert abs(base - math.exp(0.5)) < 0.02


def test_fit_command_too_few_rows(tmp_path, capsys):
    path = tmp_path / "rows.csv"
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "toggles", "nodes", "seconds"])
        writer.writerow([10, "TSCR/exact", 100, "0.0"])
    assert main(["fit", str(path)]) == EXIT_FAILURE
