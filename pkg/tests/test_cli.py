import json

import pytest

from zpaction.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_orbits_table_row(capsys):
    code, out, _ = run_cli(["orbits", "--p", "113", "--n", "3", "--no-cache"], capsys)
    assert code == 0
    assert out.splitlines()[:2] == ["p, N", "113, 580"]


def test_composite_modulus_rejected(capsys):
    code, _, err = run_cli(["enumerate", "--p", "4", "--n", "3", "--no-cache"], capsys)
    assert code == 1
    assert "composite modulus unsupported" in err


def test_scale_cap_exit_code(capsys):
    code, _, err = run_cli(
        ["enumerate", "--p", "113", "--n", "3", "--max-candidates", "10", "--no-cache"], capsys
    )
    assert code == 2
    assert "scale cap" in err


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(["enumerate", "--n", "3", "--no-cache"], capsys)
    assert code == 1


def test_triples_predicted(capsys):
    code, out, _ = run_cli(
        [
            "triples", "--n", "5", "--p", "7",
            "--group", "(1 2 3)(4 5 6)", "--group", "(1 4)(2 6)(3 5)",
            "--mode", "predicted", "--no-cache",
        ],
        capsys,
    )
    assert code == 0
    assert out.splitlines()[1] == "7, 3"
    assert "normalizer order: 36" in out


def test_triples_requires_group(capsys):
    code, _, err = run_cli(["triples", "--n", "5", "--p", "7", "--no-cache"], capsys)
    assert code == 1
    assert "--group" in err


def test_models_text(capsys):
    code, out, _ = run_cli(
        ["models", "--p", "5", "--n", "3", "--name", "K(0,4)", "--no-cache"], capsys
    )
    assert code == 0
    assert out == "y1^5 = x*(x - 1)^4 ; y2^5 = (x - λ)^4\n"


def test_models_by_key_digits(capsys):
    code, out, _ = run_cli(
        ["models", "--p", "5", "--n", "3", "--key", "1,0,0;0,1,4", "--no-cache"], capsys
    )
    assert code == 0
    assert "y1^5 = x*(x - 1)^4" in out


def test_models_selection_is_exclusive(capsys):
    code, _, err = run_cli(
        ["models", "--p", "5", "--n", "3", "--name", "K(0,4)", "--key", "1,0,0;0,1,4",
         "--no-cache"],
        capsys,
    )
    assert code == 1
    assert "exactly one" in err


def test_jacobian_text(capsys):
    code, out, _ = run_cli(
        ["jacobian", "--p", "3", "--n", "3", "--name", "K(0,2)", "--no-cache"], capsys
    )
    assert code == 0
    assert out.splitlines()[0] == "genus 4"
    assert out.splitlines()[-1] == "genus sum 4, fixed sum 12"


def test_table_csv(capsys):
    code, out, _ = run_cli(
        ["table", "--which", "k4-triples", "--format", "csv", "--no-cache"], capsys
    )
    assert code == 0
    assert out.splitlines()[0] == "p,N"
    assert "2,3" in out.splitlines() and "13,17" in out.splitlines()


def test_json_round_trip(capsys):
    args = ["orbits", "--p", "5", "--n", "3", "--format", "json", "--no-cache"]
    code, out, _ = run_cli(args, capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 4
    assert json.dumps(doc, indent=2, ensure_ascii=False) + "\n" == out
    sizes = sorted(o["size"] for o in doc["orbits"])
    assert sum(sizes) == 27


def test_determinism(capsys):
    args = ["invariants", "--p", "5", "--n", "3", "--group", "(3 4)", "--format", "json",
            "--no-cache"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2
    assert json.loads(out1)["count"] == 5


def test_cache_hit_identical(tmp_path, capsys):
    args = [
        "orbits", "--p", "7", "--n", "3", "--format", "json",
        "--cache-dir", str(tmp_path),
    ]
    code1, cold, _ = run_cli(args, capsys)
    assert code1 == 0
    cache_files = list(tmp_path.glob("*.json"))
    assert len(cache_files) == 1
    code2, warm, _ = run_cli(args, capsys)
    assert code2 == 0
    assert cold == warm


def test_cache_distinguishes_group_spec(tmp_path, capsys):
    base = ["invariants", "--p", "5", "--n", "3", "--cache-dir", str(tmp_path)]
    run_cli(base + ["--group", "(3 4)"], capsys)
    run_cli(base + ["--group", "(1 2)(3 4)"], capsys)
    assert len(list(tmp_path.glob("*.json"))) == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = run_cli(
        ["models", "--p", "5", "--n", "3", "--name", "K(0,1)", "--output", str(target),
         "--no-cache"],
        capsys,
    )
    assert code == 0 and out == ""
    assert target.read_text() == "y1^5 = x*(x - 1)*(x - λ)^3 ; y2^5 = (x - λ)^4\n"


def test_enumerate_csv(capsys):
    code, out, _ = run_cli(
        ["enumerate", "--p", "3", "--n", "3", "--format", "csv", "--no-cache"], capsys
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "key" and len(lines) == 10  # header + 9 keys


def test_labels_preset(capsys):
    code, out, _ = run_cli(
        ["models", "--p", "2", "--n", "5", "--name", "Kbar1", "--family", "k4",
         "--labels", "k4", "--no-cache"],
        capsys,
    )
    assert code == 0
    assert "(x - -1)" in out or "(x - λ)" in out
