"""
Tests for the command line interface
"""

import json

import pytest

from cli.orchestrator import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, CommandRunner
from main import build_parser, main
from secrecy.rate_region import batw_capacities, contains, convex_hull, gtw_region_at_power
from tools.export import read_csv_rows
from utils.models import BatwChannel, PowerPoint, RatePair, StandardGtwChannel


@pytest.fixture
def run(capsys):
    """Run the CLI and return (exit code, stdout, stderr)."""
    def invoke(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


@pytest.fixture
def gaussian_doc(tmp_path):
    def write(**fields):
        path = tmp_path / "gaussian.json"
        path.write_text(json.dumps({"gaussian": fields}))
        return str(path)
    return write


def test_standardize_identity(run, example_path):
    code, out, _ = run("standardize", example_path("identity_raw.json"))

    assert code == EXIT_OK
    ch = StandardGtwChannel(**json.loads(out)["gaussian"])
    assert (ch.pmax_1, ch.pmax_2, ch.h_1, ch.h_2) == (3.0, 4.0, 1.0, 1.0)


def test_standardize_worked_example(run, example_path):
    code, out, _ = run("standardize", example_path("worked_raw.json"))

    assert code == EXIT_OK
    ch = json.loads(out)["gaussian"]
    assert ch["pmax_1"] == pytest.approx(2.0)
    assert ch["h_2"] == pytest.approx(2.0)


def test_malformed_input_exits_2(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"gaussian\": ")

    code, out, err = run("standardize", bad)
    assert code == EXIT_INPUT
    assert out == ""
    assert "error:" in err


def test_missing_input_exits_2(run, tmp_path):
    code, _, _ = run("region", tmp_path / "absent.json")
    assert code == EXIT_INPUT


def test_invalid_channel_exits_2(run, gaussian_doc):
    code, _, err = run("region", gaussian_doc(pmax_1=1.0, pmax_2=1.0, h_1=-1.0, h_2=1.0))
    assert code == EXIT_INPUT
    assert "h_1" in err


def test_region_gaussian_closure(run, example_path):
    code, out, _ = run("region", example_path("gaussian_full_power.json"), "--grid", 64)

    assert code == EXIT_OK
    assert out.startswith("# unit=bits per channel use\n# command=region\n# input_sha256=")
    assert "# grid=64\nr1,r2\n" in out

    closure = convex_hull(read_csv_rows(out))
    ch = StandardGtwChannel(pmax_1=5.0, pmax_2=2.0, h_1=0.5, h_2=1.5)
    for v in gtw_region_at_power(ch, PowerPoint(p_1=5.0, p_2=2.0)).vertices:
        assert contains(closure, v, tol=1e-9)


def test_region_batw_square(run, example_path):
    code, out, _ = run("region", example_path("batw_useless_tap.json"))

    assert code == EXIT_OK
    assert read_csv_rows(out) == [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    assert "# grid" not in out


def test_region_zero_power_box(run, gaussian_doc):
    code, out, _ = run("region", gaussian_doc(pmax_1=0.0, pmax_2=0.0, h_1=1.0, h_2=1.0))

    assert code == EXIT_OK
    assert out.endswith("r1,r2\n0,0\n")


def test_optimize_sum_full_power(run, example_path):
    code, out, _ = run("optimize", example_path("gaussian_full_power.json"), "--mode", "sum")

    assert code == EXIT_OK
    report = json.loads(out)
    assert report["case"] == "BothMax"
    assert report["allocation"] == [5.0, 2.0]
    assert report["objective_bits"] > 0.0
    assert report["oracle_gap"] is None
    assert report["advisory"] is None
    assert report["jamming_region"] is None


def test_optimize_sum_with_oracle(run, example_path):
    code, out, _ = run("optimize", example_path("gaussian_full_power.json"), "--mode", "sum", "--oracle-grid", 401)

    assert code == EXIT_OK
    report = json.loads(out)
    assert abs(report["oracle_gap"]) <= report["oracle_gap_bound"]


def test_optimize_jam(run, example_path):
    code, out, _ = run("optimize", example_path("jam_h1_3.json"), "--mode", "jam", "--oracle-grid", 101)

    assert code == EXIT_OK
    report = json.loads(out)
    assert report["case"] == "JamBothMax"
    assert report["allocation"] == [2.0, 2.0]
    assert abs(report["oracle_gap"]) <= report["oracle_gap_bound"]
    assert report["advisory"]["recommendation"] in ("jam", "transmit")
    vertices = report["jamming_region"]["vertices"]
    assert vertices[0] == {"r_1": 0.0, "r_2": 0.0}
    assert vertices[-1] == {"r_1": pytest.approx(report["objective_bits"]), "r_2": 0.0}


def test_optimize_bare_oracle_flag_uses_config(run, example_path, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("optimizer:\n  oracle_grid: 11\n")
    out_file = tmp_path / "opt.json"

    code, _, _ = run("optimize", example_path("gaussian_full_power.json"), "--mode", "sum",
                     "--config", config, "--out", out_file, "--oracle-grid")

    assert code == EXIT_OK
    manifest = json.loads((tmp_path / "opt.json.manifest.json").read_text())
    assert manifest["parameters"]["oracle_grid"] == 11
    assert json.loads(out_file.read_text())["oracle_gap"] is not None


def test_optimize_rejects_binary_channel(run, example_path):
    code, _, err = run("optimize", example_path("batw_clean_sender.json"), "--mode", "sum")
    assert code == EXIT_INPUT
    assert "Gaussian" in err


def test_optimize_requires_mode(example_path):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["optimize", example_path("gaussian_full_power.json")])


@pytest.mark.parametrize("name", ["jam_h1_0_5.json", "jam_h1_1_5.json", "jam_h1_3.json"])
def test_jam_sweep_nondecreasing(run, example_path, name):
    code, out, _ = run("jam-sweep", example_path(name), "--points", 21)

    assert code == EXIT_OK
    assert "p2,rate_1\n" in out
    rows = read_csv_rows(out)
    assert len(rows) == 21
    assert rows[0][0] == 0.0 and rows[-1][0] == pytest.approx(2.0)
    rates = [rate for _, rate in rows]
    assert all(b >= a - 1e-12 for a, b in zip(rates, rates[1:]))


def test_jam_sweep_deaf_to_user1_is_flat(run, gaussian_doc):
    code, out, _ = run("jam-sweep", gaussian_doc(pmax_1=3.0, pmax_2=2.0, h_1=0.0, h_2=4.0), "--points", 5)

    assert code == EXIT_OK
    rates = {rate for _, rate in read_csv_rows(out)}
    assert rates == {1.0}


def test_jam_sweep_single_point(run, example_path):
    code, out, _ = run("jam-sweep", example_path("jam_h1_3.json"), "--points", 1)

    assert code == EXIT_OK
    rows = read_csv_rows(out)
    assert len(rows) == 1
    assert rows[0][0] == 0.0


def test_jam_sweep_rejects_zero_points(run, example_path):
    code, _, _ = run("jam-sweep", example_path("jam_h1_3.json"), "--points", 0)
    assert code == EXIT_INPUT


def test_verify_one_time_pad(run, example_path):
    code, out, _ = run("verify", example_path("scheme_one_time_pad.json"), "--eps-w", 0.0)

    assert code == EXIT_OK
    report = json.loads(out)
    assert report["ratio"] == pytest.approx(1.0, abs=1e-12)
    assert "decode_error" not in report


def test_verify_plaintext(run, example_path):
    code, out, _ = run("verify", example_path("scheme_plaintext.json"), "--eps-w", 0.0)

    assert code == EXIT_OK
    assert json.loads(out)["ratio"] == pytest.approx(0.0, abs=1e-12)


def test_verify_drawn_scheme_with_decode_error(run, example_path):
    code, out, _ = run("verify", example_path("scheme_n6.json"), "--eps-w", 0.1, "--eps-self", 0.05)

    assert code == EXIT_OK
    report = json.loads(out)
    for key in ("h_w", "h_w_given_z", "ratio", "i_xsum_z", "i_w_z", "per_user_ratios",
                "eavesdropper_decoding_gap", "c_w", "secret_rates", "randomization_rates",
                "rate_design_gap"):
        assert key in report
    assert report["n"] == 6
    assert 0.0 <= report["decode_error"]["p_err_1"] <= 1.0


def test_verify_seed_flag_overrides_document(run, example_path):
    path = example_path("scheme_n6.json")
    _, same_a, _ = run("verify", path, "--eps-w", 0.2)
    _, same_b, _ = run("verify", path, "--eps-w", 0.2, "--seed", 7)
    assert same_a == same_b


def test_verify_table_format(run, example_path):
    code, out, _ = run("verify", example_path("scheme_one_time_pad.json"), "--eps-w", 0.0,
                       "--eps-self", 0.0, "--format", "table")

    assert code == EXIT_OK
    lines = out.splitlines()
    assert any(line.split()[0] == "ratio" and line.split()[1] == "1" for line in lines)
    assert any(line.startswith("decode_p_err_1") for line in lines)


def test_verify_over_budget_exits_3(run, example_path):
    code, out, err = run("verify", example_path("scheme_over_budget.json"), "--eps-w", 0.1)

    assert code == EXIT_BUDGET
    assert out == ""
    assert "exceeds budget" in err


def test_verify_budget_flag_can_reject(run, example_path):
    code, _, _ = run("verify", example_path("scheme_n6.json"), "--eps-w", 0.1, "--budget", 100)
    assert code == EXIT_BUDGET


def test_verify_bad_probability_exits_2(run, example_path):
    code, _, _ = run("verify", example_path("scheme_one_time_pad.json"), "--eps-w", 0.7)
    assert code == EXIT_INPUT


def test_batw_jam_clean_sender(run, example_path):
    code, out, _ = run("batw-jam", example_path("batw_clean_sender.json"))

    assert code == EXIT_OK
    result = json.loads(out)
    assert (result["rate"], result["jamming_needed"], result["sender"]) == (1.0, False, 1)

    caps = batw_capacities(BatwChannel(eps_1=0.0, eps_2=0.3, eps_w=0.1))
    assert result["secret_sum_bound"] == pytest.approx(caps.c_1 + caps.c_2 - caps.c_w)
    # jamming beats every rate user 1 reaches in the plain region
    best_plain = max(v["r_1"] for v in result["region"]["vertices"])
    assert best_plain == pytest.approx(result["secret_sum_bound"])
    assert result["rate"] > best_plain


def test_batw_jam_noisy_users(run, example_path):
    code, out, _ = run("batw-jam", example_path("batw_noisy_users.json"))

    assert code == EXIT_OK
    result = json.loads(out)
    assert result["jamming_needed"] is True
    assert result["sender"] == 1
    assert 0.0 < result["rate"] < 0.05


def test_batw_jam_rejects_gaussian(run, example_path):
    code, _, _ = run("batw-jam", example_path("gaussian_full_power.json"))
    assert code == EXIT_INPUT


def test_design_then_verify(run, example_path, tmp_path):
    designed = tmp_path / "designed.json"
    code, out, _ = run("design", example_path("batw_useless_tap.json"), "--n", 6, "--out", designed)

    assert code == EXIT_OK
    assert out == ""
    scheme = json.loads(designed.read_text())["scheme"]
    assert (scheme["m_1"], scheme["m_2"], scheme["mx_1"], scheme["mx_2"]) == (64, 64, 1, 1)

    code, out, _ = run("verify", designed, "--eps-w", 0.5)
    assert code == EXIT_OK
    assert json.loads(out)["ratio"] == pytest.approx(1.0, abs=1e-9)


def test_out_writes_manifest_and_reruns_identically(run, example_path, tmp_path):
    source = example_path("gaussian_full_power.json")
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"

    assert run("region", source, "--grid", 16, "--out", first)[0] == EXIT_OK
    assert run("region", source, "--grid", 16, "--out", second)[0] == EXIT_OK

    assert first.read_bytes() == second.read_bytes()
    manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
    assert manifest["command"] == "region"
    assert manifest["parameters"] == {"grid": 16}
    assert manifest["tool_version"] == "0.1.0"
    assert len(manifest["input_digest"]) == 64
    assert manifest["input_digest"] in first.read_text()


def test_unwritable_output_exits_2(run, example_path, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, _ = run("batw-jam", example_path("batw_clean_sender.json"), "--out", blocker / "out.json")
    assert code == EXIT_INPUT


def test_runner_rejects_unknown_command():
    assert CommandRunner({}).run("teleport", None) == EXIT_INPUT


def test_config_grid_default(run, example_path, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("region:\n  grid: 8\n")

    code, out, _ = run("region", example_path("gaussian_full_power.json"), "--config", config)
    assert code == EXIT_OK
    assert "# grid=8\n" in out


def test_region_point_rate_pair_is_inside(run, example_path):
    _, out, _ = run("region", example_path("batw_useless_tap.json"))
    assert contains(convex_hull(read_csv_rows(out)), RatePair(r_1=0.5, r_2=0.5))


def test_batw_jam_useless_tap_region_is_square(run, example_path):
    code, out, _ = run("batw-jam", example_path("batw_useless_tap.json"))

    assert code == EXIT_OK
    result = json.loads(out)
    assert result["secret_sum_bound"] == pytest.approx(2.0)
    assert [(v["r_1"], v["r_2"]) for v in result["region"]["vertices"]] == [
        (0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0),
    ]


def test_design_with_books_is_seed_free(run, example_path, tmp_path):
    designed = tmp_path / "designed.json"
    code, _, _ = run("design", example_path("batw_clean_sender.json"), "--n", 4, "--seed", 9,
                     "--books", "--out", designed)

    assert code == EXIT_OK
    doc = json.loads(designed.read_text())
    assert len(doc["books"]["secret_1"]) == doc["scheme"]["m_1"]
    assert all(len(word) == 4 for word in doc["books"]["rand_1"])

    _, with_books, _ = run("verify", designed, "--eps-w", 0.1)
    _, reseeded, _ = run("verify", designed, "--eps-w", 0.1, "--seed", 1)
    assert with_books == reseeded


def test_verify_rejects_non_object_books(run, tmp_path):
    path = tmp_path / "scheme.json"
    path.write_text(json.dumps({"scheme": {"n": 2, "m_1": 1, "m_2": 1, "mx_1": 1, "mx_2": 1}, "books": 5}))

    code, out, err = run("verify", path, "--eps-w", 0.1)
    assert code == EXIT_INPUT
    assert out == ""
    assert "books" in err


def test_directory_input_exits_2(run, tmp_path):
    code, _, err = run("region", tmp_path)
    assert code == EXIT_INPUT
    assert "cannot read" in err


def test_missing_config_exits_2(run, example_path, tmp_path):
    code, out, err = run("region", example_path("batw_useless_tap.json"), "--config", tmp_path / "nope.yaml")
    assert code == EXIT_INPUT
    assert out == ""
    assert "cannot load config" in err


def test_out_of_memory_exits_3(run, example_path, monkeypatch):
    def exhaust(scheme, eps_w):
        raise MemoryError

    monkeypatch.setattr("cli.commands.exact_equivocation", exhaust)
    code, out, err = run("verify", example_path("scheme_n6.json"), "--eps-w", 0.1)

    assert code == EXIT_BUDGET
    assert out == ""
    assert "out of memory" in err
