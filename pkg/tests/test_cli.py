"""Command line surface: exit codes, output frames, golden text lines."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from conftest import (
    SEIFERT_2_3_5,
    SEIFERT_2_7_15,
    TWO_BAD_EDGES,
    TWO_BAD_VERTICES,
)
from latticeroot import PlumbingGraph, from_seifert, graph_to_json
from latticeroot.cli import main

POINCARE = '{"b": 2, "arms": [[2, 1], [3, 2], [5, 4]]}'
BRIESKORN_2_7_15 = '{"b": 1, "arms": [[2, 1], [7, 3], [15, 1]]}'


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def two_bad_file(tmp_path):
    graph = PlumbingGraph(vertices=TWO_BAD_VERTICES, edges=TWO_BAD_EDGES)
    path = tmp_path / "two_bad.json"
    path.write_text(json.dumps(graph_to_json(graph)))
    return str(path)


@pytest.fixture()
def cycle_file(tmp_path):
    path = tmp_path / "cycle.json"
    path.write_text(
        '{"vertices": [{"id": 0, "weight": -2}, {"id": 1, "weight": -2},'
        ' {"id": 2, "weight": -2}], "edges": [[0, 1], [1, 2], [2, 0]]}'
    )
    return str(path)


@pytest.fixture()
def vertex_minus_four(tmp_path):
    path = tmp_path / "m4.json"
    path.write_text('{"vertices": [{"id": 0, "weight": -4}], "edges": []}')
    return str(path)


# ---------------------------------------------------------------------------
# validate


def test_validate_good_graph(capsys, tmp_path):
    path = tmp_path / "e8.json"
    path.write_text(json.dumps(graph_to_json(from_seifert(*SEIFERT_2_3_5))))
    code, out, _ = run_cli(capsys, "validate", "--input", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["is_tree"] and data["is_negative_definite"]
    assert data["vertex_count"] == 8
    assert data["signature"] == -8
    assert data["determinant"] in (-1, 1)
    assert data["bad_vertex_ids"] == [0]


def test_validate_posdef_exits_2(capsys, tmp_path):
    path = tmp_path / "pos.json"
    path.write_text('{"vertices": [{"id": 0, "weight": 1}], "edges": []}')
    code, out, _ = run_cli(capsys, "validate", "--input", str(path))
    assert code == 2
    assert json.loads(out)["is_negative_definite"] is False


def test_validate_cycle_exits_1(capsys, cycle_file):
    code, _, err = run_cli(capsys, "validate", "--input", cycle_file)
    assert code == 1
    assert "tree" in err


def test_hm_cycle_exits_1(capsys, cycle_file):
    code, _, _ = run_cli(capsys, "hm", "--input", cycle_file)
    assert code == 1


def test_unparseable_json_exits_1(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "validate", "--input", str(path))
    assert code == 1
    assert "ParseError" in err


# ---------------------------------------------------------------------------
# seifert expansion


def test_seifert_expansion_matches_library(capsys):
    code, out, _ = run_cli(capsys, "seifert", "--seifert", BRIESKORN_2_7_15)
    assert code == 0
    assert json.loads(out) == graph_to_json(from_seifert(*SEIFERT_2_7_15))


def test_seifert_text_lists_vertices_and_edges(capsys):
    code, out, _ = run_cli(
        capsys, "seifert", "--seifert", POINCARE, "--format", "text"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert sum(1 for l in lines if l.startswith("vertex ")) == 8
    assert sum(1 for l in lines if l.startswith("edge ")) == 7
    assert "vertex 0: weight -2" in lines


def test_seifert_rejects_bad_data(capsys):
    # omega >= alpha is not in normal form
    code, _, err = run_cli(capsys, "seifert", "--seifert", '{"b": 1, "arms": [[2, 3]]}')
    assert code == 1
    assert "InvalidSeifertData" in err


# ---------------------------------------------------------------------------
# spinc


def test_spinc_counts_minus_four(capsys, vertex_minus_four):
    code, out, _ = run_cli(capsys, "spinc", "--input", vertex_minus_four)
    assert code == 0
    data = json.loads(out)
    assert data["orbit_count"] == 4
    assert data["self_conjugate_count"] == 2
    assert [o["index"] for o in data["orbits"]] == [0, 1, 2, 3]
    assert data["orbits"][0]["self_conjugate"] is True
    assert data["orbits"][0]["k_square"] == "0"


def test_spinc_text_marks_self_conjugate(capsys):
    code, out, _ = run_cli(
        capsys, "spinc", "--seifert", POINCARE, "--format", "text"
    )
    assert code == 0
    assert out.strip() == (
        "orbit 0: representative [0, 0, 0, 0, 0, 0, 0, 0], "
        "k^2 = 0, sigma = -2 (self-conjugate)"
    )


# ---------------------------------------------------------------------------
# hm


def test_hm_poincare_text(capsys):
    code, out, _ = run_cli(
        capsys, "hm", "--seifert", POINCARE, "--format", "text"
    )
    assert code == 0
    assert "monopole module of minus-boundary: U(-2)" in out
    assert "sigma: -2" in out


def test_hm_brieskorn_2_7_15_text(capsys):
    code, out, _ = run_cli(
        capsys, "hm", "--seifert", BRIESKORN_2_7_15, "--format", "text"
    )
    assert code == 0
    assert (
        "monopole module of minus-boundary: "
        "U(0) + F(0, len=2) + F(2) + F(2) + F(6) + F(6)" in out
    )


def test_hm_json_frame(capsys, vertex_minus_four):
    code, out, _ = run_cli(capsys, "hm", "--input", vertex_minus_four)
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"graph", "orientation", "orbits"}
    assert data["orientation"] == "minus-boundary"
    assert [o["orbit_index"] for o in data["orbits"]] == [0, 1, 2, 3]
    for o in data["orbits"]:
        assert o["module"]["towers"], "every orbit carries an infinite tower"
    # fractional gradings are exact strings
    assert data["orbits"][0]["module"]["towers"][0]["bottom"] == "-1/4"
    assert data["orbits"][3]["module"]["towers"][0]["bottom"] == "3/4"


def test_hm_multi_orbit_text_headers(capsys, vertex_minus_four):
    code, out, _ = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--format", "text"
    )
    assert code == 0
    for idx in range(4):
        assert f"-- orbit {idx} --" in out


def test_hm_orbit_index_selection(capsys, vertex_minus_four):
    code, out, _ = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--orbit", "2"
    )
    assert code == 0
    data = json.loads(out)
    assert [o["orbit_index"] for o in data["orbits"]] == [2]


def test_hm_bad_orbit_index_exits_1(capsys, vertex_minus_four):
    code, _, err = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--orbit", "17"
    )
    assert code == 1
    assert "out of range" in err

    code, _, err = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--orbit", "nonsense"
    )
    assert code == 1


def test_hm_char_vector_explicit(capsys, vertex_minus_four):
    code, out, _ = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--char-vector", "[-4]"
    )
    assert code == 0
    data = json.loads(out)
    assert data["orbits"][0]["char_vector"] == [-4]
    assert data["orbits"][0]["representative"] == "given"


def test_hm_char_vector_wrong_length_exits_1(capsys, vertex_minus_four):
    code, _, err = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--char-vector", "[0, 0]"
    )
    assert code == 1
    assert "entries" in err


def test_hm_char_vector_not_characteristic_exits_2(capsys, vertex_minus_four):
    code, _, err = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--char-vector", "[1]"
    )
    assert code == 2
    assert "NotCharacteristic" in err


def test_hm_char_vector_garbage_exits_1(capsys, vertex_minus_four):
    code, _, _ = run_cli(
        capsys, "hm", "--input", vertex_minus_four, "--char-vector", "zero"
    )
    assert code == 1


def test_hm_budget_exhausted_exits_3(capsys):
    code, _, err = run_cli(
        capsys, "hm", "--seifert", POINCARE, "--budget", "3"
    )
    assert code == 3
    assert "budget" in err


# ---------------------------------------------------------------------------
# root


def test_root_dot_output(capsys):
    code, out, _ = run_cli(
        capsys, "root", "--seifert", POINCARE, "--format", "dot"
    )
    assert code == 0
    assert out.startswith("digraph")


def test_root_json_structure(capsys):
    code, out, _ = run_cli(capsys, "root", "--seifert", POINCARE)
    assert code == 0
    data = json.loads(out)
    root = data["orbits"][0]["root"]
    assert set(root) == {"min_level", "stable_level", "sigma", "levels", "edges"}
    assert root["min_level"] == 0


# ---------------------------------------------------------------------------
# pin2


def test_pin2_poincare_text(capsys):
    code, out, _ = run_cli(
        capsys, "pin2", "--seifert", POINCARE, "--format", "text"
    )
    assert code == 0
    assert "equivariant module of minus-boundary: V(0) + V(-1) + V(-2)" in out
    assert "alpha = -1, beta = -1, gamma = -1" in out
    assert "delta = -1, rho = -2, mubar = -1" in out
    assert "conjecture assumed: no" in out


def test_pin2_two_bad_requires_flag(capsys, two_bad_file):
    code, _, err = run_cli(capsys, "pin2", "--input", two_bad_file)
    assert code == 4
    assert "assume" in err


def test_pin2_two_bad_with_conjecture(capsys, two_bad_file):
    code, out, _ = run_cli(
        capsys,
        "pin2",
        "--input",
        two_bad_file,
        "--assume-conjecture",
        "--format",
        "text",
    )
    assert code == 0
    assert "bad vertices: 2" in out
    assert "alpha = 2, beta = 0, gamma = 0" in out
    assert "delta = 0, rho = 2, mubar = 2" in out
    assert "conjecture assumed: yes" in out


def test_pin2_non_self_conjugate_orbit_exits_2(capsys, vertex_minus_four):
    code, _, err = run_cli(
        capsys, "pin2", "--input", vertex_minus_four, "--orbit", "1"
    )
    assert code == 2
    assert "NotSelfConjugate" in err


# ---------------------------------------------------------------------------
# mubar


def test_mubar_poincare_check_passes(capsys):
    code, out, _ = run_cli(
        capsys, "mubar", "--seifert", POINCARE, "--format", "text"
    )
    assert code == 0
    assert "mubar = -1" in out
    assert "rho = -2; rho = 2*mubar check: passed" in out


def test_mubar_json_payload(capsys):
    code, out, _ = run_cli(capsys, "mubar", "--seifert", BRIESKORN_2_7_15)
    assert code == 0
    orbit = json.loads(out)["orbits"][0]
    assert orbit["mubar"] == "2"
    assert orbit["rho"] == "4"
    assert orbit["rho_equals_two_mubar"] is True
    assert orbit["signature"] == -len(orbit["char_vector"])


def test_mubar_two_bad_reports_no_check(capsys, two_bad_file):
    # the identity is only promised for at most one bad vertex; with two the
    # check line is absent rather than reported as failed
    code, out, _ = run_cli(capsys, "mubar", "--input", two_bad_file)
    assert code == 0
    orbit = json.loads(out)["orbits"][0]
    assert orbit["mubar"] == "2"
    assert "rho_equals_two_mubar" not in orbit
    assert orbit["wu_support"] == [0, 3, 4, 5, 6]
    assert orbit["w_square"] == -23


def test_mubar_non_self_conjugate_exits_2(capsys, vertex_minus_four):
    code, _, _ = run_cli(
        capsys, "mubar", "--input", vertex_minus_four, "--orbit", "2"
    )
    assert code == 2


# ---------------------------------------------------------------------------
# gysin


@pytest.fixture()
def two_bad_profiles_file(tmp_path):
    path = tmp_path / "profiles.json"
    path.write_text(
        json.dumps(
            {
                "hm": {
                    "finite": [[0, 2], [1, 1], [2, 3]],
                    "tails": [{"start": 4, "step": 2, "rank": 1}],
                },
                "a_prime": {
                    "finite": [[1, 1]],
                    "tails": [{"start": 2, "step": 2, "rank": 1}],
                },
            }
        )
    )
    return str(path)


def test_gysin_profile_mode_forces_unique_answer(capsys, two_bad_profiles_file):
    code, out, _ = run_cli(
        capsys, "gysin", "--input", two_bad_profiles_file, "--format", "text"
    )
    assert code == 0
    assert out.strip() == "I0[0] + I1[1] + I0[2] + I2[4+4n, n>=0]"


def test_gysin_profile_mode_json(capsys, two_bad_profiles_file):
    code, out, _ = run_cli(capsys, "gysin", "--input", two_bad_profiles_file)
    assert code == 0
    data = json.loads(out)
    assert data["forced"] is True
    assert data["a_second"] == {
        "finite": [],
        "tails": [
            {"start": 4, "step": 4, "rank": 1},
            {"start": 6, "step": 4, "rank": 1},
        ],
    }
    assert data["gysin"]["i1"]["finite"] == [["1", 1]]


def test_gysin_explicit_a_second(capsys, tmp_path):
    path = tmp_path / "explicit.json"
    path.write_text(
        json.dumps(
            {
                "hm": {"finite": [[0, 2]]},
                "a_prime": {"finite": []},
                "a_second": {"finite": []},
            }
        )
    )
    code, out, _ = run_cli(capsys, "gysin", "--input", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["forced"] is False
    assert data["gysin"]["i0"]["finite"] == [["0", 1]]


def test_gysin_ambiguous_exits_5(capsys, tmp_path):
    square = {"finite": [[0, 1], [1, 1], [2, 1], [3, 1]]}
    path = tmp_path / "ambiguous.json"
    path.write_text(json.dumps({"hm": square, "a_prime": square}))
    code, _, err = run_cli(capsys, "gysin", "--input", str(path))
    assert code == 5
    assert "AmbiguousForcing" in err


def test_gysin_inconsistent_exits_2(capsys, tmp_path):
    path = tmp_path / "odd.json"
    path.write_text(
        json.dumps({"hm": {"finite": [[0, 1]]}, "a_prime": {"finite": []}})
    )
    code, _, err = run_cli(capsys, "gysin", "--input", str(path))
    assert code == 2
    assert "InconsistentRanks" in err


def test_gysin_graph_mode(capsys, two_bad_file):
    code, out, _ = run_cli(
        capsys,
        "gysin",
        "--input",
        two_bad_file,
        "--assume-conjecture",
        "--format",
        "text",
    )
    assert code == 0
    # shifted gradings; the Wu representative fixes sigma = 4 here, and the
    # summand bottoms are representative-independent
    assert out.strip() == "I0[0] + I1[1] + I0[2] + I2[4+4n, n>=0]"


def test_gysin_graph_mode_requires_conjecture(capsys, two_bad_file):
    code, _, _ = run_cli(capsys, "gysin", "--input", two_bad_file)
    assert code == 4


# ---------------------------------------------------------------------------
# process-level behavior


def test_usage_error_is_argparse_exit_2():
    with pytest.raises(SystemExit) as excinfo:
        main(["hm"])  # neither --input nor --seifert
    assert excinfo.value.code == 2


def test_subprocess_runs_are_byte_identical():
    cmd = [
        sys.executable,
        "-m",
        "latticeroot",
        "pin2",
        "--seifert",
        POINCARE,
    ]
    first = subprocess.run(cmd, capture_output=True, timeout=120)
    second = subprocess.run(cmd, capture_output=True, timeout=120)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.startswith(b"{")


def test_budget_env_var_is_honored():
    env = dict(os.environ, LATTICEROOT_BUDGET="3")
    cmd = [
        sys.executable,
        "-m",
        "latticeroot",
        "hm",
        "--seifert",
        POINCARE,
    ]
    proc = subprocess.run(cmd, capture_output=True, timeout=120, env=env)
    assert proc.returncode == 3
    assert b"budget" in proc.stderr
