import json

from covadjust.cli import run_command

from conftest import CORPUS_DIR


def corpus_path(name):
    return str(CORPUS_DIR / f"{name}.cg")


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


def test_check_passing_set(capsys):
    code, payload, _ = run(
        capsys, "check", "--graph", corpus_path("fig1a"), "-X", "X", "-Y", "Y", "-Z", "Z,A"
    )
    assert code == 0
    assert payload["format"] == 1
    assert payload["command"] == "check"
    assert payload["graph_class"] == "cpdag"
    assert payload["result"]["passed"] is True


def test_check_non_amenable_graph_witness(capsys):
    code, payload, _ = run(capsys, "check", "--graph", corpus_path("fig3a"), "-X", "X", "-Y", "Y")
    assert code == 1
    assert payload["result"]["failed_condition"] == "Cond0"
    assert payload["witness"] == ["X", "Y"]


def test_flags_override_query_block(capsys):
    # the fig4a query block says Z = V3 (passes); -Z overrides it
    code, payload, _ = run(capsys, "check", "--graph", corpus_path("fig4a"), "-Z", "V1")
    assert code == 1
    assert payload["result"]["failed_condition"] == "Cond2"


def test_empty_z_flag_means_empty_set(capsys):
    code, payload, _ = run(capsys, "check", "--graph", corpus_path("fig3c"), "-Z", "")
    assert code == 0 and payload["result"]["passed"] is True


def test_list_empty_result_is_success(capsys):
    code, payload, _ = run(capsys, "list", "--graph", corpus_path("fig4b"))
    assert code == 0
    assert payload["result"] == []


def test_list_golden_sets(capsys):
    code, payload, _ = run(capsys, "list", "--graph", corpus_path("fig1a"))
    assert code == 0
    listed = {frozenset(s) for s in payload["result"]}
    assert frozenset({"Z", "A"}) in listed and len(listed) == 6
    code, payload, _ = run(capsys, "list", "--graph", corpus_path("fig1a"), "--minimal")
    assert {frozenset(s) for s in payload["result"]} == {
        frozenset({"A", "Z"}),
        frozenset({"B", "Z"}),
    }


def test_list_rejects_z_flag(capsys):
    code = run_command(["list", "--graph", corpus_path("fig1a"), "-Z", "A"])
    capsys.readouterr()
    assert code == 2


def test_overlapping_sets_are_usage_errors(capsys):
    code, payload, err = run(
        capsys, "check", "--graph", corpus_path("fig1a"), "-X", "X", "-Y", "Y", "-Z", "X"
    )
    assert code == 2
    assert payload["error"]["type"] == "SetsNotDisjointError"
    assert err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cg"
    bad.write_text("graph dag { X -> }")
    code, payload, err = run(capsys, "validate", "--graph", str(bad))
    assert code == 2
    assert payload["error"]["type"] == "ParseError"


def test_missing_file_exit_code(capsys):
    code, payload, _ = run(capsys, "validate", "--graph", "no-such-file.cg")
    assert code == 2


def test_cap_exceeded_exit_code(capsys):
    code, payload, _ = run(
        capsys, "check", "--graph", corpus_path("fig1a"), "--max-nodes", "3"
    )
    assert code == 3
    assert payload["error"]["type"] == "SizeCapExceededError"


def test_validate_valid_and_invalid(tmp_path, capsys):
    code, payload, _ = run(capsys, "validate", "--graph", corpus_path("fig4a"))
    assert code == 0 and payload["result"]["valid"] is True

    bad = tmp_path / "cycle.cg"
    bad.write_text("graph dag { X -> Y Y -> Z Z -> X }")
    code, payload, _ = run(capsys, "validate", "--graph", str(bad))
    assert code == 1
    assert payload["result"]["valid"] is False
    assert payload["result"]["reason"] == "DirectedCycleError"


def test_amenable_exit_codes(capsys):
    code, payload, _ = run(capsys, "amenable", "--graph", corpus_path("fig3c"))
    assert code == 0 and payload["result"]["amenable"] is True
    code, payload, _ = run(capsys, "amenable", "--graph", corpus_path("fig3b"))
    assert code == 1 and payload["witness"] == ["X", "Y"]


def test_forbidden_output_sorted(capsys):
    code, payload, _ = run(capsys, "forbidden", "--graph", corpus_path("fig4a"))
    assert code == 0
    assert payload["result"]["forbidden"] == ["V4", "Y"]


def test_backdoor_command(capsys):
    code, payload, _ = run(
        capsys, "backdoor", "--graph", corpus_path("fig5a"), "-Z", "V1,V2"
    )
    assert code == 1
    code, payload, _ = run(capsys, "check", "--graph", corpus_path("fig5a"), "-Z", "V1,V2")
    assert code == 0


def test_mec_command(capsys):
    code, payload, _ = run(capsys, "mec", "--graph", corpus_path("fig1a"))
    assert code == 0
    assert payload["result"]["count"] == 8
    assert payload["result"]["member_class"] == "dag"
    assert len(payload["result"]["members"]) == 8


def test_project_command(tmp_path, capsys):
    f = tmp_path / "latent.cg"
    f.write_text("graph dag { L -> X L -> Y X -> Y }")
    code, payload, _ = run(capsys, "project", "--graph", str(f), "--observed", "X,Y")
    assert code == 0
    assert payload["result"]["nodes"] == ["X", "Y"]
    assert payload["result"]["edges"] == ["X -> Y"]


def test_verify_command(capsys):
    code, payload, _ = run(
        capsys, "verify", "--graph", corpus_path("fig5a"), "--trials", "3", "--seed", "4"
    )
    assert code == 0
    assert payload["result"]["sound"] is True
    assert payload["result"]["members"] == 2
    assert len(payload["result"]["reports"]) == 6


def test_mec_command_on_pag(capsys):
    code, payload, _ = run(capsys, "mec", "--graph", corpus_path("fig3a"))
    assert code == 0
    assert payload["result"]["member_class"] == "mag"
    assert payload["result"]["count"] == 25


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "covadjust", "check", "--graph", corpus_path("fig1a"),
         "-X", "X", "-Y", "Y", "-Z", "Z,A"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["passed"] is True


def test_output_is_deterministic_modulo_elapsed(capsys):
    outs = []
    for _ in range(2):
        _, payload, _ = run(
            capsys, "list", "--graph", corpus_path("fig4a"), "-X", "X", "-Y", "Y"
        )
        payload.pop("elapsed_ms")
        outs.append(json.dumps(payload, sort_keys=True))
    assert outs[0] == outs[1]
