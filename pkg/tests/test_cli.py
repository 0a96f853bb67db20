import json
import pathlib

import pytest

from lcol3.cli import (DuplicateEdgeError, DuplicateListLineError,
                       InstanceSyntaxError, OutOfRangeError, dispatch,
                       emit_instance, emit_result, parse_instance)
from lcol3.engine import FULL_MASK, mask_of, solve
from lcol3.testkit import GenSpec, generate, oracle_solve

INSTANCES = pathlib.Path(__file__).resolve().parent.parent / "instances"


def test_parse_k2():
    g, masks = parse_instance("p lcol 2 1\ne 1 2\n")
    assert g.n == 2 and g.has_edge(0, 1)
    assert masks == [FULL_MASK, FULL_MASK]


def test_parse_list_line():
    g, masks = parse_instance("p lcol 2 1\ne 1 2\nl 1 13\n")
    assert masks[0] == mask_of([1, 3])


def test_parse_comments_and_blanks():
    g, masks = parse_instance("c a comment\n\np lcol 1 0\n")
    assert g.n == 1


def test_parse_colour_outside_range_is_syntax_error():
    with pytest.raises(InstanceSyntaxError):
        parse_instance("p lcol 2 1\ne 1 2\nl 1 4\n")


def test_parse_rejects_descending_digits():
    with pytest.raises(InstanceSyntaxError):
        parse_instance("p lcol 2 1\ne 1 2\nl 1 21\n")


def test_parse_duplicate_edge():
    with pytest.raises(DuplicateEdgeError):
        parse_instance("p lcol 2 2\ne 1 2\ne 2 1\n")


def test_parse_duplicate_list_line():
    with pytest.raises(DuplicateListLineError):
        parse_instance("p lcol 2 1\ne 1 2\nl 1 12\nl 1 13\n")


def test_parse_out_of_range_vertex():
    with pytest.raises(OutOfRangeError):
        parse_instance("p lcol 2 1\ne 1 3\n")


def test_parse_edge_count_mismatch():
    with pytest.raises(InstanceSyntaxError):
        parse_instance("p lcol 3 2\ne 1 2\n")


def test_parse_reports_line_numbers():
    try:
        parse_instance("p lcol 2 1\ne 1 2\nl 1 4\n")
    except InstanceSyntaxError as exc:
        assert exc.line == 3


def test_round_trip_generator_outputs():
    for seed in range(20):
        g, masks = generate(GenSpec("skeleton_built", seed=seed, scale=25,
                                    lists="random"))
        text = emit_instance(g, masks)
        g2, masks2 = parse_instance(text)
        assert list(g.edges()) == list(g2.edges())
        assert masks == masks2
        assert emit_instance(g2, masks2) == text


def test_emit_result_sat_text():
    out = solve(parse_instance("p lcol 2 1\ne 1 2\n")[0])
    assert emit_result(out) == "SAT\nv 1 1\nv 2 2\n"


def test_emit_result_unsat_text():
    g, masks = parse_instance("p lcol 2 1\ne 1 2\nl 1 1\nl 2 1\n")
    assert emit_result(solve(g, masks)) == "UNSAT\n"


def test_emit_result_invalid_text():
    g, _ = parse_instance((INSTANCES / "triangle.lcol").read_text())
    out = solve(g, mode="verify")
    assert emit_result(out) == "INVALID\nwitness triangle 1 2 3\n"


def test_emit_result_json_schema():
    g, masks = parse_instance((INSTANCES / "c5.lcol").read_text())
    doc = json.loads(emit_result(solve(g, masks), fmt="json",
                                 include_stats=True))
    assert doc["status"] == "SAT"
    assert doc["colouring"]["1"] in (1, 2, 3)
    assert set(doc["stats"]) == {"branches", "propagations", "sat_instances",
                                 "fallback_used", "millis"}


def test_dispatch_solve_exit_codes(capsys):
    assert dispatch(["solve", str(INSTANCES / "c5.lcol")]) == 0
    assert capsys.readouterr().out.startswith("SAT")
    assert dispatch(["solve", str(INSTANCES / "c5_unsat.lcol")]) == 0
    assert capsys.readouterr().out == "UNSAT\n"
    assert dispatch(["solve", "--mode", "verify",
                     str(INSTANCES / "triangle.lcol")]) == 2
    assert capsys.readouterr().out.startswith("INVALID")


def test_dispatch_unknown_flag():
    assert dispatch(["solve", "--frobnicate", "x"]) == 1


def test_dispatch_missing_file(capsys):
    assert dispatch(["solve", "no_such_file.lcol"]) == 1
    assert "error" in capsys.readouterr().err


def test_dispatch_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.lcol"
    bad.write_text("p lcol 2 1\ne 1 5\n")
    assert dispatch(["solve", str(bad)]) == 1


def test_check_promise_exit_codes(capsys):
    assert dispatch(["check-promise", str(INSTANCES / "c5.lcol")]) == 0
    assert capsys.readouterr().out == "OK\n"
    assert dispatch(["check-promise", str(INSTANCES / "triangle.lcol")]) == 2
    out = capsys.readouterr().out
    assert "witness triangle" in out
    assert dispatch(["check-promise", str(INSTANCES / "p8.lcol")]) == 2
    assert "witness induced_p7" in capsys.readouterr().out


def test_check_promise_explain(capsys):
    assert dispatch(["check-promise", "--explain",
                     str(INSTANCES / "skeleton_small.lcol")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["promise"] == "ok"
    assert report["components"]


def test_check_promise_explain_dot(capsys):
    assert dispatch(["check-promise", "--explain", "--dot",
                     str(INSTANCES / "c5.lcol")]) == 0
    out = capsys.readouterr().out
    assert "graph skeleton {" in out


def test_verify_subcommand(tmp_path, capsys):
    inst = INSTANCES / "c5.lcol"
    col = tmp_path / "col.txt"
    dispatch(["solve", str(inst)])
    col.write_text(capsys.readouterr().out)
    assert dispatch(["verify", str(inst), str(col)]) == 0
    assert capsys.readouterr().out == "OK\n"
    col.write_text("v 1 1\nv 2 1\nv 3 1\nv 4 2\nv 5 3\n")
    assert dispatch(["verify", str(inst), str(col)]) == 1


def test_generate_subcommand(tmp_path, capsys):
    out_file = tmp_path / "gen.lcol"
    assert dispatch(["generate", "--kind", "blownup_c5", "--seed", "5",
                     "--classes", "2,1,2,1,2", "-o", str(out_file)]) == 0
    g, masks = parse_instance(out_file.read_text())
    assert g.n == 8
    assert dispatch(["generate", "--kind", "skeleton_built", "--seed", "4",
                     "--lists", "random"]) == 0
    text = capsys.readouterr().out
    parse_instance(text)


def test_oracle_subcommand(capsys):
    assert dispatch(["oracle", str(INSTANCES / "c5_unsat.lcol")]) == 0
    assert capsys.readouterr().out == "UNSAT\n"
    assert dispatch(["oracle", str(INSTANCES / "c5.lcol")]) == 0
    assert capsys.readouterr().out.startswith("SAT")


def test_solve_oracle_agree_on_corpus():
    for path in sorted(INSTANCES.glob("*.lcol")):
        g, masks = parse_instance(path.read_text())
        out = solve(g, masks)
        if out.is_invalid:
            continue  # non-promise demo instances
        assert out.is_sat == (oracle_solve(g, masks) is not None), path.name


def test_output_byte_determinism_across_parallel(capsys):
    inst = str(INSTANCES / "skeleton_lists.lcol")
    outputs = []
    for args in (["solve", inst], ["solve", inst],
                 ["solve", "--parallel", "4", inst]):
        assert dispatch(args) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]
    outputs_json = []
    for args in (["solve", "--json", inst],
                 ["solve", "--json", "--parallel", "3", inst]):
        assert dispatch(args) == 0
        outputs_json.append(capsys.readouterr().out)
    assert outputs_json[0] == outputs_json[1]


def test_bench_smoke(capsys):
    assert dispatch(["bench", "--suite", "smoke"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4 and all("branches=" in line for line in lines)
