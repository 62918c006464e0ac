import json

import pytest

from foxcalc.cli import main
from foxcalc.group_ring import parse_ring
from foxcalc.words import Alphabet, parse_word


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc


def test_dims(capsys):
    code, doc = run(capsys, "lie", "dims", "--rank", "2", "--degree", "3")
    assert code == 0 and doc == {"dim": 2}


def test_group_derive_round_trip(capsys):
    code, doc = run(
        capsys, "group", "derive", "--rank", "2", "--word", "g1 g2", "--gen", "g1"
    )
    assert code == 0
    assert parse_ring(doc["derivative"], Alphabet(2)) == parse_ring("g2", Alphabet(2))
    for t in doc["terms"]:
        parse_word(t["word"], Alphabet(2))


def test_unknown_flag_exits_2(capsys):
    assert main(["lie", "dims", "--rank", "2", "--degree", "3", "--bogus"]) == 2


def test_bad_value_exits_2(capsys):
    code, _ = run(capsys, "group", "derive", "--rank", "2", "--word", "zz", "--gen", "g1")
    assert code == 2


def test_schumann_exit_codes(capsys):
    code, doc = run(
        capsys,
        "group",
        "schumann",
        "--rank",
        "2",
        "--word",
        "g1 g2 g1^-1 g2^-1",
        "--quotient",
        "trivial",
    )
    assert code == 0 and doc["holds"]
    code, doc = run(
        capsys,
        "group",
        "schumann",
        "--rank",
        "2",
        "--word",
        "g1 g2 g1^-1 g2^-1",
        "--quotient",
        "abel",
    )
    assert code == 1 and not doc["holds"]


def test_theorem1_cli(capsys):
    code, doc = run(
        capsys,
        "group",
        "theorem1",
        "--rank",
        "2",
        "--word",
        "g1^2",
        "--keep",
        "g1",
        "--quotient",
        "index:2,2:g1=1,0;g2=0,1",
    )
    assert code == 0
    assert doc["witness"] == "g1^2" and doc["witness_member"]


def test_transversal_cli(capsys):
    code, doc = run(
        capsys,
        "group",
        "transversal",
        "--rank",
        "2",
        "--quotient",
        "index:2,2:g1=1,0;g2=0,1",
    )
    assert code == 0
    assert doc["index"] == 4 and len(doc["schreier_generators"]) == 5
    for g in doc["schreier_generators"]:
        parse_word(g["value"], Alphabet(2))


def test_conjcrit_cli(capsys):
    code, doc = run(
        capsys,
        "group",
        "conjcrit",
        "--rank",
        "3",
        "--relator",
        "g1 g3 g1^-1 g3^-1",
    )
    assert code == 0 and not doc["conjugate_found"]
    code, doc = run(
        capsys, "group", "conjcrit", "--rank", "3", "--relator", "g1 g2 g1^-1 g2^-1"
    )
    assert code == 1 and doc["conjugate_found"]


def test_lie_freiheit_cli(capsys):
    code, doc = run(
        capsys,
        "lie",
        "freiheit",
        "--rank",
        "3",
        "--relator",
        "[y1, y3]",
        "--spec",
        "3",
        "--cutoff",
        "4",
    )
    assert code == 0
    assert doc["criterion"]["satisfied"] and doc["all_equal"]


def test_lie_decompose_cli(capsys):
    code, doc = run(
        capsys,
        "lie",
        "decompose",
        "--rank",
        "2",
        "--expr",
        "y1 + [y1, y2]",
        "--keep",
        "1,2",
        "--cutoff",
        "4",
    )
    assert code == 0 and doc["holds"]
    assert doc["v0"] is not None


def test_lie_kharlampovich_cli(capsys):
    code, doc = run(
        capsys,
        "lie",
        "kharlampovich",
        "--rank",
        "3",
        "--expr",
        "[[y1, y2], [y1, y3]]",
        "--cutoff",
        "4",
    )
    assert code == 0 and doc["in_commutator_subalgebra"]
