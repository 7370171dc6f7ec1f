"""Command-line interface: output shapes, exit codes, and determinism."""

import json
from fractions import Fraction

import pytest

from sternsums.cli import (
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    decode_rational,
    encode_rational,
    main,
    parse_fspec,
)
from sternsums.forms import HomogPoly


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- rational string round trip ----------------------------------------------


def test_rational_encoding_round_trips():
    cases = [0, 1, -7, 3 * 7**20, Fraction(1, 3), Fraction(-22, 7), Fraction(4, 2)]
    for x in cases:
        s = encode_rational(x)
        assert decode_rational(s) == x
        assert "/1" not in s
    assert encode_rational(Fraction(4, 2)) == "2"
    assert encode_rational(Fraction(-1, 3)) == "-1/3"


# -- f-spec grammar -----------------------------------------------------------


def test_parse_fspec_monomials():
    assert parse_fspec("x^3") == HomogPoly.monomial(3, 3)
    assert parse_fspec("x^2y") == HomogPoly.monomial(2, 3)
    assert parse_fspec("x^2*y") == HomogPoly.monomial(2, 3)
    assert parse_fspec("y^2") == HomogPoly.monomial(0, 2)
    assert parse_fspec("y^0x^1") == HomogPoly.monomial(1, 1)
    assert parse_fspec("x") == HomogPoly.monomial(1, 1)
    assert parse_fspec("xy") == HomogPoly.monomial(1, 2)


def test_parse_fspec_coefficient_lists():
    assert parse_fspec("coeffs=[1,2,3]") == HomogPoly([1, 2, 3])
    assert parse_fspec("coeffs=[1/2, -3]") == HomogPoly([Fraction(1, 2), -3])


def test_parse_fspec_rejects_garbage():
    for bad in ("z^2", "x^", "coeffs=[]", "coeffs=1,2", ""):
        with pytest.raises(ValueError):
            parse_fspec(bad)


# -- row ----------------------------------------------------------------------


def test_row_text(capsys):
    code, out, _ = run(capsys, "row", "4")
    assert code == EXIT_OK
    assert out.strip() == "1 1 2 1 3 2 3 1 3 2 3 1 2 1 1"
    code, out, _ = run(capsys, "row", "1")
    assert out.strip() == "1"


def test_row_csv_and_json(capsys):
    code, out, _ = run(capsys, "row", "3", "--format", "csv")
    assert code == EXIT_OK and out.strip() == "1,1,2,1,2,1,1"
    code, out, _ = run(capsys, "row", "3", "--json")
    doc = json.loads(out)
    assert doc["schema_version"] == "1"
    assert doc["command"] == "row"
    assert doc["parameters"] == {"n": "3", "cap": "24"}
    assert doc["results"]["entries"] == ["1", "1", "2", "1", "2", "1", "1"]


def test_row_exit_codes(capsys):
    code, _, err = run(capsys, "row", "0")
    assert code == EXIT_USAGE
    assert "1 <= n <= 24" in err
    code, _, _ = run(capsys, "row", "99")
    assert code == EXIT_RESOURCE


# -- sums ----------------------------------------------------------------------


def test_sums_both_agree(capsys):
    code, out, _ = run(capsys, "sums", "x^3", "4", "--both")
    assert code == EXIT_OK
    assert out.strip() == "1 3 21 147 (paths agree)"


def test_sums_default_fast(capsys):
    code, out, _ = run(capsys, "sums", "x^2y", "4")
    assert code == EXIT_OK and out.strip() == "0 2 14 98"
    code, out, _ = run(capsys, "sums", "y^0x^1", "3")
    assert out.strip() == "1 3 9"


def test_sums_direct_respects_cap(capsys):
    code, _, err = run(capsys, "sums", "x^2", "7", "--both", "--cap", "6")
    assert code == EXIT_RESOURCE
    code, _, _ = run(capsys, "sums", "x^2", "7", "--fast", "--cap", "6")
    assert code == EXIT_OK


def test_sums_json_and_csv(capsys):
    code, out, _ = run(capsys, "sums", "x^3", "3", "--json", "--both")
    doc = json.loads(out)
    assert doc["results"]["values"] == ["1", "3", "21"]
    assert doc["results"]["paths_agree"] is True
    code, out, _ = run(capsys, "sums", "x^3", "3", "--format", "csv")
    assert out.splitlines() == ["n,value", "1,1", "2,3", "3,21"]


def test_sums_bad_fspec(capsys):
    code, _, err = run(capsys, "sums", "q^3", "4")
    assert code == EXIT_USAGE


# -- phi -----------------------------------------------------------------------


def test_phi_text(capsys):
    code, out, _ = run(capsys, "phi", "3")
    assert code == EXIT_OK
    assert out.splitlines() == ["2 1 1 1", "3 2 2 3", "3 2 2 3", "1 1 1 2"]
    code, out, _ = run(capsys, "phi", "3", "--sym")
    assert out.splitlines() == ["3 2", "6 4"]
    code, out, _ = run(capsys, "phi", "0")
    assert out.strip() == "2"


def test_phi_json(capsys):
    code, out, _ = run(capsys, "phi", "2", "--json")
    doc = json.loads(out)
    assert doc["results"]["matrix"] == [
        ["2", "1", "1"],
        ["2", "2", "2"],
        ["1", "1", "2"],
    ]


# -- verify ----------------------------------------------------------------------


def test_verify_single_degree(capsys):
    code, out, _ = run(capsys, "verify", "3", "3")
    assert code == EXIT_OK
    assert "pred 2 geo 2 alg 2" in out
    assert "all checks passed" in out


def test_verify_json_payload(capsys):
    code, out, _ = run(capsys, "verify", "2", "3", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["results"]["all_passed"] is True
    reports = doc["results"]["reports"]
    assert [rep["r"] for rep in reports] == ["2", "3"]
    rep3 = reports[1]
    assert rep3["multiplicities"]["m_phi_0"]["predicted"] == "2"
    assert rep3["passed"] is True


def test_verify_bad_range(capsys):
    code, _, err = run(capsys, "verify", "5", "4")
    assert code == EXIT_USAGE
    assert "range" in err


# -- mine ----------------------------------------------------------------------


def test_mine_r3(capsys):
    code, out, _ = run(capsys, "mine", "3")
    assert code == EXIT_OK
    assert "l=1, a=[7], n0=2" in out
    assert "bound 1: PASS" in out


def test_mine_r1(capsys):
    code, out, _ = run(capsys, "mine", "1")
    assert code == EXIT_OK
    assert "a=[3]" in out


def test_mine_affine(capsys):
    code, out, _ = run(capsys, "mine", "2", "--affine")
    assert code == EXIT_OK
    assert "affine" in out
    assert "bound 2: PASS" in out


def test_mine_json(capsys):
    code, out, _ = run(capsys, "mine", "3", "--json")
    doc = json.loads(out)
    assert doc["results"]["all_within_bounds"] is True
    recs = doc["results"]["results"]
    assert all(r["recurrence"]["coefficients"] == ["7"] for r in recs)


def test_mine_bad_terms(capsys):
    code, _, err = run(capsys, "mine", "3", "--terms", "4")
    assert code == EXIT_USAGE


def test_broken_pipe_is_not_an_error(monkeypatch):
    import sternsums.cli as cli_mod

    def explode(*args, **kwargs):
        raise BrokenPipeError

    # shadow print inside the cli module only, and stub the devnull redirect
    # (patching os.dup2 itself would break pytest's capture suspension)
    monkeypatch.setattr(cli_mod, "print", explode, raising=False)
    parked = []
    monkeypatch.setattr(cli_mod, "_park_stdout_on_devnull", lambda: parked.append(1))
    assert main(["row", "4"]) == EXIT_OK
    assert parked == [1]


# -- determinism ------------------------------------------------------------------


def test_json_output_deterministic(capsys):
    _, out1, _ = run(capsys, "verify", "1", "4", "--json")
    _, out2, _ = run(capsys, "verify", "1", "4", "--json")
    assert out1 == out2
    _, m1, _ = run(capsys, "mine", "2", "--affine", "--json")
    _, m2, _ = run(capsys, "mine", "2", "--affine", "--json")
    assert m1 == m2
