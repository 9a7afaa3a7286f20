"""Byte-for-byte comparison of JSON reports against the files in tests/golden."""

from pathlib import Path

import pytest

from cuspidal_shadow import cli

GOLDEN = Path(__file__).parent.parent / "golden"


@pytest.mark.parametrize(
    "name, argv",
    [
        ("roots_a2", ["roots", "--cartan", "A2"]),
        ("roots_a3", ["roots", "--cartan", "A3"]),
        ("pbw_a2_11", ["pbw", "--cartan", "A2", "--word", "1,2,1", "--weight", "1,1"]),
        ("gbasis_a2_11", ["gbasis", "--cartan", "A2", "--word", "1,2,1", "--weight", "1,1"]),
        ("qdata_a2", ["qdata", "--cartan", "A2", "--quiver", "2>1"]),
        ("qdata_a3", ["qdata", "--cartan", "A3", "--quiver", "2>1,3>2"]),
        ("cuspline_a2", ["cuspline", "--cartan", "A2", "--quiver", "2>1", "--k-range", "-1:4"]),
    ],
)
def test_report_matches_golden_file(capsys, name, argv):
    assert cli.main(argv) == cli.EXIT_OK
    assert capsys.readouterr().out.encode() == (GOLDEN / f"{name}.json").read_bytes()


def test_output_file_matches_golden_file(tmp_path, capsys):
    target = tmp_path / "roots.json"
    assert cli.main(["roots", "--cartan", "A2", "--output", str(target)]) == cli.EXIT_OK
    assert target.read_bytes() == (GOLDEN / "roots_a2.json").read_bytes()
