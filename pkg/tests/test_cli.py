import subprocess
import sys

import pytest

from dgfunctors.cli import COMMANDS, HANDLERS, main
from dgfunctors.corpus import Entry, read_manifest, run_entry, run_manifest

from conftest import FIXTURES

MANIFEST = FIXTURES / "commands.txt"
ENTRIES = read_manifest(MANIFEST)


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
def test_golden_output(entry):
    t = run_entry(entry, FIXTURES)
    assert t.code == entry.expected_exit, t.render()
    assert t.render() == (FIXTURES / "expected" / f"{entry.name}.out").read_text()


def test_every_golden_has_an_entry():
    names = {e.name for e in ENTRIES}
    assert {p.stem for p in (FIXTURES / "expected").glob("*.out")} == names


def test_output_independent_of_jobs():
    assert run_manifest(MANIFEST, jobs=1) == run_manifest(MANIFEST, jobs=4)


def test_every_subcommand_is_mapped():
    assert set(COMMANDS) == set(HANDLERS)
    t = run_entry(Entry("self", 0, ("self-test",)), FIXTURES)
    assert t.code == 0
    assert "derived-hom -> derived.derived_hom_V" in t.stdout


def test_homology_of_mult_three(capsys):
    assert main(["homology", str(FIXTURES / "z_mult3.txt")]) == 0
    out = capsys.readouterr().out
    assert "Z/3" in out


def test_input_errors_exit_two(capsys):
    assert main(["homology", str(FIXTURES / "missing.txt")]) == 2
    assert main(["homology", str(FIXTURES / "bad_version.txt")]) == 2
    err = capsys.readouterr().err
    assert err.count("error:") == 2


def test_ring_mismatch_exits_two(capsys):
    assert main(["homology", "--ring", "Q", str(FIXTURES / "z_mult3.txt")]) == 2
    assert main(["homology", "--ring", "F4", str(FIXTURES / "z_mult3.txt")]) == 2
    assert "error:" in capsys.readouterr().err


def test_wrong_payload_kind_exits_two(capsys):
    assert main(["yoneda", str(FIXTURES / "z_mult3.txt")]) == 2
    assert "expected v-functor" in capsys.readouterr().err


def test_failed_check_exits_one(capsys):
    assert main(["axioms", str(FIXTURES / "a2_mutated.txt")]) == 1
    assert "FAIL left unit" in capsys.readouterr().out


def test_bad_range(capsys):
    assert main(["homology", "--range=3:1", str(FIXTURES / "z_mult3.txt")]) == 2
    assert main(["homology", "--range=x", str(FIXTURES / "z_mult3.txt")]) == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dgfunctors.cli", "self-test"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("adjunction-check ->")
