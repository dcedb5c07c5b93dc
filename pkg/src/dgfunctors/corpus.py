"""Run the fixture command manifest and compare against frozen outputs.

A manifest line is ``NAME EXPECTED_EXIT ARGS...``; ``#`` starts a comment.
Commands run in-process with the manifest's directory as the base for
relative paths.  A transcript holds standard output, standard error and the
exit code.
"""

from __future__ import annotations

import contextlib
import io
import os
import shlex
from dataclasses import dataclass
from pathlib import Path

from .cli import main


@dataclass(frozen=True)
class Entry:
    name: str
    expected_exit: int
    args: tuple[str, ...]


@dataclass(frozen=True)
class Transcript:
    stdout: str
    stderr: str
    code: int

    def render(self) -> str:
        out = self.stdout
        if self.stderr:
            out += "".join(f"stderr: {line}\n" for line in self.stderr.splitlines())
        return out + f"exit {self.code}\n"


def read_manifest(path: Path) -> list[Entry]:
    entries = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, code, *args = shlex.split(line)
        entries.append(Entry(name, int(code), tuple(args)))
    return entries


def run_entry(entry: Entry, base: Path, jobs: int | None = None) -> Transcript:
    args = list(entry.args)
    if jobs is not None and args and args[0] != "self-test":
        args.append(f"--jobs={jobs}")
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    try:
        os.chdir(base)
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main(args)
            except SystemExit as e:  # argparse usage errors
                code = e.code if isinstance(e.code, int) else 2
    finally:
        os.chdir(cwd)
    return Transcript(out.getvalue(), err.getvalue(), code)


def run_manifest(path: Path, jobs: int | None = None) -> dict[str, Transcript]:
    path = Path(path)
    return {e.name: run_entry(e, path.parent, jobs) for e in read_manifest(path)}


def freeze(path: Path, outdir: Path) -> None:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, t in run_manifest(path).items():
        (outdir / f"{name}.out").write_text(t.render())


__all__ = ["Entry", "Transcript", "read_manifest", "run_entry", "run_manifest", "freeze"]
