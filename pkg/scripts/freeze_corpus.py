"""Regenerate fixtures/expected/*.out from fixtures/commands.txt.

Run after an intentional output change, then review the diff by hand.
"""

from pathlib import Path

from dgfunctors.corpus import freeze

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    freeze(ROOT / "fixtures" / "commands.txt", ROOT / "fixtures" / "expected")
