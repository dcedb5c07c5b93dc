"""Write the canonical input files of the fixture corpus into fixtures/."""

import pathlib

from dgfunctors.catalog import a2_category, mutated_a2, simple_functor
from dgfunctors.chains import ChainComplex
from dgfunctors.enriched import identity_nat, precompose_nat, representable
from dgfunctors.linalg import GF, ZZ, Matrix
from dgfunctors.textio import dumps
from dgfunctors.translation import FunctorComplex, identity_functor_chainmap, to_dg_functor

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def mult(ring, m):
    return ChainComplex(ring, 0, [1, 1], {1: Matrix(ring, [[m]])})


def main():
    files = {}
    files["z_mult3.txt"] = dumps(mult(ZZ, 3))
    files["z_mult2.txt"] = dumps(mult(ZZ, 2))
    files["z_point.txt"] = dumps(ChainComplex(ZZ, 0, [1]))
    F2 = GF(2)
    files["f2_two_term.txt"] = dumps(ChainComplex(F2, 0, [1, 2], {1: Matrix(F2, [[1, 1]])}))
    files["f2_shifted.txt"] = dumps(ChainComplex(F2, -1, [1, 1], {0: Matrix(F2, [[1]])}))
    files["f2_point.txt"] = dumps(ChainComplex(F2, 1, [1]))

    C = a2_category(ZZ)
    files["a2_category.txt"] = dumps(C)
    files["a2_mutated.txt"] = dumps(mutated_a2(ZZ))
    Ra, Rb = representable(C, "a"), representable(C, "b")
    files["a2_rep_a.txt"] = dumps(Ra)
    files["a2_rep_b.txt"] = dumps(Rb)
    files["a2_simple_a.txt"] = dumps(simple_functor(C, "a"))
    files["a2_identity_nat.txt"] = dumps(identity_nat(Ra))
    inc = precompose_nat(C, "a", "b", Matrix.identity(ZZ, 1))
    cone = FunctorComplex(C, 0, [Ra, Rb], {1: inc})
    files["a2_cone.txt"] = dumps(cone)
    files["a2_cone_dg.txt"] = dumps(to_dg_functor(cone))
    files["a2_cone_identity.txt"] = dumps(identity_functor_chainmap(cone))
    disk = FunctorComplex(C, 0, [Ra, Ra], {1: identity_nat(Ra)})
    files["a2_disk.txt"] = dumps(disk)
    files["a2_simple_complex.txt"] = dumps(FunctorComplex(C, 0, [simple_functor(C, "a")]))
    OUT.mkdir(exist_ok=True)
    for name, text in sorted(files.items()):
        (OUT / name).write_text(text, encoding="utf-8")


if __name__ == "__main__":
    main()
