"""Explicit tripotent + Delta representations in triangular matrix rings."""

import numpy as np

from sdtring import parse_and_build
from sdtring.invariants import delta
from sdtring.ring import make_zmod
from sdtring.triangular import (
    BlockView,
    WorkhorseCase,
    check_theorem_local,
    sdt_representation_triangular,
    to_matrix,
    workhorse_z,
)

T = parse_and_build("T3(Z3)")
A = int(np.random.default_rng(1).integers(T.order))
E, D = sdt_representation_triangular(T, A)
print("A =", to_matrix(T, A))
print("E =", to_matrix(T, E), "(E^3 = E:", T.mul(T.mul(E, E), E) == E, ")")
print("D =", to_matrix(T, D), "(in Delta:", D in delta(T), ")")

# the corner entry of a 3x3 tripotent, case e = f = 1 over Z9
R = make_zmod(9)
I3 = BlockView(R, 3, 1, [0], 0, [[1]], [0], 1)
E = BlockView(R, 3, 1, [1], 0, [[0]], [1], 1)
z = workhorse_z(WorkhorseCase.I, I3, E)
print("corner entry:", z, E.with_corner(z).matrix())

# T_3 over a local ring is SDT exactly when the residue criterion holds
for expr in ("Z2", "Z3", "Z4", "GF4", "Z5"):
    rep = check_theorem_local(parse_and_build(expr), 3)
    print(f"T3({expr}): sdt={rep.lhs_sdt} criterion={rep.rhs_condition} via {rep.branch}")
