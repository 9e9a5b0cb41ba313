"""Walk through the structural sets of a few small rings and classify them."""

import numpy as np

from sdtring import classify_ring, parse_and_build
from sdtring.invariants import delta, idempotents, jacobson_radical, tripotents, units

# Z8: the radical is 2Z8 and every element is +-1 or 0 plus a radical element
R = parse_and_build("Z8")
print(R.name, "order", R.order)
print("units     ", units(R).to_list())
print("J         ", jacobson_radical(R).to_list())
print("Delta     ", delta(R).to_list())
print("tripotents", tripotents(R).to_list())

# the tables are plain numpy arrays
add, mul, neg = R.tables()[:3]
print("mul row of 3:", mul[3])
print("squares:", np.diag(mul))

# Z5 has tripotents 0, 1, 4 only, so 2 and 3 have no decomposition
for expr in ("Z8", "Z5", "GF4", "T2(Z3)"):
    rep = classify_ring(parse_and_build(expr))
    print(f"{expr:8s} sdt={rep.flags['sdt']!s:5s} local={rep.flags['local']!s:5s}",
          f"2 in {rep.char_data['two_in']}")

# T2(Z2) has non-central idempotents
T = parse_and_build("T2(Z2)")
print("idempotents of T2(Z2):", idempotents(T).to_list())
