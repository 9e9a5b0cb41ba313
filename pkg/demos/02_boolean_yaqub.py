"""Split R/J of an SDT ring into a Boolean factor and a Yaqub factor."""

from sdtring import parse_and_build, verify_boolean_yaqub
from sdtring.errors import PreconditionNotSDT

for expr in ("Z12", "Z2 x Z9", "T3(Z2)", "TE(Z3)", "P3(Z3)"):
    rep = verify_boolean_yaqub(parse_and_build(expr)).to_json()
    print(f"{expr:8s} |R/J|={rep['quotient_order']:3d}",
          f"boolean part {rep['r1']['order']:2d}, yaqub part {rep['r2']['order']:2d},",
          "ok" if rep["verdict"] else "MISMATCH")

# rings outside the class are refused
try:
    verify_boolean_yaqub(parse_and_build("Z5"))
except PreconditionNotSDT as exc:
    print("Z5:", exc)
