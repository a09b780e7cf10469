"""Wenger graphs as linear representations of the moment curve.

The rank of the Wenger incidence matrix away from p equals q^n minus the
number of polynomials of degree < n with no root in GF(q).
"""
from fingeo.wenger import rootless_poly_count, wenger_rank_formula, wenger_verify

print(" n  q  rank  formula  q^n-rootless  dim LU(3,q)")
for n in (2, 3, 4):
    for q in (2, 3, 4, 5, 7):
        ell = 3 if q % 3 else 2
        rep = wenger_verify(n, q, ell)
        lu = rep.lu3_dim_C if n == 3 else ""
        print(f"{n:>2} {q:>2} {rep.matrix_rank:>5} {wenger_rank_formula(n, q):>8} "
              f"{q**n - rootless_poly_count(n, q):>13}  {lu}")
