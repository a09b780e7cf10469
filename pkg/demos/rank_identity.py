"""The rank of the point-line incidence matrix, computed four ways.

For a direction set K at infinity, the rank of N over any characteristic
other than p is 1 + (q-1) h_K, where h_K counts the hyperplanes at infinity
that meet K.  This script compares elimination, the closed form, a count of
functionals vanishing somewhere on K, and a count of additive characters.
"""
from fingeo import GeomConfig, build_incidence, build_kset, count_h_k, dual_zero_count, field_create, rank_mod
from fingeo.characters import make_context, rank_via_characters

cfg = GeomConfig(field_create(2, 2), 3)  # AG(3, 4)
for spec in ("hyperoval", "rnc", "line", "random:7:1", "full"):
    K = build_kset(cfg, spec)
    N = build_incidence(cfg, K)
    h = count_h_k(cfg, K)
    print(f"{spec:<11} |K|={len(K):<2} h_K={h:<3} "
          f"rank mod 3={rank_mod(N, 3).rank:<3} "
          f"1+(q-1)h_K={1 + 3 * h:<3} "
          f"vanishing functionals={dual_zero_count(cfg, K):<3} "
          f"characters in GF(5)={rank_via_characters(make_context(2, 5), cfg, K)}")

# Over the characteristic itself the rank never exceeds this value.
K = build_kset(cfg, "hyperoval")
print("hyperoval rank mod 2:", rank_mod(build_incidence(cfg, K), 2).rank)
