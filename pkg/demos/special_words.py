"""Small-weight codewords and what they say about minimum distance.

Plane words (weight 2q) live in C, capacitor words (weight 2q^(n-1)) in D.
Over the rationals D has minimum weight at least 2|K|, met exactly by the
alternating hexagon and octagon in AG(2, p).
"""
from fingeo import GeomConfig, build_kset, field_create, is_codeword, min_weight, verify_spanning
from fingeo.codes import enumerate_capacitor_words, enumerate_plane_words, kgon_kset, kgon_word

cfg = GeomConfig(field_create(3), 3)
K = build_kset(cfg, "rnc")
planes = enumerate_plane_words(cfg, K, 2)
caps = enumerate_capacitor_words(cfg, K, 2)
print(f"AG(3,3), moment curve: {len(planes)} plane words of weight {planes[0].weight}, "
      f"{len(caps)} capacitor words of weight {caps[0].weight}")
for which in ("plane_words_C", "capacitors_D"):
    rep = verify_spanning(cfg, K, which, 2)
    print(f"  {which}: span {rep.span_dim}, code dimension {rep.code_dim}")

for p in (5, 7):
    F = field_create(p)
    for size in (3, 4):
        K = kgon_kset(F, size)
        w = kgon_word(F, size)
        rep = min_weight(K.cfg, K, "D", 0)
        print(f"p={p} |K|={size}: polygon word weight {w.weight}, codeword={is_codeword(K.cfg, K, w)}, "
              f"d(D) over Q = {rep.value} ({rep.method})")

cfg = GeomConfig(field_create(2), 3)
rep = min_weight(cfg, build_kset(cfg, "rnc"), "C", 3)
print(f"Wenger n=3 q=2, C over GF(3): d = {rep.value} by {rep.method}")
