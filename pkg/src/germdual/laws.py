"""Randomized checks of the normed-space laws and the duality bound.

Shared by the ``axioms`` CLI command; each check returns how many cases it
ran and which failed, so a report can be printed without raising.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .duality import pair
from .germs import Germ, add_germ, eq_ae_germ, germ_norm, neg_germ, scale_germ
from .random_instances import rand_coeff, rand_unit, random_germ, random_simple_func
from .representability import coordinate_germ


@dataclass
class LawResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, case) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(case)


def ae_variant(G: Germ, rng: random.Random) -> Germ:
    """A germ equal to ``G`` a.e. but built differently: redundant exceptions and stray point values."""
    ex = {o: dict(G.exceptions(o)) for o in ("v", "h")}
    for o in ("v", "h"):
        s = rand_unit(rng)
        fn = G.line(o, s)
        extra_break = Fraction(rng.randint(1, 11), 12)
        fn = fn.refined([extra_break])
        fn = type(fn)(fn.breaks, fn.pieces, ((rand_unit(rng), rand_coeff(rng)),))
        ex[o][s] = fn
    return Germ(G.vertical, G.horizontal, ex["v"], ex["h"])


def germ_laws(seed: int = 0, cases: int = 500) -> list[LawResult]:
    rng = random.Random(seed)
    names = [
        "norm zero iff zero germ",
        "norm homogeneity",
        "triangle inequality",
        "addition commutative",
        "addition associative",
        "zero is neutral",
        "additive inverse",
        "scalar distributes over germs",
        "scalars distribute",
        "scalar compatibility",
        "unit scalar",
        "sum well defined",
        "scaling well defined",
    ]
    res = {n: LawResult(n) for n in names}
    Z = Germ.zero()
    for k in range(cases):
        G, H, K = random_germ(rng), random_germ(rng), random_germ(rng)
        if rng.random() < 0.1:
            G = scale_germ(0, G)
        c, d = rand_coeff(rng), rand_coeff(rng)
        nG = germ_norm(G)
        res[names[0]].check((nG == 0) == eq_ae_germ(G, Z), k)
        res[names[1]].check(germ_norm(scale_germ(c, G)) == abs(c) * nG, k)
        res[names[2]].check(germ_norm(add_germ(G, H)) <= nG + germ_norm(H), k)
        res[names[3]].check(eq_ae_germ(add_germ(G, H), add_germ(H, G)), k)
        res[names[4]].check(eq_ae_germ(add_germ(add_germ(G, H), K), add_germ(G, add_germ(H, K))), k)
        res[names[5]].check(eq_ae_germ(add_germ(G, Z), G), k)
        res[names[6]].check(eq_ae_germ(add_germ(G, neg_germ(G)), Z), k)
        res[names[7]].check(eq_ae_germ(scale_germ(c, add_germ(G, H)), add_germ(scale_germ(c, G), scale_germ(c, H))), k)
        res[names[8]].check(eq_ae_germ(scale_germ(c + d, G), add_germ(scale_germ(c, G), scale_germ(d, G))), k)
        res[names[9]].check(eq_ae_germ(scale_germ(c, scale_germ(d, G)), scale_germ(c * d, G)), k)
        res[names[10]].check(eq_ae_germ(scale_germ(1, G), G), k)
        Gs, Hs = ae_variant(G, rng), ae_variant(H, rng)
        res[names[11]].check(eq_ae_germ(G, Gs) and eq_ae_germ(add_germ(G, H), add_germ(Gs, Hs)), k)
        res[names[12]].check(eq_ae_germ(scale_germ(c, G), scale_germ(c, Gs)), k)
    return list(res.values())


def duality_bound(seed: int = 0, cases: int = 1000, germ: Germ | None = None) -> LawResult:
    """``|pair(G, f)| <= ||G|| * ||f||_1`` on random sigma-finitely supported ``f``."""
    from .functions import l1_norm

    rng = random.Random(seed)
    G = coordinate_germ() if germ is None else germ
    N = germ_norm(G)
    res = LawResult("duality bound")
    for k in range(cases):
        f = random_simple_func(rng)
        res.check(abs(pair(G, f)) <= N * l1_norm(f), k)
    return res
