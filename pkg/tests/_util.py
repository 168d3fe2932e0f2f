"""Shared helpers for the test suite."""

import random
from math import factorial

from cfa.algebra import ConformalSuperalgebra, Element, vec_add, vec_scale
from cfa.scalars import ONE, as_scalar

CORRUPTED_VIR = dict(
    generators=[("L", 0)],
    products={(0, 0, 0): {(0, 1): 1}, (0, 0, 1): {(0, 0): 3}},
)


def corrupted_vir():
    return ConformalSuperalgebra(CORRUPTED_VIR["generators"], CORRUPTED_VIR["products"],
                                 name="badvir")


def random_element(R, rng, degree=3, parity=None, terms=3):
    gens = [g for g in range(R.rank) if g not in R.torsion
            and (parity is None or R.parities[g] == parity)]
    vec = {}
    if not gens:
        return Element(R, {})
    for _ in range(terms):
        g = rng.choice(gens)
        e = rng.randint(0, degree)
        c = as_scalar(rng.randint(-3, 3))
        if c:
            vec[(g, e)] = vec.get((g, e), 0 * ONE) + c
    return Element(R, {k: v for k, v in vec.items() if v})


def skew_rhs(x, y, n):
    """(-1)^{p(x)p(y)} sum_j (-1)^{j+n+1} d^j/j! y_(n+j)x for homogeneous x, y."""
    R = x.algebra
    px, py = x.parity(), y.parity()
    out = {}
    j = 0
    while True:
        v = R.nth_vec(y.vec, x.vec, n + j)
        if not v and j > R.max_order() + x.degree() + y.degree() + 2:
            break
        if v:
            w = Element(R, v).d(j).vec
            sign = (-1) ** (j + n + 1) * (-1 if (px and py) else 1)
            out = vec_add(out, w, as_scalar(sign) / factorial(j))
        j += 1
    return Element(R, out)


def seeded(seed):
    return random.Random(seed)


ROUND_TRIP_SPECS = ["vir", "CK6", "current:sl2", "current:gl2", "current:borel", "current:h3",
                    "current:osp12", "current:abelian1", "semidirect:sl2",
                    "W:0", "W:1", "W:2", "W:3", "S:1", "S:2", "S:3",
                    "K:0", "K:1", "K:2", "K:3", "K:4"]

_FUZZ_ALPHABET = list("[]{}<>=;,+-*/^():#id0123456789 \nLvabc") + [
    "even ", "odd ", "d^", "relation ", "let ", "algebra ", "module ", "over ", "raw ",
    "cocycle ", "lie ", "form ", "99999999"]


def fuzz_corpus():
    from cfa.builtins import builtin_algebra
    from cfa.dsl import emit_algebra, emit_module
    from cfa.modules import make_ext_44b
    seeds = [emit_algebra(builtin_algebra(s)) for s in ["vir", "current:sl2", "K:2", "W:1"]]
    seeds.append(emit_module(make_ext_44b(ONE / 2, 1)))
    seeds.append("lie g { even e, f, h; [e f] = h; [h e] = 2 e; [h f] = -2 f; form e f = 1; }\n"
                 "module N over current:g { let a = (1/2+i); even v; <e 0 v> = a v; }\n"
                 "cocycle over vir { [L 3 L] = 1; }")
    return seeds


def fuzz_parser(iterations, seed=1):
    """Mutate valid sources; returns (parsed_ok, structured_errors, crashes)."""
    from cfa.dsl import DslError, parse
    rng = random.Random(seed)
    seeds = fuzz_corpus()
    ok = errors = 0
    crashes = []
    for _ in range(iterations):
        s = list(rng.choice(seeds))
        for _ in range(rng.randint(1, 4)):
            op = rng.random()
            p = rng.randrange(len(s) + 1)
            if op < 0.4 and s:
                del s[min(p, len(s) - 1)]
            elif op < 0.8:
                s.insert(p, rng.choice(_FUZZ_ALPHABET))
            else:
                q = rng.randrange(len(s) + 1)
                s[p:p] = s[q:q + rng.randint(1, 10)]
        text = "".join(s)
        try:
            parse(text)
            ok += 1
        except DslError as exc:
            if exc.line is None:
                crashes.append((text, "DslError without position"))
            errors += 1
        except Exception as exc:  # noqa: BLE001
            crashes.append((text, repr(exc)))
    return ok, errors, crashes
