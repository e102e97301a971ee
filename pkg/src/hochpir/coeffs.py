"""Coefficient systems (C, M, g, pi).

C is a graded cocommutative dg coalgebra, M a dg C-comodule, g the Lie
superalgebra receiving the twisting map pi: C -> g of degree -1.  Builders
cover dual numbers, the N-primitive bead coalgebras and truncated Chevalley
coalgebras of an explicit g; ``load`` reads the declarative JSON form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from pathlib import Path
from typing import Mapping, Sequence

from .errors import CutoffError, ConfigurationError, DegreeParityError, InvariantViolation
from .exactla import add_to, axpy, frac, fmt
from .superalg.lie import FreeLieAlgebra, StructureLieAlgebra
from .superalg.pbw import sym_product
from .superalg.signs import koszul_sign

ONE = Fraction(1)


@dataclass(frozen=True)
class CoalgebraSpec:
    """Basis-indexed coalgebra; ``coproduct[i]`` lists (j, k, coef)."""

    names: tuple
    degrees: tuple
    colors: tuple
    unit: int
    coproduct: tuple
    differential: tuple = ()
    weight_cutoff: int | None = None

    @property
    def dim(self):
        return len(self.names)

    def counit(self, i) -> Fraction:
        return ONE if i == self.unit else Fraction(0)

    def d(self, i) -> tuple:
        return self.differential[i] if self.differential else ()


@dataclass(frozen=True)
class ComoduleSpec:
    """``coaction[m]`` lists (m', c, coef) meaning m -> sum coef m' (x) c."""

    names: tuple
    degrees: tuple
    colors: tuple
    coaction: tuple
    differential: tuple = ()

    @property
    def dim(self):
        return len(self.names)

    def d(self, i):
        return self.differential[i] if self.differential else ()


@dataclass(frozen=True)
class CoefficientSystem:
    name: str
    lie: object
    coalgebra: CoalgebraSpec
    comodule: ComoduleSpec
    pi: tuple                      # per coalgebra basis element: Lie element dict
    params: dict = field(default_factory=dict)
    comodule_is_coalgebra: bool = False

    @property
    def color_rank(self):
        return len(self.coalgebra.colors[0])

    def describe(self) -> dict:
        return {"name": self.name, "params": self.params}

    def check_cutoff(self, color=None, degree=None):
        w = self.coalgebra.weight_cutoff
        if w is None:
            return
        if color is not None and sum(color) > w:
            raise CutoffError(f"slice color {tuple(color)} exceeds weight cutoff {w}")


# -- builders -------------------------------------------------------------

def _primitive_system(name, params, gens):
    """C = Q + span(x_i) with x_i primitive, M = C, g free on xi_i, pi(x_i) = xi_i."""
    n = len(gens)
    rank = len(gens[0][2])
    names = ("1",) + tuple(g[0] for g in gens)
    degrees = (0,) + tuple(g[1] for g in gens)
    colors = ((0,) * rank,) + tuple(tuple(g[2]) for g in gens)
    cop = [((0, 0, ONE),)] + [((i, 0, ONE), (0, i, ONE)) for i in range(1, n + 1)]
    C = CoalgebraSpec(names, degrees, colors, 0, tuple(cop))
    M = ComoduleSpec(names, degrees, colors, tuple(cop))
    lie = FreeLieAlgebra([(f"xi{i + 1}" if n > 1 else "xi", g[1] - 1, g[2]) for i, g in enumerate(gens)])
    pi = ({},) + tuple({lie.generator(i): ONE} for i in range(n))
    return CoefficientSystem(name, lie, C, M, pi, params, comodule_is_coalgebra=True)


def dual_numbers(x_degree: int = 2) -> CoefficientSystem:
    if x_degree % 2:
        raise DegreeParityError(f"dual-number cogenerator must have even degree, got {x_degree}")
    if x_degree < 2:
        raise ConfigurationError("dual-number cogenerator degree must be >= 2")
    return _primitive_system("dual_numbers", {"x_degree": x_degree}, [("x", x_degree, (1,))])


def bead_coalgebra(N: int, degrees: Sequence[int] | None = None) -> CoefficientSystem:
    if N < 1:
        raise ConfigurationError("bead coalgebra needs N >= 1")
    degrees = list(degrees) if degrees is not None else [2] * N
    if len(degrees) != N:
        raise ConfigurationError("need one degree per cogenerator")
    for d in degrees:
        if d % 2:
            raise DegreeParityError(f"bead cogenerators must have even degree, got {d}")
        if d < 2:
            raise ConfigurationError("bead cogenerator degrees must be >= 2")
    gens = []
    for i, d in enumerate(degrees):
        c = [0] * N
        c[i] = 1
        gens.append((f"x{i + 1}", d, tuple(c)))
    return _primitive_system("bead", {"N": N, "degrees": degrees}, gens)


def _colors_upto_weight(rank, W):
    for c in iproduct(range(W + 1), repeat=rank):
        if 0 < sum(c) <= W:
            yield tuple(c)


def chevalley_system(g, weight_cutoff: int) -> CoefficientSystem:
    """C = S^c(sg) truncated at color weight <= weight_cutoff, M = C, pi = corestriction.

    |sz| = |z| + 1.  The differential is the coderivation with corestriction
    sz -> -s(dz) and sx.sy -> (-1)^{|x|} s[x,y].
    """
    if weight_cutoff < 1:
        raise ConfigurationError("weight cutoff must be >= 1")
    if getattr(g, "free", False):
        for name, d, _ in g.generators:
            if d <= 0:
                raise ConfigurationError(f"Lie generator {name} must have positive degree")
    zs = []
    for c in _colors_upto_weight(g.color_rank, weight_cutoff):
        zs.extend(g.basis_of_grade("color", c))
    zs.sort()
    sdeg = {z: g.degree(z) + 1 for z in zs}
    wt = {z: sum(g.color(z)) for z in zs}
    monos = [()]

    def rec(prefix, w, start):
        for idx in range(start, len(zs)):
            z = zs[idx]
            if w + wt[z] > weight_cutoff:
                continue
            if prefix and prefix[-1] == z and sdeg[z] & 1:
                continue
            m = prefix + (z,)
            monos.append(m)
            rec(m, w + wt[z], idx)

    rec((), 0, 0)
    monos.sort(key=lambda m: (sum(wt[z] for z in m), len(m), m))
    index = {m: i for i, m in enumerate(monos)}
    rank = g.color_rank

    def color(m):
        out = [0] * rank
        for z in m:
            for k, x in enumerate(g.color(z)):
                out[k] += x
        return tuple(out)

    def unshuffles(m):
        degs = [sdeg[z] for z in m]
        n = len(m)
        terms: dict = {}
        for mask in range(1 << n):
            left = [i for i in range(n) if mask >> i & 1]
            right = [i for i in range(n) if not mask >> i & 1]
            s = koszul_sign(degs, left + right)
            key = (tuple(m[i] for i in left), tuple(m[i] for i in right))
            add_to(terms, key, Fraction(s))
        return terms

    def mono_times(z_coef: Mapping, rest: tuple) -> dict:
        """(sum c s(z)) . rest in S(sg), restricted to the truncation."""
        out: dict = {}
        for z, c in z_coef.items():
            factors = (z,) + rest
            s, mono = sym_product(factors, [sdeg.get(f, g.degree(f) + 1) for f in factors])
            if s:
                if mono not in index:
                    raise CutoffError("Chevalley differential left the truncation")
                add_to(out, index[mono], s * c)
        return out

    def d_mono(m):
        degs = [sdeg[z] for z in m]
        n = len(m)
        out: dict = {}
        for i in range(n):
            dz = g.d_basis(m[i])
            if dz:
                rest = m[:i] + m[i + 1:]
                s = koszul_sign(degs, [i] + [k for k in range(n) if k != i])
                axpy(out, -s, mono_times(dz, rest))
        for i, j in combinations(range(n), 2):
            br = g.bracket_basis(m[i], m[j])
            if br:
                rest = tuple(m[k] for k in range(n) if k not in (i, j))
                s = koszul_sign(degs, [i, j] + [k for k in range(n) if k not in (i, j)])
                s *= -1 if g.degree(m[i]) & 1 else 1
                axpy(out, s, mono_times(br, rest))
        return tuple(sorted(out.items()))

    def name(m):
        if not m:
            return "1"
        return ".".join(f"s{g.name(z)}" for z in m)

    names = tuple(name(m) for m in monos)
    degrees = tuple(sum(sdeg[z] for z in m) for m in monos)
    colors = tuple(color(m) for m in monos)
    cop = []
    for m in monos:
        cop.append(tuple((index[a], index[b], c) for (a, b), c in sorted(unshuffles(m).items(),
                                                                       key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))))
    diff = tuple(d_mono(m) for m in monos)
    C = CoalgebraSpec(names, degrees, colors, 0, tuple(cop), diff, weight_cutoff)
    M = ComoduleSpec(names, degrees, colors, tuple(cop), diff)
    pi = tuple({m[0]: ONE} if len(m) == 1 else {} for m in monos)
    return CoefficientSystem("chevalley", g, C, M, pi, {"weight_cutoff": weight_cutoff, "lie": repr(g)},
                             comodule_is_coalgebra=True)


def trivial_comodule(cs: CoefficientSystem) -> CoefficientSystem:
    """Same C and g with M = Q (coaction 1 -> 1 (x) 1)."""
    C = cs.coalgebra
    M = ComoduleSpec(("1",), (0,), (C.colors[C.unit],), (((0, C.unit, ONE),),))
    return CoefficientSystem(cs.name + "+trivial", cs.lie, C, M, cs.pi, dict(cs.params, comodule="trivial"))


# -- validation -----------------------------------------------------------

@dataclass
class ValidationReport:
    passed: bool
    checks: list
    failure: str | None = None
    witness: object = None

    def to_json(self):
        return {"passed": self.passed, "checks": [{"name": n, "ok": ok} for n, ok in self.checks],
                "failure": self.failure, "witness": None if self.witness is None else str(self.witness)}


def _tensor2(terms):
    out: dict = {}
    for a, b, c in terms:
        add_to(out, (a, b), c)
    return out


def validate(cs: CoefficientSystem) -> ValidationReport:
    checks = []
    C, M, g = cs.coalgebra, cs.comodule, cs.lie

    def fail(name, msg, witness=None):
        checks.append((name, False))
        return ValidationReport(False, checks, f"{name}: {msg}", witness)

    def ok(name):
        checks.append((name, True))

    def dC_vec(v):
        out: dict = {}
        for i, c in v.items():
            for j, x in C.d(i):
                add_to(out, j, c * x)
        return out

    # coalgebra
    if len(C.coproduct) != C.dim or C.unit >= C.dim:
        return fail("shape", "coproduct table does not match the basis")
    for i in range(C.dim):
        for a, b, c in C.coproduct[i]:
            if C.degrees[a] + C.degrees[b] != C.degrees[i] or \
                    tuple(x + y for x, y in zip(C.colors[a], C.colors[b])) != C.colors[i]:
                return fail("coproduct homogeneity", f"term {C.names[a]}(x){C.names[b]} in Delta({C.names[i]})", i)
    ok("coproduct homogeneity")
    for i in range(C.dim):
        left: dict = {}
        right: dict = {}
        for a, b, c in C.coproduct[i]:
            for a1, a2, x in C.coproduct[a]:
                add_to(left, (a1, a2, b), c * x)
            for b1, b2, x in C.coproduct[b]:
                add_to(right, (a, b1, b2), c * x)
        if left != right:
            return fail("coassociativity", f"fails on {C.names[i]}", C.names[i])
    ok("coassociativity")
    for i in range(C.dim):
        t = _tensor2(C.coproduct[i])
        sw: dict = {}
        for (a, b), c in t.items():
            s = -1 if (C.degrees[a] * C.degrees[b]) & 1 else 1
            add_to(sw, (b, a), s * c)
        if sw != t:
            return fail("cocommutativity", f"fails on {C.names[i]}", C.names[i])
    ok("cocommutativity")
    for i in range(C.dim):
        l: dict = {}
        r: dict = {}
        for a, b, c in C.coproduct[i]:
            add_to(l, b, c * C.counit(a))
            add_to(r, a, c * C.counit(b))
        if l != {i: ONE} or r != {i: ONE}:
            return fail("counit", f"fails on {C.names[i]}", C.names[i])
    ok("counit")
    for i in range(C.dim):
        for j, x in C.d(i):
            if C.degrees[j] != C.degrees[i] - 1 or C.colors[j] != C.colors[i]:
                return fail("d_C homogeneity", f"d({C.names[i]}) not of degree -1", C.names[i])
        if dC_vec(dC_vec({i: ONE})):
            return fail("d_C^2", f"d_C^2 != 0 on {C.names[i]}", C.names[i])
    ok("d_C^2 = 0")
    for i in range(C.dim):
        lhs: dict = {}
        for j, x in C.d(i):
            for a, b, c in C.coproduct[j]:
                add_to(lhs, (a, b), x * c)
        rhs: dict = {}
        for a, b, c in C.coproduct[i]:
            for a1, x in C.d(a):
                add_to(rhs, (a1, b), c * x)
            s = -1 if C.degrees[a] & 1 else 1
            for b1, x in C.d(b):
                add_to(rhs, (a, b1), s * c * x)
        if lhs != rhs:
            return fail("d_C coderivation", f"fails on {C.names[i]}", C.names[i])
    ok("d_C coderivation")

    # comodule
    for m in range(M.dim):
        for a, c, x in M.coaction[m]:
            if M.degrees[a] + C.degrees[c] != M.degrees[m]:
                return fail("coaction homogeneity", f"fails on {M.names[m]}", M.names[m])
        left: dict = {}
        right: dict = {}
        for a, c, x in M.coaction[m]:
            for a1, c1, y in M.coaction[a]:
                add_to(left, (a1, c1, c), x * y)
            for c1, c2, y in C.coproduct[c]:
                add_to(right, (a, c1, c2), x * y)
        if left != right:
            return fail("comodule coassociativity", f"fails on {M.names[m]}", M.names[m])
        cu: dict = {}
        for a, c, x in M.coaction[m]:
            add_to(cu, a, x * C.counit(c))
        if cu != {m: ONE}:
            return fail("comodule counit", f"fails on {M.names[m]}", M.names[m])
        lhs: dict = {}
        for j, y in M.d(m):
            for a, c, x in M.coaction[j]:
                add_to(lhs, (a, c), x * y)
        rhs: dict = {}
        for a, c, x in M.coaction[m]:
            for a1, y in M.d(a):
                add_to(rhs, (a1, c), x * y)
            s = -1 if M.degrees[a] & 1 else 1
            for c1, y in C.d(c):
                add_to(rhs, (a, c1), s * x * y)
        if lhs != rhs:
            return fail("comodule differential", f"fails on {M.names[m]}", M.names[m])
    ok("comodule axioms")

    # Lie algebra
    if isinstance(g, StructureLieAlgebra):
        try:
            g.validate()
        except InvariantViolation as exc:
            return fail("lie axioms", str(exc))
        ok("lie axioms")

    # twisting map
    if cs.pi[C.unit]:
        return fail("pi(1) = 0", "pi does not vanish on the unit")
    for i in range(C.dim):
        for z in cs.pi[i]:
            if g.degree(z) != C.degrees[i] - 1:
                return fail("pi degree", f"pi({C.names[i]}) is not of degree -1", C.names[i])
    ok("pi degree -1")
    uea = g.uea
    for i in range(C.dim):
        total = dict(uea.d_vec(g.to_uea(cs.pi[i])))
        for j, x in C.d(i):
            axpy(total, x, g.to_uea(cs.pi[j]))
        for a, b, c in C.coproduct[i]:
            if cs.pi[a] and cs.pi[b]:
                s = -1 if C.degrees[a] & 1 else 1
                axpy(total, s * c, uea.mul(g.to_uea(cs.pi[a]), g.to_uea(cs.pi[b])))
        if total:
            return fail("twisting equation", f"d pi + pi d + pi*pi != 0 on {C.names[i]}", C.names[i])
    ok("twisting equation")
    return ValidationReport(True, checks)


# -- JSON form ------------------------------------------------------------

def _lie_from_json(obj) -> object:
    if obj.get("free", True):
        gens = [(x["name"], x["degree"], tuple(x.get("color", [1]))) for x in obj["generators"]]
        g = FreeLieAlgebra(gens)
        if obj.get("differential"):
            d = {k: {g.generator(n): frac(c) for n, c in v.items()} for k, v in obj["differential"].items()}
            g = FreeLieAlgebra(gens, d)
        return g
    basis = obj["basis"]
    names = [b["name"] for b in basis]
    brackets = {}
    for a, b, val in obj.get("brackets", []):
        brackets[(a, b)] = {k: frac(v) for k, v in val.items()}
    d = {k: {n: frac(c) for n, c in v.items()} for k, v in obj.get("differential", {}).items()}
    return StructureLieAlgebra(names, [b["degree"] for b in basis],
                               [tuple(b.get("color", [1])) for b in basis], brackets, d)


def _lie_elem_from_json(g, obj):
    out = {}
    for name, c in obj.items():
        z = g.generator(name) if getattr(g, "free", False) else g._idx(name)
        add_to(out, z, frac(c))
    return out


BUILDERS = {
    "dual_numbers": lambda p: dual_numbers(**p),
    "bead": lambda p: bead_coalgebra(**p),
    "bead_coalgebra": lambda p: bead_coalgebra(**p),
}


def from_json(obj: Mapping) -> CoefficientSystem:
    """Build a coefficient system from its declarative JSON form."""
    try:
        builder = obj.get("builder")
        params = dict(obj.get("params", {}))
        if builder in BUILDERS:
            return BUILDERS[builder](params)
        if builder in ("chevalley", "chevalley_system"):
            g = _lie_from_json(obj["lie"])
            cs = chevalley_system(g, **params)
            return cs
        if builder is not None:
            raise ConfigurationError(f"unknown coefficient builder {builder!r}")
        g = _lie_from_json(obj["lie"])
        cj = obj["coalgebra"]
        names = [b["name"] for b in cj["basis"]]
        idx = {n: i for i, n in enumerate(names)}
        degrees = tuple(int(b["degree"]) for b in cj["basis"])
        colors = tuple(tuple(b["color"]) for b in cj["basis"])
        unit = idx[cj.get("unit", names[0])]

        def table(src, k):
            out = []
            for n in names:
                out.append(tuple((idx[t[0]], idx[t[1]], frac(t[2])) for t in src.get(n, [])) if k == 3 else
                           tuple((idx[t[0]], frac(t[1])) for t in src.get(n, [])))
            return tuple(out)

        cop = list(table(cj.get("coproduct", {}), 3))
        for i, n in enumerate(names):
            if not cop[i]:
                # unspecified: primitive (unit group-like)
                cop[i] = ((i, unit, Fraction(1)),) if i == unit else ((i, unit, Fraction(1)), (unit, i, Fraction(1)))
        diff = table(cj.get("differential", {}), 2)
        C = CoalgebraSpec(tuple(names), degrees, colors, unit, tuple(cop), diff)
        M = ComoduleSpec(C.names, C.degrees, C.colors, C.coproduct, C.differential)
        pij = obj.get("pi", {})
        pi = tuple(_lie_elem_from_json(g, pij.get(n, {})) for n in names)
        return CoefficientSystem(obj.get("name", "custom"), g, C, M, pi, {}, comodule_is_coalgebra=True)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"malformed coefficient system: {exc!r}") from exc


def load(path) -> CoefficientSystem:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read coefficient system {path}: {exc}") from exc
    return from_json(obj)


def describe_table(cs: CoefficientSystem) -> dict:
    C = cs.coalgebra
    return {
        "basis": [{"name": n, "degree": d, "color": list(c)} for n, d, c in zip(C.names, C.degrees, C.colors)],
        "coproduct": {C.names[i]: [[C.names[a], C.names[b], fmt(c)] for a, b, c in C.coproduct[i]]
                      for i in range(C.dim)},
    }
