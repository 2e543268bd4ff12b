"""Cobar complexes over the dual Steenrod algebra and its quotients.

A chain of length s is keyed by ``(bar, m)`` where ``bar`` is a tuple of s
positive-degree monomials of the coalgebra and ``m`` is a comodule basis
monomial.  The differential is

    d[a_1|...|a_s]m = sum_i (-1)^i [a_1|...|Δ̄a_i|...|a_s]m
                      + (-1)^(s+1) [a_1|...|a_s|m']m''

with Δ̄ the reduced coproduct and m'⊗m'' the reduced coaction.  It is the
normalized complex of the cosimplicial cobar object, so d∘d = 0 needs only
coassociativity; no internal-degree signs enter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import dual
from .comodules import Comodule, UNIT, make_comodule, poly_basis
from .fp import EchelonBasis, check_odd_prime, vec_add

COALGEBRAS = ("full", "A_mod_A_prime", "Lambda_tau0", "A_prime")
DEFAULT_SIZE_LIMIT = 200_000


class ResourceLimitError(RuntimeError):
    pass


@dataclass
class BigradedDims:
    """dim_F_p of a bigraded vector space, keyed by (s, t)."""

    entries: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __getitem__(self, st):
        return self.entries.get(st, 0)

    def to_json(self) -> dict:
        out = {"entries": [{"s": s, "t": t, "dim": d} for (s, t), d in sorted(self.entries.items())]}
        out.update(self.meta)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BigradedDims":
        entries = {(e["s"], e["t"]): e["dim"] for e in data["entries"]}
        return cls(entries, {k: v for k, v in data.items() if k != "entries"})


def bigraded_monomial_dims(gens: list[tuple[int, int]], s_max: int, t_max: int,
                           exterior: bool = False) -> dict:
    """Count monomials in a free polynomial (or exterior) algebra by bidegree.

    ``gens`` lists generator bidegrees (s, t) with t > 0.
    """
    table = [[0] * (t_max + 1) for _ in range(s_max + 1)]
    table[0][0] = 1
    for gs, gt in gens:
        if gt <= 0:
            raise ValueError("generators need positive internal degree")
        if exterior:
            for s in range(s_max, gs - 1, -1):
                for t in range(t_max, gt - 1, -1):
                    table[s][t] += table[s - gs][t - gt]
        else:
            for s in range(gs, s_max + 1):
                for t in range(gt, t_max + 1):
                    table[s][t] += table[s - gs][t - gt]
    return {(s, t): table[s][t] for s in range(s_max + 1) for t in range(t_max + 1)}


# ---------------------------------------------------------------------------
# complex


class CobarComplex:
    """C^*(coalgebra; comodule) for a quotient Hopf algebra of the dual Steenrod algebra."""

    def __init__(self, p: int, coalgebra: str = "full", comodule: str | Comodule = "trivial",
                 size_limit: int = DEFAULT_SIZE_LIMIT):
        check_odd_prime(p)
        if coalgebra not in COALGEBRAS:
            raise ValueError(f"unknown coalgebra {coalgebra!r}; expected one of {COALGEBRAS}")
        self.p = p
        self.coalgebra = coalgebra
        self.comodule = make_comodule(comodule, p) if isinstance(comodule, str) else comodule
        self.size_limit = size_limit
        self._coaction_cache: dict = {}

    # bases -----------------------------------------------------------------
    def bar_basis(self, d: int) -> list:
        return dual.milnor_basis(self.p, d, self.coalgebra) if d > 0 else []

    def _bars(self, s: int, t: int) -> list[tuple]:
        if s == 0:
            return [()] if t == 0 else []
        out = []
        for first in range(1, t - s + 2):
            heads = self.bar_basis(first)
            if not heads:
                continue
            for tail in self._bars(s - 1, t - first):
                out.extend((h,) + tail for h in heads)
        return out

    def basis(self, s: int, t: int) -> list[tuple]:
        """All chains [a_1|...|a_s]m of internal degree t."""
        out = []
        for dm in range(t + 1):
            ms = self.comodule.basis(dm)
            if not ms:
                continue
            bars = self._bars(s, t - dm)
            out.extend((b, m) for b in bars for m in ms)
            if len(out) > self.size_limit:
                raise ResourceLimitError(
                    f"cobar basis at (s={s}, t={t}) exceeds size limit {self.size_limit}")
        return sorted(out)

    # differential ----------------------------------------------------------
    def reduced_coaction(self, m) -> tuple:
        hit = self._coaction_cache.get(m)
        if hit is None:
            out = {}
            for (a, m2), c in self.comodule.coaction(m).items():
                if a == dual.ONE or not dual.in_ambient(a, self.coalgebra):
                    continue
                vec_add(out, {(a, m2): c}, self.p)
            hit = tuple(sorted(out.items()))
            self._coaction_cache[m] = hit
        return hit

    def d_chain(self, bar: tuple, m) -> dict:
        p = self.p
        s = len(bar)
        out: dict = {}
        for i, a in enumerate(bar):
            sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1) for 0-based slot i
            for (a1, a2), c in dual.reduced_coproduct_mono(a, p, self.coalgebra):
                vec_add(out, {(bar[:i] + (a1, a2) + bar[i + 1:], m): sign * c}, p)
        sign = -1 if s % 2 == 0 else 1  # (-1)^(s+1)
        for (a, m2), c in self.reduced_coaction(m):
            vec_add(out, {(bar + (a,), m2): sign * c}, p)
        return out

    def d(self, x: Mapping) -> dict:
        out: dict = {}
        for (bar, m), c in x.items():
            vec_add(out, self.d_chain(bar, m), self.p, c)
        return out

    def rank_d(self, s: int, t: int) -> int:
        eb = EchelonBasis(self.p)
        for bar, m in self.basis(s, t):
            eb.add(self.d_chain(bar, m))
        return eb.rank

    def cotor_dims(self, s_max: int, t_max: int) -> BigradedDims:
        entries = {}
        for t in range(t_max + 1):
            ranks = {-1: 0}
            sizes = {}
            for s in range(s_max + 1):
                sizes[s] = len(self.basis(s, t))
                ranks[s] = self.rank_d(s, t) if sizes[s] else 0
            for s in range(s_max + 1):
                entries[s, t] = sizes[s] - ranks[s] - ranks[s - 1]
        return BigradedDims(entries, {"p": self.p, "coalgebra": self.coalgebra,
                                      "comodule": self.comodule.name,
                                      "s_max": s_max, "t_max": t_max})


# ---------------------------------------------------------------------------
# module-level operations


def cobar_basis(coalgebra: str, comodule: str, s: int, t: int, p: int) -> list[tuple]:
    return CobarComplex(p, coalgebra, comodule).basis(s, t)


def cobar_d(x: "CobarElement") -> "CobarElement":
    cx = CobarComplex(x.p, x.coalgebra, x.comodule)
    return CobarElement(x.p, x.coalgebra, x.comodule, x.s + 1, cx.d(x.terms))


def cotor_dims(coalgebra: str, comodule: str, s_max: int, t_max: int, p: int,
               size_limit: int = DEFAULT_SIZE_LIMIT) -> BigradedDims:
    """dim Cotor^{s,t} = dim ker d - dim im d on each cobar block."""
    return CobarComplex(p, coalgebra, comodule, size_limit).cotor_dims(s_max, t_max)


@dataclass
class CobarElement:
    p: int
    coalgebra: str
    comodule: str
    s: int
    terms: dict

    def __post_init__(self):
        self.terms = {k: c % self.p for k, c in self.terms.items() if c % self.p}
        for bar, _ in self.terms:
            if len(bar) != self.s:
                raise ValueError(f"bar length {len(bar)} != s = {self.s}")
            for a in bar:
                if a == dual.ONE or not dual.in_ambient(a, self.coalgebra):
                    raise ValueError(f"bar entry {a} not in the augmentation ideal of {self.coalgebra}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CobarElement):
            return NotImplemented
        return (self.p, self.coalgebra, self.comodule, self.s, self.terms) == (
            other.p, other.coalgebra, other.comodule, other.s, other.terms)

    def degree(self) -> int | None:
        cm = make_comodule(self.comodule, self.p)
        degs = {sum(dual.mono_degree(a, self.p) for a in bar) + cm.degree(m)
                for bar, m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def to_json(self) -> dict:
        def mono(a):
            return {"xi": list(a[0]), "tau": list(a[1])}

        def cmono(m):
            if self.comodule == "APrime_tensor_PH":
                return {"xi": list(m[0]), "exps": [list(x) for x in m[1]]}
            if self.comodule == "extended":
                return mono(m)
            return [list(x) for x in m]

        terms = [{"coeff": c, "bar": [mono(a) for a in bar], "m": cmono(m)}
                 for (bar, m), c in sorted(self.terms.items())]
        return {"p": self.p, "coalgebra": self.coalgebra, "comodule": self.comodule,
                "s": self.s, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "CobarElement":
        comodule = data.get("comodule", "APrime_tensor_PH")
        terms: dict = {}

        def mono(a):
            return (tuple(a.get("xi", [])), tuple(a.get("tau", [])))

        for t in data["terms"]:
            bar = tuple(mono(a) for a in t["bar"])
            m = t.get("m", [])
            if comodule == "APrime_tensor_PH":
                m = (tuple(m.get("xi", [])), tuple(tuple(x) for x in m.get("exps", [])))
            elif comodule == "extended":
                m = mono(m)
            else:
                m = tuple(tuple(x) for x in m)
            vec_add(terms, {(bar, m): t["coeff"]}, data["p"])
        return cls(data["p"], data.get("coalgebra", "full"), comodule, data["s"], terms)


def _coefficient_xibar_power(n: int, i: int, p: int, comodule: str) -> dict:
    """conj(xi_n)^{p^i} as a coefficient in the chosen comodule."""
    if comodule == "APrime_tensor_PH":
        return {(m[0], UNIT): c for m, c in dual.frobenius(dual.antipode_xi(n, p), i, p).items()}
    if comodule == "MSU":
        # splitting identification: conj(xi_n)⊗1 = G(-Y_{p^n - 1})
        if n == 0:
            return {UNIT: 1}
        return {((p ** n - 1, p ** i),): -1}
    raise ValueError(f"class_Q coefficients live in APrime_tensor_PH or MSU, not {comodule}")


def class_Q(t: int, p: int, comodule: str = "APrime_tensor_PH") -> CobarElement:
    """The chain -sum_{i=0}^t [conj tau_i] conj(xi_{t-i})^{p^i}."""
    check_odd_prime(p)
    terms: dict = {}
    for i in range(t + 1):
        coeff = _coefficient_xibar_power(t - i, i, p, comodule)
        for a, ca in dual.antipode_tau(i, p).items():
            for m, cm in coeff.items():
                vec_add(terms, {((a,), m): -ca * cm}, p)
    return CobarElement(p, "full", comodule, 1, terms)


def quotient_chain_map(x: CobarElement, target: str = "Lambda_tau0") -> CobarElement:
    """Project every bar entry to the quotient coalgebra; killed entries drop the term."""
    dual.check_ambient(target)
    terms = {(bar, m): c for (bar, m), c in x.terms.items()
             if all(dual.in_ambient(a, target) for a in bar)}
    return CobarElement(x.p, target, x.comodule, x.s, terms)


def expected_q_image(t: int, p: int, comodule: str = "APrime_tensor_PH") -> CobarElement:
    """[tau_0]·conj(xi_t), the predicted image of class_Q(t) in the Lambda[tau_0] complex."""
    coeff = _coefficient_xibar_power(t, 0, p, comodule)
    terms = {((dual.tau(0),), m): c for m, c in coeff.items()}
    return CobarElement(p, "Lambda_tau0", comodule, 1, terms)


def q_model_dims(p: int, s_max: int, t_max: int) -> BigradedDims:
    """Monomial counts of F_p[q_0, q_1, ...], q_t in bidegree (1, 2p^t - 1)."""
    gens = []
    k = 0
    while 2 * p ** k - 1 <= t_max:
        gens.append((1, 2 * p ** k - 1))
        k += 1
    return BigradedDims(bigraded_monomial_dims(gens, s_max, t_max),
                        {"p": p, "model": "F_p[q_0, q_1, ...]", "s_max": s_max, "t_max": t_max})


def q_ph_model_dims(p: int, s_max: int, t_max: int) -> BigradedDims:
    """F_p[q_0, q_1, ...] ⊗ PH by bidegree, PH concentrated in s = 0."""
    q = q_model_dims(p, s_max, t_max)
    ph = {t: len(poly_basis("PH_MSU", p, t)) for t in range(t_max + 1)}
    entries = {}
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            entries[s, t] = sum(q[s, t - u] * ph[u] for u in range(t + 1))
    return BigradedDims(entries, {"p": p, "model": "F_p[q_*] ⊗ PH", "s_max": s_max, "t_max": t_max})


def compare_dims(a: BigradedDims, b: BigradedDims) -> dict:
    keys = sorted(set(a.entries) | set(b.entries))
    rows = [{"s": s, "t": t, "direct": a[s, t], "model": b[s, t], "equal": a[s, t] == b[s, t]}
            for s, t in keys]
    return {"equal": all(r["equal"] for r in rows), "table": rows}


def change_of_rings_check(p: int, s_max: int, t_max: int,
                          size_limit: int = DEFAULT_SIZE_LIMIT) -> dict:
    """Direct Cotor over the full algebra with A'⊗PH coefficients against F_p[q_*]⊗PH."""
    direct = cotor_dims("full", "APrime_tensor_PH", s_max, t_max, p, size_limit)
    model = q_ph_model_dims(p, s_max, t_max)
    report = compare_dims(direct, model)
    report.update({"p": p, "s_max": s_max, "t_max": t_max})
    return report


def all_chains(cx: CobarComplex, s_max: int, t_max: int):
    for s in range(s_max + 1):
        for t in range(t_max + 1):
            for chain in cx.basis(s, t):
                yield s, t, chain


def check_d_squared(cx: CobarComplex, s_max: int, t_max: int) -> bool:
    for _, _, (bar, m) in all_chains(cx, s_max, t_max):
        if cx.d(cx.d_chain(bar, m)):
            return False
    return True


def check_chain_map(p: int, comodule: str, s_max: int, t_max: int,
                    target: str = "Lambda_tau0") -> bool:
    src = CobarComplex(p, "full", comodule)
    dst = CobarComplex(p, target, comodule)

    def proj(x):
        return {(bar, m): c for (bar, m), c in x.items()
                if all(dual.in_ambient(a, target) for a in bar)}

    for _, _, (bar, m) in all_chains(src, s_max, t_max):
        x = {(bar, m): 1}
        if proj(src.d(x)) != dst.d(proj(x)):
            return False
    return True
