"""Comodule algebras H_*(MU; F_p), H_*(MSU; F_p) over the dual Steenrod algebra.

Odd primes only.  A polynomial monomial is a sorted tuple of
``(generator index n, exponent e)`` pairs; generator n has degree 2n.
Generators are z_n (n >= 1) for MU, Y_n (n >= 2) for MSU, and Y_n with
n != p^t - 1 for the primitive subalgebra PH.  Elements of A' ⊗ PH are
keyed by ``(xi exponents, PH monomial)``.

Coactions are left coactions with values {(dual monomial, monomial): coeff};
all comodule elements sit in even degrees, so no Koszul signs appear.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from . import dual
from .fp import EchelonBasis, check_odd_prime, solve, trim, vec_add

ALGEBRAS = ("MU", "MSU", "PH_MSU", "APrime_tensor_PH")

PolyMono = tuple  # ((n, e), ...)
UNIT: PolyMono = ()


def exceptional_index(n: int, p: int) -> int | None:
    """t >= 1 with n = p^t - 1, else None."""
    t, q = 1, p
    while q - 1 < n:
        q *= p
        t += 1
    return t if q - 1 == n else None


def prime_power_index(n: int, p: int) -> int | None:
    """t >= 1 with n = p^t, else None."""
    t, q = 1, p
    while q < n:
        q *= p
        t += 1
    return t if q == n else None


def generator_indices(algebra: str, p: int, max_n: int) -> list[int]:
    if algebra == "MU":
        return list(range(1, max_n + 1))
    if algebra == "MSU":
        return list(range(2, max_n + 1))
    if algebra in ("PH_MSU", "APrime_tensor_PH"):
        return [n for n in range(2, max_n + 1) if exceptional_index(n, p) is None]
    raise ValueError(f"unknown algebra {algebra!r}")


def poly_degree(m: PolyMono) -> int:
    return sum(2 * n * e for n, e in m)


def poly_mono_mul(a: PolyMono, b: PolyMono) -> PolyMono:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for n, e in b:
        acc[n] = acc.get(n, 0) + e
    return tuple(sorted(acc.items()))


def poly_mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            vec_add(out, {poly_mono_mul(ma, mb): ca * cb}, p)
    return out


def gen(n: int, e: int = 1) -> PolyMono:
    return ((n, e),) if e else UNIT


@lru_cache(maxsize=None)
def _poly_basis(algebra: str, p: int, t: int) -> tuple[PolyMono, ...]:
    if t < 0 or t % 2:
        return ()
    w = t // 2
    gens = generator_indices(algebra, p, w)
    out = []

    def rec(rem, idx, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for j in range(idx, len(gens)):
            n = gens[j]
            if n > rem:
                break
            for e in range(1, rem // n + 1):
                rec(rem - e * n, j + 1, acc + [(n, e)])

    rec(w, 0, [])
    return tuple(sorted(out))


def poly_basis(algebra: str, p: int, t: int) -> list[PolyMono]:
    """Monomials of degree t in F_p[z_*], F_p[Y_*] or PH."""
    if algebra == "APrime_tensor_PH":
        return aprime_ph_basis(p, t)
    return list(_poly_basis(algebra, p, t))


@lru_cache(maxsize=None)
def _aprime_ph_basis(p: int, t: int) -> tuple:
    out = []
    for d in range(0, t + 1, 2):
        for m in dual.milnor_basis(p, d, "A_prime"):
            for q in _poly_basis("PH_MSU", p, t - d):
                out.append((m[0], q))
    return tuple(sorted(out))


def aprime_ph_basis(p: int, t: int) -> list:
    return list(_aprime_ph_basis(p, t))


# ---------------------------------------------------------------------------
# coaction tensors: {(dual mono, right mono): coeff}


def tensor_mul(a: Mapping, b: Mapping, p: int, right_mul) -> dict:
    out: dict = {}
    for (x, m), c1 in a.items():
        for (y, n), c2 in b.items():
            r = dual.mono_mul(x, y)
            if r is None:
                continue
            vec_add(out, {(r[1], right_mul(m, n)): r[0] * c1 * c2}, p)
    return out


def _xibar_tensor(s: int, p: int, right: PolyMono, coeff: int) -> dict:
    return {(m, right): c * coeff for m, c in dual.antipode_xi(s, p).items()}


@lru_cache(maxsize=None)
def generator_coaction(letter: str, n: int, p: int) -> dict:
    """Coaction of z_n (letter 'z') or Y_n (letter 'Y') on the generator.

    For n = p^t - 1 it is -conj(xi_t)⊗1 + sum_{s<t} conj(xi_s)⊗g_{p^{t-s}-1}^{p^s};
    otherwise the generator is primitive.
    """
    t = exceptional_index(n, p)
    if t is None:
        return {(dual.ONE, gen(n)): 1}
    out: dict = {}
    vec_add(out, _xibar_tensor(t, p, UNIT, -1), p)
    for s in range(t):
        vec_add(out, _xibar_tensor(s, p, gen(p ** (t - s) - 1, p ** s), 1), p)
    return out


@lru_cache(maxsize=None)
def _generator_power_coaction(letter: str, n: int, e: int, p: int) -> dict:
    if e == 1:
        return generator_coaction(letter, n, p)
    half = _generator_power_coaction(letter, n, e // 2, p)
    out = tensor_mul(half, half, p, poly_mono_mul)
    if e % 2:
        out = tensor_mul(out, generator_coaction(letter, n, p), p, poly_mono_mul)
    return out


@lru_cache(maxsize=None)
def poly_coaction_mono(letter: str, m: PolyMono, p: int) -> dict:
    out: dict = {(dual.ONE, UNIT): 1}
    for n, e in m:
        out = tensor_mul(out, _generator_power_coaction(letter, n, e, p), p, poly_mono_mul)
    return out


@lru_cache(maxsize=None)
def aprime_ph_coaction_mono(m: tuple, p: int) -> dict:
    """Coaction on A' ⊗ PH through the coproduct of the A' factor."""
    xs, q = m
    out: dict = {}
    for (a, b), c in dual.coproduct_mono((xs, ()), p).items():
        vec_add(out, {(a, (b[0], q)): c}, p)
    return out


def _validate(algebra: str, terms: Mapping, p: int):
    lo = 1 if algebra == "MU" else 2
    for m in terms:
        if algebra == "APrime_tensor_PH":
            xs, q = m
            gens = [n for n, _ in q]
        else:
            gens = [n for n, _ in m]
        for n in gens:
            if n < lo:
                raise ValueError(f"generator index {n} not allowed in {algebra}")
            if algebra in ("PH_MSU", "APrime_tensor_PH") and exceptional_index(n, p) is not None:
                raise ValueError(f"Y_{n} is not primitive at p={p}")


def _canon(m) -> tuple:
    return tuple(sorted((int(n), int(e)) for n, e in m if e))


class ComodulePoly:
    """An element of one of the polynomial comodule algebras."""

    __slots__ = ("p", "algebra", "terms")

    def __init__(self, p: int, algebra: str, terms: Mapping | None = None):
        check_odd_prime(p)
        if algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra {algebra!r}")
        self.p, self.algebra = p, algebra
        acc: dict = {}
        for m, c in (terms or {}).items():
            if algebra == "APrime_tensor_PH":
                m = (trim(m[0]), _canon(m[1]))
            else:
                m = _canon(m)
            vec_add(acc, {m: c}, p)
        _validate(algebra, acc, p)
        self.terms = acc

    @classmethod
    def generator(cls, n: int, p: int, algebra: str = "MSU", power: int = 1) -> "ComodulePoly":
        if algebra == "APrime_tensor_PH":
            return cls(p, algebra, {((), gen(n, power)): 1})
        return cls(p, algebra, {gen(n, power): 1})

    def _check(self, other):
        if (self.p, self.algebra) != (other.p, other.algebra):
            raise ValueError("prime or algebra mismatch")

    def __eq__(self, other):
        if isinstance(other, ComodulePoly):
            return (self.p, self.algebra, self.terms) == (other.p, other.algebra, other.terms)
        return NotImplemented

    def __add__(self, other):
        self._check(other)
        return ComodulePoly(self.p, self.algebra, vec_add(dict(self.terms), other.terms, self.p))

    def __neg__(self):
        return ComodulePoly(self.p, self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ComodulePoly(self.p, self.algebra, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        if self.algebra == "APrime_tensor_PH":
            return ComodulePoly(self.p, self.algebra, aprime_ph_mul(self.terms, other.terms, self.p))
        return ComodulePoly(self.p, self.algebra, poly_mul(self.terms, other.terms, self.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ComodulePoly(self.p, self.algebra, {self._unit(): 1})
        for _ in range(k):
            out = out * self
        return out

    def _unit(self):
        return ((), UNIT) if self.algebra == "APrime_tensor_PH" else UNIT

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int | None:
        degs = {self.mono_degree(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def mono_degree(self, m) -> int:
        if self.algebra == "APrime_tensor_PH":
            return dual.mono_degree((m[0], ()), self.p) + poly_degree(m[1])
        return poly_degree(m)

    def __repr__(self):
        return f"ComodulePoly({self.p}, {self.algebra!r}, {self})"

    def __str__(self):
        letter = "z" if self.algebra == "MU" else "Y"
        if not self.terms:
            return "0"
        out = []
        for m, c in sorted(self.terms.items()):
            if self.algebra == "APrime_tensor_PH":
                name = f"{dual.mono_name((m[0], ()))}⊗{poly_name(m[1], letter)}"
            else:
                name = poly_name(m, letter)
            out.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(out)

    def to_json(self) -> dict:
        terms = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (self.mono_degree(kv[0]), kv[0])):
            if self.algebra == "APrime_tensor_PH":
                terms.append({"coeff": c, "xi": list(m[0]), "exps": [list(x) for x in m[1]]})
            else:
                terms.append({"coeff": c, "exps": [list(x) for x in m]})
        return {"p": self.p, "algebra": self.algebra, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "ComodulePoly":
        algebra = data["algebra"]
        terms: dict = {}
        for t in data["terms"]:
            m = _canon(t["exps"])
            if algebra == "APrime_tensor_PH":
                m = (trim(t.get("xi", [])), m)
            vec_add(terms, {m: t["coeff"]}, data["p"])
        return cls(data["p"], algebra, terms)


def poly_name(m: PolyMono, letter: str) -> str:
    return "*".join(f"{letter}{n}" + (f"^{e}" if e > 1 else "") for n, e in m) or "1"


def aprime_ph_mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    for (xa, qa), ca in a.items():
        for (xb, qb), cb in b.items():
            _, m = dual.mono_mul((xa, ()), (xb, ()))
            vec_add(out, {(m[0], poly_mono_mul(qa, qb)): ca * cb}, p)
    return out


# ---------------------------------------------------------------------------
# public operations


def _coaction(x: ComodulePoly, letter: str) -> dict:
    out: dict = {}
    for m, c in x.terms.items():
        vec_add(out, poly_coaction_mono(letter, m, x.p), x.p, c)
    return out


def coaction_msu(x: ComodulePoly) -> dict:
    """Left coaction on H_*(MSU; F_p) as {(dual mono, Y-monomial): coeff}."""
    if x.algebra not in ("MSU", "PH_MSU"):
        raise ValueError(f"expected an MSU element, got {x.algebra}")
    return _coaction(x, "Y")


def coaction_mu(x: ComodulePoly) -> dict:
    """Left coaction on H_*(MU; F_p) as {(dual mono, z-monomial): coeff}."""
    if x.algebra != "MU":
        raise ValueError(f"expected an MU element, got {x.algebra}")
    return _coaction(x, "z")


def coaction_aprime_ph(x: ComodulePoly) -> dict:
    if x.algebra != "APrime_tensor_PH":
        raise ValueError(f"expected an A'⊗PH element, got {x.algebra}")
    out: dict = {}
    for m, c in x.terms.items():
        vec_add(out, aprime_ph_coaction_mono(m, x.p), x.p, c)
    return out


def coaction_tensor_json(terms: Mapping, p: int, split: bool = False) -> dict:
    """JSON for a coaction tensor; ``split`` marks A'⊗PH right factors."""
    out = []
    for (a, m), c in sorted(terms.items(), key=lambda kv: (dual.sort_key(kv[0][0], p), kv[0][1])):
        entry = {"coeff": c, "xi": list(a[0]), "tau": list(a[1])}
        if split:
            entry["m"] = {"xi": list(m[0]), "exps": [list(x) for x in m[1]]}
        else:
            entry["m"] = [list(x) for x in m]
        out.append(entry)
    return {"p": p, "terms": out}


def _reduced(rho: dict, m) -> dict:
    out = dict(rho)
    key = (dual.ONE, m)
    v = out.get(key, 0)
    if v == 1:
        del out[key]
    else:
        out[key] = v - 1
    return out


def primitives(p: int, t: int) -> list[ComodulePoly]:
    """Basis of the primitives of H_*(MSU; F_p) in degree t (kernel of rho - 1⊗-)."""
    check_odd_prime(p)
    basis = poly_basis("MSU", p, t)
    eb = EchelonBasis(p, track=True)
    for m in basis:
        col = _reduced(poly_coaction_mono("Y", m, p), m)
        col = {k: v % p for k, v in col.items() if v % p}
        eb.add(col)
    out = []
    for combo in eb.kernel:
        out.append(ComodulePoly(p, "MSU", {basis[j]: c for j, c in combo.items()}))
    return out


def primitive_generator_count(p: int, t: int) -> int:
    return len(_poly_basis("PH_MSU", p, t))


@lru_cache(maxsize=None)
def _g_generator(n: int, p: int) -> dict:
    t = exceptional_index(n, p)
    if t is None:
        return {((), gen(n)): 1}
    return {(m[0], UNIT): -c % p for m, c in dual.antipode_xi(t, p).items()}


@lru_cache(maxsize=None)
def splitting_g_mono(m: PolyMono, p: int) -> dict:
    out: dict = {((), UNIT): 1}
    for n, e in m:
        for _ in range(e):
            out = aprime_ph_mul(out, _g_generator(n, p), p)
    return out


def splitting_G(x: ComodulePoly) -> ComodulePoly:
    """The algebra map H_*(MSU) -> A' ⊗ PH, Y_{p^t-1} -> -conj(xi_t)⊗1, Y_n -> 1⊗Y_n."""
    if x.algebra != "MSU":
        raise ValueError("splitting_G takes an MSU element")
    out: dict = {}
    for m, c in x.terms.items():
        vec_add(out, splitting_g_mono(m, x.p), x.p, c)
    return ComodulePoly(x.p, "APrime_tensor_PH", out)


def splitting_via_coaction(x: ComodulePoly) -> ComodulePoly:
    """(1 ⊗ quotient) ∘ rho, the defining composite of the splitting map."""
    out: dict = {}
    for (a, m), c in coaction_msu(x).items():
        if any(exceptional_index(n, x.p) is not None for n, _ in m):
            continue
        vec_add(out, {(a[0], m): c}, x.p)
    return ComodulePoly(x.p, "APrime_tensor_PH", out)


def verify_G_iso(p: int, t_max: int) -> dict:
    """Check that splitting_G is bijective and a comodule map in degrees <= t_max."""
    check_odd_prime(p)
    rows = []
    first_failure = None
    for t in range(0, t_max + 1, 2):
        src = poly_basis("MSU", p, t)
        dst = aprime_ph_basis(p, t)
        eb = EchelonBasis(p)
        comodule_ok = True
        for m in src:
            g = splitting_g_mono(m, p)
            eb.add(g)
            # (Delta ⊗ 1) G  versus  (1 ⊗ G) rho
            lhs: dict = {}
            for (xs, q), c in g.items():
                for (a, b), cc in dual.coproduct_mono((xs, ()), p).items():
                    vec_add(lhs, {(a, (b[0], q)): cc}, p, c)
            rhs: dict = {}
            for (a, mm), c in poly_coaction_mono("Y", m, p).items():
                for key, cc in splitting_g_mono(mm, p).items():
                    vec_add(rhs, {(a, key): cc}, p, c)
            if lhs != rhs:
                comodule_ok = False
        square = len(src) == len(dst)
        invertible = square and eb.rank == len(src)
        ok = square and invertible and comodule_ok
        rows.append({"t": t, "dim_source": len(src), "dim_target": len(dst),
                     "rank": eb.rank, "comodule_map": comodule_ok, "ok": ok})
        if not ok and first_failure is None:
            first_failure = t
    return {"p": p, "t_max": t_max, "ok": first_failure is None,
            "first_failure": first_failure, "degrees": rows}


def _inclusion_generator(n: int, p: int) -> PolyMono:
    t = prime_power_index(n, p)
    if t is None:
        return gen(n)
    return gen(p ** (t - 1), p)


def mu_inclusion_mono(m: PolyMono, p: int) -> PolyMono:
    out: PolyMono = UNIT
    for n, e in m:
        g = _inclusion_generator(n, p)
        out = poly_mono_mul(out, tuple((k, f * e) for k, f in g))
    return out


def mu_inclusion(x: ComodulePoly) -> ComodulePoly:
    """H_*(MSU) -> H_*(MU): Y_{p^t} -> z_{p^{t-1}}^p, Y_n -> z_n otherwise."""
    if x.algebra != "MSU":
        raise ValueError("mu_inclusion takes an MSU element")
    out: dict = {}
    for m, c in x.terms.items():
        vec_add(out, {mu_inclusion_mono(m, x.p): c}, x.p)
    return ComodulePoly(x.p, "MU", out)


def is_in_msu(x: ComodulePoly) -> tuple[bool, ComodulePoly | None]:
    """Decide whether a homogeneous MU element lies in the image of H_*(MSU)."""
    if x.algebra != "MU":
        raise ValueError("is_in_msu takes an MU element")
    p = x.p
    if not x.terms:
        return True, ComodulePoly(p, "MSU")
    t = x.degree()
    if t is None:
        raise ValueError("is_in_msu needs a homogeneous element")
    src = poly_basis("MSU", p, t)
    cols = [{mu_inclusion_mono(m, p): 1} for m in src]
    sol = solve(cols, x.terms, p)
    if sol is None:
        return False, None
    return True, ComodulePoly(p, "MSU", {src[j]: c for j, c in sol.items()})


def indecomposable_part(x: ComodulePoly) -> dict[int, int]:
    """Image in the indecomposables Q = I/I^2: {generator index: coeff}."""
    out: dict = {}
    for m, c in x.terms.items():
        if len(m) == 1 and m[0][1] == 1:
            out[m[0][0]] = c
    return out


# ---------------------------------------------------------------------------
# comodules for the cobar complex


class Comodule:
    """A graded left comodule with a monomial basis, for cobar coefficients."""

    name = "abstract"

    def __init__(self, p: int):
        self.p = p

    def basis(self, t: int) -> list:
        raise NotImplementedError

    def degree(self, m) -> int:
        raise NotImplementedError

    def coaction(self, m) -> dict:
        raise NotImplementedError

    def key(self) -> tuple:
        return (self.name, self.p)


class TrivialComodule(Comodule):
    name = "trivial"

    def basis(self, t):
        return [UNIT] if t == 0 else []

    def degree(self, m):
        return 0

    def coaction(self, m):
        return {(dual.ONE, UNIT): 1}


class PolyComodule(Comodule):
    """H_*(MSU) (letter Y) or H_*(MU) (letter z)."""

    def __init__(self, p: int, algebra: str):
        check_odd_prime(p)
        super().__init__(p)
        self.algebra = algebra
        self.name = algebra
        self.letter = "z" if algebra == "MU" else "Y"

    def basis(self, t):
        return poly_basis(self.algebra, self.p, t)

    def degree(self, m):
        return poly_degree(m)

    def coaction(self, m):
        return poly_coaction_mono(self.letter, m, self.p)


class APrimePHComodule(Comodule):
    name = "APrime_tensor_PH"

    def __init__(self, p: int):
        check_odd_prime(p)
        super().__init__(p)

    def basis(self, t):
        return aprime_ph_basis(self.p, t)

    def degree(self, m):
        return dual.mono_degree((m[0], ()), self.p) + poly_degree(m[1])

    def coaction(self, m):
        return aprime_ph_coaction_mono(m, self.p)


class ExtendedComodule(Comodule):
    """The dual Steenrod algebra as a comodule over itself via its coproduct."""

    name = "extended"

    def basis(self, t):
        return dual.milnor_basis(self.p, t, "full")

    def degree(self, m):
        return dual.mono_degree(m, self.p)

    def coaction(self, m):
        return dual.coproduct_mono(m, self.p)


COMODULES = ("trivial", "MSU", "MU", "APrime_tensor_PH", "extended")


def make_comodule(name: str, p: int) -> Comodule:
    if name == "trivial":
        return TrivialComodule(p)
    if name in ("MSU", "MU"):
        return PolyComodule(p, name)
    if name == "APrime_tensor_PH":
        return APrimePHComodule(p)
    if name == "extended":
        return ExtendedComodule(p)
    raise ValueError(f"unknown comodule {name!r}; expected one of {COMODULES}")
