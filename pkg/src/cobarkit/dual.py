"""The dual Steenrod algebra as a graded Hopf algebra in the Milnor basis.

A monomial xi^R tau^E is the pair ``(xi, tau)``: ``xi`` a trimmed exponent
tuple (r_1, r_2, ...) and ``tau`` a strictly increasing tuple of indices.
Elements are dicts monomial -> coeff; tensors are dicts keyed by pairs of
monomials.  Quotient ambients reuse the same monomials:

* ``full``           the whole dual algebra
* ``A_prime``        polynomial part F_p[xi_1, xi_2, ...] (all tau killed)
* ``A_mod_A_prime``  exterior quotient Lambda[tau_0, tau_1, ...] (xi_i killed)
* ``Lambda_tau0``    Lambda[tau_0] (xi_i and tau_i, i >= 1, killed)
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping

from .fp import binom_mod_p, check_prime, multinom_mod_p, trim, vec_add

AMBIENTS = ("full", "A_prime", "A_mod_A_prime", "Lambda_tau0")

Mono = tuple  # (xi: tuple[int, ...], tau: tuple[int, ...])
ONE: Mono = ((), ())


def xi(n: int) -> Mono:
    if n == 0:
        return ONE
    return (tuple([0] * (n - 1) + [1]), ())


def tau(n: int) -> Mono:
    return ((), (n,))


def check_ambient(ambient: str) -> str:
    if ambient not in AMBIENTS:
        raise ValueError(f"unknown ambient {ambient!r}; expected one of {AMBIENTS}")
    return ambient


def xi_degree(n: int, p: int) -> int:
    return (2 ** n - 1) if p == 2 else 2 * (p ** n - 1)


def tau_degree(n: int, p: int) -> int:
    return 2 * p ** n - 1


def mono_degree(m: Mono, p: int) -> int:
    xs, ts = m
    d = sum(r * xi_degree(i + 1, p) for i, r in enumerate(xs))
    return d + sum(tau_degree(i, p) for i in ts)


def in_ambient(m: Mono, ambient: str) -> bool:
    xs, ts = m
    if ambient == "full":
        return True
    if ambient == "A_prime":
        return not ts
    if ambient == "A_mod_A_prime":
        return not xs
    if ambient == "Lambda_tau0":
        return not xs and all(i == 0 for i in ts)
    raise ValueError(f"unknown ambient {ambient!r}")


def _merge_tau(a: tuple, b: tuple) -> tuple[int, tuple] | None:
    """Sign and sorted union of two exterior monomials; None if they overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def mono_mul(a: Mono, b: Mono) -> tuple[int, Mono] | None:
    merged = _merge_tau(a[1], b[1])
    if merged is None:
        return None
    sign, ts = merged
    xa, xb = a[0], b[0]
    if len(xa) < len(xb):
        xa, xb = xb, xa
    xs = tuple(x + (xb[i] if i < len(xb) else 0) for i, x in enumerate(xa))
    return sign, (xs, ts)


def mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            r = mono_mul(ma, mb)
            if r is None:
                continue
            s, m = r
            v = (out.get(m, 0) + s * ca * cb) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def power(a: Mapping, k: int, p: int) -> dict:
    out: dict = {ONE: 1}
    for _ in range(k):
        out = mul(out, a, p)
    return out


def frobenius(a: Mapping, k: int, p: int) -> dict:
    """a^(p^k) for a polynomial in the xi only (the Frobenius is additive there)."""
    q = p ** k
    out: dict = {}
    for (xs, ts), c in a.items():
        if ts:
            raise ValueError("frobenius needs an element without tau factors")
        vec_add(out, {(tuple(r * q for r in xs), ()): pow(c, q, p)}, p)
    return out


def tensor_mul(a: Mapping, b: Mapping, p: int) -> dict:
    """(x⊗y)(z⊗w) = (-1)^{|y||z|} xz⊗yw."""
    out: dict = {}
    for (x, y), c1 in a.items():
        dy = mono_degree(y, p) % 2
        for (z, w), c2 in b.items():
            r1 = mono_mul(x, z)
            if r1 is None:
                continue
            r2 = mono_mul(y, w)
            if r2 is None:
                continue
            sign = r1[0] * r2[0]
            if dy and mono_degree(z, p) % 2:
                sign = -sign
            key = (r1[1], r2[1])
            v = (out.get(key, 0) + sign * c1 * c2) % p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


# ---------------------------------------------------------------------------
# bases


def _xi_exponents(t: int, p: int, i: int) -> Iterator[tuple[int, ...]]:
    """Exponent tuples (r_i, r_{i+1}, ...) of xi-degree exactly t."""
    if t == 0:
        yield ()
        return
    d = xi_degree(i, p)
    if d > t:
        return
    for r in range(t // d + 1):
        for rest in _xi_exponents(t - r * d, p, i + 1):
            yield (r,) + rest


def _tau_sets(t: int, p: int, i: int) -> Iterator[tuple[int, ...]]:
    if t == 0:
        yield ()
        return
    d = tau_degree(i, p)
    if d > t:
        return
    for rest in _tau_sets(t - d, p, i + 1):
        yield (i,) + rest
    yield from _tau_sets(t, p, i + 1)


@lru_cache(maxsize=None)
def _milnor_basis(p: int, t: int, ambient: str) -> tuple[Mono, ...]:
    if t < 0:
        return ()
    out = []
    if p == 2:
        if ambient in ("full", "A_prime"):
            out = [(trim(r), ()) for r in _xi_exponents(t, 2, 1)]
        elif t == 0:
            out = [ONE]
        return tuple(sorted(out))
    for tdeg in range(t + 1):
        if ambient == "A_prime" and tdeg:
            break
        taus = list(_tau_sets(tdeg, p, 0))
        if ambient == "Lambda_tau0":
            taus = [s for s in taus if all(i == 0 for i in s)]
        if not taus:
            continue
        if ambient in ("A_mod_A_prime", "Lambda_tau0"):
            xis = [()] if tdeg == t else []
        else:
            xis = [trim(r) for r in _xi_exponents(t - tdeg, p, 1)]
        out.extend((x, s) for x in xis for s in taus)
    return tuple(sorted(out))


def milnor_basis(p: int, t: int, ambient: str = "full") -> list[Mono]:
    """Monomials of degree t in the given ambient."""
    check_prime(p)
    check_ambient(ambient)
    return list(_milnor_basis(p, t, ambient))


# ---------------------------------------------------------------------------
# coproduct


@lru_cache(maxsize=None)
def _coproduct_xi(n: int, p: int) -> dict:
    out = {}
    for k in range(n + 1):
        left = (tuple(r * p ** k for r in xi(n - k)[0]), ())
        out[(left, xi(k))] = 1
    return out


@lru_cache(maxsize=None)
def _coproduct_tau(n: int, p: int) -> dict:
    out = {(tau(n), ONE): 1}
    for k in range(n + 1):
        left = (tuple(r * p ** k for r in xi(n - k)[0]), ())
        out[(left, tau(k))] = 1
    return out


@lru_cache(maxsize=None)
def coproduct_mono(m: Mono, p: int) -> dict:
    """Delta of a basis monomial in the full algebra, as {(left, right): coeff}."""
    xs, ts = m
    out: dict = {(ONE, ONE): 1}
    for i, r in enumerate(xs):
        if r:
            out = tensor_mul(out, _xi_power_coproduct(i + 1, r, p), p)
    for j in ts:
        out = tensor_mul(out, _coproduct_tau(j, p), p)
    return out


@lru_cache(maxsize=None)
def _xi_power_coproduct(n: int, r: int, p: int) -> dict:
    if r == 1:
        return _coproduct_xi(n, p)
    half = _xi_power_coproduct(n, r // 2, p)
    out = tensor_mul(half, half, p)
    if r % 2:
        out = tensor_mul(out, _coproduct_xi(n, p), p)
    return out


def project_mono(m: Mono, ambient: str) -> bool:
    """Whether m survives the quotient map to ``ambient``."""
    return in_ambient(m, ambient)


def coproduct_terms(x: Mapping, p: int, ambient: str = "full") -> dict:
    """Coproduct of an element of ``ambient`` (induced coproduct on quotients)."""
    out: dict = {}
    for m, c in x.items():
        for (a, b), cc in coproduct_mono(m, p).items():
            if ambient != "full" and not (in_ambient(a, ambient) and in_ambient(b, ambient)):
                continue
            vec_add(out, {(a, b): cc}, p, c)
    return out


@lru_cache(maxsize=None)
def reduced_coproduct_mono(m: Mono, p: int, ambient: str = "full") -> tuple:
    """Delta(m) - m⊗1 - 1⊗m for positive-degree m, as sorted (pair, coeff) items."""
    out = coproduct_terms({m: 1}, p, ambient)
    vec_add(out, {(m, ONE): 1, (ONE, m): 1}, p, -1)
    return tuple(sorted(out.items()))


def counit(x: Mapping) -> int:
    return x.get(ONE, 0)


# ---------------------------------------------------------------------------
# antipode


@lru_cache(maxsize=None)
def antipode_xi(n: int, p: int) -> dict:
    """S(xi_n) from sum_k S(xi_{n-k})^{p^k} xi_k = 0."""
    if n == 0:
        return {ONE: 1}
    out: dict = {}
    for k in range(1, n + 1):
        term = mul(frobenius(antipode_xi(n - k, p), k, p), {xi(k): 1}, p)
        vec_add(out, term, p, -1)
    return out


@lru_cache(maxsize=None)
def antipode_tau(n: int, p: int) -> dict:
    """S(tau_n) from S(tau_n) + sum_k S(xi_{n-k})^{p^k} tau_k = 0."""
    out: dict = {}
    for k in range(n + 1):
        term = mul(frobenius(antipode_xi(n - k, p), k, p), {tau(k): 1}, p)
        vec_add(out, term, p, -1)
    return out


@lru_cache(maxsize=None)
def antipode_mono(m: Mono, p: int) -> dict:
    # graded commutativity makes the antihomomorphism multiplicative in order
    xs, ts = m
    out: dict = {ONE: 1}
    for i, r in enumerate(xs):
        if r:
            out = mul(out, power(antipode_xi(i + 1, p), r, p), p)
    for j in ts:
        out = mul(out, antipode_tau(j, p), p)
    return out


def antipode_terms(x: Mapping, p: int) -> dict:
    out: dict = {}
    for m, c in x.items():
        vec_add(out, antipode_mono(m, p), p, c)
    return out


# ---------------------------------------------------------------------------
# closed formula for powers of the conjugate total xi


def c_function(m: int, p: int) -> int:
    """p^i - m for the least i >= 0 with p^i > m."""
    q = 1
    while q <= m:
        q *= p
    return q - m


def _c_padic(m: int, e: int, p: int) -> int:
    """p^N - m for p^N > max(m, e).

    Agrees with c_function(m) modulo the digits binom(-, e) sees when e <= m,
    and stays correct for m <= 0 or e > m (very negative k), where the
    least-i recipe breaks down.
    """
    q = 1
    while q <= max(m, e):
        q *= p
    return q - m


def _xi_only_basis(n_value: int, p: int) -> list[tuple[int, ...]]:
    """Exponent sequences R with n(R) = sum r_i (p^i - 1) equal to n_value."""
    out = []

    def rec(rem, i, acc):
        if rem == 0:
            out.append(trim(acc))
            return
        w = p ** i - 1
        if w > rem:
            return
        for r in range(rem // w + 1):
            rec(rem - r * w, i + 1, acc + [r])

    rec(n_value, 1, [])
    return out


def xibar_power_component(k: int, t: int, p: int) -> dict:
    """Degree-t part of (conj xi)^k with xi = 1 + xi_1 + xi_2 + ..., by the closed formula.

    Sums binom(c(n(R) + k + 1), e(R)) * multinomial(R) * xi^R over R with
    deg xi^R = t.  Works for every integer k; c is read p-adically as p^N - m.
    """
    check_prime(p)
    scale = 1 if p == 2 else 2
    if t < 0 or t % scale:
        return {}
    n_value = t // scale
    m = n_value + k + 1
    out: dict = {}
    for r in _xi_only_basis(n_value, p):
        e = sum(r)
        c = binom_mod_p(_c_padic(m, e, p), e, p)
        if c:
            c = c * multinom_mod_p(r, p) % p
        if c:
            out[(r, ())] = c
    return out


def truncate(x: Mapping, p: int, bound: int) -> dict:
    return {m: c for m, c in x.items() if mono_degree(m, p) <= bound}


def xibar_series_power(k: int, bound: int, p: int) -> dict:
    """(conj xi)^k through degree ``bound`` by series arithmetic.

    conj xi = 1 + S(xi_1) + S(xi_2) + ... from the recursive antipode; negative
    powers invert the series degree by degree.
    """
    base: dict = {}
    n = 1
    while xi_degree(n, p) <= bound:
        vec_add(base, antipode_xi(n, p), p)
        n += 1
    if k < 0:
        # (1 + w)^{-1} = sum_j (-w)^j, w has positive degree
        neg_w = {m: -c % p for m, c in base.items()}
        inv: dict = {ONE: 1}
        term: dict = {ONE: 1}
        while True:
            term = truncate(mul(term, neg_w, p), p, bound)
            if not term:
                break
            vec_add(inv, term, p)
        factor, k = inv, -k
    else:
        factor = dict(base)
        factor[ONE] = 1
    out: dict = {ONE: 1}
    for _ in range(k):
        out = truncate(mul(out, factor, p), p, bound)
    return out


def component(x: Mapping, p: int, t: int) -> dict:
    return {m: c for m, c in x.items() if mono_degree(m, p) == t}


# ---------------------------------------------------------------------------
# element wrapper


class DualElement:
    """An element of the dual Steenrod algebra or one of its quotients."""

    __slots__ = ("p", "terms", "ambient")

    def __init__(self, p: int, terms: Mapping | None = None, ambient: str = "full"):
        check_prime(p)
        check_ambient(ambient)
        self.p = p
        self.ambient = ambient
        clean = {}
        for m, c in (terms or {}).items():
            m = (trim(m[0]), tuple(m[1]))
            if p == 2 and m[1]:
                raise ValueError("no tau generators at p = 2")
            if list(m[1]) != sorted(set(m[1])):
                raise ValueError(f"tau indices must be strictly increasing: {m[1]}")
            if not in_ambient(m, ambient):
                raise ValueError(f"{m} does not lie in {ambient}")
            c %= p
            if c:
                clean[m] = (clean.get(m, 0) + c) % p
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def xi(cls, n: int, p: int, ambient: str = "full") -> "DualElement":
        return cls(p, {xi(n): 1}, ambient)

    @classmethod
    def tau(cls, n: int, p: int, ambient: str = "full") -> "DualElement":
        return cls(p, {tau(n): 1}, ambient)

    @classmethod
    def one(cls, p: int, ambient: str = "full") -> "DualElement":
        return cls(p, {ONE: 1}, ambient)

    def _check(self, other):
        if self.p != other.p or self.ambient != other.ambient:
            raise ValueError("prime or ambient mismatch")

    def __eq__(self, other):
        if isinstance(other, DualElement):
            return (self.p, self.ambient, self.terms) == (other.p, other.ambient, other.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.ambient, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        self._check(other)
        return DualElement(self.p, vec_add(dict(self.terms), other.terms, self.p), self.ambient)

    def __neg__(self):
        return DualElement(self.p, {m: -c for m, c in self.terms.items()}, self.ambient)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return DualElement(self.p, {m: c * other for m, c in self.terms.items()}, self.ambient)
        return dual_product(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        return DualElement(self.p, power(self.terms, k, self.p), self.ambient)

    def __repr__(self):
        return f"DualElement({self.p}, {self}, {self.ambient!r})"

    def __str__(self):
        return format_terms(self.terms, self.p)

    def degree(self) -> int | None:
        degs = {mono_degree(m, self.p) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def to_json(self) -> dict:
        return {"p": self.p, "ambient": self.ambient,
                "terms": [{"coeff": c, "xi": list(m[0]), "tau": list(m[1])}
                          for m, c in sorted_terms(self.terms, self.p)]}

    @classmethod
    def from_json(cls, data: dict) -> "DualElement":
        p = data["p"]
        acc: dict = {}
        for t in data["terms"]:
            ts = list(t.get("tau", []))
            sign = 1
            # accept unsorted tau lists, applying the exterior sign
            for i in range(len(ts)):
                for j in range(len(ts) - 1 - i):
                    if ts[j] > ts[j + 1]:
                        ts[j], ts[j + 1] = ts[j + 1], ts[j]
                        sign = -sign
            if len(set(ts)) != len(ts):
                continue
            vec_add(acc, {(trim(t.get("xi", [])), tuple(ts)): sign * t["coeff"]}, p)
        return cls(p, acc, data.get("ambient", "full"))


def sort_key(m: Mono, p: int):
    return (mono_degree(m, p), m[0], m[1])


def sorted_terms(terms: Mapping, p: int):
    return sorted(terms.items(), key=lambda kv: sort_key(kv[0], p))


def mono_name(m: Mono) -> str:
    parts = []
    for i, r in enumerate(m[0]):
        if r == 1:
            parts.append(f"xi{i + 1}")
        elif r:
            parts.append(f"xi{i + 1}^{r}")
    parts.extend(f"tau{j}" for j in m[1])
    return "*".join(parts) or "1"


def format_terms(terms: Mapping, p: int) -> str:
    if not terms:
        return "0"
    out = []
    for m, c in sorted_terms(terms, p):
        name = mono_name(m)
        out.append(name if c == 1 else f"{c}*{name}" if name != "1" else str(c))
    return " + ".join(out)


def dual_product(a: DualElement, b: DualElement) -> DualElement:
    a._check(b)
    return DualElement(a.p, mul(a.terms, b.terms, a.p), a.ambient)


def coproduct(x: DualElement) -> dict:
    """Delta(x) as {(left, right): coeff}, using the ambient's induced coproduct."""
    return coproduct_terms(x.terms, x.p, x.ambient)


def antipode(x: DualElement) -> DualElement:
    if x.ambient == "full":
        return DualElement(x.p, antipode_terms(x.terms, x.p))
    # quotients are Hopf quotients: lift, conjugate, project
    return project(DualElement(x.p, antipode_terms(x.terms, x.p)), x.ambient)


def project(x: DualElement, target: str) -> DualElement:
    check_ambient(target)
    if x.ambient != "full" and x.ambient != target:
        raise ValueError(f"can only project from the full algebra, not {x.ambient}")
    return DualElement(x.p, {m: c for m, c in x.terms.items() if in_ambient(m, target)}, target)


def xibar(n: int, p: int) -> DualElement:
    """The conjugate S(xi_n)."""
    return DualElement(p, antipode_xi(n, p))


def taubar(n: int, p: int) -> DualElement:
    return DualElement(p, antipode_tau(n, p))
