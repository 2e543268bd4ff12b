"""The mod-p Steenrod algebra in the admissible (Cartan-Serre) basis.

Monomials are tuples.  At p = 2 a monomial is ``(k_1, ..., k_m)`` meaning
Sq^{k_1} ... Sq^{k_m}.  At odd p it is the interleaved sequence
``(e_0, s_1, e_1, ..., s_m, e_m)`` meaning
beta^{e_0} P^{s_1} beta^{e_1} ... P^{s_m} beta^{e_m} with e_i in {0, 1}.
Bocksteins live in the e-slots, so beta*beta collapses structurally.
The unit is ``()`` at p = 2 and ``(0,)`` at odd p.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .fp import binom_mod_p, check_prime, vec_add

Word = tuple


def unit_word(p: int) -> Word:
    return () if p == 2 else (0,)


def word_degree(word: Word, p: int) -> int:
    if p == 2:
        return sum(word)
    return sum(word[0::2]) + 2 * (p - 1) * sum(word[1::2])


def is_admissible(word: Word, p: int) -> bool:
    if p == 2:
        return all(k > 0 for k in word) and all(
            word[i] >= 2 * word[i + 1] for i in range(len(word) - 1))
    if len(word) % 2 == 0 or any(e not in (0, 1) for e in word[0::2]):
        return False
    s = word[1::2]
    e = word[0::2]
    return all(x > 0 for x in s) and all(
        s[i] >= p * s[i + 1] + e[i + 1] for i in range(len(s) - 1))


def _clean(word: list, p: int) -> Word | None:
    """Drop Sq^0 / P^0 letters; None if two Bocksteins become adjacent."""
    if p == 2:
        return tuple(k for k in word if k)
    out = [word[0]]
    for i in range(1, len(word), 2):
        s, e = word[i], word[i + 1]
        if s == 0:
            out[-1] += e
            if out[-1] > 1:
                return None
        else:
            out.extend((s, e))
    return tuple(out)


@lru_cache(maxsize=None)
def _normalize_word(word: Word, p: int) -> tuple[tuple[Word, int], ...]:
    """Admissible expansion of a clean word, rewriting the leftmost bad pair."""
    if p == 2:
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a < 2 * b:
                break
        else:
            return ((word, 1),)
        acc: dict = {}
        for j in range(a // 2 + 1):
            c = binom_mod_p(b - j - 1, a - 2 * j, 2)
            if c:
                new = _clean(list(word[:i]) + [a + b - j, j] + list(word[i + 2:]), 2)
                for w, cw in _normalize_word(new, 2):
                    vec_add(acc, {w: cw}, 2, c)
        return tuple(sorted(acc.items()))

    m = len(word) // 2
    for i in range(1, m):
        a, e, b = word[2 * i - 1], word[2 * i], word[2 * i + 1]
        if a < p * b + e:
            break
    else:
        return ((word, 1),)
    prefix = list(word[:2 * i - 1])
    suffix = list(word[2 * i + 2:])
    acc = {}

    def push(new_word, c):
        new = _clean(new_word, p)
        if new is None or not c % p:
            return
        for w, cw in _normalize_word(new, p):
            vec_add(acc, {w: cw}, p, c)

    sign = lambda k: -1 if k % 2 else 1  # noqa: E731
    if e == 0:
        for j in range(a // p + 1):
            c = sign(a + j) * binom_mod_p((p - 1) * (b - j) - 1, a - p * j, p)
            push(prefix + [a + b - j, 0, j] + suffix, c)
    else:
        for j in range(a // p + 1):
            c = sign(a + j) * binom_mod_p((p - 1) * (b - j), a - p * j, p)
            if c % p and prefix[-1] == 0:
                push(prefix[:-1] + [1, a + b - j, 0, j] + suffix, c)
        for j in range((a - 1) // p + 1):
            c = sign(a + j + 1) * binom_mod_p((p - 1) * (b - j) - 1, a - p * j - 1, p)
            push(prefix + [a + b - j, 1, j] + suffix, c)
    return tuple(sorted(acc.items()))


class SteenrodElement:
    """A finite F_p-combination of admissible monomials."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[Word, int] | None = None):
        check_prime(p)
        self.p = p
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if not is_admissible(w, p):
                raise ValueError(f"{w} is not admissible at p={p}; use adem_normalize")
            c %= p
            if c:
                clean[w] = c
        self.terms = clean

    # constructors
    @classmethod
    def unit(cls, p: int) -> "SteenrodElement":
        return cls(p, {unit_word(p): 1})

    @classmethod
    def Sq(cls, k: int) -> "SteenrodElement":
        return adem_normalize({(k,): 1}, 2)

    @classmethod
    def P(cls, k: int, p: int) -> "SteenrodElement":
        return adem_normalize({(0, k, 0): 1}, p)

    @classmethod
    def beta(cls, p: int) -> "SteenrodElement":
        return cls(p, {(1,): 1})

    @property
    def degree(self) -> int | None:
        """Common degree of the terms; None for zero or mixed-degree elements."""
        degs = {word_degree(w, self.p) for w in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other):
        if isinstance(other, SteenrodElement):
            return self.p == other.p and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        _same_prime(self, other)
        return SteenrodElement(self.p, vec_add(dict(self.terms), other.terms, self.p))

    def __neg__(self):
        return SteenrodElement(self.p, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SteenrodElement(self.p, {w: c * other for w, c in self.terms.items()})
        return product(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"SteenrodElement({self.p}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (word_degree(w, self.p), w)):
            c = self.terms[w]
            name = word_name(w, self.p)
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        out = []
        for w in sorted(self.terms, key=lambda w: (word_degree(w, self.p), w)):
            c = self.terms[w]
            if self.p == 2:
                out.append({"coeff": c, "sq": list(w)})
            else:
                out.append({"coeff": c, "eps": list(w[0::2]), "pows": list(w[1::2])})
        return {"terms": out}

    @classmethod
    def from_json(cls, data: dict, p: int) -> "SteenrodElement":
        """Read the JSON form; inadmissible words are Adem-normalized."""
        raw: dict = {}
        for t in data["terms"]:
            if p == 2:
                w = tuple(t["sq"])
            else:
                eps, pows = list(t["eps"]), list(t["pows"])
                if len(eps) != len(pows) + 1:
                    raise ValueError("eps must have one more entry than pows")
                w = tuple(x for pair in zip(eps, pows + [None]) for x in pair if x is not None)
            vec_add(raw, {w: t["coeff"]}, p)
        return adem_normalize(raw, p)


def _same_prime(a, b):
    if a.p != b.p:
        raise ValueError(f"prime mismatch: {a.p} vs {b.p}")


def word_name(word: Word, p: int) -> str:
    if p == 2:
        return "".join(f"Sq{k}" for k in word) or "1"
    out = []
    for i, x in enumerate(word):
        if i % 2 == 0:
            out.extend(["b"] * x)
        else:
            out.append(f"P{x}")
    return "".join(out) or "1"


def adem_normalize(words: Mapping[Word, int] | SteenrodElement, p: int | None = None) -> SteenrodElement:
    """Rewrite a combination of arbitrary words into the admissible basis.

    Odd-p words use the interleaved layout but the e-slots may hold any
    nonnegative count; counts above 1 are beta^2 = 0.
    """
    if isinstance(words, SteenrodElement):
        p, words = words.p, words.terms
    check_prime(p)
    acc: dict = {}
    for w, c in words.items():
        w = list(w)
        if p != 2:
            if len(w) % 2 == 0:
                raise ValueError(f"malformed odd-prime word {tuple(w)}")
            if any(e > 1 for e in w[0::2]):
                continue
        if any(x < 0 for x in w):
            raise ValueError(f"negative exponent in {tuple(w)}")
        clean = _clean(w, p)
        if clean is None:
            continue
        for nw, cw in _normalize_word(clean, p):
            vec_add(acc, {nw: cw}, p, c)
    return SteenrodElement(p, acc)


def product(a: SteenrodElement, b: SteenrodElement) -> SteenrodElement:
    _same_prime(a, b)
    p = a.p
    raw: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            if p == 2:
                w = wa + wb
            else:
                w = wa[:-1] + (wa[-1] + wb[0],) + wb[1:]
            vec_add(raw, {w: ca * cb}, p)
    return adem_normalize(raw, p)


_TOKEN = re.compile(r"(Sq|P)\^?\{?(\d+)\}?|(beta|b|B)")


def parse_word(text: str, p: int) -> Word:
    """Parse e.g. ``"Sq2 Sq2"`` or ``"P1 b P1"`` into a raw word."""
    check_prime(p)
    text = text.replace("*", " ")
    pos = 0
    letters = []
    for m in _TOKEN.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse {text[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        if m.group(3):
            letters.append("b")
        else:
            kind, k = m.group(1), int(m.group(2))
            if (kind == "Sq") != (p == 2):
                raise ValueError(f"{kind} is not a generator at p={p}")
            letters.append(k)
    if text[pos:].strip():
        raise ValueError(f"cannot parse {text[pos:]!r} in {text!r}")
    if p == 2:
        if "b" in letters:
            letters = [1 if x == "b" else x for x in letters]
        return tuple(letters)
    word = [0]
    for x in letters:
        if x == "b":
            word[-1] += 1
        else:
            word.extend((x, 0))
    return tuple(word)


def from_word(text: str, p: int) -> SteenrodElement:
    return adem_normalize({parse_word(text, p): 1}, p)


def _admissible_rec(p: int, rem: int, tail: tuple) -> Iterator[Word]:
    # tail starts with an e-slot; extend leftwards by (e_{i-1}, s_i)
    if rem == 0:
        yield tail
    s_next = tail[1] if len(tail) > 1 else 0
    lo = max(1, p * s_next + tail[0])
    step = 2 * (p - 1)
    for e in (0, 1):
        s = lo
        while step * s + e <= rem:
            yield from _admissible_rec(p, rem - step * s - e, (e, s) + tail)
            s += 1


def _admissible_rec2(rem: int, tail: tuple) -> Iterator[Word]:
    if rem == 0:
        yield tail
    lo = 2 * tail[0] if tail else 1
    for k in range(lo, rem + 1):
        yield from _admissible_rec2(rem - k, (k,) + tail)


@lru_cache(maxsize=None)
def _admissible_basis(p: int, t: int) -> tuple[Word, ...]:
    if t < 0:
        return ()
    if p == 2:
        return tuple(sorted(_admissible_rec2(t, ())))
    out = []
    for e in (0, 1):
        if e <= t:
            out.extend(_admissible_rec(p, t - e, (e,)))
    return tuple(sorted(out))


def admissible_basis(p: int, t: int) -> list[Word]:
    """All admissible monomials of degree t."""
    check_prime(p)
    return list(_admissible_basis(p, t))


def act_cp_infty(op: SteenrodElement, n: int) -> dict[int, int]:
    """Action on x^n in H^*(CP^infty; F_p), returned as {exponent: coeff}.

    Uses P^k(x^n) = C(n, k) x^{n + k(p-1)} (Sq^{2k}(x^n) = C(n, k) x^{n+k}),
    and beta / odd squares act by zero since the cohomology is even.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = op.p
    out: dict = {}
    for w, c in op.terms.items():
        exp, coeff = n, c
        if p == 2:
            for k in reversed(w):
                if k % 2:
                    coeff = 0
                    break
                coeff = coeff * binom_mod_p(exp, k // 2, 2) % 2
                exp += k // 2
                if not coeff:
                    break
        else:
            if any(w[0::2]):
                continue
            for s in reversed(w[1::2]):
                coeff = coeff * binom_mod_p(exp, s, p) % p
                exp += s * (p - 1)
                if not coeff:
                    break
        if coeff:
            vec_add(out, {exp: coeff}, p)
    return out


def act_cp_infty_poly(op: SteenrodElement, poly: Mapping[int, int]) -> dict[int, int]:
    """Linear extension of act_cp_infty to polynomials {exponent: coeff}."""
    out: dict = {}
    for n, c in poly.items():
        vec_add(out, act_cp_infty(op, n), op.p, c)
    return out


def generator_words(p: int, max_degree: int) -> list[Word]:
    """The algebra generators Sq^k (or beta and P^k) of degree <= max_degree."""
    if p == 2:
        return [(k,) for k in range(1, max_degree + 1)]
    out = [(1,)] if max_degree >= 1 else []
    k = 1
    while 2 * (p - 1) * k <= max_degree:
        out.append((0, k, 0))
        k += 1
    return out


def concat_words(words: Iterable[Word], p: int) -> Word:
    out: list = list(unit_word(p))
    for w in words:
        if p == 2:
            out.extend(w)
        else:
            out[-1] += w[0]
            out.extend(w[1:])
    return tuple(out)
