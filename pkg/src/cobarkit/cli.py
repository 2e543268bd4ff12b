"""Command-line interface: one subcommand per public operation, JSON in and out.

Exit status: 0 ok, 1 internal failure, 2 validation error, 3 resource limit.
Errors are reported as a JSON object on standard error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from . import __version__, adams, cobar, comodules, dual, steenrod
from .cache import cache_get_or_compute, cache_key, canonical
from .fp import NotPrimeError, check_odd_prime, check_prime, partitions_min2

COALGEBRA_NAMES = {
    "full": "full", "lambda-tau0": "Lambda_tau0", "a-mod-a-prime": "A_mod_A_prime",
    "a-prime": "A_prime",
}
for _v in list(COALGEBRA_NAMES.values()):
    COALGEBRA_NAMES[_v] = _v


class ValidationError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


@dataclass
class JobSpec:
    subcommand: str
    prime: int | None
    bounds: dict
    payload: dict = field(default_factory=dict)
    output: str | None = None
    fmt: str = "json"
    cache_dir: str | None = None


# ---------------------------------------------------------------------------
# input helpers


def _load_input(args) -> Any:
    if getattr(args, "element", None):
        return json.loads(args.element)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            return json.load(fh)
    return None


def _need(value, name):
    if value is None:
        raise ValidationError(f"--{name} is required")
    return value


def _dual_input(args, p) -> dual.DualElement:
    data = _load_input(args)
    if data is not None:
        data.setdefault("p", p)
        if data["p"] != p:
            raise ValidationError("element prime differs from --prime")
        return dual.DualElement.from_json(data)
    if args.xi is not None:
        return dual.DualElement.xi(args.xi, p)
    if args.tau is not None:
        return dual.DualElement.tau(args.tau, p)
    raise ValidationError("give --element, --input, --xi or --tau")


def _poly_input(args, p, algebra) -> comodules.ComodulePoly:
    data = _load_input(args)
    if data is not None:
        data.setdefault("p", p)
        data.setdefault("algebra", algebra)
        if data["p"] != p:
            raise ValidationError("element prime differs from --prime")
        return comodules.ComodulePoly.from_json(data)
    if args.gen is not None:
        return comodules.ComodulePoly.generator(args.gen, p, algebra, args.power)
    raise ValidationError("give --element, --input or --gen")


def _tensor_json(terms: dict, p: int) -> dict:
    out = []
    for (a, b), c in sorted(terms.items(), key=lambda kv: (dual.sort_key(kv[0][0], p),
                                                           dual.sort_key(kv[0][1], p))):
        out.append({"coeff": c, "left": {"xi": list(a[0]), "tau": list(a[1])},
                    "right": {"xi": list(b[0]), "tau": list(b[1])}})
    return {"p": p, "terms": out}


# ---------------------------------------------------------------------------
# subcommand bodies: each takes (args, p) and returns a JSON-able value


def cmd_adem(args, p):
    data = _load_input(args)
    if data is not None:
        return steenrod.SteenrodElement.from_json(data, p).to_json()
    return steenrod.from_word(_need(args.word, "word"), p).to_json()


def cmd_basis(args, p):
    t = _need(args.degree, "degree")
    elems = [steenrod.SteenrodElement(p, {w: 1}).to_json()["terms"][0]
             for w in steenrod.admissible_basis(p, t)]
    return {"p": p, "degree": t, "basis": elems}


def cmd_milnor_basis(args, p):
    t = _need(args.degree, "degree")
    ms = dual.milnor_basis(p, t, args.ambient)
    return {"p": p, "degree": t, "ambient": args.ambient,
            "basis": [{"xi": list(m[0]), "tau": list(m[1])} for m in ms]}


def cmd_coproduct(args, p):
    return _tensor_json(dual.coproduct(_dual_input(args, p)), p)


def cmd_antipode(args, p):
    return dual.antipode(_dual_input(args, p)).to_json()


def cmd_xibar(args, p):
    t = _need(args.degree, "degree")
    return dual.DualElement(p, dual.xibar_power_component(_need(args.k, "k"), t, p)).to_json()


def cmd_coaction(args, p):
    check_odd_prime(p)
    x = _poly_input(args, p, args.algebra)
    if x.algebra == "MU":
        terms = comodules.coaction_mu(x)
    elif x.algebra == "APrime_tensor_PH":
        return comodules.coaction_tensor_json(comodules.coaction_aprime_ph(x), p, split=True)
    else:
        terms = comodules.coaction_msu(x)
    return comodules.coaction_tensor_json(terms, p)


def cmd_primitives(args, p):
    check_odd_prime(p)
    t = _need(args.degree, "degree")
    basis = comodules.primitives(p, t)
    return {"p": p, "degree": t, "dim": len(basis), "basis": [b.to_json() for b in basis]}


def cmd_split_g(args, p):
    check_odd_prime(p)
    return comodules.splitting_G(_poly_input(args, p, "MSU")).to_json()


def cmd_verify_g(args, p):
    return comodules.verify_G_iso(check_odd_prime(p), _need(args.tmax, "tmax"))


def cmd_include_mu(args, p):
    check_odd_prime(p)
    return comodules.mu_inclusion(_poly_input(args, p, "MSU")).to_json()


def cmd_member_msu(args, p):
    check_odd_prime(p)
    ok, pre = comodules.is_in_msu(_poly_input(args, p, "MU"))
    return {"member": ok, "preimage": pre.to_json() if pre is not None else None}


def cmd_cobar_d(args, p):
    check_odd_prime(p)
    data = _load_input(args)
    if data is None:
        raise ValidationError("cobar-d needs --element or --input")
    data.setdefault("p", p)
    x = cobar.CobarElement.from_json(data)
    return cobar.cobar_d(x).to_json()


def cmd_class_q(args, p):
    check_odd_prime(p)
    return cobar.class_Q(_need(args.t, "t"), p, args.comodule).to_json()


def cmd_cotor(args, p):
    check_odd_prime(p)
    dims = cobar.cotor_dims(COALGEBRA_NAMES[args.coalgebra], args.comodule,
                            _need(args.smax, "smax"), _need(args.tmax, "tmax"), p, args.size_limit)
    return dims.to_json()


def cmd_change_of_rings(args, p):
    check_odd_prime(p)
    return cobar.change_of_rings_check(p, _need(args.smax, "smax"), _need(args.tmax, "tmax"),
                                       args.size_limit)


def cmd_e2(args, p):
    check_odd_prime(p)
    s_max, t_max = _need(args.smax, "smax"), _need(args.tmax, "tmax")
    if args.direct:
        return adams.e2_direct_vs_model(p, s_max, t_max, args.size_limit)
    return adams.e2_model_dims(p, s_max, t_max).to_json()


def cmd_odd_vanishing(args, p):
    check_odd_prime(p)
    s_max, t_max = _need(args.smax, "smax"), _need(args.tmax, "tmax")
    return {"p": p, "smax": s_max, "tms_max": t_max,
            "odd_vanishing": adams.odd_vanishing(p, s_max, t_max)}


def cmd_pi_rank(args, p):
    n = _need(args.n, "n")
    return {"n": n, "rank": adams.pi_rank(n), "partitions_min2": partitions_min2(n)}


def cmd_lambda(args, p):
    n = _need(args.n, "n")
    return {"n": n, "lambda": adams.lam(n)}


def cmd_sn_report(args, p):
    return adams.sn_report(_need(args.n, "n")).to_json()


def cmd_q_image(args, p):
    check_odd_prime(p)
    t = _need(args.t, "t")
    return {"p": p, "t": t, "holds": adams.q_image_check(t, p, args.comodule)}


COMMANDS: dict[str, tuple[Callable, str]] = {
    "adem": (cmd_adem, "normalize a Steenrod word to the admissible basis"),
    "basis": (cmd_basis, "admissible basis in one degree"),
    "milnor-basis": (cmd_milnor_basis, "Milnor basis of the dual algebra in one degree"),
    "coproduct": (cmd_coproduct, "coproduct of a dual Steenrod element"),
    "antipode": (cmd_antipode, "conjugate of a dual Steenrod element"),
    "xibar": (cmd_xibar, "degree component of conj(xi)^k by the closed formula"),
    "coaction": (cmd_coaction, "left coaction on H_*(MSU) or H_*(MU)"),
    "primitives": (cmd_primitives, "primitive basis of H_*(MSU) in one degree"),
    "split-g": (cmd_split_g, "splitting map H_*(MSU) -> A' ⊗ PH"),
    "verify-g": (cmd_verify_g, "check the splitting map is a comodule isomorphism"),
    "include-mu": (cmd_include_mu, "image of an MSU element in H_*(MU)"),
    "member-msu": (cmd_member_msu, "decide membership of an MU element in H_*(MSU)"),
    "cobar-d": (cmd_cobar_d, "cobar differential of a chain"),
    "class-q": (cmd_class_q, "the cobar cycle Q_t"),
    "cotor": (cmd_cotor, "Cotor dimension table"),
    "change-of-rings": (cmd_change_of_rings, "direct Cotor against F_p[q_*] ⊗ PH"),
    "e2": (cmd_e2, "E2 model dimensions (or --direct comparison)"),
    "odd-vanishing": (cmd_odd_vanishing, "check E2 vanishes for odd t - s"),
    "pi-rank": (cmd_pi_rank, "rank of pi_2n(MSU) ⊗ Z[1/2]"),
    "lambda": (cmd_lambda, "lambda_n"),
    "sn-report": (cmd_sn_report, "Milnor genus of the polynomial generator y_n"),
    "q-image": (cmd_q_image, "check the Lambda[tau_0] image of Q_t"),
}

# subcommands whose prime flag is irrelevant
_PRIME_FREE = {"pi-rank", "lambda", "sn-report"}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prime", "-p", type=int, default=None)
    common.add_argument("--tmax", type=int)
    common.add_argument("--smax", type=int)
    common.add_argument("--input", help="JSON file holding the input element")
    common.add_argument("--element", help="inline JSON input element")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--size-limit", type=int, default=cobar.DEFAULT_SIZE_LIMIT)

    parser = _Parser(prog="cobarkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if name == "adem":
            sp.add_argument("--word")
        if name in ("basis", "milnor-basis", "xibar", "primitives"):
            sp.add_argument("--degree", "-t", dest="degree", type=int)
        if name == "milnor-basis":
            sp.add_argument("--ambient", default="full", choices=dual.AMBIENTS)
        if name in ("coproduct", "antipode"):
            sp.add_argument("--xi", type=int)
            sp.add_argument("--tau", type=int)
        if name == "xibar":
            sp.add_argument("--k", type=int)
        if name in ("coaction", "split-g", "include-mu", "member-msu"):
            sp.add_argument("--gen", type=int, help="use the generator with this index")
            sp.add_argument("--power", type=int, default=1)
        if name == "coaction":
            sp.add_argument("--algebra", default="MSU", choices=comodules.ALGEBRAS)
        if name in ("class-q", "q-image"):
            sp.add_argument("--t", type=int)
            sp.add_argument("--comodule", default="APrime_tensor_PH",
                            choices=("APrime_tensor_PH", "MSU"))
        if name == "cotor":
            sp.add_argument("--coalgebra", default="full", choices=sorted(COALGEBRA_NAMES))
            sp.add_argument("--comodule", default="trivial", choices=comodules.COMODULES)
        if name == "e2":
            sp.add_argument("--direct", action="store_true",
                            help="compare direct cobar Cotor with the model (tmax is t)")
        if name in ("pi-rank", "lambda", "sn-report"):
            sp.add_argument("--n", type=int)
    return parser


def job_from_args(args) -> JobSpec:
    if args.command in _PRIME_FREE:
        prime = None
    else:
        if args.prime is None:
            raise ValidationError("--prime is required")
        prime = check_prime(args.prime)
    for name in ("tmax", "smax", "degree", "n", "t"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise ValidationError(f"--{name} must be nonnegative")
    bounds = {k: getattr(args, k, None) for k in
              ("tmax", "smax", "degree", "k", "n", "t", "size_limit") if getattr(args, k, None) is not None}
    payload = {k: v for k, v in sorted(vars(args).items())
               if k not in ("prime", "output", "format", "cache_dir", "no_cache", "input", "element")
               and k not in bounds}
    loaded = _load_input(args)
    if loaded is not None:
        payload["input"] = loaded
    cache_dir = None
    if not args.no_cache:
        cache_dir = args.cache_dir or os.environ.get("COBARKIT_CACHE") or None
    return JobSpec(args.command, prime, bounds, payload, args.output, args.format, cache_dir)


def render_table(result: Any) -> str:
    if isinstance(result, dict) and "entries" in result:
        dims = cobar.BigradedDims.from_json(result)
        ss = sorted({s for s, _ in dims.entries})
        ts = sorted({t for _, t in dims.entries})
        width = max(3, *(len(str(d)) for d in dims.entries.values())) if dims.entries else 3
        lines = ["s\\t " + " ".join(f"{t:>{width}}" for t in ts)]
        for s in reversed(ss):
            row = " ".join(f"{dims.entries[s, t]:>{width}}" if (s, t) in dims.entries else " " * width
                           for t in ts)
            lines.append(f"{s:>3} {row}")
        return "\n".join(lines) + "\n"
    if isinstance(result, dict) and "table" in result:
        lines = ["s t direct model equal"]
        lines += [f"{r['s']} {r['t']} {r['direct']} {r['model']} {r['equal']}" for r in result["table"]]
        lines.append(f"equal: {result['equal']}")
        return "\n".join(lines) + "\n"
    if isinstance(result, dict):
        return "".join(f"{k}: {canonical(v)}\n" for k, v in sorted(result.items()))
    return canonical(result) + "\n"


def run(job: JobSpec, args) -> str:
    func, _ = COMMANDS[job.subcommand]
    key = cache_key(__version__, job.subcommand, job.prime, job.bounds, job.payload)
    result = cache_get_or_compute(key, lambda: func(args, job.prime), job.cache_dir)
    if job.fmt == "table":
        return render_table(result)
    return canonical(result) + "\n"


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(canonical({"error": kind, "message": message, "exit": code}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise ValidationError("a subcommand is required")
        job = job_from_args(args)
        text = run(job, args)
    except cobar.ResourceLimitError as exc:
        return _fail("resource_limit", str(exc), 3)
    except (ValidationError, NotPrimeError, ValueError, KeyError, TypeError,
            json.JSONDecodeError, FileNotFoundError) as exc:
        return _fail("validation", f"{type(exc).__name__}: {exc}", 2)
    except Exception as exc:  # noqa: BLE001
        return _fail("internal", f"{type(exc).__name__}: {exc}", 1)
    if job.output:
        with open(job.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
