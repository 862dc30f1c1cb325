"""Batch front end: parse algebra/cocycle/multiloop specs, run a pipeline,
emit a deterministic machine-readable report on standard output.

Exit codes: 0 = all certificates pass, 1 = a mathematical check failed
(the report says which), 2 = input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .algebras import from_table, mat, sl, zero_algebra, zorn
from .canonical import (killing_form, killing_gamma_report, matrix_trace_form,
                        normalized_sl2_form, zorn_trace_form)
from .centroid import centroid, centroid_ibf_bridge, is_central
from .descent import (Cocycle, QuadGalois, descend_form, split_check, twist,
                      verify_functor_descent, verify_ibf_base_change)
from .domains import (QQ, ZZ, IntegersMod, Laurent, PrimeField, Scalar,
                      domain_from_json)
from .errors import ExactAlgebraError, NotInvariant
from .forms import BilinearForm
from .ibf import check_ibf_principle, ibf_module, invariant_form_space
from .linalg import Matrix
from .multiloop import (GradedAlgebra, MultiloopSpec, graded_form,
                        graded_uniqueness_certificate, killing_over_laurent,
                        multiloop)


def _parse_ring_token(token):
    token = token.strip()
    if token == "Z":
        return ZZ
    if token == "Q":
        return QQ
    if token.startswith("GF(") and token.endswith(")"):
        return PrimeField(int(token[3:-1]))
    if token.startswith("GF"):
        return PrimeField(int(token[2:]))
    if token.startswith("Zmod(") and token.endswith(")"):
        return IntegersMod(int(token[5:-1]))
    if token.startswith("Laurent(") and token.endswith(")"):
        return Laurent(_parse_ring_token(token[8:-1]))
    raise ValueError(f"unknown ring token {token!r}")


_BUILTINS = {
    "sl2": lambda dom: sl(2, dom),
    "sl3": lambda dom: sl(3, dom),
    "mat2": lambda dom: mat(2, dom),
    "mat3": lambda dom: mat(3, dom),
    "zorn": zorn,
}


def load_algebra(token):
    """A file path, or a builtin 'name@ring' such as sl2@Q or zorn@Z."""
    if "@" in token and not token.endswith(".json"):
        name, _, ring = token.partition("@")
        if name not in _BUILTINS:
            raise ValueError(f"unknown builtin algebra {name!r}")
        dom = _parse_ring_token(ring)
        alg = _BUILTINS[name](dom)
        digest = hashlib.sha256(
            json.dumps(alg.to_spec(), sort_keys=True).encode()).hexdigest()
        return alg, {"source": f"builtin:{token}", "digest": digest}
    with open(token, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    spec = json.loads(raw.decode())
    return from_table(spec, name=spec.get("name", token)), \
        {"source": token, "digest": digest}


def load_form(token, algebra):
    if token == "killing":
        return killing_form(algebra)
    if token == "gamma":
        return normalized_sl2_form(algebra.domain, algebra)
    if token == "trace":
        return matrix_trace_form(algebra)
    if token == "zorn":
        return zorn_trace_form(algebra)
    with open(token, "rb") as fh:
        spec = json.loads(fh.read().decode())
    dom = algebra.domain
    gram = Matrix(dom, [[Scalar(dom, dom.from_json(v)) for v in row]
                        for row in spec["gram"]])
    return BilinearForm(algebra, gram, name=spec.get("name", token))


def _gram_json(beta):
    dom = beta.gram.domain
    return [[dom.to_json(v.payload) for v in row] for row in beta.gram.a]


def _load_json(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    return json.loads(raw.decode()), hashlib.sha256(raw).hexdigest()


def _flags_json(beta):
    return {k: bool(v) for k, v in beta.flags().items()}


# ---------------------------------------------------------------------------
# subcommand implementations: each returns (results dict, ok bool)
# ---------------------------------------------------------------------------

def cmd_ibf(args, inputs):
    alg, meta = load_algebra(args.algebra)
    inputs["algebra"] = meta
    m = ibf_module(alg)
    forms = invariant_form_space(alg)
    return {
        "algebra": alg.name,
        "ring": alg.domain.name,
        "ibf": m.describe(),
        "invariant_form_space_rank": len(forms),
        "hom_rank_matches_oracle": len(forms) == m.hom_rank(),
    }, len(forms) == m.hom_rank()


def cmd_centroid(args, inputs):
    alg, meta = load_algebra(args.algebra)
    inputs["algebra"] = meta
    reg = centroid(alg, "regular")
    cert, _ = centroid_ibf_bridge(alg)
    return {
        "algebra": alg.name,
        "regular_rank": reg.rank(),
        "contains_identity": reg.contains_identity,
        "central": is_central(alg),
        "bridge": cert,
    }, cert["ok"]


def cmd_killing(args, inputs):
    alg, meta = load_algebra(args.algebra)
    inputs["algebra"] = meta
    kappa = killing_form(alg)
    res = {
        "algebra": alg.name,
        "gram": _gram_json(kappa),
        "flags": _flags_json(kappa),
    }
    if alg.n == 3 and alg.basis == ["e", "h", "f"]:
        res["gamma_proportionality"] = killing_gamma_report(alg.domain)
    return res, kappa.is_invariant()


def cmd_forms(args, inputs):
    alg, meta = load_algebra(args.algebra)
    inputs["algebra"] = meta
    beta = load_form(args.form, alg)
    return {
        "algebra": alg.name,
        "form": beta.name,
        "gram": _gram_json(beta),
        "flags": _flags_json(beta),
    }, beta.is_invariant()


def cmd_check_principle(args, inputs):
    alg, meta = load_algebra(args.algebra)
    inputs["algebra"] = meta
    beta = load_form(args.form, alg)
    try:
        cert = check_ibf_principle(alg, beta)
    except NotInvariant as exc:
        return {"algebra": alg.name, "form": beta.name,
                "error": str(exc), "holds": False}, False
    cert.pop("_preimage", None)
    return cert, cert["holds"]


def _build_twist(args, inputs):
    alg, meta = load_algebra(args.algebra)
    inputs["algebra"] = meta
    spec, digest = _load_json(args.cocycle)
    inputs["cocycle"] = {"source": args.cocycle, "digest": digest}
    d_raw = spec.get("d", args.ext_d)
    if d_raw is None:
        raise ValueError("cocycle file or --ext-d must supply d")
    base = alg.domain
    galois = QuadGalois(base, Scalar(base, base.from_json(d_raw)))
    S = galois.ext
    U = Matrix(S, [[Scalar(S, S.from_json(v)) for v in row]
                   for row in spec["U"]])
    return alg, twist(alg, galois, Cocycle(galois, U), name=f"{alg.name}.twist")


def cmd_twist(args, inputs):
    alg, tf = _build_twist(args, inputs)
    sc = split_check(tf)
    return {
        "source": alg.name,
        "extension": repr(tf.galois),
        "twisted_algebra": tf.algebra.to_spec(),
        "split_check": {"ok": sc["ok"], "det": sc["det"]},
    }, sc["ok"]


def cmd_verify_descent(args, inputs):
    alg, tf = _build_twist(args, inputs)
    kappa = load_form(args.form or "killing", alg)
    kB = descend_form(kappa, tf)
    principle = check_ibf_principle(tf.algebra, kB)
    principle.pop("_preimage", None)
    fd = verify_functor_descent(tf)
    sc = split_check(tf)
    ok = sc["ok"] and principle["holds"] and fd["ok"] and kB.is_nonsingular()
    return {
        "source": alg.name,
        "form": kappa.name,
        "descended_gram": _gram_json(kB),
        "descended_flags": _flags_json(kB),
        "split_check": {"ok": sc["ok"], "det": sc["det"]},
        "principle": principle,
        "functor_descent": fd,
    }, ok


def _load_multiloop(args, inputs):
    spec_json, digest = _load_json(args.spec)
    inputs["spec"] = {"source": args.spec, "digest": digest}
    if isinstance(spec_json["g"], str):
        g, meta = load_algebra(spec_json["g"])
        inputs["g"] = meta
    else:
        g = from_table(spec_json["g"], name=spec_json.get("name", "g"))
    dom = g.domain
    sigmas = [Matrix(dom, [[Scalar(dom, dom.from_json(v)) for v in row]
                           for row in s]) for s in spec_json["sigmas"]]
    orders = [int(m) for m in spec_json["orders"]]
    roots = [Scalar(dom, dom.from_json(z)) for z in spec_json["roots"]]
    return multiloop(MultiloopSpec(g, sigmas, orders, roots))


def cmd_multiloop(args, inputs):
    L = _load_multiloop(args, inputs)
    kappa = killing_over_laurent(L)
    cert = graded_uniqueness_certificate(L)
    return {
        "loop_algebra": L.algebra.name,
        "rank": L.algebra.n,
        "degrees": list(L.degrees),
        "killing_gram": _gram_json(kappa),
        "grading_violation": L.grading_violation(),
        "uniqueness": cert,
    }, cert["ok"] and L.grading_violation() is None


def cmd_graded(args, inputs):
    L = _load_multiloop(args, inputs)
    lo, hi = args.window
    gf = graded_form(L)
    violation = gf.delta_formula_violation((lo, hi))
    pairings = {}
    nonsingular = True
    for lam in range(lo, hi + 1):
        P = gf.pairing_matrix(lam)
        if P.nrows == 0:
            continue
        det = P.det() if P.nrows == P.ncols else None
        ok = det is not None and bool(det)
        nonsingular = nonsingular and ok
        pairings[str(lam)] = {
            "size": [P.nrows, P.ncols],
            "det": None if det is None else L.k.to_json(det.payload),
            "nonsingular": ok,
        }
    ok = violation is None and nonsingular
    return {
        "loop_algebra": L.algebra.name,
        "window": [lo, hi],
        "delta_formula_violation": violation,
        "pairings": pairings,
    }, ok


_COMMANDS = {
    "ibf": cmd_ibf,
    "centroid": cmd_centroid,
    "killing": cmd_killing,
    "forms": cmd_forms,
    "check-principle": cmd_check_principle,
    "twist": cmd_twist,
    "verify-descent": cmd_verify_descent,
    "multiloop": cmd_multiloop,
    "graded": cmd_graded,
}


def _window(text):
    lo, _, hi = text.partition("..")
    return int(lo), int(hi)


def build_parser():
    p = argparse.ArgumentParser(
        prog="ibforms",
        description="Exact certificates for invariant bilinear forms of "
                    "structure-constant algebras.")
    p.add_argument("command", choices=sorted(_COMMANDS))
    p.add_argument("--algebra", help="algebra spec file or builtin name@ring")
    p.add_argument("--form", default="killing",
                   help="killing | gamma | trace | zorn | FILE")
    p.add_argument("--ext-d", dest="ext_d",
                   help="quadratic extension parameter d")
    p.add_argument("--cocycle", help="cocycle JSON file")
    p.add_argument("--spec", help="multiloop spec JSON file")
    p.add_argument("--window", type=_window, default=(-3, 3),
                   help="degree window LO..HI")
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--seed", type=int, default=None,
                   help="echoed into the report for seeded pipelines")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {}
    report = {
        "tool": "ibforms",
        "version": __version__,
        "command": args.command,
        "inputs": inputs,
    }
    if args.seed is not None:
        report["seed"] = args.seed
    try:
        results, ok = _COMMANDS[args.command](args, inputs)
    except json.JSONDecodeError as exc:
        print(f"input error: bad JSON at line {exc.lineno} column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, ExactAlgebraError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    report["results"] = results
    report["ok"] = bool(ok)
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
