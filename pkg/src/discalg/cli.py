"""Command-line front end.

Exit status: 0 success, 1 unparseable input, 2 invariant violation,
3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .algebra import (
    AlgebraHomomorphism,
    FreeAlgebra,
    algebra_from_json,
    algebra_to_json,
    base_change,
    canonical_hom,
    disc_bilinear,
    discriminant,
)
from .delta import (
    QuadraticAlgebra,
    base_factor,
    delta_of_hom,
    discriminant_algebra,
    gamma_alternating,
    norm_fast,
    norm_general,
    reduce,
    schur_trace,
    star_product,
)
from .errors import AlgebraAxiomError, CapExceededError, InconsistencyError, NotNormPreservingError
from .exactla import det
from .ferrand import (
    REWRITING_CAP,
    elementary_invariant,
    ferrand_via_rewriting,
    multidegrees,
    phi,
    phi_orbit,
)
from .ring import Integers, IntegersMod, NoExactQuotient, ParseError, Ring, RingError, element_to_json, ring_from_json

EXIT_PARSE = 1
EXIT_INVARIANT = 2
EXIT_CAP = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="discalg", description="Discriminant algebras of finite free algebras.")
    p.add_argument("command", choices=["charpoly", "disc", "delta", "phi", "star", "verify", "table", "axioms"])
    p.add_argument("input", nargs="?", help="JSON file, inline JSON, or - for stdin")
    p.add_argument("--ring", help="coefficient ring, e.g. ZZ, QQ, ZZ/4, ZZ[s,t,u]; overrides the input")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--cap-override", action="store_true", help="allow computations beyond the size caps")
    p.add_argument("--path", choices=["fast", "general", "both", "auto"], default="auto",
                   help="how to compute N")
    p.add_argument("--alpha", help="multidegree for phi, as a JSON list")
    p.add_argument("--element", help="element coordinates for charpoly, as a JSON list")
    p.add_argument("--from", dest="n_from", type=int, default=2, help="first n for table")
    p.add_argument("--to", dest="n_to", type=int, default=11, help="last n for table")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks in verify")
    return p


def _load(text: str | None):
    if text is None:
        raise ParseError("this command needs an input")
    if text == "-":
        raw = sys.stdin.read()
    elif os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _ring(args, obj) -> Ring:
    if args.ring:
        return ring_from_json(args.ring)
    if isinstance(obj, dict) and "ring" in obj:
        return ring_from_json(obj["ring"])
    return Integers()


def _algebra(args, validate=True) -> FreeAlgebra:
    obj = _load(args.input)
    return algebra_from_json(obj, ring=_ring(args, obj), validate=validate)


def _json_list(text, what):
    try:
        val = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad {what}: {exc}") from exc
    if not isinstance(val, list):
        raise ParseError(f"{what} must be a JSON list")
    return val


def _delta_payload(Q: QuadraticAlgebra, disc) -> dict:
    enc = lambda x: element_to_json(Q.ring, x)  # noqa: E731
    return {"T": enc(Q.T), "N": enc(Q.N), "disc": enc(disc), "presentation": Q.presentation()}


def _delta_text(Q: QuadraticAlgebra, disc) -> str:
    f = Q.ring.format
    return (f"T = {f(Q.T)}\nN = {f(Q.N)}\ndisc = {f(disc)}\n"
            f"Delta = {str(Q.ring)}[X]/(X^2 - ({f(Q.T)})X + ({f(Q.N)}))")


# -- commands ----------------------------------------------------------------

def cmd_charpoly(args):
    A = _algebra(args)
    enc = lambda x: element_to_json(A.ring, x)  # noqa: E731
    if args.element:
        elems = [A.element([A.ring.coerce(c) for c in _json_list(args.element, "element")])]
    else:
        elems = A.basis_elements()
    rows = [{"element": [enc(c) for c in x], "charpoly": [enc(c) for c in A.char_poly(x)]} for x in elems]
    if args.format == "text":
        lines = []
        for r, x in zip(rows, elems):
            coeffs = A.char_poly(x)
            lines.append(f"({', '.join(A.ring.format(c) for c in x)}): "
                         + ", ".join(A.ring.format(c) for c in coeffs))
        return "\n".join(lines), 0
    return {"charpolys": rows}, 0


def cmd_disc(args):
    A = _algebra(args)
    d = discriminant(A)
    if args.format == "text":
        return f"disc = {A.ring.format(d)}", 0
    return {"disc": element_to_json(A.ring, d)}, 0


def cmd_delta(args):
    A = _algebra(args)
    Q = discriminant_algebra(A, path=args.path, cap_override=args.cap_override)
    d = discriminant(A)
    if args.format == "text":
        return _delta_text(Q, d), 0
    return _delta_payload(Q, d), 0


def cmd_phi(args):
    A = _algebra(args)
    enc = lambda x: element_to_json(A.ring, x)  # noqa: E731
    if args.alpha:
        alphas = [tuple(int(a) for a in _json_list(args.alpha, "alpha"))]
    else:
        alphas = list(multidegrees(A.rank))
    try:
        vals = [(a, phi_orbit(A, a, args.cap_override)) for a in alphas]
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    if args.format == "text":
        return "\n".join(f"phi{list(a)} = {A.ring.format(v)}" for a, v in vals), 0
    return {"values": [{"alpha": list(a), "phi": enc(v)} for a, v in vals]}, 0


def cmd_star(args):
    obj = _load(args.input)
    ring = _ring(args, obj)
    if isinstance(obj, dict) and "quadratics" in obj:
        try:
            qs = [QuadraticAlgebra(ring, ring.coerce(t), ring.coerce(n)) for t, n in obj["quadratics"]]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad quadratics list: {exc}") from exc
    elif isinstance(obj, dict) and obj.get("algebra", {}).get("type") == "product":
        factors = [algebra_from_json({"algebra": f}, ring=ring) for f in obj["algebra"]["factors"]]
        qs = [discriminant_algebra(F, path=args.path, cap_override=args.cap_override) for F in factors]
    else:
        raise ParseError("star needs a 'quadratics' list or a product algebra")
    if not qs:
        raise ParseError("star needs at least one factor")
    result = qs[0]
    for q in qs[1:]:
        result = star_product(result, q, path=args.path)
    disc = result.disc()
    if args.format == "text":
        return _delta_text(result, disc), 0
    payload = _delta_payload(result, disc)
    payload["factors"] = [[element_to_json(ring, q.T), element_to_json(ring, q.N)] for q in qs]
    return payload, 0


def cmd_table(args):
    if args.n_from < 2 or args.n_to < args.n_from:
        raise ParseError("table needs 2 <= --from <= --to")
    rows = []
    for n in range(args.n_from, args.n_to + 1):
        if n > 12 and not args.cap_override:
            raise CapExceededError(f"table entry n = {n} exceeds the polarization cap of 12")
        rows.append({"n": n, "T": schur_trace(n)})
    if args.format == "text":
        return "\n".join(f"{r['n']:>3} {r['T']}" for r in rows), 0
    return {"table": rows}, 0


def cmd_axioms(args):
    A = _algebra(args, validate=False)
    rep = A.check_axioms()
    payload = {
        "associative": not rep.associative,
        "commutative": not rep.commutative,
        "unital": not rep.unital,
        "ok": rep.ok,
        "algebra": algebra_to_json(A),
    }
    status = 0 if rep.ok else EXIT_INVARIANT
    if args.format == "text":
        return rep.summary(), status
    return payload, status


def verify_checks(A: FreeAlgebra, path: str = "auto", seed: int = 0, cap_override: bool = False):
    """Run the invariant suite on A; yields (name, passed, detail)."""
    ring = A.ring
    rng = random.Random(seed)
    rep = A.check_axioms()
    yield "axioms", rep.ok, rep.summary()
    if not rep.ok:
        return
    if A.rank < 2:
        yield "rank", False, "discriminant algebras need rank at least 2"
        return
    Q = discriminant_algebra(A, path=path, cap_override=cap_override)
    disc = discriminant(A)
    yield "discriminant identification", Q.disc() == disc, f"T^2 - 4N = {ring.format(Q.disc())}"
    if A.rank <= 8 or cap_override:
        g = norm_general(A, Q.T, cap_override)
        try:
            f = norm_fast(A, Q.T, cap_override)
        except NoExactQuotient:
            f = g
        yield "path agreement", f == g, f"N = {ring.format(g)}"

    def rand_elem():
        return A.element([rng.randint(-3, 3) for _ in range(A.rank)])

    ok = True
    for _ in range(5):
        a = [rand_elem() for _ in range(A.rank)]
        b = [rand_elem() for _ in range(A.rank)]
        ga, gb = reduce(A, gamma_alternating(A, a), Q), reduce(A, gamma_alternating(A, b), Q)
        da, db = Q.sub(ga, Q.involution(ga)), Q.sub(gb, Q.involution(gb))
        ok &= Q.mul(da, db) == (disc_bilinear(A, a, b), ring.zero())
        ok &= ga.d == det(A.coordinate_matrix(a))
    yield "pairing lemma and exact sequence", ok, ""
    ok = True
    for _ in range(5):
        e = Q.element(*(ring.from_int(rng.randint(-5, 5)) for _ in range(2)))
        s = Q.involution(e)
        ok &= Q.involution(s) == e
        ok &= Q.mul(e, s) == (Q.norm(e), ring.zero())
        ok &= Q.add(e, s) == (Q.trace(e), ring.zero())
    yield "standard involution", ok, ""
    ok = True
    for _ in range(3):
        a = rand_elem()
        for k in range(1, A.rank + 1):
            ok &= phi(A, elementary_invariant(A, a, k), cap_override) == A.s_k(a, k)
    yield "phi of elementary tensors", ok, ""
    if A.rank <= REWRITING_CAP:
        ok = all(phi_orbit(A, al) == ferrand_via_rewriting(A, al) for al in multidegrees(A.rank))
        yield "rewriting oracle", ok, ""
    QR = discriminant_algebra(base_factor(A), path=path, cap_override=cap_override)
    yield "base factor", (QR.T, QR.N) == (Q.T, Q.N), ""
    ident = delta_of_hom(AlgebraHomomorphism.identity(A))
    yield "identity functoriality", ident(Q.generator()) == Q.generator(), ""
    if isinstance(ring, Integers):
        yield "disc mod 4", disc % 4 in (0, 1), f"disc = {disc}"
        ok = True
        for m in (2, 3, 4):
            R = IntegersMod(m)
            Am = base_change(A, canonical_hom(ring, R))
            Qm = discriminant_algebra(Am, path="general", cap_override=cap_override)
            ok &= (Qm.T, Qm.N) == (R.from_int(Q.T), R.from_int(Q.N))
        yield "base change mod 2, 3, 4", ok, ""


def cmd_verify(args):
    A = _algebra(args, validate=False)
    results = list(verify_checks(A, path=args.path, seed=args.seed, cap_override=args.cap_override))
    status = 0 if all(ok for _, ok, _ in results) else EXIT_INVARIANT
    if args.format == "text":
        return "\n".join(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({d})" if d else "")
                         for name, ok, d in results), status
    return {"checks": [{"name": n, "passed": bool(ok), "detail": d} for n, ok, d in results],
            "ok": status == 0}, status


COMMANDS = {
    "charpoly": cmd_charpoly,
    "disc": cmd_disc,
    "delta": cmd_delta,
    "phi": cmd_phi,
    "star": cmd_star,
    "verify": cmd_verify,
    "table": cmd_table,
    "axioms": cmd_axioms,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, status = COMMANDS[args.command](args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CAP
    except (AlgebraAxiomError, InconsistencyError, NotNormPreservingError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVARIANT
    except (RingError, ValueError, TypeError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    if isinstance(result, str):
        print(result, file=out)
    else:
        print(json.dumps(result, sort_keys=True), file=out)
    return status


def main(argv=None):
    sys.exit(run(argv))

