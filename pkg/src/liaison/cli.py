"""Command-line interface: build, analyze, lift, certify, verify.

Exit codes: 0 success, 2 bad input, 3 verification failure.  All outputs
are deterministic functions of the arguments; ``--json`` switches stdout
from human tables to machine JSON.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .hilbert import (
    HVector,
    NotOSequenceError,
    difference,
    hilbert_function_artinian,
    lex_ideal_from_hvector,
)
from .layers import decompose, layer_hvectors
from .lifting import (
    LiftedIdeal,
    MatrixError,
    default_matrix,
    lift_ideal,
    point_model,
    validate_matrix,
)
from .linkage import (
    GlicciCertificate,
    LinkageError,
    glicci_certificate_artinian,
    glicci_certificate_borel,
    verify_certificate,
)
from .monomials import (
    MonomialIdeal,
    NotBorelFixedError,
    height,
    is_artinian,
    is_borel_fixed,
    is_cm_borel,
    is_equidimensional,
    is_lex_segment,
    lex_segment_violation,
)
from .oracle import DEFAULT_PRIME, graded_dim, hilbert_oracle

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3


class InputError(Exception):
    pass


class VerifyError(Exception):
    pass


def _default_prime() -> int:
    env = os.environ.get("LIAISON_PRIME")
    return int(env) if env else DEFAULT_PRIME


def _parse_hvector(text: str) -> HVector:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"cannot parse h-vector {text!r}")
    return HVector.artinian(values)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _load_ideal(path: str) -> MonomialIdeal:
    data = _load_json(path)
    if data.get("schema") != "ideal/1":
        raise InputError(f"{path}: expected schema ideal/1")
    try:
        return MonomialIdeal.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed ideal: {exc}")


def _emit(args, human_lines, payload) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _fmt_h(h: HVector) -> str:
    return "(" + ",".join(str(v) for v in h.values) + ")"


# --- subcommands ------------------------------------------------------------


def cmd_lex_build(args) -> int:
    h = _parse_hvector(args.h)
    try:
        J = lex_ideal_from_hvector(h, args.n)
    except NotOSequenceError as exc:
        raise InputError(
            f"bound {exc.bound} < {exc.value} at degree {exc.degree}"
        )
    except ValueError as exc:
        raise InputError(str(exc))
    lines = [
        f"lex-segment ideal in {args.n} variables for h = {_fmt_h(h)}:",
        f"  {J}",
    ]
    _emit(args, lines, J.to_json())
    return EXIT_OK


def cmd_analyze(args) -> int:
    J = _load_ideal(args.ideal)
    lines = [f"ideal: {J}"]
    payload: dict = {"schema": "analysis/1", "ideal": J.to_json()}
    if J.is_zero or J.is_unit:
        kind = "zero" if J.is_zero else "unit"
        lines.append(f"degenerate: {kind} ideal")
        payload["degenerate"] = kind
        _emit(args, lines, payload)
        return EXIT_OK

    borel = is_borel_fixed(J)
    lexseg = is_lex_segment(J)
    witness = None if lexseg else lex_segment_violation(J)
    art = is_artinian(J)
    ht = height(J)
    equi = is_equidimensional(J)
    cm = cone = None
    if borel:
        cm, cone = is_cm_borel(J)
    lines.append(
        f"Artinian: {'yes' if art else 'no'}, "
        f"Borel-fixed: {'yes' if borel else 'no'}, "
        f"lex-segment: {'yes' if lexseg else 'no'}"
        + (f" (witness {witness})" if witness is not None else "")
    )
    lines.append(
        f"height: {ht}, equidimensional: {'yes' if equi else 'no'}"
        + (f", CM (Borel test): {'yes' if cm else 'no'}" if borel else "")
    )
    payload.update({
        "artinian": art,
        "borel_fixed": borel,
        "lex_segment": lexseg,
        "lex_witness": list(witness.exps) if witness is not None else None,
        "height": ht,
        "equidimensional": equi,
        "cm_borel": cm,
    })

    D = decompose(J)
    lines.append(f"layer decomposition along x1: alpha = {D.alpha}")
    layer_json = []
    for j, I in enumerate(D.layers):
        if I.is_unit:
            hf_txt, hf_json = "(unit)", None
        elif is_artinian(I):
            hv = hilbert_function_artinian(I)
            hf_txt, hf_json = _fmt_h(hv), hv.to_json()
        else:
            hf_txt, hf_json = "(not Artinian)", None
        lines.append(f"  I_{j}: {I}  h = {hf_txt}")
        layer_json.append({"index": j, "ideal": I.to_json(), "h": hf_json})
    payload["layers"] = {"alpha": D.alpha, "entries": layer_json}
    _emit(args, lines, payload)
    return EXIT_OK


def _matrix_for(args, J: MonomialIdeal):
    spec = args.matrix
    ncols = max(J.max_gen_degree, 1)
    if spec == "bf":
        return default_matrix(J.n, "bf", ncols=ncols)
    if spec.startswith("t:"):
        try:
            t = int(spec[2:])
        except ValueError:
            raise InputError(f"bad matrix spec {spec!r}")
        if t < 1:
            raise InputError("t must be at least 1")
        return default_matrix(J.n, "t-lift", seed=args.seed, ncols=ncols, t=t)
    raise InputError(f"bad matrix spec {spec!r} (use bf or t:<t>)")


def cmd_lift(args) -> int:
    J = _load_ideal(args.ideal)
    if J.is_zero or J.is_unit:
        raise InputError("cannot lift a zero or unit ideal")
    A = _matrix_for(args, J)
    prime = args.prime
    report = validate_matrix(A, J, prime=prime, seed=args.seed)
    if not report.ok:
        print("matrix validation failed:")
        print(json.dumps(report.to_json(), indent=1, sort_keys=True))
        return EXIT_VERIFY
    L = lift_ideal(J, A, prime=prime)
    payload = L.to_json()
    lines = [
        f"lifted {len(L.generators)} generators into {A.N} variables "
        f"(matrix {A.kind}, hash {A.content_hash()})",
    ]
    if A.kind == "t-lift" and A.t == 1 and is_artinian(J):
        pts = point_model(J, A, prime=prime)
        payload["points"] = pts.to_json()
        lines.append(f"point model: {len(pts.points)} distinct points mod {prime}")
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_verify_lift(args) -> int:
    data = _load_json(args.lifted)
    try:
        L = LiftedIdeal.from_json(data)
    except (KeyError, TypeError, ValueError, MatrixError) as exc:
        raise InputError(f"malformed lifted ideal: {exc}")
    prime = args.prime
    J, A = L.source, L.matrix
    dmax = args.dmax if args.dmax is not None else J.max_gen_degree + A.N

    rows: list[tuple[str, bool, str]] = []
    report = validate_matrix(A, J, prime=prime)
    rows.append(("matrix-validation", report.ok, f"prime {report.prime}"))

    polys = L.polynomials(prime)
    hf = hilbert_oracle(polys, dmax, A.N, prime)
    try:
        diff = difference(hf, A.t)
        source_h = tuple(
            hilbert_function_artinian(J).values
        ) if is_artinian(J) else None
        if source_h is not None:
            want = source_h + (0,) * (len(diff.values) - len(source_h))
            ok = diff.values == want[: len(diff.values)]
            detail = f"difference {diff.values}"
        else:
            from .hilbert import hilbert_function

            src = hilbert_function(J, dmax)
            ok = diff.values[: len(src.values)] == src.values
            detail = f"difference {diff.values}"
    except ValueError as exc:
        ok, detail = False, str(exc)
    rows.append((f"hilbert-difference-t{A.t}", ok, detail))

    stable = all(
        hf.at(dmax) == hf.at(dmax - k) for k in range(1, min(2, dmax) + 1)
    ) if is_artinian(J) and A.t == 1 else True
    rows.append(("saturation-spot-check", stable,
                 f"tail values {hf.values[-3:]}"))

    if A.kind == "t-lift":
        # A proper lifting of a nonzero ideal spans no linear forms: the
        # lifted scheme is nondegenerate in its ambient space.
        nondeg = graded_dim(polys, 1, A.N, prime) == 0
        rows.append(("non-degeneracy-dim-I1", nondeg, ""))

    if A.kind == "t-lift" and A.t == 1 and is_artinian(J):
        try:
            pts = point_model(J, A, prime=prime)
            want = sum(hilbert_function_artinian(J).values)
            rows.append((
                "point-model", len(pts.points) == want,
                f"{len(pts.points)} points, expected {want}",
            ))
        except (MatrixError, ValueError) as exc:
            rows.append(("point-model", False, str(exc)))

    ok_all = all(r[1] for r in rows)
    lines = [
        f"{'PASS' if p else 'FAIL'}  {name}" + (f"  [{d}]" if d else "")
        for name, p, d in rows
    ]
    payload = {
        "schema": "lift-report/1",
        "ok": ok_all,
        "prime": prime,
        "dmax": dmax,
        "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in rows],
    }
    _emit(args, lines, payload)
    if not ok_all:
        raise VerifyError("lift verification failed")
    return EXIT_OK


def cmd_glicci(args) -> int:
    J = _load_ideal(args.ideal)
    prime = args.prime
    try:
        if args.mode == "artinian":
            ncols = max(J.max_gen_degree, 1)
            A = default_matrix(J.n, "t-lift", seed=args.seed, ncols=ncols, t=1)
            cert = glicci_certificate_artinian(J, A, dmax=args.dmax, prime=prime)
        else:
            cert = glicci_certificate_borel(J, dmax=args.dmax, prime=prime)
    except (LinkageError, NotBorelFixedError, MatrixError) as exc:
        raise VerifyError(str(exc))
    lines = [
        f"certificate: mode {cert.mode}, {len(cert.steps)} steps, "
        f"leaf {cert.leaf}, prime {cert.prime}, dmax {cert.dmax}",
    ]
    for i, step in enumerate(cert.steps):
        lines.append(f"  step {i}: {step.kind}  source {step.source}")
        for c in step.checks:
            lines.append(f"    PASS  {c.name}")
    _emit(args, lines, cert.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    data = _load_json(args.cert)
    if data.get("schema") != "glicci-cert/1":
        raise InputError("expected schema glicci-cert/1")
    try:
        cert = GlicciCertificate.from_json(data)
    except (KeyError, TypeError, ValueError, MatrixError) as exc:
        raise InputError(f"malformed certificate: {exc}")
    report = verify_certificate(cert, dmax=args.dmax)
    lines = []
    for step_idx, name, passed, witness in report.entries:
        lines.append(
            f"{'PASS' if passed else 'FAIL'}  step {step_idx}  {name}"
            + (f"  [{witness}]" if witness and not passed else "")
        )
    lines.append("certificate " + ("VERIFIED" if report.ok else "REJECTED"))
    _emit(args, lines, report.to_json())
    if not report.ok:
        raise VerifyError("certificate verification failed")
    return EXIT_OK


GOLDEN_H = (1, 3, 6, 10, 4, 2)
GOLDEN_LAYER_H = ((1, 2, 3, 4, 4, 2), (1, 2, 3), (1, 2), (1,))
GOLDEN_POINTS = 26


def cmd_worked_example(args) -> int:
    """End-to-end reproduction of the standard worked example with every
    table compared against embedded golden values."""
    prime = args.prime
    seed = args.seed
    diffs: list[str] = []
    lines: list[str] = []

    h = HVector.artinian(GOLDEN_H)
    J = lex_ideal_from_hvector(h, 3)
    lines.append(f"h = {_fmt_h(h)}  ->  J = {J}")

    D = decompose(J)
    got_layers = tuple(tuple(hv.values) for hv in layer_hvectors(D))
    lines.append(f"alpha = {D.alpha}")
    for j, row in enumerate(got_layers):
        lines.append(f"  I_{j}: h = {row}")
    if got_layers != GOLDEN_LAYER_H:
        diffs.append(f"layer table: got {got_layers}, want {GOLDEN_LAYER_H}")
    if not D.layers[D.alpha].is_unit:
        diffs.append("I_alpha is not the unit ideal")

    shifted = [0] * len(GOLDEN_H)
    for j, row in enumerate(got_layers):
        for d, v in enumerate(row):
            if j + d < len(shifted):
                shifted[j + d] += v
    lines.append(f"shifted column sums: {tuple(shifted)}")
    if tuple(shifted) != GOLDEN_H:
        diffs.append(f"column sums: got {tuple(shifted)}, want {GOLDEN_H}")

    A = default_matrix(3, "t-lift", seed=seed, ncols=max(J.max_gen_degree, 1), t=1)
    L = lift_ideal(J, A, prime=prime)
    pts = point_model(J, A, prime=prime)
    lines.append(f"lift: {len(pts.points)} points mod {prime}")
    if len(pts.points) != GOLDEN_POINTS:
        diffs.append(f"points: got {len(pts.points)}, want {GOLDEN_POINTS}")

    dmax = args.dmax if args.dmax is not None else 8
    try:
        hf = hilbert_oracle(L.polynomials(prime), dmax, A.N, prime)
        diff1 = difference(hf, 1)
        want = GOLDEN_H + (0,) * max(0, len(diff1.values) - len(GOLDEN_H))
        if diff1.values != want[: len(diff1.values)]:
            diffs.append(
                f"first difference: got {diff1.values}, want {want[:len(diff1.values)]}"
            )
        lines.append(f"oracle h (quotient): {hf.values}")
        if hf.at(dmax) != hf.at(dmax - 1) or hf.at(dmax) != GOLDEN_POINTS:
            raise VerifyError(
                f"horizon too small: Hilbert values {hf.values[-2:]} have not "
                f"stabilized at {GOLDEN_POINTS} by degree {dmax}; increase --dmax"
            )
    except ValueError as exc:
        raise VerifyError(f"horizon too small: {exc}")

    cert = glicci_certificate_artinian(J, A, prime=prime)
    report = verify_certificate(cert)
    lines.append(
        f"certificate: {len(cert.steps)} steps, leaf {cert.leaf}, "
        f"replay {'ok' if report.ok else 'FAILED'}"
    )
    if not report.ok:
        diffs.append(f"certificate replay: {report.first_failure()}")

    payload = {
        "schema": "worked-example/1",
        "prime": prime,
        "seed": seed,
        "ok": not diffs,
        "layer_table": [list(r) for r in got_layers],
        "points": len(pts.points),
        "oracle_h": list(hf.values),
        "certificate_steps": len(cert.steps),
        "diffs": diffs,
    }
    if diffs:
        lines.append("MISMATCHES:")
        lines.extend(f"  {d}" for d in diffs)
    else:
        lines.append("all golden comparisons pass")
    _emit(args, lines, payload)
    if diffs:
        raise VerifyError("golden comparison failed")
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liaison",
        description="Monomial ideals, liftings, and replayable linkage certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dmax=True):
        p.add_argument("--prime", type=int, default=_default_prime())
        p.add_argument("--seed", type=int, default=0)
        if dmax:
            p.add_argument("--dmax", type=int, default=None)
        p.add_argument("--json", action="store_true")
        p.add_argument("--out", default=None)

    p = sub.add_parser("lex-build", help="Artinian lex-segment ideal from an h-vector")
    p.add_argument("--h", required=True, help="comma-separated h-vector")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    common(p, dmax=False)
    p.set_defaults(func=cmd_lex_build)

    p = sub.add_parser("analyze", help="structure report and layer decomposition")
    p.add_argument("ideal")
    common(p, dmax=False)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lift", help="lift a monomial ideal by a matrix of linear forms")
    p.add_argument("ideal")
    p.add_argument("--matrix", default="t:1", help="bf or t:<t>")
    common(p, dmax=False)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify-lift", help="oracle suite on a lifted ideal")
    p.add_argument("lifted")
    common(p)
    p.set_defaults(func=cmd_verify_lift)

    p = sub.add_parser("glicci", help="build a linkage certificate")
    p.add_argument("ideal")
    p.add_argument("--mode", choices=("artinian", "borel"), required=True)
    common(p)
    p.set_defaults(func=cmd_glicci)

    p = sub.add_parser("verify", help="replay a certificate")
    p.add_argument("cert")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "worked-example",
        help="end-to-end run of the standard example against golden values",
    )
    common(p)
    p.set_defaults(func=cmd_worked_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
