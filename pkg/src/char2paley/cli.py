"""Command-line front-end: build, certify, analyze, decompose, chapman.

Reports are JSON documents (schema 1) whose bytes depend only on the
configuration, seed included, so identical invocations produce
identical files; wall-clock timings go to stderr only.  Exit codes:
0 success, 1 a certificate failed, 2 configuration error, 3 capacity or
out-of-scope request.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .analyze import (
    codegree_direct, codegree_formula, codegree_spectrum, jumbledness_audit,
    kloosterman_sweep, spectrum_counts, weil_bound_holds, _kloosterman_sum,
)
from .construct import (
    MATRIX_CAP, OutOfScopeError, build_graph, build_tournament,
    circulant_labeling, param_a, verify_circulant,
)
from .formats import (
    point_label, write_decomposition, write_dimacs, write_edges,
    write_json_graph, write_matrix,
)
from .gf2k import K_MAX, FieldCtx
from .mobius import INF, QuadExtCtx, lambda_of
from .structure import (
    chapman_build, chapman_compare, hamiltonian_decompose, shift_isomorphism,
    verify_arc_reversal, verify_automorphisms, verify_representative_independence,
    verify_self_complementary, verify_shift_isomorphism,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_CAPACITY = 3

ANALYZE_K_MAX = 16  # above this even table-backed streaming is impractical


def _threads_from_env() -> int:
    raw = os.environ.get("CHAR2_PALEY_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"CHAR2_PALEY_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise ValueError(f"CHAR2_PALEY_THREADS must be >= 0, got {n}")
    return n


def _check_k_range(k: int) -> None:
    if not 2 <= k <= K_MAX:
        raise ValueError(f"k must be between 2 and {K_MAX}, got {k}")


def _make_ctx_and_a(args):
    ctx = FieldCtx(args.k, args.poly)
    a = param_a(ctx, args.a)
    return ctx, a


def _config_echo(args, ctx, a) -> dict:
    return {
        "k": args.k,
        "a": f"{a.value:#x}",
        "a_is_generator": a.is_generator,
        "poly": f"{ctx.poly:#x}",
        "seed": getattr(args, "seed", 0),
        "samples": getattr(args, "samples", 0),
        "threads": _threads_from_env(),
    }


def _emit(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class _Checks:
    """Accumulates named pass/fail verdicts with witnesses, timing to stderr."""

    def __init__(self):
        self.items = []

    def run(self, name: str, fn) -> bool:
        t0 = time.monotonic()
        ok, detail = fn()
        dt = time.monotonic() - t0
        entry = {"name": name, "pass": bool(ok)}
        if detail:
            entry.update(detail)
        self.items.append(entry)
        print(f"[{dt:8.3f}s] {'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
        return bool(ok)

    def skip(self, name: str, reason: str) -> None:
        self.items.append({"name": name, "pass": True, "skipped": True, "reason": reason})
        print(f"[   skip ] ---- {name}: {reason}", file=sys.stderr)

    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.items)


def _report(args, ctx, a, command: str, checks: _Checks, extra: dict | None = None) -> str:
    doc = {
        "schema": 1,
        "tool": "char2paley",
        "version": __version__,
        "command": command,
        "config": _config_echo(args, ctx, a),
        "checks": checks.items,
        "pass": checks.all_pass(),
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# build


def cmd_build(args) -> int:
    _check_k_range(args.k)
    if args.k % 2 and not args.tournament:
        raise ValueError(
            f"k = {args.k} is odd and defines a tournament; pass --tournament "
            "to acknowledge directed output")
    if args.k % 2 == 0 and args.tournament:
        raise ValueError(f"k = {args.k} is even and defines a graph, not a tournament")
    if (1 << args.k) + 1 > MATRIX_CAP:
        raise OutOfScopeError(
            f"order {(1 << args.k) + 1} exceeds the dense adjacency cap {MATRIX_CAP}")
    ctx, a = _make_ctx_and_a(args)
    g = build_tournament(ctx, a) if ctx.k % 2 else build_graph(ctx, a)
    writer = {
        "edges": write_edges,
        "dimacs": write_dimacs,
        "matrix": write_matrix,
        "json": write_json_graph,
    }[args.format]
    _emit(args, writer(g))
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify


def _check_regularity(g):
    want = g.ctx.q // 2
    for i in range(g.n):
        if g.degree(i) != want:
            return False, {"witness": {"vertex": i, "degree": g.degree(i), "expected": want}}
    return True, {"degree": want}


def _check_symmetry(g):
    trans = [0] * g.n
    for i in range(g.n):
        row = g.rows[i]
        while row:
            low = row & -row
            trans[low.bit_length() - 1] |= 1 << i
            row ^= low
    if trans != list(g.rows):
        bad = next(i for i in range(g.n) if trans[i] != g.rows[i])
        j = (trans[bad] ^ g.rows[bad]).bit_length() - 1
        return False, {"witness": {"pair": [bad, j]}}
    return True, None


def _check_no_loops(g):
    for i in range(g.n):
        if g.rows[i] >> i & 1:
            return False, {"witness": {"vertex": i}}
    return True, None


def _check_labeling_identities(ctx, a, lab):
    n = ctx.q + 1
    v = lab.vertices
    fails = []
    if v[1] != 0:
        fails.append("v_1 != 0")
    if v[2] != a.value:
        fails.append("v_2 != a")
    if v[ctx.q] != 1:
        fails.append("v_q != 1")
    if v[ctx.q - 1] != 1 ^ a.value:
        fails.append("v_(q-1) != 1+a")
    for i in range(1, n):
        if v[n - i] != 1 ^ v[i]:
            fails.append(f"v_(-{i}) != 1 + v_{i}")
            break
    for i in range(1, n):
        if v[2 * i % n] != ctx.sqr(v[i]) ^ a.value:
            fails.append(f"v_(2*{i}) != v_{i}^2 + a")
            break
    if fails:
        return False, {"witness": {"identities": fails}}
    return True, None


def cmd_certify(args) -> int:
    _check_k_range(args.k)
    if args.k % 2:
        raise ValueError("certify works on graphs: k must be even")
    ctx, a = _make_ctx_and_a(args)
    g = build_graph(ctx, a)
    checks = _Checks()
    checks.run("regularity", lambda: _check_regularity(g))
    checks.run("symmetry", lambda: _check_symmetry(g))
    checks.run("no-loops", lambda: _check_no_loops(g))
    if a.is_generator:
        lab = circulant_labeling(ctx, a)
        conn = sorted(lab.conn)
        checks.run("circulant", lambda: (
            verify_circulant(g, lab),
            {"connection_set_size": len(conn), "connection_set_min": conn[0]}))
        checks.run("labeling-identities", lambda: _check_labeling_identities(ctx, a, lab))
        checks.run("self-complementary", lambda: (verify_self_complementary(g, lab), None))
    else:
        for name in ("circulant", "labeling-identities", "self-complementary"):
            checks.skip(name, "parameter does not generate a full orbit")
    auto_ok = checks.run("automorphisms", lambda: (verify_automorphisms(g, a), None))
    checks.run("vertex-transitive", lambda: (
        a.is_generator and auto_ok,
        {"certificate": "cyclic automorphism of order q+1"} if a.is_generator else
        {"witness": {"reason": "no full alpha-orbit for this parameter"}}))

    def shift_class():
        t1 = [x for x in range(ctx.q) if ctx.trace(x) == 1]
        if len(t1) > 128:
            rng = random.Random(args.seed)
            t1 = sorted(rng.sample(t1, 128))
            mode = {"mode": "sampled", "count": 128}
        else:
            mode = {"mode": "exhaustive", "count": len(t1)}
        for ap_val in t1:
            ap = param_a(ctx, ap_val)
            iso = shift_isomorphism(ctx, a, ap)
            if not verify_shift_isomorphism(ctx, a, ap, iso, target=g):
                return False, {"witness": {"a_prime": f"{ap_val:#x}", "b": f"{iso.b:#x}"}}
        return True, mode

    checks.run("shift-isomorphism-class", shift_class)
    _emit(args, _report(args, ctx, a, "certify", checks))
    return EXIT_OK if checks.all_pass() else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# analyze


def _find_codegree_witness(g, bound: int):
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if (g.rows[i] & g.rows[j]).bit_count() > bound:
                return [i, j]
    return None


def cmd_analyze(args) -> int:
    _check_k_range(args.k)
    if args.k % 2:
        raise ValueError("analyze works on graphs: k must be even")
    if args.k > ANALYZE_K_MAX:
        raise OutOfScopeError(f"analyze is capped at k = {ANALYZE_K_MAX}")
    ctx, a = _make_ctx_and_a(args)
    checks = _Checks()
    extra: dict = {}
    dense = ctx.q + 1 <= MATRIX_CAP

    def weil():
        if ctx.k <= 12:
            values = kloosterman_sweep(ctx)
            ok, b, worst = weil_bound_holds(ctx, values)
            detail = {"mode": "exhaustive", "max_abs_K": worst,
                      "argmax_b": f"{b:#x}", "bound": f"2*sqrt({ctx.q})"}
        else:
            # each sampled sum costs a full O(q) pass, so cap the draw count
            count = min(args.samples, 1000, ctx.q - 1)
            rng = random.Random(args.seed)
            worst, b = 0, 1
            for _ in range(count):
                bb = rng.randrange(1, ctx.q)
                val = abs(_kloosterman_sum(ctx, bb))
                if val > worst:
                    worst, b = val, bb
            ok = worst * worst <= 4 * ctx.q
            detail = {"mode": "sampled", "count": count,
                      "max_abs_K": worst, "argmax_b": f"{b:#x}"}
        return ok, detail

    checks.run("kloosterman-weil", weil)

    if dense:
        g = build_graph(ctx, a)
        spec = codegree_spectrum(g)
        extra["codegree_spectrum"] = [
            {"epsilon": eps, "ell": ell, "count": cnt}
            for (eps, ell), cnt in spec.counts.items()]

        def codegree_cap():
            detail = {"max_ell": spec.max_ell, "bound": spec.bound,
                      "max_conference_deviation": spec.max_conference_deviation}
            if not spec.within_bound:
                detail["witness"] = {"pair": _find_codegree_witness(g, spec.bound)}
            return spec.within_bound, detail

        checks.run("codegree-cap", codegree_cap)

        def formula_vs_direct():
            if not a.is_generator:
                return True, {"skipped": True,
                              "reason": "no circulant labeling for this parameter"}
            lab = circulant_labeling(ctx, a)
            kloo = kloosterman_sweep(ctx)
            pts = [INF, *range(ctx.q)]
            if ctx.k <= 8:
                pair_iter = ((x, y) for i, x in enumerate(pts) for y in pts[i + 1:])
                count = ctx.q * (ctx.q + 1) // 2
                mode = "exhaustive"
            else:
                rng = random.Random(args.seed)

                def rand_pairs():
                    for _ in range(args.samples):
                        i = rng.randrange(len(pts))
                        j = rng.randrange(len(pts))
                        if i != j:
                            yield pts[i], pts[j]
                pair_iter = rand_pairs()
                count = args.samples
                mode = "sampled"
            for x, y in pair_iter:
                want = codegree_direct(g, x, y).ell
                got = codegree_formula(ctx, a, x, y, lab, kloo)
                if want != got:
                    return False, {"witness": {
                        "x": point_label(x), "y": point_label(y),
                        "direct": want, "formula": got}}
            return True, {"mode": mode, "count": count}

        checks.run("codegree-formula-vs-direct", formula_vs_direct)

        def jumbled():
            if g.n <= 17:
                audit = jumbledness_audit(g, "exhaustive")
            else:
                audit = jumbledness_audit(g, "sampled", args.samples, args.seed)
            r4 = audit.worst_ratio_pow4
            return audit.passed, {
                "mode": audit.mode, "subsets": audit.samples,
                "worst_subset_size": audit.worst_size,
                "worst_deviation_doubled": audit.worst_dev2,
                "worst_subset_mask": f"{audit.worst_mask:#x}",
                "worst_ratio_pow4": f"{r4.numerator}/{r4.denominator}",
            }

        checks.run("jumbledness", jumbled)
    else:
        for name in ("codegree-cap", "codegree-formula-vs-direct", "jumbledness"):
            checks.skip(name, f"order {ctx.q + 1} exceeds the dense cap {MATRIX_CAP}")

    _emit(args, _report(args, ctx, a, "analyze", checks, extra))
    return EXIT_OK if checks.all_pass() else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# decompose


def cmd_decompose(args) -> int:
    _check_k_range(args.k)
    if args.k % 2:
        raise ValueError("decompose works on graphs: k must be even")
    ctx, a = _make_ctx_and_a(args)
    g = build_graph(ctx, a)
    lab = circulant_labeling(ctx, a)
    dec = hamiltonian_decompose(g, lab)
    _emit(args, write_decomposition(dec))
    print(f"[decompose] {len(dec.cycles)} Hamiltonian cycles of length {dec.p}",
          file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# chapman


def cmd_chapman(args) -> int:
    _check_k_range(args.k)
    if args.k % 2:
        raise ValueError("the coset comparison works on graphs: k must be even")
    if args.k > 4:
        raise OutOfScopeError("certified coset comparison is limited to k <= 4")
    ctx, a = _make_ctx_and_a(args)
    ext = QuadExtCtx(ctx)
    lam = lambda_of(ext, a.value)
    h = chapman_build(ext, lam)
    g = build_graph(ctx, a)
    checks = _Checks()

    def no_undefined():
        detail = {"undefined_pair_count": len(h.undefined_pairs),
                  "total_pairs": h.n * (h.n - 1) // 2}
        if h.undefined_pairs:
            detail["witness"] = {"pairs": [
                [f"{ext.encode(u):#x}", f"{ext.encode(v):#x}"]
                for u, v in h.undefined_pairs[:3]]}
        return not h.undefined_pairs, detail

    checks.run("no-undefined-pairs", no_undefined)
    if ctx.k == 2:
        checks.run("representative-independence", lambda: (
            verify_representative_independence(h, 0), {"mode": "exhaustive"}))
    else:
        checks.run("representative-independence", lambda: (
            verify_representative_independence(h, min(args.samples, 2000), args.seed),
            {"mode": "sampled", "count": min(args.samples, 2000)}))
    checks.run("coset-graph-circulant", lambda: (h.circulant_certified, None))
    cmp_result = chapman_compare(h, g)
    checks.run("isomorphic", lambda: (
        bool(cmp_result),
        {"verdict": cmp_result.verdict,
         "multiplier": cmp_result.multiplier,
         "spectra_match": cmp_result.spectra_match}))
    _emit(args, _report(args, ctx, a, "chapman", checks))
    return EXIT_OK if checks.all_pass() else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------


def _hex_int(s: str) -> int:
    return int(s, 16)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="char2paley",
        description="Construct and certify trace-defined Paley-like graphs "
                    "on the projective line over GF(2^k).")
    ap.add_argument("--version", action="version", version=f"char2paley {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, samples_default=100_000):
        p.add_argument("--k", type=int, required=True, metavar="K",
                       help=f"extension degree, 2..{K_MAX}")
        p.add_argument("--a", type=_hex_int, default=None, metavar="HEX",
                       help="trace-1 parameter (default: smallest full-orbit one)")
        p.add_argument("--poly", type=_hex_int, default=None, metavar="HEX",
                       help="irreducible reduction polynomial (default: built-in)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=samples_default)
        p.add_argument("--output", "-o", default="-", metavar="PATH")

    p = sub.add_parser("build", help="write the graph or tournament to a file")
    common(p)
    p.add_argument("--format", choices=["edges", "dimacs", "matrix", "json"],
                   default="edges")
    p.add_argument("--tournament", action="store_true",
                   help="acknowledge directed output (required for odd k)")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("certify", help="run the structural certificate suite")
    common(p)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("analyze", help="codegrees, Kloosterman sums, jumbledness")
    common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("decompose", help="Hamiltonian decomposition (prime q+1)")
    common(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("chapman", help="independent coset construction cross-check")
    common(p)
    p.set_defaults(fn=cmd_chapman)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _threads_from_env()
        return args.fn(args)
    except OutOfScopeError as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
