"""Command-line front end: one verb, one JSON object in, one JSON object out.

Exit codes: 0 success, 1 internal error, 2 empty real locus, 3 malformed
input (including degree < 2), 4 geometric precondition failed.  Messages go
to standard error.  Schemas are documented in SCHEMAS.md.
"""

import argparse
import json
import math
import sys

import numpy as np

from .bodies import DeltaField, body_from_dict, section_boundary_sample, slice_interior_point
from .canonical import CanonicalForm, canonical_to_coeffs, canonicalize, sample_points
from .convexity import complement_analysis, is_convex_quadric, recession_cone
from .errors import GeometryError, InvalidInputError, QuadricError
from .geometry import RevolutionSpec, pencil_through, revolve, section
from .quadric import Hyperplane, QuadricCoeffs
from .scanner import scan

VERBS = ("classify", "canonical", "section", "pencil", "revolve", "scan", "sample")


def _clean(obj):
    """JSON-ready copy: numpy scalars to Python, ``-0.0`` to ``0.0``, non-finite to None."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return 0.0 if x == 0 else x
    return obj


def _field(d, key, default=None, required=True):
    if not isinstance(d, dict):
        raise InvalidInputError("input must be a JSON object")
    if key in d:
        return d[key]
    if required and default is None:
        raise InvalidInputError(f"missing field {key!r}")
    return default


def _points(x, name):
    try:
        P = np.atleast_2d(np.asarray(x, dtype=float))
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name} must be a list of points") from exc
    if P.ndim != 2:
        raise InvalidInputError(f"{name} must be a list of points")
    return P


def _quadric_or_form(d):
    if isinstance(d, dict) and "family" in d:
        return canonical_to_coeffs(CanonicalForm.from_dict(d))
    return QuadricCoeffs.from_dict(d)


# ------------------------------------------------------------------- verbs

def do_classify(d, args):
    Q = QuadricCoeffs.from_dict(d)
    F = canonicalize(Q, args.tol)
    analysis = complement_analysis(F)
    D = is_convex_quadric(F)
    out = {"family": F.family, "k": F.k, "r": F.r, "label": F.label(),
           "canonical": F.to_dict()}
    out.update(analysis.to_dict())
    out["convex_quadric"] = None if D is None else D.to_dict()
    out["recession_cone"] = None if D is None else recession_cone(D).to_dict()
    return out


def do_canonical(d, args):
    return canonicalize(_quadric_or_form(d), args.tol).to_dict()


def do_section(d, args):
    Q = _quadric_or_form(_field(d, "quadric"))
    H = Hyperplane.from_dict(_field(d, "hyperplane"))
    return section(Q, H, args.tol).to_dict()


def do_pencil(d, args):
    E1 = _points(_field(d, "E1"), "E1")
    E2 = _points(_field(d, "E2"), "E2")
    H1 = Hyperplane.from_dict(_field(d, "H1"))
    H2 = Hyperplane.from_dict(_field(d, "H2"))
    v = np.asarray(_field(d, "v"), dtype=float)
    return pencil_through(E1, E2, H1, H2, v, args.tol).to_dict()


def do_revolve(d, args):
    Y = _points(_field(d, "points"), "points")
    spec = RevolutionSpec.from_dict(_field(d, "spec"))
    m = int(_field(d, "samples_per_circle", 64, required=False))
    return {"points": revolve(Y, spec, m, args.tol)}


def do_scan(d, args):
    B = body_from_dict(_field(d, "body"))
    delta = DeltaField.from_dict(_field(d, "delta", {"kind": "constant", "delta0": 0.0}, required=False))
    if args.dirs < 20:
        raise InvalidInputError("--dirs must be at least 20")
    report = scan(B, delta, n_dirs=args.dirs, m_pts=args.pts, threshold=args.threshold,
                  seed=args.seed, workers=args.workers)
    if args.csv:
        report.write_csv(args.csv)
    return report.to_dict()


def do_sample(d, args):
    """Boundary points of a body on a hyperplane, or points on a quadric."""
    m = int(_field(d, "m", 16, required=False))
    rng = np.random.default_rng(args.seed)
    if "body" in d:
        B = body_from_dict(d["body"])
        H = Hyperplane.from_dict(_field(d, "hyperplane"))
        origin = slice_interior_point(B, H)
        if origin is None:
            raise GeometryError("hyperplane misses interior")
        return {"points": section_boundary_sample(B, H, m, rng=rng, origin=origin)}
    Q = _quadric_or_form(_field(d, "quadric"))
    F = canonicalize(Q, args.tol)
    return {"points": sample_points(F, m, rng, float(_field(d, "spread", 2.0, required=False)))}


HANDLERS = {"classify": do_classify, "canonical": do_canonical, "section": do_section,
            "pencil": do_pencil, "revolve": do_revolve, "scan": do_scan, "sample": do_sample}


# ------------------------------------------------------------------ driver

def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


class _Parser(argparse.ArgumentParser):
    # usage errors are schema errors, not argparse's default exit status 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InvalidInputError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="convquad", description="Real quadrics: classification, "
                                "convexity, sections, pencils, revolutions and section scans.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("input", nargs="?", default="-",
                   help="JSON file, inline JSON, or '-' for standard input (default)")
    p.add_argument("-o", "--output", help="write JSON here instead of standard output")
    p.add_argument("--tol", type=_positive, default=1e-9, help="relative tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dirs", type=int, default=200, help="scan: number of directions")
    p.add_argument("--pts", type=int, default=None, help="scan: boundary points per section")
    p.add_argument("--threshold", type=_positive, default=1e-6, help="scan: residual threshold")
    p.add_argument("--workers", type=int, default=1, help="scan: worker threads")
    p.add_argument("--csv", help="scan: also write (u, delta, status, residual) rows here")
    return p


def _read_input(src):
    text = sys.stdin.read() if src == "-" else src
    if src != "-" and not src.lstrip().startswith(("{", "[")):
        try:
            with open(src) as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {src}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc


def dumps(obj):
    return json.dumps(_clean(obj), indent=2, allow_nan=False)


def run(args):
    """Execute a parsed command; returns the exit code."""
    try:
        payload = _read_input(args.input)
        text = dumps(HANDLERS[args.verb](payload, args))
    except QuadricError as exc:
        print(f"convquad: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        # malformed fields that slipped past the schema helpers
        print(f"convquad: invalid input: {exc}", file=sys.stderr)
        return InvalidInputError.exit_code
    except Exception as exc:  # noqa: BLE001
        print(f"convquad: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
